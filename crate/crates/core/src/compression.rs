//! t-kernels and kernel-guided down-compression.
//!
//! A multiset `T ⊇ [m]` is a t-kernel for a family when every pair of distinct
//! members meets inside `T` in at least `t` elements. A compression pass picks
//! the smallest element `i` with `m(i, T) = s ≥ 2`, applies the shift
//! `S_{(i,s)(j)}` for `j = 1..=m` (skipping `j = i`), and drops one copy of `i`
//! from the kernel. Starting from `t` copies of every element, `(t - 1)·m`
//! passes reach the kernel `[m]`, at which point the family is
//! support-t-intersecting.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::multiset::Multiset;

/// A t-kernel candidate containing every element of `[m]` at least once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    multiset: Multiset,
}

impl Kernel {
    pub fn new(multiset: Multiset) -> Result<Self> {
        if multiset.counts().iter().any(|&c| c == 0) {
            return Err(Error::contract(format!("kernel {multiset} does not contain [m]")));
        }
        Ok(Kernel { multiset })
    }

    /// `t` copies of every element of `[m]`.
    pub fn trivial(m: usize, t: usize) -> Result<Self> {
        Kernel::new(Multiset::uniform(m, t as u32))
    }

    pub fn multiset(&self) -> &Multiset {
        &self.multiset
    }

    /// Smallest element with multiplicity at least two, if any.
    pub fn first_repeated(&self) -> Option<usize> {
        self.multiset.counts().iter().position(|&c| c >= 2).map(|i| i + 1)
    }

    /// Number of copies beyond the first, summed over elements.
    pub fn excess(&self) -> usize {
        self.multiset.counts().iter().map(|&c| c as usize - 1).sum()
    }

    fn without_one(&self, element: usize) -> Kernel {
        let mut counts = self.multiset.counts().to_vec();
        counts[element - 1] -= 1;
        Kernel {
            multiset: Multiset::from_counts(counts),
        }
    }
}

/// Parameters of the shift `S_{(i,s)(j)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftParams {
    pub i: usize,
    pub s: u32,
    pub j: usize,
}

impl ShiftParams {
    pub fn new(i: usize, s: u32, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::contract(format!("shift needs i != j (both {i})")));
        }
        if i == 0 || j == 0 {
            return Err(Error::contract("shift elements are 1-based"));
        }
        if s < 2 {
            return Err(Error::contract(format!("shift threshold s = {s} must be at least 2")));
        }
        Ok(ShiftParams { i, s, j })
    }

    fn check_ground(&self, m: usize) -> Result<()> {
        for e in [self.i, self.j] {
            if e > m {
                return Err(Error::OutOfRange { element: e, ground: m });
            }
        }
        Ok(())
    }
}

/// One member changed by a shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftRecord {
    pub pass: usize,
    pub i: usize,
    pub s: u32,
    pub j: usize,
    pub member_before: Vec<usize>,
    pub member_after: Vec<usize>,
}

/// `|F1 ∩ F2 ∩ T| ≥ t` for every pair of distinct members.
pub fn is_t_kernel(family: &Family, kernel: &Multiset, t: usize) -> bool {
    let members = family.members();
    members.iter().enumerate().all(|(idx, a)| {
        members[idx + 1..]
            .iter()
            .all(|b| a.intersection_size_within(b, kernel) >= t)
    })
}

/// Keeps `s - 1` copies of `i` and moves the rest onto `j`.
///
/// Unchanged when `m(i, F) < s` or `j` already occurs in `F`.
pub fn shift_multiset(member: &Multiset, p: &ShiftParams) -> Result<Multiset> {
    p.check_ground(member.ground_size())?;
    Ok(shifted(member, p).unwrap_or_else(|| member.clone()))
}

fn shifted(member: &Multiset, p: &ShiftParams) -> Option<Multiset> {
    let c = member.counts();
    let mi = c[p.i - 1];
    if mi < p.s || c[p.j - 1] > 0 {
        return None;
    }
    let mut counts = c.to_vec();
    counts[p.i - 1] = p.s - 1;
    counts[p.j - 1] = mi - p.s + 1;
    Some(Multiset::from_counts(counts))
}

/// Applies the shift to each member in family order; a member moves only if
/// its image is absent from the family as updated so far.
pub fn shift_family(family: &Family, p: &ShiftParams) -> Result<Family> {
    shift_family_traced(family, p, 0, &mut None)
}

fn shift_family_traced(
    family: &Family,
    p: &ShiftParams,
    pass: usize,
    trace: &mut Option<&mut Vec<ShiftRecord>>,
) -> Result<Family> {
    p.check_ground(family.ground_size())?;
    let mut current: std::collections::HashSet<Multiset> = family.members().iter().cloned().collect();
    let mut out: Vec<Multiset> = Vec::with_capacity(family.len());
    for member in family.members() {
        match shifted(member, p) {
            Some(image) if !current.contains(&image) => {
                current.remove(member);
                current.insert(image.clone());
                if let Some(records) = trace.as_deref_mut() {
                    records.push(ShiftRecord {
                        pass,
                        i: p.i,
                        s: p.s,
                        j: p.j,
                        member_before: member.elements(),
                        member_after: image.elements(),
                    });
                }
                out.push(image);
            }
            _ => out.push(member.clone()),
        }
    }
    let result = Family::new(family.ground_size(), family.k(), family.kind(), out)
        .map_err(|e| Error::Internal(format!("shift produced an invalid family: {e}")))?;
    Ok(result)
}

fn regime_ok(m: usize, k: usize, t: usize) -> bool {
    m + t >= 2 * k
}

/// Options for [`down_compress_full_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct CompressOptions {
    /// Permit `m < 2k - t`. Each pass still asserts size, t-intersection and
    /// kernel validity, so a failure surfaces as [`Error::Internal`].
    pub allow_outside_regime: bool,
    pub record_trace: bool,
}

#[derive(Clone, Debug)]
pub struct CompressionRun {
    pub family: Family,
    pub kernel: Kernel,
    pub passes: usize,
    pub trace: Vec<ShiftRecord>,
}

/// One down-compression pass on the smallest repeated element of `kernel`.
pub fn down_compress_pass(family: &Family, kernel: &Kernel, element: usize, t: usize) -> Result<(Family, Kernel)> {
    let (m, k) = (family.ground_size(), family.k());
    if !regime_ok(m, k, t) {
        return Err(Error::contract(format!(
            "down-compression needs m >= 2k - t (m={m}, k={k}, t={t})"
        )));
    }
    pass_inner(family, kernel, element, t, 0, &mut None)
}

fn pass_inner(
    family: &Family,
    kernel: &Kernel,
    element: usize,
    t: usize,
    pass: usize,
    trace: &mut Option<&mut Vec<ShiftRecord>>,
) -> Result<(Family, Kernel)> {
    let m = family.ground_size();
    if t == 0 {
        return Err(Error::contract("t must be positive"));
    }
    if kernel.multiset().ground_size() != m {
        return Err(Error::contract("kernel and family use different ground sets"));
    }
    let s = kernel.multiset().multiplicity(element)?;
    if s < 2 {
        return Err(Error::contract(format!(
            "element {element} has multiplicity {s} in the kernel; need at least 2"
        )));
    }
    if !family.is_t_intersecting(t) {
        return Err(Error::contract(format!("family is not {t}-intersecting")));
    }
    if !is_t_kernel(family, kernel.multiset(), t) {
        return Err(Error::contract(format!("{} is not a {t}-kernel", kernel.multiset())));
    }

    let mut current = family.clone();
    for j in (1..=m).filter(|&j| j != element) {
        let p = ShiftParams::new(element, s, j)?;
        current = shift_family_traced(&current, &p, pass, trace)?;
    }
    let next = kernel.without_one(element);

    if current.len() != family.len() {
        return Err(Error::Internal(format!(
            "pass changed the family size from {} to {}",
            family.len(),
            current.len()
        )));
    }
    if !current.is_t_intersecting(t) {
        return Err(Error::Internal(format!("pass broke {t}-intersection")));
    }
    if !is_t_kernel(&current, next.multiset(), t) {
        return Err(Error::Internal(format!(
            "{} is not a {t}-kernel after the pass",
            next.multiset()
        )));
    }
    Ok((current, next))
}

/// Compresses until `[m]` is a t-kernel. Requires `m >= 2k - t`.
pub fn down_compress_full(family: &Family, t: usize) -> Result<Family> {
    Ok(down_compress_full_with(family, t, &CompressOptions::default())?.family)
}

pub fn down_compress_full_with(family: &Family, t: usize, opts: &CompressOptions) -> Result<CompressionRun> {
    let (m, k) = (family.ground_size(), family.k());
    if t == 0 {
        return Err(Error::contract("t must be positive"));
    }
    if t > k {
        return Err(Error::contract(format!("t = {t} exceeds k = {k}")));
    }
    if !opts.allow_outside_regime && !regime_ok(m, k, t) {
        return Err(Error::contract(format!(
            "down-compression needs m >= 2k - t (m={m}, k={k}, t={t})"
        )));
    }
    if !family.is_t_intersecting(t) {
        return Err(Error::contract(format!("family is not {t}-intersecting")));
    }

    let mut kernel = Kernel::trivial(m, t)?;
    let mut current = family.clone();
    let mut trace = Vec::new();
    let mut passes = 0usize;
    while let Some(i) = kernel.first_repeated() {
        passes += 1;
        let mut sink = opts.record_trace.then_some(&mut trace);
        let (next_family, next_kernel) = pass_inner(&current, &kernel, i, t, passes, &mut sink)?;
        current = next_family;
        kernel = next_kernel;
    }
    if !current.is_support_t_intersecting(t) {
        return Err(Error::Internal(
            "compressed family is not support-t-intersecting".into(),
        ));
    }
    Ok(CompressionRun {
        family: current,
        kernel,
        passes,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{fixed_multiset, frankl_multiset};
    use crate::Kind;

    fn ms(m: usize, e: &[usize]) -> Multiset {
        Multiset::from_elements(m, e).unwrap()
    }

    fn fam(m: usize, k: usize, members: &[&[usize]]) -> Family {
        Family::new(m, k, Kind::Multiset, members.iter().map(|e| ms(m, e)).collect()).unwrap()
    }

    #[test]
    fn shift_worked_example() {
        let f = ms(4, &[1, 1, 1, 3, 4]);
        let p = ShiftParams::new(1, 2, 2).unwrap();
        assert_eq!(shift_multiset(&f, &p).unwrap(), ms(4, &[1, 2, 2, 3, 4]));
        assert_eq!(shift_multiset(&f, &p).unwrap().support_size(), f.support_size() + 1);
    }

    #[test]
    fn shift_no_ops() {
        let f = ms(4, &[1, 1, 3, 4]);
        let p = ShiftParams::new(1, 3, 2).unwrap();
        assert_eq!(shift_multiset(&f, &p).unwrap(), f);
        let g = ms(4, &[1, 1, 1, 2]);
        let p = ShiftParams::new(1, 2, 2).unwrap();
        assert_eq!(shift_multiset(&g, &p).unwrap(), g);
        assert!(ShiftParams::new(2, 2, 2).is_err());
        assert!(ShiftParams::new(1, 1, 2).is_err());
        assert!(shift_multiset(&g, &ShiftParams::new(1, 2, 5).unwrap()).is_err());
    }

    #[test]
    fn shift_family_blocked_by_existing_image() {
        // {1,1} would become {1,2}, which is already present.
        let f = fam(2, 2, &[&[1, 1], &[1, 2]]);
        let p = ShiftParams::new(1, 2, 2).unwrap();
        assert_eq!(shift_family(&f, &p).unwrap(), f);
        let g = fam(3, 2, &[&[1, 1], &[1, 3]]);
        let shifted = shift_family(&g, &p).unwrap();
        assert_eq!(shifted, fam(3, 2, &[&[1, 2], &[1, 3]]));
    }

    #[test]
    fn shift_family_untouched_without_enough_copies() {
        let f = fam(4, 3, &[&[1, 2, 3], &[1, 2, 4]]);
        let p = ShiftParams::new(1, 2, 3).unwrap();
        assert_eq!(shift_family(&f, &p).unwrap(), f);
    }

    #[test]
    fn sequential_and_simultaneous_shifts_agree() {
        // The shift map is injective and an image always contains j, so it can
        // never collide with another moved member.
        let universe = crate::enumerate::enumerate_k_multisets(4, 4);
        for (idx, chunk) in universe.chunks(7).enumerate() {
            let f = Family::new(4, 4, Kind::Multiset, chunk.to_vec()).unwrap();
            for (i, s, j) in [(1, 2, 2), (1, 3, 4), (2, 2, 1), (4, 2, 3)] {
                let p = ShiftParams::new(i, s, j).unwrap();
                let sequential = shift_family(&f, &p).unwrap();
                let simultaneous: Vec<Multiset> = f
                    .members()
                    .iter()
                    .map(|a| match shifted(a, &p) {
                        Some(img) if !f.contains(&img) => img,
                        _ => a.clone(),
                    })
                    .collect();
                let simultaneous = Family::new(4, 4, Kind::Multiset, simultaneous).unwrap();
                assert_eq!(sequential, simultaneous, "chunk {idx} shift {p:?}");
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let f = frankl_multiset(5, 4, 2, 1).unwrap();
        assert!(is_t_kernel(&f, &Multiset::uniform(5, 2), 2));
        assert!(is_t_kernel(&f, &Multiset::all_ones(5), 2));
        let g = fam(5, 4, &[&[1, 1, 2, 3], &[1, 1, 4, 5]]);
        assert!(g.is_t_intersecting(2));
        assert!(!is_t_kernel(&g, &Multiset::all_ones(5), 2));
        assert!(Kernel::new(ms(3, &[1, 2])).is_err());
    }

    #[test]
    fn pass_preserves_size_on_fixed_family() {
        let f = fixed_multiset(6, 4, &ms(6, &[1, 1])).unwrap();
        let kernel = Kernel::trivial(6, 2).unwrap();
        let (g, next) = down_compress_pass(&f, &kernel, 1, 2).unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(next.multiset().counts(), &[1, 2, 2, 2, 2, 2]);
        assert!(down_compress_pass(&f, &next, 1, 2).is_err());
    }

    #[test]
    fn pass_on_support_intersecting_family_keeps_it() {
        let f = frankl_multiset(6, 4, 2, 1).unwrap();
        let kernel = Kernel::new(ms(6, &[1, 1, 2, 3, 4, 5, 6])).unwrap();
        let (g, next) = down_compress_pass(&f, &kernel, 1, 2).unwrap();
        assert_eq!(g, f);
        assert_eq!(next.multiset(), &Multiset::all_ones(6));
    }

    #[test]
    fn singleton_family() {
        let f = fam(6, 4, &[&[1, 1, 1, 1]]);
        let (g, _) = down_compress_pass(&f, &Kernel::trivial(6, 2).unwrap(), 1, 2).unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn full_compression_fixed_two_multiset() {
        let f = fixed_multiset(6, 4, &ms(6, &[1, 1])).unwrap();
        let run = down_compress_full_with(
            &f,
            2,
            &CompressOptions {
                record_trace: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(run.passes, 6);
        assert_eq!(run.family.len(), f.len());
        let core = run.family.common_intersection().unwrap();
        assert_eq!(core.cardinality(), 2);
        assert!(core.is_set());
        assert!(!run.trace.is_empty());
        assert_eq!(run.family, fixed_multiset(6, 4, &core).unwrap());
    }

    #[test]
    fn full_compression_refuses_small_m_unless_asked() {
        let f = fixed_multiset(5, 4, &ms(5, &[1, 1])).unwrap();
        assert!(matches!(down_compress_full(&f, 2), Err(Error::Contract(_))));
        let opts = CompressOptions {
            allow_outside_regime: true,
            record_trace: false,
        };
        let run = down_compress_full_with(&f, 2, &opts).unwrap();
        assert_eq!(run.family.len(), 15);
        let core = run.family.common_intersection().unwrap();
        assert_eq!(core, ms(5, &[1, 2]));
    }

    #[test]
    fn t_one_is_identity() {
        let f = crate::families::star(5, 3, 2).unwrap();
        let run = down_compress_full_with(&f, 1, &CompressOptions::default()).unwrap();
        assert_eq!(run.passes, 0);
        assert_eq!(run.family, f);
    }

    #[test]
    fn support_intersecting_input_is_fixed() {
        for (m, k, t, r) in [(6, 4, 2, 1), (6, 4, 2, 0), (7, 5, 3, 1), (5, 3, 1, 1)] {
            let f = frankl_multiset(m, k, t, r).unwrap();
            assert_eq!(down_compress_full(&f, t).unwrap(), f);
        }
    }

    #[test]
    fn rejects_non_intersecting_input() {
        let f = fam(6, 2, &[&[1, 1], &[2, 2]]);
        assert!(down_compress_full(&f, 1).is_err());
    }
}
