//! The acceptance suite: one exact check per criterion, shared by the CLI and tests.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bijection::BijectionContext;
use crate::compression::{down_compress_full_with, CompressOptions};
use crate::count::{binomial, multichoose};
use crate::enumerate::{enumerate_k_multisets, subsets};
use crate::error::Result;
use crate::families::{self, is_isomorphic, sizes};
use crate::family::{Family, Kind};
use crate::multiset::{KSet, Multiset};
use crate::search::{
    ak_threshold_r, enumerate_maximum_independent_sets, enumerate_optima, max_independent_set,
    max_intersecting_empty_common, max_p_s1_family, max_t_intersecting, max_union_two_intersecting, verify_theorem,
    AkRegime, Constraint, DisjointnessGraph, GraphKind, IntersectionMode, SearchStatus, TheoremId, VerifyParams,
    DEFAULT_NODE_LIMIT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// AC-1 .. AC-6.
    Quick,
    /// AC-1 .. AC-10.
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

type Check = fn() -> Result<(bool, String)>;

pub const CRITERIA: [(&str, &str, Check); 10] = [
    ("AC-1", "multiset EKR and star uniqueness", ac1),
    ("AC-2", "empty common intersection", ac2),
    ("AC-3", "no three pairwise disjoint", ac3),
    ("AC-4", "union of two intersecting families", ac4),
    ("AC-5", "t-intersecting threshold and search", ac5),
    ("AC-6", "bijection and homomorphisms", ac6),
    ("AC-7", "down-compression", ac7),
    ("AC-8", "set-side sanity", ac8),
    ("AC-9", "size identities", ac9),
    ("AC-10", "outside the compression regime", ac10),
];

pub fn criterion_ids(profile: Profile) -> Vec<&'static str> {
    let n = match profile {
        Profile::Quick => 6,
        Profile::Full => CRITERIA.len(),
    };
    CRITERIA[..n].iter().map(|c| c.0).collect()
}

/// Runs one criterion; an error counts as a failure.
pub fn run_criterion(id: &str) -> Option<Outcome> {
    let &(id, title, check) = CRITERIA.iter().find(|c| c.0.eq_ignore_ascii_case(id))?;
    let start = Instant::now();
    let (passed, detail) = match check() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Some(Outcome {
        id,
        title,
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn run_suite(profile: Profile) -> Vec<Outcome> {
    criterion_ids(profile).into_iter().filter_map(run_criterion).collect()
}

/// Collects failures so one criterion can report every failing sub-check.
struct Tally {
    ok: bool,
    parts: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            ok: true,
            parts: Vec::new(),
        }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) {
        let what = what.into();
        if cond {
            self.parts.push(what);
        } else {
            self.ok = false;
            self.parts.push(format!("FAILED {what}"));
        }
    }

    fn finish(self) -> Result<(bool, String)> {
        Ok((self.ok, self.parts.join("; ")))
    }
}

fn proved(status: SearchStatus) -> bool {
    status == SearchStatus::ProvedOptimal
}

fn ac1() -> Result<(bool, String)> {
    let mut t = Tally::new();
    for m in [4, 5] {
        let g = DisjointnessGraph::build(GraphKind::Multiset, m, 3, 1)?;
        let r = max_independent_set(&g, DEFAULT_NODE_LIMIT)?;
        let bound: u64 = binomial(m as u64 + 1, 2)?;
        t.check(
            proved(r.status) && r.optimum as u64 == bound,
            format!("M({m},3) alpha = {} (bound {bound})", r.optimum),
        );
    }
    let g = DisjointnessGraph::build(GraphKind::Multiset, 5, 3, 1)?;
    let optima = enumerate_maximum_independent_sets(&g, 10_000, DEFAULT_NODE_LIMIT)?;
    let classes = optima.isomorphism_classes()?;
    let star = families::star(5, 3, 1)?;
    let all_stars = classes.len() == 1 && is_isomorphic(&classes[0].0, &star)?;
    t.check(
        !optima.truncated && all_stars,
        format!(
            "M(5,3): {} optima in {} class(es), star class = {all_stars}",
            optima.families.len(),
            classes.len()
        ),
    );
    t.finish()
}

fn ac2() -> Result<(bool, String)> {
    let mut t = Tally::new();
    let r = max_intersecting_empty_common(6, 3, DEFAULT_NODE_LIMIT)?;
    let formula: u64 = sizes::hm_multiset_size(6, 3)?;
    t.check(formula == 16 && formula == 3 * 6 - 2, format!("formula {formula}"));
    t.check(proved(r.status) && r.optimum == 16, format!("search {}", r.optimum));
    let hm = families::hm_multiset(6, 3)?;
    let empty = hm.common_intersection()?.is_empty();
    t.check(
        hm.len() == 16 && hm.is_intersecting() && empty,
        format!("hm_multiset(6,3) size {} with empty common intersection", hm.len()),
    );
    t.finish()
}

fn ac3() -> Result<(bool, String)> {
    let mut t = Tally::new();
    let analytic: u64 = sizes::hit_s_size(7, 2, 2)?;
    let hit = families::hit_s(7, 2, &KSet::new(7, vec![1, 2])?)?;
    let r = max_p_s1_family(7, 2, 2, DEFAULT_NODE_LIMIT)?;
    t.check(analytic == 13, format!("analytic {analytic}"));
    t.check(
        hit.len() == 13 && hit.has_property_p_s1(2),
        format!("hit_s {}", hit.len()),
    );
    t.check(proved(r.status) && r.optimum == 13, format!("search {}", r.optimum));
    t.check(is_isomorphic(&r.witness, &hit)?, "witness isomorphic to hit_s");
    t.finish()
}

fn ac4() -> Result<(bool, String)> {
    let mut t = Tally::new();
    let r = max_union_two_intersecting(5, 2, DEFAULT_NODE_LIMIT)?;
    let formula = multichoose::<u64>(5, 1)? + multichoose::<u64>(4, 1)?;
    t.check(
        proved(r.status) && r.optimum as u64 == formula && formula == 9,
        format!("search {} formula {formula}", r.optimum),
    );
    let mut bad = 0;
    for m in 2..=8u64 {
        for k in 1..=5u64 {
            let lhs = multichoose::<u64>(m, k - 1)? + multichoose::<u64>(m - 1, k - 1)?;
            let rhs = multichoose::<u64>(m, k)? - multichoose::<u64>(m - 2, k)?;
            if lhs != rhs {
                bad += 1;
            }
        }
    }
    t.check(bad == 0, format!("identity grid: {bad} mismatches"));
    t.finish()
}

fn ac5() -> Result<(bool, String)> {
    let mut t = Tally::new();
    let regime = ak_threshold_r(5, 4, 2)?;
    t.check(regime == AkRegime::Interior(1), format!("threshold {regime:?}"));
    let fr = families::frankl_multiset(5, 4, 2, 1)?;
    t.check(
        fr.len() == 17 && fr.is_t_intersecting(2),
        format!("frankl_multiset {}", fr.len()),
    );
    let r = max_t_intersecting(5, 4, 2, DEFAULT_NODE_LIMIT, IntersectionMode::True)?;
    t.check(proved(r.status) && r.optimum == 17, format!("search {}", r.optimum));
    let kernel = Multiset::from_elements(5, &[1, 1, 2, 3])?;
    let members: Vec<Multiset> = enumerate_k_multisets(5, 4)
        .into_iter()
        .filter(|a| a.intersection_size(&kernel) >= 3)
        .collect();
    let kf = Family::new(5, 4, Kind::Multiset, members)?;
    t.check(
        kf.len() == 13 && kf.is_t_intersecting(2),
        format!("kernel family {}", kf.len()),
    );
    t.finish()
}

fn ac6() -> Result<(bool, String)> {
    let mut t = Tally::new();
    let mut pairs = 0u64;
    let mut failures = 0u64;
    let mut one_way = 0u64;
    for m in 1..=5 {
        for k in 1..=4 {
            let ctx = BijectionContext::new(m, k)?;
            let sets: Vec<KSet> = subsets(ctx.n(), k).collect();
            let images: Vec<Multiset> = sets.iter().map(|b| ctx.forward(b)).collect::<Result<_>>()?;
            let mut seen = std::collections::HashSet::new();
            for (b, a) in sets.iter().zip(&images) {
                let low: Vec<usize> = b.members().iter().copied().filter(|&e| e <= m).collect();
                if a.support_elements() != low || ctx.inverse(a)? != *b || !seen.insert(a.clone()) {
                    failures += 1;
                }
            }
            if seen.len() as u64 != multichoose::<u64>(m as u64, k as u64)? {
                failures += 1;
            }
            for tt in 1..=k {
                for i in 0..sets.len() {
                    for j in i + 1..sets.len() {
                        pairs += 1;
                        let set_meet = sets[i].intersection_size(&sets[j]);
                        let supp_meet = images[i].support_overlap(&images[j]);
                        // Edges of K(n,k,t) map to edges of M'(m,k,t); the converse
                        // need not hold and is only counted.
                        if set_meet < tt && supp_meet >= tt {
                            failures += 1;
                        }
                        if supp_meet < tt && set_meet >= tt {
                            one_way += 1;
                        }
                        if tt == 1 && set_meet == 0 && images[i].intersection_size(&images[j]) != 0 {
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    t.check(
        failures == 0,
        format!("{pairs} pair checks, {failures} failures, {one_way} non-edges mapped to edges"),
    );
    t.finish()
}

/// A random t-intersecting family: greedy over a shuffled universe up to a random size.
fn random_t_intersecting(universe: &[Multiset], m: usize, k: usize, t: usize, rng: &mut ChaCha8Rng) -> Result<Family> {
    let mut order: Vec<&Multiset> = universe.iter().collect();
    order.shuffle(rng);
    let target = rng.gen_range(1..=universe.len());
    let mut members: Vec<Multiset> = Vec::new();
    for a in order {
        if members.len() == target {
            break;
        }
        if members.iter().all(|b| a.intersection_size(b) >= t) {
            members.push(a.clone());
        }
    }
    Family::new(m, k, Kind::Multiset, members)
}

pub const AC7_FAMILIES_PER_POINT: usize = 200;
pub const AC7_SEED: u64 = 0x5eed_ac07;

fn ac7() -> Result<(bool, String)> {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(AC7_SEED);
    let mut points = 0;
    let mut runs = 0;
    let mut failures = Vec::new();
    for m in 1..=6 {
        for k in 1..=5 {
            for tt in 1..=3.min(k) {
                if m + tt < 2 * k {
                    continue;
                }
                points += 1;
                let universe = enumerate_k_multisets(m, k);
                for _ in 0..AC7_FAMILIES_PER_POINT {
                    let f = random_t_intersecting(&universe, m, k, tt, &mut rng)?;
                    runs += 1;
                    match down_compress_full_with(&f, tt, &CompressOptions::default()) {
                        Ok(run) => {
                            let ok = run.family.len() == f.len()
                                && run.family.is_t_intersecting(tt)
                                && run.family.is_support_t_intersecting(tt)
                                && run.passes == (tt - 1) * m;
                            if !ok {
                                failures.push(format!("({m},{k},{tt})"));
                            }
                        }
                        Err(e) => failures.push(format!("({m},{k},{tt}): {e}")),
                    }
                }
            }
        }
    }
    failures.truncate(5);
    t.check(
        failures.is_empty(),
        format!(
            "{runs} random families over {points} grid points; per-pass size/t-intersection/kernel asserted{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!(" [{}]", failures.join(", "))
            }
        ),
    );

    let fixed = families::fixed_multiset(5, 4, &Multiset::from_elements(5, &[1, 1])?)?;
    let opts = CompressOptions {
        allow_outside_regime: true,
        record_trace: false,
    };
    let run = down_compress_full_with(&fixed, 2, &opts)?;
    let core = run.family.common_intersection()?;
    t.check(
        run.family.len() == 15 && core.cardinality() == 2 && core.is_set(),
        format!("fixed_multiset(5,4,{{1,1}}) -> size {} around {core}", run.family.len()),
    );

    let mut frankl_points = 0;
    let mut frankl_ok = true;
    for m in 3..=6 {
        for k in 2..=5 {
            for tt in 1..=3.min(k) {
                if m + tt < 2 * k || tt + 2 > m || tt + 1 > k {
                    continue;
                }
                let f = families::frankl_multiset(m, k, tt, 1)?;
                let out = down_compress_full_with(&f, tt, &CompressOptions::default())?;
                frankl_points += 1;
                frankl_ok &= is_isomorphic(&out.family, &f)?;
            }
        }
    }
    t.check(
        frankl_ok,
        format!("frankl_multiset(r=1) isomorphic after compression at {frankl_points} points"),
    );
    t.finish()
}

fn ac8() -> Result<(bool, String)> {
    let mut t = Tally::new();
    let g = DisjointnessGraph::build(GraphKind::Kneser, 5, 2, 1)?;
    let r = max_independent_set(&g, DEFAULT_NODE_LIMIT)?;
    t.check(
        proved(r.status) && r.optimum == 4,
        format!("alpha K(5,2) = {}", r.optimum),
    );
    let g = DisjointnessGraph::build(GraphKind::KneserT, 6, 3, 2)?;
    let r = max_independent_set(&g, DEFAULT_NODE_LIMIT)?;
    let best = (0..=1)
        .map(|r| sizes::frankl_set_size::<u64>(6, 3, 2, r))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    t.check(
        proved(r.status) && r.optimum as u64 == best,
        format!(
            "2-intersecting 3-subsets of [6]: {} vs max_r frankl_set {best}",
            r.optimum
        ),
    );
    t.finish()
}

fn ac9() -> Result<(bool, String)> {
    let mut t = Tally::new();
    let mut points = 0;
    let mut bad = 0;
    for m in 1..=7 {
        for k in 1..=5 {
            for tt in 1..=3.min(k) {
                for r in 0..=2 {
                    if tt + 2 * r > m {
                        continue;
                    }
                    points += 1;
                    let a: u64 = sizes::frankl_set_size(m + k - 1, k, tt, r)?;
                    let b: u64 = sizes::frankl_multiset_size(m, k, tt, r)?;
                    let built_ok = tt + r > k || families::frankl_multiset(m, k, tt, r)?.len() as u64 == b;
                    if a != b || !built_ok {
                        bad += 1;
                    }
                }
            }
        }
    }
    t.check(
        bad == 0,
        format!("frankl set/multiset sizes at {points} points, {bad} mismatches"),
    );
    let mut hr_bad = 0;
    let mut hr_points = 0;
    for n in 1..=12 {
        for k in 1..=5 {
            for s in 1..=3.min(n) {
                hr_points += 1;
                let lhs: u64 = sizes::hajnal_rothschild_size(n, k, 1, s)?;
                let rhs = binomial::<u64>(n as u64, k as u64)? - binomial::<u64>((n - s) as u64, k as u64)?;
                if lhs != rhs {
                    hr_bad += 1;
                }
            }
        }
    }
    t.check(
        hr_bad == 0,
        format!("t = 1 inclusion-exclusion at {hr_points} points, {hr_bad} mismatches"),
    );
    t.finish()
}

fn show(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn ac10() -> Result<(bool, String)> {
    let mut t = Tally::new();
    let small = verify_theorem(TheoremId::Open, &VerifyParams::new(2, 3).with_t(2))?;
    t.check(
        small.common_t_multiset == Some(true) && proved(small.status),
        format!(
            "m=2,k=3,t=2 true-mode optimum {} has a common 2-multiset",
            show(small.true_mode_optimum)
        ),
    );
    let mut all_common = true;
    for k in 2..=5 {
        for tt in 1..=k {
            let g = DisjointnessGraph::build(GraphKind::MultisetT, 2, k, tt)?;
            let optima = enumerate_optima(&g, Constraint::None, 1000, DEFAULT_NODE_LIMIT)?;
            all_common &= !optima.truncated
                && optima
                    .families
                    .iter()
                    .all(|f| f.common_intersection().map(|c| c.cardinality() >= tt).unwrap_or(false));
        }
    }
    t.check(
        all_common,
        "every true-mode optimum at m=2 (k <= 5) has a common t-multiset",
    );
    let open = verify_theorem(TheoremId::Open, &VerifyParams::new(4, 4).with_t(2))?;
    let support = open.search_optimum.unwrap_or(0);
    // Recorded, not asserted: the bound may or may not be attained here.
    t.check(
        proved(open.status) && support <= open.analytic_bound,
        format!(
            "m=4,k=4,t=2: bound {}, support-mode {support} ({}), true-mode {}",
            open.analytic_bound,
            if support == open.analytic_bound {
                "attained"
            } else {
                "unattained"
            },
            show(open.true_mode_optimum)
        ),
    );
    t.finish()
}
