use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use mset_ekr::compression::{down_compress_full_with, CompressOptions};
use mset_ekr::families::{is_isomorphic, FamilySpec};
use mset_ekr::format::{emit_family, parse_family};
use mset_ekr::search::{self, Constraint, DisjointnessGraph, SearchStatus, VerifyParams};
use mset_ekr::suite::{run_suite, Profile};
use mset_ekr::{BijectionContext, Family, KSet, Kind, Multiset};
use serde::Serialize;

use crate::table::{key_values, Table};
use crate::{ConstraintArg, Direction, FamilyArgs, ProfileArg, SearchArgs, VerifyArgs};
use crate::{EXIT_LIMIT, EXIT_MISMATCH, EXIT_OK};

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(mset_ekr::Error::Contract(msg.into()))
}

fn read_family(path: &Path) -> Result<Family> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_family(&text).map_err(|e| anyhow!(e).context(path.display().to_string()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))
}

fn ground(m: Option<usize>, n: Option<usize>, want_n: bool) -> Result<usize> {
    match (m, n) {
        (Some(_), Some(_)) => Err(usage("give only one of --m and --n")),
        (Some(v), None) | (None, Some(v)) => Ok(v),
        (None, None) => Err(usage(if want_n { "--n is required" } else { "--m is required" })),
    }
}

fn need(v: Option<usize>, flag: &str, family: &str) -> Result<usize> {
    v.ok_or_else(|| usage(format!("{family} needs --{flag}")))
}

fn family_spec(a: &FamilyArgs) -> Result<FamilySpec> {
    let name = a.family.as_str();
    let on_sets = matches!(name, "frankl_set" | "hm_set" | "hm_t_set" | "hajnal_rothschild");
    let g = ground(a.m, a.n, on_sets)?;
    let k = a.k;
    Ok(match name {
        "star" => FamilySpec::Star { m: g, k, x: a.x },
        "fixed_multiset" => {
            let core = a.core.as_ref().ok_or_else(|| usage("fixed_multiset needs --core"))?;
            FamilySpec::FixedMultiset {
                m: g,
                k,
                core: Multiset::from_elements(g, core)?,
            }
        }
        "frankl_set" => FamilySpec::FranklSet {
            n: g,
            k,
            t: need(a.t, "t", name)?,
            r: need(a.r, "r", name)?,
        },
        "frankl_multiset" => FamilySpec::FranklMultiset {
            m: g,
            k,
            t: need(a.t, "t", name)?,
            r: need(a.r, "r", name)?,
        },
        "hm_set" => FamilySpec::HmSet { n: g, k },
        "hm_multiset" => FamilySpec::HmMultiset { m: g, k },
        "hm_t_set" => FamilySpec::HmTSet {
            n: g,
            k,
            t: need(a.t, "t", name)?,
        },
        "hm_t_multiset" => FamilySpec::HmTMultiset {
            m: g,
            k,
            t: need(a.t, "t", name)?,
        },
        "hit_s" => {
            let anchor = match (&a.anchor, a.s) {
                (Some(v), _) => v.clone(),
                (None, Some(s)) => (1..=s).collect(),
                (None, None) => return Err(usage("hit_s needs --anchor or --s")),
            };
            FamilySpec::HitS {
                m: g,
                k,
                anchor: KSet::new(g, anchor)?,
            }
        }
        "hajnal_rothschild" => FamilySpec::HajnalRothschild {
            n: g,
            k,
            t: a.t.unwrap_or(1),
            s: need(a.s, "s", name)?,
        },
        other => bail!(usage(format!("unknown family '{other}'"))),
    })
}

pub fn size(a: &FamilyArgs) -> Result<u8> {
    let spec = family_spec(a)?;
    let closed = spec.closed_form_size()?;
    let enumerated = match spec.build() {
        Ok(f) => Some(f.len() as u64),
        // Size-only families (e.g. hajnal_rothschild with t > 1).
        Err(mset_ekr::Error::Contract(msg)) if closed.is_some() => {
            eprintln!("note: not enumerated: {msg}");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let show = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
    let mut table = Table::new(["family", "closed_form", "enumerated"]);
    table.row([spec.to_string(), show(closed), show(enumerated)]);
    print!("{}", table.render());
    match (closed, enumerated) {
        (Some(c), Some(e)) if c != e => {
            eprintln!("mismatch: closed form {c} vs enumeration {e}");
            Ok(EXIT_MISMATCH)
        }
        _ => Ok(EXIT_OK),
    }
}

pub fn construct(a: &FamilyArgs, output: Option<&Path>) -> Result<u8> {
    let spec = family_spec(a)?;
    let family = spec.build()?;
    write_out(output, &emit_family(&family))?;
    if output.is_some() {
        eprintln!("{spec}: {} members", family.len());
    }
    Ok(EXIT_OK)
}

pub fn map(input: &Path, output: Option<&Path>, direction: Direction) -> Result<u8> {
    let family = read_family(input)?;
    let k = family.k();
    let mapped = match direction {
        Direction::Forward => {
            if family.kind() != Kind::Set {
                bail!(usage("forward mapping needs a kind=set file"));
            }
            let n = family.ground_size();
            if n + 1 <= k {
                bail!(usage(format!("n = {n} is too small for k = {k}")));
            }
            let ctx = BijectionContext::new(n + 1 - k, k)?;
            let members = family
                .members()
                .iter()
                .map(|b| ctx.forward(&KSet::from_multiset(b)?))
                .collect::<mset_ekr::Result<Vec<_>>>()?;
            Family::new(ctx.m(), k, Kind::Multiset, members)?
        }
        Direction::Inverse => {
            if family.kind() != Kind::Multiset {
                bail!(usage("inverse mapping needs a kind=multiset file"));
            }
            let ctx = BijectionContext::new(family.ground_size(), k)?;
            let members = family
                .members()
                .iter()
                .map(|a| ctx.inverse(a).map(|b| b.to_multiset()))
                .collect::<mset_ekr::Result<Vec<_>>>()?;
            Family::new(ctx.n(), k, Kind::Set, members)?
        }
    };
    write_out(output, &emit_family(&mapped))?;
    Ok(EXIT_OK)
}

pub fn compress(
    input: &Path,
    t: usize,
    output: Option<&Path>,
    trace: Option<&Path>,
    allow_outside_regime: bool,
) -> Result<u8> {
    let family = read_family(input)?;
    if family.kind() != Kind::Multiset {
        bail!(usage("compress needs a kind=multiset file"));
    }
    let opts = CompressOptions {
        allow_outside_regime,
        record_trace: trace.is_some(),
    };
    let run = down_compress_full_with(&family, t, &opts)?;
    if let Some(path) = trace {
        let mut f = fs::File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
        for rec in &run.trace {
            writeln!(f, "{}", serde_json::to_string(rec)?)?;
        }
    }
    write_out(output, &emit_family(&run.family))?;
    let summary = key_values(&[
        ("members", run.family.len().to_string()),
        ("passes", run.passes.to_string()),
        ("kernel", run.kernel.multiset().to_string()),
        ("shifted", run.trace.len().to_string()),
        (
            "support_t_intersecting",
            run.family.is_support_t_intersecting(t).to_string(),
        ),
    ]);
    // Keep stdout clean when the family itself went there.
    if output.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SearchReport {
    kind: String,
    ground: usize,
    k: usize,
    t: usize,
    s: Option<usize>,
    constraint: String,
    vertices: usize,
    edges: usize,
    optimum: usize,
    status: SearchStatus,
    nodes_explored: u64,
    elapsed_ms: u64,
    witness: Vec<Vec<usize>>,
}

pub fn search(a: &SearchArgs) -> Result<u8> {
    let on_sets = a.kind.family_kind() == Kind::Set;
    let g_size = ground(a.m, a.n, on_sets)?;
    let constraint = match a.constraint {
        None => Constraint::None,
        Some(ConstraintArg::EmptyCommon) => Constraint::CommonBelow(1),
        Some(ConstraintArg::NontrivialT) => Constraint::CommonBelow(a.t),
        Some(ConstraintArg::Bipartite) => Constraint::Bipartite,
        Some(ConstraintArg::CliqueFree) => Constraint::CliqueFree(a.s.ok_or_else(|| usage("clique-free needs --s"))?),
    };
    let constraint_name = match a.constraint {
        None => "none".to_string(),
        Some(ConstraintArg::CliqueFree) => format!("clique-free(s={})", a.s.unwrap_or(0)),
        Some(c) => format!("{c:?}")
            .chars()
            .flat_map(|ch| {
                if ch.is_uppercase() {
                    vec!['-', ch.to_ascii_lowercase()]
                } else {
                    vec![ch]
                }
            })
            .skip(1)
            .collect(),
    };
    let start = Instant::now();
    let graph = DisjointnessGraph::build_with_cap(a.kind, g_size, a.k, a.t, a.vertex_cap)?;
    let result = search::solve(&graph, constraint, a.node_limit)?;
    let elapsed_ms = start.elapsed().as_millis() as u64;

    let ground_flag = if on_sets { "n" } else { "m" };
    print!(
        "{}",
        key_values(&[
            ("graph", a.kind.to_string()),
            ("params", format!("{ground_flag}={g_size} k={} t={}", a.k, a.t)),
            ("constraint", constraint_name.clone()),
            ("vertices", graph.vertex_count().to_string()),
            ("edges", graph.edge_count().to_string()),
            ("optimum", result.optimum.to_string()),
            ("status", result.status.to_string()),
            ("nodes", result.nodes_explored.to_string()),
        ])
    );
    if let Some(path) = &a.witness {
        fs::write(path, emit_family(&result.witness)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    if let Some(path) = &a.json {
        let report = SearchReport {
            kind: a.kind.to_string(),
            ground: g_size,
            k: a.k,
            t: a.t,
            s: a.s,
            constraint: constraint_name,
            vertices: graph.vertex_count(),
            edges: graph.edge_count(),
            optimum: result.optimum,
            status: result.status,
            nodes_explored: result.nodes_explored,
            elapsed_ms,
            witness: result.witness.members().iter().map(|m| m.elements()).collect(),
        };
        write_json(path, &report)?;
    }
    if result.status == SearchStatus::NodeLimitHit {
        eprintln!("node limit {} reached; optimum is a lower bound", a.node_limit);
        return Ok(EXIT_LIMIT);
    }
    Ok(EXIT_OK)
}

pub fn verify(a: &VerifyArgs) -> Result<u8> {
    let g_size = ground(a.m, a.n, a.theorem.on_sets())?;
    let mut params = VerifyParams::new(g_size, a.k)
        .with_t(a.t)
        .with_s(a.s)
        .with_uniqueness(a.uniqueness);
    params.node_limit = a.node_limit;
    let report = search::verify_theorem(a.theorem, &params)?;

    let show = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
    let param_text: Vec<String> = report.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut rows = vec![
        ("theorem", report.theorem.to_string()),
        ("params", param_text.join(" ")),
        ("analytic_bound", report.analytic_bound.to_string()),
        (
            "constructed",
            match &report.constructed_family {
                Some(name) => format!("{}  {name}", show(report.constructed_size)),
                None => "-".to_string(),
            },
        ),
        ("search_optimum", show(report.search_optimum)),
        ("status", report.status.to_string()),
        ("nodes", report.nodes_explored.to_string()),
        ("uniqueness", report.uniqueness_verdict.to_string()),
    ];
    if let Some(c) = report.isomorphism_classes {
        rows.push(("iso_classes", c.to_string()));
    }
    if let Some(w) = report.witness_isomorphic_to_construction {
        rows.push(("witness_iso", w.to_string()));
    }
    if let Some(v) = report.true_mode_optimum {
        rows.push(("true_mode_optimum", v.to_string()));
    }
    if let Some(v) = report.common_t_multiset {
        rows.push(("common_t_multiset", v.to_string()));
    }
    rows.push(("hypothesis_met", report.hypothesis_met.to_string()));
    rows.push(("matched", report.matched.to_string()));
    print!("{}", key_values(&rows));
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    if let Some(path) = &a.json {
        write_json(path, &report)?;
    }
    if report.status == SearchStatus::NodeLimitHit {
        eprintln!("node limit {} reached", a.node_limit);
        return Ok(EXIT_LIMIT);
    }
    Ok(if report.failed() { EXIT_MISMATCH } else { EXIT_OK })
}

pub fn isomorphic(a: &Path, b: &Path) -> Result<u8> {
    let fa = read_family(a)?;
    let fb = read_family(b)?;
    let same = is_isomorphic(&fa, &fb)?;
    println!("{}", if same { "isomorphic" } else { "not isomorphic" });
    Ok(if same { EXIT_OK } else { EXIT_MISMATCH })
}

pub fn suite(profile: ProfileArg, json: Option<&Path>) -> Result<u8> {
    let profile = match profile {
        ProfileArg::Quick => Profile::Quick,
        ProfileArg::Full => Profile::Full,
    };
    let outcomes = run_suite(profile);
    let mut table = Table::new(["criterion", "result", "title", "detail"]);
    for o in &outcomes {
        table.row([
            o.id.to_string(),
            if o.passed { "PASS" } else { "FAIL" }.to_string(),
            o.title.to_string(),
            o.detail.clone(),
        ]);
        eprintln!("{}: {} ms", o.id, o.elapsed_ms);
    }
    print!("{}", table.render());
    if let Some(path) = json {
        write_json(path, &outcomes)?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        return Ok(EXIT_MISMATCH);
    }
    Ok(EXIT_OK)
}
