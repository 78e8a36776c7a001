//! Exact extremal searches over disjointness graphs.
//!
//! An independent set of a disjointness graph is an intersecting family, so
//! every search here is a maximum clique problem on the complementary
//! compatibility graph, optionally with a side constraint. Searches are
//! single-threaded and deterministic; a node limit turns an exhausted budget
//! into [`SearchStatus::NodeLimitHit`] rather than a wrong answer.

pub mod bitset;
mod engine;
pub mod graph;
mod threshold;
pub mod verify;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::canonical_form;
use crate::family::Family;
use engine::{Goal, Incumbent, Space};
pub use graph::{DisjointnessGraph, GraphKind, DEFAULT_VERTEX_CAP};
pub use threshold::{ak_bound, ak_threshold_r, AkRegime};
pub use verify::{verify_theorem, TheoremId, UniquenessVerdict, VerifyParams, VerifyReport};

pub const DEFAULT_NODE_LIMIT: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    ProvedOptimal,
    NodeLimitHit,
}

impl std::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchStatus::ProvedOptimal => "proved_optimal",
            SearchStatus::NodeLimitHit => "node_limit_hit",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Best size found; exact when `status` is `ProvedOptimal`.
    pub optimum: usize,
    pub witness: Family,
    pub status: SearchStatus,
    pub nodes_explored: u64,
}

/// Extra requirement on top of pairwise compatibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// Plain independent set.
    None,
    /// Independent set whose common intersection has cardinality below `t`.
    CommonBelow(usize),
    /// Any vertex set with no `s + 1` pairwise adjacent members.
    CliqueFree(usize),
    /// Any vertex set inducing a bipartite subgraph.
    Bipartite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectionMode {
    /// `|A ∩ B| >= t` counted with multiplicity.
    True,
    /// The supports share at least `t` elements.
    Support,
}

fn run(g: &DisjointnessGraph, constraint: Constraint, goal: Goal, node_limit: u64) -> Result<Incumbent> {
    let space = Space::new(g);
    let mut inc = Incumbent::new(goal, node_limit);
    let mut cur = Vec::new();
    match constraint {
        Constraint::None => space.max_clique(&mut inc, &mut cur, space.all()),
        Constraint::CommonBelow(t) => space.common_below(&mut inc, &mut cur, None, space.all(), t),
        Constraint::CliqueFree(s) => {
            if s == 0 {
                return Err(Error::contract("s must be positive"));
            }
            if s == 1 {
                space.max_clique(&mut inc, &mut cur, space.all());
            } else {
                let mut chosen = bitset::Bitset::new(space.len());
                space.clique_free(&mut inc, &mut cur, &mut chosen, space.all(), s);
            }
        }
        Constraint::Bipartite => space.bipartite(&mut inc, &mut cur, space.all(), space.all()),
    }
    Ok(inc)
}

/// Checks a family against the raw pairwise predicate of `g` and the constraint.
pub fn satisfies(g: &DisjointnessGraph, constraint: Constraint, family: &Family) -> bool {
    let kind = g.kind();
    let t = g.t();
    let members = family.members();
    let clash = |a: usize, b: usize| !kind.compatible(&members[a], &members[b], t);
    match constraint {
        Constraint::None => g.is_independent_raw(family),
        Constraint::CommonBelow(bound) => {
            g.is_independent_raw(family) && family.common_intersection().map_or(true, |c| c.cardinality() < bound)
        }
        Constraint::CliqueFree(s) => {
            fn grow(
                chain: &mut Vec<usize>,
                from: usize,
                n: usize,
                want: usize,
                clash: &dyn Fn(usize, usize) -> bool,
            ) -> bool {
                if chain.len() == want {
                    return true;
                }
                for x in from..n {
                    if chain.iter().all(|&y| clash(x, y)) {
                        chain.push(x);
                        if grow(chain, x + 1, n, want, clash) {
                            return true;
                        }
                        chain.pop();
                    }
                }
                false
            }
            !grow(&mut Vec::new(), 0, members.len(), s + 1, &clash)
        }
        Constraint::Bipartite => {
            let n = members.len();
            let mut side = vec![None::<bool>; n];
            for start in 0..n {
                if side[start].is_some() {
                    continue;
                }
                side[start] = Some(false);
                let mut stack = vec![start];
                while let Some(x) = stack.pop() {
                    for y in 0..n {
                        if y != x && clash(x, y) {
                            match side[y] {
                                None => {
                                    side[y] = Some(!side[x].unwrap());
                                    stack.push(y);
                                }
                                Some(sy) if Some(sy) == side[x] => return false,
                                _ => {}
                            }
                        }
                    }
                }
            }
            true
        }
    }
}

/// Maximum vertex set of `g` satisfying `constraint`.
pub fn solve(g: &DisjointnessGraph, constraint: Constraint, node_limit: u64) -> Result<SearchResult> {
    let inc = run(g, constraint, Goal::Maximize, node_limit)?;
    let witness = g.family_of(&inc.witness)?;
    if !satisfies(g, constraint, &witness) {
        return Err(Error::Internal(format!(
            "search witness violates {constraint:?} on the {} graph",
            g.kind()
        )));
    }
    Ok(SearchResult {
        optimum: inc.best,
        witness,
        status: if inc.limit_hit {
            SearchStatus::NodeLimitHit
        } else {
            SearchStatus::ProvedOptimal
        },
        nodes_explored: inc.nodes,
    })
}

#[derive(Clone, Debug)]
pub struct Optima {
    pub optimum: usize,
    pub families: Vec<Family>,
    /// More optima exist than the cap allowed.
    pub truncated: bool,
    pub status: SearchStatus,
    pub nodes_explored: u64,
}

impl Optima {
    /// Buckets the collected optima by canonical form; returns class sizes
    /// keyed by a representative.
    pub fn isomorphism_classes(&self) -> Result<Vec<(Family, usize)>> {
        let mut classes: BTreeMap<Vec<crate::Multiset>, (Family, usize)> = BTreeMap::new();
        for f in &self.families {
            let key = canonical_form(f)?.into_members();
            classes.entry(key).or_insert_with(|| (f.clone(), 0)).1 += 1;
        }
        Ok(classes.into_values().collect())
    }
}

/// All maximum solutions (up to `cap`), after first proving the optimum.
pub fn enumerate_optima(g: &DisjointnessGraph, constraint: Constraint, cap: usize, node_limit: u64) -> Result<Optima> {
    let best = solve(g, constraint, node_limit)?;
    if best.status == SearchStatus::NodeLimitHit {
        return Ok(Optima {
            optimum: best.optimum,
            families: vec![best.witness],
            truncated: true,
            status: best.status,
            nodes_explored: best.nodes_explored,
        });
    }
    let inc = run(
        g,
        constraint,
        Goal::Collect {
            target: best.optimum,
            cap,
        },
        node_limit,
    )?;
    let families = inc.found.iter().map(|vs| g.family_of(vs)).collect::<Result<Vec<_>>>()?;
    Ok(Optima {
        optimum: best.optimum,
        families,
        truncated: inc.truncated || inc.limit_hit,
        status: if inc.limit_hit {
            SearchStatus::NodeLimitHit
        } else {
            SearchStatus::ProvedOptimal
        },
        nodes_explored: best.nodes_explored + inc.nodes,
    })
}

pub fn max_independent_set(g: &DisjointnessGraph, node_limit: u64) -> Result<SearchResult> {
    solve(g, Constraint::None, node_limit)
}

pub fn enumerate_maximum_independent_sets(g: &DisjointnessGraph, cap: usize, node_limit: u64) -> Result<Optima> {
    enumerate_optima(g, Constraint::None, cap, node_limit)
}

/// Largest intersecting family of k-multisets of `[m]` with empty common intersection.
pub fn max_intersecting_empty_common(m: usize, k: usize, node_limit: u64) -> Result<SearchResult> {
    let g = DisjointnessGraph::build(GraphKind::Multiset, m, k, 1)?;
    solve(&g, Constraint::CommonBelow(1), node_limit)
}

/// Largest family of k-multisets of `[m]` with no `s + 1` pairwise disjoint members.
pub fn max_p_s1_family(m: usize, k: usize, s: usize, node_limit: u64) -> Result<SearchResult> {
    let g = DisjointnessGraph::build(GraphKind::Multiset, m, k, 1)?;
    solve(&g, Constraint::CliqueFree(s), node_limit)
}

/// Largest union of two intersecting families of k-multisets of `[m]`.
pub fn max_union_two_intersecting(m: usize, k: usize, node_limit: u64) -> Result<SearchResult> {
    let g = DisjointnessGraph::build(GraphKind::Multiset, m, k, 1)?;
    solve(&g, Constraint::Bipartite, node_limit)
}

pub fn t_intersecting_graph(m: usize, k: usize, t: usize, mode: IntersectionMode) -> Result<DisjointnessGraph> {
    let kind = match mode {
        IntersectionMode::True => GraphKind::MultisetT,
        IntersectionMode::Support => GraphKind::MultisetSupportT,
    };
    DisjointnessGraph::build(kind, m, k, t)
}

/// Largest t-intersecting family of k-multisets of `[m]`.
pub fn max_t_intersecting(
    m: usize,
    k: usize,
    t: usize,
    node_limit: u64,
    mode: IntersectionMode,
) -> Result<SearchResult> {
    let g = t_intersecting_graph(m, k, t, mode)?;
    solve(&g, Constraint::None, node_limit)
}

/// Largest t-intersecting family of k-multisets of `[m]` whose common
/// intersection has fewer than `t` elements.
pub fn max_t_intersecting_nontrivial(m: usize, k: usize, t: usize, node_limit: u64) -> Result<SearchResult> {
    if !(1 < t && t < k) {
        return Err(Error::contract(format!("needs 1 < t < k (t={t}, k={k})")));
    }
    let g = DisjointnessGraph::build(GraphKind::MultisetT, m, k, t)?;
    solve(&g, Constraint::CommonBelow(t), node_limit)
}
