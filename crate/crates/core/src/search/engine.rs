//! Branch-and-bound kernels working in a relabeled "position" space.
//!
//! Vertices are renumbered so that position 0 has the largest number of
//! compatible partners. Every kernel is a clique search in the compatibility
//! graph (the complement of the disjointness graph), possibly with a side
//! constraint, and bounds the remaining gain by greedily partitioning the
//! candidates into cliques of the disjointness graph.

use std::collections::BTreeSet;

use super::bitset::Bitset;
use super::graph::DisjointnessGraph;
use crate::multiset::Multiset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    Maximize,
    Collect { target: usize, cap: usize },
}

pub(crate) struct Incumbent {
    goal: Goal,
    pub best: usize,
    pub witness: Vec<usize>,
    pub found: BTreeSet<Vec<usize>>,
    pub truncated: bool,
    pub nodes: u64,
    limit: u64,
    pub limit_hit: bool,
}

impl Incumbent {
    pub fn new(goal: Goal, limit: u64) -> Self {
        Incumbent {
            goal,
            best: 0,
            witness: Vec::new(),
            found: BTreeSet::new(),
            truncated: false,
            nodes: 0,
            limit,
            limit_hit: false,
        }
    }

    fn tick(&mut self) -> bool {
        if self.stopped() {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            self.limit_hit = true;
            return false;
        }
        true
    }

    fn stopped(&self) -> bool {
        self.limit_hit || self.truncated
    }

    fn prunes(&self, upper: usize) -> bool {
        match self.goal {
            Goal::Maximize => upper <= self.best,
            Goal::Collect { target, .. } => upper < target,
        }
    }

    fn offer(&mut self, cur: &[usize], order: &[usize]) {
        match self.goal {
            Goal::Maximize => {
                if cur.len() > self.best {
                    self.best = cur.len();
                    self.witness = cur.iter().map(|&p| order[p]).collect();
                }
            }
            Goal::Collect { target, cap } => {
                if cur.len() == target {
                    let mut vs: Vec<usize> = cur.iter().map(|&p| order[p]).collect();
                    vs.sort_unstable();
                    if !self.found.contains(&vs) {
                        if self.found.len() == cap {
                            self.truncated = true;
                        } else {
                            self.found.insert(vs);
                        }
                    }
                }
            }
        }
    }
}

pub(crate) struct Space<'g> {
    /// position -> vertex index in the graph.
    order: Vec<usize>,
    compat: Vec<Bitset>,
    adj: Vec<Bitset>,
    verts: Vec<&'g Multiset>,
}

impl<'g> Space<'g> {
    pub fn new(g: &'g DisjointnessGraph) -> Self {
        let v = g.vertex_count();
        let mut order: Vec<usize> = (0..v).collect();
        // Descending compatibility degree, ties by rank.
        order.sort_by_key(|&x| (g.degree(x), x));
        let mut pos = vec![0usize; v];
        for (p, &x) in order.iter().enumerate() {
            pos[x] = p;
        }
        let adj: Vec<Bitset> = order
            .iter()
            .map(|&x| Bitset::from_indices(v, g.neighbors(x).iter().map(|y| pos[y])))
            .collect();
        let compat = (0..v)
            .map(|p| {
                let mut c = Bitset::full(v);
                c.difference_with(&adj[p]);
                c.remove(p);
                c
            })
            .collect();
        let verts = order.iter().map(|&x| g.vertex(x)).collect();
        Space {
            order,
            compat,
            adj,
            verts,
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn all(&self) -> Bitset {
        Bitset::full(self.len())
    }

    /// Greedy partition of `cand` into cliques of the disjointness graph.
    /// Returns candidates in class order with prefix bounds: `bounds[i]` caps
    /// how many of `order[..=i]` a solution may use when each class admits at
    /// most `per_class` members.
    fn color_bounds(&self, cand: &Bitset, per_class: usize) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.count());
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut uncolored = cand.clone();
        let mut total = 0usize;
        while !uncolored.is_empty() {
            let mut q = uncolored.clone();
            let mut in_class = 0usize;
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(&self.compat[v]);
                uncolored.remove(v);
                in_class += 1;
                if in_class <= per_class {
                    total += 1;
                }
                order.push(v);
                bounds.push(total);
            }
        }
        (order, bounds)
    }

    pub fn max_clique(&self, inc: &mut Incumbent, cur: &mut Vec<usize>, cand: Bitset) {
        if !inc.tick() {
            return;
        }
        inc.offer(cur, &self.order);
        if cand.is_empty() {
            return;
        }
        let (order, bounds) = self.color_bounds(&cand, 1);
        let mut cand = cand;
        for idx in (0..order.len()).rev() {
            if inc.stopped() || inc.prunes(cur.len() + bounds[idx]) {
                return;
            }
            let v = order[idx];
            cand.remove(v);
            let next = cand.and(&self.compat[v]);
            cur.push(v);
            self.max_clique(inc, cur, next);
            cur.pop();
        }
    }

    /// Cliques whose members have common intersection of cardinality below `t`.
    /// `core` is the common intersection of `cur` (`None` while `cur` is empty).
    pub fn common_below(
        &self,
        inc: &mut Incumbent,
        cur: &mut Vec<usize>,
        core: Option<&Multiset>,
        cand: Bitset,
        t: usize,
    ) {
        if let Some(c) = core {
            if c.cardinality() < t {
                self.max_clique(inc, cur, cand);
                return;
            }
        }
        if !inc.tick() || cand.is_empty() {
            return;
        }
        let (order, bounds) = self.color_bounds(&cand, 1);
        if inc.prunes(cur.len() + bounds.last().copied().unwrap_or(0)) {
            return;
        }
        // Any completion must contain a member that shrinks the core.
        let reducers: Vec<usize> = order
            .iter()
            .rev()
            .copied()
            .filter(|&v| core.map_or(true, |c| !self.verts[v].contains(c)))
            .collect();
        let mut cand = cand;
        for v in reducers {
            if inc.stopped() {
                return;
            }
            cand.remove(v);
            let next = cand.and(&self.compat[v]);
            if inc.prunes(cur.len() + 1 + next.count()) {
                continue;
            }
            let next_core = match core {
                Some(c) => c.meet(self.verts[v]),
                None => self.verts[v].clone(),
            };
            cur.push(v);
            self.common_below(inc, cur, Some(&next_core), next, t);
            cur.pop();
        }
    }

    fn has_clique(&self, set: &Bitset, size: usize) -> bool {
        match size {
            0 => true,
            1 => !set.is_empty(),
            _ => {
                let mut remaining = set.clone();
                while let Some(u) = remaining.first() {
                    remaining.remove(u);
                    let rest = remaining.and(&self.adj[u]);
                    if rest.count() >= size - 1 && self.has_clique(&rest, size - 1) {
                        return true;
                    }
                }
                false
            }
        }
    }

    /// Vertex sets inducing no `(s + 1)`-clique of the disjointness graph.
    /// Every vertex in `cand` can be added to `chosen` without creating one.
    pub fn clique_free(&self, inc: &mut Incumbent, cur: &mut Vec<usize>, chosen: &mut Bitset, cand: Bitset, s: usize) {
        if !inc.tick() {
            return;
        }
        inc.offer(cur, &self.order);
        if cand.is_empty() {
            return;
        }
        let (order, bounds) = self.color_bounds(&cand, s);
        let mut cand = cand;
        for idx in (0..order.len()).rev() {
            if inc.stopped() || inc.prunes(cur.len() + bounds[idx]) {
                return;
            }
            let v = order[idx];
            cand.remove(v);
            let mut next = cand.clone();
            let around_v = chosen.and(&self.adj[v]);
            for u in cand.and(&self.adj[v]).iter() {
                if self.has_clique(&around_v.and(&self.adj[u]), s - 1) {
                    next.remove(u);
                }
            }
            chosen.insert(v);
            cur.push(v);
            self.clique_free(inc, cur, chosen, next, s);
            cur.pop();
            chosen.remove(v);
        }
    }

    /// Vertex sets inducing a bipartite subgraph; `side_a`/`side_b` hold the
    /// candidates that can still join each side.
    pub fn bipartite(&self, inc: &mut Incumbent, cur: &mut Vec<usize>, side_a: Bitset, side_b: Bitset) {
        if !inc.tick() {
            return;
        }
        inc.offer(cur, &self.order);
        let mut cand = side_a.clone();
        cand.union_with(&side_b);
        if cand.is_empty() {
            return;
        }
        let (order, bounds) = self.color_bounds(&cand, 2);
        let (mut ca, mut cb) = (side_a, side_b);
        for idx in (0..order.len()).rev() {
            if inc.stopped() || inc.prunes(cur.len() + bounds[idx]) {
                return;
            }
            let v = order[idx];
            let (to_a, to_b) = (ca.contains(v), cb.contains(v));
            ca.remove(v);
            cb.remove(v);
            cur.push(v);
            if to_a {
                let mut na = ca.clone();
                na.difference_with(&self.adj[v]);
                self.bipartite(inc, cur, na, cb.clone());
            }
            // The first vertex placed goes to side A only; swapping sides is a symmetry.
            if to_b && cur.len() > 1 {
                let mut nb = cb.clone();
                nb.difference_with(&self.adj[v]);
                self.bipartite(inc, cur, ca.clone(), nb);
            }
            cur.pop();
        }
    }
}
