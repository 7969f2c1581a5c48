//! Skeleton and ridge graphs of a described cone, with diameter, minimal
//! degree, edge connectivity, products and pattern checks.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyhedra::{map_all, Bits, Description};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    /// Vertices are extreme rays.
    Skeleton,
    /// Vertices are facets.
    Ridge,
}

/// Simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceGraph {
    pub kind: Option<GraphKind>,
    adj: Vec<Vec<usize>>,
}

/// Face-lattice adjacency: `i` and `j` are adjacent iff the only members
/// whose incidence set contains `inc[i] & inc[j]` are `i` and `j`.
fn combinatorial_edges(inc: &[Bits], min_common: usize) -> Vec<(usize, usize)> {
    let idx: Vec<usize> = (0..inc.len()).collect();
    let rows = map_all(&idx, |&i| {
        let mut out = Vec::new();
        for j in i + 1..inc.len() {
            let common = inc[i].and(&inc[j]);
            if common.count() < min_common {
                continue;
            }
            let blocked = (0..inc.len()).any(|k| k != i && k != j && common.is_subset(&inc[k]));
            if !blocked {
                out.push((i, j));
            }
        }
        out
    });
    rows.into_iter().flatten().collect()
}

impl FaceGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u},{v}) out of range");
            if u != v {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        FaceGraph { kind: None, adj: adj.into_iter().map(|s| s.into_iter().collect()).collect() }
    }

    /// Skeleton or ridge graph; vertex order follows `desc.rays` or
    /// `desc.facets`.
    pub fn build(desc: &Description, kind: GraphKind) -> Self {
        // two adjacent rays share at least dim-2 facets and vice versa
        let min_common = desc.dim().saturating_sub(2);
        let (n, edges) = match kind {
            GraphKind::Skeleton => (desc.rays.len(), combinatorial_edges(&desc.ray_facets, min_common)),
            GraphKind::Ridge => (desc.facets.len(), combinatorial_edges(&desc.facet_rays, min_common)),
        };
        let mut g = Self::new(n, edges);
        g.kind = Some(kind);
        g
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.len();
        self.adj.iter().all(|a| a.len() + 1 == n)
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        Self::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| !self.has_edge(i, j)))
    }

    /// Same graph after renaming vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        Self::new(self.len(), self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])))
    }

    fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Sizes of connected components, largest first.
    pub fn components(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut sizes = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let d = self.distances_from(s);
            let mut c = 0;
            for (v, x) in d.iter().enumerate() {
                if x.is_some() {
                    seen[v] = true;
                    c += 1;
                }
            }
            sizes.push(c);
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    pub fn eccentricity(&self, s: usize) -> Result<usize> {
        let d = self.distances_from(s);
        if d.iter().any(Option::is_none) {
            return Err(Error::Disconnected(self.components()));
        }
        Ok(d.into_iter().map(Option::unwrap).max().unwrap_or(0))
    }

    pub fn diameter(&self) -> Result<usize> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.diameter_from(&all)
    }

    /// Diameter from BFS out of `sources` only. Exact when every vertex is
    /// the image of a source under an automorphism, e.g. one representative
    /// per symmetry orbit.
    pub fn diameter_from(&self, sources: &[usize]) -> Result<usize> {
        if self.is_empty() {
            return Ok(0);
        }
        let ecc = map_all(sources, |&s| self.eccentricity(s));
        let mut best = 0;
        for e in ecc {
            best = best.max(e?);
        }
        Ok(best)
    }

    /// Unit-capacity max flow between `s` and `t`, stopped once `cap`
    /// edge-disjoint paths are found.
    fn local_edge_connectivity(&self, s: usize, t: usize, cap: usize) -> usize {
        let n = self.len();
        // flow[u][k] on the arc u -> adj[u][k], in {-1, 0, 1}
        let mut flow: Vec<Vec<i8>> = self.adj.iter().map(|a| vec![0; a.len()]).collect();
        let pos = |u: usize, v: usize| self.adj[u].binary_search(&v).unwrap();
        let mut value = 0;
        while value < cap {
            let mut prev: Vec<Option<usize>> = vec![None; n];
            prev[s] = Some(s);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for (k, &v) in self.adj[u].iter().enumerate() {
                    if prev[v].is_none() && flow[u][k] < 1 {
                        prev[v] = Some(u);
                        queue.push_back(v);
                    }
                }
            }
            if prev[t].is_none() {
                break;
            }
            let mut v = t;
            while v != s {
                let u = prev[v].unwrap();
                let (a, b) = (pos(u, v), pos(v, u));
                flow[u][a] += 1;
                flow[v][b] -= 1;
                v = u;
            }
            value += 1;
        }
        value
    }

    /// Minimum number of edges whose removal disconnects the graph: the
    /// minimum over `t` of the max flow from vertex 0 to `t`.
    pub fn edge_connectivity(&self) -> Result<usize> {
        let comps = self.components();
        if comps.len() > 1 {
            return Err(Error::Disconnected(comps));
        }
        if self.len() < 2 {
            return Ok(0);
        }
        let cap = self.min_degree();
        let targets: Vec<usize> = (1..self.len()).collect();
        let flows = map_all(&targets, |&t| self.local_edge_connectivity(0, t, cap));
        Ok(flows.into_iter().min().unwrap_or(cap))
    }

    /// Minimal degree and edge connectivity. With diameter at most 2 the
    /// two coincide, which is checked.
    pub fn min_degree_and_edge_connectivity(&self) -> Result<(usize, usize)> {
        let lambda = self.edge_connectivity()?;
        let delta = self.min_degree();
        if self.diameter()? <= 2 && lambda != delta {
            return Err(Error::Inconsistent(format!(
                "diameter <= 2 but edge connectivity {lambda} differs from minimal degree {delta}"
            )));
        }
        Ok((delta, lambda))
    }

    /// "u v" per line, 0-based, sorted.
    pub fn edge_list(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    pub fn summary(&self, connectivity: bool) -> Result<GraphSummary> {
        let diameter = self.diameter()?;
        Ok(GraphSummary {
            vertices: self.len(),
            edges: self.edge_count(),
            diameter,
            min_degree: self.min_degree(),
            edge_connectivity: if connectivity { Some(self.edge_connectivity()?) } else { None },
        })
    }
}

/// JSON export of a graph's invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub diameter: usize,
    pub min_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_connectivity: Option<usize>,
}

// --------------------------------------------------------------- products

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Product {
    Tensor,
    Cartesian,
    Strong,
    /// Disjoint union plus all edges between the two parts.
    Join,
}

impl Product {
    pub const ALL: [Product; 4] = [Product::Tensor, Product::Cartesian, Product::Strong, Product::Join];

    pub fn name(self) -> &'static str {
        match self {
            Product::Tensor => "tensor",
            Product::Cartesian => "cartesian",
            Product::Strong => "strong",
            Product::Join => "join",
        }
    }
}

/// Product graph. For the three grid products vertex `(a, b)` is
/// `a * |h| + b`; for the join, `g` comes first.
pub fn product(g: &FaceGraph, h: &FaceGraph, kind: Product) -> FaceGraph {
    let (n, m) = (g.len(), h.len());
    if kind == Product::Join {
        let mut edges = g.edges();
        edges.extend(h.edges().into_iter().map(|(u, v)| (u + n, v + n)));
        edges.extend((0..n).flat_map(|u| (0..m).map(move |v| (u, v + n))));
        return FaceGraph::new(n + m, edges);
    }
    let id = |a: usize, b: usize| a * m + b;
    let mut edges = Vec::new();
    for a1 in 0..n {
        for b1 in 0..m {
            for a2 in 0..n {
                for b2 in 0..m {
                    if id(a1, b1) >= id(a2, b2) {
                        continue;
                    }
                    let ga = g.has_edge(a1, a2);
                    let hb = h.has_edge(b1, b2);
                    let (ea, eb) = (a1 == a2, b1 == b2);
                    let edge = match kind {
                        Product::Tensor => ga && hb,
                        Product::Cartesian => (ea && hb) || (ga && eb),
                        Product::Strong => (ea && hb) || (ga && eb) || (ga && hb),
                        Product::Join => unreachable!(),
                    };
                    if edge {
                        edges.push((id(a1, b1), id(a2, b2)));
                    }
                }
            }
        }
    }
    FaceGraph::new(n * m, edges)
}

// --------------------------------------------------------------- patterns

/// Structural claims checked by [`check_pattern`].
pub enum Pattern<'a> {
    Complete,
    /// The complement is a star `K_{1,s}` plus `s` disjoint edges.
    ComplementStarPlusMatching,
    /// `rule(u, v)` is true exactly for the expected non-adjacent pairs.
    NonAdjacency(&'a dyn Fn(usize, usize) -> bool),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternCheck {
    pub holds: bool,
    /// A pair where the graph and the pattern disagree.
    pub witness: Option<(usize, usize)>,
    pub note: String,
}

impl PatternCheck {
    fn ok() -> Self {
        PatternCheck { holds: true, witness: None, note: String::new() }
    }

    fn fail(pair: Option<(usize, usize)>, note: impl Into<String>) -> Self {
        PatternCheck { holds: false, witness: pair, note: note.into() }
    }
}

pub fn check_pattern(g: &FaceGraph, pattern: &Pattern) -> PatternCheck {
    let n = g.len();
    match pattern {
        Pattern::Complete => {
            for i in 0..n {
                for j in i + 1..n {
                    if !g.has_edge(i, j) {
                        return PatternCheck::fail(Some((i, j)), "non-adjacent pair");
                    }
                }
            }
            PatternCheck::ok()
        }
        Pattern::ComplementStarPlusMatching => {
            let c = g.complement();
            if n % 3 != 1 {
                return PatternCheck::fail(None, format!("{n} vertices is not 1 + 3s"));
            }
            let s = (n - 1) / 3;
            let centers: Vec<usize> = (0..n).filter(|&v| c.degree(v) != 1).collect();
            if s == 1 {
                // K_{1,1} + K_2 is just two disjoint edges
                return if c.edge_count() == 2 && c.max_degree() == 1 && c.min_degree() == 1 {
                    PatternCheck::ok()
                } else {
                    PatternCheck::fail(c.edges().first().copied(), "complement is not 2K_2")
                };
            }
            match centers.as_slice() {
                [v] if c.degree(*v) == s => {
                    // every other vertex has complement degree one, so the
                    // remaining edges already form a matching
                    PatternCheck::ok()
                }
                _ => {
                    let hub = centers.iter().copied().find(|&v| c.degree(v) == s);
                    let bad = centers.iter().copied().find(|&v| Some(v) != hub).or(hub).unwrap_or(0);
                    // an extra complement edge, or an edge of g that should be missing
                    let other = c.neighbors(bad).first().copied().unwrap_or(if bad == 0 { 1 } else { 0 });
                    let witness = Some((bad.min(other), bad.max(other)));
                    PatternCheck::fail(witness, format!("complement degrees at {centers:?} do not fit"))
                }
            }
        }
        Pattern::NonAdjacency(rule) => {
            for i in 0..n {
                for j in i + 1..n {
                    let expect_non = rule(i, j);
                    if expect_non == g.has_edge(i, j) {
                        let what = if expect_non { "rule forbids an existing edge" } else { "missing edge not covered by rule" };
                        return PatternCheck::fail(Some((i, j)), what);
                    }
                }
            }
            PatternCheck::ok()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> FaceGraph {
        FaceGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Edge connectivity by removing every subset of edges (tiny graphs).
    fn brute_connectivity(g: &FaceGraph) -> usize {
        let e = g.edges();
        let mut best = e.len();
        for mask in 0u32..(1 << e.len()) {
            let kept = e.iter().enumerate().filter(|(k, _)| mask & (1 << k) == 0).map(|(_, &p)| p);
            let h = FaceGraph::new(g.len(), kept);
            if h.components().len() > 1 {
                best = best.min(mask.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn basic_invariants() {
        let c = cycle(7);
        assert_eq!(c.diameter().unwrap(), 3);
        assert_eq!(c.edge_connectivity().unwrap(), 2);
        let k = FaceGraph::complete(15);
        assert_eq!(k.min_degree_and_edge_connectivity().unwrap(), (14, 14));
        assert!(check_pattern(&k, &Pattern::Complete).holds);
        let split = FaceGraph::new(4, [(0, 1), (2, 3)]);
        assert!(matches!(split.diameter(), Err(Error::Disconnected(ref s)) if s == &vec![2, 2]));
    }

    #[test]
    fn connectivity_matches_brute_force() {
        // two triangles joined by a bridge, a prism, a bowtie
        let graphs = [
            FaceGraph::new(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]),
            FaceGraph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]),
            FaceGraph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]),
        ];
        for g in &graphs {
            assert_eq!(g.edge_connectivity().unwrap(), brute_connectivity(g));
        }
    }

    #[test]
    fn products() {
        let k2 = FaceGraph::complete(2);
        let k3 = FaceGraph::complete(3);
        assert_eq!(product(&k2, &k3, Product::Tensor).edge_count(), 6);
        assert_eq!(product(&k2, &k3, Product::Cartesian).edge_count(), 9);
        assert!(product(&k2, &k3, Product::Strong).is_complete());
        assert!(product(&k2, &k3, Product::Join).is_complete());
        let j = product(&k2, &FaceGraph::new(2, []), Product::Join);
        assert_eq!(j.edge_count(), 5);
    }

    #[test]
    fn star_plus_matching() {
        // complement of K_{1,2} + 2K_2 on 7 vertices
        let c = FaceGraph::new(7, [(0, 1), (0, 2), (3, 4), (5, 6)]);
        assert!(check_pattern(&c.complement(), &Pattern::ComplementStarPlusMatching).holds);
        let c = FaceGraph::new(7, [(0, 1), (0, 2), (3, 4), (4, 5)]);
        let r = check_pattern(&c.complement(), &Pattern::ComplementStarPlusMatching);
        assert!(!r.holds);
        assert!(r.witness.is_some());
    }

    #[test]
    fn nonadjacency_rule() {
        let c = cycle(5);
        let rule = |i: usize, j: usize| (j - i) % 5 == 2 || (j - i) % 5 == 3;
        assert!(check_pattern(&c, &Pattern::NonAdjacency(&rule)).holds);
        let wrong = |_: usize, _: usize| false;
        let r = check_pattern(&c, &Pattern::NonAdjacency(&wrong));
        assert_eq!(r.witness, Some((0, 2)));
    }
}
