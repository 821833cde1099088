//! Multigraph data model: deletion, contraction, edge classification, and the
//! structural predicates every other module consumes.
//!
//! Vertices carry string names; edges are stable 1-based ids `1..=n` fixing
//! the variable order `t_1..t_n`. Parallel edges and loops are allowed.
//! Values are immutable after construction; every operation returns a new
//! graph. Only internal edge structure is modeled: every invariant computed
//! downstream depends on internal edges alone, so external half-edges carry
//! no data here.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge guard for the exponential-time algorithms (canonical labeling,
/// Kirchhoff enumeration, Tutte recursion).
pub const MAX_GUARDED_EDGES: usize = 16;

/// Backtracking nodes allowed while canonically labeling one graph.
const KEY_VISIT_CAP: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    Bridge,
    Loop,
    Regular,
}

/// Connectivity data: b0 components, first Betti number b1 = #E - #V + b0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub b0: usize,
    pub b1: usize,
}

impl GraphStats {
    /// The loop number l = deg Psi, an alias of b1.
    pub fn loop_number(&self) -> usize {
        self.b1
    }
}

/// Map from old edge ids to new ids after a deletion or contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRenumbering {
    map: Vec<Option<usize>>,
}

impl EdgeRenumbering {
    fn removing(n: usize, removed: usize) -> Self {
        let map = (1..=n)
            .map(|old| {
                if old == removed {
                    None
                } else if old > removed {
                    Some(old - 1)
                } else {
                    Some(old)
                }
            })
            .collect();
        EdgeRenumbering { map }
    }

    /// New id of an old edge id, if it survived.
    pub fn new_id(&self, old: usize) -> Option<usize> {
        self.map.get(old - 1).copied().flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl MultiGraph {
    pub fn new() -> Self {
        MultiGraph { vertices: Vec::new(), edges: Vec::new() }
    }

    /// Build from named endpoint pairs; vertices appear in first-use order.
    pub fn from_named_edges(pairs: &[(&str, &str)]) -> Self {
        let mut g = MultiGraph::new();
        for &(u, v) in pairs {
            let ui = g.vertex_index_or_insert(u);
            let vi = g.vertex_index_or_insert(v);
            g.edges.push((ui, vi));
        }
        g
    }

    pub fn add_vertex(&mut self, name: &str) -> usize {
        self.vertex_index_or_insert(name)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        assert!(u < self.vertices.len() && v < self.vertices.len());
        self.edges.push((u, v));
        self.edges.len()
    }

    fn vertex_index_or_insert(&mut self, name: &str) -> usize {
        if let Some(i) = self.vertices.iter().position(|n| n == name) {
            i
        } else {
            self.vertices.push(name.to_string());
            self.vertices.len() - 1
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    /// Endpoint vertex indices of a 1-based edge id.
    pub fn endpoints(&self, e: usize) -> Result<(usize, usize)> {
        self.check_edge(e)?;
        Ok(self.edges[e - 1])
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = usize> {
        1..=self.edges.len()
    }

    fn check_edge(&self, e: usize) -> Result<()> {
        if e == 0 || e > self.edges.len() {
            return Err(Error::UnknownEdge(e));
        }
        Ok(())
    }

    /// Same vertex set, edge removed; remaining ids close up preserving order.
    pub fn delete(&self, e: usize) -> Result<(MultiGraph, EdgeRenumbering)> {
        self.check_edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e - 1);
        Ok((
            MultiGraph { vertices: self.vertices.clone(), edges },
            EdgeRenumbering::removing(self.edges.len(), e),
        ))
    }

    /// Merge the endpoints of `e` and remove it. Contracting a loop is
    /// deletion: the two conventions agree on every invariant in scope.
    pub fn contract(&self, e: usize) -> Result<(MultiGraph, EdgeRenumbering)> {
        self.check_edge(e)?;
        let (u, v) = self.edges[e - 1];
        if u == v {
            return self.delete(e);
        }
        let keep = u.min(v);
        let gone = u.max(v);
        let remap = |i: usize| {
            if i == gone {
                keep
            } else if i > gone {
                i - 1
            } else {
                i
            }
        };
        let mut vertices = self.vertices.clone();
        vertices.remove(gone);
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e - 1)
            .map(|(_, &(a, b))| (remap(a), remap(b)))
            .collect();
        Ok((MultiGraph { vertices, edges }, EdgeRenumbering::removing(self.edges.len(), e)))
    }

    /// Replace `e` by `m` parallel copies with the same endpoints; the copies
    /// take consecutive ids at the old position.
    pub fn multiply_edge(&self, e: usize, m: usize) -> Result<MultiGraph> {
        self.check_edge(e)?;
        let (u, v) = self.edges[e - 1];
        let mut edges = Vec::with_capacity(self.edges.len() + m - 1);
        edges.extend_from_slice(&self.edges[..e - 1]);
        edges.extend(std::iter::repeat_n((u, v), m));
        edges.extend_from_slice(&self.edges[e..]);
        Ok(MultiGraph { vertices: self.vertices.clone(), edges })
    }

    pub fn classify_edge(&self, e: usize) -> Result<EdgeKind> {
        self.check_edge(e)?;
        let (u, v) = self.edges[e - 1];
        if u == v {
            return Ok(EdgeKind::Loop);
        }
        let before = self.stats().b0;
        let after = self.b0_without_edge(e);
        Ok(if after > before { EdgeKind::Bridge } else { EdgeKind::Regular })
    }

    pub fn stats(&self) -> GraphStats {
        let b0 = self.b0_without_edge(0);
        GraphStats { b0, b1: self.edges.len() + b0 - self.vertices.len() }
    }

    fn b0_without_edge(&self, skip: usize) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if i + 1 != skip {
                uf.union(u, v);
            }
        }
        uf.component_count()
    }

    pub fn is_forest(&self) -> bool {
        self.stats().b1 == 0
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.stats().b0 == 1
    }

    /// Connected and bridgeless.
    pub fn is_1pi(&self) -> bool {
        self.is_connected()
            && self.edge_ids().all(|e| self.classify_edge(e).unwrap() != EdgeKind::Bridge)
    }

    /// Vertex partition into connected components (isolated vertices are
    /// their own components).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.vertices.len() {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// Subgraph on an edge subset with its incident vertices. Returns the map
    /// from old edge ids to new ones.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> Result<(MultiGraph, Vec<usize>)> {
        let mut vmap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut g = MultiGraph::new();
        let mut order: Vec<usize> = edge_ids.to_vec();
        order.sort_unstable();
        for &e in &order {
            self.check_edge(e)?;
            let (u, v) = self.edges[e - 1];
            for w in [u, v] {
                vmap.entry(w).or_insert_with(|| {
                    
                    g.add_vertex(&self.vertices[w])
                });
            }
            g.edges.push((vmap[&u], vmap[&v]));
        }
        Ok((g, order))
    }

    /// Contract every edge of the subset (shrink each of its components to a
    /// vertex); surviving parallel edges become loops.
    pub fn contract_edge_set(&self, edge_ids: &[usize]) -> Result<MultiGraph> {
        for &e in edge_ids {
            self.check_edge(e)?;
        }
        let mut uf = UnionFind::new(self.vertices.len());
        for &e in edge_ids {
            let (u, v) = self.edges[e - 1];
            uf.union(u, v);
        }
        // one representative vertex per merged class, in first-appearance order
        let mut repr: BTreeMap<usize, usize> = BTreeMap::new();
        let mut vertices = Vec::new();
        for v in 0..self.vertices.len() {
            let r = uf.find(v);
            repr.entry(r).or_insert_with(|| {
                vertices.push(self.vertices[v].clone());
                vertices.len() - 1
            });
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !edge_ids.contains(&(i + 1)))
            .map(|(_, &(u, v))| (repr[&uf.find(u)], repr[&uf.find(v)]))
            .collect();
        Ok(MultiGraph { vertices, edges })
    }

    pub fn disjoint_union(&self, other: &MultiGraph) -> MultiGraph {
        let mut vertices = self.vertices.clone();
        let offset = vertices.len();
        for (i, name) in other.vertices.iter().enumerate() {
            // keep names unique across the union
            let mut name = name.clone();
            if vertices.contains(&name) {
                name = format!("{name}'{i}");
            }
            vertices.push(name);
        }
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
        MultiGraph { vertices, edges }
    }

    /// Relabel vertices by a permutation (`perm[old]` = new position), keeping
    /// edge order. Used by tests to check isomorphism invariance.
    pub fn permute_vertices(&self, perm: &[usize]) -> MultiGraph {
        assert_eq!(perm.len(), self.vertices.len());
        let mut vertices = vec![String::new(); self.vertices.len()];
        for (old, &new) in perm.iter().enumerate() {
            vertices[new] = self.vertices[old].clone();
        }
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        MultiGraph { vertices, edges }
    }

    // ------------------------------------------------------------------
    // text / JSON formats
    // ------------------------------------------------------------------

    /// One edge per line, `u v`; lines beginning `#` are ignored.
    pub fn parse_text(input: &str) -> Result<MultiGraph> {
        let mut g = MultiGraph::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let (u, v) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected two vertex tokens",
                        lineno + 1
                    )))
                }
            };
            let ui = g.vertex_index_or_insert(u);
            let vi = g.vertex_index_or_insert(v);
            g.edges.push((ui, vi));
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", self.vertices[u], self.vertices[v]));
        }
        out
    }

    pub fn parse_json(input: &str) -> Result<MultiGraph> {
        let parsed: GraphJson =
            serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
        let mut g = MultiGraph::new();
        for name in &parsed.vertices {
            g.vertex_index_or_insert(name);
        }
        for (u, v) in &parsed.edges {
            let ui = g.vertex_index_or_insert(u);
            let vi = g.vertex_index_or_insert(v);
            g.edges.push((ui, vi));
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let data = GraphJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (self.vertices[u].clone(), self.vertices[v].clone()))
                .collect(),
        };
        serde_json::to_string(&data).expect("graph serialization cannot fail")
    }

    /// Auto-detect: JSON if the first non-space byte is `{`.
    pub fn parse(input: &str) -> Result<MultiGraph> {
        if input.trim_start().starts_with('{') {
            MultiGraph::parse_json(input)
        } else {
            MultiGraph::parse_text(input)
        }
    }

    // ------------------------------------------------------------------
    // canonical key
    // ------------------------------------------------------------------

    /// Key equal for isomorphic multigraphs: exhaustive canonical labeling
    /// with color refinement and branch-and-bound on the edge list.
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        if self.edges.len() > MAX_GUARDED_EDGES {
            return Err(Error::SizeGuard {
                what: "canonical labeling",
                limit: MAX_GUARDED_EDGES,
                actual: self.edges.len(),
            });
        }
        let nv = self.vertices.len();
        if nv == 0 {
            return Ok(CanonicalKey { vertices: 0, edges: Vec::new() });
        }
        let colors = self.refined_colors();
        // positions get class ranks in ascending order
        let mut order: Vec<usize> = (0..nv).collect();
        order.sort_by_key(|&v| colors[v]);
        let position_rank: Vec<u32> = order.iter().map(|&v| colors[v]).collect();

        // incidence lists: for each vertex, (other endpoint, is_loop)
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for &(u, v) in &self.edges {
            incident[u].push(v);
            if u != v {
                incident[v].push(u);
            }
        }

        let mut search = KeySearch {
            graph: self,
            colors: &colors,
            position_rank: &position_rank,
            assigned_pos: vec![usize::MAX; nv],
            partial: Vec::with_capacity(self.edges.len()),
            best: None,
            visits: 0,
        };
        search.run(0)?;
        Ok(CanonicalKey { vertices: nv, edges: search.best.unwrap_or_default() })
    }

    /// Stable vertex colors under iterated neighborhood refinement.
    fn refined_colors(&self) -> Vec<u32> {
        let nv = self.vertices.len();
        // initial signature: (loop count, multiset of multiplicities)
        let mut mults: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); nv];
        let mut loops = vec![0usize; nv];
        for &(u, v) in &self.edges {
            if u == v {
                loops[u] += 1;
            } else {
                *mults[u].entry(v).or_insert(0) += 1;
                *mults[v].entry(u).or_insert(0) += 1;
            }
        }
        let mut colors: Vec<u32> = {
            let sigs: Vec<(usize, Vec<usize>)> = (0..nv)
                .map(|v| {
                    let mut m: Vec<usize> = mults[v].values().cloned().collect();
                    m.sort_unstable();
                    (loops[v], m)
                })
                .collect();
            rank_signatures(&sigs)
        };
        loop {
            let sigs: Vec<(u32, Vec<(usize, u32)>)> = (0..nv)
                .map(|v| {
                    let mut nb: Vec<(usize, u32)> =
                        mults[v].iter().map(|(&u, &m)| (m, colors[u])).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let new_colors = rank_signatures(&sigs);
            if new_colors == colors {
                return colors;
            }
            colors = new_colors;
        }
    }
}

impl Default for MultiGraph {
    fn default() -> Self {
        MultiGraph::new()
    }
}

impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertices, {} edges", self.vertices.len(), self.edges.len())
    }
}

fn rank_signatures<S: Ord + Clone>(sigs: &[S]) -> Vec<u32> {
    let mut sorted: Vec<S> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(s).expect("signature present") as u32)
        .collect()
}

/// Opaque hashable key for isomorphism classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    vertices: usize,
    edges: Vec<(u16, u16)>,
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}:", self.vertices)?;
        for (a, b) in &self.edges {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

struct KeySearch<'a> {
    graph: &'a MultiGraph,
    colors: &'a [u32],
    position_rank: &'a [u32],
    /// vertex -> assigned position (usize::MAX if free)
    assigned_pos: Vec<usize>,
    partial: Vec<(u16, u16)>,
    best: Option<Vec<(u16, u16)>>,
    visits: usize,
}

impl KeySearch<'_> {
    fn run(&mut self, pos: usize) -> Result<()> {
        self.visits += 1;
        if self.visits > KEY_VISIT_CAP {
            return Err(Error::SizeGuard {
                what: "canonical labeling search",
                limit: KEY_VISIT_CAP,
                actual: self.visits,
            });
        }
        let nv = self.graph.vertices.len();
        if pos == nv {
            if self.best.as_ref().is_none_or(|b| self.partial < *b) {
                self.best = Some(self.partial.clone());
            }
            return Ok(());
        }
        let want = self.position_rank[pos];
        for v in 0..nv {
            if self.assigned_pos[v] != usize::MAX || self.colors[v] != want {
                continue;
            }
            // edges from v into the assigned prefix, encoded (min pos, this pos)
            let mut group: Vec<(u16, u16)> = Vec::new();
            for &(a, b) in &self.graph.edges {
                if a == v && b == v {
                    group.push((pos as u16, pos as u16));
                } else if a == v || b == v {
                    let other = if a == v { b } else { a };
                    let opos = self.assigned_pos[other];
                    if opos != usize::MAX {
                        group.push((opos as u16, pos as u16));
                    }
                }
            }
            group.sort_unstable();
            let before = self.partial.len();
            self.partial.extend_from_slice(&group);
            let prune = match &self.best {
                Some(best) => self.partial.as_slice() > &best[..self.partial.len()],
                None => false,
            };
            if !prune {
                self.assigned_pos[v] = pos;
                self.run(pos + 1)?;
                self.assigned_pos[v] = usize::MAX;
            }
            self.partial.truncate(before);
        }
        Ok(())
    }
}

/// Path-compressed union-find over vertex indices.
#[derive(Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub fn component_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&v| self.find(v) == v).count()
    }
}
