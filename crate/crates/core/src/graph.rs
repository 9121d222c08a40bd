//! Immutable simple graphs with bitset adjacency.
//!
//! Graphs are values: derived graphs (induced subgraphs) are new values with
//! explicit index maps so witnesses can be translated back to the original
//! indices. Vertex order in every returned set is ascending.

use crate::bitset::VertexSet;
use crate::error::Error;

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: (0..n).map(|_| VertexSet::new(n)).collect(),
        }
    }

    /// Build from an edge list. Self-loops are usage errors; duplicate edges
    /// collapse (adjacency is a relation, not a multiset).
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, Error> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        Ok(g)
    }

    /// Insert an edge already known to be in range and loop-free.
    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    fn add_edge_checked(&mut self, u: usize, v: usize) -> Result<(), Error> {
        if u >= self.n || v >= self.n {
            return Err(Error::usage(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::usage(format!("self-loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Adjacency row of `v` as a borrowed set.
    #[inline]
    pub fn adj(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// Set of neighbours of `v`; never contains `v` itself.
    pub fn neighbors(&self, v: usize) -> Result<VertexSet, Error> {
        if v >= self.n {
            return Err(Error::usage(format!("vertex {v} out of range 0..{}", self.n)));
        }
        Ok(self.adj[v].clone())
    }

    /// BFS distances from `v`; `None` for unreachable vertices.
    pub fn distances(&self, v: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n];
        dist[v] = Some(0);
        let mut frontier = vec![v];
        let mut d = 0u32;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &x in &frontier {
                for w in self.adj[x].iter() {
                    if dist[w].is_none() {
                        dist[w] = Some(d);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Vertices at distance exactly `r` from `v` (the set `N^r(v)`).
    pub fn nth_neighborhood(&self, v: usize, r: u32) -> Result<VertexSet, Error> {
        if v >= self.n {
            return Err(Error::usage(format!("vertex {v} out of range 0..{}", self.n)));
        }
        if r == 0 {
            return Err(Error::usage("nth_neighborhood requires r >= 1"));
        }
        let dist = self.distances(v);
        Ok(VertexSet::from_iter(
            self.n,
            (0..self.n).filter(|&w| dist[w] == Some(r)),
        ))
    }

    /// Minimum distance from `v` to any member of `s`; `None` when unreachable.
    pub fn distance_to_set(&self, v: usize, s: &VertexSet) -> Result<Option<u32>, Error> {
        if v >= self.n {
            return Err(Error::usage(format!("vertex {v} out of range 0..{}", self.n)));
        }
        if s.is_empty() {
            return Err(Error::usage("distance_to_set requires a nonempty target set"));
        }
        let dist = self.distances(v);
        Ok(s.iter().filter_map(|w| dist[w]).min())
    }

    /// Induced subgraph on `s`, plus the map from new indices to old ones.
    /// New index order follows ascending old index.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.iter().collect();
        let mut inv = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            inv[old] = new;
        }
        let mut g = Graph::empty(map.len());
        for (new, &old) in map.iter().enumerate() {
            for w in self.adj[old].iter() {
                if w > old && s.contains(w) {
                    g.adj[new].insert(inv[w]);
                    g.adj[inv[w]].insert(new);
                }
            }
        }
        (g, map)
    }

    /// Partition of `s` into the connected components of `G[s]`, ordered by
    /// smallest member.
    pub fn connected_components(&self, s: &VertexSet) -> Vec<VertexSet> {
        let mut remaining = s.clone();
        let mut out = Vec::new();
        while let Some(start) = remaining.first_vertex() {
            let mut comp = VertexSet::new(self.n);
            comp.insert(start);
            remaining.remove(start);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for w in self.adj[x].intersection(&remaining).iter() {
                    comp.insert(w);
                    remaining.remove(w);
                    stack.push(w);
                }
            }
            out.push(comp);
        }
        out
    }

    /// Whether `G[s]` is connected. The empty set counts as not connected.
    pub fn is_connected_subset(&self, s: &VertexSet) -> bool {
        match s.first_vertex() {
            None => false,
            Some(start) => {
                let mut seen = VertexSet::new(self.n);
                seen.insert(start);
                let mut stack = vec![start];
                let mut count = 1;
                while let Some(x) = stack.pop() {
                    for w in self.adj[x].iter() {
                        if s.contains(w) && !seen.contains(w) {
                            seen.insert(w);
                            count += 1;
                            stack.push(w);
                        }
                    }
                }
                count == s.len()
            }
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.is_connected_subset(&VertexSet::full(self.n))
    }

    /// 2-colouring test by BFS.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![-1i8; self.n];
        for s in 0..self.n {
            if color[s] >= 0 {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for w in self.adj[x].iter() {
                    if color[w] < 0 {
                        color[w] = 1 - color[x];
                        stack.push(w);
                    } else if color[w] == color[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether the vertex sequence `path` is an induced path of the graph.
    pub fn is_induced_path(&self, path: &[usize]) -> bool {
        if path.is_empty() || path.iter().any(|&v| v >= self.n) {
            return false;
        }
        let distinct: VertexSet = VertexSet::from_iter(self.n, path.iter().copied());
        if distinct.len() != path.len() {
            return false;
        }
        for i in 0..path.len() {
            for j in i + 1..path.len() {
                let adjacent = self.has_edge(path[i], path[j]);
                if (j == i + 1) != adjacent {
                    return false;
                }
            }
        }
        true
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.edge_count(), self.edges())
    }
}

/// Serializes as `{ "n": ..., "edges": [[u, v], ...] }`.
impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Graph", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("edges", &self.edges())?;
        s.end()
    }
}

/// Backtracking isomorphism test. Exponential in the worst case; intended for
/// the small graphs this toolkit works with.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.vertex_count();
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(a: &Graph, b: &Graph, i: usize, image: &mut [usize], used: &mut [bool]) -> bool {
        let n = a.vertex_count();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || a.degree(i) != b.degree(cand) {
                continue;
            }
            let consistent = (0..i).all(|j| a.has_edge(i, j) == b.has_edge(cand, image[j]));
            if consistent {
                image[i] = cand;
                used[cand] = true;
                if extend(a, b, i + 1, image, used) {
                    return true;
                }
                used[cand] = false;
                image[i] = usize::MAX;
            }
        }
        false
    }

    extend(a, b, 0, &mut image, &mut used)
}

/// All automorphisms of `g`, as permutation vectors. Intended for small graphs.
pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(g: &Graph, i: usize, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = g.vertex_count();
        if i == n {
            out.push(perm.clone());
            return;
        }
        for cand in 0..n {
            if used[cand] || g.degree(i) != g.degree(cand) {
                continue;
            }
            let consistent = (0..i).all(|j| g.has_edge(i, j) == g.has_edge(cand, perm[j]));
            if consistent {
                perm[i] = cand;
                used[cand] = true;
                extend(g, i + 1, perm, used, out);
                used[cand] = false;
                perm[i] = usize::MAX;
            }
        }
    }

    extend(g, 0, &mut perm, &mut used, &mut out);
    out
}
