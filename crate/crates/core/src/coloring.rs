//! Exact chromatic numbers at desk scale.
//!
//! The solver is branch-and-bound over vertices in DSATUR order, pruned by the
//! incumbent and a greedy clique lower bound. Branching is deterministic
//! (lowest index tie-break) so witnesses are reproducible. The vertex limit is
//! configuration, not a constant; callers that need to dial cost use the
//! `_limited` variants.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::Error;
use crate::graph::Graph;

/// Default exact-solve vertex limit.
pub const DEFAULT_EXACT_LIMIT: usize = 24;

/// A proper colouring: total assignment of colours `0..colour_count`, every
/// colour class nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub assignment: Vec<u32>,
    pub colour_count: u32,
}

impl Coloring {
    /// Colour classes in colour order, vertices ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.colour_count as usize];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c as usize].push(v);
        }
        out
    }
}

/// Check the [`Coloring`] invariants against `g`.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> bool {
    if c.assignment.len() != g.vertex_count() {
        return false;
    }
    if c.assignment.iter().any(|&col| col >= c.colour_count) {
        return false;
    }
    let mut used = vec![false; c.colour_count as usize];
    for &col in &c.assignment {
        used[col as usize] = true;
    }
    if !used.iter().all(|&u| u) {
        return false;
    }
    g.edges().iter().all(|&(u, v)| c.assignment[u] != c.assignment[v])
}

/// Greedy clique, largest-degree-first, lowest index tie-break. Its size is a
/// lower bound for the chromatic number.
fn greedy_clique(g: &Graph) -> VertexSet {
    let n = g.vertex_count();
    let mut clique = VertexSet::new(n);
    let mut candidates = VertexSet::full(n);
    while !candidates.is_empty() {
        let pick = candidates
            .iter()
            .max_by_key(|&v| (g.adj(v).intersection_len(&candidates), std::cmp::Reverse(v)))
            .expect("nonempty");
        clique.insert(pick);
        candidates.intersect_with(g.adj(pick));
    }
    clique
}

struct Solver<'a> {
    g: &'a Graph,
    best: u32,
    best_assignment: Vec<u32>,
    lower: u32,
    assignment: Vec<Option<u32>>,
}

impl Solver<'_> {
    /// DSATUR choice: most distinctly-coloured neighbours, then highest
    /// degree, then lowest index.
    fn pick_vertex(&self) -> Option<usize> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..self.g.vertex_count() {
            if self.assignment[v].is_some() {
                continue;
            }
            let mut seen = 0u64;
            for w in self.g.adj(v).iter() {
                if let Some(c) = self.assignment[w] {
                    seen |= 1 << (c % 64);
                }
            }
            let key = (seen.count_ones() as usize, self.g.degree(v));
            if best.is_none_or(|(bs, bd, _)| key > (bs, bd)) {
                best = Some((key.0, key.1, v));
            }
        }
        best.map(|(_, _, v)| v)
    }

    fn solve(&mut self, colored: usize, used: u32) {
        if used >= self.best {
            return;
        }
        if colored == self.g.vertex_count() {
            self.best = used;
            self.best_assignment = self.assignment.iter().map(|c| c.unwrap()).collect();
            return;
        }
        let v = match self.pick_vertex() {
            Some(v) => v,
            None => return,
        };
        let mut forbidden = 0u64;
        for w in self.g.adj(v).iter() {
            if let Some(c) = self.assignment[w] {
                forbidden |= 1 << c.min(63);
            }
        }
        let try_up_to = (used + 1).min(self.best - 1);
        for c in 0..try_up_to {
            if c < 64 && forbidden >> c & 1 == 1 {
                continue;
            }
            self.assignment[v] = Some(c);
            let new_used = used.max(c + 1);
            if new_used.max(self.lower) < self.best {
                self.solve(colored + 1, new_used);
            }
            self.assignment[v] = None;
        }
    }
}

fn solve_exact(g: &Graph) -> (u32, Coloring) {
    let n = g.vertex_count();
    if n == 0 {
        return (
            0,
            Coloring {
                assignment: Vec::new(),
                colour_count: 0,
            },
        );
    }
    let lower = greedy_clique(g).len() as u32;
    // DSATUR greedy gives the initial incumbent and witness.
    let mut solver = Solver {
        g,
        best: u32::MAX,
        best_assignment: Vec::new(),
        lower,
        assignment: vec![None; n],
    };
    let mut greedy = vec![None; n];
    let mut greedy_used = 0u32;
    for _ in 0..n {
        solver.assignment = greedy.clone();
        let v = solver.pick_vertex().expect("uncoloured vertex remains");
        let mut c = 0u32;
        'find: loop {
            for w in g.adj(v).iter() {
                if greedy[w] == Some(c) {
                    c += 1;
                    continue 'find;
                }
            }
            break;
        }
        greedy[v] = Some(c);
        greedy_used = greedy_used.max(c + 1);
    }
    solver.best = greedy_used;
    solver.best_assignment = greedy.iter().map(|c| c.unwrap()).collect();
    solver.assignment = vec![None; n];
    if greedy_used > lower {
        solver.solve(0, 0);
    }
    let chi = solver.best;
    (
        chi,
        Coloring {
            assignment: solver.best_assignment,
            colour_count: chi,
        },
    )
}

pub fn chromatic_number_limited(g: &Graph, limit: usize) -> Result<(u32, Coloring), Error> {
    if g.vertex_count() > limit {
        return Err(Error::capability(format!(
            "exact colouring limited to {limit} vertices, got {}",
            g.vertex_count()
        )));
    }
    Ok(solve_exact(g))
}

/// Exact chromatic number with a witness colouring.
pub fn chromatic_number(g: &Graph) -> Result<(u32, Coloring), Error> {
    chromatic_number_limited(g, DEFAULT_EXACT_LIMIT)
}

pub fn chi_of_subset_limited(g: &Graph, s: &VertexSet, limit: usize) -> Result<u32, Error> {
    let (sub, _) = g.induced_subgraph(s);
    Ok(chromatic_number_limited(&sub, limit)?.0)
}

/// `χ(G[s])`.
pub fn chi_of_subset(g: &Graph, s: &VertexSet) -> Result<u32, Error> {
    chi_of_subset_limited(g, s, DEFAULT_EXACT_LIMIT)
}

/// The neighbourhood parameters κ₂ and κ₃: maxima over all vertices of the
/// chromatic numbers of the distance-2 and distance-3 neighbourhoods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborhoodChiProfile {
    pub kappa2: u32,
    pub kappa3: u32,
}

/// Max over vertices of `χ(N^r(v))`.
pub fn max_neighborhood_chi(g: &Graph, r: u32) -> Result<u32, Error> {
    let mut best = 0;
    for v in g.vertices() {
        let ball = g.nth_neighborhood(v, r)?;
        best = best.max(chi_of_subset(g, &ball)?);
    }
    Ok(best)
}

pub fn neighborhood_chi_profile(g: &Graph) -> Result<NeighborhoodChiProfile, Error> {
    Ok(NeighborhoodChiProfile {
        kappa2: max_neighborhood_chi(g, 2)?,
        kappa3: max_neighborhood_chi(g, 3)?,
    })
}

/// Reference oracle: smallest k admitting a proper colouring, found by
/// exhaustive assignment search in plain vertex order with no ordering
/// heuristics, clique bounds or incumbent pruning. Deliberately independent
/// of the DSATUR solver.
pub fn brute_force_chromatic(g: &Graph) -> Result<u32, Error> {
    let n = g.vertex_count();
    if n > 9 {
        return Err(Error::capability(format!(
            "brute-force colouring limited to 9 vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    fn colorable(g: &Graph, k: u32, assignment: &mut Vec<u32>, v: usize) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        for c in 0..k {
            if (0..v).all(|u| !g.has_edge(u, v) || assignment[u] != c) {
                assignment[v] = c;
                if colorable(g, k, assignment, v + 1) {
                    return true;
                }
            }
        }
        false
    }
    let mut assignment = vec![0u32; n];
    for k in 1..=n as u32 {
        if colorable(g, k, &mut assignment, 0) {
            return Ok(k);
        }
    }
    unreachable!("every graph on n vertices is n-colourable")
}
