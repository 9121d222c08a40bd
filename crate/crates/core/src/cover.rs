//! Coverings of small pentagonal graphs: cover contexts with dependents,
//! gap analysis, the three-vertex cover structure over a base 5-hole, the
//! distance-2 chromatic bound for 2-coverable graphs, and an exhaustive
//! bounded search for 1-coverings.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::coloring;
use crate::error::Error;
use crate::graph::{automorphisms, Graph};
use crate::holes::{self, InducedCycle};
use crate::levelling::{validate_levelling, Levelling, StableLevelling};

/// A stable levelling over an embedded target graph `H`, with the neighbour
/// map `H(v)` for every cover vertex `v` in the level below the base.
///
/// Invariants checked at construction: every vertex of `H` has a neighbour in
/// `L_{k-1}` (covering), and every cover vertex has a dependent, a vertex of
/// its `H(v)` with no other neighbour in `L_{k-1}` (minimality).
#[derive(Clone, Debug, Serialize)]
pub struct CoverContext {
    pub levelling: StableLevelling,
    pub h_vertices: VertexSet,
    pub h_map: BTreeMap<usize, VertexSet>,
}

impl CoverContext {
    pub fn new(g: &Graph, levelling: StableLevelling, h_vertices: VertexSet) -> Result<Self, Error> {
        let k = levelling.depth();
        if k < 1 {
            return Err(Error::usage("cover context needs at least two levels"));
        }
        if !h_vertices.is_subset_of(levelling.base()) {
            return Err(Error::usage("target vertices must sit inside the base"));
        }
        if h_vertices.is_empty() {
            return Err(Error::usage("target graph must be nonempty"));
        }
        let cover = &levelling.levels()[k - 1];
        let mut h_map = BTreeMap::new();
        for v in cover.iter() {
            h_map.insert(v, g.adj(v).intersection(&h_vertices));
        }
        for u in h_vertices.iter() {
            if g.adj(u).intersection_len(cover) == 0 {
                return Err(Error::usage(format!(
                    "covering condition fails: target vertex {u} has no cover neighbour"
                )));
            }
        }
        for v in cover.iter() {
            let dependent = h_map[&v]
                .iter()
                .any(|u| g.adj(u).intersection_len(cover) == 1);
            if !dependent {
                return Err(Error::usage(format!(
                    "minimality fails: cover vertex {v} has no dependent"
                )));
            }
        }
        Ok(CoverContext {
            levelling,
            h_vertices,
            h_map,
        })
    }

    pub fn cover_level(&self) -> &VertexSet {
        let k = self.levelling.depth();
        &self.levelling.levels()[k - 1]
    }
}

/// An induced path in the base from `H(u)` to `H(v)` avoiding all their other
/// vertices: the interior of an induced `u`-`v` path. A shared cover
/// neighbour is a length-0, single-vertex gap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gap {
    pub u: usize,
    pub v: usize,
    pub path: Vec<usize>,
}

/// All `u`-`v` gaps of exactly the given length within the base.
pub fn find_gaps(g: &Graph, ctx: &CoverContext, u: usize, v: usize, length: usize) -> Result<Vec<Gap>, Error> {
    let cover = ctx.cover_level();
    if !cover.contains(u) || !cover.contains(v) {
        return Err(Error::usage("gap endpoints must be cover vertices"));
    }
    if u == v {
        return Err(Error::usage("gap endpoints must be distinct"));
    }
    let hu = &ctx.h_map[&u];
    let hv = &ctx.h_map[&v];
    let base = ctx.levelling.base();
    let mut out = Vec::new();
    if length == 0 {
        for x in hu.intersection(hv).iter() {
            out.push(Gap { u, v, path: vec![x] });
        }
        return Ok(out);
    }
    // DFS over induced paths anchored at the H(u)-side end.
    let forbidden_interior = hu.union(hv);
    let starts = hu.difference(hv);
    let ends = hv.difference(hu);
    for x0 in starts.iter() {
        let mut path = vec![x0];
        extend_gap(g, base, &forbidden_interior, &ends, length, &mut path, &mut |p| {
            out.push(Gap { u, v, path: p.to_vec() })
        });
    }
    Ok(out)
}

fn extend_gap(
    g: &Graph,
    base: &VertexSet,
    forbidden_interior: &VertexSet,
    ends: &VertexSet,
    length: usize,
    path: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    let last = *path.last().expect("path nonempty");
    if path.len() == length + 1 {
        if ends.contains(last) {
            emit(path);
        }
        return;
    }
    for w in g.adj(last).intersection(base).iter() {
        if path.contains(&w) {
            continue;
        }
        // Induced: w may only touch the current last vertex.
        if path[..path.len() - 1].iter().any(|&p| g.has_edge(p, w)) {
            continue;
        }
        // Interior vertices stay clear of H(u) ∪ H(v).
        let is_final = path.len() + 1 == length + 1;
        if !is_final && forbidden_interior.contains(w) {
            continue;
        }
        path.push(w);
        extend_gap(g, base, forbidden_interior, ends, length, path, emit);
        path.pop();
    }
}

/// The forced structure of a minimal cover of a base 5-hole: three cover
/// vertices `a, b, c` with edge pattern `a-p1, a-p3, b-p2, b-p4, c-p5` and
/// optionally `c-p3`, plus a single deeper vertex `z` adjacent to all three.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PentcoverStructure {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub p: [usize; 5],
    pub has_cp3: bool,
    pub z: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PentcoverViolation {
    CoverSizeNot3 { s: Vec<usize> },
    EdgePatternMismatch { s: Vec<usize> },
    NoCommonApex { s: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PentcoverOutcome {
    Structure(PentcoverStructure),
    Violation(PentcoverViolation),
}

/// Analyze a 5-hole in the base of a stable levelling in a pentagonal host:
/// compute a minimal covering subset of the level below, and match it against
/// the forced three-vertex pattern. Pentagonal hosts always realize the
/// pattern, so a violation verdict signals a bug or a bad context.
pub fn pentcover_analyze(g: &Graph, lv: &StableLevelling, p: &InducedCycle) -> Result<PentcoverOutcome, Error> {
    if let Some(cycle) = holes::pentagonality_witness(g) {
        return Err(Error::usage(format!(
            "host is not pentagonal: induced odd cycle {:?}",
            cycle.vertices
        )));
    }
    p.validate(g).map_err(|e| Error::usage(format!("invalid 5-hole: {e}")))?;
    if p.len() != 5 {
        return Err(Error::usage("pentcover analysis needs a 5-hole"));
    }
    let k = lv.depth();
    if k < 2 {
        return Err(Error::usage("levelling too shallow: need L_{k-2} for the apex"));
    }
    let p_set = VertexSet::from_iter(g.vertex_count(), p.vertices.iter().copied());
    if !p_set.is_subset_of(lv.base()) {
        return Err(Error::usage("the 5-hole must sit inside the base"));
    }

    // Minimal S ⊆ L_{k-1} covering V(p): greedy removal, descending index.
    let cover = &lv.levels()[k - 1];
    let mut s_set = VertexSet::new(g.vertex_count());
    for v in cover.iter() {
        if g.adj(v).intersection_len(&p_set) > 0 {
            s_set.insert(v);
        }
    }
    for v in s_set.to_vec().into_iter().rev() {
        let mut without = s_set.clone();
        without.remove(v);
        let still_covered = p_set
            .iter()
            .all(|u| g.adj(u).intersection_len(&without) > 0);
        if still_covered {
            s_set = without;
        }
    }
    let s: Vec<usize> = s_set.to_vec();
    if s.len() != 3 {
        return Ok(PentcoverOutcome::Violation(PentcoverViolation::CoverSizeNot3 { s }));
    }

    // Try all rotations/reflections of the hole and all assignments of S.
    let cyc = &p.vertices;
    let mut orientations = Vec::with_capacity(10);
    for start in 0..5 {
        for dir in [1isize, -1] {
            let mut lab = [0usize; 5];
            for (idx, slot) in lab.iter_mut().enumerate() {
                let pos = (start as isize + dir * idx as isize).rem_euclid(5) as usize;
                *slot = cyc[pos];
            }
            orientations.push(lab);
        }
    }
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0],
    ];
    for lab in &orientations {
        for perm in &perms {
            let (a, b, c) = (s[perm[0]], s[perm[1]], s[perm[2]]);
            let mut required = vec![
                (a, lab[0]),
                (a, lab[2]),
                (b, lab[1]),
                (b, lab[3]),
                (c, lab[4]),
            ];
            let optional = (c, lab[2]);
            if !required.iter().all(|&(x, y)| g.has_edge(x, y)) {
                continue;
            }
            let has_cp3 = g.has_edge(optional.0, optional.1);
            if has_cp3 {
                required.push(optional);
            }
            // No edges between S and the hole beyond the pattern.
            let mut extra = false;
            for &sv in &[a, b, c] {
                for &pv in lab {
                    let expected = required.contains(&(sv, pv));
                    if g.has_edge(sv, pv) != expected {
                        extra = true;
                    }
                }
            }
            if extra {
                continue;
            }
            // Apex z in L_{k-2} adjacent to all of S.
            let deeper = &lv.levels()[k - 2];
            let z = deeper
                .iter()
                .find(|&z| [a, b, c].iter().all(|&sv| g.has_edge(z, sv)));
            return match z {
                Some(z) => Ok(PentcoverOutcome::Structure(PentcoverStructure {
                    a,
                    b,
                    c,
                    p: *lab,
                    has_cp3,
                    z,
                })),
                None => Ok(PentcoverOutcome::Violation(PentcoverViolation::NoCommonApex { s })),
            };
        }
    }
    Ok(PentcoverOutcome::Violation(PentcoverViolation::EdgePatternMismatch { s }))
}

/// Verdict of the distance-2 chromatic check around a target vertex.
#[derive(Clone, Debug, Serialize)]
pub struct NbrzVerdict {
    /// Vertices of N²_H(z) all of whose cover neighbours are adjacent to z.
    pub a_set: VertexSet,
    pub chi_a: u32,
    pub ok: bool,
    /// A 5-hole inside the offending set when the bound fails.
    pub counterexample: Option<InducedCycle>,
}

/// Check χ(A) <= 2 where A collects the distance-2 vertices of `z` in the
/// target whose every cover neighbour is adjacent to `z`.
pub fn check_nbrz(g: &Graph, ctx: &CoverContext, z: usize) -> Result<NbrzVerdict, Error> {
    if !ctx.h_vertices.contains(z) {
        return Err(Error::usage(format!("vertex {z} is not in the target graph")));
    }
    let (h, map) = g.induced_subgraph(&ctx.h_vertices);
    let local_z = map.iter().position(|&old| old == z).expect("z mapped");
    let ball = h.nth_neighborhood(local_z, 2)?;
    let cover = ctx.cover_level();
    let mut a_set = VertexSet::new(g.vertex_count());
    for local in ball.iter() {
        let v = map[local];
        let all_adjacent = g
            .adj(v)
            .intersection(cover)
            .iter()
            .all(|w| g.has_edge(w, z));
        if all_adjacent {
            a_set.insert(v);
        }
    }
    let chi_a = coloring::chi_of_subset(g, &a_set)?;
    let counterexample = if chi_a > 2 {
        let (sub, submap) = g.induced_subgraph(&a_set);
        holes::enumerate_induced_cycles(&sub, 3, sub.vertex_count(), holes::Parity::Odd, None)?
            .into_iter()
            .find(|c| c.len() == 5)
            .map(|c| InducedCycle {
                vertices: c.vertices.iter().map(|&v| submap[v]).collect(),
            })
    } else {
        None
    };
    Ok(NbrzVerdict {
        a_set,
        chi_a,
        ok: chi_a <= 2,
        counterexample,
    })
}

/// One step of a covering chain: a stable levelling in `host` whose base
/// contains the previous graph of the chain on `h_vertices` (ascending-index
/// embedding).
#[derive(Clone, Debug, Serialize)]
pub struct CoverStep {
    pub host: Graph,
    pub levelling: Levelling,
    pub h_vertices: VertexSet,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoBallsReport {
    pub entries: Vec<(usize, u32)>,
    pub ok: bool,
}

fn embedded_copy(host: &Graph, h_vertices: &VertexSet) -> Graph {
    host.induced_subgraph(h_vertices).0
}

/// Verify χ(N²_H(z)) <= 5 for every vertex of a 2-coverable graph, given an
/// explicit chain `H = G_0, G_1, G_2` of stable levellings. The chain itself
/// is validated: stable levellings, pentagonal hosts, and each step's base
/// containing the previous graph.
pub fn check_2balls_bound(h: &Graph, chain: &[CoverStep; 2]) -> Result<TwoBallsReport, Error> {
    let mut expected = h.clone();
    for (i, step) in chain.iter().enumerate() {
        validate_levelling(&step.host, &step.levelling, true)
            .map_err(|v| Error::usage(format!("chain step {i}: {v}")))?;
        if !step.h_vertices.is_subset_of(step.levelling.base()) {
            return Err(Error::usage(format!(
                "chain step {i}: target vertices must sit in the base"
            )));
        }
        if embedded_copy(&step.host, &step.h_vertices) != expected {
            return Err(Error::usage(format!(
                "chain step {i}: base does not contain the previous graph"
            )));
        }
        if !holes::is_pentagonal(&step.host) {
            return Err(Error::usage(format!("chain step {i}: host is not pentagonal")));
        }
        expected = step.host.clone();
    }
    let mut entries = Vec::new();
    let mut ok = true;
    for z in h.vertices() {
        let chi = coloring::chi_of_subset(h, &h.nth_neighborhood(z, 2)?)?;
        ok &= chi <= 5;
        entries.push((z, chi));
    }
    Ok(TwoBallsReport { entries, ok })
}

#[derive(Clone, Debug, Serialize)]
pub enum CoverSearchOutcome {
    Found {
        host: Graph,
        levelling: StableLevelling,
        h_vertices: VertexSet,
        explored: u64,
    },
    Absent {
        explored: u64,
    },
    BudgetExhausted {
        explored: u64,
    },
}

impl CoverSearchOutcome {
    pub fn verdict(&self) -> &'static str {
        match self {
            CoverSearchOutcome::Found { .. } => "found",
            CoverSearchOutcome::Absent { .. } => "absent",
            CoverSearchOutcome::BudgetExhausted { .. } => "budget_exhausted",
        }
    }
}

fn mask_vertices(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&v| mask >> v & 1 == 1)
}

/// Does the target graph contain an induced path of odd length >= `min_len`
/// between two members of `set_mask` whose other vertices avoid the set?
/// Such a path closes through a cover vertex into an odd hole of length >= 7.
fn has_internal_odd_path(h: &Graph, set_mask: u64, min_len: usize) -> bool {
    let n = h.vertex_count();
    for x0 in mask_vertices(set_mask) {
        let mut path = vec![x0];
        if internal_odd_path_dfs(h, set_mask, min_len, &mut path, n) {
            return true;
        }
    }
    false
}

fn internal_odd_path_dfs(h: &Graph, set_mask: u64, min_len: usize, path: &mut Vec<usize>, n: usize) -> bool {
    if path.len() == n {
        return false;
    }
    let last = *path.last().expect("path nonempty");
    for w in h.adj(last).iter() {
        if path.contains(&w) {
            continue;
        }
        if path[..path.len() - 1].iter().any(|&p| h.has_edge(p, w)) {
            continue;
        }
        // Interior vertices must avoid the set; a set member may only close.
        if set_mask >> w & 1 == 1 {
            let len = path.len();
            if len >= min_len && len % 2 == 1 {
                return true;
            }
        } else {
            path.push(w);
            if internal_odd_path_dfs(h, set_mask, min_len, path, n) {
                path.pop();
                return true;
            }
            path.pop();
        }
    }
    false
}

/// Is there a gap of odd length >= 3 between two cover sets? Through the
/// shared apex such a gap closes into an odd hole of length >= 7, so the
/// pair can never coexist in a pentagonal host.
fn has_odd_gap_ge3(h: &Graph, a: u64, b: u64) -> bool {
    let n = h.vertex_count();
    let both = a | b;
    for x0 in mask_vertices(a & !b) {
        let mut stack = vec![vec![x0]];
        while let Some(path) = stack.pop() {
            let last = *path.last().expect("path nonempty");
            let len = path.len() - 1;
            if len >= 3 && len % 2 == 1 && b >> last & 1 == 1 && a >> last & 1 == 0 {
                return true;
            }
            if path.len() == n {
                continue;
            }
            for w in h.adj(last).iter() {
                if path.contains(&w) {
                    continue;
                }
                if path[..path.len() - 1].iter().any(|&p| h.has_edge(p, w)) {
                    continue;
                }
                let is_member = both >> w & 1 == 1;
                let mut next = path.clone();
                next.push(w);
                if is_member {
                    // End vertex candidate; cannot be interior.
                    let len = next.len() - 1;
                    if len >= 3 && len % 2 == 1 && b >> w & 1 == 1 && a >> w & 1 == 0 {
                        return true;
                    }
                } else {
                    stack.push(next);
                }
            }
        }
    }
    false
}

fn apply_perm_mask(mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0;
    for v in mask_vertices(mask) {
        out |= 1 << perm[v];
    }
    out
}

fn build_host(h: &Graph, sets: &[u64]) -> (Graph, Levelling, VertexSet) {
    let nh = h.vertex_count();
    let m = sets.len();
    let n = 1 + m + nh;
    let mut edges = Vec::new();
    for (i, &set) in sets.iter().enumerate() {
        edges.push((0, 1 + i));
        for v in mask_vertices(set) {
            edges.push((1 + i, 1 + m + v));
        }
    }
    for (u, v) in h.edges() {
        edges.push((1 + m + u, 1 + m + v));
    }
    let host = Graph::from_edges(n, edges).expect("construction is loop-free and in range");
    let levelling = Levelling {
        levels: vec![
            VertexSet::from_iter(n, [0]),
            VertexSet::from_iter(n, 1..1 + m),
            VertexSet::from_iter(n, 1 + m..n),
        ],
    };
    let h_vertices = VertexSet::from_iter(n, 1 + m..n);
    (host, levelling, h_vertices)
}

struct CoverSearch<'a> {
    h: &'a Graph,
    full: u64,
    pool: Vec<u64>,
    compat: Vec<Vec<bool>>,
    orbit_min: Vec<u64>,
    max_cover: usize,
    budget: Option<u64>,
    explored: u64,
    aborted: bool,
    found: Option<Vec<u64>>,
}

enum SearchFlow {
    Continue,
    Stop,
}

impl CoverSearch<'_> {
    fn minimal_cover(&self, chosen: &[usize]) -> bool {
        for (i, &ci) in chosen.iter().enumerate() {
            let mut others = 0u64;
            for (j, &cj) in chosen.iter().enumerate() {
                if i != j {
                    others |= self.pool[cj];
                }
            }
            if self.pool[ci] & !others == 0 {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, start: usize, chosen: &mut Vec<usize>, covered: u64, first_set: Option<u64>) -> SearchFlow {
        if covered == self.full {
            if self.minimal_cover(chosen) {
                let sets: Vec<u64> = chosen.iter().map(|&i| self.pool[i]).collect();
                let (host, levelling, _) = build_host(self.h, &sets);
                // Full verification before accepting.
                if holes::is_pentagonal(&host) && validate_levelling(&host, &levelling, true).is_ok() {
                    self.found = Some(sets);
                    return SearchFlow::Stop;
                }
            }
            return SearchFlow::Continue;
        }
        if chosen.len() >= self.max_cover {
            return SearchFlow::Continue;
        }
        for ci in start..self.pool.len() {
            if let Some(budget) = self.budget {
                if self.explored >= budget {
                    self.aborted = true;
                    return SearchFlow::Stop;
                }
            }
            self.explored += 1;
            let set = self.pool[ci];
            // Minimal covers: every set contributes a fresh vertex.
            if set & !covered == 0 {
                continue;
            }
            // Symmetry: the first set is the orbit-least representative and
            // later sets never map below it under an automorphism.
            match first_set {
                None => {
                    if self.orbit_min[ci] != set {
                        continue;
                    }
                }
                Some(s1) => {
                    if self.orbit_min[ci] < s1 {
                        continue;
                    }
                }
            }
            if chosen.iter().any(|&cj| !self.compat[ci][cj]) {
                continue;
            }
            // Remaining coverage must stay reachable.
            let uncovered = self.full & !(covered | set);
            if uncovered != 0 {
                if chosen.len() + 1 >= self.max_cover {
                    continue;
                }
                let mut available = 0u64;
                for cj in ci + 1..self.pool.len() {
                    if self.compat[ci][cj] && chosen.iter().all(|&ck| self.compat[cj][ck]) {
                        available |= self.pool[cj];
                    }
                }
                if uncovered & !available != 0 {
                    continue;
                }
            }
            // The partial host must stay free of odd holes of length >= 7.
            let sets: Vec<u64> = chosen.iter().map(|&i| self.pool[i]).chain([set]).collect();
            let (host, _, _) = build_host(self.h, &sets);
            if holes::find_odd_cycle_geq(&host, 7, None)
                .expect("unbudgeted search cannot exhaust")
                .is_some()
            {
                continue;
            }
            chosen.push(ci);
            let flow = self.dfs(ci + 1, chosen, covered | set, first_set.or(Some(set)));
            chosen.pop();
            if let SearchFlow::Stop = flow {
                return SearchFlow::Stop;
            }
        }
        SearchFlow::Continue
    }
}

/// Exhaustive search for a 1-covering host of `h`: an apex, a stable cover
/// level of at most `max_cover_size` vertices, and `h` as the base, such that
/// the whole host is pentagonal and the cover is minimal (every cover vertex
/// keeps a dependent). Only `k = 2` hosts are searched.
///
/// Restricting to minimal covers loses nothing: removing a redundant cover
/// vertex keeps the host pentagonal and the levelling valid.
pub fn search_one_covering(
    h: &Graph,
    max_cover_size: usize,
    k: usize,
    budget: Option<u64>,
) -> Result<CoverSearchOutcome, Error> {
    if k != 2 {
        return Err(Error::capability("covering search supports k = 2 only"));
    }
    let nh = h.vertex_count();
    if nh == 0 {
        return Err(Error::usage("target graph must be nonempty"));
    }
    if nh > 20 {
        return Err(Error::capability("covering search limited to 20 target vertices"));
    }
    if max_cover_size == 0 {
        return Err(Error::usage("max_cover_size must be positive"));
    }
    if let Some(cycle) = holes::pentagonality_witness(h) {
        return Err(Error::usage(format!(
            "target is not pentagonal: induced odd cycle {:?}",
            cycle.vertices
        )));
    }

    // Candidate pool: nonempty stable subsets, minus sets whose own internal
    // odd paths would close into long odd holes through their cover vertex.
    let adj_masks: Vec<u64> = (0..nh)
        .map(|v| h.adj(v).iter().fold(0u64, |m, w| m | 1 << w))
        .collect();
    let mut pool = Vec::new();
    for mask in 1u64..(1 << nh) {
        let stable = mask_vertices(mask).all(|v| adj_masks[v] & mask == 0);
        if stable && !has_internal_odd_path(h, mask, 5) {
            pool.push(mask);
        }
    }
    let compat: Vec<Vec<bool>> = (0..pool.len())
        .map(|i| {
            (0..pool.len())
                .map(|j| !has_odd_gap_ge3(h, pool[i], pool[j]))
                .collect()
        })
        .collect();
    let autos = automorphisms(h);
    let orbit_min: Vec<u64> = pool
        .iter()
        .map(|&s| autos.iter().map(|p| apply_perm_mask(s, p)).min().unwrap_or(s))
        .collect();

    let mut search = CoverSearch {
        h,
        full: (1u64 << nh) - 1,
        pool,
        compat,
        orbit_min,
        max_cover: max_cover_size,
        budget,
        explored: 0,
        aborted: false,
        found: None,
    };
    search.dfs(0, &mut Vec::new(), 0, None);
    let explored = search.explored;
    if let Some(sets) = search.found {
        let (host, levelling, h_vertices) = build_host(h, &sets);
        let levelling = StableLevelling::new(&host, levelling)?;
        // The found covering re-validates as a full cover context.
        CoverContext::new(&host, levelling.clone(), h_vertices.clone())?;
        debug_assert!(holes::is_pentagonal(&host));
        return Ok(CoverSearchOutcome::Found {
            host,
            levelling,
            h_vertices,
            explored,
        });
    }
    if search.aborted {
        return Ok(CoverSearchOutcome::BudgetExhausted { explored });
    }
    Ok(CoverSearchOutcome::Absent { explored })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, grotzsch};

    /// The minimal host realizing the three-vertex cover pattern over C5:
    /// apex 0, cover {1,2,3}, hole 4..8.
    fn pattern_host(cp3: bool) -> (Graph, StableLevelling, VertexSet, InducedCycle) {
        let mut edges = vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 6),
            (2, 5),
            (2, 7),
            (3, 8),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 4),
        ];
        if cp3 {
            edges.push((3, 6));
        }
        let g = Graph::from_edges(9, edges).unwrap();
        let levelling = Levelling {
            levels: vec![
                VertexSet::from_iter(9, [0]),
                VertexSet::from_iter(9, [1, 2, 3]),
                VertexSet::from_iter(9, 4..9),
            ],
        };
        let stable = StableLevelling::new(&g, levelling).unwrap();
        let hole = InducedCycle {
            vertices: vec![4, 5, 6, 7, 8],
        };
        (g, stable, VertexSet::from_iter(9, 4..9), hole)
    }

    #[test]
    fn cover_context_validation() {
        let (g, lv, h_vertices, _) = pattern_host(false);
        let ctx = CoverContext::new(&g, lv, h_vertices).unwrap();
        assert_eq!(ctx.h_map[&1].to_vec(), vec![4, 6]);
        assert_eq!(ctx.h_map[&3].to_vec(), vec![8]);
    }

    #[test]
    fn cover_context_requires_dependents() {
        // The Grötzsch levelling from the apex covers the rim, but every rim
        // vertex has two cover neighbours, so no branch vertex keeps a
        // dependent.
        let g = grotzsch();
        let lv = StableLevelling::new(
            &g,
            crate::levelling::bfs_levelling(&g, crate::generators::GROTZSCH_APEX).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            CoverContext::new(&g, lv, VertexSet::from_iter(11, 0..5)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn gaps_match_brute_force() {
        let (g, lv, h_vertices, _) = pattern_host(false);
        let ctx = CoverContext::new(&g, lv, h_vertices.clone()).unwrap();
        // Oracle: plain enumeration of induced paths in the base.
        let base: Vec<usize> = h_vertices.to_vec();
        for (u, v) in [(1usize, 2usize), (1, 3), (2, 3)] {
            let hu = &ctx.h_map[&u];
            let hv = &ctx.h_map[&v];
            for length in 0..=4usize {
                let got = find_gaps(&g, &ctx, u, v, length).unwrap();
                let mut want = Vec::new();
                enumerate_paths_oracle(&g, &base, length, &mut |p| {
                    let first = p[0];
                    let last = *p.last().unwrap();
                    let ends_ok = if length == 0 {
                        hu.contains(first) && hv.contains(first)
                    } else {
                        hu.contains(first)
                            && !hv.contains(first)
                            && hv.contains(last)
                            && !hu.contains(last)
                    };
                    let interior = if p.len() > 2 { &p[1..p.len() - 1] } else { &[][..] };
                    let interior_ok = interior.iter().all(|&x| !hu.contains(x) && !hv.contains(x));
                    if ends_ok && interior_ok {
                        want.push(p.to_vec());
                    }
                });
                let got_paths: Vec<Vec<usize>> = got.iter().map(|gp| gp.path.clone()).collect();
                let mut want_sorted = want.clone();
                want_sorted.sort();
                let mut got_sorted = got_paths.clone();
                got_sorted.sort();
                assert_eq!(got_sorted, want_sorted, "u={u} v={v} len={length}");
            }
        }
        // Claim check: no gap of length three anywhere in a pentagonal context.
        for (u, v) in [(1usize, 2usize), (1, 3), (2, 3)] {
            assert!(find_gaps(&g, &ctx, u, v, 3).unwrap().is_empty());
        }
    }

    fn enumerate_paths_oracle(g: &Graph, base: &[usize], length: usize, emit: &mut impl FnMut(&[usize])) {
        fn extend(g: &Graph, base: &[usize], length: usize, path: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
            if path.len() == length + 1 {
                emit(path);
                return;
            }
            let last = *path.last().unwrap();
            for &w in base {
                if path.contains(&w) || !g.has_edge(last, w) {
                    continue;
                }
                if path[..path.len() - 1].iter().any(|&p| g.has_edge(p, w)) {
                    continue;
                }
                path.push(w);
                extend(g, base, length, path, emit);
                path.pop();
            }
        }
        for &x in base {
            let mut path = vec![x];
            extend(g, base, length, &mut path, emit);
        }
    }

    #[test]
    fn pentcover_accepts_the_pattern() {
        for cp3 in [false, true] {
            let (g, lv, _, hole) = pattern_host(cp3);
            match pentcover_analyze(&g, &lv, &hole).unwrap() {
                PentcoverOutcome::Structure(s) => {
                    assert_eq!(s.z, 0);
                    assert_eq!(s.has_cp3, cp3);
                    let mut sv = vec![s.a, s.b, s.c];
                    sv.sort_unstable();
                    assert_eq!(sv, vec![1, 2, 3]);
                }
                PentcoverOutcome::Violation(v) => panic!("pattern rejected: {v:?}"),
            }
        }
    }

    #[test]
    fn pentcover_rejects_triangle_hosts() {
        // Cover vertex 1 is adjacent to the consecutive hole vertices 4 and
        // 5, forming a triangle: the host fails the pentagonality
        // precondition (a cover vertex's neighbours must be stable).
        let edges = vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (2, 6),
            (2, 8),
            (3, 7),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 4),
        ];
        let g = Graph::from_edges(9, edges).unwrap();
        let lv = Levelling {
            levels: vec![
                VertexSet::from_iter(9, [0]),
                VertexSet::from_iter(9, [1, 2, 3]),
                VertexSet::from_iter(9, 4..9),
            ],
        };
        let hole = InducedCycle {
            vertices: vec![4, 5, 6, 7, 8],
        };
        let lv_ok = StableLevelling::new(&g, lv).unwrap();
        assert!(matches!(pentcover_analyze(&g, &lv_ok, &hole), Err(Error::Usage(_))));
    }

    #[test]
    fn nbrz_cases() {
        let (g, lv, h_vertices, _) = pattern_host(false);
        let ctx = CoverContext::new(&g, lv, h_vertices).unwrap();
        for z in 4..9 {
            let verdict = check_nbrz(&g, &ctx, z).unwrap();
            assert!(verdict.ok, "z={z}: χ(A)={}", verdict.chi_a);
            assert!(verdict.chi_a <= 2);
        }
        assert!(check_nbrz(&g, &ctx, 0).is_err());
    }

    #[test]
    fn nbrz_accepts_an_edge_inside_a() {
        // Cover vertices 1 -> {4,6}, 2 -> {4,7}, 3 -> {5,8} over a base C5
        // 4-5-6-7-8. Around z = 4, both distance-2 vertices 6 and 7 have all
        // their cover neighbours adjacent to 4, so A = {6,7} carries an edge
        // and χ(A) = 2, which the bound admits.
        let g = Graph::from_edges(
            9,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 4),
                (1, 6),
                (2, 4),
                (2, 7),
                (3, 5),
                (3, 8),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 4),
            ],
        )
        .unwrap();
        let lv = StableLevelling::new(
            &g,
            Levelling {
                levels: vec![
                    VertexSet::from_iter(9, [0]),
                    VertexSet::from_iter(9, [1, 2, 3]),
                    VertexSet::from_iter(9, 4..9),
                ],
            },
        )
        .unwrap();
        let ctx = CoverContext::new(&g, lv, VertexSet::from_iter(9, 4..9)).unwrap();
        let verdict = check_nbrz(&g, &ctx, 4).unwrap();
        assert_eq!(verdict.a_set.to_vec(), vec![6, 7]);
        assert_eq!(verdict.chi_a, 2);
        assert!(verdict.ok);
    }

    #[test]
    fn covering_search_finds_c5_pattern() {
        let c5 = cycle(5).unwrap();
        match search_one_covering(&c5, 3, 2, None).unwrap() {
            CoverSearchOutcome::Found { host, levelling, h_vertices, .. } => {
                assert!(holes::is_pentagonal(&host));
                let ctx = CoverContext::new(&host, levelling.clone(), h_vertices.clone()).unwrap();
                assert_eq!(ctx.cover_level().len(), 3);
                // The base C5 must match the forced pattern, apex included.
                let base: Vec<usize> = h_vertices.to_vec();
                let hole = InducedCycle {
                    vertices: vec![base[0], base[1], base[2], base[3], base[4]],
                };
                match pentcover_analyze(&host, &levelling, &hole).unwrap() {
                    PentcoverOutcome::Structure(s) => assert_eq!(s.z, 0),
                    PentcoverOutcome::Violation(v) => panic!("found covering violates the pattern: {v:?}"),
                }
            }
            other => panic!("expected a covering for C5, got {}", other.verdict()),
        }
    }

    #[test]
    fn covering_search_finds_k2() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        match search_one_covering(&k2, 3, 2, None).unwrap() {
            CoverSearchOutcome::Found { host, .. } => {
                // apex + two cover vertices + the edge = C5.
                assert!(crate::graph::are_isomorphic(&host, &cycle(5).unwrap()));
            }
            other => panic!("expected a covering for K2, got {}", other.verdict()),
        }
    }

    #[test]
    fn grotzsch_has_no_small_covering() {
        match search_one_covering(&grotzsch(), 4, 2, None).unwrap() {
            CoverSearchOutcome::Absent { explored } => assert!(explored > 0),
            other => panic!("expected absence, got {}", other.verdict()),
        }
    }

    #[test]
    fn budget_exhaustion_reported() {
        match search_one_covering(&grotzsch(), 6, 2, Some(5)).unwrap() {
            CoverSearchOutcome::BudgetExhausted { explored } => assert!(explored >= 5),
            other => panic!("expected budget exhaustion, got {}", other.verdict()),
        }
    }

    #[test]
    fn k_other_than_2_rejected() {
        assert!(matches!(
            search_one_covering(&cycle(5).unwrap(), 3, 3, None),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn two_balls_chain_over_c5() {
        // Build the chain by searching: C5 -> G1, then G1 -> G2.
        let c5 = cycle(5).unwrap();
        let first = match search_one_covering(&c5, 3, 2, None).unwrap() {
            CoverSearchOutcome::Found { host, levelling, h_vertices, .. } => CoverStep {
                host,
                levelling: levelling.into_levelling(),
                h_vertices,
            },
            other => panic!("no C5 covering: {}", other.verdict()),
        };
        let second = match search_one_covering(&first.host, 6, 2, None).unwrap() {
            CoverSearchOutcome::Found { host, levelling, h_vertices, .. } => CoverStep {
                host,
                levelling: levelling.into_levelling(),
                h_vertices,
            },
            other => panic!("no covering of the 9-vertex host: {}", other.verdict()),
        };
        let report = check_2balls_bound(&c5, &[first, second]).unwrap();
        assert!(report.ok);
        assert!(report.entries.iter().all(|&(_, chi)| chi <= 5));
    }

    #[test]
    fn two_balls_rejects_unstable_chain() {
        // The cover level {1, 2} carries an edge: usage error.
        let c5 = cycle(5).unwrap();
        let g = Graph::from_edges(
            8,
            [
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 6),
                (2, 7),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (3, 7),
            ],
        )
        .unwrap();
        let step = CoverStep {
            host: g,
            levelling: Levelling {
                levels: vec![
                    VertexSet::from_iter(8, [0]),
                    VertexSet::from_iter(8, [1, 2]),
                    VertexSet::from_iter(8, 3..8),
                ],
            },
            h_vertices: VertexSet::from_iter(8, 3..8),
        };
        let err = check_2balls_bound(&c5, &[step.clone(), step]);
        assert!(matches!(err, Err(Error::Usage(_))));
    }
}
