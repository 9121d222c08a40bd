//! Levellings, stable levellings, lollipops and the two lollipop
//! transformations: licking and cleanliness boosting.
//!
//! A levelling is a sequence of disjoint vertex sets `(L_0, ..., L_k)` with a
//! single root, every vertex dominated by the previous level, and no edges
//! skipping a level. It is stable when `L_0..L_{k-1}` are stable sets (the
//! base `L_k` is unconstrained).

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::coloring;
use crate::error::Error;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Levelling {
    pub levels: Vec<VertexSet>,
}

impl Levelling {
    pub fn depth(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    /// The top level `L_k`.
    pub fn base(&self) -> &VertexSet {
        self.levels.last().expect("levelling has at least one level")
    }

    pub fn level_of(&self, v: usize) -> Option<usize> {
        self.levels.iter().position(|l| l.contains(v))
    }

    /// All vertices covered by the levelling.
    pub fn support(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::new(n);
        for l in &self.levels {
            s.union_with(l);
        }
        s
    }
}

/// First violated levelling clause, with a concrete witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LevellingViolation {
    NoLevels,
    RootNotSingleton { size: usize },
    Overlap { vertex: usize, level_a: usize, level_b: usize },
    NoParent { vertex: usize, level: usize },
    SkipEdge { u: usize, level_u: usize, v: usize, level_v: usize },
    UnstableLevel { level: usize, u: usize, v: usize },
}

impl std::fmt::Display for LevellingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LevellingViolation::NoLevels => write!(f, "levelling has no levels"),
            LevellingViolation::RootNotSingleton { size } => {
                write!(f, "L_0 must be a single vertex, has {size}")
            }
            LevellingViolation::Overlap { vertex, level_a, level_b } => {
                write!(f, "vertex {vertex} appears in levels {level_a} and {level_b}")
            }
            LevellingViolation::NoParent { vertex, level } => {
                write!(f, "vertex {vertex} in L_{level} has no neighbour in L_{}", level - 1)
            }
            LevellingViolation::SkipEdge { u, level_u, v, level_v } => {
                write!(f, "edge {u}-{v} skips from L_{level_u} to L_{level_v}")
            }
            LevellingViolation::UnstableLevel { level, u, v } => {
                write!(f, "edge {u}-{v} inside L_{level} (must be stable)")
            }
        }
    }
}

/// Validate the levelling clauses in definition order and report the first
/// violation. With `require_stable`, levels `L_0..L_{k-1}` must also be
/// stable sets.
pub fn validate_levelling(g: &Graph, lv: &Levelling, require_stable: bool) -> Result<(), LevellingViolation> {
    let levels = &lv.levels;
    if levels.is_empty() {
        return Err(LevellingViolation::NoLevels);
    }
    if levels[0].len() != 1 {
        return Err(LevellingViolation::RootNotSingleton { size: levels[0].len() });
    }
    for i in 0..levels.len() {
        for j in i + 1..levels.len() {
            if let Some(v) = levels[i].intersection(&levels[j]).first_vertex() {
                return Err(LevellingViolation::Overlap { vertex: v, level_a: i, level_b: j });
            }
        }
    }
    for i in 1..levels.len() {
        for v in levels[i].iter() {
            if g.adj(v).intersection_len(&levels[i - 1]) == 0 {
                return Err(LevellingViolation::NoParent { vertex: v, level: i });
            }
        }
    }
    for i in 0..levels.len() {
        for j in i + 2..levels.len() {
            for u in levels[i].iter() {
                if let Some(v) = g.adj(u).intersection(&levels[j]).first_vertex() {
                    return Err(LevellingViolation::SkipEdge { u, level_u: i, v, level_v: j });
                }
            }
        }
    }
    if require_stable {
        for (i, level) in levels.iter().enumerate().take(levels.len() - 1) {
            for u in level.iter() {
                if let Some(v) = g.adj(u).intersection(level).first_vertex() {
                    return Err(LevellingViolation::UnstableLevel { level: i, u: u.min(v), v: u.max(v) });
                }
            }
        }
    }
    Ok(())
}

/// A levelling whose levels below the base are stable sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableLevelling {
    inner: Levelling,
}

impl StableLevelling {
    pub fn new(g: &Graph, levelling: Levelling) -> Result<Self, Error> {
        validate_levelling(g, &levelling, true)
            .map_err(|v| Error::usage(format!("not a stable levelling: {v}")))?;
        Ok(StableLevelling { inner: levelling })
    }

    pub fn levels(&self) -> &[VertexSet] {
        &self.inner.levels
    }

    pub fn base(&self) -> &VertexSet {
        self.inner.base()
    }

    pub fn depth(&self) -> usize {
        self.inner.depth()
    }

    pub fn as_levelling(&self) -> &Levelling {
        &self.inner
    }

    pub fn into_levelling(self) -> Levelling {
        self.inner
    }
}

/// Distance classes from `v0` within its component. Always a valid levelling.
pub fn bfs_levelling(g: &Graph, v0: usize) -> Result<Levelling, Error> {
    if v0 >= g.vertex_count() {
        return Err(Error::usage(format!("root {v0} out of range")));
    }
    let dist = g.distances(v0);
    let max = dist.iter().flatten().copied().max().unwrap_or(0);
    let levels = (0..=max)
        .map(|d| VertexSet::from_iter(g.vertex_count(), (0..g.vertex_count()).filter(|&v| dist[v] == Some(d))))
        .collect();
    Ok(Levelling { levels })
}

/// A lollipop `(C, T)`: connected candy `C` and induced stick path
/// `t_1 - ... - t_k` (`k >= 2`) meeting `C` only through its far end `t_k`.
/// `t_1` is the end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lollipop {
    pub candy: VertexSet,
    pub stick: Vec<usize>,
}

impl Lollipop {
    pub fn end(&self) -> usize {
        self.stick[0]
    }
}

pub fn validate_lollipop(g: &Graph, lp: &Lollipop) -> Result<(), Error> {
    let k = lp.stick.len();
    if k < 2 {
        return Err(Error::usage("lollipop stick needs at least 2 vertices"));
    }
    if !g.is_induced_path(&lp.stick) {
        return Err(Error::usage("lollipop stick is not an induced path"));
    }
    let stick_set = VertexSet::from_iter(g.vertex_count(), lp.stick.iter().copied());
    if !stick_set.is_disjoint_from(&lp.candy) {
        return Err(Error::usage("lollipop stick meets the candy"));
    }
    if !g.is_connected_subset(&lp.candy) {
        return Err(Error::usage("lollipop candy must be nonempty and connected"));
    }
    let last = lp.stick[k - 1];
    if g.adj(last).intersection_len(&lp.candy) == 0 {
        return Err(Error::usage("stick tip has no neighbour in the candy"));
    }
    for &t in &lp.stick[..k - 1] {
        if g.adj(t).intersection_len(&lp.candy) != 0 {
            return Err(Error::usage(format!(
                "stick vertex {t} below the tip has a neighbour in the candy"
            )));
        }
    }
    Ok(())
}

/// Number of initial stick vertices at distance at least three from the
/// candy. Always at most `k - 2` for a valid lollipop.
pub fn cleanliness(g: &Graph, lp: &Lollipop) -> Result<u32, Error> {
    validate_lollipop(g, lp)?;
    let mut clean = 0;
    for &t in &lp.stick {
        match g.distance_to_set(t, &lp.candy)? {
            Some(d) if d >= 3 => clean += 1,
            _ => break,
        }
    }
    debug_assert!(clean + 2 <= lp.stick.len() as u32);
    Ok(clean)
}

/// Shrink the candy to a connected `c_prime` and extend the stick through
/// the old candy. The connecting path is the minimum-length path from the
/// stick tip inside the candy to a neighbour of `c_prime`, ties broken by
/// the lexicographically least path.
pub fn lick(g: &Graph, lp: &Lollipop, c_prime: &VertexSet) -> Result<Lollipop, Error> {
    validate_lollipop(g, lp)?;
    if c_prime.is_empty() || !c_prime.is_subset_of(&lp.candy) {
        return Err(Error::usage("licking target must be a nonempty subset of the candy"));
    }
    if !g.is_connected_subset(c_prime) {
        return Err(Error::usage("licking target must induce a connected subgraph"));
    }
    let tip = *lp.stick.last().expect("stick nonempty");
    if g.adj(tip).intersection_len(c_prime) > 0 {
        return Ok(Lollipop {
            candy: c_prime.clone(),
            stick: lp.stick.clone(),
        });
    }
    // Targets: candy vertices with a neighbour in c_prime (excluding c_prime
    // itself; a target inside c_prime would mean the path re-enters it).
    let mut targets = VertexSet::new(g.vertex_count());
    for v in lp.candy.difference(c_prime).iter() {
        if g.adj(v).intersection_len(c_prime) > 0 {
            targets.insert(v);
        }
    }
    if targets.is_empty() {
        return Err(Error::usage("candy is not connected through to the licking target"));
    }
    // Reverse BFS from the targets within (candy \ c_prime) ∪ {tip} gives the
    // distance-to-target of every vertex; walking it greedily by least index
    // yields the lexicographically least minimum-length path.
    let n = g.vertex_count();
    let mut zone = lp.candy.difference(c_prime);
    zone.insert(tip);
    let mut dist = vec![u32::MAX; n];
    let mut frontier: Vec<usize> = targets.iter().collect();
    for &t in &frontier {
        dist[t] = 0;
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for w in g.adj(x).intersection(&zone).iter() {
                if dist[w] == u32::MAX {
                    dist[w] = dist[x] + 1;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    if dist[tip] == u32::MAX {
        return Err(Error::usage("candy is not connected through to the licking target"));
    }
    let mut stick = lp.stick.clone();
    let mut at = tip;
    while dist[at] > 0 {
        let step = g
            .adj(at)
            .intersection(&zone)
            .iter()
            .find(|&w| dist[w] == dist[at] - 1)
            .expect("reverse BFS reached this vertex");
        stick.push(step);
        at = step;
    }
    let out = Lollipop {
        candy: c_prime.clone(),
        stick,
    };
    debug_assert!(validate_lollipop(g, &out).is_ok());
    Ok(out)
}

/// Failed cleanliness boost: a vertex whose distance-2 ball has chromatic
/// number above κ, falsifying the boosting hypothesis. `ball` is `N²(v)` in
/// the host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    pub vertex: usize,
    pub ball: VertexSet,
}

impl FailureWitness {
    /// Independent re-verification: `χ(N²(v)) > κ`.
    pub fn verify(&self, g: &Graph, kappa: u32) -> Result<bool, Error> {
        let ball = g.nth_neighborhood(self.vertex, 2)?;
        if ball != self.ball {
            return Ok(false);
        }
        Ok(coloring::chi_of_subset(g, &ball)? > kappa)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BoostOutcome {
    Boosted(Lollipop),
    Failure(FailureWitness),
}

/// Raise cleanliness by `h` through repeated licking: strip `N²(t_{c+1})`
/// from the candy, keep a maximum-χ component, lick, and repeat. Succeeds
/// with cleanliness(out) >= cleanliness(in) + h and χ(candy') >= χ(candy) −
/// h·κ, or returns a [`FailureWitness`] when some stripped ball has χ above
/// κ, which makes the step impossible.
///
/// Requires χ(candy) > h·κ; violating it is a usage error. χ evaluations use
/// the exact solver and inherit its vertex limit.
pub fn boost_cleanliness(g: &Graph, lp: &Lollipop, h: u32, kappa: u32) -> Result<BoostOutcome, Error> {
    validate_lollipop(g, lp)?;
    let chi_candy = coloring::chi_of_subset(g, &lp.candy)?;
    if chi_candy <= h * kappa {
        return Err(Error::usage(format!(
            "boost hypothesis requires χ(candy) > h·κ, got {chi_candy} <= {h}·{kappa}"
        )));
    }
    let mut current = lp.clone();
    for _ in 0..h {
        let clean = cleanliness(g, &current)?;
        // t_{c+1}: 1-indexed vertex just past the clean prefix.
        let pivot = current.stick[clean as usize];
        let ball = g.nth_neighborhood(pivot, 2)?;
        let stripped_ball = ball.intersection(&current.candy);
        if coloring::chi_of_subset(g, &stripped_ball)? > kappa {
            return Ok(BoostOutcome::Failure(FailureWitness { vertex: pivot, ball }));
        }
        let remainder = current.candy.difference(&ball);
        let component = g
            .connected_components(&remainder)
            .into_iter()
            .map(|comp| {
                let chi = coloring::chi_of_subset(g, &comp).expect("component within candy limits");
                (chi, comp)
            })
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.first_vertex().cmp(&a.1.first_vertex())))
            .map(|(_, comp)| comp)
            .expect("candy keeps positive χ under the boost hypothesis");
        current = lick(g, &current, &component)?;
    }
    debug_assert!(cleanliness(g, &current)? >= cleanliness(g, lp)? + h);
    Ok(BoostOutcome::Boosted(current))
}

/// Layered reachability: is there a path from `u` (in level i) to `v` (in
/// level j >= i) using exactly one vertex per intermediate level?
pub fn ancestors_descendants(g: &Graph, lv: &Levelling, u: usize, v: usize) -> Result<bool, Error> {
    let i = lv.level_of(u).ok_or_else(|| Error::usage(format!("vertex {u} not in the levelling")))?;
    let j = lv.level_of(v).ok_or_else(|| Error::usage(format!("vertex {v} not in the levelling")))?;
    if i > j {
        return Err(Error::usage("ancestor must sit in a level at or below the descendant"));
    }
    let mut frontier = VertexSet::new(g.vertex_count());
    frontier.insert(u);
    for level in i + 1..=j {
        let mut next = VertexSet::new(g.vertex_count());
        for x in frontier.iter() {
            next.union_with(&g.adj(x).intersection(&lv.levels[level]));
        }
        frontier = next;
        if frontier.is_empty() {
            return Ok(false);
        }
    }
    Ok(frontier.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, grotzsch, GROTZSCH_APEX};
    use crate::graph::Graph;

    fn path_graph(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn bfs_levelling_examples() {
        let c6 = cycle(6).unwrap();
        let lv = bfs_levelling(&c6, 0).unwrap();
        let got: Vec<Vec<usize>> = lv.levels.iter().map(|l| l.to_vec()).collect();
        assert_eq!(got, vec![vec![0], vec![1, 5], vec![2, 4], vec![3]]);
        assert!(validate_levelling(&c6, &lv, true).is_ok());

        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let lv = bfs_levelling(&star, 0).unwrap();
        assert_eq!(lv.levels.len(), 2);
        assert_eq!(lv.levels[1].to_vec(), vec![1, 2, 3, 4]);

        let g = grotzsch();
        let lv = bfs_levelling(&g, GROTZSCH_APEX).unwrap();
        assert_eq!(lv.levels.len(), 3);
        assert_eq!(lv.levels[1].to_vec(), vec![5, 6, 7, 8, 9]);
        assert_eq!(lv.levels[2].to_vec(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn validation_examples() {
        let c5 = cycle(5).unwrap();
        let lv = bfs_levelling(&c5, 0).unwrap();
        // The top level {2,3} contains an edge; still fine as a stable
        // levelling since only levels below the base must be stable.
        assert!(validate_levelling(&c5, &lv, true).is_ok());

        let p = path_graph(4);
        let broken = Levelling {
            levels: vec![
                VertexSet::from_iter(4, [0]),
                VertexSet::from_iter(4, [1]),
                VertexSet::from_iter(4, [3]),
            ],
        };
        assert_eq!(
            validate_levelling(&p, &broken, false),
            Err(LevellingViolation::NoParent { vertex: 3, level: 2 })
        );
    }

    #[test]
    fn validation_catches_skip_edges_and_instability() {
        // Clauses are checked in definition order: vertex 3 is missing a
        // parent, which is reported before the 0-3 skip edge.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let skip = Levelling {
            levels: vec![
                VertexSet::from_iter(4, [0]),
                VertexSet::from_iter(4, [1]),
                VertexSet::from_iter(4, [2, 3]),
            ],
        };
        assert_eq!(
            validate_levelling(&g, &skip, false),
            Err(LevellingViolation::NoParent { vertex: 3, level: 2 })
        );

        // Parent property holds everywhere; the 0-3 edge jumps two levels.
        let g2 = Graph::from_edges(4, [(0, 1), (1, 2), (1, 3), (0, 3)]).unwrap();
        let skip2 = Levelling {
            levels: vec![
                VertexSet::from_iter(4, [0]),
                VertexSet::from_iter(4, [1]),
                VertexSet::from_iter(4, [2, 3]),
            ],
        };
        assert_eq!(
            validate_levelling(&g2, &skip2, false),
            Err(LevellingViolation::SkipEdge { u: 0, level_u: 0, v: 3, level_v: 2 })
        );

        let tri = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let unstable = Levelling {
            levels: vec![
                VertexSet::from_iter(4, [0]),
                VertexSet::from_iter(4, [1, 2]),
                VertexSet::from_iter(4, [3]),
            ],
        };
        assert!(validate_levelling(&tri, &unstable, false).is_ok());
        assert_eq!(
            validate_levelling(&tri, &unstable, true),
            Err(LevellingViolation::UnstableLevel { level: 1, u: 1, v: 2 })
        );
    }

    #[test]
    fn cleanliness_examples() {
        // p_1-p_2-p_3 with C={p_3}, T=p_1-p_2: t_1 at distance 2.
        let p3 = path_graph(3);
        let lp = Lollipop {
            candy: VertexSet::from_iter(3, [2]),
            stick: vec![0, 1],
        };
        assert_eq!(cleanliness(&p3, &lp).unwrap(), 0);

        // p_1..p_5 with C={p_5}, T=p_1..p_4.
        let p5 = path_graph(5);
        let lp = Lollipop {
            candy: VertexSet::from_iter(5, [4]),
            stick: vec![0, 1, 2, 3],
        };
        assert_eq!(cleanliness(&p5, &lp).unwrap(), 2);

        let invalid = Lollipop {
            candy: VertexSet::from_iter(5, [4]),
            stick: vec![0],
        };
        assert!(cleanliness(&p5, &invalid).is_err());
    }

    #[test]
    fn lick_keeps_stick_when_tip_touches_target() {
        // Candy = {3,4,5} on a path; tip 2 is adjacent to 3.
        let p6 = path_graph(6);
        let lp = Lollipop {
            candy: VertexSet::from_iter(6, [3, 4, 5]),
            stick: vec![0, 1, 2],
        };
        let c_prime = VertexSet::from_iter(6, [3, 4]);
        let licked = lick(&p6, &lp, &c_prime).unwrap();
        assert_eq!(licked.stick, vec![0, 1, 2]);
        assert_eq!(licked.candy, c_prime);
    }

    #[test]
    fn lick_extends_through_forced_path() {
        // Candy is the path 3-4-5 hanging off tip 2; target {5} forces the
        // stick through 3 and 4.
        let p6 = path_graph(6);
        let lp = Lollipop {
            candy: VertexSet::from_iter(6, [3, 4, 5]),
            stick: vec![0, 1, 2],
        };
        let c_prime = VertexSet::from_iter(6, [5]);
        let licked = lick(&p6, &lp, &c_prime).unwrap();
        assert_eq!(licked.stick, vec![0, 1, 2, 3, 4]);
        assert_eq!(licked.candy.to_vec(), vec![5]);
        assert!(cleanliness(&p6, &licked).unwrap() >= cleanliness(&p6, &lp).unwrap());
    }

    #[test]
    fn boost_h0_is_identity() {
        let p6 = path_graph(6);
        let lp = Lollipop {
            candy: VertexSet::from_iter(6, [3, 4, 5]),
            stick: vec![0, 1, 2],
        };
        match boost_cleanliness(&p6, &lp, 0, 5).unwrap() {
            BoostOutcome::Boosted(out) => assert_eq!(out, lp),
            BoostOutcome::Failure(_) => panic!("h=0 cannot fail"),
        }
    }

    #[test]
    fn boost_raises_cleanliness_on_long_path() {
        // Long path, candy is the tail; h=1, κ=1 satisfies χ(C)=2 > 1.
        let p20 = path_graph(20);
        let lp = Lollipop {
            candy: VertexSet::from_iter(20, 2..20),
            stick: vec![0, 1],
        };
        let before = cleanliness(&p20, &lp).unwrap();
        match boost_cleanliness(&p20, &lp, 1, 1).unwrap() {
            BoostOutcome::Boosted(out) => {
                let after = cleanliness(&p20, &out).unwrap();
                assert!(after > before, "cleanliness {before} -> {after}");
                let chi = coloring::chi_of_subset(&p20, &out.candy).unwrap();
                assert!(chi >= 2 - 1);
            }
            BoostOutcome::Failure(_) => panic!("path balls are 1-colourable"),
        }
    }

    #[test]
    fn boost_hypothesis_violation_is_usage_error() {
        let p20 = path_graph(20);
        let lp = Lollipop {
            candy: VertexSet::from_iter(20, 2..20),
            stick: vec![0, 1],
        };
        // χ(C) = 2 <= 3·1: theorem inapplicable.
        assert!(matches!(boost_cleanliness(&p20, &lp, 3, 1), Err(Error::Usage(_))));
    }

    #[test]
    fn boost_failure_witness_verifies() {
        // C5 with a stick attached: the candy is forced through a vertex
        // whose N² contains an edge, so κ=0 must produce a witness.
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.push((5, 0));
        edges.push((6, 5));
        let g = Graph::from_edges(7, edges).unwrap();
        let lp = Lollipop {
            candy: VertexSet::from_iter(7, 0..5),
            stick: vec![6, 5],
        };
        match boost_cleanliness(&g, &lp, 1, 0).unwrap() {
            BoostOutcome::Failure(w) => assert!(w.verify(&g, 0).unwrap()),
            BoostOutcome::Boosted(_) => panic!("κ=0 cannot hold here"),
        }
    }

    #[test]
    fn ancestor_examples() {
        let p5 = path_graph(5);
        let lv = bfs_levelling(&p5, 0).unwrap();
        assert!(ancestors_descendants(&p5, &lv, 0, 4).unwrap());

        let c6 = cycle(6).unwrap();
        let lv = bfs_levelling(&c6, 0).unwrap();
        assert!(ancestors_descendants(&c6, &lv, 0, 3).unwrap());

        // 1 and 4 sit in levels 1 and 2 of C6 from 0, but on opposite sides.
        assert!(!ancestors_descendants(&c6, &lv, 1, 4).unwrap());
        assert!(matches!(ancestors_descendants(&c6, &lv, 3, 0), Err(Error::Usage(_))));
    }
}
