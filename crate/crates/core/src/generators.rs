//! Named graphs, the Mycielski construction and reproducible graph corpora.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::graph::Graph;
use crate::holes;
use crate::rng::XorShift64Star;

/// `n`-cycle with edges `i - (i+1 mod n)`.
pub fn cycle(n: usize) -> Result<Graph, Error> {
    if n < 3 {
        return Err(Error::usage(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Rim vertices `a_1..a_5` of [`grotzsch`].
pub const GROTZSCH_RIM: [usize; 5] = [0, 1, 2, 3, 4];
/// Branch vertices `b_1..b_5` of [`grotzsch`].
pub const GROTZSCH_BRANCH: [usize; 5] = [5, 6, 7, 8, 9];
/// Apex vertex `c` of [`grotzsch`].
pub const GROTZSCH_APEX: usize = 10;

/// The 11-vertex Grötzsch graph.
///
/// Vertices 0..4 are the rim `a_1..a_5` (a 5-cycle), 5..9 the branch vertices
/// `b_1..b_5` where `b_i` is adjacent to `a_{i-1}` and `a_{i+1}` (indices mod
/// 5), and 10 the apex `c` adjacent to all `b_i`. 20 edges in total.
pub fn grotzsch() -> Graph {
    let mut edges = Vec::with_capacity(20);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, (i + 4) % 5));
        edges.push((5 + i, (i + 1) % 5));
        edges.push((GROTZSCH_APEX, 5 + i));
    }
    Graph::from_edges(11, edges).expect("construction is loop-free and in range")
}

/// Standard Mycielski construction: vertices `V ∪ V' ∪ {w}`, edges of `g`,
/// `u'–v` for each edge `uv` of `g`, and `w–u'` for every shadow vertex.
pub fn mycielskian(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        edges.push((u, v));
        edges.push((n + u, v));
        edges.push((n + v, u));
    }
    for u in 0..n {
        edges.push((2 * n, n + u));
    }
    Graph::from_edges(2 * n + 1, edges).expect("construction is loop-free and in range")
}

/// The Petersen graph as the Kneser graph K(5,2): vertices are the 2-subsets
/// of {0..4} in lexicographic order, adjacent iff disjoint.
pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            pairs.push((a, b));
        }
    }
    let mut edges = Vec::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            if a != c && a != d && b != c && b != d {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(10, edges).expect("construction is loop-free and in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CorpusFilters {
    pub triangle_free: bool,
    pub pentagonal: bool,
    pub connected: bool,
}

impl CorpusFilters {
    fn accepts(&self, g: &Graph) -> bool {
        if self.connected && !g.is_connected() {
            return false;
        }
        if self.triangle_free && holes::find_triangle(g).is_some() {
            return false;
        }
        if self.pentagonal && !holes::is_pentagonal(g) {
            return false;
        }
        true
    }
}

/// Deterministic description of a graph corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub mode: CorpusMode,
    pub n_min: usize,
    pub n_max: usize,
    /// Edge probability as a rational `num/den` (random mode).
    pub edge_probability: (u64, u64),
    pub sample_count: usize,
    pub seed: u64,
    pub filters: CorpusFilters,
}

impl CorpusSpec {
    pub fn exhaustive(n_min: usize, n_max: usize) -> Self {
        CorpusSpec {
            mode: CorpusMode::Exhaustive,
            n_min,
            n_max,
            edge_probability: (1, 2),
            sample_count: 0,
            seed: 0,
            filters: CorpusFilters::default(),
        }
    }

    pub fn random(n_min: usize, n_max: usize, p: (u64, u64), count: usize, seed: u64) -> Self {
        CorpusSpec {
            mode: CorpusMode::Random,
            n_min,
            n_max,
            edge_probability: p,
            sample_count: count,
            seed,
            filters: CorpusFilters::default(),
        }
    }

    pub fn with_filters(mut self, filters: CorpusFilters) -> Self {
        self.filters = filters;
        self
    }

    fn validate(&self) -> Result<(), Error> {
        if self.n_min > self.n_max {
            return Err(Error::usage("corpus spec: n range is empty"));
        }
        let (num, den) = self.edge_probability;
        if den == 0 || num > den {
            return Err(Error::usage("corpus spec: edge probability must be a rational in [0, 1]"));
        }
        match self.mode {
            CorpusMode::Exhaustive => {
                if self.n_max > 8 {
                    return Err(Error::capability(format!(
                        "exhaustive enumeration is limited to n <= 8, got n_max = {}",
                        self.n_max
                    )));
                }
            }
            CorpusMode::Random => {
                if self.sample_count == 0 {
                    return Err(Error::usage("corpus spec: random mode needs sample_count >= 1"));
                }
            }
        }
        Ok(())
    }
}

/// Parse the CLI `key=value` form, e.g.
/// `mode=random,n=4-9,p=0.5,count=100,seed=7,filters=triangle-free+connected`.
impl FromStr for CorpusSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut mode = None;
        let mut n_min = None;
        let mut n_max = None;
        let mut p = (1u64, 2u64);
        let mut count = 1usize;
        let mut seed = 0u64;
        let mut filters = CorpusFilters::default();
        for item in s.split(',').filter(|i| !i.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("corpus spec item {item:?} is not key=value")))?;
            match key.trim() {
                "mode" => {
                    mode = Some(match value.trim() {
                        "exhaustive" => CorpusMode::Exhaustive,
                        "random" => CorpusMode::Random,
                        other => return Err(Error::parse(format!("unknown corpus mode {other:?}"))),
                    })
                }
                "n" => {
                    let value = value.trim();
                    let (lo, hi) = match value.split_once('-') {
                        Some((lo, hi)) => (lo, hi),
                        None => (value, value),
                    };
                    n_min = Some(parse_usize(lo)?);
                    n_max = Some(parse_usize(hi)?);
                }
                "p" => p = parse_probability(value.trim())?,
                "count" => count = parse_usize(value.trim())?,
                "seed" => {
                    seed = value
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(format!("bad seed {value:?}")))?
                }
                "filters" => {
                    for f in value.split('+').filter(|f| !f.is_empty()) {
                        match f.trim() {
                            "triangle-free" => filters.triangle_free = true,
                            "pentagonal" => filters.pentagonal = true,
                            "connected" => filters.connected = true,
                            other => return Err(Error::parse(format!("unknown filter {other:?}"))),
                        }
                    }
                }
                other => return Err(Error::parse(format!("unknown corpus spec key {other:?}"))),
            }
        }
        let mode = mode.ok_or_else(|| Error::parse("corpus spec needs mode=exhaustive|random"))?;
        let (n_min, n_max) = match (n_min, n_max) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::parse("corpus spec needs n=<k> or n=<lo>-<hi>")),
        };
        let spec = CorpusSpec {
            mode,
            n_min,
            n_max,
            edge_probability: p,
            sample_count: count,
            seed,
            filters,
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_usize(s: &str) -> Result<usize, Error> {
    s.parse().map_err(|_| Error::parse(format!("bad integer {s:?}")))
}

/// Decimal in [0,1] to an exact rational, e.g. "0.25" -> 25/100.
fn parse_probability(s: &str) -> Result<(u64, u64), Error> {
    let bad = || Error::parse(format!("bad probability {s:?}"));
    match s.split_once('.') {
        None => {
            let whole: u64 = s.parse().map_err(|_| bad())?;
            if whole > 1 {
                return Err(bad());
            }
            Ok((whole, 1))
        }
        Some((whole, frac)) => {
            if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let whole: u64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
            let den = 10u64.pow(frac.len() as u32);
            let num = whole * den + frac.parse::<u64>().map_err(|_| bad())?;
            if num > den {
                return Err(bad());
            }
            Ok((num, den))
        }
    }
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            CorpusMode::Exhaustive => "exhaustive",
            CorpusMode::Random => "random",
        };
        write!(f, "mode={mode},n={}-{}", self.n_min, self.n_max)?;
        if self.mode == CorpusMode::Random {
            write!(
                f,
                ",p={}/{},count={},seed={}",
                self.edge_probability.0, self.edge_probability.1, self.sample_count, self.seed
            )?;
        }
        Ok(())
    }
}

/// Pairs `(u, v)`, `u < v`, in lexicographic order; bit `k` of an edge mask
/// refers to the `k`-th pair.
fn pair_order(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

enum StreamState {
    Exhaustive { n: usize, mask: u64, pairs: Vec<(usize, usize)> },
    Random { rng: XorShift64Star, emitted: usize, attempts: u64 },
    Done,
}

/// Deterministic stream of corpus graphs.
///
/// Exhaustive mode enumerates all labeled graphs on each `n` in the range in
/// ascending edge-mask order. Random mode draws Erdős–Rényi graphs and
/// rejects those failing a filter until `sample_count` graphs pass; it gives
/// up (with a capability error item) after a generous attempt cap.
pub struct CorpusStream {
    spec: CorpusSpec,
    state: StreamState,
}

const MAX_ATTEMPTS_PER_SAMPLE: u64 = 10_000;

pub fn corpus_stream(spec: &CorpusSpec) -> Result<CorpusStream, Error> {
    spec.validate()?;
    let state = match spec.mode {
        CorpusMode::Exhaustive => StreamState::Exhaustive {
            n: spec.n_min,
            mask: 0,
            pairs: pair_order(spec.n_min),
        },
        CorpusMode::Random => StreamState::Random {
            rng: XorShift64Star::new(spec.seed),
            emitted: 0,
            attempts: 0,
        },
    };
    Ok(CorpusStream { spec: spec.clone(), state })
}

impl Iterator for CorpusStream {
    type Item = Result<Graph, Error>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            match &mut self.state {
                StreamState::Done => return None,
                StreamState::Exhaustive { n, mask, pairs } => {
                    if *mask >> pairs.len() != 0 {
                        if *n == self.spec.n_max {
                            self.state = StreamState::Done;
                            continue;
                        }
                        *n += 1;
                        *mask = 0;
                        *pairs = pair_order(*n);
                    }
                    let edges = pairs
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *mask >> k & 1 == 1)
                        .map(|(_, &e)| e);
                    let g = Graph::from_edges(*n, edges).expect("pairs are valid edges");
                    *mask += 1;
                    if self.spec.filters.accepts(&g) {
                        return Some(Ok(g));
                    }
                }
                StreamState::Random { rng, emitted, attempts } => {
                    if *emitted == self.spec.sample_count {
                        self.state = StreamState::Done;
                        continue;
                    }
                    if *attempts >= MAX_ATTEMPTS_PER_SAMPLE * self.spec.sample_count as u64 {
                        self.state = StreamState::Done;
                        return Some(Err(Error::capability(
                            "random corpus: filters rejected too many draws",
                        )));
                    }
                    *attempts += 1;
                    let span = (self.spec.n_max - self.spec.n_min + 1) as u64;
                    let n = self.spec.n_min + rng.next_below(span) as usize;
                    let (num, den) = self.spec.edge_probability;
                    let mut g = Graph::empty(n);
                    for (u, v) in pair_order(n) {
                        if rng.bernoulli(num, den) {
                            g.add_edge_unchecked(u, v);
                        }
                    }
                    if self.spec.filters.accepts(&g) {
                        *emitted += 1;
                        return Some(Ok(g));
                    }
                }
            }
        }
    }
}

/// Convenience collector; fails on the first stream error.
pub fn corpus_vec(spec: &CorpusSpec) -> Result<Vec<Graph>, Error> {
    corpus_stream(spec)?.collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::chromatic_number;
    use crate::graph::are_isomorphic;

    #[test]
    fn cycle_basics() {
        let c5 = cycle(5).unwrap();
        assert_eq!((c5.vertex_count(), c5.edge_count()), (5, 5));
        assert!(cycle(4).unwrap().is_bipartite());
        let c7 = cycle(7).unwrap();
        assert_eq!(crate::holes::odd_hole_number(&c7), 7);
        assert!(cycle(2).is_err());
    }

    #[test]
    fn grotzsch_shape() {
        let g = grotzsch();
        assert_eq!(g.vertex_count(), 11);
        // 5 rim + 10 branch-to-rim + 5 apex edges.
        assert_eq!(g.edge_count(), 20);
        assert_eq!(g.degree(GROTZSCH_APEX), 5);
    }

    #[test]
    fn mycielskian_of_c5_is_grotzsch() {
        let m = mycielskian(&cycle(5).unwrap());
        assert!(are_isomorphic(&m, &grotzsch()));
    }

    #[test]
    fn mycielskian_of_k2_is_c5() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(are_isomorphic(&mycielskian(&k2), &cycle(5).unwrap()));
    }

    #[test]
    fn mycielskian_vertex_count() {
        let g = petersen();
        assert_eq!(mycielskian(&g).vertex_count(), 2 * g.vertex_count() + 1);
    }

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert!(p.vertices().all(|v| p.degree(v) == 3));
        assert!(crate::holes::is_pentagonal(&p));
        assert_eq!(chromatic_number(&p).unwrap().0, 3);
    }

    #[test]
    fn exhaustive_counts() {
        let spec = CorpusSpec::exhaustive(3, 3);
        assert_eq!(corpus_vec(&spec).unwrap().len(), 8);

        // Brute-force oracle count of triangle-free labeled 4-vertex graphs.
        let mut oracle = 0;
        for g in corpus_vec(&CorpusSpec::exhaustive(4, 4)).unwrap() {
            let mut triangle = false;
            for a in 0..4 {
                for b in a + 1..4 {
                    for c in b + 1..4 {
                        if g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c) {
                            triangle = true;
                        }
                    }
                }
            }
            if !triangle {
                oracle += 1;
            }
        }
        assert_eq!(oracle, 41);
        let spec = CorpusSpec::exhaustive(4, 4).with_filters(CorpusFilters {
            triangle_free: true,
            ..Default::default()
        });
        assert_eq!(corpus_vec(&spec).unwrap().len(), 41);
    }

    #[test]
    fn exhaustive_rejects_large_n() {
        assert!(matches!(
            corpus_stream(&CorpusSpec::exhaustive(3, 9)),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn random_streams_are_reproducible() {
        let spec = CorpusSpec::random(4, 7, (1, 2), 25, 99);
        let a = corpus_vec(&spec).unwrap();
        let b = corpus_vec(&spec).unwrap();
        assert_eq!(a.len(), 25);
        assert!(a.iter().zip(&b).all(|(x, y)| x == y));
    }

    #[test]
    fn mycielskian_preserves_triangle_freeness() {
        let spec = CorpusSpec::random(3, 6, (2, 5), 40, 7).with_filters(CorpusFilters {
            triangle_free: true,
            ..Default::default()
        });
        for g in corpus_vec(&spec).unwrap() {
            assert!(crate::holes::find_triangle(&mycielskian(&g)).is_none());
        }
    }

    #[test]
    fn mycielskian_increments_chromatic_number() {
        let spec = CorpusSpec::random(2, 7, (1, 2), 30, 3);
        for g in corpus_vec(&spec).unwrap() {
            if g.vertex_count() == 0 {
                continue;
            }
            let chi = chromatic_number(&g).unwrap().0;
            let chi_m = chromatic_number(&mycielskian(&g)).unwrap().0;
            assert_eq!(chi_m, chi + 1, "graph {g:?}");
        }
    }

    #[test]
    fn spec_parsing() {
        let spec: CorpusSpec = "mode=random,n=4-9,p=0.25,count=10,seed=5,filters=triangle-free+connected"
            .parse()
            .unwrap();
        assert_eq!(spec.mode, CorpusMode::Random);
        assert_eq!((spec.n_min, spec.n_max), (4, 9));
        assert_eq!(spec.edge_probability, (25, 100));
        assert!(spec.filters.triangle_free && spec.filters.connected);

        let spec: CorpusSpec = "mode=exhaustive,n=5".parse().unwrap();
        assert_eq!((spec.n_min, spec.n_max), (5, 5));

        assert!("mode=warp,n=3".parse::<CorpusSpec>().is_err());
        assert!("n=3".parse::<CorpusSpec>().is_err());
        assert!("mode=random,n=3,p=1.5".parse::<CorpusSpec>().is_err());
    }
}
