//! Local pseudo-random generator for reproducible corpora.
//!
//! This is Vigna's xorshift64* (an xorshift64 step followed by a fixed odd
//! multiplier). It is reimplemented here, rather than pulled from a crate, so
//! that a corpus spec produces bit-identical graph streams in any
//! implementation of this toolkit that follows the same recipe:
//!
//! ```text
//! x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;  return x * 0x2545F4914F6CDD1D
//! ```
//!
//! Seed 0 (the one forbidden xorshift state) is remapped to a fixed nonzero
//! constant.

#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        XorShift64Star {
            state: if seed == 0 { 0x9E3779B97F4A7C15 } else { seed },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform-ish draw in `0..bound` by reduction. The modulo bias is
    /// irrelevant for corpus generation; determinism is what matters.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        self.next_u64() % bound
    }

    /// Bernoulli draw with rational probability `num/den`.
    pub fn bernoulli(&mut self, num: u64, den: u64) -> bool {
        assert!(den > 0 && num <= den);
        self.next_below(den) < num
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_sequence() {
        let mut a = XorShift64Star::new(42);
        let mut b = XorShift64Star::new(42);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
        // Frozen first output for seed 42: pins the exact algorithm.
        assert_eq!(xs[0], 6255019084209693600);
    }

    #[test]
    fn zero_seed_remapped() {
        let mut r = XorShift64Star::new(0);
        assert_ne!(r.next_u64(), 0);
    }
}
