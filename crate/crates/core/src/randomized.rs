//! Randomized reduction from A-degree at most 3 to A-degree at most 2.
//!
//! High-degree B-vertices are dropped first, then a random subset of B is
//! removed so that about a `p³` fraction of A becomes isolated and about a
//! `(1−p)³ = p` fraction keeps degree 3. A sample is accepted only if the
//! three concentration inequalities hold; after that the degree-3 vertices
//! are trimmed and the profile construction finishes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{epsilon_limit, format_rational};
use crate::constructive::{
    bihole_profile012, require_balanced, Algorithm, BoundedDegreeSolver, GuaranteedBihole,
};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Side};
use crate::Rational;

/// Root of `p = (1−p)³` in `(0, 1)`, to within `tolerance`.
///
/// `p³ − 3p² + 4p − 1` is strictly increasing, so Newton steps are kept
/// inside a shrinking bracket and fall back to bisection when they leave it.
pub fn solve_p_fixed_point(tolerance: f64) -> f64 {
    let f = |p: f64| ((p - 3.0) * p + 4.0) * p - 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut p = 0.3;
    for _ in 0..200 {
        let fp = f(p);
        if fp < 0.0 {
            lo = p;
        } else {
            hi = p;
        }
        let mut next = p - fp / ((3.0 * p - 6.0) * p + 4.0);
        if !(lo..=hi).contains(&next) {
            next = 0.5 * (lo + hi);
        }
        let done = (next - p).abs() < tolerance.min(1e-15) || hi - lo < tolerance.min(1e-15);
        p = next;
        if done {
            break;
        }
    }
    p
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplingParams {
    #[serde(serialize_with = "as_rational")]
    pub epsilon: Rational,
    pub p: f64,
    pub seed: u64,
    pub max_retries: usize,
}

fn as_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(*r))
}

impl SamplingParams {
    pub const DEFAULT_MAX_RETRIES: usize = 100;

    pub fn new(epsilon: Rational, seed: u64) -> Result<Self> {
        let params = SamplingParams {
            epsilon,
            p: solve_p_fixed_point(1e-12),
            seed,
            max_retries: Self::DEFAULT_MAX_RETRIES,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let eps = self.epsilon_f64();
        if self.epsilon <= Rational::from_integer(0) || eps >= epsilon_limit() {
            return Err(Error::InvalidInput(format!(
                "epsilon {} outside (0, 1/(2 ln 8))",
                format_rational(self.epsilon)
            )));
        }
        Ok(())
    }

    fn epsilon_f64(&self) -> f64 {
        *self.epsilon.numer() as f64 / *self.epsilon.denom() as f64
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SamplingTranscript {
    pub b_large_size: usize,
    /// A-side size of the graph after dropping large B-vertices.
    pub n1: usize,
    /// Number of sampled B-vertices.
    pub b1: usize,
    pub n0_2: usize,
    pub n3_2: usize,
    /// Rejected samples before the accepted one (or all of them).
    pub retries_used: usize,
    pub accepted: bool,
    /// Vertices trimmed from each side after sampling.
    pub trimmed: usize,
    /// Side size and A-degree profile of the final degree-2 instance.
    pub n_3: usize,
    pub n0_3: usize,
    pub n1_3: usize,
    pub n2_3: usize,
}

/// The three acceptance inequalities, inclusive.
pub fn check_concentration_sample(t: &SamplingTranscript, params: &SamplingParams) -> bool {
    let eps = params.epsilon_f64();
    let p = params.p;
    let n1 = t.n1 as f64;
    t.b1 as f64 <= (p + eps) * n1
        && t.n0_2 as f64 >= (p * p * p - eps) * n1
        && t.n3_2 as f64 <= (p + eps) * n1
}

/// `deg > ε^{3/2} √n`, evaluated exactly as `deg² q³ > p³ n` for `ε = p/q`.
fn is_large(degree: usize, n: usize, epsilon: Rational) -> bool {
    let (p, q) = (*epsilon.numer() as u128, *epsilon.denom() as u128);
    let d = degree as u128;
    d * d * q * q * q > p * p * p * n as u128
}

/// Vertices of `side` sorted by descending degree, ties by index.
fn by_degree_desc(degrees: &[usize], candidates: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = candidates.collect();
    v.sort_by_key(|&x| (std::cmp::Reverse(degrees[x]), x));
    v
}

pub fn bihole_random3(
    g: &BipartiteGraph,
    params: &SamplingParams,
    base: &BoundedDegreeSolver,
) -> Result<(GuaranteedBihole, SamplingTranscript)> {
    const NAME: &str = "rand3";
    require_balanced(g, NAME)?;
    if g.max_degree(Side::A) > 3 {
        return Err(Error::precondition(
            NAME,
            "some A-vertex has degree at least 4",
        ));
    }
    params.validate()?;
    let n = g.n_a();
    let mut t = SamplingTranscript::default();

    // stage 1: drop large B-vertices and as many A-vertices of highest degree
    let deg_a: Vec<usize> = (0..n).map(|a| g.degree(Side::A, a)).collect();
    let small_b: Vec<usize> = (0..n)
        .filter(|&b| !is_large(g.degree(Side::B, b), n, params.epsilon))
        .collect();
    t.b_large_size = n - small_b.len();
    let mut keep_a = by_degree_desc(&deg_a, 0..n).split_off(t.b_large_size);
    keep_a.sort_unstable();
    t.n1 = keep_a.len();
    let g1 = g.induced(&keep_a, &small_b);

    // stage 2 and 3: sample B until the counts concentrate
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut sampled = vec![false; g1.n_b()];
    loop {
        for s in sampled.iter_mut() {
            *s = rng.gen::<f64>() < params.p;
        }
        t.b1 = sampled.iter().filter(|&&s| s).count();
        let deg2 = |a: usize| {
            g1.neighbors(Side::A, a)
                .iter()
                .filter(|&&b| !sampled[b])
                .count()
        };
        t.n0_2 = (0..g1.n_a()).filter(|&a| deg2(a) == 0).count();
        t.n3_2 = (0..g1.n_a()).filter(|&a| deg2(a) == 3).count();
        if check_concentration_sample(&t, params) {
            t.accepted = true;
            break;
        }
        if t.retries_used == params.max_retries {
            return Err(Error::RetriesExhausted(Box::new(t)));
        }
        t.retries_used += 1;
    }
    let rest_b: Vec<usize> = (0..g1.n_b()).filter(|&b| !sampled[b]).collect();
    let g2 = g1.induced(&(0..g1.n_a()).collect::<Vec<_>>(), &rest_b);

    // stage 4: trim to a balanced graph without degree-3 A-vertices
    let k = t.b1.max(t.n3_2);
    t.trimmed = k;
    let deg2_a: Vec<usize> = (0..g2.n_a()).map(|a| g2.degree(Side::A, a)).collect();
    let mut keep3_a = by_degree_desc(&deg2_a, 0..g2.n_a()).split_off(k);
    keep3_a.sort_unstable();
    let mut alive = vec![false; g2.n_a()];
    for &a in &keep3_a {
        alive[a] = true;
    }
    let deg2_b: Vec<usize> = (0..g2.n_b())
        .map(|b| {
            g2.neighbors(Side::B, b)
                .iter()
                .filter(|&&a| alive[a])
                .count()
        })
        .collect();
    let mut keep3_b = by_degree_desc(&deg2_b, 0..g2.n_b()).split_off(k - t.b1);
    keep3_b.sort_unstable();
    let g3 = g2.induced(&keep3_a, &keep3_b);
    let profile = g3.degree_profile(Side::A);
    t.n_3 = g3.n_a();
    (t.n0_3, t.n1_3, t.n2_3) = (profile.n0(), profile.n1(), profile.n2());

    // stage 5: construct on the degree-2 instance and lift to g
    let inner = bihole_profile012(&g3, base)?;
    let a_map: Vec<usize> = keep3_a.iter().map(|&a| keep_a[a]).collect();
    let b_map: Vec<usize> = keep3_b.iter().map(|&b| small_b[rest_b[b]]).collect();
    let out = GuaranteedBihole {
        bihole: inner.bihole.lift(&a_map, &b_map),
        guarantee: inner.guarantee,
        algorithm: Algorithm::Rand3,
        trace: Vec::new(),
    }
    .checked(g)?;
    Ok((out, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_random_bounded;
    use std::time::Instant;

    #[test]
    fn fixed_point() {
        let start = Instant::now();
        let p = solve_p_fixed_point(1e-12);
        assert!(start.elapsed().as_micros() < 1000);
        assert!((p - 0.31767).abs() < 1e-5);
        assert!((p - (1.0 - p).powi(3)).abs() <= 1e-12);
        assert!((p * p * p - 0.0320581).abs() < 1e-6);
    }

    #[test]
    fn large_threshold_is_exact() {
        // ε = 1/10, n = 2000: ε³ n = 2
        let eps = Rational::new(1, 10);
        assert!(!is_large(1, 2000, eps));
        assert!(is_large(2, 2000, eps));
        // ε³ n = 4 at n = 4000, so degree 2 is not large
        assert!(!is_large(2, 4000, eps));
    }

    #[test]
    fn edgeless_pipeline() {
        let g = BipartiteGraph::empty(100, 100);
        let params = SamplingParams::new(Rational::new(1, 5), 7).unwrap();
        let (r, t) = bihole_random3(&g, &params, &BoundedDegreeSolver::default()).unwrap();
        assert_eq!(t.b_large_size, 0);
        assert_eq!(t.n3_2, 0);
        assert_eq!(t.n_3, 100 - t.b1);
        assert_eq!(r.order(), 100 - t.b1);
    }

    #[test]
    fn cubic_graphs_are_deterministic() {
        let g = gen_random_bounded(300, 3, Rational::from_integer(1), 11).unwrap();
        let params = SamplingParams::new(Rational::new(1, 10), 3).unwrap();
        let first = bihole_random3(&g, &params, &BoundedDegreeSolver::default()).unwrap();
        let second = bihole_random3(&g, &params, &BoundedDegreeSolver::default()).unwrap();
        assert_eq!(first, second);
        assert!(check_concentration_sample(&first.1, &params));
        assert!(first.0.bihole.is_valid_in(&g));
    }

    #[test]
    fn concentration_boundaries() {
        let params = SamplingParams::new(Rational::new(1, 10), 0).unwrap();
        let p = params.p;
        let n1 = 1000usize;
        let t = SamplingTranscript {
            n1,
            b1: ((p + 0.1) * n1 as f64).floor() as usize,
            n0_2: ((p * p * p - 0.1) * n1 as f64).ceil().max(0.0) as usize,
            n3_2: ((p + 0.1) * n1 as f64).floor() as usize,
            ..Default::default()
        };
        assert!(check_concentration_sample(&t, &params));
        let all = SamplingTranscript { b1: n1, ..t };
        assert!(!check_concentration_sample(&all, &params));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(SamplingParams::new(Rational::new(1, 4), 0).is_err());
        assert!(SamplingParams::new(Rational::from_integer(0), 0).is_err());
        let g = gen_random_bounded(10, 4, Rational::from_integer(1), 0).unwrap();
        let params = SamplingParams::new(Rational::new(1, 10), 0).unwrap();
        assert!(bihole_random3(&g, &params, &BoundedDegreeSolver::default()).is_err());
    }
}
