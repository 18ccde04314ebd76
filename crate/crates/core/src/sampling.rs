//! Seeded random polynomials and graded elements (ChaCha8).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Frame, GradedElement};
use crate::poly::{int, Chart, PolyExpr};

/// Exponent vectors of total degree at most `d` in the listed variables, in a fixed order.
pub fn monomials(n: usize, vars: &[usize], d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    for &v in vars {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..=(d - used) {
                let mut e2 = e.clone();
                e2[v] = k;
                next.push(e2);
            }
        }
        out = next;
    }
    out
}

/// All `k`-subsets of `0..n` as bit masks, in increasing numeric order.
pub fn subsets(n: usize, k: usize) -> Vec<u64> {
    (0u64..(1u64 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    /// Maximum total degree of sampled coefficients.
    pub max_degree: u32,
    /// Coefficients are drawn from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
    /// Probability that a monomial is present.
    pub monomial_density: f64,
    /// Probability that a basis component is present.
    pub component_density: f64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_degree: 2,
            coeff_bound: 3,
            monomial_density: 0.35,
            component_density: 0.6,
        }
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn nonzero_int(&mut self) -> i64 {
        loop {
            let c = self.int_in(-self.coeff_bound, self.coeff_bound);
            if c != 0 {
                return c;
            }
        }
    }

    /// Random polynomial in the listed variables only.
    pub fn poly_in(&mut self, chart: &Chart, vars: &[usize]) -> PolyExpr {
        let mut out = PolyExpr::zero(chart);
        for e in monomials(chart.len(), vars, self.max_degree) {
            if self.chance(self.monomial_density) {
                let c = self.int_in(-self.coeff_bound, self.coeff_bound);
                out = &out + &PolyExpr::monomial(chart, e, int(c));
            }
        }
        out
    }

    pub fn poly(&mut self, chart: &Chart) -> PolyExpr {
        let vars: Vec<usize> = (0..chart.len()).collect();
        self.poly_in(chart, &vars)
    }

    /// Like [`Sampler::poly_in`] but never zero.
    pub fn nonzero_poly_in(&mut self, chart: &Chart, vars: &[usize]) -> PolyExpr {
        loop {
            let p = self.poly_in(chart, vars);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Random homogeneous element; components restricted to masks accepted by `allow`.
    pub fn element_where(
        &mut self,
        frame: &Frame,
        degree: usize,
        mut allow: impl FnMut(u64) -> bool,
        mut coeff: impl FnMut(&mut Self, u64) -> PolyExpr,
    ) -> GradedElement {
        let mut out = GradedElement::zero(frame, degree);
        for m in subsets(frame.dim(), degree) {
            if allow(m) && self.chance(self.component_density) {
                let c = coeff(self, m);
                let dirs = crate::exterior::bits(m);
                out = out
                    .add(&GradedElement::basis(frame, &dirs, c))
                    .expect("same frame and degree");
            }
        }
        out
    }

    pub fn element(&mut self, frame: &Frame, degree: usize) -> GradedElement {
        let chart = frame.chart().clone();
        self.element_where(frame, degree, |_| true, |s, _| s.poly(&chart))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_samples() {
        let c = Chart::new(["x", "y"]).unwrap();
        let f = Frame::forms(&c);
        let a: Vec<String> = {
            let mut s = Sampler::new(7);
            (0..5).map(|_| s.element(&f, 1).to_string()).collect()
        };
        let b: Vec<String> = {
            let mut s = Sampler::new(7);
            (0..5).map(|_| s.element(&f, 1).to_string()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, &[0, 1], 2).len(), 6);
        assert_eq!(monomials(4, &[0, 1, 2, 3], 2).len(), 15);
        assert_eq!(monomials(3, &[1], 2).len(), 3);
        assert_eq!(subsets(4, 2).len(), 6);
    }

    #[test]
    fn coefficients_are_bounded() {
        let c = Chart::new(["x", "y"]).unwrap();
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            let p = s.poly(&c);
            assert!(p.total_degree().unwrap_or(0) <= 2);
            for (_, k) in p.terms() {
                assert!(k.numer().magnitude() <= &num_bigint::BigUint::from(3u32));
            }
        }
    }
}
