//! Lie bialgebras with rational structure constants.

use num_traits::Zero;

use crate::error::{CalcError, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{int, Rational};
use crate::report::VerificationReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBialgebra {
    name: String,
    /// `c[i][j][k]`: `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
    c: Vec<Vec<Vec<Rational>>>,
    /// `delta[i][j][k]`: `δ(e_i) = ½ Σ_{j,k} delta[i][j][k] e_j∧e_k`.
    delta: Vec<Vec<Vec<Rational>>>,
}

fn cube(m: usize) -> Vec<Vec<Vec<Rational>>> {
    vec![vec![vec![Rational::zero(); m]; m]; m]
}

fn vec_label(v: &[Rational], prefix: &str) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("({c})*{prefix}{}", i + 1))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl LieBialgebra {
    /// `brackets`: `[e_i, e_j] += r e_k`; `cobrackets`: `δ(e_i) += r e_j∧e_k` (0-based, `i < j`, `j < k`).
    pub fn new(
        name: &str,
        m: usize,
        brackets: &[(usize, usize, usize, Rational)],
        cobrackets: &[(usize, usize, usize, Rational)],
    ) -> Result<Self> {
        if m == 0 {
            return Err(CalcError::InvalidBialgebra("dimension must be positive".into()));
        }
        let mut c = cube(m);
        for (i, j, k, r) in brackets {
            if *i >= m || *j >= m || *k >= m || i == j {
                return Err(CalcError::InvalidBialgebra(format!("bad bracket entry ({i}, {j}; {k})")));
            }
            c[*i][*j][*k] += r;
            c[*j][*i][*k] -= r;
        }
        let mut delta = cube(m);
        for (i, j, k, r) in cobrackets {
            if *i >= m || *j >= m || *k >= m || j == k {
                return Err(CalcError::InvalidBialgebra(format!("bad cobracket entry ({i}; {j}, {k})")));
            }
            delta[*i][*j][*k] += r;
            delta[*i][*k][*j] -= r;
        }
        Ok(LieBialgebra { name: name.to_string(), c, delta })
    }

    /// Coboundary bialgebra `δ(x) = ad_x r` for `r = Σ r_{jk} e_j∧e_k`.
    pub fn coboundary(
        name: &str,
        m: usize,
        brackets: &[(usize, usize, usize, Rational)],
        r: &[(usize, usize, Rational)],
    ) -> Result<Self> {
        let base = LieBialgebra::new(name, m, brackets, &[])?;
        let mut rt = vec![vec![Rational::zero(); m]; m];
        for (j, k, v) in r {
            if *j >= m || *k >= m || j == k {
                return Err(CalcError::InvalidBialgebra(format!("bad r-matrix entry ({j}, {k})")));
            }
            rt[*j][*k] += v;
            rt[*k][*j] -= v;
        }
        let mut delta = cube(m);
        for (x, dx) in delta.iter_mut().enumerate() {
            *dx = base.ad_tensor(x, &rt);
        }
        Ok(LieBialgebra { delta, ..base })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let m = self.dim();
        let mut out = vec![Rational::zero(); m];
        for i in 0..m {
            for j in 0..m {
                if u[i].is_zero() || v[j].is_zero() {
                    continue;
                }
                let w = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &w * &self.c[i][j][k];
                }
            }
        }
        out
    }

    /// `ad_{e_x}` on an antisymmetric 2-tensor.
    fn ad_tensor(&self, x: usize, t: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let m = self.dim();
        let mut out = vec![vec![Rational::zero(); m]; m];
        for j in 0..m {
            for k in 0..m {
                let mut s = Rational::zero();
                for l in 0..m {
                    s += &self.c[x][l][j] * &t[l][k] + &self.c[x][l][k] * &t[j][l];
                }
                out[j][k] = s;
            }
        }
        out
    }

    /// `[θ1, θ2]_*(u) = ⟨θ1∧θ2, δ(u)⟩`.
    pub fn dual_bracket(&self, t1: &[Rational], t2: &[Rational]) -> Vec<Rational> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                let mut s = Rational::zero();
                for j in 0..m {
                    for k in 0..m {
                        s += &t1[j] * &t2[k] * &self.delta[i][j][k];
                    }
                }
                s
            })
            .collect()
    }

    /// Basis of `{θ ∈ 𝔤* : θ([e_a, e_b]) = 0}`, the infinitesimally invariant covectors.
    pub fn invariant_covectors(&self) -> Vec<Vec<Rational>> {
        let m = self.dim();
        let rows: Matrix = (0..m)
            .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
            .map(|(a, b)| self.c[a][b].clone())
            .collect();
        linalg::nullspace(&rows, m)
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = int(1);
        v
    }
}

fn jacobi_witness(m: usize, br: impl Fn(&[Rational], &[Rational]) -> Vec<Rational>, unit: impl Fn(usize) -> Vec<Rational>, prefix: &str) -> Vec<String> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let (x, y, z) = (unit(a), unit(b), unit(c));
                let s1 = br(&x, &br(&y, &z));
                let s2 = br(&y, &br(&z, &x));
                let s3 = br(&z, &br(&x, &y));
                let sum: Vec<Rational> = (0..m).map(|i| &s1[i] + &s2[i] + &s3[i]).collect();
                if sum.iter().any(|v| !v.is_zero()) {
                    out.push(format!(
                        "({prefix}{}, {prefix}{}, {prefix}{}): cyclic sum {}",
                        a + 1,
                        b + 1,
                        c + 1,
                        vec_label(&sum, prefix)
                    ));
                }
            }
        }
    }
    out
}

pub fn bialgebra_suite(bialg: &LieBialgebra) -> VerificationReport {
    let mut report = VerificationReport::new(&format!("bialgebra {}", bialg.name));
    let m = bialg.dim();
    let triples = m * m.saturating_sub(1) * m.saturating_sub(2) / 6;
    {
        let mut t = report.tally("lie-jacobi", "Jacobi identity for the bracket of g");
        let w = jacobi_witness(m, |u, v| bialg.bracket(u, v), |i| bialg.unit(i), "e_");
        for _ in 0..triples.saturating_sub(w.len()) {
            t.ok();
        }
        for x in w {
            t.fail(|| x.clone());
        }
    }
    {
        let mut t = report.tally("co-jacobi", "Jacobi identity for the dual bracket on g*");
        let w = jacobi_witness(m, |u, v| bialg.dual_bracket(u, v), |i| bialg.unit(i), "e^");
        for _ in 0..triples.saturating_sub(w.len()) {
            t.ok();
        }
        for x in w {
            t.fail(|| x.clone());
        }
    }
    {
        let mut t = report.tally("cocycle", "delta[x,y] = ad_x delta(y) - ad_y delta(x)");
        for a in 0..m {
            for b in a + 1..m {
                let mut lhs = vec![vec![Rational::zero(); m]; m];
                for (i, ci) in bialg.c[a][b].iter().enumerate() {
                    for j in 0..m {
                        for k in 0..m {
                            lhs[j][k] += ci * &bialg.delta[i][j][k];
                        }
                    }
                }
                let ra = bialg.ad_tensor(a, &bialg.delta[b]);
                let rb = bialg.ad_tensor(b, &bialg.delta[a]);
                let bad = (0..m).flat_map(|j| (0..m).map(move |k| (j, k))).find(|&(j, k)| lhs[j][k] != &ra[j][k] - &rb[j][k]);
                t.expect(bad.is_none(), || {
                    let (j, k) = bad.unwrap();
                    format!(
                        "(e_{}, e_{}): component e_{}∧e_{} is {} on the left, {} on the right",
                        a + 1,
                        b + 1,
                        j + 1,
                        k + 1,
                        lhs[j][k],
                        &ra[j][k] - &rb[j][k]
                    )
                });
            }
        }
    }
    let inv = bialg.invariant_covectors();
    {
        let mut t = report.tally("invariant-annihilates-derived", "invariant covectors vanish on [g,g]");
        for th in &inv {
            for a in 0..m {
                for b in a + 1..m {
                    let br = bialg.bracket(&bialg.unit(a), &bialg.unit(b));
                    let v: Rational = th.iter().zip(&br).map(|(x, y)| x * y).sum();
                    t.expect(v.is_zero(), || format!("{} on [e_{}, e_{}] = {v}", vec_label(th, "e^"), a + 1, b + 1));
                }
            }
        }
    }
    {
        let mut t = report.tally(
            "invariant-closure",
            "invariant elements of g* form a Lie subalgebra under the dual bracket",
        );
        for (x, t1) in inv.iter().enumerate() {
            for t2 in &inv[x..] {
                let b = bialg.dual_bracket(t1, t2);
                let inside = b.iter().all(Zero::is_zero) || linalg::solve_in_span(&inv, &b).is_some();
                t.expect(inside, || {
                    format!(
                        "[{}, {}]_* = {} leaves the invariant subspace",
                        vec_label(t1, "e^"),
                        vec_label(t2, "e^"),
                        vec_label(&b, "e^")
                    )
                });
            }
        }
    }
    report.note(&format!("invariant subspace has dimension {}", inv.len()));
    report
}

/// The fixture bialgebras.
pub fn bialgebra_fixtures() -> Vec<LieBialgebra> {
    let one = || int(1);
    vec![
        LieBialgebra::new("abelian", 2, &[], &[]).unwrap(),
        LieBialgebra::new("affine", 2, &[(0, 1, 1, one())], &[]).unwrap(),
        LieBialgebra::new("abelian-cobracket", 2, &[], &[(0, 0, 1, one())]).unwrap(),
        LieBialgebra::new("affine-cobracket", 2, &[(0, 1, 1, one())], &[(1, 1, 0, one())]).unwrap(),
        LieBialgebra::coboundary(
            "sl2",
            3,
            &[(0, 1, 1, int(2)), (0, 2, 2, int(-2)), (1, 2, 0, one())],
            &[(1, 2, one())],
        )
        .unwrap(),
        LieBialgebra::coboundary("heisenberg", 3, &[(0, 1, 2, one())], &[(0, 1, one())]).unwrap(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn fixtures_pass() {
        for b in bialgebra_fixtures() {
            let r = bialgebra_suite(&b);
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn examples() {
        let all = bialgebra_fixtures();
        assert_eq!(all[0].invariant_covectors().len(), 2);
        assert_eq!(all[0].dual_bracket(&v(&[1, 0]), &v(&[0, 1])), v(&[0, 0]));
        let inv = all[1].invariant_covectors();
        assert_eq!(inv.len(), 1);
        assert!(inv[0][1].is_zero() && !inv[0][0].is_zero());
        assert_eq!(all[2].dual_bracket(&v(&[1, 0]), &v(&[0, 1])), v(&[1, 0]));
        // sl2: δ(e) = e∧h, δ(f) = −h∧f
        assert_eq!(all[4].dual_bracket(&v(&[0, 1, 0]), &v(&[1, 0, 0])), v(&[0, 1, 0]));
        assert!(all[4].invariant_covectors().is_empty());
        assert_eq!(all[5].invariant_covectors().len(), 2);
    }

    #[test]
    fn non_cocycle_is_reported() {
        let b = LieBialgebra::new("bad", 3, &[(0, 1, 2, int(1))], &[(2, 0, 1, int(1))]).unwrap();
        let r = bialgebra_suite(&b);
        assert!(!r.passed());
        assert!(r.check("cocycle").unwrap().witness.as_ref().unwrap().contains("(e_1, e_2)"));
        assert!(LieBialgebra::new("bad", 2, &[(0, 0, 1, int(1))], &[]).is_err());
    }
}
