//! Small Lie algebroids on a single chart, each in its standard frame and a few
//! integer frame changes.

use super::AlgebroidChart;
use crate::linalg::{self, Matrix};
use crate::poly::{parse_poly, Chart, PolyExpr};
use crate::sampling::Sampler;

#[derive(Clone, Debug)]
pub struct AlgebroidFixture {
    pub name: String,
    pub algebroid: AlgebroidChart,
    /// Right inverse of the anchor, `σ(∂_i) = Σ_a sigma[i][a] e_a`, when transitive.
    pub sigma: Option<Vec<Vec<PolyExpr>>>,
}

struct Base {
    name: &'static str,
    coords: &'static [&'static str],
    /// `anchor[a]` as strings.
    anchor: &'static [&'static [&'static str]],
    brackets: &'static [(usize, usize, usize, i64)],
    sigma: Option<&'static [&'static [&'static str]]>,
}

const BASES: &[Base] = &[
    Base {
        name: "tangent",
        coords: &["x", "y"],
        anchor: &[&["1", "0"], &["0", "1"]],
        brackets: &[],
        sigma: Some(&[&["1", "0"], &["0", "1"]]),
    },
    Base {
        name: "sl2-line",
        coords: &["x"],
        anchor: &[&["1"], &["x"], &["x^2"]],
        brackets: &[(0, 1, 0, 1), (0, 2, 1, 2), (1, 2, 2, 1)],
        sigma: Some(&[&["1", "0", "0"]]),
    },
    Base {
        name: "affine-line",
        coords: &["x"],
        anchor: &[&["1"], &["x"]],
        brackets: &[(0, 1, 0, 1)],
        sigma: Some(&[&["1", "0"]]),
    },
    Base {
        name: "rank3-plane",
        coords: &["x", "y"],
        anchor: &[&["1", "0"], &["0", "1"], &["0", "x"]],
        brackets: &[(0, 2, 1, 1)],
        sigma: Some(&[&["1", "0", "0"], &["0", "1", "0"]]),
    },
    Base {
        name: "so3-space",
        coords: &["x", "y", "z"],
        anchor: &[&["0", "-z", "y"], &["z", "0", "-x"], &["-y", "x", "0"]],
        brackets: &[(0, 1, 2, -1), (1, 2, 0, -1), (0, 2, 1, 1)],
        sigma: None,
    },
];

fn parse(chart: &Chart, s: &str) -> PolyExpr {
    parse_poly(s, chart).expect("fixture polynomial")
}

fn constant(chart: &Chart, m: &Matrix) -> Vec<Vec<PolyExpr>> {
    m.iter()
        .map(|row| row.iter().map(|c| PolyExpr::constant(chart, c.clone())).collect())
        .collect()
}

fn poly_mul(a: &[Vec<PolyExpr>], b: &[Vec<PolyExpr>]) -> Vec<Vec<PolyExpr>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).fold(PolyExpr::zero(row[0].chart()), |acc, (x, brow)| &acc + &(x * &brow[j])))
                .collect()
        })
        .collect()
}

/// Unimodular integer matrix from a few elementary row operations.
fn unimodular(r: usize, sampler: &mut Sampler) -> Matrix {
    let mut g = linalg::identity(r);
    for _ in 0..3 * r {
        let i = sampler.index(r);
        let j = (i + 1 + sampler.index(r - 1)) % r;
        let k = crate::poly::int(sampler.nonzero_int().clamp(-2, 2));
        let src = g[i].clone();
        for (t, s) in g[j].iter_mut().zip(src) {
            *t += &k * s;
        }
    }
    if sampler.chance(0.5) {
        g.swap(0, r - 1);
        for c in g[0].iter_mut() {
            *c = -c.clone();
        }
    }
    g
}

/// Rewrite in the frame `e'_a = Σ_b g[a][b] e_b`.
pub fn change_frame(alg: &AlgebroidChart, g: &Matrix, names: Vec<String>) -> AlgebroidChart {
    let chart = alg.chart();
    let r = alg.rank();
    let gp = constant(chart, g);
    let ginv = constant(chart, &linalg::inverse(g).expect("invertible frame change"));
    let anchor = poly_mul(&gp, alg.anchor_matrix());
    let mut structure = vec![vec![vec![PolyExpr::zero(chart); r]; r]; r];
    for (a, sa) in structure.iter_mut().enumerate() {
        for (b, sab) in sa.iter_mut().enumerate() {
            // [e'_a, e'_b] in the old frame
            let mut old = vec![PolyExpr::zero(chart); r];
            for c in 0..r {
                for d in 0..r {
                    let w = &gp[a][c] * &gp[b][d];
                    if w.is_zero() {
                        continue;
                    }
                    for (f, s) in alg.structure(c, d).iter().enumerate() {
                        old[f] = &old[f] + &(&w * s);
                    }
                }
            }
            for (g_idx, out) in sab.iter_mut().enumerate() {
                *out = old.iter().zip(&ginv).fold(PolyExpr::zero(chart), |acc, (o, row)| &acc + &(o * &row[g_idx]));
            }
        }
    }
    AlgebroidChart::new(chart, names, anchor, structure).expect("frame change preserves shape")
}

fn base_fixture(base: &Base) -> AlgebroidFixture {
    let chart = Chart::new(base.coords.iter().copied()).expect("fixture chart");
    let r = base.anchor.len();
    let anchor = base.anchor.iter().map(|row| row.iter().map(|s| parse(&chart, s)).collect()).collect();
    let brackets: Vec<_> = base
        .brackets
        .iter()
        .map(|&(a, b, c, k)| (a, b, c, PolyExpr::from_int(&chart, k)))
        .collect();
    let names: Vec<String> = (1..=r).map(|a| a.to_string()).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let algebroid = AlgebroidChart::from_brackets(&chart, &names, anchor, &brackets).expect("fixture algebroid");
    let sigma = base
        .sigma
        .map(|rows| rows.iter().map(|row| row.iter().map(|s| parse(&chart, s)).collect()).collect());
    AlgebroidFixture { name: base.name.to_string(), algebroid, sigma }
}

/// Each base in its standard frame plus `changes` random unimodular frames.
pub fn algebroid_fixtures_with(seed: u64, changes: usize) -> Vec<AlgebroidFixture> {
    let mut sampler = Sampler::new(seed);
    let mut out = Vec::new();
    for base in BASES {
        let fx = base_fixture(base);
        let r = fx.algebroid.rank();
        for t in 0..changes {
            let g = unimodular(r, &mut sampler);
            let names = (1..=r).map(|a| format!("f{a}")).collect();
            let algebroid = change_frame(&fx.algebroid, &g, names);
            let chart = fx.algebroid.chart();
            let ginv = constant(chart, &linalg::inverse(&g).expect("unimodular"));
            let sigma = fx.sigma.as_ref().map(|s| poly_mul(s, &ginv));
            out.push(AlgebroidFixture { name: format!("{}#{}", base.name, t + 1), algebroid, sigma });
        }
        out.insert(out.len() - changes, fx);
    }
    out
}

/// The 20 standard fixtures: 5 bases in 4 frames each.
pub fn algebroid_fixtures() -> Vec<AlgebroidFixture> {
    algebroid_fixtures_with(0x6770_6463, 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        let all = algebroid_fixtures();
        assert_eq!(all.len(), 20);
        for fx in &all {
            let report = fx.algebroid.validate();
            assert!(report.passed(), "{}: {}", fx.name, report.to_text());
            if let Some(sigma) = &fx.sigma {
                for (i, row) in sigma.iter().enumerate() {
                    let v = fx.algebroid.rho(row);
                    for j in 0..fx.algebroid.dim() {
                        let want = if i == j { 1 } else { 0 };
                        assert_eq!(v.coeff(1 << j), PolyExpr::from_int(fx.algebroid.chart(), want), "{}", fx.name);
                    }
                }
            }
        }
        assert_eq!(all[0].name, "tangent");
        assert_eq!(all[1].name, "tangent#1");
    }
}
