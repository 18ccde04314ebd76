//! Closed-form bracket and action tables for multiplicative forms on `T*M`.

use super::cotangent::CotangentModel;
use crate::error::{CalcError, Result};
use crate::exterior::{bits, GradedElement};
use crate::poly::PolyExpr;

/// One term of the normal form: `f(q) p^j dq^I` or `f(q) dq^K∧dp^a` (indices sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultTerm {
    Linear { idx: Vec<usize>, j: usize, coeff: PolyExpr },
    Mixed { idx: Vec<usize>, a: usize, coeff: PolyExpr },
}

impl MultTerm {
    pub fn degree(&self) -> usize {
        match self {
            MultTerm::Linear { idx, .. } => idx.len(),
            MultTerm::Mixed { idx, .. } => idx.len() + 1,
        }
    }

    pub fn to_form(&self, model: &CotangentModel) -> GradedElement {
        match self {
            MultTerm::Linear { idx, j, coeff } => dq(model, idx).mul_poly(&(coeff * &model.p(*j))),
            MultTerm::Mixed { idx, a, coeff } => dq(model, idx).wedge(&dp(model, *a)).unwrap().mul_poly(coeff),
        }
    }
}

/// `dq^{i_1}∧…∧dq^{i_k}` in the given order.
pub fn dq(model: &CotangentModel, idx: &[usize]) -> GradedElement {
    let mut out = GradedElement::scalar(model.forms(), PolyExpr::one(model.chart()));
    for &i in idx {
        out = out
            .wedge(&GradedElement::basis(model.forms(), &[i], PolyExpr::one(model.chart())))
            .unwrap();
    }
    out
}

pub fn dp(model: &CotangentModel, j: usize) -> GradedElement {
    GradedElement::basis(model.forms(), &[model.n() + j], PolyExpr::one(model.chart()))
}

/// Split a multiplicative form into normal-form terms.
pub fn decompose(model: &CotangentModel, theta: &GradedElement) -> Result<Vec<MultTerm>> {
    if let Some(w) = model.is_multiplicative_form(theta)?.witness {
        return Err(CalcError::NotMultiplicative(w));
    }
    let n = model.n();
    let p_vars: Vec<usize> = (n..2 * n).collect();
    let mut out = Vec::new();
    for (m, f) in theta.components() {
        let dirs = bits(m);
        let (qs, ps): (Vec<usize>, Vec<usize>) = dirs.into_iter().partition(|&d| d < n);
        if let Some(&pd) = ps.first() {
            out.push(MultTerm::Mixed { idx: qs, a: pd - n, coeff: f.clone() });
        } else {
            for (e, g) in f.split_by(&p_vars) {
                let j = e.iter().position(|&k| k == 1).expect("linear in p");
                out.push(MultTerm::Linear { idx: qs.clone(), j, coeff: g });
            }
        }
    }
    Ok(out)
}

fn without(idx: &[usize], s: usize) -> Vec<usize> {
    idx.iter().enumerate().filter(|&(t, _)| t != s).map(|(_, &i)| i).collect()
}

/// `(−1)^e`.
fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn zero(model: &CotangentModel, degree: usize) -> GradedElement {
    GradedElement::zero(model.forms(), degree)
}

fn sum(model: &CotangentModel, degree: usize, parts: impl IntoIterator<Item = GradedElement>) -> GradedElement {
    parts.into_iter().fold(zero(model, degree), |acc, t| acc.add(&t).unwrap())
}

/// Which reading of the multi-index table to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableReading {
    /// Signs and derivatives exactly as displayed.
    Displayed,
    /// The reading that matches the Koszul bracket.
    Corrected,
}

fn wedge_all(parts: &[GradedElement]) -> GradedElement {
    parts[1..].iter().fold(parts[0].clone(), |acc, w| acc.wedge(w).unwrap())
}

/// `[Θ_{I,j} p^j dq^I, Θ'_{A,b} p^b dq^A]_P` as its two sums. Displayed:
/// `(−1)^{k−s}ΘΘ'_{A,i_s} p^j dq^{I_s}∧dq^A − (−1)^{l−t}Θ'Θ_{I,a_t} p^b dq^{A_t}∧dq^I`;
/// corrected second sum: `(−1)^t Θ'Θ_{I,a_t} p^b dq^I∧dq^{A_t}`.
pub fn kform_line_1_terms(model: &CotangentModel, x: &MultTerm, y: &MultTerm, reading: TableReading) -> [GradedElement; 2] {
    let (MultTerm::Linear { idx: i, j, coeff: f }, MultTerm::Linear { idx: a, j: b, coeff: g }) = (x, y) else {
        panic!("line 1 pairs two p-linear terms");
    };
    let (k, l) = (i.len(), a.len());
    let fg = f * g;
    let first = sum(
        model,
        k + l - 1,
        (0..k).filter(|&s| i[s] == *b).map(|s| {
            wedge_all(&[dq(model, &without(i, s)), dq(model, a)])
                .mul_poly(&(&fg * &model.p(*j)))
                .scale_int(sign(k - (s + 1)))
        }),
    );
    let second = sum(
        model,
        k + l - 1,
        (0..l).filter(|&t| a[t] == *j).map(|t| {
            let w = match reading {
                TableReading::Displayed => wedge_all(&[dq(model, &without(a, t)), dq(model, i)]).scale_int(-sign(l - (t + 1))),
                TableReading::Corrected => wedge_all(&[dq(model, i), dq(model, &without(a, t))]).scale_int(sign(t + 1)),
            };
            w.mul_poly(&(&fg * &model.p(*b)))
        }),
    );
    [first, second]
}

/// `[Θ_{I,j} p^j dq^I, Θ'_{L,b} dq^L∧dp^b]_P` as its two terms. Displayed:
/// `(−1)^{l−s}Θ'Θ_{I,l_s} dq^{L_s}∧dp^b∧dq^I − Θ'∂_{q^b}Θ p^j dq^L∧dq^I`; corrected:
/// `(−1)^s Θ'Θ_{I,l_s} dq^I∧dq^{L_s}∧dp^b + (−1)^{l−1}Θ'∂_{q^b}Θ p^j dq^I∧dq^L`.
pub fn kform_line_2_terms(model: &CotangentModel, x: &MultTerm, y: &MultTerm, reading: TableReading) -> [GradedElement; 2] {
    let (MultTerm::Linear { idx: i, j, coeff: f }, MultTerm::Mixed { idx: ls, a: b, coeff: g }) = (x, y) else {
        panic!("line 2 pairs a p-linear term with a dp term");
    };
    let (k, l) = (i.len(), ls.len() + 1);
    let first = sum(
        model,
        k + l - 1,
        (0..ls.len()).filter(|&s| ls[s] == *j).map(|s| {
            let w = match reading {
                TableReading::Displayed => {
                    wedge_all(&[dq(model, &without(ls, s)), dp(model, *b), dq(model, i)]).scale_int(sign(l - (s + 1)))
                }
                TableReading::Corrected => {
                    wedge_all(&[dq(model, i), dq(model, &without(ls, s)), dp(model, *b)]).scale_int(sign(s + 1))
                }
            };
            w.mul_poly(&(f * g))
        }),
    );
    let c = &(g * &f.partial(*b)) * &model.p(*j);
    let second = match reading {
        TableReading::Displayed => wedge_all(&[dq(model, ls), dq(model, i)]).scale_int(-1),
        TableReading::Corrected => wedge_all(&[dq(model, i), dq(model, ls)]).scale_int(sign(l - 1)),
    };
    [first, second.mul_poly(&c)]
}

/// `[Θ_{K,a} dq^K∧dp^a, Θ'_{L,b} dq^L∧dp^b]_P` as its two terms. Displayed:
/// `−Θ∂_{q^a}Θ' dq^K∧dq^L∧dp^b + Θ'∂_{p^b}Θ dq^L∧dq^K∧dp^a`; corrected second term:
/// `Θ'∂_{q^b}Θ dq^K∧dq^L∧dp^a`.
pub fn kform_line_3_terms(model: &CotangentModel, x: &MultTerm, y: &MultTerm, reading: TableReading) -> [GradedElement; 2] {
    let (MultTerm::Mixed { idx: ks, a, coeff: f }, MultTerm::Mixed { idx: ls, a: b, coeff: g }) = (x, y) else {
        panic!("line 3 pairs two dp terms");
    };
    let first = wedge_all(&[dq(model, ks), dq(model, ls), dp(model, *b)]).mul_poly(&(f * &g.partial(*a))).scale_int(-1);
    let second = match reading {
        // the displayed ∂/∂p^b vanishes identically on p-free coefficients
        TableReading::Displayed => wedge_all(&[dq(model, ls), dq(model, ks), dp(model, *a)]).mul_poly(&(g * &f.partial(model.n() + *b))),
        TableReading::Corrected => wedge_all(&[dq(model, ks), dq(model, ls), dp(model, *a)]).mul_poly(&(g * &f.partial(*b))),
    };
    [first, second]
}

/// `Θ ▷ γ_L dq^L` for one term of `Θ`, upstairs. Displayed:
/// `−(−1)^{l−s}γΘ_{I,l_s} dq^{L_s}∧dq^I − Θ_{K,a}∂_{q^a}γ dq^K∧dq^L`; corrected first sum:
/// `(−1)^s γΘ_{I,l_s} dq^I∧dq^{L_s}`.
pub fn kform_action_terms(
    model: &CotangentModel,
    x: &MultTerm,
    ls: &[usize],
    gamma: &PolyExpr,
    reading: TableReading,
) -> GradedElement {
    let l = ls.len();
    match x {
        MultTerm::Linear { idx: i, j, coeff: f } => sum(
            model,
            i.len() + l - 1,
            (0..l).filter(|&s| ls[s] == *j).map(|s| {
                let w = match reading {
                    TableReading::Displayed => wedge_all(&[dq(model, &without(ls, s)), dq(model, i)]).scale_int(-sign(l - (s + 1))),
                    TableReading::Corrected => wedge_all(&[dq(model, i), dq(model, &without(ls, s))]).scale_int(sign(s + 1)),
                };
                w.mul_poly(&(gamma * f))
            }),
        ),
        MultTerm::Mixed { idx: ks, a, coeff: f } => {
            wedge_all(&[dq(model, ks), dq(model, ls)]).mul_poly(&(f * &gamma.partial(*a))).scale_int(-1)
        }
    }
}

/// `[Θ, Θ']_P` assembled from the multi-index table; `[dp-term, p-linear term]` by graded antisymmetry.
pub fn kform_bracket_table(
    model: &CotangentModel,
    x: &GradedElement,
    y: &GradedElement,
    reading: TableReading,
) -> Result<GradedElement> {
    let (k, l) = (x.degree(), y.degree());
    let mut out = zero(model, (k + l).saturating_sub(1));
    if k == 0 || l == 0 {
        return Err(CalcError::Degree("the table covers forms of degree ≥ 1".into()));
    }
    let (xs, ys) = (decompose(model, x)?, decompose(model, y)?);
    for s in &xs {
        for t in &ys {
            let terms = match (s, t) {
                (MultTerm::Linear { .. }, MultTerm::Linear { .. }) => kform_line_1_terms(model, s, t, reading),
                (MultTerm::Linear { .. }, MultTerm::Mixed { .. }) => kform_line_2_terms(model, s, t, reading),
                (MultTerm::Mixed { .. }, MultTerm::Linear { .. }) => {
                    let swapped = sign((k - 1) * (l - 1) + 1);
                    kform_line_2_terms(model, t, s, reading).map(|w| w.scale_int(swapped))
                }
                (MultTerm::Mixed { .. }, MultTerm::Mixed { .. }) => kform_line_3_terms(model, s, t, reading),
            };
            for w in terms {
                out = out.add(&w)?;
            }
        }
    }
    Ok(out)
}

/// `Θ ▷ γ` assembled from the table, as a form on the base.
pub fn kform_action_table(
    model: &CotangentModel,
    x: &GradedElement,
    gamma: &GradedElement,
    reading: TableReading,
) -> Result<GradedElement> {
    let up = model.s_pullback(gamma)?;
    let mut out = zero(model, (x.degree() + gamma.degree()).saturating_sub(1));
    for s in decompose(model, x)? {
        for (m, g) in up.components() {
            out = out.add(&kform_action_terms(model, &s, &bits(m), g, reading))?;
        }
    }
    model.s_extract(&out)
}

/// Coefficients of a multiplicative 1-form: `T[i][j]` of `p^j dq^i` and `t[l]` of `dp^l`.
pub struct OneFormData {
    pub t_lin: Vec<Vec<PolyExpr>>,
    pub t_dp: Vec<PolyExpr>,
}

impl OneFormData {
    pub fn of(model: &CotangentModel, theta: &GradedElement) -> Result<Self> {
        if theta.degree() != 1 {
            return Err(CalcError::Degree("expected a 1-form".into()));
        }
        let n = model.n();
        let zero = PolyExpr::zero(model.chart());
        let mut t_lin = vec![vec![zero.clone(); n]; n];
        let mut t_dp = vec![zero; n];
        for term in decompose(model, theta)? {
            match term {
                MultTerm::Linear { idx, j, coeff } => t_lin[idx[0]][j] = &t_lin[idx[0]][j] + &coeff,
                MultTerm::Mixed { a, coeff, .. } => t_dp[a] = &t_dp[a] + &coeff,
            }
        }
        Ok(OneFormData { t_lin, t_dp })
    }

    pub fn linear_part(&self, model: &CotangentModel) -> GradedElement {
        let n = model.n();
        sum(
            model,
            1,
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| dq(model, &[i]).mul_poly(&(&self.t_lin[i][j] * &model.p(j)))),
        )
    }

    pub fn dp_part(&self, model: &CotangentModel) -> GradedElement {
        sum(model, 1, (0..model.n()).map(|l| dp(model, l).mul_poly(&self.t_dp[l])))
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

/// `[Θ_{i,j} p^j dq^i, Θ'_{a,b} p^b dq^a]_P = Θ_{i,j}Θ'_{a,i} p^j dq^a − Θ'_{a,b}Θ_{i,a} p^b dq^i`.
pub fn line_1(model: &CotangentModel, x: &OneFormData, y: &OneFormData) -> GradedElement {
    let n = model.n();
    let first = sum(
        model,
        1,
        pairs(n).flat_map(|(i, j)| (0..n).map(move |a| (i, j, a))).map(|(i, j, a)| {
            dq(model, &[a]).mul_poly(&(&(&x.t_lin[i][j] * &y.t_lin[a][i]) * &model.p(j)))
        }),
    );
    let second = sum(
        model,
        1,
        pairs(n).flat_map(|(a, b)| (0..n).map(move |i| (a, b, i))).map(|(a, b, i)| {
            dq(model, &[i]).mul_poly(&(&(&y.t_lin[a][b] * &x.t_lin[i][a]) * &model.p(b)))
        }),
    );
    first.sub(&second).unwrap()
}

/// `[Θ_{i,j} p^j dq^i, Θ'_l dp^l]_P = Θ'_l ∂_{q^l}Θ_{i,j} p^j dq^i`.
pub fn line_2(model: &CotangentModel, x: &OneFormData, y: &OneFormData) -> GradedElement {
    let n = model.n();
    sum(
        model,
        1,
        pairs(n).flat_map(|(i, j)| (0..n).map(move |l| (i, j, l))).map(|(i, j, l)| {
            dq(model, &[i]).mul_poly(&(&(&y.t_dp[l] * &x.t_lin[i][j].partial(l)) * &model.p(j)))
        }),
    )
}

/// `[Θ_k dp^k, Θ'_l dp^l]_P = −Θ_k ∂_{q^k}Θ'_l dp^l + Θ'_l ∂_{q^l}Θ_k dp^k`.
pub fn line_3(model: &CotangentModel, x: &OneFormData, y: &OneFormData) -> GradedElement {
    let n = model.n();
    let first = sum(model, 1, pairs(n).map(|(k, l)| dp(model, l).mul_poly(&(&x.t_dp[k] * &y.t_dp[l].partial(k)))));
    let second = sum(model, 1, pairs(n).map(|(k, l)| dp(model, k).mul_poly(&(&y.t_dp[l] * &x.t_dp[k].partial(l)))));
    second.sub(&first).unwrap()
}

/// `Θ ▷ γ_k dq^k = −γ_k Θ_{i,k} dq^i − Θ_l ∂_{q^l}γ_k dq^k`, upstairs; `gamma[k]` over the model chart.
pub fn line_4(model: &CotangentModel, x: &OneFormData, gamma: &[PolyExpr]) -> GradedElement {
    let n = model.n();
    let first = sum(model, 1, pairs(n).map(|(i, k)| dq(model, &[i]).mul_poly(&(&gamma[k] * &x.t_lin[i][k]))));
    let second = sum(model, 1, pairs(n).map(|(l, k)| dq(model, &[k]).mul_poly(&(&x.t_dp[l] * &gamma[k].partial(l)))));
    first.add(&second).unwrap().neg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::koszul_bracket;
    use crate::poly::parse_poly;

    #[test]
    fn one_form_lines_on_examples() {
        let m = CotangentModel::new(1).unwrap();
        let p = m.poisson();
        let f = |s: &str, l: &str| {
            GradedElement::from_labels(m.forms(), &[l], parse_poly(s, m.chart()).unwrap()).unwrap()
        };
        let a = f("q*p", "dq");
        let b = f("q", "dp");
        let (da, db) = (OneFormData::of(&m, &a).unwrap(), OneFormData::of(&m, &b).unwrap());
        let br = koszul_bracket(&p, &a, &b).unwrap();
        assert_eq!(br.to_string(), "q*p*dq");
        assert_eq!(line_2(&m, &da, &db), br);
        let c = f("q^2", "dp");
        let dc = OneFormData::of(&m, &c).unwrap();
        assert_eq!(line_3(&m, &db, &dc), koszul_bracket(&p, &b, &c).unwrap());
        assert_eq!(line_1(&m, &da, &da), koszul_bracket(&p, &a, &a).unwrap());
        let gamma = [parse_poly("q", m.chart()).unwrap()];
        assert_eq!(line_4(&m, &db, &gamma), f("-q", "dq"));
    }

    #[test]
    fn decompose_round_trip() {
        let m = CotangentModel::new(2).unwrap();
        let c = |s: &str| parse_poly(s, m.chart()).unwrap();
        let w = GradedElement::from_labels(m.forms(), &["dq1", "dq2"], c("q1*p2 - p1"))
            .unwrap()
            .add(&GradedElement::from_labels(m.forms(), &["dq2", "dp1"], c("q2^2")).unwrap())
            .unwrap();
        let terms = decompose(&m, &w).unwrap();
        assert_eq!(terms.len(), 3);
        let back = terms.iter().fold(GradedElement::zero(m.forms(), 2), |acc, t| acc.add(&t.to_form(&m)).unwrap());
        assert_eq!(back, w);
    }

    #[test]
    fn multi_index_table_matches_bracket() {
        use crate::exterior::Kind;
        use crate::sampling::Sampler;
        let m = CotangentModel::new(2).unwrap();
        let p = m.poisson();
        let mut s = Sampler::new(4);
        let mut displayed_failures = 0;
        for _ in 0..12 {
            for k in 1..=2 {
                for l in 1..=2 {
                    let x = m.sample_multiplicative(&mut s, Kind::Form, k);
                    let y = m.sample_multiplicative(&mut s, Kind::Form, l);
                    let br = koszul_bracket(&p, &x, &y).unwrap();
                    assert_eq!(kform_bracket_table(&m, &x, &y, TableReading::Corrected).unwrap(), br);
                    if kform_bracket_table(&m, &x, &y, TableReading::Displayed).unwrap() != br {
                        displayed_failures += 1;
                    }
                    let g = m.s_extract(&dq(&m, &[0, 1][..l]).mul_poly(&s.poly_in(m.chart(), &[0, 1]))).unwrap();
                    let act = m.action_on_base(&x, &g).unwrap();
                    assert_eq!(kform_action_table(&m, &x, &g, TableReading::Corrected).unwrap(), act);
                }
            }
        }
        assert!(displayed_failures > 0);
    }
}
