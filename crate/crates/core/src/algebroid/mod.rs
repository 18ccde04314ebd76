//! Lie algebroids over a chart: anchor matrix, structure functions, sections and the
//! Chevalley–Eilenberg differential.

mod derivations;
pub mod fixtures;
mod pairs;

use crate::error::{CalcError, Result};
use crate::exterior::{bits, evaluate_dirs, schouten_bracket, vector_field, Frame, GradedElement, Kind};
use crate::poly::{Chart, PolyExpr};
use crate::report::VerificationReport;

pub use derivations::{
    b_of_0k, b_of_k0, b_operator_suite, check_rho_compatible, d_rho, d_rho_star, d_rho_star_pow,
    lemma_formula_suite, rho_compatibility_witness, Rho0kTensor, RhoK0Tensor, TensorKind,
};
pub use pairs::{
    cp_check, cp_differential, cp_differential_cocycle, cp_from_base_form, cp_to_im, im_check,
    im_differential, im_differential_cocycle, im_to_cp, transitive_reconstruct_gamma,
    CharacteristicPair, IMForm,
};

/// Section of `A` as coefficients in the bundle frame.
pub type Section = Vec<PolyExpr>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebroidChart {
    chart: Chart,
    names: Vec<String>,
    /// `anchor[a][i]`: `ρ(e_a) = Σ_i anchor[a][i] ∂_i`.
    anchor: Vec<Vec<PolyExpr>>,
    /// `structure[a][b][c]`: `[e_a, e_b] = Σ_c structure[a][b][c] e_c`.
    structure: Vec<Vec<Vec<PolyExpr>>>,
    forms: Frame,
    vectors: Frame,
}

impl AlgebroidChart {
    pub fn new(
        chart: &Chart,
        names: Vec<String>,
        anchor: Vec<Vec<PolyExpr>>,
        structure: Vec<Vec<Vec<PolyExpr>>>,
    ) -> Result<Self> {
        let (n, r) = (chart.len(), names.len());
        let bad = |m: &str| Err(CalcError::InvalidAlgebroid(m.to_string()));
        if r == 0 {
            return bad("rank must be positive");
        }
        if anchor.len() != r || anchor.iter().any(|row| row.len() != n) {
            return bad("anchor must be a rank × dim matrix");
        }
        if structure.len() != r
            || structure.iter().any(|m| m.len() != r || m.iter().any(|v| v.len() != r))
        {
            return bad("structure functions must be a rank × rank × rank array");
        }
        let all = anchor.iter().flatten().chain(structure.iter().flatten().flatten());
        if all.clone().any(|f| f.chart() != chart) {
            return Err(CalcError::ChartMismatch);
        }
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    if !(&structure[a][b][c] + &structure[b][a][c]).is_zero() {
                        return Err(CalcError::InvalidAlgebroid(format!(
                            "structure functions not antisymmetric at ({}, {}; {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let forms = Frame::new(chart, names.clone(), Kind::Form)?;
        let vectors = forms.dual();
        Ok(AlgebroidChart { chart: chart.clone(), names, anchor, structure, forms, vectors })
    }

    /// Build from the anchor and a list of brackets `[e_a, e_b] = Σ coeff·e_c` with `a < b`.
    pub fn from_brackets(
        chart: &Chart,
        names: &[&str],
        anchor: Vec<Vec<PolyExpr>>,
        brackets: &[(usize, usize, usize, PolyExpr)],
    ) -> Result<Self> {
        let r = names.len();
        let mut structure = vec![vec![vec![PolyExpr::zero(chart); r]; r]; r];
        for (a, b, c, f) in brackets {
            if *a >= r || *b >= r || *c >= r || a == b {
                return Err(CalcError::InvalidAlgebroid("bracket indices out of range".into()));
            }
            structure[*a][*b][*c] = &structure[*a][*b][*c] + f;
            structure[*b][*a][*c] = &structure[*b][*a][*c] - f;
        }
        let names = names.iter().map(|s| s.to_string()).collect();
        Self::new(chart, names, anchor, structure)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn dim(&self) -> usize {
        self.chart.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn anchor_matrix(&self) -> &[Vec<PolyExpr>] {
        &self.anchor
    }

    pub fn structure(&self, a: usize, b: usize) -> &[PolyExpr] {
        &self.structure[a][b]
    }

    /// `dx^i ⊕ e^a`.
    pub fn split_forms(&self) -> &Frame {
        &self.forms
    }

    /// `∂_i ⊕ e_a`.
    pub fn split_vectors(&self) -> &Frame {
        &self.vectors
    }

    pub fn base_forms(&self) -> Frame {
        Frame::forms(&self.chart)
    }

    pub fn base_vectors(&self) -> Frame {
        Frame::vectors(&self.chart)
    }

    pub fn is_anchor_zero(&self) -> bool {
        self.anchor.iter().flatten().all(PolyExpr::is_zero)
    }

    pub fn frame_section(&self, a: usize) -> Section {
        let mut u = vec![PolyExpr::zero(&self.chart); self.rank()];
        u[a] = PolyExpr::one(&self.chart);
        u
    }

    pub fn section_label(&self, u: &Section) -> String {
        let terms: Vec<String> = u
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(a, f)| {
                if f == &PolyExpr::one(&self.chart) {
                    format!("e_{}", self.names[a])
                } else {
                    format!("({f})*e_{}", self.names[a])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// `ρ(u)` as a vector field on the chart.
    pub fn rho(&self, u: &[PolyExpr]) -> GradedElement {
        let coeffs: Vec<PolyExpr> = (0..self.dim())
            .map(|i| {
                u.iter()
                    .zip(&self.anchor)
                    .fold(PolyExpr::zero(&self.chart), |acc, (ua, row)| &acc + &(ua * &row[i]))
            })
            .collect();
        vector_field(&self.base_vectors(), &coeffs)
    }

    pub fn rho_e(&self, a: usize) -> GradedElement {
        vector_field(&self.base_vectors(), &self.anchor[a])
    }

    /// `ρ(u)` inside the split vector frame.
    pub fn rho_split(&self, u: &[PolyExpr]) -> GradedElement {
        self.rho(u).embed(&self.vectors).expect("base vector embeds")
    }

    /// `u` as a vector in the split frame.
    pub fn section_vector(&self, u: &[PolyExpr]) -> GradedElement {
        let mut coeffs = vec![PolyExpr::zero(&self.chart); self.dim()];
        coeffs.extend(u.iter().cloned());
        vector_field(&self.vectors, &coeffs)
    }

    /// `ρ*dx^i = Σ_a ρ^i_a e^a` in the split covector frame.
    pub fn rho_star(&self, i: usize) -> GradedElement {
        let mut coeffs = vec![PolyExpr::zero(&self.chart); self.dim()];
        coeffs.extend(self.anchor.iter().map(|row| row[i].clone()));
        vector_field(&self.forms, &coeffs)
    }

    /// `ρ(u) f`.
    pub fn anchor_act(&self, u: &[PolyExpr], f: &PolyExpr) -> PolyExpr {
        u.iter().zip(&self.anchor).fold(PolyExpr::zero(&self.chart), |acc, (ua, row)| {
            let df = row
                .iter()
                .enumerate()
                .fold(PolyExpr::zero(&self.chart), |s, (i, r)| &s + &(r * &f.partial(i)));
            &acc + &(ua * &df)
        })
    }

    /// `[u,v]^c = u^a v^b c^c_{ab} + ρ(u)(v^c) − ρ(v)(u^c)`.
    pub fn bracket(&self, u: &[PolyExpr], v: &[PolyExpr]) -> Section {
        let r = self.rank();
        (0..r)
            .map(|c| {
                let mut acc = &self.anchor_act(u, &v[c]) - &self.anchor_act(v, &u[c]);
                for a in 0..r {
                    if u[a].is_zero() {
                        continue;
                    }
                    for b in 0..r {
                        let s = &self.structure[a][b][c];
                        if !s.is_zero() && !v[b].is_zero() {
                            acc = &acc + &(&(&u[a] * &v[b]) * s);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Anchor-morphism and Jacobi checks on all frame pairs and triples.
    pub fn validate(&self) -> VerificationReport {
        validate_algebroid(self)
    }

    fn require_cochain(&self, w: &GradedElement) -> Result<()> {
        if w.frame() != &self.forms {
            return Err(CalcError::FrameMismatch("cochain must use the algebroid covector frame".into()));
        }
        if w.components().any(|(m, _)| m & ((1u64 << self.dim()) - 1) != 0) {
            return Err(CalcError::FrameMismatch("cochain has base covector factors".into()));
        }
        Ok(())
    }
}

pub fn section_is_zero(u: &[PolyExpr]) -> bool {
    u.iter().all(PolyExpr::is_zero)
}

pub fn validate_algebroid(alg: &AlgebroidChart) -> VerificationReport {
    let mut report = VerificationReport::new("algebroid");
    let r = alg.rank();
    let name = |a: usize| format!("e_{}", alg.names[a]);
    {
        let mut t = report.tally("anchor-morphism", "anchor is a morphism of brackets");
        for a in 0..r {
            for b in a + 1..r {
                let lhs = alg.rho(&alg.bracket(&alg.frame_section(a), &alg.frame_section(b)));
                let rhs = schouten_bracket(&alg.rho_e(a), &alg.rho_e(b)).expect("same frame");
                let diff = lhs.sub(&rhs).expect("same frame");
                t.expect(diff.is_zero(), || {
                    format!("pair ({}, {}): rho[u,v] - [rho u, rho v] = {diff}", name(a), name(b))
                });
            }
        }
    }
    {
        let mut t = report.tally("jacobi", "Jacobi identity of the section bracket");
        for a in 0..r {
            for b in a + 1..r {
                for c in b + 1..r {
                    let e = |x| alg.frame_section(x);
                    let mut sum = vec![PolyExpr::zero(&alg.chart); r];
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        let term = alg.bracket(&e(x), &alg.bracket(&e(y), &e(z)));
                        sum = sum.iter().zip(&term).map(|(s, t)| s + t).collect();
                    }
                    t.expect(section_is_zero(&sum), || {
                        format!(
                            "triple ({}, {}, {}): jacobiator = {}",
                            name(a),
                            name(b),
                            name(c),
                            alg.section_label(&sum)
                        )
                    });
                }
            }
        }
    }
    report
}

/// Chevalley–Eilenberg differential with trivial coefficients, on cochains written in the
/// bundle covectors `e^a`.
pub fn ce_differential(alg: &AlgebroidChart, lambda: &GradedElement) -> Result<GradedElement> {
    alg.require_cochain(lambda)?;
    let (n, r) = (alg.dim(), alg.rank());
    let p = lambda.degree();
    let mut out = GradedElement::zero(&alg.forms, p + 1);
    if p + 1 > r {
        return Ok(out);
    }
    let eval = |dirs: &[usize]| evaluate_dirs(lambda, &dirs.iter().map(|&a| n + a).collect::<Vec<_>>());
    for mask in crate::sampling::subsets(r, p + 1) {
        let idx = bits(mask);
        let mut value = PolyExpr::zero(&alg.chart);
        for i in 0..=p {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|(s, _)| *s != i).map(|(_, &x)| x).collect();
            let term = alg.anchor_act(&alg.frame_section(idx[i]), &eval(&rest));
            value = if i % 2 == 0 { &value + &term } else { &value - &term };
        }
        for i in 0..=p {
            for j in i + 1..=p {
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|(s, _)| *s != i && *s != j)
                    .map(|(_, &x)| x)
                    .collect();
                let br = alg.bracket(&alg.frame_section(idx[i]), &alg.frame_section(idx[j]));
                for (c, f) in br.iter().enumerate() {
                    if f.is_zero() {
                        continue;
                    }
                    let mut dirs = vec![c];
                    dirs.extend(&rest);
                    let term = f * &eval(&dirs);
                    value = if (i + j) % 2 == 0 { &value + &term } else { &value - &term };
                }
            }
        }
        let dirs: Vec<usize> = idx.iter().map(|a| n + a).collect();
        out = out.add(&GradedElement::basis(&alg.forms, &dirs, value))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn poly(c: &Chart, s: &str) -> PolyExpr {
        parse_poly(s, c).unwrap()
    }

    fn tangent_xy() -> AlgebroidChart {
        let c = Chart::new(["x", "y"]).unwrap();
        let anchor = vec![vec![poly(&c, "1"), poly(&c, "0")], vec![poly(&c, "0"), poly(&c, "1")]];
        AlgebroidChart::from_brackets(&c, &["x", "y"], anchor, &[]).unwrap()
    }

    fn nonabelian_bundle() -> AlgebroidChart {
        let c = Chart::new(["x"]).unwrap();
        let anchor = vec![vec![poly(&c, "0")], vec![poly(&c, "0")]];
        AlgebroidChart::from_brackets(&c, &["1", "2"], anchor, &[(0, 1, 0, poly(&c, "1"))]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(tangent_xy().validate().passed());
        assert!(nonabelian_bundle().validate().passed());
        let c = Chart::new(["x", "y"]).unwrap();
        let anchor = vec![vec![poly(&c, "1"), poly(&c, "0")], vec![poly(&c, "0"), poly(&c, "1")]];
        let bad = AlgebroidChart::from_brackets(&c, &["1", "2"], anchor, &[(0, 1, 0, poly(&c, "1"))]).unwrap();
        let rep = bad.validate();
        assert!(!rep.passed());
        let w = rep.check("anchor-morphism").unwrap().witness.clone().unwrap();
        assert!(w.contains("(e_1, e_2)"), "{w}");
    }

    #[test]
    fn rejects_non_antisymmetric_structure() {
        let c = Chart::new(["x"]).unwrap();
        let z = poly(&c, "0");
        let mut s = vec![vec![vec![z.clone(); 2]; 2]; 2];
        s[0][1][0] = poly(&c, "1");
        let e = AlgebroidChart::new(&c, vec!["1".into(), "2".into()], vec![vec![z.clone()], vec![z]], s);
        assert!(matches!(e, Err(CalcError::InvalidAlgebroid(_))));
    }

    #[test]
    fn ce_examples() {
        let a = tangent_xy();
        let f = GradedElement::scalar(a.split_forms(), poly(a.chart(), "x"));
        let df = ce_differential(&a, &f).unwrap();
        assert_eq!(df.coeff_of(&[2]), poly(a.chart(), "1"));
        assert!(df.coeff_of(&[3]).is_zero());
        assert!(ce_differential(&a, &df).unwrap().is_zero());

        let b = nonabelian_bundle();
        let e1 = GradedElement::basis(b.split_forms(), &[1], PolyExpr::one(b.chart()));
        let d = ce_differential(&b, &e1).unwrap();
        assert_eq!(d.coeff_of(&[1, 2]), poly(b.chart(), "-1"));
    }

    #[test]
    fn bracket_leibniz() {
        let a = tangent_xy();
        let c = a.chart().clone();
        let u = vec![poly(&c, "1"), poly(&c, "0")];
        let v = vec![poly(&c, "x*y"), poly(&c, "x^2")];
        assert_eq!(a.bracket(&u, &v), vec![poly(&c, "y"), poly(&c, "2*x")]);
    }
}
