//! The cotangent bundle `T*M ⇉ M` as an abelian group bundle (fiberwise addition).

use crate::algebroid::{b_of_0k, b_of_k0, AlgebroidChart};
use crate::error::{CalcError, Result};
use crate::exterior::{bits, contract, de_rham_d, koszul_bracket, Frame, GradedElement, Kind};
use crate::poly::{Chart, PolyExpr};
use crate::sampling::{subsets, Sampler};

#[derive(Clone, Debug)]
pub struct CotangentModel {
    n: usize,
    chart: Chart,
    base: Chart,
    forms: Frame,
    vectors: Frame,
    algebroid: AlgebroidChart,
}

/// Outcome of a multiplicativity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicativity {
    pub witness: Option<String>,
}

impl Multiplicativity {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

fn indexed(prefix: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }
}

impl CotangentModel {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 8 {
            return Err(CalcError::InvalidChart(format!("cotangent model needs 1 ≤ n ≤ 8, got {n}")));
        }
        let mut names = indexed("q", n);
        names.extend(indexed("p", n));
        let chart = Chart::new(names)?;
        let base = Chart::new(indexed("x", n))?;
        let forms = Frame::forms(&chart);
        let vectors = Frame::vectors(&chart);
        let zero = PolyExpr::zero(&base);
        let fiber = indexed("p", n);
        let fiber: Vec<&str> = fiber.iter().map(String::as_str).collect();
        let algebroid = AlgebroidChart::from_brackets(&base, &fiber, vec![vec![zero; n]; n], &[])?;
        Ok(CotangentModel { n, chart, base, forms, vectors, algebroid })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn base_chart(&self) -> &Chart {
        &self.base
    }

    pub fn forms(&self) -> &Frame {
        &self.forms
    }

    pub fn vectors(&self) -> &Frame {
        &self.vectors
    }

    /// The vertical algebroid `A = ker s_*|_M` with zero anchor and bracket.
    pub fn algebroid(&self) -> &AlgebroidChart {
        &self.algebroid
    }

    pub fn q(&self, i: usize) -> PolyExpr {
        PolyExpr::var_at(&self.chart, i)
    }

    pub fn p(&self, j: usize) -> PolyExpr {
        PolyExpr::var_at(&self.chart, self.n + j)
    }

    fn p_vars(&self) -> Vec<usize> {
        (self.n..2 * self.n).collect()
    }

    fn fiber_mask(&self) -> u64 {
        ((1u64 << self.n) - 1) << self.n
    }

    fn base_mask(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// Monomial weight: fiber degree plus the number of `dp` (forms) or `∂q` (multivectors) factors.
    fn weight_witness(&self, x: &GradedElement, weighted: u64, factor: &str) -> Option<String> {
        let p_vars = self.p_vars();
        for (m, f) in x.components() {
            let count = (m & weighted).count_ones();
            for (e, _) in f.terms() {
                let pdeg: u32 = p_vars.iter().map(|&v| e[v]).sum();
                if pdeg + count != 1 {
                    let label: Vec<String> = bits(m).into_iter().map(|d| x.frame().label(d)).collect();
                    let label = if label.is_empty() { "1".into() } else { label.join("∧") };
                    return Some(format!(
                        "component {label} has coefficient {f}: fiber degree {pdeg} with {count} {factor} factor(s), need total 1"
                    ));
                }
            }
        }
        None
    }

    fn require_frame(&self, x: &GradedElement, kind: Kind) -> Result<()> {
        let frame = match kind {
            Kind::Form => &self.forms,
            Kind::Multivector => &self.vectors,
        };
        if x.frame() != frame {
            return Err(CalcError::FrameMismatch(format!("expected an element over {}", describe(frame))));
        }
        Ok(())
    }

    /// Linear normal form: `p`-linear `dq`-blocks plus `p`-free blocks with one `dp`.
    pub fn is_multiplicative_form(&self, theta: &GradedElement) -> Result<Multiplicativity> {
        self.require_frame(theta, Kind::Form)?;
        Ok(Multiplicativity { witness: self.weight_witness(theta, self.fiber_mask(), "dp") })
    }

    /// Linear normal form: `p`-linear `∂p`-blocks plus `p`-free blocks with one `∂q`.
    pub fn is_multiplicative_multivector(&self, pi: &GradedElement) -> Result<Multiplicativity> {
        self.require_frame(pi, Kind::Multivector)?;
        Ok(Multiplicativity { witness: self.weight_witness(pi, self.base_mask(), "∂q") })
    }

    pub fn is_multiplicative(&self, x: &GradedElement) -> Result<Multiplicativity> {
        match x.frame().kind() {
            Kind::Form => self.is_multiplicative_form(x),
            Kind::Multivector => self.is_multiplicative_multivector(x),
        }
    }

    fn require_multiplicative(&self, x: &GradedElement) -> Result<()> {
        match self.is_multiplicative(x)?.witness {
            Some(w) => Err(CalcError::NotMultiplicative(w)),
            None => Ok(()),
        }
    }

    /// `ω = Σ dq^i∧dp^i` and `P = Σ ∂q^i∧∂p^i`.
    pub fn canonical_structures(&self) -> (GradedElement, GradedElement) {
        let one = PolyExpr::one(&self.chart);
        let mut omega = GradedElement::zero(&self.forms, 2);
        let mut p = GradedElement::zero(&self.vectors, 2);
        for i in 0..self.n {
            let dirs = [i, self.n + i];
            omega = omega.add(&GradedElement::basis(&self.forms, &dirs, one.clone())).unwrap();
            p = p.add(&GradedElement::basis(&self.vectors, &dirs, one.clone())).unwrap();
        }
        (omega, p)
    }

    pub fn poisson(&self) -> GradedElement {
        self.canonical_structures().1
    }

    /// `ω♯` restricted to multiplicative elements, where it is an isomorphism.
    pub fn omega_sharp_iso(&self, x: &GradedElement) -> Result<GradedElement> {
        self.require_multiplicative(x)?;
        self.omega_sharp(x)
    }

    /// `ω♯`: `∂p^i ↦ −dq^i`, `∂q^i ↦ dp^i` on multivectors, and its inverse on forms.
    pub fn omega_sharp(&self, x: &GradedElement) -> Result<GradedElement> {
        if x.chart() != &self.chart {
            return Err(CalcError::ChartMismatch);
        }
        let n = self.n;
        let (target, images): (&Frame, Vec<(usize, i64)>) = match x.frame().kind() {
            Kind::Multivector => (&self.forms, (0..2 * n).map(|d| if d < n { (d + n, 1) } else { (d - n, -1) }).collect()),
            Kind::Form => (&self.vectors, (0..2 * n).map(|d| if d < n { (d + n, -1) } else { (d - n, 1) }).collect()),
        };
        let mut out = GradedElement::zero(target, x.degree());
        for (m, f) in x.components() {
            let mut acc = GradedElement::scalar(target, f.clone());
            for d in bits(m) {
                let (e, s) = images[d];
                acc = acc.wedge(&GradedElement::basis(target, &[e], PolyExpr::from_int(&self.chart, s)))?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Restrict to `p = 0` and read the result in the split frame of `A ⊕ TM`.
    fn restrict_to_base(&self, x: &GradedElement) -> Result<GradedElement> {
        let n = self.n;
        let frame = match x.frame().kind() {
            Kind::Form => self.algebroid.split_forms(),
            Kind::Multivector => self.algebroid.split_vectors(),
        };
        let zero = PolyExpr::zero(&self.base);
        let images: Vec<PolyExpr> = (0..2 * n)
            .map(|i| if i < n { PolyExpr::var_at(&self.base, i) } else { zero.clone() })
            .collect();
        // the split frames list base directions first, then the fiber directions
        let dir_map: Vec<usize> = (0..2 * n).collect();
        x.reframe(frame, &dir_map, |f| f.compose(&self.base, &images).expect("same length"))
    }

    /// The block with exactly one `A`-factor of `x|_M`; asserts `x|_M = Bθ` (resp. `Bπ`).
    pub fn leading_terms(&self, x: &GradedElement) -> Result<GradedElement> {
        self.require_multiplicative(x)?;
        let restricted = self.restrict_to_base(x)?;
        let n = self.n;
        let leading = match x.frame().kind() {
            Kind::Form => restricted.filter(|m| (m >> n).count_ones() == 1),
            Kind::Multivector => restricted.filter(|m| (m & ((1 << n) - 1)).count_ones() == 1),
        };
        let b = match x.frame().kind() {
            Kind::Form => b_of_0k(&self.algebroid, &leading)?,
            Kind::Multivector => b_of_k0(&self.algebroid, &leading)?,
        };
        if b != restricted {
            return Err(CalcError::Validation(format!(
                "restriction {restricted} differs from B applied to the leading term {b}"
            )));
        }
        Ok(leading)
    }

    /// `s*γ`: `x^i ↦ q^i`.
    pub fn s_pullback(&self, gamma: &GradedElement) -> Result<GradedElement> {
        if gamma.frame() != &Frame::forms(&self.base) {
            return Err(CalcError::FrameMismatch("s_pullback expects a form on the base chart".into()));
        }
        let map: Vec<usize> = (0..self.n).collect();
        gamma.reframe(&self.forms, &map, |f| f.reembed(&self.chart, &map))
    }

    /// Inverse of [`CotangentModel::s_pullback`] on its image.
    pub fn s_extract(&self, theta: &GradedElement) -> Result<GradedElement> {
        self.require_frame(theta, Kind::Form)?;
        let p_vars = self.p_vars();
        for (m, f) in theta.components() {
            if m & self.fiber_mask() != 0 || p_vars.iter().any(|&v| f.depends_on(v)) {
                let label: Vec<String> = bits(m).into_iter().map(|d| self.forms.label(d)).collect();
                return Err(CalcError::NotInImage(format!(
                    "component {} with coefficient {f} is not pulled back from the base",
                    label.join("∧")
                )));
            }
        }
        let base = Frame::forms(&self.base);
        let dir_map: Vec<usize> = (0..2 * self.n).map(|d| d % self.n).collect();
        let images: Vec<PolyExpr> = (0..2 * self.n)
            .map(|i| if i < self.n { PolyExpr::var_at(&self.base, i) } else { PolyExpr::zero(&self.base) })
            .collect();
        theta.reframe(&base, &dir_map, |f| f.compose(&self.base, &images).expect("same length"))
    }

    /// `Θ ▷ γ`, defined by `s*(Θ ▷ γ) = [Θ, s*γ]_P` with the canonical `P`.
    pub fn action_on_base(&self, theta: &GradedElement, gamma: &GradedElement) -> Result<GradedElement> {
        self.require_multiplicative(theta)?;
        let up = koszul_bracket(&self.poisson(), theta, &self.s_pullback(gamma)?)?;
        self.s_extract(&up)
    }

    /// Invariant extension of a section of `∧A` (no `∂x` factors): `e_j ↦ ∂p^j`, `x ↦ q`.
    pub fn invariant_lift(&self, u: &GradedElement) -> Result<GradedElement> {
        if u.frame() != self.algebroid.split_vectors() {
            return Err(CalcError::FrameMismatch("invariant_lift expects a section of ∧A".into()));
        }
        if u.components().any(|(m, _)| m & self.base_mask() != 0) {
            return Err(CalcError::NotVertical(format!("{u} has components along the base")));
        }
        let map: Vec<usize> = (0..self.n).collect();
        let dir_map: Vec<usize> = (0..2 * self.n).collect();
        u.reframe(&self.vectors, &dir_map, |f| f.reembed(&self.chart, &map))
    }

    /// Inverse of [`CotangentModel::invariant_lift`]: a `p`-free multivector with only `∂p` factors.
    pub fn invariant_unlift(&self, x: &GradedElement) -> Result<GradedElement> {
        self.require_frame(x, Kind::Multivector)?;
        let p_vars = self.p_vars();
        for (m, f) in x.components() {
            if m & self.base_mask() != 0 || p_vars.iter().any(|&v| f.depends_on(v)) {
                return Err(CalcError::NotVertical(format!("{x} is not an invariant vertical multivector")));
            }
        }
        let images: Vec<PolyExpr> = (0..2 * self.n)
            .map(|i| if i < self.n { PolyExpr::var_at(&self.base, i) } else { PolyExpr::zero(&self.base) })
            .collect();
        let dir_map: Vec<usize> = (0..2 * self.n).collect();
        x.reframe(self.algebroid.split_vectors(), &dir_map, |f| f.compose(&self.base, &images).expect("same length"))
    }

    /// Random element of the linear normal form: `p`-linear blocks without fiber factors and
    /// `p`-free blocks with one fiber factor (`dp` for forms, `∂q` for multivectors).
    pub fn sample_multiplicative(&self, sampler: &mut Sampler, kind: Kind, k: usize) -> GradedElement {
        let n = self.n;
        let frame = match kind {
            Kind::Form => &self.forms,
            Kind::Multivector => &self.vectors,
        };
        // directions without weight, and directions carrying weight one
        let (plain, heavy): (Vec<usize>, Vec<usize>) = match kind {
            Kind::Form => ((0..n).collect(), (n..2 * n).collect()),
            Kind::Multivector => ((n..2 * n).collect(), (0..n).collect()),
        };
        let q_vars: Vec<usize> = (0..n).collect();
        let density = sampler.component_density;
        let mut out = GradedElement::zero(frame, k);
        if k <= n {
            for mask in subsets(n, k) {
                let dirs: Vec<usize> = bits(mask).into_iter().map(|d| plain[d]).collect();
                for j in 0..n {
                    if sampler.chance(density) {
                        let c = &sampler.poly_in(&self.chart, &q_vars) * &self.p(j);
                        out = out.add(&GradedElement::basis(frame, &dirs, c)).unwrap();
                    }
                }
            }
        }
        if k >= 1 && k - 1 <= n {
            for mask in subsets(n, k - 1) {
                let mut dirs: Vec<usize> = bits(mask).into_iter().map(|d| plain[d]).collect();
                for &h in &heavy {
                    if sampler.chance(density) {
                        dirs.push(h);
                        let c = sampler.poly_in(&self.chart, &q_vars);
                        out = out.add(&GradedElement::basis(frame, &dirs, c)).unwrap();
                        dirs.pop();
                    }
                }
            }
        }
        out
    }

    /// `m*Θ − pr₁*Θ − pr₂*Θ` on composable pairs `(q, u, v)`.
    pub fn multiplicativity_defect(&self, theta: &GradedElement) -> Result<GradedElement> {
        self.require_frame(theta, Kind::Form)?;
        let n = self.n;
        let mut names = indexed("q", n);
        names.extend(indexed("u", n));
        names.extend(indexed("v", n));
        let pairs = Chart::new(names)?;
        let frame = Frame::forms(&pairs);
        let var = |i: usize| PolyExpr::var_at(&pairs, i);
        let q: Vec<PolyExpr> = (0..n).map(var).collect();
        let with_fiber = |fiber: &dyn Fn(usize) -> PolyExpr| -> Vec<PolyExpr> {
            q.iter().cloned().chain((0..n).map(fiber)).collect()
        };
        let m = with_fiber(&|j| &var(n + j) + &var(2 * n + j));
        let pr1 = with_fiber(&|j| var(n + j));
        let pr2 = with_fiber(&|j| var(2 * n + j));
        let pulled = |images: &[PolyExpr]| pullback(theta, &frame, images);
        pulled(&m)?.sub(&pulled(&pr1)?)?.sub(&pulled(&pr2)?)
    }
}

/// Pull a form back along the map whose coordinate images are `images`.
pub fn pullback(w: &GradedElement, target: &Frame, images: &[PolyExpr]) -> Result<GradedElement> {
    let chart = target.chart();
    let diffs: Vec<GradedElement> = images
        .iter()
        .map(|f| de_rham_d(&GradedElement::scalar(target, f.clone())))
        .collect::<Result<_>>()?;
    let mut out = GradedElement::zero(target, w.degree());
    for (m, f) in w.components() {
        let mut acc = GradedElement::scalar(target, f.compose(chart, images)?);
        for d in bits(m) {
            acc = acc.wedge(&diffs[d])?;
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

fn describe(frame: &Frame) -> String {
    let what = match frame.kind() {
        Kind::Form => "forms",
        Kind::Multivector => "multivectors",
    };
    format!("{what} on ({})", frame.chart().coordinates().join(", "))
}

/// `ι_{s*γ}Π` against the invariant lift of `ι_γπ`; `None` when they agree.
pub fn contraction_lift_residual(
    model: &CotangentModel,
    pi: &GradedElement,
    gamma: &GradedElement,
) -> Result<Option<String>> {
    let lhs = contract(&model.s_pullback(gamma)?, pi)?;
    let leading = model.leading_terms(pi)?;
    let g = gamma.embed(model.algebroid().split_forms())?;
    let rhs = model.invariant_lift(&contract(&g, &leading)?)?;
    Ok((lhs != rhs).then(|| format!("iota_(s*gamma) Pi = {lhs}, lift(iota_gamma pi) = {rhs}")))
}

/// `ι_{lift(u)}Θ` against `s*(ι_uθ)`; `None` when they agree.
pub fn contraction_pullback_residual(
    model: &CotangentModel,
    theta: &GradedElement,
    u: &GradedElement,
) -> Result<Option<String>> {
    let lhs = contract(&model.invariant_lift(u)?, theta)?;
    let leading = model.leading_terms(theta)?;
    let inner = contract(u, &leading)?;
    if inner.has_bundle_factors() {
        return Err(CalcError::Degree("u must be a single section of A".into()));
    }
    let rhs = model.s_pullback(&inner.to_base()?)?;
    Ok((lhs != rhs).then(|| format!("iota_lift(u) Theta = {lhs}, s*(iota_u theta) = {rhs}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn el(m: &CotangentModel, kind: Kind, coeff: &str, labels: &[&str]) -> GradedElement {
        let frame = if kind == Kind::Form { m.forms() } else { m.vectors() };
        GradedElement::from_labels(frame, labels, parse_poly(coeff, m.chart()).unwrap()).unwrap()
    }

    fn base_form(m: &CotangentModel, coeff: &str, labels: &[&str]) -> GradedElement {
        let f = Frame::forms(m.base_chart());
        GradedElement::from_labels(&f, labels, parse_poly(coeff, m.base_chart()).unwrap()).unwrap()
    }

    #[test]
    fn multiplicativity_examples() {
        let m = CotangentModel::new(1).unwrap();
        assert!(m.is_multiplicative_form(&el(&m, Kind::Form, "q*p", &["dq"])).unwrap().holds());
        assert!(!m.is_multiplicative_form(&el(&m, Kind::Form, "p^2", &["dq"])).unwrap().holds());
        let dq = el(&m, Kind::Form, "1", &["dq"]);
        let verdict = m.is_multiplicative_form(&dq).unwrap();
        assert!(verdict.witness.unwrap().contains("dq"));
        assert!(!m.multiplicativity_defect(&dq).unwrap().is_zero());
        assert!(m.is_multiplicative_multivector(&m.poisson()).unwrap().holds());
        // p ∂q∧∂p makes {q, p} = p, not a linear bivector
        assert!(!m.is_multiplicative_multivector(&el(&m, Kind::Multivector, "p", &["d/dq", "d/dp"])).unwrap().holds());
        assert!(m.is_multiplicative_multivector(&el(&m, Kind::Multivector, "q", &["d/dq"])).unwrap().holds());
        assert!(matches!(m.is_multiplicative_form(&m.poisson()), Err(CalcError::FrameMismatch(_))));
    }

    #[test]
    fn defect_agrees_with_normal_form() {
        let m = CotangentModel::new(2).unwrap();
        for (c, l, ok) in [
            ("q1*p2", vec!["dq1", "dq2"], true),
            ("q2^2", vec!["dq1", "dp2"], true),
            ("p1", vec!["dq2", "dp1"], false),
            ("1", vec!["dp1", "dp2"], false),
            ("q1", vec![], false),
            ("p1 + q1*p2", vec![], true),
        ] {
            let w = el(&m, Kind::Form, c, &l);
            assert_eq!(m.is_multiplicative_form(&w).unwrap().holds(), ok, "{w}");
            assert_eq!(m.multiplicativity_defect(&w).unwrap().is_zero(), ok, "{w}");
        }
    }

    #[test]
    fn canonical_and_sharp() {
        let m = CotangentModel::new(1).unwrap();
        let (omega, p) = m.canonical_structures();
        assert_eq!(omega.to_string(), el(&m, Kind::Form, "1", &["dq", "dp"]).to_string());
        assert!(de_rham_d(&omega).unwrap().is_zero());
        assert!(crate::exterior::schouten_bracket(&p, &p).unwrap().is_zero());
        let dp = el(&m, Kind::Multivector, "1", &["d/dp"]);
        assert_eq!(m.omega_sharp(&dp).unwrap(), el(&m, Kind::Form, "-1", &["dq"]));
        assert_eq!(m.omega_sharp_iso(&p).unwrap(), omega);
        assert_eq!(m.omega_sharp_iso(&omega).unwrap(), p);
        assert!(matches!(
            m.omega_sharp_iso(&el(&m, Kind::Form, "1", &["dq"])),
            Err(CalcError::NotMultiplicative(_))
        ));
    }

    #[test]
    fn leading_terms_examples() {
        let m = CotangentModel::new(1).unwrap();
        let theta = el(&m, Kind::Form, "q*p", &["dq"]).add(&el(&m, Kind::Form, "q", &["dp"])).unwrap();
        let lead = m.leading_terms(&theta).unwrap();
        let sf = m.algebroid().split_forms();
        assert_eq!(lead, GradedElement::from_labels(sf, &["e^p"], parse_poly("x", m.base_chart()).unwrap()).unwrap());
        let pi = m.leading_terms(&m.poisson()).unwrap();
        let sv = m.algebroid().split_vectors();
        assert_eq!(pi, GradedElement::from_labels(sv, &["d/dx", "e_p"], PolyExpr::one(m.base_chart())).unwrap());
        assert!(m.leading_terms(&GradedElement::zero(m.forms(), 2)).unwrap().is_zero());
    }

    #[test]
    fn pullback_and_action() {
        let m = CotangentModel::new(1).unwrap();
        let g = base_form(&m, "x", &["dx"]);
        let up = m.s_pullback(&g).unwrap();
        assert_eq!(up, el(&m, Kind::Form, "q", &["dq"]));
        assert_eq!(m.s_extract(&up).unwrap(), g);
        assert!(matches!(m.s_extract(&el(&m, Kind::Form, "p", &["dq"])), Err(CalcError::NotInImage(_))));
        let a = el(&m, Kind::Form, "q*p", &["dq"]);
        assert_eq!(m.action_on_base(&a, &base_form(&m, "1", &["dx"])).unwrap(), base_form(&m, "-x", &["dx"]));
        let b = el(&m, Kind::Form, "q", &["dp"]);
        assert_eq!(m.action_on_base(&b, &g).unwrap(), base_form(&m, "-x", &["dx"]));
        assert!(m.action_on_base(&a, &base_form(&m, "0", &["dx"])).unwrap().is_zero());
    }

    #[test]
    fn lifts() {
        let m = CotangentModel::new(1).unwrap();
        let sv = m.algebroid().split_vectors();
        let u = GradedElement::from_labels(sv, &["e_p"], parse_poly("x^2", m.base_chart()).unwrap()).unwrap();
        assert_eq!(m.invariant_lift(&u).unwrap(), el(&m, Kind::Multivector, "q^2", &["d/dp"]));
        let bad = GradedElement::from_labels(sv, &["d/dx"], PolyExpr::one(m.base_chart())).unwrap();
        assert!(matches!(m.invariant_lift(&bad), Err(CalcError::NotVertical(_))));
        let dx = base_form(&m, "1", &["dx"]);
        assert_eq!(contraction_lift_residual(&m, &m.poisson(), &dx).unwrap(), None);
        assert_eq!(contract(&m.s_pullback(&dx).unwrap(), &m.poisson()).unwrap(), el(&m, Kind::Multivector, "1", &["d/dp"]));
        let theta = el(&m, Kind::Form, "q*p", &["dq"]).add(&el(&m, Kind::Form, "q", &["dp"])).unwrap();
        let e = GradedElement::from_labels(sv, &["e_p"], PolyExpr::one(m.base_chart())).unwrap();
        assert_eq!(contraction_pullback_residual(&m, &theta, &e).unwrap(), None);
    }
}
