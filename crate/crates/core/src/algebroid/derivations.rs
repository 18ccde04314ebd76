use num_bigint::BigInt;

use super::AlgebroidChart;
use crate::error::{CalcError, Result};
use crate::exterior::{apply_derivation, contract, evaluate, GradedElement};
use crate::poly::{rat, Rational};
use crate::report::VerificationReport;
use crate::sampling::Sampler;

/// `D_ρ`: the degree-0 derivation of `∧(TM ⊕ A)` with `e_a ↦ ρ(e_a)`, `∂_i ↦ 0`.
pub fn d_rho(alg: &AlgebroidChart, w: &GradedElement) -> Result<GradedElement> {
    if w.frame() != alg.split_vectors() {
        return Err(CalcError::FrameMismatch("D_rho acts on the split vector frame".into()));
    }
    let n = alg.dim();
    apply_derivation(w, |d| (d >= n).then(|| alg.rho_split(&alg.frame_section(d - n))))
}

/// `D_ρ*`: the degree-0 derivation of `∧(T*M ⊕ A*)` with `dx^i ↦ ρ*dx^i`, `e^a ↦ 0`.
pub fn d_rho_star(alg: &AlgebroidChart, w: &GradedElement) -> Result<GradedElement> {
    if w.frame() != alg.split_forms() {
        return Err(CalcError::FrameMismatch("D_rho* acts on the split covector frame".into()));
    }
    let n = alg.dim();
    apply_derivation(w, |d| (d < n).then(|| alg.rho_star(d)))
}

pub fn d_rho_star_pow(alg: &AlgebroidChart, w: &GradedElement, j: usize) -> Result<GradedElement> {
    let mut cur = w.clone();
    for _ in 0..j {
        cur = d_rho_star(alg, &cur)?;
    }
    Ok(cur)
}

fn d_rho_pow(alg: &AlgebroidChart, w: &GradedElement, j: usize) -> Result<GradedElement> {
    let mut cur = w.clone();
    for _ in 0..j {
        cur = d_rho(alg, &cur)?;
    }
    Ok(cur)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

fn inv_factorial(n: usize) -> Rational {
    Rational::new(BigInt::from(1), factorial(n))
}

/// Which block a ρ-compatible tensor lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorKind {
    /// `A* ⊗ ∧^{k−1}T*M`, a (0,k)-tensor.
    ZeroK,
    /// `TM ⊗ ∧^{k−1}A`, a (k,0)-tensor.
    KZero,
}

fn block_witness(alg: &AlgebroidChart, t: &GradedElement, kind: TensorKind) -> Option<String> {
    let n = alg.dim();
    let (frame, label) = match kind {
        TensorKind::ZeroK => (alg.split_forms(), "exactly one bundle covector"),
        TensorKind::KZero => (alg.split_vectors(), "exactly one base vector"),
    };
    if t.frame() != frame {
        return Some("tensor uses the wrong frame".into());
    }
    for (m, _) in t.components() {
        let bundle = (m >> n).count_ones() as usize;
        let ok = match kind {
            TensorKind::ZeroK => bundle == 1,
            TensorKind::KZero => t.degree() - bundle == 1,
        };
        if !ok {
            let labels: Vec<String> = crate::exterior::bits(m).into_iter().map(|d| frame.label(d)).collect();
            return Some(format!("component {} does not have {label}", labels.join("∧")));
        }
    }
    None
}

/// First frame pair violating the ρ-compatibility identity, if any.
///
/// (0,k): `ι_{ρ(v)}ι_uθ + ι_{ρ(u)}ι_vθ = 0`; (k,0): `ι_{ρ*ξ}ι_ηπ + ι_{ρ*η}ι_ξπ = 0`.
pub fn rho_compatibility_witness(alg: &AlgebroidChart, t: &GradedElement, kind: TensorKind) -> Option<String> {
    if let Some(w) = block_witness(alg, t, kind) {
        return Some(w);
    }
    let n = alg.dim();
    let m = match kind {
        TensorKind::ZeroK => alg.rank(),
        TensorKind::KZero => n,
    };
    for a in 0..m {
        for b in a..m {
            let term = |x: usize, y: usize| -> GradedElement {
                match kind {
                    TensorKind::ZeroK => {
                        let inner = t.interior_dir(n + x);
                        contract(&alg.rho_split(&alg.frame_section(y)), &inner).expect("dual frames")
                    }
                    TensorKind::KZero => {
                        let inner = t.interior_dir(x);
                        contract(&alg.rho_star(y), &inner).expect("dual frames")
                    }
                }
            };
            let sum = term(a, b).add(&term(b, a)).expect("same frame");
            if !sum.is_zero() {
                let (la, lb) = match kind {
                    TensorKind::ZeroK => (format!("e_{}", alg.names()[a]), format!("e_{}", alg.names()[b])),
                    TensorKind::KZero => (alg.split_forms().label(a), alg.split_forms().label(b)),
                };
                return Some(format!("pair ({la}, {lb}): symmetrized contraction = {sum}"));
            }
        }
    }
    None
}

pub fn check_rho_compatible(alg: &AlgebroidChart, t: &GradedElement, kind: TensorKind) -> VerificationReport {
    let mut report = VerificationReport::new("rho-compatibility");
    let pairs = match kind {
        TensorKind::ZeroK => alg.rank() * (alg.rank() + 1) / 2,
        TensorKind::KZero => alg.dim() * (alg.dim() + 1) / 2,
    };
    let (id, anchor) = match kind {
        TensorKind::ZeroK => ("rho-compatible-0k", "iota_rho(v) iota_u theta = -iota_rho(u) iota_v theta"),
        TensorKind::KZero => ("rho-compatible-k0", "iota_rho*xi iota_eta pi = -iota_rho*eta iota_xi pi"),
    };
    report.record(id, anchor, pairs, rho_compatibility_witness(alg, t, kind));
    report
}

/// A validated ρ-compatible (0,k)-tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rho0kTensor {
    value: GradedElement,
}

impl Rho0kTensor {
    pub fn new(alg: &AlgebroidChart, value: GradedElement) -> Result<Self> {
        if let Some(w) = rho_compatibility_witness(alg, &value, TensorKind::ZeroK) {
            return Err(CalcError::NotRhoCompatible(w));
        }
        if value.degree() == 0 || value.degree() > alg.dim() + 1 {
            return Err(CalcError::Degree("need 1 ≤ k ≤ dim M + 1".into()));
        }
        Ok(Rho0kTensor { value })
    }

    pub fn value(&self) -> &GradedElement {
        &self.value
    }

    pub fn k(&self) -> usize {
        self.value.degree()
    }
}

/// A validated ρ-compatible (k,0)-tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoK0Tensor {
    value: GradedElement,
}

impl RhoK0Tensor {
    pub fn new(alg: &AlgebroidChart, value: GradedElement) -> Result<Self> {
        if let Some(w) = rho_compatibility_witness(alg, &value, TensorKind::KZero) {
            return Err(CalcError::NotRhoCompatible(w));
        }
        if value.degree() == 0 {
            return Err(CalcError::Degree("need k ≥ 1".into()));
        }
        Ok(RhoK0Tensor { value })
    }

    pub fn value(&self) -> &GradedElement {
        &self.value
    }

    pub fn k(&self) -> usize {
        self.value.degree()
    }
}

/// `Bθ = Σ_{j=0}^{k−1} D_ρ*^j θ / (j+1)!`.
pub fn b_of_0k(alg: &AlgebroidChart, theta: &GradedElement) -> Result<GradedElement> {
    if let Some(w) = rho_compatibility_witness(alg, theta, TensorKind::ZeroK) {
        return Err(CalcError::NotRhoCompatible(w));
    }
    let mut out = theta.clone();
    let mut cur = theta.clone();
    for j in 1..theta.degree() {
        cur = d_rho_star(alg, &cur)?;
        out = out.add(&cur.scale(&inv_factorial(j + 1)))?;
    }
    Ok(out)
}

/// `Bπ = Σ_{j=0}^{k−1} (−1)^j D_ρ^j π / (j+1)!`.
pub fn b_of_k0(alg: &AlgebroidChart, pi: &GradedElement) -> Result<GradedElement> {
    if let Some(w) = rho_compatibility_witness(alg, pi, TensorKind::KZero) {
        return Err(CalcError::NotRhoCompatible(w));
    }
    let mut out = pi.clone();
    for j in 1..pi.degree() {
        let mut c = inv_factorial(j + 1);
        if j % 2 == 1 {
            c = -c;
        }
        out = out.add(&d_rho_pow(alg, pi, j)?.scale(&c))?;
    }
    Ok(out)
}

fn iota_rho(alg: &AlgebroidChart, a: usize, w: &GradedElement) -> GradedElement {
    contract(&alg.rho_split(&alg.frame_section(a)), w).expect("dual frames")
}

/// Chain `ι_{ρ(u)}D*^{j−1}θ = D*^j(ι_uθ) = ι_u D*^jθ / (j+1)` for `j = 1..k−1` and frame `u`,
/// plus `ι_uD* − D*ι_u = ι_{ρ(u)}` and `ι_{ρ(u)}D* = D*ι_{ρ(u)}` on `θ`, its images and
/// `samples` random mixed elements.
pub fn lemma_formula_suite(
    alg: &AlgebroidChart,
    theta: &GradedElement,
    sampler: &mut Sampler,
    samples: usize,
) -> VerificationReport {
    let mut report = VerificationReport::new("lemma-formula");
    let n = alg.dim();
    let compat = rho_compatibility_witness(alg, theta, TensorKind::ZeroK);
    report.record("theta-rho-compatible", "rho-compatible (0,k)-tensor", 1, compat.clone());
    if compat.is_some() {
        return report;
    }
    let k = theta.degree();
    let name = |a: usize| format!("e_{}", alg.names()[a]);
    {
        let mut t = report.tally("chain-left", "iota_rho(u) D*^(j-1) theta = D*^j iota_u theta");
        let mut lefts = Vec::new();
        for j in 1..k {
            for a in 0..alg.rank() {
                let lhs = iota_rho(alg, a, &d_rho_star_pow(alg, theta, j - 1).unwrap());
                let mid = d_rho_star_pow(alg, &theta.interior_dir(n + a), j).unwrap();
                let rhs = d_rho_star_pow(alg, theta, j)
                    .unwrap()
                    .interior_dir(n + a)
                    .scale(&rat(1, j as i64 + 1));
                t.expect(lhs == mid, || format!("j={j}, u={}: {lhs} vs {mid}", name(a)));
                lefts.push((j, a, mid, rhs));
            }
        }
        drop(t);
        let mut t = report.tally("chain-right", "D*^j iota_u theta = iota_u D*^j theta / (j+1)");
        for (j, a, mid, rhs) in lefts {
            t.expect(mid == rhs, || format!("j={j}, u={}: {mid} vs {rhs}", name(a)));
        }
    }
    let mut probes = vec![theta.clone()];
    for j in 1..k {
        probes.push(d_rho_star_pow(alg, theta, j).unwrap());
    }
    for _ in 0..samples {
        let deg = 1 + sampler.index(alg.split_forms().dim().min(3));
        probes.push(sampler.element(alg.split_forms(), deg));
    }
    {
        let mut t = report.tally("commutator-iota-u", "iota_u D* - D* iota_u = iota_rho(u)");
        for w in &probes {
            let dw = d_rho_star(alg, w).unwrap();
            for a in 0..alg.rank() {
                let lhs = dw
                    .interior_dir(n + a)
                    .sub(&d_rho_star(alg, &w.interior_dir(n + a)).unwrap())
                    .unwrap();
                let rhs = iota_rho(alg, a, w);
                t.expect(lhs == rhs, || format!("w = {w}, u = {}: {lhs} vs {rhs}", name(a)));
            }
        }
    }
    {
        let mut t = report.tally("commutator-iota-rho", "iota_rho(u) D* = D* iota_rho(u)");
        for w in &probes {
            let dw = d_rho_star(alg, w).unwrap();
            for a in 0..alg.rank() {
                let lhs = iota_rho(alg, a, &dw);
                let rhs = d_rho_star(alg, &iota_rho(alg, a, w)).unwrap();
                t.expect(lhs == rhs, || format!("w = {w}, u = {}: {lhs} vs {rhs}", name(a)));
            }
        }
    }
    report
}

/// `ι_u(Bθ) = ι_{ρ(u)}(Bθ) + ι_uθ` for frame `u`, block placement of `Bθ`, and the block
/// evaluation `(Bθ)_j(u_1..u_j, X_{j+1}..X_k) = θ(u_1, ρ(u_2), …, ρ(u_j), X_{j+1}, …, X_k)`.
pub fn b_operator_suite(alg: &AlgebroidChart, theta: &GradedElement) -> VerificationReport {
    let mut report = VerificationReport::new("b-operator");
    let n = alg.dim();
    let b = match b_of_0k(alg, theta) {
        Ok(b) => b,
        Err(e) => {
            report.record("b-theta-defined", "theta rho-compatible", 1, Some(e.to_string()));
            return report;
        }
    };
    let k = theta.degree();
    {
        let mut t = report.tally("b-theta-blocks", "B theta has no pure base component");
        t.expect(b.bundle_block(0).is_zero(), || format!("B theta = {b}"));
    }
    {
        let mut t = report.tally("b-theta-with-u", "iota_u B theta = iota_rho(u) B theta + iota_u theta");
        for a in 0..alg.rank() {
            let lhs = b.interior_dir(n + a);
            let rhs = iota_rho(alg, a, &b).add(&theta.interior_dir(n + a)).unwrap();
            t.expect(lhs == rhs, || format!("u = e_{}: {lhs} vs {rhs}", alg.names()[a]));
        }
    }
    {
        let mut t = report.tally(
            "b-theta-block-evaluation",
            "j-block of B theta on (u_1..u_j, X..) = theta(u_1, rho u_2, .., rho u_j, X..)",
        );
        let vecs = alg.split_vectors();
        for j in 1..=k {
            let block = b.bundle_block(j);
            for us in tuples(alg.rank(), j) {
                for xs in tuples(n, k - j) {
                    let mut args: Vec<GradedElement> = us
                        .iter()
                        .map(|&a| GradedElement::basis(vecs, &[n + a], crate::poly::PolyExpr::one(alg.chart())))
                        .collect();
                    let xargs: Vec<GradedElement> = xs
                        .iter()
                        .map(|&i| GradedElement::basis(vecs, &[i], crate::poly::PolyExpr::one(alg.chart())))
                        .collect();
                    args.extend(xargs.iter().cloned());
                    let lhs = evaluate(&block, &args).unwrap();
                    let mut targs = vec![args[0].clone()];
                    targs.extend(us[1..].iter().map(|&a| alg.rho_split(&alg.frame_section(a))));
                    targs.extend(xargs);
                    let rhs = evaluate(theta, &targs).unwrap();
                    t.expect(lhs == rhs, || format!("j={j}, u={us:?}, X={xs:?}: {lhs} vs {rhs}"));
                }
            }
        }
    }
    report
}

/// Strictly increasing index tuples of length `len` from `0..m`.
fn tuples(m: usize, len: usize) -> Vec<Vec<usize>> {
    crate::sampling::subsets(m, len).into_iter().map(crate::exterior::bits).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Chart, PolyExpr};

    fn p(c: &Chart, s: &str) -> PolyExpr {
        parse_poly(s, c).unwrap()
    }

    /// ρ(e_1) = ∂x, ρ(e_2) = ∂y, abelian.
    fn diag() -> AlgebroidChart {
        let c = Chart::new(["x", "y"]).unwrap();
        let anchor = vec![vec![p(&c, "1"), p(&c, "0")], vec![p(&c, "0"), p(&c, "1")]];
        AlgebroidChart::from_brackets(&c, &["1", "2"], anchor, &[]).unwrap()
    }

    fn f(alg: &AlgebroidChart, coeff: &str, labels: &[&str]) -> GradedElement {
        GradedElement::from_labels(alg.split_forms(), labels, p(alg.chart(), coeff)).unwrap()
    }

    fn v(alg: &AlgebroidChart, coeff: &str, labels: &[&str]) -> GradedElement {
        GradedElement::from_labels(alg.split_vectors(), labels, p(alg.chart(), coeff)).unwrap()
    }

    #[test]
    fn d_rho_examples() {
        let c = Chart::new(["x", "y"]).unwrap();
        let anchor = vec![vec![p(&c, "1"), p(&c, "0")], vec![p(&c, "0"), p(&c, "1")]];
        let a = AlgebroidChart::from_brackets(&c, &["1", "2"], anchor, &[]).unwrap();
        assert_eq!(d_rho(&a, &v(&a, "1", &["e_1"])).unwrap(), v(&a, "1", &["d/dx"]));
        assert!(d_rho(&a, &v(&a, "1", &["d/dx"])).unwrap().is_zero());
        let anchor = vec![vec![p(&c, "0"), p(&c, "1")], vec![p(&c, "0"), p(&c, "0")]];
        let b = AlgebroidChart::from_brackets(&c, &["1", "2"], anchor, &[]).unwrap();
        assert_eq!(d_rho(&b, &v(&b, "1", &["d/dx", "e_1"])).unwrap(), v(&b, "1", &["d/dx", "d/dy"]));
    }

    #[test]
    fn d_rho_star_examples() {
        let a = diag();
        let expected = f(&a, "1", &["e^1", "dy"]).sub(&f(&a, "1", &["e^2", "dx"])).unwrap();
        assert_eq!(d_rho_star(&a, &f(&a, "1", &["dx", "dy"])).unwrap(), expected);
        assert!(d_rho_star(&a, &f(&a, "1", &["e^1"])).unwrap().is_zero());
        assert!(d_rho_star(&a, &f(&a, "1", &["e^1", "dx"])).unwrap().is_zero());
    }

    #[test]
    fn b_examples() {
        let a = diag();
        let theta = f(&a, "1", &["e^1", "dy"]).sub(&f(&a, "1", &["e^2", "dx"])).unwrap();
        let expected = theta.add(&f(&a, "1", &["e^1", "e^2"])).unwrap();
        assert_eq!(b_of_0k(&a, &theta).unwrap(), expected);
        let t1 = f(&a, "y", &["e^1"]);
        assert_eq!(b_of_0k(&a, &t1).unwrap(), t1);
        assert!(b_of_0k(&a, &GradedElement::zero(a.split_forms(), 2)).unwrap().is_zero());
        assert!(matches!(b_of_0k(&a, &f(&a, "1", &["e^1", "dx"])), Err(CalcError::NotRhoCompatible(_))));

        let pi = v(&a, "1", &["d/dy", "e_1"]).sub(&v(&a, "1", &["d/dx", "e_2"])).unwrap();
        let expected = pi.add(&v(&a, "1", &["d/dx", "d/dy"])).unwrap();
        let b = a.clone();
        assert!(matches!(b_of_k0(&b, &v(&b, "1", &["d/dy", "e_1"])), Err(CalcError::NotRhoCompatible(_))));
        assert_eq!(b_of_k0(&b, &pi).unwrap(), expected);
    }

    #[test]
    fn compatibility_examples() {
        let a = diag();
        let rep = check_rho_compatible(&a, &f(&a, "1", &["e^1", "dx"]), TensorKind::ZeroK);
        assert!(!rep.passed());
        let g = GradedElement::from_labels(a.split_forms(), &["dx", "dy"], p(a.chart(), "x*y")).unwrap();
        assert!(check_rho_compatible(&a, &d_rho_star(&a, &g).unwrap(), TensorKind::ZeroK).passed());
        assert!(check_rho_compatible(&a, &GradedElement::zero(a.split_forms(), 2), TensorKind::ZeroK).passed());
    }

    #[test]
    fn lemma_suite_examples() {
        let a = diag();
        let theta = f(&a, "1", &["e^1", "dy"]).sub(&f(&a, "1", &["e^2", "dx"])).unwrap();
        let mut s = Sampler::new(3);
        assert!(lemma_formula_suite(&a, &theta, &mut s, 4).passed());
        assert!(b_operator_suite(&a, &theta).passed());
        assert!(lemma_formula_suite(&a, &f(&a, "x", &["e^2"]), &mut s, 2).passed());
        let broken = theta.add(&f(&a, "1", &["e^1", "dx"])).unwrap();
        assert!(!lemma_formula_suite(&a, &broken, &mut s, 2).passed());
    }
}
