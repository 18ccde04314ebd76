use std::collections::BTreeMap;

use super::{bits, contract, de_rham_d, interior_product, GradedElement, Kind};
use crate::error::{CalcError, Result};
use crate::poly::PolyExpr;

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn check_pair(p: &GradedElement, a: &GradedElement) -> Result<()> {
    if p.frame.kind != Kind::Multivector || p.degree != 2 {
        return Err(CalcError::Degree("P must be a bivector".into()));
    }
    if !p.frame.is_dual_of(&a.frame) {
        return Err(CalcError::FrameMismatch("P and the form live on different charts".into()));
    }
    Ok(())
}

/// `P♯α = ι_α P` on a 1-form.
pub fn psharp_1form(p: &GradedElement, a: &GradedElement) -> Result<GradedElement> {
    check_pair(p, a)?;
    if a.degree != 1 {
        return Err(CalcError::Degree("P♯ on 1-forms needs a 1-form".into()));
    }
    contract(a, p)
}

/// Element of `Ω^{k−1} ⊗ 𝔛^1`, stored as one form per frame vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormVectorTensor {
    form_degree: usize,
    parts: BTreeMap<usize, GradedElement>,
    vectors: super::Frame,
}

impl FormVectorTensor {
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn form_degree(&self) -> usize {
        self.form_degree
    }

    /// Normalized `(form, basis vector)` pairs in frame order.
    pub fn terms(&self) -> Vec<(GradedElement, GradedElement)> {
        self.parts
            .iter()
            .map(|(&j, w)| {
                (
                    w.clone(),
                    GradedElement::basis(&self.vectors, &[j], PolyExpr::one(w.chart())),
                )
            })
            .collect()
    }

    pub fn part(&self, j: usize) -> Option<&GradedElement> {
        self.parts.get(&j)
    }

    /// `Σ_j ω_j ∧ ι_{∂_j} β`.
    pub fn contract_into(&self, b: &GradedElement) -> Result<GradedElement> {
        let degree = (self.form_degree + b.degree).saturating_sub(1);
        let mut out = GradedElement::zero(&b.frame, degree);
        for (&j, w) in &self.parts {
            out = out.add(&w.wedge(&b.interior_dir(j))?)?;
        }
        Ok(out)
    }
}

/// `P♯(α1∧…∧αk) = Σ_i (−1)^{i+k} α1∧…α̂i…∧αk ⊗ P♯αi`.
pub fn psharp_kform(p: &GradedElement, a: &GradedElement) -> Result<FormVectorTensor> {
    check_pair(p, a)?;
    let k = a.degree;
    if k == 0 {
        return Err(CalcError::Degree("P♯ needs a form of degree at least 1".into()));
    }
    let dim = a.frame.dim();
    let sharps: Vec<GradedElement> = (0..dim)
        .map(|i| p.interior_dir(i))
        .collect();
    let mut parts: BTreeMap<usize, GradedElement> = BTreeMap::new();
    for (m, f) in &a.comps {
        let dirs = bits(*m);
        for (s, &d) in dirs.iter().enumerate() {
            let sg = sign((s + 1 + k) as i64);
            let rest = GradedElement::basis(&a.frame, &bits(m & !(1 << d)), f.scale_int(sg));
            for (vm, g) in &sharps[d].comps {
                let j = vm.trailing_zeros() as usize;
                let term = rest.mul_poly(g);
                let entry = parts
                    .entry(j)
                    .or_insert_with(|| GradedElement::zero(&a.frame, k - 1));
                *entry = entry.add(&term)?;
            }
        }
    }
    parts.retain(|_, w| !w.is_zero());
    Ok(FormVectorTensor {
        form_degree: k - 1,
        parts,
        vectors: p.frame.clone(),
    })
}

/// `ι_{P♯α} β` for `k, l ≥ 1`.
pub fn contract_psharp(p: &GradedElement, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
    check_pair(p, b)?;
    if b.degree == 0 {
        return Err(CalcError::Degree("contraction needs l ≥ 1".into()));
    }
    psharp_kform(p, a)?.contract_into(b)
}

/// Contraction `ι_P` on forms.
pub fn iota_p(p: &GradedElement, w: &GradedElement) -> Result<GradedElement> {
    check_pair(p, w)?;
    if w.degree < 2 {
        return Ok(GradedElement::zero(&w.frame, 0));
    }
    contract(p, w)
}

/// `ℒ_P = ι_P ∘ d − d ∘ ι_P`.
pub fn lie_derivative_p(p: &GradedElement, w: &GradedElement) -> Result<GradedElement> {
    check_pair(p, w)?;
    let a = iota_p(p, &de_rham_d(w)?)?;
    if w.degree < 2 {
        return Ok(a);
    }
    a.sub(&de_rham_d(&iota_p(p, w)?)?)
}

/// Koszul bracket by the contraction formula; degree-0 arguments use the `ℒ_P` formula.
pub fn koszul_bracket(p: &GradedElement, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
    check_pair(p, a)?;
    check_pair(p, b)?;
    let (k, l) = (a.degree as i64, b.degree as i64);
    if k == 0 || l == 0 {
        return koszul_bracket_oracle(p, a, b);
    }
    let pa = psharp_kform(p, a)?;
    let pb = psharp_kform(p, b)?;
    let t1 = pa.contract_into(&de_rham_d(b)?)?;
    let t2 = de_rham_d(&pa.contract_into(b)?)?.scale_int(sign(k - 1));
    let t3 = pb.contract_into(&de_rham_d(a)?)?.scale_int(-sign((k - 1) * (l - 1)));
    t1.add(&t2)?.add(&t3)
}

/// Koszul bracket `(−1)^{k−1}(ℒ_P(α∧β) − ℒ_Pα∧β) + α∧ℒ_Pβ`, with `ι_P(dq∧dp) = −1` for
/// `P = ∂q∧∂p`.
pub fn koszul_bracket_oracle(p: &GradedElement, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
    check_pair(p, a)?;
    check_pair(p, b)?;
    let k = a.degree as i64;
    let ab = a.wedge(b)?;
    let lhs = lie_derivative_p(p, &ab)?.sub(&lie_derivative_p(p, a)?.wedge(b)?)?;
    let out = lhs
        .scale_int(sign(k - 1))
        .add(&a.wedge(&lie_derivative_p(p, b)?)?)?;
    if out.is_zero() {
        let degree = (a.degree + b.degree).saturating_sub(1);
        return Ok(GradedElement::zero(&a.frame, degree));
    }
    Ok(out)
}

/// `(∧^k P♯)Θ`, the multivector obtained by applying `P♯` to every factor.
pub fn wedge_power_psharp(p: &GradedElement, theta: &GradedElement) -> Result<GradedElement> {
    check_pair(p, theta)?;
    let sharps: Vec<GradedElement> = (0..theta.frame.dim()).map(|i| p.interior_dir(i)).collect();
    let mut out = GradedElement::zero(&p.frame, theta.degree);
    for (m, f) in &theta.comps {
        let mut acc = GradedElement::scalar(&p.frame, f.clone());
        for d in bits(*m) {
            acc = acc.wedge(&sharps[d])?;
            if acc.is_zero() {
                break;
            }
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

/// `α^♯(X_1, …, X_{k−1}) = α(X_1, …, X_{k−1}, ·)`.
fn sharp_of(a: &GradedElement, xs: &[GradedElement]) -> Result<GradedElement> {
    let mut cur = a.clone();
    for x in xs {
        cur = interior_product(x, &cur)?;
    }
    Ok(cur)
}

/// Shuffles of `p + q` slots: the chosen first block and the permutation sign.
fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>, i64)> {
    let n = p + q;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let first: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let second: Vec<usize> = (0..n).filter(|i| mask & (1 << i) == 0).collect();
        let mut inv = 0;
        for &a in &first {
            inv += second.iter().filter(|&&b| b < a).count();
        }
        out.push((first, second, sign(inv as i64)));
    }
    out
}

/// Sign in front of the second shuffle sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SecondSumSign {
    /// `+(−1)^{kl}`, the sign under which the identity holds.
    PlusKl,
    /// `−(−1)^{kl}`, kept as a negative control.
    MinusKl,
}

/// Residual of the sharp-level shuffle identity for `ι_{P♯α}β`, over all ordered tuples of
/// distinct frame vectors. Empty when the identity holds.
pub fn sharp_shuffle_residual(
    p: &GradedElement,
    a: &GradedElement,
    b: &GradedElement,
) -> Result<Vec<(Vec<usize>, GradedElement)>> {
    sharp_shuffle_residual_with(p, a, b, SecondSumSign::PlusKl)
}

/// [`sharp_shuffle_residual`] with an explicit sign on the second sum.
pub fn sharp_shuffle_residual_with(
    p: &GradedElement,
    a: &GradedElement,
    b: &GradedElement,
    second: SecondSumSign,
) -> Result<Vec<(Vec<usize>, GradedElement)>> {
    let (k, l) = (a.degree, b.degree);
    if k + l < 3 {
        return Err(CalcError::Degree("shuffle identity needs k + l ≥ 3".into()));
    }
    let lhs_form = contract_psharp(p, a, b)?;
    let m = k + l - 3;
    let dim = a.frame.dim();
    let basis: Vec<GradedElement> = (0..dim)
        .map(|i| GradedElement::basis(&p.frame, &[i], PolyExpr::one(a.chart())))
        .collect();
    let mut failures = Vec::new();
    let mut tuple = vec![0usize; m];
    loop {
        let distinct = (0..m).all(|i| (0..i).all(|j| tuple[i] != tuple[j]));
        if distinct {
            let xs: Vec<GradedElement> = tuple.iter().map(|&i| basis[i].clone()).collect();
            let lhs = sharp_of(&lhs_form, &xs)?;
            let mut rhs = GradedElement::zero(&a.frame, 1);
            if l >= 2 {
                for (first, second, sg) in shuffles(k - 1, l - 2) {
                    let inner: Vec<GradedElement> = first.iter().map(|&i| xs[i].clone()).collect();
                    let v = psharp_1form(p, &sharp_of(a, &inner)?)?;
                    let mut args = vec![v];
                    args.extend(second.iter().map(|&i| xs[i].clone()));
                    rhs = rhs.add(&sharp_of(b, &args)?.scale_int(sg))?;
                }
            }
            if k >= 2 {
                let outer = match second {
                    SecondSumSign::PlusKl => sign((k * l) as i64),
                    SecondSumSign::MinusKl => -sign((k * l) as i64),
                };
                for (first, second, sg) in shuffles(l - 1, k - 2) {
                    let inner: Vec<GradedElement> = first.iter().map(|&i| xs[i].clone()).collect();
                    let v = psharp_1form(p, &sharp_of(b, &inner)?)?;
                    let mut args = vec![v];
                    args.extend(second.iter().map(|&i| xs[i].clone()));
                    rhs = rhs.add(&sharp_of(a, &args)?.scale_int(sg * outer))?;
                }
            }
            let diff = lhs.sub(&rhs)?;
            if !diff.is_zero() {
                failures.push((tuple.clone(), diff));
            }
        }
        let mut i = 0;
        loop {
            if i == m {
                return Ok(failures);
            }
            tuple[i] += 1;
            if tuple[i] < dim {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Frame;
    use crate::poly::{parse_poly, Chart};

    fn setup() -> (Frame, Frame, GradedElement) {
        let c = Chart::new(["q", "p"]).unwrap();
        let f = Frame::forms(&c);
        let v = Frame::vectors(&c);
        let p = el(&v, "1", &["d/dq", "d/dp"]);
        (f, v, p)
    }

    fn el(frame: &Frame, coeff: &str, labels: &[&str]) -> GradedElement {
        GradedElement::from_labels(frame, labels, parse_poly(coeff, frame.chart()).unwrap()).unwrap()
    }

    #[test]
    fn psharp_examples() {
        let (f, v, p) = setup();
        assert_eq!(psharp_1form(&p, &el(&f, "1", &["dq"])).unwrap(), el(&v, "1", &["d/dp"]));
        assert_eq!(psharp_1form(&p, &el(&f, "1", &["dp"])).unwrap(), el(&v, "-1", &["d/dq"]));
        assert!(psharp_1form(&p, &GradedElement::zero(&f, 1)).unwrap().is_zero());
    }

    #[test]
    fn psharp_kform_examples() {
        let (f, v, p) = setup();
        let t = psharp_kform(&p, &el(&f, "1", &["dq"])).unwrap();
        assert_eq!(t.terms(), vec![(el(&f, "1", &[]), el(&v, "1", &["d/dp"]))]);
        let t = psharp_kform(&p, &el(&f, "1", &["dq", "dp"])).unwrap();
        assert_eq!(
            t.terms(),
            vec![
                (el(&f, "-1", &["dq"]), el(&v, "1", &["d/dq"])),
                (el(&f, "-1", &["dp"]), el(&v, "1", &["d/dp"])),
            ]
        );
        assert!(psharp_kform(&p, &GradedElement::zero(&f, 1)).unwrap().is_empty());
        assert!(psharp_kform(&p, &el(&f, "q", &[])).is_err());
    }

    #[test]
    fn contract_psharp_examples() {
        let (f, _, p) = setup();
        let dq = el(&f, "1", &["dq"]);
        let w = el(&f, "1", &["dq", "dp"]);
        assert_eq!(contract_psharp(&p, &dq, &w).unwrap(), el(&f, "-1", &["dq"]));
        assert!(contract_psharp(&p, &dq, &dq).unwrap().is_zero());
        assert_eq!(contract_psharp(&p, &w, &w).unwrap(), el(&f, "-2", &["dq", "dp"]));
    }

    #[test]
    fn koszul_examples() {
        let (f, _, p) = setup();
        let a = el(&f, "q*p", &["dq"]);
        let b = el(&f, "q", &["dp"]);
        assert_eq!(koszul_bracket(&p, &a, &b).unwrap(), el(&f, "q*p", &["dq"]));
        let a = el(&f, "q", &["dp"]);
        let b = el(&f, "q^2", &["dp"]);
        assert_eq!(koszul_bracket(&p, &a, &b).unwrap(), el(&f, "-q^2", &["dp"]));
        assert!(koszul_bracket(&p, &a, &a).unwrap().is_zero());
        for (x, y) in [(&a, &b), (&b, &a)] {
            assert_eq!(koszul_bracket(&p, x, y).unwrap(), koszul_bracket_oracle(&p, x, y).unwrap());
        }
    }

    #[test]
    fn oracle_examples() {
        let (f, _, p) = setup();
        assert!(lie_derivative_p(&p, &el(&f, "1", &["dq", "dp"])).unwrap().is_zero());
        assert_eq!(iota_p(&p, &el(&f, "1", &["dq", "dp"])).unwrap(), el(&f, "-1", &[]));
        let r = koszul_bracket_oracle(&p, &el(&f, "q", &[]), &el(&f, "1", &["dp"])).unwrap();
        assert_eq!(r, el(&f, "1", &[]));
        assert_eq!(koszul_bracket(&p, &el(&f, "q", &[]), &el(&f, "1", &["dp"])).unwrap(), r);
        let zero = koszul_bracket(&p, &el(&f, "q", &[]), &el(&f, "p", &[])).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn wedge_power_examples() {
        let (f, v, p) = setup();
        assert_eq!(wedge_power_psharp(&p, &el(&f, "1", &["dq", "dp"])).unwrap(), p);
        assert!(wedge_power_psharp(&p, &GradedElement::zero(&f, 2)).unwrap().is_zero());
        assert_eq!(wedge_power_psharp(&p, &el(&f, "1", &["dq"])).unwrap(), el(&v, "1", &["d/dp"]));
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(1, 2).len(), 3);
        assert_eq!(shuffles(2, 0).len(), 1);
        let signs: Vec<i64> = shuffles(1, 1).into_iter().map(|s| s.2).collect();
        assert_eq!(signs, vec![1, -1]);
    }
}
