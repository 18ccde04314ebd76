//! Sharp-map identities of the Koszul bracket on 1-forms, as (left, right) pairs.

use super::{
    contract, de_rham_d, koszul_bracket, lie_derivative, psharp_1form, schouten_bracket, GradedElement,
};
use crate::error::{CalcError, Result};
use crate::poly::rat;

/// `Q(α_1, …, α_m, ·)` read as the contraction `ι_{α_1∧…∧α_m} Q = ι_{α_1}∘…∘ι_{α_m} Q`,
/// the convention under which `ι_P(dq∧dp) = −1` for `P = ∂q∧∂p`.
pub fn contract_forms(q: &GradedElement, forms: &[&GradedElement]) -> Result<GradedElement> {
    let Some((first, rest)) = forms.split_first() else {
        return Ok(q.clone());
    };
    let mut w = (*first).clone();
    for f in rest {
        w = w.wedge(f)?;
    }
    contract(&w, q)
}

fn check_one_forms(forms: &[&GradedElement]) -> Result<()> {
    if forms.iter().any(|f| f.degree() != 1) {
        return Err(CalcError::Degree("sharp identities take 1-forms".into()));
    }
    Ok(())
}

/// `P♯[α1,α2]_P − [P♯α1,P♯α2]` and `½[P,P](α1,α2)`.
pub fn sharp_anomaly(
    p: &GradedElement,
    a1: &GradedElement,
    a2: &GradedElement,
) -> Result<(GradedElement, GradedElement)> {
    check_one_forms(&[a1, a2])?;
    let lhs = psharp_1form(p, &koszul_bracket(p, a1, a2)?)?
        .sub(&schouten_bracket(&psharp_1form(p, a1)?, &psharp_1form(p, a2)?)?)?;
    let pp = schouten_bracket(p, p)?;
    let rhs = contract_forms(&pp, &[a1, a2])?.scale(&rat(1, 2));
    Ok((lhs, rhs))
}

/// Jacobiator `[α1,[α2,α3]_P]_P + c.p.` and
/// `−½ ℒ_{[P,P](α1,α2,·)}α3 + c.p. + d([P,P](α1,α2,α3))`.
pub fn quasi_jacobiator(
    p: &GradedElement,
    a1: &GradedElement,
    a2: &GradedElement,
    a3: &GradedElement,
) -> Result<(GradedElement, GradedElement)> {
    check_one_forms(&[a1, a2, a3])?;
    let pp = schouten_bracket(p, p)?;
    let forms = a1.frame().clone();
    let al = [a1, a2, a3];
    let mut lhs = GradedElement::zero(&forms, 1);
    let mut lie = GradedElement::zero(&forms, 1);
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        lhs = lhs.add(&koszul_bracket(p, al[i], &koszul_bracket(p, al[j], al[k])?)?)?;
        let x = contract_forms(&pp, &[al[i], al[j]])?;
        lie = lie.add(&lie_derivative(&x, al[k])?)?;
    }
    let f = contract_forms(&pp, &al)?.as_scalar();
    let rhs = lie
        .scale(&rat(-1, 2))
        .add(&de_rham_d(&GradedElement::scalar(&forms, f))?)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Frame;
    use crate::poly::{parse_poly, Chart};

    fn el(frame: &Frame, coeff: &str, labels: &[&str]) -> GradedElement {
        GradedElement::from_labels(frame, labels, parse_poly(coeff, frame.chart()).unwrap()).unwrap()
    }

    #[test]
    fn anomaly_on_non_poisson_bivector() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let f = Frame::forms(&c);
        let v = Frame::vectors(&c);
        let p = el(&v, "1", &["d/dx", "d/dy"]).add(&el(&v, "x", &["d/dx", "d/dz"])).unwrap();
        assert!(!schouten_bracket(&p, &p).unwrap().is_zero());
        let (a1, a2) = (el(&f, "1", &["dx"]), el(&f, "y", &["dy"]));
        let (l, r) = sharp_anomaly(&p, &a1, &a2).unwrap();
        assert!(!r.is_zero());
        assert_eq!(l, r);
        let (l, r) = quasi_jacobiator(&p, &a1, &a2, &el(&f, "y", &["dx"])).unwrap();
        assert_eq!(l, r);
    }
}
