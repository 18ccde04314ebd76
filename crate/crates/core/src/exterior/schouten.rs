use super::{GradedElement, Kind};
use crate::error::{CalcError, Result};

/// Schouten–Nijenhuis bracket of multivector fields on a chart.
///
/// Odd-variable form with right derivatives,
/// `[A,B] = Σ_i (A ∂ξ_i)(∂_i B) − (−1)^{(a−1)(b−1)} (B ∂ξ_i)(∂_i A)`,
/// which restricts to the Lie bracket on vector fields and to `[X,f] = X(f)`.
pub fn schouten_bracket(a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
    if a.frame != b.frame {
        return Err(CalcError::FrameMismatch("operands use different frames".into()));
    }
    if a.frame.kind != Kind::Multivector || a.frame.n_bundle() != 0 {
        return Err(CalcError::FrameMismatch(
            "Schouten bracket needs multivectors on a chart frame".into(),
        ));
    }
    let (da, db) = (a.degree as i64, b.degree as i64);
    let degree = (da + db - 1).max(0) as usize;
    let mut out = GradedElement::zero(&a.frame, degree);
    if da + db == 0 {
        return Ok(out);
    }
    let flip = if ((da - 1) * (db - 1)).rem_euclid(2) == 0 { -1 } else { 1 };
    for i in 0..a.frame.n_base() {
        let t1 = a.right_derivative(i).wedge(&b.partial(i))?;
        let t2 = b.right_derivative(i).wedge(&a.partial(i))?.scale_int(flip);
        out = out.add(&t1)?.add(&t2)?;
    }
    Ok(out)
}
