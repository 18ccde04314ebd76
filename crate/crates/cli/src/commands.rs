use gpdcalc_core::algebroid::{
    ce_differential, check_rho_compatible, cp_check, cp_from_base_form, cp_to_im, im_check, validate_algebroid,
    TensorKind,
};
use gpdcalc_core::exterior::{de_rham_d, koszul_bracket, schouten_bracket, GradedElement, Kind};
use gpdcalc_core::models::bialgebra_suite;
use gpdcalc_core::report::VerificationReport;
use gpdcalc_core::suites::{run_suite, SuiteParams};
use gpdcalc_core::{CalcError, Result};

use crate::model::{Model, NamedObject};

/// Validate everything the model file declares.
pub fn check(model: &Model) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("check");
    if let Some(alg) = &model.algebroid {
        report.merge(validate_algebroid(alg), "algebroid");
    }
    report.record(
        "objects-well-formed",
        "coefficients parse, labels resolve, degrees match",
        model.objects.len(),
        None,
    );
    for obj in &model.objects {
        for tag in &obj.tags {
            tag_check(model, obj, tag, &mut report)?;
        }
    }
    if let Some(b) = &model.bialgebra {
        report.merge(bialgebra_suite(b), "bialgebra");
    }
    Ok(report)
}

fn tag_check(model: &Model, obj: &NamedObject, tag: &str, report: &mut VerificationReport) -> Result<()> {
    let x = &obj.value;
    let context = format!("object {}", obj.name);
    match tag {
        "poisson" => {
            require_chart_multivector(x, 2, &obj.name)?;
            let pp = schouten_bracket(x, x)?;
            let failure = (!pp.is_zero()).then(|| format!("{context}: [P,P] = {pp}"));
            report.record("poisson", "[P,P] = 0", 1, failure);
        }
        "multiplicative" => {
            let m = model.cotangent.as_ref().ok_or_else(|| {
                CalcError::Validation(format!("{context}: tag `multiplicative` needs a cotangent model"))
            })?;
            let failure = m.is_multiplicative(x)?.witness.map(|w| format!("{context}: {w}"));
            report.record("multiplicative", "linear normal form on T*M", 1, failure);
        }
        "base-form" => {
            let alg = require_algebroid(model, tag, &context)?;
            let cp = cp_from_base_form(alg, x)?;
            report.merge(cp_check(alg, &cp), &context);
            report.merge(im_check(alg, &cp_to_im(alg, &cp)), &context);
        }
        "rho-compatible" => {
            let alg = require_algebroid(model, tag, &context)?;
            let kind = if x.frame() == alg.split_forms() {
                TensorKind::ZeroK
            } else if x.frame() == alg.split_vectors() {
                TensorKind::KZero
            } else {
                return Err(CalcError::FrameMismatch(format!("{context}: not written in the algebroid frame")));
            };
            report.merge(check_rho_compatible(alg, x, kind), &context);
        }
        other => return Err(CalcError::Validation(format!("{context}: unknown tag `{other}`"))),
    }
    Ok(())
}

fn require_algebroid<'a>(
    model: &'a Model,
    tag: &str,
    context: &str,
) -> Result<&'a gpdcalc_core::algebroid::AlgebroidChart> {
    model
        .algebroid
        .as_ref()
        .ok_or_else(|| CalcError::Validation(format!("{context}: tag `{tag}` needs an [algebroid] section")))
}

fn require_chart_multivector(x: &GradedElement, degree: usize, name: &str) -> Result<()> {
    if x.frame().kind() != Kind::Multivector || x.frame().n_bundle() != 0 {
        return Err(CalcError::FrameMismatch(format!("`{name}` must be a multivector on the chart")));
    }
    if x.degree() != degree {
        return Err(CalcError::Degree(format!("`{name}` has degree {}, expected {degree}", x.degree())));
    }
    Ok(())
}

pub fn bracket(model: &Model, poisson: Option<&str>, left: &str, right: &str, schouten: bool) -> Result<GradedElement> {
    let (a, b) = (model.object(left)?, model.object(right)?);
    if schouten {
        return schouten_bracket(a, b);
    }
    let name = poisson.ok_or_else(|| CalcError::Validation("--poisson is required unless --schouten is given".into()))?;
    let p = model.object(name)?;
    require_chart_multivector(p, 2, name)?;
    koszul_bracket(p, a, b)
}

/// De Rham on chart forms, `−[P,·]` on multivectors, Chevalley–Eilenberg on algebroid cochains.
pub fn differential(model: &Model, object: &str, poisson: Option<&str>) -> Result<GradedElement> {
    let x = model.object(object)?;
    match (x.frame().kind(), x.frame().n_bundle()) {
        (Kind::Form, 0) => de_rham_d(x),
        (Kind::Multivector, 0) => {
            let name = poisson.ok_or_else(|| {
                CalcError::FrameMismatch(format!("`{object}` is a multivector; pass --poisson for d_P = -[P,·]"))
            })?;
            let p = model.object(name)?;
            require_chart_multivector(p, 2, name)?;
            Ok(schouten_bracket(p, x)?.neg())
        }
        (Kind::Form, _) => match &model.algebroid {
            Some(alg) => ce_differential(alg, x),
            None => Err(CalcError::FrameMismatch(format!("`{object}` is not a chart form"))),
        },
        (Kind::Multivector, _) => Err(CalcError::FrameMismatch(format!(
            "no differential for algebroid multivector `{object}`"
        ))),
    }
}

pub fn verify(suite: &str, params: SuiteParams) -> Result<VerificationReport> {
    if params.trials == 0 {
        return Err(CalcError::Validation("--trials must be positive".into()));
    }
    run_suite(suite, params)
}
