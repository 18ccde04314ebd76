//! Model files: a TOML document declaring a chart, an optional algebroid, named objects and an
//! optional built-in model.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use gpdcalc_core::algebroid::AlgebroidChart;
use gpdcalc_core::exterior::{Frame, GradedElement, Kind};
use gpdcalc_core::models::{CotangentModel, LieBialgebra};
use gpdcalc_core::poly::{parse_poly, Chart, PolyExpr, Rational};
use gpdcalc_core::{CalcError, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub chart: Option<ChartSpec>,
    pub algebroid: Option<AlgebroidSpec>,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjectSpec>,
    pub model: Option<ModelSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub coordinates: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebroidSpec {
    pub rank: usize,
    pub names: Option<Vec<String>>,
    /// One row per generator: `ρ(e_a) = Σ_i anchor[a][i] ∂_i`.
    pub anchor: Vec<Vec<String>>,
    #[serde(default)]
    pub structure: Vec<BracketSpec>,
}

/// `[e_left, e_right] += coeff · e_result`, 1-based.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub left: usize,
    pub right: usize,
    pub result: usize,
    pub coeff: String,
}

/// `δ(e_source) += coeff · e_left ∧ e_right`, 1-based.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CobracketSpec {
    pub source: usize,
    pub left: usize,
    pub right: usize,
    pub coeff: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindSpec {
    Form,
    Multivector,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSpec {
    pub degree: usize,
    pub kind: Option<KindSpec>,
    #[serde(default)]
    pub terms: Vec<TermSpec>,
    #[serde(default)]
    pub tags: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    #[serde(default)]
    pub frame: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelSpec {
    Cotangent {
        n: usize,
    },
    Bialgebra {
        name: Option<String>,
        dim: usize,
        #[serde(default)]
        brackets: Vec<BracketSpec>,
        #[serde(default)]
        cobrackets: Vec<CobracketSpec>,
    },
}

pub const TAGS: &[&str] = &["poisson", "multiplicative", "base-form", "rho-compatible"];

#[derive(Debug)]
pub struct NamedObject {
    pub name: String,
    pub value: GradedElement,
    pub tags: Vec<String>,
}

/// A resolved model file.
#[derive(Debug)]
pub struct Model {
    pub algebroid: Option<AlgebroidChart>,
    pub cotangent: Option<CotangentModel>,
    pub bialgebra: Option<LieBialgebra>,
    pub objects: Vec<NamedObject>,
}

impl Model {
    pub fn object(&self, name: &str) -> Result<&GradedElement> {
        self.objects
            .iter()
            .find(|o| o.name == name)
            .map(|o| &o.value)
            .ok_or_else(|| CalcError::Validation(format!("object not found: `{name}`")))
    }
}

pub fn load(path: &Path) -> Result<Model> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CalcError::Validation(format!("cannot read {}: {e}", path.display())))?;
    parse_model(&text)
}

pub fn parse_model(text: &str) -> Result<Model> {
    let file: ModelFile = toml::from_str(text).map_err(|e| CalcError::Validation(format!("model file: {e}")))?;
    resolve(file)
}

fn resolve(file: ModelFile) -> Result<Model> {
    let mut cotangent = None;
    let mut bialgebra = None;
    match &file.model {
        Some(ModelSpec::Cotangent { n }) => cotangent = Some(CotangentModel::new(*n)?),
        Some(ModelSpec::Bialgebra { name, dim, brackets, cobrackets }) => {
            bialgebra = Some(bialgebra_of(name.as_deref().unwrap_or("model"), *dim, brackets, cobrackets)?)
        }
        None => {}
    }
    let chart = match (&file.chart, &cotangent) {
        (Some(c), Some(m)) => {
            let chart = Chart::new(c.coordinates.iter().map(String::as_str))?;
            if &chart != m.chart() {
                return Err(CalcError::InvalidChart(format!(
                    "chart must match the cotangent model coordinates {:?}",
                    m.chart().coordinates()
                )));
            }
            chart
        }
        (Some(c), None) => Chart::new(c.coordinates.iter().map(String::as_str))?,
        (None, Some(m)) => m.chart().clone(),
        (None, None) if file.algebroid.is_none() && file.objects.is_empty() => Chart::new(Vec::<String>::new())?,
        (None, None) => return Err(CalcError::InvalidChart("missing [chart] section".into())),
    };
    let algebroid = file.algebroid.as_ref().map(|a| algebroid_of(&chart, a)).transpose()?;
    let mut objects = Vec::new();
    for (name, spec) in &file.objects {
        let value = object_of(&chart, algebroid.as_ref(), spec)
            .map_err(|e| annotate(e, &format!("object `{name}`")))?;
        for t in &spec.tags {
            if !TAGS.contains(&t.as_str()) {
                return Err(CalcError::Validation(format!(
                    "object `{name}`: unknown tag `{t}` (expected one of {})",
                    TAGS.join(", ")
                )));
            }
        }
        objects.push(NamedObject { name: name.clone(), value, tags: spec.tags.clone() });
    }
    Ok(Model { algebroid, cotangent, bialgebra, objects })
}

fn annotate(e: CalcError, context: &str) -> CalcError {
    match e {
        CalcError::Degree(m) => CalcError::Degree(format!("{context}: {m}")),
        CalcError::FrameMismatch(m) => CalcError::FrameMismatch(format!("{context}: {m}")),
        CalcError::Validation(m) => CalcError::Validation(format!("{context}: {m}")),
        other => other,
    }
}

fn poly(chart: &Chart, text: &str) -> Result<PolyExpr> {
    parse_poly(text, chart)
}

fn rational(text: &str) -> Result<Rational> {
    text.trim()
        .parse::<Rational>()
        .map_err(|_| CalcError::Validation(format!("`{text}` is not a rational number")))
}

fn index(i: usize, len: usize, what: &str) -> Result<usize> {
    if i == 0 || i > len {
        return Err(CalcError::Validation(format!("{what} index {i} out of range 1..={len}")));
    }
    Ok(i - 1)
}

fn algebroid_of(chart: &Chart, spec: &AlgebroidSpec) -> Result<AlgebroidChart> {
    let r = spec.rank;
    let names: Vec<String> = match &spec.names {
        Some(n) if n.len() != r => {
            return Err(CalcError::InvalidAlgebroid(format!("{} names for rank {r}", n.len())));
        }
        Some(n) => n.clone(),
        None => (1..=r).map(|a| a.to_string()).collect(),
    };
    let anchor = spec
        .anchor
        .iter()
        .map(|row| row.iter().map(|f| poly(chart, f)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut brackets = Vec::new();
    for b in &spec.structure {
        brackets.push((
            index(b.left, r, "structure")?,
            index(b.right, r, "structure")?,
            index(b.result, r, "structure")?,
            poly(chart, &b.coeff)?,
        ));
    }
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    AlgebroidChart::from_brackets(chart, &names, anchor, &brackets)
}

fn bialgebra_of(name: &str, dim: usize, brackets: &[BracketSpec], cobrackets: &[CobracketSpec]) -> Result<LieBialgebra> {
    let mut br = Vec::new();
    for b in brackets {
        br.push((
            index(b.left, dim, "bracket")?,
            index(b.right, dim, "bracket")?,
            index(b.result, dim, "bracket")?,
            rational(&b.coeff)?,
        ));
    }
    let mut co = Vec::new();
    for c in cobrackets {
        co.push((
            index(c.source, dim, "cobracket")?,
            index(c.left, dim, "cobracket")?,
            index(c.right, dim, "cobracket")?,
            rational(&c.coeff)?,
        ));
    }
    LieBialgebra::new(name, dim, &br, &co)
}

fn is_vector_label(l: &str) -> bool {
    let l = l.trim();
    l.starts_with("d/d") || l.starts_with('∂') || l.starts_with("e_")
}

fn is_bundle_label(l: &str) -> bool {
    let l = l.trim();
    l.starts_with("e_") || l.starts_with("e^")
}

fn object_of(chart: &Chart, alg: Option<&AlgebroidChart>, spec: &ObjectSpec) -> Result<GradedElement> {
    let labels = spec.terms.iter().flat_map(|t| t.frame.iter());
    let kind = match spec.kind {
        Some(KindSpec::Form) => Kind::Form,
        Some(KindSpec::Multivector) => Kind::Multivector,
        None if labels.clone().any(|l| is_vector_label(l)) => Kind::Multivector,
        None => Kind::Form,
    };
    let frame = if labels.clone().any(|l| is_bundle_label(l)) {
        let alg = alg.ok_or_else(|| CalcError::Validation("bundle labels need an [algebroid] section".into()))?;
        match kind {
            Kind::Form => alg.split_forms().clone(),
            Kind::Multivector => alg.split_vectors().clone(),
        }
    } else {
        match kind {
            Kind::Form => Frame::forms(chart),
            Kind::Multivector => Frame::vectors(chart),
        }
    };
    let mut out = GradedElement::zero(&frame, spec.degree);
    for t in &spec.terms {
        if t.frame.len() != spec.degree {
            return Err(CalcError::Degree(format!(
                "term with frame [{}] has degree {}, declared {}",
                t.frame.join(", "),
                t.frame.len(),
                spec.degree
            )));
        }
        let labels: Vec<&str> = t.frame.iter().map(String::as_str).collect();
        out = out.add(&GradedElement::from_labels(&frame, &labels, poly(chart, &t.coeff)?)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infers_kind_and_frame() {
        let m = parse_model(
            r#"
            [chart]
            coordinates = ["q", "p"]
            [objects.P]
            degree = 2
            terms = [{ coeff = "1", frame = ["d/dq", "d/dp"] }]
            [objects.a]
            degree = 1
            terms = [{ coeff = "q*p", frame = ["dq"] }, { coeff = "2", frame = ["dq"] }]
            "#,
        )
        .unwrap();
        assert_eq!(m.object("P").unwrap().frame().kind(), Kind::Multivector);
        assert_eq!(m.object("a").unwrap().to_string(), "(q*p + 2)*dq");
    }

    #[test]
    fn degree_must_match_frame_length() {
        let e = parse_model(
            r#"
            [chart]
            coordinates = ["x"]
            [objects.w]
            degree = 2
            terms = [{ coeff = "x", frame = ["dx"] }]
            "#,
        )
        .unwrap_err();
        assert!(matches!(e, CalcError::Degree(_)));
    }

    #[test]
    fn cotangent_model_supplies_the_chart() {
        let m = parse_model("[model]\ntype = \"cotangent\"\nn = 2\n").unwrap();
        assert_eq!(m.cotangent.unwrap().chart().coordinates(), ["q1", "q2", "p1", "p2"]);
        let e = parse_model("[chart]\ncoordinates = [\"x\"]\n[model]\ntype = \"cotangent\"\nn = 1\n").unwrap_err();
        assert!(matches!(e, CalcError::InvalidChart(_)));
    }

    #[test]
    fn bundle_labels_need_an_algebroid() {
        let e = parse_model(
            "[chart]\ncoordinates = [\"x\"]\n[objects.l]\ndegree = 1\nterms = [{ coeff = \"1\", frame = [\"e^1\"] }]\n",
        )
        .unwrap_err();
        assert!(matches!(e, CalcError::Validation(_)));
    }
}
