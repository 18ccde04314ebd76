//! Graded exterior algebra over a split frame (chart directions then bundle directions).

mod identities;
mod koszul;
mod schouten;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::error::{CalcError, Result};
use crate::poly::{Chart, PolyExpr, Rational};

pub use identities::{contract_forms, quasi_jacobiator, sharp_anomaly};
pub use koszul::{
    contract_psharp, iota_p, koszul_bracket, koszul_bracket_oracle, lie_derivative_p, psharp_1form,
    psharp_kform, sharp_shuffle_residual, sharp_shuffle_residual_with, wedge_power_psharp,
    FormVectorTensor, SecondSumSign,
};
pub use schouten::schouten_bracket;

/// Whether the frame spans covectors or vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Form,
    Multivector,
}

impl Kind {
    pub fn dual(self) -> Kind {
        match self {
            Kind::Form => Kind::Multivector,
            Kind::Multivector => Kind::Form,
        }
    }
}

/// Chart directions followed by named bundle directions.
#[derive(Clone, Debug)]
pub struct Frame {
    chart: Chart,
    bundle: Arc<[String]>,
    kind: Kind,
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.chart == other.chart
            && (Arc::ptr_eq(&self.bundle, &other.bundle) || self.bundle == other.bundle)
    }
}

impl Eq for Frame {}

impl Frame {
    pub fn new<I, S>(chart: &Chart, bundle: I, kind: Kind) -> Result<Frame>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let bundle: Vec<String> = bundle.into_iter().map(Into::into).collect();
        for (i, b) in bundle.iter().enumerate() {
            if b.is_empty() || b.chars().any(|c| !(c.is_ascii_alphanumeric() || c == '_')) {
                return Err(CalcError::FrameMismatch(format!("bad bundle label `{b}`")));
            }
            if bundle[..i].contains(b) {
                return Err(CalcError::FrameMismatch(format!("duplicate bundle label `{b}`")));
            }
        }
        if chart.len() + bundle.len() > 64 {
            return Err(CalcError::FrameMismatch("frames are limited to 64 directions".into()));
        }
        Ok(Frame {
            chart: chart.clone(),
            bundle: bundle.into(),
            kind,
        })
    }

    pub fn forms(chart: &Chart) -> Frame {
        Frame::new(chart, Vec::<String>::new(), Kind::Form).unwrap()
    }

    pub fn vectors(chart: &Chart) -> Frame {
        Frame::new(chart, Vec::<String>::new(), Kind::Multivector).unwrap()
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn bundle_names(&self) -> &[String] {
        &self.bundle
    }

    pub fn n_base(&self) -> usize {
        self.chart.len()
    }

    pub fn n_bundle(&self) -> usize {
        self.bundle.len()
    }

    pub fn dim(&self) -> usize {
        self.chart.len() + self.bundle.len()
    }

    pub fn is_bundle_dir(&self, d: usize) -> bool {
        d >= self.chart.len()
    }

    pub fn bundle_dir(&self, a: usize) -> usize {
        self.chart.len() + a
    }

    pub fn dual(&self) -> Frame {
        Frame {
            chart: self.chart.clone(),
            bundle: self.bundle.clone(),
            kind: self.kind.dual(),
        }
    }

    /// Same chart and kind, no bundle block.
    pub fn base_only(&self) -> Frame {
        Frame {
            chart: self.chart.clone(),
            bundle: Arc::from(Vec::<String>::new()),
            kind: self.kind,
        }
    }

    pub fn is_dual_of(&self, other: &Frame) -> bool {
        self.kind != other.kind && self.chart == other.chart && self.bundle == other.bundle
    }

    pub fn label(&self, d: usize) -> String {
        let n = self.chart.len();
        match (self.kind, d < n) {
            (Kind::Form, true) => format!("d{}", self.chart.coordinates()[d]),
            (Kind::Form, false) => format!("e^{}", self.bundle[d - n]),
            (Kind::Multivector, true) => format!("d/d{}", self.chart.coordinates()[d]),
            (Kind::Multivector, false) => format!("e_{}", self.bundle[d - n]),
        }
    }

    pub fn parse_label(&self, label: &str) -> Result<usize> {
        let label = label.trim();
        let (base, bundle) = match self.kind {
            Kind::Form => (label.strip_prefix('d'), label.strip_prefix("e^")),
            Kind::Multivector => (
                label
                    .strip_prefix("d/d")
                    .or_else(|| label.strip_prefix("∂/∂"))
                    .or_else(|| label.strip_prefix('∂')),
                label.strip_prefix("e_"),
            ),
        };
        if let Some(b) = bundle {
            if let Some(a) = self.bundle.iter().position(|x| x == b) {
                return Ok(self.chart.len() + a);
            }
        }
        if let Some(c) = base {
            if let Some(i) = self.chart.index_of(c) {
                return Ok(i);
            }
        }
        Err(CalcError::UnknownLabel(label.to_string()))
    }
}

/// Ascending list of set bits.
pub fn bits(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        out.push(b);
        m &= m - 1;
    }
    out
}

/// Sign of `e_A ∧ e_B` relative to the sorted basis element, or `None` when they overlap.
pub fn wedge_sign(a: u64, b: u64) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut m = b;
    while m != 0 {
        let j = m.trailing_zeros();
        inversions += (a >> j).count_ones();
        m &= m - 1;
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Sort a list of directions into a mask, with the permutation sign; `None` on repeats.
pub fn sort_dirs(dirs: &[usize]) -> Option<(u64, i64)> {
    let mut mask = 0u64;
    let mut sign = 1;
    for &d in dirs {
        let s = wedge_sign(mask, 1 << d)?;
        sign *= s;
        mask |= 1 << d;
    }
    Some((mask, sign))
}

fn pos_sign(mask: u64, d: usize) -> i64 {
    if (mask & ((1u64 << d) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Homogeneous element of the exterior algebra of a frame.
#[derive(Clone, Debug)]
pub struct GradedElement {
    frame: Frame,
    degree: usize,
    comps: BTreeMap<u64, PolyExpr>,
}

impl PartialEq for GradedElement {
    fn eq(&self, other: &Self) -> bool {
        self.frame == other.frame
            && self.comps == other.comps
            && (self.degree == other.degree || self.comps.is_empty())
    }
}

impl Eq for GradedElement {}

impl GradedElement {
    pub fn zero(frame: &Frame, degree: usize) -> Self {
        GradedElement {
            frame: frame.clone(),
            degree,
            comps: BTreeMap::new(),
        }
    }

    pub fn scalar(frame: &Frame, f: PolyExpr) -> Self {
        let mut out = Self::zero(frame, 0);
        out.insert(0, f);
        out
    }

    /// `coeff · e_{d1} ∧ … ∧ e_{dk}` in the given (not necessarily sorted) order.
    pub fn basis(frame: &Frame, dirs: &[usize], coeff: PolyExpr) -> Self {
        let mut out = Self::zero(frame, dirs.len());
        if let Some((mask, sign)) = sort_dirs(dirs) {
            out.insert(mask, coeff.scale_int(sign));
        }
        out
    }

    pub fn from_labels(frame: &Frame, labels: &[&str], coeff: PolyExpr) -> Result<Self> {
        let dirs = labels
            .iter()
            .map(|l| frame.parse_label(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::basis(frame, &dirs, coeff))
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn chart(&self) -> &Chart {
        &self.frame.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (u64, &PolyExpr)> {
        self.comps.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, mask: u64) -> PolyExpr {
        self.comps
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| PolyExpr::zero(&self.frame.chart))
    }

    /// Coefficient of `e_{d1} ∧ … ∧ e_{dk}` for an arbitrary ordering.
    pub fn coeff_of(&self, dirs: &[usize]) -> PolyExpr {
        match sort_dirs(dirs) {
            Some((mask, sign)) => self.coeff(mask).scale_int(sign),
            None => PolyExpr::zero(&self.frame.chart),
        }
    }

    /// Scalar part of a degree-0 element.
    pub fn as_scalar(&self) -> PolyExpr {
        self.coeff(0)
    }

    pub(crate) fn insert(&mut self, mask: u64, f: PolyExpr) {
        if f.is_zero() {
            return;
        }
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        match self.comps.get_mut(&mask) {
            Some(g) => {
                *g = &*g + &f;
                if g.is_zero() {
                    self.comps.remove(&mask);
                }
            }
            None => {
                self.comps.insert(mask, f);
            }
        }
    }

    fn check_frame(&self, other: &Self) -> Result<()> {
        if self.frame == other.frame {
            Ok(())
        } else {
            Err(CalcError::FrameMismatch("operands use different frames".into()))
        }
    }

    /// Sum; a zero operand is absorbed whatever its nominal degree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_frame(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(CalcError::Degree(format!(
                "cannot add degree {} and degree {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (m, f) in &other.comps {
            out.insert(*m, f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|f| -f)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(|f| f.scale(c))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.map_coeffs(|f| f.scale_int(n))
    }

    pub fn mul_poly(&self, g: &PolyExpr) -> Self {
        self.map_coeffs(|f| f * g)
    }

    pub fn map_coeffs(&self, mut op: impl FnMut(&PolyExpr) -> PolyExpr) -> Self {
        let mut out = Self::zero(&self.frame, self.degree);
        for (m, f) in &self.comps {
            out.insert(*m, op(f));
        }
        out
    }

    /// Keep the components selected by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(u64) -> bool) -> Self {
        let mut out = Self::zero(&self.frame, self.degree);
        for (m, f) in &self.comps {
            if keep(*m) {
                out.insert(*m, f.clone());
            }
        }
        out
    }

    pub fn bundle_count(&self, mask: u64) -> usize {
        (mask >> self.frame.n_base()).count_ones() as usize
    }

    /// Components with exactly `j` bundle factors.
    pub fn bundle_block(&self, j: usize) -> Self {
        let n = self.frame.n_base();
        self.filter(|m| (m >> n).count_ones() as usize == j)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_frame(other)?;
        let mut out = Self::zero(&self.frame, self.degree + other.degree);
        for (a, f) in &self.comps {
            for (b, g) in &other.comps {
                if let Some(s) = wedge_sign(*a, *b) {
                    out.insert(a | b, (f * g).scale_int(s));
                }
            }
        }
        Ok(out)
    }

    /// First-slot contraction with the dual basis vector of direction `d`.
    pub fn interior_dir(&self, d: usize) -> Self {
        let mut out = Self::zero(&self.frame, self.degree.saturating_sub(1));
        for (m, f) in &self.comps {
            if m & (1 << d) != 0 {
                out.insert(m & !(1 << d), f.scale_int(pos_sign(*m, d)));
            }
        }
        out
    }

    /// Right derivative in the odd variable `d`: moves the factor to the end and removes it.
    pub fn right_derivative(&self, d: usize) -> Self {
        let mut out = Self::zero(&self.frame, self.degree.saturating_sub(1));
        for (m, f) in &self.comps {
            if m & (1 << d) != 0 {
                let after = (m >> (d + 1)).count_ones();
                let s = if after % 2 == 0 { 1 } else { -1 };
                out.insert(m & !(1 << d), f.scale_int(s));
            }
        }
        out
    }

    pub fn partial(&self, coordinate: usize) -> Self {
        self.map_coeffs(|f| f.partial(coordinate))
    }

    /// Apply a coefficient map that may change the chart, keeping directions.
    pub fn map_chart(&self, frame: &Frame, mut op: impl FnMut(&PolyExpr) -> PolyExpr) -> Result<Self> {
        if frame.dim() != self.frame.dim() || frame.kind != self.frame.kind {
            return Err(CalcError::FrameMismatch("target frame has a different shape".into()));
        }
        let mut out = Self::zero(frame, self.degree);
        for (m, f) in &self.comps {
            out.insert(*m, op(f));
        }
        Ok(out)
    }

    /// Re-express in another frame of the same kind through `dir_map` (injective).
    pub fn reframe(
        &self,
        frame: &Frame,
        dir_map: &[usize],
        mut op: impl FnMut(&PolyExpr) -> PolyExpr,
    ) -> Result<Self> {
        if dir_map.len() != self.frame.dim() {
            return Err(CalcError::FrameMismatch("direction map has the wrong length".into()));
        }
        let mut out = Self::zero(frame, self.degree);
        for (m, f) in &self.comps {
            let dirs: Vec<usize> = bits(*m).into_iter().map(|d| dir_map[d]).collect();
            let (mask, sign) = sort_dirs(&dirs)
                .ok_or_else(|| CalcError::FrameMismatch("direction map is not injective".into()))?;
            out.insert(mask, op(f).scale_int(sign));
        }
        Ok(out)
    }

    /// Embed a bundle-free element into a frame with the same chart and kind.
    pub fn embed(&self, frame: &Frame) -> Result<Self> {
        if frame.chart != self.frame.chart || frame.kind != self.frame.kind {
            return Err(CalcError::FrameMismatch("embedding needs the same chart and kind".into()));
        }
        let n = self.frame.n_base();
        if self.comps.keys().any(|m| m >> n != 0) {
            return Err(CalcError::FrameMismatch("element has bundle factors".into()));
        }
        let mut out = Self::zero(frame, self.degree);
        out.comps = self.comps.clone();
        Ok(out)
    }

    /// The same element over the bundle-free frame; fails on bundle factors.
    pub fn to_base(&self) -> Result<Self> {
        let n = self.frame.n_base();
        if self.comps.keys().any(|m| m >> n != 0) {
            return Err(CalcError::FrameMismatch("element has bundle factors".into()));
        }
        let mut out = Self::zero(&self.frame.base_only(), self.degree);
        out.comps = self.comps.clone();
        Ok(out)
    }

    pub fn has_bundle_factors(&self) -> bool {
        let n = self.frame.n_base();
        self.comps.keys().any(|m| m >> n != 0)
    }

    /// Sorted direction lists with coefficients, in lexicographic frame order.
    pub fn sorted_terms(&self) -> Vec<(Vec<usize>, &PolyExpr)> {
        let mut v: Vec<(Vec<usize>, &PolyExpr)> = self.comps.iter().map(|(m, f)| (bits(*m), f)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

/// Contract `a` into `b` (opposite kinds): `ι_{a1∧…∧am} = ι_{a1} ∘ … ∘ ι_{am}`.
pub fn contract(a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
    if !a.frame.is_dual_of(&b.frame) {
        return Err(CalcError::FrameMismatch("contraction needs dual frames".into()));
    }
    if a.degree > b.degree {
        return Ok(GradedElement::zero(&b.frame, 0));
    }
    let mut out = GradedElement::zero(&b.frame, b.degree - a.degree);
    for (am, f) in &a.comps {
        let mut cur = b.clone();
        for d in bits(*am).into_iter().rev() {
            cur = cur.interior_dir(d);
        }
        for (m, g) in cur.comps {
            out.insert(m, &g * f);
        }
    }
    Ok(out)
}

/// `ι_v w` for a degree-1 `v` of the opposite kind.
pub fn interior_product(v: &GradedElement, w: &GradedElement) -> Result<GradedElement> {
    if v.degree != 1 {
        return Err(CalcError::Degree("interior product needs a degree-1 argument".into()));
    }
    if w.degree == 0 {
        return Err(CalcError::Degree("cannot contract into a degree-0 element".into()));
    }
    contract(v, w)
}

/// `ω(v1, …, vk) = ι_{vk} … ι_{v1} ω`.
pub fn evaluate(w: &GradedElement, args: &[GradedElement]) -> Result<PolyExpr> {
    if args.len() != w.degree {
        return Err(CalcError::Degree(format!(
            "evaluation of a degree-{} element on {} arguments",
            w.degree,
            args.len()
        )));
    }
    let mut cur = w.clone();
    for v in args {
        cur = interior_product(v, &cur)?;
    }
    Ok(cur.as_scalar())
}

/// Same as [`evaluate`] with basis directions as arguments.
pub fn evaluate_dirs(w: &GradedElement, dirs: &[usize]) -> PolyExpr {
    let mut cur = w.clone();
    for &d in dirs {
        cur = cur.interior_dir(d);
    }
    if cur.degree == 0 {
        cur.as_scalar()
    } else {
        PolyExpr::zero(w.chart())
    }
}

pub fn wedge(a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
    a.wedge(b)
}

fn require_chart_forms(w: &GradedElement) -> Result<()> {
    if w.frame.kind != Kind::Form {
        return Err(CalcError::FrameMismatch("expected a differential form".into()));
    }
    if w.frame.n_bundle() != 0 {
        return Err(CalcError::FrameMismatch(
            "de Rham d is undefined on bundle covectors".into(),
        ));
    }
    Ok(())
}

pub fn de_rham_d(w: &GradedElement) -> Result<GradedElement> {
    require_chart_forms(w)?;
    let mut out = GradedElement::zero(&w.frame, w.degree + 1);
    for (m, f) in &w.comps {
        for i in 0..w.frame.n_base() {
            if m & (1 << i) != 0 {
                continue;
            }
            let g = f.partial(i);
            if !g.is_zero() {
                out.insert(m | (1 << i), g.scale_int(wedge_sign(1 << i, *m).unwrap()));
            }
        }
    }
    Ok(out)
}

/// `ℒ_v w = ι_v dw + d ι_v w`.
pub fn lie_derivative(v: &GradedElement, w: &GradedElement) -> Result<GradedElement> {
    require_chart_forms(w)?;
    if v.degree != 1 || !v.frame.is_dual_of(&w.frame) {
        return Err(CalcError::FrameMismatch("Lie derivative needs a vector field on the same chart".into()));
    }
    let a = contract(v, &de_rham_d(w)?)?;
    if w.degree == 0 {
        return Ok(a);
    }
    a.add(&de_rham_d(&contract(v, w)?)?)
}

/// Vector field `Σ c_i ∂_i` from coefficient list.
pub fn vector_field(frame: &Frame, coeffs: &[PolyExpr]) -> GradedElement {
    let mut out = GradedElement::zero(frame, 1);
    for (i, c) in coeffs.iter().enumerate() {
        out.insert(1 << i, c.clone());
    }
    out
}

pub fn vector_coeffs(v: &GradedElement) -> Vec<PolyExpr> {
    (0..v.frame.dim()).map(|i| v.coeff(1 << i)).collect()
}

/// Apply a degree-0 derivation determined by its values on generators.
pub fn apply_derivation(
    w: &GradedElement,
    image: impl Fn(usize) -> Option<GradedElement>,
) -> Result<GradedElement> {
    let mut out = GradedElement::zero(&w.frame, w.degree);
    let images: Vec<Option<GradedElement>> = (0..w.frame.dim()).map(&image).collect();
    for (m, f) in &w.comps {
        for d in bits(*m) {
            let Some(img) = &images[d] else { continue };
            let low = m & ((1u64 << d) - 1);
            let high = m & !((1u64 << (d + 1)) - 1);
            let pre = GradedElement::basis(&w.frame, &bits(low), f.clone());
            let post = GradedElement::basis(&w.frame, &bits(high), PolyExpr::one(w.chart()));
            out = out.add(&pre.wedge(img)?.wedge(&post)?)?;
        }
    }
    Ok(out)
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (dirs, c)) in terms.iter().enumerate() {
            let labels: Vec<String> = dirs.iter().map(|&d| self.frame.label(d)).collect();
            let basis = labels.join("∧");
            let single = c.num_terms() == 1;
            let (neg, body) = if single {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                }
            } else {
                (false, format!("({c})"))
            };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if basis.is_empty() {
                write!(f, "{body}")?;
            } else if single && c.constant_value().is_some_and(|v| v.abs().is_one()) {
                write!(f, "{basis}")?;
            } else {
                write!(f, "{body}*{basis}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn setup() -> (Chart, Frame, Frame) {
        let c = Chart::new(["q", "p"]).unwrap();
        let f = Frame::forms(&c);
        let v = Frame::vectors(&c);
        (c, f, v)
    }

    fn el(frame: &Frame, coeff: &str, labels: &[&str]) -> GradedElement {
        GradedElement::from_labels(frame, labels, parse_poly(coeff, frame.chart()).unwrap()).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let (_, f, _) = setup();
        assert!(el(&f, "1", &["dq"]).wedge(&el(&f, "1", &["dq"])).unwrap().is_zero());
        let w = el(&f, "1", &["dq"]).wedge(&el(&f, "1", &["dp"])).unwrap();
        assert_eq!(w.to_string(), "dq∧dp");
        let w = el(&f, "q", &["dq"]).wedge(&el(&f, "p", &["dp"])).unwrap();
        assert_eq!(w.to_string(), "q*p*dq∧dp");
        let back = el(&f, "1", &["dp"]).wedge(&el(&f, "1", &["dq"])).unwrap();
        assert_eq!(back.to_string(), "-dq∧dp");
    }

    #[test]
    fn interior_examples() {
        let (_, f, v) = setup();
        let w = el(&f, "1", &["dq", "dp"]);
        assert_eq!(interior_product(&el(&v, "1", &["d/dq"]), &w).unwrap(), el(&f, "1", &["dp"]));
        assert_eq!(interior_product(&el(&v, "1", &["d/dp"]), &w).unwrap(), el(&f, "-1", &["dq"]));
        assert!(interior_product(&el(&v, "1", &["d/dp"]), &el(&f, "q", &["dq"])).unwrap().is_zero());
        assert!(matches!(
            interior_product(&el(&v, "1", &["d/dp"]), &el(&f, "q", &[])),
            Err(CalcError::Degree(_))
        ));
    }

    #[test]
    fn d_examples() {
        let (_, f, _) = setup();
        assert_eq!(de_rham_d(&el(&f, "q*p", &["dq"])).unwrap(), el(&f, "-q", &["dq", "dp"]));
        assert!(de_rham_d(&el(&f, "1", &["dq"])).unwrap().is_zero());
        assert_eq!(de_rham_d(&el(&f, "q", &[])).unwrap(), el(&f, "1", &["dq"]));
    }

    #[test]
    fn d_rejects_bundle_frames() {
        let (c, _, _) = setup();
        let split = Frame::new(&c, ["1"], Kind::Form).unwrap();
        let w = el(&split, "1", &["e^1"]);
        assert!(matches!(de_rham_d(&w), Err(CalcError::FrameMismatch(_))));
    }

    #[test]
    fn lie_derivative_examples() {
        let (_, f, v) = setup();
        let dq = el(&f, "1", &["dq"]);
        assert_eq!(lie_derivative(&el(&v, "1", &["d/dq"]), &el(&f, "q", &["dq"])).unwrap(), dq);
        assert!(lie_derivative(&el(&v, "1", &["d/dp"]), &dq).unwrap().is_zero());
        assert_eq!(lie_derivative(&el(&v, "q", &["d/dq"]), &dq).unwrap(), dq);
    }

    #[test]
    fn labels_round_trip() {
        let (c, _, _) = setup();
        let split = Frame::new(&c, ["1", "2"], Kind::Multivector).unwrap();
        for d in 0..split.dim() {
            assert_eq!(split.parse_label(&split.label(d)).unwrap(), d);
        }
        assert_eq!(split.parse_label("∂q").unwrap(), 0);
        assert!(split.parse_label("e^1").is_err());
    }

    #[test]
    fn evaluation_is_determinant() {
        let (_, f, _) = setup();
        let w = el(&f, "1", &["dq", "dp"]);
        assert_eq!(evaluate_dirs(&w, &[0, 1]).to_string(), "1");
        assert_eq!(evaluate_dirs(&w, &[1, 0]).to_string(), "-1");
    }
}
