//! Crossed modules of (differential) graded Lie algebras, checked on sampled generators.
//!
//! Elements are graded by `|x| = deg x − 1` on both sides.

use crate::error::Result;
use crate::exterior::{de_rham_d, koszul_bracket, schouten_bracket, wedge_power_psharp, Frame, GradedElement, Kind};
use crate::models::CotangentModel;
use crate::poly::int;
use crate::report::VerificationReport;
use crate::sampling::Sampler;

pub type UnaryMap = Box<dyn Fn(&GradedElement) -> Result<GradedElement>>;
pub type BinaryMap = Box<dyn Fn(&GradedElement, &GradedElement) -> Result<GradedElement>>;
/// Returns a description of the problem when the element leaves the space.
pub type Membership = Box<dyn Fn(&GradedElement) -> Option<String>>;

pub struct CrossedModuleWitness {
    pub name: String,
    pub lower: Vec<GradedElement>,
    pub upper: Vec<GradedElement>,
    pub phi: UnaryMap,
    pub lower_bracket: BinaryMap,
    pub upper_bracket: BinaryMap,
    /// `x ▷ u` for `x` upper, `u` lower.
    pub action: BinaryMap,
    pub lower_d: Option<UnaryMap>,
    pub upper_d: Option<UnaryMap>,
    pub upper_closure: Option<Membership>,
}

/// A pair `(f, F)` of maps between two witnesses, `f` on the lower and `F` on the upper side.
pub struct MorphismSquare<'a> {
    pub source: &'a CrossedModuleWitness,
    pub target: &'a CrossedModuleWitness,
    pub lower_map: UnaryMap,
    pub upper_map: UnaryMap,
}

fn grade(x: &GradedElement) -> i64 {
    x.degree() as i64 - 1
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A generator, or a generator plus an integer multiple of another one of the same degree.
fn pick(pool: &[GradedElement], s: &mut Sampler) -> GradedElement {
    let a = &pool[s.index(pool.len())];
    let b = &pool[s.index(pool.len())];
    if a != b && a.degree() == b.degree() && a.frame() == b.frame() && s.chance(0.5) {
        a.add(&b.scale_int(s.nonzero_int())).expect("same frame and degree")
    } else {
        a.clone()
    }
}

fn residual(lhs: Result<GradedElement>, rhs: Result<GradedElement>) -> std::result::Result<(), String> {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            if l == r || (l.is_zero() && r.is_zero()) {
                return Ok(());
            }
            match l.sub(&r) {
                Ok(d) => Err(format!("residual {d}")),
                Err(_) => Err(format!("left side {l} and right side {r} do not live in the same space")),
            }
        }
        (Err(e), _) | (_, Err(e)) => Err(format!("evaluation failed: {e}")),
    }
}

fn sum(a: Result<GradedElement>, b: Result<GradedElement>, sb: i64) -> Result<GradedElement> {
    let (a, b) = (a?, b?);
    if a.is_zero() && b.degree() != a.degree() {
        return Ok(b.scale_int(sb));
    }
    if b.is_zero() {
        return Ok(a);
    }
    a.add(&b.scale_int(sb))
}

fn bad_generators(w: &CrossedModuleWitness) -> Option<String> {
    if w.lower.is_empty() || w.upper.is_empty() {
        return Some("witness needs at least one lower and one upper generator".into());
    }
    None
}

pub fn check_crossed_module(w: &CrossedModuleWitness, trials: usize, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new(format!("crossed-module {}", w.name));
    if let Some(e) = bad_generators(w) {
        report.record("generators", "nonempty generator lists", 0, Some(e));
        return report;
    }
    let mut s = Sampler::new(seed);
    let samples: Vec<[GradedElement; 4]> = (0..trials)
        .map(|_| [pick(&w.upper, &mut s), pick(&w.upper, &mut s), pick(&w.lower, &mut s), pick(&w.lower, &mut s)])
        .collect();
    let show_xu = |x: &GradedElement, u: &GradedElement| format!("x = {x}, u = {u}");

    {
        let mut t = report.tally("phi-degree", "phi preserves degree");
        for [_, _, u, _] in &samples {
            match (w.phi)(u) {
                Ok(f) => t.expect(f.degree() == u.degree(), || format!("u = {u}: phi(u) = {f} has degree {}", f.degree())),
                Err(e) => t.fail(|| format!("u = {u}: phi failed: {e}")),
            }
        }
    }
    if let Some(member) = &w.upper_closure {
        let mut t = report.tally("upper-closure", "bracket and differential preserve the upper space");
        for [x, y, _, _] in &samples {
            let mut problem = match (w.upper_bracket)(x, y) {
                Ok(b) => member(&b).map(|m| format!("[x, y] = {b}: {m}")),
                Err(e) => Some(format!("bracket failed: {e}")),
            };
            if problem.is_none() {
                if let Some(d) = &w.upper_d {
                    problem = match d(x) {
                        Ok(dx) => member(&dx).map(|m| format!("dx = {dx}: {m}")),
                        Err(e) => Some(format!("differential failed: {e}")),
                    };
                }
            }
            t.expect(problem.is_none(), || format!("x = {x}, y = {y}: {}", problem.clone().unwrap()));
        }
    }
    {
        let mut t = report.tally("axiom-1", "phi(u) ▷ v = [u, v]");
        for [_, _, u, v] in &samples {
            let lhs = (w.phi)(u).and_then(|f| (w.action)(&f, v));
            let r = residual(lhs, (w.lower_bracket)(u, v));
            t.expect(r.is_ok(), || format!("u = {u}, v = {v}: {}", r.clone().unwrap_err()));
        }
    }
    {
        let mut t = report.tally("axiom-2", "phi(x ▷ u) = [x, phi(u)]");
        for [x, _, u, _] in &samples {
            let lhs = (w.action)(x, u).and_then(|a| (w.phi)(&a));
            let rhs = (w.phi)(u).and_then(|f| (w.upper_bracket)(x, &f));
            let r = residual(lhs, rhs);
            t.expect(r.is_ok(), || format!("{}: {}", show_xu(x, u), r.clone().unwrap_err()));
        }
    }
    {
        let mut t = report.tally("action-derivation", "x ▷ [u, v] = [x ▷ u, v] + (-1)^{|x||u|} [u, x ▷ v]");
        for [x, _, u, v] in &samples {
            let lhs = (w.lower_bracket)(u, v).and_then(|b| (w.action)(x, &b));
            let a = (w.action)(x, u).and_then(|xu| (w.lower_bracket)(&xu, v));
            let b = (w.action)(x, v).and_then(|xv| (w.lower_bracket)(u, &xv));
            let r = residual(lhs, sum(a, b, sign(grade(x) * grade(u))));
            t.expect(r.is_ok(), || format!("x = {x}, u = {u}, v = {v}: {}", r.clone().unwrap_err()));
        }
    }
    {
        let mut t = report.tally(
            "action-representation",
            "[x, y] ▷ u = x ▷ (y ▷ u) - (-1)^{|x||y|} y ▷ (x ▷ u)",
        );
        for [x, y, u, _] in &samples {
            let lhs = (w.upper_bracket)(x, y).and_then(|b| (w.action)(&b, u));
            let a = (w.action)(y, u).and_then(|yu| (w.action)(x, &yu));
            let b = (w.action)(x, u).and_then(|xu| (w.action)(y, &xu));
            let r = residual(lhs, sum(a, b, -sign(grade(x) * grade(y))));
            t.expect(r.is_ok(), || format!("x = {x}, y = {y}, u = {u}: {}", r.clone().unwrap_err()));
        }
    }
    {
        let mut t = report.tally("phi-bracket-morphism", "phi[u, v] = [phi(u), phi(v)]");
        for [_, _, u, v] in &samples {
            let lhs = (w.lower_bracket)(u, v).and_then(|b| (w.phi)(&b));
            let rhs = (w.phi)(u).and_then(|fu| (w.phi)(v).and_then(|fv| (w.upper_bracket)(&fu, &fv)));
            let r = residual(lhs, rhs);
            t.expect(r.is_ok(), || format!("u = {u}, v = {v}: {}", r.clone().unwrap_err()));
        }
    }
    if let (Some(dl), Some(du)) = (&w.lower_d, &w.upper_d) {
        {
            let mut t = report.tally("phi-cochain", "phi(d u) = d phi(u)");
            for [_, _, u, _] in &samples {
                let lhs = dl(u).and_then(|d| (w.phi)(&d));
                let rhs = (w.phi)(u).and_then(|f| du(&f));
                let r = residual(lhs, rhs);
                t.expect(r.is_ok(), || format!("u = {u}: {}", r.clone().unwrap_err()));
            }
        }
        {
            let mut t = report.tally("d-compatibility", "d(x ▷ u) = (dx) ▷ u + (-1)^{|x|} x ▷ du");
            for [x, _, u, _] in &samples {
                let lhs = (w.action)(x, u).and_then(|a| dl(&a));
                let a = du(x).and_then(|dx| (w.action)(&dx, u));
                let b = dl(u).and_then(|d| (w.action)(x, &d));
                let r = residual(lhs, sum(a, b, sign(grade(x))));
                t.expect(r.is_ok(), || format!("{}: {}", show_xu(x, u), r.clone().unwrap_err()));
            }
        }
    }
    report.note(degree_note(w));
    report
}

fn max_poly_degree(pool: &[GradedElement]) -> u32 {
    pool.iter()
        .flat_map(|x| x.components().filter_map(|(_, f)| f.total_degree()))
        .max()
        .unwrap_or(0)
}

fn degree_note(w: &CrossedModuleWitness) -> String {
    let degs = |pool: &[GradedElement]| {
        let mut d: Vec<usize> = pool.iter().map(GradedElement::degree).collect();
        d.sort_unstable();
        d.dedup();
        d.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    };
    format!(
        "samples: upper degrees {{{}}} with coefficient degree <= {}, lower degrees {{{}}} with coefficient degree <= {}; \
         every residual is an exact polynomial",
        degs(&w.upper),
        max_poly_degree(&w.upper),
        degs(&w.lower),
        max_poly_degree(&w.lower)
    )
}

pub fn check_morphism(square: &MorphismSquare<'_>, trials: usize, seed: u64) -> VerificationReport {
    let (src, tgt) = (square.source, square.target);
    let mut report = VerificationReport::new(format!("morphism {} -> {}", src.name, tgt.name));
    if let Some(e) = bad_generators(src) {
        report.record("generators", "nonempty generator lists", 0, Some(e));
        return report;
    }
    let (f, big_f) = (&square.lower_map, &square.upper_map);
    let mut s = Sampler::new(seed);
    let samples: Vec<[GradedElement; 4]> = (0..trials)
        .map(|_| [pick(&src.upper, &mut s), pick(&src.upper, &mut s), pick(&src.lower, &mut s), pick(&src.lower, &mut s)])
        .collect();
    {
        let mut t = report.tally("square-commutes", "F ∘ phi = phi' ∘ f");
        for [_, _, u, _] in &samples {
            let lhs = (src.phi)(u).and_then(|p| big_f(&p));
            let rhs = f(u).and_then(|fu| (tgt.phi)(&fu));
            let r = residual(lhs, rhs);
            t.expect(r.is_ok(), || format!("u = {u}: {}", r.clone().unwrap_err()));
        }
    }
    {
        let mut t = report.tally("upper-bracket-morphism", "F[x, y] = [F(x), F(y)]'");
        for [x, y, _, _] in &samples {
            let lhs = (src.upper_bracket)(x, y).and_then(|b| big_f(&b));
            let rhs = big_f(x).and_then(|fx| big_f(y).and_then(|fy| (tgt.upper_bracket)(&fx, &fy)));
            let r = residual(lhs, rhs);
            t.expect(r.is_ok(), || format!("x = {x}, y = {y}: {}", r.clone().unwrap_err()));
        }
    }
    {
        let mut t = report.tally("lower-bracket-morphism", "f[u, v] = [f(u), f(v)]'");
        for [_, _, u, v] in &samples {
            let lhs = (src.lower_bracket)(u, v).and_then(|b| f(&b));
            let rhs = f(u).and_then(|fu| f(v).and_then(|fv| (tgt.lower_bracket)(&fu, &fv)));
            let r = residual(lhs, rhs);
            t.expect(r.is_ok(), || format!("u = {u}, v = {v}: {}", r.clone().unwrap_err()));
        }
    }
    if let (Some(d), Some(d2)) = (&src.upper_d, &tgt.upper_d) {
        let mut t = report.tally("upper-cochain", "F(dx) = d'F(x)");
        for [x, _, _, _] in &samples {
            let r = residual(d(x).and_then(|dx| big_f(&dx)), big_f(x).and_then(|fx| d2(&fx)));
            t.expect(r.is_ok(), || format!("x = {x}: {}", r.clone().unwrap_err()));
        }
    }
    if let (Some(d), Some(d2)) = (&src.lower_d, &tgt.lower_d) {
        let mut t = report.tally("lower-cochain", "f(du) = d'f(u)");
        for [_, _, u, _] in &samples {
            let r = residual(d(u).and_then(|du| f(&du)), f(u).and_then(|fu| d2(&fu)));
            t.expect(r.is_ok(), || format!("u = {u}: {}", r.clone().unwrap_err()));
        }
    }
    {
        let mut t = report.tally("action-intertwining", "f(x ▷ u) = F(x) ▷' f(u)");
        for [x, _, u, _] in &samples {
            let lhs = (src.action)(x, u).and_then(|a| f(&a));
            let rhs = big_f(x).and_then(|fx| f(u).and_then(|fu| (tgt.action)(&fx, &fu)));
            let r = residual(lhs, rhs);
            t.expect(r.is_ok(), || format!("x = {x}, u = {u}: {}", r.clone().unwrap_err()));
        }
    }
    report
}

impl CrossedModuleWitness {
    /// Negative control: `x ▷ u` replaced by `−x ▷ u`.
    pub fn with_flipped_action(mut self) -> Self {
        let old = std::mem::replace(&mut self.action, Box::new(|_, u| Ok(u.clone())));
        self.action = Box::new(move |x, u| old(x, u).map(|r| r.neg()));
        self.name = format!("{} (flipped action)", self.name);
        self
    }

    /// Negative control: `phi` replaced by `c·phi`.
    pub fn with_scaled_phi(mut self, c: i64) -> Self {
        let old = std::mem::replace(&mut self.phi, Box::new(|u| Ok(u.clone())));
        self.phi = Box::new(move |u| old(u).map(|r| r.scale_int(c)));
        self.name = format!("{} (phi scaled by {c})", self.name);
        self
    }
}

/// Nonzero samples from `draw`, `per_degree` for each degree that has any.
fn pool(
    s: &mut Sampler,
    degrees: impl IntoIterator<Item = usize>,
    per_degree: usize,
    mut draw: impl FnMut(&mut Sampler, usize) -> GradedElement,
) -> Vec<GradedElement> {
    let mut out = Vec::new();
    for k in degrees {
        let mut found = 0;
        for _ in 0..8 * per_degree {
            if found == per_degree {
                break;
            }
            let x = draw(s, k);
            if !x.is_zero() {
                out.push(x);
                found += 1;
            }
        }
    }
    out
}

const PER_DEGREE: usize = 4;

fn mult_forms(model: &CotangentModel, s: &mut Sampler) -> Vec<GradedElement> {
    pool(s, 1..=3, PER_DEGREE, |s, k| model.sample_multiplicative(s, Kind::Form, k))
}

fn mult_multivectors(model: &CotangentModel, s: &mut Sampler) -> Vec<GradedElement> {
    pool(s, 1..=3, PER_DEGREE, |s, k| model.sample_multiplicative(s, Kind::Multivector, k))
}

fn multiplicative_member(model: &CotangentModel) -> Membership {
    let m = model.clone();
    Box::new(move |x| match m.is_multiplicative(x) {
        Ok(r) => r.witness,
        Err(e) => Some(e.to_string()),
    })
}

fn zero_like(frame: &Frame, degree: usize) -> GradedElement {
    GradedElement::zero(frame, degree)
}

/// `Ω(M) → Ω_mult(T*M)` with `J = 0`, zero bracket on `Ω(M)` and `Θ ▷ γ` from `[Θ, s*γ]_P`.
pub fn tstar_form_witness(model: &CotangentModel, seed: u64) -> CrossedModuleWitness {
    let mut s = Sampler::new(seed);
    let upper = mult_forms(model, &mut s);
    let base = Frame::forms(model.base_chart());
    let base_for_pool = base.clone();
    let lower = pool(&mut s, 0..=model.n().min(3), PER_DEGREE, |s, k| s.element(&base_for_pool, k));
    let forms = model.forms().clone();
    let p = model.poisson();
    let (m1, p1) = (model.clone(), p.clone());
    let base1 = base.clone();
    CrossedModuleWitness {
        name: format!("tstar-forms n={}", model.n()),
        lower,
        upper,
        phi: Box::new(move |u| Ok(zero_like(&forms, u.degree()))),
        lower_bracket: Box::new(move |u, v| Ok(zero_like(&base1, (u.degree() + v.degree()).saturating_sub(1)))),
        upper_bracket: Box::new(move |x, y| koszul_bracket(&p1, x, y)),
        action: Box::new(move |x, u| m1.action_on_base(x, u)),
        lower_d: Some(Box::new(de_rham_d)),
        upper_d: Some(Box::new(de_rham_d)),
        upper_closure: Some(multiplicative_member(model)),
    }
}

/// `Γ(∧A) → 𝔛_mult(T*M)` with `T = 0` (left and right invariant lifts agree), zero bracket on
/// `Γ(∧A)`, `lift(X ▷ u) = [X, lift(u)]`, `d = −[P, ·]` and `lift(δu) = −[P, lift(u)]`.
pub fn tstar_multivector_witness(model: &CotangentModel, seed: u64) -> CrossedModuleWitness {
    let mut s = Sampler::new(seed);
    let upper = mult_multivectors(model, &mut s);
    let alg = model.algebroid().clone();
    let frame = alg.split_vectors().clone();
    let n = model.n();
    let base_mask = (1u64 << n) - 1;
    let base_chart = model.base_chart().clone();
    let lower = pool(&mut s, 0..=n.min(3), PER_DEGREE, |s, k| {
        s.element_where(&frame, k, |m| m & base_mask == 0, |s, _| s.poly(&base_chart))
    });
    let vectors = model.vectors().clone();
    let p = model.poisson();
    let (m1, m2) = (model.clone(), model.clone());
    let (p1, p2) = (p.clone(), p.clone());
    let frame1 = frame.clone();
    CrossedModuleWitness {
        name: format!("tstar-multivectors n={n}"),
        lower,
        upper,
        phi: Box::new(move |u| Ok(zero_like(&vectors, u.degree()))),
        lower_bracket: Box::new(move |u, v| Ok(zero_like(&frame1, (u.degree() + v.degree()).saturating_sub(1)))),
        upper_bracket: Box::new(schouten_bracket),
        action: Box::new(move |x, u| m1.invariant_unlift(&schouten_bracket(x, &m1.invariant_lift(u)?)?)),
        lower_d: Some(Box::new(move |u| m2.invariant_unlift(&schouten_bracket(&p1, &m2.invariant_lift(u)?)?.neg()))),
        upper_d: Some(Box::new(move |x| Ok(schouten_bracket(&p2, x)?.neg()))),
        upper_closure: Some(multiplicative_member(model)),
    }
}

/// `Ω_mult → Ω_mult` with `phi = id` and the bracket as the action.
pub fn adjoint_witness(model: &CotangentModel, seed: u64) -> CrossedModuleWitness {
    let mut s = Sampler::new(seed);
    let upper = mult_forms(model, &mut s);
    let p = model.poisson();
    let (p1, p2, p3) = (p.clone(), p.clone(), p);
    CrossedModuleWitness {
        name: format!("adjoint n={}", model.n()),
        lower: upper.clone(),
        upper,
        phi: Box::new(|u| Ok(u.clone())),
        lower_bracket: Box::new(move |u, v| koszul_bracket(&p1, u, v)),
        upper_bracket: Box::new(move |x, y| koszul_bracket(&p2, x, y)),
        action: Box::new(move |x, u| koszul_bracket(&p3, x, u)),
        lower_d: Some(Box::new(de_rham_d)),
        upper_d: Some(Box::new(de_rham_d)),
        upper_closure: Some(multiplicative_member(model)),
    }
}

/// Forms on the base with every map zero.
pub fn trivial_witness(model: &CotangentModel, seed: u64) -> CrossedModuleWitness {
    let mut s = Sampler::new(seed);
    let base = Frame::forms(model.base_chart());
    let b1 = base.clone();
    let gens = pool(&mut s, 0..=model.n(), PER_DEGREE, |s, k| s.element(&b1, k));
    let (b2, b3, b4) = (base.clone(), base.clone(), base);
    let zero_bracket = move |frame: Frame| -> BinaryMap {
        Box::new(move |u, v| Ok(zero_like(&frame, (u.degree() + v.degree()).saturating_sub(1))))
    };
    CrossedModuleWitness {
        name: "trivial".into(),
        lower: gens.clone(),
        upper: gens,
        phi: Box::new(move |u| Ok(zero_like(&b2, u.degree()))),
        lower_bracket: zero_bracket(b3.clone()),
        upper_bracket: zero_bracket(b3),
        action: zero_bracket(b4),
        lower_d: None,
        upper_d: None,
        upper_closure: None,
    }
}

/// The identity square on one witness.
pub fn identity_square(w: &CrossedModuleWitness) -> MorphismSquare<'_> {
    MorphismSquare { source: w, target: w, lower_map: Box::new(|u| Ok(u.clone())), upper_map: Box::new(|x| Ok(x.clone())) }
}

/// Sign convention for `∧P♯`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SharpSign {
    /// `(∧^k P♯)` including the `(−1)^k` factor.
    WithSign,
    /// The factor dropped, kept as a negative control.
    Dropped,
}

/// `(∧p♯, ∧P♯)` from the form witness to the multivector witness, with `p♯` built from the
/// leading term of `P`.
pub fn tstar_sharp_square<'a>(
    model: &CotangentModel,
    forms: &'a CrossedModuleWitness,
    multivectors: &'a CrossedModuleWitness,
    convention: SharpSign,
) -> Result<MorphismSquare<'a>> {
    let p = model.poisson();
    let leading = model.leading_terms(&p)?;
    let split_forms = model.algebroid().split_forms().clone();
    let adjust = move |x: GradedElement, k: usize| match convention {
        SharpSign::WithSign => x,
        SharpSign::Dropped => x.scale(&int(sign(k as i64))),
    };
    Ok(MorphismSquare {
        source: forms,
        target: multivectors,
        lower_map: Box::new(move |g| {
            let up = wedge_power_psharp(&leading, &g.embed(&split_forms)?)?;
            Ok(adjust(up, g.degree()))
        }),
        upper_map: Box::new(move |x| Ok(adjust(wedge_power_psharp(&p, x)?, x.degree()))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(n: usize) -> CotangentModel {
        CotangentModel::new(n).unwrap()
    }

    #[test]
    fn tstar_witnesses_pass() {
        for n in [1, 2] {
            let m = model(n);
            for w in [tstar_form_witness(&m, 7), tstar_multivector_witness(&m, 7), adjoint_witness(&m, 7)] {
                let r = check_crossed_module(&w, 40, 11);
                assert!(r.passed(), "{}", r.to_text());
            }
        }
        let r = check_crossed_module(&trivial_witness(&model(2), 3), 20, 1);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn negative_controls_fail() {
        let m = model(1);
        let r = check_crossed_module(&tstar_form_witness(&m, 7).with_flipped_action(), 40, 11);
        assert!(!r.passed());
        assert_eq!(r.check("action-representation").unwrap().status, crate::report::Status::Fail);
        let r = check_crossed_module(&adjoint_witness(&m, 7).with_scaled_phi(2), 40, 11);
        assert_eq!(r.check("axiom-1").unwrap().status, crate::report::Status::Fail);
    }

    #[test]
    fn sharp_square() {
        for n in [1, 2] {
            let m = model(n);
            let forms = tstar_form_witness(&m, 5);
            let vectors = tstar_multivector_witness(&m, 5);
            let sq = tstar_sharp_square(&m, &forms, &vectors, SharpSign::WithSign).unwrap();
            let r = check_morphism(&sq, 40, 2);
            assert!(r.passed(), "{}", r.to_text());
            let bad = tstar_sharp_square(&m, &forms, &vectors, SharpSign::Dropped).unwrap();
            let r = check_morphism(&bad, 40, 2);
            assert!(!r.passed());
            let id = identity_square(&forms);
            assert!(check_morphism(&id, 20, 2).passed());
        }
    }
}
