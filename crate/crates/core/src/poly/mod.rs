//! Exact multivariate polynomials over named chart coordinates.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CalcError, Result};

pub use parse::parse_poly;

/// Coefficient field.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Ordered list of distinct coordinate names.
#[derive(Clone, Debug)]
pub struct Chart {
    names: Arc<[String]>,
}

impl Chart {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(CalcError::InvalidChart(format!("bad coordinate name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(CalcError::InvalidChart(format!("duplicate coordinate `{n}`")));
            }
        }
        Ok(Chart { names: names.into() })
    }

    pub fn coordinates(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| CalcError::UnknownCoordinate(name.to_string()))
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Chart {}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Canonical polynomial: exponent vector -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExpr {
    chart: Chart,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl PolyExpr {
    pub fn zero(chart: &Chart) -> Self {
        PolyExpr {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Chart, c: Rational) -> Self {
        let mut p = Self::zero(chart);
        if !c.is_zero() {
            p.terms.insert(vec![0; chart.len()], c);
        }
        p
    }

    pub fn from_int(chart: &Chart, n: i64) -> Self {
        Self::constant(chart, int(n))
    }

    pub fn one(chart: &Chart) -> Self {
        Self::from_int(chart, 1)
    }

    pub fn var(chart: &Chart, name: &str) -> Result<Self> {
        Ok(Self::var_at(chart, chart.require(name)?))
    }

    pub fn var_at(chart: &Chart, index: usize) -> Self {
        let mut e = vec![0; chart.len()];
        e[index] = 1;
        Self::monomial(chart, e, Rational::one())
    }

    pub fn monomial(chart: &Chart, exponents: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exponents.len(), chart.len(), "exponent vector length");
        let mut p = Self::zero(chart);
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in the given variables, taken jointly, for every monomial.
    pub fn degrees_in(&self, vars: &[usize]) -> Vec<u32> {
        self.terms
            .keys()
            .map(|e| vars.iter().map(|&v| e[v]).sum())
            .collect()
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_chart(&self, other: &Self) -> Result<()> {
        if self.chart == other.chart {
            Ok(())
        } else {
            Err(CalcError::ChartMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_chart(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_chart(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_chart(other)?;
        let mut out = Self::zero(&self.chart);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.chart);
        }
        PolyExpr {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&int(n))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.chart);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in the coordinate at `index`.
    pub fn partial(&self, index: usize) -> Self {
        let mut out = Self::zero(&self.chart);
        for (e, c) in &self.terms {
            if e[index] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[index] -= 1;
            out.add_term(e2, c * BigInt::from(e[index]));
        }
        out
    }

    pub fn partial_derivative(&self, coordinate: &str) -> Result<Self> {
        Ok(self.partial(self.chart.require(coordinate)?))
    }

    /// Replace every coordinate by a polynomial over `target`.
    pub fn compose(&self, target: &Chart, images: &[PolyExpr]) -> Result<Self> {
        if images.len() != self.chart.len() {
            return Err(CalcError::ChartMismatch);
        }
        if images.iter().any(|p| p.chart != *target) {
            return Err(CalcError::ChartMismatch);
        }
        let mut powers: Vec<Vec<PolyExpr>> = images.iter().map(|p| vec![PolyExpr::one(target), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = PolyExpr::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            for (e2, c2) in t.terms {
                out.add_term(e2, c2);
            }
        }
        Ok(out)
    }

    /// Simultaneous substitution; unbound coordinates are kept.
    pub fn substitute(&self, bindings: &BTreeMap<String, PolyExpr>) -> Result<Self> {
        for name in bindings.keys() {
            self.chart.require(name)?;
        }
        let target = match bindings.values().next() {
            Some(p) => p.chart.clone(),
            None => return Ok(self.clone()),
        };
        let mut images = Vec::with_capacity(self.chart.len());
        for (i, name) in self.chart.coordinates().iter().enumerate() {
            match bindings.get(name) {
                Some(p) => images.push(p.clone()),
                None if target == self.chart => images.push(PolyExpr::var_at(&self.chart, i)),
                None => match target.index_of(name) {
                    Some(j) => images.push(PolyExpr::var_at(&target, j)),
                    None => return Err(CalcError::UnknownCoordinate(name.clone())),
                },
            }
        }
        self.compose(&target, &images)
    }

    /// Move to another chart through an injective coordinate map `i -> map[i]`.
    pub fn reembed(&self, target: &Chart, map: &[usize]) -> Self {
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Monomials grouped by their exponents in `vars`; each group keeps the remaining exponents.
    pub fn split_by(&self, vars: &[usize]) -> BTreeMap<Vec<u32>, PolyExpr> {
        let mut out: BTreeMap<Vec<u32>, PolyExpr> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Vec<u32> = vars.iter().map(|&v| e[v]).collect();
            let mut rest = e.clone();
            for &v in vars {
                rest[v] = 0;
            }
            out.entry(key)
                .or_insert_with(|| PolyExpr::zero(&self.chart))
                .add_term(rest, c.clone());
        }
        out
    }
}

/// Arithmetic entry point mirroring the four ring operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Neg,
}

pub fn poly_arith(op: PolyOp, a: &PolyExpr, b: Option<&PolyExpr>) -> Result<PolyExpr> {
    let need = || b.ok_or_else(|| CalcError::Validation("binary operation needs two operands".into()));
    match op {
        PolyOp::Add => a.checked_add(need()?),
        PolyOp::Sub => a.checked_sub(need()?),
        PolyOp::Mul => a.checked_mul(need()?),
        PolyOp::Neg => Ok(-a),
    }
}

impl Add for &PolyExpr {
    type Output = PolyExpr;
    /// # Panics
    /// On mismatched charts.
    fn add(self, rhs: &PolyExpr) -> PolyExpr {
        self.checked_add(rhs).expect("chart mismatch in add")
    }
}

impl Sub for &PolyExpr {
    type Output = PolyExpr;
    fn sub(self, rhs: &PolyExpr) -> PolyExpr {
        self.checked_sub(rhs).expect("chart mismatch in sub")
    }
}

impl Mul for &PolyExpr {
    type Output = PolyExpr;
    fn mul(self, rhs: &PolyExpr) -> PolyExpr {
        self.checked_mul(rhs).expect("chart mismatch in mul")
    }
}

impl Neg for &PolyExpr {
    type Output = PolyExpr;
    fn neg(self) -> PolyExpr {
        PolyExpr {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.chart.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.chart.names[i], k)),
                }
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", a, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp() -> Chart {
        Chart::new(["q", "p"]).unwrap()
    }

    #[test]
    fn chart_rejects_duplicates() {
        assert!(Chart::new(["q", "q"]).is_err());
        assert!(Chart::new(["1x"]).is_err());
    }

    #[test]
    fn formatting() {
        let c = qp();
        let p = parse_poly("p*q^2*2 - 1/3", &c).unwrap();
        assert_eq!(p.to_string(), "2*q^2*p - 1/3");
        assert_eq!(parse_poly("-q", &c).unwrap().to_string(), "-q");
        assert_eq!(PolyExpr::zero(&c).to_string(), "0");
    }

    #[test]
    fn arithmetic_examples() {
        let c = qp();
        let q = PolyExpr::var(&c, "q").unwrap();
        assert!((&q + &(-&q)).is_zero());
        let one = PolyExpr::one(&c);
        let prod = &(&q + &one) * &(&q - &one);
        assert_eq!(prod, parse_poly("q^2 - 1", &c).unwrap());
        let p = parse_poly("2/3*p", &c).unwrap();
        assert_eq!(poly_arith(PolyOp::Neg, &p, None).unwrap().to_string(), "-2/3*p");
        let other = PolyExpr::one(&Chart::new(["x"]).unwrap());
        assert_eq!(q.checked_add(&other), Err(CalcError::ChartMismatch));
    }

    #[test]
    fn derivative_examples() {
        let c = qp();
        let qp_ = parse_poly("q*p", &c).unwrap();
        assert_eq!(qp_.partial_derivative("q").unwrap(), PolyExpr::var(&c, "p").unwrap());
        assert_eq!(parse_poly("q^3", &c).unwrap().partial_derivative("q").unwrap().to_string(), "3*q^2");
        assert!(parse_poly("q^2", &c).unwrap().partial_derivative("p").unwrap().is_zero());
        assert!(matches!(qp_.partial_derivative("z"), Err(CalcError::UnknownCoordinate(_))));
    }

    #[test]
    fn substitution_examples() {
        let c = qp();
        let mut b = BTreeMap::new();
        b.insert("p".to_string(), PolyExpr::zero(&c));
        let f = parse_poly("q*p + q^2", &c).unwrap();
        assert_eq!(f.substitute(&b).unwrap().to_string(), "q^2");

        let mut b = BTreeMap::new();
        b.insert("q".to_string(), parse_poly("q+1", &c).unwrap());
        assert_eq!(parse_poly("q", &c).unwrap().substitute(&b).unwrap().to_string(), "q + 1");

        let mut b = BTreeMap::new();
        b.insert("q".to_string(), PolyExpr::var(&c, "p").unwrap());
        assert_eq!(parse_poly("q^2*p", &c).unwrap().substitute(&b).unwrap().to_string(), "p^3");

        let mut b = BTreeMap::new();
        b.insert("z".to_string(), PolyExpr::zero(&c));
        assert!(f.substitute(&b).is_err());
    }

    #[test]
    fn restriction_to_subchart() {
        let c = qp();
        let x = Chart::new(["q"]).unwrap();
        let mut b = BTreeMap::new();
        b.insert("p".to_string(), PolyExpr::zero(&x));
        let f = parse_poly("q*p + 3*q^2 + 1", &c).unwrap();
        let r = f.substitute(&b).unwrap();
        assert_eq!(r.chart(), &x);
        assert_eq!(r.to_string(), "3*q^2 + 1");
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let c = qp();
        let f = parse_poly("123456789*q + 987654321", &c).unwrap();
        let g = f.pow(8);
        let lead = g.terms().next_back().unwrap().1.clone();
        assert_eq!(lead, BigRational::from_integer(BigInt::from(123456789u64).pow(8)));
    }
}
