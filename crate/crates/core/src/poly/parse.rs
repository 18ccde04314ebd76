use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Chart, PolyExpr};
use crate::error::{CalcError, Result};

/// Parse `text` into a canonical polynomial over `chart`.
///
/// Grammar:
/// ```text
/// expr   := term (('+' | '-') term)*
/// term   := unary ('*' unary)*
/// unary  := '-' unary | '+' unary | power
/// power  := atom ('^' integer)?
/// atom   := integer ('/' integer)? | name | '(' expr ')'
/// ```
pub fn parse_poly(text: &str, chart: &Chart) -> Result<PolyExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, chart };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("operator or end of input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    chart: &'a Chart,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &str) -> CalcError {
        CalcError::Syntax {
            position: self.pos,
            expected: expected.to_string(),
        }
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PolyExpr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyExpr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits().ok_or_else(|| self.error("nonnegative integer exponent"))?;
            let e: u32 = digits
                .parse()
                .map_err(|_| self.error("exponent below 2^32"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<PolyExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den: BigInt = self
                        .digits()
                        .ok_or_else(|| self.error("integer denominator"))?
                        .parse()
                        .unwrap();
                    if den.is_zero() {
                        return Err(self.error("nonzero denominator"));
                    }
                    return Ok(PolyExpr::constant(self.chart, BigRational::new(num, den)));
                }
                Ok(PolyExpr::constant(self.chart, BigRational::from_integer(num)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                PolyExpr::var(self.chart, name)
            }
            _ => Err(self.error("number, coordinate or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn qp() -> Chart {
        Chart::new(["q", "p"]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let c = qp();
        assert!(parse_poly("0", &c).unwrap().is_zero());
        assert_eq!(parse_poly("(q+p)^2 - q^2 - p^2", &c).unwrap().to_string(), "2*q*p");
        let h = parse_poly("1/2 * q^3", &c).unwrap();
        assert_eq!(h, PolyExpr::monomial(&c, vec![3, 0], rat(1, 2)));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let c = qp();
        assert_eq!(
            parse_poly("q + ", &c),
            Err(CalcError::Syntax { position: 4, expected: "number, coordinate or `(`".into() })
        );
        assert!(matches!(parse_poly("(q", &c), Err(CalcError::Syntax { position: 2, .. })));
        assert!(matches!(parse_poly("q^p", &c), Err(CalcError::Syntax { position: 2, .. })));
        assert!(matches!(parse_poly("q/2", &c), Err(CalcError::Syntax { position: 1, .. })));
        assert!(matches!(parse_poly("1/0", &c), Err(CalcError::Syntax { .. })));
        assert!(matches!(parse_poly("q p", &c), Err(CalcError::Syntax { position: 2, .. })));
    }

    #[test]
    fn unknown_coordinate() {
        assert_eq!(parse_poly("q*z", &qp()), Err(CalcError::UnknownCoordinate("z".into())));
    }

    #[test]
    fn nested_signs() {
        let c = qp();
        assert_eq!(parse_poly("-(-q) - -p", &c).unwrap().to_string(), "q + p");
        assert_eq!(parse_poly("2 * -q", &c).unwrap().to_string(), "-2*q");
    }
}
