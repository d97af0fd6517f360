//! Algebra-spec expressions such as `cl(1,0) (x) mat(1|1)@alpha=sqrt2`.
//!
//! ```text
//! sum     := product ("(+)" product)*
//! product := atom ("(x)" atom)*
//! atom    := ("cl(p,q)" | "clc(n)" | "mat(p|q)") ("@alpha=" literal)? | "[" sum "]"
//! ```
//!
//! The alpha literal runs up to the next whitespace, `]` or unmatched `)`;
//! parentheses inside it must balance.

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};

use super::{
    build_clifford_complex, build_clifford_real, build_matrix, direct_sum, supertensor,
    HalfTwistAlgebra,
};

/// Builds the algebra described by `text`; atoms without an `@alpha=`
/// suffix use `default_alpha`.
pub fn parse_algebra_spec(text: &str, default_alpha: &Cyclo) -> Result<HalfTwistAlgebra> {
    let mut p = SpecParser {
        src: text,
        pos: 0,
        alpha: default_alpha,
    };
    let a = p.sum()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(a)
}

struct SpecParser<'a> {
    src: &'a str,
    pos: usize,
    alpha: &'a Cyclo,
}

impl SpecParser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<HalfTwistAlgebra> {
        let mut acc = self.product()?;
        while self.eat("(+)") {
            self.skip_ws();
            let at = self.pos;
            let rhs = self.product()?;
            acc = direct_sum(&acc, &rhs).map_err(|e| Error::parse(1, at + 1, e.to_string()))?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<HalfTwistAlgebra> {
        let mut acc = self.atom()?;
        while self.eat("(x)") {
            let rhs = self.atom()?;
            acc = supertensor(&acc, &rhs)?;
        }
        Ok(acc)
    }

    fn uint(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.err("expected a nonnegative integer"));
        }
        let v = digits
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        self.pos += digits.len();
        Ok(v)
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{tok}'")))
        }
    }

    fn alpha_suffix(&mut self) -> Result<Cyclo> {
        if !self.rest().starts_with("@alpha=") {
            return Ok(self.alpha.clone());
        }
        self.pos += "@alpha=".len();
        let start = self.pos;
        let mut depth = 0i32;
        let end = self
            .rest()
            .char_indices()
            .find(|&(_, c)| match c {
                '(' => {
                    depth += 1;
                    false
                }
                ')' if depth > 0 => {
                    depth -= 1;
                    false
                }
                ')' | ']' => true,
                c if c.is_whitespace() => depth == 0,
                _ => false,
            })
            .map(|(i, _)| start + i)
            .unwrap_or(self.src.len());
        let lit = &self.src[start..end];
        if lit.is_empty() {
            return Err(self.err("empty alpha literal"));
        }
        let v: Cyclo = lit.parse().map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::parse(1, start + column, message),
            other => other,
        })?;
        self.pos = end;
        Ok(v)
    }

    fn atom(&mut self) -> Result<HalfTwistAlgebra> {
        self.skip_ws();
        let at = self.pos;
        let located = |e: Error| match e {
            Error::Parse { .. } => e,
            other => Error::parse(1, at + 1, other.to_string()),
        };
        if self.eat("[") {
            let a = self.sum()?;
            self.expect("]")?;
            return Ok(a);
        }
        if self.eat("clc(") {
            let n = self.uint()?;
            self.expect(")")?;
            let alpha = self.alpha_suffix()?;
            return build_clifford_complex(n, &alpha).map_err(located);
        }
        if self.eat("cl(") {
            let p = self.uint()?;
            self.expect(",")?;
            let q = self.uint()?;
            self.expect(")")?;
            let alpha = self.alpha_suffix()?;
            return build_clifford_real(p, q, &alpha).map_err(located);
        }
        if self.eat("mat(") {
            let p = self.uint()?;
            self.expect("|")?;
            let q = self.uint()?;
            self.expect(")")?;
            let alpha = self.alpha_suffix()?;
            return build_matrix(p, q, &alpha).map_err(located);
        }
        Err(self.err("expected cl(p,q), clc(n), mat(p|q) or '['"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::Family;

    fn parse(s: &str) -> Result<HalfTwistAlgebra> {
        parse_algebra_spec(s, &Cyclo::one())
    }

    #[test]
    fn atoms() {
        assert_eq!(parse("cl(1,0)").unwrap().family(), &Family::CliffordReal { p: 1, q: 0 });
        assert_eq!(parse(" clc( 2 ) ").unwrap().dim(), 8);
        assert_eq!(parse("mat(2|1)").unwrap().dim(), 9);
    }

    #[test]
    fn precedence_and_grouping() {
        // (x) binds tighter than (+)
        let a = parse("cl(1,0) (+) cl(0,1) (x) cl(0,0)").unwrap();
        assert_eq!(a.dim(), 4);
        assert!(matches!(a.family(), Family::DirectSum(..)));
        let b = parse("[cl(1,0) (+) cl(1,0)] (x) cl(1,0)").unwrap();
        assert_eq!(b.dim(), 8);
        assert!(matches!(b.family(), Family::Supertensor(..)));
    }

    #[test]
    fn alpha_suffix() {
        let a = parse("cl(1,0)@alpha=sqrt2").unwrap();
        assert_eq!(a.alpha(), &Cyclo::sqrt2());
        let b = parse("[mat(1|1)@alpha=(z-z^3)/2]").unwrap();
        assert_eq!(b.alpha(), &Cyclo::sqrt2().checked_div(&Cyclo::from_int(2)).unwrap());
        let c = parse_algebra_spec("cl(1,0) (x) cl(0,1)@alpha=2", &Cyclo::from_int(3)).unwrap();
        assert_eq!(c.alpha(), &Cyclo::from_int(6));
    }

    #[test]
    fn errors_carry_columns() {
        assert!(matches!(parse("cl(1,"), Err(Error::Parse { column: 6, .. })));
        assert!(matches!(parse("foo"), Err(Error::Parse { column: 1, .. })));
        assert!(matches!(parse("cl(1,0) (+) mat(2|0)"), Err(Error::Parse { column: 13, .. })));
        assert!(matches!(parse("cl(1,0)@alpha=z"), Err(Error::Parse { .. })));
        assert!(matches!(parse("cl(1,0)@alpha=q"), Err(Error::Parse { column: 15, .. })));
        assert!(parse("cl(1,0) junk").is_err());
    }
}
