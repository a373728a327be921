//! Text form of majority/inverter expressions.
//!
//! Grammar: `expr := 'M(' expr ',' expr ',' expr ')' | atom`, where an
//! atom is a variable letter `A`..`J`, `0`, or `1`, and any expression
//! may carry postfix `'` marks for inversion. Whitespace is ignored.
//! `M(M(B',C,0),A,1)` parses to the preorder genes and prints back
//! identically.

use crate::mig::{Chromosome, Gene};
use crate::table::MAX_VARS;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: expected {expected}")]
pub struct ParseError {
    pub pos: usize,
    pub expected: &'static str,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError { pos: self.pos, expected })
        }
    }

    fn expr(&mut self) -> Result<Vec<Gene>, ParseError> {
        let mut genes = match self.peek() {
            Some(b'M') => {
                self.pos += 1;
                self.expect(b'(', "'(' after M")?;
                let a = self.expr()?;
                self.expect(b',', "',' after first operand")?;
                let b = self.expr()?;
                self.expect(b',', "',' after second operand")?;
                let c = self.expr()?;
                self.expect(b')', "')' after third operand")?;
                let mut genes = Vec::with_capacity(1 + a.len() + b.len() + c.len());
                genes.push(Gene::Maj);
                genes.extend(a);
                genes.extend(b);
                genes.extend(c);
                genes
            }
            Some(c @ b'A'..=b'Z') if c - b'A' < MAX_VARS => {
                self.pos += 1;
                vec![Gene::Var(c - b'A')]
            }
            Some(b'0') => {
                self.pos += 1;
                vec![Gene::Zero]
            }
            Some(b'1') => {
                self.pos += 1;
                vec![Gene::One]
            }
            _ => {
                return Err(ParseError { pos: self.pos, expected: "'M(', a variable A..J, '0', or '1'" })
            }
        };
        while self.peek() == Some(b'\'') {
            self.pos += 1;
            genes.insert(0, Gene::Inv);
        }
        Ok(genes)
    }
}

impl FromStr for Chromosome {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut p = Parser { bytes: s.as_bytes(), pos: 0 };
        let genes = p.expr()?;
        if p.peek().is_some() {
            return Err(ParseError { pos: p.pos, expected: "end of input" });
        }
        Chromosome::from_genes(genes)
            .map_err(|_| ParseError { pos: 0, expected: "a well-formed expression" })
    }
}

fn fmt_node(genes: &[Gene], pos: usize, f: &mut fmt::Formatter<'_>) -> Result<usize, fmt::Error> {
    match genes[pos] {
        Gene::Maj => {
            write!(f, "M(")?;
            let p1 = fmt_node(genes, pos + 1, f)?;
            write!(f, ",")?;
            let p2 = fmt_node(genes, p1, f)?;
            write!(f, ",")?;
            let p3 = fmt_node(genes, p2, f)?;
            write!(f, ")")?;
            Ok(p3)
        }
        Gene::Inv => {
            let p1 = fmt_node(genes, pos + 1, f)?;
            write!(f, "'")?;
            Ok(p1)
        }
        Gene::Var(k) => {
            write!(f, "{}", (b'A' + k) as char)?;
            Ok(pos + 1)
        }
        Gene::Zero => {
            write!(f, "0")?;
            Ok(pos + 1)
        }
        Gene::One => {
            write!(f, "1")?;
            Ok(pos + 1)
        }
    }
}

impl fmt::Display for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_node(self.genes(), 0, f)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fig_style_expression_to_preorder_genes() {
        use Gene::*;
        let c: Chromosome = "M(M(B',C,0),A,1)".parse().unwrap();
        assert_eq!(c.genes(), &[Maj, Maj, Inv, Var(1), Var(2), Zero, Var(0), One]);
    }

    #[test]
    fn postfix_inversion_binds_to_the_preceding_expression() {
        use Gene::*;
        let c: Chromosome = "M(A,B,C)'".parse().unwrap();
        assert_eq!(c.genes()[0], Inv);
        let c: Chromosome = "A''".parse().unwrap();
        assert_eq!(c.genes(), &[Inv, Inv, Var(0)]);
    }

    #[test]
    fn whitespace_is_ignored() {
        let a: Chromosome = "M( M(B', C, 0), A , 1 )".parse().unwrap();
        let b: Chromosome = "M(M(B',C,0),A,1)".parse().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn display_roundtrips() {
        for s in [
            "M(M(B',C,0),A,1)",
            "M(M(A,C,B)',M(A,C',1),M(B,0,C))",
            "M(M(0,B,C)',M(B,0,A),C)'",
            "M(D',M(M(D,A,0),B',0),C)",
            "A",
            "0",
            "1'",
        ] {
            let c: Chromosome = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
            let back: Chromosome = c.to_string().parse().unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn rejects_malformed_input_with_position() {
        let err = "M(A,B)".parse::<Chromosome>().unwrap_err();
        assert_eq!(err.pos, 5);
        assert!("".parse::<Chromosome>().is_err());
        assert!("M(A,B,C) junk".parse::<Chromosome>().is_err());
        assert!("K".parse::<Chromosome>().is_err()); // beyond the J variable limit
        assert!("m(A,B,C)".parse::<Chromosome>().is_err()); // case sensitive
    }
}
