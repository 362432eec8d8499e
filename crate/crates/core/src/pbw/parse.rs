//! Parser for the textual element syntax used by the CLI, e.g.
//! `F1^2 * L[w1] * E12 * E1` or `E1*F1 - F1*E1`.
//!
//! See docs/grammar.ebnf for the formal grammar. `K1` and `K12` are aliases
//! for `L[...]` of the corresponding root; `w1`/`a1` inside `L[...]` denote
//! fundamental-weight and simple-root basis vectors.

use std::sync::Arc;

use crate::cartan::LatticeElem;
use crate::exact::RatFuncQ;

use super::{AlgElem, AlgebraCtx};

#[derive(Debug, Clone, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    ctx: &'a Arc<AlgebraCtx>,
    src: &'a [u8],
    pos: usize,
}

pub fn parse_element(ctx: &Arc<AlgebraCtx>, input: &str) -> Result<AlgElem, ParseError> {
    let mut p = Parser { ctx, src: input.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<AlgElem, ParseError> {
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

    fn term(&mut self) -> Result<AlgElem, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let divisor = self.factor()?;
                    let scalar = as_scalar(&divisor)
                        .ok_or_else(|| self.err("division only by scalar expressions"))?;
                    let inv = scalar
                        .inv()
                        .map_err(|_| self.err("division by zero"))?;
                    acc = acc.scaled(&inv);
                }
                // juxtaposition is not multiplication; stop
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<AlgElem, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.integer()?;
            return self.power(base, n);
        }
        Ok(base)
    }

    fn power(&self, base: AlgElem, n: i64) -> Result<AlgElem, ParseError> {
        if n >= 0 {
            return Ok(base.pow(n as u32));
        }
        // Negative powers only for scalars and single lattice monomials.
        if let Some(c) = as_scalar(&base) {
            let inv = c.inv().map_err(|_| self.err("inverse of zero"))?;
            return Ok(AlgElem::scalar(base.ctx(), inv.pow(-n)));
        }
        if base.num_terms() == 1 {
            let (m, c) = base.terms().next().unwrap();
            if m.is_lattice_only() {
                let mu = LatticeElem::from_weight_coords(m.lat.clone()).scaled(n);
                let l = AlgElem::l_elem(base.ctx(), &mu)
                    .map_err(|e| self.err(e.to_string()))?;
                let cinv = c.inv().map_err(|_| self.err("inverse of zero"))?;
                return Ok(l.scaled(&cinv.pow(-n)));
            }
        }
        Err(self.err("negative powers are only defined for scalars and L elements"))
    }

    fn atom(&mut self) -> Result<AlgElem, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(AlgElem::scalar(self.ctx, RatFuncQ::q()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(AlgElem::scalar(self.ctx, RatFuncQ::from_int(n)))
            }
            Some(b'-') => {
                self.pos += 1;
                let e = self.factor()?;
                Ok(-&e)
            }
            Some(b'E') | Some(b'F') => {
                let kind = self.bump().unwrap();
                let idx = self.root_index()?;
                Ok(match kind {
                    b'E' => AlgElem::e_gen(self.ctx, idx),
                    _ => AlgElem::f_gen(self.ctx, idx),
                })
            }
            Some(b'K') => {
                self.pos += 1;
                let idx = self.root_index()?;
                let root = self.ctx.datum.positive_roots[idx].clone();
                let mu = LatticeElem::from_root_coords(&self.ctx.datum, &root);
                AlgElem::l_elem(self.ctx, &mu).map_err(|e| self.err(e.to_string()))
            }
            Some(b'L') => {
                self.pos += 1;
                if !self.eat(b'[') {
                    return Err(self.err("expected '[' after L"));
                }
                let mu = self.lattice_literal()?;
                if !self.eat(b']') {
                    return Err(self.err("expected ']'"));
                }
                AlgElem::l_elem(self.ctx, &mu).map_err(|e| self.err(e.to_string()))
            }
            Some(c) => Err(self.err(format!("unexpected character {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn root_index(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let mut digits = String::new();
        while let Some(c) = self.src.get(self.pos).copied() {
            if c.is_ascii_digit() {
                digits.push(c as char);
                self.pos += 1;
            } else {
                break;
            }
        }
        let datum = &self.ctx.datum;
        let by_name = |name: &str| -> Option<usize> {
            (0..datum.num_positive_roots()).find(|i| self.ctx.root_name(*i) == name)
        };
        by_name(&digits).ok_or(ParseError {
            pos: start,
            msg: format!("unknown generator index {:?} for type {}", digits, datum.tag),
        })
    }

    fn lattice_literal(&mut self) -> Result<LatticeElem, ParseError> {
        let rank = self.ctx.datum.rank;
        let mut acc = LatticeElem::zero(rank);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(b']') if !first => break,
                _ if first => 1,
                _ => break,
            };
            first = false;
            let coeff = match self.peek() {
                Some(c) if c.is_ascii_digit() => self.integer()?,
                _ => 1,
            };
            let basis = self
                .bump()
                .ok_or_else(|| self.err("expected w<i> or a<i>"))?;
            let idx = self
                .bump()
                .filter(|c| c.is_ascii_digit())
                .map(|c| (c - b'0') as usize)
                .ok_or_else(|| self.err("expected basis index digit"))?;
            if idx == 0 || idx > rank {
                return Err(self.err(format!("basis index {idx} out of range")));
            }
            let unit = match basis {
                b'w' => LatticeElem::fundamental(rank, idx - 1),
                b'a' => LatticeElem::simple_root(&self.ctx.datum, idx - 1),
                other => {
                    return Err(self.err(format!(
                        "expected 'w' or 'a', found {:?}",
                        other as char
                    )))
                }
            };
            acc = acc.add(&unit.scaled(sign * coeff));
            if self.peek() == Some(b']') {
                break;
            }
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat(b'-');
        let mut val: i64 = 0;
        let mut any = false;
        while let Some(c) = self.src.get(self.pos).copied() {
            if c.is_ascii_digit() {
                any = true;
                val = val * 10 + (c - b'0') as i64;
                self.pos += 1;
            } else {
                break;
            }
        }
        if !any {
            return Err(ParseError { pos: start, msg: "expected integer".into() });
        }
        Ok(if neg { -val } else { val })
    }
}

fn as_scalar(e: &AlgElem) -> Option<RatFuncQ> {
    if e.is_zero() {
        return Some(RatFuncQ::zero());
    }
    if e.num_terms() != 1 {
        return None;
    }
    let (m, c) = e.terms().next().unwrap();
    m.is_unit().then(|| c.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{Lattice, TypeTag};

    fn a2() -> Arc<AlgebraCtx> {
        AlgebraCtx::new(TypeTag::A2, Lattice::P).unwrap()
    }

    #[test]
    fn parses_basic_expressions() {
        let ctx = a2();
        let e = parse_element(&ctx, "E2*E1").unwrap();
        let expect = &AlgElem::e_gen(&ctx, 2) * &AlgElem::e_gen(&ctx, 0);
        assert_eq!(e, expect);

        let e = parse_element(&ctx, "F1^2 * L[w1] * E12 * E1").unwrap();
        assert_eq!(e.num_terms(), 1);

        let comm = parse_element(&ctx, "E1*F1 - F1*E1").unwrap();
        let k1 = parse_element(&ctx, "(K1 - K1^-1)/(q - q^-1)").unwrap();
        assert_eq!(comm, k1);

        // L[a1] is K1
        assert_eq!(
            parse_element(&ctx, "L[a1]").unwrap(),
            parse_element(&ctx, "K1").unwrap()
        );
        assert_eq!(parse_element(&ctx, "1").unwrap(), AlgElem::one(&ctx));
    }

    #[test]
    fn parse_errors_carry_position() {
        let ctx = a2();
        let err = parse_element(&ctx, "E1*E3").unwrap_err();
        assert!(err.pos >= 3, "position was {}", err.pos);
        assert!(parse_element(&ctx, "E1*(F1").is_err());
        assert!(parse_element(&ctx, "E1/F1").is_err());
    }
}
