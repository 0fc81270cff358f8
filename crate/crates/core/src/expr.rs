//! Module expressions such as `Z^2 + Z/6` or `coker[[2,4],[6,8]]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{direct_sum_in, Presentation};
use crate::ring::RingSpec;

pub const GRAMMAR: &str = "\
module expressions:
  expr := term ('+' term)*
  term := atom ('^' k)?
  atom := 'Z' | 'Z/<m>' | 'coker[[..],[..]]' | '0'
examples: `Z/4 + Z/2^2`, `Z^2 + Z/6`, `coker[[2,4],[6,8]]`
over Z/n the atom `Z` is not allowed and `Z/m` needs m | n";

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..]
                .chars()
                .next()
                .map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{s}`")))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.src[self.pos..].starts_with('-') {
            self.pos += 1;
        }
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected an integer"))
    }

    fn exponent(&mut self) -> Result<usize> {
        let k = self.integer()?;
        k.to_usize()
            .ok_or_else(|| self.err("exponent must be a nonnegative integer"))
    }

    fn matrix(&mut self) -> Result<Vec<Vec<BigInt>>> {
        self.expect("[")?;
        let mut rows = Vec::new();
        if self.eat("]") {
            return Ok(rows);
        }
        loop {
            self.expect("[")?;
            let mut row = Vec::new();
            if !self.eat("]") {
                loop {
                    row.push(self.integer()?);
                    if self.eat("]") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            rows.push(row);
            if self.eat("]") {
                return Ok(rows);
            }
            self.expect(",")?;
        }
    }

    fn atom(&mut self, ring: RingSpec) -> Result<Presentation> {
        if self.eat("coker") {
            let rows = self.matrix()?;
            let cols = rows.first().map_or(0, Vec::len);
            let m = Matrix::from_rows(cols, &rows)
                .map_err(|_| self.err("relation matrix rows differ in length"))?;
            return Presentation::new(ring, rows.len(), m);
        }
        if self.eat("0") {
            return Ok(Presentation::zero(ring));
        }
        if self.eat("Z") {
            if self.eat("/") {
                let m = self.integer()?;
                return cyclic_atom(ring, m).map_err(|e| match e {
                    Error::Parse(msg) => self.err(&msg),
                    e => e,
                });
            }
            if !ring.is_integers() {
                return Err(self.err(&format!("`Z` is not a module over {ring}; write `Z/n`")));
            }
            return Ok(Presentation::free(ring, 1));
        }
        Err(self.err("expected `Z`, `Z/<m>`, `coker[[..]]` or `0`"))
    }

    fn term(&mut self, ring: RingSpec) -> Result<Presentation> {
        let atom = self.atom(ring)?;
        if self.eat("^") {
            let k = self.exponent()?;
            return direct_sum_in(ring, &vec![atom; k]);
        }
        Ok(atom)
    }

    fn expr(&mut self, ring: RingSpec) -> Result<Presentation> {
        let mut terms = vec![self.term(ring)?];
        while self.eat("+") {
            terms.push(self.term(ring)?);
        }
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        direct_sum_in(ring, &terms)
    }
}

fn cyclic_atom(ring: RingSpec, m: BigInt) -> Result<Presentation> {
    match ring.modulus() {
        None => Ok(Presentation::cyclic(ring, m)),
        Some(n) => {
            if m.is_zero() || !n.is_multiple_of(&m) {
                return Err(Error::Parse(format!(
                    "Z/{m} is not a module over {ring}: {m} must divide {n}"
                )));
            }
            Ok(Presentation::cyclic(ring, m))
        }
    }
}

/// Parse a module expression over `ring`.
pub fn parse_module(ring: RingSpec, src: &str) -> Result<Presentation> {
    Parser { src, pos: 0 }.expr(ring)
}
