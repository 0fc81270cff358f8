//! Base rings `Z` and `Z/n`, and principal ideals over them.
//!
//! Both rings are principal ideal rings, so every finitely generated ideal is
//! carried by a single canonical generator: the gcd of its generators (and of
//! `n` over `Z/n`), taken as the nonnegative representative.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base ring: the integers, or the integers modulo `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum RingSpec {
    Integers,
    /// Invariant: the modulus is at least 2. Build through [`RingSpec::modulo`].
    IntegersMod(u64),
}

impl RingSpec {
    pub fn modulo(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n.to_string()));
        }
        Ok(RingSpec::IntegersMod(n))
    }

    pub fn modulus(&self) -> Option<BigInt> {
        match self {
            RingSpec::Integers => None,
            RingSpec::IntegersMod(n) => Some(BigInt::from(*n)),
        }
    }

    pub fn is_integers(&self) -> bool {
        matches!(self, RingSpec::Integers)
    }

    /// Canonical representative of `x`: itself over `Z`, the residue in `[0, n)` over `Z/n`.
    pub fn reduce(&self, x: &BigInt) -> BigInt {
        match self {
            RingSpec::Integers => x.clone(),
            RingSpec::IntegersMod(n) => x.mod_floor(&BigInt::from(*n)),
        }
    }

    /// Squarefree modulus: `Z/n` is then a finite product of fields, hence
    /// von Neumann regular and semisimple.
    pub fn is_von_neumann_regular(&self) -> bool {
        match self {
            RingSpec::Integers => false,
            RingSpec::IntegersMod(n) => {
                let mut m = *n;
                let mut p = 2;
                while p * p <= m {
                    if m % p == 0 {
                        m /= p;
                        if m % p == 0 {
                            return false;
                        }
                    }
                    p += 1;
                }
                true
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::IntegersMod(n) => write!(f, "Z/{n}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(RingSpec::Integers);
        }
        let n = s
            .strip_prefix("Z/")
            .ok_or_else(|| Error::Parse(format!("ring must be `Z` or `Z/<n>`, got `{s}`")))?;
        let n: u64 = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in `{s}`")))?;
        RingSpec::modulo(n)
    }
}

impl TryFrom<String> for RingSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RingSpec> for String {
    fn from(r: RingSpec) -> String {
        r.to_string()
    }
}

/// A finitely generated ideal, carried by its canonical principal generator.
/// Equality and hashing compare the ideal, not the generator list.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: RingSpec,
    generators: Vec<BigInt>,
    canonical: BigInt,
}

/// Build the ideal generated by `generators` and compute its canonical generator.
pub fn canonicalize_ideal(ring: RingSpec, generators: &[BigInt]) -> Result<Ideal> {
    if generators.is_empty() {
        return Err(Error::EmptyGeneratorList);
    }
    let generators: Vec<BigInt> = generators.iter().map(|g| ring.reduce(g)).collect();
    let mut g = generators.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if let Some(n) = ring.modulus() {
        g = g.gcd(&n).mod_floor(&n);
    }
    Ok(Ideal {
        ring,
        generators,
        canonical: g,
    })
}

impl Ideal {
    pub fn principal(ring: RingSpec, generator: impl Into<BigInt>) -> Ideal {
        canonicalize_ideal(ring, &[generator.into()]).expect("one generator")
    }

    pub fn unit(ring: RingSpec) -> Ideal {
        Ideal::principal(ring, 1)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn generators(&self) -> &[BigInt] {
        &self.generators
    }

    /// The canonical generator `d`; over `Z/n` it lies in `[0, n)` and divides `n` (or is 0).
    pub fn canonical(&self) -> &BigInt {
        &self.canonical
    }

    /// Generator that is a positive divisor of `n` over `Z/n` (`n` itself for the zero ideal).
    fn divisor(&self) -> BigInt {
        match self.ring.modulus() {
            Some(n) if self.canonical.is_zero() => n,
            _ => self.canonical.abs(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.canonical.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.canonical.is_one()
    }

    /// `a^k`; `k = 0` gives the unit ideal.
    pub fn power(&self, k: u32) -> Ideal {
        let p = num_traits::pow(self.canonical.clone(), k as usize);
        Ideal::principal(self.ring, p)
    }

    pub fn is_idempotent(&self) -> bool {
        self.power(2) == *self
    }

    /// Product ideal `a·b`.
    pub fn product(&self, other: &Ideal) -> Ideal {
        Ideal::principal(self.ring, &self.canonical * &other.canonical)
    }

    /// Membership of a ring element.
    pub fn contains(&self, x: &BigInt) -> bool {
        let x = self.ring.reduce(x);
        let d = self.divisor();
        if d.is_zero() {
            x.is_zero()
        } else {
            x.is_multiple_of(&d)
        }
    }

    /// Coefficients `c` with `sum c_i * g_i == canonical` in the ring (over `Z/n`
    /// the last coefficient multiplies `n`, so the identity holds modulo `n`).
    pub fn bezout_witness(&self) -> Vec<BigInt> {
        let mut gens = self.generators.clone();
        if let Some(n) = self.ring.modulus() {
            gens.push(n);
        }
        let mut coeffs = vec![BigInt::zero(); gens.len()];
        let mut acc = BigInt::zero();
        for (i, g) in gens.iter().enumerate() {
            let e = acc.extended_gcd(g);
            // e.gcd == e.x * acc + e.y * g
            for c in coeffs.iter_mut().take(i) {
                *c *= &e.x;
            }
            coeffs[i] = e.y;
            acc = e.gcd;
        }
        if acc.is_negative() {
            for c in coeffs.iter_mut() {
                *c = -&*c;
            }
        }
        if self.ring.modulus().is_some() {
            coeffs.pop();
        }
        coeffs
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.canonical == other.canonical
    }
}

impl Eq for Ideal {}

impl std::hash::Hash for Ideal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ring.hash(state);
        self.canonical.hash(state);
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ring, &self.canonical).cmp(&(other.ring, &other.canonical))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.canonical)
    }
}

/// Parse an ideal literal: a comma-separated list of integers.
pub fn parse_ideal(ring: RingSpec, s: &str) -> Result<Ideal> {
    let gens = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad ideal generator `{}`", t.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    canonicalize_ideal(ring, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonical_generators() {
        let z = RingSpec::Integers;
        assert_eq!(
            canonicalize_ideal(z, &big(&[4, 6])).unwrap().canonical(),
            &BigInt::from(2)
        );
        assert_eq!(
            canonicalize_ideal(z, &big(&[0])).unwrap().canonical(),
            &BigInt::from(0)
        );
        assert_eq!(
            canonicalize_ideal(z, &big(&[-9, 6])).unwrap().canonical(),
            &BigInt::from(3)
        );
        let z6 = RingSpec::modulo(6).unwrap();
        assert_eq!(
            canonicalize_ideal(z6, &big(&[4])).unwrap().canonical(),
            &BigInt::from(2)
        );
        assert_eq!(
            canonicalize_ideal(z6, &big(&[0])).unwrap().canonical(),
            &BigInt::from(0)
        );
        assert_eq!(
            canonicalize_ideal(z6, &big(&[5])).unwrap().canonical(),
            &BigInt::from(1)
        );
        assert_eq!(canonicalize_ideal(z, &[]), Err(Error::EmptyGeneratorList));
    }

    #[test]
    fn powers() {
        let z = RingSpec::Integers;
        assert_eq!(Ideal::principal(z, 2).power(2), Ideal::principal(z, 4));
        let z8 = RingSpec::modulo(8).unwrap();
        assert!(Ideal::principal(z8, 2).power(3).is_zero());
        assert!(Ideal::principal(z, 0).power(5).is_zero());
        assert!(Ideal::principal(z, 7).power(0).is_unit());
        // (2)^2 = (4) = (2) in Z/6
        let z6 = RingSpec::modulo(6).unwrap();
        assert_eq!(
            Ideal::principal(z6, 2).power(2).canonical(),
            &BigInt::from(2)
        );
        assert!(Ideal::principal(z6, 3).is_idempotent());
        assert!(!Ideal::principal(z8, 2).is_idempotent());
    }

    #[test]
    fn bezout_witness_reproduces_generator() {
        for (ring, gens) in [
            (RingSpec::Integers, vec![4, 6]),
            (RingSpec::Integers, vec![-12, 18, 27]),
            (RingSpec::modulo(12).unwrap(), vec![8, 6]),
            (RingSpec::modulo(6).unwrap(), vec![4]),
        ] {
            let ideal = canonicalize_ideal(ring, &big(&gens)).unwrap();
            let w = ideal.bezout_witness();
            let combo: BigInt = w.iter().zip(ideal.generators()).map(|(c, g)| c * g).sum();
            assert_eq!(
                ring.reduce(&combo),
                ideal.canonical().clone(),
                "{ring} {gens:?}"
            );
            for g in ideal.generators() {
                assert!(ideal.contains(g));
            }
        }
    }

    #[test]
    fn ring_literals() {
        assert_eq!("Z".parse::<RingSpec>().unwrap(), RingSpec::Integers);
        assert_eq!("Z/8".parse::<RingSpec>().unwrap(), RingSpec::IntegersMod(8));
        assert!("Z/1".parse::<RingSpec>().is_err());
        assert!("Q".parse::<RingSpec>().is_err());
        assert!(RingSpec::modulo(6).unwrap().is_von_neumann_regular());
        assert!(!RingSpec::modulo(8).unwrap().is_von_neumann_regular());
        let i = parse_ideal(RingSpec::Integers, "4,6").unwrap();
        assert_eq!(i.canonical(), &BigInt::from(2));
    }
}
