//! Finitely presented modules over `Z` and `Z/n`.

mod canonical;
mod map;
mod submodule;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::{Ideal, RingSpec};

pub use canonical::{canonical_form, prune, CanonicalForm, Pruned};
pub use map::{homology, kernel_of_map, kernel_submodule, ModuleMap};
pub use submodule::{submodule_equal, Submodule};

/// The module `R^gens / (column span of rels)`.
pub struct Presentation {
    ring: RingSpec,
    gens: usize,
    rels: Matrix,
    canonical: OnceLock<CanonicalForm>,
}

impl Presentation {
    pub fn new(ring: RingSpec, gens: usize, rels: Matrix) -> Result<Self> {
        if rels.rows() != gens {
            return Err(Error::DimensionMismatch {
                expected: gens,
                found: rels.rows(),
            });
        }
        Ok(Self::new_unchecked(ring, gens, rels))
    }

    pub(crate) fn new_unchecked(ring: RingSpec, gens: usize, rels: Matrix) -> Self {
        debug_assert_eq!(rels.rows(), gens);
        Presentation {
            ring,
            gens,
            rels: rels.reduced(ring),
            canonical: OnceLock::new(),
        }
    }

    pub fn zero(ring: RingSpec) -> Self {
        Self::free(ring, 0)
    }

    pub fn free(ring: RingSpec, rank: usize) -> Self {
        Self::new_unchecked(ring, rank, Matrix::zeros(rank, 0))
    }

    /// `R/(d)`.
    pub fn cyclic(ring: RingSpec, d: impl Into<BigInt>) -> Self {
        Self::new_unchecked(ring, 1, Matrix::from_columns(1, &[vec![d.into()]]))
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn rels(&self) -> &Matrix {
        &self.rels
    }

    /// The canonical form, computed once per value.
    pub fn canonical(&self) -> &CanonicalForm {
        self.canonical
            .get_or_init(|| canonical::compute_canonical(self))
    }

    /// Relations as seen over `Z`: `[rels | n·I]` over `Z/n`.
    pub fn lifted_rels(&self) -> Matrix {
        self.rels.lifted(self.ring)
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().is_zero()
    }

    /// The same module on a minimal diagonal presentation.
    pub fn pruned(&self) -> Presentation {
        self.canonical().to_presentation()
    }

    pub fn check_ring(&self, other: &Presentation) -> Result<()> {
        check_rings(self.ring, other.ring)
    }
}

pub(crate) fn check_rings(a: RingSpec, b: RingSpec) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch { left: a, right: b })
    }
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            ring: self.ring,
            gens: self.gens,
            rels: self.rels.clone(),
            canonical: self.canonical.clone(),
        }
    }
}

/// Equality of presentations, not of isomorphism classes; see [`iso_test`].
impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens && self.rels == other.rels
    }
}

impl Eq for Presentation {}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker{:?} over {}", self.rels, self.ring)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self.canonical(), f)
    }
}

impl From<&CanonicalForm> for Presentation {
    fn from(c: &CanonicalForm) -> Self {
        c.to_presentation()
    }
}

/// Isomorphism test: equality of canonical forms.
pub fn iso_test(p: &Presentation, q: &Presentation) -> Result<bool> {
    p.check_ring(q)?;
    Ok(p.canonical() == q.canonical())
}

/// Block-diagonal direct sum; the empty list needs a ring, see [`direct_sum_in`].
pub fn direct_sum(ps: &[Presentation]) -> Result<Presentation> {
    match ps.first() {
        None => Err(Error::UnsupportedShape(
            "empty direct sum has no ring; use direct_sum_in".into(),
        )),
        Some(p) => direct_sum_in(p.ring, ps),
    }
}

pub fn direct_sum_in(ring: RingSpec, ps: &[Presentation]) -> Result<Presentation> {
    for p in ps {
        check_rings(ring, p.ring)?;
    }
    let blocks: Vec<&Matrix> = ps.iter().map(|p| &p.rels).collect();
    let rels = Matrix::block_diag(&blocks);
    let gens = ps.iter().map(|p| p.gens).sum();
    Ok(Presentation::new_unchecked(ring, gens, rels))
}

/// `M/aM`, by adjoining `d·e_i` for every generator.
pub fn quotient_by_ideal(m: &Presentation, a: &Ideal) -> Result<Presentation> {
    check_rings(m.ring, a.ring())?;
    let extra = Matrix::scalar(m.gens, a.canonical());
    Ok(Presentation::new_unchecked(m.ring, m.gens, m.rels.hcat(&extra)).pruned())
}

/// The submodule `aM`, presented, with its inclusion into `M`.
pub fn ideal_multiple(m: &Presentation, a: &Ideal) -> Result<(Presentation, ModuleMap)> {
    check_rings(m.ring, a.ring())?;
    let gens = Matrix::scalar(m.gens, a.canonical());
    Submodule::new(m.clone(), gens)?.presentation()
}

/// `x ↦ r·x` on `M`.
pub fn mult_map(m: &Presentation, r: &BigInt) -> ModuleMap {
    ModuleMap::new_unchecked(m.clone(), m.clone(), Matrix::scalar(m.gens, r))
}

/// `a^k M` as a submodule of `M`.
pub fn ideal_power_submodule(m: &Presentation, a: &Ideal, k: u32) -> Submodule {
    let d = a.power(k);
    Submodule::new_unchecked(m.clone(), Matrix::scalar(m.gens, d.canonical()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn cyc(d: i64) -> Presentation {
        Presentation::cyclic(z(), d)
    }

    fn cf(p: &Presentation) -> String {
        p.canonical().to_string()
    }

    #[test]
    fn canonical_form_examples() {
        assert_eq!(cf(&cyc(4)), "Z/4");
        assert_eq!(cf(&Presentation::free(z(), 2)), "Z^2");
        let p = Presentation::new(z(), 2, Matrix::from_i64(&[&[2, 4], &[6, 8]])).unwrap();
        assert_eq!(cf(&p), "Z/2 + Z/4");
    }

    #[test]
    fn iso_test_examples() {
        let a = direct_sum(&[cyc(2), cyc(4)]).unwrap();
        let b = direct_sum(&[cyc(4), cyc(2)]).unwrap();
        assert!(iso_test(&a, &b).unwrap());
        let c = direct_sum(&[cyc(2), cyc(2)]).unwrap();
        assert!(!iso_test(&cyc(4), &c).unwrap());
        assert!(iso_test(&Presentation::free(z(), 1), &Presentation::free(z(), 1)).unwrap());
        let z6 = RingSpec::modulo(6).unwrap();
        assert!(matches!(
            iso_test(&cyc(2), &Presentation::cyclic(z6, 2)),
            Err(Error::RingMismatch { .. })
        ));
    }

    #[test]
    fn direct_sum_examples() {
        assert!(direct_sum_in(z(), &[]).unwrap().is_zero());
        assert_eq!(cf(&direct_sum(&[cyc(2), cyc(3)]).unwrap()), "Z/6");
        let p = direct_sum(&[Presentation::free(z(), 1), cyc(2)]).unwrap();
        assert_eq!(cf(&p), "Z + Z/2");
    }

    #[test]
    fn quotient_by_ideal_examples() {
        let two = Ideal::principal(z(), 2);
        let q = quotient_by_ideal(&Presentation::free(z(), 1), &two).unwrap();
        assert_eq!(cf(&q), "Z/2");
        assert_eq!(cf(&quotient_by_ideal(&cyc(4), &two).unwrap()), "Z/2");
        let m = direct_sum(&[Presentation::free(z(), 1), cyc(6)]).unwrap();
        assert!(quotient_by_ideal(&m, &Ideal::unit(z())).unwrap().is_zero());
    }

    #[test]
    fn ideal_multiple_examples() {
        let (am, inc) = ideal_multiple(&cyc(4), &Ideal::principal(z(), 2)).unwrap();
        assert_eq!(cf(&am), "Z/2");
        assert_eq!(inc.target(), &cyc(4));
        let (zm, _) = ideal_multiple(&cyc(4), &Ideal::principal(z(), 0)).unwrap();
        assert!(zm.is_zero());
        let (am, _) = ideal_multiple(&cyc(6), &Ideal::principal(z(), 2)).unwrap();
        assert_eq!(cf(&am), "Z/3");
    }

    #[test]
    fn mult_map_examples() {
        let m = cyc(4);
        let id = mult_map(&m, &BigInt::from(1));
        assert!(kernel_of_map(&id).0.is_zero());
        let zero = mult_map(&m, &BigInt::from(0));
        assert_eq!(cf(&kernel_of_map(&zero).0), "Z/4");
        let two = mult_map(&m, &BigInt::from(2));
        assert_eq!(cf(&two.image().presentation().unwrap().0), "Z/2");
        assert_eq!(cf(&kernel_of_map(&two).0), "Z/2");
    }
}
