use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{smith_normal_form, Matrix};
use crate::module::Presentation;
use crate::ring::RingSpec;

/// Invariant-factor decomposition `R^r ⊕ R/(d_1) ⊕ ... ⊕ R/(d_k)` with
/// `d_1 | ... | d_k` and every `d_i >= 2`.
///
/// Over `Z/n` the free rank is always 0 and free summands appear as the factor `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub ring: RingSpec,
    pub torsion_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl CanonicalForm {
    pub fn zero(ring: RingSpec) -> Self {
        CanonicalForm {
            ring,
            torsion_factors: Vec::new(),
            free_rank: 0,
        }
    }

    /// Canonical form of `R^free_rank ⊕ ⊕ R/(c)` for an arbitrary list of cyclic
    /// orders. Over `Z` a zero entry is a free summand; over `Z/n` entries are
    /// replaced by their gcd with `n`.
    pub fn from_cyclic_orders(ring: RingSpec, orders: &[BigInt], free_rank: usize) -> Self {
        let mut free = free_rank;
        let mut ds = Vec::with_capacity(orders.len() + free_rank);
        match ring.modulus() {
            None => {
                for c in orders {
                    if c.is_zero() {
                        free += 1;
                    } else {
                        ds.push(c.abs());
                    }
                }
            }
            Some(n) => {
                for c in orders
                    .iter()
                    .chain(std::iter::repeat_n(&BigInt::zero(), free))
                {
                    ds.push(c.gcd(&n));
                }
                free = 0;
            }
        }
        CanonicalForm {
            ring,
            torsion_factors: divisibility_chain(ds),
            free_rank: free,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Cardinality, or `None` for an infinite module.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion_factors.iter().product())
    }

    /// Minimal number of generators.
    pub fn rank_of_generators(&self) -> usize {
        self.free_rank + self.torsion_factors.len()
    }

    /// The diagonal presentation realizing this form.
    pub fn to_presentation(&self) -> Presentation {
        let g = self.rank_of_generators();
        let mut cols = Vec::new();
        for (i, d) in self.torsion_factors.iter().enumerate() {
            let d = self.ring.reduce(d);
            if d.is_zero() {
                continue;
            }
            let mut c = vec![BigInt::zero(); g];
            c[self.free_rank + i] = d;
            cols.push(c);
        }
        Presentation::new_unchecked(self.ring, g, Matrix::from_columns(g, &cols))
    }

    /// Projective over the ring: free over `Z`; over `Z/n` every factor `d`
    /// satisfies `gcd(d, n/d) = 1`, so `R/(d)` is a direct summand of `R`.
    pub fn is_projective(&self) -> bool {
        match self.ring.modulus() {
            None => self.torsion_factors.is_empty(),
            Some(n) => self
                .torsion_factors
                .iter()
                .all(|d| d.gcd(&(&n / d)).is_one()),
        }
    }
}

/// Turn a list of positive cyclic orders into the invariant-factor chain,
/// dropping units, by repeated `(a, b) -> (gcd, lcm)` exchanges.
fn divisibility_chain(mut ds: Vec<BigInt>) -> Vec<BigInt> {
    ds.retain(|d| !d.is_one());
    ds.sort();
    for i in 0..ds.len() {
        for j in i + 1..ds.len() {
            if ds[j].is_multiple_of(&ds[i]) {
                continue;
            }
            let g = ds[i].gcd(&ds[j]);
            let l = &ds[i] / &g * &ds[j];
            ds[i] = g;
            ds[j] = l;
        }
    }
    ds.retain(|d| !d.is_one());
    ds
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Invariant factors and free rank of `coker(rels)`.
pub fn canonical_form(p: &Presentation) -> CanonicalForm {
    p.canonical().clone()
}

pub(crate) fn compute_canonical(p: &Presentation) -> CanonicalForm {
    let ring = p.ring();
    let rels = p.rels();
    if let Some(orders) = monomial_orders(rels) {
        return CanonicalForm::from_cyclic_orders(ring, &orders, 0);
    }
    let snf = smith_normal_form(&rels.lifted(ring));
    let diag = snf.diagonal();
    let mut orders: Vec<BigInt> = diag.into_iter().take(snf.rank).collect();
    let free = p.gens() - snf.rank;
    orders.retain(|d| !d.is_one());
    CanonicalForm::from_cyclic_orders(ring, &orders, free)
}

/// When every relation involves a single generator, the module splits as a sum
/// of cyclic modules whose orders are the row gcds.
fn monomial_orders(rels: &Matrix) -> Option<Vec<BigInt>> {
    let mut orders = vec![BigInt::zero(); rels.rows()];
    for j in 0..rels.cols() {
        let mut hit = None;
        for i in 0..rels.rows() {
            if !rels.get(i, j).is_zero() {
                if hit.is_some() {
                    return None;
                }
                hit = Some(i);
            }
        }
        if let Some(i) = hit {
            orders[i] = orders[i].gcd(rels.get(i, j));
        }
    }
    Some(orders)
}

/// A presentation in Smith form together with the change of generators.
#[derive(Debug, Clone)]
pub struct Pruned {
    pub module: Presentation,
    /// New coordinates from old ones (`k × g`).
    pub to_new: Matrix,
    /// New generators written in old coordinates (`g × k`).
    pub from_new: Matrix,
}

/// Rewrite `coker(rels)` on a minimal generating set with diagonal relations.
pub fn prune(p: &Presentation) -> Pruned {
    let ring = p.ring();
    let g = p.gens();
    let snf = smith_normal_form(&p.rels().lifted(ring));
    let diag = snf.diagonal();
    let mut keep = Vec::new();
    let mut factors = Vec::new();
    for i in 0..g {
        let d = match diag.get(i) {
            Some(x) if i < snf.rank => x.clone(),
            _ => BigInt::zero(),
        };
        if d.is_one() {
            continue;
        }
        keep.push(i);
        factors.push(ring.reduce(&d));
    }
    let k = keep.len();
    let cols: Vec<Vec<BigInt>> = factors
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, d)| {
            let mut c = vec![BigInt::zero(); k];
            c[i] = d.clone();
            c
        })
        .collect();
    let module = Presentation::new_unchecked(ring, k, Matrix::from_columns(k, &cols));
    Pruned {
        module,
        to_new: snf.u.select_rows(&keep).reduced(ring),
        from_new: snf.u_inverse.select_columns(&keep).reduced(ring),
    }
}
