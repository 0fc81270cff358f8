//! Brute-force ground truth for finite modules.
//!
//! Nothing here calls into the linear algebra or the functors: counts come from
//! explicit enumeration and from the classical gcd formulas for cyclic
//! modules, all in machine integers.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::module::CanonicalForm;
use crate::ring::RingSpec;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime-power decomposition by trial division.
fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Invariant factors of `⊕ Z/c` via elementary divisors: group prime powers by
/// prime, then multiply the largest powers together, the next largest, and so on.
fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: Vec<(u64, Vec<u64>)> = Vec::new();
    for &c in orders {
        for (p, e) in factorize(c) {
            let q = p.pow(e);
            match by_prime.iter_mut().find(|(pp, _)| *pp == p) {
                Some((_, v)) => v.push(q),
                None => by_prime.push((p, vec![q])),
            }
        }
    }
    let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (_, mut v) in by_prime {
        v.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in v.into_iter().enumerate() {
            out[len - 1 - i] *= q;
        }
    }
    out
}

fn form(ring: RingSpec, orders: &[u64], free_rank: usize) -> CanonicalForm {
    CanonicalForm {
        ring,
        torsion_factors: invariant_factors(orders)
            .into_iter()
            .map(BigInt::from)
            .collect(),
        free_rank,
    }
}

fn small(x: &BigInt) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::UnsupportedShape(format!("factor {x} exceeds the oracle range")))
}

fn finite_factors(c: &CanonicalForm) -> Result<Vec<u64>> {
    if c.free_rank > 0 {
        return Err(Error::InfiniteModule);
    }
    c.torsion_factors.iter().map(small).collect()
}

/// All residue tuples of a finite module, in lexicographic order.
pub fn enumerate_elements(c: &CanonicalForm) -> Result<Vec<Vec<u64>>> {
    let ds = finite_factors(c)?;
    let mut out = vec![Vec::new()];
    for d in ds {
        let mut next = Vec::with_capacity(out.len() * d as usize);
        for t in &out {
            for x in 0..d {
                let mut t = t.clone();
                t.push(x);
                next.push(t);
            }
        }
        out = next;
    }
    Ok(out)
}

/// `|Hom(M, N)| = ∏ gcd(d_i, e_j)`.
pub fn brute_hom_count(m: &CanonicalForm, n: &CanonicalForm) -> Result<u64> {
    let (ds, es) = (finite_factors(m)?, finite_factors(n)?);
    Ok(ds
        .iter()
        .flat_map(|&d| es.iter().map(move |&e| gcd(d, e)))
        .product())
}

/// `|Hom(M, N)|` by filtering every assignment of generator images: the
/// generator of `Z/d` may go to `x` only when `d·x = 0`.
pub fn filtered_hom_count(m: &CanonicalForm, n: &CanonicalForm) -> Result<u64> {
    let ds = finite_factors(m)?;
    let es = finite_factors(n)?;
    let elements = enumerate_elements(n)?;
    let killed = |d: u64, x: &[u64]| {
        x.iter()
            .zip(&es)
            .all(|(&xi, &e)| ((d % e) * xi).is_multiple_of(e))
    };
    let mut count = 0u64;
    let mut idx = vec![0usize; ds.len()];
    loop {
        if idx.iter().zip(&ds).all(|(&i, &d)| killed(d, &elements[i])) {
            count += 1;
        }
        // odometer over N^{#gens}
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(count);
            }
            idx[pos] += 1;
            if idx[pos] < elements.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn integer_parts(c: &CanonicalForm) -> Result<(Vec<u64>, usize)> {
    let ds = c.torsion_factors.iter().map(small).collect::<Result<_>>()?;
    Ok((ds, c.free_rank))
}

/// `Hom(⊕ R/d_i, ⊕ R/e_j) = ⊕ R/gcd(d_i, e_j)`, with `Hom(Z, N) = N` and
/// `Hom(Z/d, Z) = 0` over `Z`.
pub fn formula_hom(m: &CanonicalForm, n: &CanonicalForm) -> Result<CanonicalForm> {
    let (ds, mf) = integer_parts(m)?;
    let (es, nf) = integer_parts(n)?;
    let mut orders = Vec::new();
    for &d in &ds {
        orders.extend(es.iter().map(|&e| gcd(d, e)));
    }
    for _ in 0..mf {
        orders.extend(&es);
    }
    Ok(form(m.ring, &orders, mf * nf))
}

/// `R/d ⊗ R/e = R/gcd(d, e)`, with `Z ⊗ N = N`.
pub fn formula_tensor(m: &CanonicalForm, n: &CanonicalForm) -> Result<CanonicalForm> {
    let (ds, mf) = integer_parts(m)?;
    let (es, nf) = integer_parts(n)?;
    let mut orders = Vec::new();
    for &d in &ds {
        orders.extend(es.iter().map(|&e| gcd(d, e)));
        orders.extend(std::iter::repeat_n(d, nf));
    }
    for _ in 0..mf {
        orders.extend(&es);
    }
    Ok(form(m.ring, &orders, mf * nf))
}

fn require_integers(c: &CanonicalForm) -> Result<()> {
    if c.ring.is_integers() {
        Ok(())
    } else {
        Err(Error::UnsupportedShape(
            "Ext/Tor formulas hold over Z only".into(),
        ))
    }
}

/// `Ext^1(⊕ Z/d_i, N) = ⊕ N/d_i N`; free summands of `M` contribute nothing.
pub fn formula_ext1(m: &CanonicalForm, n: &CanonicalForm) -> Result<CanonicalForm> {
    require_integers(m)?;
    let (ds, _) = integer_parts(m)?;
    let (es, nf) = integer_parts(n)?;
    let mut orders = Vec::new();
    for &d in &ds {
        orders.extend(es.iter().map(|&e| gcd(d, e)));
        orders.extend(std::iter::repeat_n(d, nf));
    }
    Ok(form(m.ring, &orders, 0))
}

/// `Tor_1(⊕ Z/d_i, N) = ⊕ N[d_i]`, the `d_i`-torsion of `N`.
pub fn formula_tor1(m: &CanonicalForm, n: &CanonicalForm) -> Result<CanonicalForm> {
    require_integers(m)?;
    let (ds, _) = integer_parts(m)?;
    let (es, _) = integer_parts(n)?;
    let mut orders = Vec::new();
    for &d in &ds {
        orders.extend(es.iter().map(|&e| gcd(d, e)));
    }
    Ok(form(m.ring, &orders, 0))
}

/// Canonical form of a finite abelian group given by cyclic orders, computed
/// through elementary divisors.
pub fn canonical_from_orders(ring: RingSpec, orders: &[u64]) -> CanonicalForm {
    form(ring, orders, 0)
}

/// Number of elements of each order, used to tell non-isomorphic groups of the
/// same size apart.
pub fn order_census(c: &CanonicalForm) -> Result<Vec<(u64, u64)>> {
    let es = finite_factors(c)?;
    let mut census: Vec<(u64, u64)> = Vec::new();
    for x in enumerate_elements(c)? {
        let ord = x
            .iter()
            .zip(&es)
            .map(|(&xi, &e)| e / gcd(xi, e))
            .fold(1, |acc, o| acc / gcd(acc, o) * o);
        match census.iter_mut().find(|(o, _)| *o == ord) {
            Some((_, k)) => *k += 1,
            None => census.push((ord, 1)),
        }
    }
    census.sort_unstable();
    Ok(census)
}
