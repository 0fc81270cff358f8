//! Generalized local cohomology `H^i_a(M, N) = colim_k Ext^i(M/a^kM, N)` and
//! homology `H^a_i(M, N) = lim_k Tor_i(M/a^kM, N)`.
//!
//! Both are evaluated where the chain `a^k M` stabilizes: from that exponent on
//! the transition maps of the system are identities and the (co)limit is the
//! stable term.

use crate::adic::{is_coreduced_wrt, is_reduced_wrt, lambda, stabilization_exponent};
use crate::error::Result;
use crate::functors::{ext, tor};
use crate::module::{iso_test, quotient_by_ideal, Presentation};
use crate::ring::Ideal;

fn stable_quotient(m: &Presentation, a: &Ideal, kmax: usize) -> Result<Presentation> {
    let k = stabilization_exponent(m, a, kmax)?;
    quotient_by_ideal(m, &a.power(k as u32))
}

/// `Ext^i(M/aM, N)`.
pub fn glc_fast(i: usize, m: &Presentation, n: &Presentation, a: &Ideal) -> Result<Presentation> {
    ext(i, &quotient_by_ideal(m, a)?, n)
}

/// `Ext^i(M/a^kM, N)` at the stabilization exponent of `a^k M`.
pub fn glc_stabilized(
    i: usize,
    m: &Presentation,
    n: &Presentation,
    a: &Ideal,
    kmax: usize,
) -> Result<Presentation> {
    ext(i, &stable_quotient(m, a, kmax)?, n)
}

/// `H^i_a(M, N)`: the quotient `M/aM` when `N` is reduced with respect to `M`,
/// the stabilized chain otherwise.
pub fn glc(
    i: usize,
    m: &Presentation,
    n: &Presentation,
    a: &Ideal,
    kmax: usize,
) -> Result<Presentation> {
    if is_reduced_wrt(m, n, a)? {
        glc_fast(i, m, n, a)
    } else {
        glc_stabilized(i, m, n, a, kmax)
    }
}

/// `Tor_i(M/aM, N)`.
pub fn glh_fast(i: usize, m: &Presentation, n: &Presentation, a: &Ideal) -> Result<Presentation> {
    tor(i, &quotient_by_ideal(m, a)?, n)
}

/// `Tor_i(M/a^kM, N)` at the stabilization exponent of `a^k M`.
pub fn glh_stabilized(
    i: usize,
    m: &Presentation,
    n: &Presentation,
    a: &Ideal,
    kmax: usize,
) -> Result<Presentation> {
    tor(i, &stable_quotient(m, a, kmax)?, n)
}

/// `H^a_i(M, N)`, mirroring [`glc`] with the coreduced test.
pub fn glh(
    i: usize,
    m: &Presentation,
    n: &Presentation,
    a: &Ideal,
    kmax: usize,
) -> Result<Presentation> {
    if is_coreduced_wrt(m, n, a)? {
        glh_fast(i, m, n, a)
    } else {
        glh_stabilized(i, m, n, a, kmax)
    }
}

/// `N ≅ Λ_a(N)`; a non-stabilizing chain counts as not complete.
pub fn is_adically_complete(n: &Presentation, a: &Ideal, kmax: usize) -> bool {
    match lambda(n, a, kmax) {
        Ok(l) => iso_test(&l.value, n).unwrap_or(false),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adic::DEFAULT_KMAX;
    use crate::module::direct_sum;
    use crate::ring::RingSpec;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn cyc(d: i64) -> Presentation {
        Presentation::cyclic(z(), d)
    }

    fn ideal(d: i64) -> Ideal {
        Ideal::principal(z(), d)
    }

    fn s(p: &Presentation) -> String {
        p.canonical().to_string()
    }

    #[test]
    fn glc_examples() {
        let two = ideal(2);
        assert_eq!(
            s(&glc(0, &cyc(2), &cyc(4), &two, DEFAULT_KMAX).unwrap()),
            "Z/2"
        );
        assert_eq!(
            s(&glc(1, &cyc(2), &cyc(4), &two, DEFAULT_KMAX).unwrap()),
            "Z/2"
        );
        // R against a finite N with N reduced: the value is Ext^1(R/a, N) = N/aN.
        let r = Presentation::free(z(), 1);
        let n = direct_sum(&[cyc(2), cyc(3)]).unwrap();
        assert_eq!(s(&glc(1, &r, &n, &two, DEFAULT_KMAX).unwrap()), "Z/2");
        assert!(glc(2, &r, &n, &two, DEFAULT_KMAX).unwrap().is_zero());
    }

    #[test]
    fn glh_examples() {
        let two = ideal(2);
        assert_eq!(
            s(&glh(0, &cyc(2), &cyc(4), &two, DEFAULT_KMAX).unwrap()),
            "Z/2"
        );
        assert_eq!(
            s(&glh(1, &cyc(2), &cyc(2), &two, DEFAULT_KMAX).unwrap()),
            "Z/2"
        );
        let zero = Presentation::zero(z());
        for i in 0..3 {
            assert!(glh(i, &cyc(4), &zero, &two, DEFAULT_KMAX)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn completeness() {
        assert!(is_adically_complete(&cyc(4), &ideal(2), DEFAULT_KMAX));
        assert!(!is_adically_complete(
            &Presentation::free(z(), 1),
            &ideal(2),
            DEFAULT_KMAX
        ));
        assert!(is_adically_complete(
            &Presentation::zero(z()),
            &ideal(1),
            DEFAULT_KMAX
        ));
        assert!(!is_adically_complete(&cyc(3), &ideal(1), DEFAULT_KMAX));
    }
}
