//! The torsion functor `Γ_a`, the completion `Λ_a`, their two-argument
//! versions, and the (co)reducedness predicates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::functors::{hom_module, tensor_module};
use crate::module::{
    check_rings, ideal_power_submodule, kernel_submodule, mult_map, submodule_equal, CanonicalForm,
    ModuleMap, Presentation, Submodule,
};
use crate::ring::Ideal;

pub const DEFAULT_KMAX: usize = 64;

/// The stable term of an adic chain and the exponent at which it stabilized.
#[derive(Debug, Clone)]
pub struct StabilizationResult {
    pub value: Presentation,
    pub exponent: usize,
    /// `value → N` for `gamma`, `N → value` for `lambda`.
    pub map: ModuleMap,
}

fn power_kernel(n: &Presentation, a: &Ideal, k: usize) -> Submodule {
    kernel_submodule(&mult_map(n, a.power(k as u32).canonical()))
}

/// Least `k` at which the chain attached to `a` becomes constant on a module
/// with canonical form `c`, read off the invariant factors.
///
/// On a summand `R/(e)` both `ker d^k` and `R/(e) / d^k` have order
/// `gcd(e, d^k)`, so the kernel chain and the image chain of the whole module
/// stabilize at the first `k` where every `gcd(e_i, d^k)` does. A free
/// `Z`-summand has `ker d^k = 0` unless `d^k = 0`, and `d^k Z` strictly
/// decreases unless `d ∈ {0, ±1}`; `images` selects which chain is meant.
fn chain_exponent(c: &CanonicalForm, a: &Ideal, images: bool, kmax: usize) -> Option<usize> {
    let d = a.canonical();
    let level = |k: usize| -> (Vec<BigInt>, bool) {
        let p = num_traits::pow(d.clone(), k);
        let gcds: Vec<BigInt> = c.torsion_factors.iter().map(|e| e.gcd(&p)).collect();
        (gcds, p.is_zero())
    };
    if images && c.free_rank > 0 && !d.is_zero() && !d.abs().is_one() {
        return None;
    }
    let mut current = level(0);
    for k in 0..=kmax {
        let next = level(k + 1);
        let free_stable = c.free_rank == 0 || current.1 == next.1;
        if free_stable && current.0 == next.0 {
            return Some(k);
        }
        current = next;
    }
    None
}

/// `Γ_a(N)`: the kernel of `d^k` at the least `k` with `ker d^k = ker d^{k+1}`.
pub fn gamma(n: &Presentation, a: &Ideal) -> Result<StabilizationResult> {
    check_rings(n.ring(), a.ring())?;
    let k = chain_exponent(n.canonical(), a, false, usize::MAX - 1)
        .expect("kernel chains of finitely generated modules stabilize");
    let (value, map) = power_kernel(n, a, k).presentation()?;
    Ok(StabilizationResult {
        value,
        exponent: k,
        map,
    })
}

/// Least `k <= kmax` with `a^k N = a^{k+1} N`.
pub fn stabilization_exponent(n: &Presentation, a: &Ideal, kmax: usize) -> Result<usize> {
    check_rings(n.ring(), a.ring())?;
    chain_exponent(n.canonical(), a, true, kmax).ok_or(Error::NonStabilizing { kmax })
}

/// `Λ_a(N) = N/a^k N` at the stabilization exponent.
pub fn lambda(n: &Presentation, a: &Ideal, kmax: usize) -> Result<StabilizationResult> {
    let k = stabilization_exponent(n, a, kmax)?;
    let (value, map) = ideal_power_submodule(n, a, k as u32).quotient()?;
    Ok(StabilizationResult {
        value,
        exponent: k,
        map,
    })
}

/// `Γ_a(M, N) = Γ_a(Hom(M, N))`.
pub fn gamma_gen(m: &Presentation, n: &Presentation, a: &Ideal) -> Result<Presentation> {
    Ok(gamma(&hom_module(m, n)?, a)?.value)
}

/// `Λ_a(M, N) = Λ_a(M ⊗ N)`.
pub fn lambda_gen(
    m: &Presentation,
    n: &Presentation,
    a: &Ideal,
    kmax: usize,
) -> Result<Presentation> {
    Ok(lambda(&tensor_module(m, n)?, a, kmax)?.value)
}

/// `a²x = 0` forces `ax = 0`: `ker d² = ker d`.
pub fn is_reduced(n: &Presentation, a: &Ideal) -> Result<bool> {
    check_rings(n.ring(), a.ring())?;
    submodule_equal(&power_kernel(n, a, 1), &power_kernel(n, a, 2))
}

/// The same predicate through the obstruction `a·Γ_a(N) = 0`.
pub fn is_reduced_via_gamma(n: &Presentation, a: &Ideal) -> Result<bool> {
    let g = gamma(n, a)?;
    Ok(ideal_power_submodule(&g.value, a, 1).is_zero())
}

/// `aN = a²N`.
pub fn is_coreduced(n: &Presentation, a: &Ideal) -> Result<bool> {
    check_rings(n.ring(), a.ring())?;
    submodule_equal(
        &ideal_power_submodule(n, a, 1),
        &ideal_power_submodule(n, a, 2),
    )
}

pub fn is_reduced_wrt(m: &Presentation, n: &Presentation, a: &Ideal) -> Result<bool> {
    is_reduced(&hom_module(m, n)?, a)
}

pub fn is_coreduced_wrt(m: &Presentation, n: &Presentation, a: &Ideal) -> Result<bool> {
    is_coreduced(&tensor_module(m, n)?, a)
}

/// Membership in both classes.
pub fn is_in_b(m: &Presentation, n: &Presentation, a: &Ideal) -> Result<bool> {
    Ok(is_reduced_wrt(m, n, a)? && is_coreduced_wrt(m, n, a)?)
}
