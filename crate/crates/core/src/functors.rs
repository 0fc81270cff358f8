//! Hom, tensor, Matlis dual, free resolutions, Ext and Tor.

use crate::error::{Error, Result};
use crate::linalg::{kernel_generators, Matrix, RingSolver};
use crate::module::{homology, kernel_of_map, ModuleMap, Presentation};
use crate::ring::RingSpec;

/// `N^k` on generators indexed `j*gens(N) + s`.
pub fn power(n: &Presentation, k: usize) -> Presentation {
    let rels = Matrix::identity(k).kron(n.rels());
    Presentation::new(n.ring(), k * n.gens(), rels).expect("block relations")
}

/// `Hom(M, N)` together with its embedding into `N^{gens(M)}`: a generator is
/// the tuple of images of the generators of `M`.
pub fn hom_module_embedded(
    m: &Presentation,
    n: &Presentation,
) -> Result<(Presentation, ModuleMap)> {
    m.check_ring(n)?;
    let source = power(n, m.gens());
    let target = power(n, m.rels().cols());
    let phi = m.rels().transpose().kron(&Matrix::identity(n.gens()));
    let phi = ModuleMap::new(source, target, phi)?;
    Ok(kernel_of_map(&phi))
}

pub fn hom_module(m: &Presentation, n: &Presentation) -> Result<Presentation> {
    Ok(hom_module_embedded(m, n)?.0)
}

/// `Hom(M, f): Hom(M, X) → Hom(M, Y)`, in the generators of [`hom_module_embedded`].
pub fn hom_induced(m: &Presentation, f: &ModuleMap) -> Result<ModuleMap> {
    let (hx, ix) = hom_module_embedded(m, f.source())?;
    let (hy, iy) = hom_module_embedded(m, f.target())?;
    let pushed = Matrix::identity(m.gens()).kron(f.matrix()).mul(ix.matrix());
    let coords = iy.preimages(&pushed).ok_or(Error::NotWellDefined)?;
    ModuleMap::new(hx, hy, coords)
}

/// `M ⊗ N` on generators `(i, j)` indexed `i*gens(N) + j`, unpruned.
pub fn tensor_module_raw(m: &Presentation, n: &Presentation) -> Result<Presentation> {
    m.check_ring(n)?;
    let left = m.rels().kron(&Matrix::identity(n.gens()));
    let right = Matrix::identity(m.gens()).kron(n.rels());
    Presentation::new(m.ring(), m.gens() * n.gens(), left.hcat(&right))
}

pub fn tensor_module(m: &Presentation, n: &Presentation) -> Result<Presentation> {
    Ok(tensor_module_raw(m, n)?.pruned())
}

/// `M ⊗ f: M ⊗ X → M ⊗ Y` on the raw tensor presentations.
pub fn tensor_induced(m: &Presentation, f: &ModuleMap) -> Result<ModuleMap> {
    let tx = tensor_module_raw(m, f.source())?;
    let ty = tensor_module_raw(m, f.target())?;
    let mat = Matrix::identity(m.gens()).kron(f.matrix());
    ModuleMap::new(tx, ty, mat)
}

/// Matlis dual: `Hom(N, Q/Z)` over `Z` (torsion `N` only), `Hom(N, R)` over `Z/n`.
pub fn matlis_dual(n: &Presentation) -> Result<Presentation> {
    match n.ring() {
        RingSpec::Integers => {
            let c = n.canonical();
            if c.free_rank > 0 {
                return Err(Error::FreePartNotSupported);
            }
            // Hom(Z/d, Q/Z) is cyclic of order d, generated by 1/d.
            Ok(c.to_presentation())
        }
        ring => hom_module(n, &Presentation::free(ring, 1)),
    }
}

/// `F_L → ... → F_1 → F_0 ↠ target`; `differentials[k]` is `d_{k+1}: F_{k+1} → F_k`.
#[derive(Debug, Clone)]
pub struct FreeResolutionPrefix {
    pub target: Presentation,
    pub length: usize,
    pub differentials: Vec<Matrix>,
}

impl FreeResolutionPrefix {
    /// Rank of `F_k`.
    pub fn rank(&self, k: usize) -> usize {
        match k {
            0 => self.target.gens(),
            k => self.differentials[k - 1].cols(),
        }
    }

    /// Consecutive differentials compose to zero, and the kernel of each
    /// `d_k` with `k < L` is spanned by the columns of `d_{k+1}`.
    pub fn verify(&self) -> bool {
        let ring = self.target.ring();
        for k in 1..self.differentials.len() {
            let (a, b) = (&self.differentials[k - 1], &self.differentials[k]);
            if !a.mul(b).reduced(ring).is_zero() {
                return false;
            }
            let solver = RingSolver::new(ring, b);
            if !kernel_generators(ring, a)
                .columns()
                .iter()
                .all(|c| solver.solve(c).is_some())
            {
                return false;
            }
        }
        true
    }
}

pub fn free_resolution_prefix(m: &Presentation, length: usize) -> FreeResolutionPrefix {
    let ring = m.ring();
    let mut differentials: Vec<Matrix> = Vec::with_capacity(length);
    for k in 0..length {
        let d = match k {
            0 => m.rels().clone(),
            _ => kernel_generators(ring, &differentials[k - 1]),
        };
        differentials.push(d);
    }
    FreeResolutionPrefix {
        target: m.clone(),
        length,
        differentials,
    }
}

/// `Ext^i(M, N)` as the cohomology of `Hom(F_•, N)`.
pub fn ext(i: usize, m: &Presentation, n: &Presentation) -> Result<Presentation> {
    m.check_ring(n)?;
    let (m, n) = (m.pruned(), n.pruned());
    let res = free_resolution_prefix(&m, i + 1);
    let gn = n.gens();
    let id = Matrix::identity(gn);
    // delta_k: Hom(F_k, N) = N^{r_k} → N^{r_{k+1}}
    let delta = |k: usize| -> ModuleMap {
        let src = power(&n, res.rank(k));
        let tgt = power(&n, res.rank(k + 1));
        let mat = res.differentials[k].transpose().kron(&id);
        ModuleMap::new_unchecked(src, tgt, mat)
    };
    let outgoing = delta(i);
    let incoming = match i {
        0 => ModuleMap::zero(&Presentation::zero(m.ring()), outgoing.source()),
        _ => delta(i - 1),
    };
    homology(&incoming, &outgoing)
}

/// `Tor_i(M, N)` as the homology of `F_• ⊗ N`.
pub fn tor(i: usize, m: &Presentation, n: &Presentation) -> Result<Presentation> {
    m.check_ring(n)?;
    let (m, n) = (m.pruned(), n.pruned());
    let res = free_resolution_prefix(&m, i + 1);
    let id = Matrix::identity(n.gens());
    // partial_k: F_k ⊗ N = N^{r_k} → N^{r_{k-1}}, k >= 1
    let partial = |k: usize| -> ModuleMap {
        let src = power(&n, res.rank(k));
        let tgt = power(&n, res.rank(k - 1));
        let mat = res.differentials[k - 1].kron(&id);
        ModuleMap::new_unchecked(src, tgt, mat)
    };
    let incoming = partial(i + 1);
    let outgoing = match i {
        0 => ModuleMap::zero(incoming.target(), &Presentation::zero(m.ring())),
        _ => partial(i),
    };
    homology(&incoming, &outgoing)
}
