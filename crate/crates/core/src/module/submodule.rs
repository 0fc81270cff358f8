use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{column_span_basis, integer_kernel, reduce_span_mod, IntegerSolver, Matrix};
use crate::module::{prune, ModuleMap, Presentation};

/// The submodule of `ambient` spanned by the columns of `generators`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    ambient: Presentation,
    generators: Matrix,
}

impl Submodule {
    pub fn new(ambient: Presentation, generators: Matrix) -> Result<Self> {
        if generators.rows() != ambient.gens() {
            return Err(Error::DimensionMismatch {
                expected: ambient.gens(),
                found: generators.rows(),
            });
        }
        Ok(Self::new_unchecked(ambient, generators))
    }

    pub(crate) fn new_unchecked(ambient: Presentation, generators: Matrix) -> Self {
        let generators = generators.reduced(ambient.ring());
        Submodule {
            ambient,
            generators,
        }
    }

    pub fn ambient(&self) -> &Presentation {
        &self.ambient
    }

    pub fn generators(&self) -> &Matrix {
        &self.generators
    }

    fn membership_solver(&self) -> IntegerSolver {
        IntegerSolver::new(&self.generators.hcat(&self.ambient.lifted_rels()))
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.membership_solver().contains(x)
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_all(&self, other: &Matrix) -> bool {
        let solver = self.membership_solver();
        other.columns().iter().all(|c| solver.contains(c))
    }

    pub fn is_zero(&self) -> bool {
        let solver = IntegerSolver::new(&self.ambient.lifted_rels());
        self.generators.columns().iter().all(|c| solver.contains(c))
    }

    pub fn is_everything(&self) -> bool {
        self.contains_all(&Matrix::identity(self.ambient.gens()))
    }

    /// A presentation of the span, with its inclusion into the ambient module.
    pub fn presentation(&self) -> Result<(Presentation, ModuleMap)> {
        let ring = self.ambient.ring();
        let gens = match ring.modulus() {
            None => column_span_basis(&self.generators),
            Some(n) => reduce_span_mod(ring, &self.generators, &n),
        };
        let s = gens.cols();
        let stacked = gens.hcat(&self.ambient.lifted_rels());
        let rels = integer_kernel(&stacked).top_rows(s);
        let rels = match ring.modulus() {
            None => column_span_basis(&rels),
            Some(n) => reduce_span_mod(ring, &rels, &n),
        };
        let p = Presentation::new_unchecked(ring, s, rels);
        let pruned = prune(&p);
        let inc = gens.mul(&pruned.from_new);
        Ok((
            pruned.module.clone(),
            ModuleMap::new_unchecked(pruned.module, self.ambient.clone(), inc),
        ))
    }

    /// `ambient / self`, with the projection from the ambient module.
    pub fn quotient(&self) -> Result<(Presentation, ModuleMap)> {
        let ring = self.ambient.ring();
        let g = self.ambient.gens();
        let rels = self.ambient.rels().hcat(&self.generators);
        let p = Presentation::new_unchecked(ring, g, rels);
        let pruned = prune(&p);
        Ok((
            pruned.module.clone(),
            ModuleMap::new_unchecked(self.ambient.clone(), pruned.module, pruned.to_new),
        ))
    }
}

/// Equality of two submodules of the same ambient presentation.
pub fn submodule_equal(s1: &Submodule, s2: &Submodule) -> Result<bool> {
    if s1.ambient != s2.ambient {
        return Err(Error::AmbientMismatch);
    }
    Ok(s1.contains_all(&s2.generators) && s2.contains_all(&s1.generators))
}
