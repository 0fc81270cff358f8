use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, IntegerSolver, Matrix};
use crate::module::{check_rings, Presentation, Submodule};

/// A homomorphism `source → target`, given by the images of the source
/// generators as the columns of `matrix` (`target.gens × source.gens`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: Presentation,
    target: Presentation,
    matrix: Matrix,
}

impl ModuleMap {
    /// Certifies that every relation of the source is sent into the relation
    /// span of the target.
    pub fn new(source: Presentation, target: Presentation, matrix: Matrix) -> Result<Self> {
        check_rings(source.ring(), target.ring())?;
        if matrix.rows() != target.gens() {
            return Err(Error::DimensionMismatch {
                expected: target.gens(),
                found: matrix.rows(),
            });
        }
        if matrix.cols() != source.gens() {
            return Err(Error::DimensionMismatch {
                expected: source.gens(),
                found: matrix.cols(),
            });
        }
        let images = matrix.mul(source.rels());
        let solver = IntegerSolver::new(&target.lifted_rels());
        for c in images.columns() {
            if !solver.contains(&c) {
                return Err(Error::NotWellDefined);
            }
        }
        Ok(Self::new_unchecked(source, target, matrix))
    }

    pub(crate) fn new_unchecked(
        source: Presentation,
        target: Presentation,
        matrix: Matrix,
    ) -> Self {
        let matrix = matrix.reduced(source.ring());
        ModuleMap {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(m: &Presentation) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.gens()))
    }

    pub fn zero(source: &Presentation, target: &Presentation) -> Self {
        Self::new_unchecked(
            source.clone(),
            target.clone(),
            Matrix::zeros(target.gens(), source.gens()),
        )
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.target != other.source {
            return Err(Error::AmbientMismatch);
        }
        Ok(Self::new_unchecked(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        ))
    }

    pub fn image(&self) -> Submodule {
        Submodule::new_unchecked(self.target.clone(), self.matrix.clone())
    }

    /// `target / image`, with the projection from the target.
    pub fn cokernel(&self) -> Result<(Presentation, ModuleMap)> {
        self.image().quotient()
    }

    pub fn is_zero(&self) -> bool {
        self.image().is_zero()
    }

    pub fn is_injective(&self) -> bool {
        kernel_of_map(self).0.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_everything()
    }

    /// Coordinates `C` with `self·C = targets` in the target module, when every
    /// column of `targets` lies in the image.
    pub fn preimages(&self, targets: &Matrix) -> Option<Matrix> {
        let k = self.matrix.cols();
        let solver = IntegerSolver::new(&self.matrix.hcat(&self.target.lifted_rels()));
        let mut cols = Vec::with_capacity(targets.cols());
        for c in targets.columns() {
            let y = solver.solve(&c)?;
            cols.push(y[..k].to_vec());
        }
        let m = Matrix::from_columns(k, &cols);
        Some(m.reduced(self.source.ring()))
    }

    /// The map `source' → target'` induced through inclusions
    /// `source' ↪ source` and `target' ↪ target`, when `self` maps the one
    /// into the other.
    pub fn restrict(&self, source_inc: &ModuleMap, target_inc: &ModuleMap) -> Result<ModuleMap> {
        let images = self.matrix.mul(source_inc.matrix());
        let m = target_inc.preimages(&images).ok_or(Error::NotWellDefined)?;
        Ok(Self::new_unchecked(
            source_inc.source.clone(),
            target_inc.source.clone(),
            m,
        ))
    }

    /// The map `coker' → coker''` induced on quotients with projections
    /// `source ↠ source_q` and `target ↠ target_q`.
    pub fn descend(&self, source_proj: &ModuleMap, target_proj: &ModuleMap) -> Result<ModuleMap> {
        // Lift each quotient generator back to the source, map, and project.
        let back = source_proj
            .preimages(&Matrix::identity(source_proj.target.gens()))
            .ok_or(Error::NotWellDefined)?;
        let m = target_proj.matrix.mul(&self.matrix.mul(&back));
        ModuleMap::new(source_proj.target.clone(), target_proj.target.clone(), m)
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.matrix.mul_vec(x);
        y.iter().map(|v| self.source.ring().reduce(v)).collect()
    }
}

/// `{x ∈ source : f(x) = 0}` as a submodule of the source.
pub fn kernel_submodule(f: &ModuleMap) -> Submodule {
    let gx = f.source.gens();
    let stacked = f.matrix.hcat(&f.target.lifted_rels());
    let g = integer_kernel(&stacked).top_rows(gx);
    Submodule::new_unchecked(f.source.clone(), g)
}

/// `{x ∈ source : f(x) = 0}`, presented, with its inclusion into the source.
pub fn kernel_of_map(f: &ModuleMap) -> (Presentation, ModuleMap) {
    kernel_submodule(f)
        .presentation()
        .expect("kernel generators live in the source")
}

/// `ker g / im f` for composable `f: X → Y`, `g: Y → Z` with `g∘f = 0`.
pub fn homology(f: &ModuleMap, g: &ModuleMap) -> Result<Presentation> {
    if f.target != g.source {
        return Err(Error::AmbientMismatch);
    }
    let (k, inc) = kernel_of_map(g);
    let coords = inc.preimages(&f.matrix).ok_or(Error::NotWellDefined)?;
    let rels = k.rels().hcat(&coords);
    Ok(Presentation::new_unchecked(k.ring(), k.gens(), rels).pruned())
}
