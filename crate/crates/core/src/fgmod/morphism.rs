use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Cokernel, FgModule, Kernel};
use crate::matrix::Matrix;
use crate::snf::smith_normal_form;
use crate::{Error, Result};

/// A module map given by its matrix on generators, shape `target.generators x source.generators`.
#[derive(Clone)]
pub struct ModuleMorphism {
    source: FgModule,
    target: FgModule,
    matrix: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFlags {
    pub mono: bool,
    pub epi: bool,
    pub iso: bool,
}

impl PartialEq for ModuleMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.matrix == other.matrix
    }
}

impl fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMorphism({} -> {}, {:?})", self.source.describe(), self.target.describe(), self.matrix)
    }
}

impl ModuleMorphism {
    /// Checked constructor: the matrix must send every relation of the source
    /// into the relation span of the target.
    pub fn new(source: FgModule, target: FgModule, matrix: Matrix) -> Result<ModuleMorphism> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch(source.ring(), target.ring()));
        }
        if matrix.ring() != source.ring() {
            return Err(Error::RingMismatch(source.ring(), matrix.ring()));
        }
        if matrix.shape() != (target.generators(), source.generators()) {
            return Err(Error::Shape(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generators(),
                source.generators()
            )));
        }
        let image = matrix.mul(source.relations());
        for (j, col) in image.columns().iter().enumerate() {
            if !target.is_zero_element(col) {
                return Err(Error::IllDefined(format!("relation {j} of the source is not sent to zero")));
            }
        }
        Ok(ModuleMorphism { source, target, matrix })
    }

    /// For matrices that are well defined by construction.
    pub(crate) fn new_unchecked(source: FgModule, target: FgModule, matrix: Matrix) -> ModuleMorphism {
        debug_assert_eq!(matrix.shape(), (target.generators(), source.generators()));
        debug_assert!(ModuleMorphism::new(source.clone(), target.clone(), matrix.clone()).is_ok());
        ModuleMorphism { source, target, matrix }
    }

    pub fn identity(m: &FgModule) -> ModuleMorphism {
        ModuleMorphism::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.ring(), m.generators()))
    }

    pub fn zero(source: &FgModule, target: &FgModule) -> ModuleMorphism {
        let mx = Matrix::zeros(source.ring(), target.generators(), source.generators());
        ModuleMorphism::new_unchecked(source.clone(), target.clone(), mx)
    }

    pub fn source(&self) -> &FgModule {
        &self.source
    }

    pub fn target(&self) -> &FgModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMorphism) -> Result<ModuleMorphism> {
        if inner.target != self.source {
            return Err(Error::Shape("composition: codomain and domain differ".into()));
        }
        Ok(ModuleMorphism::new_unchecked(inner.source.clone(), self.target.clone(), self.matrix.mul(&inner.matrix)))
    }

    fn check_parallel(&self, other: &ModuleMorphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("morphisms are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        self.check_parallel(other)?;
        Ok(ModuleMorphism::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix)))
    }

    pub fn sub(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        self.check_parallel(other)?;
        Ok(ModuleMorphism::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix)))
    }

    pub fn neg(&self) -> ModuleMorphism {
        ModuleMorphism::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    pub fn scale(&self, c: &BigInt) -> ModuleMorphism {
        ModuleMorphism::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    /// Zero as a map, i.e. every column lies in the relation span of the target.
    pub fn is_zero(&self) -> bool {
        self.matrix.columns().iter().all(|c| self.target.is_zero_element(c))
    }

    /// Equality as maps (matrices may differ by relations of the target).
    pub fn equals(&self, other: &ModuleMorphism) -> bool {
        self.source == other.source && self.target == other.target && self.sub(other).is_ok_and(|d| d.is_zero())
    }

    /// Some `x` with `self(x) = y` in the target, if `y` is in the image.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let stacked = self.matrix.hstack(self.target.relations());
        let x = smith_normal_form(&stacked).solve_vec(y)?;
        Some(x[..self.source.generators()].to_vec())
    }

    /// `(self, other)`: `self.source ⊕ other.source → target`.
    pub fn hjoin(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        if self.target != other.target {
            return Err(Error::Shape("row join needs a common target".into()));
        }
        let src = self.source.direct_sum(&other.source)?;
        Ok(ModuleMorphism::new_unchecked(src, self.target.clone(), self.matrix.hstack(&other.matrix)))
    }

    /// `(self; other)`: `source → self.target ⊕ other.target`.
    pub fn vjoin(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        if self.source != other.source {
            return Err(Error::Shape("column join needs a common source".into()));
        }
        let tgt = self.target.direct_sum(&other.target)?;
        Ok(ModuleMorphism::new_unchecked(self.source.clone(), tgt, self.matrix.vstack(&other.matrix)))
    }

    /// `self ⊕ other` between direct sums.
    pub fn direct_sum(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        let src = self.source.direct_sum(&other.source)?;
        let tgt = self.target.direct_sum(&other.target)?;
        Ok(ModuleMorphism::new_unchecked(src, tgt, self.matrix.block_diag(&other.matrix)))
    }

    pub fn kernel(&self) -> Kernel {
        Kernel::of(self)
    }

    pub fn cokernel(&self) -> Cokernel {
        Cokernel::of(self)
    }

    pub fn is_mono(&self) -> bool {
        self.kernel().module.is_zero()
    }

    pub fn is_epi(&self) -> bool {
        self.cokernel().module.is_zero()
    }

    pub fn classify(&self) -> MorphismFlags {
        let mono = self.is_mono();
        let epi = self.is_epi();
        MorphismFlags { mono, epi, iso: mono && epi }
    }

    /// Two-sided inverse, when `self` is an isomorphism.
    pub fn inverse(&self) -> Option<ModuleMorphism> {
        if !self.classify().iso {
            return None;
        }
        let ring = self.source.ring();
        let stacked = self.matrix.hstack(self.target.relations());
        let id = Matrix::identity(ring, self.target.generators());
        let x = smith_normal_form(&stacked).solve(&id)?;
        let inv = x.row_range(0, self.source.generators());
        let g = ModuleMorphism::new(self.target.clone(), self.source.clone(), inv).ok()?;
        debug_assert!(g.compose(self).unwrap().equals(&ModuleMorphism::identity(&self.source)));
        Some(g)
    }
}

#[derive(Serialize, Deserialize)]
struct MorphismRepr {
    source: FgModule,
    target: FgModule,
    matrix: Matrix,
}

impl Serialize for ModuleMorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MorphismRepr { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.clone() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModuleMorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MorphismRepr::deserialize(d)?;
        ModuleMorphism::new(r.source, r.target, r.matrix).map_err(serde::de::Error::custom)
    }
}
