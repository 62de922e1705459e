use serde::Serialize;

use super::{ArrowMorphism, ArrowObject};
use crate::fgmod::{pullback, FgModule, ModuleMorphism, Pullback};
use crate::matrix::Matrix;
use crate::{Error, Result};

/// `p: P1 → P0` with `P0` free and a comparison `p → x` inducing
/// isomorphisms on kernels and cokernels.
#[derive(Clone, Debug, Serialize)]
pub struct Replacement {
    pub arrow: ArrowObject,
    pub compare: ArrowMorphism,
    #[serde(skip)]
    square: Pullback,
}

/// Pulls `x` back along the presentation epi `R^g → X0`.
pub fn replacement(x: &ArrowObject) -> Result<Replacement> {
    let ring = x.ring();
    let g = x.a0().generators();
    let p0 = FgModule::free(ring, g);
    let eps = ModuleMorphism::new(p0.clone(), x.a0().clone(), Matrix::identity(ring, g))?;
    let square = pullback(&eps, x.a())?;
    let arrow = ArrowObject::new(square.p_a.clone());
    let compare = ArrowMorphism::new(arrow.clone(), x.clone(), eps, square.p_b.clone())?;
    Ok(Replacement { arrow, compare, square })
}

impl Replacement {
    /// Whether the comparison induces isomorphisms on `Ker` and `Coker`.
    pub fn verify(&self) -> Result<bool> {
        Ok(self.compare.on_kernels()?.classify().iso && self.compare.on_cokernels()?.classify().iso)
    }
}

/// For `f: a → x` with `A0` free, the `g: a → p` with `compare ∘ g = f`.
pub fn lift_through_replacement(f: &ArrowMorphism, rep: &Replacement) -> Result<ArrowMorphism> {
    let a = f.source();
    if !a.in_c() {
        return Err(Error::NotInC("the source arrow must have a free target".into()));
    }
    if f.target() != rep.compare.target() {
        return Err(Error::Shape("morphism does not land in the replaced arrow".into()));
    }
    let p = &rep.arrow;
    let g0 = ModuleMorphism::new(a.a0().clone(), p.a0().clone(), f.f0().matrix().clone())?;
    let g1 = rep.square.factor(&g0.compose(a.a())?, f.f1())?;
    ArrowMorphism::new(a.clone(), p.clone(), g0, g1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow2::find_homotopy;
    use crate::ring::Ring;

    const Z: Ring = Ring::Integers;

    #[test]
    fn free_target_is_unchanged_up_to_iso() {
        let r = FgModule::free(Z, 1);
        let x = ArrowObject::from_matrix(r.clone(), r, Matrix::from_rows(Z, &[vec![3]])).unwrap();
        let rep = replacement(&x).unwrap();
        assert!(rep.verify().unwrap());
        assert!(rep.compare.f1().classify().iso);
        assert_eq!(rep.compare.f0().matrix(), &Matrix::identity(Z, 1));
    }

    #[test]
    fn zero_into_z2() {
        let x = ArrowObject::from_zero(&FgModule::cyclic(Z, 2));
        let rep = replacement(&x).unwrap();
        assert!(rep.verify().unwrap());
        assert!(rep.arrow.a1().is_isomorphic(&FgModule::free(Z, 1)));
        assert!(rep.arrow.a().cokernel().module.is_isomorphic(&FgModule::cyclic(Z, 2)));
        assert!(rep.arrow.a().is_mono());
    }

    #[test]
    fn zero_object() {
        let rep = replacement(&ArrowObject::zero_object(Z)).unwrap();
        assert!(rep.arrow.is_zero());
    }

    #[test]
    fn lift_projection() {
        let r = FgModule::free(Z, 1);
        let a = ArrowObject::from_matrix(r.clone(), r.clone(), Matrix::from_rows(Z, &[vec![2]])).unwrap();
        let x = ArrowObject::from_zero(&FgModule::cyclic(Z, 2));
        let f = ArrowMorphism::from_matrices(&a, &x, Matrix::from_rows(Z, &[vec![1]]), Matrix::zeros(Z, 0, 1)).unwrap();
        let rep = replacement(&x).unwrap();
        let g = lift_through_replacement(&f, &rep).unwrap();
        assert!(rep.compare.compose(&g).unwrap().equals(&f));
        assert!(g.on_kernels().unwrap().classify().iso && g.on_cokernels().unwrap().classify().iso);
        let zero = lift_through_replacement(&ArrowMorphism::zero(&a, &x), &rep).unwrap();
        assert!(find_homotopy(&zero, &ArrowMorphism::zero(&a, &rep.arrow)).unwrap().is_some());
    }
}
