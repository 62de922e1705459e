use num_bigint::BigInt;
use serde::Serialize;

use super::hom::{hom_invariants, HomInvariants};
use super::{ArrowMorphism, ArrowObject};
use crate::fgmod::{FgModule, ModuleMorphism};
use crate::homalg::{ext, hom_e, HomE};
use crate::matrix::Matrix;
use crate::snf::smith_normal_form;
use crate::{Error, Result};

/// `0 → Ext^1(Coker a, Ker b) → π0 Hom(a, b) → Hom(Ch a, Ch b) → 0` with
/// the exactness checks.
#[derive(Clone, Debug, Serialize)]
pub struct CnobiliReport {
    pub ext1: FgModule,
    pub pi0: FgModule,
    pub hom_e: FgModule,
    pub left: Matrix,
    pub right: Matrix,
    pub left_mono: bool,
    pub middle_exact: bool,
    pub right_epi: bool,
    #[serde(skip)]
    pub invariants: HomInvariants,
    #[serde(skip)]
    pub hom_e_group: HomE,
}

impl CnobiliReport {
    pub fn passed(&self) -> bool {
        self.left_mono && self.middle_exact && self.right_epi
    }
}

fn unit(ring: crate::Ring, n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); n];
    v[i] = ring.from_i64(1);
    v
}

/// Builds and checks the exact sequence; requires `A0` free.
pub fn cnobili_sequence(a: &ArrowObject, b: &ArrowObject) -> Result<CnobiliReport> {
    if !a.in_c() {
        return Err(Error::NotInC("the source arrow must have a free target".into()));
    }
    let ring = a.ring();
    let inv = hom_invariants(a, b)?;
    let ca = a.a().cokernel();
    let kb = b.a().kernel();
    let e1 = ext(1, &ca.module, &kb.module)?;
    let res = &e1.resolution;

    // K0: A0 → F0 with aug ∘ K0 = π_a
    let sys = res.augmentation.matrix().hstack(ca.module.relations());
    let k0 = smith_normal_form(&sys)
        .solve(ca.projection.matrix())
        .ok_or_else(|| Error::Invalid("internal: cannot lift the projection".into()))?
        .row_range(0, res.ranks[0]);
    // y_j with d1 y_j = K0 a e_j
    let ys = smith_normal_form(res.differential(1))
        .solve(&k0.mul(a.a().matrix()))
        .ok_or_else(|| Error::Invalid("internal: K0 a does not land in the syzygies".into()))?;

    let mut cols = Vec::new();
    for x in e1.generators() {
        let phi = e1.representative(&x);
        let f1 = ModuleMorphism::new(a.a1().clone(), b.a1().clone(), kb.inclusion.matrix().mul(&phi).mul(&ys))?;
        let f = ArrowMorphism::new(a.clone(), b.clone(), ModuleMorphism::zero(a.a0(), b.a0()), f1)?;
        cols.push(inv.pi0_class(&f)?);
    }
    let left = ModuleMorphism::new(
        e1.module.clone(),
        inv.pi0.module.clone(),
        Matrix::from_columns(ring, inv.pi0.module.generators(), &cols),
    )?;

    let cha = a.ch()?;
    let chb = b.ch()?;
    let he = hom_e(&cha, &chb)?;
    let mut cols = Vec::new();
    for f in inv.mor_basis() {
        cols.push(he.coordinates(&f.on_cokernels()?, &f.on_kernels()?)?);
    }
    let on_mor = ModuleMorphism::new(
        inv.mor.module.clone(),
        he.module.clone(),
        Matrix::from_columns(ring, he.module.generators(), &cols),
    )?;
    let right = inv.pi0.factor(&on_mor)?;

    let left_mono = left.is_mono();
    let right_epi = right.is_epi();
    let composite_zero = right.compose(&left)?.is_zero();
    let kr = right.kernel();
    let n = kr.module.generators();
    let covered = (0..n).all(|i| left.preimage(&kr.inclusion.apply(&unit(ring, n, i))).is_some());
    Ok(CnobiliReport {
        ext1: e1.module.clone(),
        pi0: inv.pi0.module.clone(),
        hom_e: he.module.clone(),
        left: left.matrix().clone(),
        right: right.matrix().clone(),
        left_mono,
        middle_exact: composite_zero && covered,
        right_epi,
        invariants: inv,
        hom_e_group: he,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn times2(ring: Ring) -> ArrowObject {
        let r = FgModule::free(ring, 1);
        ArrowObject::from_matrix(r.clone(), r, Matrix::from_rows(ring, &[vec![2]])).unwrap()
    }

    #[test]
    fn times_two_over_integers() {
        let z = Ring::Integers;
        let a = times2(z);
        let r = cnobili_sequence(&a, &a).unwrap();
        assert!(r.passed());
        assert!(r.ext1.is_zero());
        assert!(r.pi0.is_isomorphic(&FgModule::cyclic(z, 2)));
        assert!(r.hom_e.is_isomorphic(&FgModule::cyclic(z, 2)));
    }

    #[test]
    fn zero_target() {
        let z = Ring::Integers;
        let r = cnobili_sequence(&times2(z), &ArrowObject::zero_object(z)).unwrap();
        assert!(r.passed());
        assert!(r.ext1.is_zero() && r.pi0.is_zero() && r.hom_e.is_zero());
    }

    #[test]
    fn times_two_mod_four() {
        let z4 = Ring::IntegersMod { m: 4 };
        let a = times2(z4);
        let r = cnobili_sequence(&a, &a).unwrap();
        assert!(r.passed());
        let order = |m: &FgModule| m.order().unwrap();
        assert_eq!(order(&r.pi0), order(&r.ext1) * order(&r.hom_e));
    }

    #[test]
    fn requires_free_target() {
        let z = Ring::Integers;
        let x = ArrowObject::from_zero(&FgModule::cyclic(z, 2));
        assert!(matches!(cnobili_sequence(&x, &x), Err(Error::NotInC(_))));
    }
}
