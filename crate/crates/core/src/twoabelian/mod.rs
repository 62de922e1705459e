//! The 2-abelian structure on arrows with free target: 2-kernels,
//! 2-cokernels, suspension, loops, pips, copips, (co)faithfulness and the
//! discrete objects.

mod limits;

use serde::Serialize;

use crate::arrow2::{ArrowMorphism, ArrowObject, Homotopy};
use crate::fgmod::{FgModule, ModuleMorphism};
use crate::matrix::Matrix;
use crate::{Error, Result};

pub use limits::{two_cokernel, two_kernel, TwoCokernelData, TwoKernelData};

pub fn in_c(a: &ArrowObject) -> bool {
    a.in_c()
}

pub(crate) fn require_c(a: &ArrowObject, which: &str) -> Result<()> {
    if a.in_c() {
        Ok(())
    } else {
        Err(Error::NotInC(format!("{which} arrow has a target with relations")))
    }
}

fn require_morphism_c(f: &ArrowMorphism) -> Result<()> {
    require_c(f.source(), "source")?;
    require_c(f.target(), "target")
}

/// `Coker a → 0`.
pub fn sigma(a: &ArrowObject) -> Result<ArrowObject> {
    require_c(a, "input")?;
    Ok(ArrowObject::to_zero(&a.a().cokernel().module))
}

/// The 2-kernel of `0 → a`: a free cover of `Ker a` and its kernel.
pub fn omega(a: &ArrowObject) -> Result<ArrowObject> {
    require_c(a, "input")?;
    let zero = ArrowObject::zero_object(a.ring());
    Ok(two_kernel(&ArrowMorphism::zero(&zero, a))?.ker)
}

/// `K ↪ R^g` for the canonical cover `R^g → M`; discrete and in the free-target
/// subcategory, with cokernel `M`.
pub fn base_to_dis(m: &FgModule) -> ArrowObject {
    let ring = m.ring();
    let g = m.generators();
    let cover = ModuleMorphism::new(FgModule::free(ring, g), m.clone(), Matrix::identity(ring, g)).unwrap();
    ArrowObject::new(cover.kernel().inclusion)
}

/// `Coker a` for a discrete `a`.
pub fn dis_to_base(a: &ArrowObject) -> Result<FgModule> {
    if !a.a().is_mono() {
        return Err(Error::NotDiscrete);
    }
    Ok(a.a().cokernel().module)
}

/// Morphism `a → base_to_dis(dis_to_base(a))` lifting the cokernel projection.
pub fn discrete_witness(a: &ArrowObject) -> Result<ArrowMorphism> {
    require_c(a, "input")?;
    let m = dis_to_base(a)?;
    let target = base_to_dis(&m);
    let proj = a.a().cokernel().projection;
    let f0 = ModuleMorphism::new(a.a0().clone(), target.a0().clone(), proj.matrix().clone())?;
    let ring = a.ring();
    let cover = ModuleMorphism::new(target.a0().clone(), m.clone(), Matrix::identity(ring, m.generators()))?;
    let f1 = cover.kernel().factor(&f0.compose(a.a())?)?;
    ArrowMorphism::new(a.clone(), target, f0, f1)
}

/// Isomorphism `Coker(base_to_dis(M)) → M` induced by the cover.
pub fn base_witness(m: &FgModule) -> Result<ModuleMorphism> {
    let d = base_to_dis(m);
    let ring = m.ring();
    let cover = ModuleMorphism::new(d.a0().clone(), m.clone(), Matrix::identity(ring, m.generators()))?;
    d.a().cokernel().factor(&cover)
}

/// `R1 ↪ R0` presenting `Ker k'`, with `π: R0 → A1` as a self-homotopy of
/// the zero morphism `r → a`.
#[derive(Clone, Debug, Serialize)]
pub struct PipData {
    pub pip: ArrowObject,
    pub pi: Homotopy,
    /// `Ker k' = Ker(-a; f1)`.
    pub kernel: FgModule,
    pub kernel_inclusion: ModuleMorphism,
}

pub fn pip(f: &ArrowMorphism) -> Result<PipData> {
    require_morphism_c(f)?;
    let a = f.source();
    let stacked = a.a().neg().vjoin(f.f1())?;
    let kk = stacked.kernel();
    let r = base_to_dis(&kk.module);
    let ring = a.ring();
    let cover = Matrix::identity(ring, kk.module.generators());
    let pi_map = ModuleMorphism::new(r.a0().clone(), a.a1().clone(), kk.inclusion.matrix().mul(&cover))?;
    let zero = ArrowMorphism::zero(&r, a);
    let pi = Homotopy::new(zero.clone(), zero, pi_map)?;
    Ok(PipData { pip: r, pi, kernel: kk.module.clone(), kernel_inclusion: kk.inclusion.clone() })
}

/// `M → 0` with `M = Coker((f0, b): A0 ⊕ B1 → B0)`.
pub fn copip(f: &ArrowMorphism) -> Result<ArrowObject> {
    require_morphism_c(f)?;
    let combined = f.f0().hjoin(f.target().a())?;
    Ok(ArrowObject::to_zero(&combined.cokernel().module))
}

#[derive(Clone, Debug, Serialize)]
pub struct Flag {
    pub value: bool,
    pub witness: String,
}

/// The (co)faithfulness flags of a morphism and the discreteness of its source.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationFlags {
    pub faithful: Flag,
    pub fully_faithful: Flag,
    pub cofaithful: Flag,
    pub fully_cofaithful: Flag,
    pub discrete_source: Flag,
    pub codiscrete_source: Flag,
    /// Induced map on kernels.
    pub g: ModuleMorphism,
    /// Induced map on cokernels.
    pub h: ModuleMorphism,
}

impl ClassificationFlags {
    pub fn all(&self) -> bool {
        self.faithful.value && self.fully_faithful.value && self.cofaithful.value && self.fully_cofaithful.value
    }
}

fn flag(value: bool, witness: String) -> Flag {
    Flag { value, witness }
}

pub fn classify(f: &ArrowMorphism) -> Result<ClassificationFlags> {
    require_morphism_c(f)?;
    let a = f.source();
    let stacked = a.a().neg().vjoin(f.f1())?;
    let stacked_kernel = stacked.kernel().module;
    let combined = f.f0().hjoin(f.target().a())?;
    let combined_cokernel = combined.cokernel().module;
    let g = f.on_kernels()?;
    let h = f.on_cokernels()?;
    let gf = g.classify();
    let hf = h.classify();
    let fmt = |x: crate::fgmod::MorphismFlags| format!("mono={} epi={}", x.mono, x.epi);
    Ok(ClassificationFlags {
        faithful: flag(stacked_kernel.is_zero(), format!("Ker(-a; f1) = {}", stacked_kernel.describe())),
        fully_faithful: flag(gf.iso && hf.mono, format!("g: {}; h: {}", fmt(gf), fmt(hf))),
        cofaithful: flag(combined_cokernel.is_zero(), format!("Coker(f0, b) = {}", combined_cokernel.describe())),
        fully_cofaithful: flag(hf.iso && gf.epi, format!("h: {}; g: {}", fmt(hf), fmt(gf))),
        discrete_source: flag(a.a().is_mono(), format!("Ker a = {}", a.a().kernel().module.describe())),
        codiscrete_source: flag(a.a().is_epi(), format!("Coker a = {}", a.a().cokernel().module.describe())),
        g,
        h,
    })
}

/// Whether `f` induces isomorphisms on kernels and cokernels.
pub fn check_equivalence_witness(f: &ArrowMorphism) -> Result<bool> {
    require_morphism_c(f)?;
    Ok(f.on_kernels()?.classify().iso && f.on_cokernels()?.classify().iso)
}

/// `Σ(pip f)` against `Ker k' → 0`.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaPipReport {
    pub sigma_pip: ArrowObject,
    pub expected: ArrowObject,
    /// `Coker r → Ker k'` induced by the cover.
    pub witness: ModuleMorphism,
    pub passed: bool,
}

pub fn sigma_pip_identity(f: &ArrowMorphism) -> Result<SigmaPipReport> {
    let p = pip(f)?;
    let sigma_pip = sigma(&p.pip)?;
    let expected = ArrowObject::to_zero(&p.kernel);
    let ring = f.source().ring();
    let cover = ModuleMorphism::new(p.pip.a0().clone(), p.kernel.clone(), Matrix::identity(ring, p.kernel.generators()))?;
    let coker = p.pip.a().cokernel();
    let witness = coker.factor(&cover)?;
    let passed = witness.classify().iso
        && sigma_pip.a1().is_isomorphic(expected.a1())
        && sigma_pip.a0().is_zero()
        && expected.a0().is_zero();
    Ok(SigmaPipReport { sigma_pip, expected, witness, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    const Z: Ring = Ring::Integers;
    const Z4: Ring = Ring::IntegersMod { m: 4 };

    fn times2(ring: Ring) -> ArrowObject {
        let r = FgModule::free(ring, 1);
        ArrowObject::from_matrix(r.clone(), r, Matrix::from_rows(ring, &[vec![2]])).unwrap()
    }

    #[test]
    fn membership() {
        assert!(in_c(&ArrowObject::zero_object(Z)));
        assert!(!in_c(&ArrowObject::from_zero(&FgModule::cyclic(Z, 2))));
        assert!(in_c(&times2(Z)));
    }

    #[test]
    fn sigma_examples() {
        let s = sigma(&times2(Z)).unwrap();
        assert!(s.a1().is_isomorphic(&FgModule::cyclic(Z, 2)) && s.a0().is_zero());
        let z = FgModule::free(Z, 1);
        assert!(sigma(&ArrowObject::to_zero(&z)).unwrap().is_zero());
        let s = sigma(&ArrowObject::from_zero(&z)).unwrap();
        assert!(s.a1().is_isomorphic(&z));
    }

    #[test]
    fn omega_examples() {
        let z = FgModule::free(Z, 1);
        assert!(omega(&ArrowObject::from_zero(&z)).unwrap().is_zero());
        let o = omega(&ArrowObject::to_zero(&z)).unwrap();
        assert!(o.a1().is_zero() && o.a0().is_isomorphic(&z));
        let o = omega(&times2(Z4)).unwrap();
        assert!(o.a().is_mono());
        assert!(o.a1().is_isomorphic(&FgModule::cyclic(Z4, 2)));
        assert!(o.a0().is_isomorphic(&FgModule::free(Z4, 1)));
    }

    #[test]
    fn two_kernel_of_zero_on_times_two() {
        let m2 = times2(Z4);
        let k = two_kernel(&ArrowMorphism::zero(&m2, &m2)).unwrap();
        let expected = FgModule::free(Z4, 1).direct_sum(&FgModule::cyclic(Z4, 2)).unwrap();
        assert!(k.pullback.is_isomorphic(&expected));
        assert!(k.compare_ok);
        assert!(k.ker.in_c());
    }

    #[test]
    fn two_kernel_to_zero_object() {
        let a = times2(Z);
        let k = two_kernel(&ArrowMorphism::zero(&a, &ArrowObject::zero_object(Z))).unwrap();
        assert!(check_equivalence_witness(&k.counit).unwrap());
    }

    #[test]
    fn identity_limits_are_trivial() {
        for a in [times2(Z), times2(Z4)] {
            let id = ArrowMorphism::identity(&a);
            let k = two_kernel(&id).unwrap();
            assert!(k.ker.a().kernel().module.is_zero() && k.ker.a().cokernel().module.is_zero());
            let c = two_cokernel(&id).unwrap();
            assert!(c.coker.a().kernel().module.is_zero() && c.coker.a().cokernel().module.is_zero());
        }
    }

    #[test]
    fn two_cokernel_examples() {
        let r = FgModule::free(Z, 1);
        let a = times2(Z);
        let target = ArrowObject::from_zero(&r);
        let c = two_cokernel(&ArrowMorphism::zero(&a, &target)).unwrap();
        assert!(c.coker.a1().is_isomorphic(&FgModule::cyclic(Z, 2)));
        assert!(c.coker.a().is_zero());
        assert!(c.in_c);
        // into the zero object: Σ(a)
        let c = two_cokernel(&ArrowMorphism::zero(&a, &ArrowObject::zero_object(Z))).unwrap();
        let s = sigma(&a).unwrap();
        assert!(c.coker.a1().is_isomorphic(s.a1()) && c.coker.a0().is_zero());
    }

    #[test]
    fn pip_and_copip() {
        let m2 = times2(Z4);
        let id = ArrowMorphism::identity(&m2);
        assert!(pip(&id).unwrap().pip.is_zero());
        assert!(copip(&id).unwrap().is_zero());
        let p = pip(&ArrowMorphism::zero(&m2, &m2)).unwrap();
        assert!(p.pip.a().is_mono());
        assert!(p.pip.a1().is_isomorphic(&FgModule::cyclic(Z4, 2)));
        assert!(p.pip.a0().is_isomorphic(&FgModule::free(Z4, 1)));
        let d0 = ArrowObject::from_zero(&FgModule::free(Z, 1));
        let c = copip(&ArrowMorphism::zero(&d0, &d0)).unwrap();
        assert!(c.a1().is_isomorphic(&FgModule::free(Z, 1)) && c.a0().is_zero());
    }

    #[test]
    fn classify_examples() {
        let m2 = times2(Z4);
        let fl = classify(&ArrowMorphism::identity(&m2)).unwrap();
        assert!(fl.all());
        let fl = classify(&ArrowMorphism::zero(&m2, &m2)).unwrap();
        assert!(!fl.faithful.value);
        assert!(!fl.cofaithful.value);
    }

    #[test]
    fn discrete_round_trips() {
        let d = base_to_dis(&FgModule::cyclic(Z, 2));
        assert!(d.a().is_mono());
        assert!(d.a1().is_isomorphic(&FgModule::free(Z, 1)));
        assert!(dis_to_base(&d).unwrap().is_isomorphic(&FgModule::cyclic(Z, 2)));
        let m = FgModule::cyclic(Z, 6);
        assert!(dis_to_base(&base_to_dis(&m)).unwrap().is_isomorphic(&m));
        assert!(base_witness(&m).unwrap().classify().iso);
        let zero = base_to_dis(&FgModule::zero(Z));
        assert!(dis_to_base(&zero).unwrap().is_zero());
        let w = discrete_witness(&times2(Z)).unwrap();
        assert!(check_equivalence_witness(&w).unwrap());
        assert!(matches!(dis_to_base(&times2(Z4)), Err(Error::NotDiscrete)));
    }

    #[test]
    fn sigma_pip() {
        let m2 = times2(Z4);
        assert!(sigma_pip_identity(&ArrowMorphism::identity(&m2)).unwrap().sigma_pip.is_zero());
        let r = sigma_pip_identity(&ArrowMorphism::zero(&m2, &m2)).unwrap();
        assert!(r.passed);
        assert!(r.sigma_pip.a1().is_isomorphic(&FgModule::cyclic(Z4, 2)));
    }
}
