use serde::Serialize;

use super::require_c;
use crate::arrow2::{replacement, ArrowMorphism, ArrowObject, Homotopy, Replacement};
use crate::fgmod::{pullback, pushout, FgModule, ModuleMorphism};
use crate::Result;

/// `(q': Q → B0, (id, q), ξ)` with `Q` the pushout of `f1` and `a`.
#[derive(Clone, Debug, Serialize)]
pub struct TwoCokernelData {
    pub coker: ArrowObject,
    pub unit: ArrowMorphism,
    pub xi: ModuleMorphism,
    /// `ξ` as a 2-cell `unit ∘ f ⇒ 0`.
    pub cell: Homotopy,
    pub in_c: bool,
}

pub fn two_cokernel(f: &ArrowMorphism) -> Result<TwoCokernelData> {
    let a = f.source();
    let b = f.target();
    require_c(a, "source")?;
    require_c(b, "target")?;
    let po = pushout(f.f1(), a.a())?;
    let q = po.i_a.clone();
    let xi = po.i_b.clone();
    let q_prime = po.factor(b.a(), f.f0())?;
    let coker = ArrowObject::new(q_prime);
    let unit = ArrowMorphism::new(b.clone(), coker.clone(), ModuleMorphism::identity(b.a0()), q)?;
    let composite = unit.compose(f)?;
    let cell = Homotopy::new(composite, ArrowMorphism::zero(a, &coker), xi.clone())?;
    let in_c = coker.in_c();
    Ok(TwoCokernelData { coker, unit, xi, cell, in_c })
}

/// `(c: C1 → C0, (kε, ε'), κε)`: the pullback `K` of `f0` and `b`, then the
/// replacement of `k': A1 → K`.
#[derive(Clone, Debug, Serialize)]
pub struct TwoKernelData {
    pub ker: ArrowObject,
    pub counit: ArrowMorphism,
    pub kappa_eps: ModuleMorphism,
    /// `κε` as a 2-cell `f ∘ counit ⇒ 0`.
    pub cell: Homotopy,
    pub pullback: FgModule,
    pub k_prime: ArrowObject,
    pub replacement: Replacement,
    /// The comparison `c → k'` induces isomorphisms on kernels and cokernels.
    pub compare_ok: bool,
}

pub fn two_kernel(f: &ArrowMorphism) -> Result<TwoKernelData> {
    let a = f.source();
    let b = f.target();
    require_c(a, "source")?;
    require_c(b, "target")?;
    let pb = pullback(f.f0(), b.a())?;
    let k = pb.p_a.clone();
    let kappa = pb.p_b.clone();
    let k_prime = ArrowObject::new(pb.factor(a.a(), f.f1())?);
    let rep = replacement(&k_prime)?;
    let eps = rep.compare.f0();
    let eps1 = rep.compare.f1();
    let counit = ArrowMorphism::new(rep.arrow.clone(), a.clone(), k.compose(eps)?, eps1.clone())?;
    let kappa_eps = kappa.compose(eps)?;
    let composite = f.compose(&counit)?;
    let cell = Homotopy::new(composite, ArrowMorphism::zero(&rep.arrow, b), kappa_eps.clone())?;
    let compare_ok = rep.verify()?;
    Ok(TwoKernelData {
        ker: rep.arrow.clone(),
        counit,
        kappa_eps,
        cell,
        pullback: pb.module.clone(),
        k_prime,
        replacement: rep,
        compare_ok,
    })
}
