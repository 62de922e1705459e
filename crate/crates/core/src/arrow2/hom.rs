use num_bigint::BigInt;
use serde::Serialize;

use super::{ArrowMorphism, ArrowObject, Homotopy};
use crate::fgmod::{hom_group, Cokernel, FgModule, HomGroup, Kernel, ModuleMorphism};
use crate::matrix::Matrix;
use crate::{Error, Result};

/// The hom-groupoid `a → b` described by modules.
///
/// Morphisms form `Mor ⊆ Hom(A0, B0) ⊕ Hom(A1, B1)`; the map
/// `H: Hom(A0, B1) → Mor`, `α ↦ (bα, αa)` has cokernel `π0` and kernel `π1`.
#[derive(Clone, Debug)]
pub struct HomInvariants {
    pub source: ArrowObject,
    pub target: ArrowObject,
    pub hom00: HomGroup,
    pub hom11: HomGroup,
    pub hom01: HomGroup,
    pub mor: Kernel,
    pub homotopy_map: ModuleMorphism,
    pub pi0: Cokernel,
    pub pi1: Kernel,
    /// `Hom(Coker a, Ker b)`.
    pub coker_ker: HomGroup,
    /// Isomorphism `π1 → Hom(Coker a, Ker b)`.
    pub pi1_witness: ModuleMorphism,
}

pub fn hom_invariants(a: &ArrowObject, b: &ArrowObject) -> Result<HomInvariants> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring(), b.ring()));
    }
    let ring = a.ring();
    let hom00 = hom_group(a.a0(), b.a0())?;
    let hom11 = hom_group(a.a1(), b.a1())?;
    let hom01 = hom_group(a.a0(), b.a1())?;
    let hom10 = hom_group(a.a1(), b.a0())?;

    // (f0, f1) ↦ f0 a - b f1
    let mut cols = Vec::new();
    for f0 in hom00.basis() {
        cols.push(hom10.coordinates(&f0.compose(a.a())?)?);
    }
    for f1 in hom11.basis() {
        cols.push(hom10.coordinates(&b.a().compose(&f1)?.neg())?);
    }
    let pair = hom00.module.direct_sum(&hom11.module)?;
    let constraint =
        ModuleMorphism::new(pair.clone(), hom10.module.clone(), Matrix::from_columns(ring, hom10.rank(), &cols))?;
    let mor = constraint.kernel();

    let mut cols = Vec::new();
    for alpha in hom01.basis() {
        let mut c = hom00.coordinates(&b.a().compose(&alpha)?)?;
        c.extend(hom11.coordinates(&alpha.compose(a.a())?)?);
        cols.push(c);
    }
    let into_pair = ModuleMorphism::new(hom01.module.clone(), pair, Matrix::from_columns(ring, hom00.rank() + hom11.rank(), &cols))?;
    let homotopy_map = mor.factor(&into_pair)?;
    let pi0 = homotopy_map.cokernel();
    let pi1 = homotopy_map.kernel();

    let ca = a.a().cokernel();
    let kb = b.a().kernel();
    let coker_ker = hom_group(&ca.module, &kb.module)?;
    let mut cols = Vec::new();
    for c in (0..pi1.module.generators()).map(|i| unit(ring, pi1.module.generators(), i)) {
        let alpha = hom01.morphism(&pi1.inclusion.apply(&c));
        let through = kb.factor(&ca.factor(&alpha)?)?;
        cols.push(coker_ker.coordinates(&through)?);
    }
    let pi1_witness = ModuleMorphism::new(
        pi1.module.clone(),
        coker_ker.module.clone(),
        Matrix::from_columns(ring, coker_ker.rank(), &cols),
    )?;
    Ok(HomInvariants {
        source: a.clone(),
        target: b.clone(),
        hom00,
        hom11,
        hom01,
        mor,
        homotopy_map,
        pi0,
        pi1,
        coker_ker,
        pi1_witness,
    })
}

fn unit(ring: crate::Ring, n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); n];
    v[i] = ring.from_i64(1);
    v
}

impl HomInvariants {
    pub fn pi0_module(&self) -> &FgModule {
        &self.pi0.module
    }

    pub fn pi1_module(&self) -> &FgModule {
        &self.pi1.module
    }

    pub fn mor_module(&self) -> &FgModule {
        &self.mor.module
    }

    /// Whether the `π1` witness is an isomorphism.
    pub fn pi1_witness_is_iso(&self) -> bool {
        self.pi1_witness.classify().iso
    }

    /// The morphism with canonical coordinates `c` in `Mor`.
    pub fn morphism(&self, c: &[BigInt]) -> ArrowMorphism {
        let v = self.mor.inclusion.apply(c);
        let k = self.hom00.rank();
        let f0 = self.hom00.morphism(&v[..k]);
        let f1 = self.hom11.morphism(&v[k..]);
        ArrowMorphism::new_unchecked(self.source.clone(), self.target.clone(), f0, f1)
    }

    pub fn mor_coordinates(&self, f: &ArrowMorphism) -> Result<Vec<BigInt>> {
        if f.source() != &self.source || f.target() != &self.target {
            return Err(Error::Shape("morphism does not belong to this hom-groupoid".into()));
        }
        let mut v = self.hom00.coordinates(f.f0())?;
        v.extend(self.hom11.coordinates(f.f1())?);
        self.mor.factor_element(&v).ok_or_else(|| Error::NotCommuting("square does not commute".into()))
    }

    /// Canonical coordinates of the homotopy class of `f` in `π0`.
    pub fn pi0_class(&self, f: &ArrowMorphism) -> Result<Vec<BigInt>> {
        Ok(self.pi0.module.coordinates(&self.pi0.projection.apply(&self.mor_coordinates(f)?)))
    }

    /// A representative of the class with coordinates `c` in `π0`.
    pub fn pi0_representative(&self, c: &[BigInt]) -> ArrowMorphism {
        self.morphism(&self.pi0.lift_element(c))
    }

    /// Self-homotopy `α` of any morphism for coordinates `c` in `π1`.
    pub fn pi1_element(&self, c: &[BigInt]) -> ModuleMorphism {
        self.hom01.morphism(&self.pi1.inclusion.apply(c))
    }

    /// Maps on `π0` and `π1` induced by `g ∘ -`, for `self = Hom(a, b)`,
    /// `other = Hom(a, b')` and `g: b → b'`.
    pub fn postcompose(&self, g: &ArrowMorphism, other: &HomInvariants) -> Result<(ModuleMorphism, ModuleMorphism)> {
        if g.source() != &self.target || g.target() != &other.target || self.source != other.source {
            return Err(Error::Shape("postcomposition does not match the hom-groupoids".into()));
        }
        let on_pi0 = self.induced_pi0(other, |f| g.compose(f))?;
        let on_pi1 = self.induced_pi1(other, |alpha| g.f1().compose(alpha))?;
        Ok((on_pi0, on_pi1))
    }

    /// Maps on `π0` and `π1` induced by `- ∘ f`, for `self = Hom(b, x)`,
    /// `other = Hom(a, x)` and `f: a → b`.
    pub fn precompose(&self, f: &ArrowMorphism, other: &HomInvariants) -> Result<(ModuleMorphism, ModuleMorphism)> {
        if f.target() != &self.source || f.source() != &other.source || self.target != other.target {
            return Err(Error::Shape("precomposition does not match the hom-groupoids".into()));
        }
        let on_pi0 = self.induced_pi0(other, |h| h.compose(f))?;
        let on_pi1 = self.induced_pi1(other, |alpha| alpha.compose(f.f0()))?;
        Ok((on_pi0, on_pi1))
    }

    fn induced_pi0<F>(&self, other: &HomInvariants, op: F) -> Result<ModuleMorphism>
    where
        F: Fn(&ArrowMorphism) -> Result<ArrowMorphism>,
    {
        let ring = self.source.ring();
        let cols: Result<Vec<Vec<BigInt>>> = self.mor_basis().iter().map(|f| other.pi0_class(&op(f)?)).collect();
        let on_mor = ModuleMorphism::new(
            self.mor.module.clone(),
            other.pi0.module.clone(),
            Matrix::from_columns(ring, other.pi0.module.generators(), &cols?),
        )?;
        self.pi0.factor(&on_mor)
    }

    fn induced_pi1<F>(&self, other: &HomInvariants, op: F) -> Result<ModuleMorphism>
    where
        F: Fn(&ModuleMorphism) -> Result<ModuleMorphism>,
    {
        let ring = self.source.ring();
        let n = self.pi1.module.generators();
        let mut cols = Vec::new();
        for i in 0..n {
            let image = op(&self.pi1_element(&unit(ring, n, i)))?;
            let c = other.hom01.coordinates(&image)?;
            let k = other
                .pi1
                .factor_element(&c)
                .ok_or_else(|| Error::Invalid("internal: image is not a self-homotopy".into()))?;
            cols.push(k);
        }
        ModuleMorphism::new(
            self.pi1.module.clone(),
            other.pi1.module.clone(),
            Matrix::from_columns(ring, other.pi1.module.generators(), &cols),
        )
    }

    /// Representatives of the generators of `Mor`.
    pub fn mor_basis(&self) -> Vec<ArrowMorphism> {
        let ring = self.source.ring();
        let n = self.mor.module.generators();
        (0..n).map(|i| self.morphism(&unit(ring, n, i))).collect()
    }
}

/// `α` with `f1 - g1 = α a` and `f0 - g0 = b α`, if one exists.
pub fn find_homotopy(f: &ArrowMorphism, g: &ArrowMorphism) -> Result<Option<Homotopy>> {
    if !f.is_parallel(g) {
        return Err(Error::NotParallel);
    }
    let a = f.source();
    let b = f.target();
    let ring = a.ring();
    let hom00 = hom_group(a.a0(), b.a0())?;
    let hom11 = hom_group(a.a1(), b.a1())?;
    let hom01 = hom_group(a.a0(), b.a1())?;
    let mut cols = Vec::new();
    for alpha in hom01.basis() {
        let mut c = hom00.coordinates(&b.a().compose(&alpha)?)?;
        c.extend(hom11.coordinates(&alpha.compose(a.a())?)?);
        cols.push(c);
    }
    let pair = hom00.module.direct_sum(&hom11.module)?;
    let h = ModuleMorphism::new(hom01.module.clone(), pair, Matrix::from_columns(ring, hom00.rank() + hom11.rank(), &cols))?;
    let d = f.sub(g)?;
    let mut rhs = hom00.coordinates(d.f0())?;
    rhs.extend(hom11.coordinates(d.f1())?);
    match h.preimage(&rhs) {
        None => Ok(None),
        Some(x) => {
            let alpha = hom01.morphism(&x);
            Ok(Some(Homotopy::new(f.clone(), g.clone(), alpha)?))
        }
    }
}

#[derive(Serialize)]
struct HomInvariantsRepr<'a> {
    source: &'a ArrowObject,
    target: &'a ArrowObject,
    morphisms: &'a FgModule,
    pi0: &'a FgModule,
    pi1: &'a FgModule,
    coker_ker_hom: &'a FgModule,
    pi1_witness: &'a Matrix,
    pi1_witness_is_iso: bool,
}

impl Serialize for HomInvariants {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HomInvariantsRepr {
            source: &self.source,
            target: &self.target,
            morphisms: &self.mor.module,
            pi0: &self.pi0.module,
            pi1: &self.pi1.module,
            coker_ker_hom: &self.coker_ker.module,
            pi1_witness: self.pi1_witness.matrix(),
            pi1_witness_is_iso: self.pi1_witness_is_iso(),
        }
        .serialize(s)
    }
}
