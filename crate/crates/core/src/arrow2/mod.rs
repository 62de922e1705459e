//! The 2-category of arrows: objects are module maps `a: A1 → A0`, 1-cells
//! are commuting squares `(f0, f1)`, 2-cells are homotopies `α: A0 → B1`.

mod cnobili;
mod hom;
mod replace;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::fgmod::{FgModule, ModuleMorphism};
use crate::homalg::{ch_of_map, ChTriple};
use crate::matrix::Matrix;
use crate::{Error, Result};

pub use cnobili::{cnobili_sequence, CnobiliReport};
pub use hom::{find_homotopy, hom_invariants, HomInvariants};
pub use replace::{lift_through_replacement, replacement, Replacement};

#[derive(Clone, PartialEq)]
pub struct ArrowObject {
    map: ModuleMorphism,
}

impl fmt::Debug for ArrowObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arrow({} -> {}, {:?})", self.a1().describe(), self.a0().describe(), self.map.matrix())
    }
}

impl ArrowObject {
    pub fn new(a: ModuleMorphism) -> ArrowObject {
        ArrowObject { map: a }
    }

    pub fn from_matrix(a1: FgModule, a0: FgModule, a: Matrix) -> Result<ArrowObject> {
        Ok(ArrowObject { map: ModuleMorphism::new(a1, a0, a)? })
    }

    pub fn zero_object(ring: crate::Ring) -> ArrowObject {
        let z = FgModule::zero(ring);
        ArrowObject { map: ModuleMorphism::identity(&z) }
    }

    /// `0 → M`.
    pub fn from_zero(m: &FgModule) -> ArrowObject {
        ArrowObject { map: ModuleMorphism::zero(&FgModule::zero(m.ring()), m) }
    }

    /// `M → 0`.
    pub fn to_zero(m: &FgModule) -> ArrowObject {
        ArrowObject { map: ModuleMorphism::zero(m, &FgModule::zero(m.ring())) }
    }

    pub fn ring(&self) -> crate::Ring {
        self.map.source().ring()
    }

    pub fn a1(&self) -> &FgModule {
        self.map.source()
    }

    pub fn a0(&self) -> &FgModule {
        self.map.target()
    }

    pub fn a(&self) -> &ModuleMorphism {
        &self.map
    }

    /// Target presented without relations.
    pub fn in_c(&self) -> bool {
        self.a0().is_free_presentation()
    }

    pub fn direct_sum(&self, other: &ArrowObject) -> Result<ArrowObject> {
        Ok(ArrowObject { map: self.map.direct_sum(&other.map)? })
    }

    /// Both modules are zero.
    pub fn is_zero(&self) -> bool {
        self.a1().is_zero() && self.a0().is_zero()
    }

    pub fn ch(&self) -> Result<ChTriple> {
        ch_of_map(&self.map)
    }
}

#[derive(Serialize, Deserialize)]
struct ArrowRepr {
    #[serde(rename = "A1")]
    a1: FgModule,
    #[serde(rename = "A0")]
    a0: FgModule,
    a: Matrix,
}

impl Serialize for ArrowObject {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ArrowRepr { a1: self.a1().clone(), a0: self.a0().clone(), a: self.map.matrix().clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ArrowObject {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ArrowRepr::deserialize(d)?;
        ArrowObject::from_matrix(r.a1, r.a0, r.a).map_err(serde::de::Error::custom)
    }
}

/// A commuting square `f0 ∘ a = b ∘ f1`.
#[derive(Clone, PartialEq)]
pub struct ArrowMorphism {
    source: ArrowObject,
    target: ArrowObject,
    f0: ModuleMorphism,
    f1: ModuleMorphism,
}

impl fmt::Debug for ArrowMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArrowMorphism")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("f0", self.f0.matrix())
            .field("f1", self.f1.matrix())
            .finish()
    }
}

impl ArrowMorphism {
    pub fn new(source: ArrowObject, target: ArrowObject, f0: ModuleMorphism, f1: ModuleMorphism) -> Result<Self> {
        if f0.source() != source.a0() || f0.target() != target.a0() {
            return Err(Error::Shape("f0 must map A0 to B0".into()));
        }
        if f1.source() != source.a1() || f1.target() != target.a1() {
            return Err(Error::Shape("f1 must map A1 to B1".into()));
        }
        let left = f0.compose(source.a())?;
        let right = target.a().compose(&f1)?;
        if !left.equals(&right) {
            return Err(Error::NotCommuting("f0 ∘ a ≠ b ∘ f1".into()));
        }
        Ok(ArrowMorphism { source, target, f0, f1 })
    }

    pub fn from_matrices(source: &ArrowObject, target: &ArrowObject, f0: Matrix, f1: Matrix) -> Result<Self> {
        let f0 = ModuleMorphism::new(source.a0().clone(), target.a0().clone(), f0)?;
        let f1 = ModuleMorphism::new(source.a1().clone(), target.a1().clone(), f1)?;
        ArrowMorphism::new(source.clone(), target.clone(), f0, f1)
    }

    pub(crate) fn new_unchecked(source: ArrowObject, target: ArrowObject, f0: ModuleMorphism, f1: ModuleMorphism) -> Self {
        debug_assert!(ArrowMorphism::new(source.clone(), target.clone(), f0.clone(), f1.clone()).is_ok());
        ArrowMorphism { source, target, f0, f1 }
    }

    pub fn identity(a: &ArrowObject) -> ArrowMorphism {
        ArrowMorphism {
            source: a.clone(),
            target: a.clone(),
            f0: ModuleMorphism::identity(a.a0()),
            f1: ModuleMorphism::identity(a.a1()),
        }
    }

    pub fn zero(source: &ArrowObject, target: &ArrowObject) -> ArrowMorphism {
        ArrowMorphism {
            source: source.clone(),
            target: target.clone(),
            f0: ModuleMorphism::zero(source.a0(), target.a0()),
            f1: ModuleMorphism::zero(source.a1(), target.a1()),
        }
    }

    pub fn source(&self) -> &ArrowObject {
        &self.source
    }

    pub fn target(&self) -> &ArrowObject {
        &self.target
    }

    pub fn f0(&self) -> &ModuleMorphism {
        &self.f0
    }

    pub fn f1(&self) -> &ModuleMorphism {
        &self.f1
    }

    pub fn is_parallel(&self, other: &ArrowMorphism) -> bool {
        self.source == other.source && self.target == other.target
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ArrowMorphism) -> Result<ArrowMorphism> {
        if inner.target != self.source {
            return Err(Error::Shape("arrow morphisms are not composable".into()));
        }
        Ok(ArrowMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            f0: self.f0.compose(&inner.f0)?,
            f1: self.f1.compose(&inner.f1)?,
        })
    }

    pub fn add(&self, other: &ArrowMorphism) -> Result<ArrowMorphism> {
        if !self.is_parallel(other) {
            return Err(Error::NotParallel);
        }
        Ok(ArrowMorphism { f0: self.f0.add(&other.f0)?, f1: self.f1.add(&other.f1)?, ..self.clone() })
    }

    pub fn neg(&self) -> ArrowMorphism {
        ArrowMorphism { f0: self.f0.neg(), f1: self.f1.neg(), ..self.clone() }
    }

    pub fn sub(&self, other: &ArrowMorphism) -> Result<ArrowMorphism> {
        self.add(&other.neg())
    }

    /// Equality of both components as maps.
    pub fn equals(&self, other: &ArrowMorphism) -> bool {
        self.is_parallel(other) && self.f0.equals(&other.f0) && self.f1.equals(&other.f1)
    }

    /// Induced map `Ker a → Ker b`.
    pub fn on_kernels(&self) -> Result<ModuleMorphism> {
        let ka = self.source.a().kernel();
        let kb = self.target.a().kernel();
        kb.factor(&self.f1.compose(&ka.inclusion)?)
    }

    /// Induced map `Coker a → Coker b`.
    pub fn on_cokernels(&self) -> Result<ModuleMorphism> {
        let ca = self.source.a().cokernel();
        let cb = self.target.a().cokernel();
        ca.factor(&cb.projection.compose(&self.f0)?)
    }
}

#[derive(Serialize, Deserialize)]
struct ArrowMorphismRepr {
    source: ArrowObject,
    target: ArrowObject,
    f0: Matrix,
    f1: Matrix,
}

impl Serialize for ArrowMorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ArrowMorphismRepr {
            source: self.source.clone(),
            target: self.target.clone(),
            f0: self.f0.matrix().clone(),
            f1: self.f1.matrix().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ArrowMorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ArrowMorphismRepr::deserialize(d)?;
        ArrowMorphism::from_matrices(&r.source, &r.target, r.f0, r.f1).map_err(serde::de::Error::custom)
    }
}

/// A 2-cell `α: f ⇒ g` with `f1 - g1 = α a` and `f0 - g0 = b α`.
#[derive(Clone, Debug, Serialize)]
pub struct Homotopy {
    pub from: ArrowMorphism,
    pub to: ArrowMorphism,
    pub alpha: ModuleMorphism,
}

impl Homotopy {
    pub fn new(from: ArrowMorphism, to: ArrowMorphism, alpha: ModuleMorphism) -> Result<Homotopy> {
        if !from.is_parallel(&to) {
            return Err(Error::NotParallel);
        }
        if alpha.source() != from.source.a0() || alpha.target() != from.target.a1() {
            return Err(Error::Shape("homotopy must map A0 to B1".into()));
        }
        if !from.f1.sub(&to.f1)?.equals(&alpha.compose(from.source.a())?) {
            return Err(Error::NotHomotopy("f1 - g1 ≠ α a".into()));
        }
        if !from.f0.sub(&to.f0)?.equals(&from.target.a().compose(&alpha)?) {
            return Err(Error::NotHomotopy("f0 - g0 ≠ b α".into()));
        }
        Ok(Homotopy { from, to, alpha })
    }

    pub fn identity(f: &ArrowMorphism) -> Homotopy {
        Homotopy { from: f.clone(), to: f.clone(), alpha: ModuleMorphism::zero(f.source.a0(), f.target.a1()) }
    }

    /// `other ∘ self: f ⇒ h` for `self: f ⇒ g`, `other: g ⇒ h`.
    pub fn vertical(&self, other: &Homotopy) -> Result<Homotopy> {
        if !self.to.equals(&other.from) {
            return Err(Error::Shape("homotopies are not vertically composable".into()));
        }
        Homotopy::new(self.from.clone(), other.to.clone(), self.alpha.add(&other.alpha)?)
    }

    /// `outer * self: g ∘ f ⇒ g' ∘ f'` for `self: f ⇒ f'`, `outer: g ⇒ g'`,
    /// with component `g1 α + β f'0`.
    pub fn horizontal(&self, outer: &Homotopy) -> Result<Homotopy> {
        let from = outer.from.compose(&self.from)?;
        let to = outer.to.compose(&self.to)?;
        let gamma = outer.from.f1.compose(&self.alpha)?.add(&outer.alpha.compose(&self.to.f0)?)?;
        Homotopy::new(from, to, gamma)
    }

    pub fn inverse(&self) -> Homotopy {
        Homotopy { from: self.to.clone(), to: self.from.clone(), alpha: self.alpha.neg() }
    }
}
