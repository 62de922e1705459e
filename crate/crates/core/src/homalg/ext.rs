use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::RngCore;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::resolution::{free_resolution, lift_chain_map, FreeResolution};
use crate::fgmod::{Cokernel, FgModule, Kernel, ModuleMorphism};
use crate::matrix::{Entry, Matrix};
use crate::{Error, Result};

/// `Ext^n(M, N)` as the cohomology of `Hom(F_•, N)` at degree `n`.
///
/// A cochain in degree `i` is an `h x k_i` matrix (one image in `N` per basis
/// element of `F_i`), stored column-stacked as an element of `N^{k_i}`.
pub struct ExtGroup {
    pub degree: usize,
    pub source: FgModule,
    pub coefficients: FgModule,
    pub resolution: Arc<FreeResolution>,
    pub module: FgModule,
    cocycles: Kernel,
    quotient: Cokernel,
}

impl fmt::Debug for ExtGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ext^{}({}, {}) = {}",
            self.degree,
            self.source.describe(),
            self.coefficients.describe(),
            self.module.describe()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Push,
    Pull,
}

/// Coboundary `Hom(F_i, N) → Hom(F_{i+1}, N)`, `φ ↦ φ ∘ d_{i+1}`.
fn coboundary(res: &FreeResolution, n: &FgModule, i: usize) -> ModuleMorphism {
    let ring = n.ring();
    let d = res.differential(i + 1);
    let mx = d.transpose().kron(&Matrix::identity(ring, n.generators()));
    ModuleMorphism::new_unchecked(n.power(res.ranks[i]), n.power(res.ranks[i + 1]), mx)
}

fn vectorize(m: &Matrix) -> Vec<BigInt> {
    m.columns().into_iter().flatten().collect()
}

fn unvectorize(ring: crate::Ring, h: usize, k: usize, v: &[BigInt]) -> Matrix {
    let cols: Vec<Vec<BigInt>> = (0..k).map(|j| v[j * h..(j + 1) * h].to_vec()).collect();
    Matrix::from_columns(ring, h, &cols)
}

pub fn ext(degree: usize, source: &FgModule, coefficients: &FgModule) -> Result<Arc<ExtGroup>> {
    if !(1..=2).contains(&degree) {
        return Err(Error::Invalid(format!("Ext is supported in degrees 1 and 2, not {degree}")));
    }
    let res = Arc::new(free_resolution(source, degree + 1)?);
    ext_with_resolution(degree, res, coefficients)
}

pub fn ext_with_resolution(
    degree: usize,
    res: Arc<FreeResolution>,
    coefficients: &FgModule,
) -> Result<Arc<ExtGroup>> {
    if res.module.ring() != coefficients.ring() {
        return Err(Error::RingMismatch(res.module.ring(), coefficients.ring()));
    }
    let n = coefficients;
    let d_out = coboundary(&res, n, degree);
    let d_in = coboundary(&res, n, degree - 1);
    let cocycles = d_out.kernel();
    let into_cocycles = cocycles.factor(&d_in)?;
    let quotient = into_cocycles.cokernel();
    Ok(Arc::new(ExtGroup {
        degree,
        source: res.module.clone(),
        coefficients: n.clone(),
        module: quotient.module.clone(),
        resolution: res,
        cocycles,
        quotient,
    }))
}

impl ExtGroup {
    fn cochain_rank(&self) -> usize {
        self.resolution.ranks[self.degree]
    }

    pub fn zero(self: &Arc<Self>) -> ExtElement {
        ExtElement { parent: self.clone(), coordinates: vec![BigInt::zero(); self.module.generators()] }
    }

    pub fn generators(self: &Arc<Self>) -> Vec<ExtElement> {
        let ring = self.source.ring();
        (0..self.module.generators())
            .map(|i| {
                let mut c = vec![BigInt::zero(); self.module.generators()];
                c[i] = ring.from_i64(1);
                self.element(&c)
            })
            .collect()
    }

    pub fn element(self: &Arc<Self>, coordinates: &[BigInt]) -> ExtElement {
        ExtElement { parent: self.clone(), coordinates: self.module.coordinates(coordinates) }
    }

    /// Class of a cocycle `F_n → N`, given as an `h x k_n` matrix.
    pub fn class_of(self: &Arc<Self>, cocycle: &Matrix) -> Result<ExtElement> {
        let h = self.coefficients.generators();
        if cocycle.shape() != (h, self.cochain_rank()) {
            return Err(Error::Shape(format!(
                "cocycle is {}x{}, expected {}x{}",
                cocycle.rows(),
                cocycle.cols(),
                h,
                self.cochain_rank()
            )));
        }
        let z = self
            .cocycles
            .factor_element(&vectorize(cocycle))
            .ok_or_else(|| Error::Invalid("cochain is not a cocycle".into()))?;
        let c = self.quotient.projection.apply(&z);
        Ok(self.element(&c))
    }

    /// A cocycle representing `x`.
    pub fn representative(&self, x: &ExtElement) -> Matrix {
        self.representative_of(&x.coordinates)
    }

    fn representative_of(&self, coordinates: &[BigInt]) -> Matrix {
        let z = self.quotient.lift_element(coordinates);
        let v = self.cocycles.inclusion.apply(&z);
        unvectorize(self.source.ring(), self.coefficients.generators(), self.cochain_rank(), &v)
    }

    /// Whether a cochain is a coboundary, i.e. represents the zero class.
    pub fn is_coboundary(self: &Arc<Self>, cochain: &Matrix) -> Result<bool> {
        Ok(self.class_of(cochain)?.is_zero())
    }

    fn same_descriptor(&self, other: &ExtGroup) -> bool {
        self.degree == other.degree && self.source == other.source && self.coefficients == other.coefficients
    }

    /// `h_*(x)` for `h: N → N'`, landing in `target = Ext^n(M, N')`.
    pub fn push_into(&self, h: &ModuleMorphism, x: &ExtElement, target: &Arc<ExtGroup>) -> Result<ExtElement> {
        if !x.parent.same_descriptor(self) {
            return Err(Error::Shape("element does not belong to this Ext group".into()));
        }
        if h.source() != &self.coefficients
            || h.target() != &target.coefficients
            || target.source != self.source
            || target.degree != self.degree
        {
            return Err(Error::Shape("push: map does not match the coefficient modules".into()));
        }
        let phi = self.representative(x);
        target.class_of(&h.matrix().mul(&phi))
    }

    /// `h^*(x)` for `h: M' → M`, landing in `target = Ext^n(M', N)`.
    pub fn pull_into(
        &self,
        h: &ModuleMorphism,
        x: &ExtElement,
        target: &Arc<ExtGroup>,
        perturb: Option<&mut dyn RngCore>,
    ) -> Result<ExtElement> {
        if !x.parent.same_descriptor(self) {
            return Err(Error::Shape("element does not belong to this Ext group".into()));
        }
        if h.target() != &self.source
            || h.source() != &target.source
            || target.coefficients != self.coefficients
            || target.degree != self.degree
        {
            return Err(Error::Shape("pull: map does not match the source modules".into()));
        }
        let lifts = lift_chain_map(h, &target.resolution, &self.resolution, self.degree, perturb)?;
        let phi = self.representative(x);
        target.class_of(&phi.mul(&lifts[self.degree]))
    }
}

/// Functorial action on `Ext`: push along `h: N → N'` or pull along `h: M' → M`.
pub fn ext_functorial(direction: Direction, h: &ModuleMorphism, x: &ExtElement) -> Result<ExtElement> {
    let parent = &x.parent;
    match direction {
        Direction::Push => {
            if h.source() != &parent.coefficients {
                return Err(Error::Shape("push: map source is not the coefficient module".into()));
            }
            let target = ext_with_resolution(parent.degree, parent.resolution.clone(), h.target())?;
            parent.push_into(h, x, &target)
        }
        Direction::Pull => {
            if h.target() != &parent.source {
                return Err(Error::Shape("pull: map target is not the source module".into()));
            }
            let target = ext(parent.degree, h.source(), &parent.coefficients)?;
            parent.pull_into(h, x, &target, None)
        }
    }
}

/// An element of an [`ExtGroup`] in canonical coordinates.
#[derive(Clone)]
pub struct ExtElement {
    pub parent: Arc<ExtGroup>,
    pub coordinates: Vec<BigInt>,
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coordinates.iter().map(ToString::to_string).collect();
        write!(f, "[{}] in {:?}", c.join(", "), self.parent)
    }
}

impl PartialEq for ExtElement {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_descriptor(&other.parent) && self.coordinates == other.coordinates
    }
}

impl ExtElement {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &ExtElement) -> Result<ExtElement> {
        if !self.parent.same_descriptor(&other.parent) {
            return Err(Error::Shape("adding elements of different Ext groups".into()));
        }
        let c: Vec<BigInt> = self.coordinates.iter().zip(&other.coordinates).map(|(a, b)| a + b).collect();
        Ok(self.parent.element(&c))
    }

    pub fn neg(&self) -> ExtElement {
        let c: Vec<BigInt> = self.coordinates.iter().map(|a| -a).collect();
        self.parent.element(&c)
    }

    pub fn sub(&self, other: &ExtElement) -> Result<ExtElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> ExtElement {
        let c: Vec<BigInt> = self.coordinates.iter().map(|a| a * k).collect();
        self.parent.element(&c)
    }
}

#[derive(Serialize, Deserialize)]
struct ExtElementRepr {
    degree: usize,
    #[serde(rename = "M")]
    source: FgModule,
    #[serde(rename = "N")]
    coefficients: FgModule,
    coordinates: Vec<Entry>,
}

impl Serialize for ExtElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExtElementRepr {
            degree: self.parent.degree,
            source: self.parent.source.clone(),
            coefficients: self.parent.coefficients.clone(),
            coordinates: self.coordinates.iter().cloned().map(Entry).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ExtElementRepr::deserialize(d)?;
        let group = ext(r.degree, &r.source, &r.coefficients).map_err(serde::de::Error::custom)?;
        if r.coordinates.len() != group.module.generators() {
            return Err(serde::de::Error::custom(format!(
                "Ext element has {} coordinates, group has {} generators",
                r.coordinates.len(),
                group.module.generators()
            )));
        }
        let c: Vec<BigInt> = r.coordinates.into_iter().map(|e| e.0).collect();
        Ok(group.element(&c))
    }
}

impl Serialize for ExtGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            degree: usize,
            #[serde(rename = "M")]
            source: &'a FgModule,
            #[serde(rename = "N")]
            coefficients: &'a FgModule,
            group: &'a FgModule,
            invariant_factors: Vec<String>,
            cocycle_representatives: Vec<Matrix>,
        }
        let gens: Vec<Matrix> = (0..self.module.generators())
            .map(|i| {
                let mut c = vec![BigInt::zero(); self.module.generators()];
                c[i] = BigInt::from(1);
                self.representative_of(&c)
            })
            .collect();
        Repr {
            degree: self.degree,
            source: &self.source,
            coefficients: &self.coefficients,
            group: &self.module,
            invariant_factors: self.module.invariant_factors().iter().map(ToString::to_string).collect(),
            cocycle_representatives: gens,
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    const Z: Ring = Ring::Integers;
    const Z4: Ring = Ring::IntegersMod { m: 4 };

    #[test]
    fn ext1_z2_z() {
        let e = ext(1, &FgModule::cyclic(Z, 2), &FgModule::free(Z, 1)).unwrap();
        assert!(e.module.is_isomorphic(&FgModule::cyclic(Z, 2)));
    }

    #[test]
    fn ext2_vanishes_over_integers() {
        let m = FgModule::cyclic(Z, 6).direct_sum(&FgModule::cyclic(Z, 4)).unwrap();
        let n = FgModule::cyclic(Z, 2).direct_sum(&FgModule::free(Z, 1)).unwrap();
        let e = ext(2, &m, &n).unwrap();
        assert!(e.module.is_zero());
        assert_eq!(e.resolution.ranks[2], 0);
    }

    #[test]
    fn ext2_z2_z2_over_z4() {
        let z2 = FgModule::cyclic(Z4, 2);
        let e = ext(2, &z2, &z2).unwrap();
        assert!(e.module.is_isomorphic(&FgModule::cyclic(Z4, 2)));
        let e1 = ext(1, &z2, &z2).unwrap();
        assert!(e1.module.is_isomorphic(&FgModule::cyclic(Z4, 2)));
    }

    #[test]
    fn ext_of_free_vanishes() {
        for ring in [Z, Z4] {
            let f = FgModule::free(ring, 2);
            let n = FgModule::cyclic(ring, 2);
            assert!(ext(1, &f, &n).unwrap().module.is_zero());
            assert!(ext(2, &f, &n).unwrap().module.is_zero());
        }
    }

    #[test]
    fn functorial_identity_and_zero() {
        let z2 = FgModule::cyclic(Z4, 2);
        let e = ext(2, &z2, &z2).unwrap();
        let x = e.generators()[0].clone();
        let id = ModuleMorphism::identity(&z2);
        assert_eq!(ext_functorial(Direction::Pull, &id, &x).unwrap(), x);
        assert_eq!(ext_functorial(Direction::Push, &id, &x).unwrap(), x);
        let zero = ModuleMorphism::zero(&z2, &z2);
        assert!(ext_functorial(Direction::Push, &zero, &x).unwrap().is_zero());
        let pushed = ext_functorial(Direction::Push, &zero, &x).unwrap();
        assert!(ext_functorial(Direction::Pull, &id, &pushed).unwrap().is_zero());
    }

    #[test]
    fn degree_out_of_range() {
        let z = FgModule::free(Z, 1);
        assert!(ext(3, &z, &z).is_err());
        assert!(ext(0, &z, &z).is_err());
    }

    #[test]
    fn json_round_trip() {
        let z2 = FgModule::cyclic(Z4, 2);
        let e = ext(2, &z2, &z2).unwrap();
        let x = e.generators()[0].clone();
        let js = serde_json::to_string(&x).unwrap();
        let back: ExtElement = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
    }
}
