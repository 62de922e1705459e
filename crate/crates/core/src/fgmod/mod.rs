//! Finitely presented modules `R^g / im(P)` and the maps between them.
//!
//! A module is always a presentation. Isomorphism type is read off the
//! invariant factors of the relation matrix; elements are compared through
//! canonical coordinates in the Smith basis.

mod enumerate;
mod hom;
mod limits;
mod morphism;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::snf::{smith_normal_form, SmithDecomposition};
use crate::{Error, Result};

pub use enumerate::{enumeration_bound, ElementIter, DEFAULT_ENUMERATION_BOUND};
pub use hom::{hom_group, HomGroup};
pub use limits::{pullback, pushout, Cokernel, Kernel, Pullback, Pushout};
pub use morphism::{MorphismFlags, ModuleMorphism};

#[derive(Clone)]
pub struct FgModule {
    ring: Ring,
    generators: usize,
    relations: Matrix,
    structure: Arc<OnceLock<Structure>>,
}

#[derive(Debug)]
struct Structure {
    snf: SmithDecomposition,
    /// Smith-basis indices whose cyclic summand `R/(d)` is nonzero.
    nontrivial: Vec<usize>,
    /// Canonical invariant factor of each nontrivial summand (0 for a free summand).
    factors: Vec<BigInt>,
}

/// A module isomorphic to the source presentation, with the two
/// comparison matrices.
#[derive(Clone, Debug)]
pub struct Simplification {
    pub module: FgModule,
    /// Matrix of the isomorphism original → simplified.
    pub to: Matrix,
    /// Matrix of the inverse isomorphism simplified → original.
    pub from: Matrix,
}

impl PartialEq for FgModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators && self.relations == other.relations
    }
}

impl Eq for FgModule {}

impl fmt::Debug for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgModule({} gens over {}, relations {:?})", self.generators, self.ring, self.relations)
    }
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl FgModule {
    pub fn new(ring: Ring, generators: usize, relations: Matrix) -> Result<FgModule> {
        if relations.ring() != ring {
            return Err(Error::RingMismatch(ring, relations.ring()));
        }
        if relations.rows() != generators {
            return Err(Error::Shape(format!(
                "relation matrix has {} rows for {generators} generators",
                relations.rows()
            )));
        }
        Ok(FgModule { ring, generators, relations, structure: Arc::new(OnceLock::new()) })
    }

    pub fn free(ring: Ring, rank: usize) -> FgModule {
        FgModule::new(ring, rank, Matrix::zeros(ring, rank, 0)).unwrap()
    }

    pub fn zero(ring: Ring) -> FgModule {
        FgModule::free(ring, 0)
    }

    /// `R/(d)` on one generator.
    pub fn cyclic(ring: Ring, d: i64) -> FgModule {
        FgModule::from_invariant_factors(ring, &[BigInt::from(d)])
    }

    /// `⊕ R/(d_i)` with a diagonal presentation; zero factors give free summands.
    pub fn from_invariant_factors(ring: Ring, factors: &[BigInt]) -> FgModule {
        let g = factors.len();
        let cols: Vec<Vec<BigInt>> = factors
            .iter()
            .enumerate()
            .filter(|(_, d)| !ring.is_zero(d))
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); g];
                c[i] = ring.reduce(d.clone());
                c
            })
            .collect();
        FgModule::new(ring, g, Matrix::from_columns(ring, g, &cols)).unwrap()
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    fn structure(&self) -> &Structure {
        self.structure.get_or_init(|| {
            let snf = smith_normal_form(&self.relations);
            let mut nontrivial = Vec::new();
            let mut factors = Vec::new();
            for i in 0..self.generators {
                let d = snf.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
                if !self.ring.is_unit(&d) {
                    nontrivial.push(i);
                    factors.push(d);
                }
            }
            Structure { snf, nontrivial, factors }
        })
    }

    /// Canonical isomorphism invariant: the non-unit invariant factors, in
    /// divisibility order, free summands last as `0`.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.structure().factors
    }

    pub fn is_isomorphic(&self, other: &FgModule) -> bool {
        self.ring == other.ring && self.invariant_factors() == other.invariant_factors()
    }

    pub fn is_zero(&self) -> bool {
        self.invariant_factors().is_empty()
    }

    /// True when the presentation has no nonzero relation, i.e. the module is
    /// literally `R^g`.
    pub fn is_free_presentation(&self) -> bool {
        self.relations.is_zero()
    }

    /// Number of elements, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        let mut n = BigInt::one();
        for d in self.invariant_factors() {
            n *= self.ring.quotient_order(d)?;
        }
        Some(n)
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// Canonical coordinates of an element given in generator coordinates.
    pub fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.generators, "element length");
        let st = self.structure();
        let y = st.snf.u.mul_vec(v);
        st.nontrivial
            .iter()
            .zip(&st.factors)
            .map(|(&i, d)| self.ring.reduce_mod(&y[i], d))
            .collect()
    }

    /// Element (in generator coordinates) with the given canonical coordinates.
    pub fn from_coordinates(&self, c: &[BigInt]) -> Vec<BigInt> {
        let st = self.structure();
        assert_eq!(c.len(), st.nontrivial.len(), "coordinate length");
        let mut v = vec![BigInt::zero(); self.generators];
        for (&i, x) in st.nontrivial.iter().zip(c) {
            for (r, vr) in v.iter_mut().enumerate() {
                *vr += st.snf.u_inv.get(r, i) * x;
            }
        }
        v.into_iter().map(|x| self.ring.reduce(x)).collect()
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).iter().all(Zero::is_zero)
    }

    pub fn elements_equal(&self, v: &[BigInt], w: &[BigInt]) -> bool {
        let d: Vec<BigInt> = v.iter().zip(w).map(|(a, b)| self.ring.sub(a, b)).collect();
        self.is_zero_element(&d)
    }

    /// Isomorphic module presented by its invariant factors.
    pub fn simplify(&self) -> Simplification {
        let st = self.structure();
        let module = FgModule::from_invariant_factors(self.ring, &st.factors);
        Simplification {
            module,
            to: st.snf.u.select_rows(&st.nontrivial),
            from: st.snf.u_inv.select_cols(&st.nontrivial),
        }
    }

    pub fn direct_sum(&self, other: &FgModule) -> Result<FgModule> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        FgModule::new(self.ring, self.generators + other.generators, self.relations.block_diag(&other.relations))
    }

    /// `M^k`, with generator `j * g + i` the `i`-th generator of the `j`-th copy.
    pub fn power(&self, k: usize) -> FgModule {
        let rel = Matrix::identity(self.ring, k).kron(&self.relations);
        FgModule::new(self.ring, self.generators * k, rel).unwrap()
    }

    /// Short human description such as `Z/2 + Z`.
    pub fn describe(&self) -> String {
        let f = self.invariant_factors();
        if f.is_empty() {
            return "0".to_string();
        }
        let base = match self.ring {
            Ring::Integers => "Z".to_string(),
            Ring::IntegersMod { m } => format!("Z/{m}"),
        };
        f.iter()
            .map(|d| if d.is_zero() { base.clone() } else { format!("Z/{d}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Serialize, Deserialize)]
struct ModuleRepr {
    ring: Ring,
    generators: usize,
    relations: Matrix,
}

impl Serialize for FgModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModuleRepr { ring: self.ring, generators: self.generators, relations: self.relations.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FgModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ModuleRepr::deserialize(d)?;
        FgModule::new(r.ring, r.generators, r.relations).map_err(serde::de::Error::custom)
    }
}
