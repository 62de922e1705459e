use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, RngCore};
use serde::Serialize;

use super::ext::{ext, ext_with_resolution, ExtElement, ExtGroup};
use crate::fgmod::{hom_group, Cokernel, FgModule, HomGroup, Kernel, ModuleMorphism};
use crate::matrix::Matrix;
use crate::snf::smith_normal_form;
use crate::{Error, Result};

/// `(Coker a, Ker a, ch(a))` with the structural maps of the 2-fold extension.
#[derive(Clone, Debug, Serialize)]
pub struct ChTriple {
    #[serde(rename = "M")]
    pub coker: FgModule,
    #[serde(rename = "N")]
    pub ker: FgModule,
    #[serde(rename = "class")]
    pub class: ExtElement,
    #[serde(skip)]
    pub projection: ModuleMorphism,
    #[serde(skip)]
    pub inclusion: ModuleMorphism,
}

impl ChTriple {
    pub fn group(&self) -> &Arc<ExtGroup> {
        &self.class.parent
    }
}

fn random_matrix(ring: crate::Ring, rows: usize, cols: usize, rng: &mut dyn RngCore) -> Matrix {
    let entries = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
    Matrix::from_vec(ring, rows, cols, entries).unwrap()
}

/// Class of `0 → Ker a → A1 → A0 → Coker a → 0` in `Ext^2(Coker a, Ker a)`.
pub fn ch_of_map(a: &ModuleMorphism) -> Result<ChTriple> {
    ch_of_map_with(a, None)
}

/// As [`ch_of_map`], with lifts perturbed by a generator seeded from `seed`.
pub fn ch_of_map_seeded(a: &ModuleMorphism, seed: u64) -> Result<ChTriple> {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    ch_of_map_with(a, Some(&mut rng))
}

/// As [`ch_of_map`]; with `perturb`, every lift in the comparison is shifted
/// by a random admissible term.
pub fn ch_of_map_with(a: &ModuleMorphism, mut perturb: Option<&mut dyn RngCore>) -> Result<ChTriple> {
    let ring = a.source().ring();
    let a1 = a.source();
    let a0 = a.target();
    let coker: Cokernel = a.cokernel();
    let kernel: Kernel = a.kernel();
    let group = ext(2, &coker.module, &kernel.module)?;
    let res = &group.resolution;
    let m = &coker.module;
    let fail = |what: &str| Error::Invalid(format!("internal: cannot lift {what}"));

    // π ∘ L0 = aug
    let aug = res.augmentation.matrix();
    let sys = coker.projection.matrix().hstack(m.relations());
    let mut l0 = smith_normal_form(&sys).solve(aug).ok_or_else(|| fail("augmentation"))?.row_range(0, a0.generators());
    if let Some(rng) = perturb.as_deref_mut() {
        let shift = a.matrix().hstack(a0.relations());
        l0 = l0.add(&shift.mul(&random_matrix(ring, shift.cols(), res.ranks[0], rng)));
    }

    // a ∘ L1 = L0 ∘ d1 in A0
    let sys = a.matrix().hstack(a0.relations());
    let rhs = l0.mul(res.differential(1));
    let mut l1 = smith_normal_form(&sys).solve(&rhs).ok_or_else(|| fail("first syzygy"))?.row_range(0, a1.generators());
    if let Some(rng) = perturb.as_deref_mut() {
        let shift = kernel.inclusion.matrix().hstack(a1.relations());
        l1 = l1.add(&shift.mul(&random_matrix(ring, shift.cols(), res.ranks[1], rng)));
    }

    // L1 ∘ d2 lands in Ker a
    let image = l1.mul(res.differential(2));
    let cols: Option<Vec<Vec<BigInt>>> = image.columns().iter().map(|c| kernel.factor_element(c)).collect();
    let cols = cols.ok_or_else(|| fail("second syzygy"))?;
    let l2 = Matrix::from_columns(ring, kernel.module.generators(), &cols);
    let class = group.class_of(&l2)?;
    Ok(ChTriple {
        coker: coker.module.clone(),
        ker: kernel.module.clone(),
        class,
        projection: coker.projection.clone(),
        inclusion: kernel.inclusion.clone(),
    })
}

fn check_pair(f: &ModuleMorphism, g: &ModuleMorphism, src: &ChTriple, tgt: &ChTriple) -> Result<()> {
    if f.source() != &src.coker || f.target() != &tgt.coker {
        return Err(Error::Shape("f must map Coker of the source to Coker of the target".into()));
    }
    if g.source() != &src.ker || g.target() != &tgt.ker {
        return Err(Error::Shape("g must map Ker of the source to Ker of the target".into()));
    }
    Ok(())
}

/// The obstruction `f^*(x') - g_*(x)` in `Ext^2(M, N')`.
pub fn e_obstruction(f: &ModuleMorphism, g: &ModuleMorphism, src: &ChTriple, tgt: &ChTriple) -> Result<ExtElement> {
    check_pair(f, g, src, tgt)?;
    let mixed = ext_with_resolution(2, src.group().resolution.clone(), &tgt.ker)?;
    let pulled = tgt.group().pull_into(f, &tgt.class, &mixed, None)?;
    let pushed = src.group().push_into(g, &src.class, &mixed)?;
    pulled.sub(&pushed)
}

/// Whether `(f, g)` satisfies `f^*(x') = g_*(x)`.
pub fn e_morphism_check(f: &ModuleMorphism, g: &ModuleMorphism, src: &ChTriple, tgt: &ChTriple) -> Result<bool> {
    Ok(e_obstruction(f, g, src, tgt)?.is_zero())
}

/// A morphism of triples, checked at construction.
#[derive(Clone, Debug, Serialize)]
pub struct EMorphism {
    pub f: ModuleMorphism,
    pub g: ModuleMorphism,
    #[serde(skip)]
    pub source: ChTriple,
    #[serde(skip)]
    pub target: ChTriple,
}

impl EMorphism {
    pub fn new(f: ModuleMorphism, g: ModuleMorphism, source: ChTriple, target: ChTriple) -> Result<EMorphism> {
        if !e_morphism_check(&f, &g, &source, &target)? {
            return Err(Error::NotCommuting("f^*(x') differs from g_*(x)".into()));
        }
        Ok(EMorphism { f, g, source, target })
    }
}

/// Morphisms of triples `src → tgt` as the kernel of
/// `Hom(M, M') ⊕ Hom(N, N') → Ext^2(M, N')`, `(f, g) ↦ f^*(x') - g_*(x)`.
#[derive(Clone, Debug)]
pub struct HomE {
    pub source: ChTriple,
    pub target: ChTriple,
    pub hom_coker: HomGroup,
    pub hom_ker: HomGroup,
    pub module: FgModule,
    kernel: Kernel,
}

pub fn hom_e(src: &ChTriple, tgt: &ChTriple) -> Result<HomE> {
    let ring = src.coker.ring();
    let hm = hom_group(&src.coker, &tgt.coker)?;
    let hn = hom_group(&src.ker, &tgt.ker)?;
    let mixed = ext_with_resolution(2, src.group().resolution.clone(), &tgt.ker)?;
    let mut cols = Vec::new();
    for f in hm.basis() {
        cols.push(tgt.group().pull_into(&f, &tgt.class, &mixed, None)?.coordinates);
    }
    for g in hn.basis() {
        cols.push(src.group().push_into(&g, &src.class, &mixed)?.neg().coordinates);
    }
    let domain = hm.module.direct_sum(&hn.module)?;
    let theta = ModuleMorphism::new(domain, mixed.module.clone(), Matrix::from_columns(ring, mixed.module.generators(), &cols))?;
    let kernel = theta.kernel();
    Ok(HomE {
        source: src.clone(),
        target: tgt.clone(),
        module: kernel.module.clone(),
        hom_coker: hm,
        hom_ker: hn,
        kernel,
    })
}

impl HomE {
    /// The pair `(f, g)` with the given canonical coordinates.
    pub fn pair(&self, c: &[BigInt]) -> (ModuleMorphism, ModuleMorphism) {
        let v = self.kernel.inclusion.apply(c);
        let k = self.hom_coker.rank();
        let f = self.hom_coker.morphism(&self.hom_coker.module.coordinates(&v[..k]));
        let g = self.hom_ker.morphism(&self.hom_ker.module.coordinates(&v[k..]));
        (f, g)
    }

    pub fn coordinates(&self, f: &ModuleMorphism, g: &ModuleMorphism) -> Result<Vec<BigInt>> {
        let mut v = self.hom_coker.coordinates(f)?;
        v.extend(self.hom_ker.coordinates(g)?);
        self.kernel
            .factor_element(&v)
            .ok_or_else(|| Error::NotCommuting("pair is not a morphism of triples".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Z: Ring = Ring::Integers;
    const Z4: Ring = Ring::IntegersMod { m: 4 };

    fn times2(ring: Ring) -> ModuleMorphism {
        let r = FgModule::free(ring, 1);
        ModuleMorphism::new(r.clone(), r, Matrix::from_rows(ring, &[vec![2]])).unwrap()
    }

    #[test]
    fn epi_has_zero_class() {
        let r = FgModule::free(Z4, 2);
        let t = ch_of_map(&ModuleMorphism::identity(&r)).unwrap();
        assert!(t.coker.is_zero());
        assert!(t.class.is_zero());
    }

    #[test]
    fn times_two_mod_four_is_nonzero() {
        let t = ch_of_map(&times2(Z4)).unwrap();
        assert!(t.group().module.is_isomorphic(&FgModule::cyclic(Z4, 2)));
        assert!(!t.class.is_zero());
    }

    #[test]
    fn class_independent_of_lifts() {
        let a = times2(Z4);
        let base = ch_of_map(&a).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let t = ch_of_map_with(&a, Some(&mut rng)).unwrap();
            assert_eq!(t.class, base.class);
        }
    }

    #[test]
    fn integer_classes_vanish() {
        let z2 = FgModule::free(Z, 2);
        let a = ModuleMorphism::new(z2.clone(), z2, Matrix::from_rows(Z, &[vec![2, 0], vec![0, 0]])).unwrap();
        assert!(ch_of_map(&a).unwrap().class.is_zero());
    }

    #[test]
    fn e_morphism_examples() {
        let t = ch_of_map(&times2(Z4)).unwrap();
        let id_m = ModuleMorphism::identity(&t.coker);
        let id_n = ModuleMorphism::identity(&t.ker);
        assert!(e_morphism_check(&id_m, &id_n, &t, &t).unwrap());
        let zero_n = ModuleMorphism::zero(&t.ker, &t.ker);
        assert!(!e_morphism_check(&id_m, &zero_n, &t, &t).unwrap());
        assert!(EMorphism::new(id_m.clone(), zero_n, t.clone(), t.clone()).is_err());
        // End of (Z/2, Z/2, x ≠ 0): pairs (h, g) with h = g, so Z/2
        let h = hom_e(&t, &t).unwrap();
        assert!(h.module.is_isomorphic(&FgModule::cyclic(Z4, 2)));
        let c = h.coordinates(&id_m, &id_n).unwrap();
        let (f, g) = h.pair(&c);
        assert!(f.equals(&id_m) && g.equals(&id_n));
    }
}
