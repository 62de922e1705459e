use num_bigint::BigInt;

use super::{FgModule, Kernel, ModuleMorphism};
use crate::matrix::Matrix;
use crate::{Error, Result};

/// `Hom(M, N)` as a module, realized inside `N^g` (one image per generator of
/// `M`) as the kernel of restriction to the relations of `M`.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub source: FgModule,
    pub target: FgModule,
    pub module: FgModule,
    kernel: Kernel,
}

pub fn hom_group(source: &FgModule, target: &FgModule) -> Result<HomGroup> {
    if source.ring() != target.ring() {
        return Err(Error::RingMismatch(source.ring(), target.ring()));
    }
    let ring = source.ring();
    let g = source.generators();
    let r = source.relations().cols();
    let h = target.generators();
    let restrict = source.relations().transpose().kron(&Matrix::identity(ring, h));
    let ng = target.power(g);
    let nr = target.power(r);
    let kernel = ModuleMorphism::new_unchecked(ng, nr, restrict).kernel();
    Ok(HomGroup { source: source.clone(), target: target.clone(), module: kernel.module.clone(), kernel })
}

fn vectorize(m: &Matrix) -> Vec<BigInt> {
    m.columns().into_iter().flatten().collect()
}

impl HomGroup {
    pub fn rank(&self) -> usize {
        self.module.generators()
    }

    /// Morphism corresponding to canonical coordinates `c`.
    pub fn morphism(&self, c: &[BigInt]) -> ModuleMorphism {
        let ring = self.source.ring();
        let v = self.kernel.inclusion.apply(c);
        let h = self.target.generators();
        let cols: Vec<Vec<BigInt>> =
            (0..self.source.generators()).map(|j| v[j * h..(j + 1) * h].to_vec()).collect();
        let mx = Matrix::from_columns(ring, h, &cols);
        ModuleMorphism::new_unchecked(self.source.clone(), self.target.clone(), mx)
    }

    /// Representatives of the generators of the hom module.
    pub fn basis(&self) -> Vec<ModuleMorphism> {
        let ring = self.source.ring();
        (0..self.rank())
            .map(|i| {
                let mut e = vec![BigInt::from(0); self.rank()];
                e[i] = ring.from_i64(1);
                self.morphism(&e)
            })
            .collect()
    }

    pub fn coordinates(&self, f: &ModuleMorphism) -> Result<Vec<BigInt>> {
        if f.source() != &self.source || f.target() != &self.target {
            return Err(Error::Shape("morphism does not belong to this hom group".into()));
        }
        self.kernel
            .factor_element(&vectorize(f.matrix()))
            .ok_or_else(|| Error::IllDefined("matrix is not a module map".into()))
    }

    /// Evaluation of a morphism given by coordinates at an element of the source.
    pub fn evaluate(&self, c: &[BigInt], x: &[BigInt]) -> Vec<BigInt> {
        self.morphism(c).apply(x)
    }

    /// Module map `self.module → other.module` induced by a function on
    /// morphisms, which must be additive.
    pub fn induced_map<F>(&self, other: &HomGroup, f: F) -> Result<ModuleMorphism>
    where
        F: Fn(&ModuleMorphism) -> Result<ModuleMorphism>,
    {
        let cols: Result<Vec<Vec<BigInt>>> = self.basis().iter().map(|b| other.coordinates(&f(b)?)).collect();
        let mx = Matrix::from_columns(self.source.ring(), other.rank(), &cols?);
        ModuleMorphism::new(self.module.clone(), other.module.clone(), mx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    const Z: Ring = Ring::Integers;

    /// Brute-force count of well-defined maps Z/a → Z/b given by 1 ↦ k, k in 0..b.
    fn brute_hom_count(a: i64, b: i64) -> usize {
        (0..b).filter(|k| (a * k) % b == 0).count()
    }

    #[test]
    fn hom_examples() {
        let z = FgModule::free(Z, 1);
        let h = hom_group(&z, &z).unwrap();
        assert!(h.module.is_isomorphic(&z));
        let h = hom_group(&FgModule::cyclic(Z, 2), &FgModule::cyclic(Z, 4)).unwrap();
        assert_eq!(h.module.order(), Some(BigInt::from(brute_hom_count(2, 4))));
        assert!(h.module.is_isomorphic(&FgModule::cyclic(Z, 2)));
        let h = hom_group(&FgModule::cyclic(Z, 2), &FgModule::cyclic(Z, 3)).unwrap();
        assert_eq!(brute_hom_count(2, 3), 1);
        assert!(h.module.is_zero());
    }

    #[test]
    fn coordinates_invert_morphism() {
        let m = FgModule::cyclic(Z, 6).direct_sum(&FgModule::free(Z, 1)).unwrap();
        let n = FgModule::cyclic(Z, 4).direct_sum(&FgModule::cyclic(Z, 9)).unwrap();
        let h = hom_group(&m, &n).unwrap();
        for f in h.basis() {
            let c = h.coordinates(&f).unwrap();
            assert!(h.morphism(&c).equals(&f));
        }
        // Hom(Z/6 + Z, Z/4 + Z/9) = Z/2 + Z/3 + Z/4 + Z/9
        assert_eq!(h.module.order(), Some(BigInt::from(2 * 3 * 4 * 9)));
    }

    #[test]
    fn zero_generator_modules() {
        let zero = FgModule::zero(Z);
        let m = FgModule::cyclic(Z, 5);
        assert!(hom_group(&zero, &m).unwrap().module.is_zero());
        let h = hom_group(&m, &zero).unwrap();
        assert!(h.module.is_zero());
        assert!(h.basis().is_empty());
    }
}
