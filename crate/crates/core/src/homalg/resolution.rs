use num_bigint::BigInt;
use rand::{Rng, RngCore};
use serde::Serialize;

use crate::fgmod::{FgModule, ModuleMorphism};
use crate::matrix::Matrix;
use crate::snf::{nullspace, smith_normal_form};
use crate::{Error, Result};

/// `... → F_2 → F_1 → F_0 → M → 0` with every `F_i = R^{k_i}`.
///
/// `F_0 → F_1` comes from the invariant-factor presentation of `M`, so over
/// `Z` the resolution always stops after `F_1`.
#[derive(Clone, Debug, Serialize)]
pub struct FreeResolution {
    pub module: FgModule,
    pub ranks: Vec<usize>,
    /// `differentials[i]` is `d_{i+1}: F_{i+1} → F_i`.
    pub differentials: Vec<Matrix>,
    pub augmentation: ModuleMorphism,
}

pub fn free_resolution(module: &FgModule, length: usize) -> Result<FreeResolution> {
    if length == 0 {
        return Err(Error::Invalid("resolution length must be at least 1".into()));
    }
    let ring = module.ring();
    let simp = module.simplify();
    let k0 = simp.module.generators();
    let augmentation = ModuleMorphism::new(FgModule::free(ring, k0), module.clone(), simp.from)?;
    let d1 = simp.module.relations().clone();
    let mut ranks = vec![k0, d1.cols()];
    let mut differentials = vec![d1];
    while differentials.len() < length {
        let next = nullspace(differentials.last().unwrap());
        ranks.push(next.cols());
        differentials.push(next);
    }
    Ok(FreeResolution { module: module.clone(), ranks, differentials, augmentation })
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    pub fn free_module(&self, i: usize) -> FgModule {
        FgModule::free(self.module.ring(), self.ranks[i])
    }

    /// `d_i: F_i → F_{i-1}` for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> &Matrix {
        &self.differentials[i - 1]
    }

    /// Checks `d∘d = 0`, exactness at each `F_i` and exactness at `F_0 → M`.
    pub fn verify(&self) -> Result<()> {
        if !self.augmentation.is_epi() {
            return Err(Error::Invalid("augmentation is not onto".into()));
        }
        // ker(aug) = im(d_1)
        let kaug = self.augmentation.kernel();
        let d1 = self.differential(1);
        let sd1 = smith_normal_form(d1);
        for col in kaug.inclusion.matrix().columns() {
            if sd1.solve_vec(&col).is_none() {
                return Err(Error::Invalid("kernel of augmentation not covered by d_1".into()));
            }
        }
        if !self.augmentation.matrix().mul(d1).columns().iter().all(|c| self.module.is_zero_element(c)) {
            return Err(Error::Invalid("augmentation ∘ d_1 ≠ 0".into()));
        }
        for i in 1..self.length() {
            let d = self.differential(i);
            let dn = self.differential(i + 1);
            if !d.mul(dn).is_zero() {
                return Err(Error::Invalid(format!("d_{i} ∘ d_{} ≠ 0", i + 1)));
            }
            let sdn = smith_normal_form(dn);
            for col in nullspace(d).columns() {
                if sdn.solve_vec(&col).is_none() {
                    return Err(Error::Invalid(format!("not exact at F_{i}")));
                }
            }
        }
        Ok(())
    }
}

fn random_matrix(ring: crate::Ring, rows: usize, cols: usize, rng: &mut dyn RngCore) -> Matrix {
    let entries = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
    Matrix::from_vec(ring, rows, cols, entries).unwrap()
}

/// Chain map `L_i: F'_i → F_i` over `h: M' → M`, for `i = 0..=depth`.
///
/// With `perturb`, a random element of the solution set is added at every
/// stage, giving an independent lift of the same map.
pub fn lift_chain_map(
    h: &ModuleMorphism,
    from: &FreeResolution,
    to: &FreeResolution,
    depth: usize,
    mut perturb: Option<&mut dyn RngCore>,
) -> Result<Vec<Matrix>> {
    if h.source() != &from.module || h.target() != &to.module {
        return Err(Error::Shape("chain-map lift: map does not match the resolutions".into()));
    }
    if depth > from.length() || depth > to.length() {
        return Err(Error::Invalid("chain-map lift deeper than the resolutions".into()));
    }
    let ring = h.source().ring();
    let m = &to.module;
    // aug ∘ L0 = h ∘ aug'
    let rhs = h.matrix().mul(from.augmentation.matrix());
    let stacked = to.augmentation.matrix().hstack(m.relations());
    let x = smith_normal_form(&stacked)
        .solve(&rhs)
        .ok_or_else(|| Error::Invalid("internal: cannot lift through augmentation".into()))?;
    let mut l0 = x.row_range(0, to.ranks[0]);
    if let Some(rng) = perturb.as_deref_mut() {
        let d1 = to.differential(1);
        l0 = l0.add(&d1.mul(&random_matrix(ring, d1.cols(), from.ranks[0], rng)));
    }
    let mut lifts = vec![l0];
    for i in 1..=depth {
        let d = to.differential(i);
        let rhs = lifts[i - 1].mul(from.differential(i));
        let snf = smith_normal_form(d);
        let mut li = snf
            .solve(&rhs)
            .ok_or_else(|| Error::Invalid(format!("internal: cannot lift chain map at degree {i}")))?;
        if let Some(rng) = perturb.as_deref_mut() {
            let ns = snf.nullspace();
            li = li.add(&ns.mul(&random_matrix(ring, ns.cols(), from.ranks[i], rng)));
        }
        lifts.push(li);
    }
    Ok(lifts)
}
