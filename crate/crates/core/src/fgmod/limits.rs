//! Kernels, cokernels, pullbacks and pushouts, each with its universal
//! factorization.

use std::sync::OnceLock;

use num_bigint::BigInt;

use super::{FgModule, ModuleMorphism};
use crate::matrix::Matrix;
use crate::snf::{nullspace, smith_normal_form, SmithDecomposition};
use crate::{Error, Result};

/// `ι: K → source` with `f ∘ ι = 0`, universal. `K` is presented by its
/// invariant factors.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub module: FgModule,
    pub inclusion: ModuleMorphism,
    map: ModuleMorphism,
    lift: OnceLock<SmithDecomposition>,
}

impl Kernel {
    pub(crate) fn of(f: &ModuleMorphism) -> Kernel {
        let m = f.source();
        let n = f.target();
        let ring = m.ring();
        let g = m.generators();
        // x with F x ∈ im(P_N)
        let ns = nullspace(&f.matrix().hstack(n.relations()));
        let gens = ns.row_range(0, g);
        Kernel::generated_by(m, gens, f.clone(), ring)
    }

    /// Submodule of `ambient` generated by the columns of `gens`.
    fn generated_by(ambient: &FgModule, gens: Matrix, map: ModuleMorphism, ring: crate::Ring) -> Kernel {
        let w = gens.cols();
        let rel = nullspace(&gens.hstack(ambient.relations())).row_range(0, w);
        let raw = FgModule::new(ring, w, rel).unwrap();
        let simp = raw.simplify();
        let inclusion = ModuleMorphism::new_unchecked(simp.module.clone(), ambient.clone(), gens.mul(&simp.from));
        Kernel { module: simp.module, inclusion, map, lift: OnceLock::new() }
    }

    pub fn map(&self) -> &ModuleMorphism {
        &self.map
    }

    fn lift(&self) -> &SmithDecomposition {
        self.lift.get_or_init(|| {
            smith_normal_form(&self.inclusion.matrix().hstack(self.inclusion.target().relations()))
        })
    }

    /// Canonical coordinates in `K` of an element of the source killed by `f`.
    pub fn factor_element(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let x = self.lift().solve_vec(v)?;
        Some(self.module.coordinates(&x[..self.module.generators()]))
    }

    /// The unique `u` with `ι ∘ u = t`, for `t` with `f ∘ t = 0`.
    pub fn factor(&self, t: &ModuleMorphism) -> Result<ModuleMorphism> {
        if t.target() != self.inclusion.target() {
            return Err(Error::Shape("kernel factorization: wrong codomain".into()));
        }
        let cols: Option<Vec<Vec<BigInt>>> = t.matrix().columns().iter().map(|c| self.factor_element(c)).collect();
        let cols = cols.ok_or_else(|| Error::IllDefined("map does not land in the kernel".into()))?;
        let mx = Matrix::from_columns(self.module.ring(), self.module.generators(), &cols);
        ModuleMorphism::new(t.source().clone(), self.module.clone(), mx)
    }
}

/// `π: target → C` with `π ∘ f = 0`, universal. `C` is presented by its
/// invariant factors; `section` sends its generators back to representatives.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub module: FgModule,
    pub projection: ModuleMorphism,
    pub section: Matrix,
    map: ModuleMorphism,
}

impl Cokernel {
    pub(crate) fn of(f: &ModuleMorphism) -> Cokernel {
        let n = f.target();
        let ring = n.ring();
        let raw = FgModule::new(ring, n.generators(), n.relations().hstack(f.matrix())).unwrap();
        let simp = raw.simplify();
        let projection = ModuleMorphism::new_unchecked(n.clone(), simp.module.clone(), simp.to);
        Cokernel { module: simp.module, projection, section: simp.from, map: f.clone() }
    }

    pub fn map(&self) -> &ModuleMorphism {
        &self.map
    }

    /// The unique `u` with `u ∘ π = t`, for `t` with `t ∘ f = 0`.
    pub fn factor(&self, t: &ModuleMorphism) -> Result<ModuleMorphism> {
        if t.source() != self.projection.source() {
            return Err(Error::Shape("cokernel factorization: wrong domain".into()));
        }
        if !t.compose(&self.map)?.is_zero() {
            return Err(Error::IllDefined("map does not vanish on the image".into()));
        }
        ModuleMorphism::new(self.module.clone(), t.target().clone(), t.matrix().mul(&self.section))
    }

    /// Representative in the target of the element with canonical coordinates `c`.
    pub fn lift_element(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.section.mul_vec(c)
    }
}

/// `P` with `f ∘ p_a = g ∘ p_b`, computed as the kernel of `(f, -g)`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub module: FgModule,
    pub p_a: ModuleMorphism,
    pub p_b: ModuleMorphism,
    kernel: Kernel,
}

pub fn pullback(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::Shape("pullback needs a common target".into()));
    }
    let joined = f.hjoin(&g.neg())?;
    let kernel = joined.kernel();
    let ga = f.source().generators();
    let gb = g.source().generators();
    let incl = kernel.inclusion.matrix();
    let p_a = ModuleMorphism::new_unchecked(kernel.module.clone(), f.source().clone(), incl.row_range(0, ga));
    let p_b = ModuleMorphism::new_unchecked(kernel.module.clone(), g.source().clone(), incl.row_range(ga, ga + gb));
    Ok(Pullback { module: kernel.module.clone(), p_a, p_b, kernel })
}

impl Pullback {
    /// The unique map `X → P` induced by `u: X → A`, `v: X → B` with `f u = g v`.
    pub fn factor(&self, u: &ModuleMorphism, v: &ModuleMorphism) -> Result<ModuleMorphism> {
        self.kernel.factor(&u.vjoin(v)?)
    }
}

/// `Q` with `i_a ∘ f = i_b ∘ g`, computed as the cokernel of `(f; -g)`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub module: FgModule,
    pub i_a: ModuleMorphism,
    pub i_b: ModuleMorphism,
    cokernel: Cokernel,
}

pub fn pushout(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::Shape("pushout needs a common source".into()));
    }
    let joined = f.vjoin(&g.neg())?;
    let cokernel = joined.cokernel();
    let ga = f.target().generators();
    let gb = g.target().generators();
    let proj = cokernel.projection.matrix();
    let i_a = ModuleMorphism::new_unchecked(f.target().clone(), cokernel.module.clone(), proj.col_range(0, ga));
    let i_b = ModuleMorphism::new_unchecked(g.target().clone(), cokernel.module.clone(), proj.col_range(ga, ga + gb));
    Ok(Pushout { module: cokernel.module.clone(), i_a, i_b, cokernel })
}

impl Pushout {
    /// The unique map `Q → Y` induced by `u: A → Y`, `v: B → Y` with `u f = v g`.
    pub fn factor(&self, u: &ModuleMorphism, v: &ModuleMorphism) -> Result<ModuleMorphism> {
        self.cokernel.factor(&u.hjoin(v)?)
    }
}
