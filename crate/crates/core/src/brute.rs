//! Brute-force oracles over `Z/m`: modules as explicit coset tables, maps as
//! lists of generator images, and exhaustive counts of morphisms, homotopy
//! classes and (co)cones. Nothing here uses Smith normal form.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arrow2::{ArrowMorphism, ArrowObject};
use crate::fgmod::FgModule;
use crate::matrix::Matrix;
use crate::{Error, Result};

/// Upper bound on `m^g` for a tabulated module.
pub const AMBIENT_LIMIT: u64 = 4096;

/// `(Z/m)^g / span(relations)` with every element a canonical coset index.
#[derive(Clone, Debug)]
pub struct BruteModule {
    m: u64,
    g: usize,
    /// Coset index of every vector of `(Z/m)^g`, in odometer order.
    coset: Vec<usize>,
    /// Lexicographically least vector of each coset.
    reps: Vec<Vec<u64>>,
    add: Vec<Vec<usize>>,
}

fn encode(v: &[u64], m: u64) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * m as usize + x as usize)
}

fn decode(mut k: usize, m: u64, g: usize) -> Vec<u64> {
    let mut v = vec![0u64; g];
    for x in v.iter_mut().rev() {
        *x = (k % m as usize) as u64;
        k /= m as usize;
    }
    v
}

fn residue(x: &BigInt, m: u64) -> u64 {
    let r = x % BigInt::from(m);
    let r = if r < BigInt::from(0) { r + BigInt::from(m) } else { r };
    r.to_u64().unwrap()
}

impl BruteModule {
    pub fn new(module: &FgModule) -> Result<BruteModule> {
        let m = module
            .ring()
            .modulus()
            .ok_or_else(|| Error::Invalid("brute-force tables need a finite ring".into()))?;
        let g = module.generators();
        let ambient = (m as u128).pow(g as u32);
        if ambient > AMBIENT_LIMIT as u128 {
            return Err(Error::BoundExceeded { size: ambient.to_string(), bound: AMBIENT_LIMIT });
        }
        let n = ambient as usize;
        let columns: Vec<Vec<u64>> = module.relations().columns().iter().map(|c| c.iter().map(|x| residue(x, m)).collect()).collect();
        // subgroup generated by the relation columns
        let mut span: HashSet<Vec<u64>> = HashSet::from([vec![0; g]]);
        let mut frontier = vec![vec![0; g]];
        while let Some(v) = frontier.pop() {
            for c in &columns {
                let w: Vec<u64> = v.iter().zip(c).map(|(a, b)| (a + b) % m).collect();
                if span.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        let span: Vec<Vec<u64>> = span.into_iter().collect();
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for k in 0..n {
            if coset[k] != usize::MAX {
                continue;
            }
            let v = decode(k, m, g);
            for s in &span {
                let w: Vec<u64> = v.iter().zip(s).map(|(a, b)| (a + b) % m).collect();
                coset[encode(&w, m)] = reps.len();
            }
            reps.push(v);
        }
        let mut bm = BruteModule { m, g, coset, reps, add: Vec::new() };
        let size = bm.reps.len();
        bm.add = (0..size).map(|i| (0..size).map(|j| bm.sum_raw(i, j)).collect()).collect();
        Ok(bm)
    }

    fn sum_raw(&self, i: usize, j: usize) -> usize {
        let w: Vec<u64> = self.reps[i].iter().zip(&self.reps[j]).map(|(a, b)| (a + b) % self.m).collect();
        self.coset[encode(&w, self.m)]
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn generators(&self) -> usize {
        self.g
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i][j]
    }

    pub fn scale(&self, k: u64, i: usize) -> usize {
        let w: Vec<u64> = self.reps[i].iter().map(|a| (a * (k % self.m)) % self.m).collect();
        self.coset[encode(&w, self.m)]
    }

    pub fn element(&self, v: &[BigInt]) -> usize {
        let w: Vec<u64> = v.iter().map(|x| residue(x, self.m)).collect();
        self.coset[encode(&w, self.m)]
    }

    pub fn generator(&self, k: usize) -> usize {
        let mut w = vec![0; self.g];
        w[k] = 1 % self.m;
        self.coset[encode(&w, self.m)]
    }

    pub fn representative(&self, i: usize) -> &[u64] {
        &self.reps[i]
    }

    /// Image of element `i` under the map sending generator `k` to `images[k]`.
    pub fn apply(&self, target: &BruteModule, images: &[usize], i: usize) -> usize {
        let mut acc = target.zero();
        for (k, &c) in self.reps[i].iter().enumerate() {
            if c != 0 {
                acc = target.add(acc, target.scale(c, images[k]));
            }
        }
        acc
    }

    fn sends_relations_to_zero(&self, source: &FgModule, target: &BruteModule, images: &[usize]) -> bool {
        source.relations().columns().iter().all(|col| {
            let mut acc = target.zero();
            for (k, x) in col.iter().enumerate() {
                acc = target.add(acc, target.scale(residue(x, self.m), images[k]));
            }
            acc == target.zero()
        })
    }
}

/// A tabulated module together with its presentation.
#[derive(Clone, Debug)]
pub struct Tab {
    pub module: FgModule,
    pub table: BruteModule,
}

impl Tab {
    pub fn new(module: &FgModule) -> Result<Tab> {
        Ok(Tab { module: module.clone(), table: BruteModule::new(module)? })
    }
}

/// A module map as the list of generator images.
pub type BruteMap = Vec<usize>;

/// Every module map `source → target`; fails when there are more than `limit` candidates.
pub fn all_maps(source: &Tab, target: &Tab, limit: u64) -> Result<Vec<BruteMap>> {
    let n = target.table.order() as u128;
    let g = source.table.generators() as u32;
    let candidates = n.pow(g);
    if candidates > limit as u128 {
        return Err(Error::BoundExceeded { size: candidates.to_string(), bound: limit });
    }
    let mut out = Vec::new();
    for k in 0..candidates as usize {
        let mut images = vec![0usize; g as usize];
        let mut r = k;
        for x in images.iter_mut().rev() {
            *x = r % n as usize;
            r /= n as usize;
        }
        if source.table.sends_relations_to_zero(&source.module, &target.table, &images) {
            out.push(images);
        }
    }
    Ok(out)
}

/// `outer ∘ inner` for `inner: a → b`, `outer: b → c`.
pub fn compose(b: &Tab, c: &Tab, outer: &BruteMap, inner: &BruteMap) -> BruteMap {
    inner.iter().map(|&y| b.table.apply(&c.table, outer, y)).collect()
}

pub fn map_add(t: &Tab, f: &BruteMap, g: &BruteMap) -> BruteMap {
    f.iter().zip(g).map(|(&x, &y)| t.table.add(x, y)).collect()
}

pub fn map_double(t: &Tab, f: &BruteMap) -> BruteMap {
    map_add(t, f, f)
}

pub fn map_is_zero(f: &BruteMap) -> bool {
    f.iter().all(|&x| x == 0)
}

/// The map given by a matrix (columns are generator images).
pub fn from_matrix(target: &Tab, m: &Matrix) -> BruteMap {
    m.columns().iter().map(|c| target.table.element(c)).collect()
}

/// Matrix of canonical representatives of the generator images.
pub fn to_matrix(target: &Tab, f: &BruteMap) -> Matrix {
    let ring = target.module.ring();
    let cols: Vec<Vec<BigInt>> =
        f.iter().map(|&i| target.table.representative(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
    Matrix::from_columns(ring, target.module.generators(), &cols)
}

/// Order and number of elements of order dividing 2 of a finite group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupShape {
    pub order: u64,
    pub two_torsion: u64,
}

/// Shape of a module computed from its invariant factors.
pub fn shape_of(module: &FgModule) -> Option<GroupShape> {
    let mut order = 1u64;
    let mut two_torsion = 1u64;
    for d in module.invariant_factors() {
        let n = module.ring().quotient_order(d)?.to_u64()?;
        order *= n;
        if n % 2 == 0 {
            two_torsion *= 2;
        }
    }
    Some(GroupShape { order, two_torsion })
}

fn arrow_tabs(a: &ArrowObject) -> Result<(Tab, Tab)> {
    Ok((Tab::new(a.a1())?, Tab::new(a.a0())?))
}

/// `|π0|` of the hom-groupoid `a → b` as the number of commuting squares
/// divided by the number of null-homotopic ones.
pub fn count_pi0(a: &ArrowObject, b: &ArrowObject, limit: u64) -> Result<u64> {
    let (a1, a0) = arrow_tabs(a)?;
    let (b1, b0) = arrow_tabs(b)?;
    let am = from_matrix(&a0, a.a().matrix());
    let bm = from_matrix(&b0, b.a().matrix());
    let f0s = all_maps(&a0, &b0, limit)?;
    let f1s = all_maps(&a1, &b1, limit)?;
    let alphas = all_maps(&a0, &b1, limit)?;
    let mut by_key: HashMap<BruteMap, u64> = HashMap::new();
    for f1 in &f1s {
        *by_key.entry(compose(&b1, &b0, &bm, f1)).or_default() += 1;
    }
    let squares: u64 = f0s.iter().map(|f0| by_key.get(&compose(&a0, &b0, f0, &am)).copied().unwrap_or(0)).sum();
    let nullhomotopic: HashSet<(BruteMap, BruteMap)> =
        alphas.iter().map(|al| (compose(&b1, &b0, &bm, al), compose(&a0, &b1, al, &am))).collect();
    Ok(squares / nullhomotopic.len() as u64)
}

/// Every commuting square `a → b` as `(f0, f1)` matrices.
pub fn all_squares(a: &ArrowObject, b: &ArrowObject, limit: u64) -> Result<Vec<ArrowMorphism>> {
    let (a1, a0) = arrow_tabs(a)?;
    let (b1, b0) = arrow_tabs(b)?;
    let am = from_matrix(&a0, a.a().matrix());
    let bm = from_matrix(&b0, b.a().matrix());
    let f0s = all_maps(&a0, &b0, limit)?;
    let f1s = all_maps(&a1, &b1, limit)?;
    let mut out = Vec::new();
    for f0 in &f0s {
        let left = compose(&a0, &b0, f0, &am);
        for f1 in &f1s {
            if compose(&b1, &b0, &bm, f1) == left {
                out.push(ArrowMorphism::from_matrices(a, b, to_matrix(&b0, f0), to_matrix(&b1, f1))?);
            }
        }
    }
    Ok(out)
}

/// `π0`, `π1` shapes of a groupoid presented as a group of objects acted on
/// by translation through a homomorphism from a group of arrows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupoidShape {
    pub pi0: GroupShape,
    pub pi1: GroupShape,
}

struct Action<T> {
    objects: Vec<T>,
    image: HashSet<T>,
    stabilizer: u64,
    stabilizer_two: u64,
}

fn shape<T: std::hash::Hash + Eq, D: Fn(&T) -> T>(act: Action<T>, double: D) -> GroupoidShape {
    let im = act.image.len() as u64;
    let pi0_two = act.objects.iter().filter(|o| act.image.contains(&double(o))).count() as u64;
    GroupoidShape {
        pi0: GroupShape { order: act.objects.len() as u64 / im, two_torsion: pi0_two / im },
        pi1: GroupShape { order: act.stabilizer, two_torsion: act.stabilizer_two },
    }
}

type Triple = (BruteMap, BruteMap, BruteMap);

/// Shapes of the 2-kernel groupoid of `Hom(x, a) → Hom(x, b)` induced by `f`:
/// objects `(u0, u1, β)` with `u0 x = a u1`, `f1 u1 = β x`, `f0 u0 = b β`;
/// `γ: X0 → A1` acts by `(aγ, γx, f1γ)`.
pub fn cone_shape(f: &ArrowMorphism, x: &ArrowObject, limit: u64) -> Result<GroupoidShape> {
    let a = f.source();
    let b = f.target();
    let (a1, a0) = arrow_tabs(a)?;
    let (b1, b0) = arrow_tabs(b)?;
    let (x1, x0) = arrow_tabs(x)?;
    let am = from_matrix(&a0, a.a().matrix());
    let bm = from_matrix(&b0, b.a().matrix());
    let xm = from_matrix(&x0, x.a().matrix());
    let f0 = from_matrix(&b0, f.f0().matrix());
    let f1 = from_matrix(&b1, f.f1().matrix());
    let u0s = all_maps(&x0, &a0, limit)?;
    let u1s = all_maps(&x1, &a1, limit)?;
    let betas = all_maps(&x0, &b1, limit)?;
    let gammas = all_maps(&x0, &a1, limit)?;

    let mut u1_by: HashMap<BruteMap, Vec<&BruteMap>> = HashMap::new();
    for u1 in &u1s {
        u1_by.entry(compose(&a1, &a0, &am, u1)).or_default().push(u1);
    }
    let mut beta_by: HashMap<(BruteMap, BruteMap), Vec<&BruteMap>> = HashMap::new();
    for be in &betas {
        beta_by.entry((compose(&x0, &b1, be, &xm), compose(&b1, &b0, &bm, be))).or_default().push(be);
    }
    let mut objects: Vec<Triple> = Vec::new();
    for u0 in &u0s {
        let Some(matches) = u1_by.get(&compose(&x0, &a0, u0, &xm)) else { continue };
        let f0u0 = compose(&a0, &b0, &f0, u0);
        for u1 in matches {
            let key = (compose(&a1, &b1, &f1, u1), f0u0.clone());
            if let Some(bs) = beta_by.get(&key) {
                for be in bs {
                    objects.push((u0.clone(), (*u1).clone(), (*be).clone()));
                }
            }
        }
    }
    let mut image = HashSet::new();
    let (mut stab, mut stab2) = (0, 0);
    for ga in &gammas {
        let t = (compose(&a1, &a0, &am, ga), compose(&x0, &a1, ga, &xm), compose(&a1, &b1, &f1, ga));
        if map_is_zero(&t.0) && map_is_zero(&t.1) && map_is_zero(&t.2) {
            stab += 1;
            if map_is_zero(&map_double(&a1, ga)) {
                stab2 += 1;
            }
        }
        image.insert(t);
    }
    let act = Action { objects, image, stabilizer: stab, stabilizer_two: stab2 };
    Ok(shape(act, |(p, q, r)| (map_double(&a0, p), map_double(&a1, q), map_double(&b1, r))))
}

/// Shapes of the 2-kernel groupoid of `Hom(b, x) → Hom(a, x)` induced by `f`:
/// objects `(v0, v1, δ)` with `v0 b = x v1`, `v1 f1 = δ a`, `v0 f0 = x δ`;
/// `γ: B0 → X1` acts by `(xγ, γb, γf0)`.
pub fn cocone_shape(f: &ArrowMorphism, x: &ArrowObject, limit: u64) -> Result<GroupoidShape> {
    let a = f.source();
    let b = f.target();
    let (_, a0) = arrow_tabs(a)?;
    let (b1, b0) = arrow_tabs(b)?;
    let (x1, x0) = arrow_tabs(x)?;
    let am = from_matrix(&a0, a.a().matrix());
    let bm = from_matrix(&b0, b.a().matrix());
    let xm = from_matrix(&x0, x.a().matrix());
    let f0 = from_matrix(&b0, f.f0().matrix());
    let f1 = from_matrix(&b1, f.f1().matrix());
    let v0s = all_maps(&b0, &x0, limit)?;
    let v1s = all_maps(&b1, &x1, limit)?;
    let deltas = all_maps(&a0, &x1, limit)?;
    let gammas = all_maps(&b0, &x1, limit)?;

    let mut v1_by: HashMap<BruteMap, Vec<&BruteMap>> = HashMap::new();
    for v1 in &v1s {
        v1_by.entry(compose(&x1, &x0, &xm, v1)).or_default().push(v1);
    }
    let mut delta_by: HashMap<(BruteMap, BruteMap), Vec<&BruteMap>> = HashMap::new();
    for de in &deltas {
        delta_by.entry((compose(&a0, &x1, de, &am), compose(&x1, &x0, &xm, de))).or_default().push(de);
    }
    let mut objects: Vec<Triple> = Vec::new();
    for v0 in &v0s {
        let Some(matches) = v1_by.get(&compose(&b0, &x0, v0, &bm)) else { continue };
        let v0f0 = compose(&b0, &x0, v0, &f0);
        for v1 in matches {
            let key = (compose(&b1, &x1, v1, &f1), v0f0.clone());
            if let Some(ds) = delta_by.get(&key) {
                for de in ds {
                    objects.push((v0.clone(), (*v1).clone(), (*de).clone()));
                }
            }
        }
    }
    let mut image = HashSet::new();
    let (mut stab, mut stab2) = (0, 0);
    for ga in &gammas {
        let t = (compose(&x1, &x0, &xm, ga), compose(&b0, &x1, ga, &bm), compose(&b0, &x1, ga, &f0));
        if map_is_zero(&t.0) && map_is_zero(&t.1) && map_is_zero(&t.2) {
            stab += 1;
            if map_is_zero(&map_double(&x1, ga)) {
                stab2 += 1;
            }
        }
        image.insert(t);
    }
    let act = Action { objects, image, stabilizer: stab, stabilizer_two: stab2 };
    Ok(shape(act, |(p, q, r)| (map_double(&x0, p), map_double(&x1, q), map_double(&x1, r))))
}
