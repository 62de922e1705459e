//! Checker for the six bracket identities of a symmetric categorical group
//! presented as `(∂: C_ee → C_e, {-,-}: C_e × C_e → C_ee)` over finite groups.
//!
//! Groups are multiplication tables on `0..n`, written multiplicatively.

use serde::{Deserialize, Deserializer, Serialize};

use crate::fgmod::enumeration_bound;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup(format!("table is not an {n}x{n} table over 0..{n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
            inverse.push(inv);
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({x}, {y}, {z})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, table, identity, inverse })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    /// `Z/n` with `i · j = i + j mod n`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::from_table(table).unwrap()
    }

    /// Permutations of three letters, in lexicographic order, composed as `(p · q)(i) = p(q(i))`.
    pub fn symmetric3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        FiniteGroup::from_table(table).unwrap()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&v| v < target.order)
            && (0..self.order).all(|x| (0..self.order).all(|y| map[self.mul(x, y)] == target.mul(map[x], map[y])))
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            table: Vec<Vec<usize>>,
        }
        FiniteGroup::from_table(Repr::deserialize(d)?.table).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScgData {
    pub ce: FiniteGroup,
    pub cee: FiniteGroup,
    /// `boundary[a]` is `∂a`.
    pub boundary: Vec<usize>,
    /// `bracket[x][y]` is `{x, y}`.
    pub bracket: Vec<Vec<usize>>,
}

impl ScgData {
    pub fn new(ce: FiniteGroup, cee: FiniteGroup, boundary: Vec<usize>, bracket: Vec<Vec<usize>>) -> Result<ScgData> {
        if !cee.is_homomorphism(&ce, &boundary) {
            return Err(Error::InvalidGroup("boundary is not a homomorphism C_ee → C_e".into()));
        }
        if bracket.len() != ce.order || bracket.iter().any(|r| r.len() != ce.order || r.iter().any(|&v| v >= cee.order)) {
            return Err(Error::InvalidGroup("bracket is not a map C_e × C_e → C_ee".into()));
        }
        Ok(ScgData { ce, cee, boundary, bracket })
    }
}

impl<'de> Deserialize<'de> for ScgData {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            ce: FiniteGroup,
            cee: FiniteGroup,
            boundary: Vec<usize>,
            bracket: Vec<Vec<usize>>,
        }
        let r = Repr::deserialize(d)?;
        ScgData::new(r.ce, r.cee, r.boundary, r.bracket).map_err(serde::de::Error::custom)
    }
}

/// A failed identity: axiom number `1..=6` and the elements it fails at,
/// `(x, y)`, `(a, b)`, `(a, x)`, `(x, y, z)`, `(x, y, z)`, `(x, y)` respectively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: u8,
    pub witnesses: Vec<usize>,
}

fn verify_cost(ce: usize, cee: usize) -> u128 {
    let (e, ee) = (ce as u128, cee as u128);
    2 * e * e + ee * ee + ee * e + 2 * e * e * e
}

/// Every violated instance of the six identities, checked exhaustively.
pub fn scg_verify(data: &ScgData) -> Result<Vec<Violation>> {
    scg_verify_bounded(data, enumeration_bound())
}

pub fn scg_verify_bounded(data: &ScgData, bound: u64) -> Result<Vec<Violation>> {
    let cost = verify_cost(data.ce.order, data.cee.order);
    if cost > bound as u128 {
        return Err(Error::BoundExceeded { size: cost.to_string(), bound });
    }
    Ok(violations(data, false))
}

fn violations(data: &ScgData, stop_at_first: bool) -> Vec<Violation> {
    let ce = &data.ce;
    let cee = &data.cee;
    let d = |a: usize| data.boundary[a];
    let br = |x: usize, y: usize| data.bracket[x][y];
    let m = |x: usize, y: usize| cee.mul(x, y);
    let mut out = Vec::new();
    macro_rules! check {
        ($ok:expr, $axiom:expr, $($w:expr),+) => {
            if !$ok {
                out.push(Violation { axiom: $axiom, witnesses: vec![$($w),+] });
                if stop_at_first {
                    return out;
                }
            }
        };
    }
    let e = ce.order;
    for x in 0..e {
        for y in 0..e {
            check!(d(br(x, y)) == ce.commutator(x, y), 1, x, y);
        }
    }
    for a in 0..cee.order {
        for b in 0..cee.order {
            check!(br(d(a), d(b)) == cee.commutator(a, b), 2, a, b);
        }
    }
    for a in 0..cee.order {
        for x in 0..e {
            check!(m(br(d(a), x), br(x, d(a))) == cee.identity, 3, a, x);
        }
    }
    for x in 0..e {
        for y in 0..e {
            for z in 0..e {
                let lhs = br(x, ce.mul(y, z));
                let rhs = m(m(br(x, z), br(x, y)), br(ce.commutator(y, x), z));
                check!(lhs == rhs, 4, x, y, z);
            }
        }
    }
    for x in 0..e {
        for y in 0..e {
            let yi = ce.inv(y);
            for z in 0..e {
                let lhs = br(ce.mul(x, y), z);
                let rhs = m(br(ce.mul(ce.mul(yi, x), yi), ce.mul(ce.mul(yi, z), y)), br(y, z));
                check!(lhs == rhs, 5, x, y, z);
            }
        }
    }
    for x in 0..e {
        for y in 0..e {
            check!(m(br(x, y), br(y, x)) == cee.identity, 6, x, y);
        }
    }
    out
}

/// All maps `0..len → 0..values` in lexicographic order of their value lists.
struct Odometer {
    values: usize,
    current: Option<Vec<usize>>,
}

impl Odometer {
    fn new(len: usize, values: usize) -> Odometer {
        Odometer { values, current: (values > 0 || len == 0).then(|| vec![0; len]) }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut carried = true;
        for v in next.iter_mut().rev() {
            *v += 1;
            if *v < self.values {
                carried = false;
                break;
            }
            *v = 0;
        }
        self.current = (!carried).then_some(next);
        Some(out)
    }
}

/// Every `(∂, {-,-})` on the given groups passing all six identities, in a
/// fixed order: boundaries first, then brackets, each lexicographic.
pub struct ScgSearch {
    ce: FiniteGroup,
    cee: FiniteGroup,
    boundaries: Vec<Vec<usize>>,
    boundary_index: usize,
    brackets: Odometer,
}

pub fn scg_search(ce: &FiniteGroup, cee: &FiniteGroup, bound: u64) -> Result<ScgSearch> {
    let e = ce.order as u32;
    let ee = cee.order as u32;
    let candidates = (cee.order as u128)
        .checked_pow(e * e)
        .and_then(|x| x.checked_mul((ce.order as u128).checked_pow(ee)?));
    match candidates {
        Some(c) if c <= bound as u128 => {}
        other => {
            let size = other.map_or_else(|| "overflow".to_string(), |c| c.to_string());
            return Err(Error::BoundExceeded { size, bound });
        }
    }
    let boundaries: Vec<Vec<usize>> =
        Odometer::new(cee.order, ce.order).filter(|m| cee.is_homomorphism(ce, m)).collect();
    Ok(ScgSearch {
        brackets: Odometer::new(ce.order * ce.order, cee.order),
        ce: ce.clone(),
        cee: cee.clone(),
        boundaries,
        boundary_index: 0,
    })
}

impl Iterator for ScgSearch {
    type Item = ScgData;

    fn next(&mut self) -> Option<ScgData> {
        loop {
            let boundary = self.boundaries.get(self.boundary_index)?;
            match self.brackets.next() {
                None => {
                    self.boundary_index += 1;
                    self.brackets = Odometer::new(self.ce.order * self.ce.order, self.cee.order);
                }
                Some(flat) => {
                    let bracket: Vec<Vec<usize>> = flat.chunks(self.ce.order).map(<[usize]>::to_vec).collect();
                    let data = ScgData {
                        ce: self.ce.clone(),
                        cee: self.cee.clone(),
                        boundary: boundary.clone(),
                        bracket,
                    };
                    if violations(&data, true).is_empty() {
                        return Some(data);
                    }
                }
            }
        }
    }
}

/// `C_e = C_ee = Z/2`, trivial `∂`, bracket the product of `F_2`.
pub fn order_two_example() -> ScgData {
    let c2 = FiniteGroup::cyclic(2);
    ScgData::new(c2.clone(), c2, vec![0, 0], vec![vec![0, 0], vec![0, 1]]).unwrap()
}

/// [`order_two_example`] with `∂` the identity.
pub fn order_two_perturbed() -> ScgData {
    let ScgData { ce, cee, bracket, .. } = order_two_example();
    ScgData::new(ce, cee, vec![0, 1], bracket).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_validation() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![]).is_err());
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.order, 6);
        assert_ne!(s3.commutator(1, 3), s3.identity);
    }

    #[test]
    fn trivial_data() {
        let t = FiniteGroup::trivial();
        let d = ScgData::new(t.clone(), t, vec![0], vec![vec![0]]).unwrap();
        assert!(scg_verify(&d).unwrap().is_empty());
    }

    #[test]
    fn order_two_passes() {
        assert!(scg_verify(&order_two_example()).unwrap().is_empty());
    }

    #[test]
    fn perturbed_fails_axiom_two_at_generator() {
        let v = scg_verify(&order_two_perturbed()).unwrap();
        assert!(v.contains(&Violation { axiom: 2, witnesses: vec![1, 1] }));
        assert!(v.iter().all(|x| x.axiom == 1 || x.axiom == 2));
    }

    #[test]
    fn boundary_must_be_homomorphism() {
        let c2 = FiniteGroup::cyclic(2);
        assert!(ScgData::new(c2.clone(), c2, vec![1, 0], vec![vec![0, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn search() {
        let t = FiniteGroup::trivial();
        assert_eq!(scg_search(&t, &t, 10).unwrap().count(), 1);
        assert!(scg_search(&t, &t, 0).is_err());
        let c2 = FiniteGroup::cyclic(2);
        let found: Vec<ScgData> = scg_search(&c2, &c2, 1000).unwrap().collect();
        assert!(found.contains(&order_two_example()));
        assert!(!found.contains(&order_two_perturbed()));
        for d in &found {
            assert!(scg_verify(d).unwrap().is_empty());
        }
    }
}
