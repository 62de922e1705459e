use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::FgModule;
use crate::{Error, Result};

pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

/// Enumeration bound, overridable through `TWOCAT_ENUM_BOUND`.
pub fn enumeration_bound() -> u64 {
    std::env::var("TWOCAT_ENUM_BOUND")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_BOUND)
}

/// Odometer over the canonical coordinates of a finite module.
pub struct ElementIter {
    orders: Vec<BigInt>,
    current: Option<Vec<BigInt>>,
}

impl Iterator for ElementIter {
    type Item = Vec<BigInt>;

    fn next(&mut self) -> Option<Vec<BigInt>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut carried = true;
        for (x, ord) in next.iter_mut().zip(&self.orders).rev() {
            *x += 1;
            if *x < *ord {
                carried = false;
                break;
            }
            *x = BigInt::zero();
        }
        self.current = (!carried).then_some(next);
        Some(out)
    }
}

impl FgModule {
    /// Every element exactly once, as canonical coordinates.
    pub fn elements(&self, bound: u64) -> Result<ElementIter> {
        let order = self.order().ok_or(Error::Infinite)?;
        if order.to_u64().is_none_or(|n| n > bound) {
            return Err(Error::BoundExceeded { size: order.to_string(), bound });
        }
        let orders: Vec<BigInt> =
            self.invariant_factors().iter().map(|d| self.ring().quotient_order(d).unwrap()).collect();
        debug_assert_eq!(orders.iter().product::<BigInt>(), order);
        debug_assert!(orders.iter().all(|o| *o > BigInt::one()));
        Ok(ElementIter { current: Some(vec![BigInt::zero(); orders.len()]), orders })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn counts() {
        let z = Ring::Integers;
        assert_eq!(FgModule::zero(z).elements(10).unwrap().count(), 1);
        let v = FgModule::cyclic(z, 2).direct_sum(&FgModule::cyclic(z, 2)).unwrap();
        let all: Vec<_> = v.elements(10).unwrap().collect();
        assert_eq!(all.len(), 4);
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 4);
        assert!(matches!(FgModule::free(z, 1).elements(10), Err(Error::Infinite)));
        let big = FgModule::free(Ring::IntegersMod { m: 4 }, 3);
        assert_eq!(big.elements(64).unwrap().count(), 64);
        assert!(matches!(big.elements(63), Err(Error::BoundExceeded { .. })));
    }
}
