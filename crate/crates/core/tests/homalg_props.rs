use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use twocat::fgmod::{hom_group, FgModule};
use twocat::generate::{Generator, GeneratorConfig};
use twocat::homalg::{ext, free_resolution};
use twocat::Ring;

const Z: Ring = Ring::Integers;

fn module(ring: Ring, seed: u64) -> FgModule {
    let mut cfg = GeneratorConfig::new(ring, seed, 1);
    cfg.max_generators = 3;
    cfg.max_relations = 3;
    Generator::new(cfg).unwrap().module()
}

fn factors(m: &FgModule) -> Vec<u64> {
    m.invariant_factors().iter().map(|d| d.to_u64().unwrap()).collect()
}

fn from_factors(ring: Ring, f: &[u64]) -> FgModule {
    let f: Vec<BigInt> = f.iter().map(|&d| BigInt::from(d)).collect();
    FgModule::from_invariant_factors(ring, &f)
}

/// Hom and Ext¹ over Z of cyclic summands, with `0` standing for `Z`.
fn hom_z(d: u64, e: u64) -> u64 {
    match (d, e) {
        (0, e) => e,
        (_, 0) => 1,
        (d, e) => d.gcd(&e),
    }
}

fn ext1_z(d: u64, e: u64) -> u64 {
    match (d, e) {
        (0, _) => 1,
        (d, 0) => d,
        (d, e) => d.gcd(&e),
    }
}

fn biadditive(m: &FgModule, n: &FgModule, cell: fn(u64, u64) -> u64) -> FgModule {
    let parts: Vec<u64> = factors(m).iter().flat_map(|&d| factors(n).into_iter().map(move |e| cell(d, e))).collect();
    from_factors(Z, &parts)
}

/// Orders of `Ext^1` and `Ext^2` over `Z/m` of `(Z/d, Z/e)` for `d, e | m`, from
/// the periodic resolution `… → Z/m →(m/d) Z/m →(d) Z/m → Z/d`.
fn ext_orders_mod(m: u64, d: u64, e: u64) -> (u64, u64) {
    // On Z/e, multiplication by k has kernel of order gcd(k, e).
    let ker = |k: u64| k.gcd(&e);
    let im = |k: u64| e / k.gcd(&e);
    let c = m / d;
    (ker(c) / im(d), ker(d) / im(c))
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m % d == 0).collect()
}

#[test]
fn cyclic_groups_over_integers() {
    for a in 1..=12u64 {
        for b in 1..=12u64 {
            let (za, zb) = (from_factors(Z, &[a]), from_factors(Z, &[b]));
            let g = a.gcd(&b);
            assert!(ext(1, &za, &zb).unwrap().module.is_isomorphic(&from_factors(Z, &[g])), "Ext¹(Z/{a}, Z/{b})");
            assert!(hom_group(&za, &zb).unwrap().module.is_isomorphic(&from_factors(Z, &[g])), "Hom(Z/{a}, Z/{b})");
            assert!(ext(2, &za, &zb).unwrap().module.is_zero(), "Ext²(Z/{a}, Z/{b})");
        }
        let za = from_factors(Z, &[a]);
        let z = FgModule::free(Z, 1);
        assert!(ext(1, &za, &z).unwrap().module.is_isomorphic(&za), "Ext¹(Z/{a}, Z)");
        assert!(hom_group(&za, &z).unwrap().module.is_zero(), "Hom(Z/{a}, Z)");
    }
}

#[test]
fn cyclic_modules_over_zmod() {
    for m in 2..=12u64 {
        let ring = Ring::IntegersMod { m };
        for &d in &divisors(m) {
            for &e in &divisors(m) {
                let (zd, ze) = (from_factors(ring, &[d]), from_factors(ring, &[e]));
                let (o1, o2) = ext_orders_mod(m, d, e);
                let e1 = ext(1, &zd, &ze).unwrap();
                let e2 = ext(2, &zd, &ze).unwrap();
                // Subquotients of a cyclic group are cyclic, so the order decides the module.
                assert!(e1.module.is_isomorphic(&from_factors(ring, &[o1])), "Ext¹ over Z/{m} of (Z/{d}, Z/{e})");
                assert!(e2.module.is_isomorphic(&from_factors(ring, &[o2])), "Ext² over Z/{m} of (Z/{d}, Z/{e})");
                let hom = hom_group(&zd, &ze).unwrap();
                assert!(hom.module.is_isomorphic(&from_factors(ring, &[d.gcd(&e)])), "Hom over Z/{m}");
            }
        }
    }
}

#[test]
fn z2_over_z4_is_periodic() {
    let ring = Ring::IntegersMod { m: 4 };
    let z2 = from_factors(ring, &[2]);
    for n in 1..=2 {
        assert!(ext(n, &z2, &z2).unwrap().module.is_isomorphic(&z2));
    }
}

#[test]
fn degree_outside_range_is_rejected() {
    let z = FgModule::free(Z, 1);
    assert!(ext(0, &z, &z).is_err());
    assert!(ext(3, &z, &z).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Over Z both functors split over cyclic summands of either argument.
    #[test]
    fn integer_hom_and_ext_match_summands(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (m, n) = (module(Z, s1), module(Z, s2));
        prop_assert!(hom_group(&m, &n).unwrap().module.is_isomorphic(&biadditive(&m, &n, hom_z)));
        prop_assert!(ext(1, &m, &n).unwrap().module.is_isomorphic(&biadditive(&m, &n, ext1_z)));
        prop_assert!(ext(2, &m, &n).unwrap().module.is_zero());
    }

    #[test]
    fn ext_is_additive_in_the_source(m in 2u64..=12, s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), degree in 1usize..=2) {
        let ring = Ring::IntegersMod { m };
        let (a, b, n) = (module(ring, s1), module(ring, s2), module(ring, s3));
        let whole = ext(degree, &a.direct_sum(&b).unwrap(), &n).unwrap();
        let parts = ext(degree, &a, &n).unwrap().module.direct_sum(&ext(degree, &b, &n).unwrap().module).unwrap();
        prop_assert!(whole.module.is_isomorphic(&parts));
    }

    #[test]
    fn ext_of_free_vanishes(m in 0u64..=12, rank in 0usize..=3, seed in any::<u64>(), degree in 1usize..=2) {
        let ring = if m < 2 { Z } else { Ring::IntegersMod { m } };
        let n = module(ring, seed);
        prop_assert!(ext(degree, &FgModule::free(ring, rank), &n).unwrap().module.is_zero());
    }

    #[test]
    fn resolutions_are_exact(m in 0u64..=12, seed in any::<u64>()) {
        let ring = if m < 2 { Z } else { Ring::IntegersMod { m } };
        let res = free_resolution(&module(ring, seed), 3).unwrap();
        prop_assert!(res.verify().is_ok());
        for i in 2..=3 {
            prop_assert!(res.differential(i - 1).mul(res.differential(i)).is_zero());
        }
    }

    /// Ext classes add through coordinates and every element is a sum of generators.
    #[test]
    fn classes_form_a_group(m in 2u64..=12, s1 in any::<u64>(), s2 in any::<u64>(), k in -5i64..=5, degree in 1usize..=2) {
        let ring = Ring::IntegersMod { m };
        let e = ext(degree, &module(ring, s1), &module(ring, s2)).unwrap();
        let zero = e.zero();
        for x in e.generators() {
            prop_assert_eq!(x.add(&zero).unwrap(), x.clone());
            prop_assert!(x.sub(&x).unwrap().is_zero());
            let scaled = x.scale(&BigInt::from(k));
            let mut sum = zero.clone();
            for _ in 0..k.unsigned_abs() {
                sum = sum.add(&x).unwrap();
            }
            if k < 0 {
                sum = sum.neg();
            }
            prop_assert_eq!(scaled, sum);
            // Round trip through a cocycle representative.
            prop_assert_eq!(e.class_of(&e.representative(&x)).unwrap(), x);
        }
    }
}
