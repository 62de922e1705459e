use num_bigint::BigInt;
use proptest::prelude::*;
use twocat::arrow2::{find_homotopy, hom_invariants, ArrowMorphism, ArrowObject, Homotopy};
use twocat::brute::{all_squares, count_pi0};
use twocat::fgmod::ModuleMorphism;
use twocat::generate::{Generator, GeneratorConfig};
use twocat::{Error, Ring};

const RINGS: [Ring; 4] = [Ring::Integers, Ring::IntegersMod { m: 2 }, Ring::IntegersMod { m: 4 }, Ring::IntegersMod { m: 6 }];
const LIMIT: u64 = 1 << 12;

fn generator(ring: Ring, seed: u64, max_generators: usize) -> Generator {
    let mut cfg = GeneratorConfig::new(ring, seed, 1);
    cfg.max_generators = max_generators;
    cfg.max_relations = max_generators;
    Generator::new(cfg).unwrap()
}

fn ring() -> impl Strategy<Value = Ring> {
    prop::sample::select(RINGS.to_vec())
}

fn small_ring() -> impl Strategy<Value = Ring> {
    (2u64..=4).prop_map(|m| Ring::IntegersMod { m })
}

fn random_alpha(g: &mut Generator, a: &ArrowObject, b: &ArrowObject) -> ModuleMorphism {
    g.module_map(a.a0(), b.a1()).unwrap()
}

/// The square `f - (bα, αa)`, which `α` connects to `f`.
fn shifted(f: &ArrowMorphism, alpha: &ModuleMorphism) -> ArrowMorphism {
    let (a, b) = (f.source(), f.target());
    let f0 = f.f0().sub(&b.a().compose(alpha).unwrap()).unwrap();
    let f1 = f.f1().sub(&alpha.compose(a.a()).unwrap()).unwrap();
    ArrowMorphism::new(a.clone(), b.clone(), f0, f1).unwrap()
}

fn step(g: &mut Generator, f: &ArrowMorphism) -> Homotopy {
    let alpha = random_alpha(g, f.source(), f.target());
    Homotopy::new(f.clone(), shifted(f, &alpha), alpha).unwrap()
}

fn tabulates(e: &Result<impl Sized, Error>) -> bool {
    !matches!(e, Err(Error::BoundExceeded { .. }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// Sorting every square into classes with `find_homotopy` gives as many
    /// classes as `π0` has elements, and `pi0_class` is constant on each class.
    #[test]
    fn homotopy_classes_match_pi0(ring in small_ring(), seed in any::<u64>()) {
        let mut g = generator(ring, seed, 2);
        let (a, b) = (g.arrow().unwrap(), g.arrow().unwrap());
        let squares = all_squares(&a, &b, LIMIT);
        prop_assume!(tabulates(&squares));
        let squares = squares.unwrap();
        prop_assume!(squares.len() <= 512);
        let inv = hom_invariants(&a, &b).unwrap();
        let mut reps: Vec<(ArrowMorphism, Vec<BigInt>)> = Vec::new();
        for s in &squares {
            let class = inv.pi0_class(s).unwrap();
            match reps.iter().find(|(r, _)| find_homotopy(s, r).unwrap().is_some()) {
                Some((_, c)) => prop_assert_eq!(&class, c),
                None => {
                    prop_assert!(reps.iter().all(|(_, c)| *c != class));
                    reps.push((s.clone(), class));
                }
            }
        }
        let order = inv.pi0_module().order().unwrap();
        prop_assert_eq!(BigInt::from(reps.len()), order);
        prop_assert_eq!(count_pi0(&a, &b, LIMIT).unwrap() as usize, reps.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Homotopic squares stay homotopic after composing on either side and
    /// induce the same maps on kernels and cokernels.
    #[test]
    fn homotopy_is_a_congruence(ring in ring(), seed in any::<u64>()) {
        let mut g = generator(ring, seed, 2);
        let (z, a, b, c) = (g.arrow().unwrap(), g.arrow().unwrap(), g.arrow().unwrap(), g.arrow().unwrap());
        let f = g.morphism(&a, &b).unwrap();
        let h = step(&mut g, &f);
        let f2 = &h.to;
        prop_assert!(find_homotopy(&f, f2).unwrap().is_some());
        let inv = hom_invariants(&a, &b).unwrap();
        prop_assert_eq!(inv.pi0_class(&f).unwrap(), inv.pi0_class(f2).unwrap());
        prop_assert!(f.on_kernels().unwrap().equals(&f2.on_kernels().unwrap()));
        prop_assert!(f.on_cokernels().unwrap().equals(&f2.on_cokernels().unwrap()));

        let outer = g.morphism(&b, &c).unwrap();
        let inner = g.morphism(&z, &a).unwrap();
        let whiskered = h.horizontal(&Homotopy::identity(&outer)).unwrap();
        prop_assert!(whiskered.from.equals(&outer.compose(&f).unwrap()));
        prop_assert!(whiskered.to.equals(&outer.compose(f2).unwrap()));
        let whiskered = Homotopy::identity(&inner).horizontal(&h).unwrap();
        prop_assert!(whiskered.from.equals(&f.compose(&inner).unwrap()));
        prop_assert!(whiskered.to.equals(&f2.compose(&inner).unwrap()));
    }

    /// Two random squares are homotopic exactly when their `π0` classes agree.
    #[test]
    fn non_homotopic_squares_are_told_apart(ring in ring(), seed in any::<u64>()) {
        let mut g = generator(ring, seed, 2);
        let (a, b) = (g.arrow().unwrap(), g.arrow().unwrap());
        let f = g.morphism(&a, &b).unwrap();
        let f2 = g.morphism(&a, &b).unwrap();
        let inv = hom_invariants(&a, &b).unwrap();
        let same = inv.pi0_class(&f).unwrap() == inv.pi0_class(&f2).unwrap();
        match find_homotopy(&f, &f2).unwrap() {
            Some(w) => {
                prop_assert!(same);
                prop_assert!(Homotopy::new(f.clone(), f2.clone(), w.alpha.clone()).is_ok());
            }
            None => prop_assert!(!same),
        }
    }

    #[test]
    fn groupoid_laws(ring in ring(), seed in any::<u64>()) {
        let mut g = generator(ring, seed, 2);
        let (a, b, c) = (g.arrow().unwrap(), g.arrow().unwrap(), g.arrow().unwrap());
        let f = g.morphism(&a, &b).unwrap();
        let x = step(&mut g, &f);
        let y = step(&mut g, &x.to);
        let w = step(&mut g, &y.to);
        // Vertical composition is associative and unital, with inverses.
        let left = x.vertical(&y).unwrap().vertical(&w).unwrap();
        let right = x.vertical(&y.vertical(&w).unwrap()).unwrap();
        prop_assert!(left.alpha.equals(&right.alpha));
        prop_assert!(Homotopy::identity(&f).vertical(&x).unwrap().alpha.equals(&x.alpha));
        prop_assert!(x.vertical(&x.inverse()).unwrap().alpha.is_zero());
        prop_assert!(x.inverse().vertical(&x).unwrap().alpha.is_zero());

        // Interchange: (y' ∘ x') * (y ∘ x) = (y' * y) ∘ (x' * x).
        let k = g.morphism(&b, &c).unwrap();
        let xk = step(&mut g, &k);
        let yk = step(&mut g, &xk.to);
        let lhs = x.vertical(&y).unwrap().horizontal(&xk.vertical(&yk).unwrap()).unwrap();
        let rhs = x.horizontal(&xk).unwrap().vertical(&y.horizontal(&yk).unwrap()).unwrap();
        prop_assert!(lhs.from.equals(&rhs.from) && lhs.to.equals(&rhs.to));
        prop_assert!(lhs.alpha.equals(&rhs.alpha));
    }

    /// `Homotopy::new` accepts exactly the pairs related by the given `α`.
    #[test]
    fn homotopy_constructor_checks_both_legs(ring in ring(), seed in any::<u64>()) {
        let mut g = generator(ring, seed, 2);
        let (a, b) = (g.arrow().unwrap(), g.arrow().unwrap());
        let f = g.morphism(&a, &b).unwrap();
        let alpha = random_alpha(&mut g, &a, &b);
        let beta = random_alpha(&mut g, &a, &b);
        let f2 = shifted(&f, &alpha);
        let accepted = Homotopy::new(f.clone(), f2.clone(), beta.clone()).is_ok();
        let d = alpha.sub(&beta).unwrap();
        let agrees = b.a().compose(&d).unwrap().is_zero() && d.compose(a.a()).unwrap().is_zero();
        prop_assert_eq!(accepted, agrees);
    }

    #[test]
    fn pi0_class_is_additive(ring in ring(), seed in any::<u64>()) {
        let mut g = generator(ring, seed, 2);
        let (a, b) = (g.arrow().unwrap(), g.arrow().unwrap());
        let inv = hom_invariants(&a, &b).unwrap();
        let (f, f2) = (g.morphism(&a, &b).unwrap(), g.morphism(&a, &b).unwrap());
        let sum = inv.pi0_class(&f.add(&f2).unwrap()).unwrap();
        let parts: Vec<BigInt> = inv.pi0_class(&f).unwrap().iter().zip(inv.pi0_class(&f2).unwrap()).map(|(x, y)| x + y).collect();
        prop_assert_eq!(sum, inv.pi0_module().coordinates(&parts));
    }
}
