use num_bigint::BigInt;
use proptest::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use twocat::arrow2::{ArrowMorphism, ArrowObject};
use twocat::fgmod::{FgModule, ModuleMorphism};
use twocat::generate::{Generator, GeneratorConfig};
use twocat::homalg::{ext, ExtElement};
use twocat::instance::Instance;
use twocat::scg::{order_two_example, FiniteGroup, ScgData, Violation};
use twocat::{Matrix, Ring};

const RINGS: [Ring; 4] = [Ring::Integers, Ring::IntegersMod { m: 2 }, Ring::IntegersMod { m: 4 }, Ring::IntegersMod { m: 6 }];

fn round_trip<T: Serialize + DeserializeOwned + PartialEq>(x: &T) -> Result<(), TestCaseError> {
    let text = serde_json::to_string(x).unwrap();
    let back: T = serde_json::from_str(&text).map_err(|e| TestCaseError::fail(format!("{e}: {text}")))?;
    prop_assert!(back == *x, "changed in transit: {}", text);
    prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    Ok(())
}

fn ring() -> impl Strategy<Value = Ring> {
    prop::sample::select(RINGS.to_vec())
}

fn generator(ring: Ring, seed: u64) -> Generator {
    let mut cfg = GeneratorConfig::new(ring, seed, 1);
    cfg.max_generators = 3;
    cfg.max_relations = 3;
    Generator::new(cfg).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn algebra_round_trips(ring in ring(), seed in any::<u64>()) {
        let mut g = generator(ring, seed);
        round_trip(&ring)?;
        round_trip(&g.random_matrix(2, 3))?;
        let (m, n) = (g.module(), g.module());
        round_trip(&m)?;
        round_trip(&g.module_map(&m, &n).unwrap())?;
        let (a, b) = (g.arrow().unwrap(), g.arrow().unwrap());
        round_trip(&a)?;
        round_trip(&g.morphism(&a, &b).unwrap())?;
    }

    #[test]
    fn ext_elements_round_trip(ring in ring(), seed in any::<u64>(), degree in 1usize..=2, c in prop::collection::vec(-5i64..=5, 8)) {
        let mut g = generator(ring, seed);
        let e = ext(degree, &g.module(), &g.module()).unwrap();
        let coords: Vec<BigInt> = (0..e.module.generators()).map(|i| BigInt::from(c[i % c.len()])).collect();
        round_trip::<ExtElement>(&e.element(&coords))?;
    }

    #[test]
    fn configs_round_trip(ring in ring(), seed in any::<u64>(), trials in 0usize..1000, gens in 1usize..6, bound in 1i64..100) {
        let mut cfg = GeneratorConfig::new(ring, seed, trials);
        cfg.max_generators = gens;
        cfg.entry_bound = bound;
        round_trip(&cfg)?;
    }

    #[test]
    fn generated_instances_reload(ring in ring(), seed in any::<u64>()) {
        let mut g = generator(ring, seed);
        let mut inst = Instance::empty(ring);
        let (a, b) = (g.arrow().unwrap(), g.arrow().unwrap());
        inst.modules.insert("M".into(), g.module());
        inst.arrows.insert("a".into(), a.clone());
        inst.arrows.insert("b".into(), b.clone());
        inst.morphisms.insert("f".into(), g.morphism(&a, &b).unwrap());
        let text = inst.to_json_string();
        let back = Instance::from_json_str(&text).unwrap();
        prop_assert!(back == inst);
        prop_assert_eq!(back.to_json_string(), text);
    }
}

#[test]
fn large_integers_survive() {
    let big: BigInt = "123456789012345678901234567890".parse().unwrap();
    let m = Matrix::from_vec(Ring::Integers, 1, 2, vec![big.clone(), -big]).unwrap();
    round_trip(&m).unwrap();
    let module = FgModule::new(Ring::Integers, 1, m).unwrap();
    round_trip(&module).unwrap();
}

#[test]
fn fixed_objects_round_trip() {
    let ring = Ring::IntegersMod { m: 4 };
    let r = FgModule::free(ring, 1);
    let a = ArrowObject::new(ModuleMorphism::new(r.clone(), r, Matrix::from_rows(ring, &[vec![2]])).unwrap());
    round_trip(&a).unwrap();
    round_trip(&ArrowMorphism::identity(&a)).unwrap();
    for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(4), FiniteGroup::symmetric3()] {
        round_trip(&g).unwrap();
    }
    round_trip::<ScgData>(&order_two_example()).unwrap();
    round_trip(&Violation { axiom: 2, witnesses: vec![1, 1] }).unwrap();
}

#[test]
fn malformed_values_are_rejected() {
    assert!(serde_json::from_str::<Ring>(r#"{"kind": "Zmod", "m": 1}"#).is_err());
    assert!(serde_json::from_str::<Ring>(r#"{"kind": "Q"}"#).is_err());
    assert!(serde_json::from_str::<FiniteGroup>(r#"{"table": [[0, 1], [0, 1]]}"#).is_err());
    assert!(serde_json::from_str::<Matrix>(r#"{"ring": {"kind": "Z"}, "rows": 1, "cols": 2, "entries": [1]}"#).is_err());
}
