//! Seeded verification suites. Each trial draws its own instance from a seed
//! derived from the master seed, so reports are reproducible and trials run
//! in parallel.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arrow2::{cnobili_sequence, hom_invariants, lift_through_replacement, replacement, ArrowMorphism, ArrowObject};
use crate::brute::{cocone_shape, cone_shape, count_pi0, shape_of};
use crate::fgmod::{FgModule, ModuleMorphism};
use crate::generate::{trial_seed, Generator, GeneratorConfig};
use crate::homalg::{ch_of_map, ch_of_map_with, e_morphism_check, ext, ext_functorial, Direction, EMorphism};
use crate::ring::Ring;
use crate::twoabelian::{
    base_to_dis, base_witness, check_equivalence_witness, classify, copip, dis_to_base, discrete_witness, omega, pip,
    sigma, sigma_pip_identity, two_cokernel, two_kernel,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Cnobili,
    Cof,
    Faithful,
    Cofaithful,
    SigmaPip,
    Universal,
    Additivity,
    Pi1,
    Ch,
    Discrete,
    ExtPull,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Cnobili,
        Suite::Cof,
        Suite::Faithful,
        Suite::Cofaithful,
        Suite::SigmaPip,
        Suite::Universal,
        Suite::Additivity,
        Suite::Pi1,
        Suite::Ch,
        Suite::Discrete,
        Suite::ExtPull,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cnobili => "cnobili",
            Suite::Cof => "cof",
            Suite::Faithful => "faithful",
            Suite::Cofaithful => "cofaithful",
            Suite::SigmaPip => "sigma-pip",
            Suite::Universal => "universal",
            Suite::Additivity => "additivity",
            Suite::Pi1 => "pi1",
            Suite::Ch => "ch",
            Suite::Discrete => "discrete",
            Suite::ExtPull => "ext-pull",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{s}`")))
    }
}

/// A failed trial with everything needed to reproduce it.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub trial_seed: u64,
    pub reason: String,
    pub instance: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub ring: Ring,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// Per-suite tallies, such as how many trials got an exhaustive cross-check.
    pub counters: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Default)]
struct Outcome {
    problems: Vec<String>,
    instance: BTreeMap<String, Value>,
    counters: Vec<(&'static str, u64)>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.problems.push(what.into());
        }
    }

    fn record<T: Serialize>(&mut self, key: &str, v: &T) {
        self.instance.insert(key.to_string(), serde_json::to_value(v).unwrap_or(Value::Null));
    }

    fn count(&mut self, key: &'static str) {
        self.counters.push((key, 1));
    }
}

/// Limit on candidate maps per brute-force enumeration.
const BRUTE_LIMIT: u64 = 1 << 16;
/// Total module order under which squares are counted exhaustively.
const EXHAUSTIVE_ORDER: u64 = 256;
const PROBES: usize = 20;

pub fn run_suite(suite: Suite, config: &GeneratorConfig) -> Result<SuiteReport> {
    config.validate()?;
    let mut cfg = config.clone();
    if suite == Suite::Universal {
        if !cfg.ring.is_finite() {
            return Err(Error::Invalid("the universal suite enumerates cones and needs a finite ring".into()));
        }
        cfg.max_generators = cfg.max_generators.min(2);
    }
    let trial = trial_fn(suite);
    let outcomes: Vec<(usize, Outcome)> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut out = Outcome::default();
            let result = Generator::for_trial(&cfg, t).and_then(|mut g| trial(&mut g, &mut out));
            if let Err(e) = result {
                out.problems.push(format!("error: {e}"));
            }
            (t, out)
        })
        .collect();
    let mut report = SuiteReport {
        suite,
        ring: cfg.ring,
        seed: cfg.seed,
        trials: cfg.trials,
        passed: 0,
        failed: 0,
        counters: BTreeMap::new(),
        failures: Vec::new(),
    };
    for (t, out) in outcomes {
        for (k, v) in &out.counters {
            *report.counters.entry((*k).to_string()).or_default() += v;
        }
        if out.problems.is_empty() {
            report.passed += 1;
        } else {
            report.failed += 1;
            report.failures.push(Failure {
                trial: t,
                trial_seed: trial_seed(cfg.seed, t as u64),
                reason: out.problems.join("; "),
                instance: json!(out.instance),
            });
        }
    }
    Ok(report)
}

type TrialFn = fn(&mut Generator, &mut Outcome) -> Result<()>;

fn trial_fn(suite: Suite) -> TrialFn {
    match suite {
        Suite::Cnobili => cnobili_trial,
        Suite::Cof => cof_trial,
        Suite::Faithful => faithful_trial,
        Suite::Cofaithful => cofaithful_trial,
        Suite::SigmaPip => sigma_pip_trial,
        Suite::Universal => universal_trial,
        Suite::Additivity => additivity_trial,
        Suite::Pi1 => pi1_trial,
        Suite::Ch => ch_trial,
        Suite::Discrete => discrete_trial,
        Suite::ExtPull => ext_pull_trial,
    }
}

fn total_order(modules: &[&FgModule]) -> Option<u64> {
    let mut n: u64 = 1;
    for m in modules {
        let o: u64 = m.order()?.try_into().ok()?;
        n = n.checked_mul(o)?;
    }
    Some(n)
}

fn cnobili_trial(g: &mut Generator, out: &mut Outcome) -> Result<()> {
    let a = g.arrow_c()?;
    let b = g.arrow()?;
    out.record("a", &a);
    out.record("b", &b);
    let r = cnobili_sequence(&a, &b)?;
    out.record("report", &r);
    out.check(r.left_mono, "Ext^1 → π0 is not mono");
    out.check(r.middle_exact, "sequence is not exact at π0");
    out.check(r.right_epi, "π0 → Hom_E is not epi");
    if g.config.ring.is_finite() {
        let ord = |m: &FgModule| m.order().unwrap();
        out.check(ord(&r.pi0) == ord(&r.ext1) * ord(&r.hom_e), "|π0| ≠ |Ext^1| |Hom_E|");
        if total_order(&[a.a1(), a.a0(), b.a1(), b.a0()]).is_some_and(|n| n <= EXHAUSTIVE_ORDER) {
            let counted = count_pi0(&a, &b, BRUTE_LIMIT)?;
            out.count("exhaustive");
            out.check(
                BigInt::from(counted) == ord(&r.pi0),
                format!("exhaustive count gives {counted} homotopy classes, π0 has {}", ord(&r.pi0)),
            );
        }
    }
    Ok(())
}

fn cof_trial(g: &mut Generator, out: &mut Outcome) -> Result<()> {
    let a = g.arrow_c()?;
    let b = g.arrow()?;
    out.record("a", &a);
    out.record("b", &b);
    let rep = replacement(&b)?;
    out.record("replacement", &rep.arrow);
    out.check(rep.arrow.in_c(), "replacement target is not free");
    out.check(rep.verify()?, "replacement comparison is not an isomorphism on Ker/Coker");
    let inv_rep = hom_invariants(&a, &rep.arrow)?;
    let inv = hom_invariants(&a, &b)?;
    let (p0, p1) = inv_rep.postcompose(&rep.compare, &inv)?;
    out.check(p0.classify().iso, "induced map on π0 is not an isomorphism");
    out.check(p1.classify().iso, "induced map on π1 is not an isomorphism");
    let f = g.morphism(&a, &b)?;
    out.record("f", &f);
    let lifted = lift_through_replacement(&f, &rep)?;
    out.check(rep.compare.compose(&lifted)?.equals(&f), "lift does not factor f");
    Ok(())
}

fn faithful_trial(g: &mut Generator, out: &mut Outcome) -> Result<()> {
    let a = g.arrow_c()?;
    let b = g.arrow_c()?;
    let f = g.morphism(&a, &b)?;
    out.record("f", &f);
    let fl = classify(&f)?;
    out.record("flags", &fl);
    let g_mono = fl.g.is_mono();
    out.check(fl.faithful.value == g_mono, "stacked-map criterion disagrees with Ker a → Ker b mono");
    if fl.faithful.value {
        out.count("faithful");
        out.check(pip(&f)?.pip.is_zero(), "faithful morphism with nonzero pip");
        let x = g.arrow_c()?;
        out.record("probe", &x);
        let (_, p1) = hom_invariants(&x, &a)?.postcompose(&f, &hom_invariants(&x, &b)?)?;
        out.check(p1.is_mono(), "faithful morphism not injective on π1 of a probe");
    }
    let ff = fl.g.classify().iso && fl.h.is_mono();
    out.check(fl.fully_faithful.value == ff, "fully faithful flag disagrees with g iso, h mono");
    if ff {
        out.count("fully_faithful");
        let (cha, chb) = (a.ch()?, b.ch()?);
        out.check(
            EMorphism::new(fl.h.clone(), fl.g.clone(), cha, chb).is_ok(),
            "induced pair is not a morphism of triples",
        );
    }
    Ok(())
}

fn cofaithful_trial(g: &mut Generator, out: &mut Outcome) -> Result<()> {
    let a = g.arrow_c()?;
    let b = g.arrow_c()?;
    let f = g.morphism(&a, &b)?;
    out.record("f", &f);
    let fl = classify(&f)?;
    out.record("flags", &fl);
    let h_epi = fl.h.is_epi();
    out.check(fl.cofaithful.value == h_epi, "combined-map criterion disagrees with Coker a → Coker b epi");
    if fl.cofaithful.value {
        out.count("cofaithful");
        out.check(copip(&f)?.is_zero(), "cofaithful morphism with nonzero copip");
        let x = g.arrow_c()?;
        out.record("probe", &x);
        let (_, p1) = hom_invariants(&b, &x)?.precompose(&f, &hom_invariants(&a, &x)?)?;
        out.check(p1.is_mono(), "cofaithful morphism not injective on π1 of a probe");
    }
    let fc = fl.h.classify().iso && fl.g.is_epi();
    out.check(fl.fully_cofaithful.value == fc, "fully cofaithful flag disagrees with h iso, g epi");
    if fc {
        out.count("fully_cofaithful");
        let (cha, chb) = (a.ch()?, b.ch()?);
        out.check(
            EMorphism::new(fl.h.clone(), fl.g.clone(), cha, chb).is_ok(),
            "induced pair is not a morphism of triples",
        );
    }
    Ok(())
}

fn sigma_pip_trial(g: &mut Generator, out: &mut Outcome) -> Result<()> {
    let a = g.arrow_c()?;
    let b = g.arrow_c()?;
    let f = g.morphism(&a, &b)?;
    out.record("f", &f);
    let ker_a = a.a().kernel().module;
    let coker_a = a.a().cokernel().module;
    let s = sigma(&a)?;
    out.check(s.a().kernel().module.is_isomorphic(&coker_a), "Ker Σa ≇ Coker a");
    out.check(s.a().cokernel().module.is_zero(), "Coker Σa ≠ 0");
    out.check(s.in_c(), "Σa is not in the free-target subcategory");
    let o = omega(&a)?;
    out.check(o.a().kernel().module.is_zero(), "Ker Ωa ≠ 0");
    out.check(o.a().cokernel().module.is_isomorphic(&ker_a), "Coker Ωa ≇ Ker a");
    out.check(o.in_c(), "Ωa is not in the free-target subcategory");
    let p = pip(&f)?;
    out.check(p.pip.a().kernel().module.is_zero(), "Ker pip ≠ 0");
    out.check(p.pip.a().cokernel().module.is_isomorphic(&p.kernel), "Coker pip ≇ Ker k'");
    let k = two_kernel(&f)?;
    out.check(k.k_prime.a().kernel().module.is_isomorphic(&p.kernel), "Ker(-a; f1) ≇ Ker k'");
    let sp = sigma_pip_identity(&f)?;
    out.check(sp.passed, "Σ(pip f) ≇ (Ker k' → 0)");
    let fl = classify(&f)?;
    out.check(copip(&f)?.is_zero() == fl.cofaithful.value, "copip f = 0 disagrees with cofaithfulness");
    out.check(p.pip.is_zero() == fl.faithful.value, "pip f = 0 disagrees with faithfulness");
    Ok(())
}

fn universal_trial(g: &mut Generator, out: &mut Outcome) -> Result<()> {
    let a = g.arrow_c()?;
    let b = g.arrow_c()?;
    let f = g.morphism(&a, &b)?;
    out.record("f", &f);
    let k = two_kernel(&f)?;
    let c = two_cokernel(&f)?;
    out.check(k.ker.in_c() && k.compare_ok, "2-kernel replacement step failed");
    out.check(c.in_c, "2-cokernel left the free-target subcategory");
    let mut probes = Vec::new();
    for _ in 0..PROBES {
        let probe = g.retry("probe", |g| {
            let x = g.arrow_c()?;
            match (cone_shape(&f, &x, BRUTE_LIMIT), cocone_shape(&f, &x, BRUTE_LIMIT)) {
                (Ok(cone), Ok(cocone)) => Ok(Some((x, cone, cocone))),
                (Err(Error::BoundExceeded { .. }), _) | (_, Err(Error::BoundExceeded { .. })) => Ok(None),
                (Err(e), _) | (_, Err(e)) => Err(e),
            }
        })?;
        probes.push(probe);
    }
    for (i, (x, cone, cocone)) in probes.iter().enumerate() {
        let into_kernel = hom_invariants(x, &k.ker)?;
        let from_cokernel = hom_invariants(&c.coker, x)?;
        let got_k = (shape_of(into_kernel.pi0_module()), shape_of(into_kernel.pi1_module()));
        let got_c = (shape_of(from_cokernel.pi0_module()), shape_of(from_cokernel.pi1_module()));
        if got_k != (Some(cone.pi0), Some(cone.pi1)) {
            out.record(&format!("probe_{i}"), x);
            out.check(false, format!("probe {i}: Hom(x, 2-kernel) has shape {got_k:?}, cones give {cone:?}"));
        }
        if got_c != (Some(cocone.pi0), Some(cocone.pi1)) {
            out.record(&format!("probe_{i}"), x);
            out.check(false, format!("probe {i}: Hom(2-cokernel, x) has shape {got_c:?}, cocones give {cocone:?}"));
        }
        out.count("probes");
    }
    Ok(())
}

fn additivity_trial(g: &mut Generator, out: &mut Outcome) -> Result<()> {
    let a = g.arrow_c()?;
    let a2 = g.arrow_c()?;
    let b = g.arrow()?;
    let b2 = g.arrow()?;
    out.record("a", &a);
    out.record("a2", &a2);
    out.record("b", &b);
    out.record("b2", &b2);
    let sum = hom_invariants(&a.direct_sum(&a2)?, &b)?;
    let p = hom_invariants(&a, &b)?;
    let q = hom_invariants(&a2, &b)?;
    out.check(sum.pi0_module().is_isomorphic(&p.pi0_module().direct_sum(q.pi0_module())?), "π0 not additive in the source");
    out.check(sum.pi1_module().is_isomorphic(&p.pi1_module().direct_sum(q.pi1_module())?), "π1 not additive in the source");
    let sum = hom_invariants(&a, &b.direct_sum(&b2)?)?;
    let q = hom_invariants(&a, &b2)?;
    out.check(sum.pi0_module().is_isomorphic(&p.pi0_module().direct_sum(q.pi0_module())?), "π0 not additive in the target");
    out.check(sum.pi1_module().is_isomorphic(&p.pi1_module().direct_sum(q.pi1_module())?), "π1 not additive in the target");
    Ok(())
}

fn pi1_trial(g: &mut Generator, out: &mut Outcome) -> Result<()> {
    let a = g.arrow()?;
    let b = g.arrow()?;
    out.record("a", &a);
    out.record("b", &b);
    let inv = hom_invariants(&a, &b)?;
    out.check(
        inv.pi1_module().invariant_factors() == inv.coker_ker.module.invariant_factors(),
        "π1 and Hom(Coker a, Ker b) have different invariant factors",
    );
    out.check(inv.pi1_witness_is_iso(), "π1 witness is not an isomorphism");
    Ok(())
}

fn ch_trial(g: &mut Generator, out: &mut Outcome) -> Result<()> {
    let a = g.arrow()?;
    out.record("a", &a);
    let t = ch_of_map(a.a())?;
    out.record("ch", &t);
    if g.config.ring == Ring::Integers {
        out.check(t.class.is_zero(), "nonzero class over the integers");
    }
    let seed = g.rng().gen();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let again = ch_of_map_with(a.a(), Some(&mut rng))?;
    out.check(again.class == t.class, "class depends on the chosen lifts");
    let rep = replacement(&a)?;
    let tr = rep.arrow.ch()?;
    let h = rep.compare.on_cokernels()?;
    let k = rep.compare.on_kernels()?;
    out.check(h.classify().iso && k.classify().iso, "replacement comparison is not an isomorphism on Ker/Coker");
    out.check(e_morphism_check(&h, &k, &tr, &t)?, "replacement changes the class");
    if t.class.is_zero() {
        out.count("zero_class");
    }
    Ok(())
}

fn discrete_trial(g: &mut Generator, out: &mut Outcome) -> Result<()> {
    let m = g.module();
    out.record("M", &m);
    let d = base_to_dis(&m);
    out.check(d.a().is_mono() && d.in_c(), "base_to_dis is not a discrete object with free target");
    out.check(dis_to_base(&d)?.is_isomorphic(&m), "dis_to_base(base_to_dis(M)) ≇ M");
    out.check(base_witness(&m)?.classify().iso, "cover does not induce Coker ≅ M");
    let mut discrete = None;
    for _ in 0..50 {
        let a = g.arrow_c()?;
        if a.a().is_mono() {
            discrete = Some(a);
            break;
        }
    }
    let a = match discrete {
        Some(a) => a,
        None => base_to_dis(&g.module()),
    };
    out.record("a", &a);
    let w = discrete_witness(&a)?;
    out.check(check_equivalence_witness(&w)?, "witness does not induce Ker/Coker isomorphisms");
    let back = w.target();
    let ring = g.config.ring;
    let stable = a.a1().direct_sum(&FgModule::free(ring, back.a0().generators()))?;
    let stable_back = back.a1().direct_sum(&FgModule::free(ring, a.a0().generators()))?;
    out.check(stable.is_isomorphic(&stable_back), "relation modules are not stably isomorphic");
    out.check(dis_to_base(back)?.is_isomorphic(&dis_to_base(&a)?), "cokernels differ");
    Ok(())
}

fn ext_pull_trial(g: &mut Generator, out: &mut Outcome) -> Result<()> {
    let degree = if g.rng().gen_bool(0.5) { 1 } else { 2 };
    let m = g.module();
    let m2 = g.module();
    let n = g.module();
    let n2 = g.module();
    out.record("M", &m);
    out.record("M2", &m2);
    out.record("N", &n);
    let e = ext(degree, &m, &n)?;
    let c: Vec<BigInt> = (0..e.module.generators()).map(|_| BigInt::from(g.rng().gen_range(-3..=3))).collect();
    let x = e.element(&c);
    let y = e.element(&c.iter().map(|v| v * 2 + 1).collect::<Vec<_>>());
    let h = g.module_map(&m2, &m)?;
    let h2 = g.module_map(&m2, &m)?;
    let target = ext(degree, &m2, &n)?;
    let mut r1 = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(g.rng().gen());
    let mut r2 = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(g.rng().gen());
    let p1 = e.pull_into(&h, &x, &target, Some(&mut r1))?;
    let p2 = e.pull_into(&h, &x, &target, Some(&mut r2))?;
    out.check(p1 == p2, "pullback depends on the chain-map lift");
    let sum = ext_functorial(Direction::Pull, &h.add(&h2)?, &x)?;
    let parts = ext_functorial(Direction::Pull, &h, &x)?.add(&ext_functorial(Direction::Pull, &h2, &x)?)?;
    out.check(sum == parts, "pullback is not additive in the map");
    let lin = ext_functorial(Direction::Pull, &h, &x.add(&y)?)?;
    let lin_parts = ext_functorial(Direction::Pull, &h, &x)?.add(&ext_functorial(Direction::Pull, &h, &y)?)?;
    out.check(lin == lin_parts, "pullback is not additive in the class");
    let k = g.module_map(&n, &n2)?;
    let k2 = g.module_map(&n, &n2)?;
    let sum = ext_functorial(Direction::Push, &k.add(&k2)?, &x)?;
    let parts = ext_functorial(Direction::Push, &k, &x)?.add(&ext_functorial(Direction::Push, &k2, &x)?)?;
    out.check(sum == parts, "pushforward is not additive in the map");
    let id: ModuleMorphism = ModuleMorphism::identity(&m);
    out.check(ext_functorial(Direction::Pull, &id, &x)? == x, "pullback along the identity moves the class");
    for free in [FgModule::free(g.config.ring, 2)] {
        out.check(ext(degree, &free, &n)?.module.is_zero(), "Ext of a free module is nonzero");
    }
    Ok(())
}

/// Runs every suite applicable to `ring` with the same configuration.
pub fn run_all(config: &GeneratorConfig) -> Result<Vec<SuiteReport>> {
    Suite::ALL
        .into_iter()
        .filter(|s| *s != Suite::Universal || config.ring.is_finite())
        .map(|s| run_suite(s, config))
        .collect()
}

/// The arrows `·2: R → R`, used by several fixed checks.
pub fn times_two(ring: Ring) -> ArrowObject {
    let r = FgModule::free(ring, 1);
    ArrowObject::new(ModuleMorphism::new(r.clone(), r, crate::Matrix::from_rows(ring, &[vec![2]])).unwrap())
}

/// Identity morphism on [`times_two`].
pub fn identity_on_times_two(ring: Ring) -> ArrowMorphism {
    ArrowMorphism::identity(&times_two(ring))
}
