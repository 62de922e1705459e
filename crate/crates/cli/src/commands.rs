use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;
use twocat::arrow2::{hom_invariants, replacement, ArrowObject};
use twocat::fgmod::{hom_group, ModuleMorphism};
use twocat::generate::{Generator, GeneratorConfig};
use twocat::homalg::{ch_of_map, ch_of_map_seeded, ext};
use twocat::instance::Instance;
use twocat::scg::{scg_search, scg_verify, FiniteGroup};
use twocat::snf::smith_normal_form;
use twocat::twoabelian::{
    base_to_dis, base_witness, check_equivalence_witness, classify, copip, dis_to_base, discrete_witness, omega, pip,
    sigma, sigma_pip_identity, two_cokernel, two_kernel,
};
use twocat::verify::{run_all, run_suite, Suite};
use twocat::{Matrix, Ring};

use crate::report::{Output, Report};
use crate::{Command, GenerateArgs, Kind, One, Two, VerifyArgs};

fn load(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Instance::from_json_str(&text).with_context(|| format!("in {}", path.display()))
}

/// The named entry, or the only entry of the section.
fn pick<'a, T>(table: &'a BTreeMap<String, T>, name: Option<&str>, section: &str) -> Result<&'a T> {
    match name {
        Some(n) => table.get(n).ok_or_else(|| anyhow!("no entry `{n}` under `{section}`")),
        None if table.len() == 1 => Ok(table.values().next().unwrap()),
        None => {
            let names: Vec<&str> = table.keys().map(String::as_str).collect();
            bail!("section `{section}` has entries [{}]; choose one by name", names.join(", "))
        }
    }
}

fn pick_pair<'a, T>(table: &'a BTreeMap<String, T>, two: &Two, section: &str) -> Result<(&'a T, &'a T)> {
    Ok((
        pick(table, two.source.as_deref(), section)?,
        pick(table, two.target.as_deref(), section)?,
    ))
}

fn config(ring: &str, seed: u64, trials: usize, gens: usize, rels: usize, bound: i64) -> Result<GeneratorConfig> {
    let ring: Ring = ring.parse()?;
    let cfg = GeneratorConfig {
        seed,
        ring,
        max_generators: gens,
        max_relations: rels,
        entry_bound: bound,
        trials,
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn run(cmd: &Command) -> Result<Output> {
    let report = match cmd {
        Command::Snf(o) => snf(o)?,
        Command::Hom(t) => {
            let inst = load(&t.file)?;
            let (m, n) = pick_pair(&inst.modules, t, "modules")?;
            let h = hom_group(m, n)?;
            let basis = h.basis();
            let well_defined = basis.iter().all(|b| ModuleMorphism::new(m.clone(), n.clone(), b.matrix().clone()).is_ok());
            Report::new("hom", json!({"source": m, "target": n, "hom": h.module, "basis": basis}))
                .check("basis_well_defined", well_defined)
        }
        Command::Ext { modules, degree } => {
            let inst = load(&modules.file)?;
            let (m, n) = pick_pair(&inst.modules, modules, "modules")?;
            let e = ext(*degree, m, n)?;
            let exact = e.resolution.verify().is_ok();
            Report::new("ext", &*e).check("resolution_exact", exact)
        }
        Command::Ch(o) => {
            let inst = load(&o.file)?;
            let a = pick(&inst.arrows, o.name.as_deref(), "arrows")?;
            let t = ch_of_map(a.a())?;
            let again = ch_of_map_seeded(a.a(), 0)?;
            Report::new("ch", &t).check("independent_of_lifts", again.class == t.class)
        }
        Command::Pi(t) => {
            let inst = load(&t.file)?;
            let (a, b) = pick_pair(&inst.arrows, t, "arrows")?;
            let inv = hom_invariants(a, b)?;
            let iso = inv.pi1_witness_is_iso();
            Report::new("pi", &inv).check("pi1_witness_iso", iso)
        }
        Command::Replace(o) => {
            let a = arrow(o)?;
            let rep = replacement(&a)?;
            let ok = rep.verify()?;
            let in_c = rep.arrow.in_c();
            Report::new("replace", &rep).check("free_target", in_c).check("compare_iso_on_ker_coker", ok)
        }
        Command::TwoKernel(o) => {
            let inst = load(&o.file)?;
            let f = pick(&inst.morphisms, o.name.as_deref(), "morphisms")?;
            let k = two_kernel(f)?;
            let (in_c, compare) = (k.ker.in_c(), k.compare_ok);
            Report::new("two-kernel", &k).check("free_target", in_c).check("compare_iso_on_ker_coker", compare)
        }
        Command::TwoCokernel(o) => {
            let inst = load(&o.file)?;
            let f = pick(&inst.morphisms, o.name.as_deref(), "morphisms")?;
            let c = two_cokernel(f)?;
            let in_c = c.in_c;
            Report::new("two-cokernel", &c).check("free_target", in_c)
        }
        Command::Sigma(o) => {
            let a = arrow(o)?;
            let s = sigma(&a)?;
            Report::new("sigma", json!({"input": a, "sigma": s}))
                .check("kernel_is_coker_a", s.a().kernel().module.is_isomorphic(&a.a().cokernel().module))
                .check("cokernel_zero", s.a().cokernel().module.is_zero())
                .check("free_target", s.in_c())
        }
        Command::Omega(o) => {
            let a = arrow(o)?;
            let w = omega(&a)?;
            Report::new("omega", json!({"input": a, "omega": w}))
                .check("kernel_zero", w.a().kernel().module.is_zero())
                .check("cokernel_is_ker_a", w.a().cokernel().module.is_isomorphic(&a.a().kernel().module))
                .check("free_target", w.in_c())
        }
        Command::Pip(o) => {
            let inst = load(&o.file)?;
            let f = pick(&inst.morphisms, o.name.as_deref(), "morphisms")?;
            let p = pip(f)?;
            let sp = sigma_pip_identity(f)?;
            let ker_zero = p.pip.a().kernel().module.is_zero();
            let coker = p.pip.a().cokernel().module.is_isomorphic(&p.kernel);
            Report::new("pip", json!({"pip": p, "sigma_pip": sp}))
                .check("kernel_zero", ker_zero)
                .check("cokernel_is_ker_k_prime", coker)
                .check("sigma_pip_identity", sp.passed)
        }
        Command::Copip(o) => {
            let inst = load(&o.file)?;
            let f = pick(&inst.morphisms, o.name.as_deref(), "morphisms")?;
            let c = copip(f)?;
            let zero = c.is_zero();
            let cofaithful = classify(f)?.cofaithful.value;
            Report::new("copip", json!({"copip": c, "is_zero": zero, "cofaithful": cofaithful}))
                .check("zero_iff_cofaithful", zero == cofaithful)
        }
        Command::Classify(o) => {
            let inst = load(&o.file)?;
            let f = pick(&inst.morphisms, o.name.as_deref(), "morphisms")?;
            Report::new("classify", classify(f)?)
        }
        Command::Dis { file, module, arrow } => {
            let inst = load(file)?;
            if module.is_some() || (arrow.is_none() && inst.arrows.is_empty()) {
                let m = pick(&inst.modules, module.as_deref(), "modules")?;
                let d = base_to_dis(m);
                let iso = base_witness(m)?.classify().iso;
                let back = dis_to_base(&d)?;
                Report::new("dis", json!({"module": m, "discrete": d}))
                    .check("discrete", d.a().is_mono())
                    .check("free_target", d.in_c())
                    .check("cokernel_is_module", iso && back.is_isomorphic(m))
            } else {
                let a = pick(&inst.arrows, arrow.as_deref(), "arrows")?;
                let m = dis_to_base(a)?;
                let w = discrete_witness(a)?;
                let ok = check_equivalence_witness(&w)?;
                Report::new("dis", json!({"arrow": a, "module": m, "witness": w}))
                    .check("witness_iso_on_ker_coker", ok)
            }
        }
        Command::ScgCheck(o) => {
            let inst = load(&o.file)?;
            let d = pick(&inst.scg, o.name.as_deref(), "scg")?;
            let violations = scg_verify(d)?;
            let ok = violations.is_empty();
            Report::new("scg-check", json!({"data": d, "violations": violations})).check("all_identities_hold", ok)
        }
        Command::ScgSearch { file, ce, cee, bound } => {
            let inst = load(file)?;
            let ce = group(&inst, ce)?;
            let cee = group(&inst, cee)?;
            let found: Vec<_> = scg_search(&ce, &cee, *bound)?.collect();
            Report::new("scg-search", json!({"count": found.len(), "structures": found}))
        }
        Command::Verify(v) => verify(v)?,
        Command::Generate(g) => return generate(g).map(Output::Document),
    };
    Ok(Output::Report(report))
}

fn arrow(o: &One) -> Result<ArrowObject> {
    let inst = load(&o.file)?;
    Ok(pick(&inst.arrows, o.name.as_deref(), "arrows")?.clone())
}

/// A group under `groups`, or one of `trivial`, `cyclic:<n>`, `S3`.
fn group(inst: &Instance, name: &str) -> Result<FiniteGroup> {
    if let Some(g) = inst.groups.get(name) {
        return Ok(g.clone());
    }
    match name {
        "trivial" => Ok(FiniteGroup::trivial()),
        "S3" => Ok(FiniteGroup::symmetric3()),
        _ => match name.strip_prefix("cyclic:").map(str::parse::<usize>) {
            Some(Ok(n)) if n >= 1 => Ok(FiniteGroup::cyclic(n)),
            _ => bail!("no group `{name}` under `groups` (built in: trivial, cyclic:<n>, S3)"),
        },
    }
}

fn snf(o: &One) -> Result<Report> {
    let inst = load(&o.file)?;
    let a = pick(&inst.matrices, o.name.as_deref(), "matrices")?;
    let d = smith_normal_form(a);
    let ring = a.ring();
    let (r, c) = a.shape();
    let diagonal = (0..r).all(|i| (0..c).all(|j| i == j || ring.is_zero(d.s.get(i, j))));
    let chain = d.diagonal.windows(2).all(|w| ring.divides(&w[0], &w[1]));
    let inverse = |m: &Matrix, inv: &Matrix, n: usize| {
        let id = Matrix::identity(ring, n);
        m.mul(inv) == id && inv.mul(m) == id
    };
    Ok(Report::new("snf", json!({"input": a, "decomposition": d}))
        .check("u_a_v_equals_s", d.u.mul(a).mul(&d.v) == d.s)
        .check("u_invertible", inverse(&d.u, &d.u_inv, r))
        .check("v_invertible", inverse(&d.v, &d.v_inv, c))
        .check("diagonal", diagonal)
        .check("divisibility_chain", chain))
}

fn verify(v: &VerifyArgs) -> Result<Report> {
    let cfg = config(&v.ring, v.seed, v.trials, v.max_generators, v.max_relations, v.entry_bound)?;
    let reports = if v.suite == "all" {
        run_all(&cfg)?
    } else {
        vec![run_suite(v.suite.parse::<Suite>()?, &cfg)?]
    };
    let mut out = Report::new("verify", &reports);
    for r in &reports {
        out = out.check(r.suite.name(), r.all_passed());
    }
    Ok(out)
}

fn generate(g: &GenerateArgs) -> Result<serde_json::Value> {
    let cfg = config(&g.ring, g.seed, 1, g.max_generators, g.max_relations, g.entry_bound)?;
    let mut gen = Generator::new(cfg.clone())?;
    let mut inst = Instance::empty(cfg.ring);
    for i in 0..g.count {
        match g.kind {
            Kind::Module => {
                inst.modules.insert(format!("M{i}"), gen.module());
            }
            Kind::Arrow => {
                inst.arrows.insert(format!("a{i}"), gen.arrow()?);
            }
            Kind::ArrowC => {
                inst.arrows.insert(format!("a{i}"), gen.arrow_c()?);
            }
            Kind::Morphism => {
                let a = gen.arrow_c()?;
                let b = gen.arrow_c()?;
                let f = gen.morphism(&a, &b)?;
                inst.arrows.insert(format!("a{i}"), a);
                inst.arrows.insert(format!("b{i}"), b);
                inst.morphisms.insert(format!("f{i}"), f);
            }
        }
    }
    Ok(serde_json::to_value(&inst)?)
}
