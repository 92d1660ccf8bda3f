use galcoh::catalog::{self, VerifyReport, ENTRIES, PERIOD2_ENTRIES};
use galcoh::gille::verify_witness;
use galcoh::globalcoh::{
    glue_local_classes, index_bounds_global, per_equals_ind_guarantee, period2_property,
    period_global, power_global, sha_kernel, split_degree_global, ArchFiber, FiberPoint,
    GlueOutcome, LocalValue,
};
use galcoh::localcoh::{local_index, period_local, power_local, split_degree_local, LocalClass};
use galcoh::{LocalH1, PlaceKind};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{Model, ModelConfig};
use crate::literal::{format_class, format_vector, global_class, parse_vector};
use crate::report::Report;
use crate::CliError;

pub type Out = Result<Report, CliError>;

fn local_class(m: &Model, place: &str, lit: &str) -> Result<(LocalH1, LocalClass), CliError> {
    let h = LocalH1::new(&m.module, m.place(place)?)?;
    let x = h.class(parse_vector(lit)?)?;
    Ok((h, x))
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn h1(m: &Model, local: Option<&str>, enumerate: bool) -> Out {
    let mut r = Report::new("h1");
    match local {
        Some(p) => {
            let h = LocalH1::new(&m.module, m.place(p)?)?;
            r.push("place", p)
                .push("kind", h.place.kind.to_string())
                .push("group", h.group.describe())
                .push("invariant_factors", strings(h.group.invariant_factors()));
            if let Some(o) = h.group.order() {
                r.push("order", o.to_string());
            }
        }
        None => {
            let gab = m.global()?;
            r.push("scope", "global")
                .push("orbits", gab.orbits.len() as u64)
                .push("ab_group", gab.group.describe())
                .push("invariant_factors", strings(gab.group.invariant_factors()));
            let classes = gab.classes();
            r.push("classes", classes.len() as u64);
            if enumerate {
                let lits: Vec<String> = classes.iter().map(format_class).collect();
                r.push("elements", lits);
            }
        }
    }
    Ok(r)
}

pub fn power(m: &Model, d: i64, class: &str, local: Option<&str>) -> Out {
    let mut r = Report::new("power");
    r.push("d", d);
    match local {
        Some(p) => {
            let (h, x) = local_class(m, p, class)?;
            let y = power_local(&h, &x, d);
            r.push("place", p)
                .push("class", format_vector(&x.value))
                .push("power", format_vector(&y.value));
        }
        None => {
            let gab = m.global()?;
            let x = global_class(&gab, class)?;
            let y = power_global(&gab, &x, d);
            gab.check_compatible(&y.ab, &y.inf)?;
            r.push("class", format_class(&x))
                .push("power", format_class(&y))
                .push("neutral", gab.is_neutral(&y));
        }
    }
    Ok(r)
}

pub fn period(m: &Model, class: &str, local: Option<&str>) -> Out {
    let mut r = Report::new("period");
    match local {
        Some(p) => {
            let (h, x) = local_class(m, p, class)?;
            r.push("place", p)
                .push("class", format_vector(&x.value))
                .push("period", period_local(&h, &x));
        }
        None => {
            let gab = m.global()?;
            let x = global_class(&gab, class)?;
            r.push("class", format_class(&x))
                .push("period", period_global(&gab, &x));
        }
    }
    Ok(r)
}

pub fn index(m: &Model, class: &str, bound: u64, strict: bool, local: Option<&str>) -> Out {
    let mut r = Report::new("index");
    r.push("max_degree", bound).push("strict_quadratic", strict);
    match local {
        Some(p) => {
            let (h, x) = local_class(m, p, class)?;
            let rep = local_index(&m.module, &h, &x, bound, strict)?;
            r.push("place", p)
                .push("class", format_vector(&x.value))
                .push("period", rep.period)
                .push("lower_bound", rep.lower_bound)
                .push("search_gcd", rep.search_gcd)
                .push("splitting_degrees", rep.splitting_degrees.clone())
                .push("examined", rep.examined as u64);
        }
        None => {
            let gab = m.global()?;
            let x = global_class(&gab, class)?;
            let b = index_bounds_global(&gab, &x, bound, strict)?;
            r.push("class", format_class(&x))
                .push("period", b.period)
                .push("lower", b.lower)
                .push("upper", b.upper.to_string())
                .push("exponent", b.exponent)
                .push("achieved", b.achieved)
                .push("splitting_degrees", b.splitting_degrees.clone());
        }
    }
    Ok(r)
}

pub fn split_bound(m: &Model, n: u64, local: Option<&str>) -> Out {
    if n == 0 {
        return Err(CliError::Input("--n must be positive".into()));
    }
    let mut r = Report::new("split-bound");
    r.push("n", n);
    match local {
        Some(p) => {
            let b = split_degree_local(&m.module, &m.place(p)?.decomposition, n);
            r.push("place", p)
                .push("bound_ab", b.bound_ab)
                .push("bound_pow", b.bound_pow.to_string())
                .push("theta", b.theta.theta)
                .push("theta_ab", b.theta.theta_ab)
                .push("sylow_cyclic", b.theta.sylow_cyclic);
        }
        None => {
            let b = split_degree_global(&m.module, n);
            r.push("scope", "global")
                .push("degree", b.degree)
                .push("theta", b.theta)
                .push("sylow_cyclic", b.sylow_cyclic);
        }
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckKind {
    Period2,
    PerEqInd,
    SylowCyclic,
    Sha,
}

pub fn check(m: &Model, what: CheckKind) -> Out {
    let mut r = Report::new("check");
    match what {
        CheckKind::Period2 => {
            let p = period2_property(&m.module)?;
            r.push("check", "period2").push("holds", p.holds);
            if let Some(w) = &p.witness {
                r.push("witness_place", w.place.clone())
                    .push("witness_local", format_vector(&w.local))
                    .push("witness_class", format_class(&w.class))
                    .push("witness_period", w.period);
            }
        }
        CheckKind::PerEqInd => {
            r.push("check", "per-eq-ind")
                .push("holds", per_equals_ind_guarantee(&m.module));
        }
        CheckKind::SylowCyclic => {
            let b = split_degree_global(&m.module, 1);
            r.push("check", "sylow-cyclic")
                .push("theta", b.theta)
                .push("holds", b.sylow_cyclic);
        }
        CheckKind::Sha => {
            let s = sha_kernel(&m.module, &m.places)?;
            r.push("check", "sha")
                .push("group", s.group.describe())
                .push("invariant_factors", strings(s.group.invariant_factors()))
                .push("trivial", s.group.is_trivial())
                .push("stable", s.stable)
                .push("depth", s.depth as u64);
        }
    }
    Ok(r)
}

pub fn glue(m: &Model, at: &[String]) -> Out {
    let gab = m.global()?;
    let mut prescribed = Vec::new();
    for spec in at {
        let (name, lit) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("--at `{spec}`: expected <place>=<class>")))?;
        let place = m.place(name)?;
        let v = parse_vector(lit)?;
        let value = match place.kind {
            PlaceKind::Real => {
                let ri = gab.real_index(name).expect("real place");
                match &gab.fibers[ri] {
                    ArchFiber::Torus(_) => LocalValue::Real(FiberPoint::Torus(v)),
                    ArchFiber::Abstract { .. } => match v.as_slice() {
                        [i] => LocalValue::Real(FiberPoint::Abstract(i.to_usize().ok_or_else(
                            || CliError::Input(format!("--at `{spec}`: bad fiber index")),
                        )?)),
                        _ => {
                            return Err(CliError::Input(format!(
                                "--at `{spec}`: an abstract fiber point is a single index"
                            )))
                        }
                    },
                }
            }
            _ => LocalValue::Finite(v),
        };
        prescribed.push((name.to_string(), value));
    }
    let (gab, out) = glue_local_classes(&m.module, &m.places, &prescribed)?;
    let mut r = Report::new("glue");
    r.push("reservoir", gab.model.reservoir_depth as u64);
    match out {
        GlueOutcome::Glued(x) => {
            r.push("outcome", "glued")
                .push("class", format_class(&x))
                .push("period", period_global(&gab, &x));
        }
        GlueOutcome::Obstruction(o) => {
            r.push("outcome", "obstruction")
                .push("obstruction", format_vector(&o));
        }
    }
    Ok(r)
}

fn push_verify(r: &mut Report, prefix: &str, v: &VerifyReport) {
    for f in &v.facts {
        let status = if f.passed { "pass" } else { "FAIL" };
        r.push(
            &format!("{prefix}{}", f.fact),
            format!("{status}  {}", f.detail),
        );
        r.failed |= !f.passed;
    }
}

pub fn verify(target: &str, n: Option<u64>) -> Out {
    let mut r = Report::new(&format!("verify {target}"));
    if n.is_some() && target != "pgl" {
        return Err(CliError::Input("--n applies only to `verify pgl`".into()));
    }
    match target {
        "gille" => {
            let w = verify_witness();
            for c in &w.checks {
                let status = if c.passed { "pass" } else { "FAIL" };
                r.push(&c.name, format!("{status}  {}", c.detail));
            }
            r.push("H1(K', E8) order", w.h1_e8_order);
            r.push("conclusion", w.conclusion);
            r.failed = !w.all_pass();
        }
        "period2-list" => {
            for name in PERIOD2_ENTRIES {
                let v = catalog::verify_named(name, None)?;
                push_verify(&mut r, &format!("{name}: "), &v);
            }
        }
        other => {
            let name = match other {
                "appendix-a" => "appendix_a_rank6",
                "pu3" => "pu3_local",
                x => x,
            };
            let v = catalog::verify_named(name, n)?;
            push_verify(&mut r, "", &v);
        }
    }
    r.push("result", if r.failed { "fail" } else { "pass" });
    Ok(r)
}

pub fn catalog_list() -> Out {
    let mut r = Report::new("catalog list");
    for (name, param) in ENTRIES {
        r.push(name, param.unwrap_or("-"));
    }
    Ok(r)
}

pub fn catalog_model(name: &str, param: Option<u64>) -> Result<Model, CliError> {
    let e = catalog::build_named(name, param)?;
    let mut places = e.places;
    places.max_orbits = crate::config::max_orbits()?;
    Ok(Model {
        module: e.module,
        places,
        fibers: vec![],
    })
}

pub fn dump(m: &Model) -> String {
    ModelConfig::from_model(m).to_json() + "\n"
}

/// Seeded spot checks of the power operation on random classes of the model.
pub fn sample(m: &Model, cases: usize, seed: u64) -> Out {
    let gab = m.global()?;
    let classes = gab.classes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut composition, mut compatible, mut minimal) = (0u64, 0u64, 0u64);
    let mut first_failure: Option<String> = None;
    for _ in 0..cases {
        let x = &classes[rng.gen_range(0..classes.len())];
        let a = rng.gen_range(-6i64..=6);
        let b = rng.gen_range(-6i64..=6);
        let lhs = power_global(&gab, &power_global(&gab, x, a), b);
        let ok_c = lhs == power_global(&gab, x, a * b);
        let ok_k = gab.check_compatible(&lhs.ab, &lhs.inf).is_ok();
        let per = period_global(&gab, x) as i64;
        let ok_m = gab.is_neutral(&power_global(&gab, x, per))
            && (1..per).all(|k| !gab.is_neutral(&power_global(&gab, x, k)));
        composition += ok_c as u64;
        compatible += ok_k as u64;
        minimal += ok_m as u64;
        if !(ok_c && ok_k && ok_m) && first_failure.is_none() {
            first_failure = Some(format!("{} with a = {a}, b = {b}", format_class(x)));
        }
    }
    let mut r = Report::new("sample");
    r.push("seed", seed)
        .push("cases", cases as u64)
        .push("power_composition", composition)
        .push("power_compatible", compatible)
        .push("period_minimal", minimal)
        .push(
            "first_failure",
            first_failure.clone().map_or(Value::Null, |s| json!(s)),
        );
    r.failed = first_failure.is_some();
    Ok(r)
}
