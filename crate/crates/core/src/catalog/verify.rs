use num_bigint::BigInt;

use super::{appendix_a_component, build_named, CatalogEntry};
use crate::error::Result;
use crate::globalcoh::{
    global_ab_group, glue_local_classes, index_bounds_global, per_equals_ind_guarantee,
    period2_property, period_global, sha_kernel, split_degree_global, GlobalAbGroup, GlobalClass,
    GlueOutcome, LocalValue,
};
use crate::grpmod::{all_subgroups, coinvariants, transfer, transfer_hom, GModule, Subgroup};
use crate::intlat::{int_vec, is_injective, Order};
use crate::localcoh::{h1_local, local_index, LocalH1};

/// Outcome of one expected fact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactResult {
    pub fact: String,
    pub operation: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub entry: String,
    pub facts: Vec<FactResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.facts.iter().all(|f| f.passed)
    }
}

type Check = Result<(bool, String)>;

fn invariants(g: &crate::intlat::FgAbGroup) -> String {
    g.describe()
}

fn glue_pair(
    m: &GModule,
    e: &CatalogEntry,
    value: Vec<BigInt>,
) -> Result<(GlobalAbGroup, GlobalClass)> {
    let v = LocalValue::Finite(value);
    let (gab, out) = glue_local_classes(m, &e.places, &[("v".into(), v.clone()), ("u".into(), v)])?;
    match out {
        GlueOutcome::Glued(x) => Ok((gab, x)),
        GlueOutcome::Obstruction(o) => Err(crate::Error::Obstruction(format!("{o:?}"))),
    }
}

fn pgl_checks(e: &CatalogEntry) -> Vec<Check> {
    let m = &e.module;
    let n = e.param.unwrap_or(4);
    vec![
        Ok((per_equals_ind_guarantee(m), "image of Γ is trivial".into())),
        (|| {
            let gab = global_ab_group(m, &e.places)?;
            let classes = gab.classes();
            let mut bad = 0;
            for x in &classes {
                let b = index_bounds_global(&gab, x, n, false)?;
                if !(b.lower == b.period && b.achieved == Some(b.period)) {
                    bad += 1;
                }
            }
            Ok((
                bad == 0,
                format!("{} classes, {bad} mismatches", classes.len()),
            ))
        })(),
        (|| {
            let r = period2_property(m)?;
            let expected = n <= 2;
            let witness_ok = match &r.witness {
                Some(w) => w.period == n,
                None => expected,
            };
            let detail = match &r.witness {
                Some(w) => format!("witness of period {} at `{}`", w.period, w.place),
                None => format!("holds = {}", r.holds),
            };
            Ok((r.holds == expected && witness_ok, detail))
        })(),
    ]
}

fn period2_checks(e: &CatalogEntry) -> Vec<Check> {
    let m = &e.module;
    vec![
        Ok((m.killed_by(&BigInt::from(2)), invariants(m.base()))),
        period2_property(m).map(|r| (r.holds, format!("holds = {}", r.holds))),
        (|| {
            let gab = global_ab_group(m, &e.places)?;
            let classes = gab.classes();
            let ok = classes.iter().all(|x| 2 % period_global(&gab, x) == 0);
            Ok((ok, format!("{} classes", classes.len())))
        })(),
    ]
}

fn pu3_checks(e: &CatalogEntry) -> Vec<Check> {
    let m = &e.module;
    vec![
        h1_local(m, &e.places.named_places[0]).map(|h| (h.is_trivial(), invariants(&h))),
        Ok((!m.killed_by(&BigInt::from(2)), invariants(m.base()))),
    ]
}

fn zi_checks(e: &CatalogEntry) -> Vec<Check> {
    let m = &e.module;
    let g = m.group();
    let half = Subgroup::generated(g, &[2]);
    vec![
        Ok({
            let c = coinvariants(m, &Subgroup::whole(g)).full;
            (c.invariant_factors() == &int_vec(&[2])[..], invariants(&c))
        }),
        Ok({
            let c = coinvariants(m, &half).full;
            (
                c.invariant_factors() == &int_vec(&[2, 2])[..],
                invariants(&c),
            )
        }),
        Ok({
            let cs = coinvariants(m, &half);
            let t = transfer(m, &half, &int_vec(&[1]));
            let one_plus_i = cs.torsion_class_of(&int_vec(&[1, 1])).expect("torsion");
            let nonzero = !cs.torsion.is_zero(&t);
            (t == one_plus_i && nonzero, format!("T(1) = {t:?}"))
        }),
        (|| {
            let (gab, x) = glue_pair(m, e, int_vec(&[1]))?;
            let ord = gab.group.element_order(&x.ab);
            let locs_ok =
                gab.localize(0, &x.ab) == int_vec(&[1]) && gab.localize(1, &x.ab) == int_vec(&[1]);
            Ok((
                ord == Order::Finite(BigInt::from(2)) && locs_ok,
                format!("order {ord}"),
            ))
        })(),
        sha_kernel(m, &e.places).map(|s| (s.group.is_trivial() && s.stable, invariants(&s.group))),
    ]
}

/// The index-2 subgroup on which factor `j` has image of order 2.
fn factor_subgroup(c: &GModule) -> Subgroup {
    let g = c.group();
    all_subgroups(g)
        .into_iter()
        .find(|h| h.order() * 2 == g.order() && c.image_group(h).order() == 2)
        .expect("each factor has such a subgroup")
}

fn appendix_a_checks(e: &CatalogEntry) -> Vec<Check> {
    let m = &e.module;
    let v = &e.places.named_places[0];
    let glued = glue_pair(m, e, int_vec(&[1, 1, 1]));
    let mut out: Vec<Check> = vec![
        (|| {
            let h = h1_local(m, v)?;
            let mut prod = BigInt::from(1);
            for j in 1..=3 {
                prod *= h1_local(&appendix_a_component(j), v)?
                    .order()
                    .expect("finite");
            }
            let n = h.elements().map(|e| e.len()).unwrap_or(0);
            Ok((
                h.order() == Some(prod.clone()) && BigInt::from(n) == prod,
                format!("{} with {n} elements", invariants(&h)),
            ))
        })(),
        Ok({
            let mut ok = true;
            for j in 1..=3 {
                let c = appendix_a_component(j);
                let h = factor_subgroup(&c);
                ok &= is_injective(&transfer_hom(&c, &Subgroup::whole(c.group()), &h));
            }
            (ok, "three factors".into())
        }),
    ];
    match glued {
        Err(err) => {
            for _ in 0..4 {
                out.push(Err(err.clone()));
            }
        }
        Ok((gab, x)) => {
            let per = period_global(&gab, &x);
            out.push(Ok((per == 2, format!("per = {per}"))));
            let local = (|| {
                let h = LocalH1::new(m, v)?;
                let lx = h.class(gab.localize(0, &x.ab))?;
                local_index(m, &h, &lx, 16, true)
            })();
            match local {
                Ok(r) => {
                    out.push(Ok((
                        r.lower_bound % 4 == 0,
                        format!("lower bound {}", r.lower_bound),
                    )));
                    let ok = r.splitting_degrees.iter().all(|d| d % 4 == 0);
                    out.push(Ok((
                        ok,
                        format!("splitting degrees {:?}", r.splitting_degrees),
                    )));
                }
                Err(err) => {
                    out.push(Err(err.clone()));
                    out.push(Err(err));
                }
            }
            out.push(index_bounds_global(&gab, &x, 16, true).map(|b| {
                (
                    b.lower % 4 == 0,
                    format!("lower {} upper {}", b.lower, b.upper),
                )
            }));
        }
    }
    out
}

fn norm_one_checks(e: &CatalogEntry) -> Vec<Check> {
    let m = &e.module;
    match e.name.as_str() {
        "norm_one" => vec![sha_kernel(m, &e.places)
            .map(|s| (s.group.is_trivial() && s.stable, invariants(&s.group)))],
        _ => vec![
            sha_kernel(m, &e.places).map(|s| {
                (
                    !s.group.is_trivial() && s.stable,
                    format!("{} stable = {}", invariants(&s.group), s.stable),
                )
            }),
            Ok({
                let b = split_degree_global(m, 2);
                (!b.sylow_cyclic, format!("ϑ = {}", b.theta))
            }),
        ],
    }
}

/// Evaluates every expected fact of an entry; failures are report content.
pub fn verify_named(name: &str, param: Option<u64>) -> Result<VerifyReport> {
    let e = build_named(name, param)?;
    let checks = match name {
        "pgl" => pgl_checks(&e),
        "pu3_local" => pu3_checks(&e),
        "zi_torus" => zi_checks(&e),
        "appendix_a_rank6" => appendix_a_checks(&e),
        "norm_one" | "norm_one_klein" => norm_one_checks(&e),
        _ => period2_checks(&e),
    };
    debug_assert_eq!(checks.len(), e.facts.len());
    let facts = e
        .facts
        .iter()
        .zip(checks)
        .map(|((fact, op), c)| {
            let (passed, detail) = c.unwrap_or_else(|err| (false, err.to_string()));
            FactResult {
                fact: fact.clone(),
                operation: op.to_string(),
                passed,
                detail,
            }
        })
        .collect();
    Ok(VerifyReport {
        entry: e.name,
        facts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::ENTRIES;

    #[test]
    fn every_entry_verifies() {
        for (name, _) in ENTRIES {
            let r = verify_named(name, None).unwrap();
            assert!(r.all_pass(), "{name}: {:?}", r.facts);
        }
        for n in [2, 3, 6] {
            assert!(verify_named("pgl", Some(n)).unwrap().all_pass());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_named("appendix_a_rank6", None).unwrap();
        let b = verify_named("appendix_a_rank6", None).unwrap();
        assert_eq!(a, b);
    }
}
