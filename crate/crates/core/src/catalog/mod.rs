//! Named worked examples and scripted checks of their stated properties.

mod verify;

pub use verify::{verify_named, FactResult, VerifyReport};

use crate::error::{Error, Result};
use crate::globalcoh::PlaceModel;
use crate::grpmod::{FinGroup, GModule, Subgroup};
use crate::intlat::{FgAbGroup, IntMatrix};
use crate::localcoh::PlaceSpec;

/// Entries whose fundamental group is killed by 2.
pub const PERIOD2_ENTRIES: [&str; 7] = [
    "simply_connected",
    "sl1a_mu2",
    "so_q",
    "sp_adjoint",
    "e7_adjoint",
    "d2m_adjoint",
    "hspin",
];

/// Every entry name with the meaning of its numeric parameter, if any.
pub const ENTRIES: [(&str, Option<&str>); 13] = [
    ("pgl", Some("n >= 2, default 4")),
    ("simply_connected", None),
    ("sl1a_mu2", None),
    ("so_q", None),
    ("sp_adjoint", None),
    ("e7_adjoint", None),
    ("d2m_adjoint", None),
    ("hspin", None),
    ("pu3_local", None),
    ("zi_torus", Some("j in 1..=3, default 1")),
    ("appendix_a_rank6", None),
    (
        "norm_one",
        Some("order n >= 2 of a cyclic group, default 2"),
    ),
    ("norm_one_klein", None),
];

/// A built example: group, module and places, plus the checks it should pass.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub param: Option<u64>,
    pub module: GModule,
    pub places: PlaceModel,
    /// `(fact, operation that checks it)`, in declaration order.
    pub facts: Vec<(String, &'static str)>,
}

/// Rotation by `i` on `Z[i] = Z²`.
pub fn rotation() -> IntMatrix {
    IntMatrix::from_i64(2, 2, &[0, -1, 1, 0])
}

/// `Z[i]` with `Z/4` acting by multiplication by `i`.
pub fn zi_module() -> GModule {
    GModule::from_generators(FinGroup::cyclic(4), FgAbGroup::free(2), &[(1, rotation())])
        .expect("rotation has order 4")
}

/// The three `Z[i]` factors over `Γ = (Z/4)²`: `(x, y)` acts by `i^x`, `i^y`, `i^(x+y)`.
/// Element `(x, y)` has index `4x + y`.
pub fn appendix_a_module() -> GModule {
    let g = FinGroup::cyclic(4).product(&FinGroup::cyclic(4));
    let r = rotation();
    let id = IntMatrix::identity(2);
    let ga = r.block_diag(&id).block_diag(&r);
    let gb = id.block_diag(&r).block_diag(&r);
    GModule::from_generators(g, FgAbGroup::free(6), &[(4, ga), (1, gb)])
        .expect("commuting rotations")
}

/// Factor `j ∈ {1,2,3}` of [`appendix_a_module`] as a module of its own.
pub fn appendix_a_component(j: usize) -> GModule {
    let m = appendix_a_module();
    let g = m.group().clone();
    let r = rotation();
    let id = IntMatrix::identity(2);
    let (a, b) = match j {
        1 => (r.clone(), id),
        2 => (id, r.clone()),
        _ => (r.clone(), r),
    };
    GModule::from_generators(g, FgAbGroup::free(2), &[(4, a), (1, b)]).expect("rotation")
}

fn trivial_places(count: usize, reservoir: usize) -> PlaceModel {
    let places = (1..=count)
        .map(|k| PlaceSpec::finite(&format!("v{k}"), Subgroup::trivial(), None))
        .collect();
    PlaceModel::new(places, reservoir)
}

fn full_places(g: &FinGroup, reservoir: usize) -> PlaceModel {
    let d = Subgroup::whole(g);
    PlaceModel::new(
        vec![
            PlaceSpec::finite("v", d.clone(), Some(5)),
            PlaceSpec::finite("u", d, Some(13)),
        ],
        reservoir,
    )
}

fn period2_facts() -> Vec<(String, &'static str)> {
    vec![
        ("2·M = 0".into(), "period2_property"),
        ("period 2 property holds".into(), "period2_property"),
        ("every class has period dividing 2".into(), "period_global"),
    ]
}

pub fn build_named(name: &str, param: Option<u64>) -> Result<CatalogEntry> {
    let trivial_over = |orders: &[i64]| {
        GModule::trivial(FinGroup::trivial(), FgAbGroup::from_cyclic_orders(orders))
    };
    let no_param = |e: &str| -> Result<()> {
        match param {
            Some(_) => Err(Error::Invalid(format!("entry `{e}` takes no parameter"))),
            None => Ok(()),
        }
    };
    let (module, places, facts) = match name {
        "pgl" => {
            let n = param.unwrap_or(4);
            if !(2..=64).contains(&n) {
                return Err(Error::Invalid(format!("pgl needs 2 <= n <= 64, got {n}")));
            }
            let facts = vec![
                ("Θ = 1".into(), "per_equals_ind_guarantee"),
                (
                    "per = ind for every enumerated class".into(),
                    "index_bounds_global",
                ),
                (
                    format!(
                        "period 2 property {}",
                        if n <= 2 { "holds" } else { "fails" }
                    ),
                    "period2_property",
                ),
            ];
            (trivial_over(&[n as i64]), trivial_places(3, 1), facts)
        }
        "simply_connected" => {
            no_param(name)?;
            (trivial_over(&[]), trivial_places(2, 0), period2_facts())
        }
        "sl1a_mu2" | "so_q" | "sp_adjoint" | "e7_adjoint" | "hspin" => {
            no_param(name)?;
            (trivial_over(&[2]), trivial_places(2, 0), period2_facts())
        }
        "d2m_adjoint" => {
            no_param(name)?;
            (trivial_over(&[2, 2]), trivial_places(2, 0), period2_facts())
        }
        "pu3_local" => {
            no_param(name)?;
            let m = GModule::from_generators(
                FinGroup::cyclic(2),
                FgAbGroup::from_cyclic_orders(&[3]),
                &[(1, IntMatrix::from_i64(1, 1, &[-1]))],
            )?;
            let d = Subgroup::whole(m.group());
            let places = PlaceModel::new(vec![PlaceSpec::finite("v", d, Some(5))], 0);
            let facts = vec![
                ("H¹ at the place is trivial".into(), "h1_local"),
                ("2·M ≠ 0".into(), "period2_property"),
            ];
            (m, places, facts)
        }
        "zi_torus" => {
            let j = param.unwrap_or(1);
            if !(1..=3).contains(&j) {
                return Err(Error::Invalid(format!(
                    "zi_torus needs j in 1..=3, got {j}"
                )));
            }
            let m = zi_module();
            let places = full_places(m.group(), 1);
            let facts = vec![
                ("M_Γ ≅ Z/2".into(), "coinvariants"),
                (
                    "M_Δ ≅ (Z/2)² over the index-2 subgroup".into(),
                    "coinvariants",
                ),
                ("transfer of the generator is [1+i] ≠ 0".into(), "transfer"),
                (
                    "glued class with nonzero localizations has order 2".into(),
                    "glue_local_classes",
                ),
                ("Sha vanishes".into(), "sha_kernel"),
            ];
            (m, places, facts)
        }
        "appendix_a_rank6" => {
            no_param(name)?;
            let m = appendix_a_module();
            let places = full_places(m.group(), 0);
            let facts = vec![
                (
                    "H¹ at v is the product of the three factors".into(),
                    "h1_local",
                ),
                (
                    "transfer to each index-2 subgroup is injective on its factor".into(),
                    "transfer",
                ),
                ("per(ξ) = 2".into(), "period_global"),
                (
                    "local index lower bound at v divisible by 4".into(),
                    "local_index",
                ),
                (
                    "every splitting model of degree ≤ 16 has degree ≡ 0 mod 4".into(),
                    "local_index",
                ),
                (
                    "global index lower bound divisible by 4".into(),
                    "index_bounds_global",
                ),
            ];
            (m, places, facts)
        }
        "norm_one" => {
            let n = param.unwrap_or(2);
            if !(2..=8).contains(&n) {
                return Err(Error::Invalid(format!(
                    "norm_one needs 2 <= n <= 8, got {n}"
                )));
            }
            let m = GModule::augmentation_ideal(FinGroup::cyclic(n as usize));
            let facts = vec![("Sha vanishes for cyclic Γ".into(), "sha_kernel")];
            (m, PlaceModel::new(vec![], 1), facts)
        }
        "norm_one_klein" => {
            no_param(name)?;
            let m = GModule::augmentation_ideal(FinGroup::klein_four());
            let facts = vec![
                ("Sha is nontrivial and stable".into(), "sha_kernel"),
                ("Θ is not Sylow-cyclic".into(), "split_degree_global"),
            ];
            (m, PlaceModel::new(vec![], 1), facts)
        }
        other => return Err(Error::UnknownEntry(other.to_string())),
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        param,
        module,
        places,
        facts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::int_vec;

    #[test]
    fn builds_every_entry() {
        for (name, _) in ENTRIES {
            let e = build_named(name, None).unwrap();
            assert!(!e.facts.is_empty(), "{name}");
        }
        assert!(matches!(
            build_named("nope", None),
            Err(Error::UnknownEntry(_))
        ));
        assert!(build_named("so_q", Some(3)).is_err());
        assert!(build_named("pgl", Some(1)).is_err());
    }

    #[test]
    fn entry_shapes() {
        let p = build_named("pgl", Some(4)).unwrap();
        assert_eq!(p.module.base().invariant_factors(), &int_vec(&[4])[..]);
        assert!(p.module.is_trivial_action());
        let pu3 = build_named("pu3_local", None).unwrap();
        assert_eq!(pu3.module.group().order(), 2);
        assert_eq!(pu3.module.action(1), &IntMatrix::from_i64(1, 1, &[-1]));
        let zi = build_named("zi_torus", None).unwrap();
        assert_eq!(zi.module.action(1), &rotation());
    }

    #[test]
    fn rank6_is_sum_of_components() {
        let m = appendix_a_module();
        let sum = appendix_a_component(1)
            .direct_sum(&appendix_a_component(2))
            .unwrap()
            .direct_sum(&appendix_a_component(3))
            .unwrap();
        for g in m.group().elements() {
            assert_eq!(m.action(g), sum.action(g));
        }
        for j in 1..=3 {
            let c = appendix_a_component(j);
            assert_eq!(c.image_group(&Subgroup::whole(c.group())).order(), 4);
        }
    }
}
