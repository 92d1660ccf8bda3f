use num_bigint::BigInt;
use num_integer::Integer;

use super::class::{period_global, GlobalClass};
use super::glue::{GlueOutcome, LocalValue};
use super::model::{FiberPoint, GlobalAbGroup, PlaceModel};
use crate::error::{Error, Result};
use crate::grpmod::{all_subgroups, transfer_hom, GModule, Subgroup};
use crate::intlat::{AbHom, FgAbGroup, GroupElement};
use crate::localcoh::{
    capacity, floor_log2, local_index, quadratic_subextensions, restriction_kills,
    square_class_model, theta_data, ExtensionModelLocal, LocalClass, LocalH1, PlaceKind,
    QuadraticLabels,
};

/// A global class restricted to an extension model `(Δ, m)`.
#[derive(Clone, Debug)]
pub struct RestrictedClass {
    pub delta: Subgroup,
    pub multiplier: u64,
    /// `(M[S̃]₀)_{Δ,Tors}`.
    pub group: FgAbGroup,
    pub ab: GroupElement,
    /// Per real place: `None` once complexified.
    pub inf: Vec<Option<FiberPoint>>,
}

impl RestrictedClass {
    pub fn degree(&self, gab: &GlobalAbGroup) -> u64 {
        self.delta.index_in(gab.module.group()) as u64 * self.multiplier
    }

    pub fn is_neutral(&self, gab: &GlobalAbGroup) -> bool {
        self.group.is_zero(&self.ab)
            && gab
                .fibers
                .iter()
                .zip(&self.inf)
                .all(|(f, p)| p.as_ref().is_none_or(|p| f.is_neutral(p)))
    }
}

fn restrict_with(
    gab: &GlobalAbGroup,
    x: &GlobalClass,
    delta: &Subgroup,
    transfer: &AbHom,
    multiplier: u64,
    complexified: &[String],
) -> Result<RestrictedClass> {
    let g = gab.module.group();
    if multiplier == 0 {
        return Err(Error::Invalid("multiplier must be at least 1".into()));
    }
    for name in complexified {
        if gab.real_index(name).is_none() {
            return Err(Error::PlaceKind(format!("`{name}` is not a real place")));
        }
    }
    let degree = delta.index_in(g) as u64 * multiplier;
    if degree % 2 == 1 && !complexified.is_empty() {
        return Err(Error::Parity(format!(
            "an extension of odd degree {degree} keeps every real place real"
        )));
    }
    let mut inf = Vec::new();
    for (&o, p) in gab.real_orbits.iter().zip(&x.inf) {
        let place = &gab.orbits[o].place;
        let cx = complexified.contains(&place.name);
        if multiplier % 2 == 0 && !cx {
            return Err(Error::Parity(format!(
                "even multiplier requires complexifying real place `{}`",
                place.name
            )));
        }
        if cx {
            inf.push(None);
        } else if delta.contains(place.sigma.expect("real place")) {
            inf.push(Some(p.clone()));
        } else {
            return Err(Error::Invalid(format!(
                "real place `{}` becomes complex over this extension and must be listed",
                place.name
            )));
        }
    }
    let t = transfer.apply(&x.ab);
    let ab = transfer.dst.scale(&BigInt::from(multiplier), &t);
    Ok(RestrictedClass {
        delta: delta.clone(),
        multiplier,
        group: transfer.dst.clone(),
        ab,
        inf,
    })
}

/// Restriction to an extension meeting the splitting field in the fixed field of `Δ`,
/// with a disjoint part of degree `multiplier`.
pub fn restrict_global(
    gab: &GlobalAbGroup,
    x: &GlobalClass,
    delta: &Subgroup,
    multiplier: u64,
    complexified: &[String],
) -> Result<RestrictedClass> {
    let g = gab.module.group();
    Subgroup::from_members(g, delta.members())?;
    let t = transfer_hom(&gab.sum_zero, &Subgroup::whole(g), delta);
    restrict_with(gab, x, delta, &t, multiplier, complexified)
}

/// Period/index data of a global class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexBounds {
    pub period: u64,
    /// Proven divisor of the index.
    pub lower: u64,
    /// `per^d`, a proven multiple of the index.
    pub upper: BigInt,
    /// `d = gen(M)·ϑ + ⌊log₂ ϑ⌋ + 1`.
    pub exponent: u32,
    /// Smallest splitting degree found.
    pub achieved: Option<u64>,
    pub splitting_degrees: Vec<u64>,
}

/// `gen(M)·ϑ + ⌊log₂ ϑ⌋ + 1` with `ϑ = #Θ`.
pub fn index_exponent(m: &GModule) -> u32 {
    let theta = m.image_group(&Subgroup::whole(m.group())).order() as u64;
    m.base().min_generators() as u32 * theta as u32 + floor_log2(theta) + 1
}

fn strict_applies(place: &crate::localcoh::PlaceSpec) -> bool {
    place.kind == PlaceKind::Finite
        && place
            .residue_size
            .is_some_and(|q| square_class_model(q).is_ok())
}

struct NamedLocal {
    h: LocalH1,
    x: LocalClass,
    strict: Option<QuadraticLabels>,
    p: u64,
}

fn named_locals(gab: &GlobalAbGroup, x: &GlobalClass, strict: bool) -> Result<Vec<NamedLocal>> {
    let mut out = Vec::new();
    for (o, orb) in gab.orbits.iter().enumerate() {
        if orb.reservoir || orb.place.kind != PlaceKind::Finite {
            continue;
        }
        let h = LocalH1::new(&gab.module, &orb.place)?;
        let lx = h.class(gab.localize(o, &x.ab))?;
        let (labels, p) = if strict && strict_applies(&orb.place) {
            let sq = square_class_model(orb.place.residue_size.unwrap())?;
            (
                Some(QuadraticLabels::new(&gab.module, &orb.place.decomposition)?),
                sq.residue_characteristic,
            )
        } else {
            (None, 0)
        };
        out.push(NamedLocal {
            h,
            x: lx,
            strict: labels,
            p,
        });
    }
    Ok(out)
}

/// Whether the extension model of total degree `degree` has full local degree at a named
/// place, is admissible there, and splits the local class.
fn splits_locally(
    gab: &GlobalAbGroup,
    nl: &NamedLocal,
    delta: &Subgroup,
    degree: u64,
) -> Result<bool> {
    let d = &nl.h.place.decomposition;
    let dv = delta.intersect(d);
    let local_galois = (d.order() / dv.order()) as u64;
    if degree % local_galois != 0 {
        return Ok(false);
    }
    let ext = ExtensionModelLocal {
        delta: dv,
        multiplier: degree / local_galois,
    };
    if let Some(labels) = &nl.strict {
        if ext.multiplier % nl.p == 0 {
            return Ok(false);
        }
        if degree % 2 == 0 && quadratic_subextensions(labels, &ext).is_empty() {
            return Ok(false);
        }
    }
    restriction_kills(&gab.module, &nl.h, &nl.x, &ext)
}

pub fn index_bounds_global(
    gab: &GlobalAbGroup,
    x: &GlobalClass,
    search_bound: u64,
    strict_quadratic: bool,
) -> Result<IndexBounds> {
    let g = gab.module.group();
    let period = period_global(gab, x);
    let locals = named_locals(gab, x, strict_quadratic)?;
    let mut lower = period;
    for nl in &locals {
        let r = local_index(&gab.module, &nl.h, &nl.x, 1, nl.strict.is_some())?;
        lower = lower.lcm(&r.lower_bound);
    }
    for (f, p) in gab.fibers.iter().zip(&x.inf) {
        if !f.is_neutral(p) {
            lower = lower.lcm(&2);
        }
    }
    let exponent = index_exponent(&gab.module);
    let upper = num_traits::pow(BigInt::from(period), exponent as usize);

    let reals: Vec<String> = gab
        .real_orbits
        .iter()
        .map(|&o| gab.orbits[o].place.name.clone())
        .collect();
    let mut degrees = std::collections::BTreeSet::new();
    for delta in all_subgroups(g) {
        let idx = delta.index_in(g) as u64;
        if idx > search_bound {
            continue;
        }
        let transfer = transfer_hom(&gab.sum_zero, &Subgroup::whole(g), &delta);
        let mut mult = 1;
        while idx * mult <= search_bound {
            let degree = idx * mult;
            let cx: &[String] = if degree % 2 == 0 { &reals } else { &[] };
            if let Ok(r) = restrict_with(gab, x, &delta, &transfer, mult, cx) {
                let mut split = r.is_neutral(gab);
                for nl in &locals {
                    if !split {
                        break;
                    }
                    split = splits_locally(gab, nl, &delta, degree)?;
                }
                if split {
                    degrees.insert(degree);
                }
            }
            mult += 1;
        }
    }
    Ok(IndexBounds {
        period,
        lower,
        upper,
        exponent,
        achieved: degrees.iter().next().copied(),
        splitting_degrees: degrees.into_iter().collect(),
    })
}

/// Splitting-degree guarantee `n·cp(n, ϑ)` for classes of period `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlobalSplitBound {
    pub degree: u64,
    /// `Θ` Sylow-cyclic: the degree splits the class outright, not only into Sha.
    pub sylow_cyclic: bool,
    pub theta: u64,
}

pub fn split_degree_global(m: &GModule, n: u64) -> GlobalSplitBound {
    let t = theta_data(m, &Subgroup::whole(m.group()));
    GlobalSplitBound {
        degree: n * capacity(n, t.theta),
        sylow_cyclic: t.sylow_cyclic,
        theta: t.theta,
    }
}

/// A class of period greater than 2, glued from a place with trivial decomposition.
#[derive(Clone, Debug)]
pub struct Period2Witness {
    pub model: GlobalAbGroup,
    pub place: String,
    pub local: GroupElement,
    pub class: GlobalClass,
    pub period: u64,
}

#[derive(Clone, Debug)]
pub struct Period2Report {
    pub holds: bool,
    pub witness: Option<Period2Witness>,
}

/// Whether `2·M = 0`; otherwise tries to exhibit a class of larger period.
pub fn period2_property(m: &GModule) -> Result<Period2Report> {
    let holds = m.killed_by(&BigInt::from(2));
    if holds {
        return Ok(no_witness(true));
    }
    let tors = crate::grpmod::coinvariants(m, &Subgroup::trivial()).torsion;
    let Some(i) = (0..tors.ngens()).find(|&i| tors.invariant_factors()[i] > BigInt::from(2)) else {
        return Ok(no_witness(false));
    };
    let x = tors.generator(i);
    let places = vec![
        crate::localcoh::PlaceSpec::finite("w1", Subgroup::trivial(), None),
        crate::localcoh::PlaceSpec::finite("w2", Subgroup::trivial(), None),
    ];
    let pm = PlaceModel::new(places, 0);
    let (model, out) = super::glue::glue_local_classes(
        m,
        &pm,
        &[
            ("w1".into(), LocalValue::Finite(x.clone())),
            ("w2".into(), LocalValue::Finite(tors.neg(&x))),
        ],
    )?;
    let GlueOutcome::Glued(class) = out else {
        return Err(Error::Obstruction("opposite classes failed to glue".into()));
    };
    let period = period_global(&model, &class);
    Ok(Period2Report {
        holds,
        witness: Some(Period2Witness {
            model,
            place: "w1".into(),
            local: x,
            class,
            period,
        }),
    })
}

fn no_witness(holds: bool) -> Period2Report {
    Period2Report {
        holds,
        witness: None,
    }
}

/// `Θ = 1`: period equals index for every class.
pub fn per_equals_ind_guarantee(m: &GModule) -> bool {
    m.image_group(&Subgroup::whole(m.group())).order() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::globalcoh::{global_ab_group, glue_local_classes, power_global};
    use crate::grpmod::FinGroup;
    use crate::intlat::{int_vec, IntMatrix};
    use crate::localcoh::PlaceSpec;

    fn zi() -> GModule {
        let i = IntMatrix::from_i64(2, 2, &[0, -1, 1, 0]);
        GModule::from_generators(FinGroup::cyclic(4), FgAbGroup::free(2), &[(1, i)]).unwrap()
    }

    fn finite(name: &str) -> PlaceSpec {
        PlaceSpec::finite(name, Subgroup::trivial(), None)
    }

    #[test]
    fn split_bounds() {
        let t = GModule::trivial(FinGroup::cyclic(3), FgAbGroup::from_cyclic_orders(&[5]));
        let b = split_degree_global(&t, 7);
        assert_eq!((b.degree, b.sylow_cyclic), (7, true));
        let b = split_degree_global(&zi(), 2);
        assert_eq!((b.degree, b.sylow_cyclic), (8, true));
        let k = GModule::augmentation_ideal(FinGroup::klein_four());
        let b = split_degree_global(&k, 2);
        assert_eq!((b.degree, b.sylow_cyclic), (8, false));
    }

    #[test]
    fn exponent_and_guarantees() {
        let z2 = GModule::trivial(FinGroup::trivial(), FgAbGroup::from_cyclic_orders(&[2]));
        assert_eq!(index_exponent(&z2), 2);
        assert!(per_equals_ind_guarantee(&z2));
        assert!(!per_equals_ind_guarantee(&zi()));
        assert!(period2_property(&z2).unwrap().holds);

        let z3 = GModule::trivial(FinGroup::trivial(), FgAbGroup::from_cyclic_orders(&[3]));
        let r = period2_property(&z3).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w.period, 3);

        let mixed = GModule::trivial(FinGroup::trivial(), FgAbGroup::from_cyclic_orders(&[2, 4]));
        assert!(!period2_property(&mixed).unwrap().holds);
    }

    #[test]
    fn cyclic_coefficients_index() {
        let m = GModule::trivial(FinGroup::trivial(), FgAbGroup::from_cyclic_orders(&[4]));
        let pm = PlaceModel::new(vec![finite("a"), finite("b"), finite("c")], 1);
        let gab = global_ab_group(&m, &pm).unwrap();
        let n = index_bounds_global(&gab, &gab.neutral_class(), 8, false).unwrap();
        assert_eq!(
            (n.lower, n.upper.clone(), n.achieved),
            (1, BigInt::from(1), Some(1))
        );
        for x in gab.classes() {
            let b = index_bounds_global(&gab, &x, 8, false).unwrap();
            assert_eq!(Some(b.lower), b.achieved);
            assert_eq!(b.lower, b.period);
            if b.period == 4 {
                assert_eq!(b.lower, 4);
            }
            for d in &b.splitting_degrees {
                assert_eq!(d % b.period, 0);
            }
        }
    }

    #[test]
    fn restriction_rules() {
        let m = zi();
        let d = Subgroup::whole(m.group());
        let pm = PlaceModel::new(
            vec![
                PlaceSpec::finite("v", d.clone(), Some(5)),
                PlaceSpec::finite("u", d.clone(), Some(13)),
            ],
            0,
        );
        let one = LocalValue::Finite(int_vec(&[1]));
        let (gab, out) =
            glue_local_classes(&m, &pm, &[("v".into(), one.clone()), ("u".into(), one)]).unwrap();
        let GlueOutcome::Glued(x) = out else { panic!() };
        let same = restrict_global(&gab, &x, &d, 1, &[]).unwrap();
        assert_eq!(same.ab, x.ab);
        let half = Subgroup::generated(m.group(), &[2]);
        let r = restrict_global(&gab, &x, &half, 1, &[]).unwrap();
        assert!(!r.is_neutral(&gab));
        let p = period_global(&gab, &x);
        assert!(restrict_global(&gab, &x, &d, p, &[])
            .unwrap()
            .is_neutral(&gab));
        assert_eq!(power_global(&gab, &x, 2), gab.neutral_class());
        let b = index_bounds_global(&gab, &x, 16, true).unwrap();
        // one cyclic component: the unlabeled square class leaves index 2
        assert_eq!((b.period, b.lower), (2, 2));
        assert_eq!(b.achieved, Some(2));
    }

    #[test]
    fn real_place_parity() {
        let g = FinGroup::cyclic(2);
        let m = GModule::from_generators(
            g.clone(),
            FgAbGroup::free(1),
            &[(1, IntMatrix::from_i64(1, 1, &[-1]))],
        )
        .unwrap();
        let pm = PlaceModel::new(vec![PlaceSpec::real(&g, "r", 1), finite("v")], 0);
        let gab = global_ab_group(&m, &pm).unwrap();
        let x = gab.neutral_class();
        let whole = Subgroup::whole(&g);
        assert!(matches!(
            restrict_global(&gab, &x, &whole, 2, &[]),
            Err(Error::Parity(_))
        ));
        assert!(matches!(
            restrict_global(&gab, &x, &whole, 3, &["r".to_string()]),
            Err(Error::Parity(_))
        ));
        assert!(restrict_global(&gab, &x, &Subgroup::trivial(), 1, &[]).is_err());
        let r = restrict_global(&gab, &x, &Subgroup::trivial(), 1, &["r".to_string()]).unwrap();
        assert_eq!(r.inf, vec![None]);
    }
}
