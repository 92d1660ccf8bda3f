use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::place::{PlaceKind, PlaceSpec};
use crate::error::{Error, Result};
use crate::grpmod::{
    coinvariants, tate_h_minus1, transfer_with_section, Coinvariants, FinGroup, GModule, Subgroup,
    TateMinusOne,
};
use crate::intlat::{AbHom, FgAbGroup, GroupElement, Order};

/// Local cohomology group at a place, with the data needed to compute in it.
#[derive(Clone, Debug)]
pub struct LocalH1 {
    pub place: PlaceSpec,
    pub group: FgAbGroup,
    /// `M_{Γ_v}` with its torsion (finite places).
    pub coinvariants: Option<Coinvariants>,
    /// `Ĥ⁻¹` of the order-2 group acting through `σ` (real places).
    pub tate: Option<TateMinusOne>,
}

/// A class in a local cohomology group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalClass {
    pub place: String,
    pub value: GroupElement,
}

/// The order-2 group acting on the base through `σ`.
pub fn sigma_module(m: &GModule, sigma: usize) -> GModule {
    GModule::from_generators(
        FinGroup::cyclic(2),
        m.base().clone(),
        &[(1, m.action(sigma).clone())],
    )
    .expect("sigma has order dividing 2")
}

impl LocalH1 {
    pub fn new(m: &GModule, place: &PlaceSpec) -> Result<Self> {
        place.validate(m.group())?;
        let (group, coinvariants, tate) = match place.kind {
            PlaceKind::Finite => {
                let c = coinvariants(m, &place.decomposition);
                (c.torsion.clone(), Some(c), None)
            }
            PlaceKind::Real => {
                let c2 = sigma_module(m, place.sigma.unwrap());
                let t = tate_h_minus1(&c2, &Subgroup::whole(c2.group()));
                (t.group.clone(), None, Some(t))
            }
            PlaceKind::Complex => (FgAbGroup::trivial(), None, None),
        };
        Ok(LocalH1 {
            place: place.clone(),
            group,
            coinvariants,
            tate,
        })
    }

    pub fn class(&self, value: GroupElement) -> Result<LocalClass> {
        if value.len() != self.group.ngens() {
            return Err(Error::Dimension(format!(
                "class at `{}` needs {} coordinates, got {}",
                self.place.name,
                self.group.ngens(),
                value.len()
            )));
        }
        Ok(LocalClass {
            place: self.place.name.clone(),
            value: self.group.reduce(value),
        })
    }

    pub fn neutral(&self) -> LocalClass {
        LocalClass {
            place: self.place.name.clone(),
            value: self.group.zero(),
        }
    }

    pub fn is_neutral(&self, x: &LocalClass) -> bool {
        self.group.is_zero(&x.value)
    }

    pub fn elements(&self) -> Vec<LocalClass> {
        self.group
            .elements()
            .expect("local groups are finite")
            .into_iter()
            .map(|value| LocalClass {
                place: self.place.name.clone(),
                value,
            })
            .collect()
    }

    /// For real places: `θ : Ĥ⁻¹ → M_{⟨σ⟩,Tors}`.
    pub fn theta(&self) -> Option<&AbHom> {
        self.tate.as_ref().map(|t| &t.into_torsion)
    }
}

pub fn h1_local(m: &GModule, place: &PlaceSpec) -> Result<FgAbGroup> {
    Ok(LocalH1::new(m, place)?.group)
}

/// `x` for odd `n`, neutral for even `n`.
pub fn nabla(h: &LocalH1, x: &LocalClass, n: i64) -> Result<LocalClass> {
    if h.place.kind != PlaceKind::Real {
        return Err(Error::PlaceKind(format!(
            "nabla needs a real place, `{}` is {}",
            h.place.name, h.place.kind
        )));
    }
    Ok(if n.is_odd() { x.clone() } else { h.neutral() })
}

pub fn power_local(h: &LocalH1, x: &LocalClass, d: i64) -> LocalClass {
    match h.place.kind {
        PlaceKind::Real => nabla(h, x, d).expect("real place"),
        _ => LocalClass {
            place: x.place.clone(),
            value: h.group.scale(&BigInt::from(d), &x.value),
        },
    }
}

pub fn period_local(h: &LocalH1, x: &LocalClass) -> u64 {
    match h.place.kind {
        PlaceKind::Real => {
            if h.is_neutral(x) {
                1
            } else {
                2
            }
        }
        _ => match h.group.element_order(&x.value) {
            Order::Finite(n) => n.to_u64().expect("period fits in u64"),
            Order::Infinite => unreachable!("local groups are torsion"),
        },
    }
}

/// An extension of a local field: interaction `Δ` with the splitting field and a
/// disjoint part of degree `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionModelLocal {
    pub delta: Subgroup,
    pub multiplier: u64,
}

impl ExtensionModelLocal {
    pub fn degree(&self, decomposition: &Subgroup) -> u64 {
        (decomposition.order() / self.delta.order()) as u64 * self.multiplier
    }
}

/// Restriction `ξ ↦ m · T(ξ)` into `M_{Δ,Tors}`; returns the target group and the class.
pub fn restrict_local(
    m: &GModule,
    h: &LocalH1,
    x: &LocalClass,
    ext: &ExtensionModelLocal,
) -> Result<(FgAbGroup, GroupElement)> {
    if h.place.kind != PlaceKind::Finite {
        return Err(Error::PlaceKind(format!(
            "restriction is modeled at finite places, `{}` is {}",
            h.place.name, h.place.kind
        )));
    }
    let d = &h.place.decomposition;
    if !ext.delta.is_subgroup_of(d) {
        return Err(Error::NotSubgroup(format!(
            "extension subgroup is not inside the decomposition group of `{}`",
            h.place.name
        )));
    }
    if ext.multiplier == 0 {
        return Err(Error::Invalid("multiplier must be at least 1".into()));
    }
    let target = coinvariants(m, &ext.delta);
    let reps = ext.delta.right_transversal_in(m.group(), d);
    let t = transfer_with_section(m, d, &ext.delta, &reps, &x.value);
    let out = target.torsion.scale(&BigInt::from(ext.multiplier), &t);
    Ok((target.torsion, out))
}

/// Whether a restricted class is neutral.
pub fn restriction_kills(
    m: &GModule,
    h: &LocalH1,
    x: &LocalClass,
    ext: &ExtensionModelLocal,
) -> Result<bool> {
    let (_, y) = restrict_local(m, h, x, ext)?;
    Ok(y.iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::{int_vec, IntMatrix};

    fn zi() -> GModule {
        let i = IntMatrix::from_i64(2, 2, &[0, -1, 1, 0]);
        GModule::from_generators(FinGroup::cyclic(4), FgAbGroup::free(2), &[(1, i)]).unwrap()
    }

    #[test]
    fn local_groups() {
        let m = zi();
        let v = PlaceSpec::finite("v", Subgroup::whole(m.group()), Some(5));
        assert_eq!(
            h1_local(&m, &v).unwrap().invariant_factors(),
            &int_vec(&[2])[..]
        );

        let inv = GModule::from_generators(
            FinGroup::cyclic(2),
            FgAbGroup::from_cyclic_orders(&[3]),
            &[(1, IntMatrix::from_i64(1, 1, &[-1]))],
        )
        .unwrap();
        let v = PlaceSpec::finite("v", Subgroup::whole(inv.group()), None);
        assert!(h1_local(&inv, &v).unwrap().is_trivial());

        let z2 = GModule::trivial(FinGroup::trivial(), FgAbGroup::from_cyclic_orders(&[2]));
        let r = PlaceSpec::real(z2.group(), "r", 0);
        assert_eq!(
            h1_local(&z2, &r).unwrap().invariant_factors(),
            &int_vec(&[2])[..]
        );
        let c = PlaceSpec::complex("c");
        assert!(h1_local(&z2, &c).unwrap().is_trivial());
    }

    #[test]
    fn nabla_parity() {
        let z2 = GModule::trivial(FinGroup::trivial(), FgAbGroup::from_cyclic_orders(&[2]));
        let h = LocalH1::new(&z2, &PlaceSpec::real(z2.group(), "r", 0)).unwrap();
        let x = h.class(int_vec(&[1])).unwrap();
        assert_eq!(nabla(&h, &x, 3).unwrap(), x);
        assert!(h.is_neutral(&nabla(&h, &x, 2).unwrap()));
        assert!(h.is_neutral(&nabla(&h, &h.neutral(), 5).unwrap()));
        assert_eq!(period_local(&h, &x), 2);
        let fin = LocalH1::new(&z2, &PlaceSpec::finite("v", Subgroup::trivial(), None)).unwrap();
        assert!(nabla(&fin, &x, 1).is_err());
    }

    #[test]
    fn powers_and_periods() {
        let z6 = GModule::trivial(FinGroup::trivial(), FgAbGroup::from_cyclic_orders(&[6]));
        let h = LocalH1::new(&z6, &PlaceSpec::finite("v", Subgroup::trivial(), None)).unwrap();
        let x = h.class(int_vec(&[1])).unwrap();
        assert_eq!(period_local(&h, &x), 6);
        let z2 = GModule::trivial(FinGroup::trivial(), FgAbGroup::from_cyclic_orders(&[2]));
        let h2 = LocalH1::new(&z2, &PlaceSpec::finite("v", Subgroup::trivial(), None)).unwrap();
        let y = h2.class(int_vec(&[1])).unwrap();
        assert!(h2.is_neutral(&power_local(&h2, &y, 2)));
    }

    #[test]
    fn restriction_examples() {
        let m = zi();
        let d = Subgroup::whole(m.group());
        let h = LocalH1::new(&m, &PlaceSpec::finite("v", d.clone(), Some(5))).unwrap();
        let x = h.class(int_vec(&[1])).unwrap();
        let half = Subgroup::generated(m.group(), &[2]);
        let (_, y) = restrict_local(
            &m,
            &h,
            &x,
            &ExtensionModelLocal {
                delta: half,
                multiplier: 1,
            },
        )
        .unwrap();
        assert!(y.iter().any(|c| !c.is_zero()));
        let even = ExtensionModelLocal {
            delta: d.clone(),
            multiplier: 2,
        };
        assert!(restriction_kills(&m, &h, &x, &even).unwrap());
        let odd = ExtensionModelLocal {
            delta: d,
            multiplier: 3,
        };
        let (_, z) = restrict_local(&m, &h, &x, &odd).unwrap();
        assert_eq!(z, x.value);
    }
}
