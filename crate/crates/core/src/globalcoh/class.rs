use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::model::{all_zero, FiberPoint, GlobalAbGroup};
use crate::error::{Error, Result};
use crate::intlat::{GroupElement, Order};
use crate::localcoh::PlaceKind;

/// An element of the fiber product: abelianized part plus one fiber point per real place.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlobalClass {
    pub ab: GroupElement,
    /// Aligned with `GlobalAbGroup::real_orbits`.
    pub inf: Vec<FiberPoint>,
}

impl GlobalAbGroup {
    /// Checks the Cartesian condition; the error names the first offending place.
    pub fn check_compatible(&self, ab: &[BigInt], inf: &[FiberPoint]) -> Result<()> {
        if ab.len() != self.group.ngens() {
            return Err(Error::Dimension(format!(
                "global class needs {} coordinates, got {}",
                self.group.ngens(),
                ab.len()
            )));
        }
        if inf.len() != self.real_orbits.len() {
            return Err(Error::Dimension(format!(
                "global class needs {} real components, got {}",
                self.real_orbits.len(),
                inf.len()
            )));
        }
        for ((&o, fiber), p) in self.real_orbits.iter().zip(&self.fibers).zip(inf) {
            let name = &self.orbits[o].place.name;
            if !fiber.contains(p) {
                return Err(Error::Incompatible(name.clone()));
            }
            let lv = self.localize(o, ab);
            if !self
                .local_group(o)
                .is_zero(&self.local_group(o).sub(&lv, &fiber.theta(p)))
            {
                return Err(Error::Incompatible(name.clone()));
            }
        }
        for (o, orb) in self.orbits.iter().enumerate() {
            if orb.place.kind == PlaceKind::Complex && !all_zero(&self.localize(o, ab)) {
                return Err(Error::Incompatible(orb.place.name.clone()));
            }
        }
        Ok(())
    }

    pub fn make_class(&self, ab: GroupElement, inf: Vec<FiberPoint>) -> Result<GlobalClass> {
        let ab = if ab.len() == self.group.ngens() {
            self.group.reduce(ab)
        } else {
            ab
        };
        self.check_compatible(&ab, &inf)?;
        Ok(GlobalClass { ab, inf })
    }

    pub fn neutral_class(&self) -> GlobalClass {
        GlobalClass {
            ab: self.group.zero(),
            inf: self.fibers.iter().map(|f| f.neutral()).collect(),
        }
    }

    pub fn is_neutral(&self, x: &GlobalClass) -> bool {
        self.group.is_zero(&x.ab) && self.fibers.iter().zip(&x.inf).all(|(f, p)| f.is_neutral(p))
    }

    /// Every fiber tuple compatible with `ab`.
    pub fn compatible_fibers(&self, ab: &[BigInt]) -> Vec<Vec<FiberPoint>> {
        let mut tuples: Vec<Vec<FiberPoint>> = vec![vec![]];
        for (&o, fiber) in self.real_orbits.iter().zip(&self.fibers) {
            let lv = self.localize(o, ab);
            let tg = self.local_group(o);
            let ok: Vec<FiberPoint> = fiber
                .points()
                .into_iter()
                .filter(|p| tg.is_zero(&tg.sub(&lv, &fiber.theta(p))))
                .collect();
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    ok.iter().map(move |p| {
                        let mut t = t.clone();
                        t.push(p.clone());
                        t
                    })
                })
                .collect();
        }
        tuples
    }

    /// All classes of the fiber product.
    pub fn classes(&self) -> Vec<GlobalClass> {
        let mut out = Vec::new();
        for ab in self.group.elements().expect("global group is finite") {
            for inf in self.compatible_fibers(&ab) {
                if self.check_compatible(&ab, &inf).is_ok() {
                    out.push(GlobalClass {
                        ab: ab.clone(),
                        inf,
                    });
                }
            }
        }
        out
    }
}

pub fn make_global_class(
    gab: &GlobalAbGroup,
    ab: GroupElement,
    inf: Vec<FiberPoint>,
) -> Result<GlobalClass> {
    gab.make_class(ab, inf)
}

pub fn is_compatible(gab: &GlobalAbGroup, ab: &[BigInt], inf: &[FiberPoint]) -> bool {
    gab.check_compatible(ab, inf).is_ok()
}

/// `ξ ↦ (d·ab, ∇d)`.
pub fn power_global(gab: &GlobalAbGroup, x: &GlobalClass, d: i64) -> GlobalClass {
    let out = GlobalClass {
        ab: gab.group.scale(&BigInt::from(d), &x.ab),
        inf: gab
            .fibers
            .iter()
            .zip(&x.inf)
            .map(|(f, p)| f.nabla(p, d))
            .collect(),
    };
    debug_assert!(gab.check_compatible(&out.ab, &out.inf).is_ok());
    out
}

pub fn period_global(gab: &GlobalAbGroup, x: &GlobalClass) -> u64 {
    let ab = match gab.group.element_order(&x.ab) {
        Order::Finite(n) => n.to_u64().expect("period fits in u64"),
        Order::Infinite => unreachable!("global group is torsion"),
    };
    if gab.fibers.iter().zip(&x.inf).all(|(f, p)| f.is_neutral(p)) {
        ab
    } else {
        ab.lcm(&2)
    }
}
