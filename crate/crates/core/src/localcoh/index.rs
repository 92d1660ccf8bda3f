use num_integer::Integer;

use super::bounds::prime_divisors;
use super::h1::{period_local, restrict_local, ExtensionModelLocal, LocalClass, LocalH1};
use super::place::PlaceKind;
use crate::error::{Error, Result};
use crate::grpmod::{all_subgroups, GModule, Subgroup};
use crate::intlat::Order;
use num_traits::ToPrimitive;

/// Largest degree bound accepted by the local index search.
pub const MAX_LOCAL_DEGREE: u64 = 64;

/// Nontrivial square classes of an odd-residue local field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SquareClass {
    One,
    Eps,
    Pi,
    EpsPi,
}

impl SquareClass {
    pub const NONTRIVIAL: [SquareClass; 3] =
        [SquareClass::Eps, SquareClass::Pi, SquareClass::EpsPi];

    fn bits(self) -> u8 {
        match self {
            SquareClass::One => 0,
            SquareClass::Eps => 1,
            SquareClass::Pi => 2,
            SquareClass::EpsPi => 3,
        }
    }

    fn from_bits(b: u8) -> Self {
        match b & 3 {
            0 => SquareClass::One,
            1 => SquareClass::Eps,
            2 => SquareClass::Pi,
            _ => SquareClass::EpsPi,
        }
    }

    pub fn mul(self, other: SquareClass) -> SquareClass {
        Self::from_bits(self.bits() ^ other.bits())
    }

    pub fn label(self) -> &'static str {
        match self {
            SquareClass::One => "1",
            SquareClass::Eps => "eps",
            SquareClass::Pi => "pi",
            SquareClass::EpsPi => "eps*pi",
        }
    }
}

/// `K^×/(K^×)²` for a local field with odd residue field of size `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClassModel {
    pub q: u64,
    pub residue_characteristic: u64,
    pub classes: [SquareClass; 4],
}

pub fn square_class_model(q: u64) -> Result<SquareClassModel> {
    let primes = prime_divisors(q);
    if primes.len() != 1 {
        return Err(Error::Invalid(format!(
            "residue size {q} is not a prime power"
        )));
    }
    if primes[0] == 2 {
        return Err(Error::Wild(format!("residue size {q} is even")));
    }
    Ok(SquareClassModel {
        q,
        residue_characteristic: primes[0],
        classes: [
            SquareClass::One,
            SquareClass::Eps,
            SquareClass::Pi,
            SquareClass::EpsPi,
        ],
    })
}

/// Which quadratic extensions lie inside the splitting field at a place: index-2
/// subgroups of the decomposition group, labeled in sorted order.
#[derive(Clone, Debug)]
pub struct QuadraticLabels {
    pub labeled: Vec<(SquareClass, Subgroup)>,
}

impl QuadraticLabels {
    pub fn new(m: &GModule, decomposition: &Subgroup) -> Result<Self> {
        let idx2: Vec<Subgroup> = all_subgroups(m.group())
            .into_iter()
            .filter(|h| h.is_subgroup_of(decomposition) && h.order() * 2 == decomposition.order())
            .collect();
        if idx2.len() > 3 {
            return Err(Error::Invalid(format!(
                "decomposition group has {} index-2 subgroups; an odd-residue local field has only 3 quadratic extensions",
                idx2.len()
            )));
        }
        Ok(QuadraticLabels {
            labeled: SquareClass::NONTRIVIAL.iter().copied().zip(idx2).collect(),
        })
    }

    pub fn subgroup_of(&self, s: SquareClass) -> Option<&Subgroup> {
        self.labeled.iter().find(|(c, _)| *c == s).map(|(_, h)| h)
    }
}

/// Quadratic subextensions `K(√s)` an extension model can contain.
pub fn quadratic_subextensions(
    labels: &QuadraticLabels,
    ext: &ExtensionModelLocal,
) -> Vec<SquareClass> {
    SquareClass::NONTRIVIAL
        .iter()
        .copied()
        .filter(|&s| match labels.subgroup_of(s) {
            Some(h) => ext.delta.is_subgroup_of(h),
            None => ext.multiplier % 2 == 0,
        })
        .collect()
}

/// Result of the local index search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIndexReport {
    pub period: u64,
    /// Proven divisor of the index.
    pub lower_bound: u64,
    /// gcd of the splitting degrees found, if any.
    pub search_gcd: Option<u64>,
    /// Sorted distinct degrees of splitting models.
    pub splitting_degrees: Vec<u64>,
    /// Degrees of every model examined, split or not.
    pub examined: usize,
}

pub fn local_index(
    m: &GModule,
    h: &LocalH1,
    x: &LocalClass,
    degree_bound: u64,
    strict_quadratic: bool,
) -> Result<LocalIndexReport> {
    if h.place.kind != PlaceKind::Finite {
        return Err(Error::PlaceKind(format!(
            "local index is searched at finite places, `{}` is {}",
            h.place.name, h.place.kind
        )));
    }
    if degree_bound > MAX_LOCAL_DEGREE {
        return Err(Error::DegreeBound {
            bound: degree_bound,
            limit: MAX_LOCAL_DEGREE,
        });
    }
    let d = &h.place.decomposition;
    let strict = if strict_quadratic {
        let q = h.place.residue_size.ok_or_else(|| {
            Error::Invalid(format!("place `{}` has no residue size", h.place.name))
        })?;
        Some((square_class_model(q)?, QuadraticLabels::new(m, d)?))
    } else {
        None
    };

    let period = period_local(h, x);
    let mut lower = period;
    if let Some((_, labels)) = &strict {
        if period % 2 == 0 {
            // every even-degree splitting field contains some K(√s), and the
            // restriction there has period dividing half the degree
            let mut min_v2 = u32::MAX;
            for s in SquareClass::NONTRIVIAL {
                let ext = match labels.subgroup_of(s) {
                    Some(hs) => ExtensionModelLocal {
                        delta: hs.clone(),
                        multiplier: 1,
                    },
                    None => ExtensionModelLocal {
                        delta: d.clone(),
                        multiplier: 2,
                    },
                };
                let (tgt, y) = restrict_local(m, h, x, &ext)?;
                let per_s = match tgt.element_order(&y) {
                    Order::Finite(n) => n.to_u64().expect("small period"),
                    Order::Infinite => unreachable!(),
                };
                min_v2 = min_v2.min(per_s.trailing_zeros());
            }
            lower = lower.lcm(&(1u64 << (min_v2 + 1)));
        }
    }

    let subgroups: Vec<Subgroup> = all_subgroups(m.group())
        .into_iter()
        .filter(|s| s.is_subgroup_of(d))
        .collect();
    let mut degrees = std::collections::BTreeSet::new();
    let mut examined = 0;
    for delta in &subgroups {
        let idx = (d.order() / delta.order()) as u64;
        let mut mult = 1;
        while idx * mult <= degree_bound {
            let ext = ExtensionModelLocal {
                delta: delta.clone(),
                multiplier: mult,
            };
            let deg = idx * mult;
            let valid = match &strict {
                None => true,
                Some((sq, labels)) => {
                    mult % sq.residue_characteristic != 0
                        && (deg % 2 == 1 || !quadratic_subextensions(labels, &ext).is_empty())
                }
            };
            if valid {
                examined += 1;
                let (_, y) = restrict_local(m, h, x, &ext)?;
                if y.iter().all(num_traits::Zero::is_zero) {
                    degrees.insert(deg);
                }
            }
            mult += 1;
        }
    }
    let search_gcd = degrees.iter().copied().reduce(|a, b| a.gcd(&b));
    Ok(LocalIndexReport {
        period,
        lower_bound: lower,
        search_gcd,
        splitting_degrees: degrees.into_iter().collect(),
        examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpmod::FinGroup;
    use crate::intlat::{int_vec, FgAbGroup};
    use crate::localcoh::PlaceSpec;

    #[test]
    fn square_classes() {
        let sq = square_class_model(3).unwrap();
        assert_eq!(sq.classes.len(), 4);
        assert_eq!(SquareClass::Eps.mul(SquareClass::Pi), SquareClass::EpsPi);
        assert_eq!(SquareClass::Pi.mul(SquareClass::Pi), SquareClass::One);
        assert!(matches!(square_class_model(2), Err(Error::Wild(_))));
        assert!(square_class_model(6).is_err());
        assert_eq!(square_class_model(25).unwrap().residue_characteristic, 5);
    }

    #[test]
    fn even_models_have_quadratic_subfields() {
        let i = crate::intlat::IntMatrix::from_i64(2, 2, &[0, -1, 1, 0]);
        let m =
            GModule::from_generators(FinGroup::cyclic(4), FgAbGroup::free(2), &[(1, i)]).unwrap();
        let d = Subgroup::whole(m.group());
        let labels = QuadraticLabels::new(&m, &d).unwrap();
        assert_eq!(labels.labeled.len(), 1);
        let ext = ExtensionModelLocal {
            delta: Subgroup::trivial(),
            multiplier: 1,
        };
        assert_eq!(
            quadratic_subextensions(&labels, &ext),
            vec![SquareClass::Eps]
        );
        let ext = ExtensionModelLocal {
            delta: d.clone(),
            multiplier: 2,
        };
        assert_eq!(quadratic_subextensions(&labels, &ext).len(), 2);
    }

    #[test]
    fn split_module_index_equals_period() {
        let m = GModule::trivial(FinGroup::trivial(), FgAbGroup::from_cyclic_orders(&[6]));
        let h = LocalH1::new(&m, &PlaceSpec::finite("v", Subgroup::trivial(), Some(7))).unwrap();
        for k in 0..6 {
            let x = h.class(int_vec(&[k])).unwrap();
            let r = local_index(&m, &h, &x, 24, false).unwrap();
            assert_eq!(r.lower_bound, r.period);
            assert_eq!(r.search_gcd, Some(r.period));
        }
        let r = local_index(&m, &h, &h.neutral(), 8, true).unwrap();
        assert_eq!((r.lower_bound, r.search_gcd), (1, Some(1)));
        assert!(local_index(&m, &h, &h.neutral(), 65, false).is_err());
    }
}
