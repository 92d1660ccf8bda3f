use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::module::GModule;
use crate::error::{Error, Result};
use crate::intlat::{FgAbGroup, GroupElement, IntMatrix};

/// A value in `Q/Z`, stored as a reduced fraction in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QmodZ {
    pub num: BigInt,
    pub den: BigInt,
}

impl QmodZ {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero());
        let (num, den) = if den < BigInt::zero() {
            (-num, -den)
        } else {
            (num, den)
        };
        let num = num.mod_floor(&den);
        let g = num.gcd(&den);
        if num.is_zero() {
            return QmodZ {
                num,
                den: BigInt::one(),
            };
        }
        QmodZ {
            num: num / &g,
            den: den / g,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Adjugate of a square integer matrix, so that `P · adj(P) = det(P) · I`.
fn adjugate(p: &IntMatrix) -> IntMatrix {
    let n = p.rows();
    let mut adj = IntMatrix::zeros(n, n);
    if n == 1 {
        adj[(0, 0)] = BigInt::one();
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = p.select_rows(&rows).select_columns(&cols).determinant();
            adj[(i, j)] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    adj
}

/// The pairing `A^∨/B^∨ × B/A → Q/Z` for a finite-index inclusion `A ↪ B`.
#[derive(Clone, Debug)]
pub struct DualPairing {
    /// `A^∨/B^∨`, presented on dual coordinates of `A`.
    pub left: FgAbGroup,
    /// `B/A`, presented on coordinates of `B`.
    pub right: FgAbGroup,
    left_elems: Vec<GroupElement>,
    right_elems: Vec<GroupElement>,
    /// `table[i][j] = ⟨left_elems[i], right_elems[j]⟩`.
    pub table: Vec<Vec<QmodZ>>,
    pub perfect: bool,
}

impl DualPairing {
    pub fn left_elements(&self) -> &[GroupElement] {
        &self.left_elems
    }

    pub fn right_elements(&self) -> &[GroupElement] {
        &self.right_elems
    }
}

/// Builds the pairing for `inclusion` (columns: images of a basis of `A` in a basis of `B`).
pub fn dual_pairing(inclusion: &IntMatrix) -> Result<DualPairing> {
    let n = inclusion.rows();
    if inclusion.cols() != n {
        return Err(Error::NotFiniteIndex(format!(
            "ranks differ: {} vs {}",
            inclusion.cols(),
            n
        )));
    }
    let det = inclusion.determinant();
    if det.is_zero() {
        return Err(Error::NotFiniteIndex("inclusion is degenerate".into()));
    }
    let adj = adjugate(inclusion);
    let right = FgAbGroup::from_presentation(n, inclusion.clone());
    let left = FgAbGroup::from_presentation(n, inclusion.transpose());
    let left_elems = left.elements().expect("finite index");
    let right_elems = right.elements().expect("finite index");
    let table: Vec<Vec<QmodZ>> = left_elems
        .iter()
        .map(|x| {
            let phi = left.lift(x);
            right_elems
                .iter()
                .map(|y| {
                    let b = right.lift(y);
                    let v = adj.mul_vec(&b);
                    let num: BigInt = phi.iter().zip(&v).map(|(a, c)| a * c).sum();
                    QmodZ::new(num, det.clone())
                })
                .collect()
        })
        .collect();
    let left_ok = (1..left_elems.len()).all(|i| table[i].iter().any(|v| !v.is_zero()));
    let right_ok = (1..right_elems.len()).all(|j| table.iter().any(|row| !row[j].is_zero()));
    Ok(DualPairing {
        perfect: left_ok && right_ok && left_elems.len() == right_elems.len(),
        left,
        right,
        left_elems,
        right_elems,
        table,
    })
}

/// `Hom(X, Q/Z)` with the contragredient action `(γf)(x) = f(γ⁻¹x)`.
///
/// The dual's canonical generator `j` is the character sending the canonical
/// generator `e_j` of `X` to `1/d_j` and the others to `0`.
pub fn pontryagin_dual(x: &GModule) -> Result<GModule> {
    if !x.base().is_finite() {
        return Err(Error::Infinite(
            "Pontryagin dual needs a finite base".into(),
        ));
    }
    let d = x.base().invariant_factors().to_vec();
    let t = d.len();
    let base = FgAbGroup::from_presentation(t, IntMatrix::diagonal(t, t, &d));
    let g = x.group();
    let action = g
        .elements()
        .map(|gamma| {
            let c = x.canonical_action(g.inv(gamma));
            let mut a = IntMatrix::zeros(t, t);
            for i in 0..t {
                for j in 0..t {
                    a[(i, j)] = &c[(j, i)] * &d[i] / &d[j];
                }
            }
            a
        })
        .collect();
    GModule::from_all(g.clone(), base, action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpmod::FinGroup;

    #[test]
    fn two_z_in_z() {
        let p = dual_pairing(&IntMatrix::from_i64(1, 1, &[2])).unwrap();
        assert!(p.perfect);
        assert_eq!(p.table[1][1], QmodZ::new(1.into(), 2.into()));
    }

    #[test]
    fn equal_lattices() {
        let p = dual_pairing(&IntMatrix::identity(2)).unwrap();
        assert!(p.perfect);
        assert_eq!(p.table.len(), 1);
    }

    #[test]
    fn one_minus_i() {
        // (1 - i)Z[i]: basis 1 - i, i(1 - i) = 1 + i
        let p = dual_pairing(&IntMatrix::from_i64(2, 2, &[1, 1, -1, 1])).unwrap();
        assert!(p.perfect);
        assert_eq!(p.right.order(), Some(BigInt::from(2)));
    }

    #[test]
    fn degenerate_rejected() {
        assert!(dual_pairing(&IntMatrix::from_i64(2, 2, &[1, 2, 2, 4])).is_err());
        assert!(dual_pairing(&IntMatrix::from_i64(2, 1, &[1, 0])).is_err());
    }

    #[test]
    fn dual_of_inversion() {
        let base = FgAbGroup::from_cyclic_orders(&[3]);
        let m = GModule::from_generators(
            FinGroup::cyclic(2),
            base,
            &[(1, IntMatrix::from_i64(1, 1, &[-1]))],
        )
        .unwrap();
        let d = pontryagin_dual(&m).unwrap();
        assert_eq!(d.base().invariant_factors(), m.base().invariant_factors());
        assert_eq!(d.act(1, &[BigInt::one()]), vec![BigInt::from(2)]);
        let dd = pontryagin_dual(&d).unwrap();
        for g in 0..2 {
            assert_eq!(dd.act(g, &[BigInt::one()]), m.act(g, &[BigInt::one()]));
        }
    }

    #[test]
    fn dual_of_trivial_cyclic() {
        let m = GModule::trivial(FinGroup::cyclic(3), FgAbGroup::from_cyclic_orders(&[5]));
        let d = pontryagin_dual(&m).unwrap();
        assert!(d.is_trivial_action());
        assert!(
            pontryagin_dual(&GModule::trivial(FinGroup::trivial(), FgAbGroup::free(1))).is_err()
        );
    }
}
