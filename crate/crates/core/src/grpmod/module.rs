use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::fingroup::{quotient_group, FinGroup, Subgroup};
use crate::error::{Error, Result};
use crate::intlat::{AbHom, FgAbGroup, GroupElement, IntMatrix};

/// A finitely generated abelian group with an action of a finite group.
///
/// `action[g]` acts on ambient coordinates of `base`.
#[derive(Clone, Debug)]
pub struct GModule {
    group: FinGroup,
    base: FgAbGroup,
    action: Vec<IntMatrix>,
}

/// Whether two ambient matrices induce the same endomorphism of `base`.
fn same_endo(base: &FgAbGroup, a: &IntMatrix, b: &IntMatrix) -> bool {
    let d = a.sub(b);
    (0..d.cols()).all(|j| base.is_zero_ambient(&d.column(j)))
}

fn preserves_relations(base: &FgAbGroup, a: &IntMatrix) -> bool {
    let img = a.mul(base.relations());
    (0..img.cols()).all(|j| base.is_zero_ambient(&img.column(j)))
}

impl GModule {
    /// Action given on generators and closed to all elements.
    pub fn from_generators(
        group: FinGroup,
        base: FgAbGroup,
        gens: &[(usize, IntMatrix)],
    ) -> Result<Self> {
        let n = base.ambient_rank();
        for (g, a) in gens {
            if *g >= group.order() {
                return Err(Error::BadAction(format!("element {g} is not in the group")));
            }
            if a.rows() != n || a.cols() != n {
                return Err(Error::BadAction(format!(
                    "matrix for element {g} is {}x{}, expected {n}x{n}",
                    a.rows(),
                    a.cols()
                )));
            }
            if !preserves_relations(&base, a) {
                return Err(Error::BadAction(format!(
                    "matrix for element {g} does not preserve the relations"
                )));
            }
        }
        let mut action: Vec<Option<IntMatrix>> = vec![None; group.order()];
        action[0] = Some(IntMatrix::identity(n));
        let mut queue = VecDeque::from([0usize]);
        while let Some(h) = queue.pop_front() {
            for (s, a) in gens {
                let sh = group.mul(*s, h);
                let m = a.mul(action[h].as_ref().unwrap());
                match &action[sh] {
                    Some(existing) => {
                        if !same_endo(&base, existing, &m) {
                            return Err(Error::BadAction(format!(
                                "generator matrices violate the group law at element {sh}"
                            )));
                        }
                    }
                    None => {
                        action[sh] = Some(m);
                        queue.push_back(sh);
                    }
                }
            }
        }
        if action.iter().any(Option::is_none) {
            return Err(Error::BadAction(
                "listed elements do not generate the group".into(),
            ));
        }
        Ok(GModule {
            group,
            base,
            action: action.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Action given for every element; the homomorphism property is checked.
    pub fn from_all(group: FinGroup, base: FgAbGroup, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::BadAction(format!(
                "{} matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let gens: Vec<(usize, IntMatrix)> = group
            .generators()
            .into_iter()
            .map(|g| (g, action[g].clone()))
            .collect();
        let m = Self::from_generators(group, base, &gens)?;
        for (g, a) in action.iter().enumerate() {
            if !same_endo(&m.base, a, &m.action[g]) {
                return Err(Error::BadAction(format!(
                    "matrix for element {g} is not a product of the generator matrices"
                )));
            }
        }
        Ok(GModule { action, ..m })
    }

    /// Trivial action.
    pub fn trivial(group: FinGroup, base: FgAbGroup) -> Self {
        let n = base.ambient_rank();
        let action = vec![IntMatrix::identity(n); group.order()];
        GModule {
            group,
            base,
            action,
        }
    }

    /// `Z[G]^k` with the left regular action; block `b` coordinate `g` is index `b·|G| + g`.
    pub fn regular(group: FinGroup, k: usize) -> Self {
        let n = group.order();
        let base = FgAbGroup::free(n * k);
        let action = group
            .elements()
            .map(|g| {
                let mut a = IntMatrix::zeros(n * k, n * k);
                for b in 0..k {
                    for h in 0..n {
                        a[(b * n + group.mul(g, h), b * n + h)] = BigInt::one();
                    }
                }
                a
            })
            .collect();
        GModule {
            group,
            base,
            action,
        }
    }

    /// Permutation lattice on the left cosets of `h`.
    pub fn permutation(group: FinGroup, h: &Subgroup) -> Self {
        let reps = h.left_transversal(&group);
        let k = reps.len();
        let coset_of = |x: usize| -> usize {
            reps.iter()
                .position(|&r| h.contains(group.mul(group.inv(r), x)))
                .unwrap()
        };
        let action = group
            .elements()
            .map(|g| {
                let mut a = IntMatrix::zeros(k, k);
                for (i, &r) in reps.iter().enumerate() {
                    a[(coset_of(group.mul(g, r)), i)] = BigInt::one();
                }
                a
            })
            .collect();
        GModule {
            base: FgAbGroup::free(k),
            group,
            action,
        }
    }

    /// Augmentation ideal `I_G ⊂ Z[G]`, with basis `g − 1` for `g ≠ 1`.
    pub fn augmentation_ideal(group: FinGroup) -> Self {
        let n = group.order();
        let r = n - 1;
        let action = group
            .elements()
            .map(|g| {
                // g·(h − 1) = (gh − 1) − (g − 1)
                let mut a = IntMatrix::zeros(r, r);
                for h in 1..n {
                    let gh = group.mul(g, h);
                    if gh != 0 {
                        a[(gh - 1, h - 1)] += BigInt::one();
                    }
                    if g != 0 {
                        a[(g - 1, h - 1)] -= BigInt::one();
                    }
                }
                a
            })
            .collect();
        GModule {
            base: FgAbGroup::free(r),
            group,
            action,
        }
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn base(&self) -> &FgAbGroup {
        &self.base
    }

    /// Ambient action matrix of element `g`.
    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    /// Action on canonical coordinates.
    pub fn act(&self, g: usize, x: &[BigInt]) -> GroupElement {
        self.base
            .from_ambient(&self.action[g].mul_vec(&self.base.lift(x)))
    }

    /// The action of `g` as an endomorphism of the base group.
    pub fn action_hom(&self, g: usize) -> AbHom {
        AbHom {
            src: self.base.clone(),
            dst: self.base.clone(),
            matrix: self.action[g].clone(),
        }
    }

    /// Matrix of `g` on canonical coordinates (columns are images of canonical generators).
    pub fn canonical_action(&self, g: usize) -> IntMatrix {
        self.action_hom(g).canonical_matrix()
    }

    /// Whether `g` acts as the identity on the base.
    pub fn acts_trivially(&self, g: usize) -> bool {
        same_endo(
            &self.base,
            &self.action[g],
            &IntMatrix::identity(self.base.ambient_rank()),
        )
    }

    pub fn is_trivial_action(&self) -> bool {
        self.group.elements().all(|g| self.acts_trivially(g))
    }

    /// Kernel of the action restricted to `h`.
    pub fn action_kernel(&self, h: &Subgroup) -> Subgroup {
        let members: Vec<usize> = h
            .members()
            .iter()
            .copied()
            .filter(|&g| self.acts_trivially(g))
            .collect();
        Subgroup::from_members(&self.group, &members).expect("kernel of an action is a subgroup")
    }

    /// Image of `h` in `Aut(base)`, as an abstract group.
    pub fn image_group(&self, h: &Subgroup) -> FinGroup {
        let (hg, embed) = h.as_group(&self.group);
        let local_kernel: Vec<usize> = embed
            .iter()
            .enumerate()
            .filter(|&(_, &g)| self.acts_trivially(g))
            .map(|(i, _)| i)
            .collect();
        let k = Subgroup::from_members(&hg, &local_kernel).expect("kernel is a subgroup");
        quotient_group(&hg, &k).0
    }

    /// Restriction to a subgroup, regarded as a group of its own.
    pub fn restrict(&self, h: &Subgroup) -> (GModule, Vec<usize>) {
        let (hg, embed) = h.as_group(&self.group);
        let action = embed.iter().map(|&g| self.action[g].clone()).collect();
        (
            GModule {
                group: hg,
                base: self.base.clone(),
                action,
            },
            embed,
        )
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        if self.group != other.group {
            return Err(Error::BadAction("direct sum over different groups".into()));
        }
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(GModule {
            group: self.group.clone(),
            base: self.base.direct_sum(&other.base),
            action,
        })
    }

    /// Same action transported to a free presentation of a torsion-free base.
    pub fn to_free_basis(&self) -> Result<GModule> {
        if !self.base.invariant_factors().is_empty() {
            return Err(Error::Invalid("base has torsion".into()));
        }
        let base = FgAbGroup::free(self.base.free_rank());
        let action = self
            .group
            .elements()
            .map(|g| self.canonical_action(g))
            .collect();
        Ok(GModule {
            group: self.group.clone(),
            base,
            action,
        })
    }

    /// Whether `k·x = 0` for all `x`.
    pub fn killed_by(&self, k: &BigInt) -> bool {
        self.base.is_finite() && (k % self.base.exponent()).is_zero()
    }

    /// Whether an ambient-matrix map `self → other` commutes with the actions.
    pub fn is_equivariant(&self, other: &GModule, f: &IntMatrix) -> bool {
        self.group.elements().all(|g| {
            let lhs = f.mul(&self.action[g]);
            let rhs = other.action[g].mul(f);
            same_endo(&other.base, &lhs, &rhs)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn zi_module() -> GModule {
        let i = IntMatrix::from_i64(2, 2, &[0, -1, 1, 0]);
        GModule::from_generators(FinGroup::cyclic(4), FgAbGroup::free(2), &[(1, i)]).unwrap()
    }

    #[test]
    fn closure_of_rotation() {
        let m = zi_module();
        assert_eq!(m.action(2), &IntMatrix::from_i64(2, 2, &[-1, 0, 0, -1]));
        assert_eq!(m.image_group(&Subgroup::whole(m.group())).order(), 4);
    }

    #[test]
    fn rejects_wrong_order() {
        // a matrix of order 2 cannot represent a generator of Z/3
        let s = IntMatrix::from_i64(1, 1, &[-1]);
        let err = GModule::from_generators(FinGroup::cyclic(3), FgAbGroup::free(1), &[(1, s)]);
        assert!(err.is_err());
    }

    #[test]
    fn inversion_on_z3_is_fine_mod_relations() {
        let base = FgAbGroup::from_cyclic_orders(&[3]);
        let m = GModule::from_generators(
            FinGroup::cyclic(2),
            base,
            &[(1, IntMatrix::from_i64(1, 1, &[2]))],
        )
        .unwrap();
        assert!(!m.acts_trivially(1));
        assert_eq!(m.act(1, &[BigInt::one()]), vec![BigInt::from(2)]);
    }

    #[test]
    fn augmentation_is_a_module() {
        let g = FinGroup::klein_four();
        let m = GModule::augmentation_ideal(g.clone());
        let re = GModule::from_all(g, m.base().clone(), m.actions().to_vec());
        assert!(re.is_ok());
    }
}
