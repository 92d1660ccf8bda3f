use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::snf::{smith, SnfTrack};

/// Order of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

/// Finitely generated abelian group `Z^n / L` with `L` spanned by relation columns.
///
/// Canonical coordinates list the torsion part first (coordinate `i` lives in
/// `Z/d_i`), followed by `free_rank` free coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    ambient_rank: usize,
    relations: IntMatrix,
    torsion: Vec<BigInt>,
    free_rank: usize,
    /// Rows map ambient vectors to canonical coordinates.
    coord: IntMatrix,
    /// Columns are ambient lifts of the canonical generators.
    lifts: IntMatrix,
}

/// A reduced element in canonical coordinates.
pub type GroupElement = Vec<BigInt>;

impl FgAbGroup {
    pub fn from_presentation(ambient_rank: usize, relations: IntMatrix) -> Self {
        assert_eq!(
            relations.rows(),
            ambient_rank,
            "relations must have ambient_rank rows"
        );
        let s = smith(&relations, SnfTrack::ROWS);
        let u = s.u.unwrap();
        let ui = s.u_inv.unwrap();
        let mut keep = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..s.rank {
            if !s.diag[i].is_one() {
                keep.push(i);
                torsion.push(s.diag[i].clone());
            }
        }
        keep.extend(s.rank..ambient_rank);
        FgAbGroup {
            ambient_rank,
            free_rank: ambient_rank - s.rank,
            coord: u.select_rows(&keep),
            lifts: ui.select_columns(&keep),
            torsion,
            relations,
        }
    }

    /// `Z/d_1 ⊕ ... ⊕ Z/d_k ⊕ Z^free` with the obvious presentation (zeros give free summands).
    pub fn from_cyclic_orders(orders: &[i64]) -> Self {
        let n = orders.len();
        let diag: Vec<BigInt> = orders.iter().map(|&d| BigInt::from(d)).collect();
        Self::from_presentation(n, IntMatrix::diagonal(n, n, &diag))
    }

    pub fn free(rank: usize) -> Self {
        Self::from_presentation(rank, IntMatrix::zeros(rank, 0))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Number of canonical coordinates.
    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn coord_matrix(&self) -> &IntMatrix {
        &self.coord
    }

    pub fn lift_matrix(&self) -> &IntMatrix {
        &self.lifts
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
    }

    /// Exponent of the torsion subgroup.
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Minimal number of generators.
    pub fn min_generators(&self) -> usize {
        self.ngens()
    }

    pub fn same_invariants(&self, other: &FgAbGroup) -> bool {
        self.torsion == other.torsion && self.free_rank == other.free_rank
    }

    pub fn zero(&self) -> GroupElement {
        vec![BigInt::zero(); self.ngens()]
    }

    /// Canonical generator `i`.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut x = self.zero();
        x[i] = BigInt::one();
        x
    }

    pub fn reduce(&self, mut x: GroupElement) -> GroupElement {
        assert_eq!(x.len(), self.ngens(), "coordinate length mismatch");
        for (c, d) in x.iter_mut().zip(&self.torsion) {
            *c = c.mod_floor(d);
        }
        x
    }

    pub fn is_reduced(&self, x: &[BigInt]) -> bool {
        x.len() == self.ngens()
            && x.iter()
                .zip(&self.torsion)
                .all(|(c, d)| c >= &BigInt::zero() && c < d)
    }

    /// Canonical element represented by an ambient vector.
    pub fn from_ambient(&self, v: &[BigInt]) -> GroupElement {
        assert_eq!(v.len(), self.ambient_rank, "ambient length mismatch");
        self.reduce(self.coord.mul_vec(v))
    }

    /// Ambient representative of a canonical element.
    pub fn lift(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.lifts.mul_vec(x)
    }

    pub fn is_zero_ambient(&self, v: &[BigInt]) -> bool {
        self.from_ambient(v).iter().all(Zero::is_zero)
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> GroupElement {
        self.reduce(x.iter().zip(y).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, x: &[BigInt], y: &[BigInt]) -> GroupElement {
        self.reduce(x.iter().zip(y).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self, x: &[BigInt]) -> GroupElement {
        self.reduce(x.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &BigInt, x: &[BigInt]) -> GroupElement {
        self.reduce(x.iter().map(|a| a * k).collect())
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        x.iter().all(Zero::is_zero)
    }

    /// Least `n ≥ 1` with `n·x = 0`.
    pub fn element_order(&self, x: &[BigInt]) -> Order {
        let t = self.torsion.len();
        if x[t..].iter().any(|c| !c.is_zero()) {
            return Order::Infinite;
        }
        let mut n = BigInt::one();
        for (c, d) in x.iter().zip(&self.torsion) {
            let c = c.mod_floor(d);
            if !c.is_zero() {
                n = n.lcm(&(d / c.gcd(d)));
            }
        }
        Order::Finite(n)
    }

    /// All elements of a finite group, in lexicographic coordinate order.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        if !self.is_finite() {
            return None;
        }
        let dims: Vec<usize> = self.torsion.iter().map(|d| d.to_usize().unwrap()).collect();
        let total: usize = dims.iter().product();
        let mut out = Vec::with_capacity(total);
        let mut cur = vec![0usize; dims.len()];
        for _ in 0..total {
            out.push(cur.iter().map(|&c| BigInt::from(c)).collect());
            for k in (0..dims.len()).rev() {
                cur[k] += 1;
                if cur[k] < dims[k] {
                    break;
                }
                cur[k] = 0;
            }
        }
        Some(out)
    }

    /// Direct sum; ambient coordinates are concatenated.
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup::from_presentation(
            self.ambient_rank + other.ambient_rank,
            self.relations.block_diag(&other.relations),
        )
    }

    /// Torsion subgroup with relations `diag(d_i)`, and its inclusion into `self`.
    pub fn torsion_subgroup(&self) -> (FgAbGroup, super::hom::AbHom) {
        let t = self.torsion.len();
        let tors = FgAbGroup::from_presentation(t, IntMatrix::diagonal(t, t, &self.torsion));
        let idx: Vec<usize> = (0..t).collect();
        let incl = self.lifts.select_columns(&idx);
        let hom = super::hom::AbHom::new(tors.clone(), self.clone(), incl)
            .expect("torsion inclusion is a homomorphism");
        (tors, hom)
    }

    /// Short description like `Z/2 + Z/4 + Z^1`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({})", self.describe())
    }
}

/// Same as [`FgAbGroup::from_presentation`].
pub fn group_from_presentation(ambient_rank: usize, relations: IntMatrix) -> FgAbGroup {
    FgAbGroup::from_presentation(ambient_rank, relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::matrix::int_vec;

    #[test]
    fn presentations() {
        let g = group_from_presentation(1, IntMatrix::from_i64(1, 1, &[2]));
        assert_eq!(g.invariant_factors(), &int_vec(&[2])[..]);
        let g = group_from_presentation(2, IntMatrix::from_i64(2, 1, &[1, -1]));
        assert!(g.invariant_factors().is_empty());
        assert_eq!(g.free_rank(), 1);
        let g = FgAbGroup::from_cyclic_orders(&[2, 4]);
        assert_eq!(g.invariant_factors(), &int_vec(&[2, 4])[..]);
        let g = group_from_presentation(2, IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(g.invariant_factors(), &int_vec(&[6])[..]);
        assert_eq!(g.min_generators(), 1);
    }

    #[test]
    fn orders() {
        let g = FgAbGroup::from_cyclic_orders(&[2]);
        assert_eq!(g.element_order(&int_vec(&[1])), Order::Finite(2.into()));
        let z = FgAbGroup::free(1);
        assert_eq!(z.element_order(&int_vec(&[3])), Order::Infinite);
        let g = FgAbGroup::from_cyclic_orders(&[2, 4]);
        assert_eq!(g.element_order(&int_vec(&[1, 2])), Order::Finite(2.into()));
        assert_eq!(g.elements().unwrap().len(), 8);
    }

    #[test]
    fn ambient_round_trip() {
        let g = group_from_presentation(2, IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        let x = g.from_ambient(&int_vec(&[1, 1]));
        assert_eq!(g.element_order(&x), Order::Finite(6.into()));
        let back = g.from_ambient(&g.lift(&x));
        assert_eq!(back, x);
        assert!(g.is_zero_ambient(&int_vec(&[2, 3])));
        assert!(!g.is_zero_ambient(&int_vec(&[1, 0])));
    }

    #[test]
    fn mixed_min_generators() {
        let g = FgAbGroup::from_cyclic_orders(&[0, 3]);
        assert_eq!(g.min_generators(), 2);
        assert_eq!(g.describe(), "Z/3 + Z^1");
    }
}
