use crate::grpmod::{abelian_invariants, commutator_subgroup, quotient_group, GModule, Subgroup};

/// Prime divisors of `n`.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Greatest divisor of `theta` dividing some power of `n`.
pub fn capacity(n: u64, theta: u64) -> u64 {
    assert!(n >= 1 && theta >= 1, "capacity needs positive arguments");
    let mut out = 1;
    let mut t = theta;
    for p in prime_divisors(n) {
        while t % p == 0 {
            t /= p;
            out *= p;
        }
    }
    out
}

/// `⌊log₂ x⌋` for `x ≥ 1`.
pub fn floor_log2(x: u64) -> u32 {
    63 - x.leading_zeros()
}

/// Size data of the image `Θ` of a subgroup in `Aut(M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaData {
    /// `ϑ = #Θ`.
    pub theta: u64,
    /// `#Θ^ab`.
    pub theta_ab: u64,
    pub sylow_cyclic: bool,
}

pub fn theta_data(m: &GModule, h: &Subgroup) -> ThetaData {
    let img = m.image_group(h);
    let (ab, _) = quotient_group(&img, &commutator_subgroup(&img));
    let theta_ab = abelian_invariants(&ab).iter().product::<usize>() as u64;
    ThetaData {
        theta: img.order() as u64,
        theta_ab,
        sylow_cyclic: crate::grpmod::is_sylow_cyclic(&img),
    }
}

/// Local splitting-degree guarantees for a class of period `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalSplitBound {
    /// `n · cp(n, ϑ^ab)`.
    pub bound_ab: u64,
    /// `n^(⌊log₂ ϑ⌋ + 1)`.
    pub bound_pow: u128,
    pub theta: ThetaData,
}

pub fn split_degree_local(m: &GModule, decomposition: &Subgroup, n: u64) -> LocalSplitBound {
    let theta = theta_data(m, decomposition);
    LocalSplitBound {
        bound_ab: n * capacity(n, theta.theta_ab),
        bound_pow: (n as u128).pow(floor_log2(theta.theta) + 1),
        theta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpmod::FinGroup;
    use crate::intlat::{FgAbGroup, IntMatrix};

    #[test]
    fn capacity_values() {
        assert_eq!(capacity(6, 40), 8);
        assert_eq!(capacity(2, 12), 4);
        assert_eq!(capacity(7, 1), 1);
        assert_eq!(capacity(1, 30), 1);
    }

    #[test]
    fn local_bounds() {
        let i = IntMatrix::from_i64(2, 2, &[0, -1, 1, 0]);
        let m =
            GModule::from_generators(FinGroup::cyclic(4), FgAbGroup::free(2), &[(1, i)]).unwrap();
        let b = split_degree_local(&m, &Subgroup::whole(m.group()), 2);
        assert_eq!(b.bound_ab, 8);
        let t = GModule::trivial(FinGroup::cyclic(4), FgAbGroup::from_cyclic_orders(&[3]));
        let b = split_degree_local(&t, &Subgroup::trivial(), 3);
        assert_eq!((b.bound_ab, b.bound_pow), (3, 3));
        let c5 = GModule::from_generators(
            FinGroup::cyclic(5),
            FgAbGroup::from_cyclic_orders(&[11]),
            &[(1, IntMatrix::from_i64(1, 1, &[3]))],
        )
        .unwrap();
        let b = split_degree_local(&c5, &Subgroup::whole(c5.group()), 5);
        assert_eq!(b.theta.theta, 5);
        assert_eq!(b.bound_pow, 125);
    }
}
