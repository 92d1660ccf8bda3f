use num_bigint::BigInt;
use num_traits::Zero;

use super::fingroup::{FinGroup, Subgroup};
use super::module::GModule;
use crate::error::{Error, Result};
use crate::intlat::{AbHom, FgAbGroup, GroupElement, IntMatrix};

/// Coinvariants `M_Δ` together with the torsion subgroup `M_{Δ,Tors}`.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub full: FgAbGroup,
    /// Base onto `full` (identity on ambient coordinates).
    pub proj: AbHom,
    pub torsion: FgAbGroup,
    /// `torsion` into `full`.
    pub incl: AbHom,
}

impl Coinvariants {
    /// Torsion-class coordinates of a class of `full` whose free part vanishes.
    pub fn to_torsion(&self, x: &[BigInt]) -> Option<GroupElement> {
        let t = self.torsion.ngens();
        if x[t..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(self.torsion.reduce(x[..t].to_vec()))
    }

    pub fn from_torsion(&self, x: &[BigInt]) -> GroupElement {
        self.incl.apply(x)
    }

    /// Torsion class of an ambient base vector, if it is torsion in `full`.
    pub fn torsion_class_of(&self, v: &[BigInt]) -> Option<GroupElement> {
        self.to_torsion(&self.full.from_ambient(v))
    }

    /// Ambient base representative of a torsion class.
    pub fn lift_torsion(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.full.lift(&self.from_torsion(x))
    }

    /// Map from an ambient base vector space into the torsion group, given by a matrix whose
    /// images are known to be torsion. The matrix acts `src.ambient → base.ambient`.
    pub fn torsion_map_matrix(&self, m: &IntMatrix) -> IntMatrix {
        let t = self.torsion.ngens();
        let rows: Vec<usize> = (0..t).collect();
        self.full.coord_matrix().select_rows(&rows).mul(m)
    }
}

/// Relation lattice for `M_Δ`: base relations plus `(δ − 1)e_j` for generators `δ`.
fn coinvariant_relations(m: &GModule, gens: &[usize]) -> IntMatrix {
    let n = m.base().ambient_rank();
    let id = IntMatrix::identity(n);
    let mut rel = m.base().relations().clone();
    for &g in gens {
        rel = rel.hcat(&m.action(g).sub(&id));
    }
    rel
}

pub fn coinvariants(m: &GModule, delta: &Subgroup) -> Coinvariants {
    let gens = delta.generators(m.group());
    coinvariants_by_generators(m, &gens)
}

pub(crate) fn coinvariants_by_generators(m: &GModule, gens: &[usize]) -> Coinvariants {
    let n = m.base().ambient_rank();
    let full = FgAbGroup::from_presentation(n, coinvariant_relations(m, gens));
    let proj = AbHom {
        src: m.base().clone(),
        dst: full.clone(),
        matrix: IntMatrix::identity(n),
    };
    let (torsion, incl) = full.torsion_subgroup();
    Coinvariants {
        full,
        proj,
        torsion,
        incl,
    }
}

/// Coinvariants with the choice between the whole group and its torsion part.
pub fn coinvariants_group(m: &GModule, delta: &Subgroup, torsion_only: bool) -> FgAbGroup {
    let c = coinvariants(m, delta);
    if torsion_only {
        c.torsion
    } else {
        c.full
    }
}

/// `Ĥ⁻¹(Δ, M) = ker(N_Δ : M_Δ → M)`.
#[derive(Clone, Debug)]
pub struct TateMinusOne {
    pub group: FgAbGroup,
    /// Inclusion into `M_Δ`.
    pub into_coinvariants: AbHom,
    /// Inclusion into `M_{Δ,Tors}`.
    pub into_torsion: AbHom,
    pub coinvariants: Coinvariants,
}

pub fn norm_matrix(m: &GModule, delta: &Subgroup) -> IntMatrix {
    let n = m.base().ambient_rank();
    delta
        .members()
        .iter()
        .fold(IntMatrix::zeros(n, n), |acc, &g| acc.add(m.action(g)))
}

pub fn tate_h_minus1(m: &GModule, delta: &Subgroup) -> TateMinusOne {
    let coinv = coinvariants(m, delta);
    let norm = AbHom::new(coinv.full.clone(), m.base().clone(), norm_matrix(m, delta))
        .expect("norm is well defined on coinvariants");
    let parts = norm.parts();
    let into_torsion = AbHom::new(
        parts.kernel.clone(),
        coinv.torsion.clone(),
        coinv.torsion_map_matrix(&parts.kernel_map.matrix),
    )
    .expect("norm kernel lies in the torsion");
    TateMinusOne {
        group: parts.kernel,
        into_coinvariants: parts.kernel_map,
        into_torsion,
        coinvariants: coinv,
    }
}

/// Transfer `M_{Γ',Tors} → M_{Δ,Tors}` for `Δ ≤ Γ'`, using right-coset representatives
/// `reps` of `Δ` in `big`: `a ↦ Σ s·a`.
pub fn transfer_with_section(
    m: &GModule,
    big: &Subgroup,
    small: &Subgroup,
    reps: &[usize],
    alpha: &[BigInt],
) -> GroupElement {
    let cb = coinvariants(m, big);
    let cs = coinvariants(m, small);
    transfer_between(m, &cb, &cs, reps, alpha)
}

pub(crate) fn transfer_between(
    m: &GModule,
    cb: &Coinvariants,
    cs: &Coinvariants,
    reps: &[usize],
    alpha: &[BigInt],
) -> GroupElement {
    let a = cb.lift_torsion(alpha);
    let n = m.base().ambient_rank();
    let mut sum = vec![BigInt::zero(); n];
    for &s in reps {
        for (acc, y) in sum.iter_mut().zip(m.action(s).mul_vec(&a)) {
            *acc += y;
        }
    }
    cs.torsion_class_of(&sum)
        .expect("transfer of a torsion class is torsion")
}

/// Transfer matrix on ambient base coordinates.
pub(crate) fn transfer_ambient(m: &GModule, reps: &[usize]) -> IntMatrix {
    let n = m.base().ambient_rank();
    reps.iter()
        .fold(IntMatrix::zeros(n, n), |acc, &s| acc.add(m.action(s)))
}

/// Transfer from `M_{Γ,Tors}` (whole group) to `M_{Δ,Tors}`.
pub fn transfer(m: &GModule, delta: &Subgroup, alpha: &[BigInt]) -> GroupElement {
    let whole = Subgroup::whole(m.group());
    let reps = delta.right_transversal(m.group());
    transfer_with_section(m, &whole, delta, &reps, alpha)
}

/// The transfer as a homomorphism of torsion groups, for `Δ ≤ Γ'`.
pub fn transfer_hom(m: &GModule, big: &Subgroup, small: &Subgroup) -> AbHom {
    let cb = coinvariants(m, big);
    let cs = coinvariants(m, small);
    let reps = small.right_transversal_in(m.group(), big);
    let t = cb.torsion.ngens();
    let cols: Vec<usize> = (0..t).collect();
    let lifts = cb.full.lift_matrix().select_columns(&cols);
    let matrix = cs.torsion_map_matrix(&transfer_ambient(m, &reps).mul(&lifts));
    AbHom::new(cb.torsion.clone(), cs.torsion.clone(), matrix).expect("transfer is a homomorphism")
}

/// Natural projection `M_{Δ,Tors} → M_{Γ',Tors}` for `Δ ≤ Γ'`.
pub fn projection_hom(m: &GModule, small: &Subgroup, big: &Subgroup) -> AbHom {
    let cs = coinvariants(m, small);
    let cb = coinvariants(m, big);
    let t = cs.torsion.ngens();
    let cols: Vec<usize> = (0..t).collect();
    let lifts = cs.full.lift_matrix().select_columns(&cols);
    let matrix = cb.torsion_map_matrix(&lifts);
    AbHom::new(cs.torsion.clone(), cb.torsion.clone(), matrix)
        .expect("projection is a homomorphism")
}

/// Induced module `Ind_Δ^Γ N` for `N` a module over `Δ` (given as its own group
/// with `embed` mapping local indices into `Γ`).
pub fn induced_module(
    gamma: &FinGroup,
    delta: &Subgroup,
    n: &GModule,
    embed: &[usize],
) -> Result<GModule> {
    if n.group().order() != delta.order() || embed.len() != delta.order() {
        return Err(Error::Invalid(
            "module group does not match the subgroup".into(),
        ));
    }
    let local = |x: usize| embed.iter().position(|&e| e == x);
    for i in n.group().elements() {
        for j in n.group().elements() {
            if embed[n.group().mul(i, j)] != gamma.mul(embed[i], embed[j]) {
                return Err(Error::Invalid("embedding is not a homomorphism".into()));
            }
        }
    }
    let reps = delta.left_transversal(gamma);
    let k = reps.len();
    let r = n.base().ambient_rank();
    let mut base = n.base().clone();
    for _ in 1..k {
        base = base.direct_sum(n.base());
    }
    let mut action = Vec::with_capacity(gamma.order());
    for g in gamma.elements() {
        let mut a = IntMatrix::zeros(k * r, k * r);
        for (i, &gi) in reps.iter().enumerate() {
            let x = gamma.mul(g, gi);
            // x = g_j δ
            let (j, d) = reps
                .iter()
                .enumerate()
                .find_map(|(j, &gj)| local(gamma.mul(gamma.inv(gj), x)).map(|d| (j, d)))
                .expect("cosets cover the group");
            let block = n.action(d);
            for p in 0..r {
                for q in 0..r {
                    a[(j * r + p, i * r + q)] = block[(p, q)].clone();
                }
            }
        }
        action.push(a);
    }
    GModule::from_all(gamma.clone(), base, action)
}
