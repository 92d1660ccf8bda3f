use num_bigint::BigInt;
use num_traits::Zero;

use super::module::GModule;
use crate::intlat::{
    integer_kernel, is_exact_at, is_injective, is_surjective, lattice_basis, AbHom, FgAbGroup,
    IntMatrix, LinearSolver,
};

/// `0 → Z[Γ]^s → M⁰ → M → 0` with `M⁰` torsion-free.
#[derive(Clone, Debug)]
pub struct FreeKernelResolution {
    pub free_rank: usize,
    pub m_minus1: GModule,
    pub m0: GModule,
    pub kappa: AbHom,
    pub lambda: AbHom,
    /// Whether `rank(M⁰) ≤ |Γ|·gen(M)`.
    pub within_rank_bound: bool,
}

/// Outcome of checking a resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionCheck {
    pub kappa_injective: bool,
    pub lambda_surjective: bool,
    pub exact: bool,
    pub m0_torsion_free: bool,
    pub equivariant: bool,
}

impl ResolutionCheck {
    pub fn all_pass(&self) -> bool {
        self.kappa_injective
            && self.lambda_surjective
            && self.exact
            && self.m0_torsion_free
            && self.equivariant
    }
}

impl FreeKernelResolution {
    pub fn verify(&self, m: &GModule) -> ResolutionCheck {
        ResolutionCheck {
            kappa_injective: is_injective(&self.kappa),
            lambda_surjective: is_surjective(&self.lambda),
            exact: is_exact_at(&self.kappa, &self.lambda),
            m0_torsion_free: self.m0.base().invariant_factors().is_empty(),
            equivariant: self.m_minus1.is_equivariant(&self.m0, &self.kappa.matrix)
                && self.m0.is_equivariant(m, &self.lambda.matrix),
        }
    }
}

/// Span (as columns) of the orbits `γ·v` of the given vectors.
fn orbit_span(actions: &[IntMatrix], vecs: &[Vec<BigInt>], dim: usize) -> IntMatrix {
    let cols: Vec<Vec<BigInt>> = vecs
        .iter()
        .flat_map(|v| actions.iter().map(move |a| a.mul_vec(v)))
        .collect();
    IntMatrix::from_columns(dim, &cols)
}

/// Greedy module generators of `base` (canonical generators, in order).
fn module_generators(m: &GModule) -> Vec<Vec<BigInt>> {
    let base = m.base();
    let mut chosen: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..base.ngens() {
        let e = base.lift(&base.generator(i));
        let span = orbit_span(m.actions(), &chosen, base.ambient_rank()).hcat(base.relations());
        if LinearSolver::new(&span).solve(&e).is_none() {
            chosen.push(e);
        }
    }
    chosen
}

pub fn free_kernel_resolution(m: &GModule) -> FreeKernelResolution {
    let g = m.group();
    let n = g.order();
    let gen_count = m.base().min_generators();
    if m.base().invariant_factors().is_empty() {
        let m0 = m.to_free_basis().expect("torsion-free base");
        let r = m0.base().ambient_rank();
        let m_minus1 = GModule::regular(g.clone(), 0);
        let lambda = AbHom::new(
            m0.base().clone(),
            m.base().clone(),
            m.base().lift_matrix().clone(),
        )
        .expect("identity in canonical coordinates");
        let kappa = AbHom::zero(m_minus1.base(), m0.base());
        return FreeKernelResolution {
            free_rank: 0,
            within_rank_bound: r <= n * gen_count,
            m_minus1,
            m0,
            kappa,
            lambda,
        };
    }

    let gens = module_generators(m);
    let k = gens.len();
    let amb = m.base().ambient_rank();
    let cover_mod = GModule::regular(g.clone(), k);
    // Z[Γ]^k → base, e_{b,h} ↦ h·x_b
    let cover_cols: Vec<Vec<BigInt>> = (0..k)
        .flat_map(|b| g.elements().map(move |h| (b, h)))
        .map(|(b, h)| m.action(h).mul_vec(&gens[b]))
        .collect();
    let cover = IntMatrix::from_columns(amb, &cover_cols);
    let fk = n * k;

    // kernel lattice K ⊂ Z^{fk}
    let big = cover.hcat(m.base().relations());
    let ker = integer_kernel(&big);
    let rows: Vec<usize> = (0..fk).collect();
    let kbasis = lattice_basis(&ker.select_rows(&rows));
    let r = kbasis.cols();

    // action of Γ on K in the chosen basis
    let solver = LinearSolver::new(&kbasis);
    let rho: Vec<IntMatrix> = g
        .elements()
        .map(|h| {
            let img = cover_mod.action(h).mul(&kbasis);
            let cols: Vec<Vec<BigInt>> = (0..r)
                .map(|j| solver.solve(&img.column(j)).expect("K is Γ-stable"))
                .collect();
            IntMatrix::from_columns(r, &cols)
        })
        .collect();
    // dual action ρ(γ⁻¹)^T
    let rho_dual: Vec<IntMatrix> = g.elements().map(|h| rho[g.inv(h)].transpose()).collect();

    // module generators of K^∨
    let mut ys: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..r {
        let mut e = vec![BigInt::zero(); r];
        e[i] = BigInt::from(1);
        let span = orbit_span(&rho_dual, &ys, r);
        if LinearSolver::new(&span).solve(&e).is_none() {
            ys.push(e);
        }
    }
    let s = ys.len();

    // ι: K → Z[Γ]^s, ι(κ)_{(b,h)} = y_b · ρ(h⁻¹) κ
    let mut iota = IntMatrix::zeros(n * s, r);
    for (b, y) in ys.iter().enumerate() {
        for h in g.elements() {
            let row = rho[g.inv(h)].transpose().mul_vec(y);
            for (c, v) in row.into_iter().enumerate() {
                iota[(b * n + h, c)] = v;
            }
        }
    }

    // M⁰ = (Z[Γ]^k ⊕ Z[Γ]^s) / {(κ, −ι κ)}
    let p_mod = GModule::regular(g.clone(), s);
    let rel = kbasis.vcat(&iota.scale(&BigInt::from(-1)));
    let total = fk + n * s;
    let m0_pres = FgAbGroup::from_presentation(total, rel);
    let m0_actions: Vec<IntMatrix> = g
        .elements()
        .map(|h| cover_mod.action(h).block_diag(p_mod.action(h)))
        .collect();
    let m0_presented =
        GModule::from_all(g.clone(), m0_pres.clone(), m0_actions).expect("pushout is a module");
    let m0 = m0_presented
        .to_free_basis()
        .expect("pushout along a saturated embedding is torsion-free");

    // kappa: P → M⁰, p ↦ [(0, p)] in canonical coordinates
    let embed_p = IntMatrix::zeros(fk, n * s).vcat(&IntMatrix::identity(n * s));
    let kappa = AbHom::new(
        p_mod.base().clone(),
        m0.base().clone(),
        m0_pres.coord_matrix().mul(&embed_p),
    )
    .expect("kappa is well defined");
    // lambda: M⁰ → M, [(f, p)] ↦ cover(f)
    let cover_ext = cover.hcat(&IntMatrix::zeros(amb, n * s));
    let lambda = AbHom::new(
        m0.base().clone(),
        m.base().clone(),
        cover_ext.mul(m0_pres.lift_matrix()),
    )
    .expect("lambda is well defined");
    let rank0 = m0.base().ambient_rank();
    FreeKernelResolution {
        free_rank: s,
        within_rank_bound: rank0 <= n * gen_count,
        m_minus1: p_mod,
        m0,
        kappa,
        lambda,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpmod::FinGroup;

    #[test]
    fn lattice_needs_no_kernel() {
        let m = GModule::trivial(FinGroup::trivial(), FgAbGroup::free(1));
        let res = free_kernel_resolution(&m);
        assert_eq!(res.free_rank, 0);
        assert_eq!(res.m0.base().free_rank(), 1);
        assert!(res.verify(&m).all_pass());

        let i = IntMatrix::from_i64(2, 2, &[0, -1, 1, 0]);
        let zi =
            GModule::from_generators(FinGroup::cyclic(4), FgAbGroup::free(2), &[(1, i)]).unwrap();
        let res = free_kernel_resolution(&zi);
        assert_eq!(res.free_rank, 0);
        assert_eq!(res.m0.actions(), zi.actions());
        assert!(res.verify(&zi).all_pass());
    }

    #[test]
    fn z2_over_c2() {
        let m = GModule::trivial(FinGroup::cyclic(2), FgAbGroup::from_cyclic_orders(&[2]));
        let res = free_kernel_resolution(&m);
        assert!(res.free_rank >= 1);
        let check = res.verify(&m);
        assert!(check.all_pass(), "{check:?}");
    }

    #[test]
    fn twisted_torsion_over_s3() {
        let g = FinGroup::symmetric3();
        let sign = |x: usize| if x >= 3 { -1 } else { 1 };
        let action = g
            .elements()
            .map(|x| IntMatrix::from_i64(1, 1, &[sign(x)]))
            .collect();
        let m = GModule::from_all(g, FgAbGroup::from_cyclic_orders(&[3]), action).unwrap();
        let res = free_kernel_resolution(&m);
        let check = res.verify(&m);
        assert!(check.all_pass(), "{check:?}");
    }
}
