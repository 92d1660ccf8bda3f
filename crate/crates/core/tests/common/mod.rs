//! Random models and property checks shared by the property and acceptance suites.
#![allow(dead_code)]

use galcoh::globalcoh::{
    glue_local_classes, index_bounds_global, localize_all, period_global, power_global,
    restrict_global, GlobalAbGroup, GlobalClass, GlueOutcome, LocalValue, PlaceModel,
};
use galcoh::grpmod::{
    all_subgroups, coinvariants, projection_hom, transfer, transfer_with_section,
};
use galcoh::intlat::{smith, SnfTrack};
use galcoh::localcoh::{
    local_index, period_local, power_local, restrict_local, ExtensionModelLocal,
};
use galcoh::{FgAbGroup, FinGroup, GModule, IntMatrix, LocalH1, Order, PlaceSpec, Subgroup};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

macro_rules! ensure {
    ($c:expr, $($fmt:tt)+) => {
        if !$c {
            return Err(format!($($fmt)+));
        }
    };
}

/// Every test group has order at most 8.
pub fn groups() -> Vec<FinGroup> {
    let c = FinGroup::cyclic;
    vec![
        FinGroup::trivial(),
        c(2),
        c(3),
        c(4),
        c(5),
        c(6),
        c(7),
        c(8),
        FinGroup::klein_four(),
        c(2).product(&c(4)),
        c(2).product(&c(2)).product(&c(2)),
        FinGroup::symmetric3(),
        FinGroup::dihedral(4),
    ]
}

pub fn cyclic_groups() -> Vec<FinGroup> {
    (1..=8).map(FinGroup::cyclic).collect()
}

fn quotient(m: GModule, k: u32) -> GModule {
    if k == 0 {
        return m;
    }
    let n = m.base().ambient_rank();
    let rel = IntMatrix::identity(n).scale(&BigInt::from(k));
    let base = FgAbGroup::from_presentation(n, rel);
    GModule::from_all(m.group().clone(), base, m.actions().to_vec()).expect("k·M is a submodule")
}

fn sign_module(g: &FinGroup, h: &Subgroup) -> GModule {
    let acts = g
        .elements()
        .map(|x| IntMatrix::from_i64(1, 1, &[if h.contains(x) { 1 } else { -1 }]))
        .collect();
    GModule::from_all(g.clone(), FgAbGroup::free(1), acts).expect("character")
}

/// A module of ambient rank at most 4 whose invariant factors divide a modulus `≤ 12`.
pub fn random_module(r: &mut ChaCha8Rng, g: &FinGroup) -> GModule {
    let modulus: u32 = r.gen_range(2..=12);
    let divisors: Vec<u32> = (2..=modulus).filter(|d| modulus % d == 0).collect();
    let target = r.gen_range(1..=4usize);
    let subs = all_subgroups(g);
    let mut out: Option<GModule> = None;
    let mut rank = 0;
    while rank < target {
        let room = target - rank;
        let k = if r.gen_bool(0.35) {
            0
        } else {
            *divisors.choose(r).unwrap()
        };
        let idx2: Vec<&Subgroup> = subs.iter().filter(|h| h.order() * 2 == g.order()).collect();
        let perms: Vec<&Subgroup> = subs
            .iter()
            .filter(|h| h.order() < g.order() && g.order() / h.order() <= room)
            .collect();
        let atom = match r.gen_range(0..4) {
            1 if !idx2.is_empty() => sign_module(g, idx2.choose(r).unwrap()),
            2 if !perms.is_empty() => GModule::permutation(g.clone(), perms.choose(r).unwrap()),
            3 if g.order() > 1 && g.order() - 1 <= room => GModule::augmentation_ideal(g.clone()),
            _ => GModule::trivial(g.clone(), FgAbGroup::free(1)),
        };
        let atom = quotient(atom, k);
        rank += atom.base().ambient_rank();
        out = Some(match out {
            None => atom,
            Some(m) => m.direct_sum(&atom).expect("same group"),
        });
    }
    out.unwrap()
}

pub fn random_setup(seed: u64) -> (ChaCha8Rng, GModule) {
    let mut r = rng(seed);
    let gs = groups();
    let g = gs.choose(&mut r).unwrap().clone();
    let m = random_module(&mut r, &g);
    (r, m)
}

pub fn random_element(r: &mut ChaCha8Rng, a: &FgAbGroup) -> Vec<BigInt> {
    let x: Vec<BigInt> = a
        .invariant_factors()
        .iter()
        .map(|d| BigInt::from(r.gen_range(0..d.to_i64().unwrap().max(1))))
        .collect();
    let free: Vec<BigInt> = (0..a.free_rank())
        .map(|_| BigInt::from(r.gen_range(-3..=3)))
        .collect();
    a.reduce([x, free].concat())
}

/// A random finite or real place of `g`.
pub fn random_place(r: &mut ChaCha8Rng, g: &FinGroup, allow_real: bool) -> PlaceSpec {
    let invols: Vec<usize> = g.elements().filter(|&x| g.mul(x, x) == 0).collect();
    if allow_real && r.gen_bool(0.3) {
        return PlaceSpec::real(g, "r", *invols.choose(r).unwrap());
    }
    let subs = all_subgroups(g);
    PlaceSpec::finite("v", subs.choose(r).unwrap().clone(), None)
}

pub fn random_matrix(r: &mut ChaCha8Rng) -> IntMatrix {
    let (m, n) = (r.gen_range(1..=6), r.gen_range(1..=6));
    let e: Vec<i64> = (0..m * n).map(|_| r.gen_range(-9..=9)).collect();
    IntMatrix::from_i64(m, n, &e)
}

// ---- properties ----

pub fn snf_identities(seed: u64) -> Check {
    let mut r = rng(seed);
    let a = random_matrix(&mut r);
    let s = smith(&a, SnfTrack::ALL);
    let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
    ensure!(u.mul(&a).mul(&v) == s.d_matrix(), "U·A·V != D for {a:?}");
    for w in s.diag[..s.rank].windows(2) {
        ensure!(
            (&w[1] % &w[0]).is_zero(),
            "divisibility chain broken: {:?}",
            s.diag
        );
    }
    ensure!(
        s.diag[..s.rank].iter().all(|d| d.is_positive()),
        "nonpositive pivot"
    );
    ensure!(
        u.determinant().abs().is_one() && v.determinant().abs().is_one(),
        "not unimodular"
    );
    let g = FgAbGroup::from_presentation(a.rows(), a.clone());
    let again = FgAbGroup::from_presentation(g.ambient_rank(), g.relations().clone());
    ensure!(again.same_invariants(&g), "presentation round trip");
    if let Some(x) = g.is_finite().then(|| random_element(&mut r, &g)) {
        if let Order::Finite(n) = g.element_order(&x) {
            ensure!(g.is_zero(&g.scale(&n, &x)), "order does not kill");
            ensure!(
                n.is_one() || !g.is_zero(&g.scale(&(n - 1u32), &x)),
                "order not minimal"
            );
        }
    }
    Ok(())
}

/// Two coset sections of `Δ` give the same transfer.
pub fn transfer_section_independent(seed: u64) -> Check {
    let (mut r, m) = random_setup(seed);
    let g = m.group().clone();
    let d = all_subgroups(&g).choose(&mut r).unwrap().clone();
    let whole = Subgroup::whole(&g);
    let cb = coinvariants(&m, &whole);
    let alpha = random_element(&mut r, &cb.torsion);
    let reps = d.right_transversal(&g);
    let moved: Vec<usize> = reps
        .iter()
        .map(|&s| g.mul(*d.members().choose(&mut r).unwrap(), s))
        .collect();
    let a = transfer_with_section(&m, &whole, &d, &reps, &alpha);
    let b = transfer_with_section(&m, &whole, &d, &moved, &alpha);
    ensure!(
        a == b,
        "sections {reps:?} and {moved:?} disagree: {a:?} vs {b:?}"
    );
    Ok(())
}

/// Projection after transfer is `[Γ:Δ]`; when `Γ` and `Δ` act through the same
/// automorphisms the transfer itself is `[Γ:Δ]`.
pub fn multiplication_law(seed: u64) -> Check {
    let (mut r, m) = random_setup(seed);
    let g = m.group().clone();
    let subs = all_subgroups(&g);
    let same_image: Vec<&Subgroup> = subs
        .iter()
        .filter(|h| m.image_group(h).order() == m.image_group(&Subgroup::whole(&g)).order())
        .collect();
    let d = if r.gen_bool(0.5) {
        (*same_image.choose(&mut r).unwrap()).clone()
    } else {
        subs.choose(&mut r).unwrap().clone()
    };
    let whole = Subgroup::whole(&g);
    let cb = coinvariants(&m, &whole);
    let cs = coinvariants(&m, &d);
    let alpha = random_element(&mut r, &cb.torsion);
    let idx = BigInt::from(d.index_in(&g));
    let t = transfer(&m, &d, &alpha);
    let back = projection_hom(&m, &d, &whole).apply(&t);
    ensure!(
        back == cb.torsion.scale(&idx, &alpha),
        "projection∘transfer != index"
    );
    if m.image_group(&d).order() == m.image_group(&whole).order() {
        let ident = cb
            .torsion_class_of(&cs.lift_torsion(&t))
            .ok_or("transfer left the torsion")?;
        ensure!(
            ident == cb.torsion.scale(&idx, &alpha),
            "transfer != [Γ:Δ]·α"
        );
    }
    Ok(())
}

pub fn local_power_laws(seed: u64) -> Check {
    let (mut r, m) = random_setup(seed);
    let p = random_place(&mut r, m.group(), true);
    let h = LocalH1::new(&m, &p).map_err(|e| e.to_string())?;
    let x = h
        .class(random_element(&mut r, &h.group))
        .map_err(|e| e.to_string())?;
    let (a, b) = (r.gen_range(-6..=6i64), r.gen_range(-6..=6i64));
    let lhs = power_local(&h, &power_local(&h, &x, a), b);
    ensure!(
        lhs == power_local(&h, &x, a * b),
        "local ◇{a}∘◇{b} != ◇{}",
        a * b
    );
    let per = period_local(&h, &x);
    ensure!(
        h.is_neutral(&power_local(&h, &x, per as i64)),
        "period does not kill"
    );
    ensure!(
        (1..per).all(|k| !h.is_neutral(&power_local(&h, &x, k as i64))),
        "period not minimal"
    );
    if p.kind == galcoh::PlaceKind::Finite {
        let k = r.gen_range(1..=4u64);
        let ext = ExtensionModelLocal {
            delta: p.decomposition.clone(),
            multiplier: k,
        };
        let (_, y) = restrict_local(&m, &h, &x, &ext).map_err(|e| e.to_string())?;
        ensure!(
            y == h.group.scale(&BigInt::from(k), &x.value),
            "restriction to Δ_v is not ·m"
        );
        let rep = local_index(&m, &h, &x, 8, false).map_err(|e| e.to_string())?;
        for d in &rep.splitting_degrees {
            ensure!(
                d % per == 0,
                "per {per} does not divide local splitting degree {d}"
            );
        }
    }
    Ok(())
}

/// A small random global model: two named places and no reservoir.
pub fn random_global(r: &mut ChaCha8Rng, small_groups: bool) -> (GModule, PlaceModel) {
    let gs: Vec<FinGroup> = groups()
        .into_iter()
        .filter(|g| !small_groups || g.order() <= 4)
        .collect();
    let g = gs.choose(r).unwrap().clone();
    let m = random_module(r, &g);
    let subs = all_subgroups(&g);
    let mut places: Vec<PlaceSpec> = (0..2)
        .map(|i| PlaceSpec::finite(&format!("v{i}"), subs.choose(r).unwrap().clone(), None))
        .collect();
    if r.gen_bool(0.3) {
        let invols: Vec<usize> = g.elements().filter(|&x| g.mul(x, x) == 0).collect();
        places.push(PlaceSpec::real(&g, "r", *invols.choose(r).unwrap()));
    }
    (m, PlaceModel::new(places, 0))
}

pub fn random_class(r: &mut ChaCha8Rng, gab: &GlobalAbGroup) -> GlobalClass {
    let ab = random_element(r, &gab.group);
    let mut fibers = gab.compatible_fibers(&ab);
    if fibers.is_empty() {
        return gab.neutral_class();
    }
    let inf = fibers.swap_remove(r.gen_range(0..fibers.len()));
    GlobalClass { ab, inf }
}

pub fn global_power_laws(seed: u64) -> Check {
    let mut r = rng(seed);
    let (m, pm) = random_global(&mut r, false);
    let gab = GlobalAbGroup::new(&m, &pm).map_err(|e| e.to_string())?;
    let x = random_class(&mut r, &gab);
    let (a, b) = (r.gen_range(-6..=6i64), r.gen_range(-6..=6i64));
    let xa = power_global(&gab, &x, a);
    ensure!(
        gab.check_compatible(&xa.ab, &xa.inf).is_ok(),
        "power left the fiber product"
    );
    ensure!(
        power_global(&gab, &xa, b) == power_global(&gab, &x, a * b),
        "global ◇{a}∘◇{b}"
    );
    for o in 0..gab.orbits.len() {
        let tg = gab.local_group(o);
        let lhs = gab.localize(o, &xa.ab);
        let rhs = tg.scale(&BigInt::from(a), &gab.localize(o, &x.ab));
        ensure!(lhs == rhs, "l_v(ξ^◇{a}) != {a}·l_v(ξ) at orbit {o}");
    }
    Ok(())
}

pub fn period_divides_splitting(seed: u64) -> Check {
    let mut r = rng(seed);
    let (m, pm) = random_global(&mut r, true);
    let gab = GlobalAbGroup::new(&m, &pm).map_err(|e| e.to_string())?;
    let x = random_class(&mut r, &gab);
    let per = period_global(&gab, &x);
    let b = index_bounds_global(&gab, &x, 8, false).map_err(|e| e.to_string())?;
    for d in &b.splitting_degrees {
        ensure!(
            d % per == 0,
            "per {per} does not divide splitting degree {d}"
        );
    }
    ensure!(b.lower % per == 0, "per does not divide the lower bound");
    Ok(())
}

/// Projection of the restriction to `Δ` (multiplier 1) is `[Γ:Δ]·ab`.
pub fn restriction_corestriction(seed: u64) -> Check {
    let mut r = rng(seed);
    let (m, mut pm) = random_global(&mut r, false);
    pm.named_places
        .retain(|p| p.kind == galcoh::PlaceKind::Finite);
    let gab = GlobalAbGroup::new(&m, &pm).map_err(|e| e.to_string())?;
    let x = random_class(&mut r, &gab);
    let g = m.group();
    let d = all_subgroups(g).choose(&mut r).unwrap().clone();
    let rc = restrict_global(&gab, &x, &d, 1, &[]).map_err(|e| e.to_string())?;
    let back = projection_hom(&gab.sum_zero, &d, &Subgroup::whole(g)).apply(&rc.ab);
    let want = gab.group.scale(&BigInt::from(d.index_in(g)), &x.ab);
    ensure!(back == want, "Cor∘Res != [Γ:Δ]");
    Ok(())
}

/// Gluing over a cyclic group: succeeds exactly when `Σμ = 0` and reproduces the prescription.
pub fn glue_round_trip(seed: u64) -> Check {
    glue_outcome(seed).map(|_| ())
}

/// As [`glue_round_trip`], reporting whether the prescription glued.
pub fn glue_outcome(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let g = cyclic_groups().choose(&mut r).unwrap().clone();
    let m = random_module(&mut r, &g);
    let subs = all_subgroups(&g);
    let places: Vec<PlaceSpec> = (0..r.gen_range(1..=3))
        .map(|i| PlaceSpec::finite(&format!("v{i}"), subs.choose(&mut r).unwrap().clone(), None))
        .collect();
    let pm = PlaceModel::new(places, 0);
    let gab = GlobalAbGroup::new(&m, &pm).map_err(|e| e.to_string())?;
    let mut locals = localize_all(&gab, &gab.group.zero());
    let mut prescribed = Vec::new();
    for (o, p) in pm.named_places.iter().enumerate() {
        let v = random_element(&mut r, gab.local_group(o));
        locals[o] = v.clone();
        prescribed.push((p.name.clone(), LocalValue::Finite(v)));
    }
    let mu = gab.mu_sum(&locals);
    let mu_zero = mu.iter().all(Zero::is_zero);
    let (glued, out) = glue_local_classes(&m, &pm, &prescribed).map_err(|e| e.to_string())?;
    match out {
        GlueOutcome::Glued(x) => {
            ensure!(mu_zero, "glued although Σμ = {mu:?}");
            for (o, want) in locals.iter().enumerate().take(pm.named_places.len()) {
                ensure!(
                    &glued.localize(o, &x.ab) == want,
                    "localization differs at orbit {o}"
                );
            }
            for o in pm.named_places.len()..glued.orbits.len() {
                ensure!(
                    glued.localize(o, &x.ab).iter().all(Zero::is_zero),
                    "nonzero off the prescription"
                );
            }
        }
        GlueOutcome::Obstruction(o) => {
            ensure!(!mu_zero && o == mu, "obstruction {o:?} but Σμ = {mu:?}");
        }
    }
    Ok(mu_zero)
}

/// Multiplication by `k` is equivariant; its induced maps commute with powers and localization.
pub fn functoriality(seed: u64) -> Check {
    let mut r = rng(seed);
    let (m, pm) = random_global(&mut r, true);
    let gab = GlobalAbGroup::new(&m, &pm).map_err(|e| e.to_string())?;
    let k = BigInt::from(r.gen_range(2..=5));
    let n = m.base().ambient_rank();
    let f = IntMatrix::identity(n).scale(&k);
    let fh = gab.induced_map(&gab, &f).map_err(|e| e.to_string())?;
    let x = random_class(&mut r, &gab);
    let d = r.gen_range(-4..=4i64);
    let lhs = fh.apply(&power_global(&gab, &x, d).ab);
    let rhs = gab.group.scale(&BigInt::from(d), &fh.apply(&x.ab));
    ensure!(lhs == rhs, "f_* does not commute with ◇{d}");
    for o in 0..gab.orbits.len() {
        let tg = gab.local_group(o);
        ensure!(
            gab.localize(o, &fh.apply(&x.ab)) == tg.scale(&k, &gab.localize(o, &x.ab)),
            "f_* does not commute with l_v at orbit {o}"
        );
    }
    Ok(())
}
