use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grpmod::{coinvariants, group_analysis, Coinvariants, FinGroup, GModule, Subgroup};
use crate::intlat::{AbHom, FgAbGroup, GroupElement, IntMatrix};
use crate::localcoh::{LocalH1, PlaceKind, PlaceSpec};

/// Default cap on the number of place orbits in a global model.
pub const DEFAULT_MAX_ORBITS: usize = 64;

/// Finite stand-in for the places of a global field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceModel {
    pub named_places: Vec<PlaceSpec>,
    /// Extra anonymous orbits per conjugacy class of cyclic subgroups.
    pub reservoir_depth: usize,
    pub max_orbits: usize,
}

impl PlaceModel {
    pub fn new(named_places: Vec<PlaceSpec>, reservoir_depth: usize) -> Self {
        PlaceModel {
            named_places,
            reservoir_depth,
            max_orbits: DEFAULT_MAX_ORBITS,
        }
    }

    pub fn with_reservoir(&self, reservoir_depth: usize) -> Self {
        PlaceModel {
            reservoir_depth,
            ..self.clone()
        }
    }

    pub fn place(&self, name: &str) -> Option<&PlaceSpec> {
        self.named_places.iter().find(|p| p.name == name)
    }
}

/// The places of `L` over one place of `K`: a `Γ`-orbit `Γ/D`.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub place: PlaceSpec,
    pub reservoir: bool,
    /// Left coset representatives `g_i` of `D`; point `i` is `g_i·v̆`.
    pub reps: Vec<usize>,
}

impl Orbit {
    fn new(g: &FinGroup, place: PlaceSpec, reservoir: bool) -> Self {
        let reps = place.decomposition.left_transversal(g);
        Orbit {
            place,
            reservoir,
            reps,
        }
    }

    /// Index `j` with `γ·g_i ∈ g_j D`.
    fn image(&self, g: &FinGroup, gamma: usize, i: usize) -> usize {
        let x = g.mul(gamma, self.reps[i]);
        self.reps
            .iter()
            .position(|&r| self.place.decomposition.contains(g.mul(g.inv(r), x)))
            .expect("cosets cover the group")
    }
}

/// Named orbits followed by the reservoir, depth-major; a model at depth `r`
/// is therefore a prefix of the model at depth `r + 1`.
pub fn expand_orbits(g: &FinGroup, pm: &PlaceModel) -> Result<Vec<Orbit>> {
    let mut names = HashSet::new();
    let mut out = Vec::new();
    for p in &pm.named_places {
        p.validate(g)?;
        if !names.insert(p.name.clone()) {
            return Err(Error::Invalid(format!(
                "place `{}` is listed twice",
                p.name
            )));
        }
        out.push(Orbit::new(g, p.clone(), false));
    }
    if pm.reservoir_depth > 0 {
        let analysis = group_analysis(g, crate::grpmod::DEFAULT_MAX_ORDER)?;
        let cyclic: Vec<&Subgroup> = analysis
            .cyclic_representatives
            .iter()
            .filter(|c| !c.is_trivial())
            .collect();
        for k in 0..pm.reservoir_depth {
            let mut add = |name: String, d: Subgroup| -> Result<()> {
                if !names.insert(name.clone()) {
                    return Err(Error::Invalid(format!(
                        "place name `{name}` clashes with a reservoir place"
                    )));
                }
                out.push(Orbit::new(g, PlaceSpec::finite(&name, d, None), true));
                Ok(())
            };
            for (i, c) in cyclic.iter().enumerate() {
                add(format!("res{k}.c{i}"), (*c).clone())?;
            }
            add(format!("res{k}.free"), Subgroup::trivial())?;
        }
    }
    if out.len() > pm.max_orbits {
        return Err(Error::TooManyOrbits {
            orbits: out.len(),
            limit: pm.max_orbits,
        });
    }
    Ok(out)
}

/// A point of the archimedean fiber over a real place.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FiberPoint {
    /// Element of `Ĥ⁻¹(⟨σ⟩, M)`.
    Torus(GroupElement),
    /// Index into a declared pointed set.
    Abstract(usize),
}

/// `H¹(K_v, G)` at a real place together with its map `θ_v` into `M_{⟨σ⟩,Tors}`.
#[derive(Clone, Debug)]
pub enum ArchFiber {
    Torus(LocalH1),
    /// Finite pointed set; point 0 is the base point and `images[i]` is `θ_v(i)`.
    Abstract {
        images: Vec<GroupElement>,
    },
}

impl ArchFiber {
    pub fn neutral(&self) -> FiberPoint {
        match self {
            ArchFiber::Torus(h) => FiberPoint::Torus(h.group.zero()),
            ArchFiber::Abstract { .. } => FiberPoint::Abstract(0),
        }
    }

    pub fn is_neutral(&self, p: &FiberPoint) -> bool {
        match (self, p) {
            (ArchFiber::Torus(h), FiberPoint::Torus(x)) => h.group.is_zero(x),
            (_, FiberPoint::Abstract(i)) => *i == 0,
            _ => false,
        }
    }

    pub fn contains(&self, p: &FiberPoint) -> bool {
        match (self, p) {
            (ArchFiber::Torus(h), FiberPoint::Torus(x)) => {
                x.len() == h.group.ngens() && h.group.is_reduced(x)
            }
            (ArchFiber::Abstract { images }, FiberPoint::Abstract(i)) => *i < images.len(),
            _ => false,
        }
    }

    pub fn theta(&self, p: &FiberPoint) -> GroupElement {
        match (self, p) {
            (ArchFiber::Torus(h), FiberPoint::Torus(x)) => h.theta().expect("real place").apply(x),
            (ArchFiber::Abstract { images }, FiberPoint::Abstract(i)) => images[*i].clone(),
            _ => panic!("fiber point of the wrong mode"),
        }
    }

    pub fn points(&self) -> Vec<FiberPoint> {
        match self {
            ArchFiber::Torus(h) => h
                .group
                .elements()
                .expect("finite")
                .into_iter()
                .map(FiberPoint::Torus)
                .collect(),
            ArchFiber::Abstract { images } => (0..images.len()).map(FiberPoint::Abstract).collect(),
        }
    }

    /// Parity rule: odd powers fix a point, even powers send it to the base point.
    pub fn nabla(&self, p: &FiberPoint, d: i64) -> FiberPoint {
        if d % 2 != 0 {
            p.clone()
        } else {
            self.neutral()
        }
    }
}

/// `(M[S̃]₀)_{Γ,Tors}` with its localization and sum maps.
#[derive(Clone, Debug)]
pub struct GlobalAbGroup {
    pub module: GModule,
    pub model: PlaceModel,
    pub orbits: Vec<Orbit>,
    /// `(orbit, coset)` for every place of `L` in the model.
    pub points: Vec<(usize, usize)>,
    /// `M[S̃]₀`, basis `m·w − m·w₀` for `w ≠ w₀`.
    pub sum_zero: GModule,
    pub coinvariants: Coinvariants,
    /// The global group itself.
    pub group: FgAbGroup,
    /// `M_{Γ_v̆}` per orbit (for real places, computed over `⟨σ⟩`).
    pub targets: Vec<Coinvariants>,
    /// `l_v` per orbit, into `targets[v].torsion`.
    pub loc: Vec<AbHom>,
    /// Projection `M_{Γ_v̆,Tors} → M_{Γ,Tors}` per orbit.
    pub mu_parts: Vec<AbHom>,
    pub global_coinvariants: Coinvariants,
    /// Orbit indices of the real places, in order.
    pub real_orbits: Vec<usize>,
    /// Fibers over the real places, aligned with `real_orbits`.
    pub fibers: Vec<ArchFiber>,
}

fn torsion_lifts(c: &Coinvariants) -> IntMatrix {
    let cols: Vec<usize> = (0..c.torsion.ngens()).collect();
    c.full.lift_matrix().select_columns(&cols)
}

fn add_block(out: &mut IntMatrix, bi: usize, bj: usize, a: &IntMatrix, sign: i64) {
    let r = a.rows();
    for i in 0..r {
        for j in 0..a.cols() {
            let v = &a[(i, j)] * sign;
            out[(bi * r + i, bj * r + j)] += v;
        }
    }
}

fn sum_zero_module(m: &GModule, orbits: &[Orbit], points: &[(usize, usize)]) -> Result<GModule> {
    let g = m.group();
    let r = m.base().ambient_rank();
    let k = points.len().saturating_sub(1);
    let mut rel = IntMatrix::zeros(0, 0);
    for _ in 0..k {
        rel = rel.block_diag(m.base().relations());
    }
    let base = FgAbGroup::from_presentation(k * r, rel);
    let offsets: Vec<usize> = orbits
        .iter()
        .scan(0, |acc, o| {
            let s = *acc;
            *acc += o.reps.len();
            Some(s)
        })
        .collect();
    let perm = |gamma: usize, p: usize| {
        let (o, i) = points[p];
        offsets[o] + orbits[o].image(g, gamma, i)
    };
    let mut mats = Vec::with_capacity(g.order());
    for gamma in g.elements() {
        let a = m.action(gamma);
        let mut out = IntMatrix::zeros(k * r, k * r);
        for w in 1..points.len() {
            let t0 = perm(gamma, 0);
            let tw = perm(gamma, w);
            if tw != 0 {
                add_block(&mut out, tw - 1, w - 1, a, 1);
            }
            if t0 != 0 {
                add_block(&mut out, t0 - 1, w - 1, a, -1);
            }
        }
        mats.push(out);
    }
    GModule::from_all(g.clone(), base, mats)
}

/// Shapiro sum `Σ_i g_i⁻¹ · m_{g_i v̆}` on ambient coordinates of `M[S̃]₀`.
fn localization_matrix(
    m: &GModule,
    orbits: &[Orbit],
    points: &[(usize, usize)],
    o: usize,
) -> IntMatrix {
    let g = m.group();
    let r = m.base().ambient_rank();
    let k = points.len().saturating_sub(1);
    let mut out = IntMatrix::zeros(r, k * r);
    let at = |p: usize| {
        let (po, i) = points[p];
        (po == o).then(|| m.action(g.inv(orbits[o].reps[i])).clone())
    };
    let base_point = if points.is_empty() { None } else { at(0) };
    for w in 1..points.len() {
        if let Some(a) = at(w) {
            add_block(&mut out, 0, w - 1, &a, 1);
        }
        if let Some(a) = &base_point {
            add_block(&mut out, 0, w - 1, a, -1);
        }
    }
    out
}

impl GlobalAbGroup {
    pub fn new(m: &GModule, pm: &PlaceModel) -> Result<Self> {
        let g = m.group();
        let orbits = expand_orbits(g, pm)?;
        let points: Vec<(usize, usize)> = orbits
            .iter()
            .enumerate()
            .flat_map(|(o, orb)| (0..orb.reps.len()).map(move |i| (o, i)))
            .collect();
        let sum_zero = sum_zero_module(m, &orbits, &points)?;
        let coinv = coinvariants(&sum_zero, &Subgroup::whole(g));
        let lifts = torsion_lifts(&coinv);
        let global_coinvariants = coinvariants(m, &Subgroup::whole(g));

        let mut targets = Vec::new();
        let mut loc = Vec::new();
        let mut mu_parts = Vec::new();
        let mut real_orbits = Vec::new();
        let mut fibers = Vec::new();
        for (o, orb) in orbits.iter().enumerate() {
            let target = match orb.place.kind {
                PlaceKind::Real => {
                    let h = LocalH1::new(m, &orb.place)?;
                    let t = h.tate.as_ref().expect("real place").coinvariants.clone();
                    real_orbits.push(o);
                    fibers.push(ArchFiber::Torus(h));
                    t
                }
                _ => coinvariants(m, &orb.place.decomposition),
            };
            let l = localization_matrix(m, &orbits, &points, o);
            AbHom::new(coinv.full.clone(), target.full.clone(), l.clone()).map_err(|e| {
                Error::NotHomomorphism(format!("localization at `{}`: {e}", orb.place.name))
            })?;
            let lt = target.torsion_map_matrix(&l.mul(&lifts));
            loc.push(AbHom::new(
                coinv.torsion.clone(),
                target.torsion.clone(),
                lt,
            )?);
            let mu = global_coinvariants.torsion_map_matrix(&torsion_lifts(&target));
            mu_parts.push(AbHom::new(
                target.torsion.clone(),
                global_coinvariants.torsion.clone(),
                mu,
            )?);
            targets.push(target);
        }
        Ok(GlobalAbGroup {
            module: m.clone(),
            model: pm.clone(),
            group: coinv.torsion.clone(),
            coinvariants: coinv,
            orbits,
            points,
            sum_zero,
            targets,
            loc,
            mu_parts,
            global_coinvariants,
            real_orbits,
            fibers,
        })
    }

    pub fn orbit_index(&self, name: &str) -> Result<usize> {
        self.orbits
            .iter()
            .position(|o| o.place.name == name)
            .ok_or_else(|| Error::UnknownPlace(name.to_string()))
    }

    /// `M_{Γ_v̆,Tors}` at an orbit.
    pub fn local_group(&self, o: usize) -> &FgAbGroup {
        &self.targets[o].torsion
    }

    pub fn localize(&self, o: usize, ab: &[BigInt]) -> GroupElement {
        self.loc[o].apply(ab)
    }

    /// `Σ_v μ_v(x_v)` for a tuple of local values, one per orbit.
    pub fn mu_sum(&self, local: &[GroupElement]) -> GroupElement {
        let tg = &self.global_coinvariants.torsion;
        local
            .iter()
            .zip(&self.mu_parts)
            .fold(tg.zero(), |acc, (x, mu)| tg.add(&acc, &mu.apply(x)))
    }

    /// The real place's position among `real_orbits`.
    pub fn real_index(&self, name: &str) -> Option<usize> {
        self.real_orbits
            .iter()
            .position(|&o| self.orbits[o].place.name == name)
    }

    /// Replaces the fiber over a real place by a declared pointed set.
    pub fn set_abstract_fiber(&mut self, place: &str, images: Vec<GroupElement>) -> Result<()> {
        let ri = self
            .real_index(place)
            .ok_or_else(|| Error::PlaceKind(format!("`{place}` is not a real place")))?;
        let tgt = &self.targets[self.real_orbits[ri]].torsion;
        if images.is_empty() {
            return Err(Error::Invalid("a pointed set needs its base point".into()));
        }
        let images: Vec<GroupElement> = images
            .into_iter()
            .map(|x| {
                if x.len() != tgt.ngens() {
                    return Err(Error::Dimension(format!(
                        "fiber image at `{place}` needs {} coordinates",
                        tgt.ngens()
                    )));
                }
                Ok(tgt.reduce(x))
            })
            .collect::<Result<_>>()?;
        if !tgt.is_zero(&images[0]) {
            return Err(Error::Invalid(format!(
                "base point at `{place}` must map to zero"
            )));
        }
        self.fibers[ri] = ArchFiber::Abstract { images };
        Ok(())
    }

    /// Map induced by an equivariant `f : M → N` between models over the same places.
    pub fn induced_map(&self, other: &GlobalAbGroup, f: &IntMatrix) -> Result<AbHom> {
        if self.points != other.points || !self.module.is_equivariant(&other.module, f) {
            return Err(Error::NotHomomorphism(
                "map is not equivariant between models over the same places".into(),
            ));
        }
        let k = self.points.len().saturating_sub(1);
        let mut big = IntMatrix::zeros(0, 0);
        for _ in 0..k {
            big = big.block_diag(f);
        }
        let mat = other
            .coinvariants
            .torsion_map_matrix(&big.mul(&torsion_lifts(&self.coinvariants)));
        AbHom::new(self.group.clone(), other.group.clone(), mat)
    }

    /// Natural map into the same model at a larger reservoir depth.
    pub fn deepen_map(&self, deeper: &GlobalAbGroup) -> AbHom {
        let a = self.sum_zero.base().ambient_rank();
        let b = deeper.sum_zero.base().ambient_rank();
        let mut inc = IntMatrix::zeros(b, a);
        for i in 0..a {
            inc[(i, i)] = BigInt::from(1);
        }
        let mat = deeper
            .coinvariants
            .torsion_map_matrix(&inc.mul(&torsion_lifts(&self.coinvariants)));
        AbHom::new(self.group.clone(), deeper.group.clone(), mat)
            .expect("prefix inclusion is a homomorphism")
    }

    /// Whether the model has no nonzero torsion coordinates at all.
    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial()
    }

    pub(crate) fn zero_locals(&self) -> Vec<GroupElement> {
        (0..self.orbits.len())
            .map(|o| self.local_group(o).zero())
            .collect()
    }
}

pub fn global_ab_group(m: &GModule, pm: &PlaceModel) -> Result<GlobalAbGroup> {
    GlobalAbGroup::new(m, pm)
}

pub(crate) fn all_zero(x: &[BigInt]) -> bool {
    x.iter().all(Zero::is_zero)
}
