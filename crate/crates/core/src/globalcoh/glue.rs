use num_bigint::BigInt;

use super::class::GlobalClass;
use super::model::{all_zero, FiberPoint, GlobalAbGroup, PlaceModel};
use crate::error::{Error, Result};
use crate::grpmod::GModule;
use crate::intlat::{hom_parts, is_injective, AbHom, FgAbGroup, GroupElement, IntMatrix};
use crate::localcoh::PlaceKind;

/// Extra reservoir levels tried before gluing gives up.
pub const GLUE_RETRY_LIMIT: usize = 2;

/// A prescribed local value: `M_{Γ_v̆,Tors}` coordinates at finite places,
/// a fiber point at real places.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalValue {
    Finite(GroupElement),
    Real(FiberPoint),
}

#[derive(Clone, Debug)]
pub enum GlueOutcome {
    Glued(GlobalClass),
    /// Nonzero `Σ_v μ_v(x_v)` in `M_{Γ,Tors}`.
    Obstruction(GroupElement),
}

/// Combined localization `group → ⊕_v M_{Γ_v̆,Tors}` over every orbit.
pub fn total_localization(gab: &GlobalAbGroup) -> AbHom {
    let mut dst = FgAbGroup::trivial();
    let mut mat = IntMatrix::zeros(0, gab.group.ambient_rank());
    for l in &gab.loc {
        dst = dst.direct_sum(&l.dst);
        mat = mat.vcat(&l.matrix);
    }
    AbHom::new(gab.group.clone(), dst, mat).expect("stacked homomorphisms")
}

impl GlobalAbGroup {
    /// Target tuple over every orbit: prescribed where given, neutral elsewhere.
    fn prescription(
        &self,
        prescribed: &[(String, LocalValue)],
    ) -> Result<(Vec<GroupElement>, Vec<FiberPoint>)> {
        let mut locals = self.zero_locals();
        let mut inf: Vec<FiberPoint> = self.fibers.iter().map(|f| f.neutral()).collect();
        for (name, value) in prescribed {
            let o = self.orbit_index(name)?;
            let kind = self.orbits[o].place.kind;
            match (kind, value) {
                (PlaceKind::Real, LocalValue::Real(p)) => {
                    let ri = self.real_index(name).expect("real orbit");
                    if !self.fibers[ri].contains(p) {
                        return Err(Error::Invalid(format!("`{name}` has no such fiber point")));
                    }
                    locals[o] = self.fibers[ri].theta(p);
                    inf[ri] = p.clone();
                }
                (PlaceKind::Finite, LocalValue::Finite(x)) => {
                    let tg = self.local_group(o);
                    if x.len() != tg.ngens() {
                        return Err(Error::Dimension(format!(
                            "local class at `{name}` needs {} coordinates",
                            tg.ngens()
                        )));
                    }
                    locals[o] = tg.reduce(x.clone());
                }
                (PlaceKind::Complex, _) => {
                    return Err(Error::PlaceKind(format!(
                        "complex place `{name}` carries only the neutral class"
                    )))
                }
                _ => {
                    return Err(Error::PlaceKind(format!(
                        "value at `{name}` does not match its kind {kind}"
                    )))
                }
            }
        }
        Ok((locals, inf))
    }

    /// One gluing attempt in this model. `Ok(None)` means the linear system has no
    /// solution here.
    pub fn glue(&self, prescribed: &[(String, LocalValue)]) -> Result<Option<GlueOutcome>> {
        let (locals, inf) = self.prescription(prescribed)?;
        let obstruction = self.mu_sum(&locals);
        if !all_zero(&obstruction) {
            return Ok(Some(GlueOutcome::Obstruction(obstruction)));
        }
        let total = total_localization(self);
        let target: GroupElement = locals
            .iter()
            .zip(&self.loc)
            .flat_map(|(x, l)| l.dst.lift(x))
            .collect();
        let target = total.dst.from_ambient(&target);
        Ok(total.preimage(&target).map(|ab| {
            let ab = self.group.reduce(ab);
            GlueOutcome::Glued(GlobalClass { ab, inf })
        }))
    }
}

/// Glues local classes into a global one, neutral at every unlisted place. The
/// reservoir is enlarged up to [`GLUE_RETRY_LIMIT`] times; the returned model is
/// the one the class lives in.
pub fn glue_local_classes(
    m: &GModule,
    pm: &PlaceModel,
    prescribed: &[(String, LocalValue)],
) -> Result<(GlobalAbGroup, GlueOutcome)> {
    for extra in 0..=GLUE_RETRY_LIMIT {
        let gab = GlobalAbGroup::new(m, &pm.with_reservoir(pm.reservoir_depth + extra))?;
        if let Some(out) = gab.glue(prescribed)? {
            return Ok((gab, out));
        }
    }
    Err(Error::ModelTooSmall(format!(
        "no global class with the prescribed localizations up to reservoir depth {}",
        pm.reservoir_depth + GLUE_RETRY_LIMIT
    )))
}

/// The kernel of localization with its stability check.
#[derive(Clone, Debug)]
pub struct ShaReport {
    pub group: FgAbGroup,
    /// Inclusion into the global group.
    pub inclusion: AbHom,
    /// The natural map to the model at depth `r + 1` is an isomorphism onto its kernel.
    pub stable: bool,
    pub depth: usize,
}

fn kernel_of(gab: &GlobalAbGroup) -> (FgAbGroup, AbHom) {
    let parts = hom_parts(&total_localization(gab));
    (parts.kernel, parts.kernel_map)
}

pub fn sha_kernel(m: &GModule, pm: &PlaceModel) -> Result<ShaReport> {
    let here = GlobalAbGroup::new(m, pm)?;
    let next = GlobalAbGroup::new(m, &pm.with_reservoir(pm.reservoir_depth + 1))?;
    let (sha, incl) = kernel_of(&here);
    let (sha_next, _) = kernel_of(&next);
    let into_next = incl.then(&here.deepen_map(&next));
    let total_next = total_localization(&next);
    let lands_in_kernel =
        (0..sha.ngens()).all(|i| all_zero(&total_next.apply(&into_next.apply(&sha.generator(i)))));
    let stable = lands_in_kernel && is_injective(&into_next) && sha.order() == sha_next.order();
    Ok(ShaReport {
        group: sha,
        inclusion: incl,
        stable,
        depth: pm.reservoir_depth,
    })
}

/// `ab` of a global class that localizes to `values` at the listed orbits.
pub fn localize_all(gab: &GlobalAbGroup, ab: &[BigInt]) -> Vec<GroupElement> {
    (0..gab.orbits.len()).map(|o| gab.localize(o, ab)).collect()
}
