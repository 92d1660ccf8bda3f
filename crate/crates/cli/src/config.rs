//! JSON model files. Every integer is a decimal string; plain JSON integers are
//! accepted on input.

use std::fmt;

use galcoh::globalcoh::{GlobalAbGroup, PlaceModel, DEFAULT_MAX_ORBITS};
use galcoh::grpmod::DEFAULT_MAX_ORDER;
use galcoh::{
    FgAbGroup, FinGroup, GModule, GroupElement, IntMatrix, PlaceKind, PlaceSpec, Subgroup,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

pub const MAX_ORBITS_ENV: &str = "GALCOH_MAX_ORBITS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.trim()
                    .parse()
                    .map(Int)
                    .map_err(|_| E::custom(format!("`{v}` is not a decimal integer")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
        }
        d.deserialize_any(V)
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        Int(v.into())
    }
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        Int(v.clone())
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Int>,
    /// Multiplication table; element 0 is the identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<Int>>>,
    /// Permutations of `0..degree`; these are then the generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<Int>>>,
    /// Element indices the module action is given on (table form only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Int>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ModuleConfig {
    pub rank: Int,
    /// Relation columns in the ambient lattice.
    #[serde(default)]
    pub relations: Vec<Vec<Int>>,
    /// One matrix per group generator, as rows.
    #[serde(default)]
    pub action: Vec<Vec<Vec<Int>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PlaceConfig {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<Int>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_size: Option<Int>,
    /// Abstract fiber at a real place: the image of each point, base point first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber: Option<Vec<Vec<Int>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub group: GroupConfig,
    pub module: ModuleConfig,
    #[serde(default)]
    pub places: Vec<PlaceConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reservoir: Option<Int>,
}

/// A loaded model.
#[derive(Clone, Debug)]
pub struct Model {
    pub module: GModule,
    pub places: PlaceModel,
    /// Abstract real fibers as `(place, images)`.
    pub fibers: Vec<(String, Vec<GroupElement>)>,
}

fn bad(at: &str, msg: impl fmt::Display) -> CliError {
    CliError::Input(format!("{at}: {msg}"))
}

fn small(at: &str, x: &Int) -> Result<usize, CliError> {
    x.0.to_usize()
        .ok_or_else(|| bad(at, format!("{} is not a valid index or size", x.0)))
}

fn smalls(at: &str, xs: &[Int]) -> Result<Vec<usize>, CliError> {
    xs.iter()
        .enumerate()
        .map(|(i, x)| small(&format!("{at}[{i}]"), x))
        .collect()
}

fn bigs(xs: &[Int]) -> Vec<BigInt> {
    xs.iter().map(|x| x.0.clone()).collect()
}

impl ModelConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("config: {e}")))
    }

    fn build_group(&self) -> Result<(FinGroup, Vec<usize>), CliError> {
        let gc = &self.group;
        match (&gc.table, &gc.permutations) {
            (Some(rows), None) => {
                let rows: Vec<Vec<usize>> = rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| smalls(&format!("group.table[{i}]"), r))
                    .collect::<Result<_, _>>()?;
                if rows.len() > DEFAULT_MAX_ORDER {
                    return Err(bad(
                        "group.table",
                        galcoh::Error::SizeBound {
                            order: rows.len(),
                            bound: DEFAULT_MAX_ORDER,
                        },
                    ));
                }
                let g = FinGroup::from_table(&rows).map_err(|e| bad("group.table", e))?;
                if let Some(o) = &gc.order {
                    if small("group.order", o)? != g.order() {
                        return Err(bad("group.order", format!("table has {} rows", g.order())));
                    }
                }
                let gens = match &gc.generators {
                    Some(v) => smalls("group.generators", v)?,
                    None => g.generators(),
                };
                if let Some(&x) = gens.iter().find(|&&x| x >= g.order()) {
                    return Err(bad("group.generators", format!("no element {x}")));
                }
                Ok((g, gens))
            }
            (None, Some(perms)) => {
                if gc.generators.is_some() {
                    return Err(bad("group.generators", "not used with permutations"));
                }
                let perms: Vec<Vec<usize>> = perms
                    .iter()
                    .enumerate()
                    .map(|(i, p)| smalls(&format!("group.permutations[{i}]"), p))
                    .collect::<Result<_, _>>()?;
                let (g, gens) = FinGroup::from_permutations(&perms, DEFAULT_MAX_ORDER)
                    .map_err(|e| bad("group.permutations", e))?;
                if let Some(o) = &gc.order {
                    if small("group.order", o)? != g.order() {
                        return Err(bad(
                            "group.order",
                            format!("generated group has order {}", g.order()),
                        ));
                    }
                }
                Ok((g, gens))
            }
            (None, None) if gc.order.as_ref().is_some_and(|o| o.0 == BigInt::from(1)) => {
                Ok((FinGroup::trivial(), vec![]))
            }
            _ => Err(bad(
                "group",
                "give exactly one of `table` or `permutations`",
            )),
        }
    }

    fn build_module(&self, g: FinGroup, gens: &[usize]) -> Result<GModule, CliError> {
        let mc = &self.module;
        let n = small("module.rank", &mc.rank)?;
        let mut cols = Vec::new();
        for (j, c) in mc.relations.iter().enumerate() {
            if c.len() != n {
                return Err(bad(
                    &format!("module.relations[{j}]"),
                    format!("needs {n} entries"),
                ));
            }
            cols.push(bigs(c));
        }
        let base = FgAbGroup::from_presentation(n, IntMatrix::from_columns(n, &cols));
        if mc.action.len() != gens.len() {
            return Err(bad(
                "module.action",
                format!("{} matrices for {} generators", mc.action.len(), gens.len()),
            ));
        }
        let mut acts = Vec::new();
        for (k, (m, &g_k)) in mc.action.iter().zip(gens).enumerate() {
            let at = format!("module.action[{k}]");
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(bad(&at, format!("needs a {n}x{n} matrix")));
            }
            let rows: Vec<Vec<BigInt>> = m.iter().map(|r| bigs(r)).collect();
            acts.push((g_k, IntMatrix::from_rows(&rows)));
        }
        GModule::from_generators(g, base, &acts).map_err(|e| bad("module.action", e))
    }

    fn build_places(
        &self,
        g: &FinGroup,
    ) -> Result<(Vec<PlaceSpec>, Vec<(String, Vec<GroupElement>)>), CliError> {
        let mut out = Vec::new();
        let mut fibers = Vec::new();
        for (k, p) in self.places.iter().enumerate() {
            let at = format!("places[{k}]");
            let residue = p
                .residue_size
                .as_ref()
                .map(|q| {
                    q.0.to_u64()
                        .ok_or_else(|| bad(&format!("{at}.residue_size"), "out of range"))
                })
                .transpose()?;
            let spec = match p.kind.as_str() {
                "finite" => {
                    let members = match &p.decomposition {
                        Some(d) => smalls(&format!("{at}.decomposition"), d)?,
                        None => vec![0],
                    };
                    let d = Subgroup::from_members(g, &members)
                        .map_err(|e| bad(&format!("{at}.decomposition"), e))?;
                    PlaceSpec::finite(&p.name, d, residue)
                }
                "real" => {
                    let s = p
                        .sigma
                        .as_ref()
                        .ok_or_else(|| bad(&at, "real place needs `sigma`"))?;
                    let s = small(&format!("{at}.sigma"), s)?;
                    if s >= g.order() {
                        return Err(bad(&format!("{at}.sigma"), format!("no element {s}")));
                    }
                    let spec = PlaceSpec::real(g, &p.name, s);
                    if let Some(d) = &p.decomposition {
                        let mut given = smalls(&format!("{at}.decomposition"), d)?;
                        given.sort_unstable();
                        given.dedup();
                        if given != spec.decomposition.members() {
                            return Err(bad(&format!("{at}.decomposition"), "must be {1, sigma}"));
                        }
                    }
                    spec
                }
                "complex" => PlaceSpec::complex(&p.name),
                other => {
                    return Err(bad(
                        &format!("{at}.kind"),
                        format!("unknown kind `{other}`"),
                    ))
                }
            };
            spec.validate(g).map_err(|e| bad(&at, e))?;
            if let Some(f) = &p.fiber {
                if spec.kind != PlaceKind::Real {
                    return Err(bad(
                        &format!("{at}.fiber"),
                        "only real places carry a fiber",
                    ));
                }
                fibers.push((p.name.clone(), f.iter().map(|v| bigs(v)).collect()));
            }
            out.push(spec);
        }
        Ok((out, fibers))
    }

    /// Builds the model; `reservoir` overrides the file and the orbit limit
    /// honours [`MAX_ORBITS_ENV`].
    pub fn build(&self, reservoir: Option<usize>) -> Result<Model, CliError> {
        let (g, gens) = self.build_group()?;
        let (places, fibers) = self.build_places(&g)?;
        let module = self.build_module(g, &gens)?;
        let depth = match (reservoir, &self.reservoir) {
            (Some(r), _) => r,
            (None, Some(r)) => small("reservoir", r)?,
            (None, None) => 1,
        };
        let mut pm = PlaceModel::new(places, depth);
        pm.max_orbits = max_orbits()?;
        Ok(Model {
            module,
            places: pm,
            fibers,
        })
    }

    pub fn from_model(m: &Model) -> Self {
        let g = m.module.group();
        let gens = g.generators();
        let base = m.module.base();
        let group = GroupConfig {
            order: Some(g.order().into()),
            table: Some(
                g.table_rows()
                    .iter()
                    .map(|r| r.iter().map(|&x| x.into()).collect())
                    .collect(),
            ),
            permutations: None,
            generators: Some(gens.iter().map(|&x| x.into()).collect()),
        };
        let module = ModuleConfig {
            rank: base.ambient_rank().into(),
            relations: base
                .relations()
                .columns()
                .iter()
                .map(|c| c.iter().map(Int::from).collect())
                .collect(),
            action: gens
                .iter()
                .map(|&x| {
                    m.module
                        .action(x)
                        .to_rows()
                        .iter()
                        .map(|r| r.iter().map(Int::from).collect())
                        .collect()
                })
                .collect(),
        };
        let places = m
            .places
            .named_places
            .iter()
            .map(|p| PlaceConfig {
                name: p.name.clone(),
                kind: p.kind.to_string(),
                decomposition: (p.kind == PlaceKind::Finite).then(|| {
                    p.decomposition
                        .members()
                        .iter()
                        .map(|&x| x.into())
                        .collect()
                }),
                sigma: p.sigma.map(Int::from),
                residue_size: p.residue_size.map(|q| Int(q.into())),
                fiber: m.fibers.iter().find(|(n, _)| n == &p.name).map(|(_, f)| {
                    f.iter()
                        .map(|v| v.iter().map(Int::from).collect())
                        .collect()
                }),
            })
            .collect();
        ModelConfig {
            group,
            module,
            places,
            reservoir: Some(m.places.reservoir_depth.into()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

pub fn max_orbits() -> Result<usize, CliError> {
    match std::env::var(MAX_ORBITS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{MAX_ORBITS_ENV}: `{v}` is not a count"))),
        Err(_) => Ok(DEFAULT_MAX_ORBITS),
    }
}

impl Model {
    pub fn global(&self) -> Result<GlobalAbGroup, CliError> {
        let mut gab = GlobalAbGroup::new(&self.module, &self.places)?;
        for (name, images) in &self.fibers {
            gab.set_abstract_fiber(name, images.clone())
                .map_err(|e| bad(&format!("fiber of `{name}`"), e))?;
        }
        Ok(gab)
    }

    pub fn place(&self, name: &str) -> Result<&PlaceSpec, CliError> {
        self.places
            .place(name)
            .ok_or_else(|| CliError::Input(format!("unknown place `{name}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZI: &str = r#"{
        "group": {"order": "4", "permutations": [["1","2","3","0"]]},
        "module": {"rank": "2", "action": [[["0","-1"],["1","0"]]]},
        "places": [
            {"name": "v", "kind": "finite", "decomposition": ["0","1","2","3"], "residue_size": "5"},
            {"name": "r", "kind": "real", "sigma": "2"}
        ],
        "reservoir": "0"
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let m = ModelConfig::parse(ZI).unwrap().build(None).unwrap();
        assert_eq!(m.module.group().order(), 4);
        assert_eq!(m.places.named_places.len(), 2);
        let again = ModelConfig::parse(&ModelConfig::from_model(&m).to_json())
            .unwrap()
            .build(None)
            .unwrap();
        assert_eq!(again.module.group().order(), 4);
        assert_eq!(again.places.named_places, m.places.named_places);
        let a = m.global().unwrap();
        let b = again.global().unwrap();
        assert!(a.group.same_invariants(&b.group));
    }

    #[test]
    fn errors_carry_locations() {
        let e = ModelConfig::parse("{\"group\": 3}").unwrap_err();
        assert!(e.to_string().contains("line 1"), "{e}");
        let bad_place = ZI.replace("\"sigma\": \"2\"", "\"sigma\": \"1\"");
        let e = ModelConfig::parse(&bad_place)
            .unwrap()
            .build(None)
            .unwrap_err();
        assert!(e.to_string().starts_with("places[1]"), "{e}");
        let bad_rel = ZI.replace(
            "\"rank\": \"2\",",
            "\"rank\": \"2\", \"relations\": [[\"1\"]],",
        );
        let e = ModelConfig::parse(&bad_rel)
            .unwrap()
            .build(None)
            .unwrap_err();
        assert!(e.to_string().starts_with("module.relations[0]"), "{e}");
    }

    #[test]
    fn integers_may_be_plain() {
        let plain = r#"{"group": {"order": 1}, "module": {"rank": 1, "relations": [[12345678901234567890123]]}}"#;
        assert!(ModelConfig::parse(plain).is_err());
        let plain = r#"{"group": {"order": 1}, "module": {"rank": 1, "relations": [[6]]}}"#;
        let m = ModelConfig::parse(plain).unwrap().build(Some(0)).unwrap();
        assert_eq!(m.module.base().describe(), "Z/6");
    }
}
