//! TOML job files describing a zip datum.
//!
//! A file either names a built-in datum:
//!
//! ```toml
//! [preset]
//! kind = "witt"
//! p = 2
//! n = 2
//! ```
//!
//! or spells one out with two groups and two homomorphisms:
//!
//! ```toml
//! twist = "(1 2)"
//!
//! [groups.E]
//! backend = "permutation"
//! degree = 3
//! generators = ["(1 2)"]
//!
//! [groups.G]
//! backend = "permutation"
//! degree = 3
//! generators = ["(1 2)", "(1 2 3)"]
//!
//! [homs.tau]
//! preset = "inclusion"
//!
//! [homs.sigma]
//! generator-images = [["(1 2)", "()"]]
//! ```

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use zipcalc::catalog::{build_witt_zip, zoo_entry, WittZipConfig};
use zipcalc::{parse_matrix_entries, parse_permutation_images, Elem, FiniteGroup, Homomorphism, Subgroup, ZipDatum};

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub preset: Option<PresetSpec>,
    pub groups: Option<GroupPair>,
    pub homs: Option<HomPair>,
    pub twist: Option<String>,
    pub output: Option<OutputSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "kebab-case")]
pub enum PresetSpec {
    Witt { p: u32, n: u32 },
    Zoo { name: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupPair {
    #[serde(rename = "E")]
    pub e: GroupSpec,
    #[serde(rename = "G")]
    pub g: GroupSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct GroupSpec {
    pub backend: String,
    pub rows: Option<Vec<Vec<u32>>>,
    pub degree: Option<usize>,
    pub dim: Option<usize>,
    pub modulus: Option<u32>,
    pub family: Option<String>,
    pub generators: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomPair {
    pub tau: HomSpec,
    pub sigma: HomSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct HomSpec {
    pub preset: Option<String>,
    pub table: Option<Vec<(String, String)>>,
    pub generator_images: Option<Vec<(String, String)>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub command: Option<String>,
    pub dir: Option<PathBuf>,
}

/// A datum ready for computation, with where it came from.
#[derive(Debug, Clone)]
pub struct LoadedDatum {
    pub datum: ZipDatum,
    /// Canonical text of the applied twist, if any.
    pub twist: Option<String>,
    pub description: String,
}

pub fn read_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::config(path, "", e.to_string()))?;
    toml::from_str(&text).map_err(|e| CliError::config(path, "", e.message().to_string()))
}

/// Builds the datum described by `config`, refusing carriers larger than
/// `max_order`, then applies `twist` (overriding the file's twist).
pub fn load_datum(
    path: &Path,
    config: &ConfigFile,
    twist: Option<&str>,
    max_order: usize,
) -> Result<LoadedDatum, CliError> {
    let at = |key: &str, e: zipcalc::Error| CliError::from_core(path, key, e);
    let (datum, description) = match (&config.preset, &config.groups, &config.homs) {
        (Some(preset), None, None) => build_preset(path, preset, max_order)?,
        (None, Some(groups), Some(homs)) => {
            let e_group = Arc::new(build_group(path, "groups.E", &groups.e, max_order)?);
            let g_group = Arc::new(build_group(path, "groups.G", &groups.g, max_order)?);
            let (e, g) = (Subgroup::full(&e_group), Subgroup::full(&g_group));
            let tau = build_hom(path, "homs.tau", &homs.tau, &e, &g)?;
            let sigma = build_hom(path, "homs.sigma", &homs.sigma, &e, &g)?;
            let datum = ZipDatum::new(tau, sigma).map_err(|e| at("homs", e))?;
            (datum, "custom".to_string())
        }
        _ => {
            return Err(CliError::config(
                path,
                "",
                "give either a [preset] table or [groups] with [homs], not both",
            ))
        }
    };
    let largest = datum.source_group().order().max(datum.target_group().order());
    if largest > max_order {
        return Err(CliError::ResourceLimit(format!(
            "{}: a group of order {largest} is above the limit {max_order}",
            path.display()
        )));
    }
    let twist_text = twist.map(str::to_string).or_else(|| config.twist.clone());
    let Some(text) = twist_text else {
        return Ok(LoadedDatum {
            datum,
            twist: None,
            description,
        });
    };
    let key = if twist.is_some() { "--twist" } else { "twist" };
    let g = datum.target_group().clone();
    let x = g.parse(&text).map_err(|e| at(key, e))?;
    let twisted = datum.twist(x).map_err(|e| at(key, e))?;
    Ok(LoadedDatum {
        datum: twisted,
        twist: Some(g.format(x)),
        description,
    })
}

fn build_preset(path: &Path, preset: &PresetSpec, max_order: usize) -> Result<(ZipDatum, String), CliError> {
    match preset {
        PresetSpec::Witt { p, n } => {
            let config = WittZipConfig::new(*p, *n).map_err(|e| CliError::from_core(path, "preset", e))?;
            let largest = config.e_order().max(config.g_order());
            if largest > max_order {
                return Err(CliError::ResourceLimit(format!(
                    "{}: the Witt datum for p = {p}, n = {n} has a group of order {largest}, above the limit {max_order}",
                    path.display()
                )));
            }
            let (datum, _) = build_witt_zip(&config).map_err(|e| CliError::from_core(path, "preset", e))?;
            Ok((datum, format!("witt p={p} n={n}")))
        }
        PresetSpec::Zoo { name } => {
            let datum = zoo_entry(name).map_err(|e| CliError::from_core(path, "preset.name", e))?;
            Ok((datum, format!("zoo {name}")))
        }
    }
}

fn build_group(path: &Path, key: &str, spec: &GroupSpec, max_order: usize) -> Result<FiniteGroup, CliError> {
    let need = |field: &str| CliError::config(path, &format!("{key}.{field}"), "missing for this backend");
    let wrap = |field: &str, e: zipcalc::Error| CliError::from_core(path, &format!("{key}.{field}"), e);
    match spec.backend.as_str() {
        "cayley-table" => {
            let rows = spec.rows.clone().ok_or_else(|| need("rows"))?;
            if rows.len() > max_order {
                return Err(CliError::ResourceLimit(format!(
                    "{}: {key} has order {}, above the limit {max_order}",
                    path.display(),
                    rows.len()
                )));
            }
            FiniteGroup::from_cayley_table(rows).map_err(|e| wrap("rows", e))
        }
        "permutation" => {
            let degree = spec.degree.ok_or_else(|| need("degree"))?;
            let gens = spec.generators.as_deref().ok_or_else(|| need("generators"))?;
            let images = gens
                .iter()
                .enumerate()
                .map(|(i, t)| parse_permutation_images(t, degree).map_err(|e| wrap(&format!("generators[{i}]"), e)))
                .collect::<Result<Vec<_>, _>>()?;
            FiniteGroup::from_permutations_within(degree, &images, max_order).map_err(|e| wrap("generators", e))
        }
        "matrix-mod-m" => {
            let dim = spec.dim.ok_or_else(|| need("dim"))?;
            let modulus = spec.modulus.ok_or_else(|| need("modulus"))?;
            match (spec.family.as_deref(), spec.generators.as_deref()) {
                (Some("gl"), None) => {
                    FiniteGroup::general_linear_within(dim, modulus, max_order).map_err(|e| wrap("family", e))
                }
                (None, Some(gens)) => {
                    let entries = gens
                        .iter()
                        .enumerate()
                        .map(|(i, t)| {
                            parse_matrix_entries(t, dim, modulus).map_err(|e| wrap(&format!("generators[{i}]"), e))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    FiniteGroup::from_matrices_within(dim, modulus, &entries, max_order)
                        .map_err(|e| wrap("generators", e))
                }
                (Some(other), None) => Err(CliError::config(
                    path,
                    &format!("{key}.family"),
                    format!("unknown family `{other}`, expected `gl`"),
                )),
                _ => Err(CliError::config(
                    path,
                    key,
                    "give exactly one of `family` and `generators`",
                )),
            }
        }
        other => Err(CliError::config(
            path,
            &format!("{key}.backend"),
            format!("unknown backend `{other}`, expected cayley-table, permutation or matrix-mod-m"),
        )),
    }
}

fn build_hom(path: &Path, key: &str, spec: &HomSpec, e: &Subgroup, g: &Subgroup) -> Result<Homomorphism, CliError> {
    let wrap = |field: &str, err: zipcalc::Error| CliError::from_core(path, &format!("{key}.{field}"), err);
    let parse_pairs = |field: &str, pairs: &[(String, String)]| -> Result<Vec<(Elem, Elem)>, CliError> {
        pairs
            .iter()
            .enumerate()
            .map(|(i, (a, b))| {
                let here = format!("{field}[{i}]");
                Ok((
                    e.ambient().parse(a).map_err(|err| wrap(&here, err))?,
                    g.ambient().parse(b).map_err(|err| wrap(&here, err))?,
                ))
            })
            .collect()
    };
    match (&spec.preset, &spec.table, &spec.generator_images) {
        (Some(name), None, None) => preset_hom(name, e, g).map_err(|err| wrap("preset", err)),
        (None, Some(table), None) => {
            let pairs = parse_pairs("table", table)?;
            Homomorphism::from_pairs(e, g, &pairs).map_err(|err| wrap("table", err))
        }
        (None, None, Some(images)) => {
            let pairs = parse_pairs("generator-images", images)?;
            Homomorphism::from_generator_images(e, g, &pairs).map_err(|err| wrap("generator-images", err))
        }
        _ => Err(CliError::config(
            path,
            key,
            "give exactly one of `preset`, `table` and `generator-images`",
        )),
    }
}

/// Named homomorphisms between the two configured groups. `identity` and
/// `inclusion` match elements by their canonical keys.
fn preset_hom(name: &str, e: &Subgroup, g: &Subgroup) -> zipcalc::Result<Homomorphism> {
    let (eg, gg) = (e.ambient().clone(), g.ambient().clone());
    let image = |m: Elem, key: &[u32]| {
        gg.element_from_key(key)
            .ok_or_else(|| zipcalc::Error::Mismatch(format!("the image of {} is not in G", eg.format(m))))
    };
    let pairs = match name {
        "trivial" => return Ok(Homomorphism::trivial(e, g)),
        "identity" | "inclusion" => {
            if name == "identity" && e.order() != g.order() {
                return Err(zipcalc::Error::Mismatch(
                    "identity needs E and G to be the same group".into(),
                ));
            }
            e.members()
                .iter()
                .map(|&m| Ok((m, image(m, eg.key(m))?)))
                .collect::<zipcalc::Result<Vec<_>>>()?
        }
        "witt-tau" | "witt-sigma" => {
            let (em, gm) = match (eg.backend(), gg.backend()) {
                (
                    zipcalc::Backend::Matrix { dim: 2, modulus: em },
                    zipcalc::Backend::Matrix { dim: 2, modulus: gm },
                ) if em % gm == 0 && em > gm => (*em, *gm),
                _ => {
                    return Err(zipcalc::Error::Mismatch(
                        "Witt presets need 2×2 matrix groups over ℤ/pⁿ and ℤ/pⁿ⁻¹".into(),
                    ))
                }
            };
            let p = em / gm;
            let sigma = name == "witt-sigma";
            e.members()
                .iter()
                .map(|&m| {
                    let k = eg.key(m);
                    let entries = if sigma {
                        if k[2] % p != 0 {
                            return Err(zipcalc::Error::Precondition(format!(
                                "witt-sigma needs lower-left entries divisible by {p}; {} is not",
                                eg.format(m)
                            )));
                        }
                        [k[0], p * k[1], k[2] / p, k[3]]
                    } else {
                        [k[0], k[1], k[2], k[3]]
                    };
                    let reduced: Vec<u32> = entries.iter().map(|v| v % gm).collect();
                    Ok((m, image(m, &reduced)?))
                })
                .collect::<zipcalc::Result<Vec<_>>>()?
        }
        other => {
            return Err(zipcalc::Error::InvalidConfig(format!(
                "unknown preset `{other}`, expected identity, trivial, inclusion, witt-tau or witt-sigma"
            )))
        }
    };
    Homomorphism::from_pairs(e, g, &pairs)
}
