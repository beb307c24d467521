//! JSON report documents. Field order is fixed by the struct definitions and
//! every list is in canonical key order, so equal inputs give equal bytes.

use serde::Serialize;
use sha2::{Digest, Sha256};
use zipcalc::equivalence::ClassReport;
use zipcalc::forest::RepForest;
use zipcalc::suite::SuiteReport;
use zipcalc::{RefinementTrace, Subgroup, ZipDatum};

use crate::config::LoadedDatum;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub schema_version: u32,
    pub command: &'static str,
    pub datum: DatumSummary,
    #[serde(flatten)]
    pub body: T,
}

#[derive(Debug, Serialize)]
pub struct DatumSummary {
    pub description: String,
    pub twist: Option<String>,
    pub source_backend: &'static str,
    pub target_backend: &'static str,
    pub e: SubgroupSummary,
    pub g: SubgroupSummary,
}

#[derive(Debug, Serialize)]
pub struct SubgroupSummary {
    pub order: usize,
    /// SHA-256 of the members' canonical text, one per line, in key order.
    pub digest: String,
}

pub fn digest(s: &Subgroup) -> SubgroupSummary {
    let g = s.ambient();
    let mut hasher = Sha256::new();
    for &m in s.members() {
        hasher.update(g.format(m).as_bytes());
        hasher.update(b"\n");
    }
    SubgroupSummary {
        order: s.order(),
        digest: hex::encode(hasher.finalize()),
    }
}

pub fn summarize(loaded: &LoadedDatum) -> DatumSummary {
    summarize_datum(&loaded.datum, &loaded.description, loaded.twist.clone())
}

pub fn summarize_datum(z: &ZipDatum, description: &str, twist: Option<String>) -> DatumSummary {
    DatumSummary {
        description: description.to_string(),
        twist,
        source_backend: z.source_group().backend().tag(),
        target_backend: z.target_group().backend().tag(),
        e: digest(z.e()),
        g: digest(z.g()),
    }
}

#[derive(Debug, Serialize)]
pub struct Stage {
    pub index: usize,
    pub e: SubgroupSummary,
    pub g: SubgroupSummary,
}

#[derive(Debug, Serialize)]
pub struct RefineBody {
    pub stationary_index: usize,
    pub stages: Vec<Stage>,
    pub e_infinity: SubgroupSummary,
    pub g_infinity: SubgroupSummary,
}

pub fn refine_body(trace: &RefinementTrace) -> RefineBody {
    RefineBody {
        stationary_index: trace.stationary_index(),
        stages: trace
            .stages()
            .iter()
            .enumerate()
            .map(|(index, z)| Stage {
                index,
                e: digest(z.e()),
                g: digest(z.g()),
            })
            .collect(),
        e_infinity: digest(trace.e_infinity()),
        g_infinity: digest(trace.g_infinity()),
    }
}

#[derive(Debug, Serialize)]
pub struct InfinityBody {
    pub stationary_index: usize,
    pub e_infinity: SubgroupSummary,
    pub g_infinity: SubgroupSummary,
    pub e_infinity_is_e: bool,
    pub g_infinity_is_g: bool,
    pub e_infinity_generators: Vec<String>,
    pub g_infinity_generators: Vec<String>,
}

pub fn infinity_body(z: &ZipDatum, trace: &RefinementTrace) -> InfinityBody {
    let text = |s: &Subgroup| -> Vec<String> {
        let mut gens: Vec<_> = s.generators().to_vec();
        gens.sort();
        gens.iter().map(|&m| s.ambient().format(m)).collect()
    };
    InfinityBody {
        stationary_index: trace.stationary_index(),
        e_infinity: digest(trace.e_infinity()),
        g_infinity: digest(trace.g_infinity()),
        e_infinity_is_e: trace.e_infinity() == z.e(),
        g_infinity_is_g: trace.g_infinity() == z.g(),
        e_infinity_generators: text(trace.e_infinity()),
        g_infinity_generators: text(trace.g_infinity()),
    }
}

#[derive(Debug, Serialize)]
pub struct ClassEntry {
    pub witness: String,
    pub size: usize,
    pub members_digest: String,
    pub e_infinity_order: usize,
    pub g_infinity_order: usize,
    pub members: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ClassesBody {
    pub relation: &'static str,
    pub class_count: usize,
    pub classes: Vec<ClassEntry>,
}

pub fn classes_body(report: &ClassReport) -> ClassesBody {
    let g = report.datum().target_group();
    ClassesBody {
        relation: report.relation().tag(),
        class_count: report.len(),
        classes: report
            .classes()
            .iter()
            .map(|c| {
                let members: Vec<String> = c.members.iter().map(|&m| g.format(m)).collect();
                let mut hasher = Sha256::new();
                for m in &members {
                    hasher.update(m.as_bytes());
                    hasher.update(b"\n");
                }
                ClassEntry {
                    witness: g.format(c.witness),
                    size: c.len(),
                    members_digest: hex::encode(hasher.finalize()),
                    e_infinity_order: c.e_infinity.order(),
                    g_infinity_order: c.g_infinity.order(),
                    members,
                }
            })
            .collect(),
    }
}

#[derive(Debug, Serialize)]
pub struct NodeEntry {
    pub id: String,
    pub element: String,
    pub parent: Option<String>,
    pub accumulated: String,
    pub stable: bool,
    pub children: usize,
}

#[derive(Debug, Serialize)]
pub struct ForestBody {
    pub stationary_generation: usize,
    pub leaf_count: usize,
    pub identity_substituted: bool,
    pub generations: Vec<Vec<NodeEntry>>,
}

pub fn forest_body(f: &RepForest) -> ForestBody {
    let g = f.datum().target_group();
    ForestBody {
        stationary_generation: f.stationary_generation(),
        leaf_count: f.leaves().len(),
        identity_substituted: f.identity_substituted(),
        generations: f
            .generations()
            .iter()
            .map(|generation| {
                generation
                    .iter()
                    .map(|&i| {
                        let n = f.node(i);
                        NodeEntry {
                            id: f.node_id(i),
                            element: g.format(n.element),
                            parent: n.parent.map(|p| f.node_id(p)),
                            accumulated: g.format(n.accumulated),
                            stable: n.stable,
                            children: n.children.len(),
                        }
                    })
                    .collect()
            })
            .collect(),
    }
}

#[derive(Debug, Serialize)]
pub struct CheckEntry {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyBody {
    pub passed: bool,
    pub fine_orbit_count: Option<usize>,
    pub zip_class_count: Option<usize>,
    pub forest_depth: Option<usize>,
    pub checks: Vec<CheckEntry>,
}

pub fn verify_body(report: &SuiteReport) -> VerifyBody {
    VerifyBody {
        passed: report.passed(),
        fine_orbit_count: report.fine_orbit_count,
        zip_class_count: report.zip_class_count,
        forest_depth: report.forest_depth,
        checks: report
            .outcomes
            .iter()
            .map(|o| CheckEntry {
                name: o.name,
                passed: o.passed,
                detail: o.detail.clone(),
            })
            .collect(),
    }
}

#[derive(Debug, Serialize)]
pub struct ZooEntryReport {
    pub name: &'static str,
    pub datum: DatumSummary,
    #[serde(flatten)]
    pub verify: VerifyBody,
}

#[derive(Debug, Serialize)]
pub struct ZooReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub passed: bool,
    pub entries: Vec<ZooEntryReport>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports serialize");
    out.push('\n');
    out
}
