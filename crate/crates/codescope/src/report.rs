//! JSON reports. Field names are stable; see the schema files in `schemas/`.

use serde::Serialize;

use codescope_core::analysis::{Analysis, Flag};
use codescope_core::classify::ClassificationReport;
use codescope_core::coset::{coset_leader, CosetTable, SyndromeSpace};
use codescope_core::{Field, LinearCode};

use crate::format::write_code;

#[derive(Clone, Debug, Serialize)]
pub struct FieldJson {
    pub p: u32,
    pub r: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
}

impl FieldJson {
    pub fn new(f: &Field) -> Self {
        FieldJson { p: f.p(), r: f.degree(), q: f.q(), modulus: f.modulus().to_vec() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeJson {
    pub field: FieldJson,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<u32>>,
    /// The code in the text interchange format.
    pub text: String,
}

impl CodeJson {
    pub fn new(code: &LinearCode) -> Self {
        let generator = (0..code.k()).map(|i| code.generator().row(i).iter().map(|e| e.code()).collect()).collect();
        CodeJson {
            field: FieldJson::new(code.field()),
            n: code.n(),
            k: code.k(),
            generator,
            text: write_code(code, None),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FlagJson {
    pub value: Option<bool>,
    pub provenance: &'static str,
}

impl From<Flag> for FlagJson {
    fn from(f: Flag) -> Self {
        FlagJson { value: f.value, provenance: f.provenance.name() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagsJson {
    pub is_mds: FlagJson,
    pub is_griesmer: FlagJson,
    pub is_perfect: FlagJson,
    pub is_quasi_perfect: FlagJson,
    pub is_self_dual: FlagJson,
    pub is_cr: FlagJson,
    pub is_upws: FlagJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct LeaderWeightJson {
    pub weight: usize,
    pub cosets: u64,
    pub distinct_distributions: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistributionJson {
    pub distribution: Vec<u32>,
    pub multiplicity: u64,
    /// Smallest syndrome with this distribution, digits `σ_0 σ_1 ...`.
    pub example_syndrome: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetGroupJson {
    pub weight: usize,
    pub classes: Vec<DistributionJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetSummaryJson {
    pub engine: &'static str,
    pub cosets: u64,
    pub complete: bool,
    pub leader_weights: Vec<LeaderWeightJson>,
    pub distinct_distributions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<CosetGroupJson>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetWitnessJson {
    pub syndrome: Vec<u32>,
    pub leader: Vec<u32>,
    pub distribution: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessesJson {
    /// Two cosets with equal minimum weight and different distributions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_cr: Option<[CosetWitnessJson; 2]>,
    /// Covering radius and external distance when they differ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_upws: Option<RhoS>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RhoS {
    pub rho: usize,
    pub s: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ImplicationJson {
    pub id: &'static str,
    pub statement: &'static str,
    pub premise: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub code: CodeJson,
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub d: usize,
    pub e: usize,
    pub rho: usize,
    pub s: usize,
    pub s_prime: usize,
    pub flags: FlagsJson,
    pub weight_distribution: Vec<u64>,
    pub dual_weight_distribution: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub packing_coefficients: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coset_summary: Option<CosetSummaryJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coset_table_skipped: Option<String>,
    pub witnesses: WitnessesJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub implications: Option<Vec<ImplicationJson>>,
}

pub fn syndrome_digits(field: &Field, r: usize, s: u64) -> Vec<u32> {
    SyndromeSpace::new(field, r).unpack(s).iter().map(|e| e.code()).collect()
}

pub fn coset_witness(code: &LinearCode, table: &CosetTable, s: u64) -> CosetWitnessJson {
    CosetWitnessJson {
        syndrome: syndrome_digits(code.field(), code.n() - code.k(), s),
        leader: coset_leader(code, s).iter().map(|e| e.code()).collect(),
        distribution: table.distribution(s).to_vec(),
    }
}

pub fn coset_summary(code: &LinearCode, table: &CosetTable, complete: bool, full: bool) -> CosetSummaryJson {
    let groups = table.groups();
    let r = code.n() - code.k();
    CosetSummaryJson {
        engine: table.engine().name(),
        cosets: table.num_cosets(),
        complete,
        leader_weights: groups
            .iter()
            .map(|g| LeaderWeightJson { weight: g.weight, cosets: g.cosets(), distinct_distributions: g.classes.len() })
            .collect(),
        distinct_distributions: groups.iter().map(|g| g.classes.len()).sum(),
        groups: full.then(|| {
            groups
                .iter()
                .map(|g| CosetGroupJson {
                    weight: g.weight,
                    classes: g
                        .classes
                        .iter()
                        .map(|c| DistributionJson {
                            distribution: c.distribution.clone(),
                            multiplicity: c.multiplicity,
                            example_syndrome: syndrome_digits(code.field(), r, c.example),
                        })
                        .collect(),
                })
                .collect()
        }),
    }
}

impl AnalyzeReport {
    pub fn new(code: &LinearCode, a: &Analysis, full_table: bool) -> Self {
        let p = &a.profile;
        let witnesses = WitnessesJson {
            not_cr: match (&a.table, &a.cr) {
                (Some(t), Some(cr)) => cr.witness.map(|(x, y)| [coset_witness(code, t, x), coset_witness(code, t, y)]),
                _ => None,
            },
            not_upws: (p.rho != p.s).then_some(RhoS { rho: p.rho, s: p.s }),
        };
        AnalyzeReport {
            code: CodeJson::new(code),
            n: p.n,
            k: p.k,
            q: p.q,
            d: p.d,
            e: p.e,
            rho: p.rho,
            s: p.s,
            s_prime: p.s_prime,
            flags: FlagsJson {
                is_mds: p.is_mds.into(),
                is_griesmer: p.is_griesmer.into(),
                is_perfect: p.is_perfect.into(),
                is_quasi_perfect: p.is_quasi_perfect.into(),
                is_self_dual: p.is_self_dual.into(),
                is_cr: p.is_cr.into(),
                is_upws: p.is_upws.into(),
            },
            weight_distribution: a.spectra.primal.counts().to_vec(),
            dual_weight_distribution: a.spectra.dual.counts().to_vec(),
            packing_coefficients: a.upws.beta.as_ref().map(|b| b.as_fractions()),
            coset_summary: a.table.as_ref().map(|t| {
                let complete = a.cr.as_ref().is_none_or(|c| c.exhaustive);
                coset_summary(code, t, complete, full_table)
            }),
            coset_table_skipped: a.table_error.as_ref().map(|e| e.to_string()),
            witnesses,
            implications: a.implications.as_ref().map(|v| {
                v.iter()
                    .map(|i| ImplicationJson { id: i.id, statement: i.statement, premise: i.premise, holds: i.holds })
                    .collect()
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassJson {
    pub representative: CodeJson,
    pub members: usize,
    pub orbit_size: usize,
    pub self_dual_member: bool,
    pub profile: AnalyzeReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub equivalence: &'static str,
    pub systematic_codes: usize,
    pub class_count: usize,
    pub classes: Vec<ClassJson>,
}

impl ClassifyReport {
    pub fn new(r: &ClassificationReport) -> Self {
        ClassifyReport {
            q: r.q,
            n: r.n,
            k: r.k,
            equivalence: r.equivalence.name(),
            systematic_codes: r.total_codes,
            class_count: r.classes.len(),
            classes: r
                .classes
                .iter()
                .map(|c| ClassJson {
                    representative: CodeJson::new(&c.representative),
                    members: c.members,
                    orbit_size: c.orbit_size,
                    self_dual_member: c.self_dual_member,
                    profile: AnalyzeReport::new(&c.representative, &c.analysis, false),
                })
                .collect(),
        }
    }
}
