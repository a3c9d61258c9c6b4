//! Serializable report documents. Field order is fixed by declaration order,
//! so serialization is deterministic.

use std::collections::BTreeMap;

use serde::Serialize;

use jacquet_core::cohom::StabilizationCertificate;
use jacquet_core::extbound::{DecidedRelation, Provenance};
use jacquet_core::{
    render_rational, BggCheck, CertificationPolicy, CohomologyResult, DegreeReport, ExtCase,
    ExtensionFlag, HeckeEigenvalue, JacquetReport, SmoothCharacter, TorusCharacter,
};

use crate::config::{render_character_spec, JobConfig};

pub const TOOL_NAME: &str = "jacquet";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: ConfigEcho,
    pub result: ResultPayload,
    pub certificate: Option<CertificateDoc>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Whether every check in the payload passed.
    pub fn passed(&self) -> bool {
        match &self.result {
            ResultPayload::BggCheck(b) => b.pass,
            ResultPayload::Kostant(k) => k.pass,
            ResultPayload::LesCheck(l) => l.pass,
            _ => true,
        }
    }
}

/// Report for a job that failed, used by the corpus so that expected
/// failures are pinned too.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ErrorDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub error: ErrorDoc,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ErrorDoc {
    pub exit_code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl ErrorDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ConfigEcho {
    pub command: String,
    pub family: Option<String>,
    pub k: i64,
    pub ell: Option<i64>,
    pub direction: Option<String>,
    pub psi: String,
    pub phi: Option<String>,
    pub relations: Vec<String>,
    pub truncation: Option<usize>,
    pub policy: &'static str,
    pub p: Option<u64>,
}

impl ConfigEcho {
    pub fn new(cfg: &JobConfig, truncation: Option<usize>) -> Self {
        let mut relations: Vec<String> = cfg.relations.iter().map(|r| r.slug()).collect();
        relations.sort();
        relations.dedup();
        ConfigEcho {
            command: cfg.command.name().to_string(),
            family: cfg.family.map(|f| f.name().to_string()),
            k: cfg.k.unwrap_or_default(),
            ell: cfg.ell,
            direction: cfg.direction.map(|d| d.name().to_string()),
            psi: render_character_spec(&cfg.psi),
            phi: cfg.phi.as_ref().map(render_character_spec),
            relations,
            truncation,
            policy: match cfg.policy {
                CertificationPolicy::Certified => "certified",
                CertificationPolicy::WindowOnly => "window-only",
            },
            p: cfg.concrete_p,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)]
pub enum ResultPayload {
    Jacquet(JacquetDoc),
    Cohomology(CohomologyDoc),
    BggCheck(BggDoc),
    Kostant(KostantDoc),
    ExtBound(ExtDoc),
    LesCheck(LesDoc),
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct EigenvalueDoc {
    pub p_exp: i64,
    pub unit: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl EigenvalueDoc {
    pub fn new(e: &HeckeEigenvalue, p: Option<u64>) -> Self {
        EigenvalueDoc {
            p_exp: e.p_exp,
            unit: render_rational(&e.unit),
            value: p.map(|p| render_rational(&e.evaluate(p))),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CharacterDoc {
    pub weight: i64,
    pub psi_exp: i64,
    pub psiw_exp: i64,
    pub delta_exp: i64,
    pub text: String,
    pub eigenvalue: EigenvalueDoc,
}

/// Renders characters relative to one smooth character, named as in the
/// report (`psi` for the source, `phi` for an ext-bound target).
#[derive(Debug, Clone, Copy)]
pub struct CharContext<'a> {
    pub smooth: &'a SmoothCharacter,
    pub name: &'a str,
    pub p: Option<u64>,
}

impl CharContext<'_> {
    pub fn doc(&self, c: &TorusCharacter) -> CharacterDoc {
        CharacterDoc {
            weight: c.weight,
            psi_exp: c.psi_exp,
            psiw_exp: c.psiw_exp,
            delta_exp: c.delta_exp,
            text: c.display_with(self.name),
            eigenvalue: EigenvalueDoc::new(
                &jacquet_core::jacquet::hecke_eigenvalue(c, self.smooth),
                self.p,
            ),
        }
    }

    pub fn docs(&self, cs: &[TorusCharacter]) -> Vec<CharacterDoc> {
        cs.iter().map(|c| self.doc(c)).collect()
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
#[serde(tag = "kind")]
pub enum ExtensionDoc {
    Zero,
    DirectSumDetermined,
    ExtClassUndetermined {
        sub: Vec<CharacterDoc>,
        quot: Vec<CharacterDoc>,
    },
    ConnectingUndetermined {
        section: Vec<CharacterDoc>,
        stalk: Vec<CharacterDoc>,
    },
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DegreeDoc {
    pub degree: usize,
    pub jh_factors: Vec<CharacterDoc>,
    pub extension: ExtensionDoc,
    pub finite_slope_complete: bool,
    pub section: Vec<CharacterDoc>,
    pub stalk: Vec<CharacterDoc>,
    pub text: String,
}

fn join(cx: &CharContext, cs: &[TorusCharacter]) -> String {
    cs.iter()
        .map(|c| c.display_with(cx.name))
        .collect::<Vec<_>>()
        .join(" (+) ")
}

/// One-line summary mirroring how the tables are written by hand.
pub fn degree_text(d: &DegreeReport, cx: &CharContext) -> String {
    match &d.extension {
        ExtensionFlag::Zero => "0".into(),
        ExtensionFlag::DirectSumDetermined => join(cx, &d.jh_factors),
        ExtensionFlag::ExtClassUndetermined { sub, quot } => {
            format!("a class in Ext^1({}, {})", join(cx, quot), join(cx, sub))
        }
        ExtensionFlag::ConnectingUndetermined { section, stalk } => format!(
            "undetermined connecting map; section [{}], stalk [{}]",
            join(cx, section),
            join(cx, stalk)
        ),
    }
}

impl DegreeDoc {
    pub fn new(d: &DegreeReport, cx: &CharContext) -> Self {
        let extension = match &d.extension {
            ExtensionFlag::Zero => ExtensionDoc::Zero,
            ExtensionFlag::DirectSumDetermined => ExtensionDoc::DirectSumDetermined,
            ExtensionFlag::ExtClassUndetermined { sub, quot } => {
                ExtensionDoc::ExtClassUndetermined {
                    sub: cx.docs(sub),
                    quot: cx.docs(quot),
                }
            }
            ExtensionFlag::ConnectingUndetermined { section, stalk } => {
                ExtensionDoc::ConnectingUndetermined {
                    section: cx.docs(section),
                    stalk: cx.docs(stalk),
                }
            }
        };
        DegreeDoc {
            degree: d.degree,
            jh_factors: cx.docs(&d.jh_factors),
            extension,
            finite_slope_complete: d.finite_slope_complete,
            section: cx.docs(&d.section),
            stalk: cx.docs(&d.stalk),
            text: degree_text(d, cx),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct JacquetDoc {
    pub representation: String,
    pub degrees: Vec<DegreeDoc>,
    pub certified: bool,
}

impl JacquetDoc {
    pub fn new(representation: String, r: &JacquetReport, cx: &CharContext) -> Self {
        JacquetDoc {
            representation,
            degrees: r.degrees.iter().map(|d| DegreeDoc::new(d, cx)).collect(),
            certified: r.certified,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct LineDoc {
    pub weight: i64,
    pub dim: usize,
    pub basis: Vec<String>,
}

fn line_docs(labels: &BTreeMap<i64, Vec<String>>) -> Vec<LineDoc> {
    labels
        .iter()
        .rev()
        .filter(|(_, ls)| !ls.is_empty())
        .map(|(&weight, ls)| LineDoc {
            weight,
            dim: ls.len(),
            basis: ls.clone(),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CohomologyDoc {
    pub module: String,
    pub direction: String,
    /// Weights of `H^1` include the shift by the weight of the dual line.
    pub weight_shift: i64,
    pub h0: Vec<LineDoc>,
    pub h1: Vec<LineDoc>,
    pub certified: bool,
}

impl CohomologyDoc {
    pub fn new(module: String, r: &CohomologyResult) -> Self {
        CohomologyDoc {
            module,
            direction: r.direction.name().to_string(),
            weight_shift: r.weight_shift,
            h0: line_docs(&r.h0_labels),
            h1: line_docs(&r.h1_labels),
            certified: r.certified,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct WeightDim {
    pub weight: i64,
    pub dim: usize,
}

fn weight_dims(m: &BTreeMap<i64, usize>) -> Vec<WeightDim> {
    m.iter()
        .rev()
        .map(|(&weight, &dim)| WeightDim { weight, dim })
        .collect()
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BggDoc {
    pub map: String,
    pub equivariant: bool,
    pub cokernel_dims: Vec<WeightDim>,
    pub simple_dims: Vec<WeightDim>,
    pub pass: bool,
}

impl BggDoc {
    pub fn new(c: &BggCheck) -> Self {
        BggDoc {
            map: format!("M({}) -> M({})", c.k + 2, -c.k),
            equivariant: c.equivariant,
            cokernel_dims: weight_dims(&c.cokernel_dims),
            simple_dims: weight_dims(&c.simple_dims),
            pass: c.passed(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct KostantDoc {
    pub module: String,
    pub h0: Vec<LineDoc>,
    pub h1: Vec<LineDoc>,
    pub expected_h0_weight: i64,
    pub expected_h1_weight: i64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct EulerTerm {
    pub character: CharacterDoc,
    pub multiplicity: i64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct LesTermDoc {
    pub representation: String,
    pub euler: Vec<EulerTerm>,
}

impl LesTermDoc {
    pub fn new(representation: String, r: &JacquetReport, cx: &CharContext) -> Self {
        let euler = jacquet_core::jacquet::euler_characteristic(r, cx.smooth)
            .into_iter()
            .map(|(c, multiplicity)| EulerTerm {
                character: cx.doc(&c),
                multiplicity,
            })
            .collect();
        LesTermDoc {
            representation,
            euler,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct LesDoc {
    pub sequence: String,
    pub sub: LesTermDoc,
    pub middle: LesTermDoc,
    pub quotient: LesTermDoc,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RelationDoc {
    pub relation: String,
    pub holds: bool,
    pub provenance: &'static str,
}

impl RelationDoc {
    pub fn new(d: &DecidedRelation) -> Self {
        RelationDoc {
            relation: d.kind.name().to_string(),
            holds: d.holds,
            provenance: match d.provenance {
                Provenance::Declared => "declared",
                Provenance::ZValueMismatch => "z-value-mismatch",
                Provenance::LabelMatch => "label-match",
                Provenance::Inferred => "inferred",
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ExtDoc {
    pub group: String,
    pub verdict: String,
    pub dimension: [usize; 2],
    pub weights_match: bool,
    pub fired: Vec<usize>,
    pub relations: Vec<RelationDoc>,
    pub source: CharacterDoc,
    pub target: String,
    pub target_h1: DegreeDoc,
    pub matched: Vec<CharacterDoc>,
}

impl ExtDoc {
    pub fn new(c: &ExtCase, target: String, p: Option<u64>) -> Self {
        let src = CharContext {
            smooth: &c.psi,
            name: "psi",
            p,
        };
        let tgt = CharContext {
            smooth: &c.phi,
            name: "phi",
            p,
        };
        let (lo, hi) = c.verdict.interval();
        ExtDoc {
            group: format!("Ext^1_G(Ind chi_{{{}}} psi, I(chi_{{{}}} phi))", c.k, c.ell),
            verdict: c.verdict.name().to_string(),
            dimension: [lo, hi],
            weights_match: c.weights_match(),
            fired: c.witness.fired.clone(),
            relations: c.witness.relations.iter().map(RelationDoc::new).collect(),
            source: src.doc(&c.witness.source),
            target,
            target_h1: DegreeDoc::new(&c.witness.target_h1, &tgt),
            matched: tgt.docs(&c.witness.matched),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CertificateEntry {
    pub module: String,
    pub direction: String,
    pub operator: Option<String>,
    pub coefficient: Option<String>,
    pub index_step: i64,
    pub roots: Vec<i64>,
    pub bound: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CertificateDoc {
    pub certified: bool,
    pub window: Option<usize>,
    pub entries: Vec<CertificateEntry>,
}

impl CertificateEntry {
    pub fn new(module: String, r: &CohomologyResult) -> Self {
        let empty = StabilizationCertificate::empty();
        let c = r.certificate.as_ref().unwrap_or(&empty);
        CertificateEntry {
            module,
            direction: r.direction.name().to_string(),
            operator: c.op.map(|op| format!("{op:?}")),
            coefficient: c.coefficient.map(|p| p.to_string()),
            index_step: c.index_step,
            roots: c.roots.clone(),
            bound: c.bound,
        }
    }
}
