//! Batch front end: job configs in, deterministic report documents out.

pub mod config;
pub mod corpus;
pub mod report;
pub mod text;

use jacquet_core::extbound::target_spec;
use jacquet_core::jacquet::{
    bgg_sequence_reports, les_balanced, section_characters, splice, stalk_characters,
};
use jacquet_core::{
    bgg_check, classify_ext_with, cohomology, cohomology_with, kostant_check, n_finite_dual,
    simple, Direction, Error, OrlikStrauchSpec, OsFamily, PipelineOptions,
};

pub use config::{Command, Format, JobConfig};

/// JSON schema every report and error document conforms to.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");
use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CERTIFICATE: i32 = 3;
pub const EXIT_UNDECIDABLE: i32 = 4;
pub const EXIT_CORPUS_MISMATCH: i32 = 5;
pub const EXIT_CORPUS_SETUP: i32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JobError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Config(_) => EXIT_VALIDATION,
            JobError::Core(e) => match e {
                Error::TruncationTooSmall { .. } | Error::Uncertified { .. } => EXIT_CERTIFICATE,
                Error::NeedRelationDeclaration(_) => EXIT_UNDECIDABLE,
                Error::OddWeight(_)
                | Error::PositiveSimpleWeight(_)
                | Error::UnsupportedFamily(_)
                | Error::InvalidInput(_) => EXIT_VALIDATION,
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            EXIT_CERTIFICATE => "certificate",
            EXIT_UNDECIDABLE => "undecidable-relation",
            _ => "validation",
        }
    }

    pub fn document(&self) -> ErrorDocument {
        ErrorDocument {
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            error: ErrorDoc {
                exit_code: self.exit_code(),
                kind: self.kind(),
                message: self.to_string(),
            },
        }
    }
}

fn is_finite(family: OsFamily) -> bool {
    family == OsFamily::Simple
}

fn psi_context(cfg: &JobConfig) -> CharContext<'_> {
    CharContext {
        smooth: &cfg.psi,
        name: "psi",
        p: cfg.concrete_p,
    }
}

fn target_name(ell: i64) -> String {
    if ell >= 0 {
        format!("L({}) (x) sm-Ind phi", -ell)
    } else {
        format!("Ind chi_{{{ell}}} phi")
    }
}

/// Runs a validated job.
pub fn run_job(cfg: &JobConfig) -> Result<ReportDocument, JobError> {
    cfg.validate()?;
    let k = cfg.k.expect("validated");
    let opts = PipelineOptions {
        truncation: Some(cfg.effective_truncation(k)),
        policy: cfg.policy,
    };
    let window = |finite: bool| (!finite).then(|| cfg.effective_truncation(k));
    let (result, certificate, trunc_echo) = match cfg.command {
        Command::Jacquet => {
            let family = cfg.family.expect("validated");
            let spec = OrlikStrauchSpec::new(family, k, cfg.psi.clone())?;
            let dual = n_finite_dual(&spec.module(opts.truncation_for(k))?).describe();
            let sec = section_characters(&spec, &opts)?;
            let stk = stalk_characters(&spec, &opts)?;
            let certified = sec.certified() && stk.certified();
            let report = splice(&sec.degrees, &stk.degrees, &cfg.psi, certified);
            let certificate = CertificateDoc {
                certified,
                window: window(is_finite(family)),
                entries: vec![
                    CertificateEntry::new(dual.clone(), &sec.cohomology),
                    CertificateEntry::new(dual, &stk.cohomology),
                ],
            };
            let doc = JacquetDoc::new(spec.describe(), &report, &psi_context(cfg));
            (
                ResultPayload::Jacquet(doc),
                Some(certificate),
                window(is_finite(family)),
            )
        }
        Command::Cohomology => {
            let family = cfg.family.expect("validated");
            let direction = cfg.direction.expect("validated");
            let spec = OrlikStrauchSpec::new(family, k, cfg.psi.clone())?;
            let dual = n_finite_dual(&spec.module(opts.truncation_for(k))?);
            let r = cohomology_with(&dual, direction, cfg.policy)?;
            let certificate = CertificateDoc {
                certified: r.certified,
                window: window(is_finite(family)),
                entries: vec![CertificateEntry::new(dual.describe(), &r)],
            };
            let doc = CohomologyDoc::new(dual.describe(), &r);
            (
                ResultPayload::Cohomology(doc),
                Some(certificate),
                window(is_finite(family)),
            )
        }
        Command::BggCheck => {
            let t = cfg.effective_truncation(k);
            let c = bgg_check(k, t)?;
            (ResultPayload::BggCheck(BggDoc::new(&c)), None, Some(t))
        }
        Command::Kostant => {
            let dual = n_finite_dual(&simple(-k)?);
            let r = cohomology(&dual, Direction::N)?;
            let doc = KostantDoc {
                module: dual.describe(),
                h0: CohomologyDoc::new(String::new(), &r).h0,
                h1: CohomologyDoc::new(String::new(), &r).h1,
                expected_h0_weight: k,
                expected_h1_weight: -(k + 2),
                pass: kostant_check(k)?,
            };
            let certificate = CertificateDoc {
                certified: r.certified,
                window: None,
                entries: vec![CertificateEntry::new(dual.describe(), &r)],
            };
            (ResultPayload::Kostant(doc), Some(certificate), None)
        }
        Command::ExtBound => {
            let ell = cfg.ell.expect("validated");
            let phi = cfg.phi.as_ref().expect("validated");
            let opts = PipelineOptions {
                truncation: Some(cfg.effective_truncation(ell)),
                policy: cfg.policy,
            };
            let case = classify_ext_with(k, ell, &cfg.psi, phi, &cfg.relations, &opts)?;
            let finite = target_spec(ell, phi)?.family == OsFamily::Simple;
            let trunc = (!finite).then(|| cfg.effective_truncation(ell));
            (
                ResultPayload::ExtBound(ExtDoc::new(&case, target_name(ell), cfg.concrete_p)),
                None,
                trunc,
            )
        }
        Command::LesCheck => {
            let [a, b, c] = bgg_sequence_reports(k, &cfg.psi, &opts)?;
            let cx = psi_context(cfg);
            let quotient = format!("Ind chi_{{{}}} psi", -(k + 2));
            let doc = LesDoc {
                sequence: format!(
                    "0 -> L({}) (x) sm-Ind psi -> Ind chi_{{{k}}} psi -> {quotient} -> 0",
                    -k
                ),
                sub: LesTermDoc::new(format!("L({}) (x) sm-Ind psi", -k), &a, &cx),
                middle: LesTermDoc::new(format!("Ind chi_{{{k}}} psi"), &b, &cx),
                quotient: LesTermDoc::new(quotient, &c, &cx),
                pass: les_balanced(&a, &b, &c, &cfg.psi),
            };
            (ResultPayload::LesCheck(doc), None, opts.truncation)
        }
    };
    Ok(ReportDocument {
        tool: TOOL_NAME,
        version: TOOL_VERSION,
        config: ConfigEcho::new(cfg, trunc_echo),
        result,
        certificate,
    })
}

/// Output of a job as the binary prints it, plus its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

pub fn execute(cfg: &JobConfig) -> JobOutput {
    match run_job(cfg) {
        Ok(doc) => JobOutput {
            stdout: match cfg.format {
                Format::Json => doc.to_json(),
                Format::Text => text::render(&doc),
            },
            stderr: if doc.passed() {
                String::new()
            } else {
                "check failed\n".into()
            },
            exit_code: if doc.passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            },
        },
        Err(e) => JobOutput {
            stdout: match cfg.format {
                Format::Json => e.document().to_json(),
                Format::Text => String::new(),
            },
            stderr: format!("error: {e}\n"),
            exit_code: e.exit_code(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(text: &str) -> Result<ReportDocument, JobError> {
        run_job(&JobConfig::from_text(text)?)
    }

    #[test]
    fn verma_negative_k() {
        let doc = job("command = jacquet\nfamily = verma\nk = -4\npsi = trivial").unwrap();
        let ResultPayload::Jacquet(j) = &doc.result else {
            panic!()
        };
        assert_eq!(j.degrees[0].text, "chi_{-4} psi delta_P");
        assert_eq!(j.degrees[1].text, "chi_{2} psi^w");
        assert!(j.certified);
    }

    #[test]
    fn exit_codes_are_distinct() {
        let uncertified = job("command = jacquet\nfamily = verma\nk = 8\ntrunc = 4").unwrap_err();
        assert_eq!(uncertified.exit_code(), EXIT_CERTIFICATE);
        let undecidable =
            job("command = ext-bound\nk = -4\nell = 2\npsi = label=a\nphi = label=b").unwrap_err();
        assert_eq!(undecidable.exit_code(), EXIT_UNDECIDABLE);
        let invalid = JobConfig::from_text("command = jacquet\nfamily = verma\nk = 1").unwrap_err();
        assert_eq!(invalid.exit_code(), EXIT_VALIDATION);
    }

    #[test]
    fn window_only_reports_uncertified() {
        let doc = job("command = jacquet\nfamily = verma\nk = 8\ntrunc = 4\npolicy = window-only")
            .unwrap();
        let ResultPayload::Jacquet(j) = &doc.result else {
            panic!()
        };
        assert!(!j.certified);
        assert!(!doc.certificate.unwrap().certified);
    }

    #[test]
    fn checks_pass() {
        for text in [
            "command = kostant\nk = 2",
            "command = bgg-check\nk = 4",
            "command = les-check\nk = 2",
        ] {
            assert!(job(text).unwrap().passed(), "{text}");
        }
    }

    #[test]
    fn ext_bound_trivial_off_the_line() {
        let doc =
            job("command = ext-bound\nk = -4\nell = 4\npsi = trivial\nphi = trivial").unwrap();
        let ResultPayload::ExtBound(e) = &doc.result else {
            panic!()
        };
        assert_eq!(e.verdict, "Trivial");
        assert_eq!(e.dimension, [0, 0]);
    }

    #[test]
    fn concrete_prime_adds_values() {
        let doc = job("command = jacquet\nfamily = verma\nk = -2\np = 5").unwrap();
        let ResultPayload::Jacquet(j) = &doc.result else {
            panic!()
        };
        // chi_{-2} delta_P at z: 5^-4
        assert_eq!(
            j.degrees[0].jh_factors[0].eigenvalue.value.as_deref(),
            Some("1/625")
        );
    }
}
