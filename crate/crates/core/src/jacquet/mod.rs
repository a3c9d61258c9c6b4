//! Derived Jacquet modules of Orlik-Strauch representations of `SL2(Qp)`.
//!
//! For `V = F(M, psi)` the computation runs on the `n`-finite dual
//! `M' = Hom(M, K)^{n-inf}`:
//!
//! * the *section* part (functions supported on `Pbar N`) contributes
//!   `H^i(n, M')`, each weight line twisted by `psi delta_P`;
//! * the *stalk* at `w` contributes `H^i(nbar, M') (x) psi`, moved back
//!   through `w`: weights are negated and `psi` becomes `psi^w`.
//!
//! The two are spliced through the six-term sequence
//!
//! ```text
//! 0 -> H0(sec) -> H0(V) -> H0(stalk) -> H1(sec) -> H1(V) -> H1(stalk) -> 0
//! ```
//!
//! Every `z`-eigenvalue here is nonzero, so the results are their own
//! finite-slope parts.

mod character;

use std::collections::BTreeMap;
use std::fmt;

pub use character::{
    hecke_eigenvalue, w_twist_all, HeckeEigenvalue, SmoothCharacter, TorusCharacter,
    DELTA_P_Z_EXPONENT, TRIVIAL_LABEL,
};

use crate::cohom::{cohomology_with, CertificationPolicy, CohomologyResult, Direction};
use crate::error::{Error, Result};
use crate::sl2mod::{default_truncation, dual_verma, n_finite_dual, simple, verma, WeightModule};

/// Which category-O module feeds the Orlik-Strauch functor. For parameter
/// `k` the module is `M(-k)`, `M(-k)^vee` or `L(-k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OsFamily {
    Verma,
    DualVerma,
    Simple,
}

impl OsFamily {
    pub fn name(self) -> &'static str {
        match self {
            OsFamily::Verma => "verma",
            OsFamily::DualVerma => "dualverma",
            OsFamily::Simple => "simple",
        }
    }
}

impl fmt::Display for OsFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrlikStrauchSpec {
    pub family: OsFamily,
    pub k: i64,
    pub psi: SmoothCharacter,
}

impl OrlikStrauchSpec {
    pub fn new(family: OsFamily, k: i64, psi: SmoothCharacter) -> Result<Self> {
        if k % 2 != 0 {
            return Err(Error::OddWeight(k));
        }
        if family == OsFamily::Simple && k < 0 {
            return Err(Error::InvalidInput(format!(
                "simple family needs k >= 0 (L(-k) finite dimensional), got {k}"
            )));
        }
        psi.validate()?;
        Ok(OrlikStrauchSpec { family, k, psi })
    }

    pub fn module(&self, trunc: usize) -> Result<WeightModule> {
        match self.family {
            OsFamily::Verma => verma(-self.k, trunc),
            OsFamily::DualVerma => dual_verma(-self.k, trunc),
            OsFamily::Simple => simple(-self.k),
        }
    }

    /// Human-readable name of the representation.
    pub fn describe(&self) -> String {
        let k = self.k;
        match self.family {
            OsFamily::Verma => format!("F(M({}), psi) = Ind chi_{{{k}}} psi", -k),
            OsFamily::DualVerma => format!("F(M({})^vee, psi)", -k),
            OsFamily::Simple => format!("F(L({}), psi) = L({}) (x) sm-Ind psi", -k, -k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PipelineOptions {
    /// Highest basis index retained; defaults to `|k| + 16`.
    pub truncation: Option<usize>,
    pub policy: CertificationPolicy,
}

impl PipelineOptions {
    pub fn truncation_for(&self, k: i64) -> usize {
        self.truncation.unwrap_or_else(|| default_truncation(k))
    }
}

/// Characters contributed by one side of the six-term sequence, per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideCharacters {
    pub degrees: [Vec<TorusCharacter>; 2],
    /// Basis representatives in the dual module, aligned with `degrees`.
    pub representatives: [Vec<String>; 2],
    pub cohomology: CohomologyResult,
}

impl SideCharacters {
    pub fn certified(&self) -> bool {
        self.cohomology.certified
    }
}

/// Lines of a cohomology result, ordered by ascending dual-basis index
/// (descending weight in the dual), one entry per dimension.
fn lines(r: &CohomologyResult) -> [Vec<(i64, String)>; 2] {
    let collect = |spaces: &BTreeMap<i64, crate::exactla::Subspace>,
                   labels: &BTreeMap<i64, Vec<String>>| {
        spaces
            .iter()
            .rev()
            .flat_map(|(&w, s)| (0..s.dim()).map(move |i| (w, labels[&w][i].clone())))
            .collect()
    };
    [collect(&r.h0, &r.h0_labels), collect(&r.h1, &r.h1_labels)]
}

fn side(
    spec: &OrlikStrauchSpec,
    opts: &PipelineOptions,
    direction: Direction,
    to_char: impl Fn(i64) -> TorusCharacter,
) -> Result<SideCharacters> {
    let dual = n_finite_dual(&spec.module(opts.truncation_for(spec.k))?);
    let cohomology = cohomology_with(&dual, direction, opts.policy)?;
    let [l0, l1] = lines(&cohomology);
    let split = |ls: Vec<(i64, String)>| -> (Vec<TorusCharacter>, Vec<String>) {
        ls.into_iter().map(|(w, l)| (to_char(w), l)).unzip()
    };
    let (c0, r0) = split(l0);
    let (c1, r1) = split(l1);
    Ok(SideCharacters {
        degrees: [c0, c1],
        representatives: [r0, r1],
        cohomology,
    })
}

/// Section part: `H^i(n, M')` with every weight line twisted by `psi delta_P`.
pub fn section_characters(
    spec: &OrlikStrauchSpec,
    opts: &PipelineOptions,
) -> Result<SideCharacters> {
    side(spec, opts, Direction::N, TorusCharacter::section)
}

/// Stalk part: `H^i(nbar, M') (x) psi`, then `chi_mu psi -> chi_-mu psi^w`.
pub fn stalk_characters(spec: &OrlikStrauchSpec, opts: &PipelineOptions) -> Result<SideCharacters> {
    side(spec, opts, Direction::NBar, |w| {
        TorusCharacter::chi(w)
            .times(TorusCharacter::new(0, 1, 0, 0))
            .w_twist()
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionFlag {
    Zero,
    /// The degree is a direct sum of its factors.
    DirectSumDetermined,
    /// A class in `Ext^1(quot, sub)` that character data cannot decide.
    ExtClassUndetermined {
        sub: Vec<TorusCharacter>,
        quot: Vec<TorusCharacter>,
    },
    /// The connecting map `H0(stalk) -> H1(sec)` could be nonzero.
    ConnectingUndetermined {
        section: Vec<TorusCharacter>,
        stalk: Vec<TorusCharacter>,
    },
}

impl ExtensionFlag {
    pub fn kind(&self) -> &'static str {
        match self {
            ExtensionFlag::Zero => "Zero",
            ExtensionFlag::DirectSumDetermined => "DirectSumDetermined",
            ExtensionFlag::ExtClassUndetermined { .. } => "ExtClassUndetermined",
            ExtensionFlag::ConnectingUndetermined { .. } => "ConnectingUndetermined",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    /// Sub layers first, quotient layers last.
    pub jh_factors: Vec<TorusCharacter>,
    pub extension: ExtensionFlag,
    pub hecke_eigenvalues: Vec<HeckeEigenvalue>,
    pub finite_slope_complete: bool,
    pub section: Vec<TorusCharacter>,
    pub stalk: Vec<TorusCharacter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacquetReport {
    pub degrees: [DegreeReport; 2],
    pub certified: bool,
}

impl JacquetReport {
    pub fn degree(&self, i: usize) -> &DegreeReport {
        &self.degrees[i]
    }
}

/// True when `a` and `b` are provably different characters: different
/// algebraic weights, or different eigenvalues of `z`.
fn provably_distinct(a: &TorusCharacter, b: &TorusCharacter, psi: &SmoothCharacter) -> bool {
    a.weight != b.weight || hecke_eigenvalue(a, psi) != hecke_eigenvalue(b, psi)
}

/// The connecting map is `T`-equivariant, so it vanishes when no character
/// of its source can match one of its target.
pub fn connecting_map_forced_zero(
    stalk0: &[TorusCharacter],
    section1: &[TorusCharacter],
    psi: &SmoothCharacter,
) -> bool {
    stalk0
        .iter()
        .all(|a| section1.iter().all(|b| provably_distinct(a, b, psi)))
}

fn degree_report(
    degree: usize,
    sub: &[TorusCharacter],
    quot: &[TorusCharacter],
    psi: &SmoothCharacter,
) -> DegreeReport {
    let jh_factors: Vec<TorusCharacter> = sub.iter().chain(quot).copied().collect();
    let extension = match (sub.is_empty(), quot.is_empty()) {
        (true, true) => ExtensionFlag::Zero,
        (true, false) | (false, true) => ExtensionFlag::DirectSumDetermined,
        (false, false) => ExtensionFlag::ExtClassUndetermined {
            sub: sub.to_vec(),
            quot: quot.to_vec(),
        },
    };
    finish(degree, jh_factors, extension, sub, quot, psi)
}

fn finish(
    degree: usize,
    jh_factors: Vec<TorusCharacter>,
    extension: ExtensionFlag,
    section: &[TorusCharacter],
    stalk: &[TorusCharacter],
    psi: &SmoothCharacter,
) -> DegreeReport {
    let hecke_eigenvalues: Vec<HeckeEigenvalue> = jh_factors
        .iter()
        .map(|c| hecke_eigenvalue(c, psi))
        .collect();
    let finite_slope_complete = hecke_eigenvalues.iter().all(HeckeEigenvalue::is_nonzero);
    DegreeReport {
        degree,
        jh_factors,
        extension,
        hecke_eigenvalues,
        finite_slope_complete,
        section: section.to_vec(),
        stalk: stalk.to_vec(),
    }
}

/// Splices section and stalk characters through the six-term sequence.
pub fn splice(
    section: &[Vec<TorusCharacter>; 2],
    stalk: &[Vec<TorusCharacter>; 2],
    psi: &SmoothCharacter,
    certified: bool,
) -> JacquetReport {
    if connecting_map_forced_zero(&stalk[0], &section[1], psi) {
        return JacquetReport {
            degrees: [
                degree_report(0, &section[0], &stalk[0], psi),
                degree_report(1, &section[1], &stalk[1], psi),
            ],
            certified,
        };
    }
    let undetermined = |i: usize| {
        let flag = ExtensionFlag::ConnectingUndetermined {
            section: section[i].clone(),
            stalk: stalk[i].clone(),
        };
        let factors = section[i].iter().chain(&stalk[i]).copied().collect();
        finish(i, factors, flag, &section[i], &stalk[i], psi)
    };
    JacquetReport {
        degrees: [undetermined(0), undetermined(1)],
        certified,
    }
}

pub fn assemble_les(spec: &OrlikStrauchSpec, opts: &PipelineOptions) -> Result<JacquetReport> {
    let sec = section_characters(spec, opts)?;
    let stk = stalk_characters(spec, opts)?;
    let certified = sec.certified() && stk.certified();
    Ok(splice(&sec.degrees, &stk.degrees, &spec.psi, certified))
}

/// Alternating count of Jordan-Holder factors: `+1` per degree-0 factor,
/// `-1` per degree-1 factor, after normalizing against `psi`.
pub fn euler_characteristic(
    report: &JacquetReport,
    psi: &SmoothCharacter,
) -> BTreeMap<TorusCharacter, i64> {
    let mut out = BTreeMap::new();
    for (sign, d) in [(1, &report.degrees[0]), (-1, &report.degrees[1])] {
        for c in &d.jh_factors {
            *out.entry(c.normalized(psi)).or_insert(0) += sign;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// For a short exact sequence `0 -> A -> B -> C -> 0`, checks
/// `chi(A) - chi(B) + chi(C) = 0` character by character.
pub fn les_balanced(
    sub: &JacquetReport,
    middle: &JacquetReport,
    quotient: &JacquetReport,
    psi: &SmoothCharacter,
) -> bool {
    let mut total: BTreeMap<TorusCharacter, i64> = BTreeMap::new();
    for (sign, r) in [(1, sub), (-1, middle), (1, quotient)] {
        for (c, n) in euler_characteristic(r, psi) {
            *total.entry(c).or_insert(0) += sign * n;
        }
    }
    total.values().all(|&n| n == 0)
}

/// The three reports for `0 -> L(-k) (x) sm-Ind psi -> Ind chi_k psi ->
/// Ind chi_{-k-2} psi -> 0`.
pub fn bgg_sequence_reports(
    k: i64,
    psi: &SmoothCharacter,
    opts: &PipelineOptions,
) -> Result<[JacquetReport; 3]> {
    if k < 0 {
        return Err(Error::InvalidInput(format!(
            "BGG sequence needs k >= 0, got {k}"
        )));
    }
    let spec = |family, k| OrlikStrauchSpec::new(family, k, psi.clone());
    let at = |k: i64| PipelineOptions {
        truncation: opts.truncation.map(|t| t.max(default_truncation(k))),
        ..*opts
    };
    Ok([
        assemble_les(&spec(OsFamily::Simple, k)?, &at(k))?,
        assemble_les(&spec(OsFamily::Verma, k)?, &at(k))?,
        assemble_les(&spec(OsFamily::Verma, -k - 2)?, &at(-k - 2))?,
    ])
}

pub fn les_consistency_check(
    k: i64,
    psi: &SmoothCharacter,
    opts: &PipelineOptions,
) -> Result<bool> {
    let [a, b, c] = bgg_sequence_reports(k, psi, opts)?;
    Ok(les_balanced(&a, &b, &c, psi))
}
