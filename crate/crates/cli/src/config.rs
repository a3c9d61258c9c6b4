//! Job configuration from flat `key = value` text.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use jacquet_core::{
    default_truncation, parse_rational, q, render_rational, CertificationPolicy, Direction,
    OsFamily, Relation, SmoothCharacter,
};

use crate::JobError;

pub const TRUNC_ENV_VAR: &str = "JACQUET_TRUNC_DEFAULT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Jacquet,
    Cohomology,
    BggCheck,
    Kostant,
    ExtBound,
    LesCheck,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Jacquet,
        Command::Cohomology,
        Command::BggCheck,
        Command::Kostant,
        Command::ExtBound,
        Command::LesCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Jacquet => "jacquet",
            Command::Cohomology => "cohomology",
            Command::BggCheck => "bgg-check",
            Command::Kostant => "kostant",
            Command::ExtBound => "ext-bound",
            Command::LesCheck => "les-check",
        }
    }
}

impl FromStr for Command {
    type Err = JobError;

    fn from_str(s: &str) -> Result<Self, JobError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| JobError::Config(format!("unknown command '{s}'")))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn parse_family(s: &str) -> Result<OsFamily, JobError> {
    match s {
        "verma" => Ok(OsFamily::Verma),
        "dualverma" | "dual-verma" => Ok(OsFamily::DualVerma),
        "simple" => Ok(OsFamily::Simple),
        _ => Err(JobError::Config(format!(
            "unknown family '{s}' (expected verma, dualverma or simple)"
        ))),
    }
}

pub fn parse_direction(s: &str) -> Result<Direction, JobError> {
    match s {
        "n" => Ok(Direction::N),
        "nbar" => Ok(Direction::NBar),
        _ => Err(JobError::Config(format!(
            "unknown direction '{s}' (expected n or nbar)"
        ))),
    }
}

/// Parses `trivial` or `label=NAME,val=V,unit=A/B,tzp=NAME[,selfdual]`.
/// Unless `tzp` is given, the restriction to `T(Z_p)` is named after the
/// label, so distinct labels never compare equal by accident.
pub fn parse_character(s: &str, default_label: &str) -> Result<SmoothCharacter, JobError> {
    let s = s.trim();
    if s == "trivial" {
        return Ok(SmoothCharacter::trivial());
    }
    let mut label = default_label.to_string();
    let mut val = 0i64;
    let mut unit = q(1);
    let mut tzp: Option<String> = None;
    let mut selfdual = false;
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = match part.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => (part, ""),
        };
        match key {
            "label" => label = value.to_string(),
            "val" => {
                val = value
                    .parse()
                    .map_err(|_| JobError::Config(format!("bad z-valuation '{value}'")))?
            }
            "unit" => {
                unit = parse_rational(value)
                    .ok_or_else(|| JobError::Config(format!("bad z-unit '{value}'")))?
            }
            "tzp" => tzp = Some(value.to_string()),
            "selfdual" => selfdual = true,
            _ => return Err(JobError::Config(format!("unknown character field '{key}'"))),
        }
    }
    let tzp = tzp.unwrap_or_else(|| label.clone());
    Ok(SmoothCharacter::new(&label, val, unit, selfdual, &tzp)?)
}

/// Inverse of [`parse_character`].
pub fn render_character_spec(c: &SmoothCharacter) -> String {
    if *c == SmoothCharacter::trivial() {
        return "trivial".into();
    }
    let mut s = format!(
        "label={},val={},unit={},tzp={}",
        c.label,
        c.z_valuation,
        render_rational(&c.z_unit),
        c.torus_unit_label
    );
    if c.w_selfdual {
        s.push_str(",selfdual");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub command: Command,
    pub family: Option<OsFamily>,
    pub k: Option<i64>,
    pub ell: Option<i64>,
    pub direction: Option<Direction>,
    pub psi: SmoothCharacter,
    pub phi: Option<SmoothCharacter>,
    pub relations: Vec<Relation>,
    pub truncation: Option<usize>,
    pub policy: CertificationPolicy,
    pub format: Format,
    pub concrete_p: Option<u64>,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        JobConfig {
            command,
            family: None,
            k: None,
            ell: None,
            direction: None,
            psi: SmoothCharacter::trivial(),
            phi: None,
            relations: Vec::new(),
            truncation: None,
            policy: CertificationPolicy::Certified,
            format: Format::Text,
            concrete_p: None,
        }
    }

    /// Builds a config from `(key, value)` pairs. Later pairs override
    /// earlier ones, except `relation`, which accumulates.
    pub fn from_pairs<'a>(
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, JobError> {
        let mut map: BTreeMap<&str, &str> = BTreeMap::new();
        let mut relations = Vec::new();
        for (key, value) in pairs {
            if key == "relation" || key == "relations" {
                for r in value.split(',').map(str::trim).filter(|r| !r.is_empty()) {
                    relations.push(Relation::parse(r)?);
                }
            } else {
                map.insert(key, value);
            }
        }
        let command: Command = map
            .remove("command")
            .ok_or_else(|| JobError::Config("missing 'command'".into()))?
            .parse()?;
        let mut cfg = JobConfig::new(command);
        cfg.relations = relations;
        let int = |key: &str, v: &str| -> Result<i64, JobError> {
            v.parse()
                .map_err(|_| JobError::Config(format!("{key}: expected an integer, got '{v}'")))
        };
        for (key, value) in map {
            match key {
                "family" => cfg.family = Some(parse_family(value)?),
                "k" => cfg.k = Some(int(key, value)?),
                "ell" => cfg.ell = Some(int(key, value)?),
                "direction" => cfg.direction = Some(parse_direction(value)?),
                "psi" => cfg.psi = parse_character(value, "psi")?,
                "phi" => cfg.phi = Some(parse_character(value, "phi")?),
                "trunc" | "truncation" => {
                    cfg.truncation = Some(value.parse().map_err(|_| {
                        JobError::Config(format!(
                            "{key}: expected a nonnegative integer, got '{value}'"
                        ))
                    })?)
                }
                "policy" => {
                    cfg.policy = match value {
                        "certified" => CertificationPolicy::Certified,
                        "window-only" => CertificationPolicy::WindowOnly,
                        _ => return Err(JobError::Config(format!("unknown policy '{value}'"))),
                    }
                }
                "format" => {
                    cfg.format = match value {
                        "text" => Format::Text,
                        "json" => Format::Json,
                        _ => return Err(JobError::Config(format!("unknown format '{value}'"))),
                    }
                }
                "p" => {
                    cfg.concrete_p = Some(value.parse().map_err(|_| {
                        JobError::Config(format!("p: expected a prime, got '{value}'"))
                    })?)
                }
                _ => return Err(JobError::Config(format!("unknown key '{key}'"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<Vec<(String, String)>, JobError> {
        let mut out = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| JobError::Config(format!("line {}: expected key = value", n + 1)))?;
            out.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<Self, JobError> {
        let pairs = Self::parse_text(text)?;
        Self::from_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())))
    }

    fn require_k(&self) -> Result<i64, JobError> {
        self.k
            .ok_or_else(|| JobError::Config(format!("{} needs k", self.command)))
    }

    pub fn validate(&self) -> Result<(), JobError> {
        let invalid = |msg: String| Err(JobError::Config(msg));
        let k = self.require_k()?;
        if k % 2 != 0 {
            return invalid(format!("k must be even, got {k}"));
        }
        if let Some(p) = self.concrete_p {
            if !is_prime(p) {
                return invalid(format!("p must be prime, got {p}"));
            }
        }
        let needs_family = matches!(self.command, Command::Jacquet | Command::Cohomology);
        match (needs_family, self.family) {
            (true, None) => return invalid(format!("{} needs family", self.command)),
            (false, Some(_)) => return invalid(format!("{} does not take family", self.command)),
            _ => {}
        }
        if self.family == Some(OsFamily::Simple) && k < 0 {
            return invalid(format!("family simple needs k >= 0, got {k}"));
        }
        match (self.command, self.direction) {
            (Command::Cohomology, None) => return invalid("cohomology needs direction".into()),
            (c, Some(_)) if c != Command::Cohomology => {
                return invalid(format!("{c} does not take direction"))
            }
            _ => {}
        }
        let is_ext = self.command == Command::ExtBound;
        if is_ext {
            let Some(ell) = self.ell else {
                return invalid("ext-bound needs ell".into());
            };
            if ell % 2 != 0 {
                return invalid(format!("ell must be even, got {ell}"));
            }
            if k >= 0 {
                return invalid(format!("ext-bound needs k < 0, got {k}"));
            }
            if k == ell {
                return invalid(format!("ext-bound needs k != ell, both are {k}"));
            }
            if self.phi.is_none() {
                return invalid("ext-bound needs phi".into());
            }
        } else {
            if self.ell.is_some() {
                return invalid(format!("{} does not take ell", self.command));
            }
            if self.phi.is_some() {
                return invalid(format!("{} does not take phi", self.command));
            }
            if !self.relations.is_empty() {
                return invalid(format!("{} does not take relations", self.command));
            }
        }
        if matches!(
            self.command,
            Command::BggCheck | Command::Kostant | Command::LesCheck
        ) && k < 0
        {
            return invalid(format!("{} needs k >= 0, got {k}", self.command));
        }
        if self.command == Command::BggCheck {
            if let Some(t) = self.truncation {
                if t < k as usize + 2 {
                    return invalid(format!(
                        "bgg-check needs trunc >= k + 2 = {}, got {t}",
                        k + 2
                    ));
                }
            }
        }
        Ok(())
    }

    /// Truncation the job will use for parameter `k`.
    pub fn effective_truncation(&self, k: i64) -> usize {
        self.truncation.unwrap_or_else(|| default_truncation(k))
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Default truncation override from the environment, if set and valid.
pub fn truncation_from_env() -> Result<Option<usize>, JobError> {
    match std::env::var(TRUNC_ENV_VAR) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            JobError::Config(format!("{TRUNC_ENV_VAR}: expected an integer, got '{v}'"))
        }),
        Err(_) => Ok(None),
    }
}
