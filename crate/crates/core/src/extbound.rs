//! Bounds on `Ext^1_G(Ind chi_k psi, I(chi_ell phi))` for negative `k`.
//!
//! Such a class maps injectively into `Hom_M(chi_k psi delta_P, H^1 J_P(V))`
//! for `V = I(chi_ell phi)`, so it can only be nonzero when the source
//! character matches a Jordan-Holder factor of `H^1 J_P(V)`. That forces
//! `k = -(ell + 2)`; the remaining case split depends on three relations
//! between `psi` and `phi`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::jacquet::{
    assemble_les, hecke_eigenvalue, DegreeReport, ExtensionFlag, JacquetReport, OrlikStrauchSpec,
    OsFamily, PipelineOptions, SmoothCharacter, TorusCharacter, DELTA_P_Z_EXPONENT, TRIVIAL_LABEL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    /// `psi = phi`
    PsiEqPhi,
    /// `psi delta_P = phi^w`
    PsiDeltaEqPhiW,
    /// `phi delta_P = phi^w`
    PhiDeltaEqPhiW,
}

impl RelationKind {
    pub const ALL: [RelationKind; 3] = [
        RelationKind::PsiEqPhi,
        RelationKind::PsiDeltaEqPhiW,
        RelationKind::PhiDeltaEqPhiW,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::PsiEqPhi => "psi = phi",
            RelationKind::PsiDeltaEqPhiW => "psi delta_P = phi^w",
            RelationKind::PhiDeltaEqPhiW => "phi delta_P = phi^w",
        }
    }

    /// Command-line spelling, e.g. `psi-eq-phi`.
    pub fn slug(self) -> &'static str {
        match self {
            RelationKind::PsiEqPhi => "psi-eq-phi",
            RelationKind::PsiDeltaEqPhiW => "psidelta-eq-phiw",
            RelationKind::PhiDeltaEqPhiW => "phidelta-eq-phiw",
        }
    }
}

/// A declared relation between `psi` and `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub kind: RelationKind,
    pub holds: bool,
}

impl Relation {
    pub fn holds(kind: RelationKind) -> Self {
        Relation { kind, holds: true }
    }

    pub fn fails(kind: RelationKind) -> Self {
        Relation { kind, holds: false }
    }

    /// Parses `psi-eq-phi`, `psi-ne-phi`, `psidelta-eq-phiw`, ...
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        for kind in RelationKind::ALL {
            let slug = kind.slug();
            if s == slug {
                return Ok(Relation::holds(kind));
            }
            if s == slug.replace("-eq-", "-ne-") {
                return Ok(Relation::fails(kind));
            }
        }
        Err(Error::InvalidInput(format!("unknown relation '{s}'")))
    }

    pub fn slug(&self) -> String {
        if self.holds {
            self.kind.slug().to_string()
        } else {
            self.kind.slug().replace("-eq-", "-ne-")
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.slug())
    }
}

/// How a relation's truth value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Declared,
    /// The two sides take different values at `z`.
    ZValueMismatch,
    /// Equal at `z` and with the same restriction to `T(Z_p)`.
    LabelMatch,
    /// Follows from the other two relations.
    Inferred,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecidedRelation {
    pub kind: RelationKind,
    pub holds: bool,
    pub provenance: Provenance,
}

fn same_unit_restriction(a: &str, b: &str) -> bool {
    a == b
}

/// Truth value from `z`-values and labels alone, if they settle it.
fn from_data(
    kind: RelationKind,
    psi: &SmoothCharacter,
    phi: &SmoothCharacter,
) -> Option<DecidedRelation> {
    let delta = crate::jacquet::HeckeEigenvalue::p_power(DELTA_P_Z_EXPONENT);
    let (lhs, rhs) = match kind {
        RelationKind::PsiEqPhi => (psi.value_at_z(), phi.value_at_z()),
        RelationKind::PsiDeltaEqPhiW => (&psi.value_at_z() * &delta, phi.w_value_at_z()),
        RelationKind::PhiDeltaEqPhiW => (&phi.value_at_z() * &delta, phi.w_value_at_z()),
    };
    let decided = |holds, provenance| {
        Some(DecidedRelation {
            kind,
            holds,
            provenance,
        })
    };
    if lhs != rhs {
        return decided(false, Provenance::ZValueMismatch);
    }
    // delta_P is trivial on T(Z_p); phi^w restricts to phi^{-1} there.
    let agree_on_units = match kind {
        RelationKind::PsiEqPhi => {
            same_unit_restriction(&psi.torus_unit_label, &phi.torus_unit_label)
        }
        RelationKind::PsiDeltaEqPhiW => {
            (psi.torus_unit_label == TRIVIAL_LABEL && phi.torus_unit_label == TRIVIAL_LABEL)
                || (phi.w_selfdual
                    && same_unit_restriction(&psi.torus_unit_label, &phi.torus_unit_label))
        }
        RelationKind::PhiDeltaEqPhiW => phi.torus_unit_label == TRIVIAL_LABEL,
    };
    if agree_on_units {
        decided(true, Provenance::LabelMatch)
    } else {
        None
    }
}

/// Decides the three relations. Declarations take precedence; a declaration
/// contradicting the `z`-values is rejected. With `psi = phi` known to hold,
/// the other two relations are equivalent and one can be inferred from the
/// other.
pub fn decide_relations(
    psi: &SmoothCharacter,
    phi: &SmoothCharacter,
    declared: &[Relation],
) -> Result<BTreeMap<RelationKind, DecidedRelation>> {
    let mut out = BTreeMap::new();
    for kind in RelationKind::ALL {
        let mut decl: Option<bool> = None;
        for r in declared.iter().filter(|r| r.kind == kind) {
            if decl.is_some_and(|h| h != r.holds) {
                return Err(Error::InvalidInput(format!(
                    "conflicting declarations for {}",
                    kind.name()
                )));
            }
            decl = Some(r.holds);
        }
        let data = from_data(kind, psi, phi);
        match (decl, data) {
            (Some(h), Some(d)) if d.provenance == Provenance::ZValueMismatch && h => {
                return Err(Error::InvalidInput(format!(
                    "declared {} but the two sides differ at z",
                    kind.name()
                )));
            }
            (Some(holds), _) => {
                out.insert(
                    kind,
                    DecidedRelation {
                        kind,
                        holds,
                        provenance: Provenance::Declared,
                    },
                );
            }
            (None, Some(d)) => {
                out.insert(kind, d);
            }
            (None, None) => {}
        }
    }
    use RelationKind::*;
    if out.get(&PsiEqPhi).is_some_and(|d| d.holds) {
        for (known, unknown) in [
            (PsiDeltaEqPhiW, PhiDeltaEqPhiW),
            (PhiDeltaEqPhiW, PsiDeltaEqPhiW),
        ] {
            match (out.get(&known).copied(), out.get(&unknown).copied()) {
                (Some(a), None) => {
                    out.insert(
                        unknown,
                        DecidedRelation {
                            kind: unknown,
                            holds: a.holds,
                            provenance: Provenance::Inferred,
                        },
                    );
                }
                (Some(a), Some(b)) if a.holds != b.holds => {
                    return Err(Error::InvalidInput(format!(
                        "inconsistent relations: psi = phi forces {} <=> {}",
                        known.name(),
                        unknown.name()
                    )));
                }
                _ => {}
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Trivial,
    OneDim,
    AtMostOneDim,
    OneOrTwoDim,
}

impl Verdict {
    /// Inclusive dimension interval.
    pub fn interval(self) -> (usize, usize) {
        match self {
            Verdict::Trivial => (0, 0),
            Verdict::OneDim => (1, 1),
            Verdict::AtMostOneDim => (0, 1),
            Verdict::OneOrTwoDim => (1, 2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Trivial => "Trivial",
            Verdict::OneDim => "OneDim",
            Verdict::AtMostOneDim => "AtMostOneDim",
            Verdict::OneOrTwoDim => "OneOrTwoDim",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One clause of the case analysis: a conjunction of relation literals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bullet {
    pub index: usize,
    pub literals: &'static [(RelationKind, bool)],
    pub verdict: Verdict,
}

pub const BULLETS: [Bullet; 4] = [
    Bullet {
        index: 1,
        literals: &[
            (RelationKind::PhiDeltaEqPhiW, false),
            (RelationKind::PsiEqPhi, true),
        ],
        verdict: Verdict::OneDim,
    },
    Bullet {
        index: 2,
        literals: &[
            (RelationKind::PhiDeltaEqPhiW, false),
            (RelationKind::PsiDeltaEqPhiW, true),
        ],
        verdict: Verdict::AtMostOneDim,
    },
    Bullet {
        index: 3,
        literals: &[
            (RelationKind::PhiDeltaEqPhiW, true),
            (RelationKind::PsiEqPhi, true),
        ],
        verdict: Verdict::OneOrTwoDim,
    },
    Bullet {
        index: 4,
        literals: &[(RelationKind::PsiDeltaEqPhiW, true)],
        verdict: Verdict::AtMostOneDim,
    },
];

impl Bullet {
    /// Kleene evaluation: `None` if the known literals do not settle it.
    fn evaluate(&self, rel: &BTreeMap<RelationKind, DecidedRelation>) -> Option<bool> {
        let mut unknown = false;
        for (kind, want) in self.literals {
            match rel.get(kind) {
                Some(d) if d.holds != *want => return Some(false),
                Some(_) => {}
                None => unknown = true,
            }
        }
        if unknown {
            None
        } else {
            Some(true)
        }
    }
}

/// Where the `Ext^1` class could land in `H^1 J_P(I(chi_ell phi))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtWitness {
    /// `chi_k psi delta_P`, written in terms of `psi`.
    pub source: TorusCharacter,
    /// Degree-one report of the target, written in terms of `phi`.
    pub target_h1: DegreeReport,
    /// Factors of `target_h1` matched by the source, in `phi` notation.
    pub matched: Vec<TorusCharacter>,
    /// Indices (1-based) of every clause that fired.
    pub fired: Vec<usize>,
    pub relations: Vec<DecidedRelation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtCase {
    pub k: i64,
    pub ell: i64,
    pub psi: SmoothCharacter,
    pub phi: SmoothCharacter,
    pub verdict: Verdict,
    pub witness: ExtWitness,
}

impl ExtCase {
    pub fn weights_match(&self) -> bool {
        self.k == -(self.ell + 2)
    }
}

/// The target `I(chi_ell phi)` as an Orlik-Strauch representation: the
/// locally algebraic `L(-ell) (x) sm-Ind phi` for `ell >= 0`, otherwise the
/// irreducible principal series `Ind chi_ell phi`.
pub fn target_spec(ell: i64, phi: &SmoothCharacter) -> Result<OrlikStrauchSpec> {
    let family = if ell >= 0 {
        OsFamily::Simple
    } else {
        OsFamily::Verma
    };
    OrlikStrauchSpec::new(family, ell, phi.clone())
}

/// Relation deciding whether the source `chi_k psi delta_P` equals a
/// `phi`-factor of the same weight: `phi delta_P` needs `psi = phi`, `phi^w`
/// needs `psi delta_P = phi^w`.
fn matching_relation(factor: &TorusCharacter) -> Option<RelationKind> {
    match (factor.psi_exp, factor.psiw_exp, factor.delta_exp) {
        (1, 0, 1) => Some(RelationKind::PsiEqPhi),
        (0, 1, 0) => Some(RelationKind::PsiDeltaEqPhiW),
        _ => None,
    }
}

pub fn classify_ext(
    k: i64,
    ell: i64,
    psi: &SmoothCharacter,
    phi: &SmoothCharacter,
    declared: &[Relation],
) -> Result<ExtCase> {
    classify_ext_with(k, ell, psi, phi, declared, &PipelineOptions::default())
}

pub fn classify_ext_with(
    k: i64,
    ell: i64,
    psi: &SmoothCharacter,
    phi: &SmoothCharacter,
    declared: &[Relation],
    opts: &PipelineOptions,
) -> Result<ExtCase> {
    if k % 2 != 0 {
        return Err(Error::OddWeight(k));
    }
    if ell % 2 != 0 {
        return Err(Error::OddWeight(ell));
    }
    if k >= 0 {
        return Err(Error::InvalidInput(format!("k must be negative, got {k}")));
    }
    if k == ell {
        return Err(Error::InvalidInput(format!(
            "k and ell must differ, both are {k}"
        )));
    }
    psi.validate()?;
    phi.validate()?;

    let target = assemble_les(&target_spec(ell, phi)?, opts)?;
    let target_h1 = target.degrees[1].clone();
    let source = TorusCharacter::section(k);
    let trivial_case = |relations| ExtCase {
        k,
        ell,
        psi: psi.clone(),
        phi: phi.clone(),
        verdict: Verdict::Trivial,
        witness: ExtWitness {
            source,
            target_h1: target_h1.clone(),
            matched: vec![],
            fired: vec![],
            relations,
        },
    };
    if k != -(ell + 2) {
        return Ok(trivial_case(vec![]));
    }

    let rel = decide_relations(psi, phi, declared)?;
    let mut fired = Vec::new();
    let mut undecided = Vec::new();
    for b in &BULLETS {
        match b.evaluate(&rel) {
            Some(true) => fired.push(b.index),
            Some(false) => {}
            None => undecided.extend(
                b.literals
                    .iter()
                    .map(|(kind, _)| *kind)
                    .filter(|kind| !rel.contains_key(kind)),
            ),
        }
    }
    if !undecided.is_empty() {
        undecided.sort();
        undecided.dedup();
        let names: Vec<&str> = undecided.iter().map(|r| r.slug()).collect();
        return Err(Error::NeedRelationDeclaration(names.join(", ")));
    }
    let relations: Vec<DecidedRelation> = rel.values().copied().collect();
    let Some(&first) = fired.first() else {
        return Ok(trivial_case(relations));
    };
    let matched = target_h1
        .jh_factors
        .iter()
        .filter(|f| f.weight == k)
        .filter(|f| {
            matching_relation(f).is_some_and(|kind| rel.get(&kind).is_some_and(|d| d.holds))
        })
        .copied()
        .collect();
    Ok(ExtCase {
        k,
        ell,
        psi: psi.clone(),
        phi: phi.clone(),
        verdict: BULLETS[first - 1].verdict,
        witness: ExtWitness {
            source,
            target_h1,
            matched,
            fired,
            relations,
        },
    })
}

/// Bounds `dim Hom(source, H^degree)` from the report's layer structure:
/// `max` counts matching factors, `min` only those in a degree known to be
/// a direct sum.
pub fn hom_dimension_bound(
    source: &TorusCharacter,
    report: &JacquetReport,
    degree: usize,
    psi: &SmoothCharacter,
) -> (usize, usize) {
    let target = source.normalized(psi);
    hom_dimension_bound_by(report, degree, |c| c.normalized(psi) == target)
}

/// As [`hom_dimension_bound`] with a caller-supplied equality test.
pub fn hom_dimension_bound_by(
    report: &JacquetReport,
    degree: usize,
    matches: impl Fn(&TorusCharacter) -> bool,
) -> (usize, usize) {
    let d = &report.degrees[degree];
    let max = d.jh_factors.iter().filter(|c| matches(c)).count();
    let min = match d.extension {
        ExtensionFlag::DirectSumDetermined => max,
        _ => 0,
    };
    (min, max)
}

/// `z`-eigenvalue of the source character, for display.
pub fn source_eigenvalue(case: &ExtCase) -> crate::jacquet::HeckeEigenvalue {
    hecke_eigenvalue(&case.witness.source, &case.psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;
    use proptest::prelude::*;
    use RelationKind::*;

    fn ch(label: &str, v: i64, u: i64, unit_label: &str) -> SmoothCharacter {
        SmoothCharacter::new(label, v, q(u), false, unit_label).unwrap()
    }

    fn opaque(label: &str) -> SmoothCharacter {
        ch(label, 0, 1, label)
    }

    #[test]
    fn trivial_unless_weights_match() {
        let psi = opaque("psi");
        let phi = opaque("phi");
        for k in [-2, -4, -6, -8] {
            for ell in [-6, -4, -2, 0, 2, 4, 8] {
                if k == ell || k == -(ell + 2) {
                    continue;
                }
                let c = classify_ext(k, ell, &psi, &phi, &[]).unwrap();
                assert_eq!(c.verdict, Verdict::Trivial);
                assert!(c.witness.fired.is_empty());
            }
        }
    }

    #[test]
    fn bullet_one() {
        // phi(z) = 1 so phi delta_P != phi^w at z; psi = phi by label
        let phi = ch("phi", 0, 1, "eta");
        let c = classify_ext(-4, 2, &phi, &phi, &[]).unwrap();
        assert_eq!(c.verdict, Verdict::OneDim);
        assert_eq!(c.witness.fired, vec![1]);
        assert_eq!(c.witness.matched, vec![TorusCharacter::section(-4)]);
    }

    #[test]
    fn bullet_two_and_four() {
        // psi delta_P = phi^w at z: v(psi) - 2 = -v(phi)
        let phi = ch("phi", 0, 1, "eta");
        let psi = ch("psi", 2, 1, "zeta");
        let r = [Relation::holds(PsiDeltaEqPhiW)];
        let c = classify_ext(-2, 0, &psi, &phi, &r).unwrap();
        assert_eq!(c.verdict, Verdict::AtMostOneDim);
        assert_eq!(c.witness.fired, vec![2, 4]);
        assert_eq!(c.witness.matched, vec![TorusCharacter::stalk(-2)]);
    }

    #[test]
    fn bullet_three_is_an_interval() {
        // phi(z) = p, phi trivial on units: phi delta_P = phi^w holds
        let phi = ch("phi", 1, 1, TRIVIAL_LABEL);
        let c = classify_ext(-6, 4, &phi, &phi, &[]).unwrap();
        assert_eq!(c.verdict, Verdict::OneOrTwoDim);
        assert_eq!(c.verdict.interval(), (1, 2));
        assert_eq!(c.witness.fired, vec![3, 4]);
        assert_eq!(c.witness.matched.len(), 2);
    }

    #[test]
    fn no_bullet_fires() {
        let phi = ch("phi", 0, 1, "eta");
        let psi = ch("psi", 0, 3, "eta");
        let c = classify_ext(-2, 0, &psi, &phi, &[]).unwrap();
        assert_eq!(c.verdict, Verdict::Trivial);
        assert_eq!(c.witness.relations.len(), 3);
    }

    #[test]
    fn undecidable_relation_is_an_error() {
        // equal z-values, different unit labels
        let psi = opaque("psi");
        let phi = opaque("phi");
        let e = classify_ext(-4, 2, &psi, &phi, &[]).unwrap_err();
        assert_eq!(e, Error::NeedRelationDeclaration("psi-eq-phi".into()));
        let c = classify_ext(-4, 2, &psi, &phi, &[Relation::fails(PsiEqPhi)]).unwrap();
        assert_eq!(c.verdict, Verdict::Trivial);
    }

    #[test]
    fn declarations_contradicting_z_values_are_rejected() {
        let psi = ch("psi", 0, 1, "a");
        let phi = ch("phi", 0, 3, "a");
        assert!(classify_ext(-4, 2, &psi, &phi, &[Relation::holds(PsiEqPhi)]).is_err());
        let r = [Relation::holds(PsiEqPhi), Relation::fails(PsiEqPhi)];
        assert!(classify_ext(-4, 2, &psi, &psi, &r).is_err());
    }

    #[test]
    fn hypotheses_are_checked() {
        let t = SmoothCharacter::trivial();
        assert!(classify_ext(2, -4, &t, &t, &[]).is_err());
        assert!(classify_ext(-4, -4, &t, &t, &[]).is_err());
        assert_eq!(
            classify_ext(-3, 1, &t, &t, &[]).unwrap_err(),
            Error::OddWeight(-3)
        );
    }

    #[test]
    fn relation_parsing() {
        for kind in RelationKind::ALL {
            for r in [Relation::holds(kind), Relation::fails(kind)] {
                assert_eq!(Relation::parse(&r.slug()).unwrap(), r);
            }
        }
        assert!(Relation::parse("psi-is-phi").is_err());
    }

    #[test]
    fn hom_bounds() {
        let psi = SmoothCharacter::new("psi", 1, q(5), false, "eta").unwrap();
        let opts = PipelineOptions::default();
        let dv = |k| {
            assemble_les(
                &OrlikStrauchSpec::new(OsFamily::DualVerma, k, psi.clone()).unwrap(),
                &opts,
            )
            .unwrap()
        };
        let r = dv(4);
        assert_eq!(
            hom_dimension_bound(&TorusCharacter::section(-6), &r, 1, &psi),
            (0, 1)
        );
        assert_eq!(
            hom_dimension_bound(&TorusCharacter::section(4), &r, 0, &psi),
            (1, 1)
        );
        assert_eq!(
            hom_dimension_bound(&TorusCharacter::section(2), &r, 0, &psi),
            (0, 0)
        );
        let v = assemble_les(
            &OrlikStrauchSpec::new(OsFamily::Verma, 2, psi.clone()).unwrap(),
            &opts,
        )
        .unwrap();
        assert_eq!(
            hom_dimension_bound(&TorusCharacter::stalk(2), &v, 1, &psi),
            (1, 1)
        );
        assert_eq!(
            hom_dimension_bound_by(&v, 1, |c| c.weight == -4 || c.weight == 2),
            (2, 2)
        );
    }

    fn arb_relations() -> impl Strategy<Value = Vec<Relation>> {
        proptest::sample::subsequence(
            vec![
                Relation::holds(PsiEqPhi),
                Relation::fails(PsiDeltaEqPhiW),
                Relation::fails(PhiDeltaEqPhiW),
            ],
            0..=3,
        )
    }

    proptest! {
        #[test]
        fn verdict_ignores_declaration_order(rels in arb_relations(), seed in any::<u64>()) {
            let psi = opaque("psi");
            let mut shuffled = rels.clone();
            let n = shuffled.len();
            if n > 1 {
                shuffled.rotate_left((seed as usize) % n);
                shuffled.swap(0, n - 1);
            }
            let a = classify_ext(-4, 2, &psi, &psi, &rels);
            let b = classify_ext(-4, 2, &psi, &psi, &shuffled);
            prop_assert_eq!(a.map(|c| c.verdict), b.map(|c| c.verdict));
        }

        #[test]
        fn mismatched_weights_always_trivial(
            k in (-20i64..0).prop_map(|x| 2 * x),
            ell in (-10i64..10).prop_map(|x| 2 * x),
            v in -3i64..3,
            u in 1i64..5,
        ) {
            prop_assume!(k != ell && k != -(ell + 2));
            let psi = ch("psi", v, u, "a");
            let phi = ch("phi", -v, u + 1, "b");
            prop_assert_eq!(classify_ext(k, ell, &psi, &phi, &[]).unwrap().verdict, Verdict::Trivial);
        }

        #[test]
        fn hom_bound_ordered(k in (0i64..6).prop_map(|x| 2 * x), w in (-8i64..8).prop_map(|x| 2 * x), d in 0usize..2) {
            let psi = SmoothCharacter::trivial();
            let opts = PipelineOptions::default();
            for f in [OsFamily::Verma, OsFamily::DualVerma, OsFamily::Simple] {
                let r = assemble_les(&OrlikStrauchSpec::new(f, k, psi.clone()).unwrap(), &opts).unwrap();
                for src in [TorusCharacter::section(w), TorusCharacter::stalk(w)] {
                    let (lo, hi) = hom_dimension_bound(&src, &r, d, &psi);
                    let exact = r.degrees[d].jh_factors.iter()
                        .filter(|c| c.normalized(&psi) == src.normalized(&psi)).count();
                    prop_assert!(lo <= hi);
                    prop_assert_eq!(hi, exact);
                }
            }
        }
    }
}
