//! Cohomology of the one-dimensional nilpotent radicals `n = <X>` and
//! `nbar = <Y>` on weight modules.
//!
//! For a one-dimensional Lie algebra spanned by `u`, `H^0` is `ker u` and
//! `H^1` is `coker u` tensored with the dual line, whose weight is `-2` for
//! `n` and `+2` for `nbar`. Higher cohomology vanishes and is not computed.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{cokernel_basis, kernel, q, Subspace};
use crate::sl2mod::{
    check_bracket_relations, n_finite_dual, simple, Family, Sl2Op, Truncation, WeightModule,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    N,
    NBar,
}

impl Direction {
    pub fn op(self) -> Sl2Op {
        match self {
            Direction::N => Sl2Op::X,
            Direction::NBar => Sl2Op::Y,
        }
    }

    /// H-weight of the dual line `n^*` or `nbar^*`.
    pub fn dual_line_weight(self) -> i64 {
        -self.op().weight_shift()
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::N => "n",
            Direction::NBar => "nbar",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Integer polynomial `c0 + c1 i + c2 i^2` in a ladder index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LadderPolynomial {
    pub c0: i64,
    pub c1: i64,
    pub c2: i64,
}

impl LadderPolynomial {
    pub const fn new(c0: i64, c1: i64, c2: i64) -> Self {
        LadderPolynomial { c0, c1, c2 }
    }

    pub fn eval(&self, i: i64) -> i64 {
        self.c0 + self.c1 * i + self.c2 * i * i
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0 && self.c2 == 0
    }

    pub fn degree(&self) -> Option<u32> {
        match (self.c2, self.c1, self.c0) {
            (0, 0, 0) => None,
            (0, 0, _) => Some(0),
            (0, _, _) => Some(1),
            _ => Some(2),
        }
    }

    /// Integer roots, ascending and deduplicated. Panics on the zero
    /// polynomial.
    pub fn integer_roots(&self) -> Vec<i64> {
        let mut roots = match self.degree().expect("zero polynomial has every root") {
            0 => vec![],
            1 => {
                if self.c0 % self.c1 == 0 {
                    vec![-self.c0 / self.c1]
                } else {
                    vec![]
                }
            }
            _ => {
                let disc = self.c1 * self.c1 - 4 * self.c2 * self.c0;
                if disc < 0 {
                    vec![]
                } else {
                    let s = disc.isqrt();
                    if s * s != disc {
                        vec![]
                    } else {
                        [-self.c1 - s, -self.c1 + s]
                            .into_iter()
                            .filter(|n| n % (2 * self.c2) == 0)
                            .map(|n| n / (2 * self.c2))
                            .collect()
                    }
                }
            }
        };
        roots.sort_unstable();
        roots.dedup();
        roots
    }
}

impl fmt::Display for LadderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [(self.c2, "i^2"), (self.c1, "i"), (self.c0, "")];
        let mut first = true;
        for (c, var) in terms {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if a != 1 || var.is_empty() {
                write!(f, "{a}")?;
            }
            f.write_str(var)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Proof that a ladder operator has no kernel or cokernel beyond a fixed
/// basis index.
///
/// The operator sends the basis vector of index `i` to `coefficient(i)`
/// times the vector of index `i + index_step`. Kernel and cokernel can only
/// occur at roots of the coefficient (shifted by at most one step) or at
/// index 0, so nothing survives past `bound = max(roots) + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StabilizationCertificate {
    pub op: Option<Sl2Op>,
    pub coefficient: Option<LadderPolynomial>,
    pub index_step: i64,
    pub roots: Vec<i64>,
    pub bound: usize,
}

impl StabilizationCertificate {
    pub fn empty() -> Self {
        StabilizationCertificate {
            op: None,
            coefficient: None,
            index_step: 0,
            roots: Vec::new(),
            bound: 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.coefficient.is_none()
    }
}

/// Closed-form coefficient of `op` for the recognized ladder families, as
/// `(polynomial, index step)`.
fn closed_form(family: &Family, lambda: i64, op: Sl2Op) -> Option<(LadderPolynomial, i64)> {
    use Sl2Op::{X, Y};
    let p = LadderPolynomial::new;
    Some(match (family, op) {
        // X e_i = e_{i+1}, Y e_i = -i(lambda + i - 1) e_{i-1}
        (Family::Verma | Family::Simple, X) => (p(1, 0, 0), 1),
        (Family::Verma | Family::Simple, Y) => (p(0, 1 - lambda, -1), -1),
        // X e_i = -(i+1)(lambda+i) e_{i+1}, Y e_i = e_{i-1}
        (Family::DualVerma, X) => (p(-lambda, -lambda - 1, -1), 1),
        (Family::DualVerma, Y) => (p(1, 0, 0), -1),
        (Family::NFiniteDual(inner), _) => match (&**inner, op) {
            // X hat(e_i) = -hat(e_{i-1}), Y hat(e_i) = (i+1)(lambda+i) hat(e_{i+1})
            (Family::Verma | Family::Simple, X) => (p(-1, 0, 0), -1),
            (Family::Verma | Family::Simple, Y) => (p(lambda, lambda + 1, 1), 1),
            // X hat(e_i) = i(lambda+i-1) hat(e_{i-1}), Y hat(e_i) = -hat(e_{i+1})
            (Family::DualVerma, X) => (p(0, lambda - 1, 1), -1),
            (Family::DualVerma, Y) => (p(-1, 0, 0), 1),
            _ => return None,
        },
        _ => return None,
    })
}

/// Ladder geometry of a recognized family: `(lambda, weight step per index)`,
/// where `lambda` is the label weight of the underlying non-dual module.
fn ladder_geometry(m: &WeightModule) -> (i64, i64) {
    match m.family() {
        Family::NFiniteDual(_) => (-m.label_weight(), -2),
        _ => (m.label_weight(), 2),
    }
}

/// Ladder index of a weight in a recognized one-dimensional ladder.
pub fn ladder_index(m: &WeightModule, weight: i64) -> i64 {
    let (_, step) = ladder_geometry(m);
    (weight - m.label_weight()) / step
}

pub fn stabilization_certificate(
    m: &WeightModule,
    direction: Direction,
) -> Result<StabilizationCertificate> {
    if m.total_dim() == 0 {
        return Ok(StabilizationCertificate::empty());
    }
    let op = direction.op();
    let (lambda, step) = ladder_geometry(m);
    let (poly, index_step) = closed_form(m.family(), lambda, op)
        .ok_or_else(|| Error::UnsupportedFamily(m.family().to_string()))?;
    if poly.is_zero() {
        return Err(Error::UnsupportedFamily(format!(
            "{} (identically zero {op:?} coefficient)",
            m.family()
        )));
    }
    // The closed form must agree with every stored entry.
    for mu in m.weights() {
        let target = mu + op.weight_shift();
        if m.dim_at(mu) != 1 || m.dim_at(target) > 1 {
            return Err(Error::UnsupportedFamily(format!(
                "{} (weight spaces are not one-dimensional)",
                m.family()
            )));
        }
        if m.dim_at(target) == 0 || !m.op_defined_at(op, mu) {
            continue;
        }
        let i = (mu - m.label_weight()) / step;
        if m.block(op, mu).get(0, 0) != q(poly.eval(i)) {
            return Err(Error::InvalidInput(format!(
                "stored {op:?} entry at weight {mu} disagrees with the {} closed form",
                m.family()
            )));
        }
    }
    let roots = poly.integer_roots();
    let bound = roots.last().map_or(0, |&r| (r + 1).max(0) as usize);
    Ok(StabilizationCertificate {
        op: Some(op),
        coefficient: Some(poly),
        index_step,
        roots,
        bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CertificationPolicy {
    /// Refuse to answer unless truncation is certified.
    #[default]
    Certified,
    /// Return window-only results marked as not certified.
    WindowOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyResult {
    pub direction: Direction,
    /// Invariants per weight.
    pub h0: BTreeMap<i64, Subspace>,
    /// Coinvariants per weight, already shifted by `weight_shift`.
    pub h1: BTreeMap<i64, Subspace>,
    pub weight_shift: i64,
    pub certificate: Option<StabilizationCertificate>,
    pub certified: bool,
    /// Basis labels of representatives, keyed like `h0` and `h1`.
    pub h0_labels: BTreeMap<i64, Vec<String>>,
    pub h1_labels: BTreeMap<i64, Vec<String>>,
}

impl CohomologyResult {
    pub fn h0_dims(&self) -> BTreeMap<i64, usize> {
        self.h0.iter().map(|(&w, s)| (w, s.dim())).collect()
    }

    pub fn h1_dims(&self) -> BTreeMap<i64, usize> {
        self.h1.iter().map(|(&w, s)| (w, s.dim())).collect()
    }

    /// `H^1` dimensions keyed by weight before the dual-line shift.
    pub fn h1_dims_unshifted(&self) -> BTreeMap<i64, usize> {
        self.h1
            .iter()
            .map(|(&w, s)| (w - self.weight_shift, s.dim()))
            .collect()
    }

    pub fn total_h0(&self) -> usize {
        self.h0.values().map(Subspace::dim).sum()
    }

    pub fn total_h1(&self) -> usize {
        self.h1.values().map(Subspace::dim).sum()
    }
}

fn representative_labels(m: &WeightModule, mu: i64, s: &Subspace) -> Vec<String> {
    let labels = m.labels_at(mu);
    s.basis()
        .iter()
        .zip(s.pivots())
        .map(|(v, &p)| {
            let support = v.iter().filter(|x| !num_traits::Zero::is_zero(*x)).count();
            if support == 1 {
                labels[p].clone()
            } else {
                format!("{}+...", labels[p])
            }
        })
        .collect()
}

pub fn cohomology(m: &WeightModule, direction: Direction) -> Result<CohomologyResult> {
    cohomology_with(m, direction, CertificationPolicy::Certified)
}

pub fn cohomology_with(
    m: &WeightModule,
    direction: Direction,
    policy: CertificationPolicy,
) -> Result<CohomologyResult> {
    if !check_bracket_relations(m) {
        return Err(Error::InvalidInput(
            "module violates [X, Y] = H".to_string(),
        ));
    }
    let (certificate, certified) = match m.truncation() {
        Truncation::Finite => (stabilization_certificate(m, direction).ok(), true),
        Truncation::At(window) => match stabilization_certificate(m, direction) {
            Ok(c) if c.bound < window => (Some(c), true),
            Ok(c) => match policy {
                CertificationPolicy::Certified => {
                    return Err(Error::Uncertified {
                        bound: c.bound,
                        window,
                    })
                }
                CertificationPolicy::WindowOnly => (Some(c), false),
            },
            Err(e @ Error::UnsupportedFamily(_)) => match policy {
                CertificationPolicy::Certified => return Err(e),
                CertificationPolicy::WindowOnly => (None, false),
            },
            Err(e) => return Err(e),
        },
    };

    let op = direction.op();
    let shift = direction.dual_line_weight();
    let mut h0 = BTreeMap::new();
    let mut h1 = BTreeMap::new();
    let mut h0_labels = BTreeMap::new();
    let mut h1_labels = BTreeMap::new();
    for mu in m.weights() {
        if m.op_defined_at(op, mu) {
            let ker = kernel(&m.block(op, mu));
            if !ker.is_zero() {
                h0_labels.insert(mu, representative_labels(m, mu, &ker));
                h0.insert(mu, ker);
            }
        }
        if m.incoming_defined_at(op, mu) {
            let coker = cokernel_basis(&m.block(op, mu - op.weight_shift()));
            if !coker.is_zero() {
                h1_labels.insert(mu + shift, representative_labels(m, mu, &coker));
                h1.insert(mu + shift, coker);
            }
        }
    }
    Ok(CohomologyResult {
        direction,
        h0,
        h1,
        weight_shift: shift,
        certificate,
        certified,
        h0_labels,
        h1_labels,
    })
}

/// Checks that `n`-cohomology of the dual of `L(-k)` is one line at weight
/// `k` in degree 0 and one line at weight `-(k + 2)` in degree 1.
pub fn kostant_check(k: i64) -> Result<bool> {
    if k < 0 {
        return Err(Error::InvalidInput(format!(
            "Kostant check needs k >= 0, got {k}"
        )));
    }
    let r = cohomology(&n_finite_dual(&simple(-k)?), Direction::N)?;
    Ok(r.h0_dims() == BTreeMap::from([(k, 1)]) && r.h1_dims() == BTreeMap::from([(-k - 2, 1)]))
}
