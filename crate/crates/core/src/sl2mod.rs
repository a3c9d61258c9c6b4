//! Truncated weight-graded `sl2`-modules.
//!
//! A [`WeightModule`] stores its weight spaces and the action of the raising
//! operator `X` and the lowering operator `Y` as per-weight sparse blocks.
//! `H` is never stored: it acts on the weight-`mu` space by `mu`.
//!
//! Verma-type modules are infinite. They are cut off after basis index
//! `truncation`; the weight at which the cut happens is the module's *edge*,
//! and the operator pointing out of the window there is undefined rather
//! than zero.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{cokernel_basis, q, Rational, SparseMatrix};

/// Default number of basis vectors kept beyond the largest relevant index.
pub const DEFAULT_TRUNCATION_MARGIN: usize = 16;

/// Default truncation for modules built from weight `k`: `|k| + 16`.
pub fn default_truncation(k: i64) -> usize {
    k.unsigned_abs() as usize + DEFAULT_TRUNCATION_MARGIN
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sl2Op {
    X,
    Y,
}

impl Sl2Op {
    /// Weight shift of the operator: `[H, X] = 2X`, `[H, Y] = -2Y`.
    pub fn weight_shift(self) -> i64 {
        match self {
            Sl2Op::X => 2,
            Sl2Op::Y => -2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Verma,
    DualVerma,
    Simple,
    NFiniteDual(Box<Family>),
    Generic,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Verma => write!(f, "verma"),
            Family::DualVerma => write!(f, "dual-verma"),
            Family::Simple => write!(f, "simple"),
            Family::NFiniteDual(inner) => write!(f, "n-finite-dual({inner})"),
            Family::Generic => write!(f, "generic"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truncation {
    Finite,
    /// Highest basis index retained.
    At(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeSide {
    Top,
    Bottom,
}

/// The weight at which a truncated module is cut off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub weight: i64,
    pub side: EdgeSide,
}

impl Edge {
    fn flipped(self) -> Edge {
        Edge {
            weight: -self.weight,
            side: match self.side {
                EdgeSide::Top => EdgeSide::Bottom,
                EdgeSide::Bottom => EdgeSide::Top,
            },
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct WeightModule {
    family: Family,
    label_weight: i64,
    truncation: Truncation,
    edge: Option<Edge>,
    labels: BTreeMap<i64, Vec<String>>,
    act_x: BTreeMap<i64, SparseMatrix>,
    act_y: BTreeMap<i64, SparseMatrix>,
}

fn check_even(w: i64) -> Result<()> {
    if w % 2 != 0 {
        return Err(Error::OddWeight(w));
    }
    Ok(())
}

/// Ladder with one basis vector per weight, indexed `0..len` with
/// `weight(i) = label_weight + 2i`. Coefficient closures give the action on
/// `e_i`; entries whose target index falls outside `0..len` are dropped.
struct Ladder<FX, FY> {
    family: Family,
    label_weight: i64,
    len: usize,
    truncation: Truncation,
    prefix: &'static str,
    x: FX,
    y: FY,
}

impl<FX: Fn(i64) -> i64, FY: Fn(i64) -> i64> Ladder<FX, FY> {
    fn build(self) -> WeightModule {
        let weight = |i: usize| self.label_weight + 2 * i as i64;
        let mut labels = BTreeMap::new();
        let mut act_x = BTreeMap::new();
        let mut act_y = BTreeMap::new();
        for i in 0..self.len {
            labels.insert(weight(i), vec![format!("{}_{}", self.prefix, i)]);
            if i + 1 < self.len {
                let mut m = SparseMatrix::zero(1, 1);
                m.set(0, 0, q((self.x)(i as i64)));
                act_x.insert(weight(i), m);
            }
            if i > 0 {
                let mut m = SparseMatrix::zero(1, 1);
                m.set(0, 0, q((self.y)(i as i64)));
                act_y.insert(weight(i), m);
            }
        }
        let edge = match self.truncation {
            Truncation::Finite => None,
            Truncation::At(t) => Some(Edge {
                weight: weight(t),
                side: EdgeSide::Top,
            }),
        };
        WeightModule {
            family: self.family,
            label_weight: self.label_weight,
            truncation: self.truncation,
            edge,
            labels,
            act_x,
            act_y,
        }
    }
}

/// Verma module induced from the weight-`lambda` character of the lower
/// Borel: `e_i = X^i e_0` of weight `lambda + 2i`, `Y e_i = -i(lambda + i - 1) e_{i-1}`.
pub fn verma(lambda: i64, trunc: usize) -> Result<WeightModule> {
    check_even(lambda)?;
    Ok(Ladder {
        family: Family::Verma,
        label_weight: lambda,
        len: trunc + 1,
        truncation: Truncation::At(trunc),
        prefix: "e",
        x: |_| 1,
        y: |i: i64| -i * (lambda + i - 1),
    }
    .build())
}

/// Category-O dual of the Verma module: `Y e_i = e_{i-1}`,
/// `X e_i = -(i + 1)(lambda + i) e_{i+1}`.
///
/// `X` is the transpose of `Y` on `M(lambda)`; the sign is forced by
/// `[X, Y] = H`.
pub fn dual_verma(lambda: i64, trunc: usize) -> Result<WeightModule> {
    check_even(lambda)?;
    Ok(Ladder {
        family: Family::DualVerma,
        label_weight: lambda,
        len: trunc + 1,
        truncation: Truncation::At(trunc),
        prefix: "e",
        x: |i: i64| -(i + 1) * (lambda + i),
        y: |_| 1,
    }
    .build())
}

/// Finite-dimensional simple quotient `L(-k)` of `M(-k)`, of dimension `k + 1`.
pub fn simple(minus_k: i64) -> Result<WeightModule> {
    check_even(minus_k)?;
    if minus_k > 0 {
        return Err(Error::PositiveSimpleWeight(minus_k));
    }
    let lambda = minus_k;
    Ok(Ladder {
        family: Family::Simple,
        label_weight: lambda,
        len: (-minus_k) as usize + 1,
        truncation: Truncation::Finite,
        prefix: "e",
        x: |_| 1,
        y: |i: i64| -i * (lambda + i - 1),
    }
    .build())
}

fn hat(label: &str) -> String {
    match label.strip_prefix("hat(").and_then(|l| l.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("hat({label})"),
    }
}

/// The `n`-finite dual `Hom(M, K)^{n-inf}` with the action
/// `(tau f)(m) = f(-tau m)`.
///
/// The dual of the weight-`mu` space sits in weight `-mu`, and each action
/// block is the negated transpose of the corresponding block of `m`.
pub fn n_finite_dual(m: &WeightModule) -> WeightModule {
    let family = match &m.family {
        Family::NFiniteDual(inner) => (**inner).clone(),
        Family::Generic => Family::Generic,
        other => Family::NFiniteDual(Box::new(other.clone())),
    };
    let labels = m
        .labels
        .iter()
        .map(|(&w, ls)| (-w, ls.iter().map(|l| hat(l)).collect()))
        .collect();
    // X on the dual: V*_{-mu-2} -> V*_{-mu} is -(X_mu)^T, and Y symmetrically.
    let act_x = m
        .act_x
        .iter()
        .map(|(&mu, b)| (-mu - 2, b.transpose().neg()))
        .collect();
    let act_y = m
        .act_y
        .iter()
        .map(|(&mu, b)| (-mu + 2, b.transpose().neg()))
        .collect();
    WeightModule {
        family,
        label_weight: -m.label_weight,
        truncation: m.truncation,
        edge: m.edge.map(Edge::flipped),
        labels,
        act_x,
        act_y,
    }
}

impl WeightModule {
    /// Builds a module from explicit weight spaces and action blocks. The
    /// result is tagged [`Family::Generic`].
    pub fn generic(
        dims: &BTreeMap<i64, usize>,
        act_x: BTreeMap<i64, SparseMatrix>,
        act_y: BTreeMap<i64, SparseMatrix>,
        edge: Option<Edge>,
    ) -> Result<WeightModule> {
        let Some((&first, _)) = dims.iter().next() else {
            return Ok(WeightModule::zero());
        };
        for &w in dims.keys() {
            if (w - first) % 2 != 0 {
                return Err(Error::InvalidInput(format!(
                    "weights {first} and {w} have different parity"
                )));
            }
        }
        for (op, blocks) in [(Sl2Op::X, &act_x), (Sl2Op::Y, &act_y)] {
            for (&mu, b) in blocks {
                let src = dims.get(&mu).copied().unwrap_or(0);
                let dst = dims.get(&(mu + op.weight_shift())).copied().unwrap_or(0);
                if (b.rows(), b.cols()) != (dst, src) {
                    return Err(Error::InvalidInput(format!(
                        "{op:?} block at weight {mu} is {}x{}, expected {dst}x{src}",
                        b.rows(),
                        b.cols()
                    )));
                }
            }
        }
        let labels = dims
            .iter()
            .map(|(&w, &d)| (w, (0..d).map(|i| format!("v[{w}]_{i}")).collect()))
            .collect();
        Ok(WeightModule {
            family: Family::Generic,
            label_weight: first,
            truncation: if edge.is_some() {
                Truncation::At(dims.values().sum::<usize>().saturating_sub(1))
            } else {
                Truncation::Finite
            },
            edge,
            labels,
            act_x: act_x
                .into_iter()
                .filter(|(_, b)| b.rows() * b.cols() > 0)
                .collect(),
            act_y: act_y
                .into_iter()
                .filter(|(_, b)| b.rows() * b.cols() > 0)
                .collect(),
        })
    }

    pub fn zero() -> WeightModule {
        WeightModule {
            family: Family::Generic,
            label_weight: 0,
            truncation: Truncation::Finite,
            edge: None,
            labels: BTreeMap::new(),
            act_x: BTreeMap::new(),
            act_y: BTreeMap::new(),
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Weight of the basis vector labelled with index 0.
    pub fn label_weight(&self) -> i64 {
        self.label_weight
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn edge(&self) -> Option<Edge> {
        self.edge
    }

    pub fn is_finite(&self) -> bool {
        self.edge.is_none()
    }

    /// Weights with nonzero weight space, ascending.
    pub fn weights(&self) -> Vec<i64> {
        self.labels.keys().copied().collect()
    }

    pub fn dim_at(&self, mu: i64) -> usize {
        self.labels.get(&mu).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.labels.values().map(Vec::len).sum()
    }

    pub fn labels_at(&self, mu: i64) -> &[String] {
        self.labels.get(&mu).map_or(&[], Vec::as_slice)
    }

    /// Block of `op` from weight `mu` to weight `mu + shift`, as a
    /// `dim(mu + shift) x dim(mu)` matrix.
    pub fn block(&self, op: Sl2Op, mu: i64) -> SparseMatrix {
        let blocks = match op {
            Sl2Op::X => &self.act_x,
            Sl2Op::Y => &self.act_y,
        };
        blocks.get(&mu).cloned().unwrap_or_else(|| {
            SparseMatrix::zero(self.dim_at(mu + op.weight_shift()), self.dim_at(mu))
        })
    }

    /// False only for the operator pointing out of the truncation window at
    /// the edge weight, whose true value is not stored.
    pub fn op_defined_at(&self, op: Sl2Op, mu: i64) -> bool {
        match (self.edge, op) {
            (
                Some(Edge {
                    weight,
                    side: EdgeSide::Top,
                }),
                Sl2Op::X,
            )
            | (
                Some(Edge {
                    weight,
                    side: EdgeSide::Bottom,
                }),
                Sl2Op::Y,
            ) => mu != weight,
            _ => true,
        }
    }

    /// False when the weight `nu` may receive an image of `op` from a weight
    /// beyond the truncation window.
    pub fn incoming_defined_at(&self, op: Sl2Op, nu: i64) -> bool {
        match (self.edge, op) {
            (
                Some(Edge {
                    weight,
                    side: EdgeSide::Bottom,
                }),
                Sl2Op::X,
            )
            | (
                Some(Edge {
                    weight,
                    side: EdgeSide::Top,
                }),
                Sl2Op::Y,
            ) => nu != weight,
            _ => true,
        }
    }

    /// Overwrites one action entry. The module is retagged as generic.
    pub fn set_action_entry(&mut self, op: Sl2Op, mu: i64, row: usize, col: usize, v: Rational) {
        let mut b = self.block(op, mu);
        b.set(row, col, v);
        let blocks = match op {
            Sl2Op::X => &mut self.act_x,
            Sl2Op::Y => &mut self.act_y,
        };
        blocks.insert(mu, b);
        self.family = Family::Generic;
    }

    pub fn describe(&self) -> String {
        let base = |f: &Family, w: i64| match f {
            Family::Verma => format!("M({w})"),
            Family::DualVerma => format!("M({w})^vee"),
            Family::Simple => format!("L({w})"),
            _ => "generic".to_string(),
        };
        match &self.family {
            Family::NFiniteDual(inner) => {
                format!("Hom({}, K)^n-fin", base(inner, -self.label_weight))
            }
            f => base(f, self.label_weight),
        }
    }
}

impl fmt::Debug for WeightModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightModule")
            .field("family", &self.family)
            .field("label_weight", &self.label_weight)
            .field("truncation", &self.truncation)
            .field("edge", &self.edge)
            .field("weights", &self.weights())
            .finish()
    }
}

/// Checks `XY - YX = H` on every weight where all four composites are
/// stored.
pub fn check_bracket_relations(m: &WeightModule) -> bool {
    m.weights().into_iter().all(|mu| {
        let needed = [
            (Sl2Op::X, mu),
            (Sl2Op::Y, mu),
            (Sl2Op::X, mu - 2),
            (Sl2Op::Y, mu + 2),
        ];
        if needed
            .iter()
            .any(|&(op, w)| m.dim_at(w) > 0 && !m.op_defined_at(op, w))
        {
            return true;
        }
        let xy = m.block(Sl2Op::X, mu - 2).mul(&m.block(Sl2Op::Y, mu));
        let yx = m.block(Sl2Op::Y, mu + 2).mul(&m.block(Sl2Op::X, mu));
        xy.sub(&yx) == SparseMatrix::scalar(m.dim_at(mu), q(mu))
    })
}

/// A weight-preserving linear map between two weight modules.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    source: WeightModule,
    target: WeightModule,
    blocks: BTreeMap<i64, SparseMatrix>,
}

impl ModuleMap {
    pub fn new(
        source: WeightModule,
        target: WeightModule,
        blocks: BTreeMap<i64, SparseMatrix>,
    ) -> Result<ModuleMap> {
        for (&mu, b) in &blocks {
            if (b.rows(), b.cols()) != (target.dim_at(mu), source.dim_at(mu)) {
                return Err(Error::InvalidInput(format!(
                    "map block at weight {mu} has wrong shape"
                )));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            blocks,
        })
    }

    pub fn source(&self) -> &WeightModule {
        &self.source
    }

    pub fn target(&self) -> &WeightModule {
        &self.target
    }

    pub fn block(&self, mu: i64) -> SparseMatrix {
        self.blocks
            .get(&mu)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.target.dim_at(mu), self.source.dim_at(mu)))
    }

    /// Checks `f X = X f` and `f Y = Y f` blockwise wherever both modules
    /// store the operator.
    pub fn is_equivariant(&self) -> bool {
        self.source.weights().into_iter().all(|mu| {
            [Sl2Op::X, Sl2Op::Y].into_iter().all(|op| {
                let nu = mu + op.weight_shift();
                if !self.source.op_defined_at(op, mu) || !self.target.op_defined_at(op, mu) {
                    return true;
                }
                let lhs = self.target.block(op, mu).mul(&self.block(mu));
                let rhs = self.block(nu).mul(&self.source.block(op, mu));
                lhs == rhs
            })
        })
    }

    /// Per-weight dimension of the cokernel, over the target's weights.
    pub fn cokernel_dims(&self) -> BTreeMap<i64, usize> {
        self.target
            .weights()
            .into_iter()
            .map(|mu| (mu, cokernel_basis(&self.block(mu)).dim()))
            .collect()
    }
}

/// Embedding `M(k + 2) -> M(-k)` with `e'_j -> e_{k+1+j}`, for a target
/// truncated at `trunc`.
pub fn bgg_morphism(k: i64, trunc: usize) -> Result<ModuleMap> {
    check_even(k)?;
    if k < 0 {
        return Err(Error::InvalidInput(format!(
            "BGG morphism needs k >= 0, got {k}"
        )));
    }
    let seam = k as usize + 1;
    if trunc < seam + 1 {
        return Err(Error::TruncationTooSmall {
            need: seam + 1,
            have: trunc,
        });
    }
    let target = verma(-k, trunc)?;
    let mut source = verma(k + 2, trunc - seam)?;
    for (j, ls) in source.labels.values_mut().enumerate() {
        ls[0] = format!("e'_{j}");
    }
    let blocks = source
        .weights()
        .into_iter()
        .map(|mu| (mu, SparseMatrix::identity(1)))
        .collect();
    ModuleMap::new(source, target, blocks)
}

/// Quotient map `M(-k) -> L(-k)`, identity on `e_0..e_k`.
pub fn quotient_to_simple(k: i64, trunc: usize) -> Result<ModuleMap> {
    check_even(k)?;
    if k < 0 {
        return Err(Error::InvalidInput(format!(
            "simple quotient needs k >= 0, got {k}"
        )));
    }
    if trunc < k as usize + 1 {
        return Err(Error::TruncationTooSmall {
            need: k as usize + 1,
            have: trunc,
        });
    }
    let source = verma(-k, trunc)?;
    let target = simple(-k)?;
    let blocks = target
        .weights()
        .into_iter()
        .map(|mu| (mu, SparseMatrix::identity(1)))
        .collect();
    ModuleMap::new(source, target, blocks)
}

/// Entry of a one-dimensional-ladder block, for tests and reports.
pub fn ladder_entry(m: &WeightModule, op: Sl2Op, mu: i64) -> Option<Rational> {
    let b = m.block(op, mu);
    if b.rows() == 1 && b.cols() == 1 {
        Some(b.get(0, 0))
    } else {
        None
    }
}

/// Outcome of checking the BGG embedding `M(k + 2) -> M(-k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BggCheck {
    pub k: i64,
    pub truncation: usize,
    pub equivariant: bool,
    /// Nonzero cokernel dimensions by weight.
    pub cokernel_dims: BTreeMap<i64, usize>,
    pub simple_dims: BTreeMap<i64, usize>,
}

impl BggCheck {
    pub fn passed(&self) -> bool {
        self.equivariant && self.cokernel_dims == self.simple_dims
    }
}

pub fn bgg_check(k: i64, trunc: usize) -> Result<BggCheck> {
    let map = bgg_morphism(k, trunc)?;
    let l = simple(-k)?;
    let mut cokernel_dims = map.cokernel_dims();
    cokernel_dims.retain(|_, d| *d > 0);
    let simple_dims = l
        .weights()
        .into_iter()
        .map(|mu| (mu, l.dim_at(mu)))
        .collect();
    Ok(BggCheck {
        k,
        truncation: trunc,
        equivariant: map.is_equivariant(),
        cokernel_dims,
        simple_dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn is_zero_entry(v: &Option<Rational>) -> bool {
        v.as_ref().is_none_or(Zero::is_zero)
    }

    fn entry(m: &WeightModule, op: Sl2Op, mu: i64) -> i64 {
        let v = ladder_entry(m, op, mu).unwrap();
        assert!(v.is_integer());
        v.to_integer().try_into().unwrap()
    }

    #[test]
    fn verma_formulas_match_minus_k_specialization() {
        for k in [0i64, 2, 4, 6] {
            let m = verma(-k, 12).unwrap();
            for i in 1..=12i64 {
                let mu = -k + 2 * i;
                assert_eq!(entry(&m, Sl2Op::Y, mu), i * (k - (i - 1)), "k={k} i={i}");
            }
            for i in 0..12i64 {
                assert_eq!(entry(&m, Sl2Op::X, -k + 2 * i), 1);
            }
            assert!(is_zero_entry(&ladder_entry(&m, Sl2Op::Y, -k)));
        }
    }

    #[test]
    fn verma_minus_two_at_index_three() {
        let m = verma(-2, 6).unwrap();
        assert_eq!(entry(&m, Sl2Op::Y, -2 + 6), 0);
        assert!(check_bracket_relations(&m));
    }

    #[test]
    fn odd_weights_rejected() {
        assert_eq!(verma(3, 4).unwrap_err(), Error::OddWeight(3));
        assert_eq!(dual_verma(-1, 4).unwrap_err(), Error::OddWeight(-1));
        assert_eq!(simple(-3).unwrap_err(), Error::OddWeight(-3));
    }

    #[test]
    fn dual_verma_formulas() {
        let k = 4;
        let m = dual_verma(-k, 10).unwrap();
        for i in 0..10i64 {
            let mu = -k + 2 * i;
            assert_eq!(entry(&m, Sl2Op::X, mu), -(i + 1) * (-k + i));
        }
        assert_eq!(entry(&m, Sl2Op::X, -k + 2 * k), 0);
        for i in 1..=10i64 {
            assert_eq!(entry(&m, Sl2Op::Y, -k + 2 * i), 1);
        }
    }

    #[test]
    fn dual_verma_contains_finite_sub() {
        // span{e_0..e_k} is X- and Y-stable inside M(-k)^vee
        let k = 6;
        let m = dual_verma(-k, 12).unwrap();
        assert_eq!(entry(&m, Sl2Op::X, k), 0);
        for i in 0..k {
            assert_ne!(entry(&m, Sl2Op::X, -k + 2 * i), 0);
        }
    }

    #[test]
    fn simple_modules() {
        let l0 = simple(0).unwrap();
        assert_eq!(l0.total_dim(), 1);
        assert!(l0.block(Sl2Op::X, 0).is_zero());
        assert!(l0.block(Sl2Op::Y, 0).is_zero());

        let l2 = simple(-2).unwrap();
        assert_eq!(l2.weights(), vec![-2, 0, 2]);
        // Y e_3 = 3(2 - 2) e_2 vanishes in M(-2), so the quotient is well defined
        assert_eq!(entry(&verma(-2, 5).unwrap(), Sl2Op::Y, 4), 0);

        for k in [0i64, 2, 4, 8] {
            let l = simple(-k).unwrap();
            let expected: Vec<i64> = (0..=k / 2).map(|j| -k + 4 * j).collect();
            let mut ws = l.weights();
            ws.retain(|w| (w + k) % 4 == 0);
            assert_eq!(ws, expected);
            assert_eq!(l.weights(), (-k..=k).step_by(2).collect::<Vec<_>>());
            assert!(l.weights().iter().all(|&w| l.dim_at(w) == 1));
        }
        assert_eq!(simple(2).unwrap_err(), Error::PositiveSimpleWeight(2));
    }

    #[test]
    fn verma_dual_formulas() {
        for k in [0i64, 2, 4] {
            let d = n_finite_dual(&verma(-k, 10).unwrap());
            for i in 0..=10i64 {
                let w = k - 2 * i;
                assert_eq!(d.labels_at(w), &[format!("hat(e_{i})")]);
                if i >= 1 {
                    assert_eq!(entry(&d, Sl2Op::X, w), -1);
                }
                if i < 10 {
                    assert_eq!(entry(&d, Sl2Op::Y, w), -(i + 1) * (k - i));
                }
            }
        }
    }

    #[test]
    fn dual_verma_dual_formulas() {
        for k in [0i64, 2, 4] {
            let d = n_finite_dual(&dual_verma(-k, 10).unwrap());
            for i in 0..=10i64 {
                let w = k - 2 * i;
                if i >= 1 {
                    assert_eq!(entry(&d, Sl2Op::X, w), i * (-k + (i - 1)));
                }
                if i < 10 {
                    assert_eq!(entry(&d, Sl2Op::Y, w), -1);
                }
            }
        }
    }

    #[test]
    fn double_dual_is_identity() {
        for k in [0, 2, 4] {
            let l = simple(-k).unwrap();
            assert_eq!(n_finite_dual(&n_finite_dual(&l)), l);
        }
        let v = verma(-4, 9).unwrap();
        assert_eq!(n_finite_dual(&n_finite_dual(&v)), v);
    }

    #[test]
    fn bracket_relations_hold_for_constructors() {
        for lambda in [-8i64, -4, -2, 0, 2, 6] {
            for t in [0usize, 1, 3, 10] {
                assert!(check_bracket_relations(&verma(lambda, t).unwrap()));
                assert!(check_bracket_relations(&dual_verma(lambda, t).unwrap()));
                assert!(check_bracket_relations(&n_finite_dual(
                    &verma(lambda, t).unwrap()
                )));
                assert!(check_bracket_relations(&n_finite_dual(
                    &dual_verma(lambda, t).unwrap()
                )));
            }
        }
        assert!(check_bracket_relations(&verma(-4, 10).unwrap()));
        assert!(check_bracket_relations(&WeightModule::zero()));
    }

    #[test]
    fn corrupted_entry_breaks_bracket() {
        let mut m = verma(-4, 10).unwrap();
        let old = ladder_entry(&m, Sl2Op::Y, 2).unwrap();
        m.set_action_entry(Sl2Op::Y, 2, 0, 0, old + q(1));
        assert_eq!(m.family(), &Family::Generic);
        assert!(!check_bracket_relations(&m));
    }

    #[test]
    fn y_coefficient_roots_of_verma() {
        // -i(-k + i - 1) vanishes only at i = 0 and i = k + 1
        for k in [0i64, 2, 4, 6] {
            let m = verma(-k, 20).unwrap();
            for i in 1..=20i64 {
                let zero = is_zero_entry(&ladder_entry(&m, Sl2Op::Y, -k + 2 * i));
                assert_eq!(zero, i == k + 1, "k={k} i={i}");
            }
        }
    }

    #[test]
    fn truncation_coherence() {
        let small = verma(-4, 6).unwrap();
        let big = verma(-4, 13).unwrap();
        for mu in small.weights() {
            assert_eq!(big.labels_at(mu), small.labels_at(mu));
            if small.op_defined_at(Sl2Op::X, mu) {
                assert_eq!(big.block(Sl2Op::X, mu), small.block(Sl2Op::X, mu));
            }
            assert_eq!(big.block(Sl2Op::Y, mu), small.block(Sl2Op::Y, mu));
        }
    }

    #[test]
    fn bgg_embedding() {
        for k in [0i64, 2, 4, 12] {
            let f = bgg_morphism(k, k as usize + 8).unwrap();
            assert!(f.is_equivariant());
            // seam: Y e_{k+1} = 0 in M(-k)
            assert!(is_zero_entry(&ladder_entry(f.target(), Sl2Op::Y, k + 2)));
            let simple_dims: BTreeMap<i64, usize> = simple(-k)
                .unwrap()
                .weights()
                .into_iter()
                .map(|w| (w, 1))
                .collect();
            let coker: BTreeMap<i64, usize> = f
                .cokernel_dims()
                .into_iter()
                .filter(|&(_, d)| d > 0)
                .collect();
            assert_eq!(coker, simple_dims);
        }
        let f0 = bgg_morphism(0, 2).unwrap();
        assert_eq!(f0.source().labels_at(2), &["e'_0".to_string()]);
        assert_eq!(f0.target().labels_at(2), &["e_1".to_string()]);
        assert!(matches!(
            bgg_morphism(4, 5),
            Err(Error::TruncationTooSmall { need: 6, have: 5 })
        ));
    }

    #[test]
    fn shifted_bgg_is_not_equivariant() {
        let f = bgg_morphism(2, 10).unwrap();
        let shifted: BTreeMap<i64, SparseMatrix> = f
            .source()
            .weights()
            .into_iter()
            .map(|mu| (mu, SparseMatrix::identity(1)))
            .collect();
        let g = ModuleMap::new(verma(2, 9).unwrap(), f.target().clone(), shifted).unwrap();
        assert!(!g.is_equivariant());
    }

    #[test]
    fn quotient_map_is_equivariant() {
        for k in [0i64, 2, 6] {
            let f = quotient_to_simple(k, k as usize + 6).unwrap();
            assert!(f.is_equivariant());
        }
    }

    #[test]
    fn generic_rejects_bad_shapes() {
        let dims = BTreeMap::from([(0, 1), (2, 1)]);
        let x = BTreeMap::from([(0, SparseMatrix::zero(2, 1))]);
        assert!(WeightModule::generic(&dims, x, BTreeMap::new(), None).is_err());
        let dims = BTreeMap::from([(0, 1), (1, 1)]);
        assert!(WeightModule::generic(&dims, BTreeMap::new(), BTreeMap::new(), None).is_err());
    }

    #[test]
    fn bgg_check_passes_and_reports_simple_weights() {
        for k in [0, 2, 6] {
            let c = bgg_check(k, default_truncation(k)).unwrap();
            assert!(c.passed());
            let expected: BTreeMap<i64, usize> = (0..=k).map(|i| (-k + 2 * i, 1)).collect();
            assert_eq!(c.cokernel_dims, expected);
        }
        assert!(bgg_check(4, 5).is_err());
    }
}
