//! The central data structure: a finite-dimensional algebra-and-coalgebra
//! with an action and coaction of a finite abelian group, together with the
//! machinery to verify every defining axiom exhaustively, solve for
//! antipodes, enumerate grouplike elements, and compute centers, integrals,
//! and the dual-pairing bilinear form.
//!
//! Structure constants are stored sparsely: most objects built here have
//! quasi-monomial products (a product of two basis vectors is a scalar times
//! a single basis vector), and the scans exploit that.

use crate::cyclo::{Cyc, CycField};
use crate::finite::FiniteGroup;
use crate::linalg::Matrix;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("structure tables are malformed: {0}")]
    Shape(String),
    #[error("no antipode exists: {0}")]
    NoAntipode(String),
    #[error("antipode equation is underdetermined: {0}")]
    AmbiguousSolution(String),
    #[error("antipode is required but absent")]
    MissingAntipode,
    #[error("coalgebra is outside the supported class: {0}")]
    UnsupportedCoalgebra(String),
}

// ---------------------------------------------------------------------------
// sparse vectors
// ---------------------------------------------------------------------------

/// One coordinate of a sparse vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub idx: usize,
    pub coef: Cyc,
}

/// A sparse vector: terms sorted by index, no zero coefficients.
pub type SparseVec = Vec<Term>;

/// Sorts, merges duplicate indices, and drops zeros.
pub fn sparse_normalize(mut terms: Vec<Term>) -> SparseVec {
    terms.sort_by_key(|t| t.idx);
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        if t.coef.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.idx == t.idx => {
                last.coef = &last.coef + &t.coef;
                if last.coef.is_zero() {
                    out.pop();
                }
            }
            _ => out.push(t),
        }
    }
    out
}

pub fn sparse_add(a: &[Term], b: &[Term]) -> SparseVec {
    let mut terms = a.to_vec();
    terms.extend_from_slice(b);
    sparse_normalize(terms)
}

pub fn sparse_scale(a: &[Term], c: &Cyc) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter()
        .map(|t| Term {
            idx: t.idx,
            coef: &t.coef * c,
        })
        .collect()
}

pub fn sparse_single(idx: usize, coef: Cyc) -> SparseVec {
    if coef.is_zero() {
        Vec::new()
    } else {
        vec![Term { idx, coef }]
    }
}

pub fn sparse_to_dense(dim: usize, a: &[Term], field: &Arc<CycField>) -> Vec<Cyc> {
    let mut out = vec![field.zero(); dim];
    for t in a {
        out[t.idx] = t.coef.clone();
    }
    out
}

pub fn sparse_from_dense(v: &[Cyc]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(idx, c)| Term {
            idx,
            coef: c.clone(),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// the main structure
// ---------------------------------------------------------------------------

/// A finite-dimensional bialgebra-with-antipode carrying an action and a
/// coaction of the group algebra of a finite abelian group. When that group
/// is trivial, this is an ordinary Hopf algebra; otherwise the bialgebra
/// axiom is the braided one determined by the action and coaction.
#[derive(Debug, Clone)]
pub struct YdHopf {
    field: Arc<CycField>,
    dim: usize,
    /// The acting group C; its group algebra plays the role of the base
    /// Hopf algebra.
    hgroup: FiniteGroup,
    names: Vec<String>,
    /// `mult[i * dim + j]` is the product of basis vectors i and j.
    mult: Vec<SparseVec>,
    unit: SparseVec,
    /// `comult[i]` lives in the tensor square, index `j * dim + k`.
    comult: Vec<SparseVec>,
    counit: Vec<Cyc>,
    /// `antipode[j]` is the image of basis vector j, when known.
    antipode: Option<Vec<SparseVec>>,
    /// `action[c][i]` is group element c acting on basis vector i.
    action: Vec<Vec<SparseVec>>,
    /// `coaction[i]` lives in the tensor product with the group algebra,
    /// index `c * dim + j`.
    coaction: Vec<SparseVec>,
}

/// A single axiom violation, with enough coordinates to reproduce it.
#[derive(Debug, Clone)]
pub struct CheckFailure {
    pub law: &'static str,
    pub location: String,
    pub detail: String,
}

/// Outcome of a verification run: which laws were checked, and any
/// violations found (capped per law, with exact totals).
#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checked: Vec<&'static str>,
    pub failures: Vec<CheckFailure>,
    pub failure_total: usize,
    pub exhaustive: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure_total == 0
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.checked.extend(other.checked);
        self.failures.extend(other.failures);
        self.failure_total += other.failure_total;
        self.exhaustive &= other.exhaustive;
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("ok ({} laws)", self.checked.len())
        } else {
            let mut s = format!(
                "{} violations across {} laws:",
                self.failure_total,
                self.failures
                    .iter()
                    .map(|f| f.law)
                    .collect::<std::collections::HashSet<_>>()
                    .len()
            );
            for f in self.failures.iter().take(12) {
                s.push_str(&format!("\n  [{}] at {}: {}", f.law, f.location, f.detail));
            }
            if self.failure_total > 12 {
                s.push_str(&format!("\n  ... and {} more", self.failure_total - 12));
            }
            s
        }
    }
}

const FAILURE_CAP_PER_LAW: usize = 8;
const EXHAUSTIVE_DIM_LIMIT: usize = 512;
const SAMPLED_TRIPLES: usize = 200_000;

struct FailureSink {
    law: &'static str,
    kept: Vec<CheckFailure>,
    total: usize,
}

impl FailureSink {
    fn new(law: &'static str) -> FailureSink {
        FailureSink {
            law,
            kept: Vec::new(),
            total: 0,
        }
    }

    fn push(&mut self, location: String, detail: String) {
        self.total += 1;
        if self.kept.len() < FAILURE_CAP_PER_LAW {
            self.kept.push(CheckFailure {
                law: self.law,
                location,
                detail,
            });
        }
    }

    fn drain_into(self, report: &mut VerifyReport) {
        report.checked.push(self.law);
        report.failure_total += self.total;
        report.failures.extend(self.kept);
    }
}

impl YdHopf {
    /// Builds the structure after shape validation (lengths and index
    /// ranges). Axioms are checked separately by [`YdHopf::verify`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: Arc<CycField>,
        hgroup: FiniteGroup,
        names: Vec<String>,
        mult: Vec<SparseVec>,
        unit: SparseVec,
        comult: Vec<SparseVec>,
        counit: Vec<Cyc>,
        antipode: Option<Vec<SparseVec>>,
        action: Vec<Vec<SparseVec>>,
        coaction: Vec<SparseVec>,
    ) -> Result<YdHopf, HopfError> {
        let dim = names.len();
        if dim == 0 {
            return Err(HopfError::Shape("dimension must be positive".into()));
        }
        if !hgroup.is_abelian() {
            return Err(HopfError::Shape("acting group must be abelian".into()));
        }
        let check_vec = |v: &SparseVec, bound: usize, what: &str| -> Result<(), HopfError> {
            for t in v {
                if t.idx >= bound {
                    return Err(HopfError::Shape(format!("{what}: index {} out of range", t.idx)));
                }
            }
            if v.windows(2).any(|w| w[0].idx >= w[1].idx) {
                return Err(HopfError::Shape(format!("{what}: terms not sorted")));
            }
            Ok(())
        };
        if mult.len() != dim * dim {
            return Err(HopfError::Shape("multiplication table has wrong length".into()));
        }
        for v in &mult {
            check_vec(v, dim, "mult")?;
        }
        check_vec(&unit, dim, "unit")?;
        if comult.len() != dim || counit.len() != dim {
            return Err(HopfError::Shape("comultiplication or counit has wrong length".into()));
        }
        for v in &comult {
            check_vec(v, dim * dim, "comult")?;
        }
        if let Some(s) = &antipode {
            if s.len() != dim {
                return Err(HopfError::Shape("antipode table has wrong length".into()));
            }
            for v in s {
                check_vec(v, dim, "antipode")?;
            }
        }
        if action.len() != hgroup.order() || action.iter().any(|a| a.len() != dim) {
            return Err(HopfError::Shape("action table has wrong shape".into()));
        }
        for a in &action {
            for v in a {
                check_vec(v, dim, "action")?;
            }
        }
        if coaction.len() != dim {
            return Err(HopfError::Shape("coaction table has wrong length".into()));
        }
        for v in &coaction {
            check_vec(v, hgroup.order() * dim, "coaction")?;
        }
        Ok(YdHopf {
            field,
            dim,
            hgroup,
            names,
            mult,
            unit,
            comult,
            counit,
            antipode,
            action,
            coaction,
        })
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn hgroup(&self) -> &FiniteGroup {
        &self.hgroup
    }
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
    pub fn unit_vec(&self) -> &SparseVec {
        &self.unit
    }
    pub fn counit_coef(&self, i: usize) -> &Cyc {
        &self.counit[i]
    }
    pub fn mult_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim + j]
    }
    pub fn comult_basis(&self, i: usize) -> &SparseVec {
        &self.comult[i]
    }
    pub fn coaction_basis(&self, i: usize) -> &SparseVec {
        &self.coaction[i]
    }
    pub fn action_basis(&self, c: usize, i: usize) -> &SparseVec {
        &self.action[c][i]
    }
    pub fn antipode_table(&self) -> Option<&Vec<SparseVec>> {
        self.antipode.as_ref()
    }
    pub fn set_antipode(&mut self, table: Vec<SparseVec>) {
        self.antipode = Some(table);
    }

    /// Whether the acting group is trivial, i.e. the object is an ordinary
    /// Hopf algebra.
    pub fn is_ordinary(&self) -> bool {
        self.hgroup.order() == 1
    }

    pub fn describe_tensor(&self, pair_idx: usize) -> String {
        format!(
            "{} (x) {}",
            self.names[pair_idx / self.dim],
            self.names[pair_idx % self.dim]
        )
    }

    // -- linear extensions ---------------------------------------------------

    pub fn mul(&self, x: &[Term], y: &[Term]) -> SparseVec {
        let mut acc = Vec::new();
        for tx in x {
            for ty in y {
                let c = &tx.coef * &ty.coef;
                for t in self.mult_basis(tx.idx, ty.idx) {
                    acc.push(Term {
                        idx: t.idx,
                        coef: &c * &t.coef,
                    });
                }
            }
        }
        sparse_normalize(acc)
    }

    pub fn comult_vec(&self, x: &[Term]) -> SparseVec {
        let mut acc = Vec::new();
        for tx in x {
            for t in &self.comult[tx.idx] {
                acc.push(Term {
                    idx: t.idx,
                    coef: &tx.coef * &t.coef,
                });
            }
        }
        sparse_normalize(acc)
    }

    pub fn counit_vec(&self, x: &[Term]) -> Cyc {
        let mut acc = self.field.zero();
        for t in x {
            if !self.counit[t.idx].is_zero() {
                acc = &acc + &(&t.coef * &self.counit[t.idx]);
            }
        }
        acc
    }

    pub fn act(&self, c: usize, x: &[Term]) -> SparseVec {
        let mut acc = Vec::new();
        for tx in x {
            for t in &self.action[c][tx.idx] {
                acc.push(Term {
                    idx: t.idx,
                    coef: &tx.coef * &t.coef,
                });
            }
        }
        sparse_normalize(acc)
    }

    pub fn coact(&self, x: &[Term]) -> SparseVec {
        let mut acc = Vec::new();
        for tx in x {
            for t in &self.coaction[tx.idx] {
                acc.push(Term {
                    idx: t.idx,
                    coef: &tx.coef * &t.coef,
                });
            }
        }
        sparse_normalize(acc)
    }

    pub fn antipode_vec(&self, x: &[Term]) -> Result<SparseVec, HopfError> {
        let table = self.antipode.as_ref().ok_or(HopfError::MissingAntipode)?;
        let mut acc = Vec::new();
        for tx in x {
            for t in &table[tx.idx] {
                acc.push(Term {
                    idx: t.idx,
                    coef: &tx.coef * &t.coef,
                });
            }
        }
        Ok(sparse_normalize(acc))
    }

    /// Table of the inverse of the antipode, stored like the antipode itself:
    /// entry `j` is the image of basis vector `j`.
    pub fn antipode_inverse(&self) -> Result<Vec<SparseVec>, HopfError> {
        let table = self.antipode.as_ref().ok_or(HopfError::MissingAntipode)?;
        let mut m = Matrix::zero(&self.field, self.dim, self.dim);
        for (j, col) in table.iter().enumerate() {
            for t in col {
                *m.at_mut(t.idx, j) = t.coef.clone();
            }
        }
        let inv = m
            .inverse()
            .ok_or_else(|| HopfError::NoAntipode("antipode is not invertible".into()))?;
        let mut out = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut col = Vec::new();
            for i in 0..self.dim {
                let c = inv.at(i, j);
                if !c.is_zero() {
                    col.push(Term {
                        idx: i,
                        coef: c.clone(),
                    });
                }
            }
            out.push(sparse_normalize(col));
        }
        Ok(out)
    }

    /// Tensor product of two sparse vectors, index `i * dim + j`.
    pub fn tensor(&self, x: &[Term], y: &[Term]) -> SparseVec {
        let mut acc = Vec::with_capacity(x.len() * y.len());
        for tx in x {
            for ty in y {
                acc.push(Term {
                    idx: tx.idx * self.dim + ty.idx,
                    coef: &tx.coef * &ty.coef,
                });
            }
        }
        sparse_normalize(acc)
    }

    /// The braiding on the tensor square: v ⊗ w ↦ (v¹ → w) ⊗ v², computed
    /// from the coaction of the first leg and the action on the second.
    pub fn braiding(&self, xw: &[Term]) -> SparseVec {
        let mut acc = Vec::new();
        for t in xw {
            let (i, j) = (t.idx / self.dim, t.idx % self.dim);
            for ct in &self.coaction[i] {
                let (c, i2) = (ct.idx / self.dim, ct.idx % self.dim);
                let d = &t.coef * &ct.coef;
                for at in &self.action[c][j] {
                    acc.push(Term {
                        idx: at.idx * self.dim + i2,
                        coef: &d * &at.coef,
                    });
                }
            }
        }
        sparse_normalize(acc)
    }

    /// The inverse braiding: w ⊗ v ↦ v² ⊗ (v¹⁻¹ → w), where v¹⁻¹ acts
    /// through the group inverse.
    pub fn braiding_inverse(&self, xw: &[Term]) -> SparseVec {
        let mut acc = Vec::new();
        for t in xw {
            let (k, j) = (t.idx / self.dim, t.idx % self.dim);
            for ct in &self.coaction[j] {
                let (c, j2) = (ct.idx / self.dim, ct.idx % self.dim);
                let cinv = self.hgroup.inv(c);
                let d = &t.coef * &ct.coef;
                for at in &self.action[cinv][k] {
                    acc.push(Term {
                        idx: j2 * self.dim + at.idx,
                        coef: &d * &at.coef,
                    });
                }
            }
        }
        sparse_normalize(acc)
    }

    // -- verification ---------------------------------------------------------

    /// Runs the full axiom suite: algebra, coalgebra, module and comodule
    /// laws, compatibility of action and coaction, the braided bialgebra
    /// axiom, equivariance of all structure maps, braiding invertibility,
    /// and both antipode laws when an antipode is stored.
    pub fn verify(&self) -> VerifyReport {
        let mut report = VerifyReport {
            exhaustive: true,
            ..Default::default()
        };
        self.check_associativity(&mut report);
        self.check_unit(&mut report);
        self.check_coassociativity(&mut report);
        self.check_counit(&mut report);
        self.check_bialgebra_scalars(&mut report);
        self.check_module(&mut report);
        self.check_module_algebra(&mut report);
        self.check_comodule(&mut report);
        self.check_comodule_algebra(&mut report);
        self.check_yd_compatibility(&mut report);
        self.check_comult_equivariance(&mut report);
        self.check_counit_equivariance(&mut report);
        self.check_braided_bialgebra(&mut report);
        self.check_braiding_invertible(&mut report);
        if self.antipode.is_some() {
            self.check_antipode_laws(&mut report);
            self.check_antipode_equivariance(&mut report);
        }
        report
    }

    fn check_associativity(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("algebra.associativity");
        let dim = self.dim;
        if dim <= EXHAUSTIVE_DIM_LIMIT {
            let bad: Vec<(usize, usize, usize)> = (0..dim)
                .into_par_iter()
                .flat_map_iter(|i| {
                    let mut local = Vec::new();
                    for j in 0..dim {
                        let ij = self.mult_basis(i, j).clone();
                        for k in 0..dim {
                            let lhs = self.mul(&ij, &sparse_single(k, self.field.one()));
                            let rhs = self.mul(
                                &sparse_single(i, self.field.one()),
                                self.mult_basis(j, k),
                            );
                            if lhs != rhs {
                                local.push((i, j, k));
                            }
                        }
                    }
                    local
                })
                .collect();
            for (i, j, k) in bad {
                sink.push(
                    format!("({}, {}, {})", self.names[i], self.names[j], self.names[k]),
                    "(xy)z != x(yz)".into(),
                );
            }
        } else {
            report.exhaustive = false;
            let mut state = 0x9E3779B97F4A7C15u64;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % self.dim as u64) as usize
            };
            for _ in 0..SAMPLED_TRIPLES {
                let (i, j, k) = (next(), next(), next());
                let lhs = self.mul(self.mult_basis(i, j), &sparse_single(k, self.field.one()));
                let rhs = self.mul(&sparse_single(i, self.field.one()), self.mult_basis(j, k));
                if lhs != rhs {
                    sink.push(
                        format!("({}, {}, {})", self.names[i], self.names[j], self.names[k]),
                        "(xy)z != x(yz) [sampled scan]".into(),
                    );
                }
            }
        }
        sink.drain_into(report);
    }

    fn check_unit(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("algebra.unit");
        for i in 0..self.dim {
            let b = sparse_single(i, self.field.one());
            if self.mul(&self.unit, &b) != b {
                sink.push(self.names[i].clone(), "1x != x".into());
            }
            if self.mul(&b, &self.unit) != b {
                sink.push(self.names[i].clone(), "x1 != x".into());
            }
        }
        sink.drain_into(report);
    }

    fn check_coassociativity(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("coalgebra.coassociativity");
        let dim = self.dim;
        for i in 0..dim {
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for t in &self.comult[i] {
                let (j, k) = (t.idx / dim, t.idx % dim);
                for u in &self.comult[j] {
                    let (a, b) = (u.idx / dim, u.idx % dim);
                    lhs.push(Term {
                        idx: (a * dim + b) * dim + k,
                        coef: &t.coef * &u.coef,
                    });
                }
                for u in &self.comult[k] {
                    let (c, f) = (u.idx / dim, u.idx % dim);
                    rhs.push(Term {
                        idx: (j * dim + c) * dim + f,
                        coef: &t.coef * &u.coef,
                    });
                }
            }
            if sparse_normalize(lhs) != sparse_normalize(rhs) {
                sink.push(self.names[i].clone(), "(D(x)id)D != (id(x)D)D".into());
            }
        }
        sink.drain_into(report);
    }

    fn check_counit(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("coalgebra.counit");
        for i in 0..self.dim {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for t in &self.comult[i] {
                let (j, k) = (t.idx / self.dim, t.idx % self.dim);
                if !self.counit[j].is_zero() {
                    left.push(Term {
                        idx: k,
                        coef: &t.coef * &self.counit[j],
                    });
                }
                if !self.counit[k].is_zero() {
                    right.push(Term {
                        idx: j,
                        coef: &t.coef * &self.counit[k],
                    });
                }
            }
            let expected = sparse_single(i, self.field.one());
            if sparse_normalize(left) != expected {
                sink.push(self.names[i].clone(), "(eps(x)id)D != id".into());
            }
            if sparse_normalize(right) != expected {
                sink.push(self.names[i].clone(), "(id(x)eps)D != id".into());
            }
        }
        sink.drain_into(report);
    }

    fn check_bialgebra_scalars(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("bialgebra.counit-and-unit");
        if !self.counit_vec(&self.unit).is_one() {
            sink.push("1".into(), "eps(1) != 1".into());
        }
        let unit_tensor = self.tensor(&self.unit, &self.unit);
        if self.comult_vec(&self.unit) != unit_tensor {
            sink.push("1".into(), "D(1) != 1(x)1".into());
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let prod_counit = self.counit_vec(self.mult_basis(i, j));
                let expected = &self.counit[i] * &self.counit[j];
                if prod_counit != expected {
                    sink.push(
                        format!("({}, {})", self.names[i], self.names[j]),
                        "eps(xy) != eps(x)eps(y)".into(),
                    );
                }
            }
        }
        sink.drain_into(report);
    }

    fn check_module(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("module.laws");
        let e = self.hgroup.identity();
        for i in 0..self.dim {
            let b = sparse_single(i, self.field.one());
            if self.act(e, &b) != b {
                sink.push(self.names[i].clone(), "identity does not act trivially".into());
            }
        }
        for c1 in self.hgroup.elements() {
            for c2 in self.hgroup.elements() {
                let c12 = self.hgroup.mul(c1, c2);
                for i in 0..self.dim {
                    let b = sparse_single(i, self.field.one());
                    let lhs = self.act(c1, &self.act(c2, &b));
                    let rhs = self.act(c12, &b);
                    if lhs != rhs {
                        sink.push(
                            format!("(c{c1}, c{c2}, {})", self.names[i]),
                            "action is not multiplicative".into(),
                        );
                    }
                }
            }
        }
        sink.drain_into(report);
    }

    fn check_module_algebra(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("module.algebra");
        for c in self.hgroup.elements() {
            if self.act(c, &self.unit) != self.unit {
                sink.push(format!("c{c}"), "c -> 1 != 1".into());
            }
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let lhs = self.act(c, self.mult_basis(i, j));
                    let rhs = self.mul(
                        &self.act(c, &sparse_single(i, self.field.one())),
                        &self.act(c, &sparse_single(j, self.field.one())),
                    );
                    if lhs != rhs {
                        sink.push(
                            format!("(c{c}, {}, {})", self.names[i], self.names[j]),
                            "c -> (xy) != (c -> x)(c -> y)".into(),
                        );
                    }
                }
            }
        }
        sink.drain_into(report);
    }

    fn check_comodule(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("comodule.laws");
        let dim = self.dim;
        let ord = self.hgroup.order();
        for i in 0..dim {
            // (eps_H (x) id) delta = id: sum over all c of the component
            let mut counit_side = Vec::new();
            for t in &self.coaction[i] {
                counit_side.push(Term {
                    idx: t.idx % dim,
                    coef: t.coef.clone(),
                });
            }
            if sparse_normalize(counit_side) != sparse_single(i, self.field.one()) {
                sink.push(self.names[i].clone(), "(eps_H(x)id)delta != id".into());
            }
            // (Delta_H (x) id) delta = (id (x) delta) delta;
            // index (c1 * ord + c2) * dim + j
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for t in &self.coaction[i] {
                let (c, j) = (t.idx / dim, t.idx % dim);
                lhs.push(Term {
                    idx: (c * ord + c) * dim + j,
                    coef: t.coef.clone(),
                });
                for u in &self.coaction[j] {
                    let (c2, j2) = (u.idx / dim, u.idx % dim);
                    rhs.push(Term {
                        idx: (c * ord + c2) * dim + j2,
                        coef: &t.coef * &u.coef,
                    });
                }
            }
            if sparse_normalize(lhs) != sparse_normalize(rhs) {
                sink.push(self.names[i].clone(), "coaction is not coassociative".into());
            }
        }
        sink.drain_into(report);
    }

    fn check_comodule_algebra(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("comodule.algebra");
        let dim = self.dim;
        // delta(1) = c_e (x) 1
        let e = self.hgroup.identity();
        let unit_coaction: SparseVec = sparse_normalize(
            self.unit
                .iter()
                .map(|t| Term {
                    idx: e * dim + t.idx,
                    coef: t.coef.clone(),
                })
                .collect(),
        );
        if self.coact(&self.unit) != unit_coaction {
            sink.push("1".into(), "delta(1) != 1_H (x) 1".into());
        }
        for i in 0..dim {
            for j in 0..dim {
                let lhs = self.coact(self.mult_basis(i, j));
                let mut rhs = Vec::new();
                for t in &self.coaction[i] {
                    let (c1, i2) = (t.idx / dim, t.idx % dim);
                    for u in &self.coaction[j] {
                        let (c2, j2) = (u.idx / dim, u.idx % dim);
                        let c = self.hgroup.mul(c1, c2);
                        let coef = &t.coef * &u.coef;
                        for m in self.mult_basis(i2, j2) {
                            rhs.push(Term {
                                idx: c * dim + m.idx,
                                coef: &coef * &m.coef,
                            });
                        }
                    }
                }
                if lhs != sparse_normalize(rhs) {
                    sink.push(
                        format!("({}, {})", self.names[i], self.names[j]),
                        "delta(xy) != delta(x)delta(y)".into(),
                    );
                }
            }
        }
        sink.drain_into(report);
    }

    fn check_yd_compatibility(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("yd.compatibility");
        for c in self.hgroup.elements() {
            for i in 0..self.dim {
                let lhs = self.coact(&self.act(c, &sparse_single(i, self.field.one())));
                let mut rhs = Vec::new();
                for t in &self.coaction[i] {
                    let (c2, j) = (t.idx / self.dim, t.idx % self.dim);
                    for u in &self.action[c][j] {
                        rhs.push(Term {
                            idx: c2 * self.dim + u.idx,
                            coef: &t.coef * &u.coef,
                        });
                    }
                }
                if lhs != sparse_normalize(rhs) {
                    sink.push(
                        format!("(c{c}, {})", self.names[i]),
                        "delta(c -> x) != (id (x) c ->) delta(x)".into(),
                    );
                }
            }
        }
        sink.drain_into(report);
    }

    fn check_comult_equivariance(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("comult.equivariance");
        let dim = self.dim;
        for c in self.hgroup.elements() {
            for i in 0..dim {
                let lhs = self.comult_vec(&self.act(c, &sparse_single(i, self.field.one())));
                let mut rhs = Vec::new();
                for t in &self.comult[i] {
                    let (j, k) = (t.idx / dim, t.idx % dim);
                    for u in &self.action[c][j] {
                        for v in &self.action[c][k] {
                            rhs.push(Term {
                                idx: u.idx * dim + v.idx,
                                coef: &(&t.coef * &u.coef) * &v.coef,
                            });
                        }
                    }
                }
                if lhs != sparse_normalize(rhs) {
                    sink.push(format!("(c{c}, {})", self.names[i]), "D(c -> x) != (c->)(x)(c->) D(x)".into());
                }
            }
        }
        // colinearity of the comultiplication: tensor-square coaction of
        // D(x) equals (id_H (x) D) delta(x); index (c * dim + j) * dim + k
        let mut sink2 = FailureSink::new("comult.colinearity");
        for i in 0..dim {
            let mut lhs = Vec::new();
            for t in &self.comult[i] {
                let (j, k) = (t.idx / dim, t.idx % dim);
                for u in &self.coaction[j] {
                    let (c1, j2) = (u.idx / dim, u.idx % dim);
                    for v in &self.coaction[k] {
                        let (c2, k2) = (v.idx / dim, v.idx % dim);
                        let c = self.hgroup.mul(c1, c2);
                        lhs.push(Term {
                            idx: (c * dim + j2) * dim + k2,
                            coef: &(&t.coef * &u.coef) * &v.coef,
                        });
                    }
                }
            }
            let mut rhs = Vec::new();
            for t in &self.coaction[i] {
                let (c, j) = (t.idx / dim, t.idx % dim);
                for u in &self.comult[j] {
                    let (a, b) = (u.idx / dim, u.idx % dim);
                    rhs.push(Term {
                        idx: (c * dim + a) * dim + b,
                        coef: &t.coef * &u.coef,
                    });
                }
            }
            if sparse_normalize(lhs) != sparse_normalize(rhs) {
                sink2.push(self.names[i].clone(), "coaction of D(x) != (id(x)D) delta(x)".into());
            }
        }
        sink.drain_into(report);
        sink2.drain_into(report);
    }

    fn check_counit_equivariance(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("counit.equivariance");
        for c in self.hgroup.elements() {
            for i in 0..self.dim {
                let lhs = self.counit_vec(&self.act(c, &sparse_single(i, self.field.one())));
                if lhs != self.counit[i] {
                    sink.push(format!("(c{c}, {})", self.names[i]), "eps(c -> x) != eps(x)".into());
                }
            }
        }
        for i in 0..self.dim {
            // (id_H (x) eps) delta(x) = eps(x) 1_H
            let mut lhs = vec![self.field.zero(); self.hgroup.order()];
            for t in &self.coaction[i] {
                let (c, j) = (t.idx / self.dim, t.idx % self.dim);
                if !self.counit[j].is_zero() {
                    lhs[c] = &lhs[c] + &(&t.coef * &self.counit[j]);
                }
            }
            let mut rhs = vec![self.field.zero(); self.hgroup.order()];
            rhs[self.hgroup.identity()] = self.counit[i].clone();
            if lhs != rhs {
                sink.push(self.names[i].clone(), "(id(x)eps) delta != eps(x) 1_H".into());
            }
        }
        sink.drain_into(report);
    }

    fn check_braided_bialgebra(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("bialgebra.braided");
        let dim = self.dim;
        let bad: Vec<(usize, usize)> = (0..dim)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut local = Vec::new();
                for j in 0..dim {
                    let lhs = self.comult_vec(self.mult_basis(i, j));
                    // (mu (x) mu)(id (x) braiding (x) id)(D(x) (x) D(y))
                    let mut rhs = Vec::new();
                    for t in &self.comult[i] {
                        let (i1, i2) = (t.idx / dim, t.idx % dim);
                        for u in &self.comult[j] {
                            let (j1, j2) = (u.idx / dim, u.idx % dim);
                            let c0 = &t.coef * &u.coef;
                            let braided = self.braiding(&sparse_single(
                                i2 * dim + j1,
                                self.field.one(),
                            ));
                            for bt in braided {
                                let (w, v) = (bt.idx / dim, bt.idx % dim);
                                let left = self.mult_basis(i1, w);
                                let right = self.mult_basis(v, j2);
                                for lt in left {
                                    for rt in right {
                                        rhs.push(Term {
                                            idx: lt.idx * dim + rt.idx,
                                            coef: &(&(&c0 * &bt.coef) * &lt.coef) * &rt.coef,
                                        });
                                    }
                                }
                            }
                        }
                    }
                    if lhs != sparse_normalize(rhs) {
                        local.push((i, j));
                    }
                }
                local
            })
            .collect();
        for (i, j) in bad {
            sink.push(
                format!("({}, {})", self.names[i], self.names[j]),
                "D(xy) != D(x) *_braided D(y)".into(),
            );
        }
        sink.drain_into(report);
    }

    fn check_braiding_invertible(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("braiding.invertible");
        for i in 0..self.dim {
            for j in 0..self.dim {
                let t = sparse_single(i * self.dim + j, self.field.one());
                if self.braiding_inverse(&self.braiding(&t)) != t {
                    sink.push(
                        format!("({}, {})", self.names[i], self.names[j]),
                        "inverse braiding fails on braiding image".into(),
                    );
                }
                if self.braiding(&self.braiding_inverse(&t)) != t {
                    sink.push(
                        format!("({}, {})", self.names[i], self.names[j]),
                        "braiding fails on inverse image".into(),
                    );
                }
            }
        }
        sink.drain_into(report);
    }

    fn check_antipode_laws(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("antipode.laws");
        let table = self.antipode.as_ref().expect("caller checked presence");
        for i in 0..self.dim {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for t in &self.comult[i] {
                let (j, k) = (t.idx / self.dim, t.idx % self.dim);
                let sl = self.mul(&table[j], &sparse_single(k, self.field.one()));
                for u in sl {
                    left.push(Term {
                        idx: u.idx,
                        coef: &t.coef * &u.coef,
                    });
                }
                let sr = self.mul(&sparse_single(j, self.field.one()), &table[k]);
                for u in sr {
                    right.push(Term {
                        idx: u.idx,
                        coef: &t.coef * &u.coef,
                    });
                }
            }
            let expected = sparse_scale(&self.unit, &self.counit[i]);
            if sparse_normalize(left) != expected {
                sink.push(self.names[i].clone(), "S(x1)x2 != eps(x)1".into());
            }
            if sparse_normalize(right) != expected {
                sink.push(self.names[i].clone(), "x1 S(x2) != eps(x)1".into());
            }
        }
        sink.drain_into(report);
    }

    fn check_antipode_equivariance(&self, report: &mut VerifyReport) {
        let mut sink = FailureSink::new("antipode.equivariance");
        let table = self.antipode.as_ref().expect("caller checked presence");
        for c in self.hgroup.elements() {
            for i in 0..self.dim {
                let lhs = self
                    .antipode_vec(&self.act(c, &sparse_single(i, self.field.one())))
                    .expect("caller checked presence");
                let rhs = self.act(c, &table[i]);
                if lhs != rhs {
                    sink.push(format!("(c{c}, {})", self.names[i]), "S(c -> x) != c -> S(x)".into());
                }
            }
        }
        for i in 0..self.dim {
            let lhs = self.coact(&table[i]);
            let mut rhs = Vec::new();
            for t in &self.coaction[i] {
                let (c, j) = (t.idx / self.dim, t.idx % self.dim);
                for u in &table[j] {
                    rhs.push(Term {
                        idx: c * self.dim + u.idx,
                        coef: &t.coef * &u.coef,
                    });
                }
            }
            if lhs != sparse_normalize(rhs) {
                sink.push(self.names[i].clone(), "delta(S(x)) != (id (x) S) delta(x)".into());
            }
        }
        sink.drain_into(report);
    }

    // -- antipode solver -------------------------------------------------------

    /// Solves the antipode equations by expressing the convolution inverse
    /// of the identity as a polynomial in its convolution powers, then
    /// verifying both antipode laws on the result. Fails with
    /// [`HopfError::NoAntipode`] when the identity is not convolution
    /// invertible.
    pub fn solve_antipode(&self) -> Result<Vec<SparseVec>, HopfError> {
        // endomorphisms are stored by columns: endo[j] = image of basis j
        let unit_eps: Vec<SparseVec> = (0..self.dim)
            .map(|j| sparse_scale(&self.unit, &self.counit[j]))
            .collect();
        let id: Vec<SparseVec> = (0..self.dim)
            .map(|j| sparse_single(j, self.field.one()))
            .collect();
        let convolve = |f: &Vec<SparseVec>, g: &Vec<SparseVec>| -> Vec<SparseVec> {
            (0..self.dim)
                .into_par_iter()
                .map(|j| {
                    let mut acc = Vec::new();
                    for t in &self.comult[j] {
                        let (j1, j2) = (t.idx / self.dim, t.idx % self.dim);
                        let prod = self.mul(&f[j1], &g[j2]);
                        for u in prod {
                            acc.push(Term {
                                idx: u.idx,
                                coef: &t.coef * &u.coef,
                            });
                        }
                    }
                    sparse_normalize(acc)
                })
                .collect()
        };
        let vectorize = |f: &Vec<SparseVec>| -> SparseVec {
            let mut out = Vec::new();
            for (j, col) in f.iter().enumerate() {
                for t in col {
                    out.push(Term {
                        idx: t.idx * self.dim + j,
                        coef: t.coef.clone(),
                    });
                }
            }
            sparse_normalize(out)
        };
        // incremental reduction: rows are (pivot, sparse row, combination)
        let mut rows: Vec<(usize, SparseVec, Vec<Cyc>)> = Vec::new();
        let mut powers: Vec<Vec<SparseVec>> = vec![unit_eps.clone()];
        let mut current = unit_eps.clone();
        let max_order = self.dim * self.dim + 1;
        for r in 0.. {
            if r > max_order {
                return Err(HopfError::NoAntipode(
                    "no linear dependence among convolution powers".into(),
                ));
            }
            let mut vec = vectorize(&current);
            let mut combo = vec![self.field.zero(); r + 1];
            combo[r] = self.field.one();
            for (piv, row, rcombo) in &rows {
                if let Ok(pos) = vec.binary_search_by_key(piv, |t| t.idx) {
                    let factor = vec[pos].coef.clone();
                    vec = sparse_add(&vec, &sparse_scale(row, &-&factor));
                    for (c, rc) in combo.iter_mut().zip(rcombo) {
                        *c = &*c - &(&factor * rc);
                    }
                }
            }
            if vec.is_empty() {
                // dependence: sum_k combo[k] * id^{*k} = 0, combo[r] = 1
                let c0 = combo[0].clone();
                if c0.is_zero() {
                    return Err(HopfError::NoAntipode(
                        "identity map is not convolution invertible (zero constant term)".into(),
                    ));
                }
                let neg_inv = (-&c0).inv().expect("nonzero scalar");
                // S = -c0^{-1} (id^{*(r-1)} + sum_{k=1}^{r-1} combo[k] id^{*(k-1)})
                let mut s: Vec<SparseVec> = vec![Vec::new(); self.dim];
                for k in 1..=r {
                    let coef = if k == r {
                        self.field.one()
                    } else {
                        combo[k].clone()
                    };
                    if coef.is_zero() {
                        continue;
                    }
                    let scaled = &coef * &neg_inv;
                    for j in 0..self.dim {
                        s[j] = sparse_add(&s[j], &sparse_scale(&powers[k - 1][j], &scaled));
                    }
                }
                // verify both antipode laws on the candidate
                let mut probe = self.clone();
                probe.antipode = Some(s.clone());
                let mut check = VerifyReport {
                    exhaustive: true,
                    ..Default::default()
                };
                probe.check_antipode_laws(&mut check);
                if !check.passed() {
                    return Err(HopfError::NoAntipode(format!(
                        "convolution inverse fails the antipode laws: {}",
                        check.summary()
                    )));
                }
                return Ok(s);
            }
            let lead = vec[0].clone();
            let inv = lead.coef.inv().expect("leading coefficient nonzero");
            let row = sparse_scale(&vec, &inv);
            let rcombo: Vec<Cyc> = combo.iter().map(|c| c * &inv).collect();
            let mut full_combo = vec![self.field.zero(); max_order + 2];
            full_combo[..rcombo.len()].clone_from_slice(&rcombo);
            rows.push((lead.idx, row, full_combo));
            current = convolve(&current, &id);
            powers.push(current.clone());
        }
        unreachable!()
    }

    // -- grouplike elements ------------------------------------------------------

    /// Enumerates all grouplike elements over the coefficient field. The
    /// coalgebra must be quasi-monomial: every basis pair may occur in at
    /// most one comultiplication. Each candidate is confirmed directly
    /// against D(g) = g (x) g and eps(g) = 1 before being returned.
    pub fn grouplikes(&self) -> Result<Vec<SparseVec>, HopfError> {
        let dim = self.dim;
        // pair -> (image index, coefficient)
        let mut pairmap: HashMap<(usize, usize), (usize, Cyc)> = HashMap::new();
        let mut pre: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dim];
        for i in 0..dim {
            for t in &self.comult[i] {
                let (j, k) = (t.idx / dim, t.idx % dim);
                if pairmap.insert((j, k), (i, t.coef.clone())).is_some() {
                    return Err(HopfError::UnsupportedCoalgebra(format!(
                        "tensor pair ({}, {}) occurs in more than one comultiplication",
                        self.names[j], self.names[k]
                    )));
                }
                pre[i].push((j, k));
            }
        }
        // closure classes: minimal product-closed and saturated sets
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of: Vec<Option<usize>> = vec![None; dim];
        let mut dead: Vec<bool> = Vec::new();
        for start in 0..dim {
            if class_of[start].is_some() {
                continue;
            }
            let mut set: Vec<usize> = vec![start];
            let mut in_set = vec![false; dim];
            in_set[start] = true;
            let mut is_dead = false;
            loop {
                let mut grew = false;
                // saturation: preimage pairs of members join
                for idx in 0..set.len() {
                    let i = set[idx];
                    for &(j, k) in &pre[i] {
                        for x in [j, k] {
                            if !in_set[x] {
                                in_set[x] = true;
                                set.push(x);
                                grew = true;
                            }
                        }
                    }
                }
                // product closure: pairs inside the set must be defined
                let snapshot = set.clone();
                for &j in &snapshot {
                    for &k in &snapshot {
                        match pairmap.get(&(j, k)) {
                            Some((i, _)) => {
                                if !in_set[*i] {
                                    in_set[*i] = true;
                                    set.push(*i);
                                    grew = true;
                                }
                            }
                            None => {
                                is_dead = true;
                            }
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            set.sort_unstable();
            let id = classes.len();
            for &i in &set {
                if class_of[i].is_none() {
                    class_of[i] = Some(id);
                }
            }
            classes.push(set);
            dead.push(is_dead);
        }
        // merge overlapping classes (closures may overlap when started from
        // different seeds); overlapping closed sets union to a closed set
        let mut merged = true;
        while merged {
            merged = false;
            'outer: for a in 0..classes.len() {
                for b in (a + 1)..classes.len() {
                    if classes[a].iter().any(|i| classes[b].contains(i)) {
                        let mut union = classes[a].clone();
                        union.extend(classes[b].iter().copied());
                        union.sort_unstable();
                        union.dedup();
                        let was_dead = dead[a] || dead[b];
                        classes.remove(b);
                        classes.remove(a);
                        dead.remove(b);
                        dead.remove(a);
                        classes.push(union);
                        dead.push(was_dead);
                        merged = true;
                        break 'outer;
                    }
                }
            }
        }
        let mut class_index = vec![usize::MAX; dim];
        for (c, members) in classes.iter().enumerate() {
            for &i in members {
                class_index[i] = c;
            }
        }
        // candidate supports are unions of live classes that are
        // product-closed; enumerate them by growing from single classes,
        // pruning any union whose members hit an undefined pair (no
        // superset can repair that) and jumping to the forced closure
        let live: Vec<usize> = (0..classes.len()).filter(|&c| !dead[c]).collect();
        // closure over class sets: None when a pair is undefined
        let close = |seed: &[usize]| -> Option<Vec<usize>> {
            let mut cls = seed.to_vec();
            loop {
                let members: Vec<usize> = cls
                    .iter()
                    .flat_map(|&c| classes[c].iter().copied())
                    .collect();
                let mut add = Vec::new();
                for &j in &members {
                    for &k in &members {
                        match pairmap.get(&(j, k)) {
                            None => return None,
                            Some((i, _)) => {
                                let ci = class_index[*i];
                                if !cls.contains(&ci) && !add.contains(&ci) {
                                    add.push(ci);
                                }
                            }
                        }
                    }
                }
                if add.is_empty() {
                    cls.sort_unstable();
                    return Some(cls);
                }
                cls.extend(add);
            }
        };
        let mut supports: Vec<Vec<usize>> = Vec::new();
        let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        let mut stack: Vec<Vec<usize>> = live.iter().map(|&c| vec![c]).collect();
        let mut explored = 0usize;
        while let Some(seed) = stack.pop() {
            if !seen.insert(seed.clone()) {
                continue;
            }
            explored += 1;
            if explored > 2000 {
                return Err(HopfError::UnsupportedCoalgebra(
                    "support enumeration exceeded its search bound".into(),
                ));
            }
            let Some(cls) = close(&seed) else {
                continue;
            };
            if seen.contains(&cls) && cls != seed {
                continue;
            }
            let mut support: Vec<usize> = cls
                .iter()
                .flat_map(|&c| classes[c].iter().copied())
                .collect();
            support.sort_unstable();
            if support.iter().any(|&i| !self.counit[i].is_zero()) && !supports.contains(&support) {
                supports.push(support);
            }
            for &c in &live {
                if !cls.contains(&c) {
                    let mut next = cls.clone();
                    next.push(c);
                    next.sort_unstable();
                    if !seen.contains(&next) {
                        stack.push(next);
                    }
                }
            }
            seen.insert(cls);
        }
        let mut found: Vec<SparseVec> = Vec::new();
        for support in supports {
            for g in self.grouplikes_on_support(&support, &pairmap)? {
                // direct confirmation
                let gg = self.tensor(&g, &g);
                if self.comult_vec(&g) == gg && self.counit_vec(&g).is_one() {
                    found.push(g);
                }
            }
        }
        found.sort_by(|a, b| {
            let ka: Vec<usize> = a.iter().map(|t| t.idx).collect();
            let kb: Vec<usize> = b.iter().map(|t| t.idx).collect();
            ka.cmp(&kb)
        });
        Ok(found)
    }

    /// Solves the twisted character equations g_j g_k = d_{jk} g_{j∘k} on a
    /// product-closed support, by extending assignments one generator at a
    /// time through root-of-unity candidates.
    fn grouplikes_on_support(
        &self,
        support: &[usize],
        pairmap: &HashMap<(usize, usize), (usize, Cyc)>,
    ) -> Result<Vec<SparseVec>, HopfError> {
        let prod = |j: usize, k: usize| -> (usize, Cyc) {
            pairmap.get(&(j, k)).expect("support is closed").clone()
        };
        // the support must be an abelian group under the induced product
        let identity = support
            .iter()
            .copied()
            .find(|&e| support.iter().all(|&j| prod(e, j).0 == j && prod(j, e).0 == j));
        let Some(e) = identity else {
            return Err(HopfError::UnsupportedCoalgebra(
                "support has no identity under the induced product".into(),
            ));
        };
        for &j in support {
            for &k in support {
                if prod(j, k).0 != prod(k, j).0 {
                    return Err(HopfError::UnsupportedCoalgebra(
                        "induced product on support is not commutative".into(),
                    ));
                }
            }
            if !support.iter().any(|&k| prod(j, k).0 == e) {
                return Err(HopfError::UnsupportedCoalgebra(
                    "induced product on support has no inverses".into(),
                ));
            }
        }
        let roots = self.all_roots_of_unity();
        // partial assignments over the subgroup generated so far
        let d_ee = prod(e, e).1;
        let mut assignments: Vec<HashMap<usize, Cyc>> = vec![HashMap::from([(e, d_ee)])];
        let mut generated: Vec<usize> = vec![e];
        for &x in support {
            if generated.contains(&x) {
                continue;
            }
            // find m with x^m inside the current subgroup, tracking the
            // accumulated twist: g(x^(k+1)) = g(x^k) g(x) / d(x^k, x), so
            // g(x)^m = g(x^m) * prod_k d(x^k, x)
            let mut chain = vec![x];
            let mut twist = vec![self.field.one()];
            let mut m = 1usize;
            loop {
                let last = *chain.last().expect("nonempty");
                let (next, d) = prod(last, x);
                let t = &twist[twist.len() - 1] * &d;
                m += 1;
                chain.push(next);
                twist.push(t);
                if generated.contains(&next) {
                    break;
                }
            }
            let x_to_m = *chain.last().expect("nonempty");
            let total_twist = twist.last().expect("nonempty").clone();
            let root_order = {
                let n = self.field.conductor();
                if n % 2 == 1 {
                    2 * n as u64
                } else {
                    n as u64
                }
            };
            let mut new_assignments = Vec::new();
            for phi in &assignments {
                let target = &phi[&x_to_m] * &total_twist;
                // solutions of omega^m = target: when the target is a root
                // of unity every solution is one too, so the enumeration
                // below is complete; otherwise we cannot decide
                if !target.pow(root_order * m as u64).is_one() {
                    return Err(HopfError::UnsupportedCoalgebra(
                        "grouplike coefficient equation leaves the root-of-unity lattice".into(),
                    ));
                }
                for omega in &roots {
                    if omega.pow(m as u64) != target {
                        continue;
                    }
                    // extend phi over the subgroup generated with x
                    let mut ext = phi.clone();
                    ext.insert(x, omega.clone());
                    let mut ok = true;
                    let mut grew = true;
                    while grew && ok {
                        grew = false;
                        let known: Vec<usize> = ext.keys().copied().collect();
                        for &j in &known {
                            for &k in &known {
                                let (i, d) = prod(j, k);
                                let Ok(val) = (&ext[&j] * &ext[&k]).checked_div(&d) else {
                                    ok = false;
                                    break;
                                };
                                match ext.get(&i) {
                                    Some(existing) => {
                                        if *existing != val {
                                            ok = false;
                                        }
                                    }
                                    None => {
                                        ext.insert(i, val);
                                        grew = true;
                                    }
                                }
                            }
                            if !ok {
                                break;
                            }
                        }
                    }
                    if ok {
                        new_assignments.push(ext);
                    }
                }
            }
            assignments = new_assignments;
            let mut new_generated: Vec<usize> = assignments
                .first()
                .map(|a| a.keys().copied().collect())
                .unwrap_or_default();
            new_generated.sort_unstable();
            generated = new_generated;
            if assignments.is_empty() {
                return Ok(Vec::new());
            }
        }
        Ok(assignments
            .into_iter()
            .map(|phi| {
                sparse_normalize(
                    phi.into_iter()
                        .map(|(idx, coef)| Term { idx, coef })
                        .collect(),
                )
            })
            .collect())
    }

    /// All roots of unity of the coefficient field: ±ζ^i for odd conductor,
    /// ζ^i for even.
    pub fn all_roots_of_unity(&self) -> Vec<Cyc> {
        let n = self.field.conductor();
        let mut out = Vec::new();
        let mut z = self.field.one();
        for _ in 0..n {
            out.push(z.clone());
            if n % 2 == 1 {
                out.push(-&z);
            }
            z = &z * &self.field.zeta();
        }
        out
    }

    // -- center, integrals, ideals -----------------------------------------------

    /// A basis of the center, found as the kernel of the commutator system.
    pub fn center(&self) -> Vec<Vec<Cyc>> {
        let dim = self.dim;
        let mut rows = Vec::new();
        for j in 0..dim {
            // x b_j - b_j x = 0, one row per output coordinate
            let mut coef = vec![vec![self.field.zero(); dim]; dim];
            for i in 0..dim {
                for t in self.mult_basis(i, j) {
                    coef[t.idx][i] = &coef[t.idx][i] + &t.coef;
                }
                for t in self.mult_basis(j, i) {
                    coef[t.idx][i] = &coef[t.idx][i] - &t.coef;
                }
            }
            rows.extend(coef);
        }
        let m = Matrix::from_rows(&self.field, rows);
        m.kernel()
    }

    /// A basis of the space of left integrals { x : bx = eps(b) x }.
    pub fn left_integral_space(&self) -> Vec<Vec<Cyc>> {
        self.integral_space(true)
    }

    /// A basis of the space of right integrals { x : xb = eps(b) x }.
    pub fn right_integral_space(&self) -> Vec<Vec<Cyc>> {
        self.integral_space(false)
    }

    fn integral_space(&self, left: bool) -> Vec<Vec<Cyc>> {
        let dim = self.dim;
        let mut rows = Vec::new();
        for j in 0..dim {
            let mut coef = vec![vec![self.field.zero(); dim]; dim];
            for i in 0..dim {
                let prod = if left {
                    self.mult_basis(j, i)
                } else {
                    self.mult_basis(i, j)
                };
                for t in prod {
                    coef[t.idx][i] = &coef[t.idx][i] + &t.coef;
                }
                coef[i][i] = &coef[i][i] - &self.counit[j];
            }
            rows.extend(coef);
        }
        Matrix::from_rows(&self.field, rows).kernel()
    }

    pub fn is_left_integral(&self, x: &[Term]) -> bool {
        (0..self.dim).all(|j| {
            let lhs = self.mul(&sparse_single(j, self.field.one()), x);
            let rhs = sparse_scale(x, &self.counit[j]);
            lhs == rhs
        })
    }

    pub fn is_right_integral(&self, x: &[Term]) -> bool {
        (0..self.dim).all(|j| {
            let lhs = self.mul(x, &sparse_single(j, self.field.one()));
            let rhs = sparse_scale(x, &self.counit[j]);
            lhs == rhs
        })
    }

    /// Whether the functional lambda (given by its values on the basis) is a
    /// left integral on the dual: x1 lambda(x2) = lambda(x) 1.
    pub fn is_left_cointegral(&self, lambda: &[Cyc]) -> bool {
        (0..self.dim).all(|i| {
            let mut lhs = Vec::new();
            for t in &self.comult[i] {
                let (j, k) = (t.idx / self.dim, t.idx % self.dim);
                if !lambda[k].is_zero() {
                    lhs.push(Term {
                        idx: j,
                        coef: &t.coef * &lambda[k],
                    });
                }
            }
            sparse_normalize(lhs) == sparse_scale(&self.unit, &lambda[i])
        })
    }

    /// Whether the functional is a right integral on the dual:
    /// lambda(x1) x2 = lambda(x) 1.
    pub fn is_right_cointegral(&self, lambda: &[Cyc]) -> bool {
        (0..self.dim).all(|i| {
            let mut lhs = Vec::new();
            for t in &self.comult[i] {
                let (j, k) = (t.idx / self.dim, t.idx % self.dim);
                if !lambda[j].is_zero() {
                    lhs.push(Term {
                        idx: k,
                        coef: &t.coef * &lambda[j],
                    });
                }
            }
            sparse_normalize(lhs) == sparse_scale(&self.unit, &lambda[i])
        })
    }

    /// Whether the span of the given vectors is a two-sided ideal that is
    /// simple, decided by the criterion: the ideal meets the center in a
    /// one-dimensional space and its dimension is a perfect square.
    pub fn is_simple_ideal(&self, ideal: &[Vec<Cyc>]) -> bool {
        if ideal.is_empty() {
            return false;
        }
        let dim = self.dim;
        let span_rows: Vec<Vec<Cyc>> = ideal.to_vec();
        let rank = Matrix::from_rows(&self.field, span_rows.clone()).rank();
        // closure under left and right multiplication by basis vectors
        for v in &span_rows {
            let sv = sparse_from_dense(v);
            for b in 0..dim {
                for prod in [
                    self.mul(&sparse_single(b, self.field.one()), &sv),
                    self.mul(&sv, &sparse_single(b, self.field.one())),
                ] {
                    let mut aug_rows = span_rows.clone();
                    aug_rows.push(sparse_to_dense(dim, &prod, &self.field));
                    if Matrix::from_rows(&self.field, aug_rows).rank() != rank {
                        return false;
                    }
                }
            }
        }
        let sq = (1..).take_while(|k| k * k <= rank).any(|k| k * k == rank);
        if !sq {
            return false;
        }
        // center of the algebra intersected with the ideal
        let center = self.center();
        if center.is_empty() {
            return false;
        }
        // intersection dimension = dim(center) + dim(ideal) - dim(center + ideal)
        let mut both = center.clone();
        both.extend(span_rows.clone());
        let sum_rank = Matrix::from_rows(&self.field, both).rank();
        let center_rank = Matrix::from_rows(&self.field, center).rank();
        center_rank + rank == sum_rank + 1
    }

    // -- action and coaction shape ----------------------------------------------

    pub fn is_action_trivial(&self) -> bool {
        (0..self.hgroup.order()).all(|c| {
            (0..self.dim).all(|i| self.action[c][i] == sparse_single(i, self.field.one()))
        })
    }

    pub fn is_coaction_trivial(&self) -> bool {
        let e = self.hgroup.identity();
        (0..self.dim).all(|i| self.coaction[i] == sparse_single(e * self.dim + i, self.field.one()))
    }

    pub fn braiding_is_flip(&self) -> bool {
        (0..self.dim * self.dim).all(|t| {
            let (i, j) = (t / self.dim, t % self.dim);
            self.braiding(&sparse_single(t, self.field.one()))
                == sparse_single(j * self.dim + i, self.field.one())
        })
    }

    // -- bilinear form -------------------------------------------------------------

    /// The form (a, a') ↦ rho(S(a) a') for a functional rho on the basis.
    pub fn bilinear_form(&self, rho: &[Cyc]) -> Result<Matrix, HopfError> {
        let table = self.antipode.as_ref().ok_or(HopfError::MissingAntipode)?;
        let mut m = Matrix::zero(&self.field, self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let prod = self.mul(&table[i], &sparse_single(j, self.field.one()));
                let mut acc = self.field.zero();
                for t in prod {
                    if !rho[t.idx].is_zero() {
                        acc = &acc + &(&t.coef * &rho[t.idx]);
                    }
                }
                *m.at_mut(i, j) = acc;
            }
        }
        Ok(m)
    }

    // -- convenience constructors ---------------------------------------------------

    /// The group algebra of a finite group as an ordinary Hopf algebra.
    pub fn group_algebra(field: &Arc<CycField>, group: &FiniteGroup) -> YdHopf {
        let n = group.order();
        let names = (0..n).map(|i| format!("g{i}")).collect();
        let mut mult = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                mult.push(sparse_single(group.mul(i, j), field.one()));
            }
        }
        let unit = sparse_single(group.identity(), field.one());
        let comult = (0..n)
            .map(|i| sparse_single(i * n + i, field.one()))
            .collect();
        let counit = vec![field.one(); n];
        let antipode = Some((0..n).map(|i| sparse_single(group.inv(i), field.one())).collect());
        let trivial = FiniteGroup::cyclic(1);
        let action = vec![(0..n).map(|i| sparse_single(i, field.one())).collect()];
        let coaction = (0..n).map(|i| sparse_single(i, field.one())).collect();
        YdHopf::new(
            Arc::clone(field),
            trivial,
            names,
            mult,
            unit,
            comult,
            counit,
            antipode,
            action,
            coaction,
        )
        .expect("group algebra tables are well formed")
    }

    /// The function algebra on a finite group as an ordinary Hopf algebra.
    pub fn function_algebra(field: &Arc<CycField>, group: &FiniteGroup) -> YdHopf {
        let n = group.order();
        let names = (0..n).map(|i| format!("e{i}")).collect();
        let mut mult = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                mult.push(if i == j {
                    sparse_single(i, field.one())
                } else {
                    Vec::new()
                });
            }
        }
        let unit = (0..n)
            .map(|i| Term {
                idx: i,
                coef: field.one(),
            })
            .collect();
        let comult = (0..n)
            .map(|i| {
                sparse_normalize(
                    (0..n)
                        .map(|j| Term {
                            idx: j * n + group.mul(group.inv(j), i),
                            coef: field.one(),
                        })
                        .collect(),
                )
            })
            .collect();
        let counit = (0..n)
            .map(|i| {
                if i == group.identity() {
                    field.one()
                } else {
                    field.zero()
                }
            })
            .collect();
        let antipode = Some((0..n).map(|i| sparse_single(group.inv(i), field.one())).collect());
        let trivial = FiniteGroup::cyclic(1);
        let action = vec![(0..n).map(|i| sparse_single(i, field.one())).collect()];
        let coaction = (0..n).map(|i| sparse_single(i, field.one())).collect();
        YdHopf::new(
            Arc::clone(field),
            trivial,
            names,
            mult,
            unit,
            comult,
            counit,
            antipode,
            action,
            coaction,
        )
        .expect("function algebra tables are well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_algebra_passes_the_suite() {
        let field = CycField::new(3);
        let g = FiniteGroup::cyclic(6);
        let h = YdHopf::group_algebra(&field, &g);
        let report = h.verify();
        assert!(report.passed(), "{}", report.summary());
        assert!(h.is_ordinary());
        assert!(h.braiding_is_flip());
    }

    #[test]
    fn function_algebra_passes_the_suite() {
        let field = CycField::new(3);
        let g = FiniteGroup::cyclic(4);
        let h = YdHopf::function_algebra(&field, &g);
        let report = h.verify();
        assert!(report.passed(), "{}", report.summary());
    }

    #[test]
    fn antipode_solver_recovers_group_inverse() {
        let field = CycField::new(3);
        let g = FiniteGroup::cyclic(5);
        let mut h = YdHopf::group_algebra(&field, &g);
        let expected = h.antipode_table().cloned().unwrap();
        h.antipode = None;
        let solved = h.solve_antipode().unwrap();
        assert_eq!(solved, expected);
    }

    #[test]
    fn antipode_solver_on_function_algebra() {
        let field = CycField::new(5);
        let g = FiniteGroup::cyclic(3);
        let mut h = YdHopf::function_algebra(&field, &g);
        let expected = h.antipode_table().cloned().unwrap();
        h.antipode = None;
        let solved = h.solve_antipode().unwrap();
        assert_eq!(solved, expected);
    }

    #[test]
    fn grouplikes_of_group_algebra_are_basis_vectors() {
        let field = CycField::new(3);
        let g = FiniteGroup::cyclic(4);
        let h = YdHopf::group_algebra(&field, &g);
        let gl = h.grouplikes().unwrap();
        assert_eq!(gl.len(), 4);
        for (i, g) in gl.iter().enumerate() {
            assert_eq!(*g, sparse_single(i, field.one()));
        }
    }

    #[test]
    fn grouplikes_of_function_algebra_are_characters() {
        // K^G for G = Z_3 over Q(zeta_3): grouplikes are the three characters
        let field = CycField::new(3);
        let g = FiniteGroup::cyclic(3);
        let h = YdHopf::function_algebra(&field, &g);
        let gl = h.grouplikes().unwrap();
        assert_eq!(gl.len(), 3);
        for g in &gl {
            assert_eq!(g.len(), 3, "each character is supported everywhere");
        }
        // over Q(zeta_5) the nontrivial cube roots are missing, so only the
        // trivial character remains
        let field5 = CycField::new(5);
        let h5 = YdHopf::function_algebra(&field5, &FiniteGroup::cyclic(3));
        let gl5 = h5.grouplikes().unwrap();
        assert_eq!(gl5.len(), 1);
    }

    #[test]
    fn center_of_group_algebra_is_everything() {
        let field = CycField::new(3);
        let g = FiniteGroup::cyclic(4);
        let h = YdHopf::group_algebra(&field, &g);
        assert_eq!(h.center().len(), 4);
    }

    #[test]
    fn integrals_of_group_algebra() {
        let field = CycField::new(3);
        let g = FiniteGroup::cyclic(4);
        let h = YdHopf::group_algebra(&field, &g);
        let space = h.left_integral_space();
        assert_eq!(space.len(), 1);
        let x = sparse_from_dense(&space[0]);
        assert!(h.is_left_integral(&x));
        assert!(h.is_right_integral(&x));
        // the integral of a group algebra is the sum of all group elements
        assert_eq!(x.len(), 4);
        // cointegral: evaluation at the identity
        let mut lambda = vec![field.zero(); 4];
        lambda[g.identity()] = field.one();
        assert!(h.is_left_cointegral(&lambda));
        assert!(h.is_right_cointegral(&lambda));
    }

    #[test]
    fn simple_ideals_of_function_algebra() {
        let field = CycField::new(3);
        let g = FiniteGroup::cyclic(3);
        let h = YdHopf::function_algebra(&field, &g);
        // each idempotent spans a one-dimensional simple ideal
        let e0 = sparse_to_dense(3, &sparse_single(0, field.one()), &field);
        assert!(h.is_simple_ideal(&[e0]));
        // the span of two idempotents is an ideal but not simple
        let e1 = sparse_to_dense(3, &sparse_single(1, field.one()), &field);
        let e01 = vec![
            sparse_to_dense(3, &sparse_single(0, field.one()), &field),
            e1,
        ];
        assert!(!h.is_simple_ideal(&e01));
    }
}
