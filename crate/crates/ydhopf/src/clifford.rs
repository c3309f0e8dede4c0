//! Block theory of commutative semisimple algebras in the category over
//! `K[Z_p]` and the complete module theory of their biproducts, together
//! with the arithmetic screens for dimension `pq`.
//!
//! * [`primitive_idempotents`] splits a commutative algebra along its
//!   idempotent basis elements and diagonalizes each cyclic block by
//!   enumerating eigenvalue candidates among the roots of unity of the
//!   coefficient field.  A field with too few roots is rejected as
//!   [`CliffordError::SplittingFieldTooSmall`] carrying the smallest
//!   conductor that repairs the split.
//! * [`orbit_analysis`] computes the two permutations induced on the
//!   idempotents by the action of the group generator and by pairing the
//!   coaction with a faithful character, partitions the idempotents into
//!   action orbits, and enforces the dichotomy between fixed idempotents
//!   and orbits of full prime length, which must in addition be preserved
//!   by the coaction permutation.
//! * [`biproduct_simple_modules`] lists every simple module of the
//!   biproduct: `p` one-dimensional twists per fixed idempotent and one
//!   `p`-dimensional induced module per free orbit, each stored as explicit
//!   representing matrices and verified as a unital algebra map, with
//!   completeness checked against both the dimension and the center of the
//!   biproduct.
//! * [`linkage_check`] verifies, pair by pair, that sharing an orbit,
//!   having isomorphic restrictions, and differing by a convolution twist
//!   are one and the same relation, that the size of the twist stabilizer
//!   matches the orbit length, that left twists move a module to the
//!   coaction-translated orbit, and that duality carries the span of a free
//!   orbit onto the antipode image of the span of the dual orbit.
//! * [`character_orthogonality`] evaluates all products of irreducible
//!   characters against the normalized integral and demands the identity
//!   Gram matrix, plus the Frobenius adjunction on character triples.
//! * [`pq_arithmetic`], [`pq_refined`], [`pq_screen`], and
//!   [`pq_case_table`] cover the counting identity `1 + p n_p + q n_q = pq`
//!   and the inequalities that force a nontrivial grouplike element in
//!   dimension `pq`, including the complete per-residue exception lists.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::classify::is_prime;
use crate::construct::{
    biproduct, sparse_eq, spans_equal, ConstructError,
};
use crate::cyclo::{Cyc, CycError, CycField};
use crate::hopf::{
    sparse_add, sparse_from_dense, sparse_normalize, sparse_scale, sparse_single, sparse_to_dense,
    HopfError, SparseVec, Term, YdHopf,
};
use crate::linalg::Matrix;

#[derive(Debug, Error)]
pub enum CliffordError {
    #[error("not commutative: {0}")]
    NotCommutative(String),
    #[error("no block decomposition: {0}")]
    NoBlockDecomposition(String),
    #[error("no cyclic block generator: {0}")]
    NoCyclicGenerator(String),
    #[error("eigenvalues outside the cyclotomic root group: {0}")]
    IrrationalEigenvalues(String),
    #[error(
        "splitting field too small: conductor {conductor} lacks the block eigenvalues, retry with conductor {needed}"
    )]
    SplittingFieldTooSmall { conductor: u64, needed: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("verification failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Field(#[from] CycError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

// ---------------------------------------------------------------------------
// cyclic group bookkeeping
// ---------------------------------------------------------------------------

/// Power and logarithm tables of a cyclic group with a chosen generator.
struct CyclicIndex {
    generator: usize,
    /// `power[k]` is the `k`-th power of the generator.
    power: Vec<usize>,
    /// `log[power[k]] = k`.
    log: Vec<usize>,
}

fn cyclic_index(group: &crate::finite::FiniteGroup) -> Result<CyclicIndex, CliffordError> {
    let n = group.order();
    let id = group.identity();
    if n == 1 {
        return Ok(CyclicIndex {
            generator: id,
            power: vec![id],
            log: vec![0],
        });
    }
    let generator = (0..n)
        .find(|&h| h != id)
        .expect("a group of order at least two has a non-identity element");
    let mut power = vec![id];
    let mut cur = generator;
    while cur != id {
        power.push(cur);
        cur = group.mul(cur, generator);
    }
    if power.len() != n {
        return Err(CliffordError::InvalidInput(format!(
            "the auxiliary group of order {n} is not generated by element {generator}"
        )));
    }
    let mut log = vec![0; n];
    for (k, &h) in power.iter().enumerate() {
        log[h] = k;
    }
    Ok(CyclicIndex {
        generator,
        power,
        log,
    })
}

/// A primitive root of unity whose order is the order of the auxiliary group.
fn hgroup_root(a: &YdHopf) -> Result<Cyc, CliffordError> {
    let n = a.hgroup().order();
    if n == 1 {
        Ok(a.field().one())
    } else {
        Ok(a.field().root_of_unity(n as u64)?)
    }
}

// ---------------------------------------------------------------------------
// functional calculus on value rows
// ---------------------------------------------------------------------------

/// Value of a linear functional, given by its row of basis values, on a
/// sparse vector.
fn row_eval(row: &[Cyc], x: &[Term], field: &Arc<CycField>) -> Cyc {
    let mut acc = field.zero();
    for t in x {
        acc = &acc + &(&t.coef * &row[t.idx]);
    }
    acc
}

/// Convolution product of two linear functionals on a Hopf algebra, again as
/// a row of basis values.
fn convolve(b: &YdHopf, x: &[Cyc], y: &[Cyc]) -> Vec<Cyc> {
    let dim = b.dim();
    let field = b.field();
    (0..dim)
        .map(|i| {
            let mut acc = field.zero();
            for t in b.comult_basis(i) {
                let (j, k) = (t.idx / dim, t.idx % dim);
                acc = &acc + &(&t.coef * &(&x[j] * &y[k]));
            }
            acc
        })
        .collect()
}

/// The functional `x . S`, obtained by precomposing with the antipode.
fn antipode_pullback(b: &YdHopf, x: &[Cyc]) -> Result<Vec<Cyc>, CliffordError> {
    let table = b.antipode_table().ok_or_else(|| {
        CliffordError::InvalidInput("the algebra carries no antipode table".into())
    })?;
    Ok((0..b.dim())
        .map(|i| row_eval(x, &table[i], b.field()))
        .collect())
}

/// The functional on the biproduct that pairs the counit of the base with
/// the `m`-th power of the faithful character of the group part.
fn counit_twist_row(
    a: &YdHopf,
    ci: &CyclicIndex,
    zeta: &Cyc,
    m: usize,
) -> Vec<Cyc> {
    let nh = a.hgroup().order();
    let mut row = Vec::with_capacity(a.dim() * nh);
    for i in 0..a.dim() {
        for c in 0..nh {
            row.push(&a.counit_coef(i).clone() * &zeta.pow((m * ci.log[c]) as u64));
        }
    }
    row
}

/// The scalar row by which the basis elements multiply a primitive
/// idempotent of a commutative algebra.
fn block_character(a: &YdHopf, f: &[Term]) -> Result<Vec<Cyc>, CliffordError> {
    let field = a.field();
    let lead = f
        .first()
        .ok_or_else(|| CliffordError::InvalidInput("the zero vector is not an idempotent".into()))?;
    let lead_inv = lead.coef.inv()?;
    let mut row = Vec::with_capacity(a.dim());
    for j in 0..a.dim() {
        let prod = a.mul(&sparse_single(j, field.one()), f);
        let scalar = prod
            .iter()
            .find(|t| t.idx == lead.idx)
            .map(|t| &t.coef * &lead_inv)
            .unwrap_or_else(|| field.zero());
        if !sparse_eq(&prod, &sparse_scale(f, &scalar)) {
            return Err(CliffordError::CheckFailed(format!(
                "basis element {j} does not act as a scalar on the idempotent led by index {}",
                lead.idx
            )));
        }
        row.push(scalar);
    }
    Ok(row)
}

// ---------------------------------------------------------------------------
// primitive idempotents
// ---------------------------------------------------------------------------

/// The complete list of primitive idempotents of a commutative algebra whose
/// basis contains the block units, ordered by the lowest basis index of the
/// block and, within a block, by the enumeration order of the eigenvalue
/// candidates.
///
/// Each block must be spanned by the powers of one of its basis elements,
/// whose top power returns to the block unit times a root of unity; the
/// Fourier combinations of the powers along each eigenvalue candidate then
/// give the idempotents.  The result is verified from scratch: idempotency,
/// pairwise orthogonality, summing to one, a full count, and primitivity of
/// every member through the scalar-action criterion.
pub fn primitive_idempotents(a: &YdHopf) -> Result<Vec<SparseVec>, CliffordError> {
    let field = a.field();
    let dim = a.dim();
    let one = field.one();
    for i in 0..dim {
        for j in (i + 1)..dim {
            if !sparse_eq(a.mult_basis(i, j), a.mult_basis(j, i)) {
                return Err(CliffordError::NotCommutative(format!(
                    "the products of basis elements {i} and {j} differ by order"
                )));
            }
        }
    }
    let block_units: Vec<usize> = (0..dim)
        .filter(|&i| sparse_eq(a.mult_basis(i, i), &sparse_single(i, one.clone())))
        .collect();
    if block_units.is_empty() {
        return Err(CliffordError::NoBlockDecomposition(
            "no basis element is idempotent".into(),
        ));
    }
    for (pos, &i) in block_units.iter().enumerate() {
        for &j in &block_units[pos + 1..] {
            if !a.mult_basis(i, j).is_empty() {
                return Err(CliffordError::NoBlockDecomposition(format!(
                    "the idempotent basis elements {i} and {j} are not orthogonal"
                )));
            }
        }
    }
    let unit_sum = sparse_normalize(
        block_units
            .iter()
            .map(|&i| Term {
                idx: i,
                coef: one.clone(),
            })
            .collect(),
    );
    if !sparse_eq(&unit_sum, a.unit_vec()) {
        return Err(CliffordError::NoBlockDecomposition(
            "the idempotent basis elements do not sum to the unit".into(),
        ));
    }
    let mut owner = vec![usize::MAX; dim];
    for &e in &block_units {
        for j in 0..dim {
            let prod = a.mult_basis(e, j);
            if prod.is_empty() {
                continue;
            }
            if sparse_eq(prod, &sparse_single(j, one.clone())) {
                if owner[j] != usize::MAX {
                    return Err(CliffordError::NoBlockDecomposition(format!(
                        "basis element {j} lies in the blocks of both {} and {e}",
                        owner[j]
                    )));
                }
                owner[j] = e;
            } else {
                return Err(CliffordError::NoBlockDecomposition(format!(
                    "the block unit {e} neither fixes nor kills basis element {j}"
                )));
            }
        }
    }
    if let Some(j) = (0..dim).find(|&j| owner[j] == usize::MAX) {
        return Err(CliffordError::NoBlockDecomposition(format!(
            "basis element {j} is fixed by no block unit"
        )));
    }
    let mut result: Vec<SparseVec> = Vec::with_capacity(dim);
    for &e in &block_units {
        let members: Vec<usize> = (0..dim).filter(|&j| owner[j] == e).collect();
        result.extend(split_block(a, e, &members)?);
    }
    verify_idempotents(a, &result)?;
    Ok(result)
}

/// Diagonalizes one block by the Fourier combinations of the powers of a
/// basis generator.
fn split_block(a: &YdHopf, e: usize, members: &[usize]) -> Result<Vec<SparseVec>, CliffordError> {
    let field = a.field();
    let one = field.one();
    let d = members.len();
    if d == 1 {
        return Ok(vec![sparse_single(e, one)]);
    }
    let mut found: Option<(Vec<(usize, Cyc)>, Cyc)> = None;
    'candidates: for &g in members {
        if g == e {
            continue;
        }
        let gv = sparse_single(g, one.clone());
        let mut powers = vec![(e, one.clone())];
        let mut seen = vec![e];
        let mut cur = sparse_single(e, one.clone());
        for _ in 1..d {
            cur = a.mul(&cur, &gv);
            if cur.len() != 1 || seen.contains(&cur[0].idx) || !members.contains(&cur[0].idx) {
                continue 'candidates;
            }
            seen.push(cur[0].idx);
            powers.push((cur[0].idx, cur[0].coef.clone()));
        }
        cur = a.mul(&cur, &gv);
        if cur.len() != 1 || cur[0].idx != e {
            continue;
        }
        found = Some((powers, cur[0].coef.clone()));
        break;
    }
    let Some((powers, top)) = found else {
        return Err(CliffordError::NoCyclicGenerator(format!(
            "the block of {d} basis elements led by index {e} is not spanned by the powers of any of its basis elements"
        )));
    };
    let conductor = field.conductor();
    let top_order = (1..=2 * conductor).find(|&r| top.pow(r).is_one());
    let Some(top_order) = top_order else {
        return Err(CliffordError::IrrationalEigenvalues(format!(
            "the generator of the block led by index {e} returns with a scalar that is not a root of unity, so no cyclotomic field splits the block"
        )));
    };
    let candidates: Vec<Cyc> = a
        .all_roots_of_unity()
        .into_iter()
        .filter(|mu| mu.pow(d as u64) == top)
        .collect();
    if candidates.len() < d {
        return Err(CliffordError::SplittingFieldTooSmall {
            conductor,
            needed: retry_conductor(conductor, d as u64, top_order),
        });
    }
    let d_inv = field.from_i64(d as i64).inv()?;
    let mut out = Vec::with_capacity(d);
    for mu in &candidates {
        let mu_inv = mu.inv()?;
        let mut weight = field.one();
        let mut terms = Vec::with_capacity(d);
        for (idx, coef) in &powers {
            terms.push(Term {
                idx: *idx,
                coef: &(&weight * coef) * &d_inv,
            });
            weight = &weight * &mu_inv;
        }
        out.push(sparse_normalize(terms));
    }
    Ok(out)
}

/// The smallest conductor whose cyclotomic field contains the base field and
/// all `d`-th roots of a root of unity of the given order.
fn retry_conductor(conductor: u64, d: u64, top_order: u64) -> u64 {
    let must_divide = d * top_order;
    let mut c = conductor;
    loop {
        let root_group = if c % 2 == 0 { c } else { 2 * c };
        if root_group % must_divide == 0 {
            return c;
        }
        c += conductor;
    }
}

fn verify_idempotents(a: &YdHopf, list: &[SparseVec]) -> Result<(), CliffordError> {
    if list.len() != a.dim() {
        return Err(CliffordError::CheckFailed(format!(
            "a split commutative algebra of dimension {} must have as many primitive idempotents, found {}",
            a.dim(),
            list.len()
        )));
    }
    let mut total: SparseVec = Vec::new();
    for f in list {
        total = sparse_add(&total, f);
    }
    if !sparse_eq(&total, a.unit_vec()) {
        return Err(CliffordError::CheckFailed(
            "the primitive idempotents do not sum to the unit".into(),
        ));
    }
    (0..list.len()).into_par_iter().try_for_each(|i| {
        for j in 0..list.len() {
            let prod = a.mul(&list[i], &list[j]);
            let expected = if i == j { list[i].clone() } else { Vec::new() };
            if !sparse_eq(&prod, &expected) {
                return Err(CliffordError::CheckFailed(format!(
                    "the product of idempotents {i} and {j} is not {}",
                    if i == j { "idempotent" } else { "zero" }
                )));
            }
        }
        block_character(a, &list[i]).map(|_| ())
    })
}

// ---------------------------------------------------------------------------
// orbits of the induced permutations
// ---------------------------------------------------------------------------

/// Primitive idempotents together with the permutations and orbits induced
/// by the action and the coaction.
pub struct CliffordData {
    idempotents: Vec<SparseVec>,
    action_perm: Vec<usize>,
    coaction_perm: Vec<usize>,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
}

impl CliffordData {
    pub fn idempotents(&self) -> &[SparseVec] {
        &self.idempotents
    }

    /// Image positions of the idempotents under the action of the group
    /// generator.
    pub fn action_perm(&self) -> &[usize] {
        &self.action_perm
    }

    /// Image positions under the algebra map obtained by pairing the
    /// coaction with the faithful character of the group.
    pub fn coaction_perm(&self) -> &[usize] {
        &self.coaction_perm
    }

    /// Orbits of the action permutation, each listed in cycle order starting
    /// from its smallest member, and ordered by that smallest member.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of(&self, idempotent: usize) -> usize {
        self.orbit_of[idempotent]
    }

    /// An orbit is stable when the action fixes its single member.
    pub fn is_stable(&self, orbit: usize) -> bool {
        self.orbits[orbit].len() == 1
    }

    pub fn stable_orbits(&self) -> usize {
        self.orbits.iter().filter(|o| o.len() == 1).count()
    }

    pub fn free_orbits(&self) -> usize {
        self.orbits.iter().filter(|o| o.len() > 1).count()
    }
}

fn permutation_of(
    idempotents: &[SparseVec],
    image: impl Fn(&[Term]) -> SparseVec,
    what: &str,
) -> Result<Vec<usize>, CliffordError> {
    let mut perm = Vec::with_capacity(idempotents.len());
    for (i, f) in idempotents.iter().enumerate() {
        let img = image(f);
        let Some(j) = idempotents.iter().position(|g| sparse_eq(g, &img)) else {
            return Err(CliffordError::CheckFailed(format!(
                "{what} does not permute the primitive idempotents: the image of idempotent {i} is not in the list"
            )));
        };
        perm.push(j);
    }
    let mut seen = vec![false; perm.len()];
    for &j in &perm {
        if seen[j] {
            return Err(CliffordError::CheckFailed(format!(
                "{what} maps two idempotents to the same image"
            )));
        }
        seen[j] = true;
    }
    Ok(perm)
}

fn perm_power(perm: &[usize], mut e: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..perm.len()).collect();
    while e > 0 {
        out = out.iter().map(|&i| perm[i]).collect();
        e -= 1;
    }
    out
}

/// The coaction paired with the `zeta`-valued character of the group.
fn coaction_twist(a: &YdHopf, ci: &CyclicIndex, zeta: &Cyc, v: &[Term]) -> SparseVec {
    let dim = a.dim();
    let mut terms = Vec::new();
    for t in v {
        for u in a.coaction_basis(t.idx) {
            let (h, j) = (u.idx / dim, u.idx % dim);
            let weight = zeta.pow(ci.log[h] as u64);
            terms.push(Term {
                idx: j,
                coef: &(&t.coef * &u.coef) * &weight,
            });
        }
    }
    sparse_normalize(terms)
}

/// Splits a commutative algebra over a group of prime order into primitive
/// idempotents and partitions them into orbits of the action of the group
/// generator.
///
/// Both the action and the coaction pairing must permute the idempotents
/// with order dividing the group order.  Every orbit must either be a fixed
/// point or have the full prime length, and the coaction permutation must
/// preserve each full-length orbit.
pub fn orbit_analysis(a: &YdHopf) -> Result<CliffordData, CliffordError> {
    let idempotents = primitive_idempotents(a)?;
    let n = a.hgroup().order();
    if n != 1 && !is_prime(n) {
        return Err(CliffordError::InvalidInput(format!(
            "the auxiliary group must be trivial or of prime order, got order {n}"
        )));
    }
    let ci = cyclic_index(a.hgroup())?;
    let zeta = hgroup_root(a)?;
    let action_perm = permutation_of(
        &idempotents,
        |f| a.act(ci.generator, f),
        "the action of the group generator",
    )?;
    let coaction_perm = permutation_of(
        &idempotents,
        |f| coaction_twist(a, &ci, &zeta, f),
        "the coaction pairing",
    )?;
    let identity: Vec<usize> = (0..idempotents.len()).collect();
    if perm_power(&action_perm, n) != identity {
        return Err(CliffordError::CheckFailed(
            "the action permutation does not have order dividing the group order".into(),
        ));
    }
    if perm_power(&coaction_perm, n) != identity {
        return Err(CliffordError::CheckFailed(
            "the coaction permutation does not have order dividing the group order".into(),
        ));
    }
    let mut orbit_of = vec![usize::MAX; idempotents.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..idempotents.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let mut orbit = vec![start];
        orbit_of[start] = orbits.len();
        let mut cur = action_perm[start];
        while cur != start {
            orbit_of[cur] = orbits.len();
            orbit.push(cur);
            cur = action_perm[cur];
        }
        orbits.push(orbit);
    }
    for orbit in &orbits {
        if orbit.len() != 1 && orbit.len() != n {
            return Err(CliffordError::CheckFailed(format!(
                "the orbit of idempotent {} has length {}, expected 1 or {n}",
                orbit[0],
                orbit.len()
            )));
        }
    }
    for (oi, orbit) in orbits.iter().enumerate() {
        if orbit.len() == 1 {
            continue;
        }
        for &e in orbit {
            if orbit_of[coaction_perm[e]] != oi {
                return Err(CliffordError::CheckFailed(format!(
                    "the coaction pairing moves idempotent {e} out of its free orbit"
                )));
            }
        }
    }
    Ok(CliffordData {
        idempotents,
        action_perm,
        coaction_perm,
        orbits,
        orbit_of,
    })
}

// ---------------------------------------------------------------------------
// simple modules of the biproduct
// ---------------------------------------------------------------------------

/// A simple module of the biproduct, given by explicit representing
/// matrices over the basis of the biproduct.
pub struct SimpleModule {
    pub dim: usize,
    /// One matrix per basis element of the biproduct.
    pub matrices: Vec<Matrix>,
    /// Trace row of the matrices.
    pub character: Vec<Cyc>,
    /// Index of the idempotent orbit the module restricts to.
    pub orbit: usize,
    /// For a one-dimensional module, the exponent of the character of the
    /// group part it is twisted by.
    pub twist: Option<usize>,
    /// Exponents `m` for which convolving the character with the counit
    /// paired against the `m`-th character power fixes it.
    pub twist_stabilizer: Vec<usize>,
}

/// The complete list of simple modules of a biproduct, together with the
/// biproduct itself.
pub struct ModuleTable {
    biproduct: YdHopf,
    modules: Vec<SimpleModule>,
}

impl ModuleTable {
    pub fn biproduct(&self) -> &YdHopf {
        &self.biproduct
    }

    pub fn modules(&self) -> &[SimpleModule] {
        &self.modules
    }
}

fn linear_matrix(field: &Arc<CycField>, module: &SimpleModule, x: &[Term]) -> Matrix {
    let d = module.dim;
    let mut acc = Matrix::zero(field, d, d);
    for t in x {
        let m = &module.matrices[t.idx];
        for r in 0..d {
            for c in 0..d {
                let sum = &acc.at(r, c).clone() + &(&t.coef * m.at(r, c));
                *acc.at_mut(r, c) = sum;
            }
        }
    }
    acc
}

fn matrices_equal(a: &Matrix, b: &Matrix) -> bool {
    a.rows() == b.rows()
        && a.cols() == b.cols()
        && (0..a.rows()).all(|r| (0..a.cols()).all(|c| a.at(r, c) == b.at(r, c)))
}

fn matrix_trace(field: &Arc<CycField>, m: &Matrix) -> Cyc {
    let mut acc = field.zero();
    for r in 0..m.rows() {
        acc = &acc + m.at(r, r);
    }
    acc
}

fn verify_module(b: &YdHopf, module: &SimpleModule) -> Result<(), CliffordError> {
    let field = b.field();
    if !matrices_equal(
        &linear_matrix(field, module, b.unit_vec()),
        &Matrix::identity(field, module.dim),
    ) {
        return Err(CliffordError::CheckFailed(format!(
            "the module at orbit {} does not send the unit to the identity matrix",
            module.orbit
        )));
    }
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            let lhs = module.matrices[i].mul(&module.matrices[j]);
            let rhs = linear_matrix(field, module, b.mult_basis(i, j));
            if !matrices_equal(&lhs, &rhs) {
                return Err(CliffordError::CheckFailed(format!(
                    "the module at orbit {} is not multiplicative on basis pair ({i}, {j})",
                    module.orbit
                )));
            }
        }
        if matrix_trace(field, &module.matrices[i]) != module.character[i] {
            return Err(CliffordError::CheckFailed(format!(
                "the stored character of the module at orbit {} differs from the trace at basis element {i}",
                module.orbit
            )));
        }
    }
    Ok(())
}

/// Builds the biproduct of the algebra and lists all of its simple modules.
///
/// A fixed idempotent `e` contributes one one-dimensional module per power
/// of the faithful character of the group part: the block is spanned by `e`
/// alone, so the lift realizing the action by conjugation inside the block
/// is the scalar `e` itself and the base algebra acts through the block
/// character.  A free orbit contributes one module of full prime dimension,
/// induced by translating the block character of its leading idempotent
/// along the inverse powers of the action.  Every module is verified to be
/// a unital algebra map, the characters are verified against the matrix
/// traces and to take the module dimension at the unit, and the table is
/// checked complete in two ways: the squared dimensions sum to the
/// dimension of the biproduct and the count equals the dimension of its
/// center.
pub fn biproduct_simple_modules(
    a: &YdHopf,
    data: &CliffordData,
) -> Result<ModuleTable, CliffordError> {
    if data.idempotents.len() != a.dim() {
        return Err(CliffordError::InvalidInput(
            "the orbit data does not belong to this algebra".into(),
        ));
    }
    let b = biproduct(a)?;
    let field = a.field().clone();
    let adim = a.dim();
    let nh = a.hgroup().order();
    let ci = cyclic_index(a.hgroup())?;
    let zeta = hgroup_root(a)?;
    let bdim = b.dim();
    let bidx = |i: usize, c: usize| i * nh + c;

    let block_chars: Vec<Vec<Cyc>> = data
        .idempotents
        .iter()
        .map(|f| block_character(a, f))
        .collect::<Result<_, _>>()?;

    let mut modules: Vec<SimpleModule> = Vec::new();
    for (oi, orbit) in data.orbits.iter().enumerate() {
        if orbit.len() == 1 {
            let eta = &block_chars[orbit[0]];
            for m in 0..nh {
                let mut character = vec![field.zero(); bdim];
                let mut matrices = Vec::with_capacity(bdim);
                for i in 0..adim {
                    for c in 0..nh {
                        let value = &eta[i] * &zeta.pow((m * ci.log[c]) as u64);
                        let mut mat = Matrix::zero(&field, 1, 1);
                        *mat.at_mut(0, 0) = value.clone();
                        character[bidx(i, c)] = value;
                        matrices.push(mat);
                    }
                }
                modules.push(SimpleModule {
                    dim: 1,
                    matrices,
                    character,
                    orbit: oi,
                    twist: Some(m),
                    twist_stabilizer: Vec::new(),
                });
            }
        } else {
            let p = orbit.len();
            let eta = &block_chars[orbit[0]];
            // shifted[k] is the block character precomposed with the k-th
            // power of the inverse generator action
            let mut shifted: Vec<Vec<Cyc>> = Vec::with_capacity(p);
            for k in 0..p {
                let back = ci.power[(p - k) % p];
                let mut row = Vec::with_capacity(adim);
                for i in 0..adim {
                    let moved = a.act(back, &sparse_single(i, field.one()));
                    row.push(row_eval(eta, &moved, &field));
                }
                shifted.push(row);
            }
            let mut character = vec![field.zero(); bdim];
            let mut matrices = Vec::with_capacity(bdim);
            for i in 0..adim {
                for c in 0..nh {
                    let j = ci.log[c];
                    let mut mat = Matrix::zero(&field, p, p);
                    for k in 0..p {
                        *mat.at_mut((k + j) % p, k) = shifted[(k + j) % p][i].clone();
                    }
                    if j == 0 {
                        let mut trace = field.zero();
                        for row in &shifted {
                            trace = &trace + &row[i];
                        }
                        character[bidx(i, c)] = trace;
                    }
                    matrices.push(mat);
                }
            }
            modules.push(SimpleModule {
                dim: p,
                matrices,
                character,
                orbit: oi,
                twist: None,
                twist_stabilizer: Vec::new(),
            });
        }
    }

    modules
        .par_iter()
        .try_for_each(|module| verify_module(&b, module))?;
    for (vi, module) in modules.iter().enumerate() {
        let at_unit = row_eval(&module.character, b.unit_vec(), &field);
        if at_unit != field.from_i64(module.dim as i64) {
            return Err(CliffordError::CheckFailed(format!(
                "the character of module {vi} takes the value {at_unit} at the unit instead of the dimension"
            )));
        }
    }

    let twist_rows: Vec<Vec<Cyc>> = (0..nh)
        .map(|m| counit_twist_row(a, &ci, &zeta, m))
        .collect();
    for module in &mut modules {
        module.twist_stabilizer = (0..nh)
            .filter(|&m| convolve(&b, &module.character, &twist_rows[m]) == module.character)
            .collect();
    }

    let squares: usize = modules.iter().map(|m| m.dim * m.dim).sum();
    if squares != bdim {
        return Err(CliffordError::CheckFailed(format!(
            "the squared module dimensions sum to {squares} instead of the biproduct dimension {bdim}"
        )));
    }
    let center_dim = b.center().len();
    if modules.len() != center_dim {
        return Err(CliffordError::CheckFailed(format!(
            "found {} simple modules but the center of the biproduct has dimension {center_dim}",
            modules.len()
        )));
    }
    Ok(ModuleTable {
        biproduct: b,
        modules,
    })
}

// ---------------------------------------------------------------------------
// linkage
// ---------------------------------------------------------------------------

/// Counters for the pairwise module relations verified by [`linkage_check`].
pub struct LinkageReport {
    /// Unordered module pairs compared.
    pub pairs_checked: usize,
    /// Pairs whose members restrict to the same idempotent orbit.
    pub linked_pairs: usize,
    /// Verified instances of a left twist landing on the coaction-translated
    /// orbit.
    pub translate_checks: usize,
    /// Free modules whose dual orbit span matched the antipode image.
    pub dual_span_checks: usize,
}

/// Verifies that the three pairwise relations between simple modules agree,
/// together with the stabilizer cardinalities, the translation behaviour of
/// orbits under twists, and the duality of free orbit spans.
///
/// The relations compared for every unordered pair: restricting to the same
/// idempotent orbit, having the same multiset of block characters in the
/// restriction, and differing by convolution with a twisted counit.  The
/// restriction multiset is read off from the character values at the
/// embedded idempotents, which must be zero or one; its support must be
/// exactly the recorded orbit.  For every module the twist stabilizer must
/// have the size of the orbit, the right twists of a one-dimensional module
/// must be pairwise distinct, and the left twists must land on the module
/// whose orbit is the coaction-translate of the original.  For every free
/// module the antipode image of the span of the dual module's orbit must be
/// the span of the original orbit.
pub fn linkage_check(
    a: &YdHopf,
    data: &CliffordData,
    table: &ModuleTable,
) -> Result<LinkageReport, CliffordError> {
    let b = table.biproduct();
    let field = a.field();
    let adim = a.dim();
    let nh = a.hgroup().order();
    if data.idempotents.len() != adim || b.dim() != adim * nh {
        return Err(CliffordError::InvalidInput(
            "the orbit data and module table do not belong to this algebra".into(),
        ));
    }
    let ci = cyclic_index(a.hgroup())?;
    let zeta = hgroup_root(a)?;
    let mods = table.modules();
    let twist_rows: Vec<Vec<Cyc>> = (0..nh)
        .map(|m| counit_twist_row(a, &ci, &zeta, m))
        .collect();

    for (vi, module) in mods.iter().enumerate() {
        let expected = data.orbits[module.orbit].len();
        if module.twist_stabilizer.len() != expected {
            return Err(CliffordError::CheckFailed(format!(
                "module {vi}: the twist stabilizer has size {} but the orbit has size {expected}",
                module.twist_stabilizer.len()
            )));
        }
    }

    // multiplicity of each block character in the restriction, read off at
    // the embedded idempotents
    let id_c = a.hgroup().identity();
    let mut multiplicities: Vec<Vec<bool>> = Vec::with_capacity(mods.len());
    for (vi, module) in mods.iter().enumerate() {
        let mut support = Vec::with_capacity(adim);
        for (fi, f) in data.idempotents.iter().enumerate() {
            let embedded: SparseVec = f
                .iter()
                .map(|t| Term {
                    idx: t.idx * nh + id_c,
                    coef: t.coef.clone(),
                })
                .collect();
            let value = row_eval(&module.character, &embedded, field);
            if value.is_zero() {
                support.push(false);
            } else if value.is_one() {
                support.push(true);
            } else {
                return Err(CliffordError::CheckFailed(format!(
                    "module {vi} restricts to idempotent {fi} with multiplicity {value}, expected zero or one"
                )));
            }
        }
        let from_support: Vec<usize> = (0..adim).filter(|&fi| support[fi]).collect();
        let mut recorded = data.orbits[module.orbit].clone();
        recorded.sort_unstable();
        if from_support != recorded {
            return Err(CliffordError::CheckFailed(format!(
                "module {vi}: the support of the restriction differs from the recorded orbit"
            )));
        }
        multiplicities.push(support);
    }

    let mut pairs_checked = 0;
    let mut linked_pairs = 0;
    for vi in 0..mods.len() {
        for vj in (vi + 1)..mods.len() {
            let same_orbit = mods[vi].orbit == mods[vj].orbit;
            let same_restriction = multiplicities[vi] == multiplicities[vj];
            let twist_related = (0..nh).any(|m| {
                convolve(b, &mods[vi].character, &twist_rows[m]) == mods[vj].character
            });
            if same_orbit != same_restriction || same_orbit != twist_related {
                return Err(CliffordError::CheckFailed(format!(
                    "modules {vi} and {vj}: orbit equality is {same_orbit}, restriction equality is {same_restriction}, twist relation is {twist_related}"
                )));
            }
            pairs_checked += 1;
            if same_orbit {
                linked_pairs += 1;
            }
        }
    }

    // right twists of a one-dimensional module stay pairwise distinct
    for (vi, module) in mods.iter().enumerate() {
        if module.dim != 1 {
            continue;
        }
        let translates: Vec<Vec<Cyc>> = (0..nh)
            .map(|m| convolve(b, &module.character, &twist_rows[m]))
            .collect();
        for m in 0..nh {
            for m2 in (m + 1)..nh {
                if translates[m] == translates[m2] {
                    return Err(CliffordError::CheckFailed(format!(
                        "module {vi}: the right twists by {m} and {m2} coincide"
                    )));
                }
            }
        }
    }

    // left twists translate the orbit by the inverse coaction permutation
    let mut translate_checks = 0;
    for (vi, module) in mods.iter().enumerate() {
        for m in 0..nh {
            let left = convolve(b, &twist_rows[m], &module.character);
            let Some(target) = mods.iter().position(|w| w.character == left) else {
                return Err(CliffordError::CheckFailed(format!(
                    "the left twist of module {vi} by {m} is not the character of any simple module"
                )));
            };
            let mut expected: Vec<usize> = data.orbits[module.orbit]
                .iter()
                .map(|&e| {
                    let mut cur = e;
                    for _ in 0..(nh - m) % nh {
                        cur = data.coaction_perm[cur];
                    }
                    cur
                })
                .collect();
            expected.sort_unstable();
            let mut found = data.orbits[mods[target].orbit].clone();
            found.sort_unstable();
            if expected != found {
                return Err(CliffordError::CheckFailed(format!(
                    "the left twist of module {vi} by {m} lands on orbit {} instead of the coaction translate",
                    mods[target].orbit
                )));
            }
            translate_checks += 1;
        }
    }

    // duality of free orbit spans through the antipode of the base
    let mut dual_span_checks = 0;
    for (vi, module) in mods.iter().enumerate() {
        if module.dim == 1 {
            continue;
        }
        let dual_char = antipode_pullback(b, &module.character)?;
        let Some(dual) = mods.iter().position(|w| w.character == dual_char) else {
            return Err(CliffordError::CheckFailed(format!(
                "the dual character of module {vi} is not in the table"
            )));
        };
        let image: Vec<Vec<Cyc>> = data.orbits[mods[dual].orbit]
            .iter()
            .map(|&e| {
                let moved = a.antipode_vec(&data.idempotents[e])?;
                Ok(sparse_to_dense(adim, &moved, field))
            })
            .collect::<Result<_, CliffordError>>()?;
        let original: Vec<Vec<Cyc>> = data.orbits[module.orbit]
            .iter()
            .map(|&e| sparse_to_dense(adim, &data.idempotents[e], field))
            .collect();
        if !spans_equal(field, &image, &original) {
            return Err(CliffordError::CheckFailed(format!(
                "the antipode image of the dual orbit span of module {vi} differs from the orbit span"
            )));
        }
        dual_span_checks += 1;
    }

    Ok(LinkageReport {
        pairs_checked,
        linked_pairs,
        translate_checks,
        dual_span_checks,
    })
}

// ---------------------------------------------------------------------------
// character orthogonality
// ---------------------------------------------------------------------------

/// The unique left integral normalized so the counit takes the value one on
/// it, verified to be a right integral as well.
pub fn normalized_integral(b: &YdHopf) -> Result<SparseVec, CliffordError> {
    let space = b.left_integral_space();
    if space.len() != 1 {
        return Err(CliffordError::CheckFailed(format!(
            "the space of left integrals has dimension {}, expected one",
            space.len()
        )));
    }
    let raw = sparse_from_dense(&space[0]);
    let at_counit = b.counit_vec(&raw);
    if at_counit.is_zero() {
        return Err(CliffordError::CheckFailed(
            "the counit annihilates the integral, which therefore cannot be normalized".into(),
        ));
    }
    let integral = sparse_scale(&raw, &at_counit.inv()?);
    if !b.is_right_integral(&integral) {
        return Err(CliffordError::CheckFailed(
            "the normalized left integral is not a right integral".into(),
        ));
    }
    Ok(integral)
}

/// Evaluates every product of an irreducible character with a conjugate
/// irreducible character on the normalized integral and returns the Gram
/// matrix, which must be the identity.  Frobenius adjunction is verified on
/// character triples, all of them when the table is small and a
/// deterministic sample otherwise.
pub fn character_orthogonality(table: &ModuleTable) -> Result<Matrix, CliffordError> {
    let b = table.biproduct();
    let field = b.field();
    let integral = normalized_integral(b)?;
    let mods = table.modules();
    let k = mods.len();
    let conjugates: Vec<Vec<Cyc>> = mods
        .iter()
        .map(|m| antipode_pullback(b, &m.character))
        .collect::<Result<_, _>>()?;
    let mut gram = Matrix::zero(field, k, k);
    for i in 0..k {
        for j in 0..k {
            let product = convolve(b, &mods[i].character, &conjugates[j]);
            *gram.at_mut(i, j) = row_eval(&product, &integral, field);
        }
    }
    for i in 0..k {
        for j in 0..k {
            let expected = if i == j { field.one() } else { field.zero() };
            if *gram.at(i, j) != expected {
                return Err(CliffordError::CheckFailed(format!(
                    "the character pairing of modules ({i}, {j}) is {}, breaking orthonormality",
                    gram.at(i, j)
                )));
            }
        }
    }

    let total = k * k * k;
    let stride = if total <= 1800 { 1 } else { total / 1200 + 1 };
    for flat in (0..total).step_by(stride) {
        let i = flat / (k * k);
        let j = (flat / k) % k;
        let l = flat % k;
        let product = convolve(b, &mods[i].character, &mods[j].character);
        let lhs = row_eval(
            &convolve(b, &product, &conjugates[l]),
            &integral,
            field,
        );
        let right_factor = convolve(b, &conjugates[i], &mods[l].character);
        let rhs = row_eval(
            &convolve(
                b,
                &mods[j].character,
                &antipode_pullback(b, &right_factor)?,
            ),
            &integral,
            field,
        );
        if lhs != rhs {
            return Err(CliffordError::CheckFailed(format!(
                "Frobenius adjunction fails on the character triple ({i}, {j}, {l})"
            )));
        }
    }
    Ok(gram)
}

// ---------------------------------------------------------------------------
// arithmetic screens for dimension pq
// ---------------------------------------------------------------------------

/// The unique solution of the counting identity `1 + p n_p + q n_q = pq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PqArithmetic {
    pub p: u64,
    pub q: u64,
    pub n_p: u64,
    pub n_q: u64,
}

/// Solves `1 + p n_p + q n_q = pq` for distinct primes by exhaustive scan,
/// checks the solution is unique and satisfies `0 < n_p < q` and
/// `0 < n_q < p`, and confirms it against the residue construction
/// `n_p p = -1 (mod q)`, `n_q q = -1 (mod p)`.
pub fn pq_arithmetic(p: u64, q: u64) -> Result<PqArithmetic, CliffordError> {
    if p == q || !is_prime(p as usize) || !is_prime(q as usize) {
        return Err(CliffordError::InvalidInput(format!(
            "two distinct primes are required, got {p} and {q}"
        )));
    }
    let mut found = None;
    for n_p in 0..q {
        for n_q in 0..p {
            if 1 + p * n_p + q * n_q == p * q {
                if found.is_some() {
                    return Err(CliffordError::CheckFailed(format!(
                        "the counting identity for ({p}, {q}) has two solutions in the scan range"
                    )));
                }
                found = Some((n_p, n_q));
            }
        }
    }
    let Some((n_p, n_q)) = found else {
        return Err(CliffordError::CheckFailed(format!(
            "the counting identity for ({p}, {q}) has no solution in the scan range"
        )));
    };
    if n_p == 0 || n_p >= q || n_q == 0 || n_q >= p {
        return Err(CliffordError::CheckFailed(format!(
            "the solution ({n_p}, {n_q}) for ({p}, {q}) escapes the open bounds"
        )));
    }
    let by_residue_p = (1..q).find(|&x| (x * p) % q == q - 1);
    let by_residue_q = (1..p).find(|&x| (x * q) % p == p - 1);
    if by_residue_p != Some(n_p) || by_residue_q != Some(n_q) {
        return Err(CliffordError::CheckFailed(format!(
            "the scan solution for ({p}, {q}) disagrees with the residue construction"
        )));
    }
    Ok(PqArithmetic { p, q, n_p, n_q })
}

/// The refinement available when `p` divides `q - 1`: the counts collapse
/// to `n_p = (q - 1)/p` and `n_q = p - 1`, verified against the scan.
pub fn pq_refined(p: u64, q: u64) -> Result<PqArithmetic, CliffordError> {
    let base = pq_arithmetic(p, q)?;
    if (q - 1) % p != 0 {
        return Err(CliffordError::NotApplicable(format!(
            "{p} does not divide {q} - 1"
        )));
    }
    if base.n_p != (q - 1) / p || base.n_q != p - 1 {
        return Err(CliffordError::CheckFailed(format!(
            "the refined counts for ({p}, {q}) disagree with the scan solution"
        )));
    }
    Ok(base)
}

/// Outcome of the grouplike screen for one pair of odd primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PqScreen {
    pub p: u64,
    pub q: u64,
    pub n_p: u64,
    /// Coefficient of `p` on the large side of the inequality.
    pub lhs_coef: i64,
    /// Constant on the small side.
    pub rhs: i64,
    /// Whether the sharper inequality available at `q = 5` was used.
    pub refined: bool,
    /// True when the inequality fails, so the dual of a nontrivial algebra
    /// of dimension `pq` must contain a nontrivial grouplike element.
    pub forces_grouplike: bool,
}

fn screen_coefficients(q: u64, n_p: u64) -> (i64, i64, bool) {
    let (qi, np) = (q as i64, n_p as i64);
    if q == 5 {
        (61 * np - 180, 225 * np + 139, true)
    } else {
        (qi * qi - 9 * qi + 9 * np, 24 * qi + 9 * qi * np - 9, false)
    }
}

/// Tests the dimension screen for a pair of odd primes: when the inequality
/// `lhs_coef * p >= rhs` fails, any algebra of dimension `pq` without a
/// nontrivial grouplike element in its dual is ruled out.
pub fn pq_screen(p: u64, q: u64) -> Result<PqScreen, CliffordError> {
    if p == 2 || q == 2 {
        return Err(CliffordError::InvalidInput(
            "both primes must be odd for the dimension screen".into(),
        ));
    }
    let base = pq_arithmetic(p, q)?;
    let (lhs_coef, rhs, refined) = screen_coefficients(q, base.n_p);
    let forces_grouplike = lhs_coef * (p as i64) < rhs;
    Ok(PqScreen {
        p,
        q,
        n_p: base.n_p,
        lhs_coef,
        rhs,
        refined,
        forces_grouplike,
    })
}

/// The screen outcome for one residue class of `p` modulo `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqResidueCase {
    pub residue: u64,
    pub n_p: u64,
    pub lhs_coef: i64,
    pub rhs: i64,
    /// True when the inequality fails for every prime in the class.
    pub all_forced: bool,
    /// Otherwise, the complete and finite list of primes in the class for
    /// which the inequality fails.
    pub forced_primes: Vec<u64>,
}

/// The complete residue analysis of the screen for a fixed odd prime `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqCaseTable {
    pub q: u64,
    pub cases: Vec<PqResidueCase>,
    /// Forced primes from the finite lists for which every group of order
    /// `pq` is abelian, so the algebra is both commutative and
    /// cocommutative.
    pub forced_both: Vec<u64>,
    /// Forced primes for which a nonabelian group of order `pq` exists, so
    /// only one of commutativity and cocommutativity is guaranteed.
    pub forced_either: Vec<u64>,
}

/// Whether a nonabelian group of order `pq` exists, which happens exactly
/// when one prime divides the other minus one.
fn nonabelian_pq_exists(p: u64, q: u64) -> bool {
    q % p == 1 || p % q == 1
}

/// Runs the screen for every residue class of odd primes `p` modulo `q` and
/// collects, per class, either the fact that all primes are forced or the
/// complete finite list of forced primes, split by whether a nonabelian
/// group of order `pq` exists.
pub fn pq_case_table(q: u64) -> Result<PqCaseTable, CliffordError> {
    if q == 2 || !is_prime(q as usize) {
        return Err(CliffordError::InvalidInput(format!(
            "the modulus must be an odd prime, got {q}"
        )));
    }
    let mut cases = Vec::new();
    let mut forced_both = Vec::new();
    let mut forced_either = Vec::new();
    for residue in 1..q {
        let n_p = (1..q)
            .find(|&x| (x * residue) % q == q - 1)
            .expect("every nonzero residue class modulo a prime is invertible");
        let (lhs_coef, rhs, _) = screen_coefficients(q, n_p);
        let all_forced = lhs_coef <= 0;
        let mut forced_primes = Vec::new();
        if !all_forced {
            let bound = ((rhs - 1).max(0) as u64) / (lhs_coef as u64);
            for p in (3..=bound).step_by(2) {
                if p % q == residue && p != q && is_prime(p as usize) {
                    forced_primes.push(p);
                }
            }
            for &p in &forced_primes {
                if nonabelian_pq_exists(p, q) {
                    forced_either.push(p);
                } else {
                    forced_both.push(p);
                }
            }
        }
        cases.push(PqResidueCase {
            residue,
            n_p,
            lhs_coef,
            rhs,
            all_forced,
            forced_primes,
        });
    }
    forced_both.sort_unstable();
    forced_either.sort_unstable();
    Ok(PqCaseTable {
        q,
        cases,
        forced_both,
        forced_either,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{ap_data, build_ag};
    use crate::finite::FiniteGroup;

    fn ap_algebra(conductor: u64, p: usize, a: usize, b: usize, n: usize) -> YdHopf {
        let field = CycField::new(conductor);
        build_ag(&ap_data(&field, p, a, b, n).unwrap()).unwrap()
    }

    #[test]
    fn function_algebra_splits_into_its_basis() {
        let field = CycField::new(3);
        let k3 = YdHopf::function_algebra(&field, &FiniteGroup::cyclic(3));
        let idempotents = primitive_idempotents(&k3).unwrap();
        assert_eq!(idempotents.len(), 3);
        for (i, f) in idempotents.iter().enumerate() {
            assert!(sparse_eq(f, &sparse_single(i, field.one())));
        }
        let data = orbit_analysis(&k3).unwrap();
        assert_eq!(data.orbits().len(), 3);
        assert_eq!(data.free_orbits(), 0);
    }

    #[test]
    fn untwisted_blocks_split_over_the_prime_conductor() {
        let a = ap_algebra(3, 3, 1, 1, 0);
        let data = orbit_analysis(&a).unwrap();
        assert_eq!(data.idempotents().len(), 9);
        assert_eq!(data.stable_orbits(), 3);
        assert_eq!(data.free_orbits(), 2);
        for orbit in data.orbits() {
            assert!(orbit.len() == 1 || orbit.len() == 3);
        }
        // bookkeeping: 3 fixed points and 2 full orbits partition 9
        assert_eq!(3 + 2 * 3, 9);
    }

    #[test]
    fn twisted_block_reports_the_repairing_conductor() {
        let small = ap_algebra(3, 3, 1, 1, 1);
        match primitive_idempotents(&small) {
            Err(CliffordError::SplittingFieldTooSmall { conductor, needed }) => {
                assert_eq!(conductor, 3);
                assert_eq!(needed, 9);
            }
            other => panic!("expected a splitting field failure, got {:?}", other.map(|v| v.len())),
        }
        let big = ap_algebra(9, 3, 1, 1, 1);
        let idempotents = primitive_idempotents(&big).unwrap();
        assert_eq!(idempotents.len(), 9);
    }

    #[test]
    fn twisted_generator_cubes_to_the_carried_root() {
        // in the block of e_1 the generator e_1 x_1 returns to e_1 x_0 with
        // the scalar read off the carry cocycle: q(1,1) + q(2,1) = 1
        let a = ap_algebra(9, 3, 1, 1, 1);
        let field = a.field();
        let g = sparse_single(4, field.one());
        let cube = a.mul(&a.mul(&g, &g), &g);
        let z3 = field.root_of_unity(3).unwrap();
        assert!(sparse_eq(&cube, &sparse_single(3, z3)));
    }

    fn full_pipeline(a: &YdHopf) -> (CliffordData, ModuleTable, Matrix) {
        let data = orbit_analysis(a).unwrap();
        let table = biproduct_simple_modules(a, &data).unwrap();
        let gram = character_orthogonality(&table).unwrap();
        (data, table, gram)
    }

    #[test]
    fn module_table_of_the_untwisted_biproduct() {
        let a = ap_algebra(3, 3, 1, 1, 0);
        let (data, table, gram) = full_pipeline(&a);
        let mods = table.modules();
        assert_eq!(mods.len(), 11);
        assert_eq!(mods.iter().filter(|m| m.dim == 1).count(), 9);
        assert_eq!(mods.iter().filter(|m| m.dim == 3).count(), 2);
        assert_eq!(mods.iter().map(|m| m.dim * m.dim).sum::<usize>(), 27);
        // induced characters vanish outside the identity column
        for module in mods.iter().filter(|m| m.dim == 3) {
            for i in 0..9 {
                for c in 1..3 {
                    assert!(module.character[i * 3 + c].is_zero());
                }
            }
        }
        let report = linkage_check(&a, &data, &table).unwrap();
        assert_eq!(report.pairs_checked, 55);
        assert_eq!(report.linked_pairs, 9);
        assert_eq!(report.translate_checks, 33);
        assert_eq!(report.dual_span_checks, 2);
        assert_eq!(gram.rows(), 11);
        // the two induced modules are orthogonal, as part of the identity
        let field = a.field();
        assert_eq!(*gram.at(9, 10), field.zero());
        assert_eq!(*gram.at(10, 10), field.one());
    }

    #[test]
    fn module_table_of_the_twisted_biproduct() {
        let a = ap_algebra(9, 3, 1, 1, 1);
        let (data, table, gram) = full_pipeline(&a);
        assert_eq!(data.stable_orbits(), 3);
        assert_eq!(data.free_orbits(), 2);
        assert_eq!(table.modules().len(), 11);
        assert_eq!(
            table.modules().iter().map(|m| m.dim * m.dim).sum::<usize>(),
            27
        );
        linkage_check(&a, &data, &table).unwrap();
        assert_eq!(gram.rows(), 11);
    }

    #[test]
    fn trivial_action_splits_into_fixed_points_only() {
        let a = ap_algebra(3, 3, 0, 1, 0);
        assert!(a.verify().passed(), "{}", a.verify().summary());
        let (data, table, gram) = full_pipeline(&a);
        assert_eq!(data.stable_orbits(), 9);
        assert_eq!(data.free_orbits(), 0);
        // the coaction still permutes the idempotents nontrivially
        assert!(data.coaction_perm().iter().enumerate().any(|(i, &j)| i != j));
        assert_eq!(table.modules().len(), 27);
        assert!(table.modules().iter().all(|m| m.dim == 1));
        let report = linkage_check(&a, &data, &table).unwrap();
        assert_eq!(report.pairs_checked, 27 * 26 / 2);
        assert_eq!(report.linked_pairs, 9 * 3);
        assert_eq!(report.dual_span_checks, 0);
        assert_eq!(gram.rows(), 27);
    }

    #[test]
    fn counting_identity_solutions() {
        let a = pq_arithmetic(3, 7).unwrap();
        assert_eq!((a.n_p, a.n_q), (2, 2));
        let b = pq_arithmetic(5, 11).unwrap();
        assert_eq!((b.n_p, b.n_q), (2, 4));
        let c = pq_arithmetic(2, 5).unwrap();
        assert_eq!((c.n_p, c.n_q), (2, 1));
        assert!(pq_arithmetic(3, 3).is_err());
        assert!(pq_arithmetic(4, 7).is_err());
    }

    #[test]
    fn refined_counts_require_divisibility() {
        let a = pq_refined(3, 7).unwrap();
        assert_eq!((a.n_p, a.n_q), (2, 2));
        let b = pq_refined(2, 5).unwrap();
        assert_eq!((b.n_p, b.n_q), (2, 1));
        match pq_refined(5, 7) {
            Err(CliffordError::NotApplicable(_)) => {}
            other => panic!("expected the refinement to be refused, got {:?}", other.map(|v| (v.n_p, v.n_q))),
        }
    }

    #[test]
    fn screen_values_for_small_pairs() {
        let s = pq_screen(7, 5).unwrap();
        assert!(s.refined);
        assert_eq!((s.lhs_coef, s.rhs), (-58, 589));
        assert!(s.forces_grouplike);
        let s = pq_screen(11, 5).unwrap();
        assert_eq!((s.lhs_coef, s.rhs), (64, 1039));
        assert!(s.forces_grouplike);
        let s = pq_screen(31, 5).unwrap();
        assert!(!s.forces_grouplike);
        let s = pq_screen(23, 7).unwrap();
        assert!(!s.refined);
        assert_eq!((s.lhs_coef, s.rhs), (13, 348));
        assert!(s.forces_grouplike);
        let s = pq_screen(37, 7).unwrap();
        assert!(!s.forces_grouplike);
    }

    #[test]
    fn case_table_for_five() {
        let table = pq_case_table(5).unwrap();
        assert_eq!(table.cases.len(), 4);
        let by_residue = |r: u64| table.cases.iter().find(|c| c.residue == r).unwrap();
        assert!(by_residue(2).all_forced);
        assert!(by_residue(4).all_forced);
        assert_eq!(by_residue(1).forced_primes, vec![11]);
        assert_eq!(by_residue(3).lhs_coef, 3);
        assert_eq!(by_residue(3).rhs, 814);
        assert_eq!(
            by_residue(3).forced_primes,
            vec![3, 13, 23, 43, 53, 73, 83, 103, 113, 163, 173, 193, 223, 233, 263]
        );
        assert_eq!(
            table.forced_both,
            vec![3, 13, 23, 43, 53, 73, 83, 103, 113, 163, 173, 193, 223, 233, 263]
        );
        assert_eq!(table.forced_either, vec![11]);
    }

    #[test]
    fn case_table_for_seven() {
        let table = pq_case_table(7).unwrap();
        assert_eq!(table.cases.len(), 6);
        let by_residue = |r: u64| table.cases.iter().find(|c| c.residue == r).unwrap();
        assert!(by_residue(6).all_forced);
        assert_eq!(by_residue(6).lhs_coef, -5);
        assert!(by_residue(1).forced_primes.is_empty());
        assert_eq!(by_residue(2).forced_primes, vec![23]);
        assert_eq!(by_residue(3).forced_primes, vec![3, 17, 31, 59]);
        assert_eq!(by_residue(4).forced_primes, vec![11]);
        assert_eq!(by_residue(5).forced_primes, vec![5]);
        assert_eq!(table.forced_both, vec![5, 11, 17, 23, 31, 59]);
        assert_eq!(table.forced_either, vec![3]);
    }
}
