//! Isomorphism tests and classification for the algebras of
//! [`construct`](crate::construct), and the reverse direction: recovering
//! cyclic structure data from an abstract presentation with grouplike basis.
//!
//! The morphism calculus works on [`AgData`] over a fixed ring and character
//! pair: a morphism is a triple `(f, x, w)` of a group homomorphism, a unit
//! commuting with the twisted image, and a 1-cochain vanishing at the
//! identity, inducing the linear map
//! `e_u (x) x_s -> eta(u x w(s)) e_(ux) (x) x'_(f(s))`.
//!
//! Every isomorphism test runs two independent routes: a fast comparison of
//! invariants and an explicit witness search whose result is rebuilt as a
//! linear map and checked to be a bijective morphism.  The two routes must
//! agree; a disagreement is reported as [`ClassifyError::RouteMismatch`]
//! rather than silently resolved in either direction.
//!
//! * [`iso_test_ap`] and [`classify_dim_p2`] cover the cyclic family of
//!   dimension `p^2` over an odd prime, with `p(p-1)` classes.
//! * [`iso_test_even`] and [`verify_apm_noniso`] cover the two sign algebras
//!   of dimension four, which stay separate.
//! * [`decompose_structure`] recovers group, cocycle, and character data
//!   from any cocommutative algebra with grouplike basis over `K[Z_p]` and
//!   certifies a rebuilt model against the input.
//! * [`build_bp`], [`iso_test_bp`], and [`count_bp_classes`] handle the
//!   ordinary biproduct family of dimension `p^3` and its `p + 1` orbit
//!   classes, while [`bplus_bminus_iso`] exhibits the collapse of the two
//!   sign algebras into a single class after taking biproducts.

use std::sync::Arc;

use itertools::Itertools;
use thiserror::Error;

use crate::cohomology::{
    carry_cocycle, class_sum, cohomologous2, qminus, qplus, validate_cocycle1, validate_cocycle2,
    CohomologyError, GModule,
};
use crate::construct::{
    apply_linear, biproduct, build_ag, build_framework, hopf_hom_discrepancies, push_diff,
    sparse_eq, AgData, ConstructError, Discrepancy, FrameworkData,
};
use crate::cyclo::{Cyc, CycError, CycField};
use crate::finite::{canonical_characters, FiniteError, FiniteGroup, FiniteRing, GroupHom};
use crate::hopf::{
    sparse_normalize, sparse_scale, sparse_single, sparse_to_dense, HopfError, SparseVec, Term,
    YdHopf,
};
use crate::linalg::Matrix;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("invalid input: {0}")]
    InvalidData(String),
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("degenerate input: {0}")]
    TrivialInput(String),
    #[error("degenerate algebra: {0}")]
    TrivialAlgebra(String),
    #[error("no grouplike basis: {0}")]
    NotCocommutative(String),
    #[error("the invariant route and the witness route disagree: {0}")]
    RouteMismatch(String),
    #[error(transparent)]
    Field(#[from] CycError),
    #[error(transparent)]
    Finite(#[from] FiniteError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

// ---------------------------------------------------------------------------
// small arithmetic helpers
// ---------------------------------------------------------------------------

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative inverse modulo a prime, found by scanning the residues.
fn inv_mod(x: usize, p: usize) -> Option<usize> {
    (1..p).find(|&y| x * y % p == 1)
}

/// Two-sided multiplicative inverse in a finite ring.
fn ring_inverse(ring: &FiniteRing, x: usize) -> Option<usize> {
    ring.elements()
        .find(|&y| ring.mul(x, y) == ring.one() && ring.mul(y, x) == ring.one())
}

/// Discrete logarithm with respect to a root of unity, by table lookup.
fn dlog(zeta: &Cyc, x: &Cyc, order: usize) -> Option<usize> {
    (0..order).find(|&k| zeta.pow(k as u64) == *x)
}

/// Whether the table of basis images spans the whole target space.
fn map_is_bijective(field: &Arc<CycField>, map: &[SparseVec], dst_dim: usize) -> bool {
    if map.len() != dst_dim {
        return false;
    }
    let rows: Vec<Vec<Cyc>> = map
        .iter()
        .map(|v| sparse_to_dense(dst_dim, v, field))
        .collect();
    Matrix::from_rows(field, rows).rank() == dst_dim
}

/// The tensor square `v (x) v` with pair index `i * dim + j`.
fn tensor_square(dim: usize, v: &[Term]) -> SparseVec {
    let mut acc = Vec::new();
    for t1 in v {
        for t2 in v {
            acc.push(Term {
                idx: t1.idx * dim + t2.idx,
                coef: &t1.coef * &t2.coef,
            });
        }
    }
    sparse_normalize(acc)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

// ---------------------------------------------------------------------------
// morphisms of structure data
// ---------------------------------------------------------------------------

/// Checks that the linear map given by `map` (image of each basis vector of
/// `src` inside `dst`) is a morphism of Yetter-Drinfel'd Hopf algebras over
/// the same base group algebra: a Hopf algebra morphism that additionally
/// intertwines the action and the coaction.
pub fn yd_hom_discrepancies(
    src: &YdHopf,
    dst: &YdHopf,
    map: &[SparseVec],
    label: &str,
) -> Vec<Discrepancy> {
    let mut out = hopf_hom_discrepancies(src, dst, map, label);
    let ns = src.dim();
    let nd = dst.dim();
    if src.hgroup().order() != dst.hgroup().order() {
        out.push(Discrepancy {
            map: format!("{label}.base"),
            location: "group order".into(),
            left: src.hgroup().order().to_string(),
            right: dst.hgroup().order().to_string(),
        });
        return out;
    }
    if map.len() != ns {
        return out;
    }
    for c in src.hgroup().elements() {
        for i in 0..ns {
            let lhs = apply_linear(map, src.action_basis(c, i));
            let rhs = dst.act(c, &map[i]);
            push_diff(
                &mut out,
                &format!("{label}.action"),
                format!("c{} -> {}", c, src.name(i)),
                &lhs,
                &rhs,
            );
        }
    }
    for i in 0..ns {
        let mut lhs = Vec::new();
        for t in src.coaction_basis(i) {
            let (c, j) = (t.idx / ns, t.idx % ns);
            for tm in &map[j] {
                lhs.push(Term {
                    idx: c * nd + tm.idx,
                    coef: &t.coef * &tm.coef,
                });
            }
        }
        let lhs = sparse_normalize(lhs);
        let rhs = dst.coact(&map[i]);
        push_diff(
            &mut out,
            &format!("{label}.coaction"),
            src.name(i).to_string(),
            &lhs,
            &rhs,
        );
    }
    out
}

/// A morphism `(f, x, w)` between two sets of structure data sharing the
/// ring and the characters: `f` maps the source group to the target group,
/// `x` is a unit of the ring commuting with the image of the target `nu`,
/// and `w` is a 1-cochain on the source group with `w(1) = 0`, subject to
///
/// * `nu = nu' . f`,
/// * `alpha = x (alpha' . f)` and `beta = x (beta' . f)`,
/// * `q(s,t) = x (q'(f(s), f(t)) + nu(s) w(t) - w(st) + w(s))`.
///
/// The induced linear map sends `e_u (x) x_s` to
/// `eta(u x w(s)) e_(ux) (x) x'_(f(s))`.
#[derive(Debug, Clone)]
pub struct MorphismData {
    pub hom: GroupHom,
    pub x: usize,
    pub w: Vec<usize>,
}

/// Validates a morphism against its source and target data, reporting the
/// first failing condition by name.
pub fn morphism_check(
    m: &MorphismData,
    src: &AgData,
    dst: &AgData,
) -> Result<(), ClassifyError> {
    if src.field().conductor() != dst.field().conductor() {
        return Err(ClassifyError::InvalidData(
            "the two data sets live over different cyclotomic fields".into(),
        ));
    }
    if src.ring() != dst.ring() {
        return Err(ClassifyError::InvalidData(
            "the two data sets have different rings".into(),
        ));
    }
    let r = src.ring();
    for u in r.elements() {
        if src.chi().apply(u) != dst.chi().apply(u) || src.eta().apply(u) != dst.eta().apply(u) {
            return Err(ClassifyError::InvalidData(
                "the two data sets have different characters".into(),
            ));
        }
    }
    if m.hom.source != *src.group() || m.hom.target != *dst.group() {
        return Err(ClassifyError::InvalidData(
            "the homomorphism does not connect the two groups".into(),
        ));
    }
    if m.x >= r.order() || !r.is_unit(m.x) {
        return Err(ClassifyError::NotAMorphism(format!(
            "x = {} is not a unit of the ring",
            m.x
        )));
    }
    let g = src.group();
    for s in g.elements() {
        let nfs = dst.nu()[m.hom.apply(s)];
        if r.mul(m.x, nfs) != r.mul(nfs, m.x) {
            return Err(ClassifyError::NotAMorphism(format!(
                "x does not commute with nu'(f({s}))"
            )));
        }
    }
    if m.w.len() != g.order() || m.w.iter().any(|&v| v >= r.order()) {
        return Err(ClassifyError::NotAMorphism(
            "w has the wrong shape".into(),
        ));
    }
    if m.w[g.identity()] != r.zero() {
        return Err(ClassifyError::NotAMorphism("w(1) is nonzero".into()));
    }
    for s in g.elements() {
        if src.nu()[s] != dst.nu()[m.hom.apply(s)] {
            return Err(ClassifyError::NotAMorphism(format!(
                "nu(s) != nu'(f(s)) at s = {s}"
            )));
        }
        if src.alpha()[s] != r.mul(m.x, dst.alpha()[m.hom.apply(s)]) {
            return Err(ClassifyError::NotAMorphism(format!(
                "alpha(s) != x alpha'(f(s)) at s = {s}"
            )));
        }
        if src.beta()[s] != r.mul(m.x, dst.beta()[m.hom.apply(s)]) {
            return Err(ClassifyError::NotAMorphism(format!(
                "beta(s) != x beta'(f(s)) at s = {s}"
            )));
        }
    }
    for s in g.elements() {
        for t in g.elements() {
            let fq = dst.cocycle(m.hom.apply(s), m.hom.apply(t));
            let inner = r.add(
                r.sub(
                    r.add(fq, r.mul(src.nu()[s], m.w[t])),
                    m.w[g.mul(s, t)],
                ),
                m.w[s],
            );
            if src.cocycle(s, t) != r.mul(m.x, inner) {
                return Err(ClassifyError::NotAMorphism(format!(
                    "q(s,t) != x (q'(f(s),f(t)) + nu(s) w(t) - w(st) + w(s)) at ({s}, {t})"
                )));
            }
        }
    }
    Ok(())
}

/// The linear map induced by a validated morphism, as a table of images of
/// the source basis `e_u (x) x_s` inside the target algebra.
pub fn morphism_map(
    m: &MorphismData,
    src: &AgData,
    dst: &AgData,
) -> Result<Vec<SparseVec>, ClassifyError> {
    morphism_check(m, src, dst)?;
    let r = src.ring();
    let mut map = Vec::with_capacity(src.dim());
    for u in r.elements() {
        for s in src.group().elements() {
            let coef = src.eta().apply(r.mul(r.mul(u, m.x), m.w[s]));
            map.push(sparse_single(
                dst.index(r.mul(u, m.x), m.hom.apply(s)),
                coef.clone(),
            ));
        }
    }
    Ok(map)
}

/// Builds both algebras and checks the induced map of a morphism against
/// every structure table.  An empty result certifies the morphism.
pub fn morphism_verify(
    m: &MorphismData,
    src: &AgData,
    dst: &AgData,
) -> Result<Vec<Discrepancy>, ClassifyError> {
    let map = morphism_map(m, src, dst)?;
    let ba = build_ag(src)?;
    let bb = build_ag(dst)?;
    Ok(yd_hom_discrepancies(&ba, &bb, &map, "morphism"))
}

/// Composes two morphisms: `(f', x', w') . (f, x, w)` is
/// `(f' . f, x x', x'^-1 w + w' . f)`.
pub fn morphism_compose(
    ring: &FiniteRing,
    outer: &MorphismData,
    inner: &MorphismData,
) -> Result<MorphismData, ClassifyError> {
    if inner.hom.target != outer.hom.source {
        return Err(ClassifyError::InvalidData(
            "the morphisms are not composable".into(),
        ));
    }
    let n = inner.hom.source.order();
    let table: Vec<usize> = (0..n).map(|s| outer.hom.apply(inner.hom.apply(s))).collect();
    let hom = GroupHom::new(inner.hom.source.clone(), outer.hom.target.clone(), table)?;
    let xpi = ring_inverse(ring, outer.x).ok_or_else(|| {
        ClassifyError::NotAMorphism(format!("x = {} is not a unit of the ring", outer.x))
    })?;
    let w: Vec<usize> = (0..n)
        .map(|s| ring.add(ring.mul(xpi, inner.w[s]), outer.w[inner.hom.apply(s)]))
        .collect();
    Ok(MorphismData {
        hom,
        x: ring.mul(inner.x, outer.x),
        w,
    })
}

/// The identity morphism of a data set.
pub fn morphism_identity(data: &AgData) -> MorphismData {
    let g = data.group().clone();
    let table: Vec<usize> = (0..g.order()).collect();
    let hom = GroupHom::new(g.clone(), g, table).expect("the identity is a homomorphism");
    MorphismData {
        hom,
        x: data.ring().one(),
        w: vec![data.ring().zero(); data.group().order()],
    }
}

// ---------------------------------------------------------------------------
// the cyclic family over an odd prime
// ---------------------------------------------------------------------------

/// Checks that the data belongs to the cyclic prime family: `G = Z_p` and
/// `R = Z_p` for an odd prime `p`, trivial `nu`, and the canonical
/// characters `chi(i) = zeta^(i(p+1)/2)`, `eta(i) = zeta^i`.
fn cyclic_prime_family_check(data: &AgData) -> Result<usize, ClassifyError> {
    let p = data.group().order();
    if !is_prime(p) || p == 2 {
        return Err(ClassifyError::InvalidData(format!(
            "the cyclic family needs an odd prime group order, got {p}"
        )));
    }
    if *data.group() != FiniteGroup::cyclic(p) || *data.ring() != FiniteRing::zn(p) {
        return Err(ClassifyError::InvalidData(
            "the cyclic family lives on Z_p in the standard indexing".into(),
        ));
    }
    if data.nu().iter().any(|&v| v != data.ring().one()) {
        return Err(ClassifyError::InvalidData(
            "the cyclic family has trivial nu".into(),
        ));
    }
    let (chi, eta) = canonical_characters(p as u64, data.field())?;
    for u in data.ring().elements() {
        if data.chi().apply(u) != chi.apply(u) || data.eta().apply(u) != eta.apply(u) {
            return Err(ClassifyError::InvalidData(
                "the isomorphism test is stated for the canonical characters".into(),
            ));
        }
    }
    Ok(p)
}

/// The complete isomorphism invariants of a member of the cyclic prime
/// family with `alpha` and `beta` nonzero: the ratio `m = alpha(1)/beta(1)`
/// and the cohomology class of `q/beta(1)`, both in `Z_p`.
pub fn ap_invariants(data: &AgData) -> Result<(usize, usize), ClassifyError> {
    let p = cyclic_prime_family_check(data)?;
    let a = data.alpha()[1];
    let b = data.beta()[1];
    if a == 0 || b == 0 {
        return Err(ClassifyError::TrivialInput(format!(
            "alpha(1) = {a} and beta(1) = {b}; the invariants need both nonzero"
        )));
    }
    let bi = inv_mod(b, p).expect("beta(1) is a unit");
    let scaled: Vec<usize> = data.q_table().iter().map(|&v| v * bi % p).collect();
    Ok((a * bi % p, class_sum(p, p, &scaled)))
}

/// Isomorphism test inside the cyclic prime family, running the invariant
/// comparison and an explicit witness search in parallel.  On success the
/// witness morphism `(f, x, w)` is returned after its induced map has been
/// verified entrywise and checked to be bijective.
pub fn iso_test_ap(
    src: &AgData,
    dst: &AgData,
) -> Result<Option<MorphismData>, ClassifyError> {
    let p = cyclic_prime_family_check(src)?;
    let pd = cyclic_prime_family_check(dst)?;
    let (a1, b1) = (src.alpha()[1], src.beta()[1]);
    let (a2, b2) = (dst.alpha()[1], dst.beta()[1]);
    if a1 == 0 || b1 == 0 || a2 == 0 || b2 == 0 {
        return Err(ClassifyError::TrivialInput(
            "the isomorphism test needs alpha and beta nonzero on both sides".into(),
        ));
    }
    if p != pd {
        return Ok(None);
    }
    if src.field().conductor() != dst.field().conductor() {
        return Err(ClassifyError::InvalidData(
            "the two data sets live over different cyclotomic fields".into(),
        ));
    }
    let invariants_match = ap_invariants(src)? == ap_invariants(dst)?;

    let md = GModule::trivial(FiniteGroup::cyclic(p), FiniteGroup::cyclic(p));
    let mut witness = None;
    'search: for k in 1..p {
        for c in 1..p {
            if k * c % p * a2 % p != a1 || k * c % p * b2 % p != b1 {
                continue;
            }
            // q = k (q' . (f x f)) + d(k w) with f = multiplication by c
            let mut target = vec![0usize; p * p];
            for s in 0..p {
                for t in 0..p {
                    target[s * p + t] = k * dst.q_table()[(c * s % p) * p + c * t % p] % p;
                }
            }
            if let Some(big) = cohomologous2(&md, &target, src.q_table())? {
                let ki = inv_mod(k, p).expect("k is a unit");
                let w: Vec<usize> = big.iter().map(|&v| v * ki % p).collect();
                let table: Vec<usize> = (0..p).map(|s| c * s % p).collect();
                let hom = GroupHom::new(src.group().clone(), dst.group().clone(), table)?;
                let m = MorphismData { hom, x: k, w };
                let diffs = morphism_verify(&m, src, dst)?;
                if !diffs.is_empty() {
                    return Err(ClassifyError::RouteMismatch(format!(
                        "the witness (k = {k}, c = {c}) satisfies the cochain conditions \
                         but its map fails: {} differences, first: {}",
                        diffs.len(),
                        diffs[0]
                    )));
                }
                let map = morphism_map(&m, src, dst)?;
                if !map_is_bijective(src.field(), &map, dst.dim()) {
                    return Err(ClassifyError::RouteMismatch(format!(
                        "the witness (k = {k}, c = {c}) verifies but is not bijective"
                    )));
                }
                witness = Some(m);
                break 'search;
            }
        }
    }
    match (invariants_match, witness) {
        (true, Some(m)) => Ok(Some(m)),
        (false, None) => Ok(None),
        (true, None) => Err(ClassifyError::RouteMismatch(
            "the invariants agree but no witness exists".into(),
        )),
        (false, Some(m)) => Err(ClassifyError::RouteMismatch(format!(
            "a verified witness with x = {} exists but the invariants disagree",
            m.x
        ))),
    }
}

// ---------------------------------------------------------------------------
// the sign pair in dimension four
// ---------------------------------------------------------------------------

/// Structure data for the even counterpart of the cyclic family: a finite
/// group `G`, two homomorphisms `alpha, beta: G -> Z_2`, and a normalized
/// 2-cocycle `q: G x G -> Z_4` whose reduction mod 2 is the cup product
/// `beta u alpha`.  The data builds `K^(Z_2) (x) K[G]` over `K[Z_2]` through
/// the cocycle framework with `sigma_u(s,t) = i^(u q(s,t))`.
pub struct EvenData {
    field: Arc<CycField>,
    group: FiniteGroup,
    alpha: Vec<usize>,
    beta: Vec<usize>,
    /// Flat table, entry `s * |G| + t`, values in `Z_4`.
    q: Vec<usize>,
}

impl EvenData {
    pub fn new(
        field: Arc<CycField>,
        group: FiniteGroup,
        alpha: Vec<usize>,
        beta: Vec<usize>,
        q: Vec<usize>,
    ) -> Result<EvenData, ClassifyError> {
        let md2 = GModule::trivial(group.clone(), FiniteGroup::cyclic(2));
        validate_cocycle1(&md2, &alpha)?;
        validate_cocycle1(&md2, &beta)?;
        let md4 = GModule::trivial(group.clone(), FiniteGroup::cyclic(4));
        validate_cocycle2(&md4, &q)?;
        let n = group.order();
        for s in 0..n {
            for t in 0..n {
                if q[s * n + t] % 2 != beta[s] * alpha[t] % 2 {
                    return Err(ClassifyError::InvalidData(format!(
                        "q({s}, {t}) = {} has the wrong parity: the reduction mod 2 \
                         must be beta(s) alpha(t) = {}",
                        q[s * n + t],
                        beta[s] * alpha[t] % 2
                    )));
                }
            }
        }
        Ok(EvenData {
            field,
            group,
            alpha,
            beta,
            q,
        })
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }
    pub fn beta(&self) -> &[usize] {
        &self.beta
    }
    pub fn q_table(&self) -> &[usize] {
        &self.q
    }

    pub fn dim(&self) -> usize {
        2 * self.group.order()
    }

    /// Basis index of `e_i (x) x_s`.
    pub fn index(&self, i: usize, s: usize) -> usize {
        i * self.group.order() + s
    }

    /// The framework cocycle data with `C = P = Z_2`, trivial action,
    /// `z_s(u) = u beta(s)`, `gamma_s(u)(c) = (-1)^(u c alpha(s))`, and
    /// `sigma_u(s,t) = i^(u q(s,t))`.
    pub fn framework(&self) -> Result<FrameworkData, ConstructError> {
        let z2 = FiniteGroup::cyclic(2);
        let iota = self.field.root_of_unity(4)?;
        let one = self.field.one();
        let minus = self.field.from_i64(-1);
        let ng = self.group.order();
        let action: Vec<Vec<usize>> = (0..ng).map(|_| vec![0, 1]).collect();
        let z: Vec<Vec<usize>> = (0..ng)
            .map(|s| (0..2).map(|u| u * self.beta[s] % 2).collect())
            .collect();
        let gamma: Vec<Vec<Vec<Cyc>>> = (0..ng)
            .map(|s| {
                (0..2)
                    .map(|u| {
                        (0..2)
                            .map(|c| {
                                if u * c * self.alpha[s] % 2 == 1 {
                                    minus.clone()
                                } else {
                                    one.clone()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let sigma: Vec<Vec<Vec<Cyc>>> = (0..2)
            .map(|u| {
                (0..ng)
                    .map(|s| {
                        (0..ng)
                            .map(|t| iota.pow((u * self.q[s * ng + t]) as u64))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        FrameworkData::new(
            Arc::clone(&self.field),
            z2.clone(),
            self.group.clone(),
            z2,
            action,
            z,
            gamma,
            sigma,
        )
    }

    pub fn build(&self) -> Result<YdHopf, ConstructError> {
        build_framework(&self.framework()?)
    }
}

/// The four dimensional sign algebra with `sigma_1(s,t) = i^(q(s,t))` for
/// the carry cocycle.
pub fn a_plus_data(field: &Arc<CycField>) -> Result<EvenData, ClassifyError> {
    EvenData::new(
        Arc::clone(field),
        FiniteGroup::cyclic(2),
        vec![0, 1],
        vec![0, 1],
        qplus(),
    )
}

/// The four dimensional sign algebra with the tripled carry cocycle.
pub fn a_minus_data(field: &Arc<CycField>) -> Result<EvenData, ClassifyError> {
    EvenData::new(
        Arc::clone(field),
        FiniteGroup::cyclic(2),
        vec![0, 1],
        vec![0, 1],
        qminus(),
    )
}

/// An isomorphism witness `(f, w)` between two sets of even structure data:
/// a group isomorphism with `alpha = alpha' . f` and `beta = beta' . f`, and
/// a `Z_2`-valued cochain with `w(1) = 0` and
/// `q(s,t) - q'(f(s), f(t)) = 2 (w(t) - w(st) + w(s))` in `Z_4`.  The induced
/// map sends `e_i (x) x_s` to `(-1)^(i w(s)) e_i (x) x'_(f(s))`.
#[derive(Debug, Clone)]
pub struct EvenIso {
    pub hom: GroupHom,
    pub w: Vec<usize>,
}

/// Isomorphism test for the even family: exhaustive search over group
/// isomorphisms and cochains, with every found witness rebuilt as a linear
/// map and verified.
pub fn iso_test_even(
    src: &EvenData,
    dst: &EvenData,
) -> Result<Option<EvenIso>, ClassifyError> {
    if src.field().conductor() != dst.field().conductor() {
        return Err(ClassifyError::InvalidData(
            "the two data sets live over different cyclotomic fields".into(),
        ));
    }
    if src.alpha().iter().all(|&v| v == 0) && src.beta().iter().all(|&v| v == 0) {
        return Err(ClassifyError::TrivialInput(
            "the isomorphism test needs alpha or beta nonzero".into(),
        ));
    }
    if dst.alpha().iter().all(|&v| v == 0) && dst.beta().iter().all(|&v| v == 0) {
        return Err(ClassifyError::TrivialInput(
            "the isomorphism test needs alpha or beta nonzero".into(),
        ));
    }
    let n = src.group().order();
    if n != dst.group().order() {
        return Ok(None);
    }
    let e = src.group().identity();
    for perm in (0..n).permutations(n) {
        if perm[e] != dst.group().identity() {
            continue;
        }
        let Ok(hom) = GroupHom::new(src.group().clone(), dst.group().clone(), perm) else {
            continue;
        };
        if !hom.is_bijective() {
            continue;
        }
        if (0..n).any(|s| src.alpha()[s] != dst.alpha()[hom.apply(s)]) {
            continue;
        }
        if (0..n).any(|s| src.beta()[s] != dst.beta()[hom.apply(s)]) {
            continue;
        }
        'wloop: for bits in 0..(1usize << n) {
            let w: Vec<usize> = (0..n).map(|s| (bits >> s) & 1).collect();
            if w[e] != 0 {
                continue;
            }
            for s in 0..n {
                for t in 0..n {
                    let lhs = (4 + src.q_table()[s * n + t]
                        - dst.q_table()[hom.apply(s) * n + hom.apply(t)])
                        % 4;
                    let st = src.group().mul(s, t);
                    if lhs != 2 * ((w[t] + w[st] + w[s]) % 2) {
                        continue 'wloop;
                    }
                }
            }
            let ba = src.build()?;
            let bb = dst.build()?;
            let mut map = Vec::with_capacity(src.dim());
            for i in 0..2 {
                for s in 0..n {
                    let coef = if i * w[s] % 2 == 1 {
                        src.field().from_i64(-1)
                    } else {
                        src.field().one()
                    };
                    map.push(sparse_single(dst.index(i, hom.apply(s)), coef));
                }
            }
            let diffs = yd_hom_discrepancies(&ba, &bb, &map, "even-iso");
            if !diffs.is_empty() {
                return Err(ClassifyError::RouteMismatch(format!(
                    "the witness cochain satisfies the conditions but its map fails: \
                     {} differences, first: {}",
                    diffs.len(),
                    diffs[0]
                )));
            }
            if !map_is_bijective(src.field(), &map, dst.dim()) {
                return Err(ClassifyError::RouteMismatch(
                    "the witness map verifies but is not bijective".into(),
                ));
            }
            return Ok(Some(EvenIso { hom, w }));
        }
    }
    Ok(None)
}

/// Confirms that the two sign algebras are not isomorphic: the exhaustive
/// witness search fails in both directions, and the obstruction is exhibited
/// in cohomology.  The two carry cocycles are cohomologous over `Z_4`, but
/// their difference is not twice a coboundary of a `Z_2`-valued cochain, so
/// no witness cochain can exist.
pub fn verify_apm_noniso(field: &Arc<CycField>) -> Result<bool, ClassifyError> {
    let plus = a_plus_data(field)?;
    let minus = a_minus_data(field)?;
    let forward = iso_test_even(&plus, &minus)?;
    let backward = iso_test_even(&minus, &plus)?;
    let g = FiniteGroup::cyclic(2);
    let md4 = GModule::trivial(g.clone(), FiniteGroup::cyclic(4));
    let linked_in_z4 = cohomologous2(&md4, &qplus(), &qminus())?.is_some();
    let diff: Vec<usize> = qplus()
        .iter()
        .zip(qminus())
        .map(|(&x, y)| (4 + y - x) % 4)
        .collect();
    if diff.iter().any(|&d| d % 2 != 0) {
        return Err(ClassifyError::InvalidData(
            "the difference of the sign cocycles is not even".into(),
        ));
    }
    let half: Vec<usize> = diff.iter().map(|&d| d / 2).collect();
    let md2 = GModule::trivial(g, FiniteGroup::cyclic(2));
    validate_cocycle2(&md2, &half)?;
    let zero = vec![0usize; half.len()];
    let obstructed = cohomologous2(&md2, &zero, &half)?.is_none();
    Ok(forward.is_none() && backward.is_none() && linked_in_z4 && obstructed)
}

// ---------------------------------------------------------------------------
// the classification in dimension p^2
// ---------------------------------------------------------------------------

/// A representative of an isomorphism class in dimension `p^2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClassRep {
    /// `alpha = m id`, `beta = id`, `q = n` times the carry cocycle.
    Cyclic { m: usize, n: usize },
    SignPlus,
    SignMinus,
}

/// The outcome of the classification in dimension `p^2`: the class count,
/// one canonical representative per class, and the full membership lists of
/// the enumerated `(a, b, n)` triples for odd `p`.
#[derive(Debug)]
pub struct FamilyClassification {
    pub prime: usize,
    pub count: usize,
    pub representatives: Vec<ClassRep>,
    pub classes: Vec<Vec<(usize, usize, usize)>>,
}

/// Enumerates all members of the family in dimension `p^2` with `alpha` and
/// `beta` nonzero and partitions them by [`iso_test_ap`].  For `p = 2` the
/// two sign algebras are compared by [`verify_apm_noniso`] instead.  Each
/// class must contain its canonical representative, computed independently
/// from the invariants; a class that misses it is reported as a route
/// mismatch.
pub fn classify_dim_p2(
    field: &Arc<CycField>,
    p: usize,
) -> Result<FamilyClassification, ClassifyError> {
    if p == 2 {
        if !verify_apm_noniso(field)? {
            return Err(ClassifyError::RouteMismatch(
                "the sign pair compared as isomorphic".into(),
            ));
        }
        return Ok(FamilyClassification {
            prime: 2,
            count: 2,
            representatives: vec![ClassRep::SignPlus, ClassRep::SignMinus],
            classes: vec![Vec::new(), Vec::new()],
        });
    }
    if !is_prime(p) {
        return Err(ClassifyError::InvalidData(format!(
            "the classification needs a prime, got {p}"
        )));
    }
    let mut reps: Vec<AgData> = Vec::new();
    let mut classes: Vec<Vec<(usize, usize, usize)>> = Vec::new();
    for a in 1..p {
        for b in 1..p {
            for n in 0..p {
                let data = crate::construct::ap_data(field, p, a, b, n)?;
                let mut placed = false;
                for (ci, rep) in reps.iter().enumerate() {
                    if iso_test_ap(&data, rep)?.is_some() {
                        classes[ci].push((a, b, n));
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    reps.push(data);
                    classes.push(vec![(a, b, n)]);
                }
            }
        }
    }
    let mut representatives = Vec::with_capacity(reps.len());
    for (ci, rep) in reps.iter().enumerate() {
        let (m, n) = ap_invariants(rep)?;
        if !classes[ci].contains(&(m, 1, n)) {
            return Err(ClassifyError::RouteMismatch(format!(
                "class {ci} misses its canonical member (alpha = {m} id, beta = id, \
                 q = {n} carry)"
            )));
        }
        representatives.push(ClassRep::Cyclic { m, n });
    }
    let mut sorted = representatives.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != representatives.len() {
        return Err(ClassifyError::RouteMismatch(
            "two classes claim the same canonical representative".into(),
        ));
    }
    Ok(FamilyClassification {
        prime: p,
        count: classes.len(),
        representatives,
        classes,
    })
}

// ---------------------------------------------------------------------------
// structure recovery from a grouplike basis
// ---------------------------------------------------------------------------

/// The structure data recovered by [`decompose_structure`]: cyclic data for
/// an odd prime, even data for `p = 2`.
pub enum RecoveredData {
    Odd(AgData),
    Even(EvenData),
}

/// The result of recovering structure data from an abstract presentation:
/// the quotient group acting on the recovered cocycles, the rebuilt model
/// algebra, and the verified change of basis from the model onto the input.
pub struct Decomposition {
    pub prime: usize,
    pub group: FiniteGroup,
    pub nu: Vec<usize>,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    /// Flat table `s * |G| + t`; values in `Z_p` for odd `p`, in `Z_4` for
    /// `p = 2`.
    pub q: Vec<usize>,
    pub q_modulus: usize,
    pub data: RecoveredData,
    pub model: YdHopf,
    /// Image of each model basis vector `e_i (x) x_s` inside the input.
    pub witness: Vec<SparseVec>,
}

/// Recovers structure data from a cocommutative Yetter-Drinfel'd Hopf
/// algebra over `K[Z_p]` whose grouplike elements form a basis.
///
/// The steps: find the smallest-index grouplike `u` of order `p` that is
/// invariant and coinvariant and controls the action and coaction on every
/// grouplike; partition the grouplikes into orbits under multiplication by
/// `u` and read the quotient group off the orbit representatives (the orbit
/// of the unit is represented by the unit); extract `nu` from conjugation,
/// `alpha` and `beta` from the eigenvalue exponents of the action and the
/// coaction evaluation; form the Fourier combinations
/// `e_i(s) = 1/p sum_j zeta^(-ij) u^j g_s`, read off the scalars `sigma`,
/// and certify the product compatibility identity; finally take a discrete
/// logarithm to obtain `q`, rebuild the model from the recovered data, and
/// verify the map `e_i (x) x_s -> e_i(s)` as a bijective morphism.
pub fn decompose_structure(a: &YdHopf) -> Result<Decomposition, ClassifyError> {
    let p = a.hgroup().order();
    if !is_prime(p) {
        return Err(ClassifyError::InvalidData(format!(
            "the base group has order {p}, which is not prime"
        )));
    }
    if *a.hgroup() != FiniteGroup::cyclic(p) {
        return Err(ClassifyError::InvalidData(
            "the base group is not cyclic in the standard indexing".into(),
        ));
    }
    let dim = a.dim();
    if dim <= 1 {
        return Err(ClassifyError::TrivialAlgebra(
            "the algebra has dimension 1".into(),
        ));
    }
    if dim % p != 0 {
        return Err(ClassifyError::InvalidData(format!(
            "dimension {dim} is not divisible by the base order {p}"
        )));
    }
    let field = a.field();
    let zeta = field.root_of_unity(p as u64)?;

    // the grouplike basis; products of two general grouplike elements need
    // not stay grouplike here, but products with invariant and coinvariant
    // grouplike elements do
    let gl = a.grouplikes()?;
    if gl.len() != dim {
        return Err(ClassifyError::NotCocommutative(format!(
            "{} grouplike elements cannot span an algebra of dimension {dim}",
            gl.len()
        )));
    }
    let find = |v: &SparseVec| gl.iter().position(|g| sparse_eq(g, v));
    let e_idx = find(a.unit_vec()).ok_or_else(|| {
        ClassifyError::InvalidData("the unit is not among the grouplikes".into())
    })?;
    // the change of basis from the algebra basis to the grouplike basis
    let mut gl_cols = Matrix::zero(field, dim, dim);
    for (j, g) in gl.iter().enumerate() {
        for t in g {
            *gl_cols.at_mut(t.idx, j) = t.coef.clone();
        }
    }
    let gl_expand = gl_cols.inverse().ok_or_else(|| {
        ClassifyError::NotCocommutative("the grouplike elements do not form a basis".into())
    })?;

    // action by the base generator, and coaction evaluated at zeta
    let phi = |v: &SparseVec| a.act(1, v);
    let psi = |v: &SparseVec| -> SparseVec {
        let mut acc = Vec::new();
        for t in a.coact(v) {
            let (c, j) = (t.idx / dim, t.idx % dim);
            acc.push(Term {
                idx: j,
                coef: &t.coef * &zeta.pow(c as u64),
            });
        }
        sparse_normalize(acc)
    };

    // the distinguished grouplike u, smallest index first; umul[m][g] is
    // the grouplike index of u^m g, which stays grouplike because u is
    // invariant and coinvariant
    let mut chosen: Option<(usize, Vec<Vec<usize>>)> = None;
    'candidates: for ui in 0..dim {
        if ui == e_idx {
            continue;
        }
        if (1..p).any(|c| !sparse_eq(&a.act(c, &gl[ui]), &gl[ui])) {
            continue;
        }
        if !sparse_eq(&a.coact(&gl[ui]), &gl[ui]) {
            continue;
        }
        let mut umul = vec![(0..dim).collect::<Vec<usize>>()];
        for m in 1..=p {
            let mut row = Vec::with_capacity(dim);
            for g in 0..dim {
                let prod = a.mul(&gl[ui], &gl[umul[m - 1][g]]);
                match find(&prod) {
                    Some(x) => row.push(x),
                    None => continue 'candidates,
                }
            }
            umul.push(row);
        }
        // u has order p
        if umul[p][e_idx] != e_idx || umul[1][e_idx] == e_idx {
            continue;
        }
        umul.truncate(p);
        for g in 0..dim {
            let img = phi(&gl[g]);
            if !(0..p).any(|m| sparse_eq(&img, &gl[umul[m][g]])) {
                continue 'candidates;
            }
            let img = psi(&gl[g]);
            if !(0..p).any(|m| sparse_eq(&img, &gl[umul[m][g]])) {
                continue 'candidates;
            }
        }
        chosen = Some((ui, umul));
        break;
    }
    let (u_idx, umul) = chosen.ok_or_else(|| {
        ClassifyError::TrivialAlgebra(
            "no grouplike of order p is invariant, coinvariant, and compatible with \
             the action and coaction on every grouplike"
                .into(),
        )
    })?;

    // orbits under left multiplication by u; the unit represents its orbit
    let n_orb = dim / p;
    let mut orbit_of = vec![usize::MAX; dim];
    let mut reps = Vec::with_capacity(n_orb);
    for g in std::iter::once(e_idx).chain(0..dim) {
        if orbit_of[g] != usize::MAX {
            continue;
        }
        let oi = reps.len();
        reps.push(g);
        for m in 0..p {
            let x = umul[m][g];
            if orbit_of[x] != usize::MAX {
                return Err(ClassifyError::InvalidData(format!(
                    "the orbit of grouplike {g} under u collides with an earlier orbit"
                )));
            }
            orbit_of[x] = oi;
        }
    }
    if reps.len() != n_orb {
        return Err(ClassifyError::InvalidData(format!(
            "{} orbits of size {p} do not partition {dim} grouplikes",
            reps.len()
        )));
    }

    // the quotient by the ideal generated by the augmentation part of the
    // powers of u: a general product of representatives is no longer
    // grouplike, but its image in the quotient is the single class that
    // carries the orbit-summed coefficient 1
    let mut qtable = Vec::with_capacity(n_orb);
    for &gs in &reps {
        let mut row = Vec::with_capacity(n_orb);
        for &gt in &reps {
            let prod = a.mul(&gl[gs], &gl[gt]);
            let coefs = gl_expand.apply(&sparse_to_dense(dim, &prod, field));
            let mut class = vec![field.zero(); n_orb];
            for (g, c) in coefs.iter().enumerate() {
                class[orbit_of[g]] = &class[orbit_of[g]] + c;
            }
            let mut hit = None;
            for (o, c) in class.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !c.is_one() || hit.is_some() {
                    return Err(ClassifyError::InvalidData(format!(
                        "the projected product of orbits {} and {} is not a single class",
                        orbit_of[gs], orbit_of[gt]
                    )));
                }
                hit = Some(o);
            }
            row.push(hit.ok_or_else(|| {
                ClassifyError::InvalidData(format!(
                    "the projected product of orbits {} and {} vanishes",
                    orbit_of[gs], orbit_of[gt]
                ))
            })?);
        }
        qtable.push(row);
    }
    let group = FiniteGroup::from_table(qtable)?;
    if group.identity() != 0 {
        return Err(ClassifyError::InvalidData(
            "the orbit of the unit is not the identity of the quotient".into(),
        ));
    }

    // nu from g u = u^nu(g) g, alpha and beta from the eigenvalue exponents
    let mut nu = Vec::with_capacity(n_orb);
    let mut alpha = Vec::with_capacity(n_orb);
    let mut beta = Vec::with_capacity(n_orb);
    for &gs in &reps {
        let gu = a.mul(&gl[gs], &gl[u_idx]);
        let m = (0..p)
            .find(|&m| sparse_eq(&gu, &gl[umul[m][gs]]))
            .ok_or_else(|| {
                ClassifyError::InvalidData(
                    "a representative does not normalize the distinguished grouplike".into(),
                )
            })?;
        if m == 0 {
            return Err(ClassifyError::InvalidData(
                "a representative absorbs the distinguished grouplike".into(),
            ));
        }
        nu.push(m);
        let img = phi(&gl[gs]);
        alpha.push(
            (0..p)
                .find(|&m| sparse_eq(&img, &gl[umul[m][gs]]))
                .expect("checked during the search for u"),
        );
        let img = psi(&gl[gs]);
        beta.push(
            (0..p)
                .find(|&m| sparse_eq(&img, &gl[umul[m][gs]]))
                .expect("checked during the search for u"),
        );
    }

    // Fourier combinations e_i(s)
    let pinv = field.from_i64(p as i64).inv()?;
    let fourier = |i: usize, base: usize| -> SparseVec {
        let mut acc = Vec::new();
        for j in 0..p {
            let coef = &zeta.pow(((p - i) % p * j % p) as u64) * &pinv;
            for t in &gl[umul[j][base]] {
                acc.push(Term {
                    idx: t.idx,
                    coef: &t.coef * &coef,
                });
            }
        }
        sparse_normalize(acc)
    };
    let efam: Vec<Vec<SparseVec>> = (0..p)
        .map(|i| reps.iter().map(|&gs| fourier(i, gs)).collect())
        .collect();

    // replacing a representative g_s by u g_s rescales e_i(s) by zeta^i
    for (s, &gs) in reps.iter().enumerate() {
        let shifted = umul[1][gs];
        for (i, row) in efam.iter().enumerate() {
            let rescaled = fourier(i, shifted);
            if !sparse_eq(&rescaled, &sparse_scale(&row[s], &zeta.pow(i as u64))) {
                return Err(ClassifyError::InvalidData(format!(
                    "the rescaling certificate fails at orbit {s}, index {i}"
                )));
            }
        }
    }

    // the scalars sigma_i(s, t) and their certificates
    let mut sigma = vec![vec![vec![field.zero(); n_orb]; n_orb]; p];
    for i in 0..p {
        for s in 0..n_orb {
            let j = i * nu[s] % p;
            for t in 0..n_orb {
                for j2 in 0..p {
                    if j2 != j && !a.mul(&efam[i][s], &efam[j2][t]).is_empty() {
                        return Err(ClassifyError::InvalidData(format!(
                            "e_{i}({s}) e_{j2}({t}) does not vanish"
                        )));
                    }
                }
                let prod = a.mul(&efam[i][s], &efam[j][t]);
                let st = group.mul(s, t);
                let target = &efam[i][st];
                let c = match (prod.first(), target.first()) {
                    (Some(tp), Some(tt)) if tp.idx == tt.idx => &tp.coef * &tt.coef.inv()?,
                    _ => {
                        return Err(ClassifyError::InvalidData(format!(
                            "e_{i}({s}) e_{j}({t}) is not proportional to e_{i}({st})"
                        )))
                    }
                };
                if !sparse_eq(&prod, &sparse_scale(target, &c)) {
                    return Err(ClassifyError::InvalidData(format!(
                        "e_{i}({s}) e_{j}({t}) is not proportional to e_{i}({st})"
                    )));
                }
                sigma[i][s][t] = c;
            }
        }
    }
    for s in 0..n_orb {
        for t in 0..n_orb {
            if !sigma[0][s][t].is_one() {
                return Err(ClassifyError::InvalidData(format!(
                    "sigma_0({s}, {t}) is not 1"
                )));
            }
            for i in 0..p {
                for j in 0..p {
                    let twist = zeta.pow((i * j % p * nu[s] % p * beta[s] % p * alpha[t] % p) as u64);
                    let rhs = &(&twist * &sigma[i][s][t]) * &sigma[j][s][t];
                    if sigma[(i + j) % p][s][t] != rhs {
                        return Err(ClassifyError::InvalidData(format!(
                            "the compatibility certificate fails at ({i}, {j}; {s}, {t})"
                        )));
                    }
                }
            }
        }
    }

    // discrete logarithms give q, and the recovered data rebuilds the model
    let (q, q_modulus, data, model) = if p % 2 == 1 {
        let half = (p + 1) / 2;
        let mut q = vec![0usize; n_orb * n_orb];
        for s in 0..n_orb {
            for t in 0..n_orb {
                let adj = nu[s] * beta[s] % p * alpha[t] % p * half % p;
                let shifted = &sigma[1][s][t] * &zeta.pow(((p - adj) % p) as u64);
                q[s * n_orb + t] = dlog(&zeta, &shifted, p).ok_or_else(|| {
                    ClassifyError::InvalidData(format!(
                        "sigma_1({s}, {t}) is not a p-th root of unity times the twist"
                    ))
                })?;
            }
        }
        let ring = FiniteRing::zn(p);
        let (chi, eta) = canonical_characters(p as u64, field)?;
        let ag = AgData::new(
            Arc::clone(field),
            group.clone(),
            ring,
            nu.clone(),
            alpha.clone(),
            beta.clone(),
            q.clone(),
            chi,
            eta,
        )?;
        let model = build_ag(&ag)?;
        (q, p, RecoveredData::Odd(ag), model)
    } else {
        let iota = field.root_of_unity(4)?;
        let mut q = vec![0usize; n_orb * n_orb];
        for s in 0..n_orb {
            for t in 0..n_orb {
                q[s * n_orb + t] = dlog(&iota, &sigma[1][s][t], 4).ok_or_else(|| {
                    ClassifyError::InvalidData(format!(
                        "sigma_1({s}, {t}) is not a fourth root of unity"
                    ))
                })?;
            }
        }
        if nu.iter().any(|&m| m != 1) {
            return Err(ClassifyError::InvalidData(
                "nu must be trivial over the base of order 2".into(),
            ));
        }
        let ed = EvenData::new(
            Arc::clone(field),
            group.clone(),
            alpha.clone(),
            beta.clone(),
            q.clone(),
        )?;
        let model = ed.build()?;
        (q, 4, RecoveredData::Even(ed), model)
    };

    // the witness map e_i (x) x_s -> e_i(s), verified entrywise
    let witness: Vec<SparseVec> = efam.iter().flat_map(|row| row.iter().cloned()).collect();
    let diffs = yd_hom_discrepancies(&model, a, &witness, "decompose");
    if !diffs.is_empty() {
        return Err(ClassifyError::RouteMismatch(format!(
            "the rebuilt model does not match the input: {} differences, first: {}",
            diffs.len(),
            diffs[0]
        )));
    }
    if !map_is_bijective(field, &witness, dim) {
        return Err(ClassifyError::RouteMismatch(
            "the rebuilt model maps onto a proper subspace".into(),
        ));
    }
    Ok(Decomposition {
        prime: p,
        group,
        nu,
        alpha,
        beta,
        q,
        q_modulus,
        data,
        model,
        witness,
    })
}

// ---------------------------------------------------------------------------
// the ordinary biproduct family of dimension p^3
// ---------------------------------------------------------------------------

/// Parameters of a member of the biproduct family: an odd prime `p`, two
/// units `a, b` of `Z_p`, and a normalized 2-cocycle `q` on `Z_p` with
/// values in `Z_p`.
#[derive(Debug, Clone)]
pub struct BpParams {
    pub p: usize,
    pub a: usize,
    pub b: usize,
    /// Flat table, entry `s * p + t`.
    pub q: Vec<usize>,
}

impl BpParams {
    pub fn new(p: usize, a: usize, b: usize, q: Vec<usize>) -> Result<BpParams, ClassifyError> {
        if !is_prime(p) || p == 2 {
            return Err(ClassifyError::InvalidData(format!(
                "the biproduct family needs an odd prime, got {p}"
            )));
        }
        if a == 0 || a >= p || b == 0 || b >= p {
            return Err(ClassifyError::InvalidData(format!(
                "the parameters a = {a}, b = {b} must be units modulo {p}"
            )));
        }
        let md = GModule::trivial(FiniteGroup::cyclic(p), FiniteGroup::cyclic(p));
        validate_cocycle2(&md, &q)?;
        Ok(BpParams { p, a, b, q })
    }

    /// Parameters with `q` the carry cocycle scaled by `n`.
    pub fn carry(p: usize, a: usize, b: usize, n: usize) -> Result<BpParams, ClassifyError> {
        if p < 2 {
            return Err(ClassifyError::InvalidData(format!("bad modulus {p}")));
        }
        BpParams::new(p, a, b, carry_cocycle(p, p, n % p))
    }

    pub fn dim(&self) -> usize {
        self.p * self.p * self.p
    }

    /// Basis index of `e_i (x) c_j (x) d_k`.
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.p + j) * self.p + k
    }

    /// The underlying cyclic structure data `alpha = a id`, `beta = b id`.
    pub fn ag_data(&self, field: &Arc<CycField>) -> Result<AgData, ClassifyError> {
        let p = self.p;
        let (chi, eta) = canonical_characters(p as u64, field)?;
        let ring = FiniteRing::zn(p);
        let nu = vec![ring.one(); p];
        let alpha = (0..p).map(|s| self.a * s % p).collect();
        let beta = (0..p).map(|s| self.b * s % p).collect();
        AgData::new(
            Arc::clone(field),
            FiniteGroup::cyclic(p),
            ring,
            nu,
            alpha,
            beta,
            self.q.clone(),
            chi,
            eta,
        )
        .map_err(Into::into)
    }
}

/// Builds the ordinary Hopf algebra of dimension `p^3` on the basis
/// `e_i (x) c_j (x) d_k` from closed coefficient formulas, with
/// `h = (p+1)/2`:
///
/// * `(e_i c_j d_k)(e_l c_m d_n) = [i = l] [k - n = a l m]
///   zeta^(i q(j,m) + a b j m i^2 h) e_i c_(j+m) d_n`
/// * `1 = sum_(i,k) e_i c_0 d_k`
/// * `D(e_i c_j d_k) = sum_(l,m) zeta^(b (i-l) j m)
///   (e_l c_j d_m) (x) (e_(i-l) c_j d_(k-m))`, `eps = [i = 0][k = 0]`
/// * `S(e_i c_j d_k) = zeta^(b i j k + a b i^2 j^2 h + i q(j,-j))
///   e_(-i) c_(-j) d_(-k - a i j)`.
pub fn build_bp(field: &Arc<CycField>, params: &BpParams) -> Result<YdHopf, ClassifyError> {
    let p = params.p;
    let (a, b) = (params.a, params.b);
    let half = (p + 1) / 2;
    let dim = params.dim();
    let zeta = field.root_of_unity(p as u64)?;
    let one = field.one();
    let idx = |i: usize, j: usize, k: usize| (i * p + j) * p + k;
    let names: Vec<String> = (0..p)
        .flat_map(|i| {
            (0..p).flat_map(move |j| (0..p).map(move |k| format!("e{i}c{j}d{k}")))
        })
        .collect();

    let mut mult = vec![Vec::new(); dim * dim];
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                for m in 0..p {
                    for n in 0..p {
                        if (k + p - n) % p != a * i % p * m % p {
                            continue;
                        }
                        let e1 = i * params.q[j * p + m] % p;
                        let e2 = a * b % p * j % p * m % p * (i * i % p) % p * half % p;
                        mult[idx(i, j, k) * dim + idx(i, m, n)] =
                            sparse_single(idx(i, (j + m) % p, n), zeta.pow(((e1 + e2) % p) as u64));
                    }
                }
            }
        }
    }
    let mut unit_terms = Vec::with_capacity(p * p);
    for i in 0..p {
        for k in 0..p {
            unit_terms.push(Term {
                idx: idx(i, 0, k),
                coef: one.clone(),
            });
        }
    }
    let unit = sparse_normalize(unit_terms);
    let mut comult = Vec::with_capacity(dim);
    let mut counit = Vec::with_capacity(dim);
    let mut antipode = Vec::with_capacity(dim);
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                let mut terms = Vec::new();
                for l in 0..p {
                    let il = (i + p - l) % p;
                    for m in 0..p {
                        let e = b * il % p * j % p * m % p;
                        terms.push(Term {
                            idx: idx(l, j, m) * dim + idx(il, j, (k + p - m) % p),
                            coef: zeta.pow(e as u64),
                        });
                    }
                }
                comult.push(sparse_normalize(terms));
                counit.push(if i == 0 && k == 0 {
                    one.clone()
                } else {
                    field.zero()
                });
                let e1 = b * i % p * j % p * k % p;
                let e2 = a * b % p * (i * i % p) % p * (j * j % p) % p * half % p;
                let e3 = i * params.q[j * p + (p - j) % p] % p;
                let kk = (2 * p - k - a * i % p * j % p) % p;
                antipode.push(sparse_single(
                    idx((p - i) % p, (p - j) % p, kk),
                    zeta.pow(((e1 + e2 + e3) % p) as u64),
                ));
            }
        }
    }
    let action = vec![(0..dim).map(|i| sparse_single(i, one.clone())).collect()];
    let coaction = (0..dim).map(|i| sparse_single(i, one.clone())).collect();
    YdHopf::new(
        Arc::clone(field),
        FiniteGroup::cyclic(1),
        names,
        mult,
        unit,
        comult,
        counit,
        Some(antipode),
        action,
        coaction,
    )
    .map_err(Into::into)
}

/// The distinguished elements of a member of the biproduct family: the two
/// generating grouplikes, the central character, and the operator
/// `(id (x) chi) . D`, all verified against their eigenvalue equations.
pub struct BpDistinguished {
    /// `g_Z = sum_(i,k) zeta^i e_i c_0 d_k`; central, with
    /// `g_Z x = zeta^i x` on the basis.
    pub g_z: SparseVec,
    /// `g_N = sum_(i,k) zeta^k e_i c_0 d_k`; not central, with
    /// `x g_N = zeta^k x` on the basis.
    pub g_n: SparseVec,
    /// `chi(e_i c_j d_k) = [i = 0][k = 0] zeta^j`, an algebra character.
    pub chi: Vec<Cyc>,
    /// `Omega = (id (x) chi) . D`, with `Omega(x) = zeta^j x` on the basis.
    pub omega: Vec<SparseVec>,
}

/// Computes the distinguished elements of a built member of the family and
/// verifies: both distinguished elements are grouplike, `chi` is an algebra
/// character, the three eigenvalue equations hold on the whole basis with
/// pairwise distinct eigenvalue triples, the grouplikes form an elementary
/// abelian group of order `p^2` generated by the two distinguished ones, and
/// exactly the powers of the central one are central.
pub fn bp_distinguished(
    bp: &YdHopf,
    params: &BpParams,
) -> Result<BpDistinguished, ClassifyError> {
    let p = params.p;
    let dim = params.dim();
    if bp.dim() != dim {
        return Err(ClassifyError::InvalidData(format!(
            "the algebra has dimension {}, expected {dim}",
            bp.dim()
        )));
    }
    let field = bp.field();
    let zeta = field.root_of_unity(p as u64)?;
    let one = field.one();
    let idx = |i: usize, j: usize, k: usize| (i * p + j) * p + k;

    let mut gz_terms = Vec::with_capacity(p * p);
    let mut gn_terms = Vec::with_capacity(p * p);
    for i in 0..p {
        for k in 0..p {
            gz_terms.push(Term {
                idx: idx(i, 0, k),
                coef: zeta.pow(i as u64),
            });
            gn_terms.push(Term {
                idx: idx(i, 0, k),
                coef: zeta.pow(k as u64),
            });
        }
    }
    let g_z = sparse_normalize(gz_terms);
    let g_n = sparse_normalize(gn_terms);
    let mut chi = Vec::with_capacity(dim);
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                chi.push(if i == 0 && k == 0 {
                    zeta.pow(j as u64)
                } else {
                    field.zero()
                });
            }
        }
    }
    let eval_chi = |v: &[Term]| -> Cyc {
        let mut acc = field.zero();
        for t in v {
            acc = &acc + &(&t.coef * &chi[t.idx]);
        }
        acc
    };

    // grouplike property of the distinguished elements
    for (name, g) in [("central grouplike", &g_z), ("right grouplike", &g_n)] {
        let lhs = bp.comult_vec(g);
        let rhs = tensor_square(dim, g);
        if !sparse_eq(&lhs, &rhs) {
            return Err(ClassifyError::RouteMismatch(format!(
                "{name} is not grouplike"
            )));
        }
        if bp.counit_vec(g) != one {
            return Err(ClassifyError::RouteMismatch(format!(
                "{name} has counit != 1"
            )));
        }
    }
    // chi is an algebra character
    if eval_chi(bp.unit_vec()) != one {
        return Err(ClassifyError::RouteMismatch("chi(1) != 1".into()));
    }
    for i in 0..dim {
        for j in 0..dim {
            let lhs = eval_chi(bp.mult_basis(i, j));
            let rhs = &eval_chi(&sparse_single(i, one.clone()))
                * &eval_chi(&sparse_single(j, one.clone()));
            if lhs != rhs {
                return Err(ClassifyError::RouteMismatch(format!(
                    "chi is not multiplicative at ({}, {})",
                    bp.name(i),
                    bp.name(j)
                )));
            }
        }
    }
    // eigenvalue equations, with Omega computed from the comultiplication
    let mut omega = Vec::with_capacity(dim);
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                let x = sparse_single(idx(i, j, k), one.clone());
                let lhs = bp.mul(&g_z, &x);
                if !sparse_eq(&lhs, &sparse_scale(&x, &zeta.pow(i as u64))) {
                    return Err(ClassifyError::RouteMismatch(format!(
                        "g_Z e{i}c{j}d{k} != zeta^{i} e{i}c{j}d{k}"
                    )));
                }
                let lhs = bp.mul(&x, &g_n);
                if !sparse_eq(&lhs, &sparse_scale(&x, &zeta.pow(k as u64))) {
                    return Err(ClassifyError::RouteMismatch(format!(
                        "e{i}c{j}d{k} g_N != zeta^{k} e{i}c{j}d{k}"
                    )));
                }
                let mut om = Vec::new();
                for t in bp.comult_basis(idx(i, j, k)) {
                    let (l, r) = (t.idx / dim, t.idx % dim);
                    let c = &t.coef * &chi[r];
                    if !c.is_zero() {
                        om.push(Term { idx: l, coef: c });
                    }
                }
                let om = sparse_normalize(om);
                if !sparse_eq(&om, &sparse_scale(&x, &zeta.pow(j as u64))) {
                    return Err(ClassifyError::RouteMismatch(format!(
                        "Omega(e{i}c{j}d{k}) != zeta^{j} e{i}c{j}d{k}"
                    )));
                }
                omega.push(om);
            }
        }
    }
    // the grouplikes form an elementary abelian group of order p^2
    // generated by the distinguished pair
    let listed = bp.grouplikes()?;
    if listed.len() != p * p {
        return Err(ClassifyError::RouteMismatch(format!(
            "{} grouplike elements, expected {}",
            listed.len(),
            p * p
        )));
    }
    let mut products = Vec::with_capacity(p * p);
    let mut gz_pow = bp.unit_vec().clone();
    for _ in 0..p {
        let mut row = gz_pow.clone();
        for _ in 0..p {
            products.push(row.clone());
            row = bp.mul(&row, &g_n);
        }
        gz_pow = bp.mul(&gz_pow, &g_z);
    }
    for (m, prod) in products.iter().enumerate() {
        let hits = listed.iter().filter(|g| sparse_eq(g, prod)).count();
        if hits != 1 {
            return Err(ClassifyError::RouteMismatch(format!(
                "the product g_Z^{} g_N^{} matches {hits} enumerated grouplikes",
                m / p,
                m % p
            )));
        }
        let others = products.iter().filter(|g| sparse_eq(g, prod)).count();
        if others != 1 {
            return Err(ClassifyError::RouteMismatch(
                "the distinguished grouplikes generate fewer than p^2 elements".into(),
            ));
        }
    }
    for g in &listed {
        let mut pow = bp.unit_vec().clone();
        for _ in 0..p {
            pow = bp.mul(&pow, g);
        }
        if !sparse_eq(&pow, bp.unit_vec()) {
            return Err(ClassifyError::RouteMismatch(
                "a grouplike does not have order dividing p".into(),
            ));
        }
    }
    // centrality: exactly the powers of g_Z commute with everything
    let central = |v: &SparseVec| {
        (0..dim).all(|i| {
            let x = sparse_single(i, one.clone());
            sparse_eq(&bp.mul(v, &x), &bp.mul(&x, v))
        })
    };
    for (m, prod) in products.iter().enumerate() {
        let expected = m % p == 0;
        if central(prod) != expected {
            return Err(ClassifyError::RouteMismatch(format!(
                "g_Z^{} g_N^{} has the wrong centrality",
                m / p,
                m % p
            )));
        }
    }
    Ok(BpDistinguished {
        g_z,
        g_n,
        chi,
        omega,
    })
}

/// Compares the closed coefficient formulas of [`build_bp`] against the
/// generic biproduct of the underlying cyclic data, transported through the
/// change of basis `e_i c_j d_k -> 1/p sum_v zeta^(-kv) e_i x_j c_v`.  An
/// empty result means the two routes build the same Hopf algebra.
pub fn bp_fourier_comparison(
    field: &Arc<CycField>,
    params: &BpParams,
) -> Result<Vec<Discrepancy>, ClassifyError> {
    let p = params.p;
    let closed = build_bp(field, params)?;
    let bip = biproduct(&build_ag(&params.ag_data(field)?)?)?;
    let zeta = field.root_of_unity(p as u64)?;
    let pinv = field.from_i64(p as i64).inv()?;
    let mut map = Vec::with_capacity(closed.dim());
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                let mut acc = Vec::new();
                for v in 0..p {
                    acc.push(Term {
                        idx: (i * p + j) * p + v,
                        coef: &zeta.pow(((p - k) % p * v % p) as u64) * &pinv,
                    });
                }
                map.push(sparse_normalize(acc));
            }
        }
    }
    let mut out = hopf_hom_discrepancies(&closed, &bip, &map, "biproduct-fourier");
    if !map_is_bijective(field, &map, bip.dim()) {
        out.push(Discrepancy {
            map: "biproduct-fourier.rank".into(),
            location: "basis change".into(),
            left: "singular".into(),
            right: "bijective".into(),
        });
    }
    Ok(out)
}

/// An isomorphism witness between two members of the biproduct family:
/// scaling parameters `(r, t)` with `a' = t a / r` and `b' = b / (r t)`, and
/// a cochain `v` with `q = r q' + dv`.  The induced map sends
/// `e_i c_j d_k` to `zeta^(i v(j)) e_(ri) c_j d_(tk)`.
#[derive(Debug, Clone)]
pub struct BpIso {
    pub r: usize,
    pub t: usize,
    pub v: Vec<usize>,
    /// Image of each source basis vector inside the target.
    pub map: Vec<SparseVec>,
}

/// Isomorphism test in the biproduct family: searches the scaling pair
/// `(r, t)` and the connecting cochain, then rebuilds the witness map and
/// verifies it entrywise as a bijective Hopf algebra morphism.
pub fn iso_test_bp(
    field: &Arc<CycField>,
    src: &BpParams,
    dst: &BpParams,
) -> Result<Option<BpIso>, ClassifyError> {
    if src.p != dst.p {
        return Ok(None);
    }
    let p = src.p;
    let md = GModule::trivial(FiniteGroup::cyclic(p), FiniteGroup::cyclic(p));
    for r in 1..p {
        for t in 1..p {
            let ri = inv_mod(r, p).expect("r is a unit");
            let rti = inv_mod(r * t % p, p).expect("rt is a unit");
            if dst.a != t * src.a % p * ri % p || dst.b != src.b * rti % p {
                continue;
            }
            let scaled: Vec<usize> = dst.q.iter().map(|&x| r * x % p).collect();
            let Some(v) = cohomologous2(&md, &scaled, &src.q)? else {
                continue;
            };
            let ba = build_bp(field, src)?;
            let bb = build_bp(field, dst)?;
            let zeta = field.root_of_unity(p as u64)?;
            let mut map = Vec::with_capacity(src.dim());
            for i in 0..p {
                for j in 0..p {
                    for k in 0..p {
                        map.push(sparse_single(
                            dst.index(r * i % p, j, t * k % p),
                            zeta.pow((i * v[j] % p) as u64),
                        ));
                    }
                }
            }
            let diffs = hopf_hom_discrepancies(&ba, &bb, &map, "bp-iso");
            if !diffs.is_empty() {
                return Err(ClassifyError::RouteMismatch(format!(
                    "the scaling witness (r = {r}, t = {t}) satisfies the cochain \
                     conditions but its map fails: {} differences, first: {}",
                    diffs.len(),
                    diffs[0]
                )));
            }
            if !map_is_bijective(field, &map, bb.dim()) {
                return Err(ClassifyError::RouteMismatch(format!(
                    "the scaling witness (r = {r}, t = {t}) verifies but is not bijective"
                )));
            }
            return Ok(Some(BpIso { r, t, v, map }));
        }
    }
    Ok(None)
}

/// Orbit count of the scaling action on the parameter space: the pair
/// `(r, t)` sends `(a, b, n)` to `(t a / r, b / (r t), n / r)` over the
/// carry classes `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpOrbitCount {
    pub count: usize,
    /// Orbit sizes, largest first.
    pub sizes: Vec<usize>,
}

/// Counts the isomorphism classes in the biproduct family by the orbit
/// arithmetic of the scaling action on `(a, b, n)` triples.
pub fn count_bp_classes(p: usize) -> Result<BpOrbitCount, ClassifyError> {
    if !is_prime(p) || p == 2 {
        return Err(ClassifyError::InvalidData(format!(
            "the biproduct family needs an odd prime, got {p}"
        )));
    }
    let units = p - 1;
    let total = units * units * p;
    let idx = |a: usize, b: usize, n: usize| ((a - 1) * units + (b - 1)) * p + n;
    let mut uf = UnionFind::new(total);
    for a in 1..p {
        for b in 1..p {
            for n in 0..p {
                for r in 1..p {
                    let ri = inv_mod(r, p).expect("r is a unit");
                    for t in 1..p {
                        let rti = inv_mod(r * t % p, p).expect("rt is a unit");
                        let a2 = t * a % p * ri % p;
                        let b2 = b * rti % p;
                        let n2 = n * ri % p;
                        uf.union(idx(a, b, n), idx(a2, b2, n2));
                    }
                }
            }
        }
    }
    let mut size_of_root = vec![0usize; total];
    for i in 0..total {
        let r = uf.find(i);
        size_of_root[r] += 1;
    }
    let mut sizes: Vec<usize> = size_of_root.into_iter().filter(|&s| s > 0).collect();
    sizes.sort_unstable_by(|x, y| y.cmp(x));
    Ok(BpOrbitCount {
        count: sizes.len(),
        sizes,
    })
}

/// Partitions the full `(a, b, n)` enumeration by [`iso_test_bp`] and
/// returns the class count.  This is the witness-route cross-check of
/// [`count_bp_classes`]: every pairwise verdict comes from a verified map
/// or an exhausted search, independently of the orbit arithmetic.
pub fn bp_partition_by_iso(field: &Arc<CycField>, p: usize) -> Result<usize, ClassifyError> {
    let mut reps: Vec<BpParams> = Vec::new();
    for a in 1..p {
        for b in 1..p {
            for n in 0..p {
                let params = BpParams::carry(p, a, b, n)?;
                let mut placed = false;
                for rep in &reps {
                    if iso_test_bp(field, &params, rep)?.is_some() {
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    reps.push(params);
                }
            }
        }
    }
    Ok(reps.len())
}

// ---------------------------------------------------------------------------
// the two sign biproducts in dimension eight
// ---------------------------------------------------------------------------

/// The scalars `sigma_i(j, m)` of a sign algebra: `sigma_0 = 1` and
/// `sigma_1(j, m) = i^(q(j, m))` for the matching carry cocycle.
fn sign_sigma(field: &Arc<CycField>, plus: bool) -> Result<Vec<Vec<Vec<Cyc>>>, ClassifyError> {
    let iota = field.root_of_unity(4)?;
    let q = if plus { qplus() } else { qminus() };
    Ok((0..2)
        .map(|i| {
            (0..2)
                .map(|j| {
                    (0..2)
                        .map(|m| iota.pow((i * q[j * 2 + m]) as u64))
                        .collect()
                })
                .collect()
        })
        .collect())
}

/// Builds one of the two eight dimensional sign biproducts on the basis
/// `e_i (x) c_j (x) d_k` from closed coefficient formulas:
///
/// * `(e_i c_j d_k)(e_l c_m d_n) = [i = l] [k - n = l m] sigma_i(j, m)
///   e_i c_(j+m) d_n`
/// * `1 = sum_(i,k) e_i c_0 d_k`
/// * `D(e_i c_j d_k) = sum_(l,m) (-1)^((i-l) j m)
///   (e_l c_j d_m) (x) (e_(i-l) c_j d_(k-m))`, `eps = [i = 0][k = 0]`
/// * `S(e_i c_j d_k) = (-1)^(i j k) sigma_i(j, -j)^-1 e_(-i) c_(-j)
///   d_(-k - i j)`.
pub fn build_bp_sign(field: &Arc<CycField>, plus: bool) -> Result<YdHopf, ClassifyError> {
    let sigma = sign_sigma(field, plus)?;
    let one = field.one();
    let minus = field.from_i64(-1);
    let dim = 8;
    let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
    let names: Vec<String> = (0..2)
        .flat_map(|i| {
            (0..2).flat_map(move |j| (0..2).map(move |k| format!("e{i}c{j}d{k}")))
        })
        .collect();

    let mut mult = vec![Vec::new(); dim * dim];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for m in 0..2 {
                    for n in 0..2 {
                        if (k + 2 - n) % 2 != i * m % 2 {
                            continue;
                        }
                        mult[idx(i, j, k) * dim + idx(i, m, n)] =
                            sparse_single(idx(i, (j + m) % 2, n), sigma[i][j][m].clone());
                    }
                }
            }
        }
    }
    let mut unit_terms = Vec::with_capacity(4);
    for i in 0..2 {
        for k in 0..2 {
            unit_terms.push(Term {
                idx: idx(i, 0, k),
                coef: one.clone(),
            });
        }
    }
    let unit = sparse_normalize(unit_terms);
    let mut comult = Vec::with_capacity(dim);
    let mut counit = Vec::with_capacity(dim);
    let mut antipode = Vec::with_capacity(dim);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let mut terms = Vec::new();
                for l in 0..2 {
                    let il = (i + 2 - l) % 2;
                    for m in 0..2 {
                        terms.push(Term {
                            idx: idx(l, j, m) * dim + idx(il, j, (k + 2 - m) % 2),
                            coef: if il * j * m % 2 == 1 {
                                minus.clone()
                            } else {
                                one.clone()
                            },
                        });
                    }
                }
                comult.push(sparse_normalize(terms));
                counit.push(if i == 0 && k == 0 {
                    one.clone()
                } else {
                    field.zero()
                });
                let sign = if i * j * k % 2 == 1 {
                    minus.clone()
                } else {
                    one.clone()
                };
                let coef = &sign * &sigma[i][j][j].inv()?;
                antipode.push(sparse_single(idx(i, j, (k + i * j) % 2), coef));
            }
        }
    }
    let action = vec![(0..dim).map(|i| sparse_single(i, one.clone())).collect()];
    let coaction = (0..dim).map(|i| sparse_single(i, one.clone())).collect();
    YdHopf::new(
        Arc::clone(field),
        FiniteGroup::cyclic(1),
        names,
        mult,
        unit,
        comult,
        counit,
        Some(antipode),
        action,
        coaction,
    )
    .map_err(Into::into)
}

/// Compares a closed sign biproduct against the generic biproduct of the
/// matching four dimensional sign algebra, transported through the basis
/// change `e_i c_j d_k -> 1/2 sum_v (-1)^(kv) e_i x_j c_v`.
pub fn bp_sign_fourier_comparison(
    field: &Arc<CycField>,
    plus: bool,
) -> Result<Vec<Discrepancy>, ClassifyError> {
    let closed = build_bp_sign(field, plus)?;
    let base = if plus {
        crate::construct::build_a_plus(field)?
    } else {
        crate::construct::build_a_minus(field)?
    };
    let bip = biproduct(&base)?;
    let half = field.from_i64(2).inv()?;
    let mut map = Vec::with_capacity(8);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let mut acc = Vec::new();
                for v in 0..2 {
                    let sign = if k * v % 2 == 1 {
                        field.from_i64(-1)
                    } else {
                        field.one()
                    };
                    acc.push(Term {
                        idx: (i * 2 + j) * 2 + v,
                        coef: &sign * &half,
                    });
                }
                map.push(sparse_normalize(acc));
            }
        }
    }
    let mut out = hopf_hom_discrepancies(&closed, &bip, &map, "sign-fourier");
    if !map_is_bijective(field, &map, bip.dim()) {
        out.push(Discrepancy {
            map: "sign-fourier.rank".into(),
            location: "basis change".into(),
            left: "singular".into(),
            right: "bijective".into(),
        });
    }
    Ok(out)
}

/// Builds both sign biproducts and the explicit isomorphism
/// `e_i c_j d_k -> sigma_1^+(i, j) e_i c_j d_(k+i)` from the plus algebra to
/// the minus algebra, verifies it entrywise as a bijective Hopf algebra
/// morphism, and returns the map.  The scalar identities
/// `sigma_i^-(j, k) = (-1)^(ijk) sigma_i^+(j, k)` and
/// `sigma_1^+(i, j+k) = (-1)^(ijk) sigma_1^+(i, j) sigma_1^+(i, k)` behind
/// the construction are certified first.
pub fn bplus_bminus_iso(field: &Arc<CycField>) -> Result<Vec<SparseVec>, ClassifyError> {
    let sp = sign_sigma(field, true)?;
    let sm = sign_sigma(field, false)?;
    let minus = field.from_i64(-1);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let sign = if i * j * k % 2 == 1 {
                    minus.clone()
                } else {
                    field.one()
                };
                if sm[i][j][k] != &sign * &sp[i][j][k] {
                    return Err(ClassifyError::RouteMismatch(format!(
                        "sigma_-({i}; {j}, {k}) != (-1)^(ijk) sigma_+({i}; {j}, {k})"
                    )));
                }
                if sp[1][i][(j + k) % 2] != &sign * &(&sp[1][i][j] * &sp[1][i][k]) {
                    return Err(ClassifyError::RouteMismatch(format!(
                        "sigma_+(1; {i}, {j}+{k}) != (-1)^(ijk) sigma_+(1; {i}, {j}) \
                         sigma_+(1; {i}, {k})"
                    )));
                }
            }
        }
    }
    let bplus = build_bp_sign(field, true)?;
    let bminus = build_bp_sign(field, false)?;
    let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
    let mut map = Vec::with_capacity(8);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                map.push(sparse_single(idx(i, j, (k + i) % 2), sp[1][i][j].clone()));
            }
        }
    }
    let diffs = hopf_hom_discrepancies(&bplus, &bminus, &map, "sign-iso");
    if !diffs.is_empty() {
        return Err(ClassifyError::RouteMismatch(format!(
            "the sign isomorphism fails: {} differences, first: {}",
            diffs.len(),
            diffs[0]
        )));
    }
    if !map_is_bijective(field, &map, 8) {
        return Err(ClassifyError::RouteMismatch(
            "the sign isomorphism is not bijective".into(),
        ));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::coboundary2;
    use crate::construct::{ap_data, build_a_plus, compare_ydhopf};

    fn field3() -> Arc<CycField> {
        CycField::new(3)
    }

    fn field4() -> Arc<CycField> {
        CycField::new(4)
    }

    fn data3(a: usize, b: usize, n: usize) -> AgData {
        ap_data(&field3(), 3, a, b, n).unwrap()
    }

    #[test]
    fn identity_morphism_is_verified() {
        let d = data3(1, 1, 1);
        let id = morphism_identity(&d);
        morphism_check(&id, &d, &d).unwrap();
        assert!(morphism_verify(&id, &d, &d).unwrap().is_empty());
        let map = morphism_map(&id, &d, &d).unwrap();
        assert!(map_is_bijective(d.field(), &map, d.dim()));
    }

    #[test]
    fn morphism_check_names_the_failing_condition() {
        let d = data3(1, 1, 0);
        let mut m = morphism_identity(&d);
        m.w = vec![1, 0, 0];
        match morphism_check(&m, &d, &d) {
            Err(ClassifyError::NotAMorphism(msg)) => assert!(msg.contains("w(1)")),
            other => panic!("expected a morphism failure, got {other:?}"),
        }
        let mut m = morphism_identity(&d);
        m.w = vec![0, 1, 0];
        match morphism_check(&m, &d, &d) {
            Err(ClassifyError::NotAMorphism(msg)) => assert!(msg.contains("q(s,t)")),
            other => panic!("expected a cocycle failure, got {other:?}"),
        }
    }

    #[test]
    fn cohomologous_cocycles_give_a_verified_morphism() {
        let base = data3(1, 1, 1);
        let md = GModule::trivial(FiniteGroup::cyclic(3), FiniteGroup::cyclic(3));
        let w = vec![0usize, 1, 2];
        let db = coboundary2(&md, &w);
        let qt: Vec<usize> = base
            .q_table()
            .iter()
            .zip(&db)
            .map(|(&q, &d)| (q + d) % 3)
            .collect();
        let (chi, eta) = canonical_characters(3, &field3()).unwrap();
        let shifted = AgData::new(
            field3(),
            FiniteGroup::cyclic(3),
            FiniteRing::zn(3),
            vec![1; 3],
            base.alpha().to_vec(),
            base.beta().to_vec(),
            qt,
            chi,
            eta,
        )
        .unwrap();
        let m = MorphismData {
            hom: morphism_identity(&base).hom,
            x: 1,
            w,
        };
        morphism_check(&m, &shifted, &base).unwrap();
        assert!(morphism_verify(&m, &shifted, &base).unwrap().is_empty());
        let witness = iso_test_ap(&shifted, &base).unwrap().expect("isomorphic");
        assert_eq!(witness.x, 1);
    }

    #[test]
    fn composition_is_associative_and_functorial() {
        let d = data3(1, 1, 0);
        let ring = d.ring().clone();
        let g = d.group().clone();
        let hom2 = GroupHom::new(g.clone(), g.clone(), vec![0, 2, 1]).unwrap();
        let m1 = MorphismData {
            hom: hom2.clone(),
            x: 2,
            w: vec![0, 1, 2],
        };
        let m2 = MorphismData {
            hom: morphism_identity(&d).hom,
            x: 1,
            w: vec![0, 2, 1],
        };
        let m3 = MorphismData {
            hom: hom2,
            x: 2,
            w: vec![0, 0, 0],
        };
        for m in [&m1, &m2, &m3] {
            morphism_check(m, &d, &d).unwrap();
            assert!(morphism_verify(m, &d, &d).unwrap().is_empty());
        }
        let left = morphism_compose(
            &ring,
            &m3,
            &morphism_compose(&ring, &m2, &m1).unwrap(),
        )
        .unwrap();
        let right = morphism_compose(
            &ring,
            &morphism_compose(&ring, &m3, &m2).unwrap(),
            &m1,
        )
        .unwrap();
        assert_eq!(left.hom.table, right.hom.table);
        assert_eq!(left.x, right.x);
        assert_eq!(left.w, right.w);
        // the composite map is the composition of the maps
        let comp = morphism_compose(&ring, &m2, &m1).unwrap();
        morphism_check(&comp, &d, &d).unwrap();
        let map1 = morphism_map(&m1, &d, &d).unwrap();
        let map2 = morphism_map(&m2, &d, &d).unwrap();
        let map12 = morphism_map(&comp, &d, &d).unwrap();
        for i in 0..d.dim() {
            assert!(sparse_eq(&apply_linear(&map2, &map1[i]), &map12[i]));
        }
        // identity composes neutrally
        let id = morphism_identity(&d);
        let li = morphism_compose(&ring, &id, &m1).unwrap();
        assert_eq!(li.hom.table, m1.hom.table);
        assert_eq!(li.x, m1.x);
        assert_eq!(li.w, m1.w);
    }

    #[test]
    fn scaled_data_is_isomorphic_to_its_normal_form() {
        let scaled = data3(2, 2, 2);
        let normal = data3(1, 1, 1);
        assert_eq!(ap_invariants(&scaled).unwrap(), (1, 1));
        assert_eq!(ap_invariants(&normal).unwrap(), (1, 1));
        assert!(iso_test_ap(&scaled, &normal).unwrap().is_some());
    }

    #[test]
    fn distinct_invariants_are_not_isomorphic() {
        assert!(iso_test_ap(&data3(1, 1, 0), &data3(1, 1, 1))
            .unwrap()
            .is_none());
        assert!(iso_test_ap(&data3(1, 1, 1), &data3(2, 1, 1))
            .unwrap()
            .is_none());
    }

    #[test]
    fn trivial_data_is_rejected() {
        let field = field3();
        let (chi, eta) = canonical_characters(3, &field).unwrap();
        let degenerate = AgData::new(
            field.clone(),
            FiniteGroup::cyclic(3),
            FiniteRing::zn(3),
            vec![1; 3],
            vec![0; 3],
            vec![0, 1, 2],
            vec![0; 9],
            chi,
            eta,
        )
        .unwrap();
        match iso_test_ap(&degenerate, &data3(1, 1, 0)) {
            Err(ClassifyError::TrivialInput(_)) => {}
            other => panic!("expected a degeneracy error, got {other:?}"),
        }
    }

    #[test]
    fn invariant_and_witness_routes_agree_on_the_full_enumeration() {
        let mut inputs = Vec::new();
        for a in 1..3 {
            for b in 1..3 {
                for n in 0..3 {
                    inputs.push(((a, b, n), data3(a, b, n)));
                }
            }
        }
        let mut verdicts = vec![vec![false; inputs.len()]; inputs.len()];
        for (i, (_, x)) in inputs.iter().enumerate() {
            for (j, (_, y)) in inputs.iter().enumerate() {
                // a route mismatch would surface as an error here
                verdicts[i][j] = iso_test_ap(x, y).unwrap().is_some();
            }
        }
        for i in 0..inputs.len() {
            assert!(verdicts[i][i]);
            for j in 0..inputs.len() {
                assert_eq!(verdicts[i][j], verdicts[j][i]);
                let same = ap_invariants(&inputs[i].1).unwrap()
                    == ap_invariants(&inputs[j].1).unwrap();
                assert_eq!(verdicts[i][j], same);
            }
        }
    }

    #[test]
    fn dimension_nine_has_six_classes() {
        let out = classify_dim_p2(&field3(), 3).unwrap();
        assert_eq!(out.count, 6);
        let mut reps = out.representatives.clone();
        reps.sort();
        let expected: Vec<ClassRep> = (1..3)
            .flat_map(|m| (0..3).map(move |n| ClassRep::Cyclic { m, n }))
            .collect();
        assert_eq!(reps, expected);
        for members in &out.classes {
            assert_eq!(members.len(), 2);
        }
    }

    #[test]
    fn dimension_twentyfive_has_twenty_classes() {
        let out = classify_dim_p2(&CycField::new(5), 5).unwrap();
        assert_eq!(out.count, 20);
        for members in &out.classes {
            assert_eq!(members.len(), 4);
        }
    }

    #[test]
    fn the_sign_pair_is_not_isomorphic() {
        assert!(verify_apm_noniso(&field4()).unwrap());
        let out = classify_dim_p2(&field4(), 2).unwrap();
        assert_eq!(out.count, 2);
        assert_eq!(
            out.representatives,
            vec![ClassRep::SignPlus, ClassRep::SignMinus]
        );
    }

    #[test]
    fn even_data_rebuilds_the_sign_algebras() {
        let field = field4();
        let plus = a_plus_data(&field).unwrap().build().unwrap();
        assert!(compare_ydhopf(&plus, &build_a_plus(&field).unwrap()).is_empty());
        let minus = a_minus_data(&field).unwrap().build().unwrap();
        assert!(
            compare_ydhopf(&minus, &crate::construct::build_a_minus(&field).unwrap())
                .is_empty()
        );
    }

    #[test]
    fn even_self_isomorphism_exists() {
        let field = field4();
        let plus = a_plus_data(&field).unwrap();
        let w = iso_test_even(&plus, &plus).unwrap().expect("isomorphic");
        assert_eq!(w.w, vec![0, 0]);
    }

    #[test]
    fn even_data_rejects_wrong_parity() {
        match EvenData::new(
            field4(),
            FiniteGroup::cyclic(2),
            vec![0, 0],
            vec![0, 0],
            qplus(),
        ) {
            Err(ClassifyError::InvalidData(msg)) => assert!(msg.contains("parity")),
            Err(other) => panic!("expected a parity error, got {other}"),
            Ok(_) => panic!("expected a parity error, got a data set"),
        }
    }

    #[test]
    fn decompose_round_trips_the_odd_family() {
        for m in 1..3 {
            for n in 0..3 {
                let original = data3(m, 1, n);
                let built = build_ag(&original).unwrap();
                let dec = decompose_structure(&built).unwrap();
                assert_eq!(dec.prime, 3);
                assert_eq!(dec.group.order(), 3);
                assert_eq!(dec.q_modulus, 3);
                let RecoveredData::Odd(recovered) = dec.data else {
                    panic!("expected cyclic data");
                };
                assert!(iso_test_ap(&recovered, &original).unwrap().is_some());
            }
        }
    }

    #[test]
    fn decompose_recovers_the_sign_data() {
        let field = field4();
        for plus in [true, false] {
            let built = if plus {
                build_a_plus(&field).unwrap()
            } else {
                crate::construct::build_a_minus(&field).unwrap()
            };
            let dec = decompose_structure(&built).unwrap();
            assert_eq!(dec.prime, 2);
            assert_eq!(dec.group.order(), 2);
            assert_eq!(dec.q_modulus, 4);
            let RecoveredData::Even(recovered) = dec.data else {
                panic!("expected even data");
            };
            let same = iso_test_even(&recovered, &a_plus_data(&field).unwrap()).unwrap();
            assert_eq!(same.is_some(), plus);
            let other = iso_test_even(&recovered, &a_minus_data(&field).unwrap()).unwrap();
            assert_eq!(other.is_some(), !plus);
        }
    }

    #[test]
    fn decompose_rejects_an_algebra_without_the_distinguished_grouplike() {
        // the group algebra of Z_3 with the grading coaction: a well formed
        // algebra and coalgebra whose grouplikes form a basis, but every
        // nontrivial grouplike fails coinvariance, so no distinguished
        // grouplike exists and the recovery must refuse to fabricate data
        let field = field3();
        let one = field.one();
        let dim = 3;
        let names: Vec<String> = (0..dim).map(|i| format!("c{i}")).collect();
        let mut mult = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                mult[i * dim + j] = sparse_single((i + j) % dim, one.clone());
            }
        }
        let comult = (0..dim).map(|i| sparse_single(i * dim + i, one.clone())).collect();
        let counit = vec![one.clone(); dim];
        let antipode = (0..dim)
            .map(|i| sparse_single((dim - i) % dim, one.clone()))
            .collect();
        let action = (0..dim)
            .map(|_| (0..dim).map(|i| sparse_single(i, one.clone())).collect())
            .collect();
        let coaction = (0..dim)
            .map(|i| sparse_single(i * dim + i, one.clone()))
            .collect();
        let graded = YdHopf::new(
            field.clone(),
            FiniteGroup::cyclic(3),
            names,
            mult,
            sparse_single(0, one.clone()),
            comult,
            counit,
            Some(antipode),
            action,
            coaction,
        )
        .unwrap();
        match decompose_structure(&graded) {
            Err(ClassifyError::TrivialAlgebra(_)) => {}
            Err(other) => panic!("expected a degeneracy error, got {other}"),
            Ok(_) => panic!("expected a degeneracy error, got a decomposition"),
        }
    }

    #[test]
    fn biproduct_family_verifies_and_matches_the_generic_route() {
        let field = field3();
        let params = BpParams::carry(3, 1, 1, 1).unwrap();
        let bp = build_bp(&field, &params).unwrap();
        assert!(bp.is_ordinary());
        let report = bp.verify();
        assert!(report.passed(), "{}", report.summary());
        assert!(bp_fourier_comparison(&field, &params).unwrap().is_empty());
        let twisted = BpParams::carry(3, 2, 1, 0).unwrap();
        assert!(bp_fourier_comparison(&field, &twisted).unwrap().is_empty());
    }

    #[test]
    fn biproduct_family_distinguished_elements() {
        let field = field3();
        let params = BpParams::carry(3, 1, 1, 0).unwrap();
        let bp = build_bp(&field, &params).unwrap();
        let dist = bp_distinguished(&bp, &params).unwrap();
        assert_eq!(bp.grouplikes().unwrap().len(), 9);
        assert_eq!(dist.g_z.len(), 9);
        assert_eq!(dist.g_n.len(), 9);
        assert_eq!(dist.omega.len(), 27);
    }

    #[test]
    fn biproduct_scaling_isomorphism() {
        let field = field3();
        let one = BpParams::carry(3, 1, 1, 0).unwrap();
        let two = BpParams::carry(3, 2, 2, 0).unwrap();
        let found = iso_test_bp(&field, &one, &two).unwrap().expect("isomorphic");
        assert_eq!(found.v, vec![0; 3]);
        // the scaling pair r = 2, t = 1 is also a witness; verify it directly
        let ba = build_bp(&field, &one).unwrap();
        let bb = build_bp(&field, &two).unwrap();
        let zeta = field.root_of_unity(3).unwrap();
        let mut map = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    map.push(sparse_single(two.index(2 * i % 3, j, k), zeta.pow(0)));
                }
            }
        }
        assert!(hopf_hom_discrepancies(&ba, &bb, &map, "manual").is_empty());
        assert!(map_is_bijective(&field, &map, 27));
    }

    #[test]
    fn biproduct_family_negative_and_positive_pairs() {
        let field = field3();
        let q1 = BpParams::carry(3, 1, 1, 1).unwrap();
        let q0 = BpParams::carry(3, 1, 1, 0).unwrap();
        let q2 = BpParams::carry(3, 1, 1, 2).unwrap();
        assert!(iso_test_bp(&field, &q1, &q0).unwrap().is_none());
        let found = iso_test_bp(&field, &q1, &q2).unwrap().expect("isomorphic");
        assert_eq!((found.r, found.t), (2, 2));
    }

    #[test]
    fn biproduct_orbit_counts() {
        let three = count_bp_classes(3).unwrap();
        assert_eq!(three.count, 4);
        assert_eq!(three.sizes, vec![4, 4, 2, 2]);
        assert_eq!(count_bp_classes(5).unwrap().count, 6);
        assert_eq!(count_bp_classes(7).unwrap().count, 8);
    }

    #[test]
    fn biproduct_partition_matches_the_orbit_count() {
        assert_eq!(bp_partition_by_iso(&field3(), 3).unwrap(), 4);
    }

    #[test]
    fn sign_biproducts_verify() {
        let field = field4();
        for plus in [true, false] {
            let b = build_bp_sign(&field, plus).unwrap();
            assert!(b.is_ordinary());
            let report = b.verify();
            assert!(report.passed(), "{}", report.summary());
            assert!(bp_sign_fourier_comparison(&field, plus).unwrap().is_empty());
        }
    }

    #[test]
    fn sign_biproducts_are_isomorphic() {
        let field = field4();
        let map = bplus_bminus_iso(&field).unwrap();
        let bplus = build_bp_sign(&field, true).unwrap();
        let bminus = build_bp_sign(&field, false).unwrap();
        // the unit maps to the unit
        assert!(sparse_eq(
            &apply_linear(&map, bplus.unit_vec()),
            bminus.unit_vec()
        ));
        // e_1 c_1 d_1 maps to i times e_1 c_1 d_0
        let iota = field.root_of_unity(4).unwrap();
        let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
        assert!(sparse_eq(&map[idx(1, 1, 1)], &sparse_single(idx(1, 1, 0), iota)));
    }

    #[test]
    fn yd_hom_check_rejects_a_scaled_map() {
        let d = data3(1, 1, 1);
        let built = build_ag(&d).unwrap();
        let two = d.field().from_i64(2);
        let map: Vec<SparseVec> = (0..d.dim())
            .map(|i| sparse_single(i, two.clone()))
            .collect();
        assert!(!yd_hom_discrepancies(&built, &built, &map, "scaled").is_empty());
    }
}
