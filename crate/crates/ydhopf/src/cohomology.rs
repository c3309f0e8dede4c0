//! Low-degree group cohomology with coefficients in a finite module:
//! cocycle validation, coboundary tests, explicit representatives for
//! second-cohomology classes of cyclic groups, cup products of 1-cochains,
//! and the extension group attached to a 2-cocycle.
//!
//! Cochains are plain `Vec<usize>` element tables: a 1-cochain maps group
//! index `s` to a module index, a 2-cochain maps the pair `(s, t)` to
//! `q[s * |G| + t]`. All 2-cocycles here are normalized, meaning
//! `q(1, s) = q(s, 1) = 0`.

use crate::finite::{FiniteError, FiniteGroup, FiniteRing};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("action table is invalid: {0}")]
    InvalidAction(String),
    #[error("cochain has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("1-cocycle identity fails at ({s}, {t})")]
    NotACocycle1 { s: usize, t: usize },
    #[error("2-cocycle identity fails at ({s}, {t}, {r})")]
    NotACocycle2 { s: usize, t: usize, r: usize },
    #[error("2-cochain is not normalized at {s}")]
    NotNormalized { s: usize },
    #[error("search space of {size} cochains exceeds the limit and the module is not cyclic")]
    SearchSpaceTooLarge { size: u128 },
    #[error(transparent)]
    Finite(#[from] FiniteError),
}

/// A finite abelian group with a left action of a finite group, both given
/// by tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    group: FiniteGroup,
    module: FiniteGroup,
    /// `action[s][m]` is s acting on m.
    action: Vec<Vec<usize>>,
}

impl GModule {
    pub fn new(
        group: FiniteGroup,
        module: FiniteGroup,
        action: Vec<Vec<usize>>,
    ) -> Result<GModule, CohomologyError> {
        if !module.is_abelian() {
            return Err(CohomologyError::InvalidAction("module is not abelian".into()));
        }
        if action.len() != group.order() || action.iter().any(|r| r.len() != module.order()) {
            return Err(CohomologyError::InvalidAction("action table has wrong shape".into()));
        }
        for s in group.elements() {
            for (m, &v) in action[s].iter().enumerate() {
                if v >= module.order() {
                    return Err(CohomologyError::InvalidAction(format!(
                        "action({s}, {m}) = {v} out of range"
                    )));
                }
            }
            // each s must act by a group automorphism
            for m1 in module.elements() {
                for m2 in module.elements() {
                    if action[s][module.mul(m1, m2)] != module.mul(action[s][m1], action[s][m2]) {
                        return Err(CohomologyError::InvalidAction(format!(
                            "action of {s} is not additive at ({m1}, {m2})"
                        )));
                    }
                }
            }
        }
        for m in module.elements() {
            if action[group.identity()][m] != m {
                return Err(CohomologyError::InvalidAction(
                    "identity does not act trivially".into(),
                ));
            }
        }
        for s in group.elements() {
            for t in group.elements() {
                for m in module.elements() {
                    if action[group.mul(s, t)][m] != action[s][action[t][m]] {
                        return Err(CohomologyError::InvalidAction(format!(
                            "action is not multiplicative at ({s}, {t}, {m})"
                        )));
                    }
                }
            }
        }
        Ok(GModule {
            group,
            module,
            action,
        })
    }

    /// Trivial action of `group` on `module`.
    pub fn trivial(group: FiniteGroup, module: FiniteGroup) -> GModule {
        let action = (0..group.order())
            .map(|_| (0..module.order()).collect())
            .collect();
        GModule::new(group, module, action).expect("trivial action is valid")
    }

    /// The additive group of `ring` with s acting as multiplication by the
    /// unit `nu[s]`.
    pub fn by_unit(
        group: &FiniteGroup,
        ring: &FiniteRing,
        nu: &[usize],
    ) -> Result<GModule, CohomologyError> {
        crate::finite::validate_unit_hom(group, ring, nu)?;
        let action = (0..group.order())
            .map(|s| ring.elements().map(|m| ring.mul(nu[s], m)).collect())
            .collect();
        GModule::new(group.clone(), ring.additive_group(), action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn module(&self) -> &FiniteGroup {
        &self.module
    }
    pub fn act(&self, s: usize, m: usize) -> usize {
        self.action[s][m]
    }
}

fn check_len(cochain: &[usize], expected: usize) -> Result<(), CohomologyError> {
    if cochain.len() != expected {
        return Err(CohomologyError::LengthMismatch {
            got: cochain.len(),
            expected,
        });
    }
    Ok(())
}

/// Checks f(st) = f(s) + s·f(t).
pub fn validate_cocycle1(md: &GModule, f: &[usize]) -> Result<(), CohomologyError> {
    let g = md.group();
    let m = md.module();
    check_len(f, g.order())?;
    for s in g.elements() {
        for t in g.elements() {
            if f[g.mul(s, t)] != m.mul(f[s], md.act(s, f[t])) {
                return Err(CohomologyError::NotACocycle1 { s, t });
            }
        }
    }
    Ok(())
}

/// Checks normalization q(1, s) = q(s, 1) = 0 and the cocycle identity
/// s·q(t, r) − q(st, r) + q(s, tr) − q(s, t) = 0.
pub fn validate_cocycle2(md: &GModule, q: &[usize]) -> Result<(), CohomologyError> {
    let g = md.group();
    let m = md.module();
    let n = g.order();
    check_len(q, n * n)?;
    let e = g.identity();
    for s in g.elements() {
        if q[e * n + s] != m.identity() || q[s * n + e] != m.identity() {
            return Err(CohomologyError::NotNormalized { s });
        }
    }
    for s in g.elements() {
        for t in g.elements() {
            for r in g.elements() {
                let lhs = m.mul(md.act(s, q[t * n + r]), q[s * n + g.mul(t, r)]);
                let rhs = m.mul(q[g.mul(s, t) * n + r], q[s * n + t]);
                if lhs != rhs {
                    return Err(CohomologyError::NotACocycle2 { s, t, r });
                }
            }
        }
    }
    Ok(())
}

/// The coboundary (dw)(s, t) = s·w(t) − w(st) + w(s) of a 1-cochain.
pub fn coboundary2(md: &GModule, w: &[usize]) -> Vec<usize> {
    let g = md.group();
    let m = md.module();
    let n = g.order();
    let mut out = vec![0usize; n * n];
    for s in g.elements() {
        for t in g.elements() {
            let val = m.mul(
                m.mul(md.act(s, w[t]), m.inv(w[g.mul(s, t)])),
                w[s],
            );
            out[s * n + t] = val;
        }
    }
    out
}

/// Pointwise difference q2 − q1 of 2-cochains.
fn difference2(md: &GModule, q1: &[usize], q2: &[usize]) -> Vec<usize> {
    let m = md.module();
    q1.iter()
        .zip(q2)
        .map(|(&a, &b)| m.mul(b, m.inv(a)))
        .collect()
}

const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

/// Decides whether two normalized 2-cocycles differ by a coboundary,
/// returning a witnessing 1-cochain w (with w(1) = 0) when they do.
///
/// Small search spaces are scanned exhaustively; for a cyclic module the
/// problem is instead solved as a linear system over Z_m. Anything else
/// too large reports [`CohomologyError::SearchSpaceTooLarge`].
pub fn cohomologous2(
    md: &GModule,
    q1: &[usize],
    q2: &[usize],
) -> Result<Option<Vec<usize>>, CohomologyError> {
    validate_cocycle2(md, q1)?;
    validate_cocycle2(md, q2)?;
    let g = md.group();
    let m = md.module();
    let n = g.order();
    let diff = difference2(md, q1, q2);
    let free = n - 1;
    let size = (m.order() as u128)
        .checked_pow(free as u32)
        .unwrap_or(u128::MAX);
    if size <= EXHAUSTIVE_LIMIT {
        let slots: Vec<usize> = g.elements().filter(|&s| s != g.identity()).collect();
        let mut w = vec![m.identity(); n];
        let mut odometer = vec![0usize; free];
        loop {
            for (slot, &digit) in slots.iter().zip(&odometer) {
                w[*slot] = digit;
            }
            if coboundary2(md, &w) == diff {
                return Ok(Some(w));
            }
            let mut pos = 0;
            loop {
                if pos == free {
                    return Ok(None);
                }
                odometer[pos] += 1;
                if odometer[pos] < m.order() {
                    break;
                }
                odometer[pos] = 0;
                pos += 1;
            }
        }
    }
    // linear-system route for a cyclic module of order mo
    let mo = m.order();
    if m == &FiniteGroup::cyclic(mo) {
        let slots: Vec<usize> = g.elements().filter(|&s| s != g.identity()).collect();
        let col_of: Vec<Option<usize>> = g
            .elements()
            .map(|s| slots.iter().position(|&x| x == s))
            .collect();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut rhs: Vec<i64> = Vec::new();
        for s in g.elements() {
            for t in g.elements() {
                // s·w(t) − w(st) + w(s) = diff(s, t); the action on Z_mo is
                // multiplication by act(s, 1)
                let mut row = vec![0i64; free];
                let scale = md.act(s, 1) as i64;
                if let Some(c) = col_of[t] {
                    row[c] += scale;
                }
                if let Some(c) = col_of[g.mul(s, t)] {
                    row[c] -= 1;
                }
                if let Some(c) = col_of[s] {
                    row[c] += 1;
                }
                rows.push(row);
                rhs.push(diff[s * n + t] as i64);
            }
        }
        let sol = solve_mod(rows, rhs, mo as i64);
        return Ok(sol.map(|y| {
            let mut w = vec![0usize; n];
            for (slot, val) in slots.iter().zip(y) {
                w[*slot] = val.rem_euclid(mo as i64) as usize;
            }
            w
        }));
    }
    Err(CohomologyError::SearchSpaceTooLarge { size })
}

/// Solves A y ≡ b (mod m) over the integers by diagonalizing A with
/// unimodular row and column operations.
fn solve_mod(mut a: Vec<Vec<i64>>, mut b: Vec<i64>, m: i64) -> Option<Vec<i64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    // v accumulates the column operations so the final answer can be mapped
    // back to the original variables
    let mut v: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut t = 0;
    while t < rows.min(cols) {
        // find the nonzero entry of least magnitude in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        b.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        v.swap(t, pj);
        let mut clean = true;
        for i in 0..rows {
            if i != t && a[i][t] != 0 {
                let k = a[i][t].div_euclid(a[t][t]);
                if k != 0 {
                    for j in 0..cols {
                        a[i][j] -= k * a[t][j];
                    }
                    b[i] -= k * b[t];
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
        }
        for j in 0..cols {
            if j != t && a[t][j] != 0 {
                let k = a[t][j].div_euclid(a[t][t]);
                if k != 0 {
                    for row in a.iter_mut() {
                        row[j] -= k * row[t];
                    }
                    for vr in v.iter_mut() {
                        let delta = k * vr[t];
                        vr[j] -= delta;
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
        }
        if clean {
            t += 1;
        }
    }
    // a is now diagonal in its top-left t×t block and zero elsewhere
    let mut y = vec![0i64; cols];
    for i in 0..rows {
        let d = if i < cols { a[i][i].rem_euclid(m) } else { 0 };
        let c = b[i].rem_euclid(m);
        if d == 0 {
            if c != 0 {
                return None;
            }
            continue;
        }
        let g = num_integer::gcd(d, m);
        if c % g != 0 {
            return None;
        }
        let md_ = m / g;
        let inv = mod_inverse(d / g, md_)?;
        y[i] = ((c / g) * inv).rem_euclid(md_);
    }
    // map back through the accumulated column operations
    let mut out = vec![0i64; cols];
    for (i, row) in v.iter().enumerate() {
        let mut acc = 0i64;
        for (j, &vij) in row.iter().enumerate() {
            acc += vij * y[j];
        }
        out[i] = acc.rem_euclid(m);
    }
    Some(out)
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m))
}

/// Cup product of ring-valued 1-cochains under the trivial action:
/// (f ∪ g)(s, t) = f(s)·g(t).
pub fn cup_product(group: &FiniteGroup, ring: &FiniteRing, f: &[usize], g: &[usize]) -> Vec<usize> {
    let n = group.order();
    let mut out = vec![ring.zero(); n * n];
    for s in 0..n {
        for t in 0..n {
            out[s * n + t] = ring.mul(f[s], g[t]);
        }
    }
    out
}

/// The carry cocycle on Z_p with values in Z_m scaled by n:
/// q(i, j) = n·⌊(i + j) / p⌋ mod m.
pub fn carry_cocycle(p: usize, m: usize, n: usize) -> Vec<usize> {
    let mut q = vec![0usize; p * p];
    for i in 0..p {
        for j in 0..p {
            let carry = (i + j) / p;
            q[i * p + j] = (n * carry) % m;
        }
    }
    q
}

/// One normalized representative per class of 2-cocycles on Z_p with values
/// in Z_m (trivial action): the scaled carry cocycles for
/// n = 0, …, gcd(p, m) − 1.
pub fn h2_representatives(p: usize, m: usize) -> Vec<Vec<usize>> {
    let classes = num_integer::gcd(p, m);
    (0..classes).map(|n| carry_cocycle(p, m, n)).collect()
}

/// The two distinguished cocycles on Z_2 with values in Z_4: the carry
/// cocycle and its triple. They are cohomologous but not coboundaries, and
/// they generate the two constructions that differ by the sign of i.
pub fn qplus() -> Vec<usize> {
    carry_cocycle(2, 4, 1)
}

pub fn qminus() -> Vec<usize> {
    carry_cocycle(2, 4, 3)
}

/// Σ_i q(i, 1) mod m for a 2-cochain on the cyclic group Z_p with values
/// in Z_m. On cocycles this is constant on cohomology classes: the
/// coboundary of w contributes a telescoping sum p·w(1) ≡ 0 when m | p·w(1)
/// for all w, which holds in the main case m = p.
pub fn class_sum(p: usize, m: usize, q: &[usize]) -> usize {
    (0..p).fold(0, |acc, i| (acc + q[i * p + 1]) % m)
}

/// The extension of the module by the group along a normalized 2-cocycle:
/// pairs (x, s) with product (x, s)(y, t) = (x + s·y + q(s, t), st) and
/// index x·|G| + s. Associativity of the result re-proves the cocycle
/// identity through table validation.
pub fn extension_group(md: &GModule, q: &[usize]) -> Result<FiniteGroup, CohomologyError> {
    validate_cocycle2(md, q)?;
    let g = md.group();
    let m = md.module();
    let gn = g.order();
    let mn = m.order();
    let order = gn * mn;
    let idx = |x: usize, s: usize| x * gn + s;
    let mut table = vec![vec![0usize; order]; order];
    for x in m.elements() {
        for s in g.elements() {
            for y in m.elements() {
                for t in g.elements() {
                    let val = m.mul(m.mul(x, md.act(s, y)), q[s * gn + t]);
                    table[idx(x, s)][idx(y, t)] = idx(val, g.mul(s, t));
                }
            }
        }
    }
    Ok(FiniteGroup::from_table(table)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp_module(p: usize) -> GModule {
        GModule::trivial(FiniteGroup::cyclic(p), FiniteGroup::cyclic(p))
    }

    #[test]
    fn carry_cocycles_validate() {
        for p in [3usize, 5, 7] {
            let md = zp_module(p);
            for n in 0..p {
                validate_cocycle2(&md, &carry_cocycle(p, p, n)).unwrap();
            }
        }
        let md24 = GModule::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
        validate_cocycle2(&md24, &qplus()).unwrap();
        validate_cocycle2(&md24, &qminus()).unwrap();
        assert_eq!(qplus()[3], 1);
        assert_eq!(qminus()[3], 3);
    }

    #[test]
    fn class_sum_reads_off_the_carry_multiplier() {
        for p in [3usize, 5] {
            for n in 0..p {
                assert_eq!(class_sum(p, p, &carry_cocycle(p, p, n)), n);
            }
        }
    }

    #[test]
    fn distinct_carry_classes_are_not_cohomologous() {
        let md = zp_module(3);
        let q0 = carry_cocycle(3, 3, 0);
        let q1 = carry_cocycle(3, 3, 1);
        let q2 = carry_cocycle(3, 3, 2);
        assert!(cohomologous2(&md, &q1, &q2).unwrap().is_none());
        assert!(cohomologous2(&md, &q0, &q1).unwrap().is_none());
        let w = cohomologous2(&md, &q1, &q1).unwrap().unwrap();
        assert_eq!(coboundary2(&md, &w), vec![0; 9]);
    }

    #[test]
    fn sign_cocycles_cohomologous_but_not_trivial() {
        let md = GModule::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
        let w = cohomologous2(&md, &qplus(), &qminus()).unwrap().unwrap();
        let mut shifted = qplus();
        let m = md.module().clone();
        let d = coboundary2(&md, &w);
        for (entry, delta) in shifted.iter_mut().zip(d) {
            *entry = m.mul(*entry, delta);
        }
        assert_eq!(shifted, qminus());
        let zero = vec![0usize; 4];
        assert!(cohomologous2(&md, &zero, &qplus()).unwrap().is_none());
        assert!(cohomologous2(&md, &zero, &qminus()).unwrap().is_none());
    }

    #[test]
    fn coboundaries_are_recovered_by_the_linear_system() {
        // module big enough to force the linear route: 1011^2 > 10^6, and
        // 3 | 1011 so the carry cocycle class is nontrivial
        let p = 3;
        let m = 1011;
        let md = GModule::trivial(FiniteGroup::cyclic(p), FiniteGroup::cyclic(m));
        let w = vec![0usize, 700, 123];
        let q = coboundary2(&md, &w);
        validate_cocycle2(&md, &q).unwrap();
        let zero = vec![0usize; p * p];
        let found = cohomologous2(&md, &zero, &q).unwrap().expect("coboundary");
        assert_eq!(coboundary2(&md, &found), q);
        // and a non-coboundary is rejected
        let q1 = carry_cocycle(p, m, 1);
        assert!(cohomologous2(&md, &zero, &q1).unwrap().is_none());
    }

    #[test]
    fn extension_by_carry_cocycle_is_cyclic() {
        let md = zp_module(3);
        let e1 = extension_group(&md, &carry_cocycle(3, 3, 1)).unwrap();
        assert_eq!(e1.order(), 9);
        assert_eq!(e1.exponent(), 9);
        let e0 = extension_group(&md, &carry_cocycle(3, 3, 0)).unwrap();
        assert_eq!(e0.exponent(), 3);
    }

    #[test]
    fn extension_inverse_matches_closed_form() {
        let md = zp_module(5);
        let q = carry_cocycle(5, 5, 2);
        let ext = extension_group(&md, &q).unwrap();
        let g = FiniteGroup::cyclic(5);
        let m = g.clone();
        for x in 0..5usize {
            for i in 0..5usize {
                // (x, i)^-1 = (−x − q(i, −i), −i)
                let xi = m.inv(x);
                let ni = g.inv(i);
                let expected = (m.mul(xi, m.inv(q[i * 5 + ni]))) * 5 + ni;
                assert_eq!(ext.inv(x * 5 + i), expected);
            }
        }
    }

    #[test]
    fn cocycle1_symmetry_identities() {
        // alpha(s) = −nu(s)·alpha(s⁻¹) follows from the cocycle identity
        let g = FiniteGroup::cyclic(2);
        let r = FiniteRing::zn(5);
        let nu = vec![1usize, 4];
        let md = GModule::by_unit(&g, &r, &nu).unwrap();
        let alpha = vec![0usize, 2];
        validate_cocycle1(&md, &alpha).unwrap();
        for s in g.elements() {
            let lhs = alpha[s];
            let rhs = r.neg(r.mul(nu[s], alpha[g.inv(s)]));
            assert_eq!(lhs, rhs);
        }
        // normalized 2-cocycles over a trivial module: q(s⁻¹, s) = q(s, s⁻¹)
        let q = carry_cocycle(3, 3, 2);
        for s in 0..3usize {
            let si = (3 - s) % 3;
            assert_eq!(q[si * 3 + s], q[s * 3 + si]);
        }
    }

    #[test]
    fn cup_product_of_identity_cochains() {
        let g = FiniteGroup::cyclic(2);
        let r = FiniteRing::zn(2);
        let id = vec![0usize, 1];
        let cup = cup_product(&g, &r, &id, &id);
        assert_eq!(cup, vec![0, 0, 0, 1]);
        // the sign cocycles reduce mod 2 to this cup product
        let reduce = |q: Vec<usize>| q.into_iter().map(|x| x % 2).collect::<Vec<_>>();
        assert_eq!(reduce(qplus()), cup);
        assert_eq!(reduce(qminus()), cup);
    }
}
