//! Finite groups, finite rings, abelian characters, and homomorphisms, all
//! given by explicit tables and validated exhaustively at construction time.
//!
//! Group and ring elements are `usize` indices into their tables. For the
//! cyclic constructions ([`FiniteGroup::cyclic`], [`FiniteRing::zn`]) the
//! index of a residue is the residue itself, so arithmetic on indices agrees
//! with arithmetic mod n.

use crate::cyclo::{Cyc, CycField};
use serde_json::Value;
use std::sync::Arc;
use thiserror::Error;

/// Errors from building or validating finite structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteError {
    #[error("multiplication table is not square or has out-of-range entries: {0}")]
    InvalidTable(String),
    #[error("associativity fails at ({i}, {j}, {k})")]
    AssociativityFailure { i: usize, j: usize, k: usize },
    #[error("no two-sided identity element")]
    MissingIdentity,
    #[error("element {0} has no inverse")]
    MissingInverse(usize),
    #[error("map is not a homomorphism: f({i}*{j}) != f({i})*f({j})")]
    NotAHomomorphism { i: usize, j: usize },
    #[error("values do not define a character: at ({i}, {j})")]
    NotACharacter { i: usize, j: usize },
    #[error("the canonical character pair needs an odd prime, got 2")]
    EvenPrime,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("value {0} is not a unit of the ring")]
    NotAUnit(usize),
    #[error("map is not a 1-cocycle: fails at ({s}, {t})")]
    NotACocycle { s: usize, t: usize },
    #[error("ring axiom violated: {0}")]
    InvalidRing(String),
    #[error("malformed structure description: {0}")]
    BadDescription(String),
}

// ---------------------------------------------------------------------------
// groups
// ---------------------------------------------------------------------------

/// A finite group as a validated multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    /// Row-major: `mult[i * order + j]` is the product of elements i and j.
    mult: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a multiplication table, checking closure, a
    /// two-sided identity, inverses, and associativity over all triples.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup, FiniteError> {
        let n = table.len();
        if n == 0 {
            return Err(FiniteError::InvalidTable("empty table".into()));
        }
        let mut mult = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(FiniteError::InvalidTable(format!(
                    "row length {} != order {}",
                    row.len(),
                    n
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(FiniteError::InvalidTable(format!("entry {v} out of range")));
                }
                mult.push(v);
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mult[e * n + x] == x && mult[x * n + e] == x))
            .ok_or(FiniteError::MissingIdentity)?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if mult[mult[i * n + j] * n + k] != mult[i * n + mult[j * n + k]] {
                        return Err(FiniteError::AssociativityFailure { i, j, k });
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            inverse[i] = (0..n)
                .find(|&j| mult[i * n + j] == identity && mult[j * n + i] == identity)
                .ok_or(FiniteError::MissingInverse(i))?;
        }
        Ok(FiniteGroup {
            order: n,
            mult,
            identity,
            inverse,
        })
    }

    /// The cyclic group Z_n with index = residue.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let mut mult = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                mult.push((i + j) % n);
            }
        }
        let inverse = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup {
            order: n,
            mult,
            identity: 0,
            inverse,
        }
    }

    /// Direct product; the pair (a, b) gets index `a * other.order + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let n = self.order * other.order;
        let mut mult = vec![0usize; n * n];
        for a1 in 0..self.order {
            for b1 in 0..other.order {
                for a2 in 0..self.order {
                    for b2 in 0..other.order {
                        let i = a1 * other.order + b1;
                        let j = a2 * other.order + b2;
                        mult[i * n + j] =
                            self.mul(a1, a2) * other.order + other.mul(b1, b2);
                    }
                }
            }
        }
        let identity = self.identity * other.order + other.identity;
        let inverse = (0..n)
            .map(|i| self.inv(i / other.order) * other.order + other.inv(i % other.order))
            .collect();
        FiniteGroup {
            order: n,
            mult,
            identity,
            inverse,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mult[i * self.order + j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (0..self.order).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Order of a single element.
    pub fn element_order(&self, i: usize) -> usize {
        let mut acc = i;
        let mut k = 1;
        while acc != self.identity {
            acc = self.mul(acc, i);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|i| self.element_order(i))
            .fold(1, num_integer::lcm)
    }

    /// i-th power of an element, with negative exponents through inverses.
    pub fn pow(&self, g: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(g) } else { g };
        let mut acc = self.identity;
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// Reads `{"cyclic": n}` or `{"table": [[..], ..]}`.
    pub fn from_json(v: &Value) -> Result<FiniteGroup, FiniteError> {
        let obj = v
            .as_object()
            .ok_or_else(|| FiniteError::BadDescription("group must be an object".into()))?;
        if let Some(n) = obj.get("cyclic") {
            let n = n
                .as_u64()
                .ok_or_else(|| FiniteError::BadDescription("cyclic order must be an integer".into()))?;
            if n == 0 {
                return Err(FiniteError::BadDescription("cyclic order must be positive".into()));
            }
            return Ok(FiniteGroup::cyclic(n as usize));
        }
        if let Some(t) = obj.get("table") {
            let rows = t
                .as_array()
                .ok_or_else(|| FiniteError::BadDescription("table must be an array".into()))?;
            let mut table = Vec::with_capacity(rows.len());
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| FiniteError::BadDescription("table rows must be arrays".into()))?;
                let mut out = Vec::with_capacity(row.len());
                for cell in row {
                    let c = cell
                        .as_u64()
                        .ok_or_else(|| FiniteError::BadDescription("table entries must be integers".into()))?;
                    out.push(c as usize);
                }
                table.push(out);
            }
            return FiniteGroup::from_table(table);
        }
        Err(FiniteError::BadDescription(
            "group needs a \"cyclic\" or \"table\" key".into(),
        ))
    }

    pub fn to_json(&self) -> Value {
        let n = self.order;
        // A cyclic table in canonical layout collapses to the short form.
        let cyclic = FiniteGroup::cyclic(n);
        if *self == cyclic {
            return serde_json::json!({ "cyclic": n });
        }
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| self.mul(i, j)).collect())
            .collect();
        serde_json::json!({ "table": table })
    }
}

/// A homomorphism between finite groups, given by its value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub table: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, table: Vec<usize>) -> Result<GroupHom, FiniteError> {
        if table.len() != source.order() {
            return Err(FiniteError::InvalidTable(format!(
                "homomorphism table has length {}, expected {}",
                table.len(),
                source.order()
            )));
        }
        for &v in &table {
            if v >= target.order() {
                return Err(FiniteError::InvalidTable(format!("image {v} out of range")));
            }
        }
        for i in source.elements() {
            for j in source.elements() {
                if table[source.mul(i, j)] != target.mul(table[i], table[j]) {
                    return Err(FiniteError::NotAHomomorphism { i, j });
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            table,
        })
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        for &v in &self.table {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }
}

// ---------------------------------------------------------------------------
// rings
// ---------------------------------------------------------------------------

/// A finite unital ring as validated addition and multiplication tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
    neg: Vec<usize>,
    units: Vec<usize>,
}

impl FiniteRing {
    pub fn from_tables(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Result<FiniteRing, FiniteError> {
        let additive = FiniteGroup::from_table(add)?;
        if !additive.is_abelian() {
            return Err(FiniteError::InvalidRing("addition is not commutative".into()));
        }
        let n = additive.order();
        if mul.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(FiniteError::InvalidRing("multiplication table has wrong shape".into()));
        }
        let mut mflat = Vec::with_capacity(n * n);
        for row in &mul {
            for &v in row {
                if v >= n {
                    return Err(FiniteError::InvalidRing(format!("entry {v} out of range")));
                }
                mflat.push(v);
            }
        }
        let m = |i: usize, j: usize| mflat[i * n + j];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if m(m(i, j), k) != m(i, m(j, k)) {
                        return Err(FiniteError::InvalidRing(format!(
                            "multiplication not associative at ({i},{j},{k})"
                        )));
                    }
                    if m(i, additive.mul(j, k)) != additive.mul(m(i, j), m(i, k))
                        || m(additive.mul(i, j), k) != additive.mul(m(i, k), m(j, k))
                    {
                        return Err(FiniteError::InvalidRing(format!(
                            "distributivity fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        let one = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or(FiniteError::InvalidRing("no multiplicative identity".into()))?;
        let zero = additive.identity();
        let units = (0..n)
            .filter(|&u| (0..n).any(|v| m(u, v) == one && m(v, u) == one))
            .collect();
        let neg = (0..n).map(|i| additive.inv(i)).collect();
        let mut add_flat = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                add_flat.push(additive.mul(i, j));
            }
        }
        Ok(FiniteRing {
            order: n,
            add: add_flat,
            mul: mflat,
            zero,
            one,
            neg,
            units,
        })
    }

    /// The ring Z_n with index = residue.
    pub fn zn(n: usize) -> FiniteRing {
        assert!(n >= 1);
        let add = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let mul = (0..n).map(|i| (0..n).map(|j| (i * j) % n).collect()).collect();
        FiniteRing::from_tables(add, mul).expect("Z_n is a ring")
    }

    pub fn order(&self) -> usize {
        self.order
    }
    pub fn zero(&self) -> usize {
        self.zero
    }
    pub fn one(&self) -> usize {
        self.one
    }
    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i * self.order + j]
    }
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.order + j]
    }
    pub fn neg(&self, i: usize) -> usize {
        self.neg[i]
    }
    pub fn sub(&self, i: usize, j: usize) -> usize {
        self.add(i, self.neg(j))
    }
    pub fn is_unit(&self, u: usize) -> bool {
        self.units.contains(&u)
    }
    /// The unit group as a sorted list of ring elements.
    pub fn unit_set(&self) -> &[usize] {
        &self.units
    }
    pub fn unit_inverse(&self, u: usize) -> Result<usize, FiniteError> {
        (0..self.order)
            .find(|&v| self.mul(u, v) == self.one && self.mul(v, u) == self.one)
            .ok_or(FiniteError::NotAUnit(u))
    }
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// The underlying additive group.
    pub fn additive_group(&self) -> FiniteGroup {
        let n = self.order;
        let table = (0..n)
            .map(|i| (0..n).map(|j| self.add(i, j)).collect())
            .collect();
        FiniteGroup::from_table(table).expect("additive group of a validated ring")
    }

    /// Reads `{"zn": n}`.
    pub fn from_json(v: &Value) -> Result<FiniteRing, FiniteError> {
        let obj = v
            .as_object()
            .ok_or_else(|| FiniteError::BadDescription("ring must be an object".into()))?;
        if let Some(n) = obj.get("zn") {
            let n = n
                .as_u64()
                .ok_or_else(|| FiniteError::BadDescription("zn order must be an integer".into()))?;
            if n == 0 {
                return Err(FiniteError::BadDescription("zn order must be positive".into()));
            }
            return Ok(FiniteRing::zn(n as usize));
        }
        Err(FiniteError::BadDescription("ring needs a \"zn\" key".into()))
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({ "zn": self.order })
    }
}

// ---------------------------------------------------------------------------
// characters
// ---------------------------------------------------------------------------

/// A character of a finite abelian group with values in a cyclotomic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianCharacter {
    pub domain: FiniteGroup,
    pub field: Arc<CycField>,
    pub values: Vec<Cyc>,
}

impl AbelianCharacter {
    pub fn new(domain: FiniteGroup, field: Arc<CycField>, values: Vec<Cyc>) -> Result<AbelianCharacter, FiniteError> {
        if values.len() != domain.order() {
            return Err(FiniteError::InvalidTable(format!(
                "character has {} values, expected {}",
                values.len(),
                domain.order()
            )));
        }
        for i in domain.elements() {
            for j in domain.elements() {
                let lhs = &values[domain.mul(i, j)];
                let rhs = values[i]
                    .checked_mul(&values[j])
                    .map_err(|_| FiniteError::NotACharacter { i, j })?;
                if *lhs != rhs {
                    return Err(FiniteError::NotACharacter { i, j });
                }
            }
        }
        Ok(AbelianCharacter {
            domain,
            field,
            values,
        })
    }

    pub fn apply(&self, i: usize) -> &Cyc {
        &self.values[i]
    }

    pub fn domain(&self) -> &FiniteGroup {
        &self.domain
    }

    /// The character i ↦ ζ_n^(c·i) on Z_n.
    pub fn of_zn(n: usize, c: i64, field: &Arc<CycField>) -> Result<AbelianCharacter, FiniteError> {
        let zeta = field
            .root_of_unity(n as u64)
            .map_err(|_| FiniteError::BadDescription(format!(
                "field of conductor {} lacks a root of order {}",
                field.conductor(),
                n
            )))?;
        let values = (0..n)
            .map(|i| zeta.pow((c.rem_euclid(n as i64) as u64) * i as u64))
            .collect();
        AbelianCharacter::new(FiniteGroup::cyclic(n), Arc::clone(field), values)
    }
}

fn is_prime(n: u64) -> bool {
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

/// The canonical character pair (χ, η) on Z_p for an odd prime p:
/// χ(i) = ζ^(i(p+1)/2) and η(i) = ζ^i, so χ(i)² = η(i) and χ interprets
/// "half-integer" exponents i/2 as multiplication by (p+1)/2 mod p.
pub fn canonical_characters(
    p: u64,
    field: &Arc<CycField>,
) -> Result<(AbelianCharacter, AbelianCharacter), FiniteError> {
    if p == 2 {
        return Err(FiniteError::EvenPrime);
    }
    if !is_prime(p) {
        return Err(FiniteError::NotPrime(p));
    }
    let half = ((p + 1) / 2) as i64;
    let chi = AbelianCharacter::of_zn(p as usize, half, field)?;
    let eta = AbelianCharacter::of_zn(p as usize, 1, field)?;
    Ok((chi, eta))
}

// ---------------------------------------------------------------------------
// structure data over (G, R): unit maps, cocycle-compatible validation
// ---------------------------------------------------------------------------

/// Checks that `nu: G → R^×` given by an element table is a homomorphism
/// into the unit group.
pub fn validate_unit_hom(group: &FiniteGroup, ring: &FiniteRing, nu: &[usize]) -> Result<(), FiniteError> {
    if nu.len() != group.order() {
        return Err(FiniteError::InvalidTable(format!(
            "nu has length {}, expected {}",
            nu.len(),
            group.order()
        )));
    }
    for &v in nu {
        if !ring.is_unit(v) {
            return Err(FiniteError::NotAUnit(v));
        }
    }
    if nu[group.identity()] != ring.one() {
        return Err(FiniteError::NotAHomomorphism {
            i: group.identity(),
            j: group.identity(),
        });
    }
    for i in group.elements() {
        for j in group.elements() {
            if nu[group.mul(i, j)] != ring.mul(nu[i], nu[j]) {
                return Err(FiniteError::NotAHomomorphism { i, j });
            }
        }
    }
    Ok(())
}

/// The semidirect product T = G ⋉ (R × R) for the right action
/// (v, w)·s = (v + 2wβ(s), wν(s)); elements are (s, v, w) with index
/// `s·|R|² + v·|R| + w` and product
/// (s,v,w)(s',v',w') = (ss', v + v' + 2wβ(s'), wν(s') + w').
pub fn twisted_semidirect(
    group: &FiniteGroup,
    ring: &FiniteRing,
    nu: &[usize],
    beta: &[usize],
) -> Result<FiniteGroup, FiniteError> {
    validate_unit_hom(group, ring, nu)?;
    // beta must be a 1-cocycle: beta(st) = beta(s) + nu(s) beta(t).
    if beta.len() != group.order() {
        return Err(FiniteError::InvalidTable(format!(
            "beta has length {}, expected {}",
            beta.len(),
            group.order()
        )));
    }
    for s in group.elements() {
        for t in group.elements() {
            let lhs = beta[group.mul(s, t)];
            let rhs = ring.add(beta[s], ring.mul(nu[s], beta[t]));
            if lhs != rhs {
                return Err(FiniteError::NotACocycle { s, t });
            }
        }
    }
    let rn = ring.order();
    let n = group.order() * rn * rn;
    let idx = |s: usize, v: usize, w: usize| s * rn * rn + v * rn + w;
    let two = ring.add(ring.one(), ring.one());
    let mut table = vec![vec![0usize; n]; n];
    for s in group.elements() {
        for v in ring.elements() {
            for w in ring.elements() {
                for s2 in group.elements() {
                    for v2 in ring.elements() {
                        for w2 in ring.elements() {
                            let vs = ring.add(ring.add(v, v2), ring.mul(two, ring.mul(w, beta[s2])));
                            let ws = ring.add(ring.mul(w, nu[s2]), w2);
                            table[idx(s, v, w)][idx(s2, v2, w2)] = idx(group.mul(s, s2), vs, ws);
                        }
                    }
                }
            }
        }
    }
    FiniteGroup::from_table(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_validate() {
        for n in 1..=12 {
            let g = FiniteGroup::cyclic(n);
            assert_eq!(g.order(), n);
            assert_eq!(g.identity(), 0);
            assert!(g.is_abelian());
            assert_eq!(g.exponent(), n);
        }
    }

    #[test]
    fn bad_tables_are_rejected() {
        // A Latin square that is not associative (order 5 loop).
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_table(table) {
            Err(FiniteError::AssociativityFailure { .. }) => {}
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn zn_ring_units() {
        let r = FiniteRing::zn(12);
        assert_eq!(r.unit_set(), &[1, 5, 7, 11]);
        assert_eq!(r.unit_inverse(5).unwrap(), 5);
        let r = FiniteRing::zn(7);
        assert_eq!(r.unit_set().len(), 6);
    }

    #[test]
    fn canonical_character_pair_squares() {
        for p in [3u64, 5, 7] {
            let field = CycField::new(p);
            let (chi, eta) = canonical_characters(p, &field).unwrap();
            for i in 0..p as usize {
                assert_eq!(
                    chi.apply(i).checked_mul(chi.apply(i)).unwrap(),
                    *eta.apply(i),
                    "chi(i)^2 = eta(i) at p={p}, i={i}"
                );
            }
            assert_eq!(*eta.apply(1), field.zeta());
        }
        let f = CycField::new(4);
        assert_eq!(canonical_characters(2, &f).unwrap_err(), FiniteError::EvenPrime);
    }

    #[test]
    fn twisted_semidirect_example_product() {
        let g = FiniteGroup::cyclic(3);
        let r = FiniteRing::zn(3);
        let nu = vec![1, 1, 1];
        let beta = vec![0, 1, 2]; // identity cocycle for trivial nu
        let t = twisted_semidirect(&g, &r, &nu, &beta).unwrap();
        assert_eq!(t.order(), 27);
        let idx = |s: usize, v: usize, w: usize| s * 9 + v * 3 + w;
        // (1,0,1)(1,0,0) = (2, 0+0+2*1*beta(1), 1*nu(1)+0) = (2,2,1)
        assert_eq!(t.mul(idx(1, 0, 1), idx(1, 0, 0)), idx(2, 2, 1));
    }

    #[test]
    fn twisted_semidirect_rejects_non_cocycle() {
        let g = FiniteGroup::cyclic(3);
        let r = FiniteRing::zn(3);
        let nu = vec![1, 1, 1];
        let beta = vec![0, 1, 1];
        match twisted_semidirect(&g, &r, &nu, &beta) {
            Err(FiniteError::NotACocycle { .. }) => {}
            other => panic!("expected cocycle failure, got {other:?}"),
        }
    }

    #[test]
    fn group_json_round_trip() {
        let g = FiniteGroup::from_json(&serde_json::json!({"cyclic": 6})).unwrap();
        assert_eq!(g, FiniteGroup::cyclic(6));
        assert_eq!(g.to_json(), serde_json::json!({"cyclic": 6}));

        let sym3 = serde_json::json!({"table": [
            [0,1,2,3,4,5],
            [1,0,5,4,3,2],
            [2,4,0,5,1,3],
            [3,5,4,0,2,1],
            [4,2,3,1,5,0],
            [5,3,1,2,0,4],
        ]});
        let g = FiniteGroup::from_json(&sym3).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let Value::Object(o) = g.to_json() else { panic!() };
        assert!(o.contains_key("table"));
    }

    #[test]
    fn ring_json_round_trip() {
        let r = FiniteRing::from_json(&serde_json::json!({"zn": 5})).unwrap();
        assert_eq!(r, FiniteRing::zn(5));
        assert_eq!(r.to_json(), serde_json::json!({"zn": 5}));
    }

    #[test]
    fn direct_product_shape() {
        let g = FiniteGroup::cyclic(3).direct_product(&FiniteGroup::cyclic(3));
        assert_eq!(g.order(), 9);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 3);
    }
}
