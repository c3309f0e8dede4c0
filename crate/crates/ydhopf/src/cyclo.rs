//! Exact arithmetic in cyclotomic number fields Q(ζ_N).
//!
//! Elements are represented in the power basis 1, ζ, …, ζ^(φ(N)−1) with
//! coefficients in Q, reduced modulo the N-th cyclotomic polynomial Φ_N.
//! All values are immutable; every operation returns a fresh element.
//!
//! The field itself is a shared handle ([`CycField`], always used through
//! an [`Arc`]), so elements are cheap to clone and safe to move across
//! threads. Mixing elements of different conductors is a programming error
//! for the operator forms (`+`, `*`, …) and a reported [`CycError`] for the
//! checked forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Errors from cyclotomic field arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    /// Division by the zero element.
    #[error("division by zero in Q(zeta_{conductor})")]
    DivisionByZero { conductor: u64 },
    /// Two operands live in fields of different conductors.
    #[error("field mismatch: Q(zeta_{left}) vs Q(zeta_{right})")]
    FieldMismatch { left: u64, right: u64 },
    /// An embedding Q(ζ_sub) → Q(ζ_sup) needs sub | sup.
    #[error("conductor {sub} does not divide conductor {sup}")]
    NotDivisible { sub: u64, sup: u64 },
    /// The field contains no root of unity of the requested order.
    #[error("Q(zeta_{conductor}) has no root of unity of order {order}")]
    MissingRoot { conductor: u64, order: u64 },
}

fn rat_i64(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Euler's totient of `n`.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

// ---------------------------------------------------------------------------
// dense polynomial helpers over Q (little-endian coefficient vectors)
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    out
}

/// Long division: returns (quotient, remainder) with deg(rem) < deg(divisor).
fn poly_divmod(dividend: &[BigRational], divisor: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem: Vec<BigRational> = dividend.to_vec();
    poly_trim(&mut rem);
    let mut div = divisor.to_vec();
    poly_trim(&mut div);
    let dd = div.len() - 1;
    let lead = div[dd].clone();
    if rem.len() - 1 < dd || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    while rem.len() > 1 || !rem[0].is_zero() {
        let dr = rem.len() - 1;
        if dr < dd {
            break;
        }
        let factor = &rem[dr] / &lead;
        quot[dr - dd] = factor.clone();
        for k in 0..=dd {
            let delta = &factor * &div[k];
            rem[dr - dd + k] -= delta;
        }
        poly_trim(&mut rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// The N-th cyclotomic polynomial, computed by exact division of x^N − 1 by
/// the product of Φ_d over the proper divisors d of N.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigRational> {
    assert!(n >= 1, "conductor must be positive");
    if n == 1 {
        return vec![rat_i64(-1), rat_i64(1)];
    }
    let mut xn_minus_1 = vec![BigRational::zero(); n as usize + 1];
    xn_minus_1[0] = rat_i64(-1);
    xn_minus_1[n as usize] = rat_i64(1);
    let mut denom = vec![rat_i64(1)];
    for d in divisors(n) {
        if d < n {
            denom = poly_mul(&denom, &cyclotomic_polynomial(d));
        }
    }
    let (quot, rem) = poly_divmod(&xn_minus_1, &denom);
    assert!(
        rem.iter().all(|c| c.is_zero()),
        "cyclotomic division left a remainder for n = {n}"
    );
    quot
}

// ---------------------------------------------------------------------------
// the field handle
// ---------------------------------------------------------------------------

/// The cyclotomic field Q(ζ_N), shared by all its elements.
#[derive(Debug)]
pub struct CycField {
    conductor: u64,
    degree: usize,
    /// Monic Φ_N, little-endian, length `degree + 1`.
    minimal_polynomial: Vec<BigRational>,
    /// ζ^k mod Φ_N for k in degree..=2·degree−2, each reduced to length `degree`.
    reduction_rows: Vec<Vec<BigRational>>,
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}
impl Eq for CycField {}

impl CycField {
    /// Builds Q(ζ_N) and precomputes the reduction table for products.
    pub fn new(conductor: u64) -> Arc<CycField> {
        let minimal_polynomial = cyclotomic_polynomial(conductor);
        let degree = minimal_polynomial.len() - 1;
        // zeta^degree = -(phi - x^degree), then shift-and-reduce upward.
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        if degree >= 1 {
            let first: Vec<BigRational> = minimal_polynomial[..degree].iter().map(|c| -c).collect();
            rows.push(first);
            for _ in 1..degree.saturating_sub(1) {
                let prev = rows.last().expect("previous row exists");
                let mut next = vec![BigRational::zero(); degree];
                let top = prev[degree - 1].clone();
                for i in (1..degree).rev() {
                    next[i] = prev[i - 1].clone();
                }
                if !top.is_zero() {
                    for (i, c) in rows[0].iter().enumerate() {
                        next[i] += &top * c;
                    }
                }
                rows.push(next);
            }
        }
        Arc::new(CycField {
            conductor,
            degree,
            minimal_polynomial,
            reduction_rows: rows,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Degree of the field over Q, i.e. φ(N).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monic Φ_N as little-endian rational coefficients.
    pub fn minimal_polynomial(&self) -> &[BigRational] {
        &self.minimal_polynomial
    }

    pub fn zero(self: &Arc<Self>) -> Cyc {
        Cyc {
            field: Arc::clone(self),
            coeffs: vec![BigRational::zero(); self.degree],
        }
    }

    pub fn one(self: &Arc<Self>) -> Cyc {
        self.from_i64(1)
    }

    pub fn from_i64(self: &Arc<Self>, n: i64) -> Cyc {
        self.from_rational(rat_i64(n))
    }

    pub fn from_rational(self: &Arc<Self>, r: BigRational) -> Cyc {
        let mut coeffs = vec![BigRational::zero(); self.degree];
        if self.conductor == 1 {
            // Phi_1 = x - 1, so the basis "power of zeta" is the constant 1.
            coeffs[0] = r;
        } else {
            coeffs[0] = r;
        }
        Cyc {
            field: Arc::clone(self),
            coeffs,
        }
    }

    /// The canonical generator ζ_N (reduced into the power basis).
    pub fn zeta(self: &Arc<Self>) -> Cyc {
        if self.degree == 1 {
            // N = 1: zeta = 1.  N = 2: Phi = x + 1, so zeta = -1.
            return self.from_i64(if self.conductor == 1 { 1 } else { -1 });
        }
        let mut coeffs = vec![BigRational::zero(); self.degree];
        coeffs[1] = rat_i64(1);
        Cyc {
            field: Arc::clone(self),
            coeffs,
        }
    }

    /// ζ_N^k for any integer k (negative exponents allowed).
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> Cyc {
        let n = self.conductor as i64;
        let k = k.rem_euclid(n) as u64;
        self.zeta().pow(k)
    }

    /// A root of unity of exact order `order`, namely ζ_N^(N/order).
    ///
    /// Fails with [`CycError::MissingRoot`] when `order` does not divide the
    /// conductor (for even-adjusted purposes the caller should pick the
    /// conductor first; no silent field extension happens here).
    pub fn root_of_unity(self: &Arc<Self>, order: u64) -> Result<Cyc, CycError> {
        if order == 0 || self.conductor % order != 0 {
            // Q(zeta_N) with N odd also contains -1 of order 2; expose that case.
            if order == 2 && self.conductor % 2 == 1 {
                return Ok(self.from_i64(-1));
            }
            return Err(CycError::MissingRoot {
                conductor: self.conductor,
                order,
            });
        }
        Ok(self.zeta_pow((self.conductor / order) as i64))
    }
}

/// Multiplicative order of ζ_N^k, i.e. N / gcd(N, k).
pub fn zeta_power_order(conductor: u64, k: i64) -> u64 {
    let k = k.rem_euclid(conductor as i64) as u64;
    if k == 0 {
        return 1;
    }
    conductor / num_integer::gcd(conductor, k)
}

// ---------------------------------------------------------------------------
// elements
// ---------------------------------------------------------------------------

/// An element of Q(ζ_N) in the power basis.
#[derive(Debug, Clone)]
pub struct Cyc {
    field: Arc<CycField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}
impl Eq for Cyc {}

impl std::hash::Hash for Cyc {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl Cyc {
    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the element is in Q, else `None`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &Cyc) -> Result<(), CycError> {
        if self.field.conductor != other.field.conductor {
            Err(CycError::FieldMismatch {
                left: self.field.conductor,
                right: other.field.conductor,
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Cyc) -> Result<Cyc, CycError> {
        self.check_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyc {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Cyc) -> Result<Cyc, CycError> {
        self.check_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyc {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Cyc) -> Result<Cyc, CycError> {
        self.check_same_field(other)?;
        let d = self.field.degree;
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<BigRational> = prod[..d].to_vec();
        for k in d..2 * d - 1 {
            if prod[k].is_zero() {
                continue;
            }
            for (i, c) in self.field.reduction_rows[k - d].iter().enumerate() {
                if !c.is_zero() {
                    coeffs[i] += &prod[k] * c;
                }
            }
        }
        Ok(Cyc {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm for the
    /// coefficient polynomial against Φ_N.
    pub fn inv(&self) -> Result<Cyc, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero {
                conductor: self.field.conductor,
            });
        }
        // xgcd(a, phi) = (g, u, v) with u*a + v*phi = g; g constant since phi
        // is irreducible and a nonzero of smaller degree.
        let mut a: Vec<BigRational> = self.coeffs.clone();
        poly_trim(&mut a);
        let phi = self.field.minimal_polynomial.clone();
        let (mut r0, mut r1) = (phi, a);
        let (mut u0, mut u1) = (vec![BigRational::zero()], vec![BigRational::one()]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divmod(&r0, &r1);
            let qu1 = poly_mul(&q, &u1);
            let mut unew = u0.clone();
            unew.resize(unew.len().max(qu1.len()), BigRational::zero());
            for (i, c) in qu1.iter().enumerate() {
                unew[i] -= c;
            }
            poly_trim(&mut unew);
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = unew;
        }
        // r0 = gcd (a nonzero constant), u0 the cofactor of `a`.
        debug_assert_eq!(r0.len(), 1, "gcd with an irreducible polynomial is constant");
        let g = r0[0].clone();
        let mut coeffs = vec![BigRational::zero(); self.field.degree];
        for (i, c) in u0.iter().enumerate() {
            coeffs[i] = c / &g;
        }
        Ok(Cyc {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn checked_div(&self, other: &Cyc) -> Result<Cyc, CycError> {
        self.check_same_field(other)?;
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    /// Nonnegative integer power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Cyc {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same field");
            }
            base = base.checked_mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<Cyc, CycError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow((-e) as u64))
        }
    }

    /// Embeds this element into Q(ζ_M) via ζ_N ↦ ζ_M^(M/N).
    pub fn embed(&self, target: &Arc<CycField>) -> Result<Cyc, CycError> {
        let n = self.field.conductor;
        let m = target.conductor();
        if m % n != 0 {
            return Err(CycError::NotDivisible { sub: n, sup: m });
        }
        if m == n {
            return Ok(Cyc {
                field: Arc::clone(target),
                coeffs: self.coeffs.clone(),
            });
        }
        let step = (m / n) as i64;
        let mut acc = target.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = target
                .zeta_pow(step * i as i64)
                .scale(c);
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &BigRational) -> Cyc {
        Cyc {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// If this element is ζ_N^k for some k, returns k (the discrete log in
    /// the cyclic group generated by ζ_N); `None` when it is not a power.
    pub fn zeta_log(&self) -> Option<u64> {
        let mut probe = self.field.one();
        for k in 0..self.field.conductor {
            if *self == probe {
                return Some(k);
            }
            probe = probe.checked_mul(&self.field.zeta()).expect("same field");
        }
        None
    }
}

impl std::ops::Add for &Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        self.checked_add(rhs).expect("cyclotomic field mismatch in +")
    }
}
impl std::ops::Sub for &Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        self.checked_sub(rhs).expect("cyclotomic field mismatch in -")
    }
}
impl std::ops::Mul for &Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        self.checked_mul(rhs).expect("cyclotomic field mismatch in *")
    }
}
impl std::ops::Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.field.conductor;
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "z{n}")?;
                    } else {
                        write!(f, "z{n}^{i}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Renders a rational as `num/den` (or just `num` for integers).
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `num` or `num/den` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_i64(cs: &[i64]) -> Vec<BigRational> {
        cs.iter().map(|&c| rat_i64(c)).collect()
    }

    #[test]
    fn cyclotomic_polynomials_match_reference_table() {
        let table: &[(u64, &[i64])] = &[
            (2, &[1, 1]),
            (3, &[1, 1, 1]),
            (4, &[1, 0, 1]),
            (5, &[1, 1, 1, 1, 1]),
            (7, &[1, 1, 1, 1, 1, 1, 1]),
            (9, &[1, 0, 0, 1, 0, 0, 1]),
            (25, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
        ];
        for (n, coeffs) in table {
            assert_eq!(
                cyclotomic_polynomial(*n),
                poly_i64(coeffs),
                "phi_{n} mismatch"
            );
        }
    }

    #[test]
    fn degrees_match_euler_phi() {
        for n in 1..40 {
            let f = CycField::new(n);
            assert_eq!(f.degree() as u64, euler_phi(n), "degree of Q(zeta_{n})");
        }
    }

    #[test]
    fn zeta_has_exact_order() {
        for n in [2u64, 3, 4, 5, 7, 9, 12, 25] {
            let f = CycField::new(n);
            let z = f.zeta();
            let mut acc = f.one();
            for k in 1..=n {
                acc = acc.checked_mul(&z).unwrap();
                if k < n {
                    assert!(!acc.is_one(), "zeta_{n}^{k} must not be 1");
                }
            }
            assert!(acc.is_one(), "zeta_{n}^{n} must be 1");
        }
    }

    #[test]
    fn power_order_formula() {
        assert_eq!(zeta_power_order(12, 0), 1);
        assert_eq!(zeta_power_order(12, 1), 12);
        assert_eq!(zeta_power_order(12, 2), 6);
        assert_eq!(zeta_power_order(12, 8), 3);
        assert_eq!(zeta_power_order(9, 3), 3);
    }

    #[test]
    fn embedding_of_quadratic_sum_is_minus_one() {
        let f3 = CycField::new(3);
        let f9 = CycField::new(9);
        let z = f3.zeta();
        let s = z.checked_add(&z.pow(2)).unwrap();
        let embedded = s.embed(&f9).unwrap();
        assert_eq!(embedded, f9.from_i64(-1));
    }

    #[test]
    fn embedding_respects_multiplication() {
        let f5 = CycField::new(5);
        let f25 = CycField::new(25);
        let a = f5.zeta().checked_add(&f5.from_i64(2)).unwrap();
        let b = f5.zeta_pow(3).checked_sub(&f5.one()).unwrap();
        let lhs = a.checked_mul(&b).unwrap().embed(&f25).unwrap();
        let rhs = a.embed(&f25).unwrap().checked_mul(&b.embed(&f25).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_round_trips() {
        let f = CycField::new(9);
        let a = f.zeta_pow(4).checked_add(&f.from_i64(3)).unwrap();
        let b = f.zeta_pow(2).checked_sub(&f.from_i64(5)).unwrap();
        let q = a.checked_div(&b).unwrap();
        assert_eq!(q.checked_mul(&b).unwrap(), a);
    }

    #[test]
    fn division_by_zero_is_reported() {
        let f = CycField::new(5);
        let err = f.one().checked_div(&f.zero()).unwrap_err();
        assert_eq!(err, CycError::DivisionByZero { conductor: 5 });
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = CycField::new(3).one();
        let b = CycField::new(5).one();
        let err = a.checked_add(&b).unwrap_err();
        assert_eq!(err, CycError::FieldMismatch { left: 3, right: 5 });
    }

    #[test]
    fn embedding_needs_divisibility() {
        let f9 = CycField::new(9);
        let f6 = CycField::new(6);
        let err = f9.zeta().embed(&f6).unwrap_err();
        assert_eq!(err, CycError::NotDivisible { sub: 9, sup: 6 });
    }

    #[test]
    fn roots_of_unity_in_odd_conductor() {
        let f9 = CycField::new(9);
        let r3 = f9.root_of_unity(3).unwrap();
        assert_eq!(r3, f9.zeta_pow(3));
        assert!(f9.root_of_unity(2).is_ok(), "minus one is always available");
        assert_eq!(
            f9.root_of_unity(4).unwrap_err(),
            CycError::MissingRoot { conductor: 9, order: 4 }
        );
    }

    #[test]
    fn zeta_log_finds_powers() {
        let f = CycField::new(7);
        for k in 0..7 {
            assert_eq!(f.zeta_pow(k as i64).zeta_log(), Some(k));
        }
        assert_eq!(f.from_i64(2).zeta_log(), None);
    }

    #[test]
    fn rational_strings_round_trip() {
        for s in ["3", "-4", "7/2", "-9/13"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(rational_string(&r), s);
        }
        assert!(parse_rational("1/0").is_none());
    }
}
