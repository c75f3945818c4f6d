//! Exact arithmetic in the cyclotomic field Q(zeta_m).
//!
//! Elements are rational coordinate vectors in the power basis
//! 1, zeta, ..., zeta^(phi(m)-1) modulo the m-th cyclotomic polynomial.
//! Since the ring of integers of Q(zeta_m) is Z\[zeta_m\], integrality and
//! denominator queries reduce to coordinatewise checks, which is exactly
//! what conductor computations need.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Shorthand for an exact rational p/q.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Product of the distinct primes dividing n (the square-free part n_0).
pub fn squarefree_part(n: u64) -> u64 {
    assert!(n >= 1, "squarefree_part requires n >= 1");
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            result *= p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    result * if n > 1 { n } else { 1 }
}

/// Positive divisors of n in ascending order.
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

// Dense integer polynomials, lowest degree first, used only to build Phi_m.

fn poly_mul(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact division by a monic divisor; panics on a nonzero remainder.
fn poly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<Int> = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![Int::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Int::is_zero), "non-exact polynomial division");
    quot
}

fn cyclotomic_rec(m: u64, cache: &mut HashMap<u64, Vec<Int>>) -> Vec<Int> {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    let mut num = vec![Int::zero(); m as usize + 1];
    num[0] = -Int::one();
    num[m as usize] = Int::one();
    let mut den = vec![Int::one()];
    for d in divisors(m) {
        if d < m {
            den = poly_mul(&den, &cyclotomic_rec(d, cache));
        }
    }
    let p = poly_div_exact(&num, &den);
    cache.insert(m, p.clone());
    p
}

/// The m-th cyclotomic polynomial, monic, integer coefficients, lowest
/// degree first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<Int> {
    cyclotomic_rec(m, &mut HashMap::new())
}

/// Precomputed reduction data for Q(zeta_m).
pub struct CycField {
    m: u64,
    degree: usize,
    /// x^j mod Phi_m for 0 <= j <= max(m, 2*degree - 2).
    reduce: Vec<Vec<Int>>,
}

fn field_cache() -> &'static Mutex<HashMap<u64, Arc<CycField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CycField {
    /// Shared handle to the field Q(zeta_m); fields are cached per process.
    pub fn get(m: u64) -> Arc<CycField> {
        assert!(m >= 1, "field order must be positive");
        let mut cache = field_cache().lock().unwrap();
        if let Some(f) = cache.get(&m) {
            return Arc::clone(f);
        }
        let phi = cyclotomic_polynomial(m);
        let degree = phi.len() - 1;
        // x^degree mod Phi = -(lower coefficients), then shift repeatedly.
        let rows = (2 * degree).max(m as usize + 1);
        let mut reduce: Vec<Vec<Int>> = Vec::with_capacity(rows);
        for j in 0..rows {
            if j < degree {
                let mut row = vec![Int::zero(); degree.max(1)];
                row[j] = Int::one();
                reduce.push(row);
            } else {
                let prev = reduce[j - 1].clone();
                let mut row = vec![Int::zero(); degree.max(1)];
                // multiply by x: shift up, then fold the overflow coefficient
                let lead = prev[degree - 1].clone();
                for i in (1..degree).rev() {
                    row[i] = prev[i - 1].clone();
                }
                row[0] = Int::zero();
                if !lead.is_zero() {
                    for i in 0..degree {
                        row[i] -= &lead * &phi[i];
                    }
                }
                reduce.push(row);
            }
        }
        let f = Arc::new(CycField { m, degree, reduce });
        cache.insert(m, Arc::clone(&f));
        f
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Degree of the extension, i.e. phi(m).
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(self: &Arc<Self>) -> CycNum {
        CycNum {
            field: Arc::clone(self),
            coords: vec![Rat::zero(); self.degree],
        }
    }

    pub fn one(self: &Arc<Self>) -> CycNum {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(self: &Arc<Self>, r: Rat) -> CycNum {
        let mut c = self.zero();
        if self.degree > 0 {
            c.coords[0] = r;
        }
        c
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> CycNum {
        self.from_rat(Rat::from_integer(Int::from(v)))
    }

    /// Assembles an element from explicit power-basis coordinates.
    pub fn from_coords(self: &Arc<Self>, coords: Vec<Rat>) -> CycNum {
        assert_eq!(coords.len(), self.degree, "coordinate length must be phi(m)");
        CycNum { field: Arc::clone(self), coords }
    }

    /// zeta_m^k, reduced modulo Phi_m.
    pub fn root(self: &Arc<Self>, k: i64) -> CycNum {
        let e = k.rem_euclid(self.m as i64) as usize;
        let mut c = self.zero();
        for (i, v) in self.reduce[e].iter().enumerate() {
            c.coords[i] = Rat::from_integer(v.clone());
        }
        c
    }
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycField(m={}, degree={})", self.m, self.degree)
    }
}

/// An exact element of Q(zeta_m) in power-basis coordinates.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    coords: Vec<Rat>,
}

impl CycNum {
    pub fn m(&self) -> u64 {
        self.field.m
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Rat::is_zero)
    }

    /// Some(r) when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coords[1..].iter().all(Rat::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// True when every power-basis coordinate is an integer, i.e. the
    /// element lies in Z\[zeta_m\].
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Least t >= 1 with t * self integral.
    pub fn denominator(&self) -> Int {
        let mut l = Int::one();
        for c in &self.coords {
            l = l.lcm(c.denom());
        }
        l
    }

    /// True when the element lies in d * Z\[zeta_m\].
    pub fn divisible_by(&self, d: &Int) -> bool {
        if d.is_zero() {
            return self.is_zero();
        }
        self.coords
            .iter()
            .all(|c| c.is_integer() && c.numer().is_multiple_of(d))
    }

    fn assert_same(&self, other: &CycNum) {
        assert!(
            self.field.m == other.field.m,
            "mixed cyclotomic orders: {} vs {}",
            self.field.m,
            other.field.m
        );
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        self.assert_same(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        CycNum { field: Arc::clone(&self.field), coords }
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.assert_same(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        CycNum { field: Arc::clone(&self.field), coords }
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        self.assert_same(other);
        let d = self.field.degree;
        let mut conv = vec![Rat::zero(); if d == 0 { 1 } else { 2 * d - 1 }];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut out = self.field.zero();
        for (j, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < d {
                out.coords[j] += c;
            } else {
                for (i, r) in self.field.reduce[j].iter().enumerate() {
                    if !r.is_zero() {
                        out.coords[i] += &c * &Rat::from_integer(r.clone());
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> CycNum {
        CycNum {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|a| a * r).collect(),
        }
    }

    /// Complex conjugation, the automorphism zeta -> zeta^(-1).
    pub fn conj(&self) -> CycNum {
        let m = self.field.m as usize;
        let mut out = self.field.zero();
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = (m - i) % m;
            for (j, r) in self.field.reduce[e].iter().enumerate() {
                if !r.is_zero() {
                    out.coords[j] += a * &Rat::from_integer(r.clone());
                }
            }
        }
        out
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_m; None for zero.
    pub fn inv(&self) -> Option<CycNum> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(self.field.from_rat(Rat::one() / r));
        }
        let d = self.field.degree;
        let phi: Vec<Rat> = cyclotomic_polynomial(self.field.m)
            .into_iter()
            .map(Rat::from_integer)
            .collect();
        // ext-gcd over Q[x]: maintain r0 = s0*a mod Phi, r1 = s1*a mod Phi
        let mut r0 = phi;
        let mut r1: Vec<Rat> = self.coords.clone();
        trim(&mut r1);
        let mut s0: Vec<Rat> = vec![];
        let mut s1: Vec<Rat> = vec![Rat::one()];
        while !r1.is_empty() {
            let (q, r) = rat_poly_divrem(&r0, &r1);
            let s = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
            r0 = r1;
            s0 = s1;
            r1 = r;
            s1 = s;
        }
        // r0 is a nonzero constant gcd since Phi_m is irreducible
        assert!(r0.len() == 1, "cyclotomic polynomial not coprime to element");
        let g = r0[0].clone();
        let mut coords = vec![Rat::zero(); d];
        // s0 has degree < degree(Phi) by the ext-gcd invariants
        for (i, c) in s0.into_iter().enumerate() {
            coords[i] = c / &g;
        }
        Some(CycNum { field: Arc::clone(&self.field), coords })
    }

    pub fn pow(&self, e: i64) -> CycNum {
        if e < 0 {
            return self.inv().expect("zero has no negative power").pow(-e);
        }
        let mut result = self.field.one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Lifts both operands into Q(zeta_lcm(m1,m2)).
    pub fn lift_pair(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        if a.field.m == b.field.m {
            return (a.clone(), b.clone());
        }
        let target = CycField::get(a.field.m.lcm(&b.field.m));
        (a.lift_to(&target), b.lift_to(&target))
    }

    /// Equality as complex numbers, lifting into a common field first.
    pub fn equiv(&self, other: &CycNum) -> bool {
        let (a, b) = CycNum::lift_pair(self, other);
        a == b
    }

    /// Reinterpret in Q(zeta_M) via zeta_m = zeta_M^(M/m); requires m | M.
    pub fn lift_to(&self, target: &Arc<CycField>) -> CycNum {
        assert!(
            target.m % self.field.m == 0,
            "cannot lift from order {} to {}",
            self.field.m,
            target.m
        );
        if target.m == self.field.m {
            return self.clone();
        }
        let step = (target.m / self.field.m) as usize;
        let mut out = target.zero();
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, r) in target.reduce[i * step].iter().enumerate() {
                if !r.is_zero() {
                    out.coords[j] += a * &Rat::from_integer(r.clone());
                }
            }
        }
        out
    }
}

fn trim(p: &mut Vec<Rat>) {
    while p.last().map(Rat::is_zero).unwrap_or(false) {
        p.pop();
    }
}

fn rat_poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(&mut out);
    out
}

fn rat_poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim(&mut out);
    out
}

fn rat_poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    for k in (0..quot.len()).rev() {
        let c = &rem[k + b.len() - 1] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let sub = &c * bj;
                rem[k + j] -= sub;
            }
        }
        quot[k] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// Least t >= 1 with t*c integral for every c; None for an empty input.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a CycNum>>(cs: I) -> Option<Int> {
    let mut it = cs.into_iter().peekable();
    it.peek()?;
    let mut l = Int::one();
    for c in it {
        l = l.lcm(&c.denominator());
    }
    Some(l)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.coords == other.coords
    }
}

impl Eq for CycNum {}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign_neg = c.is_negative();
            let mag = c.abs();
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && i > 0;
            if !unit_coeff {
                write!(f, "{}", mag)?;
            }
            if i == 1 {
                write!(f, "{}z", if unit_coeff { "" } else { "*" })?;
            } else if i > 1 {
                write!(f, "{}z^{}", if unit_coeff { "" } else { "*" }, i)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[m={}]({})", self.field.m, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_polynomials() {
        let to_i64 = |p: Vec<Int>| -> Vec<i64> {
            p.into_iter().map(|c| i64::try_from(&c).unwrap()).collect()
        };
        assert_eq!(to_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(1), 1);
        assert_eq!(squarefree_part(12), 6);
        assert_eq!(squarefree_part(8), 2);
        assert_eq!(squarefree_part(360), 30);
    }

    #[test]
    fn roots_of_unity() {
        let f4 = CycField::get(4);
        assert_eq!(f4.root(2), f4.from_int(-1));
        let f3 = CycField::get(3);
        assert_eq!(f3.root(0), f3.one());
        let f6 = CycField::get(6);
        // Phi_6 = x^2 - x + 1, so zeta_6 has coordinates (0, 1)
        assert_eq!(f6.root(1).coords(), &[rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn arithmetic_examples() {
        let f3 = CycField::get(3);
        assert_eq!(f3.root(1).conj(), f3.root(2));
        let f4 = CycField::get(4);
        let a = f4.one().add(&f4.root(1));
        let b = f4.one().sub(&f4.root(1));
        assert_eq!(a.mul(&b), f4.from_int(2));
        let f6 = CycField::get(6);
        let mut s = f6.zero();
        for k in 0..6 {
            s = s.add(&f6.root(k));
        }
        assert!(s.is_zero());
    }

    #[test]
    fn integrality() {
        let f5 = CycField::get(5);
        assert!(!f5.from_rat(rat(1, 2)).is_integral());
        assert!(f5.from_int(3).add(&f5.root(1)).is_integral());
        let f4 = CycField::get(4);
        let half_sum = f4.one().add(&f4.root(1)).scale(&rat(1, 2));
        assert!(!half_sum.is_integral());
        assert_eq!(half_sum.denominator(), Int::from(2));
    }

    #[test]
    fn denominator_lcm_examples() {
        let f4 = CycField::get(4);
        let one = f4.one();
        let z = f4.root(1);
        assert_eq!(denominator_lcm([&one, &z]), Some(Int::from(1)));
        let a = f4.from_rat(rat(1, 2));
        let b = f4.root(1).scale(&rat(1, 3));
        assert_eq!(denominator_lcm([&a, &b]), Some(Int::from(6)));
        assert_eq!(denominator_lcm([]), None);
    }

    #[test]
    fn inverse_and_pow() {
        let f12 = CycField::get(12);
        let x = f12.root(1).add(&f12.from_rat(rat(2, 3)));
        let inv = x.inv().unwrap();
        assert!(x.mul(&inv).is_one());
        assert_eq!(x.pow(0), f12.one());
        assert_eq!(x.pow(3), x.mul(&x).mul(&x));
        assert_eq!(x.pow(-2).mul(&x.pow(2)), f12.one());
    }

    #[test]
    fn lift_consistency() {
        let f3 = CycField::get(3);
        let f12 = CycField::get(12);
        let z3 = f3.root(1).lift_to(&f12);
        assert_eq!(z3, f12.root(4));
        let sum = f3.root(1).add(&f3.root(2));
        assert_eq!(sum.lift_to(&f12), f12.root(4).add(&f12.root(8)));
        assert_eq!(sum.lift_to(&f12).as_rational(), Some(rat(-1, 1)));
    }
}
