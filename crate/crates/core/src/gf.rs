//! Exact arithmetic in GF(p^m).
//!
//! An element is stored as a single integer code `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! of its coefficient vector in the polynomial basis `1, x, ..., x^{m-1}`.
//! The field is built from the smallest monic irreducible modulus (ordered by
//! the same integer packing of its low coefficients) and the smallest element
//! code that is primitive. Below the table threshold, products go through
//! log/antilog tables keyed by that primitive element.

use std::fmt;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};

/// One field element, encoded as an integer in `[0, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Felt(pub u32);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Fields larger than this fall back to polynomial multiplication.
pub const DEFAULT_TABLE_THRESHOLD: u64 = 1 << 16;

/// A concrete finite field GF(p^m). Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic, little-endian, length m + 1.
    modulus: Vec<u32>,
    gamma: Felt,
    /// p^i for i in 0..m.
    place: Vec<u32>,
    tables: Option<Tables>,
}

struct Tables {
    /// exp[i] = gamma^i for i in 0..2(q-1).
    exp: Vec<u32>,
    /// log[a] for a != 0; log[0] unused.
    log: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.0.p)
            .field("m", &self.0.m)
            .field("q", &self.0.q)
            .field("modulus", &self.0.modulus)
            .field("gamma", &self.0.gamma.0)
            .finish()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

impl FieldSpec {
    /// GF(p^m) under the process-wide field-order cap.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        Self::with_cap(p, m, Caps::global().field_order)
    }

    pub fn with_cap(p: u32, m: u32, cap: u64) -> Result<Self> {
        let q = checked_order(p, m, cap)?;
        let modulus = smallest_irreducible(p, m);
        Ok(Self::build(p, m, q, modulus, DEFAULT_TABLE_THRESHOLD))
    }

    /// GF(p^m) with an explicit modulus (little-endian, monic, length m + 1).
    pub fn with_modulus(p: u32, m: u32, modulus: &[u32]) -> Result<Self> {
        let q = checked_order(p, m, Caps::global().field_order)?;
        let ok = modulus.len() == m as usize + 1
            && modulus[m as usize] == 1
            && modulus.iter().all(|&c| c < p)
            && poly::is_irreducible(modulus, p);
        if !ok {
            return Err(Error::NotIrreducible(modulus.to_vec()));
        }
        Ok(Self::build(p, m, q, modulus.to_vec(), DEFAULT_TABLE_THRESHOLD))
    }

    /// Like [`FieldSpec::new`] but with log tables only for `q <= threshold`.
    pub fn with_table_threshold(p: u32, m: u32, threshold: u64) -> Result<Self> {
        let q = checked_order(p, m, Caps::global().field_order)?;
        let modulus = smallest_irreducible(p, m);
        Ok(Self::build(p, m, q, modulus, threshold))
    }

    fn build(p: u32, m: u32, q: u32, modulus: Vec<u32>, threshold: u64) -> Self {
        let mut place = Vec::with_capacity(m as usize);
        let mut v = 1u32;
        for _ in 0..m {
            place.push(v);
            v = v.wrapping_mul(p);
        }
        let mut inner = Inner { p, m, q, modulus, gamma: Felt::ONE, place, tables: None };
        inner.gamma = smallest_primitive(&inner);
        if (q as u64) <= threshold {
            inner.tables = Some(build_tables(&inner));
        }
        FieldSpec(Arc::new(inner))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The distinguished primitive element.
    pub fn gamma(&self) -> Felt {
        self.0.gamma
    }

    pub fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    /// Element from its code; `None` when out of range.
    pub fn elem(&self, code: u32) -> Option<Felt> {
        (code < self.0.q).then_some(Felt(code))
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.0.q).map(Felt)
    }

    /// Nonzero elements in code order.
    pub fn nonzero(&self) -> impl Iterator<Item = Felt> {
        (1..self.0.q).map(Felt)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Felt {
        Felt(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn neg_one(&self) -> Felt {
        self.from_int(-1)
    }

    /// Base-p digits of an element, little-endian, length m.
    pub fn digits(&self, a: Felt) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.m as usize);
        let mut c = a.0;
        for _ in 0..self.0.m {
            out.push(c % self.0.p);
            c /= self.0.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Felt {
        Felt(digits.iter().zip(&self.0.place).map(|(d, w)| d * w).sum())
    }

    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        let p = self.0.p;
        if p == 2 {
            return Felt(a.0 ^ b.0);
        }
        if self.0.m == 1 {
            return Felt((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0);
        for &w in &self.0.place {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
        }
        Felt(out)
    }

    pub fn neg(&self, a: Felt) -> Felt {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.m == 1 {
            return Felt((p - a.0) % p);
        }
        let (mut x, mut out) = (a.0, 0);
        for &w in &self.0.place {
            out += ((p - x % p) % p) * w;
            x /= p;
        }
        Felt(out)
    }

    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.0 == 0 || b.0 == 0 {
            return Felt::ZERO;
        }
        match &self.0.tables {
            Some(t) => Felt(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => poly_mul(&self.0, a, b),
        }
    }

    /// Multiplication by polynomial reduction, ignoring any tables.
    pub fn mul_by_reduction(&self, a: Felt, b: Felt) -> Felt {
        poly_mul(&self.0, a, b)
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.0.tables {
            Some(t) => {
                let n = self.0.q - 1;
                Ok(Felt(t.exp[((n - t.log[a.0 as usize]) % n) as usize]))
            }
            None => Ok(self.pow(a, self.0.q as u64 - 2)),
        }
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for `e >= 0`, with `0^0 = 1`.
    pub fn pow(&self, a: Felt, e: u64) -> Felt {
        if e == 0 {
            return Felt::ONE;
        }
        if a.is_zero() {
            return Felt::ZERO;
        }
        let n = (self.0.q - 1) as u64;
        match &self.0.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                Felt(t.exp[((l * (e % n)) % n) as usize])
            }
            None => {
                let mut e = e % n;
                let (mut base, mut acc) = (a, Felt::ONE);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = poly_mul(&self.0, acc, base);
                    }
                    base = poly_mul(&self.0, base, base);
                    e >>= 1;
                }
                acc
            }
        }
    }

    /// `a^e` for any integer `e`; negative exponents invert first.
    pub fn powi(&self, a: Felt, e: i64) -> Result<Felt> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// `gamma^e` for any integer `e`.
    pub fn gamma_pow(&self, e: i64) -> Felt {
        let n = (self.0.q - 1) as i64;
        self.pow(self.0.gamma, e.rem_euclid(n.max(1)) as u64)
    }

    /// Discrete log to base gamma, when tables are present.
    pub fn log(&self, a: Felt) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        self.0.tables.as_ref().map(|t| t.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Felt) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut ord = (self.0.q - 1) as u64;
        for r in prime_factors(ord) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == Felt::ONE {
                ord /= r;
            }
        }
        Some(ord)
    }

    /// `a^(p^i)`.
    pub fn frobenius(&self, a: Felt, i: u32) -> Felt {
        let n = (self.0.q - 1) as u64;
        let mut e = 1u64 % n.max(1);
        for _ in 0..(i % self.0.m) {
            e = (e * self.0.p as u64) % n.max(1);
        }
        if n == 1 {
            return a;
        }
        // a^(p^i) with the exponent reduced mod q-1; a^(q-1) = 1 for a != 0.
        if e == 0 {
            e = n;
        }
        self.pow(a, e)
    }

    /// True when m is even, i.e. the field is GF(q0^2) for q0 = p^(m/2).
    pub fn is_square_extension(&self) -> bool {
        self.0.m.is_multiple_of(2)
    }

    /// q0 = p^(m/2) for a square extension.
    pub fn subfield_order(&self) -> Result<u32> {
        self.require_square()?;
        Ok(self.0.p.pow(self.0.m / 2))
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.is_square_extension() {
            Ok(())
        } else {
            Err(Error::NotASquareField { p: self.0.p, m: self.0.m })
        }
    }

    /// Conjugation `a -> a^(q0)` of GF(q0^2).
    pub fn conjugate(&self, a: Felt) -> Result<Felt> {
        self.require_square()?;
        Ok(self.frobenius(a, self.0.m / 2))
    }

    /// `a * conj(a) = a^(q0+1)`.
    pub fn norm(&self, a: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.conjugate(a)?))
    }

    /// `<gamma^((q-1)/k)>` listed as `gamma^(j(q-1)/k)`, j = 0..k.
    pub fn subgroup_elements(&self, k: u64) -> Result<Vec<Felt>> {
        let n = (self.0.q - 1) as u64;
        if k == 0 || !n.is_multiple_of(k) {
            return Err(Error::NotADivisor { k, order: n });
        }
        let step = n / k;
        Ok((0..k).map(|j| self.gamma_pow((j * step) as i64)).collect())
    }

    /// `sum x^t` over the given elements.
    pub fn power_sum(&self, elements: &[Felt], t: u64) -> Felt {
        elements.iter().fold(Felt::ZERO, |acc, &x| self.add(acc, self.pow(x, t)))
    }

    pub fn sum<I: IntoIterator<Item = Felt>>(&self, it: I) -> Felt {
        it.into_iter().fold(Felt::ZERO, |acc, x| self.add(acc, x))
    }
}

fn checked_order(p: u32, m: u32, cap: u64) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::NonPrime(p as u64));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
    }
    let mut q: u128 = 1;
    for _ in 0..m {
        q *= p as u128;
        if q > cap as u128 || q > u32::MAX as u128 {
            return Err(Error::cap("field order", crate::caps::saturating_pow(p as u64, m as usize), cap));
        }
    }
    Ok(q as u32)
}

fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for code in 0..count {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut c = code;
        for _ in 0..m {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn poly_mul(inner: &Inner, a: Felt, b: Felt) -> Felt {
    let (p, m) = (inner.p, inner.m as usize);
    let da = digits_of(a.0, p, m);
    let db = digits_of(b.0, p, m);
    let prod = poly::mul(&da, &db, p);
    let r = poly::rem(&prod, &inner.modulus, p);
    let mut out = 0;
    for (i, c) in r.iter().enumerate().take(m) {
        out += c * inner.place[i];
    }
    Felt(out)
}

fn digits_of(mut c: u32, p: u32, m: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(c % p);
        c /= p;
    }
    out
}

fn smallest_primitive(inner: &Inner) -> Felt {
    let n = (inner.q - 1) as u64;
    let factors = prime_factors(n);
    let pow = |a: Felt, mut e: u64| {
        let (mut base, mut acc) = (a, Felt::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mul(inner, acc, base);
            }
            base = poly_mul(inner, base, base);
            e >>= 1;
        }
        acc
    };
    (1..inner.q)
        .map(Felt)
        .find(|&a| factors.iter().all(|&r| pow(a, n / r) != Felt::ONE))
        .expect("the multiplicative group is cyclic")
}

fn build_tables(inner: &Inner) -> Tables {
    let n = (inner.q - 1) as usize;
    let mut exp = vec![0u32; 2 * n.max(1)];
    let mut log = vec![0u32; inner.q as usize];
    let mut x = Felt::ONE;
    for i in 0..n {
        exp[i] = x.0;
        log[x.0 as usize] = i as u32;
        x = poly_mul(inner, x, inner.gamma);
    }
    for i in n..2 * n {
        exp[i] = exp[i - n];
    }
    Tables { exp, log }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^m`; `None` otherwise.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let (mut m, mut r) = (0, q);
    while r > 1 {
        r /= p;
        m += 1;
    }
    Some((p as u32, m))
}

/// Dense polynomials over GF(p), little-endian, trailing zeros trimmed.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime: a^(p-2).
        let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let f = trim(f.to_vec());
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p) as u64;
        let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
        while r.len() > df {
            let top = *r.last().unwrap();
            let shift = r.len() - 1 - df;
            if top != 0 {
                let c = top * lead_inv % p as u64;
                for (i, &fc) in f.iter().enumerate() {
                    let sub = c * fc as u64 % p as u64;
                    r[shift + i] = (r[shift + i] + p as u64 - sub) % p as u64;
                }
            }
            r.pop();
        }
        trim(r.into_iter().map(|c| c as u32).collect())
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `base^(p^times) mod f` by repeated p-th powering.
    fn frobenius_power(base: &[u32], times: u32, f: &[u32], p: u32) -> Vec<u32> {
        let mut x = base.to_vec();
        for _ in 0..times {
            let mut acc = vec![1u32];
            for _ in 0..p {
                acc = rem(&mul(&acc, &x, p), f, p);
            }
            x = acc;
        }
        x
    }

    /// Rabin's test for a monic polynomial of degree m.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let m = f.len() as u32 - 1;
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        let x = vec![0, 1];
        let full = frobenius_power(&x, m, f, p);
        if !sub(&full, &x, p).is_empty() {
            return false;
        }
        for r in super::prime_factors(m as u64) {
            let h = frobenius_power(&x, m / r as u32, f, p);
            let g = gcd(f, &sub(&h, &x, p), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}
