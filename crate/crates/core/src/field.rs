//! Exact arithmetic in GF(p^e).
//!
//! Elements are stored as [`Fe`], a packed integer holding the polynomial-basis
//! coordinates `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. All arithmetic goes
//! through a [`Field`] handle, which is cheap to clone and immutable after
//! construction. [`FieldElem`] bundles an element with its field for the
//! checked, context-carrying API.

use std::fmt;
use std::sync::Arc;

use serde_json::Value;
use thiserror::Error;

use crate::poly::{self, Poly};

/// Default upper bound on `p^e`.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 31;

/// Fields up to this size get exp/log tables for multiplication.
const LOG_TABLE_LIMIT: u64 = 1 << 20;
/// Extension fields up to this size also get an addition table.
const ADD_TABLE_LIMIT: u64 = 1 << 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{e} exceeds the cap {cap}")]
    FieldTooLarge { p: u64, e: u32, cap: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields: GF({0}) and GF({1})")]
    CtxMismatch(u64, u64),
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("no embedding of GF({src}) into GF({dst})")]
    NoEmbedding { src: u64, dst: u64 },
    #[error("malformed field element: {0}")]
    BadElement(String),
}

/// A raw field element: packed base-`p` digits of the polynomial-basis coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low degree first, length `e + 1`.
    modulus: Vec<u32>,
    /// `p^i` for `i < e`.
    place: Vec<u32>,
    primitive: Fe,
    /// Prime factors of `q - 1`.
    order_factors: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
}

/// A finite field GF(p^e) with its canonical modulus.
///
/// The modulus is the lexicographically least monic irreducible polynomial of
/// degree `e` over GF(p), comparing coefficient vectors low degree first.
/// For `e = 1` the modulus is `x`.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.e == other.0.e)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.e)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

/// Writes `p^e` if it stays within `cap`.
pub fn prime_power(p: u64, e: u32, cap: u64) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..e {
        q = q.checked_mul(p)?;
        if q > cap {
            return None;
        }
    }
    Some(q)
}

/// Splits a prime power `q` into `(p, e)`.
pub fn split_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q)[0];
    let mut e = 0u32;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

mod prime_poly {
    //! Bare polynomial arithmetic over GF(p), used only to find the modulus.

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv_lead = pow(m[dm], p - 2, p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * inv_lead % p;
            if c != 0 {
                for (j, &mj) in m.iter().enumerate() {
                    let idx = top - dm + j;
                    r[idx] = (r[idx] + p - c * mj % p) % p;
                }
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    pub fn gcd_degree(a: &[u64], b: &[u64], p: u64) -> usize {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x.len().saturating_sub(1)
    }

    /// Irreducibility over GF(p): no common factor with `x^{p^i} - x` for `i <= deg/2`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        let x = vec![0, 1];
        let mut h = x.clone();
        for _ in 1..=d / 2 {
            let mut acc = vec![1u64];
            let mut base = h.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_mod(&acc, &base, f, p);
                }
                base = mul_mod(&base, &base, f, p);
                e >>= 1;
            }
            h = acc;
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            if diff.is_empty() || gcd_degree(f, &diff, p) > 0 {
                return false;
            }
        }
        true
    }
}

impl Field {
    /// Builds GF(p^e) with the default size cap.
    pub fn new(p: u64, e: u32) -> Result<Field, FieldError> {
        Self::with_cap(p, e, DEFAULT_FIELD_CAP)
    }

    /// Builds GF(p) .
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Self::new(p, 1)
    }

    /// Builds GF(p^e), rejecting fields with more than `cap` elements.
    pub fn with_cap(p: u64, e: u32, cap: u64) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let cap = cap.min(DEFAULT_FIELD_CAP);
        let q = prime_power(p, e, cap).ok_or(FieldError::FieldTooLarge { p, e, cap })?;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, e)
        };
        let place: Vec<u32> = (0..e).map(|i| p.pow(i) as u32).collect();
        let mut inner = Inner {
            p: p as u32,
            e,
            q: q as u32,
            modulus,
            place,
            primitive: Fe::ONE,
            order_factors: prime_factors(q - 1),
            exp: Vec::new(),
            log: Vec::new(),
            add: Vec::new(),
        };
        let probe = Field(Arc::new(inner_clone(&inner)));
        inner.primitive = probe.find_least_primitive();
        if e > 1 && q <= LOG_TABLE_LIMIT {
            let n = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * n];
            let mut log = vec![0u32; q as usize];
            let mut cur = Fe::ONE;
            for i in 0..n {
                exp[i] = cur.0;
                exp[i + n] = cur.0;
                log[cur.0 as usize] = i as u32;
                cur = probe.mul_slow(cur, inner.primitive);
            }
            inner.exp = exp;
            inner.log = log;
        }
        if e > 1 && q <= ADD_TABLE_LIMIT {
            let qs = q as usize;
            let mut add = vec![0u32; qs * qs];
            for a in 0..qs {
                for b in 0..qs {
                    add[a * qs + b] = probe.add_digits(Fe(a as u32), Fe(b as u32)).0;
                }
            }
            inner.add = add;
        }
        Ok(Field(Arc::new(inner)))
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.0.e
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.0.q as u64
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    /// Coefficients of the modulus, low degree first (monic, length `e + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The least primitive element of `k^×` in lexicographic coefficient order.
    pub fn primitive(&self) -> Fe {
        self.0.primitive
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    #[inline]
    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element with the given polynomial-basis coordinates (low degree first).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe, FieldError> {
        if coeffs.len() > self.0.e as usize {
            return Err(FieldError::BadElement(format!(
                "{} coordinates for a degree-{} field",
                coeffs.len(),
                self.0.e
            )));
        }
        let mut v = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.p() {
                return Err(FieldError::BadElement(format!(
                    "coordinate {c} not reduced mod {}",
                    self.p()
                )));
            }
            v += c as u32 * self.0.place[i];
        }
        Ok(Fe(v))
    }

    /// Polynomial-basis coordinates, exactly `e` entries.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let p = self.0.p;
        let mut v = a.0;
        (0..self.0.e)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    /// Rank of `a` in lexicographic coefficient order (low degree most significant).
    pub fn lex_key(&self, a: Fe) -> u64 {
        self.coeffs(a)
            .iter()
            .fold(0u64, |acc, &c| acc * self.p() + c as u64)
    }

    /// Inverse of [`Field::lex_key`].
    pub fn from_lex_key(&self, mut key: u64) -> Fe {
        let e = self.0.e as usize;
        let mut coeffs = vec![0u64; e];
        for i in (0..e).rev() {
            coeffs[i] = key % self.p();
            key /= self.p();
        }
        self.from_coeffs(&coeffs).expect("key within field")
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    #[inline]
    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.0.q
    }

    fn add_digits(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        for &pl in &self.0.place {
            let d = (x % p + y % p) % p;
            out += d * pl;
            x /= p;
            y /= p;
        }
        Fe(out)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.0;
        if inner.e == 1 {
            let s = a.0 + b.0;
            Fe(if s >= inner.p { s - inner.p } else { s })
        } else if !inner.add.is_empty() {
            Fe(inner.add[a.0 as usize * inner.q as usize + b.0 as usize])
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let inner = &*self.0;
        if a.0 == 0 {
            return a;
        }
        if inner.e == 1 {
            return Fe(inner.p - a.0);
        }
        if inner.p == 2 {
            return a;
        }
        let p = inner.p;
        let mut x = a.0;
        let mut out = 0u32;
        for &pl in &inner.place {
            let d = x % p;
            out += ((p - d) % p) * pl;
            x /= p;
        }
        Fe(out)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        if self.0.e == 1 {
            let p = self.0.p;
            Fe(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + p - b.0 })
        } else {
            self.add(a, self.neg(b))
        }
    }

    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.0;
        let p = inner.p as u64;
        let e = inner.e as usize;
        let da = self.coeffs(a);
        let db = self.coeffs(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (e..2 * e - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..e {
                let idx = i - e + j;
                prod[idx] = (prod[idx] + p - c * inner.modulus[j] as u64 % p) % p;
            }
        }
        let mut out = 0u32;
        for j in 0..e {
            out += prod[j] as u32 * inner.place[j];
        }
        Fe(out)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.0;
        if inner.e == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        if !inner.log.is_empty() {
            let i = inner.log[a.0 as usize] as usize + inner.log[b.0 as usize] as usize;
            return Fe(inner.exp[i]);
        }
        self.mul_slow(a, b)
    }

    /// `y[i] += a * x[i]` over the whole slice.
    #[inline]
    pub fn axpy(&self, y: &mut [Fe], a: Fe, x: &[Fe]) {
        debug_assert_eq!(y.len(), x.len());
        if a.is_zero() {
            return;
        }
        if self.0.e == 1 {
            let p = self.0.p as u64;
            let a = a.0 as u64;
            for (yi, xi) in y.iter_mut().zip(x) {
                yi.0 = ((yi.0 as u64 + a * xi.0 as u64) % p) as u32;
            }
        } else {
            for (yi, &xi) in y.iter_mut().zip(x) {
                *yi = self.add(*yi, self.mul(a, xi));
            }
        }
    }

    /// Dot product of two equal-length slices.
    #[inline]
    pub fn dot(&self, a: &[Fe], b: &[Fe]) -> Fe {
        if self.0.e == 1 {
            let p = self.0.p as u64;
            let mut acc = 0u64;
            for (x, y) in a.iter().zip(b) {
                acc += x.0 as u64 * y.0 as u64;
                if acc >= 1 << 62 {
                    acc %= p;
                }
            }
            Fe((acc % p) as u32)
        } else {
            a.iter()
                .zip(b)
                .fold(Fe::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
        }
    }

    /// Multiplicative inverse.
    ///
    /// Panics on zero; use [`Field::try_inv`] when the operand may vanish.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        self.try_inv(a).expect("inverse of zero")
    }

    pub fn try_inv(&self, a: Fe) -> Result<Fe, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let inner = &*self.0;
        if inner.e == 1 {
            // extended Euclid on (a, p)
            let (mut r0, mut r1) = (inner.p as i64, a.0 as i64);
            let (mut t0, mut t1) = (0i64, 1i64);
            while r1 != 0 {
                let qt = r0 / r1;
                (r0, r1) = (r1, r0 - qt * r1);
                (t0, t1) = (t1, t0 - qt * t1);
            }
            return Ok(Fe(t0.rem_euclid(inner.p as i64) as u32));
        }
        if !inner.log.is_empty() {
            let n = inner.q - 1;
            return Ok(Fe(inner.exp[((n - inner.log[a.0 as usize]) % n) as usize]));
        }
        Ok(self.pow_u(a, inner.q as u64 - 2))
    }

    #[inline]
    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(a, self.try_inv(b)?))
    }

    pub fn pow_u(&self, a: Fe, mut exp: u64) -> Fe {
        let mut acc = Fe::ONE;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `a^exp`, negative exponents through the inverse.
    pub fn pow(&self, a: Fe, exp: i64) -> Result<Fe, FieldError> {
        if exp >= 0 {
            Ok(self.pow_u(a, exp as u64))
        } else {
            Ok(self.pow_u(self.try_inv(a)?, exp.unsigned_abs()))
        }
    }

    /// Least `d >= 1` with `a^d = 1`.
    pub fn mult_order(&self, a: Fe) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroElement);
        }
        let mut order = self.q() - 1;
        for &r in &self.0.order_factors {
            while order.is_multiple_of(r) && self.pow_u(a, order / r) == Fe::ONE {
                order /= r;
            }
        }
        Ok(order)
    }

    fn find_least_primitive(&self) -> Fe {
        let target = self.q() - 1;
        if target == 1 {
            return Fe::ONE;
        }
        (1..self.q())
            .map(|k| self.from_lex_key(k))
            .find(|&a| !a.is_zero() && self.mult_order(a).ok() == Some(target))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// Discrete logarithm to the base [`Field::primitive`], by table or brute force.
    pub fn discrete_log(&self, a: Fe) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroElement);
        }
        if !self.0.log.is_empty() {
            return Ok(self.0.log[a.0 as usize] as u64);
        }
        let g = self.primitive();
        let mut cur = Fe::ONE;
        for i in 0..self.q() - 1 {
            if cur == a {
                return Ok(i);
            }
            cur = self.mul(cur, g);
        }
        unreachable!("every nonzero element is a power of a primitive element")
    }

    /// JSON encoding: bare integer over a prime field, coordinate array otherwise.
    pub fn to_json(&self, a: Fe) -> Value {
        if self.is_prime_field() {
            Value::from(a.0)
        } else {
            Value::from(self.coeffs(a))
        }
    }

    pub fn from_json(&self, v: &Value) -> Result<Fe, FieldError> {
        match v {
            Value::Number(n) => {
                let x = n
                    .as_i64()
                    .ok_or_else(|| FieldError::BadElement(n.to_string()))?;
                if x < 0 || x as u64 >= self.p() {
                    return Err(FieldError::BadElement(format!(
                        "integer {x} outside [0, {})",
                        self.p()
                    )));
                }
                Ok(Fe(x as u32))
            }
            Value::Array(items) => {
                let coeffs = items
                    .iter()
                    .map(|c| {
                        c.as_u64()
                            .ok_or_else(|| FieldError::BadElement(c.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                self.from_coeffs(&coeffs)
            }
            other => Err(FieldError::BadElement(other.to_string())),
        }
    }

    /// Human-readable form: an integer over a prime field, `[c0,c1,...]` otherwise.
    pub fn show(&self, a: Fe) -> String {
        self.to_json(a).to_string()
    }

    /// Attaches this field to a raw element.
    pub fn elem(&self, a: Fe) -> FieldElem {
        FieldElem {
            field: self.clone(),
            raw: a,
        }
    }
}

fn inner_clone(inner: &Inner) -> Inner {
    Inner {
        p: inner.p,
        e: inner.e,
        q: inner.q,
        modulus: inner.modulus.clone(),
        place: inner.place.clone(),
        primitive: inner.primitive,
        order_factors: inner.order_factors.clone(),
        exp: Vec::new(),
        log: Vec::new(),
        add: Vec::new(),
    }
}

fn least_irreducible(p: u64, e: u32) -> Vec<u32> {
    let e = e as usize;
    let total = p.pow(e as u32);
    for key in 0..total {
        // c_0 is the most significant digit of the key
        let mut coeffs = vec![0u64; e + 1];
        let mut k = key;
        for i in (0..e).rev() {
            coeffs[i] = k % p;
            k /= p;
        }
        coeffs[e] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        if prime_poly::is_irreducible(&coeffs, p) {
            return coeffs.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// A field element carrying its field, for the checked API.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: Field,
    raw: Fe,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∈{:?}", self.field.show(self.raw), self.field)
    }
}

impl FieldElem {
    pub fn new(field: &Field, raw: Fe) -> Result<Self, FieldError> {
        if !field.contains(raw) {
            return Err(FieldError::BadElement(format!("{} not below {}", raw.0, field.q())));
        }
        Ok(field.elem(raw))
    }

    pub fn from_int(field: &Field, v: i64) -> Self {
        field.elem(field.from_int(v))
    }

    pub fn from_coeffs(field: &Field, coeffs: &[u64]) -> Result<Self, FieldError> {
        Ok(field.elem(field.from_coeffs(coeffs)?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn raw(&self) -> Fe {
        self.raw
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.raw)
    }

    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    fn same(&self, other: &FieldElem) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::CtxMismatch(self.field.q(), other.field.q()))
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.same(other)?;
        Ok(self.field.elem(self.field.add(self.raw, other.raw)))
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.same(other)?;
        Ok(self.field.elem(self.field.sub(self.raw, other.raw)))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.same(other)?;
        Ok(self.field.elem(self.field.mul(self.raw, other.raw)))
    }

    pub fn neg(&self) -> FieldElem {
        self.field.elem(self.field.neg(self.raw))
    }

    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        Ok(self.field.elem(self.field.try_inv(self.raw)?))
    }

    pub fn pow(&self, exp: i64) -> Result<FieldElem, FieldError> {
        Ok(self.field.elem(self.field.pow(self.raw, exp)?))
    }

    pub fn mult_order(&self) -> Result<u64, FieldError> {
        self.field.mult_order(self.raw)
    }
}

/// A ring embedding GF(p^a) → GF(p^b), `a | b`.
///
/// The source generator `x` goes to the lexicographically least root of the
/// source modulus in the target field.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: Field,
    dst: Field,
    /// Images of `x^i`, `i < src.e`.
    powers: Vec<Fe>,
}

impl Embedding {
    pub fn new(src: &Field, dst: &Field) -> Result<Embedding, FieldError> {
        if src.p() != dst.p() || !dst.e().is_multiple_of(src.e()) {
            return Err(FieldError::NoEmbedding {
                src: src.q(),
                dst: dst.q(),
            });
        }
        let root = if src.e() == 1 {
            Fe::ZERO
        } else {
            let modulus = Poly::new(
                dst,
                src.modulus()
                    .iter()
                    .map(|&c| dst.from_int(c as i64))
                    .collect(),
            );
            poly::roots_in_field(&modulus, 0)
                .into_iter()
                .map(|(r, _)| r)
                .min_by_key(|&r| dst.lex_key(r))
                .ok_or(FieldError::NoEmbedding {
                    src: src.q(),
                    dst: dst.q(),
                })?
        };
        let mut powers = Vec::with_capacity(src.e() as usize);
        let mut cur = Fe::ONE;
        for _ in 0..src.e() {
            powers.push(cur);
            cur = dst.mul(cur, root);
        }
        Ok(Embedding {
            src: src.clone(),
            dst: dst.clone(),
            powers,
        })
    }

    pub fn src(&self) -> &Field {
        &self.src
    }

    pub fn dst(&self) -> &Field {
        &self.dst
    }

    pub fn apply(&self, a: Fe) -> Fe {
        if self.src == self.dst {
            return a;
        }
        self.src
            .coeffs(a)
            .iter()
            .zip(&self.powers)
            .fold(Fe::ZERO, |acc, (&c, &pw)| {
                self.dst
                    .add(acc, self.dst.mul(self.dst.from_int(c as i64), pw))
            })
    }
}

/// Embeds a single checked element.
pub fn ff_embed(src: &Field, dst: &Field, a: &FieldElem) -> Result<FieldElem, FieldError> {
    if a.field() != src {
        return Err(FieldError::CtxMismatch(a.field().q(), src.q()));
    }
    let emb = Embedding::new(src, dst)?;
    Ok(dst.elem(emb.apply(a.raw())))
}
