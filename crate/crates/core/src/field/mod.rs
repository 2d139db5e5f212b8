//! Exact arithmetic in F_p and F_{p^k}.
//!
//! A field is `F_p[t]/(f)` where `f` is the lexicographically smallest monic
//! irreducible of degree `k` (coefficients compared constant-first), so two
//! constructions of the same `(p, k)` always agree element by element.
//!
//! Elements are packed into a `u32` by reading the coefficient vector
//! `[c_0, .., c_{k-1}]` as base-`p` digits with `c_0` most significant. The
//! integer order of packed values is therefore the lexicographic order on
//! coefficient vectors, which is the canonical order used everywhere in the
//! crate (enumeration, generator choice, sorted roots of unity).

mod embed;
pub(crate) mod poly;

use std::fmt;
use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

pub use embed::Embedding;

use crate::error::{Error, Result};

/// Default bound on `q` for building discrete-log tables.
pub const DEFAULT_DLOG_CAP: u64 = 1 << 24;

/// Fields up to this size also get a full addition table.
const ADD_TABLE_MAX_Q: u32 = 4096;

/// `(p, k, modulus)` identifying a finite field. Serializes as
/// `{"p":..,"k":..,"modulus":[..]}` with the modulus constant-first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

impl FieldDescriptor {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }
}

/// A field element tagged with the cardinality of its field.
///
/// Since the modulus is canonical, `q` identifies the field uniquely.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElement {
    q: u32,
    value: u32,
}

impl FieldElement {
    /// Packed representation, in `[0, q)`.
    pub fn index(self) -> u32 {
        self.value
    }

    pub fn field_size(self) -> u32 {
        self.q
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

/// Discrete logarithms with respect to the canonical multiplicative generator.
pub struct DlogTable {
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for DlogTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DlogTable").field("order", &self.len()).finish()
    }
}

impl DlogTable {
    /// `log` of a nonzero packed element.
    pub fn get(&self, a: FieldElement) -> Option<u64> {
        if a.value == 0 {
            None
        } else {
            self.log.get(a.value as usize).map(|&e| e as u64)
        }
    }

    pub fn len(&self) -> usize {
        self.log.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `exp[i] = g^i` for `0 <= i < 2 (q - 1)`.
    pub(crate) fn exp_slice(&self) -> &[u32] {
        &self.exp
    }

    /// `log[a]` for packed `a`; entry 0 is unused.
    pub(crate) fn log_slice(&self) -> &[u32] {
        &self.log
    }
}

struct FieldInner {
    desc: FieldDescriptor,
    q: u32,
    /// place[i] = p^(k-1-i), the weight of coefficient c_i in a packed value.
    place: Vec<u32>,
    dlog_cap: u64,
    generator: OnceLock<u32>,
    tables: OnceLock<Option<DlogTable>>,
    add_table: OnceLock<Option<Vec<u32>>>,
}

/// A finite field with lazily built lookup tables. Cloning is cheap and
/// clones share tables.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.desc.p, self.0.desc.k)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.desc == other.0.desc
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        Self::with_dlog_cap(p, k, DEFAULT_DLOG_CAP)
    }

    /// Fields are interned per `(p, k, dlog_cap)`, so repeated constructions
    /// share their tables.
    pub fn with_dlog_cap(p: u64, k: u32, dlog_cap: u64) -> Result<Self> {
        static FIELDS: LazyLock<Mutex<HashMap<(u64, u32, u64), Field>>> = LazyLock::new(Default::default);
        if let Some(field) = FIELDS.lock().expect("field registry").get(&(p, k, dlog_cap)) {
            return Ok(field.clone());
        }
        let field = Self::build(p, k, dlog_cap)?;
        Ok(FIELDS.lock().expect("field registry").entry((p, k, dlog_cap)).or_insert(field).clone())
    }

    fn build(p: u64, k: u32, dlog_cap: u64) -> Result<Self> {
        if !poly::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::InvalidDegree(k));
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q <= u32::MAX as u128);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p: p as u32, k });
        };
        let modulus = poly::canonical_modulus(p, k).into_iter().map(|c| c as u32).collect();
        let p32 = p as u32;
        let place = (0..k).map(|i| p32.pow(k - 1 - i)).collect();
        Ok(Field(Arc::new(FieldInner {
            desc: FieldDescriptor { p: p32, k, modulus },
            q: q as u32,
            place,
            dlog_cap,
            generator: OnceLock::new(),
            tables: OnceLock::new(),
            add_table: OnceLock::new(),
        })))
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self> {
        let field = Field::new(desc.p as u64, desc.k)?;
        if field.descriptor() != desc {
            return Err(Error::InvalidPolynomial(format!(
                "modulus {:?} is not the canonical modulus {:?}",
                desc.modulus,
                field.descriptor().modulus
            )));
        }
        Ok(field)
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }

    pub fn p(&self) -> u32 {
        self.0.desc.p
    }

    pub fn k(&self) -> u32 {
        self.0.desc.k
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn dlog_cap(&self) -> u64 {
        self.0.dlog_cap
    }

    // ---- element construction -------------------------------------------

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(self.raw_one())
    }

    pub(crate) fn wrap(&self, value: u32) -> FieldElement {
        debug_assert!(value < self.0.q);
        FieldElement { q: self.0.q, value }
    }

    /// Element from its constant-first coefficient vector.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.k() as usize || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(Error::InvalidElement(coeffs.to_vec()));
        }
        let value = coeffs.iter().zip(&self.0.place).map(|(&c, &w)| c * w).sum();
        Ok(self.wrap(value))
    }

    /// Element with packed index `index` (the `index`-th element in canonical order).
    pub fn from_index(&self, index: u32) -> Result<FieldElement> {
        if index >= self.q() {
            return Err(Error::InvalidElement(vec![index]));
        }
        Ok(self.wrap(index))
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.p() as i64;
        let c = n.rem_euclid(p) as u32;
        self.wrap(c * self.0.place[0])
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        self.raw_coeffs(a.value)
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.q == self.0.q
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q()).map(move |v| self.wrap(v))
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::MixedFields(self.q(), a.q))
        }
    }

    // ---- checked arithmetic ---------------------------------------------

    /// Binary operation with field-membership and zero-divisor checks.
    pub fn arith(&self, a: FieldElement, b: FieldElement, op: Op) -> Result<FieldElement> {
        if a.q != b.q {
            return Err(Error::MixedFields(a.q, b.q));
        }
        self.check(a)?;
        match op {
            Op::Add => Ok(self.add(a, b)),
            Op::Sub => Ok(self.sub(a, b)),
            Op::Mul => Ok(self.mul(a, b)),
            Op::Div => self.div(a, b),
        }
    }

    /// Panics if an operand belongs to another field; see [`Field::arith`]
    /// for the checked form.
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.assert_member(a, b);
        self.wrap(self.raw_add(a.value, b.value))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.assert_member(a, b);
        self.wrap(self.raw_sub(a.value, b.value))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.assert_member(a, a);
        self.wrap(self.raw_neg(a.value))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.assert_member(a, b);
        self.wrap(self.raw_mul(a.value, b.value))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(self.raw_inv(a.value)))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        let b_inv = self.inv(b)?;
        Ok(self.mul(a, b_inv))
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        self.assert_member(a, a);
        self.wrap(self.raw_pow(a.value, e))
    }

    /// `a^(p^s)`.
    pub fn frobenius(&self, a: FieldElement, s: u64) -> FieldElement {
        self.assert_member(a, a);
        self.wrap(self.raw_frobenius(a.value, s))
    }

    fn assert_member(&self, a: FieldElement, b: FieldElement) {
        assert!(
            a.q == self.0.q && b.q == self.0.q,
            "element of F_{} used in F_{}",
            if a.q == self.0.q { b.q } else { a.q },
            self.0.q
        );
    }

    // ---- multiplicative structure ---------------------------------------

    /// Smallest element (canonical order) of multiplicative order `q - 1`.
    pub fn multiplicative_generator(&self) -> FieldElement {
        self.wrap(self.raw_generator())
    }

    /// Discrete-log tables, built on first use.
    pub fn dlog_table(&self) -> Result<&DlogTable> {
        self.0
            .tables
            .get_or_init(|| self.build_tables())
            .as_ref()
            .ok_or(Error::TableCapExceeded { q: self.q() as u64, cap: self.0.dlog_cap })
    }

    pub fn dlog(&self, a: FieldElement) -> Result<u64> {
        self.check(a)?;
        if a.value == 0 {
            return Err(Error::DivisionByZero);
        }
        let table = self.dlog_table()?;
        Ok(table.log[a.value as usize] as u64)
    }

    /// `g^e` for the canonical generator `g`.
    pub fn exp(&self, e: u64) -> FieldElement {
        let order = self.q() as u64 - 1;
        match self.dlog_table() {
            Ok(t) => self.wrap(t.exp[(e % order) as usize]),
            Err(_) => self.wrap(self.raw_pow(self.raw_generator(), e % order)),
        }
    }

    /// The `d` elements with `x^d = 1`, in canonical order.
    pub fn roots_of_unity(&self, d: u64) -> Result<Vec<FieldElement>> {
        let zeta = self.primitive_root_of_unity(d)?;
        let mut roots: Vec<FieldElement> =
            std::iter::successors(Some(self.one()), |&x| Some(self.mul(x, zeta))).take(d as usize).collect();
        roots.sort();
        Ok(roots)
    }

    /// The designated primitive `d`-th root of unity `g^((q-1)/d)`.
    pub fn primitive_root_of_unity(&self, d: u64) -> Result<FieldElement> {
        let order = self.q() as u64 - 1;
        if d == 0 || order % d != 0 {
            return Err(Error::NotDivisor { d, q_minus_one: order });
        }
        Ok(self.wrap(self.raw_pow(self.raw_generator(), order / d)))
    }

    /// The solution of `x^e = target` with the smallest discrete log.
    pub fn solve_power(&self, target: FieldElement, e: u64) -> Result<FieldElement> {
        self.solve_power_nth(target, e, 0)
    }

    /// Solutions of `x^e = target` sorted by discrete log; returns the one
    /// at position `choice` modulo the number of solutions.
    pub fn solve_power_nth(&self, target: FieldElement, e: u64, choice: u64) -> Result<FieldElement> {
        self.check(target)?;
        if target.value == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q() as u64 - 1;
        let d = num_integer::gcd(e, order);
        if self.raw_pow(target.value, order / d) != self.raw_one() {
            return Err(Error::NoSolution { exponent: e });
        }
        let log = self.dlog(target)?;
        // t * e = log (mod order)  <=>  t * (e/d) = log/d (mod order/d)
        let reduced = order / d;
        let t0 = if reduced == 1 {
            0
        } else {
            let inv = mod_inverse((e / d) % reduced, reduced);
            ((log / d) as u128 * inv as u128 % reduced as u128) as u64
        };
        let t = t0 + (choice % d) * reduced;
        Ok(self.exp(t))
    }

    /// Image of `a` (an element of `self`) in `dst` under the canonical embedding.
    pub fn embed(&self, a: FieldElement, dst: &Field) -> Result<FieldElement> {
        self.check(a)?;
        Ok(Embedding::new(self, dst)?.apply(a))
    }

    // ---- raw packed arithmetic ------------------------------------------

    pub(crate) fn raw_one(&self) -> u32 {
        self.0.place[0]
    }

    pub(crate) fn raw_coeffs(&self, mut v: u32) -> Vec<u32> {
        let p = self.p();
        let k = self.k() as usize;
        let mut out = vec![0u32; k];
        for i in (0..k).rev() {
            out[i] = v % p;
            v /= p;
        }
        out
    }

    fn raw_from_coeffs(&self, coeffs: &[u64]) -> u32 {
        coeffs.iter().zip(&self.0.place).map(|(&c, &w)| c as u32 * w).sum()
    }

    #[inline]
    pub(crate) fn raw_add(&self, a: u32, b: u32) -> u32 {
        let p = self.p();
        if self.k() == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        if let Some(table) = self.add_table() {
            return table[(a * self.q() + b) as usize];
        }
        self.digit_add(a, b)
    }

    /// `b -> a + b` as a lookup row, when an addition table exists.
    pub(crate) fn add_row(&self, a: u32) -> Option<&[u32]> {
        if self.k() == 1 {
            return None;
        }
        let q = self.q() as usize;
        self.add_table().map(|t| &t[a as usize * q..(a as usize + 1) * q])
    }

    fn digit_add(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p();
        let mut out = 0;
        let mut w = 1;
        for _ in 0..self.k() {
            let s = (a % p + b % p) % p;
            out += s * w;
            w *= p;
            a /= p;
            b /= p;
        }
        out
    }

    fn add_table(&self) -> Option<&Vec<u32>> {
        self.0
            .add_table
            .get_or_init(|| {
                let q = self.q();
                if self.k() == 1 || q > ADD_TABLE_MAX_Q {
                    return None;
                }
                let mut table = vec![0u32; (q * q) as usize];
                for a in 0..q {
                    for b in 0..q {
                        table[(a * q + b) as usize] = self.digit_add(a, b);
                    }
                }
                Some(table)
            })
            .as_ref()
    }

    #[inline]
    pub(crate) fn raw_neg(&self, a: u32) -> u32 {
        let p = self.p();
        if self.k() == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut v = a;
        let mut out = 0;
        let mut w = 1;
        for _ in 0..self.k() {
            let d = v % p;
            out += ((p - d) % p) * w;
            w *= p;
            v /= p;
        }
        out
    }

    #[inline]
    pub(crate) fn raw_sub(&self, a: u32, b: u32) -> u32 {
        self.raw_add(a, self.raw_neg(b))
    }

    #[inline]
    pub(crate) fn raw_mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.k() == 1 {
            return ((a as u64 * b as u64) % self.p() as u64) as u32;
        }
        if let Some(Some(t)) = self.0.tables.get() {
            return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize];
        }
        if self.q() as u64 <= self.0.dlog_cap {
            if let Ok(t) = self.dlog_table() {
                return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize];
            }
        }
        self.slow_mul(a, b)
    }

    /// Schoolbook product reduced by the monic modulus.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p() as u64;
        let k = self.k() as usize;
        let ca = self.raw_coeffs(a);
        let cb = self.raw_coeffs(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let modulus = &self.0.desc.modulus;
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (i, &m) in modulus.iter().enumerate().take(k) {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + p - c * m as u64 % p) % p;
            }
            prod[top] = 0;
        }
        self.raw_from_coeffs(&prod[..k])
    }

    pub(crate) fn raw_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = self.raw_one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(acc, base);
            }
            base = self.raw_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn raw_inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.raw_pow(a, self.q() as u64 - 2)
    }

    pub(crate) fn raw_frobenius(&self, a: u32, s: u64) -> u32 {
        let s = s % self.k() as u64;
        let mut x = a;
        for _ in 0..s {
            x = self.raw_pow(x, self.p() as u64);
        }
        x
    }

    pub(crate) fn raw_generator(&self) -> u32 {
        *self.0.generator.get_or_init(|| {
            let order = self.q() as u64 - 1;
            if order == 1 {
                return self.raw_one();
            }
            let factors = poly::prime_factors(order);
            (1..self.q())
                .find(|&v| factors.iter().all(|&r| self.pow_uncached(v, order / r) != self.raw_one()))
                .expect("a finite field has a primitive element")
        })
    }

    /// Exponentiation that never touches the (possibly unbuilt) tables.
    fn pow_uncached(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = self.raw_one();
        let mut base = a;
        let mul = |x: u32, y: u32| {
            if self.k() == 1 {
                ((x as u64 * y as u64) % self.p() as u64) as u32
            } else {
                self.slow_mul(x, y)
            }
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> Option<DlogTable> {
        let q = self.q() as u64;
        if q > self.0.dlog_cap {
            return None;
        }
        let order = (q - 1) as usize;
        let g = self.raw_generator();
        let mut exp = Vec::with_capacity(2 * order);
        let mut log = vec![0u32; q as usize];
        let mut x = self.raw_one();
        for e in 0..order {
            exp.push(x);
            log[x as usize] = e as u32;
            x = if self.k() == 1 {
                ((x as u64 * g as u64) % self.p() as u64) as u32
            } else {
                self.slow_mul(x, g)
            };
        }
        // doubled so that log a + log b indexes without reduction
        exp.extend_from_within(..);
        Some(DlogTable { exp, log })
    }
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    debug_assert_eq!(old_r, 1, "{a} is not invertible mod {m}");
    old_s.rem_euclid(m as i128) as u64
}
