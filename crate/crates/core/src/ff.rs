//! Exact arithmetic in GF(p^k).
//!
//! An element is stored packed as the integer `sum rep[i] * p^i`, where `rep`
//! is its coefficient list in the polynomial basis `1, X, ..., X^(k-1)`.
//! Small extension fields (at most 2^16 elements) get log/exp tables; larger
//! ones fall back to schoolbook multiplication modulo the defining polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// Largest supported extension degree. Splitting fields of `X^p - 1` for the
/// table search reach degree 36 over GF(2).
pub const MAX_EXTENSION_DEGREE: u32 = 64;

const TABLE_LIMIT: u128 = 1 << 16;
const MAX_CHARACTERISTIC: u64 = 1 << 31;

/// An element of some [`FiniteField`], packed as a base-p integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u128);

impl FieldElement {
    pub fn packed(self) -> u128 {
        self.0
    }
}

#[derive(Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Debug)]
struct Inner {
    p: u64,
    k: u32,
    order: u128,
    modulus: Vec<u64>,
    powers: Vec<u128>,
    tables: Option<Tables>,
}

/// GF(p^k) with an explicit monic irreducible modulus of degree k.
///
/// Cloning is cheap; all clones share one immutable description.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.order)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FiniteField {}

pub fn is_prime(n: u64) -> bool {
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

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// If `q` is a prime power `r^j`, returns `(r, j)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let r = prime_factors(q as u128)[0] as u64;
    let mut m = q;
    let mut j = 0;
    while m.is_multiple_of(r) {
        m /= r;
        j += 1;
    }
    (m == 1).then_some((r, j))
}

/// Builds GF(p^k). Without an explicit modulus, picks the lexicographically
/// smallest monic irreducible of degree k (coefficients compared from the
/// constant term upward).
pub fn make_field(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<FiniteField> {
    if !is_prime(p) || p >= MAX_CHARACTERISTIC {
        return Err(Error::NotPrime(p));
    }
    if k == 0 || k > MAX_EXTENSION_DEGREE {
        return Err(Error::InvalidField(format!(
            "extension degree {k} outside 1..={MAX_EXTENSION_DEGREE}"
        )));
    }
    let order = checked_pow(p as u128, k)
        .filter(|q| *q < (1u128 << 120))
        .ok_or_else(|| Error::InvalidField(format!("GF({p}^{k}) is too large")))?;
    let modulus = match modulus {
        Some(m) => {
            if m.len() != k as usize + 1 || m[k as usize] != 1 {
                return Err(Error::InvalidField(format!(
                    "modulus must be monic of degree {k}"
                )));
            }
            if m.iter().any(|&c| c >= p) {
                return Err(Error::InvalidField(format!(
                    "modulus coefficients must lie in 0..{p}"
                )));
            }
            if !gfp::is_irreducible(m, p) {
                return Err(Error::ReducibleModulus {
                    modulus: render_digits(m),
                    p,
                });
            }
            m.to_vec()
        }
        None => gfp::smallest_irreducible(p, k as usize),
    };
    let powers = (0..=k).map(|i| (p as u128).pow(i)).collect();
    let mut inner = Inner {
        p,
        k,
        order,
        modulus,
        powers,
        tables: None,
    };
    if k > 1 && order <= TABLE_LIMIT {
        inner.tables = Some(build_tables(&inner));
    }
    Ok(FiniteField(Arc::new(inner)))
}

fn checked_pow(base: u128, e: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn render_digits(d: &[u64]) -> String {
    d.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.order as usize;
    let primes = prime_factors(inner.order - 1);
    // Slow-path arithmetic is fine here; this runs once per field.
    let generator = (2..inner.order)
        .map(FieldElement)
        .find(|g| {
            primes
                .iter()
                .all(|&l| slow_pow(inner, *g, (inner.order - 1) / l) != FieldElement(1))
        })
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; 2 * (q - 1)];
    let mut log = vec![0u32; q];
    let mut x = FieldElement(1);
    for i in 0..q - 1 {
        exp[i] = x.0 as u32;
        exp[i + q - 1] = x.0 as u32;
        log[x.0 as usize] = i as u32;
        x = slow_mul(inner, x, generator);
    }
    Tables { exp, log }
}

fn unpack(inner: &Inner, a: FieldElement) -> Vec<u64> {
    let p = inner.p as u128;
    let mut v = a.0;
    (0..inner.k)
        .map(|_| {
            let d = (v % p) as u64;
            v /= p;
            d
        })
        .collect()
}

fn pack(inner: &Inner, digits: &[u64]) -> FieldElement {
    FieldElement(
        digits
            .iter()
            .zip(&inner.powers)
            .map(|(&d, &w)| d as u128 * w)
            .sum(),
    )
}

fn slow_mul(inner: &Inner, a: FieldElement, b: FieldElement) -> FieldElement {
    let p = inner.p;
    let k = inner.k as usize;
    let da = unpack(inner, a);
    let db = unpack(inner, b);
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for i in (k..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        // X^k = -(m_0 + ... + m_{k-1} X^{k-1})
        for j in 0..k {
            let m = inner.modulus[j];
            prod[i - k + j] = (prod[i - k + j] + (p - c) * m) % p;
        }
        prod[i] = 0;
    }
    pack(inner, &prod[..k])
}

fn slow_pow(inner: &Inner, a: FieldElement, mut e: u128) -> FieldElement {
    let mut base = a;
    let mut acc = FieldElement(1);
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(inner, acc, base);
        }
        e >>= 1;
        if e > 0 {
            base = slow_mul(inner, base, base);
        }
    }
    acc
}

impl FiniteField {
    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    /// Number of elements, p^k.
    pub fn order(&self) -> u128 {
        self.0.order
    }

    /// Defining polynomial, ascending degree, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// Coefficient list of `a` in the polynomial basis, ascending degree.
    pub fn rep(&self, a: FieldElement) -> Vec<u64> {
        unpack(&self.0, a)
    }

    pub fn from_rep(&self, rep: &[u64]) -> Result<FieldElement> {
        if rep.len() > self.0.k as usize {
            return Err(Error::InvalidArgument(format!(
                "element of GF({}) has at most {} digits",
                self.0.order, self.0.k
            )));
        }
        if let Some(&d) = rep.iter().find(|&&d| d >= self.0.p) {
            return Err(Error::InvalidArgument(format!(
                "digit {d} out of range for characteristic {}",
                self.0.p
            )));
        }
        Ok(pack(&self.0, rep))
    }

    /// The element with the given position in the canonical enumeration:
    /// lexicographic on `rep`, with `rep[0]` the most significant digit.
    pub fn element_at(&self, index: u128) -> FieldElement {
        assert!(index < self.0.order, "index out of range");
        let k = self.0.k as usize;
        let p = self.0.p as u128;
        let mut rep = vec![0u64; k];
        let mut v = index;
        for slot in rep.iter_mut().rev() {
            *slot = (v % p) as u64;
            v /= p;
        }
        pack(&self.0, &rep)
    }

    /// Inverse of [`FiniteField::element_at`].
    pub fn index_of(&self, a: FieldElement) -> u128 {
        let p = self.0.p as u128;
        self.rep(a)
            .iter()
            .fold(0u128, |acc, &d| acc * p + d as u128)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.order).map(move |i| self.element_at(i))
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(&a, self.0.p as u128)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u128> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut n = self.0.order - 1;
        for l in prime_factors(n) {
            while n.is_multiple_of(l) && self.pow(&a, n / l) == FieldElement(1) {
                n /= l;
            }
        }
        Ok(n)
    }

    fn has_order(&self, a: FieldElement, n: u128) -> bool {
        self.pow(&a, n) == FieldElement(1)
            && prime_factors(n)
                .iter()
                .all(|&l| self.pow(&a, n / l) != FieldElement(1))
    }

    /// An element of multiplicative order exactly `n`.
    ///
    /// Scans nonzero `x` in canonical order and returns the first power
    /// `x^((q-1)/n)` whose order is `n`; for small fields this is the first
    /// element of order `n` in the enumeration.
    pub fn find_element_of_order(&self, n: u128) -> Result<FieldElement> {
        let m = self.0.order - 1;
        if n == 0 || !m.is_multiple_of(n) {
            return Err(Error::NoElementOfOrder {
                n,
                order: self.0.order,
            });
        }
        let cofactor = m / n;
        for i in 1..self.0.order {
            let y = self.pow(&self.element_at(i), cofactor);
            if self.has_order(y, n) {
                return Ok(y);
            }
        }
        unreachable!("a cyclic group of order {m} has elements of every order dividing it")
    }

    /// The generator `X` of the polynomial basis (a root of the modulus).
    pub fn generator_x(&self) -> FieldElement {
        if self.0.k == 1 {
            FieldElement((self.0.p - self.0.modulus[0]) as u128 % self.0.p as u128)
        } else {
            FieldElement(self.0.p as u128)
        }
    }

    /// Embeds this field into `big`, which must be an extension of it.
    pub fn embed_into(&self, big: &FiniteField) -> Result<Embedding> {
        if self.p() != big.p() || !big.degree().is_multiple_of(self.degree()) {
            return Err(Error::InvalidArgument(format!(
                "{} is not a subfield of {}",
                self, big
            )));
        }
        if self.0.order > 1 << 24 {
            return Err(Error::InvalidArgument(format!(
                "{} is too large to embed explicitly",
                self
            )));
        }
        let image_of_x = if self.0.k == 1 {
            big.from_int(self.generator_x().0 as i64)
        } else {
            let y = big.find_element_of_order(self.0.order - 1)?;
            let mut cand = big.one();
            let mut root = None;
            for _ in 0..self.0.order - 1 {
                if eval_prime_poly(big, &self.0.modulus, cand) == big.zero() {
                    root = Some(cand);
                    break;
                }
                cand = big.mul(&cand, &y);
            }
            root.expect("an irreducible polynomial of degree k splits in GF(p^(km))")
        };
        let mut forward = Vec::with_capacity(self.0.order as usize);
        let mut back = HashMap::with_capacity(self.0.order as usize);
        for packed in 0..self.0.order {
            let a = FieldElement(packed);
            let mut acc = big.zero();
            for &d in self.rep(a).iter().rev() {
                acc = big.add(&big.mul(&acc, &image_of_x), &big.from_int(d as i64));
            }
            forward.push(acc);
            back.insert(acc, a);
        }
        Ok(Embedding {
            small: self.clone(),
            big: big.clone(),
            forward,
            back,
        })
    }
}

fn eval_prime_poly(field: &FiniteField, coeffs: &[u64], x: FieldElement) -> FieldElement {
    coeffs.iter().rev().fold(field.zero(), |acc, &c| {
        field.add(&field.mul(&acc, &x), &field.from_int(c as i64))
    })
}

/// A field embedding GF(p^j) -> GF(p^k), j | k, with its partial inverse.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: FiniteField,
    big: FiniteField,
    forward: Vec<FieldElement>,
    back: HashMap<FieldElement, FieldElement>,
}

impl Embedding {
    pub fn small(&self) -> &FiniteField {
        &self.small
    }

    pub fn big(&self) -> &FiniteField {
        &self.big
    }

    pub fn map(&self, a: FieldElement) -> FieldElement {
        self.forward[a.0 as usize]
    }

    /// Preimage of `b` if it lies in the image of the small field.
    pub fn pull_back(&self, b: FieldElement) -> Option<FieldElement> {
        self.back.get(&b).copied()
    }
}

impl Field for FiniteField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let inner = &*self.0;
        if inner.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if inner.k == 1 {
            return FieldElement((a.0 + b.0) % inner.p as u128);
        }
        let p = inner.p as u128;
        let (mut x, mut y, mut out) = (a.0, b.0, 0u128);
        for w in &inner.powers[..inner.k as usize] {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
        }
        FieldElement(out)
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        let inner = &*self.0;
        if inner.p == 2 {
            return *a;
        }
        let p = inner.p as u128;
        if inner.k == 1 {
            return FieldElement((p - a.0) % p);
        }
        let (mut x, mut out) = (a.0, 0u128);
        for w in &inner.powers[..inner.k as usize] {
            out += ((p - x % p) % p) * w;
            x /= p;
        }
        FieldElement(out)
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let inner = &*self.0;
        if inner.k == 1 {
            let p = inner.p;
            return FieldElement(((a.0 as u64 * b.0 as u64) % p) as u128);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        match &inner.tables {
            Some(t) => {
                let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                FieldElement(t.exp[i] as u128)
            }
            None => slow_mul(inner, *a, *b),
        }
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            let q1 = (inner.order - 1) as usize;
            let l = t.log[a.0 as usize] as usize;
            return Some(FieldElement(t.exp[(q1 - l) % q1] as u128));
        }
        Some(self.pow(a, inner.order - 2))
    }

    fn from_int(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        FieldElement(n.rem_euclid(p) as u128)
    }

    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn render(&self, a: &FieldElement) -> String {
        if self.0.k == 1 {
            a.0.to_string()
        } else {
            self.rep(*a)
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(";")
        }
    }
}

/// Polynomials over a prime field as plain digit vectors, ascending degree.
/// Only used to validate and search for moduli.
mod gfp {
    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let c = r[r.len() - 1] * lead_inv % p;
            let shift = r.len() - 1 - dm;
            for (j, &mj) in m.iter().enumerate() {
                r[shift + j] = (r[shift + j] + (p - c) * mj % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    fn pow_mod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            e >>= 1;
            if e > 0 {
                base = mul_mod(&base, &base, m, p);
            }
        }
        acc
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// X^(p^i) - X is coprime to `m` for i < k, and X^(p^k) = X mod `m`.
    pub(super) fn is_irreducible(m: &[u64], p: u64) -> bool {
        let k = m.len() - 1;
        if k == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let mut h = rem(&x, m, p);
        for i in 1..=k {
            h = pow_mod(&h, p, m, p);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            if i < k {
                if diff.is_empty() || gcd(&diff, m, p).len() != 1 {
                    return false;
                }
            } else if !diff.is_empty() {
                return false;
            }
        }
        true
    }

    /// Lexicographically smallest monic irreducible of degree k, comparing
    /// coefficient lists from the constant term upward.
    pub(super) fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
        let mut lower = vec![0u64; k];
        if k > 1 {
            // Constant term 0 means X divides the candidate.
            lower[0] = 1;
        }
        loop {
            let mut m = lower.clone();
            m.push(1);
            if is_irreducible(&m, p) {
                return m;
            }
            // Odometer with the constant term as the most significant digit.
            let mut i = k;
            loop {
                assert!(i > 0, "irreducible polynomials of every degree exist");
                i -= 1;
                lower[i] += 1;
                if lower[i] < p {
                    break;
                }
                lower[i] = 0;
            }
        }
    }
}
