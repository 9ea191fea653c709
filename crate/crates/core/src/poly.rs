//! Dense univariate polynomials over a [`Field`], plus the cyclotomic-coset
//! factorization of `X^p - 1` over finite fields.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FiniteField};
use crate::field::Field;

/// Coefficients in ascending degree with no trailing zeros; the zero
/// polynomial has an empty coefficient list.
#[derive(Clone)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let coeff = self.field.render(c);
            let coeff = if coeff.contains(';') || coeff.contains('/') || coeff.starts_with('-') {
                format!("({coeff})")
            } else {
                coeff
            };
            match (i, self.field.is_one(c)) {
                (0, _) => write!(out, "{coeff}")?,
                (1, true) => write!(out, "X")?,
                (1, false) => write!(out, "{coeff}X")?,
                (_, true) => write!(out, "X^{i}")?,
                (_, false) => write!(out, "{coeff}X^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_ints(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&n| field.from_int(n)).collect();
        Poly::new(field, c)
    }

    pub fn zero(field: F) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Poly::new(field, vec![one])
    }

    /// `c * X^deg`
    pub fn monomial(field: F, c: F::Elem, deg: usize) -> Self {
        let mut coeffs = vec![field.zero(); deg];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    /// `X^n - 1`
    pub fn x_pow_minus_one(field: F, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[0] = field.neg(&field.one());
        coeffs[n] = field.one();
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs
            .iter()
            .filter(|c| !self.field.is_zero(c))
            .count()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.field.is_zero(&self.coeffs[i]))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| self.field.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Poly::new(self.field.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| self.field.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        Poly::new(self.field.clone(), c)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        Poly::new(self.field.clone(), c)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let c = self.coeffs.iter().map(|a| self.field.mul(a, s)).collect();
        Poly::new(self.field.clone(), c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f.clone(), c)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = f.inv(divisor.lead().unwrap()).expect("nonzero lead");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f.clone()), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if f.is_zero(&r[i]) {
                continue;
            }
            let c = f.mul(&r[i], &lead_inv);
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = f.sub(&r[idx], &f.mul(&c, b));
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(f.clone(), q), Poly::new(f.clone(), r)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).expect("nonzero lead")),
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let fld = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(fld.clone()), Poly::zero(fld.clone()));
        let (mut t0, mut t1) = (Poly::zero(fld.clone()), Poly::one(fld.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let l = fld.inv(r0.lead().unwrap()).unwrap();
        Ok((r0.scale(&l), s0.scale(&l), t0.scale(&l)))
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(a, &f.from_int(i as i64)))
            .collect();
        Poly::new(f.clone(), c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::one(self.field.clone()), |acc, _| acc.mul(self))
    }

    /// Multiplicity of 1 as a root, by repeated division by `X - 1`.
    pub fn root_one_multiplicity(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = &self.field;
        let mut cur = self.coeffs.clone();
        let mut mu = 0;
        loop {
            // Synthetic division by (X - 1): remainder is cur(1).
            let n = cur.len();
            let mut quot = vec![f.zero(); n.saturating_sub(1)];
            let mut acc = f.zero();
            for i in (0..n).rev() {
                acc = f.add(&acc, &cur[i]);
                if i > 0 {
                    quot[i - 1] = acc.clone();
                }
            }
            if !f.is_zero(&acc) || n <= 1 {
                return Ok(mu);
            }
            mu += 1;
            cur = quot;
        }
    }
}

/// Result of checking whether `(X - 1)^m` divides `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport {
    /// Exact multiplicity of the root 1.
    pub multiplicity: usize,
    pub divisible: bool,
    pub term_count: usize,
}

/// Decides whether `(X - 1)^m` divides `f` and confirms that `f` has more
/// terms than the multiplicity of its root at 1.
pub fn multiplicity_check<F: Field>(f: &Poly<F>, m: usize) -> Result<MultiplicityReport> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    let ch = f.field().characteristic();
    if ch != 0 && deg as u64 >= ch {
        return Err(Error::Precondition(format!(
            "degree {deg} must be below the characteristic {ch}"
        )));
    }
    let multiplicity = f.root_one_multiplicity()?;
    let term_count = f.term_count();
    if term_count <= multiplicity {
        return Err(Error::InvariantViolation(format!(
            "{f} has {term_count} terms but 1 is a root of multiplicity {multiplicity}"
        )));
    }
    Ok(MultiplicityReport {
        multiplicity,
        divisible: m <= multiplicity,
        term_count,
    })
}

/// Partition of `{0, ..., p-1}` into orbits of multiplication by `q` mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPartition {
    pub p: u64,
    pub q: u64,
    /// Each coset sorted; cosets ordered by their smallest element.
    pub cosets: Vec<Vec<u64>>,
}

/// Multiplicative order of `q` modulo `p`.
pub fn multiplicative_order_mod(q: u64, p: u64) -> Option<u64> {
    let q = q % p;
    if p < 2 || num_integer::gcd(q, p) != 1 {
        return None;
    }
    let mut x = q;
    let mut m = 1;
    while x != 1 % p {
        x = x * q % p;
        m += 1;
    }
    Some(m)
}

pub fn cyclotomic_cosets(p: u64, q: u64) -> Result<CosetPartition> {
    if !crate::ff::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if q.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!("{p} divides {q}")));
    }
    let r = q % p;
    let mut seen = vec![false; p as usize];
    let mut cosets = Vec::new();
    for start in 0..p {
        if seen[start as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut x = start;
        while !seen[x as usize] {
            seen[x as usize] = true;
            coset.push(x);
            x = x * r % p;
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    Ok(CosetPartition { p, q, cosets })
}

/// Splitting data for `X^p - 1` over a finite field of characteristic != p.
#[derive(Clone, Debug)]
pub struct CyclicSplitting {
    /// GF(q^m) with m the order of q mod p.
    pub extension: FiniteField,
    /// Primitive p-th root of unity in the extension.
    pub zeta: FieldElement,
    pub cosets: CosetPartition,
    /// Monic irreducible factors over the base field, sorted by degree then
    /// by coefficients read from the leading term down.
    pub factors: Vec<Poly<FiniteField>>,
}

/// Monic irreducible factors of `X^p - 1` over `field`, one per cyclotomic
/// coset, sorted by degree and then by coefficients from the leading term
/// down (so `X^3 + X + 1` precedes `X^3 + X^2 + 1`).
pub fn factor_cyclic(p: u64, field: &FiniteField) -> Result<Vec<Poly<FiniteField>>> {
    Ok(split_cyclic(p, field)?.factors)
}

pub fn split_cyclic(p: u64, field: &FiniteField) -> Result<CyclicSplitting> {
    if !crate::ff::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if field.p() == p {
        return Err(Error::Precondition(format!(
            "X^{p} - 1 = (X - 1)^{p} in characteristic {p}"
        )));
    }
    let q = field.order();
    let m = multiplicative_order_mod((q % p as u128) as u64, p).expect("q coprime to p");
    let extension = crate::ff::make_field(field.p(), field.degree() * m as u32, None)?;
    let emb = field.embed_into(&extension)?;
    let zeta = extension.find_element_of_order(p as u128)?;
    let cosets = cyclotomic_cosets(p, (q % p as u128) as u64)?;
    let mut factors = Vec::with_capacity(cosets.cosets.len());
    for coset in &cosets.cosets {
        let mut prod = Poly::one(extension.clone());
        for &i in coset {
            let root = extension.pow(&zeta, i as u128);
            let lin = Poly::new(
                extension.clone(),
                vec![extension.neg(&root), extension.one()],
            );
            prod = prod.mul(&lin);
        }
        let mut base = Vec::with_capacity(prod.coeffs().len());
        for c in prod.coeffs() {
            // Coefficients of a coset product are fixed by x -> x^q.
            if extension.pow(c, q) != *c {
                return Err(Error::InvariantViolation(format!(
                    "coset product coefficient {} is not fixed by Frobenius",
                    extension.render(c)
                )));
            }
            base.push(emb.pull_back(*c).ok_or_else(|| {
                Error::InvariantViolation("coset product left the base field".into())
            })?);
        }
        factors.push(Poly::new(field.clone(), base));
    }
    factors.sort_by(|a, b| {
        a.degree().cmp(&b.degree()).then_with(|| {
            let ka: Vec<_> = a
                .coeffs()
                .iter()
                .rev()
                .map(|c| field.index_of(*c))
                .collect();
            let kb: Vec<_> = b
                .coeffs()
                .iter()
                .rev()
                .map(|c| field.index_of(*c))
                .collect();
            ka.cmp(&kb)
        })
    });
    let product = factors
        .iter()
        .fold(Poly::one(field.clone()), |acc, f| acc.mul(f));
    if product != Poly::x_pow_minus_one(field.clone(), p as usize) {
        return Err(Error::InvariantViolation(format!(
            "factors of X^{p} - 1 over {field} do not multiply back"
        )));
    }
    Ok(CyclicSplitting {
        extension,
        zeta,
        cosets,
        factors,
    })
}

/// All `2^r` monic divisors of a product of `r` distinct irreducibles, as
/// subset products in increasing bitmask order.
pub fn enumerate_divisors<F: Field>(factors: &[Poly<F>]) -> impl Iterator<Item = Poly<F>> + '_ {
    let r = factors.len();
    assert!(r < 64, "too many factors to enumerate");
    (0u64..1 << r).map(move |mask| divisor_for_mask(factors, mask))
}

pub fn divisor_for_mask<F: Field>(factors: &[Poly<F>], mask: u64) -> Poly<F> {
    let field = factors
        .first()
        .map(|f| f.field().clone())
        .expect("at least one factor");
    factors
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(Poly::one(field), |acc, (_, f)| acc.mul(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;
    use crate::field::Rationals;

    fn gf(p: u64) -> FiniteField {
        make_field(p, 1, None).unwrap()
    }

    #[test]
    fn gcd_examples() {
        let f2 = gf(2);
        let x7 = Poly::x_pow_minus_one(f2.clone(), 7);
        let g = Poly::from_ints(f2.clone(), &[1, 1, 0, 1]);
        assert_eq!(x7.gcd(&g).unwrap(), g);
        // Oracle: exact long division.
        assert!(x7.rem(&g).unwrap().is_zero());
        assert_eq!(
            g.gcd(&Poly::one(f2.clone())).unwrap(),
            Poly::one(f2.clone())
        );

        let f5 = gf(5);
        let h = Poly::from_ints(f5.clone(), &[4, 1, 1, 4, 2, 1]);
        let x11 = Poly::x_pow_minus_one(f5, 11);
        assert_eq!(x11.gcd(&h).unwrap(), h);

        let z = Poly::zero(f2);
        assert_eq!(z.gcd(&z).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn term_counts() {
        let f5 = gf(5);
        assert_eq!(
            Poly::from_ints(f5.clone(), &[2, 2, 4, 3, 0, 0, 1]).term_count(),
            5
        );
        assert_eq!(Poly::zero(f5).term_count(), 0);
        assert_eq!(Poly::from_ints(gf(2), &[1, 1, 0, 1]).term_count(), 3);
    }

    #[test]
    fn coset_examples() {
        let c = cyclotomic_cosets(7, 2).unwrap().cosets;
        assert_eq!(c, vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
        assert_eq!(
            cyclotomic_cosets(3, 2).unwrap().cosets,
            vec![vec![0], vec![1, 2]]
        );
        assert_eq!(
            cyclotomic_cosets(11, 5).unwrap().cosets,
            vec![vec![0], vec![1, 3, 4, 5, 9], vec![2, 6, 7, 8, 10]]
        );
        assert!(cyclotomic_cosets(7, 14).is_err());
    }

    #[test]
    fn factor_x7_minus_1_over_gf2() {
        let f2 = gf(2);
        let fs = factor_cyclic(7, &f2).unwrap();
        let expect = vec![
            Poly::from_ints(f2.clone(), &[1, 1]),
            Poly::from_ints(f2.clone(), &[1, 1, 0, 1]),
            Poly::from_ints(f2.clone(), &[1, 0, 1, 1]),
        ];
        // Oracle: the product of the three factors is X^7 + 1.
        let prod = expect.iter().fold(Poly::one(f2.clone()), |a, b| a.mul(b));
        assert_eq!(prod, Poly::x_pow_minus_one(f2.clone(), 7));
        assert_eq!(fs, expect);
    }

    #[test]
    fn factor_over_gf4_is_linear() {
        let gf4 = make_field(2, 2, None).unwrap();
        let fs = factor_cyclic(3, &gf4).unwrap();
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|f| f.degree() == Some(1)));
    }

    #[test]
    fn factor_x11_minus_1_over_gf5() {
        let f5 = gf(5);
        let fs = factor_cyclic(11, &f5).unwrap();
        let degs: Vec<_> = fs.iter().map(|f| f.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 5, 5]);
        assert_eq!(fs[0], Poly::from_ints(f5.clone(), &[4, 1]));
        assert!(fs.contains(&Poly::from_ints(f5, &[4, 1, 1, 4, 2, 1])));
    }

    #[test]
    fn characteristic_p_is_rejected() {
        assert!(matches!(
            factor_cyclic(5, &gf(5)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn divisors() {
        let f2 = gf(2);
        let fs = factor_cyclic(7, &f2).unwrap();
        let all: Vec<_> = enumerate_divisors(&fs).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], Poly::one(f2.clone()));
        assert_eq!(all[7], Poly::x_pow_minus_one(f2.clone(), 7));
        // (X+1)(X^3+X+1) = X^4+X^3+X^2+1
        let target = Poly::from_ints(f2.clone(), &[1, 0, 1, 1, 1]);
        let direct = Poly::from_ints(f2.clone(), &[1, 1]).mul(&Poly::from_ints(f2, &[1, 1, 0, 1]));
        assert_eq!(direct, target);
        assert!(all.contains(&target));

        let f5 = gf(5);
        let fs = factor_cyclic(11, &f5).unwrap();
        assert_eq!(enumerate_divisors(&fs).count(), 8);
    }

    #[test]
    fn multiplicity_examples() {
        let q = Rationals;
        // (X-1)^2 (X+2) = X^3 - 3X + 2
        let f = Poly::from_ints(q, &[2, -3, 0, 1]);
        let r = multiplicity_check(&f, 2).unwrap();
        assert_eq!((r.multiplicity, r.divisible, r.term_count), (2, true, 3));

        let r = multiplicity_check(&Poly::from_ints(q, &[-1, 1]), 1).unwrap();
        assert_eq!((r.multiplicity, r.divisible, r.term_count), (1, true, 2));

        let f5 = gf(5);
        let phi5 = Poly::from_ints(f5.clone(), &[1, 1, 1, 1, 1]);
        // Oracle: (X-1)^4 expanded over GF(5).
        assert_eq!(Poly::from_ints(f5.clone(), &[-1, 1]).pow(4), phi5);
        let r = multiplicity_check(&phi5, 4).unwrap();
        assert_eq!((r.multiplicity, r.divisible, r.term_count), (4, true, 5));

        assert_eq!(
            multiplicity_check(&Poly::zero(f5.clone()), 0).unwrap_err(),
            Error::ZeroPolynomial
        );
        let too_big = Poly::x_pow_minus_one(f5, 5);
        assert!(matches!(
            multiplicity_check(&too_big, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn ext_gcd_identity() {
        let q = Rationals;
        let a = Poly::from_ints(q, &[1, 1]);
        let b = Poly::from_ints(q, &[1, 1, 1]);
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert_eq!(g, Poly::one(q));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn display() {
        let f5 = gf(5);
        let h = Poly::from_ints(f5, &[4, 1, 1, 4, 2, 1]);
        assert_eq!(h.to_string(), "X^5 + 2X^4 + 4X^3 + X^2 + X + 4");
    }
}
