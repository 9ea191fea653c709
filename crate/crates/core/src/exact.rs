//! Exact arithmetic in the cyclotomic field Q(zeta_n).
//!
//! Elements are rational polynomials reduced modulo the n-th cyclotomic
//! polynomial, so an element is zero exactly when every coefficient is.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::poly::Poly;

/// An element of Q(zeta_n): `rep` has length phi(n), ascending powers of zeta.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u32,
    rep: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn rep(&self) -> &[BigRational] {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(Zero::is_zero)
    }

    /// JSON rendering: `num/den` strings, ascending degree.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.rep
                .iter()
                .map(|c| serde_json::Value::String(format!("{}/{}", c.numer(), c.denom())))
                .collect(),
        )
    }
}

/// Arithmetic context for Q(zeta_n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    n: u32,
    phi: Poly<Rationals>,
}

/// The n-th cyclotomic polynomial over Q.
pub fn cyclotomic_polynomial(n: u32) -> Poly<Rationals> {
    assert!(n >= 1);
    let mut acc = Poly::x_pow_minus_one(Rationals, n as usize);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = acc
                .divrem(&cyclotomic_polynomial(d))
                .expect("cyclotomic polynomials are nonzero");
            debug_assert!(r.is_zero());
            acc = q;
        }
    }
    acc
}

impl CyclotomicField {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        Ok(CyclotomicField {
            n,
            phi: cyclotomic_polynomial(n),
        })
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// phi(n), the dimension over Q.
    pub fn dimension(&self) -> usize {
        self.phi.degree().unwrap()
    }

    pub fn modulus(&self) -> &Poly<Rationals> {
        &self.phi
    }

    fn reduce(&self, p: &Poly<Rationals>) -> Cyclotomic {
        let r = p.rem(&self.phi).expect("nonzero modulus");
        let mut rep = r.coeffs().to_vec();
        rep.resize(self.dimension(), BigRational::zero());
        Cyclotomic { n: self.n, rep }
    }

    fn as_poly(&self, a: &Cyclotomic) -> Poly<Rationals> {
        Poly::new(Rationals, a.rep.clone())
    }

    pub fn from_rational(&self, r: BigRational) -> Cyclotomic {
        let mut rep = vec![BigRational::zero(); self.dimension()];
        rep[0] = r;
        Cyclotomic { n: self.n, rep }
    }

    /// `zeta^(e mod n)` in reduced form.
    pub fn cyclo_from_power(&self, e: i64) -> Cyclotomic {
        let e = e.rem_euclid(self.n as i64) as usize;
        self.reduce(&Poly::monomial(Rationals, BigRational::one(), e))
    }

    /// Image of a group-ring vector `sum c_i X^i` (length n) under X -> zeta.
    pub fn from_group_ring(&self, c: &[BigRational]) -> Cyclotomic {
        assert_eq!(c.len(), self.n as usize);
        self.reduce(&Poly::new(Rationals, c.to_vec()))
    }

    /// Galois automorphism `zeta -> zeta^a`, gcd(a, n) = 1.
    pub fn galois(&self, x: &Cyclotomic, a: u32) -> Cyclotomic {
        let mut c = vec![BigRational::zero(); self.n as usize];
        for (i, r) in x.rep.iter().enumerate() {
            let j = (i as u64 * a as u64 % self.n as u64) as usize;
            c[j] += r;
        }
        self.from_group_ring(&c)
    }

    /// Product of all Galois conjugates; a rational number.
    pub fn norm(&self, x: &Cyclotomic) -> Result<BigRational> {
        let mut acc = self.one();
        for a in 1..self.n.max(2) {
            if num_integer::gcd(a, self.n) == 1 {
                acc = self.mul(&acc, &self.galois(x, a));
            }
        }
        if acc.rep[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::InvariantViolation(
                "norm of a cyclotomic number is not rational".into(),
            ));
        }
        Ok(acc.rep[0].clone())
    }

    pub fn cyclo_inverse(&self, x: &Cyclotomic) -> Result<Cyclotomic> {
        self.inv(x).ok_or(Error::DivisionByZero)
    }
}

/// Zero test for an integer group-ring element `sum c_i X^i` of Z[X]/(X^p - 1)
/// mapped to Q(zeta_p), p prime: the image vanishes exactly when `c` is a
/// multiple of `1 + X + ... + X^(p-1)`, i.e. all coefficients are equal.
pub fn group_ring_vanishes_prime(c: &[i64]) -> bool {
    c.windows(2).all(|w| w[0] == w[1])
}

impl Field for CyclotomicField {
    type Elem = Cyclotomic;

    fn zero(&self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            rep: vec![BigRational::zero(); self.dimension()],
        }
    }

    fn one(&self) -> Cyclotomic {
        self.from_rational(BigRational::one())
    }

    fn is_zero(&self, a: &Cyclotomic) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        let rep = a.rep.iter().zip(&b.rep).map(|(x, y)| x + y).collect();
        Cyclotomic { n: self.n, rep }
    }

    fn sub(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        let rep = a.rep.iter().zip(&b.rep).map(|(x, y)| x - y).collect();
        Cyclotomic { n: self.n, rep }
    }

    fn neg(&self, a: &Cyclotomic) -> Cyclotomic {
        let rep = a.rep.iter().map(|x| -x).collect();
        Cyclotomic { n: self.n, rep }
    }

    fn mul(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        self.reduce(&self.as_poly(a).mul(&self.as_poly(b)))
    }

    fn inv(&self, a: &Cyclotomic) -> Option<Cyclotomic> {
        if a.is_zero() {
            return None;
        }
        // s*a + t*phi = 1 since phi is irreducible and a is a nonzero residue.
        let (g, s, _) = self.as_poly(a).ext_gcd(&self.phi).ok()?;
        debug_assert_eq!(g, Poly::one(Rationals));
        Some(self.reduce(&s))
    }

    fn from_int(&self, n: i64) -> Cyclotomic {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn render(&self, a: &Cyclotomic) -> String {
        let terms: Vec<String> = a
            .rep
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}z"),
                _ => format!("{c}z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
