//! Exact fields used for linear algebra and specialization of `q`.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::laurent::LaurentInt;
use super::poly::QPoly;
use super::ratfunc::RatFunc;

/// A field with exact arithmetic. Elements are plain values; the field value
/// carries any parameters (the prime, the cyclotomic modulus).
pub trait Field: Clone + Debug + Send + Sync {
    type Elt: Clone + PartialEq + Debug + Display + Send + Sync;

    fn zero(&self) -> Self::Elt;
    fn one(&self) -> Self::Elt;
    fn embed_int(&self, n: &BigInt) -> Self::Elt;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn sub(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn neg(&self, a: &Self::Elt) -> Self::Elt;
    fn inv(&self, a: &Self::Elt) -> Option<Self::Elt>;
    fn is_zero(&self, a: &Self::Elt) -> bool;
    /// Zero for characteristic zero.
    fn characteristic(&self) -> u64;
    fn describe(&self) -> String;
    /// The element as an integer, when it is the image of one. In positive
    /// characteristic this is the least nonnegative residue.
    fn to_small_int(&self, a: &Self::Elt) -> Option<i64>;

    fn embed_i64(&self, n: i64) -> Self::Elt {
        self.embed_int(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elt, mut e: u64) -> Self::Elt {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Image of a Laurent polynomial under `q -> q0`.
    fn eval_laurent(&self, p: &LaurentInt, q0: &Self::Elt) -> Option<Self::Elt> {
        p.eval(self, q0)
    }
}

/// The rational numbers.
#[derive(Clone, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elt = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn embed_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn describe(&self) -> String {
        "Q".into()
    }
    fn to_small_int(&self, a: &BigRational) -> Option<i64> {
        a.is_integer().then(|| a.to_integer().to_i64()).flatten()
    }
}

/// The prime field `F_p`.
#[derive(Clone, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `None` unless `p` is prime and small enough for `u128` products.
    pub fn new(p: u64) -> Option<Self> {
        let prime = p >= 2 && (2..).take_while(|d: &u64| d * d <= p).all(|d| !p.is_multiple_of(d));
        (prime && p < (1 << 62)).then_some(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Symmetric lift to the integers.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elt = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn embed_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if (*a).is_multiple_of(self.p) {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        (*a).is_multiple_of(self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn describe(&self) -> String {
        format!("F_{}", self.p)
    }
    fn to_small_int(&self, a: &u64) -> Option<i64> {
        i64::try_from(*a % self.p).ok()
    }
}

/// The cyclotomic field `Q[x]/Phi_n(x)`; elements are reduced polynomials.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    modulus: QPoly,
}

impl Cyclotomic {
    pub fn new(n: u32) -> Self {
        Cyclotomic { n, modulus: QPoly::cyclotomic(n) }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// The class of `x`, a primitive n-th root of unity.
    pub fn zeta(&self) -> QPoly {
        QPoly::x().rem(&self.modulus)
    }
}

impl Field for Cyclotomic {
    type Elt = QPoly;

    fn zero(&self) -> QPoly {
        QPoly::zero()
    }
    fn one(&self) -> QPoly {
        QPoly::one()
    }
    fn embed_int(&self, n: &BigInt) -> QPoly {
        QPoly::constant(BigRational::from_integer(n.clone()))
    }
    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.add(b)
    }
    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.sub(b)
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.mul(b).rem(&self.modulus)
    }
    fn neg(&self, a: &QPoly) -> QPoly {
        QPoly::zero().sub(a)
    }
    fn inv(&self, a: &QPoly) -> Option<QPoly> {
        if a.is_zero() {
            return None;
        }
        // the modulus is irreducible, so the gcd is 1
        let (_, s, _) = a.ext_gcd(&self.modulus);
        Some(s.rem(&self.modulus))
    }
    fn is_zero(&self, a: &QPoly) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn describe(&self) -> String {
        format!("Q(zeta_{})", self.n)
    }
    fn to_small_int(&self, a: &QPoly) -> Option<i64> {
        match a.degree() {
            None => Some(0),
            Some(0) => Rationals.to_small_int(&a.coeff(0)),
            _ => None,
        }
    }
}

/// The field of rational functions `Q(q)`, the generic specialization.
#[derive(Clone, Debug, Default)]
pub struct RationalFunctions;

impl RationalFunctions {
    pub fn q(&self) -> RatFunc {
        RatFunc::from_laurent(LaurentInt::q_pow(1))
    }
}

impl Field for RationalFunctions {
    type Elt = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::zero()
    }
    fn one(&self) -> RatFunc {
        RatFunc::one()
    }
    fn embed_int(&self, n: &BigInt) -> RatFunc {
        RatFunc::from_laurent(LaurentInt::constant(n.clone()))
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.add(b)
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.sub(b)
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.mul(b)
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        a.neg()
    }
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        a.inv()
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn describe(&self) -> String {
        "Q(q)".into()
    }
    fn to_small_int(&self, a: &RatFunc) -> Option<i64> {
        let p = a.to_laurent()?;
        if p.is_zero() {
            return Some(0);
        }
        (p.valuation() == Some(0) && p.degree() == Some(0)).then(|| p.constant_term().to_i64()).flatten()
    }
    fn eval_laurent(&self, p: &LaurentInt, q0: &RatFunc) -> Option<RatFunc> {
        if *q0 == self.q() {
            return Some(RatFunc::from_laurent(p.clone()));
        }
        p.eval(self, q0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert!(PrimeField::new(9).is_none());
    }

    #[test]
    fn fourth_root_of_unity_squares_to_minus_one() {
        let k = Cyclotomic::new(4);
        let z = k.zeta();
        assert_eq!(k.mul(&z, &z), k.embed_i64(-1));
        let p = LaurentInt::from_ints(-1, &[1, 0, 1]);
        assert!(k.is_zero(&p.eval(&k, &z).unwrap()));
        assert_eq!(k.mul(&z, &k.inv(&z).unwrap()), k.one());
    }
}
