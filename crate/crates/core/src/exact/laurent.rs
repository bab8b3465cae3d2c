use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};

/// Coefficient ring for [`Laurent`].
pub trait Coeff:
    Clone
    + PartialEq
    + Eq
    + std::hash::Hash
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    /// Image in a field, if defined there.
    fn to_field<F: Field>(&self, field: &F) -> Option<F::Elt>;
}

impl Coeff for BigInt {
    fn to_field<F: Field>(&self, field: &F) -> Option<F::Elt> {
        Some(field.embed_int(self))
    }
}

impl Coeff for BigRational {
    fn to_field<F: Field>(&self, field: &F) -> Option<F::Elt> {
        let n = field.embed_int(self.numer());
        let d = field.inv(&field.embed_int(self.denom()))?;
        Some(field.mul(&n, &d))
    }
}

/// A Laurent polynomial `sum_i coeffs[i] q^(offset+i)`.
///
/// Zero is the empty coefficient list; otherwise the first and last
/// coefficients are nonzero, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent<R> {
    offset: i64,
    coeffs: Vec<R>,
}

pub type LaurentInt = Laurent<BigInt>;
pub type LaurentRat = Laurent<BigRational>;

impl<R: Coeff> Default for Laurent<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coeff> Laurent<R> {
    pub fn zero() -> Self {
        Laurent { offset: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: R, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(R::one(), exp)
    }

    pub fn from_coeffs(offset: i64, coeffs: Vec<R>) -> Self {
        let mut p = Laurent { offset, coeffs };
        p.normalize();
        p
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, R)>>(terms: I) -> Self {
        let terms: Vec<(i64, R)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![R::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.clone() + c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.offset == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i64 - 1)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> R {
        let i = exp - self.offset;
        if i < 0 || i >= self.coeffs.len() as i64 {
            R::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn constant_term(&self) -> R {
        self.coeff(0)
    }

    /// Coefficient of the lowest power, if nonzero.
    pub fn trailing_coeff(&self) -> Option<&R> {
        self.coeffs.first()
    }

    pub fn leading_coeff(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.offset + i as i64, c))
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Laurent { offset: self.offset + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.offset, self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// The ring involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(top) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                Laurent { offset: -top, coeffs }
            }
        }
    }

    /// Substitute `q -> q^k` for a nonzero integer `k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0);
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    /// Part with exponents strictly greater than `exp`.
    pub fn truncate_above(&self, exp: i64) -> Self {
        Self::from_terms(self.terms().filter(|(e, _)| *e > exp).map(|(e, c)| (e, c.clone())))
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&R) -> S) -> Laurent<S> {
        Laurent::from_coeffs(self.offset, self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at a unit `q` of a field.
    pub fn eval<F: Field>(&self, field: &F, q: &F::Elt) -> Option<F::Elt> {
        let mut acc = field.zero();
        if self.is_zero() {
            return Some(acc);
        }
        let qinv = field.inv(q)?;
        let base = field.pow(if self.offset < 0 { &qinv } else { q }, self.offset.unsigned_abs());
        let mut cur = base;
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = field.add(&acc, &field.mul(&c.to_field(field)?, &cur));
            }
            cur = field.mul(&cur, q);
        }
        Some(acc)
    }
}

impl LaurentInt {
    pub fn from_i64(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    /// `sum c_i q^(offset+i)` from small integers.
    pub fn from_ints(offset: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(offset, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// All coefficients are non-negative.
    pub fn is_nonneg(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn to_rat(&self) -> LaurentRat {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |a, c| a + c)
    }

    /// The quotient `self / divisor`, which must be exact in `Z[q, q^-1]`.
    pub fn exact_div(&self, divisor: &LaurentInt) -> Result<LaurentInt> {
        if divisor.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let n = self.coeffs.len() as i64 - divisor.coeffs.len() as i64 + 1;
        let fail = || Error::NotDivisible(format!("{self} by {divisor}"));
        if n <= 0 {
            return Err(fail());
        }
        let lead = &divisor.coeffs[0];
        let mut rem = self.coeffs.clone();
        let mut quot = Vec::with_capacity(n as usize);
        for i in 0..n as usize {
            let (c, r) = rem[i].div_rem(lead);
            if !r.is_zero() {
                return Err(fail());
            }
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot.push(c);
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(fail());
        }
        Ok(Self::from_coeffs(self.offset - divisor.offset, quot))
    }

    /// Exact division by an integer.
    pub fn exact_div_int(&self, d: &BigInt) -> Result<LaurentInt> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (qt, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("{self} by {d}")));
            }
            out.push(qt);
        }
        Ok(Self::from_coeffs(self.offset, out))
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl<R: Coeff> Zero for Laurent<R> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Coeff> One for Laurent<R> {
    fn one() -> Self {
        Laurent::one()
    }
}

fn add_impl<R: Coeff>(a: &Laurent<R>, b: &Laurent<R>, negate_b: bool) -> Laurent<R> {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b.clone() } else { b.clone() };
    }
    let lo = a.offset.min(b.offset);
    let hi = a.degree().unwrap().max(b.degree().unwrap());
    let mut coeffs = vec![R::zero(); (hi - lo + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.offset - lo) as usize + i] = c.clone();
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.offset - lo) as usize + i];
        *slot = if negate_b { slot.clone() - c.clone() } else { slot.clone() + c.clone() };
    }
    Laurent::from_coeffs(lo, coeffs)
}

fn mul_impl<R: Coeff>(a: &Laurent<R>, b: &Laurent<R>) -> Laurent<R> {
    if a.is_zero() || b.is_zero() {
        return Laurent::zero();
    }
    let mut coeffs = vec![R::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            coeffs[i + j] = coeffs[i + j].clone() + x.clone() * y.clone();
        }
    }
    Laurent::from_coeffs(a.offset + b.offset, coeffs)
}

impl<R: Coeff> Add<&Laurent<R>> for &Laurent<R> {
    type Output = Laurent<R>;
    fn add(self, rhs: &Laurent<R>) -> Laurent<R> {
        add_impl(self, rhs, false)
    }
}

impl<R: Coeff> Add for Laurent<R> {
    type Output = Laurent<R>;
    fn add(self, rhs: Laurent<R>) -> Laurent<R> {
        add_impl(&self, &rhs, false)
    }
}

impl<R: Coeff> Sub<&Laurent<R>> for &Laurent<R> {
    type Output = Laurent<R>;
    fn sub(self, rhs: &Laurent<R>) -> Laurent<R> {
        add_impl(self, rhs, true)
    }
}

impl<R: Coeff> Sub for Laurent<R> {
    type Output = Laurent<R>;
    fn sub(self, rhs: Laurent<R>) -> Laurent<R> {
        add_impl(&self, &rhs, true)
    }
}

impl<R: Coeff> Mul<&Laurent<R>> for &Laurent<R> {
    type Output = Laurent<R>;
    fn mul(self, rhs: &Laurent<R>) -> Laurent<R> {
        mul_impl(self, rhs)
    }
}

impl<R: Coeff> Mul for Laurent<R> {
    type Output = Laurent<R>;
    fn mul(self, rhs: Laurent<R>) -> Laurent<R> {
        mul_impl(&self, &rhs)
    }
}

impl<R: Coeff> Neg for Laurent<R> {
    type Output = Laurent<R>;
    fn neg(self) -> Laurent<R> {
        Laurent { offset: self.offset, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<R: Coeff> Neg for &Laurent<R> {
    type Output = Laurent<R>;
    fn neg(self) -> Laurent<R> {
        -self.clone()
    }
}

impl<R: Coeff> AddAssign<&Laurent<R>> for Laurent<R> {
    fn add_assign(&mut self, rhs: &Laurent<R>) {
        *self = add_impl(self, rhs, false);
    }
}

impl<R: Coeff> SubAssign<&Laurent<R>> for Laurent<R> {
    fn sub_assign(&mut self, rhs: &Laurent<R>) {
        *self = add_impl(self, rhs, true);
    }
}

impl<R: Coeff + fmt::Display + Signed> fmt::Display for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

/// JSON integers: plain numbers when they fit in `i64`, decimal strings otherwise.
pub(crate) mod bigint_json {
    use super::*;

    pub fn to_value(c: &BigInt) -> serde_json::Value {
        match c.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(c.to_string()),
        }
    }

    pub fn from_value(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| format!("integer out of range: {n}")),
            serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad integer string {s:?}")),
            other => Err(format!("expected integer, found {other}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    offset: i64,
    coeffs: Vec<serde_json::Value>,
}

impl Serialize for LaurentInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentRepr { offset: self.offset, coeffs: self.coeffs.iter().map(bigint_json::to_value).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = LaurentRepr::deserialize(d)?;
        let coeffs = r
            .coeffs
            .iter()
            .map(bigint_json::from_value)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(de::Error::custom)?;
        let p = Laurent::from_coeffs(r.offset, coeffs);
        Ok(p)
    }
}
