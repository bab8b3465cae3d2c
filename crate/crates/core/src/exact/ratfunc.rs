use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::Field;
use super::laurent::LaurentInt;
use super::poly::QPoly;

/// A rational function in `q`, kept as a reduced fraction of Laurent polynomials.
///
/// The denominator is a primitive polynomial with nonzero constant term and
/// positive leading coefficient; any power of `q` lives in the numerator.
#[derive(Clone, Debug, Serialize, Deserialize, Eq)]
pub struct RatFunc {
    num: LaurentInt,
    den: LaurentInt,
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

// Deserialized values may be unreduced, so hash the canonical form.
impl std::hash::Hash for RatFunc {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let r = self.clone().normalized();
        r.num.hash(state);
        r.den.hash(state);
    }
}

fn to_qpoly(p: &LaurentInt) -> QPoly {
    QPoly::new(p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

impl RatFunc {
    pub fn new(num: LaurentInt, den: LaurentInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFunc { num, den };
        r.normalize();
        r
    }

    pub fn zero() -> Self {
        RatFunc { num: LaurentInt::zero(), den: LaurentInt::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentInt::one())
    }

    pub fn from_laurent(p: LaurentInt) -> Self {
        RatFunc { num: p, den: LaurentInt::one() }.normalized()
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentInt::from_i64(n))
    }

    fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentInt::one();
            return;
        }
        let shift = self.num.offset() - self.den.offset();
        let n = to_qpoly(&self.num);
        let d = to_qpoly(&self.den);
        let g = n.gcd(&d);
        let (n, d) = if g.degree() == Some(0) { (n, d) } else { (n.div_rem(&g).0, d.div_rem(&g).0) };
        let lcm = n
            .coeffs()
            .iter()
            .chain(d.coeffs())
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let scale = BigRational::from_integer(lcm);
        let ni: Vec<BigInt> = n.coeffs().iter().map(|c| (c * &scale).to_integer()).collect();
        let di: Vec<BigInt> = d.coeffs().iter().map(|c| (c * &scale).to_integer()).collect();
        let mut g = ni.iter().chain(&di).fold(BigInt::zero(), |g, c| g.gcd(c));
        if di.last().unwrap().is_negative() {
            g = -g;
        }
        self.num = LaurentInt::from_coeffs(shift, ni.into_iter().map(|c| c / &g).collect());
        self.den = LaurentInt::from_coeffs(0, di.into_iter().map(|c| c / &g).collect());
    }

    pub fn num(&self) -> &LaurentInt {
        &self.num
    }

    pub fn den(&self) -> &LaurentInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a Laurent polynomial, when it is one.
    pub fn to_laurent(&self) -> Option<LaurentInt> {
        if self.den.degree() != Some(0) {
            return None;
        }
        self.num.exact_div_int(&self.den.constant_term()).ok()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn mul_laurent(&self, p: &LaurentInt) -> Self {
        RatFunc::new(&self.num * p, self.den.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    /// Lowest power of `q` in the expansion as a Laurent series in `q`.
    pub fn valuation(&self) -> Option<i64> {
        // den has nonzero constant term, so the series valuation is the numerator's
        self.num.valuation()
    }

    /// Coefficient of the lowest power in the Laurent series expansion in `q`.
    pub fn leading_series_coeff(&self) -> Option<BigRational> {
        let n = self.num.trailing_coeff()?;
        Some(BigRational::new(n.clone(), self.den.constant_term()))
    }

    pub fn eval<F: Field>(&self, field: &F, q: &F::Elt) -> Option<F::Elt> {
        let n = self.num.eval(field, q)?;
        let d = self.den.eval(field, q)?;
        Some(field.mul(&n, &field.inv(&d)?))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(o: i64, c: &[i64]) -> LaurentInt {
        LaurentInt::from_ints(o, c)
    }

    #[test]
    fn reduces_common_factors() {
        // (q^2 - 1) / (q - 1) = q + 1
        let r = RatFunc::new(l(0, &[-1, 0, 1]), l(0, &[-1, 1]));
        assert_eq!(r.to_laurent(), Some(l(0, &[1, 1])));
    }

    #[test]
    fn equality_is_by_cross_multiplication() {
        let a = RatFunc::new(l(0, &[2]), l(0, &[2, 2]));
        let b = RatFunc::new(l(0, &[1]), l(0, &[1, 1]));
        assert_eq!(a, b);
        assert_eq!(a.num(), b.num());
    }

    #[test]
    fn inverse_of_poincare_factor() {
        // q^-1 / (1 + q^-2) = q / (q^2 + 1)
        let p = RatFunc::new(l(-1, &[1]), l(-2, &[1, 0, 1]));
        assert_eq!(p, RatFunc::new(l(1, &[1]), l(0, &[1, 0, 1])));
        assert_eq!(p.inv().unwrap().to_laurent(), Some(l(-1, &[1, 0, 1])));
    }
}
