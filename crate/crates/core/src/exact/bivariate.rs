//! Laurent polynomials in two independent indeterminates `q` and `q'`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::laurent::LaurentInt;

/// Sparse map from exponent pairs `(i, j)` of `q^i q'^j` to nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    /// A polynomial in `q` alone.
    pub fn in_first(p: &LaurentInt) -> Self {
        BiLaurent { terms: p.terms().map(|(e, c)| ((e, 0), c.clone())).collect() }
    }

    /// A polynomial in `q` read as a polynomial in `q'`.
    pub fn in_second(p: &LaurentInt) -> Self {
        BiLaurent { terms: p.terms().map(|(e, c)| ((0, e), c.clone())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (k, c) in &o.terms {
            let e = self.terms.entry(*k).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                self.terms.remove(k);
            }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = BiLaurent::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &o.terms {
                let k = (a + c, b + d);
                let e = out.terms.entry(k).or_insert_with(BigInt::zero);
                *e += x * y;
                if e.is_zero() {
                    out.terms.remove(&k);
                }
            }
        }
        out
    }
}
