use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::algebra::SchurAlgebra;
use crate::exact::LaurentInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// `[C]`
    Standard,
    /// `{C}`
    Canonical,
}

/// An element of the q-Schur algebra in one of its two bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurElt {
    basis: Basis,
    terms: BTreeMap<usize, LaurentInt>,
}

impl SchurElt {
    pub fn zero(basis: Basis) -> Self {
        SchurElt { basis, terms: BTreeMap::new() }
    }

    pub fn basis_elt(basis: Basis, c: usize) -> Self {
        Self::term(basis, c, LaurentInt::one())
    }

    pub fn term(basis: Basis, c: usize, v: LaurentInt) -> Self {
        let mut e = Self::zero(basis);
        e.add_term(c, &v);
        e
    }

    pub fn from_terms<'a, I: IntoIterator<Item = &'a (usize, LaurentInt)>>(basis: Basis, it: I) -> Self {
        let mut e = Self::zero(basis);
        for (c, v) in it {
            e.add_term(*c, v);
        }
        e
    }

    /// The identity, `sum_gamma {(gamma, e, gamma)}`.
    pub fn identity(alg: &SchurAlgebra) -> Self {
        let xi = alg.xi();
        let mut e = Self::zero(Basis::Canonical);
        for gamma in 0..xi.n_orbits() {
            e.add_term(xi.unit(gamma), &LaurentInt::one());
        }
        e
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, c: usize) -> LaurentInt {
        self.terms.get(&c).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &LaurentInt)> {
        self.terms.iter().map(|(c, v)| (*c, v))
    }

    pub fn add_term(&mut self, c: usize, v: &LaurentInt) {
        if v.is_zero() {
            return;
        }
        let e = self.terms.entry(c).or_default();
        *e += v;
        if e.is_zero() {
            self.terms.remove(&c);
        }
    }

    /// Sum; the result is in the basis of `self`.
    pub fn add(&self, alg: &SchurAlgebra, o: &Self) -> Self {
        let mut out = self.clone();
        for (c, v) in o.in_basis(alg, self.basis).terms() {
            out.add_term(c, v);
        }
        out
    }

    pub fn sub(&self, alg: &SchurAlgebra, o: &Self) -> Self {
        self.add(alg, &o.scale(&LaurentInt::from_i64(-1)))
    }

    pub fn scale(&self, k: &LaurentInt) -> Self {
        let mut out = Self::zero(self.basis);
        for (c, v) in self.terms() {
            out.add_term(c, &(v * k));
        }
        out
    }

    pub fn in_basis(&self, alg: &SchurAlgebra, basis: Basis) -> Self {
        if basis == self.basis {
            return self.clone();
        }
        let mut out = Self::zero(basis);
        for (c, v) in self.terms() {
            let row = match self.basis {
                Basis::Standard => alg.standard_in_canonical(c),
                Basis::Canonical => alg.canonical_in_standard(c),
            };
            for (x, p) in row {
                out.add_term(*x, &(v * p));
            }
        }
        out
    }

    pub fn to_canonical(&self, alg: &SchurAlgebra) -> Self {
        self.in_basis(alg, Basis::Canonical)
    }

    pub fn to_standard(&self, alg: &SchurAlgebra) -> Self {
        self.in_basis(alg, Basis::Standard)
    }

    /// Product, returned in the canonical basis.
    pub fn mul(&self, alg: &SchurAlgebra, o: &Self) -> Self {
        let (x, y) = (self.to_canonical(alg), o.to_canonical(alg));
        let mut out = Self::zero(Basis::Canonical);
        for (a, u) in x.terms() {
            for (b, v) in y.terms() {
                if alg.col(a) != alg.row(b) {
                    continue;
                }
                let uv = u * v;
                for (c, g) in alg.product(a, b) {
                    out.add_term(*c, &(&uv * g));
                }
            }
        }
        out
    }

    /// The anti-automorphism sending `{C}` to `{C^t}` and `[C]` to `[C^t]`.
    pub fn psi(&self, alg: &SchurAlgebra) -> Self {
        let mut out = Self::zero(self.basis);
        for (c, v) in self.terms() {
            out.add_term(alg.transpose(c), v);
        }
        out
    }

    /// Equality as algebra elements, regardless of basis.
    pub fn same_as(&self, alg: &SchurAlgebra, o: &Self) -> bool {
        *self == o.in_basis(alg, self.basis)
    }
}
