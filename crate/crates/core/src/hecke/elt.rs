use std::collections::BTreeMap;

use crate::coxeter::{Elem, WeylGroup};
use crate::exact::LaurentInt;

/// An element of the Hecke algebra in the standard basis `H_w`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElt {
    terms: BTreeMap<Elem, LaurentInt>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis element `H_w`.
    pub fn basis(w: Elem) -> Self {
        Self::term(w, LaurentInt::one())
    }

    pub fn term(w: Elem, c: LaurentInt) -> Self {
        let mut e = Self::zero();
        e.add_term(w, &c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Elem, LaurentInt)>>(it: I) -> Self {
        let mut e = Self::zero();
        for (w, c) in it {
            e.add_term(w, &c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: Elem) -> LaurentInt {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Elem, &LaurentInt)> {
        self.terms.iter().map(|(w, c)| (*w, c))
    }

    pub fn add_term(&mut self, w: Elem, c: &LaurentInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(*w, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&LaurentInt::from_i64(-1)))
    }

    pub fn scale(&self, c: &LaurentInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HeckeElt { terms: self.terms.iter().map(|(w, x)| (*w, x * c)).collect() }
    }

    /// `H_s * self`, from the quadratic relation
    /// `H_s H_w = H_sw` if `sw > w`, else `H_sw + (q^-1 - q) H_w`.
    pub fn mul_gen_left(&self, g: &WeylGroup, s: usize) -> Self {
        let corr = LaurentInt::from_ints(-1, &[1, 0, -1]);
        let mut out = Self::zero();
        for (&w, c) in &self.terms {
            let sw = g.mul_left(s, w);
            out.add_term(sw, c);
            if g.length(sw) < g.length(w) {
                out.add_term(w, &(c * &corr));
            }
        }
        out
    }

    /// `self * H_s`.
    pub fn mul_gen_right(&self, g: &WeylGroup, s: usize) -> Self {
        let corr = LaurentInt::from_ints(-1, &[1, 0, -1]);
        let mut out = Self::zero();
        for (&w, c) in &self.terms {
            let ws = g.mul_right(w, s);
            out.add_term(ws, c);
            if g.length(ws) < g.length(w) {
                out.add_term(w, &(c * &corr));
            }
        }
        out
    }

    /// Product in the standard basis.
    pub fn mul(&self, g: &WeylGroup, o: &Self) -> Self {
        let mut out = Self::zero();
        for (&x, c) in &self.terms {
            let mut prod = o.scale(c);
            for &s in g.word(x).iter().rev() {
                prod = prod.mul_gen_left(g, s as usize);
            }
            out = out.add(&prod);
        }
        out
    }

    /// The bar involution: `q -> q^-1` on scalars and `H_w -> (H_{w^-1})^-1`,
    /// where `(H_s)^-1 = H_s + q - q^-1`.
    pub fn bar(&self, g: &WeylGroup) -> Self {
        let shift = LaurentInt::from_ints(-1, &[-1, 0, 1]);
        let mut out = Self::zero();
        for (&w, c) in &self.terms {
            let mut img = Self::term(0, c.bar());
            for &s in g.word(w) {
                let s = s as usize;
                img = img.mul_gen_right(g, s).add(&img.scale(&shift));
            }
            out = out.add(&img);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CartanDatum, CartanType};

    #[test]
    fn quadratic_relation() {
        let g = WeylGroup::new(CartanDatum::new(CartanType::A, 1).unwrap()).unwrap();
        let hs = HeckeElt::basis(1);
        let sq = hs.mul(&g, &hs);
        assert_eq!(sq.coeff(0), LaurentInt::one());
        assert_eq!(sq.coeff(1), LaurentInt::from_ints(-1, &[1, 0, -1]));
        let inv = hs.bar(&g);
        assert_eq!(hs.mul(&g, &inv), HeckeElt::basis(0));
    }

    #[test]
    fn lengths_add_in_a2() {
        let g = WeylGroup::new(CartanDatum::new(CartanType::A, 2).unwrap()).unwrap();
        let (s1, s2) = (g.from_word(&[0]), g.from_word(&[1]));
        let p = HeckeElt::basis(s1).mul(&g, &HeckeElt::basis(s2));
        assert_eq!(p, HeckeElt::basis(g.from_word(&[0, 1])));
    }
}
