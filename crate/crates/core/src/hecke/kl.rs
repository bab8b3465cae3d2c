use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::elt::HeckeElt;
use crate::coxeter::{Elem, WeylGroup};
use crate::error::{Error, Result};
use crate::exact::LaurentInt;

/// The Kazhdan–Lusztig basis: `C_w = sum_x p_{x,w} H_x`, with `p_{w,w} = 1`
/// and `p_{x,w}` in `qZ[q]` for `x < w`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KlTable {
    polys: Vec<BTreeMap<Elem, LaurentInt>>,
    /// `mu[w]` lists `(z, mu(z, w))` for `z < w` with nonzero mu.
    mu: Vec<Vec<(Elem, i64)>>,
}

impl KlTable {
    /// Builds the basis by induction on length from
    /// `C_s C_v = C_sv + sum_{z < v, sz < z} mu(z, v) C_z` for `sv > v`.
    pub fn build(g: &WeylGroup) -> Result<Self> {
        let n = g.order();
        let mut polys: Vec<BTreeMap<Elem, LaurentInt>> = Vec::with_capacity(n);
        let mut mu: Vec<Vec<(Elem, i64)>> = Vec::with_capacity(n);
        let q = LaurentInt::q_pow(1);
        for w in g.elements() {
            let c_w = match g.left_descents(w).generators().next() {
                None => HeckeElt::basis(w),
                Some(s) => {
                    let v = g.mul_left(s, w);
                    let c_v = HeckeElt::from_terms(polys[v].iter().map(|(x, p)| (*x, p.clone())));
                    let mut c = c_v.mul_gen_left(g, s).add(&c_v.scale(&q));
                    for &(z, m) in &mu[v] {
                        if g.left_descents(z).contains(s) {
                            let c_z = polys[z].iter().map(|(x, p)| (*x, p.scale(&m.into())));
                            c = c.sub(&HeckeElt::from_terms(c_z));
                        }
                    }
                    c
                }
            };
            let mut row = BTreeMap::new();
            let mut mus = Vec::new();
            for (x, p) in c_w.terms() {
                if x == w {
                    if !p.is_one() {
                        return Err(Error::PositivityViolation(format!("p_(w,w) = {p} for w = {}", g.word_string(w))));
                    }
                } else if p.valuation().unwrap() < 1 || !p.is_nonneg() {
                    return Err(Error::PositivityViolation(format!(
                        "p_({},{}) = {p}",
                        g.word_string(x),
                        g.word_string(w)
                    )));
                }
                let m = p.coeff(1);
                if x != w && !m.is_zero() {
                    let m = m.to_i64().expect("mu fits in i64");
                    mus.push((x, m));
                }
                row.insert(x, p.clone());
            }
            polys.push(row);
            mu.push(mus);
        }
        Ok(KlTable { polys, mu })
    }

    /// `p_{x,w}`.
    pub fn poly(&self, x: Elem, w: Elem) -> LaurentInt {
        self.polys[w].get(&x).cloned().unwrap_or_default()
    }

    /// Nonzero entries of the column `p_{., w}`.
    pub fn column(&self, w: Elem) -> impl Iterator<Item = (Elem, &LaurentInt)> {
        self.polys[w].iter().map(|(x, p)| (*x, p))
    }

    /// `C_w` in the standard basis.
    pub fn element(&self, w: Elem) -> HeckeElt {
        HeckeElt::from_terms(self.column(w).map(|(x, p)| (x, p.clone())))
    }

    pub fn mu(&self, z: Elem, w: Elem) -> i64 {
        self.mu[w].iter().find(|(x, _)| *x == z).map_or(0, |(_, m)| *m)
    }

    pub fn mu_list(&self, w: Elem) -> &[(Elem, i64)] {
        &self.mu[w]
    }

    /// Expresses an element of the standard basis in the KL basis by
    /// triangular elimination from the top.
    pub fn to_kl_basis(&self, g: &WeylGroup, h: &HeckeElt) -> Vec<LaurentInt> {
        let mut rest = h.clone();
        let mut out = vec![LaurentInt::zero(); g.order()];
        while let Some((w, c)) = rest.terms().max_by_key(|(w, _)| (g.length(*w), *w)).map(|(w, c)| (w, c.clone())) {
            rest = rest.sub(&self.element(w).scale(&c));
            out[w] = c;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CartanDatum, CartanType};

    fn group(t: CartanType, n: usize) -> WeylGroup {
        WeylGroup::new(CartanDatum::new(t, n).unwrap()).unwrap()
    }

    #[test]
    fn simple_reflections() {
        let g = group(CartanType::B, 2);
        let kl = KlTable::build(&g).unwrap();
        for s in 0..2 {
            let w = g.from_word(&[s]);
            assert_eq!(kl.poly(0, w), LaurentInt::q_pow(1));
            assert_eq!(kl.mu(0, w), 1);
        }
    }

    #[test]
    fn longest_element_of_a2() {
        let g = group(CartanType::A, 2);
        let kl = KlTable::build(&g).unwrap();
        let w0 = g.longest();
        for x in g.elements() {
            assert_eq!(kl.poly(x, w0), LaurentInt::q_pow(3 - g.length(x) as i64));
        }
    }

    #[test]
    fn kl_elements_are_bar_invariant() {
        let g = group(CartanType::G, 2);
        let kl = KlTable::build(&g).unwrap();
        for w in g.elements() {
            let c = kl.element(w);
            assert_eq!(c.bar(&g), c);
        }
    }
}
