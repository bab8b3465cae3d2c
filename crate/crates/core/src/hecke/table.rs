use rayon::prelude::*;

use super::kl::KlTable;
use crate::coxeter::{Elem, WeylGroup};
use crate::error::{Error, Result};
use crate::exact::LaurentInt;

/// Structure constants `h_{x,y}^z` of the KL basis: `C_x C_y = sum_z h_{x,y}^z C_z`.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    /// `rows[x][y]` is the sparse expansion of `C_x C_y`, ascending in `z`.
    rows: Vec<Vec<Vec<(Elem, LaurentInt)>>>,
}

/// Left multiplication by `C_s` in the KL basis:
/// `C_s C_w = (q + q^-1) C_w` if `sw < w`, else `C_sw + sum_{z < w, sz < z} mu(z, w) C_z`.
pub(crate) struct KlLeftAction<'a> {
    g: &'a WeylGroup,
    /// `corrections[w][s]` holds `(z, mu(z, w))` with `sz < z`.
    corrections: Vec<Vec<Vec<(Elem, i64)>>>,
}

impl<'a> KlLeftAction<'a> {
    pub(crate) fn new(g: &'a WeylGroup, kl: &KlTable) -> Self {
        let corrections = g
            .elements()
            .map(|w| {
                (0..g.rank())
                    .map(|s| kl.mu_list(w).iter().copied().filter(|&(z, _)| g.left_descents(z).contains(s)).collect())
                    .collect()
            })
            .collect();
        KlLeftAction { g, corrections }
    }

    pub(crate) fn apply(&self, s: usize, v: &[LaurentInt]) -> Vec<LaurentInt> {
        let two = LaurentInt::from_ints(-1, &[1, 0, 1]);
        let mut out = vec![LaurentInt::zero(); v.len()];
        for (w, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sw = self.g.mul_left(s, w);
            if self.g.length(sw) < self.g.length(w) {
                out[w] += &(c * &two);
            } else {
                out[sw] += c;
                for &(z, m) in &self.corrections[w][s] {
                    out[z] += &c.scale(&m.into());
                }
            }
        }
        out
    }

    /// `C_x * v` for every `x`, by recursion on the length of `x`:
    /// `C_x = C_s C_x' - sum mu(z, x') C_z` with `x = s x' > x'`.
    pub(crate) fn all_left_products(&self, kl: &KlTable, v: Vec<LaurentInt>) -> Vec<Vec<LaurentInt>> {
        let g = self.g;
        let mut out: Vec<Vec<LaurentInt>> = Vec::with_capacity(g.order());
        for x in g.elements() {
            let row = match g.left_descents(x).generators().next() {
                None => v.clone(),
                Some(s) => {
                    let xp = g.mul_left(s, x);
                    let mut r = self.apply(s, &out[xp]);
                    for &(z, m) in kl.mu_list(xp) {
                        if g.left_descents(z).contains(s) {
                            let m = LaurentInt::from_i64(m);
                            for (a, b) in r.iter_mut().zip(&out[z]) {
                                if !b.is_zero() {
                                    *a -= &(b * &m);
                                }
                            }
                        }
                    }
                    r
                }
            };
            out.push(row);
        }
        out
    }
}

impl StructureConstants {
    pub fn build(g: &WeylGroup, kl: &KlTable) -> Result<Self> {
        let action = KlLeftAction::new(g, kl);
        let n = g.order();
        let columns: Vec<Vec<Vec<LaurentInt>>> = (0..n)
            .into_par_iter()
            .map(|y| {
                let mut unit = vec![LaurentInt::zero(); n];
                unit[y] = LaurentInt::one();
                action.all_left_products(kl, unit)
            })
            .collect();
        let mut rows = vec![vec![Vec::new(); n]; n];
        for (y, col) in columns.into_iter().enumerate() {
            for (x, prod) in col.into_iter().enumerate() {
                let sparse: Vec<(Elem, LaurentInt)> =
                    prod.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                if let Some((z, c)) = sparse.iter().find(|(_, c)| !c.is_nonneg()) {
                    return Err(Error::PositivityViolation(format!(
                        "h_({},{})^{} = {c}",
                        g.word_string(x),
                        g.word_string(y),
                        g.word_string(*z)
                    )));
                }
                rows[x][y] = sparse;
            }
        }
        Ok(StructureConstants { rows })
    }

    pub fn product(&self, x: Elem, y: Elem) -> &[(Elem, LaurentInt)] {
        &self.rows[x][y]
    }

    pub fn get(&self, x: Elem, y: Elem, z: Elem) -> LaurentInt {
        self.rows[x][y]
            .binary_search_by_key(&z, |(w, _)| *w)
            .map(|i| self.rows[x][y][i].1.clone())
            .unwrap_or_default()
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CartanDatum, CartanType};

    #[test]
    fn a2_examples() {
        let g = WeylGroup::new(CartanDatum::new(CartanType::A, 2).unwrap()).unwrap();
        let kl = KlTable::build(&g).unwrap();
        let h = StructureConstants::build(&g, &kl).unwrap();
        let s1 = g.from_word(&[0]);
        let s2s1 = g.from_word(&[1, 0]);
        let p = h.product(s1, s2s1);
        assert_eq!(p, &[(s1, LaurentInt::one()), (g.longest(), LaurentInt::one())]);
        assert_eq!(h.get(s1, s1, s1), LaurentInt::from_ints(-1, &[1, 0, 1]));
        for y in g.elements() {
            assert_eq!(h.product(0, y), &[(y, LaurentInt::one())]);
        }
    }
}
