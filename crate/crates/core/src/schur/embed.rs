use std::collections::BTreeMap;

use super::algebra::SchurAlgebra;
use super::elt::{Basis, SchurElt};
use crate::exact::{LaurentInt, RatFunc};
use crate::hecke::{HeckeData, HeckeElt};

/// A block `num / den ⊗ e_{row,col}` of an element of `H_K ⊗ M`.
#[derive(Clone, Debug)]
pub struct EmbeddedBlock {
    pub num: HeckeElt,
    pub den: LaurentInt,
}

/// An element of `H_K ⊗ M`, the matrix algebra over the Hecke algebra
/// indexed by orbits, that the q-Schur algebra embeds into.
#[derive(Clone, Debug, Default)]
pub struct Embedded {
    blocks: BTreeMap<(usize, usize), EmbeddedBlock>,
}

impl Embedded {
    pub fn blocks(&self) -> impl Iterator<Item = (&(usize, usize), &EmbeddedBlock)> {
        self.blocks.iter()
    }

    pub fn block(&self, row: usize, col: usize) -> Option<&EmbeddedBlock> {
        self.blocks.get(&(row, col))
    }

    fn add_block(&mut self, key: (usize, usize), num: HeckeElt, den: LaurentInt) {
        match self.blocks.get_mut(&key) {
            None => {
                self.blocks.insert(key, EmbeddedBlock { num, den });
            }
            Some(b) if b.den == den => b.num = b.num.add(&num),
            Some(b) => {
                b.num = b.num.scale(&den).add(&num.scale(&b.den));
                b.den = &b.den * &den;
            }
        }
        if self.blocks[&key].num.is_zero() {
            self.blocks.remove(&key);
        }
    }

    pub fn mul(&self, hd: &HeckeData, o: &Self) -> Self {
        let mut out = Embedded::default();
        for (&(r, c), x) in &self.blocks {
            for (&(r2, c2), y) in &o.blocks {
                if c == r2 {
                    out.add_block((r, c2), x.num.mul(&hd.group, &y.num), &x.den * &y.den);
                }
            }
        }
        out
    }

    /// Equality after clearing denominators blockwise.
    pub fn equals(&self, o: &Self) -> bool {
        let keys: std::collections::BTreeSet<_> = self.blocks.keys().chain(o.blocks.keys()).collect();
        keys.into_iter().all(|k| match (self.blocks.get(k), o.blocks.get(k)) {
            (Some(a), Some(b)) => a.num.scale(&b.den) == b.num.scale(&a.den),
            (Some(a), None) | (None, Some(a)) => a.num.is_zero(),
            (None, None) => true,
        })
    }

    /// `(x, y)` with `(a ⊗ e_{rc}, b ⊗ e_{r'c'}) = tau(ab)` when `c = r'` and
    /// `r = c'`, where `tau` picks the coefficient of `H_e`.
    pub fn pairing(&self, hd: &HeckeData, o: &Self) -> RatFunc {
        let g = &hd.group;
        let mut total = RatFunc::zero();
        for (&(r, c), x) in &self.blocks {
            if let Some(y) = o.blocks.get(&(c, r)) {
                let mut tau = LaurentInt::zero();
                for (w, u) in x.num.terms() {
                    tau += &(u * &y.num.coeff(g.inverse(w)));
                }
                total = total.add(&RatFunc::new(tau, &x.den * &y.den));
            }
        }
        total
    }
}

/// The image of `x` in `H_K ⊗ M`.
///
/// `{C}` goes to `C_{w+} / (q^{l(w_row)} P_row) ⊗ e_{row,col}` and `[C]` to
/// `q^{l(w+) - l(w_row)} / P_row · sum_{w in coset} q^{-l(w)} H_w ⊗ e_{row,col}`.
pub fn phi_embed(hd: &HeckeData, alg: &SchurAlgebra, x: &SchurElt) -> Embedded {
    let xi = alg.xi();
    let g = &hd.group;
    let mut out = Embedded::default();
    for (c, v) in x.terms() {
        let ic = xi.get(c);
        let den = xi.orbit_poincare(ic.row).shift(xi.orbit_longest_len(ic.row) as i64);
        let num = match x.basis() {
            Basis::Canonical => hd.kl.element(ic.max_rep).scale(v),
            Basis::Standard => HeckeElt::from_terms(xi.members(c).iter().map(|&w| {
                (w, v.shift(ic.max_len as i64 - g.length(w) as i64))
            })),
        };
        out.add_block((ic.row, ic.col), num, den);
    }
    out
}

/// `(x, y)` computed through the embedding.
pub fn form_via_embedding(hd: &HeckeData, alg: &SchurAlgebra, x: &SchurElt, y: &SchurElt) -> RatFunc {
    phi_embed(hd, alg, x).pairing(hd, &phi_embed(hd, alg, y))
}

/// `(x, y)` from the diagonal values `([A], [A^t])`.
pub fn bilinear_form(alg: &SchurAlgebra, x: &SchurElt, y: &SchurElt) -> RatFunc {
    let (x, y) = (x.to_standard(alg), y.to_standard(alg));
    let mut total = RatFunc::zero();
    for (a, u) in x.terms() {
        let v = y.coeff(alg.transpose(a));
        if !v.is_zero() {
            total = total.add(&alg.form_value(a).mul_laurent(&(u * &v)));
        }
    }
    total
}

/// Gram matrix in the standard basis, as a sparse list of nonzero entries.
pub fn gram(alg: &SchurAlgebra) -> Vec<(usize, usize, RatFunc)> {
    (0..alg.len()).map(|a| (a, alg.transpose(a), alg.form_value(a))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CartanDatum, CartanType, WeylGroup};
    use crate::schur::OrbitSpec;

    fn setup(kind: CartanType, rank: usize, spec: &str) -> (HeckeData, SchurAlgebra) {
        let g = WeylGroup::new(CartanDatum::new(kind, rank).unwrap()).unwrap();
        let hd = HeckeData::build(g).unwrap();
        let alg = SchurAlgebra::build(&hd, &OrbitSpec::parse(spec, rank).unwrap()).unwrap();
        (hd, alg)
    }

    #[test]
    fn images_of_canonical_elements() {
        let (hd, alg) = setup(CartanType::A, 1, "1;-");
        let s = hd.group.longest();
        let img = phi_embed(&hd, &alg, &SchurElt::basis_elt(Basis::Canonical, 4));
        let b = img.block(1, 1).unwrap();
        assert_eq!(b.num, hd.kl.element(s));
        assert!(b.den.is_one());
        let img = phi_embed(&hd, &alg, &SchurElt::basis_elt(Basis::Canonical, 0));
        let b = img.block(0, 0).unwrap();
        assert_eq!(RatFunc::new(LaurentInt::one(), b.den.clone()), RatFunc::new(LaurentInt::one(), LaurentInt::from_ints(-1, &[1, 0, 1])));
    }

    #[test]
    fn embedding_is_multiplicative_and_unital() {
        for (kind, rank, spec) in [(CartanType::A, 1, "1;-"), (CartanType::B, 2, "1;2;-"), (CartanType::A, 2, "1,2;1;-")] {
            let (hd, alg) = setup(kind, rank, spec);
            let one = phi_embed(&hd, &alg, &SchurElt::identity(&alg));
            for a in 0..alg.len() {
                let x = SchurElt::basis_elt(Basis::Canonical, a);
                let px = phi_embed(&hd, &alg, &x);
                assert!(one.mul(&hd, &px).equals(&px));
                for b in 0..alg.len() {
                    let y = SchurElt::basis_elt(Basis::Standard, b);
                    let lhs = px.mul(&hd, &phi_embed(&hd, &alg, &y));
                    assert!(lhs.equals(&phi_embed(&hd, &alg, &x.mul(&alg, &y))), "{spec}: {a} {b}");
                }
            }
        }
    }

    #[test]
    fn form_values_and_agreement_with_embedding() {
        let (hd, alg) = setup(CartanType::A, 1, "1;-");
        let std = |c| SchurElt::basis_elt(Basis::Standard, c);
        assert_eq!(bilinear_form(&alg, &std(3), &std(3)), RatFunc::one());
        assert_eq!(bilinear_form(&alg, &std(4), &std(4)), RatFunc::one());
        let (hd2, alg2) = setup(CartanType::B, 2, "1;2;-");
        for (hd, alg) in [(&hd, &alg), (&hd2, &alg2)] {
            for a in 0..alg.len() {
                for b in 0..alg.len() {
                    let (x, y) = (std(a), std(b));
                    let f = bilinear_form(alg, &x, &y);
                    assert_eq!(f, form_via_embedding(hd, alg, &x, &y));
                    assert_eq!(f.is_zero(), b != alg.transpose(a));
                }
            }
        }
    }

    #[test]
    fn form_is_associative() {
        let (_, alg) = setup(CartanType::A, 2, "1;-");
        let can = |c| SchurElt::basis_elt(Basis::Canonical, c);
        for a in 0..alg.len() {
            for b in 0..alg.len() {
                for c in 0..alg.len() {
                    let (x, y, z) = (can(a), can(b), can(c));
                    assert_eq!(
                        bilinear_form(&alg, &x.mul(&alg, &y), &z),
                        bilinear_form(&alg, &x, &y.mul(&alg, &z))
                    );
                }
            }
        }
    }
}
