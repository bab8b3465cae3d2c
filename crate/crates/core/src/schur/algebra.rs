use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spec::OrbitSpec;
use super::xi::XiSet;
use crate::coxeter::CartanDatum;
use crate::error::{Error, Result};
use crate::exact::{LaurentInt, RatFunc};
use crate::hecke::HeckeData;
use crate::preorder::{Partition, Preorder};

/// Sparse row of Laurent coefficients indexed by basis position.
pub type LaurentRow = Vec<(usize, LaurentInt)>;
/// Sparse row of integer coefficients indexed by basis position.
pub type IntRow = Vec<(usize, i64)>;

/// A q-Schur algebra with its canonical-basis structure constants and all
/// derived cell data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SchurAlgebra {
    datum: CartanDatum,
    xi: XiSet,
    /// `g[a][b]`: expansion of `{A}{B}` in the canonical basis.
    g: Vec<Vec<LaurentRow>>,
    /// `{C}` expanded in the standard basis (same block, KL polynomials).
    to_standard: Vec<LaurentRow>,
    /// `[C]` expanded in the canonical basis.
    from_standard: Vec<LaurentRow>,
    a_values: Vec<u32>,
    /// `j[a][b]`: expansion of `t_A t_B` in the `t` basis.
    j: Vec<Vec<IntRow>>,
    delta: Vec<Option<i64>>,
    n_c: Vec<Option<i64>>,
    distinguished: Vec<usize>,
    distinguished_by_delta: Vec<usize>,
    distinguished_note: Option<String>,
    left: Partition,
    right: Partition,
    two_sided: Partition,
    left_order: Preorder,
    right_order: Preorder,
    two_sided_order: Preorder,
    /// `phi[c]`: the image of `{C}` in the `t` basis.
    phi: Vec<LaurentRow>,
    /// `([A], [A^t])`.
    form: Vec<RatFunc>,
    /// Its inverse, which is a Laurent polynomial.
    form_inverse: Vec<LaurentInt>,
}

fn merge(row: &mut BTreeMap<usize, LaurentInt>, k: usize, v: &LaurentInt) {
    let e = row.entry(k).or_default();
    *e += v;
    if e.is_zero() {
        row.remove(&k);
    }
}

impl SchurAlgebra {
    pub fn build(hd: &HeckeData, spec: &OrbitSpec) -> Result<Self> {
        let g = &hd.group;
        let xi = XiSet::build(g, spec);
        let n = xi.len();
        let k = xi.n_orbits();

        // C_{w_A+} C_{w_B+} = q^{l(w_mu)} P_mu sum_C g_{A,B}^C C_{w_C+}
        let divisors: Vec<LaurentInt> =
            (0..k).map(|m| xi.orbit_poincare(m).shift(xi.orbit_longest_len(m) as i64)).collect();
        let gtab: Vec<Vec<LaurentRow>> = (0..n)
            .into_par_iter()
            .map(|a| -> Result<Vec<LaurentRow>> {
                let ia = xi.get(a);
                let mut rows = vec![Vec::new(); n];
                for &b in (0..k).flat_map(|c| xi.block(ia.col, c)) {
                    let ib = xi.get(b);
                    let mut row = Vec::new();
                    for (z, c) in hd.h.product(ia.max_rep, ib.max_rep) {
                        let target = xi.find(ia.row, ib.col, *z).ok_or_else(|| {
                            Error::CrossCheckMismatch(format!(
                                "C_{} occurs in a product but is not a longest double coset representative",
                                g.word_string(*z)
                            ))
                        })?;
                        let v = c.exact_div(&divisors[ia.col])?;
                        if !v.is_nonneg() {
                            return Err(Error::PositivityViolation(format!(
                                "g_({},{})^{} = {v}",
                                xi.label(g, a),
                                xi.label(g, b),
                                xi.label(g, target)
                            )));
                        }
                        row.push((target, v));
                    }
                    row.sort_by_key(|(c, _)| *c);
                    rows[b] = row;
                }
                Ok(rows)
            })
            .collect::<Result<_>>()?;

        let to_standard: Vec<LaurentRow> = (0..n)
            .map(|c| {
                let ic = xi.get(c);
                xi.block(ic.row, ic.col)
                    .iter()
                    .filter_map(|&cp| {
                        let p = hd.kl.poly(xi.get(cp).max_rep, ic.max_rep);
                        (!p.is_zero()).then_some((cp, p))
                    })
                    .collect()
            })
            .collect();

        let mut from_standard: Vec<LaurentRow> = vec![Vec::new(); n];
        let mut by_len: Vec<usize> = (0..n).collect();
        by_len.sort_by_key(|&c| xi.get(c).max_len);
        for &c in &by_len {
            let mut row = BTreeMap::new();
            row.insert(c, LaurentInt::one());
            for (cp, p) in &to_standard[c] {
                if *cp != c {
                    for (x, v) in &from_standard[*cp] {
                        merge(&mut row, *x, &-(p * v));
                    }
                }
            }
            from_standard[c] = row.into_iter().collect();
        }

        // a(C) = max { n_{A,B}^C + l(w_co(A)) : g_{A,B}^C != 0 }
        let mut a_values = vec![0u32; n];
        for (a, rows) in gtab.iter().enumerate() {
            let shift = xi.orbit_longest_len(xi.get(a).col);
            for row in rows {
                for (c, v) in row {
                    let pole = (-v.valuation().unwrap()).max(0) as u32;
                    a_values[*c] = a_values[*c].max(pole + shift);
                }
            }
        }
        for (c, &found) in a_values.iter().enumerate() {
            let expected = hd.cells.a(xi.get(c).max_rep);
            if found != expected {
                return Err(Error::CrossCheckMismatch(format!(
                    "a-value of {} is {} but the a-value of its longest element is {expected}",
                    xi.label(g, c),
                    found
                )));
            }
        }

        let j: Vec<Vec<IntRow>> = gtab
            .iter()
            .enumerate()
            .map(|(a, rows)| {
                let shift = xi.orbit_longest_len(xi.get(a).col) as i64;
                rows.iter()
                    .map(|row| {
                        row.iter()
                            .filter_map(|(c, v)| {
                                let x = v.coeff(shift - a_values[*c] as i64).to_i64().expect("small constant");
                                (x != 0).then_some((*c, x))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();

        let mut left_edges = Vec::new();
        let mut right_edges = Vec::new();
        for (a, rows) in gtab.iter().enumerate() {
            for (b, row) in rows.iter().enumerate() {
                for (c, _) in row {
                    left_edges.push((b, *c));
                    right_edges.push((a, *c));
                }
            }
        }
        let left_order = Preorder::from_edges(n, left_edges.iter().copied());
        let right_order = Preorder::from_edges(n, right_edges.iter().copied());
        let two_sided_order = Preorder::from_edges(n, left_edges.into_iter().chain(right_edges));
        let (left, right, two_sided) = (left_order.partition(), right_order.partition(), two_sided_order.partition());
        let wc = &hd.cells;
        for c in 0..n {
            for d in 0..n {
                let (ic, id) = (xi.get(c), xi.get(d));
                let l = ic.col == id.col && wc.left.same(ic.max_rep, id.max_rep);
                let r = ic.row == id.row && wc.right.same(ic.max_rep, id.max_rep);
                let lr = wc.two_sided.same(ic.max_rep, id.max_rep);
                if l != left.same(c, d) || r != right.same(c, d) || lr != two_sided.same(c, d) {
                    return Err(Error::CrossCheckMismatch(format!(
                        "cells of {} and {} disagree with the cells of their longest elements",
                        xi.label(g, c),
                        xi.label(g, d)
                    )));
                }
            }
        }

        let mut delta = vec![None; n];
        let mut n_c = vec![None; n];
        for c in 0..n {
            let ic = xi.get(c);
            if ic.row != ic.col {
                continue;
            }
            let p = hd.kl.poly(xi.orbit_longest(ic.row), ic.max_rep);
            if let Some(v) = p.valuation() {
                delta[c] = Some(v + xi.orbit_longest_len(ic.row) as i64);
                n_c[c] = p.trailing_coeff().and_then(|x| x.to_i64());
            }
        }
        let distinguished_by_delta: Vec<usize> =
            (0..n).filter(|&c| delta[c] == Some(a_values[c] as i64)).collect();

        let jcoeff = |a: usize, b: usize, c: usize| -> i64 {
            j[a][b].iter().find(|(x, _)| *x == c).map_or(0, |(_, v)| *v)
        };
        let mut distinguished = Vec::new();
        for cell in left.classes() {
            let cands: Vec<usize> = cell
                .iter()
                .copied()
                .filter(|&d| {
                    let id = xi.get(d);
                    id.row == id.col
                        && cell.iter().all(|&c| jcoeff(xi.transpose(c), c, xi.transpose(d)) != 0)
                })
                .collect();
            match cands.as_slice() {
                [d] => distinguished.push(*d),
                _ => {
                    return Err(Error::CrossCheckMismatch(format!(
                        "left cell containing {} has {} distinguished candidates",
                        xi.label(g, cell[0]),
                        cands.len()
                    )))
                }
            }
        }
        distinguished.sort_unstable();
        let distinguished_note = (distinguished != distinguished_by_delta).then(|| {
            format!(
                "distinguished set from the gamma-table {:?} differs from the valuation route {:?}",
                distinguished, distinguished_by_delta
            )
        });

        let phi: Vec<LaurentRow> = (0..n)
            .map(|c| {
                let mut row = BTreeMap::new();
                for &d in &distinguished {
                    for (x, v) in &gtab[c][d] {
                        if a_values[*x] == a_values[d] {
                            merge(&mut row, *x, v);
                        }
                    }
                }
                row.into_iter().collect()
            })
            .collect();

        let form: Vec<RatFunc> = (0..n).map(|c| operational_form(g, &xi, c)).collect();
        let form_inverse = form
            .iter()
            .map(|f| {
                f.inv().and_then(|x| x.to_laurent()).ok_or_else(|| {
                    Error::CrossCheckMismatch(format!("form value {f} has no Laurent inverse"))
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let alg = SchurAlgebra {
            datum: g.datum(),
            xi,
            g: gtab,
            to_standard,
            from_standard,
            a_values,
            j,
            delta,
            n_c,
            distinguished,
            distinguished_by_delta,
            distinguished_note,
            left,
            right,
            two_sided,
            left_order,
            right_order,
            two_sided_order,
            phi,
            form,
            form_inverse,
        };
        alg.check_phi_homomorphism()?;
        Ok(alg)
    }

    /// Restores lookup tables after deserialization.
    pub fn reindex(&mut self) {
        self.xi.reindex();
    }

    pub fn datum(&self) -> CartanDatum {
        self.datum
    }

    pub fn xi(&self) -> &XiSet {
        &self.xi
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    pub fn transpose(&self, c: usize) -> usize {
        self.xi.transpose(c)
    }

    pub fn row(&self, c: usize) -> usize {
        self.xi.get(c).row
    }

    pub fn col(&self, c: usize) -> usize {
        self.xi.get(c).col
    }

    /// `{A}{B}` in the canonical basis.
    pub fn product(&self, a: usize, b: usize) -> &[(usize, LaurentInt)] {
        &self.g[a][b]
    }

    /// `g_{A,B}^C`.
    pub fn g(&self, a: usize, b: usize, c: usize) -> LaurentInt {
        let row = &self.g[a][b];
        row.binary_search_by_key(&c, |(x, _)| *x).map(|i| row[i].1.clone()).unwrap_or_default()
    }

    /// `{C}` in the standard basis.
    pub fn canonical_in_standard(&self, c: usize) -> &[(usize, LaurentInt)] {
        &self.to_standard[c]
    }

    /// `[C]` in the canonical basis.
    pub fn standard_in_canonical(&self, c: usize) -> &[(usize, LaurentInt)] {
        &self.from_standard[c]
    }

    pub fn a(&self, c: usize) -> u32 {
        self.a_values[c]
    }

    pub fn a_values(&self) -> &[u32] {
        &self.a_values
    }

    /// `t_A t_B` in the `t` basis.
    pub fn j_product(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.j[a][b]
    }

    /// Coefficient of `t_C` in `t_A t_B`.
    pub fn j_coeff(&self, a: usize, b: usize, c: usize) -> i64 {
        let row = &self.j[a][b];
        row.binary_search_by_key(&c, |(x, _)| *x).map_or(0, |i| row[i].1)
    }

    /// The gamma constant with upper index `C`: the coefficient of `t_{C^t}` in `t_A t_B`.
    pub fn gamma(&self, a: usize, b: usize, c: usize) -> i64 {
        self.j_coeff(a, b, self.transpose(c))
    }

    pub fn delta(&self, c: usize) -> Option<i64> {
        self.delta[c]
    }

    pub fn n_c(&self, c: usize) -> Option<i64> {
        self.n_c[c]
    }

    pub fn distinguished(&self) -> &[usize] {
        &self.distinguished
    }

    pub fn distinguished_by_delta(&self) -> &[usize] {
        &self.distinguished_by_delta
    }

    pub fn distinguished_note(&self) -> Option<&str> {
        self.distinguished_note.as_deref()
    }

    pub fn is_distinguished(&self, c: usize) -> bool {
        self.distinguished.binary_search(&c).is_ok()
    }

    /// The distinguished element of the left cell of `c`.
    pub fn distinguished_of(&self, c: usize) -> usize {
        *self.distinguished.iter().find(|&&d| self.left.same(c, d)).expect("every left cell has one")
    }

    pub fn left_cells(&self) -> &Partition {
        &self.left
    }

    pub fn right_cells(&self) -> &Partition {
        &self.right
    }

    pub fn two_sided_cells(&self) -> &Partition {
        &self.two_sided
    }

    pub fn left_order(&self) -> &Preorder {
        &self.left_order
    }

    pub fn right_order(&self) -> &Preorder {
        &self.right_order
    }

    pub fn two_sided_order(&self) -> &Preorder {
        &self.two_sided_order
    }

    /// `Phi({C})` in the `t` basis.
    pub fn phi(&self, c: usize) -> &[(usize, LaurentInt)] {
        &self.phi[c]
    }

    /// `([A], [A^t])`.
    pub fn form_value(&self, c: usize) -> RatFunc {
        self.form[c].clone()
    }

    /// `([A], [A^t])^-1`.
    pub fn form_inverse(&self, c: usize) -> &LaurentInt {
        &self.form_inverse[c]
    }

    /// Product of two sparse elements of `J` over Laurent scalars.
    pub fn j_multiply(&self, x: &[(usize, LaurentInt)], y: &[(usize, LaurentInt)]) -> LaurentRow {
        let mut out = BTreeMap::new();
        for (a, u) in x {
            for (b, v) in y {
                let uv = u * v;
                for (c, k) in &self.j[*a][*b] {
                    merge(&mut out, *c, &uv.scale(&(*k).into()));
                }
            }
        }
        out.into_iter().collect()
    }

    fn check_phi_homomorphism(&self) -> Result<()> {
        let n = self.len();
        (0..n).into_par_iter().try_for_each(|a| {
            for b in 0..n {
                let lhs = self.j_multiply(&self.phi[a], &self.phi[b]);
                let mut rhs = BTreeMap::new();
                for (c, v) in &self.g[a][b] {
                    for (x, u) in &self.phi[*c] {
                        merge(&mut rhs, *x, &(v * u));
                    }
                }
                if lhs != rhs.into_iter().collect::<Vec<_>>() {
                    return Err(Error::HomomorphismViolation(format!("Phi fails on the pair ({a}, {b})")));
                }
            }
            Ok(())
        })
    }
}

/// `([A], [A^t])` from the definition through the embedding into
/// `H ⊗ M`: the product of the two row and column normalizations and
/// `(H_A, H_{A^t})_1 = sum over the coset of q^{-2 l(w)}`.
pub fn operational_form(g: &crate::coxeter::WeylGroup, xi: &XiSet, c: usize) -> RatFunc {
    let ic = xi.get(c);
    let (lg, ln) = (xi.orbit_longest_len(ic.row) as i64, xi.orbit_longest_len(ic.col) as i64);
    let num = g.poincare(xi.members(c).iter().copied()).shift(2 * ic.max_len as i64 - lg - ln);
    let den = xi.orbit_poincare(ic.row) * xi.orbit_poincare(ic.col);
    RatFunc::new(num, den)
}

/// The closed formula printed alongside the form's definition,
/// `q^{2 l(w_A+) - l(w_row) - l(w_col)} / P(W_row ∩ g W_col g^-1)`.
pub fn printed_form(g: &crate::coxeter::WeylGroup, xi: &XiSet, c: usize) -> RatFunc {
    let ic = xi.get(c);
    let (lg, ln) = (xi.orbit_longest_len(ic.row) as i64, xi.orbit_longest_len(ic.col) as i64);
    let den = g.intersection_poincare(xi.orbit(ic.row), ic.min_rep, xi.orbit(ic.col));
    RatFunc::new(LaurentInt::q_pow(2 * ic.max_len as i64 - lg - ln), den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CartanDatum, CartanType, WeylGroup};

    fn build(kind: CartanType, rank: usize, spec: &str) -> SchurAlgebra {
        let g = WeylGroup::new(CartanDatum::new(kind, rank).unwrap()).unwrap();
        let spec = OrbitSpec::parse(spec, rank).unwrap();
        SchurAlgebra::build(&HeckeData::build(g).unwrap(), &spec).unwrap()
    }

    #[test]
    fn rank_one_with_two_orbits() {
        let s = build(CartanType::A, 1, "1;-");
        assert_eq!(s.len(), 5);
        let qq = LaurentInt::from_ints(-1, &[1, 0, 1]);
        assert_eq!(s.product(1, 2), &[(0, qq)]);
        assert_eq!(s.product(2, 1), &[(4, LaurentInt::one())]);
        assert_eq!(s.distinguished(), &[0, 3, 4]);
        assert_eq!(s.distinguished_by_delta(), &[0, 3, 4]);
        assert_eq!((0..5).map(|c| s.delta(c)).collect::<Vec<_>>(), [Some(1), None, None, Some(0), Some(1)]);
        assert_eq!(s.a_values(), &[1, 1, 1, 0, 1]);
        assert_eq!(s.two_sided_cells().len(), 2);
        assert_eq!(s.left_cells().len(), 3);
    }

    #[test]
    fn regular_orbit_reproduces_hecke_constants() {
        let g = WeylGroup::new(CartanDatum::new(CartanType::B, 2).unwrap()).unwrap();
        let hd = HeckeData::build(g).unwrap();
        let s = SchurAlgebra::build(&hd, &OrbitSpec::regular()).unwrap();
        for a in 0..s.len() {
            for b in 0..s.len() {
                let (x, y) = (s.xi().get(a).max_rep, s.xi().get(b).max_rep);
                for c in 0..s.len() {
                    assert_eq!(s.g(a, b, c), hd.h.get(x, y, s.xi().get(c).max_rep));
                }
            }
        }
    }

    #[test]
    fn form_inverse_is_laurent_and_printed_formula_drops_a_power() {
        let g = WeylGroup::new(CartanDatum::new(CartanType::A, 1).unwrap()).unwrap();
        let hd = HeckeData::build(g.clone()).unwrap();
        let s = SchurAlgebra::build(&hd, &OrbitSpec::parse("1;-", 1).unwrap()).unwrap();
        assert_eq!(operational_form(&g, s.xi(), 4), RatFunc::one());
        assert_eq!(printed_form(&g, s.xi(), 4), RatFunc::from_laurent(LaurentInt::q_pow(2)));
        assert_eq!(operational_form(&g, s.xi(), 3), RatFunc::one());
    }

    #[test]
    fn b2_all_subsets_builds() {
        let s = build(CartanType::B, 2, "1,2;1;2;-");
        assert_eq!(s.len(), 41);
        assert!(s.distinguished_note().is_none());
    }
}
