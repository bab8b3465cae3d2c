use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::exact::LaurentInt;

/// Default cap on the number of group elements.
pub const DEFAULT_ORDER_BOUND: usize = 1200;

/// Index of a group element in [`WeylGroup`] order (ShortLex order of normal forms).
pub type Elem = usize;

/// A subset of the simple reflections, as a bitmask over zero-based indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Parabolic(u32);

impl Parabolic {
    pub fn empty() -> Self {
        Parabolic(0)
    }

    pub fn full(rank: usize) -> Self {
        Parabolic((1u32 << rank) - 1)
    }

    pub fn from_generators<I: IntoIterator<Item = usize>>(gens: I) -> Self {
        Parabolic(gens.into_iter().fold(0, |m, s| m | (1 << s)))
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn contains(&self, s: usize) -> bool {
        self.0 >> s & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, o: &Parabolic) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(|&s| self.contains(s))
    }

    /// Every subset of `{0..rank}`, ordered by bitmask.
    pub fn all_subsets(rank: usize) -> Vec<Parabolic> {
        (0..1u32 << rank).map(Parabolic).collect()
    }
}

impl fmt::Display for Parabolic {
    /// One-based and comma separated; `-` for the empty set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.generators().map(|s| (s + 1).to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Public view of a single element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylElement {
    pub normal_form: Vec<u8>,
    pub length: u32,
    pub left_descents: Parabolic,
    pub right_descents: Parabolic,
}

/// A finite Weyl group, fully enumerated.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeylGroup {
    datum: CartanDatum,
    roots: Vec<Vec<i64>>,
    n_pos: usize,
    words: Vec<Vec<u8>>,
    lengths: Vec<u32>,
    right: Vec<Vec<u32>>,
    left: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    right_desc: Vec<Parabolic>,
    left_desc: Vec<Parabolic>,
    bruhat: Vec<Vec<u64>>,
}

fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let mut roots = simple.clone();
    let mut seen: HashMap<Vec<i64>, ()> = roots.iter().map(|r| (r.clone(), ())).collect();
    let mut queue: VecDeque<Vec<i64>> = simple.into();
    while let Some(b) = queue.pop_front() {
        for (i, row) in cartan.iter().enumerate() {
            let pairing: i64 = row.iter().zip(&b).map(|(a, x)| a * x).sum();
            let mut g = b.clone();
            g[i] -= pairing;
            if g.iter().all(|&x| x >= 0) && g.iter().any(|&x| x > 0) && !seen.contains_key(&g) {
                seen.insert(g.clone(), ());
                roots.push(g.clone());
                queue.push_back(g);
            }
        }
    }
    roots
}

impl WeylGroup {
    pub fn new(datum: CartanDatum) -> Result<Self> {
        Self::with_bound(datum, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(datum: CartanDatum, bound: usize) -> Result<Self> {
        let expected = datum.expected_order();
        if expected > bound as u128 {
            return Err(Error::UnsupportedRank { order: expected.min(usize::MAX as u128) as usize, bound });
        }
        let cartan = datum.cartan_matrix();
        let rank = datum.rank();
        let pos = positive_roots(&cartan);
        let n_pos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let index: HashMap<&Vec<i64>, u16> = roots.iter().enumerate().map(|(i, r)| (r, i as u16)).collect();
        let gens: Vec<Vec<u16>> = (0..rank)
            .map(|i| {
                roots
                    .iter()
                    .map(|b| {
                        let pairing: i64 = cartan[i].iter().zip(b).map(|(a, x)| a * x).sum();
                        let mut g = b.clone();
                        g[i] -= pairing;
                        index[&g]
                    })
                    .collect()
            })
            .collect();

        let compose = |p: &[u16], q: &[u16]| -> Vec<u16> { q.iter().map(|&r| p[r as usize]).collect() };
        let identity: Vec<u16> = (0..roots.len() as u16).collect();
        let mut perms = vec![identity.clone()];
        let mut lookup: HashMap<Vec<u16>, usize> = HashMap::from([(identity, 0)]);
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut lengths = vec![0u32];
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut w = 0;
        while w < perms.len() {
            let mut row = Vec::with_capacity(rank);
            for (s, g) in gens.iter().enumerate() {
                let p = compose(&perms[w], g);
                let idx = match lookup.get(&p) {
                    Some(&i) => i,
                    None => {
                        let i = perms.len();
                        if i >= bound {
                            return Err(Error::UnsupportedRank { order: i + 1, bound });
                        }
                        let mut word = words[w].clone();
                        word.push(s as u8);
                        words.push(word);
                        lengths.push(lengths[w] + 1);
                        lookup.insert(p.clone(), i);
                        perms.push(p);
                        i
                    }
                };
                row.push(idx as u32);
            }
            right.push(row);
            w += 1;
        }
        let left: Vec<Vec<u32>> = perms
            .iter()
            .map(|p| gens.iter().map(|g| lookup[&compose(g, p)] as u32).collect())
            .collect();
        let inverse: Vec<u32> = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0u16; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i as u16;
                }
                lookup[&inv] as u32
            })
            .collect();
        let neg = |r: u16| r as usize >= n_pos;
        let right_desc: Vec<Parabolic> =
            perms.iter().map(|p| Parabolic::from_generators((0..rank).filter(|&s| neg(p[s])))).collect();
        let left_desc: Vec<Parabolic> =
            inverse.iter().map(|&i| right_desc[i as usize]).collect();

        let mut g = WeylGroup {
            datum,
            roots,
            n_pos,
            words,
            lengths,
            right,
            left,
            inverse,
            right_desc,
            left_desc,
            bruhat: Vec::new(),
        };
        debug_assert!(perms
            .iter()
            .enumerate()
            .all(|(w, p)| (0..n_pos).filter(|&r| neg(p[r])).count() as u32 == g.lengths[w]));
        g.bruhat = g.build_bruhat();
        Ok(g)
    }

    /// Lower Bruhat intervals as bitsets, using the lifting property:
    /// for a right descent `s` of `y`, the interval below `y` is the one below
    /// `ys` together with its right translate by `s`.
    fn build_bruhat(&self) -> Vec<Vec<u64>> {
        let n = self.order();
        let words = n.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
        for y in 0..n {
            let mut row = vec![0u64; words];
            match self.right_desc[y].generators().next() {
                None => row[0] = 1,
                Some(s) => {
                    let ys = self.mul_right(y, s);
                    let below = &rows[ys];
                    for x in 0..n {
                        if below[x / 64] >> (x % 64) & 1 == 1 {
                            let xs = self.mul_right(x, s);
                            row[x / 64] |= 1 << (x % 64);
                            row[xs / 64] |= 1 << (xs % 64);
                        }
                    }
                }
            }
            rows.push(row);
        }
        rows
    }

    pub fn datum(&self) -> CartanDatum {
        self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    pub fn n_positive_roots(&self) -> usize {
        self.n_pos
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.n_pos]
    }

    pub fn length(&self, w: Elem) -> u32 {
        self.lengths[w]
    }

    /// ShortLex-minimal reduced word, zero-based generators.
    pub fn word(&self, w: Elem) -> &[u8] {
        &self.words[w]
    }

    /// One-based word such as `121`, or `e` for the identity.
    pub fn word_string(&self, w: Elem) -> String {
        if w == 0 {
            return "e".into();
        }
        self.words[w].iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join("")
    }

    pub fn element(&self, w: Elem) -> WeylElement {
        WeylElement {
            normal_form: self.words[w].clone(),
            length: self.lengths[w],
            left_descents: self.left_desc[w],
            right_descents: self.right_desc[w],
        }
    }

    pub fn mul_right(&self, w: Elem, s: usize) -> Elem {
        self.right[w][s] as Elem
    }

    pub fn mul_left(&self, s: usize, w: Elem) -> Elem {
        self.left[w][s] as Elem
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.words[y].iter().fold(x, |acc, &s| self.mul_right(acc, s as usize))
    }

    pub fn inverse(&self, w: Elem) -> Elem {
        self.inverse[w] as Elem
    }

    pub fn from_word(&self, word: &[usize]) -> Elem {
        word.iter().fold(0, |acc, &s| self.mul_right(acc, s))
    }

    pub fn right_descents(&self, w: Elem) -> Parabolic {
        self.right_desc[w]
    }

    pub fn left_descents(&self, w: Elem) -> Parabolic {
        self.left_desc[w]
    }

    pub fn longest(&self) -> Elem {
        self.order() - 1
    }

    pub fn bruhat_leq(&self, x: Elem, y: Elem) -> bool {
        self.bruhat[y][x / 64] >> (x % 64) & 1 == 1
    }

    /// Elements of the parabolic subgroup `W_J`, ascending.
    pub fn parabolic_elements(&self, j: Parabolic) -> Vec<Elem> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let w = out[i];
            for s in j.generators() {
                let ws = self.mul_right(w, s);
                if !seen[ws] {
                    seen[ws] = true;
                    out.push(ws);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// The longest element of `W_J`.
    pub fn longest_in(&self, j: Parabolic) -> Elem {
        *self.parabolic_elements(j).iter().max_by_key(|&&w| self.lengths[w]).unwrap()
    }

    /// `sum_{w in Y} q^(-2 l(w))`.
    pub fn poincare<I: IntoIterator<Item = Elem>>(&self, elems: I) -> LaurentInt {
        let mut counts: HashMap<u32, i64> = HashMap::new();
        for w in elems {
            *counts.entry(self.lengths[w]).or_default() += 1;
        }
        LaurentInt::from_terms(counts.into_iter().map(|(l, c)| (-2 * l as i64, c.into())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanType;

    fn group(t: CartanType, n: usize) -> WeylGroup {
        WeylGroup::new(CartanDatum::new(t, n).unwrap()).unwrap()
    }

    #[test]
    fn small_orders_and_longest_lengths() {
        let a1 = group(CartanType::A, 1);
        assert_eq!(a1.order(), 2);
        let a2 = group(CartanType::A, 2);
        assert_eq!((a2.order(), a2.length(a2.longest())), (6, 3));
        let b2 = group(CartanType::B, 2);
        assert_eq!((b2.order(), b2.length(b2.longest())), (8, 4));
    }

    #[test]
    fn bruhat_examples_in_a2() {
        let g = group(CartanType::A, 2);
        let s1 = g.from_word(&[0]);
        let w0 = g.from_word(&[0, 1, 0]);
        assert!(g.bruhat_leq(s1, w0));
        assert!(!g.bruhat_leq(g.from_word(&[0, 1]), g.from_word(&[1, 0])));
        assert!(g.elements().all(|w| g.bruhat_leq(0, w)));
    }

    #[test]
    fn normal_forms_are_shortlex() {
        let g = group(CartanType::A, 2);
        assert_eq!(g.word(g.longest()), &[0, 1, 0]);
        assert_eq!(g.word_string(g.from_word(&[1, 0, 1])), "121");
    }

    #[test]
    fn e8_is_rejected_before_enumeration() {
        let e8 = CartanDatum::new(CartanType::E, 8).unwrap();
        assert!(matches!(WeylGroup::new(e8), Err(Error::UnsupportedRank { .. })));
    }

    #[test]
    fn poincare_of_a2() {
        let g = group(CartanType::A, 2);
        assert_eq!(g.poincare(g.elements()), LaurentInt::from_ints(-6, &[1, 0, 2, 0, 2, 0, 1]));
    }
}
