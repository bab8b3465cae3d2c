//! Independent recomputations checked against the engine: Bruhat order from
//! subwords, KL polynomials from R-polynomials, and structure constants from
//! brute-force multiplication in the standard basis.

use std::collections::BTreeMap;

use cellq_core::coxeter::{CartanDatum, CartanType, Elem, WeylGroup};
use cellq_core::hecke::HeckeData;
use cellq_core::schur::{OrbitSpec, SchurAlgebra};
use cellq_core::LaurentInt;

/// Laurent polynomial as exponent -> coefficient, zero terms removed.
type Poly = BTreeMap<i64, i64>;

fn mono(c: i64, e: i64) -> Poly {
    if c == 0 {
        Poly::new()
    } else {
        Poly::from([(e, c)])
    }
}

fn add_into(acc: &mut Poly, p: &Poly, scale: i64, shift: i64) {
    for (&e, &c) in p {
        let v = acc.entry(e + shift).or_insert(0);
        *v += c * scale;
        if *v == 0 {
            acc.remove(&(e + shift));
        }
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&e, &c) in a {
        add_into(&mut out, b, c, e);
    }
    out
}

fn from_engine(p: &LaurentInt) -> Poly {
    p.terms().map(|(e, c)| (e, i64::try_from(c.clone()).unwrap())).filter(|&(_, c)| c != 0).collect()
}

/// Exact division; panics if `den` does not divide `num`.
fn div_exact(num: &Poly, den: &Poly) -> Poly {
    let (&dt, &dc) = den.iter().next_back().expect("nonzero divisor");
    let (&db, _) = den.iter().next().unwrap();
    // quotient exponents lie in [low(num) - low(den), top(num) - top(den)]
    let floor = num.keys().next().map_or(0, |&k| k - db);
    let mut rem = num.clone();
    let mut quot = Poly::new();
    while let Some((&e, &c)) = rem.iter().next_back() {
        assert!(c % dc == 0 && e - dt >= floor, "inexact division");
        let q = mono(c / dc, e - dt);
        add_into(&mut quot, &q, 1, 0);
        add_into(&mut rem, &mul(&q, den), -1, 0);
    }
    quot
}

fn group(kind: CartanType, rank: usize) -> WeylGroup {
    WeylGroup::new(CartanDatum::new(kind, rank).unwrap()).unwrap()
}

fn by_length(g: &WeylGroup) -> Vec<Elem> {
    let mut v: Vec<Elem> = g.elements().collect();
    v.sort_by_key(|&w| g.length(w));
    v
}

/// `x <= y` iff a reduced word of `x` is a subword of a fixed reduced word of `y`.
fn subword_bruhat(g: &WeylGroup) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut leq = vec![vec![false; n]; n];
    for y in g.elements() {
        let word: Vec<usize> = g.word(y).iter().map(|&s| s as usize).collect();
        for mask in 0u32..(1 << word.len()) {
            let sub: Vec<usize> = (0..word.len()).filter(|i| mask >> i & 1 == 1).map(|i| word[i]).collect();
            leq[g.from_word(&sub)][y] = true;
        }
    }
    leq
}

#[test]
fn bruhat_order_matches_subwords() {
    for (k, r) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::G, 2), (CartanType::C, 3)] {
        let g = group(k, r);
        let leq = subword_bruhat(&g);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(g.bruhat_leq(x, y), leq[x][y], "{k:?}{r}: {} <= {}", g.word_string(x), g.word_string(y));
            }
        }
    }
}

/// Classical KL polynomials `P_{x,w}(u)` from the R-polynomial recursion and
/// `u^{l(w)-l(x)} P(1/u) - P(u) = sum_{x<y<=w} R_{x,y} P_{y,w}`.
fn kl_via_r_polynomials(g: &WeylGroup) -> Vec<Vec<Poly>> {
    let n = g.order();
    let order = by_length(g);
    let e = g.identity();
    let mut r = vec![vec![Poly::new(); n]; n];
    for &w in &order {
        if w == e {
            r[e][e] = mono(1, 0);
            continue;
        }
        let s = (0..g.rank()).find(|&s| g.right_descents(w).contains(s)).unwrap();
        let ws = g.mul_right(w, s);
        for x in g.elements() {
            let xs = g.mul_right(x, s);
            r[x][w] = if g.length(xs) < g.length(x) {
                r[xs][ws].clone()
            } else {
                let mut v = mul(&Poly::from([(0, -1), (1, 1)]), &r[x][ws]);
                add_into(&mut v, &r[xs][ws], 1, 1);
                v
            };
        }
    }
    let mut p = vec![vec![Poly::new(); n]; n];
    for w in g.elements() {
        p[w][w] = mono(1, 0);
        for &x in order.iter().rev() {
            let lx = g.length(x);
            if lx >= g.length(w) {
                continue;
            }
            let mut rhs = Poly::new();
            for y in g.elements().filter(|&y| y != x && g.length(y) > lx) {
                add_into(&mut rhs, &mul(&r[x][y], &p[y][w]), 1, 0);
            }
            let top = (g.length(w) as i64 - lx as i64 - 1) / 2;
            p[x][w] = rhs.into_iter().filter(|&(k, _)| k <= top).map(|(k, c)| (k, -c)).collect();
        }
    }
    p
}

/// `p_{x,w}(v) = v^{l(w)-l(x)} P_{x,w}(v^-2)`.
fn normalized(g: &WeylGroup, x: Elem, w: Elem, classical: &Poly) -> Poly {
    let d = g.length(w) as i64 - g.length(x) as i64;
    classical.iter().map(|(&k, &c)| (d - 2 * k, c)).collect()
}

#[test]
fn kl_polynomials_match_r_polynomial_recursion() {
    for (k, r) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::G, 2), (CartanType::A, 4)] {
        let g = group(k, r);
        let hd = HeckeData::build(g.clone()).unwrap();
        let p = kl_via_r_polynomials(&g);
        for w in g.elements() {
            for x in g.elements() {
                let ours = from_engine(&hd.kl.poly(x, w));
                assert_eq!(ours, normalized(&g, x, w, &p[x][w]), "{k:?}{r}: p({}, {})", g.word_string(x), g.word_string(w));
            }
        }
    }
}

#[test]
fn kl_polynomials_of_a3_include_the_first_nontrivial_one() {
    // P_{s2, s2 s1 s3 s2} = 1 + u in A3
    let g = group(CartanType::A, 3);
    let p = kl_via_r_polynomials(&g);
    let x = g.from_word(&[1]);
    let w = g.from_word(&[1, 0, 2, 1]);
    assert_eq!(p[x][w], Poly::from([(0, 1), (1, 1)]));
}

/// Brute-force Hecke algebra in the standard basis with
/// `H_s^2 = 1 + (v^-1 - v) H_s`.
struct StandardHecke<'a> {
    g: &'a WeylGroup,
    /// `c[w]`: the KL element `C_w` in the standard basis.
    c: Vec<BTreeMap<Elem, Poly>>,
}

type Elt = BTreeMap<Elem, Poly>;

fn add_elt(acc: &mut Elt, w: Elem, p: &Poly, shift: i64) {
    let entry = acc.entry(w).or_default();
    add_into(entry, p, 1, shift);
    if entry.is_empty() {
        acc.remove(&w);
    }
}

impl<'a> StandardHecke<'a> {
    fn new(g: &'a WeylGroup) -> Self {
        let p = kl_via_r_polynomials(g);
        let c = g
            .elements()
            .map(|w| {
                g.elements().filter(|&x| !p[x][w].is_empty()).map(|x| (x, normalized(g, x, w, &p[x][w]))).collect()
            })
            .collect();
        StandardHecke { g, c }
    }

    fn left_mul_s(&self, s: usize, h: &Elt) -> Elt {
        let mut out = Elt::new();
        for (&w, p) in h {
            let sw = self.g.mul_left(s, w);
            add_elt(&mut out, sw, p, 0);
            if self.g.length(sw) < self.g.length(w) {
                add_elt(&mut out, w, p, -1);
                add_elt(&mut out, w, &p.iter().map(|(&e, &c)| (e, -c)).collect(), 1);
            }
        }
        out
    }

    fn left_mul_standard(&self, x: Elem, h: &Elt) -> Elt {
        self.g.word(x).iter().rev().fold(h.clone(), |acc, &s| self.left_mul_s(s as usize, &acc))
    }

    fn mul_kl(&self, x: Elem, y: Elem) -> Elt {
        let mut out = Elt::new();
        for (&a, pa) in &self.c[x] {
            for (w, p) in self.left_mul_standard(a, &self.c[y]) {
                add_elt(&mut out, w, &mul(pa, &p), 0);
            }
        }
        out
    }

    /// Expands in the KL basis by peeling off the longest term.
    fn to_kl(&self, mut h: Elt) -> Elt {
        let mut out = Elt::new();
        while let Some(w) = h.keys().copied().max_by_key(|&w| (self.g.length(w), w)) {
            let coeff = h[&w].clone();
            for (&x, p) in &self.c[w] {
                add_elt(&mut h, x, &mul(&coeff, p).into_iter().map(|(e, c)| (e, -c)).collect(), 0);
            }
            assert!(!h.contains_key(&w));
            out.insert(w, coeff);
        }
        out
    }
}

#[test]
fn hecke_structure_constants_match_brute_force() {
    for (k, r) in [(CartanType::A, 2), (CartanType::B, 2), (CartanType::G, 2), (CartanType::A, 3)] {
        let g = group(k, r);
        let hd = HeckeData::build(g.clone()).unwrap();
        let oracle = StandardHecke::new(&g);
        for x in g.elements() {
            for y in g.elements() {
                let expected = oracle.to_kl(oracle.mul_kl(x, y));
                let ours: Elt = hd.h.product(x, y).iter().map(|(z, v)| (*z, from_engine(v))).collect();
                assert_eq!(ours, expected, "{k:?}{r}: C_{} C_{}", g.word_string(x), g.word_string(y));
            }
        }
    }
}

/// `g_{A,B}^C` from `C_{w_A+} C_{w_B+} = d_mu sum_C g_{A,B}^C C_{w_C+}`,
/// where `C_{w_mu}^2 = d_mu C_{w_mu}`.
fn check_schur_constants(k: CartanType, r: usize, spec: &str) {
    let g = group(k, r);
    let hd = HeckeData::build(g.clone()).unwrap();
    let alg = SchurAlgebra::build(&hd, &OrbitSpec::parse(spec, r).unwrap()).unwrap();
    let oracle = StandardHecke::new(&g);
    let xi = alg.xi();
    let divisors: Vec<Poly> = (0..xi.n_orbits())
        .map(|m| {
            let w = g.longest_in(xi.orbit(m));
            let sq = oracle.to_kl(oracle.mul_kl(w, w));
            assert_eq!(sq.len(), 1, "C_w_mu squared is a multiple of C_w_mu");
            sq[&w].clone()
        })
        .collect();
    for a in 0..alg.len() {
        for b in 0..alg.len() {
            let (ia, ib) = (xi.get(a), xi.get(b));
            let ours: BTreeMap<usize, Poly> = alg.product(a, b).iter().map(|(c, v)| (*c, from_engine(v))).collect();
            if ia.col != ib.row {
                assert!(ours.is_empty());
                continue;
            }
            let prod = oracle.to_kl(oracle.mul_kl(ia.max_rep, ib.max_rep));
            let mut expected = BTreeMap::new();
            for (w, p) in prod {
                let c = xi.find(ia.row, ib.col, w).unwrap_or_else(|| {
                    panic!("{k:?}{r} {spec}: C_{} is not a double coset top", g.word_string(w))
                });
                expected.insert(c, div_exact(&p, &divisors[ia.col]));
            }
            assert_eq!(ours, expected, "{k:?}{r} {spec}: {} {}", xi.label(&g, a), xi.label(&g, b));
        }
    }
}

#[test]
fn schur_structure_constants_match_brute_force() {
    check_schur_constants(CartanType::A, 1, "1;-");
    check_schur_constants(CartanType::A, 2, "1;2;-");
    check_schur_constants(CartanType::A, 2, "1,2;1;-");
    check_schur_constants(CartanType::B, 2, "1;2;-");
    check_schur_constants(CartanType::G, 2, "2;-");
}

#[test]
fn rank_one_micro_instance_from_first_principles() {
    // X1..X5 = (γ,e,γ), (γ,e,ν), (ν,e,γ), (ν,e,ν), (ν,s,ν) with γ = {s}, ν = ∅
    let g = group(CartanType::A, 1);
    let hd = HeckeData::build(g.clone()).unwrap();
    let alg = SchurAlgebra::build(&hd, &OrbitSpec::parse("1;-", 1).unwrap()).unwrap();
    let labels: Vec<String> = (0..alg.len()).map(|i| alg.xi().label(&g, i)).collect();
    assert_eq!(labels, ["(γ0,e,γ0)", "(γ0,e,γ1)", "(γ1,e,γ0)", "(γ1,e,γ1)", "(γ1,1,γ1)"]);
    // C_s C_s = (v + v^-1) C_s, so {X2}{X3} = (v + v^-1){X1} and {X3}{X2} = {X5}
    let oracle = StandardHecke::new(&g);
    let s = g.from_word(&[0]);
    let sq = oracle.to_kl(oracle.mul_kl(s, s));
    assert_eq!(sq, Elt::from([(s, Poly::from([(-1, 1), (1, 1)]))]));
    assert_eq!(from_engine(&alg.g(1, 2, 0)), Poly::from([(-1, 1), (1, 1)]));
    assert_eq!(from_engine(&alg.g(2, 1, 4)), mono(1, 0));
}
