//! Identities of the asymptotic ring `J` and of the map from the q-Schur
//! algebra into it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{scan, witness, CheckFn, CheckOutcome, Ctx};
use crate::exact::{LaurentInt, RatMatrix, Rationals};

pub(super) const CHECKS: &[(&str, CheckFn)] = &[
    ("asymptotic_product_associative", asymptotic_product_associative),
    ("asymptotic_unit_and_idempotents", asymptotic_unit_and_idempotents),
    ("trace_form_dual_bases", trace_form_dual_bases),
    ("asymptotic_products_detect_cells", asymptotic_products_detect_cells),
    ("two_sided_blocks_are_ideals", two_sided_blocks_are_ideals),
    ("phi_multiplicative", phi_multiplicative),
    ("phi_preserves_identity", phi_preserves_identity),
    ("phi_invertible_at_one", phi_invertible_at_one),
    ("phi_leading_terms", phi_leading_terms),
    ("phi_action_matches_modulo_higher_a", phi_action_matches_modulo_higher_a),
];

type IntVec = BTreeMap<usize, i64>;

fn add_into(out: &mut IntVec, k: usize, v: i64) {
    let e = out.entry(k).or_default();
    *e += v;
    if *e == 0 {
        out.remove(&k);
    }
}

fn j_basis_product(ctx: &Ctx, a: usize, b: usize) -> IntVec {
    ctx.alg.j_product(a, b).iter().copied().collect()
}

fn asymptotic_product_associative(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&ctx.chains("asymptotic_product_associative"), |&(a, b, c)| {
        let mut left = IntVec::new();
        for &(x, u) in alg.j_product(a, b) {
            for &(z, v) in alg.j_product(x, c) {
                add_into(&mut left, z, u * v);
            }
        }
        let mut right = IntVec::new();
        for &(y, u) in alg.j_product(b, c) {
            for &(z, v) in alg.j_product(a, y) {
                add_into(&mut right, z, u * v);
            }
        }
        (left != right).then(|| witness(ctx.labels(&[a, b, c]), "bracketings differ"))
    })
}

fn asymptotic_unit_and_idempotents(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let ds = alg.distinguished();
    scan(&ctx.dom.all(), |&c| {
        let single: IntVec = [(c, 1)].into_iter().collect();
        let mut left_unit = IntVec::new();
        let mut right_unit = IntVec::new();
        for &d in ds {
            let cd = j_basis_product(ctx, c, d);
            let dc = j_basis_product(ctx, d, c);
            let expect_cd = if alg.left_cells().same(c, d) { single.clone() } else { IntVec::new() };
            let expect_dc = if alg.right_cells().same(c, d) { single.clone() } else { IntVec::new() };
            if cd != expect_cd || dc != expect_dc {
                return Some(witness(ctx.labels(&[c, d]), "product with a distinguished idempotent is wrong"));
            }
            for (k, v) in cd {
                add_into(&mut right_unit, k, v);
            }
            for (k, v) in dc {
                add_into(&mut left_unit, k, v);
            }
        }
        (left_unit != single || right_unit != single)
            .then(|| witness(vec![ctx.label(c)], "sum of distinguished elements is not a unit"))
    })
}

fn trace_form_dual_bases(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&ctx.dom.pairs("trace_form_dual_bases"), |&(a, b)| {
        let tau: i64 = alg.j_product(a, b).iter().filter(|(c, _)| alg.is_distinguished(*c)).map(|(_, v)| v).sum();
        let expected = i64::from(b == alg.transpose(a));
        (tau != expected).then(|| witness(ctx.labels(&[a, b]), format!("trace {tau}, expected {expected}")))
    })
}

fn asymptotic_products_detect_cells(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let t = |x| alg.transpose(x);
    scan(&ctx.dom.pairs("asymptotic_products_detect_cells"), |&(c, d)| {
        let left = !alg.j_product(c, t(d)).is_empty();
        let right = !alg.j_product(t(c), d).is_empty();
        (left != alg.left_cells().same(c, d) || right != alg.right_cells().same(c, d))
            .then(|| witness(ctx.labels(&[c, d]), format!("left product nonzero {left}, right product nonzero {right}")))
    })
}

fn two_sided_blocks_are_ideals(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let cells = alg.two_sided_cells();
    scan(&ctx.dom.pairs("two_sided_blocks_are_ideals"), |&(a, b)| {
        let prod = alg.j_product(a, b);
        if !cells.same(a, b) {
            return (!prod.is_empty()).then(|| witness(ctx.labels(&[a, b]), "product across two-sided cells is nonzero"));
        }
        prod.iter()
            .find(|(c, _)| !cells.same(*c, a))
            .map(|(c, _)| witness(ctx.labels(&[a, b, *c]), "product leaves the two-sided cell"))
    })
}

fn phi_multiplicative(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&ctx.dom.pairs("phi_multiplicative"), |&(a, b)| {
        let lhs = alg.j_multiply(alg.phi(a), alg.phi(b));
        let mut rhs: BTreeMap<usize, LaurentInt> = BTreeMap::new();
        for (c, v) in alg.product(a, b) {
            for (x, u) in alg.phi(*c) {
                let e = rhs.entry(*x).or_default();
                *e += &(v * u);
            }
        }
        rhs.retain(|_, v| !v.is_zero());
        (lhs != rhs.into_iter().collect::<Vec<_>>()).then(|| witness(ctx.labels(&[a, b]), "image of the product differs"))
    })
}

fn phi_preserves_identity(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let xi = alg.xi();
    let mut image: BTreeMap<usize, LaurentInt> = BTreeMap::new();
    for o in 0..xi.n_orbits() {
        for (x, v) in alg.phi(xi.unit(o)) {
            let e = image.entry(*x).or_default();
            *e += v;
        }
    }
    image.retain(|_, v| !v.is_zero());
    let expected: BTreeMap<usize, LaurentInt> = alg.distinguished().iter().map(|&d| (d, LaurentInt::one())).collect();
    let failures = if image == expected {
        Vec::new()
    } else {
        vec![witness(ctx.labels(&image.keys().copied().collect::<Vec<_>>()), "image of the identity")]
    };
    CheckOutcome::from_failures(1, failures)
}

fn phi_invertible_at_one(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let n = alg.len();
    let mut m = RatMatrix::filled(n, n, BigRational::zero());
    for c in 0..n {
        for (x, v) in alg.phi(c) {
            m.set(*x, c, BigRational::from_integer(v.at_one()));
        }
    }
    let det = m.det(&Rationals);
    let failures = if det.is_zero() { vec![witness(Vec::new(), "determinant vanishes at q = 1")] } else { Vec::new() };
    CheckOutcome::from_failures(1, failures).with_note(format!("determinant at q = 1 is {det}"))
}

/// `q^{a(C) - l(w_col)} Phi({C})` is `t_C` plus `qZ[q]` terms on the same
/// `a`-level and arbitrary terms of larger `a`.
fn phi_leading_terms(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let xi = alg.xi();
    scan(&ctx.dom.all(), |&c| {
        let shift = alg.a(c) as i64 - xi.orbit_longest_len(alg.col(c)) as i64;
        let mut diagonal = false;
        for (x, v) in alg.phi(c) {
            let s = v.shift(shift);
            let ok = match alg.a(*x).cmp(&alg.a(c)) {
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal if *x == c => {
                    diagonal = true;
                    s.valuation() == Some(0) && s.constant_term() == BigInt::from(1)
                }
                std::cmp::Ordering::Equal => s.valuation().is_some_and(|k| k >= 1),
            };
            if !ok {
                return Some(witness(ctx.labels(&[c, *x]), format!("normalized coefficient {s}")));
            }
        }
        (!diagonal).then(|| witness(vec![ctx.label(c)], "no diagonal term"))
    })
}

/// `{C}{B}` and `Phi({C}) * {B}` agree modulo the span of `{E}` with
/// `a(E) > a(B)`.
fn phi_action_matches_modulo_higher_a(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&ctx.dom.pairs("phi_action_matches_modulo_higher_a"), |&(c, b)| {
        let level = alg.a(b);
        let mut diff: BTreeMap<usize, LaurentInt> = BTreeMap::new();
        for (e, v) in alg.product(c, b) {
            if alg.a(*e) <= level {
                *diff.entry(*e).or_default() += v;
            }
        }
        for (a, u) in alg.phi(c) {
            for &(e, k) in alg.j_product(*a, b) {
                if alg.a(e) <= level {
                    *diff.entry(e).or_default() -= &u.scale(&k.into());
                }
            }
        }
        diff.retain(|_, v| !v.is_zero());
        diff.iter()
            .next()
            .map(|(e, v)| witness(ctx.labels(&[c, b, *e]), format!("difference {v} at a = {}", alg.a(*e))))
    })
}
