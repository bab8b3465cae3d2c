//! Cell properties of the canonical basis and the structure constants.
//! Distinguished elements here are taken from the valuation route, so the
//! gamma-table conditions are genuine checks rather than restatements.

use std::collections::BTreeMap;

use super::{scan, witness, CheckFn, CheckOutcome, Ctx};
use crate::exact::{BiLaurent, LaurentInt};

pub(super) const CHECKS: &[(&str, CheckFn)] = &[
    ("a_bounded_by_valuation_degree", a_bounded_by_valuation_degree),
    ("distinguished_gamma_pairs_transposes", distinguished_gamma_pairs_transposes),
    ("unique_distinguished_partner", unique_distinguished_partner),
    ("a_decreases_along_two_sided_order", a_decreases_along_two_sided_order),
    ("distinguished_gamma_is_one", distinguished_gamma_is_one),
    ("distinguished_elements_symmetric", distinguished_elements_symmetric),
    ("gamma_cyclic_symmetry", gamma_cyclic_symmetry),
    ("gamma_support_in_left_cells", gamma_support_in_left_cells),
    ("left_order_with_equal_a_stays_in_cell", left_order_with_equal_a_stays_in_cell),
    ("right_order_with_equal_a_stays_in_cell", right_order_with_equal_a_stays_in_cell),
    ("two_sided_order_with_equal_a_stays_in_cell", two_sided_order_with_equal_a_stays_in_cell),
    ("one_distinguished_per_left_cell", one_distinguished_per_left_cell),
    ("transpose_stays_in_two_sided_cell", transpose_stays_in_two_sided_cell),
    ("two_parameter_associativity", two_parameter_associativity),
    ("a_invariant_under_transpose", a_invariant_under_transpose),
    ("gamma_transpose_symmetry", gamma_transpose_symmetry),
    ("distinguished_set_routes_agree", distinguished_set_routes_agree),
    ("cells_match_weyl_group", cells_match_weyl_group),
    ("canonical_product_associative", canonical_product_associative),
    ("canonical_basis_unitriangular", canonical_basis_unitriangular),
    ("structure_constants_nonnegative", structure_constants_nonnegative),
    ("kl_polynomials_nonnegative", kl_polynomials_nonnegative),
    ("transpose_reverses_products", transpose_reverses_products),
    ("high_a_span_is_ideal", high_a_span_is_ideal),
    ("regular_block_matches_hecke", regular_block_matches_hecke),
];

fn distinguished(ctx: &Ctx) -> Vec<usize> {
    ctx.alg.distinguished_by_delta().to_vec()
}

fn a_bounded_by_valuation_degree(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let items: Vec<usize> = ctx.dom.all().into_iter().filter(|&c| alg.row(c) == alg.col(c)).collect();
    scan(&items, |&c| match alg.delta(c) {
        None => Some(witness(vec![ctx.label(c)], "valuation degree undefined")),
        Some(d) if alg.a(c) as i64 > d => Some(witness(vec![ctx.label(c)], format!("a = {} > {d}", alg.a(c)))),
        _ => None,
    })
}

fn distinguished_gamma_pairs_transposes(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let ds = distinguished(ctx);
    let pairs = ctx.dom.pairs("distinguished_gamma_pairs_transposes");
    let items: Vec<(usize, usize, usize)> = ds.iter().flat_map(|&d| pairs.iter().map(move |&(a, b)| (d, a, b))).collect();
    scan(&items, |&(d, a, b)| {
        let g = alg.gamma(a, b, d);
        (g != 0 && b != alg.transpose(a)).then(|| witness(ctx.labels(&[a, b, d]), format!("gamma = {g} with B not the transpose of A")))
    })
}

fn unique_distinguished_partner(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let ds = distinguished(ctx);
    scan(&ctx.dom.all(), |&c| {
        let hits: Vec<usize> = ds.iter().copied().filter(|&d| alg.gamma(c, alg.transpose(c), d) != 0).collect();
        (hits.len() != 1).then(|| witness(vec![ctx.label(c)], format!("{} distinguished partners {:?}", hits.len(), ctx.labels(&hits))))
    })
}

fn a_decreases_along_two_sided_order(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let order = alg.two_sided_order();
    scan(&ctx.dom.pairs("a_decreases_along_two_sided_order"), |&(c, d)| {
        (order.leq(c, d) && alg.a(c) < alg.a(d))
            .then(|| witness(ctx.labels(&[c, d]), format!("first below second but a = {} < {}", alg.a(c), alg.a(d))))
    })
}

fn distinguished_gamma_is_one(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let ds = distinguished(ctx);
    let items: Vec<(usize, usize)> = ds.iter().flat_map(|&d| ctx.dom.all().into_iter().map(move |a| (d, a))).collect();
    scan(&items, |&(d, a)| {
        let g = alg.gamma(alg.transpose(a), a, d);
        if g == 0 {
            return None;
        }
        let nd = alg.n_c(d);
        (g != 1 || nd != Some(1)).then(|| witness(ctx.labels(&[a, d]), format!("gamma = {g}, leading coefficient {nd:?}")))
    })
}

fn distinguished_elements_symmetric(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&distinguished(ctx), |&d| (alg.transpose(d) != d).then(|| witness(vec![ctx.label(d)], "not fixed by transpose")))
}

fn gamma_cyclic_symmetry(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&ctx.dom.triples("gamma_cyclic_symmetry"), |&(a, b, c)| {
        let (x, y, z) = (alg.gamma(a, b, c), alg.gamma(c, a, b), alg.gamma(b, c, a));
        (x != y || y != z).then(|| witness(ctx.labels(&[a, b, c]), format!("rotations give {x}, {y}, {z}")))
    })
}

fn gamma_support_in_left_cells(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let left = alg.left_cells();
    let t = |x| alg.transpose(x);
    scan(&ctx.dom.triples("gamma_support_in_left_cells"), |&(a, b, c)| {
        if alg.gamma(a, b, c) == 0 {
            return None;
        }
        let ok = left.same(a, t(b)) && left.same(b, t(c)) && left.same(c, t(a));
        (!ok).then(|| witness(ctx.labels(&[a, b, c]), "nonzero gamma across left cells"))
    })
}

fn order_with_equal_a(ctx: &Ctx, which: &str, order: &crate::preorder::Preorder) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&ctx.dom.pairs(which), |&(c, d)| {
        (order.leq(c, d) && alg.a(c) == alg.a(d) && !order.equiv(c, d))
            .then(|| witness(ctx.labels(&[c, d]), format!("comparable with a = {} but not equivalent", alg.a(c))))
    })
}

fn left_order_with_equal_a_stays_in_cell(ctx: &Ctx) -> CheckOutcome {
    order_with_equal_a(ctx, "left", ctx.alg.left_order())
}

fn right_order_with_equal_a_stays_in_cell(ctx: &Ctx) -> CheckOutcome {
    order_with_equal_a(ctx, "right", ctx.alg.right_order())
}

fn two_sided_order_with_equal_a_stays_in_cell(ctx: &Ctx) -> CheckOutcome {
    order_with_equal_a(ctx, "two_sided", ctx.alg.two_sided_order())
}

fn one_distinguished_per_left_cell(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let ds = distinguished(ctx);
    let cells: Vec<usize> = (0..alg.left_cells().len()).collect();
    scan(&cells, |&l| {
        let members = alg.left_cells().members(l);
        let inside: Vec<usize> = ds.iter().copied().filter(|d| members.contains(d)).collect();
        if inside.len() != 1 {
            return Some(witness(ctx.labels(members), format!("{} distinguished elements", inside.len())));
        }
        let d = inside[0];
        members
            .iter()
            .find(|&&c| alg.gamma(alg.transpose(c), c, d) == 0)
            .map(|&c| witness(ctx.labels(&[c, d]), "gamma of the transpose pair vanishes"))
    })
}

fn transpose_stays_in_two_sided_cell(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&ctx.dom.all(), |&c| {
        (!alg.two_sided_cells().same(c, alg.transpose(c))).then(|| witness(vec![ctx.label(c)], "transpose in another two-sided cell"))
    })
}

type BiRow = BTreeMap<usize, BiLaurent>;

fn accumulate(row: &mut BiRow, k: usize, v: &BiLaurent) {
    let e = row.entry(k).or_default();
    e.add_assign(v);
    if e.is_zero() {
        row.remove(&k);
    }
}

/// Left multiplication by `{C}` in `q` and right multiplication by `{C'}`
/// in an independent `q'` commute on the span of a fixed `a`-value.
fn two_parameter_associativity(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let in_q = |p: &LaurentInt| BiLaurent::in_first(p);
    let in_q2 = |p: &LaurentInt| BiLaurent::in_second(p);
    scan(&ctx.chains("two_parameter_associativity"), |&(c, b, cp)| {
        let mut lhs = BiRow::new();
        for (a2, u) in alg.product(b, cp) {
            let u = in_q2(u);
            for (a, v) in alg.product(c, *a2) {
                accumulate(&mut lhs, *a, &in_q(v).mul(&u));
            }
        }
        let mut rhs = BiRow::new();
        for (a1, u) in alg.product(c, b) {
            let u = in_q(u);
            for (a, v) in alg.product(*a1, cp) {
                accumulate(&mut rhs, *a, &u.mul(&in_q2(v)));
            }
        }
        let level = alg.a(b);
        lhs.retain(|a, _| alg.a(*a) == level);
        rhs.retain(|a, _| alg.a(*a) == level);
        (lhs != rhs).then(|| {
            let bad = lhs.keys().chain(rhs.keys()).find(|k| lhs.get(k) != rhs.get(k)).copied().unwrap();
            witness(ctx.labels(&[c, b, cp, bad]), "two-variable expansions differ at the last index")
        })
    })
}

fn a_invariant_under_transpose(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&ctx.dom.all(), |&c| {
        let (x, y) = (alg.a(c), alg.a(alg.transpose(c)));
        (x != y).then(|| witness(vec![ctx.label(c)], format!("a = {x}, transpose has {y}")))
    })
}

fn gamma_transpose_symmetry(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let t = |x| alg.transpose(x);
    scan(&ctx.dom.triples("gamma_transpose_symmetry"), |&(a, b, c)| {
        let (x, y) = (alg.gamma(a, b, c), alg.gamma(t(b), t(a), t(c)));
        (x != y).then(|| witness(ctx.labels(&[a, b, c]), format!("{x} vs {y}")))
    })
}

fn distinguished_set_routes_agree(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let from_gamma = alg.distinguished();
    let from_delta = alg.distinguished_by_delta();
    let failures = if from_gamma == from_delta {
        Vec::new()
    } else {
        vec![witness(ctx.labels(from_delta), format!("gamma route gives {:?}", ctx.labels(from_gamma)))]
    };
    CheckOutcome::from_failures(1, failures)
}

fn cells_match_weyl_group(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let xi = alg.xi();
    let wc = &ctx.hd.cells;
    scan(&ctx.dom.pairs("cells_match_weyl_group"), |&(c, d)| {
        let (ic, id) = (xi.get(c), xi.get(d));
        let left = ic.col == id.col && wc.left_order.leq(ic.max_rep, id.max_rep);
        let right = ic.row == id.row && wc.right_order.leq(ic.max_rep, id.max_rep);
        let two = wc.two_sided.same(ic.max_rep, id.max_rep);
        if left != alg.left_order().leq(c, d) || right != alg.right_order().leq(c, d) || two != alg.two_sided_cells().same(c, d) {
            return Some(witness(ctx.labels(&[c, d]), "order or cell relation differs from the longest elements"));
        }
        (c == d && alg.a(c) != wc.a(ic.max_rep))
            .then(|| witness(vec![ctx.label(c)], format!("a = {} vs {}", alg.a(c), wc.a(ic.max_rep))))
    })
}

fn merge(row: &mut BTreeMap<usize, LaurentInt>, k: usize, v: &LaurentInt) {
    let e = row.entry(k).or_default();
    *e += v;
    if e.is_zero() {
        row.remove(&k);
    }
}

fn canonical_product_associative(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&ctx.chains("canonical_product_associative"), |&(a, b, c)| {
        let mut left = BTreeMap::new();
        for (x, u) in alg.product(a, b) {
            for (z, v) in alg.product(*x, c) {
                merge(&mut left, *z, &(u * v));
            }
        }
        let mut right = BTreeMap::new();
        for (y, u) in alg.product(b, c) {
            for (z, v) in alg.product(a, *y) {
                merge(&mut right, *z, &(u * v));
            }
        }
        (left != right).then(|| witness(ctx.labels(&[a, b, c]), "bracketings differ"))
    })
}

fn canonical_basis_unitriangular(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let xi = alg.xi();
    let g = &ctx.hd.group;
    scan(&ctx.dom.all(), |&c| {
        let ic = xi.get(c);
        let mut diagonal = false;
        for (cp, p) in alg.canonical_in_standard(c) {
            if *cp == c {
                diagonal = p.is_one();
                continue;
            }
            let ip = xi.get(*cp);
            let below = ip.row == ic.row && ip.col == ic.col && ip.max_len < ic.max_len && g.bruhat_leq(ip.max_rep, ic.max_rep);
            let small = p.is_nonneg() && p.valuation().is_some_and(|v| v >= 1);
            if !below || !small {
                return Some(witness(ctx.labels(&[c, *cp]), format!("off-diagonal coefficient {p}")));
            }
        }
        (!diagonal).then(|| witness(vec![ctx.label(c)], "diagonal coefficient is not 1"))
    })
}

fn structure_constants_nonnegative(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&ctx.dom.pairs("structure_constants_nonnegative"), |&(a, b)| {
        alg.product(a, b)
            .iter()
            .find(|(_, v)| !v.is_nonneg())
            .map(|(c, v)| witness(ctx.labels(&[a, b, *c]), format!("coefficient {v}")))
    })
}

fn kl_polynomials_nonnegative(ctx: &Ctx) -> CheckOutcome {
    let g = &ctx.hd.group;
    let ws: Vec<usize> = g.elements().collect();
    scan(&ws, |&w| {
        ctx.hd.kl.column(w).find(|(_, p)| !p.is_nonneg()).map(|(x, p)| {
            witness(vec![g.word_string(x), g.word_string(w)], format!("KL polynomial {p}"))
        })
    })
}

fn transpose_reverses_products(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let t = |x| alg.transpose(x);
    scan(&ctx.dom.pairs("transpose_reverses_products"), |&(a, b)| {
        let mut flipped: Vec<(usize, LaurentInt)> = alg.product(a, b).iter().map(|(c, v)| (t(*c), v.clone())).collect();
        flipped.sort_by_key(|(c, _)| *c);
        (flipped.as_slice() != alg.product(t(b), t(a))).then(|| witness(ctx.labels(&[a, b]), "product of transposes in reverse order differs"))
    })
}

fn high_a_span_is_ideal(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&ctx.dom.pairs("high_a_span_is_ideal"), |&(a, b)| {
        let floor = alg.a(a).max(alg.a(b));
        alg.product(a, b)
            .iter()
            .find(|(c, _)| alg.a(*c) < floor)
            .map(|(c, _)| witness(ctx.labels(&[a, b, *c]), format!("a = {} below {floor}", alg.a(*c))))
    })
}

/// On the block of a regular orbit the structure constants are those of the
/// Kazhdan-Lusztig basis of the Hecke algebra.
fn regular_block_matches_hecke(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let xi = alg.xi();
    let g = &ctx.hd.group;
    let Some(nu) = (0..xi.n_orbits()).find(|&o| xi.orbit(o).is_empty()) else {
        return CheckOutcome::skipped("no regular orbit in the spec");
    };
    let index: Vec<usize> = g.elements().map(|w| xi.find(nu, nu, w).expect("regular block is all of W")).collect();
    let pairs: Vec<(usize, usize)> = g.elements().flat_map(|x| g.elements().map(move |y| (x, y))).collect();
    scan(&pairs, |&(x, y)| {
        let mut ours: Vec<(usize, LaurentInt)> =
            alg.product(index[x], index[y]).iter().map(|(c, v)| (xi.get(*c).max_rep, v.clone())).collect();
        ours.sort_by_key(|(w, _)| *w);
        let mut theirs = ctx.hd.h.product(x, y).to_vec();
        theirs.sort_by_key(|(w, _)| *w);
        (ours != theirs).then(|| witness(vec![g.word_string(x), g.word_string(y)], "structure constants differ"))
    })
}
