//! Identities involving the irreducible representations of `J` and their
//! pullbacks: Schur elements, orthogonality, left cell modules and the
//! cellular datum built from them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{scan, witness, CheckFn, CheckOutcome, Ctx};
use crate::asym::{check_embedding, mat_mul, mat_transpose, IntMatrix, SpecialModules};
use crate::cellular::{signed_canonical_check, verify_axioms};
use crate::exact::{prime_factors, LaurentInt, RatFunc, RatMatrix, Rationals};
use crate::Error;

pub(super) const CHECKS: &[(&str, CheckFn)] = &[
    ("irreps_are_representations", irreps_are_representations),
    ("irreps_fill_two_sided_blocks", irreps_fill_two_sided_blocks),
    ("schur_elements_inside_hecke", schur_elements_inside_hecke),
    ("standard_trace_leading_terms", standard_trace_leading_terms),
    ("schur_element_leading_terms", schur_element_leading_terms),
    ("standard_trace_orthogonality", standard_trace_orthogonality),
    ("schur_relations", schur_relations),
    ("dual_schur_relations", dual_schur_relations),
    ("p_matrix_intertwines", p_matrix_intertwines),
    ("p_matrix_positive_definite", p_matrix_positive_definite),
    ("p_matrix_determinant_primes_are_bad", p_matrix_determinant_primes_are_bad),
    ("cellular_axioms", cellular_axioms),
    ("weyl_asymptotic_embedding", weyl_asymptotic_embedding),
    ("special_positive_lines", special_positive_lines),
    ("distinguished_traces_count_multiplicities", distinguished_traces_count_multiplicities),
    ("left_cell_hom_dimensions", left_cell_hom_dimensions),
    ("left_cell_orthogonality", left_cell_orthogonality),
    ("characters_detect_self_transpose_left_cells", characters_detect_self_transpose_left_cells),
    ("gamma_from_representations", gamma_from_representations),
    ("left_cell_multiplicity_sums", left_cell_multiplicity_sums),
    ("unit_f_forces_irreducible_left_cell", unit_f_forces_irreducible_left_cell),
    ("signed_canonical_basis_is_cellular", signed_canonical_basis_is_cellular),
];

fn irreps(ctx: &Ctx) -> Vec<usize> {
    (0..ctx.reps.len()).collect()
}

fn irrep_pairs(ctx: &Ctx) -> Vec<(usize, usize)> {
    let k = ctx.reps.len();
    (0..k).flat_map(|l| (0..k).map(move |m| (l, m))).collect()
}

fn add_scaled(acc: &mut IntMatrix, m: &IntMatrix, k: i64) {
    for (r, row) in acc.iter_mut().zip(m) {
        for (x, y) in r.iter_mut().zip(row) {
            *x += k * y;
        }
    }
}

fn zero_matrix(d: usize) -> IntMatrix {
    vec![vec![0; d]; d]
}

fn trace(m: &IntMatrix) -> i64 {
    (0..m.len()).map(|i| m[i][i]).sum()
}

fn irreps_are_representations(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let reps = ctx.reps;
    scan(&ctx.dom.pairs("irreps_are_representations"), |&(a, b)| {
        for rep in &reps.irreps {
            let lhs = mat_mul(&rep.rho_dense(a), &rep.rho_dense(b));
            let mut rhs = zero_matrix(rep.dim);
            for &(c, k) in alg.j_product(a, b) {
                if let Some(m) = rep.rho(c) {
                    add_scaled(&mut rhs, m, k);
                }
            }
            if lhs != rhs {
                return Some(witness(ctx.labels(&[a, b]), format!("{} is not multiplicative", rep.label)));
            }
        }
        None
    })
}

fn irreps_fill_two_sided_blocks(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let reps = ctx.reps;
    let families: Vec<usize> = (0..alg.two_sided_cells().len()).collect();
    scan(&families, |&f| {
        let size = alg.two_sided_cells().members(f).len();
        let members = &reps.families[f];
        let squares: usize = members.iter().map(|&l| reps.irreps[l].dim.pow(2)).sum();
        let stray = members.iter().any(|&l| reps.irreps[l].rho.keys().any(|&a| alg.two_sided_cells().class_of(a) != f));
        (members.is_empty() || squares != size || stray).then(|| {
            witness(
                ctx.labels(&alg.two_sided_cells().members(f)[..1]),
                format!("{} irreps, squared dimensions {squares} for a block of size {size}", members.len()),
            )
        })
    })
}

fn schur_elements_inside_hecke(ctx: &Ctx) -> CheckOutcome {
    let Some(regular) = ctx.regular else {
        return CheckOutcome::skipped("Hecke representations unavailable");
    };
    let hecke: Vec<&RatFunc> = regular.invariants.iter().map(|i| &i.schur_element).collect();
    let ours: Vec<&RatFunc> = ctx.reps.invariants.iter().map(|i| &i.schur_element).collect();
    let mut failures: Vec<_> = ctx
        .reps
        .invariants
        .iter()
        .zip(&ctx.reps.irreps)
        .filter(|(inv, _)| !hecke.contains(&&inv.schur_element))
        .map(|(inv, rep)| witness(vec![rep.label.clone()], format!("{} is not a Hecke Schur element", inv.schur_element)))
        .collect();
    let mut cases = ours.len() as u64;
    if ctx.alg.xi().spec().contains_regular() {
        cases += hecke.len() as u64;
        failures.extend(
            hecke
                .iter()
                .filter(|p| !ours.contains(p))
                .map(|p| witness(Vec::new(), format!("Hecke Schur element {p} missing despite a regular orbit"))),
        );
    }
    CheckOutcome::from_failures(cases, failures)
}

/// The constant term of `q^{a - l(w_col)} Tr([A])` is the character of `t_A`,
/// and no coefficient lies below it.
fn standard_trace_leading_terms(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let xi = alg.xi();
    scan(&irreps(ctx), |&l| {
        let inv = &ctx.reps.invariants[l];
        let rep = &ctx.reps.irreps[l];
        let mut attained = false;
        for a in 0..alg.len() {
            let s = inv.standard_traces[a].shift(inv.a as i64 - xi.orbit_longest_len(alg.col(a)) as i64);
            if s.valuation().is_some_and(|v| v < 0) {
                return Some(witness(vec![rep.label.clone(), ctx.label(a)], format!("normalized trace {s} has negative powers")));
            }
            let c = s.constant_term();
            if c != BigInt::from(rep.character(a)) {
                return Some(witness(vec![rep.label.clone(), ctx.label(a)], format!("constant term {c}, character {}", rep.character(a))));
            }
            attained |= !c.is_zero();
        }
        (!attained).then(|| witness(vec![rep.label.clone()], "no trace attains the bound"))
    })
}

fn schur_element_leading_terms(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&irreps(ctx), |&l| {
        let inv = &ctx.reps.invariants[l];
        let rep = &ctx.reps.irreps[l];
        let p = &inv.schur_element;
        let lead = p.leading_series_coeff();
        if p.valuation() != Some(-2 * inv.a as i64) || lead != Some(BigRational::from_integer(inv.f.into())) {
            return Some(witness(vec![rep.label.clone()], format!("Schur element {p} with f = {}, a = {}", inv.f, inv.a)));
        }
        let sum: i64 = (0..alg.len()).map(|a| rep.character(a) * rep.character(alg.transpose(a))).sum();
        (sum != rep.dim as i64 * inv.f).then(|| witness(vec![rep.label.clone()], format!("character sum {sum} is not d f")))
    })
}

fn standard_trace_orthogonality(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let inv = &ctx.reps.invariants;
    scan(&irrep_pairs(ctx), |&(l, m)| {
        let mut s = LaurentInt::zero();
        for a in 0..alg.len() {
            let x = &inv[l].standard_traces[a];
            let y = &inv[m].standard_traces[alg.transpose(a)];
            if !x.is_zero() && !y.is_zero() {
                s += &(alg.form_inverse(a) * &(x * y));
            }
        }
        let expected = if l == m {
            inv[l].schur_element.mul_laurent(&LaurentInt::from_i64(ctx.reps.irreps[l].dim as i64))
        } else {
            RatFunc::zero()
        };
        let labels = vec![ctx.reps.irreps[l].label.clone(), ctx.reps.irreps[m].label.clone()];
        (RatFunc::from_laurent(s.clone()) != expected).then(|| witness(labels, format!("sum {s}, expected {expected}")))
    })
}

/// `sum_A rho_st(t_A) rho'_uv(t_{A^t}) = f` exactly when the two
/// representations agree, `s = v` and `t = u`, and zero otherwise.
fn schur_relations(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let reps = ctx.reps;
    scan(&irrep_pairs(ctx), |&(l, m)| {
        let (x, y) = (&reps.irreps[l], &reps.irreps[m]);
        let f = reps.invariants[l].f;
        for s in 0..x.dim {
            for t in 0..x.dim {
                for u in 0..y.dim {
                    for v in 0..y.dim {
                        let total: i64 = x
                            .rho
                            .iter()
                            .filter_map(|(&a, ma)| y.rho(alg.transpose(a)).map(|mb| ma[s][t] * mb[u][v]))
                            .sum();
                        let expected = if l == m && s == v && t == u { f } else { 0 };
                        if total != expected {
                            return Some(witness(
                                vec![x.label.clone(), y.label.clone()],
                                format!("entry ({s},{t}),({u},{v}) sums to {total}, expected {expected}"),
                            ));
                        }
                    }
                }
            }
        }
        None
    })
}

/// `sum_lambda Tr(rho(t_A) rho(t_B)) / f = [B = A^t]`.
fn dual_schur_relations(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let reps = ctx.reps;
    scan(&ctx.dom.pairs("dual_schur_relations"), |&(a, b)| {
        let mut total = BigRational::zero();
        for (rep, inv) in reps.irreps.iter().zip(&reps.invariants) {
            if let (Some(x), Some(y)) = (rep.rho(a), rep.rho(b)) {
                total += BigRational::new(trace(&mat_mul(x, y)).into(), inv.f.into());
            }
        }
        let expected = if b == alg.transpose(a) { BigRational::one() } else { BigRational::zero() };
        (total != expected).then(|| witness(ctx.labels(&[a, b]), format!("sum {total}")))
    })
}

fn p_matrix_intertwines(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let reps = ctx.reps;
    let items: Vec<(usize, usize)> = irreps(ctx).into_iter().flat_map(|l| reps.irreps[l].rho.keys().map(move |&a| (l, a))).collect();
    scan(&items, |&(l, a)| {
        let p = &reps.invariants[l].p_matrix;
        let rep = &reps.irreps[l];
        let lhs = mat_mul(p, &rep.rho_dense(alg.transpose(a)));
        let rhs = mat_mul(&mat_transpose(&rep.rho_dense(a)), p);
        (lhs != rhs).then(|| witness(vec![rep.label.clone(), ctx.label(a)], "P does not intertwine the transpose"))
    })
}

fn p_matrix_positive_definite(ctx: &Ctx) -> CheckOutcome {
    let reps = ctx.reps;
    scan(&irreps(ctx), |&l| {
        let p = &reps.invariants[l].p_matrix;
        let label = vec![reps.irreps[l].label.clone()];
        if *p != mat_transpose(p) {
            return Some(witness(label, "P is not symmetric"));
        }
        let full = RatMatrix::from_int_rows(p);
        for k in 1..=p.len() {
            let idx: Vec<usize> = (0..k).collect();
            let minor = full.submatrix(&idx, &idx).det(&Rationals);
            if !minor.is_positive() {
                return Some(witness(label, format!("leading minor of size {k} is {minor}")));
            }
        }
        None
    })
}

fn p_matrix_determinant_primes_are_bad(ctx: &Ctx) -> CheckOutcome {
    let reps = ctx.reps;
    scan(&irreps(ctx), |&l| {
        let det: BigInt = reps.invariants[l].p_det.parse().expect("decimal determinant");
        let good: Vec<u64> = prime_factors(&det.abs()).into_iter().filter(|p| !reps.bad_primes.contains(p)).collect();
        (!good.is_empty()).then(|| witness(vec![reps.irreps[l].label.clone()], format!("det P = {det} has good prime factors {good:?}")))
    })
}

fn cellular_axioms(ctx: &Ctx) -> CheckOutcome {
    let Some(datum) = ctx.cells else {
        return CheckOutcome::from_failures(1, vec![witness(Vec::new(), "cellular datum could not be built")]);
    };
    let r = verify_axioms(ctx.alg, ctx.reps, datum);
    let failures: Vec<_> = [
        ("independence", &r.independence),
        ("involution", &r.involution),
        ("multiplication", &r.multiplication),
        ("round trip", &r.round_trip),
        ("support", &r.support),
    ]
    .into_iter()
    .flat_map(|(what, list)| list.iter().map(move |m| witness(vec![what.to_string()], m.clone())))
    .collect();
    CheckOutcome::from_failures(r.products_checked as u64, failures)
}

fn weyl_asymptotic_embedding(ctx: &Ctx) -> CheckOutcome {
    let r = check_embedding(ctx.hd, ctx.alg);
    let mut failures: Vec<_> = r.mismatches.iter().map(|m| witness(Vec::new(), m.clone())).collect();
    failures.extend(r.left_cell_counts.iter().filter(|c| c.expected != c.found).map(|c| {
        witness(vec![c.representative.clone()], format!("{} left cells expected from descents, {} found", c.expected, c.found))
    }));
    CheckOutcome::from_failures((r.products_checked + r.left_cell_counts.len()) as u64, failures)
}

fn special_positive_lines(ctx: &Ctx) -> CheckOutcome {
    match SpecialModules::compute(ctx.alg) {
        Err(e) => CheckOutcome::from_failures(1, vec![witness(Vec::new(), e.to_string())]),
        Ok(sm) => {
            let failures = sm.verify(ctx.alg).into_iter().map(|m| witness(Vec::new(), m)).collect();
            CheckOutcome::from_failures(sm.lines.len() as u64, failures)
        }
    }
}

/// `rho(t_D)` is an idempotent whose trace is the multiplicity in the left
/// cell module.
fn distinguished_traces_count_multiplicities(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let reps = ctx.reps;
    let items: Vec<(usize, usize)> =
        irreps(ctx).into_iter().flat_map(|l| (0..alg.left_cells().len()).map(move |g| (l, g))).collect();
    scan(&items, |&(l, g)| {
        let rep = &reps.irreps[l];
        let d = alg.distinguished_of(alg.left_cells().members(g)[0]);
        let m = rep.rho_dense(d);
        let label = vec![rep.label.clone(), ctx.label(d)];
        if mat_mul(&m, &m) != m {
            return Some(witness(label, "image is not idempotent"));
        }
        let rank = RatMatrix::from_int_rows(&m).rank(&Rationals) as i64;
        let recorded = reps.invariants[l].multiplicities[g];
        (trace(&m) != rank || recorded != rank).then(|| witness(label, format!("trace {}, rank {rank}, recorded {recorded}", trace(&m))))
    })
}

fn left_cell_hom_dimensions(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let cells = alg.left_cells();
    let inv = &ctx.reps.invariants;
    let k = cells.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|g| (0..k).map(move |h| (g, h))).collect();
    scan(&pairs, |&(g, h)| {
        let dim: i64 = inv.iter().map(|i| i.multiplicities[g] * i.multiplicities[h]).sum();
        let count = cells.members(g).iter().filter(|&&a| cells.class_of(alg.transpose(a)) == h).count() as i64;
        (dim != count).then(|| witness(ctx.labels(&[cells.members(g)[0], cells.members(h)[0]]), format!("Hom dimension {dim}, intersection size {count}")))
    })
}

fn left_cell_orthogonality(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let cells = alg.left_cells();
    let reps = ctx.reps;
    let items: Vec<(usize, usize, usize)> =
        (0..cells.len()).flat_map(|g| irrep_pairs(ctx).into_iter().map(move |(l, m)| (g, l, m))).collect();
    scan(&items, |&(g, l, m)| {
        let (x, y) = (&reps.irreps[l], &reps.irreps[m]);
        let members = cells.members(g);
        let label = vec![ctx.label(members[0]), x.label.clone(), y.label.clone()];
        let expected = if l == m { reps.invariants[l].f * reps.invariants[l].multiplicities[g] } else { 0 };
        let chi = |a: usize| x.character(a) * y.character(alg.transpose(a));
        let whole: i64 = members.iter().map(|&a| chi(a)).sum();
        let diagonal: i64 = members.iter().filter(|&&a| cells.same(a, alg.transpose(a))).map(|&a| chi(a)).sum();
        if whole != expected || diagonal != expected {
            return Some(witness(label, format!("character sums {whole} and {diagonal}, expected {expected}")));
        }
        // entrywise form of the same relations
        let mut sums = vec![vec![0i64; y.dim * y.dim]; x.dim * x.dim];
        for &a in members {
            if let (Some(ma), Some(mb)) = (x.rho(a), y.rho(alg.transpose(a))) {
                for s in 0..x.dim {
                    for t in 0..x.dim {
                        for u in 0..y.dim {
                            for v in 0..y.dim {
                                sums[s * x.dim + t][u * y.dim + v] += ma[s][t] * mb[u][v];
                            }
                        }
                    }
                }
            }
        }
        if l != m {
            return sums.iter().flatten().any(|&v| v != 0).then(|| witness(label, "matrix coefficients are not orthogonal"));
        }
        (0..x.dim)
            .find(|&s| (0..x.dim).map(|t| sums[s * x.dim + t][t * x.dim + s]).sum::<i64>() != expected)
            .map(|s| witness(label, format!("row {s} does not sum to {expected}")))
    })
}

fn characters_detect_self_transpose_left_cells(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    scan(&ctx.dom.all(), |&a| {
        let seen = ctx.reps.irreps.iter().any(|r| r.character(a) != 0);
        let symmetric = alg.left_cells().same(a, alg.transpose(a));
        (seen != symmetric).then(|| witness(vec![ctx.label(a)], format!("some character nonzero {seen}, left cell self-transpose {symmetric}")))
    })
}

fn gamma_from_representations(ctx: &Ctx) -> CheckOutcome {
    let alg = ctx.alg;
    let reps = ctx.reps;
    let lcm = reps.invariants.iter().fold(1i64, |l, i| l.lcm(&i.f));
    let family = |x: usize| alg.two_sided_cells().class_of(x);
    scan(&ctx.dom.triples("gamma_from_representations"), |&(a, b, c)| {
        let g = alg.gamma(a, b, c);
        if family(a) != family(b) || family(b) != family(c) {
            return (g != 0).then(|| witness(ctx.labels(&[a, b, c]), format!("gamma {g} across two-sided cells")));
        }
        let mut total = 0i64;
        for &l in &reps.families[family(a)] {
            let rep = &reps.irreps[l];
            let (Some(x), Some(y), Some(z)) = (rep.rho(a), rep.rho(b), rep.rho(c)) else { continue };
            total += trace(&mat_mul(&mat_mul(x, y), z)) * (lcm / reps.invariants[l].f);
        }
        (total != g * lcm).then(|| witness(ctx.labels(&[a, b, c]), format!("gamma {g}, representation sum {total}/{lcm}")))
    })
}

fn left_cell_multiplicity_sums(ctx: &Ctx) -> CheckOutcome {
    let sums = ctx.reps.left_cell_sums();
    let cells = ctx.alg.left_cells();
    let ids: Vec<usize> = (0..sums.len()).collect();
    scan(&ids, |&g| (!sums[g].is_one()).then(|| witness(vec![ctx.label(cells.members(g)[0])], format!("sum {}", sums[g]))))
}

/// A constituent with `f = 1` is the whole left cell module.
fn unit_f_forces_irreducible_left_cell(ctx: &Ctx) -> CheckOutcome {
    let inv = &ctx.reps.invariants;
    let cells = ctx.alg.left_cells();
    let items: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|g| (0..inv.len()).map(move |l| (g, l)))
        .filter(|&(g, l)| inv[l].f == 1 && inv[l].multiplicities[g] != 0)
        .collect();
    if items.is_empty() {
        return CheckOutcome::skipped("no constituent with f = 1");
    }
    scan(&items, |&(g, l)| {
        let ok = (0..inv.len()).all(|m| inv[m].multiplicities[g] == i64::from(m == l));
        (!ok).then(|| witness(vec![ctx.label(cells.members(g)[0]), ctx.reps.irreps[l].label.clone()], "left cell module is not irreducible"))
    })
}

fn signed_canonical_basis_is_cellular(ctx: &Ctx) -> CheckOutcome {
    let Some(datum) = ctx.cells else {
        return CheckOutcome::from_failures(1, vec![witness(Vec::new(), "cellular datum could not be built")]);
    };
    match signed_canonical_check(datum) {
        Err(Error::NotApplicable(why)) => CheckOutcome::skipped(why),
        Err(e) => CheckOutcome::from_failures(1, vec![witness(Vec::new(), e.to_string())]),
        Ok(m) => {
            let negative = m.matches.iter().filter(|x| x.2 < 0).count();
            let failures = m.failures.into_iter().map(|f| witness(Vec::new(), f)).collect();
            CheckOutcome::from_failures(datum.len() as u64, failures).with_note(format!("{negative} negative signs"))
        }
    }
}
