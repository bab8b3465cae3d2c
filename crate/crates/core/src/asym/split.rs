//! Exact splitting of the asymptotic algebra into irreducible integer
//! representations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::block::{is_zero, CellBlock, Vector};
use crate::error::{Error, Result};
use crate::exact::{lattice_hnf, QPoly};
use crate::schur::SchurAlgebra;

/// Square integer matrix stored by rows.
pub type IntMatrix = Vec<Vec<i64>>;

/// An irreducible representation of the asymptotic algebra over `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irrep {
    pub label: String,
    pub dim: usize,
    /// Index of the two-sided cell whose block acts nontrivially.
    pub family: usize,
    /// `rho(t_A)` for each `A` in the family; all other `t_A` act by zero.
    pub rho: BTreeMap<usize, IntMatrix>,
}

impl Irrep {
    pub fn rho(&self, a: usize) -> Option<&IntMatrix> {
        self.rho.get(&a)
    }

    /// `rho(t_A)`, zero when `A` lies outside the family.
    pub fn rho_dense(&self, a: usize) -> IntMatrix {
        self.rho.get(&a).cloned().unwrap_or_else(|| vec![vec![0; self.dim]; self.dim])
    }

    pub fn character(&self, a: usize) -> i64 {
        self.rho.get(&a).map_or(0, |m| (0..self.dim).map(|i| m[i][i]).sum())
    }
}

const CENTRAL_ATTEMPTS: usize = 24;
const REFINE_ATTEMPTS: usize = 400;

/// Splits `J` over `Q` into its simple modules, each given by integer matrices.
pub fn split_irreps(alg: &SchurAlgebra, seed: u64) -> Result<Vec<Irrep>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (family, members) in alg.two_sided_cells().classes().iter().enumerate() {
        let blk = CellBlock::new(alg, members);
        let mut found = None;
        for _ in 0..CENTRAL_ATTEMPTS {
            if let Some(reps) = try_split_block(alg, &blk, family, &mut rng)? {
                found = Some(reps);
                break;
            }
        }
        let reps = found.ok_or(Error::RetryExhausted(CENTRAL_ATTEMPTS))?;
        out.extend(reps);
    }
    for (i, r) in out.iter_mut().enumerate() {
        r.label = format!("λ{i}");
    }
    Ok(out)
}

fn random_element(blk: &CellBlock, rng: &mut ChaCha8Rng) -> Vector {
    (0..blk.dim()).map(|_| BigRational::from_integer(rng.gen_range(-5i64..=5).into())).collect()
}

/// One attempt: `None` when the random central element failed to separate
/// the simple components.
fn try_split_block(alg: &SchurAlgebra, blk: &CellBlock, family: usize, rng: &mut ChaCha8Rng) -> Result<Option<Vec<Irrep>>> {
    let x = random_element(blk, rng);
    // sum over dual bases of t_A x t_{A^t} is central
    let mut z = vec![BigRational::zero(); blk.dim()];
    for (i, &a) in blk.members.iter().enumerate() {
        let at = blk.local[&alg.transpose(a)];
        let ax = blk.mul_basis_left(i, &x);
        let term = blk.mul(&ax, &blk.basis(at));
        for (s, t) in z.iter_mut().zip(term) {
            *s += t;
        }
    }
    let mp = blk.min_poly(&z);
    let roots = mp.rational_roots();
    if roots.len() != mp.degree().unwrap_or(0) {
        return Err(Error::SplitFailure(format!(
            "central element has minimal polynomial {mp} without a full set of rational roots"
        )));
    }
    let mut reps = Vec::new();
    let mut total = 0;
    for (i, r) in roots.iter().enumerate() {
        let mut lagrange = QPoly::one();
        for (j, s) in roots.iter().enumerate() {
            if i != j {
                lagrange = lagrange.mul(&QPoly::linear(s)).scale(&(r - s).recip());
            }
        }
        let e = blk.eval_poly(&lagrange, &z);
        let block_dim = CellBlock::rank(&(0..blk.dim()).map(|a| blk.mul_basis_left(a, &e)).collect::<Vec<_>>());
        let f = primitive_idempotent(alg, blk, &e, rng)?;
        let rep = module_from_idempotent(blk, &f, family)?;
        if rep.dim * rep.dim != block_dim {
            return Ok(None);
        }
        total += block_dim;
        reps.push(rep);
    }
    debug_assert_eq!(total, blk.dim());
    Ok(Some(reps))
}

/// A primitive idempotent below the central idempotent `e`, starting from
/// `e t_D` for the distinguished `D` giving the smallest corner.
fn primitive_idempotent(alg: &SchurAlgebra, blk: &CellBlock, e: &[BigRational], rng: &mut ChaCha8Rng) -> Result<Vector> {
    let mut best: Option<(usize, Vector, usize)> = None;
    for (i, &d) in blk.members.iter().enumerate() {
        if !alg.is_distinguished(d) {
            continue;
        }
        let f = blk.mul(e, &blk.basis(i));
        if is_zero(&f) {
            continue;
        }
        let dim = blk.corner_dim(&f);
        if best.as_ref().is_none_or(|(b, _, _)| dim < *b) {
            best = Some((dim, f, d));
        }
    }
    let (mut dim, mut f, d) = best.expect("a central idempotent is nonzero on some t_D");
    let diag: Vec<usize> = alg
        .left_cells()
        .members(alg.left_cells().class_of(d))
        .iter()
        .filter(|&&a| alg.left_cells().same(alg.transpose(a), d))
        .map(|a| blk.local[a])
        .collect();
    let mut attempt = 0;
    while dim > 1 {
        if attempt >= REFINE_ATTEMPTS {
            return Err(Error::RetryExhausted(REFINE_ATTEMPTS));
        }
        let seed: Vector = if attempt < diag.len() {
            blk.basis(diag[attempt])
        } else {
            let mut v = vec![BigRational::zero(); blk.dim()];
            for &a in &diag {
                v[a] = BigRational::from_integer(rng.gen_range(-3i64..=3).into());
            }
            v
        };
        attempt += 1;
        let y = blk.mul(&blk.mul(&f, &seed), &f);
        if let Some((d2, f2)) = split_by_eigenvalue(blk, &f, &y, dim) {
            dim = d2;
            f = f2;
        }
    }
    Ok(f)
}

/// Projects `f` onto a generalized eigenspace of `y`; returns the smaller
/// nonzero corner found, if any root separates.
fn split_by_eigenvalue(blk: &CellBlock, f: &[BigRational], y: &[BigRational], dim: usize) -> Option<(usize, Vector)> {
    let mp = blk.min_poly(y);
    let mut best: Option<(usize, Vector)> = None;
    for r in mp.rational_roots() {
        let lin = QPoly::linear(&r);
        let mut power = QPoly::one();
        let mut rest = mp.clone();
        loop {
            let (q, rem) = rest.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            rest = q;
            power = power.mul(&lin);
        }
        if rest.degree() == Some(0) {
            continue;
        }
        let (_, _, t) = power.ext_gcd(&rest);
        let proj = blk.eval_poly(&t.mul(&rest), y);
        let f2 = blk.mul(&proj, f);
        if is_zero(&f2) {
            continue;
        }
        let d2 = blk.corner_dim(&f2);
        if d2 < dim && best.as_ref().is_none_or(|(b, _)| d2 < *b) {
            best = Some((d2, f2));
        }
    }
    best
}

/// The left ideal `J f` with the integral lattice spanned by the `t_A f`.
fn module_from_idempotent(blk: &CellBlock, f: &[BigRational], family: usize) -> Result<Irrep> {
    let den = f.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<BigRational> = f.iter().map(|x| x * BigRational::from_integer(den.clone())).collect();
    let gens: Vec<Vec<BigInt>> = (0..blk.dim())
        .map(|a| blk.mul_basis_left(a, &scaled).into_iter().map(|x| x.to_integer()).collect())
        .collect();
    let dim = CellBlock::rank(&(0..blk.dim()).map(|a| blk.mul_basis_left(a, f)).collect::<Vec<_>>());
    let basis = lattice_hnf(&gens, dim)?;
    let pivots: Vec<usize> = basis.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
    let as_rat = |v: &[BigInt]| -> Vector { v.iter().map(|x| BigRational::from_integer(x.clone())).collect() };
    let mut rho = BTreeMap::new();
    for (a, &global) in blk.members.iter().enumerate() {
        let mut m = vec![vec![0i64; dim]; dim];
        for (j, b) in basis.iter().enumerate() {
            let mut v: Vec<BigInt> = blk.mul_basis_left(a, &as_rat(b)).into_iter().map(|x| x.to_integer()).collect();
            for (k, row) in basis.iter().enumerate() {
                let p = pivots[k];
                let (c, r) = v[p].div_rem(&row[p]);
                debug_assert!(r.is_zero());
                if !c.is_zero() {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x -= &c * y;
                    }
                }
                m[k][j] = c.to_i64().expect("representation entries fit in i64");
            }
            debug_assert!(v.iter().all(Zero::is_zero));
        }
        if m.iter().any(|r| r.iter().any(|&x| x != 0)) {
            rho.insert(global, m);
        }
    }
    Ok(Irrep { label: String::new(), dim, family, rho })
}
