//! Exact arithmetic inside one two-sided block `J_c` of the asymptotic algebra.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{Matrix, QPoly, Rationals};
use crate::schur::SchurAlgebra;

pub(crate) type Vector = Vec<BigRational>;

/// `J_c` with its basis renumbered `0..m`.
pub(crate) struct CellBlock {
    pub members: Vec<usize>,
    pub local: HashMap<usize, usize>,
    /// `table[a][b]`: `t_a t_b` in local coordinates.
    table: Vec<Vec<Vec<(usize, i64)>>>,
    pub identity: Vector,
}

impl CellBlock {
    pub fn new(alg: &SchurAlgebra, members: &[usize]) -> Self {
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let table = members
            .iter()
            .map(|&a| {
                members
                    .iter()
                    .map(|&b| {
                        alg.j_product(a, b)
                            .iter()
                            .map(|(c, v)| (*local.get(c).expect("products stay inside a two-sided cell"), *v))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let m = members.len();
        let mut identity = vec![BigRational::zero(); m];
        for (i, &c) in members.iter().enumerate() {
            if alg.is_distinguished(c) {
                identity[i] = BigRational::one();
            }
        }
        CellBlock { members: members.to_vec(), local, table, identity }
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }

    pub fn basis(&self, i: usize) -> Vector {
        let mut v = vec![BigRational::zero(); self.dim()];
        v[i] = BigRational::one();
        v
    }

    pub fn mul(&self, x: &[BigRational], y: &[BigRational]) -> Vector {
        let mut out = vec![BigRational::zero(); self.dim()];
        for (a, u) in x.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
            for (b, v) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let uv = u * v;
                for (c, k) in &self.table[a][b] {
                    out[*c] += &uv * BigRational::from_integer(BigInt::from(*k));
                }
            }
        }
        out
    }

    /// `t_a x` without building a dense left factor.
    pub fn mul_basis_left(&self, a: usize, x: &[BigRational]) -> Vector {
        let mut out = vec![BigRational::zero(); self.dim()];
        for (b, v) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (c, k) in &self.table[a][b] {
                out[*c] += v * BigRational::from_integer(BigInt::from(*k));
            }
        }
        out
    }

    /// Monic minimal polynomial of `x` as an element of the unital algebra.
    pub fn min_poly(&self, x: &[BigRational]) -> QPoly {
        let mut basis: Vec<(Vector, Vector, usize)> = Vec::new();
        let mut power = self.identity.clone();
        for k in 0..=self.dim() {
            let mut v = power.clone();
            let mut comb = vec![BigRational::zero(); k + 1];
            comb[k] = BigRational::one();
            for (bv, bc, p) in &basis {
                if v[*p].is_zero() {
                    continue;
                }
                let factor = v[*p].clone();
                for (x, y) in v.iter_mut().zip(bv) {
                    *x -= &factor * y;
                }
                for (x, y) in comb.iter_mut().zip(bc) {
                    *x -= &factor * y;
                }
            }
            match v.iter().position(|x| !x.is_zero()) {
                None => return QPoly::new(comb),
                Some(p) => {
                    let inv = v[p].recip();
                    let v: Vector = v.iter().map(|x| x * &inv).collect();
                    let comb: Vector = comb.iter().map(|x| x * &inv).collect();
                    basis.push((v, comb, p));
                }
            }
            power = self.mul(&power, x);
        }
        unreachable!("the degree of a minimal polynomial is at most the dimension")
    }

    /// `p(x)`, with constants read as multiples of the identity.
    pub fn eval_poly(&self, p: &QPoly, x: &[BigRational]) -> Vector {
        let mut out = vec![BigRational::zero(); self.dim()];
        for c in p.coeffs().iter().rev() {
            out = self.mul(&out, x);
            for (o, e) in out.iter_mut().zip(&self.identity) {
                *o += c * e;
            }
        }
        out
    }

    pub fn rank(vectors: &[Vector]) -> usize {
        if vectors.is_empty() {
            return 0;
        }
        let cols = vectors[0].len();
        Matrix::from_rows(vectors.to_vec(), cols).rank(&Rationals)
    }

    /// `dim x J x` for an idempotent `x`.
    pub fn corner_dim(&self, x: &[BigRational]) -> usize {
        let corner: Vec<Vector> = (0..self.dim()).map(|a| self.mul(x, &self.mul_basis_left(a, x))).collect();
        Self::rank(&corner)
    }
}

pub(crate) fn is_zero(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}
