//! Dense matrices over an exact [`Field`].

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::field::{Field, Rationals};
use super::poly::QPoly;

/// Row-major dense matrix. Arithmetic goes through an explicit field value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

pub type RatMatrix = Matrix<BigRational>;

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let n = rows.len();
        let data: Vec<E> = rows.into_iter().flat_map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            r
        }).collect();
        Matrix { rows: n, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Rows `rs` and columns `cs`, in the given order.
    pub fn submatrix(&self, rs: &[usize], cs: &[usize]) -> Self {
        let data = rs.iter().flat_map(|&i| cs.iter().map(move |&j| self.get(i, j).clone())).collect();
        Matrix { rows: rs.len(), cols: cs.len(), data }
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros<F: Field<Elt = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elt = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn is_zero<F: Field<Elt = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn add<F: Field<Elt = E>>(&self, f: &F, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub<F: Field<Elt = E>>(&self, f: &F, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale<F: Field<Elt = E>>(&self, f: &F, c: &E) -> Self {
        self.map(|x| f.mul(x, c))
    }

    pub fn mul<F: Field<Elt = E>>(&self, f: &F, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !f.is_zero(b) {
                        let idx = i * o.cols + j;
                        out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elt = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    pub fn trace<F: Field<Elt = E>>(&self, f: &F) -> E {
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref<F: Field<Elt = E>>(&self, f: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
            m.swap_rows(p, r);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot is invertible");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    if f.is_zero(m.get(r, j)) {
                        continue;
                    }
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank<F: Field<Elt = E>>(&self, f: &F) -> usize {
        self.rref(f).1.len()
    }

    /// A basis of `{x : self * x = 0}`.
    pub fn nullspace<F: Field<Elt = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`.
    pub fn solve<F: Field<Elt = E>>(&self, f: &F, b: &[E]) -> Option<Vec<E>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let (r, pivots) = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn det<F: Field<Elt = E>>(&self, f: &F) -> E {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else { return f.zero() };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).unwrap();
            for i in c + 1..n {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse<F: Field<Elt = E>>(&self, f: &F) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.submatrix(&rows, &cols))
    }

    /// Monic minimal polynomial, lowest degree first, via linear dependence
    /// among the powers of the matrix.
    pub fn min_poly_coeffs<F: Field<Elt = E>>(&self, f: &F) -> Vec<E> {
        assert!(self.is_square());
        let n = self.rows;
        // echelon rows: (vector, combination of powers producing it, pivot)
        let mut basis: Vec<(Vec<E>, Vec<E>, usize)> = Vec::new();
        let mut power = Self::identity(f, n);
        for k in 0..=n {
            let mut v = power.data.clone();
            let mut comb = vec![f.zero(); k + 1];
            comb[k] = f.one();
            for (bv, bc, p) in &basis {
                if f.is_zero(&v[*p]) {
                    continue;
                }
                let factor = v[*p].clone();
                for (x, y) in v.iter_mut().zip(bv) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
                for (x, y) in comb.iter_mut().zip(bc) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
            match v.iter().position(|x| !f.is_zero(x)) {
                None => return comb,
                Some(p) => {
                    let inv = f.inv(&v[p]).unwrap();
                    let v: Vec<E> = v.iter().map(|x| f.mul(x, &inv)).collect();
                    let comb: Vec<E> = comb.iter().map(|x| f.mul(x, &inv)).collect();
                    basis.push((v, comb, p));
                }
            }
            power = power.mul(f, self);
        }
        unreachable!("Cayley-Hamilton bounds the degree of the minimal polynomial")
    }
}

impl RatMatrix {
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
                .collect(),
            cols,
        )
    }

    pub fn min_poly(&self) -> QPoly {
        QPoly::new(self.min_poly_coeffs(&Rationals))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_poly_examples() {
        let q = Rationals;
        assert_eq!(RatMatrix::identity(&q, 3).min_poly(), QPoly::from_ints(&[-1, 1]));
        let d = RatMatrix::from_int_rows(&[vec![1, 0], vec![0, 2]]);
        assert_eq!(d.min_poly(), QPoly::from_ints(&[2, -3, 1]));
        let c = RatMatrix::from_int_rows(&[vec![0, 1], vec![1, 1]]);
        assert_eq!(c.min_poly(), QPoly::from_ints(&[-1, -1, 1]));
    }

    #[test]
    fn inverse_and_det() {
        let q = Rationals;
        let m = RatMatrix::from_int_rows(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(m.det(&q), BigRational::from_integer(1.into()));
        let inv = m.inverse(&q).unwrap();
        assert_eq!(m.mul(&q, &inv), RatMatrix::identity(&q, 2));
        let s = RatMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(s.inverse(&q).is_none());
        assert_eq!(s.nullspace(&q).len(), 1);
    }
}
