//! Integer lattices in row Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Row Hermite normal form of the lattice spanned by `generators`.
///
/// Rows are the nonzero rows of the echelon form: pivots positive, entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hnf(generators: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> =
        generators.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let Some(ncols) = m.first().map(Vec::len) else { return m };
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        loop {
            let best = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let Some(p) = best else { break };
            m.swap(p, r);
            let mut clean = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let pivot_row = m[r].clone();
                sub_multiple(&mut m[i], &pivot_row, &q);
                clean &= m[i][c].is_zero();
            }
            if clean {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            m[r].iter_mut().for_each(|x| *x = -&*x);
        }
        let pivot_row = m[r].clone();
        for row in &mut m[..r] {
            let q = row[c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                sub_multiple(row, &pivot_row, &q);
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

fn sub_multiple(row: &mut [BigInt], pivot: &[BigInt], q: &BigInt) {
    for (x, y) in row.iter_mut().zip(pivot) {
        *x -= q * y;
    }
}

/// Hermite basis of a lattice that must have rank `rank`.
pub fn lattice_hnf(generators: &[Vec<BigInt>], rank: usize) -> Result<Vec<Vec<BigInt>>> {
    let h = hnf(generators);
    if h.len() != rank {
        return Err(Error::RankDeficient { expected: rank, found: h.len() });
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(lattice_hnf(&v(&[&[2, 0], &[0, 2], &[1, 1]]), 2).unwrap(), v(&[&[1, 1], &[0, 2]]));
        assert_eq!(lattice_hnf(&v(&[&[1, 0], &[0, 1]]), 2).unwrap(), v(&[&[1, 0], &[0, 1]]));
        assert!(matches!(lattice_hnf(&v(&[&[2, 0]]), 2), Err(Error::RankDeficient { .. })));
    }
}
