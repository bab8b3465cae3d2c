//! Positive lines `M_{G,G'}` inside `J_{G ∩ G'^t}`, one for each ordered pair
//! of left cells in the same two-sided cell.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rationals};
use crate::schur::SchurAlgebra;

/// Sparse element of `J` with integer coefficients.
pub type JVector = BTreeMap<usize, i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialLine {
    pub left: usize,
    pub right: usize,
    /// Eigenvalue of `sum_{A in G' ∩ G'^t} t_A` on the line.
    pub eigenvalue: i64,
    /// Primitive generator with positive coefficients.
    pub vector: Vec<(usize, i64)>,
    /// Whether floating-point power iteration found the same dominant eigenvalue.
    pub float_agrees: bool,
}

impl SpecialLine {
    pub fn as_jvector(&self) -> JVector {
        self.vector.iter().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialModules {
    pub lines: Vec<SpecialLine>,
}

/// Members of left cell `g` whose transpose lies in left cell `h`.
fn intersection(alg: &SchurAlgebra, g: usize, h: usize) -> Vec<usize> {
    let cells = alg.left_cells();
    cells.members(g).iter().copied().filter(|&a| cells.class_of(alg.transpose(a)) == h).collect()
}

pub fn j_mul(alg: &SchurAlgebra, x: &JVector, y: &JVector) -> JVector {
    let mut out = JVector::new();
    for (&a, &u) in x {
        for (&b, &v) in y {
            if alg.col(a) != alg.row(b) {
                continue;
            }
            for &(c, k) in alg.j_product(a, b) {
                *out.entry(c).or_default() += u * v * k;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// `true` when `w = k v` for some rational `k > 0`.
pub fn positive_multiple(w: &JVector, v: &JVector) -> bool {
    if w.len() != v.len() || w.is_empty() {
        return false;
    }
    let (&a0, &w0) = w.iter().next().unwrap();
    let Some(&v0) = v.get(&a0) else { return false };
    if (w0 > 0) != (v0 > 0) {
        return false;
    }
    w.iter().all(|(a, &x)| v.get(a).is_some_and(|&y| x as i128 * v0 as i128 == y as i128 * w0 as i128))
}

fn dominant_eigenvalue_float(m: &[Vec<i64>]) -> f64 {
    let n = m.len();
    let mut v = vec![1.0f64; n];
    let mut est = 0.0;
    for _ in 0..4000 {
        // shifted by the identity so that a periodic part cannot stall convergence
        let w: Vec<f64> = (0..n).map(|i| v[i] + (0..n).map(|j| m[i][j] as f64 * v[j]).sum::<f64>()).collect();
        let norm = w.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if norm == 0.0 {
            return 0.0;
        }
        est = norm / v.iter().fold(0.0f64, |a, x| a.max(x.abs())) - 1.0;
        v = w.iter().map(|x| x / norm).collect();
    }
    est
}

fn line_for(alg: &SchurAlgebra, g: usize, h: usize) -> Result<SpecialLine> {
    let support = intersection(alg, g, h);
    if support.is_empty() {
        return Err(Error::NoRationalPerronRoot(format!("left cells {g} and {h}: empty intersection")));
    }
    let ops = intersection(alg, h, h);
    let pos: BTreeMap<usize, usize> = support.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let k = support.len();
    let mut m = vec![vec![0i64; k]; k];
    for &a in &ops {
        for (j, &b) in support.iter().enumerate() {
            if alg.col(a) != alg.row(b) {
                continue;
            }
            for &(c, v) in alg.j_product(a, b) {
                let i = *pos.get(&c).ok_or_else(|| {
                    Error::CrossCheckMismatch(format!("left multiplication leaves the span of left cell {g}"))
                })?;
                m[i][j] += v;
            }
        }
    }
    let mat = RatMatrix::from_int_rows(&m);
    let mut roots = mat.min_poly().rational_roots();
    roots.retain(|r| r.is_integer());
    roots.reverse();
    for r in roots {
        let shifted = mat.sub(&Rationals, &RatMatrix::identity(&Rationals, k).scale(&Rationals, &r));
        let null = shifted.nullspace(&Rationals);
        if null.len() != 1 {
            continue;
        }
        let v = &null[0];
        let den = v.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let sign = if ints[0] < BigInt::zero() { -1 } else { 1 };
        let ints: Vec<i64> = ints.iter().map(|x| (x / &content).to_i64().expect("small entries") * sign).collect();
        if ints.iter().all(|&x| x > 0) {
            let eigenvalue = r.to_integer().to_i64().expect("small eigenvalue");
            let est = dominant_eigenvalue_float(&m);
            return Ok(SpecialLine {
                left: g,
                right: h,
                eigenvalue,
                vector: support.iter().copied().zip(ints).collect(),
                float_agrees: (est - eigenvalue as f64).abs() < 1e-6 * (1.0 + eigenvalue as f64),
            });
        }
    }
    Err(Error::NoRationalPerronRoot(format!("left cells {g} and {h}")))
}

impl SpecialModules {
    pub fn compute(alg: &SchurAlgebra) -> Result<Self> {
        let cells = alg.left_cells();
        let two = alg.two_sided_cells();
        let family = |g: usize| two.class_of(cells.members(g)[0]);
        let mut lines = Vec::new();
        for g in 0..cells.len() {
            for h in 0..cells.len() {
                if family(g) == family(h) {
                    lines.push(line_for(alg, g, h)?);
                }
            }
        }
        Ok(SpecialModules { lines })
    }

    pub fn line(&self, left: usize, right: usize) -> Option<&SpecialLine> {
        self.lines.iter().find(|l| l.left == left && l.right == right)
    }

    /// Checks how basis elements and the lines themselves multiply, and
    /// the action of the transpose anti-involution. Returns the failures.
    pub fn verify(&self, alg: &SchurAlgebra) -> Vec<String> {
        let cells = alg.left_cells();
        let mut failures = Vec::new();
        let zero_or_multiple = |w: &JVector, target: Option<(usize, usize)>, what: String, failures: &mut Vec<String>| {
            match target {
                None if !w.is_empty() => failures.push(format!("{what}: expected zero")),
                Some((g, h)) => {
                    let ok = self.line(g, h).is_some_and(|l| positive_multiple(w, &l.as_jvector()));
                    if !ok {
                        failures.push(format!("{what}: expected a positive multiple of the line ({g}, {h})"));
                    }
                }
                None => {}
            }
        };
        for l in &self.lines {
            let v = l.as_jvector();
            let fam = alg.two_sided_cells().class_of(l.vector[0].0);
            for &a in alg.two_sided_cells().members(fam) {
                let (ga, gat) = (cells.class_of(a), cells.class_of(alg.transpose(a)));
                let w = j_mul(alg, &[(a, 1)].into_iter().collect(), &v);
                let target = (ga == l.right).then_some((l.left, gat));
                zero_or_multiple(&w, target, format!("t_{a} on line ({}, {})", l.left, l.right), &mut failures);
            }
            for o in &self.lines {
                let w = j_mul(alg, &v, &o.as_jvector());
                let target = (l.left == o.right).then_some((o.left, l.right));
                let what = format!("line ({}, {}) times line ({}, {})", l.left, l.right, o.left, o.right);
                zero_or_multiple(&w, target, what, &mut failures);
            }
            let flipped: JVector = l.vector.iter().map(|&(a, x)| (alg.transpose(a), x)).collect();
            zero_or_multiple(&flipped, Some((l.right, l.left)), format!("transpose of line ({}, {})", l.left, l.right), &mut failures);
            if !l.float_agrees {
                failures.push(format!("line ({}, {}): power iteration disagrees with {}", l.left, l.right, l.eigenvalue));
            }
        }
        failures
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CartanDatum, CartanType, WeylGroup};
    use crate::hecke::HeckeData;
    use crate::schur::OrbitSpec;

    fn setup(kind: CartanType, rank: usize, spec: &str) -> SchurAlgebra {
        let g = WeylGroup::new(CartanDatum::new(kind, rank).unwrap()).unwrap();
        SchurAlgebra::build(&HeckeData::build(g).unwrap(), &OrbitSpec::parse(spec, rank).unwrap()).unwrap()
    }

    #[test]
    fn lines_exist_and_multiply_as_expected() {
        for (kind, rank, spec) in [(CartanType::A, 1, "1;-"), (CartanType::B, 2, "1,2;1;2;-"), (CartanType::G, 2, "1;2;-")] {
            let alg = setup(kind, rank, spec);
            let sm = SpecialModules::compute(&alg).unwrap();
            let pairs: usize = alg
                .two_sided_cells()
                .classes()
                .iter()
                .map(|c| {
                    let k = (0..alg.left_cells().len()).filter(|&g| c.contains(&alg.left_cells().members(g)[0])).count();
                    k * k
                })
                .sum();
            assert_eq!(sm.lines.len(), pairs);
            assert_eq!(sm.verify(&alg), Vec::<String>::new(), "{spec}");
        }
    }

    #[test]
    fn positive_multiple_detects_sign_and_support() {
        let v: JVector = [(0, 1), (2, 2)].into_iter().collect();
        assert!(positive_multiple(&[(0, 3), (2, 6)].into_iter().collect(), &v));
        assert!(!positive_multiple(&[(0, -3), (2, -6)].into_iter().collect(), &v));
        assert!(!positive_multiple(&[(0, 3)].into_iter().collect(), &v));
        assert!(!positive_multiple(&[(0, 3), (2, 5)].into_iter().collect(), &v));
    }
}
