use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::split::{split_irreps, IntMatrix, Irrep};
use crate::error::{Error, Result};
use crate::exact::{prime_factors, LaurentInt, RatFunc, RatMatrix, Rationals};
use crate::schur::SchurAlgebra;

/// Numerical invariants attached to one irreducible representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepInvariants {
    pub f: i64,
    pub a: u32,
    pub schur_element: RatFunc,
    /// Whether the Schur element is a Laurent polynomial.
    pub schur_element_is_laurent: bool,
    /// `Tr(t_D)` for the distinguished `D` of each left cell, in left-cell order.
    pub multiplicities: Vec<i64>,
    pub p_matrix: IntMatrix,
    pub p_det: String,
    /// `Tr({A}, E_q)` for all `A`.
    pub canonical_traces: Vec<LaurentInt>,
    /// `Tr([A], E_q)` for all `A`.
    pub standard_traces: Vec<LaurentInt>,
}

/// The representation theory of the asymptotic algebra and its pullback
/// to the q-Schur algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepData {
    pub seed: u64,
    pub irreps: Vec<Irrep>,
    pub invariants: Vec<RepInvariants>,
    /// Irreps per two-sided cell.
    pub families: Vec<Vec<usize>>,
    pub bad_primes: Vec<u64>,
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let x = a[i][k];
            if x != 0 {
                for j in 0..m {
                    out[i][j] += x * bk[j];
                }
            }
        }
    }
    out
}

pub fn mat_transpose(a: &IntMatrix) -> IntMatrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

fn laurent_i(x: i64) -> LaurentInt {
    LaurentInt::from_i64(x)
}

impl RepData {
    pub fn compute(alg: &SchurAlgebra, seed: u64) -> Result<Self> {
        let irreps = split_irreps(alg, seed)?;
        let n = alg.len();
        let total: usize = irreps.iter().map(|r| r.dim * r.dim).sum();
        if total != n {
            return Err(Error::SplitFailure(format!("dimensions squared sum to {total}, expected {n}")));
        }
        let mut families = vec![Vec::new(); alg.two_sided_cells().len()];
        for (i, r) in irreps.iter().enumerate() {
            families[r.family].push(i);
        }

        let mut invariants = Vec::with_capacity(irreps.len());
        let mut bad = std::collections::BTreeSet::new();
        for rep in &irreps {
            let d = rep.dim as i64;
            let sum: i64 = (0..n).map(|a| rep.character(a) * rep.character(alg.transpose(a))).sum();
            if sum % d != 0 {
                return Err(Error::NotDivisible(format!("{}: character sum {sum} by dimension {d}", rep.label)));
            }
            let f = sum / d;
            if f <= 0 {
                return Err(Error::PositivityViolation(format!("{}: f = {f}", rep.label)));
            }
            bad.extend(prime_factors(&BigInt::from(f)));

            let canonical_traces: Vec<LaurentInt> = (0..n)
                .map(|c| {
                    alg.phi(c).iter().fold(LaurentInt::zero(), |acc, (x, v)| acc + v.scale(&rep.character(*x).into()))
                })
                .collect();
            let standard_traces: Vec<LaurentInt> = (0..n)
                .map(|c| {
                    alg.standard_in_canonical(c)
                        .iter()
                        .fold(LaurentInt::zero(), |acc, (x, v)| acc + v * &canonical_traces[*x])
                })
                .collect();

            let a = alg.a(alg.two_sided_cells().members(rep.family)[0]);
            let trace_a = (0..n)
                .filter_map(|c| {
                    standard_traces[c].valuation().map(|v| alg.xi().orbit_longest_len(alg.col(c)) as i64 - v)
                })
                .max()
                .unwrap_or(0);
            if trace_a != a as i64 {
                return Err(Error::CrossCheckMismatch(format!(
                    "{}: a-value {a} from the family but {trace_a} from trace valuations",
                    rep.label
                )));
            }

            let multiplicities = alg
                .left_cells()
                .classes()
                .iter()
                .map(|cell| {
                    let d = *cell.iter().find(|&&c| alg.is_distinguished(c)).unwrap();
                    rep.character(d)
                })
                .collect();

            let mut p1 = vec![vec![0i64; rep.dim]; rep.dim];
            for m in rep.rho.values() {
                let prod = mat_mul(&mat_transpose(m), m);
                for i in 0..rep.dim {
                    for j in 0..rep.dim {
                        p1[i][j] += prod[i][j];
                    }
                }
            }
            let g = p1.iter().flatten().fold(0i64, |g, &x| g.gcd(&x));
            let p_matrix: IntMatrix = p1.iter().map(|r| r.iter().map(|x| x / g).collect()).collect();
            let p_det = RatMatrix::from_int_rows(&p_matrix).det(&Rationals).to_integer().to_string();

            invariants.push(RepInvariants {
                f,
                a,
                schur_element: RatFunc::zero(),
                schur_element_is_laurent: true,
                multiplicities,
                p_matrix,
                p_det,
                canonical_traces,
                standard_traces,
            });
        }

        // Schur elements from the orthogonality of standard-basis traces.
        let k = irreps.len();
        for l in 0..k {
            for m in 0..k {
                let mut s = LaurentInt::zero();
                for a in 0..n {
                    let ta = &invariants[l].standard_traces[a];
                    let tb = &invariants[m].standard_traces[alg.transpose(a)];
                    if !ta.is_zero() && !tb.is_zero() {
                        s += &(alg.form_inverse(a) * &(ta * tb));
                    }
                }
                if l != m && !s.is_zero() {
                    return Err(Error::OrthogonalityViolation(format!(
                        "cross term between {} and {} is {s}",
                        irreps[l].label, irreps[m].label
                    )));
                }
                if l == m {
                    let d = BigInt::from(irreps[l].dim);
                    let inv = &mut invariants[l];
                    match s.exact_div_int(&d) {
                        Ok(p) => inv.schur_element = RatFunc::from_laurent(p),
                        Err(_) => {
                            inv.schur_element = RatFunc::new(s, laurent_i(irreps[l].dim as i64));
                            inv.schur_element_is_laurent = false;
                        }
                    }
                }
            }
        }

        Ok(RepData { seed, irreps, invariants, families, bad_primes: bad.into_iter().collect() })
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    /// Primes dividing `det P` for some irrep.
    pub fn p_det_primes(&self) -> Vec<u64> {
        let mut out = std::collections::BTreeSet::new();
        for inv in &self.invariants {
            let d: BigInt = inv.p_det.parse().expect("stored as a decimal integer");
            out.extend(prime_factors(&d.abs()));
        }
        out.into_iter().collect()
    }

    /// `sum_lambda [E : Gamma] / f` for each left cell.
    pub fn left_cell_sums(&self) -> Vec<BigRational> {
        let cells = self.invariants.first().map_or(0, |i| i.multiplicities.len());
        (0..cells)
            .map(|g| {
                self.invariants
                    .iter()
                    .map(|inv| BigRational::new(inv.multiplicities[g].into(), inv.f.into()))
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.dim).collect()
    }

    pub fn f_values(&self) -> Vec<i64> {
        self.invariants.iter().map(|i| i.f).collect()
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
    fn rank_one_with_two_orbits() {
        let alg = setup(CartanType::A, 1, "1;-");
        let reps = RepData::compute(&alg, 7).unwrap();
        assert_eq!(reps.dims(), vec![2, 1]);
        assert_eq!(reps.f_values(), vec![1, 1]);
        let big = &reps.irreps[0];
        // the 2-dimensional block is a matrix algebra on t_X1, t_X2, t_X3, t_X5
        let units: Vec<IntMatrix> = [0, 1, 2, 4].iter().map(|&a| big.rho_dense(a)).collect();
        for (i, m) in units.iter().enumerate() {
            assert_eq!(m.iter().flatten().filter(|&&x| x != 0).count(), 1, "{m:?}");
            assert_eq!(m.iter().flatten().sum::<i64>(), 1);
            assert_eq!(mat_mul(m, m).iter().flatten().any(|&x| x != 0), i == 0 || i == 3);
        }
        let inv = &reps.invariants;
        assert_eq!((inv[0].a, inv[1].a), (1, 0));
        assert_eq!(inv[0].schur_element, RatFunc::from_laurent(LaurentInt::from_ints(-2, &[1, 0, 1])));
        assert_eq!(inv[1].schur_element, RatFunc::from_laurent(LaurentInt::from_ints(0, &[1, 0, 1])));
        assert_eq!(inv[0].standard_traces[4], LaurentInt::from_ints(-1, &[1]));
        assert_eq!(inv[1].standard_traces[4], LaurentInt::from_ints(1, &[-1]));
        assert_eq!(reps.left_cell_sums(), vec![BigRational::from_integer(1.into()); 3]);
        assert!(reps.bad_primes.is_empty());
    }

    #[test]
    fn regular_orbit_of_b2() {
        let alg = setup(CartanType::B, 2, "-");
        let reps = RepData::compute(&alg, 1).unwrap();
        let mut dims = reps.dims();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
        assert_eq!(reps.irreps.iter().map(|r| r.dim * r.dim).sum::<usize>(), 8);
        assert_eq!(reps.bad_primes, vec![2]);
        for inv in &reps.invariants {
            assert!(inv.schur_element_is_laurent);
        }
    }
}
