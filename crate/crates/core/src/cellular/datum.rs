use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asym::{mat_mul, IntMatrix, RepData};
use crate::error::{Error, Result};
use crate::exact::{prime_factors, LaurentInt, LaurentRat, RatMatrix, Rationals};
use crate::schur::SchurAlgebra;

/// Sparse rows of a change-of-basis matrix: `(row, [(column, entry)])`.
type SparseRows = Vec<(usize, Vec<(usize, BigRational)>)>;

/// Which primes the ground ring `Z[1/p, ...][q, q^-1]` inverts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingSpec {
    /// Exactly the primes dividing some `f`.
    Auto,
    Invert(Vec<u64>),
}

impl RingSpec {
    pub fn parse(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(RingSpec::Auto);
        }
        if s == "Z" {
            return Ok(RingSpec::Invert(Vec::new()));
        }
        let body = s.strip_prefix("invert:").ok_or_else(|| Error::ParseError {
            pos: 0,
            msg: format!("expected 'auto', 'Z' or 'invert:p,q,...', got '{s}'"),
        })?;
        let mut out = Vec::new();
        let mut pos = "invert:".len();
        for part in body.split(',') {
            let p: u64 = part.parse().map_err(|_| Error::ParseError { pos, msg: format!("bad prime '{part}'") })?;
            out.push(p);
            pos += part.len() + 1;
        }
        Ok(RingSpec::Invert(out))
    }

    fn primes(&self, reps: &RepData) -> Vec<u64> {
        match self {
            RingSpec::Auto => reps.bad_primes.clone(),
            RingSpec::Invert(ps) => ps.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellLabel {
    pub irrep: usize,
    pub dim: usize,
    pub a: u32,
    pub f: i64,
}

/// `C^lambda_{s,t}` in canonical-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellElt {
    pub lambda: usize,
    pub s: usize,
    pub t: usize,
    pub coeffs: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellDatum {
    pub labels: Vec<CellLabel>,
    /// Ordered by `(lambda, s, t)`.
    pub basis: Vec<CellElt>,
    /// `{B} = sum_k inverse[B][k] C_k`.
    pub inverse: Vec<Vec<(usize, BigRational)>>,
    pub inverted_primes: Vec<u64>,
    offsets: Vec<usize>,
}

impl CellDatum {
    pub fn build(alg: &SchurAlgebra, reps: &RepData, ring: &RingSpec) -> Result<Self> {
        let n = alg.len();
        let labels: Vec<CellLabel> = reps
            .irreps
            .iter()
            .zip(&reps.invariants)
            .enumerate()
            .map(|(i, (r, inv))| CellLabel { irrep: i, dim: r.dim, a: inv.a, f: inv.f })
            .collect();
        let mut offsets = Vec::with_capacity(labels.len());
        let mut acc = 0;
        for l in &labels {
            offsets.push(acc);
            acc += l.dim * l.dim;
        }
        if acc != n {
            return Err(Error::CrossCheckMismatch(format!("cell basis has {acc} elements, algebra has {n}")));
        }

        let per_lambda: Vec<(Vec<CellElt>, SparseRows)> = reps
            .irreps
            .par_iter()
            .enumerate()
            .map(|(li, rep)| {
                let d = rep.dim;
                let p = &reps.invariants[li].p_matrix;
                let mut elts = Vec::with_capacity(d * d);
                // C_{s,t} = sum_A (P rho(t_{A^t}))_{t,s} {A}
                let prods: BTreeMap<usize, IntMatrix> =
                    rep.rho.keys().map(|&a| (a, mat_mul(p, &rep.rho_dense(alg.transpose(a))))).collect();
                for s in 0..d {
                    for t in 0..d {
                        let coeffs =
                            prods.iter().map(|(&a, m)| (a, m[t][s])).filter(|(_, v)| *v != 0).collect();
                        elts.push(CellElt { lambda: li, s, t, coeffs });
                    }
                }
                // {B} = sum (1/f) (rho(t_B) P^-1)_{s,t} C_{s,t}
                let pinv = RatMatrix::from_int_rows(p).inverse(&Rationals).expect("P is positive definite");
                let finv = BigRational::new(BigInt::one(), BigInt::from(reps.invariants[li].f));
                let inv_rows = rep
                    .rho
                    .iter()
                    .map(|(&b, m)| {
                        let prod = RatMatrix::from_int_rows(m).mul(&Rationals, &pinv);
                        let mut row = Vec::new();
                        for s in 0..d {
                            for t in 0..d {
                                let v = prod.get(s, t) * &finv;
                                if !v.is_zero() {
                                    row.push((offsets[li] + s * d + t, v));
                                }
                            }
                        }
                        (b, row)
                    })
                    .collect();
                (elts, inv_rows)
            })
            .collect();

        let mut basis = Vec::with_capacity(n);
        let mut inverse = vec![Vec::new(); n];
        for (elts, inv_rows) in per_lambda {
            basis.extend(elts);
            for (b, row) in inv_rows {
                inverse[b].extend(row);
            }
        }

        let inverted_primes = ring.primes(reps);
        let mut needed = BTreeSet::new();
        for row in &inverse {
            for (_, v) in row {
                needed.extend(prime_factors(v.denom()));
            }
        }
        if let Some(&p) = needed.iter().find(|p| !inverted_primes.contains(p)) {
            return Err(Error::BadPrimeNotInvertible(p));
        }
        Ok(CellDatum { labels, basis, inverse, inverted_primes, offsets })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Restores the lookup offsets after deserialization.
    pub fn reindex(&mut self) {
        let mut acc = 0;
        self.offsets = self
            .labels
            .iter()
            .map(|l| {
                let o = acc;
                acc += l.dim * l.dim;
                o
            })
            .collect();
    }

    pub fn index(&self, lambda: usize, s: usize, t: usize) -> usize {
        let d = self.labels[lambda].dim;
        self.offsets[lambda] + s * d + t
    }

    /// `lambda ≺ mu` in the cell poset: strictly larger a-value.
    pub fn precedes(&self, lambda: usize, mu: usize) -> bool {
        self.labels[lambda].a > self.labels[mu].a
    }

    /// Canonical-basis coordinates of `sum_k x_k C_k`.
    pub fn to_canonical(&self, x: &BTreeMap<usize, BigRational>) -> BTreeMap<usize, BigRational> {
        let mut out = BTreeMap::new();
        for (&k, v) in x {
            for &(a, c) in &self.basis[k].coeffs {
                *out.entry(a).or_insert_with(BigRational::zero) += v * BigRational::from_integer(c.into());
            }
        }
        out.retain(|_, v: &mut BigRational| !v.is_zero());
        out
    }

    /// Cell-basis coordinates of a canonical-basis element with Laurent coefficients.
    pub fn from_canonical(&self, x: &BTreeMap<usize, LaurentInt>) -> BTreeMap<usize, LaurentRat> {
        let mut out: BTreeMap<usize, LaurentRat> = BTreeMap::new();
        for (&b, v) in x {
            let v = v.to_rat();
            for (k, c) in &self.inverse[b] {
                *out.entry(*k).or_default() += &v.scale(c);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// Outcome of checking the cellular axioms; each list holds witnesses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub independence: Vec<String>,
    pub involution: Vec<String>,
    pub multiplication: Vec<String>,
    pub round_trip: Vec<String>,
    pub support: Vec<String>,
    pub products_checked: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.independence.is_empty()
            && self.involution.is_empty()
            && self.multiplication.is_empty()
            && self.round_trip.is_empty()
            && self.support.is_empty()
    }
}

/// `rho(Phi(x))` with Laurent entries, for `x` in the canonical basis.
pub fn rho_of_phi(alg: &SchurAlgebra, reps: &RepData, lambda: usize, x: &[(usize, LaurentInt)]) -> Vec<Vec<LaurentInt>> {
    let rep = &reps.irreps[lambda];
    let d = rep.dim;
    let mut m = vec![vec![LaurentInt::zero(); d]; d];
    for (c, u) in x {
        for (a, v) in alg.phi(*c) {
            if let Some(r) = rep.rho(*a) {
                let uv = u * v;
                for i in 0..d {
                    for j in 0..d {
                        if r[i][j] != 0 {
                            m[i][j] += &uv.scale(&BigInt::from(r[i][j]));
                        }
                    }
                }
            }
        }
    }
    m
}

pub fn verify_axioms(alg: &SchurAlgebra, reps: &RepData, datum: &CellDatum) -> AxiomReport {
    let n = alg.len();
    let mut report = AxiomReport::default();

    let rows: Vec<Vec<i64>> = datum
        .basis
        .iter()
        .map(|e| {
            let mut r = vec![0i64; n];
            for &(a, v) in &e.coeffs {
                r[a] = v;
            }
            r
        })
        .collect();
    let rank = RatMatrix::from_int_rows(&rows).rank(&Rationals);
    if rank != n || datum.len() != n {
        report.independence.push(format!("{} elements of rank {rank} for an algebra of dimension {n}", datum.len()));
    }

    for e in &datum.basis {
        let flipped: BTreeMap<usize, i64> = e.coeffs.iter().map(|&(a, v)| (alg.transpose(a), v)).collect();
        let other: BTreeMap<usize, i64> = datum.basis[datum.index(e.lambda, e.t, e.s)].coeffs.iter().copied().collect();
        if flipped != other {
            report.involution.push(format!("transpose of C({}, {}, {}) is not C({}, {}, {})", e.lambda, e.s, e.t, e.lambda, e.t, e.s));
        }
        let a = datum.labels[e.lambda].a;
        if let Some(&(c, _)) = e.coeffs.iter().find(|&&(c, _)| alg.a(c) != a) {
            report.support.push(format!("C({}, {}, {}) involves index {c} with a-value {}", e.lambda, e.s, e.t, alg.a(c)));
        }
    }

    for b in 0..n {
        let back = datum.to_canonical(&datum.inverse[b].iter().cloned().collect());
        let ok = back.len() == 1 && back.get(&b).is_some_and(|v| v.is_one());
        if !ok {
            report.round_trip.push(format!("canonical element {b} does not round-trip through the cell basis"));
        }
    }

    // For every canonical generator h and every C_{s,t}:
    // h C_{s,t} = sum_{s'} r_h(s', s) C_{s',t} modulo lower cells, with r_h = rho(Phi(h)).
    let results: Vec<(usize, Vec<String>)> = (0..n)
        .into_par_iter()
        .map(|h| {
            let mut fails = Vec::new();
            let mut count = 0;
            let r: Vec<Vec<Vec<LaurentInt>>> = (0..datum.labels.len())
                .map(|l| rho_of_phi(alg, reps, l, &[(h, LaurentInt::one())]))
                .collect();
            for (k, e) in datum.basis.iter().enumerate() {
                count += 1;
                let mut prod: BTreeMap<usize, LaurentInt> = BTreeMap::new();
                for &(a, v) in &e.coeffs {
                    if alg.col(h) != alg.row(a) {
                        continue;
                    }
                    for (c, g) in alg.product(h, a) {
                        *prod.entry(*c).or_default() += &g.scale(&BigInt::from(v));
                    }
                }
                prod.retain(|_, v| !v.is_zero());
                let cell = datum.from_canonical(&prod);
                let d = datum.labels[e.lambda].dim;
                for (s2, row) in r[e.lambda].iter().enumerate().take(d) {
                    let want = row[e.s].to_rat();
                    let got = cell.get(&datum.index(e.lambda, s2, e.t)).cloned().unwrap_or_default();
                    if want != got {
                        fails.push(format!("{{{h}}} C_{k}: coefficient of C({}, {s2}, {}) is {got}, expected {want}", e.lambda, e.t));
                    }
                }
                for &j in cell.keys() {
                    let o = &datum.basis[j];
                    let same_row = o.lambda == e.lambda && o.t == e.t;
                    if !same_row && !datum.precedes(o.lambda, e.lambda) {
                        fails.push(format!("{{{h}}} C_{k} has a term C_{j} that is neither in the same row nor lower"));
                    }
                }
            }
            (count, fails)
        })
        .collect();
    for (count, fails) in results {
        report.products_checked += count;
        report.multiplication.extend(fails);
    }
    report
}

/// Result of matching each cellular basis element with a signed canonical one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedMatch {
    /// `(cell basis index, canonical index, sign)`.
    pub matches: Vec<(usize, usize, i8)>,
    pub failures: Vec<String>,
}

impl SignedMatch {
    pub fn all_positive(&self) -> bool {
        self.failures.is_empty() && self.matches.iter().all(|m| m.2 == 1)
    }
}

/// When every `f = 1`, each `C_{s,t}` should be `±{C}` for a unique `C`,
/// and `(lambda, s, t) -> C` a bijection.
pub fn signed_canonical_check(datum: &CellDatum) -> Result<SignedMatch> {
    if let Some(l) = datum.labels.iter().find(|l| l.f != 1) {
        return Err(Error::NotApplicable(format!("representation {} has f = {}", l.irrep, l.f)));
    }
    let mut matches = Vec::new();
    let mut failures = Vec::new();
    let mut seen = BTreeSet::new();
    for (k, e) in datum.basis.iter().enumerate() {
        match e.coeffs.as_slice() {
            [(c, v)] if v.abs() == 1 => {
                if !seen.insert(*c) {
                    failures.push(format!("canonical element {c} matched twice"));
                }
                matches.push((k, *c, v.signum() as i8));
            }
            other => failures.push(format!("C_{k} = {other:?} is not a signed canonical element")),
        }
    }
    Ok(SignedMatch { matches, failures })
}
