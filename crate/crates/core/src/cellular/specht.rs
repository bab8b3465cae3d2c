//! Cell modules after specializing `q`: Gram matrices, simple heads and
//! decomposition matrices.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::datum::{rho_of_phi, CellDatum};
use crate::asym::RepData;
use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, Field, LaurentInt, Matrix, PrimeField, RationalFunctions, Rationals};
use crate::schur::SchurAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    Cyclotomic(u32),
    /// `Q(q)` with `q` left as an indeterminate.
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QValue {
    Int(i64),
    /// The generator of a cyclotomic field.
    Zeta,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Specialization {
    pub field: FieldSpec,
    pub q: QValue,
}

impl Specialization {
    /// Parses `Q`, `Fp:<p>`, `cyclotomic:<n>` or `generic`, with `q` an
    /// integer, `zeta` or `q`.
    pub fn parse(field: &str, q: &str) -> Result<Self> {
        let bad = |msg: String| Error::ParseError { pos: 0, msg };
        let field = match field {
            "Q" => FieldSpec::Rationals,
            "generic" | "Q(q)" => FieldSpec::Generic,
            f => {
                if let Some(p) = f.strip_prefix("Fp:") {
                    FieldSpec::Prime(p.parse().map_err(|_| bad(format!("bad prime '{p}'")))?)
                } else if let Some(n) = f.strip_prefix("cyclotomic:") {
                    FieldSpec::Cyclotomic(n.parse().map_err(|_| bad(format!("bad order '{n}'")))?)
                } else {
                    return Err(Error::UnsupportedField(f.to_string()));
                }
            }
        };
        let q = match q {
            "zeta" => QValue::Zeta,
            "q" => QValue::Indeterminate,
            v => QValue::Int(v.parse().map_err(|_| bad(format!("bad value of q '{v}'")))?),
        };
        let sp = Specialization { field, q };
        sp.validate()?;
        Ok(sp)
    }

    pub fn generic() -> Self {
        Specialization { field: FieldSpec::Generic, q: QValue::Indeterminate }
    }

    pub fn rational(q: i64) -> Self {
        Specialization { field: FieldSpec::Rationals, q: QValue::Int(q) }
    }

    pub fn root_of_unity(n: u32) -> Self {
        Specialization { field: FieldSpec::Cyclotomic(n), q: QValue::Zeta }
    }

    fn validate(&self) -> Result<()> {
        match (&self.field, &self.q) {
            (FieldSpec::Generic, QValue::Indeterminate) => Ok(()),
            (FieldSpec::Cyclotomic(n), _) if *n == 0 => Err(Error::UnsupportedField("cyclotomic:0".into())),
            (FieldSpec::Cyclotomic(_), QValue::Zeta) => Ok(()),
            (FieldSpec::Prime(p), _) if PrimeField::new(*p).is_none() => {
                Err(Error::UnsupportedField(format!("{p} is not a prime")))
            }
            (FieldSpec::Prime(p), QValue::Int(v)) if v.rem_euclid(*p as i64) == 0 => {
                Err(Error::UnsupportedField(format!("q = {v} is not a unit in F_{p}")))
            }
            (_, QValue::Int(0)) => Err(Error::UnsupportedField("q = 0 is not a unit".into())),
            (FieldSpec::Generic, _) | (_, QValue::Indeterminate) => {
                Err(Error::UnsupportedField("q stays an indeterminate exactly for the generic field".into()))
            }
            (_, QValue::Zeta) => Err(Error::UnsupportedField("q = zeta needs a cyclotomic field".into())),
            _ => Ok(()),
        }
    }

    pub fn describe(&self) -> String {
        let field = match &self.field {
            FieldSpec::Rationals => "Q".to_string(),
            FieldSpec::Prime(p) => format!("F_{p}"),
            FieldSpec::Cyclotomic(n) => format!("Q(zeta_{n})"),
            FieldSpec::Generic => "Q(q)".to_string(),
        };
        let q = match &self.q {
            QValue::Int(v) => v.to_string(),
            QValue::Zeta => "zeta".to_string(),
            QValue::Indeterminate => "q".to_string(),
        };
        format!("{field}, q = {q}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellModule {
    pub lambda: usize,
    pub dim: usize,
    pub a: u32,
    pub gram: Vec<Vec<String>>,
    pub gram_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpechtData {
    pub specialization: String,
    pub modules: Vec<CellModule>,
    /// Labels whose cell module has a nonzero form.
    pub heads: Vec<usize>,
    /// `decomposition[lambda][j]` is the multiplicity of the simple head of
    /// `heads[j]` in the cell module of `lambda`.
    pub decomposition: Vec<Vec<i64>>,
    pub semisimple: bool,
    pub lower_unitriangular: bool,
}

impl SpechtData {
    pub fn is_identity(&self) -> bool {
        self.heads.len() == self.modules.len()
            && self.decomposition.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &v)| v == (i == j) as i64))
    }

    /// Nonzero entries off the diagonal `lambda = heads[j]`.
    pub fn off_diagonal_entries(&self) -> usize {
        self.decomposition
            .iter()
            .enumerate()
            .map(|(l, r)| r.iter().enumerate().filter(|&(j, &v)| v != 0 && self.heads[j] != l).count())
            .sum()
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{:>8}", "");
        for &h in &self.heads {
            let _ = write!(out, " {:>6}", format!("L{h}"));
        }
        out.push('\n');
        for (l, row) in self.decomposition.iter().enumerate() {
            let _ = write!(out, "{:>8}", format!("W{l}"));
            for v in row {
                let _ = write!(out, " {v:>6}");
            }
            out.push('\n');
        }
        out
    }
}

pub fn specialize(alg: &SchurAlgebra, reps: &RepData, datum: &CellDatum, sp: &Specialization) -> Result<SpechtData> {
    sp.validate()?;
    match (&sp.field, &sp.q) {
        (FieldSpec::Prime(p), q) => {
            if reps.bad_primes.contains(p) {
                return Err(Error::BadPrimeNotInvertible(*p));
            }
            let f = PrimeField::new(*p).ok_or_else(|| Error::UnsupportedField(format!("F_{p}")))?;
            let QValue::Int(v) = q else { unreachable!("validated") };
            let q0 = f.embed_i64(*v);
            run(&f, &q0, alg, reps, datum, sp)
        }
        (FieldSpec::Rationals, QValue::Int(v)) => run(&Rationals, &Rationals.embed_i64(*v), alg, reps, datum, sp),
        (FieldSpec::Cyclotomic(n), QValue::Zeta) => {
            let f = Cyclotomic::new(*n);
            let z = f.zeta();
            run(&f, &z, alg, reps, datum, sp)
        }
        (FieldSpec::Cyclotomic(n), QValue::Int(v)) => {
            let f = Cyclotomic::new(*n);
            let q0 = f.embed_i64(*v);
            run(&f, &q0, alg, reps, datum, sp)
        }
        (FieldSpec::Generic, QValue::Indeterminate) => {
            let f = RationalFunctions;
            let q0 = f.q();
            run(&f, &q0, alg, reps, datum, sp)
        }
        _ => Err(Error::UnsupportedField(sp.describe())),
    }
}

fn specialize_matrix<F: Field>(f: &F, q0: &F::Elt, m: &[Vec<LaurentInt>]) -> Result<Matrix<F::Elt>> {
    let rows = m.len();
    let mut data = Vec::with_capacity(rows * rows);
    for r in m {
        for x in r {
            data.push(f.eval_laurent(x, q0).ok_or_else(|| Error::UnsupportedField("q is not a unit".into()))?);
        }
    }
    Ok(Matrix::from_vec(rows, m.first().map_or(0, Vec::len), data))
}

/// Action of each generator on `W / rad`, given a basis of `rad`.
fn quotient_actions<F: Field>(f: &F, actions: &[Matrix<F::Elt>], rad: &[Vec<F::Elt>], dim: usize) -> Vec<Matrix<F::Elt>> {
    let r = rad.len();
    let mut cols: Vec<Vec<F::Elt>> = rad.to_vec();
    for i in 0..dim {
        if cols.len() == dim {
            break;
        }
        let mut e = vec![f.zero(); dim];
        e[i] = f.one();
        let mut trial = cols.clone();
        trial.push(e.clone());
        if Matrix::from_rows(trial, dim).rank(f) == cols.len() + 1 {
            cols.push(e);
        }
    }
    let basis = Matrix::from_rows(cols, dim).transpose();
    let inv = basis.inverse(f).expect("completed basis is invertible");
    let keep: Vec<usize> = (r..dim).collect();
    actions.iter().map(|m| inv.mul(f, &m.mul(f, &basis)).submatrix(&keep, &keep)).collect()
}

fn run<F: Field>(
    f: &F,
    q0: &F::Elt,
    alg: &SchurAlgebra,
    reps: &RepData,
    datum: &CellDatum,
    sp: &Specialization,
) -> Result<SpechtData> {
    let n = alg.len();
    let k = datum.labels.len();
    let mut modules = Vec::with_capacity(k);
    let mut actions: Vec<Vec<Matrix<F::Elt>>> = Vec::with_capacity(k);
    let mut radicals = Vec::with_capacity(k);
    for (l, label) in datum.labels.iter().enumerate() {
        let d = label.dim;
        let acts = (0..n)
            .map(|x| specialize_matrix(f, q0, &rho_of_phi(alg, reps, l, &[(x, LaurentInt::one())])))
            .collect::<Result<Vec<_>>>()?;
        // g(t, u) = rho(Phi(C_{0,t}))_{0,u}
        let mut gram_rows = Vec::with_capacity(d);
        for t in 0..d {
            let c: Vec<(usize, LaurentInt)> = datum.basis[datum.index(l, 0, t)]
                .coeffs
                .iter()
                .map(|&(a, v)| (a, LaurentInt::from_i64(v)))
                .collect();
            gram_rows.push(rho_of_phi(alg, reps, l, &c).swap_remove(0));
        }
        let gram = specialize_matrix(f, q0, &gram_rows)?;
        let gram_rank = gram.rank(f);
        modules.push(CellModule {
            lambda: l,
            dim: d,
            a: label.a,
            gram: (0..d).map(|i| (0..d).map(|j| gram.get(i, j).to_string()).collect()).collect(),
            gram_rank,
        });
        radicals.push(gram.nullspace(f));
        actions.push(acts);
    }

    let heads: Vec<usize> = modules.iter().filter(|m| m.gram_rank > 0).map(|m| m.lambda).collect();
    let trace_row = |ms: &[Matrix<F::Elt>]| -> Vec<F::Elt> { ms.iter().map(|m| m.trace(f)).collect() };
    let head_traces: Vec<Vec<F::Elt>> = heads
        .iter()
        .map(|&h| trace_row(&quotient_actions(f, &actions[h], &radicals[h], datum.labels[h].dim)))
        .collect();
    // columns: heads; rows: generators
    let mut system = Matrix::zeros(f, n, heads.len());
    for (j, tr) in head_traces.iter().enumerate() {
        for (x, v) in tr.iter().enumerate() {
            system.set(x, j, v.clone());
        }
    }
    let mut decomposition = Vec::with_capacity(k);
    for (l, acts) in actions.iter().enumerate() {
        let sol = system.solve(f, &trace_row(acts)).ok_or_else(|| {
            Error::CrossCheckMismatch(format!("character of cell module {l} is not a combination of simple characters"))
        })?;
        let row = sol
            .iter()
            .map(|v| f.to_small_int(v).ok_or_else(|| Error::CrossCheckMismatch(format!("multiplicity {v} is not an integer"))))
            .collect::<Result<Vec<_>>>()?;
        decomposition.push(row);
    }

    let semisimple = heads.len() == k && modules.iter().all(|m| m.gram_rank == m.dim);
    let lower_unitriangular = heads.iter().enumerate().all(|(j, &h)| decomposition[h][j] == 1)
        && decomposition
            .iter()
            .enumerate()
            .all(|(l, r)| r.iter().enumerate().all(|(j, &v)| v == 0 || heads[j] == l || datum.precedes(l, heads[j])));
    Ok(SpechtData { specialization: sp.describe(), modules, heads, decomposition, semisimple, lower_unitriangular })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellular::RingSpec;
    use crate::coxeter::{CartanDatum, CartanType, WeylGroup};
    use crate::hecke::HeckeData;
    use crate::schur::OrbitSpec;

    fn setup(kind: CartanType, rank: usize, spec: &str) -> (SchurAlgebra, RepData, CellDatum) {
        let g = WeylGroup::new(CartanDatum::new(kind, rank).unwrap()).unwrap();
        let alg = SchurAlgebra::build(&HeckeData::build(g).unwrap(), &OrbitSpec::parse(spec, rank).unwrap()).unwrap();
        let reps = RepData::compute(&alg, 5).unwrap();
        let datum = CellDatum::build(&alg, &reps, &RingSpec::Auto).unwrap();
        (alg, reps, datum)
    }

    #[test]
    fn gram_form_does_not_depend_on_the_row() {
        for (kind, rank, spec) in [(CartanType::A, 2, "1,2;1;2;-"), (CartanType::B, 2, "1;2;-")] {
            let (alg, reps, datum) = setup(kind, rank, spec);
            for (l, label) in datum.labels.iter().enumerate() {
                let form = |s: usize, t: usize| {
                    let c: Vec<(usize, LaurentInt)> = datum.basis[datum.index(l, s, t)]
                        .coeffs
                        .iter()
                        .map(|&(a, v)| (a, LaurentInt::from_i64(v)))
                        .collect();
                    rho_of_phi(&alg, &reps, l, &c).swap_remove(s)
                };
                for t in 0..label.dim {
                    let first = form(0, t);
                    for s in 1..label.dim {
                        assert_eq!(form(s, t), first, "{spec} lambda {l} rows 0 and {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn hecke_rank_one_at_fourth_root_of_unity() {
        let (alg, reps, datum) = setup(CartanType::A, 1, "-");
        let sd = specialize(&alg, &reps, &datum, &Specialization::root_of_unity(4)).unwrap();
        assert!(!sd.semisimple);
        assert_eq!(sd.heads.len(), 1);
        assert_eq!(sd.decomposition, vec![vec![1], vec![1]]);
        assert_eq!(sd.off_diagonal_entries(), 1);
        assert!(sd.lower_unitriangular);
    }

    #[test]
    fn generic_and_classical_points_are_semisimple() {
        for spec in ["1;-", "1,2;1;2;-"] {
            let (alg, reps, datum) = setup(CartanType::A, if spec == "1;-" { 1 } else { 2 }, spec);
            for sp in [Specialization::generic(), Specialization::rational(1)] {
                let sd = specialize(&alg, &reps, &datum, &sp).unwrap();
                assert!(sd.semisimple, "{spec} {}", sp.describe());
                assert!(sd.is_identity());
            }
        }
    }

    #[test]
    fn type_a2_at_cube_root_of_unity_is_not_semisimple() {
        let (alg, reps, datum) = setup(CartanType::A, 2, "-");
        let sd = specialize(&alg, &reps, &datum, &Specialization::root_of_unity(6)).unwrap();
        assert!(!sd.semisimple);
        assert!(sd.lower_unitriangular, "{}", sd.table());
    }

    #[test]
    fn parsing_and_validation() {
        assert_eq!(Specialization::parse("Fp:5", "2").unwrap().field, FieldSpec::Prime(5));
        assert!(matches!(Specialization::parse("Fp:6", "2"), Err(Error::UnsupportedField(_))));
        assert!(matches!(Specialization::parse("Q", "zeta"), Err(Error::UnsupportedField(_))));
        assert!(matches!(Specialization::parse("Fp:5", "10"), Err(Error::UnsupportedField(_))));
        assert!(matches!(Specialization::parse("R", "1"), Err(Error::UnsupportedField(_))));
        let (alg, reps, datum) = setup(CartanType::B, 2, "-");
        let sp = Specialization::parse("Fp:2", "1").unwrap();
        assert!(matches!(specialize(&alg, &reps, &datum, &sp), Err(Error::BadPrimeNotInvertible(2))));
    }
}
