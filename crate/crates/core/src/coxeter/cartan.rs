use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "E" => CartanType::E,
            "F" => CartanType::F,
            "G" => CartanType::G,
            other => return Err(Error::UnknownType(other.to_string())),
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A finite Cartan type with its rank, Bourbaki numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanDatum {
    kind: CartanType,
    rank: usize,
}

impl CartanDatum {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        use CartanType::*;
        let ok = match kind {
            A => rank >= 1,
            B | C => rank >= 2,
            D => rank >= 4,
            E => (6..=8).contains(&rank),
            F => rank == 4,
            G => rank == 2,
        };
        if !ok {
            return Err(Error::UnknownType(format!("{kind}{rank}")));
        }
        Ok(CartanDatum { kind, rank })
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Edges of the Dynkin diagram as `(i, j, a_ij, a_ji)`, zero-based.
    fn edges(&self) -> Vec<(usize, usize, i64, i64)> {
        use CartanType::*;
        let n = self.rank;
        let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1, -1, -1)).collect::<Vec<_>>();
        match self.kind {
            A => chain(n),
            B => {
                let mut e = chain(n - 1);
                e.push((n - 2, n - 1, -1, -2));
                e
            }
            C => {
                let mut e = chain(n - 1);
                e.push((n - 2, n - 1, -2, -1));
                e
            }
            D => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1, -1, -1));
                e
            }
            E => {
                // 1 - 3 - 4 - 5 - ... with 2 attached to 4
                let mut e = vec![(0, 2, -1, -1), (1, 3, -1, -1)];
                e.extend((2..n - 1).map(|i| (i, i + 1, -1, -1)));
                e
            }
            F => vec![(0, 1, -1, -1), (1, 2, -1, -2), (2, 3, -1, -1)],
            G => vec![(0, 1, -1, -3)],
        }
    }

    /// Entries `a_ij = <alpha_i^vee, alpha_j>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j, aij, aji) in self.edges() {
            a[i][j] = aij;
            a[j][i] = aji;
        }
        a
    }

    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let a = self.cartan_matrix();
        let n = self.rank;
        let mut m = vec![vec![2; n]; n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = if i == j {
                    1
                } else {
                    match a[i][j] * a[j][i] {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        p => unreachable!("finite type product {p}"),
                    }
                };
            }
        }
        m
    }

    /// The order of the Weyl group from the classical formulas.
    pub fn expected_order(&self) -> u128 {
        use CartanType::*;
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.kind {
            A => fact(n + 1),
            B | C => (1u128 << n) * fact(n),
            D => (1u128 << (n - 1)) * fact(n),
            E => match n {
                6 => 51840,
                7 => 2903040,
                _ => 696729600,
            },
            F => 1152,
            G => 12,
        }
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coxeter_matrices() {
        let g2 = CartanDatum::new(CartanType::G, 2).unwrap();
        assert_eq!(g2.coxeter_matrix(), vec![vec![1, 6], vec![6, 1]]);
        let b3 = CartanDatum::new(CartanType::B, 3).unwrap();
        assert_eq!(b3.coxeter_matrix()[1][2], 4);
        assert_eq!(b3.coxeter_matrix()[0][2], 2);
        let d4 = CartanDatum::new(CartanType::D, 4).unwrap();
        let m = d4.coxeter_matrix();
        assert_eq!((m[1][0], m[1][2], m[1][3], m[0][3]), (3, 3, 3, 2));
    }

    #[test]
    fn rejects_bad_ranks() {
        assert!(CartanDatum::new(CartanType::G, 3).is_err());
        assert!(CartanDatum::new(CartanType::A, 0).is_err());
        assert!("Q".parse::<CartanType>().is_err());
    }
}
