//! Exact scalars and linear algebra.

pub mod bivariate;
pub mod field;
pub mod lattice;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod ratfunc;

pub use bivariate::BiLaurent;
pub use field::{Cyclotomic, Field, PrimeField, RationalFunctions, Rationals};
pub use lattice::{hnf, lattice_hnf};
pub use laurent::{Coeff, Laurent, LaurentInt, LaurentRat};
pub use matrix::{Matrix, RatMatrix};
pub use poly::{divisors, prime_factors, QPoly};
pub use ratfunc::RatFunc;

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn prime_factors_of_small_numbers() {
        assert_eq!(prime_factors(&BigInt::from(360)), vec![2, 3, 5]);
        assert_eq!(prime_factors(&BigInt::from(-49)), vec![7]);
        assert!(prime_factors(&BigInt::from(1)).is_empty());
        assert_eq!(prime_factors(&BigInt::from(97)), vec![97]);
    }
}
