//! Exact multivariate polynomial arithmetic.

pub(crate) mod field;
mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use field::{check_prime, CoefficientField, Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use monomial::{Exponent, Monomial, TermOrder};
pub use parse::{parse_polynomial, parse_polynomial_list};
pub(crate) use polynomial::merge_scaled;
pub use polynomial::{Poly, Term};
pub use ring::{Ring, VariableTable};
