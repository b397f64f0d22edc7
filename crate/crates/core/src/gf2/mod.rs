//! Exact polynomial arithmetic over GF(2): graded monomials, term-set
//! polynomials, monomial orders, Buchberger normal forms and bit-packed
//! linear algebra.

pub mod groebner;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;

pub use groebner::{enumerate_monomials, groebner, GroebnerBasis};
pub use matrix::{linear_map_matrix, Bits, Mat2};
pub use monomial::{Monomial, Var, VarSet};
pub use order::{MonomialOrder, OrderKind};
pub use parse::{parse_gf2_poly, parse_terms, RawTerm};
pub use poly::PolyGF2;
