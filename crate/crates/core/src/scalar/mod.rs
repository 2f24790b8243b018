//! Scalars and polynomials: exact rationals, a quadratic extension for the
//! single square roots the constructions need, certified interval floats,
//! and the polynomial toolkit (gcd, square-free parts, resultants, Sturm).

mod bigfloat;
mod field;
pub mod linalg;
mod parse;
mod poly;
mod quadext;
pub(crate) mod rational;
mod resultant;
mod sturm;
mod upoly;

pub use bigfloat::{certify, within_tolerance, BigFloat, Sign3, DEFAULT_PRECISION, MAX_PRECISION};
pub use field::Field;
pub use poly::{Monomial, Poly, Var};
pub use quadext::QuadExt;
pub use rational::{int, is_square, parse_rational, rat, rational_sqrt, Rational};
pub use resultant::{bareiss_det, resultant};
pub use sturm::{all_real_roots, isolate_real_roots, refine_root, sign_variations, sturm_sequence, RootInterval};
pub use upoly::UPoly;
