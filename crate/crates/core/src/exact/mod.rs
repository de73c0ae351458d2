//! Exact arithmetic: rationals, dense polynomials, gcd, resultants.

pub mod algo;
pub mod poly;
pub mod ratfunc;
pub mod ring;

pub use algo::{charpoly, gcd, interpolate, modular_squarefree, resultant, resultant_interp, squarefree_decomposition, squarefree_part, swap_vars};
pub use poly::{qpoly, BiPoly, Poly, Var};
pub use ratfunc::{ratfunc_reduce, RatFunc};
pub use ring::{fmt_rational, parse_rational, q, GcdRing, Ring};
pub use rug::{Integer, Rational};
