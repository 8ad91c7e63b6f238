//! Exact graded (Grassmann) algebra, superfield calculus and symmetry
//! analysis of the supersymmetric minimal surface equation.
#![no_std]

extern crate alloc;

pub mod atom;
pub mod calculus;
pub mod classical;
pub mod classification;
pub mod elliptic;
pub mod error;
pub mod expr;
pub mod funcs;
pub mod number;
pub mod numeric;
pub mod reduction;
pub mod simplify;
pub mod superalgebra;
pub mod superfield;
pub mod vector_field;

pub use atom::{Atom, FieldDecl, Func, FuncHead, Jet, OddVar, Parity, Symbol};
pub use error::{Error, Result};
pub use expr::{normalize, GradedExpr, Monomial, ParityClass, Raw};
pub use number::{Coeff, Exponent, Rational};
