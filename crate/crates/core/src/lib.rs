//! Exact computer algebra for integral `U_q(sl2)` Verma modules and their
//! homological models.
//!
//! The crate computes, with exact Laurent-polynomial coefficients, the actions
//! of `E`, `K^±1` and the divided powers `F^(m)` on the weight spaces
//! `W_{n,r}`, both on tensor products of Verma modules ([`verma`]) and on the
//! homology modules spanned by code sequences, multi-arcs, multiforks and
//! r-loops ([`homology`]); and the braid group actions given by the R-matrix
//! and by its homological counterpart ([`braiding`]).

pub mod braiding;
pub mod checks;
pub mod compositions;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod operator;
pub mod qnum;
pub mod ring;
pub mod verma;

pub use error::{Error, Result};
pub use ring::{LaurentPoly, RingHom, VariableSet};
