//! Exact symbolic computation in the word algebra of the Cuntz algebra `O_n`.
//!
//! Elements are finite combinations of words `S_alpha S_beta^*` with
//! coefficients in `Q[g, 1/g]`, where `g` stands for the gauge phase
//! `e^{it}`. On top of this sit the shift `phi`, its left inverse, the
//! endomorphisms `lambda_u`, and two procedures deciding whether
//! `lambda_w` maps the core UHF subalgebra `F_n` into itself.

pub mod coeff;
pub mod constants;
pub mod decision;
pub mod element;
pub mod endo;
pub mod error;
pub mod expr;
pub mod intertwiner;
pub mod linalg;
pub mod word;

pub use coeff::Laurent;
pub use element::{Context, Element, Membership, Target};
pub use error::{Error, Result};
pub use word::{word_mul, MultiIndex, Word};
