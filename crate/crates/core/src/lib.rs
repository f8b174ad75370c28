//! Exact arithmetic in extended affine Weyl groups: lengths and Ω-parts,
//! Newton and Kottwitz points, `(J, w, σ)`-alcove elements, and the
//! Deligne–Lusztig reduction computing class polynomials and `B(G)_x`.

pub mod affine_weyl;
pub mod alcove;
pub mod cache;
pub mod cli;
pub mod dl_reduction;
pub mod error;
pub mod linalg;
pub mod literal;
pub mod newton_kottwitz;
pub mod root_datum;
pub mod verify;

pub use error::{Error, Result};
