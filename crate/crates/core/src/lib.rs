//! Entropy-variation toolkit.
//!
//! * [`sft`]: transition matrices, irreducibility, Perron roots and an exact
//!   characteristic-polynomial oracle.
//! * [`tangency`]: the extended transition matrix created by unfolding a
//!   homoclinic tangency and the principal-minor chain that certifies the
//!   entropy increase.
//! * [`maps`]: the explicit planar horseshoe, its isotopy to a contraction and
//!   the 3-ball family `G_tau`.
//! * [`estimate`]: separated-set entropy estimates, derivative growth rates
//!   and closed-form bounds.
//! * [`report`]: sweep tables and CSV output.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod estimate;
pub mod maps;
pub mod par;
pub mod report;
pub mod sft;
pub mod tangency;

pub use error::{Error, Result};
