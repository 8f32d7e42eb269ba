//! Overflow-safe special functions: Hermite and half-order Laguerre
//! polynomials in power-of-two scaled arithmetic, exact origin values, and
//! terminating hypergeometric sums.
//!
//! Everything here is a pure function of its arguments and safe to call from
//! any number of threads.

mod hermite;
mod hypergeometric;
mod laguerre;
mod scaled;

pub use hermite::{
    hermite_ladder, hermite_ladder_real, hermite_scaled, HermiteLadderComplex, HermiteLadderReal,
};
pub use hypergeometric::{hyp2f1_regularized, hyp2f1_terminating};
pub use laguerre::{
    binomial, binomial_row, laguerre_general_zero, laguerre_half, laguerre_half_scaled,
    laguerre_half_scaled_ladder, laguerre_half_zero, laguerre_half_zero_f64,
    laguerre_half_zero_table,
};
pub use scaled::{ScaledComplex, ScaledReal};
