//! Hypergeometric building blocks.

mod appell;
mod gamma;
mod gauss;
mod hyp3f2;

pub use appell::{
    appell_f2, appell_f2_integral, appell_f2_product, appell_f2_series, f2_param_shift, F2Args,
};
pub use gamma::{digamma, gamma, ln_gamma, pochhammer, rgamma};
pub use gauss::{gauss_2f1, gauss_2f1_at_one, Hyp2f1};
pub use hyp3f2::{log_singular_3f2, series_3f2};
