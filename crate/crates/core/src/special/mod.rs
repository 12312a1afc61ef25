//! Special functions behind the closed-form sum-rate.

pub mod bessel;
pub mod bivariate;
pub mod gamma;
pub mod hypergeometric;
pub mod mellin;

pub use bessel::{bessel_k, bessel_k_scaled};
pub use bivariate::{
    bivariate_fox_h, bivariate_fox_h_with, BivariateCache, BivariateFoxHSpec, JointParam,
};
pub use hypergeometric::{gauss_2f1, gauss_2f1_complement};
pub use mellin::{fox_h, fox_h_with, meijer_g, ContourSpec, FoxHSpec};
