#![no_std]
// Whenever std is in the crate graph its inherent float methods shadow
// `num_traits::Float`, leaving the import unused.
#![allow(unused_imports)]
// `!(x > 0.0)` rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]
extern crate alloc;

pub mod channel;
pub mod distributions;
pub mod error;
pub mod protocol;
pub mod quadrature;
pub mod special;
pub mod sumrate;

pub use error::{Error, Result};
