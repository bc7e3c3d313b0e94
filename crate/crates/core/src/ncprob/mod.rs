//! Moments, cumulants, inverse characters and Wick polynomials.

mod cumulants;
mod functional;
mod inverse;
mod table;
mod wick;

pub use cumulants::{
    cumulants_from_moments, moments_from_cumulants, murua_table, CumulantFunctional, CumulantKind,
    CumulantMethod,
};
pub use functional::{
    conv_exp, conv_log, conv_pow, exp_left, exp_right, geometric_inverse, Functional,
};
pub use inverse::{conv_inverse, InverseMethod};
pub use table::{
    all_words, constant_one, semicircle, word_key, MomentFunctional, WordTable, TABLE_DEGREE_CAP,
};
pub use wick::{wick, WickMethod};
