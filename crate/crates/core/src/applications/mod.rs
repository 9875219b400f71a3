//! Worked constructions on top of the frame machinery.

mod expectation;
mod interval;
mod magic;

pub use expectation::{
    expectation_module_frame, quasi_basis, ConditionalExpectation, ExpectationFrame,
    ExpectationKind, QuasiBasis,
};
pub use interval::{identity_function, interval_function, sampled_interval_frame};
pub use magic::{hs_sum, magic_sum};
