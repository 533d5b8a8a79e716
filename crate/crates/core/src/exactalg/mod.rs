//! Exact arithmetic kernels: cyclotomic numbers and integer lattices.

mod cyclotomic;
mod intmat;

pub use cyclotomic::{cyc_reduce, cyclotomic_polynomial, euler_phi, CycNum};
pub use intmat::{content, hermite_normal_form, integer_kernel, smith_normal_form, Hermite, IntMatrix, SnfDecomposition};
