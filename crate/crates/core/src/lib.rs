pub mod algebra;
pub mod cauchy;
pub mod cli;
pub mod fermionic;
pub mod kernels;
pub mod linalg;
pub mod operators;
pub mod quadrature;
pub mod random;
pub mod report;
