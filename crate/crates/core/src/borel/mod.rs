//! Borel transforms, summation and the series operations that act on them.

pub mod kernel;
pub mod registry;
pub mod series;
pub mod sum;

pub use kernel::{BorelKernel, Decay, KernelExpr, Term, TermSum};
pub use registry::{registry_ids, registry_kernel, registry_series};
pub use series::{
    binomial_product, borel_shift, borel_transform_coeffs, borel_transform_coeffs_f64, cauchy_product,
    check_transform_consistency, linear_combine_series, solve_convolution, FormalSeries,
};
pub use sum::{borel_sum, borel_sum_dn, borel_sum_with, nested_integral_3_53, BorelSumResult, Kind, SumStatus};
