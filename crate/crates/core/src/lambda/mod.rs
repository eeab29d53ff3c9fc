//! The Adams families and the λ/γ operations built from them through
//! `λ_t(x) = exp(Σ (-1)^{n-1} ψ^n(x) t^n / n)` and `γ_t = λ_{t/(1-t)}`.

mod adams;
mod chern;
mod coeffs;
mod gamma;
mod line_bundle;
mod normalization;

pub use adams::{adams, adams_operator, AdamsKind};
pub use chern::{chern_gamma, complete_chern, CompleteChern};
pub use coeffs::{gamma_pi_coeff, stirling_prediction, GammaCoeffTable};
pub use gamma::{gamma_op, gamma_series, lambda_series};
pub use line_bundle::{exp_class, log_class, nilpotency_index, nth_root};
pub use normalization::{
    gamma_expansion, normalization_report, LogLambda, NormalizationReport, SeriesExpansion,
};
