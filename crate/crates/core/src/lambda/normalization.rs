//! `Λ_t` and `Γ_t` for an eigenvector `x ∈ K[j]` (`Ψ^n x = n^j x`) under two
//! readings of the log-λ series:
//!
//! * [`LogLambda::Standard`]: `log λ_t = Σ (-1)^{n-1} Ψ^n(x) t^n / n`;
//! * [`LogLambda::WithoutInverseN`]: the same sum with the `1/n` dropped.
//!
//! For `j = -1` the first gives `Λ_t(x) = exp(x ∫ ln(1+t)/t dt)`. The report
//! compares the scaled `t^n` coefficients of `log Γ_t(x)` with
//! `|s(n+1, 2)| = 1, 3, 11, 50, 274, ...`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::harmonic_firstkind;
use crate::exact::rational::{factorial, from_bigint, pow, sign};
use crate::exact::Rational;
use crate::series::{series_exp, substitute_gamma, Scalars, TruncatedPolys, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogLambda {
    Standard,
    WithoutInverseN,
}

impl LogLambda {
    pub const ALL: [LogLambda; 2] = [LogLambda::Standard, LogLambda::WithoutInverseN];

    fn weight(&self, n: i64, j: i64) -> Rational {
        let base = sign(n - 1) * pow(n, j as i32);
        match self {
            LogLambda::Standard => base / Rational::from_integer(n.into()),
            LogLambda::WithoutInverseN => base,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesExpansion {
    pub normalization: LogLambda,
    pub j: i64,
    /// `t^n` coefficient of `log Λ_t(x)`, as a multiple of `x`, `n = 1..=order`.
    #[serde(with = "crate::io::rational_vec")]
    pub log_lambda: Vec<Rational>,
    /// `t^n` coefficient of `log Γ_t(x)`, as a multiple of `x`.
    #[serde(with = "crate::io::rational_vec")]
    pub log_gamma: Vec<Rational>,
    /// `n! ·` the entries of `log_gamma`: the numerators in `Σ c_n x t^n / n!`.
    #[serde(with = "crate::io::rational_vec")]
    pub numerators: Vec<Rational>,
    /// `Γ^n(x)` as polynomials in `x` (index = power of `x`), `n = 0..=order`.
    #[serde(with = "crate::io::rational_matrix")]
    pub gamma: Vec<Vec<Rational>>,
}

/// Expands `Λ_t(x)` and `Γ_t(x)` through `t^order` in `ℚ[x]/(x^{order+1})`.
pub fn gamma_expansion(j: i64, order: usize, normalization: LogLambda) -> SeriesExpansion {
    assert!(order >= 1, "expansion needs order >= 1");
    let log_lambda: Vec<Rational> = (1..=order as i64)
        .map(|n| normalization.weight(n, j))
        .collect();
    let mut scalar = vec![Rational::zero()];
    scalar.extend(log_lambda.iter().cloned());
    let log_gamma_series = substitute_gamma(&Scalars, &TruncatedSeries::from_coeffs(scalar));
    let log_gamma: Vec<Rational> = log_gamma_series.coeffs()[1..].to_vec();
    let numerators = log_gamma
        .iter()
        .enumerate()
        .map(|(k, c)| c * from_bigint(factorial(k as u64 + 1)))
        .collect();

    let ring = TruncatedPolys { max_degree: order };
    let x = ring.generator();
    let coeffs = log_gamma_series
        .coeffs()
        .iter()
        .map(|c| x.iter().map(|a| a * c).collect())
        .collect();
    let gamma = series_exp(&ring, &TruncatedSeries::from_coeffs(coeffs))
        .expect("zero constant term")
        .into_coeffs();
    SeriesExpansion {
        normalization,
        j,
        log_lambda,
        log_gamma,
        numerators,
        gamma,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationReport {
    pub order: usize,
    /// `harmonic_firstkind(n)` for `n = 1..=order`.
    pub target: Vec<String>,
    pub candidates: Vec<SeriesExpansion>,
    /// Normalizations whose numerators equal the target exactly.
    pub matching: Vec<LogLambda>,
    /// Per candidate, `target[n] / numerators[n]`.
    pub ratios: Vec<(LogLambda, Vec<String>)>,
    pub finding: String,
}

/// Runs both normalizations for `x ∈ K[-1]` and reports which, if either,
/// reproduces `1, 3, 11, 50, 274, ...`.
pub fn normalization_report(order: usize) -> NormalizationReport {
    let target: Vec<BigInt> = (1..=order)
        .map(|n| harmonic_firstkind(n).expect("n >= 1"))
        .collect();
    let candidates: Vec<SeriesExpansion> = LogLambda::ALL
        .iter()
        .map(|&nl| gamma_expansion(-1, order, nl))
        .collect();
    let mut matching = Vec::new();
    let mut ratios = Vec::new();
    let mut notes = Vec::new();
    for c in &candidates {
        let r: Vec<Rational> = target
            .iter()
            .zip(&c.numerators)
            .map(|(t, n)| from_bigint(t.clone()) / n)
            .collect();
        let exact = r.iter().all(|x| *x == Rational::from_integer(1.into()));
        if exact {
            matching.push(c.normalization);
        }
        let shown: Vec<String> = c.numerators.iter().map(ToString::to_string).collect();
        notes.push(format!(
            "{:?} numerators: {}",
            c.normalization,
            shown.join(", ")
        ));
        ratios.push((c.normalization, r.iter().map(ToString::to_string).collect()));
    }
    let finding = if matching.is_empty() {
        format!(
            "neither normalization reproduces the target numerators; {}",
            notes.join("; ")
        )
    } else {
        format!("matching: {matching:?}; {}", notes.join("; "))
    };
    NormalizationReport {
        order,
        target: target.iter().map(ToString::to_string).collect(),
        candidates,
        matching,
        ratios,
        finding,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    #[test]
    fn standard_log_lambda_for_minus_one() {
        let e = gamma_expansion(-1, 4, LogLambda::Standard);
        // Σ (-1)^{n-1} t^n / n^2
        assert_eq!(
            e.log_lambda,
            vec![ratio(1, 1), ratio(-1, 4), ratio(1, 9), ratio(-1, 16)]
        );
        assert_eq!(e.log_gamma[1], ratio(3, 4));
    }

    #[test]
    fn without_inverse_n_gives_minus_log() {
        // x ln(1+t) composed with t/(1-t) is -x ln(1-t)
        let e = gamma_expansion(-1, 5, LogLambda::WithoutInverseN);
        let want: Vec<Rational> = (1..=5).map(|n| ratio(1, n)).collect();
        assert_eq!(e.log_gamma, want);
    }

    #[test]
    fn report_finds_no_exact_match() {
        let r = normalization_report(5);
        assert_eq!(r.target, ["1", "3", "11", "50", "274"]);
        assert!(r.matching.is_empty());
        // the standard reading is off by exactly a factor n
        let (_, std_ratios) = &r.ratios[0];
        assert_eq!(std_ratios, &["1", "2", "3", "4", "5"]);
    }

    #[test]
    fn gamma_linear_term_equals_log_gamma() {
        let e = gamma_expansion(-1, 5, LogLambda::Standard);
        for n in 1..=5 {
            assert_eq!(e.gamma[n][1], e.log_gamma[n - 1]);
        }
    }
}
