use crate::error::{Error, Result};
use crate::exact::rational::{pow, ratio};
use crate::model::{Element, ModelAlgebra};
use crate::series::{series_exp, substitute_gamma, TruncatedSeries};

use super::AdamsKind;

/// `λ_t(x) = exp(Σ_{n>=1} (-1)^{n-1} ψ^n(x) t^n / n)` through `t^order`,
/// exponentiated under the family's own product.
pub fn lambda_series(
    m: &ModelAlgebra,
    kind: AdamsKind,
    x: &Element,
    order: usize,
) -> TruncatedSeries<Element> {
    let g = m.g();
    let exps: Vec<i64> = m
        .basis()
        .iter()
        .map(|b| kind.exponent(b.bidegree, g))
        .collect();
    let mut coeffs = vec![m.zero(); order + 1];
    for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let sgn = if n % 2 == 1 { 1 } else { -1 };
        let w = ratio(sgn, n as i64);
        *slot = Element(
            x.0.iter()
                .zip(&exps)
                .map(|(c, &e)| c * pow(n as i64, e as i32) * &w)
                .collect(),
        );
    }
    let log = TruncatedSeries::from_coeffs(coeffs);
    series_exp(&m.ring(kind.product()), &log).expect("log-λ series has no constant term")
}

/// `γ_t(x) = λ_{t/(1-t)}(x)` through `t^order`.
pub fn gamma_series(
    m: &ModelAlgebra,
    kind: AdamsKind,
    x: &Element,
    order: usize,
) -> TruncatedSeries<Element> {
    substitute_gamma(&m.ring(kind.product()), &lambda_series(m, kind, x, order))
}

/// `γ^i(x)`, the `t^i` coefficient of `γ_t(x)`.
pub fn gamma_op(
    m: &ModelAlgebra,
    kind: AdamsKind,
    i: usize,
    x: &Element,
    order: usize,
) -> Result<Element> {
    if i > order {
        return Err(Error::Config(format!(
            "γ^{i} requested beyond series order {order}"
        )));
    }
    Ok(gamma_series(m, kind, x, order).coeff(i).clone())
}
