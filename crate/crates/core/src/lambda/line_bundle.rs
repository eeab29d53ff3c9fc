//! `l_1 = log L` and its inverse for unipotent classes `L = 1 + nilpotent`.

use num_traits::One;

use crate::error::{domain, Result};
use crate::exact::rational::{factorial, from_bigint, ratio};
use crate::exact::Rational;
use crate::model::{Element, ModelAlgebra};

/// Smallest `k` with `x^k = 0`, if `x` is nilpotent.
pub fn nilpotency_index(m: &ModelAlgebra, x: &Element) -> Option<usize> {
    let mut p = m.one();
    for k in 1..=m.dim() + 1 {
        p = m.mul(&p, x);
        if p.is_zero() {
            return Some(k);
        }
    }
    None
}

fn nilpotent_part(m: &ModelAlgebra, l: &Element) -> Result<(Element, usize)> {
    if !m.rank(l).is_one() {
        return Err(domain(format!(
            "class {} does not have rank one",
            m.describe(l)
        )));
    }
    let y = l - &m.one();
    let k = nilpotency_index(m, &y)
        .ok_or_else(|| domain(format!("{} is not unipotent", m.describe(l))))?;
    Ok((y, k))
}

/// `log L = Σ (-1)^{n-1} (L-1)^n / n`.
pub fn log_class(m: &ModelAlgebra, l: &Element) -> Result<Element> {
    let (y, k) = nilpotent_part(m, l)?;
    let mut acc = m.zero();
    let mut p = m.one();
    for n in 1..k {
        p = m.mul(&p, &y);
        let sgn = if n % 2 == 1 { 1 } else { -1 };
        acc.add_scaled(&p, &ratio(sgn, n as i64));
    }
    Ok(acc)
}

/// `exp x = Σ x^n / n!` for nilpotent `x`.
pub fn exp_class(m: &ModelAlgebra, x: &Element) -> Result<Element> {
    let k = nilpotency_index(m, x)
        .ok_or_else(|| domain(format!("{} is not nilpotent", m.describe(x))))?;
    let mut acc = m.one();
    let mut p = m.one();
    for n in 1..k {
        p = m.mul(&p, x);
        acc.add_scaled(&p, &(Rational::one() / from_bigint(factorial(n as u64))));
    }
    Ok(acc)
}

/// `exp(log(L) / n)`, the unipotent class whose `n`-th power is `L`.
pub fn nth_root(m: &ModelAlgebra, l: &Element, n: i64) -> Result<Element> {
    if n < 1 {
        return Err(domain(format!("nth_root needs n >= 1, got {n}")));
    }
    let lg = log_class(m, l)?;
    let scaled = lg.scale(&ratio(1, n));
    if scaled.is_zero() {
        return Ok(m.one());
    }
    exp_class(m, &scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, pow};
    use crate::model::{antisym_model, theta_model};

    #[test]
    fn log_and_exp_invert() {
        for g in 1..=4 {
            let m = theta_model(g);
            let e1 = m.basis_element(1);
            let l = exp_class(&m, &e1).unwrap();
            assert_eq!(log_class(&m, &l).unwrap(), e1);
        }
    }

    #[test]
    fn euler_char_of_powers() {
        for g in 1..=4usize {
            let m = theta_model(g);
            for c in -3i64..=3 {
                let l = exp_class(&m, &m.basis_element(1).scale(&int(c))).unwrap();
                assert_eq!(m.euler_char(&l), pow(c, g as i32));
            }
        }
    }

    #[test]
    fn riemann_roch_in_theta_two() {
        let m = theta_model(2);
        let l = exp_class(&m, &m.basis_element(1)).unwrap();
        let y = &l - &m.one();
        let lhs = m.mul(&y, &y).scale(&ratio(1, 2));
        assert_eq!(lhs, m.origin().scale(&m.euler_char(&l)));
        assert_eq!(lhs, m.basis_element(2));
    }

    #[test]
    fn roots_power_back() {
        let m = antisym_model(3);
        let x = &m.basis_element(1) + &m.element_by_label("a").unwrap();
        let l = exp_class(&m, &x).unwrap();
        for n in 1..=4 {
            let r = nth_root(&m, &l, n).unwrap();
            let mut p = m.one();
            for _ in 0..n {
                p = m.mul(&p, &r);
            }
            assert_eq!(p, l);
        }
    }

    #[test]
    fn non_unipotent_is_rejected() {
        let m = theta_model(2);
        assert!(log_class(&m, &m.one().scale(&int(2))).is_err());
        assert!(exp_class(&m, &m.one()).is_err());
        assert!(nth_root(&m, &m.one(), 0).is_err());
    }
}
