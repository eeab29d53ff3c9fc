//! Truncated formal power series in one variable `t`.
//!
//! Coefficients live in any commutative `Q`-algebra described by a
//! [`CoeffRing`]: plain rationals, a truncated polynomial ring, or a model
//! algebra under either of its products. Every operation is exact and closed
//! at the truncation order `N`.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::exact::rational::{binomial, from_bigint, int, Rational};

/// A commutative `Q`-algebra in which series coefficients live.
pub trait CoeffRing {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(b, &int(-1)))
    }

    /// `a += c * b`, the inner step of every convolution below.
    fn add_scaled(&self, acc: &mut Self::Elem, b: &Self::Elem, c: &Rational) {
        if c.is_zero() || self.is_zero(b) {
            return;
        }
        *acc = self.add(acc, &self.scale(b, c));
    }
}

/// `Q` itself.
#[derive(Clone, Copy, Debug, Default)]
pub struct Scalars;

impl CoeffRing for Scalars {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn scale(&self, a: &Rational, c: &Rational) -> Rational {
        a * c
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

/// `Q[x]/(x^{max_degree+1})`; elements are coefficient vectors in `x`.
#[derive(Clone, Copy, Debug)]
pub struct TruncatedPolys {
    pub max_degree: usize,
}

impl TruncatedPolys {
    pub fn generator(&self) -> Vec<Rational> {
        let mut v = self.zero();
        if self.max_degree >= 1 {
            v[1] = Rational::one();
        }
        v
    }
}

impl CoeffRing for TruncatedPolys {
    type Elem = Vec<Rational>;

    fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.max_degree + 1]
    }
    fn one(&self) -> Vec<Rational> {
        let mut v = self.zero();
        v[0] = Rational::one();
        v
    }
    fn add(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn mul(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(self.max_degree + 1 - i) {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }
    fn scale(&self, a: &Vec<Rational>, c: &Rational) -> Vec<Rational> {
        a.iter().map(|x| x * c).collect()
    }
    fn is_zero(&self, a: &Vec<Rational>) -> bool {
        a.iter().all(Zero::is_zero)
    }
}

/// Coefficients of `t^0..=t^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> TruncatedSeries<E> {
    pub fn from_coeffs(coeffs: Vec<E>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least a constant term");
        TruncatedSeries { coeffs }
    }

    pub fn zero<R: CoeffRing<Elem = E>>(ring: &R, order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![ring.zero(); order + 1],
        }
    }

    pub fn constant<R: CoeffRing<Elem = E>>(ring: &R, c: E, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        s.coeffs[0] = c;
        s
    }

    /// `c * t^k`.
    pub fn monomial<R: CoeffRing<Elem = E>>(ring: &R, c: E, k: usize, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &E {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn map<F, R>(&self, f: F) -> TruncatedSeries<R>
    where
        F: FnMut(&E) -> R,
    {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

fn check_orders<E>(a: &TruncatedSeries<E>, b: &TruncatedSeries<E>) {
    assert_eq!(
        a.coeffs.len(),
        b.coeffs.len(),
        "series truncation orders differ"
    );
}

pub fn series_add<R: CoeffRing>(
    ring: &R,
    a: &TruncatedSeries<R::Elem>,
    b: &TruncatedSeries<R::Elem>,
) -> TruncatedSeries<R::Elem> {
    check_orders(a, b);
    TruncatedSeries {
        coeffs: a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| ring.add(x, y))
            .collect(),
    }
}

pub fn series_scale<R: CoeffRing>(
    ring: &R,
    a: &TruncatedSeries<R::Elem>,
    c: &Rational,
) -> TruncatedSeries<R::Elem> {
    a.map(|x| ring.scale(x, c))
}

pub fn series_mul<R: CoeffRing>(
    ring: &R,
    a: &TruncatedSeries<R::Elem>,
    b: &TruncatedSeries<R::Elem>,
) -> TruncatedSeries<R::Elem> {
    check_orders(a, b);
    let n = a.order();
    let mut out = TruncatedSeries::zero(ring, n);
    for i in 0..=n {
        if ring.is_zero(&a.coeffs[i]) {
            continue;
        }
        for j in 0..=n - i {
            if ring.is_zero(&b.coeffs[j]) {
                continue;
            }
            let p = ring.mul(&a.coeffs[i], &b.coeffs[j]);
            out.coeffs[i + j] = ring.add(&out.coeffs[i + j], &p);
        }
    }
    out
}

/// `exp(s)` for `s` with zero constant term, through `n E_n = sum_k k s_k E_{n-k}`.
pub fn series_exp<R: CoeffRing>(
    ring: &R,
    s: &TruncatedSeries<R::Elem>,
) -> Result<TruncatedSeries<R::Elem>> {
    if !ring.is_zero(&s.coeffs[0]) {
        return Err(domain("exp needs a series with zero constant term"));
    }
    let n = s.order();
    let mut e = TruncatedSeries::zero(ring, n);
    e.coeffs[0] = ring.one();
    for m in 1..=n {
        let mut acc = ring.zero();
        for k in 1..=m {
            if ring.is_zero(&s.coeffs[k]) || ring.is_zero(&e.coeffs[m - k]) {
                continue;
            }
            let p = ring.mul(&s.coeffs[k], &e.coeffs[m - k]);
            ring.add_scaled(&mut acc, &p, &int(k as i64));
        }
        e.coeffs[m] = ring.scale(&acc, &Rational::new(1.into(), (m as i64).into()));
    }
    Ok(e)
}

/// `log(s)` for `s` with constant term one, through
/// `n L_n = n s_n - sum_{k<n} k L_k s_{n-k}`.
pub fn series_log<R: CoeffRing>(
    ring: &R,
    s: &TruncatedSeries<R::Elem>,
) -> Result<TruncatedSeries<R::Elem>> {
    if s.coeffs[0] != ring.one() {
        return Err(domain("log needs a series with constant term one"));
    }
    let n = s.order();
    let mut l = TruncatedSeries::zero(ring, n);
    for m in 1..=n {
        let mut acc = ring.scale(&s.coeffs[m], &int(m as i64));
        for k in 1..m {
            if ring.is_zero(&l.coeffs[k]) || ring.is_zero(&s.coeffs[m - k]) {
                continue;
            }
            let p = ring.mul(&l.coeffs[k], &s.coeffs[m - k]);
            ring.add_scaled(&mut acc, &p, &int(-(k as i64)));
        }
        l.coeffs[m] = ring.scale(&acc, &Rational::new(1.into(), (m as i64).into()));
    }
    Ok(l)
}

/// `s(t/(1-t))`, using `(t/(1-t))^k = sum_{m>=k} C(m-1, k-1) t^m`.
pub fn substitute_gamma<R: CoeffRing>(
    ring: &R,
    s: &TruncatedSeries<R::Elem>,
) -> TruncatedSeries<R::Elem> {
    let n = s.order();
    let mut out = TruncatedSeries::zero(ring, n);
    out.coeffs[0] = s.coeffs[0].clone();
    for m in 1..=n {
        let mut acc = ring.zero();
        for k in 1..=m {
            let c = from_bigint(binomial((m - 1) as u64, (k - 1) as u64));
            ring.add_scaled(&mut acc, &s.coeffs[k], &c);
        }
        out.coeffs[m] = acc;
    }
    out
}

/// General composition `s(h(t))` with `h` a scalar series, `h(0) = 0`.
pub fn compose<R: CoeffRing>(
    ring: &R,
    s: &TruncatedSeries<R::Elem>,
    h: &TruncatedSeries<Rational>,
) -> Result<TruncatedSeries<R::Elem>> {
    if !h.coeffs[0].is_zero() {
        return Err(domain(
            "inner series of a composition needs zero constant term",
        ));
    }
    assert_eq!(s.order(), h.order(), "series truncation orders differ");
    let n = s.order();
    let mut out = TruncatedSeries::constant(ring, s.coeffs[0].clone(), n);
    let mut power = TruncatedSeries::constant(&Scalars, Rational::one(), n);
    for k in 1..=n {
        power = series_mul(&Scalars, &power, h);
        for m in 0..=n {
            let c = power.coeffs[m].clone();
            let mut cm = out.coeffs[m].clone();
            ring.add_scaled(&mut cm, &s.coeffs[k], &c);
            out.coeffs[m] = cm;
        }
    }
    Ok(out)
}

/// `t/(1-t)` through order `n`.
pub fn geometric_shift(n: usize) -> TruncatedSeries<Rational> {
    let mut c = vec![Rational::one(); n + 1];
    c[0] = Rational::zero();
    TruncatedSeries::from_coeffs(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;
    use proptest::prelude::*;

    fn scalar(cs: &[Rational]) -> TruncatedSeries<Rational> {
        TruncatedSeries::from_coeffs(cs.to_vec())
    }

    #[test]
    fn exp_of_t() {
        let t = TruncatedSeries::monomial(&Scalars, int(1), 1, 3);
        let e = series_exp(&Scalars, &t).unwrap();
        assert_eq!(e.coeffs(), &[int(1), int(1), ratio(1, 2), ratio(1, 6)]);
    }

    #[test]
    fn exp_log_preconditions() {
        let one = TruncatedSeries::constant(&Scalars, int(1), 3);
        assert!(series_exp(&Scalars, &one).is_err());
        let zero = TruncatedSeries::zero(&Scalars, 3);
        assert!(series_log(&Scalars, &zero).is_err());
    }

    #[test]
    fn exp_of_nilpotent_binomial_shift() {
        // exp(x(t - t^2)) has t^2 coefficient -x + x^2/2.
        let ring = TruncatedPolys { max_degree: 4 };
        let x = ring.generator();
        let mut s = TruncatedSeries::zero(&ring, 4);
        s.coeffs[1] = x.clone();
        s.coeffs[2] = ring.scale(&x, &int(-1));
        let e = series_exp(&ring, &s).unwrap();
        assert_eq!(
            e.coeff(2),
            &vec![int(0), int(-1), ratio(1, 2), int(0), int(0)]
        );
    }

    #[test]
    fn log_inverts_exp_on_nilpotent_linear_term() {
        let ring = TruncatedPolys { max_degree: 3 };
        let x = ring.generator();
        let s = TruncatedSeries::monomial(&ring, x, 1, 5);
        let back = series_log(&ring, &series_exp(&ring, &s).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn gamma_substitution_examples() {
        let t = TruncatedSeries::monomial(&Scalars, int(1), 1, 5);
        assert_eq!(
            substitute_gamma(&Scalars, &t).coeffs(),
            &[int(0), int(1), int(1), int(1), int(1), int(1)]
        );
        let t2 = TruncatedSeries::monomial(&Scalars, int(1), 2, 5);
        assert_eq!(
            substitute_gamma(&Scalars, &t2).coeffs(),
            &[int(0), int(0), int(1), int(2), int(3), int(4)]
        );
        let one = TruncatedSeries::constant(&Scalars, int(7), 5);
        assert_eq!(substitute_gamma(&Scalars, &one), one);
    }

    #[test]
    fn substitution_agrees_with_composition() {
        let s = scalar(&[int(2), int(-1), ratio(1, 3), int(5), ratio(-7, 2), int(1)]);
        let via_binomials = substitute_gamma(&Scalars, &s);
        let via_powers = compose(&Scalars, &s, &geometric_shift(5)).unwrap();
        assert_eq!(via_binomials, via_powers);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
    }

    fn nilpotent_series(order: usize) -> impl Strategy<Value = TruncatedSeries<Vec<Rational>>> {
        // Coefficients in x*Q[x]/(x^5); constant term zero.
        prop::collection::vec(prop::collection::vec(small_rational(), 4), order).prop_map(
            move |cs| {
                let ring = TruncatedPolys { max_degree: 4 };
                let mut coeffs = vec![ring.zero()];
                for c in cs {
                    let mut v = vec![Rational::zero()];
                    v.extend(c);
                    coeffs.push(v);
                }
                TruncatedSeries::from_coeffs(coeffs)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn exp_log_round_trip(s in nilpotent_series(5)) {
            let ring = TruncatedPolys { max_degree: 4 };
            let e = series_exp(&ring, &s).unwrap();
            prop_assert_eq!(series_log(&ring, &e).unwrap(), s);
        }

        #[test]
        fn gamma_substitution_is_multiplicative(
            a in prop::collection::vec(small_rational(), 7),
            b in prop::collection::vec(small_rational(), 7),
        ) {
            let (a, b) = (scalar(&a), scalar(&b));
            let lhs = substitute_gamma(&Scalars, &series_mul(&Scalars, &a, &b));
            let rhs = series_mul(&Scalars, &substitute_gamma(&Scalars, &a), &substitute_gamma(&Scalars, &b));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
