//! Pullbacks and pushforwards along `k_A`, the Fourier-Mukai transform and
//! the exact identities relating them.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::exact::rational::{binomial, from_bigint, int, is_integer, pow, sign};
use crate::exact::{vandermonde_det, Matrix, Rational};
use crate::lambda::AdamsKind;
use crate::model::{Bidegree, Element, ModelAlgebra};

/// Which diagonal family an operator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    Pullback,
    Pushforward,
    Adams(AdamsKind),
}

impl Rule {
    /// Exponent `e` such that the operator with parameter `k` scales
    /// `K^p_q` by `k^e`.
    pub fn exponent(&self, b: Bidegree, g: usize) -> i64 {
        let (p, q, g) = (b.p as i64, b.q as i64, g as i64);
        match self {
            Rule::Pullback => g + p - q,
            Rule::Pushforward => g - p + q,
            Rule::Adams(kind) => kind.exponent(b, g as usize),
        }
    }
}

/// An operator acting on each `K^p_q` by a scalar.
#[derive(Debug)]
pub struct DiagonalOperator {
    rule: Rule,
    k: i64,
    eigen: Vec<Rational>,
    matrix: OnceLock<Matrix>,
}

impl DiagonalOperator {
    pub fn new(m: &ModelAlgebra, rule: Rule, k: i64) -> Self {
        let eigen = m
            .basis()
            .iter()
            .map(|b| {
                let e = rule.exponent(b.bidegree, m.g());
                assert!(k != 0 || e >= 0, "0 raised to a negative power");
                pow(k, e as i32)
            })
            .collect();
        DiagonalOperator {
            rule,
            k,
            eigen,
            matrix: OnceLock::new(),
        }
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    pub fn parameter(&self) -> i64 {
        self.k
    }

    pub fn eigenvalues(&self) -> &[Rational] {
        &self.eigen
    }

    pub fn apply(&self, x: &Element) -> Element {
        Element(x.0.iter().zip(&self.eigen).map(|(c, e)| c * e).collect())
    }

    pub fn matrix(&self) -> &Matrix {
        self.matrix.get_or_init(|| Matrix::diagonal(&self.eigen))
    }
}

/// Scales `K^p_q` by `k^{g+p-q}`; `pullback(0)` is `x ↦ rk(x)·1`.
pub fn pullback(m: &ModelAlgebra, k: i64) -> DiagonalOperator {
    DiagonalOperator::new(m, Rule::Pullback, k)
}

/// Scales `K^p_q` by `k^{g-p+q}`; `pushforward(0)` is `x ↦ χ(x)·[0_A]`.
pub fn pushforward(m: &ModelAlgebra, k: i64) -> DiagonalOperator {
    DiagonalOperator::new(m, Rule::Pushforward, k)
}

/// Build-once store of operators for one model, shareable across threads.
#[derive(Debug)]
pub struct OperatorCache<'a> {
    model: &'a ModelAlgebra,
    ops: RwLock<HashMap<(Rule, i64), Arc<DiagonalOperator>>>,
}

impl<'a> OperatorCache<'a> {
    pub fn new(model: &'a ModelAlgebra) -> Self {
        OperatorCache {
            model,
            ops: RwLock::new(HashMap::new()),
        }
    }

    pub fn get(&self, rule: Rule, k: i64) -> Arc<DiagonalOperator> {
        if let Some(op) = self.ops.read().expect("cache lock").get(&(rule, k)) {
            return Arc::clone(op);
        }
        let mut ops = self.ops.write().expect("cache lock");
        Arc::clone(
            ops.entry((rule, k))
                .or_insert_with(|| Arc::new(DiagonalOperator::new(self.model, rule, k))),
        )
    }

    pub fn len(&self) -> usize {
        self.ops.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn star_product(m: &ModelAlgebra, x: &Element, y: &Element) -> Element {
    m.star(x, y)
}

pub fn euler_char(m: &ModelAlgebra, x: &Element) -> Rational {
    m.euler_char(x)
}

pub fn rank(m: &ModelAlgebra, x: &Element) -> Rational {
    m.rank(x)
}

/// Compares two operators column by column and names the first basis
/// vector on which they differ.
pub fn compare_operators(m: &ModelAlgebra, what: &str, lhs: &Matrix, rhs: &Matrix) -> Check {
    for j in 0..m.dim() {
        if lhs.column(j) != rhs.column(j) {
            return Check::fail(format!("{what}: sides differ on {}", m.label(j)));
        }
    }
    Check::pass()
}

/// `fm ∘ fm = (-1)^g · pullback(-1)`.
pub fn fm_square_check(m: &ModelAlgebra) -> Check {
    let lhs = m.fm() * m.fm();
    let rhs = pullback(m, -1).matrix().scale(&sign(m.g() as i64));
    compare_operators(m, "fm∘fm", &lhs, &rhs)
}

/// `F_{q^m} ∘ F_{p^n} = (-1)^g (-m)^* ∘ n_*` with `F_{p^n} = fm ∘ n_*` and
/// `F_{q^m} = m^* ∘ fm`.
pub fn fm_composite_check(model: &ModelAlgebra, m: i64, n: i64) -> Check {
    let fm = model.fm();
    let lhs = &(&(pullback(model, m).matrix() * fm) * fm) * pushforward(model, n).matrix();
    let rhs = (pullback(model, -m).matrix() * pushforward(model, n).matrix())
        .scale(&sign(model.g() as i64));
    compare_operators(model, &format!("F_q^{m}∘F_p^{n}"), &lhs, &rhs)
}

/// `fm ∘ n_* = n^* ∘ fm`.
pub fn exchange_law_check(m: &ModelAlgebra, n: i64) -> Check {
    let lhs = m.fm() * pushforward(m, n).matrix();
    let rhs = pullback(m, n).matrix() * m.fm();
    compare_operators(m, &format!("fm∘{n}_* vs {n}^*∘fm"), &lhs, &rhs)
}

/// `k^* l^* = (kl)^*` and `k_* l_* = (kl)_*`.
pub fn semigroup_check(m: &ModelAlgebra, k: i64, l: i64) -> Check {
    let mut checks = Vec::new();
    for (name, op) in [
        (
            "pullback",
            pullback as fn(&ModelAlgebra, i64) -> DiagonalOperator,
        ),
        ("pushforward", pushforward),
    ] {
        let lhs = op(m, k).matrix() * op(m, l).matrix();
        checks.push(compare_operators(
            m,
            &format!("{name}({k})∘{name}({l})"),
            &lhs,
            op(m, k * l).matrix(),
        ));
    }
    Check::all(checks)
}

/// `(m_A)_*` is an automorphism for `m != 0`.
pub fn pushforward_invertible(m: &ModelAlgebra, k: i64) -> Check {
    Check::from_bool(pushforward(m, k).matrix().inverse().is_some(), || {
        format!("pushforward({k}) is singular")
    })
}

/// `k_*(x ⋆ y) = k_*(x) ⋆ k_*(y)` on all basis pairs.
pub fn pushforward_star_hom(m: &ModelAlgebra, k: i64) -> Check {
    let op = pushforward(m, k);
    for i in 0..m.dim() {
        for j in i..m.dim() {
            let (x, y) = (m.basis_element(i), m.basis_element(j));
            if op.apply(&m.star(&x, &y)) != m.star(&op.apply(&x), &op.apply(&y)) {
                return Check::fail(format!(
                    "pushforward({k}) does not respect {}⋆{}",
                    m.label(i),
                    m.label(j)
                ));
            }
        }
    }
    Check::pass()
}

/// `fm(x ⋆ y) = fm(x)·fm(y)` on all basis pairs, with ⋆ taken from the
/// model's cached table.
pub fn fm_multiplicative_check(m: &ModelAlgebra) -> Check {
    for i in 0..m.dim() {
        for j in i..m.dim() {
            let (x, y) = (m.basis_element(i), m.basis_element(j));
            let lhs = m.apply_fm(&m.star(&x, &y));
            let rhs = m.mul(&m.apply_fm(&x), &m.apply_fm(&y));
            if lhs != rhs {
                return Check::fail(format!(
                    "fm({0}⋆{1}) != fm({0})·fm({1})",
                    m.label(i),
                    m.label(j)
                ));
            }
        }
    }
    Check::pass()
}

/// `χ(x) = rk(fm(x))` on the basis.
pub fn euler_rank_check(m: &ModelAlgebra) -> Check {
    for i in 0..m.dim() {
        let x = m.basis_element(i);
        if m.euler_char(&x) != m.rank(&m.apply_fm(&x)) {
            return Check::fail(format!("χ({0}) != rk(fm({0}))", m.label(i)));
        }
    }
    Check::pass()
}

/// `(-1)^m C(2g+1, m+1)` for `m = 0..=2g`: the coefficients with
/// `Σ c_m (-m)_* = id`.
pub fn identity_expansion_coeffs(g: usize) -> Vec<BigInt> {
    (0..=2 * g as u64)
        .map(|m| {
            let c = binomial(2 * g as u64 + 1, m + 1);
            if m % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// Scalar form: `Σ_m c_m (-m)^d = 1` for every `d` in `0..=2g`.
pub fn identity_expansion_scalar(g: usize) -> Check {
    let coeffs = identity_expansion_coeffs(g);
    for d in 0..=2 * g {
        let total: Rational = coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| from_bigint(c.clone()) * pow(-(m as i64), d as i32))
            .sum();
        if !total.is_one() {
            return Check::fail(format!("g={g}, d={d}: sum is {total}"));
        }
    }
    Check::pass()
}

/// Matrix form of the identity expansion on a model.
pub fn pushforward_identity_check(m: &ModelAlgebra) -> Check {
    let d = m.dim();
    let mut acc = Matrix::zeros(d, d);
    for (k, c) in identity_expansion_coeffs(m.g()).into_iter().enumerate() {
        acc = &acc + &pushforward(m, -(k as i64)).matrix().scale(&from_bigint(c));
    }
    compare_operators(m, "Σ c_m (-m)_*", &acc, &Matrix::identity(d))
}

/// `(k_A)_* = Σ_{m=0}^{2g} c_m (m_A)_*`, solved exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushforwardRelation {
    pub k: i64,
    pub g: usize,
    #[serde(with = "crate::io::rational_vec")]
    pub coeffs: Vec<Rational>,
    pub integral: bool,
}

/// Expresses `(k_A)_*` through `(m_A)_*`, `0 <= m <= 2g`, by solving the
/// transposed Vandermonde system `Σ_m c_m m^d = k^d`, `d = 0..=2g`.
pub fn pushforward_relation(k: i64, g: usize) -> Result<PushforwardRelation> {
    if g == 0 {
        return Err(crate::error::domain("pushforward_relation needs g >= 1"));
    }
    if vandermonde_det(g).is_zero() {
        return Err(Error::Singular(format!("Vandermonde system for g={g}")));
    }
    let n = 2 * g + 1;
    let system = Matrix::from_fn(n, n, |d, m| pow(m as i64, d as i32));
    let rhs: Vec<Rational> = (0..n).map(|d| pow(k, d as i32)).collect();
    let coeffs = system.solve(&rhs)?;
    let integral = coeffs.iter().all(is_integer);
    Ok(PushforwardRelation {
        k,
        g,
        coeffs,
        integral,
    })
}

/// Checks a relation as a matrix identity on a model of the same `g`.
pub fn pushforward_relation_check(m: &ModelAlgebra, rel: &PushforwardRelation) -> Check {
    let d = m.dim();
    let mut acc = Matrix::zeros(d, d);
    for (j, c) in rel.coeffs.iter().enumerate() {
        acc = &acc + &pushforward(m, j as i64).matrix().scale(c);
    }
    compare_operators(
        m,
        &format!("relation for ({})_*", rel.k),
        &acc,
        pushforward(m, rel.k).matrix(),
    )
}

/// `pullback(0) = rk(·)·1` and `pushforward(0) = χ(·)·[0_A]` as matrices.
pub fn augmentation_projector_check(m: &ModelAlgebra) -> Check {
    let d = m.dim();
    let rk = Matrix::from_fn(d, d, |i, j| {
        if i == m.unit_index() && j == m.unit_index() {
            int(1)
        } else {
            Rational::zero()
        }
    });
    let chi = Matrix::from_fn(d, d, |i, j| {
        if i == m.star_unit_index() && j == m.star_unit_index() {
            int(1)
        } else {
            Rational::zero()
        }
    });
    Check::all([
        compare_operators(m, "pullback(0) vs rk·1", pullback(m, 0).matrix(), &rk),
        compare_operators(
            m,
            "pushforward(0) vs χ·[0_A]",
            pushforward(m, 0).matrix(),
            &chi,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{antisym_model, pathological_model, theta_model};

    #[test]
    fn augmentations_on_theta_two() {
        let m = theta_model(2);
        let x = Element(vec![int(1), int(1), int(1)]);
        assert_eq!(pullback(&m, 0).apply(&x), m.basis_element(0));
        assert_eq!(pushforward(&m, 0).apply(&x), m.basis_element(2));
        assert_eq!(
            pullback(&m, 2).apply(&m.basis_element(1)),
            m.basis_element(1).scale(&int(4))
        );
        assert!(augmentation_projector_check(&m).passed);
    }

    #[test]
    fn star_examples() {
        let m = theta_model(2);
        let e1 = m.basis_element(1);
        assert_eq!(
            star_product(&m, &e1, &e1),
            m.basis_element(0).scale(&int(2))
        );
        let e2 = m.basis_element(2);
        assert_eq!(star_product(&m, &e2, &e2), e2);
        assert_eq!(euler_char(&m, &m.origin()), int(1));
        assert_eq!(euler_char(&m, &m.one()), int(0));
        assert_eq!(rank(&m, &m.one()), int(1));
    }

    #[test]
    fn star_matches_binomial_oracle() {
        // e_a ⋆ e_b = C(2g-a-b, g-a) e_{a+b-g}
        for g in 1..=5usize {
            let m = theta_model(g);
            for a in 0..=g {
                for b in 0..=g {
                    let got = m.star(&m.basis_element(a), &m.basis_element(b));
                    let want = if a + b >= g {
                        m.basis_element(a + b - g).scale(&from_bigint(binomial(
                            (2 * g - a - b) as u64,
                            (g - a) as u64,
                        )))
                    } else {
                        m.zero()
                    };
                    assert_eq!(got, want, "g={g} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn composite_identity_on_theta_one() {
        let m = theta_model(1);
        assert!(fm_composite_check(&m, 1, 1).passed);
        let lhs = &(&(pullback(&m, 1).matrix() * m.fm()) * m.fm()) * pushforward(&m, 1).matrix();
        assert_eq!(lhs, Matrix::identity(2).scale(&int(-1)));
        for (a, b) in [(0, 2), (2, 0), (0, 0), (-2, 1)] {
            assert!(fm_composite_check(&m, a, b).passed);
        }
    }

    #[test]
    fn identity_expansion() {
        let c: Vec<BigInt> = identity_expansion_coeffs(1);
        assert_eq!(c, vec![BigInt::from(3), BigInt::from(-3), BigInt::from(1)]);
        // g=1, d=2: 3·0 − 3·1 + 1·4 = 1
        let d2: BigInt = c
            .iter()
            .enumerate()
            .map(|(m, c)| c * BigInt::from(m * m))
            .sum();
        assert_eq!(d2, BigInt::from(1));
        for g in 1..=6 {
            assert!(identity_expansion_scalar(g).passed);
        }
        for g in 1..=4 {
            assert!(pushforward_identity_check(&theta_model(g)).passed);
            assert!(pushforward_identity_check(&antisym_model(g.max(2))).passed);
        }
    }

    #[test]
    fn relation_for_minus_one_is_the_expansion() {
        for g in 1..=4 {
            let rel = pushforward_relation(-1, g).unwrap();
            let want: Vec<Rational> = identity_expansion_coeffs(g)
                .into_iter()
                .map(from_bigint)
                .collect();
            assert_eq!(rel.coeffs, want);
            assert!(rel.integral);
            assert!(pushforward_relation_check(&theta_model(g), &rel).passed);
        }
        let rel = pushforward_relation(1, 2).unwrap();
        assert_eq!(rel.coeffs[1], int(1));
        assert!(rel
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i == 1 || c.is_zero()));
    }

    #[test]
    fn operator_laws_on_pathological() {
        let m = pathological_model(3);
        assert!(fm_square_check(&m).passed);
        for n in -3..=3 {
            assert!(exchange_law_check(&m, n).passed);
        }
        assert!(semigroup_check(&m, -2, 3).passed);
        assert!(pushforward_invertible(&m, -2).passed);
        assert!(!pushforward_invertible(&m, 0).passed);
        assert!(pushforward_star_hom(&m, 2).passed);
    }

    #[test]
    fn cache_builds_once() {
        let m = theta_model(3);
        let cache = OperatorCache::new(&m);
        let a = cache.get(Rule::Pullback, 2);
        let b = cache.get(Rule::Pullback, 2);
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
        assert!(std::ptr::eq(a.matrix(), b.matrix()));
    }
}
