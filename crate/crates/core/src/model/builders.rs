//! The bundled models.
//!
//! * `theta`: the span of `l_1^p / p!` for a symmetric ample class, one line
//!   in each `K^p_{g-p}`.
//! * `antisym`: theta plus an anti-symmetric class `a ∈ K^1_g` and its
//!   products `a_p = a * e_p`.
//! * `pathological`: theta plus a pair `v ∈ K^1_{g-2}`, `w = fm(v) ∈ K^{g-2}_1`
//!   of Beauville index `-1`, multiplying to zero with everything but `1`.
//! * `violator`: pathological plus the antisym classes, with `a * v = e_2`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{validate, BasisVector, Bidegree, ModelAlgebra, Violation};
use crate::error::{domain, Error, Result};
use crate::exact::rational::{binomial, from_bigint, int, sign};
use crate::exact::{Matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builder {
    Theta,
    Antisym,
    Pathological,
    Violator,
}

impl Builder {
    pub const ALL: [Builder; 4] = [
        Builder::Theta,
        Builder::Antisym,
        Builder::Pathological,
        Builder::Violator,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Builder::Theta => "theta",
            Builder::Antisym => "antisym",
            Builder::Pathological => "pathological",
            Builder::Violator => "violator",
        }
    }

    pub fn min_g(&self) -> usize {
        match self {
            Builder::Theta => 1,
            _ => 2,
        }
    }

    /// Whether the model satisfies Beauville's vanishing `K[j] = 0` for `j < 0`.
    pub fn is_beauville_compliant(&self) -> bool {
        matches!(self, Builder::Theta | Builder::Antisym)
    }

    pub fn build(&self, g: usize) -> Result<ModelAlgebra> {
        if g < self.min_g() {
            return Err(domain(format!(
                "{} model needs g >= {}, got {g}",
                self.name(),
                self.min_g()
            )));
        }
        Ok(match self {
            Builder::Theta => theta_model(g),
            Builder::Antisym => antisym_model(g),
            Builder::Pathological => pathological_model(g),
            Builder::Violator => violator_model(g),
        })
    }
}

impl FromStr for Builder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builder::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| domain(format!("unknown builder `{s}`")))
    }
}

struct Draft {
    g: usize,
    basis: Vec<BasisVector>,
    mul: Vec<(usize, usize, usize, Rational)>,
    fm: Vec<(usize, usize, Rational)>,
}

impl Draft {
    fn push(&mut self, label: String, p: usize, q: usize) -> usize {
        self.basis.push(BasisVector {
            label,
            bidegree: Bidegree::new(p, q),
        });
        self.basis.len() - 1
    }

    /// Records `x*y = c z` and its mirror `y*x`.
    fn product(&mut self, x: usize, y: usize, z: usize, c: Rational) {
        self.mul.push((x, y, z, c.clone()));
        if x != y {
            self.mul.push((y, x, z, c));
        }
    }

    /// Records `fm(x) = c y`.
    fn fm(&mut self, x: usize, y: usize, c: Rational) {
        self.fm.push((y, x, c));
    }

    fn unit_products(&mut self, unit: usize) {
        for i in 0..self.basis.len() {
            if i != unit {
                self.product(unit, i, i, int(1));
            }
        }
        self.mul.push((unit, unit, unit, int(1)));
    }

    fn finish(self, unit: usize, star_unit: usize) -> ModelAlgebra {
        let d = self.basis.len();
        let mut fm = Matrix::zeros(d, d);
        for (r, c, v) in self.fm {
            fm.set(r, c, v);
        }
        ModelAlgebra::new(self.g, self.basis, self.mul, fm, unit, star_unit)
            .expect("bundled model is well-shaped")
    }
}

fn theta_draft(g: usize) -> Draft {
    let mut d = Draft {
        g,
        basis: Vec::new(),
        mul: Vec::new(),
        fm: Vec::new(),
    };
    for p in 0..=g {
        d.push(format!("e{p}"), p, g - p);
    }
    for a in 1..=g {
        for b in a..=g - a {
            let c = from_bigint(binomial((a + b) as u64, a as u64));
            d.product(a, b, a + b, c);
        }
    }
    for p in 0..=g {
        d.fm(p, g - p, sign((g - p) as i64));
    }
    d
}

/// Adds `a_0..a_{g-1}` with `a_p ∈ K^{p+1}_{g-p}`; returns their indices.
fn add_antisym(d: &mut Draft) -> Vec<usize> {
    let g = d.g;
    let idx: Vec<usize> = (0..g)
        .map(|p| {
            let label = if p == 0 {
                "a".to_string()
            } else {
                format!("a{p}")
            };
            d.push(label, p + 1, g - p)
        })
        .collect();
    for p in 0..g {
        for r in 1..=g {
            if p + r < g {
                let c = from_bigint(binomial((p + r) as u64, p as u64));
                d.product(idx[p], r, idx[p + r], c);
            }
        }
        d.fm(idx[p], idx[g - 1 - p], sign((g - p) as i64));
    }
    idx
}

/// Adds the index `-1` pair `v, w`; returns `(v, w)`.
fn add_pathological(d: &mut Draft) -> (usize, usize) {
    let g = d.g;
    let v = d.push("v".into(), 1, g - 2);
    let w = d.push("w".into(), g - 2, 1);
    // (-1)^* acts by -1 on both, so fm∘fm = (-1)^{g+1} on the pair.
    d.fm(v, w, int(1));
    d.fm(w, v, sign(g as i64 + 1));
    (v, w)
}

pub fn theta_model(g: usize) -> ModelAlgebra {
    assert!(g >= 1, "theta_model needs g >= 1");
    let mut d = theta_draft(g);
    d.unit_products(0);
    checked(d.finish(0, g))
}

pub fn antisym_model(g: usize) -> ModelAlgebra {
    assert!(g >= 2, "antisym_model needs g >= 2");
    let mut d = theta_draft(g);
    add_antisym(&mut d);
    d.unit_products(0);
    checked(d.finish(0, g))
}

pub fn pathological_model(g: usize) -> ModelAlgebra {
    assert!(g >= 2, "pathological_model needs g >= 2");
    let mut d = theta_draft(g);
    add_pathological(&mut d);
    d.unit_products(0);
    checked(d.finish(0, g))
}

/// Pathological plus antisym with the seeded product `a * v = e_2`.
///
/// For `g = 2` this is still an admissible algebra. For `g >= 3` the entry
/// breaks associativity (`(a v) e_1 = 3 e_3` but `a (v e_1) = 0`); validation
/// then reports only triples involving both `a` and `v`.
pub fn violator_model(g: usize) -> ModelAlgebra {
    assert!(g >= 2, "violator_model needs g >= 2");
    let mut d = theta_draft(g);
    let a = add_antisym(&mut d)[0];
    let (v, _) = add_pathological(&mut d);
    d.product(a, v, 2, int(1));
    d.unit_products(0);
    let m = d.finish(0, g);
    let report = validate(&m);
    assert!(
        report.violations.iter().all(involves_a_and_v),
        "violator_model({g}) has defects beyond the seeded a*v entry: {:?}",
        report.violations
    );
    m
}

fn involves_a_and_v(v: &Violation) -> bool {
    match v {
        Violation::NonAssociative { a, b, c } => {
            let labels = [a.as_str(), b.as_str(), c.as_str()];
            labels.contains(&"a") && labels.contains(&"v")
        }
        _ => false,
    }
}

fn checked(m: ModelAlgebra) -> ModelAlgebra {
    let report = validate(&m);
    assert!(
        report.is_ok(),
        "bundled model failed validation: {:?}",
        report.violations
    );
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Element;

    fn e(m: &ModelAlgebra, label: &str) -> Element {
        m.element_by_label(label).unwrap()
    }

    #[test]
    fn theta_products() {
        let m = theta_model(1);
        assert_eq!(m.mul(&e(&m, "e0"), &e(&m, "e1")), e(&m, "e1"));
        assert!(m.mul(&e(&m, "e1"), &e(&m, "e1")).is_zero());
        let m = theta_model(2);
        assert_eq!(
            m.mul(&e(&m, "e1"), &e(&m, "e1")),
            e(&m, "e2").scale(&int(2))
        );
    }

    #[test]
    fn theta_fm_squares_to_sign() {
        for g in 1..=5 {
            let m = theta_model(g);
            for p in 0..=g {
                let x = m.basis_element(p);
                assert_eq!(m.apply_fm(&m.apply_fm(&x)), x.scale(&sign(g as i64)));
            }
        }
    }

    #[test]
    fn antisym_examples() {
        for g in 2..=4 {
            let m = antisym_model(g);
            let one = m.one();
            let a = e(&m, "a");
            let l = &one + &a;
            assert_eq!(m.mul(&l, &l), &one + &a.scale(&int(2)));
            assert_eq!(m.apply_fm(&m.apply_fm(&a)), a.scale(&sign(g as i64 + 1)));
        }
        let m = antisym_model(2);
        assert_eq!(m.bidegree(m.index_of("a1").unwrap()), Bidegree::new(2, 1));
    }

    #[test]
    fn pathological_pair_has_index_minus_one() {
        for g in 2..=5 {
            let m = pathological_model(g);
            for l in ["v", "w"] {
                assert_eq!(m.bidegree(m.index_of(l).unwrap()).index(g), -1);
            }
            assert!(validate(&m).is_ok());
        }
    }

    #[test]
    fn violator_seeds_a_times_v() {
        let m = violator_model(2);
        assert!(validate(&m).is_ok());
        let av = m.mul(&e(&m, "a"), &e(&m, "v"));
        assert!(!av.is_zero());
        assert_eq!(m.bidegree(m.index_of("a").unwrap()).index(2), 1);
        assert_eq!(m.bidegree(m.index_of("v").unwrap()).index(2), -1);
        for g in 3..=4 {
            let r = validate(&violator_model(g));
            assert!(!r.is_ok());
            assert!(r.violations.iter().all(involves_a_and_v));
        }
    }

    #[test]
    fn builder_names_round_trip() {
        for b in Builder::ALL {
            assert_eq!(b.name().parse::<Builder>().unwrap(), b);
        }
        assert!("nope".parse::<Builder>().is_err());
        assert!(Builder::Antisym.build(1).is_err());
    }
}
