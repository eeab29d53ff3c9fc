use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::model::{Bidegree, Element, ModelAlgebra, ProductKind};
use crate::operators::{DiagonalOperator, Rule};

/// The five Adams families, each diagonal on the bigraded basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdamsKind {
    /// `ψ^n`, eigenvalue `n^p`.
    Usual,
    /// `ψ^n_⋆`, eigenvalue `n^q`.
    Star,
    /// `ψ^n_π`, eigenvalue `n^{g-q}`.
    Pi,
    /// `Ψ^n = n^{-g} ψ^n_⋆ ∘ ψ^n`, eigenvalue `n^{p+q-g}`.
    Composed,
    /// `π^n_⋆ = n^{-g} ψ^n_⋆`, eigenvalue `n^{q-g}`.
    PiStar,
}

impl AdamsKind {
    pub const ALL: [AdamsKind; 5] = [
        AdamsKind::Usual,
        AdamsKind::Star,
        AdamsKind::Pi,
        AdamsKind::Composed,
        AdamsKind::PiStar,
    ];

    pub fn exponent(&self, b: Bidegree, g: usize) -> i64 {
        let (p, q, g) = (b.p as i64, b.q as i64, g as i64);
        match self {
            AdamsKind::Usual => p,
            AdamsKind::Star => q,
            AdamsKind::Pi => g - q,
            AdamsKind::Composed => p + q - g,
            AdamsKind::PiStar => q - g,
        }
    }

    /// The product under which the family is multiplicative.
    pub fn product(&self) -> ProductKind {
        match self {
            AdamsKind::Star => ProductKind::Star,
            _ => ProductKind::Usual,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AdamsKind::Usual => "usual",
            AdamsKind::Star => "star",
            AdamsKind::Pi => "pi",
            AdamsKind::Composed => "composed",
            AdamsKind::PiStar => "pi_star",
        }
    }
}

impl fmt::Display for AdamsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AdamsKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AdamsKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| domain(format!("unknown Adams family `{s}`")))
    }
}

pub fn adams_operator(m: &ModelAlgebra, kind: AdamsKind, n: i64) -> Result<DiagonalOperator> {
    if n <= 0 {
        return Err(domain(format!("Adams operations need n >= 1, got {n}")));
    }
    Ok(DiagonalOperator::new(m, Rule::Adams(kind), n))
}

pub fn adams(m: &ModelAlgebra, kind: AdamsKind, n: i64, x: &Element) -> Result<Element> {
    Ok(adams_operator(m, kind, n)?.apply(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::model::{antisym_model, theta_model};

    #[test]
    fn nonpositive_n_is_rejected() {
        let m = theta_model(2);
        assert!(adams(&m, AdamsKind::Usual, 0, &m.one()).is_err());
        assert!(adams(&m, AdamsKind::Pi, -1, &m.one()).is_err());
    }

    #[test]
    fn eigenvalues_per_family() {
        let m = antisym_model(2);
        let a = m.element_by_label("a").unwrap();
        // a ∈ K^1_2
        let want = [
            (AdamsKind::Usual, 3),
            (AdamsKind::Star, 9),
            (AdamsKind::Pi, 1),
            (AdamsKind::Composed, 3),
        ];
        for (kind, s) in want {
            assert_eq!(adams(&m, kind, 3, &a).unwrap(), a.scale(&int(s)), "{kind}");
        }
        assert_eq!(adams(&m, AdamsKind::PiStar, 3, &a).unwrap(), a);
        assert_eq!("pi_star".parse::<AdamsKind>().unwrap(), AdamsKind::PiStar);
    }
}
