use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinatorics::StirlingTable;
use crate::exact::rational::{factorial, from_bigint, pow, sign};
use crate::exact::Rational;
use crate::series::{series_exp, substitute_gamma, TruncatedPolys, TruncatedSeries};

/// `a(i; d, m)` for `1 <= i <= max_i`, `1 <= d <= max_d`, `1 <= m <= max_m`:
/// the coefficient of `x^m` in `γ^i_π(x)` for `x` of π-weight `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaCoeffTable {
    pub max_i: usize,
    pub max_d: usize,
    pub max_m: usize,
    #[serde(with = "entries")]
    pub entries: BTreeMap<(usize, usize, usize), Rational>,
}

/// `γ_t(x)` in `ℚ[x]/(x^{max_m+1})` with `ψ^n(x) = n^d x`.
fn gamma_series_for_weight(d: usize, max_i: usize, max_m: usize) -> TruncatedSeries<Vec<Rational>> {
    let ring = TruncatedPolys { max_degree: max_m };
    let x = ring.generator();
    // log λ = Σ (-1)^{n-1} n^{d-1} x t^n
    let coeffs = (0..=max_i)
        .map(|n| {
            if n == 0 {
                return vec![Rational::default(); max_m + 1];
            }
            let c = sign(n as i64 - 1) * pow(n as i64, d as i32 - 1);
            x.iter().map(|a| a * &c).collect()
        })
        .collect();
    let lam = series_exp(&ring, &TruncatedSeries::from_coeffs(coeffs)).expect("zero constant term");
    substitute_gamma(&ring, &lam)
}

impl GammaCoeffTable {
    pub fn new(max_i: usize, max_d: usize, max_m: usize) -> Self {
        let mut entries = BTreeMap::new();
        for d in 1..=max_d {
            let s = gamma_series_for_weight(d, max_i, max_m);
            for i in 1..=max_i {
                for m in 1..=max_m {
                    entries.insert((i, d, m), s.coeff(i)[m].clone());
                }
            }
        }
        GammaCoeffTable {
            max_i,
            max_d,
            max_m,
            entries,
        }
    }

    pub fn get(&self, i: usize, d: usize, m: usize) -> Option<&Rational> {
        self.entries.get(&(i, d, m))
    }
}

/// `a(i; d, m)` computed on its own.
pub fn gamma_pi_coeff(i: usize, d: usize, m: usize) -> Rational {
    gamma_series_for_weight(d, i, m.max(1)).coeff(i)[m].clone()
}

/// `(-1)^{i-1} (i-1)! S(d, i)`, the closed form of `a(i; d, 1)`.
pub fn stirling_prediction(i: usize, d: usize) -> Rational {
    assert!(i >= 1, "a(i; d, 1) is indexed from i = 1");
    let s = StirlingTable::new(d.max(i))
        .second_kind(d, i)
        .expect("table covers d");
    sign(i as i64 - 1) * from_bigint(factorial(i as u64 - 1)) * from_bigint(s)
}

mod entries {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exact::rational::{format_rational, parse_rational};
    use crate::exact::Rational;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        i: usize,
        d: usize,
        m: usize,
        value: String,
    }

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<(usize, usize, usize), Rational>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> = map
            .iter()
            .map(|(&(i, d, m), r)| Entry {
                i,
                d,
                m,
                value: format_rational(r),
            })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> Result<BTreeMap<(usize, usize, usize), Rational>, D::Error> {
        let v = Vec::<Entry>::deserialize(de)?;
        v.into_iter()
            .map(|e| {
                let r = parse_rational(&e.value).map_err(D::Error::custom)?;
                Ok(((e.i, e.d, e.m), r))
            })
            .collect()
    }
}
