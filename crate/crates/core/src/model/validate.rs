use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Bidegree, Element, ModelAlgebra};
use crate::exact::rational::sign;

/// One violated model invariant, with the basis labels that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonCommutative {
        left: String,
        right: String,
    },
    NonAssociative {
        a: String,
        b: String,
        c: String,
    },
    BidegreeLaw {
        left: String,
        right: String,
        target: String,
    },
    UnitBidegree {
        found: Bidegree,
        expected: Bidegree,
    },
    StarUnitBidegree {
        found: Bidegree,
        expected: Bidegree,
    },
    UnitNotNeutral {
        basis: String,
    },
    LineNotSimple {
        bidegree: Bidegree,
        labels: Vec<String>,
    },
    FmBidegree {
        basis: String,
        target: String,
    },
    FmSingular,
    FmSquare {
        basis: String,
    },
    FmStarUnit,
    EulerRank {
        basis: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonCommutative { left, right } => {
                write!(f, "{left}*{right} != {right}*{left}")
            }
            Violation::NonAssociative { a, b, c } => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
            Violation::BidegreeLaw {
                left,
                right,
                target,
            } => {
                write!(
                    f,
                    "{left}*{right} has a component on {target} outside the allowed bidegree"
                )
            }
            Violation::UnitBidegree { found, expected } => {
                write!(f, "unit has bidegree {found}, expected {expected}")
            }
            Violation::StarUnitBidegree { found, expected } => {
                write!(f, "[0_A] has bidegree {found}, expected {expected}")
            }
            Violation::UnitNotNeutral { basis } => write!(f, "1*{basis} != {basis}"),
            Violation::LineNotSimple { bidegree, labels } => {
                write!(
                    f,
                    "{bidegree} must be a single line, spanned by [{}]",
                    labels.join(", ")
                )
            }
            Violation::FmBidegree { basis, target } => {
                write!(
                    f,
                    "fm({basis}) has a component on {target} outside the swapped bidegree"
                )
            }
            Violation::FmSingular => write!(f, "fm is not invertible"),
            Violation::FmSquare { basis } => {
                write!(f, "fm(fm({basis})) != (-1)^g (-1)^*({basis})")
            }
            Violation::FmStarUnit => write!(f, "fm([0_A]) != 1"),
            Violation::EulerRank { basis } => write!(f, "chi({basis}) != rk(fm({basis}))"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every structural invariant of a model algebra and lists each failure.
pub fn validate(m: &ModelAlgebra) -> ValidationReport {
    let mut v = Vec::new();
    let d = m.dim();
    let g = m.g();
    let lbl = |i: usize| m.label(i).to_string();
    let basis: Vec<Element> = (0..d).map(|i| m.basis_element(i)).collect();

    let products: Vec<Vec<Element>> = (0..d)
        .map(|i| (0..d).map(|j| m.mul(&basis[i], &basis[j])).collect())
        .collect();

    for i in 0..d {
        for j in i + 1..d {
            if products[i][j] != products[j][i] {
                v.push(Violation::NonCommutative {
                    left: lbl(i),
                    right: lbl(j),
                });
            }
        }
    }

    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let left = m.mul(&products[i][j], &basis[k]);
                let right = m.mul(&basis[i], &products[j][k]);
                if left != right {
                    v.push(Violation::NonAssociative {
                        a: lbl(i),
                        b: lbl(j),
                        c: lbl(k),
                    });
                }
            }
        }
    }

    for i in 0..d {
        for j in 0..d {
            let allowed = m.bidegree(i).product(&m.bidegree(j), g);
            for (k, _) in m.structure(i, j) {
                if Some(m.bidegree(*k)) != allowed {
                    v.push(Violation::BidegreeLaw {
                        left: lbl(i),
                        right: lbl(j),
                        target: lbl(*k),
                    });
                }
            }
        }
    }

    let unit_bd = Bidegree::new(0, g);
    let star_bd = Bidegree::new(g, 0);
    if m.bidegree(m.unit_index()) != unit_bd {
        v.push(Violation::UnitBidegree {
            found: m.bidegree(m.unit_index()),
            expected: unit_bd,
        });
    }
    if m.bidegree(m.star_unit_index()) != star_bd {
        v.push(Violation::StarUnitBidegree {
            found: m.bidegree(m.star_unit_index()),
            expected: star_bd,
        });
    }
    for (bd, idx) in [(unit_bd, m.unit_index()), (star_bd, m.star_unit_index())] {
        let on_line = m.indices_where(|b| b == bd);
        if on_line != [idx] {
            v.push(Violation::LineNotSimple {
                bidegree: bd,
                labels: on_line.into_iter().map(lbl).collect(),
            });
        }
    }
    for (i, b) in basis.iter().enumerate() {
        if products[m.unit_index()][i] != *b {
            v.push(Violation::UnitNotNeutral { basis: lbl(i) });
        }
    }

    let images: Vec<Element> = basis.iter().map(|b| m.apply_fm(b)).collect();
    for (j, img) in images.iter().enumerate() {
        let target = m.bidegree(j).swapped();
        for k in img.support() {
            if m.bidegree(k) != target {
                v.push(Violation::FmBidegree {
                    basis: lbl(j),
                    target: lbl(k),
                });
            }
        }
    }
    if m.fm_inverse().is_none() {
        v.push(Violation::FmSingular);
    }
    for (j, img) in images.iter().enumerate() {
        let b = m.bidegree(j);
        let factor = sign(g as i64) * sign((g + b.p) as i64 - b.q as i64);
        if m.apply_fm(img) != basis[j].scale(&factor) {
            v.push(Violation::FmSquare { basis: lbl(j) });
        }
    }
    if images[m.star_unit_index()] != m.one() {
        v.push(Violation::FmStarUnit);
    }
    for (j, img) in images.iter().enumerate() {
        if m.euler_char(&basis[j]) != m.rank(img) {
            v.push(Violation::EulerRank { basis: lbl(j) });
        }
    }

    ValidationReport { violations: v }
}
