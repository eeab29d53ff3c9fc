use serde::{Deserialize, Serialize};

use super::{compute_filtration, FiltrationConfig, FiltrationKind, FiltrationResult, Method};
use crate::check::Outcome;
use crate::error::{domain, Result};
use crate::exact::Subspace;
use crate::lambda::{gamma_op, AdamsKind};
use crate::model::{Element, ModelAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QVerdict {
    pub q: usize,
    pub holds: bool,
    /// One of `q = 0, 1, g-1, g`, where the inclusion is known unconditionally.
    pub proved_case: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// `Fil^q_π ⊆ Fil^q_γ` for `0 <= q <= up_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub per_q: Vec<QVerdict>,
    pub proved_cases_hold: bool,
    /// Set when a proved case fails: the model cannot be a faithful stand-in.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_validation_failure: Option<String>,
}

impl ConjectureReport {
    pub fn all_hold(&self) -> bool {
        self.per_q.iter().all(|v| v.holds)
    }

    pub fn failing_q(&self) -> Vec<usize> {
        self.per_q
            .iter()
            .filter(|v| !v.holds)
            .map(|v| v.q)
            .collect()
    }
}

fn saturate(
    m: &ModelAlgebra,
    kind: FiltrationKind,
    cfg: &FiltrationConfig,
) -> Result<FiltrationResult> {
    compute_filtration(m, kind, cfg, Method::Saturation)
}

fn stage_config(cfg: &FiltrationConfig, n_max: usize) -> FiltrationConfig {
    FiltrationConfig {
        n_max: cfg.n_max.max(n_max),
        order: cfg.order.max(n_max),
        ..*cfg
    }
}

pub fn check_pi_subset_gamma(
    m: &ModelAlgebra,
    up_to: usize,
    cfg: &FiltrationConfig,
) -> Result<ConjectureReport> {
    let g = m.g();
    let cfg = stage_config(cfg, up_to);
    let pi = saturate(m, FiltrationKind::Pi, &cfg)?;
    let gamma = saturate(m, FiltrationKind::Gamma, &cfg)?;
    let proved = [0, 1, g.saturating_sub(1), g];
    let mut per_q = Vec::new();
    for q in 0..=up_to {
        let w = pi.stages[q].witness_outside(&gamma.stages[q])?;
        per_q.push(QVerdict {
            q,
            holds: w.is_none(),
            proved_case: proved.contains(&q),
            witness: w.map(|v| m.describe(&Element(v))),
        });
    }
    let broken: Vec<usize> = per_q
        .iter()
        .filter(|v| v.proved_case && !v.holds)
        .map(|v| v.q)
        .collect();
    let model_validation_failure = (!broken.is_empty())
        .then(|| format!("inclusion fails at unconditionally proved q = {broken:?}"));
    Ok(ConjectureReport {
        per_q,
        proved_cases_hold: broken.is_empty(),
        model_validation_failure,
    })
}

/// The four statements for a homogeneous `x ∈ K^p_q` with `p > 0`, `g - q > 0`:
/// (1) `p >= g - q`; (2) `γ^i_π(x) ∈ Fil^i_γ` for every `i` up to the series
/// order; (3) the same at `i = g - q`; (4) the same at `i = p + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub p: usize,
    pub q: usize,
    pub statements: [bool; 4],
    pub equivalent: bool,
}

pub fn check_lemma_equivalences(
    m: &ModelAlgebra,
    x: &Element,
    cfg: &FiltrationConfig,
) -> Result<LemmaReport> {
    let g = m.g();
    let b = m
        .homogeneous_bidegree(x)
        .ok_or_else(|| domain(format!("{} is not homogeneous", m.describe(x))))?;
    if b.p == 0 || b.q >= g {
        return Err(domain(format!("lemma needs p > 0 and g - q > 0, got {b}")));
    }
    let cfg = stage_config(cfg, b.p + 1);
    let gamma = saturate(m, FiltrationKind::Gamma, &cfg)?;
    let in_gamma = |i: usize| -> Result<bool> {
        let y = gamma_op(m, AdamsKind::Pi, i, x, cfg.order)?;
        gamma.stages[i].contains(&y.0)
    };
    let s1 = b.p >= g - b.q;
    let mut s2 = true;
    for i in 1..=cfg.n_max {
        s2 &= in_gamma(i)?;
    }
    let s3 = in_gamma(g - b.q)?;
    let s4 = in_gamma(b.p + 1)?;
    let statements = [s1, s2, s3, s4];
    Ok(LemmaReport {
        p: b.p,
        q: b.q,
        statements,
        equivalent: statements.iter().all(|&s| s == s1),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelComparison {
    pub by_intersection: usize,
    pub by_set_check: usize,
    pub agree: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kernel_basis: Vec<String>,
}

/// Verdicts for the statements about the composed structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposedReport {
    /// `K[i]·K[-j] = 0` for all `i, j > 0`.
    pub products_vanish: Outcome,
    /// `ε_Γ` is a λ-morphism of `K[0]`-algebras.
    pub augmentation_lambda: Outcome,
    /// `Fil^1_Γ ⊆ Fil^1_γ`.
    pub fil1: Outcome,
    /// `K[j] ⊆ Fil^r_Γ` whenever `j < 0` or `j >= r`.
    pub fil2: Outcome,
    /// `ker c̃_Γ = Fil^{g+1}_Γ`, computed two ways.
    pub kernel_c: Outcome,
    pub kernel: KernelComparison,
    /// `Fil^{g+1}_Γ = 0`.
    pub top_vanishes: Outcome,
    /// `K^r_g · K^s_n = 0` for `n >= 0`, `r >= n+1`, `s >= 0`.
    pub bloch: Outcome,
}

fn first_nonzero_pair(
    m: &ModelAlgebra,
    left: impl Fn(usize) -> bool,
    right: impl Fn(usize) -> bool,
) -> Option<(usize, usize)> {
    for i in (0..m.dim()).filter(|&i| left(i)) {
        for j in (0..m.dim()).filter(|&j| right(j)) {
            if !m.mul(&m.basis_element(i), &m.basis_element(j)).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn check_composed_structure(
    m: &ModelAlgebra,
    cfg: &FiltrationConfig,
) -> Result<ComposedReport> {
    let g = m.g();
    let cfg = stage_config(cfg, g + 2);
    let idx = |i: usize| m.bidegree(i).index(g);
    let kind = FiltrationKind::Composed;

    let products_vanish = match first_nonzero_pair(m, |i| idx(i) > 0, |j| idx(j) < 0) {
        None => Outcome::Pass,
        Some((i, j)) => Outcome::Fail {
            witness: format!("{}·{} != 0", m.label(i), m.label(j)),
        },
    };

    let big = saturate(m, kind, &cfg)?;
    let small = saturate(m, FiltrationKind::Gamma, &cfg)?;

    let augmentation_lambda = if products_vanish.is_pass() {
        augmentation_is_lambda_morphism(m, cfg.order)?
    } else {
        Outcome::skipped("hypothesis violated: K[i]·K[-j] != 0")
    };

    let fil1 = match big.stages[1].witness_outside(&small.stages[1])? {
        None => Outcome::Pass,
        Some(v) => Outcome::Fail {
            witness: format!("{} ∈ Fil^1_Γ outside Fil^1_γ", m.describe(&Element(v))),
        },
    };

    let mut fil2 = Outcome::Pass;
    'outer: for r in 1..=g + 1 {
        for i in 0..m.dim() {
            let j = idx(i);
            if (j < 0 || j >= r as i64) && !big.stages[r].contains(&m.basis_element(i).0)? {
                fil2 = Outcome::Fail {
                    witness: format!("{} ∈ K[{j}] is not in Fil^{r}_Γ", m.label(i)),
                };
                break 'outer;
            }
        }
    }

    let top = &big.stages[g + 1];
    let kernel = kernel_by_set_check(m, &big, cfg.order)?;
    let by_intersection = big.stages[1..=g + 1]
        .iter()
        .try_fold(Subspace::full(m.dim()), |acc, s| acc.intersect(s))?;
    let agree = by_intersection == kernel && &by_intersection == top;
    let comparison = KernelComparison {
        by_intersection: by_intersection.dim(),
        by_set_check: kernel.dim(),
        agree,
        kernel_basis: by_intersection
            .basis_vectors()
            .into_iter()
            .map(|v| m.describe(&Element(v)))
            .collect(),
    };
    let kernel_c = if agree {
        Outcome::Pass
    } else {
        Outcome::Fail {
            witness: format!(
                "∩ Fil^r_Γ has dim {}, set check gives dim {}",
                by_intersection.dim(),
                kernel.dim()
            ),
        }
    };
    let top_vanishes = if top.is_zero() {
        Outcome::Pass
    } else {
        Outcome::Fail {
            witness: format!(
                "Fil^{}_Γ contains {}",
                g + 1,
                m.describe(&Element(top.basis().row(0).to_vec()))
            ),
        }
    };

    let bloch = {
        let mut out = Outcome::Pass;
        'b: for i in (0..m.dim()).filter(|&i| m.bidegree(i).q == g) {
            for j in 0..m.dim() {
                let (r, n) = (m.bidegree(i).p, m.bidegree(j).q);
                if r > n && !m.mul(&m.basis_element(i), &m.basis_element(j)).is_zero() {
                    out = Outcome::Fail {
                        witness: format!(
                            "{} ∈ {} times {} ∈ {} is nonzero",
                            m.label(i),
                            m.bidegree(i),
                            m.label(j),
                            m.bidegree(j)
                        ),
                    };
                    break 'b;
                }
            }
        }
        out
    };

    Ok(ComposedReport {
        products_vanish,
        augmentation_lambda,
        fil1,
        fil2,
        kernel_c,
        kernel: comparison,
        top_vanishes,
        bloch,
    })
}

/// `ε_Γ(xy) = ε_Γ(x) ε_Γ(y)` on basis pairs and `ε_Γ γ^i = γ^i ε_Γ` on basis
/// vectors and their pairwise sums.
fn augmentation_is_lambda_morphism(m: &ModelAlgebra, order: usize) -> Result<Outcome> {
    let eps = |x: &Element| m.beauville_part(x, 0);
    for i in 0..m.dim() {
        for j in i..m.dim() {
            let (x, y) = (m.basis_element(i), m.basis_element(j));
            if eps(&m.mul(&x, &y)) != m.mul(&eps(&x), &eps(&y)) {
                return Ok(Outcome::Fail {
                    witness: format!("ε_Γ({0}·{1}) != ε_Γ({0})·ε_Γ({1})", m.label(i), m.label(j)),
                });
            }
        }
    }
    let mut samples: Vec<(String, Element)> = (0..m.dim())
        .map(|i| (m.label(i).to_string(), m.basis_element(i)))
        .collect();
    for i in 0..m.dim() {
        for j in i + 1..m.dim() {
            samples.push((
                format!("{}+{}", m.label(i), m.label(j)),
                &m.basis_element(i) + &m.basis_element(j),
            ));
        }
    }
    let order = order.min(m.g() + 1);
    for (name, x) in samples {
        let lhs = crate::lambda::gamma_series(m, AdamsKind::Composed, &x, order);
        let rhs = crate::lambda::gamma_series(m, AdamsKind::Composed, &eps(&x), order);
        for n in 1..=order {
            if eps(lhs.coeff(n)) != *rhs.coeff(n) {
                return Ok(Outcome::Fail {
                    witness: format!("ε_Γ(γ^{n}({name})) != γ^{n}(ε_Γ({name}))"),
                });
            }
        }
    }
    Ok(Outcome::Pass)
}

/// Span of the candidates `x` with `ε_Γ(x) = 0` and `γ^i_Γ(x) ∈ Fil^{i+1}_Γ`
/// for `1 <= i <= g`. Candidates: the kernel basis, its pairwise sums and
/// a basis of `Fil^{g+1}_Γ`.
fn kernel_by_set_check(m: &ModelAlgebra, big: &FiltrationResult, order: usize) -> Result<Subspace> {
    let g = m.g();
    let ker = FiltrationKind::Composed.kernel(m).basis_vectors();
    let mut candidates: Vec<Element> = ker.iter().cloned().map(Element).collect();
    for i in 0..ker.len() {
        for j in i + 1..ker.len() {
            candidates.push(&candidates[i] + &candidates[j]);
        }
    }
    candidates.extend(big.stages[g + 1].basis_vectors().into_iter().map(Element));
    let mut passing = Vec::new();
    for x in candidates {
        if !m.beauville_part(&x, 0).is_zero() {
            continue;
        }
        let mut ok = true;
        for i in 1..=g {
            let y = gamma_op(m, AdamsKind::Composed, i, &x, order)?;
            if !big.stages[i + 1].contains(&y.0)? {
                ok = false;
                break;
            }
        }
        if ok {
            passing.push(x);
        }
    }
    Subspace::span(m.dim(), &passing)
}
