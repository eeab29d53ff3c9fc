//! Named checks grouped the way the command line runs them.
//!
//! Identifiers are stable so reports can be diffed across versions.

use crate::check::{Check, Outcome};
use crate::error::Result;
use crate::filtration::{
    check_composed_structure, check_lemma_equivalences, check_pi_subset_gamma, compute_filtration,
    FiltrationConfig, FiltrationKind, Method,
};
use crate::io::SuiteEntry;
use crate::lambda::{adams_operator, gamma_series, AdamsKind};
use crate::model::{validate, Element, ModelAlgebra};
use crate::operators::{
    augmentation_projector_check, compare_operators, euler_rank_check, exchange_law_check,
    fm_composite_check, fm_multiplicative_check, fm_square_check, pushforward_identity_check,
    pushforward_invertible, pushforward_relation, pushforward_relation_check, pushforward_star_hom,
    semigroup_check,
};
use crate::series::series_mul;

/// `ψ^n ψ^k = ψ^{nk}` for one family.
pub fn adams_semigroup_check(m: &ModelAlgebra, kind: AdamsKind, n: i64, k: i64) -> Result<Check> {
    let lhs = adams_operator(m, kind, n)?.matrix() * adams_operator(m, kind, k)?.matrix();
    let rhs = adams_operator(m, kind, n * k)?;
    Ok(compare_operators(
        m,
        &format!("{kind}: ψ^{n}ψ^{k}"),
        &lhs,
        rhs.matrix(),
    ))
}

/// `ψ^n` is multiplicative for the family's product, fixes its unit, and
/// preserves the augmentation of the matching filtration.
pub fn adams_ring_hom_check(m: &ModelAlgebra, kind: AdamsKind, n: i64) -> Result<Check> {
    let op = adams_operator(m, kind, n)?;
    let pk = kind.product();
    for i in 0..m.dim() {
        for j in i..m.dim() {
            let (x, y) = (m.basis_element(i), m.basis_element(j));
            if op.apply(&m.product(pk, &x, &y)) != m.product(pk, &op.apply(&x), &op.apply(&y)) {
                return Ok(Check::fail(format!(
                    "{kind}: ψ^{n} not multiplicative on {}, {}",
                    m.label(i),
                    m.label(j)
                )));
            }
        }
    }
    let unit = m.unit_of(pk);
    if op.apply(&unit) != unit {
        return Ok(Check::fail(format!("{kind}: ψ^{n} moves the unit")));
    }
    let aug = match kind {
        AdamsKind::Usual => Some(FiltrationKind::Gamma),
        AdamsKind::Star => Some(FiltrationKind::Star),
        AdamsKind::Pi => Some(FiltrationKind::Pi),
        AdamsKind::Composed => Some(FiltrationKind::Composed),
        AdamsKind::PiStar => None,
    };
    let aug = aug
        .map(|f| f.target_indices(m))
        .unwrap_or_else(|| m.indices_where(|b| b.q == m.g()));
    for i in aug {
        let x = m.basis_element(i);
        if op.apply(&x) != x {
            return Ok(Check::fail(format!(
                "{kind}: ψ^{n} does not fix the augmentation target {}",
                m.label(i)
            )));
        }
    }
    Ok(Check::pass())
}

/// `γ_t(x + y) = γ_t(x) γ_t(y)` through `t^order` on all basis pairs.
pub fn gamma_addition_check(m: &ModelAlgebra, kind: AdamsKind, order: usize) -> Check {
    let ring = m.ring(kind.product());
    let series: Vec<_> = (0..m.dim())
        .map(|i| gamma_series(m, kind, &m.basis_element(i), order))
        .collect();
    for i in 0..m.dim() {
        for j in i..m.dim() {
            let sum = &m.basis_element(i) + &m.basis_element(j);
            if gamma_series(m, kind, &sum, order) != series_mul(&ring, &series[i], &series[j]) {
                return Check::fail(format!(
                    "{kind}: γ_t({0}+{1}) != γ_t({0})γ_t({1})",
                    m.label(i),
                    m.label(j)
                ));
            }
        }
    }
    Check::pass()
}

/// `Fil^n = 0` for every computed `n >= from`, by saturation.
pub fn filtration_vanishing_check(
    m: &ModelAlgebra,
    kind: FiltrationKind,
    from: usize,
    cfg: &FiltrationConfig,
) -> Result<Check> {
    let cfg = FiltrationConfig {
        n_max: cfg.n_max.max(from + 1),
        order: cfg.order.max(from + 1),
        ..*cfg
    };
    let fil = compute_filtration(m, kind, &cfg, Method::Saturation)?;
    for n in from..=fil.n_max() {
        let s = &fil.stages[n];
        if !s.is_zero() {
            let v = Element(s.basis().row(0).to_vec());
            return Ok(Check::fail(format!(
                "Fil^{n}_{kind} contains {}",
                m.describe(&v)
            )));
        }
    }
    Ok(Check::pass())
}

fn first_failure(checks: impl IntoIterator<Item = Result<Check>>) -> Result<Check> {
    let mut all = Vec::new();
    for c in checks {
        all.push(c?);
    }
    Ok(Check::all(all))
}

/// Structural and operator identities; every admissible model passes.
pub fn identity_suite(m: &ModelAlgebra, order: usize) -> Result<Vec<SuiteEntry>> {
    let range = || -2i64..=2;
    let report = validate(m);
    let admissible = Check::from_bool(report.is_ok(), || {
        report
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    });

    let composite = Check::all(
        range()
            .flat_map(|a| range().map(move |b| (a, b)))
            .map(|(a, b)| fm_composite_check(m, a, b)),
    );
    let beauville = Check::all(
        (-3i64..=3)
            .flat_map(|k| {
                let mut cs = vec![exchange_law_check(m, k), pushforward_star_hom(m, k)];
                if k != 0 {
                    cs.push(pushforward_invertible(m, k));
                }
                cs.extend((-3i64..=3).map(|l| semigroup_check(m, k, l)));
                cs
            })
            .chain([augmentation_projector_check(m)]),
    );
    let mut relations = Vec::new();
    for k in -3i64..=3 {
        relations.push(pushforward_relation_check(
            m,
            &pushforward_relation(k, m.g())?,
        ));
    }

    let semigroup = first_failure(AdamsKind::ALL.into_iter().flat_map(|kind| {
        (1..=6).flat_map(move |n| (1..=6).map(move |k| adams_semigroup_check(m, kind, n, k)))
    }))?;
    let homs = first_failure(
        AdamsKind::ALL
            .into_iter()
            .flat_map(|kind| (1..=4).map(move |n| adams_ring_hom_check(m, kind, n))),
    )?;
    let addition = Check::all(AdamsKind::ALL.map(|kind| gamma_addition_check(m, kind, order)));

    Ok(vec![
        SuiteEntry::new(
            "model-admissible",
            "structure constants and fm satisfy the model axioms",
            admissible,
        ),
        SuiteEntry::new(
            "thm-fm-iso/square",
            "fm∘fm = (-1)^g (-1)^*",
            fm_square_check(m),
        ),
        SuiteEntry::new(
            "thm-fm-iso/star-multiplicative",
            "fm(x⋆y) = fm(x)·fm(y)",
            fm_multiplicative_check(m),
        ),
        SuiteEntry::new(
            "thm-fm-iso/euler-rank",
            "χ(x) = rk(fm(x))",
            euler_rank_check(m),
        ),
        SuiteEntry::new(
            "prop-F_qmF_pn",
            "F_q^m ∘ F_p^n = (-1)^g (-m)^* n_* for m, n in -2..2",
            composite,
        ),
        SuiteEntry::new(
            "lem-beauville-1986-prop-1",
            "eigenvalues of k^*, k_* and their exchange under fm",
            beauville,
        ),
        SuiteEntry::new(
            "m_-independence/identity",
            "Σ (-1)^m C(2g+1,m+1) (-m)_* = id",
            pushforward_identity_check(m),
        ),
        SuiteEntry::new(
            "m_-independence/relation",
            "k_* is a combination of 0_*, …, (2g)_* for k in -3..3",
            Check::all(relations),
        ),
        SuiteEntry::new(
            "prop-omega_n/semigroup",
            "ψ^n ψ^k = ψ^{nk} for every family, n, k <= 6",
            semigroup,
        ),
        SuiteEntry::new(
            "prop-omega_n/ring-hom",
            "ψ^n are ring maps fixing unit and augmentation",
            homs,
        ),
        SuiteEntry::new(
            "eq-gamma/addition",
            "γ_t(x+y) = γ_t(x) γ_t(y) through the series order",
            addition,
        ),
    ])
}

/// Filtration statements and the conjecture checkers.
pub fn conjecture_suite(m: &ModelAlgebra, cfg: &FiltrationConfig) -> Result<Vec<SuiteEntry>> {
    let g = m.g();
    let star = filtration_vanishing_check(m, FiltrationKind::Star, g + 1, cfg)?;
    let pi = filtration_vanishing_check(m, FiltrationKind::Pi, g + 1, cfg)?;

    let conj = check_pi_subset_gamma(m, g + 1, cfg)?;
    let conj_outcome = match conj.per_q.iter().find(|v| !v.holds) {
        None => Outcome::Pass,
        Some(v) => {
            let mut witness = format!(
                "fails at q = {:?}; first witness {} ∈ Fil^{}_π \\ Fil^{}_γ",
                conj.failing_q(),
                v.witness.clone().unwrap_or_default(),
                v.q,
                v.q
            );
            if let Some(note) = &conj.model_validation_failure {
                witness.push_str(&format!("; {note}"));
            }
            Outcome::Fail { witness }
        }
    };

    let mut lemma = Outcome::Pass;
    let mut applicable = 0;
    for i in 0..m.dim() {
        let b = m.bidegree(i);
        if b.p == 0 || b.q >= g {
            continue;
        }
        applicable += 1;
        let r = check_lemma_equivalences(m, &m.basis_element(i), cfg)?;
        if !r.equivalent {
            lemma = Outcome::Fail {
                witness: format!("{} ∈ {b}: statements {:?}", m.label(i), r.statements),
            };
            break;
        }
    }
    if applicable == 0 {
        lemma = Outcome::skipped("no basis vector with p > 0 and q < g");
    }

    let c = check_composed_structure(m, cfg)?;
    Ok(vec![
        SuiteEntry::new("cor-star-vanishing", "Fil^n_⋆ = 0 for n >= g+1", star),
        SuiteEntry::new("lem-pi-vanishing", "Fil^n_π = 0 for n > g", pi),
        SuiteEntry::new(
            "conj-pi-subset-gamma",
            "Fil^q_π ⊆ Fil^q_γ for 0 <= q <= g+1",
            conj_outcome,
        ),
        SuiteEntry::new(
            "lem-conjecture",
            "the four conditions on γ^i_π(x) agree on homogeneous x",
            lemma,
        ),
        SuiteEntry::new(
            "conjecture-2",
            "K[i]·K[-j] = 0 for i, j > 0",
            c.products_vanish,
        ),
        SuiteEntry::new(
            "prop-kernel-c/augmentation",
            "ε_Γ is a λ-morphism",
            c.augmentation_lambda,
        ),
        SuiteEntry::new("lem-Fil1", "Fil^1_Γ ⊆ Fil^1_γ", c.fil1),
        SuiteEntry::new("lem-Fil2", "K[j] ⊆ Fil^r_Γ for j < 0 or j >= r", c.fil2),
        SuiteEntry::new("prop-kernel-c", "ker c̃_Γ = Fil^{g+1}_Γ", c.kernel_c),
        SuiteEntry::new("conjecture-3", "Fil^{g+1}_Γ = 0", c.top_vanishes),
        SuiteEntry::new("conj-bloch", "K^r_g·K^s_n = 0 for r >= n+1", c.bloch),
    ])
}
