//! The γ-, ⋆-, π- and Γ-filtrations as exact subspaces.
//!
//! `Fil^n` is spanned by the products `γ^{i_1}(x_1) ⋯ γ^{i_k}(x_k)` with
//! `Σ i_t >= n` and every `x_t` in the augmentation kernel, closed under
//! multiplication by the augmentation subring.

mod checks;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exact::{Rational, Subspace};
use crate::lambda::{gamma_series, AdamsKind};
use crate::model::{Element, ModelAlgebra, ProductKind};
use crate::par::Exec;

pub use checks::{
    check_composed_structure, check_lemma_equivalences, check_pi_subset_gamma, ComposedReport,
    ConjectureReport, KernelComparison, LemmaReport, QVerdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FiltrationKind {
    #[serde(rename = "gamma")]
    Gamma,
    #[serde(rename = "star")]
    Star,
    #[serde(rename = "pi")]
    Pi,
    /// The composed structure, augmented over `K[0]`.
    #[serde(rename = "Gamma")]
    Composed,
}

impl FiltrationKind {
    pub const ALL: [FiltrationKind; 4] = [
        FiltrationKind::Gamma,
        FiltrationKind::Star,
        FiltrationKind::Pi,
        FiltrationKind::Composed,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FiltrationKind::Gamma => "gamma",
            FiltrationKind::Star => "star",
            FiltrationKind::Pi => "pi",
            FiltrationKind::Composed => "Gamma",
        }
    }

    pub fn adams(&self) -> AdamsKind {
        match self {
            FiltrationKind::Gamma => AdamsKind::Usual,
            FiltrationKind::Star => AdamsKind::Star,
            FiltrationKind::Pi => AdamsKind::Pi,
            FiltrationKind::Composed => AdamsKind::Composed,
        }
    }

    pub fn product(&self) -> ProductKind {
        self.adams().product()
    }

    /// Basis indices spanning the augmentation target.
    ///
    /// `rk` lands on `ℚ·1`, `χ` on `ℚ·[0_A]`, `ε_π` on `K_(g) = ⊕_p K^p_g`
    /// and `ε_Γ` on `K[0]`; all four are coordinate projections.
    pub fn target_indices(&self, m: &ModelAlgebra) -> Vec<usize> {
        let g = m.g();
        match self {
            FiltrationKind::Gamma => vec![m.unit_index()],
            FiltrationKind::Star => vec![m.star_unit_index()],
            FiltrationKind::Pi => m.indices_where(|b| b.q == g),
            FiltrationKind::Composed => m.indices_where(|b| b.index(g) == 0),
        }
    }

    pub fn augmentation(&self, m: &ModelAlgebra, x: &Element) -> Element {
        let keep = self.target_indices(m);
        let mut out = m.zero();
        for i in keep {
            out.0[i] = x.0[i].clone();
        }
        out
    }

    pub fn kernel(&self, m: &ModelAlgebra) -> Subspace {
        let keep = self.target_indices(m);
        Subspace::coordinate(m.dim(), (0..m.dim()).filter(|i| !keep.contains(i)))
    }

    pub fn subring_basis(&self, m: &ModelAlgebra) -> Vec<Element> {
        self.target_indices(m)
            .into_iter()
            .map(|i| m.basis_element(i))
            .collect()
    }

    /// Eigen-weight whose `n^w` the kind's Adams operations multiply by.
    pub fn weight(&self, m: &ModelAlgebra, i: usize) -> i64 {
        self.adams().exponent(m.bidegree(i), m.g())
    }
}

impl fmt::Display for FiltrationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FiltrationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(FiltrationKind::Gamma),
            "star" => Ok(FiltrationKind::Star),
            "pi" => Ok(FiltrationKind::Pi),
            "Gamma" | "composed" => Ok(FiltrationKind::Composed),
            _ => Err(domain(format!("unknown filtration kind `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Saturation,
    EigenSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiltrationConfig {
    /// Highest stage computed.
    pub n_max: usize,
    /// Truncation order of the γ-series; must be at least `n_max`.
    pub order: usize,
    pub seed: u64,
    pub max_rounds: usize,
    pub exec: Exec,
}

impl FiltrationConfig {
    /// Stages through `g + 2`, series order `g + 4`.
    pub fn for_model(m: &ModelAlgebra) -> Self {
        let g = m.g();
        FiltrationConfig {
            n_max: g + 2,
            order: g + 4,
            seed: 0,
            max_rounds: 8,
            exec: Exec::default(),
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceRound {
    pub round: usize,
    pub enrichment_size: usize,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationResult {
    pub kind: FiltrationKind,
    pub method: Method,
    /// `Fil^0 ⊇ Fil^1 ⊇ … ⊇ Fil^{n_max}`.
    pub stages: Vec<Subspace>,
    pub log: Vec<ConvergenceRound>,
}

impl FiltrationResult {
    pub fn dims(&self) -> Vec<usize> {
        self.stages.iter().map(Subspace::dim).collect()
    }

    pub fn stage(&self, n: usize) -> Option<&Subspace> {
        self.stages.get(n)
    }

    pub fn n_max(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn is_decreasing(&self) -> bool {
        self.stages
            .windows(2)
            .all(|w| w[1].is_subspace_of(&w[0]).unwrap_or(false))
    }
}

pub fn compute_filtration(
    m: &ModelAlgebra,
    kind: FiltrationKind,
    cfg: &FiltrationConfig,
    method: Method,
) -> Result<FiltrationResult> {
    if cfg.order < cfg.n_max {
        return Err(Error::Config(format!(
            "series order {} is below the highest stage {}",
            cfg.order, cfg.n_max
        )));
    }
    match method {
        Method::EigenSum => Ok(eigen_sum(m, kind, cfg.n_max)),
        Method::Saturation => Saturation::new(m, kind, cfg).run(),
    }
}

fn eigen_sum(m: &ModelAlgebra, kind: FiltrationKind, n_max: usize) -> FiltrationResult {
    let d = m.dim();
    let stages = (0..=n_max)
        .map(|n| {
            if n == 0 {
                Subspace::full(d)
            } else {
                Subspace::coordinate(d, (0..d).filter(|&i| kind.weight(m, i) >= n as i64))
            }
        })
        .collect();
    FiltrationResult {
        kind,
        method: Method::EigenSum,
        stages,
        log: Vec::new(),
    }
}

struct Saturation<'a> {
    m: &'a ModelAlgebra,
    kind: FiltrationKind,
    cfg: &'a FiltrationConfig,
    kernel: Vec<Element>,
    subring: Vec<Element>,
    /// `generators[i]` spans `γ^i(x)` over every enrichment element seen.
    generators: Vec<Subspace>,
    seen: usize,
}

impl<'a> Saturation<'a> {
    fn new(m: &'a ModelAlgebra, kind: FiltrationKind, cfg: &'a FiltrationConfig) -> Self {
        let kernel = kind
            .kernel(m)
            .basis_vectors()
            .into_iter()
            .map(Element)
            .collect();
        Saturation {
            m,
            kind,
            cfg,
            kernel,
            subring: kind.subring_basis(m),
            generators: vec![Subspace::zero(m.dim()); cfg.order + 1],
            seen: 0,
        }
    }

    fn absorb(&mut self, xs: &[Element]) {
        let (m, kind, order) = (self.m, self.kind.adams(), self.cfg.order);
        let series = self.cfg.exec.map(xs, |x| gamma_series(m, kind, x, order));
        for s in series {
            for i in 1..=order {
                let c = s.coeff(i);
                if !c.is_zero() {
                    self.generators[i] = self.generators[i]
                        .add_vectors(&[c])
                        .expect("ambient dimensions agree");
                }
            }
        }
        self.seen += xs.len();
    }

    fn products(&self, a: &Subspace, b: &Subspace) -> Vec<Element> {
        let pk = self.kind.product();
        let av = a.basis_vectors();
        let bv = b.basis_vectors();
        let mut out = Vec::with_capacity(av.len() * bv.len());
        for x in &av {
            for y in &bv {
                let p = self.m.product(pk, &Element(x.clone()), &Element(y.clone()));
                if !p.is_zero() {
                    out.push(p);
                }
            }
        }
        out
    }

    fn close_under_subring(&self, s: Subspace) -> Subspace {
        let r = Subspace::span(self.m.dim(), &self.subring).expect("subring basis in ambient");
        let extra = self.products(&s, &r);
        s.add_vectors(&extra).expect("ambient dimensions agree")
    }

    fn stages(&self) -> Vec<Subspace> {
        let d = self.m.dim();
        let n_max = self.cfg.n_max;
        let order = self.cfg.order;
        let g = &self.generators;

        // Fil^1: the subalgebra generated by every γ^i(x), closed under the subring.
        let mut f1 = Subspace::zero(d);
        for gi in g.iter().skip(1) {
            f1 = f1.sum(gi).expect("same ambient");
        }
        loop {
            let prods = self.products(&f1, &f1);
            let next = self.close_under_subring(f1.add_vectors(&prods).expect("same ambient"));
            if next == f1 {
                break;
            }
            f1 = next;
        }

        let mut stages = vec![Subspace::full(d), f1.clone()];
        let unit =
            Subspace::span(d, &[self.m.unit_of(self.kind.product())]).expect("unit in ambient");
        let f1_plus_unit = f1.sum(&unit).expect("same ambient");
        for n in 2..=n_max {
            let mut acc = Subspace::zero(d);
            // leading factor of weight a < n, the rest of weight >= n - a
            for a in 1..n {
                acc = acc
                    .add_vectors(&self.products(&g[a], &stages[n - a]))
                    .expect("same ambient");
            }
            // leading factor of weight >= n times anything
            for gi in g.iter().take(order + 1).skip(n) {
                acc = acc
                    .add_vectors(&self.products(gi, &f1_plus_unit))
                    .expect("same ambient");
            }
            stages.push(self.close_under_subring(acc));
        }
        stages
    }

    fn random_combinations(&self, rng: &mut ChaCha8Rng, count: usize) -> Vec<Element> {
        (0..count)
            .map(|_| {
                let mut x = self.m.zero();
                for b in &self.kernel {
                    let num: i64 = rng.random_range(-5..=5);
                    let den: i64 = rng.random_range(1..=3);
                    x.add_scaled(b, &Rational::new(num.into(), den.into()));
                }
                x
            })
            .collect()
    }

    fn run(mut self) -> Result<FiltrationResult> {
        let mut initial = self.kernel.clone();
        for i in 0..self.kernel.len() {
            for j in i + 1..self.kernel.len() {
                initial.push(&self.kernel[i] + &self.kernel[j]);
            }
        }
        self.absorb(&initial);
        let mut stages = self.stages();
        let mut log = vec![ConvergenceRound {
            round: 0,
            enrichment_size: self.seen,
            dims: stages.iter().map(Subspace::dim).collect(),
        }];
        if self.kernel.is_empty() {
            return Ok(self.finish(stages, log));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        let per_round = 2 * self.kernel.len();
        let mut quiet = 0;
        for round in 1..=self.cfg.max_rounds {
            let extra = self.random_combinations(&mut rng, per_round);
            self.absorb(&extra);
            let next = self.stages();
            let dims: Vec<usize> = next.iter().map(Subspace::dim).collect();
            let changed = next != stages;
            log.push(ConvergenceRound {
                round,
                enrichment_size: self.seen,
                dims,
            });
            stages = next;
            quiet = if changed { 0 } else { quiet + 1 };
            if quiet >= 2 {
                return Ok(self.finish(stages, log));
            }
        }
        let n = log.len();
        Err(Error::NonConvergence {
            rounds: self.cfg.max_rounds,
            last: log[n - 1].dims.clone(),
            previous: log[n - 2].dims.clone(),
        })
    }

    fn finish(&self, stages: Vec<Subspace>, log: Vec<ConvergenceRound>) -> FiltrationResult {
        FiltrationResult {
            kind: self.kind,
            method: Method::Saturation,
            stages,
            log,
        }
    }
}
