use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::{FiltrationKind, FiltrationResult};
use crate::model::{Element, ModelAlgebra};

use super::{gamma_op, AdamsKind};

/// `c^i_Γ(x) = γ^i_Γ(x - ε_Γ(x))` modulo `Fil^{i+1}_Γ`, as the canonical
/// representative that vanishes on the pivot columns of the stage.
pub fn chern_gamma(
    m: &ModelAlgebra,
    fil: &FiltrationResult,
    i: usize,
    x: &Element,
    order: usize,
) -> Result<Element> {
    if fil.kind != FiltrationKind::Composed {
        return Err(Error::Config(format!(
            "Chern classes need the Γ-filtration, got {}",
            fil.kind
        )));
    }
    let stage = fil.stage(i + 1).ok_or_else(|| {
        Error::Config(format!(
            "Fil^{} not computed (n_max = {})",
            i + 1,
            fil.n_max()
        ))
    })?;
    let y = x - &m.beauville_part(x, 0);
    let c = gamma_op(m, AdamsKind::Composed, i, &y, order)?;
    Ok(Element(stage.reduce(&c.0)?))
}

/// `c̃_Γ(x) = (ε_Γ(x), 1 + c^1_Γ(x) + … + c^g_Γ(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompleteChern {
    pub augmentation: Vec<String>,
    pub classes: Vec<Vec<String>>,
    pub trivial: bool,
}

pub fn complete_chern(
    m: &ModelAlgebra,
    fil: &FiltrationResult,
    x: &Element,
    order: usize,
) -> Result<CompleteChern> {
    let eps = m.beauville_part(x, 0);
    let classes = (1..=m.g())
        .map(|i| chern_gamma(m, fil, i, x, order))
        .collect::<Result<Vec<_>>>()?;
    let trivial = eps.is_zero() && classes.iter().all(Element::is_zero);
    let show = |e: &Element| {
        e.0.iter()
            .map(crate::exact::rational::format_rational)
            .collect()
    };
    Ok(CompleteChern {
        augmentation: show(&eps),
        classes: classes.iter().map(show).collect(),
        trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::{compute_filtration, FiltrationConfig, Method};
    use crate::model::{antisym_model, pathological_model, theta_model};

    fn big_gamma(m: &ModelAlgebra) -> (FiltrationResult, usize) {
        let cfg = FiltrationConfig::for_model(m);
        let fil =
            compute_filtration(m, FiltrationKind::Composed, &cfg, Method::Saturation).unwrap();
        (fil, cfg.order)
    }

    #[test]
    fn degree_zero_classes_have_no_chern_classes() {
        let m = theta_model(3);
        let (fil, order) = big_gamma(&m);
        let x = &m.basis_element(1) + &m.basis_element(3);
        for i in 1..=3 {
            assert!(chern_gamma(&m, &fil, i, &x, order).unwrap().is_zero());
        }
    }

    #[test]
    fn negative_index_class_is_invisible() {
        let m = pathological_model(2);
        let (fil, order) = big_gamma(&m);
        let v = m.element_by_label("v").unwrap();
        assert!(complete_chern(&m, &fil, &v, order).unwrap().trivial);
    }

    #[test]
    fn antisymmetric_class_survives() {
        let m = antisym_model(2);
        let (fil, order) = big_gamma(&m);
        let a = m.element_by_label("a").unwrap();
        let c1 = chern_gamma(&m, &fil, 1, &a, order).unwrap();
        assert!(!c1.is_zero());
        assert_eq!(Element(fil.stages[2].reduce(&a.0).unwrap()), c1);
    }
}
