//! Finite-dimensional bigraded models of `K_0(A) ⊗ Q`.
//!
//! A model is a commutative `Q`-algebra with a basis of bigraded vectors.
//! A basis vector of bidegree `(p, q)` lies in the simultaneous eigenspace
//! where the usual Adams operations act by `n^p` and the Pontryagin ones
//! by `n^q`. The Fourier-Mukai operator is stored as an explicit matrix and
//! the Pontryagin product is derived from it by conjugation.

mod builders;
mod element;
mod validate;

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use builders::{antisym_model, pathological_model, theta_model, violator_model, Builder};
pub use element::Element;
pub use validate::{validate, ValidationReport, Violation};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational};
use crate::series::CoeffRing;

/// Bidegree `(p, q)` of a Beauville component `K^p_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: usize,
    pub q: usize,
}

impl Bidegree {
    pub fn new(p: usize, q: usize) -> Self {
        Bidegree { p, q }
    }

    /// Beauville index `j = p + q - g`.
    pub fn index(&self, g: usize) -> i64 {
        self.p as i64 + self.q as i64 - g as i64
    }

    pub fn swapped(&self) -> Bidegree {
        Bidegree {
            p: self.q,
            q: self.p,
        }
    }

    /// Where the usual product of `K^a_b` and `K^c_d` lands, if anywhere.
    pub fn product(&self, other: &Bidegree, g: usize) -> Option<Bidegree> {
        let p = self.p + other.p;
        let q = (self.q + other.q).checked_sub(g)?;
        (p <= g).then_some(Bidegree { p, q })
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K^{}_{}", self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisVector {
    pub label: String,
    pub bidegree: Bidegree,
}

/// Which of the two commutative products a computation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProductKind {
    /// Tensor product of bundles; unit `1`.
    Usual,
    /// Pontryagin product; unit `[0_A]`.
    Star,
}

type SparseTable = Vec<Vec<(usize, Rational)>>;

/// The model algebra. Immutable once built.
#[derive(Clone)]
pub struct ModelAlgebra {
    g: usize,
    basis: Vec<BasisVector>,
    mul: SparseTable,
    fm: Matrix,
    unit: usize,
    star_unit: usize,
    fm_inv: OnceLock<Option<Matrix>>,
    star: OnceLock<Option<SparseTable>>,
}

impl PartialEq for ModelAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g
            && self.basis == other.basis
            && self.mul == other.mul
            && self.fm == other.fm
            && self.unit == other.unit
            && self.star_unit == other.star_unit
    }
}

impl fmt::Debug for ModelAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModelAlgebra")
            .field("g", &self.g)
            .field("basis", &self.basis)
            .field("unit", &self.unit)
            .field("star_unit", &self.star_unit)
            .finish_non_exhaustive()
    }
}

impl ModelAlgebra {
    /// Assembles a model from structure constants `(i, j, k, c)` meaning
    /// `b_i * b_j` has coefficient `c` on `b_k`. Repeated `(i, j, k)` entries
    /// are summed. Only shape errors are reported here; algebraic invariants
    /// are checked by [`validate`].
    pub fn new(
        g: usize,
        basis: Vec<BasisVector>,
        mul: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
        fm: Matrix,
        unit: usize,
        star_unit: usize,
    ) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidModel("g must be at least 1".into()));
        }
        let d = basis.len();
        for b in &basis {
            if b.bidegree.p > g || b.bidegree.q > g {
                return Err(Error::InvalidModel(format!(
                    "basis vector `{}` has bidegree {} outside 0..={g}",
                    b.label, b.bidegree
                )));
            }
        }
        if unit >= d || star_unit >= d {
            return Err(Error::InvalidModel("unit index out of range".into()));
        }
        if fm.rows() != d || fm.cols() != d {
            return Err(Error::InvalidModel(format!(
                "fm is {}x{}, expected {d}x{d}",
                fm.rows(),
                fm.cols()
            )));
        }
        let mut table: SparseTable = vec![Vec::new(); d * d];
        for (i, j, k, c) in mul {
            if i >= d || j >= d || k >= d {
                return Err(Error::InvalidModel(format!(
                    "structure constant ({i}, {j}, {k}) out of range"
                )));
            }
            let slot = &mut table[i * d + j];
            match slot.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, existing)) => *existing += c,
                None => slot.push((k, c)),
            }
        }
        for slot in &mut table {
            slot.retain(|(_, c)| !c.is_zero());
            slot.sort_by_key(|(k, _)| *k);
        }
        Ok(ModelAlgebra {
            g,
            basis,
            mul: table,
            fm,
            unit,
            star_unit,
            fm_inv: OnceLock::new(),
            star: OnceLock::new(),
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn bidegree(&self, i: usize) -> Bidegree {
        self.basis[i].bidegree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn star_unit_index(&self) -> usize {
        self.star_unit
    }

    pub fn fm(&self) -> &Matrix {
        &self.fm
    }

    pub fn fm_inverse(&self) -> Option<&Matrix> {
        self.fm_inv.get_or_init(|| self.fm.inverse()).as_ref()
    }

    /// Nonzero structure constants `(i, j, k, c)` in lexicographic order.
    pub fn mul_entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in &self.mul[i * d + j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    /// `b_i * b_j` as a sparse list.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.mul[i * self.dim() + j]
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.dim())
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::unit_vector(self.dim(), i)
    }

    pub fn element_by_label(&self, label: &str) -> Option<Element> {
        self.index_of(label).map(|i| self.basis_element(i))
    }

    /// The unit `1` of the usual product.
    pub fn one(&self) -> Element {
        self.basis_element(self.unit)
    }

    /// The class `[0_A]`, unit of the Pontryagin product.
    pub fn origin(&self) -> Element {
        self.basis_element(self.star_unit)
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        Ok(Element(coords))
    }

    fn product_with(&self, table: &SparseTable, x: &Element, y: &Element) -> Element {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        let ys: Vec<usize> = (0..d).filter(|&j| !y.0[j].is_zero()).collect();
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &j in &ys {
                let entries = &table[i * d + j];
                if entries.is_empty() {
                    continue;
                }
                let xy = xi * &y.0[j];
                for (k, c) in entries {
                    out[*k] += &xy * c;
                }
            }
        }
        Element(out)
    }

    /// Usual product.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        self.product_with(&self.mul, x, y)
    }

    fn star_table(&self) -> Option<&SparseTable> {
        self.star
            .get_or_init(|| {
                let inv = self.fm_inverse()?.clone();
                let d = self.dim();
                let images: Vec<Element> = (0..d)
                    .map(|i| self.apply_fm(&self.basis_element(i)))
                    .collect();
                let mut table = vec![Vec::new(); d * d];
                for i in 0..d {
                    for j in 0..d {
                        let prod = self.mul(&images[i], &images[j]);
                        let back = inv.apply(&prod.0);
                        table[i * d + j] = back
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect();
                    }
                }
                Some(table)
            })
            .as_ref()
    }

    /// Pontryagin product `x ⋆ y = fm⁻¹(fm(x) · fm(y))`.
    ///
    /// # Panics
    ///
    /// If the Fourier-Mukai matrix is singular. [`validate`] reports that case.
    pub fn star(&self, x: &Element, y: &Element) -> Element {
        let table = self
            .star_table()
            .expect("Pontryagin product needs an invertible Fourier-Mukai matrix");
        self.product_with(table, x, y)
    }

    /// The same product computed literally by conjugation, without the cached table.
    pub fn star_by_conjugation(&self, x: &Element, y: &Element) -> Option<Element> {
        let inv = self.fm_inverse()?;
        let prod = self.mul(&self.apply_fm(x), &self.apply_fm(y));
        Some(Element(inv.apply(&prod.0)))
    }

    pub fn product(&self, kind: ProductKind, x: &Element, y: &Element) -> Element {
        match kind {
            ProductKind::Usual => self.mul(x, y),
            ProductKind::Star => self.star(x, y),
        }
    }

    pub fn unit_of(&self, kind: ProductKind) -> Element {
        match kind {
            ProductKind::Usual => self.one(),
            ProductKind::Star => self.origin(),
        }
    }

    pub fn power(&self, x: &Element, n: usize) -> Element {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn apply_fm(&self, x: &Element) -> Element {
        Element(self.fm.apply(&x.0))
    }

    pub fn apply_fm_inverse(&self, x: &Element) -> Option<Element> {
        Some(Element(self.fm_inverse()?.apply(&x.0)))
    }

    /// Rank: coefficient on the unit line `K^0_g`.
    pub fn rank(&self, x: &Element) -> Rational {
        x.0[self.unit].clone()
    }

    /// Euler characteristic: coefficient on the `[0_A]` line `K^g_0`.
    pub fn euler_char(&self, x: &Element) -> Rational {
        x.0[self.star_unit].clone()
    }

    pub fn indices_where(&self, mut pred: impl FnMut(Bidegree) -> bool) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| pred(self.bidegree(i)))
            .collect()
    }

    /// Projection onto the span of basis vectors satisfying `pred`.
    pub fn project(&self, x: &Element, mut pred: impl FnMut(Bidegree) -> bool) -> Element {
        Element(
            x.0.iter()
                .enumerate()
                .map(|(i, c)| {
                    if pred(self.bidegree(i)) {
                        c.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        )
    }

    pub fn component(&self, x: &Element, b: Bidegree) -> Element {
        self.project(x, |bd| bd == b)
    }

    /// `x[j]`, the part of `x` in `K[j]`.
    pub fn beauville_part(&self, x: &Element, j: i64) -> Element {
        let g = self.g;
        self.project(x, |b| b.index(g) == j)
    }

    /// Bidegrees occurring in the basis, sorted.
    pub fn bidegrees(&self) -> Vec<Bidegree> {
        let mut v: Vec<Bidegree> = self.basis.iter().map(|b| b.bidegree).collect();
        v.sort();
        v.dedup();
        v
    }

    /// The single bidegree carrying `x`, if `x` is nonzero and homogeneous.
    pub fn homogeneous_bidegree(&self, x: &Element) -> Option<Bidegree> {
        let mut found = None;
        for (i, c) in x.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = self.bidegree(i);
            match found {
                None => found = Some(b),
                Some(f) if f != b => return None,
                _ => {}
            }
        }
        found
    }

    pub fn describe(&self, x: &Element) -> String {
        let terms: Vec<String> =
            x.0.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    if c.is_one() {
                        self.label(i).to_string()
                    } else {
                        format!(
                            "({})*{}",
                            crate::exact::rational::format_rational(c),
                            self.label(i)
                        )
                    }
                })
                .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn ring(&self, kind: ProductKind) -> Product<'_> {
        Product { model: self, kind }
    }
}

/// A model algebra viewed as a coefficient ring under one of its products.
#[derive(Clone, Copy, Debug)]
pub struct Product<'a> {
    pub model: &'a ModelAlgebra,
    pub kind: ProductKind,
}

impl CoeffRing for Product<'_> {
    type Elem = Element;

    fn zero(&self) -> Element {
        self.model.zero()
    }
    fn one(&self) -> Element {
        self.model.unit_of(self.kind)
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        a + b
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        self.model.product(self.kind, a, b)
    }
    fn scale(&self, a: &Element, c: &Rational) -> Element {
        a.scale(c)
    }
    fn is_zero(&self, a: &Element) -> bool {
        a.is_zero()
    }
    fn add_scaled(&self, acc: &mut Element, b: &Element, c: &Rational) {
        acc.add_scaled(b, c);
    }
}
