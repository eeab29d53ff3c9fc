use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::Rational;

/// Coordinate vector over a model basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(pub Vec<Rational>);

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element(vec![Rational::zero(); dim])
    }

    pub fn unit_vector(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        Element(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&i| !self.0[i].is_zero())
            .collect()
    }
}

impl AsRef<[Rational]> for Element {
    fn as_ref(&self) -> &[Rational] {
        &self.0
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        Element(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for Element {
    type Output = Element;

    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;

    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}
