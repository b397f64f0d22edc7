//! Multivariate polynomials over the two-element field. A polynomial is a
//! finite set of monomials; addition is symmetric difference, so p + p = 0
//! for every p.

use std::cmp::Ordering;

use super::monomial::{Monomial, VarSet};
use super::order::MonomialOrder;

/// Term set kept sorted descending under the canonical storage comparison,
/// with no duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyGF2 {
    terms: Vec<Monomial>,
}

impl PolyGF2 {
    pub fn zero() -> Self {
        PolyGF2 { terms: Vec::new() }
    }

    pub fn one(vars: &VarSet) -> Self {
        PolyGF2 {
            terms: vec![Monomial::one(vars)],
        }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        PolyGF2 { terms: vec![m] }
    }

    /// Build from an arbitrary monomial list, cancelling duplicate pairs.
    pub fn from_monomials(mut ms: Vec<Monomial>) -> Self {
        ms.sort_by(|a, b| b.storage_cmp(a));
        let mut terms: Vec<Monomial> = Vec::with_capacity(ms.len());
        for m in ms {
            if terms.last() == Some(&m) {
                terms.pop();
            } else {
                terms.push(m);
            }
        }
        PolyGF2 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.iter().any(|t| t == m)
    }

    /// Maximal term degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(first) => {
                let d = first.degree();
                self.terms.iter().all(|m| m.degree() == d)
            }
        }
    }

    /// The homogeneous component of the given degree.
    pub fn component(&self, degree: u32) -> PolyGF2 {
        PolyGF2 {
            terms: self
                .terms
                .iter()
                .filter(|m| m.degree() == degree)
                .cloned()
                .collect(),
        }
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.iter().map(|m| m.degree()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn add(&self, other: &PolyGF2) -> PolyGF2 {
        // Merge two descending lists, cancelling equal monomials.
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].storage_cmp(&other.terms[j]) {
                Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        PolyGF2 { terms }
    }

    pub fn add_assign(&mut self, other: &PolyGF2) {
        *self = self.add(other);
    }

    pub fn mul(&self, other: &PolyGF2) -> PolyGF2 {
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                products.push(a.mul(b));
            }
        }
        PolyGF2::from_monomials(products)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> PolyGF2 {
        PolyGF2 {
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        }
    }

    /// Leading monomial under the given reduction order.
    pub fn leading(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.terms.iter().max_by(|a, b| order.cmp(a, b))
    }

    pub fn display(&self, vars: &VarSet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|m| m.display(vars))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
