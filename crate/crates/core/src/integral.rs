//! Free integral cohomology companion in even degrees: exact integer
//! structure constants, reduction mod 2 into the mod-2 ring, and exact
//! division by 2. Coefficients are checked 64-bit integers; overflow is a
//! hard error, never a silent wrap.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf2::{Bits, Mat2, RawTerm};
use crate::ring::model::ManifoldModel;
use crate::ring::{Class, Label};

fn cadd(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b)
        .ok_or_else(|| Error::Overflow(format!("{a} + {b}")))
}

fn cmul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Overflow(format!("{a} * {b}")))
}

/// An element of the lattice at one even degree, as integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralClass {
    pub degree: u32,
    pub coords: Vec<i64>,
}

impl IntegralClass {
    pub fn zero(degree: u32, rank: usize) -> Self {
        IntegralClass {
            degree,
            coords: vec![0; rank],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// Free graded lattice over the integers in even degrees with integer
/// structure constants and a reduction map into the mod-2 ring.
#[derive(Debug, Clone)]
pub struct IntegralEvenRing {
    pub n: u32,
    pub basis: BTreeMap<u32, Vec<Label>>,
    products: BTreeMap<(u32, usize, u32, usize), Vec<i64>>,
    reductions: BTreeMap<(u32, usize), Bits>,
    pub symbols: BTreeMap<String, (u32, usize)>,
}

fn canonical_key(d1: u32, i: usize, d2: u32, j: usize) -> (u32, usize, u32, usize) {
    if (d1, i) <= (d2, j) {
        (d1, i, d2, j)
    } else {
        (d2, j, d1, i)
    }
}

impl IntegralEvenRing {
    pub fn new(n: u32) -> Self {
        let mut basis = BTreeMap::new();
        basis.insert(0, vec![Label::unit()]);
        IntegralEvenRing {
            n,
            basis,
            products: BTreeMap::new(),
            reductions: BTreeMap::new(),
            symbols: BTreeMap::new(),
        }
    }

    /// Append a basis element with its mod-2 reduction (coordinates in the
    /// mod-2 ring basis of the same degree).
    pub fn push_basis(&mut self, degree: u32, label: Label, reduction: Bits) -> Result<usize> {
        if !degree.is_multiple_of(2) || degree == 0 || degree > self.n {
            return Err(Error::Validation(format!(
                "integral basis element {label} must have even degree in 2..={}",
                self.n
            )));
        }
        let slot = self.basis.entry(degree).or_default();
        let index = slot.len();
        if let Some(name) = label.as_ident() {
            if self.symbols.contains_key(name) {
                return Err(Error::Validation(format!(
                    "duplicate integral basis identifier '{name}'"
                )));
            }
            self.symbols.insert(name.to_string(), (degree, index));
        }
        slot.push(label);
        self.reductions.insert((degree, index), reduction);
        Ok(index)
    }

    pub fn rank(&self, d: u32) -> usize {
        self.basis.get(&d).map_or(0, |b| b.len())
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.basis.keys().copied().collect()
    }

    pub fn label(&self, d: u32, i: usize) -> &Label {
        &self.basis[&d][i]
    }

    pub fn reduction_of_basis(&self, d: u32, i: usize) -> Option<&Bits> {
        self.reductions.get(&(d, i))
    }

    pub fn set_product(&mut self, d1: u32, i: usize, d2: u32, j: usize, coeffs: Vec<i64>) {
        assert!(d1 + d2 <= self.n);
        assert_eq!(coeffs.len(), self.rank(d1 + d2));
        if coeffs.iter().all(|&c| c == 0) {
            return;
        }
        self.products.insert(canonical_key(d1, i, d2, j), coeffs);
    }

    fn mul_basis(&self, d1: u32, i: usize, d2: u32, j: usize) -> Vec<i64> {
        let d = d1 + d2;
        if d > self.n {
            return vec![];
        }
        if d1 == 0 {
            let mut v = vec![0; self.rank(d2)];
            v[j] = 1;
            return v;
        }
        if d2 == 0 {
            let mut v = vec![0; self.rank(d1)];
            v[i] = 1;
            return v;
        }
        self.products
            .get(&canonical_key(d1, i, d2, j))
            .cloned()
            .unwrap_or_else(|| vec![0; self.rank(d)])
    }

    pub fn zero(&self, d: u32) -> IntegralClass {
        IntegralClass::zero(d, self.rank(d))
    }

    pub fn basis_class(&self, d: u32, i: usize) -> IntegralClass {
        let mut c = self.zero(d);
        c.coords[i] = 1;
        c
    }

    pub fn add(&self, a: &IntegralClass, b: &IntegralClass) -> Result<IntegralClass> {
        assert_eq!(a.degree, b.degree);
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| cadd(x, y))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntegralClass {
            degree: a.degree,
            coords,
        })
    }

    pub fn scale(&self, k: i64, a: &IntegralClass) -> Result<IntegralClass> {
        let coords = a
            .coords
            .iter()
            .map(|&x| cmul(k, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntegralClass {
            degree: a.degree,
            coords,
        })
    }

    /// Exact integer product via the structure constants. Degrees above the
    /// top dimension give the zero class of an empty lattice.
    pub fn zmul(&self, a: &IntegralClass, b: &IntegralClass) -> Result<IntegralClass> {
        let d = a.degree + b.degree;
        let mut out = self.zero(d);
        if d > self.n {
            return Ok(out);
        }
        for (i, &ca) in a.coords.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.coords.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                let scale = cmul(ca, cb)?;
                for (k, &s) in self.mul_basis(a.degree, i, b.degree, j).iter().enumerate() {
                    out.coords[k] = cadd(out.coords[k], cmul(scale, s)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Exact division by 2; every coefficient must be even.
    pub fn halve(&self, a: &IntegralClass) -> Result<IntegralClass> {
        if let Some(odd) = a.coords.iter().find(|c| *c % 2 != 0) {
            return Err(Error::OddCoefficient(format!(
                "coefficient {odd} in {} is odd",
                self.display(a)
            )));
        }
        Ok(IntegralClass {
            degree: a.degree,
            coords: a.coords.iter().map(|c| c / 2).collect(),
        })
    }

    /// Reduction mod 2 into the mod-2 ring, in canonical coordinates.
    pub fn rho2(&self, a: &IntegralClass, model_ring_dim: usize) -> Class {
        let mut coords = Bits::zeros(model_ring_dim);
        for (i, &c) in a.coords.iter().enumerate() {
            if c.rem_euclid(2) == 1 {
                if let Some(red) = self.reductions.get(&(a.degree, i)) {
                    coords.xor_assign(red);
                }
            }
        }
        Class {
            degree: a.degree,
            coords,
        }
    }

    /// Matrix of the reduction map at one degree: rows index the mod-2
    /// basis, columns the lattice basis.
    pub fn reduction_matrix(&self, d: u32, target_dim: usize) -> Mat2 {
        let cols: Vec<Bits> = (0..self.rank(d))
            .map(|i| {
                self.reductions
                    .get(&(d, i))
                    .cloned()
                    .unwrap_or_else(|| Bits::zeros(target_dim))
            })
            .collect();
        Mat2::from_cols(&cols, target_dim)
    }

    /// Integral Kronecker pairing: coefficient of the canonical top lattice
    /// generator. Requires a rank-1 top.
    pub fn kronecker(&self, a: &IntegralClass) -> Result<i64> {
        if a.degree != self.n {
            return Err(Error::DimensionMismatch(format!(
                "integral Kronecker pairing needs degree {}, got {}",
                self.n, a.degree
            )));
        }
        match self.rank(self.n) {
            0 => Ok(0),
            1 => Ok(a.coords[0]),
            r => Err(Error::Validation(format!(
                "top integral lattice has rank {r}, expected 1"
            ))),
        }
    }

    pub fn eval_terms(&self, terms: &[RawTerm]) -> Result<IntegralClass> {
        let mut acc: Option<IntegralClass> = None;
        for term in terms {
            let mut value = IntegralClass {
                degree: 0,
                coords: vec![term.coeff],
            };
            for (name, exp) in &term.factors {
                let Some(&(d, i)) = self.symbols.get(name) else {
                    return Err(Error::Parse(format!(
                        "unknown integral basis identifier '{name}'"
                    )));
                };
                let gen = self.basis_class(d, i);
                for _ in 0..*exp {
                    value = self.zmul(&value, &gen)?;
                }
            }
            if value.is_zero() && value.degree == 0 && term.coeff == 0 {
                continue;
            }
            acc = Some(match acc {
                None => value,
                Some(prev) => {
                    if prev.degree != value.degree {
                        return Err(Error::Parse(
                            "integral class must be homogeneous".into(),
                        ));
                    }
                    self.add(&prev, &value)?
                }
            });
        }
        Ok(acc.unwrap_or_else(|| self.zero(0)))
    }

    pub fn parse_class(&self, input: &str, degree: u32) -> Result<IntegralClass> {
        let terms = crate::gf2::parse_terms(input, true)?;
        let c = self.eval_terms(&terms)?;
        if c.is_zero() {
            return Ok(self.zero(degree));
        }
        if c.degree != degree {
            return Err(Error::Parse(format!(
                "expected an integral class of degree {degree}, found degree {}",
                c.degree
            )));
        }
        Ok(c)
    }

    pub fn display(&self, a: &IntegralClass) -> String {
        let mut parts = Vec::new();
        for (i, &c) in a.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let label = self.label(a.degree, i);
            if label.is_unit() {
                parts.push(format!("{c}"));
            } else if c == 1 {
                parts.push(label.to_string());
            } else {
                parts.push(format!("{c}*{label}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Surjectivity of the mod-2 reduction per degree: computed from the
/// companion where it exists, otherwise inferred from the declared torsion
/// facts (reduction is onto in degree i whenever H_{i-1} has no 2-torsion),
/// with degrees 4 and 5 never inferred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurjectivityStatus {
    Computed(bool),
    GuaranteedByTorsion,
    NotGuaranteed,
}

#[derive(Debug, Clone)]
pub struct Rho2Profile {
    pub by_degree: Vec<(u32, SurjectivityStatus)>,
}

impl Rho2Profile {
    /// True when no degree is computed non-surjective.
    pub fn no_failures(&self) -> bool {
        self.by_degree
            .iter()
            .all(|(_, s)| !matches!(s, SurjectivityStatus::Computed(false)))
    }
}

pub fn rho2_surjectivity_profile(model: &ManifoldModel) -> Result<Rho2Profile> {
    let lattice = model
        .integral
        .as_ref()
        .ok_or_else(|| Error::MissingData("no integral companion".into()))?;
    let mut by_degree = Vec::new();
    for d in 0..=model.n {
        let status = if d % 2 == 0 && (d == 0 || lattice.rank(d) > 0) {
            let target = model.ring.dim(d);
            if d == 0 {
                SurjectivityStatus::Computed(true)
            } else {
                let m = lattice.reduction_matrix(d, target);
                SurjectivityStatus::Computed(m.rank() == target)
            }
        } else if model.ring.dim(d) == 0 {
            SurjectivityStatus::Computed(true)
        } else if d == 4 || d == 5 {
            SurjectivityStatus::NotGuaranteed
        } else if no_2_torsion_in_homology(model, d) {
            // Bockstein sequence: rho2 is onto H^d(Z/2) when H^{d+1}(Z) has
            // no 2-torsion, i.e. when Tor H_d vanishes at 2.
            SurjectivityStatus::GuaranteedByTorsion
        } else {
            SurjectivityStatus::NotGuaranteed
        };
        by_degree.push((d, status));
    }
    Ok(Rho2Profile { by_degree })
}

/// Declared absence of 2-torsion in H_d, directly or through Poincaré
/// duality (Tor H_d equals Tor H^{n-d} equals Tor H_{n-d-1} for a closed
/// oriented n-manifold).
fn no_2_torsion_in_homology(model: &ManifoldModel, d: u32) -> bool {
    if model.torsion.declares_homology_no_p(d, 2) {
        return true;
    }
    model.n > d && model.torsion.declares_homology_no_p(model.n - d - 1, 2)
}
