//! Closed-manifold cohomology models: a ring backend plus Steenrod table,
//! characteristic classes, an optional integral even-degree companion and
//! declared torsion facts.

use crate::error::{Error, Result};
use crate::gf2::{Bits, Mat2};
use crate::integral::{IntegralClass, IntegralEvenRing};
use crate::steenrod::SqTable;
use crate::torsion::TorsionProfile;

use super::{Class, RingBackend, TotalClass};

/// Declared characteristic-class data. `w` is the total Stiefel-Whitney
/// class of the tangent bundle; `p1` and `c` live in the integral companion,
/// with `rho2(c)` equal to the degree-2 component of `w`.
#[derive(Debug, Clone, Default)]
pub struct CharClassData {
    pub w: Option<TotalClass>,
    pub p1: Option<IntegralClass>,
    pub c: Option<IntegralClass>,
}

#[derive(Debug, Clone)]
pub struct ManifoldModel {
    pub name: String,
    pub n: u32,
    pub ring: RingBackend,
    pub sq: SqTable,
    pub char_classes: CharClassData,
    pub integral: Option<IntegralEvenRing>,
    pub torsion: TorsionProfile,
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl ManifoldModel {
    pub fn dim(&self, d: u32) -> usize {
        self.ring.dim(d)
    }

    pub fn cup(&self, a: &Class, b: &Class) -> Class {
        self.ring.cup(a, b)
    }

    pub fn cup_total(&self, a: &TotalClass, b: &TotalClass) -> TotalClass {
        self.ring.cup_total(a, b)
    }

    /// Evaluation against the fundamental class: the coefficient of the top
    /// basis element. Classes below the top degree pair to zero.
    pub fn kronecker(&self, a: &Class) -> Result<bool> {
        if a.degree != self.n {
            return Ok(false);
        }
        if self.dim(self.n) != 1 {
            return Err(Error::Validation(format!(
                "top degree has dimension {}, expected 1",
                self.dim(self.n)
            )));
        }
        Ok(a.coords.get(0))
    }

    pub fn kronecker_total(&self, t: &TotalClass) -> Result<bool> {
        self.kronecker(&self.ring.total_component(t, self.n))
    }

    /// Matrix of the cup-product pairing H^i x H^{n-i} -> GF(2). Rows index
    /// the degree-i basis, columns the degree-(n-i) basis.
    pub fn pairing_matrix(&self, i: u32) -> Result<Mat2> {
        if i > self.n {
            return Err(Error::DimensionMismatch(format!(
                "pairing degree {i} exceeds dimension {}",
                self.n
            )));
        }
        let rows = self.dim(i);
        let cols = self.dim(self.n - i);
        let mut m = Mat2::zeros(rows, cols);
        for r in 0..rows {
            let x = self.ring.basis_class(i, r);
            for c in 0..cols {
                let y = self.ring.basis_class(self.n - i, c);
                if self.kronecker(&self.cup(&x, &y))? {
                    m.set(r, c, true);
                }
            }
        }
        Ok(m)
    }

    /// Degree-k component of the declared total Stiefel-Whitney class.
    pub fn w_component(&self, k: u32) -> Result<Class> {
        let w = self
            .char_classes
            .w
            .as_ref()
            .ok_or_else(|| Error::MissingData("no declared Stiefel-Whitney class".into()))?;
        Ok(self.ring.total_component(w, k))
    }

    /// Reduction of an integral companion class into the mod-2 ring.
    pub fn rho2(&self, x: &IntegralClass) -> Result<Class> {
        let lattice = self
            .integral
            .as_ref()
            .ok_or_else(|| Error::MissingData("no integral companion".into()))?;
        Ok(lattice.rho2(x, self.dim(x.degree)))
    }

    /// Structural checks: graded dimensions, Poincaré duality, pairing
    /// nondegeneracy, table associativity, Steenrod consistency and the
    /// integral companion being a ring map under reduction.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.n;

        if self.ring.top() != n {
            violations.push(format!(
                "ring top degree {} differs from declared dimension {n}",
                self.ring.top()
            ));
        }
        if self.dim(0) != 1 {
            violations.push(format!("dim H^0 = {}, expected 1", self.dim(0)));
        }
        if self.dim(n) != 1 {
            violations.push(format!("top degree not 1-dimensional: dim H^{n} = {}", self.dim(n)));
        }
        for i in 0..=n {
            if self.dim(i) != self.dim(n - i) {
                violations.push(format!(
                    "duality dimension failure: dim H^{i} = {} but dim H^{} = {}",
                    self.dim(i),
                    n - i,
                    self.dim(n - i)
                ));
            }
        }
        if let RingBackend::Presented(r) = &self.ring {
            // Vanishing just above the top propagates to all higher degrees.
            for d in (n + 1)..=(n + r.vars.max_degree()) {
                if !r.gb.standard_monomials(d).is_empty() {
                    violations.push(format!("quotient is nonzero in degree {d} above the top"));
                }
            }
        }

        if self.dim(n) == 1 {
            for i in 0..=n / 2 {
                match self.pairing_matrix(i) {
                    Ok(m) => {
                        if !m.is_invertible() {
                            violations.push(format!("pairing H^{i} x H^{} is degenerate", n - i));
                        }
                    }
                    Err(e) => violations.push(format!("pairing H^{i}: {e}")),
                }
            }
        }

        if let RingBackend::Table(r) = &self.ring {
            'outer: for d1 in 1..n {
                for d2 in 1..n {
                    for d3 in 1..n {
                        if d1 + d2 + d3 > n {
                            continue;
                        }
                        for i in 0..r.dim(d1) {
                            for j in 0..r.dim(d2) {
                                for k in 0..r.dim(d3) {
                                    let x = self.ring.basis_class(d1, i);
                                    let y = self.ring.basis_class(d2, j);
                                    let z = self.ring.basis_class(d3, k);
                                    let left = self.cup(&self.cup(&x, &y), &z);
                                    let right = self.cup(&x, &self.cup(&y, &z));
                                    if left != right {
                                        violations.push(format!(
                                            "associativity failure on basis triple ({d1},{i}) ({d2},{j}) ({d3},{k})"
                                        ));
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }

        let sq_report = crate::steenrod::verify_sq_well_defined(self);
        for f in sq_report.failures {
            violations.push(format!("Steenrod table: {f}"));
        }

        if let (Some(c), Ok(w2)) = (&self.char_classes.c, self.w_component(2)) {
            match self.rho2(c) {
                Ok(rc) => {
                    if rc != w2 {
                        violations.push(format!(
                            "rho2(c) = {} differs from w2 = {}",
                            self.ring.class_display(&rc),
                            self.ring.class_display(&w2)
                        ));
                    }
                }
                Err(e) => violations.push(format!("rho2(c): {e}")),
            }
        }

        if let Some(lattice) = &self.integral {
            if lattice.n != n {
                violations.push(format!(
                    "integral companion dimension {} differs from {n}",
                    lattice.n
                ));
            }
            if n.is_multiple_of(2) && lattice.rank(n) != 1 {
                violations.push(format!(
                    "integral companion top rank {} in degree {n}, expected 1",
                    lattice.rank(n)
                ));
            }
            for d in lattice.degrees() {
                if d == 0 {
                    continue;
                }
                let m = lattice.reduction_matrix(d, self.dim(d));
                if m.rank() != lattice.rank(d) {
                    violations.push(format!(
                        "integral reduction is not injective mod 2 in degree {d}"
                    ));
                }
            }
            // Reduction must be a ring map on basis pairs.
            let degrees = lattice.degrees();
            for &d1 in &degrees {
                for &d2 in &degrees {
                    if d1 == 0 || d2 == 0 || d1 + d2 > n || d1 > d2 {
                        continue;
                    }
                    for i in 0..lattice.rank(d1) {
                        for j in 0..lattice.rank(d2) {
                            let a = lattice.basis_class(d1, i);
                            let b = lattice.basis_class(d2, j);
                            let Ok(prod) = lattice.zmul(&a, &b) else {
                                violations.push("integral product overflow".into());
                                continue;
                            };
                            let lhs = lattice.rho2(&prod, self.dim(d1 + d2));
                            let rhs = self.cup(
                                &lattice.rho2(&a, self.dim(d1)),
                                &lattice.rho2(&b, self.dim(d2)),
                            );
                            if lhs != rhs {
                                violations.push(format!(
                                    "reduction is not multiplicative on {} * {}",
                                    lattice.display(&a),
                                    lattice.display(&b)
                                ));
                            }
                        }
                    }
                }
            }
        }

        ValidationReport { violations }
    }
}

/// Coordinates helper: interpret a bit vector as a class of the given
/// degree in this model's ring.
pub fn class_from_bits(degree: u32, coords: Bits) -> Class {
    Class { degree, coords }
}
