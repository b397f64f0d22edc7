//! Cohomology-ring backends behind a common interface: a Gröbner-backed
//! presented quotient ring and an explicit per-degree multiplication table.
//! Classes are coordinate vectors relative to the per-degree bases, so all
//! linear algebra is shared between backends.

pub mod model;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf2::{
    groebner, parse_terms, Bits, GroebnerBasis, Monomial, MonomialOrder, PolyGF2, RawTerm, VarSet,
};

/// A basis-element name: a formal product of identifier powers. The unit
/// label is the empty product, displayed as `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Label {
    pub factors: Vec<(String, u32)>,
}

impl Label {
    pub fn unit() -> Self {
        Label { factors: vec![] }
    }

    pub fn ident(name: &str) -> Self {
        Label {
            factors: vec![(name.to_string(), 1)],
        }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// The identifier when this label is a bare name.
    pub fn as_ident(&self) -> Option<&str> {
        match self.factors.as_slice() {
            [(name, 1)] => Some(name),
            _ => None,
        }
    }

    /// Formal product of two labels, merging repeated identifiers.
    pub fn concat(&self, other: &Label) -> Label {
        let mut factors = self.factors.clone();
        for (name, exp) in &other.factors {
            if let Some(entry) = factors.iter_mut().find(|(n, _)| n == name) {
                entry.1 += exp;
            } else {
                factors.push((name.clone(), *exp));
            }
        }
        Label { factors }
    }

    pub fn rename(&self, f: &dyn Fn(&str) -> String) -> Label {
        Label {
            factors: self
                .factors
                .iter()
                .map(|(n, e)| (f(n), *e))
                .collect(),
        }
    }

    pub fn from_monomial(m: &Monomial, vars: &VarSet) -> Label {
        let mut factors = Vec::new();
        for i in 0..vars.len() {
            if m.exp(i) > 0 {
                factors.push((vars.name(i).to_string(), m.exp(i) as u32));
            }
        }
        Label { factors }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(n, e)| {
                if *e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A homogeneous mod-2 class: coordinates in the ring's basis at one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class {
    pub degree: u32,
    pub coords: Bits,
}

impl Class {
    pub fn zero(degree: u32, dim: usize) -> Self {
        Class {
            degree,
            coords: Bits::zeros(dim),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add(&self, other: &Class) -> Class {
        assert_eq!(self.degree, other.degree, "degree mismatch in class sum");
        let mut coords = self.coords.clone();
        coords.xor_assign(&other.coords);
        Class {
            degree: self.degree,
            coords,
        }
    }
}

/// An inhomogeneous mod-2 class: one coordinate vector per degree with a
/// nonzero component.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TotalClass {
    pub parts: BTreeMap<u32, Bits>,
}

impl TotalClass {
    pub fn zero() -> Self {
        TotalClass::default()
    }

    pub fn from_class(c: &Class) -> Self {
        let mut t = TotalClass::zero();
        t.add_class(c);
        t
    }

    pub fn add_class(&mut self, c: &Class) {
        if c.is_zero() {
            return;
        }
        match self.parts.get_mut(&c.degree) {
            Some(bits) => {
                bits.xor_assign(&c.coords);
                if bits.is_zero() {
                    self.parts.remove(&c.degree);
                }
            }
            None => {
                self.parts.insert(c.degree, c.coords.clone());
            }
        }
    }

    pub fn add(&self, other: &TotalClass) -> TotalClass {
        let mut out = self.clone();
        for (d, bits) in &other.parts {
            out.add_class(&Class {
                degree: *d,
                coords: bits.clone(),
            });
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.parts.keys().copied().collect()
    }
}

/// Table backend: explicit bases per degree and a sparse multiplication
/// table on basis pairs. Missing pairs multiply to zero, as do products
/// whose degree exceeds the top dimension.
#[derive(Debug, Clone)]
pub struct TableRing {
    pub n: u32,
    pub basis: Vec<Vec<Label>>,
    products: BTreeMap<(u32, usize, u32, usize), Bits>,
    pub symbols: BTreeMap<String, (u32, usize)>,
}

impl TableRing {
    pub fn new(n: u32) -> Self {
        let mut basis = vec![Vec::new(); (n + 1) as usize];
        basis[0].push(Label::unit());
        TableRing {
            n,
            basis,
            products: BTreeMap::new(),
            symbols: BTreeMap::new(),
        }
    }

    /// Append a basis element; single-identifier labels are registered for
    /// name resolution in parsed expressions.
    pub fn push_basis(&mut self, degree: u32, label: Label) -> Result<usize> {
        if degree == 0 || degree > self.n {
            return Err(Error::Validation(format!(
                "basis element {label} out of degree range 1..={}",
                self.n
            )));
        }
        if let Some(name) = label.as_ident() {
            if self.symbols.contains_key(name) {
                return Err(Error::Validation(format!(
                    "duplicate basis identifier '{name}'"
                )));
            }
            self.symbols
                .insert(name.to_string(), (degree, self.basis[degree as usize].len()));
        }
        self.basis[degree as usize].push(label);
        Ok(self.basis[degree as usize].len() - 1)
    }

    pub fn dim(&self, d: u32) -> usize {
        if d > self.n {
            0
        } else {
            self.basis[d as usize].len()
        }
    }

    pub fn set_product(&mut self, d1: u32, i: usize, d2: u32, j: usize, coords: Bits) {
        assert!(d1 + d2 <= self.n);
        assert_eq!(coords.len(), self.dim(d1 + d2));
        if coords.is_zero() {
            return;
        }
        let key = canonical_key(d1, i, d2, j);
        self.products.insert(key, coords);
    }

    pub fn mul_basis(&self, d1: u32, i: usize, d2: u32, j: usize) -> Bits {
        let d = d1 + d2;
        if d > self.n {
            return Bits::zeros(0);
        }
        if d1 == 0 {
            return Bits::unit(self.dim(d2), j);
        }
        if d2 == 0 {
            return Bits::unit(self.dim(d1), i);
        }
        self.products
            .get(&canonical_key(d1, i, d2, j))
            .cloned()
            .unwrap_or_else(|| Bits::zeros(self.dim(d)))
    }
}

fn canonical_key(d1: u32, i: usize, d2: u32, j: usize) -> (u32, usize, u32, usize) {
    if (d1, i) <= (d2, j) {
        (d1, i, d2, j)
    } else {
        (d2, j, d1, i)
    }
}

/// Presented backend: a quotient of a graded polynomial ring by a
/// homogeneous ideal, with per-degree standard monomial bases up to the
/// manifold dimension.
#[derive(Debug, Clone)]
pub struct PresentedRing {
    pub vars: VarSet,
    pub relations: Vec<PolyGF2>,
    pub gb: GroebnerBasis,
    pub top: u32,
    bases: Vec<Vec<Monomial>>,
}

impl PresentedRing {
    pub fn new(vars: VarSet, relations: Vec<PolyGF2>, order: MonomialOrder, top: u32) -> Self {
        let gb = groebner(&vars, &relations, order);
        let bases = (0..=top).map(|d| gb.standard_monomials(d)).collect();
        PresentedRing {
            vars,
            relations,
            gb,
            top,
            bases,
        }
    }

    pub fn dim(&self, d: u32) -> usize {
        if d > self.top {
            0
        } else {
            self.bases[d as usize].len()
        }
    }

    pub fn monomial_basis(&self, d: u32) -> &[Monomial] {
        &self.bases[d as usize]
    }

    /// Coordinates of a normal-form polynomial, split by degree. Components
    /// above the top dimension vanish in the quotient.
    pub fn total_from_poly(&self, p: &PolyGF2) -> TotalClass {
        let nf = self.gb.normal_form(p);
        let mut out = TotalClass::zero();
        for d in nf.degrees() {
            let comp = nf.component(d);
            debug_assert!(d <= self.top, "normal form escaped the top degree");
            let basis = self.monomial_basis(d);
            let mut coords = Bits::zeros(basis.len());
            for m in comp.terms() {
                let idx = basis
                    .iter()
                    .position(|b| b == m)
                    .expect("normal-form monomial must be standard");
                coords.flip(idx);
            }
            out.add_class(&Class { degree: d, coords });
        }
        out
    }

    pub fn class_from_poly(&self, p: &PolyGF2, degree: u32) -> Class {
        let total = self.total_from_poly(p);
        total
            .parts
            .get(&degree)
            .map(|coords| Class {
                degree,
                coords: coords.clone(),
            })
            .unwrap_or_else(|| Class::zero(degree, self.dim(degree)))
    }

    pub fn poly_from_class(&self, c: &Class) -> PolyGF2 {
        let basis = self.monomial_basis(c.degree);
        let monomials = c.coords.ones().map(|i| basis[i].clone()).collect();
        PolyGF2::from_monomials(monomials)
    }

    pub fn mul_basis(&self, d1: u32, i: usize, d2: u32, j: usize) -> Bits {
        let d = d1 + d2;
        if d > self.top {
            return Bits::zeros(0);
        }
        let p = self.bases[d1 as usize][i].mul(&self.bases[d2 as usize][j]);
        let class = self.class_from_poly(&PolyGF2::from_monomial(p), d);
        class.coords
    }
}

/// The two cohomology-ring backends behind one interface.
#[derive(Debug, Clone)]
pub enum RingBackend {
    Presented(PresentedRing),
    Table(TableRing),
}

impl RingBackend {
    pub fn top(&self) -> u32 {
        match self {
            RingBackend::Presented(r) => r.top,
            RingBackend::Table(r) => r.n,
        }
    }

    pub fn dim(&self, d: u32) -> usize {
        match self {
            RingBackend::Presented(r) => r.dim(d),
            RingBackend::Table(r) => r.dim(d),
        }
    }

    pub fn zero(&self, d: u32) -> Class {
        Class::zero(d, self.dim(d))
    }

    pub fn one(&self) -> Class {
        Class {
            degree: 0,
            coords: Bits::unit(1, 0),
        }
    }

    pub fn basis_class(&self, d: u32, i: usize) -> Class {
        Class {
            degree: d,
            coords: Bits::unit(self.dim(d), i),
        }
    }

    pub fn label_string(&self, d: u32, i: usize) -> String {
        match self {
            RingBackend::Presented(r) => r.monomial_basis(d)[i].display(&r.vars),
            RingBackend::Table(r) => r.basis[d as usize][i].to_string(),
        }
    }

    /// Cup product of homogeneous classes; degrees above the top dimension
    /// give the zero class.
    pub fn cup(&self, a: &Class, b: &Class) -> Class {
        let d = a.degree + b.degree;
        if d > self.top() {
            return self.zero(d);
        }
        let mut out = self.zero(d);
        match self {
            RingBackend::Presented(r) => {
                let pa = r.poly_from_class(a);
                let pb = r.poly_from_class(b);
                out = r.class_from_poly(&pa.mul(&pb), d);
            }
            RingBackend::Table(r) => {
                for i in a.coords.ones() {
                    for j in b.coords.ones() {
                        out.coords.xor_assign(&r.mul_basis(a.degree, i, b.degree, j));
                    }
                }
            }
        }
        out
    }

    pub fn cup_total(&self, a: &TotalClass, b: &TotalClass) -> TotalClass {
        let mut out = TotalClass::zero();
        for (da, ca) in &a.parts {
            for (db, cb) in &b.parts {
                let x = Class {
                    degree: *da,
                    coords: ca.clone(),
                };
                let y = Class {
                    degree: *db,
                    coords: cb.clone(),
                };
                out.add_class(&self.cup(&x, &y));
            }
        }
        out
    }

    pub fn total_component(&self, t: &TotalClass, d: u32) -> Class {
        t.parts
            .get(&d)
            .map(|coords| Class {
                degree: d,
                coords: coords.clone(),
            })
            .unwrap_or_else(|| self.zero(d))
    }

    /// Raise a homogeneous class to a power.
    pub fn pow(&self, a: &Class, e: u32) -> Class {
        if e == 0 {
            return self.one();
        }
        let mut acc = a.clone();
        for _ in 1..e {
            acc = self.cup(&acc, a);
        }
        acc
    }

    /// Evaluate parsed mod-2 terms against this ring: identifiers resolve to
    /// generators (presented) or named basis elements (table).
    pub fn eval_terms(&self, terms: &[RawTerm]) -> Result<TotalClass> {
        match self {
            RingBackend::Presented(r) => {
                let mut poly = PolyGF2::zero();
                for term in terms {
                    if term.coeff % 2 == 0 {
                        continue;
                    }
                    let mut m = Monomial::one(&r.vars);
                    for (name, exp) in &term.factors {
                        let Some(i) = r.vars.index_of(name) else {
                            return Err(Error::Parse(format!("unknown generator '{name}'")));
                        };
                        for _ in 0..*exp {
                            m = m.mul(&Monomial::var(&r.vars, i));
                        }
                    }
                    poly.add_assign(&PolyGF2::from_monomial(m));
                }
                Ok(r.total_from_poly(&poly))
            }
            RingBackend::Table(r) => {
                let mut out = TotalClass::zero();
                for term in terms {
                    if term.coeff % 2 == 0 {
                        continue;
                    }
                    let mut acc = self.one();
                    for (name, exp) in &term.factors {
                        let Some(&(d, i)) = r.symbols.get(name) else {
                            return Err(Error::Parse(format!(
                                "unknown basis identifier '{name}'"
                            )));
                        };
                        let gen = self.basis_class(d, i);
                        acc = self.cup(&acc, &self.pow(&gen, *exp));
                    }
                    out.add_class(&acc);
                }
                Ok(out)
            }
        }
    }

    pub fn parse_total(&self, input: &str) -> Result<TotalClass> {
        let terms = parse_terms(input, false)?;
        self.eval_terms(&terms)
    }

    /// Parse and require homogeneity of the given degree.
    pub fn parse_class(&self, input: &str, degree: u32) -> Result<Class> {
        let t = self.parse_total(input)?;
        for d in t.degrees() {
            if d != degree {
                return Err(Error::Parse(format!(
                    "expected a homogeneous class of degree {degree}, found degree {d}"
                )));
            }
        }
        Ok(self.total_component(&t, degree))
    }

    pub fn class_display(&self, c: &Class) -> String {
        if c.is_zero() {
            return "0".to_string();
        }
        c.coords
            .ones()
            .map(|i| self.label_string(c.degree, i))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn total_display(&self, t: &TotalClass) -> String {
        if t.is_zero() {
            return "0".to_string();
        }
        t.parts
            .iter()
            .map(|(d, coords)| {
                self.class_display(&Class {
                    degree: *d,
                    coords: coords.clone(),
                })
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// One-way export of a presented ring to a table ring over the standard
/// monomial bases. Basis order is preserved, so coordinate vectors remain
/// valid across the export.
pub fn presented_to_table(r: &PresentedRing) -> Result<TableRing> {
    let mut table = TableRing::new(r.top);
    for d in 1..=r.top {
        for m in r.monomial_basis(d) {
            table.push_basis(d, Label::from_monomial(m, &r.vars))?;
        }
    }
    for d1 in 1..=r.top {
        for d2 in d1..=r.top {
            if d1 + d2 > r.top {
                break;
            }
            for i in 0..r.dim(d1) {
                for j in 0..r.dim(d2) {
                    if d1 == d2 && j < i {
                        continue;
                    }
                    let coords = r.mul_basis(d1, i, d2, j);
                    if !coords.is_zero() {
                        table.set_product(d1, i, d2, j, coords);
                    }
                }
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cp2, grassmann, sphere};
    use crate::gf2::parse_gf2_poly;

    #[test]
    fn label_display_and_concat() {
        let a = Label::ident("a");
        let a2 = a.concat(&a);
        assert_eq!(a2.to_string(), "a^2");
        assert_eq!(Label::unit().to_string(), "1");
        let mixed = a2.concat(&Label::ident("s5"));
        assert_eq!(mixed.to_string(), "a^2*s5");
        assert_eq!(a.as_ident(), Some("a"));
        assert_eq!(a2.as_ident(), None);
    }

    #[test]
    fn cup_beyond_top_is_zero() {
        let m = cp2().unwrap();
        let a = m.ring.basis_class(2, 0);
        let a2 = m.cup(&a, &a);
        assert!(!a2.is_zero());
        assert!(m.cup(&a2, &a).is_zero());
        assert!(m.cup(&a2, &a2).is_zero());
        // unit is the identity
        assert_eq!(m.cup(&m.ring.one(), &a), a);
    }

    #[test]
    fn presented_cup_and_kronecker() {
        let g = grassmann(2, 5).unwrap();
        let r = match &g.ring {
            RingBackend::Presented(r) => r,
            _ => unreachable!(),
        };
        // the H^9 generator pairs perfectly with the H^1 generator
        let nine = r.class_from_poly(&parse_gf2_poly("w1^5*w2^2", &r.vars).unwrap(), 9);
        let w1 = r.class_from_poly(&parse_gf2_poly("w1", &r.vars).unwrap(), 1);
        let top = g.cup(&nine, &w1);
        assert!(g.kronecker(&top).unwrap());
        // and w1^7*w2 + w1^5*w2^2 collapses onto the degree-9 basis class
        let p = parse_gf2_poly("w1^7*w2 + w1^5*w2^2", &r.vars).unwrap();
        let nf = r.gb.normal_form(&p);
        assert!(!nf.is_zero());
        assert_eq!(nf, r.gb.normal_form(&parse_gf2_poly("w1^5*w2^2", &r.vars).unwrap()));
    }

    #[test]
    fn kronecker_basics() {
        let m = sphere(10).unwrap();
        let top = m.ring.basis_class(10, 0);
        assert!(m.kronecker(&top).unwrap());
        assert!(!m.kronecker(&m.ring.zero(10)).unwrap());
        assert!(!m.kronecker(&m.ring.one()).unwrap());
    }

    #[test]
    fn pairing_matrices() {
        let m = cp2().unwrap();
        let p0 = m.pairing_matrix(0).unwrap();
        assert!(p0.is_invertible());
        assert_eq!((p0.rows(), p0.cols()), (1, 1));
        let p2 = m.pairing_matrix(2).unwrap();
        assert!(p2.get(0, 0));

        let g = grassmann(3, 3).unwrap();
        let p4 = g.pairing_matrix(4).unwrap();
        assert_eq!((p4.rows(), p4.cols()), (3, 3));
        assert!(p4.is_invertible());
    }

    #[test]
    fn validate_flags_bad_top_degree() {
        let mut ring = TableRing::new(10);
        ring.push_basis(10, Label::ident("t1")).unwrap();
        ring.push_basis(10, Label::ident("t2")).unwrap();
        let m = crate::ring::model::ManifoldModel {
            name: "bad".into(),
            n: 10,
            ring: RingBackend::Table(ring),
            sq: crate::steenrod::SqTable::empty_table(),
            char_classes: Default::default(),
            integral: None,
            torsion: Default::default(),
        };
        let report = m.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("top degree not 1-dimensional")));
    }

    #[test]
    fn parse_class_resolves_ring_names() {
        let m = cp2().unwrap();
        let t = m.ring.parse_total("1 + a + a^2").unwrap();
        assert_eq!(t.degrees(), vec![0, 2, 4]);
        let c = m.ring.parse_class("a^2", 4).unwrap();
        assert_eq!(c, m.ring.basis_class(4, 0));
        assert!(m.ring.parse_class("a", 4).is_err());
        assert!(m.ring.parse_total("b").is_err());
        // a*a multiplies out through the table
        assert_eq!(m.ring.parse_class("a*a", 4).unwrap(), c);
    }

    #[test]
    fn class_display_round_trip() {
        let g = grassmann(2, 5).unwrap();
        for d in 0..=g.n {
            for i in 0..g.dim(d) {
                let c = g.ring.basis_class(d, i);
                let text = g.ring.class_display(&c);
                let back = g.ring.parse_class(&text, d).unwrap();
                assert_eq!(back, c, "degree {d} index {i}: '{text}'");
            }
        }
    }
}
