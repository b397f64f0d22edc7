//! Steenrod squares on ring models. Generator squares are input data; the
//! action on arbitrary classes is forced by additivity, the instability
//! rules Sq^0 = id, Sq^deg = squaring, Sq^{i>deg} = 0, and the Cartan
//! formula, which is applied through multiplicativity of the total square.
//! Wu classes are recovered from the Poincaré pairing and give back the
//! Stiefel-Whitney classes as a cross-check.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf2::{Bits, Mat2, PolyGF2};
use crate::ring::model::ManifoldModel;
use crate::ring::{Class, PresentedRing, RingBackend, TotalClass};

/// Generator squares in the open range 1 <= i < deg. Missing entries are
/// zero. Presented backends key by generator, table backends by basis
/// element.
#[derive(Debug, Clone)]
pub enum SqTable {
    Presented(BTreeMap<(usize, u32), PolyGF2>),
    Table(BTreeMap<(u32, usize, u32), Bits>),
}

impl SqTable {
    pub fn empty_presented() -> Self {
        SqTable::Presented(BTreeMap::new())
    }

    pub fn empty_table() -> Self {
        SqTable::Table(BTreeMap::new())
    }
}

impl ManifoldModel {
    /// Sq^i on a homogeneous class, in canonical coordinates.
    pub fn sq(&self, i: u32, x: &Class) -> Class {
        let d = x.degree;
        if i == 0 {
            return x.clone();
        }
        if i > d || x.is_zero() {
            return self.ring.zero(d + i);
        }
        if i == d {
            return self.cup(x, x);
        }
        match (&self.ring, &self.sq) {
            (RingBackend::Presented(r), SqTable::Presented(entries)) => {
                let total = total_sq_presented(r, entries, x);
                self.ring.total_component(&total, d + i)
            }
            (RingBackend::Table(_), SqTable::Table(entries)) => {
                let mut out = self.ring.zero(d + i);
                for b in x.coords.ones() {
                    if let Some(bits) = entries.get(&(d, b, i)) {
                        out.coords.xor_assign(bits);
                    }
                }
                out
            }
            _ => unreachable!("Steenrod table flavor must match the ring backend"),
        }
    }

    /// The total square Sq(x) = sum of Sq^i(x) over 0 <= i <= deg x.
    pub fn total_sq(&self, x: &Class) -> TotalClass {
        match (&self.ring, &self.sq) {
            (RingBackend::Presented(r), SqTable::Presented(entries)) => {
                total_sq_presented(r, entries, x)
            }
            _ => {
                let mut out = TotalClass::zero();
                for i in 0..=x.degree {
                    out.add_class(&self.sq(i, x));
                }
                out
            }
        }
    }

    pub fn total_sq_of_total(&self, t: &TotalClass) -> TotalClass {
        let mut out = TotalClass::zero();
        for d in t.degrees() {
            let part = self.ring.total_component(t, d);
            out = out.add(&self.total_sq(&part));
        }
        out
    }

    /// Sq^i applied to every homogeneous component.
    pub fn sq_total(&self, i: u32, t: &TotalClass) -> TotalClass {
        let mut out = TotalClass::zero();
        for d in t.degrees() {
            out.add_class(&self.sq(i, &self.ring.total_component(t, d)));
        }
        out
    }

    /// Matrix of Sq^i from degree d to degree d+i in the standard bases.
    pub fn sq_matrix(&self, i: u32, d: u32) -> Mat2 {
        let source = self.dim(d);
        let target = self.dim(d + i);
        let images: Vec<Bits> = (0..source)
            .map(|b| self.sq(i, &self.ring.basis_class(d, b)).coords)
            .collect();
        Mat2::from_cols(&images, target)
    }
}

/// Total square of a single generator: g + table entries + g^2.
fn gen_total_sq(
    r: &PresentedRing,
    entries: &BTreeMap<(usize, u32), PolyGF2>,
    gen: usize,
) -> PolyGF2 {
    let g = PolyGF2::from_monomial(crate::gf2::Monomial::var(&r.vars, gen));
    let mut total = g.clone();
    let deg = r.vars.degree(gen);
    for i in 1..deg {
        if let Some(p) = entries.get(&(gen, i)) {
            total.add_assign(p);
        }
    }
    total.add_assign(&g.mul(&g));
    total
}

fn total_sq_presented(
    r: &PresentedRing,
    entries: &BTreeMap<(usize, u32), PolyGF2>,
    x: &Class,
) -> TotalClass {
    let mut out = TotalClass::zero();
    for idx in x.coords.ones() {
        let monomial = &r.monomial_basis(x.degree)[idx];
        let mut acc = PolyGF2::one(&r.vars);
        for v in 0..r.vars.len() {
            if monomial.exp(v) == 0 {
                continue;
            }
            let gsq = gen_total_sq(r, entries, v);
            for _ in 0..monomial.exp(v) {
                acc = r.gb.normal_form(&acc.mul(&gsq));
            }
        }
        out = out.add(&r.total_from_poly(&acc));
    }
    out
}

/// Total square of a polynomial in the free ring, reduced to the quotient.
/// Used to test well-definedness on relation polynomials.
fn total_sq_of_poly(
    r: &PresentedRing,
    entries: &BTreeMap<(usize, u32), PolyGF2>,
    p: &PolyGF2,
) -> PolyGF2 {
    let mut out = PolyGF2::zero();
    for m in p.terms() {
        let mut acc = PolyGF2::one(&r.vars);
        for v in 0..r.vars.len() {
            for _ in 0..m.exp(v) {
                let gsq = gen_total_sq(r, entries, v);
                acc = r.gb.normal_form(&acc.mul(&gsq));
            }
        }
        out.add_assign(&acc);
    }
    r.gb.normal_form(&out)
}

#[derive(Debug, Clone, Default)]
pub struct SqReport {
    pub failures: Vec<String>,
}

impl SqReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Consistency of the Steenrod table with the ring structure. For presented
/// backends every relation must be carried into the ideal by the total
/// square; for table backends the Cartan formula must hold on all basis
/// pairs. Entry shapes are checked in both cases.
pub fn verify_sq_well_defined(model: &ManifoldModel) -> SqReport {
    let mut failures = Vec::new();
    match (&model.ring, &model.sq) {
        (RingBackend::Presented(r), SqTable::Presented(entries)) => {
            for (&(gen, i), p) in entries {
                if gen >= r.vars.len() {
                    failures.push(format!("entry for unknown generator index {gen}"));
                    continue;
                }
                let deg = r.vars.degree(gen);
                if i == 0 || i >= deg {
                    failures.push(format!(
                        "entry Sq^{i}({}) outside the open range 1..{deg}",
                        r.vars.name(gen)
                    ));
                }
                if !p.is_zero() && (!p.is_homogeneous() || p.degree() != deg + i) {
                    failures.push(format!(
                        "entry Sq^{i}({}) is not homogeneous of degree {}",
                        r.vars.name(gen),
                        deg + i
                    ));
                }
            }
            for (ri, rel) in r.relations.iter().enumerate() {
                let image = total_sq_of_poly(r, entries, rel);
                if !image.is_zero() {
                    for d in image.degrees() {
                        let i = d - rel.degree();
                        failures.push(format!(
                            "Sq^{i} of relation #{ri} does not reduce to 0"
                        ));
                    }
                }
            }
        }
        (RingBackend::Table(t), SqTable::Table(entries)) => {
            for (&(d, idx, i), bits) in entries {
                if d > t.n || idx >= t.dim(d) {
                    failures.push(format!("entry for unknown basis element ({d},{idx})"));
                    continue;
                }
                if i == 0 || i >= d {
                    failures.push(format!(
                        "entry Sq^{i} on degree-{d} element outside the open range"
                    ));
                }
                if bits.len() != t.dim(d + i) {
                    failures.push(format!(
                        "entry Sq^{i}({}) has wrong target dimension",
                        t.basis[d as usize][idx]
                    ));
                }
            }
            // Cartan coherence on basis pairs.
            for d1 in 1..=t.n {
                for d2 in d1..=t.n {
                    if d1 + d2 > t.n {
                        break;
                    }
                    for i in 0..t.dim(d1) {
                        for j in 0..t.dim(d2) {
                            let u = model.ring.basis_class(d1, i);
                            let v = model.ring.basis_class(d2, j);
                            let uv = model.cup(&u, &v);
                            for k in 1..=(d1 + d2) {
                                let lhs = model.sq(k, &uv);
                                let mut rhs = model.ring.zero(d1 + d2 + k);
                                for a in 0..=k {
                                    let term =
                                        model.cup(&model.sq(a, &u), &model.sq(k - a, &v));
                                    rhs = rhs.add(&term);
                                }
                                if lhs != rhs {
                                    failures.push(format!(
                                        "Cartan failure: Sq^{k}({} * {})",
                                        t.basis[d1 as usize][i], t.basis[d2 as usize][j]
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        _ => failures.push("Steenrod table flavor does not match the ring backend".into()),
    }
    SqReport { failures }
}

/// Wu classes V_0..V_{n/2}: V_i is the unique solution of
/// <Sq^i u, [M]> = <V_i u, [M]> over all u in H^{n-i}, obtained by
/// inverting the Poincaré pairing.
pub fn wu_classes(model: &ManifoldModel) -> Result<Vec<Class>> {
    let n = model.n;
    let mut out = Vec::new();
    for i in 0..=n / 2 {
        if i == 0 {
            out.push(model.ring.one());
            continue;
        }
        let dim_i = model.dim(i);
        if dim_i == 0 {
            out.push(model.ring.zero(i));
            continue;
        }
        let dual = n - i;
        let dual_dim = model.dim(dual);
        let mut rhs = Bits::zeros(dual_dim);
        for j in 0..dual_dim {
            let u = model.ring.basis_class(dual, j);
            if model.kronecker(&model.sq(i, &u))? {
                rhs.set(j, true);
            }
        }
        let pairing = model.pairing_matrix(dual)?;
        let v = pairing.solve(&rhs).ok_or_else(|| {
            Error::Validation(format!("degenerate pairing while solving for V_{i}"))
        })?;
        out.push(Class {
            degree: i,
            coords: v,
        });
    }
    Ok(out)
}

/// Total Stiefel-Whitney class from the Wu classes:
/// w_k = sum over i of Sq^i(V_{k-i}).
pub fn sw_from_wu(model: &ManifoldModel) -> Result<TotalClass> {
    let v = wu_classes(model)?;
    let mut out = TotalClass::zero();
    for k in 0..=model.n {
        let mut acc = model.ring.zero(k);
        for i in 0..=k {
            let j = k - i;
            if (j as usize) < v.len() {
                acc = acc.add(&model.sq(i, &v[j as usize]));
            }
        }
        out.add_class(&acc);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct StarCertificate {
    pub k: u32,
    pub source_degree: i64,
    pub target_degree: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub holds: bool,
}

/// The surjectivity condition on Sq^2: H^{8k-1} -> H^{8k+1} for models of
/// dimension 8k+1 or 8k+2. Vacuously true when the target vanishes.
pub fn condition_star(model: &ManifoldModel) -> Result<StarCertificate> {
    let n = model.n;
    let k = match n % 8 {
        1 | 2 => n / 8,
        _ => {
            return Err(Error::DimensionMismatch(format!(
                "dimension {n} is not of the form 8k+1 or 8k+2"
            )))
        }
    };
    let target_degree = 8 * k + 1;
    let target_dim = model.dim(target_degree);
    let (source_degree, source_dim, rank) = if k == 0 {
        (-1i64, 0usize, 0usize)
    } else {
        let s = 8 * k - 1;
        let m = model.sq_matrix(2, s);
        (s as i64, model.dim(s), m.rank())
    };
    Ok(StarCertificate {
        k,
        source_degree,
        target_degree,
        source_dim,
        target_dim,
        rank,
        holds: rank == target_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cp2, grassmann, product, sphere};

    #[test]
    fn sq_instability_and_identity() {
        let m = cp2().unwrap();
        let a = m.ring.basis_class(2, 0);
        assert_eq!(m.sq(0, &a), a);
        assert_eq!(m.sq(2, &a), m.cup(&a, &a));
        assert!(m.sq(3, &a).is_zero());
        assert!(m.sq(1, &a).is_zero());
    }

    #[test]
    fn sq2_hits_the_degree_9_generator_of_g25() {
        let g = grassmann(2, 5).unwrap();
        let (r, x) = match &g.ring {
            crate::ring::RingBackend::Presented(r) => {
                let p = crate::gf2::parse_gf2_poly("w1^5*w2", &r.vars).unwrap();
                (r, p)
            }
            _ => unreachable!(),
        };
        let x = r.class_from_poly(&x, 7);
        assert!(!x.is_zero());
        let image = g.sq(2, &x);
        let expected_poly = crate::gf2::parse_gf2_poly("w1^5*w2^2", &r.vars).unwrap();
        let expected = r.class_from_poly(&expected_poly, 9);
        assert!(!expected.is_zero(), "w1^5*w2^2 must be nonzero in degree 9");
        assert_eq!(image, expected);
    }

    #[test]
    fn sq2_example_holds_in_g33_too() {
        let g = grassmann(3, 3).unwrap();
        let r = match &g.ring {
            crate::ring::RingBackend::Presented(r) => r,
            _ => unreachable!(),
        };
        let x = r.class_from_poly(&crate::gf2::parse_gf2_poly("w1^5*w2", &r.vars).unwrap(), 7);
        let expected = r.class_from_poly(
            &crate::gf2::parse_gf2_poly("w1^5*w2^2", &r.vars).unwrap(),
            9,
        );
        assert!(!expected.is_zero());
        assert_eq!(g.sq(2, &x), expected);
    }

    #[test]
    fn well_definedness_of_catalog_tables() {
        for m in [
            sphere(10).unwrap(),
            cp2().unwrap(),
            grassmann(3, 3).unwrap(),
            grassmann(2, 5).unwrap(),
        ] {
            let report = verify_sq_well_defined(&m);
            assert!(report.is_ok(), "{}: {:?}", m.name, report.failures);
        }
    }

    #[test]
    fn corrupted_table_is_detected() {
        let mut g = grassmann(3, 3).unwrap();
        if let (SqTable::Presented(entries), RingBackend::Presented(r)) = (&mut g.sq, &g.ring) {
            // Sq^1(w2) is w1*w2 + w3 by the Wu formula; corrupt it
            let bad = crate::gf2::parse_gf2_poly("w1^3", &r.vars).unwrap();
            entries.insert((1, 1), bad);
        }
        let report = verify_sq_well_defined(&g);
        assert!(!report.is_ok());
    }

    #[test]
    fn wu_classes_of_spheres_are_trivial() {
        let s = sphere(5).unwrap();
        let v = wu_classes(&s).unwrap();
        assert!(v[0] == s.ring.one());
        for vi in &v[1..] {
            assert!(vi.is_zero());
        }
        let w = sw_from_wu(&s).unwrap();
        assert_eq!(w, s.char_classes.w.clone().unwrap());
    }

    #[test]
    fn cp2_total_class_from_wu() {
        let m = cp2().unwrap();
        // V = 1 + a, so Sq(V) = 1 + a + a^2
        let v = wu_classes(&m).unwrap();
        assert_eq!(v[2], m.ring.basis_class(2, 0));
        let w = sw_from_wu(&m).unwrap();
        assert_eq!(w, m.char_classes.w.clone().unwrap());
    }

    #[test]
    fn condition_star_catalog_verdicts() {
        // 10 = 8 + 2: checks Sq^2: H^7 -> H^9
        let g25 = grassmann(2, 5).unwrap();
        let cert = condition_star(&g25).unwrap();
        assert_eq!((cert.k, cert.source_degree, cert.target_degree), (1, 7, 9));
        assert!(cert.holds);

        // 9 = 8 + 1 works as well
        assert!(condition_star(&grassmann(3, 3).unwrap()).unwrap().holds);

        // vacuous when the target vanishes
        assert!(condition_star(&sphere(10).unwrap()).unwrap().holds);

        // dimension gate
        assert!(condition_star(&cp2().unwrap()).is_err());

        // k = 0: the condition degenerates to H^1 = 0
        assert!(condition_star(&sphere(2).unwrap()).unwrap().holds);
        assert!(!condition_star(&sphere(1).unwrap()).unwrap().holds);
        assert!(!condition_star(&product(&sphere(1).unwrap(), &sphere(1).unwrap()).unwrap())
            .unwrap()
            .holds);
    }

    #[test]
    fn sq_matrix_ranks() {
        let g = grassmann(2, 5).unwrap();
        // target H^9 is one-dimensional and gets hit
        let m = g.sq_matrix(2, 7);
        assert_eq!(m.rows(), 1);
        assert_eq!(m.cols(), 2);
        assert_eq!(m.rank(), 1);
        // identity map sanity: Sq^0
        let m0 = g.sq_matrix(0, 4);
        assert!(m0.is_invertible());
    }
}
