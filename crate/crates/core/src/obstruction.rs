//! The decision layer: the subgroup D(M) of integral degree-2 classes with
//! half-integral squares, the degree-10 congruence criteria for stable
//! (almost) complex structures on manifolds and bundles, extension
//! guarantees from torsion bounds, coefficient-group lookups and the
//! low-degree obstruction shadows.

use crate::error::{Error, Result};
use crate::gf2::{Bits, Mat2};
use crate::integral::{IntegralClass, IntegralEvenRing};
use crate::ring::model::ManifoldModel;
use crate::ring::{Class, TotalClass};
use crate::steenrod::condition_star;
use crate::torsion::TorsionProfile;

/// Homotopy of the stable quotient SO/U in one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientGroup {
    Z,
    Z2,
    Zero,
}

impl std::fmt::Display for CoefficientGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoefficientGroup::Z => write!(f, "Z"),
            CoefficientGroup::Z2 => write!(f, "Z/2"),
            CoefficientGroup::Zero => write!(f, "0"),
        }
    }
}

/// Obstruction coefficient group in degree q >= 1: the integers for
/// q = 2 mod 4, order two for q = 0 or -1 mod 8, trivial otherwise.
pub fn coefficient_group(q: u32) -> CoefficientGroup {
    debug_assert!(q >= 1);
    if q % 4 == 2 {
        CoefficientGroup::Z
    } else if q.is_multiple_of(8) || q % 8 == 7 {
        CoefficientGroup::Z2
    } else {
        CoefficientGroup::Zero
    }
}

/// One named hypothesis check with its outcome.
#[derive(Debug, Clone)]
pub struct Gate {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn gate(name: &'static str, passed: bool, detail: impl Into<String>) -> Gate {
    Gate {
        name,
        passed,
        detail: detail.into(),
    }
}

/// The hypothesis gates of the degree-10 criteria: dimension, declared
/// torsion facts, presence of characteristic/integral data, compatibility
/// of c with w2, and surjectivity of Sq^2 onto the top-but-one degree.
pub fn hypothesis_gates(m: &ManifoldModel) -> Vec<Gate> {
    let mut gates = Vec::new();
    gates.push(gate(
        "dim_is_10",
        m.n == 10,
        format!("model dimension is {}", m.n),
    ));
    for (name, deg, p) in [
        ("no_2_torsion_h1", 1u32, 2u64),
        ("no_2_torsion_h2", 2, 2),
        ("no_2_torsion_h3", 3, 2),
        ("no_3_torsion_h1", 1, 3),
    ] {
        let ok = m.torsion.declares_homology_no_p(deg, p);
        gates.push(gate(
            name,
            ok,
            if ok {
                format!("declared: H_{deg} has no {p}-torsion")
            } else {
                format!("no declaration that H_{deg} lacks {p}-torsion")
            },
        ));
    }
    let data_ok = m.char_classes.w.is_some() && m.char_classes.c.is_some() && m.integral.is_some();
    gates.push(gate(
        "char_class_data",
        data_ok,
        if data_ok {
            "w, c and the integral companion are present".to_string()
        } else {
            "missing w, c or the integral companion".to_string()
        },
    ));
    let rho2_ok = match (&m.char_classes.c, m.w_component(2)) {
        (Some(c), Ok(w2)) => match m.rho2(c) {
            Ok(rc) => rc == w2,
            Err(_) => false,
        },
        _ => false,
    };
    gates.push(gate(
        "rho2_c_is_w2",
        rho2_ok,
        if rho2_ok {
            "rho2(c) equals w2".to_string()
        } else {
            "rho2(c) does not match w2 (or data missing)".to_string()
        },
    ));
    match condition_star(m) {
        Ok(cert) => gates.push(gate(
            "condition_star",
            cert.holds,
            format!(
                "Sq^2: H^{} -> H^{} has rank {} onto dimension {}",
                cert.source_degree, cert.target_degree, cert.rank, cert.target_dim
            ),
        )),
        Err(e) => gates.push(gate("condition_star", false, e.to_string())),
    }
    gates
}

fn require_gates(gates: &[Gate]) -> Result<()> {
    let failed: Vec<&str> = gates.iter().filter(|g| !g.passed).map(|g| g.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(failed.join(", ")))
    }
}

/// A generator of D(M) together with its half-class.
#[derive(Debug, Clone)]
pub struct DmanGenerator {
    pub x: IntegralClass,
    pub z: IntegralClass,
    /// Lifted from the mod-2 kernel, as opposed to a doubled lattice basis
    /// vector.
    pub from_kernel: bool,
}

#[derive(Debug, Clone)]
pub struct DmanResult {
    pub generators: Vec<DmanGenerator>,
    pub kernel_rank: usize,
}

fn lattice_of(m: &ManifoldModel) -> Result<&IntegralEvenRing> {
    m.integral
        .as_ref()
        .ok_or_else(|| Error::MissingData("no integral companion".into()))
}

fn c_of(m: &ManifoldModel) -> Result<&IntegralClass> {
    m.char_classes
        .c
        .as_ref()
        .ok_or_else(|| Error::MissingData("no integral lift c of w2".into()))
}

/// The half-class z with 2z = x^2 + c x, in the integral companion.
pub fn zx(m: &ManifoldModel, x: &IntegralClass) -> Result<IntegralClass> {
    let lattice = lattice_of(m)?;
    let c = c_of(m)?;
    let u = lattice.add(&lattice.zmul(x, x)?, &lattice.zmul(c, x)?)?;
    lattice.halve(&u)
}

/// Whether x^2 + c x is divisible by 2 in the companion.
fn in_dman(m: &ManifoldModel, x: &IntegralClass) -> Result<bool> {
    match zx(m, x) {
        Ok(_) => Ok(true),
        Err(Error::OddCoefficient(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Generators of D(M): integral lifts of a basis of the kernel of
/// y -> y^2 + w2 y on H^2(Z/2), followed by the doubled lattice basis of
/// H^2. The kernel map is linear over GF(2) by the Frobenius identity.
pub fn d_subgroup(m: &ManifoldModel) -> Result<DmanResult> {
    let lattice = lattice_of(m)?;
    let c = c_of(m)?;
    let w2 = m.rho2(c)?;
    let dim2 = m.dim(2);
    let dim4 = m.dim(4);

    let images: Vec<Bits> = (0..dim2)
        .map(|i| {
            let y = m.ring.basis_class(2, i);
            let sq = m.cup(&y, &y);
            let wy = m.cup(&w2, &y);
            sq.add(&wy).coords
        })
        .collect();
    let map = Mat2::from_cols(&images, dim4);
    let kernel = map.kernel_basis();
    let kernel_rank = kernel.len();

    let reduction = lattice.reduction_matrix(2, dim2);
    let mut generators = Vec::new();
    for y in kernel {
        let lift = reduction.solve(&y).ok_or_else(|| {
            Error::MissingData(
                "a mod-2 kernel class has no integral lift in the companion".into(),
            )
        })?;
        let mut x = lattice.zero(2);
        for i in lift.ones() {
            x.coords[i] = 1;
        }
        let z = zx(m, &x)?;
        generators.push(DmanGenerator {
            x,
            z,
            from_kernel: true,
        });
    }
    for i in 0..lattice.rank(2) {
        let x = lattice.scale(2, &lattice.basis_class(2, i))?;
        let z = zx(m, &x)?;
        generators.push(DmanGenerator {
            x,
            z,
            from_kernel: false,
        });
    }
    Ok(DmanResult {
        generators,
        kernel_rank,
    })
}

/// One congruence line of the manifold criterion:
/// <w4^2 rho2(x), [M]> against <Sq^2(rho2 z_x) w4, [M]>.
fn sacs_line(m: &ManifoldModel, x: &IntegralClass, z: &IntegralClass) -> Result<(bool, bool)> {
    let w4 = m.w_component(4)?;
    let rx = m.rho2(x)?;
    let rz = m.rho2(z)?;
    let lhs = m.kronecker(&m.cup(&m.cup(&w4, &w4), &rx))?;
    let rhs = m.kronecker(&m.cup(&m.sq(2, &rz), &w4))?;
    Ok((lhs, rhs))
}

#[derive(Debug, Clone)]
pub struct GeneratorCheck {
    pub x: IntegralClass,
    pub z: IntegralClass,
    /// The integer A for the bundle criterion; absent for the tangent form.
    pub a: Option<i64>,
    pub lhs: bool,
    pub rhs: bool,
}

impl GeneratorCheck {
    pub fn balances(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub admits: bool,
    pub w4_zero_shortcut: bool,
    pub generators: Vec<GeneratorCheck>,
    pub gates: Vec<Gate>,
}

/// Stable almost complex structure criterion for a 10-manifold model:
/// after the hypothesis gates, the verdict is positive exactly when the
/// congruence line balances for every generator of D(M). A vanishing w4
/// settles the verdict immediately.
pub fn check_sacs(m: &ManifoldModel) -> Result<Verdict> {
    let gates = hypothesis_gates(m);
    require_gates(&gates)?;
    let w4 = m.w_component(4)?;
    let w4_zero = w4.is_zero();

    let dman = match d_subgroup(m) {
        Ok(d) => d,
        Err(_) if w4_zero => {
            return Ok(Verdict {
                admits: true,
                w4_zero_shortcut: true,
                generators: Vec::new(),
                gates,
            })
        }
        Err(e) => return Err(e),
    };
    let mut generators = Vec::new();
    for g in &dman.generators {
        let (lhs, rhs) = sacs_line(m, &g.x, &g.z)?;
        generators.push(GeneratorCheck {
            x: g.x.clone(),
            z: g.z.clone(),
            a: None,
            lhs,
            rhs,
        });
    }
    let admits = w4_zero || generators.iter().all(|g| g.balances());
    Ok(Verdict {
        admits,
        w4_zero_shortcut: w4_zero,
        generators,
        gates,
    })
}

/// The rank-one special case: H^2(M;Z) generated by a single class h with
/// h^2 nonzero mod 2. Under the Theorem-2 gates the criterion then always
/// holds; the returned verdict carries the same certificate lines as
/// `check_sacs` and must agree with it.
pub fn corollary_h(m: &ManifoldModel) -> Result<Verdict> {
    let gates = hypothesis_gates(m);
    require_gates(&gates)?;
    let lattice = lattice_of(m)?;
    if lattice.rank(2) != 1 {
        return Err(Error::HypothesisViolated(format!(
            "H^2 companion has rank {}, the corollary needs rank 1",
            lattice.rank(2)
        )));
    }
    let h = lattice.basis_class(2, 0);
    let h2 = lattice.zmul(&h, &h)?;
    if m.rho2(&h2)?.is_zero() {
        return Err(Error::HypothesisViolated(
            "h^2 vanishes mod 2, the corollary needs h^2 nonzero mod 2".into(),
        ));
    }
    check_sacs(m)
}

/// A real bundle over the model: total Stiefel-Whitney class, first
/// Pontryagin class and an integral lift d of w2.
#[derive(Debug, Clone)]
pub struct BundleData {
    pub w: TotalClass,
    pub p1: IntegralClass,
    pub d: IntegralClass,
}

/// The tangent bundle with d = c, from the declared model data.
pub fn tangent_bundle(m: &ManifoldModel) -> Result<BundleData> {
    let w = m
        .char_classes
        .w
        .clone()
        .ok_or_else(|| Error::MissingData("no declared Stiefel-Whitney class".into()))?;
    let p1 = m
        .char_classes
        .p1
        .clone()
        .ok_or_else(|| Error::MissingData("no declared p1".into()))?;
    let d = c_of(m)?.clone();
    Ok(BundleData { w, p1, d })
}

/// The integer A for a bundle and a D(M) generator:
/// half of <x q1 (q1 - q1M), [M]> with q1 = (p1(xi) - d^2)/2 and
/// q1M = (p1(M) - c^2)/2. An odd pairing value violates integrality and is
/// rejected rather than rounded.
pub fn a_xi_x(m: &ManifoldModel, b: &BundleData, x: &IntegralClass) -> Result<i64> {
    let lattice = lattice_of(m)?;
    let c = c_of(m)?;
    let p1m = m
        .char_classes
        .p1
        .as_ref()
        .ok_or_else(|| Error::MissingData("no declared p1 for the base manifold".into()))?;

    let d2 = lattice.zmul(&b.d, &b.d)?;
    let q1 = lattice.halve(&lattice.add(&b.p1, &lattice.scale(-1, &d2)?)?)?;
    let c2 = lattice.zmul(c, c)?;
    let q1m = lattice.halve(&lattice.add(p1m, &lattice.scale(-1, &c2)?)?)?;
    let diff = lattice.add(&q1, &lattice.scale(-1, &q1m)?)?;
    let pairing = lattice.kronecker(&lattice.zmul(&lattice.zmul(x, &q1)?, &diff)?)?;
    if pairing % 2 != 0 {
        return Err(Error::IntegralityViolation(format!(
            "<x q1 (q1 - q1M), [M]> = {pairing} is odd"
        )));
    }
    Ok(pairing / 2)
}

/// One congruence line of the bundle criterion: A mod 2 against
/// <(w8 + w2 Sq^2 w4) rho2(x) + Sq^2(rho2 z_x) w4, [M]> with all classes
/// taken from the bundle.
fn scs_line(
    m: &ManifoldModel,
    b: &BundleData,
    x: &IntegralClass,
    z: &IntegralClass,
) -> Result<(i64, bool, bool)> {
    let a = a_xi_x(m, b, x)?;
    let lhs = a.rem_euclid(2) == 1;
    let w2 = m.ring.total_component(&b.w, 2);
    let w4 = m.ring.total_component(&b.w, 4);
    let w8 = m.ring.total_component(&b.w, 8);
    let rx = m.rho2(x)?;
    let rz = m.rho2(z)?;
    let first = m.cup(&w8.add(&m.cup(&w2, &m.sq(2, &w4))), &rx);
    let second = m.cup(&m.sq(2, &rz), &w4);
    let rhs = m.kronecker(&first.add(&second))?;
    Ok((a, lhs, rhs))
}

/// Stable complex structure criterion for an arbitrary real bundle over a
/// 10-manifold model. With the tangent data and d = c this specializes to
/// `check_sacs`.
pub fn check_bundle_scs(m: &ManifoldModel, b: &BundleData) -> Result<Verdict> {
    let mut gates = hypothesis_gates(m);
    let w2xi = m.ring.total_component(&b.w, 2);
    let bundle_ok = match m.rho2(&b.d) {
        Ok(rd) => rd == w2xi,
        Err(_) => false,
    };
    gates.push(gate(
        "rho2_d_is_w2_of_bundle",
        bundle_ok,
        if bundle_ok {
            "rho2(d) equals w2 of the bundle".to_string()
        } else {
            "rho2(d) does not match w2 of the bundle".to_string()
        },
    ));
    let p1_ok = m.char_classes.p1.is_some();
    gates.push(gate(
        "p1_of_base_present",
        p1_ok,
        if p1_ok {
            "p1(M) is declared".to_string()
        } else {
            "p1(M) is missing".to_string()
        },
    ));
    require_gates(&gates)?;

    let dman = d_subgroup(m)?;
    let mut generators = Vec::new();
    for g in &dman.generators {
        let (a, lhs, rhs) = scs_line(m, b, &g.x, &g.z)?;
        generators.push(GeneratorCheck {
            x: g.x.clone(),
            z: g.z.clone(),
            a: Some(a),
            lhs,
            rhs,
        });
    }
    let admits = generators.iter().all(|g| g.balances());
    Ok(Verdict {
        admits,
        w4_zero_shortcut: false,
        generators,
        gates,
    })
}

/// Exhaustive cross-check of generator sufficiency: enumerate all integral
/// degree-2 vectors with coefficients in {-2..2}, keep those lying in D(M),
/// and verify that the all-balance verdict matches the generator verdict.
pub fn exhaustive_dman_agrees(m: &ManifoldModel, b: Option<&BundleData>) -> Result<bool> {
    let lattice = lattice_of(m)?;
    let rank = lattice.rank(2);
    let generator_verdict = match b {
        Some(bundle) => check_bundle_scs(m, bundle)?.admits,
        None => check_sacs(m)?.admits,
    };
    let mut all_balance = true;
    let mut coeffs = vec![-2i64; rank];
    loop {
        let mut x = lattice.zero(2);
        x.coords.clone_from_slice(&coeffs);
        if in_dman(m, &x)? {
            let z = zx(m, &x)?;
            let (lhs, rhs) = match b {
                Some(bundle) => {
                    let (_, l, r) = scs_line(m, bundle, &x, &z)?;
                    (l, r)
                }
                None => sacs_line(m, &x, &z)?,
            };
            if lhs != rhs {
                all_balance = false;
            }
        }
        // next vector in the box
        let mut i = 0;
        loop {
            if i == rank {
                return Ok(all_balance == generator_verdict);
            }
            if coeffs[i] < 2 {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = -2;
            i += 1;
        }
    }
}

/// Exhaustive membership cross-check: over the coefficient box {-2..2},
/// a vector lies in D(M) exactly when its reduction falls in the mod-2
/// kernel spanned by the reductions of the computed generators.
pub fn exhaustive_dman_membership(m: &ManifoldModel) -> Result<bool> {
    let lattice = lattice_of(m)?;
    let dman = d_subgroup(m)?;
    let dim2 = m.dim(2);
    let span: Vec<Bits> = dman
        .generators
        .iter()
        .map(|g| m.rho2(&g.x).map(|c| c.coords))
        .collect::<Result<Vec<_>>>()?;
    let span_rank = Mat2::from_rows(span.clone(), dim2).rank();
    let in_span = |v: &Bits| -> bool {
        let mut rows = span.clone();
        rows.push(v.clone());
        Mat2::from_rows(rows, dim2).rank() == span_rank
    };
    let rank = lattice.rank(2);
    let mut coeffs = vec![-2i64; rank];
    loop {
        let mut x = lattice.zero(2);
        x.coords.clone_from_slice(&coeffs);
        let member = in_dman(m, &x)?;
        let reduced_in_kernel = in_span(&m.rho2(&x)?.coords);
        if member != reduced_in_kernel {
            return Ok(false);
        }
        let mut i = 0;
        loop {
            if i == rank {
                return Ok(true);
            }
            if coeffs[i] < 2 {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = -2;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Complex,
    Real,
    Symplectic,
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex" => Ok(Flavor::Complex),
            "real" => Ok(Flavor::Real),
            "symplectic" => Ok(Flavor::Symplectic),
            other => Err(Error::Parse(format!("unknown flavor '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExtensionGuarantee {
    pub flavor: Flavor,
    pub q: u32,
    pub target_degree: u32,
    pub required_primes: Vec<u64>,
    pub missing_primes: Vec<u64>,
    pub guaranteed: bool,
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in 2..=limit {
        if (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            out.push(p);
        }
    }
    out
}

/// Torsion-based guarantee that a stable bundle over the (2q-1)-skeleton
/// (complex flavor) or (4q-1)-skeleton (real and symplectic flavors)
/// extends: the obstruction is annihilated by (q-1)!, respectively by
/// (2q-1)! times 1 or 2 depending on the parity of q, so the absence of
/// the corresponding torsion primes in the target cohomology group forces
/// it to vanish.
pub fn extension_guarantee(
    q: u32,
    flavor: Flavor,
    profile: &TorsionProfile,
) -> ExtensionGuarantee {
    let (target_degree, mut required) = match flavor {
        Flavor::Complex => (2 * q + 1, primes_up_to(q.saturating_sub(1) as u64)),
        Flavor::Real => {
            let mut ps = primes_up_to((2 * q).saturating_sub(1) as u64);
            if q % 2 == 1 && !ps.contains(&2) {
                ps.push(2);
                ps.sort_unstable();
            }
            (4 * q + 1, ps)
        }
        Flavor::Symplectic => {
            let mut ps = primes_up_to((2 * q).saturating_sub(1) as u64);
            if q.is_multiple_of(2) && !ps.contains(&2) {
                ps.push(2);
                ps.sort_unstable();
            }
            (4 * q + 1, ps)
        }
    };
    required.dedup();
    let missing: Vec<u64> = required
        .iter()
        .copied()
        .filter(|&p| !profile.declares_cohomology_no_p(target_degree, p))
        .collect();
    ExtensionGuarantee {
        flavor,
        q,
        target_degree,
        guaranteed: missing.is_empty(),
        required_primes: required,
        missing_primes: missing,
    }
}

#[derive(Debug, Clone)]
pub struct ShadowReport {
    pub sq1_w2: Class,
    pub sq1_w6: Class,
    pub o3_guaranteed: bool,
    pub o7_guaranteed: bool,
}

/// Mod-2 shadows of the first two integral obstructions: the degree-3 and
/// degree-7 obstructions are Bockstein images of w2 and w6, so their mod-2
/// shadows are Sq^1 w2 and Sq^1 w6. A vanishing shadow plus declared
/// absence of 2-torsion in the receiving integral group forces the
/// obstruction itself to vanish, because Bockstein images are 2-torsion.
pub fn low_obstruction_shadow(m: &ManifoldModel, wclass: &TotalClass) -> ShadowReport {
    let w2 = m.ring.total_component(wclass, 2);
    let w6 = m.ring.total_component(wclass, 6);
    let sq1_w2 = m.sq(1, &w2);
    let sq1_w6 = m.sq(1, &w6);
    let o3_guaranteed = sq1_w2.is_zero() && m.torsion.declares_cohomology_no_p(3, 2);
    let o7_guaranteed = sq1_w6.is_zero() && m.torsion.declares_cohomology_no_p(7, 2);
    ShadowReport {
        sq1_w2,
        sq1_w6,
        o3_guaranteed,
        o7_guaranteed,
    }
}

/// Annihilator comparison: the classes of H^2(Z/2) whose cup product kills
/// Sq^2 of the reduction of integral degree-6 classes must form exactly
/// the reduction of D(M).
pub fn annihilator_check(m: &ManifoldModel) -> Result<bool> {
    let gates = hypothesis_gates(m);
    require_gates(&gates)?;
    let lattice = lattice_of(m)?;
    let dim2 = m.dim(2);

    // Functionals y -> <y * Sq^2 rho2(e), [M]> for integral degree-6 basis
    // classes e.
    let mut rows = Vec::new();
    for i in 0..lattice.rank(6) {
        let e = lattice.basis_class(6, i);
        let s = m.sq(2, &m.rho2(&e)?);
        let mut row = Bits::zeros(dim2);
        for j in 0..dim2 {
            let y = m.ring.basis_class(2, j);
            if m.kronecker(&m.cup(&y, &s))? {
                row.set(j, true);
            }
        }
        rows.push(row);
    }
    let annihilator = Mat2::from_rows(rows, dim2).kernel_basis();

    let dman = d_subgroup(m)?;
    let reductions: Vec<Bits> = dman
        .generators
        .iter()
        .map(|g| m.rho2(&g.x).map(|c| c.coords))
        .collect::<Result<Vec<_>>>()?;

    Ok(equal_spans(&annihilator, &reductions, dim2))
}

fn equal_spans(a: &[Bits], b: &[Bits], len: usize) -> bool {
    let rank = |vs: &[Bits]| Mat2::from_rows(vs.to_vec(), len).rank();
    let ra = rank(a);
    let rb = rank(b);
    if ra != rb {
        return false;
    }
    let mut all: Vec<Bits> = a.to_vec();
    all.extend(b.iter().cloned());
    rank(&all) == ra
}

#[derive(Debug, Clone)]
pub struct WuIdentityReport {
    pub v2_is_w2: bool,
    pub v4_is_w4_plus_w2_squared: bool,
    pub v5_is_zero: bool,
    pub w8_is_w4sq_plus_w2_fourth: bool,
}

impl WuIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.v2_is_w2
            && self.v4_is_w4_plus_w2_squared
            && self.v5_is_zero
            && self.w8_is_w4sq_plus_w2_fourth
    }
}

/// The universal degree-10 Wu identities: V2 = w2, V4 = w4 + w2^2, V5 = 0
/// and w8 = w4^2 + w2^4. A failure indicts the model's Steenrod table or
/// its declared characteristic classes.
pub fn wu_identities_10(m: &ManifoldModel) -> Result<WuIdentityReport> {
    if m.n != 10 {
        return Err(Error::DimensionMismatch(format!(
            "Wu identity suite needs dimension 10, got {}",
            m.n
        )));
    }
    let v = crate::steenrod::wu_classes(m)?;
    let w2 = m.w_component(2)?;
    let w4 = m.w_component(4)?;
    let w8 = m.w_component(8)?;
    let w2sq = m.cup(&w2, &w2);
    let report = WuIdentityReport {
        v2_is_w2: v[2] == w2,
        v4_is_w4_plus_w2_squared: v[4] == w4.add(&w2sq),
        v5_is_zero: v[5].is_zero(),
        w8_is_w4sq_plus_w2_fourth: w8 == m.cup(&w4, &w4).add(&m.cup(&w2sq, &w2sq)),
    };
    Ok(report)
}

/// Stable machine-readable rendering of a verdict: `key = value` lines.
pub fn verdict_machine_lines(v: &Verdict, m: &ManifoldModel) -> Vec<String> {
    let mut lines = Vec::new();
    lines.push(format!("admits = {}", v.admits));
    lines.push(format!("w4_zero_shortcut = {}", v.w4_zero_shortcut));
    let lattice = m.integral.as_ref();
    for (i, g) in v.generators.iter().enumerate() {
        let (xs, zs) = match lattice {
            Some(l) => (l.display(&g.x), l.display(&g.z)),
            None => ("?".to_string(), "?".to_string()),
        };
        lines.push(format!("generator.{i}.x = {xs}"));
        lines.push(format!("generator.{i}.z = {zs}"));
        if let Some(a) = g.a {
            lines.push(format!("generator.{i}.a = {a}"));
        }
        lines.push(format!("generator.{i}.lhs = {}", if g.lhs { 1 } else { 0 }));
        lines.push(format!("generator.{i}.rhs = {}", if g.rhs { 1 } else { 0 }));
    }
    for g in &v.gates {
        lines.push(format!(
            "gate.{} = {}",
            g.name,
            if g.passed { "pass" } else { "fail" }
        ));
    }
    lines
}
