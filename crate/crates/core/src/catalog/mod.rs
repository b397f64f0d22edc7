//! Constructors for the built-in model family: spheres, the complex
//! projective plane, real Grassmannians, products and connected sums.
//! Every constructor returns a fully populated model; products and
//! connected sums work on the table backend, exporting presented factors
//! first.

pub mod expr;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::gf2::{Bits, Monomial, MonomialOrder, PolyGF2, VarSet};
use crate::integral::{IntegralClass, IntegralEvenRing};
use crate::ring::model::{CharClassData, ManifoldModel};
use crate::ring::{presented_to_table, Class, Label, PresentedRing, RingBackend, TableRing, TotalClass};
use crate::steenrod::SqTable;
use crate::torsion::{TorsionFacts, TorsionProfile};

/// Largest Grassmannian (k*n) the constructor will build.
pub const GRASSMANN_SIZE_BOUND: u32 = 30;

/// The l-sphere: one generator in the top degree, trivial Steenrod action
/// in the open range, vanishing characteristic classes.
pub fn sphere(l: u32) -> Result<ManifoldModel> {
    if l < 1 {
        return Err(Error::DimensionMismatch("sphere dimension must be >= 1".into()));
    }
    let mut ring = TableRing::new(l);
    let gen = format!("s{l}");
    ring.push_basis(l, Label::ident(&gen))?;

    let mut lattice = IntegralEvenRing::new(l);
    if l.is_multiple_of(2) {
        lattice.push_basis(l, Label::ident(&gen), Bits::unit(1, 0))?;
    }
    let c = lattice.zero(2);
    let p1 = lattice.zero(4);

    let mut w = TotalClass::zero();
    w.add_class(&Class {
        degree: 0,
        coords: Bits::unit(1, 0),
    });

    Ok(ManifoldModel {
        name: format!("sphere({l})"),
        n: l,
        ring: RingBackend::Table(ring),
        sq: SqTable::empty_table(),
        char_classes: CharClassData {
            w: Some(w),
            p1: Some(p1),
            c: Some(c),
        },
        integral: Some(lattice),
        torsion: TorsionProfile::all_free(l),
    })
}

/// The complex projective plane: truncated ring on a degree-2 generator,
/// w = 1 + a + a^2, p1 = 3h^2, c = 3h.
pub fn cp2() -> Result<ManifoldModel> {
    let mut ring = TableRing::new(4);
    ring.push_basis(2, Label::ident("a"))?;
    let a2 = Label {
        factors: vec![("a".into(), 2)],
    };
    ring.push_basis(4, a2.clone())?;
    ring.set_product(2, 0, 2, 0, Bits::unit(1, 0));

    let mut lattice = IntegralEvenRing::new(4);
    lattice.push_basis(2, Label::ident("h"), Bits::unit(1, 0))?;
    let h2 = Label {
        factors: vec![("h".into(), 2)],
    };
    lattice.push_basis(4, h2, Bits::unit(1, 0))?;
    lattice.set_product(2, 0, 2, 0, vec![1]);

    let mut w = TotalClass::zero();
    w.add_class(&Class {
        degree: 0,
        coords: Bits::unit(1, 0),
    });
    w.add_class(&Class {
        degree: 2,
        coords: Bits::unit(1, 0),
    });
    w.add_class(&Class {
        degree: 4,
        coords: Bits::unit(1, 0),
    });

    let c = IntegralClass {
        degree: 2,
        coords: vec![3],
    };
    let p1 = IntegralClass {
        degree: 4,
        coords: vec![3],
    };

    // Sq^1(a) = 0 is the only open-range entry and zero entries are implicit.
    Ok(ManifoldModel {
        name: "cp2".into(),
        n: 4,
        ring: RingBackend::Table(ring),
        sq: SqTable::empty_table(),
        char_classes: CharClassData {
            w: Some(w),
            p1: Some(p1),
            c: Some(c),
        },
        integral: Some(lattice),
        torsion: TorsionProfile::all_free(4),
    })
}

/// Relations of the eliminated Borel presentation: the dual classes
/// wbar_{n+1}..wbar_{n+k} obtained by inverting the total class.
pub fn grassmann_relations(vars: &VarSet, k: u32, n: u32) -> Vec<PolyGF2> {
    let mut wbar: Vec<PolyGF2> = vec![PolyGF2::one(vars)];
    for j in 1..=(n + k) as usize {
        let mut p = PolyGF2::zero();
        for i in 1..=(k as usize).min(j) {
            let wi = PolyGF2::from_monomial(Monomial::var(vars, i - 1));
            p.add_assign(&wi.mul(&wbar[j - i]));
        }
        wbar.push(p);
    }
    wbar[(n as usize + 1)..=(n + k) as usize].to_vec()
}

/// Sq^i(w_j) by the Wu formula, with w_0 = 1 and w_m = 0 for m > k.
/// Binomial coefficients are taken mod 2 by Lucas' rule.
pub fn wu_formula_entry(vars: &VarSet, k: u32, i: u32, j: u32) -> PolyGF2 {
    let mut out = PolyGF2::zero();
    for t in 0..=i {
        // C(j + t - i - 1, t) mod 2; here i < j so the upper index is >= 0.
        let upper = (j + t).checked_sub(i + 1).expect("entry range requires i < j");
        if upper & t != t {
            continue;
        }
        let lower_index = i - t; // w_{i-t}
        let upper_index = j + t; // w_{j+t}
        if upper_index > k {
            continue;
        }
        let mut m = Monomial::one(vars);
        if lower_index > 0 {
            m = m.mul(&Monomial::var(vars, (lower_index - 1) as usize));
        }
        m = m.mul(&Monomial::var(vars, (upper_index - 1) as usize));
        out.add_assign(&PolyGF2::from_monomial(m));
    }
    out
}

/// The Grassmannian of k-planes in (n+k)-space as a presented mod-2 ring
/// with the Wu-formula Steenrod table. Characteristic-class and integral
/// data are intentionally absent: these models serve the mod-2 and Steenrod
/// operations only.
pub fn grassmann(k: u32, n: u32) -> Result<ManifoldModel> {
    if k < 1 || n < 1 {
        return Err(Error::DimensionMismatch("grassmann needs k, n >= 1".into()));
    }
    if k * n > GRASSMANN_SIZE_BOUND {
        return Err(Error::SizeBound(format!(
            "grassmann({k},{n}) has dimension {} > {GRASSMANN_SIZE_BOUND}",
            k * n
        )));
    }
    let vars = VarSet::new((1..=k).map(|i| (format!("w{i}"), i)).collect());
    let relations = grassmann_relations(&vars, k, n);
    let order = MonomialOrder::grevlex(vars.len());
    let ring = PresentedRing::new(vars.clone(), relations, order, k * n);

    let mut entries = BTreeMap::new();
    for j in 1..=k {
        for i in 1..j {
            let p = ring.gb.normal_form(&wu_formula_entry(&vars, k, i, j));
            if !p.is_zero() {
                entries.insert(((j - 1) as usize, i), p);
            }
        }
    }

    Ok(ManifoldModel {
        name: format!("grassmann({k},{n})"),
        n: k * n,
        ring: RingBackend::Presented(ring),
        sq: SqTable::Presented(entries),
        char_classes: CharClassData::default(),
        integral: None,
        torsion: TorsionProfile::empty(),
    })
}

/// Rewrite a presented-backend model over the equivalent table backend.
/// Basis order is preserved, so every stored coordinate vector stays valid.
pub fn to_table_model(m: &ManifoldModel) -> Result<ManifoldModel> {
    match &m.ring {
        RingBackend::Table(_) => Ok(m.clone()),
        RingBackend::Presented(r) => {
            let table = presented_to_table(r)?;
            let mut entries = BTreeMap::new();
            for d in 1..=r.top {
                for idx in 0..r.dim(d) {
                    let basis = m.ring.basis_class(d, idx);
                    for i in 1..d {
                        let img = m.sq(i, &basis);
                        if !img.is_zero() {
                            entries.insert((d, idx, i), img.coords);
                        }
                    }
                }
            }
            Ok(ManifoldModel {
                name: m.name.clone(),
                n: m.n,
                ring: RingBackend::Table(table),
                sq: SqTable::Table(entries),
                char_classes: m.char_classes.clone(),
                integral: m.integral.clone(),
                torsion: m.torsion.clone(),
            })
        }
    }
}

fn rename_idents(model: &mut ManifoldModel, f: &dyn Fn(&str) -> String) {
    if let RingBackend::Table(t) = &mut model.ring {
        for labels in &mut t.basis {
            for l in labels.iter_mut() {
                *l = l.rename(f);
            }
        }
        t.symbols = t
            .symbols
            .iter()
            .map(|(k, v)| (f(k), *v))
            .collect();
    }
    if let Some(lat) = &mut model.integral {
        for labels in lat.basis.values_mut() {
            for l in labels.iter_mut() {
                *l = l.rename(f);
            }
        }
        lat.symbols = lat
            .symbols
            .iter()
            .map(|(k, v)| (f(k), *v))
            .collect();
    }
}

fn ident_names(model: &ManifoldModel) -> BTreeSet<String> {
    let mut names = BTreeSet::new();
    if let RingBackend::Table(t) = &model.ring {
        names.extend(t.symbols.keys().cloned());
    }
    if let Some(lat) = &model.integral {
        names.extend(lat.symbols.keys().cloned());
    }
    names
}

/// Position bookkeeping for tensor-product bases.
struct TensorIndex {
    pos: BTreeMap<(u32, usize, u32, usize), (u32, usize)>,
    pairs: Vec<(u32, usize, u32, usize)>,
}

impl TensorIndex {
    fn tensor_bits(&self, da: u32, ca: &Bits, db: u32, cb: &Bits, dim: usize) -> Bits {
        let mut out = Bits::zeros(dim);
        for i in ca.ones() {
            for j in cb.ones() {
                let (_, idx) = self.pos[&(da, i, db, j)];
                out.flip(idx);
            }
        }
        out
    }
}

/// Cartesian product via the Künneth theorem over GF(2). The basis is the
/// set of pairs of factor basis elements; Steenrod entries come from the
/// Cartan formula across the factors; integral companions are tensored when
/// both factors carry one and are declared torsion-free.
pub fn product(a: &ManifoldModel, b: &ManifoldModel) -> Result<ManifoldModel> {
    let left = to_table_model(a)?;
    let mut right = to_table_model(b)?;

    // Disambiguate identifier collisions by suffixing the right factor.
    let left_names = ident_names(&left);
    let right_names = ident_names(&right);
    let mut rename_map: BTreeMap<String, String> = BTreeMap::new();
    let mut taken: BTreeSet<String> = left_names.union(&right_names).cloned().collect();
    for name in &right_names {
        if left_names.contains(name) {
            let mut k = 2;
            loop {
                let candidate = format!("{name}_{k}");
                if !taken.contains(&candidate) {
                    taken.insert(candidate.clone());
                    rename_map.insert(name.clone(), candidate);
                    break;
                }
                k += 1;
            }
        }
    }
    if !rename_map.is_empty() {
        rename_idents(&mut right, &|s: &str| {
            rename_map.get(s).cloned().unwrap_or_else(|| s.to_string())
        });
    }

    let n = left.n + right.n;
    let (lt, rt) = match (&left.ring, &right.ring) {
        (RingBackend::Table(lt), RingBackend::Table(rt)) => (lt, rt),
        _ => unreachable!(),
    };

    let mut ring = TableRing::new(n);
    let mut index = TensorIndex {
        pos: BTreeMap::new(),
        pairs: Vec::new(),
    };
    index.pos.insert((0, 0, 0, 0), (0, 0));
    index.pairs.push((0, 0, 0, 0));
    for d in 1..=n {
        for d1 in 0..=d.min(left.n) {
            let d2 = d - d1;
            if d2 > right.n {
                continue;
            }
            for i in 0..lt.dim(d1) {
                for j in 0..rt.dim(d2) {
                    let label = lt.basis[d1 as usize][i].concat(&rt.basis[d2 as usize][j]);
                    let idx = ring.push_basis(d, label)?;
                    index.pos.insert((d1, i, d2, j), (d, idx));
                    index.pairs.push((d1, i, d2, j));
                }
            }
        }
    }

    // Multiplication table: (u1 x v1)(u2 x v2) = (u1 u2) x (v1 v2).
    for (p, &(d1, i1, d2, j1)) in index.pairs.iter().enumerate() {
        for &(e1, i2, e2, j2) in index.pairs.iter().skip(p) {
            let da = d1 + d2;
            let db = e1 + e2;
            if da == 0 || db == 0 || da + db > n {
                continue;
            }
            let pa = lt.mul_basis(d1, i1, e1, i2);
            let pb = rt.mul_basis(d2, j1, e2, j2);
            if pa.is_zero() || pb.is_zero() {
                continue;
            }
            let coords = index.tensor_bits(d1 + e1, &pa, d2 + e2, &pb, ring.dim(da + db));
            let (_, ia) = index.pos[&(d1, i1, d2, j1)];
            let (_, ib) = index.pos[&(e1, i2, e2, j2)];
            ring.set_product(da, ia, db, ib, coords);
        }
    }

    // Steenrod entries across the factors.
    let mut sq_entries = BTreeMap::new();
    for &(d1, i, d2, j) in &index.pairs {
        let d = d1 + d2;
        if d == 0 {
            continue;
        }
        let (_, idx) = index.pos[&(d1, i, d2, j)];
        for s in 1..d {
            if d + s > n {
                break;
            }
            let mut coords = Bits::zeros(ring.dim(d + s));
            for p in 0..=s {
                let q = s - p;
                let ua = left.sq(p, &left.ring.basis_class(d1, i));
                let vb = right.sq(q, &right.ring.basis_class(d2, j));
                if ua.is_zero() || vb.is_zero() {
                    continue;
                }
                coords.xor_assign(&index.tensor_bits(
                    d1 + p,
                    &ua.coords,
                    d2 + q,
                    &vb.coords,
                    ring.dim(d + s),
                ));
            }
            if !coords.is_zero() {
                sq_entries.insert((d, idx, s), coords);
            }
        }
    }

    let ring = RingBackend::Table(ring);

    // Total Stiefel-Whitney class of the product.
    let w = match (&left.char_classes.w, &right.char_classes.w) {
        (Some(wa), Some(wb)) => {
            let mut w = TotalClass::zero();
            for (da, ca) in &wa.parts {
                for (db, cb) in &wb.parts {
                    if da + db > n {
                        continue;
                    }
                    let coords =
                        index.tensor_bits(*da, ca, *db, cb, ring.dim(da + db));
                    w.add_class(&Class {
                        degree: da + db,
                        coords,
                    });
                }
            }
            Some(w)
        }
        _ => None,
    };

    // Integral companion: tensor of free lattices, Tor-free by declaration.
    let both_free = left.torsion.is_all_free(left.n) && right.torsion.is_all_free(right.n);
    let mut integral = None;
    let mut c = None;
    let mut p1 = None;
    if both_free {
        if let (Some(la), Some(lb)) = (&left.integral, &right.integral) {
            let mut lattice = IntegralEvenRing::new(n);
            let mut ipos: BTreeMap<(u32, usize, u32, usize), (u32, usize)> = BTreeMap::new();
            let mut ipairs: Vec<(u32, usize, u32, usize)> = Vec::new();
            ipos.insert((0, 0, 0, 0), (0, 0));
            ipairs.push((0, 0, 0, 0));
            for d in (2..=n).step_by(2) {
                for da in (0..=d.min(left.n)).step_by(2) {
                    let db = d - da;
                    if db > right.n {
                        continue;
                    }
                    for i in 0..la.rank(da) {
                        for j in 0..lb.rank(db) {
                            let label = la.label(da, i).concat(lb.label(db, j));
                            let ra = la
                                .reduction_of_basis(da, i)
                                .cloned()
                                .unwrap_or_else(|| Bits::unit(1, 0));
                            let rb = lb
                                .reduction_of_basis(db, j)
                                .cloned()
                                .unwrap_or_else(|| Bits::unit(1, 0));
                            let reduction =
                                index.tensor_bits(da, &ra, db, &rb, ring.dim(d));
                            let idx = lattice.push_basis(d, label, reduction)?;
                            ipos.insert((da, i, db, j), (d, idx));
                            ipairs.push((da, i, db, j));
                        }
                    }
                }
            }
            for (p, &(da, ia, db, ja)) in ipairs.iter().enumerate() {
                for &(ea, ib, eb, jb) in ipairs.iter().skip(p) {
                    let dx = da + db;
                    let dy = ea + eb;
                    if dx == 0 || dy == 0 || dx + dy > n {
                        continue;
                    }
                    let xa = la.zmul(&la.basis_class(da, ia), &la.basis_class(ea, ib))?;
                    let xb = lb.zmul(&lb.basis_class(db, ja), &lb.basis_class(eb, jb))?;
                    let mut coeffs = vec![0i64; lattice.rank(dx + dy)];
                    for (u, &cu) in xa.coords.iter().enumerate() {
                        if cu == 0 {
                            continue;
                        }
                        for (v, &cv) in xb.coords.iter().enumerate() {
                            if cv == 0 {
                                continue;
                            }
                            let (_, k) = ipos[&(da + ea, u, db + eb, v)];
                            let term = cu
                                .checked_mul(cv)
                                .ok_or_else(|| Error::Overflow("tensor product".into()))?;
                            coeffs[k] = coeffs[k]
                                .checked_add(term)
                                .ok_or_else(|| Error::Overflow("tensor product".into()))?;
                        }
                    }
                    let (_, ka) = ipos[&(da, ia, db, ja)];
                    let (_, kb) = ipos[&(ea, ib, eb, jb)];
                    lattice.set_product(dx, ka, dy, kb, coeffs);
                }
            }
            // Even total dimension built from two odd factors: the lattice
            // misses the fundamental class, adjoin it explicitly.
            if n % 2 == 0 && lattice.rank(n) == 0 {
                let top_reduction = Bits::unit(ring.dim(n), 0);
                lattice.push_basis(n, Label::ident(&format!("vol{n}")), top_reduction)?;
            }

            // Embed c = c_a x 1 + 1 x c_b, and p1 likewise.
            let embed_sum = |xa: &IntegralClass,
                             xb: &IntegralClass,
                             lattice: &IntegralEvenRing|
             -> IntegralClass {
                let d = xa.degree;
                let mut out = lattice.zero(d);
                for (i, &coef) in xa.coords.iter().enumerate() {
                    if coef != 0 {
                        let (_, k) = ipos[&(d, i, 0, 0)];
                        out.coords[k] += coef;
                    }
                }
                for (j, &coef) in xb.coords.iter().enumerate() {
                    if coef != 0 {
                        let (_, k) = ipos[&(0, 0, d, j)];
                        out.coords[k] += coef;
                    }
                }
                out
            };
            if let (Some(ca), Some(cb)) = (&left.char_classes.c, &right.char_classes.c) {
                c = Some(embed_sum(ca, cb, &lattice));
            }
            if let (Some(pa), Some(pb)) = (&left.char_classes.p1, &right.char_classes.p1) {
                p1 = Some(embed_sum(pa, pb, &lattice));
            }
            integral = Some(lattice);
        }
    }

    let torsion = if both_free {
        TorsionProfile::all_free(n)
    } else {
        TorsionProfile::empty()
    };

    Ok(ManifoldModel {
        name: format!("product({},{})", left.name, right.name),
        n,
        ring,
        sq: SqTable::Table(sq_entries),
        char_classes: CharClassData { w, p1, c },
        integral,
        torsion,
    })
}

/// Connected sum: middle degrees are the direct sum with vanishing cross
/// products, both fundamental classes are identified with a single shared
/// top class, and the Steenrod action is inherited summand-wise.
pub fn connsum(a: &ManifoldModel, b: &ManifoldModel) -> Result<ManifoldModel> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(format!(
            "connected sum needs equal dimensions, got {} and {}",
            a.n, b.n
        )));
    }
    let n = a.n;
    if a.dim(n) != 1 || b.dim(n) != 1 {
        return Err(Error::Validation(
            "connected sum requires 1-dimensional top degrees".into(),
        ));
    }
    let mut left = to_table_model(a)?;
    let mut right = to_table_model(b)?;
    rename_idents(&mut left, &|s: &str| format!("{s}_1"));
    rename_idents(&mut right, &|s: &str| format!("{s}_2"));

    let (lt, rt) = match (&left.ring, &right.ring) {
        (RingBackend::Table(lt), RingBackend::Table(rt)) => (lt, rt),
        _ => unreachable!(),
    };

    let mut ring = TableRing::new(n);
    // Position of each summand middle basis element in the merged ring.
    let mut lpos: BTreeMap<(u32, usize), usize> = BTreeMap::new();
    let mut rpos: BTreeMap<(u32, usize), usize> = BTreeMap::new();
    for d in 1..n {
        for i in 0..lt.dim(d) {
            let idx = ring.push_basis(d, lt.basis[d as usize][i].clone())?;
            lpos.insert((d, i), idx);
        }
        for i in 0..rt.dim(d) {
            let idx = ring.push_basis(d, rt.basis[d as usize][i].clone())?;
            rpos.insert((d, i), idx);
        }
    }
    ring.push_basis(n, Label::ident("top"))?;

    // Embed a summand class; a top-degree class collapses onto the shared
    // top via its coefficient.
    let embed = |cls: &Class, pos: &BTreeMap<(u32, usize), usize>, dim: usize| -> Bits {
        let mut out = Bits::zeros(dim);
        if cls.degree == n {
            if !cls.is_zero() && cls.coords.get(0) {
                out.set(dim - 1, true);
            }
            return out;
        }
        for i in cls.coords.ones() {
            out.set(pos[&(cls.degree, i)], true);
        }
        out
    };

    for (t, pos) in [(lt, &lpos), (rt, &rpos)] {
        for d1 in 1..n {
            for d2 in d1..n {
                if d1 + d2 > n {
                    break;
                }
                for i in 0..t.dim(d1) {
                    for j in 0..t.dim(d2) {
                        if d1 == d2 && j < i {
                            continue;
                        }
                        let prod = Class {
                            degree: d1 + d2,
                            coords: t.mul_basis(d1, i, d2, j),
                        };
                        if prod.is_zero() {
                            continue;
                        }
                        let coords = embed(&prod, pos, ring.dim(d1 + d2));
                        ring.set_product(d1, pos[&(d1, i)], d2, pos[&(d2, j)], coords);
                    }
                }
            }
        }
    }

    let mut sq_entries = BTreeMap::new();
    for (pos, model) in [(&lpos, &left), (&rpos, &right)] {
        for (&(d, i), &idx) in pos.iter() {
            for s in 1..d {
                if d + s > n {
                    break;
                }
                let img = model.sq(s, &model.ring.basis_class(d, i));
                if img.is_zero() {
                    continue;
                }
                let coords = embed(&img, pos, ring.dim(d + s));
                if !coords.is_zero() {
                    sq_entries.insert((d, idx, s), coords);
                }
            }
        }
    }

    let ring = RingBackend::Table(ring);

    let w = match (&left.char_classes.w, &right.char_classes.w) {
        (Some(wa), Some(wb)) => {
            let mut w = TotalClass::zero();
            w.add_class(&Class {
                degree: 0,
                coords: Bits::unit(1, 0),
            });
            for (t, pos) in [(wa, &lpos), (wb, &rpos)] {
                for (d, coords) in &t.parts {
                    if *d == 0 {
                        continue;
                    }
                    let cls = Class {
                        degree: *d,
                        coords: coords.clone(),
                    };
                    w.add_class(&Class {
                        degree: *d,
                        coords: embed(&cls, pos, ring.dim(*d)),
                    });
                }
            }
            Some(w)
        }
        _ => None,
    };

    // Integral companion merged the same way.
    let mut integral = None;
    let mut c = None;
    let mut p1 = None;
    if let (Some(la), Some(lb)) = (&left.integral, &right.integral) {
        if n % 2 == 1 || (la.rank(n) == 1 && lb.rank(n) == 1) {
            let mut lattice = IntegralEvenRing::new(n);
            let mut ilpos: BTreeMap<(u32, usize), usize> = BTreeMap::new();
            let mut irpos: BTreeMap<(u32, usize), usize> = BTreeMap::new();
            for d in (2..n).step_by(2) {
                for i in 0..la.rank(d) {
                    let red = la
                        .reduction_of_basis(d, i)
                        .map(|bits| {
                            embed(
                                &Class {
                                    degree: d,
                                    coords: bits.clone(),
                                },
                                &lpos,
                                ring.dim(d),
                            )
                        })
                        .unwrap_or_else(|| Bits::zeros(ring.dim(d)));
                    let idx = lattice.push_basis(d, la.label(d, i).clone(), red)?;
                    ilpos.insert((d, i), idx);
                }
                for i in 0..lb.rank(d) {
                    let red = lb
                        .reduction_of_basis(d, i)
                        .map(|bits| {
                            embed(
                                &Class {
                                    degree: d,
                                    coords: bits.clone(),
                                },
                                &rpos,
                                ring.dim(d),
                            )
                        })
                        .unwrap_or_else(|| Bits::zeros(ring.dim(d)));
                    let idx = lattice.push_basis(d, lb.label(d, i).clone(), red)?;
                    irpos.insert((d, i), idx);
                }
            }
            if n.is_multiple_of(2) {
                lattice.push_basis(n, Label::ident("top"), Bits::unit(ring.dim(n), 0))?;
            }

            for (lat, ipos) in [(la, &ilpos), (lb, &irpos)] {
                for d1 in (2..n).step_by(2) {
                    for d2 in (d1..n).step_by(2) {
                        if d1 + d2 > n {
                            break;
                        }
                        for i in 0..lat.rank(d1) {
                            for j in 0..lat.rank(d2) {
                                if d1 == d2 && j < i {
                                    continue;
                                }
                                let prod =
                                    lat.zmul(&lat.basis_class(d1, i), &lat.basis_class(d2, j))?;
                                if prod.is_zero() {
                                    continue;
                                }
                                let mut coeffs = vec![0i64; lattice.rank(d1 + d2)];
                                if d1 + d2 == n {
                                    coeffs[lattice.rank(n) - 1] = prod.coords[0];
                                } else {
                                    for (u, &cu) in prod.coords.iter().enumerate() {
                                        if cu != 0 {
                                            coeffs[ipos[&(d1 + d2, u)]] = cu;
                                        }
                                    }
                                }
                                lattice.set_product(
                                    d1,
                                    ipos[&(d1, i)],
                                    d2,
                                    ipos[&(d2, j)],
                                    coeffs,
                                );
                            }
                        }
                    }
                }
            }

            let embed_int = |xa: &IntegralClass,
                             xb: &IntegralClass,
                             lattice: &IntegralEvenRing|
             -> IntegralClass {
                let d = xa.degree;
                let mut out = lattice.zero(d);
                for (i, &coef) in xa.coords.iter().enumerate() {
                    if coef != 0 {
                        out.coords[ilpos[&(d, i)]] = coef;
                    }
                }
                for (i, &coef) in xb.coords.iter().enumerate() {
                    if coef != 0 {
                        out.coords[irpos[&(d, i)]] = coef;
                    }
                }
                out
            };
            if let (Some(ca), Some(cb)) = (&left.char_classes.c, &right.char_classes.c) {
                c = Some(embed_int(ca, cb, &lattice));
            }
            if let (Some(pa), Some(pb)) = (&left.char_classes.p1, &right.char_classes.p1) {
                p1 = Some(embed_int(pa, pb, &lattice));
            }
            integral = Some(lattice);
        }
    }

    // Middle-degree homology is the direct sum, so torsion facts intersect.
    let mut torsion = TorsionProfile::empty();
    torsion.facts.insert(0, TorsionFacts::Free);
    torsion.facts.insert(n, TorsionFacts::Free);
    for d in 1..n {
        if let (Some(fa), Some(fb)) = (left.torsion.facts.get(&d), right.torsion.facts.get(&d)) {
            torsion.facts.insert(d, fa.meet(fb));
        }
    }

    Ok(ManifoldModel {
        name: format!("connsum({},{})", left.name, right.name),
        n,
        ring,
        sq: SqTable::Table(sq_entries),
        char_classes: CharClassData { w, p1, c },
        integral,
        torsion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::model::ManifoldModel;

    fn m1() -> ManifoldModel {
        product(
            &cp2().unwrap(),
            &product(&sphere(5).unwrap(), &sphere(1).unwrap()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn sphere_shape() {
        let s = sphere(10).unwrap();
        for d in 0..=10 {
            let expected = usize::from(d == 0 || d == 10);
            assert_eq!(s.dim(d), expected, "degree {d}");
        }
        assert!(s.validate().is_ok(), "{:?}", s.validate().violations);
        assert_eq!(sphere(1).unwrap().dim(1), 1);
        assert!(sphere(0).is_err());
    }

    #[test]
    fn cp2_shape() {
        let m = cp2().unwrap();
        assert_eq!(m.dim(4), 1);
        assert_eq!(m.dim(2), 1);
        let report = m.validate();
        assert!(report.is_ok(), "{:?}", report.violations);
        // w2 = a and rho2(c) = a
        let w2 = m.w_component(2).unwrap();
        assert!(!w2.is_zero());
        let rc = m.rho2(m.char_classes.c.as_ref().unwrap()).unwrap();
        assert_eq!(rc, w2);
        // h * h = h^2 with coefficient 1, and 3h reduces to a
        let lat = m.integral.as_ref().unwrap();
        let h = lat.basis_class(2, 0);
        let h2 = lat.zmul(&h, &h).unwrap();
        assert_eq!(h2.coords, vec![1]);
        let three_h = lat.scale(3, &h).unwrap();
        assert_eq!(lat.rho2(&three_h, m.dim(2)), w2);
        // p1 = 3h^2 reduces to a^2
        let p1 = m.char_classes.p1.as_ref().unwrap();
        let a2 = m.ring.basis_class(4, 0);
        assert_eq!(m.rho2(p1).unwrap(), a2);
    }

    #[test]
    fn grassmann_dims_match_paper() {
        let g33 = grassmann(3, 3).unwrap();
        assert_eq!(g33.n, 9);
        let total: usize = (0..=9).map(|d| g33.dim(d)).sum();
        assert_eq!(total, 20);
        assert_eq!(g33.dim(9), 1);
        assert!(g33.validate().is_ok(), "{:?}", g33.validate().violations);

        let g25 = grassmann(2, 5).unwrap();
        assert_eq!(g25.n, 10);
        assert_eq!(g25.dim(9), 1);
        let total: usize = (0..=10).map(|d| g25.dim(d)).sum();
        assert_eq!(total, 21);
        assert!(g25.validate().is_ok(), "{:?}", g25.validate().violations);

        assert!(grassmann(6, 6).is_err());
        assert!(grassmann(0, 3).is_err());
    }

    #[test]
    fn grassmann_1_n_is_projective_space() {
        let rp = grassmann(1, 4).unwrap();
        for d in 0..=4 {
            assert_eq!(rp.dim(d), 1);
        }
        assert_eq!(rp.dim(5), 0);
    }

    #[test]
    fn kuenneth_of_spheres() {
        let m = product(&sphere(5).unwrap(), &sphere(1).unwrap()).unwrap();
        let betti: Vec<usize> = (0..=6).map(|d| m.dim(d)).collect();
        assert_eq!(betti, vec![1, 1, 0, 0, 0, 1, 1]);
        assert!(m.validate().is_ok(), "{:?}", m.validate().violations);
        // the even companion picks up the fundamental class
        let lat = m.integral.as_ref().unwrap();
        assert_eq!(lat.rank(6), 1);
    }

    #[test]
    fn m1_structure() {
        let m = m1();
        assert_eq!(m.n, 10);
        assert_eq!(m.dim(7), 1);
        assert_eq!(m.dim(9), 1);
        let report = m.validate();
        assert!(report.is_ok(), "{:?}", report.violations);
        // Kuenneth top class pairs to 1
        let top = m.ring.basis_class(10, 0);
        assert!(m.kronecker(&top).unwrap());
        // Sq^2 on H^7 hits H^9
        let a_s5 = m.ring.basis_class(7, 0);
        let image = m.sq(2, &a_s5);
        assert_eq!(image, m.ring.basis_class(9, 0));
        // companion carries all even degrees
        let lat = m.integral.as_ref().unwrap();
        for d in [0u32, 2, 4, 6, 8, 10] {
            assert_eq!(lat.rank(d), 1, "integral rank at degree {d}");
        }
    }

    #[test]
    fn product_name_collisions_are_suffixed() {
        let m = product(&sphere(5).unwrap(), &sphere(5).unwrap()).unwrap();
        assert_eq!(m.dim(5), 2);
        // basis order is ascending left-factor degree, so the right
        // factor's class comes first here
        let labels: Vec<String> = (0..2)
            .map(|i| m.ring.label_string(5, i))
            .collect();
        assert_eq!(labels, vec!["s5_2".to_string(), "s5".to_string()]);
        assert!(m.validate().is_ok());
    }

    #[test]
    fn connsum_doubles_middle_degrees() {
        let m = m1();
        let c2 = connsum(&m, &m).unwrap();
        assert_eq!(c2.dim(2), 2);
        assert_eq!(c2.dim(9), 2);
        assert_eq!(c2.dim(10), 1);
        assert_eq!(c2.dim(0), 1);
        let report = c2.validate();
        assert!(report.is_ok(), "{:?}", report.violations);
        // cross products of middle classes vanish
        let a1 = c2.ring.basis_class(2, 0);
        let a2 = c2.ring.basis_class(2, 1);
        assert!(c2.cup(&a1, &a2).is_zero());
        // within-summand top products land on the shared top
        let x = c2.ring.basis_class(2, 0);
        let y = c2.ring.basis_class(8, 0);
        assert!(c2.kronecker(&c2.cup(&x, &y)).unwrap());
    }

    #[test]
    fn connsum_of_spheres_is_a_sphere() {
        let s = sphere(10).unwrap();
        let c = connsum(&s, &s).unwrap();
        for d in 1..10 {
            assert_eq!(c.dim(d), 0);
        }
        assert_eq!(c.dim(10), 1);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn connsum_dimension_mismatch() {
        assert!(connsum(&sphere(4).unwrap(), &sphere(6).unwrap()).is_err());
    }

    #[test]
    fn product_associativity_dims_and_triple_products() {
        let a = cp2().unwrap();
        let b = sphere(2).unwrap();
        let c = sphere(4).unwrap();
        let left = product(&product(&a, &b).unwrap(), &c).unwrap();
        let right = product(&a, &product(&b, &c).unwrap()).unwrap();
        assert_eq!(left.n, right.n);
        for d in 0..=left.n {
            assert_eq!(left.dim(d), right.dim(d), "degree {d}");
        }
        // all Kronecker-paired triple products agree under the dimension-
        // preserving relabeling (basis orders may differ, so compare via
        // sorted pairing fingerprints per degree split)
        for d1 in 1..left.n {
            for d2 in 1..left.n {
                let d3 = left.n.checked_sub(d1 + d2);
                let Some(d3) = d3 else { continue };
                if d3 == 0 {
                    continue;
                }
                let mut fp_left = Vec::new();
                let mut fp_right = Vec::new();
                for (m, fp) in [(&left, &mut fp_left), (&right, &mut fp_right)] {
                    for i in 0..m.dim(d1) {
                        for j in 0..m.dim(d2) {
                            for k in 0..m.dim(d3) {
                                let p = m.cup(
                                    &m.cup(&m.ring.basis_class(d1, i), &m.ring.basis_class(d2, j)),
                                    &m.ring.basis_class(d3, k),
                                );
                                fp.push(m.kronecker(&p).unwrap());
                            }
                        }
                    }
                    fp.sort();
                }
                assert_eq!(fp_left, fp_right, "split {d1}+{d2}+{d3}");
            }
        }
    }

    #[test]
    fn euler_characteristic_of_connected_sum() {
        let chi = |m: &ManifoldModel| -> i64 {
            (0..=m.n)
                .map(|d| {
                    let sign = if d % 2 == 0 { 1 } else { -1 };
                    sign * m.dim(d) as i64
                })
                .sum()
        };
        let a = product(&sphere(2).unwrap(), &sphere(8).unwrap()).unwrap();
        let b = m1();
        let c = connsum(&a, &b).unwrap();
        assert_eq!(chi(&c), chi(&a) + chi(&b) - 2);
    }

    #[test]
    fn export_preserves_products() {
        let g = grassmann(2, 2).unwrap();
        let t = to_table_model(&g).unwrap();
        assert!(t.validate().is_ok(), "{:?}", t.validate().violations);
        for d1 in 0..=g.n {
            for d2 in 0..=(g.n - d1) {
                for i in 0..g.dim(d1) {
                    for j in 0..g.dim(d2) {
                        let a = g.ring.basis_class(d1, i);
                        let b = g.ring.basis_class(d2, j);
                        assert_eq!(g.cup(&a, &b).coords, t.cup(&a, &b).coords);
                    }
                }
            }
        }
        // Steenrod action carries over
        for d in 1..=g.n {
            for i in 0..g.dim(d) {
                for s in 1..d {
                    let x = g.ring.basis_class(d, i);
                    assert_eq!(g.sq(s, &x).coords, t.sq(s, &x).coords);
                }
            }
        }
    }
}
