//! Line-oriented model and bundle file formats.
//!
//! A model file has `[meta]` (name, dim) plus either a presented backend
//! (`[generators]`, `[relations]`) or a table backend (`[basis]`,
//! `[products]`), and optional `[sq]`, `[char]`, `[integral]` and
//! `[torsion]` sections. Polynomials use the kernel grammar; integral
//! polynomials allow signed integer coefficients. `#` starts a comment.
//!
//! A bundle file carries `[char]` with `w = <poly>` and `[integral]` with
//! `p1 = <ipoly>` and `d = <ipoly>`, resolved against the rings of the
//! model it accompanies.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf2::{parse_gf2_poly, parse_terms, Bits, MonomialOrder, VarSet};
use crate::integral::IntegralEvenRing;
use crate::obstruction::BundleData;
use crate::ring::model::{CharClassData, ManifoldModel};
use crate::ring::{Label, PresentedRing, RingBackend, TableRing};
use crate::steenrod::SqTable;
use crate::torsion::{TorsionFacts, TorsionProfile};

#[derive(Debug, Default)]
struct Sections {
    order: Vec<String>,
    lines: BTreeMap<String, Vec<(usize, String)>>,
}

fn split_sections(text: &str) -> Result<Sections> {
    let mut sections = Sections::default();
    let mut current: Option<String> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let name = name.trim().to_string();
            if !matches!(
                name.as_str(),
                "meta"
                    | "generators"
                    | "relations"
                    | "basis"
                    | "products"
                    | "sq"
                    | "char"
                    | "integral"
                    | "torsion"
            ) {
                return Err(Error::Parse(format!(
                    "line {}: unknown section [{name}]",
                    lineno + 1
                )));
            }
            if !sections.lines.contains_key(&name) {
                sections.order.push(name.clone());
                sections.lines.insert(name.clone(), Vec::new());
            }
            current = Some(name);
        } else {
            let Some(section) = &current else {
                return Err(Error::Parse(format!(
                    "line {}: content before any section header",
                    lineno + 1
                )));
            };
            sections
                .lines
                .get_mut(section)
                .unwrap()
                .push((lineno + 1, line.to_string()));
        }
    }
    Ok(sections)
}

fn keyed<'a>(lines: &'a [(usize, String)], key: &str) -> Option<&'a str> {
    for (_, line) in lines {
        if let Some(rest) = line.strip_prefix(key) {
            let rest = rest.trim_start();
            if let Some(value) = rest.strip_prefix('=') {
                return Some(value.trim());
            }
        }
    }
    None
}

/// Parse `Sq^<i>(<ident>) = <poly>`.
fn parse_sq_line(line: &str) -> Result<(u32, String, String)> {
    let err = || Error::Parse(format!("malformed [sq] line: '{line}'"));
    let rest = line.strip_prefix("Sq^").ok_or_else(err)?;
    let open = rest.find('(').ok_or_else(err)?;
    let i: u32 = rest[..open].trim().parse().map_err(|_| err())?;
    let rest = &rest[open + 1..];
    let close = rest.find(')').ok_or_else(err)?;
    let ident = rest[..close].trim().to_string();
    let rest = rest[close + 1..].trim_start();
    let value = rest.strip_prefix('=').ok_or_else(err)?.trim().to_string();
    Ok((i, ident, value))
}

/// Parse `<ident> * <ident> = <rhs>`.
fn parse_product_line(line: &str) -> Result<(String, String, String)> {
    let err = || Error::Parse(format!("malformed product line: '{line}'"));
    let eq = line.find('=').ok_or_else(err)?;
    let (lhs, rhs) = (line[..eq].trim(), line[eq + 1..].trim());
    let star = lhs.find('*').ok_or_else(err)?;
    let a = lhs[..star].trim().to_string();
    let b = lhs[star + 1..].trim().to_string();
    if a.is_empty() || b.is_empty() || rhs.is_empty() {
        return Err(err());
    }
    Ok((a, b, rhs.to_string()))
}

/// A right-hand side that is a sum of basis identifiers with optional
/// integer coefficients; used for structure constants, where general
/// expressions would be circular.
fn parse_combination(rhs: &str) -> Result<Vec<(i64, String)>> {
    if rhs.trim() == "0" {
        return Ok(Vec::new());
    }
    let terms = parse_terms(rhs, true)?;
    let mut out = Vec::new();
    for t in terms {
        if t.coeff == 0 {
            continue;
        }
        match t.factors.as_slice() {
            [(name, 1)] => out.push((t.coeff, name.clone())),
            _ => {
                return Err(Error::Parse(format!(
                    "structure-constant line must be a sum of basis identifiers: '{rhs}'"
                )))
            }
        }
    }
    Ok(out)
}

pub fn parse_model_file(text: &str) -> Result<ManifoldModel> {
    let sections = split_sections(text)?;
    let meta = sections
        .lines
        .get("meta")
        .ok_or_else(|| Error::Parse("missing [meta] section".into()))?;
    let name = keyed(meta, "name")
        .ok_or_else(|| Error::Parse("[meta] needs 'name = ...'".into()))?
        .to_string();
    let n: u32 = keyed(meta, "dim")
        .ok_or_else(|| Error::Parse("[meta] needs 'dim = ...'".into()))?
        .parse()
        .map_err(|_| Error::Parse("invalid dim".into()))?;

    let presented = sections.lines.contains_key("generators");
    let table = sections.lines.contains_key("basis");
    if presented == table {
        return Err(Error::Parse(
            "exactly one of [generators] (presented) or [basis] (table) is required".into(),
        ));
    }

    let ring = if presented {
        let mut vars = Vec::new();
        for (lineno, line) in &sections.lines["generators"] {
            let mut it = line.split_whitespace();
            let (Some(name), Some(deg), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::Parse(format!(
                    "line {lineno}: generator lines are '<name> <degree>'"
                )));
            };
            let deg: u32 = deg
                .parse()
                .map_err(|_| Error::Parse(format!("line {lineno}: bad degree")))?;
            vars.push((name.to_string(), deg));
        }
        let vars = VarSet::new(vars);
        let mut relations = Vec::new();
        if let Some(lines) = sections.lines.get("relations") {
            for (lineno, line) in lines {
                let p = parse_gf2_poly(line, &vars)
                    .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
                if !p.is_homogeneous() {
                    return Err(Error::Parse(format!(
                        "line {lineno}: relations must be homogeneous"
                    )));
                }
                relations.push(p);
            }
        }
        let order = MonomialOrder::grevlex(vars.len());
        RingBackend::Presented(PresentedRing::new(vars, relations, order, n))
    } else {
        let mut t = TableRing::new(n);
        for (lineno, line) in &sections.lines["basis"] {
            let mut it = line.split_whitespace();
            let (Some(ident), Some(deg), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::Parse(format!(
                    "line {lineno}: basis lines are '<ident> <degree>'"
                )));
            };
            let deg: u32 = deg
                .parse()
                .map_err(|_| Error::Parse(format!("line {lineno}: bad degree")))?;
            t.push_basis(deg, Label::ident(ident))?;
        }
        if let Some(lines) = sections.lines.get("products") {
            for (lineno, line) in lines {
                let (a, b, rhs) = parse_product_line(line)
                    .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
                let &(da, ia) = t.symbols.get(&a).ok_or_else(|| {
                    Error::Parse(format!("line {lineno}: unknown basis element '{a}'"))
                })?;
                let &(db, ib) = t.symbols.get(&b).ok_or_else(|| {
                    Error::Parse(format!("line {lineno}: unknown basis element '{b}'"))
                })?;
                if da + db > n {
                    return Err(Error::Parse(format!(
                        "line {lineno}: product degree {} exceeds dim {n}",
                        da + db
                    )));
                }
                let mut coords = Bits::zeros(t.dim(da + db));
                for (coeff, ident) in parse_combination(&rhs)? {
                    let &(dc, ic) = t.symbols.get(&ident).ok_or_else(|| {
                        Error::Parse(format!("line {lineno}: unknown basis element '{ident}'"))
                    })?;
                    if dc != da + db {
                        return Err(Error::Parse(format!(
                            "line {lineno}: '{ident}' has degree {dc}, expected {}",
                            da + db
                        )));
                    }
                    if coeff.rem_euclid(2) == 1 {
                        coords.flip(ic);
                    }
                }
                t.set_product(da, ia, db, ib, coords);
            }
        }
        RingBackend::Table(t)
    };

    // Integral companion before [char], whose p1 and c refer to it.
    let integral = if let Some(lines) = sections.lines.get("integral") {
        let mut lattice = IntegralEvenRing::new(n);
        // reduction lines may precede their basis lines, collect first
        let mut reduce_lines: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (lineno, line) in lines {
            if let Some(rest) = line.strip_prefix("reduce ") {
                let eq = rest
                    .find('=')
                    .ok_or_else(|| Error::Parse(format!("line {lineno}: malformed reduce")))?;
                reduce_lines.insert(
                    rest[..eq].trim().to_string(),
                    (*lineno, rest[eq + 1..].trim().to_string()),
                );
            }
        }
        for (lineno, line) in lines {
            let Some(rest) = line.strip_prefix("basis ") else {
                continue;
            };
            let mut it = rest.split_whitespace();
            let (Some(ident), Some(deg), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::Parse(format!(
                    "line {lineno}: integral basis lines are 'basis <ident> <degree>'"
                )));
            };
            let deg: u32 = deg
                .parse()
                .map_err(|_| Error::Parse(format!("line {lineno}: bad degree")))?;
            let reduction = match reduce_lines.get(ident) {
                Some((rl, rhs)) => {
                    let cls = ring
                        .parse_class(rhs, deg)
                        .map_err(|e| Error::Parse(format!("line {rl}: {e}")))?;
                    cls.coords
                }
                None => Bits::zeros(ring.dim(deg)),
            };
            lattice.push_basis(deg, Label::ident(ident), reduction)?;
        }
        for (lineno, line) in lines {
            let Some(rest) = line.strip_prefix("product ") else {
                continue;
            };
            let (a, b, rhs) = parse_product_line(rest)
                .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
            let &(da, ia) = lattice.symbols.get(&a).ok_or_else(|| {
                Error::Parse(format!("line {lineno}: unknown integral element '{a}'"))
            })?;
            let &(db, ib) = lattice.symbols.get(&b).ok_or_else(|| {
                Error::Parse(format!("line {lineno}: unknown integral element '{b}'"))
            })?;
            if da + db > n {
                return Err(Error::Parse(format!(
                    "line {lineno}: product degree {} exceeds dim {n}",
                    da + db
                )));
            }
            let mut coeffs = vec![0i64; lattice.rank(da + db)];
            for (coeff, ident) in parse_combination(&rhs)? {
                let &(dc, ic) = lattice.symbols.get(&ident).ok_or_else(|| {
                    Error::Parse(format!("line {lineno}: unknown integral element '{ident}'"))
                })?;
                if dc != da + db {
                    return Err(Error::Parse(format!(
                        "line {lineno}: '{ident}' has degree {dc}, expected {}",
                        da + db
                    )));
                }
                coeffs[ic] += coeff;
            }
            lattice.set_product(da, ia, db, ib, coeffs);
        }
        for (lineno, line) in lines {
            if !(line.starts_with("basis ")
                || line.starts_with("product ")
                || line.starts_with("reduce "))
            {
                return Err(Error::Parse(format!(
                    "line {lineno}: [integral] lines start with basis/product/reduce"
                )));
            }
        }
        Some(lattice)
    } else {
        None
    };

    // Steenrod table.
    let sq = match &ring {
        RingBackend::Presented(r) => {
            let mut entries = BTreeMap::new();
            if let Some(lines) = sections.lines.get("sq") {
                for (lineno, line) in lines {
                    let (i, ident, value) = parse_sq_line(line)
                        .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
                    let Some(gen) = r.vars.index_of(&ident) else {
                        return Err(Error::Parse(format!(
                            "line {lineno}: unknown generator '{ident}'"
                        )));
                    };
                    let p = parse_gf2_poly(&value, &r.vars)
                        .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
                    let p = r.gb.normal_form(&p);
                    if !p.is_zero() {
                        entries.insert((gen, i), p);
                    }
                }
            }
            SqTable::Presented(entries)
        }
        RingBackend::Table(t) => {
            let mut entries = BTreeMap::new();
            if let Some(lines) = sections.lines.get("sq") {
                for (lineno, line) in lines {
                    let (i, ident, value) = parse_sq_line(line)
                        .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
                    let Some(&(d, idx)) = t.symbols.get(&ident) else {
                        return Err(Error::Parse(format!(
                            "line {lineno}: unknown basis element '{ident}'"
                        )));
                    };
                    let cls = ring
                        .parse_class(&value, d + i)
                        .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
                    if !cls.is_zero() {
                        entries.insert((d, idx, i), cls.coords);
                    }
                }
            }
            SqTable::Table(entries)
        }
    };

    // Characteristic classes.
    let mut char_classes = CharClassData::default();
    if let Some(lines) = sections.lines.get("char") {
        if let Some(value) = keyed(lines, "w") {
            char_classes.w = Some(ring.parse_total(value)?);
        }
        if let Some(value) = keyed(lines, "p1") {
            let lattice = integral
                .as_ref()
                .ok_or_else(|| Error::Parse("p1 needs an [integral] section".into()))?;
            char_classes.p1 = Some(lattice.parse_class(value, 4)?);
        }
        if let Some(value) = keyed(lines, "c") {
            let lattice = integral
                .as_ref()
                .ok_or_else(|| Error::Parse("c needs an [integral] section".into()))?;
            char_classes.c = Some(lattice.parse_class(value, 2)?);
        }
    }

    // Torsion declarations.
    let mut torsion = TorsionProfile::empty();
    if let Some(lines) = sections.lines.get("torsion") {
        for (lineno, line) in lines {
            let err = || Error::Parse(format!("line {lineno}: malformed torsion line '{line}'"));
            let colon = line.find(':').ok_or_else(err)?;
            let (head, facts) = (line[..colon].trim(), line[colon + 1..].trim());
            let mut parse_facts = |degree: u32| -> Result<()> {
                for f in facts.split(',') {
                    let f = f.trim();
                    if f == "free" {
                        torsion.facts.insert(degree, TorsionFacts::Free);
                    } else if let Some(p) = f.strip_prefix("no") {
                        let p: u64 = p.parse().map_err(|_| err())?;
                        match torsion
                            .facts
                            .entry(degree)
                            .or_insert_with(|| TorsionFacts::NoPrimes(Default::default()))
                        {
                            TorsionFacts::Free => {}
                            TorsionFacts::NoPrimes(ps) => {
                                ps.insert(p);
                            }
                        }
                    } else {
                        return Err(err());
                    }
                }
                Ok(())
            };
            if head == "all" {
                if facts.trim() != "free" {
                    return Err(err());
                }
                for degree in 0..=n {
                    torsion.facts.insert(degree, TorsionFacts::Free);
                }
            } else {
                let degree: u32 = head.strip_prefix('H').ok_or_else(err)?.parse().map_err(|_| err())?;
                parse_facts(degree)?;
            }
        }
    }

    Ok(ManifoldModel {
        name,
        n,
        ring,
        sq,
        char_classes,
        integral,
        torsion,
    })
}

pub fn load_model(path: &std::path::Path) -> Result<ManifoldModel> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_model_file(&text)
}

/// Bundle data resolved against a model's rings.
pub fn parse_bundle_file(text: &str, model: &ManifoldModel) -> Result<BundleData> {
    let sections = split_sections(text)?;
    let char_lines = sections
        .lines
        .get("char")
        .ok_or_else(|| Error::Parse("bundle file needs a [char] section".into()))?;
    let w_text = keyed(char_lines, "w")
        .ok_or_else(|| Error::Parse("bundle [char] needs 'w = ...'".into()))?;
    let w = model.ring.parse_total(w_text)?;
    let int_lines = sections
        .lines
        .get("integral")
        .ok_or_else(|| Error::Parse("bundle file needs an [integral] section".into()))?;
    let lattice = model
        .integral
        .as_ref()
        .ok_or_else(|| Error::MissingData("model has no integral companion".into()))?;
    let p1_text = keyed(int_lines, "p1")
        .ok_or_else(|| Error::Parse("bundle [integral] needs 'p1 = ...'".into()))?;
    let d_text = keyed(int_lines, "d")
        .ok_or_else(|| Error::Parse("bundle [integral] needs 'd = ...'".into()))?;
    Ok(BundleData {
        w,
        p1: lattice.parse_class(p1_text, 4)?,
        d: lattice.parse_class(d_text, 2)?,
    })
}

pub fn load_bundle(path: &std::path::Path, model: &ManifoldModel) -> Result<BundleData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_bundle_file(&text, model)
}
