//! Buchberger's algorithm over GF(2) for homogeneous ideals, normal forms,
//! and per-degree standard monomial bases of the quotient.
//!
//! All coefficients are 1, so the S-polynomial of f and g is simply
//! (lcm/lt f)·f + (lcm/lt g)·g. Reduction always uses the basis element
//! with the smallest leading monomial that divides the target, which keeps
//! the output deterministic.

use std::collections::BTreeSet;

use super::monomial::{Monomial, VarSet};
use super::order::MonomialOrder;
use super::poly::PolyGF2;

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub vars: VarSet,
    pub order: MonomialOrder,
    /// Reduced basis, sorted ascending by leading monomial.
    pub elements: Vec<PolyGF2>,
    /// The relations the basis was computed from.
    pub source: Vec<PolyGF2>,
}

/// Compute a reduced Gröbner basis of the homogeneous ideal generated by
/// `relations`. Terminates for any input since the coefficient field is
/// finite and the ring Noetherian.
pub fn groebner(vars: &VarSet, relations: &[PolyGF2], order: MonomialOrder) -> GroebnerBasis {
    let mut basis: Vec<PolyGF2> = Vec::new();
    for r in relations {
        let red = reduce_full(r, &basis, &order);
        if !red.is_zero() {
            basis.push(red);
        }
    }

    // Pair queue keyed by (lcm degree, i, j) so low-degree pairs go first.
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let enqueue = |pairs: &mut BTreeSet<(u32, usize, usize)>, basis: &[PolyGF2], k: usize| {
        let ltk = basis[k].leading(&order).expect("nonzero").clone();
        for (i, g) in basis.iter().enumerate().take(k) {
            let lti = g.leading(&order).expect("nonzero");
            if lti.coprime(&ltk) {
                continue; // Buchberger's first criterion
            }
            let lcm = lti.lcm(&ltk, vars);
            pairs.insert((lcm.degree(), i, k));
        }
    };
    for k in 0..basis.len() {
        enqueue(&mut pairs, &basis, k);
    }

    while let Some(&key) = pairs.iter().next() {
        pairs.remove(&key);
        let (_, i, j) = key;
        let lti = basis[i].leading(&order).unwrap().clone();
        let ltj = basis[j].leading(&order).unwrap().clone();
        let lcm = lti.lcm(&ltj, vars);
        let s = basis[i]
            .mul_monomial(&lti.div(&lcm))
            .add(&basis[j].mul_monomial(&ltj.div(&lcm)));
        let red = reduce_full(&s, &basis, &order);
        if !red.is_zero() {
            basis.push(red);
            enqueue(&mut pairs, &basis, basis.len() - 1);
        }
    }

    // Minimalize: drop elements whose leading monomial is divisible by
    // another element's leading monomial.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lti = basis[i].leading(&order).unwrap().clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let ltj = basis[j].leading(&order).unwrap();
            if ltj.divides(&lti) && (ltj != &lti || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<PolyGF2> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // Tail-reduce every element against the others.
    let mut reduced: Vec<PolyGF2> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<PolyGF2> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _g)| j != i).map(|(_j, g)| g.clone())
            .collect();
        let r = reduce_full(&minimal[i], &others, &order);
        if !r.is_zero() {
            reduced.push(r);
        }
    }
    reduced.sort_by(|a, b| order.cmp(a.leading(&order).unwrap(), b.leading(&order).unwrap()));

    GroebnerBasis {
        vars: vars.clone(),
        order,
        elements: reduced,
        source: relations.to_vec(),
    }
}

/// Fully reduce `p` modulo `basis`: no monomial of the result is divisible
/// by any basis leading monomial. Reduces the largest reducible monomial
/// first; among candidate reducers the one with the smallest leading
/// monomial wins.
fn reduce_full(p: &PolyGF2, basis: &[PolyGF2], order: &MonomialOrder) -> PolyGF2 {
    if basis.is_empty() {
        return p.clone();
    }
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading(order).expect("basis elements are nonzero").clone())
        .collect();
    let mut current = p.clone();
    loop {
        // Largest monomial of `current` divisible by some lead.
        let mut target: Option<(usize, &Monomial)> = None;
        for m in current.terms() {
            if leads.iter().any(|l| l.divides(m)) {
                match target {
                    Some((_, t)) if order.cmp(m, t) != std::cmp::Ordering::Greater => {}
                    _ => {
                        let gi = best_reducer(m, &leads, order);
                        target = Some((gi, m));
                    }
                }
            }
        }
        let Some((gi, m)) = target else {
            return current;
        };
        let quotient = leads[gi].div(m);
        let update = basis[gi].mul_monomial(&quotient);
        current = current.add(&update);
    }
}

/// Index of the reducer with the smallest leading monomial dividing `m`.
fn best_reducer(m: &Monomial, leads: &[Monomial], order: &MonomialOrder) -> usize {
    let mut best: Option<usize> = None;
    for (i, l) in leads.iter().enumerate() {
        if !l.divides(m) {
            continue;
        }
        best = match best {
            None => Some(i),
            Some(b) => {
                if order.cmp(l, &leads[b]) == std::cmp::Ordering::Less {
                    Some(i)
                } else {
                    Some(b)
                }
            }
        };
    }
    best.expect("at least one reducer divides the target")
}

impl GroebnerBasis {
    /// Canonical representative of `p` in the quotient. Idempotent and
    /// additive; a ring map composed with inclusion.
    pub fn normal_form(&self, p: &PolyGF2) -> PolyGF2 {
        reduce_full(p, &self.elements, &self.order)
    }

    /// True when `p` lies in the ideal.
    pub fn reduces_to_zero(&self, p: &PolyGF2) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Monomials of the given weighted degree not divisible by any leading
    /// monomial of the basis: a GF(2)-basis of the degree-d component of the
    /// quotient, sorted descending under the basis order.
    pub fn standard_monomials(&self, degree: u32) -> Vec<Monomial> {
        let leads: Vec<&Monomial> = self
            .elements
            .iter()
            .map(|g| g.leading(&self.order).unwrap())
            .collect();
        let mut out: Vec<Monomial> = enumerate_monomials(&self.vars, degree)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        out.sort_by(|a, b| self.order.cmp(b, a));
        out
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.standard_monomials(degree).len()
    }
}

/// All monomials of exact weighted degree `d` in the given variables.
pub fn enumerate_monomials(vars: &VarSet, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; vars.len()];
    fn rec(vars: &VarSet, i: usize, remaining: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == vars.len() {
            if remaining == 0 {
                out.push(Monomial::from_exps(vars, exps.clone()));
            }
            return;
        }
        let dv = vars.degree(i);
        let max = remaining / dv;
        for e in 0..=max {
            exps[i] = e as u16;
            rec(vars, i + 1, remaining - e * dv, exps, out);
        }
        exps[i] = 0;
    }
    if vars.is_empty() {
        if d == 0 {
            out.push(Monomial::one(vars));
        }
        return out;
    }
    rec(vars, 0, d, &mut exps, &mut out);
    out
}
