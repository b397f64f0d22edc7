//! Monomial orders for Gröbner computations. Both orders compare weighted
//! total degree first, so they are degree-dominant and compatible with
//! multiplication for any positive generator grading.

use std::cmp::Ordering;

use super::monomial::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderKind {
    GrLex,
    #[default]
    GrevLex,
}

/// A graded monomial order with an explicit generator precedence list
/// (a permutation of the variable indices; earlier entries weigh more).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: Vec<usize>,
}

impl MonomialOrder {
    /// Precedence equal to declaration order.
    pub fn new(kind: OrderKind, num_vars: usize) -> Self {
        MonomialOrder {
            kind,
            precedence: (0..num_vars).collect(),
        }
    }

    pub fn grevlex(num_vars: usize) -> Self {
        Self::new(OrderKind::GrevLex, num_vars)
    }

    pub fn grlex(num_vars: usize) -> Self {
        Self::new(OrderKind::GrLex, num_vars)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.kind {
            OrderKind::GrLex => {
                for &v in &self.precedence {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => {
                // Last variable in precedence with differing exponent:
                // smaller exponent wins.
                for &v in self.precedence.iter().rev() {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => {}
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::monomial::VarSet;

    fn vars2() -> VarSet {
        VarSet::new(vec![("x".into(), 1), ("y".into(), 1)])
    }

    #[test]
    fn degree_dominates() {
        let vars = vars2();
        let x = Monomial::from_exps(&vars, vec![1, 0]);
        let y2 = Monomial::from_exps(&vars, vec![0, 2]);
        for order in [MonomialOrder::grlex(2), MonomialOrder::grevlex(2)] {
            assert_eq!(order.cmp(&y2, &x), Ordering::Greater);
            assert_eq!(order.cmp(&x, &Monomial::one(&vars)), Ordering::Greater);
        }
    }

    #[test]
    fn grevlex_ties() {
        let vars = vars2();
        let x2 = Monomial::from_exps(&vars, vec![2, 0]);
        let xy = Monomial::from_exps(&vars, vec![1, 1]);
        let y2 = Monomial::from_exps(&vars, vec![0, 2]);
        let o = MonomialOrder::grevlex(2);
        assert_eq!(o.cmp(&x2, &xy), Ordering::Greater);
        assert_eq!(o.cmp(&xy, &y2), Ordering::Greater);
        let g = MonomialOrder::grlex(2);
        assert_eq!(g.cmp(&x2, &xy), Ordering::Greater);
        assert_eq!(g.cmp(&xy, &y2), Ordering::Greater);
    }

    #[test]
    fn weighted_tie_break() {
        // deg w1 = 1, deg w2 = 2: w1^2 and w2 share degree 2.
        let vars = VarSet::new(vec![("w1".into(), 1), ("w2".into(), 2)]);
        let w1sq = Monomial::from_exps(&vars, vec![2, 0]);
        let w2 = Monomial::from_exps(&vars, vec![0, 1]);
        let o = MonomialOrder::grevlex(2);
        // grevlex: smaller exponent on the last variable wins the tie
        assert_eq!(o.cmp(&w1sq, &w2), Ordering::Greater);
    }
}
