//! Declared torsion facts about the integral homology of a model. These are
//! metadata carried by constructors and model files, not computed from chain
//! complexes; an absent fact means nothing is guaranteed for that degree.

use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorsionFacts {
    /// The integral homology group in this degree is torsion-free.
    Free,
    /// No p-torsion for each listed prime p.
    NoPrimes(BTreeSet<u64>),
}

impl TorsionFacts {
    pub fn no_p(&self, p: u64) -> bool {
        match self {
            TorsionFacts::Free => true,
            TorsionFacts::NoPrimes(ps) => ps.contains(&p),
        }
    }

    /// Facts that hold for a direct sum of two groups.
    pub fn meet(&self, other: &TorsionFacts) -> TorsionFacts {
        match (self, other) {
            (TorsionFacts::Free, TorsionFacts::Free) => TorsionFacts::Free,
            (TorsionFacts::Free, TorsionFacts::NoPrimes(ps))
            | (TorsionFacts::NoPrimes(ps), TorsionFacts::Free) => {
                TorsionFacts::NoPrimes(ps.clone())
            }
            (TorsionFacts::NoPrimes(a), TorsionFacts::NoPrimes(b)) => {
                TorsionFacts::NoPrimes(a.intersection(b).cloned().collect())
            }
        }
    }
}

/// Facts per homology degree H_i(M; Z).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TorsionProfile {
    pub facts: BTreeMap<u32, TorsionFacts>,
}

impl TorsionProfile {
    pub fn empty() -> Self {
        TorsionProfile::default()
    }

    /// Torsion-free in every degree 0..=n.
    pub fn all_free(n: u32) -> Self {
        let mut facts = BTreeMap::new();
        for i in 0..=n {
            facts.insert(i, TorsionFacts::Free);
        }
        TorsionProfile { facts }
    }

    pub fn declares_homology_no_p(&self, degree: u32, p: u64) -> bool {
        // H_0 of a pathwise connected space is free.
        degree == 0 || self.facts.get(&degree).is_some_and(|f| f.no_p(p))
    }

    /// Whether H^j(M; Z) is declared to have no p-torsion. By the universal
    /// coefficient theorem the torsion of H^j is the torsion of H_{j-1};
    /// H^0 is always free.
    pub fn declares_cohomology_no_p(&self, degree: u32, p: u64) -> bool {
        degree == 0 || self.declares_homology_no_p(degree - 1, p)
    }

    /// True when every degree 0..=n is declared torsion-free.
    pub fn is_all_free(&self, n: u32) -> bool {
        (0..=n).all(|i| matches!(self.facts.get(&i), Some(TorsionFacts::Free)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        let mut p = TorsionProfile::empty();
        p.facts
            .insert(1, TorsionFacts::NoPrimes([2u64, 3].into_iter().collect()));
        assert!(p.declares_homology_no_p(1, 2));
        assert!(p.declares_homology_no_p(1, 3));
        assert!(!p.declares_homology_no_p(1, 5));
        assert!(!p.declares_homology_no_p(2, 2));
        // cohomology degree shifts down by one
        assert!(p.declares_cohomology_no_p(2, 3));
        assert!(p.declares_cohomology_no_p(0, 7));
        assert!(!p.declares_cohomology_no_p(3, 2));
    }

    #[test]
    fn all_free_and_meet() {
        let free = TorsionProfile::all_free(4);
        assert!(free.is_all_free(4));
        assert!(free.declares_homology_no_p(3, 17));
        let no23 = TorsionFacts::NoPrimes([2u64, 3].into_iter().collect());
        assert_eq!(TorsionFacts::Free.meet(&no23), no23);
        let no2 = TorsionFacts::NoPrimes([2u64].into_iter().collect());
        let no3 = TorsionFacts::NoPrimes([3u64].into_iter().collect());
        assert_eq!(no2.meet(&no3), TorsionFacts::NoPrimes(BTreeSet::new()));
    }
}
