//! Graded variables and monomials with weighted total degree.

/// A named generator with a positive degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Var {
    pub name: String,
    pub degree: u32,
}

/// The ordered list of generators of a graded polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VarSet {
    vars: Vec<Var>,
}

impl VarSet {
    pub fn new(vars: Vec<(String, u32)>) -> Self {
        for (name, degree) in &vars {
            assert!(*degree >= 1, "generator {name} must have positive degree");
        }
        VarSet {
            vars: vars
                .into_iter()
                .map(|(name, degree)| Var { name, degree })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.vars[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn max_degree(&self) -> u32 {
        self.vars.iter().map(|v| v.degree).max().unwrap_or(0)
    }
}

/// A monomial in a fixed `VarSet`: one exponent per generator, with the
/// weighted total degree cached. The exponent vector length always equals
/// the generator count of the ring it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn one(vars: &VarSet) -> Self {
        Monomial {
            exps: vec![0; vars.len()],
            degree: 0,
        }
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Monomial {
            exps,
            degree: vars.degree(i),
        }
    }

    pub fn from_exps(vars: &VarSet, exps: Vec<u16>) -> Self {
        assert_eq!(exps.len(), vars.len());
        let degree = exps
            .iter()
            .enumerate()
            .map(|(i, &e)| e as u32 * vars.degree(i))
            .sum();
        Monomial { exps, degree }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps = other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect();
        Monomial {
            exps,
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial, vars: &VarSet) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exps(vars, exps)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Canonical storage comparison: degree first, then exponents in
    /// declaration order. Used for term sorting and display, independent of
    /// the reduction order.
    pub fn storage_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }

    pub fn display(&self, vars: &VarSet) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e == 1 {
                parts.push(vars.name(i).to_string());
            } else {
                parts.push(format!("{}^{}", vars.name(i), e));
            }
        }
        parts.join("*")
    }
}
