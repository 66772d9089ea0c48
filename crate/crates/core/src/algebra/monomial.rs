use std::cmp::Ordering;

use super::order::MonomialOrder;

/// Dense exponent vector over a fixed catalog.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[v] = 1;
        m
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// Product of the listed variables (with repetition).
    pub fn from_vars(nvars: usize, vars: &[usize]) -> Self {
        let mut m = Monomial::one(nvars);
        for &v in vars {
            m.exps[v] += 1;
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.exps[v]
    }

    pub fn bump(&mut self, v: usize, by: u32) {
        self.exps[v] += by;
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, _)| v)
    }

    pub fn support_with_exponents(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| (v, e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(|exps| Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Squarefree part: the product of the variables in the support.
    pub fn radical(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e.min(1)).collect(),
        }
    }
}

/// A pure binomial `lead − tail` (coefficients `±1`).
///
/// The constructor does not orient the pair; use [`Binomial::oriented`] to
/// put the larger monomial first under a given order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub lead: Monomial,
    pub tail: Monomial,
}

impl Binomial {
    /// `None` when both sides coincide (the zero polynomial).
    pub fn new(lead: Monomial, tail: Monomial) -> Option<Self> {
        (lead != tail).then_some(Binomial { lead, tail })
    }

    /// The same binomial up to sign, with the larger monomial first.
    pub fn oriented(a: Monomial, b: Monomial, order: &MonomialOrder) -> Option<Self> {
        match order.compare(&a, &b) {
            Ordering::Greater => Some(Binomial { lead: a, tail: b }),
            Ordering::Less => Some(Binomial { lead: b, tail: a }),
            Ordering::Equal => None,
        }
    }

    pub fn reorient(&self, order: &MonomialOrder) -> Self {
        Binomial::oriented(self.lead.clone(), self.tail.clone(), order)
            .expect("binomial sides are distinct")
    }

    /// Whether the written first monomial is the leading one under `order`.
    pub fn lead_is_first(&self, order: &MonomialOrder) -> bool {
        order.compare(&self.lead, &self.tail) == Ordering::Greater
    }

    pub fn degree(&self) -> u32 {
        self.lead.degree().max(self.tail.degree())
    }
}
