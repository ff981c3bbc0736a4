//! Monomials in the variables of a graded ring.
//!
//! A [`Monomial`] stores its exponents sparsely, keyed by the ring's
//! canonical variable ids (variables sorted by family name, then index).
//! The empty exponent list is the unit monomial of degree 0.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// A named variable: family name plus a 1-based index, e.g. `x3`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct VarRef {
    pub family: String,
    pub index: u32,
}

impl VarRef {
    pub fn new(family: impl Into<String>, index: u32) -> Self {
        VarRef {
            family: family.into(),
            index,
        }
    }
}

impl std::fmt::Display for VarRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.family, self.index)
    }
}

/// A monomial over a ring's canonical variable list. Factors are sorted by
/// variable id; no zero exponents are stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    factors: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { factors: vec![] }
    }

    pub fn var(id: u32) -> Self {
        Monomial {
            factors: vec![(id, 1)],
        }
    }

    /// Builds from (var id, exponent) pairs; merges duplicates, drops zeros.
    pub fn from_factors(factors: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut fs: Vec<(u32, u32)> = factors.into_iter().filter(|&(_, e)| e > 0).collect();
        fs.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(fs.len());
        for (v, e) in fs {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors
    }

    pub fn exponent_of(&self, var: u32) -> u32 {
        self.factors
            .iter()
            .find(|&&(v, _)| v == var)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_factors(self.factors.iter().chain(other.factors.iter()).copied())
    }

    /// True when `self` divides `other` componentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut it = other.factors.iter();
        'outer: for &(v, e) in &self.factors {
            for &(w, f) in it.by_ref() {
                match w.cmp(&v) {
                    Ordering::Less => continue,
                    Ordering::Equal => {
                        if f >= e {
                            continue 'outer;
                        }
                        return false;
                    }
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::from_factors(self.factors.iter().map(|&(v, e)| {
            (v, e - other.exponent_of(v))
        })))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_factors(
            self.factors
                .iter()
                .map(|&(v, e)| (v, e.min(other.exponent_of(v)))),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut fs = self.factors.clone();
        for &(v, e) in &other.factors {
            match fs.iter_mut().find(|(w, _)| *w == v) {
                Some((_, f)) => *f = (*f).max(e),
                None => fs.push((v, e)),
            }
        }
        Monomial::from_factors(fs)
    }

    /// Graded order, ties broken lexicographically with earlier variables
    /// (smaller ids) weighing more: x1^2 > x1*x2 > x2^2 in degree 2.
    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.factors.iter();
        let mut b = other.factors.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    // smaller variable id present => lex-larger monomial
                    match va.cmp(&vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match ea.cmp(&eb) {
                            Ordering::Equal => continue,
                            // higher exponent on the shared smallest variable
                            // => lex-larger
                            ord => return ord,
                        },
                    }
                }
            }
        }
    }

    /// Dense exponent vector over `n` variables.
    pub fn to_dense(&self, n: usize) -> Vec<u8> {
        let mut v = vec![0u8; n];
        for &(var, e) in &self.factors {
            v[var as usize] = e.min(u8::MAX as u32) as u8;
        }
        v
    }

    pub fn from_dense(exp: &[u8]) -> Monomial {
        Monomial::from_factors(
            exp.iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(v, &e)| (v as u32, e as u32)),
        )
    }
}
