//! Exponent vectors and sparse term maps shared by commutative polynomials
//! and normal-ordered Weyl elements.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use smallvec::SmallVec;

use crate::exact::Scalar;

/// An exponent vector `α`, standing for `x_1^{α_1} ⋯ x_N^{α_N}`.
///
/// The derived order is lexicographic with the first variable most
/// significant, which is the order terms are rendered in (descending).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    /// The variable with 0-based index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// Total degree `|α|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    /// Every exponent multiplied by `k`.
    pub fn scaled(&self, k: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|e| e.checked_mul(k).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    pub fn all_divisible_by(&self, k: u32) -> bool {
        self.0.iter().all(|e| e % k == 0)
    }

    /// Every exponent divided by `k`; callers check divisibility first.
    pub fn divided_by(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e / k).collect())
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// All exponent vectors in `nvars` variables with total degree `<= max_degree`,
/// in increasing degree.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let mut cur = vec![0u32; nvars];
        fill_degree(&mut cur, 0, d, &mut out);
    }
    out
}

fn fill_degree(cur: &mut [u32], idx: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if idx + 1 >= cur.len() {
        if let Some(last) = cur.last_mut() {
            *last = remaining;
            out.push(Monomial::from_exponents(cur));
        } else if remaining == 0 {
            out.push(Monomial::from_exponents(cur));
        }
        return;
    }
    for e in (0..=remaining).rev() {
        cur[idx] = e;
        fill_degree(cur, idx + 1, remaining - e, out);
    }
    cur[idx] = 0;
}

/// Hash-based accumulator for sums of many terms.
#[derive(Default)]
pub(crate) struct Accumulator {
    terms: HashMap<Monomial, Scalar>,
}

impl Accumulator {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => *e.get_mut() += c,
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub(crate) fn into_sorted(self) -> BTreeMap<Monomial, Scalar> {
        self.terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Adds `c * m` into a sorted term map, dropping cancelled terms.
pub(crate) fn add_term(map: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}
