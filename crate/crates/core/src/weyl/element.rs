use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use smallvec::SmallVec;

use crate::exact::{Prime, Ring, Scalar};
use crate::monomial::{add_term, Accumulator, Monomial};

use super::{WeylError, WeylSignature};

/// An element of `A_{n,R}` in normal form: a combination of ordered monomials
/// `y_1^{α_1} ⋯ y_{2n}^{α_{2n}}` with nonzero coefficients.
///
/// Since the ordered monomials form a basis, structural equality is equality
/// in the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    sig: WeylSignature,
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl WeylElement {
    pub fn zero(sig: WeylSignature, ring: Ring) -> Self {
        WeylElement {
            sig,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(sig: WeylSignature, c: Scalar) -> Self {
        Self::monomial(sig, Monomial::one(sig.generators()), c)
    }

    pub fn one(sig: WeylSignature, ring: Ring) -> Self {
        Self::constant(sig, Scalar::one(ring))
    }

    pub fn from_i64(sig: WeylSignature, ring: Ring, v: i64) -> Self {
        Self::constant(sig, Scalar::from_i64(ring, v))
    }

    /// The generator `y_{i+1}` (0-based `i`).
    pub fn generator(sig: WeylSignature, ring: Ring, i: usize) -> Self {
        Self::monomial(sig, Monomial::var(sig.generators(), i), Scalar::one(ring))
    }

    pub fn monomial(sig: WeylSignature, m: Monomial, c: Scalar) -> Self {
        let mut e = Self::zero(sig, c.ring());
        add_term(&mut e.terms, m, &c);
        e
    }

    pub fn from_terms(
        sig: WeylSignature,
        ring: Ring,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self, WeylError> {
        let mut e = Self::zero(sig, ring);
        for (m, c) in terms {
            if m.nvars() != sig.generators() {
                return Err(WeylError::ExponentLength {
                    expected: sig.generators(),
                    found: m.nvars(),
                });
            }
            if c.ring() != ring {
                return Err(WeylError::RingMismatch {
                    left: ring,
                    right: c.ring(),
                });
            }
            add_term(&mut e.terms, m, &c);
        }
        Ok(e)
    }

    pub(crate) fn from_sorted(sig: WeylSignature, ring: Ring, terms: BTreeMap<Monomial, Scalar>) -> Self {
        WeylElement { sig, ring, terms }
    }

    pub fn signature(&self) -> WeylSignature {
        self.sig
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Terms in increasing lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.ring))
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero(self.ring)),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Bernstein degree: the largest `|α|` in the support, `None` for zero.
    pub fn bernstein_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub(crate) fn check_compatible(&self, other: &WeylElement) -> Result<(), WeylError> {
        if self.sig != other.sig {
            return Err(WeylError::SignatureMismatch {
                left: self.sig.n(),
                right: other.sig.n(),
            });
        }
        if self.ring != other.ring {
            return Err(WeylError::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.try_add(&-other)
    }

    pub fn scale(&self, s: &Scalar) -> Result<WeylElement, WeylError> {
        if s.ring() != self.ring {
            return Err(WeylError::RingMismatch {
                left: self.ring,
                right: s.ring(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * s))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(WeylElement::from_sorted(self.sig, self.ring, terms))
    }

    /// Product in normal form.
    ///
    /// Distinct conjugate pairs commute, so a product of two ordered monomials
    /// factors pair by pair, and within a pair
    /// `y_{n+i}^b y_i^c = Σ_k C(b,k) C(c,k) k! y_i^{c−k} y_{n+i}^{b−k}`.
    pub fn try_mul(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check_compatible(other)?;
        let n = self.sig.n();
        let mut table = ReorderTable::new(self.ring);
        let mut acc = Accumulator::new();
        let mut buf: SmallVec<[u32; 6]> = SmallVec::from_elem(0, 2 * n);
        for (ma, ca) in &self.terms {
            let a = ma.exponents();
            for (mb, cb) in &other.terms {
                let b = mb.exponents();
                let coeff = ca * cb;
                if coeff.is_zero() {
                    continue;
                }
                let commuting = (0..n).all(|i| a[n + i] == 0 || b[i] == 0);
                if commuting {
                    acc.add(ma.mul(mb), &coeff);
                    continue;
                }
                expand_pairs(0, n, a, b, &mut table, &mut buf, coeff, &mut acc);
            }
        }
        Ok(WeylElement::from_sorted(self.sig, self.ring, acc.into_sorted()))
    }

    /// `a^k` by binary exponentiation.
    pub fn pow(&self, mut k: u64) -> WeylElement {
        let mut acc = WeylElement::one(self.sig, self.ring);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn to_ring(&self, target: Ring) -> Result<WeylElement, WeylError> {
        let mut out = WeylElement::zero(self.sig, target);
        for (m, c) in &self.terms {
            add_term(&mut out.terms, m.clone(), &c.to_ring(target)?);
        }
        Ok(out)
    }

    /// Coefficientwise `ℤ → 𝔽_p`.
    pub fn reduce_mod_p(&self, p: Prime) -> Result<WeylElement, WeylError> {
        if self.ring != Ring::Integer {
            return Err(WeylError::RingMismatch {
                left: self.ring,
                right: Ring::Integer,
            });
        }
        self.to_ring(Ring::PrimeField(p))
    }

    /// Coefficientwise canonical lift `𝔽_p → ℤ` into `[0, p−1]`.
    pub fn lift_canonical(&self) -> Result<WeylElement, WeylError> {
        let mut out = WeylElement::zero(self.sig, Ring::Integer);
        for (m, c) in &self.terms {
            add_term(&mut out.terms, m.clone(), &c.lift_canonical()?);
        }
        Ok(out)
    }
}

/// Reordering coefficients `C(b,k) · c(c−1)⋯(c−k+1)` mapped into the ring,
/// cached per `(b, c)` for the duration of one product.
struct ReorderTable {
    ring: Ring,
    cache: HashMap<(u32, u32), Vec<Scalar>>,
}

impl ReorderTable {
    fn new(ring: Ring) -> Self {
        ReorderTable {
            ring,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, b: u32, c: u32) -> &[Scalar] {
        let ring = self.ring;
        self.cache.entry((b, c)).or_insert_with(|| {
            let kmax = b.min(c);
            let mut out = Vec::with_capacity(kmax as usize + 1);
            let mut v = BigInt::from(1u32);
            for k in 0..=kmax {
                out.push(Scalar::from_bigint(ring, &v));
                if k < kmax {
                    v = v * BigInt::from(b - k) * BigInt::from(c - k) / BigInt::from(k + 1);
                }
            }
            out
        })
    }
}

#[allow(clippy::too_many_arguments)]
fn expand_pairs(
    pair: usize,
    n: usize,
    a: &[u32],
    b: &[u32],
    table: &mut ReorderTable,
    buf: &mut SmallVec<[u32; 6]>,
    coeff: Scalar,
    acc: &mut Accumulator,
) {
    if pair == n {
        acc.add(Monomial::from_exponents(buf), &coeff);
        return;
    }
    let (ax, ad) = (a[pair], a[n + pair]);
    let (bx, bd) = (b[pair], b[n + pair]);
    if ad == 0 || bx == 0 {
        buf[pair] = ax + bx;
        buf[n + pair] = ad + bd;
        expand_pairs(pair + 1, n, a, b, table, buf, coeff, acc);
        return;
    }
    let coeffs: Vec<Scalar> = table.get(ad, bx).to_vec();
    for (k, ck) in coeffs.iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        let k = k as u32;
        buf[pair] = ax + bx - k;
        buf[n + pair] = ad + bd - k;
        expand_pairs(pair + 1, n, a, b, table, buf, &coeff * ck, acc);
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;

    fn neg(self) -> WeylElement {
        WeylElement::from_sorted(
            self.sig,
            self.ring,
            self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        )
    }
}

macro_rules! panicking_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&WeylElement> for &WeylElement {
            type Output = WeylElement;

            fn $method(self, rhs: &WeylElement) -> WeylElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

panicking_binop!(Add, add, try_add);
panicking_binop!(Sub, sub, try_sub);
panicking_binop!(Mul, mul, try_mul);
