use std::fmt;

use super::ArithError;

/// Largest modulus accepted. Residue products must fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// A prime modulus, certified by trial division when constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p > MAX_PRIME {
            return Err(ArithError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Multiplicative inverse of a nonzero residue (Fermat).
    pub(crate) fn inverse(self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.0) {
            None
        } else {
            Some(self.pow(a, self.0 - 2))
        }
    }

    pub(crate) fn pow(self, base: u64, mut exp: u64) -> u64 {
        let p = self.0;
        let mut acc = 1 % p;
        let mut b = base % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::str::FromStr for Prime {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: u64 = s.trim().parse().map_err(|_| ArithError::NotANumber(s.to_string()))?;
        Prime::new(v)
    }
}

impl TryFrom<u64> for Prime {
    type Error = ArithError;

    fn try_from(p: u64) -> Result<Self, Self::Error> {
        Prime::new(p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The primes below `bound`, in increasing order.
pub fn primes_below(bound: u64) -> Vec<Prime> {
    (2..bound).filter(|&k| is_prime(k)).map(Prime).collect()
}
