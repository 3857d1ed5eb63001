//! Matrix realizations of `A_{n,𝔽_p}` at 𝔽_p-points of the center.
//!
//! For `n = 1` the algebra with `[∂, x] = 1`, `x^p = ∂^p = 0` acts faithfully
//! on `B = 𝔽_p[x]/(x^p)` with basis `1, x, …, x^{p−1}`: `X e_k = e_{k+1}` and
//! `D e_k = k e_{k−1}`. The general case is the `n`-fold Kronecker product,
//! pair `i` acting on tensor slot `i` (slot 0 most significant). Shifting by a
//! point `ξ` gives `Y_i = ξ_i I + X` and `Y_{n+i} = ξ_{n+i} I + D`, whose
//! `p`-th powers are the scalars `ξ^p`.

use thiserror::Error;

use crate::exact::{DenseMatrix, LinalgError, Prime, Ring, Scalar};
use crate::weyl::WeylElement;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("point has {found} coordinates, expected {expected}")]
    PointLength { expected: usize, found: usize },
    #[error("element lives over {found}, the fiber over {expected}")]
    RingMismatch { expected: Ring, found: Ring },
    #[error("element has n = {found}, the fiber n = {expected}")]
    SignatureMismatch { expected: usize, found: usize },
    #[error("fiber dimension p^n is too large")]
    TooLarge,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The `p^n × p^n` matrices of the generators at one point `ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberRep {
    prime: Prime,
    n: usize,
    point: Vec<Scalar>,
    generators: Vec<DenseMatrix>,
}

impl FiberRep {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        Ring::PrimeField(self.prime)
    }

    /// Matrix size `p^n`.
    pub fn dim(&self) -> usize {
        self.generators[0].rows()
    }

    pub fn point(&self) -> &[Scalar] {
        &self.point
    }

    pub fn generators(&self) -> &[DenseMatrix] {
        &self.generators
    }

    /// Coordinates `ξ_i^p` of the underlying point of the center's spectrum.
    /// Over 𝔽_p these equal `ξ_i`.
    pub fn center_point(&self) -> Vec<Scalar> {
        self.point.iter().map(|s| s.pow(self.prime.get())).collect()
    }
}

fn shift_operator(ring: Ring, p: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(ring, p, p);
    for k in 0..p - 1 {
        m.set(k + 1, k, Scalar::one(ring));
    }
    m
}

fn derivative_operator(ring: Ring, p: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(ring, p, p);
    for k in 1..p {
        m.set(k - 1, k, Scalar::from_i64(ring, k as i64));
    }
    m
}

/// Places `op` on tensor slot `slot` of `(𝔽_p^p)^{⊗n}`.
fn on_slot(op: &DenseMatrix, slot: usize, n: usize) -> Result<DenseMatrix, LinalgError> {
    let ring = op.ring();
    let p = op.rows();
    let left = DenseMatrix::identity(ring, p.pow(slot as u32));
    let right = DenseMatrix::identity(ring, p.pow((n - slot - 1) as u32));
    left.kron(op)?.kron(&right)
}

/// The generator matrices at `point` (residues, reduced mod `p`).
pub fn matrix_rep(prime: Prime, n: usize, point: &[u64]) -> Result<FiberRep, FiberError> {
    if point.len() != 2 * n {
        return Err(FiberError::PointLength {
            expected: 2 * n,
            found: point.len(),
        });
    }
    let ring = Ring::PrimeField(prime);
    let p = prime.get() as usize;
    let dim = p.checked_pow(n as u32).filter(|&d| d <= 4096).ok_or(FiberError::TooLarge)?;
    let point: Vec<Scalar> = point.iter().map(|&v| Scalar::from_i64(ring, (v % prime.get()) as i64)).collect();
    let x = shift_operator(ring, p);
    let d = derivative_operator(ring, p);
    let mut generators = Vec::with_capacity(2 * n);
    for (i, xi) in point.iter().enumerate() {
        let (op, slot) = if i < n { (&x, i) } else { (&d, i - n) };
        let shift = DenseMatrix::scalar(ring, dim, xi);
        generators.push(shift.add(&on_slot(op, slot, n)?)?);
    }
    Ok(FiberRep {
        prime,
        n,
        point,
        generators,
    })
}

/// Every point of `𝔽_p^{2n}`, in lexicographic order.
pub fn all_points(prime: Prime, n: usize) -> impl Iterator<Item = Vec<u64>> {
    let p = prime.get();
    let total = p.pow(2 * n as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; 2 * n];
        for slot in v.iter_mut().rev() {
            *slot = idx % p;
            idx /= p;
        }
        v
    })
}

/// The image of `a` in the fiber algebra: generators replaced by matrices in
/// the written normal order.
pub fn fiber_eval(a: &WeylElement, rep: &FiberRep) -> Result<DenseMatrix, FiberError> {
    if a.ring() != rep.ring() {
        return Err(FiberError::RingMismatch {
            expected: rep.ring(),
            found: a.ring(),
        });
    }
    if a.signature().n() != rep.n {
        return Err(FiberError::SignatureMismatch {
            expected: rep.n,
            found: a.signature().n(),
        });
    }
    let ring = rep.ring();
    let dim = rep.dim();
    let mut powers: Vec<Vec<DenseMatrix>> = vec![vec![DenseMatrix::identity(ring, dim)]; rep.generators.len()];
    let mut out = DenseMatrix::zeros(ring, dim, dim);
    for (m, c) in a.terms() {
        let mut term = DenseMatrix::scalar(ring, dim, c);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().expect("Y^0 present").mul(&rep.generators[i])?;
                powers[i].push(next);
            }
            term = term.mul(&powers[i][e as usize])?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Result of [`azumaya_span_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanCheck {
    pub rank: usize,
    pub expected: usize,
}

impl SpanCheck {
    pub fn passed(&self) -> bool {
        self.rank == self.expected
    }
}

/// Rank of the images of the `p^{2n}` monomials `y^α`, `0 ≤ α_i < p`. The
/// fiber is the full matrix algebra exactly when the rank is `p^{2n}`.
pub fn azumaya_span_check(rep: &FiberRep) -> Result<SpanCheck, FiberError> {
    let ring = rep.ring();
    let p = rep.prime.get() as u32;
    let g = rep.generators.len();
    let dim = rep.dim();
    let expected = dim * dim;
    let mut rows = Vec::with_capacity(expected);
    let mut powers: Vec<Vec<DenseMatrix>> = rep
        .generators
        .iter()
        .map(|y| {
            let mut v = vec![DenseMatrix::identity(ring, dim)];
            for _ in 1..p {
                v.push(v.last().expect("nonempty").mul(y)?);
            }
            Ok(v)
        })
        .collect::<Result<_, LinalgError>>()?;
    let mut alpha = vec![0u32; g];
    loop {
        let mut m = DenseMatrix::identity(ring, dim);
        for (i, &e) in alpha.iter().enumerate() {
            if e > 0 {
                m = m.mul(&powers[i][e as usize])?;
            }
        }
        rows.push(m.entries().to_vec());
        // odometer over [0, p)^{2n}
        let mut k = 0;
        loop {
            if k == g {
                powers.clear();
                let rank = DenseMatrix::from_rows(ring, rows)?.rank()?;
                return Ok(SpanCheck { rank, expected });
            }
            alpha[k] += 1;
            if alpha[k] < p {
                break;
            }
            alpha[k] = 0;
            k += 1;
        }
    }
}

/// `Some(λ)` when `a` evaluates to `λ·I` at this fiber.
pub fn scalar_at_fiber(a: &WeylElement, rep: &FiberRep) -> Result<Option<Scalar>, FiberError> {
    Ok(fiber_eval(a, rep)?.as_scalar())
}

/// True when the image of `a` in this fiber is a scalar matrix.
pub fn is_scalar_at_fiber(a: &WeylElement, rep: &FiberRep) -> Result<bool, FiberError> {
    Ok(scalar_at_fiber(a, rep)?.is_some())
}
