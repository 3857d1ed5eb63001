/// The shape of `A_n`: `2n` generators `y_1 … y_{2n}` with `[y_i, y_j] = ω_ij`,
/// `ω_ij = δ_{i,j+n} − δ_{i+n,j}`.
///
/// With this convention `[y_{n+i}, y_i] = 1`, so `y_i` behaves like the
/// coordinate `x_i` and `y_{n+i}` like `∂/∂x_i`. Indices in the API are
/// 0-based; rendered names are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylSignature {
    n: usize,
}

impl WeylSignature {
    pub fn new(n: usize) -> Self {
        WeylSignature { n }
    }

    /// Half-dimension `n`.
    pub fn n(self) -> usize {
        self.n
    }

    pub fn generators(self) -> usize {
        2 * self.n
    }

    pub fn omega(self, i: usize, j: usize) -> i64 {
        let n = self.n;
        i64::from(i == j + n) - i64::from(i + n == j)
    }

    pub fn omega_matrix(self) -> Vec<Vec<i64>> {
        let g = self.generators();
        (0..g).map(|i| (0..g).map(|j| self.omega(i, j)).collect()).collect()
    }

    /// The generator that fails to commute with `i`.
    pub fn conjugate(self, i: usize) -> usize {
        if i < self.n {
            i + self.n
        } else {
            i - self.n
        }
    }
}
