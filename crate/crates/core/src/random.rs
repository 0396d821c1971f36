//! Seeded random quaternion matrices for instance generation and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::factor::{mgs, DEFAULT_RANK_TOL};
use crate::qmatrix::QuaternionMatrix;
use crate::quat::{Quaternion, StandardEigenvalue};

pub type QRng = ChaCha8Rng;

/// ChaCha-based generator; its output stream is stable across platforms and
/// crate versions.
pub fn seeded_rng(seed: u64) -> QRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Components uniform in `[-1, 1)`.
pub fn random_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    )
}

pub fn random_unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let q = random_quaternion(rng);
        let n = q.norm();
        if n > 1e-3 {
            return q / n;
        }
    }
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> QuaternionMatrix {
    QuaternionMatrix::from_fn(rows, cols, |_, _| random_quaternion(rng))
}

/// Matrix with real entries uniform in `[-1, 1)`.
pub fn random_real_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> QuaternionMatrix {
    QuaternionMatrix::from_fn(rows, cols, |_, _| Quaternion::real(rng.gen_range(-1.0..1.0)))
}

/// Product of random `rows×rank` and `rank×cols` factors.
pub fn random_low_rank<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    rank: usize,
) -> QuaternionMatrix {
    &random_matrix(rng, rows, rank) * &random_matrix(rng, rank, cols)
}

/// Unitary matrix from Gram-Schmidt on a random square matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QuaternionMatrix {
    loop {
        let basis = mgs(&random_matrix(rng, n, n), DEFAULT_RANK_TOL);
        if basis.rank() == n {
            return basis.into_matrix();
        }
    }
}

/// Real orthogonal matrix.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QuaternionMatrix {
    loop {
        let basis = mgs(&random_real_matrix(rng, n, n), DEFAULT_RANK_TOL);
        if basis.rank() == n {
            return basis.into_matrix();
        }
    }
}

/// Standard eigenvalue with real part in `[-2, 2)` and imaginary part in `[0, 2)`.
pub fn random_standard_eigenvalue<R: Rng + ?Sized>(rng: &mut R) -> StandardEigenvalue {
    StandardEigenvalue {
        re: rng.gen_range(-2.0..2.0),
        im: rng.gen_range(0.0..2.0),
    }
}

/// `W·diag(I_r, -I_{n-r})·W*` for unitary `W`.
pub fn reflection_from_unitary(w: &QuaternionMatrix, r: usize) -> QuaternionMatrix {
    let n = w.rows();
    let signs: Vec<Quaternion> = (0..n)
        .map(|i| Quaternion::real(if i < r { 1.0 } else { -1.0 }))
        .collect();
    &(w * &QuaternionMatrix::diagonal(&signs)) * &w.adjoint()
}
