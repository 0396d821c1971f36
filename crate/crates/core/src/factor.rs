//! Orthonormalization and pseudoinverse machinery over the quaternions.
//!
//! Column spaces are right H-modules: a column `v` is expanded as `Σ u_s c_s`
//! with coefficients on the right, so projections read `v - u·(u* v)`.

use crate::error::{Error, ReflectionDefect, Result};
use crate::qmatrix::QuaternionMatrix;
use crate::quat::Quaternion;
use crate::structures::check_reflection;

/// Rank-decision tolerance for Gram-Schmidt and the pseudoinverse.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// A matrix with orthonormal columns: `B* B = I_rank`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthonormalBasis {
    matrix: QuaternionMatrix,
}

impl OrthonormalBasis {
    pub fn matrix(&self) -> &QuaternionMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> QuaternionMatrix {
        self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.cols()
    }

    /// Orthogonal projector `B B*` onto the spanned subspace.
    pub fn projector(&self) -> QuaternionMatrix {
        &self.matrix * &self.matrix.adjoint()
    }
}

/// Modified Gram-Schmidt with one reorthogonalization pass.
///
/// A column is dropped when its residual norm is at most
/// `tol · max(1, largest column norm of m)`.
pub fn mgs(m: &QuaternionMatrix, tol: f64) -> OrthonormalBasis {
    let n = m.rows();
    let threshold = tol * m.max_column_norm().max(1.0);
    let mut basis: Vec<Vec<Quaternion>> = Vec::new();

    for j in 0..m.cols() {
        let mut v: Vec<Quaternion> = (0..n).map(|i| m[(i, j)]).collect();
        for _ in 0..2 {
            for u in &basis {
                let coeff: Quaternion = u.iter().zip(&v).map(|(&a, &b)| a.conj() * b).sum();
                for (vi, &ui) in v.iter_mut().zip(u) {
                    *vi -= ui * coeff;
                }
            }
        }
        let norm = v.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt();
        if norm > threshold {
            basis.push(v.into_iter().map(|q| q / norm).collect());
        }
    }

    let matrix = QuaternionMatrix::from_fn(n, basis.len(), |i, j| basis[j][i]);
    OrthonormalBasis { matrix }
}

/// Eigenbases of a generalized reflection `P`: `U1` spans the `+1` eigenspace
/// (columns of `I + P`) and `U2` the `-1` eigenspace (columns of `I - P`).
pub fn reflection_eigenbasis(
    p: &QuaternionMatrix,
    tol: f64,
) -> Result<(OrthonormalBasis, OrthonormalBasis)> {
    check_reflection(p, tol).map_err(|defect| Error::InvalidReflection { name: "P", defect })?;
    let id = QuaternionMatrix::identity(p.rows());
    let u1 = mgs(&(&id + p), DEFAULT_RANK_TOL);
    let u2 = mgs(&(&id - p), DEFAULT_RANK_TOL);
    if u1.rank() + u2.rank() != p.rows() {
        return Err(Error::InvalidReflection {
            name: "P",
            defect: ReflectionDefect::RankDeficient,
        });
    }
    Ok((u1, u2))
}

/// Cholesky factor `L` (lower triangular, real positive diagonal) of a
/// Hermitian positive definite quaternion matrix: `H = L L*`.
pub fn cholesky(h: &QuaternionMatrix) -> Result<QuaternionMatrix> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            op: "cholesky",
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let n = h.rows();
    let mut l = QuaternionMatrix::zeros(n, n);
    for j in 0..n {
        let d = h[(j, j)].w - (0..j).map(|k| l[(j, k)].norm_sqr()).sum::<f64>();
        if d <= 0.0 || !d.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "cholesky: matrix is not positive definite (pivot {j} = {d:e})"
            )));
        }
        let d = d.sqrt();
        l[(j, j)] = Quaternion::real(d);
        for i in j + 1..n {
            let s: Quaternion = (0..j).map(|k| l[(i, k)] * l[(j, k)].conj()).sum();
            l[(i, j)] = (h[(i, j)] - s) / d;
        }
    }
    Ok(l)
}

/// Solves `L L* Y = B` given the Cholesky factor `L`.
fn cholesky_solve(l: &QuaternionMatrix, b: &QuaternionMatrix) -> QuaternionMatrix {
    let n = l.rows();
    let c = b.cols();
    let mut t = b.clone();
    for i in 0..n {
        for k in 0..i {
            let lik = l[(i, k)];
            for j in 0..c {
                let v = lik * t[(k, j)];
                t[(i, j)] -= v;
            }
        }
        let d = l[(i, i)].w;
        for j in 0..c {
            t[(i, j)] = t[(i, j)] / d;
        }
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            let lki = l[(k, i)].conj();
            for j in 0..c {
                let v = lki * t[(k, j)];
                t[(i, j)] -= v;
            }
        }
        let d = l[(i, i)].w;
        for j in 0..c {
            t[(i, j)] = t[(i, j)] / d;
        }
    }
    t
}

/// Moore-Penrose pseudoinverse via a full-rank factorization `A = F G`:
/// `F` from Gram-Schmidt (so `F* F = I`), `G = F* A`, and
/// `A⁺ = G* (G G*)⁻¹ F*`.
pub fn pinv(a: &QuaternionMatrix, tol: f64) -> QuaternionMatrix {
    let f = mgs(a, tol);
    if f.rank() == 0 {
        return QuaternionMatrix::zeros(a.cols(), a.rows());
    }
    let f = f.matrix();
    let g = &f.adjoint() * a;
    let gg = &g * &g.adjoint();
    match cholesky(&gg) {
        Ok(l) => &g.adjoint() * &cholesky_solve(&l, &f.adjoint()),
        // G G* is positive definite whenever Gram-Schmidt kept a column; a
        // failure here means the retained residuals were at rounding level.
        Err(_) => pinv(a, tol * 10.0),
    }
}

/// `R_X = I - X X⁺`, the projector onto the orthogonal complement of range(X).
pub fn right_annihilator(x: &QuaternionMatrix) -> QuaternionMatrix {
    let xp = pinv(x, DEFAULT_RANK_TOL);
    &QuaternionMatrix::identity(x.rows()) - &(x * &xp)
}

/// `L_X = I - X⁺ X`, the projector onto the null space of `X`.
pub fn left_annihilator(x: &QuaternionMatrix) -> QuaternionMatrix {
    let xp = pinv(x, DEFAULT_RANK_TOL);
    &QuaternionMatrix::identity(x.cols()) - &(&xp * x)
}

/// The four Penrose residuals `‖AXA − A‖`, `‖XAX − X‖`, `‖(AX)* − AX‖`,
/// `‖(XA)* − XA‖` for a candidate pseudoinverse `X`.
pub fn penrose_residuals(a: &QuaternionMatrix, x: &QuaternionMatrix) -> [f64; 4] {
    let ax = a * x;
    let xa = x * a;
    [
        (&ax * a).distance(a),
        (&xa * x).distance(x),
        ax.adjoint().distance(&ax),
        xa.adjoint().distance(&xa),
    ]
}

/// Solution structure of the left equation `A X = B` (unknown `A`).
#[derive(Clone, Debug)]
pub struct LeftSolveResult {
    pub consistent: bool,
    /// `‖B X⁺ X − B‖`.
    pub residual: f64,
    /// `B X⁺`.
    pub particular: QuaternionMatrix,
    /// `R_X`.
    pub annihilator: QuaternionMatrix,
}

impl LeftSolveResult {
    /// `B X⁺ + W R_X`; solves `A X = B` for every `W` when consistent.
    pub fn materialize(&self, w: &QuaternionMatrix) -> Result<QuaternionMatrix> {
        let shape = (self.particular.rows(), self.annihilator.rows());
        if w.shape() != shape {
            return Err(Error::DimensionMismatch {
                op: "materialize",
                left: shape,
                right: w.shape(),
            });
        }
        self.particular.try_add(&w.matmul(&self.annihilator)?)
    }
}

/// Consistency test and general solution of `A X = B`: consistent iff
/// `B X⁺ X = B` (relative to `‖B‖`), with general solution `B X⁺ + W R_X`.
pub fn solve_left(x: &QuaternionMatrix, b: &QuaternionMatrix, tol: f64) -> Result<LeftSolveResult> {
    if b.cols() != x.cols() {
        return Err(Error::DimensionMismatch {
            op: "solve_left",
            left: x.shape(),
            right: b.shape(),
        });
    }
    let xp = pinv(x, DEFAULT_RANK_TOL);
    let particular = b * &xp;
    let residual = (&particular * x).distance(b);
    let annihilator = &QuaternionMatrix::identity(x.rows()) - &(x * &xp);
    Ok(LeftSolveResult {
        consistent: residual <= tol * b.fro_norm(),
        residual,
        particular,
        annihilator,
    })
}
