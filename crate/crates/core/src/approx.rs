//! Nearest feasible matrix: given a target `E`, the unique member of the
//! solution set of `AZ = ZΛ` (reflexive or antireflexive) closest to `E` in
//! the Frobenius norm.
//!
//! In eigenbasis coordinates the free parameter of each solved block enters
//! as `W R_X`, so the optimum sets `W` to the matching block of `E`.

use crate::error::{Error, Result};
use crate::inverse_eig::{GeneralSolution, PartitionedSpectralData};
use crate::qmatrix::QuaternionMatrix;
use crate::structures::{block_decompose, BlockForm, ReflectionPair, StructureClass};

/// Squared contributions of each block of `A - E` to the squared distance.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BlockResiduals {
    pub b11: f64,
    pub b12: f64,
    pub b21: f64,
    pub b22: f64,
}

impl BlockResiduals {
    pub fn total(&self) -> f64 {
        self.b11 + self.b12 + self.b21 + self.b22
    }
}

#[derive(Clone, Debug)]
pub struct ApproximationResult {
    pub minimizer: QuaternionMatrix,
    /// `‖minimizer − E‖`, evaluated from the block residuals.
    pub distance: f64,
    pub block_residuals: BlockResiduals,
}

fn is_hermitian_idempotent(p: &QuaternionMatrix, tol: f64) -> bool {
    let bound = tol * p.fro_norm().max(1.0);
    p.is_square() && p.adjoint().distance(p) <= bound && (p * p).distance(p) <= bound
}

/// Minimum of `‖Γ X F − E‖` over all `X` for orthogonal projectors `Γ`, `F`.
///
/// The products `Γ X F` sweep exactly the matrices fixed by `M ↦ Γ M F`, so the
/// minimum is `‖Γ E F − E‖`, attained by `X = E + L_Γ Y R_F` for any `Y`.
/// Returns the minimum and the `Y = 0` minimizer `X = E`.
pub fn nearest_through_projectors(
    e: &QuaternionMatrix,
    gamma: &QuaternionMatrix,
    f: &QuaternionMatrix,
    tol: f64,
) -> Result<(f64, QuaternionMatrix)> {
    if !is_hermitian_idempotent(gamma, tol) {
        return Err(Error::NotProjector("Γ"));
    }
    if !is_hermitian_idempotent(f, tol) {
        return Err(Error::NotProjector("F"));
    }
    if gamma.rows() != e.rows() || f.rows() != e.cols() {
        return Err(Error::DimensionMismatch {
            op: "nearest_through_projectors",
            left: (gamma.rows(), f.rows()),
            right: e.shape(),
        });
    }
    let projected = &(gamma * e) * f;
    Ok((projected.distance(e), e.clone()))
}

/// Minimizes `‖W R_X − C‖` over `W`. The minimum is `‖C X X⁺‖`; every
/// `W = C + T X X⁺` attains it with the same product `W R_X = C R_X`.
/// Returns the `T = 0` member `W = C` and the minimum.
pub fn min_residual_rhs(
    c: &QuaternionMatrix,
    x: &QuaternionMatrix,
) -> Result<(QuaternionMatrix, f64)> {
    if c.cols() != x.rows() {
        return Err(Error::DimensionMismatch {
            op: "min_residual_rhs",
            left: c.shape(),
            right: x.shape(),
        });
    }
    let xxp = &QuaternionMatrix::identity(x.rows()) - &crate::factor::right_annihilator(x);
    Ok((c.clone(), (c * &xxp).fro_norm()))
}

/// The blocks of `E` that act as free parameters for `class`:
/// `(E11, E22)` for reflexive, `(E12, E21)` for antireflexive.
fn parameter_blocks(e: BlockForm, class: StructureClass) -> (QuaternionMatrix, QuaternionMatrix) {
    match class {
        StructureClass::Reflexive => (e.a11, e.a22),
        StructureClass::Antireflexive => (e.a12, e.a21),
    }
}

/// Parameters from the uniqueness argument:
/// `W1 = E_1 − Y1 Φ X1⁺ + T1 X1 X1⁺`, `W2 = E_2 − Y2 Ψ X2⁺ + T2 X2 X2⁺`, where
/// `(E_1, E_2)` are the parameter blocks of `E`. Every choice of `T1`, `T2`
/// materializes to the same minimizer.
pub fn minimizing_parameters(
    e: &QuaternionMatrix,
    solution: &GeneralSolution<'_>,
    pair: &ReflectionPair,
    t1: &QuaternionMatrix,
    t2: &QuaternionMatrix,
) -> Result<(QuaternionMatrix, QuaternionMatrix)> {
    let (e1, e2) = parameter_blocks(block_decompose(e, pair)?, solution.class());
    let range1 = &QuaternionMatrix::identity(solution.annihilator1().rows()) - solution.annihilator1();
    let range2 = &QuaternionMatrix::identity(solution.annihilator2().rows()) - solution.annihilator2();
    let w1 = e1.try_sub(solution.particular1())?.try_add(&t1.matmul(&range1)?)?;
    let w2 = e2.try_sub(solution.particular2())?.try_add(&t2.matmul(&range2)?)?;
    Ok((w1, w2))
}

/// Nearest member of the solution set to `E`, for the class of `part`.
pub fn nearest_solution(
    e: &QuaternionMatrix,
    part: &PartitionedSpectralData,
    pair: &ReflectionPair,
) -> Result<ApproximationResult> {
    let n = pair.n();
    if e.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            op: "nearest_solution",
            left: (n, n),
            right: e.shape(),
        });
    }
    let solution = GeneralSolution::new(part, pair)?;
    let blocks = block_decompose(e, pair)?;
    let (e1, e2) = parameter_blocks(blocks.clone(), part.class);
    let minimizer = solution.materialize(&e1, &e2)?;

    // ‖E_b X X⁺ − Y Φ X⁺‖² per solved block
    let solved_residual = |eb: &QuaternionMatrix, particular: &QuaternionMatrix, annihilator: &QuaternionMatrix| {
        let range = &QuaternionMatrix::identity(annihilator.rows()) - annihilator;
        (eb * &range).distance(particular).powi(2)
    };
    let s1 = solved_residual(&e1, solution.particular1(), solution.annihilator1());
    let s2 = solved_residual(&e2, solution.particular2(), solution.annihilator2());
    let block_residuals = match part.class {
        StructureClass::Reflexive => BlockResiduals {
            b11: s1,
            b12: blocks.a12.fro_norm_sqr(),
            b21: blocks.a21.fro_norm_sqr(),
            b22: s2,
        },
        StructureClass::Antireflexive => BlockResiduals {
            b11: blocks.a11.fro_norm_sqr(),
            b12: s1,
            b21: s2,
            b22: blocks.a22.fro_norm_sqr(),
        },
    };
    Ok(ApproximationResult {
        minimizer,
        distance: block_residuals.total().sqrt(),
        block_residuals,
    })
}

/// Reflexive minimizer `U diag(Y1ΦX1⁺ + E11 R_{X1}, Y2ΨX2⁺ + E22 R_{X2}) V*`.
pub fn nearest_reflexive_solution(
    e: &QuaternionMatrix,
    part: &PartitionedSpectralData,
    pair: &ReflectionPair,
) -> Result<ApproximationResult> {
    expect_class(part, StructureClass::Reflexive)?;
    nearest_solution(e, part, pair)
}

/// Antireflexive minimizer `U antidiag(Y1ΦX1⁺ + E12 R_{X1}, Y2ΨX2⁺ + E21 R_{X2}) V*`.
pub fn nearest_antireflexive_solution(
    e: &QuaternionMatrix,
    part: &PartitionedSpectralData,
    pair: &ReflectionPair,
) -> Result<ApproximationResult> {
    expect_class(part, StructureClass::Antireflexive)?;
    nearest_solution(e, part, pair)
}

fn expect_class(part: &PartitionedSpectralData, class: StructureClass) -> Result<()> {
    if part.class != class {
        return Err(Error::InvalidArgument(format!(
            "partition was built for the {} class, expected {class}",
            part.class
        )));
    }
    Ok(())
}
