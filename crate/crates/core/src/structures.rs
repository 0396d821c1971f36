//! Generalized reflection matrices and the (anti)reflexive matrices they define.
//!
//! For a reflection pair `(P, Q)` with eigenbases `U = [U1, U2]` of `P` and
//! `V = [V1, V2]` of `Q`, every `A` splits into blocks `Aij = Ui* A Vj`.
//! Reflexive matrices (`A = PAQ`) are block diagonal in this form and
//! antireflexive ones (`A = -PAQ`) block anti-diagonal.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ReflectionDefect, Result};
use crate::factor::{reflection_eigenbasis, OrthonormalBasis};
use crate::qmatrix::QuaternionMatrix;

/// Default relative tolerance for structural checks.
pub const DEFAULT_STRUCTURE_TOL: f64 = 1e-8;

/// Checks `P* = P`, `P² = I` and `P ≠ I`, each against `tol · n` in the
/// Frobenius norm, reporting the first violated condition.
pub fn check_reflection(p: &QuaternionMatrix, tol: f64) -> Result<(), ReflectionDefect> {
    if !p.is_square() {
        return Err(ReflectionDefect::NotSquare);
    }
    let n = p.rows();
    let bound = tol * n as f64;
    let id = QuaternionMatrix::identity(n);
    if p.distance(&p.adjoint()) > bound {
        return Err(ReflectionDefect::NotHermitian);
    }
    if (p * p).distance(&id) > bound {
        return Err(ReflectionDefect::NotInvolutory);
    }
    if p.distance(&id) <= bound {
        return Err(ReflectionDefect::Identity);
    }
    Ok(())
}

/// Whether `p` is a generalized reflection matrix. Errors on non-square input.
pub fn validate_reflection(p: &QuaternionMatrix, tol: f64) -> Result<bool> {
    if !p.is_square() {
        return Err(Error::NotSquare {
            op: "validate_reflection",
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    Ok(check_reflection(p, tol).is_ok())
}

/// A validated pair `(P, Q)` of generalized reflections together with their
/// eigenbases. Immutable after construction.
#[derive(Clone, Debug)]
pub struct ReflectionPair {
    p: QuaternionMatrix,
    q: QuaternionMatrix,
    u1: QuaternionMatrix,
    u2: QuaternionMatrix,
    v1: QuaternionMatrix,
    v2: QuaternionMatrix,
}

impl ReflectionPair {
    pub fn new(p: QuaternionMatrix, q: QuaternionMatrix, tol: f64) -> Result<Self> {
        let (u1, u2) = eigenbasis_named(&p, "P", tol)?;
        let (v1, v2) = eigenbasis_named(&q, "Q", tol)?;
        if p.rows() != q.rows() {
            return Err(Error::DimensionMismatch {
                op: "make_pair",
                left: p.shape(),
                right: q.shape(),
            });
        }
        Ok(Self {
            p,
            q,
            u1: u1.into_matrix(),
            u2: u2.into_matrix(),
            v1: v1.into_matrix(),
            v2: v2.into_matrix(),
        })
    }

    /// The pair `(P, P)`.
    pub fn same(p: QuaternionMatrix, tol: f64) -> Result<Self> {
        Self::new(p.clone(), p, tol)
    }

    pub fn n(&self) -> usize {
        self.p.rows()
    }

    pub fn r1(&self) -> usize {
        self.u1.cols()
    }

    pub fn r2(&self) -> usize {
        self.v1.cols()
    }

    pub fn p(&self) -> &QuaternionMatrix {
        &self.p
    }

    pub fn q(&self) -> &QuaternionMatrix {
        &self.q
    }

    pub fn u1(&self) -> &QuaternionMatrix {
        &self.u1
    }

    pub fn u2(&self) -> &QuaternionMatrix {
        &self.u2
    }

    pub fn v1(&self) -> &QuaternionMatrix {
        &self.v1
    }

    pub fn v2(&self) -> &QuaternionMatrix {
        &self.v2
    }

    /// `[U1, U2]`.
    pub fn u(&self) -> QuaternionMatrix {
        self.u1.hstack(&self.u2).expect("eigenbases share row count")
    }

    /// `[V1, V2]`.
    pub fn v(&self) -> QuaternionMatrix {
        self.v1.hstack(&self.v2).expect("eigenbases share row count")
    }

    /// `P A Q`.
    pub fn conjugate(&self, a: &QuaternionMatrix) -> Result<QuaternionMatrix> {
        self.p.matmul(a)?.matmul(&self.q)
    }

    fn check_shape(&self, op: &'static str, a: &QuaternionMatrix) -> Result<()> {
        let n = self.n();
        if a.shape() != (n, n) {
            return Err(Error::DimensionMismatch {
                op,
                left: (n, n),
                right: a.shape(),
            });
        }
        Ok(())
    }
}

fn eigenbasis_named(
    p: &QuaternionMatrix,
    name: &'static str,
    tol: f64,
) -> Result<(OrthonormalBasis, OrthonormalBasis)> {
    reflection_eigenbasis(p, tol).map_err(|e| match e {
        Error::InvalidReflection { defect, .. } => Error::InvalidReflection { name, defect },
        other => other,
    })
}

/// The two structured classes an inverse eigenproblem can target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureClass {
    /// `A = PAQ`
    Reflexive,
    /// `A = -PAQ`
    Antireflexive,
}

impl StructureClass {
    /// `+1` for reflexive, `-1` for antireflexive.
    pub fn sign(self) -> f64 {
        match self {
            StructureClass::Reflexive => 1.0,
            StructureClass::Antireflexive => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StructureClass::Reflexive => "reflexive",
            StructureClass::Antireflexive => "antireflexive",
        }
    }

    /// Residual of the defining identity, `‖A ∓ PAQ‖`.
    pub fn identity_residual(self, a: &QuaternionMatrix, pair: &ReflectionPair) -> Result<f64> {
        pair.check_shape("identity_residual", a)?;
        let paq = pair.conjugate(a)?.scale(self.sign());
        Ok(a.distance(&paq))
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StructureClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reflexive" => Ok(StructureClass::Reflexive),
            "antireflexive" => Ok(StructureClass::Antireflexive),
            other => Err(Error::InvalidArgument(format!(
                "unknown class {other:?} (expected reflexive or antireflexive)"
            ))),
        }
    }
}

/// Outcome of [`classify`]. The zero matrix is both reflexive and
/// antireflexive and gets its own label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Reflexive,
    Antireflexive,
    Neither,
    Zero,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Reflexive => "reflexive",
            Classification::Antireflexive => "antireflexive",
            Classification::Neither => "neither",
            Classification::Zero => "zero",
        }
    }

    /// Whether a matrix with this label belongs to `class`.
    pub fn admits(self, class: StructureClass) -> bool {
        matches!(
            (self, class),
            (Classification::Zero, _)
                | (Classification::Reflexive, StructureClass::Reflexive)
                | (Classification::Antireflexive, StructureClass::Antireflexive)
        )
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Zero when `‖A‖ ≤ tol`; otherwise reflexive / antireflexive when
/// `‖A ∓ PAQ‖ ≤ tol · ‖A‖`.
pub fn classify(a: &QuaternionMatrix, pair: &ReflectionPair, tol: f64) -> Result<Classification> {
    pair.check_shape("classify", a)?;
    let norm = a.fro_norm();
    if norm <= tol {
        return Ok(Classification::Zero);
    }
    let paq = pair.conjugate(a)?;
    if a.distance(&paq) <= tol * norm {
        Ok(Classification::Reflexive)
    } else if (a + &paq).fro_norm() <= tol * norm {
        Ok(Classification::Antireflexive)
    } else {
        Ok(Classification::Neither)
    }
}

/// Orthogonal split `A = A_r + A_a` with `A_r = (A + PAQ)/2` reflexive and
/// `A_a = (A - PAQ)/2` antireflexive.
pub fn split(
    a: &QuaternionMatrix,
    pair: &ReflectionPair,
) -> Result<(QuaternionMatrix, QuaternionMatrix)> {
    pair.check_shape("split", a)?;
    let paq = pair.conjugate(a)?;
    Ok(((a + &paq).scale(0.5), (a - &paq).scale(0.5)))
}

/// `A` expressed in the eigenbases of a reflection pair: `Aij = Ui* A Vj`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockForm {
    /// `r1 × r2`
    pub a11: QuaternionMatrix,
    /// `r1 × (n - r2)`
    pub a12: QuaternionMatrix,
    /// `(n - r1) × r2`
    pub a21: QuaternionMatrix,
    /// `(n - r1) × (n - r2)`
    pub a22: QuaternionMatrix,
}

impl BlockForm {
    pub fn zeros(pair: &ReflectionPair) -> Self {
        let (n, r1, r2) = (pair.n(), pair.r1(), pair.r2());
        Self {
            a11: QuaternionMatrix::zeros(r1, r2),
            a12: QuaternionMatrix::zeros(r1, n - r2),
            a21: QuaternionMatrix::zeros(n - r1, r2),
            a22: QuaternionMatrix::zeros(n - r1, n - r2),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a11.fro_norm_sqr()
            + self.a12.fro_norm_sqr()
            + self.a21.fro_norm_sqr()
            + self.a22.fro_norm_sqr()
    }

    fn check_shapes(&self, pair: &ReflectionPair) -> Result<()> {
        let expected = Self::zeros(pair);
        for (got, want) in [
            (&self.a11, &expected.a11),
            (&self.a12, &expected.a12),
            (&self.a21, &expected.a21),
            (&self.a22, &expected.a22),
        ] {
            if got.shape() != want.shape() {
                return Err(Error::DimensionMismatch {
                    op: "block_reconstruct",
                    left: want.shape(),
                    right: got.shape(),
                });
            }
        }
        Ok(())
    }
}

pub fn block_decompose(a: &QuaternionMatrix, pair: &ReflectionPair) -> Result<BlockForm> {
    pair.check_shape("block_decompose", a)?;
    let u1a = &pair.u1.adjoint() * a;
    let u2a = &pair.u2.adjoint() * a;
    Ok(BlockForm {
        a11: &u1a * &pair.v1,
        a12: &u1a * &pair.v2,
        a21: &u2a * &pair.v1,
        a22: &u2a * &pair.v2,
    })
}

/// `A = [U1, U2] [[A11, A12], [A21, A22]] [V1, V2]*`.
pub fn block_reconstruct(blocks: &BlockForm, pair: &ReflectionPair) -> Result<QuaternionMatrix> {
    blocks.check_shapes(pair)?;
    let middle =
        QuaternionMatrix::from_blocks(&blocks.a11, &blocks.a12, &blocks.a21, &blocks.a22)?;
    Ok(&(&pair.u() * &middle) * &pair.v().adjoint())
}
