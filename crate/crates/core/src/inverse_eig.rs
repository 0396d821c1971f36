//! The structured inverse right-eigenproblem: given `Z` (n×m) and
//! `Λ = diag(λ_1, …, λ_m)`, find reflexive or antireflexive `A` with `AZ = ZΛ`.
//!
//! Columns of `Z` are sorted into two blocks according to which eigenspaces of
//! `P` and `Q` they lie in. In the eigenbases the problem decouples into two
//! left equations `A_b X_b = Y_b Φ_b`, each solved in closed form by
//! [`solve_left`].

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::factor::{solve_left, LeftSolveResult};
use crate::qmatrix::QuaternionMatrix;
use crate::quat::{Quaternion, StandardEigenvalue};
use crate::random::{random_matrix, random_standard_eigenvalue, random_unitary, reflection_from_unitary, seeded_rng};
use crate::structures::{block_reconstruct, BlockForm, ReflectionPair, StructureClass, DEFAULT_STRUCTURE_TOL};

/// Prescribed eigenvectors (columns of `z`) and standard eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    z: QuaternionMatrix,
    lambdas: Vec<StandardEigenvalue>,
}

impl SpectralData {
    pub fn new(z: QuaternionMatrix, lambdas: Vec<StandardEigenvalue>) -> Result<Self> {
        if lambdas.len() != z.cols() {
            return Err(Error::InvalidArgument(format!(
                "{} eigenvalues for {} eigenvectors",
                lambdas.len(),
                z.cols()
            )));
        }
        if let Some(l) = lambdas.iter().find(|l| l.im < 0.0 || !l.re.is_finite() || !l.im.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "eigenvalue {} + {}i is not in standard form",
                l.re, l.im
            )));
        }
        Ok(Self { z, lambdas })
    }

    /// Accepts arbitrary quaternion eigenvalues. Each pair `(z, λ)` is replaced
    /// by the equivalent `(z w, w⁻¹ λ w)` whose eigenvalue is standard.
    pub fn from_quaternion_eigenpairs(z: &QuaternionMatrix, lambdas: &[Quaternion]) -> Result<Self> {
        if lambdas.len() != z.cols() {
            return Err(Error::InvalidArgument(format!(
                "{} eigenvalues for {} eigenvectors",
                lambdas.len(),
                z.cols()
            )));
        }
        let witnesses: Vec<Quaternion> = lambdas.iter().map(|l| l.standardizing_witness()).collect();
        Self::new(
            z.scale_columns_right(&witnesses),
            lambdas.iter().map(|l| l.standardize()).collect(),
        )
    }

    pub fn z(&self) -> &QuaternionMatrix {
        &self.z
    }

    pub fn lambdas(&self) -> &[StandardEigenvalue] {
        &self.lambdas
    }

    pub fn n(&self) -> usize {
        self.z.rows()
    }

    pub fn m(&self) -> usize {
        self.z.cols()
    }

    /// `Z Λ`.
    pub fn z_lambda(&self) -> QuaternionMatrix {
        self.z.scale_columns_right(&quaternions(&self.lambdas))
    }

    /// `‖A Z − Z Λ‖`.
    pub fn residual(&self, a: &QuaternionMatrix) -> Result<f64> {
        Ok(a.matmul(&self.z)?.distance(&self.z_lambda()))
    }

    /// Scale used for relative residuals: `‖Z‖ · (1 + max |λ|)`.
    pub fn scale(&self) -> f64 {
        let max_l = self.lambdas.iter().map(|l| l.modulus()).fold(0.0, f64::max);
        self.z.fro_norm() * (1.0 + max_l)
    }
}

fn quaternions(lambdas: &[StandardEigenvalue]) -> Vec<Quaternion> {
    lambdas.iter().map(|l| l.to_quaternion()).collect()
}

/// Relative distances of one column from the two subspaces a block requires.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ColumnResidual {
    pub block: u8,
    /// Distance from the `Q`-side eigenspace, relative to `‖z‖`.
    pub domain_residual: f64,
    /// Distance from the `P`-side eigenspace, relative to `‖z‖`.
    pub range_residual: f64,
}

/// `(Z, Λ)` sorted into blocks and expressed in eigenbasis coordinates.
///
/// Reflexive: block 1 columns lie in `range(V1) ∩ range(U1)`, block 2 in
/// `range(V2) ∩ range(U2)`. Antireflexive: block 1 in `range(V2) ∩ range(U1)`,
/// block 2 in `range(V1) ∩ range(U2)`. Then `X_b` holds the `V`-side
/// coordinates and `Y_b` the `U`-side coordinates. For a column with `λ = 0`
/// only the `V`-side membership is required; its `Y` column is the projection
/// `U_b* z`, which enters only through `Y_b Φ_b` and is annihilated there.
#[derive(Clone, Debug)]
pub struct PartitionedSpectralData {
    /// Original column indices, block 1 first.
    pub perm: Vec<usize>,
    /// Width of block 1.
    pub k: usize,
    pub x1: QuaternionMatrix,
    pub x2: QuaternionMatrix,
    pub y1: QuaternionMatrix,
    pub y2: QuaternionMatrix,
    pub phi: Vec<StandardEigenvalue>,
    pub psi: Vec<StandardEigenvalue>,
    pub class: StructureClass,
    pub tol: f64,
}

impl PartitionedSpectralData {
    pub fn m(&self) -> usize {
        self.perm.len()
    }

    /// `Y1 Φ`.
    pub fn y1_phi(&self) -> QuaternionMatrix {
        self.y1.scale_columns_right(&quaternions(&self.phi))
    }

    /// `Y2 Ψ`.
    pub fn y2_psi(&self) -> QuaternionMatrix {
        self.y2.scale_columns_right(&quaternions(&self.psi))
    }

    /// Relative consistency residuals `‖Y_b Φ_b X_b⁺ X_b − Y_b Φ_b‖ / ‖Y_b Φ_b‖`
    /// (zero for a vanishing right-hand side).
    pub fn consistency_residuals(&self) -> [f64; 2] {
        let rel = |res: &LeftSolveResult, rhs: &QuaternionMatrix| {
            let norm = rhs.fro_norm();
            if norm == 0.0 {
                0.0
            } else {
                res.residual / norm
            }
        };
        let (b1, b2) = self.left_solves(f64::INFINITY);
        [rel(&b1, &self.y1_phi()), rel(&b2, &self.y2_psi())]
    }

    fn left_solves(&self, tol: f64) -> (LeftSolveResult, LeftSolveResult) {
        let b1 = solve_left(&self.x1, &self.y1_phi(), tol).expect("partition shapes agree");
        let b2 = solve_left(&self.x2, &self.y2_psi(), tol).expect("partition shapes agree");
        (b1, b2)
    }
}

/// Sorts the columns of `Z` into the two blocks of `class`.
///
/// A column fits a block when its relative distance from the block's
/// `Q`-side eigenspace is at most `tol` and, unless `λ = 0` (|λ| ≤ tol),
/// its distance from the `P`-side eigenspace is at most `tol` too. Zero
/// columns go to block 1.
pub fn partition(
    data: &SpectralData,
    pair: &ReflectionPair,
    class: StructureClass,
    tol: f64,
) -> Result<PartitionedSpectralData> {
    if data.n() != pair.n() {
        return Err(Error::DimensionMismatch {
            op: "partition",
            left: (pair.n(), pair.n()),
            right: data.z.shape(),
        });
    }
    if tol <= 0.0 {
        return Err(Error::InvalidArgument("partition tolerance must be positive".into()));
    }
    let (d1, d2) = match class {
        StructureClass::Reflexive => (pair.v1(), pair.v2()),
        StructureClass::Antireflexive => (pair.v2(), pair.v1()),
    };
    let (r1, r2) = (pair.u1(), pair.u2());
    let residual = |basis: &QuaternionMatrix, z: &QuaternionMatrix, norm: f64| {
        let proj = basis * &(&basis.adjoint() * z);
        z.distance(&proj) / norm
    };

    let mut block1 = Vec::new();
    let mut block2 = Vec::new();
    for j in 0..data.m() {
        let z = data.z.column(j);
        let norm = z.fro_norm();
        if norm == 0.0 {
            block1.push(j);
            continue;
        }
        let zero_eigenvalue = data.lambdas[j].modulus() <= tol;
        let fits = |d: &QuaternionMatrix, r: &QuaternionMatrix, block: u8| {
            let c = ColumnResidual {
                block,
                domain_residual: residual(d, &z, norm),
                range_residual: residual(r, &z, norm),
            };
            let ok = c.domain_residual <= tol && (zero_eigenvalue || c.range_residual <= tol);
            (ok, c)
        };
        let (fits1, c1) = fits(d1, r1, 1);
        let (fits2, c2) = fits(d2, r2, 2);
        if fits1 {
            block1.push(j);
        } else if fits2 {
            block2.push(j);
        } else {
            return Err(Error::InfeasibleStructure {
                column: j,
                residuals: vec![c1, c2],
            });
        }
    }

    let z1 = data.z.select_columns(&block1);
    let z2 = data.z.select_columns(&block2);
    let pick = |idx: &[usize]| idx.iter().map(|&j| data.lambdas[j]).collect::<Vec<_>>();
    Ok(PartitionedSpectralData {
        k: block1.len(),
        x1: &d1.adjoint() * &z1,
        x2: &d2.adjoint() * &z2,
        y1: &r1.adjoint() * &z1,
        y2: &r2.adjoint() * &z2,
        phi: pick(&block1),
        psi: pick(&block2),
        perm: block1.into_iter().chain(block2).collect(),
        class,
        tol,
    })
}

/// Whether `Y1 Φ X1⁺ X1 = Y1 Φ` and `Y2 Ψ X2⁺ X2 = Y2 Ψ` hold within `tol`
/// relative to the right-hand sides. Empty blocks are vacuously consistent.
pub fn solvable(part: &PartitionedSpectralData, tol: f64) -> bool {
    part.consistency_residuals().iter().all(|&r| r <= tol)
}

/// All solutions of a solvable partitioned problem:
/// reflexive `A = U diag(B1, B2) V*`, antireflexive `A = U antidiag(B1, B2) V*`,
/// with `B_b = Y_b Φ_b X_b⁺ + W_b R_{X_b}` for free `W_b`.
#[derive(Clone, Debug)]
pub struct GeneralSolution<'a> {
    pair: &'a ReflectionPair,
    class: StructureClass,
    block1: LeftSolveResult,
    block2: LeftSolveResult,
}

impl<'a> GeneralSolution<'a> {
    pub fn new(part: &PartitionedSpectralData, pair: &'a ReflectionPair) -> Result<Self> {
        let (n, r1, r2) = (pair.n(), pair.r1(), pair.r2());
        let (x1_rows, x2_rows) = match part.class {
            StructureClass::Reflexive => (r2, n - r2),
            StructureClass::Antireflexive => (n - r2, r2),
        };
        if part.x1.rows() != x1_rows
            || part.x2.rows() != x2_rows
            || part.y1.rows() != r1
            || part.y2.rows() != n - r1
        {
            return Err(Error::InvalidArgument(
                "partition does not belong to this reflection pair".into(),
            ));
        }
        let [res1, res2] = part.consistency_residuals();
        if res1 > part.tol || res2 > part.tol {
            return Err(Error::Unsolvable {
                block1: res1,
                block2: res2,
            });
        }
        let (block1, block2) = part.left_solves(f64::INFINITY);
        Ok(Self {
            pair,
            class: part.class,
            block1,
            block2,
        })
    }

    pub fn class(&self) -> StructureClass {
        self.class
    }

    /// Shape of the free parameter `W1`.
    pub fn w1_shape(&self) -> (usize, usize) {
        (self.block1.particular.rows(), self.block1.annihilator.rows())
    }

    /// Shape of the free parameter `W2`.
    pub fn w2_shape(&self) -> (usize, usize) {
        (self.block2.particular.rows(), self.block2.annihilator.rows())
    }

    /// `Y1 Φ X1⁺`.
    pub fn particular1(&self) -> &QuaternionMatrix {
        &self.block1.particular
    }

    /// `Y2 Ψ X2⁺`.
    pub fn particular2(&self) -> &QuaternionMatrix {
        &self.block2.particular
    }

    /// `R_{X1}`.
    pub fn annihilator1(&self) -> &QuaternionMatrix {
        &self.block1.annihilator
    }

    /// `R_{X2}`.
    pub fn annihilator2(&self) -> &QuaternionMatrix {
        &self.block2.annihilator
    }

    /// Places the two solved blocks into a [`BlockForm`].
    pub fn blocks(&self, w1: &QuaternionMatrix, w2: &QuaternionMatrix) -> Result<BlockForm> {
        let b1 = self.block1.materialize(w1)?;
        let b2 = self.block2.materialize(w2)?;
        let mut form = BlockForm::zeros(self.pair);
        match self.class {
            StructureClass::Reflexive => {
                form.a11 = b1;
                form.a22 = b2;
            }
            StructureClass::Antireflexive => {
                form.a12 = b1;
                form.a21 = b2;
            }
        }
        Ok(form)
    }

    pub fn materialize(&self, w1: &QuaternionMatrix, w2: &QuaternionMatrix) -> Result<QuaternionMatrix> {
        block_reconstruct(&self.blocks(w1, w2)?, self.pair)
    }

    /// The `W1 = W2 = 0` member.
    pub fn particular(&self) -> QuaternionMatrix {
        let (a, b) = (self.w1_shape(), self.w2_shape());
        self.materialize(
            &QuaternionMatrix::zeros(a.0, a.1),
            &QuaternionMatrix::zeros(b.0, b.1),
        )
        .expect("zero parameters have the right shape")
    }
}

pub fn solve(
    part: &PartitionedSpectralData,
    pair: &ReflectionPair,
    w1: &QuaternionMatrix,
    w2: &QuaternionMatrix,
) -> Result<QuaternionMatrix> {
    GeneralSolution::new(part, pair)?.materialize(w1, w2)
}

/// Solves with `Q = P`. With equal eigenbases the `Y` coordinates coincide
/// with the `X` coordinates.
pub fn solve_same_reflection(
    data: &SpectralData,
    p: &QuaternionMatrix,
    class: StructureClass,
    w1: &QuaternionMatrix,
    w2: &QuaternionMatrix,
    tol: f64,
) -> Result<QuaternionMatrix> {
    let pair = ReflectionPair::same(p.clone(), tol)?;
    let part = partition(data, &pair, class, tol)?;
    solve(&part, &pair, w1, w2)
}

/// Parameters of a random solvable instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub n: usize,
    pub r1: usize,
    pub r2: usize,
    /// Columns in block 1.
    pub k: usize,
    /// Total columns.
    pub m: usize,
    pub class: StructureClass,
    pub seed: u64,
}

impl InstanceSpec {
    /// Dimensions of the two subspace intersections the generator samples from.
    pub fn capacities(&self) -> (usize, usize) {
        let (n, r1, r2) = (self.n, self.r1, self.r2);
        let q_side = match self.class {
            StructureClass::Reflexive => r2,
            StructureClass::Antireflexive => n - r2,
        };
        (r1.min(q_side), n - r1.max(q_side))
    }
}

/// Deterministic solvable instance.
///
/// Draws a random unitary `W` and sets `U1 = W[:, ..r1]`. For the reflexive
/// class `V1 = W[:, ..r2]`; for the antireflexive class `V2 = W[:, ..n-r2]`.
/// Block-1 columns are sampled in the span of the leading shared columns of
/// `W`, block-2 columns in the trailing ones, with random full-column-rank
/// coordinates. Columns are then shuffled and eigenvalues drawn at random.
pub fn generate_instance(spec: &InstanceSpec) -> Result<(ReflectionPair, SpectralData)> {
    let InstanceSpec { n, r1, r2, k, m, class, seed } = *spec;
    if n == 0 || r1 >= n || r2 >= n {
        return Err(Error::InfeasibleRequest(format!(
            "need n ≥ 1 and r1, r2 < n (P, Q ≠ I), got n = {n}, r1 = {r1}, r2 = {r2}"
        )));
    }
    if k > m {
        return Err(Error::InfeasibleRequest(format!("k = {k} exceeds m = {m}")));
    }
    let (cap1, cap2) = spec.capacities();
    if k > cap1 || m - k > cap2 {
        return Err(Error::InfeasibleRequest(format!(
            "block widths ({k}, {}) exceed subspace capacities ({cap1}, {cap2})",
            m - k
        )));
    }

    let mut rng = seeded_rng(seed);
    let w = random_unitary(&mut rng, n);
    let p = reflection_from_unitary(&w, r1);
    let q = match class {
        StructureClass::Reflexive => reflection_from_unitary(&w, r2),
        StructureClass::Antireflexive => {
            // V = [W[:, n-r2..], W[:, ..n-r2]] so that V2 = W[:, ..n-r2]
            let order: Vec<usize> = (n - r2..n).chain(0..n - r2).collect();
            reflection_from_unitary(&w.select_columns(&order), r2)
        }
    };

    let shared1 = w.columns(0..cap1);
    let shared2 = w.columns(n - cap2..n);
    let z1 = &shared1 * &random_matrix(&mut rng, cap1, k);
    let z2 = &shared2 * &random_matrix(&mut rng, cap2, m - k);
    let z_ordered = z1.hstack(&z2)?;
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(&mut rng);
    let z = z_ordered.select_columns(&order);
    let lambdas = (0..m).map(|_| random_standard_eigenvalue(&mut rng)).collect();

    let pair = ReflectionPair::new(p, q, DEFAULT_STRUCTURE_TOL)?;
    Ok((pair, SpectralData::new(z, lambdas)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{classify, Classification};

    const TOL: f64 = 1e-8;

    fn real(rows: usize, cols: usize, v: &[f64]) -> QuaternionMatrix {
        QuaternionMatrix::from_real(rows, cols, v).unwrap()
    }

    fn diag_pm() -> QuaternionMatrix {
        real(2, 2, &[1., 0., 0., -1.])
    }

    fn lam(v: &[f64]) -> Vec<StandardEigenvalue> {
        v.iter().map(|&x| StandardEigenvalue::real(x)).collect()
    }

    fn zeros_like(shape: (usize, usize)) -> QuaternionMatrix {
        QuaternionMatrix::zeros(shape.0, shape.1)
    }

    #[test]
    fn partition_diagonal_example() {
        let pair = ReflectionPair::same(diag_pm(), TOL).unwrap();
        let data = SpectralData::new(QuaternionMatrix::identity(2), lam(&[2., 3.])).unwrap();
        let part = partition(&data, &pair, StructureClass::Reflexive, TOL).unwrap();
        assert_eq!(part.k, 1);
        assert_eq!(part.perm, vec![0, 1]);
        for x in [&part.x1, &part.x2, &part.y1, &part.y2] {
            assert_eq!(x, &QuaternionMatrix::identity(1));
        }
        assert_eq!(part.phi, lam(&[2.]));
        assert_eq!(part.psi, lam(&[3.]));
    }

    #[test]
    fn partition_zero_column_goes_to_block_one() {
        let pair = ReflectionPair::same(diag_pm(), TOL).unwrap();
        let data = SpectralData::new(
            real(2, 2, &[0., 0., 0., 1.]),
            vec![StandardEigenvalue::new(4.0, 1.0).unwrap(), StandardEigenvalue::real(1.0)],
        )
        .unwrap();
        let part = partition(&data, &pair, StructureClass::Reflexive, TOL).unwrap();
        assert_eq!(part.k, 1);
        assert_eq!(part.perm, vec![0, 1]);
    }

    #[test]
    fn partition_rejects_mixed_column() {
        let pair = ReflectionPair::same(diag_pm(), TOL).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let data = SpectralData::new(real(2, 1, &[s, s]), lam(&[1.])).unwrap();
        match partition(&data, &pair, StructureClass::Reflexive, TOL) {
            Err(Error::InfeasibleStructure { column, residuals }) => {
                assert_eq!(column, 0);
                for r in residuals {
                    assert!((r.domain_residual - s).abs() < 1e-15);
                    assert!((r.range_residual - s).abs() < 1e-15);
                }
            }
            other => panic!("expected infeasible structure, got {other:?}"),
        }
    }

    #[test]
    fn solvable_examples() {
        // X1 full column rank
        let pair = ReflectionPair::same(diag_pm(), TOL).unwrap();
        let data = SpectralData::new(QuaternionMatrix::identity(2), lam(&[2., 3.])).unwrap();
        let part = partition(&data, &pair, StructureClass::Reflexive, TOL).unwrap();
        assert!(solvable(&part, TOL));

        // X1 = 0 with nonzero Y1 Φ
        let mut bad = part.clone();
        bad.x1 = QuaternionMatrix::zeros(1, 1);
        assert!(!solvable(&bad, TOL));
        assert!(matches!(GeneralSolution::new(&bad, &pair), Err(Error::Unsolvable { .. })));

        // k = m: block 2 empty
        let data = SpectralData::new(real(2, 1, &[1., 0.]), lam(&[2.])).unwrap();
        let part = partition(&data, &pair, StructureClass::Reflexive, TOL).unwrap();
        assert_eq!((part.k, part.m()), (1, 1));
        assert_eq!(part.x2.cols(), 0);
        assert!(solvable(&part, TOL));
    }

    #[test]
    fn repeated_column_with_distinct_eigenvalues_is_unsolvable() {
        let pair = ReflectionPair::same(diag_pm(), TOL).unwrap();
        let data = SpectralData::new(real(2, 2, &[1., 2., 0., 0.]), lam(&[1., 5.])).unwrap();
        let part = partition(&data, &pair, StructureClass::Reflexive, TOL).unwrap();
        assert_eq!(part.k, 2);
        assert!(!solvable(&part, TOL));
        // same direction, same eigenvalue: consistent
        let data = SpectralData::new(real(2, 2, &[1., 2., 0., 0.]), lam(&[5., 5.])).unwrap();
        let part = partition(&data, &pair, StructureClass::Reflexive, TOL).unwrap();
        assert!(solvable(&part, TOL));
    }

    #[test]
    fn solve_examples() {
        let pair = ReflectionPair::same(diag_pm(), TOL).unwrap();
        let data = SpectralData::new(real(2, 1, &[1., 0.]), lam(&[2.])).unwrap();
        let part = partition(&data, &pair, StructureClass::Reflexive, TOL).unwrap();
        let gs = GeneralSolution::new(&part, &pair).unwrap();
        assert_eq!(gs.w1_shape(), (1, 1));
        assert_eq!(gs.w2_shape(), (1, 1));
        assert!(gs.particular().distance(&real(2, 2, &[2., 0., 0., 0.])) < 1e-15);

        // all eigenvalues zero
        let data = SpectralData::new(QuaternionMatrix::identity(2), lam(&[0., 0.])).unwrap();
        let part = partition(&data, &pair, StructureClass::Reflexive, TOL).unwrap();
        let a = solve(&part, &pair, &zeros_like((1, 1)), &zeros_like((1, 1))).unwrap();
        assert_eq!(a.fro_norm(), 0.0);

        // centrosymmetric 2×2
        let v2 = QuaternionMatrix::backward_identity(2).unwrap();
        let pair = ReflectionPair::same(v2.clone(), TOL).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let data = SpectralData::new(real(2, 1, &[s, s]), lam(&[5.])).unwrap();
        let part = partition(&data, &pair, StructureClass::Reflexive, TOL).unwrap();
        let a = GeneralSolution::new(&part, &pair).unwrap().particular();
        assert!(a.distance(&real(2, 2, &[2.5, 2.5, 2.5, 2.5])) < 1e-14);
        assert!((&(&v2 * &a) * &v2).distance(&a) < 1e-14);
    }

    #[test]
    fn solve_rejects_wrong_parameter_shapes() {
        let pair = ReflectionPair::same(diag_pm(), TOL).unwrap();
        let data = SpectralData::new(real(2, 1, &[1., 0.]), lam(&[2.])).unwrap();
        let part = partition(&data, &pair, StructureClass::Reflexive, TOL).unwrap();
        assert!(solve(&part, &pair, &zeros_like((2, 1)), &zeros_like((1, 1))).is_err());
    }

    #[test]
    fn same_reflection_examples() {
        let data = SpectralData::new(QuaternionMatrix::identity(2), lam(&[2., 3.])).unwrap();
        let z11 = zeros_like((1, 1));
        let a = solve_same_reflection(&data, &diag_pm(), StructureClass::Reflexive, &z11, &z11, TOL)
            .unwrap();
        assert!(a.distance(&real(2, 2, &[2., 0., 0., 3.])) < 1e-15);

        let v2 = QuaternionMatrix::backward_identity(2).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let data = SpectralData::new(real(2, 1, &[s, s]), lam(&[5.])).unwrap();
        let a = solve_same_reflection(&data, &v2, StructureClass::Reflexive, &z11, &z11, TOL).unwrap();
        assert!(a.distance(&real(2, 2, &[2.5, 2.5, 2.5, 2.5])) < 1e-14);
    }

    #[test]
    fn antireflexive_same_reflection_zero_eigenvalue() {
        let p = diag_pm();
        let pair = ReflectionPair::same(p.clone(), TOL).unwrap();
        let data = SpectralData::new(real(2, 1, &[0., 1.]), lam(&[0.])).unwrap();
        let part = partition(&data, &pair, StructureClass::Antireflexive, TOL).unwrap();
        let gs = GeneralSolution::new(&part, &pair).unwrap();
        let mut rng = seeded_rng(30);
        for _ in 0..5 {
            let w1 = random_matrix(&mut rng, gs.w1_shape().0, gs.w1_shape().1);
            let w2 = random_matrix(&mut rng, gs.w2_shape().0, gs.w2_shape().1);
            let a = gs.materialize(&w1, &w2).unwrap();
            assert!((-&(&(&p * &a) * &p)).distance(&a) < 1e-14);
            assert!(data.residual(&a).unwrap() < 1e-14);
            assert_eq!(a[(0, 0)], Quaternion::ZERO);
            assert_eq!(a[(1, 1)], Quaternion::ZERO);
            // A e2 = 0 forces the (0, 1) entry to vanish; (1, 0) stays free
            assert!(a[(0, 1)].norm() < 1e-15);
        }
        let via_wrapper = solve_same_reflection(
            &data,
            &p,
            StructureClass::Antireflexive,
            &zeros_like(gs.w1_shape()),
            &zeros_like(gs.w2_shape()),
            TOL,
        )
        .unwrap();
        assert_eq!(via_wrapper.fro_norm(), 0.0);
    }

    #[test]
    fn generated_instances_are_feasible() {
        let mut rng = seeded_rng(31);
        for class in [StructureClass::Reflexive, StructureClass::Antireflexive] {
            for seed in 0..10 {
                let spec = InstanceSpec { n: 6, r1: 3, r2: 2, k: 1, m: 2, class, seed };
                let (pair, data) = generate_instance(&spec).unwrap();
                let part = partition(&data, &pair, class, TOL).unwrap();
                assert_eq!(part.k, 1);
                assert!(solvable(&part, TOL));
                let gs = GeneralSolution::new(&part, &pair).unwrap();
                let w1 = random_matrix(&mut rng, gs.w1_shape().0, gs.w1_shape().1);
                let w2 = random_matrix(&mut rng, gs.w2_shape().0, gs.w2_shape().1);
                let a = gs.materialize(&w1, &w2).unwrap();
                assert!(data.residual(&a).unwrap() <= 1e-9 * data.scale());
                assert!(classify(&a, &pair, 1e-9).unwrap().admits(class));
            }
        }
    }

    #[test]
    fn generator_is_deterministic_and_checks_capacity() {
        let spec = InstanceSpec {
            n: 4,
            r1: 2,
            r2: 2,
            k: 1,
            m: 2,
            class: StructureClass::Reflexive,
            seed: 7,
        };
        let (p1, d1) = generate_instance(&spec).unwrap();
        let (p2, d2) = generate_instance(&spec).unwrap();
        assert_eq!(p1.p(), p2.p());
        assert_eq!(d1, d2);

        let full = InstanceSpec { k: 2, m: 2, ..spec };
        let (pair, data) = generate_instance(&full).unwrap();
        let part = partition(&data, &pair, StructureClass::Reflexive, TOL).unwrap();
        assert_eq!(part.k, 2);
        assert_eq!(part.x2.cols(), 0);

        let too_wide = InstanceSpec { k: 3, m: 3, ..spec };
        assert!(matches!(generate_instance(&too_wide), Err(Error::InfeasibleRequest(_))));
        let identity = InstanceSpec { r1: 4, ..spec };
        assert!(generate_instance(&identity).is_err());
    }

    #[test]
    fn quaternion_eigenpairs_are_standardized_consistently() {
        let pair = ReflectionPair::same(diag_pm(), TOL).unwrap();
        // A = diag(a, b) with quaternion a: A e1 = e1 a
        let a_entry = Quaternion::new(1.0, 0.3, -0.4, 1.2);
        let a = QuaternionMatrix::diagonal(&[a_entry, Quaternion::real(2.0)]);
        let data = SpectralData::from_quaternion_eigenpairs(
            &QuaternionMatrix::identity(2),
            &[a_entry, Quaternion::real(2.0)],
        )
        .unwrap();
        assert!(data.lambdas()[0].im > 0.0);
        assert!(data.residual(&a).unwrap() < 1e-14);
        let part = partition(&data, &pair, StructureClass::Reflexive, TOL).unwrap();
        let gs = GeneralSolution::new(&part, &pair).unwrap();
        let sol = gs.particular();
        assert!(data.residual(&sol).unwrap() < 1e-14);
        assert_eq!(classify(&sol, &pair, TOL).unwrap(), Classification::Reflexive);
    }
}
