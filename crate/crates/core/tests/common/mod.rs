//! Test-only oracles and instance pickers.
//!
//! The oracles run on the complex adjoint embedding with nalgebra and never
//! call the crate's pseudoinverse, partition or solver code.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use quat_iep::inverse_eig::{InstanceSpec, SpectralData};
use quat_iep::qmatrix::{chi_embed, ComplexMatrix};
use quat_iep::random::{random_orthogonal, random_standard_eigenvalue, reflection_from_unitary, QRng};
use quat_iep::structures::{ReflectionPair, StructureClass};
use quat_iep::{Quaternion, QuaternionMatrix};
use rand::Rng;

pub fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub fn from_nalgebra(m: &DMatrix<Complex64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Complex pseudoinverse of the embedding of `a`, via nalgebra's SVD.
pub fn embedded_pinv_oracle(a: &QuaternionMatrix) -> ComplexMatrix {
    let c = to_nalgebra(&chi_embed(a));
    if c.nrows() == 0 || c.ncols() == 0 {
        return ComplexMatrix::zeros(c.ncols(), c.nrows());
    }
    let svd = c.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let eps = (1e-10 * smax).max(1e-300);
    from_nalgebra(&svd.pseudo_inverse(eps).expect("both factors computed"))
}

fn quaternion_unit(idx: usize) -> Quaternion {
    match idx {
        0 => Quaternion::ONE,
        1 => Quaternion::I,
        2 => Quaternion::J,
        _ => Quaternion::K,
    }
}

/// Real linear system for the unknown `A` (4n² real coordinates) expressing
/// `AZ = ZΛ` and `A = ±PAQ`, assembled through the complex embedding with
/// nalgebra products.
pub struct FeasibilitySystem {
    pub n: usize,
    pub matrix: DMatrix<f64>,
    pub rhs: nalgebra::DVector<f64>,
}

fn push_complex(out: &mut Vec<f64>, m: &DMatrix<Complex64>) {
    for c in m.iter() {
        out.push(c.re);
        out.push(c.im);
    }
}

impl FeasibilitySystem {
    pub fn new(p: &QuaternionMatrix, q: &QuaternionMatrix, data: &SpectralData, class: StructureClass) -> Self {
        let n = p.rows();
        let cp = to_nalgebra(&chi_embed(p));
        let cq = to_nalgebra(&chi_embed(q));
        let cz = to_nalgebra(&chi_embed(data.z()));
        let lam = QuaternionMatrix::diagonal(
            &data.lambdas().iter().map(|l| l.to_quaternion()).collect::<Vec<_>>(),
        );
        let cl = to_nalgebra(&chi_embed(&lam));
        let sign = Complex64::new(class.sign(), 0.0);

        let apply = |ca: &DMatrix<Complex64>| {
            let mut out = Vec::new();
            push_complex(&mut out, &(ca * &cz));
            push_complex(&mut out, &(ca - (&cp * ca * &cq) * sign));
            out
        };

        let unknowns = 4 * n * n;
        let mut columns = Vec::with_capacity(unknowns);
        for s in 0..n {
            for t in 0..n {
                for u in 0..4 {
                    let mut a = QuaternionMatrix::zeros(n, n);
                    a[(s, t)] = quaternion_unit(u);
                    columns.push(apply(&to_nalgebra(&chi_embed(&a))));
                }
            }
        }
        let rows = columns[0].len();
        let matrix = DMatrix::from_fn(rows, unknowns, |i, j| columns[j][i]);

        let mut rhs = Vec::new();
        push_complex(&mut rhs, &(&cz * &cl));
        push_complex(&mut rhs, &DMatrix::<Complex64>::zeros(2 * n, 2 * n));
        Self {
            n,
            matrix,
            rhs: nalgebra::DVector::from_vec(rhs),
        }
    }

    /// Least-squares solution and its relative residual `‖M a − b‖ / ‖b‖`.
    pub fn least_squares(&self) -> (QuaternionMatrix, f64) {
        let svd = self.matrix.clone().svd(true, true);
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let sol = svd.solve(&self.rhs, 1e-10 * smax).expect("both factors computed");
        let resid = (&self.matrix * &sol - &self.rhs).norm();
        let scale = self.rhs.norm().max(1e-300);
        (self.unpack(&sol), resid / scale)
    }

    /// Orthonormal basis of the null space of the constraint matrix, unpacked
    /// as matrices (the homogeneous solutions).
    pub fn null_space(&self) -> Vec<QuaternionMatrix> {
        // rows ≥ columns, so the thin SVD carries a full set of right vectors
        let svd = self.matrix.clone().svd(false, true);
        let v_t = svd.v_t.expect("right vectors computed");
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        (0..svd.singular_values.len())
            .filter(|&i| svd.singular_values[i] <= 1e-10 * smax)
            .map(|i| self.unpack(&v_t.row(i).transpose()))
            .collect()
    }

    pub fn is_feasible(&self) -> bool {
        self.least_squares().1 <= 1e-8
    }

    fn unpack(&self, v: &nalgebra::DVector<f64>) -> QuaternionMatrix {
        let n = self.n;
        QuaternionMatrix::from_fn(n, n, |s, t| {
            let b = 4 * (s * n + t);
            Quaternion::new(v[b], v[b + 1], v[b + 2], v[b + 3])
        })
    }
}

/// Random generator request with `n ≤ max_n`, `m ≤ 6` and nonempty columns.
pub fn random_spec(rng: &mut QRng, max_n: usize, class: StructureClass) -> InstanceSpec {
    loop {
        let n = rng.gen_range(2..=max_n);
        let r1 = rng.gen_range(0..n);
        let r2 = rng.gen_range(0..n);
        let probe = InstanceSpec { n, r1, r2, k: 0, m: 0, class, seed: rng.gen() };
        let (cap1, cap2) = probe.capacities();
        if cap1 + cap2 == 0 {
            continue;
        }
        let k = rng.gen_range(0..=cap1.min(6));
        let rest = rng.gen_range(0..=cap2.min(6 - k));
        if k + rest == 0 {
            continue;
        }
        return InstanceSpec { k, m: k + rest, ..probe };
    }
}

pub struct RealInstance {
    pub pair: ReflectionPair,
    pub data: SpectralData,
    pub class: StructureClass,
}

/// Real-entry instance (`n ≤ 3`) with the generator's subspace layout. With
/// `make_infeasible` the columns are a repeated direction `[z, c z]` carrying
/// two distinct eigenvalues.
pub fn real_instance(rng: &mut QRng, make_infeasible: bool) -> RealInstance {
    loop {
        let n = rng.gen_range(2..=3);
        let class = if rng.gen_bool(0.5) { StructureClass::Reflexive } else { StructureClass::Antireflexive };
        let r1 = rng.gen_range(0..n);
        let r2 = rng.gen_range(0..n);
        let spec = InstanceSpec { n, r1, r2, k: 0, m: 0, class, seed: 0 };
        let (cap1, cap2) = spec.capacities();
        if cap1 + cap2 == 0 {
            continue;
        }
        let w = random_orthogonal(rng, n);
        let p = reflection_from_unitary(&w, r1);
        let q = match class {
            StructureClass::Reflexive => reflection_from_unitary(&w, r2),
            StructureClass::Antireflexive => {
                let order: Vec<usize> = (n - r2..n).chain(0..n - r2).collect();
                reflection_from_unitary(&w.select_columns(&order), r2)
            }
        };
        let pair = ReflectionPair::new(p, q, 1e-8).expect("valid reflections");
        let shared1 = w.columns(0..cap1);
        let shared2 = w.columns(n - cap2..n);

        let mut cols: Vec<QuaternionMatrix> = Vec::new();
        let mut lambdas = Vec::new();
        let sample = |basis: &QuaternionMatrix, rng: &mut QRng| {
            let c = QuaternionMatrix::from_fn(basis.cols(), 1, |_, _| Quaternion::real(rng.gen_range(-1.0..1.0)));
            basis * &c
        };
        if make_infeasible {
            let (basis, _) = if cap1 > 0 && (cap2 == 0 || rng.gen_bool(0.5)) {
                (&shared1, 1)
            } else {
                (&shared2, 2)
            };
            let z = sample(basis, rng);
            let c = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let l1 = random_standard_eigenvalue(rng);
            let mut l2 = random_standard_eigenvalue(rng);
            while (l2.re - l1.re).abs() + (l2.im - l1.im).abs() < 0.1 {
                l2 = random_standard_eigenvalue(rng);
            }
            cols.push(z.clone());
            cols.push(z.scale(c));
            lambdas.push(l1);
            lambdas.push(l2);
        } else {
            for (basis, cap) in [(&shared1, cap1), (&shared2, cap2)] {
                for _ in 0..rng.gen_range(0..=cap) {
                    cols.push(sample(basis, rng));
                    lambdas.push(random_standard_eigenvalue(rng));
                }
            }
            // occasionally a repeated direction with a repeated eigenvalue
            if cap1 > 0 && rng.gen_bool(0.3) {
                let z = sample(&shared1, rng);
                let l = random_standard_eigenvalue(rng);
                cols.push(z.clone());
                cols.push(z.scale(-1.5));
                lambdas.push(l);
                lambdas.push(l);
            }
            if cols.is_empty() {
                continue;
            }
        }
        let mut z = cols[0].clone();
        for c in &cols[1..] {
            z = z.hstack(c).unwrap();
        }
        let data = SpectralData::new(z, lambdas).unwrap();
        return RealInstance { pair, data, class };
    }
}
