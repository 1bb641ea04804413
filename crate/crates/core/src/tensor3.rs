//! Small fixed-size 3×3 linear algebra.
//!
//! Everything here works on stack values. Symmetric tensors store only their
//! upper triangle, so symmetry never has to be re-checked downstream. Matrix
//! functions of symmetric arguments (square root, logarithm, exponential) go
//! through a cyclic Jacobi eigendecomposition and apply the scalar function
//! to the eigenvalues.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative SPD threshold: eigenvalues must exceed `SPD_RELATIVE_THRESHOLD * max(1, ‖B‖)`.
pub const SPD_RELATIVE_THRESHOLD: f64 = 1e-14;

const JACOBI_MAX_SWEEPS: usize = 50;
const JACOBI_RELATIVE_OFF_DIAGONAL: f64 = 1e-15;

/// General 3×3 tensor, row-major.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tensor3 {
    m: [[f64; 3]; 3],
}

impl Tensor3 {
    pub const fn from_rows(m: [[f64; 3]; 3]) -> Self {
        Self { m }
    }

    pub const fn identity() -> Self {
        Self::from_rows([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub const fn zero() -> Self {
        Self::from_rows([[0.0; 3]; 3])
    }

    pub const fn diag(d: [f64; 3]) -> Self {
        Self::from_rows([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[i][j]
    }

    pub fn transpose(&self) -> Self {
        let mut t = [[0.0; 3]; 3];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.m[j][i];
            }
        }
        Self::from_rows(t)
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Cofactor matrix. Equals `det(A)·A⁻ᵀ` for invertible `A` and is
    /// polynomial (hence continuous) everywhere.
    pub fn cof(&self) -> Self {
        let m = &self.m;
        let c = |r0: usize, r1: usize, c0: usize, c1: usize| {
            m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
        };
        Self::from_rows([
            [c(1, 2, 1, 2), -c(1, 2, 0, 2), c(1, 2, 0, 1)],
            [-c(0, 2, 1, 2), c(0, 2, 0, 2), -c(0, 2, 0, 1)],
            [c(0, 1, 1, 2), -c(0, 1, 0, 2), c(0, 1, 0, 1)],
        ])
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        Some(self.cof().transpose() * (1.0 / det))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().fold(0.0_f64, |a, v| a.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|v| v.is_finite())
    }

    /// Symmetric part `(A + Aᵀ)/2`.
    pub fn sym(&self) -> SymTensor3 {
        let m = &self.m;
        SymTensor3::new(
            m[0][0],
            0.5 * (m[0][1] + m[1][0]),
            0.5 * (m[0][2] + m[2][0]),
            m[1][1],
            0.5 * (m[1][2] + m[2][1]),
            m[2][2],
        )
    }

    /// Skew part `(A − Aᵀ)/2`.
    pub fn skew(&self) -> Self {
        (*self - self.transpose()) * 0.5
    }

    pub fn column(&self, j: usize) -> [f64; 3] {
        [self.m[0][j], self.m[1][j], self.m[2][j]]
    }

    pub fn mul_vec(&self, v: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|k| self.m[i][k] * v[k]).sum();
        }
        out
    }

    /// Frobenius inner product `⟨A, B⟩ = tr(AᵀB)`.
    pub fn inner(&self, other: &Self) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| a * b)
            .sum()
    }
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor3{:?}", self.m)
    }
}

impl Index<(usize, usize)> for Tensor3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.m[i][j]
    }
}

impl Add for Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: Tensor3) -> Tensor3 {
        let mut m = self.m;
        for (row, r) in m.iter_mut().zip(rhs.m.iter()) {
            for (a, b) in row.iter_mut().zip(r.iter()) {
                *a += b;
            }
        }
        Tensor3::from_rows(m)
    }
}

impl Sub for Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: Tensor3) -> Tensor3 {
        self + (-rhs)
    }
}

impl Neg for Tensor3 {
    type Output = Tensor3;
    fn neg(self) -> Tensor3 {
        self * -1.0
    }
}

impl Mul<f64> for Tensor3 {
    type Output = Tensor3;
    fn mul(self, rhs: f64) -> Tensor3 {
        let mut m = self.m;
        m.iter_mut().flatten().for_each(|v| *v *= rhs);
        Tensor3::from_rows(m)
    }
}

impl Mul for Tensor3 {
    type Output = Tensor3;
    fn mul(self, rhs: Tensor3) -> Tensor3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.m[i][k] * rhs.m[k][j]).sum();
            }
        }
        Tensor3::from_rows(m)
    }
}

/// Symmetric 3×3 tensor stored as its upper triangle
/// `(a11, a12, a13, a22, a23, a33)`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[[f64; 3]; 3]", try_from = "[[f64; 3]; 3]")]
pub struct SymTensor3 {
    e: [f64; 6],
}

impl SymTensor3 {
    pub const fn new(a11: f64, a12: f64, a13: f64, a22: f64, a23: f64, a33: f64) -> Self {
        Self {
            e: [a11, a12, a13, a22, a23, a33],
        }
    }

    pub const fn identity() -> Self {
        Self::diag([1.0, 1.0, 1.0])
    }

    pub const fn zero() -> Self {
        Self { e: [0.0; 6] }
    }

    pub const fn diag(d: [f64; 3]) -> Self {
        Self::new(d[0], 0.0, 0.0, d[1], 0.0, d[2])
    }

    /// Upper-triangle entries `(a11, a12, a13, a22, a23, a33)`.
    pub fn components(&self) -> [f64; 6] {
        self.e
    }

    /// Accepts a general tensor if it is symmetric within `tol` (absolute, entrywise).
    pub fn try_from_tensor(t: &Tensor3, tol: f64) -> Option<Self> {
        let asym = (t[(0, 1)] - t[(1, 0)])
            .abs()
            .max((t[(0, 2)] - t[(2, 0)]).abs())
            .max((t[(1, 2)] - t[(2, 1)]).abs());
        (asym <= tol).then(|| t.sym())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        match (i, j) {
            (0, 0) => self.e[0],
            (0, 1) => self.e[1],
            (0, 2) => self.e[2],
            (1, 1) => self.e[3],
            (1, 2) => self.e[4],
            (2, 2) => self.e[5],
            _ => panic!("index ({i}, {j}) out of range for a 3×3 tensor"),
        }
    }

    pub fn to_tensor(&self) -> Tensor3 {
        let [a11, a12, a13, a22, a23, a33] = self.e;
        Tensor3::from_rows([[a11, a12, a13], [a12, a22, a23], [a13, a23, a33]])
    }

    pub fn trace(&self) -> f64 {
        self.e[0] + self.e[3] + self.e[5]
    }

    pub fn det(&self) -> f64 {
        let [a11, a12, a13, a22, a23, a33] = self.e;
        a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13)
            + a13 * (a12 * a23 - a22 * a13)
    }

    /// Frobenius norm of the full matrix.
    pub fn norm(&self) -> f64 {
        let [a11, a12, a13, a22, a23, a33] = self.e;
        (a11 * a11 + a22 * a22 + a33 * a33 + 2.0 * (a12 * a12 + a13 * a13 + a23 * a23)).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().fold(0.0_f64, |a, v| a.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().all(|v| v.is_finite())
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            e: self.e.map(|v| v * k),
        }
    }

    /// Frobenius inner product.
    pub fn inner(&self, other: &Self) -> f64 {
        let a = self.e;
        let b = other.e;
        a[0] * b[0] + a[3] * b[3] + a[5] * b[5] + 2.0 * (a[1] * b[1] + a[2] * b[2] + a[4] * b[4])
    }

    /// Cofactor; symmetric for symmetric input.
    pub fn cof(&self) -> Self {
        self.to_tensor().cof().sym()
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        Some(self.cof().scale(1.0 / det))
    }

    /// Deviatoric part `S − (tr S / 3)·id`.
    pub fn dev(&self) -> Self {
        *self - Self::identity().scale(self.trace() / 3.0)
    }

    /// Matrix product (generally not symmetric).
    pub fn dot(&self, other: &Self) -> Tensor3 {
        self.to_tensor() * other.to_tensor()
    }

    /// Commutator `S·T − T·S`.
    pub fn commutator(&self, other: &Self) -> Tensor3 {
        self.dot(other) - other.dot(self)
    }

    /// `A·S·Aᵀ`, which stays symmetric.
    pub fn congruence(&self, a: &Tensor3) -> Self {
        (*a * self.to_tensor() * a.transpose()).sym()
    }
}

impl fmt::Debug for SymTensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymTensor3{:?}", self.to_tensor().rows())
    }
}

impl From<SymTensor3> for [[f64; 3]; 3] {
    fn from(s: SymTensor3) -> Self {
        s.to_tensor().rows()
    }
}

impl TryFrom<[[f64; 3]; 3]> for SymTensor3 {
    type Error = String;
    fn try_from(m: [[f64; 3]; 3]) -> std::result::Result<Self, String> {
        let t = Tensor3::from_rows(m);
        let tol = 1e-12 * (1.0 + t.max_abs());
        SymTensor3::try_from_tensor(&t, tol).ok_or_else(|| "matrix is not symmetric".to_string())
    }
}

impl Add for SymTensor3 {
    type Output = SymTensor3;
    fn add(self, rhs: SymTensor3) -> SymTensor3 {
        let mut e = self.e;
        e.iter_mut().zip(rhs.e).for_each(|(a, b)| *a += b);
        SymTensor3 { e }
    }
}

impl Sub for SymTensor3 {
    type Output = SymTensor3;
    fn sub(self, rhs: SymTensor3) -> SymTensor3 {
        self + rhs.scale(-1.0)
    }
}

impl Neg for SymTensor3 {
    type Output = SymTensor3;
    fn neg(self) -> SymTensor3 {
        self.scale(-1.0)
    }
}

impl Mul<f64> for SymTensor3 {
    type Output = SymTensor3;
    fn mul(self, rhs: f64) -> SymTensor3 {
        self.scale(rhs)
    }
}

/// Symmetric positive definite tensor (B, C, V, U).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SpdTensor3(SymTensor3);

impl SpdTensor3 {
    /// Checks positive definiteness through the eigenvalues.
    pub fn try_new(s: SymTensor3) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::NonFinite("SPD construction"));
        }
        let eig = sym_eig(&s);
        let min = eig.eigenvalues[2];
        if min <= spd_threshold(&s) {
            return Err(Error::NotSpd {
                min_eigenvalue: min,
            });
        }
        Ok(Self(s))
    }

    /// Wraps a tensor already known to be SPD by construction.
    pub(crate) fn new_unchecked(s: SymTensor3) -> Self {
        Self(s)
    }

    pub fn identity() -> Self {
        Self(SymTensor3::identity())
    }

    pub fn as_sym(&self) -> &SymTensor3 {
        &self.0
    }

    pub fn into_sym(self) -> SymTensor3 {
        self.0
    }

    pub fn inverse(&self) -> SpdTensor3 {
        sym_function_spd(&self.0, |l| 1.0 / l)
    }
}

impl std::ops::Deref for SpdTensor3 {
    type Target = SymTensor3;
    fn deref(&self) -> &SymTensor3 {
        &self.0
    }
}

fn spd_threshold(s: &SymTensor3) -> f64 {
    SPD_RELATIVE_THRESHOLD * s.norm().max(1.0)
}

/// Proper orthogonal tensor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Rotation3(Tensor3);

impl Rotation3 {
    pub fn identity() -> Self {
        Self(Tensor3::identity())
    }

    /// Accepts `q` if `‖qᵀq − id‖ ≤ tol` and `det q > 0`.
    pub fn from_matrix(q: Tensor3, tol: f64) -> Option<Self> {
        let err = (q.transpose() * q - Tensor3::identity()).norm();
        (err <= tol && q.det() > 0.0).then_some(Self(q))
    }

    pub(crate) fn new_unchecked(q: Tensor3) -> Self {
        Self(q)
    }

    /// Rotation by `angle` (radians) about `e₃`.
    pub fn about_e3(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self(Tensor3::from_rows([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]))
    }

    /// Rotation about an arbitrary axis (Rodrigues' formula). The axis need not be normalized.
    pub fn about_axis(axis: [f64; 3], angle: f64) -> Self {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if n == 0.0 {
            return Self::identity();
        }
        let [x, y, z] = axis.map(|v| v / n);
        let (s, c) = angle.sin_cos();
        let k = Tensor3::from_rows([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]]);
        Self(Tensor3::identity() + k * s + (k * k) * (1.0 - c))
    }

    pub fn as_tensor(&self) -> &Tensor3 {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// Orthogonality defect `‖QᵀQ − id‖`.
    pub fn orthogonality_error(&self) -> f64 {
        (self.0.transpose() * self.0 - Tensor3::identity()).norm()
    }
}

impl std::ops::Deref for Rotation3 {
    type Target = Tensor3;
    fn deref(&self) -> &Tensor3 {
        &self.0
    }
}

/// Deformation gradient: a tensor with positive determinant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DeformationGradient(Tensor3);

impl DeformationGradient {
    pub fn try_new(f: Tensor3) -> Result<Self> {
        if !f.is_finite() {
            return Err(Error::NonFinite("deformation gradient"));
        }
        let det = f.det();
        if det <= SPD_RELATIVE_THRESHOLD * f.norm().max(1.0).powi(3) {
            return Err(Error::Singular { det });
        }
        Ok(Self(f))
    }

    pub(crate) fn new_unchecked(f: Tensor3) -> Self {
        Self(f)
    }

    pub fn identity() -> Self {
        Self(Tensor3::identity())
    }

    pub fn as_tensor(&self) -> &Tensor3 {
        &self.0
    }

    /// Left Cauchy-Green tensor `B = FFᵀ`.
    pub fn left_cauchy_green(&self) -> SpdTensor3 {
        SpdTensor3::new_unchecked((self.0 * self.0.transpose()).sym())
    }

    /// Right Cauchy-Green tensor `C = FᵀF`.
    pub fn right_cauchy_green(&self) -> SpdTensor3 {
        SpdTensor3::new_unchecked((self.0.transpose() * self.0).sym())
    }

    pub fn polar(&self) -> Result<PolarDecomposition> {
        polar_decompose(&self.0)
    }

    pub fn compose(&self, other: &DeformationGradient) -> DeformationGradient {
        Self(self.0 * other.0)
    }
}

impl std::ops::Deref for DeformationGradient {
    type Target = Tensor3;
    fn deref(&self) -> &Tensor3 {
        &self.0
    }
}

/// Principal invariants of a symmetric tensor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
}

impl Invariants {
    /// Invariants of `B = diag(λ₁², λ₂², λ₃²)` from principal stretches.
    pub fn from_stretches(l: [f64; 3]) -> Self {
        let [a, b, c] = l.map(|v| v * v);
        Self {
            i1: a + b + c,
            i2: a * b + a * c + b * c,
            i3: a * b * c,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.i1, self.i2, self.i3]
    }
}

/// `I₁ = tr B`, `I₂ = tr Cof B`, `I₃ = det B`.
pub fn invariants(b: &SymTensor3) -> Invariants {
    Invariants {
        i1: b.trace(),
        i2: b.cof().trace(),
        i3: b.det(),
    }
}

/// Eigenvalues sorted descending with a right-handed orthonormal eigenframe
/// (column `k` of `eigenvectors` belongs to `eigenvalues[k]`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenSystem3 {
    pub eigenvalues: [f64; 3],
    pub eigenvectors: Rotation3,
}

impl EigenSystem3 {
    /// `Q·diag(f(λ))·Qᵀ`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> SymTensor3 {
        assemble_spectral(&self.eigenvectors, self.eigenvalues.map(f))
    }

    pub fn reconstruct(&self) -> SymTensor3 {
        self.map(|l| l)
    }
}

/// `Q·diag(d)·Qᵀ`, computed directly into the upper triangle.
pub fn assemble_spectral(q: &Tensor3, d: [f64; 3]) -> SymTensor3 {
    let entry = |i: usize, j: usize| (0..3).map(|k| q[(i, k)] * d[k] * q[(j, k)]).sum::<f64>();
    SymTensor3::new(
        entry(0, 0),
        entry(0, 1),
        entry(0, 2),
        entry(1, 1),
        entry(1, 2),
        entry(2, 2),
    )
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
pub fn sym_eig(s: &SymTensor3) -> EigenSystem3 {
    let mut a = s.to_tensor().rows();
    let mut v = Tensor3::identity().rows();
    let scale = s.norm();
    let target = JACOBI_RELATIVE_OFF_DIAGONAL * scale;

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = (2.0 * (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2])).sqrt();
        if off <= target {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = a[p][q];
            if apq == 0.0 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
            let t = if theta.abs() > 1e150 {
                0.5 / theta
            } else {
                theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
            };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let sn = t * c;
            let r = 3 - p - q;

            let app = a[p][p] - t * apq;
            let aqq = a[q][q] + t * apq;
            let arp = c * a[r][p] - sn * a[r][q];
            let arq = sn * a[r][p] + c * a[r][q];
            a[p][p] = app;
            a[q][q] = aqq;
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            a[r][p] = arp;
            a[p][r] = arp;
            a[r][q] = arq;
            a[q][r] = arq;

            for row in v.iter_mut() {
                let vp = row[p];
                let vq = row[q];
                row[p] = c * vp - sn * vq;
                row[q] = sn * vp + c * vq;
            }
        }
    }

    let mut order = [0usize, 1, 2];
    // stable: ties keep Jacobi order
    order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).unwrap_or(std::cmp::Ordering::Equal));
    let eigenvalues = order.map(|k| a[k][k]);
    let mut q = [[0.0; 3]; 3];
    for (col, &k) in order.iter().enumerate() {
        for row in 0..3 {
            q[row][col] = v[row][k];
        }
    }
    let mut q = Tensor3::from_rows(q);
    if q.det() < 0.0 {
        let mut m = q.rows();
        for row in m.iter_mut() {
            row[2] = -row[2];
        }
        q = Tensor3::from_rows(m);
    }
    EigenSystem3 {
        eigenvalues,
        eigenvectors: Rotation3::new_unchecked(q),
    }
}

fn sym_function_spd(s: &SymTensor3, f: impl Fn(f64) -> f64) -> SpdTensor3 {
    SpdTensor3::new_unchecked(sym_eig(s).map(f))
}

fn checked_eig(b: &SpdTensor3) -> Result<EigenSystem3> {
    let eig = sym_eig(b.as_sym());
    let min = eig.eigenvalues[2];
    if min <= spd_threshold(b.as_sym()) {
        return Err(Error::NotSpd {
            min_eigenvalue: min,
        });
    }
    Ok(eig)
}

/// Principal square root of an SPD tensor.
pub fn spd_sqrt(b: &SpdTensor3) -> Result<SpdTensor3> {
    let eig = checked_eig(b)?;
    Ok(SpdTensor3::new_unchecked(eig.map(f64::sqrt)))
}

/// Principal logarithm of an SPD tensor.
pub fn spd_log(v: &SpdTensor3) -> Result<SymTensor3> {
    let eig = checked_eig(v)?;
    Ok(eig.map(f64::ln))
}

/// Matrix exponential of a symmetric tensor.
pub fn sym_exp(x: &SymTensor3) -> SpdTensor3 {
    sym_function_spd(x, f64::exp)
}

/// `dev S = S − (tr S / 3)·id`.
pub fn dev(s: &SymTensor3) -> SymTensor3 {
    s.dev()
}

/// Cofactor of a general tensor.
pub fn cof(a: &Tensor3) -> Tensor3 {
    a.cof()
}

/// Left and right polar factors: `F = V·R = R·U`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PolarDecomposition {
    pub v: SpdTensor3,
    pub r: Rotation3,
    pub u: SpdTensor3,
}

/// Polar decomposition with `V = √(FFᵀ)`, `U = √(FᵀF)` and `R = V⁻¹F`.
pub fn polar_decompose(f: &Tensor3) -> Result<PolarDecomposition> {
    if !f.is_finite() {
        return Err(Error::NonFinite("polar decomposition"));
    }
    let det = f.det();
    let threshold = SPD_RELATIVE_THRESHOLD * f.norm().max(1.0).powi(3);
    if det <= threshold {
        return Err(Error::Singular { det });
    }
    let b = (*f * f.transpose()).sym();
    let c = (f.transpose() * *f).sym();
    let eig_b = sym_eig(&b);
    if eig_b.eigenvalues[2] <= spd_threshold(&b) {
        return Err(Error::Singular { det });
    }
    let v = SpdTensor3::new_unchecked(eig_b.map(f64::sqrt));
    let v_inv = eig_b.map(|l| 1.0 / l.sqrt());
    let r = v_inv.to_tensor() * *f;
    let u = SpdTensor3::new_unchecked(sym_eig(&c).map(|l| l.max(0.0).sqrt()));
    Ok(PolarDecomposition {
        v,
        r: Rotation3::new_unchecked(r),
        u,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn invariants_of_reference_and_diagonal() {
        let i = invariants(&SymTensor3::identity());
        assert_eq!(i.as_array(), [3.0, 3.0, 1.0]);
        let i = invariants(&SymTensor3::diag([4.0, 1.0, 1.0]));
        assert_eq!(i.as_array(), [6.0, 9.0, 4.0]);
    }

    #[test]
    fn invariants_of_pure_shear_family_match_eigenvalue_sums() {
        let alpha: f64 = 0.5;
        let mu = [(2.0 * alpha).exp(), (-2.0 * alpha).exp(), 1.0];
        let (c, s) = ((2.0 * alpha).cosh(), (2.0 * alpha).sinh());
        let b = SymTensor3::new(c, s, 0.0, c, 0.0, 1.0);
        let inv = invariants(&b);
        let i1 = mu[0] + mu[1] + mu[2];
        let i2 = mu[0] * mu[1] + mu[0] * mu[2] + mu[1] * mu[2];
        assert!(close(inv.i1, i1, 1e-12));
        assert!(close(inv.i2, i2, 1e-12));
        assert!(close(inv.i3, 1.0, 1e-12));
        assert!(close(inv.i1, 1.0 + 2.0 * 1f64.cosh(), 1e-12));
        assert!(close(inv.i1, 4.0862, 1e-4));
    }

    #[test]
    fn eig_of_pure_shear_stress() {
        let t = SymTensor3::new(0.0, 2.0, 0.0, 0.0, 0.0, 0.0);
        let e = sym_eig(&t);
        assert!(close(e.eigenvalues[0], 2.0, 1e-14));
        assert!(close(e.eigenvalues[1], 0.0, 1e-14));
        assert!(close(e.eigenvalues[2], -2.0, 1e-14));
        assert!((e.reconstruct() - t).norm() < 1e-13);
        assert!(close(e.eigenvectors.det(), 1.0, 1e-14));
    }

    #[test]
    fn eig_of_identity_and_diagonal() {
        let e = sym_eig(&SymTensor3::identity());
        assert_eq!(e.eigenvalues, [1.0, 1.0, 1.0]);
        assert!(e.eigenvectors.orthogonality_error() < 1e-15);

        let e = sym_eig(&SymTensor3::diag([1.0, 5.0, 3.0]));
        assert_eq!(e.eigenvalues, [5.0, 3.0, 1.0]);
        // permutation frame, up to column signs
        let q = e.eigenvectors;
        assert!(close(q[(1, 0)].abs(), 1.0, 1e-15));
        assert!(close(q[(2, 1)].abs(), 1.0, 1e-15));
        assert!(close(q[(0, 2)].abs(), 1.0, 1e-15));
        assert!(close(q.det(), 1.0, 1e-15));
    }

    #[test]
    fn eig_handles_repeated_eigenvalues() {
        let q = Rotation3::about_axis([1.0, 2.0, -0.5], 0.7);
        let s = SymTensor3::diag([2.0, 2.0, -1.0]).congruence(&q);
        let e = sym_eig(&s);
        assert!(close(e.eigenvalues[0], 2.0, 1e-13));
        assert!(close(e.eigenvalues[1], 2.0, 1e-13));
        assert!(close(e.eigenvalues[2], -1.0, 1e-13));
        assert!((e.reconstruct() - s).norm() < 1e-13);
        assert!(e.eigenvectors.orthogonality_error() < 1e-14);
    }

    #[test]
    fn sqrt_of_commuting_form_uses_singular_values() {
        // λ = (2, 1/2, 1): p = (λ₁²+λ₂²)/2, q = (λ₁²−λ₂²)/2, r = λ₃²
        let (l1, l2, l3) = (2.0_f64, 0.5_f64, 1.0_f64);
        let p = 0.5 * (l1 * l1 + l2 * l2);
        let q = 0.5 * (l1 * l1 - l2 * l2);
        let b = SpdTensor3::try_new(SymTensor3::new(p, q, 0.0, p, 0.0, l3 * l3)).unwrap();
        let root = spd_sqrt(&b).unwrap();
        assert!(close(root.get(0, 0), 1.25, 1e-14));
        assert!(close(root.get(1, 1), 1.25, 1e-14));
        assert!(close(root.get(0, 1), 0.75, 1e-14));
        assert!(close(root.get(2, 2), 1.0, 1e-14));
        assert!(root.get(0, 2).abs() < 1e-15 && root.get(1, 2).abs() < 1e-15);
    }

    #[test]
    fn sqrt_trivial_cases() {
        let id = spd_sqrt(&SpdTensor3::identity()).unwrap();
        assert_eq!(*id.as_sym(), SymTensor3::identity());
        let d = SpdTensor3::try_new(SymTensor3::diag([4.0, 9.0, 1.0])).unwrap();
        let r = spd_sqrt(&d).unwrap();
        assert!((*r.as_sym() - SymTensor3::diag([2.0, 3.0, 1.0])).norm() < 1e-15);
    }

    #[test]
    fn not_spd_is_rejected() {
        let err = SpdTensor3::try_new(SymTensor3::diag([1.0, 0.0, 1.0])).unwrap_err();
        assert!(matches!(err, Error::NotSpd { .. }));
        let err = SpdTensor3::try_new(SymTensor3::diag([1.0, -2.0, 1.0])).unwrap_err();
        assert!(matches!(err, Error::NotSpd { .. }));
        // below the relative threshold counts as singular
        let err = SpdTensor3::try_new(SymTensor3::diag([1e3, 1e-12, 1.0])).unwrap_err();
        assert!(matches!(err, Error::NotSpd { .. }));
    }

    #[test]
    fn log_of_pure_shear_stretch() {
        let a: f64 = 0.3;
        let v = SpdTensor3::try_new(SymTensor3::new(a.cosh(), a.sinh(), 0.0, a.cosh(), 0.0, 1.0))
            .unwrap();
        let l = spd_log(&v).unwrap();
        let expected = SymTensor3::new(0.0, 0.3, 0.0, 0.0, 0.0, 0.0);
        assert!((l - expected).max_abs() < 1e-14);
    }

    #[test]
    fn exp_trivial_cases() {
        assert!((*sym_exp(&SymTensor3::zero()).as_sym() - SymTensor3::identity()).norm() < 1e-15);
        let e = sym_exp(&SymTensor3::diag([1.0, -1.0, 0.0]));
        let expected = SymTensor3::diag([std::f64::consts::E, 1.0 / std::f64::consts::E, 1.0]);
        assert!((*e.as_sym() - expected).norm() < 1e-15);
    }

    #[test]
    fn dev_and_cof() {
        assert_eq!(dev(&SymTensor3::identity()), SymTensor3::zero());
        let eps = SymTensor3::new(0.0, 0.25, 0.0, 0.0, 0.0, 0.0);
        assert_eq!(dev(&eps), eps);
        let c = cof(&Tensor3::diag([2.0, 3.0, 4.0]));
        assert_eq!(c, Tensor3::diag([12.0, 8.0, 6.0]));
        // continuous extension at a singular matrix
        let c = cof(&Tensor3::diag([2.0, 0.0, 4.0]));
        assert_eq!(c, Tensor3::diag([0.0, 8.0, 0.0]));
    }

    #[test]
    fn polar_of_identity_and_rotation() {
        let p = polar_decompose(&Tensor3::identity()).unwrap();
        assert!((*p.v.as_sym() - SymTensor3::identity()).norm() < 1e-15);
        assert!((*p.r.as_tensor() - Tensor3::identity()).norm() < 1e-15);

        let rot = Rotation3::about_e3(std::f64::consts::PI / 6.0);
        let p = polar_decompose(rot.as_tensor()).unwrap();
        assert!((*p.v.as_sym() - SymTensor3::identity()).norm() < 1e-14);
        assert!((*p.u.as_sym() - SymTensor3::identity()).norm() < 1e-14);
        assert!((*p.r.as_tensor() - *rot.as_tensor()).norm() < 1e-14);
    }

    #[test]
    fn polar_rejects_reflections_and_singular() {
        assert!(matches!(
            polar_decompose(&Tensor3::diag([1.0, 1.0, -1.0])),
            Err(Error::Singular { .. })
        ));
        assert!(matches!(
            polar_decompose(&Tensor3::diag([1.0, 0.0, 1.0])),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn sym_serializes_as_full_matrix() {
        let s = SymTensor3::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[[1.0,2.0,3.0],[2.0,4.0,5.0],[3.0,5.0,6.0]]");
        let back: SymTensor3 = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<SymTensor3>("[[1,2,0],[0,1,0],[0,0,1]]").is_err());
    }
}
