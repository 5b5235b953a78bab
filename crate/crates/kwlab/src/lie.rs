//! Small-matrix Lie algebra arithmetic.
//!
//! Two value types implement the [`LieVec`] interface used by every residual
//! and audit kernel:
//!
//! * [`LieElement`]: an `n×n` complex matrix tagged as `su(n)` or `sl(n,C)`.
//! * [`Su2`]: a real 3-vector of coordinates in the basis `t_a = -(i/2)σ_a`.
//!   Since `[t_a, t_b] = ε_abc t_c` the bracket is the cross product and the
//!   trace form `-Tr(XY)` is half the dot product.
//!
//! The scalar type `f64` also implements [`LieVec`] as the one-dimensional
//! abelian algebra, which lets the same exterior-calculus code act on real
//! differential forms.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::fmt;
use thiserror::Error;

/// Errors raised by Lie algebra constructors and checked operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("trace magnitude {0:e} exceeds tolerance")]
    NotTraceless(f64),
    #[error("anti-Hermitian defect {0:e} exceeds tolerance")]
    NotAntiHermitian(f64),
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("triple element t{0} vanishes")]
    VanishingGenerator(usize),
}

/// Which real form an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Algebra {
    /// Anti-Hermitian traceless matrices.
    SuN,
    /// Traceless complex matrices.
    SlNC,
}

/// Tolerance used by constructors when validating membership.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Common vector-space plus bracket interface for algebra-valued quantities.
pub trait LieVec: Clone + Send + Sync + fmt::Debug {
    /// Zero element of the same algebra and dimension as `self`.
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn scale(&self, s: f64) -> Self;
    fn bracket(&self, other: &Self) -> Self;
    /// The invariant form `-Re Tr(XY)`.
    fn inner(&self, other: &Self) -> f64;
    /// Squared Frobenius norm `Tr(X X^†)`.
    fn norm_sq(&self) -> f64;

    fn neg(&self) -> Self {
        self.scale(-1.0)
    }
    fn add_scaled(&self, other: &Self, s: f64) -> Self {
        self.add(&other.scale(s))
    }
    fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

impl LieVec for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn bracket(&self, _o: &Self) -> Self {
        0.0
    }
    fn inner(&self, o: &Self) -> f64 {
        self * o
    }
    fn norm_sq(&self) -> f64 {
        self * self
    }
}

/// An `su(2)` element in the basis `t_a = -(i/2)σ_a`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Su2(pub [f64; 3]);

impl Su2 {
    pub const ZERO: Su2 = Su2([0.0; 3]);

    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Su2([a, b, c])
    }

    /// Basis vector `t_a` (0-based index).
    pub fn basis(a: usize) -> Self {
        let mut v = [0.0; 3];
        v[a] = 1.0;
        Su2(v)
    }

    /// Matrix form `Σ v_a t_a`.
    pub fn to_element(&self) -> LieElement {
        let t = principal_triple(2).expect("rank 2 is valid");
        let mut m = DMatrix::zeros(2, 2);
        for a in 0..3 {
            m += t.t[a].matrix() * Complex64::new(self.0[a], 0.0);
        }
        LieElement::from_matrix_unchecked(m, Algebra::SuN)
    }

    /// Coordinates of a 2×2 anti-Hermitian traceless matrix.
    pub fn from_element(x: &LieElement) -> Result<Self, LieError> {
        if x.dim() != 2 {
            return Err(LieError::DimensionMismatch { left: x.dim(), right: 2 });
        }
        // inner(t_a, t_b) = δ_ab / 2, so v_a = 2 inner(X, t_a).
        let t = principal_triple(2)?;
        Ok(Su2([
            2.0 * x.inner(&t.t[0]),
            2.0 * x.inner(&t.t[1]),
            2.0 * x.inner(&t.t[2]),
        ]))
    }
}

impl LieVec for Su2 {
    #[inline]
    fn zero_like(&self) -> Self {
        Su2::ZERO
    }
    #[inline]
    fn add(&self, o: &Self) -> Self {
        Su2([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        Su2([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
    #[inline]
    fn scale(&self, s: f64) -> Self {
        Su2([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
    #[inline]
    fn bracket(&self, o: &Self) -> Self {
        let (a, b) = (&self.0, &o.0);
        Su2([
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }
    #[inline]
    fn inner(&self, o: &Self) -> f64 {
        0.5 * (self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2])
    }
    #[inline]
    fn norm_sq(&self) -> f64 {
        self.inner(self)
    }
}

/// An `n×n` complex matrix in `su(n)` or `sl(n,C)`.
#[derive(Clone, PartialEq)]
pub struct LieElement {
    mat: DMatrix<Complex64>,
    tag: Algebra,
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement({:?}, n={}, {:?})", self.tag, self.dim(), self.mat.as_slice())
    }
}

impl LieElement {
    pub fn zero(n: usize, tag: Algebra) -> Self {
        LieElement { mat: DMatrix::zeros(n, n), tag }
    }

    /// Validating constructor: checks squareness, tracelessness and, for
    /// `su(n)`, anti-Hermiticity. Tolerances scale with `max(1, ‖X‖)`.
    pub fn from_matrix(mat: DMatrix<Complex64>, tag: Algebra) -> Result<Self, LieError> {
        if mat.nrows() != mat.ncols() {
            return Err(LieError::NotSquare { rows: mat.nrows(), cols: mat.ncols() });
        }
        let scale = mat.norm().max(1.0);
        let tr = mat.trace().norm();
        if tr > MEMBERSHIP_TOL * scale {
            return Err(LieError::NotTraceless(tr));
        }
        if tag == Algebra::SuN {
            let defect = (&mat + mat.adjoint()).norm();
            if defect > MEMBERSHIP_TOL * scale {
                return Err(LieError::NotAntiHermitian(defect));
            }
        }
        Ok(LieElement { mat, tag })
    }

    /// Builds an element without membership checks.
    pub fn from_matrix_unchecked(mat: DMatrix<Complex64>, tag: Algebra) -> Self {
        LieElement { mat, tag }
    }

    /// Row-major constructor from complex entries, validating membership.
    pub fn from_rows(n: usize, entries: &[Complex64], tag: Algebra) -> Result<Self, LieError> {
        if entries.len() != n * n {
            return Err(LieError::DimensionMismatch { left: entries.len(), right: n * n });
        }
        Self::from_matrix(DMatrix::from_row_slice(n, n, entries), tag)
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }
    pub fn tag(&self) -> Algebra {
        self.tag
    }
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }
    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.mat
    }

    fn check_dim(&self, other: &Self) -> Result<(), LieError> {
        if self.dim() != other.dim() {
            Err(LieError::DimensionMismatch { left: self.dim(), right: other.dim() })
        } else {
            Ok(())
        }
    }

    fn joint_tag(&self, other: &Self) -> Algebra {
        if self.tag == Algebra::SuN && other.tag == Algebra::SuN {
            Algebra::SuN
        } else {
            Algebra::SlNC
        }
    }

    /// Commutator `XY - YX`.
    pub fn try_bracket(&self, other: &Self) -> Result<Self, LieError> {
        self.check_dim(other)?;
        let m = &self.mat * &other.mat - &other.mat * &self.mat;
        Ok(LieElement { mat: m, tag: self.joint_tag(other) })
    }

    /// Invariant form `-Re Tr(XY)`.
    pub fn try_inner(&self, other: &Self) -> Result<f64, LieError> {
        self.check_dim(other)?;
        Ok(-trace_of_product(&self.mat, &other.mat).re)
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.mat.norm()
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// Hermitian adjoint.
    pub fn adjoint(&self) -> Self {
        LieElement { mat: self.mat.adjoint(), tag: self.tag }
    }

    /// Multiplication by a complex scalar. Leaves `su(n)` unless the scalar is real.
    pub fn scale_complex(&self, c: Complex64) -> Self {
        let tag = if c.im == 0.0 { self.tag } else { Algebra::SlNC };
        LieElement { mat: &self.mat * c, tag }
    }

    /// Conjugation `g X g⁻¹` by an invertible matrix.
    pub fn conjugate(&self, g: &DMatrix<Complex64>) -> Self {
        let ginv = g.clone().try_inverse().expect("conjugating matrix must be invertible");
        let m = g * &self.mat * ginv;
        LieElement { mat: m, tag: self.tag }
    }

    /// Retags as `sl(n,C)`.
    pub fn complexified(&self) -> Self {
        LieElement { mat: self.mat.clone(), tag: Algebra::SlNC }
    }

    /// Current membership defects `(|Tr X|, ‖X + X^†‖)`.
    pub fn membership_defects(&self) -> (f64, f64) {
        (self.mat.trace().norm(), (&self.mat + self.mat.adjoint()).norm())
    }
}

fn trace_of_product(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

impl LieVec for LieElement {
    fn zero_like(&self) -> Self {
        LieElement::zero(self.dim(), self.tag)
    }
    fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim(), o.dim(), "dimension mismatch");
        LieElement { mat: &self.mat + &o.mat, tag: self.joint_tag(o) }
    }
    fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.dim(), o.dim(), "dimension mismatch");
        LieElement { mat: &self.mat - &o.mat, tag: self.joint_tag(o) }
    }
    fn scale(&self, s: f64) -> Self {
        LieElement { mat: &self.mat * Complex64::new(s, 0.0), tag: self.tag }
    }
    fn bracket(&self, o: &Self) -> Self {
        self.try_bracket(o).expect("dimension mismatch")
    }
    fn inner(&self, o: &Self) -> f64 {
        self.try_inner(o).expect("dimension mismatch")
    }
    fn norm_sq(&self) -> f64 {
        self.mat.norm_squared()
    }
}

/// Images `t_1, t_2, t_3` of the standard `su(2)` generators under the
/// irreducible `n`-dimensional representation.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalTriple {
    pub n: usize,
    pub t: [LieElement; 3],
}

impl PrincipalTriple {
    /// Builds a triple from arbitrary elements (no commutation check).
    pub fn from_elements(t1: LieElement, t2: LieElement, t3: LieElement) -> Result<Self, LieError> {
        let n = t1.dim();
        t1.check_dim(&t2)?;
        t1.check_dim(&t3)?;
        Ok(PrincipalTriple { n, t: [t1, t2, t3] })
    }

    pub fn scaled(&self, s: f64) -> Self {
        PrincipalTriple { n: self.n, t: [self.t[0].scale(s), self.t[1].scale(s), self.t[2].scale(s)] }
    }

    /// Conjugates every element by `g`.
    pub fn conjugated(&self, g: &DMatrix<Complex64>) -> Self {
        PrincipalTriple {
            n: self.n,
            t: [self.t[0].conjugate(g), self.t[1].conjugate(g), self.t[2].conjugate(g)],
        }
    }

    /// Quadratic Casimir `Σ_a inner(t_a, t_a)`.
    pub fn casimir(&self) -> f64 {
        self.t.iter().map(|x| x.inner(x)).sum()
    }
}

/// Ladder-operator matrices `(J_+, J_3)` of the spin-`(n-1)/2` representation
/// in the basis `m = j, j-1, ..., -j`.
pub fn ladder_matrices(n: usize) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let j = (n as f64 - 1.0) / 2.0;
    let mut jp = DMatrix::zeros(n, n);
    let mut j3 = DMatrix::zeros(n, n);
    for i in 0..n {
        j3[(i, i)] = Complex64::new(j - i as f64, 0.0);
        if i >= 1 {
            jp[(i - 1, i)] = Complex64::new(((i * (n - i)) as f64).sqrt(), 0.0);
        }
    }
    (jp, j3)
}

/// The principal triple `t_a = -i J_a` for the spin-`(n-1)/2` irrep.
pub fn principal_triple(n: usize) -> Result<PrincipalTriple, LieError> {
    if n < 2 {
        return Err(LieError::RankTooSmall(n));
    }
    let (jp, j3) = ladder_matrices(n);
    let jm = jp.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let minus_i = Complex64::new(0.0, -1.0);
    let j1 = (&jp + &jm) * half;
    let j2 = (&jp - &jm) * Complex64::new(0.0, -0.5);
    let mk = |m: DMatrix<Complex64>| LieElement::from_matrix(m * minus_i, Algebra::SuN);
    Ok(PrincipalTriple { n, t: [mk(j1)?, mk(j2)?, mk(j3)?] })
}

/// Levi-Civita sign for indices in `0..3`.
pub fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Outcome of [`check_triple`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleCheck {
    /// `max_(a,b) ‖[t_a,t_b] - ε_abc t_c‖_F`.
    pub residual: f64,
    /// Set when some `t_a` vanishes, which a dreibein forbids.
    pub has_vanishing_generator: bool,
}

/// Measures how far a triple is from the `su(2)` commutation relations.
pub fn check_triple(t: &PrincipalTriple) -> TripleCheck {
    let mut residual: f64 = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            let mut r = t.t[a].bracket(&t.t[b]);
            for c in 0..3 {
                let e = levi_civita(a, b, c);
                if e != 0.0 {
                    r = r.sub(&t.t[c].scale(e));
                }
            }
            residual = residual.max(r.frobenius());
        }
    }
    TripleCheck {
        residual,
        has_vanishing_generator: t.t.iter().any(|x| x.frobenius() == 0.0),
    }
}

/// The algebra-valued coframe `e = Σ_a t_a e*_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dreibein {
    pub triple: PrincipalTriple,
    /// Axis index carrying `e*_a` for each `a`.
    pub coframe: [usize; 3],
}

impl Dreibein {
    pub fn new(triple: PrincipalTriple, coframe: [usize; 3]) -> Result<Self, LieError> {
        for (a, x) in triple.t.iter().enumerate() {
            if x.frobenius() == 0.0 {
                return Err(LieError::VanishingGenerator(a + 1));
            }
        }
        Ok(Dreibein { triple, coframe })
    }

    /// Components of `e` on a `dim`-dimensional coordinate coframe.
    pub fn components(&self, dim: usize) -> Vec<LieElement> {
        let zero = self.triple.t[0].zero_like();
        let mut out = vec![zero; dim];
        for a in 0..3 {
            out[self.coframe[a]] = self.triple.t[a].clone();
        }
        out
    }
}

/// Pauli matrices `σ_1, σ_2, σ_3`.
pub fn pauli() -> [DMatrix<Complex64>; 3] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    [
        DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
        DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
        DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
    ]
}
