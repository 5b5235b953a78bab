//! Shared generators for the integration tests.
#![allow(dead_code)]

use kwlab::lie::{Algebra, LieElement};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

/// Anti-Hermitian traceless matrix built from `2n²` real entries.
pub fn su_from(n: usize, raw: &[f64]) -> LieElement {
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let k = 2 * (i * n + j);
            m[(i, j)] = Complex64::new(raw[k], raw[k + 1]);
        }
    }
    let mut x = (&m - m.adjoint()) * Complex64::new(0.5, 0.0);
    let tr = x.trace() / Complex64::new(n as f64, 0.0);
    for i in 0..n {
        x[(i, i)] -= tr;
    }
    LieElement::from_matrix(x, Algebra::SuN).expect("su(n) by construction")
}

/// Strategy for `count` elements of `su(n)` with `n` in `2..=max_n`.
pub fn su_elements(max_n: usize, count: usize) -> impl Strategy<Value = Vec<LieElement>> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 2 * n * n), count)
            .prop_map(move |raws| raws.iter().map(|r| su_from(n, r)).collect())
    })
}

/// The unitary `exp(X)` of an anti-Hermitian matrix, by scaling and squaring.
pub fn unitary_exp(x: &LieElement) -> DMatrix<Complex64> {
    let n = x.dim();
    let m = x.matrix() * Complex64::new(1.0 / 1024.0, 0.0);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..20 {
        term = &term * &m * Complex64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..10 {
        sum = &sum * &sum;
    }
    sum
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
