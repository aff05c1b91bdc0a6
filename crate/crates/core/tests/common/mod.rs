#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;

use fermitomo::linalg::ComplexMatrix;
use fermitomo::rotation::{Direction, EulerAngles};
use fermitomo::tomography::{ModePoint, SpinProjection};

pub fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), rows * cols)
        .prop_map(move |d| ComplexMatrix::new(rows, cols, d).unwrap())
}

pub fn square(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(dim, dim)
}

pub fn euler() -> impl Strategy<Value = EulerAngles> {
    (0.0..TAU, 0.0..=PI, 0.0..TAU)
        .prop_map(|(phi, theta, psi)| EulerAngles::new(phi, theta, psi).unwrap())
}

pub fn direction() -> impl Strategy<Value = Direction> {
    (0.0..=PI, 0.0..TAU).prop_map(|(theta, psi)| Direction::new(theta, psi).unwrap())
}

pub fn projection() -> impl Strategy<Value = SpinProjection> {
    prop_oneof![Just(SpinProjection::Up), Just(SpinProjection::Down)]
}

pub fn mode_point() -> impl Strategy<Value = ModePoint> {
    (projection(), direction()).prop_map(|(m, dir)| ModePoint::new(m, dir))
}

pub fn point(modes: usize) -> impl Strategy<Value = Vec<ModePoint>> {
    prop::collection::vec(mode_point(), modes)
}

/// `G G^+ / Tr(G G^+)` from a generated `G`.
pub fn density(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    square(dim).prop_filter_map("degenerate", |g| {
        let ggd = g.matmul(&g.dagger()).unwrap();
        let tr = ggd.trace().unwrap().re;
        (tr > 1e-6).then(|| {
            let h = ggd.add(&ggd.dagger()).unwrap();
            h.scale(Complex64::new(0.5 / tr, 0.0))
        })
    })
}
