//! Seeded sampling of operators, density matrices and tomographic points.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::ComplexMatrix;
use crate::rotation::{Direction, EulerAngles};
use crate::tomography::{ModePoint, SpinProjection};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Square matrix with i.i.d. complex Gaussian entries.
pub fn random_operator<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let data = (0..dim * dim).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::new(dim, dim, data).expect("dim > 0")
}

/// `G G^+ / Tr(G G^+)` for complex Gaussian `G`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = random_operator(rng, dim);
    let ggd = g.matmul(&g.dagger()).expect("square");
    let tr = ggd.trace().expect("square").re;
    // exact Hermitian symmetrization
    let h = ggd.add(&ggd.dagger()).expect("square");
    h.scale(Complex64::new(0.5 / tr, 0.0))
}

pub fn random_euler<R: Rng + ?Sized>(rng: &mut R) -> EulerAngles {
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    let psi = rng.random_range(0.0..std::f64::consts::TAU);
    let theta = rng.random_range(-1.0f64..=1.0).acos();
    EulerAngles::new(phi, theta, psi).expect("sampled in range")
}

/// Uniform on the sphere.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> Direction {
    random_euler(rng).direction()
}

pub fn random_mode_point<R: Rng + ?Sized>(rng: &mut R) -> ModePoint {
    let m = if rng.random_bool(0.5) {
        SpinProjection::Up
    } else {
        SpinProjection::Down
    };
    ModePoint::new(m, random_direction(rng))
}

pub fn random_point<R: Rng + ?Sized>(rng: &mut R, modes: usize) -> Vec<ModePoint> {
    (0..modes).map(|_| random_mode_point(rng)).collect()
}
