//! SU(2) rotations in Euler angles, directions on the unit sphere, and
//! product quadrature grids that are exact for low-degree spherical polynomials.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Euler angles `(phi, theta, psi)` in radians.
///
/// `phi` and `psi` are reduced modulo `2*pi`; `theta` must lie in `[0, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles {
    phi: f64,
    theta: f64,
    psi: f64,
}

impl EulerAngles {
    pub fn new(phi: f64, theta: f64, psi: f64) -> Result<Self> {
        Ok(EulerAngles {
            phi: wrap_azimuth(phi)?,
            theta: check_polar(theta)?,
            psi: wrap_azimuth(psi)?,
        })
    }

    pub fn from_degrees(phi: f64, theta: f64, psi: f64) -> Result<Self> {
        Self::new(phi.to_radians(), theta.to_radians(), psi.to_radians())
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    /// The measurement direction `(theta, psi)`; `phi` does not enter it.
    pub fn direction(&self) -> Direction {
        Direction::from_checked(self.theta, self.psi)
    }
}

/// Point on the unit sphere, `n = (sin t cos p, sin t sin p, cos t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    theta: f64,
    psi: f64,
    #[serde(skip)]
    n: [f64; 3],
}

impl Direction {
    pub fn new(theta: f64, psi: f64) -> Result<Self> {
        Ok(Self::from_checked(check_polar(theta)?, wrap_azimuth(psi)?))
    }

    fn from_checked(theta: f64, psi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = psi.sin_cos();
        Direction {
            theta,
            psi,
            n: [st * cp, st * sp, ct],
        }
    }

    /// Direction of an arbitrary nonzero Cartesian vector.
    pub fn from_vector(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NonFiniteAngle(norm));
        }
        let theta = (v[2] / norm).clamp(-1.0, 1.0).acos();
        let psi = v[1].atan2(v[0]);
        Direction::new(theta, psi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        self.n
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        dot(&self.n, &other.n)
    }

    /// Euler angles with `phi = 0` pointing along this direction.
    pub fn to_euler(&self) -> EulerAngles {
        EulerAngles {
            phi: 0.0,
            theta: self.theta,
            psi: self.psi,
        }
    }
}

pub fn direction(theta: f64, psi: f64) -> Result<Direction> {
    Direction::new(theta, psi)
}

pub(crate) fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn check_polar(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::NonFiniteAngle(theta));
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::ThetaOutOfRange(theta));
    }
    Ok(theta)
}

fn wrap_azimuth(angle: f64) -> Result<f64> {
    if !angle.is_finite() {
        return Err(Error::NonFiniteAngle(angle));
    }
    let wrapped = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2*pi for tiny negative inputs
    Ok(if wrapped >= TAU { 0.0 } else { wrapped })
}

/// The spinor rotation
///
/// ```text
/// [  cos(t/2) e^{ i(phi+psi)/2}   sin(t/2) e^{ i(phi-psi)/2} ]
/// [ -sin(t/2) e^{-i(phi-psi)/2}   cos(t/2) e^{-i(phi+psi)/2} ]
/// ```
pub fn euler_rotation(angles: &EulerAngles) -> ComplexMatrix {
    let (s, c) = (angles.theta / 2.0).sin_cos();
    let sum = (angles.phi + angles.psi) / 2.0;
    let diff = (angles.phi - angles.psi) / 2.0;
    ComplexMatrix::from_rows(&[
        [
            Complex64::from_polar(c, sum),
            Complex64::from_polar(s, diff),
        ],
        [
            -Complex64::from_polar(s, -diff),
            Complex64::from_polar(c, -sum),
        ],
    ])
}

/// Nodes and weights on the sphere, normalized so the weights sum to one
/// (the measure `dOmega / 4pi`).
#[derive(Debug, Clone, PartialEq)]
pub struct SphereQuadrature {
    degree: usize,
    polar_nodes: usize,
    azimuthal_nodes: usize,
    nodes: Vec<Direction>,
    weights: Vec<f64>,
}

impl SphereQuadrature {
    /// Gauss-Legendre in `cos(theta)` crossed with a uniform azimuthal grid.
    ///
    /// `polar` Gauss-Legendre nodes integrate polynomials in `cos(theta)` up to
    /// degree `2*polar - 1`, and `azimuthal` equispaced nodes annihilate
    /// `e^{ik psi}` for `0 < |k| < azimuthal`, so the grid is exact for
    /// spherical polynomials of degree `min(2*polar - 1, azimuthal - 1)`.
    pub fn product(polar: usize, azimuthal: usize) -> Self {
        assert!(
            polar >= 1 && azimuthal >= 1,
            "quadrature needs at least one node per axis"
        );
        let (xs, ws) = gauss_legendre(polar);
        let mut nodes = Vec::with_capacity(polar * azimuthal);
        let mut weights = Vec::with_capacity(polar * azimuthal);
        for (&x, &w) in xs.iter().zip(&ws) {
            let theta = x.clamp(-1.0, 1.0).acos();
            for k in 0..azimuthal {
                let psi = TAU * k as f64 / azimuthal as f64;
                nodes.push(Direction::from_checked(theta, psi));
                weights.push(w / 2.0 / azimuthal as f64);
            }
        }
        SphereQuadrature {
            degree: (2 * polar - 1).min(azimuthal - 1),
            polar_nodes: polar,
            azimuthal_nodes: azimuthal,
            nodes,
            weights,
        }
    }

    /// Polynomial exactness degree this grid was built for.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn polar_nodes(&self) -> usize {
        self.polar_nodes
    }

    pub fn azimuthal_nodes(&self) -> usize {
        self.azimuthal_nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Direction] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Direction, f64)> {
        self.nodes.iter().zip(self.weights.iter().copied())
    }

    /// `sum_k w_k f(n_k)`, accumulated in node order.
    pub fn integrate<T, F>(&self, mut f: F) -> T
    where
        T: std::iter::Sum<T> + std::ops::Mul<f64, Output = T>,
        F: FnMut(&Direction) -> T,
    {
        self.iter().map(|(d, w)| f(d) * w).sum()
    }
}

/// The smallest product grid exact for spherical polynomials of `degree`.
pub fn sphere_quadrature(degree: usize) -> Result<SphereQuadrature> {
    if degree < 2 {
        return Err(Error::InsufficientQuadrature {
            degree,
            required: 2,
        });
    }
    Ok(SphereQuadrature::product(degree / 2 + 1, degree + 1))
}

/// Gauss-Legendre nodes (ascending) and weights on `[-1, 1]`, by Newton
/// iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ONE, ZERO};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn assert_matrix_close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) {
        let d = a.max_abs_diff(b).unwrap();
        assert!(d <= tol, "deviation {d:e}\n{a:?}\n{b:?}");
    }

    #[test]
    fn rotation_special_values() {
        let id = euler_rotation(&EulerAngles::new(0.0, 0.0, 0.0).unwrap());
        assert_matrix_close(&id, &ComplexMatrix::identity(2), 0.0);

        let flip = euler_rotation(&EulerAngles::new(0.0, PI, 0.0).unwrap());
        assert_matrix_close(
            &flip,
            &ComplexMatrix::from_real_rows(&[[0.0, 1.0], [-1.0, 0.0]]),
            1e-16,
        );

        let phase = euler_rotation(&EulerAngles::new(FRAC_PI_2, 0.0, 0.0).unwrap());
        let e = Complex64::from_polar(1.0, PI / 4.0);
        assert_matrix_close(&phase, &ComplexMatrix::diagonal(&[e, e.conj()]), 1e-15);
    }

    #[test]
    fn rotation_is_unitary() {
        let u = euler_rotation(&EulerAngles::new(0.3, 1.2, 4.0).unwrap());
        let p = u.dagger().matmul(&u).unwrap();
        assert_matrix_close(&p, &ComplexMatrix::identity(2), 1e-14);
    }

    #[test]
    fn angle_validation() {
        assert!(matches!(
            EulerAngles::new(0.0, -0.1, 0.0),
            Err(Error::ThetaOutOfRange(_))
        ));
        assert!(Direction::new(PI + 1e-9, 0.0).is_err());
        assert!(Direction::new(f64::NAN, 0.0).is_err());
        let a = EulerAngles::new(-FRAC_PI_2, PI, 5.0 * PI).unwrap();
        assert_abs_diff_eq!(a.phi(), 1.5 * PI, epsilon = 1e-15);
        assert_abs_diff_eq!(a.psi(), PI, epsilon = 1e-14);
        let d = EulerAngles::from_degrees(0.0, 90.0, 180.0).unwrap();
        assert_abs_diff_eq!(d.theta(), FRAC_PI_2, epsilon = 1e-15);
    }

    #[test]
    fn direction_examples() {
        let z = direction(0.0, 1.7).unwrap().unit_vector();
        assert_eq!(z[2], 1.0);
        assert_abs_diff_eq!(z[0], 0.0);
        let x = direction(FRAC_PI_2, 0.0).unwrap().unit_vector();
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-16);
        assert_abs_diff_eq!(x[2], 0.0, epsilon = 1e-16);
        let y = direction(FRAC_PI_2, FRAC_PI_2).unwrap().unit_vector();
        assert_abs_diff_eq!(y[1], 1.0, epsilon = 1e-16);
        assert_abs_diff_eq!(y[0], 0.0, epsilon = 1e-16);
    }

    #[test]
    fn direction_roundtrips_through_vector() {
        let d = direction(2.1, 4.4).unwrap();
        let back = Direction::from_vector(d.unit_vector()).unwrap();
        assert_abs_diff_eq!(back.theta(), d.theta(), epsilon = 1e-14);
        assert_abs_diff_eq!(back.psi(), d.psi(), epsilon = 1e-14);
    }

    #[test]
    fn gauss_legendre_known_rule() {
        let (x, w) = gauss_legendre(2);
        let r = 1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(x[0], -r, epsilon = 1e-15);
        assert_abs_diff_eq!(x[1], r, epsilon = 1e-15);
        assert_abs_diff_eq!(w[0], 1.0, epsilon = 1e-15);
        let (x, w) = gauss_legendre(3);
        assert_abs_diff_eq!(x[2], (0.6f64).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(x[1], 0.0);
        assert_abs_diff_eq!(w[1], 8.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn gauss_legendre_integrates_monomials() {
        for n in 1..12 {
            let (x, w) = gauss_legendre(n);
            for k in 0..2 * n {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
                let exact = if k % 2 == 1 {
                    0.0
                } else {
                    2.0 / (k as f64 + 1.0)
                };
                assert_abs_diff_eq!(q, exact, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn degree_two_grid_shape_and_moments() {
        let q = sphere_quadrature(2).unwrap();
        assert_eq!((q.polar_nodes(), q.azimuthal_nodes(), q.len()), (2, 3, 6));
        assert_abs_diff_eq!(q.weights().iter().sum::<f64>(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.integrate(|_| 1.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.integrate(|d| d.unit_vector()[2]), 0.0, epsilon = 1e-15);
        for i in 0..3 {
            for j in 0..3 {
                let m = q.integrate(|d| d.unit_vector()[i] * d.unit_vector()[j]);
                let exact = if i == j { 1.0 / 3.0 } else { 0.0 };
                assert_abs_diff_eq!(m, exact, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn degree_two_grid_kills_low_harmonics() {
        let q = sphere_quadrature(2).unwrap();
        for k in [-2i32, -1, 1, 2] {
            let s: Complex64 = q.integrate(|d| Complex64::from_polar(1.0, k as f64 * d.psi()));
            assert!(s.norm() < 1e-15, "e^(i{k}psi) integrates to {s}");
        }
        let s: Complex64 = q.integrate(|_| ONE);
        assert!((s - ONE).norm() < 1e-15);
        let s: Complex64 = q.integrate(|d| Complex64::from_polar(1.0, 3.0 * d.psi()));
        assert!(s != ZERO, "three azimuthal nodes cannot resolve k = 3");
    }

    #[test]
    fn rejects_degree_below_two() {
        assert!(matches!(
            sphere_quadrature(1),
            Err(Error::InsufficientQuadrature {
                degree: 1,
                required: 2
            })
        ));
        assert_eq!(SphereQuadrature::product(1, 2).degree(), 1);
    }
}
