//! Spin tomograms, dequantizer/quantizer pairs, operator symbols and
//! reconstruction of operators from their symbols.
//!
//! Conventions used throughout the crate:
//!
//! * The dequantizer is the rotated projector `u^+ |m><m| u`, which equals
//!   `I/2 + m (sigma . n)` with `(sigma . n)_{12} = sin(theta) e^{-i psi}`.
//! * The quantizer is `I/2 + 3m (sigma . n)` in the same convention.
//! * Integration over one mode means `sum_{m = +-1/2} \int dOmega / 4pi`.
//! * A projection tuple maps to a basis index with `+1/2 -> 0`, `-1/2 -> 1`,
//!   mode 1 in the most significant bit (the Jordan-Wigner slot order).

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron_all, trace_of_product_unchecked, ComplexMatrix, ONE, ZERO};
use crate::rotation::{euler_rotation, Direction, EulerAngles, SphereQuadrature};

/// Identifier embedded in output files so readers know which conventions produced them.
pub const CONVENTION: &str = "rotated-projector dequantizer, dΩ/4π measure";

/// Default tolerance for the Hermiticity, trace and positivity checks on density matrices.
pub const DENSITY_TOLERANCE: f64 = 1e-10;

/// Spin projection `m` on the rotated z axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpinProjection {
    /// `m = +1/2`
    Up,
    /// `m = -1/2`
    Down,
}

impl SpinProjection {
    pub const ALL: [SpinProjection; 2] = [SpinProjection::Up, SpinProjection::Down];

    pub fn value(self) -> f64 {
        match self {
            SpinProjection::Up => 0.5,
            SpinProjection::Down => -0.5,
        }
    }

    pub fn bit(self) -> usize {
        match self {
            SpinProjection::Up => 0,
            SpinProjection::Down => 1,
        }
    }

    pub fn from_bit(bit: usize) -> Self {
        if bit & 1 == 0 {
            SpinProjection::Up
        } else {
            SpinProjection::Down
        }
    }

    /// Accepts `+1/2`, `-1/2` (or any value with that sign).
    pub fn from_value(m: f64) -> Self {
        if m >= 0.0 {
            SpinProjection::Up
        } else {
            SpinProjection::Down
        }
    }
}

impl fmt::Display for SpinProjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinProjection::Up => "+1/2",
            SpinProjection::Down => "-1/2",
        })
    }
}

/// One mode's tomographic coordinate `(m, n)`. An N-mode point is `[ModePoint]` of length N.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModePoint {
    pub m: SpinProjection,
    pub dir: Direction,
}

impl ModePoint {
    pub fn new(m: SpinProjection, dir: Direction) -> Self {
        ModePoint { m, dir }
    }
}

/// Basis index of a projection tuple, mode 1 most significant.
pub fn projection_index(ms: &[SpinProjection]) -> usize {
    ms.iter().fold(0, |acc, m| (acc << 1) | m.bit())
}

pub fn projections_of_index(index: usize, modes: usize) -> Vec<SpinProjection> {
    (0..modes)
        .map(|k| SpinProjection::from_bit(index >> (modes - 1 - k)))
        .collect()
}

/// `"0"` for `+1/2`, `"1"` for `-1/2`, mode 1 first.
pub fn projection_bitstring(index: usize, modes: usize) -> String {
    projections_of_index(index, modes)
        .into_iter()
        .map(|m| if m.bit() == 0 { '0' } else { '1' })
        .collect()
}

/// `sigma . n` for the unit vector of `dir`.
pub fn sigma_dot(dir: &Direction) -> ComplexMatrix {
    let [x, y, z] = dir.unit_vector();
    ComplexMatrix::from_rows(&[
        [Complex64::new(z, 0.0), Complex64::new(x, -y)],
        [Complex64::new(x, y), Complex64::new(-z, 0.0)],
    ])
}

fn half_identity_plus(coeff: f64, dir: &Direction) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(2).scale(Complex64::new(0.5, 0.0));
    out.add_scaled(Complex64::new(coeff, 0.0), &sigma_dot(dir))
        .expect("2x2");
    out
}

/// `U(m, n) = I/2 + m (sigma . n)`.
pub fn dequantizer(m: SpinProjection, dir: &Direction) -> ComplexMatrix {
    half_identity_plus(m.value(), dir)
}

/// `D(m, n) = I/2 + 3m (sigma . n)`.
pub fn quantizer(m: SpinProjection, dir: &Direction) -> ComplexMatrix {
    half_identity_plus(3.0 * m.value(), dir)
}

/// `Tr D(p1) U(p2) = 1/2 + 6 m1 m2 (n1 . n2)`, the reproducing kernel of the symbol space.
pub fn delta_kernel(p1: &ModePoint, p2: &ModePoint) -> f64 {
    0.5 + 6.0 * p1.m.value() * p2.m.value() * p1.dir.dot(&p2.dir)
}

fn tensor_of(
    points: &[ModePoint],
    f: fn(SpinProjection, &Direction) -> ComplexMatrix,
) -> Result<ComplexMatrix> {
    let factors: Vec<_> = points.iter().map(|p| f(p.m, &p.dir)).collect();
    kron_all(&factors).ok_or(Error::EmptyPoint)
}

/// Kronecker product of the per-mode dequantizers, mode 1 leftmost.
pub fn multi_dequantizer(points: &[ModePoint]) -> Result<ComplexMatrix> {
    tensor_of(points, dequantizer)
}

/// Kronecker product of the per-mode quantizers, mode 1 leftmost.
pub fn multi_quantizer(points: &[ModePoint]) -> Result<ComplexMatrix> {
    tensor_of(points, quantizer)
}

/// Number of modes `N` for a `2^N x 2^N` operator.
pub fn modes_of(op: &ComplexMatrix) -> Result<usize> {
    if !op.is_square() {
        return Err(Error::NotSquare {
            op: "modes_of",
            rows: op.rows(),
            cols: op.cols(),
        });
    }
    let dim = op.rows();
    if !dim.is_power_of_two() || dim < 2 {
        return Err(Error::DimensionMismatch {
            op: "modes_of",
            left: op.shape(),
            right: (
                dim.next_power_of_two().max(2),
                dim.next_power_of_two().max(2),
            ),
        });
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Checks Hermiticity, unit trace and positive semidefiniteness to `tol`.
pub fn validate_density(rho: &ComplexMatrix, tol: f64) -> Result<()> {
    if !rho.is_square() {
        return Err(Error::NotSquare {
            op: "density",
            rows: rho.rows(),
            cols: rho.cols(),
        });
    }
    if !rho.is_hermitian(tol) {
        return Err(Error::InvalidDensity("matrix is not Hermitian".into()));
    }
    let tr = rho.trace()?;
    if (tr - ONE).norm() > tol {
        return Err(Error::InvalidDensity(format!("trace is {tr}, expected 1")));
    }
    if let Some(pivot) = negative_pivot(rho, tol) {
        return Err(Error::InvalidDensity(format!(
            "not positive semidefinite (pivot {pivot:e})"
        )));
    }
    Ok(())
}

/// Diagonally pivoted Cholesky elimination; returns the offending pivot if the
/// Hermitian matrix is not positive semidefinite within `tol`.
fn negative_pivot(a: &ComplexMatrix, tol: f64) -> Option<f64> {
    let n = a.rows();
    let mut work: Vec<Complex64> = a.as_slice().to_vec();
    let mut remaining: Vec<usize> = (0..n).collect();
    while !remaining.is_empty() {
        let (pos, &p) = remaining
            .iter()
            .enumerate()
            .max_by(|(_, &i), (_, &j)| work[i * n + i].re.total_cmp(&work[j * n + j].re))
            .expect("nonempty");
        let d = work[p * n + p].re;
        if d < -tol {
            return Some(d);
        }
        if d <= tol {
            // every remaining pivot is ~0; the 2x2 minors must then vanish too
            for &i in &remaining {
                for &j in &remaining {
                    let bound =
                        (work[i * n + i].re.max(0.0) + tol) * (work[j * n + j].re.max(0.0) + tol);
                    if i != j && work[i * n + j].norm_sqr() > bound {
                        return Some(-work[i * n + j].norm());
                    }
                }
            }
            return None;
        }
        remaining.swap_remove(pos);
        for &i in &remaining {
            let f = work[i * n + p] / d;
            for &j in &remaining {
                let v = work[p * n + j];
                work[i * n + j] -= f * v;
            }
        }
    }
    None
}

/// Joint probability distribution of the N spin projections for fixed
/// measurement angles, indexed by projection tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tomogram {
    pub modes: usize,
    pub angles: Vec<EulerAngles>,
    pub probabilities: Vec<f64>,
}

impl Tomogram {
    pub fn probability(&self, ms: &[SpinProjection]) -> f64 {
        self.probabilities[projection_index(ms)]
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.probabilities
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// `(bitstring, probability)` pairs in index order.
    pub fn labelled(&self) -> impl Iterator<Item = (String, f64)> + '_ {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(i, &p)| (projection_bitstring(i, self.modes), p))
    }
}

fn check_angle_count(rho: &ComplexMatrix, angles: &[EulerAngles]) -> Result<usize> {
    let modes = modes_of(rho)?;
    if angles.len() != modes {
        return Err(Error::ModeCountMismatch {
            expected: modes,
            got: angles.len(),
        });
    }
    Ok(modes)
}

/// Tomogram of `rho`: the diagonal of `(u_1 x ... x u_N) rho (u_1 x ... x u_N)^+`.
pub fn tomogram(rho: &ComplexMatrix, angles: &[EulerAngles]) -> Result<Tomogram> {
    tomogram_with_tolerance(rho, angles, DENSITY_TOLERANCE)
}

pub fn tomogram_with_tolerance(
    rho: &ComplexMatrix,
    angles: &[EulerAngles],
    tol: f64,
) -> Result<Tomogram> {
    let modes = check_angle_count(rho, angles)?;
    validate_density(rho, tol)?;
    Ok(rotated_diagonal(rho, angles, modes))
}

fn rotated_diagonal(rho: &ComplexMatrix, angles: &[EulerAngles], modes: usize) -> Tomogram {
    let rotations: Vec<_> = angles.iter().map(euler_rotation).collect();
    let u = kron_all(&rotations).expect("at least one mode");
    let u_rho = u.matmul(rho).expect("same dimension");
    let dim = rho.rows();
    let probabilities = (0..dim)
        .map(|b| {
            (0..dim)
                .map(|j| u_rho.get(b, j) * u.get(b, j).conj())
                .sum::<Complex64>()
                .re
        })
        .collect();
    Tomogram {
        modes,
        angles: angles.to_vec(),
        probabilities,
    }
}

/// Same distribution computed as `Tr(rho * multi_dequantizer(m, n))` for every projection tuple.
pub fn tomogram_via_dequantizer(rho: &ComplexMatrix, angles: &[EulerAngles]) -> Result<Tomogram> {
    let modes = check_angle_count(rho, angles)?;
    validate_density(rho, DENSITY_TOLERANCE)?;
    let probabilities = (0..rho.rows())
        .map(|b| {
            let point: Vec<_> = projections_of_index(b, modes)
                .into_iter()
                .zip(angles)
                .map(|(m, a)| ModePoint::new(m, a.direction()))
                .collect();
            let d = multi_dequantizer(&point)?;
            Ok(trace_of_product_unchecked(rho, &d).re)
        })
        .collect::<Result<_>>()?;
    Ok(Tomogram {
        modes,
        angles: angles.to_vec(),
        probabilities,
    })
}

/// `f_A(x) = Tr(A U(x))`.
pub fn symbol(op: &ComplexMatrix, point: &[ModePoint]) -> Result<Complex64> {
    let modes = modes_of(op)?;
    if point.len() != modes {
        return Err(Error::ModeCountMismatch {
            expected: modes,
            got: point.len(),
        });
    }
    let d = multi_dequantizer(point)?;
    Ok(trace_of_product_unchecked(op, &d))
}

/// A function on tomographic points: the symbol of some operator.
pub trait Symbol: Sync {
    fn modes(&self) -> usize;

    fn eval(&self, point: &[ModePoint]) -> Result<Complex64>;

    /// Values at every grid point, in grid order.
    fn values_on(&self, grid: &TomoGrid) -> Result<Vec<Complex64>> {
        check_modes_match(self.modes(), grid.modes())?;
        (0..grid.len())
            .into_par_iter()
            .map(|i| self.eval(grid.point(i)))
            .collect()
    }
}

fn check_modes_match(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::ModeCountMismatch { expected, got });
    }
    Ok(())
}

/// Symbol of an explicit `2^N x 2^N` operator, evaluated through the trace definition.
#[derive(Debug, Clone)]
pub struct OperatorSymbol {
    op: ComplexMatrix,
    modes: usize,
}

impl OperatorSymbol {
    pub fn new(op: ComplexMatrix) -> Result<Self> {
        let modes = modes_of(&op)?;
        Ok(OperatorSymbol { op, modes })
    }

    pub fn operator(&self) -> &ComplexMatrix {
        &self.op
    }
}

impl Symbol for OperatorSymbol {
    fn modes(&self) -> usize {
        self.modes
    }

    fn eval(&self, point: &[ModePoint]) -> Result<Complex64> {
        symbol(&self.op, point)
    }

    fn values_on(&self, grid: &TomoGrid) -> Result<Vec<Complex64>> {
        check_modes_match(self.modes, grid.modes())?;
        Ok((0..grid.len())
            .into_par_iter()
            .map(|i| trace_of_product_unchecked(&self.op, &grid.dequantizer(i)))
            .collect())
    }
}

/// Symbol known only through its values on a tomographic grid.
///
/// Off-grid values come from the reproducing kernel,
/// `f(x) = sum_y w_y f(y) prod_k delta_kernel(y_k, x_k)`, which is exact for
/// genuine symbols because they are affine in each mode's unit vector.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSymbol {
    grid: TomoGrid,
    values: Vec<Complex64>,
}

impl GridSymbol {
    pub fn new(grid: TomoGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidLength {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(GridSymbol { grid, values })
    }

    pub fn sample(f: &dyn Symbol, grid: &TomoGrid) -> Result<Self> {
        Ok(GridSymbol {
            grid: grid.clone(),
            values: f.values_on(grid)?,
        })
    }

    pub fn grid(&self) -> &TomoGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Largest pointwise modulus of the difference with `other` on this grid.
    pub fn max_deviation(&self, other: &dyn Symbol) -> Result<f64> {
        let theirs = other.values_on(&self.grid)?;
        Ok(self
            .values
            .iter()
            .zip(&theirs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

impl Symbol for GridSymbol {
    fn modes(&self) -> usize {
        self.grid.modes
    }

    fn eval(&self, point: &[ModePoint]) -> Result<Complex64> {
        check_modes_match(self.grid.modes, point.len())?;
        Ok((0..self.grid.len())
            .map(|i| {
                let k: f64 = self
                    .grid
                    .point(i)
                    .iter()
                    .zip(point)
                    .map(|(y, x)| delta_kernel(y, x))
                    .product();
                self.values[i] * (self.grid.weights[i] * k)
            })
            .sum())
    }

    fn values_on(&self, grid: &TomoGrid) -> Result<Vec<Complex64>> {
        if grid == &self.grid {
            return Ok(self.values.clone());
        }
        check_modes_match(self.modes(), grid.modes())?;
        (0..grid.len())
            .into_par_iter()
            .map(|i| self.eval(grid.point(i)))
            .collect()
    }
}

/// Product grid over N modes: every projection tuple crossed with every tuple
/// of sphere nodes. Point weights are products of per-mode sphere weights
/// (the projection sum carries weight 1).
///
/// Each mode contributes `2Q` local points ordered `(m, node)` with `m`
/// outermost; the global index is mixed-radix with mode 1 most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct TomoGrid {
    modes: usize,
    quadrature: SphereQuadrature,
    local: Vec<ModePoint>,
    local_weights: Vec<f64>,
    points: Vec<ModePoint>,
    weights: Vec<f64>,
    local_dequantizers: Vec<ComplexMatrix>,
    local_quantizers: Vec<ComplexMatrix>,
}

impl TomoGrid {
    pub fn new(modes: usize, quadrature: SphereQuadrature) -> Result<Self> {
        crate::fermion::check_modes(modes)?;
        let mut local = Vec::with_capacity(2 * quadrature.len());
        let mut local_weights = Vec::with_capacity(2 * quadrature.len());
        for m in SpinProjection::ALL {
            for (dir, w) in quadrature.iter() {
                local.push(ModePoint::new(m, *dir));
                local_weights.push(w);
            }
        }
        let per_mode = local.len();
        let total = per_mode.pow(modes as u32);
        let mut points = Vec::with_capacity(total * modes);
        let mut weights = Vec::with_capacity(total);
        for idx in 0..total {
            let mut w = 1.0;
            for k in 0..modes {
                let l = (idx / per_mode.pow((modes - 1 - k) as u32)) % per_mode;
                points.push(local[l]);
                w *= local_weights[l];
            }
            weights.push(w);
        }
        let local_dequantizers = local.iter().map(|p| dequantizer(p.m, &p.dir)).collect();
        let local_quantizers = local.iter().map(|p| quantizer(p.m, &p.dir)).collect();
        Ok(TomoGrid {
            modes,
            quadrature,
            local,
            local_weights,
            points,
            weights,
            local_dequantizers,
            local_quantizers,
        })
    }

    /// Grid with the smallest sphere quadrature exact to `degree` on every mode.
    pub fn with_degree(modes: usize, degree: usize) -> Result<Self> {
        Self::new(modes, crate::rotation::sphere_quadrature(degree)?)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn quadrature(&self) -> &SphereQuadrature {
        &self.quadrature
    }

    pub fn degree(&self) -> usize {
        self.quadrature.degree()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, index: usize) -> &[ModePoint] {
        &self.points[index * self.modes..(index + 1) * self.modes]
    }

    pub fn weight(&self, index: usize) -> f64 {
        self.weights[index]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Per-mode local indices of a global point index.
    pub fn local_indices(&self, index: usize) -> Vec<usize> {
        let per_mode = self.local.len();
        (0..self.modes)
            .map(|k| (index / per_mode.pow((self.modes - 1 - k) as u32)) % per_mode)
            .collect()
    }

    pub fn local_points(&self) -> &[ModePoint] {
        &self.local
    }

    pub fn local_weights(&self) -> &[f64] {
        &self.local_weights
    }

    fn tensor(&self, index: usize, locals: &[ComplexMatrix]) -> ComplexMatrix {
        let idx = self.local_indices(index);
        kron_all(idx.iter().map(|&l| &locals[l])).expect("at least one mode")
    }

    /// `multi_dequantizer` at grid point `index`.
    pub fn dequantizer(&self, index: usize) -> ComplexMatrix {
        self.tensor(index, &self.local_dequantizers)
    }

    /// `multi_quantizer` at grid point `index`.
    pub fn quantizer(&self, index: usize) -> ComplexMatrix {
        self.tensor(index, &self.local_quantizers)
    }
}

/// `A = sum_x w_x f(x) D(x)` over the grid.
///
/// The grid must integrate degree-2 spherical polynomials exactly; anything
/// coarser is rejected rather than returning an approximation.
pub fn reconstruct(f: &dyn Symbol, grid: &TomoGrid) -> Result<ComplexMatrix> {
    if grid.degree() < 2 {
        return Err(Error::InsufficientQuadrature {
            degree: grid.degree(),
            required: 2,
        });
    }
    let values = f.values_on(grid)?;
    let dim = 1 << grid.modes();
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for (i, v) in values.iter().enumerate() {
        if *v == ZERO {
            continue;
        }
        acc.add_scaled(*v * grid.weight(i), &grid.quantizer(i))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{sigma_minus, sigma_plus, sigma_z};
    use crate::rotation::{direction, sphere_quadrature};
    use std::f64::consts::{FRAC_PI_2, PI};

    const UP: SpinProjection = SpinProjection::Up;
    const DOWN: SpinProjection = SpinProjection::Down;

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        a.max_abs_diff(b).unwrap() <= tol
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dequantizer_examples() {
        let z = direction(0.0, 0.0).unwrap();
        assert_eq!(dequantizer(UP, &z), ComplexMatrix::diagonal(&[ONE, ZERO]));
        assert_eq!(dequantizer(DOWN, &z), ComplexMatrix::diagonal(&[ZERO, ONE]));
        let x = direction(FRAC_PI_2, 0.0).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]]);
        assert!(close(&dequantizer(UP, &x), &expected, 1e-16));
    }

    #[test]
    fn dequantizer_is_rotated_projector() {
        for &(phi, theta, psi) in &[(0.0, 0.4, 1.3), (2.0, 2.9, 5.5), (4.1, PI, 0.2)] {
            let a = EulerAngles::new(phi, theta, psi).unwrap();
            let u = euler_rotation(&a);
            for m in SpinProjection::ALL {
                let mut e = ComplexMatrix::zeros(2, 2);
                e.set(m.bit(), m.bit(), ONE);
                let proj = u.dagger().matmul(&e).unwrap().matmul(&u).unwrap();
                assert!(close(&proj, &dequantizer(m, &a.direction()), 1e-15));
            }
        }
    }

    #[test]
    fn quantizer_examples() {
        let z = direction(0.0, 0.0).unwrap();
        assert_eq!(
            quantizer(UP, &z),
            ComplexMatrix::diagonal(&[c(2.0, 0.0), c(-1.0, 0.0)])
        );
        let d = direction(1.1, 2.2).unwrap();
        let sum = quantizer(UP, &d).add(&quantizer(DOWN, &d)).unwrap();
        assert!(close(&sum, &ComplexMatrix::identity(2), 1e-15));
        assert!((quantizer(DOWN, &d).trace().unwrap() - ONE).norm() < 1e-15);
        assert!(quantizer(UP, &d).is_hermitian(0.0));
    }

    #[test]
    fn delta_kernel_examples() {
        let z = direction(0.0, 0.0).unwrap();
        let x = direction(FRAC_PI_2, 0.0).unwrap();
        assert_eq!(
            delta_kernel(&ModePoint::new(UP, z), &ModePoint::new(UP, z)),
            2.0
        );
        assert_eq!(
            delta_kernel(&ModePoint::new(UP, z), &ModePoint::new(DOWN, z)),
            -1.0
        );
        for (m1, m2) in [(UP, UP), (UP, DOWN), (DOWN, DOWN)] {
            let k = delta_kernel(&ModePoint::new(m1, z), &ModePoint::new(m2, x));
            assert!((k - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn delta_kernel_matches_trace() {
        let a = ModePoint::new(UP, direction(0.7, 3.0).unwrap());
        let b = ModePoint::new(DOWN, direction(2.3, 0.4).unwrap());
        let t = quantizer(a.m, &a.dir)
            .matmul(&dequantizer(b.m, &b.dir))
            .unwrap()
            .trace()
            .unwrap();
        assert!((t - c(delta_kernel(&a, &b), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn multi_dequantizer_examples() {
        let z = direction(0.0, 0.0).unwrap();
        let p = [ModePoint::new(UP, z), ModePoint::new(UP, z)];
        assert_eq!(
            multi_dequantizer(&p).unwrap(),
            ComplexMatrix::diagonal(&[ONE, ZERO, ZERO, ZERO])
        );
        assert_eq!(multi_dequantizer(&p[..1]).unwrap(), dequantizer(UP, &z));
        assert_eq!(multi_quantizer(&[]), Err(Error::EmptyPoint));
    }

    #[test]
    fn index_encoding() {
        assert_eq!(projection_index(&[UP, DOWN]), 1);
        assert_eq!(projection_index(&[DOWN, UP, UP]), 4);
        assert_eq!(projections_of_index(6, 3), vec![DOWN, DOWN, UP]);
        assert_eq!(projection_bitstring(2, 2), "10");
    }

    #[test]
    fn single_mode_closed_form_symbol() {
        let a =
            ComplexMatrix::from_rows(&[[c(0.3, 0.1), c(1.0, -2.0)], [c(-0.5, 0.7), c(2.0, 0.0)]]);
        let tr = a.trace().unwrap();
        for &(theta, psi) in &[(0.3, 0.9), (2.0, 4.0), (PI, 1.0)] {
            let d = direction(theta, psi).unwrap();
            for m in SpinProjection::ALL {
                let mv = m.value();
                let (st, ct) = theta.sin_cos();
                let expected = tr / 2.0
                    + mv * (a.get(0, 0) * ct
                        + a.get(0, 1) * Complex64::from_polar(st, psi)
                        + a.get(1, 0) * Complex64::from_polar(st, -psi)
                        - a.get(1, 1) * ct);
                let got = symbol(&a, &[ModePoint::new(m, d)]).unwrap();
                assert!((got - expected).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn symbol_examples() {
        let d = direction(0.8, 2.5).unwrap();
        let (st, ct) = 0.8f64.sin_cos();
        for m in SpinProjection::ALL {
            let p = [ModePoint::new(m, d)];
            assert!((symbol(&ComplexMatrix::identity(2), &p).unwrap() - ONE).norm() < 1e-15);
            let sz = symbol(&sigma_z(), &p).unwrap();
            assert!((sz - c(2.0 * m.value() * ct, 0.0)).norm() < 1e-15);
            let sp = symbol(&sigma_plus(), &p).unwrap();
            assert!((sp - Complex64::from_polar(m.value() * st, 2.5)).norm() < 1e-15);
        }
        assert!(matches!(
            symbol(&ComplexMatrix::identity(4), &[ModePoint::new(UP, d)]),
            Err(Error::ModeCountMismatch {
                expected: 2,
                got: 1
            })
        ));
        assert!(symbol(&ComplexMatrix::identity(3), &[ModePoint::new(UP, d)]).is_err());
    }

    #[test]
    fn tomogram_examples() {
        let alg = crate::fermion::build_algebra(2).unwrap();
        let rho = alg.vacuum().density();
        let (t1, t2) = (0.7, 2.2);
        let angles = [
            EulerAngles::new(0.3, t1, 1.0).unwrap(),
            EulerAngles::new(1.9, t2, 5.0).unwrap(),
        ];
        let t = tomogram(&rho, &angles).unwrap();
        let (c1, s1) = ((t1 / 2.0).cos().powi(2), (t1 / 2.0).sin().powi(2));
        let (c2, s2) = ((t2 / 2.0).cos().powi(2), (t2 / 2.0).sin().powi(2));
        let expected = [c1 * c2, c1 * s2, s1 * c2, s1 * s2];
        for (p, e) in t.probabilities.iter().zip(expected) {
            assert!((p - e).abs() < 1e-15);
        }

        let mixed = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        let t = tomogram(&mixed, &[EulerAngles::new(1.0, 2.0, 3.0).unwrap()]).unwrap();
        assert!(t.probabilities.iter().all(|p| (p - 0.5).abs() < 1e-15));

        let (a, b) = (c(0.6, 0.0), c(0.0, 0.8));
        let pure = ComplexMatrix::outer(&[a, b], &[a, b]);
        let t = tomogram(&pure, &[EulerAngles::new(0.4, 0.0, 2.0).unwrap()]).unwrap();
        assert!((t.probability(&[UP]) - 0.36).abs() < 1e-15);
    }

    #[test]
    fn tomogram_rejects_non_density_input() {
        let a = [EulerAngles::new(0.0, 0.0, 0.0).unwrap()];
        assert!(matches!(
            tomogram(&sigma_plus(), &a),
            Err(Error::InvalidDensity(_))
        ));
        assert!(matches!(
            tomogram(&sigma_z(), &a),
            Err(Error::InvalidDensity(_))
        ));
        let neg = ComplexMatrix::diagonal(&[c(1.5, 0.0), c(-0.5, 0.0)]);
        assert!(matches!(tomogram(&neg, &a), Err(Error::InvalidDensity(_))));
        // unit trace, Hermitian, but an off-diagonal too large for its diagonal
        let bad = ComplexMatrix::from_real_rows(&[[1.0, 0.5], [0.5, 0.0]]);
        assert!(matches!(tomogram(&bad, &a), Err(Error::InvalidDensity(_))));
        let rho = ComplexMatrix::identity(4).scale(c(0.25, 0.0));
        assert!(matches!(
            tomogram(&rho, &a),
            Err(Error::ModeCountMismatch { .. })
        ));
    }

    #[test]
    fn grid_layout() {
        let g = TomoGrid::with_degree(2, 2).unwrap();
        assert_eq!(g.len(), 144);
        assert!((g.weights().iter().sum::<f64>() - 4.0).abs() < 1e-13);
        assert_eq!(g.local_indices(13), vec![1, 1]);
        assert_eq!(g.point(13)[0], g.local_points()[1]);
        assert_eq!(g.point(13)[1].m, UP);
        assert_eq!(g.point(143)[1].m, DOWN);
        let p = g.point(37).to_vec();
        assert!(close(&g.quantizer(37), &multi_quantizer(&p).unwrap(), 0.0));
        assert!(close(
            &g.dequantizer(37),
            &multi_dequantizer(&p).unwrap(),
            0.0
        ));
    }

    #[test]
    fn reconstruct_examples() {
        let g = TomoGrid::with_degree(1, 2).unwrap();
        for op in [sigma_plus(), sigma_minus(), ComplexMatrix::identity(2)] {
            let back = reconstruct(&OperatorSymbol::new(op.clone()).unwrap(), &g).unwrap();
            assert!(close(&back, &op, 1e-14), "{back:?}");
        }
        let g2 = TomoGrid::with_degree(2, 2).unwrap();
        let vac = crate::fermion::vacuum(2).unwrap().density();
        let back = reconstruct(&OperatorSymbol::new(vac.clone()).unwrap(), &g2).unwrap();
        assert!(close(&back, &vac, 1e-14));
    }

    #[test]
    fn reconstruct_rejects_coarse_grid() {
        let g = TomoGrid::new(1, SphereQuadrature::product(1, 2)).unwrap();
        let f = OperatorSymbol::new(sigma_plus()).unwrap();
        assert!(matches!(
            reconstruct(&f, &g),
            Err(Error::InsufficientQuadrature {
                degree: 1,
                required: 2
            })
        ));
        let g2 = TomoGrid::with_degree(2, 2).unwrap();
        assert!(matches!(
            reconstruct(&f, &g2),
            Err(Error::ModeCountMismatch { .. })
        ));
    }

    #[test]
    fn grid_symbol_interpolates_off_grid() {
        let g = TomoGrid::new(1, sphere_quadrature(2).unwrap()).unwrap();
        let a =
            ComplexMatrix::from_rows(&[[c(0.3, 0.1), c(1.0, -2.0)], [c(-0.5, 0.7), c(2.0, 0.0)]]);
        let f = OperatorSymbol::new(a).unwrap();
        let gs = GridSymbol::sample(&f, &g).unwrap();
        let p = [ModePoint::new(DOWN, direction(1.234, 5.0).unwrap())];
        assert!((gs.eval(&p).unwrap() - f.eval(&p).unwrap()).norm() < 1e-13);
        assert!(gs.max_deviation(&f).unwrap() < 1e-15);
        assert!(GridSymbol::new(g, vec![ZERO; 3]).is_err());
    }
}
