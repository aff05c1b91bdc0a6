//! Closed-form tomographic symbols of fermionic operators and of the vacuum.
//!
//! Every Jordan-Wigner string is a Kronecker product, and the N-mode
//! dequantizer is a Kronecker product too, so the symbol of a string is the
//! product of single-mode symbols of its 2x2 factors:
//!
//! | factor | symbol at `(m, n)`          |
//! |--------|-----------------------------|
//! | `1`    | `1`                         |
//! | `sz`   | `2m cos(theta)`             |
//! | `s+`   | `m sin(theta) e^{i psi}`    |
//! | `s-`   | `m sin(theta) e^{-i psi}`   |
//!
//! No closed form depends on the first Euler angle.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fermion::{check_modes, fock_state, jordan_wigner_string, FermionAlgebra, SlotFactor};
use crate::rotation::{Direction, EulerAngles, SphereQuadrature};
use crate::tomography::{tomogram, ModePoint, SpinProjection, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaKind {
    Plus,
    Minus,
    Z,
    One,
}

impl From<SlotFactor> for OmegaKind {
    fn from(f: SlotFactor) -> Self {
        match f {
            SlotFactor::Identity => OmegaKind::One,
            SlotFactor::Raise => OmegaKind::Plus,
            SlotFactor::Lower => OmegaKind::Minus,
            SlotFactor::Z => OmegaKind::Z,
        }
    }
}

/// Single-mode closed-form symbol of `s+`, `s-`, `sz` or `1`.
pub fn omega(kind: OmegaKind, m: SpinProjection, dir: &Direction) -> Complex64 {
    let m = m.value();
    let theta = dir.theta();
    match kind {
        OmegaKind::One => Complex64::new(1.0, 0.0),
        OmegaKind::Z => Complex64::new(2.0 * m * theta.cos(), 0.0),
        OmegaKind::Plus => Complex64::from_polar(m * theta.sin(), dir.psi()),
        OmegaKind::Minus => Complex64::from_polar(m * theta.sin(), -dir.psi()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FermiOperator {
    Annihilation,
    Creation,
}

/// Product of single-mode closed forms, one factor per mode (slot 1 first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormSymbol {
    kinds: Vec<OmegaKind>,
}

impl ClosedFormSymbol {
    pub fn new(kinds: Vec<OmegaKind>) -> Result<Self> {
        check_modes(kinds.len())?;
        Ok(ClosedFormSymbol { kinds })
    }

    /// Symbol of `a_j` or `a_j^+` in an N-mode system.
    pub fn fermi(n_modes: usize, j: usize, op: FermiOperator) -> Result<Self> {
        let slots = jordan_wigner_string(n_modes, j, op == FermiOperator::Creation)?;
        Ok(ClosedFormSymbol {
            kinds: slots.into_iter().map(OmegaKind::from).collect(),
        })
    }

    pub fn kinds(&self) -> &[OmegaKind] {
        &self.kinds
    }
}

impl Symbol for ClosedFormSymbol {
    fn modes(&self) -> usize {
        self.kinds.len()
    }

    fn eval(&self, point: &[ModePoint]) -> Result<Complex64> {
        if point.len() != self.kinds.len() {
            return Err(Error::ModeCountMismatch {
                expected: self.kinds.len(),
                got: point.len(),
            });
        }
        Ok(self
            .kinds
            .iter()
            .zip(point)
            .map(|(&k, p)| omega(k, p.m, &p.dir))
            .product())
    }
}

/// Closed-form symbol of `a_j` (or `a_j^+`) for N modes at `point`.
pub fn fermi_operator_symbol(
    n_modes: usize,
    j: usize,
    op: FermiOperator,
    point: &[ModePoint],
) -> Result<Complex64> {
    ClosedFormSymbol::fermi(n_modes, j, op)?.eval(point)
}

/// Vacuum tomogram: product over modes of `cos^2(theta/2)` for `+1/2` and `sin^2(theta/2)` for `-1/2`.
pub fn vacuum_tomogram(point: &[ModePoint]) -> Result<f64> {
    if point.is_empty() {
        return Err(Error::EmptyPoint);
    }
    Ok(point
        .iter()
        .map(|p| {
            let half = p.dir.theta() / 2.0;
            match p.m {
                SpinProjection::Up => half.cos().powi(2),
                SpinProjection::Down => half.sin().powi(2),
            }
        })
        .product())
}

/// Outcome of comparing the tomograms of `a_i^+ a_j^+ |vac>` and `a_j^+ a_i^+ |vac>`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AntisymmetryReport {
    pub i: usize,
    pub j: usize,
    /// The exchanged state vectors differ by exactly a sign.
    pub states_antisymmetric: bool,
    /// Largest difference between the two tomograms over all angle tuples and projections.
    pub max_deviation: f64,
    pub angle_tuples: usize,
    /// `a_i^+ a_i^+ |vac>` and `a_j^+ a_j^+ |vac>` are exactly zero.
    pub double_occupation_vanishes: bool,
}

/// Every N-tuple of quadrature directions, mode 1 varying slowest, as Euler angles with `phi = 0`.
pub fn angle_tuples(n_modes: usize, quadrature: &SphereQuadrature) -> Vec<Vec<EulerAngles>> {
    let q = quadrature.len();
    (0..q.pow(n_modes as u32))
        .map(|idx| {
            (0..n_modes)
                .map(|k| {
                    let l = (idx / q.pow((n_modes - 1 - k) as u32)) % q;
                    quadrature.nodes()[l].to_euler()
                })
                .collect()
        })
        .collect()
}

/// Whether `a_i^+ a_i^+ |vac>` is exactly the zero vector.
pub fn double_occupation_vanishes(algebra: &FermionAlgebra, i: usize) -> Result<bool> {
    Ok(fock_state(algebra, &[i, i])?.is_zero())
}

pub fn antisymmetry_check(
    algebra: &FermionAlgebra,
    i: usize,
    j: usize,
    quadrature: &SphereQuadrature,
) -> Result<AntisymmetryReport> {
    if i == j {
        return Err(Error::RepeatedMode(i));
    }
    let ij = fock_state(algebra, &[i, j])?;
    let ji = fock_state(algebra, &[j, i])?;
    let states_antisymmetric = ij
        .amplitudes()
        .iter()
        .zip(ji.amplitudes())
        .all(|(a, b)| *a == -*b);
    let (rho_ij, rho_ji) = (ij.density(), ji.density());
    let tuples = angle_tuples(algebra.n_modes(), quadrature);
    let mut max_deviation: f64 = 0.0;
    for angles in &tuples {
        let a = tomogram(&rho_ij, angles)?;
        let b = tomogram(&rho_ji, angles)?;
        for (p, q) in a.probabilities.iter().zip(&b.probabilities) {
            max_deviation = max_deviation.max((p - q).abs());
        }
    }
    Ok(AntisymmetryReport {
        i,
        j,
        states_antisymmetric,
        max_deviation,
        angle_tuples: tuples.len(),
        double_occupation_vanishes: double_occupation_vanishes(algebra, i)?
            && double_occupation_vanishes(algebra, j)?,
    })
}
