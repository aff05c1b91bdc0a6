//! Matrix realization of N-mode fermionic creation and annihilation operators.
//!
//! The annihilator of mode `i` is the Kronecker string
//! `1 x ... x 1 x s+ x sz x ... x sz` with the raising matrix in tensor slot
//! `N - i + 1` (slots counted from 1 at the left). The first factor of a
//! Kronecker product is the most significant bit of the basis index, so slot
//! `k` of basis index `b` is bit `N - k` of `b`, and bit value 0 is the
//! unoccupied (spin-up) state.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    identity2, kron_all, sigma_minus, sigma_plus, sigma_z, ComplexMatrix, ONE, ZERO,
};

/// Largest supported mode count; a 2^10 x 2^10 matrix is 16 MiB.
pub const MAX_MODES: usize = 10;

pub fn check_modes(n_modes: usize) -> Result<()> {
    if n_modes == 0 || n_modes > MAX_MODES {
        return Err(Error::ModesOutOfRange {
            modes: n_modes,
            max: MAX_MODES,
        });
    }
    Ok(())
}

/// Annihilators and creators for `n_modes` fermionic modes on a `2^N`-dimensional space.
#[derive(Debug, Clone)]
pub struct FermionAlgebra {
    n_modes: usize,
    annihilators: Vec<ComplexMatrix>,
    creators: Vec<ComplexMatrix>,
}

/// Which of the three 2x2 generators sits in one tensor slot of a Jordan-Wigner string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlotFactor {
    Identity,
    Raise,
    Lower,
    Z,
}

impl SlotFactor {
    pub fn matrix(self) -> ComplexMatrix {
        match self {
            SlotFactor::Identity => identity2(),
            SlotFactor::Raise => sigma_plus(),
            SlotFactor::Lower => sigma_minus(),
            SlotFactor::Z => sigma_z(),
        }
    }
}

/// Slot layout of `a_mode` (or `a_mode^+` when `creation`), slot 1 first.
pub fn jordan_wigner_string(
    n_modes: usize,
    mode: usize,
    creation: bool,
) -> Result<Vec<SlotFactor>> {
    check_modes(n_modes)?;
    check_mode_index(mode, n_modes)?;
    let pivot = n_modes - mode + 1;
    Ok((1..=n_modes)
        .map(|slot| match slot.cmp(&pivot) {
            std::cmp::Ordering::Less => SlotFactor::Identity,
            std::cmp::Ordering::Equal if creation => SlotFactor::Lower,
            std::cmp::Ordering::Equal => SlotFactor::Raise,
            std::cmp::Ordering::Greater => SlotFactor::Z,
        })
        .collect())
}

fn check_mode_index(mode: usize, n_modes: usize) -> Result<()> {
    if mode == 0 || mode > n_modes {
        return Err(Error::ModeIndexOutOfRange {
            index: mode,
            modes: n_modes,
        });
    }
    Ok(())
}

fn string_matrix(slots: &[SlotFactor]) -> ComplexMatrix {
    let factors: Vec<_> = slots.iter().map(|s| s.matrix()).collect();
    kron_all(&factors).expect("at least one mode")
}

pub fn build_algebra(n_modes: usize) -> Result<FermionAlgebra> {
    FermionAlgebra::new(n_modes)
}

impl FermionAlgebra {
    pub fn new(n_modes: usize) -> Result<Self> {
        check_modes(n_modes)?;
        let build = |creation: bool| -> Result<Vec<ComplexMatrix>> {
            (1..=n_modes)
                .map(|j| Ok(string_matrix(&jordan_wigner_string(n_modes, j, creation)?)))
                .collect()
        };
        Ok(FermionAlgebra {
            n_modes,
            annihilators: build(false)?,
            creators: build(true)?,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        1 << self.n_modes
    }

    /// `a_mode`, 1-based.
    pub fn annihilator(&self, mode: usize) -> Result<&ComplexMatrix> {
        check_mode_index(mode, self.n_modes)?;
        Ok(&self.annihilators[mode - 1])
    }

    /// `a_mode^+`, 1-based.
    pub fn creator(&self, mode: usize) -> Result<&ComplexMatrix> {
        check_mode_index(mode, self.n_modes)?;
        Ok(&self.creators[mode - 1])
    }

    pub fn annihilators(&self) -> &[ComplexMatrix] {
        &self.annihilators
    }

    pub fn creators(&self) -> &[ComplexMatrix] {
        &self.creators
    }

    /// `a_mode^+ a_mode`
    pub fn number_operator(&self, mode: usize) -> Result<ComplexMatrix> {
        self.creator(mode)?.matmul(self.annihilator(mode)?)
    }

    pub fn vacuum(&self) -> StateVector {
        vacuum_unchecked(self.n_modes)
    }

    /// Frobenius-norm residuals of all three anticommutation families, per mode pair.
    pub fn anticommutation_report(&self) -> AnticommutationReport {
        let n = self.n_modes;
        let zero = ComplexMatrix::zeros(self.dim(), self.dim());
        let id = ComplexMatrix::identity(self.dim());
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                let (ai, aj) = (&self.annihilators[i - 1], &self.annihilators[j - 1]);
                let (ci, cj) = (&self.creators[i - 1], &self.creators[j - 1]);
                let residual = |m: ComplexMatrix, target: &ComplexMatrix| {
                    m.sub(target).expect("same dimension").frobenius_norm()
                };
                let expected_mixed = if i == j { &id } else { &zero };
                entries.push(AnticommutatorResidual {
                    i,
                    j,
                    annihilator_pair: residual(anticommutator_unchecked(ai, aj), &zero),
                    creator_pair: residual(anticommutator_unchecked(ci, cj), &zero),
                    mixed: residual(anticommutator_unchecked(ai, cj), expected_mixed),
                });
            }
        }
        AnticommutationReport { modes: n, entries }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnticommutatorResidual {
    pub i: usize,
    pub j: usize,
    /// `||{a_i, a_j}||`
    pub annihilator_pair: f64,
    /// `||{a_i^+, a_j^+}||`
    pub creator_pair: f64,
    /// `||{a_i, a_j^+} - delta_ij||`
    pub mixed: f64,
}

impl AnticommutatorResidual {
    pub fn max(&self) -> f64 {
        self.annihilator_pair.max(self.creator_pair).max(self.mixed)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnticommutationReport {
    pub modes: usize,
    pub entries: Vec<AnticommutatorResidual>,
}

impl AnticommutationReport {
    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.max()).fold(0.0, f64::max)
    }

    /// Plain-text table, one row per mode pair.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:>3} {:>3} {:>14} {:>14} {:>14}\n",
            "i", "j", "{a_i,a_j}", "{a_i+,a_j+}", "{a_i,a_j+}-d"
        );
        for e in &self.entries {
            out.push_str(&format!(
                "{:>3} {:>3} {:>14.3e} {:>14.3e} {:>14.3e}\n",
                e.i, e.j, e.annihilator_pair, e.creator_pair, e.mixed
            ));
        }
        out
    }
}

/// `AB + BA`
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op: "anticommutator",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(anticommutator_unchecked(a, b))
}

fn anticommutator_unchecked(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let ab = a.matmul(b).expect("square, same size");
    let ba = b.matmul(a).expect("square, same size");
    ab.add(&ba).expect("same size")
}

/// Amplitudes of a state on the `2^N`-dimensional Fock space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateVector(Vec<Complex64>);

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        StateVector(amplitudes)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// True when every amplitude is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&z| z == ZERO)
    }

    pub fn apply(&self, op: &ComplexMatrix) -> Result<StateVector> {
        Ok(StateVector(op.matvec(&self.0)?))
    }

    /// `|psi><psi|`
    pub fn density(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.0, &self.0)
    }

    pub fn scaled(&self, factor: Complex64) -> StateVector {
        StateVector(self.0.iter().map(|&z| z * factor).collect())
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `(1,0) x (1,0) x ... x (1,0)`
pub fn vacuum(n_modes: usize) -> Result<StateVector> {
    check_modes(n_modes)?;
    Ok(vacuum_unchecked(n_modes))
}

fn vacuum_unchecked(n_modes: usize) -> StateVector {
    let mut amps = vec![ZERO; 1 << n_modes];
    amps[0] = ONE;
    StateVector(amps)
}

/// `a_{k1}^+ a_{k2}^+ ... a_{kr}^+ |vac>` for `ordered_modes = [k1, ..., kr]`.
///
/// The raw operator product is returned without renormalization: distinct
/// modes give a unit vector, a repeated mode gives the zero vector.
pub fn fock_state(algebra: &FermionAlgebra, ordered_modes: &[usize]) -> Result<StateVector> {
    for &k in ordered_modes {
        check_mode_index(k, algebra.n_modes)?;
    }
    ordered_modes
        .iter()
        .rev()
        .try_fold(algebra.vacuum(), |state, &k| {
            state.apply(&algebra.creators[k - 1])
        })
}
