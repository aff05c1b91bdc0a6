//! Named built-in operators: `vac`, `id`, `sz`, `a{j}`, `a{j}+`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fermi::{vacuum_tomogram, ClosedFormSymbol, FermiOperator, OmegaKind};
use crate::fermion::{build_algebra, check_modes, vacuum};
use crate::linalg::ComplexMatrix;
use crate::tomography::{ModePoint, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedOperator {
    /// Vacuum density matrix `|vac><vac|`.
    Vacuum,
    Identity,
    /// `sz x sz x ... x sz`, the fermion parity.
    Parity,
    Annihilator(usize),
    Creator(usize),
}

impl FromStr for NamedOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownOperator(s.to_string());
        match s {
            "vac" => Ok(NamedOperator::Vacuum),
            "id" => Ok(NamedOperator::Identity),
            "sz" => Ok(NamedOperator::Parity),
            _ => {
                let rest = s.strip_prefix('a').ok_or_else(unknown)?;
                let (digits, creation) = match rest.strip_suffix('+') {
                    Some(d) => (d, true),
                    None => (rest, false),
                };
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(unknown());
                }
                let j = digits.parse().map_err(|_| unknown())?;
                Ok(if creation {
                    NamedOperator::Creator(j)
                } else {
                    NamedOperator::Annihilator(j)
                })
            }
        }
    }
}

impl fmt::Display for NamedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedOperator::Vacuum => f.write_str("vac"),
            NamedOperator::Identity => f.write_str("id"),
            NamedOperator::Parity => f.write_str("sz"),
            NamedOperator::Annihilator(j) => write!(f, "a{j}"),
            NamedOperator::Creator(j) => write!(f, "a{j}+"),
        }
    }
}

impl NamedOperator {
    pub fn matrix(&self, modes: usize) -> Result<ComplexMatrix> {
        check_modes(modes)?;
        match *self {
            NamedOperator::Vacuum => Ok(vacuum(modes)?.density()),
            NamedOperator::Identity => Ok(ComplexMatrix::identity(1 << modes)),
            NamedOperator::Parity => {
                let mut parity = ComplexMatrix::identity(1 << modes);
                for b in 0..1 << modes {
                    if (b as u32).count_ones() % 2 == 1 {
                        parity.set(b, b, Complex64::new(-1.0, 0.0));
                    }
                }
                Ok(parity)
            }
            NamedOperator::Annihilator(j) => Ok(build_algebra(modes)?.annihilator(j)?.clone()),
            NamedOperator::Creator(j) => Ok(build_algebra(modes)?.creator(j)?.clone()),
        }
    }

    /// Closed-form symbol, independent of any matrix arithmetic.
    pub fn closed_form(&self, modes: usize) -> Result<Box<dyn Symbol>> {
        check_modes(modes)?;
        Ok(match *self {
            NamedOperator::Vacuum => Box::new(VacuumSymbol { modes }),
            NamedOperator::Identity => {
                Box::new(ClosedFormSymbol::new(vec![OmegaKind::One; modes])?)
            }
            NamedOperator::Parity => Box::new(ClosedFormSymbol::new(vec![OmegaKind::Z; modes])?),
            NamedOperator::Annihilator(j) => Box::new(ClosedFormSymbol::fermi(
                modes,
                j,
                FermiOperator::Annihilation,
            )?),
            NamedOperator::Creator(j) => {
                Box::new(ClosedFormSymbol::fermi(modes, j, FermiOperator::Creation)?)
            }
        })
    }
}

/// Symbol of the vacuum density matrix; coincides with its tomogram.
#[derive(Debug, Clone, Copy)]
pub struct VacuumSymbol {
    pub modes: usize,
}

impl Symbol for VacuumSymbol {
    fn modes(&self) -> usize {
        self.modes
    }

    fn eval(&self, point: &[ModePoint]) -> Result<Complex64> {
        if point.len() != self.modes {
            return Err(Error::ModeCountMismatch {
                expected: self.modes,
                got: point.len(),
            });
        }
        Ok(Complex64::new(vacuum_tomogram(point)?, 0.0))
    }
}
