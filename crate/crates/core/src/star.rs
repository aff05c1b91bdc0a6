//! The tomographic star-product.
//!
//! Symbols compose through the trilinear kernel
//! `K(y, z, x) = Tr(D(y) D(z) U(x))`, so that
//! `f_AB(x) = \int\int f_A(y) f_B(z) K(y, z, x) dy dz`.
//! The kernel is always evaluated from that trace; the closed forms below
//! exist to document it and are checked against it in tests.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{trace_of_product_unchecked, ComplexMatrix, ZERO};
use crate::rotation::{cross, dot};
use crate::tomography::{
    multi_dequantizer, multi_quantizer, GridSymbol, ModePoint, Symbol, TomoGrid,
};

/// Star products above this many modes must be enabled explicitly; the cost
/// is `(2Q)^(3N)` kernel traces per product.
pub const DEFAULT_MAX_STAR_MODES: usize = 3;

/// `Tr(D(y) D(z) U(x))` for N-mode points.
pub fn star_kernel(y: &[ModePoint], z: &[ModePoint], x: &[ModePoint]) -> Result<Complex64> {
    if y.len() != z.len() || y.len() != x.len() {
        return Err(Error::ModeCountMismatch {
            expected: y.len(),
            got: if z.len() != y.len() { z.len() } else { x.len() },
        });
    }
    let dz_ux = multi_quantizer(z)?.matmul(&multi_dequantizer(x)?)?;
    multi_quantizer(y)?.trace_of_product(&dz_ux)
}

/// Coefficients of the pair terms in the single-mode kernel
/// `1/4 + a m1 m2 (n1.n2) + b m1 m3 (n1.n3) + c m2 m3 (n2.n3) + 18i m1 m2 m3 n1.(n2 x n3)`,
/// with `(y, z, x) = (1, 2, 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelCoefficients {
    pub quantizer_pair: f64,
    pub first_with_dequantizer: f64,
    pub second_with_dequantizer: f64,
}

impl KernelCoefficients {
    /// What `Tr(D D U)` actually expands to: 9 on the two quantizers, 3 on each
    /// quantizer-dequantizer pair.
    pub const TRACE_DERIVED: KernelCoefficients = KernelCoefficients {
        quantizer_pair: 9.0,
        first_with_dequantizer: 3.0,
        second_with_dequantizer: 3.0,
    };

    /// The 3/9/9 placement. It is not the expansion of `Tr(D D U)`; kept so
    /// tests can show it fails the star-product oracle.
    pub const SWAPPED: KernelCoefficients = KernelCoefficients {
        quantizer_pair: 3.0,
        first_with_dequantizer: 9.0,
        second_with_dequantizer: 9.0,
    };
}

/// Closed-form single-mode kernel; the scalar triple product carries the imaginary part.
pub fn single_mode_kernel_closed_form(
    y: &ModePoint,
    z: &ModePoint,
    x: &ModePoint,
    coeffs: KernelCoefficients,
) -> Complex64 {
    let (m1, m2, m3) = (y.m.value(), z.m.value(), x.m.value());
    let (n1, n2, n3) = (
        y.dir.unit_vector(),
        z.dir.unit_vector(),
        x.dir.unit_vector(),
    );
    let re = 0.25
        + coeffs.quantizer_pair * m1 * m2 * dot(&n1, &n2)
        + coeffs.first_with_dequantizer * m1 * m3 * dot(&n1, &n3)
        + coeffs.second_with_dequantizer * m2 * m3 * dot(&n2, &n3);
    let im = 18.0 * m1 * m2 * m3 * dot(&n1, &cross(&n2, &n3));
    Complex64::new(re, im)
}

/// Star-product evaluator over a fixed quadrature grid.
#[derive(Debug, Clone)]
pub struct StarProduct<'g> {
    grid: &'g TomoGrid,
    max_modes: usize,
}

impl<'g> StarProduct<'g> {
    pub fn new(grid: &'g TomoGrid) -> Self {
        StarProduct {
            grid,
            max_modes: DEFAULT_MAX_STAR_MODES,
        }
    }

    /// Lifts the mode limit. Large products are very slow.
    pub fn allow_large(mut self) -> Self {
        self.max_modes = usize::MAX;
        self
    }

    /// `f_C(x) = sum_{y,z} w_y w_z f_A(y) f_B(z) K(y, z, x)` at every grid point `x`.
    ///
    /// Sums run in grid order for every `x`, so the result does not depend on
    /// how the outer loop is scheduled.
    pub fn compose(&self, fa: &dyn Symbol, fb: &dyn Symbol) -> Result<GridSymbol> {
        let grid = self.grid;
        let modes = grid.modes();
        if fa.modes() != modes || fb.modes() != modes {
            return Err(Error::ModeCountMismatch {
                expected: modes,
                got: if fa.modes() != modes {
                    fa.modes()
                } else {
                    fb.modes()
                },
            });
        }
        if modes > self.max_modes {
            return Err(Error::StarTooLarge {
                modes,
                max: self.max_modes,
            });
        }
        if grid.degree() < 2 {
            return Err(Error::InsufficientQuadrature {
                degree: grid.degree(),
                required: 2,
            });
        }
        let weighted = |f: &dyn Symbol| -> Result<Vec<Complex64>> {
            Ok(f.values_on(grid)?
                .into_iter()
                .zip(grid.weights())
                .map(|(v, &w)| v * w)
                .collect())
        };
        let wa = weighted(fa)?;
        let wb = weighted(fb)?;
        let quantizers: Vec<ComplexMatrix> = (0..grid.len())
            .into_par_iter()
            .map(|i| grid.quantizer(i))
            .collect();

        let values = (0..grid.len())
            .into_par_iter()
            .map(|xi| {
                let ux = grid.dequantizer(xi);
                let mut acc = ZERO;
                for (qy, &fy) in quantizers.iter().zip(&wa) {
                    if fy == ZERO {
                        continue;
                    }
                    // Tr(D_y D_z U_x) = Tr(D_z (U_x D_y))
                    let ux_qy = ux.matmul(qy).expect("same dimension");
                    let inner: Complex64 = quantizers
                        .iter()
                        .zip(&wb)
                        .map(|(qz, &fz)| fz * trace_of_product_unchecked(qz, &ux_qy))
                        .sum();
                    acc += fy * inner;
                }
                acc
            })
            .collect();
        GridSymbol::new(grid.clone(), values)
    }
}

/// Star product of two symbols on `grid` with the default mode limit.
pub fn star(fa: &dyn Symbol, fb: &dyn Symbol, grid: &TomoGrid) -> Result<GridSymbol> {
    StarProduct::new(grid).compose(fa, fb)
}
