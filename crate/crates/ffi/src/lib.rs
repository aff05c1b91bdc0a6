//! C ABI for `fermitomo`.
//!
//! Objects cross the boundary as opaque handles created by `ft_*_new` style
//! functions and released with the matching `ft_*_free`. Every fallible call
//! returns an [`FtStatus`]; on failure a description is available from
//! [`ft_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use fermitomo::fermi::{fermi_operator_symbol, FermiOperator};
use fermitomo::fermion::{vacuum, FermionAlgebra};
use fermitomo::linalg::ComplexMatrix;
use fermitomo::rotation::{Direction, EulerAngles};
use fermitomo::star::{star_kernel, StarProduct};
use fermitomo::tomography::{
    reconstruct, symbol, tomogram, GridSymbol, ModePoint, SpinProjection, TomoGrid,
};
use fermitomo::verify::{self, Suite};
use fermitomo::{Error, RunConfig};
use num_complex::Complex64;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    OutOfRange = 4,
    InvalidDensity = 5,
    TooLarge = 6,
    BufferTooSmall = 7,
    InvariantFailed = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtComplex {
    pub re: f64,
    pub im: f64,
}

/// Euler angles in radians; `theta` must lie in `[0, pi]`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtEuler {
    pub phi: f64,
    pub theta: f64,
    pub psi: f64,
}

/// One mode of a tomographic point: spin projection `m` (+0.5 or -0.5) and a direction.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtModePoint {
    pub m: f64,
    pub theta: f64,
    pub psi: f64,
}

/// Dense complex matrix.
pub struct FtMatrix(ComplexMatrix);

/// Jordan-Wigner annihilation and creation matrices for a fixed number of modes.
pub struct FtAlgebra(FermionAlgebra);

/// Product quadrature grid over every mode.
pub struct FtGrid(TomoGrid);

/// Symbol values sampled on a grid.
pub struct FtSymbol(GridSymbol);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

struct Failure(FtStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::DimensionMismatch { .. }
            | Error::NotSquare { .. }
            | Error::InvalidLength { .. }
            | Error::ModeCountMismatch { .. } => FtStatus::DimensionMismatch,
            Error::ThetaOutOfRange(_)
            | Error::ModesOutOfRange { .. }
            | Error::ModeIndexOutOfRange { .. }
            | Error::InsufficientQuadrature { .. } => FtStatus::OutOfRange,
            Error::InvalidDensity(_) => FtStatus::InvalidDensity,
            Error::StarTooLarge { .. } => FtStatus::TooLarge,
            _ => FtStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

type FfiResult = Result<(), Failure>;

fn fail(status: FtStatus, msg: impl Into<String>) -> Failure {
    Failure(status, msg.into())
}

fn guard(body: impl FnOnce() -> FfiResult) -> FtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FtStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(&format!("internal panic: {msg}"));
            FtStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| fail(FtStatus::NullPointer, format!("{name} is null")))
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| fail(FtStatus::NullPointer, format!("{name} is null")))
}

unsafe fn input_slice<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(FtStatus::NullPointer, format!("{name} is null")));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn output_slice<'a, T>(
    p: *mut T,
    len: usize,
    needed: usize,
    name: &str,
) -> Result<&'a mut [T], Failure> {
    if len < needed {
        return Err(fail(
            FtStatus::BufferTooSmall,
            format!("{name} holds {len} entries, {needed} needed"),
        ));
    }
    if needed == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(fail(FtStatus::NullPointer, format!("{name} is null")));
    }
    Ok(slice::from_raw_parts_mut(p, needed))
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

unsafe fn release<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

impl From<Complex64> for FtComplex {
    fn from(z: Complex64) -> Self {
        FtComplex { re: z.re, im: z.im }
    }
}

impl From<FtComplex> for Complex64 {
    fn from(z: FtComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

fn mode_point(p: &FtModePoint) -> Result<ModePoint, Failure> {
    let m = if p.m == 0.5 {
        SpinProjection::Up
    } else if p.m == -0.5 {
        SpinProjection::Down
    } else {
        return Err(fail(
            FtStatus::InvalidArgument,
            format!("spin projection must be +0.5 or -0.5, got {}", p.m),
        ));
    };
    Ok(ModePoint::new(m, Direction::new(p.theta, p.psi)?))
}

unsafe fn mode_points(
    p: *const FtModePoint,
    n: usize,
    name: &str,
) -> Result<Vec<ModePoint>, Failure> {
    input_slice(p, n, name)?.iter().map(mode_point).collect()
}

fn to_ft_point(p: &ModePoint) -> FtModePoint {
    FtModePoint {
        m: p.m.value(),
        theta: p.dir.theta(),
        psi: p.dir.psi(),
    }
}

/// Static description of a status code. Never null; do not free.
#[no_mangle]
pub extern "C" fn ft_status_message(status: FtStatus) -> *const c_char {
    let text: &'static CStr = match status {
        FtStatus::Ok => c"ok",
        FtStatus::NullPointer => c"null pointer argument",
        FtStatus::InvalidArgument => c"invalid argument",
        FtStatus::DimensionMismatch => c"dimension mismatch",
        FtStatus::OutOfRange => c"value out of range",
        FtStatus::InvalidDensity => c"not a density matrix",
        FtStatus::TooLarge => c"problem size above the enabled limit",
        FtStatus::BufferTooSmall => c"output buffer too small",
        FtStatus::InvariantFailed => c"invariant check failed",
        FtStatus::Panic => c"internal panic",
    };
    text.as_ptr()
}

/// Message of the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next `ft_*` call on the same thread.
#[no_mangle]
pub extern "C" fn ft_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Copies `rows * cols` row-major entries into a new matrix.
///
/// # Safety
/// `data` must point to `rows * cols` readable values; `out_matrix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_matrix_new(
    rows: usize,
    cols: usize,
    data: *const FtComplex,
    out_matrix: *mut *mut FtMatrix,
) -> FtStatus {
    guard(|| {
        let dst = out(out_matrix, "out_matrix")?;
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| fail(FtStatus::OutOfRange, "matrix size overflows"))?;
        let values = input_slice(data, len, "data")?
            .iter()
            .map(|&z| z.into())
            .collect();
        *dst = boxed(FtMatrix(ComplexMatrix::new(rows, cols, values)?));
        Ok(())
    })
}

/// # Safety
/// `out_matrix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_matrix_identity(
    dim: usize,
    out_matrix: *mut *mut FtMatrix,
) -> FtStatus {
    guard(|| {
        let dst = out(out_matrix, "out_matrix")?;
        *dst = boxed(FtMatrix(ComplexMatrix::identity(dim)));
        Ok(())
    })
}

/// # Safety
/// `matrix` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ft_matrix_free(matrix: *mut FtMatrix) {
    release(matrix)
}

/// # Safety
/// `matrix` must be a live handle; `rows` and `cols` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_matrix_shape(
    matrix: *const FtMatrix,
    rows: *mut usize,
    cols: *mut usize,
) -> FtStatus {
    guard(|| {
        let m = &deref(matrix, "matrix")?.0;
        *out(rows, "rows")? = m.rows();
        *out(cols, "cols")? = m.cols();
        Ok(())
    })
}

/// Copies the row-major entries into `buffer`, which must hold `rows * cols` values.
///
/// # Safety
/// `buffer` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn ft_matrix_data(
    matrix: *const FtMatrix,
    buffer: *mut FtComplex,
    len: usize,
) -> FtStatus {
    guard(|| {
        let m = &deref(matrix, "matrix")?.0;
        let dst = output_slice(buffer, len, m.as_slice().len(), "buffer")?;
        for (d, &z) in dst.iter_mut().zip(m.as_slice()) {
            *d = z.into();
        }
        Ok(())
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out_matrix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_matrix_kron(
    a: *const FtMatrix,
    b: *const FtMatrix,
    out_matrix: *mut *mut FtMatrix,
) -> FtStatus {
    guard(|| {
        let product = deref(a, "a")?.0.kron(&deref(b, "b")?.0);
        *out(out_matrix, "out_matrix")? = boxed(FtMatrix(product));
        Ok(())
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out_matrix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_matrix_matmul(
    a: *const FtMatrix,
    b: *const FtMatrix,
    out_matrix: *mut *mut FtMatrix,
) -> FtStatus {
    guard(|| {
        let product = deref(a, "a")?.0.matmul(&deref(b, "b")?.0)?;
        *out(out_matrix, "out_matrix")? = boxed(FtMatrix(product));
        Ok(())
    })
}

/// Conjugate transpose.
///
/// # Safety
/// `matrix` must be a live handle; `out_matrix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_matrix_dagger(
    matrix: *const FtMatrix,
    out_matrix: *mut *mut FtMatrix,
) -> FtStatus {
    guard(|| {
        let d = deref(matrix, "matrix")?.0.dagger();
        *out(out_matrix, "out_matrix")? = boxed(FtMatrix(d));
        Ok(())
    })
}

/// # Safety
/// `matrix` must be a live handle; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_matrix_trace(
    matrix: *const FtMatrix,
    out_value: *mut FtComplex,
) -> FtStatus {
    guard(|| {
        let t = deref(matrix, "matrix")?.0.trace()?;
        *out(out_value, "out_value")? = t.into();
        Ok(())
    })
}

/// # Safety
/// `out_algebra` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_algebra_new(
    modes: usize,
    out_algebra: *mut *mut FtAlgebra,
) -> FtStatus {
    guard(|| {
        let dst = out(out_algebra, "out_algebra")?;
        *dst = boxed(FtAlgebra(FermionAlgebra::new(modes)?));
        Ok(())
    })
}

/// # Safety
/// `algebra` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ft_algebra_free(algebra: *mut FtAlgebra) {
    release(algebra)
}

/// Copy of the annihilator `a_j`, `1 <= j <= modes`.
///
/// # Safety
/// `algebra` must be a live handle; `out_matrix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_algebra_annihilator(
    algebra: *const FtAlgebra,
    j: usize,
    out_matrix: *mut *mut FtMatrix,
) -> FtStatus {
    guard(|| {
        let a = deref(algebra, "algebra")?.0.annihilator(j)?.clone();
        *out(out_matrix, "out_matrix")? = boxed(FtMatrix(a));
        Ok(())
    })
}

/// Copy of the creator `a_j^+`, `1 <= j <= modes`.
///
/// # Safety
/// `algebra` must be a live handle; `out_matrix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_algebra_creator(
    algebra: *const FtAlgebra,
    j: usize,
    out_matrix: *mut *mut FtMatrix,
) -> FtStatus {
    guard(|| {
        let a = deref(algebra, "algebra")?.0.creator(j)?.clone();
        *out(out_matrix, "out_matrix")? = boxed(FtMatrix(a));
        Ok(())
    })
}

/// Largest Frobenius-norm residual of the anticommutation relations.
///
/// # Safety
/// `algebra` must be a live handle; `out_residual` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_algebra_max_residual(
    algebra: *const FtAlgebra,
    out_residual: *mut f64,
) -> FtStatus {
    guard(|| {
        let r = deref(algebra, "algebra")?
            .0
            .anticommutation_report()
            .max_residual();
        *out(out_residual, "out_residual")? = r;
        Ok(())
    })
}

/// Density matrix of the vacuum state.
///
/// # Safety
/// `out_matrix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_vacuum_density(
    modes: usize,
    out_matrix: *mut *mut FtMatrix,
) -> FtStatus {
    guard(|| {
        let dst = out(out_matrix, "out_matrix")?;
        *dst = boxed(FtMatrix(vacuum(modes)?.density()));
        Ok(())
    })
}

/// Writes the `2^modes` probabilities of `rho` for one angle per mode.
/// Entry `b` belongs to the projection tuple whose bit `k` (mode 1 most
/// significant) is 1 when mode `k` has `m = -1/2`.
///
/// # Safety
/// `angles` must hold `n_angles` values and `probabilities` `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn ft_tomogram(
    rho: *const FtMatrix,
    angles: *const FtEuler,
    n_angles: usize,
    probabilities: *mut f64,
    len: usize,
) -> FtStatus {
    guard(|| {
        let rho = &deref(rho, "rho")?.0;
        let angles = input_slice(angles, n_angles, "angles")?
            .iter()
            .map(|a| EulerAngles::new(a.phi, a.theta, a.psi))
            .collect::<Result<Vec<_>, _>>()?;
        let t = tomogram(rho, &angles)?;
        let dst = output_slice(probabilities, len, t.probabilities.len(), "probabilities")?;
        dst.copy_from_slice(&t.probabilities);
        Ok(())
    })
}

/// Symbol `Tr(A U(x))` of `op` at one point.
///
/// # Safety
/// `point` must hold `n_modes` values; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_symbol(
    op: *const FtMatrix,
    point: *const FtModePoint,
    n_modes: usize,
    out_value: *mut FtComplex,
) -> FtStatus {
    guard(|| {
        let op = &deref(op, "op")?.0;
        let p = mode_points(point, n_modes, "point")?;
        *out(out_value, "out_value")? = symbol(op, &p)?.into();
        Ok(())
    })
}

/// Closed-form symbol of `a_j` (or `a_j^+` when `creation` is true) at one point.
///
/// # Safety
/// `point` must hold `n_modes` values; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_fermi_symbol(
    n_modes: usize,
    j: usize,
    creation: bool,
    point: *const FtModePoint,
    out_value: *mut FtComplex,
) -> FtStatus {
    guard(|| {
        let p = mode_points(point, n_modes, "point")?;
        let op = if creation {
            FermiOperator::Creation
        } else {
            FermiOperator::Annihilation
        };
        *out(out_value, "out_value")? = fermi_operator_symbol(n_modes, j, op, &p)?.into();
        Ok(())
    })
}

/// Star-product kernel `Tr(D(y) D(z) U(x))`.
///
/// # Safety
/// `y`, `z` and `x` must each hold `n_modes` values; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_star_kernel(
    y: *const FtModePoint,
    z: *const FtModePoint,
    x: *const FtModePoint,
    n_modes: usize,
    out_value: *mut FtComplex,
) -> FtStatus {
    guard(|| {
        let (y, z, x) = (
            mode_points(y, n_modes, "y")?,
            mode_points(z, n_modes, "z")?,
            mode_points(x, n_modes, "x")?,
        );
        *out(out_value, "out_value")? = star_kernel(&y, &z, &x)?.into();
        Ok(())
    })
}

/// Grid integrating spherical polynomials up to `degree` exactly in each mode.
///
/// # Safety
/// `out_grid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_grid_new(
    modes: usize,
    degree: usize,
    out_grid: *mut *mut FtGrid,
) -> FtStatus {
    guard(|| {
        let dst = out(out_grid, "out_grid")?;
        *dst = boxed(FtGrid(TomoGrid::with_degree(modes, degree)?));
        Ok(())
    })
}

/// # Safety
/// `grid` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ft_grid_free(grid: *mut FtGrid) {
    release(grid)
}

/// # Safety
/// `grid` must be a live handle; `modes` and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_grid_size(
    grid: *const FtGrid,
    modes: *mut usize,
    len: *mut usize,
) -> FtStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.0;
        *out(modes, "modes")? = g.modes();
        *out(len, "len")? = g.len();
        Ok(())
    })
}

/// Point `index` of the grid (one entry per mode) and its weight.
///
/// # Safety
/// `point` must hold `len` writable values; `weight` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_grid_point(
    grid: *const FtGrid,
    index: usize,
    point: *mut FtModePoint,
    len: usize,
    weight: *mut f64,
) -> FtStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.0;
        if index >= g.len() {
            return Err(fail(
                FtStatus::OutOfRange,
                format!("grid index {index} outside 0..{}", g.len()),
            ));
        }
        let dst = output_slice(point, len, g.modes(), "point")?;
        for (d, p) in dst.iter_mut().zip(g.point(index)) {
            *d = to_ft_point(p);
        }
        *out(weight, "weight")? = g.weight(index);
        Ok(())
    })
}

/// Samples the symbol of `op` at every grid point.
///
/// # Safety
/// `op` and `grid` must be live handles; `out_symbol` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_symbol_sample(
    op: *const FtMatrix,
    grid: *const FtGrid,
    out_symbol: *mut *mut FtSymbol,
) -> FtStatus {
    guard(|| {
        let op = fermitomo::OperatorSymbol::new(deref(op, "op")?.0.clone())?;
        let sampled = GridSymbol::sample(&op, &deref(grid, "grid")?.0)?;
        *out(out_symbol, "out_symbol")? = boxed(FtSymbol(sampled));
        Ok(())
    })
}

/// Symbol given by its values in grid order.
///
/// # Safety
/// `values` must hold `len` values; `out_symbol` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_symbol_from_values(
    grid: *const FtGrid,
    values: *const FtComplex,
    len: usize,
    out_symbol: *mut *mut FtSymbol,
) -> FtStatus {
    guard(|| {
        let g = deref(grid, "grid")?.0.clone();
        let v = input_slice(values, len, "values")?
            .iter()
            .map(|&z| z.into())
            .collect();
        *out(out_symbol, "out_symbol")? = boxed(FtSymbol(GridSymbol::new(g, v)?));
        Ok(())
    })
}

/// # Safety
/// `symbol` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ft_symbol_free(symbol: *mut FtSymbol) {
    release(symbol)
}

/// Copies the symbol values, in grid order, into `buffer`.
///
/// # Safety
/// `buffer` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn ft_symbol_values(
    symbol: *const FtSymbol,
    buffer: *mut FtComplex,
    len: usize,
) -> FtStatus {
    guard(|| {
        let s = &deref(symbol, "symbol")?.0;
        let dst = output_slice(buffer, len, s.values().len(), "buffer")?;
        for (d, &z) in dst.iter_mut().zip(s.values()) {
            *d = z.into();
        }
        Ok(())
    })
}

/// Operator whose symbol is `symbol`.
///
/// # Safety
/// `symbol` must be a live handle; `out_matrix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_reconstruct(
    symbol: *const FtSymbol,
    out_matrix: *mut *mut FtMatrix,
) -> FtStatus {
    guard(|| {
        let s = &deref(symbol, "symbol")?.0;
        let m = reconstruct(s, s.grid())?;
        *out(out_matrix, "out_matrix")? = boxed(FtMatrix(m));
        Ok(())
    })
}

/// Star product `left * right` on the grid of `left`. Set `allow_large` to
/// lift the default mode limit.
///
/// # Safety
/// `left` and `right` must be live handles; `out_symbol` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_star(
    left: *const FtSymbol,
    right: *const FtSymbol,
    allow_large: bool,
    out_symbol: *mut *mut FtSymbol,
) -> FtStatus {
    guard(|| {
        let (l, r) = (&deref(left, "left")?.0, &deref(right, "right")?.0);
        if l.grid().modes() != r.grid().modes() || l.grid().degree() != r.grid().degree() {
            return Err(fail(
                FtStatus::DimensionMismatch,
                "symbols live on different grids",
            ));
        }
        let mut evaluator = StarProduct::new(l.grid());
        if allow_large {
            evaluator = evaluator.allow_large();
        }
        let product = evaluator.compose(l, r)?;
        *out(out_symbol, "out_symbol")? = boxed(FtSymbol(product));
        Ok(())
    })
}

/// Runs every verification suite and returns the JSON report in `out_json`
/// (free it with [`ft_string_free`]). Returns `InvariantFailed` when a suite
/// fails; the report is still written.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_verify_json(
    modes: usize,
    degree: usize,
    tolerance: f64,
    seed: u64,
    out_json: *mut *mut c_char,
) -> FtStatus {
    let mut passed = true;
    let status = guard(|| {
        let dst = out(out_json, "out_json")?;
        let config = RunConfig {
            modes,
            quadrature_degree: degree,
            tolerance,
            seed,
            ..RunConfig::default()
        };
        config.validate()?;
        let report = verify::run(&config, &Suite::ALL)?;
        passed = report.passed;
        let text = serde_json::to_string_pretty(&report)
            .map_err(|e| fail(FtStatus::Panic, e.to_string()))?;
        *dst = CString::new(text).expect("json has no nul").into_raw();
        Ok(())
    });
    if status == FtStatus::Ok && !passed {
        set_last_error("one or more verification suites failed");
        return FtStatus::InvariantFailed;
    }
    status
}

/// # Safety
/// `s` must be null or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ft_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
