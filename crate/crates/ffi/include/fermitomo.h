#ifndef FERMITOMO_H
#define FERMITOMO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum FtStatus {
  FT_STATUS_OK = 0,
  FT_STATUS_NULL_POINTER = 1,
  FT_STATUS_INVALID_ARGUMENT = 2,
  FT_STATUS_DIMENSION_MISMATCH = 3,
  FT_STATUS_OUT_OF_RANGE = 4,
  FT_STATUS_INVALID_DENSITY = 5,
  FT_STATUS_TOO_LARGE = 6,
  FT_STATUS_BUFFER_TOO_SMALL = 7,
  FT_STATUS_INVARIANT_FAILED = 8,
  FT_STATUS_PANIC = 9,
} FtStatus;

// Jordan-Wigner annihilation and creation matrices for a fixed number of modes.
typedef struct FtAlgebra FtAlgebra;

// Product quadrature grid over every mode.
typedef struct FtGrid FtGrid;

// Dense complex matrix.
typedef struct FtMatrix FtMatrix;

// Symbol values sampled on a grid.
typedef struct FtSymbol FtSymbol;

typedef struct FtComplex {
  double re;
  double im;
} FtComplex;

// Euler angles in radians; `theta` must lie in `[0, pi]`.
typedef struct FtEuler {
  double phi;
  double theta;
  double psi;
} FtEuler;

// One mode of a tomographic point: spin projection `m` (+0.5 or -0.5) and a direction.
typedef struct FtModePoint {
  double m;
  double theta;
  double psi;
} FtModePoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never null; do not free.
const char *ft_status_message(enum FtStatus status);

// Message of the last failed call on this thread, or null after a success.
// The pointer stays valid until the next `ft_*` call on the same thread.
const char *ft_last_error_message(void);

// Copies `rows * cols` row-major entries into a new matrix.
//
// # Safety
// `data` must point to `rows * cols` readable values; `out_matrix` must be writable.
enum FtStatus ft_matrix_new(size_t rows,
                            size_t cols,
                            const struct FtComplex *data,
                            struct FtMatrix **out_matrix);

// # Safety
// `out_matrix` must be writable.
enum FtStatus ft_matrix_identity(size_t dim, struct FtMatrix **out_matrix);

// # Safety
// `matrix` must be null or a handle from this library that has not been freed.
void ft_matrix_free(struct FtMatrix *matrix);

// # Safety
// `matrix` must be a live handle; `rows` and `cols` must be writable.
enum FtStatus ft_matrix_shape(const struct FtMatrix *matrix, size_t *rows, size_t *cols);

// Copies the row-major entries into `buffer`, which must hold `rows * cols` values.
//
// # Safety
// `buffer` must point to `len` writable values.
enum FtStatus ft_matrix_data(const struct FtMatrix *matrix, struct FtComplex *buffer, size_t len);

// # Safety
// `a` and `b` must be live handles; `out_matrix` must be writable.
enum FtStatus ft_matrix_kron(const struct FtMatrix *a,
                             const struct FtMatrix *b,
                             struct FtMatrix **out_matrix);

// # Safety
// `a` and `b` must be live handles; `out_matrix` must be writable.
enum FtStatus ft_matrix_matmul(const struct FtMatrix *a,
                               const struct FtMatrix *b,
                               struct FtMatrix **out_matrix);

// Conjugate transpose.
//
// # Safety
// `matrix` must be a live handle; `out_matrix` must be writable.
enum FtStatus ft_matrix_dagger(const struct FtMatrix *matrix, struct FtMatrix **out_matrix);

// # Safety
// `matrix` must be a live handle; `out_value` must be writable.
enum FtStatus ft_matrix_trace(const struct FtMatrix *matrix, struct FtComplex *out_value);

// # Safety
// `out_algebra` must be writable.
enum FtStatus ft_algebra_new(size_t modes, struct FtAlgebra **out_algebra);

// # Safety
// `algebra` must be null or a handle from this library that has not been freed.
void ft_algebra_free(struct FtAlgebra *algebra);

// Copy of the annihilator `a_j`, `1 <= j <= modes`.
//
// # Safety
// `algebra` must be a live handle; `out_matrix` must be writable.
enum FtStatus ft_algebra_annihilator(const struct FtAlgebra *algebra,
                                     size_t j,
                                     struct FtMatrix **out_matrix);

// Copy of the creator `a_j^+`, `1 <= j <= modes`.
//
// # Safety
// `algebra` must be a live handle; `out_matrix` must be writable.
enum FtStatus ft_algebra_creator(const struct FtAlgebra *algebra,
                                 size_t j,
                                 struct FtMatrix **out_matrix);

// Largest Frobenius-norm residual of the anticommutation relations.
//
// # Safety
// `algebra` must be a live handle; `out_residual` must be writable.
enum FtStatus ft_algebra_max_residual(const struct FtAlgebra *algebra, double *out_residual);

// Density matrix of the vacuum state.
//
// # Safety
// `out_matrix` must be writable.
enum FtStatus ft_vacuum_density(size_t modes, struct FtMatrix **out_matrix);

// Writes the `2^modes` probabilities of `rho` for one angle per mode.
// Entry `b` belongs to the projection tuple whose bit `k` (mode 1 most
// significant) is 1 when mode `k` has `m = -1/2`.
//
// # Safety
// `angles` must hold `n_angles` values and `probabilities` `len` writable values.
enum FtStatus ft_tomogram(const struct FtMatrix *rho,
                          const struct FtEuler *angles,
                          size_t n_angles,
                          double *probabilities,
                          size_t len);

// Symbol `Tr(A U(x))` of `op` at one point.
//
// # Safety
// `point` must hold `n_modes` values; `out_value` must be writable.
enum FtStatus ft_symbol(const struct FtMatrix *op,
                        const struct FtModePoint *point,
                        size_t n_modes,
                        struct FtComplex *out_value);

// Closed-form symbol of `a_j` (or `a_j^+` when `creation` is true) at one point.
//
// # Safety
// `point` must hold `n_modes` values; `out_value` must be writable.
enum FtStatus ft_fermi_symbol(size_t n_modes,
                              size_t j,
                              bool creation,
                              const struct FtModePoint *point,
                              struct FtComplex *out_value);

// Star-product kernel `Tr(D(y) D(z) U(x))`.
//
// # Safety
// `y`, `z` and `x` must each hold `n_modes` values; `out_value` must be writable.
enum FtStatus ft_star_kernel(const struct FtModePoint *y,
                             const struct FtModePoint *z,
                             const struct FtModePoint *x,
                             size_t n_modes,
                             struct FtComplex *out_value);

// Grid integrating spherical polynomials up to `degree` exactly in each mode.
//
// # Safety
// `out_grid` must be writable.
enum FtStatus ft_grid_new(size_t modes, size_t degree, struct FtGrid **out_grid);

// # Safety
// `grid` must be null or a handle from this library that has not been freed.
void ft_grid_free(struct FtGrid *grid);

// # Safety
// `grid` must be a live handle; `modes` and `len` must be writable.
enum FtStatus ft_grid_size(const struct FtGrid *grid, size_t *modes, size_t *len);

// Point `index` of the grid (one entry per mode) and its weight.
//
// # Safety
// `point` must hold `len` writable values; `weight` must be writable.
enum FtStatus ft_grid_point(const struct FtGrid *grid,
                            size_t index,
                            struct FtModePoint *point,
                            size_t len,
                            double *weight);

// Samples the symbol of `op` at every grid point.
//
// # Safety
// `op` and `grid` must be live handles; `out_symbol` must be writable.
enum FtStatus ft_symbol_sample(const struct FtMatrix *op,
                               const struct FtGrid *grid,
                               struct FtSymbol **out_symbol);

// Symbol given by its values in grid order.
//
// # Safety
// `values` must hold `len` values; `out_symbol` must be writable.
enum FtStatus ft_symbol_from_values(const struct FtGrid *grid,
                                    const struct FtComplex *values,
                                    size_t len,
                                    struct FtSymbol **out_symbol);

// # Safety
// `symbol` must be null or a handle from this library that has not been freed.
void ft_symbol_free(struct FtSymbol *symbol);

// Copies the symbol values, in grid order, into `buffer`.
//
// # Safety
// `buffer` must point to `len` writable values.
enum FtStatus ft_symbol_values(const struct FtSymbol *symbol, struct FtComplex *buffer, size_t len);

// Operator whose symbol is `symbol`.
//
// # Safety
// `symbol` must be a live handle; `out_matrix` must be writable.
enum FtStatus ft_reconstruct(const struct FtSymbol *symbol, struct FtMatrix **out_matrix);

// Star product `left * right` on the grid of `left`. Set `allow_large` to
// lift the default mode limit.
//
// # Safety
// `left` and `right` must be live handles; `out_symbol` must be writable.
enum FtStatus ft_star(const struct FtSymbol *left,
                      const struct FtSymbol *right,
                      bool allow_large,
                      struct FtSymbol **out_symbol);

// Runs every verification suite and returns the JSON report in `out_json`
// (free it with [`ft_string_free`]). Returns `InvariantFailed` when a suite
// fails; the report is still written.
//
// # Safety
// `out_json` must be writable.
enum FtStatus ft_verify_json(size_t modes,
                             size_t degree,
                             double tolerance,
                             uint64_t seed,
                             char **out_json);

// # Safety
// `s` must be null or a string returned by this library that has not been freed.
void ft_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FERMITOMO_H */
