use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use fermitomo_ffi::*;

fn ok(status: FtStatus) {
    if status != FtStatus::Ok {
        let msg = unsafe { CStr::from_ptr(ft_last_error_message()) };
        panic!("{status:?}: {}", msg.to_string_lossy());
    }
}

fn matrix_entries(m: *const FtMatrix) -> (usize, usize, Vec<FtComplex>) {
    let (mut rows, mut cols) = (0, 0);
    unsafe {
        ok(ft_matrix_shape(m, &mut rows, &mut cols));
        let mut buf = vec![FtComplex { re: 0.0, im: 0.0 }; rows * cols];
        ok(ft_matrix_data(m, buf.as_mut_ptr(), buf.len()));
        (rows, cols, buf)
    }
}

fn real(values: &[f64]) -> Vec<FtComplex> {
    values.iter().map(|&re| FtComplex { re, im: 0.0 }).collect()
}

#[test]
fn matrix_round_trip_and_arithmetic() {
    unsafe {
        let sp = real(&[0.0, 1.0, 0.0, 0.0]);
        let mut a = ptr::null_mut();
        ok(ft_matrix_new(2, 2, sp.as_ptr(), &mut a));
        let mut id = ptr::null_mut();
        ok(ft_matrix_identity(2, &mut id));
        let mut k = ptr::null_mut();
        ok(ft_matrix_kron(id, a, &mut k));
        let (rows, cols, data) = matrix_entries(k);
        assert_eq!((rows, cols), (4, 4));
        assert_eq!(data[1].re, 1.0);
        assert_eq!(data[2 * 4 + 3].re, 1.0);

        let mut ad = ptr::null_mut();
        ok(ft_matrix_dagger(a, &mut ad));
        let mut prod = ptr::null_mut();
        ok(ft_matrix_matmul(a, ad, &mut prod));
        let mut tr = FtComplex { re: 0.0, im: 0.0 };
        ok(ft_matrix_trace(prod, &mut tr));
        assert_eq!(tr, FtComplex { re: 1.0, im: 0.0 });

        let mut bad = ptr::null_mut();
        assert_eq!(
            ft_matrix_matmul(k, a, &mut bad),
            FtStatus::DimensionMismatch
        );
        assert!(bad.is_null());
        let msg = CStr::from_ptr(ft_last_error_message())
            .to_string_lossy()
            .into_owned();
        assert!(msg.contains("dimension mismatch"), "{msg}");

        for m in [a, id, k, ad, prod] {
            ft_matrix_free(m);
        }
        ft_matrix_free(ptr::null_mut());
    }
}

#[test]
fn null_and_buffer_errors() {
    unsafe {
        assert_eq!(
            ft_matrix_identity(2, ptr::null_mut()),
            FtStatus::NullPointer
        );
        let mut m = ptr::null_mut();
        assert_eq!(
            ft_matrix_new(2, 2, ptr::null(), &mut m),
            FtStatus::NullPointer
        );
        ok(ft_matrix_identity(2, &mut m));
        let mut small = [FtComplex { re: 0.0, im: 0.0 }; 3];
        assert_eq!(
            ft_matrix_data(m, small.as_mut_ptr(), 3),
            FtStatus::BufferTooSmall
        );
        ft_matrix_free(m);
        let msg = CStr::from_ptr(ft_status_message(FtStatus::OutOfRange));
        assert_eq!(msg.to_str().unwrap(), "value out of range");
    }
}

#[test]
fn algebra_and_vacuum_tomogram() {
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(ft_algebra_new(11, &mut alg), FtStatus::OutOfRange);
        ok(ft_algebra_new(2, &mut alg));
        let mut residual = 1.0;
        ok(ft_algebra_max_residual(alg, &mut residual));
        assert_eq!(residual, 0.0);

        let mut a2 = ptr::null_mut();
        ok(ft_algebra_annihilator(alg, 2, &mut a2));
        let (_, _, data) = matrix_entries(a2);
        let expected = [
            0., 0., 1., 0., 0., 0., 0., -1., 0., 0., 0., 0., 0., 0., 0., 0.,
        ];
        assert_eq!(data.iter().map(|z| z.re).collect::<Vec<_>>(), expected);
        let mut a3 = ptr::null_mut();
        assert_eq!(ft_algebra_creator(alg, 3, &mut a3), FtStatus::OutOfRange);

        let mut rho = ptr::null_mut();
        ok(ft_vacuum_density(2, &mut rho));
        let (t1, t2) = (0.7_f64, 2.1_f64);
        let angles = [
            FtEuler {
                phi: 0.0,
                theta: t1,
                psi: 0.3,
            },
            FtEuler {
                phi: 1.0,
                theta: t2,
                psi: 5.0,
            },
        ];
        let mut probs = [0.0; 4];
        ok(ft_tomogram(rho, angles.as_ptr(), 2, probs.as_mut_ptr(), 4));
        let (c1, s1) = ((t1 / 2.0).cos().powi(2), (t1 / 2.0).sin().powi(2));
        let (c2, s2) = ((t2 / 2.0).cos().powi(2), (t2 / 2.0).sin().powi(2));
        for (p, e) in probs.iter().zip([c1 * c2, c1 * s2, s1 * c2, s1 * s2]) {
            assert!((p - e).abs() < 1e-14);
        }
        let bad = [FtEuler {
            phi: 0.0,
            theta: 4.0,
            psi: 0.0,
        }; 2];
        assert_eq!(
            ft_tomogram(rho, bad.as_ptr(), 2, probs.as_mut_ptr(), 4),
            FtStatus::OutOfRange
        );

        ft_matrix_free(a2);
        ft_matrix_free(rho);
        ft_algebra_free(alg);
    }
}

#[test]
fn symbols_star_and_reconstruction() {
    unsafe {
        let mut alg = ptr::null_mut();
        ok(ft_algebra_new(1, &mut alg));
        let (mut a, mut ad) = (ptr::null_mut(), ptr::null_mut());
        ok(ft_algebra_annihilator(alg, 1, &mut a));
        ok(ft_algebra_creator(alg, 1, &mut ad));

        let point = [FtModePoint {
            m: -0.5,
            theta: 0.4,
            psi: 1.1,
        }];
        let (mut from_matrix, mut closed) = (
            FtComplex { re: 0.0, im: 0.0 },
            FtComplex { re: 0.0, im: 0.0 },
        );
        ok(ft_symbol(ad, point.as_ptr(), 1, &mut from_matrix));
        ok(ft_fermi_symbol(1, 1, true, point.as_ptr(), &mut closed));
        assert!(
            (from_matrix.re - closed.re).abs() < 1e-15
                && (from_matrix.im - closed.im).abs() < 1e-15
        );
        let bad_m = [FtModePoint {
            m: 0.25,
            theta: 0.4,
            psi: 1.1,
        }];
        assert_eq!(
            ft_symbol(a, bad_m.as_ptr(), 1, &mut closed),
            FtStatus::InvalidArgument
        );

        let up = FtModePoint {
            m: 0.5,
            theta: 0.0,
            psi: 0.0,
        };
        let mut k = FtComplex { re: 0.0, im: 0.0 };
        ok(ft_star_kernel(&up, &up, &up, 1, &mut k));
        assert!((k.re - 4.0).abs() < 1e-14 && k.im.abs() < 1e-14);

        let mut grid = ptr::null_mut();
        ok(ft_grid_new(1, 2, &mut grid));
        let (mut modes, mut len) = (0, 0);
        ok(ft_grid_size(grid, &mut modes, &mut len));
        assert_eq!((modes, len), (1, 12));
        let mut p = [FtModePoint {
            m: 0.0,
            theta: 0.0,
            psi: 0.0,
        }];
        let mut total = 0.0;
        for i in 0..len {
            let mut w = 0.0;
            ok(ft_grid_point(grid, i, p.as_mut_ptr(), 1, &mut w));
            total += w;
        }
        assert!((total - 2.0).abs() < 1e-14);

        let (mut fa, mut fad) = (ptr::null_mut(), ptr::null_mut());
        ok(ft_symbol_sample(a, grid, &mut fa));
        ok(ft_symbol_sample(ad, grid, &mut fad));
        let mut fc = ptr::null_mut();
        ok(ft_star(fa, fad, false, &mut fc));
        let mut product = ptr::null_mut();
        ok(ft_reconstruct(fc, &mut product));
        let (_, _, data) = matrix_entries(product);
        let expected = [1.0, 0.0, 0.0, 0.0];
        for (z, e) in data.iter().zip(expected) {
            assert!((z.re - e).abs() < 1e-12 && z.im.abs() < 1e-12);
        }

        let mut values = vec![FtComplex { re: 0.0, im: 0.0 }; len];
        ok(ft_symbol_values(fc, values.as_mut_ptr(), len));
        let mut copy = ptr::null_mut();
        ok(ft_symbol_from_values(grid, values.as_ptr(), len, &mut copy));
        assert_eq!(
            ft_symbol_from_values(grid, values.as_ptr(), len - 1, &mut copy),
            FtStatus::DimensionMismatch
        );

        for s in [fa, fad, fc, copy] {
            ft_symbol_free(s);
        }
        for m in [a, ad, product] {
            ft_matrix_free(m);
        }
        ft_grid_free(grid);
        ft_algebra_free(alg);
    }
}

#[test]
fn verify_report_is_json() {
    unsafe {
        let mut json = ptr::null_mut();
        ok(ft_verify_json(1, 2, 1e-10, 7, &mut json));
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        ft_string_free(json);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["passed"], true);

        let mut failing = ptr::null_mut();
        assert_eq!(
            ft_verify_json(1, 2, 1e-30, 7, &mut failing),
            FtStatus::InvariantFailed
        );
        assert!(!failing.is_null());
        ft_string_free(failing);
        assert_eq!(
            ft_verify_json(1, 2, -1.0, 7, &mut failing),
            FtStatus::InvalidArgument
        );
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("fermitomo.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "ft_matrix_new",
        "ft_star",
        "ft_verify_json",
        "FT_STATUS_BUFFER_TOO_SMALL",
        "typedef struct FtMatrix FtMatrix",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let source = dir.path().join("probe.c");
    std::fs::write(
        &source,
        format!(
            "#include \"{}\"\nint main(void) {{ return ft_status_message(FT_STATUS_OK) == 0; }}\n",
            header.display()
        ),
    )
    .unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    match Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg(&source)
        .output()
    {
        Ok(out) => assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        ),
        Err(e) => eprintln!("skipping C syntax check, {cc} unavailable: {e}"),
    }
}
