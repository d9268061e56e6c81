use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use biharm_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(bh_last_error()) }
        .to_string_lossy()
        .into_owned()
}

const E2: BhElement = BhElement {
    u1: 0.0,
    u2: 0.0,
    u3: 1.0,
    u4: 0.0,
};

#[test]
fn algebra_calls() {
    let mut out = BhElement::default();
    assert_eq!(unsafe { bh_multiply(E2, E2, &mut out) }, BhStatus::Ok);
    assert_eq!(
        out,
        BhElement {
            u1: 1.0,
            u2: 0.0,
            u3: 0.0,
            u4: 2.0
        }
    );

    assert_eq!(unsafe { bh_invert(E2, &mut out) }, BhStatus::Ok);
    assert_eq!(
        out,
        BhElement {
            u1: 0.0,
            u2: -2.0,
            u3: 1.0,
            u4: 0.0
        }
    );

    let rho = BhElement {
        u1: 1.0,
        u2: 0.0,
        u3: 0.0,
        u4: 1.0,
    };
    assert_eq!(unsafe { bh_invert(rho, &mut out) }, BhStatus::ZeroDivisor);
    assert!(last_error().contains("zero divisor"));

    assert_eq!(
        unsafe { bh_multiply(E2, E2, ptr::null_mut()) },
        BhStatus::NullPointer
    );
    assert_eq!(last_error(), "out is null");
}

#[test]
fn monogenic_handles() {
    let coeffs = [
        BhElement::default(),
        BhElement {
            u1: 1.0,
            ..Default::default()
        },
    ];
    let mut phi = ptr::null_mut();
    unsafe {
        assert_eq!(
            bh_monogenic_from_polynomial(coeffs.as_ptr(), 2, &mut phi),
            BhStatus::Ok
        );
        let mut v = BhElement::default();
        assert_eq!(bh_monogenic_evaluate(phi, 0.3, -0.4, &mut v), BhStatus::Ok);
        assert_eq!(
            v,
            BhElement {
                u1: 0.3,
                u2: 0.0,
                u3: -0.4,
                u4: 0.0
            }
        );
        assert_eq!(
            bh_monogenic_evaluate(phi, 1.0, 1.0, &mut v),
            BhStatus::Domain
        );

        let mut d = ptr::null_mut();
        assert_eq!(bh_monogenic_derivative(phi, &mut d), BhStatus::Ok);
        assert_eq!(bh_monogenic_evaluate(d, 0.5, 0.5, &mut v), BhStatus::Ok);
        assert_eq!(
            v,
            BhElement {
                u1: 1.0,
                ..Default::default()
            }
        );
        bh_monogenic_free(d);
        bh_monogenic_free(phi);
        bh_monogenic_free(ptr::null_mut());

        assert_eq!(
            bh_monogenic_from_polynomial(coeffs.as_ptr(), 0, &mut phi),
            BhStatus::InvalidArgument
        );
        assert!(phi.is_null());
    }
}

#[test]
fn solver_round_trip() {
    // U1 = cos θ, U4 = 0 is solved by F = z, G = 0.
    let cos = [1.0];
    let sin = [0.0];
    let u1 = BhFourier {
        a0: 0.0,
        cos: cos.as_ptr(),
        sin: sin.as_ptr(),
        len: 1,
    };
    let u4 = BhFourier {
        a0: 0.0,
        cos: ptr::null(),
        sin: ptr::null(),
        len: 0,
    };
    let mut phi = ptr::null_mut();
    unsafe {
        assert_eq!(bh_monogenic_solve(&u1, &u4, &mut phi), BhStatus::Ok);
        let mut v = BhElement::default();
        assert_eq!(bh_monogenic_evaluate(phi, 0.2, 0.6, &mut v), BhStatus::Ok);
        assert!((v.u1 - 0.2).abs() < 1e-14 && v.u4.abs() < 1e-14);
        bh_monogenic_free(phi);

        let bad = BhFourier {
            len: 1,
            cos: ptr::null(),
            ..u1
        };
        assert_eq!(
            bh_monogenic_solve(&bad, &u4, &mut phi),
            BhStatus::NullPointer
        );
        assert_eq!(last_error(), "u1.cos is null");
    }
}

#[test]
fn elastic_identity_case() {
    let cos = [0.25];
    let sin = [0.0];
    let g = BhFourier {
        a0: 0.0,
        cos: cos.as_ptr(),
        sin: sin.as_ptr(),
        len: 1,
    };
    let mut sol = ptr::null_mut();
    unsafe {
        assert_eq!(
            bh_elastic_solve(
                &g,
                &g,
                1.0,
                1.0,
                0.0,
                0.0,
                BhV2Formula::Derived as u32,
                &mut sol
            ),
            BhStatus::Ok
        );
        let mut p = BhElasticPoint::default();
        let (x, y) = (0.4, -0.3);
        assert_eq!(bh_elastic_point(sol, x, y, &mut p), BhStatus::Ok);
        assert!((p.u - (x * x / 8.0 - 5.0 * y * y / 8.0)).abs() < 1e-12);
        assert!((p.v - x * y / 4.0).abs() < 1e-12);
        assert!((p.tau_xy + y).abs() < 1e-12);
        assert!((p.sigma_x - x).abs() < 1e-12 && (p.sigma_y - x).abs() < 1e-12);
        bh_elastic_free(sol);

        assert_eq!(
            bh_elastic_solve(&g, &g, 1.0, -1.0, 0.0, 0.0, 0, &mut sol),
            BhStatus::InvalidArgument
        );
        assert!(last_error().contains("mu"));
        assert_eq!(
            bh_elastic_solve(&g, &g, 1.0, 1.0, 0.0, 0.0, 7, &mut sol),
            BhStatus::InvalidArgument
        );
        assert!(sol.is_null());
    }
}

#[test]
fn header_declares_the_api() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/biharm.h")).unwrap();
    for name in [
        "bh_last_error",
        "bh_multiply",
        "bh_invert",
        "bh_monogenic_from_polynomial",
        "bh_monogenic_solve",
        "bh_monogenic_evaluate",
        "bh_monogenic_derivative",
        "bh_monogenic_free",
        "bh_elastic_solve",
        "bh_elastic_point",
        "bh_elastic_free",
        "BH_STATUS_ZERO_DIVISOR",
        "BH_V2_FORMULA_PRINTED",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles a small C program against the header and the static library.
/// Skipped when no C compiler is on PATH.
#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler, skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // Integration tests live in target/<profile>/deps; the library sits one up.
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    let staticlib = lib_dir.join("libbiharm_ffi.a");
    if !staticlib.exists() {
        eprintln!("{} not built, skipping", staticlib.display());
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let bin = tmp.path().join("smoke");
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
