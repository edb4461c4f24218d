//! Exercises the C ABI through the exported symbols, plus a real C client
//! compiled and run against the shared library.

use std::ffi::{c_char, CString};
use std::path::PathBuf;
use std::ptr;

use fcring_ffi::{
    fcr_fcset_members, fcr_fcset_profile, fcr_last_error, fcr_ring_bundled, fcr_ring_dim,
    fcr_ring_fcset_count, fcr_ring_free, fcr_ring_from_json, fcr_ring_modular_compatible,
    fcr_ring_primary_count, fcr_ring_total_dim_sq, fcr_ring_verify, fcr_version, FcrProfile,
    FcrRing, FcrStatus,
};

fn open_bundled(name: &str) -> *mut FcrRing {
    let name = CString::new(name).unwrap();
    let mut handle: *mut FcrRing = ptr::null_mut();
    let status = unsafe { fcr_ring_bundled(name.as_ptr(), 1e-9, 7, &mut handle) };
    assert_eq!(status, FcrStatus::Ok, "{}", last_error());
    assert!(!handle.is_null());
    handle
}

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 512];
    let len = unsafe { fcr_last_error(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..len.min(buf.len() - 1)]
        .iter()
        .map(|&c| c as u8)
        .collect();
    String::from_utf8_lossy(&bytes).into_owned()
}

#[test]
fn ising_through_the_c_interface() {
    let ring = open_bundled("ising");
    unsafe {
        assert_eq!(fcr_ring_primary_count(ring), 3);
        assert_eq!(fcr_ring_modular_compatible(ring), 1);
        assert!((fcr_ring_total_dim_sq(ring) - 4.0).abs() < 1e-9);
        let mut d = 0.0f64;
        assert_eq!(fcr_ring_dim(ring, 2, &mut d), FcrStatus::Ok);
        assert!((d - 2f64.sqrt()).abs() < 1e-9);
        assert_eq!(fcr_ring_fcset_count(ring), 3);

        // Set 1 is {0,1}: the fermion line.
        let mut members = [0u32; 8];
        let mut written = 0usize;
        assert_eq!(
            fcr_fcset_members(ring, 1, members.as_mut_ptr(), members.len(), &mut written),
            FcrStatus::Ok
        );
        assert_eq!(&members[..written], &[0, 1]);

        let mut profile = FcrProfile {
            size: 0,
            dual_index: 0,
            dual_extent: 0.0,
            is_local: 0,
            is_twister: 0,
            ramond_class: 0,
            is_nilpotent: 0,
            is_integral: 0,
            properties_ok: 0,
        };
        assert_eq!(fcr_fcset_profile(ring, 1, &mut profile), FcrStatus::Ok);
        assert_eq!(profile.size, 2);
        assert_eq!(profile.dual_index, 1);
        assert_eq!(profile.is_local, 1);
        assert_eq!(profile.is_twister, 0);
        assert_eq!(profile.ramond_class, 1);
        assert_eq!(profile.is_nilpotent, 1);
        assert_eq!(profile.is_integral, 1);
        assert_eq!(profile.properties_ok, 1);

        assert_eq!(fcr_ring_verify(ring), FcrStatus::Ok);
        fcr_ring_free(ring);
    }
}

#[test]
fn errors_set_messages_and_statuses() {
    unsafe {
        let mut handle: *mut FcrRing = ptr::null_mut();
        let bogus = CString::new("nope").unwrap();
        assert_eq!(
            fcr_ring_bundled(bogus.as_ptr(), 1e-9, 7, &mut handle),
            FcrStatus::ParseError
        );
        assert!(last_error().contains("nope"), "{}", last_error());

        let broken = CString::new(
            r#"{"format_version":1,"name":"x","n":2,
               "fusion":[[0,0,0,1],[0,1,0,1],[1,0,1,1],[1,1,0,1]]}"#,
        )
        .unwrap();
        assert_eq!(
            fcr_ring_from_json(broken.as_ptr(), 1e-9, 7, &mut handle),
            FcrStatus::ValidationError
        );
        assert!(last_error().contains("unit"), "{}", last_error());

        assert_eq!(
            fcr_ring_from_json(ptr::null(), 1e-9, 7, &mut handle),
            FcrStatus::NullArgument
        );
        assert_eq!(fcr_ring_primary_count(ptr::null()), 0);
        fcr_ring_free(ptr::null_mut());
    }
}

#[test]
fn buffer_too_small_reports_required_length() {
    let ring = open_bundled("toric");
    unsafe {
        let mut written = 0usize;
        let mut tiny = [0u32; 1];
        let full = fcr_ring_fcset_count(ring) - 1;
        let status = fcr_fcset_members(ring, full, tiny.as_mut_ptr(), 1, &mut written);
        assert_eq!(status, FcrStatus::BufferTooSmall);
        assert_eq!(written, 4);
        fcr_ring_free(ring);
    }
}

#[test]
fn version_is_a_static_string() {
    let v = unsafe { std::ffi::CStr::from_ptr(fcr_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn generated_header_declares_the_interface() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/fcring.h");
    let text = std::fs::read_to_string(&header).expect("header generated at build time");
    for symbol in [
        "fcr_ring_from_json",
        "fcr_ring_bundled",
        "fcr_ring_free",
        "fcr_fcset_profile",
        "fcr_ring_verify",
        "fcr_last_error",
        "FcrProfile",
        "FcrStatus",
    ] {
        assert!(text.contains(symbol), "header misses {symbol}");
    }
}

/// Compiles and runs a small C client against the freshly built shared
/// library.
#[test]
fn c_client_links_and_runs() {
    // Tests run from target/<profile>/deps; the shared library is uplifted
    // to the profile directory by builds but stays in deps/ under plain
    // `cargo test`, so look in both.
    let deps_dir = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let profile_dir = deps_dir.parent().unwrap().to_path_buf();
    let target_dir = [&profile_dir, &deps_dir]
        .into_iter()
        .find(|d| d.join("libfcring_ffi.so").exists())
        .unwrap_or_else(|| panic!("libfcring_ffi.so not found near {}", deps_dir.display()))
        .clone();
    let include_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");

    let scratch = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let c_path = scratch.join("fcring_smoke.c");
    let bin_path = scratch.join("fcring_smoke");
    std::fs::write(
        &c_path,
        r#"
#include <stdio.h>
#include "fcring.h"

int main(void) {
    FcrRing *ring = NULL;
    if (fcr_ring_bundled("double_s3", 1e-9, 7, &ring) != FCR_STATUS_OK) return 1;
    if (fcr_ring_primary_count(ring) != 8) return 2;
    if (fcr_ring_fcset_count(ring) != 8) return 3;
    FcrProfile profile;
    if (fcr_fcset_profile(ring, 2, &profile) != FCR_STATUS_OK) return 4;
    if (profile.is_local != 1 || profile.is_twister != 1) return 5;
    if (fcr_ring_verify(ring) != FCR_STATUS_OK) return 6;
    fcr_ring_free(ring);
    printf("ok\n");
    return 0;
}
"#,
    )
    .unwrap();

    let compile = std::process::Command::new("cc")
        .arg(&c_path)
        .arg("-I")
        .arg(&include_dir)
        .arg("-L")
        .arg(&target_dir)
        .arg("-lfcring_ffi")
        .arg("-o")
        .arg(&bin_path)
        .output()
        .expect("cc is available");
    assert!(
        compile.status.success(),
        "compile failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = std::process::Command::new(&bin_path)
        .env("LD_LIBRARY_PATH", &target_dir)
        .output()
        .expect("smoke binary runs");
    assert!(
        run.status.success(),
        "smoke binary exited with {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
