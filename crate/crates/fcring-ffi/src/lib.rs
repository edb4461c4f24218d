//! C ABI for the fusion ring analyzer.
//!
//! Handles are opaque; every fallible call returns an [`FcrStatus`] and
//! leaves a human-readable message retrievable with [`fcr_last_error`].
//! All functions are panic-safe and may be called from multiple threads as
//! long as each handle is used from one thread at a time.
//!
//! The generated header lives at `include/fcring.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fcring::chars::Config;
use fcring::lattice::FcLattice;
use fcring::ring::FusionRing;
use fcring::zoo;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcrStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    OutOfRange = 5,
    /// A structural invariant failed; details via fcr_last_error.
    InternalError = 6,
    BufferTooSmall = 7,
    /// The operation needs data the model does not carry (e.g. weights).
    MissingData = 8,
    Panic = 9,
}

fn status_of(err: &fcring::Error) -> FcrStatus {
    use fcring::Error as E;
    match err {
        E::Syntax { .. } | E::Range { .. } | E::DuplicateEntry { .. } | E::UnknownModel { .. } => {
            FcrStatus::ParseError
        }
        E::MissingWeights => FcrStatus::MissingData,
        e if e.exit_code() == 2 => FcrStatus::ValidationError,
        _ => FcrStatus::InternalError,
    }
}

/// Opaque analyzer handle: a validated ring plus its lattice of
/// fusion-closed sets.
pub struct FcrRing {
    ring: FusionRing,
    lattice: FcLattice,
}

/// Locality profile of one fusion-closed set, flattened for C consumers.
/// Tri-state fields use 1 = yes, 0 = no, -1 = not applicable.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FcrProfile {
    pub size: u32,
    pub dual_index: u32,
    pub dual_extent: f64,
    pub is_local: i32,
    pub is_twister: i32,
    /// Index of the Ramond class, or -1.
    pub ramond_class: i64,
    pub is_nilpotent: i32,
    pub is_integral: i32,
    /// 1 when all four character-ring checks pass or are vacuous.
    pub properties_ok: i32,
}

fn guard<F: FnOnce() -> FcrStatus>(f: F) -> FcrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            FcrStatus::Panic
        }
    }
}

unsafe fn build(json: &str, tolerance: f64, seed: u64, out: *mut *mut FcrRing) -> FcrStatus {
    let cfg = Config {
        tolerance,
        seed,
        max_attempts: 12,
    };
    let model = match fcring::parse_model(json) {
        Ok(m) => m,
        Err(e) => {
            set_error(&e.to_string());
            return status_of(&e);
        }
    };
    match FusionRing::validate(model.to_raw(), &cfg) {
        Ok(ring) => match ring.enumerate_fcsets() {
            Ok(lattice) => {
                let handle = Box::new(FcrRing { ring, lattice });
                unsafe { *out = Box::into_raw(handle) };
                FcrStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        },
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Parses and validates a model from JSON text and builds its lattice.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer. On
/// success `*out` owns the handle and must be released with
/// [`fcr_ring_free`].
#[no_mangle]
pub unsafe extern "C" fn fcr_ring_from_json(
    json: *const c_char,
    tolerance: f64,
    seed: u64,
    out: *mut *mut FcrRing,
) -> FcrStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            set_error("null argument");
            return FcrStatus::NullArgument;
        }
        let text = match unsafe { CStr::from_ptr(json) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("model text is not valid UTF-8");
                return FcrStatus::InvalidUtf8;
            }
        };
        unsafe { build(text, tolerance, seed, out) }
    })
}

/// Loads one of the bundled models by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fcr_ring_bundled(
    name: *const c_char,
    tolerance: f64,
    seed: u64,
    out: *mut *mut FcrRing,
) -> FcrStatus {
    guard(|| {
        if name.is_null() || out.is_null() {
            set_error("null argument");
            return FcrStatus::NullArgument;
        }
        let name = match unsafe { CStr::from_ptr(name) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("model name is not valid UTF-8");
                return FcrStatus::InvalidUtf8;
            }
        };
        let model = match zoo::bundled_model(name) {
            Ok(m) => m,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        let text = fcring::serialize_model(&model);
        unsafe { build(&text, tolerance, seed, out) }
    })
}

/// Releases a handle. Passing NULL is a no-op.
///
/// # Safety
/// `ring` must be a pointer previously returned by a constructor and not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn fcr_ring_free(ring: *mut FcrRing) {
    if !ring.is_null() {
        drop(unsafe { Box::from_raw(ring) });
    }
}

/// Number of primaries, or 0 for NULL.
///
/// # Safety
/// `ring` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fcr_ring_primary_count(ring: *const FcrRing) -> u32 {
    if ring.is_null() {
        return 0;
    }
    unsafe { &*ring }.ring.primary_count() as u32
}

/// Quantum dimension of one primary.
///
/// # Safety
/// `ring` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fcr_ring_dim(ring: *const FcrRing, p: u32, out: *mut f64) -> FcrStatus {
    guard(|| {
        if ring.is_null() || out.is_null() {
            set_error("null argument");
            return FcrStatus::NullArgument;
        }
        let handle = unsafe { &*ring };
        if p as usize >= handle.ring.primary_count() {
            set_error("primary index out of range");
            return FcrStatus::OutOfRange;
        }
        unsafe { *out = handle.ring.dim(p as usize) };
        FcrStatus::Ok
    })
}

/// Sum of all squared quantum dimensions, or NaN for NULL.
///
/// # Safety
/// `ring` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fcr_ring_total_dim_sq(ring: *const FcrRing) -> f64 {
    if ring.is_null() {
        return f64::NAN;
    }
    unsafe { &*ring }.ring.total_dim_sq()
}

/// Whether the ring admits a symmetric unitary diagonalizer (1/0), or -1
/// for NULL.
///
/// # Safety
/// `ring` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fcr_ring_modular_compatible(ring: *const FcrRing) -> i32 {
    if ring.is_null() {
        return -1;
    }
    i32::from(unsafe { &*ring }.ring.modular_compatible())
}

/// Number of fusion-closed sets, or 0 for NULL.
///
/// # Safety
/// `ring` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fcr_ring_fcset_count(ring: *const FcrRing) -> u32 {
    if ring.is_null() {
        return 0;
    }
    unsafe { &*ring }.lattice.len() as u32
}

/// Copies the member indices of one fusion-closed set into `buf`.
/// `*written` receives the member count; when it exceeds `cap` the status
/// is BufferTooSmall and nothing is copied.
///
/// # Safety
/// `ring` must be a live handle; `buf` must point to at least `cap`
/// elements; `written` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fcr_fcset_members(
    ring: *const FcrRing,
    index: u32,
    buf: *mut u32,
    cap: usize,
    written: *mut usize,
) -> FcrStatus {
    guard(|| {
        if ring.is_null() || written.is_null() {
            set_error("null argument");
            return FcrStatus::NullArgument;
        }
        let handle = unsafe { &*ring };
        if index as usize >= handle.lattice.len() {
            set_error("set index out of range");
            return FcrStatus::OutOfRange;
        }
        let members: Vec<u32> = handle
            .lattice
            .element(index as usize)
            .iter()
            .map(|p| p as u32)
            .collect();
        unsafe { *written = members.len() };
        if members.len() > cap {
            set_error("buffer too small");
            return FcrStatus::BufferTooSmall;
        }
        if buf.is_null() {
            set_error("null buffer");
            return FcrStatus::NullArgument;
        }
        for (i, m) in members.iter().enumerate() {
            unsafe { *buf.add(i) = *m };
        }
        FcrStatus::Ok
    })
}

/// Fills the locality profile of one fusion-closed set.
///
/// # Safety
/// `ring` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fcr_fcset_profile(
    ring: *const FcrRing,
    index: u32,
    out: *mut FcrProfile,
) -> FcrStatus {
    guard(|| {
        if ring.is_null() || out.is_null() {
            set_error("null argument");
            return FcrStatus::NullArgument;
        }
        let handle = unsafe { &*ring };
        if index as usize >= handle.lattice.len() {
            set_error("set index out of range");
            return FcrStatus::OutOfRange;
        }
        let g = match handle.ring.fcset(handle.lattice.element(index as usize)) {
            Ok(g) => g,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        let profile = match handle.ring.locality_profile(&g) {
            Ok(p) => p,
            Err(e) => {
                set_error(&e.to_string());
                return status_of(&e);
            }
        };
        let dual_index = handle.lattice.dual_index(index as usize) as u32;
        let result = FcrProfile {
            size: g.len() as u32,
            dual_index,
            dual_extent: profile.dual_extent,
            is_local: i32::from(profile.is_local),
            is_twister: profile.is_twister.map_or(-1, i32::from),
            ramond_class: profile.ramond_class.map_or(-1, |c| c as i64),
            is_nilpotent: i32::from(profile.is_nilpotent),
            is_integral: i32::from(profile.is_integral),
            properties_ok: i32::from(!profile.properties.hard_failure()),
        };
        unsafe { *out = result };
        FcrStatus::Ok
    })
}

/// Runs the character-ring checks over every integral fusion-closed set.
/// Ok when none fails.
///
/// # Safety
/// `ring` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn fcr_ring_verify(ring: *const FcrRing) -> FcrStatus {
    guard(|| {
        if ring.is_null() {
            set_error("null argument");
            return FcrStatus::NullArgument;
        }
        let handle = unsafe { &*ring };
        for i in 0..handle.lattice.len() {
            let outcome = handle
                .ring
                .fcset(handle.lattice.element(i))
                .and_then(|g| handle.ring.verify_character_properties(&g));
            match outcome {
                Ok(report) => {
                    if report.integral && report.hard_failure() {
                        set_error(&format!(
                            "integral set {{{}}} fails the character-ring checks",
                            handle.lattice.element(i).members_string()
                        ));
                        return FcrStatus::InternalError;
                    }
                }
                Err(e) => {
                    set_error(&e.to_string());
                    return status_of(&e);
                }
            }
        }
        FcrStatus::Ok
    })
}

/// Copies the last error message for this thread into `buf` (always
/// NUL-terminated) and returns the full message length in bytes.
///
/// # Safety
/// `buf` must point to at least `cap` writable bytes, or be NULL with
/// `cap` 0 to query the length.
#[no_mangle]
pub unsafe extern "C" fn fcr_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap);
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                // force termination on truncation
                *buf.add(n - 1) = 0;
            }
        }
        bytes.len() - 1
    })
}

/// Static version string of the underlying library.
#[no_mangle]
pub extern "C" fn fcr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
