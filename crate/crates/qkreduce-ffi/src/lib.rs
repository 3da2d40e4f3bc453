//! C ABI over `qkreduce`.
//!
//! Objects cross the boundary as opaque handles created by `*_parse` or
//! `*_build` and released by the matching `*_free`. Every fallible call
//! returns a `QkStatus`; the message of the most recent failure on the
//! calling thread is available from [`qk_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use qkreduce::strata::{build_catalog, compare_matrices, Catalog, CatalogOptions, Level, StrataError};
use qkreduce::weights::{admissibility, isotropy_group, WeightError, WeightMatrix};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QkStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Inadmissible = 3,
    Singular = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QkFamily {
    Theta = 0,
    Omega = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QkLevel {
    Twistor = 0,
    Sasakian = 1,
}

/// Opaque weight matrix.
pub struct QkMatrix {
    inner: WeightMatrix,
}

/// Opaque stratum catalog.
pub struct QkCatalog {
    inner: Catalog,
}

/// Summary counts of a catalog.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QkCatalogSummary {
    pub entries: usize,
    pub spheres: usize,
    pub point_candidates: usize,
    /// Feasible point entries; `usize::MAX` when no probes were run.
    pub points: usize,
    pub pruned: usize,
    pub survivors: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: QkStatus, msg: impl Into<String>) -> QkStatus {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
    status
}

fn weight_status(e: WeightError) -> QkStatus {
    let s = match e {
        WeightError::Parse(_) | WeightError::Shape(_) | WeightError::EntryOutOfRange(_) => QkStatus::Parse,
        WeightError::Inadmissible(_) => QkStatus::Inadmissible,
        WeightError::ContinuousStabilizer => QkStatus::Singular,
        _ => QkStatus::Internal,
    };
    fail(s, e.to_string())
}

fn strata_status(e: StrataError) -> QkStatus {
    match e {
        StrataError::Weights(w) => weight_status(w),
        StrataError::Inadmissible(w) => fail(QkStatus::Inadmissible, format!("inadmissible: {w} = 0")),
        other => fail(QkStatus::Internal, other.to_string()),
    }
}

fn guard(f: impl FnOnce() -> QkStatus) -> QkStatus {
    std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(QkStatus::Internal, "panic inside qkreduce"))
}

/// Message of the last failure on this thread; empty if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a literal such as `"1,0,1,1/0,1,1,1/1,1,0,1"` (Θ) or `"1,2,3/1,3,6"` (Ω).
///
/// # Safety
/// `literal` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_matrix_parse(literal: *const c_char, out: *mut *mut QkMatrix) -> QkStatus {
    guard(|| {
        if literal.is_null() || out.is_null() {
            return fail(QkStatus::NullPointer, "null argument");
        }
        let Ok(s) = CStr::from_ptr(literal).to_str() else {
            return fail(QkStatus::Parse, "literal is not UTF-8");
        };
        match WeightMatrix::parse(s, None) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(QkMatrix { inner: m }));
                QkStatus::Ok
            }
            Err(e) => weight_status(e),
        }
    })
}

/// # Safety
/// `m` must come from [`qk_matrix_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qk_matrix_free(m: *mut QkMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qk_matrix_family(m: *const QkMatrix, out: *mut QkFamily) -> QkStatus {
    if m.is_null() || out.is_null() {
        return fail(QkStatus::NullPointer, "null argument");
    }
    *out = match (*m).inner.family() {
        qkreduce::weights::Family::Theta => QkFamily::Theta,
        qkreduce::weights::Family::Omega => QkFamily::Omega,
    };
    QkStatus::Ok
}

/// Writes every determinant entering admissibility (4 minors + 8 boxes for
/// Θ, 3 minors + 4 sums + 4 boxes for Ω) to `values`, and whether all are
/// nonzero to `admissible`. `len` receives the count; if `cap` is too small
/// nothing is written and `BufferTooSmall` is returned.
///
/// # Safety
/// `values` must hold `cap` entries; `len` and `admissible` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_matrix_determinants(
    m: *const QkMatrix,
    values: *mut i64,
    cap: usize,
    len: *mut usize,
    admissible: *mut bool,
) -> QkStatus {
    guard(|| {
        if m.is_null() || len.is_null() || admissible.is_null() {
            return fail(QkStatus::NullPointer, "null argument");
        }
        let a = match admissibility(&(*m).inner) {
            Ok(a) => a,
            Err(e) => return weight_status(e),
        };
        *len = a.determinants.len();
        *admissible = a.admissible;
        if cap < a.determinants.len() || values.is_null() {
            return fail(QkStatus::BufferTooSmall, format!("need {} entries", a.determinants.len()));
        }
        for (i, d) in a.determinants.iter().enumerate() {
            *values.add(i) = d.value;
        }
        QkStatus::Ok
    })
}

/// Order of the solution group of `B·x ∈ ℤ^n` for a square row-major `n × n`
/// integer matrix, i.e. `|det B|`.
///
/// # Safety
/// `rows` must hold `n * n` entries; `order` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_isotropy_order(rows: *const i64, n: usize, order: *mut u64) -> QkStatus {
    guard(|| {
        if rows.is_null() || order.is_null() {
            return fail(QkStatus::NullPointer, "null argument");
        }
        if n == 0 {
            return fail(QkStatus::Parse, "empty matrix");
        }
        let flat = std::slice::from_raw_parts(rows, n * n);
        let b: Vec<Vec<i64>> = flat.chunks(n).map(|r| r.to_vec()).collect();
        match isotropy_group(&b) {
            Ok(g) => {
                *order = g.order;
                QkStatus::Ok
            }
            Err(e) => weight_status(e),
        }
    })
}

/// Builds the singular-stratum catalog with probes seeded by `seed`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qk_catalog_build(
    m: *const QkMatrix,
    level: QkLevel,
    seed: u64,
    restarts: usize,
    out: *mut *mut QkCatalog,
) -> QkStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            return fail(QkStatus::NullPointer, "null argument");
        }
        let level = match level {
            QkLevel::Twistor => Level::Twistor,
            QkLevel::Sasakian => Level::Sasakian,
        };
        let opts = CatalogOptions { seed, restarts: restarts.max(1), ..Default::default() };
        match build_catalog(&(*m).inner, level, &opts) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(QkCatalog { inner: c }));
                QkStatus::Ok
            }
            Err(e) => strata_status(e),
        }
    })
}

/// # Safety
/// `c` must come from [`qk_catalog_build`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qk_catalog_free(c: *mut QkCatalog) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qk_catalog_summary(c: *const QkCatalog, out: *mut QkCatalogSummary) -> QkStatus {
    if c.is_null() || out.is_null() {
        return fail(QkStatus::NullPointer, "null argument");
    }
    let cat = &(*c).inner;
    let s = &cat.summary;
    *out = QkCatalogSummary {
        entries: cat.strata.len(),
        spheres: s.spheres,
        point_candidates: s.point_candidates,
        points: s.points.unwrap_or(usize::MAX),
        pruned: s.pruned,
        survivors: s.survivors,
    };
    QkStatus::Ok
}

fn to_c_string(s: String, out: *mut *mut c_char) -> QkStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before getting here
            unsafe { *out = c.into_raw() };
            QkStatus::Ok
        }
        Err(e) => fail(QkStatus::Internal, e.to_string()),
    }
}

/// Catalog as JSON; release with [`qk_string_free`].
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qk_catalog_json(c: *const QkCatalog, out: *mut *mut c_char) -> QkStatus {
    guard(|| {
        if c.is_null() || out.is_null() {
            return fail(QkStatus::NullPointer, "null argument");
        }
        match serde_json::to_string_pretty(&(*c).inner) {
            Ok(s) => to_c_string(s, out),
            Err(e) => fail(QkStatus::Internal, e.to_string()),
        }
    })
}

/// Structural comparison of two matrices as JSON; release with [`qk_string_free`].
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qk_compare_json(
    a: *const QkMatrix,
    b: *const QkMatrix,
    seed: u64,
    out: *mut *mut c_char,
) -> QkStatus {
    guard(|| {
        if a.is_null() || b.is_null() || out.is_null() {
            return fail(QkStatus::NullPointer, "null argument");
        }
        let opts = CatalogOptions { seed, ..Default::default() };
        match compare_matrices(&(*a).inner, &(*b).inner, &opts) {
            Ok(r) => match serde_json::to_string_pretty(&r) {
                Ok(s) => to_c_string(s, out),
                Err(e) => fail(QkStatus::Internal, e.to_string()),
            },
            Err(e) => strata_status(e),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
