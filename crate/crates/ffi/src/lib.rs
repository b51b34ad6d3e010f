//! C ABI over `sublattice-core`.
//!
//! Every fallible call returns an [`SlStatus`] and writes its result through
//! an out pointer. On failure the message is kept per thread and read back
//! with [`sl_last_error_message`]. Strings handed out by the library are
//! owned by the caller and released with [`sl_string_free`]. Counts are
//! returned as decimal strings since they overflow 64 bits quickly.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sublattice_core::counting::{f_product, f_star};
use sublattice_core::enumeration::{census, CensusReport};
use sublattice_core::{Error, IntMatrix, Sublattice};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    Singular = 4,
    Parse = 5,
    CapExceeded = 6,
    Internal = 7,
    Panic = 8,
}

/// Opaque sublattice handle.
pub struct SlSublattice {
    inner: Sublattice,
}

/// Opaque census handle, holding the classes of one `(n, m)` cell.
pub struct SlCensus {
    inner: CensusReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> SlStatus {
    match err {
        Error::InvalidArgument(_) => SlStatus::InvalidArgument,
        Error::Singular => SlStatus::Singular,
        Error::DimensionMismatch { .. } => SlStatus::DimensionMismatch,
        Error::Parse(_) => SlStatus::Parse,
        Error::CapExceeded { .. } => SlStatus::CapExceeded,
        _ => SlStatus::Internal,
    }
}

struct Failure(SlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null_pointer(name: &str) -> Failure {
    Failure(SlStatus::NullPointer, format!("{name} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SlStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside sublattice library".into());
            SlStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null_pointer(name))
}

unsafe fn write<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null_pointer(name));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the sublattice spanned by the rows of an `n x n` row-major matrix.
///
/// # Safety
/// `entries` must point to `n * n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_sublattice_from_rows(
    entries: *const i64,
    n: usize,
    out: *mut *mut SlSublattice,
) -> SlStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null_pointer("entries"));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()).into());
        }
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Failure(SlStatus::InvalidArgument, "dimension too large".into()))?;
        let flat = std::slice::from_raw_parts(entries, len);
        let rows: Vec<Vec<i64>> = flat.chunks(n).map(<[i64]>::to_vec).collect();
        let inner = Sublattice::from_rows(&IntMatrix::from_i64_rows(&rows)?)?;
        write(out, Box::into_raw(Box::new(SlSublattice { inner })), "out")
    })
}

/// Parses `"a,b;c,d"` or a JSON array of rows.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_sublattice_parse(
    text: *const c_char,
    out: *mut *mut SlSublattice,
) -> SlStatus {
    guard(|| {
        if text.is_null() {
            return Err(null_pointer("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Failure(SlStatus::Parse, "text is not UTF-8".into()))?;
        let m: IntMatrix = text.parse()?;
        let inner = Sublattice::from_rows(&m)?;
        write(out, Box::into_raw(Box::new(SlSublattice { inner })), "out")
    })
}

/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sl_sublattice_free(s: *mut SlSublattice) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_sublattice_dimension(s: *const SlSublattice, out: *mut usize) -> SlStatus {
    guard(|| write(out, deref(s, "sublattice")?.inner.dim(), "out"))
}

/// Index `[Z^n : L]` as a decimal string.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_sublattice_index(s: *const SlSublattice, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let text = deref(s, "sublattice")?.inner.index().to_string();
        write(out, owned_string(text), "out")
    })
}

/// Canonical Hermite basis in `"a,b;c,d"` form.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_sublattice_canonical(
    s: *const SlSublattice,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let text = deref(s, "sublattice")?.inner.canonical().to_string();
        write(out, owned_string(text), "out")
    })
}

/// Invariant chain, largest first, as `"(d1,d2,...)"`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_sublattice_chain(s: *const SlSublattice, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let text = deref(s, "sublattice")?.inner.invariant_chain().to_string();
        write(out, owned_string(text), "out")
    })
}

/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_sublattice_equals(
    a: *const SlSublattice,
    b: *const SlSublattice,
    out: *mut bool,
) -> SlStatus {
    guard(|| {
        let eq = deref(a, "a")?.inner.equals(&deref(b, "b")?.inner)?;
        write(out, eq, "out")
    })
}

/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_sublattice_equivalent(
    a: *const SlSublattice,
    b: *const SlSublattice,
    out: *mut bool,
) -> SlStatus {
    guard(|| {
        let eq = deref(a, "a")?.inner.equivalent(&deref(b, "b")?.inner)?;
        write(out, eq, "out")
    })
}

/// Unimodular `M` with `hnf(A * M) = hnf(B)`, as `"a,b;c,d"`. Writes null
/// when the sublattices are not equivalent.
///
/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_sublattice_witness(
    a: *const SlSublattice,
    b: *const SlSublattice,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let w = deref(a, "a")?.inner.equivalence_witness(&deref(b, "b")?.inner)?;
        write(out, w.map_or(ptr::null_mut(), |m| owned_string(m.to_string())), "out")
    })
}

/// Number of sublattices of index `m` in `Z^n`, as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_count_sublattices(n: usize, m: u64, out: *mut *mut c_char) -> SlStatus {
    guard(|| write(out, owned_string(f_product(n, m)?.to_string()), "out"))
}

/// Number of equivalence classes of index `m` in `Z^n`, as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_count_classes(n: usize, m: u64, out: *mut *mut c_char) -> SlStatus {
    guard(|| write(out, owned_string(f_star(n, m)?.to_string()), "out"))
}

/// Enumerates every sublattice of index `m` and groups them into classes.
/// Fails with `CapExceeded` when there are more than `cap` sublattices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_census_new(n: usize, m: u64, cap: u64, out: *mut *mut SlCensus) -> SlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_pointer("out"));
        }
        let inner = census(n, m, cap)?;
        write(out, Box::into_raw(Box::new(SlCensus { inner })), "out")
    })
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_census_class_count(c: *const SlCensus, out: *mut usize) -> SlStatus {
    guard(|| write(out, deref(c, "census")?.inner.classes.len(), "out"))
}

/// Class `i` in descending chain order. Any of the out pointers may be null
/// to skip that field.
///
/// # Safety
/// `c` must be a live handle; non-null out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_census_class(
    c: *const SlCensus,
    i: usize,
    chain: *mut *mut c_char,
    size: *mut *mut c_char,
    representative: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let classes = &deref(c, "census")?.inner.classes;
        let class = classes.get(i).ok_or_else(|| {
            Failure(
                SlStatus::InvalidArgument,
                format!("class {i} out of range, census has {}", classes.len()),
            )
        })?;
        if !chain.is_null() {
            chain.write(owned_string(class.chain.to_string()));
        }
        if !size.is_null() {
            size.write(owned_string(class.size.to_string()));
        }
        if !representative.is_null() {
            representative.write(owned_string(class.representative.to_string()));
        }
        Ok(())
    })
}

/// # Safety
/// `c` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sl_census_free(c: *mut SlCensus) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
