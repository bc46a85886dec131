//! C ABI for `modfact`.
//!
//! Factors and factorizations cross the boundary as opaque handles created by
//! a `*_new_*` or `*_from_json` function and released with the matching
//! `*_free`. Fallible calls return a [`ModfactStatus`] and write results
//! through out-pointers; on failure [`modfact_last_error`] describes what went
//! wrong on the calling thread. Strings returned by the library are released
//! with [`modfact_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use modfact::factors::{
    build_modular_factor, build_modular_factor_even, build_modular_factorization,
    validate_factor, Factor, Factorization,
};
use modfact::numtheory::{crt_combine, gcd, half_mod, mod_inverse, totient, Residue};
use modfact::{equivalence, oracle, pairing, product, Error};

/// Result code of every fallible call. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModfactStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotCoprime = 3,
    NoInverse = 4,
    InvalidFactor = 5,
    InvalidFactorization = 6,
    InvalidJson = 7,
    BufferTooSmall = 8,
    CostGuard = 9,
    Panic = 10,
}

/// Opaque handle to a single factor.
pub struct ModfactFactor(Factor);

/// Opaque handle to a complete factorization.
pub struct ModfactFactorization(Factorization);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> ModfactStatus {
    match e {
        Error::NotCoprime { .. } => ModfactStatus::NotCoprime,
        Error::NoInverse { .. } => ModfactStatus::NoInverse,
        Error::InvalidFactor(_) => ModfactStatus::InvalidFactor,
        Error::InvalidFactorization(_) => ModfactStatus::InvalidFactorization,
        Error::CostGuard(_) => ModfactStatus::CostGuard,
        _ => ModfactStatus::InvalidArgument,
    }
}

fn fail(status: ModfactStatus, message: impl Into<String>) -> ModfactStatus {
    set_error(message);
    status
}

/// Runs `body`, turning library errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), ModfactStatus>) -> ModfactStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ModfactStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(ModfactStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: modfact::Result<T>) -> Result<T, ModfactStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn null(what: &str) -> ModfactStatus {
    fail(ModfactStatus::NullPointer, format!("{what} is null"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), ModfactStatus> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, ModfactStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, ModfactStatus> {
    if p.is_null() {
        return Err(null("json"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(ModfactStatus::InvalidJson, "input is not UTF-8"))
}

fn json_out<T: serde::Serialize>(value: &T) -> Result<*mut c_char, ModfactStatus> {
    let text = serde_json::to_string(value)
        .map_err(|e| fail(ModfactStatus::Panic, e.to_string()))?;
    Ok(CString::new(text).expect("JSON has no NUL").into_raw())
}

fn json_in<T: serde::de::DeserializeOwned>(
    text: &str,
    invalid: ModfactStatus,
) -> Result<T, ModfactStatus> {
    serde_json::from_str(text).map_err(|e| {
        // Validation failures surface through serde as data errors.
        let status = if e.is_data() {
            invalid
        } else {
            ModfactStatus::InvalidJson
        };
        fail(status, e.to_string())
    })
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message for the most recent failure on this thread, or NULL.
///
/// The pointer stays valid until the next call into the library on the same
/// thread.
#[no_mangle]
pub extern "C" fn modfact_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn modfact_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn modfact_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn modfact_gcd(a: i64, b: i64) -> u64 {
    gcd(a, b)
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_totient(n: u64, out: *mut u64) -> ModfactStatus {
    guard(|| write(out, lib(totient(n))?, "out"))
}

/// Inverse of `r` modulo `n`, in `0..n`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_mod_inverse(r: i64, n: u64, out: *mut u64) -> ModfactStatus {
    guard(|| write(out, lib(mod_inverse(r, n))?.value(), "out"))
}

/// The `v` in `0..n` with `2v ≡ k (mod n)`; `n` must be odd.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_half_mod(k: u64, n: u64, out: *mut u64) -> ModfactStatus {
    guard(|| {
        let k = lib(Residue::new(k as i64, n))?;
        write(out, lib(half_mod(k))?.value(), "out")
    })
}

/// The `p` in `0..s*t` with `p ≡ k (mod s)` and `p ≡ l (mod t)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_crt_combine(
    k: u64,
    s: u64,
    l: u64,
    t: u64,
    out: *mut u64,
) -> ModfactStatus {
    guard(|| {
        let k = lib(Residue::new(k as i64, s))?;
        let l = lib(Residue::new(l as i64, t))?;
        write(out, lib(crt_combine(k, l))?.value(), "out")
    })
}

unsafe fn new_factor(
    out: *mut *mut ModfactFactor,
    build: impl FnOnce() -> modfact::Result<Factor>,
) -> ModfactStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = lib(build())?;
        out.write(boxed(ModfactFactor(f)));
        Ok(())
    })
}

/// `F_k` of `K_n` for odd `n`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_factor_new_modular(
    n: usize,
    k: usize,
    out: *mut *mut ModfactFactor,
) -> ModfactStatus {
    new_factor(out, || build_modular_factor(n, k))
}

/// The perfect matching `F_k` of `K_n` for even `n`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_factor_new_even(
    n: usize,
    k: usize,
    out: *mut *mut ModfactFactor,
) -> ModfactStatus {
    new_factor(out, || build_modular_factor_even(n, k))
}

/// `D_{k,l}` on `K_{st}`, with pair `(i, j)` numbered `i*t + j`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_factor_new_product(
    s: usize,
    t: usize,
    k: usize,
    l: usize,
    out: *mut *mut ModfactFactor,
) -> ModfactStatus {
    new_factor(out, || Ok(product::build_product_factor(s, t, k, l)?.to_factor()))
}

/// Parses a factor from JSON and validates it.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_factor_from_json(
    json: *const c_char,
    out: *mut *mut ModfactFactor,
) -> ModfactStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f: Factor = json_in(read_str(json)?, ModfactStatus::InvalidFactor)?;
        if let Err(v) = validate_factor(&f) {
            return Err(fail(ModfactStatus::InvalidFactor, format!("invalid factor: {v}")));
        }
        out.write(boxed(ModfactFactor(f)));
        Ok(())
    })
}

/// # Safety
/// `f` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn modfact_factor_free(f: *mut ModfactFactor) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Order of the host graph, or 0 for NULL.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn modfact_factor_order(f: *const ModfactFactor) -> usize {
    f.as_ref().map_or(0, |f| f.0.order())
}

/// Number of edges, or 0 for NULL.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn modfact_factor_edge_count(f: *const ModfactFactor) -> usize {
    f.as_ref().map_or(0, |f| f.0.edges().len())
}

/// Writes the isolated vertex to `out` and returns true, or returns false
/// when the factor covers every vertex.
///
/// # Safety
/// `f` must be NULL or a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_factor_isolated(f: *const ModfactFactor, out: *mut usize) -> bool {
    match (f.as_ref().and_then(|f| f.0.isolated()), out.is_null()) {
        (Some(v), false) => {
            out.write(v);
            true
        }
        _ => false,
    }
}

/// Copies the edges as `u0, v0, u1, v1, ...` with `u < v`, sorted.
///
/// `capacity` counts `size_t` slots. `written` receives the number of slots
/// needed; when that exceeds `capacity` nothing is copied and
/// `BufferTooSmall` is returned.
///
/// # Safety
/// `f` must be a live handle; `buf` must hold `capacity` slots; `written`
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_factor_edges(
    f: *const ModfactFactor,
    buf: *mut usize,
    capacity: usize,
    written: *mut usize,
) -> ModfactStatus {
    guard(|| {
        let f = deref(f, "factor")?;
        let needed = 2 * f.0.edges().len();
        write(written, needed, "written")?;
        if needed > capacity {
            return Err(fail(
                ModfactStatus::BufferTooSmall,
                format!("{needed} slots needed, {capacity} given"),
            ));
        }
        if needed > 0 && buf.is_null() {
            return Err(null("buf"));
        }
        for (i, e) in f.0.edges().iter().enumerate() {
            buf.add(2 * i).write(e.u());
            buf.add(2 * i + 1).write(e.v());
        }
        Ok(())
    })
}

/// Ok when the factor covers its vertices correctly, InvalidFactor otherwise.
///
/// # Safety
/// `f` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn modfact_factor_validate(f: *const ModfactFactor) -> ModfactStatus {
    guard(|| {
        let f = deref(f, "factor")?;
        validate_factor(&f.0)
            .map_err(|v| fail(ModfactStatus::InvalidFactor, format!("invalid factor: {v}")))
    })
}

/// # Safety
/// `f` must be a live handle; `out` must be valid for writes. Release the
/// string with `modfact_string_free`.
#[no_mangle]
pub unsafe extern "C" fn modfact_factor_to_json(
    f: *const ModfactFactor,
    out: *mut *mut c_char,
) -> ModfactStatus {
    guard(|| {
        let f = deref(f, "factor")?;
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(json_out(&f.0)?);
        Ok(())
    })
}

/// Whether the union of two factors is a Hamiltonian path (odd order) or
/// cycle (even order), decided by walking it.
///
/// # Safety
/// `f` and `g` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_classify_pair(
    f: *const ModfactFactor,
    g: *const ModfactFactor,
    out: *mut bool,
) -> ModfactStatus {
    guard(|| {
        let (f, g) = (deref(f, "f")?, deref(g, "g")?);
        let c = lib(pairing::classify_pair(&f.0, &g.0))?;
        write(out, c.perfect, "out")
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_is_perfect_by_gcd(
    k: usize,
    l: usize,
    n: usize,
    out: *mut bool,
) -> ModfactStatus {
    guard(|| write(out, lib(pairing::is_perfect_by_gcd(k, l, n))?, "out"))
}

/// The `i`-th edge (1-based) of the walk through `F_k ∪ F_l` on `K_n`.
///
/// # Safety
/// `u` and `v` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_nth_union_edge(
    k: usize,
    l: usize,
    n: usize,
    i: usize,
    u: *mut usize,
    v: *mut usize,
) -> ModfactStatus {
    guard(|| {
        if u.is_null() || v.is_null() {
            return Err(null("u or v"));
        }
        let (a, b) = lib(pairing::nth_union_edge(k, l, n, i))?;
        u.write(a);
        v.write(b);
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_is_perfect_product_pair(
    s: usize,
    t: usize,
    k: usize,
    l: usize,
    k2: usize,
    l2: usize,
    out: *mut bool,
) -> ModfactStatus {
    guard(|| {
        let p = lib(product::is_perfect_product_pair(s, t, (k, l), (k2, l2)))?;
        write(out, p, "out")
    })
}

/// Perfect pairs of the product family by traversal, and by the two-gcd
/// rule. Either out-pointer may be NULL.
///
/// # Safety
/// Non-NULL pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_count_perfect_product_pairs(
    s: usize,
    t: usize,
    traversal: *mut usize,
    predicted: *mut usize,
) -> ModfactStatus {
    guard(|| {
        let c = lib(product::count_perfect_product_pairs(s, t))?;
        if !traversal.is_null() {
            traversal.write(c.traversal);
        }
        if !predicted.is_null() {
            predicted.write(c.predicted);
        }
        Ok(())
    })
}

unsafe fn new_factorization(
    out: *mut *mut ModfactFactorization,
    build: impl FnOnce() -> Result<Factorization, ModfactStatus>,
) -> ModfactStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let fz = build()?;
        out.write(boxed(ModfactFactorization(fz)));
        Ok(())
    })
}

/// The family `{F_k}` of `K_n`, `n` odd.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_factorization_new_modular(
    n: usize,
    out: *mut *mut ModfactFactorization,
) -> ModfactStatus {
    new_factorization(out, || lib(build_modular_factorization(n)))
}

/// The family `{D_{k,l}}` on `K_{st}`, factor `k*t + l` at that position.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_factorization_new_product(
    s: usize,
    t: usize,
    out: *mut *mut ModfactFactorization,
) -> ModfactStatus {
    new_factorization(out, || lib(product::product_family(s, t)))
}

/// Parses and validates a factorization from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_factorization_from_json(
    json: *const c_char,
    out: *mut *mut ModfactFactorization,
) -> ModfactStatus {
    new_factorization(out, || {
        json_in(read_str(json)?, ModfactStatus::InvalidFactorization)
    })
}

/// # Safety
/// `fz` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn modfact_factorization_free(fz: *mut ModfactFactorization) {
    if !fz.is_null() {
        drop(Box::from_raw(fz));
    }
}

/// # Safety
/// `fz` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn modfact_factorization_order(fz: *const ModfactFactorization) -> usize {
    fz.as_ref().map_or(0, |fz| fz.0.order())
}

/// Number of factors, or 0 for NULL.
///
/// # Safety
/// `fz` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn modfact_factorization_len(fz: *const ModfactFactorization) -> usize {
    fz.as_ref().map_or(0, |fz| fz.0.len())
}

/// A copy of factor `index`; free it with `modfact_factor_free`.
///
/// # Safety
/// `fz` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_factorization_get(
    fz: *const ModfactFactorization,
    index: usize,
    out: *mut *mut ModfactFactor,
) -> ModfactStatus {
    guard(|| {
        let fz = deref(fz, "factorization")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let f = fz.0.factors().get(index).ok_or_else(|| {
            fail(
                ModfactStatus::InvalidArgument,
                format!("factor {index} out of range for {} factors", fz.0.len()),
            )
        })?;
        out.write(boxed(ModfactFactor(f.clone())));
        Ok(())
    })
}

/// Number of unordered perfect pairs, or 0 for NULL.
///
/// # Safety
/// `fz` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn modfact_factorization_count_perfect_pairs(
    fz: *const ModfactFactorization,
) -> usize {
    fz.as_ref().map_or(0, |fz| pairing::count_perfect_pairs(&fz.0))
}

/// # Safety
/// `fz` must be a live handle; `out` must be valid for writes. Release the
/// string with `modfact_string_free`.
#[no_mangle]
pub unsafe extern "C" fn modfact_factorization_to_json(
    fz: *const ModfactFactorization,
    out: *mut *mut c_char,
) -> ModfactStatus {
    guard(|| {
        let fz = deref(fz, "factorization")?;
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(json_out(&fz.0)?);
        Ok(())
    })
}

/// The CRT equivalence report for coprime odd `s`, `t`, as JSON.
///
/// # Safety
/// `out` must be valid for writes. Release the string with
/// `modfact_string_free`.
#[no_mangle]
pub unsafe extern "C" fn modfact_equivalence_report_json(
    s: usize,
    t: usize,
    out: *mut *mut c_char,
) -> ModfactStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let r = lib(equivalence::build_equivalence_report(s, t))?;
        out.write(json_out(&r)?);
        Ok(())
    })
}

/// Maximum number of perfect pairs over all near-one-factorizations of
/// `K_n` by exhaustive search. Order 9 returns `CostGuard` unless
/// `allow_expensive` is set.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn modfact_exact_c(
    n: usize,
    allow_expensive: bool,
    out: *mut u64,
) -> ModfactStatus {
    guard(|| write(out, lib(oracle::exact_c(n, allow_expensive))?.exact_c, "out"))
}
