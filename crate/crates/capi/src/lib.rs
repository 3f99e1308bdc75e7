//! C ABI for the tcensus library.
//!
//! Conventions:
//! - Every fallible function returns a `tc_status` code; `TC_OK` is 0.
//! - Curves are opaque handles created by `tc_curve_new` and released with
//!   `tc_curve_free`.
//! - Integer inputs and outputs that can exceed 64 bits (coefficients,
//!   heights) travel as decimal strings. Strings returned through `char **`
//!   are owned by the caller and must be released with `tc_string_free`.
//! - On error, a thread-local message with details is available via
//!   `tc_last_error`; it stays valid until the next failing call on the
//!   same thread.
//!
//! The matching header is `include/tcensus.h`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use tcensus::census::{run_census, slope_report};
use tcensus::regions::ConstantsReport;
use tcensus::torsion::TorsionGroup;
use tcensus::{is_minimal, minimal_reduce, torsion_subgroup, ShortCurve};

/// Status codes. Keep in sync with `tc_status` in include/tcensus.h.
pub const TC_OK: i32 = 0;
pub const TC_ERR_NULL_ARG: i32 = 1;
pub const TC_ERR_PARSE: i32 = 2;
pub const TC_ERR_SINGULAR: i32 = 3;
pub const TC_ERR_INVALID: i32 = 4;
pub const TC_ERR_INTERNAL: i32 = 5;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(code: i32, msg: impl AsRef<str>) -> i32 {
    let clean: String = msg.as_ref().chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).unwrap());
    code
}

/// Message for the most recent error on this thread. Never null; empty
/// string if no error has occurred. The pointer is invalidated by the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn tc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn tc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Release a string returned by this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn out_string(s: String, out: *mut *mut c_char) -> i32 {
    let c = match CString::new(s) {
        Ok(c) => c,
        Err(e) => return set_error(TC_ERR_INTERNAL, e.to_string()),
    };
    unsafe { *out = c.into_raw() };
    TC_OK
}

unsafe fn parse_c_str<'a>(p: *const c_char) -> Result<&'a str, i32> {
    if p.is_null() {
        return Err(set_error(TC_ERR_NULL_ARG, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| set_error(TC_ERR_PARSE, format!("invalid utf-8: {e}")))
}

fn parse_i128(s: &str) -> Result<i128, i32> {
    s.trim()
        .parse::<i128>()
        .map_err(|e| set_error(TC_ERR_PARSE, format!("not a 128-bit integer: {s:?}: {e}")))
}

/// Opaque curve handle: y^2 = x^3 + Ax + B with integer A, B.
pub struct TcCurve {
    inner: ShortCurve,
}

/// Create a curve from decimal coefficient strings (each must fit in a
/// signed 128-bit integer). Fails with TC_ERR_SINGULAR when
/// 4A^3 + 27B^2 = 0.
#[no_mangle]
pub unsafe extern "C" fn tc_curve_new(
    a_decimal: *const c_char,
    b_decimal: *const c_char,
    out: *mut *mut TcCurve,
) -> i32 {
    if out.is_null() {
        return set_error(TC_ERR_NULL_ARG, "null output pointer");
    }
    let (a, b) = match (|| {
        let a = parse_i128(parse_c_str(a_decimal)?)?;
        let b = parse_i128(parse_c_str(b_decimal)?)?;
        Ok::<_, i32>((a, b))
    })() {
        Ok(v) => v,
        Err(code) => return code,
    };
    match ShortCurve::new(a, b) {
        Ok(c) => {
            *out = Box::into_raw(Box::new(TcCurve { inner: c }));
            TC_OK
        }
        Err(e) => set_error(TC_ERR_SINGULAR, e.to_string()),
    }
}

/// Release a curve handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn tc_curve_free(c: *mut TcCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

unsafe fn curve_ref<'a>(c: *const TcCurve) -> Result<&'a ShortCurve, i32> {
    if c.is_null() {
        return Err(set_error(TC_ERR_NULL_ARG, "null curve handle"));
    }
    Ok(&(*c).inner)
}

/// Coefficient A as a decimal string (caller frees).
#[no_mangle]
pub unsafe extern "C" fn tc_curve_a(c: *const TcCurve, out: *mut *mut c_char) -> i32 {
    if out.is_null() {
        return set_error(TC_ERR_NULL_ARG, "null output pointer");
    }
    match curve_ref(c) {
        Ok(cv) => out_string(cv.a.to_string(), out),
        Err(code) => code,
    }
}

/// Coefficient B as a decimal string (caller frees).
#[no_mangle]
pub unsafe extern "C" fn tc_curve_b(c: *const TcCurve, out: *mut *mut c_char) -> i32 {
    if out.is_null() {
        return set_error(TC_ERR_NULL_ARG, "null output pointer");
    }
    match curve_ref(c) {
        Ok(cv) => out_string(cv.b.to_string(), out),
        Err(code) => code,
    }
}

/// Naive height max(|A|^3, B^2) as a decimal string (caller frees).
#[no_mangle]
pub unsafe extern "C" fn tc_curve_height(c: *const TcCurve, out: *mut *mut c_char) -> i32 {
    if out.is_null() {
        return set_error(TC_ERR_NULL_ARG, "null output pointer");
    }
    match curve_ref(c) {
        Ok(cv) => out_string(cv.height().to_string(), out),
        Err(code) => code,
    }
}

/// 1 if no prime p has p^4 | A and p^6 | B, 0 otherwise, -1 on error.
#[no_mangle]
pub unsafe extern "C" fn tc_curve_is_minimal(c: *const TcCurve) -> i32 {
    match curve_ref(c) {
        Ok(cv) => is_minimal(cv.a, cv.b) as i32,
        Err(_) => -1,
    }
}

/// Replace the curve in place by its minimal quadratic twist representative
/// (divide out every p^4 | A, p^6 | B).
#[no_mangle]
pub unsafe extern "C" fn tc_curve_minimal_reduce(c: *mut TcCurve) -> i32 {
    if c.is_null() {
        return set_error(TC_ERR_NULL_ARG, "null curve handle");
    }
    let cur = &mut (*c).inner;
    match minimal_reduce(cur.a, cur.b) {
        Ok((a, b)) => {
            cur.a = a;
            cur.b = b;
            TC_OK
        }
        Err(e) => set_error(TC_ERR_INVALID, e.to_string()),
    }
}

/// Torsion subgroup of E(Q) as Z/n1 x Z/n2 with n1 | n2: cyclic Z/N comes
/// back as (1, N), the full 2-torsion families as (2, N). Any output
/// pointer may be null to skip that field.
#[no_mangle]
pub unsafe extern "C" fn tc_curve_torsion(
    c: *const TcCurve,
    n1: *mut u32,
    n2: *mut u32,
    order: *mut u32,
) -> i32 {
    let cv = match curve_ref(c) {
        Ok(cv) => *cv,
        Err(code) => return code,
    };
    let group = match catch_unwind(AssertUnwindSafe(|| torsion_subgroup(&cv))) {
        Ok(g) => g,
        Err(_) => return set_error(TC_ERR_INTERNAL, "internal panic in torsion_subgroup"),
    };
    let (a, b) = match group {
        TorsionGroup::Cyclic(n) => (1, u32::from(n)),
        TorsionGroup::Product(n) => (2, u32::from(n)),
    };
    if !n1.is_null() {
        *n1 = a;
    }
    if !n2.is_null() {
        *n2 = b;
    }
    if !order.is_null() {
        *order = a * b;
    }
    TC_OK
}

/// All derived constants (quartic roots, boundary integrals, areas, zeta
/// values, c1/c2/c3 with the printed decimals they are compared against)
/// as a JSON object string (caller frees).
#[no_mangle]
pub unsafe extern "C" fn tc_constants_json(out: *mut *mut c_char) -> i32 {
    if out.is_null() {
        return set_error(TC_ERR_NULL_ARG, "null output pointer");
    }
    let rep = match catch_unwind(|| {
        let mut rep = ConstantsReport::compute();
        if let Ok(sign) = tcensus::families::z3_g_sign() {
            rep.z3_g_sign = sign;
        }
        rep
    }) {
        Ok(r) => r,
        Err(_) => return set_error(TC_ERR_INTERNAL, "internal panic computing constants"),
    };
    match serde_json::to_string_pretty(&rep) {
        Ok(s) => out_string(s, out),
        Err(e) => set_error(TC_ERR_INTERNAL, e.to_string()),
    }
}

/// Count minimal curves of height < X by torsion subgroup. `max_height` is
/// a decimal string; counts come back as a JSON object
/// `{"max_height": ..., "total": ..., "groups": [{"group", "exact",
/// "contains"}, ...], "slopes": [...]}` (caller frees). Exact counts
/// partition the census by the full torsion subgroup; "contains" counts
/// curves whose torsion contains the group. Runtime grows like X^(5/6).
#[no_mangle]
pub unsafe extern "C" fn tc_census_json(
    max_height: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    if out.is_null() {
        return set_error(TC_ERR_NULL_ARG, "null output pointer");
    }
    let x = match parse_c_str(max_height).and_then(|s| {
        s.trim()
            .parse::<u128>()
            .map_err(|e| set_error(TC_ERR_PARSE, format!("not an unsigned integer: {s:?}: {e}")))
    }) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let table = match catch_unwind(|| run_census(x, &[])) {
        Ok(Ok(t)) => t,
        Ok(Err(e)) => return set_error(TC_ERR_INVALID, e.to_string()),
        Err(_) => return set_error(TC_ERR_INTERNAL, "internal panic in census"),
    };
    let slopes = slope_report(&table);
    let last = table.checkpoints.len() - 1;
    let groups: Vec<serde_json::Value> = tcensus::torsion::MAZUR_GROUPS
        .iter()
        .enumerate()
        .map(|(i, g)| {
            serde_json::json!({
                "group": g.to_string(),
                "exact": table.exact[last][i],
                "contains": table.contains[last][i],
            })
        })
        .collect();
    let doc = serde_json::json!({
        "max_height": x.to_string(),
        "total": table.total(last),
        "groups": groups,
        "slopes": slopes,
    });
    match serde_json::to_string_pretty(&doc) {
        Ok(s) => out_string(s, out),
        Err(e) => set_error(TC_ERR_INTERNAL, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    unsafe fn take_string(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        tc_string_free(p);
        s
    }

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn curve_roundtrip() {
        unsafe {
            let mut c: *mut TcCurve = ptr::null_mut();
            let (a, b) = (cstr("-43"), cstr("166"));
            assert_eq!(tc_curve_new(a.as_ptr(), b.as_ptr(), &mut c), TC_OK);
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(tc_curve_height(c, &mut out), TC_OK);
            assert_eq!(take_string(out), "79507");
            assert_eq!(tc_curve_is_minimal(c), 1);
            let (mut n1, mut n2, mut order) = (0u32, 0u32, 0u32);
            assert_eq!(tc_curve_torsion(c, &mut n1, &mut n2, &mut order), TC_OK);
            assert_eq!((n1, n2, order), (1, 7, 7));
            tc_curve_free(c);
        }
    }

    #[test]
    fn minimal_reduce_in_place() {
        unsafe {
            let mut c: *mut TcCurve = ptr::null_mut();
            // (A, B) = (2^4 * 1, 2^6 * 1) reduces to (1, 1).
            let (a, b) = (cstr("16"), cstr("64"));
            assert_eq!(tc_curve_new(a.as_ptr(), b.as_ptr(), &mut c), TC_OK);
            assert_eq!(tc_curve_is_minimal(c), 0);
            assert_eq!(tc_curve_minimal_reduce(c), TC_OK);
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(tc_curve_a(c, &mut out), TC_OK);
            assert_eq!(take_string(out), "1");
            assert_eq!(tc_curve_b(c, &mut out), TC_OK);
            assert_eq!(take_string(out), "1");
            tc_curve_free(c);
        }
    }

    #[test]
    fn singular_and_parse_errors() {
        unsafe {
            let mut c: *mut TcCurve = ptr::null_mut();
            let (a, b) = (cstr("0"), cstr("0"));
            assert_eq!(tc_curve_new(a.as_ptr(), b.as_ptr(), &mut c), TC_ERR_SINGULAR);
            assert!(!CStr::from_ptr(tc_last_error()).to_bytes().is_empty());
            let bad = cstr("not a number");
            assert_eq!(tc_curve_new(bad.as_ptr(), b.as_ptr(), &mut c), TC_ERR_PARSE);
            assert_eq!(
                tc_curve_new(ptr::null(), b.as_ptr(), &mut c),
                TC_ERR_NULL_ARG
            );
        }
    }

    #[test]
    fn constants_json_has_c1() {
        unsafe {
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(tc_constants_json(&mut out), TC_OK);
            let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
            let c1 = doc["c1"].as_f64().unwrap();
            assert!((c1 - 3.9960265).abs() < 1e-4, "c1 = {c1}");
            assert_eq!(doc["z3_g_sign"].as_str().unwrap(), "-2/3 t");
        }
    }

    #[test]
    fn census_json_small() {
        unsafe {
            let mut out: *mut c_char = ptr::null_mut();
            let x = cstr("1000");
            assert_eq!(tc_census_json(x.as_ptr(), &mut out), TC_OK);
            let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(doc["groups"].as_array().unwrap().len(), 15);
            assert!(doc["total"].as_u64().unwrap() > 0);
        }
    }
}
