//! C ABI over the core checks.
//!
//! Conventions: every entry point returns an [`LdtStatus`]; results come
//! back through out parameters. Handles are opaque ([`LdtGraph`],
//! [`LdtMatrix`]) and must be released with their matching free
//! functions; strings returned through `*mut *mut c_char` are owned by
//! the caller and released with [`ldt_string_free`]. Passing a handle to
//! the wrong free function, using it after free, or freeing twice is
//! undefined behavior, as with any C library. Panics never cross the
//! boundary; they surface as `LDT_STATUS_PANIC`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lindet::cramer::{cramer_solve, verify_cramer_identity, LinearSystem};
use lindet::involution::verify_theorem_proof;
use lindet::io::{parse_digraph_json, parse_matrix_json};
use lindet::lgv::{lgv_check, per_check};
use lindet::ring::Literal;
use lindet::sumident::{
    alternating_sum_det, alternating_sum_per, pie_decomposition_check, MatrixTuple,
};
use lindet::walks::{closed_walk_sum, linear_sub_signed_sum, newton_residual};
use lindet::{Error, Matrix, WeightedDigraph};

/// Status code returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LdtStatus {
    /// Success; for check functions, the identity held exactly.
    Ok = 0,
    /// The asserted identity was violated.
    IdentityFailed = 1,
    /// Malformed input: bad JSON, bad literal, shape or mode mismatch.
    InvalidInput = 2,
    /// An enumeration cap was exceeded.
    CapExceeded = 3,
    /// A required pointer argument was null.
    NullArgument = 4,
    /// A string argument was not valid UTF-8.
    Utf8 = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
}

/// Opaque weighted digraph handle.
pub struct LdtGraph {
    inner: WeightedDigraph,
}

/// Opaque exact matrix handle.
pub struct LdtMatrix {
    inner: Matrix,
}

fn err_status(e: &Error) -> LdtStatus {
    match e.exit_code() {
        3 => LdtStatus::CapExceeded,
        _ => LdtStatus::InvalidInput,
    }
}

fn guarded(f: impl FnOnce() -> LdtStatus) -> LdtStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(LdtStatus::Panic)
}

/// Reads a required incoming string; the caller keeps ownership.
unsafe fn str_in<'a>(p: *const c_char) -> Result<&'a str, LdtStatus> {
    if p.is_null() {
        return Err(LdtStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| LdtStatus::Utf8)
}

/// Hands a string to the caller. Canonical literals never contain NUL.
unsafe fn str_out(s: String, out: *mut *mut c_char) -> LdtStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            LdtStatus::Ok
        }
        Err(_) => LdtStatus::InvalidInput,
    }
}

unsafe fn slice_in<'a, T>(p: *const T, len: usize) -> Result<&'a [T], LdtStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(LdtStatus::NullArgument);
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn ldt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string produced by this library.
#[no_mangle]
pub unsafe extern "C" fn ldt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a digraph from JSON:
/// {"n": 2, "edges": [{"from": 0, "to": 1, "weight": "2"}]}.
#[no_mangle]
pub unsafe extern "C" fn ldt_graph_from_json(
    json: *const c_char,
    out: *mut *mut LdtGraph,
) -> LdtStatus {
    guarded(|| {
        if out.is_null() {
            return LdtStatus::NullArgument;
        }
        let text = match str_in(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_digraph_json(text).and_then(|raw| raw.infer_and_build()) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(LdtGraph { inner: g }));
                LdtStatus::Ok
            }
            Err(e) => err_status(&e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn ldt_graph_free(g: *mut LdtGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Parses a matrix from JSON: {"rows": [["1", "2"], ["3", "4"]]}.
#[no_mangle]
pub unsafe extern "C" fn ldt_matrix_from_json(
    json: *const c_char,
    out: *mut *mut LdtMatrix,
) -> LdtStatus {
    guarded(|| {
        if out.is_null() {
            return LdtStatus::NullArgument;
        }
        let text = match str_in(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_matrix_json(text).and_then(|raw| raw.infer_and_build()) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(LdtMatrix { inner: m }));
                LdtStatus::Ok
            }
            Err(e) => err_status(&e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn ldt_matrix_free(m: *mut LdtMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

unsafe fn matrix_value(
    m: *const LdtMatrix,
    out: *mut *mut c_char,
    f: impl FnOnce(&Matrix) -> lindet::Result<String>,
) -> LdtStatus {
    guarded(|| {
        if m.is_null() || out.is_null() {
            return LdtStatus::NullArgument;
        }
        match f(&(*m).inner) {
            Ok(s) => str_out(s, out),
            Err(e) => err_status(&e),
        }
    })
}

/// Determinant as a canonical literal string.
#[no_mangle]
pub unsafe extern "C" fn ldt_matrix_det(
    m: *const LdtMatrix,
    out: *mut *mut c_char,
) -> LdtStatus {
    matrix_value(m, out, |m| Ok(m.det()?.to_string()))
}

/// Permanent as a canonical literal string.
#[no_mangle]
pub unsafe extern "C" fn ldt_matrix_per(
    m: *const LdtMatrix,
    out: *mut *mut c_char,
) -> LdtStatus {
    matrix_value(m, out, |m| Ok(m.per()?.to_string()))
}

/// Characteristic polynomial as a JSON array of canonical literals,
/// degree n down to 0.
#[no_mangle]
pub unsafe extern "C" fn ldt_matrix_charpoly(
    m: *const LdtMatrix,
    out: *mut *mut c_char,
) -> LdtStatus {
    matrix_value(m, out, |m| {
        let coeffs: Vec<String> = m.charpoly()?.iter().map(|c| c.to_string()).collect();
        Ok(serde_json::to_string(&coeffs).expect("string array serialization"))
    })
}

unsafe fn graph_value(
    g: *const LdtGraph,
    out: *mut *mut c_char,
    f: impl FnOnce(&WeightedDigraph) -> lindet::Result<String>,
) -> LdtStatus {
    guarded(|| {
        if g.is_null() || out.is_null() {
            return LdtStatus::NullArgument;
        }
        match f(&(*g).inner) {
            Ok(s) => str_out(s, out),
            Err(e) => err_status(&e),
        }
    })
}

/// c_r: weight sum over closed walks of length r.
#[no_mangle]
pub unsafe extern "C" fn ldt_closed_walk_sum(
    g: *const LdtGraph,
    r: usize,
    out: *mut *mut c_char,
) -> LdtStatus {
    graph_value(g, out, |g| Ok(closed_walk_sum(g, r)?.to_string()))
}

/// l_r: signed weight sum over linear subdigraphs on r vertices.
#[no_mangle]
pub unsafe extern "C" fn ldt_linear_sub_signed_sum(
    g: *const LdtGraph,
    r: usize,
    out: *mut *mut c_char,
) -> LdtStatus {
    graph_value(g, out, |g| Ok(linear_sub_signed_sum(g, r)?.to_string()))
}

/// The Newton-Girard residual at r; "0" exactly when the identity holds.
#[no_mangle]
pub unsafe extern "C" fn ldt_newton_residual(
    g: *const LdtGraph,
    r: usize,
    out: *mut *mut c_char,
) -> LdtStatus {
    graph_value(g, out, |g| Ok(newton_residual(g, r)?.to_string()))
}

unsafe fn graph_check(
    g: *const LdtGraph,
    f: impl FnOnce(&WeightedDigraph) -> lindet::Result<bool>,
) -> LdtStatus {
    guarded(|| {
        if g.is_null() {
            return LdtStatus::NullArgument;
        }
        match f(&(*g).inner) {
            Ok(true) => LdtStatus::Ok,
            Ok(false) => LdtStatus::IdentityFailed,
            Err(e) => err_status(&e),
        }
    })
}

/// Checks that the Newton-Girard residual at r is exactly zero.
#[no_mangle]
pub unsafe extern "C" fn ldt_check_newton(g: *const LdtGraph, r: usize) -> LdtStatus {
    graph_check(g, |g| Ok(newton_residual(g, r)?.is_zero()))
}

/// Runs the full involution certificate at r.
#[no_mangle]
pub unsafe extern "C" fn ldt_check_involution(g: *const LdtGraph, r: usize) -> LdtStatus {
    graph_check(g, |g| Ok(verify_theorem_proof(g, r)?.pass))
}

/// Path-matrix identity over (sources, sinks): determinant when
/// `permanent` is false, the permanent analogue when true.
#[no_mangle]
pub unsafe extern "C" fn ldt_check_lgv(
    g: *const LdtGraph,
    sources: *const usize,
    n_sources: usize,
    sinks: *const usize,
    n_sinks: usize,
    permanent: bool,
) -> LdtStatus {
    guarded(|| {
        if g.is_null() {
            return LdtStatus::NullArgument;
        }
        let src = match slice_in(sources, n_sources) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let snk = match slice_in(sinks, n_sinks) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let result = if permanent {
            per_check(&(*g).inner, src, snk).map(|r| r.pass)
        } else {
            lgv_check(&(*g).inner, src, snk).map(|r| r.pass)
        };
        match result {
            Ok(true) => LdtStatus::Ok,
            Ok(false) => LdtStatus::IdentityFailed,
            Err(e) => err_status(&e),
        }
    })
}

/// Verifies the symbolic Cramer identity for dimension n, column k
/// (1-based).
#[no_mangle]
pub extern "C" fn ldt_check_cramer_identity(n: usize, k: usize) -> LdtStatus {
    guarded(|| match verify_cramer_identity(n, k) {
        Ok(rep) if rep.pass => LdtStatus::Ok,
        Ok(_) => LdtStatus::IdentityFailed,
        Err(e) => err_status(&e),
    })
}

/// Solves A*x = b exactly. `rhs` is a single-column (or single-row)
/// matrix; the solution comes back as a JSON array of canonical
/// literals. Singular systems report `LDT_STATUS_INVALID_INPUT`.
#[no_mangle]
pub unsafe extern "C" fn ldt_solve_cramer(
    matrix: *const LdtMatrix,
    rhs: *const LdtMatrix,
    out: *mut *mut c_char,
) -> LdtStatus {
    guarded(|| {
        if matrix.is_null() || rhs.is_null() || out.is_null() {
            return LdtStatus::NullArgument;
        }
        let a = (*matrix).inner.clone();
        let bm = &(*rhs).inner;
        let b: Vec<_> = if bm.cols() == 1 {
            (0..bm.rows()).map(|i| bm.get(i, 0).clone()).collect()
        } else if bm.rows() == 1 {
            (0..bm.cols()).map(|j| bm.get(0, j).clone()).collect()
        } else {
            return LdtStatus::InvalidInput;
        };
        let solved = LinearSystem::new(a, b).and_then(|sys| cramer_solve(&sys));
        match solved {
            Ok(x) => {
                let lits: Vec<String> = x.iter().map(|w| w.to_string()).collect();
                str_out(
                    serde_json::to_string(&lits).expect("string array serialization"),
                    out,
                )
            }
            Err(e) => err_status(&e),
        }
    })
}

/// Checks the alternating-sum identity over a tuple of matrix handles.
/// With `pie` the full inclusion-exclusion certificate runs on the boxes
/// digraph; otherwise both alternating sums are checked to vanish. When
/// the hypothesis N >= n+1 fails, nothing is asserted beyond the
/// certificate's bookkeeping.
#[no_mangle]
pub unsafe extern "C" fn ldt_check_sumident(
    matrices: *const *const LdtMatrix,
    len: usize,
    pie: bool,
) -> LdtStatus {
    guarded(|| {
        let handles = match slice_in(matrices, len) {
            Ok(h) => h,
            Err(st) => return st,
        };
        let mut mats = Vec::with_capacity(handles.len());
        for &h in handles {
            if h.is_null() {
                return LdtStatus::NullArgument;
            }
            mats.push((*h).inner.clone());
        }
        let t = match MatrixTuple::new(mats) {
            Ok(t) => t,
            Err(e) => return err_status(&e),
        };
        let result = if pie {
            pie_decomposition_check(&t).map(|rep| rep.pass)
        } else if t.len() >= t.n() + 1 {
            alternating_sum_det(&t).and_then(|d| {
                alternating_sum_per(&t).map(|p| d.is_zero() && p.is_zero())
            })
        } else {
            Ok(true)
        };
        match result {
            Ok(true) => LdtStatus::Ok,
            Ok(false) => LdtStatus::IdentityFailed,
            Err(e) => err_status(&e),
        }
    })
}

/// Parses a weight literal in the input grammar (integer, fraction, or
/// variable) and echoes its canonical rendering; a cheap validity probe
/// for host languages.
#[no_mangle]
pub unsafe extern "C" fn ldt_literal_canonical(
    literal: *const c_char,
    symbolic: bool,
    out: *mut *mut c_char,
) -> LdtStatus {
    guarded(|| {
        if out.is_null() {
            return LdtStatus::NullArgument;
        }
        let text = match str_in(literal) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let mode = if symbolic {
            lindet::Mode::Symbolic
        } else {
            lindet::Mode::Rational
        };
        match Literal::parse(text).and_then(|lit| lit.to_weight(mode)) {
            Ok(w) => str_out(w.to_string(), out),
            Err(e) => err_status(&e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take_string(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        ldt_string_free(p);
        s
    }

    unsafe fn graph(json: &str) -> *mut LdtGraph {
        let mut g = ptr::null_mut();
        assert_eq!(ldt_graph_from_json(cstr(json).as_ptr(), &mut g), LdtStatus::Ok);
        g
    }

    unsafe fn matrix(json: &str) -> *mut LdtMatrix {
        let mut m = ptr::null_mut();
        assert_eq!(ldt_matrix_from_json(cstr(json).as_ptr(), &mut m), LdtStatus::Ok);
        m
    }

    #[test]
    fn version_is_static() {
        let v = unsafe { CStr::from_ptr(ldt_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn matrix_values_round_trip() {
        unsafe {
            let m = matrix(r#"{"rows": [["1", "2"], ["3", "4"]]}"#);
            let mut out = ptr::null_mut();
            assert_eq!(ldt_matrix_det(m, &mut out), LdtStatus::Ok);
            assert_eq!(take_string(out), "-2");
            assert_eq!(ldt_matrix_per(m, &mut out), LdtStatus::Ok);
            assert_eq!(take_string(out), "10");
            assert_eq!(ldt_matrix_charpoly(m, &mut out), LdtStatus::Ok);
            assert_eq!(take_string(out), r#"["1","-5","-2"]"#);
            ldt_matrix_free(m);
        }
    }

    #[test]
    fn newton_walk_and_subdigraph_sums() {
        unsafe {
            let g = graph(r#"{"n": 1, "edges": [{"from": 0, "to": 0, "weight": "2"}]}"#);
            let mut out = ptr::null_mut();
            assert_eq!(ldt_closed_walk_sum(g, 3, &mut out), LdtStatus::Ok);
            assert_eq!(take_string(out), "8");
            assert_eq!(ldt_linear_sub_signed_sum(g, 1, &mut out), LdtStatus::Ok);
            assert_eq!(take_string(out), "-2");
            assert_eq!(ldt_newton_residual(g, 3, &mut out), LdtStatus::Ok);
            assert_eq!(take_string(out), "0");
            assert_eq!(ldt_check_newton(g, 3), LdtStatus::Ok);
            assert_eq!(ldt_check_involution(g, 2), LdtStatus::Ok);
            ldt_graph_free(g);
        }
    }

    #[test]
    fn lgv_and_cramer_checks() {
        unsafe {
            let g = graph(
                r#"{"n": 4, "edges": [
                    {"from": 0, "to": 2, "weight": "2"},
                    {"from": 0, "to": 3, "weight": "3"},
                    {"from": 1, "to": 3, "weight": "5"}
                ]}"#,
            );
            let sources = [0usize, 1];
            let sinks = [2usize, 3];
            assert_eq!(
                ldt_check_lgv(g, sources.as_ptr(), 2, sinks.as_ptr(), 2, false),
                LdtStatus::Ok
            );
            assert_eq!(
                ldt_check_lgv(g, sources.as_ptr(), 2, sinks.as_ptr(), 2, true),
                LdtStatus::Ok
            );
            ldt_graph_free(g);
        }
        assert_eq!(ldt_check_cramer_identity(2, 1), LdtStatus::Ok);
        assert_eq!(ldt_check_cramer_identity(2, 5), LdtStatus::InvalidInput);
    }

    #[test]
    fn cramer_solver_and_singularity() {
        unsafe {
            let a = matrix(r#"{"rows": [["1", "2"], ["3", "4"]]}"#);
            let b = matrix(r#"{"rows": [["5"], ["6"]]}"#);
            let mut out = ptr::null_mut();
            assert_eq!(ldt_solve_cramer(a, b, &mut out), LdtStatus::Ok);
            assert_eq!(take_string(out), r#"["-4","9/2"]"#);
            ldt_matrix_free(a);

            let s = matrix(r#"{"rows": [["1", "1"], ["1", "1"]]}"#);
            assert_eq!(ldt_solve_cramer(s, b, &mut out), LdtStatus::InvalidInput);
            ldt_matrix_free(s);
            ldt_matrix_free(b);
        }
    }

    #[test]
    fn sumident_checks() {
        unsafe {
            let a = matrix(r#"{"rows": [["1", "2"], ["3", "4"]]}"#);
            let b = matrix(r#"{"rows": [["0", "1"], ["1", "0"]]}"#);
            let c = matrix(r#"{"rows": [["2", "0"], ["1", "1"]]}"#);
            let tuple = [a as *const _, b as *const _, c as *const _];
            assert_eq!(ldt_check_sumident(tuple.as_ptr(), 3, false), LdtStatus::Ok);
            assert_eq!(ldt_check_sumident(tuple.as_ptr(), 3, true), LdtStatus::Ok);
            ldt_matrix_free(a);
            ldt_matrix_free(b);
            ldt_matrix_free(c);
        }
    }

    #[test]
    fn status_edges() {
        unsafe {
            let mut g = ptr::null_mut();
            assert_eq!(
                ldt_graph_from_json(ptr::null(), &mut g),
                LdtStatus::NullArgument
            );
            assert_eq!(
                ldt_graph_from_json(cstr("not json").as_ptr(), &mut g),
                LdtStatus::InvalidInput
            );
            let bad = CString::from_vec_with_nul(b"\xff\xfe\0".to_vec()).unwrap();
            assert_eq!(
                ldt_graph_from_json(bad.as_ptr(), &mut g),
                LdtStatus::Utf8
            );
            let mut m = ptr::null_mut();
            let rows: Vec<Vec<String>> =
                (0..11).map(|i| (0..11).map(|j| format!("{}", i + j)).collect()).collect();
            let big = format!(
                r#"{{"rows": {}}}"#,
                serde_json::to_string(&rows).unwrap()
            );
            assert_eq!(
                ldt_matrix_from_json(cstr(&big).as_ptr(), &mut m),
                LdtStatus::Ok
            );
            let mut out = ptr::null_mut();
            assert_eq!(ldt_matrix_det(m, &mut out), LdtStatus::CapExceeded);
            ldt_matrix_free(m);

            let mut lit = ptr::null_mut();
            assert_eq!(
                ldt_literal_canonical(cstr("x").as_ptr(), true, &mut lit),
                LdtStatus::InvalidInput
            );
            assert_eq!(
                ldt_literal_canonical(cstr("-7/3").as_ptr(), false, &mut lit),
                LdtStatus::Ok
            );
            assert_eq!(take_string(lit), "-7/3");
        }
    }
}
