//! C ABI for the `ivlev` library.
//!
//! Systems and formulas are opaque heap handles created by `*_new`/`*_parse`
//! and released by the matching `*_free`. Every fallible function returns an
//! [`IvlevStatus`]; on failure a message is available from
//! [`ivlev_last_error`] on the same thread. Strings returned through out
//! parameters are owned by the caller and released with [`ivlev_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ivlev::nmatrix::{QuantifierMode, SystemSpec};
use ivlev::proofcheck::{check_derivation, Derivation};
use ivlev::propositional::{check_tautology, Status};
use ivlev::semantics::{find_countermodel, SearchConfig, SearchOutcome};
use ivlev::syntax::{Formula, Signature};

/// Result code of every fallible call. Zero is success; errors are negative.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IvlevStatus {
    Ok = 0,
    NullArgument = -1,
    InvalidUtf8 = -2,
    UnknownSystem = -3,
    ParseError = -4,
    InvalidInput = -5,
    Internal = -6,
}

/// Outcome of a decision procedure.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IvlevVerdict {
    /// Tautology, valid up to the bound, or an accepted derivation.
    Holds = 0,
    /// A counterexample or rejection was found.
    Refuted = 1,
    /// A limit or budget ran out first.
    Undecided = 2,
}

/// Opaque handle to a logic: carrier, identity mode and quantifier mode.
pub struct IvlevSystem {
    spec: SystemSpec,
}

/// Opaque handle to a parsed formula together with its inferred signature.
pub struct IvlevFormula {
    formula: Formula,
    signature: Signature,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(IvlevStatus, String);

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', "\\0")).expect("interior NULs were escaped");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

/// Runs `body`, recording any failure or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> IvlevStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => IvlevStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            IvlevStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(IvlevStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(IvlevStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(IvlevStatus::NullArgument, format!("{what} is null")))
}

fn out_ptr<T>(p: *mut T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(IvlevStatus::NullArgument, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "\\0")).expect("interior NULs were escaped").into_raw()
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure(IvlevStatus::InvalidInput, e.to_string())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ivlev_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ivlev_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ivlev_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a system from a name such as `tm`, `t45m-c` or `km`, with
/// nondeterministic quantifiers when `nondeterministic` is true.
///
/// # Safety
/// `name` must be null or a NUL-terminated string; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ivlev_system_new(
    name: *const c_char,
    nondeterministic: bool,
    out: *mut *mut IvlevSystem,
) -> IvlevStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let name = read_str(name, "name")?;
        let spec: SystemSpec = name
            .parse()
            .map_err(|e: ivlev::nmatrix::NmatrixError| Failure(IvlevStatus::UnknownSystem, e.to_string()))?;
        let mode = if nondeterministic { QuantifierMode::Nondeterministic } else { QuantifierMode::Deterministic };
        *out = Box::into_raw(Box::new(IvlevSystem { spec: spec.with_quantifier_mode(mode) }));
        Ok(())
    })
}

/// The display name of a system, e.g. `tm-c (nd quantifiers)`.
///
/// # Safety
/// `sys` must be null or a live system handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ivlev_system_name(sys: *const IvlevSystem, out: *mut *mut c_char) -> IvlevStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = owned_string(handle(sys, "sys")?.spec.to_string());
        Ok(())
    })
}

/// # Safety
/// `sys` must be null or a handle from [`ivlev_system_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ivlev_system_free(sys: *mut IvlevSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Parses a formula. `constants` is a comma-separated list of names to read
/// as individual constants, or null.
///
/// # Safety
/// `text` and `constants` must be null or NUL-terminated; `out` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn ivlev_formula_parse(
    text: *const c_char,
    constants: *const c_char,
    out: *mut *mut IvlevFormula,
) -> IvlevStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let text = read_str(text, "text")?;
        let mut base = Signature::new();
        if !constants.is_null() {
            for c in read_str(constants, "constants")?.split(',').map(str::trim).filter(|c| !c.is_empty()) {
                base.add_constant(c).map_err(invalid)?;
            }
        }
        let (formula, signature) =
            ivlev::syntax::parse_inferred(text, &base).map_err(|e| Failure(IvlevStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(IvlevFormula { formula, signature }));
        Ok(())
    })
}

/// Prints a formula in the ASCII syntax accepted by the parser.
///
/// # Safety
/// `f` must be null or a live formula handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ivlev_formula_to_string(f: *const IvlevFormula, out: *mut *mut c_char) -> IvlevStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = owned_string(handle(f, "formula")?.formula.to_string());
        Ok(())
    })
}

/// # Safety
/// `f` must be null or a handle from [`ivlev_formula_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ivlev_formula_free(f: *mut IvlevFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Decides a propositional formula by enumerating legal valuations. A
/// `limit` of zero means no limit. When `witness_json` is not null it
/// receives the falsifying valuation as JSON, or null when there is none.
///
/// # Safety
/// Handles must be null or live; out pointers must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ivlev_check_tautology(
    sys: *const IvlevSystem,
    f: *const IvlevFormula,
    limit: u64,
    verdict: *mut IvlevVerdict,
    witness_json: *mut *mut c_char,
) -> IvlevStatus {
    guard(|| {
        out_ptr(verdict, "verdict")?;
        let (sys, f) = (handle(sys, "sys")?, handle(f, "formula")?);
        let result = check_tautology(&f.formula, &sys.spec, (limit > 0).then_some(limit)).map_err(invalid)?;
        *verdict = match result.status {
            Status::Holds => IvlevVerdict::Holds,
            Status::Refuted => IvlevVerdict::Refuted,
            Status::Undecided => IvlevVerdict::Undecided,
        };
        if !witness_json.is_null() {
            *witness_json = match &result.witness {
                Some(w) => owned_string(serde_json::to_string(w).map_err(invalid)?),
                None => ptr::null_mut(),
            };
        }
        Ok(())
    })
}

/// Searches for a countermodel with universes of size 1 to `max_universe`.
/// `budget` caps the search steps; zero selects the default. When
/// `countermodel_json` is not null it receives the countermodel as JSON, or
/// null when none was found.
///
/// # Safety
/// Handles must be null or live; out pointers must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ivlev_find_countermodel(
    sys: *const IvlevSystem,
    f: *const IvlevFormula,
    max_universe: usize,
    budget: u64,
    verdict: *mut IvlevVerdict,
    countermodel_json: *mut *mut c_char,
) -> IvlevStatus {
    guard(|| {
        out_ptr(verdict, "verdict")?;
        let (sys, f) = (handle(sys, "sys")?, handle(f, "formula")?);
        let mut config = SearchConfig { max_universe, ..Default::default() };
        if budget > 0 {
            config.budget = budget;
        }
        let outcome = find_countermodel(&f.formula, &f.signature, &sys.spec, &config).map_err(invalid)?;
        let mut json = None;
        *verdict = match &outcome {
            SearchOutcome::NoCountermodel { .. } => IvlevVerdict::Holds,
            SearchOutcome::BudgetExhausted { .. } => IvlevVerdict::Undecided,
            SearchOutcome::Countermodel(cm) => {
                json = Some(serde_json::to_string(cm).map_err(invalid)?);
                IvlevVerdict::Refuted
            }
        };
        if !countermodel_json.is_null() {
            *countermodel_json = json.map_or(ptr::null_mut(), owned_string);
        }
        Ok(())
    })
}

/// Checks a derivation given as a JSON document. The verdict is Holds for
/// an accepted derivation and Refuted for a rejected one. When
/// `report_json` is not null it receives the full check report as JSON.
///
/// # Safety
/// `document` must be null or NUL-terminated; out pointers must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ivlev_check_proof(
    document: *const c_char,
    verdict: *mut IvlevVerdict,
    report_json: *mut *mut c_char,
) -> IvlevStatus {
    guard(|| {
        out_ptr(verdict, "verdict")?;
        let document = read_str(document, "document")?;
        let derivation = Derivation::from_json(document).map_err(invalid)?;
        let report = check_derivation(&derivation);
        *verdict = if report.is_accepted() { IvlevVerdict::Holds } else { IvlevVerdict::Refuted };
        if !report_json.is_null() {
            *report_json = owned_string(report.to_json());
        }
        Ok(())
    })
}
