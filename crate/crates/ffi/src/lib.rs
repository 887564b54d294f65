//! C ABI over `cdgl-core`.
//!
//! Models and elements cross the boundary as opaque handles that the caller
//! frees with the matching `*_free` function. Every fallible call returns a
//! [`CdglStatus`] and writes its result through an out-pointer; on failure
//! the message is available from [`cdgl_last_error_message`] on the same
//! thread. Strings returned by the library are freed with
//! [`cdgl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cdgl_core::classify::{ClassReport, Classifier, ClassifyOptions};
use cdgl_core::lie::text::parse_element;
use cdgl_core::lie::LieElement;
use cdgl_core::series::{bch, bernoulli, gauge};
use cdgl_core::simplicial::{build_model, Model, ModelDocument, SimplicialComplex};
use cdgl_core::CdglError;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdglStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    NotMaurerCartan = 5,
    CheckFailed = 6,
    Unsolved = 7,
    Panic = 8,
}

/// A built or loaded model: the cDGL of a simplicial complex.
pub struct CdglModel {
    inner: Model,
}

/// An element of a model's Lie algebra.
pub struct CdglElement {
    inner: LieElement,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(CdglStatus, String);

impl From<CdglError> for Fail {
    fn from(e: CdglError) -> Self {
        let status = match &e {
            CdglError::Parse { .. } | CdglError::UnknownGenerator(_) | CdglError::EmptyProduct => CdglStatus::Parse,
            CdglError::NotMaurerCartan | CdglError::LambdaPattern(_) => CdglStatus::NotMaurerCartan,
            CdglError::DSquaredNonzero(_) | CdglError::Verification(_) => CdglStatus::CheckFailed,
            CdglError::Unsolvable(_) | CdglError::ReductionStuck { .. } | CdglError::NonIncreasingLevels => CdglStatus::Unsolved,
            _ => CdglStatus::InvalidInput,
        };
        Fail(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CdglStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CdglStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CdglStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(CdglStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(CdglStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(CdglStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(CdglStatus::NullPointer, "null out-pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|e| Fail(CdglStatus::InvalidInput, e.to_string()))?;
    put(out, c.into_raw())
}

fn json_error(e: serde_json::Error) -> Fail {
    Fail(CdglStatus::InvalidInput, e.to_string())
}

/// The message of the last failed call on this thread, or NULL. The caller
/// frees it with `cdgl_string_free`.
#[no_mangle]
pub extern "C" fn cdgl_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cdgl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the model of a complex given as JSON (`vertices`, `facets`,
/// optional `loops`) at truncation `trunc`.
///
/// # Safety
/// `complex_json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cdgl_model_build(complex_json: *const c_char, trunc: usize, out: *mut *mut CdglModel) -> CdglStatus {
    guard(|| {
        let complex = SimplicialComplex::from_json(text(complex_json)?)?;
        let model = build_model(&complex, trunc)?;
        put(out, Box::into_raw(Box::new(CdglModel { inner: model })))
    })
}

/// Loads a model document previously produced by `cdgl_model_to_json`.
///
/// # Safety
/// `model_json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cdgl_model_load(model_json: *const c_char, out: *mut *mut CdglModel) -> CdglStatus {
    guard(|| {
        let doc: ModelDocument = serde_json::from_str(text(model_json)?).map_err(json_error)?;
        put(out, Box::into_raw(Box::new(CdglModel { inner: doc.to_model()? })))
    })
}

/// Frees a model. NULL is ignored.
///
/// # Safety
/// `model` comes from this library and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn cdgl_model_free(model: *mut CdglModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// The model document as JSON.
///
/// # Safety
/// `model` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cdgl_model_to_json(model: *const CdglModel, out: *mut *mut c_char) -> CdglStatus {
    guard(|| {
        let doc = handle(model)?.inner.to_document();
        put_string(out, serde_json::to_string(&doc).map_err(json_error)?)
    })
}

/// Number of generators of the model.
///
/// # Safety
/// `model` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cdgl_model_generator_count(model: *const CdglModel, out: *mut usize) -> CdglStatus {
    guard(|| put(out, handle(model)?.inner.ctx().len()))
}

/// Whether the differential squares to zero up to the truncation.
///
/// # Safety
/// `model` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cdgl_model_d_squared_clean(model: *const CdglModel, out: *mut bool) -> CdglStatus {
    guard(|| put(out, handle(model)?.inner.d_squared().is_clean()))
}

/// Parses an element in the model's text format (`1/2*[s0,s0_1] + s1`).
///
/// # Safety
/// `model` is a live handle; `expr` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cdgl_element_parse(
    model: *const CdglModel,
    expr: *const c_char,
    out: *mut *mut CdglElement,
) -> CdglStatus {
    guard(|| {
        let e = parse_element(handle(model)?.inner.ctx(), text(expr)?)?;
        put(out, Box::into_raw(Box::new(CdglElement { inner: e })))
    })
}

/// Frees an element. NULL is ignored.
///
/// # Safety
/// `element` comes from this library and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn cdgl_element_free(element: *mut CdglElement) {
    if !element.is_null() {
        drop(Box::from_raw(element));
    }
}

/// The element in text format.
///
/// # Safety
/// `element` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cdgl_element_to_string(element: *const CdglElement, out: *mut *mut c_char) -> CdglStatus {
    guard(|| put_string(out, handle(element)?.inner.to_string()))
}

/// Whether the element satisfies `du + ½[u,u] = 0` in the model.
///
/// # Safety
/// Both handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cdgl_element_is_mc(model: *const CdglModel, element: *const CdglElement, out: *mut bool) -> CdglStatus {
    guard(|| put(out, handle(model)?.inner.cdgl.is_mc(&handle(element)?.inner)?))
}

/// The gauge action of the degree-0 element `x` on `z`.
///
/// # Safety
/// All handles are live and from the same model; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cdgl_gauge(
    model: *const CdglModel,
    x: *const CdglElement,
    z: *const CdglElement,
    out: *mut *mut CdglElement,
) -> CdglStatus {
    guard(|| {
        let value = gauge(&handle(x)?.inner, &handle(z)?.inner, &handle(model)?.inner.cdgl)?;
        put(out, Box::into_raw(Box::new(CdglElement { inner: value })))
    })
}

/// The BCH product of two degree-0 elements.
///
/// # Safety
/// Both handles are live and share a model; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cdgl_bch(x: *const CdglElement, y: *const CdglElement, out: *mut *mut CdglElement) -> CdglStatus {
    guard(|| {
        let value = bch(&handle(x)?.inner, &handle(y)?.inner)?;
        put(out, Box::into_raw(Box::new(CdglElement { inner: value })))
    })
}

/// Classifies a Maurer-Cartan element. The JSON report holds the verdict
/// (`"zero"` or `{"component": i}`), the gauge witness and whether it was
/// verified. A negative `base_vertex` picks the smallest vertex of each
/// component.
///
/// # Safety
/// Both handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cdgl_classify(
    model: *const CdglModel,
    element: *const CdglElement,
    base_vertex: i64,
    out: *mut *mut c_char,
) -> CdglStatus {
    guard(|| {
        let model = &handle(model)?.inner;
        let u = &handle(element)?.inner;
        let options = ClassifyOptions { base_vertex: u32::try_from(base_vertex).ok(), ..ClassifyOptions::default() };
        let class = Classifier::new(model, &options)?.classify(u)?;
        put_string(out, serde_json::to_string(&ClassReport::new(u, &class)).map_err(json_error)?)
    })
}

/// Classifies 0 and every vertex generator. The JSON report holds the
/// component count, the class count and the verdict of each element.
///
/// # Safety
/// `model` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cdgl_pi0(model: *const CdglModel, out: *mut *mut c_char) -> CdglStatus {
    guard(|| {
        let report = Classifier::new(&handle(model)?.inner, &ClassifyOptions::default())?.pi0_classes()?;
        let verdicts: serde_json::Map<String, serde_json::Value> = report
            .entries
            .iter()
            .map(|(label, class)| (label.clone(), serde_json::to_value(class.verdict).expect("serializable")))
            .collect();
        let value = serde_json::json!({
            "components": report.components,
            "classes": report.count(),
            "pass": report.matches_components(),
            "verdicts": verdicts,
        });
        put_string(out, value.to_string())
    })
}

/// The Bernoulli number `B_n` as `p/q` text.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cdgl_bernoulli(n: usize, out: *mut *mut c_char) -> CdglStatus {
    guard(|| put_string(out, bernoulli(n).to_string()))
}
