//! C ABI over `hyperform`.
//!
//! Values cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns an
//! [`HfStatus`]; on failure the message is kept per thread and read with
//! [`hf_last_error`]. Strings returned through out-parameters are released
//! with [`hf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hyperform::cli::{self, FamilyFile, Workspace};
use hyperform::{derive, direct_sum, Hypergraph, Transformation};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    NotFound = 5,
    Domain = 6,
    Panic = 7,
}

/// A hypergraph value.
pub struct HfHypergraph(Hypergraph);

/// A loaded family file.
pub struct HfFamilyFile(Workspace);

/// A derived transformation.
pub struct HfTransformation(Transformation);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(HfStatus, String);

impl Failure {
    fn new(status: HfStatus, message: impl std::fmt::Display) -> Self {
        Failure(status, message.to_string())
    }
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, records its failure message, and converts panics to
/// [`HfStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            HfStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HfStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(HfStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure::new(HfStatus::InvalidUtf8, e))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(HfStatus::NullArgument, "null handle"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(HfStatus::NullArgument, "null out-parameter"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(HfStatus::NullArgument, "null out-parameter"));
    }
    *out = CString::new(s).map_err(|e| Failure::new(HfStatus::Invalid, e))?.into_raw();
    Ok(())
}

unsafe fn put_count(out: *mut usize, n: usize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(HfStatus::NullArgument, "null out-parameter"));
    }
    *out = n;
    Ok(())
}

fn cli_failure(e: cli::CliError) -> Failure {
    let status = if e.code.starts_with("name/") {
        HfStatus::NotFound
    } else if e.exit == 1 {
        HfStatus::Domain
    } else {
        HfStatus::Parse
    };
    Failure::new(status, format!("error[{}]: {}", e.code, e.message))
}

/// The message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hf_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is NULL or a string returned through an out-parameter of this library
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn hf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the text form `<{a,b}; {e:{a,b}}>`.
///
/// # Safety
/// `src` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_parse(src: *const c_char, out: *mut *mut HfHypergraph) -> HfStatus {
    guard(|| {
        let h: Hypergraph = text(src)?.parse().map_err(|e| Failure::new(HfStatus::Parse, e))?;
        put(out, HfHypergraph(h))
    })
}

/// Parses the JSON form `{"vertices": [...], "edges": {...}}`.
///
/// # Safety
/// `src` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_from_json(src: *const c_char, out: *mut *mut HfHypergraph) -> HfStatus {
    guard(|| {
        let h: Hypergraph = serde_json::from_str(text(src)?).map_err(|e| Failure::new(HfStatus::Parse, e))?;
        put(out, HfHypergraph(h))
    })
}

/// # Safety
/// `h` is NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_free(h: *mut HfHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_to_string(h: *const HfHypergraph, out: *mut *mut c_char) -> HfStatus {
    guard(|| put_string(out, handle(h)?.0.to_string()))
}

/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_to_json(h: *const HfHypergraph, out: *mut *mut c_char) -> HfStatus {
    guard(|| {
        let json = serde_json::to_string(&handle(h)?.0).map_err(|e| Failure::new(HfStatus::Invalid, e))?;
        put_string(out, json)
    })
}

/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_vertex_count(h: *const HfHypergraph, out: *mut usize) -> HfStatus {
    guard(|| put_count(out, handle(h)?.0.vertices().len()))
}

/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_edge_count(h: *const HfHypergraph, out: *mut usize) -> HfStatus {
    guard(|| put_count(out, handle(h)?.0.edges().len()))
}

/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_component_count(h: *const HfHypergraph, out: *mut usize) -> HfStatus {
    guard(|| put_count(out, handle(h)?.0.components().len()))
}

/// Whether two hypergraphs are structurally equal.
///
/// # Safety
/// `a` and `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_equal(a: *const HfHypergraph, b: *const HfHypergraph, out: *mut bool) -> HfStatus {
    guard(|| {
        let eq = handle(a)?.0 == handle(b)?.0;
        if out.is_null() {
            return Err(Failure::new(HfStatus::NullArgument, "null out-parameter"));
        }
        *out = eq;
        Ok(())
    })
}

/// a ⊕ b. Fails with [`HfStatus::Domain`] when they share a vertex.
///
/// # Safety
/// `a` and `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_direct_sum(
    a: *const HfHypergraph,
    b: *const HfHypergraph,
    out: *mut *mut HfHypergraph,
) -> HfStatus {
    guard(|| {
        let s = direct_sum([&handle(a)?.0, &handle(b)?.0]).map_err(|e| Failure::new(HfStatus::Domain, e))?;
        put(out, HfHypergraph(s))
    })
}

/// Loads a family file from its JSON text.
///
/// # Safety
/// `src` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_family_file_load(src: *const c_char, out: *mut *mut HfFamilyFile) -> HfStatus {
    guard(|| {
        let file = FamilyFile::parse(text(src)?).map_err(cli_failure)?;
        put(out, HfFamilyFile(Workspace::load(&file).map_err(cli_failure)?))
    })
}

/// # Safety
/// `f` is NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hf_family_file_free(f: *mut HfFamilyFile) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// The canonical JSON form of a loaded file.
///
/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_family_file_canonical(f: *const HfFamilyFile, out: *mut *mut c_char) -> HfStatus {
    guard(|| put_string(out, handle(f)?.0.to_file().to_canonical_json()))
}

/// Looks up a named hypergraph or summand; `null` names 𝒩.
///
/// # Safety
/// `f` is a live handle; `name` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_family_file_hypergraph(
    f: *const HfFamilyFile,
    name: *const c_char,
    out: *mut *mut HfHypergraph,
) -> HfStatus {
    guard(|| {
        let h = handle(f)?.0.hypergraph(text(name)?).map_err(cli_failure)?;
        put(out, HfHypergraph(h))
    })
}

/// Derives the transformation of a named spec.
///
/// # Safety
/// `f` is a live handle; `name` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_family_file_derive(
    f: *const HfFamilyFile,
    name: *const c_char,
    out: *mut *mut HfTransformation,
) -> HfStatus {
    guard(|| {
        let name = text(name)?;
        let spec = handle(f)?
            .0
            .specs
            .get(name)
            .ok_or_else(|| Failure::new(HfStatus::NotFound, format!("no spec named {name:?}")))?;
        let t = derive(spec.clone()).map_err(|e| Failure::new(HfStatus::Domain, e))?;
        put(out, HfTransformation(t))
    })
}

/// # Safety
/// `t` is NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hf_transformation_free(t: *mut HfTransformation) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// π(x). Fails with [`HfStatus::Domain`] outside the family.
///
/// # Safety
/// `t` and `x` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_transformation_apply(
    t: *const HfTransformation,
    x: *const HfHypergraph,
    out: *mut *mut HfHypergraph,
) -> HfStatus {
    guard(|| {
        let y = handle(t)?.0.apply(&handle(x)?.0).map_err(|e| Failure::new(HfStatus::Domain, e))?;
        put(out, HfHypergraph(y.clone()))
    })
}

/// The number of members moved by the transformation.
///
/// # Safety
/// `t` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_transformation_support_size(t: *const HfTransformation, out: *mut usize) -> HfStatus {
    guard(|| put_count(out, handle(t)?.0.support().len()))
}

/// The full table as a JSON array of `[input, output]` pairs.
///
/// # Safety
/// `t` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hf_transformation_table_json(t: *const HfTransformation, out: *mut *mut c_char) -> HfStatus {
    guard(|| {
        let pairs: Vec<(&Hypergraph, &Hypergraph)> = handle(t)?.0.table().iter().collect();
        let json = serde_json::to_string(&pairs).map_err(|e| Failure::new(HfStatus::Invalid, e))?;
        put_string(out, json)
    })
}

/// Runs the command-line front end on `argc` arguments (without the
/// program name). Writes the exit code and both streams.
///
/// # Safety
/// `argv` points to `argc` nul-terminated strings; the out-parameters are
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hf_cli_run(
    argc: usize,
    argv: *const *const c_char,
    exit_code: *mut i32,
    stdout: *mut *mut c_char,
    stderr: *mut *mut c_char,
) -> HfStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(Failure::new(HfStatus::NullArgument, "null argv"));
        }
        let mut args = vec!["hyperform".to_owned()];
        for i in 0..argc {
            args.push(text(*argv.add(i))?.to_owned());
        }
        if exit_code.is_null() || stdout.is_null() || stderr.is_null() {
            return Err(Failure::new(HfStatus::NullArgument, "null out-parameter"));
        }
        let out = cli::run(args);
        *exit_code = out.code;
        put_string(stdout, out.stdout)?;
        put_string(stderr, out.stderr)
    })
}
