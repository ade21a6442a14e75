//! C ABI over the arccover library.
//!
//! Every fallible call returns an [`ArcStatus`]; on failure the message is
//! available from [`arc_last_error`] until the next call on the same thread.
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Strings returned through `char **` must be
//! released with [`arc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use arccover::bounds::{aggregate_bounds, AggregateOptions, BoundsInput, Quantity};
use arccover::geometry::{construction, svg_export, verify_drawing, Drawing, SvgOptions};
use arccover::graph::{EmbeddedGraph, Family, GraphJson};
use arccover::mip::{build_model, solve_mip, Budget, MipStatus, Strictness};
use arccover::Error;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    SizeCap = 3,
    Integrity = 4,
    Precondition = 5,
    Unsupported = 6,
    Parse = 7,
    Panic = 8,
}

impl From<&Error> for ArcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Validation(_) | Error::Unknown { .. } | Error::Io(_) => ArcStatus::InvalidInput,
            Error::SizeCap { .. } => ArcStatus::SizeCap,
            Error::Integrity(_) => ArcStatus::Integrity,
            Error::Precondition(_) => ArcStatus::Precondition,
            Error::UnsupportedDimension(_) => ArcStatus::Unsupported,
            Error::Parse(_) => ArcStatus::Parse,
        }
    }
}

/// A graph, with its embedding when one is known.
pub struct ArcGraph {
    json: GraphJson,
    family: Option<Family>,
}

/// A circular-arc drawing.
pub struct ArcDrawing {
    inner: Drawing,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct ArcMipResult {
    /// Straight angles in the best assignment found.
    pub ang_pi: u64,
    /// Proven upper bound on straight angles.
    pub ang_pi_upper: u64,
    /// Lower bound on the segment number.
    pub seg_lower: i64,
    pub nodes: u64,
    pub variables: u64,
    pub constraints: u64,
    /// 1 when solved to optimality, 0 when the budget ran out.
    pub optimal: i32,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct ArcVerifySummary {
    /// 1 when the drawing passed every check.
    pub valid: i32,
    pub dim: u32,
    pub supports: u64,
    pub circles: u64,
    pub lines: u64,
    pub spheres: u64,
    pub crossings: u64,
    pub issues: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Error>) -> ArcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ArcStatus::Ok,
        Ok(Err(e)) => {
            let status = ArcStatus::from(&e);
            set_error(e.to_string());
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            ArcStatus::Panic
        }
    }
}

macro_rules! nonnull {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            set_error(format!("`{}` is null", stringify!($p)));
            return ArcStatus::NullPointer;
        })+
    };
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Error> {
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Error::Validation("string is not UTF-8".into()))
}

fn out_string(s: String, out: *mut *mut c_char) {
    let c = CString::new(s).unwrap_or_default();
    unsafe { *out = c.into_raw() };
}

/// Message of the last failed call on this thread, or null. Owned by the
/// library; valid until the next call.
#[no_mangle]
pub extern "C" fn arc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn arc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Graph from a family descriptor such as `platonic:cube` or `bipartite:3x7`.
///
/// # Safety
/// `descriptor` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arc_graph_from_family(
    descriptor: *const c_char,
    out: *mut *mut ArcGraph,
) -> ArcStatus {
    nonnull!(descriptor, out);
    guard(|| {
        let fam: Family = text(descriptor)?.parse()?;
        let json = match fam.embedded()? {
            Some(e) => GraphJson::from(&e),
            None => GraphJson::from(&fam.graph()?),
        };
        *out = Box::into_raw(Box::new(ArcGraph {
            json,
            family: Some(fam),
        }));
        Ok(())
    })
}

/// Graph from its JSON form, optionally with a rotation system.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arc_graph_from_json(
    json: *const c_char,
    out: *mut *mut ArcGraph,
) -> ArcStatus {
    nonnull!(json, out);
    guard(|| {
        let j = GraphJson::parse(text(json)?)?;
        j.to_graph()?;
        if j.is_embedded() {
            j.to_embedded()?;
        }
        *out = Box::into_raw(Box::new(ArcGraph {
            json: j,
            family: None,
        }));
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn arc_graph_free(g: *mut ArcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn arc_graph_vertex_count(g: *const ArcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.json.n)
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn arc_graph_edge_count(g: *const ArcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.json.edges.len())
}

/// Best known bounds on `quantity` (`sigma12`, `sigma13`, `sigma23`, `seg`,
/// `arc`, `rho12`, `rho13`, `rho23`). A side without a bound is set to -1.
///
/// # Safety
/// `g` must be a live handle, `quantity` a NUL-terminated string, and
/// `lower`, `upper` writable.
#[no_mangle]
pub unsafe extern "C" fn arc_bounds(
    g: *const ArcGraph,
    quantity: *const c_char,
    lower: *mut i64,
    upper: *mut i64,
) -> ArcStatus {
    nonnull!(g, quantity, lower, upper);
    guard(|| {
        let g = &*g;
        let q: Quantity = text(quantity)?.parse()?;
        let input = match g.family {
            Some(f) => BoundsInput::from_family(f)?,
            None => BoundsInput::from_graph(g.json.to_graph()?, g.json.is_embedded()),
        };
        let r = aggregate_bounds(&input, q, &AggregateOptions::default())?;
        *lower = r.lower.map_or(-1, |v| v as i64);
        *upper = r.upper.map_or(-1, |v| v as i64);
        Ok(())
    })
}

/// Solves the angle-assignment program over the open angle domain. Zero
/// `max_nodes` or non-positive `time_limit_secs` mean no limit.
///
/// # Safety
/// `g` must be a live handle with an embedding and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arc_mip_solve(
    g: *const ArcGraph,
    max_nodes: u64,
    time_limit_secs: f64,
    out: *mut ArcMipResult,
) -> ArcStatus {
    nonnull!(g, out);
    guard(|| {
        let emb: EmbeddedGraph = (*g).json.to_embedded()?;
        let model = build_model(&emb, Strictness::Open)?;
        let budget = Budget {
            max_nodes: (max_nodes > 0).then_some(max_nodes),
            time_limit: (time_limit_secs > 0.0).then(|| Duration::from_secs_f64(time_limit_secs)),
        };
        let r = solve_mip(&model, budget)?;
        *out = ArcMipResult {
            ang_pi: r.ang_pi as u64,
            ang_pi_upper: r.ang_pi_upper as u64,
            seg_lower: r.seg_lower,
            nodes: r.node_count,
            variables: r.size.variables as u64,
            constraints: r.size.constraints as u64,
            optimal: i32::from(r.status == MipStatus::Optimal),
        };
        Ok(())
    })
}

/// Builds a named construction (`ico7`, `cube4`, `kpq`, `book`,
/// `nested-tri`) with `nparams` integer parameters.
///
/// # Safety
/// `name` must be a NUL-terminated string, `params` readable for `nparams`
/// values (or null when `nparams` is 0), and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arc_drawing_build(
    name: *const c_char,
    params: *const usize,
    nparams: usize,
    out: *mut *mut ArcDrawing,
) -> ArcStatus {
    nonnull!(name, out);
    if nparams > 0 {
        nonnull!(params);
    }
    guard(|| {
        let p = if nparams == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(params, nparams)
        };
        let inner = construction(text(name)?, p)?;
        *out = Box::into_raw(Box::new(ArcDrawing { inner }));
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arc_drawing_from_json(
    json: *const c_char,
    out: *mut *mut ArcDrawing,
) -> ArcStatus {
    nonnull!(json, out);
    guard(|| {
        let inner = Drawing::parse(text(json)?)?;
        *out = Box::into_raw(Box::new(ArcDrawing { inner }));
        Ok(())
    })
}

/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arc_drawing_to_json(
    d: *const ArcDrawing,
    out: *mut *mut c_char,
) -> ArcStatus {
    nonnull!(d, out);
    guard(|| {
        out_string((*d).inner.to_json(), out);
        Ok(())
    })
}

/// Checks the drawing; the call succeeds even when the drawing is invalid.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arc_drawing_verify(
    d: *const ArcDrawing,
    tolerance: f64,
    out: *mut ArcVerifySummary,
) -> ArcStatus {
    nonnull!(d, out);
    guard(|| {
        if !(tolerance > 0.0) {
            return Err(Error::Validation("tolerance must be positive".into()));
        }
        let r = verify_drawing(&(*d).inner, tolerance);
        *out = ArcVerifySummary {
            valid: i32::from(r.valid),
            dim: u32::from(r.dim),
            supports: r.supports_used as u64,
            circles: r.circles as u64,
            lines: r.lines as u64,
            spheres: r.spheres as u64,
            crossings: r.crossings as u64,
            issues: r.issues.len() as u64,
        };
        Ok(())
    })
}

/// SVG for a plane drawing; `guides` nonzero adds dashed support circles.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arc_drawing_svg(
    d: *const ArcDrawing,
    guides: i32,
    out: *mut *mut c_char,
) -> ArcStatus {
    nonnull!(d, out);
    guard(|| {
        let opts = SvgOptions {
            guides: guides != 0,
            ..SvgOptions::default()
        };
        out_string(svg_export(&(*d).inner, &opts)?, out);
        Ok(())
    })
}

/// # Safety
/// `d` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn arc_drawing_free(d: *mut ArcDrawing) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}
