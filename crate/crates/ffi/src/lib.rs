//! C ABI over `schrodinger-core`.
//!
//! Problems and solutions are opaque handles owned by the caller and released
//! with [`sch_problem_free`] and [`sch_solution_free`]. Every fallible call
//! returns a [`SchStatus`]; on failure [`sch_last_error`] describes the error
//! for the calling thread. Array accessors copy into caller buffers and
//! report [`SchStatus::BufferTooSmall`] when the buffer is short.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use schrodinger_core::cli::{default_points, load_input};
use schrodinger_core::criteria::{check_boundedness, check_eq29, check_positivity, CriteriaReport};
use schrodinger_core::fortet::{extract_solution, sinkhorn_baseline, solve_fortet};
use schrodinger_core::gaussian::{discretize_gaussian, matrix_criterion};
use schrodinger_core::problem::problem_from_json;
use schrodinger_core::{
    validate_reduction, DiscreteProblem, Error, FortetError, FortetOperator, GaussianProblem, ProblemError,
    ReducedProblem, SchrodingerSolution, SolveOptions, Status,
};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    InvalidProblem = 5,
    InvalidArgument = 6,
    BufferTooSmall = 7,
    /// The iteration collapsed to the zero potential.
    Degenerate = 8,
    Divergent = 9,
    MaxIter = 10,
    Numerical = 11,
    Panic = 12,
}

/// Stopping rule of the truncated scheme.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchSolveOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub degenerate_cutoff: f64,
}

/// A validated problem together with its reduction.
pub struct SchProblem {
    gaussian: Option<GaussianProblem>,
    reduced: ReducedProblem,
}

/// A converged solution on the reduced index sets.
pub struct SchSolution {
    iterations: usize,
    potential: Vec<f64>,
    x_index: Vec<usize>,
    y_index: Vec<usize>,
    solution: SchrodingerSolution,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Failure(SchStatus, String);

impl Failure {
    fn new(status: SchStatus, message: impl Into<String>) -> Self {
        Failure(status, message.into())
    }
}

impl From<ProblemError> for Failure {
    fn from(e: ProblemError) -> Self {
        let status = match e {
            ProblemError::Parse { .. } => SchStatus::Parse,
            ProblemError::Io(_) => SchStatus::Io,
            _ => SchStatus::InvalidProblem,
        };
        Failure(status, e.to_string())
    }
}

impl From<FortetError> for Failure {
    fn from(e: FortetError) -> Self {
        let status = match e {
            FortetError::MaxIterExceeded { .. } => SchStatus::MaxIter,
            FortetError::DegeneratePotential { .. } => SchStatus::Degenerate,
            FortetError::InvalidPotential(_) | FortetError::NonPositiveKernel => SchStatus::InvalidArgument,
            FortetError::Problem(p) => return p.into(),
            FortetError::Ext(_) | FortetError::NonFiniteIntermediate { .. } => SchStatus::Numerical,
        };
        Failure(status, e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Problem(p) => p.into(),
            Error::Fortet(f) => f.into(),
            Error::Io(_) => Failure(SchStatus::Io, e.to_string()),
            Error::Json(_) => Failure(SchStatus::Parse, e.to_string()),
            Error::Ext(_) => Failure(SchStatus::Numerical, e.to_string()),
            _ => Failure(SchStatus::InvalidProblem, e.to_string()),
        }
    }
}

/// Runs `f`, turning errors and panics into a status plus thread-local message.
fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> SchStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SchStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal panic: {message}"));
            SchStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(SchStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure::new(SchStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(SchStatus::NullPointer, format!("{name} is null")))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::new(SchStatus::NullPointer, "output pointer is null"))
    } else {
        Ok(())
    }
}

unsafe fn copy_out(values: &[f64], buf: *mut f64, len: usize) -> Result<(), Failure> {
    if buf.is_null() {
        return Err(Failure::new(SchStatus::NullPointer, "buffer is null"));
    }
    if len < values.len() {
        return Err(Failure::new(
            SchStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", values.len()),
        ));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

fn new_problem(problem: DiscreteProblem, gaussian: Option<GaussianProblem>) -> Result<*mut SchProblem, Failure> {
    let reduced = validate_reduction(&problem)?;
    Ok(Box::into_raw(Box::new(SchProblem { gaussian, reduced })))
}

fn into_json_string(text: serde_json::Result<String>, out: *mut *mut c_char) -> Result<(), Failure> {
    let text = text.map_err(|e| Failure::new(SchStatus::Numerical, e.to_string()))?;
    let c = CString::new(text).map_err(|e| Failure::new(SchStatus::Numerical, e.to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Why the most recent fallible call on this thread failed, or null if it
/// succeeded. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sch_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static, NUL-terminated name of a status code.
#[no_mangle]
pub extern "C" fn sch_status_name(status: SchStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        SchStatus::Ok => b"ok\0",
        SchStatus::NullPointer => b"null-pointer\0",
        SchStatus::InvalidUtf8 => b"invalid-utf8\0",
        SchStatus::Io => b"io\0",
        SchStatus::Parse => b"parse\0",
        SchStatus::InvalidProblem => b"invalid-problem\0",
        SchStatus::InvalidArgument => b"invalid-argument\0",
        SchStatus::BufferTooSmall => b"buffer-too-small\0",
        SchStatus::Degenerate => b"degenerate\0",
        SchStatus::Divergent => b"divergent\0",
        SchStatus::MaxIter => b"max-iter\0",
        SchStatus::Numerical => b"numerical\0",
        SchStatus::Panic => b"panic\0",
    };
    name.as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn sch_solve_options_default() -> SchSolveOptions {
    let d = SolveOptions::default();
    SchSolveOptions {
        tol: d.tol,
        max_iter: d.max_iter,
        degenerate_cutoff: d.degenerate_cutoff,
    }
}

/// Parses a problem from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sch_problem_from_json(json: *const c_char, out: *mut *mut SchProblem) -> SchStatus {
    guarded(|| {
        check_out(out)?;
        let text = read_str(json, "json")?;
        let handle = new_problem(problem_from_json(text, "<json>")?, None)?;
        *out = handle;
        Ok(())
    })
}

/// Discretizes a Gaussian spec `{"a": .., "b": .., "c": ..}`. `points == 0`
/// selects the default grid size; `half_width` is in standard deviations.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sch_problem_from_gaussian_json(
    json: *const c_char,
    points: usize,
    half_width: f64,
    out: *mut *mut SchProblem,
) -> SchStatus {
    guarded(|| {
        check_out(out)?;
        let text = read_str(json, "json")?;
        let gp: GaussianProblem =
            serde_json::from_str(text).map_err(|e| Failure::new(SchStatus::Parse, e.to_string()))?;
        let points = if points == 0 { default_points(gp.dim()) } else { points };
        let problem = discretize_gaussian(&gp, half_width, points)
            .map_err(|e| Failure::new(SchStatus::InvalidArgument, e.to_string()))?;
        *out = new_problem(problem, Some(gp))?;
        Ok(())
    })
}

/// Loads a problem file, CSV bundle directory or Gaussian spec file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sch_problem_load(path: *const c_char, out: *mut *mut SchProblem) -> SchStatus {
    guarded(|| {
        check_out(out)?;
        let path = read_str(path, "path")?;
        let input = load_input(Path::new(path), None, 6.0)?;
        *out = new_problem(input.problem, input.gaussian)?;
        Ok(())
    })
}

/// # Safety
/// `problem` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sch_problem_free(problem: *mut SchProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Sizes of the reduced source and target spaces.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sch_problem_dims(problem: *const SchProblem, nx: *mut usize, ny: *mut usize) -> SchStatus {
    guarded(|| {
        let p = deref(problem, "problem")?;
        check_out(nx)?;
        check_out(ny)?;
        *nx = p.reduced.nx();
        *ny = p.reduced.ny();
        Ok(())
    })
}

/// Runs the truncated scheme. `ceiling` may be null for `U ≡ 1`, otherwise
/// it holds `ceiling_len` values over the reduced source space. `options`
/// may be null for the defaults. `*out` is set only on success.
///
/// # Safety
/// All non-null pointers must be valid; `ceiling` must hold `ceiling_len` values.
#[no_mangle]
pub unsafe extern "C" fn sch_solve_fortet(
    problem: *const SchProblem,
    options: *const SchSolveOptions,
    ceiling: *const f64,
    ceiling_len: usize,
    out: *mut *mut SchSolution,
) -> SchStatus {
    guarded(|| {
        let p = deref(problem, "problem")?;
        check_out(out)?;
        let o = options.as_ref().copied().unwrap_or_else(|| sch_solve_options_default());
        let opts = SolveOptions {
            tol: o.tol,
            max_iter: o.max_iter,
            degenerate_cutoff: o.degenerate_cutoff,
        };
        let ceiling = (!ceiling.is_null()).then(|| std::slice::from_raw_parts(ceiling, ceiling_len));
        let op = FortetOperator::new(&p.reduced);
        let result = solve_fortet(&op, ceiling, &opts)?;
        let failed =
            |status, what: &str| Failure::new(status, format!("{what} after {} iterations", result.iterations));
        match result.status {
            Status::ConvergedPositive => {}
            Status::DegenerateZero => return Err(failed(SchStatus::Degenerate, "degenerate potential")),
            Status::Divergent => return Err(failed(SchStatus::Divergent, "divergent iteration")),
            Status::MaxIter => return Err(failed(SchStatus::MaxIter, "no convergence")),
        }
        let solution = extract_solution(&op, &result.u_star)?;
        let potential = result
            .positive_u()
            .ok_or_else(|| Failure::new(SchStatus::Degenerate, "potential is not positive"))?;
        *out = Box::into_raw(Box::new(SchSolution {
            iterations: result.iterations,
            potential,
            x_index: p.reduced.x_index().to_vec(),
            y_index: p.reduced.y_index().to_vec(),
            solution,
        }));
        Ok(())
    })
}

/// Alternating-scaling baseline; needs a strictly positive kernel.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sch_solve_sinkhorn(
    problem: *const SchProblem,
    tol: f64,
    max_iter: usize,
    out: *mut *mut SchSolution,
) -> SchStatus {
    guarded(|| {
        let p = deref(problem, "problem")?;
        check_out(out)?;
        if !(tol > 0.0 && tol.is_finite()) || max_iter == 0 {
            return Err(Failure::new(
                SchStatus::InvalidArgument,
                "tol must be positive and max_iter nonzero",
            ));
        }
        let o = sinkhorn_baseline(&p.reduced, tol, max_iter)?;
        *out = Box::into_raw(Box::new(SchSolution {
            iterations: o.iterations,
            potential: o.potential,
            x_index: p.reduced.x_index().to_vec(),
            y_index: p.reduced.y_index().to_vec(),
            solution: o.solution,
        }));
        Ok(())
    })
}

/// # Safety
/// `solution` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sch_solution_free(solution: *mut SchSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sch_solution_dims(solution: *const SchSolution, nx: *mut usize, ny: *mut usize) -> SchStatus {
    guarded(|| {
        let s = deref(solution, "solution")?;
        check_out(nx)?;
        check_out(ny)?;
        *nx = s.solution.a.len();
        *ny = s.solution.b.len();
        Ok(())
    })
}

/// Iteration count, marginal sup-errors and relative entropy. Any output
/// pointer may be null.
///
/// # Safety
/// `solution` must be valid; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn sch_solution_stats(
    solution: *const SchSolution,
    iterations: *mut usize,
    marginal_err_x: *mut f64,
    marginal_err_y: *mut f64,
    rel_entropy: *mut f64,
) -> SchStatus {
    guarded(|| {
        let s = deref(solution, "solution")?;
        if let Some(v) = iterations.as_mut() {
            *v = s.iterations;
        }
        if let Some(v) = marginal_err_x.as_mut() {
            *v = s.solution.marginal_err_x;
        }
        if let Some(v) = marginal_err_y.as_mut() {
            *v = s.solution.marginal_err_y;
        }
        if let Some(v) = rel_entropy.as_mut() {
            *v = s.solution.rel_entropy;
        }
        Ok(())
    })
}

/// Copies the potential `u` (length `nx`).
///
/// # Safety
/// `buf` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn sch_solution_potential(solution: *const SchSolution, buf: *mut f64, len: usize) -> SchStatus {
    guarded(|| copy_out(&deref(solution, "solution")?.potential, buf, len))
}

/// Copies `a` (length `nx`, summing to 1).
///
/// # Safety
/// `buf` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn sch_solution_a(solution: *const SchSolution, buf: *mut f64, len: usize) -> SchStatus {
    guarded(|| copy_out(&deref(solution, "solution")?.solution.a, buf, len))
}

/// Copies `b` (length `ny`).
///
/// # Safety
/// `buf` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn sch_solution_b(solution: *const SchSolution, buf: *mut f64, len: usize) -> SchStatus {
    guarded(|| copy_out(&deref(solution, "solution")?.solution.b, buf, len))
}

/// Copies the coupling row-major (length `nx * ny`).
///
/// # Safety
/// `buf` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn sch_solution_coupling(solution: *const SchSolution, buf: *mut f64, len: usize) -> SchStatus {
    guarded(|| copy_out(deref(solution, "solution")?.solution.pi.as_slice(), buf, len))
}

/// Serializes the solution, with original point indices, to JSON. Release
/// the string with [`sch_string_free`].
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sch_solution_to_json(solution: *const SchSolution, out: *mut *mut c_char) -> SchStatus {
    guarded(|| {
        let s = deref(solution, "solution")?;
        check_out(out)?;
        let value = serde_json::json!({
            "iterations": s.iterations,
            "x_index": s.x_index,
            "y_index": s.y_index,
            "u": s.potential,
            "solution": s.solution,
        });
        into_json_string(serde_json::to_string(&value), out)
    })
}

/// Integral criterion in both directions, kernel positivity and
/// boundedness, and the Gaussian matrix criterion when the problem came from
/// a Gaussian spec, as JSON. Release the string with [`sch_string_free`].
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sch_problem_criteria_json(problem: *const SchProblem, out: *mut *mut c_char) -> SchStatus {
    guarded(|| {
        let p = deref(problem, "problem")?;
        check_out(out)?;
        let eq = check_eq29(&p.reduced);
        let gaussian = p
            .gaussian
            .as_ref()
            .map(matrix_criterion)
            .transpose()
            .map_err(|e| Failure::new(SchStatus::InvalidArgument, e.to_string()))?;
        let report = CriteriaReport {
            eq29_xy: eq.eq29_xy,
            eq29_yx: eq.eq29_yx,
            hyp02: None,
            hyp03: None,
            radial: None,
            gaussian,
            positivity: check_positivity(&p.reduced),
            boundedness: check_boundedness(&p.reduced),
        };
        into_json_string(serde_json::to_string(&report), out)
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sch_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
