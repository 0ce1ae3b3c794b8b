//! C ABI over the `conecrit` classifier, spectral solvers and barrier checks.
//!
//! Every function returns a [`CcStatus`]; on failure [`cc_last_error_message`] describes the
//! error for the calling thread.  Problems are opaque handles created by [`cc_problem_new`]
//! and released with [`cc_problem_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use conecrit::barriers::{construct_barrier, verify_residual, ResidualGrid};
use conecrit::classifier::{classify, indicial_roots, original_roots, BarrierKind, Branch, Justification, Roots, Verdict};
use conecrit::params::{kelvin_exponent, ConeSpec, ProblemParams};
use conecrit::spectral::{eigen_arc, eigen_cap, principal, SpectralBasis};
use conecrit::Error;

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    /// The requested object does not exist for these parameters, e.g. a barrier outside the existence region.
    NotExists = 3,
    Numerical = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcCone {
    FullSphere = 0,
    /// Planar sector of opening `cone_value`, `N = 2`.
    Arc = 1,
    /// Geodesic cap of half-angle `cone_value`, `N >= 3`.
    Cap = 2,
    /// Cross-section given only through `λ1 = cone_value`.
    Tabulated = 3,
}

/// Parameters of `-Δu - B|x|^{-2}u - A x·∇u/|x|² = C|x|^{-σ} u^p` on the exterior cone `r > ρ`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CcParams {
    pub n: u32,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub sigma: f64,
    pub p: f64,
    pub cone: CcCone,
    pub cone_value: f64,
    pub rho: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcVerdict {
    Exists = 0,
    NoPositiveSupersolutions = 1,
    OpenProblem = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcJustification {
    LinearSpectral = 0,
    SupercriticalPotential = 1,
    SubcriticalLine = 2,
    CriticalLine = 3,
    BarrierExists = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcBranch {
    None = 0,
    Minus = 1,
    Plus = 2,
    Both = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcBarrier {
    None = 0,
    SeparatedPower = 1,
    PowerLog = 2,
    SublinearInhom = 3,
    SublinearNeg = 4,
    CriticalSublinear = 5,
    FullSphereLog = 6,
}

/// Classification record; `lambda_sigma` is NaN when the potential is above the threshold.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CcClassification {
    pub verdict: CcVerdict,
    pub justification: CcJustification,
    pub branch: CcBranch,
    pub barrier: CcBarrier,
    /// Critical line at `p` in `σ` coordinates.
    pub lambda_sigma: f64,
    /// Barrier exponent (`α` or `β`), NaN without a barrier.
    pub barrier_exponent: f64,
    pub mu: f64,
    pub s: f64,
    pub lambda1: f64,
    pub threshold: f64,
}

/// Roots of `γ(γ + N - 2 + A) = λ1 - B` and their reduced shifts `α = γ + A/2`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CcRoots {
    pub gamma_minus: f64,
    pub gamma_plus: f64,
    pub alpha_minus: f64,
    pub alpha_plus: f64,
    pub double_root: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CcResidualReport {
    pub barrier: CcBarrier,
    pub tau: f64,
    pub rho_prime: f64,
    pub min_residual: f64,
    pub passed: bool,
}

/// Opaque problem: validated parameters plus the spectral basis of the cross-section.
pub struct CcProblem {
    params: ProblemParams,
    basis: SpectralBasis,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CcStatus {
    match e {
        Error::NoBarrier(_) | Error::NoRealRoots | Error::ProfileUnavailable => CcStatus::NotExists,
        Error::NoConvergence { .. } | Error::NonPositiveBarrier { .. } | Error::TailTooLarge { .. } => CcStatus::Numerical,
        _ => CcStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status and the thread's last error.
fn guard<F: FnOnce() -> Result<(), (CcStatus, String)>>(f: F) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CcStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CcStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (CcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (CcStatus, String) {
    (CcStatus::NullPointer, format!("{name} is null"))
}

fn to_params(p: &CcParams) -> ProblemParams {
    let cone = match p.cone {
        CcCone::FullSphere => ConeSpec::FullSphere,
        CcCone::Arc => ConeSpec::Arc { theta0: p.cone_value },
        CcCone::Cap => ConeSpec::Cap { theta0: p.cone_value },
        CcCone::Tabulated => ConeSpec::Tabulated { lambda1: p.cone_value },
    };
    let mut pp = ProblemParams::new(p.n, p.a, p.b, p.c, p.sigma, p.p, cone);
    pp.rho = p.rho;
    pp
}

fn barrier_code(kind: Option<BarrierKind>) -> (CcBarrier, f64) {
    match kind {
        None => (CcBarrier::None, f64::NAN),
        Some(BarrierKind::SeparatedPower { alpha }) => (CcBarrier::SeparatedPower, alpha),
        Some(BarrierKind::PowerLog { beta }) => (CcBarrier::PowerLog, beta),
        Some(BarrierKind::SublinearInhom { alpha }) => (CcBarrier::SublinearInhom, alpha),
        Some(BarrierKind::SublinearNeg { alpha }) => (CcBarrier::SublinearNeg, alpha),
        Some(BarrierKind::CriticalSublinear { beta, .. }) => (CcBarrier::CriticalSublinear, beta),
        Some(BarrierKind::FullSphereLog { beta }) => (CcBarrier::FullSphereLog, beta),
    }
}

/// Validates `params`, solves the principal eigenproblem and stores a new handle in `*out`.
///
/// # Safety
/// `params` must point to a valid [`CcParams`] and `out` to writable storage for a pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_problem_new(params: *const CcParams, out: *mut *mut CcProblem) -> CcStatus {
    guard(|| {
        let params = params.as_ref().ok_or_else(|| null("params"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let pp = to_params(params);
        pp.validate().map_err(lib_err)?;
        let basis = principal(pp.cone, pp.n).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CcProblem { params: pp, basis }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `problem` must be null or a handle from [`cc_problem_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_problem_free(problem: *mut CcProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Existence verdict at the handle's `(p, σ)`.
///
/// # Safety
/// `problem` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_classify(problem: *const CcProblem, out: *mut CcClassification) -> CcStatus {
    guard(|| {
        let pr = problem.as_ref().ok_or_else(|| null("problem"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let rp = pr.params.reduce().map_err(lib_err)?;
        let cls = classify(&rp, &pr.basis).map_err(lib_err)?;
        let (barrier, exponent) = barrier_code(cls.barrier);
        *out = CcClassification {
            verdict: match cls.verdict {
                Verdict::Exists => CcVerdict::Exists,
                Verdict::NoPositiveSupersolutions => CcVerdict::NoPositiveSupersolutions,
                Verdict::OpenProblem => CcVerdict::OpenProblem,
            },
            justification: match cls.justification {
                Justification::LinearSpectral => CcJustification::LinearSpectral,
                Justification::SupercriticalPotential => CcJustification::SupercriticalPotential,
                Justification::SubcriticalLine => CcJustification::SubcriticalLine,
                Justification::CriticalLine => CcJustification::CriticalLine,
                Justification::BarrierExists => CcJustification::BarrierExists,
            },
            branch: match cls.branch {
                None => CcBranch::None,
                Some(Branch::Minus) => CcBranch::Minus,
                Some(Branch::Plus) => CcBranch::Plus,
                Some(Branch::Both) => CcBranch::Both,
            },
            barrier,
            lambda_sigma: cls.line.map_or(f64::NAN, |l| l - pr.params.a / 2.0 * (pr.params.p - 1.0)),
            barrier_exponent: exponent,
            mu: cls.mu,
            s: cls.s,
            lambda1: cls.lambda1,
            threshold: cls.threshold,
        };
        Ok(())
    })
}

/// Indicial roots of the handle's linear operator; [`CcStatus::NotExists`] above the threshold.
///
/// # Safety
/// `problem` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_indicial_roots(problem: *const CcProblem, out: *mut CcRoots) -> CcStatus {
    guard(|| {
        let pr = problem.as_ref().ok_or_else(|| null("problem"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let lambda1 = pr.basis.lambda1();
        let g = original_roots(&pr.params, lambda1).map_err(lib_err)?;
        let rp = pr.params.reduce().map_err(lib_err)?;
        let a = indicial_roots(rp.n, rp.mu, lambda1).map_err(lib_err)?;
        *out = CcRoots {
            gamma_minus: g.minus(),
            gamma_plus: g.plus(),
            alpha_minus: a.minus(),
            alpha_plus: a.plus(),
            double_root: matches!(a, Roots::Double { .. }),
        };
        Ok(())
    })
}

/// Exponent of the Kelvin image problem, `N + 2 - p(N - 2) - s`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_kelvin_s(n: u32, p: f64, s: f64, out: *mut f64) -> CcStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if n < 2 || !p.is_finite() || !s.is_finite() {
            return Err((CcStatus::InvalidArgument, "need N >= 2 and finite p, s".into()));
        }
        *out = kelvin_exponent(n, p, s);
        Ok(())
    })
}

/// `k`-th (1-based) Dirichlet eigenvalue of the arc `(0, θ0)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_eigen_arc_lambda(theta0: f64, k: u32, out: *mut f64) -> CcStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if k == 0 {
            return Err((CcStatus::InvalidArgument, "k is 1-based".into()));
        }
        let b = eigen_arc(theta0, k as usize).map_err(lib_err)?;
        *out = *b.lambdas.get(k as usize - 1).ok_or_else(|| (CcStatus::Numerical, "mode not computed".to_string()))?;
        Ok(())
    })
}

/// Principal Dirichlet eigenvalue of the geodesic cap of half-angle `θ0` in `S^{N-1}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_eigen_cap_lambda1(n: u32, theta0: f64, out: *mut f64) -> CcStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = eigen_cap(n, theta0, 1).map_err(lib_err)?.lambda1();
        Ok(())
    })
}

/// Builds the barrier for an existence point and checks its residual on the default grid.
///
/// # Safety
/// `problem` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_verify_barrier(problem: *const CcProblem, out: *mut CcResidualReport) -> CcStatus {
    guard(|| {
        let pr = problem.as_ref().ok_or_else(|| null("problem"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let rp = pr.params.reduce().map_err(lib_err)?;
        let cls = classify(&rp, &pr.basis).map_err(lib_err)?;
        let spec = construct_barrier(&rp, &pr.basis, &cls).map_err(lib_err)?;
        let rep = verify_residual(&spec, ResidualGrid::default()).map_err(lib_err)?;
        *out = CcResidualReport { barrier: barrier_code(Some(spec.kind)).0, tau: rep.tau, rho_prime: rep.rho_prime, min_residual: rep.min_residual, passed: rep.passed };
        Ok(())
    })
}

/// Message for the last failed call on this thread; empty after a success.  The pointer
/// stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn cc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cc_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => c"unknown",
    };
    VERSION.as_ptr()
}
