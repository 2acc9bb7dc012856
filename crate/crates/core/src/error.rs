use thiserror::Error;

use crate::roots::RootSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial division left a nonzero remainder")]
    NonExactDivision,
    #[error("sample point {0} is a pole of u or x = 0")]
    PoleHit(String),
    #[error("rational function does not tend to a finite nonzero limit (deg num {num}, deg den {den})")]
    DegreeMismatch { num: usize, den: usize },
    #[error("denominator magnitude 2^{log2_den:.1} is below the certification threshold")]
    DenominatorUnderflow { log2_den: f64 },
    #[error("Backlund step denominator vanishes identically")]
    ZeroDenominator,
    #[error("Gromak transformation denominator vanishes identically")]
    DegenerateDenominator,
    #[error("exponential/power tags do not match: {0}")]
    TagMismatch(String),
    #[error("root iteration did not converge after {sweeps} sweeps (max correction 2^{log2_correction:.1})")]
    NonConvergence {
        sweeps: usize,
        log2_correction: f64,
        partial: Box<RootSet>,
    },
    #[error("denominator roots are not certified simple (separation 2^{log2_sep:.1}, error radius 2^{log2_radius:.1})")]
    MultiplePole { log2_sep: f64, log2_radius: f64 },
    #[error("unknown plane {0:?}; expected one of x, y, w, xiPlus, xiMinus, z")]
    InvalidPlane(String),
    #[error("no admissible decay contour for Arg(x) = {0}")]
    ContourFailure(f64),
    #[error("Hankel determinant is numerically singular (|D| = 2^{log2_det:.1}, threshold 2^{log2_threshold:.1})")]
    SingularHankel { log2_det: f64, log2_threshold: f64 },
    #[error("y0 = {0} is a branch point: p0+ and p0- coincide")]
    BranchPoint(String),
    #[error("p0 must be nonzero")]
    ZeroP0,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
