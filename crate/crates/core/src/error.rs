use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (relative deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not skew-Hermitian (relative deviation {0:e})")]
    NotSkewHermitian(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Both the detuning and the coupling vanish, so `Γ = 0` and the mixing
    /// angle is undefined.
    #[error("degenerate parameters: detuning and coupling are both zero")]
    Degenerate,

    /// Half-integer spin has no `Δm = 0` mode to excite.
    #[error("spin {0} has no central mode (Δm = 0); use an integer spin")]
    NoCentralMode(crate::Spin),

    #[error("spin {spin} exceeds the factorial-sum limit {max}; use the exponential route")]
    SpinTooLarge { spin: crate::Spin, max: crate::Spin },

    #[error("sideband cutoff {cutoff} too small for modulation index {mu} (need at least {required})")]
    CutoffTooSmall { cutoff: usize, mu: f64, required: usize },

    #[error("truncated sideband weights sum to {0}, tail bound violated")]
    TailBound(f64),
}

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::Error::InvalidParameter(alloc::format!($($arg)*))
    };
}
pub(crate) use invalid;
