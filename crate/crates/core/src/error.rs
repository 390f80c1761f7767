use thiserror::Error;

pub type Result<T, E = HallError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HallError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("Ext^1 has {size} elements, above the enumeration cap {cap}")]
    ExtEnumCapExceeded { size: u128, cap: u128 },

    #[error("endomorphism search for a {dim}-dimensional End exceeds the cap {cap} without finding a splitting")]
    EndoSearchCapExceeded { dim: usize, cap: u128 },

    #[error("isomorphism search over a Hom space of {size} elements exceeds the cap {cap}")]
    IsoEnumCapExceeded { size: u128, cap: u128 },

    #[error("enumeration needs {size} candidates, above the cap {cap}")]
    EnumCapExceeded { size: u128, cap: u128 },

    #[error("shift leaves the configured degree range [{lo}, {hi}]")]
    WindowOverflow { lo: i64, hi: i64 },

    #[error("Euler form undefined on this backend: {0}")]
    EulerUndefined(String),

    #[error("relative Euler form undefined on this backend: {0}")]
    RelEulerUndefined(String),

    #[error("unknown class id {0}")]
    UnknownClass(usize),
}

impl HallError {
    /// True for the cap-breach family of errors.
    pub fn is_cap_breach(&self) -> bool {
        matches!(
            self,
            HallError::ExtEnumCapExceeded { .. }
                | HallError::EndoSearchCapExceeded { .. }
                | HallError::IsoEnumCapExceeded { .. }
                | HallError::EnumCapExceeded { .. }
                | HallError::WindowOverflow { .. }
        )
    }

    pub fn is_euler_undefined(&self) -> bool {
        matches!(
            self,
            HallError::EulerUndefined(_) | HallError::RelEulerUndefined(_)
        )
    }
}
