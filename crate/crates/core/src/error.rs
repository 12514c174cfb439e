use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite value from {what} at u = {at}")]
    NonFinite { what: &'static str, at: f64 },

    #[error("root error: {0}")]
    Root(String),

    #[error("found {count} sign changes where a unique root was expected")]
    MultiRoot { count: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("spectrum truncated: d1*lambda_{max_modes} = {reached} is still below F0 = {f0}; raise max_modes")]
    Truncation {
        max_modes: usize,
        reached: f64,
        f0: f64,
    },

    #[error("phi is not sublinear: phi(s)/s increases near s = {at}")]
    Sublinearity { at: f64 },

    #[error("solution blew up at t = {t}")]
    Blowup { t: f64 },

    #[error("step size underflow at t = {t} (dt = {dt})")]
    Step { t: f64, dt: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
