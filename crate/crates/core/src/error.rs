use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown symbol `{0}`; the coefficient ring only knows b, chi0, lambda, mu, nu, kappa, ell")]
    UnknownSymbol(String),

    #[error("cannot parse `{0}` as a rational number")]
    BadRational(String),

    #[error("unsupported generator/mode combination: {0}")]
    UnsupportedMode(String),

    #[error("state contains y-sector or V-dependent terms: {0}")]
    NotXSector(String),

    #[error("mode sum is infinite: {0}")]
    InfiniteModeSum(String),

    #[error("division is not exact: {0}")]
    InexactDivision(String),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
