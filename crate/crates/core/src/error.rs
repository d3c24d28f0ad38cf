use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("frequency {frequency_hz} Hz outside tissue table span [{min_hz}, {max_hz}] Hz")]
    FrequencyOutOfRange {
        frequency_hz: f64,
        min_hz: f64,
        max_hz: f64,
    },

    #[error("penetration depth is undefined in a lossless medium (conductivity = 0)")]
    LosslessMedium,

    #[error("distance {distance_m} m is not positive; use the Poynting route for near-field samples")]
    ZeroDistance { distance_m: f64 },

    #[error("limit profile `{profile}` has no {population} rule covering {frequency_hz} Hz")]
    NoRuleForFrequency {
        profile: String,
        population: &'static str,
        frequency_hz: f64,
    },

    #[error("evaluation point coincides with source {source_index}")]
    SourceCollocation { source_index: usize },

    #[error("grid bounds produce no evaluation points")]
    EmptyGrid,

    #[error("source {source_index} has an isotropic pattern and cannot be steered")]
    NotSteerable { source_index: usize },

    #[error("source index {source_index} out of range ({count} sources)")]
    NoSuchSource { source_index: usize, count: usize },

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("{origin}{}: {message}", line.map(|l| format!(":{l}")).unwrap_or_default())]
    Config {
        origin: String,
        line: Option<usize>,
        message: String,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }

    pub(crate) fn config(origin: &str, line: Option<usize>, message: impl Into<String>) -> Self {
        Error::Config {
            origin: origin.to_owned(),
            line,
            message: message.into(),
        }
    }

    /// Wraps a TOML deserialization error, keeping its line number when the
    /// parser reports one.
    pub(crate) fn from_toml(origin: &str, src: &str, err: toml::de::Error) -> Self {
        let line = err.span().map(|s| line_of(src, s.start));
        Error::Config {
            origin: origin.to_owned(),
            line,
            message: err.message().trim().to_owned(),
        }
    }
}

/// 1-based line number of byte offset `pos` in `src`.
pub(crate) fn line_of(src: &str, pos: usize) -> usize {
    src[..pos.min(src.len())].bytes().filter(|&b| b == b'\n').count() + 1
}
