use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("config {origin}: {msg}")]
    Config { origin: String, msg: String },
    #[error("alist line {line}: {msg}")]
    Alist { line: usize, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] llps_core::Error),
    #[error("worker pool: {0}")]
    Pool(String),
}

impl SimError {
    pub(crate) fn config(origin: impl Into<String>, msg: impl Into<String>) -> Self {
        SimError::Config {
            origin: origin.into(),
            msg: msg.into(),
        }
    }

    pub(crate) fn alist(line: usize, msg: impl Into<String>) -> Self {
        SimError::Alist { line, msg: msg.into() }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        SimError::Io {
            path: path.into(),
            source,
        }
    }
}
