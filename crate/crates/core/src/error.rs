use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("structural violation: {0}")]
    Structure(String),
    #[error("no gadget available for label signature {0:?}")]
    MissingGadget(Vec<i64>),
    #[error("rejected swap: {0}")]
    InvalidSwap(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
