use crate::error::{Error, Result};

/// Rejects values that would break a tab-separated line.
pub(crate) fn field(s: &str) -> Result<&str> {
    if s.contains(['\t', '\n', '\r']) {
        Err(Error::UnencodableField(s.to_string()))
    } else {
        Ok(s)
    }
}
