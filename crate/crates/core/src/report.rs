use serde::Serialize;

/// Outcome of one identity evaluation.
///
/// `pass` is true exactly when `left == right` held as exact values; the
/// string fields are display forms for reporting. Secondary observations
/// (printed-formula mismatches, alternative readings) go to `notes` and
/// never influence `pass`.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: Vec<(String, String)>,
    pub left: String,
    pub right: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn new(
        identity: impl Into<String>,
        params: Vec<(String, String)>,
        left: impl ToString,
        right: impl ToString,
        pass: bool,
    ) -> Self {
        IdentityReport {
            identity: identity.into(),
            params,
            left: left.to_string(),
            right: right.to_string(),
            pass,
            notes: vec![],
        }
    }

    pub fn note(mut self, msg: impl Into<String>) -> Self {
        self.notes.push(msg.into());
        self
    }
}

/// Shorthand for the `(name, value)` parameter tuples.
pub fn params_of(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}
