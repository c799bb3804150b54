use crate::error::{Error, Result};

/// Ordered list of coordinate names shared by every polynomial in a computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarCtx {
    names: Vec<String>,
}

impl VarCtx {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::VarCtx("at least one variable is required".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::VarCtx(format!("`{name}` is not an identifier")));
            }
            if names[..i].contains(name) {
                return Err(Error::VarCtx(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Self { names })
    }

    /// `x1, ..., xn`.
    pub fn standard(n: usize) -> Self {
        assert!(n >= 1, "a variable context needs at least one variable");
        Self {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
