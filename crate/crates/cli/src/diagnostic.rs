use std::fmt;

use serde::Serialize;

/// 1-based line and column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

/// An error report, located in an input file when possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub file: Option<String>,
    pub span: Option<Span>,
    pub message: String,
}

impl Diagnostic {
    pub fn at(span: Span, message: impl Into<String>) -> Self {
        Diagnostic { file: None, span: Some(span), message: message.into() }
    }

    pub fn new(message: impl Into<String>) -> Self {
        Diagnostic { file: None, span: None, message: message.into() }
    }

    pub fn in_file(mut self, file: &str) -> Self {
        self.file = Some(file.to_string());
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
        }
        if let Some(s) = self.span {
            write!(f, "{}:{}:", s.line, s.column)?;
        }
        if self.file.is_some() || self.span.is_some() {
            f.write_str(" ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for Diagnostic {}

impl Serialize for Diagnostic {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Diagnostic", 4)?;
        s.serialize_field("file", &self.file)?;
        s.serialize_field("line", &self.span.map(|s| s.line))?;
        s.serialize_field("column", &self.span.map(|s| s.column))?;
        s.serialize_field("message", &self.message)?;
        s.end()
    }
}
