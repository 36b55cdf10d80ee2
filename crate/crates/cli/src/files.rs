//! Family files: JSON (`{"n", "sets"}`), tilde JSON (`{"n", "g2", "g3"}`)
//! and the line-oriented text format.

use std::path::Path;

use tracelab::constructions::TildeFamily;
use tracelab::SetFamily;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Format {
    /// `.txt` selects the text format; everything else is JSON.
    pub fn for_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("txt") => Format::Text,
            _ => Format::Json,
        }
    }
}

pub enum Content {
    Family(SetFamily),
    Tilde(TildeFamily),
}

pub struct Loaded {
    pub bytes: Vec<u8>,
    pub format: Format,
    pub content: Content,
}

impl Loaded {
    /// Tilde files are widened to the full family with `∅` and singletons.
    pub fn full_family(&self) -> SetFamily {
        match &self.content {
            Content::Family(f) => f.clone(),
            Content::Tilde(t) => t.to_full(),
        }
    }

    pub fn canonical_bytes(&self) -> String {
        match &self.content {
            Content::Family(f) => encode_family(f, self.format),
            Content::Tilde(t) => encode_tilde(t),
        }
    }
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Usage(format!("{} is not UTF-8", path.display())))?;
    let (format, content) = if text.trim_start().starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(&text).map_err(tracelab::Error::from)?;
        if v.get("g2").is_some() || v.get("g3").is_some() {
            (Format::Json, Content::Tilde(TildeFamily::from_json(&text)?))
        } else {
            (Format::Json, Content::Family(SetFamily::from_json(&text)?))
        }
    } else {
        (Format::Text, Content::Family(SetFamily::from_text(&text)?))
    };
    Ok(Loaded {
        bytes,
        format,
        content,
    })
}

pub fn encode_family(f: &SetFamily, format: Format) -> String {
    match format {
        Format::Json => f.to_json() + "\n",
        Format::Text => f.to_text(),
    }
}

pub fn encode_tilde(t: &TildeFamily) -> String {
    t.to_json() + "\n"
}

pub fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(path.to_path_buf(), e))
}
