//! The `crc-code.v1` file format.
//!
//! A single JSON object with keys in the fixed order `format`, `n`, `q`,
//! `codewords`, `meta`. Codewords are sorted lexicographically and written
//! one per line so that files diff well. `meta` is free-form and is never
//! trusted when a file is read back.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use crc_forge::{Code, Space, Vertex};
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::CliError;

pub const FORMAT_TAG: &str = "crc-code.v1";

#[derive(Debug, Clone, PartialEq)]
pub struct CodeFile {
    pub code: Code,
    pub meta: Map<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    format: String,
    n: usize,
    q: u32,
    codewords: Vec<Vec<u32>>,
    #[serde(default)]
    meta: Map<String, Value>,
}

impl CodeFile {
    pub fn new(code: Code) -> CodeFile {
        CodeFile { code, meta: Map::new() }
    }

    pub fn with_meta(mut self, key: &str, value: Value) -> CodeFile {
        self.meta.insert(key.to_string(), value);
        self
    }

    pub fn parse(text: &str) -> Result<CodeFile, CliError> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| CliError::Format(e.to_string()))?;
        if raw.format != FORMAT_TAG {
            return Err(CliError::Format(format!("format tag {:?}, expected {FORMAT_TAG:?}", raw.format)));
        }
        let space = Space::new(raw.n, raw.q).map_err(|e| CliError::Format(e.to_string()))?;
        let mut seen = BTreeSet::new();
        let mut vertices = Vec::with_capacity(raw.codewords.len());
        for w in raw.codewords {
            let v = Vertex(w);
            space.check_vertex(&v).map_err(|e| CliError::Format(e.to_string()))?;
            if !seen.insert(v.clone()) {
                return Err(CliError::Format(format!("duplicate codeword {:?}", v.0)));
            }
            vertices.push(v);
        }
        let code = Code::from_vertices(space, &vertices).map_err(|e| CliError::Format(e.to_string()))?;
        Ok(CodeFile { code, meta: raw.meta })
    }

    pub fn read(path: &Path) -> Result<CodeFile, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        CodeFile::parse(&text)
    }

    /// Canonical text; byte-stable for equal codes and metadata.
    pub fn render(&self) -> String {
        let space = self.code.space();
        let mut out = String::new();
        write!(out, "{{\"format\":\"{FORMAT_TAG}\",\"n\":{},\"q\":{},\"codewords\":[", space.n(), space.q()).unwrap();
        // index order is lexicographic order
        for (k, v) in self.code.codewords().enumerate() {
            out.push_str(if k == 0 { "\n" } else { ",\n" });
            out.push_str(&serde_json::to_string(&v.0).unwrap());
        }
        out.push_str("\n],\"meta\":");
        out.push_str(&serde_json::to_string(&self.meta).unwrap());
        out.push_str("}\n");
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.render()).map_err(|e| CliError::Io(path.display().to_string(), e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crc_forge::make_space;

    fn sample() -> CodeFile {
        let s = make_space(3, 2).unwrap();
        CodeFile::new(Code::from_fn(s, |x| x[0] == 1)).with_meta("note", Value::from("half"))
    }

    #[test]
    fn render_is_canonical_and_round_trips() {
        let f = sample();
        let text = f.render();
        assert!(text.starts_with("{\"format\":\"crc-code.v1\",\"n\":3,\"q\":2,\"codewords\":[\n[1,0,0],\n"));
        assert!(text.ends_with("],\"meta\":{\"note\":\"half\"}}\n"));
        let back = CodeFile::parse(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.render(), text);
    }

    #[test]
    fn unsorted_input_is_accepted() {
        let text = r#"{"format":"crc-code.v1","n":2,"q":3,"codewords":[[2,2],[0,1]]}"#;
        let f = CodeFile::parse(text).unwrap();
        assert_eq!(f.code.indices().collect::<Vec<_>>(), vec![1, 8]);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        let bad = [
            r#"{"format":"crc-code.v2","n":2,"q":3,"codewords":[]}"#,
            r#"{"format":"crc-code.v1","n":2,"q":3,"codewords":[[0,3]]}"#,
            r#"{"format":"crc-code.v1","n":2,"q":3,"codewords":[[0,1,2]]}"#,
            r#"{"format":"crc-code.v1","n":2,"q":3,"codewords":[[0,1],[0,1]]}"#,
            r#"{"format":"crc-code.v1","n":2,"q":3,"codewords":[[0,1.5]]}"#,
            r#"{"format":"crc-code.v1","n":2,"q":3,"codewords":[],"extra":1}"#,
            r#"{"format":"crc-code.v1","n":2,"q":1,"codewords":[]}"#,
            "not json",
        ];
        for text in bad {
            assert!(matches!(CodeFile::parse(text), Err(CliError::Format(_))), "{text}");
        }
    }
}
