use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidParams(format!("unknown format {s:?}; expected csv or json"))),
        }
    }
}

/// One output table; `suffix` names auxiliary tables written next to the main one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderedTable {
    pub suffix: Option<&'static str>,
    pub bytes: Vec<u8>,
}

/// CSV with a header row, or a JSON array of objects with the same keys.
pub fn render_rows<T: Serialize>(rows: &[T], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            w.into_inner()
                .map_err(|e| Error::InvalidInput(format!("flushing CSV: {}", e.error())))
        }
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(rows)?;
            bytes.push(b'\n');
            Ok(bytes)
        }
    }
}

/// `out/table1.csv` with suffix `trials` becomes `out/table1.trials.csv`.
pub fn sibling_path(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    let name = match path.extension() {
        Some(ext) => format!("{stem}.{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{suffix}"),
    };
    path.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        name: &'static str,
        value: f64,
    }

    #[test]
    fn csv_and_json_share_keys() {
        let rows = [Row { name: "a,b", value: 0.5 }, Row { name: "c", value: 2.0 }];
        let csv = String::from_utf8(render_rows(&rows, Format::Csv).unwrap()).unwrap();
        assert_eq!(csv, "name,value\n\"a,b\",0.5\nc,2.0\n");
        let json: serde_json::Value = serde_json::from_slice(&render_rows(&rows, Format::Json).unwrap()).unwrap();
        assert_eq!(json[1]["value"], 2.0);
    }

    #[test]
    fn sibling_names() {
        assert_eq!(sibling_path(Path::new("out/t.csv"), "trials"), PathBuf::from("out/t.trials.csv"));
        assert_eq!(sibling_path(Path::new("t"), "summary"), PathBuf::from("t.summary"));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
