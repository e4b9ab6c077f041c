//! File output: CSV tables and JSON documents, written to a temporary file
//! in the target directory and renamed into place.

use serde::Serialize;
use std::io::Write;
use std::path::Path;

fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

pub fn write_csv_atomic<S: AsRef<str>>(path: &Path, header: &[&str], rows: &[Vec<S>]) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(header).map_err(std::io::Error::other)?;
    for r in rows {
        w.write_record(r.iter().map(|c| c.as_ref())).map_err(std::io::Error::other)?;
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    atomic_write(path, &bytes)
}

pub fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(std::io::Error::other)?;
    bytes.push(b'\n');
    atomic_write(path, &bytes)
}

/// Fixed-precision float formatting used in every emitted table.
pub fn fmt(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else if x.is_nan() {
        "nan".into()
    } else if x == 0.0 {
        format!("{:.12e}", 0.0)
    } else {
        format!("{x:.12e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub/t.csv");
        write_csv_atomic(&p, &["a", "b"], &[vec!["1".to_string(), "x,y".to_string()]]).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text, "a,b\r\n1,\"x,y\"\r\n");
        assert_eq!(std::fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }

    #[test]
    fn float_format_is_stable() {
        assert_eq!(fmt(0.5), "5.000000000000e-1");
        assert_eq!(fmt(f64::NEG_INFINITY), "-inf");
    }
}
