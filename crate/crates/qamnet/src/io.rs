//! Pattern input: headerless numeric CSV and PGM (P2/P5) images.

use std::fs;
use std::path::Path;

use qamnet_core::RawPattern;

use crate::error::{Error, Result};

/// One pattern per row, every row the same length.
pub fn load_csv(path: impl AsRef<Path>) -> Result<Vec<RawPattern>> {
    let path = path.as_ref();
    let text = fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text, path)
}

pub fn parse_csv(data: &[u8], path: &Path) -> Result<Vec<RawPattern>> {
    let err = |line: u64, column: usize, message: String| Error::Csv {
        path: path.to_path_buf(),
        line,
        column,
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(data);
    let mut patterns = Vec::new();
    let mut width = None;
    for row in reader.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            err(line, 0, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() == 1 && row[0].is_empty() {
            continue;
        }
        let expected = *width.get_or_insert(row.len());
        if row.len() != expected {
            return Err(err(
                line,
                row.len().min(expected) + 1,
                format!("ragged row: {} fields, expected {expected}", row.len()),
            ));
        }
        let values = row
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                cell.parse::<f64>()
                    .map_err(|_| err(line, i + 1, format!("not a number: {cell:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let pattern = RawPattern::new(values).map_err(|e| match e {
            qamnet_core::Error::NonFinite { index } => err(line, index + 1, e.to_string()),
            other => err(line, 0, other.to_string()),
        })?;
        patterns.push(pattern);
    }
    if patterns.is_empty() {
        return Err(err(1, 0, "empty file: no patterns".into()));
    }
    Ok(patterns)
}

/// Pixels flattened row-major and divided by maxval. The file stem becomes the label.
pub fn load_pgm(path: impl AsRef<Path>) -> Result<RawPattern> {
    let path = path.as_ref();
    let data = fs::read(path).map_err(|e| Error::io(path, e))?;
    let pattern = parse_pgm(&data).map_err(|m| Error::format(path, m))?;
    Ok(match path.file_stem().and_then(|s| s.to_str()) {
        Some(stem) => pattern.with_label(stem),
        None => pattern,
    })
}

struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.data.len() {
            match self.data[self.pos] {
                b'#' => {
                    while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> std::result::Result<u32, String> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.data.len() && self.data[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(if self.pos >= self.data.len() {
                format!("truncated header: missing {what}")
            } else {
                format!("expected {what}")
            });
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| format!("{what} out of range"))
    }
}

pub fn parse_pgm(data: &[u8]) -> std::result::Result<RawPattern, String> {
    let binary = match data.get(..2) {
        Some(b"P2") => false,
        Some(b"P5") => true,
        _ => return Err("bad magic: expected P2 or P5".into()),
    };
    let mut h = Header { data, pos: 2 };
    let width = h.number("width")? as usize;
    let height = h.number("height")? as usize;
    let maxval = h.number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(format!("maxval {maxval} outside 1..=65535"));
    }
    if width == 0 || height == 0 {
        return Err(format!("empty image {width}x{height}"));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| "image too large".to_string())?;
    let scale = maxval as f64;

    let samples: Vec<u32> = if binary {
        // exactly one whitespace byte separates maxval from the raster
        if h.pos >= data.len() || !data[h.pos].is_ascii_whitespace() {
            return Err("truncated payload: no raster".into());
        }
        let raster = &data[h.pos + 1..];
        let bytes_per = if maxval < 256 { 1 } else { 2 };
        let needed = count * bytes_per;
        if raster.len() < needed {
            return Err(format!(
                "truncated payload: {} of {needed} raster bytes",
                raster.len()
            ));
        }
        if bytes_per == 1 {
            raster[..needed].iter().map(|&b| b as u32).collect()
        } else {
            raster[..needed]
                .chunks_exact(2)
                .map(|c| u16::from_be_bytes([c[0], c[1]]) as u32)
                .collect()
        }
    } else {
        (0..count)
            .map(|i| {
                h.number("sample").map_err(|e| {
                    if e.starts_with("truncated") {
                        format!("truncated payload: {i} of {count} samples")
                    } else {
                        e
                    }
                })
            })
            .collect::<std::result::Result<_, _>>()?
    };
    if let Some(i) = samples.iter().position(|&s| s > maxval) {
        return Err(format!(
            "sample {} at pixel {i} exceeds maxval {maxval}",
            samples[i]
        ));
    }
    RawPattern::new(samples.into_iter().map(|s| s as f64 / scale).collect())
        .map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn csv(text: &str) -> Result<Vec<RawPattern>> {
        parse_csv(text.as_bytes(), Path::new("t.csv"))
    }

    #[test]
    fn csv_examples() {
        let p = csv("1,0\n0,1").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].values(), &[1.0, 0.0]);
        assert_eq!(p[1].values(), &[0.0, 1.0]);
        let p = csv("0.5").unwrap();
        assert_eq!(p[0].values(), &[0.5]);
        let p = csv(" 1.5 , -2e3 \n").unwrap();
        assert_eq!(p[0].values(), &[1.5, -2000.0]);
    }

    #[test]
    fn csv_errors_carry_position() {
        match csv("1,2\n3") {
            Err(Error::Csv { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match csv("1,2\n3,x") {
            Err(Error::Csv { line, column, .. }) => assert_eq!((line, column), (2, 2)),
            other => panic!("{other:?}"),
        }
        match csv("1,nan") {
            Err(Error::Csv { column, .. }) => assert_eq!(column, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(csv(""), Err(Error::Csv { .. })));
    }

    #[test]
    fn pgm_ascii() {
        let p = parse_pgm(b"P2\n# a comment\n2 2\n255\n0 255\n255 0\n").unwrap();
        assert_eq!(p.values(), &[0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn pgm_binary_8_and_16_bit() {
        let p = parse_pgm(b"P5 1 1 255\n\x80").unwrap();
        assert_eq!(p.values(), &[128.0 / 255.0]);
        let p = parse_pgm(b"P5\n2 1\n65535\n\xff\xff\x00\x01").unwrap();
        assert_eq!(p.values(), &[1.0, 1.0 / 65535.0]);
    }

    #[test]
    fn pgm_errors() {
        assert!(parse_pgm(b"P7\n1 1\n255\n0")
            .unwrap_err()
            .contains("bad magic"));
        assert!(parse_pgm(b"P2\n1 1\n0\n0").unwrap_err().contains("maxval"));
        assert!(parse_pgm(b"P5\n2 2\n255\n\x00\x01")
            .unwrap_err()
            .contains("truncated"));
        assert!(parse_pgm(b"P2\n2 2\n255\n0 1 2")
            .unwrap_err()
            .contains("truncated"));
        assert!(parse_pgm(b"P2\n1 1\n10\n11")
            .unwrap_err()
            .contains("exceeds"));
    }
}
