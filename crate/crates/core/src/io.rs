//! Code-family file formats.
//!
//! Text (.csv): one code per line, comma-separated `1`/`-1` tokens.
//! Packed binary (.prn): 16-byte header — magic `DCOR`, then version, n and
//! T as little-endian u32 — followed by ⌈T/8⌉ bytes per code, MSB-first
//! within each byte, bit 1 ↔ +1. Pad bits in a code's final byte are written
//! as zero and ignored on read.

use std::fs;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::model::CodeMatrix;
use crate::{Error, Result};

pub const PRN_MAGIC: [u8; 4] = *b"DCOR";
pub const PRN_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Prn,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Prn => "prn",
        }
    }
}

pub fn write_csv<W: Write>(x: &CodeMatrix, mut w: W) -> Result<()> {
    let mut line = String::with_capacity(3 * x.t());
    for row in x.rows() {
        line.clear();
        for (i, &v) in row.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            line.push_str(if v == 1 { "1" } else { "-1" });
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn read_csv<R: BufRead>(r: R) -> Result<CodeMatrix> {
    let mut rows: Vec<Vec<i8>> = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|tok| match tok.trim() {
                "1" => Ok(1),
                "-1" => Ok(-1),
                other => Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected 1 or -1, got {other:?}"),
                }),
            })
            .collect::<Result<Vec<i8>>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected {} entries, got {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    CodeMatrix::from_rows(rows)
}

pub fn write_prn<W: Write>(x: &CodeMatrix, mut w: W) -> Result<()> {
    w.write_all(&PRN_MAGIC)?;
    w.write_all(&PRN_VERSION.to_le_bytes())?;
    w.write_all(&(x.n() as u32).to_le_bytes())?;
    w.write_all(&(x.t() as u32).to_le_bytes())?;
    let stride = x.t().div_ceil(8);
    let mut packed = vec![0u8; stride];
    for row in x.rows() {
        packed.fill(0);
        for (b, &v) in row.iter().enumerate() {
            if v == 1 {
                packed[b / 8] |= 0x80 >> (b % 8);
            }
        }
        w.write_all(&packed)?;
    }
    Ok(())
}

pub fn read_prn(bytes: &[u8]) -> Result<CodeMatrix> {
    if bytes.len() < 16 {
        return Err(Error::Format("file shorter than the 16-byte header".into()));
    }
    if bytes[..4] != PRN_MAGIC {
        return Err(Error::Format("bad magic (expected DCOR)".into()));
    }
    let word = |at: usize| u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap());
    let version = word(4);
    if version != PRN_VERSION {
        return Err(Error::Format(format!(
            "unsupported version {version} (expected {PRN_VERSION})"
        )));
    }
    let n = word(8) as usize;
    let t = word(12) as usize;
    if n < 1 || t < 2 {
        return Err(Error::InvalidDimensions { n, t });
    }
    let stride = t.div_ceil(8);
    let expect = 16 + n * stride;
    if bytes.len() != expect {
        return Err(Error::Format(format!(
            "expected {expect} bytes for n={n}, T={t}, got {}",
            bytes.len()
        )));
    }
    let mut entries = Vec::with_capacity(n * t);
    for code in bytes[16..].chunks_exact(stride) {
        entries.extend((0..t).map(|b| {
            if code[b / 8] & (0x80 >> (b % 8)) != 0 {
                1
            } else {
                -1
            }
        }));
    }
    CodeMatrix::new(n, t, entries)
}

/// Load a code family, sniffing the format from the leading magic bytes.
pub fn read_code_file(path: &Path) -> Result<CodeMatrix> {
    let bytes = fs::read(path)?;
    if bytes.starts_with(&PRN_MAGIC) {
        read_prn(&bytes)
    } else {
        read_csv(bytes.as_slice())
    }
}

pub fn write_code_file(path: &Path, x: &CodeMatrix, format: Format) -> Result<()> {
    let mut file = std::io::BufWriter::new(fs::File::create(path)?);
    match format {
        Format::Csv => write_csv(x, &mut file)?,
        Format::Prn => write_prn(x, &mut file)?,
    }
    file.flush()?;
    Ok(())
}
