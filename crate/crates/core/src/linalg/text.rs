//! Plain-text matrix format: a `rows cols` header line followed by one line
//! per row of space-separated values in shortest round-trip form.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use super::Matrix;
use crate::error::{Error, Result};

pub fn write_matrix<W: Write>(m: &Matrix, mut w: W) -> std::io::Result<()> {
    let mut buf = ryu::Buffer::new();
    writeln!(w, "{} {}", m.rows(), m.cols())?;
    for i in 0..m.rows() {
        let mut line = String::new();
        for (j, v) in m.row(i).iter().enumerate() {
            if j > 0 {
                line.push(' ');
            }
            line.push_str(buf.format_finite(*v));
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn read_matrix<R: BufRead>(r: R) -> Result<Matrix> {
    let mut lines = r.lines().enumerate();
    let (rows, cols) = loop {
        let Some((idx, line)) = lines.next() else {
            return Err(Error::Parse {
                line: 1,
                msg: "missing `rows cols` header".into(),
            });
        };
        let line = line.map_err(|e| Error::Parse {
            line: idx + 1,
            msg: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let dims: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("bad dimension {s:?}"),
            })
        };
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("header needs 2 integers, got {}", dims.len()),
            });
        }
        break (parse(dims[0])?, parse(dims[1])?);
    };

    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (idx, line) in lines {
        let line = line.map_err(|e| Error::Parse {
            line: idx + 1,
            msg: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        if seen == rows {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("more than {rows} rows"),
            });
        }
        let before = data.len();
        for tok in line.split_whitespace() {
            let v = tok.parse::<f64>().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("bad value {tok:?}"),
            })?;
            data.push(v);
        }
        if data.len() - before != cols {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("expected {cols} values, got {}", data.len() - before),
            });
        }
        seen += 1;
    }
    if seen != rows {
        return Err(Error::Parse {
            line: seen + 2,
            msg: format!("expected {rows} rows, got {seen}"),
        });
    }
    Matrix::new(rows, cols, data)
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<Matrix> {
    let path = path.as_ref();
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    read_matrix(BufReader::new(f))
}

pub fn save_matrix(m: &Matrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let f = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(f);
    write_matrix(m, &mut w).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

impl Matrix {
    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        write_matrix(self, &mut out).expect("writing to a Vec cannot fail");
        String::from_utf8(out).expect("ASCII output")
    }
}

impl FromStr for Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        read_matrix(s.as_bytes())
    }
}
