use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::exact::{Ring, Scalar};

/// Dense row-major matrix over one of the exact rings.
///
/// `0 x k` and `k x 0` matrices are ordinary values; they carry the
/// morphisms into and out of zero objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.ring() != ring) {
            return Err(Error::WrongRing {
                expected: "entries in the matrix ring",
                got: bad.ring().to_string(),
            });
        }
        Ok(ExactMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    /// Row-major integer entries mapped into `ring`.
    pub fn from_i64(ring: Ring, rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "entry count");
        ExactMatrix {
            ring,
            rows,
            cols,
            entries: values.iter().map(|&v| ring.from_i64(v)).collect(),
        }
    }

    pub fn from_rows(ring: Ring, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let flat: Vec<i64> = rows
            .iter()
            .inspect(|r| assert_eq!(r.len(), cols, "ragged rows"))
            .flatten()
            .copied()
            .collect();
        Self::from_i64(ring, rows.len(), cols, &flat)
    }

    pub(crate) fn from_bigints(ring: Ring, rows: usize, cols: usize, values: &[BigInt]) -> Self {
        debug_assert_eq!(values.len(), rows * cols);
        ExactMatrix {
            ring,
            rows,
            cols,
            entries: values.iter().map(|v| ring.from_bigint(v)).collect(),
        }
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            ring,
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = ring.one();
        }
        m
    }

    /// Diagonal `rows x cols` matrix with the given leading diagonal.
    pub fn diagonal(ring: Ring, rows: usize, cols: usize, diag: &[Scalar]) -> Self {
        let mut m = Self::zeros(ring, rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.ring(), self.ring);
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> ExactMatrix {
        self.select(&(0..self.rows).collect::<Vec<_>>(), &[j])
    }

    pub fn row(&self, i: usize) -> ExactMatrix {
        self.select(&[i], &(0..self.cols).collect::<Vec<_>>())
    }

    /// Submatrix with the listed rows and columns, in the listed order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            ring: self.ring,
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> ExactMatrix {
        self.select(rows, &(0..self.cols).collect::<Vec<_>>())
    }

    pub fn select_cols(&self, cols: &[usize]) -> ExactMatrix {
        self.select(&(0..self.rows).collect::<Vec<_>>(), cols)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            ring: self.ring,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn checked_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows || self.ring != other.ring {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} over {} by {}x{} over {}",
                self.rows, self.cols, self.ring, other.rows, other.cols, other.ring
            )));
        }
        let mut out = ExactMatrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.shape() != other.shape() || self.ring != other.ring {
            return Err(Error::shape("addition of mismatched matrices"));
        }
        Ok(ExactMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> ExactMatrix {
        ExactMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> ExactMatrix {
        ExactMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    /// Side-by-side concatenation; all blocks need the same row count.
    pub fn hstack(ring: Ring, rows: usize, blocks: &[&ExactMatrix]) -> Result<ExactMatrix> {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = ExactMatrix::zeros(ring, rows, cols);
        let mut off = 0;
        for b in blocks {
            if b.rows != rows || b.ring != ring {
                return Err(Error::shape("hstack of mismatched blocks"));
            }
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, off + j, b.get(i, j).clone());
                }
            }
            off += b.cols;
        }
        Ok(out)
    }

    /// Stacked concatenation; all blocks need the same column count.
    pub fn vstack(ring: Ring, cols: usize, blocks: &[&ExactMatrix]) -> Result<ExactMatrix> {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for b in blocks {
            if b.cols != cols || b.ring != ring {
                return Err(Error::shape("vstack of mismatched blocks"));
            }
            entries.extend(b.entries.iter().cloned());
        }
        Ok(ExactMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    /// Block-diagonal sum of the given matrices.
    pub fn block_diagonal(ring: Ring, blocks: &[&ExactMatrix]) -> ExactMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = ExactMatrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Entry-wise image in another ring; `None` if some entry has no
    /// integer representative (a non-integral rational).
    pub fn cast(&self, ring: Ring) -> Option<ExactMatrix> {
        Some(ExactMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|e| e.cast(ring))
                .collect::<Option<Vec<_>>>()?,
        })
    }

    pub(crate) fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.entries.iter().map(Scalar::to_bigint).collect()
    }

    pub fn to_json(&self) -> Json {
        let entries: Vec<Json> = (0..self.rows)
            .map(|i| Json::Array((0..self.cols).map(|j| self.get(i, j).to_json()).collect()))
            .collect();
        json!({
            "ring": self.ring.to_string(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": entries,
        })
    }

    pub fn from_json(v: &Json) -> Result<ExactMatrix> {
        let ring: Ring = v
            .get("ring")
            .and_then(Json::as_str)
            .ok_or_else(|| Error::spec("matrix needs a \"ring\" string"))?
            .parse()?;
        let entries = v
            .get("entries")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::spec("matrix needs an \"entries\" array"))?;
        let rows = match v.get("rows") {
            Some(r) => r.as_u64().ok_or_else(|| Error::spec("bad \"rows\""))? as usize,
            None => entries.len(),
        };
        let cols = match v.get("cols") {
            Some(c) => c.as_u64().ok_or_else(|| Error::spec("bad \"cols\""))? as usize,
            None => entries
                .first()
                .and_then(Json::as_array)
                .map_or(0, Vec::len),
        };
        if entries.len() != rows {
            return Err(Error::spec(format!("expected {rows} rows, found {}", entries.len())));
        }
        let mut flat = Vec::with_capacity(rows * cols);
        for row in entries {
            let row = row
                .as_array()
                .ok_or_else(|| Error::spec("matrix rows must be arrays"))?;
            if row.len() != cols {
                return Err(Error::spec(format!("expected {cols} columns, found {}", row.len())));
            }
            for e in row {
                flat.push(ring.parse_json(e)?);
            }
        }
        ExactMatrix::new(ring, rows, cols, flat)
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).expect("matrix product shape")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "] over {}", self.ring)
    }
}
