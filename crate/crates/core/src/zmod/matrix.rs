use std::fmt;

use super::arith::{add_mod, mul_mod};
use crate::error::{Error, Result};

/// A dense matrix with entries in `Z/modulus`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ResidueMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        ResidueMatrix { modulus, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from raw entries, rejecting entries that are not
    /// already reduced.
    pub fn new(modulus: u64, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(modulus));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|&&x| x >= modulus) {
            return Err(Error::InvalidInput(format!("entry {bad} not reduced modulo {modulus}")));
        }
        Ok(ResidueMatrix { modulus, rows, cols, data })
    }

    /// Builds a matrix from rows of equal length, reducing every entry.
    pub fn from_rows<R: AsRef<[u64]>>(modulus: u64, cols: usize, rows: &[R]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(modulus));
        }
        let mut m = Self::zeros(modulus, 0, cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            m.push_row(r);
        }
        Ok(m)
    }

    /// Signed-entry convenience constructor; entries are reduced into `[0, modulus)`.
    pub fn from_signed(modulus: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let reduced: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| (x as i128).rem_euclid(modulus as i128) as u64).collect())
            .collect();
        Self::from_rows(modulus, cols, &reduced)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.data[i * self.cols + j] = value % self.modulus;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u64]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        let m = self.modulus;
        self.data.extend(row.iter().map(|&x| x % m));
        self.rows += 1;
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&self, other: &ResidueMatrix) -> Result<ResidueMatrix> {
        if self.cols != other.cols || self.modulus != other.modulus {
            return Err(Error::DimensionMismatch("stacking incompatible matrices".into()));
        }
        let mut out = self.clone();
        out.data.extend_from_slice(&other.data);
        out.rows += other.rows;
        Ok(out)
    }

    pub fn transpose(&self) -> ResidueMatrix {
        let mut t = Self::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &ResidueMatrix) -> Result<ResidueMatrix> {
        if self.cols != other.rows || self.modulus != other.modulus {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = self.modulus;
        let mut out = Self::zeros(m, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = add_mod(*d, mul_mod(a, b, m), m);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `v * self`.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let m = self.modulus;
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a % m == 0 {
                continue;
            }
            for (d, &b) in out.iter_mut().zip(self.row(k)) {
                *d = add_mod(*d, mul_mod(a, b, m), m);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Same entries viewed modulo a divisor or multiple of the modulus.
    /// Entries are re-reduced; callers guarantee this is meaningful.
    pub fn with_modulus(&self, modulus: u64) -> ResidueMatrix {
        ResidueMatrix {
            modulus,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x % modulus).collect(),
        }
    }
}

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ResidueMatrix mod {} ({}x{})", self.modulus, self.rows, self.cols)?;
        for r in self.row_iter() {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}
