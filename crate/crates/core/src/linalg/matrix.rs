use std::fmt;

use crate::error::{Error, Result};
use crate::exec::Execution;

use super::Rational;

/// Serialized as a list of rows.
impl serde::Serialize for RatMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            seq.serialize_element(self.row(r))?;
        }
        seq.end()
    }
}

/// Rows below this count are eliminated sequentially regardless of mode.
const PARALLEL_ROW_THRESHOLD: usize = 64;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let nrows = rows.len();
        Ok(RatMatrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer convenience constructor, mostly for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect()).expect("rectangular input")
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("column length differs from row count".into()));
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        }))
    }

    /// Block-diagonal sum `self ⊕ other`.
    /// `self` on top of `lower`.
    pub fn vstack(&self, lower: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != lower.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, lower.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(lower.data.iter().cloned());
        Ok(RatMatrix {
            rows: self.rows + lower.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn direct_sum(&self, other: &RatMatrix) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        self.rref_with(Execution::default())
    }

    /// Reduced row-echelon form and pivot columns, by Gauss-Jordan elimination.
    pub fn rref_with(&self, exec: Execution) -> (RatMatrix, Vec<usize>) {
        let (nrows, ncols) = (self.rows, self.cols);
        let mut rows: Vec<Vec<Rational>> = (0..nrows).map(|r| self.row(r).to_vec()).collect();
        let exec = if nrows >= PARALLEL_ROW_THRESHOLD {
            exec
        } else {
            Execution::Sequential
        };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&p| !rows[p][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            let pivot_row = rows[r].clone();
            exec.for_each_mut(&mut rows, |i, row| {
                if i == r || row[c].is_zero() {
                    return;
                }
                let factor = row[c].clone();
                for j in c..ncols {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &factor * &pivot_row[j];
                    }
                }
            });
            pivots.push(c);
            r += 1;
        }
        let data = rows.into_iter().flatten().collect();
        (
            RatMatrix {
                rows: nrows,
                cols: ncols,
                data,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn rank_with(&self, exec: Execution) -> usize {
        self.rref_with(exec).1.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.kernel_basis_with(Execution::default())
    }

    /// Basis of `{ v : self·v = 0 }`, one vector per free column.
    pub fn kernel_basis_with(&self, exec: Execution) -> Vec<Vec<Rational>> {
        let (red, pivots) = self.rref_with(exec);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -red.get(i, f);
                }
                v
            })
            .collect()
    }

    /// A particular solution of `self·x = b`, `Ok(None)` if the system is
    /// inconsistent, `Err` if `b` has the wrong length.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let augmented = self.hstack(&RatMatrix::from_columns(self.rows, &[b.to_vec()])?)?;
        let (red, pivots) = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    m.rref()
}

pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}

pub fn rank(m: &RatMatrix) -> usize {
    m.rank()
}

pub fn solve(m: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    m.solve(b)
}

/// `dim(span(ambient) / span(sub))` for column generators, after checking
/// that `span(sub) ⊆ span(ambient)`.
pub fn quotient_dim(sub_generators: &RatMatrix, ambient_generators: &RatMatrix) -> Result<usize> {
    quotient_dim_with(sub_generators, ambient_generators, Execution::default())
}

pub fn quotient_dim_with(sub_generators: &RatMatrix, ambient_generators: &RatMatrix, exec: Execution) -> Result<usize> {
    let ambient = ambient_generators.rank_with(exec);
    let joint = ambient_generators.hstack(sub_generators)?.rank_with(exec);
    if joint != ambient {
        return Err(Error::NotASubspace);
    }
    Ok(ambient - sub_generators.rank_with(exec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn rref_examples() {
        let (r, p) = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, RatMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let id = RatMatrix::identity(3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));

        let (r, p) = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]).rref();
        assert_eq!(r, RatMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        let k = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k, vec![vec![q(-2), q(1)]]);
        assert!(RatMatrix::identity(4).kernel_basis().is_empty());
        assert_eq!(RatMatrix::zeros(2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn rank_and_solve_examples() {
        assert_eq!(RatMatrix::zeros(3, 2).rank(), 0);
        let b = vec![q(3), Rational::new(-1, 2), q(7)];
        assert_eq!(RatMatrix::identity(3).solve(&b).unwrap(), Some(b.clone()));
        let x = RatMatrix::from_i64(&[&[1, 1]]).solve(&[q(3)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], q(3));
        assert_eq!(RatMatrix::from_i64(&[&[1, 1], &[1, 1]]).solve(&[q(1), q(2)]).unwrap(), None);
        assert!(matches!(
            RatMatrix::identity(2).solve(&[q(1)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn quotient_dim_examples() {
        let id = RatMatrix::identity(2);
        assert_eq!(quotient_dim(&RatMatrix::zeros(2, 1), &id).unwrap(), 2);
        assert_eq!(quotient_dim(&id, &id).unwrap(), 0);
        let sub = RatMatrix::from_i64(&[&[1], &[0]]);
        assert_eq!(quotient_dim(&sub, &id).unwrap(), 1);
        let line = RatMatrix::from_i64(&[&[1], &[0]]);
        let other = RatMatrix::from_i64(&[&[0], &[1]]);
        assert!(matches!(quotient_dim(&other, &line), Err(Error::NotASubspace)));
    }

    #[test]
    fn parallel_and_sequential_rref_agree() {
        let m = RatMatrix::from_fn(80, 30, |r, c| Rational::from(((r * 7 + c * 13) % 5) as i64 - 2));
        assert_eq!(m.rref_with(Execution::Sequential), m.rref_with(Execution::Parallel));
    }
}
