use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A dense `rows x cols` matrix over an exact field.
///
/// Column `j` is the image of the `j`-th basis vector. Entries are stored
/// row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Result of [`solve_or_invert`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inversion {
    Inverse(LinearMap),
    /// A basis of the kernel; every vector is nonzero.
    Singular(Vec<Vec<Scalar>>),
}

impl Inversion {
    pub fn inverse(self) -> Option<LinearMap> {
        match self {
            Inversion::Inverse(m) => Some(m),
            Inversion::Singular(_) => None,
        }
    }

    pub fn is_invertible(&self) -> bool {
        matches!(self, Inversion::Inverse(_))
    }
}

impl LinearMap {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Self {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::from_fn(field, n, n, |i, j| {
            if i == j {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            field,
            rows,
            cols,
            entries,
        }
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch(format!(
                "column of length {} in a matrix with {rows} rows",
                c.len()
            )));
        }
        Ok(Self::from_fn(field, rows, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field);
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a {}x{} matrix",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = &*o + &(a * xj);
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &LinearMap) -> Result<LinearMap> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = LinearMap::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &LinearMap) -> Result<LinearMap> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("matrix sum of different shapes".into()));
        }
        Ok(LinearMap {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    /// Kronecker product, compatible with the row-major flattening
    /// `e_i ⊗ e_j ↦ i * n + j`.
    pub fn kron(&self, rhs: &LinearMap) -> LinearMap {
        LinearMap::from_fn(
            self.field,
            self.rows * rhs.rows,
            self.cols * rhs.cols,
            |i, j| {
                let a = self.get(i / rhs.rows, j / rhs.cols);
                if a.is_zero() {
                    return self.field.zero();
                }
                a * rhs.get(i % rhs.rows, j % rhs.cols)
            },
        )
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn rank(&self) -> usize {
        reduce(self, None).pivots.len()
    }

    /// A basis of the null space.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        kernel_from(&reduce(self, None), self.cols, self.field)
    }

    /// One solution of `self · x = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let b = LinearMap::new(self.field, self.rows, 1, rhs.to_vec())?;
        let rref = reduce(self, Some(&b));
        let rank = rref.pivots.len();
        if rref.rows[rank..].iter().any(|r| !r[self.cols].is_zero()) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in rref.pivots.iter().enumerate() {
            x[pc] = rref.rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Decides invertibility of a square matrix exactly.
///
/// Returns the two-sided inverse, or a maximal basis of the kernel.
pub fn solve_or_invert(m: &LinearMap) -> Result<Inversion> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let id = LinearMap::identity(m.field, n);
    let rref = reduce(m, Some(&id));
    if rref.pivots.len() == n {
        let inv = LinearMap::from_fn(m.field, n, n, |i, j| rref.rows[i][n + j].clone());
        Ok(Inversion::Inverse(inv))
    } else {
        Ok(Inversion::Singular(kernel_from(&rref, n, m.field)))
    }
}

/// Reduced row echelon form of `[m | aug]`, pivots taken only in the `m` block.
struct Rref {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

fn reduce(m: &LinearMap, aug: Option<&LinearMap>) -> Rref {
    let width = m.cols + aug.map_or(0, |a| a.cols);
    let row = |i: usize| -> Vec<Scalar> {
        let mut r: Vec<Scalar> = (0..m.cols).map(|j| m.get(i, j).clone()).collect();
        if let Some(a) = aug {
            r.extend((0..a.cols).map(|j| a.get(i, j).clone()));
        }
        r
    };
    let rows: Vec<Vec<Scalar>> = (0..m.rows).map(row).collect();
    match m.field {
        Field::Rationals => bareiss_rref(rows, m.cols, width),
        Field::Prime(_) => gauss_jordan(rows, m.cols),
    }
}

fn kernel_from(rref: &Rref, ncols: usize, field: Field) -> Vec<Vec<Scalar>> {
    let free = (0..ncols).filter(|c| !rref.pivots.contains(c));
    free.map(|f| {
        let mut v = vec![field.zero(); ncols];
        v[f] = field.one();
        for (r, &pc) in rref.pivots.iter().enumerate() {
            v[pc] = -&rref.rows[r][f];
        }
        v
    })
    .collect()
}

/// Plain Gauss–Jordan elimination; used over GF(p).
fn gauss_jordan(mut rows: Vec<Vec<Scalar>>, pivot_cols: usize) -> Rref {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { rows, pivots }
}

/// Fraction-free (Bareiss) Gauss–Jordan elimination over Q.
///
/// Each row is first cleared of denominators; afterwards every entry stays an
/// integer minor of the cleared matrix, so the division by the previous pivot
/// is exact.
fn bareiss_rref(rows: Vec<Vec<Scalar>>, pivot_cols: usize, width: usize) -> Rref {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row
                .iter()
                .map(|x| x.as_rational().expect("rational entry").denom().clone())
                .fold(BigInt::one(), |acc, d| acc.lcm(&d));
            row.iter()
                .map(|x| {
                    let q = x.as_rational().expect("rational entry");
                    q.numer() * (&lcm / q.denom())
                })
                .collect()
        })
        .collect();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        // smallest nonzero pivot keeps the minors small
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let lead = row[c].clone();
            for j in 0..width {
                let num = &piv * &row[j] - &lead * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    // all pivot entries now equal `prev`; normalise
    let rows = a
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| {
                    if pivots.is_empty() {
                        Scalar::Rational(BigRational::from_integer(x))
                    } else {
                        Scalar::Rational(BigRational::new(x, prev.clone()))
                    }
                })
                .collect()
        })
        .collect();
    Rref { rows, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rationals.from_i64(v)
    }

    fn mat(field: Field, rows: &[&[i64]]) -> LinearMap {
        let r = rows.len();
        let c = rows[0].len();
        LinearMap::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    #[test]
    fn identity_inverts_to_identity() {
        let id = LinearMap::identity(Field::Rationals, 4);
        assert_eq!(solve_or_invert(&id).unwrap(), Inversion::Inverse(id.clone()));
    }

    #[test]
    fn all_ones_is_singular_with_kernel_one_minus_one() {
        let m = mat(Field::Rationals, &[&[1, 1], &[1, 1]]);
        match solve_or_invert(&m).unwrap() {
            Inversion::Singular(k) => {
                assert_eq!(k.len(), 1);
                // span{(1,-1)}: the basis vector is a nonzero multiple of it
                assert_eq!(&k[0][0] + &k[0][1], q(0));
                assert!(!k[0][0].is_zero());
            }
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn non_square_is_an_error() {
        let m = LinearMap::zeros(Field::Rationals, 2, 3);
        assert_eq!(
            solve_or_invert(&m),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn rational_inverse_with_fractions() {
        let f = Field::Rationals;
        let half = f.from_ratio(1, 2).unwrap();
        let m = LinearMap::from_fn(f, 2, 2, |i, j| match (i, j) {
            (0, 0) => half.clone(),
            (0, 1) => q(3),
            (1, 0) => f.from_ratio(-2, 3).unwrap(),
            _ => q(1),
        });
        let inv = solve_or_invert(&m).unwrap().inverse().unwrap();
        assert!(m.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&m).unwrap().is_identity());
    }

    #[test]
    fn gf5_inverse() {
        let f = Field::prime(5).unwrap();
        let m = mat(f, &[&[2, 1], &[1, 1]]);
        let inv = solve_or_invert(&m).unwrap().inverse().unwrap();
        assert!(m.compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn kron_matches_flattening() {
        let f = Field::Rationals;
        let a = mat(f, &[&[1, 2], &[3, 4]]);
        let b = mat(f, &[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        // (a ⊗ b)(e_1 ⊗ e_0) = a e_1 ⊗ b e_0 = (2,4) ⊗ (0,1)
        let col = k.column(2);
        assert_eq!(col, vec![q(0), q(2), q(0), q(4)]);
    }

    #[test]
    fn rank_and_kernel_of_rectangular() {
        let f = Field::Rationals;
        let m = mat(f, &[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).unwrap().iter().all(Scalar::is_zero));
        }
    }
}
