//! Matrices over the polynomial ring: determinants, determinantal ideals and generic rank.

mod ideal;

use std::fmt;

use thiserror::Error;

use crate::poly::{Polynomial, Ring};

pub use ideal::Ideal;

/// Largest minor size expanded by cofactors; Bareiss elimination takes over above it.
const COFACTOR_LIMIT: usize = 4;

pub const DEFAULT_MAX_MINOR_COUNT: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    Shape { rows: usize, cols: usize, expected: usize, got: usize },
    #[error("entries belong to different rings")]
    RingMismatch,
    #[error("cannot multiply {0}x{1} by {2}x{3}")]
    ProductShape(usize, usize, usize, usize),
    #[error("{count} minors of size {t} exceed the limit of {limit}")]
    TooManyMinors { t: usize, count: u128, limit: u64 },
}

/// A dense `rows x cols` matrix of polynomials, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl PolyMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Shape { rows, cols, expected: rows * cols, got: entries.len() });
        }
        if entries.iter().any(|e| !Polynomial::zero(ring).same_ring(e)) {
            return Err(MatrixError::RingMismatch);
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(MatrixError::Shape { rows: r, cols: c, expected: c, got: bad.len() });
        }
        Self::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Polynomial {
        &mut self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Polynomial) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// Position and value of the first nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Polynomial)> {
        self.entries.iter().position(|e| !e.is_zero()).map(|k| (k / self.cols, k % self.cols, &self.entries[k]))
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Polynomial::neg).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::ProductShape(self.rows, self.cols, other.rows, other.cols));
        }
        if !Polynomial::zero(&self.ring).same_ring(&Polynomial::zero(&other.ring)) {
            return Err(MatrixError::RingMismatch);
        }
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, other.cols);
        // sparse rows of `other`
        let other_rows: Vec<Vec<(usize, &Polynomial)>> =
            (0..other.rows).map(|k| other.row(k).iter().enumerate().filter(|(_, e)| !e.is_zero()).collect()).collect();
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in &other_rows[k] {
                    let cell = out.get_mut(i, *j);
                    *cell = cell.add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn determinant(&self) -> Result<Polynomial, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.minor(&idx, &idx))
    }

    /// Determinant of the submatrix on the given (equal-length) row and column sets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        debug_assert_eq!(rows.len(), cols.len());
        if rows.len() <= COFACTOR_LIMIT {
            cofactor(self, rows, cols)
        } else {
            bareiss_det(self.submatrix(rows, cols))
        }
    }

    /// The ideal `I_t` of `t x t` minors, with `I_t = R` for `t <= 0` and `I_t = 0` beyond the size.
    ///
    /// Generators are emitted in lexicographic order of (row set, column set), zero minors dropped.
    pub fn minors_ideal(&self, t: i64, max_minor_count: u64) -> Result<Ideal, MatrixError> {
        if t <= 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        let t = t as usize;
        if t > self.rows.min(self.cols) {
            return Ok(Ideal::zero(&self.ring));
        }
        let count = binomial_u128(self.rows, t) * binomial_u128(self.cols, t);
        if count > max_minor_count as u128 {
            return Err(MatrixError::TooManyMinors { t, count, limit: max_minor_count });
        }
        let row_sets = combinations(self.rows, t);
        let col_sets = combinations(self.cols, t);
        let mut gens = Vec::new();
        for rs in &row_sets {
            for cs in &col_sets {
                let d = self.minor(rs, cs);
                if !d.is_zero() {
                    gens.push(d);
                }
            }
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    /// Rank over the fraction field, by fraction-free elimination.
    pub fn rank_over_fraction_field(&self) -> usize {
        let mut m = self.clone();
        let mut prev = Polynomial::one(&self.ring);
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = pick_pivot(&m, rank, c) else { continue };
            m.swap_rows(rank, p);
            let pivot = m.get(rank, c).clone();
            for i in rank + 1..m.rows {
                let lead = m.get(i, c).clone();
                for j in c + 1..m.cols {
                    let v = m.get(i, j).mul(&pivot).sub(&lead.mul(m.get(rank, j)));
                    let v = v.div_exact(&prev).expect("fraction-free elimination divides exactly");
                    m.set(i, j, v);
                }
                m.set(i, c, Polynomial::zero(&self.ring));
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Row index `>= from` with the sparsest nonzero entry in column `c`.
fn pick_pivot(m: &PolyMatrix, from: usize, c: usize) -> Option<usize> {
    (from..m.rows).filter(|&r| !m.get(r, c).is_zero()).min_by_key(|&r| m.get(r, c).len())
}

/// Cofactor expansion along the row or column with the most zeros.
fn cofactor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    let n = rows.len();
    let ring = m.ring();
    match n {
        0 => return Polynomial::one(ring),
        1 => return m.get(rows[0], cols[0]).clone(),
        2 => {
            let a = m.get(rows[0], cols[0]).mul(m.get(rows[1], cols[1]));
            let b = m.get(rows[0], cols[1]).mul(m.get(rows[1], cols[0]));
            return a.sub(&b);
        }
        _ => {}
    }
    let zeros_in_row = |r: usize| cols.iter().filter(|&&c| m.get(rows[r], c).is_zero()).count();
    let zeros_in_col = |c: usize| rows.iter().filter(|&&r| m.get(r, cols[c]).is_zero()).count();
    let (best_row, row_zeros) =
        (0..n).map(|r| (r, zeros_in_row(r))).max_by_key(|&(r, z)| (z, std::cmp::Reverse(r))).unwrap();
    let (best_col, col_zeros) =
        (0..n).map(|c| (c, zeros_in_col(c))).max_by_key(|&(c, z)| (z, std::cmp::Reverse(c))).unwrap();
    let mut acc = Polynomial::zero(ring);
    let mut sub_rows = Vec::with_capacity(n - 1);
    let mut sub_cols = Vec::with_capacity(n - 1);
    if row_zeros >= col_zeros {
        let r = best_row;
        sub_rows.extend(rows.iter().enumerate().filter(|(i, _)| *i != r).map(|(_, &x)| x));
        for (k, &c) in cols.iter().enumerate() {
            let e = m.get(rows[r], c);
            if e.is_zero() {
                continue;
            }
            sub_cols.clear();
            sub_cols.extend(cols.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, &x)| x));
            let term = e.mul(&cofactor(m, &sub_rows, &sub_cols));
            acc = if (r + k) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
    } else {
        let c = best_col;
        sub_cols.extend(cols.iter().enumerate().filter(|(i, _)| *i != c).map(|(_, &x)| x));
        for (k, &r) in rows.iter().enumerate() {
            let e = m.get(r, cols[c]);
            if e.is_zero() {
                continue;
            }
            sub_rows.clear();
            sub_rows.extend(rows.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, &x)| x));
            let term = e.mul(&cofactor(m, &sub_rows, &sub_cols));
            acc = if (c + k) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
    }
    acc
}

/// Fraction-free Gaussian elimination; every division is exact.
fn bareiss_det(mut m: PolyMatrix) -> Polynomial {
    let n = m.rows;
    let ring = m.ring.clone();
    let mut negate = false;
    let mut prev = Polynomial::one(&ring);
    for k in 0..n {
        let Some(p) = pick_pivot(&m, k, k) else {
            return Polynomial::zero(&ring);
        };
        if p != k {
            m.swap_rows(k, p);
            negate = !negate;
        }
        let pivot = m.get(k, k).clone();
        for i in k + 1..n {
            let lead = m.get(i, k).clone();
            for j in k + 1..n {
                let v = m.get(i, j).mul(&pivot).sub(&lead.mul(m.get(k, j)));
                m.set(i, j, v.div_exact(&prev).expect("Bareiss division is exact"));
            }
        }
        prev = pivot;
    }
    if negate {
        prev.neg()
    } else {
        prev
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, RingConfig};

    fn mat(r: &Ring, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            r,
            rows.iter().map(|row| row.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()).collect(),
        )
        .unwrap()
    }

    fn xyz() -> Ring {
        RingConfig::new(["x", "y", "z"], 0).unwrap()
    }

    fn pd1_matrix(r: &Ring) -> PolyMatrix {
        mat(r, &[&["-y*z", "-x*z^2"], &["x^2", "0"], &["0", "z"]])
    }

    #[test]
    fn two_by_two() {
        let r = RingConfig::new(["x", "y", "z", "w"], 0).unwrap();
        let m = mat(&r, &[&["x", "y"], &["z", "w"]]);
        assert_eq!(m.determinant().unwrap(), parse_polynomial("x*w - y*z", &r).unwrap());
        assert_eq!(PolyMatrix::identity(&r, 3).determinant().unwrap(), Polynomial::one(&r));
    }

    #[test]
    fn non_square_determinant_fails() {
        let r = xyz();
        assert!(matches!(pd1_matrix(&r).determinant(), Err(MatrixError::NotSquare { rows: 3, cols: 2 })));
    }

    #[test]
    fn pd1_minors() {
        let r = xyz();
        let m = pd1_matrix(&r);
        let top = m.submatrix(&[0, 1], &[0, 1]).determinant().unwrap();
        assert_eq!(top.to_string(), "x^3*z^2");
        let i2 = m.minors_ideal(2, DEFAULT_MAX_MINOR_COUNT).unwrap();
        let printed: Vec<String> = i2.generators().iter().map(ToString::to_string).collect();
        assert_eq!(printed, vec!["x^3*z^2", "-y*z^2", "x^2*z"]);
        let i1 = m.minors_ideal(1, DEFAULT_MAX_MINOR_COUNT).unwrap();
        let printed: Vec<String> = i1.generators().iter().map(ToString::to_string).collect();
        assert_eq!(printed, vec!["-y*z", "-x*z^2", "x^2", "z"]);
        assert!(m.minors_ideal(0, 10).unwrap().is_unit());
        assert!(m.minors_ideal(-3, 10).unwrap().is_unit());
        assert!(m.minors_ideal(3, 10).unwrap().is_zero());
    }

    #[test]
    fn minor_guard() {
        let r = xyz();
        assert!(matches!(pd1_matrix(&r).minors_ideal(1, 5), Err(MatrixError::TooManyMinors { count: 6, .. })));
    }

    #[test]
    fn ranks() {
        let r = xyz();
        assert_eq!(pd1_matrix(&r).rank_over_fraction_field(), 2);
        assert_eq!(PolyMatrix::zeros(&r, 3, 4).rank_over_fraction_field(), 0);
        assert_eq!(PolyMatrix::identity(&r, 5).rank_over_fraction_field(), 5);
        // rank-1 matrix with polynomial entries
        let m = mat(&r, &[&["x", "y"], &["x*z", "y*z"], &["x^2", "x*y"]]);
        assert_eq!(m.rank_over_fraction_field(), 1);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let r = xyz();
        let m = mat(
            &r,
            &[
                &["x", "y", "0", "1", "z"],
                &["y", "z^2", "x", "0", "1"],
                &["1", "x", "y", "z", "0"],
                &["z", "0", "x*y", "y", "x"],
                &["0", "1", "z", "x", "y^2"],
            ],
        );
        let idx: Vec<usize> = (0..5).collect();
        assert_eq!(bareiss_det(m.clone()), cofactor(&m, &idx, &idx));
    }

    #[test]
    fn combinations_lex() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(binomial_u128(7, 4), 35);
    }
}
