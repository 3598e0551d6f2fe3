//! Dense exact matrices: reduced row echelon form, rank, kernel bases.
//!
//! Row reduction is plain fraction-free-less Gaussian elimination over the
//! rationals; exactness makes pivot choices a question of convenience only.
//! Pivot columns are always reported in increasing column order.

use crate::freevec::FreeVector;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Reduced row echelon form together with the pivot columns.
///
/// Every pivot is 1, pivot columns are otherwise zero, non-pivot entries of
/// pivot rows sit strictly to the right of their pivot.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| !a.at(i, col).is_zero()) else {
            continue;
        };
        a.swap_rows(r, pr);
        let inv = a.at(r, col).inv();
        for j in col..a.cols {
            let v = a.at(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i != r && !a.at(i, col).is_zero() {
                let f = a.at(i, col).clone();
                for j in col..a.cols {
                    let v = a.at(i, j) - &(a.at(r, j) * &f);
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel, one sparse vector per free column. Labels are
/// column indices. The basis is the canonical one: free column j contributes
/// the vector with 1 in slot j and back-substituted pivot entries.
pub fn kernel_basis(m: &Matrix) -> Vec<FreeVector<usize>> {
    let (e, pivots) = rref(m);
    let piv_of_col: std::collections::BTreeMap<usize, usize> =
        pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    let mut out = Vec::new();
    for j in 0..m.cols {
        if piv_of_col.contains_key(&j) {
            continue;
        }
        let mut v = FreeVector::basis(j);
        for (&pc, &pr) in &piv_of_col {
            let c = e.at(pr, j);
            if !c.is_zero() {
                v.add_term(pc, -c);
            }
        }
        out.push(v);
    }
    out
}

/// Solves m x = b exactly; `None` when inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows);
    let mut aug = Matrix::zero(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.at(i, j).clone());
        }
        aug.set(i, m.cols, b[i].clone());
    }
    let (e, pivots) = rref(&aug);
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = e.at(r, m.cols).clone();
    }
    Some(x)
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rref_normalizes_pivots() {
        let m = Matrix::from_rows(vec![
            vec![s(2), s(4), s(2)],
            vec![s(1), s(2), s(3)],
        ]);
        let (e, pivots) = rref(&m);
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(*e.at(0, 0), s(1));
        assert_eq!(*e.at(0, 1), s(2));
        assert_eq!(*e.at(0, 2), s(0));
        assert_eq!(*e.at(1, 2), s(1));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = Matrix::from_rows(vec![
            vec![s(1), s(2), s(0), s(1)],
            vec![s(0), s(0), s(1), s(-1)],
        ]);
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for i in 0..m.rows {
                let mut acc = Scalar::zero();
                for (j, c) in v.iter() {
                    acc += &(m.at(i, *j) * c);
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(2), s(2)]]);
        assert!(solve(&m, &[s(1), s(2)]).is_some());
        assert!(solve(&m, &[s(1), s(3)]).is_none());
    }
}
