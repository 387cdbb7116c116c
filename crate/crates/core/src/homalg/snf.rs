//! Smith normal form over the integers with unimodular transforms tracked.

use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Decomposition U * A * V = diag(invariant_factors, padded with zeros),
/// with U, V unimodular and the nonzero factors forming a divisibility
/// chain d_1 | d_2 | ...
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries, each positive, d_i | d_{i+1}.
    pub invariant_factors: Vec<BigInt>,
    /// The full diagonalized matrix U*A*V.
    pub diagonal: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Position of the entry with smallest nonzero absolute value in the
/// trailing submatrix starting at (k, k); ties broken row-major.
fn pivot_position(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs = BigInt::zero();
    for i in k..a.rows() {
        for j in k..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.is_none() || abs < best_abs {
                best = Some((i, j));
                best_abs = abs;
            }
        }
    }
    best
}

struct Worker {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Worker {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.a.cols() {
            let x = self.a.get(i, c).clone();
            let y = self.a.get(j, c).clone();
            self.a.set(i, c, y);
            self.a.set(j, c, x);
        }
        for c in 0..self.u.cols() {
            let x = self.u.get(i, c).clone();
            let y = self.u.get(j, c).clone();
            self.u.set(i, c, y);
            self.u.set(j, c, x);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows() {
            let x = self.a.get(r, i).clone();
            let y = self.a.get(r, j).clone();
            self.a.set(r, i, y);
            self.a.set(r, j, x);
        }
        for r in 0..self.v.rows() {
            let x = self.v.get(r, i).clone();
            let y = self.v.get(r, j).clone();
            self.v.set(r, i, y);
            self.v.set(r, j, x);
        }
    }

    /// row i -= q * row k
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.a.cols() {
            let val = self.a.get(i, c) - q * self.a.get(k, c);
            self.a.set(i, c, val);
        }
        for c in 0..self.u.cols() {
            let val = self.u.get(i, c) - q * self.u.get(k, c);
            self.u.set(i, c, val);
        }
    }

    /// col j -= q * col k
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.a.rows() {
            let val = self.a.get(r, j) - q * self.a.get(r, k);
            self.a.set(r, j, val);
        }
        for r in 0..self.v.rows() {
            let val = self.v.get(r, j) - q * self.v.get(r, k);
            self.v.set(r, j, val);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.a.cols() {
            let val = -self.a.get(i, c);
            self.a.set(i, c, val);
        }
        for c in 0..self.u.cols() {
            let val = -self.u.get(i, c);
            self.u.set(i, c, val);
        }
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let rows = a.rows();
    let cols = a.cols();
    let mut w = Worker {
        a: a.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };
    let bound = rows.min(cols);
    let mut k = 0;
    while k < bound {
        let Some((pi, pj)) = pivot_position(&w.a, k) else {
            break;
        };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        // Clear row and column k; the pivot shrinks monotonically, so this
        // terminates.
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if !w.a.get(i, k).is_zero() {
                    let q = w.a.get(i, k).div_floor(w.a.get(k, k));
                    w.row_sub(i, k, &q);
                    if !w.a.get(i, k).is_zero() {
                        // Remainder is smaller than the pivot: promote it.
                        w.swap_rows(k, i);
                        dirty = true;
                    }
                }
            }
            for j in k + 1..cols {
                if !w.a.get(k, j).is_zero() {
                    let q = w.a.get(k, j).div_floor(w.a.get(k, k));
                    w.col_sub(j, k, &q);
                    if !w.a.get(k, j).is_zero() {
                        w.swap_cols(k, j);
                        dirty = true;
                    }
                }
            }
            if !dirty
                && (k + 1..rows).all(|i| w.a.get(i, k).is_zero())
                && (k + 1..cols).all(|j| w.a.get(k, j).is_zero())
            {
                break;
            }
        }
        if w.a.get(k, k).is_negative() {
            w.negate_row(k);
        }
        // Divisibility: the pivot must divide every remaining entry.
        let mut offender = None;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if !(w.a.get(i, j) % w.a.get(k, k)).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            // Fold the offending row into row k and redo this pivot.
            let minus_one = -BigInt::one();
            w.row_sub(k, i, &minus_one);
            continue;
        }
        k += 1;
    }
    let mut factors = Vec::new();
    for d in 0..bound {
        let v = w.a.get(d, d);
        if v.is_zero() {
            break;
        }
        factors.push(v.clone());
    }
    SmithForm {
        u: w.u,
        v: w.v,
        invariant_factors: factors,
        diagonal: w.a,
    }
}

/// Basis of the integer kernel lattice of `a`, returned as the columns of a
/// matrix. The basis is saturated: every integer solution of a*x = 0 is an
/// integer combination of the columns.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let cols: Vec<usize> = (r..a.cols()).collect();
    snf.v.select_columns(&cols)
}

/// Basis of the column lattice of `a` (integer column span), via column-only
/// Hermite-style reduction. Deterministic; returns a matrix whose columns
/// are the basis.
pub fn column_lattice_basis(a: &IntMatrix) -> IntMatrix {
    let rows = a.rows();
    let mut cols: Vec<Vec<BigInt>> = (0..a.cols()).map(|j| a.column(j)).collect();
    cols.retain(|c| c.iter().any(|x| !x.is_zero()));
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut pivot_col = 0usize;
    for row in 0..rows {
        // Reduce the active columns so at most one has a nonzero in `row`.
        loop {
            let nz: Vec<usize> = (pivot_col..cols.len())
                .filter(|&j| !cols[j][row].is_zero())
                .collect();
            if nz.len() <= 1 {
                break;
            }
            // Pick the smallest |entry| as the reducer.
            let &jmin = nz
                .iter()
                .min_by(|&&x, &&y| cols[x][row].abs().cmp(&cols[y][row].abs()))
                .unwrap();
            for &j in &nz {
                if j == jmin {
                    continue;
                }
                let q = cols[j][row].div_floor(&cols[jmin][row]);
                if !q.is_zero() {
                    for i in 0..rows {
                        let val = &cols[j][i] - &q * &cols[jmin][i];
                        cols[j][i] = val;
                    }
                }
            }
        }
        if let Some(j) = (pivot_col..cols.len()).find(|&j| !cols[j][row].is_zero()) {
            cols.swap(pivot_col, j);
            if cols[pivot_col][row].is_negative() {
                for v in cols[pivot_col].iter_mut() {
                    *v = -v.clone();
                }
            }
            basis.push(cols[pivot_col].clone());
            pivot_col += 1;
        }
    }
    let mut out = IntMatrix::zero(rows, basis.len());
    for (j, col) in basis.iter().enumerate() {
        out.set_column(j, col);
    }
    out
}

/// Solve basis * x = target exactly over the integers, where the columns of
/// `basis` are linearly independent. Returns None when no integer solution
/// exists.
pub fn solve_in_lattice(basis: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(basis.rows(), target.len());
    let snf = smith_normal_form(basis);
    let k = basis.cols();
    if snf.rank() < k {
        // Columns dependent; caller contract violated.
        panic!("solve_in_lattice: basis columns are dependent");
    }
    let rhs = snf.u.mul_vec(target);
    let mut y = vec![BigInt::zero(); k];
    for i in 0..basis.rows() {
        if i < k {
            let d = &snf.invariant_factors[i];
            let (q, r) = rhs[i].div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !rhs[i].is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}
