//! Smith and Hermite normal forms over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Result of [`smith_normal_form`]: `u * m * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order. Each divides the next.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Computes unimodular `u`, `v` and diagonal `d` with `u * m * v = d` and
/// `d[0,0] | d[1,1] | ...`, all diagonal entries non-negative.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &-&q);
                u.add_row_multiple(i, t, &-&q);
                if !d[(i, t)].is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-&q);
                if !d[(t, j)].is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // row and column are clear; enforce divisibility on the rest
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[(i, j)] % &d[(t, t)]).is_zero());
            match bad {
                Some((i, _)) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithForm { u, d, v }
}

/// Row-style Hermite normal form of the row span of `m`.
///
/// Returns `(h, u)` with `u` unimodular and `u * m` equal to `h` padded with
/// zero rows. `h` holds only the nonzero rows: pivots strictly move right,
/// are positive, and entries above each pivot lie in `[0, pivot)`.
pub fn row_hermite(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !a[(i, c)].is_zero() && best.is_none_or(|b| a[(i, c)].abs() < a[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(r, b);
            u.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = a[(i, c)].div_floor(&a[(r, c)]);
                a.add_row_multiple(i, r, &-&q);
                u.add_row_multiple(i, r, &-&q);
                if !a[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = a[(i, c)].div_floor(&a[(r, c)]);
            a.add_row_multiple(i, r, &-&q);
            u.add_row_multiple(i, r, &-&q);
        }
        pivots.push(c);
        r += 1;
    }
    (a.submatrix(0..r, 0..cols), u)
}

/// Canonical basis (as columns) of the lattice spanned by the columns of `m`.
pub fn column_hermite_basis(m: &IntMatrix) -> IntMatrix {
    row_hermite(&m.transpose()).0.transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn identity_and_zero() {
        let s = smith_normal_form(&IntMatrix::identity(2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));

        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert!(s.d.is_zero());
        check_snf(&z);
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let m = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, IntMatrix::from_i64(2, 2, &[1, 0, 0, 6]));
        check_snf(&m);
    }

    /// Independent oracle for diag(2,3): search all 2x2 unimodular matrices
    /// with entries in [-3,3] for u, v with u*m*v diagonal with a divisibility
    /// chain, and collect the diagonals found.
    #[test]
    fn diag_2_3_exhaustive_oracle() {
        let m = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let mut unimod = Vec::new();
        for a in -3..=3i64 {
            for b in -3..=3i64 {
                for c in -3..=3i64 {
                    for d in -3..=3i64 {
                        if (a * d - b * c).abs() == 1 {
                            unimod.push(IntMatrix::from_i64(2, 2, &[a, b, c, d]));
                        }
                    }
                }
            }
        }
        let mut diags = std::collections::BTreeSet::new();
        for u in &unimod {
            let um = u * &m;
            for v in &unimod {
                let p = &um * v;
                if p[(0, 1)].is_zero() && p[(1, 0)].is_zero() {
                    let (x, y) = (p[(0, 0)].clone(), p[(1, 1)].clone());
                    if x > BigInt::zero() && y > BigInt::zero() && (&y % &x).is_zero() {
                        diags.insert((x, y));
                    }
                }
            }
        }
        assert_eq!(diags.into_iter().collect::<Vec<_>>(), vec![(BigInt::from(1), BigInt::from(6))]);
    }

    #[test]
    fn assorted_shapes() {
        check_snf(&IntMatrix::from_i64(3, 2, &[4, 6, 8, 10, -2, 14]));
        check_snf(&IntMatrix::from_i64(2, 4, &[0, 0, 3, 9, 0, 6, 0, 12]));
        check_snf(&IntMatrix::from_i64(1, 1, &[-5]));
        check_snf(&IntMatrix::zeros(0, 3));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = IntMatrix::from_i64(2, 2, &[2, 0, 1, 1]);
        let b = IntMatrix::from_i64(2, 2, &[1, 1, 3, 1]);
        // both span {(x,y): x = y mod 2}
        assert_eq!(row_hermite(&a).0, row_hermite(&b).0);
        assert_eq!(row_hermite(&a).0, IntMatrix::from_i64(2, 2, &[1, 1, 0, 2]));
        let (h, u) = row_hermite(&a);
        assert_eq!((&u * &a).submatrix(0..2, 0..2), h);
    }
}
