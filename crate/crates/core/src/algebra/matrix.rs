use num_traits::Zero;

use super::poly::{strip_common_content, Polynomial};
use super::ratfunc::RationalFunction;
use super::ring::RingRef;
use super::scalar::Scalar;
use crate::error::Result;

/// Matrix over the rational-function field.  Rank, kernel and membership
/// queries are answered by fraction-free (Bareiss-style) elimination on a
/// denominator-cleared polynomial matrix; gcd reduction is applied only to
/// final outputs, as scalar-and-monomial content removal.
#[derive(Clone, Debug)]
pub struct RfMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<RationalFunction>>,
}

impl RfMatrix {
    pub fn new(ring: &RingRef, entries: Vec<Vec<RationalFunction>>) -> RfMatrix {
        let rows = entries.len();
        let cols = entries.first().map(|r| r.len()).unwrap_or(0);
        for r in &entries {
            assert_eq!(r.len(), cols, "ragged matrix");
        }
        RfMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn from_polys(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> RfMatrix {
        let entries = rows
            .into_iter()
            .map(|r| r.into_iter().map(RationalFunction::from_poly).collect())
            .collect();
        RfMatrix::new(ring, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i][j]
    }

    /// Clear denominators row by row and strip row content.
    fn poly_rows(&self) -> Vec<Vec<Polynomial>> {
        self.entries
            .iter()
            .map(|row| {
                let mut scale = Polynomial::one(&self.ring);
                for e in row {
                    if !e.denom().is_constant() {
                        scale = scale.mul(e.denom());
                    }
                }
                let mut out: Vec<Polynomial> = row
                    .iter()
                    .map(|e| {
                        let p = e.numer().mul(&scale);
                        p.div_exact(e.denom()).unwrap_or(p)
                    })
                    .collect();
                strip_common_content(&mut out);
                out
            })
            .collect()
    }

    /// Generic rank over the rational-function field.
    pub fn generic_rank(&self) -> usize {
        let (_, pivots) = bareiss_echelon(self.poly_rows());
        pivots.len()
    }

    /// Basis of the right null space over the rational-function field,
    /// denominators cleared to polynomial entries with content removed.
    pub fn rf_kernel(&self) -> Vec<Vec<Polynomial>> {
        kernel_of_poly_rows(&self.ring, self.poly_rows(), self.cols)
    }

    /// Rank of the scalar matrix obtained by evaluation at a point.
    /// Errors when some denominator vanishes there.
    pub fn rank_at(&self, point: &[Option<Scalar>]) -> Result<usize> {
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(self.rows);
        for row in &self.entries {
            let mut r = Vec::with_capacity(self.cols);
            for e in row {
                r.push(e.evaluate_indexed(point)?);
            }
            rows.push(r);
        }
        Ok(scalar_rank(rows))
    }
}

/// Fraction-free row echelon form.  Returns the reduced rows and the pivot
/// column of each nonzero row, in order.  Entries stay polynomial; the
/// Bareiss division step falls back to the undivided cross-product if the
/// exact division ever fails (it cannot for untouched input rows, but the
/// fallback keeps the routine total).
pub fn bareiss_echelon(mut rows: Vec<Vec<Polynomial>>) -> (Vec<Vec<Polynomial>>, Vec<usize>) {
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut rank = 0;
    let mut prev: Option<Polynomial> = None;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pr) = (rank..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let pivot = rows[rank][col].clone();
        for i in rank + 1..nrows {
            if rows[i][col].is_zero() {
                // still must scale to keep the Bareiss divisibility pattern
                for j in col + 1..ncols {
                    let t = pivot.mul(&rows[i][j]);
                    rows[i][j] = match &prev {
                        Some(p) => t.div_exact(p).unwrap_or(t),
                        None => t,
                    };
                }
                continue;
            }
            let head = rows[i][col].clone();
            for j in col + 1..ncols {
                let t = pivot.mul(&rows[i][j]).sub(&head.mul(&rows[rank][j]));
                rows[i][j] = match &prev {
                    Some(p) => t.div_exact(p).unwrap_or(t),
                    None => t,
                };
            }
            rows[i][col] = Polynomial::zero(rows[i][col].ring());
        }
        prev = Some(pivot);
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank.max(0));
    (rows, pivots)
}

/// Kernel basis from an echelonized polynomial matrix: one vector per free
/// column, computed by denominator-free back-substitution.
pub fn kernel_of_poly_rows(
    ring: &RingRef,
    rows: Vec<Vec<Polynomial>>,
    ncols: usize,
) -> Vec<Vec<Polynomial>> {
    let (ech, pivots) = bareiss_echelon(rows);
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set[free] {
            continue;
        }
        let mut v: Vec<Polynomial> = (0..ncols).map(|_| Polynomial::zero(ring)).collect();
        v[free] = Polynomial::one(ring);
        for (ri, &pc) in pivots.iter().enumerate().rev() {
            let mut s = Polynomial::zero(ring);
            for j in pc + 1..ncols {
                if !ech[ri][j].is_zero() && !v[j].is_zero() {
                    s = s.add(&ech[ri][j].mul(&v[j]));
                }
            }
            let head = ech[ri][pc].clone();
            for (j, item) in v.iter_mut().enumerate() {
                if j != pc && !item.is_zero() {
                    *item = item.mul(&head);
                }
            }
            v[pc] = s.neg();
        }
        strip_common_content(&mut v);
        // sign convention: positive leading coefficient on the free slot
        if v[free].leading().map(|(_, c)| *c < Scalar::zero()) == Some(true) {
            for item in v.iter_mut() {
                *item = item.neg();
            }
        }
        basis.push(v);
    }
    basis
}

/// Rank of a scalar matrix by plain Gaussian elimination.
pub fn scalar_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pr) = (rank..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = rows[rank][col].clone().recip();
        for j in col..ncols {
            let v = rows[rank][j].clone() * &inv;
            rows[rank][j] = v;
        }
        for i in rank + 1..nrows {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in col..ncols {
                let v = rows[i][j].clone() - rows[rank][j].clone() * &f;
                rows[i][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Generic rank of a set of polynomial row vectors.
pub fn poly_row_rank(rows: &[Vec<Polynomial>]) -> usize {
    let (_, pivots) = bareiss_echelon(rows.to_vec());
    pivots.len()
}

/// Whether `v` lies in the row span of `basis` over the rational-function
/// field.
pub fn in_poly_row_span(basis: &[Vec<Polynomial>], v: &[Polynomial]) -> bool {
    let r0 = poly_row_rank(basis);
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    poly_row_rank(&all) == r0
}

/// A matrix of rational functions built from row vectors of polynomials.
pub fn rf_matrix_from_rows(ring: &RingRef, rows: &[Vec<Polynomial>]) -> RfMatrix {
    RfMatrix::from_polys(ring, rows.to_vec())
}
