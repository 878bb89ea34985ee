//! Exact linear algebra over the rationals.
//!
//! Rows are cleared of denominators and eliminated fraction-free over the
//! integers, with every updated row divided by its content so entries stay
//! small. Pivots are chosen as the first nonzero entry in column order and
//! row order, so results are deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Reduced row echelon form of a rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub ncols: usize,
    /// Nonzero rows; row `t` has a 1 in column `pivots[t]`.
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right null space `{v : A v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|q| !q.is_zero())
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g > BigInt::one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

/// Gauss-Jordan elimination of `rows` (each of length `ncols`).
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> Rref {
    let mut mat: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            integer_row(r)
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let nrows = mat.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let (before, rest) = mat.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().unwrap();
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let a = &pivot_row[c] / &g;
            let b = &row[c] / &g;
            // pivot_row is zero left of c, but the whole row must be rescaled
            for j in 0..ncols {
                if pivot_row[j].is_zero() {
                    if !row[j].is_zero() {
                        row[j] *= &a;
                    }
                } else {
                    row[j] = &row[j] * &a - &b * &pivot_row[j];
                }
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    let rows = mat
        .into_iter()
        .take(r)
        .zip(&pivots)
        .map(|(row, &p)| {
            let piv = row[p].clone();
            row.into_iter()
                .map(|x| Rational::new(x, piv.clone()))
                .collect()
        })
        .collect();
    Rref {
        ncols,
        rows,
        pivots,
    }
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows, ncols).rank()
}

/// Basis of `{v : A v = 0}` where `A` has the given rows.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    rref(rows, ncols).kernel()
}

/// The unique reduced echelon basis of the span of `vectors`.
pub fn canonical_basis(vectors: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    rref(vectors, ncols).rows
}

/// One solution of `A x = b`, with free variables set to zero; `None` when
/// the system is inconsistent.
pub fn solve(rows: &[Vec<Rational>], ncols: usize, rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len());
    let aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let red = rref(&aug, ncols + 1);
    if red.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in red.rows.iter().zip(&red.pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Scales a nonzero vector to integer entries with gcd 1 and a positive
/// first nonzero entry.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let mut ints = integer_row(v);
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    ints.into_iter().map(Rational::from_integer).collect()
}
