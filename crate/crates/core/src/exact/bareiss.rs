//! Fraction-free (Bareiss) elimination over integral domains.
//!
//! Every intermediate entry is a minor of the input, so each update divides
//! exactly by the previous pivot. The same kernel runs over `BigInt` (for
//! rational matrices with cleared denominators) and over `Poly` (rank over
//! the rational function field).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Poly;

/// Entries an elimination can run over.
pub trait DomainElement: Clone {
    fn is_zero_elem(&self) -> bool;
    fn mul_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    /// `self / divisor`, which the caller guarantees is exact.
    fn div_exact_elem(&self, divisor: &Self) -> Self;
    /// Size estimate used to prefer cheap pivots.
    fn weight(&self) -> usize;
}

impl DomainElement for BigInt {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn div_exact_elem(&self, divisor: &Self) -> Self {
        debug_assert!((self % divisor).is_zero(), "inexact Bareiss division");
        self / divisor
    }
    fn weight(&self) -> usize {
        self.bits() as usize
    }
}

impl DomainElement for Poly {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn div_exact_elem(&self, divisor: &Self) -> Self {
        if divisor.len() == 1 && divisor.is_constant() && divisor.constant_term().is_one() {
            return self.clone();
        }
        self.div_exact(divisor).expect("inexact Bareiss division")
    }
    fn weight(&self) -> usize {
        self.len() * (1 + self.total_degree().unwrap_or(0) as usize)
    }
}

/// Result of a forward elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub rank: usize,
    /// Original row index of each pivot, in pivot order.
    pub pivot_rows: Vec<usize>,
    /// Column of each pivot, ascending.
    pub pivot_cols: Vec<usize>,
}

/// Forward Bareiss elimination with column skipping and lightest-pivot
/// selection. `rows` must be rectangular.
pub fn eliminate<R: DomainElement>(mut rows: Vec<Vec<R>>, cols: usize) -> Elimination {
    let nrows = rows.len();
    let mut order: Vec<usize> = (0..nrows).collect();
    let mut pivot_cols = Vec::new();
    let mut prev: Option<R> = None;
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let pick = (r..nrows)
            .filter(|&i| !rows[i][c].is_zero_elem())
            .min_by_key(|&i| rows[i][c].weight());
        let Some(p) = pick else { continue };
        rows.swap(r, p);
        order.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for j in (c + 1)..cols {
                let mut v = pivot.mul_elem(&row[j]);
                if !lead.is_zero_elem() && !pivot_row[j].is_zero_elem() {
                    v = v.sub_elem(&lead.mul_elem(&pivot_row[j]));
                }
                if let Some(d) = &prev {
                    if !v.is_zero_elem() {
                        v = v.div_exact_elem(d);
                    }
                }
                row[j] = v;
            }
            if !lead.is_zero_elem() {
                row[c] = lead.sub_elem(&lead);
            }
        }
        prev = Some(pivot);
        pivot_cols.push(c);
        r += 1;
    }
    Elimination { rank: r, pivot_rows: order[..r].to_vec(), pivot_cols }
}

/// Rank of a rectangular matrix over the fraction field of `R`.
pub fn rank<R: DomainElement>(rows: Vec<Vec<R>>, cols: usize) -> usize {
    eliminate(rows, cols).rank
}

/// Determinant of a square matrix; `None` for the empty matrix.
pub fn determinant<R: DomainElement>(mut rows: Vec<Vec<R>>) -> Option<R> {
    let n = rows.len();
    if n == 0 {
        return None;
    }
    let mut negate = false;
    let mut prev: Option<R> = None;
    for c in 0..n {
        let pick = (c..n)
            .filter(|&i| !rows[i][c].is_zero_elem())
            .min_by_key(|&i| rows[i][c].weight());
        let Some(p) = pick else {
            let z = rows[0][0].sub_elem(&rows[0][0]);
            return Some(z);
        };
        if p != c {
            rows.swap(c, p);
            negate = !negate;
        }
        let (head, tail) = rows.split_at_mut(c + 1);
        let pivot_row = &head[c];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for j in (c + 1)..n {
                let mut v = pivot.mul_elem(&row[j]);
                if !lead.is_zero_elem() && !pivot_row[j].is_zero_elem() {
                    v = v.sub_elem(&lead.mul_elem(&pivot_row[j]));
                }
                if let Some(d) = &prev {
                    if !v.is_zero_elem() {
                        v = v.div_exact_elem(d);
                    }
                }
                row[j] = v;
            }
        }
        prev = Some(pivot);
    }
    let det = rows[n - 1][n - 1].clone();
    Some(if negate { det.sub_elem(&det).sub_elem(&det) } else { det })
}

/// Rank over the rational function field of a matrix with polynomial
/// entries, all in the same variables.
pub fn poly_rank(rows: Vec<Vec<Poly>>, cols: usize) -> usize {
    rank(rows, cols)
}

/// Polynomial basis of the right kernel of a polynomial matrix over the
/// rational function field, built by Cramer's rule on a maximal nonsingular
/// submatrix. One vector per non-pivot column.
pub fn poly_kernel(rows: &[Vec<Poly>], cols: usize, nvars: usize) -> Vec<Vec<Poly>> {
    let elim = eliminate(rows.to_vec(), cols);
    let r = elim.rank;
    let pr = &elim.pivot_rows;
    let pc = &elim.pivot_cols;
    let sub = |replace: Option<(usize, usize)>| -> Vec<Vec<Poly>> {
        pr.iter()
            .map(|&i| {
                pc.iter()
                    .enumerate()
                    .map(|(slot, &j)| match replace {
                        Some((s, f)) if s == slot => -&rows[i][f],
                        _ => rows[i][j].clone(),
                    })
                    .collect()
            })
            .collect()
    };
    let det = if r == 0 { Poly::one(nvars) } else { determinant(sub(None)).unwrap() };
    let mut out = Vec::new();
    for f in (0..cols).filter(|c| !pc.contains(c)) {
        let mut v = vec![Poly::zero(nvars); cols];
        v[f] = det.clone();
        for (slot, &j) in pc.iter().enumerate() {
            v[j] = determinant(sub(Some((slot, f)))).unwrap();
        }
        out.push(v);
    }
    out
}
