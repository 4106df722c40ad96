//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Everything here is arbitrary precision: `Int` is a big integer and
//! `Rat` a big rational.  Matrices are dense row-major `Vec<Vec<_>>`;
//! the sizes in this crate are tiny (rank <= 4 lattices), so no effort
//! is spent on sparsity or pivoting heuristics beyond exactness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn ivec(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}

pub fn rat(x: i64) -> Rat {
    Rat::from_integer(Int::from(x))
}

pub fn rat_of(x: &Int) -> Rat {
    Rat::from_integer(x.clone())
}

pub fn rvec_of(xs: &[Int]) -> Vec<Rat> {
    xs.iter().map(rat_of).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vadd(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vneg(a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| -x).collect()
}

pub fn vscale(c: &Int, a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[Int]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Gcd of the absolute values of the entries; zero for the zero vector.
pub fn content(a: &[Int]) -> Int {
    a.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divide out the content.  Errors on the zero vector.
pub fn primitive(a: &[Int]) -> Result<Vec<Int>> {
    let g = content(a);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(a.iter().map(|x| x / &g).collect())
}

pub fn identity_int(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec_int(m: &[Vec<Int>], v: &[Int]) -> Vec<Int> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul_int(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let bt = transpose(b);
    a.iter().map(|row| bt.iter().map(|col| dot(row, col)).collect()).collect()
}

/// Fraction-free (Bareiss) determinant.
pub fn det_int(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &t / &prev;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Column Hermite form: for `a` with k rows and n columns, a unimodular
/// `u` (n x n) with `a * u = h` in column echelon form.  `pivots` lists
/// `(row, col)` of the echelon pivots; columns past the last pivot are
/// zero, so the trailing columns of `u` span the integer kernel of `a`.
pub struct ColHnf {
    pub h: Vec<Vec<Int>>,
    pub u: Vec<Vec<Int>>,
    pub pivots: Vec<(usize, usize)>,
}

pub fn col_hnf(a: &[Vec<Int>]) -> ColHnf {
    let k = a.len();
    let n = if k == 0 { 0 } else { a[0].len() };
    let mut h: Vec<Vec<Int>> = a.to_vec();
    let mut u = identity_int(n);
    let mut pivots = Vec::new();
    let mut r = 0usize;

    let swap_cols = |h: &mut Vec<Vec<Int>>, u: &mut Vec<Vec<Int>>, i: usize, j: usize| {
        for row in h.iter_mut() {
            row.swap(i, j);
        }
        for row in u.iter_mut() {
            row.swap(i, j);
        }
    };
    let negate_col = |h: &mut Vec<Vec<Int>>, u: &mut Vec<Vec<Int>>, j: usize| {
        for row in h.iter_mut() {
            row[j] = -row[j].clone();
        }
        for row in u.iter_mut() {
            row[j] = -row[j].clone();
        }
    };
    // col_j -= q * col_r
    let reduce_col =
        |h: &mut Vec<Vec<Int>>, u: &mut Vec<Vec<Int>>, j: usize, q: &Int, rc: usize| {
            for row in h.iter_mut() {
                let t = &row[rc] * q;
                row[j] -= t;
            }
            for row in u.iter_mut() {
                let t = &row[rc] * q;
                row[j] -= t;
            }
        };

    for i in 0..k {
        if r == n {
            break;
        }
        if (r..n).all(|j| h[i][j].is_zero()) {
            continue;
        }
        loop {
            let jmin = (r..n)
                .filter(|&j| !h[i][j].is_zero())
                .min_by_key(|&j| h[i][j].abs())
                .expect("nonzero entry exists");
            if jmin != r {
                swap_cols(&mut h, &mut u, jmin, r);
            }
            if h[i][r].is_negative() {
                negate_col(&mut h, &mut u, r);
            }
            let mut done = true;
            for j in r + 1..n {
                if !h[i][j].is_zero() {
                    let q = h[i][j].div_floor(&h[i][r]);
                    if !q.is_zero() {
                        reduce_col(&mut h, &mut u, j, &q, r);
                    }
                    if !h[i][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        pivots.push((i, r));
        r += 1;
    }
    ColHnf { h, u, pivots }
}

/// Basis of the integer kernel `{ x : a x = 0 }`.  The basis is a basis
/// of the full (saturated) kernel lattice.
pub fn kernel_basis(a: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = if a.is_empty() { 0 } else { a[0].len() };
    let hnf = col_hnf(a);
    let rank = hnf.pivots.len();
    (rank..n).map(|j| hnf.u.iter().map(|row| row[j].clone()).collect()).collect()
}

/// One integral solution of `a x = b` together with a kernel basis, or
/// `None` when no integral solution exists.
pub fn solve_int_with_kernel(a: &[Vec<Int>], b: &[Int]) -> Option<(Vec<Int>, Vec<Vec<Int>>)> {
    let k = a.len();
    let n = if k == 0 { 0 } else { a[0].len() };
    debug_assert_eq!(b.len(), k);
    let hnf = col_hnf(a);
    let mut residual: Vec<Int> = b.to_vec();
    let mut y = vec![Int::zero(); n];
    for &(i, t) in &hnf.pivots {
        let p = &hnf.h[i][t];
        let (q, rem) = residual[i].div_rem(p);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for row in 0..k {
                let delta = &hnf.h[row][t] * &q;
                residual[row] -= delta;
            }
        }
        y[t] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let x = mat_vec_int(&hnf.u, &y);
    let rank = hnf.pivots.len();
    let kernel = (rank..n).map(|j| hnf.u.iter().map(|row| row[j].clone()).collect()).collect();
    Some((x, kernel))
}

pub fn solve_int(a: &[Vec<Int>], b: &[Int]) -> Option<Vec<Int>> {
    solve_int_with_kernel(a, b).map(|(x, _)| x)
}

/// Whether the rows (k of them, k <= n) are independent and extend to a
/// lattice basis of Z^n, i.e. all elementary divisors are 1.  Tested as
/// gcd of the maximal minors.
pub fn extends_to_basis(rows: &[Vec<Int>]) -> bool {
    let k = rows.len();
    if k == 0 {
        return true;
    }
    let n = rows[0].len();
    if k > n {
        return false;
    }
    use itertools::Itertools;
    let mut g = Int::zero();
    for cols in (0..n).combinations(k) {
        let sub: Vec<Vec<Int>> =
            rows.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        g = g.gcd(&det_int(&sub));
        if g.is_one() {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------
// rational elimination

pub fn identity_rat(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

pub fn mat_vec_rat(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| dot_rat(row, v)).collect()
}

pub fn mat_mul_rat(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let bt = transpose(b);
    a.iter().map(|row| bt.iter().map(|col| dot_rat(row, col)).collect()).collect()
}

/// Reduced row echelon form; returns the reduced matrix and the pivot
/// column of each step.
pub fn rref(m: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank_rat(m: &[Vec<Rat>]) -> usize {
    rref(m).1.len()
}

/// Solve the square system `a x = b`; `None` when `a` is singular.
pub fn solve_rat(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    debug_assert_eq!(b.len(), n);
    let mut aug: Vec<Vec<Rat>> = a.to_vec();
    for (row, rhs) in aug.iter_mut().zip(b) {
        row.push(rhs.clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some((0..n).map(|i| r[i][n].clone()).collect())
}

pub fn invert_rat(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a.to_vec();
    for (i, row) in aug.iter_mut().enumerate() {
        for j in 0..n {
            row.push(if i == j { Rat::one() } else { Rat::zero() });
        }
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Indices of a maximal set of linearly independent rows, chosen
/// greedily in row order.
pub fn independent_rows(m: &[Vec<Rat>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut stack: Vec<Vec<Rat>> = Vec::new();
    for (i, row) in m.iter().enumerate() {
        stack.push(row.clone());
        if rank_rat(&stack) == stack.len() {
            chosen.push(i);
        } else {
            stack.pop();
        }
    }
    chosen
}

/// Coordinates of `v` in the span of the given independent rows, or
/// `None` when `v` is outside the span.
pub fn coords_in_rows(rows: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let k = rows.len();
    if k == 0 {
        return if v.iter().all(|x| x.is_zero()) { Some(Vec::new()) } else { None };
    }
    let n = rows[0].len();
    // unknowns are the combination coefficients; one equation per column
    let aug: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut eq: Vec<Rat> = rows.iter().map(|r| r[j].clone()).collect();
            eq.push(v[j].clone());
            eq
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|&c| c >= k) {
        return None;
    }
    let mut coords = vec![Rat::zero(); k];
    for (step, &c) in pivots.iter().enumerate() {
        coords[c] = r[step][k].clone();
    }
    Some(coords)
}
