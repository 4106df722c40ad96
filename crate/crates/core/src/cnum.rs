//! Dense numeric linear algebra over the complex numbers: elimination
//! with scaled pivoting, span intersection, and Hermitian eigenvalues
//! through a Jacobi sweep on the real symmetric embedding.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type C = Complex64;

pub fn max_abs(m: &[Vec<C>]) -> f64 {
    m.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn identity(n: usize) -> Vec<Vec<C>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { C::new(1.0, 0.0) } else { C::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<C>], v: &[C]) -> Vec<C> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn conj_transpose(a: &[Vec<C>]) -> Vec<Vec<C>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    (0..cols).map(|j| (0..rows).map(|i| a[i][j].conj()).collect()).collect()
}

/// In-place row echelon reduction; returns the pivot columns.  Entries
/// below `tol` relative to the largest input entry count as zero.
pub fn row_echelon(a: &mut [Vec<C>], tol: f64) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let scale = max_abs(a).max(1.0);
    let threshold = tol * scale;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(best) = (r..rows)
            .max_by(|&i, &j| a[i][c].norm().partial_cmp(&a[j][c].norm()).expect("finite"))
        else {
            break;
        };
        if a[best][c].norm() <= threshold {
            continue;
        }
        a.swap(r, best);
        let inv = C::new(1.0, 0.0) / a[r][c];
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && a[i][c].norm() > 0.0 {
                let f = a[i][c];
                for j in 0..cols {
                    let t = a[r][j];
                    a[i][j] -= f * t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(a: &[Vec<C>], tol: f64) -> usize {
    let mut m = a.to_vec();
    row_echelon(&mut m, tol).len()
}

/// Basis of the right kernel.
pub fn nullspace(a: &[Vec<C>], tol: f64) -> Vec<Vec<C>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut m = a.to_vec();
    let pivots = row_echelon(&mut m, tol);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![C::zero(); cols];
        v[free] = C::new(1.0, 0.0);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][free];
        }
        basis.push(v);
    }
    basis
}

/// Intersection of the spans of two families of vectors: solutions of
/// `sum alpha_i u_i = sum beta_j w_j` recovered on the `u` side.
pub fn intersect_spans(u: &[Vec<C>], w: &[Vec<C>], tol: f64) -> Vec<Vec<C>> {
    if u.is_empty() || w.is_empty() {
        return Vec::new();
    }
    let n = u[0].len();
    let stacked: Vec<Vec<C>> = (0..n)
        .map(|coord| {
            u.iter()
                .map(|v| v[coord])
                .chain(w.iter().map(|v| -v[coord]))
                .collect()
        })
        .collect();
    let kernel = nullspace(&stacked, tol);
    let mut vectors: Vec<Vec<C>> = Vec::new();
    for coeffs in kernel {
        let mut v = vec![C::zero(); n];
        for (alpha, uvec) in coeffs[..u.len()].iter().zip(u) {
            for (slot, x) in v.iter_mut().zip(uvec) {
                *slot += alpha * x;
            }
        }
        vectors.push(v);
    }
    // the kernel may map several coefficient vectors to one direction
    let mut rows = vectors.clone();
    let pivots = row_echelon(&mut rows, tol);
    rows.truncate(pivots.len());
    rows
}

/// Inverse through elimination on the augmented matrix; `None` when
/// the matrix is singular at the given tolerance.
pub fn invert(a: &[Vec<C>], tol: f64) -> Option<Vec<Vec<C>>> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return None;
    }
    let mut aug: Vec<Vec<C>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { C::new(1.0, 0.0) } else { C::zero() }));
            r
        })
        .collect();
    let pivots = row_echelon(&mut aug, tol);
    if pivots != (0..n).collect::<Vec<_>>() {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn jacobi_eigenvalues(mut s: Vec<Vec<f64>>) -> Vec<f64> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let scale = s
        .iter()
        .flatten()
        .map(|x| x.abs())
        .fold(0.0, f64::max)
        .max(1.0);
    for _ in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                off = off.max(s[i][j].abs());
            }
        }
        if off <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if s[p][q].abs() <= 1e-16 * scale {
                    continue;
                }
                let tau = (s[q][q] - s[p][p]) / (2.0 * s[p][q]);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let (skp, skq) = (s[k][p], s[k][q]);
                    s[k][p] = c * skp - sn * skq;
                    s[k][q] = sn * skp + c * skq;
                }
                for k in 0..n {
                    let (spk, sqk) = (s[p][k], s[q][k]);
                    s[p][k] = c * spk - sn * sqk;
                    s[q][k] = sn * spk + c * sqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| s[i][i]).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    eig
}

/// Eigenvalues of a Hermitian matrix, ascending.  Computed on the real
/// symmetric embedding, whose spectrum is the doubled spectrum.
pub fn hermitian_eigenvalues(h: &[Vec<C>], tol: f64) -> Result<Vec<f64>> {
    let n = h.len();
    let scale = max_abs(h).max(1.0);
    for i in 0..n {
        if h[i].len() != n {
            return Err(Error::SubspaceDimMismatch("matrix is not square".into()));
        }
        for j in 0..n {
            if (h[i][j] - h[j][i].conj()).norm() > tol * scale {
                return Err(Error::SubspaceDimMismatch(format!(
                    "matrix is not Hermitian at ({i}, {j})"
                )));
            }
        }
    }
    let mut embed = vec![vec![0.0f64; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            embed[i][j] = h[i][j].re;
            embed[i][j + n] = -h[i][j].im;
            embed[i + n][j] = h[i][j].im;
            embed[i + n][j + n] = h[i][j].re;
        }
    }
    let doubled = jacobi_eigenvalues(embed);
    Ok(doubled.into_iter().step_by(2).collect())
}

/// Gram matrix `v_i^* A v_j` of a sesquilinear form on given vectors.
pub fn gram(a: &[Vec<C>], vectors: &[Vec<C>]) -> Vec<Vec<C>> {
    vectors
        .iter()
        .map(|vi| {
            vectors
                .iter()
                .map(|vj| {
                    let av = mat_vec(a, vj);
                    vi.iter().zip(&av).map(|(x, y)| x.conj() * y).sum()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let a = vec![vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]];
        let ns = nullspace(&a, 1e-12);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let r: C = a[0].iter().zip(v).map(|(x, y)| x * y).sum();
            assert!(r.norm() < 1e-10);
        }
    }

    #[test]
    fn plane_intersection_is_a_line() {
        let u = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        ];
        let w = vec![
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ];
        let meet = intersect_spans(&u, &w, 1e-12);
        assert_eq!(meet.len(), 1);
        let v = &meet[0];
        assert!(v[0].norm() < 1e-10 && v[2].norm() < 1e-10 && v[1].norm() > 0.5);
    }

    #[test]
    fn hermitian_spectrum_of_pauli_like_matrix() {
        // [[0, -i], [i, 0]] has eigenvalues -1 and 1
        let h = vec![
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ];
        let eig = hermitian_eigenvalues(&h, 1e-12).unwrap();
        assert_eq!(eig.len(), 2);
        assert!((eig[0] + 1.0).abs() < 1e-12);
        assert!((eig[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hermitian_check_rejects_asymmetric_input() {
        let h = vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(2.0, 0.0), c(0.0, 0.0)],
        ];
        assert!(hermitian_eigenvalues(&h, 1e-12).is_err());
    }

    #[test]
    fn rank_detects_dependence() {
        let a = vec![
            vec![c(1.0, 1.0), c(2.0, 0.0)],
            vec![c(2.0, 2.0), c(4.0, 0.0)],
        ];
        assert_eq!(rank(&a, 1e-12), 1);
    }

    #[test]
    fn gram_of_identity_is_inner_product() {
        let id = identity(2);
        let vs = vec![vec![c(0.0, 1.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(2.0, 0.0)]];
        let g = gram(&id, &vs);
        assert!((g[0][0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((g[1][1] - c(4.0, 0.0)).norm() < 1e-12);
        assert!(g[0][1].norm() < 1e-12);
    }
}
