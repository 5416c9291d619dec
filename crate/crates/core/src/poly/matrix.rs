//! Jacobian matrices and the exact linear algebra they need: symbolic
//! determinants, maximal minors, and the univariate discriminant.

use itertools::Itertools;

use crate::field::FieldElement;
use super::{Degree, Polynomial, PolyError, RingRef};

/// Matrix of partial derivatives, row i holding the gradient of the i-th
/// polynomial. Rows may outnumber columns (presented algebras); columns
/// always equal the ring's variable count.
#[derive(Debug, Clone)]
pub struct JacobianMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl JacobianMatrix {
    pub fn of(polys: &[Polynomial]) -> JacobianMatrix {
        assert!(!polys.is_empty(), "jacobian of an empty sequence");
        let ring = polys[0].ring().clone();
        for p in polys {
            assert!(p.ring() == &ring, "jacobian rows lie in different rings");
        }
        let cols = ring.n_vars();
        let mut entries = Vec::with_capacity(polys.len() * cols);
        for p in polys {
            for j in 0..cols {
                entries.push(p.partial_derivative(j));
            }
        }
        JacobianMatrix {
            ring,
            rows: polys.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    /// Determinant of a square matrix: cofactor expansion up to 4x4,
    /// fraction-free Bareiss elimination above that.
    pub fn determinant(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let grid: Vec<Vec<Polynomial>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        det_square(&self.ring, grid)
    }

    /// All n x n minors of an m x n matrix (m >= n), one per n-row subset,
    /// ordered by the lexicographic order of the row index subsets.
    pub fn maximal_minors(&self) -> Vec<Polynomial> {
        assert!(
            self.rows >= self.cols,
            "maximal minors need at least as many rows as columns"
        );
        (0..self.rows)
            .combinations(self.cols)
            .map(|rows| {
                let grid: Vec<Vec<Polynomial>> = rows
                    .iter()
                    .map(|&i| (0..self.cols).map(|j| self.entry(i, j).clone()).collect())
                    .collect();
                det_square(&self.ring, grid)
            })
            .collect()
    }
}

fn det_square(ring: &RingRef, grid: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = grid.len();
    match n {
        0 => Polynomial::one(ring),
        1 => grid[0][0].clone(),
        2..=4 => det_cofactor(ring, &grid),
        _ => det_bareiss(ring, grid),
    }
}

fn det_cofactor(ring: &RingRef, grid: &[Vec<Polynomial>]) -> Polynomial {
    let n = grid.len();
    if n == 1 {
        return grid[0][0].clone();
    }
    let mut det = Polynomial::zero(ring);
    for i in 0..n {
        if grid[i][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = (0..n)
            .filter(|&r| r != i)
            .map(|r| grid[r][1..].to_vec())
            .collect();
        let term = grid[i][0].mul(&det_cofactor(ring, &minor));
        det = if i % 2 == 0 { det.add(&term) } else { det.sub(&term) };
    }
    det
}

/// Bareiss fraction-free elimination. Every division is exact by the
/// algorithm's invariant, so coefficients never leave the ring.
fn det_bareiss(ring: &RingRef, mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    let mut sign_flip = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Polynomial::zero(ring);
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .try_div_exact(&prev)
                    .expect("Bareiss division must be exact");
            }
            m[i][k] = Polynomial::zero(ring);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Discriminant of a univariate polynomial of degree d >= 1:
/// (-1)^(d(d-1)/2) * Res(P, P') / lc(P), with P' taken at formal degree
/// d - 1 so a vanishing derivative (char p) yields discriminant 0.
pub fn discriminant(f: &Polynomial) -> Result<FieldElement, PolyError> {
    let support = f.support_vars();
    if support.len() > 1 {
        return Err(PolyError::NotUnivariate);
    }
    let Degree::Finite(d) = f.degree() else {
        return Err(PolyError::ConstantInput);
    };
    if d == 0 {
        return Err(PolyError::ConstantInput);
    }
    let var = support[0];
    let field = f.field();
    let d = d as usize;

    // Dense coefficient vectors, index = exponent of the active variable.
    let coeffs_of = |p: &Polynomial, upto: usize| -> Vec<FieldElement> {
        let mut v = vec![field.zero(); upto + 1];
        for (m, c) in p.terms() {
            v[m.exp(var) as usize] = c.clone();
        }
        v
    };
    let p = coeffs_of(f, d);
    let dp = coeffs_of(&f.partial_derivative(var), d.saturating_sub(1));

    // Sylvester matrix for deg p = d, formal deg p' = d - 1: size 2d - 1.
    let size = 2 * d - 1;
    let mut s = vec![vec![field.zero(); size]; size];
    for (row, srow) in s.iter_mut().enumerate().take(d - 1) {
        for (k, pk) in p.iter().enumerate() {
            srow[row + d - k] = pk.clone();
        }
    }
    for row in 0..d {
        for (k, dpk) in dp.iter().enumerate() {
            s[d - 1 + row][row + d - 1 - k] = dpk.clone();
        }
    }
    let res = det_field(s);

    let lc = p[d].clone();
    let exp = d * (d - 1) / 2;
    let disc = res.div(&lc);
    Ok(if exp % 2 == 1 { disc.neg() } else { disc })
}

/// Determinant over the coefficient field by Gaussian elimination.
fn det_field(mut m: Vec<Vec<FieldElement>>) -> FieldElement {
    let n = m.len();
    if n == 0 {
        unreachable!("empty Sylvester matrix");
    }
    let field = m[0][0].spec();
    let mut det = field.one();
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return field.zero();
        };
        if pivot != k {
            m.swap(k, pivot);
            det = det.neg();
        }
        det = det.mul(&m[k][k]);
        let inv = m[k][k].inv();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = m[i][k].mul(&inv);
            for j in k..n {
                let sub = m[k][j].mul(&factor);
                m[i][j] = m[i][j].sub(&sub);
            }
        }
    }
    det
}
