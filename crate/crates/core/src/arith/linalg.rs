//! Dense linear algebra over a finite field (row vectors).

use super::FiniteField;

/// Reduced row echelon form with zero rows dropped.
pub fn echelon<F: FiniteField>(rows: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = *x * inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, &t) in row.iter_mut().zip(&pivot) {
                    *x = *x - f * t;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

pub fn rank<F: FiniteField>(rows: &[Vec<F>]) -> usize {
    echelon(rows).len()
}

/// Basis of `{x : M x^T = 0}` for the matrix with the given rows and `ncols` columns.
pub fn nullspace<F: FiniteField>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let e = echelon(rows);
    let pivots: Vec<usize> = e.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (row, &p) in e.iter().zip(&pivots) {
                v[p] = -row[free];
            }
            v
        })
        .collect()
}

/// Every vector in the span of `basis`, ordered lexicographically by coefficients.
pub fn span<F: FiniteField>(basis: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let els = F::elements();
    let mut out = vec![vec![F::zero(); ncols]];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * F::ORDER);
        for v in &out {
            for &c in &els {
                next.push(v.iter().zip(b).map(|(&x, &y)| x + c * y).collect());
            }
        }
        out = next;
    }
    out
}

pub fn dot<F: FiniteField>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (&x, &y)| acc + x * y)
}
