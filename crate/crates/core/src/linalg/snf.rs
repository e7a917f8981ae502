//! Smith normal form of small integer matrices.

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<i128>>;

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow("Smith normal form"))
}

/// `row[dst] -= k * row[src]`.
fn row_sub(a: &mut Matrix, dst: usize, src: usize, k: i128) -> Result<()> {
    if k == 0 {
        return Ok(());
    }
    for j in 0..a[dst].len() {
        let t = checked(a[src][j].checked_mul(k))?;
        a[dst][j] = checked(a[dst][j].checked_sub(t))?;
    }
    Ok(())
}

/// `col[dst] -= k * col[src]`.
fn col_sub(a: &mut Matrix, dst: usize, src: usize, k: i128) -> Result<()> {
    if k == 0 {
        return Ok(());
    }
    for row in a.iter_mut() {
        let t = checked(row[src].checked_mul(k))?;
        row[dst] = checked(row[dst].checked_sub(t))?;
    }
    Ok(())
}

fn col_swap(a: &mut Matrix, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Result of `U · A · V = diag(d_1, …)` for an `r × n` matrix `A`; only the
/// column transform `V` is kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    /// Nonnegative diagonal, length `min(r, n)`, with `d_i | d_{i+1}` among
    /// the nonzero entries (zeros last).
    pub diagonal: Vec<i128>,
    /// Unimodular `n × n` column transform.
    pub v: Matrix,
}

pub fn smith(a: &[Vec<i128>], ncols: usize) -> Result<Smith> {
    let mut m: Matrix = a.to_vec();
    for row in &m {
        if row.len() != ncols {
            return Err(Error::Unsupported("ragged matrix".into()));
        }
    }
    let rows = m.len();
    let mut v: Matrix = (0..ncols)
        .map(|i| (0..ncols).map(|j| i128::from(i == j)).collect())
        .collect();
    let steps = rows.min(ncols);
    for t in 0..steps {
        loop {
            // pivot: smallest nonzero |entry| in the lower-right block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..ncols {
                    if m[i][j] != 0
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // remaining block is zero
                let mut diagonal: Vec<i128> = (0..steps).map(|k| m[k][k].abs()).collect();
                for d in diagonal.iter_mut().skip(t) {
                    *d = 0;
                }
                return Ok(Smith { diagonal, v });
            };
            m.swap(t, pi);
            col_swap(&mut m, t, pj);
            col_swap(&mut v, t, pj);
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(p);
                row_sub(&mut m, i, t, q)?;
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                let q = m[t][j].div_euclid(p);
                col_sub(&mut m, j, t, q)?;
                col_sub(&mut v, j, t, q)?;
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold a bad row into row t and retry
            let bad = (t + 1..rows).find(|&i| (t + 1..ncols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => row_sub(&mut m, t, i, -1)?,
                None => break,
            }
        }
        if m[t][t] < 0 {
            m[t][t] = -m[t][t];
            for row in v.iter_mut() {
                row[t] = -row[t];
            }
            // negate column t of m as well (only the diagonal entry is nonzero)
        }
    }
    let diagonal = (0..steps).map(|k| m[k][k].abs()).collect();
    Ok(Smith { diagonal, v })
}

/// `Z^n / (row span of relations)` as invariant factors (> 1) plus free rank,
/// together with the coordinate change `x ↦ x·V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cokernel {
    pub invariants: Vec<u64>,
    pub free_rank: usize,
    pub smith: Smith,
}

pub fn cokernel(relations: &[Vec<i128>], n: usize) -> Result<Cokernel> {
    let s = smith(relations, n)?;
    let mut invariants = Vec::new();
    let mut nonzero = 0;
    for &d in &s.diagonal {
        if d != 0 {
            nonzero += 1;
            if d > 1 {
                invariants.push(u64::try_from(d).map_err(|_| Error::Overflow("invariant factor"))?);
            }
        }
    }
    invariants.sort_unstable();
    Ok(Cokernel {
        invariants,
        free_rank: n - nonzero,
        smith: s,
    })
}

/// Row vector times matrix.
pub fn vec_mul(x: &[i128], m: &[Vec<i128>]) -> Result<Vec<i128>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![0i128; cols];
    for (xi, row) in x.iter().zip(m) {
        if *xi == 0 {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            *o = checked(o.checked_add(checked(xi.checked_mul(*r))?))?;
        }
    }
    Ok(out)
}

pub fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Result<Matrix> {
    a.iter().map(|row| vec_mul(row, b)).collect()
}
