//! Row-echelon arithmetic over F₂ on dense bit rows.

/// Rank of the matrix whose rows are `rows` (entries 0/1).
pub fn rank(rows: &[Vec<u8>]) -> usize {
    echelon(rows).0.len()
}

/// Reduced echelon rows and their pivot columns.
fn echelon(rows: &[Vec<u8>]) -> (Vec<Vec<u8>>, Vec<usize>) {
    let mut basis: Vec<Vec<u8>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for r in rows {
        let mut r: Vec<u8> = r.iter().map(|x| x & 1).collect();
        for (b, &p) in basis.iter().zip(&pivots) {
            if r[p] == 1 {
                xor_into(&mut r, b);
            }
        }
        if let Some(p) = r.iter().position(|&x| x == 1) {
            for b in basis.iter_mut() {
                if b[p] == 1 {
                    xor_into(b, &r);
                }
            }
            basis.push(r);
            pivots.push(p);
        }
    }
    (basis, pivots)
}

pub fn xor_into(dst: &mut [u8], src: &[u8]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s & 1;
    }
}

/// A basis of `{v : Σ v_i rows_i = 0}`, each `v` of length `rows.len()`.
pub fn left_kernel(rows: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let n = rows.len();
    // augment each row with the identity and eliminate on the left block
    let width = rows.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<u8>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v: Vec<u8> = r.iter().map(|x| x & 1).collect();
            v.resize(width, 0);
            v.extend((0..n).map(|j| u8::from(i == j)));
            v
        })
        .collect();
    let mut row = 0;
    for col in 0..width {
        let Some(piv) = (row..n).find(|&i| aug[i][col] == 1) else {
            continue;
        };
        aug.swap(row, piv);
        let pivot_row = aug[row].clone();
        for (i, r) in aug.iter_mut().enumerate() {
            if i != row && r[col] == 1 {
                xor_into(r, &pivot_row);
            }
        }
        row += 1;
    }
    aug[row..].iter().map(|r| r[width..].to_vec()).collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<u8>], v: &[u8]) -> bool {
    let mut rows = basis.to_vec();
    let before = rank(&rows);
    rows.push(v.to_vec());
    rank(&rows) == before
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![1, 1], vec![1, 1]]), 1);
        assert_eq!(rank(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]]), 2);
        assert_eq!(rank(&[vec![1, 0], vec![0, 1]]), 2);
    }

    #[test]
    fn kernel_vectors_kill_rows() {
        let rows = vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0], vec![0, 0, 0]];
        let ker = left_kernel(&rows);
        assert_eq!(ker.len(), rows.len() - rank(&rows));
        for v in &ker {
            let mut acc = vec![0u8; 3];
            for (vi, r) in v.iter().zip(&rows) {
                if *vi == 1 {
                    xor_into(&mut acc, r);
                }
            }
            assert_eq!(acc, vec![0, 0, 0]);
        }
        assert!(in_span(&ker, &[1, 1, 1, 0]));
        assert!(!in_span(&ker, &[1, 0, 0, 0]));
    }

    #[test]
    fn empty_columns() {
        let rows = vec![vec![], vec![]];
        assert_eq!(left_kernel(&rows).len(), 2);
    }
}
