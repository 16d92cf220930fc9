//! Dense linear algebra over an exact field.

use crate::scalar::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<K: Field>(k: &K, rows: &mut Vec<Vec<K::Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !k.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = k.inv(&rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !k.is_zero(&rows[i][c]) {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let v = k.mul(&f, &rows[r][j]);
                    rows[i][j] = k.sub(&rows[i][j], &v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A basis of the right nullspace `{x : A x = 0}`.
pub fn nullspace<K: Field>(k: &K, mut rows: Vec<Vec<K::Elem>>, ncols: usize) -> Vec<Vec<K::Elem>> {
    let pivots = rref(k, &mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![k.zero(); ncols];
            v[f] = k.one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = k.neg(&row[f]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rationals};

    #[test]
    fn nullspace_of_rank_one() {
        let q = Rationals;
        let rows = vec![vec![rat(1, 1), rat(2, 1), rat(3, 1)], vec![rat(2, 1), rat(4, 1), rat(6, 1)]];
        let ns = nullspace(&q, rows.clone(), 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for r in &rows {
                let dot = r.iter().zip(&v).fold(rat(0, 1), |a, (x, y)| a + x * y);
                assert_eq!(dot, rat(0, 1));
            }
        }
    }
}
