//! Dense Gaussian elimination over `F_p`.

use crate::field::{Fp, PrimeField};

/// Rank of the matrix whose rows are given. Rows may have any common length.
pub fn rank(field: &PrimeField, mut rows: Vec<Vec<Fp>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][c]).unwrap();
        for x in rows[r][c..].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[c];
            if f.is_zero() {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x = field.sub(*x, field.mul(f, y));
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}
