use super::PrimeField;

/// Solves `A·x = b` over `F_q` by Gaussian elimination.
///
/// Returns one solution with every free variable set to zero, or `None` when
/// the system is inconsistent. `a` is row-major with all rows of equal length.
pub fn linear_solve(field: PrimeField, a: &[Vec<u64>], b: &[u64]) -> Option<Vec<u64>> {
    assert_eq!(a.len(), b.len(), "row count must match right-hand side");
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut r: Vec<u64> = row.iter().map(|&v| field.reduce(v)).collect();
            r.push(field.reduce(rhs));
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(m[r][c]).expect("nonzero pivot");
        for v in m[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                let pivot_row = m[r].clone();
                for (x, &y) in m[i][c..=cols].iter_mut().zip(&pivot_row[c..=cols]) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }

    if m[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![0; cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}
