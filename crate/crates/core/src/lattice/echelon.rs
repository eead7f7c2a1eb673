//! Unimodular elimination over the integers: saturated integer kernels and
//! Hermite-style row echelon forms.

use crate::scalar::Int;

fn ext_gcd<T: Int>(a: &T, b: &T) -> (T, T, T) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

fn combine<T: Int>(u: &[T], x: &T, v: &[T], y: &T) -> Vec<T> {
    u.iter()
        .zip(v)
        .map(|(a, b)| a.clone() * x.clone() + b.clone() * y.clone())
        .collect()
}

/// Basis of `{x in Z^t : r . x = 0 for every row r}`.
///
/// Column operations are recorded in a unimodular transform, so the returned
/// basis spans a saturated (primitive) sublattice of `Z^t`. Zero rows are
/// allowed; with no constraints the result is the standard basis.
pub fn integer_kernel<T: Int>(rows: &[Vec<T>], t: usize) -> Vec<Vec<T>> {
    let m = rows.len();
    // column j = (constraint part, transform part)
    let mut cols: Vec<(Vec<T>, Vec<T>)> = (0..t)
        .map(|j| {
            let top = rows.iter().map(|r| r[j].clone()).collect();
            let mut e = vec![T::zero(); t];
            e[j] = T::one();
            (top, e)
        })
        .collect();
    let mut p = 0;
    for r in 0..m {
        if p == t {
            break;
        }
        for j in p + 1..t {
            let b = cols[j].0[r].clone();
            if b.is_zero() {
                continue;
            }
            let a = cols[p].0[r].clone();
            if a.is_zero() {
                cols.swap(p, j);
                continue;
            }
            let (g, x, y) = ext_gcd(&a, &b);
            let (ag, bg) = (a / g.clone(), b / g);
            let nb = -bg;
            let new_p = (
                combine(&cols[p].0, &x, &cols[j].0, &y),
                combine(&cols[p].1, &x, &cols[j].1, &y),
            );
            let new_j = (
                combine(&cols[p].0, &nb, &cols[j].0, &ag),
                combine(&cols[p].1, &nb, &cols[j].1, &ag),
            );
            cols[p] = new_p;
            cols[j] = new_j;
        }
        if !cols[p].0[r].is_zero() {
            p += 1;
        }
    }
    cols.into_iter().skip(p).map(|(_, u)| canonical_sign(u)).collect()
}

/// Flips the sign so the first nonzero coordinate is positive.
pub fn canonical_sign<T: Int>(v: Vec<T>) -> Vec<T> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

/// Row echelon form of an independent set of rows, reached by unimodular row
/// operations: pivot columns strictly increase, pivots are positive, entries
/// below a pivot vanish and entries above it lie in `[0, pivot)`.
///
/// Returns the rows and their pivot columns.
pub fn row_echelon<T: Int>(rows: &[Vec<T>]) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let r = a.len();
    let t = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut p = 0;
    for c in 0..t {
        if p == r {
            break;
        }
        for i in p + 1..r {
            let b = a[i][c].clone();
            if b.is_zero() {
                continue;
            }
            let av = a[p][c].clone();
            if av.is_zero() {
                a.swap(p, i);
                continue;
            }
            let (g, x, y) = ext_gcd(&av, &b);
            let (ag, bg) = (av / g.clone(), b / g);
            let nb = -bg;
            let new_p = combine(&a[p], &x, &a[i], &y);
            let new_i = combine(&a[p], &nb, &a[i], &ag);
            a[p] = new_p;
            a[i] = new_i;
        }
        if a[p][c].is_zero() {
            continue;
        }
        if a[p][c].is_negative() {
            a[p] = a[p].iter().map(|x| -x.clone()).collect();
        }
        let piv = a[p][c].clone();
        for i in 0..p {
            let q = a[i][c].div_floor(&piv);
            if !q.is_zero() {
                let nq = -q;
                a[i] = combine(&a[i], &T::one(), &a[p], &nq);
            }
        }
        pivots.push(c);
        p += 1;
    }
    a.truncate(p);
    (a, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(a: &[i64], b: &[i64]) -> i64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn kernel_of_single_vectors() {
        assert_eq!(integer_kernel(&[vec![1i64, 0, 0]], 3), vec![vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(integer_kernel(&[vec![1i64, 1]], 2), vec![vec![1, -1]]);
        let k = integer_kernel(&[vec![1i64, 0, 5]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(v, &[1, 0, 5]), 0);
        }
    }

    #[test]
    fn kernel_without_constraints_is_everything() {
        assert_eq!(integer_kernel::<i64>(&[vec![0, 0]], 2), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(integer_kernel::<i64>(&[], 2), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn echelon_of_simple_rows() {
        let (e, p) = row_echelon(&[vec![2i64, 4], vec![1, 3]]);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(e, vec![vec![1, 1], vec![0, 2]]);
        let (e, p) = row_echelon(&[vec![0i64, 0, 3], vec![0, 2, 1]]);
        assert_eq!(p, vec![1, 2]);
        assert_eq!(e, vec![vec![0, 2, 1], vec![0, 0, 3]]);
    }
}
