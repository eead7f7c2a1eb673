use num_bigint::BigInt;
use num_rational::Ratio;
use proptest::prelude::*;

use super::*;

fn m(rows: &[&[i64]]) -> Matrix<BigInt> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
        .unwrap()
}

fn q(rows: &[&[(i64, i64)]]) -> Matrix<Ratio<BigInt>> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&(a, b)| Ratio::new(BigInt::from(a), BigInt::from(b))).collect())
            .collect(),
    )
    .unwrap()
}

fn poly(c: &[i64]) -> MonicPoly<BigInt> {
    MonicPoly::new(c.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
}

/// Laplace expansion along the first row; independent of Bareiss.
fn cofactor_det(a: &Matrix<i64>) -> i64 {
    let n = a.dim();
    if n == 1 {
        return *a.get(0, 0);
    }
    (0..n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * a.get(0, j) * cofactor_det(&a.minor(0, j))
        })
        .sum()
}

#[test]
fn mat_mul_examples() {
    let a = m(&[&[3, -1], &[4, 7]]);
    assert_eq!(mat_mul(&Matrix::identity(2), &a).unwrap(), a);
    assert_eq!(mat_mul(&m(&[&[1, 1], &[0, 1]]), &m(&[&[1, 2], &[0, 1]])).unwrap(), m(&[&[1, 3], &[0, 1]]));
    let r = m(&[&[0, -1], &[1, 0]]);
    assert_eq!(&r * &r, m(&[&[-1, 0], &[0, -1]]));
    assert!(mat_mul(&a, &Matrix::identity(3)).is_err());
}

#[test]
fn mat_pow_examples() {
    let a = m(&[&[2, 5], &[-1, 3]]);
    assert!(mat_pow(&a, 0).unwrap().is_identity());
    assert!(mat_pow(&m(&[&[0, -1], &[1, 0]]), 4).unwrap().is_identity());
    // inverse of the shear is [[1,-1],[0,1]]; its square is [[1,-2],[0,1]]
    assert_eq!(mat_pow(&m(&[&[1, 1], &[0, 1]]), -2).unwrap(), q(&[&[(1, 1), (-2, 1)], &[(0, 1), (1, 1)]]));
    assert_eq!(mat_pow(&m(&[&[1, 2], &[2, 4]]), -1), Err(Error::NegativePowerOfSingular));
}

#[test]
fn det_examples() {
    for n in 1..5 {
        assert_eq!(Matrix::<BigInt>::identity(n).det(), BigInt::from(1));
    }
    assert_eq!(m(&[&[1, 2], &[3, 4]]).det(), BigInt::from(-2));
    let c = companion(&poly(&[5, -2, 0]));
    assert_eq!(c.det(), BigInt::from(-5));
    assert_eq!(cofactor_det(&c.map(|x| i64::try_from(x).unwrap())), -5);
    // zero pivot in the first column forces a swap
    assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
    assert_eq!(m(&[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]).det(), BigInt::from(0));
}

#[test]
fn trace_examples() {
    assert_eq!(Matrix::<BigInt>::identity(3).trace(), BigInt::from(3));
    assert_eq!(m(&[&[0, -1], &[1, 0]]).trace_power(2), BigInt::from(-2));
    for j in 1..8 {
        assert_eq!(m(&[&[1, 1], &[0, 1]]).trace_power(j), BigInt::from(2));
    }
}

#[test]
fn charpoly_examples() {
    assert_eq!(Matrix::<BigInt>::identity(2).charpoly(), poly(&[1, -2]));
    let f = poly(&[6, -5]);
    assert_eq!(companion(&f).charpoly(), f);
    assert_eq!(m(&[&[0, -1], &[1, 0]]).charpoly(), poly(&[1, 0]));
    // 3x3 against det(XI - A) evaluated at integer points
    let a = m(&[&[2, -1, 3], &[0, 4, 1], &[5, 2, -2]]);
    let f = a.charpoly();
    for x in -3..4 {
        let xi = Matrix::from_fn(3, |i, j| {
            let d = if i == j { BigInt::from(x) } else { BigInt::from(0) };
            d - a.get(i, j).clone()
        });
        assert_eq!(f.eval(&BigInt::from(x)), xi.det());
    }
}

#[test]
fn newton_check_examples() {
    assert!(newton_check(&poly(&[1, -2]), &Matrix::identity(2)));
    assert!(newton_check(&poly(&[1, 0]), &m(&[&[0, -1], &[1, 0]])));
    assert!(!newton_check(&poly(&[1, 0]), &Matrix::identity(2)));
    assert!(!newton_check(&poly(&[1, 0, 0]), &Matrix::identity(2)));
}

#[test]
fn companion_examples() {
    assert_eq!(companion(&poly(&[-3])), m(&[&[3]]));
    assert_eq!(companion(&poly(&[1, 0])), m(&[&[0, -1], &[1, 0]]));
    let c6 = companion(&poly(&[1, -1]));
    assert!(c6.pow(6).is_identity());
    assert!(!c6.pow(3).is_identity());
}

#[test]
fn block_diag_examples() {
    assert_eq!(block_diag(&[m(&[&[2]]), m(&[&[3]])]).unwrap(), m(&[&[2, 0], &[0, 3]]));
    let b1 = companion(&poly(&[1, 1])); // Phi_3 has order 3
    let b2 = companion(&poly(&[1, 0])); // Phi_4 has order 4
    assert!(b1.pow(3).is_identity() && b2.pow(4).is_identity());
    let a = block_diag(&[b1.clone(), b2.clone()]).unwrap();
    assert!(a.pow(12).is_identity());
    assert!(!a.pow(6).is_identity());
    let x = m(&[&[2, 1], &[7, -3]]);
    let y = m(&[&[1, 4, 0], &[2, 2, 1], &[0, 5, 3]]);
    assert_eq!(block_diag(&[x.clone(), y.clone()]).unwrap().det(), x.det() * y.det());
    assert!(block_diag::<BigInt>(&[]).is_err());
}

#[test]
fn inverse_examples() {
    assert!(Matrix::<BigInt>::identity(3).inverse_rational().unwrap().is_identity());
    assert_eq!(
        m(&[&[1, 2], &[0, 1]]).inverse_rational().unwrap(),
        q(&[&[(1, 1), (-2, 1)], &[(0, 1), (1, 1)]])
    );
    assert_eq!(
        m(&[&[2, 0], &[0, 2]]).inverse_rational().unwrap(),
        q(&[&[(1, 2), (0, 1)], &[(0, 1), (1, 2)]])
    );
    assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse_rational(), Err(Error::SingularMatrix));
}

#[test]
fn adjugate_identity() {
    let a = m(&[&[2, -1, 3], &[0, 4, 1], &[5, 2, -2]]);
    let prod = &a * &a.adjugate();
    let d = a.det();
    assert_eq!(prod, Matrix::from_fn(3, |i, j| if i == j { d.clone() } else { BigInt::from(0) }));
    assert_eq!(m(&[&[7]]).adjugate(), m(&[&[1]]));
}

fn small_matrix(max_n: usize) -> impl Strategy<Value = Matrix<i64>> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-4i64..=4, n * n).prop_map(move |d| Matrix::new(n, d).unwrap())
    })
}

fn unimodular(n: usize, ops: &[(usize, usize, i64, bool)]) -> Matrix<i64> {
    let mut p = Matrix::<i64>::identity(n);
    for &(i, j, c, swap) in ops {
        let (i, j) = (i % n, j % n);
        let e = if swap {
            Matrix::from_fn(n, |r, s| {
                let r2 = if r == i { j } else if r == j { i } else { r };
                i64::from(r2 == s)
            })
        } else if i != j {
            Matrix::from_fn(n, |r, s| i64::from(r == s) + if r == i && s == j { c } else { 0 })
        } else {
            continue;
        };
        p = &p * &e;
    }
    p
}

proptest! {
    #[test]
    fn det_is_multiplicative(a in small_matrix(5), seed in proptest::collection::vec(-4i64..=4, 25)) {
        let n = a.dim();
        let b = Matrix::new(n, seed[..n * n].to_vec()).unwrap();
        prop_assert_eq!((&a * &b).det(), a.det() * b.det());
    }

    #[test]
    fn det_matches_cofactor_expansion(a in small_matrix(4)) {
        prop_assert_eq!(a.det(), cofactor_det(&a));
    }

    #[test]
    fn charpoly_satisfies_newton(a in small_matrix(5)) {
        let f = a.charpoly();
        prop_assert!(newton_check(&f, &a));
        prop_assert_eq!(f.det(), a.det());
        prop_assert_eq!(f.trace(), a.trace());
    }

    #[test]
    fn charpoly_is_conjugation_invariant(
        a in small_matrix(5),
        ops in proptest::collection::vec((0usize..5, 0usize..5, -2i64..=2, any::<bool>()), 0..6),
    ) {
        let n = a.dim();
        let p = unimodular(n, &ops);
        let pb = p.map(|&x| BigInt::from(x));
        let ab = a.map(|&x| BigInt::from(x));
        let pinv = pb.inverse_rational().unwrap().to_integer().unwrap();
        let conj = &(&pb * &ab) * &pinv;
        prop_assert_eq!(conj.charpoly(), ab.charpoly());
    }

    #[test]
    fn signed_powers_add(a in small_matrix(3), j in -4i64..=4, k in -4i64..=4) {
        let ab = a.map(|&x| BigInt::from(x));
        prop_assume!(!ab.det().is_zero());
        let lhs = mat_pow(&ab, j + k).unwrap();
        let rhs = &mat_pow(&ab, j).unwrap() * &mat_pow(&ab, k).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn companion_round_trip(c in proptest::collection::vec(-9i64..=9, 1..=6)) {
        let f = MonicPoly::new(c.into_iter().map(BigInt::from).collect()).unwrap();
        prop_assert_eq!(companion(&f).charpoly(), f);
    }
}
