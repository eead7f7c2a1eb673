use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn m(rows: &[&[i64]]) -> Matrix<BigInt> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
}

fn tuple(ms: &[Matrix<BigInt>]) -> MatrixTuple {
    MatrixTuple::new(ms.to_vec()).unwrap()
}

fn diag(a: i64, b: i64) -> Matrix<BigInt> {
    m(&[&[a, 0], &[0, b]])
}

fn unipotent_pair(h: i64) -> MatrixTuple {
    tuple(&[m(&[&[1, h - 1], &[0, 1]]), m(&[&[1, h], &[0, 1]])])
}

fn rot() -> Matrix<BigInt> {
    m(&[&[0, -1], &[1, 0]])
}

fn rel(k: &[i64]) -> RelationVector {
    RelationVector(k.to_vec())
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, h: i64) -> Matrix<BigInt> {
    loop {
        let a = Matrix::from_fn(n, |_, _| BigInt::from(rng.gen_range(-h..=h)));
        if !a.det().is_zero() {
            return a;
        }
    }
}

fn box_points(s: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..s {
        out = out.into_iter().flat_map(|p| (-b..=b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

#[test]
fn relation_lattice_examples() {
    let l = det_relation_lattice(&tuple(&[diag(2, 2), diag(2, 1)])).unwrap();
    assert_eq!(l.basis(), &[vec![BigInt::from(1), BigInt::from(-2)]]);
    let l = det_relation_lattice(&tuple(&[diag(2, 3), diag(2, 5), diag(3, 5)])).unwrap();
    assert_eq!(l.rank(), 0);
    let id = Matrix::identity(2);
    let l = det_relation_lattice(&tuple(&[id.clone(), id])).unwrap();
    assert_eq!(l.rank(), 2);
    assert_eq!(l.lattice.gram_det(), BigInt::from(1));
    assert_eq!(det_relation_lattice(&tuple(&[diag(1, 0)])), Err(Error::SingularMatrix));
}

#[test]
fn relation_lattice_sign_parity() {
    // dets (-1, -1): exactly the k with k_1 + k_2 even
    let l = det_relation_lattice(&tuple(&[diag(-1, 1), diag(1, -1)])).unwrap();
    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    assert!(l.lattice.contains(&big(&[1, 1])));
    assert!(l.lattice.contains(&big(&[2, 0])));
    assert!(!l.lattice.contains(&big(&[1, 0])));
    // dets (-2, 2)
    let l = det_relation_lattice(&tuple(&[diag(-2, 1), diag(2, 1)])).unwrap();
    assert!(l.lattice.contains(&big(&[2, -2])));
    assert!(!l.lattice.contains(&big(&[1, -1])));
}

#[test]
fn determinant_pruning_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let s = rng.gen_range(1..=3);
        let t = MatrixTuple::new((0..s).map(|_| random_matrix(&mut rng, 2, 2)).collect()).unwrap();
        let l = det_relation_lattice(&t).unwrap();
        let dets = t.dets();
        for k in box_points(s, 4) {
            let kb: Vec<BigInt> = k.iter().map(|&x| BigInt::from(x)).collect();
            // product of det^k as a rational, computed independently
            let mut num = BigInt::from(1);
            let mut den = BigInt::from(1);
            for (d, &e) in dets.iter().zip(&k) {
                let p = num_traits::pow::pow(d.clone(), e.unsigned_abs() as usize);
                if e >= 0 {
                    num *= p;
                } else {
                    den *= p;
                }
            }
            assert_eq!(num == den, l.lattice.contains(&kb), "{dets:?} {k:?}");
            if check_relation(&t, &RelationVector(k.clone())).unwrap() {
                assert!(l.lattice.contains(&kb));
            }
        }
    }
}

#[test]
fn check_relation_examples() {
    assert!(check_relation(&tuple(&[rot()]), &rel(&[4])).unwrap());
    assert!(!check_relation(&tuple(&[rot()]), &rel(&[2])).unwrap());
    let pair = tuple(&[m(&[&[1, 1], &[0, 1]]), m(&[&[1, 2], &[0, 1]])]);
    assert!(check_relation(&pair, &rel(&[2, -1])).unwrap());
    assert!(!check_relation(&pair, &rel(&[1, 1])).unwrap());
    assert!(check_relation(&tuple(&[diag(2, 2), diag(2, 2)]), &rel(&[-3, 3])).unwrap());
    assert_eq!(check_relation(&tuple(&[diag(0, 1)]), &rel(&[-1])), Err(Error::NegativePowerOfSingular));
    assert!(!check_relation(&tuple(&[diag(0, 1)]), &rel(&[1])).unwrap());
}

#[test]
fn dependence_examples() {
    assert_eq!(find_dependence(&unipotent_pair(3), 3, &opts()).unwrap(), Some(rel(&[3, -2])));
    assert_eq!(find_dependence(&unipotent_pair(3), 2, &opts()).unwrap(), None);
    assert_eq!(find_dependence(&tuple(&[diag(2, 2), diag(3, 3)]), 50, &opts()).unwrap(), None);
    assert_eq!(find_dependence(&tuple(&[rot()]), 4, &opts()).unwrap(), Some(rel(&[4])));
    assert_eq!(find_dependence(&tuple(&[rot()]), 3, &opts()).unwrap(), None);
}

#[test]
fn dependence_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut hits = 0;
    for _ in 0..60 {
        let t = tuple(&[random_matrix(&mut rng, 2, 2), random_matrix(&mut rng, 2, 2)]);
        let brute = box_points(2, 4)
            .into_iter()
            .filter(|k| k.iter().any(|&x| x != 0))
            .any(|k| check_relation(&t, &RelationVector(k)).unwrap());
        let found = find_dependence(&t, 4, &opts()).unwrap();
        assert_eq!(found.is_some(), brute);
        if let Some(k) = found {
            hits += 1;
            assert!(check_relation(&t, &k).unwrap());
        }
    }
    assert!(hits > 0);
}

#[test]
fn integer_spectra() {
    let s = search_spectrum(&m(&[&[2, 1], &[0, 3]]));
    assert_eq!(s, Some(vec![BigInt::from(2), BigInt::from(3)]));
    assert_eq!(search_spectrum(&rot()), None);
    let s = search_spectrum(&m(&[&[1, 5, 0], &[0, 1, 0], &[0, 0, -1]])).unwrap();
    assert_eq!(s.len(), 3);
}

fn search_spectrum(a: &Matrix<BigInt>) -> Option<Vec<BigInt>> {
    let mut s = search::integer_spectrum_for_tests(a)?;
    s.sort();
    Some(s)
}

#[test]
fn rank_examples() {
    assert_eq!(tuple_rank(&tuple(&[rot()]), 4, &opts()).unwrap(), 0);
    assert_eq!(tuple_rank(&unipotent_pair(4), 4, &opts()).unwrap(), 1);
    assert_eq!(tuple_rank(&tuple(&[diag(2, 2), diag(3, 3)]), 10, &opts()).unwrap(), 2);
}

#[test]
fn maximal_rank_examples() {
    assert!(is_maximal_rank_dependent(&unipotent_pair(4), 4, &opts()).unwrap());
    assert!(!is_maximal_rank_dependent(&unipotent_pair(4), 3, &opts()).unwrap());
    let a = m(&[&[1, 1], &[0, 1]]);
    assert!(!is_maximal_rank_dependent(&tuple(&[a.clone(), a.clone(), a]), 1, &opts()).unwrap());
    assert!(is_maximal_rank_dependent(&tuple(&[rot()]), 4, &opts()).unwrap());
}

#[test]
fn kernel_word_examples() {
    let w = find_kernel_word(&tuple(&[rot()]), 4, &opts()).unwrap().unwrap();
    assert_eq!(w.len(), 4);
    assert_eq!(w.exponent_sums(1).iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![4]);

    let t = unipotent_pair(3);
    let w = find_kernel_word(&t, 5, &opts()).unwrap().unwrap();
    assert!(w.is_reduced());
    assert!(w.evaluate(&t).unwrap().to_integer().unwrap().is_identity());
    let sums = w.exponent_sums(2);
    assert!(sums == vec![3, -2] || sums == vec![-3, 2], "{sums:?}");
    assert_eq!(find_kernel_word(&t, 4, &opts()).unwrap(), None);

    assert_eq!(find_kernel_word(&tuple(&[diag(2, 2), diag(3, 3)]), 8, &opts()).unwrap(), None);
}

#[test]
fn word_helpers() {
    let w = Word(vec![(0, 1), (1, 1), (1, -1), (0, 1)]);
    assert!(!w.is_reduced());
    assert_eq!(w.reduce(), Word(vec![(0, 1), (0, 1)]));
    assert_eq!(w.inverse().0[0], (0, -1));
    assert_eq!(Word(vec![(0, 1), (1, -1)]).to_string(), "A1 A2^-1");
}

#[test]
fn construction_examples() {
    let id = Matrix::<BigInt>::identity(2);
    let (t, k) = construct_even(&[id.clone(), id.clone()]).unwrap();
    assert_eq!(t.matrices(), &[id.clone(), id.clone()]);
    assert_eq!(k, rel(&[1, -1]));
    assert!(check_relation(&t, &k).unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let bs: Vec<_> = (0..4).map(|_| random_matrix(&mut rng, 2, 3)).collect();
        let (t, k) = construct_even(&bs).unwrap();
        assert!(check_relation(&t, &k).unwrap());
        assert!(t.max_abs() <= BigInt::from(2 * 9));
        let (t, k) = construct_odd(&bs[..2]).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.matrices()[2], bs[1]);
        assert_eq!(k, rel(&[1, -1, 1]));
        assert!(check_relation(&t, &k).unwrap());
    }
    assert!(matches!(construct_even(&[id.clone()]), Err(Error::ParityMismatch { .. })));
    assert!(matches!(construct_odd(&[id.clone()]), Err(Error::ParityMismatch { .. })));
    assert_eq!(construct_even(&[id.clone(), diag(1, 0)]), Err(Error::SingularMatrix));
}

#[test]
fn torsion_blocks() {
    let (a, k) = construct_torsion_block(&[4]).unwrap();
    assert_eq!((a.dim(), k), (2, 4));
    assert_eq!(a.charpoly(), crate::numtheory::cyclotomic(4));
    let (a, k) = construct_torsion_block(&[3, 4]).unwrap();
    assert_eq!((a.dim(), k), (4, 12));
    for j in [1, 2, 3, 4, 6] {
        assert!(!a.pow(j).is_identity());
    }
    let (a, k) = construct_torsion_block(&[1]).unwrap();
    assert_eq!((a, k), (Matrix::identity(1), 1));
    for k in 1..=30u64 {
        let (a, _) = construct_torsion_block(&[k]).unwrap();
        let order = (1..=k).find(|&j| a.pow(j).is_identity());
        assert_eq!(order, Some(k));
    }
    assert!(construct_torsion_block(&[]).is_err());
}

#[test]
fn ordered_products_depend_on_the_order() {
    // frozen fixture
    let a = m(&[&[1, 1], &[0, 1]]);
    let b = m(&[&[1, -2], &[0, 1]]);
    let k = rel(&[2, 1]);
    assert!(check_relation(&tuple(&[a.clone(), b.clone()]), &k).unwrap());
    assert!(!check_relation(&tuple(&[b, a]), &k).unwrap());

    // a non-commuting instance exists among small matrices as well
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let found = (0..20000).any(|_| {
        let a = random_matrix(&mut rng, 2, 2);
        let b = random_matrix(&mut rng, 2, 2);
        if &a * &b == &b * &a {
            return false;
        }
        let ab = tuple(&[a.clone(), b.clone()]);
        let ba = tuple(&[b, a]);
        box_points(2, 3)
            .into_iter()
            .filter(|k| k.iter().all(|&x| x != 0))
            .any(|k| {
                let k = RelationVector(k);
                check_relation(&ab, &k).unwrap() && !check_relation(&ba, &k).unwrap()
            })
    });
    assert!(found);
}
