use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use num_bigint::BigInt;

fn v(c: &[i64]) -> Vector<i64> {
    Vector::from_i64(c)
}

#[test]
fn orthogonal_lattice_examples() {
    let l = orthogonal_lattice(&[v(&[1, 0, 0])]).unwrap();
    assert_eq!(reduced_basis(&l), vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
    assert_eq!(lattice_det(&l), Volume { gram_det: 1, sqrt: Some(1) });

    let l = orthogonal_lattice(&[v(&[1, 1])]).unwrap();
    assert_eq!(l.basis(), &[vec![1, -1]]);
    assert_eq!(lattice_det(&l), Volume { gram_det: 2, sqrt: None });

    let l = orthogonal_lattice(&[v(&[1, 0, 5])]).unwrap();
    assert_eq!(l.rank(), 2);
    assert!(l.contains(&[0, 1, 0]));
    assert!(l.contains(&[-5, 0, 1]));
    for b in l.basis() {
        assert_eq!(dot(b, &[1, 0, 5]), 0);
    }
    assert_eq!(orthogonal_lattice(&[v(&[0, 0])]), Err(Error::ZeroArgument));
}

#[test]
fn lattice_det_examples() {
    assert_eq!(lattice_det(&Lattice::<i64>::standard(2)).sqrt, Some(1));
    let l = Lattice::new(2, vec![vec![2i64, 0], vec![0, 2]]).unwrap();
    assert_eq!(lattice_det(&l), Volume { gram_det: 16, sqrt: Some(4) });
    assert_eq!(Lattice::new(2, vec![vec![1i64, 2], vec![2, 4]]), Err(Error::DependentBasis));
}

#[test]
fn dual_volume_examples() {
    assert!(dual_volume_check(&v(&[1, 0, 0])).unwrap());
    assert!(dual_volume_check(&v(&[1, 1])).unwrap());
    assert!(dual_volume_check(&v(&[3, 4, 12])).unwrap());
    assert_eq!(orthogonal_lattice(&[v(&[3, 4, 12])]).unwrap().gram_det(), 169);
    assert!(matches!(dual_volume_check(&v(&[2, 4])), Err(Error::NotPrimitive { .. })));
}

#[test]
fn reduced_basis_examples() {
    let l = Lattice::<i64>::standard(2);
    assert_eq!(reduced_basis(&l), vec![v(&[1, 0]), v(&[0, 1])]);
    let l = Lattice::new(2, vec![vec![1i64, 0], vec![10, 1]]).unwrap();
    assert_eq!(reduced_basis(&l), vec![v(&[1, 0]), v(&[0, 1])]);
    let d = orthogonal_lattice(&[v(&[1, 0, 5])]).unwrap();
    assert_eq!(reduced_basis(&d)[0].norm2(), 1);
}

#[test]
fn goodness_examples() {
    assert!(is_k_good(&v(&[1, 0, 0]), 1.0).unwrap().good);
    let bad = is_k_good(&v(&[1, 0, 5]), 4.0).unwrap();
    assert!(!bad.good);
    assert_eq!(bad.minima2, vec![1, 26]);
    assert_eq!(bad.violating, Some(26));
    assert!(matches!(is_k_good(&v(&[2, 0, 4]), 4.0), Err(Error::NotPrimitive { .. })));
    assert!(matches!(is_k_good(&v(&[1, 0, 0]), 0.5), Err(Error::InvalidParameter(_))));
}

#[test]
fn radius_constant_makes_every_vector_good() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let c = good_radius_constant(3);
    for _ in 0..300 {
        let t = rng.gen_range(2..=5);
        let u: Vec<i64> = (0..t).map(|_| rng.gen_range(-12..=12)).collect();
        let u = Vector(u);
        if !u.is_primitive() {
            continue;
        }
        assert!(is_k_good(&u, c * u.norm() * (1.0 + 1e-12)).unwrap().good, "{u}");
    }
}

#[test]
fn box_count_examples() {
    assert_eq!(points_in_box(&Lattice::<i64>::standard(2), 1, 1000).unwrap(), 9);
    let l = Lattice::new(2, vec![vec![2i64, 0], vec![0, 2]]).unwrap();
    assert_eq!(points_in_box(&l, 3, 1000).unwrap(), 9);
    let d = orthogonal_lattice(&[v(&[1, 1])]).unwrap();
    assert_eq!(points_in_box(&d, 2, 1000).unwrap(), 5);
    let zero = Lattice::<i64>::new(3, vec![]).unwrap();
    assert_eq!(points_in_box(&zero, 4, 10).unwrap(), 1);
}

fn naive_box_count(l: &Lattice<i64>, h: i64) -> u128 {
    let t = l.ambient_dim();
    let mut n = 0;
    let mut w = vec![-h; t];
    loop {
        if l.contains(&w) {
            n += 1;
        }
        let mut i = 0;
        loop {
            if i == t {
                return n;
            }
            if w[i] < h {
                w[i] += 1;
                break;
            }
            w[i] = -h;
            i += 1;
        }
    }
}

fn random_lattice(rng: &mut ChaCha8Rng, t: usize) -> Lattice<i64> {
    loop {
        let s = rng.gen_range(1..=t);
        let basis: Vec<Vec<i64>> = (0..s).map(|_| (0..t).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        if let Ok(l) = Lattice::new(t, basis) {
            return l;
        }
    }
}

#[test]
fn box_count_matches_grid_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..25 {
        let t = rng.gen_range(1..=3);
        let l = random_lattice(&mut rng, t);
        let h = rng.gen_range(0..=5);
        assert_eq!(points_in_box(&l, h as u64, 1 << 30).unwrap(), naive_box_count(&l, h), "{l:?} h={h}");
    }
}

#[test]
fn enumerate_box_agrees_with_count() {
    let l = Lattice::new(3, vec![vec![1i64, 2, 3], vec![0, 3, -1]]).unwrap();
    let mut pts = Vec::new();
    enumerate_box(&l, 6, 1 << 20, &mut |p| pts.push(p.to_vec())).unwrap();
    assert_eq!(pts.len() as u128, points_in_box(&l, 6, 1 << 20).unwrap());
    assert!(pts.iter().all(|p| l.contains(p) && p.iter().all(|x| x.abs() <= 6)));
}

/// Squared minima by brute force over small coefficient vectors.
fn brute_minima(l: &Lattice<i64>, bound: i64) -> Vec<i64> {
    let s = l.rank();
    let mut vecs: Vec<(i64, Vec<i64>)> = Vec::new();
    let mut c = vec![-bound; s];
    loop {
        if c.iter().any(|&x| x != 0) {
            let mut w = vec![0i64; l.ambient_dim()];
            for (k, b) in c.iter().zip(l.basis()) {
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi += k * bi;
                }
            }
            vecs.push((dot(&w, &w), c.clone()));
        }
        let mut i = 0;
        loop {
            if i == s {
                vecs.sort();
                let mut chosen: Vec<Vec<i64>> = Vec::new();
                let mut out = Vec::new();
                for (n, c) in vecs {
                    let mut trial = chosen.clone();
                    trial.push(c);
                    if row_echelon(&trial).1.len() == trial.len() {
                        chosen = trial;
                        out.push(n);
                    }
                }
                return out;
            }
            if c[i] < bound {
                c[i] += 1;
                break;
            }
            c[i] = -bound;
            i += 1;
        }
    }
}

#[test]
fn reduced_basis_attains_minima_at_small_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let u: Vec<i64> = (0..4).map(|_| rng.gen_range(-6..=6)).collect();
        let u = Vector(u);
        if !u.is_primitive() {
            continue;
        }
        let d = orthogonal_lattice(std::slice::from_ref(&u)).unwrap();
        let rb = reduced_basis(&d);
        let lens: Vec<i64> = rb.iter().map(Vector::norm2).collect();
        // the LLL basis of the complement has small coefficients in itself
        assert_eq!(lens, brute_minima(&d, 4), "{u}");
        assert_eq!(successive_minima(&d), lens);
        let rl = Lattice::new(4, rb.iter().map(|x| x.0.clone()).collect()).unwrap();
        assert_eq!(rl.gram_det(), d.gram_det());
    }
}

#[test]
fn lll_product_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let t = rng.gen_range(2..=6);
        let l = random_lattice(&mut rng, t);
        let s = l.rank();
        let rb = reduced_basis(&l);
        let prod: f64 = rb.iter().map(Vector::norm).product();
        let vol = lattice_det(&l).to_f64();
        assert!(prod >= vol * (1.0 - 1e-9));
        assert!(prod <= 2f64.powf((s * (s - 1)) as f64 / 4.0) * vol * (1.0 + 1e-9));
    }
}

#[test]
fn classification_examples() {
    let c = classify_perfect_mediocre(&v(&[1, 0, 0, 0]), 1.0, 1.0).unwrap();
    assert_eq!(c.verdict, PerfectVerdict::Perfect);
    let c = classify_perfect_mediocre(&v(&[1, 0, 5, 7]), 100.0, 4.0).unwrap();
    assert_eq!(c.verdict, PerfectVerdict::Mediocre);
    assert_eq!(c.mu_star, Some(v(&[1, 0, 5])));
    let c = classify_perfect_mediocre(&v(&[2, 4, 3]), 100.0, 10.0).unwrap();
    assert_eq!(c.ell, 2);
    assert_eq!(c.mu_star, Some(v(&[1, 2])));
    let c = classify_perfect_mediocre(&v(&[0, 0, -1]), 100.0, 10.0).unwrap();
    assert_eq!(c.verdict, PerfectVerdict::Degenerate);
    assert!(classify_perfect_mediocre(&v(&[0, 0, 1]), 100.0, 10.0).is_err());
    let c = classify_perfect_mediocre(&v(&[1, 0, 5, 7]), 2.0, 4.0).unwrap();
    assert_eq!(c.verdict, PerfectVerdict::NotHGood);
}

#[test]
fn slab_examples() {
    assert!(slab_contains(&v(&[1, 0]), &v(&[1, 7])));
    assert!(!slab_contains(&v(&[1, 0]), &v(&[2, 0])));
    assert!(slab_contains(&v(&[2, 1]), &v(&[-1, 2])));
    assert_eq!(slab_count_in_box(&v(&[1, 0]), 2).unwrap(), 15);
}

#[test]
fn slab_count_matches_scan_and_fitted_bound() {
    // C fitted on v in {(1,1),(2,1),(1,2,2)} at T=4 and kept fixed afterwards
    const C: f64 = 4.0;
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let t = rng.gen_range(2..=3);
        let vv: Vec<i64> = (0..t).map(|_| rng.gen_range(-3..=3)).collect();
        let vv = Vector(vv);
        if vv.is_zero() {
            continue;
        }
        let tb = rng.gen_range(1..=6i64);
        let mut naive = 0u128;
        let mut w = vec![-tb; t];
        'scan: loop {
            if slab_contains(&vv, &Vector(w.clone())) {
                naive += 1;
            }
            let mut i = 0;
            loop {
                if i == t {
                    break 'scan;
                }
                if w[i] < tb {
                    w[i] += 1;
                    break;
                }
                w[i] = -tb;
                i += 1;
            }
        }
        let fast = slab_count_in_box(&vv, tb as u64).unwrap();
        assert_eq!(fast, naive);
        assert!((fast as f64) <= C * vv.norm() * (tb as f64).powi(t as i32 - 1) + 1e-9 || (fast as f64) <= (2 * tb + 1).pow(t as u32) as f64);
    }
}

#[test]
fn census_examples() {
    let c = kbad_census(3, 6.0, 6.0, true, 1).unwrap();
    assert_eq!(c.count, 0);
    assert_eq!(c.sum, 0.0);
    let c = kbad_census(3, 6.0, 4.0, true, 2).unwrap();
    assert!(c.vectors.as_ref().unwrap().contains(&v(&[1, 0, 5])));
    let one = kbad_census(3, 5.1, 4.0, true, 1).unwrap();
    assert!(one.vectors.unwrap().contains(&v(&[1, 0, 5])));
}

#[test]
fn census_matches_oracle() {
    let c = kbad_census(3, 6.0, 2.0, true, 3).unwrap();
    let mut n = 0u64;
    let mut sum = 0.0;
    for a in -6i64..=6 {
        for b in -6i64..=6 {
            for d in -6i64..=6 {
                let u = v(&[a, b, d]);
                if u.norm2() > 36 || !u.is_primitive() {
                    continue;
                }
                let m = brute_minima(&orthogonal_lattice(std::slice::from_ref(&u)).unwrap(), 6);
                if *m.last().unwrap() > 4 {
                    n += 1;
                    sum += (u.norm2() as f64).powf(-1.5);
                }
            }
        }
    }
    assert_eq!(c.count, n);
    assert!((c.sum - sum).abs() <= 1e-12);
    assert_eq!(c.count, 720);
}

#[test]
fn census_is_thread_independent() {
    let a = kbad_census(4, 5.0, 2.0, true, 1).unwrap();
    let b = kbad_census(4, 5.0, 2.0, true, 4).unwrap();
    assert_eq!(a, b);
}

#[test]
fn inverse_norm_sum_examples() {
    assert_eq!(kbad_inverse_norm_sum(3, 3.0, 10.0, 1).unwrap().value, 0.0);
    let s10 = kbad_inverse_norm_sum(3, 10.0, 3.0, 1).unwrap();
    let s20 = kbad_inverse_norm_sum(3, 20.0, 3.0, 1).unwrap();
    assert!(s10.value <= s20.value);
    let c = kbad_census(3, 5.1, 4.0, true, 1).unwrap();
    let term = 26f64.powf(-1.5);
    let count26 = c.vectors.unwrap().iter().filter(|u| u.norm2() == 26).count();
    assert!(count26 > 0);
    assert!(c.sum >= count26 as f64 * term * (1.0 - 1e-12));
}

#[test]
fn bigint_instantiation_agrees() {
    let u: Vector<BigInt> = Vector::from_i64(&[3, 4, 12]);
    let l = orthogonal_lattice(std::slice::from_ref(&u)).unwrap();
    assert_eq!(l.gram_det(), BigInt::from(169));
    assert!(!is_k_good(&u, 3.0).unwrap().good);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dual_volume_holds(u in prop::collection::vec(-30i64..=30, 1..=6)) {
        let u = Vector(u);
        prop_assume!(u.is_primitive());
        prop_assert!(dual_volume_check(&u).unwrap());
    }

    #[test]
    fn goodness_is_monotone(u in prop::collection::vec(-9i64..=9, 2..=5), k in 1.0f64..12.0, dk in 0.0f64..5.0) {
        let u = Vector(u);
        prop_assume!(u.is_primitive());
        if is_k_good(&u, k).unwrap().good {
            prop_assert!(is_k_good(&u, k + dk).unwrap().good);
        }
    }

    #[test]
    fn kernel_is_orthogonal_and_saturated(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 1..=3)) {
        let k = integer_kernel(&rows, 4);
        for b in &k {
            for r in &rows {
                prop_assert_eq!(dot(b, r), 0);
            }
        }
        if !k.is_empty() {
            // saturated: the gcd of maximal minors of the kernel basis is 1
            let l = Lattice::new(4, k.clone()).unwrap();
            let rank = row_echelon(&rows).1.len();
            prop_assert_eq!(k.len(), 4 - rank);
            let e = row_echelon(&k).0;
            let mut g = 0i64;
            let s = e.len();
            let cols: Vec<Vec<usize>> = (0..4usize).collect::<Vec<_>>().into_iter().fold(vec![vec![]], |acc: Vec<Vec<usize>>, c| {
                let mut out = acc.clone();
                for a in acc { let mut a2 = a.clone(); a2.push(c); out.push(a2); }
                out
            }).into_iter().filter(|c| c.len() == s).collect();
            for c in cols {
                let m = crate::linalg::Matrix::from_fn(s, |i, j| e[i][c[j]]);
                g = num_integer::Integer::gcd(&g, &m.det());
            }
            prop_assert_eq!(g, 1);
            prop_assert!(l.gram_det() > 0);
        }
    }
}
