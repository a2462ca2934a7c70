use riordan::morphisms::{self, is_type_almost_appell, MorphismId};
use riordan::multi_riordan::roots;
use riordan::random::{self, rng_for};
use riordan::series::int;
use riordan::{KRiordanArray, RiordanArray, Series, TriangularMatrix};

fn coeff_vec(s: &Series) -> Vec<riordan::Coefficient> {
    s.coeffs().to_vec()
}

#[test]
fn riordan_matrix_functor_and_ftra() {
    let mut rng = rng_for(100, 0);
    for _ in 0..20 {
        let n = 10;
        let a = random::riordan(&mut rng, n);
        let b = random::riordan(&mut rng, n);
        let ma = a.to_matrix(n).unwrap();
        let mb = b.to_matrix(n).unwrap();
        assert_eq!(a.multiply(&b).unwrap().to_matrix(n).unwrap(), ma.mul(&mb).unwrap());

        let v = random::series(&mut rng, n);
        assert_eq!(coeff_vec(&a.apply(&v).unwrap()), ma.mul_vector(v.coeffs()));

        let diag = ma.diagonal();
        let (g0, f1) = (a.g().coeffs()[0].clone(), a.f().coeffs()[1].clone());
        for (i, d) in diag.iter().enumerate() {
            assert_eq!(*d, &g0 * num_traits::pow(f1.clone(), i));
        }
    }
}

#[test]
fn riordan_inverse_matches_matrix_inverse() {
    let mut rng = rng_for(101, 0);
    for _ in 0..10 {
        let a = random::riordan(&mut rng, 9);
        let inv = a.inverse().unwrap().to_matrix(9).unwrap();
        assert_eq!(inv, a.to_matrix(9).unwrap().inverse().unwrap());
    }
}

#[test]
fn pascal_squared_is_binomial_two() {
    let n = 8;
    let p = RiordanArray::pascal(n).to_matrix(n).unwrap();
    let sq = RiordanArray::pascal(n).multiply(&RiordanArray::pascal(n)).unwrap();
    assert_eq!(sq.to_matrix(n).unwrap(), p.mul(&p).unwrap());
    // row n, column k of P^2 is C(n,k) 2^(n-k)
    let m = sq.to_matrix(n).unwrap();
    assert_eq!(m.get(4, 1), int(4 * 8));
}

#[test]
fn checkerboard_closure() {
    let mut rng = rng_for(102, 0);
    for _ in 0..10 {
        let a = random::checkerboard(&mut rng, 12);
        let b = random::checkerboard(&mut rng, 12);
        assert!(a.multiply(&b).unwrap().is_checkerboard());
        assert!(a.inverse().unwrap().is_checkerboard());
    }
}

#[test]
fn k_matrix_functor() {
    let mut rng = rng_for(103, 0);
    for k in 1..=5 {
        for _ in 0..6 {
            let n = 12;
            let a = random::kriordan(&mut rng, k, n);
            let b = random::kriordan(&mut rng, k, n);
            let prod = a.multiply(&b).unwrap();
            assert_eq!(
                prod.to_matrix(n).unwrap(),
                a.to_matrix(n).unwrap().mul(&b.to_matrix(n).unwrap()).unwrap(),
                "k = {k}"
            );
            assert_eq!(
                a.inverse().unwrap().to_matrix(n).unwrap(),
                a.to_matrix(n).unwrap().inverse().unwrap()
            );
        }
    }
}

#[test]
fn k_action_matches_matrix_vector() {
    let mut rng = rng_for(104, 0);
    for k in 1..=4 {
        for _ in 0..6 {
            let n = 12;
            let d = random::kriordan(&mut rng, k, n);
            let v = random::series(&mut rng, n);
            let m = d.to_matrix(n).unwrap();
            assert_eq!(coeff_vec(&d.apply(&v).unwrap()), m.mul_vector(v.coeffs()));
        }
    }
}

#[test]
fn ftdra_concrete_examples() {
    let n = 12;
    let g = Series::geometric(n).aerate(2).unwrap();
    let m2 = g.shift_up(1).retruncate(n).unwrap();
    let d = KRiordanArray::new(Series::one(n), vec![Series::z(n), m2.clone()]).unwrap();
    let m = d.to_matrix(n).unwrap();

    let even = g.clone();
    assert_eq!(coeff_vec(&d.apply_even(&even).unwrap()), m.mul_vector(even.coeffs()));
    let odd = m2;
    assert_eq!(coeff_vec(&d.apply_odd(&odd).unwrap()), m.mul_vector(odd.coeffs()));
}

#[test]
fn column_supports_follow_residues() {
    let mut rng = rng_for(105, 0);
    for k in 2..=4 {
        let d = random::kriordan(&mut rng, k, 14);
        let m = d.to_matrix(14).unwrap();
        for j in 0..=14 {
            let col = Series::new(m.column(j));
            assert!(col.support_is(k, j % k), "k={k} column {j}");
        }
    }
}

#[test]
fn equal_multipliers_give_checkerboard_matrix() {
    let mut rng = rng_for(106, 0);
    for _ in 0..5 {
        let r = random::checkerboard(&mut rng, 12);
        let d = morphisms::psi_checkerboard(&r).unwrap();
        assert_eq!(d.to_matrix(12).unwrap(), r.to_matrix(12).unwrap());
    }
}

#[test]
fn psi_of_checkerboard_pascal() {
    let n = 10;
    let g = Series::geometric(n).aerate(2).unwrap();
    let f = g.shift_up(1).retruncate(n).unwrap();
    let r = RiordanArray::new(g, f).unwrap();
    let d = morphisms::psi_checkerboard(&r).unwrap();
    let m = d.to_matrix(n).unwrap();
    for row in 0..=n {
        for col in 0..=row {
            if (row + col) % 2 == 1 {
                assert_eq!(m.get(row, col), int(0));
            }
        }
    }
    assert_eq!(m, r.to_matrix(n).unwrap());
}

#[test]
fn root_free_and_root_based_agree() {
    let mut rng = rng_for(107, 0);
    for k in 1..=4 {
        for _ in 0..5 {
            let a = random::monic_kriordan(&mut rng, k, 12);
            let b = random::kriordan(&mut rng, k, 12);
            assert_eq!(roots::multiply(&a, &b).unwrap(), a.multiply(&b).unwrap());
            assert_eq!(roots::inverse(&a).unwrap(), a.inverse().unwrap());
            for r in 0..k {
                let v = random::series_on_residue(&mut rng, k, r, 12);
                assert_eq!(roots::apply(&a, &v).unwrap(), a.apply(&v).unwrap());
            }
        }
    }
}

#[test]
fn subgroup_closure_for_almost_appell() {
    let mut rng = rng_for(108, 0);
    for k in 2..=3 {
        for i in 1..=k {
            for _ in 0..5 {
                let a = random::almost_appell(&mut rng, k, i, 12);
                let b = random::almost_appell(&mut rng, k, i, 12);
                assert!(is_type_almost_appell(&a.multiply(&b).unwrap(), i));
                assert!(is_type_almost_appell(&a.inverse().unwrap(), i));
            }
        }
    }
}

#[test]
fn phi_image_is_the_type_one_subgroup() {
    let mut rng = rng_for(109, 0);
    let n = 12;
    for _ in 0..5 {
        let r = random::riordan(&mut rng, n);
        assert!(is_type_almost_appell(&morphisms::phi(&r).unwrap(), 1));

        let d = random::almost_appell(&mut rng, 2, 1, n);
        let pre = morphisms::phi_k_preimage(&d, 2).unwrap();
        assert_eq!(morphisms::phi_k_to(&pre, 2, 2, n).unwrap(), d);
    }
}

#[test]
fn chi_after_phi_is_phi_three() {
    let mut rng = rng_for(110, 0);
    let n = 12;
    for _ in 0..5 {
        let r = random::riordan(&mut rng, n);
        let via_chi = morphisms::chi(&morphisms::phi(&r).unwrap()).unwrap();
        let direct = morphisms::phi_k(&r, 3, 3).unwrap();
        assert_eq!(via_chi.to_matrix(n).unwrap(), direct.to_matrix(n).unwrap());
        assert_eq!(via_chi.appell_positions(), vec![1, 2]);
    }
}

#[test]
fn every_map_verifies() {
    for id in MorphismId::all(3) {
        let report = morphisms::verify_homomorphism(id, 6, 10, 5);
        assert!(report.verified(), "{id}: {:?}", report.failures);
    }
}

#[test]
fn identity_matrix_of_all_arities() {
    for k in 1..=5 {
        assert_eq!(
            KRiordanArray::identity(k, 7).to_matrix(7).unwrap(),
            TriangularMatrix::identity(8)
        );
    }
}
