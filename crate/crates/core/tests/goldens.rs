mod common;

use common::{big, window};
use num_bigint::BigInt;

use wmf::dissection::{dissect, expand_cos, halve, reduce_mod_pow2, to_qseries, KolbergExpr, Parity};
use wmf::level1::{
    a_coefficient, canonical_basis, delta, delta_k, e_weight, eisenstein, euler_phi, j_invariant, sigma, tau_k,
    WeightProfile, SIX_WEIGHTS,
};
use wmf::level2::{alpha, decompose_in_basis, level2_dim, mu_exponent, mu_sign, phi, psi, s4, s6, t4, t6, table1_basis};
use wmf::operators::{
    check_form_hecke_identity, check_hecke_relation, check_hecke_squared_relation, check_thm41_identity,
    check_thm42_identity, hecke_t,
};
use wmf::{two_adic_valuation, QSeries, Valuation};

fn e(s: &str) -> KolbergExpr {
    s.parse().unwrap()
}

mod series {
    use super::*;

    #[test]
    fn small_identities() {
        let a = QSeries::from_i64s(&[1, 1], 6);
        let b = QSeries::from_i64s(&[1, -1], 6);
        assert_eq!(&a + &b, QSeries::from_i64s(&[2], 6));
        assert_eq!(&a * &b, QSeries::from_i64s(&[1, 0, -1], 6));
        let qi = QSeries::monomial(big(1), -1, 5);
        let q = QSeries::monomial(big(1), 1, 7);
        assert_eq!(&qi * &q, QSeries::one(6));
        assert_eq!(b.invert().unwrap(), QSeries::from_i64s(&[1; 6], 6));
        assert_eq!(a.pow(2).unwrap(), QSeries::from_i64s(&[1, 2, 1], 6));
        assert_eq!(QSeries::from_i64s(&[1, 0, 3], 5).coeff(2).unwrap(), big(3));
        assert_eq!(qi.coeff(-5).unwrap(), big(0));
    }

    #[test]
    fn operators_on_monomials() {
        let f = QSeries::from_i64s(&[0, 1, 1], 3);
        assert_eq!(f.v_op(2), QSeries::from_i64s(&[0, 0, 1, 0, 1], 6));
        assert_eq!(QSeries::one(4).v_op(7), QSeries::one(28));
        let g = &QSeries::monomial(big(1), -1, 10) + &QSeries::monomial(big(3), 2, 10);
        assert_eq!(g.u_op(2), QSeries::monomial(big(3), 1, 5));
        let h = eisenstein(4, 40).unwrap();
        let even = h.u_op(2).v_op(2);
        for n in 0..40 {
            let want = if n % 2 == 0 { h.coeff(n).unwrap() } else { big(0) };
            assert_eq!(even.coeff(n).unwrap(), want);
        }
    }

    #[test]
    fn partitions_and_delta() {
        let inv = euler_phi(30).invert().unwrap();
        for n in 0..30 {
            assert_eq!(inv.coeff(n).unwrap(), big(common::partitions(n as u64) as i64));
        }
        let d = delta(40);
        let di = d.invert().unwrap();
        assert_eq!(di.valuation(), -1);
        assert_eq!(di.coeff(0).unwrap(), big(24));
        assert!((&d * &di).truncate(di.precision() - 1) == QSeries::one(di.precision() - 1));
        let d2 = d.pow(-2).unwrap();
        assert_eq!(d2.valuation(), -2);
        assert_eq!(&d2 * &d.pow(2).unwrap(), QSeries::one(d2.precision() + 2));
        assert_eq!(d.u_op(2).coeff(1).unwrap(), big(-24));
    }

    #[test]
    fn valuations() {
        assert_eq!(two_adic_valuation(&big(48)), Valuation::Finite(4));
        assert_eq!(two_adic_valuation(&big(0)), Valuation::Infinite);
        assert_eq!(two_adic_valuation(&big(-24)), Valuation::Finite(3));
    }
}

mod level_one {
    use super::*;

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(3, 1), big(1));
        assert_eq!(sigma(3, 2), big(9));
        assert_eq!(sigma(5, 6), big(8052));
        for n in 1..40 {
            assert_eq!(sigma(7, n), common::sigma(7, n));
        }
    }

    #[test]
    fn eisenstein_against_reference() {
        let p = 50;
        for w in [4, 6] {
            assert_eq!(window(&eisenstein(w, p).unwrap(), 0, p as usize), common::eisenstein(w, p as usize));
        }
        let e4 = eisenstein(4, p).unwrap();
        let e6 = eisenstein(6, p).unwrap();
        assert!(e4.congruent_mod_pow2(&QSeries::one(p), 4));
        assert!(e6.congruent_mod_pow2(&QSeries::one(p), 3));
    }

    #[test]
    fn delta_three_ways() {
        let p = 60;
        let d = delta(p);
        let reference = common::delta_over_q(p as usize - 1);
        assert_eq!(window(&d, 1, p as usize - 1), reference);
        assert_eq!(d.coeff(2).unwrap(), big(-24));
        let e4 = eisenstein(4, p).unwrap();
        let e6 = eisenstein(6, p).unwrap();
        let diff = &e4.pow(3).unwrap() - &e6.pow(2).unwrap();
        assert_eq!(diff.div_exact(&big(1728)).unwrap(), d);
    }

    #[test]
    fn j_against_reference() {
        let p = 40;
        let j = j_invariant(p);
        assert_eq!(j.coeff(-1).unwrap(), big(1));
        assert_eq!(j.coeff(0).unwrap(), big(744));
        assert!(two_adic_valuation(&j.coeff(2).unwrap()).at_least(11));
        let n = (p + 1) as usize;
        let e4 = common::eisenstein(4, n);
        let num = common::mul(&common::mul(&e4, &e4, n), &e4, n);
        let reference = common::div(&num, &common::delta_over_q(n), n);
        assert_eq!(window(&j, -1, n), reference);
    }

    #[test]
    fn e_weight_and_delta_k() {
        assert_eq!(e_weight(0, 10).unwrap(), QSeries::one(10));
        assert_eq!(e_weight(8, 30).unwrap(), eisenstein(4, 30).unwrap().pow(2).unwrap());
        assert_eq!(e_weight(14, 10).unwrap().coeff(1).unwrap(), big(-24));
        for k in SIX_WEIGHTS {
            let f = canonical_basis(k, -1, 40).unwrap();
            assert_eq!(delta_k(k, 40).unwrap(), f, "weight {k}");
            assert_eq!(tau_k(k, 1).unwrap(), big(1));
        }
        for n in 1..30 {
            assert_eq!(tau_k(12, n).unwrap(), delta(30).coeff(n).unwrap());
        }
    }

    #[test]
    fn small_canonical_forms() {
        let p = 30;
        assert_eq!(canonical_basis(12, -1, p).unwrap(), delta(p));
        let e4 = eisenstein(4, p).unwrap();
        let f120 = &e4.pow(3).unwrap() - &delta(p).scale_i64(720);
        assert_eq!(canonical_basis(12, 0, p).unwrap(), f120);
        let j = j_invariant(p);
        assert_eq!(canonical_basis(0, 1, p).unwrap(), &j - &QSeries::one(p).scale_i64(744));
        assert_eq!(a_coefficient(12, -5, 10).unwrap(), big(0));
        // The leading term sits below the gap and is not a coefficient.
        assert_eq!(a_coefficient(12, -1, 1).unwrap(), big(0));
        for n in 2..20 {
            assert_eq!(a_coefficient(12, -1, n).unwrap(), tau_k(12, n).unwrap());
        }
    }

    #[test]
    fn gap_property() {
        for k in [12, 16, -10, -24, 0, 2, 4, 14, 26] {
            let ell = wmf::level1::WeightDecomposition::new(k).unwrap().ell;
            for m in -ell..=12 {
                let f = canonical_basis(k, m, 20).unwrap();
                assert_eq!(f.valuation(), -m);
                assert_eq!(f.coeff(-m).unwrap(), big(1));
                for e in (-m + 1)..=ell {
                    assert_eq!(f.coeff(e).unwrap(), big(0), "k={k} m={m} e={e}");
                }
            }
        }
    }

    #[test]
    fn profiles() {
        let p = WeightProfile::new(22).unwrap();
        assert_eq!((p.gamma, p.rho, p.chi, p.nu, p.eta, p.omega), (5, 7, 7, 16, 12, 3));
        assert_eq!(p.xi, 4);
        for p in WeightProfile::all() {
            // The τ bound needs 2^{k-1} to dominate twice γ.
            assert!(p.k - 1 > 2 * p.gamma as i64);
        }
    }
}

mod level_two {
    use super::*;

    #[test]
    fn eisenstein_combinations() {
        let p = 20;
        assert_eq!(s4(p).unwrap().coeff(1).unwrap(), big(1));
        assert_eq!(s4(p).unwrap().valuation(), 1);
        assert_eq!(s6(p).unwrap().coeff(1).unwrap(), big(1));
        assert_eq!(t4(p).unwrap().coeff(0).unwrap(), big(1));
        assert_eq!(t6(p).unwrap().coeff(0).unwrap(), big(1));
    }

    #[test]
    fn phi_and_psi() {
        let f = phi(30);
        assert_eq!(f.valuation(), 1);
        assert_eq!(f.coeff(1).unwrap(), big(1));
        assert_eq!(f.coeff(2).unwrap(), big(24));
        let prod = &f * &psi(30);
        assert_eq!(prod, QSeries::one(prod.precision()));
        let d = delta(30);
        let fd = &f * &d;
        assert_eq!(fd.truncate(30), delta(15).v_op(2));
    }

    #[test]
    fn alpha_quotients() {
        let p = 30;
        let a = alpha(-10, p).unwrap();
        let q = &t6(p).unwrap() * &t4(p).unwrap().pow(-4).unwrap();
        assert_eq!(a, q);
        assert_eq!(a.coeff(0).unwrap(), big(1));
        assert!(alpha(-16, 60).unwrap().congruent_mod_pow2(&QSeries::one(60), 6));
        assert_eq!((mu_exponent(-12), mu_sign(-12)), (12, 1));
        assert_eq!((mu_exponent(-10), mu_sign(-10)), (13, -1));
    }

    #[test]
    fn table_bases() {
        assert_eq!(level2_dim(12), 4);
        assert_eq!(level2_dim(26), 7);
        assert_eq!(level2_dim(4), 2);
        for k in SIX_WEIGHTS {
            let b = table1_basis(k, 20).unwrap();
            assert_eq!(b.len(), level2_dim(k));
            for (i, x) in b.iter().enumerate() {
                assert_eq!(x.series.valuation(), i as i64);
                assert_eq!(x.series.coeff(i as i64).unwrap(), big(1));
            }
        }
        let p = 20;
        let b: Vec<_> = table1_basis(12, p).unwrap().into_iter().map(|x| x.series).collect();
        let e4_2z = eisenstein(4, p / 2).unwrap().pow(3).unwrap().v_op(2).truncate(p);
        assert_eq!(b[0], e4_2z);
        assert_eq!(b[1], delta(p));
        assert_eq!(b[3], s4(p).unwrap().pow(3).unwrap().truncate(p));
    }

    #[test]
    fn weight_twelve_decomposition() {
        let p = 20;
        let b: Vec<_> = table1_basis(12, p).unwrap().into_iter().map(|x| x.series).collect();
        let c = decompose_in_basis(&canonical_basis(12, 0, p).unwrap(), &b).unwrap();
        assert_eq!(c, vec![big(1), big(0), big(256 * 765), big(4096 * 4095)]);
        let c = decompose_in_basis(&delta(p), &b).unwrap();
        assert_eq!(c, vec![big(0), big(1), big(0), big(0)]);
    }

    #[test]
    fn u4_expansion() {
        let f = canonical_basis(-10, 2, 164).unwrap().u_op(4);
        assert_eq!(f.precision(), 41);
        let a = alpha(-10, 41).unwrap();
        let ph = phi(41);
        let basis: Vec<_> = (0..14).map(|i| &ph.pow(i).unwrap() * &a).collect();
        let c = decompose_in_basis(&f, &basis).unwrap();
        let want: Vec<BigInt> = common::U4_EXPANSION
            .iter()
            .map(|&(e, odd)| -(BigInt::from(odd) << e))
            .collect();
        assert_eq!(c, want);
        assert_eq!(c[0], big(-16 * 12285));
    }
}

mod operators {
    use super::*;

    #[test]
    fn hecke_on_forms() {
        let d = delta(60);
        assert_eq!(hecke_t(&d, 2, 12).unwrap(), d.scale_i64(-24).truncate(30));
        for m in 1..6 {
            assert!(check_form_hecke_identity(12, m, 2, 20).unwrap());
            assert!(check_form_hecke_identity(18, m, 2, 20).unwrap());
        }
    }

    #[test]
    fn coefficient_relations() {
        assert!(check_hecke_relation(12, 1, 1, 2).unwrap());
        assert!(check_hecke_relation(12, 3, 2, 2).unwrap());
        assert!(check_hecke_squared_relation(16, 1, 1, 2).unwrap());
        assert!(check_hecke_squared_relation(12, 2, 4, 2).unwrap());
        assert!(check_hecke_squared_relation(26, 1, 3, 2).unwrap());
        assert!(check_hecke_relation(12, 3, 5, 3).unwrap());
    }

    #[test]
    fn identities() {
        let one = QSeries::one(60);
        for f in [delta(60), one, canonical_basis(12, 2, 60).unwrap()] {
            let k = if f == QSeries::one(60) { 0 } else { 12 };
            assert!(check_thm41_identity(&f, 2, k).unwrap());
            assert!(check_thm42_identity(&f, 2, k).unwrap());
        }
    }
}

mod dissection {
    use super::*;

    #[test]
    fn phi_rewrites() {
        let d = e("q*phi1^24");
        assert_eq!(to_qseries(&d, 50), delta(50));
        let even = dissect(&d, Parity::Even).unwrap();
        let odd = dissect(&d, Parity::Odd).unwrap();
        assert_eq!(to_qseries(&(&even + &odd), 50), delta(50));
    }

    #[test]
    fn q16() {
        assert_eq!(expand_cos(2), e("R^8*S^-4"));
        assert_eq!(dissect(&e("Q^2"), Parity::Even).unwrap(), e("R^3*S^3*T^-2"));
        let odd = dissect(&e("Q^16"), Parity::Odd).unwrap();
        assert_eq!(odd, e("16*q*R^20 + 512*q^3*R^28*S^8"));
        assert_eq!(reduce_mod_pow2(&odd, 9), e("16*q*R^20"));
        let even = dissect(&e("Q^16"), Parity::Even).unwrap();
        assert_eq!(even, e("R^8 + 128*q^2*R^16*S^8 + 2048*q^4*R^24*S^16"));
        assert!(dissect(&e("7"), Parity::Odd).unwrap().is_zero());
    }

    #[test]
    fn reductions_and_halving() {
        let x = e("4096*q*R^3 + 3288*S^2");
        assert_eq!(reduce_mod_pow2(&x, 12), e("3288*S^2"));
        let once = reduce_mod_pow2(&e("-5*q + 77*R"), 4);
        assert_eq!(reduce_mod_pow2(&once, 4), once);
        assert!(reduce_mod_pow2(&e("-24*R"), 3).is_zero());
        assert_eq!(halve(&e("q^2*R^8")).unwrap(), e("q*Q^8"));
        assert_eq!(halve(&e("phi4^28*S")).unwrap(), e("phi2^28*R"));
        assert!(halve(&e("q*R")).is_err());
    }

    #[test]
    fn generator_expansions() {
        assert_eq!(to_qseries(&e("Q"), 4), QSeries::from_i64s(&[1, 1, 1, 2], 4));
        let q16 = e("Q^16");
        let whole = &dissect(&q16, Parity::Even).unwrap() + &dissect(&q16, Parity::Odd).unwrap();
        assert_eq!(to_qseries(&whole, 80), to_qseries(&q16, 80));
    }
}
