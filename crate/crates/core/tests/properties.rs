use std::sync::{Arc, OnceLock};

use morava::groupring::RingElt;
use morava::quotients::{QuotientGroup, Variant};
use morava::{EndoElt, Fgl, GElt, WittApprox};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn witt(n: u32) -> impl Strategy<Value = WittApprox> {
    (any::<u64>(), any::<u64>()).prop_map(move |(a, b)| WittApprox::new(a, b, n))
}

fn fgl() -> impl Strategy<Value = Fgl> {
    prop_oneof![Just(Fgl::Honda), Just(Fgl::Elliptic)]
}

fn unit(f: Fgl, n: u32) -> impl Strategy<Value = EndoElt> {
    (witt(n), witt(n)).prop_filter("unit", |(a, _)| a.is_unit()).prop_map(move |(a, b)| EndoElt::new(a, b, f).unwrap())
}

/// Units congruent to 1 mod xi.
fn f_half(f: Fgl, n: u32) -> impl Strategy<Value = EndoElt> {
    (witt(n), witt(n)).prop_map(move |(a, b)| {
        let a = WittApprox::one(n) + a.scale(2);
        EndoElt::new(a, b, f).unwrap()
    })
}

fn gelt(f: Fgl, n: u32) -> impl Strategy<Value = GElt> {
    (unit(f, n), 0u8..2).prop_map(|(u, e)| GElt::new(u, e).unwrap())
}

/// x (sigma x sigma^-1)^-1 has determinant 1.
fn norm_one(f: Fgl, n: u32) -> impl Strategy<Value = GElt> {
    gelt(f, n).prop_map(move |x| {
        let s = GElt::named("sigma", f, n).unwrap();
        x * s.conj(&x).unwrap().inv()
    })
}

fn pg2_m4() -> Arc<QuotientGroup> {
    static Q: OnceLock<Arc<QuotientGroup>> = OnceLock::new();
    Q.get_or_init(|| Arc::new(QuotientGroup::build(4, Variant::PG2, Fgl::Honda).unwrap())).clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn frobenius_is_a_ring_map(n in 3u32..=64, x in any::<(u64, u64)>(), y in any::<(u64, u64)>()) {
        let x = WittApprox::new(x.0, x.1, n);
        let y = WittApprox::new(y.0, y.1, n);
        prop_assert_eq!((x * y).frobenius(), x.frobenius() * y.frobenius());
        prop_assert_eq!((x + y).frobenius(), x.frobenius() + y.frobenius());
        prop_assert_eq!(x.frobenius().frobenius(), x);
    }

    #[test]
    fn norm_has_no_zeta_part(n in 3u32..=64, x in any::<(u64, u64)>()) {
        let x = WittApprox::new(x.0, x.1, n);
        prop_assert_eq!((x * x.frobenius()).a1(), 0);
    }

    #[test]
    fn constants_are_coherent(n in 4u32..=64, d in 1u32..=60) {
        let low = n.saturating_sub(d).max(3);
        for name in morava::witt::CONSTANT_NAMES {
            let hi = WittApprox::constant(name, n).unwrap();
            prop_assert_eq!(hi.reduce(low).unwrap(), WittApprox::constant(name, low).unwrap());
        }
    }

    #[test]
    fn det_is_rational(f in fgl(), x in (witt(32), witt(32))) {
        let x = EndoElt::new(x.0, x.1, f).unwrap();
        prop_assert_eq!(x.det_witt().a1(), 0);
    }

    #[test]
    fn filtration_is_a_group_filtration(f in fgl(), x in f_half(Fgl::Honda, 24), y in f_half(Fgl::Honda, 24)) {
        let x = EndoElt::new(x.a(), x.b(), f).unwrap();
        let y = EndoElt::new(y.a(), y.b(), f).unwrap();
        let (lx, ly, lxy) = (x.filtration_level().unwrap(), y.filtration_level().unwrap(), (x * y).filtration_level().unwrap());
        if !lxy.lower_bound {
            prop_assert!(lxy.level >= lx.level.min(ly.level));
        }
    }

    #[test]
    fn iso_he_keeps_level_and_det(x in f_half(Fgl::Elliptic, 24)) {
        let y = x.iso_he().unwrap();
        prop_assert_eq!(y.det(), x.det());
        let (lx, ly) = (x.filtration_level().unwrap(), y.filtration_level().unwrap());
        if !lx.lower_bound && !ly.lower_bound {
            prop_assert_eq!(lx.level, ly.level);
        }
    }

    #[test]
    fn iso_he_is_multiplicative(x in unit(Fgl::Elliptic, 8), y in unit(Fgl::Elliptic, 8)) {
        prop_assert_eq!((x * y).iso_he().unwrap(), x.iso_he().unwrap() * y.iso_he().unwrap());
    }

    #[test]
    fn group_laws((x, y, z) in fgl().prop_flat_map(|f| (gelt(f, 8), gelt(f, 8), gelt(f, 8)))) {
        prop_assert_eq!((x * y) * z, x * (y * z));
        prop_assert!((x * x.inv()).is_identity());
        prop_assert!((x.inv() * x).is_identity());
        prop_assert_eq!((x * y).flag(), x.flag() ^ y.flag());
    }

    #[test]
    fn norm_one_is_a_subgroup((x, y) in fgl().prop_flat_map(|f| (norm_one(f, 12), norm_one(f, 12)))) {
        prop_assert!(x.is_norm_one() && y.is_norm_one());
        prop_assert!((x * y).is_norm_one());
        prop_assert!(x.inv().is_norm_one());
    }

    #[test]
    fn sigma_conjugation_is_an_involution(x in fgl().prop_flat_map(|f| gelt(f, 16))) {
        let s = GElt::named("sigma", x.fgl(), 16).unwrap();
        prop_assert_eq!(s.conj(&s.conj(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn quotient_table_is_a_group(a in 0u32..768, b in 0u32..768, c in 0u32..768) {
        let q = pg2_m4();
        let n = q.len() as u32;
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(q.mul(q.mul(a, b), c), q.mul(a, q.mul(b, c)));
        prop_assert_eq!(q.mul(a, q.inv(a)), q.identity());
        prop_assert_eq!(q.mul(q.identity(), a), a);
    }

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let q = pg2_m4();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = RingElt::random(&q, 3, 4, &mut rng);
        let y = RingElt::random(&q, 3, 4, &mut rng);
        let z = RingElt::random(&q, 3, 4, &mut rng);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
    }

    #[test]
    fn tr_sigma_properties(seed in any::<u64>()) {
        let q = pg2_m4();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = RingElt::random(&q, 4, 6, &mut rng);
        let t = x.tr_sigma().unwrap();
        prop_assert_eq!(t.sigma().unwrap(), t.clone());
        prop_assert_eq!(t.tr_sigma().unwrap(), t.clone());
        let z = WittApprox::zeta(4);
        let expect = (x.scale(&z) + x.sigma().unwrap().scale(&z.frobenius())).neg();
        prop_assert_eq!(t, expect);
    }

    #[test]
    fn left_multiples_of_the_augmentation_kernel(seed in any::<u64>()) {
        let q = pg2_m4();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = RingElt::random(&q, 4, 6, &mut rng);
        let y = RingElt::random(&q, 4, 6, &mut rng);
        let k = &y - &RingElt::scalar(&q, y.augment());
        prop_assert!(k.augment().is_zero());
        prop_assert!((&x * &k).augment().is_zero());
    }
}

#[test]
fn frobenius_exhaustive_mod_8() {
    let all: Vec<WittApprox> = (0..64).map(|v| WittApprox::new(v & 7, v >> 3, 3)).collect();
    for x in &all {
        for y in &all {
            assert_eq!((*x * *y).frobenius(), x.frobenius() * y.frobenius());
            assert_eq!((*x + *y).frobenius(), x.frobenius() + y.frobenius());
        }
    }
}

#[test]
fn constant_identities_at_every_precision() {
    for n in 3..=64 {
        let a = WittApprox::alpha(n);
        let p = WittApprox::pi(n);
        assert_eq!(a * a.frobenius(), WittApprox::from_int(-1, n));
        assert_eq!(p * p.frobenius(), WittApprox::from_int(3, n));
        assert_eq!(p * p, WittApprox::from_int(-3, n));
    }
}

#[test]
fn quaternion_table_at_every_precision() {
    for f in Fgl::ALL {
        for n in 3..=64 {
            let g = |s: &str| GElt::named(s, f, n).unwrap();
            let (m1, i, j, k, w) = (g("-1"), g("i"), g("j"), g("k"), g("omega"));
            assert!(i * i == m1 && j * j == m1 && k * k == m1);
            assert!(i * j == k && j * k == i && k * i == j && j * i == k.neg());
            assert!((w * w * w).is_identity() && !w.is_identity());
            assert!(w.conj(&i).unwrap() == j && w.conj(&j).unwrap() == k && w.conj(&k).unwrap() == i);
        }
    }
}
