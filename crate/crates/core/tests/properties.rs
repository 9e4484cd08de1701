use isocyclic::codes::{isometry_apply_word, CodeDescriptor, Codeword, CyclicCode};
use isocyclic::gf::{Elem, Field, RootOfUnity};
use isocyclic::oracle;
use isocyclic::poly::Poly;
use isocyclic::splitting::{build_splitting, enumerate_splittings, exists_splitting, splitting_given_by};
use isocyclic::zn::{self, CosetPartition, QPermutation};
use proptest::prelude::*;

const ORDERS: [u64; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 13];

fn field_and_elems() -> impl Strategy<Value = (Field, Vec<u32>)> {
    prop::sample::select(&[2u64, 3, 4, 5, 8, 9, 25, 27, 49][..])
        .prop_flat_map(|q| (Just(Field::of_order(q).unwrap()), prop::collection::vec(0..q as u32, 3)))
}

fn coprime_pair(max_n: u64) -> impl Strategy<Value = (u64, u64)> {
    (prop::sample::select(&ORDERS[..]), 1..=max_n).prop_filter("coprime", |&(q, n)| zn::gcd(q, n) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, v) in field_and_elems()) {
        let (a, b, c) = (Elem(v[0]), Elem(v[1]), Elem(v[2]));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        if let Some(inv) = f.inv(a) {
            prop_assert_eq!(f.mul(a, inv), Elem::ONE);
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!(f.pow(a, f.order()), a);
    }

    #[test]
    fn division_identity(
        q in prop::sample::select(&[2u64, 3, 5, 9][..]),
        a in prop::collection::vec(0u32..9, 0..10),
        b in prop::collection::vec(0u32..9, 1..6),
    ) {
        let f = Field::of_order(q).unwrap();
        let lift = |v: &[u32]| Poly::new(&f, v.iter().map(|&x| Elem(x % q as u32)).collect());
        let (a, b) = (lift(&a), lift(&b));
        prop_assume!(!b.is_zero());
        let (quot, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(quot.mul(&b).unwrap().add(&rem).unwrap(), a);
        prop_assert!(rem.degree() < b.degree());
    }

    #[test]
    fn qperm_group_laws((q, n) in coprime_pair(40), i in 0u64..40, a in 0usize..64, b in 0usize..64) {
        let perms = zn::q_permutations(q, n);
        let (r1, r2) = (perms[a % perms.len()], perms[b % perms.len()]);
        let i = i % n;
        prop_assert_eq!(r2.compose(&r1).unwrap().apply(i), r2.apply(r1.apply(i)));
        prop_assert_eq!(r1.inverse().apply(r1.apply(i)), i);
        // rho commutes with mu_q, so cosets go to cosets
        let cp = CosetPartition::new(q, n).unwrap();
        let id = cp.coset_of(i);
        prop_assert!(cp.is_invariant(&r1.apply_set(cp.coset(id))));
    }

    #[test]
    fn given_by_matches_orbit_parity((q, n) in coprime_pair(40), a in 0usize..256) {
        let perms = zn::q_permutations(q, n);
        let rho = perms[a % perms.len()];
        let report = oracle::oracle_orbit_parity(&rho).unwrap();
        prop_assert!(report.passed(), "{}", report.to_json_line());
    }

    #[test]
    fn enumerated_splittings_are_valid((q, n) in coprime_pair(30)) {
        let e = exists_splitting(q, n).unwrap();
        prop_assert_eq!(e.exists(), build_splitting(q, n, None).is_ok());
        let Some(w) = e.witness else { return Ok(()) };
        let rho = QPermutation::translation(w.t as i64, n, q).unwrap();
        prop_assert!(splitting_given_by(&rho));
        let iter = enumerate_splittings(q, n, rho).unwrap();
        let total = iter.total();
        let all: Vec<_> = iter.collect();
        prop_assert_eq!(all.len() as u128, total.min(isocyclic::splitting::DEFAULT_ENUMERATION_CAP as u128));
        prop_assert_eq!(&all[0], &build_splitting(q, n, None).unwrap());
        prop_assert!(all.iter().all(|s| s.is_valid()));
        if n <= 24 {
            prop_assert_eq!(oracle::brute_force_splittings(q, n, 1, w.t).unwrap() as u128, total);
        }
    }

    #[test]
    fn isometry_preserves_weight_and_maps_codes(
        (q, n) in coprime_pair(16),
        a in 0usize..64,
        mask in any::<u16>(),
        msg in prop::collection::vec(0u32..13, 16),
    ) {
        let Ok(root) = RootOfUnity::new(&Field::of_order(q).unwrap(), n, None) else { return Ok(()) };
        let cp = CosetPartition::new(q, n).unwrap();
        let ids: Vec<usize> = (0..cp.len()).filter(|&i| mask >> (i % 16) & 1 == 1).collect();
        let code = CyclicCode::from_support(&cp.union(&ids), &root).unwrap();
        let m: Vec<Elem> = msg[..code.dimension()].iter().map(|&x| Elem(x % q as u32)).collect();
        let word = code.encode(&m).unwrap();
        let perms = zn::q_permutations(q, n);
        let rho = perms[a % perms.len()];
        let image = isometry_apply_word(&word, rho.s() as i64, rho.t() as i64, &root).unwrap();
        prop_assert_eq!(image.weight(), word.weight());
        let target = code.isometry_image(rho.s() as i64, rho.t() as i64).unwrap();
        prop_assert!(target.contains(&image));
        let expected = rho.apply_set(code.support());
        prop_assert_eq!(target.support(), expected.as_slice());
    }

    #[test]
    fn descriptors_round_trip((q, n) in coprime_pair(24)) {
        let Ok(s) = build_splitting(q, n, None) else { return Ok(()) };
        let Ok(root) = RootOfUnity::new(&Field::of_order(q).unwrap(), n, None) else { return Ok(()) };
        let code = CyclicCode::from_support(&s.support, &root).unwrap();
        let cert = code.certify_iso_self_dual().unwrap().expect("splittings certify");
        prop_assert!(cert.validate(&code));
        let desc = CodeDescriptor::new(&code, Some(&cert));
        let back = CodeDescriptor::from_json(&desc.to_json()).unwrap();
        prop_assert_eq!(&back, &desc);
        prop_assert_eq!(back.rebuild().unwrap(), code);
    }
}

#[test]
fn dual_oracle_agrees_on_every_code_up_to_12() {
    for q in ORDERS {
        for n in (1..=12u64).filter(|&n| zn::gcd(q, n) == 1) {
            let Ok(root) = RootOfUnity::new(&Field::of_order(q).unwrap(), n, None) else { continue };
            let cp = CosetPartition::new(q, n).unwrap();
            for mask in 0u32..1 << cp.len().min(10) {
                let ids: Vec<usize> = (0..cp.len()).filter(|&i| mask >> i & 1 == 1).collect();
                let code = CyclicCode::from_support(&cp.union(&ids), &root).unwrap();
                let r = oracle::oracle_dual_basis(&code).unwrap();
                assert!(r.passed(), "{}", r.to_json_line());
                assert_eq!(code.dual().dual(), code);
            }
        }
    }
}

#[test]
fn certified_codes_are_formally_self_dual() {
    let mut seen = 0;
    for q in [3u64, 5, 7, 9, 11, 13] {
        for n in (2..=14u64).step_by(2).filter(|&n| zn::gcd(q, n) == 1) {
            let Ok(s) = build_splitting(q, n, None) else { continue };
            if (q as u128).pow(n as u32 / 2) > 1 << 16 {
                continue;
            }
            let root = RootOfUnity::new(&Field::of_order(q).unwrap(), n, None).unwrap();
            let code = CyclicCode::from_support(&s.support, &root).unwrap();
            let r = oracle::oracle_weight_equality(&code, 1 << 16).unwrap();
            assert!(r.passed(), "{}", r.to_json_line());
            seen += 1;
        }
    }
    assert!(seen >= 10, "only {seen} instances");
}

#[test]
fn zero_word_is_fixed() {
    let root = RootOfUnity::new(&Field::new(5, 1).unwrap(), 8, None).unwrap();
    let zero = Codeword(vec![Elem::ZERO; 8]);
    assert_eq!(isometry_apply_word(&zero, 3, 2, &root).unwrap(), zero);
}
