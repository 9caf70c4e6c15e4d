//! Property tests over randomly sampled constructions: structural
//! soundness of built groups, agreement between arithmetic order vectors
//! and table walks, descriptor round-trips, and the split-extension ψ
//! formula against direct enumeration.

use std::sync::OnceLock;

use proptest::prelude::*;

use ordersum::arith;
use ordersum::catalog::{self, GroupDescriptor, NamedFamily};
use ordersum::groups::{self, psi_semidirect_formula};

/// Valid (m, k, r) split-cyclic parameter triples with mk ≤ 400.
fn split_pool() -> &'static Vec<(u64, u64, u64)> {
    static POOL: OnceLock<Vec<(u64, u64, u64)>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut pool = Vec::new();
        for m in 2..=100u64 {
            for k in 1..=40u64 {
                if m * k > 400 {
                    continue;
                }
                for r in 1..m {
                    if arith::pow_mod(r, k, m) == 1 {
                        pool.push((m, k, r));
                    }
                }
            }
        }
        pool
    })
}

fn descriptor_strategy() -> impl Strategy<Value = GroupDescriptor> {
    let cyclic = (1u64..=80).prop_map(GroupDescriptor::Cyclic);
    let split = (0..split_pool().len()).prop_map(|i| {
        let (m, k, r) = split_pool()[i];
        GroupDescriptor::SplitCyclic { m, k, r }
    });
    let product = ((1u64..=12), (1u64..=12), (1u64..=6)).prop_map(|(a, b, c)| {
        GroupDescriptor::product(vec![
            GroupDescriptor::Cyclic(a),
            GroupDescriptor::Cyclic(b),
            GroupDescriptor::Cyclic(c),
        ])
    });
    let named = prop_oneof![
        Just(GroupDescriptor::Named(NamedFamily::S3)),
        Just(GroupDescriptor::Named(NamedFamily::Q8)),
        (2u64..=13)
            .prop_filter("odd l", |l| l % 2 == 1)
            .prop_map(|l| GroupDescriptor::Named(NamedFamily::Dihedral { l })),
        (1u32..=4).prop_map(|alpha| GroupDescriptor::Named(NamedFamily::G1 { alpha })),
        (1u64..=15).prop_map(|m1| GroupDescriptor::Named(NamedFamily::ExtremalA1 { m1 })),
        (1u64..=4).prop_map(|k| GroupDescriptor::Named(NamedFamily::T9 { q: 3, k })),
        Just(GroupDescriptor::Named(NamedFamily::Modular { q: 3 })),
        Just(GroupDescriptor::Named(NamedFamily::Modular { q: 5 })),
    ];
    prop_oneof![cyclic, split, product, named]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn built_groups_are_sound(descriptor in descriptor_strategy()) {
        let group = catalog::build(&descriptor).unwrap();
        prop_assert_eq!(group.order() as u64, descriptor.declared_order());
        group.verify_structure().unwrap();
        // table walks and the arithmetic fast path agree
        prop_assert_eq!(group.psi(), catalog::descriptor_psi(&descriptor).unwrap());
        let mut walked: Vec<u32> = group.orders().to_vec();
        let mut fast = catalog::descriptor_order_vector(&descriptor).unwrap();
        walked.sort_unstable();
        fast.sort_unstable();
        prop_assert_eq!(walked, fast);
    }

    #[test]
    fn descriptor_strings_round_trip(descriptor in descriptor_strategy()) {
        let text = descriptor.to_string();
        let reparsed: GroupDescriptor = text.parse().unwrap();
        prop_assert_eq!(&reparsed, &descriptor);
        prop_assert_eq!(reparsed.to_string(), text);
    }

    #[test]
    fn split_psi_formula_matches_enumeration(i in 0..usize::MAX) {
        let pool = split_pool();
        let (m, k, r) = pool[i % pool.len()];
        prop_assume!(m >= 2 && k >= 1);
        let group = groups::semidirect_cyclic(m, k, r).unwrap();
        // Z = the complement elements commuting with the kernel generator,
        // read off the built group itself
        let mu = m as usize;
        let z: Vec<usize> = (0..k as usize)
            .map(|j| j * mu)
            .filter(|&f| group.mul(f, 1) == group.mul(1, f))
            .map(|f| f / mu)
            .collect();
        let p = groups::cyclic(m).unwrap();
        let f = groups::cyclic(k).unwrap();
        let z_subset = f.subset_from(z.iter().copied());
        // the formula applies to prime-power kernels with coprime complements
        prop_assume!(arith::factorize(m).unwrap().factors().len() == 1);
        prop_assume!(arith::gcd(m, k) == 1);
        let formula = psi_semidirect_formula(&p, &f, &z_subset).unwrap();
        prop_assert_eq!(formula, group.psi());
    }

    #[test]
    fn normal_sylow_bound(i in 0..usize::MAX) {
        // ψ(G) ≤ ψ(P)ψ(G/P) for the cyclic normal kernel, equality iff
        // the action is trivial
        let pool = split_pool();
        let (m, k, r) = pool[i % pool.len()];
        prop_assume!(arith::gcd(m, k) == 1);
        let group = groups::semidirect_cyclic(m, k, r).unwrap();
        let product_psi = groups::cyclic(m).unwrap().psi() * groups::cyclic(k).unwrap().psi();
        prop_assert!(group.psi() <= product_psi);
        prop_assert_eq!(group.psi() == product_psi, r == 1);
    }

    #[test]
    fn exhaustive_enumerations_have_unique_cyclic_maximum(n in 1u64..=120) {
        prop_assume!(n % 2 == 1);
        let result = catalog::enumerate_supported(n).unwrap();
        prop_assume!(result.tier == catalog::Tier::Exhaustive);
        let cyclic_count = result.classes.iter().filter(|c| c.group.is_cyclic()).count();
        prop_assert_eq!(cyclic_count, 1);
        let max = result.classes.iter().map(|c| c.psi()).max().unwrap();
        for class in &result.classes {
            if class.group.is_cyclic() {
                prop_assert_eq!(class.psi(), max);
            } else {
                prop_assert!(class.psi() < max);
            }
        }
    }
}

#[test]
fn f_matches_group_ratio_up_to_97() {
    // f(p) = ψ(C_p × C_p)/ψ(C_{p²}), computed independently by the
    // group engine
    for p in arith::primes_up_to(97) {
        let cp = groups::cyclic(p).unwrap();
        let cpxcp = groups::direct_product(&cp, &cp).unwrap();
        let expected = arith::psi_ratio(cpxcp.psi(), p * p).unwrap();
        assert_eq!(ordersum::bounds::f_int(p).unwrap(), expected, "f({p})");
    }
}

#[test]
fn g_matches_semidirect_ratio() {
    // g_q(p) = ψ(C_p ⋊ C_q)/ψ(C_{pq}) for p ≡ 1 (mod q), pq ≤ 5000,
    // with a faithful action
    let mut checked = 0;
    for q in [3u64, 5, 7, 11, 13] {
        for p in arith::primes_up_to(5000 / q) {
            if p <= q || p % q != 1 {
                continue;
            }
            // find an action of exact order q
            let r = (2..p)
                .find(|&r| {
                    arith::pow_mod(r, q, p) == 1 && r != 1
                })
                .expect("q divides p-1, an order-q residue exists");
            let group = groups::semidirect_cyclic(p, q, r).unwrap();
            assert!(group.order() as u64 <= 20_000);
            let ratio = arith::psi_ratio(group.psi(), p * q).unwrap();
            assert_eq!(ordersum::bounds::g_int(q, p).unwrap(), ratio, "g_{q}({p})");
            checked += 1;
        }
    }
    assert!(checked > 40, "expected a rich family, checked {checked}");
}

#[test]
fn fixed_point_free_dichotomy_over_pool() {
    for &(m, k, r) in split_pool() {
        if !arith::is_prime(m) || r == 1 || arith::gcd(m, k) != 1 {
            continue;
        }
        let group = groups::semidirect_cyclic(m, k, r).unwrap();
        let mu = m as usize;
        for j in 1..k as usize {
            let f_elt = j * mu;
            let fi = group.inv(f_elt);
            let fixed = (1..mu).filter(|&i| group.mul(group.mul(f_elt, i), fi) == i).count();
            if fixed + 1 == mu {
                continue; // centralizes the kernel
            }
            // fixed-point-free: only the identity of P stays put
            assert_eq!(fixed, 0, "partial fixing in C{m}:C{k}@{r} at j={j}");
            // the induced automorphism has order dividing p − 1, and a
            // non-centralizing element of prime order divides p − 1 itself
            let action = arith::pow_mod(r, j as u64, m);
            let action_order = (1..m)
                .find(|&e| arith::pow_mod(action, e, m) == 1)
                .expect("action of finite order");
            assert_eq!((m - 1) % action_order, 0);
            let elt_order = group.elem_order(f_elt);
            if arith::is_prime(elt_order) {
                assert_eq!((m - 1) % elt_order, 0, "prime-order fpf element in C{m}:C{k}@{r}");
            }
        }
    }
}
