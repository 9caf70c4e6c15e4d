//! Exhaustive isomorphism-class enumeration for supported odd orders.
//!
//! Squarefree orders are covered by metacyclic presentations C_m ⋊ C_k
//! (every group of squarefree order has one); p²q orders by split
//! extensions over a normal Sylow subgroup; p² and p³ by their classical
//! class lists. Everything else falls back to the FAMILY tier: abelian
//! classes plus the named families of that order.
//!
//! Candidates stream through a deduper that compares element-order
//! statistics first (which fully classify abelian groups) and falls back
//! to the backtracking isomorphism test for non-abelian matches.
//! Presentations that only differ by regenerating the complement
//! (r ↦ r^s with s coprime to the complement order, or a conjugate/power
//! of the acting matrix) are provably isomorphic and are skipped before
//! building; the surviving candidates are still deduplicated by the full
//! isomorphism test.

use std::collections::{BTreeMap, BTreeSet};

use super::{
    build, descriptor_order_vector, validate_extremal_a1_params, validate_extremal_a2_params,
    validate_t9_params, CatalogError, GroupDescriptor, NamedFamily,
};
use crate::arith::{self, Factorization};
use crate::bounds;
use crate::groups::{is_isomorphic, FiniteGroup};

/// Order cap for exhaustive enumeration.
pub const MAX_ENUM_ORDER: u64 = 4000;

/// Completeness of an enumeration: EXHAUSTIVE results carry exactly one
/// representative per isomorphism class; FAMILY results only list the
/// constructible families of that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Tier {
    Exhaustive,
    Family,
}

impl std::fmt::Display for Tier {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tier::Exhaustive => write!(out, "EXHAUSTIVE"),
            Tier::Family => write!(out, "FAMILY"),
        }
    }
}

/// One isomorphism class: the descriptor it was built from and the built
/// group.
pub struct EnumeratedClass {
    pub descriptor: GroupDescriptor,
    pub group: FiniteGroup,
}

impl EnumeratedClass {
    pub fn psi(&self) -> u64 {
        self.group.psi()
    }
}

/// All classes found for one order, with the completeness tier.
pub struct EnumerationResult {
    pub n: u64,
    pub tier: Tier,
    pub classes: Vec<EnumeratedClass>,
}

#[derive(Default)]
struct Deduper {
    classes: Vec<Entry>,
}

struct Entry {
    descriptor: GroupDescriptor,
    group: FiniteGroup,
    counts: BTreeMap<u32, u32>,
    abelian: bool,
}

fn order_counts(orders: &[u32]) -> BTreeMap<u32, u32> {
    let mut counts = BTreeMap::new();
    for &o in orders {
        *counts.entry(o).or_insert(0) += 1;
    }
    counts
}

impl Deduper {
    /// Registers a candidate construction, building it only when the
    /// cheap statistics cannot settle the comparison.
    fn offer(&mut self, descriptor: GroupDescriptor) -> Result<(), CatalogError> {
        let counts = order_counts(&descriptor_order_vector(&descriptor)?);
        let abelian = descriptor.is_abelian_construction();
        let mut candidate: Option<FiniteGroup> = None;
        for entry in &self.classes {
            if entry.counts != counts || entry.abelian != abelian {
                continue;
            }
            if abelian {
                // order statistics classify abelian groups completely
                return Ok(());
            }
            if candidate.is_none() {
                candidate = Some(build(&descriptor)?);
            }
            if is_isomorphic(candidate.as_ref().unwrap(), &entry.group)? {
                return Ok(());
            }
        }
        let group = match candidate {
            Some(g) => g,
            None => build(&descriptor)?,
        };
        debug_assert_eq!(group.is_abelian(), abelian, "{descriptor}");
        self.classes.push(Entry { descriptor, group, counts, abelian });
        Ok(())
    }

    fn into_result(self, n: u64, tier: Tier) -> EnumerationResult {
        let classes = self
            .classes
            .into_iter()
            .map(|e| EnumeratedClass { descriptor: e.descriptor, group: e.group })
            .collect();
        EnumerationResult { n, tier, classes }
    }
}

fn check_enum_order(n: u64) -> Result<Factorization, CatalogError> {
    if n == 0 || n % 2 == 0 || n > MAX_ENUM_ORDER {
        return Err(CatalogError::UnsupportedOrder(n));
    }
    Ok(arith::factorize(n)?)
}

/// The r-orbit of one metacyclic action under regenerating the complement
/// (y ↦ y^s, s coprime to k); only the minimal member is built.
fn is_canonical_action(m: u64, k: u64, r: u64) -> bool {
    let mut s = 1u64;
    while s < k {
        if arith::gcd(s, k) == 1 && arith::pow_mod(r, s, m) < r {
            return false;
        }
        s += 1;
    }
    true
}

/// Every group of odd squarefree order is metacyclic: enumerate all
/// presentations C_m ⋊_r C_k with mk = n and r^k ≡ 1 (mod m), build, and
/// deduplicate into isomorphism classes.
pub fn enumerate_squarefree(n: u64) -> Result<EnumerationResult, CatalogError> {
    let f = check_enum_order(n)?;
    if !f.is_squarefree() {
        return Err(CatalogError::UnsupportedOrder(n));
    }
    let mut dedupe = Deduper::default();
    if n == 1 {
        dedupe.offer(GroupDescriptor::Cyclic(1))?;
        return Ok(dedupe.into_result(n, Tier::Exhaustive));
    }
    for k in f.divisors() {
        if k == n {
            continue; // trivial kernel; the cyclic class arises from k = 1
        }
        let m = n / k;
        for r in 1..m {
            if arith::pow_mod(r, k, m) != 1 {
                continue;
            }
            if k == 1 || r == 1 {
                // trivial action on coprime parts: this is C_n
                dedupe.offer(GroupDescriptor::Cyclic(n))?;
                continue;
            }
            if !is_canonical_action(m, k, r) {
                continue;
            }
            dedupe.offer(GroupDescriptor::SplitCyclic { m, k, r })?;
        }
    }
    Ok(dedupe.into_result(n, Tier::Exhaustive))
}

fn mat_mul(a: [u64; 4], b: [u64; 4], p: u64) -> [u64; 4] {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

fn mat_pow(m: [u64; 4], mut e: u64, p: u64) -> [u64; 4] {
    let mut acc = [1, 0, 0, 1];
    let mut base = m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(acc, base, p);
        }
        base = mat_mul(base, base, p);
        e >>= 1;
    }
    acc
}

/// Every group of order p²q (p, q odd) splits over a normal Sylow
/// subgroup: enumerate {C_{p²}, C_p×C_p} ⋊ C_q over all automorphisms of
/// order dividing q, and C_q ⋊ A with A acting through Aut(C_q), then
/// deduplicate.
pub fn enumerate_p2q(p: u64, q: u64) -> Result<EnumerationResult, CatalogError> {
    if p == q || p < 3 || q < 3 || !arith::is_prime(p) || !arith::is_prime(q) {
        return Err(CatalogError::UnsupportedOrder(p * p * q));
    }
    let n = p * p * q;
    check_enum_order(n)?;
    let mut dedupe = Deduper::default();
    dedupe.offer(GroupDescriptor::Cyclic(n))?;
    dedupe.offer(GroupDescriptor::product(vec![
        GroupDescriptor::Cyclic(p),
        GroupDescriptor::Cyclic(p),
        GroupDescriptor::Cyclic(q),
    ]))?;

    // C_{p²} ⋊ C_q
    let p2 = p * p;
    for r in 1..p2 {
        if arith::pow_mod(r, q, p2) == 1 && (r == 1 || is_canonical_action(p2, q, r)) {
            if r == 1 {
                continue; // direct product, already offered as C_n
            }
            dedupe.offer(GroupDescriptor::SplitCyclic { m: p2, k: q, r })?;
        }
    }

    // (C_p × C_p) ⋊ C_q, over matrices M ∈ GL(2,p) with M^q = I.
    // Conjugate matrices and powers M^s (s coprime to q) give isomorphic
    // extensions; M^q = I with q prime forces M semisimple, so the
    // (trace, det) pair identifies the conjugacy class and one
    // representative per power-orbit of that pair suffices.
    let mut seen_keys: BTreeSet<(u64, u64)> = BTreeSet::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = [a, b, c, d];
                    let det = (a * d % p + p - b * c % p) % p;
                    if det == 0 {
                        continue;
                    }
                    if mat_pow(m, q, p) != [1, 0, 0, 1] {
                        continue;
                    }
                    if m == [1, 0, 0, 1] {
                        continue; // direct product, already offered
                    }
                    let own_key = ((a + d) % p, det);
                    let mut canonical = own_key;
                    for s in 2..q {
                        let ms = mat_pow(m, s, p);
                        let key = ((ms[0] + ms[3]) % p, (ms[0] * ms[3] % p + p - ms[1] * ms[2] % p) % p);
                        canonical = canonical.min(key);
                    }
                    if own_key != canonical || !seen_keys.insert(canonical) {
                        continue;
                    }
                    dedupe.offer(GroupDescriptor::SplitAbelian {
                        invariants: vec![p, p],
                        k: q,
                        images: vec![vec![a, b], vec![c, d]],
                    })?;
                }
            }
        }
    }

    // C_q ⋊ C_{p²}
    for r in 2..q {
        if arith::pow_mod(r, p2, q) == 1 && is_canonical_action(q, p2, r) {
            dedupe.offer(GroupDescriptor::SplitCyclic { m: q, k: p2, r })?;
        }
    }

    // C_q ⋊ (C_p × C_p): any nontrivial homomorphism to Aut(C_q) has a
    // C_p kernel acting trivially, so the extension is (C_q ⋊ C_p) × C_p.
    if (q - 1) % p == 0 {
        for s in 2..q {
            if arith::pow_mod(s, p, q) == 1 {
                dedupe.offer(GroupDescriptor::product(vec![
                    GroupDescriptor::SplitCyclic { m: q, k: p, r: s },
                    GroupDescriptor::Cyclic(p),
                ]))?;
            }
        }
    }

    Ok(dedupe.into_result(n, Tier::Exhaustive))
}

fn partitions(total: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, cap: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        let top = remaining.min(cap);
        for next in (1..=top).rev() {
            current.push(next);
            rec(remaining - next, next, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

/// All abelian groups of order n, one descriptor per class, the cyclic
/// class first.
pub fn abelian_classes(n: u64) -> Result<Vec<GroupDescriptor>, CatalogError> {
    let f = arith::factorize(n)?;
    if n == 1 {
        return Ok(vec![GroupDescriptor::Cyclic(1)]);
    }
    let per_prime: Vec<(u64, Vec<Vec<u32>>)> =
        f.factors().iter().map(|&(p, a)| (p, partitions(a))).collect();
    let mut combos: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, parts) in &per_prime {
        let mut next = Vec::new();
        for combo in &combos {
            for partition in parts {
                let mut extended = combo.clone();
                for &e in partition {
                    extended.push(p.pow(e));
                }
                next.push(extended);
            }
        }
        combos = next;
    }
    let mut out = Vec::new();
    for factors in combos {
        if factors.len() == per_prime.len() {
            // one factor per prime: the cyclic class
            out.push(GroupDescriptor::Cyclic(n));
        } else {
            let mut sorted = factors;
            sorted.sort_unstable();
            out.push(GroupDescriptor::product(
                sorted.into_iter().map(GroupDescriptor::Cyclic).collect(),
            ));
        }
    }
    Ok(out)
}

/// Named-family descriptors whose declared order is n and whose
/// parameters are valid.
pub fn named_families_of_order(n: u64) -> Vec<GroupDescriptor> {
    let mut out = Vec::new();
    if n % 21 == 0 && validate_extremal_a1_params(n / 21) {
        out.push(GroupDescriptor::Named(NamedFamily::ExtremalA1 { m1: n / 21 }));
    }
    if let Ok(f) = arith::factorize(n) {
        for &(q, _) in f.factors() {
            if q < 3 {
                continue;
            }
            let p = bounds::smallest_prime_greater(q);
            if let Some(rest) = n.checked_div(q * p * p) {
                if rest >= 1 && q * p * p * rest == n && validate_extremal_a2_params(q, rest) {
                    out.push(GroupDescriptor::Named(NamedFamily::ExtremalA2 { q, m1: rest }));
                }
            }
        }
        for &(q, a) in f.factors() {
            if a >= 2 && q >= 3 {
                let k = n / (q * q);
                if validate_t9_params(q, k) {
                    out.push(GroupDescriptor::Named(NamedFamily::T9 { q, k }));
                }
            }
        }
    }
    out
}

/// Dispatches to the exhaustive enumerator for supported shapes
/// (squarefree, p²q, p², p³) and otherwise returns the FAMILY tier:
/// abelian classes plus valid named families.
pub fn enumerate_supported(n: u64) -> Result<EnumerationResult, CatalogError> {
    let f = check_enum_order(n)?;
    if f.is_squarefree() {
        return enumerate_squarefree(n);
    }
    let factors = f.factors();
    if factors.len() == 1 && factors[0].1 == 2 {
        let p = factors[0].0;
        let mut dedupe = Deduper::default();
        dedupe.offer(GroupDescriptor::Cyclic(n))?;
        dedupe.offer(GroupDescriptor::product(vec![
            GroupDescriptor::Cyclic(p),
            GroupDescriptor::Cyclic(p),
        ]))?;
        return Ok(dedupe.into_result(n, Tier::Exhaustive));
    }
    if factors.len() == 1 && factors[0].1 == 3 {
        let p = factors[0].0;
        let mut dedupe = Deduper::default();
        dedupe.offer(GroupDescriptor::Cyclic(n))?;
        dedupe.offer(GroupDescriptor::product(vec![
            GroupDescriptor::Cyclic(p),
            GroupDescriptor::Cyclic(p * p),
        ]))?;
        dedupe.offer(GroupDescriptor::product(vec![
            GroupDescriptor::Cyclic(p),
            GroupDescriptor::Cyclic(p),
            GroupDescriptor::Cyclic(p),
        ]))?;
        dedupe.offer(GroupDescriptor::Named(NamedFamily::Modular { q: p }))?;
        // the extraspecial group of exponent p
        dedupe.offer(GroupDescriptor::SplitAbelian {
            invariants: vec![p, p],
            k: p,
            images: vec![vec![1, 1], vec![0, 1]],
        })?;
        return Ok(dedupe.into_result(n, Tier::Exhaustive));
    }
    if factors.len() == 2 {
        let shapes = [(factors[0], factors[1]), (factors[1], factors[0])];
        for ((p, ap), (q, aq)) in shapes {
            if ap == 2 && aq == 1 {
                return enumerate_p2q(p, q);
            }
        }
    }
    // FAMILY fallback
    let mut dedupe = Deduper::default();
    for descriptor in abelian_classes(n)? {
        dedupe.offer(descriptor)?;
    }
    for descriptor in named_families_of_order(n) {
        dedupe.offer(descriptor)?;
    }
    Ok(dedupe.into_result(n, Tier::Family))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn descriptors(result: &EnumerationResult) -> Vec<String> {
        result.classes.iter().map(|c| c.descriptor.to_string()).collect()
    }

    #[test]
    fn squarefree_examples() {
        let r15 = enumerate_squarefree(15).unwrap();
        assert_eq!(r15.tier, Tier::Exhaustive);
        assert_eq!(descriptors(&r15), vec!["C15"]);

        let r21 = enumerate_squarefree(21).unwrap();
        assert_eq!(descriptors(&r21), vec!["C21", "C7:C3@2"]);
        assert_eq!(r21.classes[0].psi(), 301);
        assert_eq!(r21.classes[1].psi(), 85);

        let r105 = enumerate_squarefree(105).unwrap();
        assert_eq!(r105.classes.len(), 2);
        assert_eq!(r105.classes[0].psi(), 301 * 21);

        assert!(enumerate_squarefree(9).is_err());
        assert!(enumerate_squarefree(10).is_err());
    }

    #[test]
    fn squarefree_richer_orders() {
        // 3·7·13: trivial, two partial actions, and two distinct diagonal
        // actions of C_3 on C_91
        let r273 = enumerate_squarefree(273).unwrap();
        assert_eq!(r273.classes.len(), 5);
        let cyclic_count = r273.classes.iter().filter(|c| c.group.is_cyclic()).count();
        assert_eq!(cyclic_count, 1);
        // the cyclic class has the strict maximum ψ
        let max_psi = r273.classes.iter().map(|c| c.psi()).max().unwrap();
        assert!(r273
            .classes
            .iter()
            .all(|c| c.group.is_cyclic() || c.psi() < max_psi));
    }

    #[test]
    fn p2q_examples() {
        let r245 = enumerate_p2q(7, 5).unwrap();
        assert_eq!(r245.classes.len(), 2);
        assert!(r245.classes.iter().all(|c| c.group.is_abelian()));

        let r45 = enumerate_p2q(3, 5).unwrap();
        assert_eq!(r45.classes.len(), 2);
        assert!(r45.classes.iter().all(|c| c.group.is_abelian()));

        let r63 = enumerate_p2q(3, 7).unwrap();
        assert_eq!(r63.classes.len(), 4);
        let nonabelian = r63.classes.iter().filter(|c| !c.group.is_abelian()).count();
        assert_eq!(nonabelian, 2);

        // order 75: one nonabelian class from the irreducible GL(2,5) action
        let r75 = enumerate_p2q(5, 3).unwrap();
        assert_eq!(r75.classes.len(), 3);

        // order 147: two abelian, C_49⋊C_3, and three matrix actions
        let r147 = enumerate_p2q(7, 3).unwrap();
        assert_eq!(r147.classes.len(), 6);

        // order 363: only the irreducible action survives
        let r363 = enumerate_p2q(11, 3).unwrap();
        assert_eq!(r363.classes.len(), 3);
    }

    #[test]
    fn supported_dispatch() {
        assert_eq!(enumerate_supported(21).unwrap().tier, Tier::Exhaustive);
        assert_eq!(enumerate_supported(9).unwrap().classes.len(), 2);
        let r27 = enumerate_supported(27).unwrap();
        assert_eq!(r27.tier, Tier::Exhaustive);
        assert_eq!(r27.classes.len(), 5);
        let r1 = enumerate_supported(1).unwrap();
        assert_eq!(r1.classes.len(), 1);
        assert!(enumerate_supported(2).is_err());
        assert!(enumerate_supported(4001).is_err());

        // 3^2·5^2 is not a supported shape: FAMILY tier
        let r225 = enumerate_supported(225).unwrap();
        assert_eq!(r225.tier, Tier::Family);
        assert_eq!(r225.classes.len(), 4); // the four abelian classes
    }

    #[test]
    fn exhaustive_classes_pairwise_noniso() {
        for n in [21u64, 27, 45, 63, 75, 105, 147, 273] {
            let result = enumerate_supported(n).unwrap();
            assert_eq!(result.tier, Tier::Exhaustive);
            for i in 0..result.classes.len() {
                for j in (i + 1)..result.classes.len() {
                    assert!(
                        !is_isomorphic(&result.classes[i].group, &result.classes[j].group)
                            .unwrap(),
                        "classes {i} and {j} of order {n} coincide"
                    );
                }
            }
        }
    }

    #[test]
    fn family_orders_list_named_families() {
        // 525 = 3·5²·7 = 21·25, a valid extremal order outside the
        // exhaustive shapes
        let r = enumerate_supported(525).unwrap();
        assert_eq!(r.tier, Tier::Family);
        assert!(r
            .classes
            .iter()
            .any(|c| matches!(c.descriptor, GroupDescriptor::Named(NamedFamily::ExtremalA1 { m1: 25 }))));
    }

    #[test]
    fn abelian_class_counts() {
        assert_eq!(abelian_classes(9).unwrap().len(), 2);
        assert_eq!(abelian_classes(27).unwrap().len(), 3);
        assert_eq!(abelian_classes(81).unwrap().len(), 5);
        assert_eq!(abelian_classes(45).unwrap().len(), 2);
        assert_eq!(abelian_classes(1).unwrap().len(), 1);
    }

    #[test]
    fn canonical_action_orbits() {
        // r = 2 and r = 4 are the same class of C_7 ⋊ C_3; only r = 2 is
        // canonical
        assert!(is_canonical_action(7, 3, 2));
        assert!(!is_canonical_action(7, 3, 4));
    }
}
