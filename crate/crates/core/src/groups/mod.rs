//! Concrete finite-group engine.
//!
//! A [`FiniteGroup`] is an element-indexed group: index 0 is the identity,
//! multiplication is either an explicit n×n table or an implicit
//! arithmetic rule (cyclic and direct products of cyclics stay implicit,
//! which keeps large abelian groups cheap), and every element's order is
//! computed once at construction and cached. ψ(G), subset sums,
//! centralizers, Sylow subgroups, and structural predicates all work off
//! this representation.

mod iso;
mod perm;

pub use iso::is_isomorphic;
pub use perm::{cycle_notation_domain, from_permutations, parse_cycle_notation, Permutation};

use std::cmp::Reverse;

use thiserror::Error;

use crate::arith;

/// Construction cap for implicit representations.
pub const MAX_ORDER: u64 = 1_000_000;
/// Construction cap for explicit multiplication tables.
pub const MAX_TABLE_ORDER: u64 = 20_000;
/// Cap for the isomorphism backtracking search.
pub const MAX_ISO_ORDER: u64 = 4_096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order {order} exceeds cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
    #[error("order must be positive")]
    ZeroOrder,
    #[error("bad semidirect parameters: need 1 ≤ r < m, got m={m} k={k} r={r}")]
    BadSemidirectParams { m: u64, k: u64, r: u64 },
    #[error("action violates r^k ≡ 1 (mod m): m={m} k={k} r={r}")]
    CongruenceViolation { m: u64, k: u64, r: u64 },
    #[error("invariant factor list must be a divisibility chain of integers ≥ 2")]
    BadInvariantFactors,
    #[error("automorphism images have the wrong shape")]
    BadAutomorphismShape,
    #[error("images do not define an automorphism")]
    NotAnAutomorphism,
    #[error("automorphism order does not divide {k}")]
    AutomorphismOrder { k: u64 },
    #[error("generators are not permutations of a common domain")]
    BadPermutation,
    #[error("cycle notation parse error: {0}")]
    CycleParse(String),
    #[error("subset is not a subgroup")]
    NotASubgroup,
    #[error("subset belongs to a different group")]
    ForeignSubset,
    #[error("{p} does not divide the group order {n}")]
    PrimeDoesNotDivide { p: u64, n: u64 },
    #[error("expected a cyclic group")]
    NotCyclic,
    #[error("structure check failed: {0}")]
    StructureCheck(String),
}

enum Repr {
    /// Z_n under addition; element i has order n / gcd(i, n).
    Cyclic,
    /// Direct product of cyclic groups, mixed-radix indexed (first factor
    /// varies fastest).
    DirectCyclic { moduli: Vec<u32> },
    /// Explicit row-major multiplication table.
    Table { mul: Vec<u16>, inv: Vec<u16> },
}

/// A concrete finite group with cached element orders.
pub struct FiniteGroup {
    n: usize,
    repr: Repr,
    elem_order: Vec<u32>,
    label: String,
    gens: Vec<u32>,
    abelian: bool,
    cyclic: bool,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    /// Product of elements i·j.
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.repr {
            Repr::Cyclic => {
                let n = self.n;
                let s = i + j;
                if s >= n {
                    s - n
                } else {
                    s
                }
            }
            Repr::DirectCyclic { moduli } => {
                let mut out = 0usize;
                let mut stride = 1usize;
                let (mut a, mut b) = (i, j);
                for &m in moduli {
                    let m = m as usize;
                    let s = a % m + b % m;
                    out += if s >= m { s - m } else { s } * stride;
                    a /= m;
                    b /= m;
                    stride *= m;
                }
                out
            }
            Repr::Table { mul, .. } => mul[i * self.n + j] as usize,
        }
    }

    /// Inverse of element i.
    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        match &self.repr {
            Repr::Cyclic => {
                if i == 0 {
                    0
                } else {
                    self.n - i
                }
            }
            Repr::DirectCyclic { moduli } => {
                let mut out = 0usize;
                let mut stride = 1usize;
                let mut a = i;
                for &m in moduli {
                    let m = m as usize;
                    let c = a % m;
                    out += if c == 0 { 0 } else { m - c } * stride;
                    a /= m;
                    stride *= m;
                }
                out
            }
            Repr::Table { inv, .. } => inv[i] as usize,
        }
    }

    pub fn elem_order(&self, i: usize) -> u64 {
        self.elem_order[i] as u64
    }

    pub fn orders(&self) -> &[u32] {
        &self.elem_order
    }

    /// ψ(G): the sum of the orders of all elements.
    pub fn psi(&self) -> u64 {
        self.elem_order.iter().map(|&o| o as u64).sum()
    }

    /// True iff some element has order |G|.
    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// A small generating set, greedily chosen by descending element order.
    pub fn generating_set(&self) -> &[u32] {
        &self.gens
    }

    /// Element power by repeated multiplication (e ≥ 0).
    pub fn pow(&self, i: usize, e: u64) -> usize {
        let mut acc = 0usize;
        let mut base = i;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn subset_empty(&self) -> SubsetHandle<'_> {
        SubsetHandle { group: self, bits: Bitset::new(self.n) }
    }

    pub fn subset_all(&self) -> SubsetHandle<'_> {
        let mut bits = Bitset::new(self.n);
        for i in 0..self.n {
            bits.insert(i);
        }
        SubsetHandle { group: self, bits }
    }

    pub fn subset_from(&self, indices: impl IntoIterator<Item = usize>) -> SubsetHandle<'_> {
        let mut bits = Bitset::new(self.n);
        for i in indices {
            assert!(i < self.n, "element index out of range");
            bits.insert(i);
        }
        SubsetHandle { group: self, bits }
    }

    /// Subgroup generated by `gens`, as a bitset, via breadth-first closure.
    fn closure_bits(&self, gens: &[usize]) -> Bitset {
        let mut bits = Bitset::new(self.n);
        bits.insert(0);
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !bits.contains(y) {
                    bits.insert(y);
                    queue.push(y);
                }
            }
        }
        bits
    }

    /// Subgroup generated by a set of elements.
    pub fn generated_subgroup(&self, gens: &[usize]) -> SubsetHandle<'_> {
        SubsetHandle { group: self, bits: self.closure_bits(gens) }
    }

    /// Elements commuting with every member of `s`. Always contains the
    /// identity and is a subgroup.
    pub fn centralizer(&self, s: &SubsetHandle<'_>) -> SubsetHandle<'_> {
        assert!(std::ptr::eq(s.group, self), "subset belongs to a different group");
        let members: Vec<usize> = s.indices().collect();
        let mut bits = Bitset::new(self.n);
        'outer: for z in 0..self.n {
            for &x in &members {
                if self.mul(z, x) != self.mul(x, z) {
                    continue 'outer;
                }
            }
            bits.insert(z);
        }
        SubsetHandle { group: self, bits }
    }

    /// A Sylow p-subgroup: grows a p-subgroup by adjoining normalizing
    /// p-elements until the full p-part of |G| is reached.
    pub fn sylow(&self, p: u64) -> Result<SubsetHandle<'_>, GroupError> {
        let n = self.n as u64;
        if p == 0 || !arith::is_prime(p) || n % p != 0 {
            return Err(GroupError::PrimeDoesNotDivide { p, n });
        }
        let mut target = 1u64;
        let mut rest = n;
        while rest % p == 0 {
            target *= p;
            rest /= p;
        }
        let p_elements: Vec<usize> = (0..self.n)
            .filter(|&i| {
                let mut o = self.elem_order[i] as u64;
                while o % p == 0 {
                    o /= p;
                }
                o == 1
            })
            .collect();
        let mut subgroup = vec![0usize];
        let mut bits = Bitset::new(self.n);
        bits.insert(0);
        while (subgroup.len() as u64) < target {
            let mut extended = false;
            'candidates: for &x in &p_elements {
                if bits.contains(x) {
                    continue;
                }
                // x must normalize the current subgroup
                let xi = self.inv(x);
                for &h in &subgroup {
                    if !bits.contains(self.mul(self.mul(x, h), xi)) {
                        continue 'candidates;
                    }
                }
                let mut gens: Vec<usize> = subgroup.iter().copied().filter(|&g| g != 0).collect();
                gens.push(x);
                let closed = self.closure_bits(&gens);
                let size = closed.count() as u64;
                if size <= target && target % size == 0 {
                    bits = closed;
                    subgroup = bits.iter();
                    extended = true;
                    break;
                }
            }
            if !extended {
                return Err(GroupError::StructureCheck(format!(
                    "sylow {p}-subgroup search stalled at size {}",
                    subgroup.len()
                )));
            }
        }
        Ok(SubsetHandle { group: self, bits })
    }

    /// Whether `s` is a normal subgroup; rejects subsets that are not
    /// subgroups.
    pub fn is_normal(&self, s: &SubsetHandle<'_>) -> Result<bool, GroupError> {
        if !std::ptr::eq(s.group, self) {
            return Err(GroupError::ForeignSubset);
        }
        if !s.is_subgroup() {
            return Err(GroupError::NotASubgroup);
        }
        let members: Vec<usize> = s.indices().collect();
        for g in 0..self.n {
            let gi = self.inv(g);
            for &x in &members {
                if !s.bits.contains(self.mul(self.mul(g, x), gi)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Structural self-check: identity laws, Latin-square property,
    /// inverses, Lagrange on cached orders, and associativity (exhaustive
    /// for |G| ≤ 256, on at least 10·n² pseudorandom triples otherwise).
    pub fn verify_structure(&self) -> Result<(), GroupError> {
        let n = self.n;
        let fail = |msg: String| Err(GroupError::StructureCheck(msg));
        for i in 0..n {
            if self.mul(0, i) != i || self.mul(i, 0) != i {
                return fail(format!("identity law fails at {i}"));
            }
            if self.mul(i, self.inv(i)) != 0 || self.mul(self.inv(i), i) != 0 {
                return fail(format!("inverse law fails at {i}"));
            }
            let o = self.elem_order[i] as u64;
            if o == 0 || n as u64 % o != 0 {
                return fail(format!("cached order {o} of {i} does not divide {n}"));
            }
            if (o == 1) != (i == 0) {
                return fail(format!("order 1 must characterize the identity, got {i}"));
            }
            if self.pow(i, o) != 0 || (o > 1 && self.pow(i, o - 1) == 0) {
                return fail(format!("cached order of {i} is wrong"));
            }
        }
        // Latin square: every row and column is a permutation
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = self.mul(i, j);
                if seen[v] {
                    return fail(format!("row {i} repeats value {v}"));
                }
                seen[v] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = self.mul(j, i);
                if seen[v] {
                    return fail(format!("column {i} repeats value {v}"));
                }
                seen[v] = true;
            }
        }
        if n <= 256 {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return fail(format!("associativity fails at ({a},{b},{c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = XorShift::new(0x9e37_79b9 ^ (n as u64) << 17 | 1);
            let samples = 10 * (n as u64) * (n as u64);
            for _ in 0..samples {
                let a = (rng.next() % n as u64) as usize;
                let b = (rng.next() % n as u64) as usize;
                let c = (rng.next() % n as u64) as usize;
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return fail(format!("associativity fails at ({a},{b},{c})"));
                }
            }
        }
        Ok(())
    }
}

/// A subset of a group's elements, held as a membership bitset.
pub struct SubsetHandle<'g> {
    group: &'g FiniteGroup,
    bits: Bitset,
}

impl<'g> SubsetHandle<'g> {
    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ref()
    }

    /// ψ(X): the sum of element orders over the members; 0 on the empty
    /// set.
    pub fn psi(&self) -> u64 {
        self.indices().map(|i| self.group.elem_order[i] as u64).sum()
    }

    /// Contains the identity and is closed under products and inverses.
    pub fn is_subgroup(&self) -> bool {
        if !self.bits.contains(0) {
            return false;
        }
        let members: Vec<usize> = self.indices().collect();
        for &a in &members {
            if !self.bits.contains(self.group.inv(a)) {
                return false;
            }
            for &b in &members {
                if !self.bits.contains(self.group.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }
}

/// ψ(G) for a split extension G = P ⋊ F with cyclic P and Z = C_F(P):
/// ψ(P)·ψ(Z) + |P|·(ψ(F) − ψ(Z)). P must be cyclic; Z is taken as a
/// subset of F.
pub fn psi_semidirect_formula(
    p: &FiniteGroup,
    f: &FiniteGroup,
    z: &SubsetHandle<'_>,
) -> Result<u64, GroupError> {
    if !p.is_cyclic() {
        return Err(GroupError::NotCyclic);
    }
    if !std::ptr::eq(z.group(), f) {
        return Err(GroupError::ForeignSubset);
    }
    let psi_z = z.psi();
    Ok(p.psi() * psi_z + p.order() as u64 * (f.psi() - psi_z))
}

/// C_n, the cyclic group of order n. Always held implicitly, so large n
/// (up to the construction cap) are cheap.
pub fn cyclic(n: u64) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::ZeroOrder);
    }
    if n > MAX_ORDER {
        return Err(GroupError::CapExceeded { order: n, cap: MAX_ORDER });
    }
    let size = n as usize;
    let elem_order: Vec<u32> = (0..n).map(|i| (n / arith::gcd(i, n)) as u32).collect();
    let gens = if n > 1 { vec![1u32] } else { vec![] };
    Ok(FiniteGroup {
        n: size,
        repr: Repr::Cyclic,
        elem_order,
        label: format!("C{n}"),
        gens,
        abelian: true,
        cyclic: true,
    })
}

/// A × B. Products of implicit abelian groups stay implicit; anything
/// else gets an explicit table (subject to the table cap).
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let order = a.n as u64 * b.n as u64;
    let label = format!("{}x{}", a.label, b.label);
    let implicit_ab = |g: &FiniteGroup| match &g.repr {
        Repr::Cyclic => Some(vec![g.n as u32]),
        Repr::DirectCyclic { moduli } => Some(moduli.clone()),
        Repr::Table { .. } => None,
    };
    if let (Some(ma), Some(mb)) = (implicit_ab(a), implicit_ab(b)) {
        if order > MAX_ORDER {
            return Err(GroupError::CapExceeded { order, cap: MAX_ORDER });
        }
        let moduli: Vec<u32> = ma.into_iter().chain(mb).filter(|&m| m > 1).collect();
        return Ok(direct_cyclic_from_moduli(moduli, label));
    }
    if order > MAX_TABLE_ORDER {
        return Err(GroupError::CapExceeded { order, cap: MAX_TABLE_ORDER });
    }
    let (na, nb) = (a.n, b.n);
    let n = na * nb;
    let mut mul = vec![0u16; n * n];
    for ia in 0..na {
        for ib in 0..nb {
            let e1 = ia * nb + ib;
            let row = e1 * n;
            for ja in 0..na {
                let pa = a.mul(ia, ja) * nb;
                for jb in 0..nb {
                    mul[row + ja * nb + jb] = (pa + b.mul(ib, jb)) as u16;
                }
            }
        }
    }
    // element orders are componentwise lcms; inverses are componentwise
    let mut elem_order = vec![0u32; n];
    let mut inv = vec![0u16; n];
    for ia in 0..na {
        for ib in 0..nb {
            let e = ia * nb + ib;
            let (oa, ob) = (a.elem_order[ia] as u64, b.elem_order[ib] as u64);
            elem_order[e] = (oa / arith::gcd(oa, ob) * ob) as u32;
            inv[e] = (a.inv(ia) * nb + b.inv(ib)) as u16;
        }
    }
    Ok(assemble_table_group(n, mul, inv, elem_order, label))
}

fn direct_cyclic_from_moduli(moduli: Vec<u32>, label: String) -> FiniteGroup {
    if moduli.is_empty() {
        let mut g = cyclic(1).expect("trivial group");
        g.label = label;
        return g;
    }
    let n: usize = moduli.iter().map(|&m| m as usize).product();
    let mut elem_order = vec![0u32; n];
    for e in 0..n {
        let mut rest = e;
        let mut ord = 1u64;
        for &m in &moduli {
            let m = m as u64;
            let c = (rest % m as usize) as u64;
            let o = m / arith::gcd(c, m);
            ord = ord / arith::gcd(ord, o) * o;
            rest /= m as usize;
        }
        elem_order[e] = ord as u32;
    }
    let mut gens = Vec::new();
    let mut stride = 1usize;
    for &m in &moduli {
        gens.push(stride as u32);
        stride *= m as usize;
    }
    let cyclic_flag = elem_order.iter().any(|&o| o as usize == n);
    FiniteGroup {
        n,
        repr: Repr::DirectCyclic { moduli },
        elem_order,
        label,
        gens,
        abelian: true,
        cyclic: cyclic_flag,
    }
}

/// C_m ⋊ C_k with the complement generator acting by x ↦ x^r:
/// (i1, j1)·(i2, j2) = (i1 + i2·r^{j1} mod m, j1 + j2 mod k).
/// Requires 1 ≤ r < m and r^k ≡ 1 (mod m).
pub fn semidirect_cyclic(m: u64, k: u64, r: u64) -> Result<FiniteGroup, GroupError> {
    if m < 2 || k == 0 || r == 0 || r >= m {
        return Err(GroupError::BadSemidirectParams { m, k, r });
    }
    if arith::pow_mod(r, k, m) != 1 {
        return Err(GroupError::CongruenceViolation { m, k, r });
    }
    let order = m * k;
    if order > MAX_TABLE_ORDER {
        return Err(GroupError::CapExceeded { order, cap: MAX_TABLE_ORDER });
    }
    let (mu, ku) = (m as usize, k as usize);
    let n = mu * ku;
    let mut rpow = vec![0u64; ku];
    rpow[0] = 1 % m;
    for j in 1..ku {
        rpow[j] = rpow[j - 1] * r % m;
    }
    // index (i, j) -> j*m + i; the kernel component walks i1 + i2·r^{j1}
    // incrementally to keep the fill free of divisions
    let mut mul = vec![0u16; n * n];
    for j1 in 0..ku {
        let twist = rpow[j1];
        for i1 in 0..mu {
            let e1 = j1 * mu + i1;
            let row = e1 * n;
            for j2 in 0..ku {
                let base = ((j1 + j2) % ku) * mu;
                let cells = &mut mul[row + j2 * mu..row + (j2 + 1) * mu];
                let mut acc = i1 as u64;
                for cell in cells.iter_mut() {
                    *cell = (base + acc as usize) as u16;
                    acc += twist;
                    if acc >= m {
                        acc -= m;
                    }
                }
            }
        }
    }
    let (elem_order, inv) = orders_from_table(n, &mul);
    Ok(assemble_table_group(n, mul, inv, elem_order, format!("C{m}:C{k}@{r}")))
}

/// Split extension A ⋊ C_k where A is abelian with the given invariant
/// factors (a divisibility chain d_{i+1} | d_i) and the generator of C_k
/// acts by the automorphism sending generator i to Π_j gen_j^{images[i][j]}.
/// The images must define an automorphism of A whose order divides k
/// (checked by composing k times).
pub fn split_extension(
    invariants: &[u64],
    k: u64,
    images: &[Vec<u64>],
) -> Result<FiniteGroup, GroupError> {
    let t = invariants.len();
    if t == 0 || invariants.iter().any(|&d| d < 2) || k == 0 {
        return Err(GroupError::BadInvariantFactors);
    }
    for w in invariants.windows(2) {
        if w[0] % w[1] != 0 {
            return Err(GroupError::BadInvariantFactors);
        }
    }
    if images.len() != t || images.iter().any(|row| row.len() != t) {
        return Err(GroupError::BadAutomorphismShape);
    }
    let a_size: u64 = invariants.iter().product();
    let order = a_size * k;
    if order > MAX_TABLE_ORDER {
        return Err(GroupError::CapExceeded { order, cap: MAX_TABLE_ORDER });
    }
    let moduli: Vec<u64> = invariants.to_vec();
    // Normalize the matrix: entry (i, j) lives mod d_j.
    let mat: Vec<Vec<u64>> = images
        .iter()
        .map(|row| row.iter().zip(&moduli).map(|(&e, &d)| e % d).collect())
        .collect();
    let apply = |mat: &[Vec<u64>], v: &[u64]| -> Vec<u64> {
        (0..t)
            .map(|j| {
                let mut acc = 0u64;
                for i in 0..t {
                    acc = (acc + v[i] * mat[i][j]) % moduli[j];
                }
                acc
            })
            .collect()
    };
    let compose = |a: &[Vec<u64>], b: &[Vec<u64>]| -> Vec<Vec<u64>> {
        // first b, then a
        (0..t).map(|i| apply(a, &b[i])).collect()
    };
    let identity: Vec<Vec<u64>> =
        (0..t).map(|i| (0..t).map(|j| u64::from(i == j) % moduli[j]).collect()).collect();
    // order of the image of each generator must divide the generator order
    for i in 0..t {
        let mut elt_ord = 1u64;
        for j in 0..t {
            let d = moduli[j];
            let o = d / arith::gcd(mat[i][j], d);
            elt_ord = elt_ord / arith::gcd(elt_ord, o) * o;
        }
        if invariants[i] % elt_ord != 0 {
            return Err(GroupError::NotAnAutomorphism);
        }
    }
    // bijectivity on all of A
    let au = a_size as usize;
    let decomp = |mut e: usize| -> Vec<u64> {
        let mut v = Vec::with_capacity(t);
        for &d in &moduli {
            v.push((e % d as usize) as u64);
            e /= d as usize;
        }
        v
    };
    let recomp = |v: &[u64]| -> usize {
        let mut e = 0usize;
        let mut stride = 1usize;
        for (c, &d) in v.iter().zip(&moduli) {
            e += *c as usize * stride;
            stride *= d as usize;
        }
        e
    };
    let mut hit = vec![false; au];
    for e in 0..au {
        let img = recomp(&apply(&mat, &decomp(e)));
        if hit[img] {
            return Err(GroupError::NotAnAutomorphism);
        }
        hit[img] = true;
    }
    // order divides k
    let mut acc = identity.clone();
    for _ in 0..k {
        acc = compose(&acc, &mat);
    }
    if acc != identity {
        return Err(GroupError::AutomorphismOrder { k });
    }
    // precompute the permutation of A induced by each power of the action
    let ku = k as usize;
    let mut perms: Vec<Vec<u32>> = Vec::with_capacity(ku);
    let mut pow_mat = identity;
    for _ in 0..ku {
        perms.push((0..au).map(|e| recomp(&apply(&pow_mat, &decomp(e))) as u32).collect());
        pow_mat = compose(&pow_mat, &mat);
    }
    // index (a, j) -> j*|A| + a
    let n = au * ku;
    let decomps: Vec<Vec<u64>> = (0..au).map(decomp).collect();
    let mut mul = vec![0u16; n * n];
    for j1 in 0..ku {
        let twist = &perms[j1];
        for a1 in 0..au {
            let e1 = j1 * au + a1;
            let row = e1 * n;
            let v1 = &decomps[a1];
            for j2 in 0..ku {
                let base = ((j1 + j2) % ku) * au;
                for a2 in 0..au {
                    let tw = twist[a2] as usize;
                    let v2 = &decomps[tw];
                    let mut sum = Vec::with_capacity(t);
                    for idx in 0..t {
                        let d = moduli[idx];
                        let s = v1[idx] + v2[idx];
                        sum.push(if s >= d { s - d } else { s });
                    }
                    mul[row + j2 * au + a2] = (base + recomp(&sum)) as u16;
                }
            }
        }
    }
    let (elem_order, inv) = orders_from_table(n, &mul);
    let inv_str: Vec<String> = invariants.iter().map(|d| d.to_string()).collect();
    let img_str: Vec<String> = mat
        .iter()
        .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    let label = format!("SA[{}]:C{}@[{}]", inv_str.join(","), k, img_str.join(";"));
    Ok(assemble_table_group(n, mul, inv, elem_order, label))
}

/// Q_8, the quaternion group, from its explicit 8-element table.
pub fn quaternion8() -> FiniteGroup {
    // order: 1, -1, i, -i, j, -j, k, -k
    let axis = |e: usize| e / 2; // 0:1, 1:i, 2:j, 3:k
    let sign = |e: usize| e % 2; // 0:+, 1:-
    // axis multiplication table with result sign (0=+, 1=-)
    const AXIS_MUL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let n = 8usize;
    let mut mul = vec![0u16; n * n];
    for e1 in 0..n {
        for e2 in 0..n {
            let (ax, s) = AXIS_MUL[axis(e1)][axis(e2)];
            let total_sign = (sign(e1) + sign(e2) + s) % 2;
            mul[e1 * n + e2] = (ax * 2 + total_sign) as u16;
        }
    }
    let (elem_order, inv) = orders_from_table(n, &mul);
    assemble_table_group(n, mul, inv, elem_order, "Q8".to_string())
}

/// Computes every element's order by walking the table, capturing the
/// inverse (the last power before the identity) along the way.
pub(crate) fn orders_from_table(n: usize, mul: &[u16]) -> (Vec<u32>, Vec<u16>) {
    let mut elem_order = vec![0u32; n];
    let mut inv = vec![0u16; n];
    for i in 0..n {
        let mut cur = i;
        let mut prev = 0usize;
        let mut ord = 1u32;
        while cur != 0 {
            prev = cur;
            cur = mul[cur * n + i] as usize;
            ord += 1;
        }
        if i == 0 {
            elem_order[0] = 1;
            inv[0] = 0;
        } else {
            elem_order[i] = ord;
            inv[i] = prev as u16;
        }
    }
    (elem_order, inv)
}

pub(crate) fn assemble_table_group(
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    elem_order: Vec<u32>,
    label: String,
) -> FiniteGroup {
    let cyclic_flag = elem_order.iter().any(|&o| o as usize == n);
    let mut group = FiniteGroup {
        n,
        repr: Repr::Table { mul, inv },
        elem_order,
        label,
        gens: Vec::new(),
        abelian: false,
        cyclic: cyclic_flag,
    };
    group.gens = greedy_generating_set(&group).iter().map(|&g| g as u32).collect();
    group.abelian = group
        .gens
        .iter()
        .all(|&g| (0..n).all(|x| group.mul(g as usize, x) == group.mul(x, g as usize)));
    group
}

fn greedy_generating_set(g: &FiniteGroup) -> Vec<usize> {
    let n = g.n;
    if n == 1 {
        return Vec::new();
    }
    let mut by_order: Vec<usize> = (1..n).collect();
    by_order.sort_by_key(|&i| (Reverse(g.elem_order[i]), i));
    let mut gens: Vec<usize> = Vec::new();
    let mut closure = Bitset::new(n);
    closure.insert(0);
    for i in by_order {
        if closure.contains(i) {
            continue;
        }
        gens.push(i);
        closure = g.closure_bits(&gens);
        if closure.count() == n {
            break;
        }
    }
    gens
}

/// Compact fixed-size bitset over element indices.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset { words: vec![0; (len + 63) / 64], len }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> Vec<usize> {
        self.iter_ref().collect()
    }

    pub fn iter_ref(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.contains(i))
    }
}

struct XorShift(u64);

impl XorShift {
    fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }

    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_psi_pins() {
        assert_eq!(cyclic(1).unwrap().psi(), 1);
        assert_eq!(cyclic(4).unwrap().psi(), 11);
        assert_eq!(cyclic(6).unwrap().psi(), 21);
        assert_eq!(cyclic(8).unwrap().psi(), 43);
        assert_eq!(cyclic(9).unwrap().psi(), 61);
        assert_eq!(cyclic(21).unwrap().psi(), 301);
        assert_eq!(cyclic(49).unwrap().psi(), 2101);
        assert!(matches!(cyclic(0), Err(GroupError::ZeroOrder)));
        assert!(matches!(cyclic(MAX_ORDER + 1), Err(GroupError::CapExceeded { .. })));
    }

    #[test]
    fn direct_product_psi_pins() {
        let c2 = cyclic(2).unwrap();
        let c3 = cyclic(3).unwrap();
        let c7 = cyclic(7).unwrap();
        assert_eq!(direct_product(&c2, &c2).unwrap().psi(), 7);
        assert_eq!(direct_product(&c3, &c3).unwrap().psi(), 25);
        assert_eq!(direct_product(&c7, &c7).unwrap().psi(), 337);
        let c5 = cyclic(5).unwrap();
        let c25 = direct_product(&c5, &c5).unwrap();
        assert_eq!(c25.psi(), 121);
        assert!(c25.is_abelian() && !c25.is_cyclic());
    }

    #[test]
    fn semidirect_pins() {
        let g = semidirect_cyclic(7, 3, 2).unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(g.psi(), 85);
        assert!(!g.is_abelian() && !g.is_cyclic());
        g.verify_structure().unwrap();

        let trivial = semidirect_cyclic(7, 3, 1).unwrap();
        assert_eq!(trivial.psi(), 301);
        assert!(trivial.is_cyclic());

        let g55 = semidirect_cyclic(11, 5, 3).unwrap();
        assert_eq!(g55.psi(), 331);
        g55.verify_structure().unwrap();

        assert!(matches!(
            semidirect_cyclic(7, 3, 3),
            Err(GroupError::CongruenceViolation { .. })
        ));
        assert!(matches!(
            semidirect_cyclic(7, 3, 0),
            Err(GroupError::BadSemidirectParams { .. })
        ));
    }

    #[test]
    fn quaternion_pin() {
        let q8 = quaternion8();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.psi(), 27);
        assert!(!q8.is_abelian());
        q8.verify_structure().unwrap();
    }

    #[test]
    fn s3_psi() {
        let s3 = semidirect_cyclic(3, 2, 2).unwrap();
        assert_eq!(s3.psi(), 13);
        s3.verify_structure().unwrap();
    }

    #[test]
    fn split_extension_cases() {
        // trivial action is a direct product: ψ multiplies over coprime parts
        let trivial = split_extension(&[9, 3], 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(trivial.order(), 54);
        let c9xc3 = direct_product(&cyclic(9).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert_eq!(trivial.psi(), c9xc3.psi() * cyclic(2).unwrap().psi());

        // the mixed extension: a fixed, b inverted by an order-2 action
        let mixed = split_extension(&[9, 3], 2, &[vec![1, 0], vec![0, 2]]).unwrap();
        assert_eq!(mixed.order(), 54);
        assert!(mixed.psi() < c9xc3.psi() * cyclic(2).unwrap().psi());
        mixed.verify_structure().unwrap();

        // order-3 matrix over GF(7) on C_7 × C_7
        let m147 = split_extension(&[7, 7], 3, &[vec![2, 0], vec![0, 4]]).unwrap();
        assert_eq!(m147.order(), 147);
        assert!(!m147.is_abelian());

        assert!(matches!(
            split_extension(&[9, 3], 2, &[vec![3, 0], vec![0, 1]]),
            Err(GroupError::NotAnAutomorphism)
        ));
        assert!(matches!(
            split_extension(&[9, 3], 5, &[vec![1, 0], vec![0, 2]]),
            Err(GroupError::AutomorphismOrder { .. })
        ));
        assert!(matches!(
            split_extension(&[3, 9], 2, &[vec![1, 0], vec![0, 1]]),
            Err(GroupError::BadInvariantFactors)
        ));
    }

    #[test]
    fn subsets_and_centralizers() {
        let g = semidirect_cyclic(7, 3, 2).unwrap();
        assert_eq!(g.subset_all().psi(), 85);
        assert_eq!(g.subset_from([0]).psi(), 1);
        assert_eq!(g.subset_empty().psi(), 0);

        // centralizer of the identity is everything
        assert_eq!(g.centralizer(&g.subset_from([0])).len(), 21);

        // the normal C_7 is self-centralizing in C_7 ⋊ C_3
        let p: Vec<usize> = (0..21).filter(|&i| g.elem_order(i) == 7 || i == 0).collect();
        assert_eq!(p.len(), 7);
        let psub = g.subset_from(p.iter().copied());
        let cent = g.centralizer(&psub);
        assert_eq!(cent.len(), 7);
        for i in cent.indices() {
            assert!(psub.contains(i));
        }

        // abelian group: centralizer of anything is the whole group
        let c12 = cyclic(12).unwrap();
        assert_eq!(c12.centralizer(&c12.subset_all()).len(), 12);
    }

    #[test]
    fn sylow_examples() {
        let c21 = cyclic(21).unwrap();
        let s7 = c21.sylow(7).unwrap();
        assert_eq!(s7.len(), 7);
        assert!(c21.is_normal(&s7).unwrap());

        let g = semidirect_cyclic(7, 3, 2).unwrap();
        let p7 = g.sylow(7).unwrap();
        assert_eq!(p7.len(), 7);
        assert!(g.is_normal(&p7).unwrap());

        let p3 = g.sylow(3).unwrap();
        assert_eq!(p3.len(), 3);
        assert!(!g.is_normal(&p3).unwrap());
        // seven conjugate Sylow 3-subgroups
        let members: Vec<usize> = p3.indices().collect();
        let mut conjugates: Vec<Vec<usize>> = Vec::new();
        for c in 0..g.order() {
            let ci = g.inv(c);
            let mut image: Vec<usize> =
                members.iter().map(|&x| g.mul(g.mul(c, x), ci)).collect();
            image.sort_unstable();
            if !conjugates.contains(&image) {
                conjugates.push(image);
            }
        }
        assert_eq!(conjugates.len(), 7);

        assert!(matches!(g.sylow(5), Err(GroupError::PrimeDoesNotDivide { .. })));
    }

    #[test]
    fn predicates() {
        let c21 = cyclic(21).unwrap();
        assert!(c21.is_cyclic() && c21.is_abelian());
        let g = semidirect_cyclic(7, 3, 2).unwrap();
        assert!(!g.is_cyclic() && !g.is_abelian());
        let c3c3 = direct_product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert!(c3c3.is_abelian() && !c3c3.is_cyclic());

        let not_subgroup = g.subset_from([0, 1]);
        if g.elem_order(1) != 2 {
            assert!(matches!(g.is_normal(&not_subgroup), Err(GroupError::NotASubgroup)));
        }
    }

    #[test]
    fn semidirect_formula_matches_enumeration() {
        // P = C_7, F = C_3, Z = 1: 43·1 + 7·6 = 85
        let p = cyclic(7).unwrap();
        let f = cyclic(3).unwrap();
        let z = f.subset_from([0]);
        assert_eq!(psi_semidirect_formula(&p, &f, &z).unwrap(), 85);

        // central case Z = F gives the direct-product value
        let z_all = f.subset_all();
        assert_eq!(psi_semidirect_formula(&p, &f, &z_all).unwrap(), p.psi() * f.psi());

        // P = C_11, F = C_5, Z = 1: 111 + 11·20 = 331
        let p11 = cyclic(11).unwrap();
        let f5 = cyclic(5).unwrap();
        let z1 = f5.subset_from([0]);
        assert_eq!(psi_semidirect_formula(&p11, &f5, &z1).unwrap(), 331);

        let noncyclic = direct_product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap();
        let zz = f5.subset_from([0]);
        assert!(matches!(
            psi_semidirect_formula(&noncyclic, &f5, &zz),
            Err(GroupError::NotCyclic)
        ));
    }

    #[test]
    fn fixed_point_free_dichotomy_on_prime_kernels() {
        // In P ⋊ F with |P| = p prime, every element of F acts trivially
        // or fixes only the identity, and non-centralizing elements have
        // order dividing p − 1.
        for (m, k, r) in [(7u64, 3u64, 2u64), (11, 5, 3), (13, 3, 3), (5, 4, 2), (7, 6, 3)] {
            let g = semidirect_cyclic(m, k, r).unwrap();
            let mu = m as usize;
            for j in 0..k as usize {
                let f_elt = j * mu; // (0, j)
                let fi = g.inv(f_elt);
                let fixed: Vec<usize> = (0..mu)
                    .filter(|&i| g.mul(g.mul(f_elt, i), fi) == i)
                    .collect();
                if fixed.len() == mu {
                    continue; // centralizes P
                }
                assert_eq!(fixed, vec![0], "non-trivial partial fixing in C{m}:C{k}@{r}");
                let ord = g.elem_order(f_elt);
                assert_eq!((m - 1) % ord, 0, "order of fpf element must divide p-1");
            }
        }
    }

    #[test]
    fn structure_check_catches_capped_orders() {
        for g in [cyclic(30).unwrap(), direct_product(&cyclic(4).unwrap(), &cyclic(6).unwrap()).unwrap()] {
            g.verify_structure().unwrap();
        }
        // sampled associativity path (order > 256)
        let big = semidirect_cyclic(101, 4, 10).unwrap();
        big.verify_structure().unwrap();
    }

    #[test]
    fn generating_sets_generate() {
        for g in [
            cyclic(12).unwrap(),
            semidirect_cyclic(7, 3, 2).unwrap(),
            quaternion8(),
            direct_product(&cyclic(3).unwrap(), &cyclic(9).unwrap()).unwrap(),
        ] {
            let gens: Vec<usize> = g.generating_set().iter().map(|&x| x as usize).collect();
            assert_eq!(g.closure_bits(&gens).count(), g.order());
        }
    }
}
