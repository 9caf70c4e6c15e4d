//! The construction DSL: descriptors for cyclic groups, direct products,
//! split extensions, and the named families used by the verification
//! suites, plus exhaustive isomorphism-class enumeration for supported
//! odd orders.
//!
//! Descriptors round-trip through a canonical string grammar
//! (`C21`, `C7:C3@2`, `C3xC3xC5`, `M27`, `Q8`, `D18`, `G1@3`, `A1@m1=5`,
//! `A2@q=5,m1=1`, `T9@q=3,k=5`, `SA[9,3]:C2@[1,0;0,2]`) and build into
//! concrete [`FiniteGroup`]s whose order matches the descriptor's declared
//! order.

mod enumerate;

pub use enumerate::{
    enumerate_p2q, enumerate_squarefree, enumerate_supported, EnumeratedClass,
    EnumerationResult, Tier, MAX_ENUM_ORDER,
};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arith::{self, ArithError};
use crate::bounds;
use crate::groups::{self, FiniteGroup, GroupError};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot parse descriptor: {0}")]
    Parse(String),
    #[error("descriptor parameter out of range: {0}")]
    BadParameter(String),
    #[error("order {0} is not supported for enumeration (need odd n ≤ {MAX_ENUM_ORDER})")]
    UnsupportedOrder(u64),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Named constructions with fixed expansions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NamedFamily {
    /// The symmetric group on three letters.
    S3,
    /// Dihedral group of order 2l.
    Dihedral { l: u64 },
    /// The quaternion group of order 8.
    Q8,
    /// The modular group of order q³.
    Modular { q: u64 },
    /// C_3 ⋊ C_{2^α} with the 2-part acting by inversion.
    G1 { alpha: u32 },
    /// (C_7 ⋊ C_3) × C_{m1}.
    ExtremalA1 { m1: u64 },
    /// C_q × C_p × C_p × C_{m1} with p the smallest prime above q.
    ExtremalA2 { q: u64, m1: u64 },
    /// C_q × C_q × C_k.
    T9 { q: u64, k: u64 },
}

/// A construction term for a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    Cyclic(u64),
    Product(Vec<GroupDescriptor>),
    SplitCyclic { m: u64, k: u64, r: u64 },
    SplitAbelian { invariants: Vec<u64>, k: u64, images: Vec<Vec<u64>> },
    Named(NamedFamily),
}

impl GroupDescriptor {
    pub fn product(parts: Vec<GroupDescriptor>) -> GroupDescriptor {
        // flatten nested products so the string form is canonical
        let mut flat = Vec::new();
        for part in parts {
            match part {
                GroupDescriptor::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            GroupDescriptor::Product(flat)
        }
    }

    /// The order the built group must have.
    pub fn declared_order(&self) -> u64 {
        match self {
            GroupDescriptor::Cyclic(n) => *n,
            GroupDescriptor::Product(parts) => parts.iter().map(|p| p.declared_order()).product(),
            GroupDescriptor::SplitCyclic { m, k, .. } => m * k,
            GroupDescriptor::SplitAbelian { invariants, k, .. } => {
                invariants.iter().product::<u64>() * k
            }
            GroupDescriptor::Named(named) => match named {
                NamedFamily::S3 => 6,
                NamedFamily::Dihedral { l } => 2 * l,
                NamedFamily::Q8 => 8,
                NamedFamily::Modular { q } => q * q * q,
                NamedFamily::G1 { alpha } => 3 * (1u64 << alpha),
                NamedFamily::ExtremalA1 { m1 } => 21 * m1,
                NamedFamily::ExtremalA2 { q, m1 } => {
                    let p = bounds::smallest_prime_greater(*q);
                    q * p * p * m1
                }
                NamedFamily::T9 { q, k } => q * q * k,
            },
        }
    }

    /// Expands named tags into their defining construction; other
    /// descriptors are returned unchanged.
    pub fn expanded(&self) -> GroupDescriptor {
        match self {
            GroupDescriptor::Named(named) => match named {
                NamedFamily::S3 => GroupDescriptor::SplitCyclic { m: 3, k: 2, r: 2 },
                NamedFamily::Dihedral { l } => {
                    GroupDescriptor::SplitCyclic { m: *l, k: 2, r: l - 1 }
                }
                NamedFamily::Q8 => GroupDescriptor::Named(NamedFamily::Q8),
                NamedFamily::Modular { q } => {
                    GroupDescriptor::SplitCyclic { m: q * q, k: *q, r: q + 1 }
                }
                NamedFamily::G1 { alpha } => {
                    GroupDescriptor::SplitCyclic { m: 3, k: 1u64 << alpha, r: 2 }
                }
                NamedFamily::ExtremalA1 { m1 } => GroupDescriptor::product(vec![
                    GroupDescriptor::SplitCyclic { m: 7, k: 3, r: 2 },
                    GroupDescriptor::Cyclic(*m1),
                ]),
                NamedFamily::ExtremalA2 { q, m1 } => {
                    let p = bounds::smallest_prime_greater(*q);
                    GroupDescriptor::product(vec![
                        GroupDescriptor::Cyclic(*q),
                        GroupDescriptor::Cyclic(p),
                        GroupDescriptor::Cyclic(p),
                        GroupDescriptor::Cyclic(*m1),
                    ])
                }
                NamedFamily::T9 { q, k } => GroupDescriptor::product(vec![
                    GroupDescriptor::Cyclic(*q),
                    GroupDescriptor::Cyclic(*q),
                    GroupDescriptor::Cyclic(*k),
                ]),
            },
            other => other.clone(),
        }
    }

    /// Syntactic abelianness: true when the construction cannot introduce
    /// a nontrivial action.
    pub fn is_abelian_construction(&self) -> bool {
        match self {
            GroupDescriptor::Cyclic(_) => true,
            GroupDescriptor::Product(parts) => {
                parts.iter().all(|p| p.is_abelian_construction())
            }
            GroupDescriptor::SplitCyclic { m, k, r } => *r == 1 || *k == 1 || *m == 1,
            GroupDescriptor::SplitAbelian { invariants, k, images } => {
                *k == 1
                    || images.iter().enumerate().all(|(i, row)| {
                        row.iter().enumerate().all(|(j, &e)| {
                            let d = invariants[j];
                            e % d == u64::from(i == j) % d
                        })
                    })
            }
            GroupDescriptor::Named(named) => match named {
                NamedFamily::ExtremalA2 { .. } | NamedFamily::T9 { .. } => true,
                NamedFamily::Dihedral { l } => *l <= 2,
                _ => false,
            },
        }
    }
}

/// gcd(m1, 42) = 1: the parameter constraint for the q = 3 extremal
/// family.
pub fn validate_extremal_a1_params(m1: u64) -> bool {
    m1 >= 1 && arith::gcd(m1, 42) == 1
}

/// m1 has no prime factor ≤ p (p the smallest prime above q): the
/// coprimality reading of the q > 3 extremal family's parameter.
pub fn validate_extremal_a2_params(q: u64, m1: u64) -> bool {
    if m1 == 0 || q < 3 || !arith::is_prime(q) {
        return false;
    }
    let p = bounds::smallest_prime_greater(q);
    match arith::factorize(m1) {
        Ok(f) => f.factors().iter().all(|&(prime, _)| prime > p),
        Err(_) => false,
    }
}

/// k has no prime factor ≤ q: the parameter constraint on the
/// C_q × C_q × C_k equality family.
pub fn validate_t9_params(q: u64, k: u64) -> bool {
    if k == 0 || q < 3 || !arith::is_prime(q) {
        return false;
    }
    match arith::factorize(k) {
        Ok(f) => f.factors().iter().all(|&(prime, _)| prime > q),
        Err(_) => false,
    }
}

/// Builds the concrete group a descriptor denotes. The built group is
/// labelled with the descriptor's canonical string.
pub fn build(descriptor: &GroupDescriptor) -> Result<FiniteGroup, CatalogError> {
    let mut group = build_inner(descriptor)?;
    debug_assert_eq!(group.order() as u64, descriptor.declared_order());
    group.set_label(descriptor.to_string());
    Ok(group)
}

fn build_inner(descriptor: &GroupDescriptor) -> Result<FiniteGroup, CatalogError> {
    match descriptor {
        GroupDescriptor::Cyclic(n) => Ok(groups::cyclic(*n)?),
        GroupDescriptor::Product(parts) => {
            if parts.is_empty() {
                return Ok(groups::cyclic(1)?);
            }
            let mut acc = build_inner(&parts[0])?;
            for part in &parts[1..] {
                let next = build_inner(part)?;
                acc = groups::direct_product(&acc, &next)?;
            }
            Ok(acc)
        }
        GroupDescriptor::SplitCyclic { m, k, r } => {
            if *m == 1 {
                return Ok(groups::cyclic(*k)?);
            }
            Ok(groups::semidirect_cyclic(*m, *k, *r)?)
        }
        GroupDescriptor::SplitAbelian { invariants, k, images } => {
            Ok(groups::split_extension(invariants, *k, images)?)
        }
        GroupDescriptor::Named(NamedFamily::Q8) => Ok(groups::quaternion8()),
        GroupDescriptor::Named(_) => build_inner(&descriptor.expanded()),
    }
}

/// Element orders of the described group, computed arithmetically from
/// the construction (no multiplication table). Used as a fast prefilter
/// during enumeration and for cache rebuilds; construction-path order
/// walks cross-check it in the test suites.
pub fn descriptor_order_vector(descriptor: &GroupDescriptor) -> Result<Vec<u32>, CatalogError> {
    match descriptor {
        GroupDescriptor::Cyclic(n) => {
            if *n == 0 {
                return Err(CatalogError::BadParameter("C0".into()));
            }
            Ok((0..*n).map(|i| (*n / arith::gcd(i, *n)) as u32).collect())
        }
        GroupDescriptor::Product(parts) => {
            let mut orders = vec![1u32];
            for part in parts {
                let part_orders = descriptor_order_vector(part)?;
                let mut merged = Vec::with_capacity(orders.len() * part_orders.len());
                // second factor varies slower, matching direct_product's
                // (ia * nb + ib) indexing with the accumulated group as b
                for &ob in &part_orders {
                    for &oa in &orders {
                        let (a, b) = (oa as u64, ob as u64);
                        merged.push((a / arith::gcd(a, b) * b) as u32);
                    }
                }
                orders = merged;
            }
            Ok(orders)
        }
        GroupDescriptor::SplitCyclic { m, k, r } => {
            if *m == 1 {
                return descriptor_order_vector(&GroupDescriptor::Cyclic(*k));
            }
            if *k == 0 || *r == 0 || r >= m || arith::pow_mod(*r, *k, *m) != 1 {
                return Err(CatalogError::BadParameter(descriptor.to_string()));
            }
            let (m, k, r) = (*m, *k, *r);
            let mut orders = vec![0u32; (m * k) as usize];
            for j in 0..k {
                let d = k / arith::gcd(j, k);
                let rj = arith::pow_mod(r, j, m);
                // S = 1 + r^j + r^{2j} + … + r^{(d-1)j} mod m
                let mut s = 0u64;
                let mut term = 1u64;
                for _ in 0..d {
                    s = (s + term) % m;
                    term = term * rj % m;
                }
                for i in 0..m {
                    let tail = i * s % m;
                    orders[(j * m + i) as usize] = (d * (m / arith::gcd(tail, m))) as u32;
                }
            }
            Ok(orders)
        }
        GroupDescriptor::SplitAbelian { invariants, k, images } => {
            split_abelian_orders(invariants, *k, images)
                .ok_or_else(|| CatalogError::BadParameter(descriptor.to_string()))
        }
        GroupDescriptor::Named(NamedFamily::Q8) => Ok(vec![1, 2, 4, 4, 4, 4, 4, 4]),
        GroupDescriptor::Named(_) => descriptor_order_vector(&descriptor.expanded()),
    }
}

fn split_abelian_orders(invariants: &[u64], k: u64, images: &[Vec<u64>]) -> Option<Vec<u32>> {
    let t = invariants.len();
    if t == 0 || k == 0 || images.len() != t || images.iter().any(|r| r.len() != t) {
        return None;
    }
    let a_size: u64 = invariants.iter().product();
    let moduli = invariants;
    let apply = |mat: &[Vec<u64>], v: &[u64]| -> Vec<u64> {
        (0..t)
            .map(|j| {
                let mut acc = 0u64;
                for i in 0..t {
                    acc = (acc + v[i] * (mat[i][j] % moduli[j])) % moduli[j];
                }
                acc
            })
            .collect()
    };
    let compose = |a: &[Vec<u64>], b: &[Vec<u64>]| -> Vec<Vec<u64>> {
        (0..t).map(|i| apply(a, &b[i])).collect()
    };
    let identity: Vec<Vec<u64>> =
        (0..t).map(|i| (0..t).map(|j| u64::from(i == j) % moduli[j]).collect()).collect();
    // matrix powers M^j for j < k
    let mut powers = Vec::with_capacity(k as usize);
    let mut acc = identity;
    for _ in 0..k {
        powers.push(acc.clone());
        acc = compose(&acc, images);
    }
    let decomp = |mut e: u64| -> Vec<u64> {
        let mut v = Vec::with_capacity(t);
        for &d in moduli {
            v.push(e % d);
            e /= d;
        }
        v
    };
    let order_in_a = |v: &[u64]| -> u64 {
        let mut o = 1u64;
        for (c, &d) in v.iter().zip(moduli) {
            let oj = d / arith::gcd(*c, d);
            o = o / arith::gcd(o, oj) * oj;
        }
        o
    };
    let mut orders = vec![0u32; (a_size * k) as usize];
    for j in 0..k {
        let d = k / arith::gcd(j, k);
        // norm N = Σ_{s<d} (M^j)^s
        let mj = &powers[j as usize];
        let mut norm = vec![vec![0u64; t]; t];
        let mut step: Vec<Vec<u64>> =
            (0..t).map(|i| (0..t).map(|jj| u64::from(i == jj) % moduli[jj]).collect()).collect();
        for _ in 0..d {
            for i in 0..t {
                for jj in 0..t {
                    norm[i][jj] = (norm[i][jj] + step[i][jj]) % moduli[jj];
                }
            }
            step = compose(&step, mj);
        }
        for e in 0..a_size {
            let v = decomp(e);
            let w = apply(&norm, &v);
            orders[(j * a_size + e) as usize] = (d * order_in_a(&w)) as u32;
        }
    }
    Some(orders)
}

/// ψ of the described group, from the arithmetic order vector.
pub fn descriptor_psi(descriptor: &GroupDescriptor) -> Result<u64, CatalogError> {
    Ok(descriptor_order_vector(descriptor)?.iter().map(|&o| o as u64).sum())
}

/// Whether the described group is cyclic (some element order equals the
/// group order).
pub fn descriptor_is_cyclic(descriptor: &GroupDescriptor) -> Result<bool, CatalogError> {
    let n = descriptor.declared_order();
    Ok(descriptor_order_vector(descriptor)?.iter().any(|&o| o as u64 == n))
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic(n) => write!(out, "C{n}"),
            GroupDescriptor::Product(parts) => {
                let rendered: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(out, "{}", rendered.join("x"))
            }
            GroupDescriptor::SplitCyclic { m, k, r } => write!(out, "C{m}:C{k}@{r}"),
            GroupDescriptor::SplitAbelian { invariants, k, images } => {
                let inv: Vec<String> = invariants.iter().map(|d| d.to_string()).collect();
                let rows: Vec<String> = images
                    .iter()
                    .map(|row| {
                        row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
                    })
                    .collect();
                write!(out, "SA[{}]:C{}@[{}]", inv.join(","), k, rows.join(";"))
            }
            GroupDescriptor::Named(named) => match named {
                NamedFamily::S3 => write!(out, "S3"),
                NamedFamily::Dihedral { l } => write!(out, "D{}", 2 * l),
                NamedFamily::Q8 => write!(out, "Q8"),
                NamedFamily::Modular { q } => write!(out, "M{}", q * q * q),
                NamedFamily::G1 { alpha } => write!(out, "G1@{alpha}"),
                NamedFamily::ExtremalA1 { m1 } => write!(out, "A1@m1={m1}"),
                NamedFamily::ExtremalA2 { q, m1 } => write!(out, "A2@q={q},m1={m1}"),
                NamedFamily::T9 { q, k } => write!(out, "T9@q={q},k={k}"),
            },
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = CatalogError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        if text.is_empty() {
            return Err(CatalogError::Parse("empty descriptor".into()));
        }
        let mut parts = Vec::new();
        for atom in split_top_level(text) {
            parts.push(parse_atom(atom)?);
        }
        Ok(GroupDescriptor::product(parts))
    }
}

/// Splits on 'x' outside brackets; bracket depth tracks the SA matrix
/// form.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            'x' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

fn parse_atom(atom: &str) -> Result<GroupDescriptor, CatalogError> {
    let bad = || CatalogError::Parse(atom.to_string());
    let parse_u64 = |s: &str| s.parse::<u64>().map_err(|_| bad());
    if atom == "S3" {
        return Ok(GroupDescriptor::Named(NamedFamily::S3));
    }
    if atom == "Q8" {
        return Ok(GroupDescriptor::Named(NamedFamily::Q8));
    }
    if let Some(rest) = atom.strip_prefix("G1@") {
        let alpha: u32 = rest.parse().map_err(|_| bad())?;
        if alpha == 0 || alpha > 18 {
            return Err(CatalogError::BadParameter(atom.into()));
        }
        return Ok(GroupDescriptor::Named(NamedFamily::G1 { alpha }));
    }
    if let Some(rest) = atom.strip_prefix("A1@m1=") {
        return Ok(GroupDescriptor::Named(NamedFamily::ExtremalA1 { m1: parse_u64(rest)? }));
    }
    if let Some(rest) = atom.strip_prefix("A2@") {
        let (q, m1) = parse_two_params(rest, "q", "m1").ok_or_else(bad)?;
        return Ok(GroupDescriptor::Named(NamedFamily::ExtremalA2 { q, m1 }));
    }
    if let Some(rest) = atom.strip_prefix("T9@") {
        let (q, k) = parse_two_params(rest, "q", "k").ok_or_else(bad)?;
        return Ok(GroupDescriptor::Named(NamedFamily::T9 { q, k }));
    }
    if let Some(rest) = atom.strip_prefix('D') {
        let n = parse_u64(rest)?;
        if n < 6 || n % 2 != 0 {
            return Err(CatalogError::BadParameter(atom.into()));
        }
        return Ok(GroupDescriptor::Named(NamedFamily::Dihedral { l: n / 2 }));
    }
    if let Some(rest) = atom.strip_prefix('M') {
        let n = parse_u64(rest)?;
        let q = (n as f64).cbrt().round() as u64;
        for candidate in [q.saturating_sub(1), q, q + 1] {
            if candidate >= 2 && candidate.pow(3) == n && arith::is_prime(candidate) {
                return Ok(GroupDescriptor::Named(NamedFamily::Modular { q: candidate }));
            }
        }
        return Err(CatalogError::BadParameter(atom.into()));
    }
    if let Some(rest) = atom.strip_prefix("SA[") {
        let (inv_text, tail) = rest.split_once("]:C").ok_or_else(bad)?;
        let (k_text, matrix_text) = tail.split_once("@[").ok_or_else(bad)?;
        let matrix_text = matrix_text.strip_suffix(']').ok_or_else(bad)?;
        let invariants: Vec<u64> = inv_text
            .split(',')
            .map(|s| parse_u64(s.trim()))
            .collect::<Result<_, _>>()?;
        let k = parse_u64(k_text)?;
        let images: Vec<Vec<u64>> = matrix_text
            .split(';')
            .map(|row| row.split(',').map(|s| parse_u64(s.trim())).collect())
            .collect::<Result<_, _>>()?;
        return Ok(GroupDescriptor::SplitAbelian { invariants, k, images });
    }
    if let Some(rest) = atom.strip_prefix('C') {
        if let Some((m_text, tail)) = rest.split_once(":C") {
            let (k_text, r_text) = tail.split_once('@').ok_or_else(bad)?;
            return Ok(GroupDescriptor::SplitCyclic {
                m: parse_u64(m_text)?,
                k: parse_u64(k_text)?,
                r: parse_u64(r_text)?,
            });
        }
        return Ok(GroupDescriptor::Cyclic(parse_u64(rest)?));
    }
    Err(bad())
}

fn parse_two_params(text: &str, first: &str, second: &str) -> Option<(u64, u64)> {
    let (a, b) = text.split_once(',')?;
    let a = a.strip_prefix(first)?.strip_prefix('=')?;
    let b = b.strip_prefix(second)?.strip_prefix('=')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}
