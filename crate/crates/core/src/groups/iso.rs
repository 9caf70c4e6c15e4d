//! Isomorphism testing by generator-image backtracking.
//!
//! Cheap invariants go first: order, element-order statistics, and
//! abelianness (for abelian groups the order statistics already decide the
//! isomorphism type). The remaining cases run a backtracking search over
//! order-preserving images of a greedy generating set, with each partial
//! assignment validated by a breadth-first consistency check that aborts
//! on the first broken product or injectivity failure.

use std::collections::HashMap;

use super::{FiniteGroup, GroupError, MAX_ISO_ORDER};

/// Decides whether two groups are isomorphic. Orders above the search cap
/// are rejected.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool, GroupError> {
    for side in [g, h] {
        if side.order() as u64 > MAX_ISO_ORDER {
            return Err(GroupError::CapExceeded {
                order: side.order() as u64,
                cap: MAX_ISO_ORDER,
            });
        }
    }
    if g.order() != h.order() {
        return Ok(false);
    }
    if g.order() == 1 {
        return Ok(true);
    }
    if order_counts(g) != order_counts(h) {
        return Ok(false);
    }
    if g.is_abelian() != h.is_abelian() {
        return Ok(false);
    }
    if g.is_abelian() {
        // finite abelian groups are classified by their order statistics
        return Ok(true);
    }
    // Map from the side with the smaller generating set; the search tree
    // is narrower and bad candidates die faster.
    let (src, dst) =
        if g.generating_set().len() <= h.generating_set().len() { (g, h) } else { (h, g) };
    Ok(Search::new(src, dst).run())
}

fn order_counts(g: &FiniteGroup) -> HashMap<u32, u32> {
    let mut counts = HashMap::new();
    for &o in g.orders() {
        *counts.entry(o).or_insert(0u32) += 1;
    }
    counts
}

struct Search<'a> {
    src: &'a FiniteGroup,
    dst: &'a FiniteGroup,
    gens: Vec<usize>,
    buckets: HashMap<u32, Vec<usize>>,
    /// For the two-generator prune: t with y·x·y⁻¹ = x^t in the source,
    /// when the conjugate lands inside ⟨x⟩.
    conj_exp: Option<u64>,
}

impl<'a> Search<'a> {
    fn new(src: &'a FiniteGroup, dst: &'a FiniteGroup) -> Self {
        let gens: Vec<usize> = src.generating_set().iter().map(|&x| x as usize).collect();
        let mut buckets: HashMap<u32, Vec<usize>> = HashMap::new();
        for i in 0..dst.order() {
            buckets.entry(dst.orders()[i]).or_default().push(i);
        }
        let conj_exp = if gens.len() >= 2 {
            let (x, y) = (gens[0], gens[1]);
            let z = src.mul(src.mul(y, x), src.inv(y));
            // scan powers of x for z
            let mut cur = 0usize;
            let mut found = None;
            for e in 0..src.elem_order(x) {
                if cur == z {
                    found = Some(e);
                    break;
                }
                cur = src.mul(cur, x);
            }
            found
        } else {
            None
        };
        Search { src, dst, gens, buckets, conj_exp }
    }

    fn run(&self) -> bool {
        let mut images = Vec::with_capacity(self.gens.len());
        self.extend(&mut images)
    }

    fn extend(&self, images: &mut Vec<usize>) -> bool {
        let depth = images.len();
        if depth == self.gens.len() {
            return true;
        }
        let want_order = self.src.orders()[self.gens[depth]];
        let candidates = match self.buckets.get(&want_order) {
            Some(c) => c,
            None => return false,
        };
        // power table of images[0] for the conjugation prune at depth 1
        let powers: Option<Vec<usize>> = if depth == 1 && self.conj_exp.is_some() {
            let a = images[0];
            let ord = self.dst.elem_order(a) as usize;
            let mut tbl = Vec::with_capacity(ord);
            let mut cur = 0usize;
            for _ in 0..ord {
                tbl.push(cur);
                cur = self.dst.mul(cur, a);
            }
            Some(tbl)
        } else {
            None
        };
        for &cand in candidates {
            if let (Some(t), Some(tbl)) = (self.conj_exp, &powers) {
                let conj = self.dst.mul(self.dst.mul(cand, images[0]), self.dst.inv(cand));
                if conj != tbl[t as usize % tbl.len()] {
                    continue;
                }
            }
            images.push(cand);
            if self.partial_consistent(images) && self.extend(images) {
                return true;
            }
            images.pop();
        }
        false
    }

    /// Maps the subgroup generated by the first `images.len()` generators
    /// into the target, verifying every (element, generator) product and
    /// injectivity. Covering products of elements with generators is
    /// enough: consistency there extends multiplicatively to the whole
    /// subgroup.
    fn partial_consistent(&self, images: &[usize]) -> bool {
        let n = self.src.order();
        const UNSET: u32 = u32::MAX;
        let mut phi = vec![UNSET; n];
        let mut used = vec![false; self.dst.order()];
        phi[0] = 0;
        used[0] = true;
        let mut queue: Vec<usize> = vec![0];
        let mut head = 0usize;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let phix = phi[x] as usize;
            for (k, &s) in self.gens[..images.len()].iter().enumerate() {
                let y = self.src.mul(x, s);
                let hy = self.dst.mul(phix, images[k]);
                if phi[y] != UNSET {
                    if phi[y] as usize != hy {
                        return false;
                    }
                } else {
                    if used[hy] {
                        return false;
                    }
                    phi[y] = hy as u32;
                    used[hy] = true;
                    queue.push(y);
                }
            }
        }
        true
    }
}
