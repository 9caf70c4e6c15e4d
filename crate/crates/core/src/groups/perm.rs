//! Permutation-generator ingestion: cycle-notation parsing and
//! breadth-first closure into an explicit group table.

use std::collections::HashMap;

use super::{assemble_table_group, orders_from_table, FiniteGroup, GroupError, MAX_TABLE_ORDER};

/// A permutation of {0, …, d−1}, stored as its image vector.
pub type Permutation = Vec<usize>;

/// Parses one line of cycle notation, e.g. `(1 2 3)(4 5)`, into a
/// permutation on a domain of `domain` points (1-based points in the
/// text, 0-based images out). Points not mentioned are fixed.
pub fn parse_cycle_notation(line: &str, domain: usize) -> Result<Permutation, GroupError> {
    let mut perm: Vec<usize> = (0..domain).collect();
    let mut moved = vec![false; domain];
    let text = line.trim();
    let bad = |msg: &str| Err(GroupError::CycleParse(format!("{msg}: {line:?}")));
    if text.is_empty() {
        return Ok(perm);
    }
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c != '(' {
            return bad("expected '('");
        }
        chars.next();
        let mut cycle: Vec<usize> = Vec::new();
        let mut digits = String::new();
        loop {
            match chars.next() {
                Some(d) if d.is_ascii_digit() => digits.push(d),
                Some(d) if d.is_whitespace() || d == ',' || d == ')' => {
                    if !digits.is_empty() {
                        let point: usize = digits.parse().map_err(|_| {
                            GroupError::CycleParse(format!("bad point {digits:?} in {line:?}"))
                        })?;
                        if point == 0 || point > domain {
                            return bad("point out of domain");
                        }
                        cycle.push(point - 1);
                        digits.clear();
                    }
                    if d == ')' {
                        break;
                    }
                }
                _ => return bad("unterminated cycle"),
            }
        }
        for &p in &cycle {
            if moved[p] {
                return bad("point repeated across cycles");
            }
            moved[p] = true;
        }
        for w in 0..cycle.len() {
            perm[cycle[w]] = cycle[(w + 1) % cycle.len()];
        }
    }
    Ok(perm)
}

/// Largest point mentioned in a block of cycle-notation lines; lines with
/// no points contribute nothing.
pub fn cycle_notation_domain(lines: &[&str]) -> usize {
    let mut max_point = 0usize;
    for line in lines {
        let mut digits = String::new();
        for c in line.chars().chain(std::iter::once(' ')) {
            if c.is_ascii_digit() {
                digits.push(c);
            } else if !digits.is_empty() {
                if let Ok(p) = digits.parse::<usize>() {
                    max_point = max_point.max(p);
                }
                digits.clear();
            }
        }
    }
    max_point
}

/// The group generated by the given permutations, via breadth-first
/// closure. All generators must be bijections of the same domain; the
/// closure must stay within the table cap. No generators give the
/// trivial group.
pub fn from_permutations(generators: &[Permutation]) -> Result<FiniteGroup, GroupError> {
    if generators.is_empty() {
        let mut g = super::cyclic(1)?;
        g.set_label("perm:trivial".to_string());
        return Ok(g);
    }
    let domain = generators[0].len();
    for gen in generators {
        if gen.len() != domain {
            return Err(GroupError::BadPermutation);
        }
        let mut seen = vec![false; domain];
        for &img in gen {
            if img >= domain || seen[img] {
                return Err(GroupError::BadPermutation);
            }
            seen[img] = true;
        }
    }
    let identity: Permutation = (0..domain).collect();
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut elements: Vec<Permutation> = vec![identity.clone()];
    index.insert(identity, 0);
    let mut head = 0usize;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for gen in generators {
            // apply `current` first, then `gen`
            let product: Permutation = current.iter().map(|&x| gen[x]).collect();
            if !index.contains_key(&product) {
                if elements.len() as u64 >= MAX_TABLE_ORDER {
                    return Err(GroupError::CapExceeded {
                        order: elements.len() as u64 + 1,
                        cap: MAX_TABLE_ORDER,
                    });
                }
                index.insert(product.clone(), elements.len());
                elements.push(product);
            }
        }
    }
    let n = elements.len();
    let mut mul = vec![0u16; n * n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let product: Permutation = a.iter().map(|&x| b[x]).collect();
            mul[i * n + j] = index[&product] as u16;
        }
    }
    let (elem_order, inv) = orders_from_table(n, &mul);
    Ok(assemble_table_group(n, mul, inv, elem_order, format!("perm:{n}")))
}
