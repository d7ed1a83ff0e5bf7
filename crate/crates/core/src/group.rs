//! Finite groups as explicit multiplication tables, plus conjugacy structure.
//!
//! Elements are indices `0..n` with `0` the identity. Groups are built either
//! from a Cayley table or by closing a set of permutation generators; both
//! paths validate the group axioms on load (exhaustively for small orders,
//! by seeded sampling above [`ASSOC_EXHAUSTIVE_LIMIT`]).

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Orders up to this bound get an exhaustive associativity check at load.
pub const ASSOC_EXHAUSTIVE_LIMIT: usize = 64;
/// Number of sampled triples for the associativity check above the limit.
pub const ASSOC_SAMPLES: usize = 10_000;

/// A finite group given by its multiplication table.
///
/// Index `0` is always the identity element.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    element_names: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Builds a group from a multiplication rule, validating the axioms.
    pub fn from_mul_fn(
        name: impl Into<String>,
        order: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut mul = vec![0u16; order * order];
        for a in 0..order {
            for b in 0..order {
                let c = f(a, b);
                if c >= order {
                    return Err(Error::validation(format!(
                        "product {a}*{b} = {c} out of range"
                    )));
                }
                mul[a * order + b] = c as u16;
            }
        }
        Self::from_table(name, order, mul, None)
    }

    /// Builds a group from a flat `n*n` table, validating the axioms.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        mul: Vec<u16>,
        element_names: Option<Vec<String>>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::validation("group order must be positive"));
        }
        if mul.len() != order * order {
            return Err(Error::validation("multiplication table has wrong size"));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::validation("table entry out of range (not closed)"));
        }
        // identity
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(Error::validation(format!(
                    "element 0 is not an identity at {x}"
                )));
            }
        }
        // inverses
        let mut inv = vec![u16::MAX; order];
        for x in 0..order {
            let mut found = None;
            for y in 0..order {
                if mul[x * order + y] == 0 {
                    if mul[y * order + x] != 0 {
                        return Err(Error::validation(format!(
                            "one-sided inverse for element {x}"
                        )));
                    }
                    found = Some(y as u16);
                    break;
                }
            }
            inv[x] = found
                .ok_or_else(|| Error::validation(format!("element {x} has no inverse")))?;
        }
        // associativity
        let assoc = |m: &[u16], a: usize, b: usize, c: usize| {
            m[m[a * order + b] as usize * order + c] == m[a * order + m[b * order + c] as usize]
        };
        if order <= ASSOC_EXHAUSTIVE_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !assoc(&mul, a, b, c) {
                            return Err(Error::validation(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..ASSOC_SAMPLES {
                let a = rng.gen_range(0..order);
                let b = rng.gen_range(0..order);
                let c = rng.gen_range(0..order);
                if !assoc(&mul, a, b, c) {
                    return Err(Error::validation(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
        let element_names = element_names
            .unwrap_or_else(|| (0..order).map(|i| i.to_string()).collect());
        if element_names.len() != order {
            return Err(Error::validation("element name list has wrong length"));
        }
        Ok(FiniteGroup {
            name: name.into(),
            order,
            mul,
            inv,
            element_names,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `a * b * a^{-1}`.
    #[inline]
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0usize;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.element_names[a]
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.element_names.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// All commuting pairs `(g, b)` with `gb = bg`.
    pub fn commuting_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for g in 0..self.order {
            for b in 0..self.order {
                if self.mul(g, b) == self.mul(b, g) {
                    out.push((g, b));
                }
            }
        }
        out
    }

    /// All extended pairs `(g, b)`: commuting with `b^2 = e`.
    pub fn extended_pairs(&self) -> Vec<(usize, usize)> {
        self.commuting_pairs()
            .into_iter()
            .filter(|&(_, b)| self.mul(b, b) == 0)
            .collect()
    }

    /// Loads a group from the text format described in the crate docs:
    /// either `perm <m>:` with `;`-separated cycle notations, or
    /// `table: <n>;` with `n` rows of `n` indices.
    pub fn load(text: &str) -> Result<Self> {
        let body: String = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n");
        let body = body.trim();
        if let Some(rest) = body.strip_prefix("perm") {
            let (m_str, gens) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse("expected `perm <m>: ...`"))?;
            let m: usize = m_str
                .trim()
                .parse()
                .map_err(|_| Error::parse("bad degree in perm header"))?;
            if m == 0 || m > 64 {
                return Err(Error::parse("permutation degree must be in 1..=64"));
            }
            let mut generators = Vec::new();
            for g in gens.split(';') {
                let g = g.trim();
                if g.is_empty() {
                    continue;
                }
                generators.push(parse_cycles(g, m)?);
            }
            from_permutations("perm-group", m, &generators)
        } else if let Some(rest) = body.strip_prefix("table:") {
            let mut toks = rest
                .split(|c: char| c == ';' || c.is_whitespace())
                .filter(|t| !t.is_empty());
            let n: usize = toks
                .next()
                .ok_or_else(|| Error::parse("missing order in table header"))?
                .parse()
                .map_err(|_| Error::parse("bad order in table header"))?;
            let mut mul = Vec::with_capacity(n * n);
            for t in toks {
                let v: usize = t
                    .parse()
                    .map_err(|_| Error::parse(format!("bad table entry `{t}`")))?;
                if v >= n {
                    return Err(Error::validation(format!(
                        "table entry {v} out of range (not closed)"
                    )));
                }
                mul.push(v as u16);
            }
            if mul.len() != n * n {
                return Err(Error::parse(format!(
                    "expected {} table entries, got {}",
                    n * n,
                    mul.len()
                )));
            }
            Self::from_table("table-group", n, mul, None)
        } else {
            Err(Error::parse("group file must start with `perm` or `table:`"))
        }
    }
}

/// Parses a product of cycles like `(1 2)(3 4 5)` on `{1..m}` into an image vector.
fn parse_cycles(s: &str, m: usize) -> Result<Vec<u8>> {
    let mut img: Vec<u8> = (0..m as u8).collect();
    let s = s.trim();
    if s == "e" || s == "()" {
        return Ok(img);
    }
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| Error::parse(format!("malformed cycle `{s}`")))?;
        let close = rest[open..]
            .find(')')
            .ok_or_else(|| Error::parse(format!("unclosed cycle in `{s}`")))?
            + open;
        let inner = &rest[open + 1..close];
        let pts: Vec<usize> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(format!("bad point `{t}` in cycle")))
            })
            .collect::<Result<_>>()?;
        for &p in &pts {
            if p == 0 || p > m {
                return Err(Error::parse(format!("point {p} outside 1..={m}")));
            }
        }
        for w in 0..pts.len() {
            let from = pts[w] - 1;
            let to = pts[(w + 1) % pts.len()] - 1;
            img[from] = to as u8;
        }
        rest = &rest[close + 1..];
        rest = rest.trim_start();
    }
    Ok(img)
}

fn cycle_notation(p: &[u8]) -> String {
    let m = p.len();
    let mut seen = vec![false; m];
    let mut out = String::new();
    for start in 0..m {
        if seen[start] || p[start] as usize == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start;
        loop {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x] as usize;
            if x == start {
                break;
            }
            out.push(' ');
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// Closes permutation generators to a group, enumerated by breadth-first
/// search in a fixed order so element indexing is reproducible.
pub fn from_permutations(name: &str, m: usize, generators: &[Vec<u8>]) -> Result<FiniteGroup> {
    let id: Vec<u8> = (0..m as u8).collect();
    let mut elements = vec![id.clone()];
    let mut index = std::collections::HashMap::new();
    index.insert(id, 0usize);
    let mut head = 0;
    while head < elements.len() {
        let cur = elements[head].clone();
        for g in generators {
            // right-multiply: (cur * g)(x) = g[cur[x]]
            let prod: Vec<u8> = cur.iter().map(|&x| g[x as usize]).collect();
            if !index.contains_key(&prod) {
                index.insert(prod.clone(), elements.len());
                elements.push(prod);
            }
        }
        head += 1;
        if elements.len() > 20_000 {
            return Err(Error::guard("generated permutation group is too large"));
        }
    }
    let n = elements.len();
    let mut mul = vec![0u16; n * n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let prod: Vec<u8> = a.iter().map(|&x| b[x as usize]).collect();
            mul[i * n + j] = index[&prod] as u16;
        }
    }
    let names = elements.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_table(name, n, mul, Some(names))
}

/// Conjugacy classes, centralizer orders, class sizes and the inverse involution.
///
/// Classes are sorted by `(size, smallest element index)` with the identity
/// class first; representatives are the smallest-index members.
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
    /// centralizer orders v_i
    pub v: Vec<usize>,
    /// class sizes w_i = |G| / v_i
    pub w: Vec<usize>,
    /// involution i -> i* with [rep(i)^{-1}] = class i*
    pub star: Vec<usize>,
}

impl ConjugacyData {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }
}

pub fn conjugacy(g: &FiniteGroup) -> ConjugacyData {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let mut orbit: Vec<usize> = (0..n).map(|h| g.conj(h, x)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        let id = classes.len();
        for &y in &orbit {
            class_of[y] = id;
        }
        classes.push(orbit);
    }
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by_key(|&i| (classes[i].len(), classes[i][0]));
    let classes: Vec<Vec<usize>> = order.iter().map(|&i| classes[i].clone()).collect();
    for (i, cls) in classes.iter().enumerate() {
        for &y in cls {
            class_of[y] = i;
        }
    }
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let w: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    let v: Vec<usize> = w.iter().map(|&wi| n / wi).collect();
    let star: Vec<usize> = reps.iter().map(|&r| class_of[g.inv(r)]).collect();
    ConjugacyData {
        classes,
        class_of,
        reps,
        v,
        w,
        star,
    }
}

// ---------------------------------------------------------------------------
// Named constructions used as fixtures throughout the crate.
// ---------------------------------------------------------------------------

pub fn cyclic(n: usize) -> FiniteGroup {
    FiniteGroup::from_mul_fn(format!("Z{n}"), n, |a, b| (a + b) % n).unwrap()
}

/// Dihedral group of order `2n` (symmetries of the n-gon), n >= 1.
pub fn dihedral(n: usize) -> FiniteGroup {
    // element 2k+j = r^k s^j with s r s = r^{-1}
    FiniteGroup::from_mul_fn(format!("D{n}"), 2 * n, |x, y| {
        let (k1, j1) = (x / 2, x % 2);
        let (k2, j2) = (y / 2, y % 2);
        let k = if j1 == 0 {
            (k1 + k2) % n
        } else {
            (k1 + n - k2 % n) % n
        };
        2 * k + (j1 + j2) % 2
    })
    .unwrap()
}

/// Dicyclic group of order `4n`; `dicyclic(2)` is the quaternion group Q8.
pub fn dicyclic(n: usize) -> FiniteGroup {
    let name = if n == 2 {
        "Q8".to_string()
    } else {
        format!("Dic{n}")
    };
    // element 2k+j = a^k b^j with a^{2n} = e, b^2 = a^n, b a b^{-1} = a^{-1}
    FiniteGroup::from_mul_fn(name, 4 * n, |x, y| {
        let (k1, j1) = (x / 2, x % 2);
        let (k2, j2) = (y / 2, y % 2);
        let m = 2 * n;
        if j1 == 0 {
            let k = (k1 + k2) % m;
            2 * k + j2
        } else if j2 == 0 {
            let k = (k1 + m - k2 % m) % m;
            2 * k + 1
        } else {
            // b a^{k2} b = a^{-k2} b^2 = a^{n-k2}
            let k = (k1 + n + m - k2 % m) % m;
            2 * k
        }
    })
    .unwrap()
}

pub fn quaternion8() -> FiniteGroup {
    dicyclic(2)
}

pub fn symmetric(n: usize) -> FiniteGroup {
    assert!((1..=5).contains(&n));
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<u8> = (0..n as u8).collect();
        t.swap(0, 1);
        gens.push(t);
        let mut c: Vec<u8> = (1..n as u8).collect();
        c.push(0);
        gens.push(c);
    }
    let mut g = from_permutations(&format!("S{n}"), n.max(1), &gens).unwrap();
    g.name = format!("S{n}");
    g
}

pub fn alternating4() -> FiniteGroup {
    let gens = vec![parse_cycles("(1 2 3)", 4).unwrap(), parse_cycles("(2 3 4)", 4).unwrap()];
    let mut g = from_permutations("A4", 4, &gens).unwrap();
    g.name = "A4".into();
    g
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let name = format!("{}x{}", a.name(), b.name());
    FiniteGroup::from_mul_fn(name, na * nb, |x, y| {
        let (xa, xb) = (x / nb, x % nb);
        let (ya, yb) = (y / nb, y % nb);
        a.mul(xa, ya) * nb + b.mul(xb, yb)
    })
    .unwrap()
}

pub fn elementary_abelian2(k: usize) -> FiniteGroup {
    let n = 1usize << k;
    FiniteGroup::from_mul_fn(format!("Z2^{k}"), n, |a, b| a ^ b).unwrap()
}

/// Semidihedral group of order 16: r^8 = s^2 = e, s r s = r^3.
fn semidihedral16() -> FiniteGroup {
    FiniteGroup::from_mul_fn("SD16", 16, |x, y| {
        let (k1, j1) = (x / 2, x % 2);
        let (k2, j2) = (y / 2, y % 2);
        let k = if j1 == 0 { (k1 + k2) % 8 } else { (k1 + 3 * k2) % 8 };
        2 * k + (j1 + j2) % 2
    })
    .unwrap()
}

/// Modular group of order 16: r^8 = s^2 = e, s r s = r^5.
fn modular16() -> FiniteGroup {
    FiniteGroup::from_mul_fn("M4(2)", 16, |x, y| {
        let (k1, j1) = (x / 2, x % 2);
        let (k2, j2) = (y / 2, y % 2);
        let k = if j1 == 0 { (k1 + k2) % 8 } else { (k1 + 5 * k2) % 8 };
        2 * k + (j1 + j2) % 2
    })
    .unwrap()
}

/// Z4 semidirect Z4: b a b^{-1} = a^{-1}.
fn z4_rtimes_z4() -> FiniteGroup {
    FiniteGroup::from_mul_fn("Z4:Z4", 16, |x, y| {
        let (i1, j1) = (x / 4, x % 4);
        let (i2, j2) = (y / 4, y % 4);
        let i = if j1 % 2 == 0 { (i1 + i2) % 4 } else { (i1 + 4 - i2 % 4) % 4 };
        i * 4 + (j1 + j2) % 4
    })
    .unwrap()
}

/// The Pauli group: central product of D4 and Z4, order 16.
/// Elements are (phase in Z4, sigma in {I,X,Y,Z}) with XY = iZ etc.
fn pauli16() -> FiniteGroup {
    // multiplication table of {I,X,Y,Z}: entry = (result, extra phase i^k)
    const TAB: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 0), (3, 1), (2, 3)],
        [(2, 0), (3, 3), (0, 0), (1, 1)],
        [(3, 0), (2, 1), (1, 3), (0, 0)],
    ];
    FiniteGroup::from_mul_fn("Pauli16", 16, |x, y| {
        let (p1, s1) = (x / 4, x % 4);
        let (p2, s2) = (y / 4, y % 4);
        let (s, extra) = TAB[s1][s2];
        ((p1 + p2 + extra) % 4) * 4 + s
    })
    .unwrap()
}

/// (Z4 x Z2) semidirect Z2 with c a c = a b, c b c = b.
fn z4z2_rtimes_z2() -> FiniteGroup {
    // element ((i,j),k), a^i b^j c^k
    FiniteGroup::from_mul_fn("(Z4xZ2):Z2", 16, |x, y| {
        let (i1, r1) = (x / 4, x % 4);
        let (j1, k1) = (r1 / 2, r1 % 2);
        let (i2, r2) = (y / 4, y % 4);
        let (j2, k2) = (r2 / 2, r2 % 2);
        // conjugation by c: a -> a b, b -> b; apply c^{k1} to (i2, j2)
        let (i2c, j2c) = if k1 == 0 { (i2, j2) } else { (i2, (j2 + i2) % 2) };
        let i = (i1 + i2c) % 4;
        let j = (j1 + j2c) % 2;
        let k = (k1 + k2) % 2;
        i * 4 + j * 2 + k
    })
    .unwrap()
}

/// All groups of order `<= max_order` (up to isomorphism) for `max_order <= 16`.
///
/// Used as the separating family for hom-count profiles.
pub fn groups_of_order_up_to(max_order: usize) -> Vec<FiniteGroup> {
    assert!(max_order <= 16, "catalog covers orders up to 16");
    let mut out: Vec<FiniteGroup> = Vec::new();
    let mut push = |g: FiniteGroup| {
        if g.order() <= max_order {
            out.push(g);
        }
    };
    for n in 1..=16usize {
        if n > max_order {
            break;
        }
        push(cyclic(n));
        match n {
            4 => push(elementary_abelian2(2)),
            6 => push(symmetric(3)),
            8 => {
                push(direct_product(&cyclic(4), &cyclic(2)));
                push(elementary_abelian2(3));
                push(dihedral(4));
                push(quaternion8());
            }
            9 => push(direct_product(&cyclic(3), &cyclic(3))),
            10 => push(dihedral(5)),
            12 => {
                push(direct_product(&cyclic(6), &cyclic(2)));
                push(dihedral(6));
                push(alternating4());
                push(dicyclic(3));
            }
            14 => push(dihedral(7)),
            15 => {}
            16 => {
                push(direct_product(&cyclic(4), &cyclic(4)));
                push(direct_product(&cyclic(8), &cyclic(2)));
                push(direct_product(&direct_product(&cyclic(4), &cyclic(2)), &cyclic(2)));
                push(elementary_abelian2(4));
                push(dihedral(8));
                push(semidihedral16());
                push(modular16());
                push(dicyclic(4));
                push(direct_product(&dihedral(4), &cyclic(2)));
                push(direct_product(&quaternion8(), &cyclic(2)));
                push(z4_rtimes_z4());
                push(pauli16());
                push(z4z2_rtimes_z2());
            }
            _ => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_from_perm_text() {
        let g = FiniteGroup::load("perm 3: (1 2); (1 2 3)").unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn z2_from_table_text() {
        let g = FiniteGroup::load("table: 2; 0 1; 1 0").unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn non_group_table_rejected() {
        // element 1 has no inverse
        let err = FiniteGroup::load("table: 2; 0 1; 1 1").unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn non_closed_table_rejected() {
        let err = FiniteGroup::load("table: 2; 0 1; 1 2").unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn non_associative_rejected() {
        // a "subtraction table" for Z3: has identity on the right only
        let err = FiniteGroup::from_mul_fn("bad", 3, |a, b| (a + 2 * b) % 3);
        assert!(err.is_err());
    }

    #[test]
    fn s3_conjugacy() {
        let g = symmetric(3);
        let cd = conjugacy(&g);
        let sizes: Vec<usize> = cd.w.clone();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(cd.v, vec![6, 3, 2]);
        for i in 0..cd.num_classes() {
            assert_eq!(cd.star[cd.star[i]], i);
        }
        assert_eq!(cd.star[0], 0);
    }

    #[test]
    fn z4_conjugacy_all_singletons() {
        let cd = conjugacy(&cyclic(4));
        assert_eq!(cd.w, vec![1, 1, 1, 1]);
        assert!(cd.v.iter().all(|&v| v == 4));
    }

    #[test]
    fn q8_conjugacy() {
        let cd = conjugacy(&quaternion8());
        assert_eq!(cd.w, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn inverse_lands_in_star_class() {
        for g in [symmetric(4), dihedral(4), dicyclic(3)] {
            let cd = conjugacy(&g);
            for x in 0..g.order() {
                assert_eq!(cd.class_of[g.inv(x)], cd.star[cd.class_of[x]]);
            }
        }
    }

    #[test]
    fn catalog_orders() {
        let all = groups_of_order_up_to(16);
        assert_eq!(all.iter().filter(|g| g.order() == 12).count(), 5);
        assert_eq!(all.iter().filter(|g| g.order() == 16).count(), 14);
        assert_eq!(all.iter().filter(|g| g.order() == 8).count(), 5);
    }

    /// Multiset of element orders in the abelianization G/[G,G].
    fn abelianization_orders(g: &FiniteGroup) -> Vec<usize> {
        let n = g.order();
        // commutator subgroup: closure of all [x,y]
        let mut in_comm = vec![false; n];
        in_comm[0] = true;
        let mut frontier = vec![0usize];
        let mut commutators: Vec<usize> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let c = g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)));
                commutators.push(c);
            }
        }
        while let Some(z) = frontier.pop() {
            for &c in &commutators {
                let w = g.mul(z, c);
                if !in_comm[w] {
                    in_comm[w] = true;
                    frontier.push(w);
                }
            }
        }
        let comm_size = in_comm.iter().filter(|&&b| b).count();
        let mut orders: Vec<usize> = (0..n)
            .map(|x| {
                let mut k = 1;
                let mut p = x;
                while !in_comm[p] {
                    p = g.mul(p, x);
                    k += 1;
                }
                k
            })
            .collect();
        orders.push(comm_size); // fold the commutator size into the signature
        orders.sort_unstable();
        orders
    }

    #[test]
    fn order16_groups_pairwise_distinct() {
        // crude isomorphism invariants: element orders, class sizes,
        // squares, abelianization orders
        let all = groups_of_order_up_to(16);
        let mut sigs = Vec::new();
        for g in all.iter().filter(|g| g.order() == 16) {
            let mut orders: Vec<usize> = (0..16).map(|x| g.element_order(x)).collect();
            orders.sort_unstable();
            let cd = conjugacy(g);
            let mut ws = cd.w.clone();
            ws.sort_unstable();
            let mut sq: Vec<usize> = (0..16).map(|x| g.element_order(g.mul(x, x))).collect();
            sq.sort_unstable();
            sigs.push((orders, ws, sq, abelianization_orders(g), g.name().to_string()));
        }
        for i in 0..sigs.len() {
            for j in i + 1..sigs.len() {
                assert!(
                    sigs[i].0 != sigs[j].0
                        || sigs[i].1 != sigs[j].1
                        || sigs[i].2 != sigs[j].2
                        || sigs[i].3 != sigs[j].3,
                    "{} and {} look isomorphic",
                    sigs[i].4,
                    sigs[j].4
                );
            }
        }
    }
}
