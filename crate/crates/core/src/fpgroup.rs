//! Finitely presented groups and constrained homomorphism counting.
//!
//! Counting is exact backtracking over assignments of the unpinned
//! generators, after a limited Tietze simplification (eliminate a strand
//! generator that occurs exactly once in some relator, free-reduce). Relators
//! are checked as soon as all their generators are assigned.

use crate::error::{Error, Result};
use crate::group::{ConjugacyData, FiniteGroup};
use rayon::prelude::*;
use std::collections::HashMap;

/// A group word: letters `(generator index, ±1)`.
pub type Word = Vec<(usize, i8)>;

pub fn invert_word(w: &[(usize, i8)]) -> Word {
    w.iter().rev().map(|&(g, s)| (g, -s)).collect()
}

pub fn free_reduce(w: &[(usize, i8)]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &(g, s) in w {
        if let Some(&(h, t)) = out.last() {
            if h == g && t == -s {
                out.pop();
                continue;
            }
        }
        out.push((g, s));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// arc / strand generators, fair game for elimination
    Strand,
    /// color generators (pinnable)
    Color,
    /// involution generators paired with colors (pinnable)
    Involution,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub kind: GenKind,
}

#[derive(Clone, Debug)]
pub struct FPGroup {
    pub gens: Vec<Generator>,
    pub relators: Vec<Word>,
}

impl FPGroup {
    pub fn new(gens: Vec<Generator>, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            for &(g, _) in r {
                if g >= gens.len() {
                    return Err(Error::validation(format!(
                        "relator references undeclared generator {g}"
                    )));
                }
            }
        }
        Ok(FPGroup {
            gens,
            relators: relators.iter().map(|r| free_reduce(r)).collect(),
        })
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn color_generators(&self) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|&i| self.gens[i].kind != GenKind::Strand)
            .collect()
    }

    /// Plain text export: `generators:` line then one relator per line.
    pub fn render(&self) -> String {
        let mut s = String::from("generators:");
        for g in &self.gens {
            s.push(' ');
            s.push_str(&g.name);
        }
        s.push('\n');
        for r in &self.relators {
            s.push_str("relator:");
            for &(g, sign) in r {
                s.push(' ');
                s.push_str(&self.gens[g].name);
                if sign < 0 {
                    s.push_str("^-1");
                }
            }
            s.push('\n');
        }
        s
    }

    /// Tietze-style elimination of strand generators: when some relator
    /// contains a strand generator exactly once, solve for it, substitute
    /// everywhere, and drop the relator. Pinnable generators are kept.
    pub fn simplified(&self) -> FPGroup {
        let mut relators: Vec<Word> = self.relators.clone();
        let mut alive: Vec<bool> = vec![true; self.gens.len()];
        loop {
            let mut target: Option<(usize, usize)> = None;
            'scan: for (ri, r) in relators.iter().enumerate() {
                for &(g, _) in r.iter() {
                    if self.gens[g].kind != GenKind::Strand || !alive[g] {
                        continue;
                    }
                    let occurrences = r.iter().filter(|&&(h, _)| h == g).count();
                    if occurrences == 1 {
                        target = Some((ri, g));
                        break 'scan;
                    }
                }
            }
            let Some((ri, g)) = target else { break };
            let r = relators[ri].clone();
            let pos = r.iter().position(|&(h, _)| h == g).unwrap();
            let (u, rest) = r.split_at(pos);
            let sign = rest[0].1;
            let v = &rest[1..];
            // u g v = e  =>  g = u^{-1} v^{-1};  u g^{-1} v = e  =>  g = v u
            let replacement: Word = if sign > 0 {
                let mut w = v.to_vec();
                w.extend_from_slice(u);
                invert_word(&w)
            } else {
                let mut w = v.to_vec();
                w.extend_from_slice(u);
                w
            };
            relators.remove(ri);
            for r in relators.iter_mut() {
                let mut out: Word = Vec::with_capacity(r.len());
                for &(h, s) in r.iter() {
                    if h == g {
                        if s > 0 {
                            out.extend_from_slice(&replacement);
                        } else {
                            out.extend(invert_word(&replacement));
                        }
                    } else {
                        out.push((h, s));
                    }
                }
                *r = free_reduce(&out);
            }
            alive[g] = false;
            relators.retain(|r| !r.is_empty());
        }
        // reindex
        let mut remap = vec![usize::MAX; self.gens.len()];
        let mut gens = Vec::new();
        for (i, a) in alive.iter().enumerate() {
            if *a {
                remap[i] = gens.len();
                gens.push(self.gens[i].clone());
            }
        }
        let relators = relators
            .into_iter()
            .map(|r| r.into_iter().map(|(g, s)| (remap[g], s)).collect())
            .collect();
        FPGroup { gens, relators }
    }
}

/// A pin on a color generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pin {
    Element(usize),
    Class(usize),
}

/// A constrained hom-count query.
#[derive(Clone, Debug, Default)]
pub struct HomCountQuery {
    pub pins: Vec<(usize, Pin)>,
}

impl HomCountQuery {
    pub fn element_pins(pins: &[(usize, usize)]) -> Self {
        HomCountQuery {
            pins: pins.iter().map(|&(g, x)| (g, Pin::Element(x))).collect(),
        }
    }
}

/// Guard for the raw search space |G|^(#unpinned).
pub const DEFAULT_HOM_GUARD: f64 = 1e10;

fn eval_word(g: &FiniteGroup, w: &[(usize, i8)], assign: &[u16]) -> usize {
    let mut acc = 0usize;
    for &(gen, s) in w {
        let x = assign[gen] as usize;
        acc = g.mul(acc, if s > 0 { x } else { g.inv(x) });
    }
    acc
}

struct SearchPlan {
    /// generator assignment order (unpinned only)
    order: Vec<usize>,
    /// relators grouped by the search depth at which they become checkable
    checks_at: Vec<Vec<Word>>,
    /// relators checkable before any branching (pins only)
    immediate: Vec<Word>,
}

fn plan_search(fp: &FPGroup, pinned: &[bool]) -> SearchPlan {
    let n = fp.num_gens();
    let mut assigned: Vec<bool> = pinned.to_vec();
    let mut remaining: Vec<usize> = (0..n).filter(|&i| !pinned[i]).collect();
    let mut pending: Vec<&Word> = fp.relators.iter().collect();
    let mut immediate = Vec::new();
    pending.retain(|r| {
        if r.iter().all(|&(g, _)| assigned[g]) {
            immediate.push((*r).clone());
            false
        } else {
            true
        }
    });
    let mut order = Vec::new();
    let mut checks_at: Vec<Vec<Word>> = Vec::new();
    while !remaining.is_empty() {
        // pick the generator finishing the most pending relators, then the
        // one occurring most often
        let (best_idx, _) = remaining
            .iter()
            .enumerate()
            .map(|(pos, &g)| {
                let finishes = pending
                    .iter()
                    .filter(|r| {
                        r.iter().all(|&(h, _)| assigned[h] || h == g)
                            && r.iter().any(|&(h, _)| h == g)
                    })
                    .count();
                let occurs = pending
                    .iter()
                    .filter(|r| r.iter().any(|&(h, _)| h == g))
                    .count();
                (pos, (finishes, occurs, std::cmp::Reverse(g)))
            })
            .max_by_key(|&(_, k)| k)
            .unwrap();
        let g = remaining.swap_remove(best_idx);
        assigned[g] = true;
        order.push(g);
        let mut now = Vec::new();
        pending.retain(|r| {
            if r.iter().all(|&(h, _)| assigned[h]) {
                now.push((*r).clone());
                false
            } else {
                true
            }
        });
        checks_at.push(now);
    }
    SearchPlan {
        order,
        checks_at,
        immediate,
    }
}

fn dfs_count(
    g: &FiniteGroup,
    plan: &SearchPlan,
    assign: &mut Vec<u16>,
    depth: usize,
) -> u64 {
    if depth == plan.order.len() {
        return 1;
    }
    let gen = plan.order[depth];
    let mut total = 0u64;
    'values: for x in 0..g.order() {
        assign[gen] = x as u16;
        for r in &plan.checks_at[depth] {
            if eval_word(g, r, assign) != 0 {
                continue 'values;
            }
        }
        total += dfs_count(g, plan, assign, depth + 1);
    }
    total
}

/// Counts homomorphisms `fp -> G` respecting the pins. Class pins sum the
/// element-pinned counts over the class.
pub fn count_homs(
    fp: &FPGroup,
    g: &FiniteGroup,
    query: &HomCountQuery,
    cd: Option<&ConjugacyData>,
) -> Result<u64> {
    count_homs_guarded(fp, g, query, cd, DEFAULT_HOM_GUARD)
}

pub fn count_homs_guarded(
    fp: &FPGroup,
    g: &FiniteGroup,
    query: &HomCountQuery,
    cd: Option<&ConjugacyData>,
    guard: f64,
) -> Result<u64> {
    // split off class pins
    let mut element_pins: Vec<(usize, usize)> = Vec::new();
    let mut class_pins: Vec<(usize, usize)> = Vec::new();
    for &(gen, pin) in &query.pins {
        if gen >= fp.num_gens() {
            return Err(Error::domain(format!("pin on undeclared generator {gen}")));
        }
        if fp.gens[gen].kind == GenKind::Strand {
            return Err(Error::domain("pins only apply to color generators"));
        }
        match pin {
            Pin::Element(x) => {
                if x >= g.order() {
                    return Err(Error::domain("pinned element out of range"));
                }
                element_pins.push((gen, x));
            }
            Pin::Class(c) => class_pins.push((gen, c)),
        }
    }
    if let Some((gen, c)) = class_pins.first().copied() {
        let cd = cd.ok_or_else(|| Error::domain("class pin requires conjugacy data"))?;
        if c >= cd.num_classes() {
            return Err(Error::domain("pinned class out of range"));
        }
        let mut total = 0u64;
        for &x in &cd.classes[c] {
            let mut sub = query.clone();
            for p in sub.pins.iter_mut() {
                if p.0 == gen {
                    *p = (gen, Pin::Element(x));
                }
            }
            total += count_homs_guarded(fp, g, &sub, Some(cd), guard)?;
        }
        return Ok(total);
    }

    // simplify first: elimination happens on strand generators only, so the
    // pinned generators survive
    let simplified = fp.simplified_with_map();
    let (fp, gen_map) = (&simplified.0, &simplified.1);
    let n = fp.num_gens();
    let mut pinned = vec![false; n];
    let mut assign = vec![0u16; n];
    for &(gen, x) in &element_pins {
        let new_gen = gen_map[gen]
            .ok_or_else(|| Error::domain("pinned generator was eliminated"))?;
        pinned[new_gen] = true;
        assign[new_gen] = x as u16;
    }
    let unpinned = pinned.iter().filter(|&&p| !p).count();
    if (g.order() as f64).powi(unpinned as i32) > guard {
        return Err(Error::guard(format!(
            "search space |G|^{unpinned} exceeds guard"
        )));
    }
    let plan = plan_search(fp, &pinned);
    for r in &plan.immediate {
        if eval_word(g, r, &assign) != 0 {
            return Ok(0);
        }
    }
    if plan.order.is_empty() {
        return Ok(1);
    }
    // parallelize over the first generator's value
    let first = plan.order[0];
    let total: u64 = (0..g.order())
        .into_par_iter()
        .map(|x| {
            let mut local = assign.clone();
            local[first] = x as u16;
            for r in &plan.checks_at[0] {
                if eval_word(g, r, &local) != 0 {
                    return 0;
                }
            }
            dfs_count(g, &plan, &mut local, 1)
        })
        .sum();
    Ok(total)
}

impl FPGroup {
    /// Like [`FPGroup::simplified`] but also returns old-index -> new-index.
    pub fn simplified_with_map(&self) -> (FPGroup, Vec<Option<usize>>) {
        // rerun the simplification while tracking the survivors by name
        let s = self.simplified();
        let mut map = vec![None; self.gens.len()];
        // names are unique per presentation by construction
        let lookup: HashMap<&str, usize> = s
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.as_str(), i))
            .collect();
        for (i, g) in self.gens.iter().enumerate() {
            map[i] = lookup.get(g.name.as_str()).copied();
        }
        (s, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};

    fn strand(name: &str) -> Generator {
        Generator {
            name: name.into(),
            kind: GenKind::Strand,
        }
    }

    #[test]
    fn free_group_counts() {
        let fp = FPGroup::new(vec![strand("a"), strand("b")], vec![]).unwrap();
        let g = symmetric(3);
        assert_eq!(
            count_homs(&fp, &g, &HomCountQuery::default(), None).unwrap(),
            36
        );
    }

    #[test]
    fn commutator_into_s3() {
        // <a,b | [a,b]> -> S3 counts commuting pairs: 6*2 + ... = 18
        let fp = FPGroup::new(
            vec![strand("a"), strand("b")],
            vec![vec![(0, 1), (1, 1), (0, -1), (1, -1)]],
        )
        .unwrap();
        let g = symmetric(3);
        assert_eq!(
            count_homs(&fp, &g, &HomCountQuery::default(), None).unwrap(),
            18
        );
    }

    #[test]
    fn involution_into_s3() {
        // <a | a^2> -> S3: identity + three transpositions
        let fp = FPGroup::new(vec![strand("a")], vec![vec![(0, 1), (0, 1)]]).unwrap();
        let g = symmetric(3);
        assert_eq!(
            count_homs(&fp, &g, &HomCountQuery::default(), None).unwrap(),
            4
        );
    }

    #[test]
    fn extra_free_generator_multiplies() {
        let base = FPGroup::new(
            vec![strand("a")],
            vec![vec![(0, 1), (0, 1), (0, 1)]],
        )
        .unwrap();
        let more = FPGroup::new(
            vec![strand("a"), strand("z")],
            vec![vec![(0, 1), (0, 1), (0, 1)]],
        )
        .unwrap();
        let g = symmetric(3);
        let q = HomCountQuery::default();
        assert_eq!(
            count_homs(&more, &g, &q, None).unwrap(),
            6 * count_homs(&base, &g, &q, None).unwrap()
        );
    }

    #[test]
    fn pins_respected() {
        let fp = FPGroup::new(
            vec![
                strand("x"),
                Generator {
                    name: "C".into(),
                    kind: GenKind::Color,
                },
            ],
            vec![vec![(0, 1), (1, 1), (0, -1), (1, -1)]],
        )
        .unwrap();
        let g = symmetric(3);
        // pin C to a transposition: x must centralize it: |C_G(t)| = 2
        let q = HomCountQuery::element_pins(&[(1, 1)]);
        let t = g.element_order(1);
        assert_eq!(t, 2);
        assert_eq!(count_homs(&fp, &g, &q, None).unwrap(), 2);
    }

    #[test]
    fn class_pin_sums() {
        let fp = FPGroup::new(
            vec![Generator {
                name: "C".into(),
                kind: GenKind::Color,
            }],
            vec![],
        )
        .unwrap();
        let g = symmetric(3);
        let cd = crate::group::conjugacy(&g);
        let ti = (0..3).find(|&i| cd.w[i] == 3).unwrap();
        let q = HomCountQuery {
            pins: vec![(0, Pin::Class(ti))],
        };
        assert_eq!(count_homs(&fp, &g, &q, Some(&cd)).unwrap(), 3);
    }

    #[test]
    fn simplification_eliminates() {
        // <a, b | b a^{-1}> ~ free of rank 1
        let fp = FPGroup::new(
            vec![strand("a"), strand("b")],
            vec![vec![(1, 1), (0, -1)]],
        )
        .unwrap();
        let s = fp.simplified();
        assert_eq!(s.num_gens(), 1);
        assert!(s.relators.is_empty());
        let g = cyclic(5);
        assert_eq!(
            count_homs(&fp, &g, &HomCountQuery::default(), None).unwrap(),
            5
        );
    }

    #[test]
    fn guard_fires() {
        let gens: Vec<Generator> = (0..12).map(|i| strand(&format!("g{i}"))).collect();
        let fp = FPGroup::new(gens, vec![]).unwrap();
        let g = symmetric(4);
        let err = count_homs(&fp, &g, &HomCountQuery::default(), None).unwrap_err();
        assert!(matches!(err, Error::Guard(_)));
    }

    proptest::proptest! {
        #[test]
        fn reduction_and_inversion_laws(raw in proptest::collection::vec((0usize..4, proptest::bool::ANY), 0..24)) {
            let w: Word = raw.into_iter().map(|(g, s)| (g, if s { 1 } else { -1 })).collect();
            let r = free_reduce(&w);
            // idempotent
            proptest::prop_assert_eq!(&free_reduce(&r), &r);
            // w . w^{-1} reduces to nothing
            let mut both = w.clone();
            both.extend(invert_word(&w));
            proptest::prop_assert!(free_reduce(&both).is_empty());
            // inversion is an involution
            proptest::prop_assert_eq!(invert_word(&invert_word(&w)), w);
        }
    }

    #[test]
    fn render_names() {
        let fp = FPGroup::new(
            vec![strand("X1"), strand("X2")],
            vec![vec![(0, 1), (1, -1)]],
        )
        .unwrap();
        let s = fp.render();
        assert!(s.contains("generators: X1 X2"));
        assert!(s.contains("relator: X1 X2^-1"));
    }
}
