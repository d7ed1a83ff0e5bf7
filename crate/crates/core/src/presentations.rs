//! Link-group style presentations from braids and diagrams, and hom-count
//! profiles as a computable shadow of presentation equivalence.

use crate::braid::{writhe_counts, BraidWord, ColoredBraid};
use crate::error::{Error, Result};
use crate::fpgroup::{
    count_homs, free_reduce, invert_word, FPGroup, GenKind, Generator, HomCountQuery, Word,
};
use crate::group::FiniteGroup;

/// Which family of braid words / presentations to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidVariant {
    /// unframed, plain colors
    Unframed,
    /// framed, plain colors
    Framed,
    /// unframed, extended-pair colors (commuting + involution relations)
    Barred,
    /// commuting-pair colors with writhe-twisted relations
    Tilde,
}

/// Free-group context for the braid word calculus: strand generators
/// `X_1..X_n`, color generators `C_1..C_m`, and (barred/tilde) involution
/// generators `B_1..B_m`.
pub struct WordContext {
    pub n: usize,
    pub m: usize,
    pub with_b: bool,
}

impl WordContext {
    pub fn x(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        i
    }
    pub fn c(&self, j: usize) -> usize {
        debug_assert!(j < self.m);
        self.n + j
    }
    pub fn b(&self, j: usize) -> usize {
        debug_assert!(self.with_b && j < self.m);
        self.n + self.m + j
    }
    pub fn generators(&self) -> Vec<Generator> {
        let mut gens = Vec::new();
        for i in 0..self.n {
            gens.push(Generator {
                name: format!("X{}", i + 1),
                kind: GenKind::Strand,
            });
        }
        for j in 0..self.m {
            gens.push(Generator {
                name: format!("C{}", j + 1),
                kind: GenKind::Color,
            });
        }
        if self.with_b {
            for j in 0..self.m {
                gens.push(Generator {
                    name: format!("B{}", j + 1),
                    kind: GenKind::Involution,
                });
            }
        }
        gens
    }
}

/// Reduces a word in the ambient colored free product: free reduction plus
/// the color relations (same-component `C` and `B` commute; `B² = e` when
/// `involutive`). Syllables over one component collapse to `C^a B^b`.
pub fn ambient_reduce(ctx: &WordContext, involutive: bool, w: &Word) -> Word {
    // classify letters: None for strand generators, Some(j) for C_j/B_j
    let family = |gen: usize| -> Option<(usize, bool)> {
        if gen >= ctx.n && gen < ctx.n + ctx.m {
            Some((gen - ctx.n, false)) // C_j
        } else if ctx.with_b && gen >= ctx.n + ctx.m && gen < ctx.n + 2 * ctx.m {
            Some((gen - ctx.n - ctx.m, true)) // B_j
        } else {
            None
        }
    };
    let mut cur = free_reduce(w);
    loop {
        let mut out: Word = Vec::with_capacity(cur.len());
        let mut i = 0;
        let mut changed = false;
        while i < cur.len() {
            let (gen, _) = cur[i];
            match family(gen) {
                None => {
                    out.push(cur[i]);
                    i += 1;
                }
                Some((j, _)) => {
                    // collect the maximal syllable over component j
                    let mut c_exp: i64 = 0;
                    let mut b_exp: i64 = 0;
                    let start = i;
                    while i < cur.len() {
                        let (h, s) = cur[i];
                        match family(h) {
                            Some((jj, is_b)) if jj == j => {
                                if is_b {
                                    b_exp += s as i64;
                                } else {
                                    c_exp += s as i64;
                                }
                                i += 1;
                            }
                            _ => break,
                        }
                    }
                    if involutive {
                        b_exp = b_exp.rem_euclid(2);
                    }
                    let mut canonical: Word = Vec::new();
                    let cs = if c_exp >= 0 { 1i8 } else { -1 };
                    for _ in 0..c_exp.unsigned_abs() {
                        canonical.push((ctx.c(j), cs));
                    }
                    let bs = if b_exp >= 0 { 1i8 } else { -1 };
                    for _ in 0..b_exp.unsigned_abs() {
                        canonical.push((ctx.b(j), bs));
                    }
                    if canonical.len() != i - start
                        || canonical.iter().zip(&cur[start..i]).any(|(a, b)| a != b)
                    {
                        changed = true;
                    }
                    out.extend(canonical);
                }
            }
        }
        let reduced = free_reduce(&out);
        if reduced.len() != out.len() {
            changed = true;
        }
        if !changed {
            return reduced;
        }
        cur = reduced;
    }
}

/// Folds the crossing rewriting over the braid word, producing the output
/// word at every bottom position. Colors are formal component symbols.
pub fn words_from_braid(cb: &ColoredBraid, variant: BraidVariant) -> (WordContext, Vec<Word>) {
    let n = cb.braid.strands;
    let m = cb.components.len();
    let ctx = WordContext {
        n,
        m,
        with_b: matches!(variant, BraidVariant::Barred | BraidVariant::Tilde),
    };
    let mut state: Vec<Word> = (0..n).map(|i| vec![(ctx.x(i), 1)]).collect();
    let mut comp_at: Vec<usize> = cb.component_by_position();
    for &(i, sign) in &cb.braid.word {
        let (lo, hi) = (i - 1, i);
        let jp = comp_at[lo];
        let jpp = comp_at[hi];
        let zi = state[lo].clone();
        let zi1 = state[hi].clone();
        let conj_under = |prefix: Word, base: &Word, over: &Word, color: usize, csign: i8| {
            // prefix . base . over^{-1} . C^{csign} . over
            let mut w = prefix;
            w.extend_from_slice(base);
            w.extend(invert_word(over));
            w.push((ctx.c(color), csign));
            w.extend_from_slice(over);
            free_reduce(&w)
        };
        match (variant, sign > 0) {
            (BraidVariant::Unframed, true) => {
                state[lo] = conj_under(vec![], &zi1, &zi, jp, -1);
                let mut w = vec![(ctx.c(jp), 1)];
                w.extend_from_slice(&zi);
                state[hi] = free_reduce(&w);
            }
            (BraidVariant::Unframed, false) => {
                let mut w = vec![(ctx.c(jpp), -1)];
                w.extend_from_slice(&zi1);
                state[lo] = free_reduce(&w);
                state[hi] = conj_under(vec![], &zi, &zi1, jpp, 1);
            }
            (BraidVariant::Framed, true) => {
                state[lo] = conj_under(vec![], &zi1, &zi, jp, -1);
                state[hi] = zi;
            }
            (BraidVariant::Framed, false) => {
                state[lo] = zi1.clone();
                state[hi] = conj_under(vec![], &zi, &zi1, jpp, 1);
            }
            (BraidVariant::Barred, true) => {
                state[lo] = conj_under(vec![(ctx.b(jpp), 1), (ctx.c(jpp), 1)], &zi1, &zi, jp, -1);
                state[hi] = zi;
            }
            (BraidVariant::Barred, false) => {
                state[lo] = zi1.clone();
                state[hi] = conj_under(vec![(ctx.b(jp), 1), (ctx.c(jp), -1)], &zi, &zi1, jpp, 1);
            }
            (BraidVariant::Tilde, true) => {
                state[lo] = conj_under(vec![(ctx.c(jpp), 1)], &zi1, &zi, jp, -1);
                state[hi] = zi;
            }
            (BraidVariant::Tilde, false) => {
                state[lo] = zi1.clone();
                state[hi] = conj_under(vec![(ctx.c(jp), -1)], &zi, &zi1, jpp, 1);
            }
        }
        if ctx.with_b {
            let involutive = variant == BraidVariant::Barred;
            state[lo] = ambient_reduce(&ctx, involutive, &state[lo]);
            state[hi] = ambient_reduce(&ctx, involutive, &state[hi]);
        }
        comp_at.swap(lo, hi);
    }
    (ctx, state)
}

/// Builds the presented group for a colored braid:
///
/// - `Unframed`: `X_i = W_i`
/// - `Framed`:   `X_i = U_i`
/// - `Barred`:   commuting + involution color relations and `X_t = B_{j_t} W̄_t`
/// - `Tilde`:    commuting color relations and `X_t = B_{j_t}^{m_t+1} W̄_t`
pub fn presentation_from_braid(cb: &ColoredBraid, variant: BraidVariant) -> FPGroup {
    let (ctx, words) = words_from_braid(cb, variant);
    let comp_at = cb.component_by_position();
    let mut relators: Vec<Word> = Vec::new();
    if ctx.with_b {
        for j in 0..ctx.m {
            relators.push(vec![
                (ctx.c(j), 1),
                (ctx.b(j), 1),
                (ctx.c(j), -1),
                (ctx.b(j), -1),
            ]);
            if variant == BraidVariant::Barred {
                relators.push(vec![(ctx.b(j), 1), (ctx.b(j), 1)]);
            }
        }
    }
    let twists: Option<Vec<i64>> = match variant {
        BraidVariant::Tilde => Some(writhe_counts(&cb.braid).by_end),
        _ => None,
    };
    for t in 0..ctx.n {
        // relator X_t . rhs^{-1} where rhs = (twist prefix) . word_t
        let mut rhs: Word = Vec::new();
        match variant {
            BraidVariant::Barred => rhs.push((ctx.b(comp_at[t]), 1)),
            BraidVariant::Tilde => {
                // twist exponent 1 - m_t, matching the trace-side correction
                let e = 1 - twists.as_ref().unwrap()[t];
                let s = if e >= 0 { 1 } else { -1 };
                for _ in 0..e.unsigned_abs() {
                    rhs.push((ctx.b(comp_at[t]), s));
                }
            }
            _ => {}
        }
        rhs.extend_from_slice(&words[t]);
        let mut rel = vec![(ctx.x(t), 1)];
        rel.extend(invert_word(&rhs));
        relators.push(free_reduce(&rel));
    }
    FPGroup::new(ctx.generators(), relators).expect("well-formed braid presentation")
}

// ---------------------------------------------------------------------------
// Link diagrams.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
}

/// A link diagram as per-component passage itineraries plus crossing signs.
///
/// Component `c` visits its crossings in orientation order; the short arc
/// `(c, k)` runs from passage `k` to passage `k+1 (mod len)`. A component
/// with no passages is a crossing-free circle with a single arc `(c, 0)`.
#[derive(Clone, Debug)]
pub struct LinkDiagram {
    pub components: Vec<Vec<Passage>>,
    pub signs: Vec<i8>,
}

impl LinkDiagram {
    pub fn new(components: Vec<Vec<Passage>>, signs: Vec<i8>) -> Result<Self> {
        let d = LinkDiagram { components, signs };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.signs.len();
        let mut over_seen = vec![0usize; m];
        let mut under_seen = vec![0usize; m];
        for comp in &self.components {
            for p in comp {
                if p.crossing >= m {
                    return Err(Error::validation("passage references unknown crossing"));
                }
                if p.over {
                    over_seen[p.crossing] += 1;
                } else {
                    under_seen[p.crossing] += 1;
                }
            }
        }
        for x in 0..m {
            if over_seen[x] != 1 || under_seen[x] != 1 {
                return Err(Error::validation(format!(
                    "crossing {x} has {} over / {} under passages",
                    over_seen[x], under_seen[x]
                )));
            }
            if self.signs[x] != 1 && self.signs[x] != -1 {
                return Err(Error::validation("crossing sign must be ±1"));
            }
        }
        Ok(())
    }

    pub fn num_crossings(&self) -> usize {
        self.signs.len()
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Number of short arcs of component `c`.
    pub fn arcs_of(&self, c: usize) -> usize {
        self.components[c].len().max(1)
    }

    pub fn find_passage(&self, crossing: usize, over: bool) -> (usize, usize) {
        for (c, comp) in self.components.iter().enumerate() {
            for (k, p) in comp.iter().enumerate() {
                if p.crossing == crossing && p.over == over {
                    return (c, k);
                }
            }
        }
        unreachable!("validated diagram")
    }

    /// Writhe: sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Renders the `arcs:`/`crossing:` text format.
    pub fn render(&self) -> String {
        let arc_name = |c: usize, k: usize| format!("c{}a{}", c + 1, k + 1);
        let mut s = String::from("arcs:");
        for (c, comp) in self.components.iter().enumerate() {
            if c > 0 {
                s.push_str(" /");
            }
            for k in 0..self.arcs_of(c) {
                s.push(' ');
                s.push_str(&arc_name(c, k));
            }
            let _ = comp;
        }
        s.push('\n');
        for x in 0..self.num_crossings() {
            let (oc, ok) = self.find_passage(x, true);
            let (uc, uk) = self.find_passage(x, false);
            let prev = |c: usize, k: usize| (k + self.arcs_of(c) - 1) % self.arcs_of(c);
            s.push_str(&format!(
                "crossing: over={},{} under={},{} sign={}\n",
                arc_name(oc, prev(oc, ok)),
                arc_name(oc, ok),
                arc_name(uc, prev(uc, uk)),
                arc_name(uc, uk),
                if self.signs[x] > 0 { "+" } else { "-" }
            ));
        }
        s
    }

    /// Parses the `arcs:`/`crossing:` format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut arc_index: std::collections::HashMap<String, (usize, usize)> =
            std::collections::HashMap::new();
        let mut arc_counts: Vec<usize> = Vec::new();
        let mut crossings: Vec<(String, String, String, String, i8)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(v) = line.strip_prefix("arcs:") {
                for (c, comp) in v.split('/').enumerate() {
                    let mut k = 0usize;
                    for name in comp.split_whitespace() {
                        if arc_index.insert(name.to_string(), (c, k)).is_some() {
                            return Err(Error::parse(format!("duplicate arc `{name}`")));
                        }
                        k += 1;
                    }
                    if k == 0 {
                        return Err(Error::parse("component with no arcs"));
                    }
                    arc_counts.push(k);
                }
            } else if let Some(v) = line.strip_prefix("crossing:") {
                let mut over = None;
                let mut under = None;
                let mut sign = None;
                for tok in v.split_whitespace() {
                    if let Some(x) = tok.strip_prefix("over=") {
                        over = x.split_once(',').map(|(a, b)| (a.to_string(), b.to_string()));
                    } else if let Some(x) = tok.strip_prefix("under=") {
                        under = x.split_once(',').map(|(a, b)| (a.to_string(), b.to_string()));
                    } else if let Some(x) = tok.strip_prefix("sign=") {
                        sign = match x {
                            "+" | "+1" => Some(1i8),
                            "-" | "-1" => Some(-1i8),
                            _ => None,
                        };
                    }
                }
                let (o, u, s) = match (over, under, sign) {
                    (Some(o), Some(u), Some(s)) => (o, u, s),
                    _ => return Err(Error::parse(format!("malformed crossing line `{line}`"))),
                };
                crossings.push((o.0, o.1, u.0, u.1, s));
            } else {
                return Err(Error::parse(format!("unknown line `{line}`")));
            }
        }
        let mut components: Vec<Vec<Option<Passage>>> = arc_counts
            .iter()
            .map(|&k| vec![None; k])
            .collect();
        let mut signs = Vec::new();
        for (xid, (oin, oout, uin, uout, s)) in crossings.into_iter().enumerate() {
            signs.push(s);
            let mut place = |inn: &str, out: &str, over: bool| -> Result<()> {
                let &(c, k) = arc_index
                    .get(inn)
                    .ok_or_else(|| Error::parse(format!("unknown arc `{inn}`")))?;
                let &(c2, k2) = arc_index
                    .get(out)
                    .ok_or_else(|| Error::parse(format!("unknown arc `{out}`")))?;
                if c2 != c || k2 != (k + 1) % arc_counts[c] {
                    return Err(Error::validation(format!(
                        "arcs `{inn}` -> `{out}` are not consecutive"
                    )));
                }
                if components[c][k].is_some() {
                    return Err(Error::validation(format!(
                        "two crossings claim the passage after `{inn}`"
                    )));
                }
                components[c][k] = Some(Passage {
                    crossing: xid,
                    over,
                });
                Ok(())
            };
            place(&oin, &oout, true)?;
            place(&uin, &uout, false)?;
        }
        let components: Vec<Vec<Passage>> = components
            .into_iter()
            .enumerate()
            .map(|(c, comp)| {
                if comp.iter().all(|p| p.is_none()) && comp.len() == 1 {
                    Ok(Vec::new())
                } else {
                    comp.into_iter()
                        .enumerate()
                        .map(|(k, p)| {
                            p.ok_or_else(|| {
                                Error::validation(format!(
                                    "passage {k} of component {c} has no crossing"
                                ))
                            })
                        })
                        .collect()
                }
            })
            .collect::<Result<_>>()?;
        LinkDiagram::new(components, signs)
    }
}

/// Closure diagram of a braid word: one crossing per letter, strand
/// itineraries concatenated along the closure cycles.
pub fn braid_closure_diagram(b: &BraidWord) -> LinkDiagram {
    let n = b.strands;
    let mut strand_at: Vec<usize> = (0..n).collect();
    let mut per_strand: Vec<Vec<Passage>> = vec![Vec::new(); n];
    let mut signs = Vec::new();
    for (xid, &(i, sign)) in b.word.iter().enumerate() {
        signs.push(sign);
        let (sl, sr) = (strand_at[i - 1], strand_at[i]);
        let over = if sign > 0 { sl } else { sr };
        let under = if sign > 0 { sr } else { sl };
        per_strand[over].push(Passage {
            crossing: xid,
            over: true,
        });
        per_strand[under].push(Passage {
            crossing: xid,
            over: false,
        });
        strand_at.swap(i - 1, i);
    }
    let comps = b.closure_components();
    let perm = b.permutation();
    let mut components = Vec::new();
    for comp in comps {
        let start = comp[0];
        let mut itinerary = Vec::new();
        let mut s = start;
        loop {
            itinerary.extend(per_strand[s].iter().copied());
            s = perm[s];
            if s == start {
                break;
            }
        }
        components.push(itinerary);
    }
    LinkDiagram::new(components, signs).expect("closure diagram is valid")
}

/// Which diagram presentation to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramVariant {
    /// short arcs, over-arc twisted by the component color
    Unframed,
    /// short arcs, over-arc constant
    Framed,
    /// long arcs only (framed relations)
    FramedSimplified,
    /// classical meridian presentation, no color generators
    Wirtinger,
    /// Wirtinger with squared meridians
    ReflectionQuotient,
}

/// Short arc in-arc of passage `k`: arc `(c, k-1 mod L)`; out-arc: `(c, k)`.
fn arc_before(d: &LinkDiagram, c: usize, k: usize) -> usize {
    let l = d.components[c].len();
    (k + l - 1) % l
}

/// Union-find over short arcs merging across over-passages (long arcs).
/// Returns per-component arc-class ids and the class count; the ids are the
/// generator indices the long-arc presentations use.
pub fn long_arc_classes(d: &LinkDiagram) -> (Vec<Vec<usize>>, usize) {
    // arc id = offset[c] + k
    let mut offset = vec![0usize; d.num_components()];
    let mut total = 0usize;
    for c in 0..d.num_components() {
        offset[c] = total;
        total += d.arcs_of(c);
    }
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut x = x;
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for c in 0..d.num_components() {
        for (k, p) in d.components[c].iter().enumerate() {
            if p.over {
                let a = offset[c] + arc_before(d, c, k);
                let b = offset[c] + k;
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut class_of = vec![usize::MAX; total];
    let mut classes = 0usize;
    for x in 0..total {
        let r = find(&mut parent, x);
        if class_of[r] == usize::MAX {
            class_of[r] = classes;
            classes += 1;
        }
        class_of[x] = class_of[r];
    }
    let per_arc: Vec<Vec<usize>> = (0..d.num_components())
        .map(|c| (0..d.arcs_of(c)).map(|k| class_of[offset[c] + k]).collect())
        .collect();
    (per_arc, classes)
}

/// Builds the chosen presentation from a diagram.
pub fn presentation_from_diagram(d: &LinkDiagram, variant: DiagramVariant) -> FPGroup {
    let nc = d.num_components();
    use DiagramVariant::*;
    let (arc_gen, num_arc_gens): (Vec<Vec<usize>>, usize) = match variant {
        Unframed | Framed => {
            let mut offset = 0usize;
            let mut per = Vec::new();
            for c in 0..nc {
                per.push((0..d.arcs_of(c)).map(|k| offset + k).collect());
                offset += d.arcs_of(c);
            }
            (per, offset)
        }
        FramedSimplified | Wirtinger | ReflectionQuotient => long_arc_classes(d),
    };
    let with_colors = !matches!(variant, Wirtinger | ReflectionQuotient);
    let mut gens: Vec<Generator> = (0..num_arc_gens)
        .map(|i| Generator {
            name: format!("X{}", i + 1),
            kind: GenKind::Strand,
        })
        .collect();
    let color_base = gens.len();
    if with_colors {
        for j in 0..nc {
            gens.push(Generator {
                name: format!("Y{}", j + 1),
                kind: GenKind::Color,
            });
        }
    }
    let mut relators: Vec<Word> = Vec::new();
    for x in 0..d.num_crossings() {
        let (oc, ok) = d.find_passage(x, true);
        let (uc, uk) = d.find_passage(x, false);
        let sign = d.signs[x];
        let o_in = arc_gen[oc][arc_before(d, oc, ok)];
        let o_out = arc_gen[oc][ok];
        let u_in = arc_gen[uc][arc_before(d, uc, uk)];
        let u_out = arc_gen[uc][uk];
        match variant {
            Unframed | Framed => {
                let y = color_base + oc;
                if variant == Unframed {
                    // over_out = Y^{±1} over_in
                    relators.push(free_reduce(&[
                        (o_out, 1),
                        (o_in, -1),
                        (y, -sign),
                    ]));
                } else {
                    relators.push(free_reduce(&[(o_out, 1), (o_in, -1)]));
                }
                // under_out = under_in . over_in^{-1} Y^{∓1} over_in
                relators.push(free_reduce(&[
                    (u_out, 1),
                    (o_in, -1),
                    (y, sign),
                    (o_in, 1),
                    (u_in, -1),
                ]));
            }
            FramedSimplified => {
                let y = color_base + oc;
                relators.push(free_reduce(&[
                    (u_out, 1),
                    (o_in, -1),
                    (y, sign),
                    (o_in, 1),
                    (u_in, -1),
                ]));
            }
            Wirtinger | ReflectionQuotient => {
                // under_out = over^{-sign} under_in over^{sign}
                relators.push(free_reduce(&[
                    (u_out, 1),
                    (o_in, -sign),
                    (u_in, -1),
                    (o_in, sign),
                ]));
            }
        }
    }
    if variant == ReflectionQuotient {
        for c in 0..nc {
            let meridian = arc_gen[c][0];
            relators.push(vec![(meridian, 1), (meridian, 1)]);
        }
    }
    FPGroup::new(gens, relators).expect("well-formed diagram presentation")
}

// ---------------------------------------------------------------------------
// Reidemeister rewrites.
// ---------------------------------------------------------------------------

/// Adds a kink on arc `(c, k)`: a new self-crossing of the given sign.
/// `over_first` picks the chirality (whether the strand passes over on the
/// first visit).
pub fn r1_add(d: &LinkDiagram, c: usize, k: usize, sign: i8, over_first: bool) -> Result<LinkDiagram> {
    if c >= d.num_components() || k >= d.arcs_of(c) {
        return Err(Error::domain("arc out of range"));
    }
    let mut out = d.clone();
    let xid = out.signs.len();
    out.signs.push(sign);
    let insert_at = if out.components[c].is_empty() { 0 } else { k + 1 };
    out.components[c].splice(
        insert_at..insert_at,
        [
            Passage {
                crossing: xid,
                over: over_first,
            },
            Passage {
                crossing: xid,
                over: !over_first,
            },
        ],
    );
    out.validate()?;
    Ok(out)
}

/// Adds a double kink (one of each sign) on an arc: the framed move.
pub fn r1_framed_add(d: &LinkDiagram, c: usize, k: usize) -> Result<LinkDiagram> {
    let once = r1_add(d, c, k, 1, true)?;
    // the second kink lands just after the first on the same long arc
    let k2 = if d.components[c].is_empty() { 1 } else { k + 2 };
    r1_add(&once, c, k2.min(once.arcs_of(c) - 1), -1, true)
}

/// Pokes arc `(c1, k1)` over arc `(c2, k2)` (Reidemeister II). The two new
/// crossings carry opposite signs.
pub fn r2_add(
    d: &LinkDiagram,
    c1: usize,
    k1: usize,
    c2: usize,
    k2: usize,
    first_sign: i8,
) -> Result<LinkDiagram> {
    if c1 == c2 && k1 == k2 {
        return Err(Error::domain("cannot poke an arc over itself"));
    }
    if c1 >= d.num_components() || c2 >= d.num_components() {
        return Err(Error::domain("component out of range"));
    }
    let mut out = d.clone();
    let x1 = out.signs.len();
    out.signs.push(first_sign);
    let x2 = out.signs.len();
    out.signs.push(-first_sign);
    let over1 = Passage {
        crossing: x1,
        over: true,
    };
    let over2 = Passage {
        crossing: x2,
        over: true,
    };
    let under1 = Passage {
        crossing: x1,
        over: false,
    };
    let under2 = Passage {
        crossing: x2,
        over: false,
    };
    if c1 == c2 {
        // same component: insert at the later arc first
        let (ka, kb) = (k1.max(k2), k1.min(k2));
        let (pa, pb): (&[Passage], &[Passage]) = if k1 > k2 {
            (&[over1, over2], &[under1, under2])
        } else {
            (&[under1, under2], &[over1, over2])
        };
        let ia = if out.components[c1].is_empty() { 0 } else { ka + 1 };
        out.components[c1].splice(ia..ia, pa.iter().copied());
        let ib = if out.components[c1].is_empty() { 0 } else { kb + 1 };
        out.components[c1].splice(ib..ib, pb.iter().copied());
    } else {
        let i1 = if out.components[c1].is_empty() { 0 } else { k1 + 1 };
        out.components[c1].splice(i1..i1, [over1, over2]);
        let i2 = if out.components[c2].is_empty() { 0 } else { k2 + 1 };
        out.components[c2].splice(i2..i2, [under1, under2]);
    }
    out.validate()?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Hom-count profiles.
// ---------------------------------------------------------------------------

/// All constrained hom-counts of a presentation into one group: one count per
/// assignment of elements to the color generators (involution generators
/// included). Returned sorted, so profiles compare as multisets.
pub fn pinned_profile(fp: &FPGroup, g: &FiniteGroup) -> Result<Vec<u64>> {
    let colors = fp.color_generators();
    let mut counts = Vec::new();
    let mut pins = vec![0usize; colors.len()];
    loop {
        let query = HomCountQuery::element_pins(
            &colors
                .iter()
                .copied()
                .zip(pins.iter().copied())
                .collect::<Vec<_>>(),
        );
        counts.push(count_homs(fp, g, &query, None)?);
        // next tuple
        let mut i = 0;
        loop {
            if i == pins.len() {
                counts.sort_unstable();
                return Ok(counts);
            }
            pins[i] += 1;
            if pins[i] < g.order() {
                break;
            }
            pins[i] = 0;
            i += 1;
        }
    }
}

/// Profile across a family of groups.
pub fn hom_profile(fp: &FPGroup, groups: &[FiniteGroup]) -> Result<Vec<Vec<u64>>> {
    groups.iter().map(|g| pinned_profile(fp, g)).collect()
}

/// Compares hom-count profiles of several presentations of one link across a
/// family of groups; reports the first disagreement.
pub fn verify_presentation_invariance(
    presentations: &[(String, FPGroup)],
    groups: &[FiniteGroup],
) -> Result<crate::dset::Check> {
    if presentations.is_empty() {
        return Err(Error::domain("no presentations supplied"));
    }
    let base = hom_profile(&presentations[0].1, groups)?;
    for (name, fp) in &presentations[1..] {
        let p = hom_profile(fp, groups)?;
        if p != base {
            for (gi, (a, b)) in base.iter().zip(&p).enumerate() {
                if a != b {
                    return Ok(crate::dset::Check {
                        name: "presentation-profile".into(),
                        pass: false,
                        witness: Some(format!(
                            "`{}` vs `{}` differ on {}: {:?} vs {:?}",
                            presentations[0].0, name, groups[gi].name(), a, b
                        )),
                    });
                }
            }
        }
    }
    Ok(crate::dset::Check {
        name: "presentation-profile".into(),
        pass: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::Color;
    use crate::group::{cyclic, groups_of_order_up_to, symmetric};

    fn uniform(text: &str) -> ColoredBraid {
        ColoredBraid::uniform(BraidWord::parse(text).unwrap(), Color::element(0))
    }

    #[test]
    fn empty_braid_words() {
        let cb = uniform("strands: 2; word:");
        let (ctx, words) = words_from_braid(&cb, BraidVariant::Unframed);
        assert_eq!(words[0], vec![(ctx.x(0), 1)]);
        assert_eq!(words[1], vec![(ctx.x(1), 1)]);
    }

    #[test]
    fn sigma1_words_unframed() {
        // W(s1) = (X2 X1^{-1} C^{-1} X1, C X1)
        let cb = uniform("strands: 2; word: s1");
        let (ctx, words) = words_from_braid(&cb, BraidVariant::Unframed);
        let c = ctx.c(0);
        assert_eq!(
            words[0],
            vec![(ctx.x(1), 1), (ctx.x(0), -1), (c, -1), (ctx.x(0), 1)]
        );
        assert_eq!(words[1], vec![(c, 1), (ctx.x(0), 1)]);
    }

    #[test]
    fn sigma1_words_framed() {
        // U(s1) = (X2 X1^{-1} C^{-1} X1, X1)
        let cb = uniform("strands: 2; word: s1");
        let (ctx, words) = words_from_braid(&cb, BraidVariant::Framed);
        assert_eq!(
            words[0],
            vec![(ctx.x(1), 1), (ctx.x(0), -1), (ctx.c(0), -1), (ctx.x(0), 1)]
        );
        assert_eq!(words[1], vec![(ctx.x(0), 1)]);
    }

    #[test]
    fn crossing_inverse_cancels() {
        // s1 s1^{-1} folds back to the identity words in every variant
        for variant in [
            BraidVariant::Unframed,
            BraidVariant::Framed,
            BraidVariant::Barred,
            BraidVariant::Tilde,
        ] {
            let cb = uniform("strands: 2; word: s1 s1^-1");
            let (ctx, words) = words_from_braid(&cb, variant);
            assert_eq!(words[0], vec![(ctx.x(0), 1)], "{variant:?}");
            assert_eq!(words[1], vec![(ctx.x(1), 1)], "{variant:?}");
        }
    }

    #[test]
    fn kinked_unknot_framed_group_is_z() {
        // closure of s1: G = <X, C | C = e> after simplification
        let cb = uniform("strands: 2; word: s1");
        let fp = presentation_from_braid(&cb, BraidVariant::Framed);
        for g in [cyclic(5), symmetric(3)] {
            let n = count_homs(&fp, &g, &HomCountQuery::default(), None).unwrap();
            assert_eq!(n, g.order() as u64, "{}", g.name());
        }
    }

    #[test]
    fn zero_framed_unknot_group_is_free_rank2() {
        let cb = uniform("strands: 1; word:");
        let fp = presentation_from_braid(&cb, BraidVariant::Framed);
        for g in [cyclic(4), symmetric(3)] {
            let n = count_homs(&fp, &g, &HomCountQuery::default(), None).unwrap();
            assert_eq!(n, (g.order() * g.order()) as u64);
        }
    }

    #[test]
    fn trefoil_unframed_presentation_shape() {
        let cb = uniform("strands: 2; word: s1 s1 s1");
        let fp = presentation_from_braid(&cb, BraidVariant::Unframed);
        // 2 strand generators + 1 color generator, 2 relations
        assert_eq!(fp.num_gens(), 3);
        assert_eq!(fp.relators.len(), 2);
    }

    #[test]
    fn diagram_round_trip() {
        let b = BraidWord::parse("strands: 2; word: s1 s1 s1").unwrap();
        let d = braid_closure_diagram(&b);
        let text = d.render();
        let d2 = LinkDiagram::parse(&text).unwrap();
        assert_eq!(d2.num_crossings(), 3);
        assert_eq!(d2.num_components(), 1);
        let p1 = presentation_from_diagram(&d, DiagramVariant::Framed);
        let p2 = presentation_from_diagram(&d2, DiagramVariant::Framed);
        let g = symmetric(3);
        assert_eq!(
            pinned_profile(&p1, &g).unwrap(),
            pinned_profile(&p2, &g).unwrap()
        );
    }

    #[test]
    fn crossingless_circle_presentations() {
        let d = LinkDiagram::new(vec![vec![]], vec![]).unwrap();
        let fp = presentation_from_diagram(&d, DiagramVariant::Unframed);
        // one arc + one color, no relations: free of rank 2
        assert_eq!(fp.num_gens(), 2);
        assert!(fp.relators.is_empty());
        let w = presentation_from_diagram(&d, DiagramVariant::Wirtinger);
        assert_eq!(w.num_gens(), 1);
        let r = presentation_from_diagram(&d, DiagramVariant::ReflectionQuotient);
        let g = symmetric(3);
        // R pi(unknot) = Z/2: homs = involutions + identity
        assert_eq!(count_homs(&r, &g, &HomCountQuery::default(), None).unwrap(), 4);
    }

    #[test]
    fn wirtinger_trefoil_hom_count() {
        let b = BraidWord::parse("strands: 2; word: s1 s1 s1").unwrap();
        let d = braid_closure_diagram(&b);
        let fp = presentation_from_diagram(&d, DiagramVariant::Wirtinger);
        let g = symmetric(3);
        // oracle: pairs (a,b) in S3^2 with aba = bab
        let mut oracle = 0u64;
        for a in 0..6 {
            for b_ in 0..6 {
                let lhs = g.mul(g.mul(a, b_), a);
                let rhs = g.mul(g.mul(b_, a), b_);
                if lhs == rhs {
                    oracle += 1;
                }
            }
        }
        assert_eq!(
            count_homs(&fp, &g, &HomCountQuery::default(), None).unwrap(),
            oracle
        );
    }

    #[test]
    fn braid_vs_diagram_calibration_trefoil() {
        let cb = uniform("strands: 2; word: s1 s1 s1");
        let d = braid_closure_diagram(&cb.braid);
        let groups = groups_of_order_up_to(8);
        for (bv, dv) in [
            (BraidVariant::Unframed, DiagramVariant::Unframed),
            (BraidVariant::Framed, DiagramVariant::Framed),
            (BraidVariant::Framed, DiagramVariant::FramedSimplified),
        ] {
            let pb = presentation_from_braid(&cb, bv);
            let pd = presentation_from_diagram(&d, dv);
            let check =
                verify_presentation_invariance(&[("braid".into(), pb), ("diagram".into(), pd)], &groups)
                    .unwrap();
            assert!(check.pass, "{bv:?}/{dv:?}: {:?}", check.witness);
        }
    }

    #[test]
    fn reidemeister_profiles_trefoil() {
        let b = BraidWord::parse("strands: 2; word: s1 s1 s1").unwrap();
        let d = braid_closure_diagram(&b);
        let groups = groups_of_order_up_to(8);
        let base_unframed = presentation_from_diagram(&d, DiagramVariant::Unframed);
        let base_framed = presentation_from_diagram(&d, DiagramVariant::FramedSimplified);

        // R1 preserves the unframed profile
        for sign in [1i8, -1] {
            for over_first in [true, false] {
                let moved = r1_add(&d, 0, 1, sign, over_first).unwrap();
                let p = presentation_from_diagram(&moved, DiagramVariant::Unframed);
                let check = verify_presentation_invariance(
                    &[("base".into(), base_unframed.clone()), ("r1".into(), p)],
                    &groups,
                )
                .unwrap();
                assert!(check.pass, "R1 {sign} {over_first}: {:?}", check.witness);
            }
        }
        // R1' (double kink) preserves the framed profile
        let moved = r1_framed_add(&d, 0, 1).unwrap();
        let p = presentation_from_diagram(&moved, DiagramVariant::FramedSimplified);
        let check = verify_presentation_invariance(
            &[("base".into(), base_framed.clone()), ("r1'".into(), p)],
            &groups,
        )
        .unwrap();
        assert!(check.pass, "R1': {:?}", check.witness);

        // R2 preserves both
        let moved = r2_add(&d, 0, 0, 0, 3, 1).unwrap();
        for (variant, base) in [
            (DiagramVariant::Unframed, &base_unframed),
            (DiagramVariant::FramedSimplified, &base_framed),
        ] {
            let p = presentation_from_diagram(&moved, variant);
            let check = verify_presentation_invariance(
                &[("base".into(), base.clone()), ("r2".into(), p)],
                &groups,
            )
            .unwrap();
            assert!(check.pass, "R2 {variant:?}: {:?}", check.witness);
        }
    }

    #[test]
    fn r3_via_braid_relation() {
        // the two sides of the braid relation close to R3-equivalent diagrams
        let lhs = BraidWord::parse("strands: 3; word: s1 s2 s1 s1").unwrap();
        let rhs = BraidWord::parse("strands: 3; word: s2 s1 s2 s1").unwrap();
        let groups = groups_of_order_up_to(8);
        for variant in [DiagramVariant::Unframed, DiagramVariant::FramedSimplified] {
            let p1 = presentation_from_diagram(&braid_closure_diagram(&lhs), variant);
            let p2 = presentation_from_diagram(&braid_closure_diagram(&rhs), variant);
            let check = verify_presentation_invariance(
                &[("lhs".into(), p1), ("rhs".into(), p2)],
                &groups,
            )
            .unwrap();
            assert!(check.pass, "{variant:?}: {:?}", check.witness);
        }
    }

    #[test]
    fn markov_moves_preserve_profiles() {
        let cb = uniform("strands: 2; word: s1 s1 s1");
        let groups = groups_of_order_up_to(8);
        let conjugator = BraidWord::parse("strands: 2; word: s1").unwrap();
        // conjugation preserves every variant's profile
        for variant in [
            BraidVariant::Unframed,
            BraidVariant::Framed,
            BraidVariant::Barred,
            BraidVariant::Tilde,
        ] {
            let base = presentation_from_braid(&cb, variant);
            let conj = crate::braid::markov_conjugate(&cb, &conjugator).unwrap();
            let p1 = presentation_from_braid(&conj, variant);
            let check = verify_presentation_invariance(
                &[("base".into(), base), ("conj".into(), p1)],
                &groups,
            )
            .unwrap();
            assert!(check.pass, "{variant:?} conj: {:?}", check.witness);
        }
        // stabilization preserves the link-invariant variants (framed is a
        // framed-link invariant only: stabilization is a Kirby-I move there)
        for variant in [
            BraidVariant::Unframed,
            BraidVariant::Barred,
            BraidVariant::Tilde,
        ] {
            let base = presentation_from_braid(&cb, variant);
            for sign in [1i8, -1] {
                let stab = crate::braid::markov_stabilize(&cb, sign).unwrap();
                let p2 = presentation_from_braid(&stab, variant);
                let check = verify_presentation_invariance(
                    &[("base".into(), base.clone()), ("stab".into(), p2)],
                    &groups,
                )
                .unwrap();
                assert!(check.pass, "{variant:?} stab {sign}: {:?}", check.witness);
            }
        }
    }

    #[test]
    fn unknot_vs_trefoil_profiles_differ() {
        let unknot = uniform("strands: 1; word:");
        let trefoil = uniform("strands: 2; word: s1 s1 s1");
        let groups = groups_of_order_up_to(8);
        let p1 = presentation_from_braid(&unknot, BraidVariant::Unframed);
        let p2 = presentation_from_braid(&trefoil, BraidVariant::Unframed);
        let a = hom_profile(&p1, &groups).unwrap();
        let b = hom_profile(&p2, &groups).unwrap();
        assert_ne!(a, b);
    }
}
