//! Sliced, oriented, colored tangle diagrams and the functor evaluations.
//!
//! A sliced tangle is a stack of layers, each holding one elementary piece
//! (crossing, cap, cup) at a horizontal position, identities elsewhere.
//! Evaluation composes the piece maps top to bottom as sparse relations over
//! group bases. Crossings are elementary only for downward strands; a
//! crossing met by an upward arc is evaluated through its rotated slicing
//! (cap, reversed crossing, cup), which is how such diagrams are sliced in
//! the first place.

use crate::braid::{parse_color, Color, ColoredBraid};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rmatrix::TensorMap;
use std::collections::BTreeMap;

pub const WIDTH_GUARD: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceKind {
    XPos,
    XNeg,
    CapR,
    CapL,
    CupR,
    CupL,
    Identity,
}

/// A pair color `(g, b)`; plain-`G` coloring uses `b = e`.
pub type PairColor = (usize, usize);

#[derive(Clone, Copy, Debug)]
pub struct Layer {
    pub kind: PieceKind,
    /// 1-based leftmost position the piece occupies
    pub pos: usize,
    /// color carried by a cap (the piece that creates strands)
    pub cap_color: Option<PairColor>,
}

/// One boundary point: (color, orientation sign).
pub type BoundaryPoint = (PairColor, i8);

#[derive(Clone, Debug)]
pub struct SlicedTangle {
    pub top: Vec<BoundaryPoint>,
    pub layers: Vec<Layer>,
}

impl SlicedTangle {
    pub fn closed(layers: Vec<Layer>) -> Self {
        SlicedTangle {
            top: Vec::new(),
            layers,
        }
    }

    /// Boundary sequences at every interface (layer `k` maps interface `k`
    /// to interface `k+1`); validates piece applicability as it goes.
    pub fn boundaries(&self) -> Result<Vec<Vec<BoundaryPoint>>> {
        let mut out = vec![self.top.clone()];
        for (li, layer) in self.layers.iter().enumerate() {
            let cur = out.last().unwrap();
            let mut next = cur.clone();
            let p = layer.pos;
            let width = cur.len();
            let fail = |msg: String| Error::validation(format!("layer {}: {msg}", li + 1));
            match layer.kind {
                PieceKind::Identity => {}
                PieceKind::XPos | PieceKind::XNeg => {
                    if p == 0 || p + 1 > width {
                        return Err(fail(format!("crossing at {p} does not fit width {width}")));
                    }
                    next.swap(p - 1, p);
                }
                PieceKind::CapR | PieceKind::CapL => {
                    let c = layer
                        .cap_color
                        .ok_or_else(|| fail("cap needs a color".into()))?;
                    if p == 0 || p > width + 1 {
                        return Err(fail(format!("cap at {p} out of range")));
                    }
                    let pair = if layer.kind == PieceKind::CapR {
                        [(c, -1), (c, 1)]
                    } else {
                        [(c, 1), (c, -1)]
                    };
                    next.splice(p - 1..p - 1, pair);
                }
                PieceKind::CupR | PieceKind::CupL => {
                    if p == 0 || p + 1 > width {
                        return Err(fail(format!("cup at {p} does not fit width {width}")));
                    }
                    let (a, b) = (cur[p - 1], cur[p]);
                    let want = if layer.kind == PieceKind::CupR {
                        (1, -1)
                    } else {
                        (-1, 1)
                    };
                    if (a.1, b.1) != want {
                        return Err(fail(format!(
                            "cup orientation mismatch: ({}, {})",
                            a.1, b.1
                        )));
                    }
                    if a.0 != b.0 {
                        return Err(fail("cup joins arcs of different colors".into()));
                    }
                    next.splice(p - 1..p + 1, []);
                }
            }
            out.push(next);
        }
        Ok(out)
    }

    pub fn bottom(&self) -> Result<Vec<BoundaryPoint>> {
        Ok(self.boundaries()?.pop().unwrap())
    }

    /// Connected components of the underlying 1-manifold: returns, for each
    /// interface point `(interface, position)`, its component id, plus the
    /// component count.
    pub fn components(&self) -> Result<(Vec<Vec<usize>>, usize)> {
        let bnds = self.boundaries()?;
        let mut offsets = vec![0usize];
        for b in &bnds {
            offsets.push(offsets.last().unwrap() + b.len());
        }
        let total = *offsets.last().unwrap();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            p[ra] = rb;
        };
        for (li, layer) in self.layers.iter().enumerate() {
            let w = bnds[li].len();
            let at = |pos: usize| offsets[li] + pos; // 0-based
            let below = |pos: usize| offsets[li + 1] + pos;
            let p = layer.pos;
            match layer.kind {
                PieceKind::Identity => {
                    for q in 0..w {
                        union(&mut parent, at(q), below(q));
                    }
                }
                PieceKind::XPos | PieceKind::XNeg => {
                    for q in 0..w {
                        let tgt = if q == p - 1 {
                            p
                        } else if q == p {
                            p - 1
                        } else {
                            q
                        };
                        union(&mut parent, at(q), below(tgt));
                    }
                }
                PieceKind::CapR | PieceKind::CapL => {
                    for q in 0..w {
                        let tgt = if q < p - 1 { q } else { q + 2 };
                        union(&mut parent, at(q), below(tgt));
                    }
                    union(&mut parent, below(p - 1), below(p));
                }
                PieceKind::CupR | PieceKind::CupL => {
                    union(&mut parent, at(p - 1), at(p));
                    for q in 0..w {
                        if q == p - 1 || q == p {
                            continue;
                        }
                        let tgt = if q < p - 1 { q } else { q - 2 };
                        union(&mut parent, at(q), below(tgt));
                    }
                }
            }
        }
        // color consistency per component
        let mut rep_color: BTreeMap<usize, PairColor> = BTreeMap::new();
        for (li, b) in bnds.iter().enumerate() {
            for (q, &(color, _)) in b.iter().enumerate() {
                let r = find(&mut parent, offsets[li] + q);
                if let Some(&c0) = rep_color.get(&r) {
                    if c0 != color {
                        return Err(Error::validation(format!(
                            "component colored inconsistently: {c0:?} vs {color:?}"
                        )));
                    }
                } else {
                    rep_color.insert(r, color);
                }
            }
        }
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut per_interface = Vec::new();
        for (li, b) in bnds.iter().enumerate() {
            let mut row = Vec::new();
            for q in 0..b.len() {
                let r = find(&mut parent, offsets[li] + q);
                let next_id = ids.len();
                let id = *ids.entry(r).or_insert(next_id);
                row.push(id);
            }
            per_interface.push(row);
        }
        Ok((per_interface, ids.len()))
    }

    /// Reverses one component: flips its orientation marks, inverts its color
    /// (using the group for inversion), and swaps cap/cup chirality labels on
    /// that component.
    pub fn reverse_component_with(
        &self,
        g: &FiniteGroup,
        comp: usize,
    ) -> Result<SlicedTangle> {
        let (per_interface, count) = self.components()?;
        if comp >= count {
            return Err(Error::domain("component index out of range"));
        }
        let invert = |c: PairColor| (g.inv(c.0), g.inv(c.1));
        let mut out = self.clone();
        for (q, pt) in out.top.iter_mut().enumerate() {
            if per_interface[0][q] == comp {
                pt.1 = -pt.1;
                pt.0 = invert(pt.0);
            }
        }
        for (li, layer) in out.layers.iter_mut().enumerate() {
            match layer.kind {
                PieceKind::CapR | PieceKind::CapL => {
                    // the cap's points live at interface li+1, positions pos-1, pos
                    if per_interface[li + 1][layer.pos - 1] == comp {
                        layer.kind = if layer.kind == PieceKind::CapR {
                            PieceKind::CapL
                        } else {
                            PieceKind::CapR
                        };
                        layer.cap_color = layer.cap_color.map(invert);
                    }
                }
                PieceKind::CupR | PieceKind::CupL => {
                    if per_interface[li][layer.pos - 1] == comp {
                        layer.kind = if layer.kind == PieceKind::CupR {
                            PieceKind::CupL
                        } else {
                            PieceKind::CupR
                        };
                    }
                }
                _ => {}
            }
        }
        Ok(out)
    }

    /// Parses the one-layer-per-line DSL:
    ///
    /// ```text
    /// top: (g,+) (h,-)        # optional; closed tangles omit it
    /// X+ @1
    /// capR @2 color=(g,b)
    /// cupL @1
    /// | @1..3                 # identity layer
    /// ```
    pub fn parse(text: &str, group: Option<&FiniteGroup>) -> Result<SlicedTangle> {
        let mut top = Vec::new();
        let mut layers = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(v) = line.strip_prefix("top:") {
                for tok in v.split_whitespace() {
                    let inner = tok
                        .strip_prefix('(')
                        .and_then(|s| s.strip_suffix(')'))
                        .ok_or_else(|| Error::parse(format!("bad boundary point `{tok}`")))?;
                    let (c, s) = inner
                        .rsplit_once(',')
                        .ok_or_else(|| Error::parse(format!("bad boundary point `{tok}`")))?;
                    let sign = match s.trim() {
                        "+" | "+1" => 1i8,
                        "-" | "-1" => -1i8,
                        other => return Err(Error::parse(format!("bad sign `{other}`"))),
                    };
                    let color = match parse_color(c, group)? {
                        Color::Pair { g, b } => (g, b),
                        Color::Class(_) => {
                            return Err(Error::parse("class colors not allowed on tangles"))
                        }
                    };
                    top.push((color, sign));
                }
                continue;
            }
            let mut toks = line.split_whitespace();
            let head = toks.next().unwrap();
            let kind = match head {
                "X+" => PieceKind::XPos,
                "X-" => PieceKind::XNeg,
                "capR" => PieceKind::CapR,
                "capL" => PieceKind::CapL,
                "cupR" => PieceKind::CupR,
                "cupL" => PieceKind::CupL,
                "|" => PieceKind::Identity,
                other => return Err(Error::parse(format!("unknown piece `{other}`"))),
            };
            let mut pos = 1usize;
            let mut cap_color = None;
            for t in toks {
                if let Some(p) = t.strip_prefix('@') {
                    let p = p.split_once("..").map(|(a, _)| a).unwrap_or(p);
                    pos = p
                        .parse()
                        .map_err(|_| Error::parse(format!("bad position `{t}`")))?;
                } else if let Some(c) = t.strip_prefix("color=") {
                    cap_color = Some(match parse_color(c, group)? {
                        Color::Pair { g, b } => (g, b),
                        Color::Class(_) => {
                            return Err(Error::parse("class colors not allowed on tangles"))
                        }
                    });
                } else if t.strip_prefix("colors=").is_some() {
                    // informational; colors flow from the boundary
                } else {
                    return Err(Error::parse(format!("unknown token `{t}`")));
                }
            }
            layers.push(Layer {
                kind,
                pos,
                cap_color,
            });
        }
        Ok(SlicedTangle { top, layers })
    }
}

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

type State = BTreeMap<Vec<u16>, i64>;

fn state_guard(g: &FiniteGroup, width: usize, guard: u64) -> Result<()> {
    let mut size = 1u64;
    for _ in 0..width {
        size = size.saturating_mul(g.order() as u64);
        if size > guard {
            return Err(Error::guard(format!(
                "basis |G|^{width} exceeds the width guard"
            )));
        }
    }
    Ok(())
}

/// Cap values: `capR_(g,b) = Σ_h (bh, h)`, `capL = Σ_h (h, h)`;
/// cup values: `cupR(x,y) = δ_{bx,y}`, `cupL(x,y) = δ_{x,y}`.
fn cap_insert(g: &FiniteGroup, state: &State, p: usize, color: PairColor, right: bool) -> State {
    let b = color.1;
    let mut out = State::new();
    for (t, &c) in state {
        for h in 0..g.order() {
            let pair = if right {
                [(g.mul(b, h)) as u16, h as u16]
            } else {
                [h as u16, h as u16]
            };
            let mut u = t.clone();
            u.splice(p - 1..p - 1, pair);
            *out.entry(u).or_insert(0) += c;
        }
    }
    out
}

fn cup_consume(g: &FiniteGroup, state: &State, p: usize, color: PairColor, right: bool) -> State {
    let b = color.1;
    let mut out = State::new();
    for (t, &c) in state {
        let (x, y) = (t[p - 1] as usize, t[p] as usize);
        let keep = if right { g.mul(b, x) == y } else { x == y };
        if keep {
            let mut u = t.clone();
            u.splice(p - 1..p + 1, []);
            *out.entry(u).or_insert(0) += c;
        }
    }
    out
}

fn crossing_direct(
    g: &FiniteGroup,
    state: &State,
    p: usize,
    positive: bool,
    framed: bool,
    c1: PairColor,
    c2: PairColor,
) -> State {
    let mut out = State::new();
    for (t, &c) in state {
        let (x, y) = (t[p - 1] as usize, t[p] as usize);
        let (a, b) = if positive {
            let (g1, b1) = c1;
            let twist = if framed { 0 } else { g.mul(b1, g1) };
            (
                g.mul(g.mul(y, g.inv(x)), g.mul(g.inv(g1), x)),
                g.mul(twist, x),
            )
        } else {
            let (g2, b2) = c2;
            let twist = if framed { 0 } else { g.mul(b2, g.inv(g2)) };
            (
                g.mul(twist, y),
                g.mul(g.mul(x, g.inv(y)), g.mul(g2, y)),
            )
        };
        let mut u = t.clone();
        u[p - 1] = a as u16;
        u[p] = b as u16;
        *out.entry(u).or_insert(0) += c;
    }
    out
}

/// Applies a crossing at `(p, p+1)` with the given boundary signs, rotating
/// upward strands through cap/cup conjugation. Only plain-`G` colors may be
/// carried by upward strands at crossings.
#[allow(clippy::too_many_arguments)]
fn crossing_general(
    g: &FiniteGroup,
    state: State,
    p: usize,
    positive: bool,
    framed: bool,
    c1: PairColor,
    s1: i8,
    c2: PairColor,
    s2: i8,
) -> Result<State> {
    if s1 == 1 && s2 == 1 {
        return Ok(crossing_direct(g, &state, p, positive, framed, c1, c2));
    }
    if c1.1 != 0 || c2.1 != 0 {
        return Err(Error::domain(
            "orientation-reversed crossings need plain group colors",
        ));
    }
    if s2 == -1 {
        // rotate strand 2: cap to the left, reversed crossing, cup to the right
        let st = cap_insert(g, &state, p, c2, true);
        let st = crossing_general(g, st, p + 1, !positive, framed, c2, 1, c1, s1)?;
        Ok(cup_consume(g, &st, p + 2, c2, true))
    } else {
        // s1 == -1, s2 == +1: rotate strand 1
        let st = cap_insert(g, &state, p + 2, c1, false);
        let st = crossing_general(g, st, p + 1, !positive, framed, c2, 1, c1, 1)?;
        Ok(cup_consume(g, &st, p, c1, false))
    }
}

/// Evaluates the tangle to an exact integer tensor map `G^k -> G^l`
/// (`k = |∂⁺|`, `l = |∂⁻|`). `framed` selects the framed functor.
pub fn evaluate(g: &FiniteGroup, t: &SlicedTangle, framed: bool) -> Result<TensorMap> {
    evaluate_guarded(g, t, framed, WIDTH_GUARD)
}

pub fn evaluate_guarded(
    g: &FiniteGroup,
    t: &SlicedTangle,
    framed: bool,
    guard: u64,
) -> Result<TensorMap> {
    let bnds = t.boundaries()?;
    for b in &bnds {
        state_guard(g, b.len(), guard)?;
    }
    let k = t.top.len();
    let l = bnds.last().unwrap().len();
    let mut result = TensorMap::new(g.order(), k, l);
    let mut inputs = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &inputs {
            for x in 0..g.order() {
                let mut u: Vec<u16> = t.clone();
                u.push(x as u16);
                next.push(u);
            }
        }
        inputs = next;
    }
    for input in inputs {
        let mut state = State::new();
        state.insert(input.clone(), 1);
        for (li, layer) in t.layers.iter().enumerate() {
            let cur = &bnds[li];
            let p = layer.pos;
            state = match layer.kind {
                PieceKind::Identity => state,
                PieceKind::XPos | PieceKind::XNeg => {
                    let (c1, s1) = cur[p - 1];
                    let (c2, s2) = cur[p];
                    crossing_general(
                        g,
                        state,
                        p,
                        layer.kind == PieceKind::XPos,
                        framed,
                        c1,
                        s1,
                        c2,
                        s2,
                    )?
                }
                PieceKind::CapR => cap_insert(g, &state, p, layer.cap_color.unwrap(), true),
                PieceKind::CapL => cap_insert(g, &state, p, layer.cap_color.unwrap(), false),
                PieceKind::CupR => {
                    let color = cur[p - 1].0;
                    cup_consume(g, &state, p, color, true)
                }
                PieceKind::CupL => {
                    let color = cur[p - 1].0;
                    cup_consume(g, &state, p, color, false)
                }
            };
        }
        let outs: Vec<(Vec<u16>, i64)> = state.into_iter().collect();
        if !outs.is_empty() {
            result.set(input, outs);
        }
    }
    Ok(result)
}

/// Scalar value of a closed tangle.
pub fn evaluate_closed(g: &FiniteGroup, t: &SlicedTangle, framed: bool) -> Result<i64> {
    if !t.top.is_empty() {
        return Err(Error::domain("tangle is not closed at the top"));
    }
    let m = evaluate(g, t, framed)?;
    if m.arity_out != 0 {
        return Err(Error::domain("tangle is not closed at the bottom"));
    }
    Ok(m.entries
        .get(&Vec::new())
        .map(|outs| outs.iter().map(|(_, c)| *c).sum())
        .unwrap_or(0))
}

/// The standard sliced closure of a colored braid: nested caps, the braid
/// in the right half, cups joining bottom position `i` to its return path.
pub fn braid_closure_tangle(cb: &ColoredBraid) -> Result<SlicedTangle> {
    let n = cb.braid.strands;
    let comp_by_pos = cb.component_by_position();
    let color_at = |s: usize| -> Result<PairColor> {
        cb.color_of_component[comp_by_pos[s]]
            .pair()
            .ok_or_else(|| Error::domain("closure tangle needs pair colors"))
    };
    let mut layers = Vec::new();
    // caps: cap k (1-based) inserted at position k carries the color of
    // braid strand n-k (0-based)
    for k in 1..=n {
        layers.push(Layer {
            kind: PieceKind::CapR,
            pos: k,
            cap_color: Some(color_at(n - k)?),
        });
    }
    for &(i, sign) in &cb.braid.word {
        layers.push(Layer {
            kind: if sign > 0 {
                PieceKind::XPos
            } else {
                PieceKind::XNeg
            },
            pos: n + i,
            cap_color: None,
        });
    }
    for k in (1..=n).rev() {
        layers.push(Layer {
            kind: PieceKind::CupL,
            pos: k,
            cap_color: None,
        });
    }
    Ok(SlicedTangle::closed(layers))
}

/// Report for the color-conjugation naturality check.
pub fn conjugate_colors_check(
    g: &FiniteGroup,
    t: &SlicedTangle,
    alphas: &[usize],
    framed: bool,
) -> Result<crate::dset::Check> {
    let (per_interface, count) = t.components()?;
    if alphas.len() != count {
        return Err(Error::domain(format!(
            "{} conjugators for {} components",
            alphas.len(),
            count
        )));
    }
    // conjugated tangle
    let mut t2 = t.clone();
    let conj_color = |c: PairColor, a: usize| (g.conj(a, c.0), g.conj(a, c.1));
    for (q, pt) in t2.top.iter_mut().enumerate() {
        pt.0 = conj_color(pt.0, alphas[per_interface[0][q]]);
    }
    for (li, layer) in t2.layers.iter_mut().enumerate() {
        if matches!(layer.kind, PieceKind::CapR | PieceKind::CapL) {
            let comp = per_interface[li + 1][layer.pos - 1];
            layer.cap_color = layer.cap_color.map(|c| conj_color(c, alphas[comp]));
        }
    }
    let m1 = evaluate(g, t, framed)?;
    let m2 = evaluate(g, &t2, framed)?;
    // f1, f2: per-position left translations by the component's conjugator
    let bnds = t.boundaries()?;
    let translation = |interface: usize, width: usize| -> TensorMap {
        TensorMap::from_fn(g, width, width, |tup| {
            tup.iter()
                .enumerate()
                .map(|(q, &x)| {
                    g.mul(alphas[per_interface[interface][q]], x as usize) as u16
                })
                .collect()
        })
    };
    let f1 = translation(0, t.top.len());
    let f2 = translation(bnds.len() - 1, bnds.last().unwrap().len());
    let lhs = m2.compose(&f1)?;
    let rhs = f2.compose(&m1)?;
    let pass = lhs.equals(&rhs);
    Ok(crate::dset::Check {
        name: "conjugate-colors-naturality".into(),
        pass,
        witness: if pass {
            None
        } else {
            Some("conjugated functor square does not commute".into())
        },
    })
}

/// Report for the component-reversal identity `F(T) = F(T')` (plain-G
/// colors only).
pub fn reverse_component_check(
    g: &FiniteGroup,
    t: &SlicedTangle,
    comp: usize,
    framed: bool,
) -> Result<crate::dset::Check> {
    let bnds = t.boundaries()?;
    for b in &bnds {
        for &(c, _) in b {
            if c.1 != 0 {
                return Err(Error::domain(
                    "component reversal is only available for plain group colors",
                ));
            }
        }
    }
    let t2 = t.reverse_component_with(g, comp)?;
    let m1 = evaluate(g, t, framed)?;
    let m2 = evaluate(g, &t2, framed)?;
    let pass = m1.equals(&m2);
    Ok(crate::dset::Check {
        name: "reverse-component".into(),
        pass,
        witness: if pass {
            None
        } else {
            Some(format!("component {comp}: maps differ"))
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::group::{cyclic, symmetric};
    use crate::invariants::colored_closure_invariant;

    fn layer(kind: PieceKind, pos: usize) -> Layer {
        Layer {
            kind,
            pos,
            cap_color: None,
        }
    }

    fn cap(kind: PieceKind, pos: usize, color: PairColor) -> Layer {
        Layer {
            kind,
            pos,
            cap_color: Some(color),
        }
    }

    #[test]
    fn circle_counts_group_order() {
        let g = symmetric(3);
        let t = SlicedTangle::closed(vec![
            cap(PieceKind::CapR, 1, (1, 0)),
            layer(PieceKind::CupL, 1),
        ]);
        assert_eq!(evaluate_closed(&g, &t, false).unwrap(), 6);
        assert_eq!(evaluate_closed(&g, &t, true).unwrap(), 6);
    }

    #[test]
    fn framed_circle_with_involution_color() {
        // circle colored (g,b): the closure trace is |G|·[b = e]
        let g = symmetric(3);
        for b in [0usize, 1] {
            let pair = (0usize, b);
            let t = SlicedTangle::closed(vec![
                cap(PieceKind::CapR, 1, pair),
                layer(PieceKind::CupL, 1),
            ]);
            let expect = if b == 0 { 6 } else { 0 };
            assert_eq!(evaluate_closed(&g, &t, true).unwrap(), expect);
            assert_eq!(evaluate_closed(&g, &t, false).unwrap(), expect);
        }
    }

    #[test]
    fn zigzag_moves_are_identity() {
        let g = symmetric(3);
        for &pair in &g.extended_pairs() {
            let id = TensorMap::identity(&g, 1);
            // down strand, cap to the right then cup from the left
            let t = SlicedTangle {
                top: vec![(pair, 1)],
                layers: vec![cap(PieceKind::CapR, 2, pair), layer(PieceKind::CupR, 1)],
            };
            for framed in [false, true] {
                assert!(evaluate(&g, &t, framed).unwrap().equals(&id), "{pair:?}");
            }
            // down strand, cap to the left then cup from the right
            let t = SlicedTangle {
                top: vec![(pair, 1)],
                layers: vec![cap(PieceKind::CapL, 1, pair), layer(PieceKind::CupL, 2)],
            };
            for framed in [false, true] {
                assert!(evaluate(&g, &t, framed).unwrap().equals(&id), "{pair:?}");
            }
            // up strand variants
            let t = SlicedTangle {
                top: vec![(pair, -1)],
                layers: vec![cap(PieceKind::CapR, 1, pair), layer(PieceKind::CupR, 2)],
            };
            for framed in [false, true] {
                assert!(evaluate(&g, &t, framed).unwrap().equals(&id), "{pair:?}");
            }
            let t = SlicedTangle {
                top: vec![(pair, -1)],
                layers: vec![cap(PieceKind::CapL, 2, pair), layer(PieceKind::CupL, 1)],
            };
            for framed in [false, true] {
                assert!(evaluate(&g, &t, framed).unwrap().equals(&id), "{pair:?}");
            }
        }
    }

    #[test]
    fn crossing_inverse_identity() {
        let g = symmetric(3);
        let pairs = g.extended_pairs();
        let id2 = TensorMap::identity(&g, 2);
        for &p1 in pairs.iter().take(6) {
            for &p2 in pairs.iter().take(6) {
                for order in [
                    [PieceKind::XPos, PieceKind::XNeg],
                    [PieceKind::XNeg, PieceKind::XPos],
                ] {
                    let t = SlicedTangle {
                        top: vec![(p1, 1), (p2, 1)],
                        layers: vec![layer(order[0], 1), layer(order[1], 1)],
                    };
                    for framed in [false, true] {
                        assert!(
                            evaluate(&g, &t, framed).unwrap().equals(&id2),
                            "{p1:?} {p2:?} {framed}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn yang_baxter_layers() {
        let g = symmetric(3);
        let pairs = g.extended_pairs();
        for &p1 in pairs.iter().take(4) {
            for &p2 in pairs.iter().take(4) {
                for &p3 in pairs.iter().take(4) {
                    let top = vec![(p1, 1), (p2, 1), (p3, 1)];
                    let lhs = SlicedTangle {
                        top: top.clone(),
                        layers: vec![
                            layer(PieceKind::XPos, 1),
                            layer(PieceKind::XPos, 2),
                            layer(PieceKind::XPos, 1),
                        ],
                    };
                    let rhs = SlicedTangle {
                        top,
                        layers: vec![
                            layer(PieceKind::XPos, 2),
                            layer(PieceKind::XPos, 1),
                            layer(PieceKind::XPos, 2),
                        ],
                    };
                    for framed in [false, true] {
                        let a = evaluate(&g, &lhs, framed).unwrap();
                        let b = evaluate(&g, &rhs, framed).unwrap();
                        assert!(a.equals(&b));
                    }
                }
            }
        }
    }

    #[test]
    fn kink_unframed_is_identity() {
        let g = symmetric(3);
        let id = TensorMap::identity(&g, 1);
        for &pair in &g.extended_pairs() {
            for x in [PieceKind::XPos, PieceKind::XNeg] {
                // left kink
                let t = SlicedTangle {
                    top: vec![(pair, 1)],
                    layers: vec![
                        cap(PieceKind::CapL, 2, pair),
                        layer(x, 1),
                        layer(PieceKind::CupR, 2),
                    ],
                };
                assert!(
                    evaluate(&g, &t, false).unwrap().equals(&id),
                    "{pair:?} {x:?} left"
                );
                // right kink
                let t = SlicedTangle {
                    top: vec![(pair, 1)],
                    layers: vec![
                        cap(PieceKind::CapR, 1, pair),
                        layer(x, 2),
                        layer(PieceKind::CupL, 1),
                    ],
                };
                assert!(
                    evaluate(&g, &t, false).unwrap().equals(&id),
                    "{pair:?} {x:?} right"
                );
            }
        }
    }

    #[test]
    fn framed_kinks_cancel() {
        // T3': the framed functor gives each kink a translation; opposite
        // kinks compose to the identity
        let g = symmetric(3);
        let id = TensorMap::identity(&g, 1);
        for &pair in &g.extended_pairs() {
            let kink = |x: PieceKind| SlicedTangle {
                top: vec![(pair, 1)],
                layers: vec![
                    cap(PieceKind::CapL, 2, pair),
                    layer(x, 1),
                    layer(PieceKind::CupR, 2),
                ],
            };
            let plus = evaluate(&g, &kink(PieceKind::XPos), true).unwrap();
            let minus = evaluate(&g, &kink(PieceKind::XNeg), true).unwrap();
            assert!(plus.compose(&minus).unwrap().equals(&id), "{pair:?}");
            assert!(minus.compose(&plus).unwrap().equals(&id), "{pair:?}");
            // and the kink values are the instance partial traces
            let (gg, bb) = pair;
            let c1 = crate::rmatrix::left_translation(&g, g.mul(bb, g.inv(gg)));
            let c2 = crate::rmatrix::left_translation(&g, g.mul(gg, bb));
            assert!(plus.equals(&c1), "{pair:?}");
            assert!(minus.equals(&c2), "{pair:?}");
        }
    }

    #[test]
    fn rotated_crossing_matches_inverted_color_framed() {
        // the rotation identities that lower reversed crossings, checked
        // against the framed crossing with inverted color
        let g = symmetric(3);
        for g1 in 0..6 {
            for g2 in 0..6 {
                let c1 = (g1, 0usize);
                // X- with strand 2 reversed equals X- with color g2^{-1}
                let t = SlicedTangle {
                    top: vec![(c1, 1), ((g.inv(g2), 0), -1)],
                    layers: vec![layer(PieceKind::XNeg, 1)],
                };
                let direct = evaluate(&g, &t, true).unwrap();
                let expect = crate::rmatrix::build_psi_inv(&g, g1, g2);
                assert!(direct.equals(&expect), "g1={g1} g2={g2}");
            }
        }
    }

    #[test]
    fn closure_tangle_matches_trace_route() {
        let g = symmetric(3);
        for (text, colors) in [
            ("strands: 1; word:", vec![Color::Pair { g: 2, b: 0 }]),
            ("strands: 2; word: s1 s1 s1", vec![Color::Pair { g: 1, b: 0 }]),
            (
                "strands: 2; word: s1 s1",
                vec![Color::Pair { g: 1, b: 0 }, Color::Pair { g: 2, b: 0 }],
            ),
            (
                "strands: 3; word: s1 s2^-1 s1 s2^-1",
                vec![Color::Pair { g: 3, b: 3 }],
            ),
        ] {
            let cb = ColoredBraid::new(BraidWord::parse(text).unwrap(), colors).unwrap();
            for framed in [false, true] {
                let t = braid_closure_tangle(&cb).unwrap();
                let via_tangle = evaluate_closed(&g, &t, framed).unwrap();
                let via_trace = colored_closure_invariant(&g, &cb, framed).unwrap().value;
                assert_eq!(via_tangle as u64, via_trace, "{text} framed={framed}");
            }
        }
    }

    #[test]
    fn functoriality_on_split() {
        // evaluate(T2 . T1) = evaluate(T2) . evaluate(T1) on a layer split
        let g = cyclic(4);
        let pair = (1usize, 0usize);
        let t = SlicedTangle {
            top: vec![(pair, 1), (pair, 1)],
            layers: vec![
                layer(PieceKind::XPos, 1),
                cap(PieceKind::CapL, 3, pair),
                layer(PieceKind::XPos, 2),
                layer(PieceKind::CupR, 3),
                layer(PieceKind::XPos, 1),
            ],
        };
        let whole = evaluate(&g, &t, false).unwrap();
        for split in 0..=t.layers.len() {
            let bnds = t.boundaries().unwrap();
            let first = SlicedTangle {
                top: t.top.clone(),
                layers: t.layers[..split].to_vec(),
            };
            let second = SlicedTangle {
                top: bnds[split].clone(),
                layers: t.layers[split..].to_vec(),
            };
            let a = evaluate(&g, &first, false).unwrap();
            let b = evaluate(&g, &second, false).unwrap();
            assert!(b.compose(&a).unwrap().equals(&whole), "split {split}");
        }
    }

    #[test]
    fn monoidality() {
        let g = symmetric(3);
        let p = (1usize, 0usize);
        let t1 = SlicedTangle {
            top: vec![(p, 1), (p, 1)],
            layers: vec![layer(PieceKind::XPos, 1)],
        };
        // framed kink: evaluates to a nontrivial translation
        let t2 = SlicedTangle {
            top: vec![(p, 1)],
            layers: vec![
                cap(PieceKind::CapL, 2, p),
                layer(PieceKind::XPos, 1),
                layer(PieceKind::CupR, 2),
            ],
        };
        // side-by-side: t1 on positions 1..2, t2 on position 3
        let side = SlicedTangle {
            top: vec![(p, 1), (p, 1), (p, 1)],
            layers: vec![
                layer(PieceKind::XPos, 1),
                cap(PieceKind::CapL, 4, p),
                layer(PieceKind::XPos, 3),
                layer(PieceKind::CupR, 4),
            ],
        };
        for framed in [false, true] {
            let m1 = evaluate(&g, &t1, framed).unwrap();
            let m2 = evaluate(&g, &t2, framed).unwrap();
            let m = evaluate(&g, &side, framed).unwrap();
            assert!(m.equals(&m1.tensor(&m2)), "framed={framed}");
        }
    }

    #[test]
    fn conjugation_naturality() {
        let g = symmetric(3);
        // two-strand tangle: one crossing, components are the two strands
        let t = SlicedTangle {
            top: vec![((1, 0), 1), ((2, 0), 1)],
            layers: vec![layer(PieceKind::XPos, 1)],
        };
        for a1 in 0..6 {
            for a2 in 0..6 {
                for framed in [false, true] {
                    let check = conjugate_colors_check(&g, &t, &[a1, a2], framed).unwrap();
                    assert!(check.pass, "a=({a1},{a2}) framed={framed}");
                }
            }
        }
    }

    #[test]
    fn conjugation_on_closed_hopf() {
        let g = symmetric(3);
        let cb = ColoredBraid::new(
            BraidWord::parse("strands: 2; word: s1 s1").unwrap(),
            vec![Color::Pair { g: 1, b: 0 }, Color::Pair { g: 3, b: 0 }],
        )
        .unwrap();
        let t = braid_closure_tangle(&cb).unwrap();
        let (_, count) = t.components().unwrap();
        assert_eq!(count, 2);
        for a1 in 0..6 {
            let check = conjugate_colors_check(&g, &t, &[a1, g.inv(a1)], false).unwrap();
            assert!(check.pass);
        }
    }

    #[test]
    fn reversed_circle_same_value() {
        let g = symmetric(3);
        let t = SlicedTangle::closed(vec![
            cap(PieceKind::CapR, 1, (2, 0)),
            layer(PieceKind::CupL, 1),
        ]);
        for framed in [false, true] {
            let check = reverse_component_check(&g, &t, 0, framed).unwrap();
            assert!(check.pass);
        }
    }

    #[test]
    fn reversal_on_closed_components() {
        let g = symmetric(3);
        // trefoil closure (one component) and Hopf closure (two components)
        for (text, colors) in [
            ("strands: 2; word: s1 s1 s1", vec![Color::element(1)]),
            (
                "strands: 2; word: s1 s1",
                vec![Color::element(1), Color::element(2)],
            ),
            (
                "strands: 2; word: s1 s1^-1",
                vec![Color::element(3), Color::element(4)],
            ),
        ] {
            let cb = ColoredBraid::new(BraidWord::parse(text).unwrap(), colors).unwrap();
            let t = braid_closure_tangle(&cb).unwrap();
            let (_, count) = t.components().unwrap();
            for comp in 0..count {
                for framed in [false, true] {
                    let check = reverse_component_check(&g, &t, comp, framed).unwrap();
                    assert!(check.pass, "{text} comp {comp} framed={framed}");
                }
            }
        }
    }

    #[test]
    fn closed_values_nonnegative() {
        let g = symmetric(3);
        for (text, colors) in [
            ("strands: 2; word: s1 s1 s1", vec![Color::Pair { g: 1, b: 1 }]),
            (
                "strands: 3; word: s1 s2^-1 s1 s2^-1",
                vec![Color::Pair { g: 2, b: 0 }],
            ),
        ] {
            let cb = ColoredBraid::new(BraidWord::parse(text).unwrap(), colors).unwrap();
            let t = braid_closure_tangle(&cb).unwrap();
            for framed in [false, true] {
                let m = evaluate(&g, &t, framed).unwrap();
                for outs in m.entries.values() {
                    for (_, c) in outs {
                        assert!(*c >= 0);
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_evaluate() {
        let g = symmetric(3);
        let text = "# closed circle\ncapR @1 color=(1,0)\ncupL @1\n";
        let t = SlicedTangle::parse(text, Some(&g)).unwrap();
        assert_eq!(evaluate_closed(&g, &t, false).unwrap(), 6);
    }

    #[test]
    fn mismatched_layers_rejected() {
        let g = symmetric(3);
        let t = SlicedTangle {
            top: vec![((1, 0), 1)],
            layers: vec![layer(PieceKind::XPos, 1)],
        };
        assert!(t.boundaries().is_err());
        let _ = g;
    }
}
