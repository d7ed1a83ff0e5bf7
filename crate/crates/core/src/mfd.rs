//! The surgery invariant and Kirby-move machinery.
//!
//! For a framed link diagram `L` with `m` components the invariant is
//! `F(L) = |Hom(G_L, G)| / |G|^m`, with `G_L` the framed diagram group; the
//! weighted sum over conjugacy-class colorings of the per-coloring functor
//! values is computed independently as a cross-check (the two agree because
//! per-coloring values only depend on the classes).

use crate::error::{Error, Result};
use crate::fpgroup::{FPGroup, HomCountQuery};
use crate::group::{ConjugacyData, FiniteGroup};
use crate::presentations::{presentation_from_diagram, DiagramVariant, LinkDiagram, Passage};
use num_rational::Ratio;
use std::collections::HashMap;

/// A surgery presentation: a blackboard-framed link diagram.
#[derive(Clone, Debug)]
pub struct SurgeryPresentation {
    pub diagram: LinkDiagram,
}

impl SurgeryPresentation {
    pub fn new(diagram: LinkDiagram) -> Self {
        SurgeryPresentation { diagram }
    }

    pub fn empty() -> Self {
        SurgeryPresentation {
            diagram: LinkDiagram {
                components: vec![],
                signs: vec![],
            },
        }
    }

    /// A single unknot with the given framing, drawn with |framing| kinks.
    pub fn framed_unknot(framing: i64) -> Self {
        let k = framing.unsigned_abs() as usize;
        let sign = if framing >= 0 { 1i8 } else { -1 };
        let mut passages = Vec::new();
        for x in 0..k {
            passages.push(Passage {
                crossing: x,
                over: true,
            });
            passages.push(Passage {
                crossing: x,
                over: false,
            });
        }
        SurgeryPresentation {
            diagram: LinkDiagram::new(vec![passages], vec![sign; k]).expect("valid kink diagram"),
        }
    }

    pub fn group_presentation(&self) -> FPGroup {
        presentation_from_diagram(&self.diagram, DiagramVariant::FramedSimplified)
    }
}

/// Disjoint union of two surgery presentations.
pub fn disjoint_union(a: &SurgeryPresentation, b: &SurgeryPresentation) -> SurgeryPresentation {
    let offset = a.diagram.signs.len();
    let mut components = a.diagram.components.clone();
    for comp in &b.diagram.components {
        components.push(
            comp.iter()
                .map(|p| Passage {
                    crossing: p.crossing + offset,
                    over: p.over,
                })
                .collect(),
        );
    }
    let mut signs = a.diagram.signs.clone();
    signs.extend_from_slice(&b.diagram.signs);
    SurgeryPresentation {
        diagram: LinkDiagram::new(components, signs).expect("disjoint union is valid"),
    }
}

#[derive(Clone, Debug)]
pub struct MfdInvariantReport {
    /// per class-coloring: (class multi-index, weight, functor value)
    pub per_coloring: Vec<(Vec<usize>, u64, u64)>,
    /// the weighted-sum route, as an exact rational
    pub weighted_total: Ratio<i64>,
    /// the direct route |Hom(G_L, G)| / |G|^m
    pub hom_total: Ratio<i64>,
    /// raw hom count
    pub hom_count: u64,
    pub integral: bool,
}

impl MfdInvariantReport {
    pub fn value(&self) -> Ratio<i64> {
        self.hom_total
    }
    pub fn routes_agree(&self) -> bool {
        self.weighted_total == self.hom_total
    }
}

/// Computes the surgery invariant both ways and checks the routes agree.
pub fn mfd_invariant(
    g: &FiniteGroup,
    cd: &ConjugacyData,
    s: &SurgeryPresentation,
) -> Result<MfdInvariantReport> {
    mfd_invariant_guarded(g, cd, s, crate::fpgroup::DEFAULT_HOM_GUARD)
}

pub fn mfd_invariant_guarded(
    g: &FiniteGroup,
    cd: &ConjugacyData,
    s: &SurgeryPresentation,
    guard: f64,
) -> Result<MfdInvariantReport> {
    use crate::fpgroup::count_homs_guarded;
    let fp = s.group_presentation();
    let m = s.diagram.num_components();
    let colors = fp.color_generators();
    debug_assert_eq!(colors.len(), m);
    let hom_count = count_homs_guarded(&fp, g, &HomCountQuery::default(), None, guard)?;
    let denom = (g.order() as i64)
        .checked_pow(m as u32)
        .ok_or_else(|| Error::guard("|G|^m overflows"))?;
    let hom_total = Ratio::new(hom_count as i64, denom);

    // weighted sum over class colorings, each term evaluated at class
    // representatives with element pins
    let nc = cd.num_classes();
    let mut per_coloring = Vec::new();
    let mut weighted = Ratio::new(0, 1);
    let mut idx = vec![0usize; m];
    loop {
        let weight: u64 = idx.iter().map(|&c| cd.w[c] as u64).product();
        let pins: Vec<(usize, usize)> = colors
            .iter()
            .copied()
            .zip(idx.iter().map(|&c| cd.reps[c]))
            .collect();
        let value = count_homs_guarded(&fp, g, &HomCountQuery::element_pins(&pins), None, guard)?;
        per_coloring.push((idx.clone(), weight, value));
        weighted += Ratio::new((weight * value) as i64, denom);
        // next multi-index
        let mut i = 0;
        loop {
            if i == m {
                let integral = hom_total.is_integer();
                return Ok(MfdInvariantReport {
                    per_coloring,
                    weighted_total: weighted,
                    hom_total,
                    hom_count,
                    integral,
                });
            }
            idx[i] += 1;
            if idx[i] < nc {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Kirby move I: disjoint union with a ±1-framed unknot.
pub fn kirby_one(s: &SurgeryPresentation, sign: i8) -> SurgeryPresentation {
    disjoint_union(s, &SurgeryPresentation::framed_unknot(sign as i64))
}

/// Kirby move II: slides component `ci` over component `cj` (`ci != cj`),
/// splicing a blackboard-parallel copy of `cj` (running on its right side)
/// into the arc `(ci, arc)`.
pub fn kirby_two(
    s: &SurgeryPresentation,
    ci: usize,
    arc: usize,
    cj: usize,
) -> Result<SurgeryPresentation> {
    let d = &s.diagram;
    if ci == cj {
        return Err(Error::domain("self-slides are not supported"));
    }
    if ci >= d.num_components() || cj >= d.num_components() {
        return Err(Error::domain("component out of range"));
    }
    if arc >= d.arcs_of(ci) {
        return Err(Error::domain("arc out of range"));
    }
    let mut signs = d.signs.clone();
    let alloc = |sign: i8, signs: &mut Vec<i8>| -> usize {
        signs.push(sign);
        signs.len() - 1
    };

    // which crossings are self-crossings of cj
    let mut passages_in_j: HashMap<usize, u32> = HashMap::new();
    for p in &d.components[cj] {
        *passages_in_j.entry(p.crossing).or_insert(0) += 1;
    }

    let mut j_new: Vec<Passage> = Vec::new();
    let mut s_new: Vec<Passage> = Vec::new();
    // (component, original passage index) -> (insert after?, passage)
    let mut insertions: HashMap<(usize, usize), (bool, Passage)> = HashMap::new();
    // self-crossing x -> (x_js, x_sj, x_ss)
    let mut self_new: HashMap<usize, (usize, usize, usize)> = HashMap::new();

    for pass in &d.components[cj] {
        let x = pass.crossing;
        let eps = d.signs[x];
        if passages_in_j[&x] == 2 {
            // band self-crossing: four crossings between {j, S} x {j, S}
            let &mut (x_js, x_sj, x_ss) = self_new.entry(x).or_insert_with(|| {
                let a = alloc(eps, &mut signs);
                let b = alloc(eps, &mut signs);
                let c = alloc(eps, &mut signs);
                (a, b, c)
            });
            let over = |c: usize| Passage {
                crossing: c,
                over: true,
            };
            let under = |c: usize| Passage {
                crossing: c,
                over: false,
            };
            if pass.over {
                // the over-band meets the S under-edge first at positive sign
                let mut jj = vec![over(x_js), over(x)];
                let mut ss = vec![over(x_ss), over(x_sj)];
                if eps < 0 {
                    jj.reverse();
                    ss.reverse();
                }
                j_new.extend(jj);
                s_new.extend(ss);
            } else {
                // the under-band meets the j over-edge first at positive sign
                let mut jj = vec![under(x), under(x_sj)];
                let mut ss = vec![under(x_js), under(x_ss)];
                if eps < 0 {
                    jj.reverse();
                    ss.reverse();
                }
                j_new.extend(jj);
                s_new.extend(ss);
            }
        } else if pass.over {
            // j passes over another component k: S does too, adjacent
            let q = alloc(eps, &mut signs);
            j_new.push(*pass);
            s_new.push(Passage {
                crossing: q,
                over: true,
            });
            let (kc, kk) = d.find_passage(x, false);
            // the under strand meets j first exactly at positive crossings
            insertions.insert(
                (kc, kk),
                (
                    eps > 0,
                    Passage {
                        crossing: q,
                        over: false,
                    },
                ),
            );
        } else {
            // j passes under k: the band passes under k
            let q = alloc(eps, &mut signs);
            j_new.push(*pass);
            s_new.push(Passage {
                crossing: q,
                over: false,
            });
            let (kc, kk) = d.find_passage(x, true);
            // k meets the S edge first exactly at positive crossings
            insertions.insert(
                (kc, kk),
                (
                    eps < 0,
                    Passage {
                        crossing: q,
                        over: true,
                    },
                ),
            );
        }
    }

    let rebuild = |c: usize| -> Vec<Passage> {
        let mut out = Vec::new();
        for (k, p) in d.components[c].iter().enumerate() {
            match insertions.get(&(c, k)) {
                Some(&(after, ins)) => {
                    if after {
                        out.push(*p);
                        out.push(ins);
                    } else {
                        out.push(ins);
                        out.push(*p);
                    }
                }
                None => out.push(*p),
            }
        }
        out
    };

    let mut components = Vec::with_capacity(d.num_components());
    for c in 0..d.num_components() {
        if c == cj {
            components.push(j_new.clone());
        } else if c == ci {
            // rebuild, then splice the copy after original passage `arc`
            let mut out: Vec<Passage> = Vec::new();
            let mut splice_at = None;
            if d.components[ci].is_empty() {
                out = s_new.clone();
            } else {
                for (k, p) in d.components[ci].iter().enumerate() {
                    match insertions.get(&(ci, k)) {
                        Some(&(after, ins)) => {
                            if after {
                                out.push(*p);
                                out.push(ins);
                            } else {
                                out.push(ins);
                                out.push(*p);
                            }
                        }
                        None => out.push(*p),
                    }
                    if k == arc {
                        splice_at = Some(out.len());
                    }
                }
                let at = splice_at.unwrap();
                out.splice(at..at, s_new.iter().copied());
            }
            components.push(out);
        } else {
            components.push(rebuild(c));
        }
    }
    let diagram = LinkDiagram::new(components, signs)?;
    Ok(SurgeryPresentation { diagram })
}

/// One Kirby verification outcome.
#[derive(Clone, Debug)]
pub struct KirbyCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Checks, for each group: K-I leaves the invariant unchanged and scales
/// |Hom| by exactly |G|; the given K-II slides leave both the invariant and
/// |Hom| unchanged.
pub fn verify_kirby_suite(
    groups: &[(FiniteGroup, ConjugacyData)],
    fixtures: &[(String, SurgeryPresentation)],
    slides: &[(String, SurgeryPresentation, (usize, usize, usize))],
) -> Result<Vec<KirbyCheck>> {
    let mut out = Vec::new();
    for (g, cd) in groups {
        for (name, s) in fixtures {
            let base = mfd_invariant(g, cd, s)?;
            if !base.routes_agree() {
                out.push(KirbyCheck {
                    name: format!("routes/{}/{}", g.name(), name),
                    pass: false,
                    detail: format!("{} vs {}", base.weighted_total, base.hom_total),
                });
                continue;
            }
            for sign in [1i8, -1] {
                let moved = kirby_one(s, sign);
                let after = mfd_invariant(g, cd, &moved)?;
                let pass = after.value() == base.value()
                    && after.hom_count == base.hom_count * g.order() as u64
                    && after.routes_agree();
                out.push(KirbyCheck {
                    name: format!("kirby-I{}/{}/{}", if sign > 0 { "+" } else { "-" }, g.name(), name),
                    pass,
                    detail: format!("{} -> {}", base.value(), after.value()),
                });
            }
        }
        for (name, s, &(ci, arc, cj)) in slides.iter().map(|(n, s, m)| (n, s, m)) {
            let base = mfd_invariant(g, cd, s)?;
            let moved = kirby_two(s, ci, arc, cj)?;
            let after = mfd_invariant(g, cd, &moved)?;
            let pass = after.value() == base.value()
                && after.hom_count == base.hom_count
                && after.routes_agree()
                && moved.diagram.num_components() == s.diagram.num_components();
            out.push(KirbyCheck {
                name: format!("kirby-II/{}/{}", g.name(), name),
                pass,
                detail: format!("{} -> {}", base.value(), after.value()),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::group::{conjugacy, cyclic, quaternion8, symmetric};
    use crate::presentations::braid_closure_diagram;

    fn groups() -> Vec<(FiniteGroup, ConjugacyData)> {
        [cyclic(4), symmetric(3), quaternion8()]
            .into_iter()
            .map(|g| {
                let cd = conjugacy(&g);
                (g, cd)
            })
            .collect()
    }

    #[test]
    fn empty_link_is_one() {
        for (g, cd) in groups() {
            let rep = mfd_invariant(&g, &cd, &SurgeryPresentation::empty()).unwrap();
            assert_eq!(rep.value(), Ratio::from_integer(1));
            assert!(rep.routes_agree());
        }
    }

    #[test]
    fn framed_unknots() {
        for (g, cd) in groups() {
            let plus = mfd_invariant(&g, &cd, &SurgeryPresentation::framed_unknot(1)).unwrap();
            assert_eq!(plus.value(), Ratio::from_integer(1), "{}", g.name());
            let minus = mfd_invariant(&g, &cd, &SurgeryPresentation::framed_unknot(-1)).unwrap();
            assert_eq!(minus.value(), Ratio::from_integer(1));
            let zero = mfd_invariant(&g, &cd, &SurgeryPresentation::framed_unknot(0)).unwrap();
            assert_eq!(zero.value(), Ratio::from_integer(g.order() as i64));
            assert!(plus.routes_agree() && minus.routes_agree() && zero.routes_agree());
        }
    }

    #[test]
    fn kirby_one_scales_hom_count() {
        let (g, cd) = (symmetric(3), conjugacy(&symmetric(3)));
        let base = SurgeryPresentation::framed_unknot(0);
        let rep0 = mfd_invariant(&g, &cd, &base).unwrap();
        for sign in [1i8, -1] {
            let moved = kirby_one(&base, sign);
            let rep1 = mfd_invariant(&g, &cd, &moved).unwrap();
            assert_eq!(rep1.hom_count, rep0.hom_count * 6);
            assert_eq!(rep1.value(), rep0.value());
        }
    }

    #[test]
    fn hopf_link_is_sphere() {
        // surgery on the (0,0)-framed Hopf link gives S^3
        let d = braid_closure_diagram(&BraidWord::parse("strands: 2; word: s1 s1").unwrap());
        let s = SurgeryPresentation::new(d);
        for (g, cd) in groups() {
            let rep = mfd_invariant(&g, &cd, &s).unwrap();
            assert_eq!(rep.value(), Ratio::from_integer(1), "{}", g.name());
            assert!(rep.routes_agree());
        }
    }

    #[test]
    fn disjoint_union_multiplies() {
        let a = SurgeryPresentation::framed_unknot(0);
        let b = SurgeryPresentation::framed_unknot(1);
        let c = disjoint_union(&a, &b);
        for (g, cd) in groups() {
            let va = mfd_invariant(&g, &cd, &a).unwrap().value();
            let vb = mfd_invariant(&g, &cd, &b).unwrap().value();
            let vc = mfd_invariant(&g, &cd, &c).unwrap().value();
            assert_eq!(vc, va * vb);
        }
    }

    #[test]
    fn slide_over_crossingless_circle() {
        // sliding over a crossing-free 0-framed circle adds nothing
        let two = disjoint_union(
            &SurgeryPresentation::framed_unknot(0),
            &SurgeryPresentation::framed_unknot(0),
        );
        let slid = kirby_two(&two, 0, 0, 1).unwrap();
        assert_eq!(slid.diagram.num_components(), 2);
        assert_eq!(slid.diagram.num_crossings(), 0);
    }

    #[test]
    fn hopf_slide_preserves_invariant() {
        let d = braid_closure_diagram(&BraidWord::parse("strands: 2; word: s1 s1").unwrap());
        let s = SurgeryPresentation::new(d);
        for (g, cd) in groups() {
            let base = mfd_invariant(&g, &cd, &s).unwrap();
            for arc in 0..s.diagram.arcs_of(0) {
                let slid = kirby_two(&s, 0, arc, 1).unwrap();
                let after = mfd_invariant(&g, &cd, &slid).unwrap();
                assert_eq!(after.value(), base.value(), "{} arc {arc}", g.name());
                assert_eq!(after.hom_count, base.hom_count, "{} arc {arc}", g.name());
            }
        }
    }

    #[test]
    fn slide_over_kinked_component() {
        // exercises the band self-crossing bookkeeping
        let two = disjoint_union(
            &SurgeryPresentation::framed_unknot(0),
            &SurgeryPresentation::framed_unknot(1),
        );
        for (g, cd) in groups() {
            let base = mfd_invariant(&g, &cd, &two).unwrap();
            let slid = kirby_two(&two, 0, 0, 1).unwrap();
            slid.diagram.validate().unwrap();
            let after = mfd_invariant(&g, &cd, &slid).unwrap();
            assert_eq!(after.value(), base.value(), "{}", g.name());
            assert_eq!(after.hom_count, base.hom_count, "{}", g.name());
        }
    }

    #[test]
    fn kirby_suite_runner() {
        let groups = groups();
        let fixtures = vec![
            ("unknot+1".to_string(), SurgeryPresentation::framed_unknot(1)),
            ("unknot0".to_string(), SurgeryPresentation::framed_unknot(0)),
        ];
        let hopf = SurgeryPresentation::new(braid_closure_diagram(
            &BraidWord::parse("strands: 2; word: s1 s1").unwrap(),
        ));
        let slides = vec![("hopf".to_string(), hopf, (0usize, 0usize, 1usize))];
        let checks = verify_kirby_suite(&groups, &fixtures, &slides).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }

    #[test]
    fn trefoil_plus_circle_slide() {
        let tre = braid_closure_diagram(&BraidWord::parse("strands: 2; word: s1 s1 s1").unwrap());
        let two = disjoint_union(
            &SurgeryPresentation::new(tre),
            &SurgeryPresentation::framed_unknot(0),
        );
        for (g, cd) in groups() {
            let base = mfd_invariant(&g, &cd, &two).unwrap();
            // slide the circle over the trefoil
            let slid = kirby_two(&two, 1, 0, 0).unwrap();
            let after = mfd_invariant(&g, &cd, &slid).unwrap();
            assert_eq!(after.value(), base.value(), "{}", g.name());
            assert_eq!(after.hom_count, base.hom_count, "{}", g.name());
        }
    }
}
