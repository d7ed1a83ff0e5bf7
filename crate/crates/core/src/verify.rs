//! Runnable verification suites behind the `verify` command and the
//! acceptance tests. Every suite returns per-check pass/fail results with
//! counterexample witnesses; the `mutate` flag injects a designated
//! corruption and is expected to make the suite fail (negative control).

use crate::braid::{
    markov_conjugate, markov_stabilize, psi_step, BraidWord, Color, ColoredBraid,
};
use crate::character::{character_identity_check, table_d4, table_q8, table_s3};
use crate::dset::{center_structure_check, class_product, count_b, verify_modular, Check};
use crate::error::Result;
use crate::fpgroup::{count_homs, HomCountQuery};
use crate::group::{
    conjugacy, cyclic, dihedral, groups_of_order_up_to, quaternion8, symmetric, FiniteGroup,
};
use crate::invariants::{delta_invariant, lambda_invariant};
use crate::mfd::{disjoint_union, kirby_one, kirby_two, mfd_invariant, SurgeryPresentation};
use crate::presentations::{
    braid_closure_diagram, hom_profile, presentation_from_braid, presentation_from_diagram,
    r1_add, r1_framed_add, r2_add, BraidVariant, DiagramVariant,
};
use crate::tangle::{evaluate, Layer, PieceKind, SlicedTangle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
    fn push(&mut self, name: impl Into<String>, pass: bool, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            witness,
        });
    }
}

fn standard_groups() -> Vec<FiniteGroup> {
    vec![cyclic(6), symmetric(3), dihedral(4), quaternion8()]
}

fn all_tuples(order: usize, k: usize) -> Vec<Vec<u16>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * order);
        for t in &out {
            for x in 0..order {
                let mut u = t.clone();
                u.push(x as u16);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Exhaustive braid relation and inverse identity for the crossing action,
/// over all color triples and all tuples.
pub fn run_yangbaxter(mutate: bool) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        suite: "yangbaxter".into(),
        checks: Vec::new(),
    };
    for g in standard_groups() {
        let n = g.order();
        let tuples = all_tuples(n, 3);
        let mut pass = true;
        let mut witness = None;
        'outer: for c1 in 0..n {
            for c2 in 0..n {
                for c3 in 0..n {
                    for t in &tuples {
                        let mut ca = vec![c1, c2, c3];
                        let mut ta = t.clone();
                        for &(i, s) in &[(1usize, 1i8), (2, 1), (1, 1)] {
                            psi_step(&g, &mut ca, i, s, &mut ta);
                        }
                        let mut cb = vec![c1, c2, c3];
                        let mut tb = t.clone();
                        for &(i, s) in &[(2usize, 1i8), (1, 1), (2, 1)] {
                            psi_step(&g, &mut cb, i, s, &mut tb);
                        }
                        if mutate {
                            // designated corruption: swap the last two slots
                            tb.swap(1, 2);
                        }
                        if ca != cb || ta != tb {
                            pass = false;
                            witness = Some(format!(
                                "{}: colors ({c1},{c2},{c3}) tuple {t:?}",
                                g.name()
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
        report.push(format!("braid-relation/{}", g.name()), pass, witness);

        let tuples2 = all_tuples(n, 2);
        let mut pass = true;
        let mut witness = None;
        'inv: for c1 in 0..n {
            for c2 in 0..n {
                for t in &tuples2 {
                    let mut colors = vec![c1, c2];
                    let mut u = t.clone();
                    psi_step(&g, &mut colors, 1, 1, &mut u);
                    psi_step(&g, &mut colors, 1, -1, &mut u);
                    if &u != t {
                        pass = false;
                        witness = Some(format!("{}: ({c1},{c2}) {t:?}", g.name()));
                        break 'inv;
                    }
                }
            }
        }
        report.push(format!("inverse/{}", g.name()), pass, witness);
    }
    Ok(report)
}

/// The modular identity suite plus the center structure-constant identity.
pub fn run_modular(mutate: bool) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        suite: "modular".into(),
        checks: Vec::new(),
    };
    for g in [symmetric(3), dihedral(4), quaternion8()] {
        let cd = conjugacy(&g);
        let rep = verify_modular(&g, &cd, 4, 17)?;
        for c in rep.checks {
            report.checks.push(Check {
                name: format!("{}/{}", g.name(), c.name),
                ..c
            });
        }
        let center = center_structure_check(&g, &cd)?;
        for c in center.checks {
            report.checks.push(Check {
                name: format!("{}/{}", g.name(), c.name),
                ..c
            });
        }
        if mutate {
            // designated corruption: bump one structure constant and recheck (4)
            let mut beta = class_product(&g, &cd, 1, 1);
            beta[0] += 1;
            let mut pass = true;
            let mut witness = None;
            for (k, &bk) in beta.iter().enumerate() {
                let lhs = cd.v[k] as u64 * bk;
                let rhs = count_b(&g, &cd, &[1, 1, cd.star[k]])?;
                if lhs != rhs {
                    pass = false;
                    witness = Some(format!("{}: corrupted β̄ at k = {k}", g.name()));
                    break;
                }
            }
            report.push(format!("{}/mutated-beta", g.name()), pass, witness);
        }
    }
    Ok(report)
}

/// Character-table validation and the representation-ring identity suite.
pub fn run_character(mutate: bool) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        suite: "character".into(),
        checks: Vec::new(),
    };
    let fixtures = vec![
        (symmetric(3), table_s3()),
        (quaternion8(), table_q8()),
        (dihedral(4), table_d4()),
    ];
    for (g, mut table) in fixtures {
        if mutate {
            table.chi[1][1] = -table.chi[1][1];
        }
        let cd = conjugacy(&g);
        match character_identity_check(&g, &cd, &table) {
            Ok(rep) => {
                for c in rep.checks {
                    report.checks.push(Check {
                        name: format!("{}/{}", g.name(), c.name),
                        ..c
                    });
                }
            }
            Err(e) => report.push(
                format!("{}/table-validation", g.name()),
                false,
                Some(e.to_string()),
            ),
        }
    }
    Ok(report)
}

fn random_braid(rng: &mut ChaCha8Rng, max_n: usize, max_len: usize) -> BraidWord {
    let n = rng.gen_range(1..=max_n);
    let len = if n == 1 { 0 } else { rng.gen_range(0..=max_len) };
    let word = (0..len)
        .map(|_| (rng.gen_range(1..n), if rng.gen_bool(0.5) { 1i8 } else { -1 }))
        .collect();
    BraidWord::new(n, word).unwrap()
}

/// Seeded random Markov moves: both invariants must be unchanged.
pub fn run_markov(seed: u64, moves_per_group: usize, mutate: bool) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        suite: "markov".into(),
        checks: Vec::new(),
    };
    for g in [cyclic(6), symmetric(3), dihedral(4), quaternion8()] {
        let pairs = g.extended_pairs();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ g.order() as u64);
        let mut pass = true;
        let mut witness = None;
        for mv in 0..moves_per_group {
            let braid = random_braid(&mut rng, 4, 8);
            let (gg, bb) = pairs[rng.gen_range(0..pairs.len())];
            let cb = ColoredBraid::uniform(braid.clone(), Color::Pair { g: gg, b: bb });
            let moved = if rng.gen_bool(0.5) && braid.strands >= 2 {
                let len = rng.gen_range(1..=5);
                let word = (0..len)
                    .map(|_| {
                        (
                            rng.gen_range(1..braid.strands),
                            if rng.gen_bool(0.5) { 1i8 } else { -1 },
                        )
                    })
                    .collect();
                let a = BraidWord::new(braid.strands, word).unwrap();
                markov_conjugate(&cb, &a)?
            } else {
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                markov_stabilize(&cb, sign)?
            };
            let mut moved_braid = moved.braid.clone();
            if mutate {
                // designated corruption: a double stabilization letter is
                // not a Markov move
                let n = moved_braid.strands;
                if n >= 2 {
                    moved_braid.word.push((n - 1, 1));
                    moved_braid.word.push((n - 1, 1));
                }
            }
            let l0 = lambda_invariant(&g, gg, bb, &braid)?.value;
            let l1 = lambda_invariant(&g, gg, bb, &moved_braid)?.value;
            if l0 != l1 {
                pass = false;
                witness = Some(format!(
                    "{} move {mv}: Λ {l0} -> {l1} on {braid:?} pair ({gg},{bb})",
                    g.name()
                ));
                break;
            }
            let d0 = delta_invariant(&g, gg, bb, &braid)?.value;
            let d1 = delta_invariant(&g, gg, bb, &moved_braid)?.value;
            if d0 != d1 {
                pass = false;
                witness = Some(format!(
                    "{} move {mv}: Δ {d0} -> {d1} on {braid:?} pair ({gg},{bb})",
                    g.name()
                ));
                break;
            }
        }
        report.push(format!("markov/{}", g.name()), pass, witness);
    }
    Ok(report)
}

/// Turaev move suite for both functors: zigzags, crossing inverses,
/// Yang-Baxter layers, kinks (unframed) and kink cancellation (framed),
/// plus the rotation identities for reversed crossings (framed).
pub fn run_turaev(seed: u64, mutate: bool) -> Result<SuiteReport> {
    use crate::rmatrix::TensorMap;
    let mut report = SuiteReport {
        suite: "turaev".into(),
        checks: Vec::new(),
    };
    let layer = |kind: PieceKind, pos: usize| Layer {
        kind,
        pos,
        cap_color: None,
    };
    let cap = |kind: PieceKind, pos: usize, color: (usize, usize)| Layer {
        kind,
        pos,
        cap_color: Some(color),
    };
    for g in standard_groups() {
        let pairs = g.extended_pairs();
        let id1 = TensorMap::identity(&g, 1);
        let id2 = TensorMap::identity(&g, 2);

        // T1: four zigzags
        let mut pass = true;
        let mut witness = None;
        'z: for &p in &pairs {
            let variants: Vec<(i8, Vec<Layer>)> = vec![
                (1, vec![cap(PieceKind::CapR, 2, p), layer(PieceKind::CupR, 1)]),
                (1, vec![cap(PieceKind::CapL, 1, p), layer(PieceKind::CupL, 2)]),
                (-1, vec![cap(PieceKind::CapR, 1, p), layer(PieceKind::CupR, 2)]),
                (-1, vec![cap(PieceKind::CapL, 2, p), layer(PieceKind::CupL, 1)]),
            ];
            for (sign, layers) in variants {
                let t = SlicedTangle {
                    top: vec![(p, sign)],
                    layers,
                };
                for framed in [false, true] {
                    let mut m = evaluate(&g, &t, framed)?;
                    if mutate {
                        m = m.compose(&crate::rmatrix::left_translation(&g, 1))?;
                    }
                    if !m.equals(&id1) {
                        pass = false;
                        witness = Some(format!("{}: pair {p:?} sign {sign}", g.name()));
                        break 'z;
                    }
                }
            }
        }
        report.push(format!("T1-zigzag/{}", g.name()), pass, witness);

        // T2: crossing inverses, all color pairs
        let mut pass = true;
        let mut witness = None;
        't2: for &p1 in &pairs {
            for &p2 in &pairs {
                for order in [
                    [PieceKind::XPos, PieceKind::XNeg],
                    [PieceKind::XNeg, PieceKind::XPos],
                ] {
                    let t = SlicedTangle {
                        top: vec![(p1, 1), (p2, 1)],
                        layers: vec![layer(order[0], 1), layer(order[1], 1)],
                    };
                    for framed in [false, true] {
                        if !evaluate(&g, &t, framed)?.equals(&id2) {
                            pass = false;
                            witness = Some(format!("{}: {p1:?} {p2:?}", g.name()));
                            break 't2;
                        }
                    }
                }
            }
        }
        report.push(format!("T2-inverse/{}", g.name()), pass, witness);

        // T3: Yang-Baxter layers, exhaustive over all color triples and all
        // basis tuples via the fast tuple-level step (parallel over the
        // first color)
        let tuples3 = all_tuples(g.order(), 3);
        let witness: Option<String> = {
            use rayon::prelude::*;
            pairs
                .par_iter()
                .map(|&a| {
                    let mut ta = vec![0u16; 3];
                    let mut tb = vec![0u16; 3];
                    for &b in &pairs {
                        for &c in &pairs {
                            for framed in [false, true] {
                                for t in &tuples3 {
                                    let mut ca = [a, b, c];
                                    ta.copy_from_slice(t);
                                    for &(i, s) in &[(1usize, 1i8), (2, 1), (1, 1)] {
                                        crate::invariants::functor_step(
                                            &g, &mut ca, i, s, &mut ta, framed,
                                        );
                                    }
                                    let mut cb = [a, b, c];
                                    tb.copy_from_slice(t);
                                    for &(i, s) in &[(2usize, 1i8), (1, 1), (2, 1)] {
                                        crate::invariants::functor_step(
                                            &g, &mut cb, i, s, &mut tb, framed,
                                        );
                                    }
                                    if ca != cb || ta != tb {
                                        return Some(format!(
                                            "{}: {a:?} {b:?} {c:?} {t:?}",
                                            g.name()
                                        ));
                                    }
                                }
                            }
                        }
                    }
                    None
                })
                .find_map_any(|w| w)
        };
        report.push(format!("T3-yangbaxter/{}", g.name()), witness.is_none(), witness);

        // the tangle engine agrees with the tuple-level step on sampled triples
        let mut pass = true;
        let mut witness = None;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (g.order() as u64) << 3);
        't3s: for _ in 0..24 {
            let a = pairs[rng.gen_range(0..pairs.len())];
            let b = pairs[rng.gen_range(0..pairs.len())];
            let c = pairs[rng.gen_range(0..pairs.len())];
            let top = vec![(a, 1), (b, 1), (c, 1)];
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
                if !evaluate(&g, &lhs, framed)?.equals(&evaluate(&g, &rhs, framed)?) {
                    pass = false;
                    witness = Some(format!("{}: {a:?} {b:?} {c:?}", g.name()));
                    break 't3s;
                }
            }
        }
        report.push(format!("T3-engine-sample/{}", g.name()), pass, witness);

        // T4: kinks vanish for the unframed functor
        let mut pass = true;
        let mut witness = None;
        'kink: for &p in &pairs {
            for x in [PieceKind::XPos, PieceKind::XNeg] {
                for right in [false, true] {
                    let layers = if right {
                        vec![
                            cap(PieceKind::CapR, 1, p),
                            layer(x, 2),
                            layer(PieceKind::CupL, 1),
                        ]
                    } else {
                        vec![
                            cap(PieceKind::CapL, 2, p),
                            layer(x, 1),
                            layer(PieceKind::CupR, 2),
                        ]
                    };
                    let t = SlicedTangle {
                        top: vec![(p, 1)],
                        layers,
                    };
                    if !evaluate(&g, &t, false)?.equals(&id1) {
                        pass = false;
                        witness = Some(format!("{}: {p:?} {x:?} right={right}", g.name()));
                        break 'kink;
                    }
                }
            }
        }
        report.push(format!("T4-kink/{}", g.name()), pass, witness);

        // T3': kink cancellation for the framed functor
        let mut pass = true;
        let mut witness = None;
        'fk: for &p in &pairs {
            let kink = |x: PieceKind| SlicedTangle {
                top: vec![(p, 1)],
                layers: vec![
                    cap(PieceKind::CapL, 2, p),
                    layer(x, 1),
                    layer(PieceKind::CupR, 2),
                ],
            };
            let plus = evaluate(&g, &kink(PieceKind::XPos), true)?;
            let minus = evaluate(&g, &kink(PieceKind::XNeg), true)?;
            if !plus.compose(&minus)?.equals(&id1) || !minus.compose(&plus)?.equals(&id1) {
                pass = false;
                witness = Some(format!("{}: {p:?}", g.name()));
                break 'fk;
            }
        }
        report.push(format!("T3'-framed-kinks/{}", g.name()), pass, witness);

        // T5/T6: rotation identities for reversed crossings (framed functor)
        let mut pass = true;
        let mut witness = None;
        'rot: for g1 in 0..g.order() {
            for g2 in 0..g.order() {
                // strand 2 reversed: equals the plain inverse crossing
                let t = SlicedTangle {
                    top: vec![((g1, 0), 1), ((g.inv(g2), 0), -1)],
                    layers: vec![layer(PieceKind::XNeg, 1)],
                };
                let expect = crate::rmatrix::build_psi_inv(&g, g1, g2);
                if !evaluate(&g, &t, true)?.equals(&expect) {
                    pass = false;
                    witness = Some(format!("{}: g1={g1} g2={g2} (strand 2)", g.name()));
                    break 'rot;
                }
                // strand 1 reversed on the positive crossing
                let t = SlicedTangle {
                    top: vec![((g.inv(g1), 0), -1), ((g2, 0), 1)],
                    layers: vec![layer(PieceKind::XPos, 1)],
                };
                let expect = crate::rmatrix::build_psi(&g, g1, g2);
                if !evaluate(&g, &t, true)?.equals(&expect) {
                    pass = false;
                    witness = Some(format!("{}: g1={g1} g2={g2} (strand 1)", g.name()));
                    break 'rot;
                }
            }
        }
        report.push(format!("T5T6-rotation/{}", g.name()), pass, witness);
    }
    Ok(report)
}

/// Reidemeister rewrites leave diagram-presentation profiles unchanged on
/// the trefoil and figure-eight fixtures.
pub fn run_reidemeister(mutate: bool) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        suite: "reidemeister".into(),
        checks: Vec::new(),
    };
    let groups = groups_of_order_up_to(8);
    let fixtures = vec![
        ("trefoil", BraidWord::parse("strands: 2; word: s1 s1 s1").unwrap()),
        (
            "figure8",
            BraidWord::parse("strands: 3; word: s1 s2^-1 s1 s2^-1").unwrap(),
        ),
    ];
    for (name, braid) in fixtures {
        let d = braid_closure_diagram(&braid);
        let base_unframed = hom_profile(
            &presentation_from_diagram(&d, DiagramVariant::Unframed),
            &groups,
        )?;
        let base_framed = hom_profile(
            &presentation_from_diagram(&d, DiagramVariant::FramedSimplified),
            &groups,
        )?;
        let compare = |moved: &crate::presentations::LinkDiagram,
                       variant: DiagramVariant,
                       base: &Vec<Vec<u64>>|
         -> Result<bool> {
            let mut m = moved.clone();
            if mutate {
                m.signs[0] = -m.signs[0];
            }
            let p = hom_profile(&presentation_from_diagram(&m, variant), &groups)?;
            Ok(&p == base)
        };

        // R1 for the unframed variant (both signs, both chiralities)
        let mut pass = true;
        let mut witness = None;
        for sign in [1i8, -1] {
            for over_first in [true, false] {
                let moved = r1_add(&d, 0, 1, sign, over_first)?;
                if !compare(&moved, DiagramVariant::Unframed, &base_unframed)? {
                    pass = false;
                    witness = Some(format!("{name}: R1 sign {sign} over_first {over_first}"));
                }
            }
        }
        report.push(format!("R1/{name}"), pass, witness);

        // R1' for the framed variant
        let moved = r1_framed_add(&d, 0, 1)?;
        let ok = compare(&moved, DiagramVariant::FramedSimplified, &base_framed)?;
        report.push(
            format!("R1'/{name}"),
            ok,
            if ok { None } else { Some(format!("{name}: R1'")) },
        );

        // R2 for both variants
        let moved = r2_add(&d, 0, 0, 0, 2, 1)?;
        let ok1 = compare(&moved, DiagramVariant::Unframed, &base_unframed)?;
        let ok2 = compare(&moved, DiagramVariant::FramedSimplified, &base_framed)?;
        report.push(
            format!("R2/{name}"),
            ok1 && ok2,
            if ok1 && ok2 {
                None
            } else {
                Some(format!("{name}: R2"))
            },
        );
    }

    // R3 via the braid relation on closures
    let lhs = BraidWord::parse("strands: 3; word: s1 s2 s1 s2^-1").unwrap();
    let rhs = BraidWord::parse("strands: 3; word: s2 s1 s2 s2^-1").unwrap();
    let groups8 = groups_of_order_up_to(8);
    let mut pass = true;
    let mut witness = None;
    for variant in [DiagramVariant::Unframed, DiagramVariant::FramedSimplified] {
        let mut d1 = braid_closure_diagram(&lhs);
        let d2 = braid_closure_diagram(&rhs);
        if mutate {
            d1.signs[0] = -d1.signs[0];
        }
        let p1 = hom_profile(&presentation_from_diagram(&d1, variant), &groups8)?;
        let p2 = hom_profile(&presentation_from_diagram(&d2, variant), &groups8)?;
        if p1 != p2 {
            pass = false;
            witness = Some(format!("R3 {variant:?}"));
        }
    }
    report.push("R3/braid-relation", pass, witness);
    Ok(report)
}

/// Kirby suite: K-I invariance with the exact |Hom| scaling, and scripted
/// K-II slides.
pub fn run_kirby(mutate: bool) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        suite: "kirby".into(),
        checks: Vec::new(),
    };
    let groups: Vec<_> = [cyclic(4), symmetric(3), quaternion8()]
        .into_iter()
        .map(|g| {
            let cd = conjugacy(&g);
            (g, cd)
        })
        .collect();
    let hopf = SurgeryPresentation::new(braid_closure_diagram(
        &BraidWord::parse("strands: 2; word: s1 s1").unwrap(),
    ));
    let trefoil = SurgeryPresentation::new(braid_closure_diagram(
        &BraidWord::parse("strands: 2; word: s1 s1 s1").unwrap(),
    ));
    let fixtures = vec![
        ("unknot+1".to_string(), SurgeryPresentation::framed_unknot(1)),
        ("unknot0".to_string(), SurgeryPresentation::framed_unknot(0)),
        ("hopf".to_string(), hopf.clone()),
    ];
    let two_circles = disjoint_union(
        &SurgeryPresentation::framed_unknot(0),
        &SurgeryPresentation::framed_unknot(0),
    );
    let circle_kink = disjoint_union(
        &SurgeryPresentation::framed_unknot(0),
        &SurgeryPresentation::framed_unknot(1),
    );
    let tre_circle = disjoint_union(&trefoil, &SurgeryPresentation::framed_unknot(0));
    let slides: Vec<(String, SurgeryPresentation, (usize, usize, usize))> = vec![
        ("hopf-arc0".to_string(), hopf.clone(), (0, 0, 1)),
        ("hopf-arc1".to_string(), hopf.clone(), (0, 1, 1)),
        ("two-circles".to_string(), two_circles, (0, 0, 1)),
        ("circle-over-kink".to_string(), circle_kink, (0, 0, 1)),
        ("circle-over-trefoil".to_string(), tre_circle, (1, 0, 0)),
    ];
    for (g, cd) in &groups {
        for (name, s) in &fixtures {
            let base = mfd_invariant(g, cd, s)?;
            let mut ok = base.routes_agree();
            let mut detail = None;
            for sign in [1i8, -1] {
                let moved = kirby_one(s, sign);
                let after = mfd_invariant(g, cd, &moved)?;
                let scale = if mutate { 1 } else { g.order() as u64 };
                if after.value() != base.value() || after.hom_count != base.hom_count * scale {
                    ok = false;
                    detail = Some(format!(
                        "{}: K-I({sign}) on {name}: {} -> {}",
                        g.name(),
                        base.value(),
                        after.value()
                    ));
                }
            }
            report.push(format!("kirby-I/{}/{}", g.name(), name), ok, detail);
        }
        for (name, s, &(ci, arc, cj)) in slides.iter().map(|(n, s, m)| (n, s, m)) {
            let base = mfd_invariant(g, cd, s)?;
            let mut moved = kirby_two(s, ci, arc, cj)?;
            if mutate && !moved.diagram.signs.is_empty() {
                let last = moved.diagram.signs.len() - 1;
                moved.diagram.signs[last] = -moved.diagram.signs[last];
            }
            let after = mfd_invariant(g, cd, &moved)?;
            let ok = after.value() == base.value()
                && after.hom_count == base.hom_count
                && after.routes_agree();
            report.push(
                format!("kirby-II/{}/{}", g.name(), name),
                ok,
                if ok {
                    None
                } else {
                    Some(format!("{} -> {}", base.value(), after.value()))
                },
            );
        }
    }
    Ok(report)
}

/// Bridge suite: trace-route Λ equals the pinned hom-count of the barred
/// presentation on seeded random braids, plus the braid-vs-diagram
/// calibration over all groups of order <= 12.
pub fn run_bridge(seed: u64, braids: usize, mutate: bool) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        suite: "bridge".into(),
        checks: Vec::new(),
    };
    let grp = symmetric(3);
    let pairs = grp.extended_pairs();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pass = true;
    let mut witness = None;
    'outer: for i in 0..braids {
        let braid = random_braid(&mut rng, 5, 10);
        let cb = ColoredBraid::uniform(braid.clone(), Color::element(0));
        let fp = presentation_from_braid(&cb, BraidVariant::Barred);
        let colors = fp.color_generators();
        for &(g, b) in &pairs {
            let via_trace = lambda_invariant(&grp, g, b, &braid)?.value;
            let bad = if mutate { grp.mul(g, 1) } else { g };
            let pins: Vec<(usize, usize)> = colors
                .iter()
                .map(|&cg| {
                    if fp.gens[cg].name.starts_with('C') {
                        (cg, bad)
                    } else {
                        (cg, b)
                    }
                })
                .collect();
            let via_homs = count_homs(&fp, &grp, &HomCountQuery::element_pins(&pins), None)?;
            if via_trace != via_homs {
                pass = false;
                witness = Some(format!(
                    "braid {i} = {braid:?}, pair ({g},{b}): {via_trace} vs {via_homs}"
                ));
                break 'outer;
            }
        }
    }
    report.push("lambda-vs-homcount/S3", pass, witness);

    // calibration: braid and diagram presentations of the trefoil and the
    // figure eight agree on hom-count profiles over every group of order <= 12
    let groups = groups_of_order_up_to(12);
    for (name, text) in [
        ("trefoil", "strands: 2; word: s1 s1 s1"),
        ("figure8", "strands: 3; word: s1 s2^-1 s1 s2^-1"),
    ] {
        let cb = ColoredBraid::uniform(BraidWord::parse(text).unwrap(), Color::element(0));
        let d = braid_closure_diagram(&cb.braid);
        for (bv, dv) in [
            (BraidVariant::Unframed, DiagramVariant::Unframed),
            (BraidVariant::Framed, DiagramVariant::Framed),
            (BraidVariant::Framed, DiagramVariant::FramedSimplified),
        ] {
            let pb = hom_profile(&presentation_from_braid(&cb, bv), &groups)?;
            let pd = hom_profile(&presentation_from_diagram(&d, dv), &groups)?;
            let ok = pb == pd;
            report.push(
                format!("calibration/{name}/{bv:?}-{dv:?}"),
                ok,
                if ok {
                    None
                } else {
                    Some("profiles differ".to_string())
                },
            );
        }
    }
    Ok(report)
}

/// Closed-form anchors: unknot values and small surgery values.
pub fn run_anchors() -> Result<SuiteReport> {
    let mut report = SuiteReport {
        suite: "anchors".into(),
        checks: Vec::new(),
    };
    let unknot = BraidWord::parse("strands: 1; word:").unwrap();
    for g in [cyclic(4), symmetric(3), quaternion8()] {
        let cd = conjugacy(&g);
        let mut ok = true;
        let mut witness = None;
        for &(gg, bb) in &g.extended_pairs() {
            let expect = if bb == 0 { g.order() as u64 } else { 0 };
            let v = lambda_invariant(&g, gg, bb, &unknot)?.value;
            if v != expect {
                ok = false;
                witness = Some(format!("Λ(unknot; ({gg},{bb})) = {v}"));
            }
        }
        report.push(format!("unknot-lambda/{}", g.name()), ok, witness);

        let plus = mfd_invariant(&g, &cd, &SurgeryPresentation::framed_unknot(1))?;
        let minus = mfd_invariant(&g, &cd, &SurgeryPresentation::framed_unknot(-1))?;
        let zero = mfd_invariant(&g, &cd, &SurgeryPresentation::framed_unknot(0))?;
        let empty = mfd_invariant(&g, &cd, &SurgeryPresentation::empty())?;
        use num_rational::Ratio;
        let ok = plus.value() == Ratio::from_integer(1)
            && minus.value() == Ratio::from_integer(1)
            && zero.value() == Ratio::from_integer(g.order() as i64)
            && empty.value() == Ratio::from_integer(1);
        report.push(
            format!("surgery-anchors/{}", g.name()),
            ok,
            if ok {
                None
            } else {
                Some(format!(
                    "values: {} {} {} {}",
                    plus.value(),
                    minus.value(),
                    zero.value(),
                    empty.value()
                ))
            },
        );
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Experiments: evidence-gathering, nothing asserted.
// ---------------------------------------------------------------------------

/// Reports whether reversing orientations WITHOUT inverting colors changes
/// unframed functor values (evidence about unoriented invariance).
pub fn experiment_unoriented(g: &FiniteGroup) -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    for (text, colors) in [
        ("strands: 2; word: s1 s1 s1", vec![Color::element(1)]),
        (
            "strands: 2; word: s1 s1",
            vec![Color::element(1), Color::element(2)],
        ),
    ] {
        let cb = ColoredBraid::new(BraidWord::parse(text).unwrap(), colors)?;
        let t = crate::tangle::braid_closure_tangle(&cb)?;
        let base = crate::tangle::evaluate_closed(g, &t, false)?;
        let (_, count) = t.components()?;
        for comp in 0..count {
            // reverse orientation but keep the color (no inversion)
            let mut t2 = t.reverse_component_with(g, comp)?;
            // undo the color inversion the helper applied
            let (per_interface, _) = t.components()?;
            for (q, pt) in t2.top.iter_mut().enumerate() {
                if per_interface[0][q] == comp {
                    pt.0 = (g.inv(pt.0 .0), g.inv(pt.0 .1));
                }
            }
            for (li, l) in t2.layers.iter_mut().enumerate() {
                if matches!(l.kind, PieceKind::CapR | PieceKind::CapL)
                    && per_interface[li + 1][l.pos - 1] == comp
                {
                    l.cap_color = l.cap_color.map(|c| (g.inv(c.0), g.inv(c.1)));
                }
            }
            let rev = crate::tangle::evaluate_closed(g, &t2, false)?;
            out.push((
                format!("{text} comp {comp}: {base} vs {rev}"),
                base == rev,
            ));
        }
    }
    Ok(out)
}

/// Tabulates Λ vs Δ on extended pairs with nontrivial involution part.
pub fn experiment_lambda_vs_delta(g: &FiniteGroup, seed: u64) -> Result<Vec<(String, bool)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..12 {
        let braid = random_braid(&mut rng, 3, 7);
        for &(gg, bb) in g.extended_pairs().iter().filter(|&&(_, b)| b != 0) {
            let l = lambda_invariant(g, gg, bb, &braid)?.value;
            let d = delta_invariant(g, gg, bb, &braid)?.value;
            out.push((
                format!("{} pair ({gg},{bb}) on {:?}: Λ = {l}, Δ = {d}", g.name(), braid.word),
                l == d,
            ));
        }
    }
    Ok(out)
}

/// Compares |Hom(G_L, G)| with |Hom(π₁(M_L), G)| * |G|^m, where the
/// fundamental group is presented by Wirtinger generators with blackboard
/// longitude relators.
pub fn experiment_mfd_pi1(s: &SurgeryPresentation) -> Result<Vec<(String, bool)>> {
    use crate::fpgroup::{FPGroup, GenKind, Generator};
    let d = &s.diagram;
    let wirt = presentation_from_diagram(d, DiagramVariant::Wirtinger);
    // longitude of each component: product over its under-passages of the
    // over-arc generator with the crossing sign
    let (arc_classes, _) = crate::presentations::long_arc_classes(d);
    let mut relators = wirt.relators.clone();
    for comp in &d.components {
        let mut word: Vec<(usize, i8)> = Vec::new();
        for p in comp {
            if !p.over {
                let (oc, ok) = d.find_passage(p.crossing, true);
                let l = d.components[oc].len();
                let over_arc = arc_classes[oc][(ok + l - 1) % l];
                word.push((over_arc, d.signs[p.crossing]));
            }
        }
        if !word.is_empty() {
            relators.push(word);
        }
    }
    let pi1 = FPGroup::new(
        (0..wirt.num_gens())
            .map(|i| Generator {
                name: format!("m{i}"),
                kind: GenKind::Strand,
            })
            .collect(),
        relators,
    )?;
    let gl = s.group_presentation();
    let m = d.num_components() as u32;
    let mut out = Vec::new();
    for g in groups_of_order_up_to(8) {
        let a = count_homs(&gl, &g, &HomCountQuery::default(), None)?;
        let b = count_homs(&pi1, &g, &HomCountQuery::default(), None)?
            * (g.order() as u64).pow(m);
        out.push((format!("{}: |Hom(G_L)| = {a}, |Hom(π₁)|·|G|^m = {b}", g.name()), a == b));
    }
    Ok(out)
}
