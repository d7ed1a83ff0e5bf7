//! The strongest cross-checks in the crate: every closure-trace value must
//! equal the corresponding constrained homomorphism count.

use grouplink::braid::{BraidWord, Color, ColoredBraid};
use grouplink::fpgroup::{count_homs, HomCountQuery};
use grouplink::group::{cyclic, dihedral, quaternion8, symmetric, FiniteGroup};
use grouplink::invariants::{colored_closure_invariant, delta_invariant, lambda_invariant};
use grouplink::presentations::{presentation_from_braid, BraidVariant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_braid(rng: &mut ChaCha8Rng, max_n: usize, max_len: usize) -> BraidWord {
    let n = rng.gen_range(1..=max_n);
    let len = if n == 1 { 0 } else { rng.gen_range(0..=max_len) };
    let word = (0..len)
        .map(|_| (rng.gen_range(1..n), if rng.gen_bool(0.5) { 1i8 } else { -1 }))
        .collect();
    BraidWord::new(n, word).unwrap()
}

/// trace-route Λ equals the pinned hom-count of the barred presentation
#[test]
fn lambda_equals_barred_hom_count() {
    let grp = symmetric(3);
    let pairs = grp.extended_pairs();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let braid = random_braid(&mut rng, 4, 8);
        let cb = ColoredBraid::uniform(braid.clone(), Color::element(0));
        let fp = presentation_from_braid(&cb, BraidVariant::Barred);
        let colors = fp.color_generators();
        for &(g, b) in &pairs {
            let via_trace = lambda_invariant(&grp, g, b, &braid).unwrap().value;
            // pin every component's C to g and B to b
            let pins: Vec<(usize, usize)> = colors
                .iter()
                .map(|&cg| {
                    let name = &fp.gens[cg].name;
                    if name.starts_with('C') {
                        (cg, g)
                    } else {
                        (cg, b)
                    }
                })
                .collect();
            let via_homs = count_homs(&fp, &grp, &HomCountQuery::element_pins(&pins), None).unwrap();
            assert_eq!(via_trace, via_homs, "braid {braid:?} pair ({g},{b})");
        }
    }
}

/// colored unframed closure equals the pinned unframed-presentation count
#[test]
fn colored_closure_equals_plain_hom_count() {
    let grp = dihedral(4);
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..40 {
        let braid = random_braid(&mut rng, 4, 8);
        let comps = braid.closure_components();
        let colors: Vec<Color> = comps
            .iter()
            .map(|_| Color::element(rng.gen_range(0..grp.order())))
            .collect();
        let cb = ColoredBraid::new(braid.clone(), colors.clone()).unwrap();
        let via_trace = colored_closure_invariant(&grp, &cb, false).unwrap().value;
        let fp = presentation_from_braid(&cb, BraidVariant::Unframed);
        let pins: Vec<(usize, usize)> = fp
            .color_generators()
            .iter()
            .enumerate()
            .map(|(j, &cg)| (cg, colors[j].pair().unwrap().0))
            .collect();
        let via_homs = count_homs(&fp, &grp, &HomCountQuery::element_pins(&pins), None).unwrap();
        assert_eq!(via_trace, via_homs, "braid {braid:?} colors {colors:?}");
    }
}

/// colored framed closure equals the pinned framed-presentation count
#[test]
fn framed_closure_equals_framed_hom_count() {
    let grp = symmetric(3);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..40 {
        let braid = random_braid(&mut rng, 4, 8);
        let comps = braid.closure_components();
        let colors: Vec<Color> = comps
            .iter()
            .map(|_| Color::element(rng.gen_range(0..grp.order())))
            .collect();
        let cb = ColoredBraid::new(braid.clone(), colors.clone()).unwrap();
        let via_trace = colored_closure_invariant(&grp, &cb, true).unwrap().value;
        let fp = presentation_from_braid(&cb, BraidVariant::Framed);
        let pins: Vec<(usize, usize)> = fp
            .color_generators()
            .iter()
            .enumerate()
            .map(|(j, &cg)| (cg, colors[j].pair().unwrap().0))
            .collect();
        let via_homs = count_homs(&fp, &grp, &HomCountQuery::element_pins(&pins), None).unwrap();
        assert_eq!(via_trace, via_homs, "braid {braid:?} colors {colors:?}");
    }
}

/// Δ equals the pinned hom-count of the twisted presentation, including
/// commuting pairs whose involution part has order > 2
#[test]
fn delta_equals_tilde_hom_count() {
    for grp in [symmetric(3), cyclic(6), quaternion8()] {
        let pairs = grp.commuting_pairs();
        let mut rng = ChaCha8Rng::seed_from_u64(5150);
        for _ in 0..25 {
            let braid = random_braid(&mut rng, 3, 7);
            let cb = ColoredBraid::uniform(braid.clone(), Color::element(0));
            let fp = presentation_from_braid(&cb, BraidVariant::Tilde);
            let colors = fp.color_generators();
            for _ in 0..8 {
                let (g, b) = pairs[rng.gen_range(0..pairs.len())];
                let via_trace = delta_invariant(&grp, g, b, &braid).unwrap().value;
                let pins: Vec<(usize, usize)> = colors
                    .iter()
                    .map(|&cg| {
                        let name = &fp.gens[cg].name;
                        if name.starts_with('C') {
                            (cg, g)
                        } else {
                            (cg, b)
                        }
                    })
                    .collect();
                let via_homs =
                    count_homs(&fp, &grp, &HomCountQuery::element_pins(&pins), None).unwrap();
                assert_eq!(
                    via_trace, via_homs,
                    "{} braid {braid:?} pair ({g},{b})",
                    grp.name()
                );
            }
        }
    }
}

/// extended pairs: the modified-crossing route and the writhe-corrected
/// route agree where both are defined with b = e
#[test]
fn lambda_delta_agree_trivial_involution() {
    let grp: FiniteGroup = dihedral(4);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..25 {
        let braid = random_braid(&mut rng, 4, 8);
        for g in 0..grp.order() {
            assert_eq!(
                lambda_invariant(&grp, g, 0, &braid).unwrap().value,
                delta_invariant(&grp, g, 0, &braid).unwrap().value
            );
        }
    }
}
