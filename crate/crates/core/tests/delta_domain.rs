//! Documents the exact domain of the writhe-corrected invariant: for
//! commuting pairs whose second entry has order > 2, positive stabilization
//! preserves the value but negative stabilization can shift it (the
//! correction twist is blind to the stabilization chirality). Extended
//! pairs are immune: the twist is an involution.

use grouplink::braid::BraidWord;
use grouplink::group::cyclic;
use grouplink::invariants::delta_invariant;

#[test]
fn negative_stabilization_shifts_on_order_three_twist() {
    let g = cyclic(3);
    let unknot = BraidWord::parse("strands: 1; word:").unwrap();
    let neg_kink = BraidWord::parse("strands: 2; word: s1^-1").unwrap();
    let pos_kink = BraidWord::parse("strands: 2; word: s1").unwrap();
    // commuting pair (0, 1): the twist has order 3
    let base = delta_invariant(&g, 0, 1, &unknot).unwrap().value;
    let plus = delta_invariant(&g, 0, 1, &pos_kink).unwrap().value;
    let minus = delta_invariant(&g, 0, 1, &neg_kink).unwrap().value;
    assert_eq!(base, 0);
    assert_eq!(plus, base);
    assert_eq!(minus, 3, "the negative kink sees b^3 = e instead of b = e");
}
