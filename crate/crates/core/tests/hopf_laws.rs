//! Hopf monoid laws for weighted ordered set partitions: quasishuffle
//! restriction, associativity, coassociativity, and the product-coproduct
//! compatibility diagram, plus vector-space laws for formal sums.

use proptest::prelude::*;

use gphopf::formal::FormalSum;
use gphopf::label::{Label, LabelSet};
use gphopf::osp::{
    quasishuffles, wosp_coproduct, wosp_coproduct_sum, wosp_product, wosp_product_sums,
    OrderedSetPartition, WeightedOsp,
};
use gphopf::rational::Rat;

/// Random ordered set partition of a set of labels.
fn arb_osp(labels: Vec<u64>) -> impl Strategy<Value = OrderedSetPartition> {
    let n = labels.len();
    proptest::collection::vec(0..n.max(1), n).prop_map(move |assignment| {
        // group by assignment value in order of first appearance
        let mut blocks: Vec<LabelSet> = Vec::new();
        let mut seen: Vec<usize> = Vec::new();
        for (l, a) in labels.iter().zip(&assignment) {
            match seen.iter().position(|s| s == a) {
                Some(i) => {
                    blocks[i].insert(Label::from(*l));
                }
                None => {
                    seen.push(*a);
                    blocks.push([Label::from(*l)].into_iter().collect());
                }
            }
        }
        OrderedSetPartition::new(blocks).unwrap()
    })
}

fn arb_weights(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec((-6i64..=6, 1i64..=3), n)
        .prop_map(|ws| ws.into_iter().map(|(p, q)| Rat::new(p, q)).collect())
}

fn arb_wosp(labels: Vec<u64>) -> impl Strategy<Value = WeightedOsp> {
    arb_osp(labels).prop_flat_map(|osp| {
        let k = osp.num_blocks();
        arb_weights(k).prop_map(move |ws| WeightedOsp::new(osp.clone(), ws).unwrap())
    })
}

proptest! {
    #[test]
    fn quasishuffles_restrict_to_their_factors(
        f in arb_osp(vec![1, 2, 3]),
        g in arb_osp(vec![4, 5]),
    ) {
        let shuffles = quasishuffles(&f, &g).unwrap();
        prop_assert!(!shuffles.is_empty());
        let mut sorted = shuffles.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), shuffles.len(), "duplicate quasishuffle");
        for h in &shuffles {
            prop_assert_eq!(&h.restrict(&f.ground()).unwrap(), &f);
            prop_assert_eq!(&h.restrict(&g.ground()).unwrap(), &g);
        }
    }

    #[test]
    fn hopf_compatibility_diagram(
        a in arb_wosp(vec![1, 2]),
        b in arb_wosp(vec![3, 4]),
        t1_mask in 0u32..16,
    ) {
        // Δ_{T1,T2}(a·b) computed directly equals the route through the
        // pairwise intersections A = S1∩T1, B = S1∩T2, C = S2∩T1, D = S2∩T2
        let ground: Vec<Label> = a.ground().iter().chain(b.ground().iter()).cloned().collect();
        let t1: LabelSet = ground
            .iter()
            .enumerate()
            .filter(|(i, _)| t1_mask >> i & 1 == 1)
            .map(|(_, l)| l.clone())
            .collect();
        let product = wosp_product(&a, &b).unwrap();
        let lhs = wosp_coproduct_sum(&product, &t1).unwrap();

        let sa: LabelSet = a.ground();
        let inter_a: LabelSet = sa.intersection(&t1).cloned().collect();
        let inter_c: LabelSet = b.ground().intersection(&t1).cloned().collect();
        let mut rhs: FormalSum<(WeightedOsp, WeightedOsp)> = FormalSum::zero();
        if let (Some((a1, a2)), Some((b1, b2))) = (
            wosp_coproduct(&a, &inter_a).unwrap(),
            wosp_coproduct(&b, &inter_c).unwrap(),
        ) {
            let tops = wosp_product(&a1, &b1).unwrap();
            let bottoms = wosp_product(&a2, &b2).unwrap();
            for (x, cx) in tops.iter() {
                for (y, cy) in bottoms.iter() {
                    rhs.add_term((x.clone(), y.clone()), cx * cy);
                }
            }
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn formal_sums_are_a_vector_space(
        coeffs in proptest::collection::vec((-9i64..=9, 1i64..=4), 1..6),
        keys in proptest::collection::vec(0u8..5, 1..6),
    ) {
        let s: FormalSum<u8> = keys
            .iter()
            .zip(&coeffs)
            .map(|(k, (p, q))| (*k, Rat::new(*p, *q)))
            .collect();
        let t: FormalSum<u8> = keys
            .iter()
            .rev()
            .zip(&coeffs)
            .map(|(k, (p, q))| (*k, Rat::new(*q, p.abs().max(1))))
            .collect();
        prop_assert_eq!((s.clone() + t.clone()) - t.clone(), s.clone());
        prop_assert!((s.clone() - s.clone()).is_zero());
        prop_assert_eq!(s.clone() + t.clone(), t + s);
    }
}

/// Exhaustive associativity on weighted OSPs over every ordered partition of
/// a four-element ground set into three nonempty parts.
#[test]
fn associativity_exhaustive() {
    for n in 3..=4u64 {
        let ground: Vec<Label> = (1..=n).map(Label::from).collect();
        associativity_on(&ground);
    }
}

fn associativity_on(ground: &[Label]) {
    let parts3 = three_part_splits(ground);
    for (sa, sb, sc) in parts3 {
        for a in all_wosps(&sa) {
            for b in all_wosps(&sb) {
                for c in all_wosps(&sc) {
                    let ab = wosp_product(&a, &b).unwrap();
                    let left = wosp_product_sums(&ab, &FormalSum::singleton(c.clone())).unwrap();
                    let bc = wosp_product(&b, &c).unwrap();
                    let right = wosp_product_sums(&FormalSum::singleton(a.clone()), &bc).unwrap();
                    assert_eq!(left, right, "associativity fails at {a} {b} {c}");
                }
            }
        }
    }
}

/// Exhaustive coassociativity on weighted OSPs over a four-element ground
/// set: both orders of iterated coproduct agree.
#[test]
fn coassociativity_exhaustive() {
    let ground: Vec<Label> = (1..=4u64).map(Label::from).collect();
    for x in all_wosps(&ground) {
        for (r, s, _t) in three_part_splits_allow_empty(&ground) {
            // Δ_{R,S⊔T} then Δ_{S,T} on the right factor
            let rs: LabelSet = r.iter().cloned().collect();
            let route1 = wosp_coproduct(&x, &rs).unwrap().and_then(|(xr, rest)| {
                wosp_coproduct(&rest, &s.iter().cloned().collect())
                    .unwrap()
                    .map(|(xs, xt)| (xr, xs, xt))
            });
            // Δ_{R⊔S,T} then Δ_{R,S} on the left factor
            let rs_union: LabelSet = r.iter().chain(s.iter()).cloned().collect();
            let route2 = wosp_coproduct(&x, &rs_union).unwrap().and_then(|(head, xt)| {
                wosp_coproduct(&head, &r.iter().cloned().collect())
                    .unwrap()
                    .map(|(xr, xs)| (xr, xs, xt))
            });
            assert_eq!(route1, route2, "coassociativity fails for {x} at {r:?}|{s:?}");
        }
    }
}

fn three_part_splits(ground: &[Label]) -> Vec<(Vec<Label>, Vec<Label>, Vec<Label>)> {
    three_part_splits_allow_empty(ground)
        .into_iter()
        .filter(|(a, b, c)| !a.is_empty() && !b.is_empty() && !c.is_empty())
        .collect()
}

fn three_part_splits_allow_empty(ground: &[Label]) -> Vec<(Vec<Label>, Vec<Label>, Vec<Label>)> {
    let n = ground.len();
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n];
    loop {
        let mut parts: Vec<Vec<Label>> = vec![Vec::new(), Vec::new(), Vec::new()];
        for (l, &a) in ground.iter().zip(&assignment) {
            parts[a].push(l.clone());
        }
        out.push((parts[0].clone(), parts[1].clone(), parts[2].clone()));
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            assignment[pos] += 1;
            if assignment[pos] < 3 {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

/// All weighted OSPs on the given labels with a fixed small weight palette;
/// enough to exercise every block structure.
fn all_wosps(labels_in: &[Label]) -> Vec<WeightedOsp> {
    if labels_in.is_empty() {
        return vec![WeightedOsp::empty()];
    }
    let ground: LabelSet = labels_in.iter().cloned().collect();
    OrderedSetPartition::enumerate(&ground)
        .into_iter()
        .map(|osp| {
            let k = osp.num_blocks();
            let weights: Vec<Rat> = (0..k).map(|i| Rat::new(i as i64 + 1, 2)).collect();
            WeightedOsp::new(osp, weights).unwrap()
        })
        .collect()
}
