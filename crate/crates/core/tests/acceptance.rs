//! Acceptance suite: one test per headline property, each printing a
//! PASS line (visible with `--nocapture`). Every comparison is exact
//! rational arithmetic; there are no tolerances anywhere.

use gphopf::building_set::BuildingSet;
use gphopf::formal::FormalSum;
use gphopf::gp::{
    canonical_form, indicator_equal, indicator_expansion, indicator_value, GpElement, Point,
    SubmodularGp,
};
use gphopf::hopf::{antipode_face_sum, universal_tutte};
use gphopf::label::{labels, Label, LabelSet};
use gphopf::matroid::all_matroids;
use gphopf::osp::{wosp_coproduct_sum, wosp_product_sums, WeightedOsp};
use gphopf::poly::{BiPoly, UniPoly};
use gphopf::poset_invariants::{
    all_posets, count_order_preserving_maps, order_polynomial, poincare, poincare_mobius_oracle,
};
use gphopf::preposet::{all_preposets, ConeMembership, Preposet, WeightedPreposet};
use gphopf::rational::Rat;
use gphopf::sampling::{boundary_enriched_samples, hyperplane_samples};
use gphopf::valuation::{
    builtin_relations, point_ray_line, poset_cone_subdivision, poset_relation_residuals,
    preposet_relation_residuals, trivial_permutahedron, u24_split, u24_split_relabeled,
    u24_split_relabeled_2,
    weak_check, BuiltinRelation, INVARIANT_NAMES,
};

fn pass(criterion: &str) {
    println!("acceptance: {criterion}: PASS");
}

/// Matroid polytopes on grounds {1..k} for k = 1..=n.
fn matroid_polytopes_up_to(n: usize) -> Vec<SubmodularGp> {
    (1..=n)
        .flat_map(|size| {
            let ground: LabelSet = (1..=size as u64).map(Label::from).collect();
            all_matroids(&ground).into_iter().map(|m| m.to_gp())
        })
        .collect()
}

fn indicator_of_gp(p: &SubmodularGp, x: &Point) -> Rat {
    if p.contains(x).unwrap() {
        Rat::one()
    } else {
        Rat::zero()
    }
}

#[test]
fn criterion_01_hypersimplex_split_strong_and_pointwise() {
    let k = u24_split();
    assert!(k.strong_check().unwrap(), "canonical form of the split residue must vanish");
    // pointwise indicator identity at >= 200 sampled rational points
    let relation = k.indicator_relation();
    let parent = k.parent().gp();
    let samples = boundary_enriched_samples(&parent.vertices(), &parent.total(), 200, 91);
    assert!(samples.len() >= 200);
    for x in &samples {
        assert!(
            indicator_value(&relation, x).unwrap().is_zero(),
            "indicator identity fails at {x:?}"
        );
    }
    pass("1. hypersimplex split: canonical form vanishes and 200+ point identity holds");
}

#[test]
fn criterion_02_tutte_valuation_on_split() {
    let k = u24_split();
    // x^2 + 2x + 2y + y^2 = 2(x^2 + xy + y^2 + x + y) - (x + y)^2
    let lhs = k.parent().matroid().unwrap().tutte();
    let mut five_terms = BiPoly::zero();
    for (a, b) in [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1)] {
        five_terms.add_term(a, b, Rat::one());
    }
    let mut square = BiPoly::zero();
    for (a, b, c) in [(2, 0, 1), (1, 1, 2), (0, 2, 1)] {
        square.add_term(a, b, Rat::from(c));
    }
    assert_eq!(k.cells()[0].matroid().unwrap().tutte(), five_terms);
    assert_eq!(k.cells()[1].matroid().unwrap().tutte(), five_terms);
    assert_eq!(k.cells()[2].matroid().unwrap().tutte(), square);
    let rhs = five_terms.clone() + five_terms - square;
    assert_eq!(lhs, rhs);
    let report = weak_check("tutte", &k).unwrap();
    assert!(report.pass, "tutte residual: {}", report.residual);
    pass("2. Tutte identity on the split, exact");
}

#[test]
fn criterion_03_brianchon_gram_pointwise() {
    let mut cases = matroid_polytopes_up_to(4);
    // the three-element permutahedron
    cases.push(BuildingSet::full(labels([1, 2, 3])).nestohedron().unwrap());
    for p in &cases {
        let bg = p.brianchon_gram().unwrap();
        let oracles: Vec<(ConeMembership, Rat)> = bg
            .iter()
            .map(|(cone, c)| (cone.membership(), c.clone()))
            .collect();
        let samples = boundary_enriched_samples(&p.vertices(), &p.total(), 100, 7);
        assert!(samples.len() >= 100);
        for x in &samples {
            let lhs = indicator_of_gp(p, x);
            let mut rhs = Rat::zero();
            for (oracle, c) in &oracles {
                if oracle.contains(x).unwrap() {
                    rhs += c.clone();
                }
            }
            assert_eq!(lhs, rhs, "Brianchon-Gram fails for {p:?} at {x:?}");
        }
    }
    pass("3. Brianchon-Gram pointwise identity on all matroid polytopes (n <= 4) and the permutahedron");
}

#[test]
fn criterion_04_straightening_pointwise() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
    let mut preposets: Vec<Preposet> = Vec::new();
    for n in 1..=4usize {
        let ground: LabelSet = (1..=n as u64).map(Label::from).collect();
        preposets.extend(all_preposets(&ground));
    }
    assert_eq!(preposets.iter().filter(|q| q.size_ground() == 4).count(), 355);
    for q in &preposets {
        let weights: Vec<Rat> = (0..q.num_classes())
            .map(|_| Rat::new(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
            .collect();
        let wq = WeightedPreposet::new(q.clone(), weights).unwrap();
        let cone = gphopf::gp::TranslatedPreposetCone::new(wq.clone());
        let st = cone.straighten();
        let oracles: Vec<(ConeMembership, Rat)> = st
            .iter()
            .map(|(w, c)| (gphopf::gp::wosp_cone(w).membership(), c.clone()))
            .collect();
        let lhs_oracle = ConeMembership::new(&wq);
        let total = wq.total_weight();
        for x in hyperplane_samples(&q.ground(), &total, 100, 5 + q.size_ground() as u64) {
            let lhs = if lhs_oracle.contains(&x).unwrap() { Rat::one() } else { Rat::zero() };
            let mut rhs = Rat::zero();
            for (oracle, c) in &oracles {
                if oracle.contains(&x).unwrap() {
                    rhs += c.clone();
                }
            }
            assert_eq!(lhs, rhs, "straightening fails for {q} at {x:?}");
        }
    }
    pass("4. straightening pointwise identity on all 389 preposets with |I| <= 4, random weights");
}

#[test]
fn criterion_05_phi_is_a_hopf_morphism() {
    let phi = |p: &SubmodularGp| -> FormalSum<WeightedOsp> {
        canonical_form(&FormalSum::singleton(GpElement::Polytope(p.clone()))).unwrap()
    };

    // product compatibility: phi(P x Q) = phi(P) · phi(Q), exhaustively for
    // |S| + |T| <= 3
    let mut checked_products = 0usize;
    for s_size in 1..=2usize {
        for t_size in 1..=(3 - s_size) {
            let s_ground: LabelSet = (1..=s_size as u64).map(Label::from).collect();
            let t_ground: LabelSet =
                (s_size as u64 + 1..=(s_size + t_size) as u64).map(Label::from).collect();
            for m1 in all_matroids(&s_ground) {
                for m2 in all_matroids(&t_ground) {
                    let p = m1.to_gp();
                    let q = m2.to_gp();
                    let lhs = phi(&p.product(&q).unwrap());
                    let rhs = wosp_product_sums(&phi(&p), &phi(&q)).unwrap();
                    assert_eq!(lhs, rhs, "product compatibility fails for {m1:?} x {m2:?}");
                    checked_products += 1;
                }
            }
        }
    }
    assert!(checked_products > 0);

    // coproduct compatibility: Δ_{S,T}(phi(P)) = phi(P|_S) ⊗ phi(P/_S)
    for p in matroid_polytopes_up_to(3) {
        for s in gphopf::gp::all_subsets(p.ground()) {
            let lhs = wosp_coproduct_sum(&phi(&p), &s).unwrap();
            let (left, right) = p.restrict_contract(&s).unwrap();
            let mut rhs = FormalSum::zero();
            for (a, ca) in phi(&left).iter() {
                for (b, cb) in phi(&right).iter() {
                    rhs.add_term((a.clone(), b.clone()), ca * cb);
                }
            }
            assert_eq!(lhs, rhs, "coproduct compatibility fails for {p:?} at S={s:?}");
        }
    }
    pass("5. canonical form is a Hopf morphism (products and coproducts, |I| <= 3)");
}

#[test]
fn criterion_06_antipode_corollary() {
    for p in matroid_polytopes_up_to(3) {
        let n = p.ground().len();
        let s = antipode_face_sum(&p).unwrap();
        let as_elements: FormalSum<GpElement> =
            s.iter().map(|(q, c)| (GpElement::Polytope(q.clone()), c.clone())).collect();
        let expansion = indicator_expansion(&as_elements).unwrap();
        let oracles: Vec<(ConeMembership, Rat)> = expansion
            .iter()
            .map(|(w, c)| (gphopf::gp::wosp_cone(w).membership(), c.clone()))
            .collect();
        let sign = if (n - p.dim()) % 2 == 0 { Rat::one() } else { -Rat::one() };
        for x in boundary_enriched_samples(&p.vertices(), &p.total(), 60, 13) {
            let lhs: Rat = oracles
                .iter()
                .filter(|(o, _)| o.contains(&x).unwrap())
                .map(|(_, c)| c.clone())
                .sum();
            let interior = p.contains_interior(&x).unwrap();
            let rhs = if interior { sign.clone() } else { Rat::zero() };
            assert_eq!(lhs, rhs, "antipode corollary fails for {p:?} at {x:?}");
        }
    }
    pass("6. antipode face sum expands to the signed relative-interior indicator (n <= 3)");
}

#[test]
fn criterion_07_universal_tutte_specializes() {
    let mut checked = 0usize;
    for size in 1..=4usize {
        let ground: LabelSet = (1..=size as u64).map(Label::from).collect();
        for m in all_matroids(&ground) {
            let spec = universal_tutte(&m.to_gp()).specialize_matroid_tutte().unwrap();
            assert_eq!(spec, m.tutte(), "specialization fails for {m:?}");
            checked += 1;
        }
    }
    println!("  universal Tutte specialization checked on {checked} matroids");
    pass("7. universal Tutte character specializes to the matroid Tutte polynomial (n <= 4)");
}

#[test]
fn criterion_08_order_polynomial_reciprocity_and_counting() {
    for size in 1..=4usize {
        let ground: LabelSet = (1..=size as u64).map(Label::from).collect();
        for p in all_posets(&ground) {
            let strict = order_polynomial(&p, true);
            let weak = order_polynomial(&p, false);
            // agreement with brute-force counting beyond the interpolation
            // nodes pins the polynomials down
            for k in 0..=size + 2 {
                assert_eq!(
                    strict.eval(&Rat::from(k as i64)),
                    Rat::from(count_order_preserving_maps(&p, k, true) as i64),
                    "strict counting fails for {p} at k={k}"
                );
                assert_eq!(
                    weak.eval(&Rat::from(k as i64)),
                    Rat::from(count_order_preserving_maps(&p, k, false) as i64),
                    "weak counting fails for {p} at k={k}"
                );
            }
            // reciprocity with both sides computed independently
            let n = p.size();
            for k in 1..=size + 2 {
                let lhs = Rat::from(count_order_preserving_maps(&p, k, false) as i64);
                let rhs = strict.eval(&-Rat::from(k as i64));
                let rhs = if n % 2 == 0 { rhs } else { -rhs };
                assert_eq!(lhs, rhs, "reciprocity fails for {p} at k={k}");
            }
        }
    }
    pass("8. order polynomials: reciprocity and brute-force map counts agree (posets, n <= 4)");
}

#[test]
fn criterion_09_poincare_against_mobius_oracle() {
    // the antichain on 3 gives the full braid arrangement
    let anti = gphopf::preposet::Poset::antichain(labels([1, 2, 3]));
    let expect: UniPoly = [(0, Rat::one()), (1, Rat::from(3)), (2, Rat::from(2))]
        .into_iter()
        .collect();
    assert_eq!(poincare(&anti), expect);

    for size in 1..=4usize {
        let ground: LabelSet = (1..=size as u64).map(Label::from).collect();
        for p in all_posets(&ground) {
            assert_eq!(
                poincare(&p),
                poincare_mobius_oracle(&p),
                "Poincaré polynomial disagrees with the Möbius oracle for {p}"
            );
        }
    }
    pass("9. Poincaré polynomial matches the braid intersection-lattice Möbius oracle (n <= 4)");
}

#[test]
fn criterion_10_f_polynomial_recurrence_vs_direct() {
    // named values first
    let triangle = BuildingSet::new(
        labels([1, 2, 3]),
        vec![labels([1]), labels([2]), labels([3]), labels([1, 2, 3])],
    )
    .unwrap();
    let expect_triangle: UniPoly = [(0, Rat::from(3)), (1, Rat::from(3)), (2, Rat::one())]
        .into_iter()
        .collect();
    assert_eq!(triangle.f_polynomial(), expect_triangle);
    let hexagon = BuildingSet::full(labels([1, 2, 3]));
    let expect_hexagon: UniPoly = [(0, Rat::from(6)), (1, Rat::from(6)), (2, Rat::one())]
        .into_iter()
        .collect();
    assert_eq!(hexagon.f_polynomial(), expect_hexagon);

    // all graphs on 4 labeled vertices
    let vertices = labels([1, 2, 3, 4]);
    let all_edges: Vec<(Label, Label)> = vec![
        (Label::from(1), Label::from(2)),
        (Label::from(1), Label::from(3)),
        (Label::from(1), Label::from(4)),
        (Label::from(2), Label::from(3)),
        (Label::from(2), Label::from(4)),
        (Label::from(3), Label::from(4)),
    ];
    let mut checked = 0usize;
    for mask in 0u32..(1 << all_edges.len()) {
        let edges: Vec<(Label, Label)> = all_edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e.clone())
            .collect();
        let b = BuildingSet::graphical(vertices.clone(), &edges).unwrap();
        assert_eq!(
            b.f_polynomial(),
            b.f_polynomial_direct().unwrap(),
            "recurrence vs direct mismatch for edge mask {mask:06b}"
        );
        checked += 1;
    }
    assert_eq!(checked, 64);
    pass("10. nestohedron f-polynomial recurrence equals direct face enumeration (all graphs on 4 vertices)");
}

#[test]
fn criterion_11_catalog_vanishes_on_builtin_relations() {
    // every builtin relation passes the strong check
    for rel in builtin_relations() {
        match &rel {
            BuiltinRelation::Subdivision(k) => {
                assert!(k.strong_check().unwrap(), "strong check fails on {}", k.name());
            }
            BuiltinRelation::Cones(c) => {
                assert!(c.strong_check().unwrap(), "strong check fails on {}", c.name);
            }
        }
    }

    // matroid subdivisions: the whole matroid/polytope catalog
    for k in [u24_split(), u24_split_relabeled(), u24_split_relabeled_2()] {
        for inv in INVARIANT_NAMES.iter().filter(|n| **n != "f-poly") {
            let r = weak_check(inv, &k).unwrap();
            assert!(r.pass, "{inv} residual on {}: {}", k.name(), r.residual);
            println!("  {} / {inv}: PASS", k.name());
        }
    }

    // the trivial nestohedral subdivision: polytope-level invariants
    let k = trivial_permutahedron();
    for inv in ["constant", "universal-norm", "universal-tutte", "f-poly"] {
        let r = weak_check(inv, &k).unwrap();
        assert!(r.pass, "{inv} residual on {}: {}", k.name(), r.residual);
        println!("  {} / {inv}: PASS", k.name());
    }

    // cone relations: poset and preposet invariants
    let rel = poset_cone_subdivision();
    for r in poset_relation_residuals(&rel).unwrap() {
        assert!(r.pass, "{} residual on {}: {}", r.invariant, rel.name, r.residual);
        println!("  {} / {}: PASS", rel.name, r.invariant);
    }
    let rel = point_ray_line();
    for r in preposet_relation_residuals(&rel).unwrap() {
        assert!(r.pass, "{} residual on {}: {}", r.invariant, rel.name, r.residual);
        println!("  {} / {}: PASS", rel.name, r.invariant);
    }
    pass("11. the full invariant catalog vanishes on every built-in relation");
}

#[test]
fn criterion_12_no_nestohedron_subdivisions() {
    use rand::{seq::SliceRandom, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);

    // full-dimensional nestohedra of connected graphs on 3 and 4 vertices
    let mut pool3: Vec<SubmodularGp> = Vec::new();
    let mut pool4: Vec<SubmodularGp> = Vec::new();
    for (n, pool) in [(3usize, &mut pool3), (4usize, &mut pool4)] {
        let vertices: LabelSet = (1..=n as u64).map(Label::from).collect();
        let verts: Vec<Label> = vertices.iter().cloned().collect();
        let mut all_edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                all_edges.push((verts[i].clone(), verts[j].clone()));
            }
        }
        for mask in 0u32..(1 << all_edges.len()) {
            let edges: Vec<(Label, Label)> = all_edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e.clone())
                .collect();
            let b = BuildingSet::graphical(vertices.clone(), &edges).unwrap();
            if b.is_connected() {
                let p = b.nestohedron().unwrap();
                if !pool.contains(&p) {
                    pool.push(p);
                }
            }
        }
    }
    assert!(pool3.len() >= 4 && pool4.len() >= 30);

    let mut trials = 0usize;
    for pool in [&pool3, &pool4] {
        for _ in 0..60 {
            let n_target = pool.choose(&mut rng).unwrap();
            let c1 = pool.choose(&mut rng).unwrap();
            let c2 = pool.choose(&mut rng).unwrap();
            let c3 = pool.choose(&mut rng).unwrap();
            // candidate "subdivision": two full-dimensional cells, with and
            // without a lower-dimensional correction term
            for combo in [
                vec![(c1, Rat::one()), (c2, Rat::one())],
                vec![(c1, Rat::one()), (c2, Rat::one()), (c3, -Rat::one())],
            ] {
                let mut rhs: FormalSum<GpElement> = FormalSum::zero();
                for (p, c) in &combo {
                    rhs.add_term(GpElement::Polytope((*p).clone()), c.clone());
                }
                let lhs = FormalSum::singleton(GpElement::Polytope(n_target.clone()));
                if lhs == rhs {
                    continue; // the trivial combination is not a subdivision
                }
                assert!(
                    !indicator_equal(&lhs, &rhs).unwrap(),
                    "found a forbidden nestohedron relation"
                );
                trials += 1;
            }
        }
    }
    println!("  {trials} randomized nestohedron combinations all rejected");
    pass("12. no nestohedron equals a nontrivial signed combination of nestohedra");
}
