//! Preposets, posets, weighted preposets, and exact membership tests for
//! (translated) preposet cones.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::label::{Label, LabelSet};
use crate::osp::OrderedSetPartition;
use crate::rational::Rat;

/// A reflexive, transitive relation on a finite label set.
///
/// The relation is stored as its reflexive-transitive closure over the sorted
/// ground, so equal relations have equal representations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Preposet {
    ground: Vec<Label>,
    /// `leq[i * n + j]` means `ground[i] <= ground[j]`.
    leq: Vec<bool>,
}

impl Preposet {
    /// Builds the preposet generated by `relations` (pairs `a <= b`), taking
    /// the reflexive-transitive closure.
    pub fn new(ground: LabelSet, relations: &[(Label, Label)]) -> Result<Self> {
        let elems: Vec<Label> = ground.iter().cloned().collect();
        let n = elems.len();
        let idx = |l: &Label| -> Result<usize> {
            elems
                .binary_search(l)
                .map_err(|_| Error::invalid(format!("relation mentions `{l}` outside the ground set")))
        };
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in relations {
            let (i, j) = (idx(a)?, idx(b)?);
            leq[i * n + j] = true;
        }
        // Floyd-Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Ok(Preposet { ground: elems, leq })
    }

    pub fn antichain(ground: LabelSet) -> Self {
        Preposet::new(ground, &[]).unwrap()
    }

    /// The totally ordered preposet of an ordered set partition: everything
    /// in an earlier block is below everything in a later one, and blocks are
    /// equivalence classes.
    pub fn from_osp(osp: &OrderedSetPartition) -> Self {
        let mut rels = Vec::new();
        for (a, block_a) in osp.blocks().iter().enumerate() {
            for (b, block_b) in osp.blocks().iter().enumerate() {
                if a <= b {
                    for x in block_a {
                        for y in block_b {
                            rels.push((x.clone(), y.clone()));
                        }
                    }
                }
            }
        }
        Preposet::new(osp.ground(), &rels).unwrap()
    }

    pub fn ground(&self) -> LabelSet {
        self.ground.iter().cloned().collect()
    }

    pub fn ground_vec(&self) -> &[Label] {
        &self.ground
    }

    pub fn size_ground(&self) -> usize {
        self.ground.len()
    }

    fn index(&self, x: &Label) -> usize {
        self.ground.binary_search(x).expect("label in ground set")
    }

    pub fn leq(&self, x: &Label, y: &Label) -> bool {
        self.leq[self.index(x) * self.ground.len() + self.index(y)]
    }

    pub fn lt(&self, x: &Label, y: &Label) -> bool {
        self.leq(x, y) && !self.leq(y, x)
    }

    pub fn equivalent(&self, x: &Label, y: &Label) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    /// Equivalence classes (x ~ y iff x <= y <= x), each sorted, listed in
    /// order of their minimum label.
    #[allow(clippy::needless_range_loop)]
    pub fn classes(&self) -> Vec<LabelSet> {
        let n = self.ground.len();
        let mut assigned = vec![false; n];
        let mut out: Vec<LabelSet> = Vec::new();
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let mut class = LabelSet::new();
            for j in i..n {
                if self.leq[i * n + j] && self.leq[j * n + i] {
                    assigned[j] = true;
                    class.insert(self.ground[j].clone());
                }
            }
            out.push(class);
        }
        out
    }

    /// Number of equivalence classes, written `|q|` throughout.
    pub fn num_classes(&self) -> usize {
        self.classes().len()
    }

    /// Class-to-class order of the quotient poset: `classes[a] <= classes[b]`
    /// iff representatives compare.
    pub fn class_leq(&self, a: &LabelSet, b: &LabelSet) -> bool {
        let x = a.iter().next().expect("nonempty class");
        let y = b.iter().next().expect("nonempty class");
        self.leq(x, y)
    }

    pub fn is_totally_ordered(&self) -> bool {
        let n = self.ground.len();
        (0..n).all(|i| (0..n).all(|j| self.leq[i * n + j] || self.leq[j * n + i]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.ground.len();
        (0..n).all(|i| (i + 1..n).all(|j| !(self.leq[i * n + j] && self.leq[j * n + i])))
    }

    /// A preantichain: x <= y always forces y <= x.
    pub fn is_preantichain(&self) -> bool {
        let n = self.ground.len();
        (0..n).all(|i| (0..n).all(|j| !self.leq[i * n + j] || self.leq[j * n + i]))
    }

    /// Restriction of the relation to a subset of the ground set.
    pub fn restrict(&self, subset: &LabelSet) -> Result<Self> {
        if !subset.is_subset(&self.ground()) {
            return Err(Error::ground("restriction set outside ground set"));
        }
        let mut rels = Vec::new();
        for x in subset {
            for y in subset {
                if self.leq(x, y) {
                    rels.push((x.clone(), y.clone()));
                }
            }
        }
        Preposet::new(subset.clone(), &rels)
    }

    /// Whether `subset` is a lower ideal: y in subset and x <= y imply x in
    /// subset.
    pub fn is_lower_ideal(&self, subset: &LabelSet) -> bool {
        for y in subset {
            for x in &self.ground {
                if self.leq(x, y) && !subset.contains(x) {
                    return false;
                }
            }
        }
        true
    }

    /// All lower ideals, enumerated as unions of down-closed sets of
    /// equivalence classes (including the empty set and the full ground set).
    pub fn lower_ideals(&self) -> Vec<LabelSet> {
        let classes = self.classes();
        let k = classes.len();
        assert!(k < 32, "ground set too large for ideal enumeration");
        let mut out = Vec::new();
        'mask: for mask in 0u32..(1 << k) {
            // the selected classes must be down-closed in the quotient poset
            for a in 0..k {
                if mask >> a & 1 == 1 {
                    for b in 0..k {
                        if mask >> b & 1 == 0 && self.class_leq(&classes[b], &classes[a]) {
                            continue 'mask;
                        }
                    }
                }
            }
            let ideal: LabelSet = (0..k)
                .filter(|a| mask >> a & 1 == 1)
                .flat_map(|a| classes[a].iter().cloned())
                .collect();
            out.push(ideal);
        }
        out
    }

    /// Minimal classes of the quotient poset.
    pub fn minimal_classes(&self) -> Vec<LabelSet> {
        let classes = self.classes();
        classes
            .iter()
            .filter(|c| {
                classes
                    .iter()
                    .all(|d| *c == d || !self.class_leq(d, c))
            })
            .cloned()
            .collect()
    }

    /// Disjoint union of two preposets on disjoint ground sets.
    pub fn disjoint_union(&self, other: &Preposet) -> Result<Preposet> {
        let ga = self.ground();
        let gb = other.ground();
        if !ga.is_disjoint(&gb) {
            return Err(Error::ground("disjoint union requires disjoint ground sets"));
        }
        let mut rels = Vec::new();
        for p in [self, other] {
            for x in &p.ground {
                for y in &p.ground {
                    if p.leq(x, y) {
                        rels.push((x.clone(), y.clone()));
                    }
                }
            }
        }
        Preposet::new(ga.union(&gb).cloned().collect(), &rels)
    }

    /// The defining strict and equivalence relations, for serialization.
    pub fn relation_pairs(&self) -> Vec<(Label, Label)> {
        let n = self.ground.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq[i * n + j] {
                    out.push((self.ground[i].clone(), self.ground[j].clone()));
                }
            }
        }
        out
    }
}

impl fmt::Display for Preposet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relation_pairs()
            .iter()
            .map(|(a, b)| format!("{a}<={b}"))
            .collect();
        write!(
            f,
            "preposet({}; {})",
            self.ground
                .iter()
                .map(Label::to_string)
                .collect::<Vec<_>>()
                .join(","),
            rels.join(" ")
        )
    }
}

impl fmt::Debug for Preposet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A preposet whose relation is antisymmetric.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poset(Preposet);

impl Poset {
    pub fn new(ground: LabelSet, relations: &[(Label, Label)]) -> Result<Self> {
        let q = Preposet::new(ground, relations)?;
        Self::from_preposet(q)
    }

    pub fn from_preposet(q: Preposet) -> Result<Self> {
        if !q.is_antisymmetric() {
            return Err(Error::axiom(
                "relation is not antisymmetric, so it is a preposet but not a poset",
            ));
        }
        Ok(Poset(q))
    }

    pub fn antichain(ground: LabelSet) -> Self {
        Poset(Preposet::antichain(ground))
    }

    pub fn chain(elements: &[Label]) -> Self {
        let rels: Vec<(Label, Label)> = elements
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Poset::new(elements.iter().cloned().collect(), &rels).unwrap()
    }

    pub fn as_preposet(&self) -> &Preposet {
        &self.0
    }

    pub fn ground(&self) -> LabelSet {
        self.0.ground()
    }

    pub fn size(&self) -> usize {
        self.0.size_ground()
    }

    pub fn leq(&self, x: &Label, y: &Label) -> bool {
        self.0.leq(x, y)
    }

    pub fn lt(&self, x: &Label, y: &Label) -> bool {
        self.0.lt(x, y)
    }

    pub fn restrict(&self, subset: &LabelSet) -> Result<Poset> {
        Ok(Poset(self.0.restrict(subset)?))
    }

    pub fn is_lower_ideal(&self, subset: &LabelSet) -> bool {
        self.0.is_lower_ideal(subset)
    }

    pub fn is_antichain(&self) -> bool {
        self.0.is_preantichain()
    }

    pub fn disjoint_union(&self, other: &Poset) -> Result<Poset> {
        Ok(Poset(self.0.disjoint_union(&other.0)?))
    }

    /// All antichains (as subsets), including the empty one.
    pub fn antichains(&self) -> Vec<LabelSet> {
        let elems: Vec<Label> = self.0.ground.clone();
        let n = elems.len();
        assert!(n < 32);
        let mut out = Vec::new();
        'mask: for mask in 0u32..(1 << n) {
            let sel: Vec<&Label> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &elems[i]).collect();
            for (i, x) in sel.iter().enumerate() {
                for y in &sel[i + 1..] {
                    if self.leq(x, y) || self.leq(y, x) {
                        continue 'mask;
                    }
                }
            }
            out.push(sel.into_iter().cloned().collect());
        }
        out
    }

    /// Linear extensions counted by backtracking over minimal elements.
    pub fn linear_extensions(&self) -> Vec<Vec<Label>> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        let mut remaining = self.ground();
        self.lin_ext_rec(&mut prefix, &mut remaining, &mut out);
        out
    }

    fn lin_ext_rec(
        &self,
        prefix: &mut Vec<Label>,
        remaining: &mut LabelSet,
        out: &mut Vec<Vec<Label>>,
    ) {
        if remaining.is_empty() {
            out.push(prefix.clone());
            return;
        }
        let choices: Vec<Label> = remaining
            .iter()
            .filter(|x| remaining.iter().all(|y| *x == y || !self.lt(y, x)))
            .cloned()
            .collect();
        for x in choices {
            remaining.remove(&x);
            prefix.push(x.clone());
            self.lin_ext_rec(prefix, remaining, out);
            prefix.pop();
            remaining.insert(x);
        }
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Coproduct in the Hopf monoid of posets: restriction to `s` and its
/// complement when `s` is a lower ideal, zero otherwise.
pub fn poset_coproduct(p: &Poset, s: &LabelSet) -> Result<Option<(Poset, Poset)>> {
    if !s.is_subset(&p.ground()) {
        return Err(Error::ground("coproduct set outside ground set"));
    }
    if !p.is_lower_ideal(s) {
        return Ok(None);
    }
    let t: LabelSet = p.ground().difference(s).cloned().collect();
    Ok(Some((p.restrict(s)?, p.restrict(&t)?)))
}

/// A preposet with one rational weight per equivalence class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedPreposet {
    preposet: Preposet,
    /// weight per class, in the class order of `Preposet::classes`
    weights: Vec<Rat>,
}

impl WeightedPreposet {
    pub fn new(preposet: Preposet, weights: Vec<Rat>) -> Result<Self> {
        if preposet.num_classes() != weights.len() {
            return Err(Error::invalid(format!(
                "{} classes but {} weights",
                preposet.num_classes(),
                weights.len()
            )));
        }
        Ok(WeightedPreposet { preposet, weights })
    }

    /// Builds from a map keyed by any member of each class.
    pub fn from_weight_map(preposet: Preposet, map: &BTreeMap<Label, Rat>) -> Result<Self> {
        let mut weights = Vec::new();
        for class in preposet.classes() {
            let mut found = None;
            for rep in &class {
                if let Some(w) = map.get(rep) {
                    found = Some(w.clone());
                    break;
                }
            }
            let w = found.ok_or_else(|| {
                Error::invalid(format!(
                    "no weight given for the class containing `{}`",
                    class.iter().next().unwrap()
                ))
            })?;
            weights.push(w);
        }
        Ok(WeightedPreposet { preposet, weights })
    }

    pub fn preposet(&self) -> &Preposet {
        &self.preposet
    }

    pub fn class_weights(&self) -> Vec<(LabelSet, Rat)> {
        self.preposet
            .classes()
            .into_iter()
            .zip(self.weights.iter().cloned())
            .collect()
    }

    pub fn weight_of_class(&self, class: &LabelSet) -> Option<Rat> {
        self.class_weights()
            .into_iter()
            .find(|(c, _)| c == class)
            .map(|(_, w)| w)
    }

    pub fn ground(&self) -> LabelSet {
        self.preposet.ground()
    }

    /// Total weight, the value of `Σ x_i` on the cone.
    pub fn total_weight(&self) -> Rat {
        self.weights.iter().cloned().sum()
    }
}

impl fmt::Display for WeightedPreposet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self
            .class_weights()
            .iter()
            .map(|(c, w)| {
                format!(
                    "{}:{}",
                    c.iter().map(Label::to_string).collect::<Vec<_>>().join(""),
                    w
                )
            })
            .collect();
        write!(f, "({}; {})", self.preposet, ws.join(" "))
    }
}

impl fmt::Debug for WeightedPreposet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The prelinear extensions of `q` with the straightening sign
/// `(-1)^{|q| - |l|}`.
///
/// A prelinear extension is a totally ordered preposet refining `q`: its
/// blocks are unions of equivalence classes of `q`, and `x < y` in `q`
/// forces the block of `x` strictly before the block of `y`. The recursion
/// picks any nonempty subset of the minimal classes as the first block.
pub fn prelinear_extensions(q: &Preposet) -> Vec<(OrderedSetPartition, i64)> {
    let q_classes = q.num_classes();
    let mut out = Vec::new();
    let mut blocks: Vec<LabelSet> = Vec::new();
    fn rec(
        q: &Preposet,
        remaining: &LabelSet,
        blocks: &mut Vec<LabelSet>,
        out: &mut Vec<Vec<LabelSet>>,
    ) {
        if remaining.is_empty() {
            out.push(blocks.clone());
            return;
        }
        let sub = q.restrict(remaining).expect("remaining within ground");
        let minimal = sub.minimal_classes();
        let m = minimal.len();
        for mask in 1u32..(1 << m) {
            let block: LabelSet = (0..m)
                .filter(|a| mask >> a & 1 == 1)
                .flat_map(|a| minimal[a].iter().cloned())
                .collect();
            let rest: LabelSet = remaining.difference(&block).cloned().collect();
            blocks.push(block);
            rec(q, &rest, blocks, out);
            blocks.pop();
        }
    }
    let mut raw = Vec::new();
    rec(q, &q.ground(), &mut blocks, &mut raw);
    for blocks in raw {
        let k = blocks.len();
        let sign = if (q_classes - k).is_multiple_of(2) { 1 } else { -1 };
        out.push((
            OrderedSetPartition::new(blocks).expect("blocks partition the ground set"),
            sign,
        ));
    }
    out
}

/// Weighted prelinear extensions of a weighted preposet: merged blocks add
/// their class weights. Returns `(weighted OSP, straightening sign)`.
pub fn weighted_prelinear_extensions(wq: &WeightedPreposet) -> Vec<(crate::osp::WeightedOsp, i64)> {
    let class_weights = wq.class_weights();
    prelinear_extensions(wq.preposet())
        .into_iter()
        .map(|(osp, sign)| {
            let weights: Vec<Rat> = osp
                .blocks()
                .iter()
                .map(|block| {
                    class_weights
                        .iter()
                        .filter(|(c, _)| c.is_subset(block))
                        .map(|(_, w)| w.clone())
                        .sum()
                })
                .collect();
            (
                crate::osp::WeightedOsp::new(osp, weights).expect("weights per block"),
                sign,
            )
        })
        .collect()
}

/// Precomputed membership oracle for a translated preposet cone.
///
/// `cone(w, q)` is cut out by the equation `Σ_I x_i = Σ_a w(q_a)` together
/// with one inequality per lower ideal `D` (a union of classes):
/// `Σ_{i in D} x_i <= Σ_{q_a ⊆ D} w(q_a)`. The ideal list is computed once.
pub struct ConeMembership {
    ground: LabelSet,
    total: Rat,
    constraints: Vec<(LabelSet, Rat)>,
}

impl ConeMembership {
    pub fn new(c: &WeightedPreposet) -> Self {
        let class_weights = c.class_weights();
        let constraints = c
            .preposet()
            .lower_ideals()
            .into_iter()
            .map(|ideal| {
                let rhs: Rat = class_weights
                    .iter()
                    .filter(|(cl, _)| cl.is_subset(&ideal))
                    .map(|(_, w)| w.clone())
                    .sum();
                (ideal, rhs)
            })
            .collect();
        ConeMembership {
            ground: c.ground(),
            total: c.total_weight(),
            constraints,
        }
    }

    pub fn contains(&self, point: &BTreeMap<Label, Rat>) -> Result<bool> {
        if point.len() != self.ground.len() || !self.ground.iter().all(|l| point.contains_key(l)) {
            return Err(Error::ground("point is not indexed by the cone's ground set"));
        }
        let total: Rat = point.values().cloned().sum();
        if total != self.total {
            return Ok(false);
        }
        for (ideal, rhs) in &self.constraints {
            let lhs: Rat = ideal.iter().map(|i| point[i].clone()).sum();
            if lhs > *rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One-shot membership test; see [`ConeMembership`] for batched queries.
pub fn weighted_cone_membership(c: &WeightedPreposet, point: &BTreeMap<Label, Rat>) -> Result<bool> {
    ConeMembership::new(c).contains(point)
}

/// All preposets on the ground set: relation masks equal to their own
/// reflexive-transitive closure.
pub fn all_preposets(ground: &LabelSet) -> Vec<Preposet> {
    let elems: Vec<Label> = ground.iter().cloned().collect();
    let n = elems.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |j| *j != i).map(move |j| (i, j)))
        .collect();
    assert!(pairs.len() < 32, "ground set too large for preposet enumeration");
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1 << pairs.len()) {
        let rel: Vec<(Label, Label)> = pairs
            .iter()
            .enumerate()
            .filter(|(idx, _)| mask >> idx & 1 == 1)
            .map(|(_, (i, j))| (elems[*i].clone(), elems[*j].clone()))
            .collect();
        let q = Preposet::new(ground.clone(), &rel).unwrap();
        // keep only closed masks so each preposet appears exactly once
        for (idx, (i, j)) in pairs.iter().enumerate() {
            if q.leq(&elems[*i], &elems[*j]) != (mask >> idx & 1 == 1) {
                continue 'mask;
            }
        }
        out.push(q);
    }
    out
}
