//! Subdivision complexes, weak/strong valuation checks, and the built-in
//! library of indicator relations.

use std::collections::BTreeMap;
use std::fmt;

use crate::building_set::BuildingSet;
use crate::error::{Error, Result};
use crate::formal::FormalSum;
use crate::gp::{canonical_form, indicator_value, GpElement, SubmodularGp, TranslatedPreposetCone};
use crate::hopf::{qsym_invariant, universal_norm, universal_tutte, Character, HopfObject};
use crate::label::{Label, LabelSet};
use crate::matroid::{BetaConvention, Matroid};
use crate::osp::OrderedSetPartition;
use crate::poly::{BiPoly, ExponentPoly, FlatPoly, QSym, UniPoly};
use crate::poset_invariants::{
    antichain_char, order_polynomial, phi_ell, poincare, poset_tutte, preantichain_char,
};
use crate::preposet::{Poset, Preposet, WeightedPreposet};
use crate::rational::Rat;
use crate::sampling::boundary_enriched_samples;

/// One cell of a subdivision: a matroid (keeping its combinatorics available
/// to matroid-level invariants) or a bare polytope.
#[derive(Clone, PartialEq, Eq)]
pub enum Cell {
    Matroid(Matroid),
    Gp(SubmodularGp),
}

impl Cell {
    pub fn gp(&self) -> SubmodularGp {
        match self {
            Cell::Matroid(m) => m.to_gp(),
            Cell::Gp(p) => p.clone(),
        }
    }

    pub fn matroid(&self) -> Option<&Matroid> {
        match self {
            Cell::Matroid(m) => Some(m),
            Cell::Gp(_) => None,
        }
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Matroid(m) => write!(f, "{m}"),
            Cell::Gp(p) => write!(f, "{p}"),
        }
    }
}

/// A polyhedral subdivision of a parent polytope, validated at construction:
/// every cell sits inside the parent, and pairwise intersections (detected
/// through shared vertices) must themselves be listed cells.
pub struct SubdivisionComplex {
    name: String,
    parent: Cell,
    cells: Vec<Cell>,
    parent_dim: usize,
    cell_dims: Vec<usize>,
    /// true when parent and all cells are nestohedra, enabling the
    /// face-polynomial check
    nestohedral: Option<BuildingSet>,
}

impl SubdivisionComplex {
    pub fn new(name: impl Into<String>, parent: Cell, cells: Vec<Cell>) -> Result<Self> {
        let parent_gp = parent.gp();
        let parent_dim = parent_gp.dim();
        let cell_gps: Vec<SubmodularGp> = cells.iter().map(Cell::gp).collect();
        let cell_dims: Vec<usize> = cell_gps.iter().map(SubmodularGp::dim).collect();
        for (i, c) in cell_gps.iter().enumerate() {
            if c.ground() != parent_gp.ground() {
                return Err(Error::ground(format!("cell {i} lives on a different ground set")));
            }
            for v in c.vertices() {
                if !parent_gp.contains(&v)? {
                    return Err(Error::invalid(format!(
                        "cell {i} has a vertex outside the parent"
                    )));
                }
            }
        }
        // pairwise intersections, detected through vertices lying in both
        // cells, must appear as cells
        for i in 0..cell_gps.len() {
            for j in i + 1..cell_gps.len() {
                let mut common: Vec<crate::gp::Point> = Vec::new();
                for v in cell_gps[i].vertices().into_iter().chain(cell_gps[j].vertices()) {
                    if cell_gps[i].contains(&v)? && cell_gps[j].contains(&v)? && !common.contains(&v)
                    {
                        common.push(v);
                    }
                }
                if common.is_empty() {
                    continue;
                }
                common.sort();
                let found = cell_gps.iter().any(|c| {
                    let mut verts = c.vertices();
                    verts.sort();
                    verts == common
                });
                if !found {
                    return Err(Error::invalid(format!(
                        "intersection of cells {i} and {j} is not a listed cell"
                    )));
                }
            }
        }
        Ok(SubdivisionComplex {
            name: name.into(),
            parent,
            cells,
            parent_dim,
            cell_dims,
            nestohedral: None,
        })
    }

    fn with_building_set(mut self, b: BuildingSet) -> Self {
        self.nestohedral = Some(b);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parent(&self) -> &Cell {
        &self.parent
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn parent_dim(&self) -> usize {
        self.parent_dim
    }

    pub fn cell_dims(&self) -> &[usize] {
        &self.cell_dims
    }

    /// Signs `(-1)^{dim P - dim P_i}` of the weak-valuation identity.
    pub fn cell_signs(&self) -> Vec<Rat> {
        self.cell_dims
            .iter()
            .map(|d| {
                if (self.parent_dim - d).is_multiple_of(2) {
                    Rat::one()
                } else {
                    -Rat::one()
                }
            })
            .collect()
    }

    /// The element `parent - Σ (-1)^{codim} cells` whose indicator must
    /// vanish for a genuine subdivision.
    pub fn indicator_relation(&self) -> FormalSum<GpElement> {
        let mut out = FormalSum::singleton(GpElement::Polytope(self.parent.gp()));
        for (cell, sign) in self.cells.iter().zip(self.cell_signs()) {
            out.add_term(GpElement::Polytope(cell.gp()), -sign);
        }
        out
    }

    /// Certifies the indicator relation through the canonical form; when this
    /// holds, every strong valuation vanishes on the subdivision.
    pub fn strong_check(&self) -> Result<bool> {
        Ok(canonical_form(&self.indicator_relation())?.is_zero())
    }

    /// Pointwise check of the indicator identity at boundary-enriched sample
    /// points.
    pub fn pointwise_check(&self, random_count: usize, seed: u64) -> Result<bool> {
        let relation = self.indicator_relation();
        let parent = self.parent.gp();
        let samples =
            boundary_enriched_samples(&parent.vertices(), &parent.total(), random_count, seed);
        for x in &samples {
            if !indicator_value(&relation, x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for SubdivisionComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "subdivision `{}`: dim {} parent, {} cells",
            self.name,
            self.parent_dim,
            self.cells.len()
        )
    }
}

/// Result of a weak-valuation check.
#[derive(Clone, Debug)]
pub struct ValuationReport {
    pub invariant: String,
    pub residual: String,
    pub pass: bool,
}

/// Additive values that invariants can take.
trait Abelian: Clone {
    fn ab_add(self, other: Self) -> Self;
    fn ab_neg(self) -> Self;
    fn ab_is_zero(&self) -> bool;
    fn render(&self) -> String;
}

macro_rules! abelian_via_ops {
    ($ty:ty) => {
        impl Abelian for $ty {
            fn ab_add(self, other: Self) -> Self {
                self + other
            }
            fn ab_neg(self) -> Self {
                Self::zero() - self
            }
            fn ab_is_zero(&self) -> bool {
                self.is_zero()
            }
            fn render(&self) -> String {
                format!("{self:?}")
            }
        }
    };
}

abelian_via_ops!(Rat);
abelian_via_ops!(UniPoly);
abelian_via_ops!(BiPoly);
abelian_via_ops!(ExponentPoly);
abelian_via_ops!(FlatPoly);
abelian_via_ops!(QSym);

impl<K: Ord + Clone + fmt::Debug> Abelian for BTreeMap<K, Rat> {
    fn ab_add(mut self, other: Self) -> Self {
        for (k, v) in other {
            let e = self.entry(k).or_insert_with(Rat::zero);
            *e += v;
            if e.is_zero() {
                // drop zeros lazily below
            }
        }
        self.retain(|_, v| !v.is_zero());
        self
    }
    fn ab_neg(self) -> Self {
        self.into_iter().map(|(k, v)| (k, -v)).collect()
    }
    fn ab_is_zero(&self) -> bool {
        self.values().all(Rat::is_zero)
    }
    fn render(&self) -> String {
        format!("{self:?}")
    }
}

fn alternating_sum<T: Abelian>(
    k: &SubdivisionComplex,
    f: &dyn Fn(&Cell) -> Result<T>,
) -> Result<T> {
    let mut acc = f(&k.parent)?;
    for (cell, sign) in k.cells.iter().zip(k.cell_signs()) {
        let v = f(cell)?;
        let signed = if sign.is_one() { v.ab_neg() } else { v };
        acc = acc.ab_add(signed);
    }
    Ok(acc)
}

fn report<T: Abelian>(name: &str, value: T) -> ValuationReport {
    ValuationReport {
        invariant: name.to_string(),
        pass: value.ab_is_zero(),
        residual: value.render(),
    }
}

fn need_matroid(cell: &Cell) -> Result<&Matroid> {
    cell.matroid().ok_or_else(|| {
        Error::invalid("this invariant needs matroid cells, but the subdivision has bare polytopes")
    })
}

/// Names of the invariants `weak_check` understands.
pub const INVARIANT_NAMES: &[&str] = &[
    "constant",
    "tutte",
    "char-poly",
    "reduced-char",
    "beta-crapo",
    "beta-paper",
    "csm",
    "g-invariant",
    "bjr-qsym",
    "volume-poly",
    "universal-norm",
    "universal-tutte",
    "f-poly",
];

/// Evaluates the weak-valuation identity
/// `f(P) - Σ (-1)^{dim P - dim P_i} f(P_i) = 0` for a named invariant.
pub fn weak_check(invariant: &str, k: &SubdivisionComplex) -> Result<ValuationReport> {
    match invariant {
        "constant" => alternating_sum(k, &|_c| Ok(Rat::one())).map(|v| report(invariant, v)),
        "tutte" => {
            alternating_sum(k, &|c| Ok(need_matroid(c)?.tutte())).map(|v| report(invariant, v))
        }
        "char-poly" => alternating_sum(k, &|c| Ok(need_matroid(c)?.char_poly()))
            .map(|v| report(invariant, v)),
        "reduced-char" => alternating_sum(k, &|c| need_matroid(c)?.reduced_char())
            .map(|v| report(invariant, v)),
        "beta-crapo" => {
            alternating_sum(k, &|c| need_matroid(c)?.beta(BetaConvention::Crapo))
                .map(|v| report(invariant, v))
        }
        "beta-paper" => {
            alternating_sum(k, &|c| need_matroid(c)?.beta(BetaConvention::Paper))
                .map(|v| report(invariant, v))
        }
        "csm" => {
            // one weight per ordered set partition, all checked at once
            let f = |c: &Cell| -> Result<BTreeMap<OrderedSetPartition, Rat>> {
                let m = need_matroid(c)?;
                let mut out = BTreeMap::new();
                for osp in OrderedSetPartition::enumerate(m.ground()) {
                    let w = m.csm_weight(&osp)?;
                    if !w.is_zero() {
                        out.insert(osp, w);
                    }
                }
                Ok(out)
            };
            alternating_sum(k, &f).map(|v| report(invariant, v))
        }
        "g-invariant" => {
            let f = |c: &Cell| -> Result<BTreeMap<Vec<u8>, Rat>> {
                Ok(need_matroid(c)?.g_invariant().signed())
            };
            alternating_sum(k, &f).map(|v| report(invariant, v))
        }
        "bjr-qsym" => {
            let f = |c: &Cell| -> Result<QSym> {
                qsym_invariant(Character::Bjr, &HopfObject::Matroid(need_matroid(c)?.clone()))
            };
            alternating_sum(k, &f).map(|v| report(invariant, v))
        }
        "volume-poly" => {
            let f = |c: &Cell| -> Result<FlatPoly> { need_matroid(c)?.volume_polynomial() };
            alternating_sum(k, &f).map(|v| report(invariant, v))
        }
        "universal-norm" => {
            alternating_sum(k, &|c| Ok(universal_norm(&c.gp()))).map(|v| report(invariant, v))
        }
        "universal-tutte" => {
            alternating_sum(k, &|c| Ok(universal_tutte(&c.gp()))).map(|v| report(invariant, v))
        }
        "f-poly" => {
            if k.nestohedral.is_none() {
                return Err(Error::invalid(
                    "f-poly only applies to subdivisions whose cells are nestohedra",
                ));
            }
            let f = |c: &Cell| -> Result<UniPoly> {
                let gp = c.gp();
                let mut out = UniPoly::zero();
                for face in gp.faces() {
                    out.add_term(face.dim(), Rat::one());
                }
                Ok(out)
            };
            alternating_sum(k, &f).map(|v| report(invariant, v))
        }
        other => Err(Error::invalid(format!("unknown invariant `{other}`"))),
    }
}

/// A stored indicator relation among cones, with the poset view of each term
/// when every term is a poset cone.
pub struct ConeRelation {
    pub name: String,
    pub terms: FormalSum<GpElement>,
    pub poset_terms: Vec<(Poset, Rat)>,
}

impl ConeRelation {
    pub fn strong_check(&self) -> Result<bool> {
        Ok(canonical_form(&self.terms)?.is_zero())
    }
}

/// The built-in relation library.
pub enum BuiltinRelation {
    Subdivision(SubdivisionComplex),
    Cones(ConeRelation),
}

impl BuiltinRelation {
    pub fn name(&self) -> &str {
        match self {
            BuiltinRelation::Subdivision(s) => s.name(),
            BuiltinRelation::Cones(c) => &c.name,
        }
    }
}

fn u24_cells(excluded_low: LabelSet, excluded_high: LabelSet) -> (Matroid, Matroid, Matroid) {
    let ground: LabelSet = (1..=4u64).map(Label::from).collect();
    let all_pairs: Vec<LabelSet> = Matroid::uniform(2, 4).bases().to_vec();
    let m1 = Matroid::new(
        ground.clone(),
        all_pairs.iter().filter(|b| **b != excluded_low).cloned().collect(),
    )
    .expect("five-basis cell is a matroid");
    let m2 = Matroid::new(
        ground.clone(),
        all_pairs.iter().filter(|b| **b != excluded_high).cloned().collect(),
    )
    .expect("five-basis cell is a matroid");
    let m12 = Matroid::new(
        ground,
        all_pairs
            .iter()
            .filter(|b| **b != excluded_low && **b != excluded_high)
            .cloned()
            .collect(),
    )
    .expect("shared square cell is a matroid");
    (m1, m2, m12)
}

/// The hypersimplex split: `U_{2,4}` (an octahedron) cut into the two
/// pyramids missing the bases `{1,2}` and `{3,4}`, glued along the square
/// with bases `{13,14,23,24}`.
pub fn u24_split() -> SubdivisionComplex {
    let ground: LabelSet = (1..=4u64).map(Label::from).collect();
    let (m1, m2, m12) = u24_cells(
        [Label::from(1u64), Label::from(2u64)].into_iter().collect(),
        [Label::from(3u64), Label::from(4u64)].into_iter().collect(),
    );
    let _ = ground;
    SubdivisionComplex::new(
        "u24-split",
        Cell::Matroid(Matroid::uniform(2, 4)),
        vec![Cell::Matroid(m1), Cell::Matroid(m2), Cell::Matroid(m12)],
    )
    .expect("the hypersimplex split is a valid subdivision")
}

/// The same split after the relabeling swapping 1 and 3.
pub fn u24_split_relabeled() -> SubdivisionComplex {
    let (m1, m2, m12) = u24_cells(
        [Label::from(2u64), Label::from(3u64)].into_iter().collect(),
        [Label::from(1u64), Label::from(4u64)].into_iter().collect(),
    );
    SubdivisionComplex::new(
        "u24-split-relabeled",
        Cell::Matroid(Matroid::uniform(2, 4)),
        vec![Cell::Matroid(m1), Cell::Matroid(m2), Cell::Matroid(m12)],
    )
    .expect("relabeled split is a valid subdivision")
}

/// The third relabeling, along the remaining pairing of the four elements.
pub fn u24_split_relabeled_2() -> SubdivisionComplex {
    let (m1, m2, m12) = u24_cells(
        [Label::from(1u64), Label::from(3u64)].into_iter().collect(),
        [Label::from(2u64), Label::from(4u64)].into_iter().collect(),
    );
    SubdivisionComplex::new(
        "u24-split-relabeled-2",
        Cell::Matroid(Matroid::uniform(2, 4)),
        vec![Cell::Matroid(m1), Cell::Matroid(m2), Cell::Matroid(m12)],
    )
    .expect("relabeled split is a valid subdivision")
}

/// The trivial subdivision of the hexagon permutahedron by itself.
pub fn trivial_permutahedron() -> SubdivisionComplex {
    let b = BuildingSet::full((1..=3u64).map(Label::from).collect());
    let p = b.nestohedron().expect("full building set covers the ground");
    SubdivisionComplex::new("trivial-permutahedron", Cell::Gp(p.clone()), vec![Cell::Gp(p)])
        .expect("the trivial subdivision is valid")
        .with_building_set(b)
}

/// The straightening instance on two elements: a point cone equals the two
/// rays through it minus the line, as indicators.
pub fn point_ray_line() -> ConeRelation {
    let ground: LabelSet = (1..=2u64).map(Label::from).collect();
    let (a, b) = (Rat::new(1, 2), Rat::new(1, 3));
    let point = TranslatedPreposetCone::new(
        WeightedPreposet::new(Preposet::antichain(ground.clone()), vec![a.clone(), b.clone()])
            .unwrap(),
    );
    let chain12 = Preposet::new(ground.clone(), &[(Label::from(1u64), Label::from(2u64))]).unwrap();
    let chain21 = Preposet::new(ground.clone(), &[(Label::from(2u64), Label::from(1u64))]).unwrap();
    let line_q = Preposet::new(
        ground.clone(),
        &[
            (Label::from(1u64), Label::from(2u64)),
            (Label::from(2u64), Label::from(1u64)),
        ],
    )
    .unwrap();
    // class weights are keyed by min-label class order, so both rays share
    // the apex class sums w({1}) = a, w({2}) = b
    let ray1 = TranslatedPreposetCone::new(
        WeightedPreposet::new(chain12, vec![a.clone(), b.clone()]).unwrap(),
    );
    let ray2 = TranslatedPreposetCone::new(
        WeightedPreposet::new(chain21, vec![a.clone(), b.clone()]).unwrap(),
    );
    let line =
        TranslatedPreposetCone::new(WeightedPreposet::new(line_q, vec![a + b]).unwrap());
    let mut terms = FormalSum::zero();
    terms.add_term(GpElement::Cone(point), Rat::one());
    terms.add_term(GpElement::Cone(ray1), -Rat::one());
    terms.add_term(GpElement::Cone(ray2), -Rat::one());
    terms.add_term(GpElement::Cone(line), Rat::one());
    ConeRelation {
        name: "point-ray-line".into(),
        terms,
        poset_terms: Vec::new(),
    }
}

/// A genuine poset-cone subdivision on three elements: the order cone of the
/// chain `1<2<3` splits into the cones of `1<2, 1<3` and `1<3, 2<3`, glued
/// along the cone of `1<3`. Every term is a poset cone with zero weights, so
/// poset valuations can be evaluated directly on the underlying posets.
pub fn poset_cone_subdivision() -> ConeRelation {
    let ground: LabelSet = (1..=3u64).map(Label::from).collect();
    let l = |n: u64| Label::from(n);
    let mk = |rels: &[(u64, u64)]| -> (Poset, TranslatedPreposetCone) {
        let pairs: Vec<(Label, Label)> = rels.iter().map(|(x, y)| (l(*x), l(*y))).collect();
        let p = Poset::new(ground.clone(), &pairs).unwrap();
        let n_classes = p.as_preposet().num_classes();
        let cone = TranslatedPreposetCone::new(
            WeightedPreposet::new(p.as_preposet().clone(), vec![Rat::zero(); n_classes]).unwrap(),
        );
        (p, cone)
    };
    let (chain, chain_cone) = mk(&[(1, 2), (2, 3)]);
    let (v1, v1_cone) = mk(&[(1, 2), (1, 3)]);
    let (v2, v2_cone) = mk(&[(1, 3), (2, 3)]);
    let (ray, ray_cone) = mk(&[(1, 3)]);
    let mut terms = FormalSum::zero();
    terms.add_term(GpElement::Cone(chain_cone), Rat::one());
    terms.add_term(GpElement::Cone(v1_cone), -Rat::one());
    terms.add_term(GpElement::Cone(v2_cone), -Rat::one());
    terms.add_term(GpElement::Cone(ray_cone), Rat::one());
    ConeRelation {
        name: "poset-cone-subdivision".into(),
        terms,
        poset_terms: vec![
            (chain, Rat::one()),
            (v1, -Rat::one()),
            (v2, -Rat::one()),
            (ray, Rat::one()),
        ],
    }
}

/// All built-in relations.
pub fn builtin_relations() -> Vec<BuiltinRelation> {
    vec![
        BuiltinRelation::Subdivision(u24_split()),
        BuiltinRelation::Subdivision(u24_split_relabeled()),
        BuiltinRelation::Subdivision(u24_split_relabeled_2()),
        BuiltinRelation::Subdivision(trivial_permutahedron()),
        BuiltinRelation::Cones(point_ray_line()),
        BuiltinRelation::Cones(poset_cone_subdivision()),
    ]
}

pub fn builtin_by_name(name: &str) -> Result<BuiltinRelation> {
    builtin_relations()
        .into_iter()
        .find(|r| r.name() == name)
        .ok_or_else(|| Error::invalid(format!("unknown builtin relation `{name}`")))
}

/// Poset-cone invariants evaluated on a poset-cone relation: the alternating
/// sum of `f` over the poset terms with their relation coefficients.
pub fn poset_relation_residuals(rel: &ConeRelation) -> Result<Vec<ValuationReport>> {
    if rel.poset_terms.is_empty() {
        return Err(Error::invalid("relation does not consist of poset cones"));
    }
    let mut out = Vec::new();
    // sign-weighted sums of each poset invariant
    let mut acc_order_s = UniPoly::zero();
    let mut acc_order_w = UniPoly::zero();
    let mut acc_tutte = BiPoly::zero();
    let mut acc_poincare = UniPoly::zero();
    let mut acc_phi = UniPoly::zero();
    let mut acc_anti = Rat::zero();
    let mut acc_const = Rat::zero();
    let ell: Vec<Label> = rel.poset_terms[0].0.ground().into_iter().collect();
    for (p, c) in &rel.poset_terms {
        let scale = |poly: UniPoly| poly * UniPoly::constant(c.clone());
        acc_order_s = acc_order_s + scale(order_polynomial(p, true));
        acc_order_w = acc_order_w + scale(order_polynomial(p, false));
        acc_tutte = acc_tutte + poset_tutte(p) * BiPoly::monomial(0, 0, c.clone());
        acc_poincare = acc_poincare + scale(poincare(p));
        acc_phi = acc_phi + scale(phi_ell(p, &ell)?);
        acc_anti += c.clone() * antichain_char(p);
        acc_const += c.clone();
    }
    out.push(report("order-poly-strict", acc_order_s));
    out.push(report("order-poly-weak", acc_order_w));
    out.push(report("poset-tutte", acc_tutte));
    out.push(report("poincare", acc_poincare));
    out.push(report("phi-ell", acc_phi));
    out.push(report("antichain-char", acc_anti));
    out.push(report("constant", acc_const));
    Ok(out)
}

/// The preantichain character extended to arbitrary preposet cones, checked
/// against a cone relation; weights do not matter to these invariants.
pub fn preposet_relation_residuals(rel: &ConeRelation) -> Result<Vec<ValuationReport>> {
    let mut acc_anti = Rat::zero();
    let mut acc_const = Rat::zero();
    let mut acc_order_s = UniPoly::zero();
    let mut acc_order_w = UniPoly::zero();
    for (elem, c) in rel.terms.iter() {
        let GpElement::Cone(cone) = elem else {
            return Err(Error::invalid("preposet residuals expect cone terms"));
        };
        let q = cone.weighted_preposet().preposet();
        acc_anti += c.clone() * preantichain_char(q);
        acc_const += c.clone();
        let strict = preposet_order_polynomial(q, true);
        let weak = preposet_order_polynomial(q, false);
        acc_order_s = acc_order_s + strict * UniPoly::constant(c.clone());
        acc_order_w = acc_order_w + weak * UniPoly::constant(c.clone());
    }
    Ok(vec![
        report("preantichain-char", acc_anti),
        report("constant", acc_const),
        report("order-poly-strict-ext", acc_order_s),
        report("order-poly-weak-ext", acc_order_w),
    ])
}

/// Convolution power of the preantichain character over the preposet Hopf
/// structure: decompositions whose prefixes are lower ideals contribute the
/// product of preantichain values of the restrictions.
pub fn preposet_char_power(q: &Preposet, k: usize) -> Rat {
    let ground = q.ground();
    if k == 0 {
        return if ground.is_empty() { Rat::one() } else { Rat::zero() };
    }
    let mut acc = Rat::zero();
    for parts in crate::hopf::decompositions(&ground, k) {
        let mut rest = q.clone();
        let mut prod = Rat::one();
        let mut valid = true;
        for (i, s) in parts.iter().enumerate() {
            if i + 1 == parts.len() {
                prod *= preantichain_char(&rest);
            } else {
                if !rest.is_lower_ideal(s) {
                    valid = false;
                    break;
                }
                let piece = rest.restrict(s).expect("part within ground");
                prod *= preantichain_char(&piece);
                let remaining: LabelSet = rest.ground().difference(s).cloned().collect();
                rest = rest.restrict(&remaining).expect("suffix within ground");
            }
            if prod.is_zero() {
                valid = false;
                break;
            }
        }
        if valid {
            acc += prod;
        }
    }
    acc
}

/// The order polynomial extended to preposets through the preantichain
/// character; restricts to the poset order polynomial.
pub fn preposet_order_polynomial(q: &Preposet, strict: bool) -> UniPoly {
    let n = q.size_ground();
    let pts: Vec<(Rat, Rat)> = (0..=n)
        .map(|k| (Rat::from(k as i64), preposet_char_power(q, k)))
        .collect();
    let strict_poly = UniPoly::interpolate(&pts);
    if strict {
        strict_poly
    } else {
        let reflected = strict_poly.compose_linear(&-Rat::one(), &Rat::zero());
        if n.is_multiple_of(2) {
            reflected
        } else {
            UniPoly::zero() - reflected
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;

    #[test]
    fn u24_split_is_valid_and_strong() {
        let k = u24_split();
        assert_eq!(k.parent_dim(), 3);
        assert_eq!(k.cell_dims(), &[3, 3, 2]);
        assert!(k.strong_check().unwrap());
        assert!(k.pointwise_check(200, 17).unwrap());
    }

    #[test]
    fn dropping_the_shared_facet_breaks_the_relation() {
        let full = u24_split();
        let broken = SubdivisionComplex {
            name: "broken".into(),
            parent: full.parent.clone(),
            cells: full.cells[..2].to_vec(),
            parent_dim: full.parent_dim,
            cell_dims: full.cell_dims[..2].to_vec(),
            nestohedral: None,
        };
        assert!(!broken.strong_check().unwrap());
        assert!(!broken.pointwise_check(120, 5).unwrap());
    }

    #[test]
    fn tutte_vanishes_on_split() {
        let k = u24_split();
        let r = weak_check("tutte", &k).unwrap();
        assert!(r.pass, "residual {}", r.residual);
        // and the stated polynomials really are what the identity combines
        let m1 = k.cells()[0].matroid().unwrap();
        let mut five = BiPoly::zero();
        five.add_term(2, 0, Rat::one());
        five.add_term(1, 1, Rat::one());
        five.add_term(0, 2, Rat::one());
        five.add_term(1, 0, Rat::one());
        five.add_term(0, 1, Rat::one());
        assert_eq!(m1.tutte(), five);
    }

    #[test]
    fn full_catalog_on_matroid_splits() {
        for k in [u24_split(), u24_split_relabeled(), u24_split_relabeled_2()] {
            for inv in [
                "constant",
                "tutte",
                "char-poly",
                "reduced-char",
                "beta-crapo",
                "beta-paper",
                "csm",
                "g-invariant",
                "bjr-qsym",
                "volume-poly",
                "universal-norm",
                "universal-tutte",
            ] {
                let r = weak_check(inv, &k).unwrap();
                assert!(r.pass, "{inv} residual on {}: {}", k.name(), r.residual);
            }
        }
    }

    #[test]
    fn trivial_subdivision_passes_everything_applicable() {
        let k = trivial_permutahedron();
        for inv in ["constant", "universal-norm", "universal-tutte", "f-poly"] {
            let r = weak_check(inv, &k).unwrap();
            assert!(r.pass, "{inv} residual: {}", r.residual);
        }
        assert!(k.strong_check().unwrap());
        // matroid invariants refuse bare polytope cells
        assert!(weak_check("tutte", &k).is_err());
    }

    #[test]
    fn cone_relations_are_strong() {
        assert!(point_ray_line().strong_check().unwrap());
        assert!(poset_cone_subdivision().strong_check().unwrap());
    }

    #[test]
    fn poset_invariants_vanish_on_poset_cone_subdivision() {
        let rel = poset_cone_subdivision();
        for r in poset_relation_residuals(&rel).unwrap() {
            assert!(r.pass, "{} residual: {}", r.invariant, r.residual);
        }
    }

    #[test]
    fn preposet_extensions_vanish_on_point_ray_line() {
        let rel = point_ray_line();
        for r in preposet_relation_residuals(&rel).unwrap() {
            assert!(r.pass, "{} residual: {}", r.invariant, r.residual);
        }
    }

    #[test]
    fn preposet_order_polynomial_restricts_to_posets() {
        for p in crate::poset_invariants::all_posets(&labels([1, 2, 3])) {
            assert_eq!(
                preposet_order_polynomial(p.as_preposet(), true),
                order_polynomial(&p, true),
                "{p}"
            );
        }
    }

    #[test]
    fn builtin_lookup() {
        assert!(builtin_by_name("u24-split").is_ok());
        assert!(builtin_by_name("poset-cone-subdivision").is_ok());
        assert!(builtin_by_name("nope").is_err());
        assert_eq!(builtin_relations().len(), 6);
    }
}
