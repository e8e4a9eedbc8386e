//! The submodular-function engine for bounded generalized permutahedra:
//! greedy vertices, faces, tangent cones, the Brianchon-Gram and
//! straightening expansions, and the canonical form that decides indicator
//! equality.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::formal::FormalSum;
use crate::label::{set_key, Label, LabelSet};
use crate::osp::{OrderedSetPartition, WeightedOsp};
use crate::preposet::{
    weighted_cone_membership, weighted_prelinear_extensions, Preposet, WeightedPreposet,
};
use crate::rational::Rat;

/// A rational point indexed by ground set labels.
pub type Point = BTreeMap<Label, Rat>;

/// Every nonempty subset mask of `ground`, plus the empty set.
pub fn all_subsets(ground: &LabelSet) -> Vec<LabelSet> {
    let elems: Vec<Label> = ground.iter().cloned().collect();
    let n = elems.len();
    assert!(n < 32, "ground set too large for subset enumeration");
    (0u32..(1 << n))
        .map(|mask| {
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| elems[i].clone())
                .collect()
        })
        .collect()
}

/// A bounded generalized permutahedron encoded by a submodular function
/// `z: 2^I -> Q` with `z(∅) = 0`. The polytope is
/// `{x : Σ_I x_i = z(I), Σ_A x_i <= z(A) for all A}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubmodularGp {
    ground: LabelSet,
    z: BTreeMap<LabelSet, Rat>,
}

impl SubmodularGp {
    /// Validates totality, `z(∅) = 0`, and submodularity over all pairs.
    pub fn new(ground: LabelSet, z: BTreeMap<LabelSet, Rat>) -> Result<Self> {
        let subsets = all_subsets(&ground);
        for a in &subsets {
            if !z.contains_key(a) {
                return Err(Error::invalid(format!(
                    "z is not total: missing subset {{{}}}",
                    set_key(a)
                )));
            }
        }
        if z.len() != subsets.len() {
            return Err(Error::invalid("z assigns values outside the power set"));
        }
        if !z[&LabelSet::new()].is_zero() {
            return Err(Error::axiom("z(∅) must be 0"));
        }
        for a in &subsets {
            for b in &subsets {
                let cup: LabelSet = a.union(b).cloned().collect();
                let cap: LabelSet = a.intersection(b).cloned().collect();
                let lhs = z[a].clone() + z[b].clone();
                let rhs = z[&cup].clone() + z[&cap].clone();
                if lhs < rhs {
                    return Err(Error::axiom(format!(
                        "submodularity fails: z({{{}}}) + z({{{}}}) < z(union) + z(intersection)",
                        set_key(a),
                        set_key(b)
                    )));
                }
            }
        }
        Ok(SubmodularGp { ground, z })
    }

    /// The single point with the given coordinates (z is additive).
    pub fn point(coords: &Point) -> Self {
        let ground: LabelSet = coords.keys().cloned().collect();
        let z = all_subsets(&ground)
            .into_iter()
            .map(|a| {
                let v: Rat = a.iter().map(|i| coords[i].clone()).sum();
                (a, v)
            })
            .collect();
        SubmodularGp { ground, z }
    }

    /// The polytope spanned by a nonempty finite set of points, encoded by
    /// its support function over subset directions. Only valid when the
    /// convex hull is a generalized permutahedron; submodularity is checked.
    pub fn from_vertices(vertices: &[Point]) -> Result<Self> {
        let first = vertices
            .first()
            .ok_or_else(|| Error::invalid("need at least one vertex"))?;
        let ground: LabelSet = first.keys().cloned().collect();
        let mut z = BTreeMap::new();
        for a in all_subsets(&ground) {
            let best = vertices
                .iter()
                .map(|v| a.iter().map(|i| v[i].clone()).sum::<Rat>())
                .max()
                .unwrap();
            z.insert(a, best);
        }
        SubmodularGp::new(ground, z)
    }

    pub fn ground(&self) -> &LabelSet {
        &self.ground
    }

    pub fn z(&self, a: &LabelSet) -> &Rat {
        &self.z[a]
    }

    pub fn z_map(&self) -> &BTreeMap<LabelSet, Rat> {
        &self.z
    }

    /// Total mass `z(I)`, the value of `Σ x_i` on the polytope.
    pub fn total(&self) -> Rat {
        self.z[&self.ground].clone()
    }

    /// Greedy vertex for the linear order `order` (a permutation of the
    /// ground set): coordinates are consecutive differences of `z` along
    /// prefixes. Maximizes every strictly order-decreasing functional.
    pub fn vertex(&self, order: &[Label]) -> Point {
        debug_assert_eq!(order.len(), self.ground.len());
        let mut prefix = LabelSet::new();
        let mut prev = Rat::zero();
        let mut out = Point::new();
        for l in order {
            prefix.insert(l.clone());
            let cur = self.z[&prefix].clone();
            out.insert(l.clone(), cur.clone() - prev);
            prev = cur;
        }
        out
    }

    /// All vertices, as greedy points over every linear order.
    pub fn vertices(&self) -> Vec<Point> {
        let full = OrderedSetPartition::single_block(self.ground.clone());
        let mut verts: Vec<Point> = Vec::new();
        for order in full.refining_orders() {
            let v = self.vertex(&order);
            if !verts.contains(&v) {
                verts.push(v);
            }
        }
        verts
    }

    /// Exact membership: the defining equation and all `2^|I|` inequalities.
    pub fn contains(&self, x: &Point) -> Result<bool> {
        if x.len() != self.ground.len() || !self.ground.iter().all(|l| x.contains_key(l)) {
            return Err(Error::ground("point is not indexed by the ground set"));
        }
        let total: Rat = x.values().cloned().sum();
        if total != self.total() {
            return Ok(false);
        }
        for (a, za) in &self.z {
            let s: Rat = a.iter().map(|i| x[i].clone()).sum();
            if s > *za {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Strict membership in the relative interior: inequalities that are not
    /// tight on the whole polytope must be strict.
    pub fn contains_interior(&self, x: &Point) -> Result<bool> {
        if !self.contains(x)? {
            return Ok(false);
        }
        for (a, za) in &self.z {
            if a.is_empty() || *a == self.ground {
                continue;
            }
            let s: Rat = x.iter().filter(|(l, _)| a.contains(l)).map(|(_, v)| v.clone()).sum();
            if s == *za && !self.is_tight_everywhere(a) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn is_tight_everywhere(&self, a: &LabelSet) -> bool {
        self.vertices()
            .iter()
            .all(|v| a.iter().map(|i| v[i].clone()).sum::<Rat>() == self.z[a])
    }

    /// The face selected by an ordered set partition: the vertices of all
    /// refining greedy orders, with the subsets tight at all of them.
    pub fn face(&self, osp: &OrderedSetPartition) -> GpFace {
        debug_assert_eq!(osp.ground(), self.ground);
        let mut verts: Vec<Point> = Vec::new();
        for order in osp.refining_orders() {
            let v = self.vertex(&order);
            if !verts.contains(&v) {
                verts.push(v);
            }
        }
        // canonical vertex order, so equal faces compare equal
        verts.sort();
        let tight: Vec<LabelSet> = self
            .z
            .iter()
            .filter(|(a, za)| {
                verts
                    .iter()
                    .all(|v| a.iter().map(|i| v[i].clone()).sum::<Rat>() == **za)
            })
            .map(|(a, _)| a.clone())
            .collect();
        let dim = affine_rank(&verts);
        GpFace {
            parent: self.clone(),
            vertices: verts,
            tight: tight.into_iter().collect(),
            dim,
        }
    }

    /// All distinct nonempty faces, deduplicated over every ordered set
    /// partition of the ground set.
    pub fn faces(&self) -> Vec<GpFace> {
        let mut out: Vec<GpFace> = Vec::new();
        for osp in OrderedSetPartition::enumerate(&self.ground) {
            let f = self.face(&osp);
            if !out.iter().any(|g| g.vertices == f.vertices) {
                out.push(f);
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        affine_rank(&self.vertices())
    }

    /// Restriction and contraction: `z|_S(A) = z(A)` on subsets of `S`, and
    /// `z/_S(B) = z(S ∪ B) - z(S)` on subsets of the complement.
    pub fn restrict_contract(&self, s: &LabelSet) -> Result<(SubmodularGp, SubmodularGp)> {
        if !s.is_subset(&self.ground) {
            return Err(Error::ground("restriction set outside ground set"));
        }
        let t: LabelSet = self.ground.difference(s).cloned().collect();
        let z_restrict: BTreeMap<LabelSet, Rat> = all_subsets(s)
            .into_iter()
            .map(|a| {
                let v = self.z[&a].clone();
                (a, v)
            })
            .collect();
        let zs = self.z[s].clone();
        let z_contract: BTreeMap<LabelSet, Rat> = all_subsets(&t)
            .into_iter()
            .map(|b| {
                let sb: LabelSet = s.union(&b).cloned().collect();
                let v = self.z[&sb].clone() - zs.clone();
                (b, v)
            })
            .collect();
        let left = SubmodularGp::new(s.clone(), z_restrict)
            .map_err(|e| Error::internal(format!("restriction not submodular: {e}")))?;
        let right = SubmodularGp::new(t, z_contract)
            .map_err(|e| Error::internal(format!("contraction not submodular: {e}")))?;
        Ok((left, right))
    }

    /// Product: the polytope `P × Q` on the disjoint union of grounds, with
    /// `z(A) = z_P(A ∩ S) + z_Q(A ∩ T)`.
    pub fn product(&self, other: &SubmodularGp) -> Result<SubmodularGp> {
        if !self.ground.is_disjoint(&other.ground) {
            return Err(Error::ground("product requires disjoint ground sets"));
        }
        let ground: LabelSet = self.ground.union(&other.ground).cloned().collect();
        let z = all_subsets(&ground)
            .into_iter()
            .map(|a| {
                let a1: LabelSet = a.intersection(&self.ground).cloned().collect();
                let a2: LabelSet = a.intersection(&other.ground).cloned().collect();
                let v = self.z[&a1].clone() + other.z[&a2].clone();
                (a, v)
            })
            .collect();
        SubmodularGp::new(ground, z)
    }

    /// Iterated coproduct along an ordered decomposition (empty parts give
    /// the empty polytope factor). Always nonzero for bounded polytopes.
    pub fn multi_minor(&self, parts: &[LabelSet]) -> Result<Vec<SubmodularGp>> {
        let mut rest = self.clone();
        let mut out = Vec::with_capacity(parts.len());
        for (i, s) in parts.iter().enumerate() {
            if i + 1 == parts.len() {
                out.push(rest.clone());
            } else {
                let (l, r) = rest.restrict_contract(s)?;
                out.push(l);
                rest = r;
            }
        }
        if parts.is_empty() {
            debug_assert!(self.ground.is_empty());
        }
        Ok(out)
    }

    /// Tangent cone at a face, as a translated preposet cone.
    ///
    /// The preposet puts `i <= j` when every tight set of the face containing
    /// `j` also contains `i`; the apex weights are the class sums of the face
    /// barycenter.
    pub fn tangent_cone(&self, face: &GpFace) -> Result<TranslatedPreposetCone> {
        if face.parent != *self {
            return Err(Error::invalid("face does not belong to this polytope"));
        }
        let elems: Vec<Label> = self.ground.iter().cloned().collect();
        let mut rels = Vec::new();
        for i in &elems {
            for j in &elems {
                if i == j {
                    continue;
                }
                let dominated = face
                    .tight
                    .iter()
                    .all(|a| !a.contains(j) || a.contains(i));
                if dominated {
                    rels.push((i.clone(), j.clone()));
                }
            }
        }
        let q = Preposet::new(self.ground.clone(), &rels)?;
        let bary = barycenter(&face.vertices);
        let weights: Vec<Rat> = q
            .classes()
            .iter()
            .map(|class| class.iter().map(|i| bary[i].clone()).sum())
            .collect();
        Ok(TranslatedPreposetCone::new(WeightedPreposet::new(q, weights)?))
    }

    /// Brianchon-Gram expansion: the signed sum of tangent cones over all
    /// distinct nonempty faces, `Σ_F (-1)^{dim F} cone_F(P)`.
    pub fn brianchon_gram(&self) -> Result<FormalSum<TranslatedPreposetCone>> {
        let mut out = FormalSum::zero();
        for f in self.faces() {
            let sign = if f.dim % 2 == 0 { Rat::one() } else { -Rat::one() };
            out.add_term(self.tangent_cone(&f)?, sign);
        }
        Ok(out)
    }
}

impl fmt::Display for SubmodularGp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GP({}; z(I)={})", set_key(&self.ground), self.total())
    }
}

impl fmt::Debug for SubmodularGp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zs: Vec<String> = self
            .z
            .iter()
            .filter(|(a, _)| !a.is_empty())
            .map(|(a, v)| format!("{}↦{v}", set_key(a)))
            .collect();
        write!(f, "GP({})", zs.join(" "))
    }
}

/// A face of a generalized permutahedron: its vertex set, the family of
/// subsets tight at every vertex, and its affine dimension.
#[derive(Clone, PartialEq, Eq)]
pub struct GpFace {
    parent: SubmodularGp,
    vertices: Vec<Point>,
    tight: Vec<LabelSet>,
    dim: usize,
}

impl GpFace {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn tight_sets(&self) -> &[LabelSet] {
        &self.tight
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parent(&self) -> &SubmodularGp {
        &self.parent
    }

    /// The face as a polytope in its own right.
    pub fn to_gp(&self) -> Result<SubmodularGp> {
        SubmodularGp::from_vertices(&self.vertices)
            .map_err(|e| Error::internal(format!("face support function not submodular: {e}")))
    }
}

impl fmt::Debug for GpFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Face(dim {}, {} vertices)", self.dim, self.vertices.len())
    }
}

/// A translated preposet cone `cone(w, q)`; the conical counterpart of a
/// bounded polytope in the canonical-form pipeline.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TranslatedPreposetCone(WeightedPreposet);

impl TranslatedPreposetCone {
    pub fn new(wp: WeightedPreposet) -> Self {
        TranslatedPreposetCone(wp)
    }

    pub fn weighted_preposet(&self) -> &WeightedPreposet {
        &self.0
    }

    pub fn ground(&self) -> LabelSet {
        self.0.ground()
    }

    pub fn contains(&self, x: &Point) -> Result<bool> {
        weighted_cone_membership(&self.0, x)
    }

    /// Precomputed membership oracle for batched point queries.
    pub fn membership(&self) -> crate::preposet::ConeMembership {
        crate::preposet::ConeMembership::new(&self.0)
    }

    /// Signed straightening expansion into weighted OSP cones:
    /// `Σ_l (-1)^{|q| - |l|} (w_l, l)`, whose translated OSP cone indicators
    /// sum to the indicator of this cone.
    pub fn straighten(&self) -> FormalSum<WeightedOsp> {
        let mut out = FormalSum::zero();
        for (wosp, sign) in weighted_prelinear_extensions(&self.0) {
            out.add_term(wosp, Rat::from(sign));
        }
        out
    }
}

impl fmt::Display for TranslatedPreposetCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{}", self.0)
    }
}

impl fmt::Debug for TranslatedPreposetCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The translated OSP cone of a weighted ordered set partition.
pub fn wosp_cone(w: &WeightedOsp) -> TranslatedPreposetCone {
    let q = Preposet::from_osp(w.partition());
    let weights: Vec<Rat> = q
        .classes()
        .iter()
        .map(|class| {
            let idx = w
                .partition()
                .blocks()
                .iter()
                .position(|b| b == class)
                .expect("classes of a total preposet are its blocks");
            w.weights()[idx].clone()
        })
        .collect();
    TranslatedPreposetCone(WeightedPreposet::new(q, weights).expect("one weight per class"))
}

/// Either of the two classes of extended generalized permutahedra the
/// canonical form consumes: bounded polytopes and translated preposet cones.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GpElement {
    Polytope(SubmodularGp),
    Cone(TranslatedPreposetCone),
}

impl GpElement {
    pub fn ground(&self) -> LabelSet {
        match self {
            GpElement::Polytope(p) => p.ground().clone(),
            GpElement::Cone(c) => c.ground(),
        }
    }

    pub fn contains(&self, x: &Point) -> Result<bool> {
        match self {
            GpElement::Polytope(p) => p.contains(x),
            GpElement::Cone(c) => c.contains(x),
        }
    }
}

impl fmt::Display for GpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GpElement::Polytope(p) => write!(f, "{p}"),
            GpElement::Cone(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Debug for GpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<SubmodularGp> for GpElement {
    fn from(p: SubmodularGp) -> Self {
        GpElement::Polytope(p)
    }
}

impl From<TranslatedPreposetCone> for GpElement {
    fn from(c: TranslatedPreposetCone) -> Self {
        GpElement::Cone(c)
    }
}

/// The canonical-form morphism onto weighted ordered set partitions.
///
/// Polytopes expand through their tangent cones with sign
/// `(-1)^{dim F} (-1)^{|q_F|}` per prelinear extension; cones go straight
/// through the sign-twisted straightening `(-1)^{|q|} Σ_l (w_l, l)`.
/// The kernel of the resulting linear map is exactly the space of
/// inclusion-exclusion relations, so a sum maps to zero iff its signed
/// indicator functions cancel.
pub fn canonical_form(x: &FormalSum<GpElement>) -> Result<FormalSum<WeightedOsp>> {
    let mut out = FormalSum::zero();
    for (elem, coeff) in x.iter() {
        match elem {
            GpElement::Polytope(p) => {
                for face in p.faces() {
                    let tc = p.tangent_cone(&face)?;
                    let q_classes = tc.weighted_preposet().preposet().num_classes();
                    let sign = if (face.dim() + q_classes) % 2 == 0 {
                        Rat::one()
                    } else {
                        -Rat::one()
                    };
                    for (wosp, _) in weighted_prelinear_extensions(tc.weighted_preposet()) {
                        out.add_term(wosp, coeff * &sign);
                    }
                }
            }
            GpElement::Cone(c) => {
                let q_classes = c.weighted_preposet().preposet().num_classes();
                let sign = if q_classes % 2 == 0 { Rat::one() } else { -Rat::one() };
                for (wosp, _) in weighted_prelinear_extensions(c.weighted_preposet()) {
                    out.add_term(wosp, coeff * &sign);
                }
            }
        }
    }
    Ok(out)
}

/// Canonical form of a sum of bounded polytopes.
pub fn canonical_form_polytopes(x: &FormalSum<SubmodularGp>) -> Result<FormalSum<WeightedOsp>> {
    canonical_form(&x.map_linear(|p| FormalSum::singleton(GpElement::Polytope(p.clone()))))
}

/// Sign-normalized canonical form: the coefficient of each weighted OSP `l`
/// with `m` blocks is `(-1)^m` times its canonical-form coefficient, so the
/// result is the expansion of the input's indicator function in translated
/// OSP cone indicators.
pub fn indicator_expansion(x: &FormalSum<GpElement>) -> Result<FormalSum<WeightedOsp>> {
    let phi = canonical_form(x)?;
    let mut out = FormalSum::zero();
    for (wosp, c) in phi.iter() {
        let sign = if wosp.num_blocks() % 2 == 0 {
            Rat::one()
        } else {
            -Rat::one()
        };
        out.add_term(wosp.clone(), c * &sign);
    }
    Ok(out)
}

/// Decides equality of signed indicator functions: true iff the canonical
/// form of the difference vanishes.
pub fn indicator_equal(a: &FormalSum<GpElement>, b: &FormalSum<GpElement>) -> Result<bool> {
    let grounds: Vec<LabelSet> = a.iter().chain(b.iter()).map(|(e, _)| e.ground()).collect();
    if let Some(first) = grounds.first() {
        if grounds.iter().any(|g| g != first) {
            return Err(Error::ground(
                "indicator comparison requires a common ambient ground set",
            ));
        }
    }
    Ok(canonical_form(&(a.clone() - b.clone()))?.is_zero())
}

/// Evaluates a signed sum of indicator functions at a point.
pub fn indicator_value(x: &FormalSum<GpElement>, point: &Point) -> Result<Rat> {
    let mut out = Rat::zero();
    for (elem, c) in x.iter() {
        if elem.contains(point)? {
            out += c.clone();
        }
    }
    Ok(out)
}

/// Evaluates a signed sum of translated OSP cone indicators at a point.
pub fn wosp_indicator_value(x: &FormalSum<WeightedOsp>, point: &Point) -> Result<Rat> {
    let mut out = Rat::zero();
    for (w, c) in x.iter() {
        if wosp_cone(w).contains(point)? {
            out += c.clone();
        }
    }
    Ok(out)
}

fn barycenter(points: &[Point]) -> Point {
    let n = Rat::from(points.len() as i64);
    let mut out: Point = points[0].keys().map(|k| (k.clone(), Rat::zero())).collect();
    for p in points {
        for (k, v) in p {
            *out.get_mut(k).unwrap() += v.clone();
        }
    }
    for v in out.values_mut() {
        *v = v.clone() / n.clone();
    }
    out
}

/// Rank of the affine span of a point set (0 for a single point).
#[allow(clippy::needless_range_loop)]
pub fn affine_rank(points: &[Point]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let keys: Vec<&Label> = base.keys().collect();
    let mut rows: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| keys.iter().map(|k| p[k].clone() - base[k].clone()).collect())
        .collect();
    // Gaussian elimination over the rationals
    let mut rank = 0;
    let cols = keys.len();
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone() / lead.clone();
                for c in col..cols {
                    let sub = factor.clone() * rows[rank][c].clone();
                    rows[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
