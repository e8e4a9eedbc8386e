//! Building sets, nestohedra, and the face-count polynomial with its
//! restriction recurrence.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gp::{all_subsets, SubmodularGp};
use crate::label::{set_key, Label, LabelSet};
use crate::poly::UniPoly;
use crate::rational::Rat;

/// A multiset of nonempty subsets closed under unions of intersecting
/// members. Singletons may repeat (they only translate the nestohedron);
/// larger members appear at most once.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BuildingSet {
    ground: LabelSet,
    /// member -> multiplicity
    members: BTreeMap<LabelSet, usize>,
}

impl BuildingSet {
    pub fn new(ground: LabelSet, members_list: Vec<LabelSet>) -> Result<Self> {
        let mut members: BTreeMap<LabelSet, usize> = BTreeMap::new();
        for m in members_list {
            if m.is_empty() {
                return Err(Error::axiom("building set members must be nonempty"));
            }
            if !m.is_subset(&ground) {
                return Err(Error::axiom(format!(
                    "member {{{}}} is not contained in the ground set",
                    set_key(&m)
                )));
            }
            *members.entry(m).or_insert(0) += 1;
        }
        for (m, mult) in &members {
            if m.len() > 1 && *mult > 1 {
                return Err(Error::axiom(format!(
                    "non-singleton member {{{}}} appears {mult} times",
                    set_key(m)
                )));
            }
        }
        let keys: Vec<LabelSet> = members.keys().cloned().collect();
        for a in &keys {
            for b in &keys {
                if !a.is_disjoint(b) {
                    let union: LabelSet = a.union(b).cloned().collect();
                    if !members.contains_key(&union) {
                        return Err(Error::axiom(format!(
                            "members {{{}}} and {{{}}} intersect but their union is missing",
                            set_key(a),
                            set_key(b)
                        )));
                    }
                }
            }
        }
        Ok(BuildingSet { ground, members })
    }

    /// The graphical building set: all vertex subsets inducing a connected
    /// subgraph (singletons included).
    pub fn graphical(vertices: LabelSet, edges: &[(Label, Label)]) -> Result<Self> {
        for (a, b) in edges {
            if !vertices.contains(a) || !vertices.contains(b) {
                return Err(Error::invalid(format!("edge ({a},{b}) mentions unknown vertex")));
            }
        }
        let mut members = Vec::new();
        for sub in all_subsets(&vertices) {
            if sub.is_empty() {
                continue;
            }
            if induced_connected(&sub, edges) {
                members.push(sub);
            }
        }
        BuildingSet::new(vertices, members)
    }

    /// The full building set of all nonempty subsets; its nestohedron is the
    /// permutahedron.
    pub fn full(ground: LabelSet) -> Self {
        let members = all_subsets(&ground)
            .into_iter()
            .filter(|s| !s.is_empty())
            .map(|s| (s, 1usize))
            .collect();
        BuildingSet { ground: ground.clone(), members }
    }

    pub fn ground(&self) -> &LabelSet {
        &self.ground
    }

    /// Members with multiplicity, flattened.
    pub fn members(&self) -> Vec<LabelSet> {
        self.members
            .iter()
            .flat_map(|(m, mult)| std::iter::repeat_n(m.clone(), *mult))
            .collect()
    }

    pub fn member_multiplicities(&self) -> &BTreeMap<LabelSet, usize> {
        &self.members
    }

    /// Union of all members.
    pub fn support(&self) -> LabelSet {
        self.members.keys().flatten().cloned().collect()
    }

    /// Maximal members; they partition the support.
    pub fn components(&self) -> Vec<LabelSet> {
        self.members
            .keys()
            .filter(|m| self.members.keys().all(|n| *m == n || !m.is_subset(n)))
            .cloned()
            .collect()
    }

    /// Connected means the ground set itself is the unique maximal member.
    pub fn is_connected(&self) -> bool {
        let comps = self.components();
        comps.len() == 1 && comps[0] == self.ground
    }

    /// Restriction: members contained in `s`, with multiplicity.
    pub fn restrict(&self, s: &LabelSet) -> Result<BuildingSet> {
        if !s.is_subset(&self.ground) {
            return Err(Error::ground("restriction set outside ground set"));
        }
        let members = self
            .members
            .iter()
            .filter(|(m, _)| m.is_subset(s))
            .map(|(m, mult)| (m.clone(), *mult))
            .collect();
        Ok(BuildingSet { ground: s.clone(), members })
    }

    /// Contraction: nonempty traces `B ⊆ I∖S` of members, i.e. sets that can
    /// be completed by some `A ⊆ S` to a member. Returned as a plain set.
    pub fn contract(&self, s: &LabelSet) -> Result<BuildingSet> {
        if !s.is_subset(&self.ground) {
            return Err(Error::ground("contraction set outside ground set"));
        }
        let t: LabelSet = self.ground.difference(s).cloned().collect();
        let mut members: BTreeMap<LabelSet, usize> = BTreeMap::new();
        for m in self.members.keys() {
            let trace: LabelSet = m.intersection(&t).cloned().collect();
            if !trace.is_empty() {
                members.insert(trace, 1);
            }
        }
        let out = BuildingSet { ground: t, members };
        out.validate_axioms()
            .map_err(|e| Error::internal(format!("contraction broke the axioms: {e}")))?;
        Ok(out)
    }

    fn validate_axioms(&self) -> Result<()> {
        BuildingSet::new(self.ground.clone(), self.members()).map(|_| ())
    }

    /// The nestohedron: the Minkowski sum of the simplices of the members.
    /// `z(A)` counts members meeting `A`, with multiplicity. Every ground
    /// element must be covered by some member.
    pub fn nestohedron(&self) -> Result<SubmodularGp> {
        if self.support() != self.ground {
            return Err(Error::invalid(
                "nestohedron requires every ground element to lie in some member",
            ));
        }
        let z: BTreeMap<LabelSet, Rat> = all_subsets(&self.ground)
            .into_iter()
            .map(|a| {
                let count: usize = self
                    .members
                    .iter()
                    .filter(|(m, _)| !m.is_disjoint(&a))
                    .map(|(_, mult)| *mult)
                    .sum();
                (a, Rat::from(count as i64))
            })
            .collect();
        SubmodularGp::new(self.ground.clone(), z)
            .map_err(|e| Error::internal(format!("nestohedron support function: {e}")))
    }

    /// Face-count polynomial `Σ_F t^{dim F}` of the nestohedron, by the
    /// restriction recurrence. Elements covered by no member contribute
    /// nothing (their coordinate is frozen).
    pub fn f_polynomial(&self) -> UniPoly {
        let mut memo: BTreeMap<BuildingSet, UniPoly> = BTreeMap::new();
        self.f_poly_memo(&mut memo)
    }

    fn f_poly_memo(&self, memo: &mut BTreeMap<BuildingSet, UniPoly>) -> UniPoly {
        if let Some(p) = memo.get(self) {
            return p.clone();
        }
        let result = if self.members.is_empty() {
            UniPoly::one()
        } else if self.is_connected() {
            // f = Σ_{S ⊊ I} t^{|I| - |S| - 1} f(B|_S)
            let mut acc = UniPoly::zero();
            let n = self.ground.len();
            for s in all_subsets(&self.ground) {
                if s == self.ground {
                    continue;
                }
                let sub = self.restrict(&s).expect("subset of ground");
                let f_sub = sub.f_poly_memo(memo);
                acc = acc + f_sub * UniPoly::monomial(n - s.len() - 1, Rat::one());
            }
            acc
        } else {
            // product over the induced building sets of the components
            let mut acc = UniPoly::one();
            for comp in self.components() {
                let sub = self.restrict(&comp).expect("component within ground");
                acc = acc * sub.f_poly_memo(memo);
            }
            acc
        };
        memo.insert(self.clone(), result.clone());
        result
    }

    /// Face-count polynomial by direct face enumeration of the nestohedron.
    pub fn f_polynomial_direct(&self) -> Result<UniPoly> {
        let gp = self.nestohedron()?;
        let mut out = UniPoly::zero();
        for face in gp.faces() {
            out.add_term(face.dim(), Rat::one());
        }
        Ok(out)
    }
}

impl fmt::Display for BuildingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms: Vec<String> = self
            .members()
            .iter()
            .map(|m| format!("{{{}}}", set_key(m)))
            .collect();
        write!(f, "building_set({}; {})", set_key(&self.ground), ms.join(" "))
    }
}

impl fmt::Debug for BuildingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn induced_connected(sub: &LabelSet, edges: &[(Label, Label)]) -> bool {
    if sub.len() <= 1 {
        return true;
    }
    let start = sub.iter().next().unwrap().clone();
    let mut seen: LabelSet = [start.clone()].into_iter().collect();
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for (a, b) in edges {
            let other = if *a == v {
                b
            } else if *b == v {
                a
            } else {
                continue;
            };
            if sub.contains(other) && seen.insert(other.clone()) {
                stack.push(other.clone());
            }
        }
    }
    seen == *sub
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;

    fn lbl(n: i64) -> Label {
        Label::from(n)
    }

    fn path3() -> BuildingSet {
        BuildingSet::graphical(labels([1, 2, 3]), &[(lbl(1), lbl(2)), (lbl(2), lbl(3))]).unwrap()
    }

    #[test]
    fn construction_validates_union_closure() {
        assert!(BuildingSet::new(
            labels([1, 2, 3]),
            vec![labels([1, 2]), labels([2, 3])] // missing {1,2,3}
        )
        .is_err());
        assert!(BuildingSet::new(labels([1, 2]), vec![labels([1]), labels([1])]).is_ok());
        assert!(BuildingSet::new(labels([1, 2]), vec![labels([1, 2]), labels([1, 2])]).is_err());
    }

    #[test]
    fn graphical_building_sets() {
        let b = path3();
        let members = b.members();
        assert!(members.contains(&labels([1, 2])));
        assert!(members.contains(&labels([2, 3])));
        assert!(!members.contains(&labels([1, 3])));
        assert!(members.contains(&labels([1, 2, 3])));
        assert!(b.is_connected());
    }

    #[test]
    fn minors_of_path() {
        let b = path3();
        // restriction to {1,3}: only singletons survive
        let r = b.restrict(&labels([1, 3])).unwrap();
        assert_eq!(r.members(), vec![labels([1]), labels([3])]);
        // identity cases
        assert_eq!(b.restrict(&labels([1, 2, 3])).unwrap(), b);
        assert_eq!(b.contract(&LabelSet::new()).unwrap().members(), b.members());
        // contraction of {2} glues 1 and 3
        let c = b.contract(&labels([2])).unwrap();
        assert_eq!(c.members(), vec![labels([1]), labels([1, 3]), labels([3])]);
    }

    #[test]
    fn nestohedron_examples() {
        // {{1},{2},{3},{123}}: translate of the standard triangle
        let b = BuildingSet::new(
            labels([1, 2, 3]),
            vec![labels([1]), labels([2]), labels([3]), labels([1, 2, 3])],
        )
        .unwrap();
        let gp = b.nestohedron().unwrap();
        for a in all_subsets(&labels([1, 2, 3])) {
            let expect = if a.is_empty() { 0 } else { a.len() as i64 + 1 };
            assert_eq!(*gp.z(&a), Rat::from(expect));
        }

        // all nonempty subsets: the permutahedron, a hexagon in dim 2
        let perm = BuildingSet::full(labels([1, 2, 3])).nestohedron().unwrap();
        assert_eq!(perm.vertices().len(), 6);
        assert_eq!(perm.dim(), 2);

        // single singleton: a point
        let pt = BuildingSet::new(labels([1]), vec![labels([1])]).unwrap();
        assert_eq!(pt.nestohedron().unwrap().dim(), 0);

        // uncovered element rejected
        let partial = BuildingSet::new(labels([1, 2]), vec![labels([1])]).unwrap();
        assert!(partial.nestohedron().is_err());
    }

    #[test]
    fn f_polynomial_examples() {
        let simplex = BuildingSet::new(
            labels([1, 2, 3]),
            vec![labels([1]), labels([2]), labels([3]), labels([1, 2, 3])],
        )
        .unwrap();
        let f = simplex.f_polynomial();
        let expect: UniPoly = [(2, Rat::one()), (1, Rat::from(3)), (0, Rat::from(3))]
            .into_iter()
            .collect();
        assert_eq!(f, expect);

        let hexagon = BuildingSet::full(labels([1, 2, 3]));
        let f = hexagon.f_polynomial();
        let expect: UniPoly = [(2, Rat::one()), (1, Rat::from(6)), (0, Rat::from(6))]
            .into_iter()
            .collect();
        assert_eq!(f, expect);

        let singleton = BuildingSet::new(labels([1]), vec![labels([1])]).unwrap();
        assert_eq!(singleton.f_polynomial(), UniPoly::one());
    }

    #[test]
    fn recurrence_agrees_with_direct() {
        for b in [
            path3(),
            BuildingSet::full(labels([1, 2, 3])),
            BuildingSet::graphical(labels([1, 2, 3]), &[(lbl(1), lbl(2))]).unwrap(),
        ] {
            assert_eq!(b.f_polynomial(), b.f_polynomial_direct().unwrap(), "{b}");
        }
    }
}
