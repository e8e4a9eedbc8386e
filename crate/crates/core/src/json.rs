//! JSON forms for every domain type: the wire format of the CLI and the
//! subdivision library.
//!
//! Subsets are serialized as sorted label arrays; submodular functions key
//! subsets by sorted comma-joined labels (`"1,2"`); rationals are `"p/q"`
//! strings (or `"p"` for integers). Output maps use sorted keys throughout,
//! so identical invocations are byte-identical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::building_set::BuildingSet;
use crate::error::{Error, Result};
use crate::formal::FormalSum;
use crate::gp::{all_subsets, GpElement, SubmodularGp, TranslatedPreposetCone};
use crate::label::{set_key, Label, LabelSet};
use crate::matroid::{FlagMatroid, GInvariant, Matroid};
use crate::osp::{OrderedSetPartition, WeightedOsp};
use crate::poly::{bi_key, exponent_key, flat_key, BiPoly, ExponentPoly, FlatPoly, QSym, UniPoly};
use crate::preposet::{Poset, Preposet, WeightedPreposet};
use crate::rational::Rat;

#[derive(Serialize, Deserialize)]
pub struct GpJson {
    pub ground: Vec<Label>,
    pub z: BTreeMap<String, Rat>,
}

#[derive(Serialize, Deserialize)]
pub struct MatroidJson {
    pub ground: Vec<Label>,
    pub bases: Vec<Vec<Label>>,
}

#[derive(Serialize, Deserialize)]
pub struct PosetJson {
    pub ground: Vec<Label>,
    #[serde(default)]
    pub relations: Vec<(Label, Label)>,
}

#[derive(Serialize, Deserialize)]
pub struct BuildingSetJson {
    pub ground: Vec<Label>,
    pub members: Vec<Vec<Label>>,
}

#[derive(Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<Label>,
    #[serde(default)]
    pub edges: Vec<(Label, Label)>,
}

#[derive(Serialize, Deserialize)]
pub struct ConeJson {
    pub preposet: PosetJson,
    /// weights keyed by any representative of each equivalence class
    pub weights: BTreeMap<Label, Rat>,
}

#[derive(Serialize, Deserialize)]
pub struct FlagMatroidJson {
    pub constituents: Vec<MatroidJson>,
}

/// One polytope, matroid, or cone; the common input shape.
#[derive(Serialize, Deserialize)]
pub struct ObjectJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gp: Option<GpJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matroid: Option<MatroidJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeJson>,
}

#[derive(Serialize, Deserialize)]
pub struct TermJson {
    #[serde(default = "default_coeff")]
    pub coeff: Rat,
    #[serde(flatten)]
    pub object: ObjectJson,
}

fn default_coeff() -> Rat {
    Rat::one()
}

#[derive(Serialize, Deserialize)]
pub struct SumJson {
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
pub struct SubdivisionJson {
    pub parent: ObjectJson,
    pub cells: Vec<ObjectJson>,
}

pub fn labels_from(list: &[Label]) -> LabelSet {
    list.iter().cloned().collect()
}

pub fn parse_gp(j: &GpJson) -> Result<SubmodularGp> {
    let ground = labels_from(&j.ground);
    let mut z: BTreeMap<LabelSet, Rat> = BTreeMap::new();
    for (key, v) in &j.z {
        let set: LabelSet = if key.trim().is_empty() {
            LabelSet::new()
        } else {
            key.split(',').map(|s| Label::new(s.trim())).collect()
        };
        z.insert(set, v.clone());
    }
    z.entry(LabelSet::new()).or_insert_with(Rat::zero);
    for a in all_subsets(&ground) {
        if !z.contains_key(&a) {
            return Err(Error::parse(format!(
                "z must be total: missing subset \"{}\"",
                set_key(&a)
            )));
        }
    }
    SubmodularGp::new(ground, z)
}

pub fn gp_to_json(p: &SubmodularGp) -> GpJson {
    GpJson {
        ground: p.ground().iter().cloned().collect(),
        z: p
            .z_map()
            .iter()
            .filter(|(a, _)| !a.is_empty())
            .map(|(a, v)| (set_key(a), v.clone()))
            .collect(),
    }
}

pub fn parse_matroid(j: &MatroidJson) -> Result<Matroid> {
    Matroid::new(
        labels_from(&j.ground),
        j.bases.iter().map(|b| labels_from(b)).collect(),
    )
}

pub fn matroid_to_json(m: &Matroid) -> MatroidJson {
    MatroidJson {
        ground: m.ground().iter().cloned().collect(),
        bases: m.bases().iter().map(|b| b.iter().cloned().collect()).collect(),
    }
}

pub fn parse_poset(j: &PosetJson) -> Result<Poset> {
    Poset::new(labels_from(&j.ground), &j.relations)
}

pub fn parse_preposet(j: &PosetJson) -> Result<Preposet> {
    Preposet::new(labels_from(&j.ground), &j.relations)
}

pub fn parse_cone(j: &ConeJson) -> Result<TranslatedPreposetCone> {
    let q = parse_preposet(&j.preposet)?;
    Ok(TranslatedPreposetCone::new(WeightedPreposet::from_weight_map(
        q, &j.weights,
    )?))
}

pub fn parse_building_set(j: &BuildingSetJson) -> Result<BuildingSet> {
    BuildingSet::new(
        labels_from(&j.ground),
        j.members.iter().map(|m| labels_from(m)).collect(),
    )
}

pub fn parse_graph(j: &GraphJson) -> Result<BuildingSet> {
    BuildingSet::graphical(labels_from(&j.vertices), &j.edges)
}

pub fn parse_flag_matroid(j: &FlagMatroidJson) -> Result<FlagMatroid> {
    let constituents = j
        .constituents
        .iter()
        .map(parse_matroid)
        .collect::<Result<Vec<_>>>()?;
    FlagMatroid::new(constituents)
}

/// An object as a `GpElement`; matroids go through their polytopes.
pub fn parse_element(j: &ObjectJson) -> Result<GpElement> {
    match (&j.gp, &j.matroid, &j.cone) {
        (Some(g), None, None) => Ok(GpElement::Polytope(parse_gp(g)?)),
        (None, Some(m), None) => Ok(GpElement::Polytope(parse_matroid(m)?.to_gp())),
        (None, None, Some(c)) => Ok(GpElement::Cone(parse_cone(c)?)),
        _ => Err(Error::parse(
            "an object must have exactly one of `gp`, `matroid`, `cone`",
        )),
    }
}

pub fn parse_sum(j: &SumJson) -> Result<FormalSum<GpElement>> {
    let mut out = FormalSum::zero();
    for t in &j.terms {
        out.add_term(parse_element(&t.object)?, t.coeff.clone());
    }
    Ok(out)
}

/// Parses an ordered set partition from `[["1","4"],["2"]]` or `"14|2"`.
pub fn parse_osp_value(v: &Value) -> Result<OrderedSetPartition> {
    match v {
        Value::String(s) => crate::osp::parse_osp_compact(s),
        Value::Array(_) => {
            let blocks: Vec<Vec<Label>> = serde_json::from_value(v.clone())
                .map_err(|e| Error::parse(format!("bad ordered set partition: {e}")))?;
            OrderedSetPartition::new(blocks.into_iter().map(|b| b.into_iter().collect()).collect())
        }
        _ => Err(Error::parse("ordered set partition must be a string or array")),
    }
}

pub fn rat_value(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn unipoly_value(p: &UniPoly) -> Value {
    let mut map = Map::new();
    for (d, c) in p.iter() {
        let key = match d {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{d}"),
        };
        map.insert(key, rat_value(c));
    }
    Value::Object(map)
}

pub fn bipoly_value(p: &BiPoly) -> Value {
    let mut map = Map::new();
    for ((a, b), c) in p.iter() {
        map.insert(bi_key(*a, *b), rat_value(c));
    }
    Value::Object(map)
}

pub fn exponent_poly_value(p: &ExponentPoly) -> Value {
    let mut map = Map::new();
    for (e, c) in p.iter() {
        map.insert(exponent_key(e), rat_value(c));
    }
    Value::Object(map)
}

pub fn flat_poly_value(p: &FlatPoly) -> Value {
    let mut map = Map::new();
    for (m, c) in p.iter() {
        map.insert(flat_key(m), rat_value(c));
    }
    Value::Object(map)
}

pub fn qsym_value(q: &QSym) -> Value {
    let mut map = Map::new();
    for (comp, c) in q.iter() {
        let key = comp
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        map.insert(key, rat_value(c));
    }
    Value::Object(map)
}

pub fn g_invariant_value(g: &GInvariant) -> Value {
    let mut map = Map::new();
    for (k, v) in g.key_strings() {
        map.insert(k, json!(v));
    }
    Value::Object(map)
}

pub fn osp_value(osp: &OrderedSetPartition) -> Value {
    json!(osp
        .blocks()
        .iter()
        .map(|b| b.iter().cloned().collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

pub fn wosp_value(w: &WeightedOsp) -> Value {
    json!({
        "osp": osp_value(w.partition()),
        "weights": w.weights().iter().map(rat_value).collect::<Vec<_>>(),
    })
}

pub fn wosp_sum_value(s: &FormalSum<WeightedOsp>) -> Value {
    let terms: Vec<Value> = s
        .iter()
        .map(|(w, c)| {
            json!({
                "coeff": rat_value(c),
                "osp": osp_value(w.partition()),
                "weights": w.weights().iter().map(rat_value).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!(terms)
}

pub fn gp_value(p: &SubmodularGp) -> Value {
    serde_json::to_value(gp_to_json(p)).expect("gp serializes")
}

pub fn gp_sum_value(s: &FormalSum<SubmodularGp>) -> Value {
    let terms: Vec<Value> = s
        .iter()
        .map(|(p, c)| {
            json!({
                "coeff": rat_value(c),
                "gp": gp_value(p),
            })
        })
        .collect();
    json!(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;

    #[test]
    fn gp_round_trip() {
        let h = Matroid::uniform(2, 4).to_gp();
        let j = gp_to_json(&h);
        let back = parse_gp(&j).unwrap();
        assert_eq!(h, back);
        // omitted subsets are an error
        let mut missing = gp_to_json(&h);
        missing.z.remove("1,2");
        assert!(parse_gp(&missing).is_err());
    }

    #[test]
    fn matroid_round_trip() {
        let m = Matroid::uniform(2, 4);
        let back = parse_matroid(&matroid_to_json(&m)).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn object_forms() {
        let v: ObjectJson = serde_json::from_value(json!({
            "matroid": {"ground": [1,2], "bases": [[1],[2]]}
        }))
        .unwrap();
        let e = parse_element(&v).unwrap();
        assert_eq!(e.ground(), labels([1, 2]));

        let cone: ObjectJson = serde_json::from_value(json!({
            "cone": {
                "preposet": {"ground": [1,2], "relations": [[1,2]]},
                "weights": {"1": "1", "2": "0"}
            }
        }))
        .unwrap();
        let e = parse_element(&cone).unwrap();
        assert!(matches!(e, GpElement::Cone(_)));

        let bad: ObjectJson = serde_json::from_value(json!({})).unwrap();
        assert!(parse_element(&bad).is_err());
    }

    #[test]
    fn osp_parsing() {
        let a = parse_osp_value(&json!("14|2")).unwrap();
        let b = parse_osp_value(&json!([["1","4"],["2"]])).unwrap();
        assert_eq!(a, b);
        let c = parse_osp_value(&json!([[1, 4],[2]])).unwrap();
        assert_eq!(a, c);
    }
}
