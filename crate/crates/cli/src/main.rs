//! Batch command-line interface: every subcommand reads JSON objects (inline
//! or `@file`), prints canonical JSON with sorted keys on stdout, and exits
//! with 0 on success/pass, 1 on a computed failure (an inequality or a
//! violated valuation), 2 on bad input.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use gphopf::building_set::BuildingSet;
use gphopf::error::Error;
use gphopf::gp::{canonical_form, indicator_equal, indicator_value, GpElement, SubmodularGp};
use gphopf::hopf::{
    antipode_face_sum, osp_invariant, polynomial_invariant, qsym_invariant, universal_norm,
    universal_tutte, Character, HopfObject,
};
use gphopf::json::{
    self, bipoly_value, exponent_poly_value, flat_poly_value, g_invariant_value, gp_sum_value,
    osp_value, qsym_value, rat_value, unipoly_value, wosp_sum_value,
};
use gphopf::matroid::{BetaConvention, Matroid};
use gphopf::poset_invariants::{order_polynomial, phi_ell, poincare, poset_tutte};
use gphopf::preposet::Poset;
use gphopf::valuation::{
    builtin_by_name, builtin_relations, poset_relation_residuals, preposet_relation_residuals,
    weak_check, BuiltinRelation, Cell, SubdivisionComplex, INVARIANT_NAMES,
};
use gphopf::FormalSum;

#[derive(Parser)]
#[command(name = "gphopf", version, about = "exact computations with generalized permutahedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatroidArg {
    /// matroid JSON: {"ground":[...],"bases":[[...],...]} or @file
    #[arg(long)]
    matroid: String,
}

#[derive(Args)]
struct PosetArg {
    /// poset JSON: {"ground":[...],"relations":[[a,b],...]} or @file
    #[arg(long)]
    poset: String,
}

#[derive(Subcommand)]
enum Command {
    /// Corank-nullity Tutte polynomial of a matroid
    Tutte(MatroidArg),
    /// Characteristic polynomial (and its reduced form) of a matroid
    CharPoly(MatroidArg),
    /// Beta invariant of a matroid
    Beta {
        #[command(flatten)]
        matroid: MatroidArg,
        /// convention assumption: beta=crapo or beta=paper
        #[arg(long = "assume", default_value = "beta=crapo")]
        assume: String,
    },
    /// Chern-Schwartz-MacPherson weight of one ordered set partition
    Csm {
        #[command(flatten)]
        matroid: MatroidArg,
        /// ordered set partition: "1|23" or [[1],[2,3]]
        #[arg(long)]
        osp: String,
    },
    /// Rank-jump invariant over all linear orders
    GInvariant(MatroidArg),
    /// Unique-basis character and its quasisymmetric function
    Bjr(MatroidArg),
    /// Volume polynomial in the flat variables t_F
    VolumePoly(MatroidArg),
    /// Universal Tutte character of a polytope or matroid polytope
    UniversalTutte {
        #[arg(long)]
        gp: Option<String>,
        #[arg(long)]
        matroid: Option<String>,
    },
    /// Order polynomial of a poset
    OrderPoly {
        #[command(flatten)]
        poset: PosetArg,
        /// strict or weak
        #[arg(long, default_value = "strict")]
        kind: String,
    },
    /// Antichain Tutte polynomial of a poset
    PosetTutte(PosetArg),
    /// Poincaré polynomial of a poset cone
    Poincare {
        #[command(flatten)]
        poset: PosetArg,
        /// optional linear order (JSON array) for the proper-labelling variant
        #[arg(long)]
        ell: Option<String>,
    },
    /// Face-count polynomial of a nestohedron
    FPoly {
        /// building set JSON: {"ground":[...],"members":[[...],...]}
        #[arg(long = "building-set")]
        building_set: Option<String>,
        /// graph JSON: {"vertices":[...],"edges":[[a,b],...]}
        #[arg(long)]
        graph: Option<String>,
        /// recurrence (default) or direct face enumeration
        #[arg(long, default_value = "recurrence")]
        method: String,
    },
    /// Canonical form of a signed sum of polytopes, matroids, and cones
    CanonicalForm {
        /// sum JSON: {"terms":[{"coeff":"1","matroid":{...}},...]} or one object
        #[arg(long)]
        input: String,
    },
    /// Decide equality of signed indicator sums
    IndicatorEqual {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Run valuation and strong checks on a subdivision or builtin relation
    CheckSubdivision {
        /// name of a built-in relation (see `gphopf list`)
        #[arg(long)]
        builtin: Option<String>,
        /// subdivision JSON: {"parent":{...},"cells":[{...},...]}
        #[arg(long)]
        subdivision: Option<String>,
        /// invariant name, "all", or "strong"
        #[arg(long, default_value = "strong")]
        invariant: String,
        /// additional pointwise samples of the indicator identity
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Antipode face sum of a polytope
    Antipode {
        #[arg(long)]
        gp: Option<String>,
        #[arg(long)]
        matroid: Option<String>,
    },
    /// Polynomial / quasisymmetric / OSP invariant of a named character
    CharacterInvariant {
        /// antichain, bjr, or one
        #[arg(long)]
        character: String,
        #[arg(long)]
        matroid: Option<String>,
        #[arg(long)]
        poset: Option<String>,
        /// polynomial (default), qsym, or osp
        #[arg(long, default_value = "polynomial")]
        kind: String,
    },
    /// List built-in relations and invariant names
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((value, code)) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable output"));
            ExitCode::from(code)
        }
        Err(e) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "error": e.to_string() })).unwrap()
            );
            ExitCode::from(2)
        }
    }
}

fn read_arg(s: &str) -> Result<String, Error> {
    if let Some(path) = s.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::parse(format!("cannot read {path}: {e}")))
    } else {
        Ok(s.to_string())
    }
}

fn from_json<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, Error> {
    let raw = read_arg(s)?;
    serde_json::from_str(&raw).map_err(|e| Error::parse(format!("malformed JSON: {e}")))
}

fn matroid_from(s: &str) -> Result<Matroid, Error> {
    json::parse_matroid(&from_json(s)?)
}

fn poset_from(s: &str) -> Result<Poset, Error> {
    json::parse_poset(&from_json(s)?)
}

fn gp_from(gp: &Option<String>, matroid: &Option<String>) -> Result<SubmodularGp, Error> {
    match (gp, matroid) {
        (Some(g), None) => json::parse_gp(&from_json(g)?),
        (None, Some(m)) => Ok(matroid_from(m)?.to_gp()),
        _ => Err(Error::parse("provide exactly one of --gp or --matroid")),
    }
}

fn sum_from(s: &str) -> Result<FormalSum<GpElement>, Error> {
    let raw = read_arg(s)?;
    // accept either a {"terms":[...]} sum or a single bare object
    if let Ok(sum) = serde_json::from_str::<json::SumJson>(&raw) {
        return json::parse_sum(&sum);
    }
    let obj: json::ObjectJson =
        serde_json::from_str(&raw).map_err(|e| Error::parse(format!("malformed JSON: {e}")))?;
    Ok(FormalSum::singleton(json::parse_element(&obj)?))
}

fn output(assumptions: Value, result: Value) -> Value {
    json!({ "assumptions": assumptions, "result": result })
}

fn no_assumptions() -> Value {
    Value::Object(Map::new())
}

fn run(cmd: Command) -> Result<(Value, u8), Error> {
    match cmd {
        Command::Tutte(arg) => {
            let m = matroid_from(&arg.matroid)?;
            Ok((output(no_assumptions(), bipoly_value(&m.tutte())), 0))
        }
        Command::CharPoly(arg) => {
            let m = matroid_from(&arg.matroid)?;
            let result = json!({
                "characteristic": unipoly_value(&m.char_poly()),
                "reduced": unipoly_value(&m.reduced_char()?),
            });
            Ok((output(no_assumptions(), result), 0))
        }
        Command::Beta { matroid, assume } => {
            let m = matroid_from(&matroid.matroid)?;
            let convention = match assume.split_once('=') {
                Some(("beta", c)) => BetaConvention::parse(c)?,
                _ => return Err(Error::parse("expected --assume beta=crapo|paper")),
            };
            let result = rat_value(&m.beta(convention)?);
            Ok((output(json!({ "beta": convention.name() }), result), 0))
        }
        Command::Csm { matroid, osp } => {
            let m = matroid_from(&matroid.matroid)?;
            let raw = read_arg(&osp)?;
            let v: Value = serde_json::from_str(&raw).unwrap_or(Value::String(raw));
            let partition = json::parse_osp_value(&v)?;
            let w = m.csm_weight(&partition)?;
            let result = json!({ "osp": osp_value(&partition), "weight": rat_value(&w) });
            Ok((output(json!({ "beta": "crapo" }), result), 0))
        }
        Command::GInvariant(arg) => {
            let m = matroid_from(&arg.matroid)?;
            Ok((output(no_assumptions(), g_invariant_value(&m.g_invariant())), 0))
        }
        Command::Bjr(arg) => {
            let m = matroid_from(&arg.matroid)?;
            let x = HopfObject::Matroid(m.clone());
            let result = json!({
                "character": rat_value(&m.bjr_character()),
                "qsym": qsym_value(&qsym_invariant(Character::Bjr, &x)?),
            });
            Ok((output(no_assumptions(), result), 0))
        }
        Command::VolumePoly(arg) => {
            let m = matroid_from(&arg.matroid)?;
            let vp = m.volume_polynomial()?;
            Ok((
                output(
                    json!({ "degree": "rank minus 1", "top-flat": "ground set" }),
                    flat_poly_value(&vp),
                ),
                0,
            ))
        }
        Command::UniversalTutte { gp, matroid } => {
            let p = gp_from(&gp, &matroid)?;
            let t = universal_tutte(&p);
            let mut result = Map::new();
            result.insert("universal-tutte".into(), exponent_poly_value(&t));
            result.insert("universal-norm".into(), exponent_poly_value(&universal_norm(&p)));
            if let Ok(spec) = t.specialize_matroid_tutte() {
                result.insert("matroid-specialization".into(), bipoly_value(&spec));
            }
            Ok((output(no_assumptions(), Value::Object(result)), 0))
        }
        Command::OrderPoly { poset, kind } => {
            let p = poset_from(&poset.poset)?;
            let strict = match kind.as_str() {
                "strict" => true,
                "weak" => false,
                other => return Err(Error::parse(format!("unknown kind `{other}`"))),
            };
            Ok((
                output(json!({ "kind": kind }), unipoly_value(&order_polynomial(&p, strict))),
                0,
            ))
        }
        Command::PosetTutte(arg) => {
            let p = poset_from(&arg.poset)?;
            Ok((output(no_assumptions(), bipoly_value(&poset_tutte(&p))), 0))
        }
        Command::Poincare { poset, ell } => {
            let p = poset_from(&poset.poset)?;
            let mut result = Map::new();
            result.insert("poincare".into(), unipoly_value(&poincare(&p)));
            if let Some(e) = ell {
                let order: Vec<gphopf::Label> = from_json(&e)?;
                result.insert("phi-ell".into(), unipoly_value(&phi_ell(&p, &order)?));
            }
            Ok((
                output(json!({ "exponent": "codimension" }), Value::Object(result)),
                0,
            ))
        }
        Command::FPoly { building_set, graph, method } => {
            let b: BuildingSet = match (&building_set, &graph) {
                (Some(s), None) => json::parse_building_set(&from_json(s)?)?,
                (None, Some(g)) => json::parse_graph(&from_json(g)?)?,
                _ => return Err(Error::parse("provide exactly one of --building-set or --graph")),
            };
            let f = match method.as_str() {
                "recurrence" => b.f_polynomial(),
                "direct" => b.f_polynomial_direct()?,
                other => return Err(Error::parse(format!("unknown method `{other}`"))),
            };
            Ok((output(json!({ "method": method }), unipoly_value(&f)), 0))
        }
        Command::CanonicalForm { input } => {
            let sum = sum_from(&input)?;
            let phi = canonical_form(&sum)?;
            let result = json!({
                "canonical-form": wosp_sum_value(&phi),
                "is-zero": phi.is_zero(),
            });
            Ok((output(no_assumptions(), result), 0))
        }
        Command::IndicatorEqual { left, right } => {
            let a = sum_from(&left)?;
            let b = sum_from(&right)?;
            let equal = indicator_equal(&a, &b)?;
            Ok((
                output(no_assumptions(), json!({ "equal": equal })),
                if equal { 0 } else { 1 },
            ))
        }
        Command::CheckSubdivision { builtin, subdivision, invariant, samples } => {
            let relation: BuiltinRelation = match (&builtin, &subdivision) {
                (Some(name), None) => builtin_by_name(name)?,
                (None, Some(s)) => {
                    let j: json::SubdivisionJson = from_json(s)?;
                    BuiltinRelation::Subdivision(subdivision_from_json(&j)?)
                }
                _ => {
                    return Err(Error::parse(
                        "provide exactly one of --builtin or --subdivision",
                    ))
                }
            };
            check_relation(&relation, &invariant, samples)
        }
        Command::Antipode { gp, matroid } => {
            let p = gp_from(&gp, &matroid)?;
            let s = antipode_face_sum(&p)?;
            Ok((output(no_assumptions(), gp_sum_value(&s)), 0))
        }
        Command::CharacterInvariant { character, matroid, poset, kind } => {
            let zeta = Character::parse(&character)?;
            let x = match (&matroid, &poset) {
                (Some(m), None) => HopfObject::Matroid(matroid_from(m)?),
                (None, Some(p)) => HopfObject::Poset(poset_from(p)?),
                _ => return Err(Error::parse("provide exactly one of --matroid or --poset")),
            };
            let result = match kind.as_str() {
                "polynomial" => unipoly_value(&polynomial_invariant(zeta, &x)?),
                "qsym" => qsym_value(&qsym_invariant(zeta, &x)?),
                "osp" => {
                    let inv = osp_invariant(zeta, &x)?;
                    let terms: Vec<Value> = inv
                        .iter()
                        .map(|(o, c)| json!({ "coeff": rat_value(c), "osp": osp_value(o) }))
                        .collect();
                    json!(terms)
                }
                other => return Err(Error::parse(format!("unknown kind `{other}`"))),
            };
            Ok((output(json!({ "character": character }), result), 0))
        }
        Command::List => {
            let builtins: Vec<String> = builtin_relations()
                .iter()
                .map(|r| r.name().to_string())
                .collect();
            Ok((
                json!({
                    "builtins": builtins,
                    "invariants": INVARIANT_NAMES,
                }),
                0,
            ))
        }
    }
}

fn subdivision_from_json(j: &json::SubdivisionJson) -> Result<SubdivisionComplex, Error> {
    let cell_of = |o: &json::ObjectJson| -> Result<Cell, Error> {
        match (&o.gp, &o.matroid, &o.cone) {
            (Some(g), None, None) => Ok(Cell::Gp(json::parse_gp(g)?)),
            (None, Some(m), None) => Ok(Cell::Matroid(json::parse_matroid(m)?)),
            _ => Err(Error::parse("subdivision cells must be polytopes or matroids")),
        }
    };
    let parent = cell_of(&j.parent)?;
    let cells = j.cells.iter().map(cell_of).collect::<Result<Vec<_>, _>>()?;
    SubdivisionComplex::new("input", parent, cells)
}

fn check_relation(
    relation: &BuiltinRelation,
    invariant: &str,
    samples: usize,
) -> Result<(Value, u8), Error> {
    let mut reports: Vec<Value> = Vec::new();
    let mut all_pass = true;
    match relation {
        BuiltinRelation::Subdivision(k) => {
            let names: Vec<&str> = match invariant {
                "all" => INVARIANT_NAMES.to_vec(),
                "strong" => Vec::new(),
                one => vec![one],
            };
            for name in names {
                match weak_check(name, k) {
                    Ok(r) => {
                        all_pass &= r.pass;
                        reports.push(json!({
                            "invariant": r.invariant,
                            "pass": r.pass,
                            "residual": r.residual,
                        }));
                    }
                    Err(e) if invariant == "all" => {
                        // not applicable to this subdivision's cells
                        reports.push(json!({ "invariant": name, "skipped": e.to_string() }));
                    }
                    Err(e) => return Err(e),
                }
            }
            if invariant == "strong" || invariant == "all" {
                let pass = k.strong_check()?;
                all_pass &= pass;
                reports.push(json!({ "invariant": "strong", "pass": pass }));
            }
            if samples > 0 {
                let pass = k.pointwise_check(samples, 2024)?;
                all_pass &= pass;
                reports.push(json!({ "invariant": "pointwise", "pass": pass, "samples": samples }));
            }
        }
        BuiltinRelation::Cones(c) => {
            if invariant == "strong" || invariant == "all" {
                let pass = c.strong_check()?;
                all_pass &= pass;
                reports.push(json!({ "invariant": "strong", "pass": pass }));
            }
            if invariant == "all" {
                let residuals = if c.poset_terms.is_empty() {
                    preposet_relation_residuals(c)?
                } else {
                    poset_relation_residuals(c)?
                };
                for r in residuals {
                    all_pass &= r.pass;
                    reports.push(json!({
                        "invariant": r.invariant,
                        "pass": r.pass,
                        "residual": r.residual,
                    }));
                }
            }
            if samples > 0 {
                let ground = c
                    .terms
                    .iter()
                    .next()
                    .map(|(e, _)| e.ground())
                    .unwrap_or_default();
                let total = match c.terms.iter().next() {
                    Some((GpElement::Cone(cone), _)) => cone.weighted_preposet().total_weight(),
                    _ => gphopf::Rat::zero(),
                };
                let mut pass = true;
                for x in gphopf::sampling::hyperplane_samples(&ground, &total, samples, 2024) {
                    if !indicator_value(&c.terms, &x)?.is_zero() {
                        pass = false;
                        break;
                    }
                }
                all_pass &= pass;
                reports.push(json!({ "invariant": "pointwise", "pass": pass, "samples": samples }));
            }
        }
    }
    let result = json!({
        "relation": relation.name(),
        "checks": reports,
        "pass": all_pass,
    });
    Ok((output(no_assumptions(), result), if all_pass { 0 } else { 1 }))
}
