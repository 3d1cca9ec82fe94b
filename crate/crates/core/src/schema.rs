//! JSON input and output. Integers are written as decimal strings; on input
//! both strings and JSON numbers are accepted.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cohom::CohGroup;
use crate::error::{Error, Result};
use crate::gmod::{build_group, validate_lattice, ActionInput, FiniteGroup, GammaLattice, GroupSpec, LatticeMap};
use crate::hyper::{HyperCochain, LesReport};
use crate::picard::{CrossCheck, FundamentalGroup, PicardResult, ResolutionData, ResolutionReport};
use crate::rootdata::{
    apply_twist, build_gl, build_split, build_torus, product, CartanType, Isogeny, ReductiveGroupSpec,
};
use crate::{AbGroup, Int, Matrix};

/// Version tag carried by every output document.
pub const SCHEMA_VERSION: &str = "galcoh/1";

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Num(i64),
    Str(String),
}

impl JsonInt {
    fn to_int(&self, field: &str) -> Result<Int> {
        match self {
            JsonInt::Num(n) => Ok(Int::from(*n)),
            JsonInt::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::schema(field, format!("{s:?} is not an integer"))),
        }
    }
}

pub type JsonMatrix = Vec<Vec<JsonInt>>;

fn matrix(rows: &JsonMatrix, cols: usize, field: &str) -> Result<Matrix> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::schema(
                field,
                format!("row {i} has {} entries, expected {cols}", row.len()),
            ));
        }
        out.push(row.iter().map(|x| x.to_int(field)).collect::<Result<Vec<_>>>()?);
    }
    Matrix::from_rows(&out, cols)
}

fn square(rows: &JsonMatrix, n: usize, field: &str) -> Result<Matrix> {
    if rows.len() != n {
        return Err(Error::schema(field, format!("{} rows, expected {n}", rows.len())));
    }
    matrix(rows, n, field)
}

/// A Γ-lattice. With no action given the action is trivial.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeJson {
    pub rank: usize,
    #[serde(default)]
    pub generator_action: Option<Vec<JsonMatrix>>,
    #[serde(default)]
    pub element_action: Option<Vec<JsonMatrix>>,
}

impl LatticeJson {
    pub fn build(&self, group: &Arc<FiniteGroup>, field: &str) -> Result<GammaLattice> {
        let read = |ms: &[JsonMatrix], what: &str| -> Result<Vec<Matrix>> {
            ms.iter()
                .enumerate()
                .map(|(k, m)| square(m, self.rank, &format!("{field}.{what}[{k}]")))
                .collect()
        };
        match (&self.generator_action, &self.element_action) {
            (Some(_), Some(_)) => Err(Error::schema(
                field,
                "give generator_action or element_action, not both",
            )),
            (Some(g), None) => {
                validate_lattice(group, self.rank, ActionInput::Generators(read(g, "generator_action")?))
            }
            (None, Some(e)) => validate_lattice(group, self.rank, ActionInput::Elements(read(e, "element_action")?)),
            (None, None) => Ok(GammaLattice::trivial(group, self.rank)),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum IsogenyJson {
    Named(String),
    Generators { generators: Vec<Vec<JsonInt>> },
}

impl IsogenyJson {
    fn build(&self) -> Result<Isogeny> {
        match self {
            IsogenyJson::Named(s) => match s.as_str() {
                "sc" | "simply_connected" => Ok(Isogeny::SimplyConnected),
                "adjoint" | "ad" => Ok(Isogeny::Adjoint),
                other => Err(Error::schema("isogeny", format!("unknown isogeny {other:?}"))),
            },
            IsogenyJson::Generators { generators } => {
                let gens = generators
                    .iter()
                    .map(|g| g.iter().map(|x| x.to_int("isogeny.generators")).collect())
                    .collect::<Result<Vec<_>>>()?;
                Ok(Isogeny::Intermediate(gens))
            }
        }
    }
}

impl Default for IsogenyJson {
    fn default() -> Self {
        IsogenyJson::Named("sc".into())
    }
}

/// Galois action on a Dynkin diagram: one permutation per generator, or a
/// named automorphism applied by every generator.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistJson {
    pub galois: GroupSpec,
    #[serde(default)]
    pub diagram_action: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub named: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpecJson {
    RootDatum {
        #[serde(rename = "type")]
        cartan_type: String,
        #[serde(default)]
        rank: Option<usize>,
        #[serde(default)]
        isogeny: IsogenyJson,
        #[serde(default)]
        central_torus_rank: usize,
        #[serde(default)]
        twist: Option<TwistJson>,
    },
    Gl {
        n: usize,
    },
    Torus {
        galois: GroupSpec,
        lattice: LatticeJson,
    },
    Raw {
        galois: GroupSpec,
        charlattice: LatticeJson,
        sc_charlattice: LatticeJson,
        restriction: JsonMatrix,
    },
    Product {
        factors: Vec<SpecJson>,
    },
}

impl SpecJson {
    pub fn build(&self, group_cap: usize) -> Result<ReductiveGroupSpec> {
        match self {
            SpecJson::RootDatum {
                cartan_type,
                rank,
                isogeny,
                central_torus_rank,
                twist,
            } => {
                let rank = match rank {
                    Some(r) => *r,
                    None => cartan_type
                        .get(1..)
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::schema("rank", format!("missing for type {cartan_type:?}")))?,
                };
                let ty = CartanType::new(cartan_type, rank)?;
                let split = build_split(ty, &isogeny.build()?, *central_torus_rank)?;
                let Some(tw) = twist else { return Ok(split) };
                let galois = Arc::new(build_group(&tw.galois, group_cap)?);
                let perms = match (&tw.diagram_action, &tw.named) {
                    (Some(p), None) => p.clone(),
                    (None, Some(name)) => vec![ty.named_twist(name)?; galois.generators().len()],
                    _ => return Err(Error::schema("twist", "give exactly one of diagram_action or named")),
                };
                if perms.len() != galois.generators().len() {
                    return Err(Error::schema(
                        "twist.diagram_action",
                        format!(
                            "{} permutations for {} generators",
                            perms.len(),
                            galois.generators().len()
                        ),
                    ));
                }
                apply_twist(&split, &galois, &perms)
            }
            SpecJson::Gl { n } => build_gl(*n),
            SpecJson::Torus { galois, lattice } => {
                let g = Arc::new(build_group(galois, group_cap)?);
                build_torus(&lattice.build(&g, "lattice")?)
            }
            SpecJson::Raw {
                galois,
                charlattice,
                sc_charlattice,
                restriction,
            } => {
                let g = Arc::new(build_group(galois, group_cap)?);
                let x = charlattice.build(&g, "charlattice")?;
                let p = sc_charlattice.build(&g, "sc_charlattice")?;
                if restriction.len() != p.rank() {
                    return Err(Error::schema(
                        "restriction",
                        format!("{} rows, expected sc rank {}", restriction.len(), p.rank()),
                    ));
                }
                let r = matrix(restriction, x.rank(), "restriction")?;
                ReductiveGroupSpec::from_raw(x, p, r)
            }
            SpecJson::Product { factors } => {
                let specs = factors.iter().map(|f| f.build(group_cap)).collect::<Result<Vec<_>>>()?;
                product(&specs)
            }
        }
    }
}

/// Input for `H^n(Γ, M)`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyJson {
    pub galois: GroupSpec,
    pub lattice: LatticeJson,
}

impl CohomologyJson {
    pub fn build(&self, group_cap: usize) -> Result<GammaLattice> {
        let g = Arc::new(build_group(&self.galois, group_cap)?);
        self.lattice.build(&g, "lattice")
    }
}

/// An equivariant map between two lattices over one group; used for
/// two-term complexes `[A -> B]` and for resolutions `P* -> S*`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub galois: GroupSpec,
    #[serde(rename = "A")]
    pub a: LatticeJson,
    #[serde(rename = "B")]
    pub b: LatticeJson,
    pub map: JsonMatrix,
}

fn lattice_map(
    galois: &GroupSpec,
    src: &LatticeJson,
    dst: &LatticeJson,
    map: &JsonMatrix,
    names: (&str, &str),
    group_cap: usize,
) -> Result<LatticeMap> {
    let g = Arc::new(build_group(galois, group_cap)?);
    let a = src.build(&g, names.0)?;
    let b = dst.build(&g, names.1)?;
    if map.len() != b.rank() {
        return Err(Error::schema(
            "map",
            format!("{} rows, expected {}", map.len(), b.rank()),
        ));
    }
    let m = matrix(map, a.rank(), "map")?;
    LatticeMap::new(a, b, m)
}

impl ComplexJson {
    pub fn build(&self, group_cap: usize) -> Result<LatticeMap> {
        lattice_map(&self.galois, &self.a, &self.b, &self.map, ("A", "B"), group_cap)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionJson {
    pub galois: GroupSpec,
    #[serde(rename = "P_star")]
    pub p_star: LatticeJson,
    #[serde(rename = "S_star")]
    pub s_star: LatticeJson,
    pub map: JsonMatrix,
}

impl ResolutionJson {
    pub fn build(&self, group_cap: usize) -> Result<ResolutionData> {
        ResolutionData::new(lattice_map(
            &self.galois,
            &self.p_star,
            &self.s_star,
            &self.map,
            ("P_star", "S_star"),
            group_cap,
        )?)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossCheckJson {
    pub spec: SpecJson,
    pub resolution: ResolutionJson,
}

/// Parses a JSON document, mapping syntax and shape errors to [`Error::Schema`].
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::schema("input", e.to_string()))
}

pub fn int_json(x: &Int) -> Value {
    Value::String(x.to_string())
}

pub fn vec_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vec_json(r)).collect())
}

pub fn group_json(g: &AbGroup) -> Value {
    serde_json::to_value(g).expect("abelian groups serialize")
}

fn hyper_cochain_json(c: &HyperCochain) -> Value {
    json!({ "a": vec_json(&c.a), "b": vec_json(&c.b) })
}

#[derive(Serialize)]
struct Check<'a> {
    name: &'a str,
    pass: bool,
}

fn checks(items: &[(&str, bool)]) -> Value {
    serde_json::to_value(
        items
            .iter()
            .map(|&(name, pass)| Check { name, pass })
            .collect::<Vec<_>>(),
    )
    .expect("checks serialize")
}

pub fn envelope(command: &str, mut body: Value) -> Value {
    let mut out = json!({ "schema": SCHEMA_VERSION, "command": command });
    if let (Some(o), Some(b)) = (out.as_object_mut(), body.as_object_mut()) {
        o.append(b);
    }
    out
}

pub fn pi1_json(pi1: &FundamentalGroup) -> Value {
    json!({
        "group": group_json(&pi1.group),
        "action": pi1.action.iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

pub fn picard_json(r: &PicardResult, pi1: &FundamentalGroup) -> Value {
    envelope(
        "pic",
        json!({
            "pic": group_json(&r.pic),
            "dual": group_json(&r.dual),
            "pi1": pi1_json(pi1),
            "witness": r.witness.iter().map(hyper_cochain_json).collect::<Vec<_>>(),
            "pairing": { "orders": vec_json(&r.pairing.orders), "values": matrix_json(&r.pairing.values) },
            "checks": checks(&[("finite", r.pic.is_finite()), ("dual_invariant_factors", r.dual == r.pic)]),
        }),
    )
}

pub fn cohomology_json(command: &str, h: &CohGroup) -> Value {
    envelope(
        command,
        json!({
            "degree": h.degree,
            "group": group_json(h.group()),
            "representatives": h.representatives().iter().map(|r| vec_json(r)).collect::<Vec<_>>(),
        }),
    )
}

pub fn les_report_json(r: &LesReport) -> Value {
    envelope(
        "verify-les",
        json!({ "exact": r.pass(), "entries": serde_json::to_value(&r.entries).expect("entries serialize") }),
    )
}

pub fn resolution_report_json(r: &ResolutionReport) -> Value {
    json!({
        "hyper_h1": group_json(&r.hyper_h1),
        "h1_P_star": group_json(&r.h1_p_star),
        "fixed_point_cokernel": group_json(&r.fixed_point_cokernel),
    })
}

pub fn cross_check_json(c: &CrossCheck) -> Value {
    let r = &c.from_resolution;
    envelope(
        "cross-check",
        json!({
            "spec_pic": group_json(&c.from_spec),
            "resolution": resolution_report_json(r),
            "agree": c.agree(),
            "checks": checks(&[
                ("h1_P_star_vanishes", r.h1_p_star_vanishes()),
                ("fixed_point_cokernel_matches", r.cokernel_matches()),
                ("pipelines_agree", c.agree()),
            ]),
        }),
    )
}
