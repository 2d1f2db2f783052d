//! Instance files: UTF-8 JSON with `schema_version` "1".
//!
//! Scalars are strings `"a"` or `"a/b"`. Matrices are `{"rows", "cols", "entries"}` with
//! row-major entries. A module's `relations` matrix has one row per generator and one
//! column per relation.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::adams::{AObject, BObject, Context};
use crate::complex::{AComplex, BComplex, TwistedComplex};
use crate::error::{Error, Result};
use crate::homalg::{Ladder, ShortExact};
use crate::linalg::{FPModule, Matrix};
use crate::qfun::DiagramData;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize, Deserialize)]
struct FileDto {
    schema_version: String,
    context: ContextDto,
    kind: String,
    payload: Value,
}

#[derive(Serialize, Deserialize)]
struct ContextDto {
    p: u64,
    g: i64,
}

#[derive(Serialize, Deserialize)]
struct ModuleDto {
    ngens: usize,
    relations: Matrix,
}

#[derive(Serialize, Deserialize)]
struct BObjectDto {
    module: ModuleDto,
    psi: Matrix,
    weights: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct AObjectDto {
    components: Vec<BObjectDto>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "flavor")]
enum ComplexDto {
    #[serde(rename = "C2p2-B")]
    B { levels: Vec<BObjectDto>, diffs: Vec<Matrix>, alpha: Vec<Matrix> },
    #[serde(rename = "C1-A")]
    A { c0: AObjectDto, d: Vec<Matrix>, alpha: Vec<Matrix> },
}

#[derive(Serialize, Deserialize)]
struct SesDto {
    sub: BObjectDto,
    mid: BObjectDto,
    quot: BObjectDto,
    iota: Matrix,
    pi: Matrix,
}

#[derive(Serialize, Deserialize)]
struct DiagramDto {
    g: Vec<BObjectDto>,
    b: Vec<BObjectDto>,
    pi: Vec<Matrix>,
    ses: Vec<SesDto>,
}

#[derive(Serialize, Deserialize)]
struct LadderDto {
    top: SesDto,
    bottom: SesDto,
    f_b: Matrix,
    f_g: Matrix,
}

/// The payload of an instance file.
#[derive(Clone, Debug)]
pub enum Instance {
    BObject(BObject),
    AObject(AObject),
    Complex(TwistedComplex),
    Diagram(DiagramData),
    Ladder(Ladder),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::BObject(_) => "bobject",
            Instance::AObject(_) => "aobject",
            Instance::Complex(_) => "complex",
            Instance::Diagram(_) => "diagram",
            Instance::Ladder(_) => "ladder",
        }
    }
}

fn bobject_dto(b: &BObject) -> BObjectDto {
    BObjectDto {
        module: ModuleDto { ngens: b.ngens(), relations: b.module.relations().clone() },
        psi: b.psi.clone(),
        weights: b.weights.iter().copied().collect(),
    }
}

fn aobject_dto(a: &AObject) -> AObjectDto {
    AObjectDto { components: a.components.iter().map(bobject_dto).collect() }
}

fn ses_dto(s: &ShortExact) -> SesDto {
    SesDto {
        sub: bobject_dto(&s.sub),
        mid: bobject_dto(&s.mid),
        quot: bobject_dto(&s.quot),
        iota: s.iota.clone(),
        pi: s.pi.clone(),
    }
}

fn payload_value(inst: &Instance) -> Value {
    let v = match inst {
        Instance::BObject(b) => serde_json::to_value(bobject_dto(b)),
        Instance::AObject(a) => serde_json::to_value(aobject_dto(a)),
        Instance::Complex(TwistedComplex::B(c)) => serde_json::to_value(ComplexDto::B {
            levels: c.levels.iter().map(bobject_dto).collect(),
            diffs: c.diffs.clone(),
            alpha: c.alpha.clone(),
        }),
        Instance::Complex(TwistedComplex::A(c)) => serde_json::to_value(ComplexDto::A {
            c0: aobject_dto(&c.c0),
            d: c.d.clone(),
            alpha: c.alpha.clone(),
        }),
        Instance::Diagram(d) => serde_json::to_value(DiagramDto {
            g: d.g.iter().map(bobject_dto).collect(),
            b: d.b.iter().map(bobject_dto).collect(),
            pi: d.pi.clone(),
            ses: d.ses.iter().map(ses_dto).collect(),
        }),
        Instance::Ladder(l) => serde_json::to_value(LadderDto {
            top: ses_dto(&l.top),
            bottom: ses_dto(&l.bottom),
            f_b: l.f_b.clone(),
            f_g: l.f_g.clone(),
        }),
    };
    v.expect("instance payloads serialize")
}

/// Pretty JSON with a trailing newline; identical values give identical bytes.
pub fn to_json(ctx: Context, inst: &Instance) -> String {
    let file = FileDto {
        schema_version: SCHEMA_VERSION.into(),
        context: ContextDto { p: ctx.p, g: ctx.g },
        kind: inst.kind().into(),
        payload: payload_value(inst),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("instance files serialize");
    s.push('\n');
    s
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn bobject(ctx: Context, d: BObjectDto) -> Result<BObject> {
    if d.module.relations.rows() != d.module.ngens {
        return Err(Error::Shape(format!(
            "relations have {} rows for {} generators",
            d.module.relations.rows(),
            d.module.ngens
        )));
    }
    let module = FPModule::new(ctx.p, d.module.ngens, d.module.relations)?;
    BObject::new(ctx, module, d.psi, d.weights.into_iter().collect())
}

fn bobjects(ctx: Context, v: Vec<BObjectDto>) -> Result<Vec<BObject>> {
    v.into_iter().map(|b| bobject(ctx, b)).collect()
}

fn aobject(ctx: Context, d: AObjectDto) -> Result<AObject> {
    AObject::new(ctx, bobjects(ctx, d.components)?)
}

fn ses(ctx: Context, d: SesDto) -> Result<ShortExact> {
    ShortExact::new(bobject(ctx, d.sub)?, bobject(ctx, d.mid)?, bobject(ctx, d.quot)?, d.iota, d.pi)
}

fn instance(ctx: Context, kind: &str, payload: Value) -> Result<Instance> {
    Ok(match kind {
        "bobject" => Instance::BObject(bobject(ctx, serde_json::from_value(payload).map_err(parse_err)?)?),
        "aobject" => Instance::AObject(aobject(ctx, serde_json::from_value(payload).map_err(parse_err)?)?),
        "complex" => match serde_json::from_value(payload).map_err(parse_err)? {
            ComplexDto::B { levels, diffs, alpha } => {
                Instance::Complex(TwistedComplex::B(BComplex::new(ctx, bobjects(ctx, levels)?, diffs, alpha)?))
            }
            ComplexDto::A { c0, d, alpha } => {
                Instance::Complex(TwistedComplex::A(AComplex::new(ctx, aobject(ctx, c0)?, d, alpha)?))
            }
        },
        "diagram" => {
            let d: DiagramDto = serde_json::from_value(payload).map_err(parse_err)?;
            let s = d.ses.into_iter().map(|x| ses(ctx, x)).collect::<Result<Vec<_>>>()?;
            Instance::Diagram(DiagramData::new(ctx, bobjects(ctx, d.g)?, bobjects(ctx, d.b)?, d.pi, s)?)
        }
        "ladder" => {
            let d: LadderDto = serde_json::from_value(payload).map_err(parse_err)?;
            Instance::Ladder(Ladder { top: ses(ctx, d.top)?, bottom: ses(ctx, d.bottom)?, f_b: d.f_b, f_g: d.f_g })
        }
        other => return Err(Error::Parse(format!("unknown instance kind {other:?}"))),
    })
}

/// Parses and validates an instance file. Malformed JSON, a wrong schema version or an
/// unknown kind is a parse error; invalid mathematical content is reported by the
/// constructors.
pub fn parse(text: &str) -> Result<(Context, Instance)> {
    let f: FileDto = serde_json::from_str(text).map_err(parse_err)?;
    if f.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse(format!("unsupported schema_version {:?}", f.schema_version)));
    }
    let ctx = Context::new(f.context.p, f.context.g)?;
    let inst = instance(ctx, &f.kind, f.payload)?;
    Ok((ctx, inst))
}
