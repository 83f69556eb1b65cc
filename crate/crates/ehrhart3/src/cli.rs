//! Command front end: JSON documents, example-family generators, breakdown
//! tables, and verification runs.
//!
//! The input document is `{"vertices": [[x, y, z], ...]}`. Coordinates may be
//! JSON integers or decimal strings; strings are required past 2⁵³ so that
//! other tools' float-based JSON parsers cannot silently corrupt them, and
//! the output side applies the same rule. Rationals always serialize as
//! `{"num": "...", "den": "..."}` in lowest terms with positive denominator.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::ehrhart::{ehrhart_polynomial, facet_correction, EhrhartPolynomial};
use crate::intlinalg::{vec3, Integer, Rational, Vec3i};
use crate::oracle::{self, VerificationReport};
use crate::polytope::{build_with, edge_rel_volume, facet_rel_volume, Polytope};
use crate::{dedekind, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 4;
pub const EXIT_ORACLE_INFEASIBLE: i32 = 5;

/// What a command wants written and how to exit.
#[derive(Debug)]
pub struct CmdOutput {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput {
            stdout,
            warnings: Vec::new(),
            exit_code: EXIT_OK,
        }
    }
}

/// A command failure: message for stderr plus the exit code.
#[derive(Debug)]
pub struct CmdError {
    pub message: String,
    pub exit_code: i32,
}

impl CmdError {
    fn input(message: impl Into<String>) -> Self {
        CmdError {
            message: message.into(),
            exit_code: EXIT_INVALID_INPUT,
        }
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        let exit_code = match e {
            Error::OracleTooLarge { .. } => EXIT_ORACLE_INFEASIBLE,
            _ => EXIT_INVALID_INPUT,
        };
        CmdError {
            message: e.to_string(),
            exit_code,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

/// Generator families for the built-in example polytopes.
#[derive(Debug, Clone)]
pub enum GenFamily {
    Tetra { a: i64, b: i64, c: i64 },
    Prism { a: i64, b: i64, c: i64 },
    Cube { n: i64 },
}

/// Vertices of the axis tetrahedron `O, (a,0,0), (0,b,0), (0,0,c)`.
pub fn tetra_vertices(a: i64, b: i64, c: i64) -> Result<Vec<Vec3i>, Error> {
    if a < 1 || b < 1 || c < 1 {
        return Err(Error::InvalidParameter("tetra requires a, b, c >= 1"));
    }
    if num_integer::gcd(num_integer::gcd(a, b), c) != 1 {
        return Err(Error::GcdNotOne);
    }
    Ok(vec![
        vec3(0, 0, 0),
        vec3(a, 0, 0),
        vec3(0, b, 0),
        vec3(0, 0, c),
    ])
}

/// Vertices of the twisted triangular prism: base triangle of leg `a` at
/// height 0, copy translated by `(b, 0, c)`.
pub fn prism_vertices(a: i64, b: i64, c: i64) -> Result<Vec<Vec3i>, Error> {
    if a < 1 || c < 1 || b < 0 {
        return Err(Error::InvalidParameter("prism requires a, c >= 1 and b >= 0"));
    }
    Ok(vec![
        vec3(0, 0, 0),
        vec3(a, 0, 0),
        vec3(0, a, 0),
        vec3(b, 0, c),
        vec3(a + b, 0, c),
        vec3(b, a, c),
    ])
}

/// Corners of `{0, n}³`.
pub fn cube_vertices(n: i64) -> Result<Vec<Vec3i>, Error> {
    if n < 1 {
        return Err(Error::InvalidParameter("cube requires n >= 1"));
    }
    let mut out = Vec::with_capacity(8);
    for x in [0, n] {
        for y in [0, n] {
            for z in [0, n] {
                out.push(vec3(x, y, z));
            }
        }
    }
    Ok(out)
}

// --- JSON documents -------------------------------------------------------

/// An integer that serializes as a JSON number when it is small enough for
/// float-based parsers to round-trip, and as a decimal string otherwise.
#[derive(Debug, Clone)]
pub struct IntJson(pub Integer);

const SAFE_JSON_INT: i64 = 1 << 53;

impl Serialize for IntJson {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if v.abs() <= SAFE_JSON_INT => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CoefficientsJson {
    pub c0: RationalJson,
    pub c1: RationalJson,
    pub c2: RationalJson,
    pub c3: RationalJson,
}

impl CoefficientsJson {
    fn from(p: &EhrhartPolynomial) -> Self {
        CoefficientsJson {
            c0: RationalJson::from(&p.c0),
            c1: RationalJson::from(&p.c1),
            c2: RationalJson::from(&p.c2),
            c3: RationalJson::from(&p.c3),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EdgeJson {
    pub endpoints: [[IntJson; 3]; 2],
    pub vol: IntJson,
    pub m: IntJson,
    pub s: RationalJson,
}

#[derive(Debug, Serialize)]
pub struct FacetJson {
    pub normal: [IntJson; 3],
    pub relative_volume: RationalJson,
    pub correction: RationalJson,
}

#[derive(Debug, Serialize)]
pub struct VerificationJson {
    #[serde(rename = "match")]
    pub is_match: bool,
    pub counts: Vec<[IntJson; 2]>,
    pub formula: CoefficientsJson,
    pub interpolated: CoefficientsJson,
    pub deltas: [RationalJson; 4],
}

#[derive(Debug, Serialize)]
pub struct OutputDocument {
    pub coefficients: CoefficientsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<FacetJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationJson>,
}

#[derive(Debug, Serialize)]
struct InputJson {
    vertices: Vec<[IntJson; 3]>,
}

fn triple(v: &Vec3i) -> [IntJson; 3] {
    [
        IntJson(v.x.clone()),
        IntJson(v.y.clone()),
        IntJson(v.z.clone()),
    ]
}

/// Parses the input document. Only exact integers are accepted: JSON numbers
/// without fraction or exponent parts, or decimal strings.
pub fn parse_input(json: &str) -> Result<Vec<Vec3i>, CmdError> {
    let doc: serde_json::Value =
        serde_json::from_str(json).map_err(|e| CmdError::input(format!("invalid JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| CmdError::input("input must be a JSON object"))?;
    let vertices = obj
        .get("vertices")
        .ok_or_else(|| CmdError::input("input object must have a \"vertices\" field"))?
        .as_array()
        .ok_or_else(|| CmdError::input("\"vertices\" must be an array"))?;
    let mut out = Vec::with_capacity(vertices.len());
    for (i, row) in vertices.iter().enumerate() {
        let coords = row
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| CmdError::input(format!("vertex {i} must be a triple")))?;
        let mut parsed = Vec::with_capacity(3);
        for c in coords {
            parsed.push(parse_coordinate(c).map_err(|msg| {
                CmdError::input(format!("vertex {i}: {msg}"))
            })?);
        }
        out.push(Vec3i {
            x: parsed[0].clone(),
            y: parsed[1].clone(),
            z: parsed[2].clone(),
        });
    }
    Ok(out)
}

fn parse_coordinate(v: &serde_json::Value) -> Result<Integer, String> {
    let text = match v {
        serde_json::Value::Number(n) => n.to_string(),
        serde_json::Value::String(s) => s.clone(),
        other => return Err(format!("coordinate must be an integer, got {other}")),
    };
    if text.contains(['.', 'e', 'E']) {
        return Err(format!("coordinate must be an exact integer, got {text}"));
    }
    Integer::from_str(&text).map_err(|_| format!("cannot parse integer from {text:?}"))
}

// --- commands --------------------------------------------------------------

pub struct ComputeOptions {
    pub breakdown: bool,
    pub format: Format,
    pub allow_interior: bool,
}

pub fn cmd_compute(input_json: &str, opts: &ComputeOptions) -> Result<CmdOutput, CmdError> {
    let points = parse_input(input_json)?;
    let (polytope, dropped) = build_with(&points, opts.allow_interior)?;
    let poly = ehrhart_polynomial(&polytope)?;
    let doc = OutputDocument {
        coefficients: CoefficientsJson::from(&poly),
        edges: opts
            .breakdown
            .then(|| edge_breakdown(&polytope))
            .transpose()?,
        facets: opts
            .breakdown
            .then(|| facet_breakdown(&polytope))
            .transpose()?,
        verification: None,
    };
    let mut out = CmdOutput::ok(render(&doc, opts.format));
    for p in dropped {
        out.warnings.push(format!("dropped non-vertex input point {p}"));
    }
    Ok(out)
}

pub struct VerifyOptions {
    pub lmax: u32,
    pub cell_cap: u64,
    /// Test hook: perturb the computed c1 before comparison.
    pub inject_c1_delta: Option<Rational>,
}

pub fn cmd_verify(input_json: &str, opts: &VerifyOptions) -> Result<CmdOutput, CmdError> {
    let points = parse_input(input_json)?;
    let (polytope, _) = build_with(&points, false)?;
    let mut report = oracle::verify_with(&polytope, opts.cell_cap, opts.lmax)?;
    if let Some(delta) = &opts.inject_c1_delta {
        report.formula.c1 += delta;
        report.deltas[1] += delta;
        report.is_match = report.is_match && delta.is_zero();
    }
    let doc = OutputDocument {
        coefficients: CoefficientsJson::from(&report.formula),
        edges: None,
        facets: None,
        verification: Some(verification_json(&report)),
    };
    let mut out = CmdOutput::ok(render(&doc, Format::Json));
    if !report.is_match {
        out.exit_code = EXIT_MISMATCH;
    }
    Ok(out)
}

pub fn cmd_gen(family: &GenFamily, fuzz_seed: u64) -> Result<CmdOutput, CmdError> {
    let points = match *family {
        GenFamily::Tetra { a, b, c } => tetra_vertices(a, b, c)?,
        GenFamily::Prism { a, b, c } => prism_vertices(a, b, c)?,
        GenFamily::Cube { n } => cube_vertices(n)?,
    };
    let points = oracle::unimodular_fuzz(&points, fuzz_seed);
    let doc = InputJson {
        vertices: points.iter().map(triple).collect(),
    };
    Ok(CmdOutput::ok(to_json(&doc)))
}

fn edge_breakdown(p: &Polytope) -> Result<Vec<EdgeJson>, Error> {
    p.edges
        .iter()
        .map(|e| {
            let arith = dedekind::edge_dedekind(
                &p.facets[e.facets.0].normal,
                &p.facets[e.facets.1].normal,
            )?;
            Ok(EdgeJson {
                endpoints: [
                    triple(&p.vertices[e.endpoints.0]),
                    triple(&p.vertices[e.endpoints.1]),
                ],
                vol: IntJson(edge_rel_volume(p, e)),
                m: IntJson(arith.lattice_index),
                s: RationalJson::from(&arith.dedekind_sum),
            })
        })
        .collect()
}

fn facet_breakdown(p: &Polytope) -> Result<Vec<FacetJson>, Error> {
    (0..p.facets.len())
        .map(|fid| {
            let f = &p.facets[fid];
            Ok(FacetJson {
                normal: triple(&f.normal),
                relative_volume: RationalJson::from(&facet_rel_volume(p, f)),
                correction: RationalJson::from(&facet_correction(p, fid)?),
            })
        })
        .collect()
}

fn verification_json(r: &VerificationReport) -> VerificationJson {
    VerificationJson {
        is_match: r.is_match,
        counts: r
            .counts
            .iter()
            .map(|(l, n)| [IntJson(l.clone()), IntJson(n.clone())])
            .collect(),
        formula: CoefficientsJson::from(&r.formula),
        interpolated: CoefficientsJson::from(&r.interpolated),
        deltas: [
            RationalJson::from(&r.deltas[0]),
            RationalJson::from(&r.deltas[1]),
            RationalJson::from(&r.deltas[2]),
            RationalJson::from(&r.deltas[3]),
        ],
    }
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

fn render(doc: &OutputDocument, format: Format) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Table => render_table(doc),
    }
}

fn show_rational(r: &RationalJson) -> String {
    if r.den == "1" {
        r.num.clone()
    } else {
        format!("{}/{}", r.num, r.den)
    }
}

fn show_triple(t: &[IntJson; 3]) -> String {
    format!("({}, {}, {})", t[0].0, t[1].0, t[2].0)
}

fn render_table(doc: &OutputDocument) -> String {
    let mut out = String::new();
    let c = &doc.coefficients;
    for (name, r) in [("c0", &c.c0), ("c1", &c.c1), ("c2", &c.c2), ("c3", &c.c3)] {
        let _ = writeln!(out, "{name} = {}", show_rational(r));
    }
    if let Some(edges) = &doc.edges {
        let mut rows: Vec<[String; 4]> = vec![[
            "edge".into(),
            "Vol".into(),
            "m".into(),
            "s".into(),
        ]];
        for e in edges {
            rows.push([
                format!("{}-{}", show_triple(&e.endpoints[0]), show_triple(&e.endpoints[1])),
                e.vol.0.to_string(),
                e.m.0.to_string(),
                show_rational(&e.s),
            ]);
        }
        let _ = writeln!(out, "\nedges:");
        write_aligned(&mut out, &rows);
    }
    if let Some(facets) = &doc.facets {
        let mut rows: Vec<[String; 4]> = vec![[
            "facet normal".into(),
            "rel volume".into(),
            "C".into(),
            String::new(),
        ]];
        for f in facets {
            rows.push([
                show_triple(&f.normal),
                show_rational(&f.relative_volume),
                show_rational(&f.correction),
                String::new(),
            ]);
        }
        let _ = writeln!(out, "\nfacets:");
        write_aligned(&mut out, &rows);
    }
    out
}

fn write_aligned(out: &mut String, rows: &[[String; 4]]) {
    let mut widths = [0usize; 4];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    for row in rows {
        let mut line = String::from(" ");
        for (w, cell) in widths.iter().zip(row) {
            if *w == 0 {
                continue;
            }
            let _ = write!(line, " {cell:<width$}", width = *w);
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
}

/// Parses `n` or `n/d` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, CmdError> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = Integer::from_str(num.trim())
        .map_err(|_| CmdError::input(format!("cannot parse rational {s:?}")))?;
    let den = Integer::from_str(den.trim())
        .map_err(|_| CmdError::input(format!("cannot parse rational {s:?}")))?;
    if den.is_zero() {
        return Err(CmdError::input("rational denominator cannot be zero"));
    }
    Ok(Rational::new(num, den))
}
