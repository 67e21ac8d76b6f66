//! Text formats: the `.gpd` groupoid and `.grep` representation files,
//! plus JSON and DOT exporters.
//!
//! A `.gpd` file is either a single `BUILD` line or an explicit listing with
//! sections `OBJECTS`, `ARROWS` (`name src tgt`), `UNITS` (`object arrow`),
//! `INVERSES` (`arrow arrow`) and `MUL` (`g h k` meaning `g·h = k`). A
//! `.grep` file has a `BUNDLE` section (`object dim`) and an `ARROWMAT`
//! section (`arrow` followed by the row-major rational matrix entries).
//! `#` starts a comment; names are symbolic in files and integer ids
//! internally, and a name table travels with every export.
//!
//! Rationals are serialised as `p/q` strings, never floats, so exactness
//! survives the wire. JSON round-trips losslessly: `parse(export(x)) = x`.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationReport};
use crate::groupoid::{ActionTable, ArrId, FiniteGroupoid, GroupTable, ObjId};
use crate::linear::{Matrix, Scalar, VectorBundle};
use crate::transfer::{validate_rep, GroupoidRep};

/// A groupoid together with its symbolic object and arrow names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedGroupoid {
    pub groupoid: FiniteGroupoid,
    pub obj_names: Vec<String>,
    pub arr_names: Vec<String>,
}

impl NamedGroupoid {
    /// Wraps a groupoid with generated names `o0, o1, …` / `g0, g1, …`.
    pub fn with_default_names(groupoid: FiniteGroupoid) -> Self {
        let obj_names = groupoid.objects().map(|m| m.to_string()).collect();
        let arr_names = groupoid.arrows().map(|g| g.to_string()).collect();
        Self {
            groupoid,
            obj_names,
            arr_names,
        }
    }

    pub fn obj_by_name(&self, name: &str) -> Option<ObjId> {
        self.obj_names.iter().position(|n| n == name).map(ObjId)
    }

    pub fn arr_by_name(&self, name: &str) -> Option<ArrId> {
        self.arr_names.iter().position(|n| n == name).map(ArrId)
    }
}

struct Tok<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

/// Splits a line into whitespace-separated tokens with exact columns;
/// everything from `#` on is a comment.
fn tokenize(line: &str, line_no: usize) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut col = 0;
    let mut start = None;
    for (i, ch) in line.char_indices() {
        col += 1;
        if ch == '#' {
            if let Some(s) = start {
                out.push(Tok {
                    text: &line[s..i],
                    line: line_no,
                    col: col - (i - s),
                });
            }
            return out;
        }
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Tok {
                    text: &line[s..i],
                    line: line_no,
                    col: col - (i - s),
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Tok {
            text: &line[s..],
            line: line_no,
            col: line[..s].chars().count() + 1,
        });
    }
    out
}

fn syntax(line: usize, col: usize, expected: &str) -> Error {
    Error::Syntax {
        line,
        col,
        expected: expected.to_string(),
    }
}

fn semantic(line: usize, message: String) -> Error {
    Error::Semantic { line, message }
}

fn parse_usize(tok: &Tok<'_>) -> Result<usize> {
    tok.text
        .parse::<usize>()
        .map_err(|_| syntax(tok.line, tok.col, "a non-negative integer"))
}

/// Parses `p` or `p/q` with nonzero `q`.
fn parse_rational(tok: &Tok<'_>) -> Result<Scalar> {
    let parse_int = |s: &str| -> Option<num_bigint::BigInt> { s.parse().ok() };
    let value = match tok.text.split_once('/') {
        None => parse_int(tok.text).map(Scalar::from),
        Some((p, q)) => {
            let (p, q) = (parse_int(p), parse_int(q));
            match (p, q) {
                (Some(p), Some(q)) if !q.is_zero() => Some(Scalar::new(p, q)),
                _ => None,
            }
        }
    };
    value.ok_or_else(|| syntax(tok.line, tok.col, "a rational p/q with q ≠ 0"))
}

/// Parses a sequence of `/`-separated table rows from tokens.
fn parse_table_rows(toks: &[Tok<'_>]) -> Result<Vec<Vec<usize>>> {
    let mut rows = vec![Vec::new()];
    for t in toks {
        if t.text == "/" {
            rows.push(Vec::new());
        } else {
            rows.last_mut().unwrap().push(parse_usize(t)?);
        }
    }
    Ok(rows)
}

fn parse_build(toks: &[Tok<'_>], line: usize) -> Result<NamedGroupoid> {
    let kind = toks
        .get(1)
        .ok_or_else(|| syntax(line, 1, "a builder kind: pair | group | group_bundle | action"))?;
    let check_table = |rows: Vec<Vec<usize>>, at: &Tok<'_>| -> Result<GroupTable> {
        GroupTable::new(rows).map_err(|e| semantic(at.line, e.to_string()))
    };
    match kind.text {
        "pair" => {
            let n = parse_usize(toks.get(2).ok_or_else(|| syntax(line, kind.col, "pair <n>"))?)?;
            let g = FiniteGroupoid::pair(n);
            let obj_names = (0..n).map(obj_name).collect::<Vec<_>>();
            let arr_names = g
                .arrows()
                .map(|a| format!("{}{}", obj_names[g.tgt(a).0], obj_names[g.src(a).0]))
                .collect();
            Ok(NamedGroupoid {
                groupoid: g,
                obj_names,
                arr_names,
            })
        }
        "group" => {
            let table = check_table(parse_table_rows(&toks[2..])?, kind)?;
            let g = FiniteGroupoid::group(&table)?;
            Ok(NamedGroupoid {
                arr_names: (0..g.n_arrows()).map(|k| format!("g{k}")).collect(),
                obj_names: vec!["pt".to_string()],
                groupoid: g,
            })
        }
        "group_bundle" => {
            let split = toks
                .iter()
                .position(|t| t.text == ";")
                .ok_or_else(|| syntax(line, kind.col, "group_bundle <table> ; <n>"))?;
            let table = check_table(parse_table_rows(&toks[2..split])?, kind)?;
            let n = parse_usize(
                toks.get(split + 1)
                    .ok_or_else(|| syntax(line, kind.col, "a point count after ';'"))?,
            )?;
            let g = FiniteGroupoid::group_bundle(&table, n)?;
            let obj_names: Vec<String> = (0..n).map(obj_name).collect();
            let arr_names = g
                .arrows()
                .map(|a| format!("g{}@{}", a.0 % table.order(), obj_names[g.src(a).0]))
                .collect();
            Ok(NamedGroupoid {
                groupoid: g,
                obj_names,
                arr_names,
            })
        }
        "action" => {
            let split = toks
                .iter()
                .position(|t| t.text == ";")
                .ok_or_else(|| syntax(line, kind.col, "action <cayley table> ; <action table>"))?;
            let table = check_table(parse_table_rows(&toks[2..split])?, kind)?;
            let action = ActionTable::new(parse_table_rows(&toks[split + 1..])?);
            action.check(&table).map_err(|e| semantic(line, e.to_string()))?;
            let g = FiniteGroupoid::action(&table, &action)?;
            let n = action.n_points();
            let obj_names: Vec<String> = (0..n).map(obj_name).collect();
            let arr_names = g
                .arrows()
                .map(|a| format!("g{}@{}", a.0 / n, obj_names[a.0 % n]))
                .collect();
            Ok(NamedGroupoid {
                groupoid: g,
                obj_names,
                arr_names,
            })
        }
        other => Err(syntax(
            kind.line,
            kind.col,
            &format!("pair | group | group_bundle | action, found '{other}'"),
        )),
    }
}

/// Short object names: a…z for small bases, `o<i>` beyond.
fn obj_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("o{i}")
    }
}

/// Parses the `.gpd` groupoid format. The parsed groupoid must satisfy the
/// groupoid laws; violations come back as [`Error::InvalidGroupoid`].
pub fn parse_groupoid(text: &str) -> Result<NamedGroupoid> {
    #[derive(PartialEq, Clone, Copy)]
    enum Section {
        None,
        Objects,
        Arrows,
        Units,
        Inverses,
        Mul,
    }

    let mut obj_names: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String, usize)> = Vec::new();
    let mut units: Vec<(String, String, usize)> = Vec::new();
    let mut inverses: Vec<(String, String, usize)> = Vec::new();
    let mut muls: Vec<(String, String, String, usize)> = Vec::new();
    let mut section = Section::None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = tokenize(raw, line_no);
        if toks.is_empty() {
            continue;
        }
        match toks[0].text {
            "BUILD" => {
                if section != Section::None {
                    return Err(syntax(line_no, toks[0].col, "BUILD to be the only directive"));
                }
                return parse_build(&toks, line_no);
            }
            "OBJECTS" => {
                section = Section::Objects;
                for t in &toks[1..] {
                    obj_names.push(t.text.to_string());
                }
                continue;
            }
            "ARROWS" => {
                section = Section::Arrows;
                continue;
            }
            "UNITS" => {
                section = Section::Units;
                continue;
            }
            "INVERSES" => {
                section = Section::Inverses;
                continue;
            }
            "MUL" => {
                section = Section::Mul;
                continue;
            }
            _ => {}
        }
        match section {
            Section::None => {
                return Err(syntax(
                    line_no,
                    toks[0].col,
                    "a section keyword: BUILD, OBJECTS, ARROWS, UNITS, INVERSES or MUL",
                ))
            }
            Section::Objects => {
                for t in &toks {
                    obj_names.push(t.text.to_string());
                }
            }
            Section::Arrows => {
                if toks.len() != 3 {
                    return Err(syntax(line_no, toks[0].col, "an arrow line: name src tgt"));
                }
                arrows.push((
                    toks[0].text.to_string(),
                    toks[1].text.to_string(),
                    toks[2].text.to_string(),
                    line_no,
                ));
            }
            Section::Units => {
                if toks.len() != 2 {
                    return Err(syntax(line_no, toks[0].col, "a unit line: object arrow"));
                }
                units.push((toks[0].text.to_string(), toks[1].text.to_string(), line_no));
            }
            Section::Inverses => {
                if toks.len() != 2 {
                    return Err(syntax(line_no, toks[0].col, "an inverse line: arrow arrow"));
                }
                inverses.push((toks[0].text.to_string(), toks[1].text.to_string(), line_no));
            }
            Section::Mul => {
                if toks.len() != 3 {
                    return Err(syntax(line_no, toks[0].col, "a product line: g h k"));
                }
                muls.push((
                    toks[0].text.to_string(),
                    toks[1].text.to_string(),
                    toks[2].text.to_string(),
                    line_no,
                ));
            }
        }
    }

    build_explicit(obj_names, arrows, units, inverses, muls)
}

fn build_explicit(
    obj_names: Vec<String>,
    arrows: Vec<(String, String, String, usize)>,
    units: Vec<(String, String, usize)>,
    inverses: Vec<(String, String, usize)>,
    muls: Vec<(String, String, String, usize)>,
) -> Result<NamedGroupoid> {
    let mut obj_index: HashMap<&str, usize> = HashMap::new();
    for (i, name) in obj_names.iter().enumerate() {
        if obj_index.insert(name, i).is_some() {
            return Err(semantic(0, format!("duplicate object name '{name}'")));
        }
    }
    let mut arr_names = Vec::with_capacity(arrows.len());
    let mut arr_index: HashMap<String, usize> = HashMap::new();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for (name, s, t, line) in &arrows {
        if arr_index.insert(name.clone(), arr_names.len()).is_some() {
            return Err(semantic(*line, format!("duplicate arrow name '{name}'")));
        }
        let s = *obj_index
            .get(s.as_str())
            .ok_or_else(|| semantic(*line, format!("unknown object '{s}'")))?;
        let t = *obj_index
            .get(t.as_str())
            .ok_or_else(|| semantic(*line, format!("unknown object '{t}'")))?;
        arr_names.push(name.clone());
        src.push(ObjId(s));
        tgt.push(ObjId(t));
    }
    let n_arr = arr_names.len();
    let lookup_arr = |name: &str, line: usize| -> Result<usize> {
        arr_index
            .get(name)
            .copied()
            .ok_or_else(|| semantic(line, format!("unknown arrow '{name}'")))
    };

    let mut unit = vec![None; obj_names.len()];
    for (obj, arr, line) in &units {
        let m = *obj_index
            .get(obj.as_str())
            .ok_or_else(|| semantic(*line, format!("unknown object '{obj}'")))?;
        unit[m] = Some(ArrId(lookup_arr(arr, *line)?));
    }
    let unit: Vec<ArrId> = unit
        .into_iter()
        .enumerate()
        .map(|(m, u)| u.ok_or_else(|| semantic(0, format!("no unit given for object '{}'", obj_names[m]))))
        .collect::<Result<_>>()?;

    let mut inv = vec![None; n_arr];
    for (a, b, line) in &inverses {
        let i = lookup_arr(a, *line)?;
        inv[i] = Some(ArrId(lookup_arr(b, *line)?));
    }
    let inv: Vec<ArrId> = inv
        .into_iter()
        .enumerate()
        .map(|(g, i)| i.ok_or_else(|| semantic(0, format!("no inverse given for arrow '{}'", arr_names[g]))))
        .collect::<Result<_>>()?;

    let mut mul = vec![None; n_arr * n_arr];
    for (g, h, k, line) in &muls {
        let (gi, hi, ki) = (lookup_arr(g, *line)?, lookup_arr(h, *line)?, lookup_arr(k, *line)?);
        if src[gi] != tgt[hi] {
            return Err(semantic(
                *line,
                format!("product '{g} {h} {k}' declared for non-composable arrows"),
            ));
        }
        mul[gi * n_arr + hi] = Some(ArrId(ki));
    }
    for g in 0..n_arr {
        for h in 0..n_arr {
            if src[g] == tgt[h] && mul[g * n_arr + h].is_none() {
                return Err(semantic(
                    0,
                    format!(
                        "missing product for composable arrows '{}' and '{}'",
                        arr_names[g], arr_names[h]
                    ),
                ));
            }
        }
    }

    let groupoid = FiniteGroupoid::from_tables(obj_names.len(), src, tgt, unit, inv, mul)
        .map_err(|e| semantic(0, e.to_string()))?;
    let report = groupoid.validate();
    if !report.is_empty() {
        return Err(Error::InvalidGroupoid(report));
    }
    Ok(NamedGroupoid {
        groupoid,
        obj_names,
        arr_names,
    })
}

/// Parses the `.grep` representation format against a parsed groupoid.
/// Matrices for unit arrows default to the identity; the result must pass
/// [`validate_rep`].
pub fn parse_rep(text: &str, named: &NamedGroupoid) -> Result<GroupoidRep> {
    #[derive(PartialEq, Clone, Copy)]
    enum Section {
        None,
        Bundle,
        ArrowMat,
    }
    let gpd = &named.groupoid;
    let mut dims: Vec<Option<usize>> = vec![None; gpd.n_objects()];
    let mut mats: Vec<Option<(Vec<Scalar>, usize)>> = vec![None; gpd.n_arrows()];
    let mut section = Section::None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = tokenize(raw, line_no);
        if toks.is_empty() {
            continue;
        }
        match toks[0].text {
            "BUNDLE" => {
                section = Section::Bundle;
                continue;
            }
            "ARROWMAT" => {
                section = Section::ArrowMat;
                continue;
            }
            _ => {}
        }
        match section {
            Section::None => {
                return Err(syntax(line_no, toks[0].col, "a section keyword: BUNDLE or ARROWMAT"))
            }
            Section::Bundle => {
                if toks.len() != 2 {
                    return Err(syntax(line_no, toks[0].col, "a bundle line: object dim"));
                }
                let m = named
                    .obj_by_name(toks[0].text)
                    .ok_or_else(|| semantic(line_no, format!("unknown object '{}'", toks[0].text)))?;
                dims[m.0] = Some(parse_usize(&toks[1])?);
            }
            Section::ArrowMat => {
                let g = named
                    .arr_by_name(toks[0].text)
                    .ok_or_else(|| semantic(line_no, format!("unknown arrow '{}'", toks[0].text)))?;
                let entries = toks[1..]
                    .iter()
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()?;
                mats[g.0] = Some((entries, line_no));
            }
        }
    }

    let dims: Vec<usize> = dims
        .into_iter()
        .enumerate()
        .map(|(m, d)| d.ok_or_else(|| semantic(0, format!("no dimension for object '{}'", named.obj_names[m]))))
        .collect::<Result<_>>()?;
    let bundle = VectorBundle::new(dims);

    let mut arrows = Vec::with_capacity(gpd.n_arrows());
    for g in gpd.arrows() {
        let rows = bundle.dim(gpd.tgt(g).0);
        let cols = bundle.dim(gpd.src(g).0);
        match &mats[g.0] {
            Some((entries, line)) => {
                if entries.len() != rows * cols {
                    return Err(Error::DimensionMismatch(format!(
                        "matrix for '{}' (line {line}) needs {rows}×{cols} = {} entries, got {}",
                        named.arr_names[g.0],
                        rows * cols,
                        entries.len()
                    )));
                }
                let mut m = Matrix::zero(rows, cols);
                for (i, v) in entries.iter().enumerate() {
                    m[(i / cols, i % cols)] = v.clone();
                }
                arrows.push(m);
            }
            None if gpd.unit(gpd.tgt(g)) == g => arrows.push(Matrix::identity(rows)),
            None => {
                return Err(semantic(
                    0,
                    format!("no matrix for non-unit arrow '{}'", named.arr_names[g.0]),
                ))
            }
        }
    }

    let rep = GroupoidRep { bundle, arrows };
    let report = validate_rep(gpd, &rep);
    if !report.is_empty() {
        return Err(Error::InvalidRep(report));
    }
    Ok(rep)
}

/// Renders a representation in the `.grep` text format.
pub fn export_rep_grep(named: &NamedGroupoid, rep: &GroupoidRep) -> String {
    let mut out = String::from("BUNDLE\n");
    for (m, name) in named.obj_names.iter().enumerate() {
        out.push_str(&format!("{name} {}\n", rep.bundle.dim(m)));
    }
    out.push_str("ARROWMAT\n");
    for g in named.groupoid.arrows() {
        let mat = rep.matrix(g);
        let entries: Vec<String> = mat.entries().map(ToString::to_string).collect();
        out.push_str(&format!("{} {}\n", named.arr_names[g.0], entries.join(" ")));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ArrowDoc {
    name: String,
    src: String,
    tgt: String,
}

/// Lossless JSON document for a named groupoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidDoc {
    pub format: String,
    objects: Vec<String>,
    arrows: Vec<ArrowDoc>,
    units: Vec<[String; 2]>,
    inverses: Vec<[String; 2]>,
    mul: Vec<[String; 3]>,
}

impl GroupoidDoc {
    pub fn from_named(named: &NamedGroupoid) -> Self {
        let g = &named.groupoid;
        let on = |m: ObjId| named.obj_names[m.0].clone();
        let an = |a: ArrId| named.arr_names[a.0].clone();
        let mut mul = Vec::new();
        for x in g.arrows() {
            for y in g.arrows() {
                if let Some(z) = g.compose_opt(x, y) {
                    mul.push([an(x), an(y), an(z)]);
                }
            }
        }
        Self {
            format: "groupoid".to_string(),
            objects: named.obj_names.clone(),
            arrows: g
                .arrows()
                .map(|a| ArrowDoc {
                    name: an(a),
                    src: on(g.src(a)),
                    tgt: on(g.tgt(a)),
                })
                .collect(),
            units: g.objects().map(|m| [on(m), an(g.unit(m))]).collect(),
            inverses: g.arrows().map(|a| [an(a), an(g.inverse(a))]).collect(),
            mul,
        }
    }
}

/// Serialises a named groupoid as JSON.
pub fn export_groupoid_json(named: &NamedGroupoid) -> String {
    serde_json::to_string_pretty(&GroupoidDoc::from_named(named)).expect("document serialises")
}

/// Parses the JSON groupoid document back into a named groupoid.
pub fn parse_groupoid_json(text: &str) -> Result<NamedGroupoid> {
    let doc: GroupoidDoc =
        serde_json::from_str(text).map_err(|e| syntax(e.line(), e.column(), &format!("valid groupoid JSON: {e}")))?;
    if doc.format != "groupoid" {
        return Err(semantic(0, format!("unexpected document format '{}'", doc.format)));
    }
    build_explicit(
        doc.objects,
        doc.arrows
            .into_iter()
            .map(|a| (a.name, a.src, a.tgt, 0))
            .collect(),
        doc.units.into_iter().map(|[m, u]| (m, u, 0)).collect(),
        doc.inverses.into_iter().map(|[a, b]| (a, b, 0)).collect(),
        doc.mul.into_iter().map(|[g, h, k]| (g, h, k, 0)).collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ArrowMatDoc {
    arrow: String,
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

/// Lossless JSON document for a representation. Rationals are `p/q`
/// strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepDoc {
    pub format: String,
    bundle: Vec<(String, usize)>,
    arrows: Vec<ArrowMatDoc>,
}

impl RepDoc {
    pub fn from_rep(named: &NamedGroupoid, rep: &GroupoidRep) -> Self {
        Self {
            format: "representation".to_string(),
            bundle: named
                .obj_names
                .iter()
                .enumerate()
                .map(|(m, n)| (n.clone(), rep.bundle.dim(m)))
                .collect(),
            arrows: named
                .groupoid
                .arrows()
                .map(|g| {
                    let m = rep.matrix(g);
                    ArrowMatDoc {
                        arrow: named.arr_names[g.0].clone(),
                        rows: m.rows(),
                        cols: m.cols(),
                        entries: m.entries().map(ToString::to_string).collect(),
                    }
                })
                .collect(),
        }
    }
}

pub fn export_rep_json(named: &NamedGroupoid, rep: &GroupoidRep) -> String {
    serde_json::to_string_pretty(&RepDoc::from_rep(named, rep)).expect("document serialises")
}

pub fn parse_rep_json(text: &str, named: &NamedGroupoid) -> Result<GroupoidRep> {
    let doc: RepDoc = serde_json::from_str(text)
        .map_err(|e| syntax(e.line(), e.column(), &format!("valid representation JSON: {e}")))?;
    if doc.format != "representation" {
        return Err(semantic(0, format!("unexpected document format '{}'", doc.format)));
    }
    // Rebuild through the text path to share the name and shape checks.
    let mut grep = String::from("BUNDLE\n");
    for (name, dim) in &doc.bundle {
        grep.push_str(&format!("{name} {dim}\n"));
    }
    grep.push_str("ARROWMAT\n");
    for a in &doc.arrows {
        grep.push_str(&format!("{} {}\n", a.arrow, a.entries.join(" ")));
    }
    parse_rep(&grep, named)
}

/// Serialises a validation report as JSON.
pub fn export_report_json(report: &ValidationReport) -> String {
    #[derive(Serialize)]
    struct ReportDoc<'a> {
        format: &'static str,
        violations: &'a [crate::error::Violation],
    }
    serde_json::to_string_pretty(&ReportDoc {
        format: "validation_report",
        violations: &report.violations,
    })
    .expect("document serialises")
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders a groupoid as a DOT digraph: objects become nodes, every arrow a
/// directed edge `α(g) → β(g)`. With a representation attached, edge labels
/// carry the matrices.
pub fn export_dot(named: &NamedGroupoid, rep: Option<&GroupoidRep>) -> String {
    let g = &named.groupoid;
    let mut out = String::from("digraph groupoid {\n");
    for name in &named.obj_names {
        out.push_str(&format!("  \"{}\";\n", dot_escape(name)));
    }
    for a in g.arrows() {
        let label = match rep {
            None => named.arr_names[a.0].clone(),
            Some(r) => format!("{}: {}", named.arr_names[a.0], r.matrix(a)),
        };
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            dot_escape(&named.obj_names[g.src(a).0]),
            dot_escape(&named.obj_names[g.tgt(a).0]),
            dot_escape(&label)
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::find_relabeling_isomorphism;
    use crate::linear::rat;

    const P2_EXPLICIT: &str = "
OBJECTS a b
ARROWS
aa a a
ab b a   # the arrow (a,b): source b, target a
ba a b
bb b b
UNITS
a aa
b bb
INVERSES
aa aa
ab ba
ba ab
bb bb
MUL
aa aa aa
aa ab ab
ba aa ba
bb ba ba
ab ba aa
ba ab bb
ab bb ab
bb bb bb
";

    const R_GREP: &str = "
BUNDLE
a 1
b 1
ARROWMAT
ab 2
ba 1/2
";

    #[test]
    fn build_line_parses() {
        let p2 = parse_groupoid("BUILD pair 2").unwrap();
        assert_eq!(p2.groupoid, FiniteGroupoid::pair(2));
        assert_eq!(p2.arr_names, vec!["aa", "ab", "ba", "bb"]);

        let z2 = parse_groupoid("BUILD group 0 1 / 1 0").unwrap();
        assert_eq!(z2.groupoid.n_arrows(), 2);

        let gb2 = parse_groupoid("BUILD group_bundle 0 1 / 1 0 ; 2").unwrap();
        assert_eq!(gb2.groupoid.n_arrows(), 4);
        assert!(gb2.groupoid.validate().is_empty());

        let act = parse_groupoid("BUILD action 0 1 / 1 0 ; 0 1 / 1 0").unwrap();
        assert!(act.groupoid.validate().is_empty());

        // a Latin square without identity is not a group
        assert!(matches!(
            parse_groupoid("BUILD group 1 0 2 / 2 1 0 / 0 2 1"),
            Err(Error::Semantic { .. })
        ));
    }

    #[test]
    fn explicit_listing_matches_builder_up_to_renaming() {
        let parsed = parse_groupoid(P2_EXPLICIT).unwrap();
        assert!(parsed.groupoid.validate().is_empty());
        assert!(find_relabeling_isomorphism(&parsed.groupoid, &FiniteGroupoid::pair(2)).is_some());
    }

    #[test]
    fn syntax_and_semantic_errors_carry_positions() {
        let err = parse_groupoid("NONSENSE x").unwrap_err();
        match err {
            Error::Syntax { line, col, .. } => {
                assert_eq!(line, 1);
                assert_eq!(col, 1);
            }
            other => panic!("expected syntax error, got {other}"),
        }

        // non-composable MUL entry
        let bad = P2_EXPLICIT.replace("ab ba aa", "ab ab aa");
        assert!(matches!(parse_groupoid(&bad), Err(Error::Semantic { .. })));
    }

    #[test]
    fn rep_parsing_and_defaults() {
        let p2 = parse_groupoid("BUILD pair 2").unwrap();
        let rep = parse_rep(R_GREP, &p2).unwrap();
        assert_eq!(rep.matrix(ArrId(1))[(0, 0)], rat(2, 1));
        // units defaulted to identity
        assert!(rep.matrix(ArrId(0)).is_identity());

        let err = parse_rep(&R_GREP.replace("1/2", "2/0"), &p2).unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));

        // non-invertible entry fails validation
        let err = parse_rep(&R_GREP.replace("ab 2", "ab 0"), &p2).unwrap_err();
        assert!(matches!(err, Error::InvalidRep(_)));

        // wrong homomorphism fails validation
        let err = parse_rep(&R_GREP.replace("ba 1/2", "ba 1"), &p2).unwrap_err();
        assert!(matches!(err, Error::InvalidRep(_)));
    }

    #[test]
    fn json_round_trips() {
        for text in ["BUILD pair 2", "BUILD group_bundle 0 1 / 1 0 ; 2", P2_EXPLICIT] {
            let named = parse_groupoid(text).unwrap();
            let json = export_groupoid_json(&named);
            assert_eq!(parse_groupoid_json(&json).unwrap(), named);
        }
        let p2 = parse_groupoid("BUILD pair 2").unwrap();
        let rep = parse_rep(R_GREP, &p2).unwrap();
        let json = export_rep_json(&p2, &rep);
        assert_eq!(parse_rep_json(&json, &p2).unwrap(), rep);
        // .grep round trip as well
        assert_eq!(parse_rep(&export_rep_grep(&p2, &rep), &p2).unwrap(), rep);
    }

    #[test]
    fn dot_export_counts_and_labels() {
        let p2 = parse_groupoid("BUILD pair 2").unwrap();
        let dot = export_dot(&p2, None);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert_eq!(dot.matches(";\n").count(), 6); // 2 nodes + 4 edges

        let rep = parse_rep(R_GREP, &p2).unwrap();
        let dot = export_dot(&p2, Some(&rep));
        // the edge b → a carries φ((a,b)) = 2
        assert!(dot.contains("\"b\" -> \"a\" [label=\"ab: 2\"]"));
    }
}
