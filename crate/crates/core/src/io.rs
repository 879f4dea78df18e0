//! JSON input and output formats.
//!
//! Polynomials are strings such as `"t^2 - 3t + t^-1"`; rationals are JSON
//! integers or strings such as `"-3/4"`.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::alexcore::{FreeComplex, JordanData, ModuleDecomposition};
use crate::bundles::FiberData;
use crate::dga::{CdgaPresentation, ProductEntry};
use crate::error::{Error, Result};
use crate::gysin::{GysinInput, GysinMap, Stratum};
use crate::laurent::{cyclotomic, parse_poly, parse_rational, FactorKind, IrreducibleFactor, LaurentPoly};
use crate::linalg::{LaurentMatrix, RationalMatrix};
use crate::Rational;

fn err<T>(path: &str, message: impl Into<String>) -> Result<T> {
    Err(Error::Input { path: path.to_string(), message: message.into() })
}

/// Parse JSON text, reporting syntax errors with line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Input {
        path: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    match v {
        Value::Object(m) => match m.get(key) {
            Some(x) => Ok(x),
            None => err(path, format!("missing field '{}'", key)),
        },
        _ => err(path, "expected an object"),
    }
}

fn opt_field<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.as_object().and_then(|m| m.get(key)).filter(|x| !x.is_null())
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().map_or_else(|| err(path, "expected an array"), Ok)
}

fn usize_of(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map_or_else(|| err(path, "expected a non-negative integer"), |x| Ok(x as usize))
}

fn str_of<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().map_or_else(|| err(path, "expected a string"), Ok)
}

fn rational_of(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => err(path, "expected an integer or a rational string like \"3/4\""),
        },
        Value::String(s) => parse_rational(s).or_else(|e| err(path, e.to_string())),
        _ => err(path, "expected a rational number"),
    }
}

fn poly_of(v: &Value, path: &str) -> Result<LaurentPoly> {
    match v {
        Value::Number(_) => Ok(LaurentPoly::constant(rational_of(v, path)?)),
        Value::String(s) => parse_poly(s).or_else(|e| err(path, e.to_string())),
        _ => err(path, "expected a polynomial string"),
    }
}

fn usize_list(v: &Value, path: &str) -> Result<Vec<usize>> {
    array(v, path)?.iter().enumerate().map(|(i, x)| usize_of(x, &format!("{}[{}]", path, i))).collect()
}

fn rational_list(v: &Value, path: &str) -> Result<Vec<Rational>> {
    array(v, path)?.iter().enumerate().map(|(i, x)| rational_of(x, &format!("{}[{}]", path, i))).collect()
}

fn string_list(v: &Value, path: &str) -> Result<Vec<String>> {
    array(v, path)?.iter().enumerate().map(|(i, x)| Ok(str_of(x, &format!("{}[{}]", path, i))?.to_string())).collect()
}

/// Dense rational matrix given as rows; the shape is checked against
/// `rows x cols` (an empty list stands for any matrix with no entries).
fn rational_matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Result<RationalMatrix> {
    let list = array(v, path)?;
    if list.is_empty() && (rows == 0 || cols == 0) {
        return Ok(RationalMatrix::zeros(rows, cols));
    }
    if list.len() != rows {
        return err(path, format!("expected {} rows, found {}", rows, list.len()));
    }
    let mut m = RationalMatrix::zeros(rows, cols);
    for (i, row) in list.iter().enumerate() {
        let rp = format!("{}[{}]", path, i);
        let entries = array(row, &rp)?;
        if entries.len() != cols {
            return err(&rp, format!("expected {} entries, found {}", cols, entries.len()));
        }
        for (j, x) in entries.iter().enumerate() {
            m.set(i, j, rational_of(x, &format!("{}[{}]", rp, j))?);
        }
    }
    Ok(m)
}

/// Square matrices given as rows, shape inferred.
fn square_matrix(v: &Value, path: &str) -> Result<RationalMatrix> {
    let n = array(v, path)?.len();
    rational_matrix(v, n, n, path)
}

fn rational_matrix_json(m: &RationalMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|c| json!(c.to_string())).collect())).collect())
}

/// Laurent matrix: `{"entries": [[i, j, "poly"], ...]}` or dense rows.
fn laurent_matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Result<LaurentMatrix> {
    if let Some(r) = opt_field(v, "rows") {
        if usize_of(r, &format!("{}.rows", path))? != rows {
            return err(path, format!("expected {} rows", rows));
        }
    }
    if let Some(c) = opt_field(v, "cols") {
        if usize_of(c, &format!("{}.cols", path))? != cols {
            return err(path, format!("expected {} columns", cols));
        }
    }
    if let Some(entries) = opt_field(v, "entries") {
        let ep = format!("{}.entries", path);
        let mut triples = Vec::new();
        for (k, e) in array(entries, &ep)?.iter().enumerate() {
            let tp = format!("{}[{}]", ep, k);
            let t = array(e, &tp)?;
            if t.len() != 3 {
                return err(&tp, "expected [row, column, polynomial]");
            }
            triples.push((
                usize_of(&t[0], &format!("{}[0]", tp))?,
                usize_of(&t[1], &format!("{}[1]", tp))?,
                poly_of(&t[2], &format!("{}[2]", tp))?,
            ));
        }
        return LaurentMatrix::from_triples(rows, cols, triples).or_else(|e| err(&ep, e.to_string()));
    }
    let list = array(v, path)?;
    if list.is_empty() && (rows == 0 || cols == 0) {
        return Ok(LaurentMatrix::zeros(rows, cols));
    }
    if list.len() != rows {
        return err(path, format!("expected {} rows, found {}", rows, list.len()));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row) in list.iter().enumerate() {
        let rp = format!("{}[{}]", path, i);
        let entries = array(row, &rp)?;
        if entries.len() != cols {
            return err(&rp, format!("expected {} entries, found {}", cols, entries.len()));
        }
        out.push(entries.iter().enumerate().map(|(j, x)| poly_of(x, &format!("{}[{}]", rp, j))).collect::<Result<_>>()?);
    }
    Ok(LaurentMatrix::from_rows(out))
}

/// `{"ranks": [...], "boundaries": [...]}` where `boundaries[k]` is
/// `d_{k+1}: C_{k+1} -> C_k`.
pub fn complex_from_value(v: &Value) -> Result<FreeComplex> {
    let ranks = usize_list(field(v, "ranks", "complex")?, "ranks")?;
    let bs = match opt_field(v, "boundaries") {
        Some(b) => array(b, "boundaries")?.clone(),
        None => Vec::new(),
    };
    if bs.len() + 1 > ranks.len().max(1) {
        return err("boundaries", format!("{} matrices for {} chain groups", bs.len(), ranks.len()));
    }
    let mut boundaries = Vec::with_capacity(bs.len());
    for (k, b) in bs.iter().enumerate() {
        boundaries.push(laurent_matrix(b, ranks[k], ranks[k + 1], &format!("boundaries[{}]", k))?);
    }
    FreeComplex::new(ranks, boundaries)
}

pub fn parse_complex(text: &str) -> Result<FreeComplex> {
    complex_from_value(&parse_json(text)?)
}

pub fn complex_to_json(c: &FreeComplex) -> Value {
    let boundaries: Vec<Value> = c
        .boundaries()
        .iter()
        .map(|b| {
            let entries: Vec<Value> = b.entries().map(|(i, j, p)| json!([i, j, p.to_string()])).collect();
            json!({"rows": b.rows(), "cols": b.cols(), "entries": entries})
        })
        .collect();
    json!({"ranks": c.ranks(), "boundaries": boundaries})
}

/// `{"free_rank": r, "torsion": [{"factor", "kind", "sizes"}]}`.
pub fn decomposition_to_json(m: &ModuleDecomposition) -> Value {
    let torsion: Vec<Value> = m
        .torsion
        .iter()
        .map(|(f, sizes)| json!({"factor": f.poly.to_string(), "kind": f.kind.to_string(), "sizes": sizes}))
        .collect();
    json!({"free_rank": m.free_rank, "torsion": torsion})
}

fn kind_of(s: &str, poly: &LaurentPoly, path: &str) -> Result<FactorKind> {
    let inner = |prefix: &str| s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'));
    if s == "unverified" {
        return Ok(FactorKind::Unverified);
    }
    if let Some(d) = inner("cyclotomic(") {
        let d: u64 = d.trim().parse().or_else(|_| err(path, "bad cyclotomic order"))?;
        if d == 0 || cyclotomic(d) != *poly {
            return err(path, format!("{} is not the cyclotomic polynomial of order {}", poly, d));
        }
        return Ok(FactorKind::Cyclotomic(d));
    }
    if let Some(r) = inner("linear-rational(") {
        let r = parse_rational(r).or_else(|e| err(path, e.to_string()))?;
        if LaurentPoly::linear(&r) != *poly {
            return err(path, format!("{} is not t - {}", poly, r));
        }
        return Ok(FactorKind::LinearRational(r));
    }
    err(path, format!("unknown factor kind '{}'", s))
}

pub fn decomposition_from_value(v: &Value, path: &str) -> Result<ModuleDecomposition> {
    let mut m = ModuleDecomposition::free(usize_of(field(v, "free_rank", path)?, &format!("{}.free_rank", path))?);
    if let Some(t) = opt_field(v, "torsion") {
        for (k, rec) in array(t, &format!("{}.torsion", path))?.iter().enumerate() {
            let rp = format!("{}.torsion[{}]", path, k);
            let poly = poly_of(field(rec, "factor", &rp)?, &format!("{}.factor", rp))?;
            let factor = match opt_field(rec, "kind") {
                Some(kind) => {
                    let kind = kind_of(str_of(kind, &format!("{}.kind", rp))?, &poly, &format!("{}.kind", rp))?;
                    IrreducibleFactor { poly, kind }
                }
                None => IrreducibleFactor::classify(&poly),
            };
            for (i, s) in usize_list(field(rec, "sizes", &rp)?, &format!("{}.sizes", rp))?.into_iter().enumerate() {
                if s == 0 {
                    return err(&format!("{}.sizes[{}]", rp, i), "block sizes are positive");
                }
                m.add_block(factor.clone(), s as u32);
            }
        }
    }
    Ok(m)
}

pub fn parse_decomposition(text: &str) -> Result<ModuleDecomposition> {
    decomposition_from_value(&parse_json(text)?, "record")
}

pub fn jordan_to_json(j: &JordanData) -> Value {
    json!({"degrees": j.degrees.iter().map(decomposition_to_json).collect::<Vec<_>>()})
}

pub fn jordan_from_value(v: &Value) -> Result<JordanData> {
    let ds = array(field(v, "degrees", "jordan")?, "degrees")?;
    let degrees =
        ds.iter().enumerate().map(|(i, d)| decomposition_from_value(d, &format!("degrees[{}]", i))).collect::<Result<_>>()?;
    Ok(JordanData::new(degrees))
}

/// Contents of a monodromy file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonodromyInput {
    /// A fiber chain complex with a chain automorphism.
    Chain(FiberData),
    /// The action on rational homology, one matrix per degree.
    Homology(Vec<RationalMatrix>),
}

/// `{"chain": {"ranks", "boundaries", "monodromy"}}` or
/// `{"homology": [matrices]}`; boundaries and monodromy are dense rational
/// matrices, `boundaries[k]` is `d_{k+1}`.
pub fn monodromy_from_value(v: &Value) -> Result<MonodromyInput> {
    if let Some(c) = opt_field(v, "chain") {
        let ranks = usize_list(field(c, "ranks", "chain")?, "chain.ranks")?;
        let mut boundaries = Vec::new();
        if let Some(bs) = opt_field(c, "boundaries") {
            for (k, b) in array(bs, "chain.boundaries")?.iter().enumerate() {
                if k + 1 >= ranks.len() {
                    return err("chain.boundaries", "more boundary matrices than degrees");
                }
                boundaries.push(rational_matrix(b, ranks[k], ranks[k + 1], &format!("chain.boundaries[{}]", k))?);
            }
        }
        let ms = array(field(c, "monodromy", "chain")?, "chain.monodromy")?;
        let mut monodromy = Vec::new();
        for (i, h) in ms.iter().enumerate() {
            let r = ranks.get(i).copied().unwrap_or(0);
            monodromy.push(rational_matrix(h, r, r, &format!("chain.monodromy[{}]", i))?);
        }
        return Ok(MonodromyInput::Chain(FiberData::new(ranks, boundaries, monodromy)?));
    }
    if let Some(h) = opt_field(v, "homology") {
        let hs = array(h, "homology")?;
        return Ok(MonodromyInput::Homology(
            hs.iter().enumerate().map(|(i, m)| square_matrix(m, &format!("homology[{}]", i))).collect::<Result<_>>()?,
        ));
    }
    err("monodromy", "expected a 'chain' or a 'homology' record")
}

pub fn parse_monodromy(text: &str) -> Result<MonodromyInput> {
    monodromy_from_value(&parse_json(text)?)
}

fn product_entries(v: &Value, path: &str) -> Result<Vec<ProductEntry>> {
    let mut out = Vec::new();
    for (k, e) in array(v, path)?.iter().enumerate() {
        let ep = format!("{}[{}]", path, k);
        let t = array(e, &ep)?;
        if t.len() != 3 {
            return err(&ep, "expected [a, b, {label: coefficient}]");
        }
        let combo = match &t[2] {
            Value::Object(m) => m
                .iter()
                .map(|(l, c)| Ok((l.clone(), rational_of(c, &format!("{}[2].{}", ep, l))?)))
                .collect::<Result<Vec<_>>>()?,
            _ => return err(&format!("{}[2]", ep), "expected an object of label: coefficient"),
        };
        out.push((str_of(&t[0], &format!("{}[0]", ep))?.to_string(), str_of(&t[1], &format!("{}[1]", ep))?.to_string(), combo));
    }
    Ok(out)
}

fn combo_json(combo: &[(String, Rational)]) -> Value {
    let mut m = Map::new();
    for (l, c) in combo {
        m.insert(l.clone(), json!(c.to_string()));
    }
    Value::Object(m)
}

/// A CDGA file: the algebra plus optional cocycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdgaFile {
    pub algebra: CdgaPresentation,
    pub eta: Option<Vec<Rational>>,
}

/// `{"basis": [[labels of degree 0], ...], "products": [[a, b, {c: coeff}]],
/// "differential": [matrix per degree], "eta": [coefficients]}`.
/// `differential[k]` maps degree `k` to degree `k + 1`.
pub fn cdga_from_value(v: &Value) -> Result<CdgaFile> {
    let basis = array(field(v, "basis", "cdga")?, "basis")?;
    let labels: Vec<Vec<String>> =
        basis.iter().enumerate().map(|(k, l)| string_list(l, &format!("basis[{}]", k))).collect::<Result<_>>()?;
    let products = match opt_field(v, "products") {
        Some(p) => product_entries(p, "products")?,
        None => Vec::new(),
    };
    let dim = |k: usize| labels.get(k).map_or(0, |l| l.len());
    let mut differential = Vec::new();
    if let Some(d) = opt_field(v, "differential") {
        for (k, m) in array(d, "differential")?.iter().enumerate() {
            differential.push(rational_matrix(m, dim(k + 1), dim(k), &format!("differential[{}]", k))?);
        }
    }
    let algebra = CdgaPresentation::new(labels, products, differential)?;
    let eta = opt_field(v, "eta").map(|e| rational_list(e, "eta")).transpose()?;
    Ok(CdgaFile { algebra, eta })
}

pub fn parse_cdga(text: &str) -> Result<CdgaFile> {
    cdga_from_value(&parse_json(text)?)
}

pub fn cdga_to_json(a: &CdgaPresentation, eta: Option<&[Rational]>) -> Value {
    let products: Vec<Value> = a.product_entries().iter().map(|(x, y, c)| json!([x, y, combo_json(c)])).collect();
    let differential: Vec<Value> = (0..=a.top()).map(|k| rational_matrix_json(&a.differential(k))).collect();
    let mut out = json!({"basis": a.all_labels(), "products": products, "differential": differential});
    if let Some(e) = eta {
        out["eta"] = Value::Array(e.iter().map(|c| json!(c.to_string())).collect());
    }
    out
}

fn subset_of(v: &Value, components: &BTreeMap<String, usize>, path: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, x) in array(v, path)?.iter().enumerate() {
        let name = str_of(x, &format!("{}[{}]", path, i))?;
        match components.get(name) {
            Some(&j) => out.push(j),
            None => return err(&format!("{}[{}]", path, i), format!("unknown component '{}'", name)),
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Gysin input file; see the README for the schema.
pub fn gysin_from_value(v: &Value) -> Result<GysinInput> {
    let n = usize_of(field(v, "n", "gysin")?, "n")?;
    let components = match opt_field(v, "components") {
        Some(c) => string_list(c, "components")?,
        None => Vec::new(),
    };
    let index: BTreeMap<String, usize> = components.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let mut strata = Vec::new();
    for (k, s) in array(field(v, "strata", "gysin")?, "strata")?.iter().enumerate() {
        let sp = format!("strata[{}]", k);
        let subset = subset_of(field(s, "subset", &sp)?, &index, &format!("{}.subset", sp))?;
        let labels: Vec<Vec<String>> = match opt_field(s, "labels") {
            Some(l) => array(l, &format!("{}.labels", sp))?
                .iter()
                .enumerate()
                .map(|(p, x)| string_list(x, &format!("{}.labels[{}]", sp, p)))
                .collect::<Result<_>>()?,
            None => {
                let betti = usize_list(field(s, "betti", &sp)?, &format!("{}.betti", sp))?;
                let tag: Vec<&str> = subset.iter().map(|&i| components[i].as_str()).collect();
                betti
                    .iter()
                    .enumerate()
                    .map(|(p, &b)| (0..b).map(|i| format!("h{}_{}[{}]", p, i, tag.join(","))).collect())
                    .collect()
            }
        };
        if let Some(b) = opt_field(s, "betti") {
            let betti = usize_list(b, &format!("{}.betti", sp))?;
            let dims: Vec<usize> = labels.iter().map(|l| l.len()).collect();
            if betti != dims {
                return err(&format!("{}.betti", sp), format!("betti numbers {:?} disagree with labels {:?}", betti, dims));
            }
        }
        strata.push(Stratum { subset, labels });
    }
    let cup = match opt_field(v, "cup") {
        Some(c) => product_entries(c, "cup")?,
        None => Vec::new(),
    };
    let mut gysin = Vec::new();
    if let Some(gs) = opt_field(v, "gysin") {
        for (k, g) in array(gs, "gysin")?.iter().enumerate() {
            let gp = format!("gysin[{}]", k);
            let from = subset_of(field(g, "from", &gp)?, &index, &format!("{}.from", gp))?;
            let to = subset_of(field(g, "to", &gp)?, &index, &format!("{}.to", gp))?;
            let p = usize_of(field(g, "p", &gp)?, &format!("{}.p", gp))?;
            let dim = |j: &[usize], p: usize| {
                strata.iter().find(|s: &&Stratum| s.subset == j).map_or(0, |s| s.dim(p))
            };
            let matrix = rational_matrix(field(g, "matrix", &gp)?, dim(&to, p + 2), dim(&from, p), &format!("{}.matrix", gp))?;
            gysin.push(GysinMap { from, to, p, matrix });
        }
    }
    let eta = field(v, "eta", "gysin")?;
    let eta_weight1 = match opt_field(eta, "weight1") {
        Some(w) => rational_list(w, "eta.weight1")?,
        None => Vec::new(),
    };
    let eta_weight2 = match opt_field(eta, "weight2") {
        Some(w) => rational_list(w, "eta.weight2")?,
        None => Vec::new(),
    };
    let g = GysinInput { n, components, strata, cup, gysin, eta_weight1, eta_weight2 };
    g.validate()?;
    Ok(g)
}

pub fn parse_gysin(text: &str) -> Result<GysinInput> {
    gysin_from_value(&parse_json(text)?)
}

pub fn gysin_to_json(g: &GysinInput) -> Value {
    let name = |j: &[usize]| j.iter().map(|&i| g.components[i].clone()).collect::<Vec<_>>();
    let strata: Vec<Value> = g.strata.iter().map(|s| json!({"subset": name(&s.subset), "labels": s.labels})).collect();
    let cup: Vec<Value> = g.cup.iter().map(|(x, y, c)| json!([x, y, combo_json(c)])).collect();
    let gysin: Vec<Value> = g
        .gysin
        .iter()
        .map(|m| json!({"from": name(&m.from), "to": name(&m.to), "p": m.p, "matrix": rational_matrix_json(&m.matrix)}))
        .collect();
    let w = |v: &[Rational]| v.iter().map(|c| json!(c.to_string())).collect::<Vec<_>>();
    json!({
        "n": g.n,
        "components": g.components,
        "strata": strata,
        "cup": cup,
        "gysin": gysin,
        "eta": {"weight1": w(&g.eta_weight1), "weight2": w(&g.eta_weight2)},
    })
}
