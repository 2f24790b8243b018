//! JSON scenes: named points and lines, given by coordinates or by
//! constructions on other names.

use std::collections::HashMap;

use ninepoint::plane::{join, meet, Chart, HLine, HPoint};
use ninepoint::quadrangle::Quadrangle;
use ninepoint::scalar::{parse_rational, Rational, DEFAULT_PRECISION, MAX_PRECISION};
use ninepoint::triangle::{orthocenter, Triangle};
use ninepoint::GeomError;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum SceneError {
    #[error("line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("{field}: {msg}")]
    Field { field: String, msg: String },
    #[error("{context}: {source}")]
    Geometry {
        context: String,
        #[source]
        source: GeomError,
    },
}

fn field(path: impl Into<String>, msg: impl Into<String>) -> SceneError {
    SceneError::Field { field: path.into(), msg: msg.into() }
}

const POINT_DIRECTIVES: [&str; 3] = ["orthocenter", "midpoint", "meet"];
const LINE_DIRECTIVES: [&str; 1] = ["join"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointSpec {
    Affine([Rational; 2]),
    Homogeneous([Rational; 3]),
    Directive { op: String, args: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineSpec {
    Coords([Rational; 3]),
    Directive { op: String, args: Vec<String> },
    Infinity,
    /// A line defined under `lines`.
    Named(String),
}

/// A scene as written, before resolution.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SceneSpec {
    pub name: Option<String>,
    pub points: Vec<(String, PointSpec)>,
    pub lines: Vec<(String, LineSpec)>,
    pub quadrangle: Option<[String; 4]>,
    pub transversal: Option<LineSpec>,
    pub triangle: Option<[String; 3]>,
    /// Infinity line of the chart; the standard one when absent.
    pub chart: Option<[Rational; 3]>,
    pub precision_bits: Option<u32>,
}

/// A resolved scene.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub spec: SceneSpec,
    pub points: Vec<(String, HPoint)>,
    pub lines: Vec<(String, HLine)>,
    pub quadrangle: Option<Quadrangle>,
    pub transversal: Option<HLine>,
    pub triangle: Option<Triangle>,
    pub chart: Chart,
    pub precision: u32,
}

impl Scene {
    pub fn point(&self, name: &str) -> Option<&HPoint> {
        self.points.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn quadrangle_names(&self) -> Option<&[String; 4]> {
        self.spec.quadrangle.as_ref()
    }
}

fn number(v: &Value, path: &str) -> Result<Rational, SceneError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(field(path, "expected a number or a numeric string")),
    };
    parse_rational(&text).map_err(|e| field(path, e.to_string()))
}

fn names(v: &[Value], path: &str) -> Result<Vec<String>, SceneError> {
    v.iter()
        .enumerate()
        .map(|(i, a)| a.as_str().map(str::to_string).ok_or_else(|| field(format!("{path}[{i}]"), "expected a name")))
        .collect()
}

fn directive(arr: &[Value], known: &[&str]) -> Option<String> {
    let op = arr.first()?.as_str()?;
    known.contains(&op).then(|| op.to_string())
}

fn point_spec(v: &Value, path: &str) -> Result<PointSpec, SceneError> {
    let arr = v.as_array().ok_or_else(|| field(path, "expected an array"))?;
    if let Some(op) = directive(arr, &POINT_DIRECTIVES) {
        let args = names(&arr[1..], path)?;
        let want = match op.as_str() {
            "orthocenter" => 3,
            _ => 2,
        };
        if args.len() != want {
            return Err(field(path, format!("{op} takes {want} names")));
        }
        return Ok(PointSpec::Directive { op, args });
    }
    let nums: Vec<Rational> =
        arr.iter().enumerate().map(|(i, x)| number(x, &format!("{path}[{i}]"))).collect::<Result<_, _>>()?;
    match nums.len() {
        2 => Ok(PointSpec::Affine([nums[0].clone(), nums[1].clone()])),
        3 => Ok(PointSpec::Homogeneous([nums[0].clone(), nums[1].clone(), nums[2].clone()])),
        _ => Err(field(path, "expected 2 affine or 3 homogeneous coordinates")),
    }
}

fn line_spec(v: &Value, path: &str) -> Result<LineSpec, SceneError> {
    if let Some(s) = v.as_str() {
        return Ok(if s == "infinity" { LineSpec::Infinity } else { LineSpec::Named(s.to_string()) });
    }
    let arr = v.as_array().ok_or_else(|| field(path, "expected an array or a name"))?;
    if let Some(op) = directive(arr, &LINE_DIRECTIVES) {
        let args = names(&arr[1..], path)?;
        if args.len() != 2 {
            return Err(field(path, "join takes 2 names"));
        }
        return Ok(LineSpec::Directive { op, args });
    }
    Ok(LineSpec::Coords(triple(arr, path)?))
}

fn triple(arr: &[Value], path: &str) -> Result<[Rational; 3], SceneError> {
    if arr.len() != 3 {
        return Err(field(path, "expected 3 coordinates"));
    }
    Ok([number(&arr[0], &format!("{path}[0]"))?, number(&arr[1], &format!("{path}[1]"))?, number(&arr[2], &format!("{path}[2]"))?])
}

fn name_list<const N: usize>(v: &Value, path: &str) -> Result<[String; N], SceneError> {
    let arr = v.as_array().ok_or_else(|| field(path, "expected an array of names"))?;
    let n = names(arr, path)?;
    n.try_into().map_err(|_| field(path, format!("expected {N} names")))
}

impl SceneSpec {
    pub fn from_value(v: &Value) -> Result<Self, SceneError> {
        let obj = v.as_object().ok_or_else(|| field("scene", "expected an object"))?;
        let known = ["name", "points", "lines", "quadrangle", "transversal", "triangle", "chart", "precision_bits"];
        for k in obj.keys() {
            if !known.contains(&k.as_str()) {
                return Err(field(k, "unknown key"));
            }
        }
        let mut spec = SceneSpec::default();
        if let Some(n) = obj.get("name") {
            spec.name = Some(n.as_str().ok_or_else(|| field("name", "expected a string"))?.to_string());
        }
        if let Some(p) = obj.get("points") {
            let p = p.as_object().ok_or_else(|| field("points", "expected an object"))?;
            for (k, v) in p {
                spec.points.push((k.clone(), point_spec(v, &format!("points.{k}"))?));
            }
        }
        if let Some(l) = obj.get("lines") {
            let l = l.as_object().ok_or_else(|| field("lines", "expected an object"))?;
            for (k, v) in l {
                let s = line_spec(v, &format!("lines.{k}"))?;
                if matches!(s, LineSpec::Named(_)) {
                    return Err(field(format!("lines.{k}"), "a line cannot be an alias"));
                }
                spec.lines.push((k.clone(), s));
            }
        }
        if let Some(q) = obj.get("quadrangle") {
            spec.quadrangle = Some(name_list(q, "quadrangle")?);
        }
        if let Some(r) = obj.get("transversal") {
            spec.transversal = Some(line_spec(r, "transversal")?);
        }
        if let Some(t) = obj.get("triangle") {
            spec.triangle = Some(name_list(t, "triangle")?);
        }
        if let Some(c) = obj.get("chart") {
            let c = c.as_object().ok_or_else(|| field("chart", "expected an object"))?;
            if let Some(inf) = c.get("infinity") {
                let arr = inf.as_array().ok_or_else(|| field("chart.infinity", "expected 3 coordinates"))?;
                spec.chart = Some(triple(arr, "chart.infinity")?);
            }
        }
        if let Some(p) = obj.get("precision_bits") {
            let bits = p.as_u64().ok_or_else(|| field("precision_bits", "expected a positive integer"))?;
            if bits < 64 || bits > MAX_PRECISION as u64 {
                return Err(field("precision_bits", format!("must lie in 64..={MAX_PRECISION}")));
            }
            spec.precision_bits = Some(bits as u32);
        }
        Ok(spec)
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        if let Some(n) = &self.name {
            obj.insert("name".into(), json!(n));
        }
        if !self.points.is_empty() {
            let mut p = Map::new();
            for (k, s) in &self.points {
                let v = match s {
                    PointSpec::Affine(c) => Value::Array(c.iter().map(num_value).collect()),
                    PointSpec::Homogeneous(c) => Value::Array(c.iter().map(num_value).collect()),
                    PointSpec::Directive { op, args } => directive_value(op, args),
                };
                p.insert(k.clone(), v);
            }
            obj.insert("points".into(), Value::Object(p));
        }
        if !self.lines.is_empty() {
            let mut l = Map::new();
            for (k, s) in &self.lines {
                l.insert(k.clone(), line_value(s));
            }
            obj.insert("lines".into(), Value::Object(l));
        }
        if let Some(q) = &self.quadrangle {
            obj.insert("quadrangle".into(), json!(q));
        }
        if let Some(r) = &self.transversal {
            obj.insert("transversal".into(), line_value(r));
        }
        if let Some(t) = &self.triangle {
            obj.insert("triangle".into(), json!(t));
        }
        if let Some(c) = &self.chart {
            obj.insert("chart".into(), json!({ "infinity": c.iter().map(num_value).collect::<Vec<_>>() }));
        }
        if let Some(p) = self.precision_bits {
            obj.insert("precision_bits".into(), json!(p));
        }
        Value::Object(obj)
    }

    pub fn resolve(&self) -> Result<Scene, SceneError> {
        resolve(self)
    }
}

fn num_value(r: &Rational) -> Value {
    if r.is_integer() {
        if let Some(i) = r.to_integer().to_i64() {
            return json!(i);
        }
    }
    json!(r.to_string())
}

fn directive_value(op: &str, args: &[String]) -> Value {
    let mut v = vec![json!(op)];
    v.extend(args.iter().map(|a| json!(a)));
    Value::Array(v)
}

fn line_value(s: &LineSpec) -> Value {
    match s {
        LineSpec::Coords(c) => Value::Array(c.iter().map(num_value).collect()),
        LineSpec::Directive { op, args } => directive_value(op, args),
        LineSpec::Infinity => json!("infinity"),
        LineSpec::Named(n) => json!(n),
    }
}

fn geom(context: impl Into<String>) -> impl FnOnce(GeomError) -> SceneError {
    let context = context.into();
    move |source| SceneError::Geometry { context, source }
}

fn resolve(spec: &SceneSpec) -> Result<Scene, SceneError> {
    let chart = match &spec.chart {
        Some(c) => Chart::new(HLine::new(c.clone()).map_err(geom("chart.infinity"))?),
        None => Chart::default(),
    };
    let mut points: HashMap<String, HPoint> = HashMap::new();
    let mut lines: HashMap<String, HLine> = HashMap::new();
    for (k, _) in spec.points.iter() {
        if spec.lines.iter().any(|(l, _)| l == k) {
            return Err(field(format!("points.{k}"), "name used for both a point and a line"));
        }
    }
    let total = spec.points.len() + spec.lines.len();
    // constructions may refer to names defined later; resolve until stable
    while points.len() + lines.len() < total {
        let before = points.len() + lines.len();
        for (k, s) in &spec.points {
            if points.contains_key(k) {
                continue;
            }
            let path = format!("points.{k}");
            let p = match s {
                PointSpec::Affine([x, y]) => Some(chart.point(x.clone(), y.clone()).map_err(geom(&path))?),
                PointSpec::Homogeneous(c) => Some(HPoint::new(c.clone()).map_err(geom(&path))?),
                PointSpec::Directive { op, args } => point_directive(op, args, &points, &lines, &chart, &path)?,
            };
            if let Some(p) = p {
                points.insert(k.clone(), p);
            }
        }
        for (k, s) in &spec.lines {
            if lines.contains_key(k) {
                continue;
            }
            let path = format!("lines.{k}");
            if let Some(l) = line_from(s, &points, &lines, &chart, &path)? {
                lines.insert(k.clone(), l);
            }
        }
        if points.len() + lines.len() == before {
            let missing: Vec<String> = spec
                .points
                .iter()
                .map(|(k, _)| k)
                .chain(spec.lines.iter().map(|(k, _)| k))
                .filter(|k| !points.contains_key(*k) && !lines.contains_key(*k))
                .cloned()
                .collect();
            return Err(field("points", format!("unresolved or cyclic definitions: {}", missing.join(", "))));
        }
    }
    let lookup = |n: &str, path: &str| -> Result<HPoint, SceneError> {
        points.get(n).cloned().ok_or_else(|| field(path, format!("unknown point {n}")))
    };
    let quadrangle = match &spec.quadrangle {
        Some(names) => {
            let v: Vec<HPoint> = names.iter().map(|n| lookup(n, "quadrangle")).collect::<Result<_, _>>()?;
            let labels: [&str; 4] = std::array::from_fn(|i| names[i].as_str());
            Some(Quadrangle::named(v.try_into().unwrap(), labels).map_err(geom("quadrangle"))?)
        }
        None => None,
    };
    let triangle = match &spec.triangle {
        Some(names) => {
            let v: Vec<HPoint> = names.iter().map(|n| lookup(n, "triangle")).collect::<Result<_, _>>()?;
            let [a, b, c]: [HPoint; 3] = v.try_into().unwrap();
            Some(Triangle::new(a, b, c).map_err(geom(format!("triangle {}", names.join(", "))))?)
        }
        None => None,
    };
    let transversal = match &spec.transversal {
        Some(s) => Some(
            line_from(s, &points, &lines, &chart, "transversal")?
                .ok_or_else(|| field("transversal", "refers to an unknown name"))?,
        ),
        None => None,
    };
    let precision = spec.precision_bits.unwrap_or(DEFAULT_PRECISION);
    let points = spec.points.iter().map(|(k, _)| (k.clone(), points[k].clone())).collect();
    let lines = spec.lines.iter().map(|(k, _)| (k.clone(), lines[k].clone())).collect();
    Ok(Scene { spec: spec.clone(), points, lines, quadrangle, transversal, triangle, chart, precision })
}

fn point_directive(
    op: &str,
    args: &[String],
    points: &HashMap<String, HPoint>,
    lines: &HashMap<String, HLine>,
    chart: &Chart,
    path: &str,
) -> Result<Option<HPoint>, SceneError> {
    if op == "meet" {
        let (Some(l), Some(m)) = (lines.get(&args[0]), lines.get(&args[1])) else { return Ok(None) };
        return meet(l, m).map(Some).map_err(geom(path));
    }
    let ps: Option<Vec<&HPoint>> = args.iter().map(|a| points.get(a)).collect();
    let Some(ps) = ps else { return Ok(None) };
    match op {
        "midpoint" => chart.midpoint(ps[0], ps[1]).map(Some).map_err(geom(path)),
        "orthocenter" => {
            if !chart.is_standard() {
                return Err(field(path, "orthocenter needs the standard chart"));
            }
            let t = Triangle::new(ps[0].clone(), ps[1].clone(), ps[2].clone()).map_err(geom(path))?;
            Ok(Some(orthocenter(&t)))
        }
        _ => Err(field(path, format!("unknown construction {op}"))),
    }
}

fn line_from(
    s: &LineSpec,
    points: &HashMap<String, HPoint>,
    lines: &HashMap<String, HLine>,
    chart: &Chart,
    path: &str,
) -> Result<Option<HLine>, SceneError> {
    match s {
        LineSpec::Coords(c) => HLine::new(c.clone()).map(Some).map_err(geom(path)),
        LineSpec::Infinity => Ok(Some(chart.infinity.clone())),
        LineSpec::Named(n) => Ok(lines.get(n).cloned()),
        LineSpec::Directive { args, .. } => {
            let (Some(a), Some(b)) = (points.get(&args[0]), points.get(&args[1])) else { return Ok(None) };
            join(a, b).map(Some).map_err(geom(path))
        }
    }
}

/// Parses one scene or an array of scenes.
pub fn parse_scenes(text: &str) -> Result<Vec<SceneSpec>, SceneError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| SceneError::Json { line: e.line(), column: e.column(), msg: e.to_string() })?;
    match &v {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, s)| {
                SceneSpec::from_value(s).map_err(|e| match e {
                    SceneError::Field { field, msg } => SceneError::Field { field: format!("[{i}].{field}"), msg },
                    other => other,
                })
            })
            .collect(),
        _ => Ok(vec![SceneSpec::from_value(&v)?]),
    }
}

pub fn parse_scene(text: &str) -> Result<Scene, SceneError> {
    let specs = parse_scenes(text)?;
    if specs.len() != 1 {
        return Err(field("scene", format!("expected one scene, found {}", specs.len())));
    }
    specs[0].resolve()
}

/// Canonical text of a list of scenes; a single scene is written bare.
pub fn serialize_scenes(specs: &[SceneSpec]) -> String {
    let v = if specs.len() == 1 { specs[0].to_value() } else { Value::Array(specs.iter().map(|s| s.to_value()).collect()) };
    let mut s = String::new();
    write_json(&v, 0, &mut s);
    s.push('\n');
    s
}

// Objects one key per line, arrays of scalars on one line.
fn write_json(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| " ".repeat(n);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_json(x, indent + 2, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                write_json(x, indent + 2, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Array(a) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_json(x, indent, out);
            }
            out.push(']');
        }
        _ => out.push_str(&v.to_string()),
    }
}

/// Affine coordinates or the homogeneous triple when at infinity.
pub fn point_label(p: &HPoint, chart: &Chart) -> String {
    match chart.xy(p) {
        Ok((x, y)) => format!("({x}, {y})"),
        Err(_) => p.to_string(),
    }
}
