//! Deterministic SVG figures.

use std::fmt::Write as _;

use ninepoint::conic::Conic;
use ninepoint::cremona::QuadraticMap;
use ninepoint::envelope::{gamma, make_family};
use ninepoint::extremal::{max_area_inscribed, quadrilateral_gauss_line, CentroidReading, GaussLocus, Quadrilateral};
use ninepoint::plane::{join, HLine, HPoint};
use ninepoint::quadrangle::{harmonic_points, npc_pole_locus};
use ninepoint::scalar::linalg::Vec3;
use ninepoint::scalar::{all_real_roots, refine_root, Rational, UPoly};
use ninepoint::sixteen::{sixteen_conics, SixteenOutcome};
use ninepoint::triangle::{nine_point_circle, tritangent_big};
use num_traits::ToPrimitive;

use crate::scene::Scene;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    Npc,
    Circle,
    Envelope,
    Sixteen,
    Gauss,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Chord tolerance as a fraction of the viewport width.
    pub tolerance: f64,
    /// World window `[xmin, ymin, xmax, ymax]`; fitted to the figure when
    /// absent.
    pub viewport: Option<[f64; 4]>,
    pub size: u32,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { tolerance: 1e-3, viewport: None, size: 800 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("nothing to render: {0}")]
    Nothing(String),
    #[error("scene has no {0}")]
    Missing(&'static str),
    #[error(transparent)]
    Geometry(#[from] ninepoint::GeomError),
}

type P2 = (f64, f64);
type M3 = [[f64; 3]; 3];

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn xy(p: &Vec3<Rational>) -> Option<P2> {
    let w = f(&p[2]);
    (w != 0.0).then(|| (f(&p[0]) / w, f(&p[1]) / w))
}

fn point_xy(p: &HPoint) -> Option<P2> {
    xy(p.coords())
}

fn matrix(c: &Conic) -> M3 {
    c.matrix().clone().map(|r| r.map(|v| f(&v)))
}

/// Shortest decimal that round-trips the value rounded to 12 significant
/// digits.
pub fn num(v: f64) -> String {
    let r: f64 = format!("{v:.11e}").parse().unwrap();
    if r == 0.0 {
        return "0".into();
    }
    format!("{r}")
}

enum Item {
    Line { l: [f64; 3], class: &'static str },
    Segment { a: P2, b: P2, class: &'static str },
    Curve { paths: Vec<Vec<P2>>, class: &'static str },
    Point { p: P2, label: String, class: &'static str },
}

struct Canvas {
    title: String,
    items: Vec<Item>,
    fit: Vec<P2>,
}

impl Canvas {
    fn new(title: impl Into<String>) -> Self {
        Canvas { title: title.into(), items: vec![], fit: vec![] }
    }

    fn point(&mut self, p: &HPoint, label: impl Into<String>, class: &'static str, fit: bool) {
        if let Some(q) = point_xy(p) {
            if fit {
                self.fit.push(q);
            }
            self.items.push(Item::Point { p: q, label: label.into(), class });
        }
    }

    fn line(&mut self, l: &HLine, class: &'static str) {
        let c = l.coords();
        if c[0] == Rational::from_integer(0.into()) && c[1] == Rational::from_integer(0.into()) {
            return;
        }
        self.items.push(Item::Line { l: [f(&c[0]), f(&c[1]), f(&c[2])], class });
    }

    fn segment(&mut self, a: &HPoint, b: &HPoint, class: &'static str) {
        if let (Some(a), Some(b)) = (point_xy(a), point_xy(b)) {
            self.items.push(Item::Segment { a, b, class });
        }
    }

    fn render(self, opts: &RenderOptions, curves: Vec<(Box<dyn Fn(f64) -> Option<P2> + '_>, f64, f64, &'static str)>) -> String {
        let view = opts.viewport.unwrap_or_else(|| fit_box(&self.fit));
        let tol = opts.tolerance * (view[2] - view[0]);
        let mut items = self.items;
        for (g, a, b, class) in curves {
            items.push(Item::Curve { paths: sample(&*g, a, b, tol, &view), class });
        }
        write_svg(&self.title, &items, &view, opts.size)
    }
}

fn fit_box(pts: &[P2]) -> [f64; 4] {
    if pts.is_empty() {
        return [-1.0, -1.0, 1.0, 1.0];
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let half = ((x1 - x0).max(y1 - y0) / 2.0).max(1e-9) * 1.25;
    [cx - half, cy - half, cx + half, cy + half]
}

fn inside(p: P2, v: &[f64; 4], slack: f64) -> bool {
    let w = (v[2] - v[0]) * slack;
    p.0 >= v[0] - w && p.0 <= v[2] + w && p.1 >= v[1] - w && p.1 <= v[3] + w
}

/// Adaptive sampling of `g` on `[a, b]`: halves each step until the midpoint
/// is within `tol` of the chord; the path breaks where the curve leaves the
/// (slightly enlarged) window or is undefined.
fn sample(g: &dyn Fn(f64) -> Option<P2>, a: f64, b: f64, tol: f64, view: &[f64; 4]) -> Vec<Vec<P2>> {
    const N: usize = 256;
    let mut paths: Vec<Vec<P2>> = vec![];
    let mut cur: Vec<P2> = vec![];
    let keep = |p: Option<P2>| p.filter(|&q| q.0.is_finite() && q.1.is_finite() && inside(q, view, 0.5));
    let mut prev = (a, keep(g(a)));
    if let Some(p) = prev.1 {
        cur.push(p);
    }
    for i in 1..=N {
        let t = a + (b - a) * i as f64 / N as f64;
        let next = (t, keep(g(t)));
        refine(g, &keep, prev, next, tol, 0, &mut cur, &mut paths);
        prev = next;
    }
    if cur.len() > 1 {
        paths.push(cur);
    }
    paths
}

#[allow(clippy::too_many_arguments)]
fn refine(
    g: &dyn Fn(f64) -> Option<P2>,
    keep: &dyn Fn(Option<P2>) -> Option<P2>,
    a: (f64, Option<P2>),
    b: (f64, Option<P2>),
    tol: f64,
    depth: u32,
    cur: &mut Vec<P2>,
    paths: &mut Vec<Vec<P2>>,
) {
    let mid_t = (a.0 + b.0) / 2.0;
    let m = (mid_t, keep(g(mid_t)));
    let split = match (a.1, b.1, m.1) {
        (Some(p), Some(q), Some(r)) => chord_distance(p, q, r) > tol,
        (None, None, None) => false,
        _ => true,
    };
    if split && depth < 14 {
        refine(g, keep, a, m, tol, depth + 1, cur, paths);
        refine(g, keep, m, b, tol, depth + 1, cur, paths);
        return;
    }
    match b.1 {
        Some(q) if a.1.is_some() || cur.is_empty() => cur.push(q),
        Some(q) => {
            if cur.len() > 1 {
                paths.push(std::mem::take(cur));
            }
            cur.clear();
            cur.push(q);
        }
        None => {
            if cur.len() > 1 {
                paths.push(std::mem::take(cur));
            }
            cur.clear();
        }
    }
}

fn chord_distance(p: P2, q: P2, r: P2) -> f64 {
    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
    let len = (dx * dx + dy * dy).sqrt();
    if len == 0.0 {
        return ((r.0 - p.0).powi(2) + (r.1 - p.1).powi(2)).sqrt();
    }
    ((r.0 - p.0) * dy - (r.1 - p.1) * dx).abs() / len
}

/// Points of a real conic as the second intersections of the lines
/// through one of its points, by the angle of the line.
fn conic_curve(m: M3, view: &[f64; 4]) -> Option<Box<dyn Fn(f64) -> Option<P2>>> {
    let p0 = conic_point(&m, view)?;
    Some(Box::new(move |th: f64| {
        let d = [th.cos(), th.sin(), 0.0];
        let p = [p0.0, p0.1, 1.0];
        let b: f64 = (0..3).map(|i| (0..3).map(|j| m[i][j] * p[i] * d[j]).sum::<f64>()).sum();
        let q: f64 = (0..3).map(|i| (0..3).map(|j| m[i][j] * d[i] * d[j]).sum::<f64>()).sum();
        if q.abs() < 1e-300 {
            return None;
        }
        let s = -2.0 * b / q;
        Some((p0.0 + s * d[0], p0.1 + s * d[1]))
    }))
}

/// A point of the conic on a line through the window center.
fn conic_point(m: &M3, view: &[f64; 4]) -> Option<P2> {
    let c = [(view[0] + view[2]) / 2.0, (view[1] + view[3]) / 2.0, 1.0];
    for k in 0..16 {
        let th = 0.1 + k as f64 * std::f64::consts::PI / 16.0;
        let d = [th.cos(), th.sin(), 0.0];
        let form = |u: &[f64; 3], v: &[f64; 3]| -> f64 { (0..3).map(|i| (0..3).map(|j| m[i][j] * u[i] * v[j]).sum::<f64>()).sum() };
        let (a, b, cc) = (form(&d, &d), form(&c, &d), form(&c, &c));
        let disc = b * b - a * cc;
        if disc < 0.0 || a.abs() < 1e-300 {
            continue;
        }
        let s = (-b + disc.sqrt()) / a;
        return Some((c[0] + s * d[0], c[1] + s * d[1]));
    }
    None
}

fn write_svg(title: &str, items: &[Item], v: &[f64; 4], size: u32) -> String {
    let s = size as f64;
    let scale = s / (v[2] - v[0]).max(v[3] - v[1]);
    let tx = |p: P2| ((p.0 - v[0]) * scale, s - (p.1 - v[1]) * scale);
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#).unwrap();
    writeln!(out, "<title>{}</title>", escape(title)).unwrap();
    writeln!(out, r##"<style>.side{{stroke:#999;stroke-width:1}}.transversal{{stroke:#1f5fbf;stroke-width:1.5}}.family{{stroke:#c9c9c9;stroke-width:0.6}}.gamma{{stroke:#c0392b;stroke-width:2}}.circle{{stroke:#c0392b;stroke-width:2}}.aux{{stroke:#2e8b57;stroke-width:1.2}}.quartic{{stroke:#6a1b9a;stroke-width:2}}.gauss{{stroke:#e67e22;stroke-width:1.5}}.vertex{{fill:#000}}.special{{fill:#1f5fbf}}.harmonic{{fill:#c0392b}}.minor{{fill:#777}}text{{font-family:sans-serif;font-size:13px}}</style>"##).unwrap();
    writeln!(out, r#"<defs><clipPath id="view"><rect x="0" y="0" width="{size}" height="{size}"/></clipPath></defs>"#).unwrap();
    writeln!(out, r##"<rect x="0" y="0" width="{size}" height="{size}" fill="#fff"/>"##).unwrap();
    writeln!(out, r#"<g clip-path="url(#view)" fill="none">"#).unwrap();
    for it in items {
        match it {
            Item::Line { l, class } => {
                if let Some((a, b)) = clip_line(l, v) {
                    let (a, b) = (tx(a), tx(b));
                    writeln!(out, r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(a.0), num(a.1), num(b.0), num(b.1)).unwrap();
                }
            }
            Item::Segment { a, b, class } => {
                let (a, b) = (tx(*a), tx(*b));
                writeln!(out, r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(a.0), num(a.1), num(b.0), num(b.1)).unwrap();
            }
            Item::Curve { paths, class } => {
                for path in paths {
                    let mut d = String::new();
                    for (i, p) in path.iter().enumerate() {
                        let q = tx(*p);
                        write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, num(q.0), num(q.1)).unwrap();
                    }
                    writeln!(out, r#"<path class="{class}" d="{d}"/>"#).unwrap();
                }
            }
            Item::Point { .. } => {}
        }
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "<g>").unwrap();
    // coincident points share one marker and one label
    let mut marks: Vec<(P2, &'static str, Vec<&str>)> = vec![];
    for it in items {
        if let Item::Point { p, label, class } = it {
            if !inside(*p, v, 0.0) {
                continue;
            }
            let q = tx(*p);
            match marks.iter_mut().find(|m| (m.0 .0 - q.0).hypot(m.0 .1 - q.1) < 0.5) {
                Some(m) => {
                    if !label.is_empty() && !m.2.contains(&label.as_str()) {
                        m.2.push(label);
                    }
                }
                None => marks.push((q, class, if label.is_empty() { vec![] } else { vec![label.as_str()] })),
            }
        }
    }
    for (q, class, labels) in marks {
        writeln!(out, r#"<circle class="{class}" cx="{}" cy="{}" r="3.5"/>"#, num(q.0), num(q.1)).unwrap();
        if !labels.is_empty() {
            writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, num(q.0 + 6.0), num(q.1 - 6.0), escape(&labels.join(" = "))).unwrap();
        }
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Segment of `ax + by + c = 0` inside the window.
fn clip_line(l: &[f64; 3], v: &[f64; 4]) -> Option<(P2, P2)> {
    let [a, b, c] = *l;
    let mut pts: Vec<P2> = vec![];
    if b != 0.0 {
        for x in [v[0], v[2]] {
            let y = -(a * x + c) / b;
            if y >= v[1] && y <= v[3] {
                pts.push((x, y));
            }
        }
    }
    if a != 0.0 {
        for y in [v[1], v[3]] {
            let x = -(b * y + c) / a;
            if x >= v[0] && x <= v[2] {
                pts.push((x, y));
            }
        }
    }
    // through a corner the same point arrives twice
    let mut best: Option<(P2, P2, f64)> = None;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let d = (p.0 - q.0).hypot(p.1 - q.1);
            if d > 1e-12 && best.map_or(true, |b| d > b.2) {
                best = Some((*p, *q, d));
            }
        }
    }
    best.map(|(p, q, _)| (p, q))
}

fn names(scene: &Scene) -> [String; 4] {
    scene.quadrangle_names().cloned().unwrap_or_else(|| ["A", "B", "C", "D"].map(String::from))
}

type Curves<'a> = Vec<(Box<dyn Fn(f64) -> Option<P2> + 'a>, f64, f64, &'static str)>;

fn push_conic<'a>(curves: &mut Curves<'a>, m: M3, view: &[f64; 4], class: &'static str) {
    if let Some(g) = conic_curve(m, view) {
        curves.push((g, 0.0, std::f64::consts::PI, class));
    }
}

pub fn render_svg(scene: &Scene, figure: Figure, opts: &RenderOptions) -> Result<String, RenderError> {
    match figure {
        Figure::Circle => circle_figure(scene, opts),
        Figure::Npc => npc_figure(scene, opts),
        Figure::Envelope => envelope_figure(scene, opts),
        Figure::Sixteen => sixteen_figure(scene, opts),
        Figure::Gauss => gauss_figure(scene, opts),
    }
}

fn quadrangle_base(scene: &Scene, canvas: &mut Canvas, lines: bool) -> Result<(), RenderError> {
    let q = scene.quadrangle.as_ref().ok_or(RenderError::Missing("quadrangle"))?;
    if lines {
        for (side, _, _) in q.sides() {
            canvas.line(side, "side");
        }
    }
    for (p, n) in q.vertices().iter().zip(names(scene)) {
        canvas.point(p, n, "vertex", true);
    }
    for (p, n) in q.fundamental().iter().zip(["E", "F", "G"]) {
        canvas.point(p, n, "special", true);
    }
    Ok(())
}

fn window(canvas: &Canvas, opts: &RenderOptions) -> [f64; 4] {
    opts.viewport.unwrap_or_else(|| fit_box(&canvas.fit))
}

fn circle_figure(scene: &Scene, opts: &RenderOptions) -> Result<String, RenderError> {
    let t = scene.triangle.as_ref().ok_or(RenderError::Missing("triangle"))?;
    let names = scene.spec.triangle.clone().unwrap_or_else(|| ["A", "B", "C"].map(String::from));
    let mut canvas = Canvas::new("nine-point circle");
    let v = t.vertices();
    for i in 0..3 {
        canvas.segment(&v[i], &v[(i + 1) % 3], "side");
    }
    for (p, n) in v.iter().zip(names.iter()) {
        canvas.point(p, n.as_str(), "vertex", true);
    }
    let np = nine_point_circle(t)?;
    let labels = ["Ma", "Mb", "Mc", "Ha", "Hb", "Hc", "Ka", "Kb", "Kc"];
    for (p, l) in np.points.iter().zip(labels) {
        canvas.point(p, l, "harmonic", true);
    }
    let view = window(&canvas, opts);
    let mut curves: Curves = vec![];
    push_conic(&mut curves, matrix(&np.circle.to_conic()), &view, "circle");
    let inc = &tritangent_big(t, 64)?[0];
    let (cx, cy, r) = (inc.cx.mid_f64(), inc.cy.mid_f64(), inc.r.mid_f64());
    push_conic(&mut curves, [[1.0, 0.0, -cx], [0.0, 1.0, -cy], [-cx, -cy, cx * cx + cy * cy - r * r]], &view, "aux");
    Ok(canvas.render(&RenderOptions { viewport: Some(view), ..opts.clone() }, curves))
}

fn npc_figure(scene: &Scene, opts: &RenderOptions) -> Result<String, RenderError> {
    let q = scene.quadrangle.as_ref().ok_or(RenderError::Missing("quadrangle"))?;
    let r = scene.transversal.as_ref().ok_or(RenderError::Missing("transversal"))?;
    let mut canvas = Canvas::new("nine-point conic and harmonic points");
    quadrangle_base(scene, &mut canvas, true)?;
    canvas.line(r, "transversal");
    for (i, (p, h)) in harmonic_points(q, r)?.iter().enumerate() {
        canvas.point(p, "", "minor", false);
        canvas.point(h, format!("P'{}", i + 1), "harmonic", true);
    }
    let g = npc_pole_locus(q, r, true)?.conic;
    let view = window(&canvas, opts);
    let mut curves: Curves = vec![];
    push_conic(&mut curves, matrix(&g), &view, "gamma");
    Ok(canvas.render(&RenderOptions { viewport: Some(view), ..opts.clone() }, curves))
}

fn eval_f(p: &UPoly<Rational>, t: f64) -> f64 {
    p.coeffs().iter().rev().fold(0.0, |acc, c| acc * t + f(c))
}

fn envelope_figure(scene: &Scene, opts: &RenderOptions) -> Result<String, RenderError> {
    let q = scene.quadrangle.as_ref().ok_or(RenderError::Missing("quadrangle"))?;
    let r = scene.transversal.as_ref().ok_or(RenderError::Missing("transversal"))?;
    let fam = make_family(&QuadraticMap::new(q)?, r)?;
    let mut canvas = Canvas::new("envelope of the joining lines");
    quadrangle_base(scene, &mut canvas, false)?;
    canvas.line(r, "transversal");
    let lines = fam.lines().clone();
    let dl: Vec<UPoly<Rational>> = lines.iter().map(|p| p.derivative()).collect();
    for k in -6i64..=6 {
        let t = Rational::new(k.into(), 2.into());
        if let Ok(l) = fam.line_at(&t) {
            canvas.line(&l, "family");
        }
    }
    // cusps where L, L', L'' are dependent
    let d2: Vec<UPoly<Rational>> = dl.iter().map(|p| p.derivative()).collect();
    let minor = |i: usize, j: usize| dl[i].mul(&d2[j]).sub(&dl[j].mul(&d2[i]));
    let w = lines[0].mul(&minor(1, 2)).sub(&lines[1].mul(&minor(0, 2))).add(&lines[2].mul(&minor(0, 1)));
    if !w.is_zero() {
        let width = Rational::new(1.into(), (1u64 << 60).into());
        for iv in all_real_roots(&w.squarefree())? {
            let iv = refine_root(&w.squarefree(), &iv, &width);
            let t = f(&((&iv.lo + &iv.hi) / Rational::from_integer(2.into())));
            let l: Vec<f64> = lines.iter().map(|p| eval_f(p, t)).collect();
            let d: Vec<f64> = dl.iter().map(|p| eval_f(p, t)).collect();
            let e = [l[1] * d[2] - l[2] * d[1], l[2] * d[0] - l[0] * d[2], l[0] * d[1] - l[1] * d[0]];
            if e[2].abs() > 1e-12 * e.iter().map(|c| c.abs()).fold(0.0, f64::max) {
                let q = (e[0] / e[2], e[1] / e[2]);
                canvas.fit.push(q);
                canvas.items.push(Item::Point { p: q, label: "cusp".into(), class: "special" });
            }
        }
    }
    let point = move |th: f64| -> Option<P2> {
        let t = th.tan();
        let l: Vec<f64> = lines.iter().map(|p| eval_f(p, t)).collect();
        let d: Vec<f64> = dl.iter().map(|p| eval_f(p, t)).collect();
        let e = [l[1] * d[2] - l[2] * d[1], l[2] * d[0] - l[0] * d[2], l[0] * d[1] - l[1] * d[0]];
        (e[2].abs() > 1e-300).then(|| (e[0] / e[2], e[1] / e[2]))
    };
    let view = window(&canvas, opts);
    let g = gamma(&fam)?;
    let mut curves: Curves = vec![];
    push_conic(&mut curves, matrix(&g), &view, "gamma");
    let h = std::f64::consts::FRAC_PI_2 - 1e-9;
    curves.push((Box::new(point), -h, h, "quartic"));
    Ok(canvas.render(&RenderOptions { viewport: Some(view), ..opts.clone() }, curves))
}

fn sixteen_figure(scene: &Scene, opts: &RenderOptions) -> Result<String, RenderError> {
    let q = scene.quadrangle.as_ref().ok_or(RenderError::Missing("quadrangle"))?;
    let r = scene.transversal.as_ref().ok_or(RenderError::Missing("transversal"))?;
    let s = match sixteen_conics(q, r)? {
        SixteenOutcome::ComplexContact => return Err(RenderError::Nothing("the contact points are complex".into())),
        SixteenOutcome::Found(s) => s,
    };
    let real: Vec<M3> = s.triangles.iter().flat_map(|t| t.real.iter().map(|m| m.approx)).collect();
    if real.is_empty() {
        return Err(RenderError::Nothing("no real inscribed conic".into()));
    }
    let mut canvas = Canvas::new("inscribed conics touching the nine-point conic");
    quadrangle_base(scene, &mut canvas, true)?;
    canvas.line(r, "transversal");
    let view = window(&canvas, opts);
    let mut curves: Curves = vec![];
    push_conic(&mut curves, matrix(&s.gamma), &view, "gamma");
    for m in real {
        push_conic(&mut curves, m, &view, "aux");
    }
    Ok(canvas.render(&RenderOptions { viewport: Some(view), ..opts.clone() }, curves))
}

fn gauss_figure(scene: &Scene, opts: &RenderOptions) -> Result<String, RenderError> {
    let q = scene.quadrangle.as_ref().ok_or(RenderError::Missing("quadrangle"))?;
    let v = q.vertices();
    let lines = [join(&v[0], &v[1])?, join(&v[1], &v[2])?, join(&v[2], &v[3])?, join(&v[3], &v[0])?];
    let quad = Quadrilateral::new(lines.clone())?;
    let mut canvas = Canvas::new("inscribed conics and the Gauss line");
    for l in &lines {
        canvas.line(l, "side");
    }
    for (a, b) in quad.diagonals() {
        canvas.segment(&a, &b, "family");
        canvas.point(&a, "", "vertex", true);
        canvas.point(&b, "", "vertex", true);
        if let Ok(m) = scene.chart.midpoint(&a, &b) {
            canvas.point(&m, "", "special", false);
        }
    }
    match quadrilateral_gauss_line(&quad, &scene.chart)? {
        GaussLocus::Line(g) => canvas.line(&g, "gauss"),
        GaussLocus::Point(p) => canvas.point(&p, "", "special", false),
    }
    let view = window(&canvas, opts);
    let mut curves: Curves = vec![];
    if let Ok(ex) = max_area_inscribed(&lines, &scene.chart, CentroidReading::SixVertices) {
        for s in &ex.stationary {
            push_conic(&mut curves, s.approx, &view, "aux");
            let c = (s.center.0.to_f64(), s.center.1.to_f64());
            canvas.items.push(Item::Point { p: c, label: String::new(), class: "harmonic" });
        }
    }
    Ok(canvas.render(&RenderOptions { viewport: Some(view), ..opts.clone() }, curves))
}
