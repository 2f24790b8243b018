//! Theorem suites run against a scene, with machine-readable verdicts.

use std::time::Instant;

use ninepoint::conic::{center, classify, ConicKind};
use ninepoint::cremona::{PlaneCurve, QuadraticMap};
use ninepoint::envelope::{envelope_report, make_family};
use ninepoint::extremal::{inscribed_center_on_gauss, max_area_inscribed, min_area_circumscribed, CentroidReading};
use ninepoint::pencil::{involution_on_line, parabola_count, pencil_of_quadrangle, proportional, restriction_to_line};
use ninepoint::plane::{join, HLine, HPoint};
use ninepoint::quadrangle::{
    midpoint_theorem, nine_incidences, npc_cremona, npc_harmonic_six, npc_pole_locus, npc_steiner, self_polar, species,
    Quadrangle, Species,
};
use ninepoint::scalar::int;
use ninepoint::sixteen::{sixteen_conics, SixteenOutcome};
use ninepoint::triangle::{feuerbach_from, loria_i_from, loria_ii_from, Bisector, Triangle, Verdict as TriVerdict};
use ninepoint::GeomError;
use serde::Serialize;

use crate::scene::Scene;

pub const THEOREMS: [&str; 10] =
    ["nine-points", "steiner", "involution", "cremona", "trudi", "feuerbach", "loria", "sixteen", "envelope", "extremal"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    PassExact,
    PassCertified { precision: u32, bound: String },
    Fail { witness: String },
    Skipped { reason: String },
    Undecidable { precision: u32 },
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::PassExact => "pass-exact",
            Status::PassCertified { .. } => "pass-certified",
            Status::Fail { .. } => "fail",
            Status::Skipped { .. } => "skipped",
            Status::Undecidable { .. } => "undecidable",
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, Status::PassExact | Status::PassCertified { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub theorem: String,
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SceneReport {
    pub scene: String,
    pub verdicts: Vec<Verdict>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub undecidable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub scenes: Vec<SceneReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(scenes: Vec<SceneReport>) -> Self {
        let mut summary = Summary::default();
        for v in scenes.iter().flat_map(|s| &s.verdicts) {
            match v.status {
                Status::PassExact | Status::PassCertified { .. } => summary.pass += 1,
                Status::Fail { .. } => summary.fail += 1,
                Status::Skipped { .. } => summary.skipped += 1,
                Status::Undecidable { .. } => summary.undecidable += 1,
            }
        }
        Report { scenes, summary }
    }

    /// 0 when nothing failed, 1 on a failure, 3 when only undecidable
    /// outcomes remain.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.undecidable > 0 {
            3
        } else {
            0
        }
    }
}

/// Expands `all` and checks the theorem ids.
pub fn expand_suite(ids: &[String]) -> Result<Vec<&'static str>, String> {
    let mut out = vec![];
    for id in ids {
        if id == "all" {
            out.extend(THEOREMS);
            continue;
        }
        match THEOREMS.iter().find(|t| **t == id) {
            Some(t) => out.push(*t),
            None => return Err(format!("unknown theorem id {id:?}; known: all, {}", THEOREMS.join(", "))),
        }
    }
    out.dedup();
    Ok(out)
}

/// Runs the suite on each scene. Checks run on scoped threads; the output
/// keeps the suite order.
pub fn run_verify(scenes: &[Scene], suite: &[&str], timing: bool) -> Report {
    let reports = scenes
        .iter()
        .enumerate()
        .map(|(i, scene)| {
            let verdicts = std::thread::scope(|s| {
                let handles: Vec<_> = suite
                    .iter()
                    .map(|id| {
                        s.spawn(move || {
                            let start = Instant::now();
                            let status = check(scene, id);
                            Verdict {
                                theorem: id.to_string(),
                                status,
                                timing_ms: timing.then(|| start.elapsed().as_millis()),
                            }
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
            });
            let name = scene.spec.name.clone().unwrap_or_else(|| format!("scene-{i}"));
            SceneReport { scene: name, verdicts }
        })
        .collect();
    Report::new(reports)
}

pub fn check(scene: &Scene, id: &str) -> Status {
    let out = match id {
        "nine-points" => nine_points(scene),
        "steiner" => steiner(scene),
        "involution" => involution(scene),
        "cremona" => cremona(scene),
        "trudi" => trudi(scene),
        "feuerbach" => feuerbach(scene),
        "loria" => loria(scene),
        "sixteen" => sixteen(scene),
        "envelope" => envelope(scene),
        "extremal" => extremal(scene),
        _ => return Status::Skipped { reason: format!("unknown theorem {id}") },
    };
    out.unwrap_or_else(from_error)
}

fn from_error(e: GeomError) -> Status {
    match e {
        GeomError::Undecidable(p) => Status::Undecidable { precision: p },
        GeomError::NonGeneric(m) => Status::Skipped { reason: format!("non-generic configuration: {m}") },
        GeomError::FundamentalTransversal => Status::Skipped { reason: e.to_string() },
        GeomError::DegenerateFamily(m) => Status::Skipped { reason: format!("degenerate family: {m}") },
        GeomError::PointAtInfinity => Status::Skipped { reason: "a required point is at infinity".into() },
        other => Status::Fail { witness: other.to_string() },
    }
}

type Check = Result<Status, GeomError>;

fn skip(reason: &str) -> Check {
    Ok(Status::Skipped { reason: reason.into() })
}

fn fail(witness: String) -> Check {
    Ok(Status::Fail { witness })
}

fn quad_and_line(scene: &Scene) -> Result<(&Quadrangle, &HLine), &'static str> {
    let q = scene.quadrangle.as_ref().ok_or("scene has no quadrangle")?;
    let r = scene.transversal.as_ref().ok_or("scene has no transversal")?;
    Ok((q, r))
}

macro_rules! need {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(reason) => return skip(reason),
        }
    };
}

fn generic_transversal(q: &Quadrangle, r: &HLine) -> Option<&'static str> {
    if q.vertices().iter().any(|v| v.on(r)) {
        return Some("transversal through a vertex");
    }
    if q.fundamental().iter().any(|v| v.on(r)) {
        return Some("transversal through a diagonal point");
    }
    None
}

fn nine_points(scene: &Scene) -> Check {
    let (q, r) = need!(quad_and_line(scene));
    if let Some(reason) = generic_transversal(q, r) {
        return skip(reason);
    }
    let a = npc_pole_locus(q, r, false)?.conic;
    let b = npc_harmonic_six(q, r, false)?.conic;
    let c = npc_cremona(q, r)?.conic;
    if a != b || a != c {
        return fail(format!("r = {r}: pole locus {a}, harmonic six {b}, image {c}"));
    }
    if !nine_incidences(q, r, &a)? {
        return fail(format!("r = {r}: {a} misses one of the nine points"));
    }
    Ok(Status::PassExact)
}

fn steiner(scene: &Scene) -> Check {
    let q = need!(scene.quadrangle.as_ref().ok_or("scene has no quadrangle"));
    let chart = &scene.chart;
    if q.vertices().iter().any(|v| !chart.is_finite(v)) {
        return skip("a vertex is at infinity");
    }
    if q.fundamental().iter().any(|v| v.on(&chart.infinity)) {
        return skip("a diagonal point is at infinity");
    }
    let g = npc_steiner(q, chart)?.conic;
    let cl = classify(&g, chart);
    let Some(kind) = cl.kind else { return skip("degenerate conic") };
    if kind != ConicKind::Parabola {
        let c = center(&g, chart)?.point;
        let centroid = chart.centroid(q.vertices())?;
        if c != centroid {
            return fail(format!("{g}: center {c} differs from the vertex centroid {centroid}"));
        }
    }
    let sp = species(q, chart)?;
    let expected = match sp.species {
        Species::First => ConicKind::Hyperbola,
        Species::Second => ConicKind::Ellipse,
    };
    if kind != expected {
        return fail(format!("{g}: {kind:?} for a quadrangle of the {:?} species", sp.species));
    }
    if sp.orthogonal && !cl.is_circle {
        return fail(format!("{g}: orthogonal quadrangle but not a circle"));
    }
    if sp.cyclic && !cl.is_equilateral {
        return fail(format!("{g}: cyclic quadrangle but not an equilateral hyperbola"));
    }
    Ok(Status::PassExact)
}

fn involution(scene: &Scene) -> Check {
    let (q, r) = need!(quad_and_line(scene));
    if let Some(reason) = generic_transversal(q, r) {
        return skip(reason);
    }
    let g = npc_pole_locus(q, r, false)?.conic;
    let inv = involution_on_line(&pencil_of_quadrangle(q), r)?;
    let a = restriction_to_line(&g, r);
    let b = inv.fixed_quadratic();
    if !proportional(&a, &b) {
        return fail(format!("r = {r}: restriction {a:?} vs fixed-point quadratic {b:?}"));
    }
    Ok(Status::PassExact)
}

fn cremona(scene: &Scene) -> Check {
    let q = need!(scene.quadrangle.as_ref().ok_or("scene has no quadrangle"));
    let f = QuadraticMap::new(q)?;
    let fund = q.fundamental();
    for i in -3i64..=3 {
        for j in -3i64..=3 {
            let p = HPoint::from_ints(i, j, 1 + (i * j).rem_euclid(3));
            if fund.contains(&p) {
                continue;
            }
            let img = f.apply_point(&p)?;
            if let Some(k) = fund.iter().position(|e| e == &img) {
                if !p.on(&q.fundamental_side(k)) {
                    return fail(format!("{p} maps to the diagonal point {img} off its opposite side"));
                }
                continue;
            }
            if f.apply_point(&img)? != p {
                return fail(format!("f(f({p})) ≠ {p}"));
            }
            if f.apply_point_polars(&p)? != img {
                return fail(format!("polar construction disagrees at {p}"));
            }
        }
    }
    for k in 0..3 {
        let side = q.fundamental_side(k);
        let others: Vec<&HPoint> = (0..3).filter(|&i| i != k).map(|i| &fund[i]).collect();
        let p = HPoint::new(std::array::from_fn(|i| &others[0].coords()[i] + &others[1].coords()[i] * int(2)))?;
        if p.on(&side) && f.apply_point(&p)? != fund[k] {
            return fail(format!("{p} on a diagonal side is not blown down to {}", fund[k]));
        }
    }
    if let Some(r) = &scene.transversal {
        if generic_transversal(q, r).is_none() {
            let g = f.apply_line(r)?;
            let gc = PlaneCurve::new(g.to_poly())?;
            let back = f.transform_curve(&gc)?;
            if back.degree() != 1 || PlaneCurve::new(ninepoint::scalar::Poly::linear(r.coords()))? != back {
                return fail(format!("image of {g} is {back}, expected the transversal {r}"));
            }
        }
    }
    Ok(Status::PassExact)
}

fn trudi(scene: &Scene) -> Check {
    let q = need!(scene.quadrangle.as_ref().ok_or("scene has no quadrangle"));
    let chart = &scene.chart;
    let pencil = pencil_of_quadrangle(q);
    for t in 1..=3 {
        let m = pencil.member(&int(1), &int(t))?;
        if !m.is_degenerate() && !self_polar(q, &m) {
            return fail(format!("diagonal triangle not self-polar for {m}"));
        }
    }
    if q.vertices().iter().any(|v| !chart.is_finite(v)) {
        return Ok(Status::PassExact);
    }
    if q.fundamental().iter().all(|f| chart.is_finite(f)) && !midpoint_theorem(q, chart)? {
        return fail("midpoint theorem fails".into());
    }
    let sp = species(q, chart)?;
    let count = parabola_count(&pencil, chart)?.count;
    let expected = if sp.species == Species::First { 2 } else { 0 };
    if count != expected {
        return fail(format!("{count} parabolas for a quadrangle of the {:?} species", sp.species));
    }
    Ok(Status::PassExact)
}

fn from_tri(vs: &[TriVerdict], what: &str) -> Check {
    if let Some(bad) = vs.iter().position(|v| !v.holds()) {
        return fail(format!("{what}: case {bad} fails"));
    }
    let precision = vs.iter().filter_map(|v| match v {
        TriVerdict::Certified { precision, .. } => Some(*precision),
        TriVerdict::Exact(_) => None,
    });
    Ok(match precision.max() {
        None => Status::PassExact,
        Some(p) => Status::PassCertified { precision: p, bound: format!("2^-{}", p / 2) },
    })
}

fn triangle(scene: &Scene) -> Result<&Triangle, &'static str> {
    scene.triangle.as_ref().ok_or("scene has no triangle")
}

fn feuerbach(scene: &Scene) -> Check {
    let t = need!(triangle(scene));
    if !scene.chart.is_standard() {
        return skip("metric checks need the standard chart");
    }
    from_tri(&feuerbach_from(t, scene.precision)?, "nine-point circle tangency")
}

fn loria(scene: &Scene) -> Check {
    let t = need!(triangle(scene));
    if !scene.chart.is_standard() {
        return skip("metric checks need the standard chart");
    }
    let one = loria_i_from(t, scene.precision)?;
    let two = loria_ii_from(t, &int(1), &int(2), Bisector::Internal, scene.precision)?.verdict;
    from_tri(&[one, two], "Loria")
}

fn sixteen(scene: &Scene) -> Check {
    let (q, r) = need!(quad_and_line(scene));
    if let Some(reason) = generic_transversal(q, r) {
        return skip(reason);
    }
    match sixteen_conics(q, r)? {
        SixteenOutcome::ComplexContact => skip("complex contact"),
        SixteenOutcome::Found(s) => {
            if s.total() != 16 {
                return fail(format!("r = {r}: {} inscribed conics found", s.total()));
            }
            if !s.all_tangent() {
                return fail(format!("r = {r}: a conic is not tangent to the nine-point conic"));
            }
            Ok(Status::PassExact)
        }
    }
}

fn envelope(scene: &Scene) -> Check {
    let (q, r) = need!(quad_and_line(scene));
    let f = QuadraticMap::new(q)?;
    let fam = make_family(&f, r)?;
    let rep = envelope_report(&fam)?;
    if !rep.passes() {
        return fail(format!(
            "R = {r}: quartic {} with {:?}, dual {} with {:?}, class {}, routes agree: {}",
            rep.quartic.curve, rep.quartic_census, rep.dual.curve, rep.dual_census, rep.class, rep.routes_agree
        ));
    }
    if let Err(e) = &rep.bitangent {
        return fail(format!("R = {r}: bitangent check: {e}"));
    }
    Ok(Status::PassExact)
}

fn extremal(scene: &Scene) -> Check {
    let q = need!(scene.quadrangle.as_ref().ok_or("scene has no quadrangle"));
    let chart = &scene.chart;
    let v = q.vertices();
    let lines = [join(&v[0], &v[1])?, join(&v[1], &v[2])?, join(&v[2], &v[3])?, join(&v[3], &v[0])?];
    let g = inscribed_center_on_gauss(&lines, chart)?;
    if !g.all_on {
        return fail(format!("an inscribed center is off the Gauss locus {:?}", g.locus));
    }
    match max_area_inscribed(&lines, chart, CentroidReading::SixVertices) {
        Ok(m) => {
            if m.is_generic() && m.midpoint_is_centroid == Some(false) {
                return fail(format!("midpoint {:?} of the critical centers is not the centroid {:?}", m.midpoint, m.centroid));
            }
        }
        Err(GeomError::NoCriticalPoint) => {}
        Err(e) => return Err(e),
    }
    match min_area_circumscribed(q, chart) {
        Ok(m) if !m.center_on_gamma => return fail("circumscribed centers off the nine-point conic".into()),
        Ok(_) | Err(GeomError::NoEllipseMembers) | Err(GeomError::NoCriticalPoint) => {}
        Err(e) => return Err(e),
    }
    Ok(Status::PassExact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::parse_scene;

    fn run(text: &str, id: &str) -> Status {
        check(&parse_scene(text).unwrap(), id)
    }

    #[test]
    fn pythagorean_feuerbach_is_exact() {
        let s = r#"{"points":{"A":[0,0],"B":[4,0],"C":[0,3]},"triangle":["A","B","C"]}"#;
        assert_eq!(run(s, "feuerbach"), Status::PassExact);
        assert_eq!(run(s, "loria"), Status::PassExact);
    }

    #[test]
    fn general_triangle_is_certified() {
        let s = r#"{"points":{"A":[0,0],"B":[5,0],"C":[1,3]},"triangle":["A","B","C"]}"#;
        assert!(matches!(run(s, "feuerbach"), Status::PassCertified { .. }));
    }

    #[test]
    fn complex_contact_is_skipped() {
        let s = r#"{"points":{"A":[0,0],"B":[4,0],"C":[1,3],"D":["orthocenter","A","B","C"]},
            "quadrangle":["A","B","C","D"],"transversal":"infinity"}"#;
        assert_eq!(run(s, "sixteen"), Status::Skipped { reason: "complex contact".into() });
    }

    #[test]
    fn quadrangle_suites() {
        let s = r#"{"points":{"A":[0,0],"B":[4,0],"C":[5,3],"D":[1,4]},"quadrangle":["A","B","C","D"],"transversal":[1,2,5]}"#;
        for id in ["nine-points", "steiner", "involution", "cremona", "trudi", "envelope", "extremal"] {
            assert_eq!(run(s, id), Status::PassExact, "{id}");
        }
    }

    #[test]
    fn missing_objects_skip() {
        let s = r#"{"points":{"A":[0,0]}}"#;
        assert!(matches!(run(s, "nine-points"), Status::Skipped { .. }));
        assert!(matches!(run(s, "feuerbach"), Status::Skipped { .. }));
    }

    #[test]
    fn suite_expansion() {
        assert_eq!(expand_suite(&["all".into()]).unwrap().len(), THEOREMS.len());
        assert!(expand_suite(&["nope".into()]).is_err());
    }
}
