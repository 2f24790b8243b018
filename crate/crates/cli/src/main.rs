use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ninepoint::conic::classify;
use ninepoint::cremona::{PlaneCurve, QuadraticMap};
use ninepoint::envelope::{envelope_report, make_family};
use ninepoint::extremal::{GaussLocus, inscribed_center_on_gauss, max_area_inscribed, min_area_circumscribed, CentroidReading};
use ninepoint::plane::{join, HPoint};
use ninepoint::quadrangle::{gauss_line, npc_cremona, npc_harmonic_six, npc_pole_locus, species, Quadrangle};
use ninepoint::scalar::{parse_rational, Rational};
use num_traits::ToPrimitive;
use ninepoint_cli::random::{random_scenes, Kind};
use ninepoint_cli::render::{render_svg, Figure, RenderError, RenderOptions};
use ninepoint_cli::scene::{parse_scenes, point_label, serialize_scenes, Scene};
use ninepoint_cli::verify::{expand_suite, run_verify};

#[derive(Parser)]
#[command(name = "ninepoint", version, about = "Nine-point conics of complete quadrangles, checked exactly")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Resolve a scene and print its derived objects.
    Construct {
        scene: PathBuf,
        /// Print the scene in canonical form instead.
        #[arg(long)]
        canonical: bool,
    },
    /// Run theorem suites; exit 0 all pass, 1 fail, 2 input error, 3 undecidable.
    Verify {
        scene: PathBuf,
        /// Theorem ids, comma separated, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        /// Write the verdicts as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Starting precision of certified checks.
        #[arg(long)]
        precision_bits: Option<u32>,
        /// Record wall-clock time per verdict.
        #[arg(long)]
        timing: bool,
    },
    /// Image of a curve under the quadratic transformation of a quadrangle.
    Transform {
        /// Homogeneous polynomial in x, y, z.
        #[arg(long)]
        curve: String,
        /// Scene providing the quadrangle.
        #[arg(long, conflicts_with = "quadrangle")]
        scene: Option<PathBuf>,
        /// Four points `x,y;x,y;x,y;x,y` (or homogeneous `x,y,z`).
        #[arg(long)]
        quadrangle: Option<String>,
    },
    /// Envelope of the lines joining the points of the transversal to their images.
    Envelope { scene: PathBuf },
    /// Area problems for the quadrilateral ABCD and the quadrangle.
    Extremal {
        scene: PathBuf,
        #[arg(long, value_enum, default_value = "six")]
        centroid: Centroid,
    },
    /// Seeded random scenes.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value = "first")]
        kind: Kind,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a figure as SVG.
    Render {
        scene: PathBuf,
        #[arg(long, value_enum)]
        figure: Figure,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Chord tolerance as a fraction of the viewport.
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
        /// World window `xmin,ymin,xmax,ymax`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        viewport: Option<Vec<f64>>,
        #[arg(long, default_value_t = 800)]
        size: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Centroid {
    Six,
    Four,
}

/// Errors in the input rather than in the mathematics.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct InputError(String);

fn input<E: std::fmt::Display>(e: E) -> anyhow::Error {
    InputError(e.to_string()).into()
}

fn load(path: &Path) -> Result<Vec<Scene>> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let specs = parse_scenes(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    specs.iter().map(|s| s.resolve().map_err(|e| input(format!("{}: {e}", path.display())))).collect()
}

fn load_one(path: &Path) -> Result<Scene> {
    let mut v = load(path)?;
    if v.len() != 1 {
        return Err(input(format!("{}: expected one scene, found {}", path.display(), v.len())));
    }
    Ok(v.remove(0))
}

fn write_out(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn quadrangle(scene: &Scene) -> Result<&Quadrangle> {
    scene.quadrangle.as_ref().ok_or_else(|| input("scene has no quadrangle"))
}

fn construct(scenes: &[Scene]) -> Result<()> {
    for (i, s) in scenes.iter().enumerate() {
        println!("# {}", s.spec.name.clone().unwrap_or_else(|| format!("scene-{i}")));
        for (n, p) in &s.points {
            println!("{n} = {}", point_label(p, &s.chart));
        }
        for (n, l) in &s.lines {
            println!("{n}: {l}");
        }
        let Some(q) = &s.quadrangle else { continue };
        for (p, n) in q.fundamental().iter().zip(["E", "F", "G"]) {
            println!("{n} = {}", point_label(p, &s.chart));
        }
        if let Ok(sp) = species(q, &s.chart) {
            println!("species: {}, orthogonal: {}, cyclic: {}", format!("{:?}", sp.species).to_lowercase(), sp.orthogonal, sp.cyclic);
        }
        match gauss_line(q, &s.chart) {
            Ok(g) => println!("Gauss line: {g}"),
            Err(e) => println!("Gauss line: {e}"),
        }
        if let Ok(g) = npc_pole_locus(q, &s.chart.infinity, true) {
            let c = classify(&g.conic, &s.chart);
            let kind = c.kind.map_or("degenerate".to_string(), |k| format!("{k:?}").to_lowercase());
            println!("Steiner conic: {} ({kind}, circle: {}, equilateral: {})", g.conic, c.is_circle, c.is_equilateral);
        }
        if let Some(r) = &s.transversal {
            let a = npc_pole_locus(q, r, true);
            let b = npc_harmonic_six(q, r, true);
            let c = npc_cremona(q, r);
            match (a, b, c) {
                (Ok(a), Ok(b), Ok(c)) => {
                    println!("nine-point conic of {r}: {}", a.conic);
                    println!("constructions agree: {}", a.conic == b.conic && a.conic == c.conic);
                }
                (a, _, _) => println!("nine-point conic of {r}: {}", a.map(|g| g.conic.to_string()).unwrap_or_else(|e| e.to_string())),
            }
        }
    }
    Ok(())
}

fn parse_quadrangle(text: &str) -> Result<Quadrangle> {
    let pts: Vec<HPoint> = text
        .split(';')
        .map(|p| {
            let parts: Vec<&str> = p.split(',').map(str::trim).collect();
            let nums = parts.iter().map(|s| parse_rational(s)).collect::<std::result::Result<Vec<_>, _>>().map_err(input)?;
            match nums.len() {
                2 => Ok(HPoint::affine(nums[0].clone(), nums[1].clone())),
                3 => HPoint::new([nums[0].clone(), nums[1].clone(), nums[2].clone()]).map_err(input),
                _ => Err(input(format!("bad point {p:?}"))),
            }
        })
        .collect::<Result<_>>()?;
    let pts: [HPoint; 4] = pts.try_into().map_err(|_| input("expected four points"))?;
    Quadrangle::new(pts).map_err(input)
}

fn transform(curve: &str, q: &Quadrangle) -> Result<()> {
    let c = PlaneCurve::parse(curve).map_err(input)?;
    let f = QuadraticMap::new(q)?;
    let img = f.transform_curve(&c)?;
    println!("{img}");
    eprintln!("degree {} -> {}", c.degree(), img.degree());
    Ok(())
}

fn envelope(scene: &Scene) -> Result<()> {
    let q = quadrangle(scene)?;
    let r = scene.transversal.as_ref().ok_or_else(|| input("scene has no transversal"))?;
    let fam = make_family(&QuadraticMap::new(q)?, r)?;
    let rep = envelope_report(&fam)?;
    println!("quartic: {}", rep.quartic.curve);
    for s in &rep.quartic.stripped {
        println!("  stripped {s}");
    }
    println!("  singular points: {} cusps, {} nodes, {} higher", rep.quartic_census.cusps, rep.quartic_census.nodes, rep.quartic_census.higher);
    println!("  class: {}", rep.class);
    println!("dual cubic: {}", rep.dual.curve);
    println!("  singular points: {} nodes, {} cusps", rep.dual_census.nodes, rep.dual_census.cusps);
    println!("pointwise construction agrees: {}", rep.routes_agree);
    match &rep.bitangent {
        Ok(b) => println!("bitangent: {} (real contact: {})", b.line, b.real_contact),
        Err(e) => println!("bitangent: {e}"),
    }
    if !rep.passes() {
        bail!("envelope checks failed");
    }
    Ok(())
}

fn extremal(scene: &Scene, centroid: Centroid) -> Result<()> {
    let q = quadrangle(scene)?;
    let chart = &scene.chart;
    let v = q.vertices();
    let lines = [join(&v[0], &v[1])?, join(&v[1], &v[2])?, join(&v[2], &v[3])?, join(&v[3], &v[0])?];
    let g = inscribed_center_on_gauss(&lines, chart)?;
    let locus = match &g.locus {
        GaussLocus::Line(l) => format!("line {l}"),
        GaussLocus::Point(p) => format!("point {}", point_label(p, chart)),
    };
    println!("Gauss locus: {locus}; {} inscribed centers on it: {}", g.members, g.all_on);
    let reading = match centroid {
        Centroid::Six => CentroidReading::SixVertices,
        Centroid::Four => CentroidReading::FourVertices,
    };
    match max_area_inscribed(&lines, chart, reading) {
        Ok(m) => {
            for s in &m.stationary {
                println!(
                    "stationary {} at t = {}: squared area / pi^2 = {} ({:?}), center ({}, {})",
                    format!("{:?}", s.kind).to_lowercase(),
                    s.t,
                    s.area2,
                    s.local,
                    s.center.0,
                    s.center.1
                );
            }
            if let (Some(mid), Some(c)) = (&m.midpoint, &m.centroid) {
                println!("midpoint of centers ({}, {}) vs centroid ({}, {}): {}", mid.0, mid.1, c.0, c.1, m.midpoint_is_centroid == Some(true));
            }
        }
        Err(e) => println!("inscribed: {e}"),
    }
    match min_area_circumscribed(q, chart) {
        Ok(m) => {
            match &m.exact {
                Some(c) => println!("minimum circumscribed: {c}"),
                None => {
                    let mid = (&m.parameter.root.lo + &m.parameter.root.hi) / Rational::from_integer(2.into());
                    println!("minimum circumscribed: t = {:.12} root of {}", mid.to_f64().unwrap_or(f64::NAN), m.parameter.poly);
                    let rows: Vec<String> = m.approx.iter().map(|r| format!("[{:.9}, {:.9}, {:.9}]", r[0], r[1], r[2])).collect();
                    println!("  matrix ~ [{}]", rows.join(", "));
                }
            }
            println!("  centers on the nine-point conic: {}", m.center_on_gamma);
        }
        Err(e) => println!("circumscribed: {e}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Construct { scene, canonical } => {
            if canonical {
                let text = fs::read_to_string(&scene).map_err(|e| input(format!("{}: {e}", scene.display())))?;
                let specs = parse_scenes(&text).map_err(input)?;
                for s in &specs {
                    s.resolve().map_err(input)?;
                }
                print!("{}", serialize_scenes(&specs));
            } else {
                construct(&load(&scene)?)?;
            }
        }
        Cmd::Verify { scene, suite, report, precision_bits, timing } => {
            let mut scenes = load(&scene)?;
            if let Some(p) = precision_bits {
                for s in &mut scenes {
                    s.precision = p;
                }
            }
            let suite = expand_suite(&suite).map_err(input)?;
            let rep = run_verify(&scenes, &suite, timing);
            for s in &rep.scenes {
                for v in &s.verdicts {
                    let detail = match &v.status {
                        ninepoint_cli::verify::Status::Fail { witness } => format!("  {witness}"),
                        ninepoint_cli::verify::Status::Skipped { reason } => format!("  ({reason})"),
                        ninepoint_cli::verify::Status::PassCertified { precision, .. } => format!("  ({precision} bits)"),
                        _ => String::new(),
                    };
                    println!("{}  {}  {}{}", s.scene, v.theorem, v.status.label(), detail);
                }
            }
            let sm = &rep.summary;
            println!("pass {}, fail {}, skipped {}, undecidable {}", sm.pass, sm.fail, sm.skipped, sm.undecidable);
            if let Some(path) = report {
                let mut text = serde_json::to_string_pretty(&rep)?;
                text.push('\n');
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            return Ok(rep.exit_code());
        }
        Cmd::Transform { curve, scene, quadrangle: qtext } => {
            let q = match (scene, qtext) {
                (Some(p), _) => quadrangle(&load_one(&p)?)?.clone(),
                (None, Some(t)) => parse_quadrangle(&t)?,
                (None, None) => return Err(input("give --scene or --quadrangle")),
            };
            transform(&curve, &q)?;
        }
        Cmd::Envelope { scene } => envelope(&load_one(&scene)?)?,
        Cmd::Extremal { scene, centroid } => extremal(&load_one(&scene)?, centroid)?,
        Cmd::Random { seed, count, kind, output } => {
            write_out(output.as_deref(), &serialize_scenes(&random_scenes(seed, count, kind)))?;
        }
        Cmd::Render { scene, figure, output, tolerance, viewport, size } => {
            let s = load_one(&scene)?;
            let viewport = match viewport {
                Some(v) if v.len() != 4 || v[0] >= v[2] || v[1] >= v[3] => {
                    return Err(input("--viewport takes xmin,ymin,xmax,ymax with xmin < xmax and ymin < ymax"))
                }
                v => v.map(|v| [v[0], v[1], v[2], v[3]]),
            };
            let svg = render_svg(&s, figure, &RenderOptions { tolerance, viewport, size }).map_err(|e| match e {
                RenderError::Missing(_) => input(e),
                e => e.into(),
            })?;
            write_out(output.as_deref(), &svg)?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else if matches!(e.downcast_ref::<ninepoint::GeomError>(), Some(ninepoint::GeomError::Undecidable(_))) {
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
