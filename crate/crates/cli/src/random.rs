//! Seeded random scenes.

use ninepoint::plane::{Chart, HLine, HPoint};
use ninepoint::quadrangle::{species, Quadrangle, Species};
use ninepoint::scalar::{int, Rational};
use ninepoint::triangle::{orthocenter, Triangle};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scene::{LineSpec, PointSpec, SceneSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    /// Vertices in convex position.
    First,
    /// One vertex inside the triangle of the others.
    Second,
    /// A triangle and its orthocenter.
    Orthogonal,
    /// Four points on a circle.
    Cyclic,
}

const NAMES: [&str; 4] = ["A", "B", "C", "D"];

fn coord(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-9..=9)
}

fn affine(x: Rational, y: Rational) -> PointSpec {
    PointSpec::Affine([x, y])
}

/// Four points of the requested kind, or `None` to draw again.
fn draw_points(rng: &mut ChaCha8Rng, kind: Kind) -> Option<Vec<PointSpec>> {
    let chart = Chart::default();
    match kind {
        Kind::First | Kind::Second => {
            let pts: Vec<(i64, i64)> = (0..4).map(|_| (coord(rng), coord(rng))).collect();
            let h: [HPoint; 4] = std::array::from_fn(|i| HPoint::from_ints(pts[i].0, pts[i].1, 1));
            let q = Quadrangle::new(h).ok()?;
            let want = if kind == Kind::First { Species::First } else { Species::Second };
            (species(&q, &chart).ok()?.species == want)
                .then(|| pts.iter().map(|&(x, y)| affine(int(x), int(y))).collect())
        }
        Kind::Orthogonal => {
            let pts: Vec<(i64, i64)> = (0..3).map(|_| (coord(rng), coord(rng))).collect();
            let t = Triangle::from_xy([pts[0], pts[1], pts[2]]).ok()?;
            let h = orthocenter(&t);
            let mut v: Vec<HPoint> = t.vertices().to_vec();
            v.push(h);
            Quadrangle::new(v.try_into().unwrap()).ok()?;
            let mut out: Vec<PointSpec> = pts.iter().map(|&(x, y)| affine(int(x), int(y))).collect();
            out.push(PointSpec::Directive { op: "orthocenter".into(), args: vec!["A".into(), "B".into(), "C".into()] });
            Some(out)
        }
        Kind::Cyclic => {
            // lattice points of a circle with integer center
            let (cx, cy, r2) = (coord(rng), coord(rng), rng.gen_range(1..=50i64));
            let mut on: Vec<(i64, i64)> = (-9..=9)
                .flat_map(|x| (-9..=9).map(move |y| (x, y)))
                .filter(|&(x, y)| (x - cx).pow(2) + (y - cy).pow(2) == r2)
                .collect();
            if on.len() < 4 {
                return None;
            }
            on.shuffle(rng);
            Some(on[..4].iter().map(|&(x, y)| affine(int(x), int(y))).collect())
        }
    }
}

fn draw_transversal(rng: &mut ChaCha8Rng, q: &Quadrangle) -> Option<[Rational; 3]> {
    let c = [coord(rng), coord(rng), coord(rng)];
    let l = HLine::new(c.map(int)).ok()?;
    if l == HLine::infinity() || q.vertices().iter().any(|v| v.on(&l)) || q.fundamental().iter().any(|f| f.on(&l)) {
        return None;
    }
    Some(l.to_vec())
}

/// `count` scenes drawn from `seed`, each with a quadrangle `ABCD`, a
/// generic transversal and the triangle `ABC`.
pub fn random_scenes(seed: u64, count: usize, kind: Kind) -> Vec<SceneSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    while out.len() < count {
        let Some(points) = draw_points(&mut rng, kind) else { continue };
        let spec = SceneSpec {
            name: Some(format!("{kind:?}-{seed}-{}", out.len()).to_lowercase()),
            points: NAMES.iter().map(|n| n.to_string()).zip(points).collect(),
            quadrangle: Some(NAMES.map(String::from)),
            triangle: Some(["A", "B", "C"].map(String::from)),
            ..Default::default()
        };
        let Ok(scene) = spec.resolve() else { continue };
        let q = scene.quadrangle.unwrap();
        let r = loop {
            if let Some(r) = draw_transversal(&mut rng, &q) {
                break r;
            }
        };
        out.push(SceneSpec { transversal: Some(LineSpec::Coords(r)), ..spec });
    }
    out
}
