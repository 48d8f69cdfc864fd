//! Piecewise-linear arcs between the branch points `a < b < 0` in the
//! punctured plane, their crossing invariants, the half-rotation flop and
//! the Dehn twist.
//!
//! All predicates are exact. Only the annulus interpolation evaluates
//! trigonometric functions; its output is rounded to the dyadic grid
//! `2^-20 ℤ²` and then re-validated exactly.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q, qf, to_f64, Q};

const GRID_BITS: i32 = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pt {
    pub x: Q,
    pub y: Q,
}

impl Pt {
    pub fn new(x: Q, y: Q) -> Self {
        Pt { x, y }
    }

    fn real(x: Q) -> Self {
        Pt { x, y: Q::zero() }
    }

    fn sub(&self, o: &Pt) -> Pt {
        Pt::new(&self.x - &o.x, &self.y - &o.y)
    }

    fn norm2(&self) -> Q {
        &self.x * &self.x + &self.y * &self.y
    }

    fn f64s(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }

    fn on_grid(x: f64, y: f64) -> Pt {
        let s = f64::from(2.0f64.powi(GRID_BITS));
        let r = |v: f64| Q::new(num_bigint::BigInt::from((v * s).round() as i64), num_bigint::BigInt::from(1i64 << GRID_BITS));
        Pt::new(r(x), r(y))
    }
}

/// `(b - a) × (c - a)`.
fn orient(a: &Pt, b: &Pt, c: &Pt) -> Ordering {
    let u = b.sub(a);
    let v = c.sub(a);
    (&u.x * &v.y - &u.y * &v.x).cmp(&Q::zero())
}

fn on_segment(p: &Pt, a: &Pt, b: &Pt) -> bool {
    let (lox, hix) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (loy, hiy) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    orient(a, b, p) == Ordering::Equal && lox <= &p.x && &p.x <= hix && loy <= &p.y && &p.y <= hiy
}

fn segments_intersect(p1: &Pt, p2: &Pt, q1: &Pt, q2: &Pt) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if d1 != d2 && d3 != d4 && d1 != Ordering::Equal && d2 != Ordering::Equal && d3 != Ordering::Equal && d4 != Ordering::Equal
    {
        return true;
    }
    on_segment(p1, q1, q2) || on_segment(p2, q1, q2) || on_segment(q1, p1, p2) || on_segment(q2, p1, p2)
}

/// Squared distance from the origin to the segment `[p, q]`.
fn dist2_origin(p: &Pt, q: &Pt) -> Q {
    let d = q.sub(p);
    let l2 = d.norm2();
    if l2.is_zero() {
        return p.norm2();
    }
    let t = -(&p.x * &d.x + &p.y * &d.y) / &l2;
    let t = if t < Q::zero() {
        Q::zero()
    } else if t > Q::one() {
        Q::one()
    } else {
        t
    };
    Pt::new(&p.x + &t * &d.x, &p.y + &t * &d.y).norm2()
}

/// Branch points, the flop disk and the clearance around the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SceneConfig {
    pub a: Q,
    pub b: Q,
    pub r1: Q,
    pub r2: Q,
    pub eps: Q,
}

impl SceneConfig {
    pub fn new(a: Q, b: Q, r1: Q, r2: Q, eps: Q) -> Result<Self> {
        let bad = |m: &str| Err(Error::BadInput(format!("scene: {m}")));
        if !(a < b && b < Q::zero()) {
            return bad("need a < b < 0");
        }
        let half_gap = (&b - &a) / q(2);
        let c0_abs = -(&a + &b) / q(2);
        if r1 <= half_gap {
            return bad("R1 must exceed (b - a)/2");
        }
        if r2 <= r1 {
            return bad("need R1 < R2");
        }
        if r2 >= c0_abs {
            return bad("R2 must be below |a + b|/2");
        }
        if eps <= Q::zero() || eps >= &c0_abs - &r2 {
            return bad("clearance must be positive and keep the origin outside the flop disk");
        }
        Ok(SceneConfig { a, b, r1, r2, eps })
    }

    /// `a = -3`, `b = -1`, `R1 = 5/4`, `R2 = 7/4`, `ε = 1/8`.
    pub fn standard() -> Self {
        SceneConfig::new(q(-3), q(-1), qf(5, 4), qf(7, 4), qf(1, 8)).expect("valid scene")
    }

    pub fn c0(&self) -> Q {
        (&self.a + &self.b) / q(2)
    }

    fn endpoint(&self, p: &Pt) -> Option<Endpoint> {
        if !p.y.is_zero() {
            None
        } else if p.x == self.a {
            Some(Endpoint::A)
        } else if p.x == self.b {
            Some(Endpoint::B)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> SceneJson {
        SceneJson {
            a: fmt_q(&self.a),
            b: fmt_q(&self.b),
            r1: fmt_q(&self.r1),
            r2: fmt_q(&self.r2),
            eps: fmt_q(&self.eps),
        }
    }

    pub fn from_json(j: &SceneJson) -> Result<Self> {
        SceneConfig::new(parse_q(&j.a)?, parse_q(&j.b)?, parse_q(&j.r1)?, parse_q(&j.r2)?, parse_q(&j.eps)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SceneJson {
    pub a: String,
    pub b: String,
    #[serde(rename = "R1")]
    pub r1: String,
    #[serde(rename = "R2")]
    pub r2: String,
    pub eps: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Endpoint {
    A,
    B,
}

/// A simple PL arc from one branch point to the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLArc {
    points: Vec<Pt>,
    orientation: i8,
}

impl PLArc {
    /// Validated arc.
    pub fn new(points: Vec<Pt>, orientation: i8, cfg: &SceneConfig) -> Result<Self> {
        let arc = PLArc { points, orientation };
        arc.validate(cfg)?;
        Ok(arc)
    }

    pub fn points(&self) -> &[Pt] {
        &self.points
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    /// Endpoints at `a` and `b`, no repeated vertices, simple, and every
    /// segment at distance ≥ ε from the origin.
    pub fn validate(&self, cfg: &SceneConfig) -> Result<()> {
        let bad = |m: String| Err(Error::BadInput(format!("arc: {m}")));
        if self.orientation != 1 && self.orientation != -1 {
            return bad("orientation must be ±1".into());
        }
        let n = self.points.len();
        if n < 2 {
            return bad("needs at least two vertices".into());
        }
        match (cfg.endpoint(&self.points[0]), cfg.endpoint(&self.points[n - 1])) {
            (Some(s), Some(e)) if s != e => {}
            _ => return bad("must run from a to b or from b to a".into()),
        }
        let eps2 = &cfg.eps * &cfg.eps;
        for i in 0..n - 1 {
            if self.points[i] == self.points[i + 1] {
                return bad(format!("repeated vertex at position {i}"));
            }
            if dist2_origin(&self.points[i], &self.points[i + 1]) < eps2 {
                return bad(format!("segment {i} passes within ε of the origin"));
            }
        }
        // Adjacent segments must not fold back onto each other.
        for i in 0..n.saturating_sub(2) {
            let (p, m, r) = (&self.points[i], &self.points[i + 1], &self.points[i + 2]);
            if orient(p, m, r) == Ordering::Equal {
                let u = m.sub(p);
                let v = r.sub(m);
                if &u.x * &v.x + &u.y * &v.y < Q::zero() {
                    return bad(format!("segments {i} and {} overlap", i + 1));
                }
            }
        }
        let boxes: Vec<[f64; 4]> = (0..n - 1)
            .map(|i| {
                let (x1, y1) = self.points[i].f64s();
                let (x2, y2) = self.points[i + 1].f64s();
                [x1.min(x2) - 1e-9, x1.max(x2) + 1e-9, y1.min(y2) - 1e-9, y1.max(y2) + 1e-9]
            })
            .collect();
        for i in 0..n - 1 {
            for j in i + 2..n - 1 {
                let (bi, bj) = (&boxes[i], &boxes[j]);
                if bi[1] < bj[0] || bj[1] < bi[0] || bi[3] < bj[2] || bj[3] < bi[2] {
                    continue;
                }
                if segments_intersect(&self.points[i], &self.points[i + 1], &self.points[j], &self.points[j + 1]) {
                    return bad(format!("segments {i} and {j} intersect"));
                }
            }
        }
        Ok(())
    }

    pub fn start(&self, cfg: &SceneConfig) -> Endpoint {
        cfg.endpoint(&self.points[0]).expect("validated")
    }

    pub fn reversed(&self) -> PLArc {
        let mut points = self.points.clone();
        points.reverse();
        PLArc {
            points,
            orientation: -self.orientation,
        }
    }

    /// Same curve with every segment split into pieces of length ≤ `h`
    /// (measured in the max norm), using exact midpoints.
    pub fn refined(&self, h: &Q) -> PLArc {
        let mut out = vec![self.points[0].clone()];
        for w in self.points.windows(2) {
            let d = w[1].sub(&w[0]);
            let len = d.x.abs().max(d.y.abs());
            let mut parts = 1u64;
            while len.clone() / Q::from_integer(parts.into()) > *h {
                parts *= 2;
            }
            for k in 1..=parts {
                let t = Q::new(k.into(), parts.into());
                out.push(Pt::new(&w[0].x + &t * &d.x, &w[0].y + &t * &d.y));
            }
        }
        PLArc {
            points: out,
            orientation: self.orientation,
        }
    }

    pub fn to_json(&self) -> ArcJson {
        ArcJson {
            points: self.points.iter().map(|p| [fmt_q(&p.x), fmt_q(&p.y)]).collect(),
            orientation: self.orientation,
        }
    }

    pub fn from_json(j: &ArcJson, cfg: &SceneConfig) -> Result<Self> {
        let pts = j
            .points
            .iter()
            .map(|[x, y]| Ok(Pt::new(parse_q(x)?, parse_q(y)?)))
            .collect::<Result<Vec<_>>>()?;
        PLArc::new(pts, j.orientation, cfg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub points: Vec<[String; 2]>,
    pub orientation: i8,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArcLabel {
    /// Sphere `S_k`.
    S(i32),
    /// Sphere `S'_k` of the flopped side.
    SPrime(i32),
}

impl ArcLabel {
    /// Parses `S_2`, `S2`, `S'_-1`, `Sp-1`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::BadInput(format!("unknown arc label {s:?}"));
        let t = s.trim();
        let (prime, rest) = if let Some(r) = t.strip_prefix("S'").or_else(|| t.strip_prefix("Sp")) {
            (true, r)
        } else if let Some(r) = t.strip_prefix('S') {
            (false, r)
        } else {
            return Err(bad());
        };
        let k: i32 = rest.trim_start_matches('_').parse().map_err(|_| bad())?;
        Ok(if prime { ArcLabel::SPrime(k) } else { ArcLabel::S(k) })
    }

    pub fn name(&self) -> String {
        match self {
            ArcLabel::S(k) => format!("S_{k}"),
            ArcLabel::SPrime(k) => format!("S'_{k}"),
        }
    }
}

pub const CATALOG_RANGE: std::ops::RangeInclusive<i32> = -3..=3;
const SAMPLES_PER_TURN: usize = 48;

/// Log-linear spiral from radius `|from|` to `|to|` with argument running
/// from `θ0` to `θ0 + 2π·turns`; endpoints exact.
fn spiral(from: &Q, to: &Q, theta0: f64, turns: i32) -> Vec<Pt> {
    let (r0, r1) = (to_f64(from).abs(), to_f64(to).abs());
    let m = SAMPLES_PER_TURN * turns.unsigned_abs() as usize;
    let mut pts = vec![Pt::real(from.clone())];
    for j in 1..=m {
        // Half-step offsets keep interior vertices off the real axis.
        let t = (j as f64 - 0.5) / m as f64;
        let r = r0.powf(1.0 - t) * r1.powf(t);
        let th = theta0 + 2.0 * PI * f64::from(turns) * t;
        pts.push(Pt::on_grid(r * th.cos(), r * th.sin()));
    }
    pts.push(Pt::real(to.clone()));
    pts
}

/// Shipped digitization. `S_k` starts at `a` and winds `k` times around the
/// origin before reaching `b`; `S'_j` starts at `b` and winds `-j` times
/// before reaching `a`. `S_0` and `S'_0` are the straight segment.
pub fn catalog_arc(label: ArcLabel, cfg: &SceneConfig) -> Result<PLArc> {
    let k = match label {
        ArcLabel::S(k) | ArcLabel::SPrime(k) => k,
    };
    if !CATALOG_RANGE.contains(&k) {
        return Err(Error::BadInput(format!("{} outside -3..=3", label.name())));
    }
    let pts = match label {
        ArcLabel::S(0) => vec![Pt::real(cfg.a.clone()), Pt::real(cfg.b.clone())],
        ArcLabel::SPrime(0) => vec![Pt::real(cfg.b.clone()), Pt::real(cfg.a.clone())],
        ArcLabel::S(k) => spiral(&cfg.a, &cfg.b, -PI, k),
        ArcLabel::SPrime(j) => spiral(&cfg.b, &cfg.a, PI, -j),
    };
    PLArc::new(pts, 1, cfg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcInvariants {
    /// Signed crossings with the positive real axis, `+1` when crossing upward.
    pub ray_crossings: i64,
    /// Crossings with the open segment `(a, b)`.
    pub seg_crossings: u64,
    pub start: Endpoint,
    pub orientation: i8,
}

/// Pieces of the real axis cut at `a`, `b` and `0`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxisPiece {
    BelowA,
    Seg,
    BetweenBAndOrigin,
    Ray,
}

/// Crossings with the real axis in order along the arc, as `(piece, ±1)`.
fn axis_crossings(arc: &PLArc, cfg: &SceneConfig) -> Result<Vec<(AxisPiece, i8)>> {
    let pts = &arc.points;
    let n = pts.len();
    let interior = &pts[1..n - 1];
    if interior.is_empty() || interior.iter().all(|p| p.y.is_zero()) {
        // A path along the real axis between the endpoints.
        if interior.iter().all(|p| cfg.a < p.x && p.x < cfg.b) {
            return Ok(Vec::new());
        }
        return Err(Error::Degenerate("arc runs along the real axis outside (a, b)".into()));
    }
    if let Some(p) = interior.iter().find(|p| p.y.is_zero()) {
        return Err(Error::Degenerate(format!(
            "vertex ({}, 0) lies on the real axis; perturb it off the axis",
            fmt_q(&p.x)
        )));
    }
    let mut out = Vec::new();
    for w in interior.windows(2) {
        let (p, r) = (&w[0], &w[1]);
        if p.y.is_positive() == r.y.is_positive() {
            continue;
        }
        let x = (&p.x * &r.y - &r.x * &p.y) / (&r.y - &p.y);
        let sign: i8 = if r.y.is_positive() { 1 } else { -1 };
        let piece = if x.is_zero() {
            return Err(Error::Degenerate("arc passes through the origin".into()));
        } else if x == cfg.a || x == cfg.b {
            return Err(Error::Degenerate("arc passes through a branch point".into()));
        } else if x > Q::zero() {
            AxisPiece::Ray
        } else if x > cfg.b {
            AxisPiece::BetweenBAndOrigin
        } else if x > cfg.a {
            AxisPiece::Seg
        } else {
            AxisPiece::BelowA
        };
        out.push((piece, sign));
    }
    Ok(out)
}

pub fn invariants(arc: &PLArc, cfg: &SceneConfig) -> Result<ArcInvariants> {
    let xs = axis_crossings(arc, cfg)?;
    Ok(ArcInvariants {
        ray_crossings: xs
            .iter()
            .filter(|c| c.0 == AxisPiece::Ray)
            .map(|c| i64::from(c.1))
            .sum(),
        seg_crossings: xs.iter().filter(|c| c.0 == AxisPiece::Seg).count() as u64,
        start: arc.start(cfg),
        orientation: arc.orientation,
    })
}

/// Axis-crossing word with adjacent inverse pairs cancelled; an isotopy
/// invariant of the arc relative to `{a, b, 0}`.
pub fn crossing_word(arc: &PLArc, cfg: &SceneConfig) -> Result<Vec<(AxisPiece, i8)>> {
    let mut stack: Vec<(AxisPiece, i8)> = Vec::new();
    for c in axis_crossings(arc, cfg)? {
        match stack.last() {
            Some(&(p, s)) if p == c.0 && s == -c.1 => {
                stack.pop();
            }
            _ => stack.push(c),
        }
    }
    Ok(stack)
}

/// How the closed inner disk is moved.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Inner {
    HalfTurn,
    Fixed,
}

const MAX_REFINE_ROUNDS: u32 = 4;

/// Rotation about `c0` by `angle·f(r)` with `f` falling linearly from 1 at
/// `R1` to 0 at `R2`; exact inside `R1` and outside `R2`.
fn zone_map(arc: &PLArc, cfg: &SceneConfig, angle: f64, inner: Inner) -> Result<PLArc> {
    let c0 = cfg.c0();
    let (r1sq, r2sq) = (&cfg.r1 * &cfg.r1, &cfg.r2 * &cfg.r2);
    let (r1, r2, c0f) = (to_f64(&cfg.r1), to_f64(&cfg.r2), to_f64(&c0));
    let map = |p: &Pt| -> Pt {
        let d = Pt::new(&p.x - &c0, p.y.clone());
        let n2 = d.norm2();
        if n2 <= r1sq {
            match inner {
                Inner::HalfTurn => Pt::new(&c0 + &c0 - &p.x, -p.y.clone()),
                Inner::Fixed => p.clone(),
            }
        } else if n2 >= r2sq {
            p.clone()
        } else {
            let (dx, dy) = d.f64s();
            let r = dx.hypot(dy);
            let th = angle * (r2 - r) / (r2 - r1);
            let (s, c) = th.sin_cos();
            Pt::on_grid(c0f + c * dx - s * dy, c * dy + s * dx)
        }
    };
    let mut h = qf(1, 16);
    let mut last_err = None;
    for _ in 0..MAX_REFINE_ROUNDS {
        let fine = arc.refined(&h);
        let pts: Vec<Pt> = fine.points.iter().map(map).collect();
        let mut dedup: Vec<Pt> = Vec::with_capacity(pts.len());
        for p in pts {
            if dedup.last() != Some(&p) {
                dedup.push(p);
            }
        }
        match PLArc::new(dedup, arc.orientation, cfg) {
            Ok(a) => return Ok(a),
            Err(e) => last_err = Some(e),
        }
        h /= q(4);
    }
    Err(Error::Degenerate(format!(
        "mapped arc failed validation after refinement: {}",
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}

/// Half-rotation about `c0`: `z ↦ 2c0 - z` on the inner disk, identity
/// outside `R2`, interpolated counterclockwise across the annulus.
pub fn flop_map(arc: &PLArc, cfg: &SceneConfig) -> Result<PLArc> {
    zone_map(arc, cfg, PI, Inner::HalfTurn)
}

/// Full turn across the annulus, identity on the inner disk. The inverse
/// twist turns counterclockwise, the same way as two flops.
pub fn dehn_twist_map(arc: &PLArc, cfg: &SceneConfig, inverse: bool) -> Result<PLArc> {
    let angle = if inverse { 2.0 * PI } else { -2.0 * PI };
    zone_map(arc, cfg, angle, Inner::Fixed)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseOrder {
    Greater,
    Less,
    Unspecified,
}

/// Comparison of `θ(S_i)` and `θ(S_j)`: `S_0` is maximal, `S_1` minimal,
/// phases decrease along `1 < i < j` and along `i < j < 0`; pairs across
/// the two chains are not ordered.
pub fn phase_order(i: i32, j: i32) -> Result<PhaseOrder> {
    use PhaseOrder::*;
    if i == j {
        return Err(Error::BadInput("phase_order needs distinct indices".into()));
    }
    Ok(if i == 0 {
        Greater
    } else if j == 0 {
        Less
    } else if i == 1 {
        Less
    } else if j == 1 {
        Greater
    } else if (i > 1 && j > 1) || (i < 0 && j < 0) {
        if i < j {
            Greater
        } else {
            Less
        }
    } else {
        Unspecified
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SceneConfig {
        SceneConfig::standard()
    }

    fn inv(label: ArcLabel) -> ArcInvariants {
        invariants(&catalog_arc(label, &cfg()).unwrap(), &cfg()).unwrap()
    }

    #[test]
    fn scene_validation() {
        assert!(SceneConfig::new(q(-1), q(-3), qf(5, 4), qf(7, 4), qf(1, 8)).is_err());
        assert!(SceneConfig::new(q(-3), q(-1), qf(1, 2), qf(7, 4), qf(1, 8)).is_err());
        assert!(SceneConfig::new(q(-3), q(-1), qf(5, 4), q(2), qf(1, 8)).is_err());
        assert_eq!(cfg().c0(), q(-2));
    }

    #[test]
    fn catalog_invariants() {
        let s0 = inv(ArcLabel::S(0));
        assert_eq!((s0.ray_crossings, s0.seg_crossings, s0.start), (0, 0, Endpoint::A));
        assert_eq!(inv(ArcLabel::S(1)).ray_crossings, 1);
        assert_eq!(inv(ArcLabel::S(1)).seg_crossings, 0);
        for k in CATALOG_RANGE {
            let i = inv(ArcLabel::S(k));
            assert_eq!(i.ray_crossings, i64::from(k), "S_{k}");
            assert_eq!(i.seg_crossings, u64::from(k.unsigned_abs().saturating_sub(1)), "S_{k}");
            let p = inv(ArcLabel::SPrime(k));
            assert_eq!(p.ray_crossings, -i64::from(k), "S'_{k}");
            assert_eq!(p.start, Endpoint::B);
        }
    }

    #[test]
    fn reversal_flips_sign() {
        let s1 = catalog_arc(ArcLabel::S(1), &cfg()).unwrap();
        let r = invariants(&s1.reversed(), &cfg()).unwrap();
        assert_eq!(r.ray_crossings, -1);
        assert_eq!(r.start, Endpoint::B);
    }

    #[test]
    fn refinement_preserves_invariants() {
        for k in [-2, 1, 3] {
            let a = catalog_arc(ArcLabel::S(k), &cfg()).unwrap();
            let f = a.refined(&qf(1, 8));
            assert!(f.points().len() > a.points().len());
            assert_eq!(invariants(&f, &cfg()).unwrap(), invariants(&a, &cfg()).unwrap());
            assert_eq!(crossing_word(&f, &cfg()).unwrap(), crossing_word(&a, &cfg()).unwrap());
        }
    }

    #[test]
    fn invalid_arcs() {
        let c = cfg();
        let through_origin = vec![Pt::real(q(-3)), Pt::new(q(0), qf(1, 100)), Pt::real(q(-1))];
        assert!(PLArc::new(through_origin, 1, &c).is_err());
        let same_end = vec![Pt::real(q(-3)), Pt::new(q(-2), q(1)), Pt::real(q(-3))];
        assert!(PLArc::new(same_end, 1, &c).is_err());
        let crossing = vec![
            Pt::real(q(-3)),
            Pt::new(q(-2), q(1)),
            Pt::new(q(-2), q(-1)),
            Pt::new(qf(-5, 2), q(0) + qf(1, 3)),
            Pt::new(qf(-3, 2), qf(1, 2)),
            Pt::real(q(-1)),
        ];
        assert!(PLArc::new(crossing, 1, &c).is_err());
        let on_axis = PLArc::new(vec![Pt::real(q(-3)), Pt::new(q(-2), q(1)), Pt::real(q(2)), Pt::new(q(0), q(-3)), Pt::real(q(-1))], 1, &c).unwrap();
        assert!(matches!(invariants(&on_axis, &c), Err(Error::Degenerate(_))));
    }

    #[test]
    fn flop_and_twist() {
        let c = cfg();
        for k in -2..=3 {
            let s = catalog_arc(ArcLabel::S(k), &c).unwrap();
            let f = flop_map(&s, &c).unwrap();
            let ff = flop_map(&f, &c).unwrap();
            let t = dehn_twist_map(&s, &c, true).unwrap();
            assert_eq!(invariants(&ff, &c).unwrap(), invariants(&t, &c).unwrap(), "k={k}");
            assert_eq!(crossing_word(&ff, &c).unwrap(), crossing_word(&t, &c).unwrap(), "k={k}");
            assert_eq!(
                invariants(&f, &c).unwrap(),
                inv(ArcLabel::SPrime(-k)),
                "k={k}"
            );
        }
    }

    #[test]
    fn twist_round_trip_and_fixed_zones() {
        let c = cfg();
        let s0 = catalog_arc(ArcLabel::S(0), &c).unwrap();
        let t0 = dehn_twist_map(&s0, &c, false).unwrap();
        assert_eq!(invariants(&t0, &c).unwrap(), inv(ArcLabel::S(0)));
        let s2 = catalog_arc(ArcLabel::S(2), &c).unwrap();
        let back = dehn_twist_map(&dehn_twist_map(&s2, &c, false).unwrap(), &c, true).unwrap();
        assert_eq!(crossing_word(&back, &c).unwrap(), crossing_word(&s2, &c).unwrap());
        let f = flop_map(&s2, &c).unwrap();
        let r2sq = &c.r2 * &c.r2;
        for p in f.points() {
            let d = Pt::new(&p.x - c.c0(), p.y.clone()).norm2();
            if d > r2sq {
                assert!(s2.refined(&qf(1, 16)).points().contains(p));
            }
        }
    }

    #[test]
    fn twist_changes_the_word() {
        let c = cfg();
        let s1 = catalog_arc(ArcLabel::S(1), &c).unwrap();
        let t = dehn_twist_map(&s1, &c, false).unwrap();
        assert_ne!(crossing_word(&t, &c).unwrap(), crossing_word(&s1, &c).unwrap());
    }

    #[test]
    fn phase_order_rules() {
        assert_eq!(phase_order(0, 5).unwrap(), PhaseOrder::Greater);
        assert_eq!(phase_order(2, 3).unwrap(), PhaseOrder::Greater);
        assert_eq!(phase_order(3, 2).unwrap(), PhaseOrder::Less);
        assert_eq!(phase_order(-2, 3).unwrap(), PhaseOrder::Unspecified);
        assert_eq!(phase_order(-3, -1).unwrap(), PhaseOrder::Greater);
        assert_eq!(phase_order(1, -4).unwrap(), PhaseOrder::Less);
        assert_eq!(phase_order(-1, 0).unwrap(), PhaseOrder::Less);
        assert!(phase_order(2, 2).is_err());
    }

    #[test]
    fn arc_json_round_trip() {
        let c = cfg();
        let a = catalog_arc(ArcLabel::S(2), &c).unwrap();
        let j = serde_json::to_string(&a.to_json()).unwrap();
        let back: ArcJson = serde_json::from_str(&j).unwrap();
        assert_eq!(PLArc::from_json(&back, &c).unwrap(), a);
        assert_eq!(ArcLabel::parse("S'_-1").unwrap(), ArcLabel::SPrime(-1));
        assert_eq!(ArcLabel::parse("S_3").unwrap(), ArcLabel::S(3));
    }
}
