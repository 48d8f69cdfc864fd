//! Finite-dimensional representations of the conifold Jacobi algebra,
//! central charges, exact phase comparison and stability verdicts.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::{primitive_integer_matrix, subrep_counts, FpRep, Gf};
use crate::linalg::{Echelon, Mat};
use crate::quiver::{Arrow, FreePathElement, Path, Vertex};
use crate::rational::{fmt_q, parse_q, q, CQ, Q};

/// `x, z : V0 → V1` are `d1 × d0`; `y, w : V1 → V0` are `d0 × d1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    d0: usize,
    d1: usize,
    x: Mat,
    y: Mat,
    z: Mat,
    w: Mat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepCheck {
    pub relations_ok: bool,
    pub nilpotent: bool,
}

impl Representation {
    pub fn new(d0: usize, d1: usize, x: Mat, y: Mat, z: Mat, w: Mat) -> Result<Self> {
        for (name, m, r, c) in [("x", &x, d1, d0), ("z", &z, d1, d0), ("y", &y, d0, d1), ("w", &w, d0, d1)] {
            if m.rows() != r || m.cols() != c {
                return Err(Error::BadInput(format!(
                    "matrix {name} is {}x{}, expected {r}x{c}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { d0, d1, x, y, z, w })
    }

    pub fn zero(d0: usize, d1: usize) -> Self {
        Representation {
            d0,
            d1,
            x: Mat::zeros(d1, d0),
            y: Mat::zeros(d0, d1),
            z: Mat::zeros(d1, d0),
            w: Mat::zeros(d0, d1),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.d0, self.d1)
    }

    pub fn dim_at(&self, v: Vertex) -> usize {
        match v {
            Vertex::V0 => self.d0,
            Vertex::V1 => self.d1,
        }
    }

    pub fn total_dim(&self) -> usize {
        self.d0 + self.d1
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn mat(&self, a: Arrow) -> &Mat {
        match a {
            Arrow::X => &self.x,
            Arrow::Y => &self.y,
            Arrow::Z => &self.z,
            Arrow::W => &self.w,
        }
    }

    pub fn with_mat(mut self, a: Arrow, m: Mat) -> Result<Self> {
        let (r, c) = (self.dim_at(a.target()), self.dim_at(a.source()));
        if m.rows() != r || m.cols() != c {
            return Err(Error::BadInput(format!("matrix for {} must be {r}x{c}", a.letter())));
        }
        match a {
            Arrow::X => self.x = m,
            Arrow::Y => self.y = m,
            Arrow::Z => self.z = m,
            Arrow::W => self.w = m,
        }
        Ok(self)
    }

    /// Matrix of a path, `V_source → V_target`; words act right to left.
    pub fn act_path(&self, p: &Path) -> Mat {
        let mut m = Mat::identity(self.dim_at(p.source()));
        for &a in p.arrows().iter().rev() {
            m = self.mat(a).mul(&m);
        }
        m
    }

    /// Matrix of a homogeneous element; errors if terms have different endpoints.
    pub fn act(&self, e: &FreePathElement) -> Result<Mat> {
        let Some((s, t)) = e.grading() else {
            if e.is_zero() {
                return Err(Error::BadInput("zero element has no endpoints".into()));
            }
            return Err(Error::BadInput(format!("{e} mixes endpoints")));
        };
        let mut m = Mat::zeros(self.dim_at(t), self.dim_at(s));
        for (p, c) in e.terms() {
            m = m.add(&self.act_path(p).scale(c));
        }
        Ok(m)
    }

    pub fn relations_hold(&self) -> bool {
        crate::quiver::relations()
            .iter()
            .all(|r| self.act(r).map(|m| m.is_zero()).unwrap_or(false))
    }

    /// Radical chain `V ⊇ JV ⊇ J²V ⊇ …` reaches zero.
    pub fn is_nilpotent(&self) -> bool {
        let mut cur = (
            Echelon::from_vectors(self.d0, &unit_vectors(self.d0)),
            Echelon::from_vectors(self.d1, &unit_vectors(self.d1)),
        );
        loop {
            if cur.0.rank() + cur.1.rank() == 0 {
                return true;
            }
            let next = self.radical_of(&cur);
            if next.0.rank() + next.1.rank() == cur.0.rank() + cur.1.rank() {
                return false;
            }
            cur = next;
        }
    }

    fn radical_of(&self, s: &(Echelon, Echelon)) -> (Echelon, Echelon) {
        let mut e0 = Echelon::new(self.d0);
        let mut e1 = Echelon::new(self.d1);
        for v in s.0.basis() {
            e1.insert(&self.x.mul_vec(v));
            e1.insert(&self.z.mul_vec(v));
        }
        for v in s.1.basis() {
            e0.insert(&self.y.mul_vec(v));
            e0.insert(&self.w.mul_vec(v));
        }
        (e0, e1)
    }

    pub fn check(&self) -> RepCheck {
        RepCheck {
            relations_ok: self.relations_hold(),
            nilpotent: self.is_nilpotent(),
        }
    }

    /// Each arrow multiplied by the given nonzero scalar, in order `x, y, z, w`.
    pub fn rescaled(&self, k: &[Q; 4]) -> Result<Self> {
        if k.iter().any(Zero::is_zero) {
            return Err(Error::BadInput("rescaling factors must be nonzero".into()));
        }
        Ok(Representation {
            d0: self.d0,
            d1: self.d1,
            x: self.x.scale(&k[0]),
            y: self.y.scale(&k[1]),
            z: self.z.scale(&k[2]),
            w: self.w.scale(&k[3]),
        })
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let bd = |a: &Mat, b: &Mat| Mat::block(a, &Mat::zeros(a.rows(), b.cols()), &Mat::zeros(b.rows(), a.cols()), b);
        Representation {
            d0: self.d0 + o.d0,
            d1: self.d1 + o.d1,
            x: bd(&self.x, &o.x),
            y: bd(&self.y, &o.y),
            z: bd(&self.z, &o.z),
            w: bd(&self.w, &o.w),
        }
    }

    /// True iff `span(b0) ⊕ span(b1)` is closed under every arrow.
    pub fn is_subrep(&self, b0: &[Vec<Q>], b1: &[Vec<Q>]) -> bool {
        let e0 = Echelon::from_vectors(self.d0, b0);
        let e1 = Echelon::from_vectors(self.d1, b1);
        b0.iter()
            .all(|v| e1.contains(&self.x.mul_vec(v)) && e1.contains(&self.z.mul_vec(v)))
            && b1
                .iter()
                .all(|v| e0.contains(&self.y.mul_vec(v)) && e0.contains(&self.w.mul_vec(v)))
    }

    /// Smallest subrepresentation containing the given vectors.
    pub fn generated(&self, g0: &[Vec<Q>], g1: &[Vec<Q>]) -> (Echelon, Echelon) {
        let mut e0 = Echelon::new(self.d0);
        let mut e1 = Echelon::new(self.d1);
        let mut todo: Vec<(Vertex, Vec<Q>)> = g0
            .iter()
            .map(|v| (Vertex::V0, v.clone()))
            .chain(g1.iter().map(|v| (Vertex::V1, v.clone())))
            .collect();
        while let Some((vx, v)) = todo.pop() {
            let grew = match vx {
                Vertex::V0 => e0.insert(&v),
                Vertex::V1 => e1.insert(&v),
            };
            if !grew {
                continue;
            }
            for a in Arrow::from_vertex(vx) {
                todo.push((a.target(), self.mat(a).mul_vec(&v)));
            }
        }
        (e0, e1)
    }

    /// Largest subrepresentation inside `span(u0) ⊕ span(u1)`.
    pub fn largest_inside(&self, u0: &[Vec<Q>], u1: &[Vec<Q>]) -> (Echelon, Echelon) {
        let mut b0: Vec<Vec<Q>> = Echelon::from_vectors(self.d0, u0).basis().to_vec();
        let mut b1: Vec<Vec<Q>> = Echelon::from_vectors(self.d1, u1).basis().to_vec();
        loop {
            let n0 = preimage_within(&b0, &[&self.x, &self.z], &b1, self.d0, self.d1);
            let n1 = preimage_within(&b1, &[&self.y, &self.w], &b0, self.d1, self.d0);
            if n0.len() == b0.len() && n1.len() == b1.len() {
                return (Echelon::from_vectors(self.d0, &n0), Echelon::from_vectors(self.d1, &n1));
            }
            b0 = n0;
            b1 = n1;
        }
    }

    pub fn to_json(&self) -> RepJson {
        let m = |m: &Mat| m.to_rows().iter().map(|r| r.iter().map(fmt_q).collect()).collect();
        RepJson {
            dims: [self.d0, self.d1],
            x: m(&self.x),
            z: m(&self.z),
            y: m(&self.y),
            w: m(&self.w),
        }
    }

    pub fn from_json(j: &RepJson) -> Result<Self> {
        let [d0, d1] = j.dims;
        let m = |rows: &Vec<Vec<String>>, r: usize, c: usize, name: &str| -> Result<Mat> {
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                // An r×0 matrix may be written as [] when r = 0 or as r empty rows.
                if !(c == 0 && rows.is_empty()) {
                    return Err(Error::BadInput(format!("matrix {name} must be {r}x{c}")));
                }
            }
            let entries = rows
                .iter()
                .map(|row| row.iter().map(|s| parse_q(s)).collect::<Result<Vec<Q>>>())
                .collect::<Result<Vec<_>>>()?;
            if entries.is_empty() {
                return Ok(Mat::zeros(r, c));
            }
            Ok(Mat::from_rows(r, c, entries))
        };
        Representation::new(
            d0,
            d1,
            m(&j.x, d1, d0, "x")?,
            m(&j.y, d0, d1, "y")?,
            m(&j.z, d1, d0, "z")?,
            m(&j.w, d0, d1, "w")?,
        )
    }
}

/// `{v ∈ span(dom) : M v ∈ span(cod)}` for every `M` in `maps`.
fn preimage_within(dom: &[Vec<Q>], maps: &[&Mat], cod: &[Vec<Q>], d_dom: usize, d_cod: usize) -> Vec<Vec<Q>> {
    if dom.is_empty() {
        return Vec::new();
    }
    // Rows whose common kernel is span(cod).
    let ann: Vec<Vec<Q>> = if cod.is_empty() {
        unit_vectors(d_cod)
    } else {
        Mat::from_rows(cod.len(), d_cod, cod.to_vec()).nullspace()
    };
    if ann.is_empty() {
        return dom.to_vec();
    }
    let b = Mat::from_cols(d_dom, dom);
    let a = Mat::from_rows(ann.len(), d_cod, ann);
    let mut blocks: Vec<Vec<Q>> = Vec::new();
    for m in maps {
        blocks.extend(a.mul(m).mul(&b).to_rows());
    }
    let sys = Mat::from_rows(blocks.len(), dom.len(), blocks);
    sys.nullspace().iter().map(|c| b.mul_vec(c)).collect()
}

pub fn unit_vectors(d: usize) -> Vec<Vec<Q>> {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

/// JSON form `{dims, x, z, y, w}` with `"p/q"` entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub dims: [usize; 2],
    pub x: Vec<Vec<String>>,
    pub z: Vec<Vec<String>>,
    pub y: Vec<Vec<String>>,
    pub w: Vec<Vec<String>>,
}

/// Catalog families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepKind {
    Simple(Vertex),
    /// `x ↦ μx`, `z ↦ μz` on `(1,1)`.
    Point(Q, Q),
    /// `y ↦ μy`, `w ↦ μw` on `(1,1)`.
    PointFlopped(Q, Q),
    /// Dims `(m-1, m)`: `x e_i = f_i`, `z e_i = f_{i+1}`.
    VPlus(usize),
    /// Dims `(n+1, n)`: `x e_i = f_i` (`i ≤ n`), `z e_i = f_{i-1}` (`i ≥ 2`).
    VMinus(usize),
    /// Dims `(m-1, m)`: `y f_i = e_i` (`i ≤ m-1`), `w f_i = e_{i-1}` (`i ≥ 2`).
    VPlusDagger(usize),
    /// Dims `(n+1, n)`: `y f_i = e_i`, `w f_i = e_{i+1}`.
    VMinusDagger(usize),
}

impl RepKind {
    /// Parses `simple:0`, `point:1,2`, `point-flopped:1,1`, `vplus:3`,
    /// `vminus:2`, `vplus-dagger:3`, `vminus-dagger:2`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::BadInput(format!("unknown representation kind {s:?}"));
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        let int = |a: &str| a.trim().parse::<usize>().map_err(|_| bad());
        let pair = |a: &str| -> Result<(Q, Q)> {
            let (u, v) = a.split_once(',').ok_or_else(bad)?;
            Ok((parse_q(u)?, parse_q(v)?))
        };
        Ok(match name {
            "simple" => match arg.trim() {
                "0" => RepKind::Simple(Vertex::V0),
                "1" => RepKind::Simple(Vertex::V1),
                _ => return Err(bad()),
            },
            "point" => {
                let (a, b) = pair(arg)?;
                RepKind::Point(a, b)
            }
            "point-flopped" => {
                let (a, b) = pair(arg)?;
                RepKind::PointFlopped(a, b)
            }
            "vplus" => RepKind::VPlus(int(arg)?),
            "vminus" => RepKind::VMinus(int(arg)?),
            "vplus-dagger" => RepKind::VPlusDagger(int(arg)?),
            "vminus-dagger" => RepKind::VMinusDagger(int(arg)?),
            _ => return Err(bad()),
        })
    }
}

fn pattern(rows: usize, cols: usize, ones: impl Iterator<Item = (usize, usize)>) -> Mat {
    let mut m = Mat::zeros(rows, cols);
    for (i, j) in ones {
        m.set(i, j, Q::one());
    }
    m
}

pub fn make_catalog_rep(kind: &RepKind) -> Result<Representation> {
    let scalar = |v: &Q| Mat::from_rows(1, 1, vec![vec![v.clone()]]);
    let z11 = || Mat::zeros(1, 1);
    Ok(match kind {
        RepKind::Simple(Vertex::V0) => Representation::zero(1, 0),
        RepKind::Simple(Vertex::V1) => Representation::zero(0, 1),
        RepKind::Point(a, b) | RepKind::PointFlopped(a, b) => {
            if a.is_zero() && b.is_zero() {
                return Err(Error::BadInput("projective parameters are both zero".into()));
            }
            if matches!(kind, RepKind::Point(..)) {
                Representation::new(1, 1, scalar(a), z11(), scalar(b), z11())?
            } else {
                Representation::new(1, 1, z11(), scalar(a), z11(), scalar(b))?
            }
        }
        RepKind::VPlus(m) | RepKind::VPlusDagger(m) => {
            if *m == 0 {
                return Err(Error::BadInput("V+(m) needs m ≥ 1".into()));
            }
            let (d0, d1) = (m - 1, *m);
            if matches!(kind, RepKind::VPlus(_)) {
                let x = pattern(d1, d0, (0..d0).map(|i| (i, i)));
                let z = pattern(d1, d0, (0..d0).map(|i| (i + 1, i)));
                Representation::new(d0, d1, x, Mat::zeros(d0, d1), z, Mat::zeros(d0, d1))?
            } else {
                let y = pattern(d0, d1, (0..d0).map(|i| (i, i)));
                let w = pattern(d0, d1, (1..d1).map(|i| (i - 1, i)));
                Representation::new(d0, d1, Mat::zeros(d1, d0), y, Mat::zeros(d1, d0), w)?
            }
        }
        RepKind::VMinus(n) | RepKind::VMinusDagger(n) => {
            let (d0, d1) = (n + 1, *n);
            if matches!(kind, RepKind::VMinus(_)) {
                let x = pattern(d1, d0, (0..d1).map(|i| (i, i)));
                let z = pattern(d1, d0, (1..d0).map(|i| (i - 1, i)));
                Representation::new(d0, d1, x, Mat::zeros(d0, d1), z, Mat::zeros(d0, d1))?
            } else {
                let y = pattern(d0, d1, (0..d1).map(|i| (i, i)));
                let w = pattern(d0, d1, (0..d1).map(|i| (i + 1, i)));
                Representation::new(d0, d1, Mat::zeros(d1, d0), y, Mat::zeros(d1, d0), w)?
            }
        }
    })
}

/// Central charges of the two vertex simples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityParams {
    pub z0: CQ,
    pub z1: CQ,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chamber {
    /// `arg z0 > arg z1`.
    Zeta0Greater,
    /// `arg z0 < arg z1`.
    Zeta0Less,
}

impl StabilityParams {
    pub fn new(z0: CQ, z1: CQ) -> Result<Self> {
        for (n, z) in [("z0", &z0), ("z1", &z1)] {
            if !z.is_admissible() {
                return Err(Error::BadInput(format!("{n} = {z} has phase outside (0, π]")));
            }
        }
        Ok(StabilityParams { z0, z1 })
    }

    /// `z0 = -1+2i`, `z1 = 1+i`.
    pub fn standard() -> Self {
        StabilityParams::new(CQ::from_ints(-1, 2), CQ::from_ints(1, 1)).expect("admissible")
    }

    /// `z0` and `z1` exchanged.
    pub fn swapped(&self) -> Self {
        StabilityParams {
            z0: self.z1.clone(),
            z1: self.z0.clone(),
        }
    }

    pub fn is_wall(&self) -> bool {
        self.z0.cross(&self.z1).is_zero()
    }

    pub fn chamber(&self) -> Result<Chamber> {
        match self.z0.cross(&self.z1).cmp(&Q::zero()) {
            Ordering::Less => Ok(Chamber::Zeta0Greater),
            Ordering::Greater => Ok(Chamber::Zeta0Less),
            Ordering::Equal => Err(Error::OnWall),
        }
    }

    pub fn charge(&self, d: (usize, usize)) -> CQ {
        &self.z0.scale(&q(d.0 as i64)) + &self.z1.scale(&q(d.1 as i64))
    }
}

/// `Z(R) = d0·z0 + d1·z1`.
pub fn central_charge(r: &Representation, p: &StabilityParams) -> Result<CQ> {
    if r.is_zero() {
        return Err(Error::BadInput("central charge of the zero representation".into()));
    }
    Ok(p.charge(r.dims()))
}

/// Exact comparison of phases in `(0, π]`.
pub fn phase_cmp(u: &CQ, v: &CQ) -> Result<Ordering> {
    for z in [u, v] {
        if z.is_zero() {
            return Err(Error::BadInput("phase of zero".into()));
        }
        if !z.is_admissible() {
            return Err(Error::BadInput(format!("{z} has phase outside (0, π]")));
        }
    }
    Ok(Q::zero().cmp(&u.cross(v)))
}

/// `arg u < arg v`.
pub fn phase_lt(u: &CQ, v: &CQ) -> Result<bool> {
    Ok(phase_cmp(u, v)? == Ordering::Less)
}

/// `(d0, d1) ↦ (-d0 + 2 d1, d1)`.
pub fn flop_k(d: (i64, i64)) -> (i64, i64) {
    (-d.0 + 2 * d.1, d.1)
}

/// A subrepresentation given by bases of its two vertex spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubWitness {
    pub dims: (usize, usize),
    pub basis0: Vec<Vec<Q>>,
    pub basis1: Vec<Vec<Q>>,
}

impl SubWitness {
    fn from_echelons(e: &(Echelon, Echelon)) -> Self {
        SubWitness {
            dims: (e.0.rank(), e.1.rank()),
            basis0: e.0.basis().to_vec(),
            basis1: e.1.basis().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityVerdict {
    /// No subrepresentation has phase ≥ the total, certified over each listed prime.
    Stable { primes: Vec<u8> },
    /// An exact subrepresentation has equal phase and none has larger phase.
    SemistableOnly { witness: SubWitness, primes: Vec<u8> },
    /// An exact subrepresentation of strictly larger phase.
    Unstable { witness: SubWitness },
    /// Dimension vectors realized over every prime tried that would destabilize,
    /// with no exact witness found.
    Undetermined { flagged: Vec<(usize, usize)> },
}

impl StabilityVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            StabilityVerdict::Stable { .. } => "Stable",
            StabilityVerdict::SemistableOnly { .. } => "SemistableOnly",
            StabilityVerdict::Unstable { .. } => "Unstable",
            StabilityVerdict::Undetermined { .. } => "Undetermined",
        }
    }

    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityVerdict::Stable { .. })
    }

    pub fn witness(&self) -> Option<&SubWitness> {
        match self {
            StabilityVerdict::SemistableOnly { witness, .. } | StabilityVerdict::Unstable { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn to_json(&self) -> VerdictJson {
        let (primes, flagged) = match self {
            StabilityVerdict::Stable { primes } | StabilityVerdict::SemistableOnly { primes, .. } => {
                (primes.clone(), Vec::new())
            }
            StabilityVerdict::Unstable { .. } => (Vec::new(), Vec::new()),
            StabilityVerdict::Undetermined { flagged } => (Vec::new(), flagged.clone()),
        };
        let vecs = |b: &[Vec<Q>]| b.iter().map(|v| v.iter().map(fmt_q).collect()).collect();
        VerdictJson {
            verdict: self.name().to_string(),
            primes,
            witness: self.witness().map(|w| WitnessJson {
                dims: [w.dims.0, w.dims.1],
                basis0: vecs(&w.basis0),
                basis1: vecs(&w.basis1),
            }),
            flagged,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub dims: [usize; 2],
    pub basis0: Vec<Vec<String>>,
    pub basis1: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub verdict: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub primes: Vec<u8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub flagged: Vec<(usize, usize)>,
}

pub const SCAN_PRIMES: [u8; 3] = [2, 3, 5];
pub const SCAN_MAX_DIM: usize = 4;

/// Proper nonzero subrepresentations obtained from images and kernels of
/// paths of length ≤ 4, cyclic submodules of basis vectors, vertex parts,
/// and the radical and socle series. Deduplicated.
pub fn candidate_subreps(r: &Representation) -> Vec<SubWitness> {
    let mut cands: Vec<(Echelon, Echelon)> = Vec::new();
    let paths: Vec<Path> = Vertex::ALL
        .iter()
        .flat_map(|&v| (1..=4).flat_map(move |l| crate::quiver::words_from(v, l)))
        .collect();
    for p in &paths {
        let m = r.act_path(p);
        let cols: Vec<Vec<Q>> = (0..m.cols()).map(|j| m.col(j)).collect();
        cands.push(match p.target() {
            Vertex::V0 => r.generated(&cols, &[]),
            Vertex::V1 => r.generated(&[], &cols),
        });
        let ker = m.nullspace();
        cands.push(match p.source() {
            Vertex::V0 => r.largest_inside(&ker, &unit_vectors(r.d1)),
            Vertex::V1 => r.largest_inside(&unit_vectors(r.d0), &ker),
        });
    }
    for v in unit_vectors(r.d0) {
        cands.push(r.generated(&[v], &[]));
    }
    for v in unit_vectors(r.d1) {
        cands.push(r.generated(&[], &[v]));
    }
    cands.push(r.generated(&unit_vectors(r.d0), &[]));
    cands.push(r.generated(&[], &unit_vectors(r.d1)));
    cands.push(r.largest_inside(&unit_vectors(r.d0), &[]));
    cands.push(r.largest_inside(&[], &unit_vectors(r.d1)));
    // Radical series.
    let mut cur = (
        Echelon::from_vectors(r.d0, &unit_vectors(r.d0)),
        Echelon::from_vectors(r.d1, &unit_vectors(r.d1)),
    );
    for _ in 0..r.total_dim() {
        cur = r.radical_of(&cur);
        cands.push(cur.clone());
    }
    // Socle series: soc^{k+1} = {v : a·v ∈ soc^k for every arrow a}.
    let mut soc = (Echelon::new(r.d0), Echelon::new(r.d1));
    for _ in 0..r.total_dim() {
        let s0 = preimage_within(&unit_vectors(r.d0), &[&r.x, &r.z], soc.1.basis(), r.d0, r.d1);
        let s1 = preimage_within(&unit_vectors(r.d1), &[&r.y, &r.w], soc.0.basis(), r.d1, r.d0);
        soc = (Echelon::from_vectors(r.d0, &s0), Echelon::from_vectors(r.d1, &s1));
        cands.push(soc.clone());
    }
    let total = r.total_dim();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in cands {
        let k = c.0.rank() + c.1.rank();
        if k == 0 || k == total {
            continue;
        }
        let key = format!("{:?}|{:?}", c.0.basis(), c.1.basis());
        if seen.insert(key) {
            out.push(SubWitness::from_echelons(&c));
        }
    }
    out
}

/// Representation over `F_p` after scaling each arrow to a primitive integer matrix.
pub fn reduce_mod_p(r: &Representation, f: &Gf) -> FpRep {
    let conv = |m: &Mat| -> Vec<Vec<u8>> {
        primitive_integer_matrix(m)
            .iter()
            .map(|row| row.iter().map(|x| f.from_int(x)).collect())
            .collect()
    };
    FpRep {
        d0: r.d0,
        d1: r.d1,
        x: conv(&r.x),
        y: conv(&r.y),
        z: conv(&r.z),
        w: conv(&r.w),
    }
}

/// Sub-dimension vectors over `F_p` with their subrepresentation counts.
pub fn subrep_scan_fp(r: &Representation, p: u8) -> Result<BTreeMap<(usize, usize), u64>> {
    if !SCAN_PRIMES.contains(&p) {
        return Err(Error::BadInput(format!("prime {p} not in {{2,3,5}}")));
    }
    if r.d0 > SCAN_MAX_DIM || r.d1 > SCAN_MAX_DIM {
        return Err(Error::BadInput(format!("dims {:?} exceed the scan bound 4", r.dims())));
    }
    let f = Gf::new(p)?;
    Ok(subrep_counts(&f, &reduce_mod_p(r, &f)))
}

/// Stability verdict; refuses wall parameters and representations that are
/// zero, violate the relations, or are not nilpotent.
pub fn is_stable(r: &Representation, p: &StabilityParams) -> Result<StabilityVerdict> {
    if r.is_zero() {
        return Err(Error::BadInput("zero representation".into()));
    }
    let chk = r.check();
    if !chk.relations_ok {
        return Err(Error::BadInput("representation violates the relations".into()));
    }
    if !chk.nilpotent {
        return Err(Error::BadInput("representation is not nilpotent".into()));
    }
    if p.is_wall() {
        return Err(Error::OnWall);
    }
    let total = p.charge(r.dims());
    let mut strict: Vec<(CQ, SubWitness)> = Vec::new();
    let mut equal: Vec<SubWitness> = Vec::new();
    for c in candidate_subreps(r) {
        let z = p.charge(c.dims);
        match phase_cmp(&z, &total)? {
            Ordering::Greater => strict.push((z, c)),
            Ordering::Equal => equal.push(c),
            Ordering::Less => {}
        }
    }
    if !strict.is_empty() {
        let mut best = 0;
        for i in 1..strict.len() {
            let ord = phase_cmp(&strict[i].0, &strict[best].0)?;
            let smaller = strict[i].1.dims.0 + strict[i].1.dims.1 < strict[best].1.dims.0 + strict[best].1.dims.1;
            if ord == Ordering::Greater || (ord == Ordering::Equal && smaller) {
                best = i;
            }
        }
        return Ok(StabilityVerdict::Unstable {
            witness: strict.swap_remove(best).1,
        });
    }
    if r.d0 > SCAN_MAX_DIM || r.d1 > SCAN_MAX_DIM {
        return Ok(StabilityVerdict::Undetermined { flagged: Vec::new() });
    }
    let (d0, d1) = r.dims();
    let mut weak_free = Vec::new();
    let mut strict_free = Vec::new();
    let mut flagged: Option<BTreeSet<(usize, usize)>> = None;
    for prime in SCAN_PRIMES {
        let mut weak = BTreeSet::new();
        let mut has_strict = false;
        for &(k0, k1) in subrep_scan_fp(r, prime)?.keys() {
            if (k0, k1) == (0, 0) || (k0, k1) == (d0, d1) {
                continue;
            }
            match phase_cmp(&p.charge((k0, k1)), &total)? {
                Ordering::Greater => {
                    has_strict = true;
                    weak.insert((k0, k1));
                }
                Ordering::Equal => {
                    weak.insert((k0, k1));
                }
                Ordering::Less => {}
            }
        }
        if weak.is_empty() {
            weak_free.push(prime);
        }
        if !has_strict {
            strict_free.push(prime);
        }
        flagged = Some(match flagged {
            None => weak,
            Some(prev) => prev.intersection(&weak).copied().collect(),
        });
    }
    if !weak_free.is_empty() {
        return Ok(StabilityVerdict::Stable { primes: weak_free });
    }
    if let (Some(w), false) = (equal.into_iter().next(), strict_free.is_empty()) {
        return Ok(StabilityVerdict::SemistableOnly {
            witness: w,
            primes: strict_free,
        });
    }
    Ok(StabilityVerdict::Undetermined {
        flagged: flagged.unwrap_or_default().into_iter().collect(),
    })
}

/// Checks that a witness is a subrepresentation of the stated dimensions
/// whose phase exceeds (or, with `allow_equal`, matches) the total phase.
pub fn verify_witness(r: &Representation, p: &StabilityParams, w: &SubWitness, allow_equal: bool) -> Result<bool> {
    let e0 = Echelon::from_vectors(r.d0, &w.basis0);
    let e1 = Echelon::from_vectors(r.d1, &w.basis1);
    if (e0.rank(), e1.rank()) != w.dims || !r.is_subrep(&w.basis0, &w.basis1) {
        return Ok(false);
    }
    let k = w.dims.0 + w.dims.1;
    if k == 0 || k == r.total_dim() {
        return Ok(false);
    }
    let ord = phase_cmp(&p.charge(w.dims), &p.charge(r.dims()))?;
    Ok(ord == Ordering::Greater || (allow_equal && ord == Ordering::Equal))
}

/// Float reference for the phase, used only to cross-check exact comparisons.
pub fn phase_f64(z: &CQ) -> f64 {
    let a = z.arg_f64();
    if a <= 0.0 && z.im.is_zero() && z.re.is_negative() {
        std::f64::consts::PI
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(s: &str) -> Representation {
        make_catalog_rep(&RepKind::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn catalog_shapes() {
        assert_eq!(rep("vplus:1").dims(), (0, 1));
        assert_eq!(rep("vminus:0").dims(), (1, 0));
        assert_eq!(rep("vplus:3").dims(), (2, 3));
        assert_eq!(rep("vminus:2").dims(), (3, 2));
        assert_eq!(rep("vplus-dagger:3").dims(), (2, 3));
        let p = rep("point:1,0");
        assert_eq!(p.dims(), (1, 1));
        assert_eq!(p.mat(Arrow::X).get(0, 0), &q(1));
        assert!(p.mat(Arrow::Z).is_zero());
        assert!(make_catalog_rep(&RepKind::Point(q(0), q(0))).is_err());
        assert!(RepKind::parse("vplus:x").is_err());
    }

    #[test]
    fn catalog_passes_checks() {
        for s in [
            "simple:0", "simple:1", "point:1,2", "point-flopped:1,1", "vplus:4", "vminus:3", "vplus-dagger:4",
            "vminus-dagger:3",
        ] {
            assert_eq!(
                rep(s).check(),
                RepCheck {
                    relations_ok: true,
                    nilpotent: true
                },
                "{s}"
            );
        }
    }

    #[test]
    fn non_nilpotent_and_broken_relations() {
        let one = Mat::from_i64(1, 1, &[1]);
        let r = Representation::new(1, 1, one.clone(), one.clone(), one.clone(), one.clone()).unwrap();
        assert_eq!(
            r.check(),
            RepCheck {
                relations_ok: true,
                nilpotent: false
            }
        );
        let a = Mat::from_i64(2, 2, &[1, 1, 0, 1]);
        let b = Mat::from_i64(2, 2, &[0, 1, 0, 0]);
        let c = Mat::from_i64(2, 2, &[1, 0, 1, 0]);
        let bad = Representation::new(2, 2, a, b, c, Mat::zeros(2, 2)).unwrap();
        assert!(!bad.check().relations_ok);
    }

    #[test]
    fn phases() {
        let u = CQ::from_ints(1, 1);
        let v = CQ::from_ints(-1, 2);
        assert!(phase_lt(&u, &v).unwrap());
        assert!(!phase_lt(&u, &u).unwrap());
        assert!(!phase_lt(&CQ::from_ints(-1, 0), &v).unwrap());
        assert!(phase_lt(&u, &CQ::zero()).is_err());
    }

    #[test]
    fn charges() {
        let p = StabilityParams::new(CQ::from_ints(-1, 2), CQ::from_ints(1, 1)).unwrap();
        assert_eq!(central_charge(&rep("simple:0"), &p).unwrap(), p.z0);
        assert_eq!(central_charge(&rep("point:1,1"), &p).unwrap(), &p.z0 + &p.z1);
        assert_eq!(central_charge(&rep("vplus:2"), &p).unwrap(), CQ::from_ints(1, 4));
        assert_eq!(p.chamber().unwrap(), Chamber::Zeta0Greater);
        assert_eq!(p.swapped().chamber().unwrap(), Chamber::Zeta0Less);
        let wall = StabilityParams::new(CQ::from_ints(1, 1), CQ::from_ints(2, 2)).unwrap();
        assert!(wall.is_wall());
        assert!(StabilityParams::new(CQ::from_ints(1, -1), CQ::from_ints(1, 1)).is_err());
    }

    #[test]
    fn fp_scans() {
        let s = |r: &str, p| subrep_scan_fp(&rep(r), p).unwrap().keys().copied().collect::<Vec<_>>();
        assert_eq!(s("vplus:2", 2), vec![(0, 0), (0, 1), (0, 2), (1, 2)]);
        assert_eq!(s("simple:0", 5), vec![(0, 0), (1, 0)]);
        assert_eq!(s("point:1,1", 3), vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(subrep_scan_fp(&rep("vplus:2"), 2).unwrap()[&(0, 1)], 3);
        assert!(subrep_scan_fp(&rep("vplus:6"), 2).is_err());
    }

    #[test]
    fn stability_examples() {
        let p = StabilityParams::standard();
        assert!(is_stable(&rep("vplus:2"), &p).unwrap().is_stable());
        assert!(is_stable(&rep("point:0,1"), &p).unwrap().is_stable());
        match is_stable(&rep("vplus:2"), &p.swapped()).unwrap() {
            StabilityVerdict::Unstable { witness } => {
                assert_eq!(witness.dims, (0, 1));
                assert!(verify_witness(&rep("vplus:2"), &p.swapped(), &witness, false).unwrap());
            }
            v => panic!("unexpected {v:?}"),
        }
        let wall = StabilityParams::new(CQ::from_ints(1, 1), CQ::from_ints(2, 2)).unwrap();
        assert!(matches!(is_stable(&rep("vplus:2"), &wall), Err(Error::OnWall)));
    }

    #[test]
    fn semisimple_sum_is_unstable_or_semistable() {
        let p = StabilityParams::standard();
        let r = rep("point:1,1").direct_sum(&rep("point:1,2"));
        match is_stable(&r, &p).unwrap() {
            StabilityVerdict::Unstable { .. } | StabilityVerdict::SemistableOnly { .. } => {}
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn flop_k_values() {
        assert_eq!(flop_k((1, 1)), (1, 1));
        for m in 1..6 {
            assert_eq!(flop_k((m - 1, m)), (m + 1, m));
            assert_eq!(flop_k(flop_k((m - 1, m))), (m - 1, m));
        }
    }

    #[test]
    fn json_round_trip() {
        for s in ["vplus:3", "simple:1", "point:1/2,3"] {
            let r = rep(s);
            let j = serde_json::to_string(&r.to_json()).unwrap();
            let back: RepJson = serde_json::from_str(&j).unwrap();
            assert_eq!(Representation::from_json(&back).unwrap(), r);
        }
    }
}
