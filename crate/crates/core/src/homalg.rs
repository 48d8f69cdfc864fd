//! Hom and Ext between representations, extensions, the sphere pipeline,
//! cohomology of free complexes and the flop of point modules.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::linalg::{complement_vectors, Echelon, Mat, QuotientCoords};
use crate::quiver::{Arrow, FreePathElement, Path, TruncatedAlgebra, Vertex};
use crate::rational::{q, Q};
use crate::reps::{
    flop_k, is_stable, make_catalog_rep, phase_cmp, Chamber, RepKind, Representation, StabilityParams,
    StabilityVerdict,
};

fn arrow_index(a: Arrow) -> usize {
    match a {
        Arrow::X => 0,
        Arrow::Y => 1,
        Arrow::Z => 2,
        Arrow::W => 3,
    }
}

/// Vertex maps `φ0 : R0 → S0`, `φ1 : R1 → S1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub phi0: Mat,
    pub phi1: Mat,
}

impl ModuleMap {
    pub fn at(&self, v: Vertex) -> &Mat {
        match v {
            Vertex::V0 => &self.phi0,
            Vertex::V1 => &self.phi1,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.phi0.is_invertible() && self.phi1.is_invertible()
    }
}

/// True iff `f` has the right shapes and intertwines every arrow.
pub fn is_module_map(r: &Representation, s: &Representation, f: &ModuleMap) -> bool {
    for v in Vertex::ALL {
        let m = f.at(v);
        if m.rows() != s.dim_at(v) || m.cols() != r.dim_at(v) {
            return false;
        }
    }
    Arrow::ALL
        .iter()
        .all(|&a| f.at(a.target()).mul(r.mat(a)) == s.mat(a).mul(f.at(a.source())))
}

/// Basis of the space of module maps `R → S`.
pub fn hom(r: &Representation, s: &Representation) -> Vec<ModuleMap> {
    let (d0, d1) = r.dims();
    let (e0, e1) = s.dims();
    let off1 = e0 * d0;
    let n = off1 + e1 * d1;
    let var = |v: Vertex, i: usize, j: usize| match v {
        Vertex::V0 => i * d0 + j,
        Vertex::V1 => off1 + i * d1 + j,
    };
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for a in Arrow::ALL {
        let (src, tgt) = (a.source(), a.target());
        let (ra, sa) = (r.mat(a), s.mat(a));
        // (φ_t R_a − S_a φ_s)[i][j] = 0
        for i in 0..s.dim_at(tgt) {
            for j in 0..r.dim_at(src) {
                let mut row = vec![Q::zero(); n];
                for k in 0..r.dim_at(tgt) {
                    row[var(tgt, i, k)] += ra.get(k, j);
                }
                for k in 0..s.dim_at(src) {
                    row[var(src, k, j)] -= sa.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    let sys = Mat::from_rows(rows.len(), n, rows);
    sys.nullspace()
        .into_iter()
        .map(|v| ModuleMap {
            phi0: Mat::from_rows(e0, d0, (0..e0).map(|i| v[i * d0..(i + 1) * d0].to_vec()).collect()),
            phi1: Mat::from_rows(
                e1,
                d1,
                (0..e1).map(|i| v[off1 + i * d1..off1 + (i + 1) * d1].to_vec()).collect(),
            ),
        })
        .collect()
}

/// `ξ_a : M_{s(a)} → N_{t(a)}` for each arrow, indexed `x, y, z, w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDatum {
    pub xi: [Mat; 4],
}

impl ExtensionDatum {
    pub fn get(&self, a: Arrow) -> &Mat {
        &self.xi[arrow_index(a)]
    }

    pub fn zero(m: &Representation, n: &Representation) -> Self {
        ExtensionDatum {
            xi: Arrow::ALL.map(|a| Mat::zeros(n.dim_at(a.target()), m.dim_at(a.source()))),
        }
    }

    /// Datum for arrows given as `(arrow, matrix)`; the rest are zero.
    pub fn from_arrows(m: &Representation, n: &Representation, mats: &[(Arrow, Mat)]) -> Result<Self> {
        let mut d = Self::zero(m, n);
        for (a, mat) in mats {
            let slot = &mut d.xi[arrow_index(*a)];
            if (mat.rows(), mat.cols()) != (slot.rows(), slot.cols()) {
                return Err(Error::BadInput(format!(
                    "ξ_{} must be {}x{}",
                    a.letter(),
                    slot.rows(),
                    slot.cols()
                )));
            }
            *slot = mat.clone();
        }
        Ok(d)
    }
}

/// Flattened unknowns of an extension datum.
struct XiLayout {
    offsets: [usize; 4],
    shapes: [(usize, usize); 4],
    len: usize,
}

impl XiLayout {
    fn new(m: &Representation, n: &Representation) -> Self {
        let mut offsets = [0; 4];
        let mut shapes = [(0, 0); 4];
        let mut len = 0;
        for a in Arrow::ALL {
            let i = arrow_index(a);
            offsets[i] = len;
            shapes[i] = (n.dim_at(a.target()), m.dim_at(a.source()));
            len += shapes[i].0 * shapes[i].1;
        }
        XiLayout { offsets, shapes, len }
    }

    fn unflatten(&self, v: &[Q]) -> ExtensionDatum {
        ExtensionDatum {
            xi: [0, 1, 2, 3].map(|i| {
                let (r, c) = self.shapes[i];
                let o = self.offsets[i];
                Mat::from_rows(r, c, (0..r).map(|k| v[o + k * c..o + (k + 1) * c].to_vec()).collect())
            }),
        }
    }

    fn flatten(&self, d: &ExtensionDatum) -> Vec<Q> {
        let mut v = Vec::with_capacity(self.len);
        for m in &d.xi {
            v.extend(m.entries().iter().cloned());
        }
        v
    }
}

/// Upper-right block of the action of `e` on the extension `[[N, ξ], [0, M]]`.
fn relation_defect(m: &Representation, n: &Representation, xi: &ExtensionDatum, e: &FreePathElement) -> Result<Mat> {
    let (s, t) = e
        .grading()
        .ok_or_else(|| Error::BadInput("relation must be homogeneous".into()))?;
    let mut out = Mat::zeros(n.dim_at(t), m.dim_at(s));
    for (p, c) in e.terms() {
        let arrows = p.arrows();
        for i in 0..arrows.len() {
            let prefix = Path::from_arrows(arrows[..i].to_vec());
            let suffix = Path::from_arrows(arrows[i + 1..].to_vec());
            let a = arrows[i];
            let left = match prefix {
                Some(pp) => n.act_path(&pp),
                None => Mat::identity(n.dim_at(a.target())),
            };
            let right = match suffix {
                Some(sp) => m.act_path(&sp),
                None => Mat::identity(m.dim_at(a.source())),
            };
            out = out.add(&left.mul(xi.get(a)).mul(&right).scale(c));
        }
    }
    Ok(out)
}

pub fn is_cocycle(m: &Representation, n: &Representation, xi: &ExtensionDatum) -> bool {
    crate::quiver::relations()
        .iter()
        .all(|r| relation_defect(m, n, xi, r).map(|d| d.is_zero()).unwrap_or(false))
}

#[derive(Clone, Debug)]
pub struct Ext1 {
    pub dim: usize,
    /// Cocycles whose classes form a basis.
    pub basis: Vec<ExtensionDatum>,
}

/// `Ext¹(M, N)`: cocycles modulo coboundaries `ξ_a = η_t M_a − N_a η_s`.
pub fn ext1(m: &Representation, n: &Representation) -> Ext1 {
    let lay = XiLayout::new(m, n);
    let rels = crate::quiver::relations();
    let mut cols: Vec<Vec<Q>> = Vec::with_capacity(lay.len);
    for u in 0..lay.len {
        let mut unit = vec![Q::zero(); lay.len];
        unit[u] = Q::one();
        let xi = lay.unflatten(&unit);
        let mut col = Vec::new();
        for r in &rels {
            let d = relation_defect(m, n, &xi, r).expect("relations are homogeneous");
            col.extend(d.entries().iter().cloned());
        }
        cols.push(col);
    }
    let eqs = cols.first().map_or(0, Vec::len);
    let cocycles = Mat::from_cols(eqs, &cols).nullspace();
    let mut coboundaries = Vec::new();
    for v in Vertex::ALL {
        for i in 0..n.dim_at(v) {
            for j in 0..m.dim_at(v) {
                let mut eta0 = Mat::zeros(n.dims().0, m.dims().0);
                let mut eta1 = Mat::zeros(n.dims().1, m.dims().1);
                match v {
                    Vertex::V0 => eta0.set(i, j, Q::one()),
                    Vertex::V1 => eta1.set(i, j, Q::one()),
                }
                let eta = |w: Vertex| if w == Vertex::V0 { &eta0 } else { &eta1 };
                let d = ExtensionDatum {
                    xi: Arrow::ALL.map(|a| eta(a.target()).mul(m.mat(a)).sub(&n.mat(a).mul(eta(a.source())))),
                };
                coboundaries.push(lay.flatten(&d));
            }
        }
    }
    let b = Echelon::from_vectors(lay.len, &coboundaries);
    let reps = complement_vectors(lay.len, b.basis(), &cocycles);
    Ext1 {
        dim: reps.len(),
        basis: reps.iter().map(|v| lay.unflatten(v)).collect(),
    }
}

/// True iff `ξ` is a coboundary.
pub fn is_coboundary(m: &Representation, n: &Representation, xi: &ExtensionDatum) -> bool {
    let lay = XiLayout::new(m, n);
    let mut e = Echelon::new(lay.len);
    for v in Vertex::ALL {
        for i in 0..n.dim_at(v) {
            for j in 0..m.dim_at(v) {
                let mut eta = [Mat::zeros(n.dims().0, m.dims().0), Mat::zeros(n.dims().1, m.dims().1)];
                eta[v.index()].set(i, j, Q::one());
                let d = ExtensionDatum {
                    xi: Arrow::ALL.map(|a| {
                        eta[a.target().index()]
                            .mul(m.mat(a))
                            .sub(&n.mat(a).mul(&eta[a.source().index()]))
                    }),
                };
                e.insert(&lay.flatten(&d));
            }
        }
    }
    e.contains(&lay.flatten(xi))
}

/// The extension `0 → N → E → M → 0` with arrow blocks `[[N_a, ξ_a], [0, M_a]]`.
pub fn build_extension(m: &Representation, n: &Representation, xi: &ExtensionDatum) -> Result<Representation> {
    for a in Arrow::ALL {
        let x = xi.get(a);
        if (x.rows(), x.cols()) != (n.dim_at(a.target()), m.dim_at(a.source())) {
            return Err(Error::BadInput(format!("ξ_{} has the wrong shape", a.letter())));
        }
    }
    if !is_cocycle(m, n, xi) {
        return Err(Error::CocycleViolation("extension datum violates a relation".into()));
    }
    let block = |a: Arrow| {
        Mat::block(
            n.mat(a),
            xi.get(a),
            &Mat::zeros(m.dim_at(a.target()), n.dim_at(a.source())),
            m.mat(a),
        )
    };
    let (n0, n1) = n.dims();
    let (m0, m1) = m.dims();
    Representation::new(n0 + m0, n1 + m1, block(Arrow::X), block(Arrow::Y), block(Arrow::Z), block(Arrow::W))
}

/// Inclusion `N → E` and projection `E → M` of a built extension.
pub fn extension_maps(m: &Representation, n: &Representation) -> (ModuleMap, ModuleMap) {
    let incl = |k: usize, extra: usize| Mat::identity(k).transpose_stack(extra);
    let proj = |k: usize, extra: usize| Mat::zeros(k, extra).hstack(&Mat::identity(k));
    (
        ModuleMap {
            phi0: incl(n.dims().0, m.dims().0),
            phi1: incl(n.dims().1, m.dims().1),
        },
        ModuleMap {
            phi0: proj(m.dims().0, n.dims().0),
            phi1: proj(m.dims().1, n.dims().1),
        },
    )
}

trait Stack {
    fn transpose_stack(&self, extra_rows: usize) -> Mat;
}

impl Stack for Mat {
    /// `self` on top of `extra_rows` zero rows.
    fn transpose_stack(&self, extra_rows: usize) -> Mat {
        let mut rows = self.to_rows();
        rows.extend((0..extra_rows).map(|_| vec![Q::zero(); self.cols()]));
        Mat::from_rows(self.rows() + extra_rows, self.cols(), rows)
    }
}

/// Checks that inclusion and projection are module maps, injective and
/// surjective respectively, with zero composite.
pub fn verify_short_exact(m: &Representation, n: &Representation, e: &Representation) -> bool {
    let (i, p) = extension_maps(m, n);
    if !is_module_map(n, e, &i) || !is_module_map(e, m, &p) {
        return false;
    }
    Vertex::ALL.iter().all(|&v| {
        i.at(v).rank() == n.dim_at(v) && p.at(v).rank() == m.dim_at(v) && p.at(v).mul(i.at(v)).is_zero()
    })
}

pub const DEFAULT_SEED: u64 = 0;

/// True iff an invertible module map `R → S` exists; decided by testing
/// seeded random combinations of a hom basis.
pub fn iso_check(r: &Representation, s: &Representation, seed: u64) -> bool {
    if r.dims() != s.dims() {
        return false;
    }
    if r.is_zero() {
        return true;
    }
    let basis = hom(r, s);
    if basis.is_empty() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..24 {
        let range = 3 + 4 * attempt as i64;
        let mut f = ModuleMap {
            phi0: Mat::zeros(s.dims().0, r.dims().0),
            phi1: Mat::zeros(s.dims().1, r.dims().1),
        };
        for b in &basis {
            let c = q(rng.random_range(-range..=range));
            f.phi0 = f.phi0.add(&b.phi0.scale(&c));
            f.phi1 = f.phi1.add(&b.phi1.scale(&c));
        }
        if f.is_invertible() {
            return true;
        }
    }
    false
}

/// One cone step of the sphere pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct ConeStep {
    pub k: i32,
    pub sub_dims: (usize, usize),
    pub quotient_dims: (usize, usize),
    pub ext1_dim: usize,
    pub short_exact: bool,
}

#[derive(Clone, Debug)]
pub struct PsiSphere {
    pub rep: Representation,
    pub steps: Vec<ConeStep>,
    pub matches_catalog: bool,
}

pub const PSI_RANGE: std::ops::RangeInclusive<i32> = -5..=5;

/// Catalog module for the sphere `S_k`: `V+(k)` for `k ≥ 1`, `V−(-k)` for `k ≤ 0`.
pub fn sphere_catalog_kind(k: i32) -> RepKind {
    if k >= 1 {
        RepKind::VPlus(k as usize)
    } else {
        RepKind::VMinus((-k) as usize)
    }
}

/// Image of the sphere `S_k` by iterated extensions with `point(1:-1)`.
pub fn psi_sphere(k: i32, seed: u64) -> Result<PsiSphere> {
    if !PSI_RANGE.contains(&k) {
        return Err(Error::BadInput(format!("sphere index {k} outside -5..=5")));
    }
    let pt = make_catalog_rep(&RepKind::Point(q(1), q(-1)))?;
    let mut rep = make_catalog_rep(&RepKind::Simple(if k >= 1 { Vertex::V1 } else { Vertex::V0 }))?;
    let mut steps = Vec::new();
    let (range, up): (Vec<i32>, bool) = if k >= 2 {
        ((2..=k).collect(), true)
    } else if k <= -1 {
        ((k..=-1).rev().collect(), false)
    } else {
        (Vec::new(), true)
    };
    for j in range {
        let (quot, sub) = if up { (&pt, &rep) } else { (&rep, &pt) };
        let e = ext1(quot, sub);
        let xi = e
            .basis
            .first()
            .ok_or_else(|| Error::Internal(format!("no nonzero extension class at step {j}")))?;
        let next = build_extension(quot, sub, xi)?;
        steps.push(ConeStep {
            k: j,
            sub_dims: sub.dims(),
            quotient_dims: quot.dims(),
            ext1_dim: e.dim,
            short_exact: verify_short_exact(quot, sub, &next),
        });
        rep = next;
    }
    let cat = make_catalog_rep(&sphere_catalog_kind(k))?;
    let matches_catalog = iso_check(&rep, &cat, seed);
    Ok(PsiSphere {
        rep,
        steps,
        matches_catalog,
    })
}

// ---------------------------------------------------------------------------
// Ext via minimal graded projective resolutions over a truncated algebra.

/// A graded free module `⊕ P_{u_i}⟨ℓ_i⟩`, with `P_u` the paths starting at `u`.
#[derive(Clone, Debug, Default)]
struct FreeModule {
    gens: Vec<(Vertex, usize)>,
    /// `d(g_j)` as one element per summand of the previous module.
    diffs: Vec<Vec<FreePathElement>>,
}

/// Coordinates of the length-`ℓ`, vertex-`t` piece of a free module.
struct Piece {
    basis: Vec<(usize, Path)>,
    index: HashMap<(usize, Path), usize>,
}

fn piece(alg: &TruncatedAlgebra, f: &FreeModule, l: usize, t: Vertex) -> Piece {
    let mut basis = Vec::new();
    for (i, &(u, off)) in f.gens.iter().enumerate() {
        if l >= off {
            for p in alg.component_basis(u, t, l - off) {
                basis.push((i, p));
            }
        }
    }
    let index = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
    Piece { basis, index }
}

fn coords_of(alg: &TruncatedAlgebra, pc: &Piece, parts: &[(usize, FreePathElement)]) -> Vec<Q> {
    let mut v = vec![Q::zero(); pc.basis.len()];
    for (i, e) in parts {
        for (p, c) in alg.normal_form_truncating(e).terms() {
            let k = pc.index[&(*i, p.clone())];
            v[k] += c;
        }
    }
    v
}

/// Matrix of `d : F_k → F_{k-1}` on the `(ℓ, t)` pieces.
fn diff_matrix(alg: &TruncatedAlgebra, fk: &FreeModule, dom: &Piece, cod: &Piece) -> Mat {
    let cols: Vec<Vec<Q>> = dom
        .basis
        .iter()
        .map(|(j, b)| {
            let be = FreePathElement::from_path(b.clone());
            let parts: Vec<(usize, FreePathElement)> = fk.diffs[*j]
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(i, e)| (i, be.mul(e)))
                .collect();
            coords_of(alg, cod, &parts)
        })
        .collect();
    Mat::from_cols(cod.basis.len(), &cols)
}

/// Minimal projective resolution of the simple at `v`, up to homological
/// degree `top`, with generators of length at most `N`.
fn resolve_simple(alg: &TruncatedAlgebra, v: Vertex, top: usize) -> Vec<FreeModule> {
    let n = alg.n();
    let mut mods = vec![FreeModule {
        gens: vec![(v, 0)],
        diffs: vec![Vec::new()],
    }];
    for k in 0..top {
        let fk = mods[k].clone();
        let prev = if k == 0 { None } else { Some(mods[k - 1].clone()) };
        let mut next = FreeModule::default();
        // Kernel bases per (ℓ, t) in F_k coordinates.
        let mut kernels: BTreeMap<(usize, Vertex), Vec<Vec<Q>>> = BTreeMap::new();
        for l in 0..=n {
            for t in Vertex::ALL {
                let dom = piece(alg, &fk, l, t);
                let ker: Vec<Vec<Q>> = match &prev {
                    None if l == 0 => Vec::new(),
                    None => crate::reps::unit_vectors(dom.basis.len()),
                    Some(p) => {
                        let cod = piece(alg, p, l, t);
                        diff_matrix(alg, &fk, &dom, &cod).nullspace()
                    }
                };
                let mut rad = Echelon::new(dom.basis.len());
                if l > 0 {
                    for a in Arrow::ALL.iter().filter(|a| a.target() == t) {
                        let src = piece(alg, &fk, l - 1, a.source());
                        let ae = FreePathElement::arrow(*a);
                        for kv in kernels.get(&(l - 1, a.source())).into_iter().flatten() {
                            let mut parts = Vec::new();
                            for (c, (i, b)) in kv.iter().zip(&src.basis) {
                                if !c.is_zero() {
                                    parts.push((*i, ae.mul(&FreePathElement::from_path(b.clone())).scale(c)));
                                }
                            }
                            rad.insert(&coords_of(alg, &dom, &parts));
                        }
                    }
                }
                for kv in &ker {
                    if rad.insert(kv) {
                        let mut d = vec![FreePathElement::zero(); fk.gens.len()];
                        for (c, (i, b)) in kv.iter().zip(&dom.basis) {
                            if !c.is_zero() {
                                d[*i] = d[*i].add(&FreePathElement::from_term(b.clone(), c.clone()));
                            }
                        }
                        next.gens.push((t, l));
                        next.diffs.push(d);
                    }
                }
                kernels.insert((l, t), ker);
            }
        }
        mods.push(next);
    }
    mods
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtReport {
    pub dims: Vec<usize>,
    /// Generators `(vertex, length)` of each resolution term.
    pub resolution: Vec<Vec<(Vertex, usize)>>,
    pub truncation: usize,
}

impl ExtReport {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn euler(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

fn ext_dims_at(v: Vertex, m: &Representation, up_to: usize, n: usize) -> Result<ExtReport> {
    let alg = TruncatedAlgebra::new(n)?;
    let mods = resolve_simple(&alg, v, up_to + 1);
    // δ^k : C^k → C^{k+1}, block (j, i) = M(p_ji).
    let cdim = |f: &FreeModule| f.gens.iter().map(|&(u, _)| m.dim_at(u)).sum::<usize>();
    let mut ranks = Vec::new();
    for k in 0..=up_to {
        let (fk, fk1) = (&mods[k], &mods[k + 1]);
        let mut mat = Mat::zeros(cdim(fk1), cdim(fk));
        let mut row = 0;
        for (j, &(uj, _)) in fk1.gens.iter().enumerate() {
            let mut col = 0;
            for (i, &(ui, _)) in fk.gens.iter().enumerate() {
                let p = &fk1.diffs[j][i];
                if !p.is_zero() {
                    let blk = m.act(p)?;
                    for r in 0..blk.rows() {
                        for c in 0..blk.cols() {
                            mat.set(row + r, col + c, blk.get(r, c).clone());
                        }
                    }
                }
                col += m.dim_at(ui);
            }
            row += m.dim_at(uj);
        }
        ranks.push(mat.rank());
    }
    let dims = (0..=up_to)
        .map(|k| cdim(&mods[k]) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect();
    Ok(ExtReport {
        dims,
        resolution: mods.iter().take(up_to + 1).map(|f| f.gens.clone()).collect(),
        truncation: n,
    })
}

/// `dim Ext^k(S_v, M)` for `k = 0..=up_to`, rerun at `N+1` for stabilization.
pub fn ext_dims(v: Vertex, m: &Representation, up_to: usize, n: usize) -> Result<ExtReport> {
    if n < 6 {
        return Err(Error::BadInput("ext_dims needs N ≥ 6".into()));
    }
    if up_to > 3 {
        return Err(Error::BadInput("ext_dims computes degrees 0..=3".into()));
    }
    if !m.is_nilpotent() {
        return Err(Error::BadInput("module is not nilpotent".into()));
    }
    let a = ext_dims_at(v, m, up_to, n)?;
    let b = ext_dims_at(v, m, up_to, n + 1)?;
    if a.dims != b.dims || a.resolution != b.resolution {
        return Err(Error::NotStabilized(format!(
            "Ext dims {:?} at N={n} vs {:?} at N={}",
            a.dims,
            b.dims,
            n + 1
        )));
    }
    Ok(a)
}

// ---------------------------------------------------------------------------
// Cohomology of free complexes.

struct CohPiece {
    /// `(generator, path)` pairs spanning the chain space.
    basis: Vec<(usize, Path)>,
    index: HashMap<(usize, Path), usize>,
}

fn coh_piece(alg: &TruncatedAlgebra, c: &FreeComplex, wts: &[usize], deg: i32, w: usize, t: Vertex) -> CohPiece {
    let mut basis = Vec::new();
    for (g, gen) in c.generators().iter().enumerate() {
        if gen.degree == deg && w >= wts[g] {
            for p in alg.component_basis(gen.vertex, t, w - wts[g]) {
                basis.push((g, p));
            }
        }
    }
    let index = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
    CohPiece { basis, index }
}

fn coh_coords(alg: &TruncatedAlgebra, pc: &CohPiece, parts: &[(usize, FreePathElement)]) -> Vec<Q> {
    let mut v = vec![Q::zero(); pc.basis.len()];
    for (g, e) in parts {
        for (p, c) in alg.normal_form_truncating(e).terms() {
            v[pc.index[&(*g, p.clone())]] += c;
        }
    }
    v
}

fn complex_diff(alg: &TruncatedAlgebra, c: &FreeComplex, dom: &CohPiece, cod: &CohPiece) -> Mat {
    let cols: Vec<Vec<Q>> = dom
        .basis
        .iter()
        .map(|(g, b)| {
            let be = FreePathElement::from_path(b.clone());
            let parts: Vec<(usize, FreePathElement)> = (0..c.len())
                .filter(|&h| !c.entry(*g, h).is_zero())
                .map(|h| (h, be.mul(c.entry(*g, h))))
                .collect();
            coh_coords(alg, cod, &parts)
        })
        .collect();
    Mat::from_cols(cod.basis.len(), &cols)
}

struct HPiece {
    piece: CohPiece,
    reps: Vec<Vec<Q>>,
    coords: QuotientCoords,
}

/// Cohomology of a free complex, per degree after the shift by 3.
#[derive(Clone, Debug)]
pub struct Cohomology {
    /// Finite-dimensional cohomology, kept up to weight `N-3`.
    pub degrees: BTreeMap<i32, Representation>,
    /// Degrees whose cohomology is still nonzero at weight `N-2`, so it does
    /// not fit in the truncation.
    pub unbounded: Vec<i32>,
}

/// Cohomology per degree at a single truncation.
fn cohomology_at(c: &FreeComplex, n: usize) -> Result<Cohomology> {
    let alg = TruncatedAlgebra::new(n)?;
    if !c.d_squared_in_ideal(&alg) {
        return Err(Error::BadInput("d² does not vanish in the Jacobi algebra".into()));
    }
    let wts = c.weights()?;
    let degrees: std::collections::BTreeSet<i32> = c.generators().iter().map(|g| g.degree).collect();
    let top = n - 2;
    let mut hs: BTreeMap<(i32, usize, Vertex), HPiece> = BTreeMap::new();
    let mut unbounded = Vec::new();
    for &deg in &degrees {
        for w in 0..=top {
            for t in Vertex::ALL {
                let pc = coh_piece(&alg, c, &wts, deg, w, t);
                let dim = pc.basis.len();
                let next = coh_piece(&alg, c, &wts, deg + 1, w, t);
                let z = complex_diff(&alg, c, &pc, &next).nullspace();
                let prev = coh_piece(&alg, c, &wts, deg - 1, w, t);
                let dm = complex_diff(&alg, c, &prev, &pc);
                let b: Vec<Vec<Q>> = (0..dm.cols()).map(|j| dm.col(j)).collect();
                let b = Echelon::from_vectors(dim, &b).basis().to_vec();
                let reps = complement_vectors(dim, &b, &z);
                if w == top && !reps.is_empty() && unbounded.last() != Some(&(deg - 3)) {
                    unbounded.push(deg - 3);
                }
                let coords = QuotientCoords::new(dim, &reps, &b);
                hs.insert(
                    (deg, w, t),
                    HPiece {
                        piece: pc,
                        reps,
                        coords,
                    },
                );
            }
        }
    }
    let mut out = BTreeMap::new();
    for &deg in degrees.iter().filter(|&&d| !unbounded.contains(&(d - 3))) {
        // Block offsets of each weight inside V_t.
        let mut offs: BTreeMap<(usize, Vertex), usize> = BTreeMap::new();
        let mut dims = [0usize; 2];
        for w in 0..top {
            for t in Vertex::ALL {
                offs.insert((w, t), dims[t.index()]);
                dims[t.index()] += hs[&(deg, w, t)].reps.len();
            }
        }
        if dims == [0, 0] {
            continue;
        }
        let mut mats: Vec<Mat> = Arrow::ALL
            .iter()
            .map(|a| Mat::zeros(dims[a.target().index()], dims[a.source().index()]))
            .collect();
        for (ai, &a) in Arrow::ALL.iter().enumerate() {
            let ae = FreePathElement::arrow(a);
            for w in 0..top {
                let src = &hs[&(deg, w, a.source())];
                let dst = &hs[&(deg, w + 1, a.target())];
                for (ri, r) in src.reps.iter().enumerate() {
                    let mut parts = Vec::new();
                    for (cf, (g, b)) in r.iter().zip(&src.piece.basis) {
                        if !cf.is_zero() {
                            parts.push((*g, ae.mul(&FreePathElement::from_path(b.clone())).scale(cf)));
                        }
                    }
                    let v = coh_coords(&alg, &dst.piece, &parts);
                    let cs = dst
                        .coords
                        .coords(&v)
                        .ok_or_else(|| Error::Internal("arrow action leaves the cocycles".into()))?;
                    if w + 1 < top {
                        let (ro, co) = (offs[&(w + 1, a.target())], offs[&(w, a.source())]);
                        for (k, x) in cs.into_iter().enumerate() {
                            mats[ai].set(ro + k, co + ri, x);
                        }
                    }
                }
            }
        }
        let [x, y, z, w] = <[Mat; 4]>::try_from(mats).expect("four arrows");
        out.insert(deg - 3, Representation::new(dims[0], dims[1], x, y, z, w)?);
    }
    Ok(Cohomology {
        degrees: out,
        unbounded,
    })
}

/// Cohomology of a free complex over the Jacobi algebra, as a representation
/// per degree (shifted so generators of degree 3 land in degree 0). Only the
/// part of weight `≤ N-3` is kept and the result must agree with the one at
/// `N+1`, both in the bounded degrees (up to isomorphism) and in the list of
/// unbounded ones.
pub fn free_complex_cohomology(c: &FreeComplex, n: usize, seed: u64) -> Result<Cohomology> {
    if n < 6 {
        return Err(Error::BadInput("free_complex_cohomology needs N ≥ 6".into()));
    }
    let a = cohomology_at(c, n)?;
    let b = cohomology_at(c, n + 1)?;
    let same = a.unbounded == b.unbounded
        && a.degrees.len() == b.degrees.len()
        && a
            .degrees
            .iter()
            .zip(&b.degrees)
            .all(|((da, ra), (db, rb))| da == db && iso_check(ra, rb, seed));
    if !same {
        return Err(Error::NotStabilized(format!("cohomology differs between N={n} and N={}", n + 1)));
    }
    Ok(a)
}

// ---------------------------------------------------------------------------
// Flop of point modules.

#[derive(Clone, Debug, Serialize)]
pub struct Triangle {
    pub sub: (usize, usize),
    pub total: (usize, usize),
    pub quotient: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct FlopPointReport {
    pub triangle: Triangle,
    pub k_class: (i64, i64),
    pub verdict: StabilityVerdict,
    /// The witness is the simple at `v1` and its phase exceeds the total.
    pub witness_is_simple_v1: bool,
}

/// Triangle `S(v1) → Pt → S(v0)`, K-class image and verdict in the flopped chamber.
pub fn flop_point_analysis(pt: &Representation, p: &StabilityParams) -> Result<FlopPointReport> {
    if pt.dims() != (1, 1) || !pt.mat(Arrow::Y).is_zero() || !pt.mat(Arrow::W).is_zero() {
        return Err(Error::BadInput("expected a point module with y = w = 0".into()));
    }
    if pt.mat(Arrow::X).is_zero() && pt.mat(Arrow::Z).is_zero() {
        return Err(Error::BadInput("point module has x = z = 0".into()));
    }
    if p.chamber()? != Chamber::Zeta0Less {
        return Err(Error::BadInput("parameters are not in the flopped chamber".into()));
    }
    let s1 = vec![vec![Q::one()]];
    if !pt.is_subrep(&[], &s1) {
        return Err(Error::Internal("simple at v1 is not a subobject".into()));
    }
    let verdict = is_stable(pt, p)?;
    let witness_is_simple_v1 = match &verdict {
        StabilityVerdict::Unstable { witness } => {
            witness.dims == (0, 1)
                && phase_cmp(&p.charge((0, 1)), &p.charge((1, 1)))? == std::cmp::Ordering::Greater
        }
        _ => false,
    };
    Ok(FlopPointReport {
        triangle: Triangle {
            sub: (0, 1),
            total: (1, 1),
            quotient: (1, 0),
        },
        k_class: flop_k((1, 1)),
        verdict,
        witness_is_simple_v1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::{m1b_table, CatalogTarget};

    fn rep(s: &str) -> Representation {
        make_catalog_rep(&RepKind::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn hom_dims() {
        assert_eq!(hom(&rep("simple:0"), &rep("simple:0")).len(), 1);
        assert_eq!(hom(&rep("vplus:2"), &rep("vplus:2")).len(), 1);
        assert_eq!(hom(&rep("point:1,0"), &rep("point:0,1")).len(), 0);
        for f in hom(&rep("vplus:3"), &rep("vplus:3")) {
            assert!(is_module_map(&rep("vplus:3"), &rep("vplus:3"), &f));
        }
    }

    #[test]
    fn ext1_dims() {
        assert_eq!(ext1(&rep("simple:0"), &rep("simple:1")).dim, 2);
        assert_eq!(ext1(&rep("simple:0"), &rep("simple:0")).dim, 0);
        assert_eq!(ext1(&rep("point:1,-1"), &rep("vplus:2")).dim, 1);
    }

    #[test]
    fn extensions() {
        let (m, n) = (rep("simple:0"), rep("simple:1"));
        let one = Mat::from_i64(1, 1, &[1]);
        let xi = ExtensionDatum::from_arrows(&m, &n, &[(Arrow::X, one.clone()), (Arrow::Z, one)]).unwrap();
        let e = build_extension(&m, &n, &xi).unwrap();
        assert!(iso_check(&e, &rep("point:1,1"), 0));
        assert!(verify_short_exact(&m, &n, &e));
        let z = build_extension(&m, &n, &ExtensionDatum::zero(&m, &n)).unwrap();
        assert_eq!(z, n.direct_sum(&m));
        let pt = rep("point:1,-1");
        let v2 = rep("vplus:2");
        let cls = ext1(&pt, &v2).basis[0].clone();
        assert!(!is_coboundary(&pt, &v2, &cls));
        assert!(iso_check(&build_extension(&pt, &v2, &cls).unwrap(), &rep("vplus:3"), 0));
    }

    #[test]
    fn cocycle_violation_rejected() {
        let (m, n) = (rep("point:1,0"), rep("point-flopped:1,0"));
        let one = Mat::from_i64(1, 1, &[1]);
        let xi = ExtensionDatum::from_arrows(&m, &n, &[(Arrow::Y, one.clone()), (Arrow::W, one)]).unwrap();
        if !is_cocycle(&m, &n, &xi) {
            assert!(matches!(build_extension(&m, &n, &xi), Err(Error::CocycleViolation(_))));
        }
    }

    #[test]
    fn iso_examples() {
        assert!(iso_check(&rep("vplus:2"), &rep("vplus:2"), 0));
        assert!(!iso_check(&rep("point:1,1"), &rep("point:1,2"), 0));
        assert!(iso_check(&rep("point:1,1"), &rep("point:2,2"), 0));
        assert!(!iso_check(&rep("vplus:2"), &rep("vminus:1"), 0));
    }

    #[test]
    fn sphere_pipeline() {
        for k in -3..=4 {
            let ps = psi_sphere(k, 0).unwrap();
            assert!(ps.matches_catalog, "k={k}");
            assert!(ps.steps.iter().all(|s| s.short_exact && s.ext1_dim >= 1), "k={k}");
        }
        assert_eq!(psi_sphere(3, 0).unwrap().rep.dims(), (2, 3));
        assert_eq!(psi_sphere(-2, 0).unwrap().rep.dims(), (3, 2));
        assert!(psi_sphere(6, 0).is_err());
    }

    #[test]
    fn ext_between_simples() {
        let a = ext_dims(Vertex::V0, &rep("simple:0"), 3, 6).unwrap();
        assert_eq!(a.dims, vec![1, 0, 0, 1]);
        let b = ext_dims(Vertex::V0, &rep("simple:1"), 3, 6).unwrap();
        assert_eq!(b.dims, vec![0, 2, 2, 0]);
        assert_eq!((a.total(), b.total(), a.euler(), b.euler()), (2, 4, 0, 0));
    }

    #[test]
    fn ext_matches_hom_and_ext1() {
        for v in Vertex::ALL {
            for t in ["simple:0", "simple:1"] {
                let s = make_catalog_rep(&RepKind::Simple(v)).unwrap();
                let m = rep(t);
                let e = ext_dims(v, &m, 1, 6).unwrap();
                assert_eq!(e.dims[0], hom(&s, &m).len());
                assert_eq!(e.dims[1], ext1(&s, &m).dim);
            }
        }
    }

    #[test]
    fn cohomology_of_l0() {
        let c = m1b_table(&CatalogTarget::L0).unwrap();
        let h = free_complex_cohomology(&c, 6, 0).unwrap();
        assert!(h.unbounded.is_empty());
        assert_eq!(h.degrees.len(), 1);
        assert!(iso_check(&h.degrees[&0], &rep("simple:0"), 0));
    }

    #[test]
    fn cohomology_of_lc_and_spheres() {
        let c = m1b_table(&CatalogTarget::Lc(q(2))).unwrap();
        for n in [6, 7] {
            let h = free_complex_cohomology(&c, n, 0).unwrap();
            assert!(h.unbounded.is_empty());
            assert_eq!(h.degrees.keys().copied().collect::<Vec<_>>(), vec![0]);
            assert!(iso_check(&h.degrees[&0], &rep("point:1,2"), 0));
        }
        for m in [2usize, 3] {
            let c = m1b_table(&CatalogTarget::Sm(m)).unwrap();
            for n in [6, 7] {
                let h = free_complex_cohomology(&c, n, 0).unwrap();
                // The table lists only the top-degree generators, so lower degrees are not finite.
                assert_eq!(h.unbounded, vec![-1]);
                assert!(iso_check(&h.degrees[&0], &rep(&format!("vplus:{m}")), 0), "{:?}", h.degrees[&0]);
            }
        }
    }

    #[test]
    fn flop_point() {
        let p = StabilityParams::standard().swapped();
        let r = flop_point_analysis(&rep("point:1,1"), &p).unwrap();
        assert!(r.witness_is_simple_v1);
        assert_eq!(r.k_class, (1, 1));
        assert!(is_stable(&rep("point-flopped:1,1"), &p).unwrap().is_stable());
        assert!(flop_point_analysis(&rep("point:1,1"), &StabilityParams::standard()).is_err());
    }
}
