//! Exhaustive search for dimension vectors carrying a stable nilpotent
//! representation over the two-element field.
//!
//! Vectors in `F_2^d` are bitmasks and a matrix is the list of its column
//! masks. A subspace is stored as the set of its elements, a `u16` bitmask
//! over the `2^d ≤ 16` vectors. Every F2-stable representation found is then
//! rechecked over `F_4`, so a dimension vector is reported only when its
//! witness stays stable after extending scalars.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_field::{subrep_counts, FpRep, Gf};
use crate::reps::StabilityParams;
use crate::rational::CQ;

pub const MAX_SCAN_BOUND: usize = 5;

/// Integer central charges with the same phases as the rational ones.
#[derive(Copy, Clone, Debug)]
struct IntCharges {
    z0: (i128, i128),
    z1: (i128, i128),
}

impl IntCharges {
    fn new(p: &StabilityParams) -> Self {
        let l = [&p.z0.re, &p.z0.im, &p.z1.re, &p.z1.im]
            .iter()
            .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let conv = |c: &CQ| {
            let f = |x: &crate::rational::Q| (x * crate::rational::Q::from_integer(l.clone())).to_integer();
            (
                f(&c.re).to_i128().expect("small charges"),
                f(&c.im).to_i128().expect("small charges"),
            )
        };
        IntCharges {
            z0: conv(&p.z0),
            z1: conv(&p.z1),
        }
    }

    fn charge(&self, k0: usize, k1: usize) -> (i128, i128) {
        let (a, b) = (k0 as i128, k1 as i128);
        (a * self.z0.0 + b * self.z1.0, a * self.z0.1 + b * self.z1.1)
    }

    /// `arg Z(k) ≥ arg Z(t)`.
    fn phase_ge(&self, k: (usize, usize), t: (usize, usize)) -> bool {
        let u = self.charge(k.0, k.1);
        let v = self.charge(t.0, t.1);
        u.0 * v.1 - u.1 * v.0 <= 0
    }
}

/// Subspaces of `F_2^d` as element sets, with their dimensions.
fn subspaces_f2(d: usize) -> Vec<(u16, usize)> {
    let n = 1usize << d;
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    // Every subspace is the span of at most d vectors; closing subsets of a
    // growing list is enough at this size.
    let mut frontier = vec![1u16];
    seen.insert(1u16);
    while let Some(s) = frontier.pop() {
        for v in 0..n {
            if s >> v & 1 == 0 {
                let t = span_add(s, v as u8, n);
                if seen.insert(t) {
                    frontier.push(t);
                }
            }
        }
    }
    for s in seen {
        out.push((s, s.count_ones().trailing_zeros() as usize));
    }
    out
}

/// Element set of `span(S ∪ {v})`.
fn span_add(s: u16, v: u8, n: usize) -> u16 {
    if s >> v & 1 == 1 {
        return s;
    }
    let mut t = s;
    for u in 0..n {
        if s >> u & 1 == 1 {
            t |= 1 << (u as u8 ^ v);
        }
    }
    t
}

#[inline]
fn apply(cols: &[u8], v: u8) -> u8 {
    let mut out = 0;
    let mut bits = v;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        out ^= cols[i];
        bits &= bits - 1;
    }
    out
}

/// Image of a subspace (element set) under a linear map, as an element set.
fn image(s: u16, cols: &[u8], n_src: usize) -> u16 {
    let mut t = 1u16;
    for v in 0..n_src {
        if s >> v & 1 == 1 {
            t |= 1 << apply(cols, v as u8);
        }
    }
    t
}

fn span_union(a: u16, b: u16, n: usize) -> u16 {
    let mut s = a;
    for v in 0..n {
        if b >> v & 1 == 1 {
            s = span_add(s, v as u8, n);
        }
    }
    s
}

/// A representation over `F_2` with column-mask matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Rep {
    pub d0: usize,
    pub d1: usize,
    /// `x, z`: `d0` columns of `d1` bits.
    pub x: Vec<u8>,
    pub z: Vec<u8>,
    /// `y, w`: `d1` columns of `d0` bits.
    pub y: Vec<u8>,
    pub w: Vec<u8>,
}

impl F2Rep {
    fn decode(d0: usize, d1: usize, mut bits: u32) -> Self {
        let mut take = |cols: usize, h: usize| -> Vec<u8> {
            (0..cols)
                .map(|_| {
                    let c = (bits & ((1 << h) - 1)) as u8;
                    bits >>= h;
                    c
                })
                .collect()
        };
        let x = take(d0, d1);
        let z = take(d0, d1);
        let y = take(d1, d0);
        let w = take(d1, d0);
        F2Rep { d0, d1, x, z, y, w }
    }

    pub fn relations_hold(&self) -> bool {
        let a = |c: &[u8], v| apply(c, v);
        // xyz = zyx and zwx = xwz on V0.
        for i in 0..self.d0 {
            let e = 1u8 << i;
            if a(&self.x, a(&self.y, a(&self.z, e))) != a(&self.z, a(&self.y, a(&self.x, e))) {
                return false;
            }
            if a(&self.z, a(&self.w, a(&self.x, e))) != a(&self.x, a(&self.w, a(&self.z, e))) {
                return false;
            }
        }
        // yzw = wzy and wxy = yxw on V1.
        for i in 0..self.d1 {
            let f = 1u8 << i;
            if a(&self.y, a(&self.z, a(&self.w, f))) != a(&self.w, a(&self.z, a(&self.y, f))) {
                return false;
            }
            if a(&self.w, a(&self.x, a(&self.y, f))) != a(&self.y, a(&self.x, a(&self.w, f))) {
                return false;
            }
        }
        true
    }

    pub fn is_nilpotent(&self) -> bool {
        let (n0, n1) = (1usize << self.d0, 1usize << self.d1);
        let full = |n: usize| if n == 16 { u16::MAX } else { ((1u32 << n) - 1) as u16 };
        let (mut s0, mut s1) = (full(n0), full(n1));
        for _ in 0..=(self.d0 + self.d1) {
            let t1 = span_union(image(s0, &self.x, n0), image(s0, &self.z, n0), n1);
            let t0 = span_union(image(s1, &self.y, n1), image(s1, &self.w, n1), n0);
            (s0, s1) = (t0, t1);
        }
        s0 == 1 && s1 == 1
    }

    fn to_fp(&self) -> FpRep {
        let rows = |cols: &[u8], h: usize| -> Vec<Vec<u8>> {
            (0..h).map(|i| cols.iter().map(|c| c >> i & 1).collect()).collect()
        };
        FpRep {
            d0: self.d0,
            d1: self.d1,
            x: rows(&self.x, self.d1),
            y: rows(&self.y, self.d0),
            z: rows(&self.z, self.d1),
            w: rows(&self.w, self.d0),
        }
    }
}

/// Exhaustive F2 stability: no proper nonzero subrepresentation has phase ≥ the total.
fn stable_f2(r: &F2Rep, ch: &IntCharges, subs0: &[(u16, usize)]) -> bool {
    let (n0, n1) = (1usize << r.d0, 1usize << r.d1);
    let total = (r.d0, r.d1);
    let dim_of = |s: u16| s.count_ones().trailing_zeros() as usize;
    for &(w0, k0) in subs0 {
        let a = span_union(image(w0, &r.x, n0), image(w0, &r.z, n0), n1);
        let mut b = 0u16;
        for v in 0..n1 {
            let yv = apply(&r.y, v as u8);
            let wv = apply(&r.w, v as u8);
            if w0 >> yv & 1 == 1 && w0 >> wv & 1 == 1 {
                b |= 1 << v;
            }
        }
        if a & !b != 0 {
            continue;
        }
        // Phase of (k0, k1) is monotone in k1, so the extremes of the proper
        // range suffice.
        let (lo, hi) = (dim_of(a), dim_of(b));
        for k1 in [lo, (lo + 1).min(hi), hi.saturating_sub(1).max(lo), hi] {
            let k = (k0, k1);
            if k == (0, 0) || k == total {
                continue;
            }
            if ch.phase_ge(k, total) {
                return false;
            }
        }
    }
    true
}

/// Stability of an F2 representation after extending scalars to `F_4`.
fn stable_f4(r: &F2Rep, p: &StabilityParams) -> Result<bool> {
    let f = Gf::new(4)?;
    let ch = IntCharges::new(p);
    let total = (r.d0, r.d1);
    Ok(subrep_counts(&f, &r.to_fp())
        .keys()
        .all(|&k| k == (0, 0) || k == total || !ch.phase_ge(k, total)))
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub dims: (usize, usize),
    /// Relation-satisfying nilpotent representations visited before the first stable one.
    pub visited: u64,
    /// The first stable representation, as 0/1 matrices `[x, z, y, w]` in row-major form.
    pub witness: [Vec<Vec<u8>>; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub bound: usize,
    pub stable: Vec<ScanEntry>,
    pub representations_checked: u64,
}

impl ScanReport {
    pub fn dims(&self) -> Vec<(usize, usize)> {
        self.stable.iter().map(|e| e.dims).collect()
    }
}

/// Dimension vectors with `d0 + d1 ≤ bound` carrying an F2-stable nilpotent
/// representation whose stability survives extension to `F_4`.
pub fn stable_dimvector_scan(p: &StabilityParams, bound: usize) -> Result<ScanReport> {
    if bound > MAX_SCAN_BOUND {
        return Err(Error::BadInput(format!("scan bound {bound} exceeds {MAX_SCAN_BOUND}")));
    }
    if p.is_wall() {
        return Err(Error::OnWall);
    }
    let ch = IntCharges::new(p);
    let subs: Vec<Vec<(u16, usize)>> = (0..=bound.min(4)).map(subspaces_f2).collect();
    let mut stable = Vec::new();
    let mut checked = 0u64;
    for total in 1..=bound {
        for d0 in 0..=total {
            let d1 = total - d0;
            if d0 > 4 || d1 > 4 {
                // Any representation of (5,0) or (0,5) has simple subobjects of the same phase.
                continue;
            }
            let bits = 4 * d0 * d1;
            let mut visited = 0u64;
            for code in 0u64..(1u64 << bits) {
                let r = F2Rep::decode(d0, d1, code as u32);
                if !r.relations_hold() || !r.is_nilpotent() {
                    continue;
                }
                visited += 1;
                checked += 1;
                if stable_f2(&r, &ch, &subs[d0]) && stable_f4(&r, p)? {
                    let fp = r.to_fp();
                    stable.push(ScanEntry {
                        dims: (d0, d1),
                        visited,
                        witness: [fp.x, fp.z, fp.y, fp.w],
                    });
                    break;
                }
            }
        }
    }
    stable.sort_by_key(|e| e.dims);
    Ok(ScanReport {
        bound,
        stable,
        representations_checked: checked,
    })
}

/// Image of a set of dimension vectors under `flop_k`, with classes taken up
/// to sign and kept only when the total is at most `bound`.
pub fn flop_dimvector_set(set: &[(usize, usize)], bound: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = set
        .iter()
        .map(|&(a, b)| normalize_sign(crate::reps::flop_k((a as i64, b as i64))))
        .filter(|&(a, b)| a >= 0 && b >= 0 && (a + b) as usize <= bound)
        .map(|(a, b)| (a as usize, b as usize))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Representative of `±d` whose first nonzero entry is positive.
pub fn normalize_sign(d: (i64, i64)) -> (i64, i64) {
    if d.0 < 0 || (d.0 == 0 && d.1 < 0) {
        (-d.0, -d.1)
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::gaussian_binomial;

    #[test]
    fn subspace_enumeration_matches_gaussian_binomials() {
        for d in 0..=4 {
            let subs = subspaces_f2(d);
            for k in 0..=d {
                let n = subs.iter().filter(|s| s.1 == k).count() as u64;
                assert_eq!(n, gaussian_binomial(d, k, 2), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn vplus2_bits() {
        // x e1 = f1, z e1 = f2.
        let r = F2Rep {
            d0: 1,
            d1: 2,
            x: vec![0b01],
            z: vec![0b10],
            y: vec![0, 0],
            w: vec![0, 0],
        };
        assert!(r.relations_hold() && r.is_nilpotent());
        let p = StabilityParams::standard();
        let ch = IntCharges::new(&p);
        assert!(stable_f2(&r, &ch, &subspaces_f2(1)));
        let ch2 = IntCharges::new(&p.swapped());
        assert!(!stable_f2(&r, &ch2, &subspaces_f2(1)));
    }

    #[test]
    fn non_nilpotent_loop() {
        let r = F2Rep {
            d0: 1,
            d1: 1,
            x: vec![1],
            z: vec![0],
            y: vec![1],
            w: vec![0],
        };
        assert!(r.relations_hold());
        assert!(!r.is_nilpotent());
    }

    #[test]
    fn small_bound_scan() {
        let p = StabilityParams::standard();
        let rep = stable_dimvector_scan(&p, 3).unwrap();
        assert_eq!(rep.dims(), vec![(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)]);
        assert!(stable_dimvector_scan(&p, 6).is_err());
    }

    #[test]
    fn flop_set() {
        let s = [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 3), (3, 2)];
        assert_eq!(flop_dimvector_set(&s, 5), vec![(0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (3, 2)]);
        assert_eq!(normalize_sign((-1, 0)), (1, 0));
    }
}
