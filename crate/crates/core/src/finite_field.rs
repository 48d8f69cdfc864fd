//! Small finite fields and exhaustive subspace enumeration.
//!
//! Elements of `GF(q)` are `0..q`. For `q = 4` the elements are polynomials
//! `a + b·t` over `GF(2)` with `t² = t + 1`, encoded as `a | b << 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rational::{denom_lcm, numer_gcd, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf {
    q: u8,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Gf {
    /// `GF(q)` for `q ∈ {2, 3, 4, 5}`.
    pub fn new(q: u8) -> Result<Gf> {
        let n = q as usize;
        let (add, mul): (Vec<Vec<u8>>, Vec<Vec<u8>>) = match q {
            2 | 3 | 5 => (
                (0..n).map(|a| (0..n).map(|b| ((a + b) % n) as u8).collect()).collect(),
                (0..n).map(|a| (0..n).map(|b| ((a * b) % n) as u8).collect()).collect(),
            ),
            4 => {
                let mul4 = |a: usize, b: usize| -> u8 {
                    // (a0 + a1 t)(b0 + b1 t) with t² = t + 1.
                    let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
                    let c0 = (a0 * b0) ^ (a1 * b1);
                    let c1 = (a0 * b1) ^ (a1 * b0) ^ (a1 * b1);
                    (c0 | (c1 << 1)) as u8
                };
                (
                    (0..4).map(|a| (0..4).map(|b| (a ^ b) as u8).collect()).collect(),
                    (0..4).map(|a| (0..4).map(|b| mul4(a, b)).collect()).collect(),
                )
            }
            _ => return Err(Error::BadInput(format!("unsupported field size {q}"))),
        };
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| add[a][b] == 0).expect("additive inverse") as u8)
            .collect();
        let inv = (0..n)
            .map(|a| if a == 0 { 0 } else { (1..n).find(|&b| mul[a][b] == 1).expect("inverse") as u8 })
            .collect();
        Ok(Gf { q, add, mul, neg, inv })
    }

    pub fn size(&self) -> u8 {
        self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Image of an integer; only meaningful for prime `q`.
    pub fn from_int(&self, n: &BigInt) -> u8 {
        let m = BigInt::from(self.q);
        n.mod_floor(&m).to_u8().expect("residue fits")
    }

    /// `m·v` for a row-major matrix `m` and column vector `v`.
    pub fn mat_vec(&self, m: &[Vec<u8>], v: &[u8]) -> Vec<u8> {
        m.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
            })
            .collect()
    }

    /// RREF of the given rows with zero rows dropped.
    pub fn rref(&self, rows: &[Vec<u8>], cols: usize) -> Vec<Vec<u8>> {
        let mut a: Vec<Vec<u8>> = rows.to_vec();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, p);
            let inv = self.inv(a[r][c]);
            for x in a[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..a.len() {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        let t = self.mul(f, a[r][j]);
                        a[i][j] = self.sub(a[i][j], t);
                    }
                }
            }
            r += 1;
            if r == a.len() {
                break;
            }
        }
        a.truncate(r);
        a
    }

    pub fn rank(&self, rows: &[Vec<u8>], cols: usize) -> usize {
        self.rref(rows, cols).len()
    }

    /// Basis of `{v : m·v = 0}` for an `r × cols` matrix.
    pub fn kernel(&self, m: &[Vec<u8>], cols: usize) -> Vec<Vec<u8>> {
        let r = self.rref(m, cols);
        let pivots: Vec<usize> = r
            .iter()
            .map(|row| row.iter().position(|&x| x != 0).expect("nonzero row"))
            .collect();
        let mut out = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u8; cols];
            v[free] = 1;
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = self.neg[row[free] as usize];
            }
            out.push(v);
        }
        out
    }

    /// Rows spanning the annihilator of `span(basis)`: a matrix whose kernel
    /// is exactly `span(basis)`.
    pub fn annihilator(&self, basis: &[Vec<u8>], dim: usize) -> Vec<Vec<u8>> {
        if basis.is_empty() {
            return (0..dim)
                .map(|i| (0..dim).map(|j| u8::from(i == j)).collect())
                .collect();
        }
        self.kernel(basis, dim)
    }

    /// Every subspace of `GF(q)^d`, each as an RREF basis.
    pub fn subspaces(&self, d: usize) -> Vec<Vec<Vec<u8>>> {
        let mut out = Vec::new();
        for k in 0..=d {
            for pivots in combinations(d, k) {
                let mut free = Vec::new();
                for (i, &p) in pivots.iter().enumerate() {
                    for j in p + 1..d {
                        if !pivots.contains(&j) {
                            free.push((i, j));
                        }
                    }
                }
                let total = (self.q as usize).pow(free.len() as u32);
                for mut code in 0..total {
                    let mut rows = vec![vec![0u8; d]; k];
                    for (i, &p) in pivots.iter().enumerate() {
                        rows[i][p] = 1;
                    }
                    for &(i, j) in &free {
                        rows[i][j] = (code % self.q as usize) as u8;
                        code /= self.q as usize;
                    }
                    out.push(rows);
                }
            }
        }
        out
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Number of `k`-dimensional subspaces of `GF(q)^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    (num / den) as u64
}

/// Scales a rational matrix by a positive rational so that its entries are
/// coprime integers. The zero matrix is returned unchanged.
pub fn primitive_integer_matrix(m: &Mat) -> Vec<Vec<BigInt>> {
    let l = denom_lcm(m.entries());
    let scaled: Vec<Q> = m.entries().iter().map(|x| x * Q::from_integer(l.clone())).collect();
    let g = numer_gcd(&scaled);
    let g = if g.is_zero() { BigInt::from(1) } else { g.abs() };
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| scaled[i * m.cols() + j].numer() / &g)
                .collect()
        })
        .collect()
}

/// Arrow matrices `[x, y, z, w]` of a representation over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpRep {
    pub d0: usize,
    pub d1: usize,
    /// `x, z`: `d1 × d0`; `y, w`: `d0 × d1`, all row-major.
    pub x: Vec<Vec<u8>>,
    pub y: Vec<Vec<u8>>,
    pub z: Vec<Vec<u8>>,
    pub w: Vec<Vec<u8>>,
}

/// Realized sub-dimension vectors `(dim W0, dim W1)` of an `F_q`
/// representation with the number of subrepresentations of each type.
///
/// For every `W0` the admissible `W1` are the subspaces between
/// `A = xW0 + zW0` and `B = {v : yv, wv ∈ W0}`.
pub fn subrep_counts(f: &Gf, r: &FpRep) -> BTreeMap<(usize, usize), u64> {
    let mut out = BTreeMap::new();
    for w0 in f.subspaces(r.d0) {
        let k0 = w0.len();
        let mut images = Vec::new();
        for v in &w0 {
            images.push(f.mat_vec(&r.x, v));
            images.push(f.mat_vec(&r.z, v));
        }
        let a = f.rref(&images, r.d1);
        let ann = f.annihilator(&w0, r.d0);
        let mut constraint = Vec::new();
        for m in [&r.y, &r.w] {
            for row in &ann {
                // row · (m v) = (rowᵀ m) · v
                let c: Vec<u8> = (0..r.d1)
                    .map(|j| (0..r.d0).fold(0, |acc, i| f.add(acc, f.mul(row[i], m[i][j]))))
                    .collect();
                constraint.push(c);
            }
        }
        let b = f.kernel(&constraint, r.d1);
        let dim_b = b.len();
        let mut ab = b.clone();
        ab.extend(a.iter().cloned());
        if f.rank(&ab, r.d1) != dim_b {
            continue;
        }
        let dim_a = a.len();
        for k1 in dim_a..=dim_b {
            let c = gaussian_binomial(dim_b - dim_a, k1 - dim_a, f.size() as u64);
            *out.entry((k0, k1)).or_insert(0) += c;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in [2u8, 3, 4, 5] {
            let f = Gf::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    for c in 0..q {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        assert!(Gf::new(7).is_err());
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        for q in [2u8, 3, 4] {
            let f = Gf::new(q).unwrap();
            for d in 0..=3 {
                let subs = f.subspaces(d);
                let expected: u64 = (0..=d).map(|k| gaussian_binomial(d, k, q as u64)).sum();
                assert_eq!(subs.len() as u64, expected);
            }
        }
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
    }

    #[test]
    fn kernel_dimension() {
        let f = Gf::new(3).unwrap();
        let m = vec![vec![1, 2, 0], vec![2, 1, 0]];
        let k = f.kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(f.mat_vec(&m, v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn primitive_scaling() {
        let m = Mat::from_rows(1, 2, vec![vec![Q::new(2.into(), 3.into()), Q::new(4.into(), 9.into())]]);
        let p = primitive_integer_matrix(&m);
        assert_eq!(p, vec![vec![BigInt::from(3), BigInt::from(2)]]);
    }
}
