//! Complexes of free modules over the conifold path algebra.
//!
//! A generator `g` sits at vertex `v(g)`; elements are `p·g` with `p` a path
//! starting at `v(g)`. The differential is `d(p·g) = Σ_h p·c(g,h)·h`, where
//! the entry `c(g,h)` is a combination of paths from `v(h)` to `v(g)`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{FreePathElement, TermJson, TruncatedAlgebra, Vertex};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    pub vertex: Vertex,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32, vertex: Vertex) -> Self {
        Generator {
            name: name.into(),
            degree,
            vertex,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    gens: Vec<Generator>,
    /// `diff[g][h] = c(g,h)`.
    diff: Vec<Vec<FreePathElement>>,
}

impl FreeComplex {
    /// Builds a complex from `(from, to, coefficient)` entries, checking that
    /// degrees rise by one and every path runs from `v(to)` to `v(from)`.
    pub fn new(gens: Vec<Generator>, entries: Vec<(&str, &str, FreePathElement)>) -> Result<Self> {
        let n = gens.len();
        let mut c = FreeComplex {
            diff: vec![vec![FreePathElement::zero(); n]; n],
            gens,
        };
        for (g, h, e) in entries {
            let gi = c.index(g)?;
            let hi = c.index(h)?;
            let sum = c.diff[gi][hi].add(&e);
            c.diff[gi][hi] = sum;
        }
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        for (gi, row) in self.diff.iter().enumerate() {
            for (hi, e) in row.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
                let (g, h) = (&self.gens[gi], &self.gens[hi]);
                if h.degree != g.degree + 1 {
                    return Err(Error::BadInput(format!(
                        "d({}) has a term on {} of the wrong degree",
                        g.name, h.name
                    )));
                }
                for (p, _) in e.terms() {
                    if p.source() != h.vertex || p.target() != g.vertex {
                        return Err(Error::BadInput(format!(
                            "coefficient {p} of {} in d({}) does not run {}→{}",
                            h.name, g.name, h.vertex, g.vertex
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::BadInput(format!("unknown generator {name:?}")))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn entry(&self, g: usize, h: usize) -> &FreePathElement {
        &self.diff[g][h]
    }

    /// `d(g)` by generator name, as `(target name, coefficient)` pairs.
    pub fn d(&self, name: &str) -> Result<Vec<(&str, &FreePathElement)>> {
        let gi = self.index(name)?;
        Ok(self.diff[gi]
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(h, e)| (self.gens[h].name.as_str(), e))
            .collect())
    }

    /// Copy with one entry multiplied by `k`.
    pub fn with_entry_scaled(&self, from: &str, to: &str, k: &Q) -> Result<Self> {
        let mut c = self.clone();
        let (g, h) = (self.index(from)?, self.index(to)?);
        c.diff[g][h] = c.diff[g][h].scale(k);
        Ok(c)
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, from: &str, to: &str, e: FreePathElement) -> Result<Self> {
        let mut c = self.clone();
        let (g, h) = (self.index(from)?, self.index(to)?);
        c.diff[g][h] = e;
        c.validate()?;
        Ok(c)
    }

    /// Copy with generator `name` replaced by `-name`.
    pub fn with_generator_negated(&self, name: &str) -> Result<Self> {
        let mut c = self.clone();
        let i = self.index(name)?;
        let minus = crate::rational::q(-1);
        for j in 0..self.len() {
            c.diff[i][j] = c.diff[i][j].scale(&minus);
            c.diff[j][i] = c.diff[j][i].scale(&minus);
        }
        Ok(c)
    }

    /// Entries of `d∘d` over the free path algebra.
    pub fn d_squared(&self) -> Vec<Vec<FreePathElement>> {
        let n = self.len();
        let mut out = vec![vec![FreePathElement::zero(); n]; n];
        for (g, row) in out.iter_mut().enumerate() {
            for h in (0..n).filter(|&h| !self.diff[g][h].is_zero()) {
                for (k, slot) in row.iter_mut().enumerate() {
                    if !self.diff[h][k].is_zero() {
                        *slot = slot.add(&self.diff[g][h].mul(&self.diff[h][k]));
                    }
                }
            }
        }
        out
    }

    /// True iff every entry of `d∘d` vanishes in the truncated Jacobi algebra.
    pub fn d_squared_in_ideal(&self, alg: &TruncatedAlgebra) -> bool {
        self.d_squared()
            .iter()
            .flatten()
            .all(|e| alg.normal_form_truncating(e).is_zero())
    }

    /// Weight offsets `ℓ` with `ℓ(g) = |c(g,h)| + ℓ(h)` for every term,
    /// normalized so the minimum over each connected piece is 0.
    pub fn weights(&self) -> Result<Vec<usize>> {
        let n = self.len();
        let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
        for g in 0..n {
            for h in 0..n {
                for (p, _) in self.diff[g][h].terms() {
                    let l = p.len() as i64;
                    adj[g].push((h, -l));
                    adj[h].push((g, l));
                }
            }
        }
        let mut w: Vec<Option<i64>> = vec![None; n];
        for start in 0..n {
            if w[start].is_some() {
                continue;
            }
            let mut comp = vec![start];
            w[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let wu = w[u].expect("visited");
                for &(v, delta) in &adj[u] {
                    match w[v] {
                        None => {
                            w[v] = Some(wu + delta);
                            comp.push(v);
                            queue.push_back(v);
                        }
                        Some(wv) if wv != wu + delta => {
                            return Err(Error::BadInput(format!(
                                "differential is not homogeneous in path length near {}",
                                self.gens[v].name
                            )));
                        }
                        Some(_) => {}
                    }
                }
            }
            let min = comp.iter().map(|&i| w[i].expect("visited")).min().unwrap_or(0);
            for &i in &comp {
                w[i] = Some(w[i].expect("visited") - min);
            }
        }
        Ok(w.into_iter().map(|x| x.expect("all visited") as usize).collect())
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            generators: self.gens.clone(),
            differential: self
                .diff
                .iter()
                .map(|row| row.iter().map(FreePathElement::to_json).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        let n = j.generators.len();
        if j.differential.len() != n || j.differential.iter().any(|r| r.len() != n) {
            return Err(Error::BadInput("differential must be a square matrix".into()));
        }
        let diff = j
            .differential
            .iter()
            .map(|row| row.iter().map(|e| FreePathElement::from_json(e)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        let c = FreeComplex {
            gens: j.generators.clone(),
            diff,
        };
        c.validate()?;
        Ok(c)
    }
}

/// JSON form `{generators: [{name, degree, vertex}], differential: [[terms]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub generators: Vec<Generator>,
    pub differential: Vec<Vec<Vec<TermJson>>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use Vertex::*;

    fn fpe(s: &str) -> FreePathElement {
        FreePathElement::parse(s).unwrap()
    }

    fn tiny() -> FreeComplex {
        FreeComplex::new(
            vec![Generator::new("a", 2, V1), Generator::new("b", 3, V0)],
            vec![("a", "b", fpe("x"))],
        )
        .unwrap()
    }

    #[test]
    fn validation_rejects_wrong_vertices() {
        let bad = FreeComplex::new(
            vec![Generator::new("a", 2, V0), Generator::new("b", 3, V0)],
            vec![("a", "b", fpe("x"))],
        );
        assert!(bad.is_err());
        let bad_degree = FreeComplex::new(
            vec![Generator::new("a", 2, V1), Generator::new("b", 2, V0)],
            vec![("a", "b", fpe("x"))],
        );
        assert!(bad_degree.is_err());
    }

    #[test]
    fn weights_and_json() {
        let c = tiny();
        assert_eq!(c.weights().unwrap(), vec![1, 0]);
        let back = FreeComplex::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        let neg = c.with_entry_scaled("a", "b", &q(-1)).unwrap();
        assert_eq!(neg.d("a").unwrap()[0].1, &fpe("-x"));
    }
}
