//! Fixed workloads shared by the benchmarks and their smoke test.

use conflop::ainfty::{stasheff_check, AInftyTable};
use conflop::arcs::{catalog_arc, flop_map, invariants, ArcInvariants};
use conflop::homalg::{ext_dims, psi_sphere};
use conflop::reps::{is_stable, make_catalog_rep};
use conflop::scan::stable_dimvector_scan;
use conflop::{ArcLabel, RepKind, Result, SceneConfig, StabilityParams, StabilityVerdict, TruncatedAlgebra, Vertex};

pub fn truncated_algebra(n: usize) -> Result<usize> {
    Ok(TruncatedAlgebra::new(n)?.total_dim())
}

pub fn stasheff(arity: usize) -> usize {
    stasheff_check(&AInftyTable::conifold(), arity).tuples_checked
}

pub fn stability_vplus(m: usize, flopped: bool) -> Result<StabilityVerdict> {
    let p = StabilityParams::standard();
    let p = if flopped { p.swapped() } else { p };
    is_stable(&make_catalog_rep(&RepKind::VPlus(m))?, &p)
}

pub fn scan(bound: usize) -> Result<Vec<(usize, usize)>> {
    Ok(stable_dimvector_scan(&StabilityParams::standard(), bound)?.dims())
}

pub fn sphere(k: i32) -> Result<bool> {
    Ok(psi_sphere(k, 0)?.matches_catalog)
}

pub fn ext_simple(n: usize) -> Result<Vec<usize>> {
    let s1 = make_catalog_rep(&RepKind::Simple(Vertex::V1))?;
    Ok(ext_dims(Vertex::V0, &s1, 3, n)?.dims)
}

pub fn arc_flop(k: i32) -> Result<ArcInvariants> {
    let cfg = SceneConfig::standard();
    invariants(&flop_map(&catalog_arc(ArcLabel::S(k), &cfg)?, &cfg)?, &cfg)
}
