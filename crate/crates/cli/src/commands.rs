use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use conflop::ainfty::{mc_expand, m1b_table, stasheff_check};
use conflop::arcs::{catalog_arc, crossing_word, dehn_twist_map, flop_map, invariants, ArcJson};
use conflop::homalg::{
    build_extension, ext_dims, flop_point_analysis, free_complex_cohomology, iso_check, psi_sphere,
    verify_short_exact, ExtensionDatum,
};
use conflop::quiver::{cyclic_derivative, relations as relation_list};
use conflop::rational::{fmt_q, parse_q, show_q, CQ, Q};
use conflop::reps::{central_charge, flop_k, is_stable, make_catalog_rep, verify_witness, RepJson};
use conflop::scan::{normalize_sign, stable_dimvector_scan};
use conflop::verify::{run_all, run_criterion, CRITERIA};
use conflop::{
    AInftyTable, ArcLabel, Arrow, CatalogTarget, Error, FloerGenerator, Mat, PLArc, Potential, RepKind,
    Representation, SceneConfig, StabilityParams, StabilityVerdict, TruncatedAlgebra, Vertex,
};

use crate::{ArcOp, RepSource};

/// A failed run: exit code 2 for bad input, 1 for a failed internal check.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub msg: String,
}

impl CliError {
    pub fn bad(msg: impl Into<String>) -> Self {
        CliError { code: 2, msg: msg.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotStabilized(_) | Error::CocycleViolation(_) | Error::Internal(_) => 1,
            _ => 2,
        };
        CliError { code, msg: e.to_string() }
    }
}

/// Output of a command; `ok = false` means a verification failed.
pub struct Report {
    pub ok: bool,
    pub json: Value,
    pub text: String,
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn cq_json(z: &CQ) -> Value {
    json!([fmt_q(&z.re), fmt_q(&z.im)])
}

fn show_cq(z: &CQ) -> String {
    format!("{} + {}i", show_q(&z.re), show_q(&z.im))
}

fn params_json(p: &StabilityParams) -> Result<Value, CliError> {
    Ok(json!({
        "z0": cq_json(&p.z0),
        "z1": cq_json(&p.z1),
        "chamber": to_value(&p.chamber()?),
    }))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::bad(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::bad(format!("bad JSON in {}: {e}", path.display())))
}

fn load_rep(src: &RepSource) -> Result<(String, Representation), CliError> {
    match (&src.kind, &src.rep) {
        (Some(k), _) => Ok((k.clone(), make_catalog_rep(&RepKind::parse(k)?)?)),
        (None, Some(p)) => {
            let j: RepJson = read_json(p)?;
            Ok((p.display().to_string(), Representation::from_json(&j)?))
        }
        (None, None) => Err(CliError::bad("give --kind or --rep")),
    }
}

/// A catalog kind, or failing that a representation JSON file.
fn kind_or_file(s: &str) -> Result<Representation, CliError> {
    match RepKind::parse(s) {
        Ok(k) => Ok(make_catalog_rep(&k)?),
        Err(_) if Path::new(s).is_file() => Ok(Representation::from_json(&read_json(Path::new(s))?)?),
        Err(e) => Err(e.into()),
    }
}

fn mat_text(name: &str, m: &Mat) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(show_q).collect::<Vec<_>>().join(" "))
        .collect();
    format!("  {name} = [{}]\n", rows.join("; "))
}

fn rep_text(r: &Representation) -> String {
    let (d0, d1) = r.dims();
    let mut s = format!("dims ({d0}, {d1})\n");
    for a in Arrow::ALL {
        s += &mat_text(&a.letter().to_string(), r.mat(a));
    }
    s
}

fn dual(g: FloerGenerator) -> Option<Arrow> {
    Some(match g {
        FloerGenerator::XBar => Arrow::X,
        FloerGenerator::YBar => Arrow::Y,
        FloerGenerator::ZBar => Arrow::Z,
        FloerGenerator::WBar => Arrow::W,
        _ => return None,
    })
}

fn dual_name(a: Arrow) -> &'static str {
    match a {
        Arrow::X => FloerGenerator::XBar.name(),
        Arrow::Y => FloerGenerator::YBar.name(),
        Arrow::Z => FloerGenerator::ZBar.name(),
        Arrow::W => FloerGenerator::WBar.name(),
    }
}

pub fn relations() -> Result<Report, CliError> {
    let pot = Potential::conifold();
    let mut rows = Vec::new();
    let mut text = String::from("component  relation            d_a(potential)\n");
    for (a, r) in Arrow::ALL.iter().zip(relation_list()) {
        debug_assert_eq!(r, cyclic_derivative(&pot, *a));
        let rel = r.neg();
        let _ = writeln!(text, "{:<10} {:<19} {}", dual_name(*a), rel.to_string(), r);
        rows.push(json!({
            "component": dual_name(*a),
            "element": to_value(&rel.to_json()),
            "cyclic_derivative": {"arrow": a.letter().to_string(), "element": to_value(&r.to_json())},
        }));
    }
    Ok(Report {
        ok: true,
        json: Value::Array(rows),
        text,
    })
}

pub fn mc() -> Result<Report, CliError> {
    let pot = Potential::conifold();
    let comps = mc_expand(&AInftyTable::conifold());
    let mut ok = comps.len() == 4;
    let mut rows = Vec::new();
    let mut text = String::from("component  element             = -d_a(potential)\n");
    for a in Arrow::ALL {
        let g = FloerGenerator::ALL
            .into_iter()
            .find(|&g| dual(g) == Some(a))
            .expect("every arrow has a dual generator");
        let e = comps.get(&g).cloned().unwrap_or_default();
        let matches = e == cyclic_derivative(&pot, a).neg();
        ok &= matches;
        let _ = writeln!(text, "{:<10} {:<19} {}", g.name(), e.to_string(), matches);
        rows.push(json!({"component": g.name(), "element": to_value(&e.to_json())}));
    }
    Ok(Report {
        ok,
        json: Value::Array(rows),
        text,
    })
}

pub fn ainfty_check(arity: usize) -> Result<Report, CliError> {
    if !(2..=6).contains(&arity) {
        return Err(CliError::bad("arity must be between 2 and 6"));
    }
    let r = stasheff_check(&AInftyTable::conifold(), arity);
    let text = match &r.violation {
        None => format!("A-infinity relations hold up to arity {arity} ({} tuples)\n", r.tuples_checked),
        Some(v) => format!("violation on {:?}: {:?}\n", v.tuple, v.residue),
    };
    Ok(Report {
        ok: r.passed(),
        json: to_value(&r),
        text,
    })
}

pub fn truncate(n: usize) -> Result<Report, CliError> {
    let alg = TruncatedAlgebra::new(n)?;
    let table = alg.dim_table();
    let mut text = format!("N = {n}, total dimension {}\nsource target len dim\n", alg.total_dim());
    for e in &table {
        let _ = writeln!(text, "{:<6} {:<6} {:<3} {}", format!("{:?}", e.source), format!("{:?}", e.target), e.len, e.dim);
    }
    Ok(Report {
        ok: true,
        json: json!({"n": n, "total_dim": alg.total_dim(), "table": to_value(&table)}),
        text,
    })
}

pub fn rep_make(kind: &str, out: Option<&Path>) -> Result<Report, CliError> {
    let r = make_catalog_rep(&RepKind::parse(kind)?)?;
    let j = to_value(&r.to_json());
    if let Some(p) = out {
        let s = serde_json::to_string_pretty(&j).expect("JSON values always serialize");
        std::fs::write(p, s + "\n").map_err(|e| CliError::bad(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(Report {
        ok: true,
        json: j,
        text: format!("{kind}: {}", rep_text(&r)),
    })
}

pub fn rep_check(src: &RepSource) -> Result<Report, CliError> {
    let (name, r) = load_rep(src)?;
    let c = r.check();
    Ok(Report {
        ok: c.relations_ok && c.nilpotent,
        json: json!({"dims": [r.dims().0, r.dims().1], "relations_ok": c.relations_ok, "nilpotent": c.nilpotent}),
        text: format!("{name}: relations_ok {}, nilpotent {}\n", c.relations_ok, c.nilpotent),
    })
}

pub fn stable(src: &RepSource, p: &StabilityParams) -> Result<Report, CliError> {
    let (name, r) = load_rep(src)?;
    let v = is_stable(&r, p)?;
    let ok = match &v {
        StabilityVerdict::Unstable { witness } => verify_witness(&r, p, witness, false)?,
        StabilityVerdict::SemistableOnly { witness, .. } => verify_witness(&r, p, witness, true)?,
        _ => true,
    };
    let z = central_charge(&r, p)?;
    let mut text = format!(
        "{name} with z0 = {}, z1 = {} ({:?})\ncharge {}\nverdict {}\n",
        show_cq(&p.z0),
        show_cq(&p.z1),
        p.chamber()?,
        show_cq(&z),
        v.name()
    );
    match &v {
        StabilityVerdict::Stable { primes } => {
            let _ = writeln!(text, "certified over F_p for p in {primes:?}");
        }
        StabilityVerdict::Undetermined { flagged } => {
            let _ = writeln!(text, "unresolved dimension vectors {flagged:?}");
        }
        _ => {}
    }
    if let Some(w) = v.witness() {
        let _ = writeln!(text, "witness subrepresentation of dims {:?}", w.dims);
    }
    Ok(Report {
        ok,
        json: json!({
            "input": name,
            "params": params_json(p)?,
            "charge": cq_json(&z),
            "stability": to_value(&v.to_json()),
        }),
        text,
    })
}

pub fn scan(bound: usize, p: Option<StabilityParams>) -> Result<Report, CliError> {
    let chambers = match p {
        Some(p) => vec![p],
        None => vec![StabilityParams::standard(), StabilityParams::standard().swapped()],
    };
    let mut out = Vec::new();
    let mut text = String::new();
    for p in &chambers {
        let r = stable_dimvector_scan(p, bound)?;
        let mut dims = r.dims();
        dims.sort();
        let _ = writeln!(
            text,
            "{:?} (z0 = {}, z1 = {}): {:?}, {} representations checked",
            p.chamber()?,
            show_cq(&p.z0),
            show_cq(&p.z1),
            dims,
            r.representations_checked
        );
        out.push(json!({"params": params_json(p)?, "dims": dims, "report": to_value(&r)}));
    }
    Ok(Report {
        ok: true,
        json: json!({"bound": bound, "chambers": out}),
        text,
    })
}

pub fn psi(object: &str, n: usize, seed: u64) -> Result<Report, CliError> {
    let (kind, arg) = object
        .split_once(':')
        .ok_or_else(|| CliError::bad("object must be sphere:K, cone:MX,MZ or table:NAME"))?;
    match kind {
        "sphere" => {
            let k: i32 = arg
                .trim()
                .parse()
                .map_err(|_| CliError::bad(format!("bad sphere index {arg:?}")))?;
            let ps = psi_sphere(k, seed)?;
            let ok = ps.matches_catalog && ps.steps.iter().all(|s| s.short_exact);
            let mut j = to_value(&ps.rep.to_json());
            j["steps"] = to_value(&ps.steps);
            j["matches_catalog"] = json!(ps.matches_catalog);
            let mut text = format!("sphere {k}: {}", rep_text(&ps.rep));
            for s in &ps.steps {
                let _ = writeln!(
                    text,
                    "  step {}: {:?} -> E -> {:?}, ext1 dim {}, exact {}",
                    s.k, s.sub_dims, s.quotient_dims, s.ext1_dim, s.short_exact
                );
            }
            let _ = writeln!(text, "isomorphic to catalog: {}", ps.matches_catalog);
            Ok(Report { ok, json: j, text })
        }
        "cone" => {
            let (mx, mz) = arg
                .split_once(',')
                .ok_or_else(|| CliError::bad("cone expects MX,MZ"))?;
            let (mx, mz) = (parse_q(mx)?, parse_q(mz)?);
            let target = make_catalog_rep(&RepKind::Point(mx.clone(), mz.clone()))?;
            let s0 = make_catalog_rep(&RepKind::Simple(Vertex::V0))?;
            let s1 = make_catalog_rep(&RepKind::Simple(Vertex::V1))?;
            let one = |v: &Q| Mat::from_rows(1, 1, vec![vec![v.clone()]]);
            let xi = ExtensionDatum::from_arrows(&s0, &s1, &[(Arrow::X, one(&mx)), (Arrow::Z, one(&mz))])?;
            let e = build_extension(&s0, &s1, &xi)?;
            let exact = verify_short_exact(&s0, &s1, &e);
            let iso = iso_check(&e, &target, seed);
            let mut j = to_value(&e.to_json());
            j["short_exact"] = json!(exact);
            j["matches_catalog"] = json!(iso);
            let text = format!(
                "cone of simple(v0) -> simple(v1)[1] with (x, z) = ({}, {}): {}exact {exact}, isomorphic to point {iso}\n",
                show_q(&mx),
                show_q(&mz),
                rep_text(&e)
            );
            Ok(Report {
                ok: exact && iso,
                json: j,
                text,
            })
        }
        "table" => {
            let t = CatalogTarget::parse(arg)?;
            let c = m1b_table(&t)?;
            let h = free_complex_cohomology(&c, n, seed)?;
            let expected = match &t {
                CatalogTarget::L0 => Some(RepKind::Simple(Vertex::V0)),
                CatalogTarget::L1 => Some(RepKind::Simple(Vertex::V1)),
                CatalogTarget::Lc(rho) => Some(RepKind::Point(Q::from_integer(1.into()), rho.clone())),
                CatalogTarget::Sm(m) => Some(RepKind::VPlus(*m)),
            };
            let matches = match &expected {
                Some(k) => {
                    let want = make_catalog_rep(k)?;
                    h.degrees.get(&0).is_some_and(|r| iso_check(r, &want, seed))
                        && h.degrees.keys().all(|&d| d == 0)
                }
                None => true,
            };
            let degrees: serde_json::Map<String, Value> = h
                .degrees
                .iter()
                .map(|(d, r)| (d.to_string(), to_value(&r.to_json())))
                .collect();
            let mut text = format!("cohomology of {} at N = {n}\n", t.name());
            for (d, r) in &h.degrees {
                let _ = write!(text, "degree {d}: {}", rep_text(r));
            }
            if !h.unbounded.is_empty() {
                let _ = writeln!(text, "not finite in the truncation: degrees {:?}", h.unbounded);
            }
            let _ = writeln!(text, "degree 0 matches catalog: {matches}");
            Ok(Report {
                ok: matches,
                json: json!({
                    "target": t.name(),
                    "n": n,
                    "degrees": degrees,
                    "unbounded": h.unbounded,
                    "matches_catalog": matches,
                }),
                text,
            })
        }
        _ => Err(CliError::bad(format!("unknown object kind {kind:?}"))),
    }
}

pub fn ext(from: &str, to: &str, n: usize) -> Result<Report, CliError> {
    let v = match RepKind::parse(from)? {
        RepKind::Simple(v) => v,
        _ => return Err(CliError::bad("--from must be simple:0 or simple:1")),
    };
    let m = kind_or_file(to)?;
    let r = ext_dims(v, &m, 3, n)?;
    let text = format!(
        "Ext^k({from}, {to}) for k = 0..3: {:?}, total {}, alternating sum {} (N = {n})\n",
        r.dims,
        r.total(),
        r.euler()
    );
    let mut j = to_value(&r);
    j["total"] = json!(r.total());
    j["euler"] = json!(r.euler());
    Ok(Report { ok: true, json: j, text })
}

fn parse_ints(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::bad(format!("expected D0,D1 but got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

pub fn flop_dimvec(s: &str) -> Result<Report, CliError> {
    let d = parse_ints(s)?;
    let img = flop_k(d);
    let norm = normalize_sign(img);
    Ok(Report {
        ok: flop_k(img) == d,
        json: json!({"input": [d.0, d.1], "image": [img.0, img.1], "normalized": [norm.0, norm.1]}),
        text: format!("flop_K{d:?} = {img:?}, up to sign {norm:?}\n"),
    })
}

pub fn flop_point(s: &str, p: &StabilityParams) -> Result<Report, CliError> {
    let (mx, mz) = s
        .split_once(',')
        .ok_or_else(|| CliError::bad("--point expects MX,MZ"))?;
    let pt = make_catalog_rep(&RepKind::Point(parse_q(mx)?, parse_q(mz)?))?;
    let r = flop_point_analysis(&pt, p)?;
    let t = &r.triangle;
    let text = format!(
        "triangle {:?} -> {:?} -> {:?}\nK-class {:?}\nverdict {}, destabilized by simple(v1): {}\n",
        t.sub, t.total, t.quotient, r.k_class, r.verdict.name(), r.witness_is_simple_v1
    );
    Ok(Report {
        ok: r.witness_is_simple_v1,
        json: json!({
            "params": params_json(p)?,
            "triangle": to_value(t),
            "k_class": [r.k_class.0, r.k_class.1],
            "stability": to_value(&r.verdict.to_json()),
            "witness_is_simple_v1": r.witness_is_simple_v1,
        }),
        text,
    })
}

pub fn arc(op: ArcOp, file: Option<&Path>, label: Option<&str>, inverse: bool, cfg: &SceneConfig) -> Result<Report, CliError> {
    let (name, a) = match (file, label) {
        (Some(p), _) => {
            let j: ArcJson = read_json(p)?;
            (p.display().to_string(), PLArc::from_json(&j, cfg)?)
        }
        (None, Some(l)) => {
            let l = ArcLabel::parse(l)?;
            (l.name(), catalog_arc(l, cfg)?)
        }
        (None, None) => return Err(CliError::bad("give --arc or --catalog")),
    };
    let before = invariants(&a, cfg)?;
    let out = match op {
        ArcOp::Invariants => a.clone(),
        ArcOp::Flop => flop_map(&a, cfg)?,
        ArcOp::Twist => dehn_twist_map(&a, cfg, inverse)?,
    };
    let after = invariants(&out, cfg)?;
    let word = crossing_word(&out, cfg)?;
    let op_name = match op {
        ArcOp::Invariants => "invariants",
        ArcOp::Flop => "flop",
        ArcOp::Twist if inverse => "inverse twist",
        ArcOp::Twist => "twist",
    };
    let text = format!(
        "{name}, {op_name}: ray crossings {}, segment crossings {}, start {:?}, orientation {}\ncrossing word {:?}\n",
        after.ray_crossings, after.seg_crossings, after.start, after.orientation, word
    );
    let mut j = json!({
        "input": name,
        "op": op_name,
        "invariants": to_value(&after),
        "crossing_word": to_value(&word),
    });
    if op != ArcOp::Invariants {
        j["input_invariants"] = to_value(&before);
        j["arc"] = to_value(&out.to_json());
    }
    Ok(Report { ok: true, json: j, text })
}

pub fn verify_all(only: &[u8], timings: bool, seed: u64) -> Result<Report, CliError> {
    let results = if only.is_empty() {
        run_all(seed, true)
    } else {
        let mut v = Vec::new();
        for &id in only {
            v.push(run_criterion(id, seed, true).ok_or_else(|| {
                CliError::bad(format!("no criterion {id}; valid ids are 1..={}", CRITERIA.len()))
            })?);
        }
        v
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &results {
        let _ = writeln!(
            text,
            "[{}] criterion {:>2}: {} ({} ms) - {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.title,
            r.millis,
            r.detail
        );
        let mut j = json!({"id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail});
        if timings {
            j["millis"] = json!(r.millis);
        }
        rows.push(j);
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let _ = writeln!(text, "{passed} of {} criteria passed", results.len());
    Ok(Report {
        ok: passed == results.len(),
        json: Value::Array(rows),
        text,
    })
}
