//! The reproduction table behind `verify-paper`.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::time::Instant;

use latpoly::constructions::{
    bipyramid, fixture, gamma, gamma_delta_formula, nill_bounds_check, prism01,
    prism_delta_formula, prism_sym, pyramid, pyramid_delta_formula, sylvester, sylvester_product,
    sylvester_simplex, sylvester_simplex_dual_map, sylvester_volume,
};
use latpoly::ehrhart::{delta_vector, delta_vector_simplex};
use latpoly::equivalence::{
    apply_map, are_equivalent, classify_self_duality, delta_self_dual, enumerate_reflexive_2d,
    gamma_equivalence_transfer_check,
};
use latpoly::ks_io::PolytopeReader;
use latpoly::{BigInt, DeltaVector, LatticePoint, Polytope, Rational};
use rayon::prelude::*;
use serde_json::json;

use crate::Report;

enum Row {
    Pass(String),
    Fail(String),
    Skipped(String),
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sorted(v: &[&[i64]]) -> Vec<LatticePoint> {
    let mut out: Vec<_> = v.iter().map(|c| LatticePoint::from_i64s(c)).collect();
    out.sort();
    out
}

fn err(e: latpoly::Error) -> String {
    e.to_string()
}

fn self_dual_triangle() -> Check {
    let p = fixture("example-1-1").expect("fixture");
    let d = p.polar_dual().map_err(err)?;
    ensure(
        d.vertices() == sorted(&[&[-1, 0], &[1, -2], &[1, 1]]).as_slice(),
        || format!("dual vertices {:?}", d.vertices()),
    )?;
    let m = are_equivalent(&p, &d)
        .map_err(err)?
        .ok_or("no witness for P ≅ P^∨")?;
    ensure(apply_map(&m, &p).map_err(err)? == d, || {
        "witness does not verify".into()
    })?;
    let delta = delta_vector(&p).map_err(err)?;
    ensure(
        delta == DeltaVector::from_i64s(&[1, 4, 1]).expect("valid"),
        || format!("δ = {delta}"),
    )?;
    Ok("dual (-1,0),(1,-2),(1,1); P ≅ P^∨; δ = 1 4 1".into())
}

fn delta_twin() -> Check {
    let p = fixture("example-1-9").expect("fixture");
    let d = p.polar_dual().map_err(err)?;
    let (a, b) = (
        delta_vector(&p).map_err(err)?,
        delta_vector(&d).map_err(err)?,
    );
    ensure(
        a == DeltaVector::from_i64s(&[1, 8, 8, 1]).expect("valid") && a == b,
        || format!("δ(P) = {a}, δ(P^∨) = {b}"),
    )?;
    ensure(d.num_vertices() == 5, || {
        format!("dual has {} vertices", d.num_vertices())
    })?;
    ensure(are_equivalent(&p, &d).map_err(err)?.is_none(), || {
        "P ≅ P^∨ found".into()
    })?;
    Ok("δ(P) = δ(P^∨) = 1 8 8 1; P^∨ has 5 vertices; P not ≅ P^∨".into())
}

fn formulas(corpus: &[Polytope]) -> Check {
    corpus.par_iter().try_for_each(|p| {
        let base = delta_vector(p).map_err(err)?;
        let g = delta_vector(&gamma(p)).map_err(err)?;
        ensure(g == gamma_delta_formula(&base).map_err(err)?, || {
            format!("Γ mismatch for δ = {base}")
        })?;
        let pr = delta_vector(&prism01(p)).map_err(err)?;
        ensure(pr == prism_delta_formula(&base).map_err(err)?, || {
            format!("prism mismatch for δ = {base}")
        })?;
        let py = delta_vector(&pyramid(p)).map_err(err)?;
        ensure(py == pyramid_delta_formula(&base), || {
            format!("pyramid mismatch for δ = {base}")
        })
    })?;
    Ok(format!("{} polytopes", corpus.len()))
}

fn gamma_structure(corpus: &[Polytope]) -> Check {
    corpus.par_iter().try_for_each(|p| {
        let g = gamma(p);
        ensure(g.is_reflexive(), || "Γ(P) not reflexive".into())?;
        let lhs = gamma(&p.polar_dual().map_err(err)?);
        let rhs = g.polar_dual().map_err(err)?;
        ensure(are_equivalent(&lhs, &rhs).map_err(err)?.is_some(), || {
            "Γ(P^∨) not ≅ Γ(P)^∨".into()
        })
    })?;
    Ok(format!("{} polytopes", corpus.len()))
}

fn ab_duality(corpus: &[Polytope]) -> Check {
    for p in corpus {
        let pd = p.polar_dual().map_err(err)?;
        ensure(
            prism_sym(p).polar_dual().map_err(err)? == bipyramid(&pd),
            || "A(P)^∨ != B(P^∨)".into(),
        )?;
        ensure(
            bipyramid(p).polar_dual().map_err(err)? == prism_sym(&pd),
            || "B(P)^∨ != A(P^∨)".into(),
        )?;
    }
    Ok(format!("{} polytopes", corpus.len()))
}

fn transfer(corpus: &[Polytope]) -> Check {
    let n = corpus.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .filter(|&(i, j)| corpus[i].dim() == corpus[j].dim())
        .collect();
    pairs.par_iter().try_for_each(|&(i, j)| {
        let r = gamma_equivalence_transfer_check(&corpus[i], &corpus[j]).map_err(err)?;
        ensure(r.passed(), || format!("pair ({i},{j}): {r:?}"))
    })?;
    Ok(format!("{} pairs", pairs.len()))
}

fn sylvester_row(d: usize) -> Check {
    let s = sylvester_simplex(d).map_err(err)?;
    ensure(s.is_reflexive(), || "not reflexive".into())?;
    let dual = s.polar_dual().map_err(err)?;
    ensure(are_equivalent(&dual, &s).map_err(err)?.is_some(), || {
        "search finds no P^∨ ≅ P".into()
    })?;
    let u = sylvester_simplex_dual_map(d).map_err(err)?;
    ensure(apply_map(&u, &dual).map_err(err)? == s, || {
        "explicit map fails".into()
    })?;
    let vol = s.normalized_volume().map_err(err)?;
    ensure(vol == sylvester_volume(d).map_err(err)?, || {
        format!("Vol = {vol}")
    })?;
    let bound = sylvester(d) - BigInt::from(1);
    ensure(vol < bound, || format!("Vol = {vol} >= {bound}"))?;
    let nb = nill_bounds_check(&s).map_err(err)?;
    ensure(nb.lower_holds(), || {
        format!("{} > {}", nb.lower, nb.product)
    })?;
    let delta = delta_vector_simplex(&s).map_err(err)?;
    ensure(delta.sum() == vol, || format!("δ = {delta}"))?;
    Ok(format!(
        "Vol {vol} < {bound}, Vol·Vol^∨ = {} >= {}",
        nb.product, nb.lower
    ))
}

fn fraction_identity() -> Check {
    let first: Vec<BigInt> = (0..5).map(sylvester).collect();
    ensure(first == [2, 3, 7, 43, 1807].map(BigInt::from), || {
        format!("{first:?}")
    })?;
    for n in 0..=8 {
        let lhs: Rational = (0..=n)
            .map(|i| Rational::new(BigInt::from(1), sylvester(i)))
            .sum();
        let rhs = Rational::from_integer(BigInt::from(1))
            - Rational::new(BigInt::from(1), sylvester_product(n + 1));
        ensure(lhs == rhs, || format!("fails at n = {n}"))?;
    }
    Ok("b_0..b_4 = 2 3 7 43 1807, identity exact for n <= 8".into())
}

fn census_2d(polygons: &[Polytope]) -> Check {
    let classes: Vec<_> = polygons
        .par_iter()
        .map(classify_self_duality)
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let de = classes.iter().filter(|c| c.delta_equal).count();
    let eq = classes.iter().filter(|c| c.equivalent).count();
    ensure(polygons.len() == 16 && de == 4 && eq == 4, || {
        format!(
            "{} classes, {de} δ-self-dual, {eq} self-equivalent",
            polygons.len()
        )
    })?;
    Ok("16 classes, 4 δ-self-dual, 4 self-equivalent".into())
}

fn census_3d(path: &Path) -> Check {
    let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let polys: Vec<Polytope> = PolytopeReader::new(BufReader::new(file))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let reflexive: Vec<&Polytope> = polys.iter().filter(|p| p.is_reflexive()).collect();
    let sd = reflexive
        .par_iter()
        .map(|p| delta_self_dual(p))
        .collect::<Result<Vec<bool>, _>>()
        .map_err(err)?
        .into_iter()
        .filter(|&b| b)
        .count();
    ensure(reflexive.len() == 4319 && sd == 327, || {
        format!("{} reflexive, {sd} δ-self-dual", reflexive.len())
    })?;
    Ok("4319 reflexive, 327 δ-self-dual".into())
}

fn timed(name: &str, f: impl FnOnce() -> Check) -> (String, Row, f64) {
    let start = Instant::now();
    let row = match f() {
        Ok(m) => Row::Pass(m),
        Err(m) => Row::Fail(m),
    };
    (name.to_string(), row, start.elapsed().as_secs_f64())
}

pub fn run(ks3: Option<&Path>, skip_enum2d: bool) -> Report {
    let mut rows = vec![
        timed("self-dual triangle", self_dual_triangle),
        timed("equal δ, inequivalent dual", delta_twin),
    ];

    let polygons = if skip_enum2d {
        Vec::new()
    } else {
        enumerate_reflexive_2d()
    };
    let mut corpus = polygons.clone();
    for name in [
        "example-1-1",
        "example-1-9",
        "cube-2",
        "cube-3",
        "cross-2",
        "cross-3",
        "cross-4",
        "simplex-3",
    ] {
        corpus.push(fixture(name).expect("fixture"));
    }
    rows.push(timed("δ transforms of Γ, prism and pyramid", || {
        formulas(&corpus)
    }));
    rows.push(timed("Γ(P) reflexive and Γ(P^∨) ≅ Γ(P)^∨", || {
        gamma_structure(&corpus)
    }));
    rows.push(timed("A(P)^∨ = B(P^∨) and B(P)^∨ = A(P^∨)", || {
        ab_duality(&corpus)
    }));
    let small: Vec<Polytope> = corpus
        .iter()
        .filter(|p| p.dim() <= 3)
        .take(12)
        .cloned()
        .collect();
    rows.push(timed("Γ transfers equivalence and δ-equality", || {
        transfer(&small)
    }));
    for d in 3..=6 {
        rows.push(timed(&format!("Sylvester simplex d = {d}"), || {
            sylvester_row(d)
        }));
    }
    rows.push(timed(
        "Sylvester sequence and unit fractions",
        fraction_identity,
    ));

    if skip_enum2d {
        rows.push((
            "2D census 16 / 4".into(),
            Row::Skipped("--skip-enum2d".into()),
            0.0,
        ));
    } else {
        rows.push(timed("2D census 16 / 4", || census_2d(&polygons)));
    }
    match ks3 {
        None => rows.push((
            "3D census 4319 / 327".into(),
            Row::Skipped("no --ks3 file".into()),
            0.0,
        )),
        Some(path) => rows.push(timed("3D census 4319 / 327", || census_3d(path))),
    }

    let mut report = Report::new(json!({ "rows": [] }));
    let mut json_rows = Vec::new();
    for (name, row, secs) in &rows {
        let (tag, msg) = match row {
            Row::Pass(m) => ("PASS", m),
            Row::Fail(m) => ("FAIL", m),
            Row::Skipped(m) => ("SKIPPED", m),
        };
        report.failed |= tag == "FAIL";
        report.line(format!("{tag:<7} {name}: {msg}"));
        json_rows.push(json!({ "claim": name, "status": tag, "detail": msg, "seconds": secs }));
    }
    report.json["rows"] = json!(json_rows);
    report.json["passed"] = json!(!report.failed);
    report
}
