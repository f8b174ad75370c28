//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use alcove_newton::affine_weyl::{AffineWeylGroup, ExtAffineElement};
use alcove_newton::dl_reduction::{PivotOrder, Reducer};
use alcove_newton::linalg::RatVec;
use alcove_newton::newton_kottwitz::{NewtonPoint, Scope, SigmaGroup};
use alcove_newton::root_datum::WeylElement;
use alcove_newton::verify::{run_sweep, Check, GroupSpec, SweepConfig, VerificationReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

struct Datum {
    name: &'static str,
    spec: GroupSpec,
}

fn data() -> Vec<Datum> {
    let d = |name, t: &str, l: &str, s: Option<Vec<usize>>| Datum { name, spec: GroupSpec::new(t, l, s) };
    vec![
        d("A1 sc", "A1", "sc", None),
        d("A1 ad", "A1", "ad", None),
        d("GL2", "A1", "gl", None),
        d("A1xA1 swap", "A1xA1", "sc", Some(vec![2, 1])),
        d("A2 sc", "A2", "sc", None),
        d("A2 flip", "A2", "sc", Some(vec![2, 1])),
        d("C2", "C2", "sc", None),
        d("G2", "G2", "sc", None),
    ]
}

type Outcome = Result<String, String>;

fn length_convention() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for d in data() {
        let g = d.spec.build().map_err(|e| e.to_string())?;
        for x in g.elements_up_to_length(6, 1) {
            let (closed, separated) = (g.length(&x), g.length_by_separation(&x));
            if closed != separated {
                return Err(format!("{}: {x:?} closed form {closed} vs separation {separated}", d.name));
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{checked} elements, 0 mismatches, {:.1}s", elapsed.as_secs_f64()))
}

fn long_reflection_fixture() -> Outcome {
    let g = GroupSpec::new("A1", "sc", None).build().map_err(|e| e.to_string())?;
    let s = g.datum().weyl().simple_reflection(0);
    let x = ExtAffineElement::new(vec![-2], s);
    let r = Reducer::new(SigmaGroup::new(g.clone(), Scope::Ambient));
    let length = g.length(&x);
    let polys = r.class_polynomials(&x).map_err(|e| e.to_string())?;
    let got: BTreeMap<(NewtonPoint, Vec<i64>), Vec<i64>> = polys
        .iter()
        .map(|(c, f)| ((c.nu.clone(), c.kappa.residues.clone()), f.coefficients().to_vec()))
        .collect();
    let nu = |v: i64| NewtonPoint(RatVec::from_integers(&[v]));
    let expected = BTreeMap::from([((nu(0), vec![]), vec![0, 1]), ((nu(1), vec![]), vec![-1, 1])]);
    let generic = r.generic_class(&x).map_err(|e| e.to_string())?;
    if length != 3 || got != expected || generic.nu != nu(1) {
        return Err(format!("ℓ={length}, polynomials {got:?}, generic {generic}"));
    }
    Ok("ℓ = 3, B(G)_x = {0, α∨}, f = {q, q - 1}, generic ν = α∨".into())
}

fn sweep(checks: &[Check], max_length: usize) -> Result<Vec<(&'static str, VerificationReport)>, String> {
    data()
        .into_iter()
        .map(|d| {
            let cfg = SweepConfig::new(d.spec.clone(), max_length, checks.to_vec());
            run_sweep(&cfg).map(|r| (d.name, r)).map_err(|e| format!("{}: {e}", d.name))
        })
        .collect()
}

fn summarize(reports: &[(&str, VerificationReport)]) -> Outcome {
    let mut elements = 0;
    let mut pairs = 0;
    for (name, r) in reports {
        if !r.passed() {
            let first = r
                .internal_errors
                .iter()
                .chain(r.checks.iter().flat_map(|c| &c.counterexamples))
                .next()
                .cloned()
                .unwrap_or(Value::Null);
            return Err(format!("{name}: {} counterexamples, first: {first}", r.counterexample_count()));
        }
        elements += r.elements_swept;
        pairs += r.aggregate.alcove_pairs;
    }
    Ok(format!("{} data, {elements} elements, {pairs} alcove pairs, 0 counterexamples", reports.len()))
}

fn lim_fixtures(reports: &[(&str, VerificationReport)]) -> Outcome {
    let (_, a1) = reports.iter().find(|(n, _)| *n == "A1 sc").ok_or("A1 sc report missing")?;
    let lim = a1.checks.iter().find(|c| c.name == "lim").ok_or("lim check missing")?;
    let find = |lambda: i64, u: &[&str]| {
        lim.verdicts.iter().find(|v| v["element"]["lambda"] == serde_json::json!([lambda]) && v["element"]["u"] == serde_json::json!(u))
    };
    let t = find(1, &[]).ok_or("t^α∨ not swept")?;
    let long = find(-2, &["s1"]).ok_or("t^{-2α∨}s not swept")?;
    if t["basic_locus_empty"] != Value::Bool(true) || long["basic_locus_empty"] != Value::Bool(false) {
        return Err(format!("fixture verdicts: {t} / {long}"));
    }
    Ok("t^α∨: basic locus empty; t^{-2α∨}s: nonempty".into())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut compared = 0;
    for d in data() {
        let cache = dir.path().join(format!("{}.jsonl", d.name.replace(' ', "_")));
        let base = SweepConfig::new(d.spec.clone(), 6, Check::ALL.to_vec());
        let mut cold = base.clone();
        cold.cache = Some(cache.clone());
        let mut warm = cold.clone();
        warm.workers = 2;
        let mut descending = base.clone();
        descending.pivot_order = PivotOrder::Descending;
        let reference = run_sweep(&base).map_err(|e| e.to_string())?;
        let expected = serde_json::to_string(&reference.deterministic_value()).map_err(|e| e.to_string())?;
        for (label, cfg) in [("repeat", &base), ("cold cache", &cold), ("warm cache", &warm), ("descending pivots", &descending)] {
            let r = run_sweep(cfg).map_err(|e| e.to_string())?;
            let got = serde_json::to_string(&r.deterministic_value()).map_err(|e| e.to_string())?;
            if got != expected {
                return Err(format!("{}: {label} report differs", d.name));
            }
            if label == "warm cache" && r.cache_stats.misses != 0 {
                return Err(format!("{}: warm cache still missed {} times", d.name, r.cache_stats.misses));
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} reruns byte-identical to reference"))
}

fn random_element(g: &AffineWeylGroup, rng: &mut ChaCha8Rng) -> ExtAffineElement {
    let d = g.datum();
    let lambda = (0..d.lattice_rank()).map(|_| rng.gen_range(-4..=4)).collect();
    ExtAffineElement::new(lambda, WeylElement(rng.gen_range(0..d.weyl().order()) as u32))
}

fn newton_well_defined() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut conjugations = 0;
    for d in data() {
        let g = d.spec.build().map_err(|e| e.to_string())?;
        let sg = SigmaGroup::new(g.clone(), Scope::Ambient);
        for _ in 0..1000 {
            let x = random_element(&g, &mut rng);
            let n = sg.translation_period(&x).map_err(|e| e.to_string())?;
            let (a, b) = (sg.newton_point_at(&x, n), sg.newton_point_at(&x, 2 * n));
            if a.is_none() || a != b {
                return Err(format!("{}: {x:?} ν(n={n}) = {a:?}, ν(2n) = {b:?}", d.name));
            }
            let class = sg.class_of(&x).map_err(|e| e.to_string())?;
            for _ in 0..3 {
                let y = random_element(&g, &mut rng);
                let conj = g.sigma_conjugate(&y, &x);
                if sg.class_of(&conj).map_err(|e| e.to_string())? != class {
                    return Err(format!("{}: class of {x:?} changes under conjugation by {y:?}", d.name));
                }
                conjugations += 1;
            }
        }
    }
    Ok(format!("8000 elements, n vs 2n agree; {conjugations} σ-conjugates keep (ν, κ)"))
}

fn report(index: usize, title: &str, outcome: &Outcome, failed: &mut bool) {
    match outcome {
        Ok(msg) => println!("criterion {index} PASS {title}: {msg}"),
        Err(msg) => {
            *failed = true;
            println!("criterion {index} FAIL {title}: {msg}");
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut failed = false;
    report(1, "length convention", &length_convention(), &mut failed);
    report(2, "long reflection fixture", &long_reflection_fixture(), &mut failed);

    let start = Instant::now();
    let main_sweep = sweep(&[Check::Theorem1, Check::Corollary, Check::Lim], 8);
    let elapsed = start.elapsed();
    let select = |check: &str| -> Outcome {
        let reports = main_sweep.as_ref().map_err(Clone::clone)?;
        let filtered: Vec<(&str, VerificationReport)> = reports
            .iter()
            .map(|(n, r)| {
                let mut r = r.clone();
                r.checks.retain(|c| c.name == check);
                (*n, r)
            })
            .collect();
        summarize(&filtered)
    };
    let t1 = select("theorem1").map(|m| format!("{m}, {:.1}s for the sweep", elapsed.as_secs_f64()));
    report(3, "Levi correspondence sweep (ℓ ≤ 8)", &t1, &mut failed);
    report(4, "Newton congruence sweep (ℓ ≤ 8)", &select("corollary"), &mut failed);
    let lim = select("lim").and_then(|m| {
        let fixtures = lim_fixtures(main_sweep.as_ref().map_err(Clone::clone)?)?;
        Ok(format!("{m}; {fixtures}"))
    });
    report(5, "basic locus emptiness sweep (ℓ ≤ 8)", &lim, &mut failed);
    report(6, "class polynomial sweep (ℓ ≤ 6)", &sweep(&[Check::Classpoly], 6).and_then(|r| summarize(&r)), &mut failed);
    report(7, "determinism and cache", &determinism(), &mut failed);
    report(8, "Newton point well-definedness", &newton_well_defined(), &mut failed);
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
