//! Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use coset_radon::circle::{example_f, standard_grid, tent_phi, verify_example};
use coset_radon::functions::QuotientFunction;
use coset_radon::group::find_conjugator;
use coset_radon::linalg::rank;
use coset_radon::verify::{self, canonical_json, emit, exit_code, Entity, Format, GroupRef, Status};
use coset_radon::{
    ConjugacyWitness, Execution, Family, FiniteGroup, NestedRadon, SuiteConfig, Transport, VerificationReport,
};
use num_complex::Complex64;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, &'static str, Box<dyn Fn() -> Check + 'a>);

fn config(groups: &[&str], families: &[Family]) -> SuiteConfig {
    SuiteConfig {
        groups: groups.iter().map(|g| GroupRef::Name(g.to_string())).collect(),
        families: families.to_vec(),
        seed: 2024,
        ..SuiteConfig::default()
    }
}

const CORPUS: [&str; 7] = ["Z4", "Z6", "Z2xZ2", "S3", "D4", "Q8", "S4"];

/// Every case of `family` has each named claim passing.
fn claims_pass(reports: &[VerificationReport], family: Family, names: &[&str]) -> Check {
    let cases: Vec<&VerificationReport> = reports.iter().filter(|r| r.case.family == family).collect();
    if cases.is_empty() {
        return Err(format!("no {family} cases"));
    }
    for r in &cases {
        for name in names {
            match r.claim(name) {
                Some(c) if c.status == Status::Pass => {}
                Some(c) => return Err(format!("{}: {name} is {:?} ({:?})", r.case.id, c.status, c.detail)),
                None => return Err(format!("{}: {name} missing", r.case.id)),
            }
        }
    }
    Ok(format!("{} cases x {} claims", cases.len(), names.len()))
}

fn criterion_1(groups: &[FiniteGroup]) -> Check {
    let start = Instant::now();
    let mut pairs = 0;
    let mut vectors = 0;
    for g in groups {
        let subs = g.subgroups();
        for h in &subs {
            for l in subs.iter().filter(|l| l.is_subgroup_of(h)) {
                let radon = NestedRadon::new(g, l, h).map_err(|e| e.to_string())?;
                for b in radon.invariant_subspace().basis(radon.fine()) {
                    let back = radon.reconstruct(&radon.apply(&b).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                    if back != b {
                        return Err(format!("{} L={l} H={h}: reconstruction differs", g.name()));
                    }
                    vectors += 1;
                }
                pairs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(5) {
        return Err(format!("took {elapsed:?}, limit 5 s"));
    }
    Ok(format!("{pairs} nested pairs, {vectors} basis vectors, zero residual, {elapsed:.2?}"))
}

fn criterion_2(reports: &[VerificationReport], groups: &[FiniteGroup]) -> Check {
    let suite = claims_pass(reports, Family::RadonNested, &["radon-after-dual-identity", "dual-after-radon-is-pullback"])?;
    // Oracle: R·R* from independently built matrices.
    let mut checked = 0;
    for g in groups {
        let subs = g.subgroups();
        for h in &subs {
            for l in subs.iter().filter(|l| l.is_subgroup_of(h)) {
                let prod = mat_mul(&nested_radon_matrix(g, l, h), &nested_dual_matrix(g, l, h));
                if !is_identity(&prod) {
                    return Err(format!("{} L={l} H={h}: oracle R R* is not the identity", g.name()));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{suite}; oracle R R* = I on {checked} pairs"))
}

fn criterion_3(groups: &[FiniteGroup]) -> Check {
    let mut checked = 0;
    for g in groups {
        let subs = g.subgroups();
        for h in &subs {
            for l in subs.iter().filter(|l| l.is_subgroup_of(h)) {
                let radon = NestedRadon::new(g, l, h).map_err(|e| e.to_string())?;
                let m = radon.matrix(Execution::Parallel).map_err(|e| e.to_string())?.matrix;
                let oracle = nested_radon_matrix(g, l, h);
                if rows_of(&m) != oracle {
                    return Err(format!("{} L={l} H={h}: matrix differs from the fiber-count oracle", g.name()));
                }
                let (gl, gh) = (g.order() / l.len(), g.order() / h.len());
                let lib_rank = rank(&m);
                let oracle_rank = gauss_jordan_rank(oracle);
                let kernel = coset_radon::radon::kernel_basis(&radon.matrix(Execution::Sequential).unwrap()).len();
                if lib_rank != gh || oracle_rank != gh || kernel != gl - gh {
                    return Err(format!(
                        "{} L={l} H={h}: rank {lib_rank} / oracle {oracle_rank}, kernel {kernel}, expected {gh} and {}",
                        g.name(),
                        gl - gh
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs, rank = [G:H] and kernel = [G:L] - [G:H], matches Gauss-Jordan oracle"))
}

fn criterion_5(reports: &[VerificationReport], groups: &[FiniteGroup]) -> Check {
    let suite = claims_pass(
        reports,
        Family::RadonGeneral,
        &["well-defined", "restricted-bijective", "restricted-dual-bijective", "pullback-identity", "evaluation-identity"],
    )?;
    // Oracle: dim C(G/K:H) is the orbit count of H on G/K, which must be [G:<H,K>].
    for g in groups {
        let subs = g.subgroups();
        for k in &subs {
            for h in &subs {
                let gens: Vec<usize> = h.elements().iter().chain(k.elements()).copied().collect();
                let join = closure(g, &gens).len();
                if orbit_count(g, k.elements(), h.elements()) != g.order() / join
                    || orbit_count(g, h.elements(), k.elements()) != g.order() / join
                {
                    return Err(format!("{} K={k} H={h}: orbit count differs from [G:<H,K>]", g.name()));
                }
            }
        }
    }
    Ok(format!("{suite}; subspace dimensions match orbit oracle"))
}

fn criterion_6(reports: &[VerificationReport]) -> Check {
    let m = claims_pass(
        reports,
        Family::Measures,
        &["quotient-integral-constant-rho", "quotient-integral-random-rho", "radon-nikodym-cocycle"],
    )?;
    let p = claims_pass(
        reports,
        Family::Projections,
        &[
            "th-l1-contraction",
            "ph-surjective",
            "ph-kernel-dimension",
            "pullback-after-projection-is-convolution",
            "projection-after-pullback-identity",
        ],
    )?;
    let nonconstant = reports
        .iter()
        .filter(|r| r.case.family == Family::Measures)
        .filter_map(|r| r.claim("quotient-integral-random-rho")?.detail.clone())
        .all(|d| d.starts_with("10 rho-functions"));
    if !nonconstant {
        return Err("some case did not use 10 rho-functions".into());
    }
    Ok(format!("measures {m}; projections {p}"))
}

fn criterion_7(reports: &[VerificationReport], groups: &[FiniteGroup]) -> Check {
    let suite = claims_pass(
        reports,
        Family::Transport,
        &["tau-permutation", "composition-counting", "composition-normalized", "closed-form", "pointwise-multiplicative"],
    )?;
    // Oracle: conjugate pairs by brute force over all g0, compared with the number of transport cases.
    let mut expected = 0;
    for g in groups {
        let subs: Vec<BTreeSet<usize>> = g.subgroups().iter().map(|s| s.elements().iter().copied().collect()).collect();
        for k in &subs {
            for h in &subs {
                if g.elements().any(|g0| &conjugate(g, k, g0) == h) {
                    expected += 1;
                }
            }
        }
    }
    let cases = reports.iter().filter(|r| r.case.family == Family::Transport).count();
    if cases != expected {
        return Err(format!("{cases} transport cases, brute force finds {expected} conjugate pairs"));
    }
    // Closed form on S3 against a direct evaluation.
    let g = FiniteGroup::symmetric(3).unwrap();
    let k = g.generate(&[g.element_by_label("(12)").unwrap()]).unwrap();
    let h = g.generate(&[g.element_by_label("(23)").unwrap()]).unwrap();
    let g0 = find_conjugator(&g, &k, &h).ok_or("no conjugator in S3")?;
    let t = Transport::new(&g, ConjugacyWitness::new(&g, &k, &h, g0).unwrap()).unwrap();
    let kc = cosets(&g, k.elements());
    let hc = cosets(&g, h.elements());
    let phi = QuotientFunction::new(t.k_space(), vec![r(3), r(-1), frac(5, 2)]);
    let out = t.apply(&phi).unwrap();
    let g0_inv = g.inv(g0);
    if !g.elements().all(|x| out.at(coset_of(&hc, x)) == phi.at(coset_of(&kc, g.mul(x, g0_inv)))) {
        return Err("S3 closed form differs from direct evaluation".into());
    }
    Ok(format!("{suite}; {expected} conjugate pairs match brute force"))
}

fn criterion_8() -> Check {
    let report = verify_example(&standard_grid(100, 8), 1e-12, Execution::Parallel).map_err(|e| e.to_string())?;
    let value = example_f(&tent_phi(), Complex64::new(0.5, 0.0)).map_err(|e| e.to_string())?;
    if report.samples != 800 || report.max_deviation >= 1e-12 || value != 1.0 {
        return Err(format!("{} samples, max deviation {:e}, f(0.5) = {value}", report.samples, report.max_deviation));
    }
    Ok(format!("800 samples, max deviation {:e}, f(0.5) = 1", report.max_deviation))
}

fn criterion_9(reports: &[VerificationReport]) -> Check {
    let find = |group: &str, l: &[usize], h: &[usize]| {
        reports.iter().find(|r| {
            r.case.family == Family::Algebra
                && r.case.group == group
                && r.case.l.as_deref() == Some(l)
                && r.case.h.as_deref() == Some(h)
        })
    };
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let t12 = s3.element_by_label("(12)").unwrap();
    let h = vec![0, t12];
    let case = find("S3", &[0], &h).ok_or("S3 case L=e, H=<(12)> missing")?;
    let left = case.claim("left-unit").ok_or("left-unit missing")?;
    if left.status != Status::Recorded || left.holds != Some(false) || left.witness.is_none() {
        return Err(format!("S3 left unit: {:?} holds={:?}", left.status, left.holds));
    }
    let case = find("Z2xZ2", &[0, 2], &[0, 1, 2, 3]).ok_or("Z2xZ2 case L=<(1,0)>, H=G missing")?;
    let eq = case.claim("subspace-equality-unrestricted").ok_or("subspace-equality-unrestricted missing")?;
    let witness_k = eq.witness.as_ref().and_then(|w| w.get("K")).cloned();
    if eq.status != Status::Recorded || eq.holds != Some(false) || witness_k != Some(serde_json::json!([0, 1])) {
        return Err(format!("Z2xZ2 equality: {:?} holds={:?} witness={witness_k:?}", eq.status, eq.holds));
    }
    let conv = reports
        .iter()
        .filter(|r| r.case.family == Family::Transport)
        .filter_map(|r| r.claim("convolution-multiplicative"))
        .all(|c| c.status == Status::Recorded);
    if !conv {
        return Err("convolution-multiplicative is not recorded in every transport case".into());
    }
    Ok("S3 left-unit counterexample and Z2xZ2 equality counterexample recorded".into())
}

fn criterion_10() -> Check {
    let cfg = config(&["S3", "Z2xZ2", "Q8"], &[]);
    let a = verify::run_suite_with(&cfg, Execution::Parallel).map_err(|e| e.to_string())?;
    let b = verify::run_suite_with(&cfg, Execution::Parallel).map_err(|e| e.to_string())?;
    let c = verify::run_suite_with(&cfg, Execution::Sequential).map_err(|e| e.to_string())?;
    let (ja, jb, jc) = (
        emit(Entity::Report(&a), Format::Json).map_err(|e| e.to_string())?,
        emit(Entity::Report(&b), Format::Json).map_err(|e| e.to_string())?,
        canonical_json(&c).map_err(|e| e.to_string())?,
    );
    if ja != jb || ja != jc {
        return Err("reports differ between runs".into());
    }
    Ok(format!("{} bytes identical across two parallel runs and one sequential run", ja.len()))
}

fn main() -> ExitCode {
    let groups = corpus();
    let full = verify::run_suite(&config(&CORPUS, &[])).expect("suite runs");

    let criteria: Vec<Criterion> = vec![
        ("01", "reconstruction on every invariant-subspace basis", Box::new(|| criterion_1(&groups))),
        ("02", "composition identities", Box::new(|| criterion_2(&full, &groups))),
        ("03", "rank and kernel law", Box::new(|| criterion_3(&groups))),
        (
            "04",
            "module property and support containment",
            Box::new(|| claims_pass(&full, Family::RadonNested, &["module-property", "support-containment"])),
        ),
        ("05", "general pairs: restricted bijectivity and pullback identity", Box::new(|| criterion_5(&full, &groups))),
        ("06", "measures, projections and quotient integrals", Box::new(|| criterion_6(&full))),
        ("07", "conjugacy transport", Box::new(|| criterion_7(&full, &groups))),
        ("08", "C^x example", Box::new(criterion_8)),
        ("09", "recorded counterexamples", Box::new(|| criterion_9(&full))),
        ("10", "deterministic reports", Box::new(criterion_10)),
    ];

    let mut failed = 0;
    for (id, title, check) in &criteria {
        match check() {
            Ok(detail) => println!("[PASS] {id} {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {why}");
            }
        }
    }
    let overall = exit_code(&full);
    println!("full corpus: {} cases, suite exit code {overall}", full.len());
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 && overall == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
