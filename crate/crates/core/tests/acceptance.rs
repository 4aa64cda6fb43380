//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Built with `harness = false`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use kneser_codes::suites::{run_suite, Status, SuiteResult};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn suite(name: &str) -> Result<SuiteResult, String> {
    run_suite(name, false).map_err(|e| e.to_string())
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Discrepancy => "discrepancy",
    }
}

/// Ids of claims that did not pass, with their status.
fn not_passed(res: &SuiteResult) -> Vec<String> {
    res.claims
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| format!("{} {}", c.id, status_word(c.status)))
        .collect()
}

/// Every claim of every listed suite passes outright.
fn all_pass(names: &[&str]) -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    for name in names {
        match suite(name) {
            Ok(res) => {
                total += res.claims.len();
                bad.extend(not_passed(&res));
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    if bad.is_empty() {
        outcome(true, format!("{total} claims pass"))
    } else {
        outcome(false, format!("{} of {total} claims not passing: {}", bad.len(), bad.join(", ")))
    }
}

/// Every `required` claim passes; `lenient` claims may also be
/// discrepancies; all of them must be present.
fn required_claims(name: &str, required: &[&str], lenient: &[&str]) -> Outcome {
    let res = match suite(name) {
        Ok(r) => r,
        Err(e) => return outcome(false, e),
    };
    let mut bad = Vec::new();
    let mut noted = Vec::new();
    for (ids, allow) in [(required, false), (lenient, true)] {
        for id in ids {
            let full = format!("{name}/{id}");
            match res.claim(&full).map(|c| c.status) {
                Some(Status::Pass) => {}
                Some(Status::Discrepancy) if allow => noted.push(format!("{id} discrepancy")),
                Some(s) => bad.push(format!("{id} {}", status_word(s))),
                None => bad.push(format!("{id} missing")),
            }
        }
    }
    let mut detail = format!("{} claims checked", required.len() + lenient.len());
    if !noted.is_empty() {
        detail += &format!("; reported: {}", noted.join(", "));
    }
    if bad.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; failing: {}", bad.join(", ")))
    }
}

fn property(f: fn() -> common::Check) -> (bool, String) {
    match f() {
        Ok(s) => (true, s),
        Err(e) => (false, format!("FAILED {e}")),
    }
}

type Property = (&'static str, fn() -> common::Check);

fn criterion_8() -> Outcome {
    let checks: [Property; 4] = [
        ("orbit-stabilizer", common::orbit_stabilizer_on_fixtures),
        ("type identities on K(9,4)", common::type_identities_k94),
        ("ball vs global", || common::ball_vs_global_all_spaces(100_000)),
        ("U_0/U_1 orbits", common::u0_u1_on_intransitive_codes),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, f) in checks {
        let (ok, s) = property(f);
        pass &= ok;
        parts.push(format!("{name}: {s}"));
    }
    outcome(pass, parts.join("; "))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("metric oracle", secs(60), Box::new(|| all_pass(&["metric-oracle"]))),
        ("tetrahedron", secs(10), Box::new(|| all_pass(&["tetrahedron"]))),
        ("PG(2,3) lines", secs(10), Box::new(|| all_pass(&["pg23"]))),
        ("hyperplanes d = 3, 4, 5", secs(30), Box::new(|| all_pass(&["hyperplanes"]))),
        (
            "endecads",
            secs(300),
            Box::new(|| {
                required_claims(
                    "endecads",
                    &["golay-parameters", "size", "group-order", "preserved", "nt2", "stabilizer", "homogeneity"],
                    &["delta", "intersections"],
                )
            }),
        ),
        ("obstruction off odd graphs, n <= 12", secs(10), Box::new(|| all_pass(&["obstruction"]))),
        (
            "intransitive and imprimitive families",
            secs(60),
            Box::new(|| all_pass(&["intransitive-families", "imprimitive-families"])),
        ),
        ("property suites", Duration::MAX, Box::new(criterion_8)),
    ];

    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = run();
        let elapsed = start.elapsed();
        if elapsed > *limit {
            out.pass = false;
            out.detail += &format!("; over the {} s budget", limit.as_secs());
        }
        if !out.pass {
            failures += 1;
        }
        println!(
            "criterion {} ({name}): {} [{:.1} s] {}",
            i + 1,
            if out.pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            out.detail
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
