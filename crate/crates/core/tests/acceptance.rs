//! Runs `smkdv verify all` twice and prints one line per acceptance criterion.

use std::process::{Command, ExitCode};

use smkdv::report::{from_json, VerificationReport};

const CRITERIA: [(u8, &str, Option<u64>); 9] = [
    (1, "zero curvature of the t3, t5 and t-1 Lax pairs", Some(60_000)),
    (2, "flow solver reproduces the t1, t3 and t5 Lax components", None),
    (3, "Backlund transformations, t5 coefficients and gauge conditions", None),
    (4, "cross-consistency and supersymmetry of the transformations", None),
    (5, "bosonic recursion to the t5 transformation", None),
    (6, "superfield transformations, flows, gamma extension and D^2 = d_x", None),
    (7, "Riccati coefficients, densities and fluxes", None),
    (8, "defect expansion, defect terms and modified charges", None),
    (9, "numeric oracle, soliton and momentum drift", Some(300_000)),
];

fn verify_all() -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_smkdv"))
        .args(["verify", "all", "--format", "json", "--seed", "7"])
        .output()
        .map_err(|e| e.to_string())?;
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

/// The report stream with every `elapsed-ms` value blanked.
fn strip_timing(json: &str) -> String {
    const KEY: &str = "\"elapsed-ms\": ";
    let mut out = String::with_capacity(json.len());
    let mut rest = json;
    while let Some(k) = rest.find(KEY) {
        out.push_str(&rest[..k + KEY.len()]);
        rest = rest[k + KEY.len()..].trim_start_matches(|c: char| c.is_ascii_digit());
    }
    out.push_str(rest);
    out
}

fn line(pass: bool, k: u8, what: &str, detail: &str) {
    println!("{} criterion {k:>2}: {what} ({detail})", if pass { "PASS" } else { "FAIL" });
}

fn main() -> ExitCode {
    let (first, second) = match (verify_all(), verify_all()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("cannot run smkdv: {e}");
            return ExitCode::FAILURE;
        }
    };
    let reports: Vec<VerificationReport> = match from_json(&first) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("unreadable report: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut all_pass = true;
    for (k, what, budget) in CRITERIA {
        let mine: Vec<&VerificationReport> = reports.iter().filter(|r| r.criterion == Some(k)).collect();
        let failed: Vec<&str> = mine.iter().filter(|r| !r.passed()).map(|r| r.check_id.as_str()).collect();
        let elapsed: u64 = mine.iter().map(|r| r.elapsed_ms).sum();
        let in_budget = budget.map_or(true, |b| elapsed < b);
        let pass = !mine.is_empty() && failed.is_empty() && in_budget;
        let mut detail = format!("{} checks, {elapsed} ms", mine.len());
        if !failed.is_empty() {
            detail.push_str(&format!(", failing: {}", failed.join(", ")));
        }
        if !in_budget {
            detail.push_str(", over the time budget");
        }
        line(pass, k, what, &detail);
        all_pass &= pass;
    }
    let same = !first.is_empty() && strip_timing(&first) == strip_timing(&second);
    line(same, 10, "two runs give byte-identical JSON modulo timing", &format!("{} reports", reports.len()));
    all_pass &= same;
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
