//! The acceptance gate: every release-blocking claim in one place, printed
//! one line per criterion. Run with `--nocapture` to see the lines on
//! success; any failing criterion fails the test.

use std::process::Command;

use binosum::asymptotics::{verify_ash_range, verify_bounds_range, verify_limits};
use binosum::binomial::f_value;
use binosum::chains::verify_chain_equivalences;
use binosum::enclosure::Precision;
use binosum::maxima::{
    argmax_f, verify_argmax_range, verify_decreasing_range, verify_increasing_range,
};
use binosum::polys::{verify_coeff_certificates, verify_headsum_windows};
use binosum::reed_muller::{best_order, merit, rm_code};
use binosum::report::VerificationReport;

const TABLE1_GOLDEN: &str = "\
| m | r=0 | r=1 | r=2 | r=3 | r=4 | r=5 | r=6 | r=7 | r=8 | r=9 | r=10 | r=11 | r=12 | r=13 | r=14 | r=15 |
| ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: |
| 6 | 1 | 3 | (5) | [5] | 3 | 1 | 1 |  |  |  |  |  |  |  |  |  |
| 7 | 1 | 4 | 7 | [8] | 6 | 3 | 1 | 1 |  |  |  |  |  |  |  |  |
| 8 | 1 | 4 | 9 | [11] | 10 | 6 | 3 | 1 | 1 |  |  |  |  |  |  |  |
| 9 | 1 | 5 | 11 | (16) | [16] | 11 | 7 | 3 | 1 | 1 |  |  |  |  |  |  |
| 10 | 1 | 5 | 14 | 22 | [24] | 19 | 13 | 7 | 3 | 1 | 1 |  |  |  |  |  |
| 11 | 1 | 6 | 16 | 29 | [35] | 32 | 23 | 14 | 7 | 3 | 1 | 1 |  |  |  |  |
| 12 | 1 | 6 | 19 | 37 | (49) | [49] | 39 | 25 | 14 | 7 | 3 | 1 | 1 |  |  |  |
| 13 | 1 | 7 | 23 | 47 | 68 | [74] | 64 | 45 | 27 | 15 | 7 | 3 | 1 | 1 |  |  |
| 14 | 1 | 7 | 26 | 58 | 91 | [108] | 101 | 77 | 50 | 29 | 15 | 7 | 3 | 1 | 1 |  |
| 15 | 1 | 8 | 30 | 72 | 121 | 154 | [155] | 128 | 89 | 54 | 30 | 15 | 7 | 3 | 1 | 1 |
";

const TABLE2_GOLDEN: &str = "\
| m | 0 | 1 | 2 | 3 | 4 | 5 | 6 | 7 | 8 | 9 | 10 | 11 | 12 |
| ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: | ---: |
| f(r0-1) | [1] | [1] | 1 | [2] | 5/2 | 3 | [11/2] | 29/4 | 37/4 | [65/4] | 22 | 29 | [397/8] |
| f(r0) | 1/2 | [1] | [3/2] | 7/4 | [11/4] | [4] | 21/4 | [8] | [93/8] | 16 | [193/8] | [281/8] | 793/16 |
";

struct Gate {
    lines: Vec<String>,
    all_ok: bool,
}

impl Gate {
    fn new() -> Gate {
        Gate {
            lines: Vec::new(),
            all_ok: true,
        }
    }

    fn record(&mut self, number: u32, label: &str, ok: bool, detail: String) {
        let status = if ok { "PASS" } else { "FAIL" };
        self.lines.push(format!(
            "criterion {number:2} ({label}): {status} — {detail}"
        ));
        self.all_ok &= ok;
    }

    fn record_report(&mut self, number: u32, label: &str, report: &VerificationReport) {
        let detail = if report.passed() {
            format!("checked {} in {} ms", report.checked, report.elapsed_ms)
        } else {
            let first = &report.failures[0];
            format!(
                "{} failures, first at {}: expected {}, got {}",
                report.failures.len(),
                first.witness,
                first.expected,
                first.actual
            )
        };
        self.record(number, label, report.passed(), detail);
    }
}

fn binary_stdout(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_binosum"))
        .env_remove("BINOSUM_PRECISION_CAP")
        .args(args)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{args:?} exited nonzero");
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn acceptance_gate() {
    let mut gate = Gate::new();
    let prec = Precision::default();

    // 1. The rendered floor table reproduces the reference rows for
    //    m = 6..15 cell-for-cell, markers included.
    let table1 = binary_stdout(&["table1", "--m-range", "6..15"]);
    gate.record(
        1,
        "table1 reproduction",
        table1 == TABLE1_GOLDEN,
        format!("{} bytes of output", table1.len()),
    );

    // 2. The peak-pair table emits the 13 exact rational pairs with the box
    //    on the larger side.
    let table2 = binary_stdout(&["table2"]);
    gate.record(
        2,
        "table2 reproduction",
        table2 == TABLE2_GOLDEN,
        format!("{} bytes of output", table2.len()),
    );

    // 3. The argmax set matches the floor(m/3)+1 rule (with its exceptional
    //    rows) for every m up to 3000.
    let report = verify_argmax_range(0, 3000).unwrap();
    gate.record_report(3, "argmax rule m<=3000", &report);

    // 4. Strict rise below the peak and strict fall above it for m <= 2000.
    let rising = verify_increasing_range(0, 2000).unwrap();
    let falling = verify_decreasing_range(0, 2000).unwrap();
    let ok = rising.passed() && falling.passed();
    gate.record(
        4,
        "monotone on both sides",
        ok,
        format!(
            "rise checked {}, fall checked {}",
            rising.checked, falling.checked
        ),
    );

    // 5. The ratio-chain reformulations agree with the binomial-side
    //    comparisons for every (r, j) at every m in 2..=200.
    let report = verify_chain_equivalences(2, 200).unwrap();
    gate.record_report(5, "chain equivalences m<=200", &report);

    // 6. The integer coefficient certificates hold for i up to 200.
    let report = verify_coeff_certificates(2, 200).unwrap();
    gate.record_report(6, "coefficient certificates i<=200", &report);

    // 7. The head-sum window inequality holds over the full window for
    //    every j in 4..=40, by direct sum and by the sign route.
    let report = verify_headsum_windows(4, 40).unwrap();
    gate.record_report(7, "head-sum windows j<=40", &report);

    // 8. Both peak sandwiches hold for every covered m <= 2000: the exact
    //    rational one and the certified transcendental one.
    let report = verify_bounds_range(0, 2000, prec).unwrap();
    gate.record_report(8, "peak sandwich m<=2000", &report);

    // 9. Convergence diagnostics: pinned gap schedule towards 3/sqrt(pi),
    //    and the central ratio below 2s/(s+1) up to s = 1000 with its own
    //    pinned schedule. The Stirling-window sweep rides along.
    let report = verify_limits(5, 1000, prec).unwrap();
    let ash = verify_ash_range(1, 1000, prec).unwrap();
    let ok = report.passed() && ash.passed();
    gate.record(
        9,
        "limit schedules",
        ok,
        format!(
            "limit checks {}, sandwich points {}",
            report.checked, ash.checked
        ),
    );

    // 10. The code-parameter bridge: merit(RM(r, m)) equals f_m(r) exactly
    //     for all 0 <= r <= m <= 300, and the best orders are the argmax set.
    let mut bridge_ok = true;
    let mut bridge_detail = String::new();
    'outer: for m in 0..=300u64 {
        for r in 0..=m {
            let code = rm_code(r, m).unwrap();
            if merit(&code) != f_value(m, r).unwrap() {
                bridge_ok = false;
                bridge_detail = format!("merit mismatch at r={r}, m={m}");
                break 'outer;
            }
        }
        if best_order(m) != argmax_f(m) {
            bridge_ok = false;
            bridge_detail = format!("best_order mismatch at m={m}");
            break;
        }
    }
    if bridge_ok {
        bridge_detail = "45753 merits and 301 argmax sets agree".into();
    }
    gate.record(10, "code-parameter bridge m<=300", bridge_ok, bridge_detail);

    for line in &gate.lines {
        println!("{line}");
    }
    assert!(
        gate.all_ok,
        "acceptance gate failed:\n{}",
        gate.lines.join("\n")
    );
}
