//! One test per acceptance criterion, seed 42. Each writes its status line
//! straight to stdout so the lines survive output capture.

use std::io::Write;

use brieskorn_lab::report::CheckResult;
use brieskorn_lab::suite::{self, status_line, DEFAULT_SEED};

fn report(id: usize, r: brieskorn_lab::error::Result<CheckResult>) {
    let r = r.unwrap_or_else(|e| panic!("criterion {id} errored: {e}"));
    let line = status_line(id, &r);
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    assert!(r.pass, "{line}\n{}", serde_json::to_string_pretty(&r.value).unwrap_or_default());
}

#[test]
fn criterion_01() {
    report(1, suite::criterion_1());
}

#[test]
fn criterion_02() {
    report(2, suite::criterion_2(DEFAULT_SEED));
}

#[test]
fn criterion_03() {
    report(3, suite::criterion_3(DEFAULT_SEED));
}

#[test]
fn criterion_04() {
    report(4, suite::criterion_4(DEFAULT_SEED));
}

#[test]
fn criterion_05() {
    report(5, suite::criterion_5(DEFAULT_SEED));
}

#[test]
fn criterion_06() {
    report(6, suite::criterion_6(DEFAULT_SEED));
}

#[test]
fn criterion_07() {
    report(7, suite::criterion_7(DEFAULT_SEED));
}

#[test]
fn criterion_08() {
    report(8, suite::criterion_8(DEFAULT_SEED));
}

#[test]
fn criterion_09() {
    report(9, suite::criterion_9());
}

#[test]
fn criterion_10() {
    report(10, suite::criterion_10());
}

#[test]
fn criterion_11() {
    report(11, suite::criterion_11());
}

#[test]
fn criterion_12() {
    report(12, suite::criterion_12(DEFAULT_SEED));
}

#[test]
fn criterion_13() {
    report(13, suite::criterion_13(DEFAULT_SEED));
}
