//! Per-check records and the deterministic JSON report emitted by the CLI.
//!
//! The serialized report separates a byte-stable `data` section (checks
//! without timings, plus the summary) from a `timing` section, so that two
//! identical runs produce identical data sections.

use serde::Serialize;
use std::time::Instant;

/// One identity check: name, the display it verifies, the instance, both
/// sides as exact strings, pass/fail, and the runtime.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub ms: u128,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct CheckData<'a> {
    name: &'a str,
    anchor: &'a str,
    instance: &'a str,
    lhs: &'a str,
    rhs: &'a str,
    pass: bool,
}

#[derive(Serialize)]
struct Summary {
    pass: usize,
    fail: usize,
}

#[derive(Serialize)]
struct DataSection<'a> {
    checks: Vec<CheckData<'a>>,
    summary: Summary,
}

#[derive(Serialize)]
struct TimingEntry<'a> {
    name: &'a str,
    ms: u128,
}

#[derive(Serialize)]
struct FullReport<'a> {
    data: DataSection<'a>,
    timing: Vec<TimingEntry<'a>>,
}

impl Report {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    /// The byte-stable data section alone.
    pub fn data_json(&self) -> String {
        serde_json::to_string_pretty(&DataSection {
            checks: self
                .checks
                .iter()
                .map(|c| CheckData {
                    name: &c.name,
                    anchor: &c.anchor,
                    instance: &c.instance,
                    lhs: &c.lhs,
                    rhs: &c.rhs,
                    pass: c.pass,
                })
                .collect(),
            summary: Summary {
                pass: self.passed(),
                fail: self.failed(),
            },
        })
        .expect("report serialization")
    }

    /// Full report: data section plus per-check timings.
    pub fn full_json(&self) -> String {
        serde_json::to_string_pretty(&FullReport {
            data: DataSection {
                checks: self
                    .checks
                    .iter()
                    .map(|c| CheckData {
                        name: &c.name,
                        anchor: &c.anchor,
                        instance: &c.instance,
                        lhs: &c.lhs,
                        rhs: &c.rhs,
                        pass: c.pass,
                    })
                    .collect(),
                summary: Summary {
                    pass: self.passed(),
                    fail: self.failed(),
                },
            },
            timing: self
                .checks
                .iter()
                .map(|c| TimingEntry {
                    name: &c.name,
                    ms: c.ms,
                })
                .collect(),
        })
        .expect("report serialization")
    }

    pub fn print_pretty(&self) {
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            println!(
                "[{status}] {} ({}) {}: {} vs {} [{} ms]",
                c.name, c.anchor, c.instance, c.lhs, c.rhs, c.ms
            );
        }
        println!("summary: {} pass, {} fail", self.passed(), self.failed());
    }
}

/// Helper running one named comparison and recording it.
pub fn check_eq<L: ToString, R: ToString>(
    report: &mut Report,
    name: &str,
    anchor: &str,
    instance: &str,
    lhs: L,
    rhs: R,
) {
    let start = Instant::now();
    let l = lhs.to_string();
    let r = rhs.to_string();
    report.push(Check {
        name: name.to_string(),
        anchor: anchor.to_string(),
        instance: instance.to_string(),
        pass: l == r,
        lhs: l,
        rhs: r,
        ms: start.elapsed().as_millis(),
    });
}

/// Helper recording an already-computed comparison with its runtime.
pub struct Timed {
    start: Instant,
}

impl Timed {
    #[allow(clippy::new_without_default)]
    pub fn new() -> Self {
        Timed {
            start: Instant::now(),
        }
    }

    pub fn record(
        self,
        report: &mut Report,
        name: &str,
        anchor: &str,
        instance: &str,
        lhs: String,
        rhs: String,
    ) {
        report.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            instance: instance.to_string(),
            pass: lhs == rhs,
            lhs,
            rhs,
            ms: self.start.elapsed().as_millis(),
        });
    }
}
