fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).cloned().unwrap_or_else(|| "all".into());
    let ctx = hermlab::suites::SuiteCtx::new(3, 1).unwrap();
    let start = std::time::Instant::now();
    let report = hermlab::suites::run_suite(&which, &ctx).unwrap();
    println!("suite {which}: {} pass {} fail in {:?}", report.passed(), report.failed(), start.elapsed());
    for c in report.checks.iter().filter(|c| !c.pass) {
        println!("  FAIL {} {}: {} vs {}", c.name, c.instance, c.lhs, c.rhs);
    }
}
