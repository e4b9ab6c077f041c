//! Runs the twelve acceptance criteria and prints one line per criterion.
//! Frozen constants come from `expected.json`; override the path with
//! `HYPSCATTER_EXPECTED`.

use hypscatter::acceptance::{run_all, Context};
use hypscatter::expected::Expected;
use hypscatter::specfun::PrecisionProfile;
use std::process::ExitCode;

fn main() -> ExitCode {
    let expected = match std::env::var_os("HYPSCATTER_EXPECTED") {
        Some(p) => Expected::load(p.as_ref()).expect("readable expected-values file"),
        None => Expected::bundled(),
    };
    let ctx = Context::new(PrecisionProfile::default(), expected, 20240601);
    let reports = run_all(&ctx);
    for r in &reports {
        println!("{}", r.line());
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", reports.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
