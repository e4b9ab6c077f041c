//! Measures every gated constant and rewrites `expected.json`.
//!
//!     cargo run --release --example freeze_constants [-- path/to/expected.json]

use hypscatter::acceptance::{invariant_constants, run_all, Context};
use hypscatter::expected::Expected;
use hypscatter::specfun::PrecisionProfile;
use std::path::PathBuf;

fn main() {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("expected.json"));
    let mut ctx = Context::new(PrecisionProfile::default(), Expected::default(), 20240601);
    ctx.gate = false;
    let mut frozen = Expected::default();
    for r in run_all(&ctx) {
        println!("{}", r.line());
        for (k, v) in r.frozen {
            println!("    frozen   {k} = {v:.6e}");
            frozen.constants.insert(k, v);
        }
        for (k, v) in r.info {
            println!("    reported {k} = {v:.6e}");
            frozen.reported.insert(format!("c{}_{k}", r.id), v);
        }
    }
    for (k, v) in invariant_constants(PrecisionProfile::default()).expect("invariant constants") {
        println!("invariant frozen {k} = {v:.6e}");
        frozen.constants.insert(k, v);
    }
    hypscatter::io::write_json_atomic(&path, &frozen).expect("write expected.json");
    println!("wrote {}", path.display());
}
