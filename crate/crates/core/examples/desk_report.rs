//! Re-checks every claim at desk scale; the same run as `atomlog report`.

use atomlog::report::{run_report, ReportConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(7);
    let outcome = run_report(&ReportConfig {
        seed,
        evidence_dir: None,
    })?;
    for claim in &outcome.claims {
        println!(
            "{:<28} {:?}  {}",
            claim.claim_id, claim.status, claim.detail
        );
    }
    std::process::exit(outcome.exit_code());
}
