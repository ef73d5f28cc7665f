//! Generate seeded random maps and attack each verdict with the oracle.
//!
//! `cargo run --release --example random_verify -- 200` checks 200 maps.

use std::collections::BTreeMap;

use pwlfix::verify::{oracle_validate, random_map, GenConfig, ValidateConfig};

fn main() -> pwlfix::Result<()> {
    let count: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(30);
    let mut verdicts = BTreeMap::new();
    let mut failures = 0;
    for seed in 0..count {
        let n = 2 + (seed % 3) as usize;
        let map = random_map(&GenConfig::new(n, seed))?;
        let report = oracle_validate(&map, &ValidateConfig::new(20, 200, 6, seed))?;
        *verdicts.entry(report.verdict.as_str()).or_insert(0) += 1;
        if !report.passed() {
            failures += 1;
            println!("{report}");
        }
    }
    println!("{verdicts:?}");
    println!("{failures} failures in {count} maps");
    Ok(())
}
