//! Classify a handful of maps and print the evidence behind each verdict.
//!
//! Run with `cargo run --example classify`.

use pwlfix::fixtures::{counterexample, divergent_fold, fixed_half_line, translation};
use pwlfix::report::classify_human;
use pwlfix::{classify, PwlMap, Rational};

fn main() {
    let maps: [(&str, PwlMap<Rational>); 4] = [
        ("constant map", translation()),
        ("x1 -> 2|x1| + 1", divergent_fold()),
        ("fixed half-line", fixed_half_line()),
        ("rank-deficient 3d map", counterexample()),
    ];
    for (name, map) in maps {
        println!("== {name}");
        print!("{}", classify_human(&classify(&map)));
        println!();
    }
}
