//! Periodic orbits by symbolic itinerary, including a degenerate family.

use pwlfix::dynamics::find_cycles;
use pwlfix::fixtures::{counterexample, im, iv};
use pwlfix::PwlMap;

fn main() -> pwlfix::Result<()> {
    // Tent map x1 -> 1 - 2|x1| with a contracting second coordinate.
    let tent = PwlMap::new(im(&[&[0, 0], &[0, 0]]), iv(&[-2, 0]), iv(&[1, 0]))?;
    for c in find_cycles(&tent, 5)? {
        println!("tent period {} {}: {}", c.period, c.symbol_string(), c.point);
    }

    for c in find_cycles(&counterexample(), 6)? {
        println!("3d map period {} {}: {} (family: {})", c.period, c.symbol_string(), c.point, c.degenerate_family);
        for d in &c.family_directions {
            println!("  direction {d}");
        }
    }
    Ok(())
}
