//! Border-collision scan of f(x) + mu c, written as CSV to stdout.

use std::io;

use pwlfix::bcb::{classify_family, scan, BcbFamily};
use pwlfix::fixtures::{im, iv, rq};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fold = BcbFamily::new(im(&[&[0, 0], &[0, 0]]), iv(&[2, 0]), iv(&[1, 0]))?;
    let class = classify_family(&fold);
    eprintln!("{} on {}, transversality {}", class.class.as_str(), class.fold_side, class.transversality);

    let report = scan(&fold, &rq(-1, 1), &rq(1, 1), 11)?;
    report.write_csv(io::stdout().lock())?;
    eprintln!("consistent with the fixed point search: {}", report.all_consistent());

    let persistence = BcbFamily::new(im(&[&[0, 0], &[0, 0]]), iv(&[0, 0]), iv(&[1, 0]))?;
    eprintln!("second family: {}", classify_family(&persistence).class.as_str());
    Ok(())
}
