//! Enumerate isolated fixed points, fixed lines and half-lines.

use pwlfix::analysis::{fixed_points, lemma_construct, Witness};
use pwlfix::fixtures::{fixed_half_line, im, iv};
use pwlfix::PwlMap;

fn main() -> pwlfix::Result<()> {
    // x1 -> 2|x1| - 1 fixes -1/3 on the left and 1 on the right.
    let fold = PwlMap::new(im(&[&[0, 0], &[0, 0]]), iv(&[2, 0]), iv(&[-1, 0]))?;
    // Identity on the left half-plane, so x1 = 0 is a line of fixed points.
    let hinge = PwlMap::new(im(&[&[1, 0], &[0, 1]]), iv(&[1, 0]), iv(&[0, 0]))?;

    for (name, map) in [("fold", fold), ("hinge", hinge), ("half-line", fixed_half_line())] {
        println!("{name}:");
        for w in fixed_points(&map).witnesses {
            match w {
                Witness::Point(p) => println!("  {} point {}", p.side, p.point),
                Witness::Line(l) => println!("  {} line {} + t {}, {}", l.piece, l.base, l.direction, l.range),
            }
        }
    }

    let z = lemma_construct(&fixed_half_line())?;
    println!("switching-manifold fixed point of the half-line map: {}", z.point);
    Ok(())
}
