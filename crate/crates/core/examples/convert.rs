//! Normal form of a map given as two affine pieces.

use pwlfix::fixtures::{im, iv};
use pwlfix::io::map_to_json_pretty;
use pwlfix::pwlmap::from_two_pieces;

fn main() {
    let left = im(&[&[1, 2], &[3, 4]]);
    let right = im(&[&[5, 2], &[7, 4]]);
    let c = iv(&[0, 1]);
    match from_two_pieces(&left, &right, &c, &c) {
        Ok(map) => println!("{}", map_to_json_pretty(&map)),
        Err(e) => eprintln!("{e}"),
    }

    let broken = im(&[&[5, 2], &[7, 5]]);
    if let Err(e) = from_two_pieces(&left, &broken, &c, &c) {
        println!("rejected: {e}");
    }
}
