//! Reference computations used by the integration tests.
//!
//! Everything here works straight from braid words or from raw dart data, without the
//! library's Gauss codes, chord diagrams or move bookkeeping.

#![allow(dead_code)]

use cowrithe::{closure, BraidWord, Dart, Diagram};
use rand::Rng;

/// Crossing visits of the closed braid, as `(letter index, over)`, following the strand
/// that starts at the top of position 0.
pub fn braid_gauss(strands: usize, letters: &[i64]) -> Vec<(usize, bool)> {
    let mut seq = Vec::new();
    let mut pos = 0usize;
    loop {
        for (j, &l) in letters.iter().enumerate() {
            let left = l.unsigned_abs() as usize - 1;
            if pos == left || pos == left + 1 {
                // b_i: the right-hand strand passes over; its inverse: the left-hand one
                let over = (pos == left + 1) == (l > 0);
                seq.push((j, over));
                pos = if pos == left { left + 1 } else { left };
            }
        }
        if pos == 0 {
            break;
        }
    }
    assert_eq!(
        seq.len(),
        2 * letters.len(),
        "closure of {letters:?} on {strands} strands is not a knot"
    );
    seq
}

/// Sum of sign products over pairs whose visits alternate around the circle.
pub fn braid_cowrithe(strands: usize, letters: &[i64]) -> i64 {
    let seq = braid_gauss(strands, letters);
    let v = letters.len();
    let mut first = vec![usize::MAX; v];
    let mut second = vec![usize::MAX; v];
    for (t, &(c, _)) in seq.iter().enumerate() {
        if first[c] == usize::MAX {
            first[c] = t;
        } else {
            second[c] = t;
        }
    }
    let sign = |c: usize| letters[c].signum();
    let mut x = 0;
    for p in 0..v {
        for q in p + 1..v {
            let inside = |t: usize| first[p] < t && t < second[p];
            if inside(first[q]) != inside(second[q]) {
                x += sign(p) * sign(q);
            }
        }
    }
    x
}

/// Signed count of crossings alternating with crossing `c`.
pub fn braid_interleave_count(strands: usize, letters: &[i64], c: usize) -> i64 {
    let seq = braid_gauss(strands, letters);
    let pos: Vec<usize> = (0..seq.len()).filter(|&t| seq[t].0 == c).collect();
    let mut total = 0;
    for q in (0..letters.len()).filter(|&q| q != c) {
        let inside = (0..seq.len())
            .filter(|&t| seq[t].0 == q && pos[0] < t && t < pos[1])
            .count();
        if inside == 1 {
            total += letters[c].signum() * letters[q].signum();
        }
    }
    total
}

pub fn torus_letters(p: usize, q: usize) -> Vec<i64> {
    (0..q).flat_map(|_| 1..p as i64).collect()
}

/// Random braid words with a single-component closure, at most `max_len` letters.
pub fn random_knot_word(rng: &mut impl Rng, max_len: usize) -> (usize, Vec<i64>) {
    loop {
        let strands = rng.gen_range(2..=4);
        let len = rng.gen_range(1..=max_len);
        let letters: Vec<i64> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands) as i64;
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let w = BraidWord::from_signed(strands, &letters).unwrap();
        if w.closure_components() == 1 {
            return (strands, letters);
        }
    }
}

pub fn knot(strands: usize, letters: &[i64]) -> Diagram {
    closure(&BraidWord::from_signed(strands, letters).unwrap()).unwrap()
}

/// Orientation of the edge through `x`: the crossing it leaves from.
pub fn edge_tail(d: &Diagram, x: Dart) -> usize {
    if d.is_incoming(x) {
        d.partner(x).crossing
    } else {
        x.crossing
    }
}

/// A bigon is incoherent when both of its edges leave the same crossing.
pub fn bigon_edges_parallel(d: &Diagram, walk: &[Dart]) -> bool {
    assert_eq!(walk.len(), 2);
    edge_tail(d, walk[0]) == edge_tail(d, walk[1])
}

/// V - E + F counted from scratch with the face permutation `partner` then `ccw`.
pub fn euler(d: &Diagram) -> i64 {
    let v = d.crossing_count() as i64;
    if v == 0 {
        return 2;
    }
    let darts: Vec<Dart> = d.darts().collect();
    let mut seen = std::collections::HashSet::new();
    let mut faces = 0;
    for &s in &darts {
        if seen.contains(&s) {
            continue;
        }
        faces += 1;
        let mut x = s;
        while seen.insert(x) {
            x = d.partner(x).ccw();
        }
    }
    v - 2 * v + faces
}
