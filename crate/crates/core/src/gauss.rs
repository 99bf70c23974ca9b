//! Gauss codes and the canonical form used for isomorphism tests and deduplication.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{CrossingId, Dart, Diagram, Sign};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussToken {
    pub crossing: CrossingId,
    pub over: bool,
    pub sign: Sign,
}

/// Crossing visits in traversal order; every crossing shows up once over and once under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedGaussCode {
    pub tokens: Vec<GaussToken>,
}

impl OrientedGaussCode {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Indices of the two visits to every crossing, in increasing order.
    pub fn positions(&self, crossings: usize) -> Vec<(usize, usize)> {
        let mut pos = vec![(usize::MAX, usize::MAX); crossings];
        for (i, t) in self.tokens.iter().enumerate() {
            let p = &mut pos[t.crossing];
            if p.0 == usize::MAX {
                p.0 = i;
            } else {
                p.1 = i;
            }
        }
        pos
    }
}

impl fmt::Display for OrientedGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let s = if t.sign == Sign::Positive { '+' } else { '-' };
            write!(f, "{}{}{}", if t.over { 'O' } else { 'U' }, t.crossing, s)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
}

/// Reads the Gauss code starting on the edge through `basepoint`.
///
/// `Forward` follows the diagram's orientation, `Backward` runs against it.
pub fn gauss_code(d: &Diagram, basepoint: Dart, direction: Direction) -> Result<OrientedGaussCode> {
    if d.is_unknot_round() {
        return Ok(OrientedGaussCode { tokens: Vec::new() });
    }
    if basepoint.crossing >= d.crossing_count() {
        return Err(Error::UnknownCrossing(basepoint.crossing));
    }
    // Normalize to the outgoing end of the edge in the traversal direction.
    let (diagram, start) = match direction {
        Direction::Forward => {
            let out = if d.is_incoming(basepoint) {
                d.partner(basepoint)
            } else {
                basepoint
            };
            (d.clone(), out)
        }
        Direction::Backward => {
            let incoming = if d.is_incoming(basepoint) {
                basepoint
            } else {
                d.partner(basepoint)
            };
            (d.reversed(), incoming.opposite())
        }
    };
    let tokens = diagram
        .traverse_from(start)
        .into_iter()
        .map(|v| GaussToken {
            crossing: v.crossing,
            over: v.is_over(),
            sign: diagram.signs()[v.crossing],
        })
        .collect();
    Ok(OrientedGaussCode { tokens })
}

/// Relabeling-, basepoint- and direction-independent serialization of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode {
    pub code: String,
    pub crossings: usize,
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

/// Canonical form: the lexicographically least traversal word over every starting edge
/// and both orientations.
///
/// A traversal relabels crossings by first visit and records, per visit, the label and
/// the slot through which the strand enters. Because slot numbering is fixed by the
/// orientation (slot 0 is the incoming under-strand, numbering counterclockwise), the
/// word determines the whole dart pairing and hence the map, so equal codes mean
/// isomorphic oriented sphere maps with the same crossing data.
pub fn canonical_form(d: &Diagram) -> CanonicalCode {
    let v = d.crossing_count();
    if v == 0 {
        return CanonicalCode {
            code: "V0:".into(),
            crossings: 0,
        };
    }
    let rev = d.reversed();
    let mut best: Option<Vec<u32>> = None;
    let mut scratch = Vec::with_capacity(2 * v);
    let mut labels = vec![u32::MAX; v];
    for diagram in [d, &rev] {
        for start in diagram.edges() {
            if let Some(word) =
                traversal_word(diagram, start, best.as_deref(), &mut labels, &mut scratch)
            {
                best = Some(word);
            }
        }
    }
    let best = best.expect("at least one edge");
    let mut code = format!("V{v}:");
    for (i, t) in best.iter().enumerate() {
        if i > 0 {
            code.push(',');
        }
        code.push_str(&format!("{}.{}", t / 4, t % 4));
    }
    CanonicalCode { code, crossings: v }
}

// Returns the traversal word from `start` when it beats `best`, bailing out as soon as
// it is known to be larger.
fn traversal_word(
    d: &Diagram,
    start: Dart,
    best: Option<&[u32]>,
    labels: &mut [u32],
    out: &mut Vec<u32>,
) -> Option<Vec<u32>> {
    labels.iter_mut().for_each(|l| *l = u32::MAX);
    out.clear();
    let mut next_label = 0;
    let mut smaller = best.is_none();
    let mut u = start;
    loop {
        let w = d.partner(u);
        let label = &mut labels[w.crossing];
        if *label == u32::MAX {
            *label = next_label;
            next_label += 1;
        }
        let token = *label * 4 + w.slot as u32;
        if !smaller {
            let b = best.expect("compared against an existing word")[out.len()];
            if token > b {
                return None;
            }
            if token < b {
                smaller = true;
            }
        }
        out.push(token);
        u = w.opposite();
        if u == start {
            break;
        }
    }
    if smaller {
        Some(out.clone())
    } else {
        None
    }
}

pub fn is_isomorphic(a: &Diagram, b: &Diagram) -> bool {
    a.crossing_count() == b.crossing_count() && canonical_form(a) == canonical_form(b)
}
