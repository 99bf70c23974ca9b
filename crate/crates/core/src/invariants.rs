//! Writhe, chord diagrams and the cowrithe.

use serde::{Deserialize, Serialize};

use crate::diagram::{CrossingId, Dart, Diagram, Sign};
use crate::error::{Error, Result};
use crate::gauss::{gauss_code, Direction};

/// Sum of crossing signs.
pub fn writhe(d: &Diagram) -> i64 {
    d.signs().iter().map(|s| s.value()).sum()
}

/// The knot's parameter circle with one chord per crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordDiagram {
    /// Crossing met at each of the `2V` points around the circle, in traversal order.
    pub circle: Vec<CrossingId>,
    pub signs: Vec<Sign>,
    /// The two circle positions of each crossing's chord, smaller first.
    pub endpoints: Vec<(usize, usize)>,
}

impl ChordDiagram {
    pub fn chord_count(&self) -> usize {
        self.signs.len()
    }

    fn check(&self, c: CrossingId) -> Result<()> {
        if c < self.chord_count() {
            Ok(())
        } else {
            Err(Error::UnknownCrossing(c))
        }
    }

    /// Whether the chords of `p` and `q` cross, i.e. their endpoints alternate.
    pub fn interleaved(&self, p: CrossingId, q: CrossingId) -> Result<bool> {
        self.check(p)?;
        self.check(q)?;
        if p == q {
            return Err(Error::SelfPair(p));
        }
        Ok(self.alternate(p, q))
    }

    #[inline]
    fn alternate(&self, p: CrossingId, q: CrossingId) -> bool {
        let (a, b) = self.endpoints[p];
        let (c, e) = self.endpoints[q];
        (a < c && c < b) != (a < e && e < b)
    }

    /// `interleaved` for all pairs; the diagonal is `false`.
    pub fn interleaving_matrix(&self) -> Vec<Vec<bool>> {
        let v = self.chord_count();
        (0..v)
            .map(|p| (0..v).map(|q| p != q && self.alternate(p, q)).collect())
            .collect()
    }

    /// Sum of sign products over unordered interleaved pairs.
    pub fn cowrithe(&self) -> i64 {
        let v = self.chord_count();
        let mut x = 0;
        for p in 0..v {
            for q in p + 1..v {
                if self.alternate(p, q) {
                    x += self.signs[p].value() * self.signs[q].value();
                }
            }
        }
        x
    }

    /// Signed number of chords crossing the chord of `c`.
    pub fn interleave_count(&self, c: CrossingId) -> Result<i64> {
        self.check(c)?;
        let sc = self.signs[c].value();
        Ok((0..self.chord_count())
            .filter(|&q| q != c && self.alternate(c, q))
            .map(|q| sc * self.signs[q].value())
            .sum())
    }

    /// Interleaved unordered pairs `(p, q)` with `p < q`.
    pub fn interleaved_pairs(&self) -> Vec<(CrossingId, CrossingId)> {
        let v = self.chord_count();
        let mut out = Vec::new();
        for p in 0..v {
            for q in p + 1..v {
                if self.alternate(p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }
}

pub fn chord_diagram(d: &Diagram) -> ChordDiagram {
    let v = d.crossing_count();
    if v == 0 {
        return ChordDiagram {
            circle: Vec::new(),
            signs: Vec::new(),
            endpoints: Vec::new(),
        };
    }
    let code = gauss_code(d, Dart::new(0, 0), Direction::Forward).expect("crossing 0 exists");
    ChordDiagram {
        circle: code.tokens.iter().map(|t| t.crossing).collect(),
        endpoints: code.positions(v),
        signs: d.signs().to_vec(),
    }
}

pub fn cowrithe(d: &Diagram) -> i64 {
    chord_diagram(d).cowrithe()
}

pub fn interleave_count(d: &Diagram, c: CrossingId) -> Result<i64> {
    chord_diagram(d).interleave_count(c)
}

/// Which member of the torus pair `D(n+1, n)` / `D(n, n+1)` a closed form refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TorusSide {
    /// `D(n+1, n)`
    Over,
    /// `D(n, n+1)`
    Under,
}

/// Closed-form cowrithe of `D(n+1, n)` or `D(n, n+1)`.
pub fn cowrithe_closed_form(n: i64, side: TorusSide) -> Result<i64> {
    if n < 2 {
        return Err(Error::BadParams(format!(
            "closed forms need n >= 2, got {n}"
        )));
    }
    let num = match side {
        TorusSide::Over => (n - 1) * n * n * (n + 4),
        TorusSide::Under => (n - 1) * n * (n + 1) * (n + 1),
    };
    assert_eq!(
        num % 6,
        0,
        "closed form numerator not divisible by 6 at n = {n}"
    );
    Ok(num / 6)
}

/// Writhe of `D(n+1, n)` (`n^2`) or `D(n, n+1)` (`n^2 - 1`).
pub fn writhe_closed_form(n: i64, side: TorusSide) -> Result<i64> {
    if n < 2 {
        return Err(Error::BadParams(format!(
            "closed forms need n >= 2, got {n}"
        )));
    }
    Ok(match side {
        TorusSide::Over => n * n,
        TorusSide::Under => n * n - 1,
    })
}

/// Lower bounds on the moves needed between two diagrams.
///
/// Only RI changes the writhe, by exactly one. RI leaves the cowrithe alone while
/// RII and RIII change it by at most one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub ri_lower: u64,
    pub rii_riii_lower: u64,
}

impl BoundsReport {
    pub fn total(&self) -> u64 {
        self.ri_lower + self.rii_riii_lower
    }
}

pub fn move_lower_bounds(d1: &Diagram, d2: &Diagram) -> BoundsReport {
    BoundsReport {
        ri_lower: writhe(d1).abs_diff(writhe(d2)),
        rii_riii_lower: cowrithe(d1).abs_diff(cowrithe(d2)),
    }
}
