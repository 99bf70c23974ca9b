//! Braid words and their closures.
//!
//! Generators are written `b_i`, the crossing where the strand in position `i + 1`
//! passes over the strand in position `i`. With strands running downward every
//! `b_i` closes up to a positive crossing. In the integer notation `i` stands for
//! `b_i` and `-i` for its inverse.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{Dart, Diagram, Sign};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    /// 1-based generator index.
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn b(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn b_inv(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn from_signed(v: i64) -> Option<Self> {
        match v {
            0 => None,
            v if v > 0 => Some(Letter::b(v as usize)),
            v => Some(Letter::b_inv(v.unsigned_abs() as usize)),
        }
    }

    pub fn signed(self) -> i64 {
        if self.inverse {
            -(self.generator as i64)
        } else {
            self.generator as i64
        }
    }

    pub fn crossing_sign(self) -> Sign {
        if self.inverse {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::BadParams(format!(
                "a braid needs at least 2 strands, got {strands}"
            )));
        }
        if let Some(l) = letters
            .iter()
            .find(|l| l.generator == 0 || l.generator >= strands)
        {
            return Err(Error::BadParams(format!(
                "generator {} out of range for {strands} strands",
                l.generator
            )));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn from_signed(strands: usize, letters: &[i64]) -> Result<Self> {
        let letters = letters
            .iter()
            .map(|&v| {
                Letter::from_signed(v)
                    .ok_or_else(|| Error::BadParams("generator 0 does not exist".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Position reached at the bottom by the strand entering at `start` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            at.swap(l.generator - 1, l.generator);
        }
        // at[pos] = strand now in pos; invert
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Number of components of the closure (cycles of the permutation).
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for s in 0..self.strands {
            if !seen[s] {
                cycles += 1;
                let mut t = s;
                while !seen[t] {
                    seen[t] = true;
                    t = perm[t];
                }
            }
        }
        cycles
    }

    pub fn rotated(&self, by: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = by % letters.len();
            letters.rotate_left(k);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.signed())?;
        }
        Ok(())
    }
}

/// Parses `"<strands>:<letters>"`, letters separated by spaces or commas, e.g. `"3:1 2 -1"`.
impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (strands, rest) = s.split_once(':').ok_or_else(|| {
            Error::BadParams(format!("expected '<strands>:<letters>', got '{s}'"))
        })?;
        let strands: usize = strands
            .trim()
            .parse()
            .map_err(|_| Error::BadParams(format!("bad strand count '{strands}'")))?;
        let letters = rest
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::BadParams(format!("bad braid letter '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::from_signed(strands, &letters)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusParams {
    pub p: usize,
    pub q: usize,
}

impl TorusParams {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p < 2 || q < 2 {
            return Err(Error::BadParams(format!(
                "torus parameters must be at least 2, got ({p}, {q})"
            )));
        }
        if gcd(p, q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(TorusParams { p, q })
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(b_1 b_2 ... b_{p-1})^q` on `p` strands.
pub fn torus_braid(params: TorusParams) -> BraidWord {
    let letters = (0..params.q)
        .flat_map(|_| (1..params.p).map(Letter::b))
        .collect();
    BraidWord {
        strands: params.p,
        letters,
    }
}

/// The torus diagram `D(p, q)`: closure of [`torus_braid`].
pub fn torus_diagram(p: usize, q: usize) -> Result<Diagram> {
    closure(&torus_braid(TorusParams::new(p, q)?))
}

/// Closes a braid into a knot diagram, crossing `j` coming from letter `j`.
///
/// Strands run downward and the closing arcs pass to the right of the braid.
pub fn closure(w: &BraidWord) -> Result<Diagram> {
    let components = w.closure_components();
    if components != 1 {
        return Err(Error::MultiComponent { components });
    }
    // Corners of a crossing in the plane, listed counterclockwise: NE, NW, SW, SE.
    // For b_i the under-strand enters at NW; for its inverse at NE.
    const NE: usize = 0;
    const NW: usize = 1;
    const SW: usize = 2;
    const SE: usize = 3;
    let slot_of = |l: Letter, corner: usize| -> u8 {
        let under_in = if l.inverse { NE } else { NW };
        ((corner + 4 - under_in) % 4) as u8
    };
    let mut first_in: Vec<Option<Dart>> = vec![None; w.strands];
    let mut dangling: Vec<Option<Dart>> = vec![None; w.strands];
    let mut pairs = Vec::with_capacity(2 * w.len());
    for (j, &l) in w.letters.iter().enumerate() {
        let left = l.generator - 1;
        for (pos, corner) in [(left, NW), (left + 1, NE)] {
            let d = Dart::new(j, slot_of(l, corner));
            match dangling[pos] {
                Some(out) => pairs.push((out, d)),
                None => first_in[pos] = Some(d),
            }
        }
        dangling[left] = Some(Dart::new(j, slot_of(l, SW)));
        dangling[left + 1] = Some(Dart::new(j, slot_of(l, SE)));
    }
    for pos in 0..w.strands {
        match (dangling[pos], first_in[pos]) {
            (Some(out), Some(inc)) => pairs.push((out, inc)),
            // an untouched strand closes into a separate circle
            _ => return Err(Error::MultiComponent { components: 2 }),
        }
    }
    let signs = w.letters.iter().map(|l| l.crossing_sign()).collect();
    Diagram::from_links(signs, pairs)
}
