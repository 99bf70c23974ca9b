//! Oriented knot diagrams on the sphere, stored as 4-valent combinatorial maps.
//!
//! Every crossing owns four half-edges ("darts") numbered `0..4` counterclockwise,
//! starting from the incoming under-strand. With that numbering the under-strand
//! always runs `0 -> 2`; the over-strand runs `3 -> 1` at a positive crossing and
//! `1 -> 3` at a negative one. The edge structure is an involution on darts.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CrossingId = usize;

/// A half-edge: one of the four slots of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, u8)", into = "(usize, u8)")]
pub struct Dart {
    pub crossing: CrossingId,
    pub slot: u8,
}

impl Dart {
    pub fn new(crossing: CrossingId, slot: u8) -> Self {
        debug_assert!(slot < 4);
        Dart { crossing, slot }
    }

    #[inline]
    pub(crate) fn index(self) -> usize {
        4 * self.crossing + self.slot as usize
    }

    #[inline]
    pub(crate) fn from_index(i: usize) -> Self {
        Dart {
            crossing: i / 4,
            slot: (i % 4) as u8,
        }
    }

    /// The dart on the other side of the crossing, along the same strand.
    #[inline]
    pub fn opposite(self) -> Self {
        Dart {
            crossing: self.crossing,
            slot: (self.slot + 2) % 4,
        }
    }

    /// Next dart counterclockwise around the same crossing.
    #[inline]
    pub fn ccw(self) -> Self {
        Dart {
            crossing: self.crossing,
            slot: (self.slot + 1) % 4,
        }
    }

    /// Over-strand darts sit on the odd slots.
    #[inline]
    pub fn is_over(self) -> bool {
        self.slot % 2 == 1
    }
}

impl From<(usize, u8)> for Dart {
    fn from((crossing, slot): (usize, u8)) -> Self {
        Dart {
            crossing,
            slot: slot % 4,
        }
    }
}

impl From<Dart> for (usize, u8) {
    fn from(d: Dart) -> Self {
        (d.crossing, d.slot)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.crossing, self.slot)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    /// Slot through which the over-strand enters a crossing of this sign.
    #[inline]
    pub fn over_in_slot(self) -> u8 {
        match self {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_value(v)
            .ok_or_else(|| serde::de::Error::custom(format!("sign must be +1 or -1, got {v}")))
    }
}

/// A face of the diagram, traced with the face on the right of the walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Darts `d` such that the walk runs along the edge from `d` to its partner.
    /// Starts at the smallest dart of the face.
    pub boundary: Vec<Dart>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.boundary.len()
    }

    pub fn crossings(&self) -> impl Iterator<Item = CrossingId> + '_ {
        self.boundary.iter().map(|d| d.crossing)
    }
}

/// An oriented, single-component knot diagram on the sphere.
///
/// Values are immutable; every operation that changes the diagram builds a new one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    signs: Vec<Sign>,
    link: Vec<usize>,
}

impl Diagram {
    /// The round unknot with no crossings.
    pub fn unknot() -> Self {
        Diagram {
            signs: Vec::new(),
            link: Vec::new(),
        }
    }

    /// Builds a diagram from crossing signs and the dart pairing, validating it fully.
    pub fn from_links(
        signs: Vec<Sign>,
        pairs: impl IntoIterator<Item = (Dart, Dart)>,
    ) -> Result<Self> {
        let mut link = vec![usize::MAX; 4 * signs.len()];
        for (a, b) in pairs {
            for d in [a, b] {
                if d.crossing >= signs.len() || d.slot >= 4 {
                    return Err(Error::MalformedCode(format!("dart {d} out of range")));
                }
            }
            if link[a.index()] != usize::MAX || link[b.index()] != usize::MAX {
                return Err(Error::MalformedCode(format!(
                    "dart paired twice near {a}-{b}"
                )));
            }
            link[a.index()] = b.index();
            link[b.index()] = a.index();
        }
        let d = Diagram { signs, link };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn from_raw(signs: Vec<Sign>, link: Vec<usize>) -> Result<Self> {
        let d = Diagram { signs, link };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn raw_links(&self) -> &[usize] {
        &self.link
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.signs.len()
    }

    pub fn is_unknot_round(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, c: CrossingId) -> Result<Sign> {
        self.signs.get(c).copied().ok_or(Error::UnknownCrossing(c))
    }

    #[inline]
    pub fn partner(&self, d: Dart) -> Dart {
        Dart::from_index(self.link[d.index()])
    }

    /// Whether the strand through `d` points into its crossing.
    #[inline]
    pub fn is_incoming(&self, d: Dart) -> bool {
        d.slot == 0 || d.slot == self.signs[d.crossing].over_in_slot()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.link.len()).map(Dart::from_index)
    }

    /// Outgoing darts; each one names exactly one edge.
    pub fn edges(&self) -> impl Iterator<Item = Dart> + '_ {
        self.darts().filter(move |&d| !self.is_incoming(d))
    }

    pub fn is_positive(&self) -> bool {
        self.signs.iter().all(|&s| s == Sign::Positive)
    }

    /// Face-tracing permutation: cross the edge, then turn to the next slot counterclockwise.
    #[inline]
    pub(crate) fn face_next(&self, d: Dart) -> Dart {
        self.partner(d).ccw()
    }

    /// The boundary walk of the face that lies to the right of the edge leaving `d`.
    pub fn face_walk(&self, start: Dart) -> Vec<Dart> {
        let mut walk = vec![start];
        let mut d = self.face_next(start);
        while d != start {
            walk.push(d);
            d = self.face_next(d);
        }
        walk
    }

    /// Same face as [`Diagram::face_walk`], rotated to begin at its smallest dart.
    pub fn face_boundary(&self, d: Dart) -> Vec<Dart> {
        let mut walk = self.face_walk(d);
        let (pos, _) = walk
            .iter()
            .enumerate()
            .min_by_key(|(_, d)| **d)
            .expect("non-empty walk");
        walk.rotate_left(pos);
        walk
    }

    /// All faces, ordered by their smallest dart. The round unknot has two empty faces.
    pub fn faces(&self) -> Vec<Face> {
        if self.signs.is_empty() {
            return vec![
                Face {
                    id: 0,
                    boundary: Vec::new(),
                },
                Face {
                    id: 1,
                    boundary: Vec::new(),
                },
            ];
        }
        let mut seen = vec![false; self.link.len()];
        let mut faces = Vec::new();
        for i in 0..self.link.len() {
            if seen[i] {
                continue;
            }
            let walk = self.face_walk(Dart::from_index(i));
            for d in &walk {
                seen[d.index()] = true;
            }
            // i is the smallest unseen dart, so the walk already starts at its minimum
            faces.push(Face {
                id: faces.len(),
                boundary: walk,
            });
        }
        faces
    }

    pub fn face_count(&self) -> usize {
        if self.signs.is_empty() {
            return 2;
        }
        let mut seen = vec![false; self.link.len()];
        let mut count = 0;
        for i in 0..self.link.len() {
            if seen[i] {
                continue;
            }
            count += 1;
            let start = Dart::from_index(i);
            let mut d = start;
            loop {
                seen[d.index()] = true;
                d = self.face_next(d);
                if d == start {
                    break;
                }
            }
        }
        count
    }

    /// V - E + F; equals 2 for every valid diagram.
    pub fn euler_characteristic(&self) -> i64 {
        self.crossing_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Entry darts met while following the orientation from the edge leaving `out`.
    pub fn traverse_from(&self, out: Dart) -> Vec<Dart> {
        let mut seq = Vec::with_capacity(self.edge_count());
        let mut u = out;
        loop {
            let v = self.partner(u);
            seq.push(v);
            u = v.opposite();
            if u == out || seq.len() > self.link.len() {
                break;
            }
        }
        seq
    }

    /// Number of closed curves traced by following strands straight through crossings.
    pub fn component_count(&self) -> usize {
        if self.signs.is_empty() {
            return 1;
        }
        let mut seen = vec![false; self.link.len()];
        let mut count = 0;
        for i in 0..self.link.len() {
            if seen[i] {
                continue;
            }
            count += 1;
            let start = Dart::from_index(i);
            let mut d = start;
            loop {
                seen[d.index()] = true;
                let p = self.partner(d);
                seen[p.index()] = true;
                d = p.opposite();
                if d == start {
                    break;
                }
            }
        }
        count
    }

    fn validate(&self) -> Result<()> {
        let n = self.link.len();
        if n != 4 * self.signs.len() {
            return Err(Error::MalformedCode(
                "dart table has the wrong length".into(),
            ));
        }
        for i in 0..n {
            let j = self.link[i];
            if j >= n || j == i || self.link[j] != i {
                return Err(Error::MalformedCode(format!(
                    "dart {} is not properly paired",
                    Dart::from_index(i)
                )));
            }
            let (a, b) = (Dart::from_index(i), Dart::from_index(j));
            if self.is_incoming(a) == self.is_incoming(b) {
                return Err(Error::MalformedCode(format!(
                    "edge {a}-{b} does not run from an outgoing to an incoming slot"
                )));
            }
        }
        let components = self.component_count();
        if components != 1 {
            return Err(Error::MultiComponent { components });
        }
        let euler = self.euler_characteristic();
        if euler != 2 {
            return Err(Error::NonPlanar { euler });
        }
        Ok(())
    }

    /// Renames crossing `c` to `perm[c]`.
    pub fn relabel(&self, perm: &[CrossingId]) -> Result<Diagram> {
        let v = self.crossing_count();
        let mut check = vec![false; v];
        if perm.len() != v {
            return Err(Error::BadParams(
                "permutation length differs from crossing count".into(),
            ));
        }
        for &p in perm {
            if p >= v || std::mem::replace(&mut check[p], true) {
                return Err(Error::BadParams("not a permutation".into()));
            }
        }
        let mut signs = vec![Sign::Positive; v];
        let mut link = vec![0; 4 * v];
        for c in 0..v {
            signs[perm[c]] = self.signs[c];
            for s in 0..4u8 {
                let d = Dart::new(c, s);
                let p = self.partner(d);
                link[Dart::new(perm[c], s).index()] = Dart::new(perm[p.crossing], p.slot).index();
            }
        }
        Ok(Diagram { signs, link })
    }

    /// The same diagram with the orientation of the knot reversed.
    ///
    /// Signs are unchanged; slot `k` of the result is slot `k + 2` of `self`.
    pub fn reversed(&self) -> Diagram {
        let link = (0..self.link.len())
            .map(|i| {
                let d = Dart::from_index(i);
                let p = self.partner(Dart::new(d.crossing, (d.slot + 2) % 4));
                Dart::new(p.crossing, (p.slot + 2) % 4).index()
            })
            .collect();
        Diagram {
            signs: self.signs.clone(),
            link,
        }
    }

    /// Planar-diagram code: one 4-tuple of edge labels per crossing, listed counterclockwise
    /// from the incoming under-edge. Edges are numbered `1..=2V` along the orientation,
    /// starting with the edge that enters crossing 0 from below.
    pub fn to_pd(&self) -> DiagramFile {
        let v = self.crossing_count();
        let mut labels = vec![0i64; 4 * v];
        if v > 0 {
            let start = self.partner(Dart::new(0, 0));
            let mut u = start;
            let mut label = 1;
            loop {
                let w = self.partner(u);
                labels[u.index()] = label;
                labels[w.index()] = label;
                label += 1;
                u = w.opposite();
                if u == start {
                    break;
                }
            }
        }
        DiagramFile {
            pd: (0..v)
                .map(|c| {
                    [
                        labels[4 * c],
                        labels[4 * c + 1],
                        labels[4 * c + 2],
                        labels[4 * c + 3],
                    ]
                })
                .collect(),
            signs: self.signs.clone(),
        }
    }

    /// Parses a planar-diagram code. Each edge label must occur exactly twice.
    pub fn from_pd(file: &DiagramFile) -> Result<Diagram> {
        if file.pd.len() != file.signs.len() {
            return Err(Error::MalformedCode(format!(
                "{} crossings but {} signs",
                file.pd.len(),
                file.signs.len()
            )));
        }
        let mut ends: BTreeMap<i64, Vec<Dart>> = BTreeMap::new();
        for (c, tuple) in file.pd.iter().enumerate() {
            for (s, &e) in tuple.iter().enumerate() {
                ends.entry(e).or_default().push(Dart::new(c, s as u8));
            }
        }
        let mut pairs = Vec::with_capacity(2 * file.pd.len());
        for (label, darts) in ends {
            if darts.len() != 2 {
                return Err(Error::MalformedCode(format!(
                    "edge {label} appears {} time(s), expected 2",
                    darts.len()
                )));
            }
            pairs.push((darts[0], darts[1]));
        }
        Diagram::from_links(file.signs.clone(), pairs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_pd()).expect("diagram serializes")
    }

    pub fn from_json(text: &str) -> Result<Diagram> {
        let file: DiagramFile = serde_json::from_str(text)?;
        Diagram::from_pd(&file)
    }
}

/// On-disk diagram format: `{"pd": [[a,b,c,d], ...], "signs": [±1, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFile {
    pub pd: Vec<[i64; 4]>,
    pub signs: Vec<Sign>,
}

#[cfg(test)]
mod tests {
    use super::*;

    // Closure of b1^3 written out by hand: the standard positive trefoil.
    fn trefoil_pd() -> DiagramFile {
        DiagramFile {
            pd: vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]],
            signs: vec![Sign::Positive; 3],
        }
    }

    #[test]
    fn trefoil_from_pd_has_sphere_counts() {
        let d = Diagram::from_pd(&trefoil_pd()).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.edge_count(), 6);
        // F = E - V + 2
        assert_eq!(d.faces().len(), 5);
        assert_eq!(d.euler_characteristic(), 2);
    }

    #[test]
    fn unknot_round_has_two_faces() {
        let d = Diagram::from_pd(&DiagramFile {
            pd: vec![],
            signs: vec![],
        })
        .unwrap();
        assert!(d.is_unknot_round());
        assert_eq!(d.faces().len(), 2);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn edge_seen_once_is_malformed() {
        let mut f = trefoil_pd();
        f.pd[2][3] = 7;
        assert!(matches!(Diagram::from_pd(&f), Err(Error::MalformedCode(_))));
    }

    #[test]
    fn sign_count_mismatch_is_malformed() {
        let mut f = trefoil_pd();
        f.signs.pop();
        assert!(matches!(Diagram::from_pd(&f), Err(Error::MalformedCode(_))));
    }

    #[test]
    fn inconsistent_orientation_is_malformed() {
        // Flipping one sign makes the over-strand at crossing 0 run against its edges.
        let mut f = trefoil_pd();
        f.signs[0] = Sign::Negative;
        assert!(matches!(Diagram::from_pd(&f), Err(Error::MalformedCode(_))));
    }

    #[test]
    fn pd_round_trip_is_exact_on_export() {
        let d = Diagram::from_pd(&trefoil_pd()).unwrap();
        let again = Diagram::from_pd(&d.to_pd()).unwrap();
        assert_eq!(d, again);
        assert_eq!(again.to_pd(), d.to_pd());
    }

    #[test]
    fn reversal_is_an_involution() {
        let d = Diagram::from_pd(&trefoil_pd()).unwrap();
        let r = d.reversed();
        assert_eq!(r.signs(), d.signs());
        assert_eq!(r.reversed(), d);
        assert!(Diagram::from_raw(r.signs.clone(), r.link.clone()).is_ok());
    }

    #[test]
    fn face_degrees_sum_to_twice_edges() {
        let d = Diagram::from_pd(&trefoil_pd()).unwrap();
        let total: usize = d.faces().iter().map(Face::degree).sum();
        assert_eq!(total, 2 * d.edge_count());
    }
}
