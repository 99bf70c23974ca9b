//! Reidemeister moves addressed by faces: enumeration, application and invariant deltas.
//!
//! Deletions and RIII moves name their face by a dart on its boundary (enumeration
//! always uses the smallest one). Creations name an edge or a face plus the extra
//! data needed to place the new crossings. New crossings get the next free ids;
//! deletions compact the remaining ids while keeping their order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{CrossingId, Dart, Diagram, Sign};
use crate::error::{Error, Result};
use crate::invariants::{cowrithe, writhe};

/// Side of an oriented edge, looking along its direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    R1Create,
    R1Delete,
    R2Create,
    R2Delete,
    R3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] = [
        MoveKind::R1Create,
        MoveKind::R1Delete,
        MoveKind::R2Create,
        MoveKind::R2Delete,
        MoveKind::R3,
    ];

    /// Parses a comma-separated list such as `"R1,R3"`; `R1`/`R2` select both directions.
    pub fn parse_list(s: &str) -> Result<Vec<MoveKind>> {
        let mut kinds = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let add: &[MoveKind] = match tok.to_ascii_uppercase().as_str() {
                "R1" => &[MoveKind::R1Create, MoveKind::R1Delete],
                "R1+" => &[MoveKind::R1Create],
                "R1-" => &[MoveKind::R1Delete],
                "R2" => &[MoveKind::R2Create, MoveKind::R2Delete],
                "R2+" => &[MoveKind::R2Create],
                "R2-" => &[MoveKind::R2Delete],
                "R3" => &[MoveKind::R3],
                _ => return Err(Error::BadParams(format!("unknown move kind '{tok}'"))),
            };
            kinds.extend_from_slice(add);
        }
        kinds.sort();
        kinds.dedup();
        Ok(kinds)
    }
}

/// Face addressed by an RII creation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceRef {
    /// One of the two faces of the round unknot, on the given side of its orientation.
    Unknot(Side),
    /// The face walk starting at this dart.
    Walk(Dart),
}

/// Which two arcs of a face the RII creation pushes across each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arcs {
    /// Two distinct edges at walk positions `first < second`.
    Pair { first: usize, second: usize },
    /// A single edge folded over itself. `finger_first` puts the pushed finger at the
    /// start of the edge (in walk order) rather than at its end.
    SameEdge { position: usize, finger_first: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Move {
    /// Adds a kink on the edge leaving `edge` (`None` for the round unknot).
    #[serde(rename = "R1+")]
    R1Create {
        edge: Option<Dart>,
        side: Side,
        sign: Sign,
    },
    #[serde(rename = "R1-")]
    R1Delete { face: Dart },
    /// `first_over` makes the arc at the smaller walk position the over-strand.
    #[serde(rename = "R2+")]
    R2Create {
        face: FaceRef,
        arcs: Arcs,
        first_over: bool,
    },
    #[serde(rename = "R2-")]
    R2Delete { face: Dart },
    /// `slide` is the trigon crossing away from the edge that passes over both others.
    #[serde(rename = "R3")]
    R3 { face: Dart, slide: CrossingId },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Create { .. } => MoveKind::R1Create,
            Move::R1Delete { .. } => MoveKind::R1Delete,
            Move::R2Create { .. } => MoveKind::R2Create,
            Move::R2Delete { .. } => MoveKind::R2Delete,
            Move::R3 { .. } => MoveKind::R3,
        }
    }

    /// Change in crossing count caused by the move.
    pub fn crossing_change(&self) -> i64 {
        match self.kind() {
            MoveKind::R1Create => 1,
            MoveKind::R1Delete => -1,
            MoveKind::R2Create => 2,
            MoveKind::R2Delete => -2,
            MoveKind::R3 => 0,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).expect("move serializes"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveDelta {
    pub d_writhe: i64,
    pub d_cowrithe: i64,
    pub d_crossings: i64,
}

fn illegal(msg: impl Into<String>) -> Error {
    Error::IllegalMove(msg.into())
}

fn check_dart(d: &Diagram, x: Dart) -> Result<()> {
    if x.crossing < d.crossing_count() && x.slot < 4 {
        Ok(())
    } else {
        Err(illegal(format!("dart {x} does not exist")))
    }
}

fn walk_of(d: &Diagram, face: Dart, degree: usize, what: &str) -> Result<Vec<Dart>> {
    check_dart(d, face)?;
    let walk = d.face_walk(face);
    if walk.len() != degree {
        return Err(illegal(format!(
            "face at {face} has degree {}, {what} needs {degree}",
            walk.len()
        )));
    }
    Ok(walk)
}

/// The edge leaving `x` is over at both of its ends, or under at both.
fn same_level(d: &Diagram, x: Dart) -> bool {
    x.is_over() == d.partner(x).is_over()
}

/// Checks that `face` is a bigon admitting RII deletion and returns its walk.
fn rii_bigon(d: &Diagram, face: Dart) -> Result<Vec<Dart>> {
    let walk = walk_of(d, face, 2, "RII deletion")?;
    if walk[0].crossing == walk[1].crossing {
        return Err(illegal("bigon touches a single crossing"));
    }
    if !same_level(d, walk[0]) {
        return Err(illegal("bigon edges alternate over and under"));
    }
    Ok(walk)
}

/// Whether the two edges of an RII-deletable bigon point the same way between its
/// crossings (their orientations disagree around the face boundary).
pub fn bigon_incoherent(d: &Diagram, face: Dart) -> Result<bool> {
    let walk = rii_bigon(d, face)?;
    // coherent when both edges run along the walk or both run against it
    Ok(d.is_incoming(walk[0]) != d.is_incoming(walk[1]))
}

/// Checks that `face` is an RIII-admissible trigon; returns the walk and the index of
/// its over-both edge.
fn riii_trigon(d: &Diagram, face: Dart) -> Result<(Vec<Dart>, usize)> {
    let walk = walk_of(d, face, 3, "RIII")?;
    let (a, b, c) = (walk[0].crossing, walk[1].crossing, walk[2].crossing);
    if a == b || b == c || a == c {
        return Err(illegal("trigon does not have three distinct crossings"));
    }
    let over = (0..3)
        .find(|&k| walk[k].is_over() && d.partner(walk[k]).is_over())
        .ok_or_else(|| {
            illegal(format!(
                "trigon at {face} has the cyclic over/under pattern"
            ))
        })?;
    Ok((walk, over))
}

pub fn enumerate_moves(d: &Diagram, kinds: &[MoveKind]) -> Vec<Move> {
    let want = |k| kinds.contains(&k);
    let mut moves = Vec::new();
    let signs = [Sign::Negative, Sign::Positive];
    let sides = [Side::Left, Side::Right];
    if d.is_unknot_round() {
        if want(MoveKind::R1Create) {
            for side in sides {
                for sign in signs {
                    moves.push(Move::R1Create {
                        edge: None,
                        side,
                        sign,
                    });
                }
            }
        }
        if want(MoveKind::R2Create) {
            for side in sides {
                for first_over in [false, true] {
                    moves.push(Move::R2Create {
                        face: FaceRef::Unknot(side),
                        arcs: Arcs::SameEdge {
                            position: 0,
                            finger_first: true,
                        },
                        first_over,
                    });
                }
            }
        }
        return moves;
    }
    if want(MoveKind::R1Create) {
        for e in d.edges() {
            for side in sides {
                for sign in signs {
                    moves.push(Move::R1Create {
                        edge: Some(e),
                        side,
                        sign,
                    });
                }
            }
        }
    }
    let faces = d.faces();
    for f in &faces {
        let key = f.boundary[0];
        match f.degree() {
            1 if want(MoveKind::R1Delete) => moves.push(Move::R1Delete { face: key }),
            2 if want(MoveKind::R2Delete) && rii_bigon(d, key).is_ok() => {
                moves.push(Move::R2Delete { face: key })
            }
            3 if want(MoveKind::R3) => {
                if let Ok((walk, over)) = riii_trigon(d, key) {
                    moves.push(Move::R3 {
                        face: key,
                        slide: walk[(over + 2) % 3].crossing,
                    });
                }
            }
            _ => {}
        }
        if want(MoveKind::R2Create) {
            let deg = f.degree();
            for first_over in [false, true] {
                for position in 0..deg {
                    for finger_first in [false, true] {
                        moves.push(Move::R2Create {
                            face: FaceRef::Walk(key),
                            arcs: Arcs::SameEdge {
                                position,
                                finger_first,
                            },
                            first_over,
                        });
                    }
                }
                for first in 0..deg {
                    for second in first + 1..deg {
                        moves.push(Move::R2Create {
                            face: FaceRef::Walk(key),
                            arcs: Arcs::Pair { first, second },
                            first_over,
                        });
                    }
                }
            }
        }
    }
    moves.sort();
    moves
}

/// Applies `m`, checking legality; the result is fully validated.
pub fn apply_move(d: &Diagram, m: &Move) -> Result<Diagram> {
    match *m {
        Move::R1Create { edge, side, sign } => r1_create(d, edge, side, sign),
        Move::R1Delete { face } => {
            walk_of(d, face, 1, "RI deletion")?;
            splice(d, &[face.crossing])
        }
        Move::R2Create {
            face,
            arcs,
            first_over,
        } => r2_create(d, face, arcs, first_over),
        Move::R2Delete { face } => {
            let walk = rii_bigon(d, face)?;
            splice(d, &[walk[0].crossing, walk[1].crossing])
        }
        Move::R3 { face, slide } => {
            let (walk, over) = riii_trigon(d, face)?;
            let expected = walk[(over + 2) % 3].crossing;
            if slide != expected {
                return Err(illegal(format!(
                    "trigon at {face} slides at crossing {expected}, not {slide}"
                )));
            }
            r3(d, &walk)
        }
    }
}

/// Invariant changes caused by `m`, obtained by applying it and recomputing.
pub fn move_delta(d: &Diagram, m: &Move) -> Result<MoveDelta> {
    let after = apply_move(d, m)?;
    Ok(delta_between(d, &after))
}

pub fn delta_between(before: &Diagram, after: &Diagram) -> MoveDelta {
    MoveDelta {
        d_writhe: writhe(after) - writhe(before),
        d_cowrithe: cowrithe(after) - cowrithe(before),
        d_crossings: after.crossing_count() as i64 - before.crossing_count() as i64,
    }
}

struct Builder {
    signs: Vec<Sign>,
    link: Vec<usize>,
}

impl Builder {
    fn from(d: &Diagram) -> Self {
        Builder {
            signs: d.signs().to_vec(),
            link: d.raw_links().to_vec(),
        }
    }

    fn add(&mut self, sign: Sign) -> CrossingId {
        self.signs.push(sign);
        self.link.extend([usize::MAX; 4]);
        self.signs.len() - 1
    }

    fn join(&mut self, a: Dart, b: Dart) {
        self.link[a.index()] = b.index();
        self.link[b.index()] = a.index();
    }

    fn finish(self) -> Result<Diagram> {
        Diagram::from_raw(self.signs, self.link)
            .map_err(|e| illegal(format!("move would produce an invalid diagram: {e}")))
    }
}

/// Removes crossings, letting every strand run straight through them.
fn splice(d: &Diagram, removed: &[CrossingId]) -> Result<Diagram> {
    let v = d.crossing_count();
    let mut gone = vec![false; v];
    for &c in removed {
        gone[c] = true;
    }
    let mut new_id = vec![usize::MAX; v];
    let mut kept = 0;
    for c in 0..v {
        if !gone[c] {
            new_id[c] = kept;
            kept += 1;
        }
    }
    if kept == 0 {
        return Ok(Diagram::unknot());
    }
    let mut signs = Vec::with_capacity(kept);
    let mut link = vec![usize::MAX; 4 * kept];
    for c in (0..v).filter(|&c| !gone[c]) {
        signs.push(d.signs()[c]);
        for s in 0..4 {
            let mut x = d.partner(Dart::new(c, s));
            while gone[x.crossing] {
                x = d.partner(x.opposite());
            }
            link[Dart::new(new_id[c], s).index()] = Dart::new(new_id[x.crossing], x.slot).index();
        }
    }
    Diagram::from_raw(signs, link)
        .map_err(|e| illegal(format!("deletion would produce an invalid diagram: {e}")))
}

fn r1_create(d: &Diagram, edge: Option<Dart>, side: Side, sign: Sign) -> Result<Diagram> {
    // Loop slots (tail, head) of the kink, then the slots joined to the edge's two ends.
    let (loop_out, loop_in, from_u, to_v) = match (sign, side) {
        (Sign::Positive, Side::Right) => (1, 0, 3, 2),
        (Sign::Positive, Side::Left) => (2, 3, 0, 1),
        (Sign::Negative, Side::Right) => (2, 1, 0, 3),
        (Sign::Negative, Side::Left) => (3, 0, 1, 2),
    };
    let mut b = Builder::from(d);
    match edge {
        None => {
            if !d.is_unknot_round() {
                return Err(illegal(
                    "RI creation needs an edge on a diagram with crossings",
                ));
            }
            let c = b.add(sign);
            b.join(Dart::new(c, loop_out), Dart::new(c, loop_in));
            b.join(Dart::new(c, from_u), Dart::new(c, to_v));
        }
        Some(u) => {
            check_dart(d, u)?;
            if d.is_incoming(u) {
                return Err(illegal(format!(
                    "edges are named by their outgoing dart; {u} is incoming"
                )));
            }
            let v = d.partner(u);
            let c = b.add(sign);
            b.join(Dart::new(c, loop_out), Dart::new(c, loop_in));
            b.join(u, Dart::new(c, from_u));
            b.join(Dart::new(c, to_v), v);
        }
    }
    b.finish()
}

// Directions around a new RII crossing, counterclockwise.
const E: u8 = 0;
const N: u8 = 1;
const W: u8 = 2;
const S: u8 = 3;

#[derive(Clone, Copy)]
enum End {
    Old(Dart),
    /// (0 = first new crossing, 1 = second, direction)
    New(usize, u8),
}

fn r2_create(d: &Diagram, face: FaceRef, arcs: Arcs, first_over: bool) -> Result<Diagram> {
    use End::{New, Old};
    const L: usize = 0;
    const R: usize = 1;
    // Arc A is split by both new crossings (N/S ports), arc B crosses it (E/W ports).
    let (a_along, b_along, mut ends): (bool, bool, Vec<(End, End)>) = match face {
        FaceRef::Unknot(side) => {
            if !d.is_unknot_round() {
                return Err(illegal("unknot face reference on a diagram with crossings"));
            }
            if !matches!(arcs, Arcs::SameEdge { position: 0, .. }) {
                return Err(illegal("the round unknot has a single arc"));
            }
            let along = side == Side::Right;
            (
                along,
                along,
                vec![(New(R, N), New(R, E)), (New(L, W), New(L, N))],
            )
        }
        FaceRef::Walk(start) => {
            check_dart(d, start)?;
            let walk = d.face_walk(start);
            match arcs {
                Arcs::Pair { first, second } => {
                    if !(first < second && second < walk.len()) {
                        return Err(illegal(format!(
                            "arc positions {first}, {second} invalid for degree {}",
                            walk.len()
                        )));
                    }
                    let (da, db) = (walk[first], walk[second]);
                    (
                        !d.is_incoming(da),
                        !d.is_incoming(db),
                        vec![
                            (New(L, N), Old(da)),
                            (New(R, N), Old(d.partner(da))),
                            (New(R, E), Old(db)),
                            (New(L, W), Old(d.partner(db))),
                        ],
                    )
                }
                Arcs::SameEdge {
                    position,
                    finger_first,
                } => {
                    if position >= walk.len() {
                        return Err(illegal(format!(
                            "arc position {position} invalid for degree {}",
                            walk.len()
                        )));
                    }
                    let x = walk[position];
                    let along = !d.is_incoming(x);
                    let ends = if finger_first {
                        vec![
                            (New(L, N), Old(x)),
                            (New(R, N), New(R, E)),
                            (New(L, W), Old(d.partner(x))),
                        ]
                    } else {
                        vec![
                            (New(R, E), Old(x)),
                            (New(L, W), New(L, N)),
                            (New(R, N), Old(d.partner(x))),
                        ]
                    };
                    (along, along, ends)
                }
            }
        }
    };
    ends.push((New(L, S), New(R, S)));
    ends.push((New(L, E), New(R, W)));

    // Incoming directions of each arc at each new crossing.
    let a_in = [if a_along { N } else { S }, if a_along { S } else { N }];
    let b_in = [if b_along { E } else { W }; 2];
    let mut base = [0u8; 2];
    let mut signs = [Sign::Positive; 2];
    for x in [L, R] {
        let (over_in, under_in) = if first_over {
            (a_in[x], b_in[x])
        } else {
            (b_in[x], a_in[x])
        };
        base[x] = under_in;
        signs[x] = if (over_in + 4 - under_in) % 4 == 3 {
            Sign::Positive
        } else {
            Sign::Negative
        };
    }
    let mut b = Builder::from(d);
    let ids = [b.add(signs[0]), b.add(signs[1])];
    let resolve = |e: End| match e {
        Old(x) => x,
        New(x, dir) => Dart::new(ids[x], (dir + 4 - base[x]) % 4),
    };
    for (p, q) in ends {
        b.join(resolve(p), resolve(q));
    }
    b.finish()
}

/// Slides the trigon: every strand meets its two trigon crossings in the opposite order.
fn r3(d: &Diagram, walk: &[Dart]) -> Result<Diagram> {
    // (tail crossing's outgoing dart, head crossing's incoming dart) per trigon edge
    let edges: Vec<(Dart, Dart)> = walk
        .iter()
        .map(|&x| {
            let y = d.partner(x);
            if d.is_incoming(x) {
                (y, x)
            } else {
                (x, y)
            }
        })
        .collect();
    // Outer darts and where their roles move to.
    let mut remap: Vec<(Dart, Dart)> = Vec::with_capacity(6);
    for &(f_out, g_in) in &edges {
        remap.push((f_out.opposite(), g_in));
        remap.push((g_in.opposite(), f_out));
    }
    let moved = |x: Dart| remap.iter().find(|(o, _)| *o == x).map_or(x, |&(_, n)| n);
    let mut b = Builder::from(d);
    for &(o, n) in &remap {
        b.join(n, moved(d.partner(o)));
    }
    for &(f_out, g_in) in &edges {
        b.join(g_in.opposite(), f_out.opposite());
    }
    b.finish()
}
