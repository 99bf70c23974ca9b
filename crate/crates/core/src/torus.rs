//! Deforming `D(n+1, n)` into `D(n, n+1)` with RIII moves and one RI move, plus
//! independent replay of move traces.
//!
//! The generator tracks a braid word alongside the diagram. Every letter carries the
//! id of its crossing, and after each step the closure of the word (relabeled by
//! those ids) must equal the engine's diagram exactly.
//!
//! 1. On `n + 1` strands, starting from `(a_1 ... a_n)^n`, the overpath through the
//!    last strand is pulled to the end of the word: `n(n-1)/2` RIII moves turn the
//!    word into `(a_1 ... a_{n-1})^n a_n a_{n-1} ... a_1`.
//! 2. The single `a_n` crossing now bounds a monogon and is removed by RI.
//! 3. On `n` strands the remaining word `(a_1 ... a_{n-1})^n a_{n-1} ... a_1` is
//!    pushed down to `D(n, n+1)`: at each step the first braid-relation triangle (in
//!    cyclic word order) whose slide lowers the cowrithe is applied.

use serde::{Deserialize, Serialize};

use crate::braid::{closure, torus_diagram, BraidWord, Letter};
use crate::diagram::{CrossingId, Diagram, DiagramFile};
use crate::error::{Error, Result};
use crate::gauss::{canonical_form, is_isomorphic};
use crate::invariants::{cowrithe, cowrithe_closed_form, writhe, TorusSide};
use crate::moves::{apply_move, bigon_incoherent, delta_between, enumerate_moves, Move, MoveKind};

/// RIII and RI counts of the deformation: `((n-1)n(2n-1)/6, 1)`.
pub fn predicted_move_count(n: usize) -> Result<(usize, usize)> {
    if n < 2 {
        return Err(Error::BadParams(format!("n must be at least 2, got {n}")));
    }
    let closed = (n - 1) * n * (2 * n - 1) / 6;
    let phases = (n - 1) * n / 2
        + (1..n.saturating_sub(1))
            .map(|k| 2 * k * (n - k - 1))
            .sum::<usize>();
    assert_eq!(
        closed, phases,
        "phase sum disagrees with the closed form at n = {n}"
    );
    Ok((closed, 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    #[serde(rename = "move")]
    pub mv: Move,
    /// Canonical code of the diagram after the move.
    pub post: String,
}

/// A replayable move sequence. Moves refer to crossing ids as they stand after the
/// previous step, starting from the crossing order of `start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub n: Option<usize>,
    pub start: DiagramFile,
    pub steps: Vec<TraceStep>,
    pub target: DiagramFile,
}

impl MoveTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<MoveTrace> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformReport {
    pub n: Option<usize>,
    pub steps: usize,
    pub ri_count: usize,
    pub rii_count: usize,
    pub riii_count: usize,
    pub cowrithe: Vec<i64>,
    pub writhe: Vec<i64>,
    pub cowrithe_deltas: Vec<i64>,
    pub writhe_deltas: Vec<i64>,
    /// Every diagram along the way has only positive crossings.
    pub all_positive: bool,
    /// Every step changed writhe and cowrithe as the move rules require.
    pub conforms: bool,
    pub final_matches_target: bool,
}

/// Whether the invariant changes of `m` match the move rules: RI keeps the cowrithe and
/// shifts the writhe by the kink's sign; RII deletion raises the cowrithe by one exactly
/// on incoherent bigons (creation is the negation); RIII moves it by one either way.
pub fn move_conforms(before: &Diagram, m: &Move, after: &Diagram) -> Result<bool> {
    let delta = delta_between(before, after);
    Ok(match *m {
        Move::R1Create { sign, .. } => delta.d_cowrithe == 0 && delta.d_writhe == sign.value(),
        Move::R1Delete { face } => {
            delta.d_cowrithe == 0 && delta.d_writhe == -before.sign(face.crossing)?.value()
        }
        Move::R2Delete { face } => {
            delta.d_writhe == 0 && delta.d_cowrithe == bigon_incoherent(before, face)? as i64
        }
        Move::R2Create { .. } => {
            let v = before.crossing_count();
            let undo = enumerate_moves(after, &[MoveKind::R2Delete])
                .into_iter()
                .find(|u| match u {
                    Move::R2Delete { face } => {
                        let mut cs: Vec<_> =
                            after.face_walk(*face).iter().map(|x| x.crossing).collect();
                        cs.sort();
                        cs == [v, v + 1] && apply_move(after, u).is_ok_and(|b| b == *before)
                    }
                    _ => false,
                });
            match undo {
                Some(Move::R2Delete { face }) => {
                    delta.d_writhe == 0
                        && delta.d_cowrithe == -(bigon_incoherent(after, face)? as i64)
                }
                _ => false,
            }
        }
        Move::R3 { .. } => delta.d_writhe == 0 && delta.d_cowrithe.abs() == 1,
    })
}

/// Replays a trace, checking legality, recorded states and the final target.
pub fn verify_trace(trace: &MoveTrace) -> Result<DeformReport> {
    let mut state = Diagram::from_pd(&trace.start)?;
    let target = Diagram::from_pd(&trace.target)?;
    let mut report = DeformReport {
        n: trace.n,
        steps: trace.steps.len(),
        ri_count: 0,
        rii_count: 0,
        riii_count: 0,
        cowrithe: vec![cowrithe(&state)],
        writhe: vec![writhe(&state)],
        cowrithe_deltas: Vec::new(),
        writhe_deltas: Vec::new(),
        all_positive: state.is_positive(),
        conforms: true,
        final_matches_target: false,
    };
    for (index, step) in trace.steps.iter().enumerate() {
        let next = apply_move(&state, &step.mv).map_err(|e| Error::IllegalStep {
            index,
            reason: e.to_string(),
        })?;
        if canonical_form(&next).code != step.post {
            return Err(Error::StateMismatch { index });
        }
        match step.mv.kind() {
            MoveKind::R1Create | MoveKind::R1Delete => report.ri_count += 1,
            MoveKind::R2Create | MoveKind::R2Delete => report.rii_count += 1,
            MoveKind::R3 => report.riii_count += 1,
        }
        report.conforms &= move_conforms(&state, &step.mv, &next)?;
        let (x, w) = (cowrithe(&next), writhe(&next));
        report
            .cowrithe_deltas
            .push(x - report.cowrithe.last().expect("initial value"));
        report
            .writhe_deltas
            .push(w - report.writhe.last().expect("initial value"));
        report.cowrithe.push(x);
        report.writhe.push(w);
        report.all_positive &= next.is_positive();
        state = next;
    }
    if !is_isomorphic(&state, &target) {
        return Err(Error::TargetMismatch);
    }
    report.final_matches_target = true;
    Ok(report)
}

type Word = Vec<(usize, CrossingId)>;

/// Closure of a positive word, crossing `j` renamed to the id carried by letter `j`.
fn word_diagram(strands: usize, word: &Word) -> Result<Diagram> {
    let letters = word.iter().map(|&(g, _)| Letter::b(g)).collect();
    let d = closure(&BraidWord::new(strands, letters)?)?;
    let ids: Vec<CrossingId> = word.iter().map(|&(_, id)| id).collect();
    d.relabel(&ids)
}

fn schedule_error(msg: String) -> Error {
    Error::InternalScheduleError(msg)
}

struct Deformer {
    state: Diagram,
    steps: Vec<TraceStep>,
}

impl Deformer {
    fn push(&mut self, mv: Move, next: Diagram) {
        self.steps.push(TraceStep {
            mv,
            post: canonical_form(&next).code,
        });
        self.state = next;
    }

    /// Applies the RIII move on a trigon with crossings `ids` that turns the current
    /// diagram into the closure of `word`.
    fn slide(&mut self, ids: [CrossingId; 3], strands: usize, word: &Word) -> Result<()> {
        let expected = word_diagram(strands, word)?;
        let mut wanted = ids;
        wanted.sort();
        for m in enumerate_moves(&self.state, &[MoveKind::R3]) {
            let Move::R3 { face, .. } = m else { continue };
            let mut cs: Vec<_> = self
                .state
                .face_walk(face)
                .iter()
                .map(|x| x.crossing)
                .collect();
            cs.sort();
            if cs != wanted {
                continue;
            }
            let next = apply_move(&self.state, &m)?;
            if next == expected {
                let dx = cowrithe(&next) - cowrithe(&self.state);
                if dx != -1 {
                    return Err(schedule_error(format!(
                        "slide on {ids:?} changed the cowrithe by {dx}"
                    )));
                }
                self.push(m, next);
                return Ok(());
            }
        }
        Err(schedule_error(format!(
            "no admissible trigon on crossings {ids:?} realizes the scheduled slide"
        )))
    }
}

/// Braid-relation triangles `x .. y .. z` in the cyclic word, with `x`, `z` the same
/// generator and `y` the only adjacent-generator letter between them. Returns the
/// rewritten word and the three crossing ids.
fn cyclic_triangles(word: &Word) -> Vec<(Word, [CrossingId; 3])> {
    let len = word.len();
    let mut out = Vec::new();
    for j in 0..len {
        let seg: Word = (0..len).map(|t| word[(j + t) % len]).collect();
        let i = seg[0].0;
        let Some(ll) = (1..len).find(|&t| seg[t].0 == i) else {
            continue;
        };
        let adjacent: Vec<usize> = (1..ll).filter(|&t| seg[t].0.abs_diff(i) == 1).collect();
        if adjacent.len() != 1 {
            continue;
        }
        let kk = adjacent[0];
        let (x, y, z) = (seg[0], seg[kk], seg[ll]);
        let m = y.0;
        let mut new: Word = seg[1..kk].to_vec();
        new.extend([(m, z.1), (i, y.1), (m, x.1)]);
        new.extend_from_slice(&seg[kk + 1..ll]);
        new.extend_from_slice(&seg[ll + 1..]);
        let mut rewritten = vec![(0, 0); len];
        for (t, &l) in new.iter().enumerate() {
            rewritten[(j + t) % len] = l;
        }
        out.push((rewritten, [x.1, y.1, z.1]));
    }
    out
}

/// The deformation of `D(n+1, n)` into `D(n, n+1)`.
pub fn deform_sequence(n: usize) -> Result<MoveTrace> {
    let (riii, ri) = predicted_move_count(n)?;
    let start = torus_diagram(n + 1, n)?;
    let target = torus_diagram(n, n + 1)?;
    let mut word: Word = (0..n * n).map(|j| (j % n + 1, j)).collect();
    if word_diagram(n + 1, &word)? != start {
        return Err(schedule_error(
            "grid labeling does not match the torus closure".into(),
        ));
    }
    let mut dfm = Deformer {
        state: start.clone(),
        steps: Vec::new(),
    };

    // Pull the overpath through the last strand to the end of the word.
    let mut prefix: Word = word[..n - 1].to_vec();
    let mut gamma: Word = vec![word[n - 1]];
    for r in 1..n {
        let row = &word[r * n..(r + 1) * n];
        let rest_rows: Word = word[(r + 1) * n..].to_vec();
        prefix.extend_from_slice(&row[..n - r - 1]);
        gamma.push(row[n - r - 1]);
        let sliding: Word = row[n - r..].to_vec();
        for (t, &s) in sliding.iter().enumerate() {
            let g = s.0;
            let xi = gamma
                .iter()
                .position(|l| l.0 == g)
                .expect("gamma holds every upper generator");
            let yi = gamma
                .iter()
                .position(|l| l.0 == g - 1)
                .expect("gamma holds every upper generator");
            let (x, y) = (gamma[xi], gamma[yi]);
            gamma[xi] = (g, y.1);
            gamma[yi] = (g - 1, x.1);
            prefix.push((g - 1, s.1));
            let current: Word = prefix
                .iter()
                .chain(&gamma)
                .chain(&sliding[t + 1..])
                .chain(&rest_rows)
                .copied()
                .collect();
            dfm.slide([x.1, y.1, s.1], n + 1, &current)?;
        }
    }
    word = prefix.iter().chain(&gamma).copied().collect();

    // The last strand now only carries one crossing; its kink goes away.
    let (pos, &(_, kink)) = word
        .iter()
        .enumerate()
        .find(|(_, l)| l.0 == n)
        .ok_or_else(|| schedule_error("no crossing left on the last strand".into()))?;
    let face = dfm
        .state
        .faces()
        .into_iter()
        .find(|f| f.degree() == 1 && f.boundary[0].crossing == kink)
        .ok_or_else(|| schedule_error(format!("crossing {kink} does not bound a monogon")))?;
    let mv = Move::R1Delete {
        face: face.boundary[0],
    };
    let next = apply_move(&dfm.state, &mv)?;
    word.remove(pos);
    for l in &mut word {
        if l.1 > kink {
            l.1 -= 1;
        }
    }
    if next != word_diagram(n, &word)? {
        return Err(schedule_error(
            "kink removal does not match the braid word".into(),
        ));
    }
    dfm.push(mv, next);

    // Lower the cowrithe one triangle at a time.
    let goal = cowrithe_closed_form(n as i64, TorusSide::Under)?;
    let mut x = cowrithe(&dfm.state);
    while x > goal {
        let mut chosen = None;
        for (rewritten, ids) in cyclic_triangles(&word) {
            if cowrithe(&word_diagram(n, &rewritten)?) == x - 1 {
                chosen = Some((rewritten, ids));
                break;
            }
        }
        let (rewritten, ids) = chosen
            .ok_or_else(|| schedule_error(format!("no cowrithe-lowering triangle at x = {x}")))?;
        dfm.slide(ids, n, &rewritten)?;
        word = rewritten;
        x -= 1;
    }

    let counts = dfm
        .steps
        .iter()
        .fold((0, 0), |(a, b), s| match s.mv.kind() {
            MoveKind::R3 => (a + 1, b),
            _ => (a, b + 1),
        });
    if counts != (riii, ri) {
        return Err(schedule_error(format!(
            "produced {counts:?} moves, expected {:?}",
            (riii, ri)
        )));
    }
    if !is_isomorphic(&dfm.state, &target) {
        return Err(schedule_error(
            "final diagram is not the target torus diagram".into(),
        ));
    }
    Ok(MoveTrace {
        n: Some(n),
        start: start.to_pd(),
        steps: dfm.steps,
        target: target.to_pd(),
    })
}
