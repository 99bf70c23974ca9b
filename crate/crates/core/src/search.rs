//! Breadth-first search over the Reidemeister move graph, for certifying minimal move
//! counts on small instances.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::gauss::canonical_form;
use crate::invariants::{cowrithe, move_lower_bounds, writhe};
use crate::moves::{apply_move, enumerate_moves, Move, MoveKind};
use crate::torus::{MoveTrace, TraceStep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub max_crossings: usize,
    pub max_depth: usize,
    pub max_states: usize,
    pub allowed_kinds: Vec<MoveKind>,
    /// Drop states whose writhe and cowrithe gaps to the target cannot close within
    /// the remaining depth. Each move closes at most one unit of `|dw| + |dx|`.
    pub prune: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_crossings: 6,
            max_depth: 4,
            max_states: 2_000_000,
            allowed_kinds: MoveKind::ALL.to_vec(),
            prune: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchOutcome {
    Found(MoveTrace),
    NotFoundWithinLimits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    /// Distinct states (up to isomorphism) reached.
    pub explored_states: usize,
    pub frontier_peak: usize,
}

impl SearchResult {
    pub fn length(&self) -> Option<usize> {
        match &self.outcome {
            SearchOutcome::Found(t) => Some(t.len()),
            SearchOutcome::NotFoundWithinLimits => None,
        }
    }
}

struct Node {
    diagram: Diagram,
    parent: usize,
    mv: Option<Move>,
    code: String,
}

/// Shortest move sequence from `d1` to a diagram isomorphic to `d2`, among sequences
/// whose states stay within `max_crossings` and whose length is at most `max_depth`.
///
/// Layers are expanded in parallel and merged in a fixed order, so results do not
/// depend on scheduling.
pub fn bfs_min_moves(d1: &Diagram, d2: &Diagram, limits: &SearchLimits) -> Result<SearchResult> {
    let too_big = d1.crossing_count().max(d2.crossing_count());
    if too_big > limits.max_crossings {
        return Err(Error::BadParams(format!(
            "max_crossings {} is below the endpoint crossing count {too_big}",
            limits.max_crossings
        )));
    }
    let goal = canonical_form(d2).code;
    let (w2, x2) = (writhe(d2), cowrithe(d2));
    let gap = |d: &Diagram| writhe(d).abs_diff(w2) + cowrithe(d).abs_diff(x2);
    let bounds = move_lower_bounds(d1, d2);

    let root_code = canonical_form(d1).code;
    let mut nodes = vec![Node {
        diagram: d1.clone(),
        parent: usize::MAX,
        mv: None,
        code: root_code.clone(),
    }];
    let mut seen: HashMap<String, usize> = HashMap::from([(root_code.clone(), 0)]);
    let mut frontier = vec![0usize];
    let mut peak = 1;
    let found = |nodes: &[Node], at: usize| {
        let mut steps = Vec::new();
        let mut i = at;
        while let Some(mv) = nodes[i].mv {
            steps.push(TraceStep {
                mv,
                post: nodes[i].code.clone(),
            });
            i = nodes[i].parent;
        }
        steps.reverse();
        assert!(
            steps.len() as u64 >= bounds.total(),
            "search found {} moves, below the invariant lower bound {}",
            steps.len(),
            bounds.total()
        );
        SearchOutcome::Found(MoveTrace {
            n: None,
            start: d1.to_pd(),
            steps,
            target: d2.to_pd(),
        })
    };
    if root_code == goal {
        return Ok(SearchResult {
            outcome: found(&nodes, 0),
            explored_states: 1,
            frontier_peak: 1,
        });
    }

    for depth in 0..limits.max_depth {
        let remaining = (limits.max_depth - depth - 1) as u64;
        let expanded: Vec<Vec<(Move, Diagram, String)>> = frontier
            .par_iter()
            .map(|&i| {
                let d = &nodes[i].diagram;
                let room = limits.max_crossings as i64 - d.crossing_count() as i64;
                enumerate_moves(d, &limits.allowed_kinds)
                    .into_iter()
                    .filter(|m| m.crossing_change() <= room)
                    .filter_map(|m| {
                        let next = apply_move(d, &m).expect("enumerated moves apply");
                        if limits.prune && gap(&next) > remaining {
                            return None;
                        }
                        let code = canonical_form(&next).code;
                        Some((m, next, code))
                    })
                    .collect()
            })
            .collect();
        let mut next_frontier = Vec::new();
        for (&parent, children) in frontier.iter().zip(expanded) {
            for (mv, diagram, code) in children {
                if seen.contains_key(&code) {
                    continue;
                }
                let id = nodes.len();
                seen.insert(code.clone(), id);
                let hit = code == goal;
                nodes.push(Node {
                    diagram,
                    parent,
                    mv: Some(mv),
                    code,
                });
                if hit {
                    return Ok(SearchResult {
                        outcome: found(&nodes, id),
                        explored_states: nodes.len(),
                        frontier_peak: peak,
                    });
                }
                if nodes.len() > limits.max_states {
                    return Err(Error::LimitsExceeded {
                        explored: nodes.len(),
                    });
                }
                next_frontier.push(id);
            }
        }
        peak = peak.max(next_frontier.len());
        frontier = next_frontier;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(SearchResult {
        outcome: SearchOutcome::NotFoundWithinLimits,
        explored_states: nodes.len(),
        frontier_peak: peak,
    })
}
