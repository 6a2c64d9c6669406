//! Backtracking search for embedded cycles in a small plane.
//!
//! Points and lines are replaced by integer ids up front. The search extends
//! a path one vertex at a time, never reusing a point or a line, and orders
//! candidates by how many onward moves they leave (fewest first). Ties are
//! broken by canonical order on the first restart and at random afterwards.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{GeometryContext, Point, Subspace};

/// Node expansions allowed per restart.
pub const NODE_BUDGET: u64 = 1_000_000;
/// Restarts before giving up.
pub const RESTARTS: u64 = 32;

/// Integer incidence tables for PG(2,q).
#[derive(Debug)]
pub(crate) struct Incidence {
    pub points: Vec<Point>,
    pub lines: Vec<Subspace>,
    /// `line_of[a][b]` is the id of the line through a and b (unused on the diagonal).
    pub line_of: Vec<Vec<usize>>,
}

impl Incidence {
    pub fn new(ctx: &GeometryContext) -> Result<Self> {
        let points = ctx.enumerate_points()?.to_vec();
        let m = points.len();
        let mut lines: Vec<Subspace> = Vec::new();
        let mut ids = std::collections::HashMap::new();
        let mut line_of = vec![vec![usize::MAX; m]; m];
        for a in 0..m {
            for b in a + 1..m {
                let line = ctx.line_through(&points[a], &points[b])?;
                let id = *ids.entry(line.clone()).or_insert_with(|| {
                    lines.push(line);
                    lines.len() - 1
                });
                line_of[a][b] = id;
                line_of[b][a] = id;
            }
        }
        Ok(Incidence {
            points,
            lines,
            line_of,
        })
    }

    pub fn point_id(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn line_id(&self, l: &Subspace) -> Option<usize> {
        self.lines.iter().position(|x| x == l)
    }
}

/// Constraints for one search.
pub(crate) struct CycleSearch<'a> {
    pub inc: &'a Incidence,
    pub k: usize,
    /// Points that may be vertices.
    pub allowed_points: Vec<bool>,
    /// Lines that may be edges.
    pub allowed_lines: Vec<bool>,
    /// A class of lines of which at most `class_limit` may be edges.
    pub limited_class: Vec<bool>,
    pub class_limit: usize,
    /// Fixed first vertex, if any.
    pub start: Option<usize>,
    /// Final acceptance test on a complete cycle.
    pub accept: &'a dyn Fn(&[usize]) -> bool,
}

struct State {
    path: Vec<usize>,
    visited: Vec<bool>,
    used_lines: Vec<bool>,
    class_used: usize,
    nodes: u64,
}

impl CycleSearch<'_> {
    /// Runs up to [`RESTARTS`] seeded restarts and returns the vertex ids.
    pub fn run(&self, seed: u64) -> Result<Vec<usize>> {
        let mut trace = Vec::new();
        for restart in 0..RESTARTS {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(restart);
            let candidates: Vec<usize> = (0..self.inc.points.len())
                .filter(|&p| self.allowed_points[p])
                .collect();
            let start = match self.start {
                Some(s) => s,
                None if restart == 0 => match candidates.first() {
                    Some(&s) => s,
                    None => break,
                },
                None => match candidates.choose(&mut rng) {
                    Some(&s) => s,
                    None => break,
                },
            };
            let mut state = State {
                path: vec![start],
                visited: vec![false; self.inc.points.len()],
                used_lines: vec![false; self.inc.lines.len()],
                class_used: 0,
                nodes: 0,
            };
            state.visited[start] = true;
            let randomize = restart > 0;
            if self.extend(&mut state, &mut rng, randomize) {
                return Ok(state.path);
            }
            trace.push(format!(
                "restart {restart}: start {start}, {} nodes",
                state.nodes
            ));
        }
        Err(Error::SearchExhausted(format!(
            "no {}-cycle within {RESTARTS} restarts of {NODE_BUDGET} nodes [{}]",
            self.k,
            trace.join("; ")
        )))
    }

    fn line_ok(&self, state: &State, line: usize, extra_class: usize) -> bool {
        self.allowed_lines[line]
            && !state.used_lines[line]
            && (!self.limited_class[line] || state.class_used + extra_class < self.class_limit)
    }

    fn take_line(&self, state: &mut State, line: usize, used: bool) {
        state.used_lines[line] = used;
        if self.limited_class[line] {
            if used {
                state.class_used += 1;
            } else {
                state.class_used -= 1;
            }
        }
    }

    /// Onward moves from `w` once the edge on `via` is taken.
    fn degree(&self, state: &State, w: usize, via: usize) -> usize {
        (0..self.inc.points.len())
            .filter(|&x| {
                x != w && self.allowed_points[x] && !state.visited[x] && {
                    let l = self.inc.line_of[w][x];
                    l != via && self.allowed_lines[l] && !state.used_lines[l]
                }
            })
            .count()
    }

    /// The first vertex still needs a free line to someone for the closing edge.
    fn start_reachable(&self, state: &State) -> bool {
        let start = state.path[0];
        let last = *state.path.last().expect("nonempty");
        if state.path.len() < 2 {
            return true;
        }
        (0..self.inc.points.len()).any(|x| {
            (x == last || (self.allowed_points[x] && !state.visited[x])) && x != start && {
                let l = self.inc.line_of[start][x];
                self.allowed_lines[l] && !state.used_lines[l]
            }
        })
    }

    fn extend(&self, state: &mut State, rng: &mut ChaCha8Rng, randomize: bool) -> bool {
        state.nodes += 1;
        if state.nodes > NODE_BUDGET {
            return false;
        }
        let start = state.path[0];
        let last = *state.path.last().expect("nonempty");
        if state.path.len() == self.k {
            let closing = self.inc.line_of[last][start];
            return self.line_ok(state, closing, 0) && (self.accept)(&state.path);
        }
        if !self.start_reachable(state) {
            return false;
        }
        let final_step = state.path.len() + 1 == self.k;
        let mut moves: Vec<(usize, u64, usize, usize)> = Vec::new();
        for w in 0..self.inc.points.len() {
            if !self.allowed_points[w] || state.visited[w] {
                continue;
            }
            let line = self.inc.line_of[last][w];
            if !self.line_ok(state, line, 0) {
                continue;
            }
            if final_step {
                let closing = self.inc.line_of[w][start];
                let extra = usize::from(self.limited_class[line]);
                if closing == line || !self.line_ok(state, closing, extra) {
                    continue;
                }
            }
            let tie = if randomize {
                rng.gen::<u64>()
            } else {
                w as u64
            };
            moves.push((self.degree(state, w, line), tie, w, line));
        }
        moves.sort_unstable();
        for (_, _, w, line) in moves {
            state.visited[w] = true;
            self.take_line(state, line, true);
            state.path.push(w);
            if self.extend(state, rng, randomize) {
                return true;
            }
            state.path.pop();
            self.take_line(state, line, false);
            state.visited[w] = false;
            if state.nodes > NODE_BUDGET {
                return false;
            }
        }
        false
    }
}
