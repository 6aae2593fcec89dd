//! The two propagation closures.
//!
//! Zero forcing colors vertices blue starting from a seed set: a red vertex
//! `w` turns blue when it is the only red out-neighbor of some vertex `u`.
//! Under [`ForcerRule::Any`] the forcer `u` may be any vertex — including a
//! red one, and including `w` itself when a loop is present. Under
//! [`ForcerRule::BlueOnly`] the forcer must already be blue, which is the
//! standard digraph convention.
//!
//! Power domination runs a domination step first (the seed set plus all its
//! out-neighbors become monitored) and then applies blue-only forcing: a
//! monitored vertex with exactly one unmonitored out-neighbor monitors it.
//!
//! Rounds are synchronous: every force applicable against the current blue
//! set fires before the round counter advances. The resulting closure is
//! independent of ordering; round numbering is what the convention pins.

use std::fmt;

use crate::digraph::{Digraph, VertexSet};

/// Which vertices may act as forcers in the zero forcing color-change rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForcerRule {
    /// Any vertex with exactly one red out-neighbor forces it, regardless of
    /// the forcer's own color. Self-forcing through a loop is possible.
    Any,
    /// Only blue vertices force; self-forcing is structurally impossible.
    BlueOnly,
}

impl ForcerRule {
    pub fn as_str(self) -> &'static str {
        match self {
            ForcerRule::Any => "any",
            ForcerRule::BlueOnly => "blue",
        }
    }
}

impl fmt::Display for ForcerRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The closure variant a query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    PowerDomination,
    ZeroForcing(ForcerRule),
}

/// Which graph parameter a solver or report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    ZeroForcing,
    PowerDomination,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::ZeroForcing => "Z",
            Quantity::PowerDomination => "gamma_p",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One forcing event: in round `round`, `forcer` forced `forced`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForceEvent {
    pub round: usize,
    pub forcer: usize,
    pub forced: usize,
}

/// Ordered log of the forces that produced a closure.
///
/// Rounds are non-decreasing, each vertex is forced at most once, and
/// replaying the events on top of `initial` reproduces the closure exactly.
/// For power domination, round 1 holds the domination step (each newly
/// monitored vertex attributed to its least in-neighbor in the seed set)
/// and forcing rounds start at 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForceTrace {
    pub initial: VertexSet,
    pub events: Vec<ForceEvent>,
}

impl ForceTrace {
    /// Applies the events to the initial set; equals the closure that
    /// produced this trace.
    pub fn replay(&self) -> VertexSet {
        let mut set = self.initial.clone();
        for e in &self.events {
            set.insert(e.forced);
        }
        set
    }

    /// Highest round number in the trace, 0 when nothing was forced.
    pub fn last_round(&self) -> usize {
        self.events.last().map_or(0, |e| e.round)
    }
}

/// The domination step: `s` together with every out-neighbor of `s`.
pub fn dominate(g: &Digraph, s: &VertexSet) -> VertexSet {
    let mut out = g.out_neighborhood_of_set(s);
    out.union_with(s);
    out
}

const NO_FORCER: usize = usize::MAX;

/// Runs synchronous forcing rounds until fixpoint. `blue` is extended in
/// place; events are appended with rounds numbered from `first_round`.
fn run_forcing(
    g: &Digraph,
    blue: &mut VertexSet,
    rule: ForcerRule,
    first_round: usize,
    mut events: Option<&mut Vec<ForceEvent>>,
) {
    let n = g.vertex_count();
    let mut forcer_of = vec![NO_FORCER; n];
    let mut newly: Vec<usize> = Vec::new();
    let mut round = first_round;
    loop {
        newly.clear();
        // Scanning candidate forcers in ascending order attributes each
        // forced vertex to its least forcer.
        let mut scan = |u: usize, blue: &VertexSet, newly: &mut Vec<usize>| {
            let mut sole_red = None;
            for &w in g.out_neighbors(u) {
                if !blue.contains(w) {
                    if sole_red.is_some() {
                        return;
                    }
                    sole_red = Some(w);
                }
            }
            if let Some(w) = sole_red {
                if forcer_of[w] == NO_FORCER {
                    forcer_of[w] = u;
                    newly.push(w);
                }
            }
        };
        match rule {
            ForcerRule::Any => {
                for u in 0..n {
                    scan(u, blue, &mut newly);
                }
            }
            ForcerRule::BlueOnly => {
                for u in blue.iter() {
                    scan(u, blue, &mut newly);
                }
            }
        }
        if newly.is_empty() {
            return;
        }
        newly.sort_unstable();
        for &w in &newly {
            blue.insert(w);
            if let Some(events) = events.as_deref_mut() {
                events.push(ForceEvent {
                    round,
                    forcer: forcer_of[w],
                    forced: w,
                });
            }
            forcer_of[w] = NO_FORCER;
        }
        round += 1;
    }
}

/// Least fixpoint of the color-change rule starting from blue set `s`.
pub fn zf_closure(g: &Digraph, s: &VertexSet, rule: ForcerRule) -> (VertexSet, ForceTrace) {
    let mut blue = s.clone();
    let mut events = Vec::new();
    run_forcing(g, &mut blue, rule, 1, Some(&mut events));
    (
        blue,
        ForceTrace {
            initial: s.clone(),
            events,
        },
    )
}

/// The monitored set: domination step, then blue-only forcing to fixpoint.
pub fn monitored_set(g: &Digraph, s: &VertexSet) -> (VertexSet, ForceTrace) {
    let mut blue = s.clone();
    let mut events = Vec::new();
    let mut forcer_of = vec![NO_FORCER; g.vertex_count()];
    let mut newly = Vec::new();
    for v in s.iter() {
        for &w in g.out_neighbors(v) {
            if !blue.contains(w) && forcer_of[w] == NO_FORCER {
                forcer_of[w] = v;
                newly.push(w);
            }
        }
    }
    newly.sort_unstable();
    for &w in &newly {
        blue.insert(w);
        events.push(ForceEvent {
            round: 1,
            forcer: forcer_of[w],
            forced: w,
        });
    }
    run_forcing(g, &mut blue, ForcerRule::BlueOnly, 2, Some(&mut events));
    (
        blue,
        ForceTrace {
            initial: s.clone(),
            events,
        },
    )
}

fn zf_closure_set(g: &Digraph, s: &VertexSet, rule: ForcerRule) -> VertexSet {
    let mut blue = s.clone();
    run_forcing(g, &mut blue, rule, 1, None);
    blue
}

fn monitored_set_only(g: &Digraph, s: &VertexSet) -> VertexSet {
    let mut blue = dominate(g, s);
    run_forcing(g, &mut blue, ForcerRule::BlueOnly, 2, None);
    blue
}

/// Does `s` force the whole graph blue under `rule`?
pub fn is_zero_forcing(g: &Digraph, s: &VertexSet, rule: ForcerRule) -> bool {
    zf_closure_set(g, s, rule).is_full()
}

/// Does `s` monitor every vertex?
pub fn is_power_dominating(g: &Digraph, s: &VertexSet) -> bool {
    monitored_set_only(g, s).is_full()
}

/// Number of synchronous rounds until the closure reaches the full vertex
/// set, or `None` when it never does. A seed set that is already full takes
/// zero rounds. For power domination the domination step counts as round 1.
pub fn propagation_time(g: &Digraph, s: &VertexSet, problem: Problem) -> Option<usize> {
    let trace = match problem {
        Problem::PowerDomination => monitored_set(g, s).1,
        Problem::ZeroForcing(rule) => zf_closure(g, s, rule).1,
    };
    trace.replay().is_full().then(|| trace.last_round())
}
