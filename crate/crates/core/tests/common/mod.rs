//! Shared helpers for the integration suites: random instances, reference
//! (oracle) closure implementations, and trace validation.

#![allow(dead_code)]

use domforce_core::propagation::{dominate, ForceTrace};
use domforce_core::{Digraph, ForcerRule, Problem, VertexSet};
use rand::rngs::StdRng;
use rand::Rng;

pub fn set(universe: usize, members: &[usize]) -> VertexSet {
    VertexSet::from_members(universe, members.iter().copied()).unwrap()
}

/// Random digraph on `n` vertices with independent arc probability `p`,
/// loops included.
pub fn random_digraph(rng: &mut StdRng, n: usize, p: f64) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::build(n, arcs).unwrap()
}

pub fn random_subset(rng: &mut StdRng, universe: usize, p: f64) -> VertexSet {
    let mut s = VertexSet::new(universe);
    for v in 0..universe {
        if rng.gen_bool(p) {
            s.insert(v);
        }
    }
    s
}

/// The digraph whose arcs are the set bits of `mask`, row-major over
/// `n × n` ordered pairs. Sweeping `mask` over `0..2^(n²)` covers every
/// digraph on `n` labelled vertices, loops allowed.
pub fn digraph_from_mask(n: usize, mask: u64) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if mask >> (u * n + v) & 1 == 1 {
                arcs.push((u, v));
            }
        }
    }
    Digraph::build(n, arcs).unwrap()
}

/// Every subset of `0..n` as a `VertexSet`, in mask order.
pub fn all_subsets(n: usize) -> Vec<VertexSet> {
    (0..1u64 << n)
        .map(|mask| {
            let members = (0..n).filter(|&v| mask >> v & 1 == 1);
            VertexSet::from_members(n, members).unwrap()
        })
        .collect()
}

fn unique_red_out(g: &Digraph, u: usize, blue: &VertexSet) -> Option<usize> {
    let mut sole = None;
    for &w in g.out_neighbors(u) {
        if !blue.contains(w) {
            if sole.is_some() {
                return None;
            }
            sole = Some(w);
        }
    }
    sole
}

/// Reference zero forcing closure: applies one applicable force at a time
/// in an order chosen by `rng`. Exists to check that the synchronous engine
/// computes an order-independent fixpoint.
pub fn async_zf_closure(
    g: &Digraph,
    s: &VertexSet,
    rule: ForcerRule,
    rng: &mut StdRng,
) -> VertexSet {
    let mut blue = s.clone();
    loop {
        let candidates: Vec<usize> = match rule {
            ForcerRule::Any => (0..g.vertex_count()).collect(),
            ForcerRule::BlueOnly => blue.iter().collect(),
        };
        let mut forceable: Vec<usize> = candidates
            .into_iter()
            .filter_map(|u| unique_red_out(g, u, &blue))
            .collect();
        forceable.sort_unstable();
        forceable.dedup();
        if forceable.is_empty() {
            return blue;
        }
        let pick = forceable[rng.gen_range(0..forceable.len())];
        blue.insert(pick);
    }
}

/// Reference monitored set built the same one-force-at-a-time way.
pub fn async_monitored_set(g: &Digraph, s: &VertexSet, rng: &mut StdRng) -> VertexSet {
    let z = dominate(g, s);
    async_zf_closure(g, &z, ForcerRule::BlueOnly, rng)
}

/// Checks a trace event by event: every force must be applicable against
/// the blue set as it stood at the start of the event's round, rounds must
/// not decrease, and nothing is forced twice.
pub fn validate_trace(g: &Digraph, trace: &ForceTrace, problem: Problem) {
    let mut blue = trace.initial.clone();
    let events = &trace.events;
    let mut i = 0;
    let mut prev_round = 0;
    while i < events.len() {
        let round = events[i].round;
        assert!(round > prev_round, "rounds must advance between groups");
        prev_round = round;
        let mut j = i;
        while j < events.len() && events[j].round == round {
            j += 1;
        }
        let mut forced_this_round = VertexSet::new(g.vertex_count());
        for e in &events[i..j] {
            assert!(!blue.contains(e.forced), "vertex {} forced twice", e.forced);
            assert!(
                forced_this_round.insert(e.forced),
                "vertex {} forced twice in one round",
                e.forced
            );
            let domination_round = matches!(problem, Problem::PowerDomination) && round == 1;
            if domination_round {
                assert!(
                    trace.initial.contains(e.forcer),
                    "domination by a non-seed vertex"
                );
                assert!(
                    g.out_neighbors(e.forcer).contains(&e.forced),
                    "domination along a missing arc"
                );
            } else {
                let rule = match problem {
                    Problem::PowerDomination => ForcerRule::BlueOnly,
                    Problem::ZeroForcing(rule) => rule,
                };
                if rule == ForcerRule::BlueOnly {
                    assert!(blue.contains(e.forcer), "red forcer under blue-only rule");
                }
                assert_eq!(
                    unique_red_out(g, e.forcer, &blue),
                    Some(e.forced),
                    "force not applicable at its round"
                );
            }
        }
        for e in &events[i..j] {
            blue.insert(e.forced);
        }
        i = j;
    }
}
