//! Reduction by decreasing moves, strong (1,2) homotopy search and
//! reductivity.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chords::{chord_diagram, reducible_chords};
use crate::cmap::Embedding;
use crate::error::{Error, Result};
use crate::moves::{a_inverse, apply_unchecked, enumerate_moves, MoveEvent, MoveKind, MoveSite};
use crate::word::Certificate;

pub const DEFAULT_REDUCTIVITY_DEPTH: u32 = 4;

const DECREASING: [MoveKind; 3] = [MoveKind::R1b, MoveKind::S2b, MoveKind::W2b];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub start: Embedding,
    pub end: Embedding,
    pub events: Vec<MoveEvent>,
    /// Every event changes the crossing number in the same direction.
    pub monotone: bool,
}

impl ReductionTrace {
    fn new(start: Embedding, end: Embedding, events: Vec<MoveEvent>) -> Self {
        let deltas: BTreeSet<i32> = events.iter().map(|e| e.kind.delta().signum()).collect();
        let monotone = deltas.len() <= 1 && !deltas.contains(&0);
        ReductionTrace { start, end, events, monotone }
    }
}

fn event(before: &Embedding, site: &MoveSite, after: &Embedding) -> MoveEvent {
    MoveEvent {
        kind: site.kind,
        site: site.clone(),
        before_cert: before.certificate().clone(),
        after_cert: after.certificate().clone(),
    }
}

fn has_p1_or_p2(e: &Embedding) -> bool {
    e.faces().iter().any(|f| matches!(f.corners(), 1 | 2))
}

/// Greedily removes 1-gons and 2-gons, always taking the first site.
pub fn reduce_to_pr(e: &Embedding) -> Result<(Embedding, ReductionTrace)> {
    let mut cur = e.clone();
    let mut events = Vec::new();
    loop {
        let sites = enumerate_moves(&cur, &DECREASING)?;
        let Some(site) = sites.first() else { break };
        let next = apply_unchecked(&cur, site)?;
        events.push(event(&cur, site, &next));
        cur = next;
    }
    if has_p1_or_p2(&cur) {
        return Err(Error::Internal("a 1-gon or 2-gon face survived reduction".into()));
    }
    let trace = ReductionTrace::new(e.clone(), cur.clone(), events);
    Ok((cur, trace))
}

/// Certificates of every curve reachable from `e` by a maximal sequence of
/// decreasing moves.
pub fn pr_terminals(e: &Embedding) -> Result<BTreeSet<Certificate>> {
    let mut memo = HashMap::new();
    terminals(e, &mut memo)
}

fn terminals(e: &Embedding, memo: &mut HashMap<Certificate, BTreeSet<Certificate>>) -> Result<BTreeSet<Certificate>> {
    if let Some(t) = memo.get(e.certificate()) {
        return Ok(t.clone());
    }
    let sites = enumerate_moves(e, &DECREASING)?;
    let mut out = BTreeSet::new();
    if sites.is_empty() {
        out.insert(e.certificate().clone());
    }
    let mut seen = HashSet::new();
    for s in &sites {
        let next = apply_unchecked(e, s)?;
        if seen.insert(next.certificate().clone()) {
            out.extend(terminals(&next, memo)?);
        }
    }
    memo.insert(e.certificate().clone(), out.clone());
    Ok(out)
}

/// True iff all maximal decreasing sequences from `e` end at the same curve.
pub fn pr_uniqueness_check(e: &Embedding) -> Result<bool> {
    Ok(pr_terminals(e)?.len() == 1)
}

/// A sequence of kink and strong-bigon removals from `e` to the circle, if
/// one exists. Reversed, it builds `e` from the circle with kink and strong
/// bigon insertions.
pub fn strong_build_check(e: &Embedding) -> Result<Option<ReductionTrace>> {
    let mut dead = HashSet::new();
    let mut events = Vec::new();
    if strong_dfs(e, &mut dead, &mut events)? {
        Ok(Some(ReductionTrace::new(e.clone(), Embedding::circle(), events)))
    } else {
        Ok(None)
    }
}

fn strong_dfs(e: &Embedding, dead: &mut HashSet<Certificate>, events: &mut Vec<MoveEvent>) -> Result<bool> {
    if e.is_circle() {
        return Ok(true);
    }
    if dead.contains(e.certificate()) {
        return Ok(false);
    }
    // Bigons first: they shorten the trace fastest.
    let mut sites = enumerate_moves(e, &[MoveKind::S2b])?;
    sites.extend(enumerate_moves(e, &[MoveKind::R1b])?);
    for s in sites {
        let next = apply_unchecked(e, &s)?;
        if dead.contains(next.certificate()) {
            continue;
        }
        events.push(event(e, &s, &next));
        if strong_dfs(&next, dead, events)? {
            return Ok(true);
        }
        events.pop();
    }
    dead.insert(e.certificate().clone());
    Ok(false)
}

/// Replays a decreasing trace backwards from its end, finding at each step
/// an inverse site that recreates the earlier curve.
pub fn invert_trace(trace: &ReductionTrace) -> Result<ReductionTrace> {
    let mut cur = trace.end.clone();
    let mut events = Vec::new();
    for ev in trace.events.iter().rev() {
        if &ev.after_cert != cur.certificate() {
            return Err(Error::Internal("trace does not chain".into()));
        }
        let inverse = ev.kind.inverse().ok_or(Error::InvalidSite { kind: ev.kind })?;
        let mut found = None;
        for s in enumerate_moves(&cur, &[inverse])? {
            let next = apply_unchecked(&cur, &s)?;
            if next.certificate() == &ev.before_cert {
                found = Some((s, next));
                break;
            }
        }
        let (s, next) = found.ok_or_else(|| {
            Error::Internal(format!("no {inverse:?} site rebuilds {}", ev.before_cert))
        })?;
        events.push(event(&cur, &s, &next));
        cur = next;
    }
    Ok(ReductionTrace::new(trace.end.clone(), cur, events))
}

/// Kink and strong bigon moves in both directions.
pub const STRONG_12: [MoveKind; 4] = [MoveKind::R1a, MoveKind::R1b, MoveKind::S2a, MoveKind::S2b];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Reachability {
    Yes { trace: Vec<MoveEvent> },
    /// Not found among curves with at most `max_n` crossings. This says
    /// nothing about larger detours.
    NoWithinBound { max_n: usize },
}

type Parents = HashMap<Certificate, Option<Certificate>>;

/// Searches for a sequence of `kinds` moves from `a` to `b` that never
/// passes through a curve with more than `max_n` crossings.
pub fn homotopy_reachable(a: &Embedding, b: &Embedding, kinds: &[MoveKind], max_n: usize) -> Result<Reachability> {
    let needed = a.n().max(b.n());
    if needed > max_n {
        return Err(Error::BoundTooSmall { max_n, needed });
    }
    if a.certificate() == b.certificate() {
        return Ok(Reachability::Yes { trace: Vec::new() });
    }
    let inverses: Option<Vec<MoveKind>> = kinds.iter().map(|k| k.inverse()).collect();
    let bidirectional = inverses.is_some();
    let back_kinds = inverses.unwrap_or_default();

    let mut fwd_parent: Parents = HashMap::from([(a.certificate().clone(), None)]);
    let mut bwd_parent: Parents = HashMap::from([(b.certificate().clone(), None)]);
    let mut fwd_front = vec![a.clone()];
    let mut bwd_front = vec![b.clone()];
    let mut store: HashMap<Certificate, Embedding> =
        HashMap::from([(a.certificate().clone(), a.clone()), (b.certificate().clone(), b.clone())]);

    let meet = loop {
        if fwd_front.is_empty() || (bidirectional && bwd_front.is_empty()) {
            break None;
        }
        let forward = !bidirectional || fwd_front.len() <= bwd_front.len();
        let (front, parents, other, ks) = if forward {
            (&mut fwd_front, &mut fwd_parent, &bwd_parent, kinds)
        } else {
            (&mut bwd_front, &mut bwd_parent, &fwd_parent, &back_kinds[..])
        };
        let expanded = expand(front, ks, max_n)?;
        let mut next = Vec::new();
        let mut met = None;
        for (parent, child) in expanded {
            let c = child.certificate().clone();
            if parents.contains_key(&c) {
                continue;
            }
            parents.insert(c.clone(), Some(parent));
            store.entry(c.clone()).or_insert_with(|| child.clone());
            if other.contains_key(&c) || (!bidirectional && &c == b.certificate()) {
                met = Some(c);
                break;
            }
            next.push(child);
        }
        *front = next;
        if met.is_some() {
            break met;
        }
    };
    let Some(meet) = meet else {
        return Ok(Reachability::NoWithinBound { max_n });
    };

    let mut path = vec![meet.clone()];
    let mut c = meet.clone();
    while let Some(Some(p)) = fwd_parent.get(&c) {
        path.push(p.clone());
        c = p.clone();
    }
    path.reverse();
    let mut c = meet;
    while let Some(Some(p)) = bwd_parent.get(&c) {
        path.push(p.clone());
        c = p.clone();
    }
    let mut trace = Vec::new();
    for pair in path.windows(2) {
        let from = &store[&pair[0]];
        let mut found = None;
        for s in enumerate_moves(from, kinds)? {
            let to = apply_unchecked(from, &s)?;
            if to.certificate() == &pair[1] {
                found = Some(event(from, &s, &to));
                break;
            }
        }
        trace.push(found.ok_or_else(|| Error::Internal("search path has no realizing move".into()))?);
    }
    Ok(Reachability::Yes { trace })
}

/// Children of every frontier curve, in a deterministic order.
fn expand(front: &[Embedding], kinds: &[MoveKind], max_n: usize) -> Result<Vec<(Certificate, Embedding)>> {
    let per_node: Vec<Result<Vec<(Certificate, Embedding)>>> = front
        .par_iter()
        .map(|e| {
            let mut out = BTreeMap::new();
            for s in enumerate_moves(e, kinds)? {
                if e.n() as i64 + s.kind.delta() as i64 > max_n as i64 {
                    continue;
                }
                let child = apply_unchecked(e, &s)?;
                out.entry(child.certificate().clone()).or_insert(child);
            }
            Ok(out.into_values().map(|c| (e.certificate().clone(), c)).collect())
        })
        .collect();
    let mut all = Vec::new();
    for r in per_node {
        all.extend(r?);
    }
    Ok(all)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reductivity {
    pub value: u32,
    /// Crossings smoothed, each labelled in the canonical numbering of the
    /// curve it is applied to.
    pub witness: Vec<u32>,
    /// Set only for the circle, whose value is 0 by convention.
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ReductivityResult {
    Known(Reductivity),
    Unknown { max_depth: u32 },
}

impl ReductivityResult {
    pub fn value(&self) -> Option<u32> {
        match self {
            ReductivityResult::Known(r) => Some(r.value),
            ReductivityResult::Unknown { .. } => None,
        }
    }
}

pub fn is_reducible(e: &Embedding) -> bool {
    !reducible_chords(&chord_diagram(e.word())).is_empty()
}

/// Fewest smoothings needed to reach a curve with a nugatory crossing.
pub fn reductivity(e: &Embedding, max_depth: u32) -> Result<ReductivityResult> {
    if e.is_circle() {
        return Ok(ReductivityResult::Known(Reductivity { value: 0, witness: Vec::new(), degenerate: true }));
    }
    let mut layer: Vec<(Embedding, Vec<u32>)> = vec![(e.clone(), Vec::new())];
    let mut seen: HashSet<Certificate> = HashSet::from([e.certificate().clone()]);
    for depth in 0..=max_depth {
        if let Some((_, w)) = layer.iter().find(|(x, _)| is_reducible(x)) {
            return Ok(ReductivityResult::Known(Reductivity { value: depth, witness: w.clone(), degenerate: false }));
        }
        if depth == max_depth {
            break;
        }
        let mut next = Vec::new();
        for (x, w) in &layer {
            for c in 1..=x.n() as u32 {
                let y = a_inverse(x, c)?;
                if !y.is_circle() && seen.insert(y.certificate().clone()) {
                    let mut w2 = w.clone();
                    w2.push(c);
                    next.push((y, w2));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(ReductivityResult::Unknown { max_depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmap::realize_all;
    use crate::word::parse;

    fn emb(s: &str) -> Embedding {
        realize_all(&parse(s).unwrap()).remove(0)
    }

    #[test]
    fn reduction_examples() {
        let (r, t) = reduce_to_pr(&emb("1 1")).unwrap();
        assert!(r.is_circle());
        assert_eq!(t.events.len(), 1);
        assert_eq!(t.events[0].kind, MoveKind::R1b);
        assert!(t.monotone);
        let (r, t) = reduce_to_pr(&emb("1 2 3 1 2 3")).unwrap();
        assert!(r.is_circle());
        assert_eq!(t.events[0].kind, MoveKind::W2b);
        let (r, t) = reduce_to_pr(&Embedding::circle()).unwrap();
        assert!(r.is_circle() && t.events.is_empty());
    }

    #[test]
    fn uniqueness_examples() {
        assert!(pr_uniqueness_check(&emb("1 2 3 1 2 3")).unwrap());
        assert!(pr_uniqueness_check(&Embedding::circle()).unwrap());
    }

    #[test]
    fn strong_build_examples() {
        let bigon = realize_all(&parse("1 2 2 1").unwrap())
            .into_iter()
            .find(|e| !enumerate_moves(e, &[MoveKind::S2b]).unwrap().is_empty())
            .unwrap();
        let t = strong_build_check(&bigon).unwrap().unwrap();
        assert_eq!(t.events.iter().map(|e| e.kind).collect::<Vec<_>>(), vec![MoveKind::S2b]);
        let t = strong_build_check(&emb("1 1")).unwrap().unwrap();
        assert_eq!(t.events.iter().map(|e| e.kind).collect::<Vec<_>>(), vec![MoveKind::R1b]);
        assert!(strong_build_check(&emb("1 2 3 1 2 3")).unwrap().is_none());

        let e = bigon;
        let up = invert_trace(&strong_build_check(&e).unwrap().unwrap()).unwrap();
        assert_eq!(up.end.certificate(), e.certificate());
        assert_eq!(up.events[0].kind, MoveKind::S2a);
    }

    #[test]
    fn homotopy_examples() {
        let c = Embedding::circle();
        match homotopy_reachable(&c, &emb("1 2 2 1"), &STRONG_12, 4).unwrap() {
            Reachability::Yes { trace } => assert!(!trace.is_empty()),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            homotopy_reachable(&c, &c, &STRONG_12, 0).unwrap(),
            Reachability::Yes { trace: Vec::new() }
        );
        assert_eq!(
            homotopy_reachable(&c, &emb("1 2 3 1 2 3"), &STRONG_12, 5).unwrap(),
            Reachability::NoWithinBound { max_n: 5 }
        );
        assert!(matches!(
            homotopy_reachable(&c, &emb("1 2 3 1 2 3"), &STRONG_12, 2),
            Err(Error::BoundTooSmall { max_n: 2, needed: 3 })
        ));
    }

    #[test]
    fn reductivity_examples() {
        let r = reductivity(&emb("1 1"), 4).unwrap();
        assert_eq!(r.value(), Some(0));
        match reductivity(&emb("1 2 3 1 2 3"), 4).unwrap() {
            ReductivityResult::Known(r) => {
                assert_eq!(r.value, 1);
                assert_eq!(r.witness.len(), 1);
            }
            other => panic!("{other:?}"),
        }
        match reductivity(&Embedding::circle(), 4).unwrap() {
            ReductivityResult::Known(r) => assert!(r.degenerate && r.value == 0 && r.witness.is_empty()),
            other => panic!("{other:?}"),
        }
    }
}
