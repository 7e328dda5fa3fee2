//! Local moves on spherical curves, implemented as dart surgery.
//!
//! Sites refer to darts of the embedding they were enumerated on. Because
//! embeddings are always stored in canonical numbering, a site stays valid
//! for every embedding with the same certificate.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chords::chord_diagram;
use crate::cmap::{CombMap, Embedding};
use crate::error::{Error, Result};
use crate::word::{Certificate, GaussWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    R1a,
    R1b,
    S2a,
    S2b,
    W2a,
    W2b,
    R3,
    AInv,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::R1a,
        MoveKind::R1b,
        MoveKind::S2a,
        MoveKind::S2b,
        MoveKind::W2a,
        MoveKind::W2b,
        MoveKind::R3,
        MoveKind::AInv,
    ];

    /// Change in crossing number.
    pub fn delta(self) -> i32 {
        match self {
            MoveKind::R1a => 1,
            MoveKind::R1b | MoveKind::AInv => -1,
            MoveKind::S2a | MoveKind::W2a => 2,
            MoveKind::S2b | MoveKind::W2b => -2,
            MoveKind::R3 => 0,
        }
    }

    pub fn inverse(self) -> Option<MoveKind> {
        match self {
            MoveKind::R1a => Some(MoveKind::R1b),
            MoveKind::R1b => Some(MoveKind::R1a),
            MoveKind::S2a => Some(MoveKind::S2b),
            MoveKind::S2b => Some(MoveKind::S2a),
            MoveKind::W2a => Some(MoveKind::W2b),
            MoveKind::W2b => Some(MoveKind::W2a),
            MoveKind::R3 => Some(MoveKind::R3),
            MoveKind::AInv => None,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for MoveKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        MoveKind::ALL
            .iter()
            .copied()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown move kind {s:?}"))
    }
}

/// One side of an edge. On a curve with crossings this is the face-walk dart
/// running along the edge; the circle instead has one side per face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Walk(u32),
    Circle(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Locus {
    /// A face, given by its walk darts.
    Face(Vec<u32>),
    EdgeSide(Side),
    /// Two distinct edge sides of one face; `pusher` is dragged across
    /// `pushed`.
    ArcPair { pushed: u32, pusher: u32 },
    /// Two portions of one edge side folded onto each other.
    SelfPush { arc: Side, pusher_later: bool },
    Crossing(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub locus: Locus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BigonType {
    Strong,
    Weak,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveEvent {
    pub kind: MoveKind,
    pub site: MoveSite,
    pub before_cert: Certificate,
    pub after_cert: Certificate,
}

/// Type of the 2-gon face with walk darts `darts`, or `None` if the face
/// is not a 2-gon between two distinct crossings.
pub fn bigon_type(e: &Embedding, darts: &[u32]) -> Result<Option<BigonType>> {
    if darts.len() != 2 {
        return Ok(None);
    }
    let (a, b) = (e.label_of(darts[0]), e.label_of(darts[1]));
    if a == b {
        return Ok(None);
    }
    let crossed = chord_diagram(e.word()).interleaved(a, b);
    // Walk darts of equal parity run along the curve in the same sense, so
    // the two strands meet head to tail.
    let antiparallel = darts[0] % 2 == darts[1] % 2;
    match (crossed, antiparallel) {
        (false, true) => Ok(Some(BigonType::Strong)),
        (true, false) => Ok(Some(BigonType::Weak)),
        _ => Err(Error::Internal(format!(
            "bigon at crossings {a},{b}: interleavement and strand orientation disagree"
        ))),
    }
}

/// All applicable sites of the requested kinds, grouped by kind in
/// declaration order.
pub fn enumerate_moves(e: &Embedding, kinds: &[MoveKind]) -> Result<Vec<MoveSite>> {
    let kinds: BTreeSet<MoveKind> = kinds.iter().copied().collect();
    let mut out = Vec::new();
    let faces = e.faces();
    let map = e.map();
    for kind in kinds {
        match kind {
            MoveKind::R1a => {
                if e.is_circle() {
                    out.extend((0..2).map(|f| MoveSite { kind, locus: Locus::EdgeSide(Side::Circle(f)) }));
                } else {
                    out.extend(
                        (0..map.num_darts() as u32).map(|d| MoveSite { kind, locus: Locus::EdgeSide(Side::Walk(d)) }),
                    );
                }
            }
            MoveKind::R1b => {
                for f in faces.iter().filter(|f| f.corners() == 1) {
                    out.push(MoveSite { kind, locus: Locus::Face(f.darts.clone()) });
                }
            }
            MoveKind::S2b | MoveKind::W2b => {
                let want = if kind == MoveKind::S2b { BigonType::Strong } else { BigonType::Weak };
                for f in &faces {
                    if bigon_type(e, &f.darts)? == Some(want) {
                        out.push(MoveSite { kind, locus: Locus::Face(f.darts.clone()) });
                    }
                }
            }
            MoveKind::S2a | MoveKind::W2a => {
                let strong = kind == MoveKind::S2a;
                for f in &faces {
                    for &x in &f.darts {
                        for &y in &f.darts {
                            if x != y && ((x % 2 == y % 2) == strong) {
                                out.push(MoveSite { kind, locus: Locus::ArcPair { pushed: x, pusher: y } });
                            }
                        }
                    }
                }
                if strong {
                    let sides: Vec<Side> = if e.is_circle() {
                        vec![Side::Circle(0), Side::Circle(1)]
                    } else {
                        (0..map.num_darts() as u32).map(Side::Walk).collect()
                    };
                    for arc in sides {
                        for pusher_later in [false, true] {
                            out.push(MoveSite { kind, locus: Locus::SelfPush { arc, pusher_later } });
                        }
                    }
                }
            }
            MoveKind::R3 => {
                for f in faces.iter().filter(|f| f.corners() == 3) {
                    let labels: BTreeSet<u32> = f.darts.iter().map(|&d| e.label_of(d)).collect();
                    if labels.len() == 3 {
                        out.push(MoveSite { kind, locus: Locus::Face(f.darts.clone()) });
                    }
                }
            }
            MoveKind::AInv => {
                out.extend((1..=e.n() as u32).map(|c| MoveSite { kind, locus: Locus::Crossing(c) }));
            }
        }
    }
    Ok(out)
}

/// Applies `s`, which must be one of the sites `enumerate_moves` reports
/// for `e`.
pub fn apply(e: &Embedding, s: &MoveSite) -> Result<Embedding> {
    if !enumerate_moves(e, &[s.kind])?.contains(s) {
        return Err(Error::InvalidSite { kind: s.kind });
    }
    apply_unchecked(e, s)
}

/// Like `apply`, recording the event.
pub fn apply_logged(e: &Embedding, s: &MoveSite) -> Result<(Embedding, MoveEvent)> {
    let out = apply(e, s)?;
    let event = MoveEvent {
        kind: s.kind,
        site: s.clone(),
        before_cert: e.certificate().clone(),
        after_cert: out.certificate().clone(),
    };
    Ok((out, event))
}

pub(crate) fn apply_unchecked(e: &Embedding, s: &MoveSite) -> Result<Embedding> {
    let map = e.map();
    let mut b = Surgery::new(map);
    match (&s.kind, &s.locus) {
        (MoveKind::R1b | MoveKind::S2b | MoveKind::W2b, Locus::Face(darts)) => {
            b.splice_out(darts, |d| map.opposite(d))?;
        }
        (MoveKind::AInv, Locus::Crossing(c)) => return a_inverse(e, *c),
        (MoveKind::R1a, Locus::EdgeSide(side)) => b.kink(*side),
        (MoveKind::S2a | MoveKind::W2a, Locus::ArcPair { pushed, pusher }) => b.push(*pushed, *pusher),
        (MoveKind::S2a, Locus::SelfPush { arc, pusher_later }) => b.self_push(*arc, *pusher_later),
        (MoveKind::R3, Locus::Face(darts)) => b.triangle(darts),
        _ => return Err(Error::InvalidSite { kind: s.kind }),
    }
    let out = b.finish()?;
    let expected = e.n() as i64 + s.kind.delta() as i64;
    if out.n() as i64 != expected {
        return Err(Error::Internal(format!("{:?} produced {} crossings, expected {expected}", s.kind, out.n())));
    }
    Ok(out)
}

/// Non-coherent smoothing at crossing `c`, performed on the map.
pub fn a_inverse(e: &Embedding, c: u32) -> Result<Embedding> {
    if c == 0 || c as usize > e.n() {
        return Err(Error::NoSuchCrossing(c));
    }
    let (i, j) = e.word().positions()[c as usize - 1];
    let (oi, ii, oj, ij) = (2 * i as u32, 2 * i as u32 + 1, 2 * j as u32, 2 * j as u32 + 1);
    let map = e.map();
    let mut b = Surgery::new(map);
    b.splice_out(&[oi], |d| match d {
        d if d == ii => ij,
        d if d == ij => ii,
        d if d == oi => oj,
        _ => oi,
    })?;
    b.finish()
}

/// The same smoothing on the word: `c P c Q` becomes `reverse(P) Q`.
pub fn a_inverse_word(w: &GaussWord, c: u32) -> Result<GaussWord> {
    if c == 0 || c as usize > w.n() {
        return Err(Error::NoSuchCrossing(c));
    }
    let (i, j) = w.positions()[c as usize - 1];
    let l = w.letters();
    let mut out: Vec<u32> = l[i + 1..j].iter().rev().copied().collect();
    out.extend_from_slice(&l[j + 1..]);
    out.extend_from_slice(&l[..i]);
    GaussWord::from_labels(&out)
}

/// Working copy of a map for surgery. Darts can be killed and appended;
/// `finish` compacts and canonicalizes.
struct Surgery {
    sigma: Vec<u32>,
    alpha: Vec<u32>,
    dead: Vec<bool>,
    /// Set when the result is known to be the crossing-free circle.
    circle: bool,
}

/// Where a strand passes a new crossing: the dart it arrives on and the one
/// it leaves by.
#[derive(Clone, Copy)]
struct Slot {
    back: u32,
    fwd: u32,
}

impl Surgery {
    fn new(map: &CombMap) -> Self {
        Surgery {
            sigma: map.sigma().to_vec(),
            alpha: map.alpha().to_vec(),
            dead: vec![false; map.num_darts()],
            circle: false,
        }
    }

    /// Appends a crossing of four darts `base..base + 4` in counterclockwise
    /// order and returns `base`.
    fn add_vertex(&mut self) -> u32 {
        let base = self.sigma.len() as u32;
        for k in 0..4 {
            self.sigma.push(base + (k + 1) % 4);
            self.alpha.push(u32::MAX);
            self.dead.push(false);
        }
        base
    }

    fn link(&mut self, a: u32, b: u32) {
        self.alpha[a as usize] = b;
        self.alpha[b as usize] = a;
    }

    /// A crossing met by two strands; the counterclockwise order is
    /// `p.fwd, q.fwd, p.back, q.back` when `q_reversed` is false and
    /// `p.fwd, q.back, p.back, q.fwd` otherwise.
    fn crossing(&mut self, q_reversed: bool) -> (Slot, Slot) {
        let base = self.add_vertex();
        let p = Slot { fwd: base, back: base + 2 };
        let q = if q_reversed { Slot { back: base + 1, fwd: base + 3 } } else { Slot { fwd: base + 1, back: base + 3 } };
        (p, q)
    }

    /// Links `start`, the slots in order, and `end` into one strand.
    fn thread(&mut self, start: u32, slots: &[Slot], end: u32) {
        let mut prev = start;
        for s in slots {
            self.link(prev, s.back);
            prev = s.fwd;
        }
        self.link(prev, end);
    }

    /// Closes the slots into a strand with no other darts.
    fn thread_closed(&mut self, slots: &[Slot]) {
        for k in 0..slots.len() {
            let next = slots[(k + 1) % slots.len()];
            self.link(slots[k].fwd, next.back);
        }
    }

    /// Removes the crossings holding the darts `at`. Each surviving dart
    /// whose partner is removed is reconnected by following `through` across
    /// removed crossings until a survivor is reached.
    fn splice_out(&mut self, at: &[u32], through: impl Fn(u32) -> u32) -> Result<()> {
        let darts = self.sigma.len();
        let mut vertex_of = vec![u32::MAX; darts];
        for d in 0..darts {
            if vertex_of[d] == u32::MAX {
                let mut x = d;
                loop {
                    vertex_of[x] = d as u32;
                    x = self.sigma[x] as usize;
                    if x == d {
                        break;
                    }
                }
            }
        }
        let doomed_roots: BTreeSet<u32> = at.iter().map(|&d| vertex_of[d as usize]).collect();
        for (dead, root) in self.dead.iter_mut().zip(&vertex_of) {
            if doomed_roots.contains(root) {
                *dead = true;
            }
        }
        let mut visited = vec![false; darts];
        let mut relink = Vec::new();
        for d in 0..darts {
            if self.dead[d] || !self.dead[self.alpha[d] as usize] {
                continue;
            }
            let mut x = self.alpha[d] as usize;
            loop {
                visited[x] = true;
                let y = through(x as u32) as usize;
                visited[y] = true;
                let z = self.alpha[y] as usize;
                if !self.dead[z] {
                    relink.push((d as u32, z as u32));
                    break;
                }
                x = z;
            }
        }
        let mut loops = 0;
        for d in 0..darts {
            if !self.dead[d] || visited[d] {
                continue;
            }
            loops += 1;
            let mut x = d;
            while !visited[x] {
                visited[x] = true;
                let y = through(x as u32) as usize;
                visited[y] = true;
                x = self.alpha[y] as usize;
            }
        }
        for (a, b) in relink {
            self.alpha[a as usize] = b;
        }
        let survivors = self.dead.iter().any(|d| !d);
        match (survivors, loops) {
            (true, 0) => Ok(()),
            (false, 1) => {
                self.circle = true;
                Ok(())
            }
            _ => Err(Error::Internal(format!("surgery left {loops} detached loop(s)"))),
        }
    }

    /// Kink on one side of an edge.
    fn kink(&mut self, side: Side) {
        // Counterclockwise: s2.fwd, s1.back, s2.back, s1.fwd.
        let base = self.add_vertex();
        let s2 = Slot { fwd: base, back: base + 2 };
        let s1 = Slot { back: base + 1, fwd: base + 3 };
        match side {
            Side::Walk(x) => {
                let z = self.alpha[x as usize];
                self.thread(x, &[s1, s2], z);
            }
            Side::Circle(_) => self.thread_closed(&[s1, s2]),
        }
    }

    fn push_crossings(&mut self) -> ([Slot; 2], [Slot; 2]) {
        // c1 = (s2.fwd, t1.fwd, s2.back, t1.back)
        let (s2, t1) = self.crossing(false);
        // c2 = (s1.fwd, t2.back, s1.back, t2.fwd)
        let (s1, t2) = self.crossing(true);
        ([s1, s2], [t1, t2])
    }

    fn push(&mut self, x: u32, y: u32) {
        let (ax, ay) = (self.alpha[x as usize], self.alpha[y as usize]);
        let (s, t) = self.push_crossings();
        self.thread(x, &s, ax);
        self.thread(y, &t, ay);
    }

    fn self_push(&mut self, arc: Side, pusher_later: bool) {
        let (s, t) = self.push_crossings();
        let slots = if pusher_later { [s[0], s[1], t[0], t[1]] } else { [t[0], t[1], s[0], s[1]] };
        match arc {
            Side::Walk(x) => {
                let ax = self.alpha[x as usize];
                self.thread(x, &slots, ax);
            }
            Side::Circle(_) => self.thread_closed(&slots),
        }
    }

    /// Third move across the triangle with walk darts `darts`. Rotations are
    /// kept; every triangle strand swaps the order of its two crossings.
    fn triangle(&mut self, darts: &[u32]) {
        let opp = |s: &Surgery, d: u32| s.sigma[s.sigma[d as usize] as usize];
        let darts_total = self.alpha.len();
        let mut repl: Vec<u32> = (0..darts_total as u32).collect();
        let mut tri_edge = vec![false; darts_total];
        let mut new_edges = Vec::new();
        for &xe in darts {
            let ye = self.alpha[xe as usize];
            let (xo, yo) = (opp(self, xe), opp(self, ye));
            repl[xo as usize] = ye;
            repl[yo as usize] = xe;
            tri_edge[xe as usize] = true;
            tri_edge[ye as usize] = true;
            new_edges.push((xo, yo));
        }
        let old = self.alpha.clone();
        for u in 0..darts_total {
            let w = old[u] as usize;
            if u < w && !tri_edge[u] {
                let (a, b) = (repl[u], repl[w]);
                self.link(a, b);
            }
        }
        for (a, b) in new_edges {
            self.link(a, b);
        }
    }

    fn finish(self) -> Result<Embedding> {
        if self.circle {
            return Ok(Embedding::circle());
        }
        let mut new_id = vec![u32::MAX; self.sigma.len()];
        let mut next = 0u32;
        for (d, dead) in self.dead.iter().enumerate() {
            if !dead {
                new_id[d] = next;
                next += 1;
            }
        }
        let mut sigma = Vec::with_capacity(next as usize);
        let mut alpha = Vec::with_capacity(next as usize);
        for d in 0..self.sigma.len() {
            if !self.dead[d] {
                sigma.push(new_id[self.sigma[d] as usize]);
                alpha.push(new_id[self.alpha[d] as usize]);
            }
        }
        let n = next as usize / 4;
        let map = CombMap::from_parts_unchecked(n, sigma, alpha)
            .and_then(|m| Embedding::from_map(&m))
            .map_err(|err| Error::Internal(format!("surgery produced an invalid map: {err}")))?;
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chords::has_triple;
    use crate::cmap::realize_all;
    use crate::word::parse;

    fn emb(s: &str) -> Embedding {
        realize_all(&parse(s).unwrap()).remove(0)
    }

    fn gons(e: &Embedding) -> Vec<usize> {
        let mut v: Vec<usize> = e.faces().iter().map(|f| f.corners()).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn circle_strong_insertions_only() {
        let c = Embedding::circle();
        assert!(enumerate_moves(&c, &[MoveKind::W2a]).unwrap().is_empty());
        let sites = enumerate_moves(&c, &[MoveKind::S2a]).unwrap();
        assert_eq!(sites.len(), 4);
        let results: BTreeSet<Certificate> =
            sites.iter().map(|s| apply(&c, s).unwrap().certificate().clone()).collect();
        assert_eq!(results.len(), 1);
        let r = apply(&c, &sites[0]).unwrap();
        assert_eq!(r.word(), &parse("1 2 2 1").unwrap().canonicalize().word);
    }

    #[test]
    fn trefoil_bigons_are_weak() {
        let t = emb("1 2 3 1 2 3");
        let sites = enumerate_moves(&t, &[MoveKind::S2b, MoveKind::W2b]).unwrap();
        assert_eq!(sites.len(), 3);
        assert!(sites.iter().all(|s| s.kind == MoveKind::W2b));
    }

    #[test]
    fn nested_bigon_is_strong() {
        let e = emb("1 2 2 1");
        let sites = enumerate_moves(&e, &[MoveKind::S2b]).unwrap();
        assert_eq!(sites.len(), 1);
        assert!(apply(&e, &sites[0]).unwrap().is_circle());
    }

    #[test]
    fn kink_removal() {
        let e = emb("1 1");
        let sites = enumerate_moves(&e, &[MoveKind::R1b]).unwrap();
        assert_eq!(sites.len(), 2);
        assert!(apply(&e, &sites[0]).unwrap().is_circle());
    }

    #[test]
    fn third_move_on_trefoil() {
        // Faces across the triangle's edges lose a corner; faces opposite its
        // corners gain one. For the trefoil the three bigons become kinks and
        // the outer triangle gains three corners.
        let t = emb("1 2 3 1 2 3");
        let sites = enumerate_moves(&t, &[MoveKind::R3]).unwrap();
        assert_eq!(sites.len(), 2);
        for s in &sites {
            let r = apply(&t, s).unwrap();
            assert_eq!(gons(&r), vec![1, 1, 1, 3, 6], "{}", r.word());
            assert_eq!(r.word(), &parse("1 1 2 2 3 3").unwrap());
            let back: BTreeSet<Certificate> = enumerate_moves(&r, &[MoveKind::R3])
                .unwrap()
                .iter()
                .map(|s| apply(&r, s).unwrap().certificate().clone())
                .collect();
            assert!(back.contains(t.certificate()));
        }
    }

    #[test]
    fn stale_site_is_rejected() {
        let t = emb("1 2 3 1 2 3");
        let s = MoveSite { kind: MoveKind::R1b, locus: Locus::Face(vec![0]) };
        assert!(matches!(apply(&t, &s), Err(Error::InvalidSite { .. })));
    }

    #[test]
    fn a_inverse_examples() {
        let t = emb("1 2 3 1 2 3");
        assert_eq!(a_inverse_word(t.word(), 1).unwrap(), parse("3 2 2 3").unwrap());
        let r = a_inverse(&t, 1).unwrap();
        assert_eq!(r.word().canonicalize(), parse("3 2 2 3").unwrap().canonicalize());
        assert!(a_inverse(&emb("1 1"), 1).unwrap().is_circle());
        assert!(matches!(a_inverse(&t, 4), Err(Error::NoSuchCrossing(4))));
    }

    #[test]
    fn weak_insertions_create_triple_chords() {
        for s in ["1 1", "1 2 3 1 2 3", "1 1 2 2"] {
            for e in realize_all(&parse(s).unwrap()) {
                for site in enumerate_moves(&e, &[MoveKind::W2a]).unwrap() {
                    let r = apply(&e, &site).unwrap();
                    assert!(has_triple(&chord_diagram(r.word())));
                }
            }
        }
    }
}
