//! Chord diagrams of Gauss words and the sub-diagram patterns used to
//! classify curves.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cmap::Embedding;
use crate::word::{relabel_first_appearance, Certificate, GaussWord};

/// Chords on a cycle of `2n` points. Chord `l` (1-based) joins positions
/// `endpoints[l - 1].0 < endpoints[l - 1].1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChordDiagram {
    endpoints: Vec<(usize, usize)>,
}

impl ChordDiagram {
    pub fn n(&self) -> usize {
        self.endpoints.len()
    }

    pub fn endpoints(&self) -> &[(usize, usize)] {
        &self.endpoints
    }

    pub fn chord(&self, label: u32) -> (usize, usize) {
        self.endpoints[label as usize - 1]
    }

    /// The word whose position `p` carries the chord ending at `p`.
    pub fn to_word(&self) -> GaussWord {
        let mut letters = vec![0u32; 2 * self.n()];
        for (k, &(i, j)) in self.endpoints.iter().enumerate() {
            letters[i] = k as u32 + 1;
            letters[j] = k as u32 + 1;
        }
        GaussWord::new(letters).expect("chord endpoints form a double-occurrence word")
    }

    pub fn interleaved(&self, a: u32, b: u32) -> bool {
        let (a0, a1) = self.chord(a);
        let (b0, b1) = self.chord(b);
        (a0 < b0 && b0 < a1) != (a0 < b1 && b1 < a1)
    }

    pub fn interlacement(&self) -> InterlacementGraph {
        let n = self.n();
        let mut adj = vec![false; n * n];
        for a in 0..n {
            for b in a + 1..n {
                if self.interleaved(a as u32 + 1, b as u32 + 1) {
                    adj[a * n + b] = true;
                    adj[b * n + a] = true;
                }
            }
        }
        InterlacementGraph { n, adj }
    }
}

pub fn chord_diagram(w: &GaussWord) -> ChordDiagram {
    ChordDiagram { endpoints: w.positions() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacementGraph {
    n: usize,
    adj: Vec<bool>,
}

impl InterlacementGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, a: u32, b: u32) -> bool {
        self.adj[(a as usize - 1) * self.n + b as usize - 1]
    }

    pub fn degree(&self, a: u32) -> usize {
        let row = (a as usize - 1) * self.n;
        self.adj[row..row + self.n].iter().filter(|&&x| x).count()
    }

    pub fn neighbors(&self, a: u32) -> Vec<u32> {
        (1..=self.n as u32).filter(|&b| self.adjacent(a, b)).collect()
    }

    /// Interleaved pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for a in 1..=self.n as u32 {
            for b in a + 1..=self.n as u32 {
                if self.adjacent(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn pair_count(&self, a: u32, b: u32, c: u32) -> usize {
        self.adjacent(a, b) as usize + self.adjacent(a, c) as usize + self.adjacent(b, c) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternKind {
    Cross,
    H,
    Triple,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternHit {
    pub kind: PatternKind,
    /// Witnessing chords in increasing order.
    pub chords: Vec<u32>,
}

/// All occurrences of `kind`, ordered lexicographically by chord labels.
///
/// An `H` is three chords with exactly two interleaved pairs: the remaining
/// pair is parallel and the shared chord crosses both of its members.
pub fn find_patterns(cd: &ChordDiagram, kind: PatternKind) -> Vec<PatternHit> {
    let g = cd.interlacement();
    let n = cd.n() as u32;
    let mut hits = Vec::new();
    match kind {
        PatternKind::Cross => {
            for (a, b) in g.edges() {
                hits.push(PatternHit { kind, chords: vec![a, b] });
            }
        }
        PatternKind::H | PatternKind::Triple => {
            let want = if kind == PatternKind::Triple { 3 } else { 2 };
            for a in 1..=n {
                for b in a + 1..=n {
                    for c in b + 1..=n {
                        if g.pair_count(a, b, c) == want {
                            hits.push(PatternHit { kind, chords: vec![a, b, c] });
                        }
                    }
                }
            }
        }
    }
    hits
}

/// Early-exit test for three pairwise interleaved chords.
pub fn has_triple(cd: &ChordDiagram) -> bool {
    let g = cd.interlacement();
    let n = cd.n() as u32;
    for (a, b) in g.edges() {
        for c in b + 1..=n {
            if g.adjacent(a, c) && g.adjacent(b, c) {
                return true;
            }
        }
    }
    false
}

/// Chords crossing no other chord.
pub fn reducible_chords(cd: &ChordDiagram) -> BTreeSet<u32> {
    let g = cd.interlacement();
    (1..=cd.n() as u32).filter(|&a| g.degree(a) == 0).collect()
}

/// Smallest proper cyclic interval `(start, len)` closed under the chord
/// pairing; ties go to the smallest start.
fn shortest_closed_interval(letters: &[u32]) -> Option<(usize, usize)> {
    let len = letters.len();
    if len < 4 {
        return None;
    }
    let mut best: Option<(usize, usize)> = None;
    let mut open = vec![false; letters.iter().copied().max().unwrap_or(0) as usize + 1];
    for start in 0..len {
        open.iter_mut().for_each(|o| *o = false);
        let mut unmatched = 0usize;
        let limit = best.map_or(len - 2, |(_, l)| l - 1);
        for k in 0..limit {
            let l = letters[(start + k) % len] as usize;
            open[l] = !open[l];
            if open[l] {
                unmatched += 1;
            } else {
                unmatched -= 1;
            }
            if unmatched == 0 {
                best = Some((start, k + 1));
                break;
            }
        }
    }
    best
}

pub fn is_prime(cd: &ChordDiagram) -> bool {
    shortest_closed_interval(cd.to_word().letters()).is_none()
}

/// Connected-sum factorization, recorded so that it can be undone.
///
/// Factors are split off one at a time: each step rotates the current word
/// left by `shift` and removes a leading prime block. The remaining core is
/// stored last with no shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub steps: Vec<(ChordDiagram, usize)>,
    pub core: ChordDiagram,
}

impl Decomposition {
    pub fn factors(&self) -> Vec<ChordDiagram> {
        let mut v: Vec<ChordDiagram> = self.steps.iter().map(|(f, _)| f.clone()).collect();
        v.push(self.core.clone());
        v
    }

    /// Reassembles the diagram; the result equals the original up to
    /// rotation and relabeling.
    pub fn recompose(&self) -> ChordDiagram {
        let mut current: Vec<u32> = self.core.to_word().letters().to_vec();
        for (factor, shift) in self.steps.iter().rev() {
            let offset = current.iter().copied().max().unwrap_or(0);
            let mut joined: Vec<u32> = factor.to_word().letters().iter().map(|l| l + offset).collect();
            joined.extend_from_slice(&current);
            let len = joined.len();
            let r = (len - shift % len) % len;
            joined.rotate_left(r);
            current = joined;
        }
        chord_diagram(&GaussWord::from_normalized_unchecked(relabel_first_appearance(&current)))
    }
}

pub fn decompose(cd: &ChordDiagram) -> Decomposition {
    let mut current: Vec<u32> = cd.to_word().letters().to_vec();
    let mut steps = Vec::new();
    while let Some((start, len)) = shortest_closed_interval(&current) {
        current.rotate_left(start);
        let factor = relabel_first_appearance(&current[..len]);
        steps.push((chord_diagram(&GaussWord::from_normalized_unchecked(factor)), start));
        current.drain(..len);
    }
    let core = chord_diagram(&GaussWord::from_normalized_unchecked(relabel_first_appearance(&current)));
    Decomposition { steps, core }
}

/// Prime factors of the diagram; `[cd]` itself when it is prime or empty.
pub fn prime_factors(cd: &ChordDiagram) -> Vec<ChordDiagram> {
    decompose(cd).factors()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleClass {
    /// Index into `Embedding::faces`.
    pub face: usize,
    pub crossings: [u32; 3],
    pub kappa: u8,
    pub subdiagram_cert: Certificate,
}

impl TriangleClass {
    /// Letter name of the class: C for three interleaved pairs, then A, B, D
    /// for two, one, none.
    pub fn label(&self) -> char {
        match self.kappa {
            3 => 'C',
            2 => 'A',
            1 => 'B',
            _ => 'D',
        }
    }
}

pub fn triangle_classes(e: &Embedding) -> Vec<TriangleClass> {
    let cd = chord_diagram(e.word());
    let g = cd.interlacement();
    let mut out = Vec::new();
    for (face, f) in e.faces().iter().enumerate() {
        if f.corners() != 3 {
            continue;
        }
        let mut crossings = [0u32; 3];
        for (slot, &d) in crossings.iter_mut().zip(&f.darts) {
            *slot = e.label_of(d);
        }
        crossings.sort_unstable();
        if crossings[0] == crossings[1] || crossings[1] == crossings[2] {
            continue;
        }
        let [a, b, c] = crossings;
        let kappa = g.pair_count(a, b, c) as u8;
        let keep: Vec<u32> = e.word().letters().iter().copied().filter(|l| crossings.contains(l)).collect();
        let sub = GaussWord::from_normalized_unchecked(relabel_first_appearance(&keep));
        out.push(TriangleClass { face, crossings, kappa, subdiagram_cert: sub.canonicalize().certificate });
    }
    out
}

/// Arrangement of the two cut chords on the cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CutPattern {
    /// `a I1 b I2 a I3 b I4`
    Interleaved,
    /// `a I1 b I2 b I3 a I4`
    NonInterleaved,
}

/// Two-point cuts using the interleaved arrangement, which is the one that
/// characterizes reductivity one on reduced curves.
pub fn two_point_cuts(cd: &ChordDiagram) -> Vec<(u32, u32)> {
    two_point_cuts_with(cd, &[CutPattern::Interleaved])
}

/// Pairs `(a, b)`, `a < b`, arranged as one of `patterns`, such that every
/// other chord has both ends in `I1 ∪ I3` or both in `I2 ∪ I4`.
pub fn two_point_cuts_with(cd: &ChordDiagram, patterns: &[CutPattern]) -> Vec<(u32, u32)> {
    let n = cd.n() as u32;
    let len = 2 * cd.n();
    let g = cd.interlacement();
    let mut out = Vec::new();
    let mut side = vec![0u8; len];
    for a in 1..=n {
        for b in a + 1..=n {
            let pattern = if g.adjacent(a, b) { CutPattern::Interleaved } else { CutPattern::NonInterleaved };
            if !patterns.contains(&pattern) {
                continue;
            }
            let (a0, a1) = cd.chord(a);
            let (b0, b1) = cd.chord(b);
            let mut marks = [a0, a1, b0, b1];
            marks.sort_unstable();
            // Interval k runs from marks[k] to marks[k + 1]; the last wraps.
            for (p, s) in side.iter_mut().enumerate().take(len) {
                let k = marks.iter().filter(|&&m| m < p).count();
                *s = if marks.contains(&p) { 2 } else { (k % 2) as u8 };
            }
            let ok = (1..=n).filter(|&c| c != a && c != b).all(|c| {
                let (c0, c1) = cd.chord(c);
                side[c0] == side[c1]
            });
            if ok {
                out.push((a, b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmap::realize_all;
    use crate::word::parse;

    fn cd(s: &str) -> ChordDiagram {
        chord_diagram(&parse(s).unwrap())
    }

    fn raw(letters: &[u32]) -> ChordDiagram {
        chord_diagram(&GaussWord::new(letters.to_vec()).unwrap())
    }

    #[test]
    fn diagram_examples() {
        assert_eq!(cd("").n(), 0);
        assert_eq!(cd("1 2 1 2").endpoints(), &[(0, 2), (1, 3)]);
        assert_eq!(cd("1 2 2 1").endpoints(), &[(0, 3), (1, 2)]);
    }

    #[test]
    fn pattern_examples() {
        let t = find_patterns(&cd("1 2 3 1 2 3"), PatternKind::Triple);
        assert_eq!(t, vec![PatternHit { kind: PatternKind::Triple, chords: vec![1, 2, 3] }]);
        assert!(find_patterns(&cd("1 2 2 1"), PatternKind::Triple).is_empty());
        let h = find_patterns(&raw(&[1, 3, 2, 3, 1, 2]), PatternKind::H);
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].chords, vec![1, 2, 3]);
        let d = raw(&[1, 3, 2, 3, 1, 2]);
        assert!(!d.interleaved(1, 3));
        assert!(d.interleaved(2, 1) && d.interleaved(2, 3));
        assert!(find_patterns(&cd("1 2 3 4 1 2 3 4"), PatternKind::H).is_empty());
        assert!(has_triple(&cd("1 2 3 1 2 3")));
        assert!(!has_triple(&cd("1 2 1 3 3 2")));
    }

    #[test]
    fn reducible_examples() {
        assert_eq!(reducible_chords(&cd("1 1")), BTreeSet::from([1]));
        assert!(reducible_chords(&cd("1 2 3 1 2 3")).is_empty());
        assert_eq!(reducible_chords(&cd("1 1 2 2")), BTreeSet::from([1, 2]));
    }

    #[test]
    fn factor_examples() {
        let f = prime_factors(&cd("1 1 2 2"));
        assert_eq!(f, vec![cd("1 1"), cd("1 1")]);
        assert_eq!(prime_factors(&cd("1 2 3 1 2 3")), vec![cd("1 2 3 1 2 3")]);
        assert_eq!(prime_factors(&cd("")), vec![cd("")]);
        assert!(is_prime(&cd("1 1")));
        assert!(!is_prime(&cd("1 2 3 1 2 3 4 4")));
    }

    #[test]
    fn recompose_restores_certificate() {
        for s in ["1 1 2 2", "1 2 3 1 2 3 4 5 4 5", "1 2 1 3 3 2 4 4", "1 2 3 4 4 1 2 3", "5 1 2 3 1 2 3 5"] {
            let d = cd(s);
            let back = decompose(&d).recompose();
            assert_eq!(
                back.to_word().canonicalize().certificate,
                d.to_word().canonicalize().certificate,
                "{s}"
            );
        }
    }

    #[test]
    fn trefoil_triangles() {
        let e = realize_all(&parse("1 2 3 1 2 3").unwrap()).remove(0);
        let t = triangle_classes(&e);
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|c| c.kappa == 3 && c.label() == 'C'));
        assert!(triangle_classes(&crate::cmap::Embedding::circle()).is_empty());
    }

    #[test]
    fn cut_examples() {
        let d = cd("1 2 3 1 2 3");
        assert!(two_point_cuts(&d).contains(&(1, 2)));
        // Non-interleaved pairs are only reported when asked for.
        let d = cd("1 2 2 3 1 3");
        assert!(two_point_cuts(&d).iter().all(|&(a, b)| d.interleaved(a, b)));
    }
}
