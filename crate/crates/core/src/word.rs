//! Gauss words: cyclic double-occurrence words over crossing labels.
//!
//! A word of length `2n` lists the crossings of a closed curve in traversal
//! order. Words are stored as one chosen rotation; every symmetry-aware
//! operation treats them cyclically. The empty word is the simple closed
//! curve.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest crossing count a word may carry (labels are encoded as bytes in
/// certificates).
pub const MAX_CROSSINGS: usize = 255;

/// An opaque, totally ordered canonical code. Two objects are equivalent
/// exactly when their certificates are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        Certificate(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl From<Certificate> for String {
    fn from(c: Certificate) -> String {
        c.to_hex()
    }
}

impl TryFrom<String> for Certificate {
    type Error = hex::FromHexError;

    fn try_from(s: String) -> std::result::Result<Self, Self::Error> {
        hex::decode(s).map(Certificate)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussWord {
    letters: Vec<u32>,
}

impl GaussWord {
    /// The empty word: the simple closed curve.
    pub fn circle() -> Self {
        GaussWord { letters: Vec::new() }
    }

    /// Builds a word whose labels are exactly `1..=n`, each occurring twice.
    /// The labelling is kept as given; see [`GaussWord::normalized`].
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        let n = check_double_occurrence(&letters)?;
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l as usize > n) {
            return Err(Error::BadLabels { n, found: bad });
        }
        Ok(GaussWord { letters })
    }

    /// Accepts arbitrary labels (each occurring twice) and relabels them
    /// `1..=n` in order of first appearance.
    pub fn from_labels(labels: &[u32]) -> Result<Self> {
        check_double_occurrence(labels)?;
        Ok(GaussWord { letters: relabel_first_appearance(labels) })
    }

    pub(crate) fn from_normalized_unchecked(letters: Vec<u32>) -> Self {
        debug_assert!(check_double_occurrence(&letters).is_ok());
        GaussWord { letters }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of crossings.
    pub fn n(&self) -> usize {
        self.letters.len() / 2
    }

    pub fn is_normalized(&self) -> bool {
        self.letters == relabel_first_appearance(&self.letters)
    }

    pub fn normalized(&self) -> GaussWord {
        GaussWord { letters: relabel_first_appearance(&self.letters) }
    }

    /// For each label `1..=n`, the two positions at which it occurs (ascending).
    pub fn positions(&self) -> Vec<(usize, usize)> {
        occurrence_positions(&self.letters)
    }

    pub fn rotated(&self, by: usize) -> GaussWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = by % letters.len();
            letters.rotate_left(k);
        }
        GaussWord { letters }
    }

    pub fn reversed(&self) -> GaussWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        GaussWord { letters }
    }

    /// Applies a label permutation; `perm[l - 1]` is the new name of label `l`.
    pub fn relabeled(&self, perm: &[u32]) -> GaussWord {
        GaussWord { letters: self.letters.iter().map(|&l| perm[l as usize - 1]).collect() }
    }

    /// Deletes every occurrence of the given labels and renormalizes.
    pub fn without(&self, labels: &[u32]) -> GaussWord {
        let kept: Vec<u32> =
            self.letters.iter().copied().filter(|l| !labels.contains(l)).collect();
        GaussWord { letters: relabel_first_appearance(&kept) }
    }

    pub fn canonicalize(&self) -> CanonicalForm {
        let word = GaussWord { letters: canonical_letters(&self.letters) };
        let mut bytes = Vec::with_capacity(word.len() + 1);
        bytes.push(word.n() as u8);
        bytes.extend(word.letters.iter().map(|&l| l as u8));
        CanonicalForm { word, certificate: Certificate(bytes) }
    }

    /// Necessary condition for realizability: every chord interleaves an
    /// even number of other chords.
    pub fn parity_filter(&self) -> bool {
        parity_ok(&self.letters)
    }

    /// All distinct words related to this one by rotation, reversal and
    /// relabeling. The orbit grows as `4n * n!`; intended for small words.
    pub fn symmetry_orbit(&self) -> BTreeSet<GaussWord> {
        let n = self.n();
        let mut out = BTreeSet::new();
        if n == 0 {
            out.insert(self.clone());
            return out;
        }
        let mut perm: Vec<u32> = (1..=n as u32).collect();
        let mut bases = Vec::with_capacity(4 * n);
        for r in 0..2 * n {
            let w = self.rotated(r);
            bases.push(w.reversed());
            bases.push(w);
        }
        loop {
            for b in &bases {
                out.insert(b.relabeled(&perm));
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        out
    }
}

impl fmt::Display for GaussWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for GaussWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let labels = tokenize(&s).map_err(serde::de::Error::custom)?;
        GaussWord::new(labels).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub word: GaussWord,
    pub certificate: Certificate,
}

/// Parses whitespace- or comma-separated decimal labels into a normalized
/// word. The empty string is the circle.
pub fn parse(text: &str) -> Result<GaussWord> {
    let labels = tokenize(text)?;
    GaussWord::from_labels(&labels)
}

fn tokenize(text: &str) -> Result<Vec<u32>> {
    let mut labels = Vec::new();
    if text.trim().is_empty() {
        return Ok(labels);
    }
    for piece in text.split(',') {
        if piece.trim().is_empty() {
            return Err(Error::EmptyToken { index: labels.len() });
        }
        for token in piece.split_whitespace() {
            let label = token
                .parse::<u32>()
                .map_err(|_| Error::BadToken { token: token.to_string() })?;
            labels.push(label);
        }
    }
    Ok(labels)
}

fn check_double_occurrence(letters: &[u32]) -> Result<usize> {
    let mut counts = std::collections::BTreeMap::new();
    for &l in letters {
        *counts.entry(l).or_insert(0usize) += 1;
    }
    if let Some((&label, &count)) = counts.iter().find(|(_, &c)| c != 2) {
        return Err(Error::NotDoubleOccurrence { label, count });
    }
    let n = counts.len();
    if n > MAX_CROSSINGS {
        return Err(Error::TooManyCrossings(n));
    }
    Ok(n)
}

pub(crate) fn relabel_first_appearance(letters: &[u32]) -> Vec<u32> {
    let mut map = std::collections::HashMap::new();
    let mut next = 1u32;
    letters
        .iter()
        .map(|&l| {
            *map.entry(l).or_insert_with(|| {
                let v = next;
                next += 1;
                v
            })
        })
        .collect()
}

/// Positions of each label `1..=n` in a word whose labels are `1..=n`.
pub(crate) fn occurrence_positions(letters: &[u32]) -> Vec<(usize, usize)> {
    let n = letters.len() / 2;
    let mut pos = vec![(usize::MAX, usize::MAX); n];
    for (i, &l) in letters.iter().enumerate() {
        let slot = &mut pos[l as usize - 1];
        if slot.0 == usize::MAX {
            slot.0 = i;
        } else {
            slot.1 = i;
        }
    }
    pos
}

pub(crate) fn parity_ok(letters: &[u32]) -> bool {
    let pos = occurrence_positions(letters);
    // Each letter strictly inside a chord's span toggles that chord's parity
    // once per occurrence; chords fully inside contribute 0 mod 2.
    pos.iter().all(|&(i, j)| (j - i - 1) % 2 == 0)
}

/// Minimum, over all rotations and both directions, of the first-appearance
/// relabeling.
pub(crate) fn canonical_letters(letters: &[u32]) -> Vec<u32> {
    let len = letters.len();
    if len == 0 {
        return Vec::new();
    }
    let n = len / 2;
    let mut best: Vec<u32> = Vec::new();
    let mut cand = vec![0u32; len];
    let mut map = vec![0u32; n + 1];
    for start in 0..len {
        for dir in [false, true] {
            map.iter_mut().for_each(|m| *m = 0);
            let mut next = 1;
            let mut state = if best.is_empty() { std::cmp::Ordering::Less } else { std::cmp::Ordering::Equal };
            let mut k = 0;
            while k < len {
                let idx = if dir { (start + len - k) % len } else { (start + k) % len };
                let l = letters[idx] as usize;
                if map[l] == 0 {
                    map[l] = next;
                    next += 1;
                }
                cand[k] = map[l];
                if state == std::cmp::Ordering::Equal {
                    state = cand[k].cmp(&best[k]);
                    if state == std::cmp::Ordering::Greater {
                        break;
                    }
                }
                k += 1;
            }
            if k == len && state == std::cmp::Ordering::Less {
                best.clear();
                best.extend_from_slice(&cand);
            }
        }
    }
    best
}

fn next_permutation(p: &mut [u32]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u32]) -> GaussWord {
        GaussWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse("1 2 3 1 2 3").unwrap().letters(), &[1, 2, 3, 1, 2, 3]);
        assert!(parse("").unwrap().is_empty());
        assert!(matches!(
            parse("1 2 3 1 2"),
            Err(Error::NotDoubleOccurrence { label: 3, count: 1 })
        ));
    }

    #[test]
    fn parse_separators_and_errors() {
        assert_eq!(parse("7,9,7,9").unwrap().letters(), &[1, 2, 1, 2]);
        assert_eq!(parse("1, 1").unwrap().letters(), &[1, 1]);
        assert_eq!(parse("  5\t5\n").unwrap().letters(), &[1, 1]);
        assert!(matches!(parse("1,,1"), Err(Error::EmptyToken { .. })));
        assert!(matches!(parse("1 x 1"), Err(Error::BadToken { .. })));
        assert!(matches!(parse("1 -1 1"), Err(Error::BadToken { .. })));
    }

    #[test]
    fn new_rejects_labels_outside_range() {
        assert!(matches!(GaussWord::new(vec![1, 3, 1, 3]), Err(Error::BadLabels { .. })));
    }

    #[test]
    fn display_round_trips() {
        let word = parse("1 2 3 1 2 3").unwrap();
        assert_eq!(word.to_string(), "1 2 3 1 2 3");
        assert_eq!(parse(&word.to_string()).unwrap(), word);
        assert_eq!(GaussWord::circle().to_string(), "");
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            w(&[2, 3, 1, 2, 3, 1]).canonicalize().certificate,
            w(&[1, 2, 3, 1, 2, 3]).canonicalize().certificate
        );
        assert_eq!(
            w(&[1, 2, 2, 1]).canonicalize().certificate,
            w(&[1, 1, 2, 2]).canonicalize().certificate
        );
        assert_eq!(w(&[1, 2, 2, 1]).canonicalize().word.letters(), &[1, 1, 2, 2]);
        let empty = GaussWord::circle().canonicalize();
        assert!(empty.word.is_empty());
        assert_eq!(empty.certificate.to_hex(), "00");
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let c = w(&[1, 2, 3, 4, 2, 1, 4, 3]).canonicalize();
        assert_eq!(c.word.canonicalize(), c);
    }

    #[test]
    fn parity_examples() {
        assert!(!w(&[1, 2, 1, 2]).parity_filter());
        assert!(w(&[1, 2, 3, 1, 2, 3]).parity_filter());
        assert!(GaussWord::circle().parity_filter());
    }

    #[test]
    fn orbit_examples() {
        let one = w(&[1, 1]).symmetry_orbit();
        assert_eq!(one.len(), 1);
        assert!(one.contains(&w(&[1, 1])));

        let trefoil = w(&[1, 2, 3, 1, 2, 3]);
        let orbit = trefoil.symmetry_orbit();
        assert!(orbit.contains(&trefoil));
        assert!(orbit.contains(&w(&[3, 2, 1, 3, 2, 1])));
        let cert = trefoil.canonicalize().certificate;
        assert!(orbit.iter().all(|o| o.canonicalize().certificate == cert));

        let kinks = w(&[1, 1, 2, 2]).symmetry_orbit();
        assert!(kinks.contains(&w(&[1, 2, 2, 1])));
        assert!(kinks.contains(&w(&[2, 1, 1, 2])));
        // 4n * n! = 16 symmetries; the orbit size must divide it.
        assert_eq!(16 % kinks.len(), 0);
    }
}
