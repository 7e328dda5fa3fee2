//! Spherical curves as 4-valent combinatorial maps.
//!
//! Darts are half-edges, four per crossing. `sigma` rotates counterclockwise
//! around a crossing and `alpha` pairs the two ends of an edge. The curve
//! itself is recovered by going straight through every crossing: from a dart
//! `d` leaving a crossing, the next leaving dart is `sigma²(alpha(d))`.
//! Faces are the orbits of `sigma ∘ alpha`; the walk keeps the face on its
//! right.
//!
//! A map in *normalized* numbering is built from a Gauss word plus one bit per
//! crossing: position `p` of the word owns dart `2p` (leaving along the curve)
//! and dart `2p + 1` (arriving). For a crossing met at positions `i < j` the
//! bit is set when the counterclockwise order is `out_i, out_j, in_i, in_j`,
//! and clear when it is `out_i, in_j, in_i, out_j`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{relabel_first_appearance, Certificate, GaussWord};

pub const MAP_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombMap {
    n: usize,
    sigma: Vec<u32>,
    alpha: Vec<u32>,
    /// Crossing index (0-based, orbit order of `sigma`) of every dart.
    vertex: Vec<u32>,
}

/// One face: its corners, listed as the darts along which the face walk
/// leaves each corner.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    pub darts: Vec<u32>,
}

impl Face {
    pub fn corners(&self) -> usize {
        self.darts.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCensus {
    /// `p[k]` = number of faces with `k` corners. The two faces of the
    /// circle are recorded under `k = 0`.
    pub p: BTreeMap<usize, usize>,
    pub v: usize,
    pub e: usize,
    pub f: usize,
}

impl FaceCensus {
    pub fn count(&self, k: usize) -> usize {
        self.p.get(&k).copied().unwrap_or(0)
    }

    /// `p3 + Σ_{k≥4} (4 − k) p_k`, which equals 8 whenever `p1 = p2 = 0`
    /// and the curve is nontrivial.
    pub fn triangle_identity(&self) -> i64 {
        self.p
            .iter()
            .filter(|(&k, _)| k >= 3)
            .map(|(&k, &c)| (4 - k as i64) * c as i64)
            .sum()
    }

    /// `{"p2": 3, "p3": 2}`-style view, omitting zero counts.
    pub fn gon_counts(&self) -> BTreeMap<String, usize> {
        self.p.iter().filter(|(_, &c)| c > 0).map(|(k, c)| (format!("p{k}"), *c)).collect()
    }

    pub fn is_consistent(&self) -> bool {
        let faces: usize = self.p.values().sum();
        let corners: usize = self.p.iter().map(|(k, c)| k * c).sum();
        let corners_ok = if self.v == 0 { corners == 0 } else { corners == 2 * self.e };
        faces == self.f
            && corners_ok
            && 4 * self.v == 2 * self.e
            && self.v as i64 - self.e as i64 + self.f as i64 == 2
    }
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    version: u32,
    n: usize,
    sigma: Vec<u32>,
    alpha: Vec<u32>,
}

impl Serialize for CombMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapJson {
            version: MAP_SCHEMA_VERSION,
            n: self.n,
            sigma: self.sigma.clone(),
            alpha: self.alpha.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CombMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MapJson::deserialize(d)?;
        if raw.version != MAP_SCHEMA_VERSION {
            return Err(serde::de::Error::custom(format!(
                "unsupported map schema version {}",
                raw.version
            )));
        }
        CombMap::from_parts(raw.n, raw.sigma, raw.alpha).map_err(serde::de::Error::custom)
    }
}

impl CombMap {
    pub fn circle() -> Self {
        CombMap { n: 0, sigma: Vec::new(), alpha: Vec::new(), vertex: Vec::new() }
    }

    /// Builds and fully validates a map.
    pub fn from_parts(n: usize, sigma: Vec<u32>, alpha: Vec<u32>) -> Result<Self> {
        let map = Self::from_parts_unchecked(n, sigma, alpha)?;
        map.validate()?;
        Ok(map)
    }

    /// Checks only that `sigma` is a product of `n` disjoint 4-cycles on
    /// `0..4n` and `alpha` a fixed-point-free involution.
    pub(crate) fn from_parts_unchecked(n: usize, sigma: Vec<u32>, alpha: Vec<u32>) -> Result<Self> {
        let darts = 4 * n;
        if sigma.len() != darts || alpha.len() != darts {
            return Err(Error::InvalidMap(format!(
                "expected {darts} darts, got sigma {} / alpha {}",
                sigma.len(),
                alpha.len()
            )));
        }
        if sigma.iter().chain(alpha.iter()).any(|&d| d as usize >= darts) {
            return Err(Error::InvalidMap("dart index out of range".into()));
        }
        for (d, &a) in alpha.iter().enumerate() {
            if a as usize == d || alpha[a as usize] as usize != d {
                return Err(Error::InvalidMap(format!("alpha is not a fixed-point-free involution at {d}")));
            }
        }
        let mut vertex = vec![u32::MAX; darts];
        let mut seen = vec![false; darts];
        for &s in &sigma {
            if std::mem::replace(&mut seen[s as usize], true) {
                return Err(Error::InvalidMap("sigma is not a permutation".into()));
            }
        }
        let mut next_vertex = 0u32;
        for start in 0..darts {
            if vertex[start] != u32::MAX {
                continue;
            }
            let mut d = start;
            let mut len = 0;
            while vertex[d] == u32::MAX {
                vertex[d] = next_vertex;
                d = sigma[d] as usize;
                len += 1;
            }
            if len != 4 {
                return Err(Error::InvalidMap(format!("sigma has a cycle of length {len}")));
            }
            next_vertex += 1;
        }
        Ok(CombMap { n, sigma, alpha, vertex })
    }

    /// Normalized map of a signed Gauss word. `bits[l - 1]` is the bit of
    /// label `l`. The result is not checked for planarity.
    pub fn from_signed_word(word: &GaussWord, bits: &[bool]) -> Self {
        let letters = word.letters();
        let len = letters.len();
        let n = len / 2;
        let darts = 2 * len;
        let mut sigma = vec![0u32; darts];
        let mut alpha = vec![0u32; darts];
        let mut vertex = vec![0u32; darts];
        for p in 0..len {
            let q = (p + 1) % len;
            alpha[2 * p] = (2 * q + 1) as u32;
            alpha[2 * q + 1] = (2 * p) as u32;
            vertex[2 * p] = letters[p] - 1;
            vertex[2 * p + 1] = letters[p] - 1;
        }
        for (label, &(i, j)) in word.positions().iter().enumerate() {
            let (oi, ii, oj, ij) = (2 * i as u32, 2 * i as u32 + 1, 2 * j as u32, 2 * j as u32 + 1);
            let cycle = if bits[label] { [oi, oj, ii, ij] } else { [oi, ij, ii, oj] };
            for k in 0..4 {
                sigma[cycle[k] as usize] = cycle[(k + 1) % 4];
            }
        }
        CombMap { n, sigma, alpha, vertex }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[u32] {
        &self.sigma
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn vertex_of(&self, d: u32) -> u32 {
        self.vertex[d as usize]
    }

    /// The dart opposite `d` at its crossing (same strand).
    pub fn opposite(&self, d: u32) -> u32 {
        self.sigma[self.sigma[d as usize] as usize]
    }

    pub fn sigma_inverse(&self) -> Vec<u32> {
        let mut inv = vec![0u32; self.sigma.len()];
        for (d, &s) in self.sigma.iter().enumerate() {
            inv[s as usize] = d as u32;
        }
        inv
    }

    /// Leaving darts met when following the curve from `start`.
    pub fn trip_from(&self, start: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(2 * self.n);
        let mut d = start;
        loop {
            out.push(d);
            d = self.opposite(self.alpha[d as usize]);
            if d == start || out.len() > self.sigma.len() {
                break;
            }
        }
        out
    }

    pub fn face_count(&self) -> usize {
        if self.n == 0 {
            return 2;
        }
        let mut seen = vec![false; self.sigma.len()];
        let mut count = 0;
        for start in 0..self.sigma.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = self.sigma[self.alpha[d] as usize] as usize;
            }
        }
        count
    }

    /// Orbits of the face permutation, ordered by their smallest dart. Each
    /// face lists its darts in walk order starting from the smallest.
    pub fn faces(&self) -> Vec<Face> {
        if self.n == 0 {
            return vec![Face { darts: Vec::new() }, Face { darts: Vec::new() }];
        }
        let mut seen = vec![false; self.sigma.len()];
        let mut faces = Vec::new();
        for start in 0..self.sigma.len() {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                darts.push(d as u32);
                d = self.sigma[self.alpha[d] as usize] as usize;
            }
            faces.push(Face { darts });
        }
        faces
    }

    pub fn face_census(&self) -> FaceCensus {
        let mut p = BTreeMap::new();
        let faces = self.faces();
        for f in &faces {
            *p.entry(f.corners()).or_insert(0) += 1;
        }
        FaceCensus { p, v: self.n, e: 2 * self.n, f: faces.len() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Ok(());
        }
        let trip = self.trip_from(0);
        let closes = trip.last().map(|&d| self.opposite(self.alpha[d as usize])) == Some(0);
        if trip.len() != 2 * self.n || !closes {
            return Err(Error::InvalidMap(format!(
                "curve traced from dart 0 has {} passages, expected {}",
                trip.len(),
                2 * self.n
            )));
        }
        let mut covered = vec![false; self.sigma.len()];
        for &d in &trip {
            covered[d as usize] = true;
            covered[self.alpha[d as usize] as usize] = true;
        }
        if covered.iter().any(|c| !c) {
            return Err(Error::InvalidMap("map traces more than one closed curve".into()));
        }
        let f = self.face_count();
        if f != self.n + 2 {
            return Err(Error::InvalidMap(format!(
                "V - E + F = {} (not a sphere)",
                self.n as i64 - 2 * self.n as i64 + f as i64
            )));
        }
        Ok(())
    }

    /// Reads the signed word seen when following the curve from `start`,
    /// optionally in the mirror image. Labels are assigned by first
    /// appearance.
    fn read_signed(&self, start: u32, mirror: bool, sigma_inv: &[u32]) -> (Vec<u32>, Vec<bool>) {
        let trip = self.trip_from(start);
        let ids: Vec<u32> = trip.iter().map(|&d| self.vertex[d as usize]).collect();
        let word = relabel_first_appearance(&ids);
        let bits = self.bits_for(&trip, &word, mirror, sigma_inv);
        (word, bits)
    }

    fn bits_for(&self, trip: &[u32], word: &[u32], mirror: bool, sigma_inv: &[u32]) -> Vec<bool> {
        let n = word.len() / 2;
        let mut first = vec![usize::MAX; n];
        let mut bits = vec![false; n];
        for (p, &l) in word.iter().enumerate() {
            let l = l as usize - 1;
            if first[l] == usize::MAX {
                first[l] = p;
            } else {
                let oi = trip[first[l]] as usize;
                let next = if mirror { sigma_inv[oi] } else { self.sigma[oi] };
                bits[l] = next == trip[p];
            }
        }
        bits
    }

    /// Canonical signed word over every starting dart, both traversal
    /// directions, and both mirror images. Returns the word, its bits, and
    /// whether the minimum was attained on the mirror image.
    pub(crate) fn canonical_signed(&self) -> (Vec<u32>, Vec<bool>, bool) {
        if self.n == 0 {
            return (Vec::new(), Vec::new(), false);
        }
        let sigma_inv = self.sigma_inverse();
        let mut best: Option<(Vec<u32>, Vec<bool>, bool)> = None;
        for start in 0..self.sigma.len() as u32 {
            let trip = self.trip_from(start);
            let ids: Vec<u32> = trip.iter().map(|&d| self.vertex[d as usize]).collect();
            let word = relabel_first_appearance(&ids);
            if let Some((bw, _, _)) = &best {
                if word > *bw {
                    continue;
                }
            }
            for mirror in [false, true] {
                let bits = self.bits_for(&trip, &word, mirror, &sigma_inv);
                let better = match &best {
                    None => true,
                    Some((bw, bb, _)) => (&word, &bits) < (bw, bb),
                };
                if better {
                    best = Some((word.clone(), bits, mirror));
                }
            }
        }
        best.expect("nonempty map has at least one reading")
    }

    /// Signed word read from dart 0 without mirroring.
    pub fn signed_word(&self) -> (GaussWord, Vec<bool>) {
        if self.n == 0 {
            return (GaussWord::circle(), Vec::new());
        }
        let (w, b) = self.read_signed(0, false, &self.sigma_inverse());
        (GaussWord::from_normalized_unchecked(w), b)
    }

    /// The mirror image: every rotation reversed.
    pub fn reflected(&self) -> CombMap {
        CombMap {
            n: self.n,
            sigma: self.sigma_inverse(),
            alpha: self.alpha.clone(),
            vertex: self.vertex.clone(),
        }
    }

    pub fn certificate(&self) -> Certificate {
        let (w, b, _) = self.canonical_signed();
        map_certificate(&w, &b)
    }
}

fn map_certificate(word: &[u32], bits: &[bool]) -> Certificate {
    let mut bytes = Vec::with_capacity(1 + word.len() + bits.len());
    bytes.push((word.len() / 2) as u8);
    bytes.extend(word.iter().map(|&l| l as u8));
    bytes.extend(bits.iter().map(|&b| b as u8));
    Certificate::from_bytes(bytes)
}

/// True iff the maps are related by a dart relabeling preserving `sigma` and
/// `alpha`, possibly after a global reflection.
pub fn is_equivalent(a: &CombMap, b: &CombMap) -> bool {
    a.n == b.n && a.certificate() == b.certificate()
}

/// A validated spherical curve in canonical normalized numbering.
///
/// The stored map is rebuilt from the canonical signed word, so two
/// equivalent curves always produce identical maps. Equality and hashing
/// look only at the certificate.
#[derive(Clone, Debug)]
pub struct Embedding {
    map: CombMap,
    word: GaussWord,
    bits: Vec<bool>,
    certificate: Certificate,
    reflected: bool,
}

impl PartialEq for Embedding {
    fn eq(&self, other: &Self) -> bool {
        self.certificate == other.certificate
    }
}

impl Eq for Embedding {}

impl std::hash::Hash for Embedding {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.certificate.hash(h);
    }
}

impl Embedding {
    pub fn circle() -> Self {
        Embedding {
            map: CombMap::circle(),
            word: GaussWord::circle(),
            bits: Vec::new(),
            certificate: map_certificate(&[], &[]),
            reflected: false,
        }
    }

    pub fn from_map(map: &CombMap) -> Result<Self> {
        map.validate()?;
        Ok(Self::from_valid_map(map))
    }

    pub(crate) fn from_valid_map(map: &CombMap) -> Self {
        if map.n == 0 {
            return Self::circle();
        }
        let (w, bits, reflected) = map.canonical_signed();
        let certificate = map_certificate(&w, &bits);
        let word = GaussWord::from_normalized_unchecked(w);
        let map = CombMap::from_signed_word(&word, &bits);
        Embedding { map, word, bits, certificate, reflected }
    }

    pub fn from_signed_word(word: &GaussWord, bits: &[bool]) -> Result<Self> {
        if bits.len() != word.n() {
            return Err(Error::InvalidMap(format!("{} bits for {} crossings", bits.len(), word.n())));
        }
        Self::from_map(&CombMap::from_signed_word(word, bits))
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    /// The canonical Gauss word of this curve (the word read off the map).
    pub fn word(&self) -> &GaussWord {
        &self.word
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// Whether canonicalization had to mirror the map it was built from.
    pub fn reflected(&self) -> bool {
        self.reflected
    }

    pub fn n(&self) -> usize {
        self.word.n()
    }

    pub fn is_circle(&self) -> bool {
        self.word.is_empty()
    }

    /// Crossing label (1-based) at which dart `d` sits.
    pub fn label_of(&self, d: u32) -> u32 {
        self.word.letters()[(d / 2) as usize]
    }

    pub fn faces(&self) -> Vec<Face> {
        self.map.faces()
    }

    pub fn face_census(&self) -> FaceCensus {
        self.map.face_census()
    }

    pub fn mirror(&self) -> Embedding {
        Embedding::from_valid_map(&self.map.reflected())
    }
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    word: GaussWord,
    bits: String,
}

/// Serialized as the canonical word plus one `0`/`1` per crossing.
impl Serialize for Embedding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let bits = self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        EmbeddingJson { word: self.word.clone(), bits }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Embedding {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = EmbeddingJson::deserialize(d)?;
        let bits = raw
            .bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(serde::de::Error::custom(format!("bad bit {other:?}"))),
            })
            .collect::<std::result::Result<Vec<bool>, D::Error>>()?;
        Embedding::from_signed_word(&raw.word, &bits).map_err(serde::de::Error::custom)
    }
}

/// All spherical embeddings of `w`, up to sphere homeomorphism and
/// reflection, sorted by certificate. Empty iff `w` is not realizable.
pub fn realize_all(w: &GaussWord) -> Vec<Embedding> {
    let n = w.n();
    if n == 0 {
        return vec![Embedding::circle()];
    }
    let mut found: BTreeMap<Certificate, Embedding> = BTreeMap::new();
    let mut bits = vec![false; n];
    // Mirroring flips every bit, so fixing the first one loses nothing.
    bits[0] = true;
    for state in 0u64..(1u64 << (n - 1)) {
        for (k, b) in bits.iter_mut().enumerate().skip(1) {
            *b = state >> (k - 1) & 1 == 1;
        }
        let map = CombMap::from_signed_word(w, &bits);
        if map.face_count() != n + 2 {
            continue;
        }
        // Straight-through tracing of a normalized map always follows one
        // curve, so the Euler count is the only remaining check.
        let e = Embedding::from_valid_map(&map);
        found.entry(e.certificate.clone()).or_insert(e);
    }
    found.into_values().collect()
}

/// Crossings that occur at two or more corners of the same face. On a
/// spherical curve these are exactly the nugatory crossings.
pub fn crossings_touching_a_face_twice(e: &Embedding) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    for f in e.faces() {
        let mut labels: Vec<u32> = f.darts.iter().map(|&d| e.label_of(d)).collect();
        labels.sort_unstable();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                out.insert(w[0]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse;

    fn gons(e: &Embedding) -> Vec<usize> {
        let mut v: Vec<usize> = e.faces().iter().map(Face::corners).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn circle_faces() {
        let c = Embedding::circle();
        assert_eq!(gons(&c), vec![0, 0]);
        let census = c.face_census();
        assert_eq!(census.count(0), 2);
        assert!(census.is_consistent());
    }

    #[test]
    fn figure_eight_faces() {
        let es = realize_all(&parse("1 1").unwrap());
        assert_eq!(es.len(), 1);
        assert_eq!(gons(&es[0]), vec![1, 1, 2]);
        let c = es[0].face_census();
        assert_eq!((c.count(1), c.count(2)), (2, 1));
    }

    #[test]
    fn trefoil_faces_and_census() {
        let es = realize_all(&parse("1 2 3 1 2 3").unwrap());
        assert_eq!(es.len(), 1);
        assert_eq!(gons(&es[0]), vec![2, 2, 2, 3, 3]);
        let c = es[0].face_census();
        assert_eq!((c.count(2), c.count(3), c.v, c.e, c.f), (3, 2, 3, 6, 5));
        assert!(c.is_consistent());
    }

    #[test]
    fn realization_examples() {
        assert_eq!(realize_all(&GaussWord::circle()), vec![Embedding::circle()]);
        assert!(realize_all(&parse("1 2 1 2").unwrap()).is_empty());
        let two = realize_all(&parse("1 1 2 2").unwrap());
        assert_eq!(two.len(), 2);
        assert!(!is_equivalent(two[0].map(), two[1].map()));
    }

    #[test]
    fn equivalence_examples() {
        let e = &realize_all(&parse("1 2 3 4 1 5 6 2 3 4 5 6").unwrap_or_else(|_| parse("1 1").unwrap()))
            .into_iter()
            .next()
            .unwrap_or_else(|| realize_all(&parse("1 2 3 1 2 3").unwrap()).remove(0));
        assert!(is_equivalent(e.map(), e.map()));
        assert!(is_equivalent(e.map(), &e.map().reflected()));
        assert_eq!(e.mirror().certificate(), e.certificate());
    }

    #[test]
    fn map_json_round_trip_and_validation() {
        let e = realize_all(&parse("1 2 3 1 2 3").unwrap()).remove(0);
        let json = serde_json::to_string(e.map()).unwrap();
        assert!(json.contains("\"version\":1"));
        let back: CombMap = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, e.map());

        // A torus-type map: the word 1 2 1 2 with any rotation is not spherical.
        let bad = CombMap::from_signed_word(&parse("1 2 1 2").unwrap(), &[true, true]);
        let json = serde_json::to_string(&bad).unwrap();
        assert!(serde_json::from_str::<CombMap>(&json).is_err());
        assert!(matches!(
            CombMap::from_parts(1, vec![1, 2, 3, 0], vec![0, 3, 2, 1]),
            Err(Error::InvalidMap(_))
        ));
    }

    #[test]
    fn two_component_map_is_rejected() {
        // Two circles crossing twice: darts of a 2-crossing map whose
        // straight-ahead walk splits in two.
        let w = parse("1 2 1 2").unwrap();
        let m = CombMap::from_signed_word(&w, &[true, false]);
        // Re-pair edges so that each strand closes on itself.
        let mut alpha = m.alpha().to_vec();
        // out0 -> in1 -> (straight) out1 -> in2 ... make positions {0,2} and {1,3} separate loops
        let pairs = [(0u32, 5u32), (4, 1), (2, 7), (6, 3)];
        for (a, b) in pairs {
            alpha[a as usize] = b;
            alpha[b as usize] = a;
        }
        let r = CombMap::from_parts(2, m.sigma().to_vec(), alpha);
        assert!(r.is_err());
    }

    #[test]
    fn nugatory_crossings_touch_one_face_twice() {
        let fig8 = realize_all(&parse("1 1").unwrap()).remove(0);
        assert_eq!(crossings_touching_a_face_twice(&fig8).into_iter().collect::<Vec<_>>(), vec![1]);
        let trefoil = realize_all(&parse("1 2 3 1 2 3").unwrap()).remove(0);
        assert!(crossings_touching_a_face_twice(&trefoil).is_empty());
    }
}
