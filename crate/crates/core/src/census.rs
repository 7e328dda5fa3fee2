//! Exhaustive enumeration of spherical curves and the on-disk catalog.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chords::{chord_diagram, find_patterns, has_triple, is_prime, prime_factors, triangle_classes, PatternKind};
use crate::cmap::{realize_all, Embedding};
use crate::error::{Error, Result};
use crate::moves::{apply_unchecked, bigon_type, enumerate_moves, BigonType, MoveKind};
use crate::reduce::{reduce_to_pr, reductivity, strong_build_check, ReductivityResult, DEFAULT_REDUCTIVITY_DEPTH};
use crate::word::{canonical_letters, parity_ok, Certificate, GaussWord};

pub const CATALOG_SCHEMA_VERSION: u64 = 1;

/// Every normalized double-occurrence word with `n` letters, in
/// lexicographic order.
pub fn normalized_words(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(2 * n);
    let mut seen = vec![0u8; n + 1];
    extend_words(n, &mut buf, &mut seen, 1, &mut |w| out.push(w.to_vec()));
    out
}

fn extend_words(n: usize, buf: &mut Vec<u32>, seen: &mut [u8], next: u32, emit: &mut dyn FnMut(&[u32])) {
    if buf.len() == 2 * n {
        emit(buf);
        return;
    }
    for l in 1..next {
        if seen[l as usize] == 1 {
            seen[l as usize] = 2;
            buf.push(l);
            extend_words(n, buf, seen, next, emit);
            buf.pop();
            seen[l as usize] = 1;
        }
    }
    if (next as usize) <= n {
        seen[next as usize] = 1;
        buf.push(next);
        extend_words(n, buf, seen, next + 1, emit);
        buf.pop();
        seen[next as usize] = 0;
    }
}

/// Canonical words with `n` letters that pass the parity filter.
pub fn candidate_words(n: usize) -> Vec<GaussWord> {
    canonical_words(n, true)
}

/// Canonical words with `n` letters, optionally only those passing the
/// parity filter.
pub fn canonical_words(n: usize, parity_only: bool) -> Vec<GaussWord> {
    if n == 0 {
        return vec![GaussWord::circle()];
    }
    // Split the search on short prefixes and finish each in parallel.
    let depth = (2 * n).min(6);
    let mut prefixes = Vec::new();
    {
        let mut buf = Vec::new();
        let mut seen = vec![0u8; n + 1];
        collect_prefixes(n, depth, &mut buf, &mut seen, 1, &mut prefixes);
    }
    let mut words: Vec<GaussWord> = prefixes
        .par_iter()
        .flat_map_iter(|(prefix, seen, next)| {
            let mut local = Vec::new();
            let mut buf = prefix.clone();
            let mut seen = seen.clone();
            extend_words(n, &mut buf, &mut seen, *next, &mut |w| {
                if (!parity_only || parity_ok(w)) && canonical_letters(w) == w {
                    local.push(GaussWord::from_normalized_unchecked(w.to_vec()));
                }
            });
            local
        })
        .collect();
    words.sort();
    words
}

type Prefix = (Vec<u32>, Vec<u8>, u32);

fn collect_prefixes(n: usize, depth: usize, buf: &mut Vec<u32>, seen: &mut [u8], next: u32, out: &mut Vec<Prefix>) {
    if buf.len() == depth {
        out.push((buf.clone(), seen.to_vec(), next));
        return;
    }
    for l in 1..next {
        if seen[l as usize] == 1 {
            seen[l as usize] = 2;
            buf.push(l);
            collect_prefixes(n, depth, buf, seen, next, out);
            buf.pop();
            seen[l as usize] = 1;
        }
    }
    if (next as usize) <= n {
        seen[next as usize] = 1;
        buf.push(next);
        collect_prefixes(n, depth, buf, seen, next + 1, out);
        buf.pop();
        seen[next as usize] = 0;
    }
}

/// One embedding per spherical curve with at most `n_max` crossings, sorted
/// by crossing number and certificate.
pub fn enumerate_embeddings(n_max: usize) -> Vec<Embedding> {
    let mut all: BTreeMap<(usize, Certificate), Embedding> = BTreeMap::new();
    for n in 0..=n_max {
        let words = candidate_words(n);
        let found: Vec<Embedding> = words.par_iter().flat_map_iter(realize_all).collect();
        for e in found {
            all.entry((e.n(), e.certificate().clone())).or_insert(e);
        }
    }
    all.into_values().collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigonCounts {
    pub strong: usize,
    pub weak: usize,
}

/// One curve with its derived properties. Everything except `embedding` is
/// a cache and can be recomputed with [`CatalogRecord::from_embedding`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub certificate: Certificate,
    pub word: GaussWord,
    pub n: usize,
    pub embedding: Embedding,
    pub faces: BTreeMap<String, usize>,
    pub prime: bool,
    pub factor_count: usize,
    pub has_cross: bool,
    pub has_h: bool,
    pub has_triple: bool,
    pub bigons: BigonCounts,
    pub triangle_kappas: Vec<u8>,
    pub reductivity: ReductivityResult,
    pub pr_certificate: Certificate,
    pub strong_trivializable: bool,
}

impl CatalogRecord {
    pub fn from_embedding(e: &Embedding) -> Result<Self> {
        let cd = chord_diagram(e.word());
        let mut bigons = BigonCounts::default();
        for f in e.faces() {
            match bigon_type(e, &f.darts)? {
                Some(BigonType::Strong) => bigons.strong += 1,
                Some(BigonType::Weak) => bigons.weak += 1,
                None => {}
            }
        }
        let mut triangle_kappas: Vec<u8> = triangle_classes(e).iter().map(|t| t.kappa).collect();
        triangle_kappas.sort_unstable();
        let (pr, _) = reduce_to_pr(e)?;
        Ok(CatalogRecord {
            certificate: e.certificate().clone(),
            word: e.word().clone(),
            n: e.n(),
            embedding: e.clone(),
            faces: e.face_census().gon_counts(),
            prime: is_prime(&cd),
            factor_count: prime_factors(&cd).len(),
            has_cross: !find_patterns(&cd, PatternKind::Cross).is_empty(),
            has_h: !find_patterns(&cd, PatternKind::H).is_empty(),
            has_triple: has_triple(&cd),
            bigons,
            triangle_kappas,
            reductivity: reductivity(e, DEFAULT_REDUCTIVITY_DEPTH)?,
            pr_certificate: pr.certificate().clone(),
            strong_trivializable: strong_build_check(e)?.is_some(),
        })
    }

    /// Recomputes every cached field from the embedding and compares.
    pub fn is_consistent(&self) -> Result<bool> {
        Ok(&CatalogRecord::from_embedding(&self.embedding)? == self)
    }
}

/// Records for every curve with at most `n_max` crossings.
pub fn enumerate(n_max: usize) -> Result<Vec<CatalogRecord>> {
    enumerate_embeddings(n_max).par_iter().map(CatalogRecord::from_embedding).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    /// Crossing bound the catalog is complete for.
    pub n_max: usize,
    pub records: Vec<CatalogRecord>,
}

impl Catalog {
    pub fn build(n_max: usize) -> Result<Self> {
        Ok(Catalog { n_max, records: enumerate(n_max)? })
    }

    pub fn up_to(&self, n_max: usize) -> impl Iterator<Item = &CatalogRecord> {
        self.records.iter().filter(move |r| r.n <= n_max)
    }
}

#[derive(Serialize, Deserialize)]
struct Header {
    schema_version: u64,
    #[serde(default)]
    n_max: Option<usize>,
}

pub fn catalog_write(catalog: &Catalog, path: &Path) -> Result<()> {
    let mut records: Vec<&CatalogRecord> = catalog.records.iter().collect();
    records.sort_by(|a, b| (a.n, &a.certificate).cmp(&(b.n, &b.certificate)));
    let mut out = BufWriter::new(File::create(path)?);
    let header = Header { schema_version: CATALOG_SCHEMA_VERSION, n_max: Some(catalog.n_max) };
    writeln!(out, "{}", serde_json::to_string(&header)?)?;
    for r in records {
        writeln!(out, "{}", serde_json::to_string(r)?)?;
    }
    out.flush()?;
    Ok(())
}

pub fn catalog_read(path: &Path) -> Result<Catalog> {
    let mut lines = BufReader::new(File::open(path)?).lines();
    let first = lines.next().transpose()?.unwrap_or_default();
    let header: serde_json::Value = serde_json::from_str(&first)?;
    let found = header.get("schema_version").and_then(|v| v.as_u64()).unwrap_or(0);
    if found != CATALOG_SCHEMA_VERSION {
        return Err(Error::SchemaVersionMismatch { found, expected: CATALOG_SCHEMA_VERSION });
    }
    let header: Header = serde_json::from_value(header)?;
    let mut records = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let r: CatalogRecord = serde_json::from_str(&line)?;
        if r.embedding.certificate() != &r.certificate {
            return Err(Error::Internal(format!("record {} does not match its embedding", r.certificate)));
        }
        records.push(r);
    }
    let n_max = header.n_max.unwrap_or_else(|| records.iter().map(|r| r.n).max().unwrap_or(0));
    Ok(Catalog { n_max, records })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub n_max: usize,
    /// Curves per crossing number found from realizable words.
    pub word_counts: Vec<usize>,
    /// Curves per crossing number grown from the circle by insertions.
    pub move_counts: Vec<usize>,
    /// Grown curves that the word enumeration missed. Must be empty.
    pub missing_from_words: Vec<Certificate>,
}

impl CrossValidation {
    pub fn agree(&self) -> bool {
        self.word_counts == self.move_counts && self.missing_from_words.is_empty()
    }
}

/// Curves reachable from the circle by kink and bigon insertions, with at
/// most `n_max` crossings, bucketed by crossing number.
pub fn grow_by_insertions(n_max: usize) -> Result<Vec<BTreeMap<Certificate, Embedding>>> {
    let kinds = [MoveKind::R1a, MoveKind::S2a, MoveKind::W2a];
    let mut buckets: Vec<BTreeMap<Certificate, Embedding>> = vec![BTreeMap::new(); n_max + 1];
    let circle = Embedding::circle();
    buckets[0].insert(circle.certificate().clone(), circle);
    for n in 0..=n_max {
        let current: Vec<Embedding> = buckets[n].values().cloned().collect();
        let children: Vec<Result<Vec<Embedding>>> = current
            .par_iter()
            .map(|e| {
                let mut out = Vec::new();
                for s in enumerate_moves(e, &kinds)? {
                    if e.n() as i32 + s.kind.delta() <= n_max as i32 {
                        out.push(apply_unchecked(e, &s)?);
                    }
                }
                Ok(out)
            })
            .collect();
        for c in children {
            for child in c? {
                buckets[child.n()].entry(child.certificate().clone()).or_insert(child);
            }
        }
    }
    Ok(buckets)
}

/// Counts curves two independent ways and compares.
pub fn cross_validate(n_max: usize) -> Result<CrossValidation> {
    let words = enumerate_embeddings(n_max);
    let mut word_counts = vec![0; n_max + 1];
    let word_certs: BTreeSet<&Certificate> = words.iter().map(|e| e.certificate()).collect();
    for e in &words {
        word_counts[e.n()] += 1;
    }
    let grown = grow_by_insertions(n_max)?;
    let move_counts = grown.iter().map(BTreeMap::len).collect();
    let missing_from_words = grown
        .iter()
        .flat_map(|b| b.keys())
        .filter(|c| !word_certs.contains(c))
        .cloned()
        .collect();
    Ok(CrossValidation { n_max, word_counts, move_counts, missing_from_words })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_generation_counts() {
        // (2n - 1)!! normalized words.
        assert_eq!(normalized_words(1).len(), 1);
        assert_eq!(normalized_words(3).len(), 15);
        assert_eq!(normalized_words(4).len(), 105);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate(0).unwrap().len(), 1);
        let one = enumerate(1).unwrap();
        assert_eq!(one.len(), 2);
        assert_eq!(one[1].word.to_string(), "1 1");
        assert_eq!(enumerate(2).unwrap().len(), 4);
    }

    #[test]
    fn cross_validation_small() {
        for n in 0..=3 {
            let cv = cross_validate(n).unwrap();
            assert!(cv.agree(), "{cv:?}");
        }
        assert_eq!(cross_validate(2).unwrap().word_counts, vec![1, 1, 2]);
    }

    #[test]
    fn catalog_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let cat = Catalog::build(2).unwrap();
        catalog_write(&cat, &path).unwrap();
        assert_eq!(catalog_read(&path).unwrap(), cat);

        let empty = Catalog { n_max: 0, records: Vec::new() };
        catalog_write(&empty, &path).unwrap();
        assert_eq!(catalog_read(&path).unwrap(), empty);

        std::fs::write(&path, "{\"schema_version\":7}\n").unwrap();
        assert!(matches!(catalog_read(&path), Err(Error::SchemaVersionMismatch { found: 7, .. })));
    }
}
