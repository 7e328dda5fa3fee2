//! Verification suites run over a catalog of curves.
//!
//! Each suite evaluates one universal statement over every qualifying
//! record and reports the records where it fails.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::census::{canonical_words, cross_validate, normalized_words, Catalog};
use crate::chords::{
    chord_diagram, find_patterns, has_triple, is_prime, reducible_chords, triangle_classes, two_point_cuts_with,
    ChordDiagram, CutPattern, PatternKind,
};
use crate::cmap::{crossings_touching_a_face_twice, realize_all, Embedding};
use crate::error::{Error, Result};
use crate::moves::{a_inverse, a_inverse_word, apply, enumerate_moves, MoveKind};
use crate::reduce::{invert_trace, pr_uniqueness_check, reduce_to_pr, reductivity, strong_build_check};
use crate::word::{Certificate, GaussWord};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Suite ids with the largest crossing number each is run at by
/// [`run_all`].
pub const SUITES: [(&str, usize); 13] = [
    ("T1", 7),
    ("T1b", 8),
    ("T2", 8),
    ("T3", 8),
    ("T4", 8),
    ("T5", 7),
    ("T5b", 7),
    ("T6", 6),
    ("T7", 8),
    ("T8", 8),
    ("T9", 8),
    ("T10", 7),
    ("T11", 6),
];

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub certificate: Certificate,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub n_min: usize,
    pub n_max: usize,
    pub instances: usize,
    pub counterexamples: Vec<Counterexample>,
    pub pass: bool,
    /// Suite-specific tallies.
    pub details: Value,
    /// Not part of [`SuiteReport::payload`].
    pub wall_ms: u64,
}

impl SuiteReport {
    /// The report without timing, for reproducibility comparisons.
    pub fn payload(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("report is an object").remove("wall_ms");
        v
    }
}

impl PartialEq for SuiteReport {
    fn eq(&self, other: &Self) -> bool {
        self.payload() == other.payload()
    }
}

struct Outcome {
    instances: usize,
    counterexamples: Vec<Counterexample>,
    details: Value,
}

type Check<'a> = dyn Fn(&Embedding) -> Result<Option<String>> + Sync + 'a;

/// Applies `check` to every embedding for which `qualifies` holds. The check
/// returns a failure reason; errors are reported as failures too.
fn over_records(
    records: &[&Embedding],
    qualifies: &(dyn Fn(&Embedding) -> Result<bool> + Sync),
    check: &Check<'_>,
) -> Outcome {
    let results: Vec<Option<Option<Counterexample>>> = records
        .par_iter()
        .map(|e| {
            let ce = |reason: String| Counterexample { certificate: e.certificate().clone(), reason };
            match qualifies(e) {
                Ok(false) => None,
                Err(err) => Some(Some(ce(format!("error: {err}")))),
                Ok(true) => Some(match check(e) {
                    Ok(None) => None,
                    Ok(Some(reason)) => Some(ce(reason)),
                    Err(err) => Some(ce(format!("error: {err}"))),
                }),
            }
        })
        .collect();
    let instances = results.iter().filter(|r| r.is_some()).count();
    let counterexamples = results.into_iter().flatten().flatten().collect();
    Outcome { instances, counterexamples, details: Value::Null }
}

fn census_of(e: &Embedding) -> (usize, usize) {
    let c = e.face_census();
    (c.count(1), c.count(2))
}

fn cd(e: &Embedding) -> ChordDiagram {
    chord_diagram(e.word())
}

fn is_reduced(e: &Embedding) -> bool {
    !e.is_circle() && reducible_chords(&cd(e)).is_empty()
}

fn r_is_one(e: &Embedding) -> Result<bool> {
    Ok(reductivity(e, 1)?.value() == Some(1))
}

/// Runs suite `id` over the records of `catalog` with at most `n_max`
/// crossings.
pub fn run_suite(id: &str, n_max: usize, catalog: &Catalog) -> Result<SuiteReport> {
    let canonical_id = SUITES
        .iter()
        .find(|(s, _)| s.eq_ignore_ascii_case(id))
        .map(|(s, _)| *s)
        .ok_or_else(|| Error::UnknownSuite(id.to_string()))?;
    if catalog.n_max < n_max {
        return Err(Error::CatalogIncomplete { have: catalog.n_max, need: n_max });
    }
    let start = Instant::now();
    let records: Vec<&Embedding> = catalog.up_to(n_max).map(|r| &r.embedding).collect();
    let yes = |_: &Embedding| -> Result<bool> { Ok(true) };
    let mut out = match canonical_id {
        "T1" => over_records(
            &records,
            &|e| {
                if has_triple(&cd(e)) {
                    return Ok(false);
                }
                let (pr, _) = reduce_to_pr(e)?;
                Ok(pr.is_circle() || is_prime(&cd(&pr)))
            },
            &|e| {
                let Some(down) = strong_build_check(e)? else {
                    return Ok(Some("no kink/strong-bigon reduction to the circle".into()));
                };
                let up = invert_trace(&down)?;
                Ok((up.end.certificate() != e.certificate()).then(|| "rebuilt curve differs".into()))
            },
        ),
        "T1b" => over_records(
            &records,
            &|e| Ok(census_of(e) == (0, 0) && is_prime(&cd(e)) && !has_triple(&cd(e))),
            &|e| Ok((!e.is_circle()).then(|| "triple-free prime curve without 1- or 2-gons".into())),
        ),
        "T2" => {
            let qualifies = |e: &Embedding| !e.is_circle() && census_of(e) == (0, 0) && is_prime(&cd(e));
            let mut o = over_records(&records, &|e| Ok(qualifies(e)), &|e| {
                Ok((!has_triple(&cd(e))).then(|| "no triple chord".into()))
            });
            let smallest = records.iter().filter(|e| qualifies(e)).map(|e| e.n()).min();
            o.details = json!({ "smallest_n": smallest });
            o
        }
        "T3" => {
            let mut o = over_records(&records, &|e| Ok(!e.is_circle() && census_of(e) == (0, 0)), &|e| {
                let c = e.face_census();
                let id = c.triangle_identity();
                Ok((id != 8 || c.count(3) < 8).then(|| format!("identity gives {id}, p3 = {}", c.count(3))))
            });
            let smallest = records.iter().filter(|e| !e.is_circle() && census_of(e) == (0, 0)).map(|e| e.n()).min();
            o.details = json!({ "smallest_n": smallest });
            o
        }
        "T4" => {
            let mut kappas: BTreeMap<String, usize> = BTreeMap::new();
            for e in records.iter().filter(|e| !e.is_circle() && census_of(e) == (0, 0)) {
                for t in triangle_classes(e) {
                    *kappas.entry(t.label().to_string()).or_default() += 1;
                }
            }
            let mut o = over_records(
                &records,
                &|e| {
                    Ok(!e.is_circle()
                        && census_of(e) == (0, 0)
                        && is_prime(&cd(e))
                        && triangle_classes(e).iter().any(|t| t.kappa >= 1))
                },
                &|e| Ok((!has_triple(&cd(e))).then(|| "A/B/C triangle without triple chord".into())),
            );
            o.details = json!({ "triangle_labels": kappas });
            o
        }
        "T5" => {
            let mut o = over_records(&records, &|e| Ok(is_reduced(e)), &|e| {
                let r1 = r_is_one(e)?;
                let cut = !two_point_cuts_with(&cd(e), &[CutPattern::Interleaved]).is_empty();
                Ok((r1 != cut).then(|| format!("reductivity one: {r1}, two-point cut: {cut}")))
            });
            // The other arrangement, tallied for comparison only.
            let mismatches = |patterns: &'static [CutPattern]| {
                records
                    .par_iter()
                    .filter(|e| is_reduced(e))
                    .filter(|e| r_is_one(e).unwrap_or(false) != !two_point_cuts_with(&cd(e), patterns).is_empty())
                    .count()
            };
            o.details = json!({
                "mismatches_interleaved": mismatches(&[CutPattern::Interleaved]),
                "mismatches_non_interleaved": mismatches(&[CutPattern::NonInterleaved]),
                "mismatches_both": mismatches(&[CutPattern::Interleaved, CutPattern::NonInterleaved]),
            });
            o
        }
        "T5b" => over_records(
            &records,
            &|e| Ok(is_reduced(e) && r_is_one(e)?),
            &|e| Ok((!has_triple(&cd(e))).then(|| "reductivity one without triple chord".into())),
        ),
        "T6" => {
            let results: Vec<(usize, Vec<Counterexample>)> = records
                .par_iter()
                .map(|e| {
                    let mut bad = Vec::new();
                    let sites = match enumerate_moves(e, &[MoveKind::W2a]) {
                        Ok(s) => s,
                        Err(err) => {
                            let reason = format!("error: {err}");
                            return (1, vec![Counterexample { certificate: e.certificate().clone(), reason }]);
                        }
                    };
                    for s in &sites {
                        let reason = match apply(e, s) {
                            Ok(r) if has_triple(&cd(&r)) => continue,
                            Ok(_) => format!("{:?} gives no triple chord", s.locus),
                            Err(err) => format!("error: {err}"),
                        };
                        bad.push(Counterexample { certificate: e.certificate().clone(), reason });
                    }
                    (sites.len(), bad)
                })
                .collect();
            Outcome {
                instances: results.iter().map(|r| r.0).sum(),
                counterexamples: results.into_iter().flat_map(|r| r.1).collect(),
                details: Value::Null,
            }
        }
        "T7" => over_records(
            &records,
            &|e| Ok(census_of(e).0 == 0 && is_prime(&cd(e))),
            &|e| {
                let r = reducible_chords(&cd(e));
                Ok((!r.is_empty()).then(|| format!("reducible crossings {r:?}")))
            },
        ),
        "T8" => over_records(&records, &|e| Ok(is_reduced(e)), &|e| {
            let c = e.face_census();
            Ok((c.count(1) != 0 || (c.count(2) == 0 && c.count(3) == 0))
                .then(|| format!("faces {:?}", c.gon_counts())))
        }),
        "T9" => oracle_suite(&records, n_max, &yes),
        "T10" => over_records(&records, &yes, &|e| {
            Ok((!pr_uniqueness_check(e)?).then(|| "decreasing moves reach different curves".into()))
        }),
        "T11" => {
            let cv = cross_validate(n_max)?;
            let mut counterexamples: Vec<Counterexample> = cv
                .missing_from_words
                .iter()
                .map(|c| Counterexample { certificate: c.clone(), reason: "grown curve missing from census".into() })
                .collect();
            if cv.word_counts != cv.move_counts {
                counterexamples.push(Counterexample {
                    certificate: Certificate::from_bytes(Vec::new()),
                    reason: format!("counts differ: words {:?}, moves {:?}", cv.word_counts, cv.move_counts),
                });
            }
            Outcome {
                instances: cv.word_counts.iter().sum(),
                counterexamples,
                details: json!({ "word_counts": cv.word_counts, "move_counts": cv.move_counts }),
            }
        }
        _ => unreachable!("suite table and dispatch agree"),
    };
    out.counterexamples.sort();
    Ok(SuiteReport {
        schema_version: REPORT_SCHEMA_VERSION,
        suite: canonical_id.to_string(),
        n_min: 0,
        n_max,
        instances: out.instances,
        pass: out.counterexamples.is_empty(),
        counterexamples: out.counterexamples,
        details: out.details,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Every suite, each at `min(n_max, its own bound)`.
pub fn run_all(n_max: usize, catalog: &Catalog) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|(id, bound)| run_suite(id, n_max.min(*bound), catalog)).collect()
}

/// Interleavement decided from the word alone: restricted to `a` and `b`
/// the word alternates.
fn alternates(letters: &[u32], a: u32, b: u32) -> bool {
    let r: Vec<u32> = letters.iter().copied().filter(|&l| l == a || l == b).collect();
    r[0] != r[1] && r[0] == r[2]
}

fn brute_force_patterns(w: &[u32], n: u32) -> [Vec<Vec<u32>>; 3] {
    let mut cross = Vec::new();
    let mut h = Vec::new();
    let mut triple = Vec::new();
    let mut adj = vec![vec![false; n as usize + 1]; n as usize + 1];
    for a in 1..=n {
        for b in a + 1..=n {
            let x = alternates(w, a, b);
            adj[a as usize][b as usize] = x;
            if x {
                cross.push(vec![a, b]);
            }
        }
    }
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                let k = [adj[a as usize][b as usize], adj[a as usize][c as usize], adj[b as usize][c as usize]]
                    .iter()
                    .filter(|&&x| x)
                    .count();
                match k {
                    3 => triple.push(vec![a, b, c]),
                    2 => h.push(vec![a, b, c]),
                    _ => {}
                }
            }
        }
    }
    [cross, h, triple]
}

fn patterns_agree(letters: &[u32]) -> bool {
    let w = GaussWord::from_normalized_unchecked(letters.to_vec());
    let d = chord_diagram(&w);
    let oracle = brute_force_patterns(letters, w.n() as u32);
    [PatternKind::Cross, PatternKind::H, PatternKind::Triple].iter().zip(oracle.iter()).all(|(&k, expected)| {
        let got: Vec<Vec<u32>> = find_patterns(&d, k).into_iter().map(|h| h.chords).collect();
        &got == expected
    }) && has_triple(&d) == !oracle[2].is_empty()
}

/// Detectors against independent oracles: patterns on every labelled
/// diagram, realizability against parity and trip re-reading, and the two
/// smoothing routes.
fn oracle_suite(records: &[&Embedding], n_max: usize, yes: &(dyn Fn(&Embedding) -> Result<bool> + Sync)) -> Outcome {
    let mut counterexamples = Vec::new();
    let mut pattern_checks = 0usize;
    for n in 0..=n_max {
        let words = normalized_words(n);
        pattern_checks += words.len();
        let bad: Vec<Counterexample> = words
            .par_iter()
            .filter(|w| !patterns_agree(w))
            .map(|w| Counterexample {
                certificate: GaussWord::from_normalized_unchecked(w.clone()).canonicalize().certificate,
                reason: "pattern detector disagrees with brute force".into(),
            })
            .collect();
        counterexamples.extend(bad);
    }

    let mut realizability_checks = 0usize;
    for n in 0..=n_max {
        let words = canonical_words(n, false);
        realizability_checks += words.len();
        let bad: Vec<Counterexample> = words
            .par_iter()
            .filter_map(|w| {
                let embeddings = realize_all(w);
                let reason = if !w.parity_filter() && !embeddings.is_empty() {
                    "realizable word fails the parity filter".to_string()
                } else {
                    let e = embeddings.iter().find(|e| e.word().canonicalize() != w.canonicalize())?;
                    format!("embedding {} re-reads a different word", e.certificate())
                };
                Some(Counterexample { certificate: w.canonicalize().certificate, reason })
            })
            .collect();
        counterexamples.extend(bad);
    }

    let per_curve = over_records(records, yes, &|e| {
        let (read, _) = e.map().signed_word();
        if read.canonicalize() != e.word().canonicalize() {
            return Ok(Some("trip reading disagrees with stored word".into()));
        }
        if !e.face_census().is_consistent() {
            return Ok(Some("face census violates Euler or corner counts".into()));
        }
        let reducible: Vec<u32> = reducible_chords(&cd(e)).into_iter().collect();
        let nugatory: Vec<u32> = crossings_touching_a_face_twice(e).into_iter().collect();
        if reducible != nugatory {
            return Ok(Some(format!("reducible chords {reducible:?} but nugatory crossings {nugatory:?}")));
        }
        for c in 1..=e.n() as u32 {
            let by_map = a_inverse(e, c)?;
            let by_word = a_inverse_word(e.word(), c)?;
            if by_map.word().canonicalize() != by_word.canonicalize() {
                return Ok(Some(format!("smoothing at {c} differs between map and word")));
            }
        }
        Ok(None)
    });
    counterexamples.extend(per_curve.counterexamples);
    Outcome {
        instances: pattern_checks + realizability_checks + per_curve.instances,
        counterexamples,
        details: json!({
            "pattern_diagrams": pattern_checks,
            "realizability_words": realizability_checks,
            "curves": per_curve.instances,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranges() {
        let cat = Catalog::build(6).unwrap();
        for id in ["T2", "T5"] {
            let r = run_suite(id, 6, &cat).unwrap();
            assert!(r.pass && r.counterexamples.is_empty(), "{id}");
        }
        for (id, _) in SUITES {
            let r = run_suite(id, 0, &cat).unwrap();
            assert!(r.pass, "{id}");
            assert!(r.instances <= 1 || id == "T9", "{id}: {}", r.instances);
        }
        assert_eq!(run_suite("T10", 0, &cat).unwrap().instances, 1);
        assert_eq!(run_suite("T3", 0, &cat).unwrap().instances, 0);
    }

    #[test]
    fn errors() {
        let cat = Catalog::build(3).unwrap();
        assert!(matches!(run_suite("T3", 4, &cat), Err(Error::CatalogIncomplete { have: 3, need: 4 })));
        assert!(matches!(run_suite("T99", 3, &cat), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn reproducible() {
        let cat = Catalog::build(5).unwrap();
        for (id, _) in SUITES {
            let a = run_suite(id, 5, &cat).unwrap();
            let b = run_suite(id, 5, &cat).unwrap();
            assert_eq!(a.payload(), b.payload());
            assert_eq!(a.pass, a.counterexamples.is_empty());
        }
    }
}
