use std::sync::OnceLock;

use proptest::prelude::*;

use curvekit::census::{catalog_read, catalog_write, enumerate_embeddings, Catalog};
use curvekit::chords::{chord_diagram, decompose};
use curvekit::moves::{a_inverse, a_inverse_word, apply, enumerate_moves};
use curvekit::reduce::reduce_to_pr;
use curvekit::{parse, realize_all, Embedding, GaussWord, MoveKind};

fn curves() -> &'static [Embedding] {
    static CURVES: OnceLock<Vec<Embedding>> = OnceLock::new();
    CURVES.get_or_init(|| enumerate_embeddings(6))
}

fn any_curve() -> impl Strategy<Value = Embedding> {
    (0..curves().len()).prop_map(|i| curves()[i].clone())
}

/// A double-occurrence word on `1..=n` in random order.
fn any_word(max_n: usize) -> impl Strategy<Value = GaussWord> {
    (0..=max_n)
        .prop_flat_map(|n| Just((1..=n as u32).flat_map(|l| [l, l]).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| GaussWord::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn certificate_constant_on_symmetry_orbit(w in any_word(6), by in 0usize..12, flip: bool, seed in any::<u64>()) {
        let n = w.n() as u32;
        let mut perm: Vec<u32> = (1..=n).collect();
        if n > 0 {
            perm.rotate_left((seed % n as u64) as usize);
            if seed & 1 == 1 {
                perm.reverse();
            }
        }
        let mut moved = w.relabeled(&perm).rotated(by);
        if flip {
            moved = moved.reversed();
        }
        prop_assert_eq!(moved.canonicalize(), w.canonicalize());
    }

    #[test]
    fn display_parse_round_trip(w in any_word(8)) {
        let back = parse(&w.to_string()).unwrap();
        prop_assert_eq!(&back, &w.normalized());
        prop_assert_eq!(parse(&back.to_string()).unwrap(), back);
    }

    #[test]
    fn realizations_read_back_their_word(w in any_word(6)) {
        let all = realize_all(&w);
        if !all.is_empty() {
            prop_assert!(w.parity_filter());
        }
        for e in all {
            prop_assert_eq!(e.word(), &w.canonicalize().word);
            prop_assert!(e.map().validate().is_ok());
            prop_assert!(e.face_census().is_consistent());
        }
    }

    #[test]
    fn moves_undone_by_their_inverse(e in any_curve(), k in 0usize..7, pick in any::<prop::sample::Index>()) {
        let kind = MoveKind::ALL[k];
        let sites = enumerate_moves(&e, &[kind]).unwrap();
        prop_assume!(!sites.is_empty());
        let after = apply(&e, pick.get(&sites)).unwrap();
        prop_assert_eq!(after.n() as i32, e.n() as i32 + kind.delta());
        let back = enumerate_moves(&after, &[kind.inverse().unwrap()]).unwrap();
        prop_assert!(back.iter().any(|s| apply(&after, s).unwrap().certificate() == e.certificate()));
    }

    #[test]
    fn reduction_is_monotone_and_ends_clean(e in any_curve()) {
        let (pr, trace) = reduce_to_pr(&e).unwrap();
        prop_assert!(trace.monotone);
        let mut n = e.n();
        for ev in &trace.events {
            prop_assert!(ev.kind.delta() < 0);
            n = (n as i32 + ev.kind.delta()) as usize;
        }
        prop_assert_eq!(n, pr.n());
        let c = pr.face_census();
        prop_assert_eq!((c.count(1), c.count(2)), (0, 0));
    }

    #[test]
    fn smoothing_agrees_with_word_rule(e in any_curve(), pick in any::<prop::sample::Index>()) {
        prop_assume!(!e.is_circle());
        let c = pick.index(e.n()) as u32 + 1;
        let by_map = a_inverse(&e, c).unwrap();
        prop_assert_eq!(by_map.n() + 1, e.n());
        prop_assert!(by_map.map().validate().is_ok());
        let by_word = a_inverse_word(e.word(), c).unwrap();
        prop_assert_eq!(by_map.word(), &by_word.canonicalize().word);
    }

    #[test]
    fn decomposition_recomposes(w in any_word(8)) {
        let cd = chord_diagram(&w);
        let d = decompose(&cd);
        prop_assert_eq!(d.recompose().to_word().canonicalize(), w.canonicalize());
        let total: usize = d.factors().iter().map(|f| f.n()).sum();
        prop_assert_eq!(total, w.n());
    }

    #[test]
    fn embedding_json_round_trip(e in any_curve()) {
        let s = serde_json::to_string(&e).unwrap();
        let back: Embedding = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back.certificate(), e.certificate());
    }
}

#[test]
fn catalog_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.jsonl");
    let cat = Catalog::build(5).unwrap();
    catalog_write(&cat, &path).unwrap();
    let back = catalog_read(&path).unwrap();
    assert_eq!(back, cat);
    assert!(back.records.iter().all(|r| r.is_consistent().unwrap()));
}
