use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use curvekit::census::{catalog_read, catalog_write, Catalog, CatalogRecord};
use curvekit::chords::{chord_diagram, decompose, reducible_chords, triangle_classes, two_point_cuts};
use curvekit::harness::{run_suite, SuiteReport, SUITES};
use curvekit::moves::{apply_logged, enumerate_moves};
use curvekit::reduce::{
    homotopy_reachable, reduce_to_pr, reductivity, Reachability, ReductivityResult, DEFAULT_REDUCTIVITY_DEPTH,
    STRONG_12,
};
use curvekit::{parse, realize_all, Embedding, Error, GaussWord, MoveKind};

const CACHE_DIR: &str = ".curvekit-cache";

#[derive(Parser)]
#[command(name = "curvekit", version, about = "Spherical curves from Gauss words")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Recorded in reports; every suite is exhaustive.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a word and report its canonical form.
    Parse { word: String },
    /// Faces, chord patterns and reduction data for one embedding.
    Analyze {
        word: String,
        #[arg(long, default_value_t = 0)]
        embedding: usize,
    },
    /// List move sites, or apply one.
    Moves {
        word: String,
        #[arg(long, default_value_t = 0)]
        embedding: usize,
        /// Restrict to these kinds (comma separated).
        #[arg(long, value_delimiter = ',')]
        kind: Vec<MoveKind>,
        /// Index into the listed sites.
        #[arg(long)]
        apply: Option<usize>,
    },
    /// Remove 1-gons and 2-gons until none remain.
    Reduce {
        word: String,
        #[arg(long, default_value_t = 0)]
        embedding: usize,
    },
    /// Search for a move sequence between two curves.
    Homotopy {
        from: String,
        to: String,
        #[arg(long, default_value_t = 0)]
        embedding: usize,
        #[arg(long, default_value_t = 0)]
        target_embedding: usize,
        /// Allowed kinds (default: kinks and strong bigons).
        #[arg(long, value_delimiter = ',')]
        kind: Vec<MoveKind>,
        #[arg(long)]
        max_n: usize,
    },
    /// Fewest smoothings that produce a nugatory crossing.
    Reductivity {
        word: String,
        #[arg(long, default_value_t = 0)]
        embedding: usize,
        #[arg(long, default_value_t = DEFAULT_REDUCTIVITY_DEPTH)]
        depth: u32,
    },
    /// Connected-sum factors of a word.
    Decompose { word: String },
    /// Count curves up to a crossing number and optionally write a catalog.
    Enumerate {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        /// Suite id or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotDoubleOccurrence { .. }
            | Error::EmptyToken { .. }
            | Error::BadToken { .. }
            | Error::BadLabels { .. }
            | Error::TooManyCrossings(_)
            | Error::UnknownSuite(_)
            | Error::BoundTooSmall { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

/// Output plus whether the command's check succeeded.
struct Outcome {
    value: Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(value: Value, text: String) -> Self {
        Outcome { value, text, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().expect("thread pool is built once");
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.value).expect("json output")),
                Format::Text => println!("{}", out.text),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn embedding_of(word: &str, index: usize) -> Result<Result<(Embedding, usize), GaussWord>, Failure> {
    let w = parse(word)?;
    let mut all = realize_all(&w);
    let count = all.len();
    if count == 0 {
        return Ok(Err(w));
    }
    if index >= count {
        return Err(Failure::Usage(format!("embedding {index} out of range: the word has {count}")));
    }
    Ok(Ok((all.swap_remove(index), count)))
}

fn unrealizable(w: &GaussWord) -> Outcome {
    Outcome {
        value: json!({ "word": w, "realizable": false }),
        text: format!("{w}: not realizable on the sphere"),
        ok: false,
    }
}

macro_rules! realize {
    ($word:expr, $index:expr) => {
        match embedding_of($word, $index)? {
            Ok(pair) => pair,
            Err(w) => return Ok(unrealizable(&w)),
        }
    };
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Parse { word } => {
            let w = parse(word)?;
            let c = w.canonicalize();
            let embeddings = realize_all(&w).len();
            let text = format!("{} (canonical {}, {} embedding(s))", w.normalized(), c.word, embeddings);
            Ok(Outcome::ok(
                json!({
                    "word": w.normalized(),
                    "n": w.n(),
                    "canonical": c.word,
                    "certificate": c.certificate,
                    "parity": w.parity_filter(),
                    "embeddings": embeddings,
                }),
                text,
            ))
        }
        Command::Analyze { word, embedding } => {
            let (e, count) = realize!(word, *embedding);
            Ok(analyze(&e, count)?)
        }
        Command::Moves { word, embedding, kind, apply } => {
            let (e, _) = realize!(word, *embedding);
            let kinds = if kind.is_empty() { MoveKind::ALL.to_vec() } else { kind.clone() };
            let sites = enumerate_moves(&e, &kinds)?;
            match apply {
                None => {
                    let text = sites.iter().enumerate().map(|(i, s)| format!("{i}: {} {:?}", s.kind, s.locus)).collect::<Vec<_>>();
                    Ok(Outcome::ok(json!({ "word": e.word(), "sites": sites }), text.join("\n")))
                }
                Some(i) => {
                    let site = sites
                        .get(*i)
                        .ok_or_else(|| Failure::Usage(format!("site {i} out of range: {} listed", sites.len())))?;
                    let (after, event) = apply_logged(&e, site)?;
                    let text = format!("{} --{}--> {}", e.word(), site.kind, after.word());
                    Ok(Outcome::ok(json!({ "result": after.word(), "embedding": after, "event": event }), text))
                }
            }
        }
        Command::Reduce { word, embedding } => {
            let (e, _) = realize!(word, *embedding);
            let (pr, trace) = reduce_to_pr(&e)?;
            let kinds: Vec<String> = trace.events.iter().map(|ev| ev.kind.to_string()).collect();
            let text = format!("{} -> [{}] via {}", e.word(), pr.word(), kinds.join(" "));
            Ok(Outcome::ok(
                json!({ "pr": pr.word(), "pr_certificate": pr.certificate(), "trace": trace.events }),
                text,
            ))
        }
        Command::Homotopy { from, to, embedding, target_embedding, kind, max_n } => {
            let (a, _) = realize!(from, *embedding);
            let (b, _) = realize!(to, *target_embedding);
            let kinds = if kind.is_empty() { STRONG_12.to_vec() } else { kind.clone() };
            let r = homotopy_reachable(&a, &b, &kinds, *max_n)?;
            let (ok, text) = match &r {
                Reachability::Yes { trace } => {
                    let ks: Vec<String> = trace.iter().map(|ev| ev.kind.to_string()).collect();
                    (true, format!("reachable in {} move(s): {}", trace.len(), ks.join(" ")))
                }
                Reachability::NoWithinBound { max_n } => (false, format!("not reachable within {max_n} crossings")),
            };
            Ok(Outcome { value: serde_json::to_value(&r).map_err(|e| Failure::Runtime(e.to_string()))?, text, ok })
        }
        Command::Reductivity { word, embedding, depth } => {
            let (e, _) = realize!(word, *embedding);
            let r = reductivity(&e, *depth)?;
            let text = match &r {
                ReductivityResult::Known(k) => format!("r = {} (smooth {:?})", k.value, k.witness),
                ReductivityResult::Unknown { max_depth } => format!("r > {max_depth}"),
            };
            Ok(Outcome::ok(serde_json::to_value(&r).map_err(|e| Failure::Runtime(e.to_string()))?, text))
        }
        Command::Decompose { word } => {
            let w = parse(word)?;
            let d = decompose(&chord_diagram(&w));
            let factors: Vec<GaussWord> = d.factors().iter().map(|f| f.to_word()).collect();
            let text = factors.iter().map(|f| format!("[{f}]")).collect::<Vec<_>>().join(" # ");
            Ok(Outcome::ok(json!({ "prime": factors.len() == 1, "factors": factors }), text))
        }
        Command::Enumerate { max_n, catalog } => {
            let cat = Catalog::build(*max_n)?;
            let mut counts = vec![0usize; max_n + 1];
            for r in &cat.records {
                counts[r.n] += 1;
            }
            if let Some(path) = catalog {
                catalog_write(&cat, path)?;
            }
            let text = counts.iter().enumerate().map(|(n, c)| format!("n={n}: {c}")).collect::<Vec<_>>().join("\n");
            Ok(Outcome::ok(json!({ "n_max": max_n, "counts": counts, "catalog": catalog }), text))
        }
        Command::Verify { suite, max_n, catalog } => verify(suite, *max_n, catalog.as_deref(), cli.seed),
    }
}

fn analyze(e: &Embedding, embeddings: usize) -> Result<Outcome, Failure> {
    let rec = CatalogRecord::from_embedding(e)?;
    let cd = chord_diagram(e.word());
    let labels: String = triangle_classes(e).iter().map(|t| t.label()).collect();
    let reducible: Vec<u32> = reducible_chords(&cd).into_iter().collect();
    let (pr, _) = reduce_to_pr(e)?;
    let text = format!(
        "{}\nfaces {:?}\nprime {} cross {} H {} triple {}\nreductivity {}\nP^r [{}]",
        rec.word,
        rec.faces,
        rec.prime,
        rec.has_cross,
        rec.has_h,
        rec.has_triple,
        rec.reductivity.value().map_or("unknown".to_string(), |v| v.to_string()),
        pr.word(),
    );
    Ok(Outcome::ok(
        json!({
            "word": rec.word,
            "certificate": rec.certificate,
            "embeddings": embeddings,
            "embedding": e,
            "faces": rec.faces,
            "prime": rec.prime,
            "factor_count": rec.factor_count,
            "has_cross": rec.has_cross,
            "has_h": rec.has_h,
            "has_triple": rec.has_triple,
            "reducible_crossings": reducible,
            "bigons": rec.bigons,
            "triangles": labels,
            "two_point_cuts": two_point_cuts(&cd),
            "reductivity": rec.reductivity.value(),
            "pr": pr.word(),
            "strong_trivializable": rec.strong_trivializable,
        }),
        text,
    ))
}

fn load_catalog(path: Option<&Path>, need: usize) -> Result<Catalog, Failure> {
    if let Some(p) = path {
        return Ok(catalog_read(p)?);
    }
    let cached = Path::new(CACHE_DIR).join(format!("catalog-n{need}.jsonl"));
    if let Ok(cat) = catalog_read(&cached) {
        if cat.n_max >= need {
            return Ok(cat);
        }
    }
    let cat = Catalog::build(need)?;
    if std::fs::create_dir_all(CACHE_DIR).is_ok() {
        if let Err(e) = catalog_write(&cat, &cached) {
            eprintln!("warning: could not cache catalog: {e}");
        }
    }
    Ok(cat)
}

fn verify(suite: &str, max_n: Option<usize>, catalog: Option<&Path>, seed: Option<u64>) -> Result<Outcome, Failure> {
    let plan: Vec<(&str, usize)> = if suite.eq_ignore_ascii_case("all") {
        SUITES.iter().map(|&(id, bound)| (id, max_n.map_or(bound, |m| m.min(bound)))).collect()
    } else {
        let &(id, bound) = SUITES
            .iter()
            .find(|(id, _)| id.eq_ignore_ascii_case(suite))
            .ok_or_else(|| Failure::Usage(format!("unknown suite {suite:?}")))?;
        vec![(id, max_n.unwrap_or(bound))]
    };
    let need = plan.iter().map(|p| p.1).max().unwrap_or(0);
    let cat = load_catalog(catalog, need)?;
    let reports: Vec<SuiteReport> = plan.iter().map(|&(id, n)| run_suite(id, n, &cat)).collect::<Result<_, _>>()?;
    let ok = reports.iter().all(|r| r.pass);
    let text = reports
        .iter()
        .map(|r| {
            format!(
                "{} n<={} {} instances={} counterexamples={} ({} ms)",
                r.suite,
                r.n_max,
                if r.pass { "PASS" } else { "FAIL" },
                r.instances,
                r.counterexamples.len(),
                r.wall_ms
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    let value = json!({ "pass": ok, "seed": seed, "reports": reports });
    Ok(Outcome { value, text, ok })
}
