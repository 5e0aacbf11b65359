mod input;

use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homlor::enumerate::{dedup_isomorphic, enumerate_graphs, EnumerationFilter};
use homlor::formulas::{cycle_chromatic, stirling2, FormulaFamily, Orientation};
use homlor::hom::g_volume;
use homlor::rational::{format_rational, parse_rational};
use homlor::verify::{
    af_inequality_trials, check_bipartite_swapping, check_cross_bipartite_family, check_cross_bipartite_swapping,
    check_weighted_cross_bipartite, corollary_product_trials, explore_lorentzian_converse, search_counterexamples,
    AfmSampler, Checkpoint, CrossBipartiteMode, CrossFamily, SamplerStrategy, SearchClaim, TargetSource, Verdict,
};
use homlor::{
    bipartite_hom_count, g_chromatic_polynomial, hom_count, is_antiferromagnetic, is_lorentzian, make_family,
    tensor_with_k2, Error, Family, LabelledBipartiteGraph, Rational, Result, SparsePolynomial, WeightedGraph,
};
use input::{load_graph, load_graph6_stream, load_polynomial, parse_range, parse_usize_list};

#[derive(Parser)]
#[command(name = "homlor", version, about = "Exact homomorphism counts, Lorentzian certificates and swapping inequalities")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "HOMLOR_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weighted homomorphism count, bipartite count or G-volume.
    Hom(HomArgs),
    /// Certify antiferromagnetism or the Lorentzian property.
    #[command(subcommand)]
    Certify(Certify),
    /// Check one inequality on given inputs; verdicts as JSON lines.
    #[command(subcommand)]
    Verify(Verify),
    /// Sweep many instances looking for counterexamples.
    #[command(subcommand)]
    Search(Search),
    /// Closed-form colouring counts.
    Formulas(FormulasArgs),
}

#[derive(Args)]
struct HomArgs {
    /// Source graph: literal (path:3, cycle:6, kq:4, kq_circ:3, multipartite:2,1, hardcore), file, or - for graph6 on stdin.
    #[arg(long = "H")]
    h: String,
    #[arg(long = "G")]
    g: String,
    /// Left-side target subset (bipartite count).
    #[arg(long = "A", alias = "a", requires = "b_set")]
    a_set: Option<String>,
    /// Right-side target subset (bipartite count).
    #[arg(long = "B", alias = "b", requires = "a_set")]
    b_set: Option<String>,
    /// Count with H×K2 instead of H in bipartite mode.
    #[arg(long)]
    double: bool,
    /// JSON file with one vector per source vertex (G-volume).
    #[arg(long, conflicts_with = "a_set")]
    vectors: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Certify {
    Afm {
        #[arg(long = "G")]
        g: String,
    },
    Lorentzian {
        /// Polynomial JSON file.
        #[arg(long, conflicts_with = "chromatic")]
        poly: Option<String>,
        /// Use h_H(x;G).
        #[arg(long, num_args = 2, value_names = ["H", "G"])]
        chromatic: Option<Vec<String>>,
    },
}

#[derive(Args)]
struct Output {
    /// Write JSON lines here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Trials {
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Verify {
    /// hom(H,G)^2 <= hom(H×K2,G).
    BipartiteSwap {
        #[arg(long = "H")]
        h: String,
        #[arg(long = "G")]
        g: String,
        #[command(flatten)]
        out: Output,
    },
    /// hom(H,G[A]) hom(H,G[B]) <= hom_b(H×K2,G[A,B]); all subsets of G, or nested subsets of K_q.
    CrossBipartite {
        #[arg(long = "H")]
        h: String,
        #[arg(long = "G", conflicts_with = "kq", required_unless_present = "kq")]
        g: Option<String>,
        #[arg(long = "Kq")]
        kq: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// V_H(a..a) V_H(b..b) <= V_{H×K2}(a..a,b..b) for seeded random vectors.
    WeightedCrossBipartite {
        #[arg(long = "H")]
        h: String,
        #[arg(long = "G")]
        g: String,
        #[command(flatten)]
        trials: Trials,
        #[command(flatten)]
        out: Output,
    },
    /// F(v1,v2,..)^2 >= F(v1,v1,..) F(v2,v2,..) for seeded random vectors.
    AfInequality {
        #[arg(long, conflicts_with = "chromatic", required_unless_present = "chromatic")]
        poly: Option<String>,
        #[arg(long, num_args = 2, value_names = ["H", "G"])]
        chromatic: Option<Vec<String>>,
        #[command(flatten)]
        trials: Trials,
        #[command(flatten)]
        out: Output,
    },
    /// V(b,a..a) V(a,b..b) >= V(a..a) V(b..b) for V = V_{K_t}(-;G).
    Corollary {
        #[arg(long = "G")]
        g: String,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[command(flatten)]
        trials: Trials,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct SearchIo {
    #[command(flatten)]
    out: Output,
    /// Maximum number of instances to check in this run.
    #[arg(long, default_value_t = u64::MAX)]
    budget: u64,
    /// Checkpoint file (default: <out>.ckpt when --out is given).
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Continue from the checkpoint, appending to --out.
    #[arg(long)]
    resume: bool,
}

#[derive(Args)]
struct Sources {
    /// Largest source size for the builtin enumerator (connected graphs).
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    /// Read sources as graph6 lines from this file (- for stdin).
    #[arg(long = "H-g6")]
    h_g6: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchFamily {
    Paths,
    Cycles,
    Multipartite,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Structural,
    Rejection,
}

#[derive(Subcommand)]
enum Search {
    /// hom(H,K_q)^2 <= hom(H×K2,K_q).
    Zhao {
        #[command(flatten)]
        sources: Sources,
        #[arg(long, default_value = "2..4")]
        q: String,
        #[command(flatten)]
        io: SearchIo,
    },
    /// hom(H,G)^2 <= hom(H×K2,G) over sampled antiferromagnetic G.
    AfmSwap {
        #[command(flatten)]
        sources: Sources,
        #[arg(long = "afm-seed", alias = "seed", default_value_t = 0)]
        afm_seed: u64,
        #[arg(long = "afm-n-max", default_value_t = 4)]
        afm_n_max: usize,
        /// Sampled targets per source.
        #[arg(long, default_value_t = 16)]
        per_source: u64,
        #[arg(long, value_enum, default_value_t = Strategy::Structural)]
        strategy: Strategy,
        #[command(flatten)]
        io: SearchIo,
    },
    /// Cross-bipartite swapping in K_q with nested subsets.
    CrossBipartite {
        #[arg(long, value_enum, conflicts_with = "h_g6")]
        family: Option<SearchFamily>,
        #[arg(long = "H-g6")]
        h_g6: Option<String>,
        /// Largest source size for --family.
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value = "2..5")]
        q: String,
        #[command(flatten)]
        io: SearchIo,
    },
    /// Exploratory: which sources have Lorentzian h_H(-;G) on every sampled G.
    LorentzianConverse {
        #[command(flatten)]
        sources: Sources,
        #[arg(long = "afm-seed", alias = "seed", default_value_t = 0)]
        afm_seed: u64,
        #[arg(long = "afm-n-max", default_value_t = 4)]
        afm_n_max: usize,
        #[arg(long, default_value_t = 20)]
        targets: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaKind {
    PathOdd,
    PathEven,
    Cycle,
    CycleChromatic,
    Multipartite,
    MultipartiteFirstPart,
    Stirling,
}

#[derive(Args)]
struct FormulasArgs {
    #[arg(value_enum)]
    family: FormulaKind,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long, default_value = "ab")]
    orientation: String,
    /// Part sizes (multipartite) or the parts after the first (first-part).
    #[arg(long)]
    parts: Option<String>,
    #[arg(long)]
    s1: Option<usize>,
    /// Cycle length (cycle-chromatic).
    #[arg(long)]
    l: Option<usize>,
    /// Stirling arguments S(r, l).
    #[arg(long)]
    r: Option<usize>,
    /// Also count directly and report the difference.
    #[arg(long)]
    oracle: bool,
}

/// Exit status of a successful run.
enum Status {
    Holds,
    Fails,
}

fn open_sink(out: &Output, append: bool) -> Result<Box<dyn Write>> {
    Ok(match &out.out {
        None => Box::new(io::stdout().lock()),
        Some(p) => {
            let f = if append { OpenOptions::new().create(true).append(true).open(p)? } else { File::create(p)? };
            Box::new(io::BufWriter::new(f))
        }
    })
}

fn emit_verdicts(verdicts: &[Verdict], out: &Output) -> Result<Status> {
    let mut sink = open_sink(out, false)?;
    for v in verdicts {
        writeln!(sink, "{}", v.to_json_line())?;
    }
    sink.flush()?;
    Ok(if verdicts.iter().all(|v| v.holds) { Status::Holds } else { Status::Fails })
}

fn need(v: Option<usize>, name: &str) -> Result<usize> {
    v.ok_or_else(|| Error::InvalidParameter(format!("--{name} is required")))
}

fn print_json(v: &serde_json::Value) {
    println!("{v}");
}

fn run_hom(args: &HomArgs) -> Result<Status> {
    let h = load_graph(&args.h)?;
    let g = load_graph(&args.g)?;
    if let Some(path) = &args.vectors {
        let raw: Vec<Vec<String>> = serde_json::from_str(&fs::read_to_string(path)?)?;
        let vectors = raw
            .iter()
            .map(|v| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Rational>>>())
            .collect::<Result<Vec<_>>>()?;
        print_json(&serde_json::json!({ "volume": format_rational(&g_volume(&h, &vectors, &g)?) }));
    } else if let (Some(a), Some(b)) = (&args.a_set, &args.b_set) {
        let hb = if args.double { tensor_with_k2(&h)? } else { LabelledBipartiteGraph::from_bipartite(h)? };
        let count = bipartite_hom_count(&hb, &g, &parse_usize_list(a)?, &parse_usize_list(b)?)?;
        print_json(&serde_json::json!({ "bipartite_hom": count.to_string() }));
    } else {
        print_json(&serde_json::json!({ "hom": format_rational(&hom_count(&h, &g)?) }));
    }
    Ok(Status::Holds)
}

fn polynomial_from(poly: &Option<String>, chromatic: &Option<Vec<String>>) -> Result<SparsePolynomial> {
    match (poly, chromatic) {
        (Some(p), _) => load_polynomial(p),
        (None, Some(hg)) => g_chromatic_polynomial(&load_graph(&hg[0])?, &load_graph(&hg[1])?),
        (None, None) => Err(Error::InvalidParameter("give --poly or --chromatic H G".into())),
    }
}

fn run_certify(c: &Certify) -> Result<Status> {
    let verdict = match c {
        Certify::Afm { g } => {
            let cert = is_antiferromagnetic(&load_graph(g)?);
            println!("{}", serde_json::to_string(&cert)?);
            cert.verdict
        }
        Certify::Lorentzian { poly, chromatic } => {
            let f = polynomial_from(poly, chromatic)?;
            let cert = is_lorentzian(&f)?;
            println!("{}", serde_json::to_string(&cert)?);
            cert.verdict
        }
    };
    Ok(if verdict { Status::Holds } else { Status::Fails })
}

/// Formula family behind an inline literal, if any.
fn cross_family(spec: &str) -> Option<CrossFamily> {
    let (name, params) = spec.split_once(':')?;
    let nums = parse_usize_list(params).ok()?;
    match (name.parse::<Family>().ok()?, nums.as_slice()) {
        (Family::Path, &[len]) => Some(CrossFamily::Path { len }),
        (Family::Cycle, &[len]) if len % 2 == 0 && len >= 4 => Some(CrossFamily::EvenCycle { len }),
        (Family::CompleteMultipartite, parts) if parts.iter().any(|&p| p > 0) => {
            Some(CrossFamily::Multipartite { parts: parts.to_vec() })
        }
        _ => None,
    }
}

fn run_verify(v: &Verify) -> Result<Status> {
    match v {
        Verify::BipartiteSwap { h, g, out } => {
            emit_verdicts(&[check_bipartite_swapping(&load_graph(h)?, &load_graph(g)?)?], out)
        }
        Verify::CrossBipartite { h, g, kq, out } => {
            let verdicts = match (g, kq) {
                (Some(g), _) => {
                    check_cross_bipartite_swapping(&load_graph(h)?, &load_graph(g)?, CrossBipartiteMode::ExhaustiveSubsets)?
                }
                (None, Some(q)) => match cross_family(h) {
                    Some(f) => check_cross_bipartite_family(&f, *q)?,
                    None => check_cross_bipartite_swapping(
                        &load_graph(h)?,
                        &make_family(Family::Complete, &[*q])?,
                        CrossBipartiteMode::KqReduced,
                    )?,
                },
                (None, None) => return Err(Error::InvalidParameter("give --G or --Kq".into())),
            };
            emit_verdicts(&verdicts, out)
        }
        Verify::WeightedCrossBipartite { h, g, trials, out } => emit_verdicts(
            &check_weighted_cross_bipartite(&load_graph(h)?, &load_graph(g)?, trials.trials, trials.seed)?,
            out,
        ),
        Verify::AfInequality { poly, chromatic, trials, out } => {
            let f = polynomial_from(poly, chromatic)?;
            emit_verdicts(&af_inequality_trials(&f, trials.trials, trials.seed)?, out)
        }
        Verify::Corollary { g, t, trials, out } => {
            emit_verdicts(&corollary_product_trials(&load_graph(g)?, *t, trials.trials, trials.seed)?, out)
        }
    }
}

fn connected_sources(s: &Sources) -> Result<Vec<WeightedGraph>> {
    match &s.h_g6 {
        Some(src) => load_graph6_stream(src),
        None => enumerate_graphs(s.n_max, EnumerationFilter { connected_only: true, ..Default::default() }),
    }
}

fn family_sources(family: SearchFamily, max_size: usize) -> Result<Vec<WeightedGraph>> {
    let mut out = Vec::new();
    let paths = matches!(family, SearchFamily::Paths | SearchFamily::All);
    let cycles = matches!(family, SearchFamily::Cycles | SearchFamily::All);
    let multi = matches!(family, SearchFamily::Multipartite | SearchFamily::All);
    if paths {
        for len in 1..max_size {
            out.push(make_family(Family::Path, &[len])?);
        }
    }
    if cycles {
        for len in (4..=max_size).step_by(2) {
            out.push(make_family(Family::Cycle, &[len])?);
        }
    }
    if multi {
        for n in 2..=max_size {
            partitions(n, n, &mut Vec::new(), &mut |p| {
                if p.len() >= 2 {
                    out.push(make_family(Family::CompleteMultipartite, p).expect("positive parts"));
                }
            });
        }
    }
    dedup_isomorphic(out)
}

fn partitions(rem: usize, max: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if rem == 0 {
        f(cur);
        return;
    }
    for p in (1..=rem.min(max)).rev() {
        cur.push(p);
        partitions(rem - p, p, cur, f);
        cur.pop();
    }
}

fn run_search_claim(claim: SearchClaim, sources: &[WeightedGraph], targets: &TargetSource, io: &SearchIo) -> Result<Status> {
    let ckpt_path = io.checkpoint.clone().or_else(|| {
        io.out.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".ckpt");
            PathBuf::from(s)
        })
    });
    let resume = if io.resume {
        let path = ckpt_path.as_ref().ok_or_else(|| Error::InvalidParameter("--resume needs --checkpoint or --out".into()))?;
        Some(serde_json::from_str::<Checkpoint>(&fs::read_to_string(path)?)?)
    } else {
        None
    };
    log::info!("{} sources, resuming at {:?}", sources.len(), resume.as_ref().map(|c| c.cursor));
    let mut sink = open_sink(&io.out, io.resume)?;
    let summary = search_counterexamples(
        claim,
        sources,
        targets,
        io.budget,
        resume.as_ref(),
        |v| {
            writeln!(sink, "{}", v.to_json_line())?;
            Ok(())
        },
        |c| {
            if let Some(path) = &ckpt_path {
                sink_flush_and_save(path, c)?;
            }
            Ok(())
        },
    )?;
    sink.flush()?;
    eprintln!("{}", serde_json::to_string(&summary)?);
    Ok(if summary.failures == 0 { Status::Holds } else { Status::Fails })
}

fn sink_flush_and_save(path: &PathBuf, c: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("ckpt.tmp");
    fs::write(&tmp, serde_json::to_string(c)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn sampler(seed: u64, n_max: usize, strategy: Strategy) -> AfmSampler {
    AfmSampler::new(seed, n_max).with_strategy(match strategy {
        Strategy::Structural => SamplerStrategy::Structural,
        Strategy::Rejection => SamplerStrategy::Rejection,
    })
}

fn run_search(s: &Search) -> Result<Status> {
    match s {
        Search::Zhao { sources, q, io } => {
            run_search_claim(SearchClaim::ZhaoKq, &connected_sources(sources)?, &TargetSource::Complete(parse_range(q)?), io)
        }
        Search::AfmSwap { sources, afm_seed, afm_n_max, per_source, strategy, io } => {
            let targets = TargetSource::Afm { sampler: sampler(*afm_seed, *afm_n_max, *strategy), per_source: *per_source };
            run_search_claim(SearchClaim::BipartiteSwapAfm, &connected_sources(sources)?, &targets, io)
        }
        Search::CrossBipartite { family, h_g6, max_size, q, io } => {
            let sources = match (family, h_g6) {
                (_, Some(src)) => load_graph6_stream(src)?,
                (Some(f), None) => family_sources(*f, *max_size)?,
                (None, None) => family_sources(SearchFamily::All, *max_size)?,
            };
            run_search_claim(SearchClaim::CrossBipartiteKq, &sources, &TargetSource::Complete(parse_range(q)?), io)
        }
        Search::LorentzianConverse { sources, afm_seed, afm_n_max, targets, out } => {
            let hs = connected_sources(sources)?;
            let gs = sampler(*afm_seed, *afm_n_max, Strategy::Structural).suite(*targets)?;
            let mut sink = open_sink(out, false)?;
            for rec in explore_lorentzian_converse(&hs, &gs)? {
                writeln!(sink, "{}", serde_json::to_string(&rec)?)?;
            }
            sink.flush()?;
            Ok(Status::Holds)
        }
    }
}

fn run_formulas(f: &FormulasArgs) -> Result<Status> {
    let parts = f.parts.as_deref().map(parse_usize_list).transpose()?;
    let (family, value, oracle) = match f.family {
        FormulaKind::Stirling => {
            let (r, l) = (need(f.r, "r")?, need(f.l, "l")?);
            if f.oracle {
                return Err(Error::InvalidParameter("no oracle for Stirling numbers".into()));
            }
            (serde_json::json!({ "family": "stirling", "r": r, "l": l }), stirling2(r, l), None)
        }
        FormulaKind::CycleChromatic => {
            let (l, a) = (need(f.l, "l")?, need(f.a, "a")?);
            let value = cycle_chromatic(l, a)?;
            let oracle = if f.oracle {
                let c = make_family(Family::Cycle, &[l])?;
                Some(hom_count(&c, &make_family(Family::Complete, &[a])?)?.to_integer())
            } else {
                None
            };
            (serde_json::json!({ "family": "cycle_chromatic", "l": l, "a": a }), value, oracle)
        }
        kind => {
            let a = need(f.a, "a")?;
            let fam = match kind {
                FormulaKind::PathOdd => FormulaFamily::PathOdd { d: need(f.d, "d")? },
                FormulaKind::PathEven => {
                    FormulaFamily::PathEven { d: need(f.d, "d")?, orientation: f.orientation.parse::<Orientation>()? }
                }
                FormulaKind::Cycle => FormulaFamily::Cycle { d: need(f.d, "d")? },
                FormulaKind::Multipartite => FormulaFamily::Multipartite {
                    parts: parts.clone().ok_or_else(|| Error::InvalidParameter("--parts is required".into()))?,
                },
                FormulaKind::MultipartiteFirstPart => {
                    FormulaFamily::MultipartiteFirstPart { s1: need(f.s1, "s1")?, rest: parts.clone().unwrap_or_default() }
                }
                FormulaKind::Stirling | FormulaKind::CycleChromatic => unreachable!("handled above"),
            };
            let b = match kind {
                FormulaKind::Multipartite => a,
                _ => need(f.b, "b")?,
            };
            let value = fam.evaluate(a, b)?;
            let oracle = if f.oracle { Some(fam.brute_force(a, b)?) } else { None };
            let mut desc = serde_json::to_value(&fam)?;
            desc["a"] = a.into();
            if !matches!(kind, FormulaKind::Multipartite) {
                desc["b"] = b.into();
            }
            (desc, value, oracle)
        }
    };
    let mut out = serde_json::json!({ "input": family, "value": value.to_string() });
    let mut status = Status::Holds;
    if let Some(o) = oracle {
        let delta = &value - &o;
        out["oracle"] = o.to_string().into();
        out["delta"] = delta.to_string().into();
        if delta != 0.into() {
            status = Status::Fails;
        }
    }
    print_json(&out);
    Ok(status)
}

fn run(cli: &Cli) -> Result<Status> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Hom(a) => run_hom(a),
        Command::Certify(c) => run_certify(c),
        Command::Verify(v) => run_verify(v),
        Command::Search(s) => run_search(s),
        Command::Formulas(f) => run_formulas(f),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Holds) => ExitCode::SUCCESS,
        Ok(Status::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
