//! `qcc` — construct, inspect, and decode cyclic stabiliser codes.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation error, 3 budget
//! exceeded. `--json` mirrors the human-readable output as JSON lines.
//! `QCC_THREADS` caps the worker pool used by long enumerations.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::prelude::*;
use serde_json::json;

use qcc::cyclic_code::{exact_distance_chunked, CodeError, DistanceOptions, DistanceOutcome};
use qcc::cyclotomic::{cyclotomic_cosets, factor_f2, factor_f4};
use qcc::decoder::{correct, SyndromeOracle};
use qcc::descriptor::CodeDescriptor;
use qcc::fourm::{construct, enumerate_codes};
use qcc::poly::BinaryPoly;
use qcc::weyl::{
    check_cyclic, kl_distance, search_562, search_562_maximal, stabiliser_projector,
};

#[derive(Parser)]
#[command(name = "qcc", version, about = "Quantum cyclic stabiliser codes")]
struct Cli {
    /// Emit machine-readable JSON lines instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldTag {
    F2,
    F4,
}

#[derive(Subcommand)]
enum Command {
    /// Factor x^n-1 over F2 or F4 into irreducible factors.
    Factor { n: usize, field: FieldTag },
    /// Print the q-ary cyclotomic cosets modulo n.
    Cosets { n: usize, q: usize },
    /// Build a 4^m+1 code from g and a transversal of F4 coset leaders.
    Construct {
        m: u32,
        /// Generator g: an expression like "x-1", "f2:<hex>", or
        /// "cosets:<leaders>" naming F2 coset leaders (0 included).
        #[arg(long)]
        g: String,
        /// Comma-separated F4 coset leaders composing h.
        #[arg(long, value_delimiter = ',')]
        h_cosets: Vec<usize>,
        /// Write the code descriptor here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate every 4^m+1 code: all divisors g crossed with all
    /// transversals, with stabiliser dimension and BCH distance.
    Search { m: u32 },
    /// Exact minimum distance by exhaustive centraliser enumeration.
    Distance {
        file: PathBuf,
        /// Cap on enumerated elements.
        #[arg(long, default_value_t = 1u64 << 30)]
        budget: u64,
        /// log2 of the checkpoint block width.
        #[arg(long, default_value_t = 6)]
        block_bits: u32,
        /// Resume from this block.
        #[arg(long, default_value_t = 0)]
        start_block: u64,
        /// Stop after this many blocks and print a checkpoint.
        #[arg(long)]
        max_blocks: Option<u64>,
        /// Rewrite the descriptor with the computed distance.
        #[arg(long)]
        update: bool,
    },
    /// Decode an error through the syndrome oracle and report PASS/FAIL.
    Decode {
        file: PathBuf,
        /// Explicit error as <a-hex>:<b-hex> (little-endian coefficients).
        #[arg(long, conflicts_with_all = ["seed", "weight"])]
        error: Option<String>,
        /// Seed for a random error.
        #[arg(long, requires = "weight")]
        seed: Option<u64>,
        /// Joint weight of the random error.
        #[arg(long, requires = "seed")]
        weight: Option<usize>,
    },
    /// Dense-matrix checks: projector trace, cyclicity, Knill-Laflamme
    /// distance (small n only).
    Simulate { file: PathBuf },
    /// Pseudo-stabiliser search around the 5-qubit code: the 3-subset
    /// scan over the stabiliser characters and the 6-subset scan over
    /// the maximal separately cyclic extension.
    Search562,
}

enum CliError {
    Usage(String),
    Validation(String),
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Validation(m) | CliError::Budget(m) => m,
        }
    }
}

fn validation<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Validation(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version output on stdout
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    if let Ok(threads) = std::env::var("QCC_THREADS") {
        if let Ok(count) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(count.max(1))
                .build_global();
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Factor { n, field } => cmd_factor(*n, *field, cli.json),
        Command::Cosets { n, q } => cmd_cosets(*n, *q, cli.json),
        Command::Construct { m, g, h_cosets, output } => {
            cmd_construct(*m, g, h_cosets, output.as_deref(), cli.json)
        }
        Command::Search { m } => cmd_search(*m, cli.json),
        Command::Distance { file, budget, block_bits, start_block, max_blocks, update } => {
            cmd_distance(file, *budget, *block_bits, *start_block, *max_blocks, *update, cli.json)
        }
        Command::Decode { file, error, seed, weight } => {
            cmd_decode(file, error.as_deref(), *seed, *weight, cli.json)
        }
        Command::Simulate { file } => cmd_simulate(file, cli.json),
        Command::Search562 => cmd_search562(cli.json),
    }
}

fn cmd_factor(n: usize, field: FieldTag, as_json: bool) -> Result<(), CliError> {
    match field {
        FieldTag::F2 => {
            let fs = factor_f2(n).map_err(validation)?;
            if as_json {
                for f in &fs.factors {
                    println!(
                        "{}",
                        json!({
                            "poly": f.poly.to_string(),
                            "hex": format!("f2:{}", f.poly.to_hex()),
                            "coset": f.coset,
                        })
                    );
                }
            } else {
                println!("{}", fs.display_line());
                for f in &fs.factors {
                    println!("  coset {:?}: {}", f.coset, f.poly);
                }
            }
        }
        FieldTag::F4 => {
            let fs = factor_f4(n).map_err(validation)?;
            if as_json {
                for f in &fs.factors {
                    let (p0, p1) = f.poly.to_hex_parts();
                    println!(
                        "{}",
                        json!({
                            "poly": f.poly.to_string(),
                            "hex": format!("f4:{p0}:{p1}"),
                            "coset": f.coset,
                        })
                    );
                }
            } else {
                println!("{}", fs.display_line());
                for f in &fs.factors {
                    println!("  coset {:?}: {}", f.coset, f.poly);
                }
            }
        }
    }
    Ok(())
}

fn cmd_cosets(n: usize, q: usize, as_json: bool) -> Result<(), CliError> {
    let partition = cyclotomic_cosets(n, q).map_err(validation)?;
    if as_json {
        for coset in &partition.cosets {
            println!("{}", json!({ "leader": coset[0], "coset": coset }));
        }
    } else {
        println!("{}-ary cyclotomic cosets mod {}:", q, n);
        for coset in &partition.cosets {
            println!("  {:?}", coset);
        }
    }
    Ok(())
}

fn parse_g(m: u32, spec: &str) -> Result<BinaryPoly, CliError> {
    let n = qcc::fourm::code_length(m);
    if let Some(hex) = spec.strip_prefix("f2:") {
        return BinaryPoly::from_hex(hex).map_err(|e| CliError::Usage(e.to_string()));
    }
    if let Some(list) = spec.strip_prefix("cosets:") {
        let fs = factor_f2(n).map_err(validation)?;
        let mut g = BinaryPoly::one();
        for part in list.split(',') {
            let leader: usize = part
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad coset leader {part:?}")))?;
            let factor = fs
                .factors
                .iter()
                .find(|f| f.coset[0] == leader)
                .ok_or_else(|| CliError::Usage(format!("no F2 coset with leader {leader}")))?;
            g = g.mul(&factor.poly);
        }
        return Ok(g);
    }
    BinaryPoly::parse_expr(spec).map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_construct(
    m: u32,
    g_spec: &str,
    h_cosets: &[usize],
    output: Option<&std::path::Path>,
    as_json: bool,
) -> Result<(), CliError> {
    let g = parse_g(m, g_spec)?;
    let code = construct(m, &g, h_cosets).map_err(validation)?;
    let descriptor = CodeDescriptor::from_fourm(&code);
    if let Some(path) = output {
        descriptor.save(path).map_err(validation)?;
    }
    if as_json {
        println!(
            "{}",
            json!({
                "n": code.n,
                "k": code.k,
                "bch_d": code.bch.d,
                "t": code.t,
                "g": code.g.to_string(),
                "h": code.h.to_string(),
                "h_cosets": code.h_leaders,
                "descriptor": descriptor.render(),
            })
        );
    } else {
        println!("[[{},{},{}]] (BCH distance, exact may be larger)", code.n, code.k, code.bch.d);
        println!("g = {}", code.g);
        println!("h = {} (cosets {:?})", code.h, code.h_leaders);
        println!("a = {}", code.a);
        match output {
            Some(path) => println!("descriptor written to {}", path.display()),
            None => print!("{}", descriptor.render()),
        }
    }
    Ok(())
}

fn cmd_search(m: u32, as_json: bool) -> Result<(), CliError> {
    let codes = enumerate_codes(m).map_err(validation)?;
    if !as_json {
        println!("{:>4} {:>4} {:>6}  {:<24} h-cosets", "n", "k", "bch_d", "g");
    }
    for code in &codes {
        if as_json {
            println!(
                "{}",
                json!({
                    "n": code.n,
                    "k": code.k,
                    "bch_d": code.bch.d,
                    "g": code.g.to_string(),
                    "h_cosets": code.h_leaders,
                })
            );
        } else {
            println!(
                "{:>4} {:>4} {:>6}  {:<24} {:?}",
                code.n,
                code.k,
                code.bch.d,
                code.g.to_string(),
                code.h_leaders
            );
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_distance(
    file: &std::path::Path,
    budget: u64,
    block_bits: u32,
    start_block: u64,
    max_blocks: Option<u64>,
    update: bool,
    as_json: bool,
) -> Result<(), CliError> {
    let mut descriptor = CodeDescriptor::load(file).map_err(validation)?;
    let code = descriptor.to_cyclic_code().map_err(validation)?;
    let map_err = |e: CodeError| match e {
        CodeError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => CliError::Validation(other.to_string()),
    };

    // A resumed or capped run covers a slice of blocks and prints a
    // checkpoint with the minimum over that range only: the caller
    // combines ranges, as the enumeration cannot know what an earlier
    // slice saw.
    if max_blocks.is_some() || start_block > 0 {
        let opts = DistanceOptions { budget, block_bits, start_block, max_blocks };
        return match exact_distance_chunked(&code, &opts).map_err(map_err)? {
            DistanceOutcome::Partial { min_so_far, next_block, total_blocks, enumerated } => {
                print_checkpoint(
                    as_json,
                    min_so_far.as_ref().map(|(w, _)| *w),
                    start_block,
                    next_block,
                    total_blocks,
                    enumerated,
                );
                Ok(())
            }
            DistanceOutcome::Complete(report) => {
                print_report(as_json, &report);
                Ok(())
            }
        };
    }

    // A full run drives the enumeration in batches, logging a checkpoint
    // line to stderr after each so a killed run can resume.
    const BATCH: u64 = 16;
    let mut cursor = 0u64;
    let mut best: Option<(usize, (BinaryPoly, BinaryPoly))> = None;
    let mut enumerated_total: u64 = 0;
    let report = loop {
        let opts = DistanceOptions {
            budget,
            block_bits,
            start_block: cursor,
            max_blocks: Some(BATCH),
        };
        match exact_distance_chunked(&code, &opts).map_err(map_err)? {
            DistanceOutcome::Complete(report) => {
                // everything fit in the first batch
                break report;
            }
            DistanceOutcome::Partial { min_so_far, next_block, total_blocks, enumerated } => {
                enumerated_total += enumerated;
                if let Some((w, witness)) = min_so_far {
                    if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                        best = Some((w, witness));
                    }
                }
                if next_block < total_blocks {
                    eprintln!(
                        "checkpoint: block {next_block}/{total_blocks}, \
                         min so far {:?}; resume with --start-block {next_block}",
                        best.as_ref().map(|(w, _)| *w)
                    );
                    cursor = next_block;
                    continue;
                }
                let (d, witness) = best.ok_or_else(|| {
                    CliError::Validation(
                        "centraliser equals the span over the scanned range".into(),
                    )
                })?;
                break qcc::cyclic_code::DistanceReport {
                    d,
                    witness,
                    enumerated: enumerated_total,
                    route: qcc::cyclic_code::DistanceRoute::F4Ideal,
                };
            }
        }
    };

    if let Some(stored) = descriptor.d {
        if stored != report.d {
            return Err(CliError::Validation(format!(
                "descriptor claims d = {stored} but enumeration found {}",
                report.d
            )));
        }
    }
    print_report(as_json, &report);
    if update {
        descriptor.d = Some(report.d);
        descriptor.save(file).map_err(validation)?;
    }
    Ok(())
}

fn print_report(as_json: bool, report: &qcc::cyclic_code::DistanceReport) {
    if as_json {
        println!(
            "{}",
            json!({
                "d": report.d,
                "witness_a": format!("f2:{}", report.witness.0.to_hex()),
                "witness_b": format!("f2:{}", report.witness.1.to_hex()),
                "enumerated": report.enumerated,
            })
        );
    } else {
        println!("exact distance d = {}", report.d);
        println!("witness (a|b) = {} | {}", report.witness.0, report.witness.1);
        println!("elements enumerated: {}", report.enumerated);
    }
}

fn print_checkpoint(
    as_json: bool,
    min_so_far: Option<usize>,
    start_block: u64,
    next_block: u64,
    total_blocks: u64,
    enumerated: u64,
) {
    if as_json {
        println!(
            "{}",
            json!({
                "checkpoint": true,
                "min_so_far": min_so_far,
                "next_block": next_block,
                "total_blocks": total_blocks,
                "enumerated": enumerated,
            })
        );
    } else {
        println!(
            "checkpoint: blocks {}..{} done ({} elements), min so far {:?}; \
             resume with --start-block {}",
            start_block, next_block, enumerated, min_so_far, next_block
        );
    }
}

fn parse_error_spec(n: usize, spec: &str) -> Result<(BinaryPoly, BinaryPoly), CliError> {
    let (a_hex, b_hex) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage("error spec must be <a-hex>:<b-hex>".into()))?;
    let a = BinaryPoly::from_hex(a_hex).map_err(|e| CliError::Usage(e.to_string()))?;
    let b = BinaryPoly::from_hex(b_hex).map_err(|e| CliError::Usage(e.to_string()))?;
    for p in [&a, &b] {
        if p.degree().is_some_and(|d| d >= n) {
            return Err(CliError::Usage(format!("error exceeds length {n}")));
        }
    }
    Ok((a, b))
}

fn random_error(n: usize, weight: usize, seed: u64) -> (BinaryPoly, BinaryPoly) {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut positions: Vec<usize> = (0..n).collect();
    positions.shuffle(&mut rng);
    let mut a = BinaryPoly::zero();
    let mut b = BinaryPoly::zero();
    for &pos in positions.iter().take(weight) {
        match rng.gen_range(0..3) {
            0 => a.set_coeff(pos, true),
            1 => b.set_coeff(pos, true),
            _ => {
                a.set_coeff(pos, true);
                b.set_coeff(pos, true);
            }
        }
    }
    (a, b)
}

fn cmd_decode(
    file: &std::path::Path,
    error: Option<&str>,
    seed: Option<u64>,
    weight: Option<usize>,
    as_json: bool,
) -> Result<(), CliError> {
    let descriptor = CodeDescriptor::load(file).map_err(validation)?;
    let code = descriptor.rebuild_fourm().map_err(validation)?;
    let (a, b) = match (error, seed, weight) {
        (Some(spec), _, _) => parse_error_spec(code.n, spec)?,
        (None, Some(seed), Some(weight)) => {
            if weight > code.t {
                eprintln!(
                    "note: weight {} exceeds the correctable bound t = {}",
                    weight, code.t
                );
            }
            random_error(code.n, weight, seed)
        }
        _ => {
            return Err(CliError::Usage(
                "provide --error <a>:<b> or --seed S --weight W".into(),
            ))
        }
    };
    let oracle = SyndromeOracle::new(code.n, &a, &b);
    let outcome = correct(&code, &oracle);
    let (pass, recovered) = match &outcome {
        Ok(estimate) => ((estimate.a == a) && (estimate.b == b), Some(estimate)),
        Err(_) => (false, None),
    };
    if as_json {
        println!(
            "{}",
            json!({
                "pass": pass,
                "hidden_a": format!("f2:{}", a.to_hex()),
                "hidden_b": format!("f2:{}", b.to_hex()),
                "recovered_a": recovered.map(|e| format!("f2:{}", e.a.to_hex())),
                "recovered_b": recovered.map(|e| format!("f2:{}", e.b.to_hex())),
                "queries": oracle.queries_issued(),
                "failure": outcome.as_ref().err().map(|e| e.to_string()),
            })
        );
    } else {
        println!("hidden error  (a|b) = {} | {}", a, b);
        match &outcome {
            Ok(estimate) => {
                println!("recovered     (a|b) = {} | {}", estimate.a, estimate.b)
            }
            Err(e) => println!("decoding failed: {e}"),
        }
        println!("oracle queries: {}", oracle.queries_issued());
        println!("{}", if pass { "PASS" } else { "FAIL" });
    }
    if pass {
        Ok(())
    } else {
        Err(CliError::Validation("decoded error does not match".into()))
    }
}

fn cmd_simulate(file: &std::path::Path, as_json: bool) -> Result<(), CliError> {
    let descriptor = CodeDescriptor::load(file).map_err(validation)?;
    if descriptor.n > 6 {
        return Err(CliError::Budget(format!(
            "dense simulation is limited to n <= 6 (descriptor has n = {})",
            descriptor.n
        )));
    }
    let code = descriptor.to_cyclic_code().map_err(validation)?;
    let projector = stabiliser_projector(&code.span).map_err(validation)?;
    let trace = projector.trace();
    let cyclic = check_cyclic(&projector);
    let kl = kl_distance(&projector, descriptor.n);
    let css = code.span.is_css_form();
    if as_json {
        println!(
            "{}",
            json!({
                "n": descriptor.n,
                "k": code.k,
                "trace": trace.re,
                "cyclic": cyclic,
                "kl_distance": kl,
                "css_form": css,
            })
        );
    } else {
        println!("projector trace: {:.6} (expect 2^k = {})", trace.re, 1u64 << code.k);
        println!("cyclic (N† P N = P): {}", cyclic);
        println!("Knill-Laflamme distance: {}", kl);
        println!("CSS coordinate split: {}", css);
    }
    Ok(())
}

fn cmd_search562(as_json: bool) -> Result<(), CliError> {
    let code = construct(1, &BinaryPoly::x_plus_one(), &[2]).map_err(validation)?;
    let span = code.span();
    let three_subsets = search_562(&span).map_err(validation)?;
    let maximal = span.maximal_cyclic_extension().map_err(validation)?;
    let found = search_562_maximal(&maximal).map_err(validation)?;
    if as_json {
        println!(
            "{}",
            json!({
                "three_subset_candidates": 560,
                "three_subset_hits": three_subsets.len(),
                "maximal_extension_hits": found
                    .iter()
                    .map(|p| json!({
                        "characters": p.characters,
                        "dimension": p.dimension,
                        "kl_distance": p.kl_distance,
                    }))
                    .collect::<Vec<_>>(),
            })
        );
    } else {
        println!(
            "3-subsets of the 16 stabiliser characters: {} of 560 qualify",
            three_subsets.len()
        );
        println!(
            "shift-closed 6-subsets over the maximal separately cyclic extension:"
        );
        for hit in &found {
            println!(
                "  characters {:?} -> ((5,{},{})) cyclic pseudo-stabiliser code",
                hit.characters, hit.dimension, hit.kl_distance
            );
        }
        if found.is_empty() {
            println!("  none");
        }
    }
    Ok(())
}
