//! `osborn` — validate Cayley tables, check the identity catalogue, build
//! isotopes, enumerate small loops, and run the quasigroup enciphering
//! scheme.
//!
//! Exit codes: 0 all requested checks hold, 1 a check failed, 2 usage
//! error, 3 I/O error. Structured output (`--format structured`) is
//! line-oriented and stable; identical arguments and seed produce
//! byte-identical output.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use osborn_core::*;

#[derive(Parser)]
#[command(
    name = "osborn",
    version,
    about = "Finite loop algebra toolkit: Cayley tables, identity checks, isotopes, enumeration, and quasigroup enciphering",
    after_help = "Parallel quantifier scans run on the rayon thread pool; set the \
                  RAYON_NUM_THREADS environment variable to bound the worker count. \
                  Reported witnesses are deterministic regardless of thread count."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CiKind {
    Dlip,
    Osi011,
    Cip,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a loop table file and check properties against it
    Check {
        loop_file: PathBuf,
        /// Property to check (repeatable): osborn, os0..os3, wip, cip,
        /// moufang, cc, flexible, lap, rap, lip, rip, aaip, 3pap, lsip,
        /// rsip, commutative, exponent2, power-associative, vd,
        /// universal-osborn, os0-prime, osi01, osi011, dlip, g-loop
        #[arg(long = "property", value_name = "NAME")]
        properties: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Seed for sampled checks (g-loop)
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count for g-loop
        #[arg(long, default_value_t = 16)]
        samples: usize,
        /// Check all isotopes instead of sampling (g-loop)
        #[arg(long)]
        exhaustive: bool,
    },
    /// Verify theorem conclusions on a loop
    VerifyTheorem {
        loop_file: PathBuf,
        /// Theorem to verify (repeatable; all when omitted):
        /// kinyon-companion, cube-in-nucleus, rho-period-six,
        /// wip-osborn-relations, osborn-moufang, exponent-two-abelian,
        /// wip-universality
        #[arg(long = "theorem", value_name = "NAME")]
        theorems: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit the f,g-principal isotope as a table file
    Isotope {
        loop_file: PathBuf,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        g: usize,
        /// Write to a file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that every principal isotope satisfies the Osborn identity
    UniversalCheck {
        loop_file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Encipher a message with the sender's component of a functional
    Encode {
        #[arg(long = "loop")]
        loop_file: PathBuf,
        #[arg(long)]
        key: usize,
        #[arg(long, value_enum)]
        ci: CiKind,
        /// Cut the functional's word after this many generators
        #[arg(long)]
        split: usize,
        /// Codec file (defaults to the built-in B/N/O/R/S example)
        #[arg(long)]
        codec: Option<PathBuf>,
        #[arg(long)]
        msg: String,
        /// Print the per-letter encipher/decipher table instead
        #[arg(long)]
        table: bool,
    },
    /// Decipher a comma-separated element sequence
    Decode {
        #[arg(long = "loop")]
        loop_file: PathBuf,
        #[arg(long)]
        key: usize,
        #[arg(long, value_enum)]
        ci: CiKind,
        #[arg(long)]
        split: usize,
        #[arg(long)]
        codec: Option<PathBuf>,
        /// Ciphertext elements, e.g. 9,16,7,9,10,12
        #[arg(long)]
        msg: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Trace a message through a multi-terminal relay chain
    Chain {
        #[arg(long = "loop")]
        loop_file: PathBuf,
        /// '|'-separated component words, e.g. 'L:16,L:10|R:10,R:16'
        #[arg(long)]
        components: String,
        /// Key element; plaintext letters equal to it are flagged
        #[arg(long)]
        key: Option<usize>,
        #[arg(long)]
        codec: Option<PathBuf>,
        #[arg(long)]
        msg: String,
    },
    /// Enumerate all loops of a small order
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Keep only loops satisfying these properties (repeatable)
        #[arg(long = "where", value_name = "NAME")]
        filters: Vec<String>,
        /// Write one .tab file per hit into this directory
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Allow orders beyond the exhaustive cap (order 7 streams for
        /// minutes)
        #[arg(long)]
        allow_large: bool,
    },
    /// Print the right-inverse cycle decomposition
    Cycles {
        #[arg(long = "loop")]
        loop_file: PathBuf,
    },
    /// Inspect a cryptographic functional
    Cf {
        #[arg(long = "loop")]
        loop_file: PathBuf,
        #[arg(long)]
        key: usize,
        #[arg(long, value_enum)]
        ci: CiKind,
        /// Also show the sender/receiver split at this cut
        #[arg(long)]
        split: Option<usize>,
    },
}

enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn load_loop(path: &Path) -> Result<FiniteLoop, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    FiniteLoop::parse(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_codec(path: Option<&Path>, lp: &FiniteLoop) -> Result<Codec, CliError> {
    match path {
        Some(p) => {
            let text =
                fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            Codec::parse(&text, lp).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => Codec::example(lp)
            .map_err(|e| CliError::Usage(format!("built-in codec needs order >= 13: {e}"))),
    }
}

fn element_arg(lp: &FiniteLoop, index: usize, what: &str) -> Result<Element, CliError> {
    lp.element(index)
        .map_err(|e| CliError::Usage(format!("{what}: {e}")))
}

fn functional(lp: &FiniteLoop, ci: CiKind, key: Element) -> CryptoFunctional {
    match ci {
        CiKind::Dlip => cf_dlip(lp, key),
        CiKind::Osi011 => cf_osi011(lp, key),
        CiKind::Cip => cf_cip(lp, key),
    }
}

fn property_by_name(name: &str) -> Option<LoopProperty> {
    LoopProperty::ALL.into_iter().find(|p| p.name() == name)
}

struct CheckOpts {
    seed: u64,
    samples: usize,
    exhaustive: bool,
}

fn run_property(lp: &FiniteLoop, name: &str, opts: &CheckOpts) -> Result<PropertyReport, CliError> {
    let report = match name {
        "osborn" => is_osborn_all(lp),
        "os0" => is_osborn(lp, OsbornVariant::Os0),
        "os1" => is_osborn(lp, OsbornVariant::Os1),
        "os2" => is_osborn(lp, OsbornVariant::Os2),
        "os3" => is_osborn(lp, OsbornVariant::Os3),
        "universal-osborn" => is_universal_osborn(lp),
        "os0-prime" => check_os0_prime(lp),
        "osi01" => check_osi(lp, OsiIdentity::Osi01),
        "osi011" => check_osi(lp, OsiIdentity::Osi011),
        "dlip" => check_osi(lp, OsiIdentity::Dlip),
        "g-loop" => {
            if opts.exhaustive {
                is_gloop_exhaustive(lp)
            } else {
                is_gloop_sampled(lp, opts.samples, opts.seed)
            }
        }
        other => match property_by_name(other) {
            Some(p) => has_property(lp, p),
            None => return Err(CliError::Usage(format!("unknown property {other:?}"))),
        },
    };
    Ok(report)
}

fn print_report(report: &PropertyReport, format: Format) {
    match format {
        Format::Structured => println!("{}", report.structured_line()),
        Format::Text => match &report.note {
            Some(note) => println!("{} ({note})", report.structured_line()),
            None => println!("{}", report.structured_line()),
        },
    }
}

fn element_list(elems: &[Element]) -> String {
    elems
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn run(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Check {
            loop_file,
            properties,
            format,
            seed,
            samples,
            exhaustive,
        } => {
            let lp = load_loop(&loop_file)?;
            if format == Format::Text {
                println!(
                    "loop {}: order {}, identity {}",
                    loop_file.display(),
                    lp.order(),
                    lp.identity()
                );
            }
            let opts = CheckOpts {
                seed,
                samples,
                exhaustive,
            };
            let mut all_pass = true;
            for name in &properties {
                let report = run_property(&lp, name, &opts)?;
                all_pass &= report.passed();
                print_report(&report, format);
            }
            Ok(all_pass)
        }
        Command::VerifyTheorem {
            loop_file,
            theorems,
            format,
        } => {
            let lp = load_loop(&loop_file)?;
            let selected: Vec<TheoremCheck> = if theorems.is_empty() {
                TheoremCheck::ALL.to_vec()
            } else {
                theorems
                    .iter()
                    .map(|name| {
                        TheoremCheck::ALL
                            .into_iter()
                            .find(|t| t.name() == name)
                            .ok_or_else(|| CliError::Usage(format!("unknown theorem {name:?}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            let mut all_pass = true;
            for theorem in selected {
                let report = verify_theorem(&lp, theorem);
                all_pass &= report.passed();
                print_report(&report, format);
            }
            Ok(all_pass)
        }
        Command::Isotope {
            loop_file,
            f,
            g,
            output,
        } => {
            let lp = load_loop(&loop_file)?;
            let f = element_arg(&lp, f, "--f")?;
            let g = element_arg(&lp, g, "--g")?;
            let iso = principal_isotope(&lp, f, g);
            let text = iso.serialize();
            match output {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::UniversalCheck { loop_file, format } => {
            let lp = load_loop(&loop_file)?;
            let report = is_universal_osborn(&lp);
            print_report(&report, format);
            Ok(report.passed())
        }
        Command::Encode {
            loop_file,
            key,
            ci,
            split: split_at,
            codec,
            msg,
            table,
        } => {
            let lp = load_loop(&loop_file)?;
            let codec = load_codec(codec.as_deref(), &lp)?;
            let key = element_arg(&lp, key, "--key")?;
            let f = functional(&lp, ci, key);
            let (sfc, rfc) = split(&f, split_at).map_err(|e| CliError::Usage(e.to_string()))?;
            let cipher =
                encipher(&lp, &codec, &sfc, &msg).map_err(|e| CliError::Usage(e.to_string()))?;
            warn_key_collisions(&codec, &msg, key);
            if table {
                print!("{}", example_table(&lp, &codec, &sfc, &rfc, &msg)?);
            } else {
                println!("{}", element_list(&cipher));
            }
            Ok(true)
        }
        Command::Decode {
            loop_file,
            key,
            ci,
            split: split_at,
            codec,
            msg,
            format,
        } => {
            let lp = load_loop(&loop_file)?;
            let codec = load_codec(codec.as_deref(), &lp)?;
            let key = element_arg(&lp, key, "--key")?;
            let f = functional(&lp, ci, key);
            let (_, rfc) = split(&f, split_at).map_err(|e| CliError::Usage(e.to_string()))?;
            let cipher = parse_elements(&lp, &msg)?;
            let decoded = decipher_elements(&lp, &rfc, &cipher);
            let plain =
                decipher(&lp, &codec, &rfc, &cipher).map_err(|e| CliError::Usage(e.to_string()))?;
            if format == Format::Structured {
                println!("elements {}", element_list(&decoded));
                println!("plaintext {plain}");
            } else {
                println!("{plain}");
            }
            Ok(true)
        }
        Command::Chain {
            loop_file,
            components,
            key,
            codec,
            msg,
        } => {
            let lp = load_loop(&loop_file)?;
            let codec = load_codec(codec.as_deref(), &lp)?;
            let key = key.map(|k| element_arg(&lp, k, "--key")).transpose()?;
            let parts = components
                .split('|')
                .map(|w| MappingWord::parse(w, &lp))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let config = ChainConfig {
                components: parts,
                key,
            };
            match chain_transmit(&lp, &config, &codec, &msg) {
                Ok(trace) => {
                    print!("{}", render_chain(&codec, &trace)?);
                    Ok(true)
                }
                Err(CryptoError::BrokenChain(m)) => {
                    println!("chain broken: element {m} is not fixed by the full word");
                    Ok(false)
                }
                Err(e) => Err(CliError::Usage(e.to_string())),
            }
        }
        Command::Enumerate {
            order,
            filters,
            emit,
            allow_large,
        } => {
            let iter = if allow_large {
                enumerate_loops_streaming(order)
            } else {
                enumerate_loops(order)
            }
            .map_err(|e| CliError::Usage(e.to_string()))?;
            let preds: Vec<String> = filters.clone();
            let opts = CheckOpts {
                seed: 0,
                samples: 16,
                exhaustive: false,
            };
            if let Some(dir) = &emit {
                fs::create_dir_all(dir)
                    .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            }
            let mut count = 0usize;
            for lp in iter {
                let mut keep = true;
                for name in &preds {
                    if name == "g-loop" {
                        return Err(CliError::Usage(
                            "g-loop is not available as an enumeration filter".into(),
                        ));
                    }
                    if !run_property(&lp, name, &opts)?.passed() {
                        keep = false;
                        break;
                    }
                }
                if !keep {
                    continue;
                }
                count += 1;
                if let Some(dir) = &emit {
                    let path = dir.join(format!("loop-{count:06}.tab"));
                    fs::write(&path, lp.serialize())
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                }
            }
            if preds.is_empty() {
                println!("order {order}: {count} loops");
            } else {
                println!("order {order} where {}: {count} loops", preds.join(","));
            }
            Ok(true)
        }
        Command::Cycles { loop_file } => {
            let lp = load_loop(&loop_file)?;
            let report = inverse_cycles(&lp);
            println!("{}", report.notation());
            let lengths = report
                .lengths()
                .into_iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            println!("lengths: {lengths}");
            Ok(true)
        }
        Command::Cf {
            loop_file,
            key,
            ci,
            split: split_at,
        } => {
            let lp = load_loop(&loop_file)?;
            let key = element_arg(&lp, key, "--key")?;
            let f = functional(&lp, ci, key);
            println!("name {}", f.name());
            println!("key {}", f.key());
            println!("degree {}", f.degree());
            println!("word {}", f.word());
            let comps = f
                .components()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" | ");
            println!("components {comps}");
            let ci_ok = is_ci(&lp, &f);
            if ci_ok {
                println!("ci holds");
            } else {
                let witness = lp
                    .elements()
                    .find(|&y| f.word().evaluate(&lp, y) != y)
                    .expect("a non-identity map moves some point");
                println!("ci fails witness: {witness}");
            }
            if let Some(k) = split_at {
                let (sfc, rfc) = split(&f, k).map_err(|e| CliError::Usage(e.to_string()))?;
                println!("sfc {sfc}");
                println!("rfc {rfc}");
            }
            Ok(ci_ok)
        }
    }
}

fn parse_elements(lp: &FiniteLoop, msg: &str) -> Result<Vec<Element>, CliError> {
    msg.split(',')
        .map(|tok| {
            let idx: usize = tok
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad element {tok:?} in --msg")))?;
            element_arg(lp, idx, "--msg")
        })
        .collect()
}

fn warn_key_collisions(codec: &Codec, msg: &str, key: Element) {
    for (pos, ch) in msg.chars().enumerate() {
        if codec.element_for(ch).ok() == Some(key) {
            eprintln!(
                "note: message letter {ch:?} at position {} is the key element {key}",
                pos + 1
            );
        }
    }
}

/// The per-letter table for the worked example: one row per distinct
/// message letter in codec order.
fn example_table(
    lp: &FiniteLoop,
    codec: &Codec,
    sfc: &MappingWord,
    rfc: &MappingWord,
    msg: &str,
) -> Result<String, CliError> {
    let mut out = String::from("LETTER ENCIPHER DECIPHER DECODED\n");
    for (letter, y) in codec.letters() {
        if !msg.contains(letter) {
            continue;
        }
        let enc = sfc.evaluate(lp, y);
        let dec = rfc.evaluate(lp, enc);
        let back = codec
            .letter_for(dec)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let _ = writeln!(out, "{letter} {enc} {dec} {back}");
    }
    Ok(out)
}

fn render_chain(codec: &Codec, trace: &ChainTrace) -> Result<String, CliError> {
    let mut out = String::new();
    let _ = writeln!(out, "source: {}", element_list(&trace.source));
    for (i, hop) in trace.hops.iter().enumerate() {
        let exposed: Vec<String> = hop
            .exposed
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(j, _)| (j + 1).to_string())
            .collect();
        let exposed = if exposed.is_empty() {
            "-".to_string()
        } else {
            exposed.join(",")
        };
        let _ = writeln!(
            out,
            "hop {} {}: {} exposed: {}",
            i + 1,
            hop.component,
            element_list(&hop.elements),
            exposed
        );
    }
    if !trace.key_collisions.is_empty() {
        let positions: Vec<String> = trace
            .key_collisions
            .iter()
            .map(|j| (j + 1).to_string())
            .collect();
        let _ = writeln!(out, "key-collisions: {}", positions.join(","));
    }
    let received: Result<String, _> = trace
        .received()
        .iter()
        .map(|&e| codec.letter_for(e))
        .collect();
    match received {
        Ok(text) => {
            let _ = writeln!(out, "received: {text}");
        }
        Err(_) => {
            let _ = writeln!(out, "received: {}", element_list(trace.received()));
        }
    }
    Ok(out)
}
