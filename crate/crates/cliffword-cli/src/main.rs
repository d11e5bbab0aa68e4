//! Command-line interface: verification, invariants, canonical forms,
//! simplification, the construction algorithms, classification searches and
//! golden-table regression.
//!
//! Exit codes: 0 success, 1 domain error (or a real inequivalence/mismatch
//! outcome), 2 usage or parse error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cliffword::catalog::{
    parse_basis, render_basis, render_catalog, render_min_length_table, CatalogFormat, ParseError,
};
use cliffword::construct::{
    combine, concat_product, cyclic_basis, eliminate_a, extend_simple, min_length_4char,
    CombineInput,
};
use cliffword::equivalence::{canonical_form, equivalent, invariant_profile, is_simple, simplify};
use cliffword::search::{enumerate_classes_with_threads, MinLength};
use cliffword::{goldens, oracle, Word, WordMatrix};

#[derive(Parser)]
#[command(name = "cliffword", version, about = "Gamma bases as words over {I,X,Z,A}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Check the gamma-basis relations and report signature, simplicity and
    /// maximal extension
    Verify {
        file: PathBuf,
        /// Cross-check against the exact matrix realization
        #[arg(long)]
        oracle: bool,
    },
    /// Print the five equivalence-group invariants
    Invariants { file: PathBuf },
    /// Print the canonical representative of the equivalence class
    Canon { file: PathBuf },
    /// Compare two bases up to equivalence; exit 0 when equivalent, 1 when not
    Equiv { file1: PathBuf, file2: PathBuf },
    /// Erase all erasable columns
    Simplify { file: PathBuf },
    /// Classify simple, maximally extended bases at a word length
    Search {
        #[arg(long)]
        letters: usize,
        /// Write the catalog here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Worker count (default: all cores; CLIFFWORD_THREADS overrides)
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Append one generator: {w X for each row} plus I..I Z
    Extend { file: PathBuf },
    /// The combine rule {A I, B1 X, B2 Z}
    Combine {
        /// Basis file for the A set, or `-` for the empty set
        #[arg(long)]
        a: String,
        #[arg(long)]
        b1: PathBuf,
        #[arg(long)]
        b2: PathBuf,
    },
    /// The cyclic-shift construction at index n
    Cyclic {
        #[arg(long)]
        n: usize,
    },
    /// Concatenation product of two bases through one picked row
    Concat {
        file1: PathBuf,
        #[arg(long)]
        pick: usize,
        file2: PathBuf,
    },
    /// Replace A letters by the two-column substitution until none remain
    EliminateA { file: PathBuf },
    /// Minimal word length for p generators
    Minlen {
        #[arg(long)]
        p: usize,
        /// Alphabet size: 4 uses the closed formula, 3 the search
        #[arg(long, default_value = "4")]
        chars: u8,
        /// Search cap for the 3-character case
        #[arg(long, default_value = "6")]
        cap: usize,
    },
    /// Regenerate the classification tables and minimal-length rows
    Tables {
        /// Diff the regenerated outputs against the bundled goldens
        #[arg(long)]
        reproduce: bool,
        #[arg(long, default_value = "4")]
        max_letters: usize,
        #[arg(long)]
        threads: Option<usize>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<cliffword::Error> for Failure {
    fn from(e: cliffword::Error) -> Failure {
        Failure::domain(e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure::usage(e.to_string())
    }
}

fn read_basis(path: &Path) -> Result<WordMatrix, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(parse_basis(&text)?)
}

fn thread_count(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("CLIFFWORD_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

fn print_basis(matrix: &WordMatrix) {
    print!("{}", render_basis(matrix));
}

/// Maximal-extension reporting is exponential in the word length; beyond
/// this many candidates it is skipped.
const MAX_EXTENSION_CANDIDATES: u64 = 1 << 24;

fn cmd_verify(file: &Path, with_oracle: bool) -> Result<(), Failure> {
    let matrix = read_basis(file)?;
    let report = matrix.verify()?;
    println!("signature {}", report.signature);
    println!("euclidean {}", if report.euclidean { "yes" } else { "no" });
    println!("simple {}", if is_simple(&matrix) { "yes" } else { "no" });
    let alphabet = matrix.alphabet();
    let candidates = (alphabet.size() as u64).checked_pow(matrix.m() as u32);
    match candidates {
        Some(c) if c <= MAX_EXTENSION_CANDIDATES => {
            let (maximal, extensions) = matrix.is_maximally_extended(alphabet)?;
            if maximal {
                println!("maximally-extended yes (alphabet {alphabet})");
            } else {
                println!(
                    "maximally-extended no (alphabet {alphabet}, {} extension words)",
                    extensions.len()
                );
            }
        }
        _ => println!("maximally-extended not-computed (word length too large)"),
    }
    if with_oracle {
        let ok = oracle::check_clifford(&matrix)?;
        println!("oracle {}", if ok { "ok" } else { "mismatch" });
        if !ok {
            return Err(Failure::domain("oracle check failed"));
        }
    }
    Ok(())
}

fn cmd_search(
    letters: usize,
    out: Option<&Path>,
    format: Format,
    threads: Option<usize>,
) -> Result<(), Failure> {
    let catalog = enumerate_classes_with_threads(letters, thread_count(threads))?;
    let rendered = match format {
        Format::Text => render_catalog(&catalog, CatalogFormat::Text),
        Format::Structured => render_catalog(&catalog, CatalogFormat::Structured),
    };
    match out {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn cmd_minlen(p: usize, chars: u8, cap: usize) -> Result<(), Failure> {
    match chars {
        4 => println!("{}", min_length_4char(p)?),
        3 => {
            let result = cliffword::search::min_length_3char(p, cap)?;
            println!("{result}");
            if let MinLength::Unknown = result {
                eprintln!("no length within cap {cap} reaches p={p}; construction-based upper bounds may apply");
            }
        }
        other => return Err(Failure::usage(format!("--chars must be 3 or 4, got {other}"))),
    }
    Ok(())
}

fn cmd_tables(reproduce: bool, max_letters: usize, threads: Option<usize>) -> Result<(), Failure> {
    if !(3..=6).contains(&max_letters) {
        return Err(Failure::usage(format!(
            "--max-letters must be between 3 and 6, got {max_letters}"
        )));
    }
    let threads = thread_count(threads);
    let mut max_ps = Vec::new();
    let mut mismatches = Vec::new();
    for m in 1..=max_letters {
        let catalog = enumerate_classes_with_threads(m, threads)?;
        max_ps.push(catalog.classes.iter().map(|c| c.p).max().unwrap_or(0));
        if m < 3 {
            continue;
        }
        println!("m={m}: {} classes", catalog.classes.len());
        if reproduce {
            let fresh = render_catalog(&catalog, CatalogFormat::Structured);
            match goldens::catalog_for(m) {
                Some(golden) if golden == fresh => println!("m={m} catalog: ok"),
                Some(_) => {
                    println!("m={m} catalog: MISMATCH against bundled golden");
                    mismatches.push(format!("m={m} catalog"));
                }
                None => println!("m={m} catalog: no bundled golden"),
            }
        }
    }
    let table = render_min_length_table(&max_ps);
    print!("{table}");
    if reproduce {
        match goldens::min_length_table_for(max_letters) {
            Some(golden) if golden == table => println!("minimal-length table: ok"),
            Some(_) => {
                println!("minimal-length table: MISMATCH against bundled golden");
                mismatches.push("minimal-length table".to_string());
            }
            None => println!("minimal-length table: no bundled golden for cap {max_letters}"),
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::domain(format!(
            "regenerated outputs diverge from goldens: {}",
            mismatches.join(", ")
        )))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { file, oracle } => cmd_verify(&file, oracle),
        Command::Invariants { file } => {
            let matrix = read_basis(&file)?;
            println!("{}", invariant_profile(&matrix));
            Ok(())
        }
        Command::Canon { file } => {
            let matrix = read_basis(&file)?;
            print_basis(&canonical_form(&matrix).matrix);
            Ok(())
        }
        Command::Equiv { file1, file2 } => {
            let m1 = read_basis(&file1)?;
            let m2 = read_basis(&file2)?;
            if equivalent(&m1, &m2) {
                println!("equivalent");
                Ok(())
            } else {
                println!("inequivalent");
                Err(Failure {
                    code: 1,
                    message: String::new(),
                })
            }
        }
        Command::Simplify { file } => {
            let matrix = read_basis(&file)?;
            print_basis(&simplify(&matrix)?);
            Ok(())
        }
        Command::Search {
            letters,
            out,
            format,
            threads,
        } => cmd_search(letters, out.as_deref(), format, threads),
        Command::Extend { file } => {
            let matrix = read_basis(&file)?;
            print_basis(&extend_simple(&matrix)?);
            Ok(())
        }
        Command::Combine { a, b1, b2 } => {
            let a_words: Vec<Word> = if a == "-" {
                Vec::new()
            } else {
                read_basis(Path::new(&a))?.rows().to_vec()
            };
            let b1 = read_basis(&b1)?.rows().to_vec();
            let b2 = read_basis(&b2)?.rows().to_vec();
            print_basis(&combine(&CombineInput::new(a_words, b1, b2))?);
            Ok(())
        }
        Command::Cyclic { n } => {
            if n == 0 {
                return Err(Failure::usage("--n must be at least 1"));
            }
            print_basis(&cyclic_basis(n)?);
            Ok(())
        }
        Command::Concat { file1, pick, file2 } => {
            let c1 = read_basis(&file1)?;
            let c2 = read_basis(&file2)?;
            print_basis(&concat_product(&c1, pick, &c2)?);
            Ok(())
        }
        Command::EliminateA { file } => {
            let matrix = read_basis(&file)?;
            print_basis(&eliminate_a(&matrix)?);
            Ok(())
        }
        Command::Minlen { p, chars, cap } => cmd_minlen(p, chars, cap),
        Command::Tables {
            reproduce,
            max_letters,
            threads,
        } => cmd_tables(reproduce, max_letters, threads),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !failure.message.is_empty() {
                eprintln!("error: {}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}
