//! `fis`: command-line front end. Exit status is 0 for a positive verdict,
//! 1 for a negative one and 2 for any error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fis_core::analysis::{
    bounded_accessibility, bounded_emptiness, structural_check, SearchBounds, Witness,
};
use fis_core::fis::{enumerate_language, parse_fis, recognize, write_fis, Fis, Transition};
use fis_core::grid::{parse_grid, Grid};
use fis_core::pcp::{
    build_s, build_s1, parse_pcp, s1_witness, solve_pcp, witness_from_solution, PcpInstance,
    PcpSolution,
};
use fis_core::tiles::{fis_to_tiles, parse_tiles, tiles_to_fis, write_tiles};

#[derive(Parser)]
#[command(name = "fis", version, about = "Finite interactive systems, tile systems and PCP reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a FIS accepts a grid.
    Recognize {
        #[arg(long)]
        fis: PathBuf,
        #[arg(long)]
        grid: PathBuf,
        /// Write the accepting run here.
        #[arg(long)]
        scenario: Option<PathBuf>,
    },
    /// Print every accepted grid within the bounds, in canonical order.
    Enumerate {
        #[arg(long)]
        fis: PathBuf,
        #[arg(long)]
        max_rows: usize,
        #[arg(long)]
        max_cols: usize,
    },
    /// Compile a PCP instance into its reduction FIS.
    CompilePcp {
        #[arg(long)]
        pcp: PathBuf,
        /// Build the accessibility variant instead.
        #[arg(long)]
        s1: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for a PCP solution with at most `max-k` indices.
    SolvePcp {
        #[arg(long)]
        pcp: PathBuf,
        #[arg(long)]
        max_k: usize,
    },
    /// Print the witness grid encoding a solution.
    Witness {
        #[arg(long)]
        pcp: PathBuf,
        /// One-based indices separated by spaces or commas.
        #[arg(long)]
        indices: String,
        #[arg(long)]
        s1: bool,
    },
    /// Print the canonically first accepted grid within the bounds.
    CheckEmpty {
        #[arg(long)]
        fis: PathBuf,
        #[arg(long)]
        max_rows: usize,
        #[arg(long)]
        max_cols: usize,
    },
    /// Print the canonically first grid whose run uses a transition.
    CheckAccess {
        #[arg(long)]
        fis: PathBuf,
        /// `north west letter east south`
        #[arg(long)]
        trans: String,
        #[arg(long)]
        max_rows: usize,
        #[arg(long)]
        max_cols: usize,
    },
    /// Convert between FIS and tile-system files.
    Convert {
        #[arg(long, conflicts_with = "tiles", required_unless_present = "tiles")]
        fis: Option<PathBuf>,
        #[arg(long)]
        tiles: Option<PathBuf>,
        #[arg(long, value_enum)]
        to: Format,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a grid through the reduction FIS of an instance and check the
    /// shape of the run.
    CheckStructure {
        #[arg(long)]
        pcp: PathBuf,
        #[arg(long)]
        grid: PathBuf,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Fis,
    Tiles,
}

enum Verdict {
    Yes,
    No,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn load_fis(path: &Path) -> Result<Fis> {
    let f = parse_fis(&read(path)?).with_context(|| path.display().to_string())?;
    if let Some(d) = f.validate().first() {
        bail!("{}: {d}", path.display());
    }
    for w in f.warnings() {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(f)
}

fn load_grid(path: &Path) -> Result<Grid> {
    parse_grid(&read(path)?).with_context(|| path.display().to_string())
}

fn load_pcp(path: &Path) -> Result<PcpInstance> {
    parse_pcp(&read(path)?).with_context(|| path.display().to_string())
}

fn bounds(max_rows: usize, max_cols: usize) -> Result<SearchBounds> {
    Ok(SearchBounds::new(max_rows, max_cols)?)
}

fn print_witness(found: Option<Witness>, none: &str) -> Verdict {
    match found {
        Some(w) => {
            print!("{}", w.grid);
            Verdict::Yes
        }
        None => {
            println!("{none}");
            Verdict::No
        }
    }
}

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::Recognize {
            fis,
            grid,
            scenario,
        } => {
            let f = load_fis(&fis)?;
            let w = load_grid(&grid)?;
            match recognize(&f, &w)? {
                Some(run) => {
                    println!("ACCEPT");
                    if let Some(path) = scenario {
                        write(&path, &run.render())?;
                    }
                    Ok(Verdict::Yes)
                }
                None => {
                    println!("REJECT");
                    Ok(Verdict::No)
                }
            }
        }
        Command::Enumerate {
            fis,
            max_rows,
            max_cols,
        } => {
            let f = load_fis(&fis)?;
            bounds(max_rows, max_cols)?;
            let grids = enumerate_language(&f, max_rows, max_cols)?;
            let texts: Vec<String> = grids.iter().map(Grid::to_text).collect();
            print!("{}", texts.join("\n"));
            Ok(Verdict::Yes)
        }
        Command::CompilePcp { pcp, s1, out } => {
            let p = load_pcp(&pcp)?;
            let f = if s1 { build_s1(&p) } else { build_s(&p) };
            write(&out, &write_fis(&f))?;
            Ok(Verdict::Yes)
        }
        Command::SolvePcp { pcp, max_k } => {
            if max_k == 0 {
                bail!("--max-k must be at least 1");
            }
            let p = load_pcp(&pcp)?;
            match solve_pcp(&p, max_k) {
                Some(sol) => {
                    println!("{sol}");
                    Ok(Verdict::Yes)
                }
                None => {
                    println!("NONE");
                    Ok(Verdict::No)
                }
            }
        }
        Command::Witness { pcp, indices, s1 } => {
            let p = load_pcp(&pcp)?;
            let indices = indices
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().with_context(|| format!("bad index {s:?}")))
                .collect::<Result<Vec<_>>>()?;
            let sol = PcpSolution::new(&p, indices)?;
            let w = if s1 {
                s1_witness(&p, &sol)?
            } else {
                witness_from_solution(&p, &sol)?
            };
            print!("{w}");
            Ok(Verdict::Yes)
        }
        Command::CheckEmpty {
            fis,
            max_rows,
            max_cols,
        } => {
            let f = load_fis(&fis)?;
            let found = bounded_emptiness(&f, bounds(max_rows, max_cols)?)?;
            Ok(print_witness(found, "EMPTY-WITHIN-BOUNDS"))
        }
        Command::CheckAccess {
            fis,
            trans,
            max_rows,
            max_cols,
        } => {
            let f = load_fis(&fis)?;
            let t = Transition::parse(&trans).map_err(anyhow::Error::msg)?;
            let found = bounded_accessibility(&f, &t, bounds(max_rows, max_cols)?)?;
            Ok(print_witness(found, "INACCESSIBLE-WITHIN-BOUNDS"))
        }
        Command::Convert {
            fis,
            tiles,
            to,
            out,
        } => {
            match (fis, tiles, to) {
                (Some(path), None, Format::Tiles) => {
                    write(&out, &write_tiles(&fis_to_tiles(&load_fis(&path)?)))?;
                }
                (None, Some(path), Format::Fis) => {
                    let ts = parse_tiles(&read(&path)?).with_context(|| path.display().to_string())?;
                    write(&out, &write_fis(&tiles_to_fis(&ts)))?;
                }
                _ => bail!("use --fis with --to tiles, or --tiles with --to fis"),
            }
            Ok(Verdict::Yes)
        }
        Command::CheckStructure { pcp, grid, json } => {
            let p = load_pcp(&pcp)?;
            let w = load_grid(&grid)?;
            let Some(run) = recognize(&build_s(&p), &w)? else {
                println!("REJECT");
                return Ok(Verdict::No);
            };
            let report = structural_check(&p, &run)?;
            print!("{}", report.to_text());
            if let Some(path) = json {
                write(&path, &(report.to_json() + "\n"))?;
            }
            Ok(if report.passed { Verdict::Yes } else { Verdict::No })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
