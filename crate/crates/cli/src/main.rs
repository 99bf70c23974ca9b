use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cowrithe::{
    bfs_min_moves, chord_ascii, chord_diagram, chord_svg, cowrithe, cowrithe_closed_form,
    deform_sequence, move_lower_bounds, predicted_move_count, torus_diagram, verify_trace, writhe,
    writhe_closed_form, BraidWord, Diagram, Error, ErrorClass, MoveKind, MoveTrace, SearchLimits,
    SearchOutcome, TorusSide,
};

const DIAGRAM_HELP: &str = "Diagrams are given as `torus:P,Q`, `braid:STRANDS:LETTERS`, `unknot`, or a path to a \
JSON file {\"pd\": [[a,b,c,d], ...], \"signs\": [1, -1, ...]}. Braid letters are signed integers: `i` is b_i \
(a positive crossing, the strand in position i+1 passing over the one in position i) and `-i` its inverse, e.g. \
`braid:3:1 2 1 2`.";

#[derive(Parser)]
#[command(name = "cowrithe", version, about = "Knot diagrams, cowrithe and Reidemeister moves", after_help = DIAGRAM_HELP)]
struct Cli {
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the diagram D(p, q) as JSON.
    GenTorus {
        p: usize,
        q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Crossings, writhe, cowrithe and the interleaving matrix of a diagram.
    Invariants { diagram: String },
    /// Write the move trace deforming D(n+1, n) into D(n, n+1).
    Deform {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a trace file and check every step.
    Verify { trace: PathBuf },
    /// Breadth-first search for a shortest move sequence.
    Search {
        start: String,
        target: String,
        #[arg(long, default_value_t = 6)]
        max_crossings: usize,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
        #[arg(long, default_value_t = 2_000_000)]
        max_states: usize,
        /// Comma-separated subset of R1,R2,R3 (R1+/R1-/R2+/R2- pick one direction).
        #[arg(long, default_value = "R1,R2,R3")]
        moves: String,
        /// Skip states whose writhe and cowrithe gaps cannot close in the remaining depth.
        #[arg(long)]
        prune: bool,
        #[arg(long)]
        emit_trace: Option<PathBuf>,
    },
    /// Draw the chord diagram.
    Chord {
        diagram: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower bounds on RI and on RII+RIII moves between two diagrams.
    Bounds { first: String, second: String },
    /// Cowrithe, writhe and move counts for the torus pairs, n = 2..=N_MAX.
    Table { n_max: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

enum Failure {
    Lib(Error),
    Io(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn io<T>(r: std::io::Result<T>, path: &Path) -> Result<T, Failure> {
    r.map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse_diagram(spec: &str) -> Result<Diagram, Failure> {
    if spec == "unknot" {
        return Ok(Diagram::unknot());
    }
    if let Some(rest) = spec.strip_prefix("torus:") {
        let parts: Vec<_> = rest.split(',').map(|s| s.trim().parse::<usize>()).collect();
        return match parts.as_slice() {
            [Ok(p), Ok(q)] => Ok(torus_diagram(*p, *q)?),
            _ => Err(Error::BadParams(format!("expected torus:P,Q, got '{spec}'")).into()),
        };
    }
    if let Some(rest) = spec.strip_prefix("braid:") {
        let w: BraidWord = rest.parse()?;
        return Ok(cowrithe::closure(&w)?);
    }
    let path = Path::new(spec);
    let text = io(fs::read_to_string(path), path)?;
    Ok(Diagram::from_json(&text)?)
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => io(fs::write(p, text), p),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::GenTorus { p, q, out } => {
            let d = torus_diagram(p, q)?;
            write_out(out.as_deref(), &format!("{}\n", d.to_json()))
        }
        Command::Invariants { diagram } => {
            let d = parse_diagram(&diagram)?;
            let cd = chord_diagram(&d);
            println!("crossings {}", d.crossing_count());
            println!("writhe {}", writhe(&d));
            println!("cowrithe {}", cd.cowrithe());
            println!("faces {}", d.face_count());
            println!("interleaving");
            for row in cd.interleaving_matrix() {
                let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
                println!("  {}", line.join(" "));
            }
            Ok(())
        }
        Command::Deform { n, out } => {
            let trace = deform_sequence(n)?;
            let (riii, ri) = predicted_move_count(n)?;
            write_out(out.as_deref(), &format!("{}\n", trace.to_json()))?;
            if out.is_some() {
                println!(
                    "deform n={n}: {} steps ({riii} RIII + {ri} RI)",
                    trace.len()
                );
            }
            Ok(())
        }
        Command::Verify { trace } => {
            let text = io(fs::read_to_string(&trace), &trace)?;
            let t = MoveTrace::from_json(&text)?;
            let r = verify_trace(&t)?;
            println!(
                "ok: {} steps, RIII {}, RII {}, RI {}",
                r.steps, r.riii_count, r.rii_count, r.ri_count
            );
            let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
            println!("cowrithe deltas: {}", join(&r.cowrithe_deltas));
            println!("writhe deltas: {}", join(&r.writhe_deltas));
            println!("all positive: {}", r.all_positive);
            println!("move rules respected: {}", r.conforms);
            println!("final matches target: {}", r.final_matches_target);
            Ok(())
        }
        Command::Search {
            start,
            target,
            max_crossings,
            max_depth,
            max_states,
            moves,
            prune,
            emit_trace,
        } => {
            let d1 = parse_diagram(&start)?;
            let d2 = parse_diagram(&target)?;
            let limits = SearchLimits {
                max_crossings,
                max_depth,
                max_states,
                allowed_kinds: MoveKind::parse_list(&moves)?,
                prune,
            };
            let b = move_lower_bounds(&d1, &d2);
            let r = bfs_min_moves(&d1, &d2, &limits)?;
            match &r.outcome {
                SearchOutcome::Found(t) => {
                    println!(
                        "found: {} moves (lower bound {} = {} RI + {} RII/RIII)",
                        t.len(),
                        b.total(),
                        b.ri_lower,
                        b.rii_riii_lower
                    );
                    for s in &t.steps {
                        println!("  {}", s.mv);
                    }
                    if let Some(p) = &emit_trace {
                        io(fs::write(p, format!("{}\n", t.to_json())), p)?;
                    }
                }
                SearchOutcome::NotFoundWithinLimits => {
                    println!("not found within {max_depth} moves and {max_crossings} crossings");
                }
            }
            println!(
                "explored {} states, frontier peak {}",
                r.explored_states, r.frontier_peak
            );
            Ok(())
        }
        Command::Chord {
            diagram,
            format,
            out,
        } => {
            let cd = chord_diagram(&parse_diagram(&diagram)?);
            let text = match format {
                Format::Ascii => chord_ascii(&cd),
                Format::Svg => chord_svg(&cd),
            };
            write_out(out.as_deref(), &text)
        }
        Command::Bounds { first, second } => {
            let b = move_lower_bounds(&parse_diagram(&first)?, &parse_diagram(&second)?);
            println!("ri {}", b.ri_lower);
            println!("rii_riii {}", b.rii_riii_lower);
            Ok(())
        }
        Command::Table { n_max } => table(n_max),
    }
}

fn table(n_max: usize) -> Result<(), Failure> {
    if n_max < 2 {
        return Err(Error::BadParams(format!("n_max must be at least 2, got {n_max}")).into());
    }
    println!(
        "{:>3} {:>12} {:>12} {:>12} {:>12} {:>8}  check",
        "n", "x(D(n+1,n))", "x(D(n,n+1))", "w(D(n+1,n))", "w(D(n,n+1))", "moves"
    );
    let mut mismatches = Vec::new();
    for n in 2..=n_max {
        let over = torus_diagram(n + 1, n)?;
        let under = torus_diagram(n, n + 1)?;
        let ni = n as i64;
        let formula = (
            cowrithe_closed_form(ni, TorusSide::Over)?,
            cowrithe_closed_form(ni, TorusSide::Under)?,
            writhe_closed_form(ni, TorusSide::Over)?,
            writhe_closed_form(ni, TorusSide::Under)?,
        );
        let computed = (
            cowrithe(&over),
            cowrithe(&under),
            writhe(&over),
            writhe(&under),
        );
        let (riii, ri) = predicted_move_count(n)?;
        let b = move_lower_bounds(&over, &under);
        let ok =
            formula == computed && (b.rii_riii_lower as usize, b.ri_lower as usize) == (riii, ri);
        if !ok {
            mismatches.push(n);
        }
        println!(
            "{n:>3} {:>12} {:>12} {:>12} {:>12} {:>8}  {}",
            computed.0,
            computed.1,
            computed.2,
            computed.3,
            format!("{riii}+{ri}"),
            if ok { "ok" } else { "MISMATCH" }
        );
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "formula and diagram disagree at n = {mismatches:?}"
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: Usage: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {}: {e}", e.code());
            ExitCode::from(match e.class() {
                ErrorClass::Validation => 3,
                ErrorClass::Verification => 4,
                ErrorClass::Limits => 5,
            })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: Io: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: Mismatch: {msg}");
            ExitCode::from(4)
        }
    }
}
