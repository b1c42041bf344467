use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use boxball::evolution::{self, Capacity};
use boxball::rmatrix::{self, AffineElement};
use boxball::solitons::{self, format_labels};
use boxball::tableau::bump_tableau;
use boxball::{CrystalParams, Element, Parallelism, State};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Box-ball system: carrier evolutions, conserved energies, combinatorial
/// R-matrices and soliton scattering.
#[derive(Parser)]
#[command(name = "boxball", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Alphabet size; letters are 1..=n and n is the vacuum.
    #[arg(long, global = true, default_value_t = 4)]
    n: u32,
    /// Read input from this file instead of standard input.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run batch work on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Prints the space-time diagram of T_capacity for each input state.
    Evolve {
        #[arg(long, default_value = "inf")]
        capacity: Capacity,
        #[arg(long, default_value_t = 1)]
        steps: u64,
        /// Adds a `#H` line of local energies -H_j under each row that is stepped.
        #[arg(long)]
        show_h: bool,
    },
    /// Like `evolve`, but runs the inverse evolution.
    Inverse {
        #[arg(long, default_value = "inf")]
        capacity: Capacity,
        #[arg(long, default_value_t = 1)]
        steps: u64,
    },
    /// Prints l, E_l, N_l for each input state.
    Energy {
        /// Last l to print; defaults to the first l with E_l = E_{l-1}.
        #[arg(long)]
        lmax: Option<usize>,
    },
    /// Applies the combinatorial R-matrix to `b|b'` pairs.
    Rmatrix {
        /// Pairs such as `1123|23`; read from the input when omitted.
        pairs: Vec<String>,
    },
    /// Checks the Yang-Baxter equation on B_l ⊗ B_l' ⊗ B_l''.
    Ybe {
        /// Three sizes, e.g. `1,2,3`.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Every exponent triple in [-window, window]^3 is checked.
        #[arg(long, default_value_t = 1)]
        window: i64,
        /// Additional seeded exponent triples drawn from [-1000, 1000]^3.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Runs a scattering experiment on each input state.
    Scatter {
        #[arg(long, default_value = "inf")]
        rule: Capacity,
        #[arg(long, default_value_t = 1000)]
        max_steps: u64,
    },
    /// Prints the bumping tableau of each input state.
    Tableau,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out).and_then(|ok| {
        out.flush()?;
        Ok(ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_input(common: &Common) -> Result<String> {
    match &common.file {
        Some(path) => {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
        }
        None => {
            let mut s = String::new();
            io::stdin().lock().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, line)| (k + 1, line.trim_end()))
        .filter(|(_, line)| !line.trim().is_empty() && !line.trim_start().starts_with('#'))
        .collect()
}

fn read_states(common: &Common, params: CrystalParams) -> Result<Vec<(usize, State)>> {
    let text = read_input(common)?;
    content_lines(&text)
        .into_iter()
        .map(|(k, line)| {
            State::parse(params, line)
                .map(|s| (k, s))
                .map_err(|e| anyhow!(e.at_line(k)))
        })
        .collect()
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<bool> {
    let common = &cli.common;
    let params = CrystalParams::new(common.n)?;
    let mode = if common.sequential {
        Parallelism::Sequential
    } else {
        Parallelism::Parallel
    };
    match &cli.command {
        Command::Evolve {
            capacity,
            steps,
            show_h,
        } => {
            let states = read_states(common, params)?;
            for (i, (line, s)) in states.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                let rows = evolution::trajectory(s, *capacity, *steps)
                    .with_context(|| format!("line {line}"))?;
                let rendered = State::render_aligned(&rows);
                for (t, text) in rendered.iter().enumerate() {
                    writeln!(out, "{text}")?;
                    if *show_h && (t as u64) < *steps {
                        let trace = evolution::step_traced(&rows[t], *capacity)?;
                        writeln!(out, "#H {}", h_line(&rows, &rows[t], &trace.h_values))?;
                    }
                }
            }
        }
        Command::Inverse { capacity, steps } => {
            let states = read_states(common, params)?;
            for (i, (line, s)) in states.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                let mut rows = vec![s.clone()];
                for _ in 0..*steps {
                    let next = evolution::step_inverse(rows.last().unwrap(), *capacity)
                        .with_context(|| format!("line {line}"))?;
                    rows.push(next);
                }
                for text in State::render_aligned(&rows) {
                    writeln!(out, "{text}")?;
                }
            }
        }
        Command::Energy { lmax } => {
            let states = read_states(common, params)?;
            for (i, (line, s)) in states.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                let sp = evolution::spectrum(s, lmax.unwrap_or(1))
                    .with_context(|| format!("line {line}"))?;
                let last = lmax.unwrap_or_else(|| sp.stabilization_point());
                writeln!(out, "# l E_l N_l")?;
                for (l, e, n) in sp.rows(last) {
                    writeln!(out, "{l} {e} {n}")?;
                }
            }
        }
        Command::Rmatrix { pairs } => {
            let owned;
            let inputs: Vec<(usize, &str)> = if pairs.is_empty() {
                owned = read_input(common)?;
                content_lines(&owned)
            } else {
                pairs
                    .iter()
                    .enumerate()
                    .map(|(k, s)| (k + 1, s.as_str()))
                    .collect()
            };
            for (line, text) in inputs {
                let (b, b2) = parse_pair(text).with_context(|| format!("line {line}"))?;
                let image = rmatrix::combinatorial_r(params, &b, &b2)
                    .with_context(|| format!("line {line}"))?;
                writeln!(out, "{image}")?;
            }
        }
        Command::Ybe {
            sizes,
            window,
            samples,
        } => {
            let &[a, b, c] = sizes.as_slice() else {
                bail!("--sizes takes exactly three values, got {}", sizes.len());
            };
            let sizes = [a, b, c];
            let label = format!(
                "n={} sizes={},{},{}",
                params.n(),
                sizes[0],
                sizes[1],
                sizes[2]
            );
            let report = rmatrix::check_yang_baxter(params, sizes, *window, mode)?;
            if let Some(c) = &report.counterexample {
                writeln!(out, "FAIL ybe {label} window={window}: {c}")?;
                return Ok(false);
            }
            writeln!(
                out,
                "PASS ybe {label} window={window} checked={}",
                report.checked
            )?;
            if *samples > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
                let exps: Vec<[i64; 3]> = (0..*samples)
                    .map(|_| [0; 3].map(|_| rng.gen_range(-1000..=1000)))
                    .collect();
                let (checked, failure) = ybe_samples(params, sizes, &exps)?;
                match failure {
                    Some(msg) => {
                        writeln!(out, "FAIL ybe {label} seed={}: {msg}", common.seed)?;
                        return Ok(false);
                    }
                    None => writeln!(
                        out,
                        "PASS ybe {label} seed={} checked={checked}",
                        common.seed
                    )?,
                }
            }
        }
        Command::Scatter { rule, max_steps } => {
            let states = read_states(common, params)?;
            let mut all_matched = true;
            for (i, (line, s)) in states.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                let report = solitons::run_scattering(s, *rule, *max_steps)
                    .with_context(|| format!("line {line}"))?;
                writeln!(out, "in:        {}", format_labels(&report.in_labels))?;
                writeln!(out, "out:       {}", format_labels(&report.out_simulated))?;
                writeln!(out, "predicted: {}", format_labels(&report.out_predicted))?;
                writeln!(out, "{}", if report.matched { "MATCH" } else { "MISMATCH" })?;
                writeln!(out, "tableau in:  {}", report.tableau_in)?;
                writeln!(out, "tableau out: {}", report.tableau_out)?;
                all_matched &= report.matched;
            }
            return Ok(all_matched);
        }
        Command::Tableau => {
            for (_, s) in read_states(common, params)? {
                writeln!(out, "{}", bump_tableau(&s))?;
            }
        }
    }
    Ok(true)
}

/// `-H_j` per cell over the common window of `rows`, as `1` or `.`.
fn h_line(rows: &[State], row: &State, h_values: &[i32]) -> String {
    let start = rows.iter().map(State::origin).min().unwrap_or(0);
    let end = rows.iter().map(State::end).max().unwrap_or(0);
    (start..end)
        .map(|p| {
            let k = p - row.origin();
            let h = if k >= 0 {
                h_values.get(k as usize).copied().unwrap_or(0)
            } else {
                0
            };
            match -h {
                0 => ".".to_string(),
                v => v.to_string(),
            }
        })
        .collect()
}

fn parse_pair(text: &str) -> Result<(Element, Element)> {
    let mut parts = text.trim().split('|');
    let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
        bail!("expected two elements separated by '|', got {text:?}");
    };
    Ok((Element::parse(a.trim())?, Element::parse(b.trim())?))
}

fn ybe_samples(
    params: CrystalParams,
    sizes: [usize; 3],
    exps: &[[i64; 3]],
) -> Result<(u64, Option<String>)> {
    let r = |x: &AffineElement, y: &AffineElement| rmatrix::apply_r(params, x, y);
    let mut checked = 0;
    for a in params.elements(sizes[0]) {
        for b in params.elements(sizes[1]) {
            for c in params.elements(sizes[2]) {
                for d in exps {
                    let x = AffineElement::new(d[0], a.clone());
                    let y = AffineElement::new(d[1], b.clone());
                    let z = AffineElement::new(d[2], c.clone());
                    // (R⊗1)(1⊗R)(R⊗1)
                    let (x1, y1) = r(&x, &y)?;
                    let (y2, z2) = r(&y1, &z)?;
                    let (x3, y3) = r(&x1, &y2)?;
                    // (1⊗R)(R⊗1)(1⊗R)
                    let (v1, w1) = r(&y, &z)?;
                    let (u2, v2) = r(&x, &v1)?;
                    let (v3, w3) = r(&v2, &w1)?;
                    checked += 1;
                    if (&x3, &y3, &z2) != (&u2, &v3, &w3) {
                        return Ok((
                            checked,
                            Some(format!(
                                "{x}|{y}|{z}: (R1)(1R)(R1) = {x3}|{y3}|{z2}, (1R)(R1)(1R) = {u2}|{v3}|{w3}"
                            )),
                        ));
                    }
                }
            }
        }
    }
    Ok((checked, None))
}
