use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use srlin::cohomology::CohomologyTable;
use srlin::defect::{froberg_lindef, is_componentwise_linear, linearity_defect_from_table};
use srlin::io::{self, InputDocument, InputError, Prepared, RunReport};
use srlin::linear_part::{BettiTable, LinearPartComplex};
use srlin::oracle::{
    compare_with_oracle, minimal_free_resolution, nu_report, strand_coefficient_probe,
};
use srlin::random::{corpus, random_complexes};
use srlin::simplicial::{ideal_from_complex, polarize};
use srlin::Error;

#[derive(Parser)]
#[command(
    name = "srlin",
    version,
    about = "Linear parts of resolutions of Stanley-Reisner rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input file with one JSON document per line; `-` or absent reads stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Field characteristic, overriding the document's `p`.
    #[arg(long = "char", global = true)]
    characteristic: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Add wall-clock time to each report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Multigraded Betti numbers via Hochster's formula.
    Betti,
    /// Linear part of the minimal free resolution.
    Linpart {
        /// Emit a Graphviz digraph instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Linearity defect of the Stanley-Reisner ideal.
    Lindef,
    /// Componentwise linearity, by four equivalent criteria.
    Cwl,
    /// Brute-force minimal free resolution.
    Oracle {
        #[arg(long)]
        max_step: Option<usize>,
        /// Cross-check the resolution against the cohomological constructions.
        #[arg(long)]
        verify: bool,
        /// Report differential coefficients on generators of degree at most K.
        #[arg(long, value_name = "K")]
        probe: Option<usize>,
    },
    /// Polarize the input ideal.
    Polarize,
    /// Emit random complexes as input documents.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 0.6)]
        face_prob: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Emit the mixed-size test corpus instead (ignores --n and --face-prob).
        #[arg(long)]
        corpus: bool,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::NonMinimal(_) | Error::MaxStepExceeded(_) => {
                Failure::Internal(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Invalid(inner) => inner.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn csv_unsupported(name: &str) -> Failure {
    Failure::Input(format!("--format csv is not available for {name}"))
}

/// Either a JSON payload or preformatted text (CSV or DOT).
enum Payload {
    Json(Value),
    Text(String),
}

fn betti_payload(table: &BettiTable) -> Value {
    let coarse: Vec<Value> = table
        .coarse()
        .iter()
        .map(|(&(i, d), &beta)| json!({"i": i, "d": d, "beta": beta}))
        .collect();
    json!({"ranks": table.ranks(), "betti": to_value(table), "coarse": coarse})
}

fn run(cli: &Cli, prepared: &Prepared) -> Result<Payload, Failure> {
    let complex = &prepared.complex;
    let field = prepared.field;
    let csv = cli.format == Format::Csv;
    match &cli.command {
        Command::Betti => {
            let table = CohomologyTable::new(complex, field);
            table.fill();
            let betti = BettiTable::from_table(&table);
            Ok(if csv {
                Payload::Text(io::betti_csv(&betti))
            } else {
                Payload::Json(betti_payload(&betti))
            })
        }
        Command::Linpart { dot } => {
            let table = CohomologyTable::new(complex, field);
            table.fill();
            let lp = LinearPartComplex::from_table(&table)?;
            if *dot {
                return Ok(Payload::Text(io::linear_part_dot(&lp)));
            }
            if csv {
                return Ok(Payload::Text(io::linear_part_csv(&lp)));
            }
            let mut v = to_value(&lp);
            v["arrows"] = to_value(&lp.nonzero_arrows());
            Ok(Payload::Json(v))
        }
        Command::Lindef => {
            let table = CohomologyTable::new(complex, field);
            table.fill();
            let report = linearity_defect_from_table(&table)?;
            if csv {
                return Ok(Payload::Text(io::defect_csv(&report)));
            }
            let mut v = to_value(&report);
            if complex.dim().is_some_and(|d| d <= 1) {
                match froberg_lindef(complex, field) {
                    Ok(fr) => {
                        v["froberg"] = Value::from(fr.value);
                        v["froberg_agrees"] = Value::from(fr.agrees);
                    }
                    Err(Error::NotAGraph(_)) => {}
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(Payload::Json(v))
        }
        Command::Cwl => {
            if csv {
                return Err(csv_unsupported("cwl"));
            }
            Ok(Payload::Json(to_value(&is_componentwise_linear(
                complex, field,
            )?)))
        }
        Command::Oracle {
            max_step,
            verify,
            probe,
        } => {
            let max_step = max_step.unwrap_or(complex.n());
            let (resolution, nu, check) = if *verify {
                let cmp = compare_with_oracle(complex, field, max_step)?;
                (cmp.resolution, cmp.nu, Some(cmp.check))
            } else {
                let r = minimal_free_resolution(complex, field, max_step)?;
                let nu = nu_report(&r)?;
                (r, nu, None)
            };
            if let Some(check) = check.as_ref().filter(|c| !c.passed()) {
                return Err(Failure::Internal(format!(
                    "cross-check failed: {}",
                    check.mismatches.join("; ")
                )));
            }
            if csv {
                return Ok(Payload::Text(io::resolution_csv(&resolution)));
            }
            let mut v = json!({"resolution": to_value(&resolution), "nu": to_value(&nu)});
            if let Some(k) = probe {
                let coeffs: Vec<Value> = strand_coefficient_probe(&resolution, *k)?
                    .iter()
                    .map(|(c, m)| json!({"coeff": c, "count": m}))
                    .collect();
                v["probe"] = json!({"k": k, "coefficients": coeffs});
            }
            if let Some(check) = check {
                v["verify"] = to_value(&check);
            }
            Ok(Payload::Json(v))
        }
        Command::Polarize => {
            if csv {
                return Err(csv_unsupported("polarize"));
            }
            let ideal = match &prepared.ideal {
                Some(i) => i.clone(),
                None => ideal_from_complex(complex)?,
            };
            let (polar, map) = polarize(&ideal)?;
            Ok(Payload::Json(json!({
                "ideal": to_value(&ideal.generators()),
                "polarized": to_value(&polar.generators()),
                "map": to_value(&map),
            })))
        }
        Command::Random { .. } => unreachable!("handled before reading input"),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Betti => "betti",
        Command::Linpart { .. } => "linpart",
        Command::Lindef => "lindef",
        Command::Cwl => "cwl",
        Command::Oracle { .. } => "oracle",
        Command::Polarize => "polarize",
        Command::Random { .. } => "random",
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(e.to_string()))?;
        }
    }
    Ok(text)
}

fn main_inner(cli: &Cli, out: &mut impl Write) -> Result<(), Failure> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    if let Command::Random {
        seed,
        n,
        face_prob,
        count,
        corpus: use_corpus,
    } = &cli.command
    {
        if *n > srlin::simplicial::MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n: *n,
                max: srlin::simplicial::MAX_VERTICES,
            }
            .into());
        }
        let complexes = if *use_corpus {
            corpus(*seed, *count)?
        } else {
            random_complexes(*seed, *n, *face_prob, *count)?
        };
        for c in complexes {
            let mut doc = InputDocument::from_complex(&c);
            doc.p = cli.characteristic;
            writeln!(
                out,
                "{}",
                serde_json::to_string(&doc).expect("serializable")
            )
            .map_err(|e| Failure::Internal(e.to_string()))?;
        }
        return Ok(());
    }
    let text = read_input(cli.input.as_ref())?;
    let docs = io::parse_documents(&text)?;
    for doc in &docs {
        let prepared = io::prepare(doc, cli.characteristic)?;
        let start = Instant::now();
        let payload = run(cli, &prepared)?;
        let text = match payload {
            Payload::Text(t) => t,
            Payload::Json(result) => {
                let report = RunReport {
                    command: command_name(&cli.command).to_string(),
                    field: prepared.field,
                    n: prepared.complex.n(),
                    polarization: prepared.polarization.clone(),
                    timing_ms: cli.timing.then(|| start.elapsed().as_millis()),
                    result,
                };
                report.to_json_line() + "\n"
            }
        };
        out.write_all(text.as_bytes())
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let result = main_inner(&cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("srlin: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("srlin: internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
