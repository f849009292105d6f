use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use metacyclic::report::{analyze_cubic, relevant_splitting, to_csv};
use metacyclic::{classify_record, normalize, scan, theorem1_report, type_lattice, ClassificationRecord, Error, ScanEntry};

const EXIT_INVALID: u8 = 1;
const EXIT_DEGENERATE: u8 = 2;
const EXIT_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(name = "metacyclic", version, about = "DPF classification of pure metacyclic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a single radicand.
    Classify {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Classify every radicand in a range.
    Scan {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        dmin: u64,
        #[arg(long)]
        dmax: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Worker threads (0 uses all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Primes below the limit congruent to 2 or 4 modulo 7.
    Theorem1 {
        #[arg(long, default_value_t = 200)]
        limit: u64,
    },
    /// Admissible coarse types for p = 3, 5 or 7.
    Lattice {
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::DegenerateRadicand { .. } => EXIT_DEGENERATE,
        Error::InvalidPrime(_) | Error::InvalidInput(_) => EXIT_INVALID,
        _ => EXIT_FAILURE,
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn print_records(records: &[ClassificationRecord], format: Format) -> Result<(), Error> {
    match format {
        Format::Json => {
            let s = serde_json::to_string_pretty(records).map_err(|e| Error::InvalidInput(e.to_string()))?;
            println!("{s}");
        }
        _ => print!("{}", to_csv(records)?),
    }
    Ok(())
}

fn print_text(rec: &ClassificationRecord) -> Result<(), Error> {
    println!("radicand     d = {}   p = {}", rec.d, rec.p);
    let r = normalize(rec.d, rec.p)?;
    if rec.p == 3 {
        println!("decomposition a = {}, b = {}, species {}", opt(&rec.a), opt(&rec.b), opt(&rec.species));
        println!("discriminant {}", opt(&rec.disc));
        println!("conductor    {}", opt(&rec.conductor));
        if let Ok(an) = analyze_cubic(&r) {
            let fu = an.field.to_aux(&an.units.fundamental);
            let c: Vec<String> = fu.0.iter().map(ToString::to_string).collect();
            println!(
                "unit         ({} + {} θ + {} θ²/b) / {}   regulator {:.10}",
                c[0], c[1], c[2], fu.1, an.units.regulator
            );
            println!("class group  h = {}, invariants {:?}, 3-rank {}", an.class_group.h, an.class_group.invariants, an.class_group.three_rank);
            println!("ramified     t = {}", an.dpf.t);
        }
        println!(
            "invariants   U = {}, P = {}, A = {}, R = {}",
            opt(&rec.u),
            opt(&rec.p_dim),
            opt(&rec.a_dim),
            opt(&rec.r)
        );
        println!("type         {}", opt(&rec.type_label));
    }
    for s in relevant_splitting(&r)? {
        println!(
            "splitting    ell = {}: e = {}, f = {}, g = {}{}{}{}",
            s.ell,
            s.e,
            s.f,
            s.g,
            if s.ishida { ", ishida" } else { "" },
            if s.kobayashi { ", kobayashi" } else { "" },
            if s.septic_two_split { ", septic_two_split" } else { "" }
        );
    }
    if rec.p != 3 {
        println!("lattice      {} admissible coarse types", type_lattice(rec.p)?.len());
    }
    println!("theorem1     {}", rec.theorem1);
    println!("notes        {}", if rec.notes.is_empty() { "-" } else { &rec.notes });
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Classify { p, d, format } => {
            let (rec, failure) = classify_record(d, p)?;
            match format {
                Format::Text => print_text(&rec)?,
                f => print_records(std::slice::from_ref(&rec), f)?,
            }
            if let Some(e) = failure {
                eprintln!("error: {e}");
                return Ok(exit_for(&e));
            }
            Ok(0)
        }
        Command::Scan { p, dmin, dmax, format, jobs } => {
            let entries = scan(p, dmin, dmax, jobs)?;
            let mut records = Vec::new();
            let mut failed = false;
            for e in entries {
                match e {
                    ScanEntry::Record { record, failure } => {
                        if let Some(msg) = failure {
                            eprintln!("d={}: {msg}", record.d);
                            failed = true;
                        }
                        records.push(record);
                    }
                    ScanEntry::Skipped { d, reason } => eprintln!("skipped d={d}: {reason}"),
                }
            }
            print_records(&records, format)?;
            Ok(if failed { EXIT_FAILURE } else { 0 })
        }
        Command::Theorem1 { limit } => {
            let rep = theorem1_report(limit)?;
            let list: Vec<String> = rep.primes.iter().map(ToString::to_string).collect();
            println!("{}", list.join(","));
            println!("count {}", rep.primes.len());
            match rep.matches_reference {
                Some(true) => println!("MATCH"),
                Some(false) => {
                    println!("MISMATCH");
                    return Ok(EXIT_FAILURE);
                }
                None => {}
            }
            Ok(0)
        }
        Command::Lattice { p, format } => {
            let types = type_lattice(p)?;
            match format {
                Format::Json => {
                    let s = serde_json::to_string_pretty(&types).map_err(|e| Error::InvalidInput(e.to_string()))?;
                    println!("{s}");
                }
                Format::Csv => {
                    println!("p,label,U,A,fine_marker,partner");
                    for t in &types {
                        println!("{},{},{},{},{},{}", t.p, t.label, t.u, t.a, t.fine_marker, t.partner.clone().unwrap_or_default());
                    }
                }
                Format::Text => {
                    for t in &types {
                        let pair = t.partner.as_ref().map(|q| format!("  (pair {{{}, {}}})", t.label, q)).unwrap_or_default();
                        println!("{} U={} A={} {}{}", t.label, t.u, t.a, if t.fine_marker { "•" } else { "○" }, pair);
                    }
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
