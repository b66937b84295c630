//! Benchmark CLI: reproduces the bundled iteration-count tables and runs
//! user-supplied experiment configs.
//!
//! ```text
//! mdbench reproduce <table1|table2|table3|table4|table5> [flags]
//! mdbench run <config-path> [flags]
//!
//! flags:
//!   --format csv|markdown       output format (default markdown)
//!   --out <path>                write to file instead of stdout
//!   --parallel <k>              run up to k cells concurrently (default 1)
//!   --time-limit <seconds>      per-cell wall-clock limit override
//!   --seed <u64>                seed override
//! ```
//!
//! Exit code 0 on full grid completion (timed-out and errored cells are
//! reported in the table, not fatal); nonzero on configuration errors.

use mirror_descent::bench::{
    self, emit_table, parse_config, run_experiments, OutputFormat, Overrides, Preset,
};
use std::process::ExitCode;
use std::time::Duration;

fn main() -> ExitCode {
    match run(std::env::args().skip(1).collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

struct Flags {
    format: OutputFormat,
    out: Option<String>,
    overrides: Overrides,
}

fn parse_flags(args: &[String]) -> Result<Flags, String> {
    let mut flags = Flags {
        format: OutputFormat::Markdown,
        out: None,
        overrides: Overrides::default(),
    };
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut value_for = |name: &str| -> Result<String, String> {
            it.next()
                .cloned()
                .ok_or_else(|| format!("{name} needs a value"))
        };
        match arg.as_str() {
            "--format" => {
                flags.format =
                    OutputFormat::parse(&value_for("--format")?).map_err(|e| e.to_string())?
            }
            "--out" => flags.out = Some(value_for("--out")?),
            "--parallel" => {
                flags.overrides.parallel = value_for("--parallel")?
                    .parse()
                    .map_err(|_| "--parallel needs an integer".to_string())?
            }
            "--time-limit" => {
                let secs: f64 = value_for("--time-limit")?
                    .parse()
                    .map_err(|_| "--time-limit needs seconds".to_string())?;
                flags.overrides.time_limit = Some(Duration::from_secs_f64(secs));
            }
            "--seed" => {
                flags.overrides.seed = Some(
                    value_for("--seed")?
                        .parse()
                        .map_err(|_| "--seed needs a u64".to_string())?,
                )
            }
            other => return Err(format!("unknown flag `{other}`")),
        }
    }
    Ok(flags)
}

fn run(args: Vec<String>) -> Result<(), String> {
    let usage = "usage: mdbench <reproduce <preset> | run <config-path>> \
                 [--format csv|markdown] [--out <path>] [--parallel <k>] \
                 [--time-limit <seconds>] [--seed <u64>]";
    let mut it = args.into_iter();
    let command = it.next().ok_or(usage)?;
    let rest: Vec<String> = it.collect();
    let (table, flags) = match command.as_str() {
        "reproduce" => {
            let (preset_name, flag_args) = rest.split_first().ok_or("reproduce needs a preset")?;
            let flags = parse_flags(flag_args).map_err(|e| format!("{e}\n{usage}"))?;
            let preset = Preset::parse(preset_name).map_err(|e| e.to_string())?;
            let table = bench::reproduce(preset, flags.overrides).map_err(|e| e.to_string())?;
            (table, flags)
        }
        "run" => {
            let (path, flag_args) = rest.split_first().ok_or("run needs a config path")?;
            let flags = parse_flags(flag_args).map_err(|e| format!("{e}\n{usage}"))?;
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))?;
            let mut specs = parse_config(&text).map_err(|e| e.to_string())?;
            for s in &mut specs {
                if let Some(seed) = flags.overrides.seed {
                    s.seed = seed;
                }
                if let Some(limit) = flags.overrides.time_limit {
                    s.time_limit = limit;
                }
            }
            let multi = specs.len() > 1;
            let table = run_experiments(
                &specs,
                flags.overrides.parallel.max(1),
                multi,
                bench::config_hash(&text),
            )
            .map_err(|e| e.to_string())?;
            (table, flags)
        }
        "--help" | "-h" | "help" => {
            println!("{usage}");
            return Ok(());
        }
        other => return Err(format!("unknown command `{other}`\n{usage}")),
    };
    for row in &table.rows {
        if let bench::CellOutcome::Error { message } = &row.outcome {
            eprintln!("cell {}/{}: {message}", row.eps_label, row.column);
        }
    }
    let rendered = emit_table(&table, flags.format);
    match flags.out {
        Some(path) => {
            std::fs::write(&path, rendered).map_err(|e| format!("cannot write `{path}`: {e}"))?
        }
        None => print!("{rendered}"),
    }
    Ok(())
}
