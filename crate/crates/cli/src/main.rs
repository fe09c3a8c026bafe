mod args;
mod commands;
mod dataset;
mod error;
mod presets;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use plasmon_core::model::parse_materials;

use args::{Cli, Format};
use commands::Context;
use dataset::Dataset;
use error::CliError;

/// Default output directory when `--out` is relative or absent.
const OUT_DIR_ENV: &str = "PLASMON_OUT_DIR";

const SUBCOMMANDS: [&str; 9] = [
    "dispersion",
    "wavenumbers",
    "regimes",
    "solve",
    "steady",
    "lattice",
    "bragg",
    "material",
    "sweep",
];

fn main() -> ExitCode {
    let argv: Vec<OsString> = std::env::args_os().collect();
    match run(argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn preset_name(argv: &[OsString]) -> Option<String> {
    let mut it = argv.iter().filter_map(|a| a.to_str());
    while let Some(a) = it.next() {
        if a == "--preset" {
            return it.next().map(str::to_string);
        }
        if let Some(v) = a.strip_prefix("--preset=") {
            return Some(v.to_string());
        }
    }
    None
}

/// Splices the preset's subcommand and flags in front of the user's flags.
fn expand_preset(argv: Vec<OsString>) -> Result<(Vec<OsString>, Option<&'static presets::Preset>), CliError> {
    let Some(name) = preset_name(&argv) else {
        return Ok((argv, None));
    };
    let preset = presets::find(&name).ok_or_else(|| {
        CliError::invalid("--preset", format!("unknown preset '{name}' (known: {})", presets::names()))
    })?;
    if argv.iter().skip(1).any(|a| a.to_str().is_some_and(|s| SUBCOMMANDS.contains(&s))) {
        return Err(CliError::invalid("--preset", "a preset already names its subcommand"));
    }
    let mut out = vec![argv[0].clone()];
    out.extend(preset.args.iter().map(OsString::from));
    out.extend(argv.into_iter().skip(1));
    Ok((out, Some(preset)))
}

fn run(argv: Vec<OsString>) -> Result<(), CliError> {
    let (argv, preset) = expand_preset(argv)?;
    let cli = Cli::try_parse_from(argv).unwrap_or_else(|e| e.exit());
    let Some(command) = &cli.command else {
        return Err(CliError::invalid("<subcommand>", "a subcommand or --preset is required"));
    };

    let materials = match &cli.materials {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::invalid("--materials", format!("{}: {e}", path.display())))?;
            parse_materials(&text).map_err(|e| CliError::invalid("--materials", format!("[{}] {e}", e.name())))?
        }
        None => Vec::new(),
    };
    let ctx = Context {
        convention: cli.convention,
        materials,
    };

    let mut data = commands::run(&ctx, command)?;
    if let Some(p) = preset {
        data.meta("preset", p.name);
        data.meta("preset_description", p.description);
        data.meta("preset_args", p.args.join(" "));
        data.meta("assumed", p.assumed);
    }

    let stem = preset.map_or(command.name(), |p| p.name);
    match destination(cli.out.clone(), stem, cli.format) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| out_error(&path, e))?;
            }
            let file = File::create(&path).map_err(|e| out_error(&path, e))?;
            emit(&data, cli.format, BufWriter::new(file)).map_err(|e| out_error(&path, e))
        }
        None => match emit(&data, cli.format, io::stdout().lock()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(CliError::invalid("--out", e.to_string())),
            _ => Ok(()),
        },
    }
}

fn out_error(path: &std::path::Path, e: io::Error) -> CliError {
    CliError::invalid("--out", format!("{}: {e}", path.display()))
}

fn destination(out: Option<PathBuf>, stem: &str, format: Format) -> Option<PathBuf> {
    let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match (out, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p),
        (None, Some(d)) => Some(d.join(format!("{stem}.{}", format.extension()))),
        (None, None) => None,
    }
}

fn emit<W: Write>(data: &Dataset, format: Format, mut out: W) -> io::Result<()> {
    match format {
        Format::Csv => data.write_csv(&mut out)?,
        Format::Json => data.write_json(&mut out)?,
    }
    out.flush()
}
