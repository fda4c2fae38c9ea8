//! Command-line front end. `run` returns the exit code and the rendered output
//! so that tests can drive it without a subprocess.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::dirlimit::{
    build_factoring_map, check_factoring, colimit_norm, elements_equal, validate_system, verify_structure,
    ColimitElement, Cone, DirectSystem, EqualityMode, SystemFile,
};
use crate::error::{Error, Result};
use crate::latmaps::{check_property, Element, MapFile, Probe, Property, SpaceDesc, DEFAULT_CAP};
use crate::ordercont::{build_example, run_example};
use crate::report::{Claim, ClaimStatus, Report};
use crate::seqlat::EpSeq;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Sampled,
    /// Equality of classes up to a null seminorm difference.
    Seminorm,
}

#[derive(Debug, Parser)]
#[command(name = "dirlat", version, about = "Exact checks for lattice maps and direct limits of lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct Sampling {
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Required with `--mode sampled`.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
}

impl Sampling {
    fn probe(&self) -> Result<Probe> {
        match (self.mode, self.seed) {
            (Mode::Sampled, None) => Err(Error::Parse("--mode sampled needs --seed".into())),
            (_, seed) => Ok(Probe::new(seed.unwrap_or(0), self.samples)),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a property of a single map.
    CheckMap {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        property: Property,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Work with a direct system and its standard colimit model.
    Colimit {
        #[command(subcommand)]
        action: ColimitCommand,
    },
    /// Run a shipped example bundle.
    Example {
        id: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Write the bundle's system and expected-claims files into this
        /// directory instead of running it.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ColimitCommand {
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    Equal {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = 8)]
        k_max: usize,
        #[arg(long, default_value_t = 10)]
        horizon: usize,
    },
    Norm {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        element: PathBuf,
        #[arg(long, default_value_t = 10)]
        horizon: usize,
    },
    Factoring {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    Structure {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
}

/// An element of the colimit as stored on disk:
/// `{"index": 1, "vector": ["1", "-1"]}` or `{"index": 2, "sequence": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementFile {
    pub index: usize,
    #[serde(flatten)]
    pub rep: Element,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<DirectSystem> {
    read_json::<SystemFile>(path)?.into_system()
}

fn load_element(sys: &DirectSystem, path: &Path) -> Result<ColimitElement> {
    let f: ElementFile = read_json(path)?;
    // a plain vector stands for its finitely supported sequence
    let rep = match (sys.object(f.index)?, f.rep) {
        (SpaceDesc::Seq(_), Element::Vector(v)) => Element::Sequence(EpSeq::finite(v.into_entries())),
        (_, rep) => rep,
    };
    ColimitElement::new(sys, f.index, rep)
}

fn exit_for(status: ClaimStatus) -> i32 {
    match status {
        ClaimStatus::Fail => EXIT_FAILS,
        ClaimStatus::Inconclusive => EXIT_INCONCLUSIVE,
        _ => EXIT_HOLDS,
    }
}

pub struct Output {
    report: Report,
    extra: Option<serde_json::Value>,
}

impl From<Report> for Output {
    fn from(report: Report) -> Self {
        Output { report, extra: None }
    }
}

fn execute(command: &Command) -> Result<Output> {
    match command {
        Command::CheckMap {
            input,
            property,
            sampling,
            cap,
        } => {
            let map = read_json::<MapFile>(input)?.into_map()?;
            let v = check_property(&map, *property, *cap, sampling.probe()?)?;
            let mut r = Report::new(format!("{} : {}", input.display(), map.describe()));
            r.push(Claim::expect_holds(property.to_string(), v));
            Ok(r.into())
        }
        Command::Colimit { action } => colimit(action),
        Command::Example {
            id,
            seed,
            samples,
            export: Some(dir),
        } => {
            let _ = (seed, samples);
            export_bundle(id, dir)
        }
        Command::Example { id, seed, samples, .. } => {
            let bundle = build_example(id)?;
            Ok(run_example(&bundle, Probe::new(*seed, *samples))?.into())
        }
    }
}

/// Writes `system.json` (when the bundle has a system) and `claims.json`.
pub fn export_bundle(id: &str, dir: &Path) -> Result<Output> {
    let bundle = build_example(id)?;
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let mut r = Report::new(format!("export of example {id}"));
    let mut write = |name: &str, text: String| -> Result<()> {
        fs::write(dir.join(name), text + "\n").map_err(io)?;
        r.push(Claim::new(format!("wrote {name}"), ClaimStatus::Pass));
        Ok(())
    };
    if let Some(file) = bundle.system_file() {
        write("system.json", serde_json::to_string_pretty(&file).expect("system serializes"))?;
    }
    write("claims.json", serde_json::to_string_pretty(&bundle.claims_file()).expect("claims serialize"))?;
    Ok(r.into())
}

fn colimit(action: &ColimitCommand) -> Result<Output> {
    match action {
        ColimitCommand::Validate { input, depth } => Ok(validate_system(&load_system(input)?, *depth)?.into()),
        ColimitCommand::Equal {
            input,
            a,
            b,
            mode,
            k_max,
            horizon,
        } => {
            let sys = load_system(input)?;
            let (x, y) = (load_element(&sys, a)?, load_element(&sys, b)?);
            let mode = match mode {
                Mode::Exact => EqualityMode::Exact { k_max: *k_max },
                Mode::Seminorm => EqualityMode::Seminorm { horizon: *horizon },
                Mode::Sampled => return Err(Error::Parse("equality is exact or seminorm".into())),
            };
            let v = elements_equal(&sys, &x, &y, mode)?;
            let mut r = Report::new(format!("equality in the colimit of {}", input.display()));
            r.push(Claim::expect_holds("elements equal", v));
            Ok(r.into())
        }
        ColimitCommand::Norm {
            input,
            element,
            horizon,
        } => {
            let sys = load_system(input)?;
            let x = load_element(&sys, element)?;
            let bracket = colimit_norm(&sys, &x, *horizon)?;
            let mut r = Report::new(format!("norm in the colimit of {}", input.display()));
            let values: Vec<String> = bracket.upper_sequence.iter().map(ToString::to_string).collect();
            let claim = match &bracket.certified_limit {
                Some(l) => Claim::new("certified limit", ClaimStatus::Pass).with_detail(format!(
                    "{} from index {} ({})",
                    l.value, l.stable_from, l.certificate
                )),
                None => Claim::new("certified limit", ClaimStatus::Inconclusive)
                    .with_detail(format!("none within horizon {horizon}")),
            };
            r.push(Claim::new("bracket", ClaimStatus::Info).with_detail(values.join(", ")));
            r.push(claim);
            Ok(Output {
                report: r,
                extra: Some(serde_json::to_value(&bracket).expect("bracket serializes")),
            })
        }
        ColimitCommand::Factoring {
            input,
            depth,
            seed,
            samples,
        } => {
            let sys = load_system(input)?;
            let chi = build_factoring_map(&sys, Cone::model(&sys)?, *depth)?;
            Ok(check_factoring(&chi, *depth, Probe::new(*seed, *samples))?.into())
        }
        ColimitCommand::Structure { input, depth } => {
            let sys = load_system(input)?;
            let legs = Cone::model(&sys)?.legs_up_to(&sys, *depth)?;
            Ok(verify_structure(&sys, &legs, *depth)?.into())
        }
    }
}

fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Text => out.report.to_text(),
        Format::Machine => {
            let mut value = serde_json::to_value(&out.report).expect("report serializes");
            if let (Some(extra), Some(obj)) = (&out.extra, value.as_object_mut()) {
                obj.insert("data".into(), extra.clone());
            }
            let mut s = serde_json::to_string_pretty(&value).expect("json renders");
            s.push('\n');
            s
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit code and what should be written to stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_HOLDS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                (code, String::new(), text)
            } else {
                (code, text, String::new())
            };
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            let code = match &cli.command {
                Command::Example { .. } if !out.report.passed() => EXIT_FAILS,
                _ => exit_for(out.report.status()),
            };
            (code, render(&out, cli.format), String::new())
        }
        Err(e) => {
            // Running out of the vertex cap is a horizon, not bad input.
            let code = match e {
                Error::SupportTooLarge { .. } => EXIT_INCONCLUSIVE,
                _ => EXIT_USAGE,
            };
            (code, String::new(), format!("error: {e}\n"))
        }
    }
}
