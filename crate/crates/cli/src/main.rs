//! `ocelkit`: validate, convert, summarize and query object-centric event logs.
//!
//! Exit status is 0 on success, 1 when the input log has ERROR diagnostics,
//! and 2 on I/O or usage failures. Machine output goes to standard output,
//! human messages to standard error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::{debug, info};
use ocel_core::{
    has_errors, read_path_with_diagnostics, validate_model, write_path, AttributeValue, Diagnostic, Error,
    Format, Log, Timestamp,
};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "ocelkit",
    version,
    about = "Validate, convert and query OCEL 2.0 event logs"
)]
struct Cli {
    /// Input format: relational, xml, json or auto.
    #[arg(long, global = true, value_name = "FORMAT", value_parser = parse_format)]
    from: Option<FormatChoice>,

    /// Output format for `convert`: relational, xml, json or auto.
    #[arg(long, global = true, value_name = "FORMAT", value_parser = parse_format)]
    to: Option<FormatChoice>,

    /// Proceed even when the input log has ERROR diagnostics.
    #[arg(long, global = true)]
    force: bool,

    /// Suppress messages on standard error.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a log and print its diagnostics as JSON lines.
    Validate { path: PathBuf },
    /// Convert a log between the relational, XML and JSON formats.
    Convert { input: PathBuf, output: PathBuf },
    /// Print summary counts of a log as JSON.
    Stats { path: PathBuf },
    /// Evaluate a query against a log and print the result as JSON.
    Query {
        path: PathBuf,
        #[command(subcommand)]
        query: Query,
    },
}

#[derive(Subcommand, Debug)]
enum Query {
    /// Value of an object attribute at a point in time (final value if no time).
    Oaval {
        #[arg(long)]
        object: String,
        #[arg(long)]
        attr: String,
        #[arg(long, value_parser = parse_time)]
        time: Option<Timestamp>,
    },
    /// Objects related to an event (E2O) or to an object (O2O).
    Relobj(RelobjArgs),
    /// Value of an event attribute.
    Eaval {
        #[arg(long)]
        event: String,
        #[arg(long)]
        attr: String,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct RelobjArgs {
    #[arg(long)]
    event: Option<String>,
    #[arg(long)]
    object: Option<String>,
}

/// A `--from`/`--to` value; `auto` leaves the format to detection.
#[derive(Debug, Clone, Copy)]
struct FormatChoice(Option<Format>);

fn parse_format(text: &str) -> Result<FormatChoice, String> {
    if text.eq_ignore_ascii_case("auto") {
        return Ok(FormatChoice(None));
    }
    text.parse()
        .map(|f| FormatChoice(Some(f)))
        .map_err(|e: ocel_core::codec::UnknownFormat| e.to_string())
}

fn parse_time(text: &str) -> Result<Timestamp, String> {
    Timestamp::parse(text).map_err(|e| e.to_string())
}

/// Process outcome; each variant is one exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Ok = 0,
    Invalid = 1,
    Failure = 2,
}

/// A failure that ends the command.
#[derive(Debug)]
enum Stop {
    /// Input defects, printed as diagnostics; exit 1.
    Invalid(Vec<Diagnostic>),
    /// Environment or usage problem; exit 2.
    Failure(String),
}

impl From<Error> for Stop {
    fn from(error: Error) -> Self {
        match error.diagnostics() {
            Some(diagnostics) if has_errors(&diagnostics) => Stop::Invalid(diagnostics),
            _ => Stop::Failure(error.to_string()),
        }
    }
}

struct Context {
    from: Option<Format>,
    to: Option<Format>,
    force: bool,
    quiet: bool,
}

impl Context {
    fn say(&self, message: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("ocelkit: {}", message.as_ref());
        }
    }

    fn input_format(&self, path: &Path) -> Result<Format, Stop> {
        if !path.exists() {
            return Err(Stop::Failure(format!("{}: no such file", path.display())));
        }
        if let Some(format) = self.from {
            return Ok(format);
        }
        let detected = Format::detect(path).map_err(Stop::from)?;
        detected.ok_or_else(|| {
            Stop::Failure(format!(
                "{}: cannot tell the format; pass --from relational|xml|json",
                path.display()
            ))
        })
    }

    /// Reads a log and returns it with reader and model diagnostics.
    fn load(&self, path: &Path) -> Result<(Log, Vec<Diagnostic>), Stop> {
        let format = self.input_format(path)?;
        info!("reading {} as {format}", path.display());
        let (log, mut diagnostics) = read_path_with_diagnostics(path, format)?;
        diagnostics.extend(validate_model(&log));
        debug!("{} diagnostics", diagnostics.len());
        Ok((log, diagnostics))
    }

    /// Reads a log for commands that need a valid one; ERRORs stop the
    /// command unless `--force`.
    fn load_valid(&self, path: &Path) -> Result<Log, Stop> {
        let (log, diagnostics) = self.load(path)?;
        if has_errors(&diagnostics) && !self.force {
            return Err(Stop::Invalid(diagnostics));
        }
        Ok(log)
    }
}

fn print_diagnostics(diagnostics: &[Diagnostic]) {
    for diagnostic in diagnostics {
        println!("{}", diagnostic.to_json_line());
    }
}

fn validate(ctx: &Context, path: &Path) -> Result<Outcome, Stop> {
    let (_, diagnostics) = ctx.load(path)?;
    print_diagnostics(&diagnostics);
    if has_errors(&diagnostics) {
        ctx.say(format!("{}: invalid", path.display()));
        Ok(Outcome::Invalid)
    } else {
        Ok(Outcome::Ok)
    }
}

fn convert(ctx: &Context, input: &Path, output: &Path) -> Result<Outcome, Stop> {
    let target = match ctx.to.or_else(|| Format::from_extension(output)) {
        Some(format) => format,
        None => {
            return Err(Stop::Failure(format!(
                "{}: cannot tell the output format; pass --to relational|xml|json",
                output.display()
            )))
        }
    };
    let (log, diagnostics) = ctx.load(input)?;
    print_diagnostics(&diagnostics);
    if has_errors(&diagnostics) {
        if !ctx.force {
            ctx.say(format!(
                "{}: invalid; not converted (use --force to override)",
                input.display()
            ));
            return Ok(Outcome::Invalid);
        }
        ctx.say("converting despite ERROR diagnostics");
    }
    info!("writing {} as {target}", output.display());
    match write_path(&log, output, target).map_err(Stop::from) {
        Ok(()) => Ok(Outcome::Ok),
        Err(Stop::Invalid(rejected)) => {
            let fresh: Vec<_> = rejected
                .into_iter()
                .filter(|d| !diagnostics.contains(d))
                .collect();
            print_diagnostics(&fresh);
            ctx.say(format!("{}: cannot be written as {target}", output.display()));
            Ok(Outcome::Invalid)
        }
        Err(failure) => Err(failure),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Stats {
    events: usize,
    objects: usize,
    event_types: usize,
    object_types: usize,
    e2o_count: usize,
    o2o_count: usize,
    time_span: Option<TimeSpan>,
}

#[derive(Serialize)]
struct TimeSpan {
    min: String,
    max: String,
}

fn iso(time: Timestamp) -> Result<String, Stop> {
    time.to_iso()
        .map_err(|e| Stop::Failure(format!("cannot print time: {e}")))
}

fn stats(ctx: &Context, path: &Path) -> Result<Outcome, Stop> {
    let log = ctx.load_valid(path)?;
    let times = log.events().iter().map(|e| e.time);
    let time_span = match (times.clone().min(), times.max()) {
        (Some(min), Some(max)) => Some(TimeSpan {
            min: iso(min)?,
            max: iso(max)?,
        }),
        _ => None,
    };
    let stats = Stats {
        events: log.events().len(),
        objects: log.objects().len(),
        event_types: log.event_types().len(),
        object_types: log.object_types().len(),
        e2o_count: log.e2o().len(),
        o2o_count: log.o2o().len(),
        time_span,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&stats).expect("stats serialize")
    );
    Ok(Outcome::Ok)
}

fn value_json(value: Option<&AttributeValue>) -> Result<Value, Stop> {
    Ok(match value {
        None => Value::Null,
        Some(AttributeValue::String(s)) => json!(s),
        Some(AttributeValue::Time(t)) => json!(iso(*t)?),
        Some(AttributeValue::Integer(i)) => json!(i),
        Some(AttributeValue::Float(f)) => serde_json::Number::from_f64(*f)
            .map(Value::Number)
            .unwrap_or_else(|| json!(format!("{f:?}"))),
        Some(AttributeValue::Boolean(b)) => json!(b),
    })
}

fn query(ctx: &Context, path: &Path, query: &Query) -> Result<Outcome, Stop> {
    let log = ctx.load_valid(path)?;
    let result = match query {
        Query::Oaval { object, attr, time } => {
            let value = match time {
                Some(t) => log.oaval_at(object, attr, *t)?,
                None => log.oaval_final(object, attr)?,
            };
            value_json(value)?
        }
        Query::Eaval { event, attr } => value_json(log.eaval(event, attr)?)?,
        Query::Relobj(args) => {
            let related = match (&args.event, &args.object) {
                (Some(event), _) => log.relobj_event(event)?,
                (None, Some(object)) => log.relobj_object(object)?,
                (None, None) => unreachable!("clap requires one of --event, --object"),
            };
            Value::Array(
                related
                    .iter()
                    .map(|r| json!({"objectId": r.object_id, "qualifier": r.qualifier}))
                    .collect(),
            )
        }
    };
    println!("{result}");
    Ok(Outcome::Ok)
}

fn run(cli: Cli) -> Outcome {
    let ctx = Context {
        from: cli.from.and_then(|c| c.0),
        to: cli.to.and_then(|c| c.0),
        force: cli.force,
        quiet: cli.quiet,
    };
    let result = match &cli.command {
        Command::Validate { path } => validate(&ctx, path),
        Command::Convert { input, output } => convert(&ctx, input, output),
        Command::Stats { path } => stats(&ctx, path),
        Command::Query { path, query: q } => query(&ctx, path, q),
    };
    match result {
        Ok(outcome) => outcome,
        Err(Stop::Invalid(diagnostics)) => {
            print_diagnostics(&diagnostics);
            ctx.say("input log has ERROR diagnostics");
            Outcome::Invalid
        }
        Err(Stop::Failure(message)) => {
            ctx.say(message);
            Outcome::Failure
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("OCELKIT_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Outcome::Failure as u8 } else { 0 });
        }
    };
    ExitCode::from(run(cli) as u8)
}
