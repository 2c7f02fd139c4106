//! Command-line front end. Exit status is 0 on success, 1 when a verification comes back
//! negative, and 2 on usage or domain errors.

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::frequency::{littlewood_paley, metric_d, verify_wavelet_set, FreqSet};
use crate::gallery::{self, GalleryValue};
use crate::homotopy::{WaveletPath, DEFAULT_MAX_STAGE};
use crate::interval::IntervalSet;
use crate::rational::{parse_rational, pow2, Rational};
use crate::scb::{combine, factorize, ScbOptions};
use crate::unit_map::{induced_isomorphism, lift, PartialMap, PiecewiseMap};

#[derive(Parser, Debug)]
#[command(name = "wavesets", version, about = "Exact dyadic wavelet sets and their induced isomorphisms")]
pub struct Cli {
    /// Truncation tolerance for orbit and extension constructions, as p/q.
    #[arg(long, global = true, value_parser = parse_rational_arg, default_value_t = pow2(-40))]
    pub tol: Rational,

    /// Maximum orbit depth for combine.
    #[arg(long, global = true, default_value_t = 32)]
    pub depth: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the translation and dilation tilings of a set.
    Verify { set: String },
    /// Induced isomorphism of a wavelet set.
    Induce { set: String },
    /// Wavelet set of an isomorphism (a partial map yields its resolved part).
    Synthesize { map: String },
    /// Combine a WI1 map with a WI2 map.
    Combine { u: String, v: String },
    /// Split an isomorphism into WI1 and WI2 factors.
    Factorize { map: String },
    /// Distance between two wavelet sets.
    Metric { a: String, b: String },
    /// Sample the path from a wavelet set to the Littlewood-Paley set.
    Path {
        set: String,
        /// `a:step:b` or a comma-separated list of rationals in [0,1].
        grid: String,
    },
    /// Built-in sets and maps.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum GalleryAction {
    List,
    Get { name: String },
}

fn parse_rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

pub fn parse_grid(s: &str) -> Result<Vec<Rational>> {
    let parts: Vec<&str> = s.split(':').collect();
    let grid = match parts.as_slice() {
        [a, step, b] => {
            let (a, step, b) = (parse_rational(a)?, parse_rational(step)?, parse_rational(b)?);
            if step <= Rational::from_integer(0.into()) {
                return Err(Error::Invalid(format!("grid step must be positive, got {step}")));
            }
            let mut out = Vec::new();
            let mut t = a;
            while t <= b {
                out.push(t.clone());
                t += &step;
            }
            out
        }
        [list] => list.split(',').map(parse_rational).collect::<Result<_>>()?,
        _ => return Err(Error::Invalid(format!("cannot parse grid {s:?}"))),
    };
    if grid.is_empty() {
        return Err(Error::Invalid(format!("grid {s:?} is empty")));
    }
    Ok(grid)
}

enum MapArg {
    Total(PiecewiseMap),
    Partial(PartialMap),
}

impl MapArg {
    fn map(&self) -> &PiecewiseMap {
        match self {
            MapArg::Total(m) => m,
            MapArg::Partial(p) => &p.map,
        }
    }
}

fn read_json(path: &str) -> Result<serde_json::Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

fn from_value<T: serde::de::DeserializeOwned>(v: serde_json::Value, what: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Invalid(format!("not a {what}: {e}")))
}

fn load_set(arg: &str) -> Result<FreqSet> {
    if Path::new(arg).is_file() {
        let v = read_json(arg)?;
        return if v.get("pi_units").is_some() {
            from_value(v, "wavelet set")
        } else {
            from_value::<IntervalSet>(v, "wavelet set").map(FreqSet::new)
        };
    }
    match gallery::get(arg)?.value {
        GalleryValue::WaveletSet(w) => Ok(w),
        GalleryValue::UnitMap(_) => Err(Error::Invalid(format!("{arg} is a map, expected a set"))),
    }
}

fn load_map(arg: &str) -> Result<MapArg> {
    if Path::new(arg).is_file() {
        let v = read_json(arg)?;
        return if v.is_object() {
            from_value(v, "partial map").map(MapArg::Partial)
        } else {
            from_value(v, "piecewise map").map(MapArg::Total)
        };
    }
    match gallery::get(arg)?.value {
        GalleryValue::UnitMap(m) => Ok(MapArg::Total(m)),
        GalleryValue::WaveletSet(_) => Err(Error::Invalid(format!("{arg} is a set, expected a map"))),
    }
}

fn set_rows(s: &IntervalSet) -> Vec<String> {
    s.iter().map(|iv| format!("{},{}", iv.lo(), iv.hi())).collect()
}

fn map_rows(m: &PiecewiseMap) -> Vec<String> {
    m.pieces()
        .iter()
        .map(|p| format!("{},{},{},{}", p.dom().lo(), p.dom().hi(), p.exponent(), p.offset()))
        .collect()
}

struct Output {
    json: serde_json::Value,
    csv: Vec<String>,
    ok: bool,
}

impl Output {
    fn new<T: Serialize>(value: &T, csv: Vec<String>) -> Result<Self> {
        let json = serde_json::to_value(value).map_err(|e| Error::Invalid(e.to_string()))?;
        Ok(Output { json, csv, ok: true })
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    let opts = ScbOptions { tol: cli.tol.clone(), max_depth: cli.depth, ..ScbOptions::default() };
    match &cli.command {
        Command::Verify { set } => {
            let cert = verify_wavelet_set(&load_set(set)?)?;
            let mut rows = vec!["ok,translation_defect,dilation_defect".to_string()];
            rows.push(format!("{},{},{}", cert.ok, cert.translation_defect, cert.dilation_defect));
            let mut out = Output::new(&cert, rows)?;
            out.ok = cert.ok;
            Ok(out)
        }
        Command::Induce { set } => {
            let h = induced_isomorphism(&load_set(set)?)?;
            let mut rows = vec!["lo,hi,e,m".to_string()];
            rows.extend(map_rows(&h));
            Output::new(&h, rows)
        }
        Command::Synthesize { map } => {
            let w = match load_map(map)? {
                MapArg::Total(m) if m.classify().in_wi => crate::unit_map::wavelet_set_from_isomorphism(&m)?,
                MapArg::Total(_) => return Err(Error::Classification("map is not wavelet induced".into())),
                MapArg::Partial(p) => lift(&p.map, &p.map.domain())?,
            };
            let cert = verify_wavelet_set(&w)?;
            let mut rows = vec!["lo,hi".to_string()];
            rows.extend(set_rows(w.pi_units()));
            Output::new(&json!({ "wavelet_set": w, "certificate": cert }), rows)
        }
        Command::Combine { u, v } => {
            let (h, trace) = combine(load_map(u)?.map(), load_map(v)?.map(), &opts)?;
            let mut rows = vec!["lo,hi,e,m".to_string()];
            rows.extend(map_rows(&h.map));
            Output::new(&json!({ "map": h, "trace": trace }), rows)
        }
        Command::Factorize { map } => {
            let f = factorize(load_map(map)?.map(), &cli.tol)?;
            let mut rows = vec!["factor,lo,hi,e,m".to_string()];
            rows.extend(map_rows(&f.u).into_iter().map(|r| format!("u,{r}")));
            rows.extend(map_rows(&f.v.map).into_iter().map(|r| format!("v,{r}")));
            Output::new(&f, rows)
        }
        Command::Metric { a, b } => {
            let d = metric_d(&load_set(a)?, &load_set(b)?)?;
            Output::new(&json!({ "d": d }), vec!["d".into(), format!("{d}")])
        }
        Command::Path { set, grid } => {
            let ts = parse_grid(grid)?;
            let w = load_set(set)?;
            let path = WaveletPath::with_max_stage(&w, &cli.tol, DEFAULT_MAX_STAGE)?;
            let e = littlewood_paley();
            let mut rows = vec!["t,interval_count,tiling_defect,d_start,d_littlewood_paley".to_string()];
            let mut samples = Vec::new();
            for t in &ts {
                let p = path.at(t)?;
                let d0 = metric_d(&p.w_t, &w)?;
                let de = metric_d(&p.w_t, &e)?;
                let defect = p.certificate.defect();
                rows.push(format!("{t},{},{},{d0},{de}", p.w_t.interval_count(), defect));
                samples.push(json!({
                    "t": t.to_string(),
                    "interval_count": p.w_t.interval_count(),
                    "tiling_defect": defect.to_string(),
                    "d_start": d0,
                    "d_littlewood_paley": de,
                    "wavelet_set": p.w_t,
                }));
            }
            Output::new(&samples, rows)
        }
        Command::Gallery { action: GalleryAction::List } => {
            let entries: Vec<_> =
                gallery::list().iter().map(|g| json!({ "name": g.name, "description": g.description })).collect();
            let rows = gallery::list().iter().map(|g| format!("{},\"{}\"", g.name, g.description)).collect();
            Output::new(&entries, rows)
        }
        Command::Gallery { action: GalleryAction::Get { name } } => {
            let entry = gallery::get(name)?;
            let rows = match &entry.value {
                GalleryValue::WaveletSet(w) => set_rows(w.pi_units()),
                GalleryValue::UnitMap(m) => map_rows(m),
            };
            Output::new(&entry, rows)
        }
    }
}

/// Runs the command line against the given writers and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match execute(&cli) {
        Ok(output) => {
            let written = match cli.format {
                Format::Json => serde_json::to_string_pretty(&output.json)
                    .map_err(std::io::Error::other)
                    .and_then(|s| writeln!(out, "{s}")),
                Format::Csv => output.csv.iter().try_for_each(|r| writeln!(out, "{r}")),
            };
            match (written, output.ok) {
                (Err(e), _) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
                (Ok(()), true) => 0,
                (Ok(()), false) => 1,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn main() -> ExitCode {
    let code = run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}
