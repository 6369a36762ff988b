//! The `rotset` command line.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{CommandFactory, Parser, Subcommand};

use crate::circle::{Degree, Itinerary};
use crate::count::count_sets;
use crate::emit::{from_json, to_json, to_svg, RenderOptions};
use crate::error::Error;
use crate::lamination::{polygons_of, pullback, Lamination};
use crate::oracle::cross_check_pairs;
use crate::orbit::{enumerate_rotational_orbits_with_budget, RotationNumber, RotationalOrbit, DEFAULT_BUDGET};
use crate::rotset::{enumerate_sets, sets_containing_with_budget, validate_set, RotationalSet};

#[derive(Debug, Parser)]
#[command(name = "rotset", version, about = "Rotational orbits and rotational sets of the angle d-tupling map")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form number of rotational sets with k orbits.
    Count {
        #[arg(long, value_parser = parse_degree)]
        degree: Degree,
        #[arg(long, value_parser = parse_rotation)]
        rotation: RotationNumber,
        #[arg(long = "orbits", value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
    },
    /// List the rotational orbits with a rotation number.
    Orbits {
        #[arg(long, value_parser = parse_degree)]
        degree: Degree,
        #[arg(long, value_parser = parse_rotation)]
        rotation: RotationNumber,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// List every rotational set with k orbits.
    Sets {
        #[arg(long, value_parser = parse_degree)]
        degree: Degree,
        #[arg(long, value_parser = parse_rotation)]
        rotation: RotationNumber,
        #[arg(long = "orbits", value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Rotational sets containing the orbit with the given itinerary.
    Containing {
        #[arg(long, value_parser = parse_degree)]
        degree: Degree,
        #[arg(long)]
        itinerary: String,
        #[arg(long)]
        maximal: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Cross-check the formula against brute force and placement enumeration.
    Verify {
        #[arg(long = "degree-max", value_parser = parse_degree)]
        degree_max: Degree,
        #[arg(long = "period-max", value_parser = clap::value_parser!(u32).range(1..))]
        period_max: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Pull back the polygon of a rotational set and write the lamination.
    Pullback {
        #[arg(long, value_parser = parse_degree)]
        degree: Degree,
        #[arg(long)]
        itinerary: String,
        /// Further orbits of the seed set.
        #[arg(long = "with")]
        with: Vec<String>,
        #[arg(long)]
        steps: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a lamination JSON file as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        geodesic: bool,
        #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u32).range(1..))]
        size: u32,
        #[arg(long)]
        labels: bool,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=12))]
        precision: u8,
    },
}

fn parse_degree(s: &str) -> Result<Degree, String> {
    let d: u32 = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    Degree::new(d).map_err(|e| e.to_string())
}

/// `p/q` in lowest terms with `p < q`; the only rotation with `p = 0` is `0/1`.
fn parse_rotation(s: &str) -> Result<RotationNumber, String> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| format!("{s:?} is not of the form p/q"))?;
    let p: u32 = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let q: u32 = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if q == 0 || p >= q && !(p == 0 && q == 1) {
        return Err(format!("{s:?} must satisfy 0 <= p < q"));
    }
    let r = RotationNumber::new(p, q).map_err(|e| e.to_string())?;
    if r.p() != p {
        return Err(format!("{s:?} must be in lowest terms"));
    }
    Ok(r)
}

enum Failure {
    /// Bad flag values: exit 2 with usage.
    Usage(String),
    /// The command ran but could not deliver its output: exit 1.
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn rotational_orbit(text: &str, degree: Degree) -> Result<RotationalOrbit, Failure> {
    let usage = |msg: String| Failure::Usage(format!("--itinerary {text:?}: {msg}"));
    let w = Itinerary::parse(text, degree).map_err(|e| usage(e.to_string()))?;
    if !w.is_periodic() {
        return Err(usage("not periodic".into()));
    }
    RotationalOrbit::from_itinerary(&w)
        .map_err(|e| usage(e.to_string()))?
        .ok_or_else(|| usage(format!("{w} is not a rotational orbit of sigma_{degree}")))
}

fn orbit_line(o: &RotationalOrbit) -> String {
    let points: Vec<String> = o.points().iter().map(ToString::to_string).collect();
    format!("{}  {}  {}", o.itinerary(), o.rotation(), points.join(" "))
}

fn set_line(s: &RotationalSet) -> String {
    let points: Vec<String> = s.points().iter().map(ToString::to_string).collect();
    format!("{}  {}", s, points.join(" "))
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status. Data goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\n{}", Cli::command().render_usage());
            2
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Count { degree, rotation, k } => {
            writeln!(out, "{}", count_sets(degree.get(), rotation.q(), k))?;
        }
        Command::Orbits {
            degree,
            rotation,
            json,
            budget,
        } => {
            let orbits = enumerate_rotational_orbits_with_budget(degree, rotation, budget)?;
            if json {
                writeln!(out, "{}", to_json(&orbits))?;
            } else {
                for o in &orbits {
                    writeln!(out, "{}", orbit_line(o))?;
                }
            }
        }
        Command::Sets {
            degree,
            rotation,
            k,
            limit,
            json,
        } => {
            let mut sets = enumerate_sets(degree, rotation, k as usize)?;
            if let Some(n) = limit {
                sets.truncate(n);
            }
            if json {
                writeln!(out, "{}", to_json(&sets))?;
            } else {
                for s in &sets {
                    writeln!(out, "{}", set_line(s))?;
                }
            }
        }
        Command::Containing {
            degree,
            itinerary,
            maximal,
            json,
            budget,
        } => {
            let orbit = rotational_orbit(&itinerary, degree)?;
            let sets = sets_containing_with_budget(&orbit, maximal, budget)?;
            if json {
                writeln!(out, "{}", to_json(&sets))?;
            } else {
                for s in &sets {
                    writeln!(out, "{}", set_line(s))?;
                }
            }
        }
        Command::Verify {
            degree_max,
            period_max,
            budget,
            json,
        } => {
            let pairs: Vec<(u32, u32)> = (2..=degree_max.get())
                .flat_map(|d| (1..=period_max).map(move |q| (d, q)))
                .collect();
            let report = cross_check_pairs(&pairs, budget)?;
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                writeln!(out, "{report}")?;
            }
            return Ok(if report.green() { 0 } else { 1 });
        }
        Command::Pullback {
            degree,
            itinerary,
            with,
            steps,
            out: path,
        } => {
            let mut orbits = vec![rotational_orbit(&itinerary, degree)?];
            for w in &with {
                orbits.push(rotational_orbit(w, degree)?);
            }
            let set = validate_set(&orbits).map_err(|e| Failure::Usage(format!("seed orbits: {e}")))?;
            let seed = Lamination::new(degree, vec![polygons_of(&set)?]);
            let lam = pullback(&seed, steps)?;
            fs::write(&path, to_json(&lam) + "\n")?;
            writeln!(
                out,
                "{} polygons after {} steps written to {}",
                lam.polygons().len(),
                lam.step(),
                path.display()
            )?;
        }
        Command::Render {
            input,
            out: path,
            geodesic,
            size,
            labels,
            precision,
        } => {
            let text = fs::read_to_string(&input)?;
            let lam: Lamination = from_json(&text)?;
            let opts = RenderOptions {
                size,
                geodesic,
                labels,
                precision: precision as usize,
            };
            opts.validate()?;
            fs::write(&path, to_svg(&lam, &opts))?;
            writeln!(out, "{} leaves rendered to {}", lam.leaves().len(), path.display())?;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("rotset").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn rotation_flag_rules() {
        assert!(parse_rotation("1/3").is_ok());
        assert!(parse_rotation("0/1").is_ok());
        assert!(parse_rotation("2/4").is_err());
        assert!(parse_rotation("4/3").is_err());
        assert!(parse_rotation("3/3").is_err());
        assert!(parse_rotation("0/2").is_err());
        assert!(parse_rotation("1/0").is_err());
        assert!(parse_rotation("x").is_err());
    }

    #[test]
    fn count_command() {
        assert_eq!(call(&["count", "--degree", "3", "--rotation", "1/3", "--orbits", "2"]).1, "3\n");
        assert_eq!(call(&["count", "--degree", "2", "--rotation", "1/5", "--orbits", "2"]).1, "0\n");
    }

    #[test]
    fn flag_errors_exit_2() {
        let (code, _, err) = call(&["count", "--degree", "1", "--rotation", "1/3", "--orbits", "2"]);
        assert_eq!(code, 2);
        assert!(err.contains("1"));
        let (code, _, err) = call(&["count", "--degree", "3", "--rotation", "2/4", "--orbits", "2"]);
        assert_eq!(code, 2);
        assert!(err.contains("2/4"));
        let (code, _, err) = call(&["containing", "--degree", "3", "--itinerary", "(01)x"]);
        assert_eq!(code, 2);
        assert!(err.contains("(01)x"));
        let (code, _, err) = call(&["containing", "--degree", "2", "--itinerary", "(0011)"]);
        assert_eq!(code, 2, "{err}");
        assert!(err.contains("Usage"));
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("containing"));
    }
}
