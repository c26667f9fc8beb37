//! The `stardual` command line.
//!
//! Exit codes: 0 success or PASS, 1 verification FAIL or no certificate,
//! 2 usage error (bad flags, unknown fixture, unreadable or malformed file),
//! 3 invalid mathematical input.

use crate::dualizer::{dualize, StarMapChoice, STAR_SUFFIX};
use crate::error::Error;
use crate::fixtures::{self, ammann_beenker_subdivision, Solution};
use crate::geometry::{
    attractor_cloud, attractor_cloud_thinned, render_svg, verify_interval_solution, verify_polygon_solution,
    PointCloud, RenderInput, Style, DEFAULT_TOL,
};
use crate::io;
use crate::selfdual::{certificate_search, necessary_check, SearchOutcome};
use crate::substitution::{export_automaton, is_primitive, iterate, pf_data, Incidence, Patch, SubstitutionSystem};
use clap::{Parser, Subcommand, ValueEnum};
use num::complex::Complex64;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MATH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "stardual", version, about = "Star-duals of self-similar substitution tilings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List built-in fixtures.
    List,
    /// Substitution matrix, Perron-Frobenius data, expansion, primitivity.
    Info {
        /// Fixture name or substitution JSON file.
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Write the star-dual system as substitution JSON.
    Dualize {
        input: String,
        /// Galois automorphism xi -> xi^k; defaults to the fixture's choice.
        #[arg(long)]
        galois: Option<i64>,
        /// Output file or directory (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a tile solution; exit 0 on PASS, 1 on FAIL.
    Verify {
        input: String,
        /// Solution JSON; defaults to the fixture's own tiles.
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Search for a self-duality certificate.
    CheckSelfdual {
        input: String,
        #[arg(long)]
        galois: Option<i64>,
        #[arg(long)]
        allow_scaling: bool,
    },
    /// Render a patch, the attractor or the Ammann-Beenker subdivision as SVG.
    Render {
        input: String,
        #[arg(long, value_enum, default_value_t = RenderMode::Patch)]
        mode: RenderMode,
        /// Substitution steps (patch mode).
        #[arg(long)]
        iterations: Option<usize>,
        /// Enumeration depth (attractor mode).
        #[arg(long)]
        depth: Option<usize>,
        /// Prototile to start the patch from.
        #[arg(long, default_value_t = 0)]
        prototile: usize,
        /// Tile shapes for patch mode; defaults to the fixture's tiles.
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the automaton of the system as Graphviz DOT.
    ExportAutomaton {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RenderMode {
    Patch,
    Attractor,
    Subdivision,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Format(_) => Failure::Usage(e.to_string()),
            e => Failure::Math(e),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

struct Loaded {
    system: SubstitutionSystem,
    fixture: Option<fixtures::Fixture>,
}

fn load(input: &str) -> std::result::Result<Loaded, Failure> {
    if let Ok(f) = fixtures::fixture(input) {
        return Ok(Loaded { system: f.system.clone(), fixture: Some(f) });
    }
    let path = Path::new(input);
    if !path.is_file() {
        return Err(Failure::Usage(format!(
            "{input:?} is neither a fixture ({}) nor a readable file",
            fixtures::list_fixtures().join(", ")
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {input}: {e}")))?;
    Ok(Loaded { system: io::system_from_json(&text)?, fixture: None })
}

fn star_choice(l: &Loaded, galois: Option<i64>) -> std::result::Result<StarMapChoice, Failure> {
    match (galois, &l.fixture) {
        (Some(k), _) => Ok(StarMapChoice::new(l.system.order(), k)?),
        (None, Some(f)) => Ok(f.default_star),
        (None, None) => Err(Failure::Usage("--galois is required for systems read from a file".into())),
    }
}

/// Prints to stdout; a closed pipe is not an error.
fn say(text: impl std::fmt::Display) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn esay(text: impl std::fmt::Display) {
    let _ = writeln!(std::io::stderr().lock(), "{text}");
}

/// `name` with the star suffix spelled `_star`, for file names.
pub fn file_stem(name: &str) -> String {
    name.replace(STAR_SUFFIX, "_star").replace(['/', '\\', ' '], "_")
}

/// Writes to `out` (a file, or a directory receiving `default_name`) or stdout.
fn emit(out: Option<&Path>, default_name: &str, text: &str) -> std::result::Result<(), Failure> {
    match out {
        None => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
        }
        Some(p) => {
            let target = if p.is_dir() { p.join(default_name) } else { p.to_path_buf() };
            std::fs::write(&target, text)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", target.display())))?;
            esay(format!("wrote {}", target.display()));
        }
    }
    Ok(())
}

fn cmd_info(input: &str, json: bool) -> Outcome {
    let l = load(input)?;
    let s = &l.system;
    let m = s.substitution_matrix();
    let primitive = is_primitive(&m);
    let pf = if primitive { Some(pf_data(&m)?) } else { None };
    let e = s.expansion().embed();
    if json {
        let v = serde_json::json!({
            "name": s.name(),
            "cyclotomic_order": s.order(),
            "dimension": s.dimension(),
            "prototiles": s.prototiles(),
            "substitution_matrix": m,
            "primitive": primitive,
            "pf_eigenvalue": pf.as_ref().map(|p| p.eigenvalue),
            "pf_left": pf.as_ref().map(|p| p.left.clone()),
            "pf_right": pf.as_ref().map(|p| p.right.clone()),
            "expansion": s.expansion().to_string(),
            "expansion_embedding": [e.re, e.im],
            "expansion_modulus": e.norm(),
            "map_count": s.map_count(),
            "pure_translation": s.is_pure_translation(),
        });
        say(serde_json::to_string_pretty(&v).expect("serializable"));
        return Ok(EXIT_OK);
    }
    say(format!("name: {}", s.name()));
    say(format!("field: Q(xi_{}), dimension {}", s.order(), s.dimension()));
    say(format!("prototiles: {}", s.prototiles().join(", ")));
    say(format!("substitution matrix (child x parent): {m:?}"));
    say(format!("primitive: {primitive}"));
    if let Some(p) = &pf {
        say(format!("PF eigenvalue: {:.6}", p.eigenvalue));
    }
    say(format!("expansion: {} ~ {:.6}{:+.6}i (modulus {:.6})", s.expansion(), e.re, e.im, e.norm()));
    say(format!("maps: {}", s.map_count()));
    say(format!("pure translation: {}", s.is_pure_translation()));
    Ok(EXIT_OK)
}

fn cmd_dualize(input: &str, galois: Option<i64>, out: Option<&Path>) -> Outcome {
    let l = load(input)?;
    let c = star_choice(&l, galois)?;
    let dual = dualize(&l.system, c)?;
    emit(out, &format!("{}.json", file_stem(dual.name())), &io::system_to_json(&dual))?;
    Ok(EXIT_OK)
}

fn cmd_verify(input: &str, solution: Option<&Path>, tol: f64) -> Outcome {
    if !(tol >= 0.0) {
        return Err(Failure::Usage("--tol must be nonnegative".into()));
    }
    let l = load(input)?;
    let sol = match (solution, &l.fixture) {
        (Some(p), _) => {
            let (n, sol) = io::read_solution(p)?;
            if n != l.system.order() {
                return Err(Failure::Math(Error::OrderMismatch(l.system.order(), n)));
            }
            sol
        }
        (None, Some(f)) => f.candidate_solution.clone().expect("fixtures ship tiles"),
        (None, None) => return Err(Failure::Usage("--solution is required for systems read from a file".into())),
    };
    let report = match (&sol, l.system.dimension()) {
        (Solution::Intervals(iv), 1) => verify_interval_solution(&l.system, iv)?,
        (Solution::Polygons(ps), 2) => verify_polygon_solution(&l.system, ps, tol)?,
        _ => return Err(Failure::Math(Error::input("solution does not match the system's dimension"))),
    };
    say(report.to_json());
    let pass = report.passed();
    esay(if pass { "PASS" } else { "FAIL" });
    Ok(if pass { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_check_selfdual(input: &str, galois: Option<i64>, allow_scaling: bool) -> Outcome {
    let l = load(input)?;
    let c = star_choice(&l, galois)?;
    if !l.system.is_pure_translation() {
        let perm = necessary_check(&l.system.substitution_matrix())?;
        let v = serde_json::json!({
            "partial": true,
            "necessary_check": { "permutation": perm },
            "note": "system is not in digit form; only the matrix condition was checked",
        });
        say(serde_json::to_string_pretty(&v).expect("serializable"));
        esay(format!("warning: partial result (matrix condition only)"));
        return Ok(if perm.is_some() { EXIT_OK } else { EXIT_FAIL });
    }
    let out = certificate_search(&l.system, c, allow_scaling)?;
    say(out.to_json());
    Ok(match out {
        SearchOutcome::Certificate(_) => EXIT_OK,
        SearchOutcome::Failure(_) => EXIT_FAIL,
    })
}

/// Numeric outlines of the tiles; intervals become thin rectangles.
fn shapes(sol: &Solution) -> Vec<Vec<Complex64>> {
    match sol {
        Solution::Polygons(ps) => ps.iter().map(|p| p.embedded()).collect(),
        Solution::Intervals(iv) => {
            let longest = iv.iter().map(|(a, b)| b.embed().re - a.embed().re).fold(0.0, f64::max);
            let h = 0.08 * longest;
            iv.iter()
                .map(|(a, b)| {
                    let (a, b) = (a.embed().re, b.embed().re);
                    vec![Complex64::new(a, 0.0), Complex64::new(b, 0.0), Complex64::new(b, h), Complex64::new(a, h)]
                })
                .collect()
        }
    }
}

struct RenderArgs<'a> {
    mode: RenderMode,
    iterations: Option<usize>,
    depth: Option<usize>,
    prototile: usize,
    solution: Option<&'a Path>,
    out: Option<&'a Path>,
}

fn cmd_render(input: &str, a: RenderArgs<'_>) -> Outcome {
    let l = load(input)?;
    let s = &l.system;
    match a.mode {
        RenderMode::Patch if a.depth.is_some() => return Err(Failure::Usage("--depth applies to attractor mode".into())),
        RenderMode::Attractor if a.iterations.is_some() || a.solution.is_some() => {
            return Err(Failure::Usage("--iterations and --solution apply to patch mode".into()))
        }
        RenderMode::Subdivision if a.iterations.is_some() || a.depth.is_some() || a.solution.is_some() => {
            return Err(Failure::Usage("subdivision mode takes no --iterations, --depth or --solution".into()))
        }
        _ => {}
    }
    let style = Style::default();
    let svg = match a.mode {
        RenderMode::Patch => {
            if a.prototile >= s.size() {
                return Err(Failure::Usage(format!("--prototile must be below {}", s.size())));
            }
            let sol = match (a.solution, &l.fixture) {
                (Some(p), _) => io::read_solution(p)?.1,
                (None, Some(f)) => f.candidate_solution.clone().expect("fixtures ship tiles"),
                (None, None) => return Err(Failure::Usage("--solution is required for systems read from a file".into())),
            };
            let k = a.iterations.unwrap_or(4);
            if k > 12 {
                return Err(Failure::Usage("--iterations above 12 is not supported".into()));
            }
            let patch = iterate(s, &Patch::single(a.prototile, s.order()), k);
            let sh = shapes(&sol);
            if sh.len() != s.size() {
                return Err(Failure::Math(Error::input("solution has the wrong number of tiles")));
            }
            render_svg(&RenderInput::Patch { patch: &patch, shapes: &sh }, &style)?
        }
        RenderMode::Attractor => {
            let depth = a.depth.unwrap_or(9);
            if depth == 0 || depth > 40 {
                return Err(Failure::Usage("--depth must be between 1 and 40".into()));
            }
            let clouds = attractor_clouds(s, depth)?;
            let style = Style::for_points(clouds.iter().map(PointCloud::len).sum());
            render_svg(&RenderInput::Row(clouds.iter().map(|c| RenderInput::Clouds(std::slice::from_ref(c))).collect()), &style)?
        }
        RenderMode::Subdivision => {
            if l.fixture.as_ref().map(|f| f.name) != Some("ammann_beenker") {
                return Err(Failure::Usage("subdivision mode is available for ammann_beenker only".into()));
            }
            let sub = ammann_beenker_subdivision();
            let parts = sub.iter().map(|(p, pieces)| RenderInput::Subdivision { parent: p, pieces }).collect();
            render_svg(&RenderInput::Row(parts), &style)?
        }
    };
    emit(a.out, &format!("{}.svg", file_stem(s.name())), &svg)?;
    Ok(EXIT_OK)
}

/// One cloud per component; deep enumerations are thinned to a grid well
/// below the drawing resolution.
pub fn attractor_clouds(s: &SubstitutionSystem, depth: usize) -> crate::error::Result<Vec<PointCloud>> {
    let probe: Vec<PointCloud> = (0..s.size()).map(|j| attractor_cloud(s, depth.min(4), j)).collect::<Result<_, _>>()?;
    let span = probe
        .iter()
        .map(|c| {
            let (lo, hi) = c.bounds();
            (hi.re - lo.re).max(hi.im - lo.im)
        })
        .fold(0.0, f64::max)
        .max(1e-9);
    (0..s.size()).map(|j| attractor_cloud_thinned(s, depth, j, span * 2e-4)).collect()
}

fn cmd_export_automaton(input: &str, out: Option<&Path>) -> Outcome {
    let l = load(input)?;
    emit(out, &format!("{}.dot", file_stem(l.system.name())), &export_automaton(&l.system))?;
    Ok(EXIT_OK)
}

pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::List => {
            for name in fixtures::list_fixtures() {
                say(format!("{name}"));
            }
            Ok(EXIT_OK)
        }
        Command::Info { input, json } => cmd_info(&input, json),
        Command::Dualize { input, galois, out } => cmd_dualize(&input, galois, out.as_deref()),
        Command::Verify { input, solution, tol } => cmd_verify(&input, solution.as_deref(), tol),
        Command::CheckSelfdual { input, galois, allow_scaling } => cmd_check_selfdual(&input, galois, allow_scaling),
        Command::Render { input, mode, iterations, depth, prototile, solution, out } => cmd_render(
            &input,
            RenderArgs { mode, iterations, depth, prototile, solution: solution.as_deref(), out: out.as_deref() },
        ),
        Command::ExportAutomaton { input, out } => cmd_export_automaton(&input, out.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            esay(format!("error: {msg}"));
            EXIT_USAGE
        }
        Err(Failure::Math(e)) => {
            esay(format!("error: {e}"));
            EXIT_MATH
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
