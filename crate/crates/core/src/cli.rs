//! The `digitop` command line.
//!
//! Every verb prints a small report, as `key: value` lines or as one JSON
//! object. Exit status is 0 whenever the question was answered (whatever the
//! answer), 1 for file, parse and argument errors, 2 for usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::adjacency::{domination_witness, product_image, Adjacency, ProductKind};
use crate::error::{Error, Result};
use crate::homotopy::are_homotopic;
use crate::io;
use crate::lattice::{DigitalImage, Point};
use crate::maps::{exists_retraction, has_afpp, shy_violation, AfppOutcome, DigitalMap};
use crate::multivalued::{is_continuous_multimap, shy_equivalences, subdivide};
use crate::search::{Search, DEFAULT_BUDGET};
use crate::space::Space;
use crate::verifier::{self, InstanceFamily, OpenProblemReport};

#[derive(Parser, Debug)]
#[command(name = "digitop", version, about = "Decide properties of finite digital images and maps between them")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Search budget: nodes for searches, instances per check for `verify`.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the connected components of an image.
    Components {
        image: PathBuf,
        /// Adjacency, overriding the image header.
        #[arg(long)]
        adj: Option<String>,
    },
    /// Decide whether two points are adjacent: `adjacent --adj SPEC -- x1 .. xn y1 .. yn`.
    Adjacent {
        #[arg(long)]
        adj: String,
        #[arg(last = true, allow_hyphen_values = true, required = true)]
        coords: Vec<i64>,
    },
    /// Decide whether adjacency STRONGER dominates WEAKER on the points of an image.
    Dominates { stronger: String, weaker: String, image: PathBuf },
    /// Build a product image; the factor adjacencies come from the headers or `--adj`.
    Product {
        #[arg(required = true, num_args = 2..)]
        images: Vec<PathBuf>,
        /// Product kind: NP<u>, T, X or L.
        #[arg(long)]
        kind: String,
        /// One adjacency per factor, in order.
        #[arg(long)]
        adj: Vec<String>,
        /// Write the image file here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide continuity of a map file.
    CheckContinuity { map: PathBuf },
    /// Decide whether a map file is an isomorphism.
    CheckIso { map: PathBuf },
    /// Search for a retraction of an image onto the points of a second image.
    CheckRetraction {
        image: PathBuf,
        subset: PathBuf,
        #[arg(long)]
        adj: Option<String>,
    },
    /// Decide shyness of a map file and evaluate the equivalent conditions.
    CheckShy { map: PathBuf },
    /// Decide the approximate fixed point property.
    CheckAfpp {
        image: PathBuf,
        #[arg(long)]
        adj: Option<String>,
    },
    /// Search for a homotopy between two maps with the same domain and codomain.
    CheckHomotopic {
        f: PathBuf,
        g: PathBuf,
        /// Keep this domain point fixed, e.g. `--pointed "0 0"`.
        #[arg(long, allow_hyphen_values = true)]
        pointed: Option<String>,
    },
    /// Weak, strong and subdivision continuity of a multimap file.
    CheckMultimap {
        multimap: PathBuf,
        /// Largest subdivision tried.
        #[arg(long, default_value_t = 3)]
        r_max: usize,
    },
    /// Print the subdivision S(X, r) as an image file with numerator coordinates.
    Subdivide {
        image: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        adj: Option<String>,
    },
    /// Run the check registry or an open-problem search.
    Verify {
        /// Run every check.
        #[arg(long, conflicts_with_all = ["check", "list", "open"])]
        all: bool,
        /// Run the named checks.
        #[arg(long)]
        check: Vec<String>,
        /// List check ids with their claims.
        #[arg(long)]
        list: bool,
        /// Search the named open problem for counterexamples.
        #[arg(long)]
        open: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Point bound for open-problem families.
        #[arg(long, default_value_t = 3)]
        max_points: usize,
    },
    /// Print the adjacency graph of an image in DOT.
    ExportDot {
        image: PathBuf,
        #[arg(long)]
        adj: Option<String>,
    },
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Ordered report fields.
struct Report(Vec<(&'static str, Value)>);

impl Report {
    fn new() -> Self {
        Report(Vec::new())
    }

    fn put(mut self, key: &'static str, v: impl Into<Value>) -> Self {
        self.0.push((key, v.into()));
        self
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let m: Map<String, Value> = self.0.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
                serde_json::to_string_pretty(&Value::Object(m)).expect("report serializes") + "\n"
            }
            Format::Text => self.0.iter().map(|(k, v)| format!("{k}: {}\n", plain(v))).collect(),
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        // Nested arrays are point sets; keep them apart.
        Value::Array(a) if a.iter().any(Value::is_array) => a.iter().map(plain).collect::<Vec<_>>().join(" | "),
        Value::Array(a) => a.iter().map(plain).collect::<Vec<_>>().join(" "),
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn pts(points: &[Point]) -> Value {
    Value::Array(points.iter().map(|p| Value::String(p.to_string())).collect())
}

fn map_value(f: &DigitalMap) -> Value {
    Value::Object(f.pairs().map(|(x, y)| (x.to_string(), Value::String(y.to_string()))).collect())
}

fn load_space(path: &Path, adj: Option<&str>) -> Result<Arc<Space>> {
    Ok(io::read_image_file(path)?.space(adj)?.into_arc())
}

fn parse_point(text: &str) -> Result<Point> {
    let coords = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Error::InvalidArgument(format!("bad coordinate `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    Point::new(coords)
}

fn status<T>(s: &Search<T>) -> &'static str {
    match s {
        Search::Found(_) => "found",
        Search::Exhausted => "absent",
        Search::BudgetExceeded => "budget exceeded",
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    let report = match &cli.command {
        Command::Components { image, adj } => {
            let x = load_space(image, adj.as_deref())?;
            let comps: Vec<Value> = x.component_points().iter().map(|c| pts(c)).collect();
            Report::new().put("points", x.len()).put("components", comps.len()).put("sets", Value::Array(comps))
        }
        Command::Adjacent { adj, coords } => {
            if coords.is_empty() || coords.len() % 2 != 0 {
                return Err(Error::InvalidArgument("give two points with the same number of coordinates".into()));
            }
            let n = coords.len() / 2;
            let (p, q) = (Point::new(coords[..n].to_vec())?, Point::new(coords[n..].to_vec())?);
            let a = Adjacency::parse(adj, n)?;
            Report::new()
                .put("adjacency", a.to_string())
                .put("p", p.to_string())
                .put("q", q.to_string())
                .put("adjacent", a.adjacent(&p, &q)?)
        }
        Command::Dominates { stronger, weaker, image } => {
            let img = io::read_image_file(image)?.image;
            let (a, b) = (Adjacency::parse(stronger, img.dim())?, Adjacency::parse(weaker, img.dim())?);
            let w = domination_witness(&a, &b, &img)?;
            let mut r = Report::new().put("dominates", w.is_none());
            if let Some((p, q)) = w {
                r = r.put("witness", pts(&[p, q]));
            }
            r
        }
        Command::Product { images, kind, adj, out } => {
            let kind: ProductKind = kind.parse()?;
            if !adj.is_empty() && adj.len() != images.len() {
                return Err(Error::InvalidArgument(format!("{} adjacencies for {} factors", adj.len(), images.len())));
            }
            let spaces = images
                .iter()
                .enumerate()
                .map(|(i, p)| io::read_image_file(p)?.space(adj.get(i).map(String::as_str)))
                .collect::<Result<Vec<Space>>>()?;
            let factors: Vec<(&DigitalImage, &Adjacency)> = spaces.iter().map(|s| (s.image(), s.adjacency())).collect();
            let (img, a) = product_image(&factors, kind)?;
            let text = io::write_image(&Space::new(img, a)?);
            match out {
                Some(path) => {
                    std::fs::write(path, &text).map_err(|source| Error::Io { path: path.clone(), source })?;
                    Report::new().put("written", path.display().to_string())
                }
                None => return Ok(text),
            }
        }
        Command::CheckContinuity { map } => {
            let f = io::read_map_file(map)?;
            let mut r = Report::new().put("continuous", f.is_continuous());
            if let Some((x, y)) = f.discontinuity() {
                r = r.put("witness", pts(&[x, y]));
            }
            r
        }
        Command::CheckIso { map } => {
            let f = io::read_map_file(map)?;
            Report::new()
                .put("isomorphism", f.is_isomorphism())
                .put("continuous", f.is_continuous())
                .put("bijective", f.is_bijective())
                .put("inverse_continuous", f.inverse().is_some_and(|g| g.is_continuous()))
        }
        Command::CheckRetraction { image, subset, adj } => {
            let x = load_space(image, adj.as_deref())?;
            let a = io::read_image_file(subset)?.image;
            let s = exists_retraction(&x, &a, budget)?;
            let mut r = Report::new().put("status", status(&s)).put("retract", s.is_found());
            if let Search::Found(f) = &s {
                r = r.put("retraction", map_value(f));
            }
            r
        }
        Command::CheckShy { map } => {
            let f = io::read_map_file(map)?;
            let mut r = Report::new().put("shy", shy_violation(&f).is_none());
            if let Some(v) = shy_violation(&f) {
                r = r.put("violation", serde_json::to_value(v).expect("serializes"));
            }
            if f.is_continuous() && f.is_surjective() {
                r = r.put("conditions", serde_json::to_value(shy_equivalences(&f)?).expect("serializes"));
            }
            r
        }
        Command::CheckAfpp { image, adj } => {
            let x = load_space(image, adj.as_deref())?;
            match has_afpp(&x, budget) {
                AfppOutcome::Holds { nodes } => {
                    Report::new().put("status", "computed").put("afpp", true).put("nodes", nodes)
                }
                AfppOutcome::Fails(f) => {
                    Report::new().put("status", "computed").put("afpp", false).put("witness", map_value(&f))
                }
                AfppOutcome::BudgetExceeded => Report::new().put("status", "budget exceeded"),
            }
        }
        Command::CheckHomotopic { f, g, pointed } => {
            let (f, g) = (io::read_map_file(f)?, io::read_map_file(g)?);
            let base = pointed.as_deref().map(parse_point).transpose()?;
            let s = are_homotopic(&f, &g, base.as_ref(), budget)?;
            let mut r = Report::new().put("status", status(&s)).put("homotopic", s.is_found());
            if let Search::Found(h) = &s {
                r = r.put("length", h.length()).put("homotopy", io::write_homotopy(h).trim_end());
            }
            r
        }
        Command::CheckMultimap { multimap, r_max } => {
            let f = io::read_multimap_file(multimap)?;
            let c = is_continuous_multimap(&f, *r_max, budget)?;
            Report::new()
                .put("weak", f.has_weak_continuity())
                .put("strong", f.has_strong_continuity())
                .put("connectivity_preserving", f.is_connectivity_preserving())
                .put("continuity", serde_json::to_value(&c).expect("serializes"))
        }
        Command::Subdivide { image, r, adj } => {
            let x = load_space(image, adj.as_deref())?;
            let s = subdivide(&x, *r)?;
            return Ok(match cli.format {
                Format::Text => io::write_image(s.space()),
                Format::Json => Report::new()
                    .put("r", *r)
                    .put("points", s.len())
                    .put("numerators", pts(s.space().points()))
                    .render(Format::Json),
            });
        }
        Command::Verify { all, check, list, open, seed, max_points } => {
            return verify(cli, *all, check, *list, open.as_deref(), *seed, *max_points)
        }
        Command::ExportDot { image, adj } => return Ok(io::export_dot(&*load_space(image, adj.as_deref())?)),
    };
    Ok(report.render(cli.format))
}

fn verify(
    cli: &Cli,
    all: bool,
    check: &[String],
    list: bool,
    open: Option<&str>,
    seed: u64,
    max_points: usize,
) -> Result<String> {
    let budget = cli.budget.unwrap_or(verifier::DEFAULT_CHECK_BUDGET);
    if list {
        let rows = verifier::manifest();
        return Ok(match cli.format {
            Format::Json => serde_json::to_string_pretty(&rows).expect("serializes") + "\n",
            Format::Text => rows.iter().map(|r| format!("{}\t{}\t{}\n", r.id, r.mode, r.claim)).collect(),
        });
    }
    if let Some(id) = open {
        let family = InstanceFamily { max_points, seed, ..InstanceFamily::default() };
        let report = verifier::search_open_problem(id, &family, budget)?;
        return Ok(match cli.format {
            Format::Json => {
                serde_json::to_string_pretty(&json!({ "problem": id, "report": report })).expect("serializes") + "\n"
            }
            Format::Text => match report {
                OpenProblemReport::NoCounterexampleFound { instances } => {
                    format!("{id}: no counterexample in {instances} instances\n")
                }
                OpenProblemReport::Counterexample { witness } => format!("{id}: counterexample: {witness}\n"),
                OpenProblemReport::BudgetExceeded { instances } => {
                    format!("{id}: budget exceeded after {instances} instances\n")
                }
            },
        });
    }
    let reports = if all {
        verifier::run_all(budget, seed)
    } else if !check.is_empty() {
        check.iter().map(|id| verifier::run_check_seeded(id, budget, seed)).collect::<Result<Vec<_>>>()?
    } else {
        return Err(Error::InvalidArgument("verify needs --all, --check, --list or --open".into()));
    };
    Ok(match cli.format {
        Format::Json => verifier::render_json(&reports),
        Format::Text => verifier::render_text(&reports),
    })
}
