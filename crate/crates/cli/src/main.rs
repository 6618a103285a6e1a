mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use knotoidlab::bounds::{self, BoundRecord, RegionFilter};
use knotoidlab::bridge::{resolve_command, BridgeClient, Cell, ENV_VAR};
use knotoidlab::catalog::{self, name_key, RefVolume, Source};
use knotoidlab::constructions::{integer_knotoid, rational_knotoid_on, RationalCode};
use knotoidlab::invariants::{closure_jones, hyperbolicity_certificate};
use knotoidlab::maps::{
    closure, planar_doubling_image, planar_gluing_image, spherical_doubling_image, spherical_gluing_image,
    virtual_closure, ClosureKind,
};
use knotoidlab::{height_upper_bound, random_move_walk, Error, KnotoidDiagram, LinkPD, Surface};

use report::{emit, Format, Report};

/// Agreement required between a computed volume and a reference one.
const TABLE_TOLERANCE: f64 = 1e-4;

#[derive(Parser)]
#[command(name = "knotoidlab", version, about = "Knotoid diagrams, their knot images, and volume bounds")]
struct Cli {
    /// Geometry worker command; cells needing it print `needs-engine` without one.
    #[arg(long, global = true, env = ENV_VAR)]
    bridge: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "tsv")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print knotoid codes from the catalog or a generator, optionally after a random move walk.
    Gen(GenArgs),
    /// Gluing or doubling image of a knotoid, with its link presentation.
    Map(MapArgs),
    /// Closure polynomials and hyperbolicity verdicts.
    Invariants(InvArgs),
    /// Volume lower bounds and the candidate filters built on them.
    Bounds(BoundsArgs),
    /// Volume table of the catalog, compared with the shipped reference values.
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceArg {
    Sphere,
    Plane,
}

impl From<SurfaceArg> for Surface {
    fn from(s: SurfaceArg) -> Self {
        match s {
            SurfaceArg::Sphere => Surface::Sphere,
            SurfaceArg::Plane => Surface::Plane,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapArg {
    Gluing,
    Doubling,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClosureArg {
    Under,
    Over,
    Virtual,
}

/// Where diagrams come from; with none of the selectors, the whole catalog.
#[derive(Args)]
struct Input {
    /// Catalog name such as 2_1.
    #[arg(long, conflicts_with_all = ["code", "rational", "integer"])]
    name: Option<String>,
    /// Knotoid code, e.g. "sphere; C1+o C2+u C1+u C2+o".
    #[arg(long, conflicts_with_all = ["rational", "integer"])]
    code: Option<String>,
    /// Rational knotoid from twist counts, e.g. 2,2.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "integer")]
    rational: Option<String>,
    /// Integer knotoid with this many twists.
    #[arg(long, allow_hyphen_values = true)]
    integer: Option<i64>,
    #[arg(long, value_enum)]
    surface: Option<SurfaceArg>,
    /// Catalog entries above this crossing count are skipped.
    #[arg(long)]
    max_crossings: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    input: Input,
    /// Random Reidemeister moves applied to each diagram.
    #[arg(long, default_value_t = 0)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Crossing cap for the walk; defaults to four above the start.
    #[arg(long)]
    walk_cap: Option<usize>,
}

#[derive(Args)]
struct MapArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value = "gluing")]
    map: MapArg,
}

#[derive(Args)]
struct InvArgs {
    #[command(flatten)]
    input: Input,
    /// Only this closure; both classical closures by default.
    #[arg(long, value_enum)]
    closure: Option<ClosureArg>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    integer_filter: bool,
    #[arg(long)]
    two_region: bool,
    #[arg(long)]
    two_region_subcase: bool,
    #[arg(long)]
    three_region: bool,
    /// Two-bridge bound for these twist numbers.
    #[arg(long, value_delimiter = ',')]
    two_bridge: Vec<u64>,
    /// Base volume for a single Dehn filling bound; needs --slopes.
    #[arg(long, requires = "slopes")]
    dehn_base: Option<f64>,
    #[arg(long, value_delimiter = ',', requires = "dehn_base")]
    slopes: Vec<f64>,
    #[arg(long, default_value_t = bounds::V_THRESHOLD)]
    threshold: f64,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum, default_value = "sphere")]
    surface: SurfaceArg,
    #[arg(long, default_value_t = 5)]
    max_crossings: usize,
    #[arg(long, value_enum, default_value = "gluing")]
    map: MapArg,
    /// Exit nonzero when a computed volume disagrees with the reference.
    #[arg(long)]
    check: bool,
}

struct Failure {
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { kind: e.kind().into(), message: e.to_string() }
    }
}

impl Failure {
    fn new(kind: &str, message: impl Into<String>) -> Self {
        Failure { kind: kind.into(), message: message.into() }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", json!({"error": {"kind": f.kind, "message": f.message}}));
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Res<()> {
    let mut bridge = match resolve_command(cli.bridge.as_deref()) {
        Some(cmd) => Some(BridgeClient::spawn(&cmd)?),
        None => None,
    };
    let (report, ok) = match &cli.command {
        Cmd::Gen(a) => (cmd_gen(a)?, true),
        Cmd::Map(a) => (cmd_map(a, bridge.as_mut())?, true),
        Cmd::Invariants(a) => (cmd_invariants(a)?, true),
        Cmd::Bounds(a) => (cmd_bounds(a, bridge.as_mut())?, true),
        Cmd::Table(a) => cmd_table(a, bridge.as_mut())?,
    };
    let mut report = report;
    if let Some(b) = &bridge {
        report.note("engine", b.version());
    }
    emit(&report.render(cli.format), cli.out.as_deref())
        .map_err(|e| Failure::new("io", format!("cannot write report: {e}")))?;
    if !report.complete {
        return Err(Failure::new("incomplete", "some rows did not finish; see the report"));
    }
    if !ok {
        return Err(Failure::new("mismatch", "computed values disagree with the reference table"));
    }
    Ok(())
}

fn diagrams(input: &Input) -> Res<Vec<(String, KnotoidDiagram)>> {
    let surface = input.surface.map(Surface::from);
    let on = |d: KnotoidDiagram| -> Res<KnotoidDiagram> {
        match surface {
            Some(s) if s != d.surface() => Err(Error::SurfaceMismatch.into()),
            _ => Ok(d),
        }
    };
    if let Some(name) = &input.name {
        let e =
            catalog::lookup(name).ok_or_else(|| Failure::new("unknown-name", format!("no catalog entry {name}")))?;
        return Ok(vec![(e.name, on(e.diagram)?)]);
    }
    if let Some(code) = &input.code {
        return Ok(vec![("code".into(), on(KnotoidDiagram::parse(code)?)?)]);
    }
    if let Some(r) = &input.rational {
        let text = if r.trim_start().starts_with('[') { r.clone() } else { format!("[{r}]") };
        let code: RationalCode = text.parse()?;
        let d = rational_knotoid_on(&code, surface.unwrap_or(Surface::Sphere), false)?;
        return Ok(vec![(code.to_string(), d)]);
    }
    if let Some(n) = input.integer {
        let d = match surface.unwrap_or(Surface::Sphere) {
            Surface::Sphere => integer_knotoid(n)?,
            Surface::Plane => rational_knotoid_on(&RationalCode(vec![n]), Surface::Plane, false)?,
        };
        return Ok(vec![(format!("[{n}]"), d)]);
    }
    let mut entries = catalog::catalog(surface.unwrap_or(Surface::Sphere));
    entries.retain(|e| input.max_crossings.is_none_or(|m| e.crossing_count() <= m));
    entries.sort_by_key(|e| name_key(&e.name));
    Ok(entries.into_iter().map(|e| (e.name, e.diagram)).collect())
}

fn cmd_gen(a: &GenArgs) -> Res<Report> {
    let mut r = Report::new("gen", &["name", "surface", "crossings", "code"]);
    for (name, d) in diagrams(&a.input)? {
        let d = if a.steps > 0 {
            let cap = a.walk_cap.unwrap_or(d.crossing_count() + 4);
            random_move_walk(&d, a.seed, a.steps, cap)
        } else {
            d
        };
        r.row(vec![json!(name), json!(d.surface().to_string()), json!(d.crossing_count()), json!(d.to_code())]);
    }
    if a.steps > 0 {
        r.note("seed", a.seed);
        r.note("steps", a.steps);
    }
    Ok(r)
}

fn cell_value(c: &Cell) -> Value {
    match c {
        Cell::Volume(v) => json!(v),
        other => json!(other.to_string()),
    }
}

fn cmd_map(a: &MapArgs, mut bridge: Option<&mut BridgeClient>) -> Res<Report> {
    let cols = ["name", "surface", "map", "genus", "punctures", "crossings", "seam_intersections", "volume", "link"];
    let mut r = Report::new("map", &cols);
    for (name, d) in diagrams(&a.input)? {
        let (surface, link, divisor): (_, LinkPD, u32) = match (d.surface(), a.map) {
            (Surface::Sphere, MapArg::Gluing) => {
                let i = spherical_gluing_image(&d)?;
                (i.surface.clone(), i.as_link().clone(), 1)
            }
            (Surface::Sphere, MapArg::Doubling) => {
                let i = spherical_doubling_image(&d)?;
                (i.surface.clone(), i.as_link().clone(), 1)
            }
            (Surface::Plane, MapArg::Gluing) => {
                let i = planar_gluing_image(&d)?;
                (i.surface.clone(), i.as_surgery().clone(), i.volume_divisor)
            }
            (Surface::Plane, MapArg::Doubling) => {
                let i = planar_doubling_image(&d)?;
                (i.surface.clone(), i.as_surgery().clone(), i.volume_divisor)
            }
        };
        let cell = Cell::from_engine(bridge.as_deref_mut(), &link, divisor as f64);
        if matches!(cell, Cell::Failed(_)) {
            r.complete = false;
        }
        r.row(vec![
            json!(name),
            json!(d.surface().to_string()),
            json!(map_name(a.map)),
            json!(surface.genus),
            json!(surface.punctures.len()),
            json!(surface.classical_crossings()),
            json!(surface.seam_intersections()),
            cell_value(&cell),
            json!(link.to_string()),
        ]);
    }
    Ok(r)
}

fn map_name(m: MapArg) -> &'static str {
    match m {
        MapArg::Gluing => "gluing",
        MapArg::Doubling => "doubling",
    }
}

fn cmd_invariants(a: &InvArgs) -> Res<Report> {
    let cols = ["name", "closure", "crossings", "height", "jones", "verdict", "detail"];
    let mut r = Report::new("invariants", &cols);
    let kinds = match a.closure {
        Some(k) => vec![k],
        None => vec![ClosureArg::Under, ClosureArg::Over],
    };
    for (name, d) in diagrams(&a.input)? {
        let verdict = match d.surface() {
            Surface::Sphere => {
                hyperbolicity_certificate(&d).map(|c| c.to_string()).unwrap_or_else(|e| format!("error: {e}"))
            }
            Surface::Plane => "-".into(),
        };
        let h = height_upper_bound(&d);
        for &k in &kinds {
            let (kind_name, jones, detail) = match k {
                ClosureArg::Under | ClosureArg::Over => {
                    let kind = if k == ClosureArg::Under { ClosureKind::Under } else { ClosureKind::Over };
                    let jones = match closure_jones(&d, kind) {
                        Ok(p) => p.to_string(),
                        Err(e) => {
                            r.complete = false;
                            format!("error: {e}")
                        }
                    };
                    (kind.to_string(), jones, closure(&d, kind).to_string())
                }
                ClosureArg::Virtual => {
                    let s = d.on_surface(Surface::Sphere, None)?;
                    let v = virtual_closure(&s)?;
                    let detail = format!(
                        "genus={} classical={} seam={} cut={}",
                        v.genus,
                        v.classical_crossings(),
                        v.seam_intersections(),
                        v.dual_cut.len()
                    );
                    ("virtual".to_string(), "-".to_string(), detail)
                }
            };
            r.row(vec![
                json!(name),
                json!(kind_name),
                json!(d.crossing_count()),
                json!(h),
                json!(jones),
                json!(verdict),
                json!(detail),
            ]);
        }
    }
    Ok(r)
}

fn push_records(r: &mut Report, records: &[BoundRecord]) {
    for rec in records {
        r.row(vec![
            json!(rec.case),
            json!(rec.base_volume),
            json!(rec.slopes),
            rec.bound.map_or(Value::Null, |b| json!(b)),
            json!(rec.verdict.to_string()),
        ]);
    }
}

fn push_region(r: &mut Report, label: &str, f: &RegionFilter) {
    push_records(r, &f.records);
    r.note(format!("{label} cutoffs"), json!(f.cutoffs));
    let pats: Vec<String> = f.residual.iter().map(|p| p.to_string()).collect();
    r.note(format!("{label} residual"), json!(pats));
}

fn cmd_bounds(a: &BoundsArgs, bridge: Option<&mut BridgeClient>) -> Res<Report> {
    let mut r = Report::new("bounds", &["case", "base_volume", "slopes", "bound", "verdict"]);
    let any = a.integer_filter
        || a.two_region
        || a.two_region_subcase
        || a.three_region
        || !a.two_bridge.is_empty()
        || a.dehn_base.is_some();
    r.note("threshold", a.threshold);
    for &tw in &a.two_bridge {
        let b = bounds::two_bridge_lower_bound(tw)?;
        r.row(vec![json!(format!("two-bridge tw={tw}")), Value::Null, json!([]), json!(b), json!("-")]);
    }
    if let Some(base) = a.dehn_base {
        let b = bounds::dehn_filling_lower_bound(base, &a.slopes)?;
        let verdict = match b.value() {
            None => "Inapplicable",
            Some(v) if v > a.threshold => "Passes",
            Some(_) => "Residual",
        };
        r.row(vec![
            json!("dehn"),
            json!(base),
            json!(a.slopes),
            b.value().map_or(Value::Null, |v| json!(v)),
            json!(verdict),
        ]);
    }
    if a.integer_filter || !any {
        let f = bounds::integer_candidate_filter(a.threshold)?;
        push_records(&mut r, &f.records);
        r.note("integer residual", json!(f.residual));
        if let Some(b) = bridge {
            // the (1,n) filling is the integer knotoid with 2n twists
            for &n in &f.residual {
                let d = integer_knotoid(2 * n as i64)?;
                let cell = Cell::from_engine(Some(&mut *b), spherical_gluing_image(&d)?.as_link(), 1.0);
                if matches!(cell, Cell::Failed(_)) {
                    r.complete = false;
                }
                r.note(format!("integer n={n} volume"), cell_value(&cell));
            }
        }
    }
    if a.two_region || !any {
        push_region(&mut r, "two-region", &bounds::two_region_filter(a.threshold)?);
    }
    if a.two_region_subcase || !any {
        push_region(&mut r, "two-region subcase", &bounds::two_region_subcase_filter(a.threshold)?);
    }
    if a.three_region || !any {
        push_region(&mut r, "three-region", &bounds::three_region_filter(a.threshold)?);
    }
    Ok(r)
}

fn source_name(s: Source) -> &'static str {
    match s {
        Source::Figure => "figure",
        Source::KnotType => "knot-type",
        Source::Volume => "volume",
    }
}

/// Returns the report and whether every computed value matched.
fn cmd_table(a: &TableArgs, mut bridge: Option<&mut BridgeClient>) -> Res<(Report, bool)> {
    let surface = Surface::from(a.surface);
    let cols = ["name", "crossings", "source", "volume", "reference", "status"];
    let mut r = Report::new("table", &cols);
    let refs = catalog::reference_volumes(surface);
    let mut entries = catalog::catalog(surface);
    entries.retain(|e| e.crossing_count() <= a.max_crossings);
    entries.sort_by_key(|e| name_key(&e.name));
    let (mut matched, mut mismatched, mut pending) = (0, 0, 0);
    for e in &entries {
        let reference = refs.iter().find(|x| x.name == e.name).and_then(|x| match (surface, a.map) {
            (_, MapArg::Gluing) => Some(x.gluing),
            (Surface::Plane, MapArg::Doubling) => x.doubling,
            (Surface::Sphere, MapArg::Doubling) => Some(match x.gluing {
                RefVolume::Volume(v) => RefVolume::Volume(2.0 * v),
                nh => nh,
            }),
        });
        let (link, divisor) = match (surface, a.map) {
            (Surface::Sphere, MapArg::Gluing) => (spherical_gluing_image(&e.diagram)?.as_link().clone(), 1),
            (Surface::Sphere, MapArg::Doubling) => (spherical_doubling_image(&e.diagram)?.as_link().clone(), 1),
            (Surface::Plane, MapArg::Gluing) => {
                let i = planar_gluing_image(&e.diagram)?;
                (i.as_surgery().clone(), i.volume_divisor)
            }
            (Surface::Plane, MapArg::Doubling) => {
                let i = planar_doubling_image(&e.diagram)?;
                (i.as_surgery().clone(), i.volume_divisor)
            }
        };
        let cell = Cell::from_engine(bridge.as_deref_mut(), &link, divisor as f64);
        let status = match (&cell, reference) {
            (Cell::NeedsEngine, _) => {
                pending += 1;
                "needs-engine"
            }
            (Cell::Failed(_), _) => {
                r.complete = false;
                "error"
            }
            (_, None) => "no-reference",
            (c, Some(rv)) if rv.matches(c.volume(), TABLE_TOLERANCE) => {
                matched += 1;
                "match"
            }
            _ => {
                mismatched += 1;
                "mismatch"
            }
        };
        r.row(vec![
            json!(e.name),
            json!(e.crossing_count()),
            json!(source_name(e.source)),
            cell_value(&cell),
            reference.map_or(Value::Null, |v| json!(v.to_string())),
            json!(status),
        ]);
    }
    r.note("matched", matched);
    r.note("mismatched", mismatched);
    r.note("needs-engine", pending);
    Ok((r, !(a.check && mismatched > 0)))
}
