//! Command-line front end: fixture resolution, dispatch, JSON reports,
//! and the SVG fan diagram.

use crate::chambers::{self, ChambersError, StabilityChamber};
use crate::cones::{self, Cone2D, ConesError, PairingKind};
use crate::lattice::DivisorClass;
use crate::model::{self, class_to_repr, HKModel, ModelError, ScalarRepr, Violation};
use crate::scalar::{parse_rat, QuadScalar};
use crate::walk::{self, Component, WalkError};
use crate::zariski::{self, ZariskiError};
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "hkcones", disable_help_subcommand = true)]
#[command(about = "Exact cone and chamber computations for hyper-Kahler models")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// List available fixtures
    Fixtures {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check fixture invariants
    Validate {
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long)]
        all_fixtures: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Divisorial Zariski decomposition of a class
    Zariski {
        #[arg(long)]
        fixture: String,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cone membership flags of a class
    Membership {
        #[arg(long)]
        fixture: String,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dual of a named or explicit rank-2 cone
    Dual {
        #[arg(long)]
        fixture: String,
        #[arg(long, default_value = "mov")]
        cone: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<String>,
        #[arg(long, default_value = "bbf")]
        pairing: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closure of the k-ample cone
    Ampk {
        #[arg(long)]
        fixture: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stability chamber decomposition of the big cone
    Chambers {
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long)]
        all_fixtures: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mori chamber of an effective class
    Mori {
        #[arg(long)]
        fixture: String,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Destabilizing numbers along an ample direction
    Destab {
        #[arg(long)]
        fixture: String,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, allow_hyphen_values = true)]
        ample: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chamber walk trace of a movable big class
    Walk {
        #[arg(long)]
        fixture: String,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Asymptotic base locus report of a big class
    Loci {
        #[arg(long)]
        fixture: String,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG diagram of the stability chamber fan
    FanSvg {
        #[arg(long)]
        fixture: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

// ---------------------------------------------------------------------------
// Error plumbing

/// A domain failure: the inputs parsed but the requested computation is
/// undefined for them. Exit code 1.
#[derive(Debug, Clone, Serialize)]
pub struct DomainError {
    pub code: String,
    pub message: String,
}

fn domain(code: &str, message: String) -> DomainError {
    DomainError { code: code.to_string(), message }
}

impl From<ZariskiError> for DomainError {
    fn from(e: ZariskiError) -> DomainError {
        let code = match &e {
            ZariskiError::NotPseudoEffective => "NotPseudoEffective",
            ZariskiError::IncompleteExceptionalData => "IncompleteExceptionalData",
        };
        domain(code, e.to_string())
    }
}

impl From<ConesError> for DomainError {
    fn from(e: ConesError) -> DomainError {
        let code = match &e {
            ConesError::RankUnsupported(_) => "RankUnsupported",
            ConesError::TruncationExceeded => "TruncationExceeded",
            ConesError::EmptyCone => "EmptyCone",
        };
        domain(code, e.to_string())
    }
}

impl From<WalkError> for DomainError {
    fn from(e: WalkError) -> DomainError {
        let code = match &e {
            WalkError::RankUnsupported(_) => "RankUnsupported",
            WalkError::NotBig => "NotBig",
            WalkError::NotMovable => "NotMovable",
            WalkError::TruncationExceeded => "TruncationExceeded",
        };
        domain(code, e.to_string())
    }
}

impl From<ChambersError> for DomainError {
    fn from(e: ChambersError) -> DomainError {
        match e {
            ChambersError::Cones(c) => c.into(),
            ChambersError::NotBig => domain("NotBig", e.to_string()),
            ChambersError::NotAmple => domain("NotAmple", e.to_string()),
            ChambersError::NotPseudoEffective => domain("NotPseudoEffective", e.to_string()),
            ChambersError::TruncationExceeded => domain("TruncationExceeded", e.to_string()),
        }
    }
}

/// Usage or parse failure. Exit code 2.
#[derive(Debug)]
struct UsageError(String);

enum RunError {
    Domain(DomainError),
    Usage(UsageError),
}

impl<E: Into<DomainError>> From<E> for RunError {
    fn from(e: E) -> RunError {
        RunError::Domain(e.into())
    }
}

fn usage(msg: impl Into<String>) -> RunError {
    RunError::Usage(UsageError(msg.into()))
}

// ---------------------------------------------------------------------------
// Report shapes

#[derive(Serialize)]
struct ErrorReport {
    schema: u32,
    error: DomainError,
}

#[derive(Serialize)]
struct FixturesReport {
    schema: u32,
    fixtures: Vec<String>,
}

#[derive(Serialize)]
struct ValidateReport {
    schema: u32,
    fixture: String,
    valid: bool,
    violations: Vec<Violation>,
}

#[derive(Serialize)]
struct ZariskiReport {
    schema: u32,
    fixture: String,
    class: Vec<ScalarRepr>,
    positive: Vec<ScalarRepr>,
    negative_coeffs: BTreeMap<String, ScalarRepr>,
    support: Vec<String>,
}

#[derive(Serialize)]
struct MembershipReport {
    schema: u32,
    fixture: String,
    class: Vec<ScalarRepr>,
    pseudo_effective: bool,
    big: bool,
    movable: bool,
    nef: bool,
    ample: bool,
}

#[derive(Serialize)]
struct ConeRepr {
    lo: Vec<ScalarRepr>,
    hi: Vec<ScalarRepr>,
}

impl ConeRepr {
    fn from_cone(c: &Cone2D) -> ConeRepr {
        ConeRepr { lo: class_to_repr(&c.lo), hi: class_to_repr(&c.hi) }
    }
}

#[derive(Serialize)]
struct DualReport {
    schema: u32,
    fixture: String,
    pairing: PairingKind,
    cone: ConeRepr,
    dual: ConeRepr,
}

#[derive(Serialize)]
struct AmpkReport {
    schema: u32,
    fixture: String,
    k: u32,
    cone: ConeRepr,
}

#[derive(Serialize)]
struct RegionRepr {
    cone: ConeRepr,
    include_lo: bool,
    include_hi: bool,
}

#[derive(Serialize)]
struct ChamberRepr {
    name: String,
    components: Vec<Component>,
    regions: Vec<RegionRepr>,
}

#[derive(Serialize)]
struct ChambersReport {
    schema: u32,
    fixture: String,
    chambers: Vec<ChamberRepr>,
}

#[derive(Serialize)]
struct MoriReport {
    schema: u32,
    fixture: String,
    class: Vec<ScalarRepr>,
    face_rays: Vec<Vec<ScalarRepr>>,
    exceptional_generators: Vec<String>,
}

#[derive(Serialize)]
struct JumpRepr {
    lambda: ScalarRepr,
    rational: bool,
    walls: Vec<String>,
    before: Vec<Component>,
    after: Vec<Component>,
}

#[derive(Serialize)]
struct DestabReportDoc {
    schema: u32,
    fixture: String,
    class: Vec<ScalarRepr>,
    ample: Vec<ScalarRepr>,
    jumps: Vec<JumpRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary_lambda: Option<ScalarRepr>,
}

#[derive(Serialize)]
struct CrossedRepr {
    wall: String,
    center_label: String,
    center_dim: u32,
}

#[derive(Serialize)]
struct WalkReport {
    schema: u32,
    fixture: String,
    class: Vec<ScalarRepr>,
    crossed: Vec<CrossedRepr>,
    terminal_chamber: ConeRepr,
    #[serde(skip_serializing_if = "Option::is_none")]
    terminal_on_wall: Option<String>,
}

#[derive(Serialize)]
struct LociReport {
    schema: u32,
    fixture: String,
    class: Vec<ScalarRepr>,
    b_plus: Vec<Component>,
    b_minus: Vec<Component>,
    b: Vec<Component>,
    stable: bool,
    partial: bool,
}

#[derive(Serialize)]
struct BatchReport {
    schema: u32,
    reports: Vec<serde_json::Value>,
}

// ---------------------------------------------------------------------------
// Fixture resolution and argument parsing

fn fixture_dir() -> Option<PathBuf> {
    std::env::var_os("HKCONES_FIXTURE_DIR").map(PathBuf::from)
}

/// Built-in fixtures plus any *.json files under HKCONES_FIXTURE_DIR,
/// sorted by name.
pub fn available_fixtures() -> Vec<String> {
    let mut names: Vec<String> = model::BUILTIN_NAMES.iter().map(|s| s.to_string()).collect();
    if let Some(dir) = fixture_dir() {
        if let Ok(entries) = std::fs::read_dir(&dir) {
            for entry in entries.flatten() {
                let path = entry.path();
                if path.extension().and_then(|e| e.to_str()) == Some("json") {
                    if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                        names.push(stem.to_string());
                    }
                }
            }
        }
    }
    names.sort();
    names.dedup();
    names
}

pub fn load_fixture(source: &str) -> Result<HKModel, ModelError> {
    let path = Path::new(source);
    if path.extension().and_then(|e| e.to_str()) == Some("json") || source.contains('/') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ModelError::Parse(format!("{}: {}", source, e)))?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(source);
        return HKModel::from_json(name, &text);
    }
    if let Ok(m) = model::builtin(source) {
        return Ok(m);
    }
    if let Some(dir) = fixture_dir() {
        let candidate = dir.join(format!("{}.json", source));
        if candidate.is_file() {
            let text = std::fs::read_to_string(&candidate)
                .map_err(|e| ModelError::Parse(format!("{}: {}", candidate.display(), e)))?;
            return HKModel::from_json(source, &text);
        }
    }
    Err(ModelError::UnknownFixture(source.to_string()))
}

fn parse_class(s: &str, rank: usize) -> Result<DivisorClass, RunError> {
    let coords: Result<Vec<_>, _> = s.split(',').map(|p| parse_rat(p.trim())).collect();
    let coords = coords.map_err(|e| usage(format!("--class: {}", e)))?;
    if coords.len() != rank {
        return Err(usage(format!(
            "--class: expected {} coordinates, got {}",
            rank,
            coords.len()
        )));
    }
    Ok(DivisorClass::from_rats(coords))
}

fn resolve(source: &str) -> Result<HKModel, RunError> {
    load_fixture(source).map_err(|e| usage(format!("--fixture: {}", e)))
}

// ---------------------------------------------------------------------------
// Dispatch

/// Runs a full invocation. Returns the process exit code: 0 on success,
/// 1 on domain errors, 2 on usage or parse errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = out_path(&cli.verb);
    match dispatch(&cli.verb) {
        Ok(doc) => {
            emit(&out, &doc);
            0
        }
        Err(RunError::Domain(e)) => {
            let report = ErrorReport { schema: SCHEMA, error: e };
            emit(&out, &to_json(&report));
            1
        }
        Err(RunError::Usage(e)) => {
            eprintln!("error: {}", e.0);
            2
        }
    }
}

fn out_path(verb: &Verb) -> Option<PathBuf> {
    match verb {
        Verb::Fixtures { out }
        | Verb::Validate { out, .. }
        | Verb::Zariski { out, .. }
        | Verb::Membership { out, .. }
        | Verb::Dual { out, .. }
        | Verb::Ampk { out, .. }
        | Verb::Chambers { out, .. }
        | Verb::Mori { out, .. }
        | Verb::Destab { out, .. }
        | Verb::Walk { out, .. }
        | Verb::Loci { out, .. }
        | Verb::FanSvg { out, .. } => out.clone(),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) {
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error writing {}: {}", path.display(), e);
            }
        }
        None => print!("{}", text),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

fn dispatch(verb: &Verb) -> Result<String, RunError> {
    match verb {
        Verb::Fixtures { .. } => {
            let report = FixturesReport { schema: SCHEMA, fixtures: available_fixtures() };
            Ok(to_json(&report))
        }
        Verb::Validate { fixture, all_fixtures, .. } => {
            batch_or_single(fixture, *all_fixtures, |m| {
                let r = m.validate();
                Ok(serde_json::to_value(ValidateReport {
                    schema: SCHEMA,
                    fixture: m.name.clone(),
                    valid: r.is_valid(),
                    violations: r.violations,
                })
                .expect("report serialization"))
            })
        }
        Verb::Zariski { fixture, class, .. } => {
            let m = resolve(fixture)?;
            let d = parse_class(class, m.rank())?;
            let z = zariski::decompose(&m, &d)?;
            let report = ZariskiReport {
                schema: SCHEMA,
                fixture: m.name.clone(),
                class: class_to_repr(&d),
                positive: class_to_repr(&z.positive),
                negative_coeffs: z
                    .negative_coeffs
                    .iter()
                    .map(|(k, v)| (k.clone(), ScalarRepr::from_scalar(v)))
                    .collect(),
                support: z.support.iter().cloned().collect(),
            };
            Ok(to_json(&report))
        }
        Verb::Membership { fixture, class, .. } => {
            let m = resolve(fixture)?;
            let d = parse_class(class, m.rank())?;
            let flags = cones::membership(&m, &d);
            let report = MembershipReport {
                schema: SCHEMA,
                fixture: m.name.clone(),
                class: class_to_repr(&d),
                pseudo_effective: flags.pseudo_effective,
                big: flags.big,
                movable: flags.movable,
                nef: flags.nef,
                ample: flags.ample,
            };
            Ok(to_json(&report))
        }
        Verb::Dual { fixture, cone, lo, hi, pairing, .. } => {
            let m = resolve(fixture)?;
            let kind = match pairing.as_str() {
                "bbf" => PairingKind::Bbf,
                "curve" => PairingKind::Curve,
                other => return Err(usage(format!("--pairing: unknown kind {:?}", other))),
            };
            let input = match (lo, hi) {
                (Some(lo), Some(hi)) => Cone2D::new(
                    parse_class(lo, m.rank())?,
                    parse_class(hi, m.rank())?,
                ),
                (None, None) => match cone.as_str() {
                    "mov" => cones::mov_cone_rank2(&m)?,
                    "nef" => cones::nef_cone_rank2(&m)?,
                    "eff" => cones::eff_cone_rank2(&m)?,
                    "positive" => cones::positive_cone_boundary_rank2(&m)?,
                    other => return Err(usage(format!("--cone: unknown cone {:?}", other))),
                },
                _ => return Err(usage("--lo and --hi must be given together")),
            };
            let dual = cones::dual_cone_rank2(&m, &input, kind)?;
            let report = DualReport {
                schema: SCHEMA,
                fixture: m.name.clone(),
                pairing: kind,
                cone: ConeRepr::from_cone(&input),
                dual: ConeRepr::from_cone(&dual),
            };
            Ok(to_json(&report))
        }
        Verb::Ampk { fixture, k, .. } => {
            let m = resolve(fixture)?;
            if *k < 1 || *k > m.dim {
                return Err(usage(format!("--k: must lie in 1..={}", m.dim)));
            }
            let cone = cones::amp_k(&m, *k)?;
            let report = AmpkReport {
                schema: SCHEMA,
                fixture: m.name.clone(),
                k: *k,
                cone: ConeRepr::from_cone(&cone),
            };
            Ok(to_json(&report))
        }
        Verb::Chambers { fixture, all_fixtures, .. } => {
            batch_or_single(fixture, *all_fixtures, |m| {
                let chambers = chambers::stability_chambers_rank2(m)?;
                Ok(serde_json::to_value(chambers_report(m, &chambers))
                    .expect("report serialization"))
            })
        }
        Verb::Mori { fixture, class, .. } => {
            let m = resolve(fixture)?;
            let d = parse_class(class, m.rank())?;
            let c = chambers::mori_chamber(&m, &d)?;
            let report = MoriReport {
                schema: SCHEMA,
                fixture: m.name.clone(),
                class: class_to_repr(&d),
                face_rays: c.face_rays.iter().map(class_to_repr).collect(),
                exceptional_generators: c.exceptional_generators.iter().cloned().collect(),
            };
            Ok(to_json(&report))
        }
        Verb::Destab { fixture, class, ample, .. } => {
            let m = resolve(fixture)?;
            let d = parse_class(class, m.rank())?;
            let a = parse_class(ample, m.rank())?;
            let rep = chambers::destabilizing_numbers(&m, &d, &a)?;
            let report = DestabReportDoc {
                schema: SCHEMA,
                fixture: m.name.clone(),
                class: class_to_repr(&d),
                ample: class_to_repr(&a),
                jumps: rep
                    .jumps
                    .iter()
                    .map(|j| JumpRepr {
                        lambda: ScalarRepr::from_scalar(&j.lambda),
                        rational: j.rational,
                        walls: j.walls.clone(),
                        before: j.before.clone(),
                        after: j.after.clone(),
                    })
                    .collect(),
                boundary_lambda: rep.boundary_lambda.as_ref().map(ScalarRepr::from_scalar),
            };
            Ok(to_json(&report))
        }
        Verb::Walk { fixture, class, .. } => {
            let m = resolve(fixture)?;
            let d = parse_class(class, m.rank())?;
            let trace = walk::walk_rank2(&m, &d)?;
            let report = WalkReport {
                schema: SCHEMA,
                fixture: m.name.clone(),
                class: class_to_repr(&d),
                crossed: trace
                    .crossed
                    .iter()
                    .map(|c| CrossedRepr {
                        wall: c.wall.clone(),
                        center_label: c.center_label.clone(),
                        center_dim: c.center_dim,
                    })
                    .collect(),
                terminal_chamber: ConeRepr::from_cone(&trace.terminal_chamber),
                terminal_on_wall: trace.terminal_on_wall.clone(),
            };
            Ok(to_json(&report))
        }
        Verb::Loci { fixture, class, .. } => {
            let m = resolve(fixture)?;
            let d = parse_class(class, m.rank())?;
            let rep = walk::base_loci(&m, &d)?;
            let report = LociReport {
                schema: SCHEMA,
                fixture: m.name.clone(),
                class: class_to_repr(&d),
                b_plus: rep.b_plus,
                b_minus: rep.b_minus,
                b: rep.b,
                stable: rep.stable,
                partial: rep.partial,
            };
            Ok(to_json(&report))
        }
        Verb::FanSvg { fixture, .. } => {
            let m = resolve(fixture)?;
            let chambers = chambers::stability_chambers_rank2(&m)?;
            Ok(fan_svg(&m, &chambers))
        }
    }
}

fn chambers_report(m: &HKModel, chambers: &[StabilityChamber]) -> ChambersReport {
    ChambersReport {
        schema: SCHEMA,
        fixture: m.name.clone(),
        chambers: chambers
            .iter()
            .map(|c| ChamberRepr {
                name: c.name.clone(),
                components: c.components.clone(),
                regions: c
                    .regions
                    .iter()
                    .map(|r| RegionRepr {
                        cone: ConeRepr::from_cone(&r.cone),
                        include_lo: r.include_lo,
                        include_hi: r.include_hi,
                    })
                    .collect(),
            })
            .collect(),
    }
}

fn batch_or_single<F>(
    fixture: &Option<String>,
    all: bool,
    mut f: F,
) -> Result<String, RunError>
where
    F: FnMut(&HKModel) -> Result<serde_json::Value, RunError>,
{
    if all {
        let mut reports = Vec::new();
        for name in available_fixtures() {
            let m = resolve(&name)?;
            match f(&m) {
                Ok(v) => reports.push(v),
                Err(RunError::Domain(e)) => {
                    let doc = serde_json::json!({
                        "schema": SCHEMA,
                        "fixture": name,
                        "error": serde_json::to_value(&e).expect("error serialization"),
                    });
                    reports.push(doc);
                }
                Err(e) => return Err(e),
            }
        }
        return Ok(to_json(&BatchReport { schema: SCHEMA, reports }));
    }
    let source = fixture
        .as_ref()
        .ok_or_else(|| usage("--fixture is required unless --all-fixtures is set"))?;
    let m = resolve(source)?;
    f(&m).map(|v| to_json(&v))
}

// ---------------------------------------------------------------------------
// SVG fan diagram

const SVG_SIZE: f64 = 640.0;
const SVG_RADIUS: f64 = 240.0;
const PALETTE: [&str; 8] = [
    "#dce8f7", "#f7e3dc", "#e1f2dd", "#f4eecb", "#e9dcf2", "#dcf0f0", "#f2dce8", "#e6e6e6",
];

/// Deterministic screen coordinates for a ray: rational sandwich
/// approximations of the components, normalized to the canvas radius.
fn ray_point(d: &DivisorClass) -> (f64, f64) {
    let approx = |s: &QuadScalar| {
        let r = s.approx_rat(1_000_000);
        crate::scalar::rat_to_f64(&r)
    };
    let x = approx(&d.coords[0]);
    let y = approx(&d.coords[1]);
    let len = (x * x + y * y).sqrt();
    let cx = SVG_SIZE / 2.0;
    let cy = SVG_SIZE / 2.0;
    (cx + SVG_RADIUS * x / len, cy - SVG_RADIUS * y / len)
}

fn ray_label(d: &DivisorClass, basis: &[String]) -> String {
    let mut parts = Vec::new();
    for (c, name) in d.coords.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        let coeff = if c.is_rational() {
            crate::scalar::format_rat(c.a())
        } else {
            format!("({:.3})", c.approx_f64())
        };
        match coeff.as_str() {
            "1" => parts.push(name.clone()),
            "-1" => parts.push(format!("-{}", name)),
            _ => parts.push(format!("{}{}", coeff, name)),
        }
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut s = parts[0].clone();
    for p in &parts[1..] {
        if let Some(rest) = p.strip_prefix('-') {
            s.push_str(&format!(" - {}", rest));
        } else {
            s.push_str(&format!(" + {}", p));
        }
    }
    s
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the chamber fan as a deterministic SVG document. An empty
/// chamber list yields axes only.
pub fn fan_svg(model: &HKModel, chambers: &[StabilityChamber]) -> String {
    let cx = SVG_SIZE / 2.0;
    let cy = SVG_SIZE / 2.0;
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
        SVG_SIZE
    ));
    s.push_str(&format!(
        "  <rect width=\"{0}\" height=\"{0}\" fill=\"#ffffff\"/>\n",
        SVG_SIZE
    ));
    s.push_str(&format!("  <title>{}</title>\n", xml_escape(&model.name)));
    // Sectors first so axes and rays draw on top.
    let mut legend: Vec<(String, String, Vec<String>)> = Vec::new();
    for (i, chamber) in chambers.iter().enumerate() {
        let fill = PALETTE[i % PALETTE.len()];
        for region in &chamber.regions {
            let (x1, y1) = ray_point(&region.cone.lo);
            let (x2, y2) = ray_point(&region.cone.hi);
            s.push_str(&format!(
                "  <path d=\"M {cx:.2},{cy:.2} L {x1:.2},{y1:.2} A {r:.2},{r:.2} 0 0 0 {x2:.2},{y2:.2} Z\" fill=\"{fill}\" stroke=\"none\"/>\n",
                r = SVG_RADIUS
            ));
        }
        legend.push((
            chamber.name.clone(),
            fill.to_string(),
            chamber.components.iter().map(|c| c.label.clone()).collect(),
        ));
    }
    // Axes.
    s.push_str(&format!(
        "  <line x1=\"20\" y1=\"{cy:.2}\" x2=\"{:.2}\" y2=\"{cy:.2}\" stroke=\"#999999\" stroke-width=\"1\"/>\n",
        SVG_SIZE - 20.0
    ));
    s.push_str(&format!(
        "  <line x1=\"{cx:.2}\" y1=\"20\" x2=\"{cx:.2}\" y2=\"{:.2}\" stroke=\"#999999\" stroke-width=\"1\"/>\n",
        SVG_SIZE - 20.0
    ));
    // Boundary and wall rays with labels, each once, in fan order.
    let mut rays: Vec<DivisorClass> = Vec::new();
    for chamber in chambers {
        for region in &chamber.regions {
            for ray in [&region.cone.lo, &region.cone.hi] {
                if !rays.iter().any(|r| r.same_ray(ray)) {
                    rays.push(ray.clone());
                }
            }
        }
    }
    for ray in &rays {
        let (x, y) = ray_point(ray);
        s.push_str(&format!(
            "  <line x1=\"{cx:.2}\" y1=\"{cy:.2}\" x2=\"{x:.2}\" y2=\"{y:.2}\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n"
        ));
        let lx = cx + (x - cx) * 1.12;
        let ly = cy + (y - cy) * 1.12;
        s.push_str(&format!(
            "  <text x=\"{lx:.2}\" y=\"{ly:.2}\" font-size=\"12\" text-anchor=\"middle\" fill=\"#111111\">{}</text>\n",
            xml_escape(&ray_label(ray, &model.basis))
        ));
    }
    // Legend.
    for (i, (name, fill, labels)) in legend.iter().enumerate() {
        let y = 24.0 + 18.0 * i as f64;
        s.push_str(&format!(
            "  <rect x=\"24\" y=\"{:.2}\" width=\"12\" height=\"12\" fill=\"{}\" stroke=\"#333333\"/>\n",
            y - 10.0,
            fill
        ));
        let desc = if labels.is_empty() {
            format!("{}: {{}}", name)
        } else {
            format!("{}: {{{}}}", name, labels.join(", "))
        };
        s.push_str(&format!(
            "  <text x=\"42\" y=\"{y:.2}\" font-size=\"12\" fill=\"#111111\">{}</text>\n",
            xml_escape(&desc)
        ));
    }
    s.push_str("</svg>\n");
    s
}
