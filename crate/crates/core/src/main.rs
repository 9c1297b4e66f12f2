use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tropmod::io::{
    analysis_json, parse_heights, parse_polygon, parse_triangulation, polygon_json, render_svg,
    report_json, triangulation_json, Scene,
};
use tropmod::moduli::{
    dim_mdelta_closed, dim_mdelta_exhaustive, dim_mt, dim_mt_formula, dim_mt_oracle, theorem_2g1_polygons,
};
use tropmod::subdivision::{
    beehive, enumerate_unimodular_parallel, honeycomb, induce, refine_regular, regularity_witness, verify_witness, ConeWitness,
};
use tropmod::tropical::dual_curve;
use tropmod::{hyperelliptic, Error, LatticePolygon, PolygonClass, Result, Triangulation};

#[derive(Parser)]
#[command(name = "tropmod", version, about = "Moduli dimensions of tropical plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Polygon invariants: genus, boundary points, interior polygon,
    /// maximality, column vectors, classification.
    Analyze { input: PathBuf },
    /// A regular unimodular triangulation with witness heights.
    Triangulate {
        input: PathBuf,
        #[command(flatten)]
        how: TriangulateMode,
    },
    /// All unimodular triangulations of the lattice points.
    Enumerate {
        input: PathBuf,
        /// Stop after this many triangulations.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Moduli dimension of a triangulation or a polygon.
    Dim {
        input: PathBuf,
        #[command(flatten)]
        how: DimMode,
        /// Enumeration cap for --exhaustive; the result is then a lower bound.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Maximal hyperelliptic polygons of a genus and the strip dimension.
    Hyperelliptic {
        #[arg(long)]
        genus: u64,
    },
    /// Draw a polygon or triangulation; with heights also the curve and skeleton.
    Render {
        input: PathBuf,
        #[arg(long, value_name = "OUT")]
        svg: PathBuf,
    },
    /// Polygons of a genus whose moduli have dimension 2g+1.
    Classify2g1 {
        #[arg(long)]
        genus: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TriangulateMode {
    /// Maximize b2 + 2 b3 (nonhyperelliptic polygons).
    #[arg(long)]
    beehive: bool,
    /// Slice by x = k, y = k, x + y = k.
    #[arg(long)]
    honeycomb: bool,
    /// Induce from heights, refining regularly if needed.
    #[arg(long, value_name = "FILE")]
    heights: Option<PathBuf>,
}

#[derive(Args)]
#[group(multiple = false)]
struct DimMode {
    /// Radial-edge formula (triangulation input).
    #[arg(long)]
    formula: bool,
    /// Rank of the height-to-skeleton map (triangulation input).
    #[arg(long)]
    oracle: bool,
    /// Closed form for the polygon.
    #[arg(long)]
    closed: bool,
    /// Maximum over enumerated regular triangulations.
    #[arg(long)]
    exhaustive: bool,
}

enum Input {
    Polygon(LatticePolygon),
    Triangulation(Triangulation, Option<tropmod::HeightFunction>),
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_input(path: &Path) -> Result<Input> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if v.get("triangles").is_some() {
        let (t, h) = parse_triangulation(&text)?;
        Ok(Input::Triangulation(t, h))
    } else {
        Ok(Input::Polygon(parse_polygon(&text)?))
    }
}

fn read_polygon(path: &Path) -> Result<LatticePolygon> {
    match read_input(path)? {
        Input::Polygon(p) => Ok(p),
        Input::Triangulation(t, _) => Ok(t.polygon()),
    }
}

fn parse_value(s: String) -> Value {
    serde_json::from_str(&s).expect("own output is valid JSON")
}

/// Runs `f` on one file, or on every `.json` file of a directory in name
/// order, collecting results keyed by file name.
fn per_input(path: &Path, f: impl Fn(&Path) -> Result<Value>) -> Result<Value> {
    if !path.is_dir() {
        return f(path);
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut out = serde_json::Map::new();
    for file in files {
        let name = file.file_name().unwrap_or_default().to_string_lossy().into_owned();
        out.insert(name, f(&file)?);
    }
    Ok(Value::Object(out))
}

fn triangulated(t: &Triangulation, w: &ConeWitness) -> Value {
    parse_value(triangulation_json(t, Some(&w.heights)))
}

fn triangulate(path: &Path, how: &TriangulateMode) -> Result<Value> {
    let p = read_polygon(path)?;
    if how.beehive {
        let r = beehive(&p)?;
        let mut v = triangulated(&r.triangulation, &r.witness);
        v["score"] = json!(r.score);
        Ok(v)
    } else if how.honeycomb {
        let (t, w) = honeycomb(&p)?;
        Ok(triangulated(&t, &w))
    } else {
        let file = how.heights.as_ref().expect("one mode is required");
        let heights = parse_heights(&read(file)?)?;
        if !heights.covers(&p) {
            return Err(Error::Precondition("heights must be given at every lattice point of the polygon".into()));
        }
        let s = induce(&p, &heights)?;
        let refined = !s.is_unimodular_triangulation();
        let (t, w) = refine_regular(&s, &heights)?;
        let mut v = triangulated(&t, &w);
        v["refined"] = json!(refined);
        Ok(v)
    }
}

fn dim(path: &Path, how: &DimMode, cap: Option<usize>) -> Result<Value> {
    let report = match read_input(path)? {
        Input::Triangulation(t, _) if how.formula => dim_mt_formula(&t)?,
        Input::Triangulation(t, _) if how.oracle => dim_mt_oracle(&t)?,
        Input::Triangulation(t, _) if !how.closed && !how.exhaustive => dim_mt(&t)?,
        Input::Triangulation(t, _) => polygon_dim(&t.polygon(), how, cap)?,
        Input::Polygon(p) => polygon_dim(&p, how, cap)?,
    };
    Ok(parse_value(report_json(&report)))
}

fn polygon_dim(p: &LatticePolygon, how: &DimMode, cap: Option<usize>) -> Result<tropmod::DimensionReport> {
    if how.formula || how.oracle {
        return Err(Error::Precondition("--formula and --oracle require a triangulation input".into()));
    }
    if how.exhaustive {
        return dim_mdelta_exhaustive(p, cap);
    }
    match tropmod::lattice::classify(p) {
        PolygonClass::Hyperelliptic => hyperelliptic::hyperelliptic_dim(p),
        _ => dim_mdelta_closed(p),
    }
}

fn enumerate(path: &Path, cap: Option<usize>) -> Result<Value> {
    let p = read_polygon(path)?;
    let all = enumerate_unimodular_parallel(&p, cap)?;
    let mut regular = 0;
    let list: Vec<Value> = all
        .iter()
        .map(|t| {
            let r = match regularity_witness(t) {
                Ok(_) => true,
                Err(Error::NotRegular) => false,
                Err(e) => return Err(e),
            };
            regular += r as usize;
            let mut v = parse_value(triangulation_json(t, None));
            v["regular"] = json!(r);
            Ok(v)
        })
        .collect::<Result<_>>()?;
    Ok(json!({
        "count": all.len(),
        "regular": regular,
        "capped": cap.is_some_and(|c| all.len() >= c),
        "triangulations": list,
    }))
}

fn hyperelliptic_cmd(g: u64) -> Result<Value> {
    let polys = hyperelliptic::maximal_hyperelliptic(g)?;
    let (strip, t) = hyperelliptic::strip_polygon(g)?;
    let w = regularity_witness(&t)?;
    Ok(json!({
        "genus": g,
        "polygons": polys.iter().map(|p| parse_value(polygon_json(p))).collect::<Vec<_>>(),
        "strip_polygon": parse_value(polygon_json(&strip)),
        "strip_triangulation": triangulated(&t, &w),
        "strip_dimension": parse_value(report_json(&hyperelliptic::strip_dimension(g)?)),
        "chain_equality_rank": hyperelliptic::chain_equality_matrix(g)?.rank(),
    }))
}

fn classify_2g1(g: u64) -> Result<Value> {
    let list = theorem_2g1_polygons(g)?
        .iter()
        .map(|p| {
            let mut v = parse_value(polygon_json(p));
            v["dimension"] = parse_value(report_json(&dim_mdelta_closed(p)?));
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "genus": g, "polygons": list }))
}

fn render(path: &Path, out: &Path) -> Result<Value> {
    let svg = match read_input(path)? {
        Input::Polygon(p) => render_svg(&Scene { polygon: Some(&p), ..Default::default() })?,
        Input::Triangulation(t, None) => render_svg(&Scene { triangulation: Some(&t), ..Default::default() })?,
        Input::Triangulation(t, Some(h)) => {
            let w = verify_witness(&t, &h)?;
            let c = dual_curve(&t, &w)?;
            let skeleton = t.polygon().genus() >= 2;
            render_svg(&Scene { triangulation: Some(&t), curve: Some(&c), skeleton, ..Default::default() })?
        }
    };
    std::fs::write(out, &svg).map_err(|e| Error::Parse(format!("{}: {e}", out.display())))?;
    Ok(json!({ "svg": out.display().to_string(), "bytes": svg.len() }))
}

fn run(cli: Cli) -> Result<Value> {
    match &cli.command {
        Command::Analyze { input } => per_input(input, |f| Ok(parse_value(analysis_json(&read_polygon(f)?)))),
        Command::Triangulate { input, how } => per_input(input, |f| triangulate(f, how)),
        Command::Enumerate { input, cap } => per_input(input, |f| enumerate(f, *cap)),
        Command::Dim { input, how, cap } => per_input(input, |f| dim(f, how, *cap)),
        Command::Hyperelliptic { genus } => hyperelliptic_cmd(*genus),
        Command::Render { input, svg } => render(input, svg),
        Command::Classify2g1 { genus } => classify_2g1(*genus),
    }
}

fn configure_threads() {
    let Ok(v) = std::env::var("TROPMOD_THREADS") else {
        return;
    };
    match v.parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("tropmod: ignoring TROPMOD_THREADS={v:?}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    match run(cli) {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("tropmod: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
