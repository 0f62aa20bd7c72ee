use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use gencov::cover::{is_connected_by_voltage, simplicity_by_voltage, Cover, SimplicityViolation};
use gencov::dartgraph::{find_isomorphism, parse_text, to_dot_labelled, to_text, SpanningTree};
use gencov::normalize::{is_t_normalised, t_normalize};
use gencov::quotient::{is_faithful_gvg, reconstruct as reconstruct_action, ActionGroup};
use gencov::selftest::run_all;
use gencov::voltage::{GenVoltageGraph, SpecFile, SPEC_SCHEMA};
use serde_json::json;

use crate::error::CliError;
use crate::Format;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(CliError::io(path))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(CliError::io(path))
}

fn load_spec(path: &Path) -> Result<(String, GenVoltageGraph), CliError> {
    let text = read(path)?;
    let gvg = SpecFile::from_json(&text)?.to_gvg()?;
    Ok((text, gvg))
}

/// Sends the main output to a file or stdout. Notes go to stdout when the
/// main output has its own file, and to stderr otherwise.
struct Sink<'a> {
    output: Option<&'a Path>,
}

impl Sink<'_> {
    fn emit(&self, text: &str) -> Result<(), CliError> {
        match self.output {
            Some(p) => write(p, text),
            None => std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(CliError::io(Path::new("<stdout>"))),
        }
    }

    fn note(&self, line: &str) {
        if self.output.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
}

fn sidecar(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".fibres");
    PathBuf::from(name)
}

pub fn cover(
    spec: &Path,
    output: Option<&Path>,
    format: Format,
    normalize: bool,
    cap: usize,
) -> Result<ExitCode, CliError> {
    let (_, mut gvg) = load_spec(spec)?;
    if normalize {
        let tree = gvg.base().spanning_tree(0)?;
        gvg = t_normalize(&gvg, &tree)?.normalised;
    }
    let cover = Cover::build_with_cap(&gvg, cap)?;
    let graph = cover.graph();
    let text = match format {
        Format::Darts => to_text(graph),
        Format::Dot => to_dot_labelled(graph, |v| cover.vertex_display(v)),
    };
    let sink = Sink { output };
    sink.emit(&text)?;
    if let Some(p) = output {
        write(&sidecar(p), &cover.fibre_table())?;
    }
    sink.note(&format!(
        "cover: {} vertices, {} darts, {} component(s)",
        graph.vertex_count(),
        graph.dart_count(),
        graph.components().count
    ));
    Ok(ExitCode::SUCCESS)
}

pub fn check(spec: &Path, as_json: bool) -> Result<ExitCode, CliError> {
    let gvg = match load_spec(spec) {
        Ok((_, gvg)) => gvg,
        Err(CliError::Input(message)) => {
            if as_json {
                let report = json!({ "schema": SPEC_SCHEMA, "valid": false, "error": message });
                println!("{}", serde_json::to_string_pretty(&report).expect("json values serialise"));
            } else {
                println!("valid: false");
                println!("error: {message}");
            }
            return Ok(ExitCode::from(2));
        }
        Err(e) => return Err(e),
    };
    let connectivity = is_connected_by_voltage(&gvg);
    let simplicity = simplicity_by_voltage(&gvg);
    let violation = simplicity.violation.as_ref().map(|v| match v {
        SimplicityViolation::SameDart { dart, .. } => format!("darts over d{dart} share both ends"),
        SimplicityViolation::DistinctDarts(w) => format!("darts over d{} and d{} share both ends", w.x, w.y),
        SimplicityViolation::SemiEdge { dart } => format!("semi-edges over d{dart}"),
    });
    let valences: Vec<usize> = gvg.base().vertices().map(|v| gvg.lifted_valence(v)).collect();
    let fibres: Vec<usize> = gvg
        .base()
        .vertices()
        .map(|v| gvg.fibre_size(gencov::voltage::Element::Vertex(v)))
        .collect();
    let faithful = is_faithful_gvg(&gvg);
    if as_json {
        let report = json!({
            "schema": SPEC_SCHEMA,
            "valid": true,
            "faithful": faithful,
            "connected": connectivity.connected,
            "components": connectivity.index(),
            "simple": simplicity.simple,
            "simplicity_violation": violation,
            "valences": valences,
            "fibre_sizes": fibres,
            "group_order": gvg.group().order(),
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("json values serialise"));
    } else {
        let list = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        println!("valid: true");
        println!("faithful: {faithful}");
        println!("connected: {}", connectivity.connected);
        println!("components: {}", connectivity.index());
        println!("simple: {}", simplicity.simple);
        if let Some(v) = violation {
            println!("simplicity_violation: {v}");
        }
        println!("valences: {}", list(&valences));
        println!("fibre_sizes: {}", list(&fibres));
        println!("group_order: {}", gvg.group().order());
    }
    Ok(ExitCode::SUCCESS)
}

pub fn reconstruct(graph: &Path, action: &Path, output: Option<&Path>, verify: bool) -> Result<ExitCode, CliError> {
    let g = parse_text(&read(graph)?)?;
    let action = ActionGroup::parse(g, &read(action)?)?;
    let r = reconstruct_action(&action)?;
    let sink = Sink { output };
    sink.emit(&SpecFile::from_gvg(&r.gvg).to_json())?;
    sink.note(&format!(
        "quotient: {} vertices, {} darts; group order {}",
        r.quotient.graph.vertex_count(),
        r.quotient.graph.dart_count(),
        action.group().order()
    ));
    if verify {
        let cover = Cover::build(&r.gvg)?;
        match find_isomorphism(action.graph(), cover.graph())? {
            Some(iso) => {
                sink.note("verified: cover is isomorphic to the graph");
                for (v, &w) in iso.vertex_map.iter().enumerate() {
                    sink.note(&format!("  v{v} -> {}", cover.vertex_display(w)));
                }
            }
            None => {
                sink.note("verification failed: cover is not isomorphic to the graph");
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_tree(gvg: &GenVoltageGraph, spec: &str) -> Result<SpanningTree, CliError> {
    if spec.trim() == "auto" {
        return Ok(gvg.base().spanning_tree(0)?);
    }
    let darts = spec
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.strip_prefix('d')
                .unwrap_or(t)
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad tree dart {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SpanningTree::from_darts(gvg.base(), &darts)?)
}

pub fn normalize(spec: &Path, output: Option<&Path>, tree: &str) -> Result<ExitCode, CliError> {
    let (text, gvg) = load_spec(spec)?;
    let tree = parse_tree(&gvg, tree)?;
    let sink = Sink { output };
    if is_t_normalised(&gvg, &tree) {
        sink.emit(&text)?;
        sink.note("already normalised");
        return Ok(ExitCode::SUCCESS);
    }
    let result = t_normalize(&gvg, &tree)?;
    sink.emit(&SpecFile::from_gvg(&result.normalised).to_json())?;
    for step in &result.steps {
        sink.note(&format!(
            "shift d{} into v{}: conjugator {}",
            step.dart, step.head, step.conjugator
        ));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn selftest(seed: u64) -> ExitCode {
    let reports = run_all(seed);
    let mut out = std::io::stdout().lock();
    for r in &reports {
        let _ = writeln!(out, "{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(out, "{} of {} criteria passed", reports.len() - failed, reports.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
