//! Command-line surface for the metric-graph cohomology engine.
//!
//! Subcommands: `hodge`, `pd`, `green`, `subset`, `mv`, `audit`. Every
//! command reads a skeleton file, prints a text report by default and a
//! machine-readable mirror with `--format=json`. Exit codes: 2 invalid
//! input, 3 nonzero measure mass, 4 region not strictly simple, 5 internal
//! consistency failure.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use skelhodge::dim::Dimension;
use skelhodge::graph::{ParseError, RegionError};
use skelhodge::pairing::{
    mv_audit, pd_check, subset_hodge, three_of_four, Cover, CoverScope, PairingError,
    PairingReport, PdCheck, PdCheckVerdict,
};
use skelhodge::potential::{
    ddc, green_solve_on_graph, parse_measure_literal, PotentialError, Site,
};
use skelhodge::sequences::{
    hodge_symmetry_check, hodge_table, pd_verdict, sequence_audit, SequenceError,
};
use skelhodge::{
    extract_region, parse_region_literal, parse_skeleton, Mesh, OpenSet, Rat, RatGraph, Region,
    ResidueModel,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "skelhodge", version, about = "Cohomology of augmented metric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Hodge table, Betti number, rank data and the duality verdict.
    Hodge { file: PathBuf },
    /// Duality pairing matrices with rank certificates; add --region for a
    /// local check.
    Pd {
        file: PathBuf,
        /// Region literal `seed=v1 cut=e1:1/3 cut=e2:1/2`.
        #[arg(long)]
        region: Option<String>,
    },
    /// Solve `ddc f = mu` exactly and print the solution.
    Green {
        file: PathBuf,
        /// Measure literal `v1:1 e2@1/3:-1`.
        #[arg(long, default_value = "")]
        measure: String,
        /// Node to pin to zero (vertex id or `edge@t`).
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Hodge tables of a strictly simple region (full and compact support).
    Subset {
        file: PathBuf,
        #[arg(long)]
        region: String,
    },
    /// Mayer-Vietoris audit and verdict propagation for a two-piece cover.
    Mv {
        file: PathBuf,
        /// Region literal; pass exactly twice (the two pieces).
        #[arg(long = "region", action = clap::ArgAction::Append)]
        regions: Vec<String>,
    },
    /// Exactness audits of the resolution, harmonic and exponential
    /// sequences.
    Audit { file: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        fail(2, e.to_string())
    }
}

impl From<RegionError> for Failure {
    fn from(e: RegionError) -> Self {
        match e {
            RegionError::NotStrictlySimple => fail(4, e.to_string()),
            _ => fail(2, e.to_string()),
        }
    }
}

impl From<PotentialError> for Failure {
    fn from(e: PotentialError) -> Self {
        match e {
            PotentialError::NonzeroMass => fail(3, e.to_string()),
            _ => fail(2, e.to_string()),
        }
    }
}

impl From<SequenceError> for Failure {
    fn from(e: SequenceError) -> Self {
        match e {
            SequenceError::Inconsistent(_) => fail(5, e.to_string()),
            SequenceError::RequiresTorsionModel => fail(2, e.to_string()),
        }
    }
}

impl From<PairingError> for Failure {
    fn from(e: PairingError) -> Self {
        match e {
            PairingError::Inconsistent(_) => fail(5, e.to_string()),
            PairingError::Region(r) => r.into(),
            PairingError::InfiniteDimensional => fail(2, e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{}", output);
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load(file: &PathBuf) -> Result<(RatGraph, ResidueModel), Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| fail(2, format!("{}: {}", file.display(), e)))?;
    Ok(parse_skeleton::<Rat>(&text)?)
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Hodge { file } => {
            let (graph, model) = load(file)?;
            cmd_hodge(&graph, model, cli.format)
        }
        Command::Pd { file, region } => {
            let (graph, model) = load(file)?;
            cmd_pd(&graph, model, region.as_deref(), cli.format)
        }
        Command::Green {
            file,
            measure,
            basepoint,
        } => {
            let (graph, _) = load(file)?;
            cmd_green(&graph, measure, basepoint.as_deref(), cli.format)
        }
        Command::Subset { file, region } => {
            let (graph, model) = load(file)?;
            cmd_subset(&graph, model, region, cli.format)
        }
        Command::Mv { file, regions } => {
            let (graph, model) = load(file)?;
            cmd_mv(&graph, model, regions, cli.format)
        }
        Command::Audit { file } => {
            let (graph, model) = load(file)?;
            cmd_audit(&graph, model, cli.format)
        }
    }
}

fn table_lines(prefix: &str, t: &skelhodge::HodgeTable, out: &mut String) {
    for p in 0..2 {
        for q in 0..2 {
            let e = &t.entries[p][q];
            out.push_str(&format!(
                "{}h[{}][{}]={}({})\n",
                prefix, p, q, e.value, e.provenance
            ));
        }
    }
}

fn table_json(t: &skelhodge::HodgeTable) -> Value {
    let mut map = serde_json::Map::new();
    for p in 0..2 {
        for q in 0..2 {
            let e = &t.entries[p][q];
            map.insert(
                format!("h{}{}", p, q),
                json!({
                    "value": e.value.to_string(),
                    "provenance": e.provenance.to_string(),
                }),
            );
        }
    }
    Value::Object(map)
}

fn cmd_hodge(graph: &RatGraph, model: ResidueModel, format: Format) -> Result<String, Failure> {
    let (outcome, table) = pd_verdict(graph, model)?;
    let finiteness = skelhodge::finiteness_verdict(graph, model);
    let s = graph.picard_rank_sum(model);
    let positive: Vec<&str> = graph.positive_genus_vertices();
    match format {
        Format::Json => {
            let v = json!({
                "command": "hodge",
                "vertices": graph.vertex_count(),
                "edges": graph.edge_count(),
                "betti": graph.betti(),
                "residue": model.to_string(),
                "positive_genus": positive,
                "s_x": s.to_string(),
                "h": table_json(&table),
                "finiteness": match finiteness {
                    skelhodge::sequences::Finiteness::Finite => "finite",
                    skelhodge::sequences::Finiteness::Infinite => "infinite",
                },
                "pd": outcome.verdict.to_string(),
                "pd_reason": outcome.reason,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "graph: vertices={} edges={} betti={}\n",
                graph.vertex_count(),
                graph.edge_count(),
                graph.betti()
            ));
            out.push_str(&format!("residue={}\n", model));
            out.push_str(&format!("G(X)={}\n", positive.join(",")));
            out.push_str(&format!("S_X={}\n", s));
            table_lines("", &table, &mut out);
            out.push_str(&format!(
                "finiteness={}\n",
                match finiteness {
                    skelhodge::sequences::Finiteness::Finite => "finite",
                    skelhodge::sequences::Finiteness::Infinite => "infinite",
                }
            ));
            out.push_str(&format!("PD={}\n", outcome.verdict));
            Ok(out)
        }
    }
}

fn matrix_rows(r: &PairingReport<Rat>) -> Vec<Vec<String>> {
    (0..r.matrix.rows())
        .map(|i| r.matrix.row(i).iter().map(|x| x.to_string()).collect())
        .collect()
}

fn pairing_text(scope: &str, check: &PdCheck<Rat>, out: &mut String) {
    out.push_str(&format!(
        "PD({})={} rank={}/{}\n",
        scope, check.verdict, check.rank_sum, check.expected_sum
    ));
    if let PdCheckVerdict::Degenerate(reason) = &check.verdict {
        out.push_str(&format!("reason: {}\n", reason));
    }
    for r in &check.pairings {
        out.push_str(&format!(
            "pairing ({},{})x({},{}): size={}x{} rank={} model-rows={}\n",
            r.p,
            r.q,
            1 - r.p,
            1 - r.q,
            r.full_dim,
            r.compact_dim,
            r.rank,
            r.model_full_dim
        ));
        for row in matrix_rows(r) {
            out.push_str(&format!("  [{}]\n", row.join(" ")));
        }
    }
}

fn pairing_json(check: &PdCheck<Rat>) -> Value {
    json!({
        "verdict": check.verdict.to_string(),
        "reason": match &check.verdict {
            PdCheckVerdict::Degenerate(r) => Some(r.clone()),
            PdCheckVerdict::Perfect => None,
        },
        "rank": check.rank_sum,
        "expected": check.expected_sum.to_string(),
        "pairings": check.pairings.iter().map(|r| json!({
            "p": r.p,
            "q": r.q,
            "size": [r.full_dim, r.compact_dim],
            "rank": r.rank,
            "model_rows": r.model_full_dim.to_string(),
            "matrix": matrix_rows(r),
        })).collect::<Vec<_>>(),
    })
}

fn resolve_region(
    graph: &RatGraph,
    literal: &str,
) -> Result<(Mesh<Rat>, Region, String), Failure> {
    let (seed, cuts) = parse_region_literal::<Rat>(graph, literal)?;
    let (mesh, region) = extract_region(graph, &seed, cuts)?;
    Ok((mesh, region, seed))
}

fn cmd_pd(
    graph: &RatGraph,
    model: ResidueModel,
    region: Option<&str>,
    format: Format,
) -> Result<String, Failure> {
    match region {
        None => {
            let (outcome, _) = pd_verdict(graph, model)?;
            let mesh = Mesh::base(graph.clone());
            let set = OpenSet::whole(&mesh);
            let check = pd_check(graph, &mesh, &set, model);
            match format {
                Format::Json => {
                    let v = json!({
                        "command": "pd",
                        "scope": "graph",
                        "pd": outcome.verdict.to_string(),
                        "pd_reason": outcome.reason,
                        "s_x": graph.picard_rank_sum(model).to_string(),
                        "check": pairing_json(&check),
                    });
                    Ok(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
                }
                Format::Text => {
                    let mut out = String::new();
                    out.push_str(&format!("PD={}\n", outcome.verdict));
                    out.push_str(&format!("reason: {}\n", outcome.reason));
                    out.push_str(&format!("S_X={}\n", graph.picard_rank_sum(model)));
                    pairing_text("graph", &check, &mut out);
                    Ok(out)
                }
            }
        }
        Some(literal) => {
            let (mesh, region, seed) = resolve_region(graph, literal)?;
            let check = pd_check(graph, &mesh, &region.set, model);
            let scope = format!("region seed={} k={}", seed, region.boundary_count);
            match format {
                Format::Json => {
                    let v = json!({
                        "command": "pd",
                        "scope": scope,
                        "k": region.boundary_count,
                        "strictly_simple": region.strictly_simple,
                        "check": pairing_json(&check),
                    });
                    Ok(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
                }
                Format::Text => {
                    let mut out = String::new();
                    pairing_text(&scope, &check, &mut out);
                    Ok(out)
                }
            }
        }
    }
}

fn cmd_green(
    graph: &RatGraph,
    measure: &str,
    basepoint: Option<&str>,
    format: Format,
) -> Result<String, Failure> {
    let atoms = parse_measure_literal::<Rat>(measure)?;
    let base_site = basepoint.map(Site::parse).transpose()?;
    let solution = green_solve_on_graph(graph, &atoms, base_site.as_ref())?;
    // round-trip verification before printing
    if ddc(&solution.mesh, &solution.function) != solution.measure {
        return Err(fail(5, "solver round-trip failed"));
    }
    let names: Vec<String> = (0..solution.mesh.node_count())
        .map(|n| solution.mesh.node_name(n))
        .collect();
    match format {
        Format::Json => {
            let values: serde_json::Map<String, Value> = names
                .iter()
                .zip(&solution.function.values)
                .map(|(n, v)| (n.clone(), Value::String(v.to_string())))
                .collect();
            let v = json!({
                "command": "green",
                "basepoint": names[solution.basepoint],
                "mass": solution.measure.mass().to_string(),
                "values": values,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
        }
        Format::Text => {
            let mut out = String::new();
            for (n, v) in names.iter().zip(&solution.function.values) {
                out.push_str(&format!("{}={}\n", n, v));
            }
            Ok(out)
        }
    }
}

fn cmd_subset(
    graph: &RatGraph,
    model: ResidueModel,
    region: &str,
    format: Format,
) -> Result<String, Failure> {
    let (mesh, region, seed) = resolve_region(graph, region)?;
    let tables = subset_hodge(graph, &mesh, &region, model)?;
    match format {
        Format::Json => {
            let v = json!({
                "command": "subset",
                "seed": seed,
                "k": tables.boundary_count,
                "strictly_simple": region.strictly_simple,
                "within_theorem": tables.within_theorem,
                "full": table_json(&tables.full),
                "compact": table_json(&tables.compact),
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("region: seed={} k={}\n", seed, tables.boundary_count));
            out.push_str(&format!(
                "within-theorem={}\n",
                if tables.within_theorem { "yes" } else { "no" }
            ));
            table_lines("full ", &tables.full, &mut out);
            table_lines("compact ", &tables.compact, &mut out);
            Ok(out)
        }
    }
}

fn cmd_mv(
    graph: &RatGraph,
    model: ResidueModel,
    regions: &[String],
    format: Format,
) -> Result<String, Failure> {
    if regions.len() != 2 {
        return Err(fail(2, "mv needs exactly two --region literals"));
    }
    let (seed1, cuts1) = parse_region_literal::<Rat>(graph, &regions[0])?;
    let (seed2, cuts2) = parse_region_literal::<Rat>(graph, &regions[1])?;
    let mut all_cuts = cuts1.clone();
    all_cuts.extend(cuts2.iter().cloned());
    let mesh = Mesh::new(graph.clone(), all_cuts)
        .map_err(|e| fail(2, format!("invalid cut: {}", e)))?;
    let resolve = |seed: &str, cuts: &[skelhodge::SubdivisionPoint<Rat>]| -> Result<OpenSet, Failure> {
        let seed_ix = graph
            .vertex_ix(seed)
            .ok_or_else(|| fail(2, format!("unknown seed vertex `{}`", seed)))?;
        let cut_nodes: Vec<usize> = cuts
            .iter()
            .map(|p| mesh.node_at(p.edge, &p.t).expect("cut is a mesh node"))
            .collect();
        Ok(Region::extract_on(&mesh, mesh.vertex_node(seed_ix), &cut_nodes)?.set)
    };
    let u1 = resolve(&seed1, &cuts1)?;
    let u2 = resolve(&seed2, &cuts2)?;
    let cover = Cover::new(mesh, u1, u2);

    let audits = [mv_audit(&cover, 0), mv_audit(&cover, 1)];
    let scopes = [
        CoverScope::Union,
        CoverScope::U1,
        CoverScope::U2,
        CoverScope::Intersection,
    ];
    let verdicts: Vec<(CoverScope, PdCheck<Rat>)> = scopes
        .iter()
        .map(|&s| (s, pd_check(graph, &cover.mesh, cover.scope(s), model)))
        .collect();
    let propagations: Vec<_> = scopes
        .iter()
        .map(|&target| three_of_four(&cover, graph, model, target))
        .collect();

    match format {
        Format::Json => {
            let v = json!({
                "command": "mv",
                "audits": audits.iter().map(|a| json!({
                    "p": a.p,
                    "dims": a.dims,
                    "restriction_ranks": a.restriction_ranks,
                    "exact": a.exact,
                    "checks": a.checks.iter().map(|c| json!({
                        "name": c.name, "ok": c.ok
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "scopes": verdicts.iter().map(|(s, c)| json!({
                    "scope": s.to_string(),
                    "verdict": c.verdict.to_string(),
                    "rank": c.rank_sum,
                    "expected": c.expected_sum.to_string(),
                })).collect::<Vec<_>>(),
                "propagation": propagations.iter().map(|p| json!({
                    "target": p.target.to_string(),
                    "predicted": p.predicted.as_ref().map(|v| v.to_string()),
                    "direct": p.direct.verdict.to_string(),
                    "confirmed": p.confirmed,
                })).collect::<Vec<_>>(),
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
        }
        Format::Text => {
            let mut out = String::new();
            for a in &audits {
                let dims: Vec<String> = a.dims.iter().map(|d| d.to_string()).collect();
                out.push_str(&format!(
                    "mv p={} dims=({}) exact={}\n",
                    a.p,
                    dims.join(","),
                    if a.exact { "yes" } else { "no" }
                ));
                for c in &a.checks {
                    out.push_str(&format!(
                        "  check {}: {}\n",
                        c.name,
                        if c.ok { "ok" } else { "FAILED" }
                    ));
                }
            }
            for (s, c) in &verdicts {
                out.push_str(&format!(
                    "PD({})={} rank={}/{}\n",
                    s, c.verdict, c.rank_sum, c.expected_sum
                ));
            }
            for p in &propagations {
                out.push_str(&format!(
                    "three-of-four target={} predicted={} direct={} confirmed={}\n",
                    p.target,
                    p.predicted
                        .as_ref()
                        .map(|v| v.to_string())
                        .unwrap_or_else(|| "indeterminate".into()),
                    p.direct.verdict,
                    p.confirmed
                        .map(|c| if c { "yes" } else { "NO" }.to_string())
                        .unwrap_or_else(|| "n/a".into()),
                ));
            }
            Ok(out)
        }
    }
}

fn cmd_audit(graph: &RatGraph, model: ResidueModel, format: Format) -> Result<String, Failure> {
    let audits = sequence_audit(graph, model)?;
    let aff = skelhodge::affine_h1(graph, model);
    let s = graph.picard_rank_sum(model);
    let symmetry = if model == ResidueModel::Torsion {
        let (h10, h01) = hodge_symmetry_check(graph, model)?;
        Some((h10, h01))
    } else {
        None
    };
    // surface the table so an inconsistent engine aborts with exit 5
    let _ = hodge_table(graph, model)?;
    match format {
        Format::Json => {
            let v = json!({
                "command": "audit",
                "residue": model.to_string(),
                "s_x": s.to_string(),
                "aff_h1": aff.to_string(),
                "sequences": audits.iter().map(|a| json!({
                    "id": a.id.to_string(),
                    "terms": a.terms.iter().map(Dimension::to_string).collect::<Vec<_>>(),
                    "exact": a.exactness.to_string(),
                })).collect::<Vec<_>>(),
                "hodge_symmetry": symmetry.map(|(a, b)| format!("{}={}", a, b)),
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("S_X={}\n", s));
            out.push_str(&format!("aff_h1={}\n", aff));
            for a in &audits {
                let terms: Vec<String> = a.terms.iter().map(Dimension::to_string).collect();
                out.push_str(&format!(
                    "sequence={} terms=({}) exact={}\n",
                    a.id,
                    terms.join(","),
                    a.exactness
                ));
            }
            if let Some((h10, h01)) = symmetry {
                out.push_str(&format!("hodge-symmetry: h10={} h01={} pass\n", h10, h01));
            }
            Ok(out)
        }
    }
}
