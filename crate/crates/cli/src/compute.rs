use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use sqfpow::graphs::{matching_number, parse_edge_list};
use sqfpow::harness::REPORT_SCHEMA;
use sqfpow::ideals::sqf_power;
use sqfpow::{BettiTable, Family, Graph, InvariantBundle, SqfIdeal};

use crate::{field, FieldArg, Failure};

#[derive(Args)]
pub(crate) struct ComputeArgs {
    /// Family descriptor such as cycle:13 or mwpath:1,2,1.
    #[arg(required_unless_present = "edges", conflicts_with = "edges")]
    target: Option<String>,
    /// Read the graph from an edge-list file (one `u v` pair per line).
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Comma-separated values of k.
    #[arg(long, value_delimiter = ',', conflicts_with = "all_k")]
    k: Vec<usize>,
    /// Every k from 1 to the matching number (the default).
    #[arg(long)]
    all_k: bool,
    /// Print the Betti table of I(G)^[k].
    #[arg(long)]
    betti: bool,
    #[command(flatten)]
    field: FieldArg,
    /// Write the results as JSON here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the Betti tables as CSV rows (k, i, j, beta) here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Largest graph order to accept.
    #[arg(long, default_value_t = 18)]
    max_n: usize,
}

#[derive(Serialize)]
struct ComputeCase {
    k: usize,
    ideal: SqfIdeal,
    invariants: InvariantBundle,
    #[serde(skip_serializing_if = "Option::is_none")]
    betti: Option<BettiTable>,
}

#[derive(Serialize)]
struct ComputeReport {
    schema: u32,
    graph: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    matching_number: usize,
    field_char: u32,
    cases: Vec<ComputeCase>,
}

fn load_graph(a: &ComputeArgs) -> Result<(String, Graph), Failure> {
    match (&a.target, &a.edges) {
        (_, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
            Ok((path.display().to_string(), parse_edge_list(&text)?))
        }
        (Some(desc), None) => {
            let fam = Family::parse(desc)?;
            Ok((fam.to_string(), fam.graph()?))
        }
        (None, None) => Err(Failure("give a family descriptor or --edges".into())),
    }
}

pub(crate) fn run(a: ComputeArgs) -> Result<i32, Failure> {
    let f = field(&a.field)?;
    let (name, g) = load_graph(&a)?;
    if g.n() > a.max_n {
        return Err(Failure(format!(
            "the graph has {} vertices, above the cap of {} (raise it with --max-n)",
            g.n(),
            a.max_n
        )));
    }
    let nu = matching_number(&g);
    let ks: Vec<usize> = if a.k.is_empty() { (1..=nu.max(1)).collect() } else { a.k.clone() };
    if ks.contains(&0) {
        return Err(Failure("k must be at least 1".into()));
    }

    let mut out = format!(
        "graph {name}: {} vertices, {} edges, matching number {nu}, field {f}\n",
        g.n(),
        g.edge_count()
    );
    let mut cases = Vec::new();
    for &k in &ks {
        let ideal = sqf_power(&g, k);
        let (bundle, table) = InvariantBundle::compute(&ideal, f)?;
        if ideal.is_zero() {
            writeln!(out, "\nk = {k}: zero ideal (k exceeds the matching number)").unwrap();
            writeln!(out, "  reg      1 (convention for the zero ideal)").unwrap();
        } else {
            let degree = ideal.equigenerated_degree().expect("square-free powers are equigenerated");
            writeln!(out, "\nk = {k}: {} generators of degree {degree}", ideal.num_generators()).unwrap();
            writeln!(out, "  reg      {}", bundle.reg).unwrap();
        }
        writeln!(out, "  pd       {}", bundle.pd_quotient).unwrap();
        writeln!(out, "  depth    {}", bundle.depth_quotient).unwrap();
        writeln!(out, "  dim      {}", bundle.krull_dim_quotient).unwrap();
        writeln!(out, "  cm       {}", bundle.is_cm).unwrap();
        writeln!(out, "  linear   {}", bundle.linear_resolution).unwrap();
        if a.betti {
            match &table {
                Some(t) => {
                    writeln!(out, "  Betti table of I:").unwrap();
                    for line in t.diagram().lines() {
                        writeln!(out, "    {line}").unwrap();
                    }
                }
                None => writeln!(out, "  Betti table of I: empty").unwrap(),
            }
        }
        cases.push(ComputeCase {
            k,
            ideal,
            invariants: bundle,
            betti: if a.betti || a.json.is_some() || a.csv.is_some() { table } else { None },
        });
    }
    print!("{out}");

    if let Some(p) = &a.csv {
        let mut csv = String::from("k,i,j,beta\n");
        for c in &cases {
            if let Some(t) = &c.betti {
                for (i, j, b) in t.entries() {
                    writeln!(csv, "{},{i},{j},{b}", c.k).unwrap();
                }
            }
        }
        std::fs::write(p, csv)?;
    }
    if let Some(p) = &a.json {
        let report = ComputeReport {
            schema: REPORT_SCHEMA,
            graph: name,
            n: g.n(),
            edges: g.edges(),
            matching_number: nu,
            field_char: f.characteristic(),
            cases,
        };
        let text = serde_json::to_string_pretty(&report).map_err(|e| Failure(e.to_string()))?;
        std::fs::write(p, text + "\n")?;
    }
    Ok(0)
}
