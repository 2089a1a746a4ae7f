//! `preskit`: command-line front end for the P-resolution pipeline.
//!
//! Exit codes: 0 success, 1 domain rejection or failed check, 2 usage, parse
//! or I/O error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use preskit::catalog::{verify_catalog, Catalog, CatalogEntry, NSpec};
use preskit::compactify::compactify_record;
use preskit::mmp::{case_discriminant, classify_minimal_model, run_mmp_with, MmpOptions};
use preskit::mres::to_mresolution;
use preskit::presolve::{
    enumerate_presolutions, symmetric_pairs, EnumerationOptions, PResolutionRecord,
};
use preskit::singularity::BranchType;
use preskit::{DecoratedGraph, Family, ToiDescriptor};

#[derive(Parser)]
#[command(
    name = "preskit",
    version,
    about = "P-resolutions and semistable MMP for TOI quotient singularities"
)]
struct Cli {
    /// Print the family aliases and their arms.
    #[arg(long)]
    list_families: bool,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate every entry of a graph file (catalog entry format).
    Validate { file: PathBuf },
    /// dim, mu and BO number of catalog entries.
    Invariants {
        family: Family,
        n: i64,
        #[arg(long)]
        index: Option<usize>,
    },
    /// Enumerate P-resolutions from the minimal resolution.
    Enumerate {
        family: Family,
        n: i64,
        #[arg(long, default_value_t = 3)]
        max_blowups: usize,
    },
    /// M-resolution of a catalog entry.
    Mres {
        family: Family,
        n: i64,
        index: usize,
    },
    /// Compactified central fiber of a catalog entry.
    Compactify {
        family: Family,
        n: i64,
        index: usize,
    },
    /// Run the MMP and print the move trace and the (-1)-curve data.
    Mmp {
        family: Family,
        n: i64,
        index: usize,
        /// Write a DOT file of the central fiber after each round.
        #[arg(long)]
        snapshots: Option<PathBuf>,
    },
    /// Minimal model of the Milnor fiber, and Case I/II for type (3,1).
    Classify {
        family: Family,
        n: i64,
        index: usize,
    },
    /// Catalog indices of isomorphic P-resolutions.
    Pairs { family: Family, n: i64 },
    /// Catalog maintenance.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// DOT rendering of every entry of a graph file.
    ExportDot { file: PathBuf },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Recompute every entry and cross-check the tables.
    Check { path: Option<PathBuf> },
}

enum Failure {
    /// Report on stdout, exit 1.
    Rejected(String),
    Domain(String),
    Input(String),
}

type Out = Result<String, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn catalog() -> Result<Catalog, Failure> {
    Catalog::from_env().map_err(input)
}

fn read_entries(path: &Path) -> Result<Vec<CatalogEntry>, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok(Catalog::parse_partial(&text).map_err(input)?.entries)
}

fn fixed_n(e: &CatalogEntry) -> Result<i64, Failure> {
    match e.n {
        NSpec::Fixed(n) => Ok(n),
        NSpec::Above(_) => Err(input(format!("{}: graph files need a fixed n", e.key()))),
    }
}

fn record(family: Family, n: i64, index: usize) -> Result<PResolutionRecord, Failure> {
    ToiDescriptor::new(family, n).map_err(domain)?;
    let cat = catalog()?;
    let e = cat.lookup(family, n, index).map_err(domain)?;
    e.record(n).map_err(domain)
}

fn write_graph(out: &mut String, g: &DecoratedGraph) {
    for (v, c) in g.curves() {
        writeln!(out, "v {v} {} {}", c.self_int, c.marker.code()).unwrap();
    }
    for (a, b, m) in g.edges() {
        if m == 1 {
            writeln!(out, "e {a} {b}").unwrap();
        } else {
            writeln!(out, "e {a} {b} {m}").unwrap();
        }
    }
}

fn singularities(r: &PResolutionRecord) -> String {
    let s: Vec<String> = r.singularities.iter().map(|k| k.to_string()).collect();
    format!("[{}]", s.join(", "))
}

fn validate(file: &Path) -> Out {
    let mut out = String::new();
    let mut rejected = 0;
    for e in read_entries(file)? {
        let n = fixed_n(&e)?;
        match e.record(n) {
            Ok(r) => {
                let mut line = format!(
                    "{} ok dim={} mu={} sing={}",
                    e.key(),
                    r.dim,
                    r.milnor,
                    singularities(&r)
                );
                let printed = (e.printed_dim(n), e.milnor);
                if printed.0.is_some_and(|d| d != r.dim) || printed.1.is_some_and(|m| m != r.milnor)
                {
                    rejected += 1;
                    line.push_str(" mismatch with printed values");
                }
                writeln!(out, "{line}").unwrap();
            }
            Err(err) if err.is_rejection() => {
                rejected += 1;
                writeln!(out, "{} rejected: {err}", e.key()).unwrap();
            }
            Err(err) => return Err(input(format!("{}: {err}", e.key()))),
        }
    }
    if rejected > 0 {
        writeln!(out, "rejected={rejected}").unwrap();
        return Err(Failure::Rejected(out));
    }
    Ok(out)
}

fn invariants(family: Family, n: i64, index: Option<usize>) -> Out {
    ToiDescriptor::new(family, n).map_err(domain)?;
    let cat = catalog()?;
    let entries: Vec<&CatalogEntry> = match index {
        Some(i) => vec![cat.lookup(family, n, i).map_err(domain)?],
        None => cat.entries_at(family, n),
    };
    if entries.is_empty() {
        return Err(domain(format!("no catalog entries for {family} n={n}")));
    }
    let mut out = String::new();
    for e in entries {
        let r = e.record(n).map_err(domain)?;
        let bo = r.bo_number.map_or("-".into(), |b| b.to_string());
        if index.is_none() {
            write!(out, "[{}] ", e.index).unwrap();
        }
        writeln!(out, "dim={} mu={} bo={bo}", r.dim, r.milnor).unwrap();
    }
    Ok(out)
}

fn enumerate(family: Family, n: i64, max_blowups: usize) -> Out {
    let base = ToiDescriptor::new(family, n).map_err(domain)?;
    let opts = EnumerationOptions {
        max_blowups,
        ..EnumerationOptions::default()
    };
    let recs = enumerate_presolutions(&base, opts).map_err(domain)?;
    let cat = catalog()?;
    let mut out = format!("count={}\n", recs.len());
    for r in &recs {
        let idx = cat
            .index_of(family, n, &r.graph)
            .map_or("[?]".into(), |i| format!("[{i}]"));
        writeln!(
            out,
            "{idx} dim={} mu={} sing={}",
            r.dim,
            r.milnor,
            singularities(r)
        )
        .unwrap();
    }
    Ok(out)
}

fn mres(family: Family, n: i64, index: usize) -> Out {
    let m = to_mresolution(&record(family, n, index)?).map_err(domain)?;
    let mut out = String::new();
    write_graph(&mut out, &m.graph);
    Ok(out)
}

fn compactify(family: Family, n: i64, index: usize) -> Out {
    let c = compactify_record(&record(family, n, index)?).map_err(domain)?;
    let mut out = String::new();
    write_graph(&mut out, &c.graph);
    writeln!(out, "boundary {}", c.boundary.join(" ")).unwrap();
    for w in &c.wahl {
        writeln!(out, "wahl {}", w.join(" ")).unwrap();
    }
    Ok(out)
}

fn mmp(family: Family, n: i64, index: usize, snapshots: Option<&Path>) -> Out {
    let c = compactify_record(&record(family, n, index)?).map_err(domain)?;
    let mut dots = vec![];
    let (st, data) = run_mmp_with(&c, &MmpOptions::default(), &mut |s| {
        if snapshots.is_some() {
            dots.push(s.central.to_dot());
        }
    })
    .map_err(domain)?;
    if let Some(dir) = snapshots {
        std::fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
        for (k, d) in dots.iter().enumerate() {
            let p = dir.join(format!("step{k}.dot"));
            std::fs::write(&p, d).map_err(|e| input(format!("{}: {e}", p.display())))?;
        }
    }
    let mut out = st.trace();
    write!(out, "{data}").unwrap();
    if !out.ends_with('\n') {
        out.push('\n');
    }
    Ok(out)
}

fn classify(family: Family, n: i64, index: usize) -> Out {
    let rec = record(family, n, index)?;
    let c = compactify_record(&rec).map_err(domain)?;
    let (st, data) = run_mmp_with(&c, &MmpOptions::default(), &mut |_| {}).map_err(domain)?;
    let z = st.general_fiber().map_err(domain)?;
    let model = classify_minimal_model(&z);
    let mut out = match &model {
        Ok(m) => format!("{m}\n"),
        Err(e) => format!("unclassified: {e}\n"),
    };
    if family.branch_type() == BranchType::ThreeOne {
        writeln!(
            out,
            "{}",
            case_discriminant(&data, &rec.base).map_err(domain)?
        )
        .unwrap();
    }
    match model {
        Ok(_) => Ok(out),
        Err(_) => Err(Failure::Rejected(out)),
    }
}

fn pairs(family: Family, n: i64) -> Out {
    ToiDescriptor::new(family, n).map_err(domain)?;
    let recs = catalog()?.records_at(family, n).map_err(domain)?;
    let p: Vec<String> = symmetric_pairs(&recs)
        .into_iter()
        .map(|(i, j)| {
            format!(
                "([{}],[{}])",
                recs[i].index_in_family, recs[j].index_in_family
            )
        })
        .collect();
    Ok(format!("{}\n", p.join(" ")))
}

fn catalog_check(path: Option<&Path>) -> Out {
    let cat = match path {
        Some(p) => Catalog::load(p).map_err(input)?,
        None => catalog()?,
    };
    let report = verify_catalog(&cat);
    let mut out = String::new();
    let fails = report.failures();
    for l in &fails {
        writeln!(out, "FAIL {}: {}", l.subject, l.detail).unwrap();
    }
    writeln!(
        out,
        "checks={} failures={}",
        report.lines.len(),
        fails.len()
    )
    .unwrap();
    if fails.is_empty() {
        Ok(out)
    } else {
        Err(Failure::Rejected(out))
    }
}

fn export_dot(file: &Path) -> Out {
    let mut out = String::new();
    for e in read_entries(file)? {
        let n = fixed_n(&e)?;
        out.push_str(&e.graph(n).to_dot());
    }
    Ok(out)
}

fn list_families() -> String {
    let mut out = String::new();
    for f in Family::all() {
        let arms: Vec<String> = f
            .arms()
            .iter()
            .map(|a| {
                format!(
                    "[{}]",
                    a.iter()
                        .map(|b| b.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        writeln!(
            out,
            "{f} {:?} arms={} offset={}",
            f.branch_type(),
            arms.join(" "),
            f.table_offset()
        )
        .unwrap();
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match (&cli.cmd, cli.list_families) {
        (_, true) => Ok(list_families()),
        (None, false) => Err(Failure::Input("no subcommand given; see --help".into())),
        (Some(cmd), false) => match cmd {
            Cmd::Validate { file } => validate(file),
            Cmd::Invariants { family, n, index } => invariants(*family, *n, *index),
            Cmd::Enumerate {
                family,
                n,
                max_blowups,
            } => enumerate(*family, *n, *max_blowups),
            Cmd::Mres { family, n, index } => mres(*family, *n, *index),
            Cmd::Compactify { family, n, index } => compactify(*family, *n, *index),
            Cmd::Mmp {
                family,
                n,
                index,
                snapshots,
            } => mmp(*family, *n, *index, snapshots.as_deref()),
            Cmd::Classify { family, n, index } => classify(*family, *n, *index),
            Cmd::Pairs { family, n } => pairs(*family, *n),
            Cmd::Catalog {
                cmd: CatalogCmd::Check { path },
            } => catalog_check(path.as_deref()),
            Cmd::ExportDot { file } => export_dot(file),
        },
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Rejected(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(msg)) => {
            eprint!("{msg}");
            if !msg.ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
