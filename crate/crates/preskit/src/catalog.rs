//! Transcribed P-resolution catalog and count/classification tables, with a
//! line-oriented text format, loaders, and a consistency checker.
//!
//! Entry format:
//!
//! ```text
//! entry <family> <n | n>K> <index> dim=<d | n+K> mu=<m> bo=<b>
//! v <id> <selfint | -n> <k|c>
//! e <id> <id> [mult]
//! end
//! ```
//!
//! Table lines: `counts <family> offset=<k> <8 cells>`, `models <ref> | <ref>`,
//! `cases <ref> | <ref>` with `<ref> = <family> <n> <index> bo=<b>`, and
//! `pair bo=<b> bo=<b>`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::curvegraph::{DecoratedGraph, Marker};
use crate::presolve::{self, validate_presolution, PResolutionRecord};
use crate::singularity::{Family, ToiDescriptor};

pub const BUILTIN_CATALOG: &str = include_str!("../data/catalog.txt");
pub const BUILTIN_TABLES: &str = include_str!("../data/tables.txt");
pub const CATALOG_ENV: &str = "PRESKIT_CATALOG";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate entry {0}")]
    Duplicate(String),
    #[error("indices of {0} are not contiguous from 1")]
    Gap(String),
    #[error("table reference {0} has no matching catalog entry")]
    Dangling(String),
    #[error("no catalog entry {0}")]
    NotFound(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NSpec {
    Fixed(i64),
    /// Template valid for every `n > k`.
    Above(i64),
}

impl NSpec {
    pub fn matches(self, n: i64) -> bool {
        match self {
            NSpec::Fixed(m) => m == n,
            NSpec::Above(k) => n > k,
        }
    }

    /// Values of `n` at which the entry is checked.
    pub fn samples(self) -> Vec<i64> {
        match self {
            NSpec::Fixed(m) => vec![m],
            NSpec::Above(k) => vec![k + 1, k + 2, k + 3],
        }
    }
}

impl std::fmt::Display for NSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NSpec::Fixed(m) => write!(f, "{m}"),
            NSpec::Above(k) => write!(f, "n>{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSpec {
    Fixed(i64),
    MinusN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimSpec {
    Fixed(u64),
    NPlus(i64),
}

impl DimSpec {
    pub fn at(self, n: i64) -> u64 {
        match self {
            DimSpec::Fixed(d) => d,
            DimSpec::NPlus(k) => (n + k) as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub family: Family,
    pub n: NSpec,
    pub index: usize,
    pub vertices: Vec<(String, WeightSpec, Marker)>,
    pub edges: Vec<(String, String, u32)>,
    pub dim: Option<DimSpec>,
    pub milnor: Option<u64>,
    pub bo: Option<u32>,
}

impl CatalogEntry {
    pub fn key(&self) -> String {
        format!("{} {} [{}]", self.family, self.n, self.index)
    }

    pub fn graph(&self, n: i64) -> DecoratedGraph {
        let mut g = DecoratedGraph::new();
        for (id, w, m) in &self.vertices {
            let w = match w {
                WeightSpec::Fixed(w) => *w,
                WeightSpec::MinusN => -n,
            };
            g.add_curve(id, w, *m).expect("ids checked at parse time");
        }
        for (a, b, m) in &self.edges {
            g.add_edge(a, b, *m).expect("ids checked at parse time");
        }
        g
    }

    pub fn printed_dim(&self, n: i64) -> Option<u64> {
        self.dim.map(|d| d.at(n))
    }

    /// Validated record at `n`, carrying the catalog's index and BO number.
    pub fn record(&self, n: i64) -> Result<PResolutionRecord, presolve::PresolveError> {
        let base = ToiDescriptor::new(self.family, n)?;
        let mut r = validate_presolution(&self.graph(n), &base)?;
        r.bo_number = self.bo;
        r.index_in_family = self.index;
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRow {
    pub family: Family,
    pub offset: i64,
    /// Columns: `n<4`, `n=4..9`, `n>9` in the shifted parameter `n + offset`.
    pub cells: [Option<u32>; 8],
}

impl CountRow {
    pub fn column(shifted: i64) -> usize {
        match shifted {
            i64::MIN..=3 => 0,
            4..=9 => (shifted - 3) as usize,
            _ => 7,
        }
    }

    /// Printed count for central weight `n`.
    pub fn count(&self, n: i64) -> Option<u32> {
        self.cells[Self::column(n + self.offset)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EntryRef {
    pub family: Family,
    pub n: i64,
    pub index: usize,
    pub bo: u32,
}

impl std::fmt::Display for EntryRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {} [{}] (BO {})",
            self.family, self.n, self.index, self.bo
        )
    }
}

/// A row of the CP2/quadric table (`first` is CP2) or of the
/// Case I/Case II table (`first` is Case I).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRow {
    pub first: EntryRef,
    pub second: EntryRef,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub counts: Vec<CountRow>,
    pub models: Vec<PairRow>,
    pub cases: Vec<PairRow>,
    /// BO numbers of diffeomorphic fillings, as printed.
    pub pairs: Vec<(u32, u32)>,
}

fn perr(line: usize, msg: impl Into<String>) -> CatalogError {
    CatalogError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_family(tok: &str, line: usize) -> Result<Family, CatalogError> {
    tok.parse()
        .map_err(|_| perr(line, format!("unknown family {tok:?}")))
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, CatalogError> {
    tok.parse()
        .map_err(|_| perr(line, format!("bad number {tok:?}")))
}

fn field<'a>(tok: &'a str, name: &str, line: usize) -> Result<&'a str, CatalogError> {
    tok.strip_prefix(name)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| perr(line, format!("expected {name}=...")))
}

fn parse_ref(toks: &[&str], line: usize) -> Result<EntryRef, CatalogError> {
    let [f, n, i, b] = toks else {
        return Err(perr(line, "expected <family> <n> <index> bo=<b>"));
    };
    Ok(EntryRef {
        family: parse_family(f, line)?,
        n: parse_num(n, line)?,
        index: parse_num(i, line)?,
        bo: parse_num(field(b, "bo", line)?, line)?,
    })
}

fn parse_pair_row(toks: &[&str], line: usize) -> Result<PairRow, CatalogError> {
    let bar = toks
        .iter()
        .position(|t| *t == "|")
        .ok_or_else(|| perr(line, "missing |"))?;
    Ok(PairRow {
        first: parse_ref(&toks[..bar], line)?,
        second: parse_ref(&toks[bar + 1..], line)?,
    })
}

impl Catalog {
    /// Parses without cross-checking table references.
    pub fn parse_partial(text: &str) -> Result<Catalog, CatalogError> {
        let mut cat = Catalog::default();
        let mut cur: Option<CatalogEntry> = None;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let toks: Vec<&str> = raw.split_whitespace().collect();
            let Some(&head) = toks.first() else {
                return Err(perr(line, "empty line"));
            };
            if let Some(e) = cur.as_mut() {
                match head {
                    "v" => {
                        let [_, id, w, m] = toks[..] else {
                            return Err(perr(line, "expected v <id> <selfint> <k|c>"));
                        };
                        let w = if w == "-n" {
                            WeightSpec::MinusN
                        } else {
                            WeightSpec::Fixed(parse_num(w, line)?)
                        };
                        let m = Marker::from_code(m)
                            .ok_or_else(|| perr(line, format!("bad marker {m:?}")))?;
                        if e.vertices.iter().any(|(v, _, _)| v == id) {
                            return Err(perr(line, format!("duplicate vertex {id}")));
                        }
                        e.vertices.push((id.to_string(), w, m));
                    }
                    "e" => {
                        let (a, b, m) = match toks[..] {
                            [_, a, b] => (a, b, 1),
                            [_, a, b, m] => (a, b, parse_num(m, line)?),
                            _ => return Err(perr(line, "expected e <id> <id> [mult]")),
                        };
                        for v in [a, b] {
                            if !e.vertices.iter().any(|(x, _, _)| x == v) {
                                return Err(perr(line, format!("edge uses unknown vertex {v}")));
                            }
                        }
                        if m == 0 {
                            return Err(perr(line, "zero multiplicity"));
                        }
                        e.edges.push((a.to_string(), b.to_string(), m));
                    }
                    "end" => cat.entries.push(cur.take().unwrap()),
                    _ => return Err(perr(line, format!("unexpected {head:?} inside entry"))),
                }
                continue;
            }
            match head {
                "entry" => {
                    if toks.len() < 4 {
                        return Err(perr(line, "expected entry <family> <n> <index> ..."));
                    }
                    let family = parse_family(toks[1], line)?;
                    let n = match toks[2].strip_prefix("n>") {
                        Some(k) => NSpec::Above(parse_num(k, line)?),
                        None => NSpec::Fixed(parse_num(toks[2], line)?),
                    };
                    let mut e = CatalogEntry {
                        family,
                        n,
                        index: parse_num(toks[3], line)?,
                        vertices: vec![],
                        edges: vec![],
                        dim: None,
                        milnor: None,
                        bo: None,
                    };
                    for t in &toks[4..] {
                        let (name, val) = t
                            .split_once('=')
                            .ok_or_else(|| perr(line, format!("bad field {t:?}")))?;
                        match name {
                            "dim" => {
                                e.dim = Some(match val.strip_prefix("n+") {
                                    Some(k) => DimSpec::NPlus(parse_num(k, line)?),
                                    None => DimSpec::Fixed(parse_num(val, line)?),
                                })
                            }
                            "mu" => e.milnor = Some(parse_num(val, line)?),
                            "bo" => e.bo = Some(parse_num(val, line)?),
                            _ => return Err(perr(line, format!("unknown field {name:?}"))),
                        }
                    }
                    cur = Some(e);
                }
                "counts" => {
                    if toks.len() != 11 {
                        return Err(perr(
                            line,
                            "expected counts <family> offset=<k> and 8 cells",
                        ));
                    }
                    let mut cells = [None; 8];
                    for (c, t) in cells.iter_mut().zip(&toks[3..]) {
                        *c = if *t == "-" {
                            None
                        } else {
                            Some(parse_num(t, line)?)
                        };
                    }
                    cat.counts.push(CountRow {
                        family: parse_family(toks[1], line)?,
                        offset: parse_num(field(toks[2], "offset", line)?, line)?,
                        cells,
                    });
                }
                "models" => cat.models.push(parse_pair_row(&toks[1..], line)?),
                "cases" => cat.cases.push(parse_pair_row(&toks[1..], line)?),
                "pair" => {
                    let [_, a, b] = toks[..] else {
                        return Err(perr(line, "expected pair bo=<a> bo=<b>"));
                    };
                    cat.pairs.push((
                        parse_num(field(a, "bo", line)?, line)?,
                        parse_num(field(b, "bo", line)?, line)?,
                    ));
                }
                _ => return Err(perr(line, format!("unexpected {head:?}"))),
            }
        }
        if cur.is_some() {
            return Err(perr(text.lines().count(), "unterminated entry"));
        }
        Ok(cat)
    }

    /// Parses and checks keys, index contiguity and table references.
    pub fn parse(text: &str) -> Result<Catalog, CatalogError> {
        let cat = Catalog::parse_partial(text)?;
        cat.check_structure()?;
        Ok(cat)
    }

    pub fn check_structure(&self) -> Result<(), CatalogError> {
        let mut groups: BTreeMap<(Family, NSpec), Vec<usize>> = BTreeMap::new();
        for e in &self.entries {
            let g = groups.entry((e.family, e.n)).or_default();
            if g.contains(&e.index) {
                return Err(CatalogError::Duplicate(e.key()));
            }
            g.push(e.index);
        }
        for ((f, n), mut ix) in groups {
            ix.sort();
            if ix.iter().enumerate().any(|(i, &x)| x != i + 1) {
                return Err(CatalogError::Gap(format!("{f} {n}")));
            }
        }
        if self.entries.is_empty() {
            return Ok(());
        }
        for r in self
            .models
            .iter()
            .chain(&self.cases)
            .flat_map(|r| [&r.first, &r.second])
        {
            if self.lookup(r.family, r.n, r.index).is_err() || self.by_bo(r.bo).is_empty() {
                return Err(CatalogError::Dangling(r.to_string()));
            }
        }
        for &(a, b) in &self.pairs {
            for bo in [a, b] {
                if !self.entries.iter().any(|e| e.bo == Some(bo)) {
                    return Err(CatalogError::Dangling(format!("BO {bo}")));
                }
            }
        }
        Ok(())
    }

    /// Shipped catalog and tables.
    pub fn builtin() -> Catalog {
        let mut c = Catalog::parse_partial(BUILTIN_CATALOG).expect("shipped catalog parses");
        let t = Catalog::parse_partial(BUILTIN_TABLES).expect("shipped tables parse");
        c.merge_tables(t);
        c.check_structure().expect("shipped catalog is consistent");
        c
    }

    fn merge_tables(&mut self, t: Catalog) {
        self.counts = t.counts;
        self.models = t.models;
        self.cases = t.cases;
        self.pairs = t.pairs;
    }

    /// Loads a file; when it has no table lines the shipped tables are used.
    pub fn load(path: impl AsRef<Path>) -> Result<Catalog, CatalogError> {
        let p = path.as_ref();
        let text = std::fs::read_to_string(p).map_err(|source| CatalogError::Io {
            path: p.display().to_string(),
            source,
        })?;
        let mut c = Catalog::parse_partial(&text)?;
        if c.counts.is_empty() && c.models.is_empty() && c.cases.is_empty() && c.pairs.is_empty() {
            c.merge_tables(Catalog::parse_partial(BUILTIN_TABLES).expect("shipped tables parse"));
        }
        c.check_structure()?;
        Ok(c)
    }

    /// The file named by `PRESKIT_CATALOG`, else the shipped catalog.
    pub fn from_env() -> Result<Catalog, CatalogError> {
        match std::env::var_os(CATALOG_ENV) {
            Some(p) => Catalog::load(p),
            None => Ok(Catalog::builtin()),
        }
    }

    pub fn lookup(
        &self,
        family: Family,
        n: i64,
        index: usize,
    ) -> Result<&CatalogEntry, CatalogError> {
        self.entries_at(family, n)
            .into_iter()
            .find(|e| e.index == index)
            .ok_or_else(|| CatalogError::NotFound(format!("{family} {n} [{index}]")))
    }

    /// Entries applying at central weight `n`: fixed ones if any, else templates.
    pub fn entries_at(&self, family: Family, n: i64) -> Vec<&CatalogEntry> {
        let fixed: Vec<_> = self
            .entries
            .iter()
            .filter(|e| e.family == family && e.n == NSpec::Fixed(n))
            .collect();
        if !fixed.is_empty() {
            return fixed;
        }
        self.entries
            .iter()
            .filter(|e| e.family == family && e.n.matches(n))
            .collect()
    }

    pub fn by_bo(&self, bo: u32) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.bo == Some(bo)).collect()
    }

    pub fn count_row(&self, family: Family) -> Option<&CountRow> {
        self.counts.iter().find(|r| r.family == family)
    }

    pub fn serialize_entries(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            write!(s, "entry {} {} {}", e.family, e.n, e.index).unwrap();
            match e.dim {
                Some(DimSpec::Fixed(d)) => write!(s, " dim={d}").unwrap(),
                Some(DimSpec::NPlus(k)) => write!(s, " dim=n+{k}").unwrap(),
                None => {}
            }
            if let Some(m) = e.milnor {
                write!(s, " mu={m}").unwrap();
            }
            if let Some(b) = e.bo {
                write!(s, " bo={b}").unwrap();
            }
            s.push('\n');
            for (id, w, m) in &e.vertices {
                match w {
                    WeightSpec::Fixed(w) => writeln!(s, "v {id} {w} {}", m.code()).unwrap(),
                    WeightSpec::MinusN => writeln!(s, "v {id} -n {}", m.code()).unwrap(),
                }
            }
            for (a, b, m) in &e.edges {
                if *m == 1 {
                    writeln!(s, "e {a} {b}").unwrap();
                } else {
                    writeln!(s, "e {a} {b} {m}").unwrap();
                }
            }
            s.push_str("end\n");
        }
        s
    }

    pub fn serialize_tables(&self) -> String {
        let mut s = String::new();
        for r in &self.counts {
            write!(s, "counts {} offset={}", r.family, r.offset).unwrap();
            for c in r.cells {
                match c {
                    Some(c) => write!(s, " {c}").unwrap(),
                    None => s.push_str(" -"),
                }
            }
            s.push('\n');
        }
        let rf = |r: &EntryRef| format!("{} {} {} bo={}", r.family, r.n, r.index, r.bo);
        for (tag, rows) in [("models", &self.models), ("cases", &self.cases)] {
            for r in rows {
                writeln!(s, "{tag} {} | {}", rf(&r.first), rf(&r.second)).unwrap();
            }
        }
        for (a, b) in &self.pairs {
            writeln!(s, "pair bo={a} bo={b}").unwrap();
        }
        s
    }

    pub fn serialize(&self) -> String {
        self.serialize_entries() + &self.serialize_tables()
    }

    /// Index of the entry at `(family, n)` whose marked graph equals `g` up to
    /// renaming of the blow-up curves.
    pub fn index_of(&self, family: Family, n: i64, g: &DecoratedGraph) -> Option<usize> {
        let key = presolve::canonical_form(g).0;
        self.entries_at(family, n)
            .into_iter()
            .find(|e| presolve::canonical_form(&e.graph(n)).0 == key)
            .map(|e| e.index)
    }

    /// Catalog records at `(family, n)`, validated.
    pub fn records_at(
        &self,
        family: Family,
        n: i64,
    ) -> Result<Vec<PResolutionRecord>, presolve::PresolveError> {
        self.entries_at(family, n)
            .into_iter()
            .map(|e| e.record(n))
            .collect()
    }

    /// Fixed-`n` groups in catalog order.
    pub fn fixed_groups(&self) -> Vec<(Family, i64)> {
        let mut seen = BTreeSet::new();
        let mut out = vec![];
        for e in &self.entries {
            if let NSpec::Fixed(n) = e.n {
                if seen.insert((e.family, n)) {
                    out.push((e.family, n));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub subject: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn failures(&self) -> Vec<&CheckLine> {
        self.lines.iter().filter(|l| !l.ok).collect()
    }

    pub fn all_ok(&self) -> bool {
        self.lines.iter().all(|l| l.ok)
    }

    fn push(&mut self, subject: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine {
            subject: subject.into(),
            ok,
            detail: detail.into(),
        });
    }
}

/// Recomputed dim/mu per entry (templates at three sample `n`).
pub fn verify_entries(cat: &Catalog) -> Vec<CheckLine> {
    let jobs: Vec<(&CatalogEntry, i64)> = cat
        .entries
        .iter()
        .flat_map(|e| e.n.samples().into_iter().map(move |n| (e, n)))
        .collect();
    jobs.par_iter()
        .map(|&(e, n)| {
            let subject = format!("entry {} {} [{}]", e.family, n, e.index);
            match e.record(n) {
                Err(err) => CheckLine {
                    subject,
                    ok: false,
                    detail: format!("invalid: {err}"),
                },
                Ok(r) => {
                    let mut bad = vec![];
                    if let Some(d) = e.printed_dim(n) {
                        if d != r.dim {
                            bad.push(format!("dim printed {d} computed {}", r.dim));
                        }
                    }
                    if let Some(m) = e.milnor {
                        if m != r.milnor {
                            bad.push(format!("mu printed {m} computed {}", r.milnor));
                        }
                    }
                    let ok = bad.is_empty();
                    let detail = if ok {
                        format!("dim={} mu={}", r.dim, r.milnor)
                    } else {
                        bad.join("; ")
                    };
                    CheckLine {
                        subject,
                        ok,
                        detail,
                    }
                }
            }
        })
        .collect()
}

/// Catalog counts per central weight against the count table.
pub fn verify_counts(cat: &Catalog) -> Vec<CheckLine> {
    let mut out = vec![];
    let mut fixed_total = 0usize;
    let mut table_total = 0u64;
    for row in &cat.counts {
        let max_fixed = cat
            .entries
            .iter()
            .filter(|e| e.family == row.family)
            .filter_map(|e| {
                if let NSpec::Fixed(n) = e.n {
                    Some(n)
                } else {
                    None
                }
            })
            .max()
            .unwrap_or(1);
        for n in 2..=(10 - row.offset).max(max_fixed + 1) {
            let have = cat.entries_at(row.family, n).len();
            let want = row.count(n);
            let ok = want.map_or(have == 0, |w| w as usize == have);
            if n <= max_fixed {
                fixed_total += have;
                table_total += want.unwrap_or(0) as u64;
            }
            out.push(CheckLine {
                subject: format!(
                    "counts {} n={} (column n={})",
                    row.family,
                    n,
                    n + row.offset
                ),
                ok,
                detail: format!(
                    "catalog {have} printed {}",
                    want.map_or("-".into(), |w| w.to_string())
                ),
            });
        }
    }
    let fixed = cat
        .entries
        .iter()
        .filter(|e| matches!(e.n, NSpec::Fixed(_)))
        .count();
    out.push(CheckLine {
        subject: "counts total over fixed-n entries".into(),
        ok: fixed_total == fixed && table_total as usize == fixed,
        detail: format!("table {table_total} catalog {fixed}"),
    });
    out
}

/// Every BO number referenced by a table names exactly one entry, and that
/// entry carries the label printed next to it.
pub fn verify_bo_references(cat: &Catalog) -> Vec<CheckLine> {
    let mut out = vec![];
    for (tag, rows) in [("models", &cat.models), ("cases", &cat.cases)] {
        for r in rows {
            for x in [&r.first, &r.second] {
                let hits = cat.by_bo(x.bo);
                out.push(CheckLine {
                    subject: format!("{tag} BO {} unique", x.bo),
                    ok: hits.len() == 1,
                    detail: format!("{} entries", hits.len()),
                });
                let labelled = cat.lookup(x.family, x.n, x.index).ok().and_then(|e| e.bo);
                out.push(CheckLine {
                    subject: format!("{tag} {x} label"),
                    ok: labelled == Some(x.bo),
                    detail: format!(
                        "entry at label has BO {}",
                        labelled.map_or("-".into(), |b| b.to_string())
                    ),
                });
            }
        }
    }
    out
}

/// BO pairs of isomorphic catalog graphs within each singularity.
pub fn catalog_symmetric_pairs(cat: &Catalog) -> BTreeSet<(u32, u32)> {
    let groups = cat.fixed_groups();
    groups
        .par_iter()
        .flat_map_iter(|&(f, n)| {
            let recs = cat.records_at(f, n).unwrap_or_default();
            presolve::symmetric_pairs(&recs)
                .into_iter()
                .filter_map(|(i, j)| {
                    let (a, b) = (recs[i].bo_number?, recs[j].bo_number?);
                    Some((a.min(b), a.max(b)))
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

pub fn verify_pairs(cat: &Catalog) -> CheckLine {
    let found = catalog_symmetric_pairs(cat);
    let printed: BTreeSet<(u32, u32)> = cat
        .pairs
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    CheckLine {
        subject: "symmetric pairs".into(),
        ok: found == printed,
        detail: format!("found {found:?} printed {printed:?}"),
    }
}

pub fn verify_catalog(cat: &Catalog) -> VerifyReport {
    let mut r = VerifyReport::default();
    r.lines.extend(verify_entries(cat));
    r.lines.extend(verify_counts(cat));
    r.lines.extend(verify_bo_references(cat));
    let p = verify_pairs(cat);
    r.push(p.subject, p.ok, p.detail);
    r
}
