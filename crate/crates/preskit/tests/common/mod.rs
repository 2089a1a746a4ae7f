#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use preskit::catalog::Catalog;
use preskit::compactify::{compactify_record, CompactifiedGraph};
use preskit::mmp::{run_mmp_with, MMPState, MinusOneData, MmpOptions};
use preskit::presolve::PResolutionRecord;
use preskit::Family;

pub struct Pipeline {
    pub rec: PResolutionRecord,
    pub compact: CompactifiedGraph,
    pub state: MMPState,
    pub data: MinusOneData,
    /// Central weights initially and after every round.
    pub snaps: Vec<BTreeMap<String, i64>>,
}

pub fn pipeline(cat: &Catalog, f: Family, n: i64, i: usize) -> Pipeline {
    let rec = cat.lookup(f, n, i).unwrap().record(n).unwrap();
    pipeline_rec(rec)
}

pub fn pipeline_rec(rec: PResolutionRecord) -> Pipeline {
    let compact = compactify_record(&rec).unwrap();
    let mut snaps = vec![];
    let (state, data) = run_mmp_with(&compact, &MmpOptions::default(), &mut |s| {
        snaps.push(s.weights())
    })
    .unwrap();
    Pipeline {
        rec,
        compact,
        state,
        data,
        snaps,
    }
}

/// Every catalog case: fixed entries, and templates at their sample `n`.
pub fn catalog_cases(cat: &Catalog) -> Vec<(String, PResolutionRecord)> {
    let mut out = vec![];
    for e in &cat.entries {
        for n in e.n.samples() {
            out.push((
                format!("{} n={n} [{}]", e.family, e.index),
                e.record(n).unwrap(),
            ));
        }
    }
    out
}

pub struct Golden {
    pub family: Family,
    pub n: i64,
    pub index: usize,
    /// Printed weight, or `None` for a curve marked as contracted away.
    pub steps: Vec<BTreeMap<String, Option<i64>>>,
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn load_golden(name: &str) -> Golden {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    let mut lines = text.lines();
    let head: Vec<&str> = lines.next().unwrap().split_whitespace().collect();
    let mut g = Golden {
        family: head[1].parse().unwrap(),
        n: head[2].parse().unwrap(),
        index: head[3].parse().unwrap(),
        steps: vec![],
    };
    for l in lines {
        let t: Vec<&str> = l.split_whitespace().collect();
        match t[..] {
            ["step", _] => g.steps.push(BTreeMap::new()),
            ["end"] => break,
            [v, w] => {
                let w = if w == "x" {
                    None
                } else {
                    Some(w.parse().unwrap())
                };
                g.steps.last_mut().unwrap().insert(v.to_string(), w);
            }
            _ => panic!("bad fixture line {l:?}"),
        }
    }
    g
}

/// `(step, curve, printed, computed)` wherever the run disagrees with the figures.
pub fn golden_diffs(
    g: &Golden,
    snaps: &[BTreeMap<String, i64>],
) -> Vec<(usize, String, Option<i64>, Option<i64>)> {
    let mut out = vec![];
    for (k, exp) in g.steps.iter().enumerate() {
        let got = snaps.get(k);
        for (v, w) in exp {
            let have = got.and_then(|s| s.get(v)).copied();
            if have != *w {
                out.push((k, v.clone(), *w, have));
            }
        }
    }
    out
}

/// Class T chains with entries in `2..=max_entry` and length at most
/// `max_len`, keyed to `d`, generated from `[4]`, `[3,3]`, `[3,2,3]`, ...
/// by `[b1..br] -> [2,b1..br+1]` and `[b1..br] -> [b1+1..br,2]`.
pub fn class_t_closure(max_len: usize, max_entry: i64) -> BTreeMap<Vec<i64>, u64> {
    let mut found = BTreeMap::new();
    let mut frontier = vec![(vec![4], 1u64)];
    for d in 2..=max_len as u64 {
        let mut c = vec![3];
        c.extend(std::iter::repeat_n(2, d as usize - 2));
        c.push(3);
        frontier.push((c, d));
    }
    while let Some((c, d)) = frontier.pop() {
        if c.len() > max_len || found.contains_key(&c) {
            continue;
        }
        found.insert(c.clone(), d);
        let mut l = vec![2];
        l.extend(&c);
        *l.last_mut().unwrap() += 1;
        let mut r = c.clone();
        r[0] += 1;
        r.push(2);
        frontier.push((l, d));
        frontier.push((r, d));
    }
    found.retain(|c, _| c.iter().all(|&b| b <= max_entry));
    found
}

pub fn pair_set(v: &[(u32, u32)]) -> BTreeSet<(u32, u32)> {
    v.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect()
}
