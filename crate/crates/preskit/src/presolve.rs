//! P-resolutions: validation, dimension and Milnor number of the
//! corresponding smoothing component, bounded enumeration, symmetric pairs.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::curvegraph::{DecoratedGraph, GraphError, Marker, Shape};
use crate::linalg;
use crate::singularity::{
    classify_chain, discrepancies, is_rdp_graph, toi_minimal_resolution, AdeLabel,
    SingularityError, SingularityKind, ToiDescriptor,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PResolutionRecord {
    pub base: ToiDescriptor,
    pub graph: DecoratedGraph,
    /// One entry per Contracted component, in component order.
    pub singularities: Vec<SingularityKind>,
    pub dim: u64,
    pub milnor: u64,
    pub bo_number: Option<u32>,
    pub index_in_family: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("component {component:?} is {kind}, neither RDP nor class T")]
    BadSingularity {
        component: Vec<String>,
        kind: SingularityKind,
    },
    #[error("component {component:?} is not a chain or an ADE graph")]
    BadSupport { component: Vec<String> },
    #[error("K.{curve} = {value} is not positive")]
    KNotPositive { curve: String, value: BigRational },
    #[error("(-1)-curve {curve} must meet exactly two class T points transversally once")]
    MinusOneCurve { curve: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresolveError {
    #[error("rejected: {0}")]
    Rejected(Rejection),
    #[error("graph does not blow down to the minimal resolution of {0}")]
    Structural(String),
    #[error("candidate budget exceeded: {candidates} > {cap}")]
    Budget { candidates: u64, cap: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
}

impl PresolveError {
    pub fn is_rejection(&self) -> bool {
        matches!(self, PresolveError::Rejected(_))
    }
}

/// Analysis of the Contracted part of a graph.
struct Contracted {
    kinds: Vec<(Vec<String>, SingularityKind)>,
    coef: BTreeMap<String, BigRational>,
    /// vertex -> index into `kinds`
    owner: BTreeMap<String, usize>,
}

fn analyze_contracted(g: &DecoratedGraph) -> Result<Contracted, Rejection> {
    let mut out = Contracted {
        kinds: vec![],
        coef: BTreeMap::new(),
        owner: BTreeMap::new(),
    };
    for comp in g.contracted_components() {
        let kind = match comp.shape {
            Shape::Chain => {
                let chain: Vec<i64> = comp.ids.iter().map(|v| -g.w(v)).collect();
                if chain.iter().any(|&b| b < 2) {
                    return Err(Rejection::BadSupport {
                        component: comp.ids,
                    });
                }
                classify_chain(&chain).expect("entries checked")
            }
            _ => match is_rdp_graph(&g.induced(&comp.ids)) {
                Some(l) => SingularityKind::Rdp(l),
                None => {
                    return Err(Rejection::BadSupport {
                        component: comp.ids,
                    })
                }
            },
        };
        let coefs = match &kind {
            SingularityKind::Rdp(_) => vec![BigRational::zero(); comp.ids.len()],
            SingularityKind::ClassT(_) => {
                let chain: Vec<i64> = comp.ids.iter().map(|v| -g.w(v)).collect();
                discrepancies(&chain).expect("class T chains are negative definite")
            }
            _ => {
                return Err(Rejection::BadSingularity {
                    component: comp.ids,
                    kind,
                })
            }
        };
        let k = out.kinds.len();
        for (v, c) in comp.ids.iter().zip(coefs) {
            out.coef.insert(v.clone(), c);
            out.owner.insert(v.clone(), k);
        }
        out.kinds.push((comp.ids, kind));
    }
    Ok(out)
}

/// `K.E` on the partial resolution for a Kept curve `e`.
fn k_dot(g: &DecoratedGraph, c: &Contracted, e: &str) -> BigRational {
    let mut v = linalg::q(-g.w(e) - 2);
    for (y, m) in g.neighbors(e) {
        if let Some(cy) = c.coef.get(y) {
            v -= cy * linalg::q(m as i64);
        }
    }
    v
}

fn check_kept(g: &DecoratedGraph, c: &Contracted) -> Result<(), Rejection> {
    for (e, curve) in g.curves() {
        if curve.marker == Marker::Contracted {
            continue;
        }
        let ke = k_dot(g, c, e);
        if !ke.is_positive() {
            return Err(Rejection::KNotPositive {
                curve: e.to_string(),
                value: ke,
            });
        }
        if curve.self_int == -1 {
            let mut t_comps = std::collections::BTreeSet::new();
            for (y, m) in g.neighbors(e) {
                if let Some(&k) = c.owner.get(y) {
                    if matches!(c.kinds[k].1, SingularityKind::ClassT(_)) {
                        if m != 1 {
                            return Err(Rejection::MinusOneCurve {
                                curve: e.to_string(),
                            });
                        }
                        t_comps.insert(k);
                    }
                }
            }
            if t_comps.len() != 2 {
                return Err(Rejection::MinusOneCurve {
                    curve: e.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Blows down (-1)-curves, markers erased, until none is left.
pub fn contract_to_minimal(g: &DecoratedGraph) -> DecoratedGraph {
    let mut h = g.clone();
    for v in g.ids() {
        h.set_marker(v, Marker::Kept).unwrap();
    }
    loop {
        let Some(v) = h.ids().find(|v| h.w(v) == -1).map(str::to_string) else {
            break;
        };
        h.blow_down_mut(&v).unwrap();
    }
    h
}

fn singularity_list(c: &Contracted) -> Vec<SingularityKind> {
    c.kinds.iter().map(|(_, k)| k.clone()).collect()
}

pub fn validate_presolution(
    g: &DecoratedGraph,
    base: &ToiDescriptor,
) -> Result<PResolutionRecord, PresolveError> {
    let (minres, _) = toi_minimal_resolution(base.family, base.n)?;
    if !contract_to_minimal(g).is_isomorphic(&minres) {
        return Err(PresolveError::Structural(base.to_string()));
    }
    let c = analyze_contracted(g).map_err(PresolveError::Rejected)?;
    check_kept(g, &c).map_err(PresolveError::Rejected)?;
    let mut rec = PResolutionRecord {
        base: base.clone(),
        graph: g.clone(),
        singularities: singularity_list(&c),
        dim: 0,
        milnor: 0,
        bo_number: None,
        index_in_family: 0,
    };
    rec.dim = dim_component(&rec);
    rec.milnor = milnor_number(&rec);
    Ok(rec)
}

fn kept_curves(g: &DecoratedGraph) -> impl Iterator<Item = i64> + '_ {
    g.curves()
        .filter(|(_, c)| c.marker != Marker::Contracted)
        .map(|(_, c)| -c.self_int)
}

fn rdp_count(kinds: &[SingularityKind]) -> (u64, u64) {
    let mut rdp = 0;
    let mut t_sum = 0;
    for k in kinds {
        match k {
            SingularityKind::Rdp(l) => rdp += l.vertex_count() as u64,
            SingularityKind::ClassT(t) => t_sum += t.d,
            _ => {}
        }
    }
    (rdp, t_sum)
}

/// RDP vertex counts, plus class T indices `d`, plus `b - 1` over Kept curves.
pub fn dim_component(rec: &PResolutionRecord) -> u64 {
    let (rdp, t) = rdp_count(&rec.singularities);
    let kept: i64 = kept_curves(&rec.graph).map(|b| (b - 1).max(0)).sum();
    rdp + t + kept as u64
}

/// Kept curves, plus RDP curves, plus `d - 1` over class T points.
pub fn milnor_number(rec: &PResolutionRecord) -> u64 {
    let kept = kept_curves(&rec.graph).count() as u64;
    let rdp: u64 = rec
        .singularities
        .iter()
        .filter_map(|k| match k {
            SingularityKind::Rdp(l) => Some(l.vertex_count() as u64),
            _ => None,
        })
        .sum();
    let t: u64 = rec
        .singularities
        .iter()
        .filter_map(|k| match k {
            SingularityKind::ClassT(t) => Some(t.d - 1),
            _ => None,
        })
        .sum();
    kept + rdp + t
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    pub max_blowups: usize,
    /// Cap on (graph, marker assignment) candidates.
    pub candidate_cap: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            max_blowups: 3,
            candidate_cap: DEFAULT_CANDIDATE_CAP,
        }
    }
}

/// The largest minimal resolution here (I30k+1) gives about 6e5 candidates at depth 3.
pub const DEFAULT_CANDIDATE_CAP: u64 = 2_000_000;

/// Key identifying a marked graph up to renaming of the blow-up curves `x*`.
type CanonKey = (Vec<(String, i64, Marker)>, Vec<(String, String, u32)>);

fn relabel(g: &DecoratedGraph, map: &BTreeMap<String, String>) -> DecoratedGraph {
    let f = |v: &str| map.get(v).cloned().unwrap_or_else(|| v.to_string());
    let mut h = DecoratedGraph::new();
    for (v, c) in g.curves() {
        h.add_curve(&f(v), c.self_int, c.marker).unwrap();
    }
    for (a, b, m) in g.edges() {
        h.add_edge(&f(a), &f(b), m).unwrap();
    }
    for v in g.ids() {
        if g.loops(v) > 0 {
            h.add_edge(&f(v), &f(v), g.loops(v)).unwrap();
        }
    }
    h
}

fn key_of(g: &DecoratedGraph) -> CanonKey {
    let vs = g
        .curves()
        .map(|(v, c)| (v.to_string(), c.self_int, c.marker))
        .collect();
    let es = g
        .edges()
        .into_iter()
        .map(|(a, b, m)| (a.to_string(), b.to_string(), m))
        .collect();
    (vs, es)
}

/// Canonical renaming of the `x*` curves (minimal key over all permutations).
pub fn canonical_form(g: &DecoratedGraph) -> (CanonKey, DecoratedGraph) {
    let xs: Vec<String> = g
        .ids()
        .filter(|v| v.starts_with('x'))
        .map(str::to_string)
        .collect();
    let mut best: Option<(CanonKey, DecoratedGraph)> = None;
    let mut perm: Vec<usize> = (0..xs.len()).collect();
    loop {
        let map: BTreeMap<String, String> = xs
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), format!("x{}", perm[i] + 1)))
            .collect();
        let h = relabel(g, &map);
        let k = key_of(&h);
        if best.as_ref().is_none_or(|(b, _)| k < *b) {
            best = Some((k, h));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// All graphs within `depth` blow-ups (points of curves, or intersection points).
pub fn blowup_graphs(minres: &DecoratedGraph, depth: usize) -> Vec<DecoratedGraph> {
    let (k0, g0) = canonical_form(minres);
    let mut all: BTreeMap<CanonKey, DecoratedGraph> = BTreeMap::from([(k0, g0)]);
    let mut level: Vec<DecoratedGraph> = all.values().cloned().collect();
    for d in 0..depth {
        let fresh = format!("x{}", 100 + d);
        let mut next: BTreeMap<CanonKey, DecoratedGraph> = BTreeMap::new();
        for g in &level {
            let mut cands = vec![];
            for v in g.ids() {
                cands.push(g.blow_up_point(v, &fresh).unwrap());
            }
            for (a, b, m) in g.edges() {
                if m == 1 {
                    cands.push(g.blow_up_edge(a, b, &fresh).unwrap());
                }
            }
            for h in cands {
                let (k, h) = canonical_form(&h);
                if !all.contains_key(&k) {
                    next.entry(k).or_insert(h);
                }
            }
        }
        level = next.values().cloned().collect();
        all.extend(next);
    }
    all.into_values().collect()
}

/// Dense view of a graph for the marker search.
struct Dense {
    ids: Vec<String>,
    b: Vec<i64>,
    nbr: Vec<u32>,
    m: Vec<Vec<u32>>,
}

impl Dense {
    fn new(g: &DecoratedGraph) -> Self {
        let ids: Vec<String> = g.ids().map(str::to_string).collect();
        let ix: HashMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let n = ids.len();
        let mut m = vec![vec![0; n]; n];
        let mut nbr = vec![0u32; n];
        for (a, bb, k) in g.edges() {
            let (i, j) = (ix[a], ix[bb]);
            m[i][j] = k;
            m[j][i] = k;
            nbr[i] |= 1 << j;
            nbr[j] |= 1 << i;
        }
        let b = ids.iter().map(|v| -g.w(v)).collect();
        Dense { ids, b, nbr, m }
    }

    fn components(&self, mask: u32) -> Vec<u32> {
        let mut left = mask;
        let mut out = vec![];
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let mut grow = comp;
                let mut bits = comp;
                while bits != 0 {
                    let i = bits.trailing_zeros();
                    bits &= bits - 1;
                    grow |= self.nbr[i as usize] & mask;
                }
                if grow == comp {
                    break;
                }
                comp = grow;
            }
            left &= !comp;
            out.push(comp);
        }
        out
    }

    fn graph_with(&self, g: &DecoratedGraph, mask: u32) -> DecoratedGraph {
        let mut h = g.clone();
        for (i, v) in self.ids.iter().enumerate() {
            let mk = if mask >> i & 1 == 1 {
                Marker::Contracted
            } else {
                Marker::Kept
            };
            h.set_marker(v, mk).unwrap();
        }
        h
    }
}

#[derive(Clone)]
enum CompInfo {
    Bad,
    Good {
        t: bool,
        coef: Vec<(usize, BigRational)>,
    },
}

fn comp_info(d: &Dense, g: &DecoratedGraph, comp: u32) -> CompInfo {
    let ids: Vec<String> = (0..d.ids.len())
        .filter(|i| comp >> i & 1 == 1)
        .map(|i| d.ids[i].clone())
        .collect();
    let mut h = g.induced(&ids);
    for v in &ids {
        h.set_marker(v, Marker::Contracted).unwrap();
    }
    let Ok(c) = analyze_contracted(&h) else {
        return CompInfo::Bad;
    };
    let t = matches!(c.kinds[0].1, SingularityKind::ClassT(_));
    let coef = c
        .coef
        .into_iter()
        .map(|(v, q)| (d.ids.iter().position(|x| *x == v).unwrap(), q))
        .collect();
    CompInfo::Good { t, coef }
}

fn accepts(d: &Dense, g: &DecoratedGraph, mask: u32, cache: &mut HashMap<u32, CompInfo>) -> bool {
    let n = d.ids.len();
    // cheap necessary conditions before any rational arithmetic
    for i in 0..n {
        if mask >> i & 1 == 0 {
            let cn = (d.nbr[i] & mask).count_ones();
            if (d.b[i] == 2 && cn == 0) || (d.b[i] == 1 && cn < 2) {
                return false;
            }
        }
    }
    let comps = d.components(mask);
    let mut coef: Vec<Option<BigRational>> = vec![None; n];
    let mut owner = vec![usize::MAX; n];
    let mut is_t = vec![];
    for (k, &c) in comps.iter().enumerate() {
        let info = cache.entry(c).or_insert_with(|| comp_info(d, g, c)).clone();
        match info {
            CompInfo::Bad => return false,
            CompInfo::Good { t, coef: cs } => {
                is_t.push(t);
                for (i, q) in cs {
                    coef[i] = Some(q);
                    owner[i] = k;
                }
            }
        }
    }
    for i in 0..n {
        if mask >> i & 1 == 1 {
            continue;
        }
        let mut ke = linalg::q(d.b[i] - 2);
        let mut tc = 0u64;
        let mut bits = d.nbr[i] & mask;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            ke -= coef[j].as_ref().unwrap() * linalg::q(d.m[i][j] as i64);
            if is_t[owner[j]] {
                if d.m[i][j] != 1 {
                    return false;
                }
                tc |= 1 << owner[j];
            }
        }
        if !ke.is_positive() || (d.b[i] == 1 && tc.count_ones() != 2) {
            return false;
        }
    }
    true
}

/// Every P-resolution reachable within `opts.max_blowups` blow-ups.
///
/// Graphs are identified up to renaming of the blow-up curves only: curves of
/// the minimal resolution keep their names, so P-resolutions exchanged by a
/// symmetry of the arms are counted separately.
pub fn enumerate_presolutions(
    base: &ToiDescriptor,
    opts: EnumerationOptions,
) -> Result<Vec<PResolutionRecord>, PresolveError> {
    let (minres, _) = toi_minimal_resolution(base.family, base.n)?;
    let graphs = blowup_graphs(&minres, opts.max_blowups);
    let candidates: u64 = graphs
        .iter()
        .map(|g| 1u64 << g.curves().filter(|(_, c)| c.self_int <= -2).count())
        .sum();
    if candidates > opts.candidate_cap {
        return Err(PresolveError::Budget {
            candidates,
            cap: opts.candidate_cap,
        });
    }
    let found: Vec<DecoratedGraph> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            let d = Dense::new(g);
            let free: Vec<usize> = (0..d.ids.len()).filter(|&i| d.b[i] >= 2).collect();
            let mut cache = HashMap::new();
            let mut out = vec![];
            for bits in 0u32..(1 << free.len()) {
                let mask = free
                    .iter()
                    .enumerate()
                    .fold(0u32, |m, (k, &i)| m | ((bits >> k & 1) << i));
                if accepts(&d, g, mask, &mut cache) {
                    out.push(d.graph_with(g, mask));
                }
            }
            out
        })
        .collect();
    let mut recs = found
        .iter()
        .map(|g| validate_presolution(g, base))
        .collect::<Result<Vec<_>, _>>()?;
    recs.sort_by_cached_key(|r| canonical_order_key(&r.graph));
    for (i, r) in recs.iter_mut().enumerate() {
        r.index_in_family = i + 1;
    }
    Ok(recs)
}

/// (vertex count, sorted weights, markers and adjacency by name).
pub fn canonical_order_key(
    g: &DecoratedGraph,
) -> (
    usize,
    Vec<i64>,
    Vec<(String, i64, char)>,
    Vec<(String, String, u32)>,
) {
    let mut ws: Vec<i64> = g.curves().map(|(_, c)| c.self_int).collect();
    ws.sort();
    let vs = g
        .curves()
        .map(|(v, c)| (v.to_string(), c.self_int, c.marker.code()))
        .collect();
    let es = g
        .edges()
        .into_iter()
        .map(|(a, b, m)| (a.to_string(), b.to_string(), m))
        .collect();
    (g.len(), ws, vs, es)
}

/// Pairs `(i, j)`, `i < j`, of positions whose graphs are isomorphic.
pub fn symmetric_pairs(records: &[PResolutionRecord]) -> Vec<(usize, usize)> {
    let mut out = vec![];
    for i in 0..records.len() {
        for j in i + 1..records.len() {
            if records[i].graph.is_isomorphic(&records[j].graph) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Exceptional curve count of the minimal resolution.
pub fn minimal_resolution_size(base: &ToiDescriptor) -> usize {
    1 + base.family.arms().iter().map(|a| a.len()).sum::<usize>()
}

/// Whether every singular point of the record is a rational double point.
pub fn is_artin_component(rec: &PResolutionRecord) -> bool {
    rec.singularities
        .iter()
        .all(|k| matches!(k, SingularityKind::Rdp(_)))
}

pub fn rdp_labels(rec: &PResolutionRecord) -> Vec<AdeLabel> {
    rec.singularities
        .iter()
        .filter_map(|k| {
            if let SingularityKind::Rdp(l) = k {
                Some(*l)
            } else {
                None
            }
        })
        .collect()
}
