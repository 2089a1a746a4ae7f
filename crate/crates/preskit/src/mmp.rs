//! Fiberwise MMP on the compactified smoothing: divisorial contractions and
//! usual flips on the central fiber, with the limits of the compactifying
//! curves tracked so the general fiber and its (-1)-curves can be rebuilt.
//!
//! Intersection numbers on the singular central surface are computed on the
//! resolution by pulling divisors back over the contracted Wahl chains.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::compactify::CompactifiedGraph;
use crate::curvegraph::{DecoratedGraph, GraphError, Marker};
use crate::linalg::{self, q, Q};
use crate::singularity::{class_t_params, BranchType, ToiDescriptor};

pub const DEFAULT_MOVE_BUDGET: usize = 500;

/// The curve meeting only this boundary curve singles out Case I.
pub const B_TILDE: &str = "dm2";

pub type Divisor = BTreeMap<String, BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MmpError {
    #[error("no move applies but contracted chains {0:?} remain")]
    Stuck(Vec<Vec<String>>),
    #[error("move budget {0} exceeded")]
    Budget(usize),
    #[error("{0} is not a flip site")]
    BadSite(String),
    #[error("{0} is not a contractible (-1)-curve")]
    NotContractible(String),
    #[error("invariant broken: {0}")]
    Invariant(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("blow-downs stop at K^2 = {k2} with curves {remaining:?}")]
    Stuck {
        k2: i64,
        remaining: Vec<(String, i64)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("{0} is not of type (3,1)")]
    WrongType(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Contract {
        curve: String,
    },
    Flip {
        c: String,
        chain: Vec<i64>,
        c_plus: String,
        newsing: Vec<i64>,
    },
}

fn list(v: &[i64]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", s.join(","))
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Contract { curve } => write!(f, "CONTRACT {curve}"),
            Move::Flip {
                c,
                chain,
                c_plus,
                newsing,
            } => {
                write!(
                    f,
                    "FLIP C={c} chain={} -> C+={c_plus} newsing={}",
                    list(chain),
                    list(newsing)
                )
            }
        }
    }
}

/// One divisorial contraction as seen in the general fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionRecord {
    pub curve: String,
    /// Intersections with the surviving compactifying curves.
    pub meets: BTreeMap<String, i64>,
    /// Compactifying curves whose limit was exactly the contracted curve.
    pub dropped: Vec<String>,
}

impl ContractionRecord {
    pub fn is_tracker(&self) -> bool {
        self.dropped.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipSite {
    pub c: String,
    /// The Wahl chain, ending at the vertex met by `c`.
    pub chain: Vec<String>,
    /// Largest index with entry at least 3 followed only by 2s.
    pub attach: usize,
}

struct QComp {
    ids: Vec<String>,
    m: Vec<Vec<i64>>,
    disc: Vec<Q>,
}

/// Intersection form on the surface with the Contracted chains contracted.
struct QForm {
    comps: Vec<QComp>,
}

fn integral(x: &Q) -> Option<i64> {
    x.is_integer().then(|| x.to_integer().to_i64()).flatten()
}

impl QForm {
    fn new(g: &DecoratedGraph) -> QForm {
        let comps = g
            .contracted_components()
            .into_iter()
            .map(|c| {
                let m = g.intersection_matrix(&c.ids);
                let rhs: Vec<Q> = c.ids.iter().map(|v| q(-2 - g.w(v))).collect();
                let disc =
                    linalg::solve(&m, &rhs).expect("contracted chains are negative definite");
                QComp {
                    ids: c.ids,
                    m,
                    disc,
                }
            })
            .collect();
        QForm { comps }
    }

    fn meet(g: &DecoratedGraph, d: &Divisor, e: &str) -> Q {
        d.iter().fold(Q::zero(), |t, (v, a)| t + a * q(g.dot(v, e)))
    }

    fn pull(&self, g: &DecoratedGraph, d: &Divisor) -> Vec<Vec<Q>> {
        self.comps
            .iter()
            .map(|c| {
                let rhs: Vec<Q> = c.ids.iter().map(|e| -Self::meet(g, d, e)).collect();
                linalg::solve(&c.m, &rhs).unwrap()
            })
            .collect()
    }

    fn dot_pulled(&self, g: &DecoratedGraph, d1: &Divisor, d2: &Divisor, al2: &[Vec<Q>]) -> Q {
        let mut t = Q::zero();
        for (v, a) in d1 {
            for (u, b) in d2 {
                t += a * b * q(g.dot(v, u));
            }
        }
        for (c, al) in self.comps.iter().zip(al2) {
            for (e, x) in c.ids.iter().zip(al) {
                t += x * Self::meet(g, d1, e);
            }
        }
        t
    }

    fn dot(&self, g: &DecoratedGraph, d1: &Divisor, d2: &Divisor) -> Q {
        self.dot_pulled(g, d1, d2, &self.pull(g, d2))
    }

    fn k(&self, g: &DecoratedGraph, d: &Divisor) -> Q {
        let mut t = Q::zero();
        for (v, a) in d {
            t += a * q(-2 - g.w(v));
        }
        for c in &self.comps {
            for (e, x) in c.ids.iter().zip(&c.disc) {
                t -= x * Self::meet(g, d, e);
            }
        }
        t
    }

    fn k2(&self, g: &DecoratedGraph) -> Q {
        let ids: Vec<String> = g.ids().map(str::to_string).collect();
        let mut t = q(10 - linalg::rank(&g.intersection_matrix(&ids)) as i64);
        for c in &self.comps {
            for (e, x) in c.ids.iter().zip(&c.disc) {
                t -= x * q(-2 - g.w(e));
            }
        }
        t
    }
}

fn unit(v: &str) -> Divisor {
    BTreeMap::from([(v.to_string(), q(1))])
}

#[derive(Debug, Clone)]
pub struct MMPState {
    pub base: ToiDescriptor,
    pub central: DecoratedGraph,
    /// Compactifying curves still present in the general fiber.
    pub boundary: Vec<String>,
    /// Limit in the central fiber of each compactifying curve.
    pub limits: BTreeMap<String, Divisor>,
    /// Intersection matrix of the compactifying curves in the general fiber.
    pub gen: BTreeMap<(String, String), i64>,
    /// K^2 of the general fiber.
    pub k2: Q,
    pub initial_gen: BTreeMap<(String, String), i64>,
    pub moves: Vec<Move>,
    pub contractions: Vec<ContractionRecord>,
    /// K^2 recomputed on the central fiber, initially and after every move.
    pub central_k2: Vec<Q>,
}

impl MMPState {
    pub fn new(c: &CompactifiedGraph) -> Result<MMPState, MmpError> {
        let g = c.graph.clone();
        let mut gen = BTreeMap::new();
        for a in &c.boundary {
            for b in &c.boundary {
                gen.insert((a.clone(), b.clone()), g.dot(a, b));
            }
        }
        let k2 = QForm::new(&g).k2(&g);
        let st = MMPState {
            base: c.base.clone(),
            limits: c.boundary.iter().map(|b| (b.clone(), unit(b))).collect(),
            boundary: c.boundary.clone(),
            initial_gen: gen.clone(),
            gen,
            central_k2: vec![k2.clone()],
            k2,
            central: g,
            moves: vec![],
            contractions: vec![],
        };
        st.check()?;
        Ok(st)
    }

    /// Limits reproduce the general-fiber intersections, K-degrees and K^2.
    pub fn check(&self) -> Result<(), MmpError> {
        let g = &self.central;
        let qf = QForm::new(g);
        let pulled: BTreeMap<&String, Vec<Vec<Q>>> = self
            .boundary
            .iter()
            .map(|b| (b, qf.pull(g, &self.limits[b])))
            .collect();
        for a in &self.boundary {
            for b in &self.boundary {
                let x = qf.dot_pulled(g, &self.limits[a], &self.limits[b], &pulled[b]);
                if x != q(self.gen[&(a.clone(), b.clone())]) {
                    return Err(MmpError::Invariant(format!(
                        "{a}.{b} = {x} on the central fiber"
                    )));
                }
            }
            if qf.k(g, &self.limits[a]) != q(-2 - self.gen[&(a.clone(), a.clone())]) {
                return Err(MmpError::Invariant(format!("K.{a}")));
            }
        }
        let k2 = qf.k2(g);
        if k2 != self.k2 {
            return Err(MmpError::Invariant(format!(
                "K^2 central {k2} general {}",
                self.k2
            )));
        }
        Ok(())
    }

    fn is_pure(&self, v: &str) -> bool {
        self.limits.values().any(|l| *l == unit(v))
    }

    fn contracted(&self, v: &str) -> bool {
        self.central.marker(v) == Marker::Contracted
    }

    fn free_minus_one(&self) -> Vec<String> {
        let g = &self.central;
        g.ids()
            .filter(|v| {
                !self.contracted(v)
                    && g.w(v) == -1
                    && !g.neighbors(v).any(|(u, _)| self.contracted(u))
            })
            .map(str::to_string)
            .collect()
    }

    /// (-1)-curves with no contracted neighbour that are not a boundary limit.
    pub fn contractible(&self) -> Vec<String> {
        self.free_minus_one()
            .into_iter()
            .filter(|v| !self.is_pure(v))
            .collect()
    }

    fn site_at(&self, v: &str) -> Option<FlipSite> {
        let g = &self.central;
        if self.contracted(v) || g.w(v) != -1 {
            return None;
        }
        let cn: Vec<(&str, u32)> = g.neighbors(v).filter(|(u, _)| self.contracted(u)).collect();
        let [(u, 1)] = cn[..] else {
            return None;
        };
        let comp = g
            .contracted_components()
            .into_iter()
            .find(|c| c.ids.iter().any(|x| x == u))?;
        let mut chain = g.chain_order(&comp.ids)?;
        if chain.last().map(String::as_str) != Some(u) {
            if chain[0] != u {
                return None;
            }
            chain.reverse();
        }
        let b: Vec<i64> = chain.iter().map(|x| -g.w(x)).collect();
        let attach = (0..b.len())
            .rev()
            .find(|&k| b[k] >= 3 && b[k + 1..].iter().all(|&x| x == 2))?;
        Some(FlipSite {
            c: v.to_string(),
            chain,
            attach,
        })
    }

    pub fn flip_sites(&self) -> Vec<FlipSite> {
        self.central.ids().filter_map(|v| self.site_at(v)).collect()
    }

    pub fn find_flip(&self) -> Option<FlipSite> {
        self.flip_sites().into_iter().next()
    }

    pub fn apply_flip(&mut self, site: &FlipSite) -> Result<(), MmpError> {
        if self.site_at(&site.c).as_ref() != Some(site) {
            return Err(MmpError::BadSite(site.c.clone()));
        }
        let ch = &site.chain;
        let b: Vec<i64> = ch.iter().map(|x| -self.central.w(x)).collect();
        let q0 = QForm::new(&self.central);
        let k0: BTreeMap<String, Q> = self
            .limits
            .iter()
            .map(|(k, l)| (k.clone(), q0.k(&self.central, l)))
            .collect();
        let g = &mut self.central;
        g.blow_down_any(&site.c)?;
        let mut down = vec![site.c.clone()];
        for x in ch[site.attach + 1..].iter().rev() {
            g.set_marker(x, Marker::Kept)?;
            g.blow_down_any(x)?;
            down.push(x.clone());
        }
        let cp = ch[0].clone();
        g.set_marker(&cp, Marker::Kept)?;
        let newsing: Vec<i64> = ch[1..=site.attach].iter().map(|x| -g.w(x)).collect();
        if !newsing.is_empty() && !matches!(class_t_params(&newsing), Ok(Some(t)) if t.d == 1) {
            return Err(MmpError::Invariant(format!(
                "flip left {newsing:?}, not a Wahl chain"
            )));
        }
        let q1 = QForm::new(g);
        let kc = q1.k(g, &unit(&cp));
        if !kc.is_positive() {
            return Err(MmpError::Invariant(format!("K.{cp} = {kc}")));
        }
        for (k, l) in self.limits.iter_mut() {
            l.retain(|v, _| !down.contains(v));
            let m = (&k0[k] - q1.k(g, l)) / &kc;
            if m.is_negative() || !m.is_integer() {
                return Err(MmpError::Invariant(format!("limit of {k} gains {m} {cp}")));
            }
            if !m.is_zero() {
                *l.entry(cp.clone()).or_insert_with(Q::zero) += m;
            }
        }
        self.moves.push(Move::Flip {
            c: site.c.clone(),
            chain: b,
            c_plus: cp,
            newsing,
        });
        self.after_move()
    }

    fn after_move(&mut self) -> Result<(), MmpError> {
        self.central_k2
            .push(QForm::new(&self.central).k2(&self.central));
        self.check()
    }

    /// Contracts `e` in every fiber; `e` must be a free (-1)-curve.
    pub fn apply_divisorial(&mut self, e: &str) -> Result<(), MmpError> {
        if !self.free_minus_one().iter().any(|v| v == e) {
            return Err(MmpError::NotContractible(e.to_string()));
        }
        let qf = QForm::new(&self.central);
        let mut meet = BTreeMap::new();
        for (k, l) in &self.limits {
            let x = qf.dot(&self.central, &unit(e), l);
            let x = integral(&x).ok_or_else(|| MmpError::Invariant(format!("{e}.{k} = {x}")))?;
            meet.insert(k.clone(), x);
        }
        for a in &self.boundary {
            for b in &self.boundary {
                *self.gen.get_mut(&(a.clone(), b.clone())).unwrap() += meet[a] * meet[b];
            }
        }
        for l in self.limits.values_mut() {
            l.remove(e);
        }
        self.central.blow_down_any(e)?;
        self.k2 += q(1);
        let dropped: Vec<String> = self
            .limits
            .iter()
            .filter(|(_, l)| l.is_empty())
            .map(|(k, _)| k.clone())
            .collect();
        for k in &dropped {
            self.limits.remove(k);
            self.boundary.retain(|b| b != k);
        }
        let alive: BTreeSet<&String> = self.boundary.iter().collect();
        self.gen
            .retain(|(a, b), _| alive.contains(a) && alive.contains(b));
        let meets = meet
            .into_iter()
            .filter(|(k, x)| *x != 0 && alive.contains(k))
            .collect();
        self.contractions.push(ContractionRecord {
            curve: e.to_string(),
            meets,
            dropped,
        });
        self.moves.push(Move::Contract {
            curve: e.to_string(),
        });
        self.after_move()
    }

    fn budget(&self, opts: &MmpOptions) -> Result<(), MmpError> {
        if self.moves.len() >= opts.move_budget {
            return Err(MmpError::Budget(opts.move_budget));
        }
        Ok(())
    }

    /// Runs in rounds: all available flips, else all contractions, else the
    /// lowest free (-1)-curve while singular points remain. `snap` sees the
    /// state after every round.
    pub fn run(
        &mut self,
        opts: &MmpOptions,
        snap: &mut dyn FnMut(&MMPState),
    ) -> Result<(), MmpError> {
        loop {
            let sites = self.flip_sites();
            if !sites.is_empty() {
                for s in sites {
                    if let Some(now) = self.site_at(&s.c) {
                        self.budget(opts)?;
                        self.apply_flip(&now)?;
                    }
                }
                snap(self);
                continue;
            }
            let cs = self.contractible();
            if !cs.is_empty() {
                for e in cs {
                    if self.contractible().contains(&e) {
                        self.budget(opts)?;
                        self.apply_divisorial(&e)?;
                    }
                }
                snap(self);
                continue;
            }
            if self.central.contracted_components().is_empty() {
                return Ok(());
            }
            match self.free_minus_one().into_iter().next() {
                Some(e) => {
                    self.budget(opts)?;
                    self.apply_divisorial(&e)?;
                    snap(self);
                }
                None => {
                    let rem = self
                        .central
                        .contracted_components()
                        .into_iter()
                        .map(|c| c.ids)
                        .collect();
                    return Err(MmpError::Stuck(rem));
                }
            }
        }
    }

    pub fn trace(&self) -> String {
        self.moves.iter().map(|m| format!("{m}\n")).collect()
    }

    pub fn weights(&self) -> BTreeMap<String, i64> {
        self.central
            .curves()
            .map(|(v, c)| (v.to_string(), c.self_int))
            .collect()
    }

    /// General fiber before the MMP: the compactifying curves plus one
    /// Tracker curve `E<k>` per divisorial contraction, rebuilt by undoing
    /// the contractions latest first.
    pub fn general_fiber(&self) -> Result<GeneralFiber, MmpError> {
        let mut names: Vec<String> = self.boundary.clone();
        let mut m: BTreeMap<(String, String), i64> = self.gen.clone();
        let mut kind: BTreeMap<String, (Marker, Option<String>)> = names
            .iter()
            .map(|b| (b.clone(), (Marker::Boundary, None)))
            .collect();
        for (k, rec) in self.contractions.iter().enumerate().rev() {
            for (a, x) in &rec.meets {
                for (b, y) in &rec.meets {
                    *m.get_mut(&(a.clone(), b.clone())).unwrap() -= x * y;
                }
            }
            let v = match rec.dropped.as_slice() {
                [] => format!("E{}", k + 1),
                [d] => d.clone(),
                _ => {
                    return Err(MmpError::Invariant(format!(
                        "{} empties {:?}",
                        rec.curve, rec.dropped
                    )))
                }
            };
            for u in &names {
                let x = rec.meets.get(u).copied().unwrap_or(0);
                m.insert((v.clone(), u.clone()), x);
                m.insert((u.clone(), v.clone()), x);
            }
            m.insert((v.clone(), v.clone()), -1);
            let marker = if rec.is_tracker() {
                Marker::Tracker
            } else {
                Marker::Boundary
            };
            kind.insert(v.clone(), (marker, Some(rec.curve.clone())));
            names.push(v);
        }
        let mut g = DecoratedGraph::new();
        for v in &names {
            let (marker, label) = kind[v].clone();
            g.add_curve(v, m[&(v.clone(), v.clone())], marker)?;
            if marker == Marker::Tracker {
                g.set_label(v, label)?;
            }
        }
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                let x = m[&(a.clone(), b.clone())];
                if x < 0 {
                    return Err(MmpError::Invariant(format!(
                        "{a}.{b} = {x} in the general fiber"
                    )));
                }
                if x > 0 {
                    g.add_edge(a, b, x as u32)?;
                }
            }
        }
        let k2 =
            integral(&self.k2).ok_or_else(|| MmpError::Invariant(format!("K^2 = {}", self.k2)))?;
        Ok(GeneralFiber {
            graph: g,
            k2: k2 - self.contractions.len() as i64,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MmpOptions {
    pub move_budget: usize,
}

impl Default for MmpOptions {
    fn default() -> Self {
        MmpOptions {
            move_budget: DEFAULT_MOVE_BUDGET,
        }
    }
}

/// Smooth configuration of rational curves together with K^2 of the surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralFiber {
    pub graph: DecoratedGraph,
    pub k2: i64,
}

/// Boundary curves met by each Tracker curve, with multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MinusOneData {
    pub trackers: Vec<(String, BTreeMap<String, u32>)>,
}

impl MinusOneData {
    pub fn from_general(z: &GeneralFiber) -> MinusOneData {
        let g = &z.graph;
        let trackers = g
            .curves()
            .filter(|(_, c)| c.marker == Marker::Tracker)
            .map(|(v, _)| {
                let meets = g
                    .neighbors(v)
                    .filter(|(u, _)| g.marker(u) == Marker::Boundary)
                    .map(|(u, m)| (u.to_string(), m))
                    .collect();
                (v.to_string(), meets)
            })
            .collect();
        MinusOneData { trackers }
    }
}

impl fmt::Display for MinusOneData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, meets) in &self.trackers {
            let parts: Vec<String> = meets
                .iter()
                .map(|(b, m)| {
                    if *m == 1 {
                        b.clone()
                    } else {
                        format!("{b}^{m}")
                    }
                })
                .collect();
            writeln!(f, "{t}: {}", parts.join(" "))?;
        }
        Ok(())
    }
}

pub fn run_mmp_with(
    c: &CompactifiedGraph,
    opts: &MmpOptions,
    snap: &mut dyn FnMut(&MMPState),
) -> Result<(MMPState, MinusOneData), MmpError> {
    let mut st = MMPState::new(c)?;
    snap(&st);
    st.run(opts, snap)?;
    let z = st.general_fiber()?;
    Ok((st, MinusOneData::from_general(&z)))
}

pub fn run_mmp(c: &CompactifiedGraph) -> Result<(MMPState, MinusOneData), MmpError> {
    run_mmp_with(c, &MmpOptions::default(), &mut |_| {})
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalModel {
    CP2,
    Quadric,
}

impl fmt::Display for MinimalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MinimalModel::CP2 => "CP2",
            MinimalModel::Quadric => "Quadric",
        })
    }
}

/// Blows down Tracker/Kept (-1)-curves, `choose` picking among the candidates
/// (sorted by id), and reads the minimal model off the final K^2.
pub fn classify_minimal_model_with(
    z: &GeneralFiber,
    choose: &mut dyn FnMut(&[String]) -> usize,
) -> Result<MinimalModel, ClassifyError> {
    let mut g = z.graph.clone();
    let mut k2 = z.k2;
    loop {
        let cands: Vec<String> = g
            .curves()
            .filter(|(_, c)| c.self_int == -1 && matches!(c.marker, Marker::Tracker | Marker::Kept))
            .map(|(v, _)| v.to_string())
            .collect();
        if cands.is_empty() {
            break;
        }
        let v = &cands[choose(&cands)];
        g.blow_down_mut(v).expect("candidate is a free (-1)-curve");
        k2 += 1;
    }
    match k2 {
        9 => Ok(MinimalModel::CP2),
        8 => Ok(MinimalModel::Quadric),
        _ => Err(ClassifyError::Stuck {
            k2,
            remaining: g
                .curves()
                .map(|(v, c)| (v.to_string(), c.self_int))
                .collect(),
        }),
    }
}

pub fn classify_minimal_model(z: &GeneralFiber) -> Result<MinimalModel, ClassifyError> {
    classify_minimal_model_with(z, &mut |_| 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    CaseI,
    CaseII,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::CaseI => "CaseI",
            Case::CaseII => "CaseII",
        })
    }
}

/// Case I iff some Tracker meets the boundary only in one point of `B_TILDE`.
pub fn case_discriminant(data: &MinusOneData, base: &ToiDescriptor) -> Result<Case, CaseError> {
    if base.family.branch_type() != BranchType::ThreeOne {
        return Err(CaseError::WrongType(base.to_string()));
    }
    let hit = data
        .trackers
        .iter()
        .any(|(_, m)| m.len() == 1 && m.get(B_TILDE) == Some(&1));
    Ok(if hit { Case::CaseI } else { Case::CaseII })
}
