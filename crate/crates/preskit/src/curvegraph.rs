//! Decorated intersection multigraphs of rational curves.
//!
//! Vertices are curves with a self-intersection number and a [`Marker`];
//! edges carry intersection multiplicities and loops record nodes created by
//! blowing down a curve that met a neighbour more than once.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    /// Curve kept in the partial resolution.
    Kept,
    /// Curve contracted to a singular point.
    Contracted,
    /// Component of the compactifying divisor.
    Boundary,
    /// (-1)-curve of the general fiber.
    Tracker,
}

impl Marker {
    pub fn code(self) -> char {
        match self {
            Marker::Kept => 'k',
            Marker::Contracted => 'c',
            Marker::Boundary => 'b',
            Marker::Tracker => 't',
        }
    }

    pub fn from_code(c: &str) -> Option<Marker> {
        match c {
            "k" => Some(Marker::Kept),
            "c" => Some(Marker::Contracted),
            "b" => Some(Marker::Boundary),
            "t" => Some(Marker::Tracker),
            _ => None,
        }
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Marker::Kept => "kept",
            Marker::Contracted => "contracted",
            Marker::Boundary => "boundary",
            Marker::Tracker => "tracker",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Curve {
    pub self_int: i64,
    pub marker: Marker,
    pub label: Option<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    Missing(String),
    #[error("duplicate vertex {0}")]
    Duplicate(String),
    #[error("vertices {0} and {1} do not meet")]
    NoEdge(String, String),
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("{id} has self-intersection {self_int}, not -1")]
    NotMinusOne { id: String, self_int: i64 },
    #[error("{id} is marked {marker}; blowing it down is forbidden")]
    Forbidden { id: String, marker: Marker },
}

/// One blow-down, with enough data to undo it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowDownEntry {
    pub vertex: String,
    pub curve: Curve,
    pub loops: u32,
    pub neighbors: Vec<(String, u32)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlowDownLog {
    pub entries: Vec<BlowDownEntry>,
}

impl BlowDownLog {
    pub fn push(&mut self, e: BlowDownEntry) {
        self.entries.push(e);
    }

    /// Undo every logged blow-down, latest first.
    pub fn replay_reverse(&self, g: &DecoratedGraph) -> DecoratedGraph {
        let mut g = g.clone();
        for e in self.entries.iter().rev() {
            g.undo_blow_down(e);
        }
        g
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Chain,
    Star,
    Other,
}

/// Connected subgraph; for chains `ids` runs from one end to the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub ids: Vec<String>,
    pub shape: Shape,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecoratedGraph {
    curves: BTreeMap<String, Curve>,
    adj: BTreeMap<String, BTreeMap<String, u32>>,
    loops: BTreeMap<String, u32>,
}

impl DecoratedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.curves.contains_key(id)
    }

    pub fn add_curve(&mut self, id: &str, self_int: i64, marker: Marker) -> Result<(), GraphError> {
        if self.curves.contains_key(id) {
            return Err(GraphError::Duplicate(id.to_string()));
        }
        self.curves.insert(
            id.to_string(),
            Curve {
                self_int,
                marker,
                label: None,
            },
        );
        self.adj.insert(id.to_string(), BTreeMap::new());
        Ok(())
    }

    fn require(&self, id: &str) -> Result<&Curve, GraphError> {
        self.curves
            .get(id)
            .ok_or_else(|| GraphError::Missing(id.to_string()))
    }

    /// Adds `mult` to the intersection of `a` and `b` (a loop when `a == b`).
    pub fn add_edge(&mut self, a: &str, b: &str, mult: u32) -> Result<(), GraphError> {
        self.require(a)?;
        self.require(b)?;
        if mult == 0 {
            return Err(GraphError::ZeroMultiplicity);
        }
        if a == b {
            *self.loops.entry(a.to_string()).or_insert(0) += mult;
            return Ok(());
        }
        *self
            .adj
            .get_mut(a)
            .unwrap()
            .entry(b.to_string())
            .or_insert(0) += mult;
        *self
            .adj
            .get_mut(b)
            .unwrap()
            .entry(a.to_string())
            .or_insert(0) += mult;
        Ok(())
    }

    pub fn remove_edge(&mut self, a: &str, b: &str) -> Result<u32, GraphError> {
        let m = self
            .adj
            .get_mut(a)
            .and_then(|n| n.remove(b))
            .ok_or_else(|| GraphError::NoEdge(a.to_string(), b.to_string()))?;
        self.adj.get_mut(b).unwrap().remove(a);
        Ok(m)
    }

    pub fn remove_curve(&mut self, id: &str) -> Result<Curve, GraphError> {
        let c = self
            .curves
            .remove(id)
            .ok_or_else(|| GraphError::Missing(id.to_string()))?;
        for nb in self.adj.remove(id).unwrap().into_keys() {
            self.adj.get_mut(&nb).unwrap().remove(id);
        }
        self.loops.remove(id);
        Ok(c)
    }

    pub fn curve(&self, id: &str) -> Option<&Curve> {
        self.curves.get(id)
    }

    pub fn curves(&self) -> impl Iterator<Item = (&str, &Curve)> {
        self.curves.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.curves.keys().map(|k| k.as_str())
    }

    /// Self-intersection; panics on an unknown id.
    pub fn w(&self, id: &str) -> i64 {
        self.curves[id].self_int
    }

    pub fn marker(&self, id: &str) -> Marker {
        self.curves[id].marker
    }

    pub fn set_marker(&mut self, id: &str, m: Marker) -> Result<(), GraphError> {
        self.curves
            .get_mut(id)
            .ok_or_else(|| GraphError::Missing(id.to_string()))?
            .marker = m;
        Ok(())
    }

    pub fn set_self_int(&mut self, id: &str, w: i64) -> Result<(), GraphError> {
        self.curves
            .get_mut(id)
            .ok_or_else(|| GraphError::Missing(id.to_string()))?
            .self_int = w;
        Ok(())
    }

    pub fn set_label(&mut self, id: &str, label: Option<String>) -> Result<(), GraphError> {
        self.curves
            .get_mut(id)
            .ok_or_else(|| GraphError::Missing(id.to_string()))?
            .label = label;
        Ok(())
    }

    pub fn mult(&self, a: &str, b: &str) -> u32 {
        if a == b {
            return self.loops(a);
        }
        self.adj.get(a).and_then(|n| n.get(b)).copied().unwrap_or(0)
    }

    pub fn loops(&self, a: &str) -> u32 {
        self.loops.get(a).copied().unwrap_or(0)
    }

    /// Intersection number of two curves (self-intersection on the diagonal).
    pub fn dot(&self, a: &str, b: &str) -> i64 {
        if a == b {
            self.w(a)
        } else {
            self.mult(a, b) as i64
        }
    }

    pub fn neighbors(&self, id: &str) -> impl Iterator<Item = (&str, u32)> {
        self.adj[id].iter().map(|(k, &m)| (k.as_str(), m))
    }

    pub fn degree(&self, id: &str) -> usize {
        self.adj[id].len()
    }

    /// Unordered edges `(a, b, mult)` with `a < b`.
    pub fn edges(&self) -> Vec<(&str, &str, u32)> {
        let mut out = vec![];
        for (a, nb) in &self.adj {
            for (b, &m) in nb {
                if a < b {
                    out.push((a.as_str(), b.as_str(), m));
                }
            }
        }
        out
    }

    pub fn blow_down(&self, v: &str) -> Result<(DecoratedGraph, BlowDownEntry), GraphError> {
        let mut g = self.clone();
        let e = g.blow_down_mut(v)?;
        Ok((g, e))
    }

    /// In-place blow-down of a Kept or Tracker (-1)-curve.
    pub fn blow_down_mut(&mut self, v: &str) -> Result<BlowDownEntry, GraphError> {
        let c = self.require(v)?;
        if matches!(c.marker, Marker::Contracted | Marker::Boundary) {
            return Err(GraphError::Forbidden {
                id: v.to_string(),
                marker: c.marker,
            });
        }
        self.blow_down_any(v)
    }

    /// Blow-down without the marker restriction (used by the MMP on the central fiber).
    pub fn blow_down_any(&mut self, v: &str) -> Result<BlowDownEntry, GraphError> {
        let c = self.require(v)?;
        if c.self_int != -1 {
            return Err(GraphError::NotMinusOne {
                id: v.to_string(),
                self_int: c.self_int,
            });
        }
        let loops = self.loops.remove(v).unwrap_or(0);
        let curve = self.curves.remove(v).unwrap();
        let nb: Vec<(String, u32)> = self.adj.remove(v).unwrap().into_iter().collect();
        for (a, m) in &nb {
            self.adj.get_mut(a).unwrap().remove(v);
            let m = *m as i64;
            self.curves.get_mut(a).unwrap().self_int += m * m;
            let nodes = (m * (m - 1) / 2) as u32;
            if nodes > 0 {
                *self.loops.entry(a.clone()).or_insert(0) += nodes;
            }
        }
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                let m = nb[i].1 * nb[j].1;
                self.add_edge(&nb[i].0.clone(), &nb[j].0.clone(), m)
                    .unwrap();
            }
        }
        Ok(BlowDownEntry {
            vertex: v.to_string(),
            curve,
            loops,
            neighbors: nb,
        })
    }

    /// Exact inverse of the blow-down recorded in `e`.
    pub fn undo_blow_down(&mut self, e: &BlowDownEntry) {
        let nb = &e.neighbors;
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                let m = nb[i].1 * nb[j].1;
                let (a, b) = (&nb[i].0, &nb[j].0);
                let cur = self.mult(a, b);
                self.remove_edge(a, b).unwrap();
                if cur > m {
                    self.add_edge(a, b, cur - m).unwrap();
                }
            }
        }
        for (a, m) in nb {
            let m = *m as i64;
            self.curves.get_mut(a).unwrap().self_int -= m * m;
            let nodes = (m * (m - 1) / 2) as u32;
            if nodes > 0 {
                let l = self.loops.get_mut(a).unwrap();
                *l -= nodes;
                if *l == 0 {
                    self.loops.remove(a);
                }
            }
        }
        self.curves.insert(e.vertex.clone(), e.curve.clone());
        self.adj.insert(e.vertex.clone(), BTreeMap::new());
        if e.loops > 0 {
            self.loops.insert(e.vertex.clone(), e.loops);
        }
        for (a, m) in nb {
            self.add_edge(&e.vertex, a, *m).unwrap();
        }
    }

    /// Blow up a point of `a ∩ b`; the new curve `new_id` is a Kept (-1)-curve.
    pub fn blow_up_edge(
        &self,
        a: &str,
        b: &str,
        new_id: &str,
    ) -> Result<DecoratedGraph, GraphError> {
        if self.mult(a, b) == 0 || a == b {
            return Err(GraphError::NoEdge(a.to_string(), b.to_string()));
        }
        let mut g = self.clone();
        g.add_curve(new_id, -1, Marker::Kept)?;
        let m = g.remove_edge(a, b)?;
        if m > 1 {
            g.add_edge(a, b, m - 1)?;
        }
        g.curves.get_mut(a).unwrap().self_int -= 1;
        g.curves.get_mut(b).unwrap().self_int -= 1;
        g.add_edge(a, new_id, 1)?;
        g.add_edge(b, new_id, 1)?;
        Ok(g)
    }

    /// Blow up a general point of `v`.
    pub fn blow_up_point(&self, v: &str, new_id: &str) -> Result<DecoratedGraph, GraphError> {
        self.require(v)?;
        let mut g = self.clone();
        g.add_curve(new_id, -1, Marker::Kept)?;
        g.curves.get_mut(v).unwrap().self_int -= 1;
        g.add_edge(v, new_id, 1)?;
        Ok(g)
    }

    /// Connected components of the subgraph induced by vertices satisfying `keep`.
    pub fn components_where(&self, keep: impl Fn(&str, &Curve) -> bool) -> Vec<Component> {
        let mut seen = BTreeSet::new();
        let mut out = vec![];
        for (id, c) in &self.curves {
            if seen.contains(id.as_str()) || !keep(id, c) {
                continue;
            }
            let mut stack = vec![id.as_str()];
            let mut comp = vec![];
            seen.insert(id.as_str());
            while let Some(x) = stack.pop() {
                comp.push(x.to_string());
                for y in self.adj[x].keys() {
                    if !seen.contains(y.as_str()) && keep(y, &self.curves[y]) {
                        seen.insert(y.as_str());
                        stack.push(y.as_str());
                    }
                }
            }
            comp.sort();
            out.push(self.shape_component(comp));
        }
        out
    }

    fn shape_component(&self, comp: Vec<String>) -> Component {
        let set: BTreeSet<&str> = comp.iter().map(|s| s.as_str()).collect();
        let inner = |v: &str| {
            self.adj[v]
                .iter()
                .filter(|(y, _)| set.contains(y.as_str()))
                .count()
        };
        let inner_edges: usize = comp.iter().map(|v| inner(v)).sum::<usize>() / 2;
        let multi = comp.iter().any(|v| {
            self.loops(v) > 0
                || self.adj[v]
                    .iter()
                    .any(|(y, &m)| set.contains(y.as_str()) && m > 1)
        });
        let tree = inner_edges + 1 == comp.len() && !multi;
        if tree && comp.iter().all(|v| inner(v) <= 2) {
            let ids = self
                .chain_order(&comp)
                .expect("tree with degrees <= 2 is a chain");
            return Component {
                ids,
                shape: Shape::Chain,
            };
        }
        let branch: Vec<_> = comp.iter().filter(|v| inner(v) >= 3).collect();
        let shape = if tree && branch.len() == 1 {
            Shape::Star
        } else {
            Shape::Other
        };
        Component { ids: comp, shape }
    }

    pub fn contracted_components(&self) -> Vec<Component> {
        self.components_where(|_, c| c.marker == Marker::Contracted)
    }

    /// Orders a chain from its lexicographically smaller end.
    pub fn chain_order(&self, comp: &[String]) -> Option<Vec<String>> {
        if comp.len() == 1 {
            return Some(comp.to_vec());
        }
        let set: BTreeSet<&str> = comp.iter().map(|s| s.as_str()).collect();
        let inner = |v: &str| -> Vec<&str> {
            self.adj[v]
                .keys()
                .filter(|y| set.contains(y.as_str()))
                .map(|y| y.as_str())
                .collect()
        };
        let ends: Vec<&str> = comp
            .iter()
            .map(|s| s.as_str())
            .filter(|v| inner(v).len() == 1)
            .collect();
        if ends.len() != 2 {
            return None;
        }
        let mut out = vec![ends.iter().min().unwrap().to_string()];
        let mut prev: Option<String> = None;
        loop {
            let x = out.last().unwrap().clone();
            let next: Vec<&str> = inner(&x)
                .into_iter()
                .filter(|y| Some(*y) != prev.as_deref())
                .collect();
            match next.as_slice() {
                [] => break,
                [y] => {
                    prev = Some(x);
                    out.push(y.to_string());
                }
                _ => return None,
            }
        }
        (out.len() == comp.len()).then_some(out)
    }

    pub fn induced(&self, ids: &[String]) -> DecoratedGraph {
        let mut g = DecoratedGraph::new();
        for id in ids {
            g.curves.insert(id.clone(), self.curves[id].clone());
            g.adj.insert(id.clone(), BTreeMap::new());
            if let Some(&l) = self.loops.get(id) {
                g.loops.insert(id.clone(), l);
            }
        }
        for (a, b, m) in self.edges() {
            if g.contains(a) && g.contains(b) {
                g.add_edge(a, b, m).unwrap();
            }
        }
        g
    }

    /// Intersection matrix on `ids` (self-intersections on the diagonal).
    pub fn intersection_matrix(&self, ids: &[String]) -> Vec<Vec<i64>> {
        ids.iter()
            .map(|a| ids.iter().map(|b| self.dot(a, b)).collect())
            .collect()
    }

    /// Marker-, weight- and multiplicity-preserving isomorphism, labels ignored.
    pub fn is_isomorphic(&self, other: &DecoratedGraph) -> bool {
        iso::isomorphic(self, other)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for (id, c) in &self.curves {
            let shape = match c.marker {
                Marker::Contracted => "box",
                Marker::Boundary => "diamond",
                _ => "ellipse",
            };
            writeln!(
                s,
                "  \"{id}\" [label=\"{id} {}/{}\" shape={shape}];",
                c.self_int, c.marker
            )
            .unwrap();
        }
        for (a, b, m) in self.edges() {
            writeln!(s, "  \"{a}\" -- \"{b}\" [label=\"{m}\"];").unwrap();
        }
        for (a, &l) in &self.loops {
            writeln!(s, "  \"{a}\" -- \"{a}\" [label=\"{l}\"];").unwrap();
        }
        s.push_str("}\n");
        s
    }
}

mod iso {
    use super::*;

    struct Dense {
        w: Vec<i64>,
        marker: Vec<Marker>,
        loops: Vec<u32>,
        m: Vec<Vec<u32>>,
        nbrs: Vec<Vec<usize>>,
    }

    fn dense(g: &DecoratedGraph) -> Dense {
        let ids: Vec<&String> = g.curves.keys().collect();
        let ix: BTreeMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let n = ids.len();
        let mut m = vec![vec![0; n]; n];
        let mut nbrs = vec![vec![]; n];
        for (i, a) in ids.iter().enumerate() {
            for (b, &k) in &g.adj[a.as_str()] {
                m[i][ix[b.as_str()]] = k;
                nbrs[i].push(ix[b.as_str()]);
            }
        }
        Dense {
            w: ids.iter().map(|a| g.curves[a.as_str()].self_int).collect(),
            marker: ids.iter().map(|a| g.curves[a.as_str()].marker).collect(),
            loops: ids.iter().map(|a| g.loops(a)).collect(),
            m,
            nbrs,
        }
    }

    fn invariant(d: &Dense, i: usize) -> (i64, Marker, u32, Vec<(i64, Marker, u32)>) {
        let mut nb: Vec<_> = d.nbrs[i]
            .iter()
            .map(|&j| (d.w[j], d.marker[j], d.m[i][j]))
            .collect();
        nb.sort();
        (d.w[i], d.marker[i], d.loops[i], nb)
    }

    pub(super) fn isomorphic(a: &DecoratedGraph, b: &DecoratedGraph) -> bool {
        if a.len() != b.len() || a.edges().len() != b.edges().len() {
            return false;
        }
        let (da, db) = (dense(a), dense(b));
        let n = da.w.len();
        let ia: Vec<_> = (0..n).map(|i| invariant(&da, i)).collect();
        let ib: Vec<_> = (0..n).map(|i| invariant(&db, i)).collect();
        let (mut sa, mut sb) = (ia.clone(), ib.clone());
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
        // visit order: BFS so each new vertex has mapped neighbours to check against
        let mut order = vec![];
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut q = std::collections::VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                order.push(x);
                for &y in &da.nbrs[x] {
                    if !seen[y] {
                        seen[y] = true;
                        q.push_back(y);
                    }
                }
            }
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        search(&da, &db, &ia, &ib, &order, 0, &mut map, &mut used)
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        da: &Dense,
        db: &Dense,
        ia: &[(i64, Marker, u32, Vec<(i64, Marker, u32)>)],
        ib: &[(i64, Marker, u32, Vec<(i64, Marker, u32)>)],
        order: &[usize],
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for y in 0..ib.len() {
            if used[y] || ia[x] != ib[y] {
                continue;
            }
            let ok = order[..k].iter().all(|&p| da.m[x][p] == db.m[y][map[p]]);
            if !ok {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if search(da, db, ia, ib, order, k + 1, map, used) {
                return true;
            }
            used[y] = false;
        }
        map[x] = usize::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(ws: &[i64]) -> DecoratedGraph {
        let mut g = DecoratedGraph::new();
        for (i, &w) in ws.iter().enumerate() {
            g.add_curve(&format!("v{i}"), w, Marker::Kept).unwrap();
            if i > 0 {
                g.add_edge(&format!("v{}", i - 1), &format!("v{i}"), 1)
                    .unwrap();
            }
        }
        g
    }

    #[test]
    fn blow_down_chain() {
        let g = chain(&[-2, -1, -3]);
        let (h, e) = g.blow_down("v1").unwrap();
        assert_eq!(h.w("v0"), -1);
        assert_eq!(h.w("v2"), -2);
        assert_eq!(h.mult("v0", "v2"), 1);
        let mut back = h.clone();
        back.undo_blow_down(&e);
        assert_eq!(back, g);
    }

    #[test]
    fn blow_down_double_contact_makes_loop() {
        let mut g = DecoratedGraph::new();
        g.add_curve("A", -3, Marker::Kept).unwrap();
        g.add_curve("E", -1, Marker::Kept).unwrap();
        g.add_curve("B", -2, Marker::Kept).unwrap();
        g.add_edge("A", "E", 2).unwrap();
        g.add_edge("E", "B", 1).unwrap();
        let (h, _) = g.blow_down("E").unwrap();
        assert_eq!(h.w("A"), 1);
        assert_eq!(h.loops("A"), 1);
        assert_eq!(h.mult("A", "B"), 2);
        // pushforward check: A' = A + 2E, B' = B + E  =>  A'.B' = 0 + 2*1 + 1*2 + 2*(-1) = 2
        let ids: Vec<String> = ["A", "E", "B"].iter().map(|s| s.to_string()).collect();
        let m = g.intersection_matrix(&ids);
        let mut ab = 0;
        let ap = [1i64, 2, 0];
        let bp = [0i64, 1, 1];
        for i in 0..3 {
            for j in 0..3 {
                ab += ap[i] * m[i][j] * bp[j];
            }
        }
        assert_eq!(ab, 2);
    }

    #[test]
    fn blow_down_forbidden() {
        let mut g = chain(&[-1]);
        g.set_marker("v0", Marker::Boundary).unwrap();
        assert!(matches!(
            g.blow_down("v0"),
            Err(GraphError::Forbidden { .. })
        ));
        let g = chain(&[-2]);
        assert!(matches!(
            g.blow_down("v0"),
            Err(GraphError::NotMinusOne { .. })
        ));
    }

    #[test]
    fn blow_ups() {
        let g = chain(&[-2, -3]);
        let h = g.blow_up_edge("v0", "v1", "e").unwrap();
        assert_eq!((h.w("v0"), h.w("e"), h.w("v1")), (-3, -1, -4));
        assert_eq!(h.mult("v0", "v1"), 0);
        assert_eq!(h.blow_down("e").unwrap().0, g);
        let g = chain(&[0]);
        let h = g.blow_up_point("v0", "e").unwrap();
        assert_eq!((h.w("v0"), h.w("e"), h.mult("v0", "e")), (-1, -1, 1));
        assert_eq!(h.blow_down("e").unwrap().0, g);
    }

    #[test]
    fn components_and_chains() {
        let mut g = chain(&[-2, -5, -2, -3]);
        for v in ["v0", "v1", "v2"] {
            g.set_marker(v, Marker::Contracted).unwrap();
        }
        let cs = g.contracted_components();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].shape, Shape::Chain);
        assert_eq!(cs[0].ids, vec!["v0", "v1", "v2"]);
        assert!(chain(&[-2]).contracted_components().is_empty());
    }

    #[test]
    fn isomorphism_basics() {
        let g = chain(&[-2, -3, -4]);
        let h = chain(&[-4, -3, -2]);
        assert!(g.is_isomorphic(&g));
        assert!(g.is_isomorphic(&h));
        assert!(!g.is_isomorphic(&chain(&[-3, -2, -4])));
        let mut k = h.clone();
        k.set_marker("v0", Marker::Contracted).unwrap();
        assert!(!g.is_isomorphic(&k));
    }

    #[test]
    fn dot_export() {
        let d = chain(&[-2, -1]).to_dot();
        assert!(d.contains("\"v0\" -- \"v1\" [label=\"1\"]"));
        assert!(d.contains("-1/kept"));
    }
}
