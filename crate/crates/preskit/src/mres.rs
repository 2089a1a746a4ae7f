//! M-resolutions: every class T point with `d >= 2` is replaced by `d` Wahl
//! chains joined through Kept (-1)-curves.

use thiserror::Error;

use crate::contfrac::hj_expand;
use crate::curvegraph::{DecoratedGraph, Marker, Shape};
use crate::presolve::PResolutionRecord;
use crate::singularity::{class_t_params, ClassTParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MresError {
    #[error("no arrangement of Wahl strips blows down to {0:?}")]
    NoSplice(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MResolutionRecord {
    pub source: PResolutionRecord,
    pub graph: DecoratedGraph,
    /// Vertices added by the splices, in creation order.
    pub inserted: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Piece {
    Strip(i64),
    Joint,
}

impl Piece {
    fn b(self) -> i64 {
        match self {
            Piece::Strip(b) => b,
            Piece::Joint => 1,
        }
    }
}

/// Strip sequence for `t` whose blow-downs give `chain`, with the positions
/// of the surviving pieces.
fn splice(t: ClassTParams, chain: &[i64]) -> Result<(Vec<Piece>, Vec<usize>), MresError> {
    let strip = hj_expand(t.n * t.n, t.n * t.a - 1).expect("Wahl fraction is proper");
    let d = t.d as usize;
    for mask in 0..(1u64 << d) {
        let mut seq = vec![];
        for k in 0..d {
            if k > 0 {
                seq.push(Piece::Joint);
            }
            // bit k-th from the left, so the all-forward layout comes first
            if mask >> (d - 1 - k) & 1 == 0 {
                seq.extend(strip.iter().map(|&b| Piece::Strip(b)));
            } else {
                seq.extend(strip.iter().rev().map(|&b| Piece::Strip(b)));
            }
        }
        let mut ids: Vec<usize> = (0..seq.len()).collect();
        let mut wl: Vec<i64> = seq.iter().map(|p| p.b()).collect();
        while let Some(i) = (1..wl.len().saturating_sub(1)).find(|&i| wl[i] == 1) {
            wl[i - 1] -= 1;
            wl[i + 1] -= 1;
            wl.remove(i);
            ids.remove(i);
        }
        if wl == chain {
            return Ok((seq, ids));
        }
    }
    Err(MresError::NoSplice(chain.to_vec()))
}

fn fresh(g: &DecoratedGraph, counter: &mut usize) -> String {
    loop {
        *counter += 1;
        let id = format!("y{counter}");
        if !g.contains(&id) {
            return id;
        }
    }
}

pub fn to_mresolution(rec: &PResolutionRecord) -> Result<MResolutionRecord, MresError> {
    let mut g = rec.graph.clone();
    let mut inserted = vec![];
    let mut counter = 0;
    for comp in rec.graph.contracted_components() {
        if comp.shape != Shape::Chain {
            continue;
        }
        let chain: Vec<i64> = comp.ids.iter().map(|v| -g.w(v)).collect();
        let Ok(Some(t)) = class_t_params(&chain) else {
            continue;
        };
        if t.d == 1 {
            continue;
        }
        let (seq, ids) = splice(t, &chain)?;
        let ch = &comp.ids;
        for (v, &i) in ch.iter().zip(&ids) {
            g.set_self_int(v, -seq[i].b()).unwrap();
        }
        for j in 0..ch.len() - 1 {
            let (lo, hi) = (ids[j], ids[j + 1]);
            if hi == lo + 1 {
                continue;
            }
            g.remove_edge(&ch[j], &ch[j + 1]).unwrap();
            let mut prev = ch[j].clone();
            for p in &seq[lo + 1..hi] {
                let id = fresh(&g, &mut counter);
                let marker = match p {
                    Piece::Strip(_) => Marker::Contracted,
                    Piece::Joint => Marker::Kept,
                };
                g.add_curve(&id, -p.b(), marker).unwrap();
                g.add_edge(&prev, &id, 1).unwrap();
                inserted.push(id.clone());
                prev = id;
            }
            g.add_edge(&prev, &ch[j + 1], 1).unwrap();
        }
    }
    Ok(MResolutionRecord {
        source: rec.clone(),
        graph: g,
        inserted,
    })
}

impl MResolutionRecord {
    /// Blows the inserted curves back down, restoring the source markers.
    pub fn blow_down_inserted(&self) -> DecoratedGraph {
        let mut g = self.graph.clone();
        while let Some(v) = self.inserted.iter().find(|v| g.contains(v) && g.w(v) == -1) {
            g.blow_down_any(v).unwrap();
        }
        for (v, c) in self.source.graph.curves() {
            if g.contains(v) {
                g.set_marker(v, c.marker).unwrap();
            }
        }
        g
    }

    pub fn wahl_count(&self) -> usize {
        self.graph
            .contracted_components()
            .iter()
            .filter(|c| {
                c.shape == Shape::Chain && {
                    let chain: Vec<i64> = c.ids.iter().map(|v| -self.graph.w(v)).collect();
                    matches!(class_t_params(&chain), Ok(Some(t)) if t.d == 1)
                }
            })
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::singularity::Family;

    fn chains(g: &DecoratedGraph) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = g
            .contracted_components()
            .iter()
            .map(|c| c.ids.iter().map(|x| -g.w(x)).collect())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn o7_3_3_splits_into_two_wahl_chains() {
        let cat = Catalog::builtin();
        let rec = cat.lookup(Family::O7, 3, 3).unwrap().record(3).unwrap();
        let m = to_mresolution(&rec).unwrap();
        let g = &m.graph;
        // printed chain -5, -2, -1, -5, -2 running from b1 to t1
        let path = ["b1", "y1", "y2", "c", "t1"];
        let w: Vec<i64> = path.iter().map(|v| g.w(v)).collect();
        assert_eq!(w, vec![-5, -2, -1, -5, -2]);
        for p in path.windows(2) {
            assert_eq!(g.mult(p[0], p[1]), 1);
        }
        assert_eq!(g.marker("y2"), Marker::Kept);
        assert_eq!(m.wahl_count(), 2);
        assert_eq!(m.blow_down_inserted(), rec.graph);
    }

    #[test]
    fn wahl_only_records_are_unchanged() {
        let cat = Catalog::builtin();
        let rec = cat.lookup(Family::T1, 5, 4).unwrap().record(5).unwrap();
        let m = to_mresolution(&rec).unwrap();
        assert_eq!(m.graph, rec.graph);
        assert!(m.inserted.is_empty());
    }

    #[test]
    fn closure_and_count_over_catalog() {
        let cat = Catalog::builtin();
        for e in &cat.entries {
            let n = e.n.samples()[0];
            let Ok(rec) = e.record(n) else { continue };
            let m = to_mresolution(&rec).unwrap();
            assert_eq!(m.blow_down_inserted(), rec.graph, "{}", e.key());
            let expect: u64 = rec
                .singularities
                .iter()
                .map(|k| match k {
                    crate::singularity::SingularityKind::ClassT(t) => t.d,
                    _ => 0,
                })
                .sum();
            assert_eq!(m.wahl_count() as u64, expect, "{}", e.key());
            for c in chains(&m.graph) {
                if c.iter().any(|&b| b > 2) {
                    assert!(
                        matches!(class_t_params(&c), Ok(Some(t)) if t.d == 1),
                        "{c:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn d3_splice() {
        // [3,2,3] = T(3,2,1): three [4] strips
        let t = class_t_params(&[3, 2, 3]).unwrap().unwrap();
        let (seq, ids) = splice(t, &[3, 2, 3]).unwrap();
        assert_eq!(seq.len(), 5);
        assert_eq!(ids, vec![0, 2, 4]);
    }
}
