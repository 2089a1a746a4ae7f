//! Central fiber of the compactified smoothing: the M-resolution, a (-1)
//! framework curve at the end of each arm, the dual arm chains and the
//! central boundary curve of weight `n - 3`.

use crate::contfrac::hj_dual_chain;
use crate::curvegraph::{DecoratedGraph, Marker, Shape};
use crate::mres::{to_mresolution, MResolutionRecord, MresError};
use crate::presolve::PResolutionRecord;
use crate::singularity::{class_t_params, ToiDescriptor, ARM_PREFIX};

/// Name of the central boundary curve.
pub const NODE: &str = "N";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactifiedGraph {
    pub base: ToiDescriptor,
    pub graph: DecoratedGraph,
    /// `N` followed by the dual chains, arm by arm, outermost first.
    pub boundary: Vec<String>,
    pub framework: Vec<String>,
    pub wahl: Vec<Vec<String>>,
}

fn is_wahl_chain(g: &DecoratedGraph, ids: &[String]) -> bool {
    let chain: Vec<i64> = ids.iter().map(|v| -g.w(v)).collect();
    matches!(class_t_params(&chain), Ok(Some(t)) if t.d == 1)
}

pub fn compactified_graph(m: &MResolutionRecord) -> CompactifiedGraph {
    let base = m.source.base.clone();
    let mut g = m.graph.clone();
    let mut wahl = vec![];
    for comp in m.graph.contracted_components() {
        if comp.shape == Shape::Chain && is_wahl_chain(&g, &comp.ids) {
            wahl.push(comp.ids);
        } else {
            for v in &comp.ids {
                g.set_marker(v, Marker::Kept).unwrap();
            }
        }
    }
    g.add_curve(NODE, base.n - 3, Marker::Boundary).unwrap();
    let mut boundary = vec![NODE.to_string()];
    let mut framework = vec![];
    for (pre, arm) in ARM_PREFIX.iter().zip(base.family.arms()) {
        let end = format!("{pre}{}", arm.len());
        let dual = hj_dual_chain(arm).expect("arms are proper chains");
        let f = format!("f{pre}");
        g.add_curve(&f, -1, Marker::Kept).unwrap();
        g.add_edge(&end, &f, 1).unwrap();
        framework.push(f.clone());
        let mut prev = f;
        for j in (1..=dual.len()).rev() {
            let v = format!("d{pre}{j}");
            g.add_curve(&v, -dual[j - 1], Marker::Boundary).unwrap();
            g.add_edge(&prev, &v, 1).unwrap();
            boundary.push(v.clone());
            prev = v;
        }
        g.add_edge(&prev, NODE, 1).unwrap();
    }
    CompactifiedGraph {
        base,
        graph: g,
        boundary,
        framework,
        wahl,
    }
}

/// M-resolution followed by the compactification.
pub fn compactify_record(rec: &PResolutionRecord) -> Result<CompactifiedGraph, MresError> {
    Ok(compactified_graph(&to_mresolution(rec)?))
}

impl CompactifiedGraph {
    /// Dual chain of arm `k` ordered from the node outward.
    pub fn dual_arm(&self, k: usize) -> Vec<String> {
        let pre = ARM_PREFIX[k];
        let mut v: Vec<String> = self
            .boundary
            .iter()
            .filter(|b| b.starts_with(&format!("d{pre}")))
            .cloned()
            .collect();
        v.sort_by_key(|b| b[2..].parse::<usize>().unwrap());
        v
    }

    /// Graph with boundary and framework removed.
    pub fn interior(&self) -> DecoratedGraph {
        let mut g = self.graph.clone();
        for v in self.boundary.iter().chain(&self.framework) {
            g.remove_curve(v).unwrap();
        }
        g
    }
}
