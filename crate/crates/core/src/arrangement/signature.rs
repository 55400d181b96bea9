//! Iterated color refinement on the bipartite line/point incidence graph.
//!
//! Colors start from (side, incidence degree) and are refined by the sorted
//! multiset of neighbor colors until the partition stabilizes. New color ids
//! are assigned by sorting the refinement keys, so the resulting signature
//! does not depend on line order or on the coordinate system; equal
//! signatures are a necessary condition for lattice isomorphism.

use std::collections::BTreeMap;

use crate::arrangement::Arrangement;
use crate::scalar::Field;

pub(super) fn refinement_signature<K: Field>(arr: &Arrangement<K>) -> String {
    let d = arr.degree();
    let lattice = arr.intersection_lattice();
    let n_nodes = d + lattice.points.len();

    // Adjacency: line i <-> point j when line i passes through point j.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
    for (pj, ip) in lattice.points.iter().enumerate() {
        for &li in &ip.incident {
            adj[li].push(d + pj);
            adj[d + pj].push(li);
        }
    }

    // Round 0: color by side and degree.
    let mut keys: Vec<String> = (0..n_nodes)
        .map(|v| {
            let side = if v < d { "L" } else { "P" };
            format!("{side}{}", adj[v].len())
        })
        .collect();
    let (mut colors, mut histogram) = assign(&keys);
    let mut signature = format!("r0:{histogram}");
    let mut distinct = histogram.matches(',').count() + 1;

    for round in 1..=n_nodes {
        keys = (0..n_nodes)
            .map(|v| {
                let mut neigh: Vec<usize> = adj[v].iter().map(|&u| colors[u]).collect();
                neigh.sort_unstable();
                format!(
                    "{}|{}",
                    colors[v],
                    neigh.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
                )
            })
            .collect();
        let (new_colors, new_histogram) = assign(&keys);
        let new_distinct = new_histogram.matches(',').count() + 1;
        colors = new_colors;
        histogram = new_histogram;
        signature.push_str(&format!(";r{round}:{histogram}"));
        if new_distinct == distinct {
            break;
        }
        distinct = new_distinct;
    }
    signature
}

/// Maps each key to a canonical small id (by sorted key order) and returns
/// the per-node ids plus a sorted `key=count` histogram string.
fn assign(keys: &[String]) -> (Vec<usize>, String) {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for k in keys {
        *counts.entry(k).or_insert(0) += 1;
    }
    let ids: BTreeMap<&str, usize> =
        counts.keys().enumerate().map(|(i, &k)| (k, i)).collect();
    let colors = keys.iter().map(|k| ids[k.as_str()]).collect();
    let histogram = counts
        .iter()
        .map(|(k, c)| format!("{k}={c}"))
        .collect::<Vec<_>>()
        .join(",");
    (colors, histogram)
}
