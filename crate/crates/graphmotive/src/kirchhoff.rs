//! Kirchhoff-Symanzik polynomial and its deletion/contraction split.
//!
//! Psi(t) sums over maximal spanning forests (one spanning tree per
//! connected component) the product of the edge variables NOT in the forest,
//! so it is multilinear and homogeneous of degree b1. The monomial count is
//! cross-checked against the matrix-tree theorem on every call.

use num::Zero;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, UnionFind, MAX_GUARDED_EDGES};
use crate::poly::{EdgePoly, Int};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KirchhoffResult {
    pub psi: EdgePoly,
    /// l = b1, the degree of psi.
    pub loop_number: usize,
}

/// The pieces of Psi = t_e * F + G for a chosen edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgSplit {
    /// dPsi/dt_e, the polynomial of the deletion (in the original variables).
    pub f: EdgePoly,
    /// Psi restricted to t_e = 0, the polynomial of the contraction.
    pub g: EdgePoly,
    /// F vanishes identically iff e is a bridge.
    pub f_is_zero: bool,
    /// G vanishes identically iff e is a loop.
    pub g_is_zero: bool,
}

/// Kirchhoff polynomial by backtracking enumeration of maximal spanning
/// forests, with a matrix-tree cardinality cross-check.
pub fn psi(g: &MultiGraph) -> Result<KirchhoffResult> {
    let ne = g.edge_count();
    if ne > MAX_GUARDED_EDGES {
        return Err(Error::SizeGuard {
            what: "spanning forest enumeration",
            limit: MAX_GUARDED_EDGES,
            actual: ne,
        });
    }
    let stats = g.stats();
    let target = g.vertex_count() - stats.b0;
    let full_mask: u64 = if ne == 64 { u64::MAX } else { (1u64 << ne) - 1 };
    let mut forests: Vec<u64> = Vec::new();
    enumerate_forests(g, 1, 0, 0, target, &mut UnionFind::new(g.vertex_count()), &mut forests);

    let expected = spanning_forest_count(g);
    if Int::from(forests.len()) != expected {
        // a corrupted enumeration is caught immediately
        panic!(
            "spanning forest enumeration disagrees with matrix-tree count: {} vs {}",
            forests.len(),
            expected
        );
    }

    let mut poly = EdgePoly::zero(ne);
    for mask in forests {
        let complement = full_mask & !mask;
        let vars: Vec<usize> =
            (0..ne).filter(|i| complement & (1 << i) != 0).map(|i| i + 1).collect();
        poly = poly.add(&EdgePoly::monomial(ne, &vars, Int::from(1))?)?;
    }
    assert!(poly.all_coeffs_one(), "distinct forests produce distinct complements");
    assert!(poly.is_homogeneous_of_degree(stats.b1));
    Ok(KirchhoffResult { psi: poly, loop_number: stats.b1 })
}

fn enumerate_forests(
    g: &MultiGraph,
    edge: usize,
    chosen_mask: u64,
    chosen: usize,
    target: usize,
    uf: &mut UnionFind,
    out: &mut Vec<u64>,
) {
    if chosen == target {
        out.push(chosen_mask);
        return;
    }
    if edge > g.edge_count() || g.edge_count() - edge + 1 < target - chosen {
        return;
    }
    let (u, v) = g.endpoints(edge).expect("edge in range");
    // include, unless it closes a cycle
    if u != v {
        let mut forked = uf.clone();
        if forked.union(u, v) {
            enumerate_forests(
                g,
                edge + 1,
                chosen_mask | (1 << (edge - 1)),
                chosen + 1,
                target,
                &mut forked,
                out,
            );
        }
    }
    // exclude
    enumerate_forests(g, edge + 1, chosen_mask, chosen, target, uf, out);
}

/// Number of maximal spanning forests: product over components of a
/// Laplacian cofactor, computed exactly by fraction-free elimination.
pub fn spanning_forest_count(g: &MultiGraph) -> Int {
    let mut total = Int::from(1);
    for comp in g.components() {
        if comp.len() == 1 {
            continue;
        }
        let index_of = |v: usize| comp.iter().position(|&w| w == v).expect("vertex in component");
        let n = comp.len();
        let mut lap = vec![vec![Int::zero(); n]; n];
        for e in g.edge_ids() {
            let (u, v) = g.endpoints(e).expect("edge in range");
            if u == v || !comp.contains(&u) {
                continue;
            }
            let (i, j) = (index_of(u), index_of(v));
            lap[i][i] += 1;
            lap[j][j] += 1;
            lap[i][j] -= 1;
            lap[j][i] -= 1;
        }
        // any cofactor: drop the last row and column
        let minor: Vec<Vec<Int>> =
            lap[..n - 1].iter().map(|row| row[..n - 1].to_vec()).collect();
        total *= bareiss_determinant(minor);
    }
    total
}

fn bareiss_determinant(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::from(1);
    }
    let mut sign = Int::from(1);
    let mut prev = Int::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = val;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// F = dPsi/dt_e and G = Psi|_{t_e = 0}, with Psi = t_e * F + G checked
/// exactly. F equals Psi of the deletion and G equals Psi of the contraction
/// under the edge renumbering maps.
pub fn deletion_contraction_split(g: &MultiGraph, e: usize) -> Result<FgSplit> {
    let result = psi(g)?;
    g.endpoints(e)?;
    let f = result.psi.partial_derivative(e)?;
    let gg = result.psi.set_zero(e)?;
    let recombined = f.mul_var(e)?.add(&gg)?;
    assert_eq!(recombined, result.psi, "Psi = t_e*F + G must hold exactly");
    Ok(FgSplit { f_is_zero: f.is_zero(), g_is_zero: gg.is_zero(), f, g: gg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeKind;

    fn triangle() -> MultiGraph {
        MultiGraph::from_named_edges(&[("a", "b"), ("a", "c"), ("b", "c")])
    }

    fn banana(m: usize) -> MultiGraph {
        MultiGraph::from_named_edges(&vec![("u", "v"); m])
    }

    /// Independent oracle: scan all edge subsets for maximal spanning forests.
    fn psi_by_subset_scan(g: &MultiGraph) -> EdgePoly {
        let ne = g.edge_count();
        let stats = g.stats();
        let target = g.vertex_count() - stats.b0;
        let mut poly = EdgePoly::zero(ne);
        for mask in 0u64..(1 << ne) {
            if (mask.count_ones() as usize) != target {
                continue;
            }
            let mut uf = UnionFind::new(g.vertex_count());
            let mut acyclic = true;
            for e in 1..=ne {
                if mask & (1 << (e - 1)) != 0 {
                    let (u, v) = g.endpoints(e).unwrap();
                    if u == v || !uf.union(u, v) {
                        acyclic = false;
                        break;
                    }
                }
            }
            if !acyclic {
                continue;
            }
            let comp: Vec<usize> =
                (0..ne).filter(|i| mask & (1 << i) == 0).map(|i| i + 1).collect();
            poly = poly.add(&EdgePoly::monomial(ne, &comp, Int::from(1)).unwrap()).unwrap();
        }
        poly
    }

    #[test]
    fn triangle_psi_is_degree_one() {
        let r = psi(&triangle()).unwrap();
        assert_eq!(r.loop_number, 1);
        assert_eq!(r.psi.to_string(), "t1 + t2 + t3");
        assert_eq!(r.psi, psi_by_subset_scan(&triangle()));
    }

    #[test]
    fn banana_and_forest_psi() {
        let r = psi(&banana(2)).unwrap();
        assert_eq!(r.psi.to_string(), "t1 + t2");
        let tree = MultiGraph::from_named_edges(&[("a", "b")]);
        assert_eq!(psi(&tree).unwrap().psi, EdgePoly::one(1));
        // banana(3): complements of single-edge trees are the pairs
        let r3 = psi(&banana(3)).unwrap();
        assert_eq!(r3.psi.to_string(), "t1*t2 + t1*t3 + t2*t3");
        assert_eq!(r3.psi, psi_by_subset_scan(&banana(3)));
    }

    #[test]
    fn matches_subset_scan_on_corpus() {
        let square = MultiGraph::from_named_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
        let k4 = MultiGraph::from_named_edges(&[
            ("a", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "d"),
        ]);
        let loopy = MultiGraph::from_named_edges(&[("v", "v"), ("v", "w"), ("w", "w")]);
        for g in [square, k4, loopy, banana(4)] {
            let r = psi(&g).unwrap();
            assert_eq!(r.psi, psi_by_subset_scan(&g));
            assert_eq!(Int::from(r.psi.num_terms()), spanning_forest_count(&g));
            assert!(r.psi.is_homogeneous_of_degree(g.stats().b1));
        }
    }

    #[test]
    fn multiplicativity_over_unions() {
        let tri = triangle();
        let b2 = banana(2);
        let union = tri.disjoint_union(&b2);
        let left = psi(&tri).unwrap().psi;
        let right = psi(&b2).unwrap().psi;
        // embed in the union's variables: triangle edges 1..3, banana 4..5
        let le = left.permute_vars(&[1, 2, 3], 5).unwrap();
        let re = right.permute_vars(&[4, 5], 5).unwrap();
        assert_eq!(psi(&union).unwrap().psi, le.mul(&re).unwrap());
        // one-point join gives the same product
        let join = MultiGraph::from_named_edges(&[
            ("a", "b"),
            ("a", "c"),
            ("b", "c"),
            ("c", "x"),
            ("c", "x"),
        ]);
        assert_eq!(psi(&join).unwrap().psi, le.mul(&re).unwrap());
    }

    #[test]
    fn split_identity_and_edge_cases() {
        // triangle, e = 3: F = 1 (deletion is a spanning tree), G = t1 + t2
        let split = deletion_contraction_split(&triangle(), 3).unwrap();
        assert_eq!(split.f.drop_var(3).unwrap(), EdgePoly::one(2));
        assert_eq!(split.g.drop_var(3).unwrap().to_string(), "t1 + t2");
        assert!(!split.f_is_zero && !split.g_is_zero);

        // a bridge leaves Psi independent of its variable
        let path = MultiGraph::from_named_edges(&[("a", "b"), ("b", "c")]);
        let bridge_split = deletion_contraction_split(&path, 1).unwrap();
        assert!(bridge_split.f_is_zero);

        // a loop makes Psi divisible by its variable
        let loopy = MultiGraph::from_named_edges(&[("v", "v"), ("v", "w"), ("w", "v")]);
        assert_eq!(loopy.classify_edge(1).unwrap(), EdgeKind::Loop);
        let loop_split = deletion_contraction_split(&loopy, 1).unwrap();
        assert!(loop_split.g_is_zero);
    }

    #[test]
    fn split_matches_deletion_and_contraction_on_corpus() {
        let graphs = [
            triangle(),
            banana(3),
            MultiGraph::from_named_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]),
            MultiGraph::from_named_edges(&[
                ("a", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "d"),
            ]),
            triangle().multiply_edge(3, 2).unwrap(),
        ];
        for g in &graphs {
            for e in g.edge_ids() {
                let split = deletion_contraction_split(g, e).unwrap();
                let (del, _) = g.delete(e).unwrap();
                let (con, _) = g.contract(e).unwrap();
                // renumbering for delete/contract drops e and closes the gap
                assert_eq!(split.f.drop_var(e).unwrap(), psi(&del).unwrap().psi, "F edge {e}");
                assert_eq!(split.g.drop_var(e).unwrap(), psi(&con).unwrap().psi, "G edge {e}");
            }
        }
    }

    #[test]
    fn size_guard() {
        let big = banana(17);
        assert!(matches!(psi(&big), Err(Error::SizeGuard { .. })));
    }
}
