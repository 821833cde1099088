//! Tutte polynomial, Tutte-Grothendieck specializations, and the
//! multiplied-edge formulas and generating series.

use std::collections::HashMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{CanonicalKey, EdgeKind, MultiGraph, MAX_GUARDED_EDGES};
use crate::poly::{BiPoly, Int, IntPoly, Rat, Ring, SeriesKind, SeriesTrunc};

/// Subset-scan guard: 2^#E states.
const MAX_STATES_EDGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuttePoly {
    pub value: BiPoly,
}

/// Memo table for the deletion-contraction recursion, keyed on isomorphism
/// classes. Reusable across calls.
#[derive(Default)]
pub struct TutteCache {
    map: HashMap<CanonicalKey, BiPoly>,
}

/// Tutte polynomial by the four-rule deletion-contraction recursion with
/// memoization on canonical keys.
pub fn tutte(g: &MultiGraph) -> Result<TuttePoly> {
    let mut cache = TutteCache::default();
    tutte_with_cache(g, &mut cache)
}

pub fn tutte_with_cache(g: &MultiGraph, cache: &mut TutteCache) -> Result<TuttePoly> {
    if g.edge_count() > MAX_GUARDED_EDGES {
        return Err(Error::SizeGuard {
            what: "Tutte recursion",
            limit: MAX_GUARDED_EDGES,
            actual: g.edge_count(),
        });
    }
    let value = tutte_rec(g, cache)?;
    debug_assert!(value.coeffs_nonnegative());
    Ok(TuttePoly { value })
}

fn tutte_rec(g: &MultiGraph, cache: &mut TutteCache) -> Result<BiPoly> {
    if g.edge_count() == 0 {
        return Ok(BiPoly::one_elem());
    }
    let key = g.canonical_key()?;
    if let Some(hit) = cache.map.get(&key) {
        return Ok(hit.clone());
    }
    // prefer a regular edge so bridge/loop runs strip in one pass
    let mut edge = g.edge_count();
    for e in g.edge_ids() {
        if g.classify_edge(e)? == EdgeKind::Regular {
            edge = e;
            break;
        }
    }
    let value = match g.classify_edge(edge)? {
        EdgeKind::Loop => {
            let (contracted, _) = g.contract(edge)?;
            BiPoly::y().mul(&tutte_rec(&contracted, cache)?)
        }
        EdgeKind::Bridge => {
            let (deleted, _) = g.delete(edge)?;
            BiPoly::x().mul(&tutte_rec(&deleted, cache)?)
        }
        EdgeKind::Regular => {
            let (deleted, _) = g.delete(edge)?;
            let (contracted, _) = g.contract(edge)?;
            tutte_rec(&deleted, cache)?.add(&tutte_rec(&contracted, cache)?)
        }
    };
    cache.map.insert(key, value.clone());
    Ok(value)
}

/// Brute-force sum over all edge subsets with V(gamma) = V(G): the oracle
/// for the recursion.
pub fn tutte_states(g: &MultiGraph) -> Result<TuttePoly> {
    let ne = g.edge_count();
    if ne > MAX_STATES_EDGES {
        return Err(Error::SizeGuard {
            what: "Tutte states sum",
            limit: MAX_STATES_EDGES,
            actual: ne,
        });
    }
    let b0 = g.stats().b0 as i64;
    let nv = g.vertex_count() as i64;
    let xm1 = BiPoly::x().sub(&BiPoly::one_elem());
    let ym1 = BiPoly::y().sub(&BiPoly::one_elem());
    let mut total = BiPoly::zero_elem();
    for mask in 0u64..(1u64 << ne) {
        let mut uf = crate::graph::UnionFind::new(g.vertex_count());
        let mut edge_count = 0i64;
        for e in 1..=ne {
            if mask & (1 << (e - 1)) != 0 {
                let (u, v) = g.endpoints(e)?;
                uf.union(u, v);
                edge_count += 1;
            }
        }
        let gb0 = uf.component_count() as i64;
        let gb1 = edge_count - nv + gb0;
        let term = xm1.pow((gb0 - b0) as u32).mul(&ym1.pow(gb1 as u32));
        total = total.add(&term);
    }
    Ok(TuttePoly { value: total })
}

/// Tutte-Grothendieck specialization with exact rational weights: returns
/// gamma^b0 alpha^(V-b0) beta^b1 * T(gamma*x/alpha, y/beta) with x, y left
/// symbolic, asserted to clear to integer coefficients.
pub fn tg_invariant(g: &MultiGraph, alpha: &Rat, beta: &Rat, gamma: &Rat) -> Result<BiPoly> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::InvalidParam("alpha and beta must be nonzero".into()));
    }
    let t = tutte(g)?;
    let stats = g.stats();
    let pre = rat_pow(gamma, stats.b0)
        * rat_pow(alpha, g.vertex_count() - stats.b0)
        * rat_pow(beta, stats.b1);
    let sx = gamma / alpha;
    let sy = beta.recip();
    t.value.scaled(&pre, &sx, &sy)
}

fn rat_pow(base: &Rat, e: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// Fully-rational evaluation of the specialization, for cross-checks at
/// sample points (chromatic at fixed lambda, Jones-style substitutions).
pub fn tg_eval(
    g: &MultiGraph,
    alpha: &Rat,
    beta: &Rat,
    gamma: &Rat,
    x: &Rat,
    y: &Rat,
) -> Result<Rat> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::InvalidParam("alpha and beta must be nonzero".into()));
    }
    let t = tutte(g)?;
    let stats = g.stats();
    let pre = rat_pow(gamma, stats.b0)
        * rat_pow(alpha, g.vertex_count() - stats.b0)
        * rat_pow(beta, stats.b1);
    Ok(pre * t.value.eval_rat(&(gamma * x / alpha), &(y / beta)))
}

/// Raw Jones-style substitution: (-1)^w t^((v_minus - v_plus + 3w)/4) *
/// T(-t, -1/t). The caller supplies the writhe and checkerboard vertex
/// counts; the quarter-power exponent must come out integral.
pub fn jones_substitution(
    g: &MultiGraph,
    writhe: i64,
    v_plus: i64,
    v_minus: i64,
    t: &Rat,
) -> Result<Rat> {
    if t.is_zero() {
        return Err(Error::InvalidParam("t must be nonzero".into()));
    }
    let num = v_minus - v_plus + 3 * writhe;
    if num % 4 != 0 {
        return Err(Error::InvalidParam(format!(
            "exponent ({v_minus} - {v_plus} + 3*{writhe})/4 is not an integer"
        )));
    }
    let tut = tutte(g)?;
    let val = tut.value.eval_rat(&-t.clone(), &-t.recip());
    let mut acc = if writhe % 2 == 0 { val } else { -val };
    let e = num / 4;
    for _ in 0..e.unsigned_abs() {
        if e > 0 {
            acc *= t;
        } else {
            acc /= t;
        }
    }
    Ok(acc)
}

/// Chromatic polynomial (-1)^(V-b0) lambda^b0 T(1 - lambda, 0).
pub fn chromatic(g: &MultiGraph) -> Result<IntPoly> {
    let t = tutte(g)?;
    let stats = g.stats();
    let x = IntPoly::from_i64(&[1, -1]); // 1 - lambda
    let spec = t.value.eval_polys(&x, &IntPoly::zero_elem());
    let signed = if (g.vertex_count() - stats.b0) % 2 == 1 { spec.neg() } else { spec };
    Ok(signed.shift(stats.b0))
}

/// Direct proper-coloring count, the oracle for `chromatic`.
pub fn count_proper_colorings(g: &MultiGraph, colors: u64) -> Int {
    let nv = g.vertex_count();
    if nv == 0 {
        return Int::one();
    }
    if colors == 0 {
        return Int::zero();
    }
    let mut count = Int::zero();
    let mut assignment = vec![0u64; nv];
    'outer: loop {
        let proper = g.edge_ids().all(|e| {
            let (u, v) = g.endpoints(e).expect("edge in range");
            assignment[u] != assignment[v]
        });
        if proper {
            count += 1;
        }
        for slot in assignment.iter_mut() {
            *slot += 1;
            if *slot < colors {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    count
}

/// Closed-form Tutte polynomial of the graph with `e` replaced by m parallel
/// copies. Regular edges use the geometric-sum formula; bridges and loops
/// route to their own closed forms.
pub fn tutte_multiedge(g: &MultiGraph, e: usize, m: usize) -> Result<TuttePoly> {
    let kind = g.classify_edge(e)?;
    let (deleted, _) = g.delete(e)?;
    let t_del = tutte(&deleted)?.value;
    let value = match kind {
        EdgeKind::Regular => {
            let (contracted, _) = g.contract(e)?;
            let t_con = tutte(&contracted)?.value;
            t_del.add(&geometric_sum_y(m).mul(&t_con))
        }
        EdgeKind::Bridge => {
            // m = 0 gives the deletion; otherwise x + y + ... + y^(m-1)
            if m == 0 {
                t_del
            } else {
                let mut factor = BiPoly::x();
                for k in 1..m {
                    factor = factor.add(&BiPoly::y().pow(k as u32));
                }
                factor.mul(&t_del)
            }
        }
        EdgeKind::Loop => BiPoly::y().pow(m as u32).mul(&t_del),
    };
    Ok(TuttePoly { value })
}

/// 1 + y + ... + y^(m-1), the exact geometric sum (y^m - 1)/(y - 1).
fn geometric_sum_y(m: usize) -> BiPoly {
    let mut acc = BiPoly::zero_elem();
    for k in 0..m {
        acc = acc.add(&BiPoly::y().pow(k as u32));
    }
    acc
}

/// Series whose m-th term is the Tutte polynomial of the m-fold multiplied
/// edge, in exponential or ordinary kind.
pub fn tutte_multiedge_series(
    g: &MultiGraph,
    e: usize,
    kind: SeriesKind,
    order: usize,
) -> Result<SeriesTrunc<BiPoly>> {
    g.endpoints(e)?;
    let mut terms = Vec::with_capacity(order + 1);
    for m in 0..=order {
        terms.push(tutte_multiedge(g, e, m)?.value);
    }
    Ok(SeriesTrunc::new(kind, terms))
}

impl TuttePoly {
    /// T(1,1): number of maximal spanning forests.
    pub fn forests(&self) -> Int {
        let one = Rat::one();
        self.value.eval_rat(&one, &one).to_integer()
    }
}
