//! The motivic class U(G) in `Z[T]`: the class of the affine graph
//! hypersurface complement in the Grothendieck ring, with T the torus class
//! (L - 1). U is multiplicative over disjoint unions and one-point joins,
//! with the affine line as the class of a single edge.
//!
//! A rewrite engine reduces generalized series-parallel graphs to closed
//! form; closed-form family generators cover bananas, lemons, polygon chains
//! and lemonades; the multiplied-edge theorem gives U of any edge
//! multiplication from U(G), U(G-e), U(G/e).

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, MultiGraph};
use crate::poly::{binomial, series_solve_order2, Int, IntPoly, Ring, SeriesKind, SeriesTrunc};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Computed entirely by reduction rules; exact.
    RuleDerived,
    /// Residues were filled in by point-count interpolation.
    Interpolated,
    /// Irreducible residue remains; `value` holds only the peeled factor.
    Unknown,
}

#[derive(Debug, Clone)]
pub struct MotivicClass {
    pub value: IntPoly,
    pub provenance: Provenance,
    pub rule_trace: Vec<String>,
    /// Graphs the rule engine could not reduce; U(G) = value * prod U(residue).
    pub residues: Vec<MultiGraph>,
}

impl MotivicClass {
    pub fn rule_derived(value: IntPoly) -> Self {
        MotivicClass {
            value,
            provenance: Provenance::RuleDerived,
            rule_trace: Vec::new(),
            residues: Vec::new(),
        }
    }
}

/// One applicable reduction step.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Step {
    SplitComponents,
    CutVertex(usize),
    Loop(usize),
    Bridge(usize),
    /// Degree-2 vertex together with its two incident edges.
    Series(usize, usize, usize),
    /// A parallel pair of non-loop edges.
    Parallel(usize, usize),
}

impl Step {
    fn describe(&self) -> String {
        match self {
            Step::SplitComponents => "components".into(),
            Step::CutVertex(v) => format!("cut v{v}"),
            Step::Loop(e) => format!("loop e{e}"),
            Step::Bridge(e) => format!("bridge e{e}"),
            Step::Series(v, a, b) => format!("series v{v} (e{a},e{b})"),
            Step::Parallel(a, b) => format!("parallel (e{a},e{b})"),
        }
    }
}

/// U(G) by reduction to a fixed point over the generalized series-parallel
/// rules. Graphs outside that closure come back with `Unknown` provenance and
/// the irreducible residues attached.
pub fn motivic_class(g: &MultiGraph) -> MotivicClass {
    reduce(g, &mut None)
}

/// Same engine, but applicable rules are chosen uniformly at random from the
/// seeded generator; reducible graphs yield the identical polynomial for
/// every seed (rule confluence).
pub fn motivic_class_seeded(g: &MultiGraph, seed: u64) -> MotivicClass {
    use rand::SeedableRng;
    let mut rng = Some(ChaCha8Rng::seed_from_u64(seed));
    reduce(g, &mut rng)
}

fn reduce(g: &MultiGraph, rng: &mut Option<ChaCha8Rng>) -> MotivicClass {
    let mut trace = Vec::new();
    let (value, residues) = reduce_inner(g, rng, &mut trace);
    let provenance =
        if residues.is_empty() { Provenance::RuleDerived } else { Provenance::Unknown };
    MotivicClass { value, provenance, rule_trace: trace, residues }
}

fn reduce_inner(
    g: &MultiGraph,
    rng: &mut Option<ChaCha8Rng>,
    trace: &mut Vec<String>,
) -> (IntPoly, Vec<MultiGraph>) {
    if g.edge_count() == 0 {
        // A^0 minus nothing is a point; isolated vertices contribute nothing.
        return (IntPoly::one_elem(), Vec::new());
    }
    let steps = applicable_steps(g);
    let step = match steps {
        Some(ref list) => match rng {
            Some(r) => list[r.gen_range(0..list.len())].clone(),
            None => list[0].clone(),
        },
        None => {
            // no rule applies: irreducible residue for the counting fallback
            return (IntPoly::one_elem(), vec![g.clone()]);
        }
    };
    trace.push(step.describe());
    match step {
        Step::SplitComponents => {
            let mut value = IntPoly::one_elem();
            let mut residues = Vec::new();
            for part in component_subgraphs(g) {
                let (v, mut r) = reduce_inner(&part, rng, trace);
                value = value.mul(&v);
                residues.append(&mut r);
            }
            (value, residues)
        }
        Step::CutVertex(v) => {
            let mut value = IntPoly::one_elem();
            let mut residues = Vec::new();
            for piece in split_at_cut_vertex(g, v) {
                let (val, mut r) = reduce_inner(&piece, rng, trace);
                value = value.mul(&val);
                residues.append(&mut r);
            }
            (value, residues)
        }
        Step::Loop(e) => {
            let (rest, _) = g.delete(e).expect("loop edge exists");
            let (v, r) = reduce_inner(&rest, rng, trace);
            (IntPoly::var().mul(&v), r)
        }
        Step::Bridge(e) => {
            let (rest, _) = g.delete(e).expect("bridge edge exists");
            let (v, r) = reduce_inner(&rest, rng, trace);
            (IntPoly::t_plus_one().mul(&v), r)
        }
        Step::Series(_, _, e2) => {
            // suppress the degree-2 vertex: contracting either incident edge
            // undoes the subdivision, which divides the class by T + 1
            let (suppressed, _) = g.contract(e2).expect("series edge exists");
            let (v, r) = reduce_inner(&suppressed, rng, trace);
            (IntPoly::t_plus_one().mul(&v), r)
        }
        Step::Parallel(e, e2) => {
            let (base, ren) = g.delete(e2).expect("parallel edge exists");
            let e_in_base = ren.new_id(e).expect("other edge survives");
            // the doubled edge may be a bridge of the base graph
            if base.classify_edge(e_in_base).expect("edge exists") == EdgeKind::Bridge {
                let (both_gone, _) = base.delete(e_in_base).expect("edge exists");
                let (v, r) = reduce_inner(&both_gone, rng, trace);
                let factor = IntPoly::var().mul(&IntPoly::t_plus_one());
                return (factor.mul(&v), r);
            }
            let (del, _) = base.delete(e_in_base).expect("edge exists");
            let (con, _) = base.contract(e_in_base).expect("edge exists");
            let (v_base, r_base) = reduce_inner(&base, rng, trace);
            let (v_del, r_del) = reduce_inner(&del, rng, trace);
            let (v_con, r_con) = reduce_inner(&con, rng, trace);
            if !(r_base.is_empty() && r_del.is_empty() && r_con.is_empty()) {
                // a linear combination of stuck branches has no product form;
                // surface the whole graph for the point-count fallback
                return (IntPoly::one_elem(), vec![g.clone()]);
            }
            let t = IntPoly::var();
            let value = IntPoly::from_i64(&[-1, 1])
                .mul(&v_base)
                .add(&t.mul(&v_del))
                .add(&IntPoly::t_plus_one().mul(&v_con));
            (value, Vec::new())
        }
    }
}

/// Every applicable reduction, in the deterministic priority order:
/// components, loops, bridges, series vertices, cut vertices, parallel pairs.
/// `None` when the graph is irreducible.
fn applicable_steps(g: &MultiGraph) -> Option<Vec<Step>> {
    let mut steps = Vec::new();
    if component_subgraphs(g).len() >= 2 {
        steps.push(Step::SplitComponents);
    }
    for e in g.edge_ids() {
        if g.classify_edge(e).expect("edge in range") == EdgeKind::Loop {
            steps.push(Step::Loop(e));
        }
    }
    for e in g.edge_ids() {
        if g.classify_edge(e).expect("edge in range") == EdgeKind::Bridge {
            steps.push(Step::Bridge(e));
        }
    }
    for v in 0..g.vertex_count() {
        let incident: Vec<usize> = g
            .edge_ids()
            .filter(|&e| {
                let (a, b) = g.endpoints(e).expect("edge in range");
                a == v || b == v
            })
            .collect();
        if incident.len() == 2 {
            let loop_free = incident.iter().all(|&e| {
                let (a, b) = g.endpoints(e).expect("edge in range");
                a != b
            });
            if loop_free {
                steps.push(Step::Series(v, incident[0], incident[1]));
            }
        }
    }
    for v in 0..g.vertex_count() {
        if split_at_cut_vertex(g, v).len() >= 2 {
            steps.push(Step::CutVertex(v));
        }
    }
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e).expect("edge in range");
        if a == b {
            continue;
        }
        for e2 in e + 1..=g.edge_count() {
            let (c, d) = g.endpoints(e2).expect("edge in range");
            if (a, b) == (c, d) || (a, b) == (d, c) {
                steps.push(Step::Parallel(e, e2));
            }
        }
    }
    if steps.is_empty() {
        None
    } else {
        Some(steps)
    }
}

/// Edge-bearing connected components as standalone graphs.
fn component_subgraphs(g: &MultiGraph) -> Vec<MultiGraph> {
    g.components()
        .into_iter()
        .filter_map(|comp| {
            let edges: Vec<usize> = g
                .edge_ids()
                .filter(|&e| {
                    let (u, _) = g.endpoints(e).expect("edge in range");
                    comp.contains(&u)
                })
                .collect();
            if edges.is_empty() {
                None
            } else {
                Some(g.edge_subgraph(&edges).expect("edges valid").0)
            }
        })
        .collect()
}

/// Pieces of a one-point join at `v`: maximal edge groups connected away
/// from `v`, plus each loop at `v` on its own. Two or more pieces mean the
/// class factors as their product.
fn split_at_cut_vertex(g: &MultiGraph, v: usize) -> Vec<MultiGraph> {
    let mut uf = crate::graph::UnionFind::new(g.vertex_count());
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e).expect("edge in range");
        if a != v && b != v && a != b {
            uf.union(a, b);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut side_of: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e).expect("edge in range");
        if a == v && b == v {
            groups.push(vec![e]);
        } else if a == v || b == v {
            let other = if a == v { b } else { a };
            let root = uf.find(other);
            let idx = *side_of.entry(root).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[idx].push(e);
        }
    }
    if groups.len() < 2 {
        return Vec::new();
    }
    // attach the edges that avoid v to the side holding their component
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e).expect("edge in range");
        if a == v || b == v {
            continue;
        }
        let root = uf.find(a);
        match side_of.get(&root) {
            Some(&idx) => groups[idx].push(e),
            // a component not touching v at all: leave it to SplitComponents
            None => return Vec::new(),
        }
    }
    groups
        .into_iter()
        .map(|edges| g.edge_subgraph(&edges).expect("edges valid").0)
        .collect()
}

// ----------------------------------------------------------------------
// multiplied edges
// ----------------------------------------------------------------------

/// Base classes entering the multiplied-edge formulas.
#[derive(Debug, Clone)]
pub struct ClassTriple {
    pub class: IntPoly,
    pub deleted: IntPoly,
    pub contracted: IntPoly,
}

/// Rule-derived base triple (U(G), U(G-e), U(G/e)) for a regular edge.
pub fn base_triple(g: &MultiGraph, e: usize) -> Result<ClassTriple> {
    if g.classify_edge(e)? != EdgeKind::Regular {
        return Err(Error::EdgeKindMismatch { edge: e, expected: "Regular" });
    }
    let whole = motivic_class(g);
    let del = motivic_class(&g.delete(e)?.0);
    let con = motivic_class(&g.contract(e)?.0);
    for c in [&whole, &del, &con] {
        if c.provenance != Provenance::RuleDerived {
            return Err(Error::ClassUnavailable("base classes must be rule-derived"));
        }
    }
    Ok(ClassTriple { class: whole.value, deleted: del.value, contracted: con.value })
}

/// The exact coefficient triple (f_m, g_m, h_m): f_m = (T^m - (-1)^m)/(T+1),
/// g_m = (T^m + (-1)^m T)/(T+1), h_m = m T^(m-1) - f_m, by exact division.
pub fn multiplied_edge_coefficients(m: usize) -> (IntPoly, IntPoly, IntPoly) {
    let t = IntPoly::var();
    let tp1 = IntPoly::t_plus_one();
    let sign: i64 = if m.is_multiple_of(2) { 1 } else { -1 };
    let f = t
        .pow(m as u32)
        .sub(&IntPoly::from_i64(&[sign]))
        .exact_div(&tp1)
        .expect("T+1 divides T^m - (-1)^m");
    let g = t
        .pow(m as u32)
        .add(&t.mul_int(&Int::from(sign)))
        .exact_div(&tp1)
        .expect("T+1 divides T^m + (-1)^m T");
    let h = if m == 0 {
        IntPoly::zero_elem()
    } else {
        t.pow(m as u32 - 1).mul_int(&Int::from(m)).sub(&f)
    };
    (f, g, h)
}

/// U of the graph with a regular edge replaced by m parallel copies, from a
/// supplied base triple.
pub fn multiplied_edge_class_from(bases: &ClassTriple, m: usize) -> IntPoly {
    let (f, g, h) = multiplied_edge_coefficients(m);
    f.mul(&bases.class).add(&g.mul(&bases.deleted)).add(&h.mul(&bases.contracted))
}

/// U(G with e replaced by m parallel edges) for a regular edge, closed form.
pub fn multiplied_edge_class(g: &MultiGraph, e: usize, m: usize) -> Result<MotivicClass> {
    let bases = base_triple(g, e)?;
    Ok(MotivicClass::rule_derived(multiplied_edge_class_from(&bases, m)))
}

/// Series whose m-th term is U of the m-fold multiplied edge. The edge kind
/// routes the formula: loops give T^m U(G-e), bridges the banana factor,
/// regular edges the three-term closed form.
pub fn multiplied_edge_series(
    g: &MultiGraph,
    e: usize,
    kind: EdgeKind,
    series_kind: SeriesKind,
    order: usize,
) -> Result<SeriesTrunc<IntPoly>> {
    let actual = g.classify_edge(e)?;
    if actual != kind {
        return Err(Error::EdgeKindMismatch {
            edge: e,
            expected: match kind {
                EdgeKind::Loop => "Loop",
                EdgeKind::Bridge => "Bridge",
                EdgeKind::Regular => "Regular",
            },
        });
    }
    let terms: Vec<IntPoly> = match kind {
        EdgeKind::Loop => {
            let del = require_rule_derived(&g.delete(e)?.0)?;
            (0..=order).map(|m| IntPoly::var().pow(m as u32).mul(&del)).collect()
        }
        EdgeKind::Bridge => {
            let del = require_rule_derived(&g.delete(e)?.0)?;
            (0..=order).map(|m| banana_class(m).mul(&del)).collect()
        }
        EdgeKind::Regular => {
            let bases = base_triple(g, e)?;
            (0..=order).map(|m| multiplied_edge_class_from(&bases, m)).collect()
        }
    };
    Ok(SeriesTrunc::new(series_kind, terms))
}

fn require_rule_derived(g: &MultiGraph) -> Result<IntPoly> {
    let c = motivic_class(g);
    if c.provenance != Provenance::RuleDerived {
        return Err(Error::ClassUnavailable("graph is not series-parallel reducible"));
    }
    Ok(c.value)
}

// ----------------------------------------------------------------------
// families
// ----------------------------------------------------------------------

/// Class of the m-banana: 1 for m = 0, else T (T^m - (-1)^m)/(T+1) + m T^(m-1),
/// cross-checked against the derivative form (T+1)(f_m + d/dT g_m).
pub fn banana_class(m: usize) -> IntPoly {
    if m == 0 {
        return IntPoly::one_elem();
    }
    let (f, g, _) = multiplied_edge_coefficients(m);
    let t = IntPoly::var();
    let direct = t.mul(&f).add(&t.pow(m as u32 - 1).mul_int(&Int::from(m)));
    let derivative_form = IntPoly::t_plus_one().mul(&f.add(&g.derivative()));
    assert_eq!(direct, derivative_form, "banana closed forms must agree");
    direct
}

/// Class of the lemon graph with m sections, by the order-2 recursion
/// L(m+1) = T(T+1) L(m) + T(T+1)^2 L(m-1) from seeds T+1 and T(T+1)^2,
/// asserted equal to the Fibonacci-style closed form (T+1)^(m+1) K(T).
///
/// Lemons are the building block for wheels: deleting one spoke of the
/// (n+1)-spoke wheel and splitting the rim edges produces the n-lemon, whose
/// class is a multiple of (T+1)^2, so lemon_class(n)/(T+1)^2 is the class of
/// the spoke-deleted wheel. No closed form for the wheels themselves follows,
/// because the deletion-contraction step needs the intersection class, which
/// is not determined by the graph combinatorics.
pub fn lemon_class(m: usize) -> IntPoly {
    lemon_classes(m).pop().expect("nonempty")
}

/// L(0)..L(m) in one pass.
pub fn lemon_classes(m: usize) -> Vec<IntPoly> {
    let t = IntPoly::var();
    let tp1 = IntPoly::t_plus_one();
    let series =
        series_solve_order2(&t.mul(&tp1), &t.mul(&tp1.pow(2)), &tp1, &t.mul(&tp1.pow(2)), m);
    let out: Vec<IntPoly> = series.terms().to_vec();
    for (k, val) in out.iter().enumerate() {
        assert_eq!(*val, lemon_closed_form(k), "lemon recursion vs closed form at {k}");
    }
    out
}

fn lemon_closed_form(m: usize) -> IntPoly {
    // (T+1)^(m+1) * sum_i C(m-i, i) T^(m-i)
    let mut k = IntPoly::zero_elem();
    for i in 0..=m / 2 {
        let c = binomial(m - i, i);
        k = k.add(&IntPoly::var().pow((m - i) as u32).mul_int(&c));
    }
    IntPoly::t_plus_one().pow(m as u32 + 1).mul(&k)
}

/// Class of a chain of polygons with the given side counts:
/// (T+1)^(sum r_i - 3m) * lemon_class(m).
pub fn polygon_chain_class(sides: &[usize]) -> Result<IntPoly> {
    if sides.is_empty() {
        return Err(Error::InvalidParam("a polygon chain needs at least one polygon".into()));
    }
    for &r in sides {
        if r < 3 {
            return Err(Error::InvalidParam(format!("polygon with {r} < 3 sides")));
        }
    }
    let total: usize = sides.iter().sum();
    let exponent = (total - 3 * sides.len()) as u32;
    Ok(IntPoly::t_plus_one().pow(exponent).mul(&lemon_class(sides.len())))
}

/// Coefficient triples (f_m, g_m, h_m) of the lemonade expansion through the
/// given order: all three satisfy a(m+1) = T(T+1) a(m) + T(T+1)^2 a(m-1)
/// with seeds (1, T^2-1), (0, T(T+1)), (0, (T+1)^2).
pub fn lemonade_coefficients(order: usize) -> (Vec<IntPoly>, Vec<IntPoly>, Vec<IntPoly>) {
    let t = IntPoly::var();
    let tp1 = IntPoly::t_plus_one();
    let f2 = t.mul(&tp1);
    let g2 = t.mul(&tp1.pow(2));
    let f =
        series_solve_order2(&f2, &g2, &IntPoly::one_elem(), &IntPoly::from_i64(&[-1, 0, 1]), order);
    let g = series_solve_order2(&f2, &g2, &IntPoly::zero_elem(), &t.mul(&tp1), order);
    let h = series_solve_order2(&f2, &g2, &IntPoly::zero_elem(), &tp1.pow(2), order);
    (f.terms().to_vec(), g.terms().to_vec(), h.terms().to_vec())
}

/// Ordinary series whose m-th term is U of the lemonade graph built by
/// fanning an m-lemon out of the regular edge `e`.
pub fn lemonade_series(g: &MultiGraph, e: usize, order: usize) -> Result<SeriesTrunc<IntPoly>> {
    let bases = base_triple(g, e)?;
    let (f, gg, h) = lemonade_coefficients(order);
    let terms: Vec<IntPoly> = (0..=order)
        .map(|m| {
            f[m].mul(&bases.class)
                .add(&gg[m].mul(&bases.deleted))
                .add(&h[m].mul(&bases.contracted))
        })
        .collect();
    Ok(SeriesTrunc::new(SeriesKind::Ordinary, terms))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Banana(usize),
    Lemon(usize),
    Chain(Vec<usize>),
    Lemonade { e: usize, sections: usize },
}

/// Explicit multigraph realization of the named families.
pub fn family_graph(family: &Family, base: Option<&MultiGraph>) -> Result<MultiGraph> {
    match family {
        Family::Banana(m) => {
            let mut g = MultiGraph::new();
            let u = g.add_vertex("u");
            let v = g.add_vertex("v");
            for _ in 0..*m {
                g.add_edge(u, v);
            }
            Ok(g)
        }
        Family::Lemon(m) => {
            let mut g = MultiGraph::new();
            let v0 = g.add_vertex("v0");
            let v1 = g.add_vertex("v1");
            g.add_edge(v0, v1);
            let mut prev = (v0, v1);
            for i in 1..=*m {
                let w = g.add_vertex(&format!("v{}", i + 1));
                g.add_edge(prev.0, w);
                g.add_edge(prev.1, w);
                prev = (prev.1, w);
            }
            Ok(g)
        }
        Family::Chain(sides) => {
            if sides.is_empty() {
                return Err(Error::InvalidParam("empty polygon chain".into()));
            }
            for &r in sides {
                if r < 3 {
                    return Err(Error::InvalidParam(format!("polygon with {r} < 3 sides")));
                }
            }
            let mut g = MultiGraph::new();
            let a = g.add_vertex("p0");
            let b = g.add_vertex("p1");
            g.add_edge(a, b);
            let mut shared = (a, b);
            let mut counter = 2usize;
            for &r in sides {
                // close a polygon of r sides over the shared edge with a path
                // of r - 1 new edges; the path's last edge is shared next
                let (from, to) = shared;
                let mut cur = from;
                for _ in 0..r - 2 {
                    let w = g.add_vertex(&format!("p{counter}"));
                    counter += 1;
                    g.add_edge(cur, w);
                    cur = w;
                }
                g.add_edge(cur, to);
                shared = (cur, to);
            }
            Ok(g)
        }
        Family::Lemonade { e, sections } => {
            let base =
                base.ok_or_else(|| Error::InvalidParam("lemonade needs a base graph".into()))?;
            lemonade_graph(base, *e, *sections)
        }
    }
}

/// The lemonade graph: an m-lemon fanned out from edge `e` of `g`.
pub fn lemonade_graph(g: &MultiGraph, e: usize, sections: usize) -> Result<MultiGraph> {
    let (a, b) = g.endpoints(e)?;
    if a == b {
        return Err(Error::EdgeKindMismatch { edge: e, expected: "non-loop" });
    }
    let mut out = g.clone();
    let mut prev = (a, b);
    for i in 1..=sections {
        let w = out.add_vertex(&format!("lemon{i}"));
        out.add_edge(prev.0, w);
        out.add_edge(prev.1, w);
        prev = (prev.1, w);
    }
    Ok(out)
}

// ----------------------------------------------------------------------
// Euler characteristics
// ----------------------------------------------------------------------

/// Euler characteristic of the projective hypersurface complement: U/T
/// evaluated at T = 0, i.e. the linear coefficient of U. Defined for
/// non-forests only (their classes are divisible by T).
///
/// For a one-loop graph the hypersurface is a hyperplane with Euler
/// characteristic n - 1, so the complement always has chi = 1 there.
pub fn euler_char(class: &MotivicClass) -> Result<Int> {
    if class.provenance == Provenance::Unknown {
        return Err(Error::ClassUnavailable("Euler characteristic needs a complete class"));
    }
    if class.value.coeff(0) != Int::from(0) {
        // nonzero constant term means T does not divide U: a forest
        return Err(Error::ForestInput);
    }
    Ok(class.value.coeff(1))
}

/// Exponential series of chi over the multiplied-edge family: term m is the
/// Euler characteristic of U(G with e multiplied m times).
pub fn euler_multiedge_series(g: &MultiGraph, e: usize, order: usize) -> Result<SeriesTrunc<Int>> {
    if g.classify_edge(e)? != EdgeKind::Regular {
        return Err(Error::EdgeKindMismatch { edge: e, expected: "Regular" });
    }
    if g.delete(e)?.0.is_forest() {
        return Err(Error::ForestInput);
    }
    let bases = base_triple(g, e)?;
    let chi_g = euler_char(&MotivicClass::rule_derived(bases.class.clone()))?;
    let chi_del = euler_char(&MotivicClass::rule_derived(bases.deleted.clone()))?;
    let chi_con = euler_char(&MotivicClass::rule_derived(bases.contracted.clone()))?;
    // sequence terms of (1 - e^{-s}) chi_G + chi_del + (s - 1 + e^{-s}) chi_con
    let terms: Vec<Int> = (0..=order)
        .map(|m| match m {
            0 => chi_del.clone(),
            1 => chi_g.clone(),
            _ => {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                (&chi_con - &chi_g) * Int::from(sign)
            }
        })
        .collect();
    Ok(SeriesTrunc::new(SeriesKind::Exponential, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;

    fn triangle() -> MultiGraph {
        MultiGraph::from_named_edges(&[("a", "b"), ("a", "c"), ("b", "c")])
    }

    fn k4() -> MultiGraph {
        MultiGraph::from_named_edges(&[
            ("a", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "d"),
        ])
    }

    fn ip(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn rule_engine_basics() {
        let single = MultiGraph::from_named_edges(&[("u", "v")]);
        assert_eq!(motivic_class(&single).value, ip("T + 1"));

        let tri = motivic_class(&triangle());
        assert_eq!(tri.provenance, Provenance::RuleDerived);
        assert_eq!(tri.value, ip("T^3 + 2*T^2 + T")); // T(T+1)^2

        let b2 = family_graph(&Family::Banana(2), None).unwrap();
        assert_eq!(motivic_class(&b2).value, ip("T^2 + T"));

        let k = motivic_class(&k4());
        assert_eq!(k.provenance, Provenance::Unknown);
        assert_eq!(k.residues.len(), 1);

        // edgeless
        assert_eq!(motivic_class(&MultiGraph::new()).value, IntPoly::one_elem());
    }

    #[test]
    fn two_cycle_series_reduction() {
        // series reduction of the 2-cycle hits the loop convention:
        // U = (T+1) U(loop) = (T+1) T
        let c2 = MultiGraph::from_named_edges(&[("p", "q"), ("q", "p")]);
        assert_eq!(motivic_class(&c2).value, ip("T^2 + T"));
    }

    #[test]
    fn engine_handles_joins_and_unions() {
        let tri = triangle();
        let union = tri.disjoint_union(&tri);
        assert_eq!(motivic_class(&union).value, ip("T^3 + 2*T^2 + T").pow(2));
        // one-point join of two triangles
        let join = MultiGraph::from_named_edges(&[
            ("a", "b"),
            ("a", "c"),
            ("b", "c"),
            ("c", "d"),
            ("c", "e"),
            ("d", "e"),
        ]);
        assert_eq!(motivic_class(&join).value, ip("T^3 + 2*T^2 + T").pow(2));
        // 1PI pieces inserted at the ends of a bridge: each tree edge is an
        // affine-line factor T + 1
        let bridged = MultiGraph::from_named_edges(&[
            ("a", "b"),
            ("a", "c"),
            ("b", "c"),
            ("c", "d"),
            ("d", "e"),
            ("d", "f"),
            ("e", "f"),
        ]);
        assert_eq!(
            motivic_class(&bridged).value,
            IntPoly::t_plus_one().mul(&ip("T^3 + 2*T^2 + T").pow(2))
        );
        // K4 joined with a triangle still factors the triangle out
        let mut k4_tri = k4();
        let c = 2; // vertex "c"
        let x = k4_tri.add_vertex("x");
        let y = k4_tri.add_vertex("y");
        k4_tri.add_edge(c, x);
        k4_tri.add_edge(c, y);
        k4_tri.add_edge(x, y);
        let res = motivic_class(&k4_tri);
        assert_eq!(res.provenance, Provenance::Unknown);
        assert_eq!(res.value, ip("T^3 + 2*T^2 + T"));
        assert_eq!(res.residues.len(), 1);
        assert_eq!(res.residues[0].canonical_key().unwrap(), k4().canonical_key().unwrap());
    }

    #[test]
    fn rule_confluence_under_random_orders() {
        let graphs = [
            triangle(),
            family_graph(&Family::Banana(4), None).unwrap(),
            family_graph(&Family::Lemon(3), None).unwrap(),
            family_graph(&Family::Chain(vec![4, 3, 5]), None).unwrap(),
            triangle().multiply_edge(1, 3).unwrap(),
        ];
        for g in &graphs {
            let reference = motivic_class(g).value;
            for seed in 0..10u64 {
                assert_eq!(motivic_class_seeded(g, seed).value, reference, "seed {seed} on {g}");
            }
        }
    }

    #[test]
    fn banana_values() {
        assert_eq!(banana_class(0), IntPoly::one_elem());
        assert_eq!(banana_class(1), ip("T + 1"));
        assert_eq!(banana_class(2), ip("T^2 + T"));
        assert_eq!(banana_class(3), ip("T^3 + 2*T^2 + T"));
        for m in 2..=6 {
            let g = family_graph(&Family::Banana(m), None).unwrap();
            assert_eq!(motivic_class(&g).value, banana_class(m), "banana({m})");
        }
    }

    #[test]
    fn multiplied_edge_closed_form() {
        let (f2, g2, h2) = multiplied_edge_coefficients(2);
        assert_eq!((f2, g2, h2), (ip("T - 1"), ip("T"), ip("T + 1")));
        let (f0, g0, h0) = multiplied_edge_coefficients(0);
        assert_eq!(
            (f0, g0, h0),
            (IntPoly::zero_elem(), IntPoly::one_elem(), IntPoly::zero_elem())
        );
        let (f1, g1, h1) = multiplied_edge_coefficients(1);
        assert_eq!(
            (f1, g1, h1),
            (IntPoly::one_elem(), IntPoly::zero_elem(), IntPoly::zero_elem())
        );

        for e in triangle().edge_ids() {
            for m in 0..=5 {
                let closed = multiplied_edge_class(&triangle(), e, m).unwrap().value;
                let direct = motivic_class(&triangle().multiply_edge(e, m).unwrap());
                assert_eq!(direct.provenance, Provenance::RuleDerived);
                assert_eq!(closed, direct.value, "edge {e}, m {m}");
            }
        }
    }

    #[test]
    fn multiplied_edge_series_by_kind() {
        // bridge kind on a single edge reproduces the banana classes
        let single = MultiGraph::from_named_edges(&[("u", "v")]);
        let ser = multiplied_edge_series(&single, 1, EdgeKind::Bridge, SeriesKind::Exponential, 3)
            .unwrap();
        assert_eq!(ser.term(0), &IntPoly::one_elem());
        assert_eq!(ser.term(1), &ip("T + 1"));
        assert_eq!(ser.term(2), &ip("T^2 + T"));
        assert_eq!(ser.term(3), &ip("T^3 + 2*T^2 + T"));

        // loop kind: T^m U(G - e)
        let loopy = MultiGraph::from_named_edges(&[("v", "v"), ("v", "w"), ("w", "v")]);
        let ser =
            multiplied_edge_series(&loopy, 1, EdgeKind::Loop, SeriesKind::Exponential, 4).unwrap();
        let del = motivic_class(&loopy.delete(1).unwrap().0).value;
        for m in 0..=4 {
            assert_eq!(ser.term(m), &IntPoly::var().pow(m as u32).mul(&del));
        }

        // regular kind term 1 is U(G)
        let ser =
            multiplied_edge_series(&triangle(), 3, EdgeKind::Regular, SeriesKind::Exponential, 4)
                .unwrap();
        assert_eq!(ser.term(1), &motivic_class(&triangle()).value);
        // kind mismatch is rejected
        assert!(matches!(
            multiplied_edge_series(&triangle(), 3, EdgeKind::Loop, SeriesKind::Exponential, 2),
            Err(Error::EdgeKindMismatch { .. })
        ));
    }

    #[test]
    fn lemon_family() {
        assert_eq!(lemon_class(0), ip("T + 1"));
        assert_eq!(lemon_class(1), ip("T^3 + 2*T^2 + T"));
        assert_eq!(lemon_class(2), IntPoly::var().mul(&IntPoly::t_plus_one().pow(4)));
        // engine agrees on the constructed graphs
        for m in 0..=8 {
            let g = family_graph(&Family::Lemon(m), None).unwrap();
            let c = motivic_class(&g);
            assert_eq!(c.provenance, Provenance::RuleDerived, "lemon({m})");
            assert_eq!(c.value, lemon_class(m), "lemon({m})");
        }
        // divisibility sequence: lemon(m-1) | lemon(n-1) when m | n
        for n in 1..=12usize {
            for m in 1..=n {
                if n % m == 0 {
                    assert!(
                        lemon_class(m - 1).divides(&lemon_class(n - 1)),
                        "lemon({}) should divide lemon({})",
                        m - 1,
                        n - 1
                    );
                }
            }
        }
    }

    #[test]
    fn chain_family() {
        assert_eq!(polygon_chain_class(&[3]).unwrap(), lemon_class(1));
        assert_eq!(polygon_chain_class(&[4]).unwrap(), IntPoly::t_plus_one().mul(&lemon_class(1)));
        // the square is the one-polygon chain with 4 sides
        let square = family_graph(&Family::Chain(vec![4]), None).unwrap();
        assert_eq!(square.edge_count(), 4);
        assert_eq!(motivic_class(&square).value, polygon_chain_class(&[4]).unwrap());
        // all-triangle chains are lemons
        let chain33 = family_graph(&Family::Chain(vec![3, 3]), None).unwrap();
        let lemon2 = family_graph(&Family::Lemon(2), None).unwrap();
        assert_eq!(chain33.canonical_key().unwrap(), lemon2.canonical_key().unwrap());
        assert!(polygon_chain_class(&[2, 3]).is_err());
    }

    #[test]
    fn lemonade() {
        let (f, g, h) = lemonade_coefficients(2);
        assert_eq!(f[0], IntPoly::one_elem());
        assert_eq!(
            (f[1].clone(), g[1].clone(), h[1].clone()),
            (ip("T^2 - 1"), ip("T^2 + T"), ip("T^2 + 2*T + 1"))
        );

        let ser = lemonade_series(&triangle(), 3, 3).unwrap();
        assert_eq!(ser.term(0), &motivic_class(&triangle()).value);
        // the constructed lemonade graphs stay series-parallel here
        for m in 0..=3 {
            let built = lemonade_graph(&triangle(), 3, m).unwrap();
            let c = motivic_class(&built);
            assert_eq!(c.provenance, Provenance::RuleDerived);
            assert_eq!(&c.value, ser.term(m), "lemonade section {m}");
        }
        // lemonade(G, e, 1) literally adds one triangle over e
        let one = lemonade_graph(&triangle(), 3, 1).unwrap();
        assert_eq!(one.edge_count(), 5);
    }

    #[test]
    fn non_forest_classes_are_divisible_by_t() {
        let graphs = [
            triangle(),
            k4().delete(1).unwrap().0,
            family_graph(&Family::Banana(4), None).unwrap(),
            family_graph(&Family::Lemon(3), None).unwrap(),
            triangle().multiply_edge(2, 3).unwrap(),
        ];
        for g in graphs {
            assert!(!g.is_forest());
            let class = motivic_class(&g);
            assert_eq!(class.provenance, Provenance::RuleDerived);
            assert!(IntPoly::var().divides(&class.value), "{g}");
        }
    }

    #[test]
    fn euler_characteristics() {
        let tri = motivic_class(&triangle());
        assert_eq!(euler_char(&tri).unwrap(), Int::from(1));
        let b2 = motivic_class(&family_graph(&Family::Banana(2), None).unwrap());
        assert_eq!(euler_char(&b2).unwrap(), Int::from(1));
        let b4 = motivic_class(&family_graph(&Family::Banana(4), None).unwrap());
        assert_eq!(euler_char(&b4).unwrap(), Int::from(-1));
        // forests are rejected
        let tree = motivic_class(&MultiGraph::from_named_edges(&[("u", "v")]));
        assert_eq!(euler_char(&tree), Err(Error::ForestInput));
    }

    #[test]
    fn euler_series_matches_classes() {
        let graphs = [
            family_graph(&Family::Banana(3), None).unwrap(),
            family_graph(&Family::Banana(4), None).unwrap(),
            triangle().multiply_edge(3, 2).unwrap(),
            family_graph(&Family::Lemon(2), None).unwrap(),
        ];
        for g in &graphs {
            let e = g
                .edge_ids()
                .find(|&e| {
                    g.classify_edge(e).unwrap() == EdgeKind::Regular
                        && !g.delete(e).unwrap().0.is_forest()
                })
                .expect("a regular edge with non-forest deletion");
            let ser = euler_multiedge_series(g, e, 5).unwrap();
            for m in 0..=5 {
                let class = multiplied_edge_class(g, e, m).unwrap();
                assert_eq!(ser.term(m), &euler_char(&class).unwrap(), "graph {g} edge {e} m {m}");
            }
        }
    }

    #[test]
    fn lemonade_euler_terms_vanish() {
        let b3 = family_graph(&Family::Banana(3), None).unwrap();
        let ser = lemonade_series(&b3, 1, 6).unwrap();
        let chi = |p: &IntPoly| euler_char(&MotivicClass::rule_derived(p.clone())).unwrap();
        let chi_g = chi(&motivic_class(&b3).value);
        let chi_con = chi(&motivic_class(&b3.contract(1).unwrap().0).value);
        assert_eq!(chi(ser.term(1)), chi_con.clone() - chi_g);
        for m in 2..=6 {
            assert_eq!(chi(ser.term(m)), Int::from(0), "section {m}");
        }
    }
}
