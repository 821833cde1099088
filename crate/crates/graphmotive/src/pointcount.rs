//! Independent counting oracle: exact numbers of F_q points of affine graph
//! hypersurface complements, Lagrange interpolation to candidate classes,
//! and the counting-level deletion-contraction verification.
//!
//! Zeros are counted by last-variable elimination on Psi = t_i F + G: a point
//! of the remaining coordinates contributes one root when F differs from
//! zero, q roots when F and G both vanish, none otherwise.

use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::kirchhoff;
use crate::motivic::{motivic_class, MotivicClass, Provenance};
use crate::poly::{EdgePoly, Int, IntPoly, Rat};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy)]
pub struct CountOptions {
    /// Maximum number of elementary point evaluations.
    pub budget: u64,
    /// Run the chunked map-reduce in parallel.
    pub parallel: bool,
    /// Force the eliminated variable (1-based); by default the variable
    /// minimizing max(#F monomials, #G monomials) is chosen.
    pub split_var: Option<usize>,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { budget: DEFAULT_BUDGET, parallel: true, split_var: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountResult {
    pub q: u64,
    pub n: usize,
    /// Points with Psi != 0.
    pub complement_count: u64,
    /// q^n - complement_count.
    pub zero_count: u64,
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(q: u64) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::NotPrime(q))
    }
}

fn pow_u64(q: u64, e: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(q).expect("point count fits in u64");
    }
    acc
}

/// Exact count of F_q points of the complement of {psi = 0} in A^n.
pub fn count_complement(psi: &EdgePoly, q: u64, opts: &CountOptions) -> Result<CountResult> {
    check_prime(q)?;
    let n = psi.nvars();
    if n == 0 {
        let nonzero = psi.eval_mod_p(&[], q)? != 0;
        return Ok(CountResult {
            q,
            n,
            complement_count: nonzero as u64,
            zero_count: !nonzero as u64,
        });
    }
    let needed = (q as u128).pow(n as u32 - 1);
    if needed > opts.budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget: opts.budget });
    }
    let var = match opts.split_var {
        Some(v) => {
            if v == 0 || v > n {
                return Err(Error::VariableOutOfRange { index: v, nvars: n });
            }
            v
        }
        None => best_split_var(psi),
    };
    let f = psi.partial_derivative(var)?.compile_mod_p(q);
    let g = psi.set_zero(var)?.compile_mod_p(q);
    // free variable slots, skipping the eliminated one
    let slots: Vec<usize> = (0..n).filter(|&i| i != var - 1).collect();
    let total = needed as u64;
    let zero_count = chunked_sum(total, opts.parallel, |start, end| {
        let mut point = vec![0u64; n];
        decode_point(start, q, &slots, &mut point);
        let mut zeros: u64 = 0;
        for _ in start..end {
            let fv = eval_compiled(&f, &point, q);
            if fv != 0 {
                zeros += 1;
            } else if eval_compiled(&g, &point, q) == 0 {
                zeros += q;
            }
            advance_point(q, &slots, &mut point);
        }
        zeros
    });
    let space = pow_u64(q, n);
    Ok(CountResult { q, n, complement_count: space - zero_count, zero_count })
}

/// Pick the variable minimizing max(#F, #G) over the derivative/restriction
/// split.
fn best_split_var(psi: &EdgePoly) -> usize {
    let n = psi.nvars();
    let mut best = 1;
    let mut best_cost = usize::MAX;
    for var in 1..=n {
        let bit = 1u64 << (var - 1);
        let with = psi.terms().filter(|(m, _)| m & bit != 0).count();
        let without = psi.num_terms() - with;
        let cost = with.max(without);
        if cost < best_cost {
            best_cost = cost;
            best = var;
        }
    }
    best
}

fn decode_point(mut index: u64, q: u64, slots: &[usize], point: &mut [u64]) {
    for &s in slots {
        point[s] = index % q;
        index /= q;
    }
}

fn advance_point(q: u64, slots: &[usize], point: &mut [u64]) {
    for &s in slots {
        point[s] += 1;
        if point[s] < q {
            return;
        }
        point[s] = 0;
    }
}

fn eval_compiled(terms: &[(u64, u64)], point: &[u64], q: u64) -> u64 {
    let mut acc: u64 = 0;
    for &(mask, coeff) in terms {
        let mut term = coeff;
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            term = term * point[i] % q;
            if term == 0 {
                break;
            }
            bits &= bits - 1;
        }
        acc = (acc + term) % q;
    }
    acc
}

fn chunked_sum(total: u64, parallel: bool, body: impl Fn(u64, u64) -> u64 + Sync) -> u64 {
    if total == 0 {
        return 0;
    }
    let chunks = if parallel { 64u64.min(total) } else { 1 };
    let chunk_size = total.div_ceil(chunks);
    let ranges: Vec<(u64, u64)> =
        (0..chunks).map(|c| (c * chunk_size, ((c + 1) * chunk_size).min(total))).collect();
    if parallel {
        ranges.par_iter().map(|&(a, b)| body(a, b)).sum()
    } else {
        ranges.iter().map(|&(a, b)| body(a, b)).sum()
    }
}

/// Points of F_q^n where both polynomials vanish.
pub fn count_common_zeros(
    p1: &EdgePoly,
    p2: &EdgePoly,
    q: u64,
    opts: &CountOptions,
) -> Result<u64> {
    check_prime(q)?;
    if p1.nvars() != p2.nvars() {
        return Err(Error::VariableCountMismatch { left: p1.nvars(), right: p2.nvars() });
    }
    let n = p1.nvars();
    let needed = (q as u128).pow(n as u32);
    if needed > opts.budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget: opts.budget });
    }
    if n == 0 {
        let both = p1.eval_mod_p(&[], q)? == 0 && p2.eval_mod_p(&[], q)? == 0;
        return Ok(both as u64);
    }
    let c1 = p1.compile_mod_p(q);
    let c2 = p2.compile_mod_p(q);
    let slots: Vec<usize> = (0..n).collect();
    Ok(chunked_sum(needed as u64, opts.parallel, |start, end| {
        let mut point = vec![0u64; n];
        decode_point(start, q, &slots, &mut point);
        let mut hits: u64 = 0;
        for _ in start..end {
            if eval_compiled(&c1, &point, q) == 0 && eval_compiled(&c2, &point, q) == 0 {
                hits += 1;
            }
            advance_point(q, &slots, &mut point);
        }
        hits
    }))
}

// ----------------------------------------------------------------------
// interpolation
// ----------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ClassCandidate {
    /// Candidate class in T, present when the counting function interpolates
    /// to an integer polynomial.
    pub poly: Option<IntPoly>,
    pub sample_primes: Vec<u64>,
    pub holdout: u64,
    /// Integer coefficients and the held-out prime agreed.
    pub exact_fit: bool,
}

/// Interpolate the counting function q -> #complement as a polynomial of
/// degree <= n, substitute q = T + 1, and validate on a held-out prime.
/// A failed fit certifies that the counting function is not that polynomial,
/// nothing more.
pub fn interpolate_class(
    g: &MultiGraph,
    primes: &[u64],
    holdout: u64,
    opts: &CountOptions,
) -> Result<ClassCandidate> {
    let n = g.edge_count();
    let mut sample: Vec<u64> = primes.to_vec();
    sample.sort_unstable();
    sample.dedup();
    if sample.len() < n + 1 {
        return Err(Error::InsufficientPrimes { needed: n + 1, got: sample.len() });
    }
    if sample.contains(&holdout) {
        return Err(Error::InvalidParam("holdout prime must not be a sample prime".into()));
    }
    check_prime(holdout)?;
    let psi = kirchhoff::psi(g)?.psi;
    let mut nodes = Vec::with_capacity(sample.len());
    for &q in &sample {
        let c = count_complement(&psi, q, opts)?;
        nodes.push((Rat::from_integer(Int::from(q)), Rat::from_integer(Int::from(c.complement_count))));
    }
    let coeffs_q = lagrange(&nodes);
    // the counting polynomial of an n-variable hypersurface has degree <= n
    let integral = coeffs_q.iter().all(|c| c.is_integer());
    if !integral {
        return Ok(ClassCandidate { poly: None, sample_primes: sample, holdout, exact_fit: false });
    }
    let poly_q = IntPoly::new(coeffs_q.iter().map(|c| c.to_integer()).collect());
    let poly_t = poly_q.compose(&IntPoly::t_plus_one());
    let holdout_count = count_complement(&psi, holdout, opts)?.complement_count;
    let exact_fit = poly_q.eval(&Int::from(holdout)) == Int::from(holdout_count)
        && poly_q.degree() <= n;
    Ok(ClassCandidate {
        poly: exact_fit.then_some(poly_t),
        sample_primes: sample,
        holdout,
        exact_fit,
    })
}

/// Lagrange interpolation through the nodes; coefficients low-first.
fn lagrange(nodes: &[(Rat, Rat)]) -> Vec<Rat> {
    let n = nodes.len();
    let mut acc = vec![Rat::zero(); n];
    for (i, (xi, yi)) in nodes.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![Rat::zero(); n];
        basis[0] = Rat::one();
        let mut deg = 0usize;
        let mut denom = Rat::one();
        for (j, (xj, _)) in nodes.iter().enumerate() {
            if j == i {
                continue;
            }
            // multiply by (x - x_j)
            for k in (0..=deg).rev() {
                let c = basis[k].clone();
                basis[k + 1] += &c;
                basis[k] = -(c * xj);
            }
            deg += 1;
            denom *= xi - xj;
        }
        let scale = yi / denom;
        for (a, b) in acc.iter_mut().zip(basis.iter()) {
            *a += b * &scale;
        }
    }
    while acc.last().is_some_and(|c| c.is_zero()) {
        acc.pop();
    }
    acc
}

// ----------------------------------------------------------------------
// verification
// ----------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelconCheck {
    pub q: u64,
    /// #(A^n minus the hypersurface of G).
    pub lhs: u64,
    /// q * #(A^(n-1) minus the intersection) - #(A^(n-1) minus deletion).
    pub rhs: u64,
    /// Common zeros of F and G in A^(n-1).
    pub intersection_zeros: u64,
    /// #{Psi = F = 0} vs q * #{F = G = 0 in A^(n-1)}: the two descriptions
    /// of the same intersection.
    pub ideal_counts: (u64, u64),
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct DelconReport {
    pub edge: usize,
    pub checks: Vec<DelconCheck>,
    pub ok: bool,
}

/// Counting-level deletion-contraction identity for a regular edge:
/// #(A^n \ X_G) = q * #(A^(n-1) \ (X_del cap X_con)) - #(A^(n-1) \ X_del),
/// plus the ideal identity {Psi = F = 0} = {F = G = 0} lifted to A^n.
pub fn verify_delcon(
    g: &MultiGraph,
    e: usize,
    primes: &[u64],
    opts: &CountOptions,
) -> Result<DelconReport> {
    if g.classify_edge(e)? != crate::graph::EdgeKind::Regular {
        return Err(Error::EdgeKindMismatch { edge: e, expected: "Regular" });
    }
    let n = g.edge_count();
    let split = kirchhoff::deletion_contraction_split(g, e)?;
    let psi = kirchhoff::psi(g)?.psi;
    let f_small = split.f.drop_var(e)?;
    let g_small = split.g.drop_var(e)?;
    let mut checks = Vec::new();
    for &q in primes {
        let lhs = count_complement(&psi, q, opts)?.complement_count;
        let del_complement = count_complement(&f_small, q, opts)?.complement_count;
        let intersection_zeros = count_common_zeros(&f_small, &g_small, q, opts)?;
        let space_small = pow_u64(q, n - 1);
        let rhs = q * (space_small - intersection_zeros) - del_complement;
        // {Psi = 0, F = 0} in A^n equals the cylinder over {F = G = 0}
        let psi_f = count_common_zeros(&psi, &split.f, q, opts)?;
        let cylinder = q * intersection_zeros;
        let ok = lhs == rhs && psi_f == cylinder;
        checks.push(DelconCheck {
            q,
            lhs,
            rhs,
            intersection_zeros,
            ideal_counts: (psi_f, cylinder),
            ok,
        });
    }
    let ok = checks.iter().all(|c| c.ok);
    Ok(DelconReport { edge: e, checks, ok })
}

#[derive(Debug, Clone)]
pub struct ClassCheck {
    pub q: u64,
    pub expected: Int,
    pub counted: u64,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct ClassReport {
    pub checks: Vec<ClassCheck>,
    pub ok: bool,
}

/// True iff value(q - 1) equals the counted complement for every prime.
pub fn verify_class(
    value: &IntPoly,
    g: &MultiGraph,
    primes: &[u64],
    opts: &CountOptions,
) -> Result<ClassReport> {
    let psi = kirchhoff::psi(g)?.psi;
    let mut checks = Vec::new();
    for &q in primes {
        let expected = value.eval(&Int::from(q - 1));
        let counted = count_complement(&psi, q, opts)?.complement_count;
        let ok = !expected.is_negative() && expected == Int::from(counted);
        checks.push(ClassCheck { q, expected, counted, ok });
    }
    let ok = checks.iter().all(|c| c.ok);
    Ok(ClassReport { checks, ok })
}

/// Rule engine first; any irreducible residues are interpolated from counts
/// (provenance `Interpolated`). Errors if a residue has no exact fit.
pub fn motivic_class_or_interpolate(
    g: &MultiGraph,
    primes: &[u64],
    holdout: u64,
    opts: &CountOptions,
) -> Result<MotivicClass> {
    let mut class = motivic_class(g);
    if class.provenance != Provenance::Unknown {
        return Ok(class);
    }
    let mut value = class.value.clone();
    for residue in &class.residues {
        let candidate = interpolate_class(residue, primes, holdout, opts)?;
        match candidate.poly {
            Some(p) if candidate.exact_fit => value = value.mul(&p),
            _ => {
                return Err(Error::ClassUnavailable(
                    "residue counts do not fit an integer polynomial",
                ))
            }
        }
    }
    class.value = value;
    class.provenance = Provenance::Interpolated;
    class.rule_trace.push("interpolated residues".into());
    Ok(class)
}
