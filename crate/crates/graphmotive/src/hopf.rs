//! Core Hopf algebra of graphs: coproduct over subgraphs with 1PI
//! components, inductive antipode, and algebraic renormalization by
//! Birkhoff factorization over the polar-part Rota-Baxter operator.

use std::collections::BTreeMap;

use num::One;

use crate::error::{Error, Result};
use crate::graph::{CanonicalKey, MultiGraph};
use crate::poly::{Int, LaurentPoly, Rat};

/// Subset-scan guard: the coproduct walks 2^#E edge subsets.
pub const MAX_HOPF_EDGES: usize = 8;

/// A monomial in the polynomial algebra on 1PI generators: a sorted multiset
/// of canonical keys. The empty monomial is the unit.
pub type Monomial = Vec<CanonicalKey>;

/// Integer linear combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphSum {
    pub terms: BTreeMap<Monomial, i64>,
}

/// Integer linear combination of monomial tensor pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorSum {
    pub terms: BTreeMap<(Monomial, Monomial), i64>,
}

impl GraphSum {
    pub fn single(monomial: Monomial, coeff: i64) -> Self {
        let mut s = GraphSum::default();
        s.insert(monomial, coeff);
        s
    }

    fn insert(&mut self, monomial: Monomial, coeff: i64) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.insert(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        GraphSum { terms: self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = GraphSum::default();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let mut m = ma.clone();
                m.extend(mb.iter().cloned());
                m.sort();
                out.insert(m, ca * cb);
            }
        }
        out
    }
}

impl TensorSum {
    fn insert(&mut self, left: Monomial, right: Monomial, coeff: i64) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((left, right)) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }
}

/// Shared context: interns isomorphism-class representatives so monomials
/// can be evaluated later.
#[derive(Debug, Clone, Default)]
pub struct Hopf {
    registry: BTreeMap<CanonicalKey, MultiGraph>,
    antipode_cache: BTreeMap<CanonicalKey, GraphSum>,
}

impl Hopf {
    pub fn new() -> Self {
        Hopf::default()
    }

    pub fn representative(&self, key: &CanonicalKey) -> Option<&MultiGraph> {
        self.registry.get(key)
    }

    pub fn intern(&mut self, g: &MultiGraph) -> Result<CanonicalKey> {
        let key = g.canonical_key()?;
        self.registry.entry(key.clone()).or_insert_with(|| g.clone());
        Ok(key)
    }

    fn guard(&self, g: &MultiGraph) -> Result<()> {
        if g.edge_count() > MAX_HOPF_EDGES {
            return Err(Error::SizeGuard {
                what: "Hopf subgraph scan",
                limit: MAX_HOPF_EDGES,
                actual: g.edge_count(),
            });
        }
        if !g.is_1pi() {
            return Err(Error::InvalidParam("Hopf generators are connected 1PI graphs".into()));
        }
        Ok(())
    }

    /// Delta(G) = G (x) 1 + 1 (x) G + sum over proper nonempty edge subsets
    /// whose components are all 1PI of (components) (x) (G with each
    /// component shrunk to a vertex).
    pub fn coproduct(&mut self, g: &MultiGraph) -> Result<TensorSum> {
        self.guard(g)?;
        let whole = self.intern(g)?;
        let mut out = TensorSum::default();
        out.insert(vec![whole.clone()], Vec::new(), 1);
        out.insert(Vec::new(), vec![whole], 1);
        let ne = g.edge_count();
        for mask in 1u64..(1u64 << ne) - 1 {
            let edges: Vec<usize> = (1..=ne).filter(|e| mask & (1 << (e - 1)) != 0).collect();
            if let Some(left) = self.admissible_subgraph(g, &edges)? {
                let quotient = g.contract_edge_set(&edges)?;
                let right = self.intern(&quotient)?;
                out.insert(left, vec![right], 1);
            }
        }
        Ok(out)
    }

    /// The component monomial of an edge subset, if every component is 1PI.
    fn admissible_subgraph(
        &mut self,
        g: &MultiGraph,
        edges: &[usize],
    ) -> Result<Option<Monomial>> {
        let (sub, _) = g.edge_subgraph(edges)?;
        let mut keys = Vec::new();
        for comp in component_graphs(&sub) {
            if !comp.is_1pi() {
                return Ok(None);
            }
            keys.push(self.intern(&comp)?);
        }
        keys.sort();
        Ok(Some(keys))
    }

    /// S(G) = -G - sum S(gamma) (G/gamma), extended multiplicatively over
    /// monomials; memoized on canonical keys.
    pub fn antipode(&mut self, g: &MultiGraph) -> Result<GraphSum> {
        self.guard(g)?;
        let key = self.intern(g)?;
        if let Some(hit) = self.antipode_cache.get(&key) {
            return Ok(hit.clone());
        }
        let mut acc = GraphSum::single(vec![key.clone()], -1);
        let ne = g.edge_count();
        for mask in 1u64..(1u64 << ne) - 1 {
            let edges: Vec<usize> = (1..=ne).filter(|e| mask & (1 << (e - 1)) != 0).collect();
            if let Some(left) = self.admissible_subgraph(g, &edges)? {
                let quotient = g.contract_edge_set(&edges)?;
                let right = self.intern(&quotient)?;
                let s_left = self.antipode_monomial(&left)?;
                let contribution = s_left.mul(&GraphSum::single(vec![right], 1));
                acc = acc.add(&contribution.neg());
            }
        }
        self.antipode_cache.insert(key, acc.clone());
        Ok(acc)
    }

    /// S of a monomial: product of the antipodes of its factors.
    pub fn antipode_monomial(&mut self, monomial: &Monomial) -> Result<GraphSum> {
        let mut acc = GraphSum::single(Vec::new(), 1);
        for key in monomial {
            let rep = self
                .registry
                .get(key)
                .cloned()
                .ok_or_else(|| Error::CharacterUndefined(key.to_string()))?;
            let s = self.antipode(&rep)?;
            acc = acc.mul(&s);
        }
        Ok(acc)
    }
}

fn component_graphs(g: &MultiGraph) -> Vec<MultiGraph> {
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

/// Projection onto the strictly polar part: the weight -1 Rota-Baxter
/// operator grounding the factorization.
pub fn rota_baxter_polar(x: &LaurentPoly) -> LaurentPoly {
    x.polar_part()
}

/// Multiplicative evaluation map from generators to Laurent polynomials.
pub enum Character {
    /// z^(-b1) (1 + z)^(#E) on every 1PI generator.
    Toy,
    /// Explicit table keyed by isomorphism class.
    Table(BTreeMap<CanonicalKey, LaurentPoly>),
}

impl Character {
    pub fn eval_generator(&self, g: &MultiGraph) -> Result<LaurentPoly> {
        match self {
            Character::Toy => {
                let stats = g.stats();
                let pole = LaurentPoly::monomial(-(stats.b1 as i64), Rat::one());
                let one_plus_z = LaurentPoly::from_int_terms(&[(0, 1), (1, 1)]);
                Ok(pole.mul(&one_plus_z.pow(g.edge_count() as u32)))
            }
            Character::Table(map) => {
                let key = g.canonical_key()?;
                map.get(&key).cloned().ok_or_else(|| Error::CharacterUndefined(key.to_string()))
            }
        }
    }

    pub fn eval_monomial(&self, monomial: &Monomial, hopf: &Hopf) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::one();
        for key in monomial {
            let rep = hopf
                .representative(key)
                .ok_or_else(|| Error::CharacterUndefined(key.to_string()))?;
            acc = acc.mul(&self.eval_generator(rep)?);
        }
        Ok(acc)
    }

    pub fn eval_sum(&self, sum: &GraphSum, hopf: &Hopf) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::default();
        for (monomial, &coeff) in &sum.terms {
            let val = self.eval_monomial(monomial, hopf)?;
            acc = acc.add(&val.mul(&LaurentPoly::constant(Rat::from_integer(Int::from(coeff)))));
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BirkhoffFactors {
    /// Counterterm part: pure polar.
    pub minus: LaurentPoly,
    /// Renormalized part: polar-free.
    pub plus: LaurentPoly,
    /// The preparation U(G) + sum U_-(gamma) U(G/gamma).
    pub prepared: LaurentPoly,
}

/// Recursive Birkhoff factorization of a character: U_- = -P(prepared),
/// U_+ = (1 - P)(prepared) with P the polar projection.
pub struct Birkhoff<'a> {
    pub character: &'a Character,
    pub hopf: Hopf,
    minus_cache: BTreeMap<CanonicalKey, LaurentPoly>,
}

impl<'a> Birkhoff<'a> {
    pub fn new(character: &'a Character) -> Self {
        Birkhoff { character, hopf: Hopf::new(), minus_cache: BTreeMap::new() }
    }

    pub fn factorize(&mut self, g: &MultiGraph) -> Result<BirkhoffFactors> {
        self.hopf.guard(g)?;
        let prepared = self.prepared(g)?;
        let polar = rota_baxter_polar(&prepared);
        Ok(BirkhoffFactors {
            minus: polar.neg(),
            plus: prepared.sub(&polar),
            prepared,
        })
    }

    /// U(G) + sum over proper subgraphs of U_-(gamma) U(G/gamma).
    fn prepared(&mut self, g: &MultiGraph) -> Result<LaurentPoly> {
        let mut acc = self.character.eval_generator(g)?;
        let ne = g.edge_count();
        for mask in 1u64..(1u64 << ne) - 1 {
            let edges: Vec<usize> = (1..=ne).filter(|e| mask & (1 << (e - 1)) != 0).collect();
            if let Some(left) = self.hopf.admissible_subgraph(g, &edges)? {
                let quotient = g.contract_edge_set(&edges)?;
                let u_minus_left = self.minus_of_monomial(&left)?;
                let u_quotient = self.character.eval_generator(&quotient)?;
                acc = acc.add(&u_minus_left.mul(&u_quotient));
            }
        }
        Ok(acc)
    }

    fn minus_of_monomial(&mut self, monomial: &Monomial) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::one();
        for key in monomial {
            let val = match self.minus_cache.get(key) {
                Some(v) => v.clone(),
                None => {
                    let rep = self
                        .hopf
                        .representative(key)
                        .cloned()
                        .ok_or_else(|| Error::CharacterUndefined(key.to_string()))?;
                    let factors = self.factorize(&rep)?;
                    self.minus_cache.insert(key.clone(), factors.minus.clone());
                    factors.minus
                }
            };
            acc = acc.mul(&val);
        }
        Ok(acc)
    }
}
