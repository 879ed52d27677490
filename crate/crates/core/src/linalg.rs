//! Row reduction over a field and the graded pieces of homogeneous ideals.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::field::Field;
use crate::groebner::GbError;
use crate::ideal::Ideal;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::{Polynomial, RingRef};

/// Incremental row echelon form of sparse vectors indexed by monomials.
pub struct Echelon<F: Field> {
    /// pivot monomial -> monic row with that leading monomial
    rows: FxHashMap<Monomial, Polynomial<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon { rows: FxHashMap::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Add `p` to the span; returns whether the rank grew.
    pub fn insert(&mut self, p: &Polynomial<F>) -> bool {
        let r = self.reduce(p);
        match r.leading_monomial() {
            None => false,
            Some(m) => {
                self.rows.insert(*m, r.monic());
                true
            }
        }
    }

    /// Remainder of `p` after eliminating every pivot monomial.
    pub fn reduce(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let mut rest = p.clone();
        let mut done: Vec<(Monomial, F::Elem)> = Vec::new();
        while let Some((m, c)) = rest.terms().first().cloned() {
            match self.rows.get(&m) {
                Some(row) => rest = &rest - &row.scale(&c),
                None => {
                    done.push((m, c.clone()));
                    rest = &rest - &Polynomial::monomial(rest.ring(), m, c);
                }
            }
        }
        Polynomial::from_terms(p.ring(), done)
    }

    pub fn basis(&self) -> Vec<Polynomial<F>> {
        let mut out: Vec<_> = self.rows.values().cloned().collect();
        if let Some(first) = out.first() {
            let ring = first.ring().clone();
            out.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
        }
        out
    }
}

/// Span of `m * g` over generators `g` of degree at most `d` (and strictly
/// below `d` when `lower_only`) and monomials `m` completing the degree to `d`.
fn graded_span<F: Field>(ring: &RingRef<F>, gens: &[Polynomial<F>], d: u32, lower_only: bool) -> Echelon<F> {
    let mut e = Echelon::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > d || (lower_only && dg == d) {
            continue;
        }
        for m in monomials_of_degree(ring.nvars(), d - dg) {
            e.insert(&g.mul_term(&m, &ring.field().one()));
        }
    }
    e
}

/// A basis of the degree-`d` part of a homogeneous ideal.
pub fn degree_part<F: Field>(ideal: &Ideal<F>, d: u32) -> Result<Vec<Polynomial<F>>, GbError> {
    let gb = ideal.grevlex()?;
    let gens: Vec<_> = gb.elements().iter().map(|g| g.with_ring(ideal.ring())).collect();
    Ok(graded_span(ideal.ring(), &gens, d, false).basis())
}

/// Number of minimal generators in each degree up to `max_degree`:
/// `dim I_d - dim (R_1 I_{d-1})`. Degrees without generators are omitted.
pub fn minimal_generator_profile<F: Field>(ideal: &Ideal<F>, max_degree: u32) -> Result<BTreeMap<u32, usize>, GbError> {
    assert!(ideal.is_homogeneous(), "generator profile needs a homogeneous ideal");
    let gb = ideal.grevlex()?;
    let gens: Vec<_> = gb.elements().iter().map(|g| g.with_ring(ideal.ring())).collect();
    let mut out = BTreeMap::new();
    for d in 0..=max_degree {
        let full = graded_span(ideal.ring(), &gens, d, false).rank();
        let lower = graded_span(ideal.ring(), &gens, d, true).rank();
        if full > lower {
            out.insert(d, full - lower);
        }
    }
    Ok(out)
}
