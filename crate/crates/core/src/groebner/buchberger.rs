//! Textbook Buchberger: one S-pair at a time, reduced by ordinary
//! multivariate division. Kept as an independent reference for the batched
//! engine; fine for small inputs only.

use super::pairs::PairSet;
use super::{Budget, GbError};
use crate::field::Field;
use crate::poly::{Polynomial, RingRef};

/// Full reduction of `p` by `basis` (leading and tail terms).
pub(crate) fn divide<F: Field>(p: &Polynomial<F>, basis: &[Polynomial<F>]) -> Polynomial<F> {
    let ring = p.ring().clone();
    let field = ring.field().clone();
    let mut rest = p.clone();
    let mut remainder = Vec::new();
    while let Some((m, c)) = rest.terms().first().cloned() {
        match basis.iter().find(|g| g.leading_monomial().is_some_and(|l| l.divides(&m))) {
            Some(g) => {
                let lm = g.leading_monomial().unwrap();
                let coef = field.mul(&c, &field.inv(g.leading_coefficient().unwrap()).unwrap());
                rest = &rest - &g.mul_term(&lm.cofactor(&m), &coef);
            }
            None => {
                remainder.push((m, c));
                let tail = rest.terms()[1..].to_vec();
                rest = Polynomial::from_sorted_terms(&ring, tail);
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, remainder)
}

pub(crate) fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let field = f.field();
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let cf = field.inv(f.leading_coefficient().unwrap()).unwrap();
    let cg = field.inv(g.leading_coefficient().unwrap()).unwrap();
    &f.mul_term(&lf.cofactor(&l), &cf) - &g.mul_term(&lg.cofactor(&l), &cg)
}

/// Returns a minimal (not yet tail-reduced) monic basis.
pub(crate) fn run<F: Field>(
    ring: &RingRef<F>,
    input: &[Polynomial<F>],
    budget: &Budget,
) -> Result<Vec<Polynomial<F>>, GbError> {
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    let mut pairs = PairSet::default();
    let mut processed = 0usize;
    let add = |h: Polynomial<F>, sugar: u32, basis: &mut Vec<Polynomial<F>>, pairs: &mut PairSet| {
        let h = h.monic();
        pairs.insert(*h.leading_monomial().unwrap(), sugar);
        basis.push(h);
    };
    for p in input {
        let r = divide(p, &basis);
        if !r.is_zero() {
            let sugar = p.degree().unwrap_or(0);
            add(r, sugar, &mut basis, &mut pairs);
        }
    }
    while !pairs.pairs.is_empty() {
        let pair = pairs.take_one(|a, b| ring.cmp(a, b));
        if pair.sugar > budget.max_degree {
            return Err(GbError::BudgetExceeded { kind: "degree", limit: budget.max_degree as u64 });
        }
        processed += 1;
        if processed > budget.max_pairs {
            return Err(GbError::BudgetExceeded { kind: "s-pairs", limit: budget.max_pairs as u64 });
        }
        let active: Vec<Polynomial<F>> =
            basis.iter().zip(&pairs.active).filter(|(_, a)| **a).map(|(g, _)| g.clone()).collect();
        let r = divide(&s_polynomial(&basis[pair.i], &basis[pair.j]), &active);
        if !r.is_zero() {
            add(r, pair.sugar, &mut basis, &mut pairs);
        }
    }
    Ok(basis.into_iter().zip(pairs.active).filter(|(_, a)| *a).map(|(g, _)| g).collect())
}
