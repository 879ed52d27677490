//! Sparse multivariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::field::Field;
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder, MAX_VARS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("polynomials live in different rings")]
pub struct RingMismatch;

/// Variable names, coefficient field and the monomial order terms are sorted by.
#[derive(Debug, Clone, PartialEq)]
pub struct Ring<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type RingRef<F> = Arc<Ring<F>>;

impl<F: Field> Ring<F> {
    pub fn new<S: AsRef<str>>(field: F, vars: &[S], order: MonomialOrder) -> RingRef<F> {
        assert!(vars.len() <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        if let MonomialOrder::Elimination(k) = order {
            assert!(k < vars.len(), "elimination block must leave at least one variable");
        }
        Arc::new(Ring { field, vars: vars.iter().map(|v| v.as_ref().to_string()).collect(), order })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.vars.len())
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef<F> {
        Ring::new(self.field.clone(), &self.vars, order)
    }

    /// This ring with extra variables prepended (they become variables `0..names.len()`).
    pub fn with_leading_vars<S: AsRef<str>>(&self, names: &[S], order: MonomialOrder) -> RingRef<F> {
        let mut vars: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        vars.extend(self.vars.iter().cloned());
        Ring::new(self.field.clone(), &vars, order)
    }
}

pub fn same_ring<F: Field>(a: &RingRef<F>, b: &RingRef<F>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: RingRef<F>,
    /// Sorted strictly descending in the ring order, no zero coefficients.
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &RingRef<F>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef<F>, c: F::Elem) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(), c)])
    }

    pub fn one(ring: &RingRef<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &RingRef<F>, i: usize) -> Self {
        assert!(i < ring.nvars());
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::var(i), ring.field().one())] }
    }

    pub fn monomial(ring: &RingRef<F>, m: Monomial, c: F::Elem) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Canonicalize arbitrary terms: merge duplicates, drop zeros, sort.
    pub fn from_terms(ring: &RingRef<F>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        let field = ring.field();
        let mut map: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(acc) => *acc = field.add(acc, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Terms already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &RingRef<F>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !ring.field().is_zero(c)));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map_or_else(|| self.field().zero(), |(_, c)| c.clone())
    }

    /// Largest `e` with `x_var^e` dividing every term.
    pub fn var_content(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).min().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, field.mul(a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), field.mul(a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let field = self.field();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let fix = |c: &F::Elem| if negate_other { field.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ring.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, fix(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { field.sub(ca, cb) } else { field.add(ca, cb) };
                    if !field.is_zero(&c) {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (*m, fix(c))));
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingMismatch> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, RingMismatch> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingMismatch> {
        self.check_ring(other)?;
        let field = self.field();
        let mut map: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        map.reserve(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match map.get_mut(&m) {
                    Some(acc) => *acc = field.add(acc, &c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| self.ring.cmp(&b.0, &a.0));
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    fn check_ring(&self, other: &Self) -> Result<(), RingMismatch> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(RingMismatch)
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.ring.nvars(), "variable index out of range");
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) > 0)
            .filter_map(|(m, c)| {
                let e = m.exponent(var);
                let c = field.mul(c, &field.from_i64(e as i64));
                (!field.is_zero(&c)).then(|| (m.with_exponent(var, e - 1), c))
            })
            .collect();
        // lowering one exponent keeps distinct terms distinct but may reorder them
        Self::from_terms(&self.ring, terms)
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.ring.nvars()).map(|i| self.derivative(i)).collect()
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.ring.nvars(), "point has wrong length");
        let field = self.field();
        // powers per variable, computed once
        let maxdeg: Vec<u32> = (0..point.len())
            .map(|i| self.terms.iter().map(|(m, _)| m.exponent(i)).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<F::Elem>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut v = vec![field.one()];
                for k in 0..d as usize {
                    v.push(field.mul(&v[k], x));
                }
                v
            })
            .collect();
        self.terms.iter().fold(field.zero(), |acc, (m, c)| {
            let t = (0..point.len()).fold(c.clone(), |t, i| field.mul(&t, &powers[i][m.exponent(i) as usize]));
            field.add(&acc, &t)
        })
    }

    /// Ring homomorphism sending variable `i` to `images[i]` (all in `target`).
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Polynomial<F> {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images.first().map(|p| p.ring.clone()).unwrap_or_else(|| self.ring.clone());
        let mut cache: Vec<Vec<Polynomial<F>>> = images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        let field = self.field();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, powers) in cache.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                while powers.len() <= e {
                    let next = &powers[powers.len() - 1] * &powers[1];
                    powers.push(next);
                }
                if e > 0 {
                    t = &t * &powers[e];
                }
            }
            for (tm, tc) in t.terms {
                match acc.get_mut(&tm) {
                    Some(a) => *a = field.add(a, &tc),
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Polynomial::from_terms(&target, acc.into_iter().collect())
    }

    /// Same polynomial read in `target`, with variable `i` renamed to `target` variable `map[i]`.
    pub fn map_vars(&self, target: &RingRef<F>, map: &[usize]) -> Polynomial<F> {
        assert_eq!(map.len(), self.ring.nvars());
        assert!(map.iter().all(|&j| j < target.nvars()));
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut out = Monomial::one();
                for (i, &j) in map.iter().enumerate() {
                    out = out.with_exponent(j, out.exponent(j) + m.exponent(i));
                }
                (out, c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Re-sort in another ring with the same variables (order change).
    pub fn with_ring(&self, target: &RingRef<F>) -> Polynomial<F> {
        assert_eq!(self.ring.vars(), target.vars());
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| target.cmp(&b.0, &a.0));
        Polynomial { ring: target.clone(), terms }
    }

    /// Set variable `var` to 1 (the polynomial stays in the same ring).
    pub fn dehomogenize(&self, var: usize) -> Polynomial<F> {
        let terms = self.terms.iter().map(|(m, c)| (m.with_exponent(var, 0), c.clone())).collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Divide out the largest power of `x_var` dividing all terms.
    pub fn strip_var_power(&self, var: usize) -> Polynomial<F> {
        let e = self.var_content(var);
        if e == 0 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.with_exponent(var, m.exponent(var) - e), c.clone()))
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial<F> {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let field = self.field();
        let terms = self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

/// A homogeneous polynomial of the given degree with every coefficient drawn
/// independently (zero allowed). Deterministic in `seed`.
pub fn random_homogeneous<F: Field>(ring: &RingRef<F>, degree: u32, seed: u64) -> Polynomial<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_homogeneous_with(ring, degree, &mut rng)
}

pub fn random_homogeneous_with<F: Field, R: rand::Rng>(ring: &RingRef<F>, degree: u32, rng: &mut R) -> Polynomial<F> {
    let field = ring.field();
    let terms = monomials_of_degree(ring.nvars(), degree)
        .into_iter()
        .map(|m| (m, field.random(rng)))
        .collect();
    Polynomial::from_terms(ring, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};
    use crate::parse::parse_polynomial;
    use proptest::prelude::*;

    fn fp_ring(p: u64, n: usize) -> RingRef<Fp> {
        let vars: Vec<String> = (0..n).map(|i| format!("z{i}")).collect();
        Ring::new(Fp::new(p).unwrap(), &vars, MonomialOrder::GrevLex)
    }

    #[test]
    fn difference_of_squares() {
        let r = Ring::new(Rationals, &["z0", "z1"], MonomialOrder::GrevLex);
        let a = parse_polynomial("z0 + z1", &r).unwrap();
        let b = parse_polynomial("z0 - z1", &r).unwrap();
        assert_eq!(&a * &b, parse_polynomial("z0^2 - z1^2", &r).unwrap());
        assert_eq!(&a + &Polynomial::zero(&r), a);
    }

    #[test]
    fn modular_coefficients() {
        let r = fp_ring(7, 1);
        let p = parse_polynomial("5*z0 + 4*z0", &r).unwrap();
        assert_eq!(p, parse_polynomial("2*z0", &r).unwrap());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::var(&fp_ring(7, 2), 0);
        let b = Polynomial::var(&fp_ring(11, 2), 0);
        assert_eq!(a.try_add(&b), Err(RingMismatch));
        assert_eq!(a.try_mul(&b), Err(RingMismatch));
    }

    #[test]
    fn derivatives() {
        let r = Ring::new(Rationals, &["z0", "z1"], MonomialOrder::GrevLex);
        let p = parse_polynomial("z0^2*z1", &r).unwrap();
        assert_eq!(p.derivative(0), parse_polynomial("2*z0*z1", &r).unwrap());
        assert!(Polynomial::constant(&r, Rationals.from_i64(5)).derivative(0).is_zero());
    }

    #[test]
    fn evaluation() {
        let r = Ring::new(Rationals, &["z0", "z1"], MonomialOrder::GrevLex);
        let p = parse_polynomial("z0^2 - z1", &r).unwrap();
        assert!(p.evaluate(&[Rationals.from_i64(2), Rationals.from_i64(4)]) == Rationals.zero());
        let c = Ring::new(Rationals, &["x", "y", "z"], MonomialOrder::GrevLex);
        let curve = parse_polynomial("y^2*z - x^3 + x*z^2", &c).unwrap();
        let q = Rationals;
        assert_eq!(curve.evaluate(&[q.zero(), q.one(), q.zero()]), q.zero());
    }

    #[test]
    fn random_octic_evaluation_matches_naive_sum() {
        let r = fp_ring(32003, 4);
        let f = r.field().clone();
        let p = random_homogeneous(&r, 8, 11);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let pt: Vec<u32> = (0..4).map(|_| f.random(&mut rng)).collect();
            // naive oracle: multiply out each exponent one factor at a time
            let mut naive = 0u32;
            for (m, c) in p.terms() {
                let mut t = *c;
                for (i, x) in pt.iter().enumerate() {
                    for _ in 0..m.exponent(i) {
                        t = f.mul(&t, x);
                    }
                }
                naive = f.add(&naive, &t);
            }
            assert_eq!(p.evaluate(&pt), naive);
        }
    }

    #[test]
    fn random_homogeneous_contract() {
        let r = fp_ring(32003, 4);
        let a = random_homogeneous(&r, 4, 9);
        let b = random_homogeneous(&r, 4, 9);
        assert_eq!(a, b);
        assert!(a.is_homogeneous() && a.degree() == Some(4));
        assert!(a.num_terms() <= 35 && a.num_terms() > 30);
        let c = random_homogeneous(&r, 0, 1);
        assert!(c.is_constant());
        assert_eq!(monomials_of_degree(4, 4).len(), 35);
    }

    #[test]
    fn euler_relation_on_random_octic() {
        let r = fp_ring(32003, 4);
        let delta = random_homogeneous(&r, 8, 2024);
        let mut lhs = Polynomial::zero(&r);
        for i in 0..4 {
            lhs = &lhs + &(&Polynomial::var(&r, i) * &delta.derivative(i));
        }
        assert_eq!(lhs, delta.scale(&8));
    }

    fn arb_poly(r: RingRef<Fp>) -> impl Strategy<Value = Polynomial<Fp>> {
        let p = r.field().modulus();
        proptest::collection::vec((proptest::collection::vec(0u32..4, 3), 0..p), 0..8).prop_map(move |ts| {
            Polynomial::from_terms(&r, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)).collect())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ring_axioms_fp(
            a in arb_poly(fp_ring(32003, 3)),
            b in arb_poly(fp_ring(32003, 3)),
            c in arb_poly(fp_ring(32003, 3)),
        ) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }
    }

    fn q_ring() -> RingRef<Rationals> {
        Ring::new(Rationals, &["x", "y"], MonomialOrder::Lex)
    }

    fn arb_qpoly() -> impl Strategy<Value = Polynomial<Rationals>> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 2), -5i64..5, 1i64..4), 0..5).prop_map(|ts| {
            let r = q_ring();
            let terms = ts
                .into_iter()
                .map(|(e, n, d)| {
                    let c = Rationals.from_ratio(&n.into(), &d.into()).unwrap();
                    (Monomial::from_exponents(&e), c)
                })
                .collect();
            Polynomial::from_terms(&r, terms)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ring_axioms_q(a in arb_qpoly(), b in arb_qpoly(), c in arb_qpoly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
