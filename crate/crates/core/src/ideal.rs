//! Ideals and the ideal-theoretic operations built on Gröbner bases.

use std::sync::{Arc, Mutex};

use crate::field::Field;
use crate::groebner::{Budget, GbError, GroebnerBasis};
use crate::monomial::MonomialOrder;
use crate::poly::{same_ring, Polynomial, Ring, RingMismatch, RingRef};

const GENERIC_FORM_SEED: u64 = 0x5a7_0c71c;

/// An ideal given by generators, with Gröbner bases cached per order.
pub struct Ideal<F: Field> {
    ring: RingRef<F>,
    gens: Vec<Polynomial<F>>,
    budget: Budget,
    cache: Mutex<Vec<Arc<GroebnerBasis<F>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            budget: self.budget,
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped. Panics if generators live in another ring.
    pub fn new(ring: &RingRef<F>, gens: Vec<Polynomial<F>>) -> Self {
        Self::try_new(ring, gens).expect("generators must share the ring")
    }

    pub fn try_new(ring: &RingRef<F>, gens: Vec<Polynomial<F>>) -> Result<Self, RingMismatch> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            budget: Budget::default(),
            cache: Mutex::new(Vec::new()),
        })
    }

    pub fn unit(ring: &RingRef<F>) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal generated by the variables.
    pub fn irrelevant(ring: &RingRef<F>) -> Self {
        Self::new(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect())
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    fn derived(&self, gens: Vec<Polynomial<F>>) -> Self {
        Self::new(&self.ring, gens).with_budget(self.budget)
    }

    fn from_basis(&self, gb: GroebnerBasis<F>) -> Self {
        let gens = gb.elements().iter().map(|g| g.with_ring(&self.ring)).collect();
        let out = self.derived(gens);
        out.cache.lock().unwrap().push(Arc::new(gb));
        out
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Reduced Gröbner basis under `order`, computed once and cached.
    pub fn groebner(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis<F>>, GbError> {
        if let Some(gb) = self.cache.lock().unwrap().iter().find(|g| g.order() == order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(GroebnerBasis::compute(&self.ring, &self.gens, order, &self.budget)?);
        self.cache.lock().unwrap().push(gb.clone());
        Ok(gb)
    }

    pub fn grevlex(&self) -> Result<Arc<GroebnerBasis<F>>, GbError> {
        self.groebner(MonomialOrder::GrevLex)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool, GbError> {
        Ok(self.grevlex()?.contains(&p.with_ring(self.grevlex()?.ring())))
    }

    pub fn is_unit(&self) -> Result<bool, GbError> {
        Ok(self.grevlex()?.is_unit())
    }

    /// Equality of ideals, via reduced grevlex bases.
    pub fn same_as(&self, other: &Ideal<F>) -> Result<bool, GbError> {
        Ok(*self.grevlex()? == *other.grevlex()?)
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool, GbError> {
        let gb = self.grevlex()?;
        Ok(other.gens.iter().all(|g| gb.contains(&g.with_ring(gb.ring()))))
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        self.derived(gens)
    }

    /// `I ∩ k[x_k, ..., x_{n-1}]`, returned in the same ring.
    pub fn eliminate(&self, k: usize) -> Result<Ideal<F>, GbError> {
        assert!(k > 0 && k < self.ring.nvars(), "need 0 < k < number of variables");
        let gb = self.groebner(MonomialOrder::Elimination(k))?;
        let gens = gb.elements_free_of(k).into_iter().map(|g| g.with_ring(&self.ring)).collect();
        Ok(self.derived(gens))
    }

    /// Drop the first `k` variables from the ring; generators must not involve them.
    pub fn restrict_to_trailing(&self, k: usize) -> Ideal<F> {
        let vars = &self.ring.vars()[k..];
        let target = Ring::new(self.ring.field().clone(), vars, self.ring.order());
        let n = self.ring.nvars();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                assert!(g.terms().iter().all(|(m, _)| m.partial_degree(0..k) == 0));
                let terms = g
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let e: Vec<u32> = (k..n).map(|i| m.exponent(i)).collect();
                        (crate::monomial::Monomial::from_exponents(&e), c.clone())
                    })
                    .collect();
                Polynomial::from_terms(&target, terms)
            })
            .collect();
        Ideal::new(&target, gens).with_budget(self.budget)
    }

    /// The ring with a fresh variable `t` prepended and eliminated first.
    fn extended_ring(&self) -> RingRef<F> {
        let mut name = "t".to_string();
        while self.ring.var_index(&name).is_some() {
            name.push('_');
        }
        self.ring.with_leading_vars(&[name], MonomialOrder::Elimination(1))
    }

    fn lift(&self, ext: &RingRef<F>, p: &Polynomial<F>) -> Polynomial<F> {
        let map: Vec<usize> = (1..=self.ring.nvars()).collect();
        p.map_vars(ext, &map)
    }

    fn lower(&self, ext: &RingRef<F>, p: &Polynomial<F>) -> Polynomial<F> {
        let _ = ext;
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| {
                debug_assert_eq!(m.exponent(0), 0);
                let e: Vec<u32> = (1..=self.ring.nvars()).map(|i| m.exponent(i)).collect();
                (crate::monomial::Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// `(I : f^∞)` via `I + (t f - 1)` with `t` eliminated.
    pub fn saturate_by(&self, f: &Polynomial<F>) -> Result<Ideal<F>, GbError> {
        let ext = self.extended_ring();
        let mut gens: Vec<_> = self.gens.iter().map(|g| self.lift(&ext, g)).collect();
        let t = Polynomial::var(&ext, 0);
        gens.push(&(&t * &self.lift(&ext, f)) - &Polynomial::one(&ext));
        let gb = GroebnerBasis::compute(&ext, &gens, MonomialOrder::Elimination(1), &self.budget)?;
        let out: Vec<_> = gb.elements_free_of(1).iter().map(|g| self.lower(&ext, g)).collect();
        Ok(self.derived(out))
    }

    /// `(I : J^∞)`: intersection of the saturations by each generator of `J`.
    pub fn saturate(&self, j: &Ideal<F>) -> Result<Ideal<F>, GbError> {
        assert!(!j.gens.is_empty(), "saturation by the zero ideal");
        let mut acc: Option<Ideal<F>> = None;
        for f in &j.gens {
            let s = self.saturate_by(f)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        let out = acc.unwrap();
        let gb = out.grevlex()?;
        Ok(self.from_basis((*gb).clone()))
    }

    /// `I ∩ J` via `t I + (1 - t) J` with `t` eliminated.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>, GbError> {
        let ext = self.extended_ring();
        let t = Polynomial::var(&ext, 0);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens: Vec<_> = self.gens.iter().map(|g| &t * &self.lift(&ext, g)).collect();
        gens.extend(other.gens.iter().map(|g| &one_minus_t * &self.lift(&ext, g)));
        let gb = GroebnerBasis::compute(&ext, &gens, MonomialOrder::Elimination(1), &self.budget)?;
        let out = gb.elements_free_of(1).iter().map(|g| self.lower(&ext, g)).collect();
        Ok(self.derived(out))
    }

    /// `(I : x_var^∞)` for homogeneous `I`: with `x_var` last in a grevlex
    /// order, divide every element of the reduced basis by its `x_var` content.
    pub fn saturate_by_variable(&self, var: usize) -> Result<Ideal<F>, GbError> {
        assert!(self.is_homogeneous(), "variable saturation shortcut needs a homogeneous ideal");
        let n = self.ring.nvars();
        // move `var` to the last position
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(var, n - 1);
        let names: Vec<String> = perm.iter().map(|&i| self.ring.vars()[i].clone()).collect();
        let pring = Ring::new(self.ring.field().clone(), &names, MonomialOrder::GrevLex);
        let moved: Vec<_> = self.gens.iter().map(|g| g.map_vars(&pring, &perm)).collect();
        let gb = GroebnerBasis::compute(&pring, &moved, MonomialOrder::GrevLex, &self.budget)?;
        let stripped: Vec<_> = gb.elements().iter().map(|g| g.strip_var_power(n - 1).map_vars(&self.ring, &perm)).collect();
        Ok(self.derived(stripped))
    }

    /// Saturation by the ideal of all variables.
    ///
    /// For a homogeneous ideal this first tries `(I : l^∞)` for a random linear
    /// form `l`. That ideal always contains the saturation and is saturated
    /// itself, so equal Hilbert polynomials prove the two coincide. Otherwise
    /// (or if the check fails) falls back to [`Ideal::saturate_irrelevant_exact`].
    pub fn saturate_irrelevant(&self) -> Result<Ideal<F>, GbError> {
        if self.is_homogeneous() && self.ring.nvars() > 1 {
            let candidate = self.saturate_by_generic_form(GENERIC_FORM_SEED)?;
            if crate::hilbert::hilbert_polynomial(&candidate)? == crate::hilbert::hilbert_polynomial(self)? {
                return Ok(candidate);
            }
        }
        self.saturate_irrelevant_exact()
    }

    /// `(I : l^∞)` for `l = x_{n-1} + sum c_i x_i` with random `c_i`, by moving
    /// `l` to the last coordinate and saturating by that variable.
    pub fn saturate_by_generic_form(&self, seed: u64) -> Result<Ideal<F>, GbError> {
        let n = self.ring.nvars();
        let field = self.ring.field();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let coeffs: Vec<F::Elem> = (0..n - 1).map(|_| field.random(&mut rng)).collect();
        let shear = |sign: i64| -> Vec<Polynomial<F>> {
            let mut images: Vec<Polynomial<F>> = (0..n).map(|i| Polynomial::var(&self.ring, i)).collect();
            let terms = (0..n - 1)
                .map(|i| (crate::monomial::Monomial::var(i), field.mul(&field.from_i64(sign), &coeffs[i])))
                .chain(std::iter::once((crate::monomial::Monomial::var(n - 1), field.one())))
                .collect();
            images[n - 1] = Polynomial::from_terms(&self.ring, terms);
            images
        };
        let moved = self.substitute(&shear(-1));
        let sat = moved.saturate_by_variable(n - 1)?;
        let back = sat.substitute(&shear(1));
        let gb = back.grevlex()?;
        Ok(self.from_basis((*gb).clone()))
    }

    /// Saturation by the ideal of all variables, as the intersection of the
    /// single-variable saturations.
    pub fn saturate_irrelevant_exact(&self) -> Result<Ideal<F>, GbError> {
        let n = self.ring.nvars();
        let mut acc: Option<Ideal<F>> = None;
        for v in 0..n {
            let s = if self.is_homogeneous() { self.saturate_by_variable(v)? } else { self.saturate_by(&Polynomial::var(&self.ring, v))? };
            if s.is_unit()? {
                continue;
            }
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        match acc {
            None => Ok(Ideal::unit(&self.ring).with_budget(self.budget)),
            Some(a) => {
                let gb = a.grevlex()?;
                Ok(self.from_basis((*gb).clone()))
            }
        }
    }

    /// `f ∈ √I` by Rabinowitsch: `1 ∈ I + (t f - 1)`.
    pub fn radical_contains(&self, f: &Polynomial<F>) -> Result<bool, GbError> {
        let ext = self.extended_ring().with_order(MonomialOrder::GrevLex);
        let mut gens: Vec<_> = self.gens.iter().map(|g| self.lift(&ext, g)).collect();
        let t = Polynomial::var(&ext, 0);
        gens.push(&(&t * &self.lift(&ext, f)) - &Polynomial::one(&ext));
        Ok(GroebnerBasis::compute(&ext, &gens, MonomialOrder::GrevLex, &self.budget)?.is_unit())
    }

    /// Image under the substitution `x_i -> images[i]` (all in the same ring).
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Ideal<F> {
        self.derived(self.gens.iter().map(|g| g.substitute(images)).collect())
    }
}
