//! Zero-dimensional schemes: degrees, affine quotient algebras, eliminants,
//! reducedness and radical equality.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::groebner::{GbError, GroebnerBasis};
use crate::hilbert::hilbert_polynomial;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, RingRef};
use crate::univariate;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZeroDimError {
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error(transparent)]
    Gb(#[from] GbError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroDimDegree {
    Finite(u64),
    NotZeroDimensional,
}

impl ZeroDimDegree {
    pub fn finite(self) -> Option<u64> {
        match self {
            ZeroDimDegree::Finite(d) => Some(d),
            ZeroDimDegree::NotZeroDimensional => None,
        }
    }
}

impl fmt::Display for ZeroDimDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroDimDegree::Finite(d) => write!(f, "{d}"),
            ZeroDimDegree::NotZeroDimensional => write!(f, "NOT_ZERO_DIMENSIONAL"),
        }
    }
}

/// Degree of the scheme cut out by `ideal`.
///
/// A homogeneous ideal is read projectively: its Hilbert polynomial does not
/// see the irrelevant component, and is constant exactly when the scheme is
/// a finite set of points. Any other ideal is read affinely, as the number of
/// standard monomials.
pub fn zero_dim_degree<F: Field>(ideal: &Ideal<F>) -> Result<ZeroDimDegree, GbError> {
    if !ideal.is_homogeneous() {
        return affine_degree(ideal);
    }
    let hp = hilbert_polynomial(ideal)?;
    Ok(match hp.degree() {
        None => ZeroDimDegree::Finite(0),
        Some(0) => ZeroDimDegree::Finite(hp.scheme_degree().unwrap()),
        Some(_) => ZeroDimDegree::NotZeroDimensional,
    })
}

/// `dim k[x] / I`, counting standard monomials of a grevlex basis.
pub fn affine_degree<F: Field>(ideal: &Ideal<F>) -> Result<ZeroDimDegree, GbError> {
    Ok(match standard_monomials(&*ideal.grevlex()?) {
        Some(s) => ZeroDimDegree::Finite(s.len() as u64),
        None => ZeroDimDegree::NotZeroDimensional,
    })
}

/// All monomials outside the leading-term ideal, or `None` if there are infinitely many.
pub fn standard_monomials<F: Field>(gb: &GroebnerBasis<F>) -> Option<Vec<Monomial>> {
    let n = gb.ring().nvars();
    let leads = gb.leading_monomials();
    // finite iff every variable has a pure power among the leading monomials
    let mut bound = vec![0u32; n];
    for (i, b) in bound.iter_mut().enumerate() {
        *b = leads
            .iter()
            .filter(|m| m.degree() == m.exponent(i))
            .map(|m| m.exponent(i))
            .min()?;
    }
    let mut out = Vec::new();
    let mut stack = vec![Monomial::one()];
    let mut seen = rustc_hash::FxHashSet::default();
    seen.insert(Monomial::one());
    while let Some(m) = stack.pop() {
        if leads.iter().any(|l| l.divides(&m)) {
            continue;
        }
        out.push(m);
        for (i, &b) in bound.iter().enumerate() {
            if m.exponent(i) + 1 < b {
                let next = m.with_exponent(i, m.exponent(i) + 1);
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
    }
    let ring = gb.ring().clone();
    out.sort_by(|a, b| ring.cmp(a, b));
    Some(out)
}

/// The finite-dimensional algebra `k[x] / I` with its monomial basis.
pub struct AffineQuotient<F: Field> {
    gb: Arc<GroebnerBasis<F>>,
    basis: Vec<Monomial>,
    index: FxHashMap<Monomial, usize>,
}

impl<F: Field> AffineQuotient<F> {
    pub fn new(ideal: &Ideal<F>) -> Result<Self, ZeroDimError> {
        let gb = ideal.grevlex()?;
        let basis = standard_monomials(&gb).ok_or(ZeroDimError::NotZeroDimensional)?;
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Ok(AffineQuotient { gb, basis, index })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn ring(&self) -> &RingRef<F> {
        self.gb.ring()
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        self.gb.normal_form(&p.with_ring(self.gb.ring()))
    }

    /// Coordinates of the class of `p` in the standard monomial basis.
    pub fn coordinates(&self, p: &Polynomial<F>) -> Vec<F::Elem> {
        let field = self.ring().field();
        let mut v = vec![field.zero(); self.dim()];
        for (m, c) in self.normal_form(p).terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Whether multiplication by `f` is nilpotent, i.e. `f` lies in the radical.
    pub fn is_nilpotent(&self, f: &Polynomial<F>) -> bool {
        let f = self.normal_form(f);
        let mut g = f.clone();
        for _ in 0..=self.dim() {
            if g.is_zero() {
                return true;
            }
            g = self.normal_form(&(&g * &f));
        }
        g.is_zero()
    }

    /// Monic minimal polynomial of multiplication by `l` (ascending
    /// coefficients). It generates `I ∩ k[l]`, so for a coordinate it is the
    /// eliminant of the ideal in that variable.
    pub fn minimal_polynomial(&self, l: &Polynomial<F>) -> Vec<F::Elem> {
        let field = self.ring().field().clone();
        let l = l.with_ring(self.ring());
        // echelon rows: (pivot, vector, combination of powers of l)
        let mut rows: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)> = Vec::new();
        let mut power = self.normal_form(&Polynomial::one(self.ring()));
        for k in 0..=self.dim() {
            let mut v = self.coordinates(&power);
            let mut combo = vec![field.zero(); k + 1];
            combo[k] = field.one();
            for (piv, row, rc) in &rows {
                if field.is_zero(&v[*piv]) {
                    continue;
                }
                let c = v[*piv].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a = field.mul_sub(a, &c, b);
                }
                for (a, b) in combo.iter_mut().zip(rc) {
                    *a = field.mul_sub(a, &c, b);
                }
            }
            match v.iter().position(|c| !field.is_zero(c)) {
                None => return univariate::monic(&field, combo),
                Some(piv) => {
                    let inv = field.inv(&v[piv]).unwrap();
                    let v = v.iter().map(|a| field.mul(a, &inv)).collect();
                    let combo = combo.iter().map(|a| field.mul(a, &inv)).collect();
                    rows.push((piv, v, combo));
                }
            }
            power = self.normal_form(&(&power * &l));
        }
        unreachable!("powers of l are dependent in a space of dimension {}", self.dim())
    }
}

/// A random linear change of coordinates `z_i -> sum_j m_ij z_j`, reproducible from its seed.
pub fn coordinate_change<F: Field>(ring: &RingRef<F>, seed: u64) -> Vec<Polynomial<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ring.nvars();
    (0..n)
        .map(|_| {
            let terms = (0..n).map(|j| (Monomial::var(j), ring.field().random(&mut rng))).collect();
            Polynomial::from_terms(ring, terms)
        })
        .collect()
}

/// The scheme of a homogeneous ideal seen in the chart `z0 = 1` after a
/// random change of coordinates.
pub struct ProjectiveChart<F: Field> {
    pub seed: u64,
    pub quotient: AffineQuotient<F>,
}

/// Open the chart for `seed`. Returns `None` when the chart misses part of
/// the scheme (its affine degree falls short of the projective degree).
pub fn projective_chart<F: Field>(ideal: &Ideal<F>, seed: u64) -> Result<Option<ProjectiveChart<F>>, ZeroDimError> {
    let degree = zero_dim_degree(ideal)?.finite().ok_or(ZeroDimError::NotZeroDimensional)?;
    let moved = ideal.substitute(&coordinate_change(ideal.ring(), seed));
    let affine = Ideal::new(moved.ring(), moved.generators().iter().map(|g| g.dehomogenize(0)).collect())
        .with_budget(ideal.budget())
        .restrict_to_trailing(1);
    let quotient = match AffineQuotient::new(&affine) {
        Ok(q) => q,
        Err(ZeroDimError::NotZeroDimensional) => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok((quotient.dim() as u64 == degree).then_some(ProjectiveChart { seed, quotient }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reducedness {
    Reduced,
    NotReduced,
    NotCertified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducednessCheck {
    pub verdict: Reducedness,
    pub degree: u64,
    /// Seed of the coordinate change that settled the question, if any.
    pub seed: Option<u64>,
    pub attempts: u32,
    pub eliminant_degree: usize,
    pub squarefree_degree: usize,
}

/// Decide whether a zero-dimensional projective scheme is reduced from the
/// eliminant of a generic coordinate. A squarefree eliminant of full degree
/// proves reducedness; a repeated factor proves the opposite; a squarefree
/// eliminant of smaller degree (a non-generic projection) triggers a retry.
pub fn check_reduced<F: Field>(ideal: &Ideal<F>, seed: u64, attempts: u32) -> Result<ReducednessCheck, ZeroDimError> {
    let degree = zero_dim_degree(ideal)?.finite().ok_or(ZeroDimError::NotZeroDimensional)?;
    let mut out = ReducednessCheck {
        verdict: Reducedness::NotCertified,
        degree,
        seed: None,
        attempts: 0,
        eliminant_degree: 0,
        squarefree_degree: 0,
    };
    if degree == 0 {
        out.verdict = Reducedness::Reduced;
        return Ok(out);
    }
    for k in 0..attempts {
        let s = seed.wrapping_add(k as u64);
        out.attempts = k + 1;
        let Some(chart) = projective_chart(ideal, s)? else { continue };
        let q = &chart.quotient;
        let field = q.ring().field();
        let last = Polynomial::var(q.ring(), q.ring().nvars() - 1);
        let elim = q.minimal_polynomial(&last);
        let sqf = univariate::squarefree_part(field, &elim);
        out.eliminant_degree = elim.len() - 1;
        out.squarefree_degree = sqf.len() - 1;
        if sqf.len() < elim.len() {
            out.verdict = Reducedness::NotReduced;
            out.seed = Some(s);
            return Ok(out);
        }
        if out.eliminant_degree as u64 == degree {
            out.verdict = Reducedness::Reduced;
            out.seed = Some(s);
            return Ok(out);
        }
    }
    Ok(out)
}

/// Whether two zero-dimensional (or empty) schemes have the same support:
/// every generator of each ideal lies in the radical of the other.
pub fn zero_dim_radical_equal<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<bool, ZeroDimError> {
    for ideal in [i, j] {
        if zero_dim_degree(ideal)?.finite().is_none() {
            return Err(ZeroDimError::NotZeroDimensional);
        }
    }
    for (a, b) in [(i, j), (j, i)] {
        for g in b.generators() {
            if !a.radical_contains(g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
