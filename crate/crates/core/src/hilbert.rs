//! Hilbert functions, series and polynomials of homogeneous ideals, read off
//! the leading-term ideal of a grevlex basis.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::Field;
use crate::groebner::GbError;
use crate::ideal::Ideal;
use crate::monomial::{monomials_of_degree, Monomial};

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of `S / M`,
/// for a monomial ideal `M` in `n` variables. Index `i` holds the coefficient of `t^i`.
pub fn series_numerator(gens: &[Monomial], nvars: usize) -> Vec<i128> {
    let mut out = numerator(minimalize(gens.to_vec()), nvars);
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_add(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, c) in b.iter().enumerate() {
        a[i + shift] += c;
    }
}

fn numerator(gens: Vec<Monomial>, nvars: usize) -> Vec<i128> {
    // pairwise coprime generators: the numerator factors
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut out = vec![1i128];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = out.clone();
            next.resize(out.len() + d, 0);
            for (i, c) in out.iter().enumerate() {
                next[i + d] -= c;
            }
            out = next;
        }
        return out;
    }
    // pivot on a power of the variable occurring in the most mixed generators
    let mixed: Vec<&Monomial> = gens.iter().filter(|m| (0..nvars).filter(|&i| m.exponent(i) > 0).count() > 1).collect();
    let var = (0..nvars).max_by_key(|&i| mixed.iter().filter(|m| m.exponent(i) > 0).count()).unwrap();
    let mut exps: Vec<u32> = mixed.iter().map(|m| m.exponent(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let pivot = Monomial::one().with_exponent(var, e);

    let mut plus = gens.clone();
    plus.push(pivot);
    let quotient: Vec<Monomial> = gens
        .iter()
        .map(|m| m.with_exponent(var, m.exponent(var).saturating_sub(e)))
        .collect();
    // HS(M) = HS(M + p) + t^e HS(M : p)
    let mut out = numerator(minimalize(plus), nvars);
    poly_add(&mut out, &numerator(minimalize(quotient), nvars), e as usize);
    out
}

/// An integer-valued polynomial in one variable `t` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertPolynomial {
    /// `coeffs[i]` is the coefficient of `t^i`; no trailing zeros.
    coeffs: Vec<BigRational>,
}

impl HilbertPolynomial {
    pub fn from_coefficients(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HilbertPolynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coefficients(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficient(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn evaluate(&self, t: i64) -> BigRational {
        let t = BigRational::from_integer(t.into());
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &t + c)
    }

    /// Degree of the projective scheme: leading coefficient times `dim!`.
    pub fn scheme_degree(&self) -> Option<u64> {
        let d = self.degree()?;
        let fact: BigInt = (1..=d as u64).map(BigInt::from).product();
        (self.coeffs[d].clone() * BigRational::from_integer(fact)).to_integer().to_u64()
    }

    /// Arithmetic genus `1 - P(0)` when the polynomial is linear.
    pub fn curve_genus(&self) -> Option<i64> {
        if self.degree() != Some(1) {
            return None;
        }
        (BigRational::one() - self.coefficient(0)).to_integer().to_i64()
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let var = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            if var.is_empty() || !a.is_one() {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            write!(f, "{var}")?;
        }
        Ok(())
    }
}

/// Hilbert data of `S / I` for a homogeneous ideal `I`.
#[derive(Debug, Clone)]
pub struct HilbertSeries {
    nvars: usize,
    /// Numerator over `(1 - t)^nvars`.
    numerator: Vec<i128>,
}

impl HilbertSeries {
    pub fn of_monomials(gens: &[Monomial], nvars: usize) -> Self {
        HilbertSeries { nvars, numerator: series_numerator(gens, nvars) }
    }

    pub fn of_ideal<F: Field>(ideal: &Ideal<F>) -> Result<Self, GbError> {
        assert!(ideal.is_homogeneous(), "Hilbert series needs a homogeneous ideal");
        let gb = ideal.grevlex()?;
        Ok(Self::of_monomials(&gb.leading_monomials(), ideal.ring().nvars()))
    }

    pub fn numerator(&self) -> &[i128] {
        &self.numerator
    }

    /// Krull dimension of `S / I` and the reduced numerator `Q(t)` with
    /// `HS = Q(t) / (1 - t)^dim`.
    pub fn reduced(&self) -> (usize, Vec<i128>) {
        let mut q = self.numerator.clone();
        let mut dim = self.nvars;
        if q.iter().all(|&c| c == 0) {
            return (0, vec![0]);
        }
        // divide by (1 - t) while t = 1 is a root
        while dim > 0 && q.iter().sum::<i128>() == 0 {
            let mut out = vec![0i128; q.len() - 1];
            let mut acc = 0i128;
            for i in 0..q.len() - 1 {
                acc += q[i];
                out[i] = acc;
            }
            q = out;
            dim -= 1;
        }
        (dim, q)
    }

    /// Coefficient of `t^d` in the power series.
    pub fn value(&self, d: u32) -> u128 {
        // coefficient of t^k in (1 - t)^(-n) is C(k + n - 1, n - 1)
        let n = self.nvars;
        let mut total: i128 = 0;
        for (i, c) in self.numerator.iter().enumerate() {
            if *c == 0 || i as u32 > d {
                continue;
            }
            let k = (d - i as u32) as i128;
            total += c * binomial(k + n as i128 - 1, n as i128 - 1);
        }
        total as u128
    }

    pub fn polynomial(&self) -> HilbertPolynomial {
        let (dim, q) = self.reduced();
        if dim == 0 {
            return HilbertPolynomial::from_coefficients(Vec::new());
        }
        // sum_i q_i C(t - i + dim - 1, dim - 1)
        let mut acc = vec![BigRational::zero(); dim];
        for (i, c) in q.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let mut term = vec![BigRational::one()];
            for j in 1..dim {
                // multiply by (t - i + j) / j
                let shift = BigRational::new(BigInt::from(j as i64 - i as i64), BigInt::from(j as i64));
                let scale = BigRational::new(BigInt::one(), BigInt::from(j as i64));
                let mut next = vec![BigRational::zero(); term.len() + 1];
                for (k, a) in term.iter().enumerate() {
                    next[k + 1] += a * &scale;
                    next[k] += a * &shift;
                }
                term = next;
            }
            let c = BigRational::from_integer(BigInt::from(*c));
            for (k, a) in term.into_iter().enumerate() {
                acc[k] += a * &c;
            }
        }
        HilbertPolynomial::from_coefficients(acc)
    }
}

fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Dimension of the degree-`d` part of `S / I`, by counting standard monomials.
pub fn hilbert_function<F: Field>(ideal: &Ideal<F>, d: u32) -> Result<u64, GbError> {
    assert!(ideal.is_homogeneous(), "Hilbert function needs a homogeneous ideal");
    let gb = ideal.grevlex()?;
    let leads = gb.leading_monomials();
    let n = ideal.ring().nvars();
    Ok(monomials_of_degree(n, d).iter().filter(|m| !leads.iter().any(|l| l.divides(m))).count() as u64)
}

pub fn hilbert_polynomial<F: Field>(ideal: &Ideal<F>) -> Result<HilbertPolynomial, GbError> {
    Ok(HilbertSeries::of_ideal(ideal)?.polynomial())
}
