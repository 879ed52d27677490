//! Monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Upper bound on the number of ring variables.
pub const MAX_VARS: usize = 10;

/// An exponent vector. Unused trailing slots are always zero.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Monomial {
    deg: u32,
    exp: [u16; MAX_VARS],
}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // exponents determine the degree
        self.exp.hash(state);
    }
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exp.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exp[..last])
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { deg: 0, exp: [0; MAX_VARS] }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            let e = u16::try_from(e).expect("exponent overflow");
            m.exp[i] = e;
            m.deg += e as u32;
        }
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.exp[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exp[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exp[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn with_exponent(mut self, i: usize, e: u32) -> Self {
        let e = u16::try_from(e).expect("exponent overflow");
        self.deg = self.deg - self.exp[i] as u32 + e as u32;
        self.exp[i] = e;
        self
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exp = self.exp;
        for (a, b) in exp.iter_mut().zip(other.exp.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial { deg: self.deg + other.deg, exp }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exp.iter().zip(other.exp.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    #[inline]
    pub fn cofactor(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut exp = other.exp;
        for (a, b) in exp.iter_mut().zip(self.exp.iter()) {
            *a -= *b;
        }
        Monomial { deg: other.deg - self.deg, exp }
    }

    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        divisor.divides(self).then(|| divisor.cofactor(self))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..MAX_VARS {
            m.exp[i] = self.exp[i].max(other.exp[i]);
            m.deg += m.exp[i] as u32;
        }
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..MAX_VARS {
            m.exp[i] = self.exp[i].min(other.exp[i]);
            m.deg += m.exp[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exp.iter().zip(other.exp.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Degree in the variables `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exp[range].iter().map(|&e| e as u32).sum()
    }

    /// Bit signature with `mask(a) & !mask(b) != 0` implying `a` does not divide `b`.
    #[inline]
    pub fn divmask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exp.iter().enumerate() {
            let base = i * 6;
            for (k, t) in [0u16, 1, 3, 7, 15, 31].iter().enumerate() {
                if e > *t {
                    mask |= 1 << (base + k);
                }
            }
        }
        mask
    }

    /// Substitute a permutation of variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut m = Monomial::one();
        for (i, &j) in perm.iter().enumerate() {
            m.exp[j] = self.exp[i];
        }
        m.deg = self.deg;
        m
    }

    /// Embed into a ring whose variables `0..n` sit at `offset..offset + n`.
    pub fn shift(&self, offset: usize, nvars: usize) -> Monomial {
        let mut m = Monomial::one();
        m.exp[offset..offset + nvars].copy_from_slice(&self.exp[..nvars]);
        m.deg = self.deg;
        m
    }
}

/// All monomials of total degree `d` in `n` variables, lexicographically descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut [u32], out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    let mut cur = vec![0u32; n];
    rec(n, 0, d, &mut cur, &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
    /// Block order eliminating the first `k` variables: grevlex on the block,
    /// ties broken by grevlex on the remaining variables.
    Elimination(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(a, b, 0..nvars, a.deg, b.deg),
            MonomialOrder::Lex => {
                for i in 0..nvars {
                    match a.exp[i].cmp(&b.exp[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elimination(k) => {
                let (da, db) = (a.partial_degree(0..k), b.partial_degree(0..k));
                grevlex(a, b, 0..k, da, db)
                    .then_with(|| grevlex(a, b, k..nvars, a.deg - da, b.deg - db))
            }
        }
    }

    /// True when comparing first by total degree.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial, vars: std::ops::Range<usize>, da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {
            for i in vars.rev() {
                match a.exp[i].cmp(&b.exp[i]) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::GrevLex => f.write_str("grevlex"),
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::Elimination(k) => write!(f, "elim:{k}"),
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "grevlex" | "dp" => Ok(MonomialOrder::GrevLex),
            "lex" | "lp" => Ok(MonomialOrder::Lex),
            other => other
                .strip_prefix("elim:")
                .and_then(|k| k.parse().ok())
                .filter(|&k: &usize| k > 0)
                .map(MonomialOrder::Elimination)
                .ok_or_else(|| format!("unknown monomial order `{other}`")),
        }
    }
}
