//! Dense univariate polynomials over a field, coefficients in ascending degree.

use crate::field::Field;

pub fn trim<F: Field>(field: &F, mut p: Vec<F::Elem>) -> Vec<F::Elem> {
    while p.last().is_some_and(|c| field.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn degree<F: Field>(field: &F, p: &[F::Elem]) -> Option<usize> {
    p.iter().rposition(|c| !field.is_zero(c))
}

pub fn derivative<F: Field>(field: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    let out = p.iter().enumerate().skip(1).map(|(i, c)| field.mul(&field.from_i64(i as i64), c)).collect();
    trim(field, out)
}

pub fn monic<F: Field>(field: &F, p: Vec<F::Elem>) -> Vec<F::Elem> {
    let p = trim(field, p);
    match p.last() {
        None => p,
        Some(lc) => {
            let inv = field.inv(lc).expect("nonzero leading coefficient");
            p.iter().map(|c| field.mul(c, &inv)).collect()
        }
    }
}

/// Quotient and remainder of `a` by nonzero `b`.
pub fn div_rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let b = trim(field, b.to_vec());
    let db = b.len().checked_sub(1).expect("division by zero polynomial");
    let inv = field.inv(&b[db]).unwrap();
    let mut r = trim(field, a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![field.zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = field.mul(r.last().unwrap(), &inv);
        for (i, bc) in b.iter().enumerate() {
            r[i + k] = field.mul_sub(&r[i + k], &c, bc);
        }
        q[k] = c;
        r = trim(field, r);
    }
    (trim(field, q), r)
}

/// Monic greatest common divisor (empty for `gcd(0, 0)`).
pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = trim(field, a.to_vec());
    let mut b = trim(field, b.to_vec());
    while !b.is_empty() {
        let (_, r) = div_rem(field, &a, &b);
        a = b;
        b = r;
    }
    monic(field, a)
}

/// Product of the distinct irreducible factors. Valid when the degree is
/// below the characteristic, which holds for every use in this crate.
pub fn squarefree_part<F: Field>(field: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    let p = trim(field, p.to_vec());
    if p.len() <= 1 {
        return monic(field, p);
    }
    let g = gcd(field, &p, &derivative(field, &p));
    monic(field, div_rem(field, &p, &g).0)
}
