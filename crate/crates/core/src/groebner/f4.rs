//! Batched Buchberger: all critical pairs of the lowest sugar degree are
//! reduced together as rows of one sparse matrix (symbolic preprocessing
//! followed by row reduction against the basis multiples).

use rustc_hash::{FxHashMap, FxHashSet};

use super::pairs::PairSet;
use super::{Budget, GbError, Terms};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::RingRef;

/// Working basis: monic polynomials with their leading monomials and divisibility masks.
pub(crate) struct WorkBasis<F: Field> {
    pub polys: Vec<Terms<F>>,
    pub masks: Vec<u64>,
    /// Indices used as reducers (minimal leading monomials).
    pub reducers: Vec<usize>,
}

impl<F: Field> WorkBasis<F> {
    pub fn new() -> Self {
        WorkBasis { polys: Vec::new(), masks: Vec::new(), reducers: Vec::new() }
    }

    pub fn lead(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    pub fn push(&mut self, p: Terms<F>) -> usize {
        self.masks.push(p[0].0.divmask());
        self.polys.push(p);
        self.polys.len() - 1
    }

    pub fn set_reducers(&mut self, active: &[bool]) {
        self.reducers = (0..self.polys.len()).filter(|&i| active[i]).collect();
        // shorter reducers first keeps the fill-in down
        let polys = &self.polys;
        self.reducers.sort_by_key(|&i| polys[i].len());
    }

    pub fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        let mask = m.divmask();
        self.reducers
            .iter()
            .copied()
            .find(|&i| self.masks[i] & !mask == 0 && self.lead(i).divides(m))
    }
}

struct SparseRow<E> {
    cols: Vec<u32>,
    vals: Vec<E>,
}

/// Matrix built from rows to reduce plus basis multiples covering every
/// reducible monomial that can appear.
pub(crate) struct Reduction<'a, F: Field> {
    ring: &'a RingRef<F>,
    cols: Vec<Monomial>,
    col_of: FxHashMap<Monomial, u32>,
    pivots: Vec<Option<SparseRow<F::Elem>>>,
}

impl<'a, F: Field> Reduction<'a, F> {
    /// `preset` rows (monic, distinct leading monomials) act as pivots in
    /// addition to the basis multiples found by symbolic preprocessing.
    pub fn new(ring: &'a RingRef<F>, basis: &'a WorkBasis<F>, preset: Vec<Terms<F>>, rows: &[Terms<F>]) -> Self {
        let mut seen: FxHashSet<Monomial> = FxHashSet::default();
        let mut stack: Vec<Monomial> = Vec::new();
        let mut pivot_terms: FxHashMap<Monomial, Terms<F>> = FxHashMap::default();
        let push = |m: Monomial, seen: &mut FxHashSet<Monomial>, stack: &mut Vec<Monomial>| {
            if seen.insert(m) {
                stack.push(m);
            }
        };
        for p in preset {
            for (m, _) in &p {
                push(*m, &mut seen, &mut stack);
            }
            pivot_terms.insert(p[0].0, p);
        }
        for r in rows {
            for (m, _) in r {
                push(*m, &mut seen, &mut stack);
            }
        }
        while let Some(m) = stack.pop() {
            if pivot_terms.contains_key(&m) {
                continue;
            }
            if let Some(k) = basis.find_reducer(&m) {
                let g = &basis.polys[k];
                let mult = g[0].0.cofactor(&m);
                let row: Terms<F> = g.iter().map(|(t, c)| (t.mul(&mult), c.clone())).collect();
                for (t, _) in &row[1..] {
                    push(*t, &mut seen, &mut stack);
                }
                pivot_terms.insert(m, row);
            }
        }
        let mut cols: Vec<Monomial> = seen.into_iter().collect();
        cols.sort_unstable_by(|a, b| ring.cmp(b, a));
        let col_of: FxHashMap<Monomial, u32> = cols.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        let mut pivots: Vec<Option<SparseRow<F::Elem>>> = (0..cols.len()).map(|_| None).collect();
        for (m, row) in pivot_terms {
            let c = col_of[&m] as usize;
            pivots[c] = Some(SparseRow {
                cols: row.iter().map(|(t, _)| col_of[t]).collect(),
                vals: row.into_iter().map(|(_, v)| v).collect(),
            });
        }
        Reduction { ring, cols, col_of, pivots }
    }

    /// Fully reduce `row` (empty result if it vanished). With `keep_lead` the
    /// row's own leading term is left in place. With `register` the result is
    /// made monic and becomes a pivot for subsequent rows; otherwise it keeps
    /// its scale unless `monic` is set.
    pub fn reduce(&mut self, row: &Terms<F>, register: bool, keep_lead: bool, monic: bool) -> Terms<F> {
        let field = self.ring.field();
        let n = self.cols.len();
        let mut dense: Vec<F::Elem> = vec![field.zero(); n];
        let mut start = n;
        for (m, c) in row {
            let j = self.col_of[m] as usize;
            dense[j] = field.add(&dense[j], c);
            start = start.min(j);
        }
        let mut lead_col: Option<usize> = None;
        for j in start..n {
            if field.is_zero(&dense[j]) {
                continue;
            }
            if keep_lead && lead_col.is_none() && j == start {
                // the row's own leading term stays (tail reduction only)
                lead_col = Some(j);
                continue;
            }
            match &self.pivots[j] {
                Some(piv) => {
                    let c = dense[j].clone();
                    for (k, v) in piv.cols.iter().zip(piv.vals.iter()) {
                        let k = *k as usize;
                        dense[k] = field.mul_sub(&dense[k], &c, v);
                    }
                    debug_assert!(field.is_zero(&dense[j]));
                }
                None => {
                    if lead_col.is_none() {
                        lead_col = Some(j);
                    }
                }
            }
        }
        let Some(lead) = lead_col else { return Vec::new() };
        let inv = if register || monic { field.inv(&dense[lead]).expect("nonzero") } else { field.one() };
        let mut out_cols = Vec::new();
        let mut out_vals = Vec::new();
        for (j, v) in dense.iter().enumerate().skip(lead) {
            if !field.is_zero(v) {
                out_cols.push(j as u32);
                out_vals.push(field.mul(v, &inv));
            }
        }
        let terms: Terms<F> = out_cols.iter().zip(out_vals.iter()).map(|(j, v)| (self.cols[*j as usize], v.clone())).collect();
        if register && self.pivots[lead].is_none() {
            self.pivots[lead] = Some(SparseRow { cols: out_cols, vals: out_vals });
        }
        terms
    }
}

/// Run the batched pair reduction loop to a Gröbner basis.
/// Returns the work basis and the indices of the minimal elements.
pub(crate) fn run<F: Field>(
    ring: &RingRef<F>,
    input: Vec<Terms<F>>,
    budget: &Budget,
) -> Result<(WorkBasis<F>, Vec<usize>), GbError> {
    let mut basis = WorkBasis::<F>::new();
    let mut pairs = PairSet::default();
    let mut processed = 0usize;

    // Interreduce the input through the same machinery: reduce each generator
    // against what is already present.
    let mut input = input;
    input.sort_by(|a, b| ring.cmp(&a[0].0, &b[0].0));
    for p in input {
        let sugar = p.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        basis.set_reducers(&pairs.active);
        let mut red = Reduction::new(ring, &basis, Vec::new(), std::slice::from_ref(&p));
        let r = red.reduce(&p, false, false, true);
        if r.is_empty() {
            continue;
        }
        let lead = r[0].0;
        let idx = basis.push(r);
        let h = pairs.insert(lead, sugar);
        debug_assert_eq!(idx, h);
        if lead.is_one() {
            return Ok(unit(basis, pairs));
        }
    }

    while !pairs.pairs.is_empty() {
        let (degree, selected) = pairs.take_lowest();
        if degree > budget.max_degree {
            return Err(GbError::BudgetExceeded { kind: "degree", limit: budget.max_degree as u64 });
        }
        processed += selected.len();
        if processed > budget.max_pairs {
            return Err(GbError::BudgetExceeded { kind: "s-pairs", limit: budget.max_pairs as u64 });
        }
        basis.set_reducers(&pairs.active);

        let mut preset: FxHashMap<Monomial, Terms<F>> = FxHashMap::default();
        let mut rows: Vec<Terms<F>> = Vec::new();
        let mut seen_rows: FxHashSet<(usize, Monomial)> = FxHashSet::default();
        for p in &selected {
            for k in [p.i, p.j] {
                let g = &basis.polys[k];
                let mult = g[0].0.cofactor(&p.lcm);
                if !seen_rows.insert((k, mult)) {
                    continue;
                }
                let row: Terms<F> = g.iter().map(|(t, c)| (t.mul(&mult), c.clone())).collect();
                if let std::collections::hash_map::Entry::Vacant(e) = preset.entry(p.lcm) {
                    e.insert(row);
                } else {
                    rows.push(row);
                }
            }
        }
        let mut red = Reduction::new(ring, &basis, preset.into_values().collect(), &rows);
        let mut fresh = Vec::new();
        for row in &rows {
            let r = red.reduce(row, true, false, true);
            if !r.is_empty() {
                fresh.push(r);
            }
        }
        drop(red);
        fresh.sort_by(|a, b| ring.cmp(&a[0].0, &b[0].0));
        for r in fresh {
            let lead = r[0].0;
            let is_unit = lead.is_one();
            basis.push(r);
            pairs.insert(lead, degree);
            if is_unit {
                return Ok(unit(basis, pairs));
            }
        }
    }
    // rows from one batch can have leading monomials dividing each other
    let active: Vec<usize> = (0..basis.polys.len()).filter(|&i| pairs.active[i]).collect();
    let minimal = active
        .iter()
        .copied()
        .filter(|&i| !active.iter().any(|&j| j != i && basis.lead(j).divides(basis.lead(i))))
        .collect();
    Ok((basis, minimal))
}

fn unit<F: Field>(basis: WorkBasis<F>, pairs: PairSet) -> (WorkBasis<F>, Vec<usize>) {
    let idx = (0..basis.polys.len()).rev().find(|&i| pairs.active[i] && basis.lead(i).is_one()).unwrap();
    (basis, vec![idx])
}

/// Tail-reduce a minimal basis so that it becomes the reduced basis.
pub(crate) fn interreduce<F: Field>(ring: &RingRef<F>, basis: &WorkBasis<F>, minimal: &[usize]) -> Vec<Terms<F>> {
    let mut reducers = WorkBasis::<F>::new();
    for &i in minimal {
        reducers.push(basis.polys[i].clone());
    }
    let all = vec![true; reducers.polys.len()];
    reducers.set_reducers(&all);
    let rows: Vec<Terms<F>> = reducers.polys.clone();
    let mut red = Reduction::new(ring, &reducers, Vec::new(), &rows);
    rows.iter().map(|r| red.reduce(r, false, true, true)).collect()
}
