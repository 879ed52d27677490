//! Critical pair bookkeeping with the product and chain criteria
//! (Gebauer–Möller installation).

use crate::monomial::Monomial;

#[derive(Debug, Clone)]
pub(crate) struct Pair {
    pub i: usize,
    pub j: usize,
    pub lcm: Monomial,
    pub sugar: u32,
}

/// Basis metadata the pair set needs: leading monomials, sugar degrees and
/// which elements are still part of the minimal basis.
#[derive(Debug, Default)]
pub(crate) struct PairSet {
    pub pairs: Vec<Pair>,
    pub leads: Vec<Monomial>,
    pub sugar: Vec<u32>,
    pub active: Vec<bool>,
    /// Pairs discarded by either criterion, for diagnostics.
    pub discarded: usize,
}

impl PairSet {
    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let si = self.sugar[i] + lcm.degree() - self.leads[i].degree();
        let sj = self.sugar[j] + lcm.degree() - self.leads[j].degree();
        si.max(sj)
    }

    /// Register a new basis element `h` and update the pair set.
    pub fn insert(&mut self, lead: Monomial, sugar: u32) -> usize {
        let h = self.leads.len();
        self.leads.push(lead);
        self.sugar.push(sugar);
        self.active.push(true);

        let candidates: Vec<usize> = (0..h).filter(|&g| self.active[g]).collect();
        let mut c: Vec<(usize, Monomial)> = candidates.iter().map(|&g| (g, self.leads[g].lcm(&lead))).collect();
        let mut d: Vec<(usize, Monomial, bool)> = Vec::new();
        // chain criterion among the new pairs
        while let Some((g1, l1)) = c.pop() {
            let coprime = lead.is_coprime(&self.leads[g1]);
            let dominated = c.iter().any(|(_, l2)| l2.divides(&l1)) || d.iter().any(|(_, l2, _)| l2.divides(&l1));
            if coprime || !dominated {
                d.push((g1, l1, coprime));
            } else {
                self.discarded += 1;
            }
        }
        // chain criterion on old pairs
        let before = self.pairs.len();
        let leads = &self.leads;
        self.pairs.retain(|p| {
            !(lead.divides(&p.lcm) && leads[p.i].lcm(&lead) != p.lcm && leads[p.j].lcm(&lead) != p.lcm)
        });
        self.discarded += before - self.pairs.len();
        // product criterion
        for (g, l, coprime) in d {
            if coprime {
                self.discarded += 1;
                continue;
            }
            let sugar = self.pair_sugar(g, h, &l);
            self.pairs.push(Pair { i: g, j: h, lcm: l, sugar });
        }
        for g in candidates {
            if lead.divides(&self.leads[g]) {
                self.active[g] = false;
            }
        }
        h
    }

    /// Remove and return every pair of minimal sugar.
    pub fn take_lowest(&mut self) -> (u32, Vec<Pair>) {
        let d = self.pairs.iter().map(|p| p.sugar).min().expect("nonempty pair set");
        let (sel, rest): (Vec<Pair>, Vec<Pair>) = self.pairs.drain(..).partition(|p| p.sugar == d);
        self.pairs = rest;
        (d, sel)
    }

    /// Remove and return one pair of minimal sugar, ties broken by `cmp` on the lcm (smallest first).
    pub fn take_one(&mut self, cmp: impl Fn(&Monomial, &Monomial) -> std::cmp::Ordering) -> Pair {
        let idx = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
                pa.sugar.cmp(&pb.sugar).then_with(|| cmp(&pa.lcm, &pb.lcm))
            })
            .expect("nonempty pair set");
        self.pairs.swap_remove(idx)
    }
}
