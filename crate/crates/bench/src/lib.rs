//! Fixed inputs shared by the benchmarks in `benches/`.

use octonode_core::octic::discriminant_octic;
use octonode_core::{Fp, Ideal, MonomialOrder, Polynomial, Ring, RingRef, SectionTriple};

pub fn ring() -> RingRef<Fp> {
    Ring::new(Fp::default(), &["z0", "z1", "z2", "z3"], MonomialOrder::GrevLex)
}

pub fn triple(a: u32) -> SectionTriple<Fp> {
    SectionTriple::random(&ring(), a, 1).expect("valid split type")
}

/// The octic together with its four partial derivatives.
pub fn jacobian_ideal(a: u32) -> Ideal<Fp> {
    let octic = discriminant_octic(&triple(a));
    let mut gens: Vec<Polynomial<Fp>> = vec![octic.clone()];
    gens.extend(octic.gradient());
    Ideal::new(octic.ring(), gens)
}
