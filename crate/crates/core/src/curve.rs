//! Space curves given as images of plane curves, and the Serre-construction
//! numbers attached to them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::groebner::{GbError, GroebnerBasis};
use crate::hilbert::{hilbert_polynomial, HilbertPolynomial};
use crate::ideal::Ideal;
use crate::invariants::{bundle_invariants, serre_gamma, BundleInvariants};
use crate::linalg::{degree_part, minimal_generator_profile};
use crate::monomial::MonomialOrder;
use crate::parse::{parse_polynomial, ParseError};
use crate::poly::{Polynomial, Ring, RingRef};

/// Degree up to which minimal generators are counted.
pub const PROFILE_MAX_DEGREE: u32 = 6;
const BASE_LOCUS_SEED: u64 = 0xba5e;

pub const PRESETS: [&str; 3] = ["paper-degree8", "twisted-cubic", "elliptic-quintic"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("invalid curve map: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// `dimension` is -1 for an empty image.
    #[error("image has dimension {dimension}, not 1 (Hilbert polynomial {hilbert_poly})")]
    NotACurve { dimension: i64, hilbert_poly: String },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error(transparent)]
    Gb(#[from] GbError),
}

impl CurveError {
    fn not_a_curve(hp: &HilbertPolynomial) -> Self {
        let dimension = hp.degree().map_or(-1, |d| d as i64);
        CurveError::NotACurve { dimension, hilbert_poly: hp.to_string() }
    }
}

/// A map from a plane curve (or the whole source space, when `curve` is zero)
/// to P^3 given by four forms of one degree.
#[derive(Debug, Clone)]
pub struct CurveMapSpec<F: Field> {
    pub source: RingRef<F>,
    pub curve: Polynomial<F>,
    pub components: Vec<Polynomial<F>>,
    pub target: RingRef<F>,
}

impl<F: Field> CurveMapSpec<F> {
    pub fn new(source: RingRef<F>, curve: Polynomial<F>, components: Vec<Polynomial<F>>, target: RingRef<F>) -> Result<Self, CurveError> {
        let bad = |m: &str| Err(CurveError::InvalidSpec(m.to_string()));
        if components.len() != 4 || target.nvars() != 4 {
            return bad("need four components and four target variables");
        }
        if !curve.is_homogeneous() {
            return bad("the source curve must be homogeneous");
        }
        let degree = components[0].degree();
        if components.iter().any(|c| !c.is_homogeneous() || c.degree() != degree) {
            return bad("components must be homogeneous of one common degree");
        }
        let c_ideal = Ideal::new(&source, vec![curve.clone()]);
        if components.iter().all(|c| c_ideal.contains(c).unwrap_or(true)) {
            return bad("all components vanish on the source curve");
        }
        Ok(CurveMapSpec { source, curve, components, target })
    }

    /// Built-in specifications by name.
    pub fn preset(name: &str, field: F) -> Result<Self, CurveError> {
        let xyz = Ring::new(field.clone(), &["x", "y", "z"], MonomialOrder::GrevLex);
        let w = Ring::new(field.clone(), &["w0", "w1", "w2", "w3"], MonomialOrder::GrevLex);
        let (source, curve, comps): (RingRef<F>, &str, [&str; 4]) = match name {
            // a plane cubic mapped by cubics to an elliptic curve of degree 8
            "paper-degree8" => (
                xyz,
                "y^2*z - x^3 + x*z^2",
                ["x^2*y + x*y*z + z^3", "x*y^2 + y*z^2 + z*x^2", "x^2*y + x*y*z + x*z^2", "x*y^2 + y^2*z + z^3"],
            ),
            "twisted-cubic" => (Ring::new(field, &["s", "t"], MonomialOrder::GrevLex), "0", ["s^3", "s^2*t", "s*t^2", "t^3"]),
            // conics through the point [0:1:0] of the cubic: an elliptic quintic
            "elliptic-quintic" => (xyz, "y^2*z - x^3 + x*z^2", ["x^2 + x*z", "x*y + 2*z^2", "x*z + y*z", "z^2 - 3*x*y"]),
            _ => return Err(CurveError::UnknownPreset(name.to_string())),
        };
        let parse = |s: &str| parse_polynomial(s, &source);
        let components = comps.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(source.clone(), parse(curve)?, components, w)
    }

    /// Source variables followed by target variables.
    fn product_ring(&self, extra: &[&str], eliminate: usize) -> RingRef<F> {
        let mut names: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        names.extend(self.source.vars().iter().cloned());
        names.extend(self.target.vars().iter().cloned());
        Ring::new(self.source.field().clone(), &names, MonomialOrder::Elimination(eliminate))
    }

    fn embed_source(&self, ring: &RingRef<F>, offset: usize, p: &Polynomial<F>) -> Polynomial<F> {
        let map: Vec<usize> = (0..self.source.nvars()).map(|i| i + offset).collect();
        p.map_vars(ring, &map)
    }

    fn target_var(&self, ring: &RingRef<F>, offset: usize, i: usize) -> Polynomial<F> {
        Polynomial::var(ring, offset + self.source.nvars() + i)
    }

    fn restrict_to_target(&self, gb: &GroebnerBasis<F>, eliminated: usize) -> Vec<Polynomial<F>> {
        let map_back = |p: &Polynomial<F>| {
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| {
                    let e: Vec<u32> = (0..4).map(|i| m.exponent(eliminated + i)).collect();
                    (crate::monomial::Monomial::from_exponents(&e), c.clone())
                })
                .collect();
            Polynomial::from_terms(&self.target, terms)
        };
        gb.elements_free_of(eliminated).iter().map(map_back).collect()
    }
}

/// Ideal of the closure of the image: the graph ideal `(C) + (w_i c_j - w_j c_i)`,
/// saturated by the base locus of the map, intersected with the target ring
/// and saturated by the target irrelevant ideal.
///
/// The base-locus saturation uses `(G : c^∞)` for a random combination `c`
/// of the components, taken in the same elimination as the source variables.
pub fn implicitize<F: Field>(spec: &CurveMapSpec<F>) -> Result<Ideal<F>, CurveError> {
    let ns = spec.source.nvars();
    let ring = spec.product_ring(&["t"], 1 + ns);
    let field = ring.field().clone();
    let mut gens = vec![spec.embed_source(&ring, 1, &spec.curve)];
    let comps: Vec<_> = spec.components.iter().map(|c| spec.embed_source(&ring, 1, c)).collect();
    for i in 0..4 {
        for j in i + 1..4 {
            let wi = spec.target_var(&ring, 1, i);
            let wj = spec.target_var(&ring, 1, j);
            gens.push(&(&wi * &comps[j]) - &(&wj * &comps[i]));
        }
    }
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(BASE_LOCUS_SEED);
    let combo = comps.iter().fold(Polynomial::zero(&ring), |acc, c| &acc + &c.scale(&field.random(&mut rng)));
    let t = Polynomial::var(&ring, 0);
    gens.push(&(&t * &combo) - &Polynomial::one(&ring));
    let gb = GroebnerBasis::compute(&ring, &gens, MonomialOrder::Elimination(1 + ns), &Default::default())?;
    let image = Ideal::new(&spec.target, spec.restrict_to_target(&gb, 1 + ns));
    finish_image(image)
}

/// Kernel of `k[w] -> k[x]/(C)`, `w_i -> c_i`: eliminate the source variables
/// from `(C, w_i - c_i)`. An independent route to the same ideal.
pub fn implicitize_by_kernel<F: Field>(spec: &CurveMapSpec<F>) -> Result<Ideal<F>, CurveError> {
    let ns = spec.source.nvars();
    let ring = spec.product_ring(&[], ns);
    let mut gens = vec![spec.embed_source(&ring, 0, &spec.curve)];
    for (i, c) in spec.components.iter().enumerate() {
        gens.push(&spec.target_var(&ring, 0, i) - &spec.embed_source(&ring, 0, c));
    }
    let gb = GroebnerBasis::compute(&ring, &gens, MonomialOrder::Elimination(ns), &Default::default())?;
    let image = Ideal::new(&spec.target, spec.restrict_to_target(&gb, ns));
    finish_image(image)
}

fn finish_image<F: Field>(image: Ideal<F>) -> Result<Ideal<F>, CurveError> {
    let sat = image.saturate_irrelevant()?;
    let hp = hilbert_polynomial(&sat)?;
    if hp.degree() != Some(1) {
        return Err(CurveError::not_a_curve(&hp));
    }
    Ok(sat)
}

/// Whether the curve cut out by `ideal` is smooth: the ideal plus the 2x2
/// minors of the Jacobian matrix of its generators defines the empty scheme.
pub fn curve_is_smooth<F: Field>(ideal: &Ideal<F>) -> Result<bool, GbError> {
    let gb = ideal.grevlex()?;
    let gens: Vec<_> = gb.elements().iter().map(|g| g.with_ring(ideal.ring())).collect();
    let grads: Vec<Vec<Polynomial<F>>> = gens.iter().map(|g| g.gradient()).collect();
    let n = ideal.ring().nvars();
    let mut all = gens.clone();
    for a in 0..grads.len() {
        for b in a + 1..grads.len() {
            for i in 0..n {
                for j in i + 1..n {
                    let m = &(&grads[a][i] * &grads[b][j]) - &(&grads[a][j] * &grads[b][i]);
                    if !m.is_zero() {
                        all.push(m);
                    }
                }
            }
        }
    }
    Ok(hilbert_polynomial(&Ideal::new(ideal.ring(), all).with_budget(ideal.budget()))?.is_zero())
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CurveReport {
    /// Reduced grevlex basis of the saturated curve ideal.
    pub curve_ideal: Vec<String>,
    pub generator_profile: BTreeMap<u32, usize>,
    pub profile_max_degree: u32,
    /// Every minimal generator has degree at most `profile_max_degree`.
    pub profile_complete: bool,
    pub hilbert_poly: String,
    pub degree_d: i64,
    pub arithmetic_genus: i64,
    /// Dimension of the degree-4 part of the ideal.
    pub quartics: usize,
    pub quartic_cutout_equal: bool,
    pub y_smooth: bool,
    pub serre: BundleInvariants,
    pub field: String,
}

pub fn curve_report<F: Field>(spec: &CurveMapSpec<F>) -> Result<CurveReport, CurveError> {
    let ideal = implicitize(spec)?;
    report_for_ideal(&ideal)
}

/// The report fields computed from a saturated curve ideal.
pub fn report_for_ideal<F: Field>(ideal: &Ideal<F>) -> Result<CurveReport, CurveError> {
    let hp: HilbertPolynomial = hilbert_polynomial(ideal)?;
    if hp.degree() != Some(1) {
        return Err(CurveError::not_a_curve(&hp));
    }
    let degree_d = hp.scheme_degree().unwrap() as i64;
    let genus = hp.curve_genus().unwrap();
    let profile = minimal_generator_profile(ideal, PROFILE_MAX_DEGREE)?;
    // minimal generators of a homogeneous ideal occur among its reduced basis
    let gb_max_degree = ideal.grevlex()?.elements().iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    let quartics = degree_part(ideal, 4)?;
    let cutout = if quartics.is_empty() {
        false
    } else {
        Ideal::new(ideal.ring(), quartics.clone()).saturate_irrelevant()?.same_as(ideal)?
    };
    Ok(CurveReport {
        curve_ideal: ideal.grevlex()?.elements().iter().map(|g| g.to_string()).collect(),
        generator_profile: profile,
        profile_max_degree: PROFILE_MAX_DEGREE,
        profile_complete: gb_max_degree <= PROFILE_MAX_DEGREE,
        hilbert_poly: hp.to_string(),
        degree_d,
        arithmetic_genus: genus,
        quartics: quartics.len(),
        quartic_cutout_equal: cutout,
        y_smooth: curve_is_smooth(ideal)?,
        serre: bundle_invariants(serre_gamma(degree_d)),
        field: ideal.ring().field().spec().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};

    /// Every generator pulled back along the map lies in the ideal of the source curve.
    fn pulls_back_to_zero<F: Field>(spec: &CurveMapSpec<F>, ideal: &Ideal<F>) -> bool {
        let source_ideal = Ideal::new(&spec.source, vec![spec.curve.clone()]);
        ideal.generators().iter().all(|g| {
            let pulled = substitute_into(g, &spec.components);
            source_ideal.contains(&pulled).unwrap()
        })
    }

    fn substitute_into<F: Field>(g: &Polynomial<F>, images: &[Polynomial<F>]) -> Polynomial<F> {
        let ring = images[0].ring();
        g.terms().iter().fold(Polynomial::zero(ring), |acc, (m, c)| {
            let mut t = Polynomial::constant(ring, c.clone());
            for (i, img) in images.iter().enumerate() {
                t = &t * &img.pow(m.exponent(i));
            }
            &acc + &t
        })
    }

    #[test]
    fn twisted_cubic() {
        let spec = CurveMapSpec::preset("twisted-cubic", Rationals).unwrap();
        let i = implicitize(&spec).unwrap();
        let minors = Ideal::new(
            &spec.target,
            ["w0*w2 - w1^2", "w1*w3 - w2^2", "w0*w3 - w1*w2"].iter().map(|s| parse_polynomial(s, &spec.target).unwrap()).collect(),
        );
        assert!(i.same_as(&minors).unwrap());
        assert!(pulls_back_to_zero(&spec, &minors));
        let rep = report_for_ideal(&i).unwrap();
        assert_eq!(rep.generator_profile, BTreeMap::from([(2, 3)]));
        assert_eq!((rep.hilbert_poly.as_str(), rep.degree_d, rep.arithmetic_genus), ("3t + 1", 3, 0));
        assert_eq!((rep.serre.gamma, rep.serre.predicted_nodes), (4, 48));
        assert!(rep.y_smooth);
    }

    #[test]
    fn paper_curve_over_fp() {
        let spec = CurveMapSpec::preset("paper-degree8", Fp::new(32003).unwrap()).unwrap();
        let i = implicitize(&spec).unwrap();
        assert!(pulls_back_to_zero(&spec, &i));
        assert!(i.same_as(&implicitize_by_kernel(&spec).unwrap()).unwrap());
        assert!(i.same_as(&i.saturate_irrelevant_exact().unwrap()).unwrap());
        let rep = report_for_ideal(&i).unwrap();
        assert_eq!(rep.generator_profile, BTreeMap::from([(4, 3), (5, 4)]));
        assert_eq!(rep.hilbert_poly, "8t");
        assert_eq!((rep.degree_d, rep.arithmetic_genus), (8, 1));
        assert!(rep.quartic_cutout_equal);
        assert_eq!(rep.quartics, 3);
        assert_eq!((rep.serre.gamma, rep.serre.predicted_nodes), (-16, 128));
        // the Hilbert polynomial takes over from the regularity margin on
        let hp = hilbert_polynomial(&i).unwrap();
        for d in 9..12 {
            let hf = crate::hilbert::hilbert_function(&i, d).unwrap() as i64;
            assert_eq!(hp.evaluate(d as i64), num_rational::BigRational::from_integer(hf.into()));
        }
    }

    #[test]
    fn elliptic_quintic_has_base_point() {
        let spec = CurveMapSpec::preset("elliptic-quintic", Fp::new(32003).unwrap()).unwrap();
        let i = implicitize(&spec).unwrap();
        assert!(i.same_as(&implicitize_by_kernel(&spec).unwrap()).unwrap());
        let rep = report_for_ideal(&i).unwrap();
        assert_eq!(rep.hilbert_poly, "5t");
        assert_eq!((rep.serre.gamma, rep.serre.predicted_nodes), (-4, 80));
    }

    #[test]
    fn degenerate_maps() {
        let f = Fp::new(32003).unwrap();
        let src = Ring::new(f, &["x", "y", "z"], MonomialOrder::GrevLex);
        let w = Ring::new(f, &["w0", "w1", "w2", "w3"], MonomialOrder::GrevLex);
        let p = |s: &str| parse_polynomial(s, &src).unwrap();
        let curve = p("y^2*z - x^3 + x*z^2");
        // all components equal: the image is a point
        let spec = CurveMapSpec::new(src.clone(), curve.clone(), vec![p("x^2"); 4], w.clone()).unwrap();
        assert!(matches!(implicitize(&spec), Err(CurveError::NotACurve { dimension: 0, .. })));
        // mixed degrees
        assert!(CurveMapSpec::new(src.clone(), curve.clone(), vec![p("x^2"), p("x"), p("y^2"), p("z^2")], w.clone()).is_err());
        // everything vanishes on the curve
        assert!(CurveMapSpec::new(src, curve.clone(), vec![curve.clone(); 4], w).is_err());
        assert!(matches!(CurveMapSpec::preset("nope", f), Err(CurveError::UnknownPreset(_))));
    }
}
