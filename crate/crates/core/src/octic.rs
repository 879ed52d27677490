//! Discriminant octics of split rank-two bundles on P^3.
//!
//! A section of `O ⊕ O(a)` twisted so that the quadratic form on the fibers
//! has coefficients `f, g, h` of degrees `4 - a, 4, 4 + a` gives the conic
//! bundle `X = {f x0^2 + g x0 x1 + h x1^2 = 0}` over P^3. It degenerates along
//! the octic `g^2 - 4 f h`, whose singular points are expected to be exactly the
//! points where `f`, `g` and `h` all vanish, each of them an ordinary node.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::groebner::GbError;
use crate::ideal::Ideal;
use crate::invariants::{bundle_invariants, BundleInvariants};
use crate::monomial::Monomial;
use crate::poly::{random_homogeneous_with, same_ring, Polynomial, Ring, RingRef};
use crate::zerodim::{check_reduced, zero_dim_degree, zero_dim_radical_equal, Reducedness, ReducednessCheck, ZeroDimDegree, ZeroDimError};

/// Attempts allowed to the reducedness check before it gives up.
pub const REDUCEDNESS_ATTEMPTS: u32 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OcticError {
    #[error("invalid section triple: {0}")]
    InvalidTriple(String),
    #[error("the discriminant vanishes identically")]
    DegenerateOctic,
    #[error("point is not a singular point of the octic")]
    NotSingular,
    #[error("witness fails the fiber equations")]
    WitnessFailed,
    #[error(transparent)]
    Gb(#[from] GbError),
}

impl From<ZeroDimError> for OcticError {
    fn from(e: ZeroDimError) -> Self {
        match e {
            ZeroDimError::Gb(g) => OcticError::Gb(g),
            // callers only pass zero-dimensional ideals; anything else is a logic error upstream
            ZeroDimError::NotZeroDimensional => OcticError::InvalidTriple("expected a zero-dimensional scheme".into()),
        }
    }
}

/// Coefficients of the fiberwise quadratic form for the split type `O ⊕ O(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionTriple<F: Field> {
    pub a: u32,
    pub f: Polynomial<F>,
    pub g: Polynomial<F>,
    pub h: Polynomial<F>,
}

impl<F: Field> SectionTriple<F> {
    /// Checks degrees `(4 - a, 4, 4 + a)` and homogeneity. Zero coefficients are allowed.
    pub fn new(a: u32, f: Polynomial<F>, g: Polynomial<F>, h: Polynomial<F>) -> Result<Self, OcticError> {
        if a > 4 {
            return Err(OcticError::InvalidTriple(format!("split type a = {a} outside 0..=4")));
        }
        if f.ring().nvars() != 4 {
            return Err(OcticError::InvalidTriple("the ring must have four variables".into()));
        }
        if !same_ring(f.ring(), g.ring()) || !same_ring(f.ring(), h.ring()) {
            return Err(OcticError::InvalidTriple("f, g, h live in different rings".into()));
        }
        for (name, p, d) in [("f", &f, 4 - a), ("g", &g, 4), ("h", &h, 4 + a)] {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() || p.degree() != Some(d) {
                return Err(OcticError::InvalidTriple(format!("{name} must be homogeneous of degree {d}")));
            }
        }
        Ok(SectionTriple { a, f, g, h })
    }

    /// Uniformly random coefficients, reproducible from `seed`.
    pub fn random(ring: &RingRef<F>, a: u32, seed: u64) -> Result<Self, OcticError> {
        if a > 4 {
            return Err(OcticError::InvalidTriple(format!("split type a = {a} outside 0..=4")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_homogeneous_with(ring, 4 - a, &mut rng);
        let g = random_homogeneous_with(ring, 4, &mut rng);
        let h = random_homogeneous_with(ring, 4 + a, &mut rng);
        Self::new(a, f, g, h)
    }

    pub fn ring(&self) -> &RingRef<F> {
        self.f.ring()
    }

    pub fn gamma(&self) -> i64 {
        (self.a * self.a) as i64
    }

    pub fn scale(&self, r: &F::Elem) -> Self {
        SectionTriple { a: self.a, f: self.f.scale(r), g: self.g.scale(r), h: self.h.scale(r) }
    }

    /// The fiber quadric `s = f x0^2 + g x0 x1 + h x1^2` evaluated at `(z, x)`.
    pub fn evaluate_form(&self, z: &[F::Elem], x: &[F::Elem; 2]) -> F::Elem {
        let fl = self.ring().field();
        let (x0, x1) = (&x[0], &x[1]);
        let terms = [
            fl.mul(&self.f.evaluate(z), &fl.mul(x0, x0)),
            fl.mul(&self.g.evaluate(z), &fl.mul(x0, x1)),
            fl.mul(&self.h.evaluate(z), &fl.mul(x1, x1)),
        ];
        terms.iter().fold(fl.zero(), |acc, t| fl.add(&acc, t))
    }
}

/// `f`, `g`, `h` as products of `4 - a`, `4` and `4 + a` linear forms with
/// small random integer coefficients; the forms are returned alongside.
pub fn linear_forms_triple<F: Field>(
    ring: &RingRef<F>,
    a: u32,
    seed: u64,
) -> Result<(SectionTriple<F>, [Vec<Polynomial<F>>; 3]), OcticError> {
    if a > 4 {
        return Err(OcticError::InvalidTriple(format!("split type a = {a} outside 0..=4")));
    }
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = ring.field();
    let mut forms = |k: u32| -> Vec<Polynomial<F>> {
        (0..k)
            .map(|_| {
                let terms = (0..4).map(|j| (Monomial::var(j), field.from_i64(rng.gen_range(-30..=30)))).collect();
                Polynomial::from_terms(ring, terms)
            })
            .collect()
    };
    let lists = [forms(4 - a), forms(4), forms(4 + a)];
    let product = |v: &[Polynomial<F>]| v.iter().fold(Polynomial::one(ring), |acc, l| &acc * l);
    let t = SectionTriple::new(a, product(&lists[0]), product(&lists[1]), product(&lists[2]))?;
    Ok((t, lists))
}

/// `g^2 - 4 f h`.
pub fn discriminant_octic<F: Field>(t: &SectionTriple<F>) -> Polynomial<F> {
    let four = Polynomial::constant(t.ring(), t.ring().field().from_i64(4));
    &(&t.g * &t.g) - &(&four * &(&t.f * &t.h))
}

pub struct NodeScheme<F: Field> {
    /// `(f, g, h)` saturated by the irrelevant ideal.
    pub ideal: Ideal<F>,
    pub degree: ZeroDimDegree,
}

pub fn node_scheme<F: Field>(t: &SectionTriple<F>) -> Result<NodeScheme<F>, OcticError> {
    node_scheme_with(t, &crate::groebner::Budget::default())
}

pub fn node_scheme_with<F: Field>(t: &SectionTriple<F>, budget: &crate::groebner::Budget) -> Result<NodeScheme<F>, OcticError> {
    let raw = Ideal::new(t.ring(), vec![t.f.clone(), t.g.clone(), t.h.clone()]).with_budget(*budget);
    let degree = zero_dim_degree(&raw)?;
    let ideal = raw.saturate_irrelevant()?;
    Ok(NodeScheme { ideal, degree })
}

/// `(Δ, ∂Δ/∂z0, ..., ∂Δ/∂z3)` saturated by the irrelevant ideal.
pub fn singular_locus<F: Field>(octic: &Polynomial<F>) -> Result<Ideal<F>, OcticError> {
    singular_locus_with(octic, &crate::groebner::Budget::default())
}

pub fn singular_locus_with<F: Field>(octic: &Polynomial<F>, budget: &crate::groebner::Budget) -> Result<Ideal<F>, OcticError> {
    if octic.is_zero() {
        return Err(OcticError::DegenerateOctic);
    }
    let mut gens = vec![octic.clone()];
    gens.extend(octic.gradient());
    Ok(Ideal::new(octic.ring(), gens).with_budget(*budget).saturate_irrelevant()?)
}

/// Total Tjurina number of the singular points of a hypersurface, the
/// projective degree of its singular scheme.
pub fn tjurina_degree<F: Field>(octic: &Polynomial<F>) -> Result<ZeroDimDegree, OcticError> {
    Ok(zero_dim_degree(&singular_locus(octic)?)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certificate {
    Certified,
    Failed,
    NotCertified,
}

impl Certificate {
    pub fn passed(self) -> bool {
        self == Certificate::Certified
    }
}

pub fn certify_sing_equals_p<F: Field>(t: &SectionTriple<F>) -> Result<bool, OcticError> {
    let nodes = node_scheme(t)?;
    if nodes.degree.finite().is_none() {
        return Ok(false);
    }
    let sing = singular_locus(&discriminant_octic(t))?;
    sing_equals_p(&sing, &nodes)
}

fn sing_equals_p<F: Field>(sing: &Ideal<F>, nodes: &NodeScheme<F>) -> Result<bool, OcticError> {
    match zero_dim_radical_equal(sing, &nodes.ideal) {
        Ok(b) => Ok(b),
        Err(ZeroDimError::NotZeroDimensional) => Ok(false),
        Err(ZeroDimError::Gb(e)) => Err(e.into()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct A1Check {
    pub certificate: Certificate,
    pub tjurina_degree: ZeroDimDegree,
    pub node_degree: ZeroDimDegree,
    pub reducedness: Option<ReducednessCheck>,
}

pub fn certify_all_a1<F: Field>(t: &SectionTriple<F>, seed: u64) -> Result<A1Check, OcticError> {
    let nodes = node_scheme(t)?;
    let sing = singular_locus(&discriminant_octic(t))?;
    all_a1(&sing, &nodes, seed)
}

fn all_a1<F: Field>(sing: &Ideal<F>, nodes: &NodeScheme<F>, seed: u64) -> Result<A1Check, OcticError> {
    let tjurina = zero_dim_degree(sing)?;
    let mut out = A1Check { certificate: Certificate::Failed, tjurina_degree: tjurina, node_degree: nodes.degree, reducedness: None };
    let (Some(tj), Some(n)) = (tjurina.finite(), nodes.degree.finite()) else { return Ok(out) };
    if tj != n {
        return Ok(out);
    }
    let red = check_reduced(&nodes.ideal, seed, REDUCEDNESS_ATTEMPTS)?;
    out.certificate = match red.verdict {
        Reducedness::Reduced => Certificate::Certified,
        Reducedness::NotReduced => Certificate::Failed,
        Reducedness::NotCertified => Certificate::NotCertified,
    };
    out.reducedness = Some(red);
    Ok(out)
}

/// Tjurina test on a bare octic: the singular scheme is finite and its degree
/// equals the expected number of points.
pub fn raw_tjurina_check<F: Field>(octic: &Polynomial<F>, points: u64) -> Result<bool, OcticError> {
    Ok(tjurina_degree(octic)?.finite() == Some(points))
}

/// The fiber-chart hypersurfaces of `X` in `(z0..z3, u)`: `f u^2 + g u + h` and `f + g v + h v^2`.
pub fn fiber_charts<F: Field>(t: &SectionTriple<F>) -> (RingRef<F>, [Polynomial<F>; 2]) {
    let ring = t.ring();
    let mut names: Vec<String> = ring.vars().to_vec();
    let mut u = "u".to_string();
    while names.contains(&u) {
        u.push('_');
    }
    names.push(u);
    let ext = Ring::new(ring.field().clone(), &names, crate::monomial::MonomialOrder::GrevLex);
    let lift = |p: &Polynomial<F>| p.map_vars(&ext, &[0, 1, 2, 3]);
    let (f, g, h) = (lift(&t.f), lift(&t.g), lift(&t.h));
    let u = Polynomial::var(&ext, 4);
    let u2 = &u * &u;
    let first = &(&(&f * &u2) + &(&g * &u)) + &h;
    let second = &(&f + &(&g * &u)) + &(&h * &u2);
    (ext, [first, second])
}

/// `X` is smooth iff in each fiber chart the ideal `(F, ∂F/∂u, ∂F/∂z_j)` has no
/// zero with `z ≠ 0`; this is checked on each of the affine pieces `z_i = 1`.
pub fn certify_x_smooth<F: Field>(t: &SectionTriple<F>) -> Result<bool, OcticError> {
    certify_x_smooth_with(t, &crate::groebner::Budget::default())
}

pub fn certify_x_smooth_with<F: Field>(t: &SectionTriple<F>, budget: &crate::groebner::Budget) -> Result<bool, OcticError> {
    let (ext, charts) = fiber_charts(t);
    for chart in &charts {
        let mut gens = vec![chart.clone()];
        gens.extend(chart.gradient());
        for i in 0..4 {
            let local: Vec<_> = gens.iter().map(|p| p.dehomogenize(i)).collect();
            if !Ideal::new(&ext, local).with_budget(*budget).is_unit()? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness<F: Field> {
    /// The point `[x0 : x1]` of the fiber over `z` where `X` is tangent to it.
    Point([F::Elem; 2]),
    /// `f`, `g`, `h` all vanish at `z`: the whole fiber lies in `X`.
    FiberCase,
}

/// For a singular point `z` of the octic, the fiber point where the conic
/// degenerates, `[g(z) : -2 f(z)]` (or `[-2 h(z) : g(z)]` when `f(z) = g(z) = 0`).
/// The witness is checked against `s` and all its partial derivatives.
pub fn witness_singular_point<F: Field>(t: &SectionTriple<F>, z: &[F::Elem]) -> Result<Witness<F>, OcticError> {
    let fl = t.ring().field().clone();
    let delta = discriminant_octic(t);
    if !fl.is_zero(&delta.evaluate(z)) || delta.gradient().iter().any(|d| !fl.is_zero(&d.evaluate(z))) {
        return Err(OcticError::NotSingular);
    }
    let (fz, gz, hz) = (t.f.evaluate(z), t.g.evaluate(z), t.h.evaluate(z));
    let two = fl.from_i64(2);
    let x = if !fl.is_zero(&fz) || !fl.is_zero(&gz) {
        [gz.clone(), fl.neg(&fl.mul(&two, &fz))]
    } else if !fl.is_zero(&hz) {
        [fl.neg(&fl.mul(&two, &hz)), gz.clone()]
    } else {
        return Ok(Witness::FiberCase);
    };
    if !witness_equations_vanish(t, z, &x) {
        return Err(OcticError::WitnessFailed);
    }
    Ok(Witness::Point(x))
}

/// `s`, `∂s/∂x0 = 2 f x0 + g x1`, `∂s/∂x1 = g x0 + 2 h x1` and every `∂s/∂z_j` vanish at `(z, x)`.
pub fn witness_equations_vanish<F: Field>(t: &SectionTriple<F>, z: &[F::Elem], x: &[F::Elem; 2]) -> bool {
    let fl = t.ring().field();
    let (fz, gz, hz) = (t.f.evaluate(z), t.g.evaluate(z), t.h.evaluate(z));
    let two = fl.from_i64(2);
    let dx0 = fl.add(&fl.mul(&fl.mul(&two, &fz), &x[0]), &fl.mul(&gz, &x[1]));
    let dx1 = fl.add(&fl.mul(&gz, &x[0]), &fl.mul(&fl.mul(&two, &hz), &x[1]));
    let mut values = vec![t.evaluate_form(z, x), dx0, dx1];
    for j in 0..4 {
        let partial = SectionTriple { a: t.a, f: t.f.derivative(j), g: t.g.derivative(j), h: t.h.derivative(j) };
        values.push(partial.evaluate_form(z, x));
    }
    values.iter().all(|v| fl.is_zero(v))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[allow(non_snake_case)]
pub struct OcticReport {
    pub a: u32,
    pub gamma: i64,
    pub octic: String,
    /// `null` when the node scheme is not zero-dimensional.
    pub node_degree: Option<u64>,
    pub node_scheme: ZeroDimDegree,
    pub sing_equals_P: bool,
    pub all_A1: bool,
    pub all_A1_certificate: Certificate,
    pub tjurina_degree: Option<u64>,
    pub node_scheme_reduced: Option<Reducedness>,
    pub X_smooth: bool,
    pub c3_X: i64,
    pub predicted_nodes: i64,
    pub minus_K_fourth: i64,
    pub admissible: bool,
    /// All three certificates passed and the node count equals the prediction.
    pub certified: bool,
    pub seed: Option<u64>,
    pub field: String,
    pub order: String,
    pub coordinate_change_seed: u64,
    pub assumptions: Vec<String>,
    pub failures: Vec<String>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl OcticReport {
    /// JSON value without the timing block, for reproducibility comparisons.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        r.timings_ms.clear();
        r
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    /// Seed the instance was generated from, recorded in the report.
    pub seed: Option<u64>,
    pub coordinate_change_seed: u64,
    pub budget: crate::groebner::Budget,
    pub order: crate::monomial::MonomialOrder,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            seed: None,
            coordinate_change_seed: 1,
            budget: crate::groebner::Budget::default(),
            order: crate::monomial::MonomialOrder::GrevLex,
        }
    }
}

fn timed<T>(timings: &mut BTreeMap<String, u64>, name: &str, start: Instant, value: T) -> T {
    timings.insert(name.to_string(), start.elapsed().as_millis() as u64);
    value
}

/// Discriminant, node scheme, singular locus, the three certificates and the
/// invariants of one instance. The node scheme, singular locus and
/// smoothness stages run concurrently.
pub fn run_pipeline<F: Field>(t: &SectionTriple<F>, opts: &PipelineOptions) -> Result<OcticReport, OcticError> {
    let mut timings = BTreeMap::new();
    let total = Instant::now();
    let delta = discriminant_octic(t);
    if delta.is_zero() {
        return Err(OcticError::DegenerateOctic);
    }
    let budget = opts.budget;
    let (nodes, sing, smooth) = std::thread::scope(|s| {
        let nodes = s.spawn(|| {
            let start = Instant::now();
            (node_scheme_with(t, &budget), start.elapsed())
        });
        let sing = s.spawn(|| {
            let start = Instant::now();
            (singular_locus_with(&delta, &budget), start.elapsed())
        });
        let start = Instant::now();
        let smooth = (certify_x_smooth_with(t, &budget), start.elapsed());
        (nodes.join().expect("node scheme stage panicked"), sing.join().expect("singular locus stage panicked"), smooth)
    });
    for (name, d) in [("node_scheme", nodes.1), ("singular_locus", sing.1), ("x_smooth", smooth.1)] {
        timings.insert(name.to_string(), d.as_millis() as u64);
    }
    let (nodes, sing, x_smooth) = (nodes.0?, sing.0?, smooth.0?);

    let inv: BundleInvariants = bundle_invariants(t.gamma());
    let mut failures = Vec::new();
    if nodes.degree.finite().is_none() {
        failures.push("node scheme is NOT_ZERO_DIMENSIONAL".to_string());
    }
    let start = Instant::now();
    let sing_equals = if nodes.degree.finite().is_some() { sing_equals_p(&sing, &nodes)? } else { false };
    let sing_equals = timed(&mut timings, "sing_equals_p", start, sing_equals);
    if !sing_equals {
        failures.push("singular locus differs from the node scheme".to_string());
    }
    let start = Instant::now();
    let a1 = all_a1(&sing, &nodes, opts.coordinate_change_seed)?;
    let a1 = timed(&mut timings, "all_a1", start, a1);
    match a1.certificate {
        Certificate::Certified => {}
        Certificate::Failed => failures.push(format!(
            "A1 check failed: Tjurina degree {} against node degree {}",
            a1.tjurina_degree, a1.node_degree
        )),
        Certificate::NotCertified => failures.push("A1 check NOT_CERTIFIED: reducedness inconclusive".to_string()),
    }
    if !x_smooth {
        failures.push("X is singular".to_string());
    }
    let node_degree = nodes.degree.finite();
    let certified = sing_equals && a1.certificate.passed() && x_smooth;
    let matches = node_degree.map(|n| n as i64) == Some(inv.predicted_nodes);
    if certified && !matches {
        failures.push(format!("node degree {:?} differs from predicted {}", node_degree, inv.predicted_nodes));
    }
    timings.insert("total".to_string(), total.elapsed().as_millis() as u64);
    Ok(OcticReport {
        a: t.a,
        gamma: t.gamma(),
        octic: delta.to_string(),
        node_degree,
        node_scheme: nodes.degree,
        sing_equals_P: sing_equals,
        all_A1: a1.certificate.passed(),
        all_A1_certificate: a1.certificate,
        tjurina_degree: a1.tjurina_degree.finite(),
        node_scheme_reduced: a1.reducedness.map(|r| r.verdict),
        X_smooth: x_smooth,
        c3_X: inv.c3_x,
        predicted_nodes: inv.predicted_nodes,
        minus_K_fourth: inv.minus_k_fourth,
        admissible: inv.admissible,
        certified: certified && matches,
        seed: opts.seed,
        field: t.ring().field().spec().to_string(),
        order: opts.order.to_string(),
        coordinate_change_seed: opts.coordinate_change_seed,
        assumptions: vec![format!(
            "ordinary nodes detected by Tjurina number 1, valid in characteristic 0 or above 8 (here {})",
            t.ring().field().characteristic()
        )],
        failures,
        timings_ms: timings,
    })
}
