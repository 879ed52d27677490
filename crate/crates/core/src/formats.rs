//! Plain-text input files.
//!
//! All formats are line based. Blank lines and lines starting with `#` are
//! ignored; other lines are either `key: value` or, in ideal files, bare
//! polynomials.
//!
//! Ideal file:
//! ```text
//! vars: z0 z1 z2 z3
//! field: fp 32003
//! z0^2 - z1*z2
//! ```
//! Section triple file (`f`, `g`, `h` may be repeated; repeated lines multiply):
//! ```text
//! vars: z0 z1 z2 z3
//! a: 2
//! f: z0 + z1
//! g: z2^4 - z3^4
//! h: z0^6 + z3^6
//! point: 1 0 -1 2
//! ```
//! Curve map file:
//! ```text
//! source: x y z
//! target: w0 w1 w2 w3
//! curve: y^2*z - x^3 + x*z^2
//! component: x^2*y + x*y*z + z^3
//! ```
//! followed by three more `component:` lines.

use num_bigint::BigInt;
use thiserror::Error;

use crate::curve::CurveMapSpec;
use crate::field::{Field, FieldSpec};
use crate::monomial::MonomialOrder;
use crate::octic::SectionTriple;
use crate::parse::parse_polynomial;
use crate::poly::{Polynomial, Ring, RingRef};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, msg: msg.into() })
}

#[derive(Debug, Clone)]
struct Line {
    number: usize,
    key: Option<String>,
    value: String,
}

fn lines(text: &str) -> Vec<Line> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                return None;
            }
            let (key, value) = match t.split_once(':') {
                Some((k, v)) if !k.is_empty() && k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') => {
                    (Some(k.to_string()), v.trim().to_string())
                }
                _ => (None, t.to_string()),
            };
            Some(Line { number: i + 1, key, value })
        })
        .collect()
}

fn parse_field(line: &Line) -> Result<FieldSpec, FormatError> {
    line.value.parse::<FieldSpec>().or_else(|e| err(line.number, e.to_string()))
}

fn parse_vars(line: &Line) -> Result<Vec<String>, FormatError> {
    let vars: Vec<String> = line.value.split_whitespace().map(str::to_string).collect();
    if vars.is_empty() {
        return err(line.number, "empty variable list");
    }
    if vars.len() > crate::monomial::MAX_VARS {
        return err(line.number, format!("at most {} variables", crate::monomial::MAX_VARS));
    }
    for (i, v) in vars.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return err(line.number, format!("invalid variable name {v:?}"));
        }
        if vars[..i].contains(v) {
            return err(line.number, format!("duplicate variable {v:?}"));
        }
    }
    Ok(vars)
}

fn poly<F: Field>(line: &Line, ring: &RingRef<F>) -> Result<Polynomial<F>, FormatError> {
    parse_polynomial(&line.value, ring).or_else(|e| err(line.number, e.to_string()))
}

/// An ideal file: variables, optional field and generator lines, not yet
/// bound to a coefficient field.
#[derive(Debug, Clone)]
pub struct IdealFile {
    pub vars: Vec<String>,
    pub field: Option<FieldSpec>,
    lines: Vec<Line>,
}

impl IdealFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut vars = None;
        let mut field = None;
        let mut polys = Vec::new();
        for l in lines(text) {
            match l.key.as_deref() {
                Some("vars") if vars.is_none() && polys.is_empty() => vars = Some(parse_vars(&l)?),
                Some("field") if field.is_none() && polys.is_empty() => field = Some(parse_field(&l)?),
                Some(k) => return err(l.number, format!("unexpected key {k:?}")),
                None if vars.is_none() => return err(l.number, "expected a `vars:` header first"),
                None => polys.push(l),
            }
        }
        let Some(vars) = vars else { return err(1, "missing `vars:` header") };
        Ok(IdealFile { vars, field, lines: polys })
    }

    pub fn build<F: Field>(&self, field: F, order: MonomialOrder) -> Result<(RingRef<F>, Vec<Polynomial<F>>), FormatError> {
        let ring = Ring::new(field, &self.vars, order);
        let polys = self.lines.iter().map(|l| poly(l, &ring)).collect::<Result<_, _>>()?;
        Ok((ring, polys))
    }
}

#[derive(Debug, Clone)]
pub struct TripleFile {
    pub vars: Vec<String>,
    pub field: Option<FieldSpec>,
    pub a: u32,
    factors: [Vec<Line>; 3],
    points: Vec<Line>,
}

/// A parsed triple together with its factor lists and the listed points.
pub struct TripleData<F: Field> {
    pub triple: SectionTriple<F>,
    pub factors: [Vec<Polynomial<F>>; 3],
    pub points: Vec<Vec<F::Elem>>,
}

impl TripleFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let (mut vars, mut field, mut a) = (None, None, None);
        let mut factors: [Vec<Line>; 3] = Default::default();
        let mut points = Vec::new();
        let mut last = 1;
        for l in lines(text) {
            last = l.number;
            match l.key.as_deref() {
                Some("vars") if vars.is_none() => vars = Some(parse_vars(&l)?),
                Some("field") if field.is_none() => field = Some(parse_field(&l)?),
                Some("a") if a.is_none() => match l.value.parse::<u32>() {
                    Ok(v) if v <= 4 => a = Some(v),
                    _ => return err(l.number, "a must be an integer in 0..=4"),
                },
                Some("f") => factors[0].push(l),
                Some("g") => factors[1].push(l),
                Some("h") => factors[2].push(l),
                Some("point") => points.push(l),
                Some(k) => return err(l.number, format!("unexpected key {k:?}")),
                None => return err(l.number, "expected `key: value`"),
            }
        }
        let Some(vars) = vars else { return err(last, "missing `vars:` line") };
        if vars.len() != 4 {
            return err(last, "a section triple needs four variables");
        }
        let Some(a) = a else { return err(last, "missing `a:` line") };
        for (k, name) in ["f", "g", "h"].iter().enumerate() {
            if factors[k].is_empty() {
                return err(last, format!("missing `{name}:` line"));
            }
        }
        Ok(TripleFile { vars, field, a, factors, points })
    }

    pub fn build<F: Field>(&self, field: F) -> Result<TripleData<F>, FormatError> {
        let ring = Ring::new(field, &self.vars, MonomialOrder::GrevLex);
        let mut factors: [Vec<Polynomial<F>>; 3] = Default::default();
        for (out, lines) in factors.iter_mut().zip(&self.factors) {
            *out = lines.iter().map(|l| poly(l, &ring)).collect::<Result<_, _>>()?;
        }
        let product = |v: &[Polynomial<F>]| v.iter().fold(Polynomial::one(&ring), |acc, p| &acc * p);
        let last = self.factors[2].last().unwrap().number;
        let triple = SectionTriple::new(self.a, product(&factors[0]), product(&factors[1]), product(&factors[2]))
            .or_else(|e| err(last, e.to_string()))?;
        let points = self.points.iter().map(|l| parse_point(l, ring.field())).collect::<Result<_, _>>()?;
        Ok(TripleData { triple, factors, points })
    }
}

fn parse_point<F: Field>(line: &Line, field: &F) -> Result<Vec<F::Elem>, FormatError> {
    let coords: Vec<&str> = line.value.split_whitespace().collect();
    if coords.len() != 4 {
        return err(line.number, "a point needs four coordinates");
    }
    coords
        .iter()
        .map(|c| {
            let (n, d) = c.split_once('/').unwrap_or((c, "1"));
            match (n.parse::<BigInt>(), d.parse::<BigInt>()) {
                (Ok(n), Ok(d)) => field.from_ratio(&n, &d).map_or_else(|| err(line.number, format!("{c} is not defined in the field")), Ok),
                _ => err(line.number, format!("bad coordinate {c:?}")),
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct CurveFile {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub field: Option<FieldSpec>,
    curve: Line,
    components: Vec<Line>,
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let (mut source, mut target, mut field, mut curve) = (None, None, None, None);
        let mut components = Vec::new();
        let mut last = 1;
        for l in lines(text) {
            last = l.number;
            match l.key.as_deref() {
                Some("source") if source.is_none() => source = Some(parse_vars(&l)?),
                Some("target") if target.is_none() => target = Some(parse_vars(&l)?),
                Some("field") if field.is_none() => field = Some(parse_field(&l)?),
                Some("curve") if curve.is_none() => curve = Some(l),
                Some("component") => components.push(l),
                Some(k) => return err(l.number, format!("unexpected or repeated key {k:?}")),
                None => return err(l.number, "expected `key: value`"),
            }
        }
        let Some(source) = source else { return err(last, "missing `source:` line") };
        let target = target.unwrap_or_else(|| (0..4).map(|i| format!("w{i}")).collect());
        if target.len() != 4 {
            return err(last, "the target needs four variables");
        }
        let Some(curve) = curve else { return err(last, "missing `curve:` line") };
        if components.len() != 4 {
            return err(last, format!("expected four `component:` lines, found {}", components.len()));
        }
        Ok(CurveFile { source, target, field, curve, components })
    }

    pub fn build<F: Field>(&self, field: F) -> Result<CurveMapSpec<F>, FormatError> {
        let source = Ring::new(field.clone(), &self.source, MonomialOrder::GrevLex);
        let target = Ring::new(field, &self.target, MonomialOrder::GrevLex);
        let curve = poly(&self.curve, &source)?;
        let comps = self.components.iter().map(|l| poly(l, &source)).collect::<Result<Vec<_>, _>>()?;
        let last = self.components.last().unwrap().number;
        CurveMapSpec::new(source, curve, comps, target).or_else(|e| err(last, e.to_string()))
    }
}
