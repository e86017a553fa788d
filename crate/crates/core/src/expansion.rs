//! The gcd expansion of first-quadrant directions on the staircase.
//!
//! A direction in sector i is pulled back by M_i^{-1}. Reaching the horizontal
//! or the vertical means the direction is parabolic; revisiting a direction
//! means the expansion is eventually periodic and the direction is fixed by a
//! hyperbolic element built from the period word.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{eval_mod, pow_mod, Field, FieldElement, IntPoly};
use crate::linalg::{Mat2, Vec2};
use crate::model::{MatK, StaircaseModel, VecK};

pub const DEFAULT_MAX_STEPS: usize = 10_000;

/// A projective direction in the closed first quadrant, scaled to (1, s) or
/// (0, 1). The slope s is kept as an integer numerator vector over a positive
/// denominator in lowest terms, which is canonical.
#[derive(Clone)]
pub struct DirectionK {
    ctx: Field,
    /// None for the vertical direction.
    slope: Option<(IntPoly, BigInt)>,
    quarter_turn: bool,
}

impl PartialEq for DirectionK {
    fn eq(&self, o: &Self) -> bool {
        self.slope == o.slope
    }
}

impl Eq for DirectionK {}

impl Hash for DirectionK {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.slope.hash(state);
    }
}

impl fmt::Debug for DirectionK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x(), self.y())
    }
}

impl fmt::Display for DirectionK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x(), self.y())
    }
}

/// Scales a nonzero vector with x, y ≥ 0 to (1, y/x) or (0, 1).
fn canonical(x: &FieldElement, y: &FieldElement, quarter_turn: bool) -> Result<DirectionK> {
    let ctx = x.context();
    if x.is_zero() {
        if y.is_zero() {
            return Err(Error::ZeroDirection);
        }
        return Ok(DirectionK {
            ctx: ctx.clone(),
            slope: None,
            quarter_turn,
        });
    }
    Ok(DirectionK {
        ctx: ctx.clone(),
        slope: Some(y.try_div(x)?.to_int_parts()),
        quarter_turn,
    })
}

/// Same as `canonical` for a vector with coefficients in Z[a].
fn canonical_int(ctx: &Field, x: &[BigInt], y: &[BigInt]) -> Result<DirectionK> {
    let slope = match ctx.div_int(y, x) {
        Some(s) => Some(s),
        None if y.iter().all(Zero::is_zero) => return Err(Error::ZeroDirection),
        None => None,
    };
    Ok(DirectionK {
        ctx: ctx.clone(),
        slope,
        quarter_turn: false,
    })
}

/// Projective representative in the closed first quadrant: negate if x < 0
/// (or x = 0 and y < 0), then rotate a quarter turn if y < 0.
pub fn normalize_direction(x: &FieldElement, y: &FieldElement) -> Result<DirectionK> {
    if x.context().n() != y.context().n() {
        return Err(Error::ContextMismatch(x.context().n(), y.context().n()));
    }
    if x.is_zero() && y.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let (mut x, mut y) = (x.clone(), y.clone());
    let sx = x.signum();
    if sx < 0 || (sx == 0 && y.is_negative()) {
        x = -x;
        y = -y;
    }
    let mut turned = false;
    if y.is_negative() {
        (x, y) = (-y, x);
        turned = true;
    }
    canonical(&x, &y, turned)
}

impl DirectionK {
    pub fn new(x: &FieldElement, y: &FieldElement) -> Result<Self> {
        normalize_direction(x, y)
    }

    pub fn from_vec(v: &VecK) -> Result<Self> {
        normalize_direction(&v.x, &v.y)
    }

    pub fn horizontal(ctx: &Field) -> Self {
        DirectionK {
            ctx: ctx.clone(),
            slope: Some((vec![BigInt::zero(); ctx.degree()], BigInt::one())),
            quarter_turn: false,
        }
    }

    pub fn vertical(ctx: &Field) -> Self {
        DirectionK {
            ctx: ctx.clone(),
            slope: None,
            quarter_turn: false,
        }
    }

    /// 1, or 0 for the vertical.
    pub fn x(&self) -> FieldElement {
        if self.slope.is_some() {
            FieldElement::one(&self.ctx)
        } else {
            FieldElement::zero(&self.ctx)
        }
    }

    /// The slope, or 1 for the vertical.
    pub fn y(&self) -> FieldElement {
        match &self.slope {
            Some((num, den)) => FieldElement::from_int_parts(&self.ctx, num, den),
            None => FieldElement::one(&self.ctx),
        }
    }

    pub fn to_vec(&self) -> VecK {
        Vec2::new(self.x(), self.y())
    }

    /// A positive multiple (den, num) with coefficients in Z[a].
    fn int_vec(&self) -> (IntPoly, IntPoly) {
        let d = self.ctx.degree();
        let mut unit = vec![BigInt::zero(); d];
        match &self.slope {
            Some((num, den)) => {
                unit[0] = den.clone();
                (unit, num.clone())
            }
            None => {
                unit[0] = BigInt::one();
                (vec![BigInt::zero(); d], unit)
            }
        }
    }

    /// Whether normalization rotated the input by a quarter turn.
    pub fn was_rotated(&self) -> bool {
        self.quarter_turn
    }

    pub fn is_horizontal(&self) -> bool {
        matches!(&self.slope, Some((num, _)) if num.iter().all(Zero::is_zero))
    }

    pub fn is_vertical(&self) -> bool {
        self.slope.is_none()
    }

    pub fn field(&self) -> &Field {
        &self.ctx
    }

    /// Bit size of the largest slope coefficient or denominator.
    pub fn height_bits(&self) -> u64 {
        match &self.slope {
            Some((num, den)) => num.iter().map(|c| c.bits()).max().unwrap_or(0).max(den.bits()),
            None => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Terminal {
    Horizontal,
    Vertical,
}

impl Terminal {
    pub fn name(&self) -> &'static str {
        match self {
            Terminal::Horizontal => "horizontal",
            Terminal::Vertical => "vertical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Locus {
    Sector(usize),
    Terminal(Terminal),
}

fn int_combine(ctx: &Field, p: &[BigInt], x: &[BigInt], q: &[BigInt], y: &[BigInt]) -> IntPoly {
    let a = ctx.mul_int(p, x);
    let b = ctx.mul_int(q, y);
    a.into_iter().zip(b).map(|(u, v)| u + v).collect()
}

/// A first-quadrant direction as a nonzero vector in Z[a]^2. Not canonical:
/// the same direction can come back scaled.
#[derive(Clone)]
struct Rep {
    x: IntPoly,
    y: IntPoly,
}

impl Rep {
    fn of(v: &DirectionK) -> Rep {
        let (x, y) = v.int_vec();
        Rep { x, y }
    }

    fn direction(&self, ctx: &Field) -> DirectionK {
        canonical_int(ctx, &self.x, &self.y).expect("nonzero direction")
    }

    fn same_ray(&self, o: &Rep, ctx: &Field) -> bool {
        let c = int_combine(ctx, &self.x, &o.y, &o.x.iter().map(|c| -c).collect::<Vec<_>>(), &self.y);
        c.iter().all(Zero::is_zero)
    }

    /// The point (x(r) : y(r)) of the projective line over F_p, or None when
    /// both vanish. Proportional vectors get the same point.
    fn fingerprint(&self, (p, r): (u64, u64)) -> Option<u64> {
        let x = eval_mod(&self.x, p, r);
        let y = eval_mod(&self.y, p, r);
        if x != 0 {
            Some((u128::from(y) * u128::from(pow_mod(x, p - 2, p)) % u128::from(p)) as u64)
        } else if y != 0 {
            Some(p)
        } else {
            None
        }
    }

    fn locate(&self, model: &StaircaseModel) -> Locus {
        if self.y.iter().all(Zero::is_zero) {
            return Locus::Terminal(Terminal::Horizontal);
        }
        if self.x.iter().all(Zero::is_zero) {
            return Locus::Terminal(Terminal::Vertical);
        }
        let ctx = model.field();
        // slopes of D_0..D_{2n} increase, so cross(D_i, v) ≥ 0 holds on a prefix
        let (mut lo, mut hi) = (0usize, model.diagonals().len() - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let [dx, dy] = model.int_diagonal(mid);
            let neg_dy: IntPoly = dy.iter().map(|c| -c).collect();
            let c = int_combine(ctx, dx, &self.y, &neg_dy, &self.x);
            if ctx.sign_int(&c) >= 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Locus::Sector(lo)
    }

    fn step(&self, model: &StaircaseModel) -> Result<(usize, Rep)> {
        let i = match self.locate(model) {
            Locus::Sector(i) => i,
            Locus::Terminal(_) => return Err(Error::TerminalDirection),
        };
        let ctx = model.field();
        let [m11, m12, m21, m22] = model.int_inverse(i);
        let x = int_combine(ctx, m11, &self.x, m12, &self.y);
        let y = int_combine(ctx, m21, &self.x, m22, &self.y);
        if ctx.sign_int(&x) < 0 || ctx.sign_int(&y) < 0 {
            return Err(Error::Invariant(format!(
                "M_{i}^-1 moved {} out of the first quadrant",
                self.direction(ctx)
            )));
        }
        Ok((i, Rep { x, y }))
    }
}

/// Sector i with cross(D_i, v) ≥ 0 and cross(v, D_{i+1}) > 0.
pub fn locate_sector(v: &DirectionK, model: &StaircaseModel) -> Locus {
    Rep::of(v).locate(model)
}

/// One step: (i, normalize(M_i^{-1} v)).
pub fn gcd_step(v: &DirectionK, model: &StaircaseModel) -> Result<(usize, DirectionK)> {
    let (i, next) = Rep::of(v).step(model)?;
    Ok((i, next.direction(model.field())))
}

// the hyperbolic record dominates and is the interesting case; no boxing
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitResult {
    Parabolic {
        word: Vec<usize>,
        steps: usize,
        terminal: Terminal,
    },
    Hyperbolic {
        preperiod: Vec<usize>,
        period: Vec<usize>,
        periodic_direction: DirectionK,
        /// Product of M over the period word; fixes `periodic_direction`.
        stabilizer: MatK,
        eigenvalue: FieldElement,
        /// W·S·W^{-1} with W the preperiod product; fixes the input.
        input_stabilizer: MatK,
        steps: usize,
    },
    Unresolved {
        steps: usize,
        last_direction: DirectionK,
    },
}

impl OrbitResult {
    pub fn class_name(&self) -> &'static str {
        match self {
            OrbitResult::Parabolic { .. } => "parabolic",
            OrbitResult::Hyperbolic { .. } => "hyperbolic",
            OrbitResult::Unresolved { .. } => "unresolved",
        }
    }

    pub fn steps(&self) -> usize {
        match self {
            OrbitResult::Parabolic { steps, .. }
            | OrbitResult::Hyperbolic { steps, .. }
            | OrbitResult::Unresolved { steps, .. } => *steps,
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, OrbitResult::Hyperbolic { .. })
    }

    pub fn is_parabolic(&self) -> bool {
        matches!(self, OrbitResult::Parabolic { .. })
    }

    pub fn stabilizer_trace(&self) -> Option<FieldElement> {
        match self {
            OrbitResult::Hyperbolic { stabilizer, .. } => Some(stabilizer.trace()),
            _ => None,
        }
    }
}

/// An expansion with every intermediate direction, input first.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub directions: Vec<DirectionK>,
    pub sectors: Vec<usize>,
    pub result: OrbitResult,
}

pub fn classify(v: &DirectionK, model: &StaircaseModel, max_steps: usize) -> OrbitResult {
    run(v, model, max_steps).1
}

pub fn expand(v: &DirectionK, model: &StaircaseModel, max_steps: usize) -> Expansion {
    let (reps, result) = run(v, model, max_steps);
    let ctx = model.field();
    let mut directions: Vec<DirectionK> = reps.iter().map(|r| r.direction(ctx)).collect();
    directions[0] = v.clone();
    let sectors = match &result {
        OrbitResult::Parabolic { word, .. } => word.clone(),
        OrbitResult::Hyperbolic {
            preperiod, period, ..
        } => [preperiod.as_slice(), period].concat(),
        OrbitResult::Unresolved { .. } => {
            // the word is not kept in the result; recover it from the directions
            directions
                .windows(2)
                .map(|w| match locate_sector(&w[0], model) {
                    Locus::Sector(i) => i,
                    Locus::Terminal(_) => unreachable!("terminal directions end the run"),
                })
                .collect()
        }
    };
    Expansion {
        directions,
        sectors,
        result,
    }
}

/// Vectors grow by unit factors between canonicalizations; this bounds it.
const CANONICALIZE_EVERY: usize = 64;

/// Revisit detection. Vectors are bucketed by fingerprint and compared by an
/// exact cross product; vectors without a fingerprint are compared with all.
#[derive(Default)]
struct Seen {
    buckets: HashMap<u64, Vec<usize>>,
    blind: Vec<usize>,
    all: usize,
}

impl Seen {
    /// Records reps[t] and returns the first earlier index on the same ray.
    fn insert(&mut self, reps: &[Rep], t: usize, prime: (u64, u64), ctx: &Field) -> Option<usize> {
        let v = &reps[t];
        let same = |s: &usize| reps[*s].same_ray(v, ctx);
        let found = match v.fingerprint(prime) {
            Some(key) => {
                let hit = self.buckets.get(&key).and_then(|b| b.iter().find(|s| same(s)));
                let blind = self.blind.iter().find(|s| same(s));
                let found = hit.into_iter().chain(blind).min().copied();
                self.buckets.entry(key).or_default().push(t);
                found
            }
            None => {
                let found = (0..self.all).find(same);
                self.blind.push(t);
                found
            }
        };
        self.all = t + 1;
        found
    }
}

/// Iterates the gcd step from v.
fn run(v: &DirectionK, model: &StaircaseModel, max_steps: usize) -> (Vec<Rep>, OrbitResult) {
    let ctx = model.field();
    let prime = model.split_prime();
    let mut seen = Seen::default();
    let mut reps = vec![Rep::of(v)];
    let mut word = Vec::new();
    seen.insert(&reps, 0, prime, ctx);
    let result = loop {
        let step = word.len();
        let cur = &reps[step];
        if let Locus::Terminal(t) = cur.locate(model) {
            break OrbitResult::Parabolic {
                word: word.clone(),
                steps: step,
                terminal: t,
            };
        }
        if step >= max_steps {
            break OrbitResult::Unresolved {
                steps: step,
                last_direction: cur.direction(ctx),
            };
        }
        let (i, mut next) = cur.step(model).expect("non-terminal first-quadrant direction");
        word.push(i);
        let t = word.len();
        if t % CANONICALIZE_EVERY == 0 {
            next = Rep::of(&next.direction(ctx));
        }
        reps.push(next);
        if let Some(s) = seen.insert(&reps, t, prime, ctx) {
            break hyperbolic(&word, s, reps[t].direction(ctx), model);
        }
    };
    (reps, result)
}

fn hyperbolic(word: &[usize], s: usize, periodic: DirectionK, model: &StaircaseModel) -> OrbitResult {
    let preperiod = word[..s].to_vec();
    let period = word[s..].to_vec();
    let stabilizer = word_matrix(&period, model).expect("recorded indices are valid");
    let w = word_matrix(&preperiod, model).expect("recorded indices are valid");
    let w_inv = inverse_word_matrix(&preperiod, model).expect("valid indices");
    let image = stabilizer.apply(&periodic.to_vec());
    let eigenvalue = if periodic.is_vertical() {
        image.y.try_div(&periodic.y())
    } else {
        Ok(image.x.clone())
    }
    .expect("periodic direction is nonzero");
    OrbitResult::Hyperbolic {
        input_stabilizer: w.mul(&stabilizer).mul(&w_inv),
        preperiod,
        period,
        periodic_direction: periodic,
        stabilizer,
        eigenvalue,
        steps: word.len(),
    }
}

/// M_{w_0}·M_{w_1}···M_{w_{l-1}}.
pub fn word_matrix(word: &[usize], model: &StaircaseModel) -> Result<MatK> {
    let one = FieldElement::one(model.field());
    word.iter().try_fold(Mat2::identity(&one), |acc, &i| {
        let m = model.sector(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: model.sector_count(),
        })?;
        Ok(acc.mul(m))
    })
}

/// (M_{w_0}···M_{w_{l-1}})^{-1}.
pub fn inverse_word_matrix(word: &[usize], model: &StaircaseModel) -> Result<MatK> {
    let one = FieldElement::one(model.field());
    word.iter().rev().try_fold(Mat2::identity(&one), |acc, &i| {
        let m = model.sector_inverse(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: model.sector_count(),
        })?;
        Ok(acc.mul(m))
    })
}

/// Parses "5,0" or "[5, 0]" into a sector word.
pub fn parse_word(src: &str) -> Result<Vec<usize>> {
    let body = src.trim().trim_start_matches('[').trim_end_matches(']');
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| {
            t.trim().parse::<usize>().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad sector index {:?}", t.trim()),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCheck {
    pub is_fixed: bool,
    pub eigenvalue: Option<FieldElement>,
    pub trace: FieldElement,
    pub det: FieldElement,
    pub hyperbolic: bool,
}

pub fn verify_stabilizer(m: &MatK, v: &DirectionK) -> StabilizerCheck {
    let w = v.to_vec();
    let image = m.apply(&w);
    let is_fixed = image.cross(&w).is_zero() && !image.is_zero();
    let eigenvalue = is_fixed.then(|| {
        if w.x.is_zero() {
            &image.y / &w.y
        } else {
            &image.x / &w.x
        }
    });
    let trace = m.trace();
    let four = FieldElement::from_int(trace.context(), 4);
    let hyperbolic = (&(&trace * &trace) - &four).is_positive();
    StabilizerCheck {
        is_fixed,
        eigenvalue,
        trace,
        det: m.det(),
        hyperbolic,
    }
}

/// Replays a parabolic word from `v` and checks that it ends at a terminal.
pub fn replay_parabolic(v: &DirectionK, word: &[usize], model: &StaircaseModel) -> Result<bool> {
    let mut cur = Rep::of(v);
    for &i in word {
        let (j, next) = cur.step(model)?;
        if j != i {
            return Ok(false);
        }
        cur = next;
    }
    Ok(matches!(cur.locate(model), Locus::Terminal(_)))
}

/// Independent check of a result: parabolic words replay to a terminal;
/// hyperbolic stabilizers fix their directions with eigenvalue > 1 and
/// |trace| > 2.
pub fn certify(v: &DirectionK, result: &OrbitResult, model: &StaircaseModel) -> Result<bool> {
    match result {
        OrbitResult::Parabolic { word, .. } => replay_parabolic(v, word, model),
        OrbitResult::Hyperbolic {
            periodic_direction,
            stabilizer,
            eigenvalue,
            input_stabilizer,
            period,
            preperiod,
            ..
        } => {
            let one = FieldElement::one(model.field());
            let c = verify_stabilizer(stabilizer, periodic_direction);
            let ci = verify_stabilizer(input_stabilizer, v);
            let recomputed = word_matrix(period, model)? == *stabilizer;
            // the preperiod leads from v to the periodic direction
            let mut cur = Rep::of(v);
            for _ in preperiod {
                cur = cur.step(model)?.1;
            }
            Ok(c.is_fixed
                && c.det.is_one()
                && c.hyperbolic
                && c.eigenvalue.as_ref() == Some(eigenvalue)
                && (eigenvalue - &one).is_positive()
                && ci.is_fixed
                && ci.trace == c.trace
                && recomputed
                && cur.direction(model.field()) == *periodic_direction)
        }
        OrbitResult::Unresolved { .. } => Ok(true),
    }
}

fn word_json(w: &[usize]) -> Value {
    json!(w)
}

pub fn matrix_json(m: &MatK) -> Value {
    json!([
        [m.m11.to_string(), m.m12.to_string()],
        [m.m21.to_string(), m.m22.to_string()]
    ])
}

/// JSON record for a classification of the direction (x, y).
pub fn orbit_json(x: &FieldElement, y: &FieldElement, result: &OrbitResult) -> Value {
    let mut rec = json!({
        "N": x.context().n(),
        "x": x.to_string(),
        "y": y.to_string(),
        "class": result.class_name(),
    });
    let obj = rec.as_object_mut().expect("object");
    match result {
        OrbitResult::Parabolic { word, terminal, .. } => {
            obj.insert("word".into(), word_json(word));
            obj.insert("terminal".into(), json!(terminal.name()));
        }
        OrbitResult::Hyperbolic {
            preperiod,
            period,
            periodic_direction,
            stabilizer,
            eigenvalue,
            input_stabilizer,
            ..
        } => {
            obj.insert("preperiod".into(), word_json(preperiod));
            obj.insert("period".into(), word_json(period));
            obj.insert("stabilizer".into(), matrix_json(stabilizer));
            obj.insert("eigenvalue".into(), json!(eigenvalue.to_string()));
            obj.insert("trace".into(), json!(stabilizer.trace().to_string()));
            obj.insert(
                "periodic_direction".into(),
                json!([periodic_direction.x().to_string(), periodic_direction.y().to_string()]),
            );
            obj.insert("input_stabilizer".into(), matrix_json(input_stabilizer));
        }
        OrbitResult::Unresolved { last_direction, .. } => {
            obj.insert(
                "last_direction".into(),
                json!([last_direction.x().to_string(), last_direction.y().to_string()]),
            );
        }
    }
    obj.insert("steps".into(), json!(result.steps()));
    rec
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn setup() -> (Field, StaircaseModel) {
        let k = make_field(7).unwrap();
        let m = StaircaseModel::new(&k);
        (k, m)
    }

    fn el(k: &Field, c: &[i64]) -> FieldElement {
        FieldElement::from_ints(k, c)
    }

    fn dir(k: &Field, x: &[i64], y: &[i64]) -> DirectionK {
        normalize_direction(&el(k, x), &el(k, y)).unwrap()
    }

    #[test]
    fn normalization() {
        let (k, _) = setup();
        assert_eq!(dir(&k, &[2], &[0, 2]), dir(&k, &[1], &[0, 1]));
        assert_eq!(dir(&k, &[-1], &[1, 0, -1]), dir(&k, &[1], &[-1, 0, 1]));
        let v = dir(&k, &[0], &[5]);
        assert!(v.is_vertical() && v.y().is_one());
        let r = dir(&k, &[1], &[-2]);
        assert!(r.was_rotated());
        assert_eq!(r, dir(&k, &[2], &[1]));
        assert_eq!(
            normalize_direction(&el(&k, &[0]), &el(&k, &[0])).unwrap_err(),
            Error::ZeroDirection
        );
    }

    #[test]
    fn sectors() {
        let (k, m) = setup();
        assert_eq!(locate_sector(&dir(&k, &[1], &[1]), &m), Locus::Sector(3));
        assert_eq!(locate_sector(&dir(&k, &[0, 1], &[1]), &m), Locus::Sector(1));
        assert_eq!(
            locate_sector(&dir(&k, &[1], &[0]), &m),
            Locus::Terminal(Terminal::Horizontal)
        );
        assert_eq!(
            locate_sector(&dir(&k, &[0], &[1]), &m),
            Locus::Terminal(Terminal::Vertical)
        );
        // every diagonal belongs to its own sector
        for (i, d) in m.diagonals().iter().enumerate().skip(1).take(5) {
            assert_eq!(locate_sector(&DirectionK::from_vec(d).unwrap(), &m), Locus::Sector(i));
        }
    }

    #[test]
    fn steps() {
        let (k, m) = setup();
        let (i, v) = gcd_step(&dir(&k, &[1], &[1]), &m).unwrap();
        assert_eq!(i, 3);
        assert!(v.is_horizontal());
        let (i, v) = gcd_step(&dir(&k, &[1], &[-1, 0, 1]), &m).unwrap();
        assert_eq!((i, v), (5, dir(&k, &[1], &[-1, -1, 1])));
        let (i, v) = gcd_step(&dir(&k, &[1], &[-1, -1, 1]), &m).unwrap();
        assert_eq!((i, v), (0, dir(&k, &[2, -1], &[-1, -1, 1])));
        assert_eq!(
            gcd_step(&dir(&k, &[1], &[0]), &m).unwrap_err(),
            Error::TerminalDirection
        );
    }

    #[test]
    fn two_step_cycle() {
        let (k, m) = setup();
        let v = dir(&k, &[1], &[-1, 0, 1]);
        match classify(&v, &m, DEFAULT_MAX_STEPS) {
            OrbitResult::Hyperbolic {
                preperiod,
                period,
                stabilizer,
                eigenvalue,
                steps,
                ..
            } => {
                assert!(preperiod.is_empty());
                assert_eq!(period, vec![5, 0]);
                assert_eq!(
                    stabilizer,
                    Mat2::new(el(&k, &[1]), el(&k, &[0, 1]), el(&k, &[0, 1]), el(&k, &[1, 0, 1]))
                );
                assert_eq!(eigenvalue, el(&k, &[0, 1, 1]));
                assert_eq!(stabilizer.trace(), el(&k, &[2, 0, 1]));
                assert_eq!(steps, 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn eigendirection_of_reference_matrix() {
        let (k, m) = setup();
        let v = dir(&k, &[-14, 21, 22], &[-19, 27, 35]);
        let r = classify(&v, &m, DEFAULT_MAX_STEPS);
        match &r {
            OrbitResult::Hyperbolic {
                preperiod,
                period,
                eigenvalue,
                input_stabilizer,
                ..
            } => {
                assert_eq!(preperiod, &vec![4, 4]);
                assert_eq!(period, &vec![5, 0]);
                assert_eq!(eigenvalue, &el(&k, &[0, 1, 1]));
                let reference = Mat2::new(
                    el(&k, &[19, -26, -34]),
                    el(&k, &[-14, 21, 22]),
                    el(&k, &[28, -41, -50]),
                    el(&k, &[-17, 26, 35]),
                );
                assert_eq!(input_stabilizer, &reference);
            }
            other => panic!("{other:?}"),
        }
        assert!(certify(&v, &r, &m).unwrap());
    }

    #[test]
    fn parabolic_examples() {
        let (k, m) = setup();
        let h = classify(&dir(&k, &[1], &[0]), &m, 10);
        assert_eq!(
            h,
            OrbitResult::Parabolic {
                word: vec![],
                steps: 0,
                terminal: Terminal::Horizontal
            }
        );
        let r = classify(&dir(&k, &[1], &[1]), &m, 10);
        assert_eq!(
            r,
            OrbitResult::Parabolic {
                word: vec![3],
                steps: 1,
                terminal: Terminal::Horizontal
            }
        );
        assert!(certify(&dir(&k, &[1], &[1]), &r, &m).unwrap());
        // vertical is terminal, flagged separately
        let v = classify(&dir(&k, &[0], &[1]), &m, 10);
        assert!(matches!(v, OrbitResult::Parabolic { terminal: Terminal::Vertical, .. }));
    }

    #[test]
    fn unresolved_when_budget_is_small() {
        let (k, m) = setup();
        let v = dir(&k, &[-14, 21, 22], &[-19, 27, 35]);
        assert!(matches!(
            classify(&v, &m, 1),
            OrbitResult::Unresolved { steps: 1, .. }
        ));
    }

    #[test]
    fn words() {
        let (k, m) = setup();
        assert_eq!(word_matrix(&[], &m).unwrap(), Mat2::identity(&el(&k, &[1])));
        assert_eq!(
            word_matrix(&[5, 0], &m).unwrap(),
            Mat2::new(el(&k, &[1]), el(&k, &[0, 1]), el(&k, &[0, 1]), el(&k, &[1, 0, 1]))
        );
        assert_eq!(
            word_matrix(&[6], &m).unwrap_err(),
            Error::IndexOutOfRange { index: 6, len: 6 }
        );
        let w = [4, 2, 0, 5];
        let p = word_matrix(&w, &m).unwrap().mul(&inverse_word_matrix(&w, &m).unwrap());
        assert_eq!(p, Mat2::identity(&el(&k, &[1])));
        assert_eq!(parse_word("5,0").unwrap(), vec![5, 0]);
        assert_eq!(parse_word("[4, 4]").unwrap(), vec![4, 4]);
        assert!(parse_word("").unwrap().is_empty());
        assert!(parse_word("x").is_err());
    }

    #[test]
    fn stabilizer_checks() {
        let (k, m) = setup();
        let id = Mat2::identity(&el(&k, &[1]));
        let c = verify_stabilizer(&id, &dir(&k, &[1], &[0, 1]));
        assert!(c.is_fixed && !c.hyperbolic);
        assert_eq!(c.eigenvalue, Some(el(&k, &[1])));
        let m0 = m.sector(0).unwrap();
        assert!(!verify_stabilizer(m0, &dir(&k, &[0], &[1])).is_fixed);
    }

    #[test]
    fn json_record() {
        let (k, m) = setup();
        let (x, y) = (el(&k, &[1]), el(&k, &[-1, 0, 1]));
        let v = normalize_direction(&x, &y).unwrap();
        let j = orbit_json(&x, &y, &classify(&v, &m, 100));
        assert_eq!(j["class"], "hyperbolic");
        assert_eq!(j["period"], json!([5, 0]));
        assert_eq!(j["stabilizer"], json!([["1", "a"], ["a", "a^2 + 1"]]));
        assert_eq!(j["eigenvalue"], "a^2 + a");
        assert_eq!(j["steps"], 2);
    }
}
