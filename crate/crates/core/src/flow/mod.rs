//! Straight-line flow on polygon surfaces, traced exactly.
//!
//! A ray is followed polygon by polygon: the exit parameter is the smallest
//! t ≥ 0 at which it meets an edge it is leaving through, and the point is then
//! carried across the gluing translation. A ray that meets a corner stops.

mod search;
mod svg;

pub use search::{
    candidate_stream, central_point_search, reverify, search_hyperbolic_separatrix, Candidate,
    CandidateLog, CandidateSource, PointSearch, SearchConfig, SearchStatus, SeparatrixReport,
    DEFAULT_DEPTH,
};
pub use svg::render_svg;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{Scalar, Vec2};
use crate::model::{EdgeRef, PolygonSurface};
use crate::model::{HeptagonModel, VecL};
use crate::field::ExtElement;

pub const DEFAULT_MAX_CROSSINGS: usize = 5000;

/// A point of a polygon surface in the local coordinates of one polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfacePoint<S> {
    pub polygon: usize,
    pub coords: Vec2<S>,
}

impl<S: Scalar> SurfacePoint<S> {
    pub fn new(polygon: usize, coords: Vec2<S>) -> Self {
        SurfacePoint { polygon, coords }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "polygon": self.polygon,
            "x": self.coords.x.to_string(),
            "y": self.coords.y.to_string(),
        })
    }
}

/// The part of a ray inside one polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment<S> {
    pub polygon: usize,
    pub start: Vec2<S>,
    pub end: Vec2<S>,
    /// Edge the segment leaves through; None when it ends at a corner or
    /// inside the polygon.
    pub exit_edge: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEnd<S> {
    HitVertex {
        class: usize,
        polygon: usize,
        vertex: usize,
        /// |dir|²·t² for the total parameter t.
        squared_length: S,
    },
    Truncated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceOutcome<S> {
    pub end: TraceEnd<S>,
    /// Edges crossed before stopping.
    pub crossings: usize,
    /// Total parameter t: the ray covers t·dir.
    pub parameter: S,
    pub segments: Vec<Segment<S>>,
}

impl<S: Scalar> TraceOutcome<S> {
    pub fn hit_vertex(&self) -> bool {
        matches!(self.end, TraceEnd::HitVertex { .. })
    }

    pub fn squared_length(&self) -> Option<&S> {
        match &self.end {
            TraceEnd::HitVertex { squared_length, .. } => Some(squared_length),
            TraceEnd::Truncated => None,
        }
    }

    /// Summary without the segments.
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "outcome": if self.hit_vertex() { "hit_vertex" } else { "truncated" },
            "crossings": self.crossings,
            "parameter": self.parameter.to_string(),
            "parameter_approx": self.parameter.approx_f64(),
        });
        if let TraceEnd::HitVertex {
            class,
            polygon,
            vertex,
            squared_length,
        } = &self.end
        {
            let o = v.as_object_mut().expect("object");
            o.insert("vertex_class".into(), json!(class));
            o.insert("corner".into(), json!([polygon, vertex]));
            o.insert("squared_length".into(), json!(squared_length.to_string()));
            o.insert("squared_length_approx".into(), json!(squared_length.approx_f64()));
        }
        v
    }
}

fn check_start<S: Scalar>(surface: &PolygonSurface<S>, p: &SurfacePoint<S>, dir: &Vec2<S>) -> Result<()> {
    if dir.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let count = surface.polygons().len();
    if p.polygon >= count {
        return Err(Error::IndexOutOfRange {
            index: p.polygon,
            len: count,
        });
    }
    if !surface.polygon(p.polygon).contains(&p.coords) {
        return Err(Error::PointOutside(p.polygon));
    }
    Ok(())
}

/// For each polygon and edge, 1/(-cross(e_j, d)) when d leaves through e_j.
/// Fixed for the whole ray, so the divisions are done once.
struct Exits<S> {
    inv: Vec<Vec<Option<S>>>,
}

impl<S: Scalar> Exits<S> {
    fn new(surface: &PolygonSurface<S>, d: &Vec2<S>) -> Self {
        let inv = surface
            .polygons()
            .iter()
            .map(|poly| {
                (0..poly.len())
                    .map(|j| {
                        let c = poly.edge(j).cross(d);
                        (c.sign() < 0).then(|| c.negated().inverse().expect("nonzero"))
                    })
                    .collect()
            })
            .collect();
        Exits { inv }
    }

    /// Smallest t ≥ 0 with q + t·d on an edge that d leaves through, and
    /// that edge.
    fn exit(&self, surface: &PolygonSurface<S>, polygon: usize, q: &Vec2<S>) -> (S, usize) {
        let poly = surface.polygon(polygon);
        let mut best: Option<(S, usize)> = None;
        for (j, inv) in self.inv[polygon].iter().enumerate() {
            let Some(inv) = inv else { continue };
            let t = poly.edge(j).cross(&q.minus(poly.vertex(j))).times(inv);
            if best.as_ref().is_none_or(|(b, _)| t.minus(b).sign() < 0) {
                best = Some((t, j));
            }
        }
        best.expect("a bounded polygon has an exit edge")
    }
}

/// Follows the ray from p in direction dir until it meets a corner or has
/// crossed `max_crossings` edges.
pub fn trace_ray<S: Scalar>(
    surface: &PolygonSurface<S>,
    p: &SurfacePoint<S>,
    dir: &Vec2<S>,
    max_crossings: usize,
) -> Result<TraceOutcome<S>> {
    check_start(surface, p, dir)?;
    let zero = dir.x.zero_like();
    let mut polygon = p.polygon;
    let mut q = p.coords.clone();
    let mut total = zero.clone();
    let mut segments = Vec::new();
    let mut crossings = 0;
    let exits = Exits::new(surface, dir);
    loop {
        let (t, j) = exits.exit(surface, polygon, &q);
        if segments.is_empty() && t.sign() == 0 {
            return Err(Error::OutwardDirection(polygon));
        }
        let x = q.plus(&dir.scaled(&t));
        total = total.plus(&t);
        let poly = surface.polygon(polygon);
        let corner = [j, (j + 1) % poly.len()]
            .into_iter()
            .find(|&k| poly.vertex(k) == &x);
        if let Some(vertex) = corner {
            segments.push(Segment {
                polygon,
                start: q,
                end: x,
                exit_edge: None,
            });
            let squared_length = dir.norm_squared().times(&total).times(&total);
            return Ok(TraceOutcome {
                end: TraceEnd::HitVertex {
                    class: surface.class_of(polygon, vertex),
                    polygon,
                    vertex,
                    squared_length,
                },
                crossings,
                parameter: total,
                segments,
            });
        }
        segments.push(Segment {
            polygon,
            start: q,
            end: x.clone(),
            exit_edge: Some(j),
        });
        crossings += 1;
        let g = surface.gluing(EdgeRef { polygon, edge: j });
        q = x.plus(&g.translation);
        polygon = g.target.polygon;
        if crossings >= max_crossings {
            return Ok(TraceOutcome {
                end: TraceEnd::Truncated,
                crossings,
                parameter: total,
                segments,
            });
        }
    }
}

/// The point reached after flowing for parameter t ≥ 0, or None when the ray
/// meets a corner first.
pub fn advance<S: Scalar>(
    surface: &PolygonSurface<S>,
    p: &SurfacePoint<S>,
    dir: &Vec2<S>,
    t: &S,
) -> Result<Option<SurfacePoint<S>>> {
    check_start(surface, p, dir)?;
    let mut polygon = p.polygon;
    let mut q = p.coords.clone();
    let mut left = t.clone();
    let exits = Exits::new(surface, dir);
    loop {
        let (s, j) = exits.exit(surface, polygon, &q);
        if left.minus(&s).sign() <= 0 {
            return Ok(Some(SurfacePoint::new(polygon, q.plus(&dir.scaled(&left)))));
        }
        let x = q.plus(&dir.scaled(&s));
        let poly = surface.polygon(polygon);
        if poly.vertex(j) == &x || poly.vertex(j + 1) == &x {
            return Ok(None);
        }
        left = left.minus(&s);
        let g = surface.gluing(EdgeRef { polygon, edge: j });
        q = x.plus(&g.translation);
        polygon = g.target.polygon;
    }
}

/// Corners (polygon, vertex) at which the ray in direction dir leaves the
/// corner point into the polygon, including along an edge.
pub fn outgoing_corners<S: Scalar>(surface: &PolygonSurface<S>, dir: &Vec2<S>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, poly) in surface.polygons().iter().enumerate() {
        let n = poly.len();
        for k in 0..n {
            let after = poly.edge(k).cross(dir).sign();
            let before = poly.edge(k + n - 1).cross(dir).sign();
            // the half-open corner sector [e_k, -e_{k-1}); each ray leaving the
            // cone point lies in exactly one such sector
            if after >= 0 && before > 0 {
                out.push((i, k));
            }
        }
    }
    out
}

/// The ray along dir from the first corner (in polygon, vertex order) it
/// leaves through, with that corner.
pub fn trace_from_corner<S: Scalar>(
    surface: &PolygonSurface<S>,
    dir: &Vec2<S>,
    max_crossings: usize,
) -> Result<((usize, usize), TraceOutcome<S>)> {
    if dir.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let (polygon, vertex) = *outgoing_corners(surface, dir)
        .first()
        .ok_or_else(|| Error::InvalidArgument("no corner admits this direction".into()))?;
    let p = SurfacePoint::new(polygon, surface.polygon(polygon).vertex(vertex).clone());
    Ok(((polygon, vertex), trace_ray(surface, &p, dir, max_crossings)?))
}

/// The centers of H1 and H2.
pub fn central_points(model: &HeptagonModel) -> [SurfacePoint<ExtElement>; 2] {
    let [c1, c2] = model.centers().clone();
    [SurfacePoint::new(0, c1), SurfacePoint::new(1, c2)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// The backward ray along -dir met the singularity.
    Forward,
    /// The backward ray along +dir met it: the separatrix runs along -dir.
    Backward,
}

impl Orientation {
    pub fn sign(&self) -> &'static str {
        match self {
            Orientation::Forward => "+",
            Orientation::Backward => "-",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SeparatrixCheck<S> {
    pub exists: bool,
    /// Orientation of the separatrix through p, when one was found.
    pub orientation: Option<Orientation>,
    /// Ray from p along -dir.
    pub minus: TraceOutcome<S>,
    /// Ray from p along +dir.
    pub plus: TraceOutcome<S>,
}

impl<S: Scalar> SeparatrixCheck<S> {
    /// The trace that met the singularity.
    pub fn hit(&self) -> Option<&TraceOutcome<S>> {
        match self.orientation? {
            Orientation::Forward => Some(&self.minus),
            Orientation::Backward => Some(&self.plus),
        }
    }
}

fn singular_hit<S: Scalar>(surface: &PolygonSurface<S>, t: &TraceOutcome<S>) -> bool {
    matches!(t.end, TraceEnd::HitVertex { class, .. } if surface.vertex_classes()[class].is_singular())
}

/// Whether a separatrix along ±dir passes through the nonsingular point p:
/// the ray from p along -dir (then +dir) meets a singular corner.
pub fn separatrix_through<S: Scalar>(
    surface: &PolygonSurface<S>,
    p: &SurfacePoint<S>,
    dir: &Vec2<S>,
    max_crossings: usize,
) -> Result<SeparatrixCheck<S>> {
    check_start(surface, p, dir)?;
    let poly = surface.polygon(p.polygon);
    if let Some(k) = poly.vertex_at(&p.coords) {
        if surface.vertex_classes()[surface.class_of(p.polygon, k)].is_singular() {
            return Err(Error::SingularPoint);
        }
    }
    let minus = trace_ray(surface, p, &dir.negated(), max_crossings)?;
    let plus = trace_ray(surface, p, dir, max_crossings)?;
    let orientation = if singular_hit(surface, &minus) {
        Some(Orientation::Forward)
    } else if singular_hit(surface, &plus) {
        Some(Orientation::Backward)
    } else {
        None
    };
    Ok(SeparatrixCheck {
        exists: orientation.is_some(),
        orientation,
        minus,
        plus,
    })
}

/// Heptagon-model vector as exact strings.
pub fn vec_json(v: &VecL) -> Value {
    json!([v.x.to_string(), v.y.to_string()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, ExtContext, FieldElement};
    use crate::model::StaircaseModel;

    fn hept() -> HeptagonModel {
        HeptagonModel::new(&ExtContext::new(&make_field(7).unwrap())).unwrap()
    }

    #[test]
    fn staircase_vertical_edge() {
        let k = make_field(7).unwrap();
        let s = StaircaseModel::new(&k).surface();
        let zero = FieldElement::zero(&k);
        let one = FieldElement::one(&k);
        let p = SurfacePoint::new(0, Vec2::new(zero.clone(), zero.clone()));
        let t = trace_ray(&s, &p, &Vec2::new(zero, one), 10).unwrap();
        assert_eq!(t.crossings, 0);
        assert_eq!(t.squared_length(), Some(&FieldElement::from_ints(&k, &[0, 0, 1])));
    }

    #[test]
    fn heptagon_edge_and_radius() {
        let m = hept();
        let s = m.surface();
        let h1 = s.polygon(0);
        let v0 = h1.vertex(0).clone();
        let e = h1.edge(0);
        let t = trace_ray(s, &SurfacePoint::new(0, v0.clone()), &e, 10).unwrap();
        assert_eq!(t.squared_length(), Some(&e.norm_squared()));
        assert_eq!(t.end, TraceEnd::HitVertex {
            class: 0,
            polygon: 0,
            vertex: 1,
            squared_length: e.norm_squared(),
        });

        let [c1, c2] = central_points(&m);
        let t = trace_ray(s, &c1, &v0, 10).unwrap();
        let k = m.ext().base();
        let expect = ExtElement::from_base(m.ext(), FieldElement::from_ints(k, &[0, 1, 1]));
        assert_eq!(t.squared_length(), Some(&expect));
        assert!(s.polygon(1).vertex_at(&c2.coords).is_none());
        assert!(s.polygon(1).contains(&c2.coords));
        assert_eq!(c2.coords, h1.vertex(0).plus(h1.vertex(1)));
    }

    #[test]
    fn crossings_satisfy_edge_equations_and_reverse() {
        let m = hept();
        let s = m.surface();
        let [c1, _] = central_points(&m);
        let ext = m.ext();
        let k = ext.base();
        // an irrational direction that crosses several times before the bound
        let d = Vec2::new(
            ExtElement::from_base(ext, FieldElement::from_ints(k, &[3, 1])),
            ExtElement::new(ext, FieldElement::zero(k), FieldElement::from_ints(k, &[1, 0, 1])),
        );
        let t = trace_ray(s, &c1, &d, 12).unwrap();
        assert_eq!(t.crossings, 12);
        assert!(!t.hit_vertex());
        for seg in &t.segments {
            let j = seg.exit_edge.unwrap();
            let poly = s.polygon(seg.polygon);
            assert_eq!(poly.edge(j).cross(&seg.end.minus(poly.vertex(j))).sign(), 0);
            assert_eq!(seg.end.minus(&seg.start).cross(&d).sign(), 0);
        }
        // flow forward by the total parameter, then back again
        let there = advance(s, &c1, &d, &t.parameter).unwrap().unwrap();
        let back = advance(s, &there, &d.negated(), &t.parameter).unwrap().unwrap();
        assert_eq!(back, c1);
    }

    #[test]
    fn vertex_hits_reverse_exactly() {
        let m = hept();
        let s = m.surface();
        let [c1, _] = central_points(&m);
        let v3 = s.polygon(0).vertex(3).clone();
        let t = trace_ray(s, &c1, &v3, 10).unwrap();
        let TraceEnd::HitVertex { polygon, vertex, .. } = t.end else {
            panic!("center to vertex is a radius")
        };
        let corner = SurfacePoint::new(polygon, s.polygon(polygon).vertex(vertex).clone());
        let back = advance(s, &corner, &v3.negated(), &t.parameter).unwrap().unwrap();
        assert_eq!(back, c1);
    }

    #[test]
    fn separatrix_checks() {
        let m = hept();
        let s = m.surface();
        let [c1, _] = central_points(&m);
        // toward v0 the ray is a radius; away from v0 it crosses the midpoint
        // of the opposite edge into H2, the point reflection of H1, and meets
        // a corner there too
        let v0 = s.polygon(0).vertex(0).clone();
        let c = separatrix_through(s, &c1, &v0, 10).unwrap();
        assert!(c.exists && c.plus.hit_vertex() && c.minus.hit_vertex());
        assert_eq!(c.orientation, Some(Orientation::Forward));
        assert_eq!(c.minus.crossings, 1);
        let ext = m.ext();
        let k = ext.base();
        let d = Vec2::new(
            ExtElement::from_base(ext, FieldElement::from_ints(k, &[3, 1])),
            ExtElement::new(ext, FieldElement::zero(k), FieldElement::from_ints(k, &[1, 0, 1])),
        );
        let c = separatrix_through(s, &c1, &d, 5).unwrap();
        assert!(!c.exists && c.minus.crossings == 5 && c.plus.crossings == 5);
        let corner = SurfacePoint::new(0, v0.clone());
        assert_eq!(
            separatrix_through(s, &corner, &d, 5).unwrap_err(),
            Error::SingularPoint
        );
    }

    #[test]
    fn bad_starts() {
        let m = hept();
        let s = m.surface();
        let [c1, _] = central_points(&m);
        let zero = ExtElement::zero(m.ext());
        let z = Vec2::new(zero.clone(), zero);
        assert_eq!(trace_ray(s, &c1, &z, 5).unwrap_err(), Error::ZeroDirection);
        let far = SurfacePoint::new(0, s.polygon(0).vertex(0).scaled(&ExtElement::from_base(
            m.ext(),
            FieldElement::from_int(m.ext().base(), 2),
        )));
        let d = s.polygon(0).edge(0);
        assert_eq!(trace_ray(s, &far, &d, 5).unwrap_err(), Error::PointOutside(0));
        // from v1 along edge 0 leaves H1 immediately
        let v1 = SurfacePoint::new(0, s.polygon(0).vertex(1).clone());
        assert_eq!(trace_ray(s, &v1, &d, 5).unwrap_err(), Error::OutwardDirection(0));
    }

    #[test]
    fn saddle_connection_along_an_edge() {
        let m = hept();
        let s = m.surface();
        let e = s.polygon(0).edge(4);
        let corners = outgoing_corners(s, &e);
        let along: Vec<_> = corners
            .iter()
            .filter(|&&(i, k)| s.polygon(i).edge(k).cross(&e).sign() == 0)
            .collect();
        // the parallel edge of H2 points the other way and closes its sector
        assert_eq!(along.len(), 1);
        for &&(i, k) in &along {
            let p = SurfacePoint::new(i, s.polygon(i).vertex(k).clone());
            let t = trace_ray(s, &p, &e, 10).unwrap();
            assert_eq!(t.squared_length(), Some(&e.norm_squared()));
        }
        let (corner, t) = trace_from_corner(s, &e, 10).unwrap();
        assert_eq!(corner, corners[0]);
        assert!(t.hit_vertex());
    }

    #[test]
    fn outgoing_corner_count() {
        // one cone point of angle 10π: each direction leaves it five times
        let m = hept();
        let s = m.surface();
        let d = s.polygon(0).edge(0);
        assert_eq!(outgoing_corners(s, &d).len(), 5);
        let k = make_field(7).unwrap();
        let st = StaircaseModel::new(&k).surface();
        let v = Vec2::new(FieldElement::from_ints(&k, &[1]), FieldElement::from_ints(&k, &[0, 1]));
        assert_eq!(outgoing_corners(&st, &v).len(), 5);
    }
}
