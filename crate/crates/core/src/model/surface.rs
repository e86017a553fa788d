//! Translation surfaces given by convex polygons and edge gluings.

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::linalg::{Scalar, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    pub polygon: usize,
    pub edge: usize,
}

/// A strictly convex polygon, vertices counterclockwise. Edge j runs from
/// vertex j to vertex j+1.
#[derive(Debug, Clone)]
pub struct Polygon<S> {
    pub label: String,
    pub vertices: Vec<Vec2<S>>,
}

impl<S: Scalar> Polygon<S> {
    pub fn new(label: impl Into<String>, vertices: Vec<Vec2<S>>) -> Self {
        Polygon {
            label: label.into(),
            vertices,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, k: usize) -> &Vec2<S> {
        &self.vertices[k % self.vertices.len()]
    }

    pub fn edge(&self, j: usize) -> Vec2<S> {
        self.vertex(j + 1).minus(self.vertex(j))
    }

    /// Sign of cross(e_j, p - v_j): positive strictly inside edge j's half-plane.
    pub fn side(&self, j: usize, p: &Vec2<S>) -> i32 {
        self.edge(j).cross(&p.minus(self.vertex(j))).sign()
    }

    pub fn contains(&self, p: &Vec2<S>) -> bool {
        (0..self.len()).all(|j| self.side(j, p) >= 0)
    }

    /// Index of the vertex equal to `p`, if any.
    pub fn vertex_at(&self, p: &Vec2<S>) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }
}

#[derive(Debug, Clone)]
pub struct Gluing<S> {
    pub target: EdgeRef,
    /// Translation carrying this edge onto the target edge.
    pub translation: Vec2<S>,
}

/// An identification class of polygon corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClass {
    /// Corners (polygon, vertex) in counterclockwise order around the point.
    pub corners: Vec<(usize, usize)>,
    /// Cone angle divided by π.
    pub angle_over_pi: Rational64,
}

impl VertexClass {
    pub fn count(&self) -> usize {
        self.corners.len()
    }

    pub fn is_singular(&self) -> bool {
        self.angle_over_pi > Rational64::from_integer(2)
    }
}

#[derive(Debug, Clone)]
pub struct PolygonSurface<S> {
    polygons: Vec<Polygon<S>>,
    gluings: Vec<Vec<Gluing<S>>>,
    classes: Vec<VertexClass>,
    corner_class: Vec<Vec<usize>>,
    genus: i64,
}

impl<S: Scalar> PolygonSurface<S> {
    /// Builds the surface from polygons and unordered pairs of glued edges.
    pub fn new(polygons: Vec<Polygon<S>>, pairs: &[(EdgeRef, EdgeRef)]) -> Result<Self> {
        for (i, p) in polygons.iter().enumerate() {
            if p.len() < 3 {
                return Err(Error::InconsistentGluing(format!("polygon {i} has < 3 vertices")));
            }
            for j in 0..p.len() {
                if p.edge(j).cross(&p.edge(j + 1)).sign() <= 0 {
                    return Err(Error::InconsistentGluing(format!(
                        "polygon {i} is not strictly convex counterclockwise at vertex {}",
                        j + 1
                    )));
                }
            }
        }
        let mut slots: Vec<Vec<Option<Gluing<S>>>> =
            polygons.iter().map(|p| vec![None; p.len()]).collect();
        for &(e1, e2) in pairs {
            if e1 == e2 {
                return Err(Error::InconsistentGluing(format!("edge {e1:?} glued to itself")));
            }
            for e in [e1, e2] {
                if e.polygon >= polygons.len() || e.edge >= polygons[e.polygon].len() {
                    return Err(Error::InconsistentGluing(format!("no such edge {e:?}")));
                }
            }
            let (p1, p2) = (&polygons[e1.polygon], &polygons[e2.polygon]);
            let v1 = p1.edge(e1.edge);
            let v2 = p2.edge(e2.edge);
            if v1.plus(&v2) != v1.minus(&v1) {
                return Err(Error::InconsistentGluing(format!(
                    "edges {e1:?} and {e2:?} are not opposite translates"
                )));
            }
            // start of one edge goes to the end of the other
            let t12 = p2.vertex(e2.edge + 1).minus(p1.vertex(e1.edge));
            let t21 = t12.negated();
            for (from, to, t) in [(e1, e2, t12), (e2, e1, t21)] {
                let slot = &mut slots[from.polygon][from.edge];
                if slot.is_some() {
                    return Err(Error::InconsistentGluing(format!("edge {from:?} glued twice")));
                }
                *slot = Some(Gluing {
                    target: to,
                    translation: t,
                });
            }
        }
        let mut gluings = Vec::with_capacity(slots.len());
        for (i, row) in slots.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, g) in row.into_iter().enumerate() {
                out.push(g.ok_or_else(|| {
                    Error::InconsistentGluing(format!("edge {j} of polygon {i} is not glued"))
                })?);
            }
            gluings.push(out);
        }
        let mut surface = PolygonSurface {
            polygons,
            gluings,
            classes: Vec::new(),
            corner_class: Vec::new(),
            genus: 0,
        };
        surface.compute_vertex_classes()?;
        Ok(surface)
    }

    pub fn polygons(&self) -> &[Polygon<S>] {
        &self.polygons
    }

    pub fn polygon(&self, i: usize) -> &Polygon<S> {
        &self.polygons[i]
    }

    pub fn gluing(&self, e: EdgeRef) -> &Gluing<S> {
        &self.gluings[e.polygon][e.edge]
    }

    pub fn vertex_classes(&self) -> &[VertexClass] {
        &self.classes
    }

    pub fn class_of(&self, polygon: usize, vertex: usize) -> usize {
        self.corner_class[polygon][vertex % self.polygons[polygon].len()]
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn area(&self) -> S {
        let mut total: Option<S> = None;
        for p in &self.polygons {
            let v0 = p.vertex(0);
            for k in 1..p.len() - 1 {
                let tri = p.vertex(k).minus(v0).cross(&p.vertex(k + 1).minus(v0));
                total = Some(match total {
                    None => tri,
                    Some(t) => t.plus(&tri),
                });
            }
        }
        let t = total.expect("surface has polygons");
        let two = t.one_like().plus(&t.one_like());
        t.divided(&two).expect("2 is invertible")
    }

    /// Walk corners around each vertex and count full turns exactly: a
    /// reference direction is crossed once per 2π, using half-open arcs.
    fn compute_vertex_classes(&mut self) -> Result<()> {
        let mut corner_class: Vec<Vec<usize>> =
            self.polygons.iter().map(|p| vec![usize::MAX; p.len()]).collect();
        let mut classes = Vec::new();
        let sample = &self.polygons[0].vertices[0].x;
        let reference = Vec2::new(sample.one_like(), sample.zero_like());
        for start_p in 0..self.polygons.len() {
            for start_v in 0..self.polygons[start_p].len() {
                if corner_class[start_p][start_v] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                let mut corners = Vec::new();
                let mut turns = 0i64;
                let (mut p, mut v) = (start_p, start_v);
                loop {
                    if corner_class[p][v] != usize::MAX {
                        if (p, v) == (start_p, start_v) {
                            break;
                        }
                        return Err(Error::InconsistentGluing(format!(
                            "corner walk re-entered corner ({p}, {v})"
                        )));
                    }
                    corner_class[p][v] = id;
                    corners.push((p, v));
                    let poly = &self.polygons[p];
                    let n = poly.len();
                    let out_dir = poly.edge(v);
                    let in_edge = (v + n - 1) % n;
                    let back_dir = poly.edge(in_edge).negated();
                    if in_half_open_arc(&out_dir, &back_dir, &reference) {
                        turns += 1;
                    }
                    let g = &self.gluings[p][in_edge];
                    let next = (g.target.polygon, g.target.edge);
                    let next_out = self.polygons[next.0].edge(next.1);
                    if !next_out.same_ray(&back_dir) {
                        return Err(Error::InconsistentGluing(format!(
                            "corner arcs do not match across edge ({p}, {in_edge})"
                        )));
                    }
                    (p, v) = next;
                }
                classes.push(VertexClass {
                    corners,
                    angle_over_pi: Rational64::from_integer(2 * turns),
                });
            }
        }
        let excess: i64 = classes
            .iter()
            .map(|c| c.angle_over_pi.to_integer() / 2 - 1)
            .sum();
        if excess % 2 != 0 {
            return Err(Error::InconsistentGluing(format!(
                "cone angle excess {excess} is not even"
            )));
        }
        self.genus = excess / 2 + 1;
        self.classes = classes;
        self.corner_class = corner_class;
        Ok(())
    }

    /// Summary of classes as (corner count, angle / π), in discovery order.
    pub fn class_summary(&self) -> Vec<(usize, Rational64)> {
        self.classes
            .iter()
            .map(|c| (c.count(), c.angle_over_pi))
            .collect()
    }

    /// Map (class id → list of corners) keyed for deterministic output.
    pub fn corners_by_class(&self) -> BTreeMap<usize, Vec<(usize, usize)>> {
        self.classes
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.corners.clone()))
            .collect()
    }
}

/// Whether `r` lies in the counterclockwise arc [start, end), the arc being
/// strictly shorter than π.
fn in_half_open_arc<S: Scalar>(start: &Vec2<S>, end: &Vec2<S>, r: &Vec2<S>) -> bool {
    if start.same_ray(r) {
        return true;
    }
    start.cross(r).sign() > 0 && r.cross(end).sign() > 0
}
