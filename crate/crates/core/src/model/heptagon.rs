//! The double heptagon over L = K(β) and the affine map T relating it to the
//! staircase.
//!
//! H1 is centered at the origin with circumradius R = a² - 1 and vertices at
//! angles 2kπ/7, so every edge direction is an odd multiple of π/14. H2 is the
//! point reflection of H1 through the midpoint of edge 0; edge j of H1 is
//! glued to edge j of H2.

use crate::error::{Error, Result};
use crate::field::{rat, ExtElement, ExtField, FieldElement};
use crate::linalg::{Mat2, Vec2};
use crate::model::surface::{EdgeRef, Polygon, PolygonSurface};

pub type VecL = Vec2<ExtElement>;
pub type MatL = Mat2<ExtElement>;

#[derive(Debug, Clone)]
pub struct HeptagonModel {
    ext: ExtField,
    surface: PolygonSurface<ExtElement>,
    centers: [VecL; 2],
}

fn lift(ext: &ExtField, x: FieldElement) -> ExtElement {
    ExtElement::from_base(ext, x)
}

/// (cos 2π/7, sin 2π/7) rotation over L.
fn rotation(ext: &ExtField) -> MatL {
    let k = ext.base();
    let a = FieldElement::generator(k);
    let c = lift(ext, (&(&a * &a) - &FieldElement::from_int(k, 2)).scale(&rat(1, 2)));
    let s = ExtElement::new(ext, FieldElement::zero(k), a);
    Mat2::new(c.clone(), s.neg(), s, c)
}

/// Vertices of H1, counterclockwise from (a² - 1, 0).
pub fn heptagon_vertices(ext: &ExtField) -> Result<Vec<VecL>> {
    let k = ext.base();
    if k.n() != 7 {
        return Err(Error::NotHeptagon(k.n()));
    }
    let radius = lift(ext, FieldElement::from_ints(k, &[-1, 0, 1]));
    let rot = rotation(ext);
    let mut v = vec![Vec2::new(radius, ExtElement::zero(ext))];
    for _ in 1..7 {
        let next = rot.apply(v.last().expect("nonempty"));
        v.push(next);
    }
    Ok(v)
}

pub fn build_double_heptagon(ext: &ExtField) -> Result<PolygonSurface<ExtElement>> {
    Ok(HeptagonModel::new(ext)?.surface)
}

impl HeptagonModel {
    pub fn new(ext: &ExtField) -> Result<Self> {
        let v = heptagon_vertices(ext)?;
        let two_m = v[0].plus(&v[1]);
        let w: Vec<_> = v.iter().map(|p| two_m.minus(p)).collect();
        let pairs: Vec<_> = (0..7)
            .map(|j| {
                (
                    EdgeRef { polygon: 0, edge: j },
                    EdgeRef { polygon: 1, edge: j },
                )
            })
            .collect();
        let surface = PolygonSurface::new(
            vec![Polygon::new("H1", v), Polygon::new("H2", w)],
            &pairs,
        )?;
        let zero = ExtElement::zero(ext);
        Ok(HeptagonModel {
            ext: ext.clone(),
            surface,
            centers: [Vec2::new(zero.clone(), zero), two_m],
        })
    }

    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    pub fn surface(&self) -> &PolygonSurface<ExtElement> {
        &self.surface
    }

    /// Centers of H1 (in polygon 0) and H2 (in polygon 1).
    pub fn centers(&self) -> &[VecL; 2] {
        &self.centers
    }
}

/// Result of pulling a heptagon direction back to the staircase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StaircaseDirection {
    /// The input had the graded form (x, βy) with x, y in K.
    Graded(Vec2<FieldElement>),
    /// T^{-1} applied to a direction outside the graded form.
    Ungraded(VecL),
}

#[derive(Debug, Clone)]
pub struct TransitionMaps {
    ext: ExtField,
    t: MatL,
    t_inv: MatL,
    /// α + 1 = a/2 + 1
    alpha1: FieldElement,
}

pub fn transition_maps(ext: &ExtField) -> Result<TransitionMaps> {
    TransitionMaps::new(ext)
}

impl TransitionMaps {
    pub fn new(ext: &ExtField) -> Result<Self> {
        let k = ext.base();
        if k.n() != 7 {
            return Err(Error::NotHeptagon(k.n()));
        }
        let alpha1 = FieldElement::from_rational(k, rat(1, 1))
            + FieldElement::generator(k).scale(&rat(1, 2));
        let p = lift(ext, alpha1.clone());
        let b = ExtElement::beta(ext);
        let t = Mat2::new(p.clone(), p, b.neg(), b);
        let t_inv = t.inverse()?;
        Ok(TransitionMaps {
            ext: ext.clone(),
            t,
            t_inv,
            alpha1,
        })
    }

    pub fn t(&self) -> &MatL {
        &self.t
    }

    pub fn t_inv(&self) -> &MatL {
        &self.t_inv
    }

    pub fn det_t(&self) -> ExtElement {
        self.t.det()
    }

    pub fn lift_matrix(&self, m: &Mat2<FieldElement>) -> MatL {
        let l = |x: &FieldElement| lift(&self.ext, x.clone());
        Mat2::new(l(&m.m11), l(&m.m12), l(&m.m21), l(&m.m22))
    }

    /// T·M·T^{-1}.
    pub fn conjugate(&self, m: &Mat2<FieldElement>) -> MatL {
        self.t.mul(&self.lift_matrix(m)).mul(&self.t_inv)
    }

    /// T·(x, y) = ((α+1)(x+y), β(y-x)).
    pub fn dir_to_heptagon(&self, d: &Vec2<FieldElement>) -> VecL {
        let k = self.ext.base();
        let x = lift(&self.ext, &self.alpha1 * &(&d.x + &d.y));
        let y = ExtElement::new(&self.ext, FieldElement::zero(k), &d.y - &d.x);
        Vec2::new(x, y)
    }

    /// (x, βy) ↦ (x - (α+1)y, x + (α+1)y), a positive multiple of T^{-1}(x, βy).
    pub fn dir_to_staircase(&self, d: &VecL) -> StaircaseDirection {
        if d.x.v().is_zero() && d.y.u().is_zero() {
            let x = d.x.u();
            let ay = &self.alpha1 * d.y.v();
            StaircaseDirection::Graded(Vec2::new(x - &ay, x + &ay))
        } else {
            StaircaseDirection::Ungraded(self.t_inv.apply(d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, ExtContext};
    use crate::linalg::Scalar;
    use num_rational::Rational64;

    fn ext7() -> ExtField {
        ExtContext::new(&make_field(7).unwrap())
    }

    #[test]
    fn vertices_lie_on_circle() {
        let ext = ext7();
        let v = heptagon_vertices(&ext).unwrap();
        for (k, p) in v.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 7.0;
            let r = 2.2469796037;
            let (x, y) = p.approx();
            assert!((x - r * t.cos()).abs() < 1e-9 && (y - r * t.sin()).abs() < 1e-9);
            // x in K, y in βK
            assert!(p.x.v().is_zero() && p.y.u().is_zero());
        }
        let r2 = v[0].norm_squared();
        assert_eq!(r2.u(), &FieldElement::from_ints(ext.base(), &[0, 1, 1]));
    }

    #[test]
    fn single_vertex_class() {
        let ext = ext7();
        let m = HeptagonModel::new(&ext).unwrap();
        let s = m.surface();
        assert_eq!(s.vertex_classes().len(), 1);
        assert_eq!(s.vertex_classes()[0].count(), 14);
        assert_eq!(s.vertex_classes()[0].angle_over_pi, Rational64::from_integer(10));
        assert_eq!(s.genus(), 3);
        // the shared edge is glued with zero translation
        let g = s.gluing(EdgeRef { polygon: 0, edge: 0 });
        assert!(g.translation.is_zero());
    }

    #[test]
    fn rejects_other_orders() {
        let ext = ExtContext::new(&make_field(9).unwrap());
        assert_eq!(HeptagonModel::new(&ext).unwrap_err(), Error::NotHeptagon(9));
    }

    #[test]
    fn transition_matrix() {
        let ext = ext7();
        let tm = TransitionMaps::new(&ext).unwrap();
        assert!((tm.det_t().approx_f64() - 1.649599).abs() < 1e-6);
        let k = ext.base();
        let h = tm.dir_to_heptagon(&Vec2::new(FieldElement::one(k), FieldElement::zero(k)));
        let (x, y) = h.approx();
        assert!((y.atan2(x) + std::f64::consts::PI / 14.0).abs() < 1e-12);
        let d = Vec2::new(FieldElement::from_ints(k, &[1, 2]), FieldElement::from_ints(k, &[0, -1, 1]));
        match tm.dir_to_staircase(&tm.dir_to_heptagon(&d)) {
            StaircaseDirection::Graded(back) => assert!(back.cross(&d).is_zero() && back.dot(&d).is_positive()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn horizontal_maps_to_an_edge_direction() {
        let ext = ext7();
        let tm = TransitionMaps::new(&ext).unwrap();
        let m = HeptagonModel::new(&ext).unwrap();
        let k = ext.base();
        let h = tm.dir_to_heptagon(&Vec2::new(FieldElement::one(k), FieldElement::zero(k)));
        let p = m.surface().polygon(0);
        assert!((0..7).any(|j| p.edge(j).cross(&h).is_zero_value()));
    }
}
