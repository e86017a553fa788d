//! The staircase model of the double (2n+1)-gon: normalized sine lengths,
//! short diagonals D_i and the sector matrices M_i.

use crate::field::{Field, FieldElement, IntPoly};
use crate::linalg::{Mat2, Vec2};
use crate::model::surface::{EdgeRef, Polygon, PolygonSurface};

pub type VecK = Vec2<FieldElement>;
pub type MatK = Mat2<FieldElement>;

/// u_1..u_{2n} with u_k = sin(kπ/N)/sin(π/N): u_1 = 1, u_2 = a,
/// u_{k+1} = a u_k - u_{k-1}.
pub fn chebyshev_lengths(ctx: &Field) -> Vec<FieldElement> {
    let n2 = 2 * ctx.half_order();
    let a = FieldElement::generator(ctx);
    let mut u = vec![FieldElement::zero(ctx), FieldElement::one(ctx)];
    while u.len() <= n2 {
        let k = u.len() - 1;
        let next = &(&a * &u[k]) - &u[k - 1];
        u.push(next);
    }
    u.remove(0);
    u
}

/// D_0 = (1, 0), D_i = (u_{i+1}, u_i) for 1 ≤ i ≤ 2n-1, D_{2n} = (0, 1).
pub fn diagonals(ctx: &Field) -> Vec<VecK> {
    let u = chebyshev_lengths(ctx);
    let n2 = u.len();
    let zero = FieldElement::zero(ctx);
    let one = FieldElement::one(ctx);
    let mut d = vec![Vec2::new(one.clone(), zero.clone())];
    for i in 1..n2 {
        // u is 0-indexed: u[k-1] = u_k
        d.push(Vec2::new(u[i].clone(), u[i - 1].clone()));
    }
    d.push(Vec2::new(zero, one));
    d
}

/// M_i has columns D_i and D_{i+1}, i = 0..2n-1.
pub fn sector_matrices(ctx: &Field) -> Vec<MatK> {
    let d = diagonals(ctx);
    d.windows(2)
        .map(|w| Mat2::from_columns(&w[0], &w[1]))
        .collect()
}

#[derive(Debug, Clone)]
pub struct StaircaseModel {
    ctx: Field,
    u: Vec<FieldElement>,
    diagonals: Vec<VecK>,
    sectors: Vec<MatK>,
    sector_inverses: Vec<MatK>,
    int_diagonals: Vec<[IntPoly; 2]>,
    int_inverses: Vec<[IntPoly; 4]>,
    split_prime: (u64, u64),
}

fn integral(x: &FieldElement) -> IntPoly {
    let (num, den) = x.to_int_parts();
    assert!(den == 1.into(), "staircase data lies in Z[a]");
    num
}

impl StaircaseModel {
    pub fn new(ctx: &Field) -> Self {
        let sectors = sector_matrices(ctx);
        // det M_i = 1, so the adjugate is the inverse
        let sector_inverses: Vec<MatK> = sectors.iter().map(Mat2::adjugate).collect();
        let diagonals = diagonals(ctx);
        let int_diagonals = diagonals
            .iter()
            .map(|d| [integral(&d.x), integral(&d.y)])
            .collect();
        let int_inverses = sector_inverses
            .iter()
            .map(|m| m.entries().map(integral))
            .collect();
        StaircaseModel {
            ctx: ctx.clone(),
            u: chebyshev_lengths(ctx),
            diagonals,
            sectors,
            sector_inverses,
            int_diagonals,
            int_inverses,
            split_prime: ctx.split_prime(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.ctx
    }

    pub fn n(&self) -> u32 {
        self.ctx.n()
    }

    /// u_1..u_{2n}.
    pub fn lengths(&self) -> &[FieldElement] {
        &self.u
    }

    /// u_k for 0 ≤ k ≤ 2n+1, with u_0 = u_{2n+1} = 0.
    pub fn length(&self, k: usize) -> FieldElement {
        if k == 0 || k > self.u.len() {
            FieldElement::zero(&self.ctx)
        } else {
            self.u[k - 1].clone()
        }
    }

    pub fn diagonals(&self) -> &[VecK] {
        &self.diagonals
    }

    pub fn sectors(&self) -> &[MatK] {
        &self.sectors
    }

    pub fn sector(&self, i: usize) -> Option<&MatK> {
        self.sectors.get(i)
    }

    pub fn sector_inverse(&self, i: usize) -> Option<&MatK> {
        self.sector_inverses.get(i)
    }

    /// D_i with coefficients in Z[a].
    pub fn int_diagonal(&self, i: usize) -> &[IntPoly; 2] {
        &self.int_diagonals[i]
    }

    /// Entries (m11, m12, m21, m22) of M_i^{-1} in Z[a].
    pub fn int_inverse(&self, i: usize) -> &[IntPoly; 4] {
        &self.int_inverses[i]
    }

    /// (p, r) with a ↦ r mod p a ring map Z[a] → F_p.
    pub fn split_prime(&self) -> (u64, u64) {
        self.split_prime
    }

    /// Number of sectors, 2n.
    pub fn sector_count(&self) -> usize {
        self.sectors.len()
    }

    /// Rectangle R_i (1-based) as (width, height): odd i → (u_i, u_{i+1}),
    /// even i → (u_{i+1}, u_i).
    pub fn rectangle(&self, i: usize) -> (FieldElement, FieldElement) {
        if i % 2 == 1 {
            (self.length(i), self.length(i + 1))
        } else {
            (self.length(i + 1), self.length(i))
        }
    }

    /// Total area Σ u_i u_{i+1} over the 2n-1 rectangles.
    pub fn area(&self) -> FieldElement {
        (1..self.sector_count()).fold(FieldElement::zero(&self.ctx), |acc, i| {
            let (w, h) = self.rectangle(i);
            acc + &w * &h
        })
    }

    /// The glued rectangles. Polygon k is R_{k+1}, vertices counterclockwise
    /// from the lower-left corner, edges 0..3 = bottom, right, top, left.
    pub fn surface(&self) -> PolygonSurface<FieldElement> {
        build_staircase(self)
    }
}

const BOTTOM: usize = 0;
const RIGHT: usize = 1;
const TOP: usize = 2;
const LEFT: usize = 3;

pub fn build_staircase(model: &StaircaseModel) -> PolygonSurface<FieldElement> {
    let count = model.sector_count() - 1;
    let zero = FieldElement::zero(model.field());
    let polygons: Vec<_> = (1..=count)
        .map(|i| {
            let (w, h) = model.rectangle(i);
            Polygon::new(
                format!("R{i}"),
                vec![
                    Vec2::new(zero.clone(), zero.clone()),
                    Vec2::new(w.clone(), zero.clone()),
                    Vec2::new(w, h.clone()),
                    Vec2::new(zero.clone(), h),
                ],
            )
        })
        .collect();

    let e = |p: usize, edge: usize| EdgeRef { polygon: p, edge };
    let mut pairs = Vec::new();
    // R_1 top/bottom and R_{2n-1} left/right close up on themselves
    pairs.push((e(0, TOP), e(0, BOTTOM)));
    pairs.push((e(count - 1, RIGHT), e(count - 1, LEFT)));
    for i in 1..count {
        let (p, q) = (i - 1, i);
        if i % 2 == 1 {
            // equal heights: vertical edges, crosswise
            pairs.push((e(p, RIGHT), e(q, LEFT)));
            pairs.push((e(p, LEFT), e(q, RIGHT)));
        } else {
            pairs.push((e(p, TOP), e(q, BOTTOM)));
            pairs.push((e(p, BOTTOM), e(q, TOP)));
        }
    }
    PolygonSurface::new(polygons, &pairs).expect("staircase gluings are consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn el(ctx: &Field, c: &[i64]) -> FieldElement {
        FieldElement::from_ints(ctx, c)
    }

    #[test]
    fn lengths_heptagon() {
        let k = make_field(7).unwrap();
        let u = chebyshev_lengths(&k);
        let expect = [
            el(&k, &[1]),
            el(&k, &[0, 1]),
            el(&k, &[-1, 0, 1]),
            el(&k, &[-1, 0, 1]),
            el(&k, &[0, 1]),
            el(&k, &[1]),
        ];
        assert_eq!(u, expect);
        for (i, x) in u.iter().enumerate() {
            let s = ((i + 1) as f64 * std::f64::consts::PI / 7.0).sin()
                / (std::f64::consts::PI / 7.0).sin();
            assert!((x.to_f64() - s).abs() < 1e-12);
        }
    }

    #[test]
    fn lengths_pentagon() {
        let k = make_field(5).unwrap();
        let u = chebyshev_lengths(&k);
        assert_eq!(u, vec![el(&k, &[1]), el(&k, &[0, 1]), el(&k, &[0, 1]), el(&k, &[1])]);
    }

    #[test]
    fn diagonals_heptagon() {
        let k = make_field(7).unwrap();
        let d = diagonals(&k);
        let v = |x: &[i64], y: &[i64]| Vec2::new(el(&k, x), el(&k, y));
        assert_eq!(d[0], v(&[1], &[0]));
        assert_eq!(d[1], v(&[0, 1], &[1]));
        assert_eq!(d[2], v(&[-1, 0, 1], &[0, 1]));
        assert_eq!(d[3], v(&[-1, 0, 1], &[-1, 0, 1]));
        assert_eq!(d[4], v(&[0, 1], &[-1, 0, 1]));
        assert_eq!(d[5], v(&[1], &[0, 1]));
        assert_eq!(d[6], v(&[0], &[1]));
    }

    #[test]
    fn diagonals_pentagon() {
        let k = make_field(5).unwrap();
        let d = diagonals(&k);
        let v = |x: &[i64], y: &[i64]| Vec2::new(el(&k, x), el(&k, y));
        assert_eq!(&d[1..4], &[v(&[0, 1], &[1]), v(&[0, 1], &[0, 1]), v(&[1], &[0, 1])]);
    }

    #[test]
    fn sectors_match_reference_factors() {
        let k = make_field(7).unwrap();
        let m = sector_matrices(&k);
        let mat = |a: &[i64], b: &[i64], c: &[i64], d: &[i64]| {
            Mat2::new(el(&k, a), el(&k, b), el(&k, c), el(&k, d))
        };
        assert_eq!(m[0], mat(&[1], &[0, 1], &[0], &[1]));
        assert_eq!(m[5], mat(&[1], &[0], &[0, 1], &[1]));
        assert_eq!(m[4], mat(&[0, 1], &[1], &[-1, 0, 1], &[0, 1]));
    }

    #[test]
    fn staircase_area() {
        let k = make_field(7).unwrap();
        let model = StaircaseModel::new(&k);
        assert_eq!(model.area(), el(&k, &[-2, 5, 3]));
        assert!((model.area().to_f64() - 16.7513).abs() < 1e-3);
    }

    #[test]
    fn pentagon_rectangles() {
        let k = make_field(5).unwrap();
        let model = StaircaseModel::new(&k);
        let a = FieldElement::generator(&k);
        let one = FieldElement::one(&k);
        assert_eq!(model.rectangle(1), (one.clone(), a.clone()));
        assert_eq!(model.rectangle(2), (a.clone(), a.clone()));
        assert_eq!(model.rectangle(3), (a, one));
    }
}
