//! Horizontal and vertical cylinders of a surface made of axis-aligned rectangles.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::model::surface::{EdgeRef, PolygonSurface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Horizontal => "horizontal",
            Axis::Vertical => "vertical",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    pub axis: Axis,
    /// Polygon indices, ascending.
    pub members: Vec<usize>,
    pub circumference: FieldElement,
    pub height: FieldElement,
    pub modulus: FieldElement,
}

fn rectangle_dims(
    surface: &PolygonSurface<FieldElement>,
    i: usize,
) -> Result<(FieldElement, FieldElement)> {
    let p = surface.polygon(i);
    if p.len() != 4 {
        return Err(Error::NotStaircase(format!("polygon {i} has {} sides", p.len())));
    }
    let e: Vec<_> = (0..4).map(|j| p.edge(j)).collect();
    let ok = e[0].y.is_zero()
        && e[0].x.is_positive()
        && e[1].x.is_zero()
        && e[1].y.is_positive()
        && e[2] == e[0].negated()
        && e[3] == e[1].negated();
    if !ok {
        return Err(Error::NotStaircase(format!(
            "polygon {i} is not an axis-aligned rectangle starting at its lower-left corner"
        )));
    }
    Ok((e[0].x.clone(), e[1].y.clone()))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Cylinders in the given direction, ordered by smallest member.
pub fn cylinder_decomposition(
    surface: &PolygonSurface<FieldElement>,
    axis: Axis,
) -> Result<Vec<Cylinder>> {
    let count = surface.polygons().len();
    let dims: Vec<_> = (0..count)
        .map(|i| rectangle_dims(surface, i))
        .collect::<Result<_>>()?;
    // a horizontal cylinder continues across vertical edges
    let across = match axis {
        Axis::Horizontal => [1, 3],
        Axis::Vertical => [0, 2],
    };
    let mut parent: Vec<usize> = (0..count).collect();
    for i in 0..count {
        for edge in across {
            let g = surface.gluing(EdgeRef { polygon: i, edge });
            if g.target.edge != (edge + 2) % 4 {
                return Err(Error::NotStaircase(format!(
                    "edge {edge} of polygon {i} is glued to a non-opposite side"
                )));
            }
            let (a, b) = (find(&mut parent, i), find(&mut parent, g.target.polygon));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_group = vec![usize::MAX; count];
    for i in 0..count {
        let r = find(&mut parent, i);
        if root_group[r] == usize::MAX {
            root_group[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_group[r]].push(i);
    }
    groups
        .into_iter()
        .map(|members| {
            let (along, across): (Vec<_>, Vec<_>) = members
                .iter()
                .map(|&i| {
                    let (w, h) = dims[i].clone();
                    match axis {
                        Axis::Horizontal => (w, h),
                        Axis::Vertical => (h, w),
                    }
                })
                .unzip();
            let height = across[0].clone();
            if across.iter().any(|h| *h != height) {
                return Err(Error::NotStaircase(format!(
                    "{axis} cylinder {members:?} has rectangles of unequal height"
                )));
            }
            let circumference = along
                .into_iter()
                .fold(FieldElement::zero(height.context()), |s, x| s + x);
            let modulus = circumference.try_div(&height)?;
            Ok(Cylinder {
                axis,
                members,
                circumference,
                height,
                modulus,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::model::StaircaseModel;

    fn el(k: &crate::field::Field, c: &[i64]) -> FieldElement {
        FieldElement::from_ints(k, c)
    }

    #[test]
    fn heptagon_staircase_horizontal() {
        let k = make_field(7).unwrap();
        let s = StaircaseModel::new(&k).surface();
        let cyl = cylinder_decomposition(&s, Axis::Horizontal).unwrap();
        let members: Vec<_> = cyl.iter().map(|c| c.members.clone()).collect();
        assert_eq!(members, vec![vec![0, 1], vec![2, 3], vec![4]]);
        let pairs: Vec<_> = cyl
            .iter()
            .map(|c| (c.circumference.clone(), c.height.clone()))
            .collect();
        assert_eq!(
            pairs,
            vec![
                (el(&k, &[0, 0, 1]), el(&k, &[0, 1])),
                (el(&k, &[-1, 1, 1]), el(&k, &[-1, 0, 1])),
                (el(&k, &[0, 1]), el(&k, &[1])),
            ]
        );
        let a = FieldElement::generator(&k);
        assert!(cyl.iter().all(|c| c.modulus == a));
    }

    #[test]
    fn heptagon_staircase_vertical() {
        let k = make_field(7).unwrap();
        let s = StaircaseModel::new(&k).surface();
        let cyl = cylinder_decomposition(&s, Axis::Vertical).unwrap();
        let members: Vec<_> = cyl.iter().map(|c| c.members.clone()).collect();
        assert_eq!(members, vec![vec![0], vec![1, 2], vec![3, 4]]);
        let h = cylinder_decomposition(&s, Axis::Horizontal).unwrap();
        // mirror image of the horizontal decomposition
        let mut hv: Vec<_> = h.iter().map(|c| c.circumference.clone()).collect();
        let mut vv: Vec<_> = cyl.iter().map(|c| c.circumference.clone()).collect();
        hv.sort_by(|x, y| x.cmp_value(y));
        vv.sort_by(|x, y| x.cmp_value(y));
        assert_eq!(hv, vv);
    }

    #[test]
    fn pentagon_staircase() {
        let k = make_field(5).unwrap();
        let s = StaircaseModel::new(&k).surface();
        let cyl = cylinder_decomposition(&s, Axis::Horizontal).unwrap();
        assert_eq!(cyl.len(), 2);
        assert_eq!(cyl[0].circumference, el(&k, &[0, 0, 1]).clone());
        assert_eq!(cyl[1].height, el(&k, &[1]));
    }
}
