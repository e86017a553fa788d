//! Staircase and double-heptagon models.

mod cylinder;
mod heptagon;
mod staircase;
mod surface;

pub use cylinder::{cylinder_decomposition, Axis, Cylinder};
pub use heptagon::{
    build_double_heptagon, heptagon_vertices, transition_maps, HeptagonModel, MatL,
    StaircaseDirection, TransitionMaps, VecL,
};
pub use staircase::{
    build_staircase, chebyshev_lengths, diagonals, sector_matrices, MatK, StaircaseModel, VecK,
};
pub use surface::{EdgeRef, Gluing, Polygon, PolygonSurface, VertexClass};

use num_rational::Rational64;
use serde::Serialize;

use crate::field::FieldElement;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Exact checks of the structural identities of a staircase model.
pub fn model_invariants(model: &StaircaseModel) -> Vec<InvariantCheck> {
    let mut out = Vec::new();
    let mut push = |name, passed, detail: String| out.push(InvariantCheck { name, passed, detail });

    let u = model.lengths();
    let palin = (0..u.len()).all(|k| u[k] == u[u.len() - 1 - k]);
    let positive = u.iter().all(FieldElement::is_positive);
    push("lengths", palin && positive, format!("{} lengths, palindromic and positive", u.len()));

    let m = model.sectors();
    let bad_det: Vec<_> = (0..m.len()).filter(|&i| !m[i].det().is_one()).collect();
    push("det_one", bad_det.is_empty(), format!("sectors with det != 1: {bad_det:?}"));

    let last = m.len() - 1;
    let bad_sym: Vec<_> = (0..m.len())
        .filter(|&i| m[i].swap_conjugate() != m[last - i])
        .collect();
    push("swap_symmetry", bad_sym.is_empty(), format!("failing indices: {bad_sym:?}"));

    let d = model.diagonals();
    let bad_slope: Vec<_> = (0..d.len() - 1)
        .filter(|&i| !d[i].cross(&d[i + 1]).is_positive())
        .collect();
    push("increasing_slopes", bad_slope.is_empty(), format!("non-increasing at: {bad_slope:?}"));

    let one = FieldElement::one(model.field());
    let bad_norm: Vec<_> = (1..d.len() - 1)
        .filter(|&i| !(&d[i].norm_squared() - &one).is_positive())
        .collect();
    let ends = d[0].norm_squared().is_one() && d[d.len() - 1].norm_squared().is_one();
    push(
        "diagonal_norms",
        bad_norm.is_empty() && ends,
        format!("interior |D_i|^2 <= 1 at: {bad_norm:?}"),
    );

    let surface = model.surface();
    let a = FieldElement::generator(model.field());
    for axis in [Axis::Horizontal, Axis::Vertical] {
        let (passed, detail) = match cylinder_decomposition(&surface, axis) {
            Ok(c) => (
                c.iter().all(|c| c.modulus == a),
                format!("{} {axis} cylinders", c.len()),
            ),
            Err(e) => (false, e.to_string()),
        };
        push(
            if axis == Axis::Horizontal { "horizontal_moduli" } else { "vertical_moduli" },
            passed,
            detail,
        );
    }

    let classes = surface.class_summary();
    let expected = Rational64::from_integer(2 * (m.len() as i64 - 1));
    push(
        "vertex_classes",
        classes.len() == 1 && classes[0].1 == expected,
        classes
            .iter()
            .map(|(c, angle)| format!("{c} corners, angle {angle}π"))
            .collect::<Vec<_>>()
            .join("; "),
    );
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CylinderDump {
    pub axis: String,
    pub members: Vec<usize>,
    pub circumference: String,
    pub height: String,
    pub modulus: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelDump {
    #[serde(rename = "N")]
    pub n: u32,
    pub u: Vec<String>,
    pub diagonals: Vec<[String; 2]>,
    pub sectors: Vec<[[String; 2]; 2]>,
    pub cylinders: Vec<CylinderDump>,
    pub vertex_classes: Vec<VertexClassDump>,
    pub invariants: Vec<InvariantCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexClassDump {
    pub corners: usize,
    pub angle_over_pi: String,
}

pub fn dump_model(model: &StaircaseModel) -> ModelDump {
    let s = |x: &FieldElement| x.to_string();
    let surface = model.surface();
    let cylinders = [Axis::Horizontal, Axis::Vertical]
        .into_iter()
        .flat_map(|axis| cylinder_decomposition(&surface, axis).unwrap_or_default())
        .map(|c| CylinderDump {
            axis: c.axis.to_string(),
            members: c.members.iter().map(|i| i + 1).collect(),
            circumference: s(&c.circumference),
            height: s(&c.height),
            modulus: s(&c.modulus),
        })
        .collect();
    ModelDump {
        n: model.n(),
        u: model.lengths().iter().map(s).collect(),
        diagonals: model.diagonals().iter().map(|d| [s(&d.x), s(&d.y)]).collect(),
        sectors: model
            .sectors()
            .iter()
            .map(|m| [[s(&m.m11), s(&m.m12)], [s(&m.m21), s(&m.m22)]])
            .collect(),
        cylinders,
        vertex_classes: surface
            .class_summary()
            .into_iter()
            .map(|(c, ang)| VertexClassDump {
                corners: c,
                angle_over_pi: ang.to_string(),
            })
            .collect(),
        invariants: model_invariants(model),
    }
}
