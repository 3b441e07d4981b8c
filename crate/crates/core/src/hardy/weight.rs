//! Inverse-square weights evaluated on grid cells.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::Grid;
use crate::distance::{d1, d2, delta_c_nearest_plane, delta_k_unchecked, omega_unchecked};
use crate::error::{Error, Result};
use crate::geodesic::cc_distance;
use crate::group::{group_inv, group_mul, kaplan_gauge4, Point};
use crate::polytope::Polytope;

/// The weights `w` of the quotients `∫|∇_H u|² / ∫ w u²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WeightKind {
    /// `1/δ_C²`
    DeltaC,
    /// `1/δ_K²`
    DeltaK,
    /// `1/ω²`
    Omega,
    /// `1/d1² + 1/d2²`
    #[serde(rename = "D1D2")]
    D1D2,
    /// `1/d_C(x, o)²`
    PointCc,
    /// `(z1² + z2²)/‖z‖⁴_H` with `z = (−o) ⊞ x`
    KaplanOrigin,
    /// `(z1² + z2²)/(4 z3²)` with `z = (−o) ⊞ x`
    HalfSpaceLy,
}

impl WeightKind {
    pub const ALL: [WeightKind; 7] = [
        WeightKind::DeltaC,
        WeightKind::DeltaK,
        WeightKind::Omega,
        WeightKind::D1D2,
        WeightKind::PointCc,
        WeightKind::KaplanOrigin,
        WeightKind::HalfSpaceLy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WeightKind::DeltaC => "DELTA_C",
            WeightKind::DeltaK => "DELTA_K",
            WeightKind::Omega => "OMEGA",
            WeightKind::D1D2 => "D1D2",
            WeightKind::PointCc => "POINT_CC",
            WeightKind::KaplanOrigin => "KAPLAN_ORIGIN",
            WeightKind::HalfSpaceLy => "HALF_SPACE_LY",
        }
    }
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WeightKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase().replace('-', "_");
        WeightKind::ALL
            .into_iter()
            .find(|k| k.name() == up)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown weight kind {s:?}")))
    }
}

/// Per-cell weight values (zero off the mask). For the boundary-distance
/// kinds the underlying distance is kept as well.
#[derive(Clone, Debug)]
pub struct WeightField {
    pub kind: WeightKind,
    pub values: Vec<f64>,
    pub distance: Option<Vec<f64>>,
}

/// The weight of `kind` at an interior point `x`.
pub fn weight_at(p: &Polytope, kind: WeightKind, origin: Point, x: Point) -> Result<f64> {
    p.require_interior(x)?;
    Ok(match kind {
        WeightKind::DeltaC => delta_c_nearest_plane(p, x).0.powi(-2),
        WeightKind::DeltaK => delta_k_unchecked(p, x).powi(-2),
        WeightKind::Omega => omega_unchecked(p, x).powi(-2),
        WeightKind::D1D2 => d1(p, x)?.powi(-2) + d2(p, x)?.powi(-2),
        WeightKind::PointCc => cc_distance(x, origin)?.powi(-2),
        WeightKind::KaplanOrigin => {
            let z = group_mul(group_inv(origin), x);
            (z.x1 * z.x1 + z.x2 * z.x2) / kaplan_gauge4(z)
        }
        WeightKind::HalfSpaceLy => {
            let z = group_mul(group_inv(origin), x);
            (z.x1 * z.x1 + z.x2 * z.x2) / (4.0 * z.x3 * z.x3)
        }
    })
}

/// Boundary distance underlying a boundary-distance weight.
fn distance_at(p: &Polytope, kind: WeightKind, x: Point) -> Option<f64> {
    match kind {
        WeightKind::DeltaC => Some(delta_c_nearest_plane(p, x).0),
        WeightKind::DeltaK => Some(delta_k_unchecked(p, x)),
        WeightKind::Omega => Some(omega_unchecked(p, x)),
        _ => None,
    }
}

pub fn weight_field(g: &Grid, p: &Polytope, kind: WeightKind, origin: Point) -> Result<WeightField> {
    let cells: Vec<usize> = (0..g.len()).filter(|&c| g.mask()[c]).collect();
    let evaluated: Vec<Result<(f64, Option<f64>)>> = cells
        .par_iter()
        .map(|&c| {
            let x = g.center_of(c);
            match distance_at(p, kind, x) {
                Some(d) => Ok((d.powi(-2), Some(d))),
                None => weight_at(p, kind, origin, x).map(|w| (w, None)),
            }
        })
        .collect();
    let mut values = vec![0.0; g.len()];
    let mut distance = matches!(kind, WeightKind::DeltaC | WeightKind::DeltaK | WeightKind::Omega).then(|| vec![0.0; g.len()]);
    for (&c, r) in cells.iter().zip(evaluated) {
        let (w, d) = r?;
        if !w.is_finite() || w < 0.0 {
            return Err(Error::SingularWeight(format!("{kind} = {w} at {:?}", g.center_of(c))));
        }
        values[c] = w;
        if let (Some(dist), Some(d)) = (distance.as_mut(), d) {
            dist[c] = d;
        }
    }
    if !values.iter().any(|&w| w > 0.0) {
        return Err(Error::SingularWeight(format!("{kind} vanishes on the whole mask")));
    }
    Ok(WeightField { kind, values, distance: distance.take() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_weights() {
        let c = Polytope::cube(1.0).unwrap();
        assert_eq!(weight_at(&c, WeightKind::D1D2, Point::ORIGIN, Point::ORIGIN).unwrap(), 2.0);
        let b = Polytope::cuboid(Point::new(-2.0, -2.0, -2.0), Point::new(2.0, 2.0, 2.0)).unwrap();
        assert_eq!(weight_at(&b, WeightKind::KaplanOrigin, Point::ORIGIN, Point::new(1.0, 0.0, 0.0)).unwrap(), 1.0);
        assert_eq!(weight_at(&b, WeightKind::HalfSpaceLy, Point::ORIGIN, Point::new(1.0, 0.0, 0.5)).unwrap(), 1.0);
        assert!(weight_at(&c, WeightKind::DeltaC, Point::ORIGIN, Point::new(2.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn names_round_trip() {
        for k in WeightKind::ALL {
            assert_eq!(k.name().parse::<WeightKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{}\"", k.name()));
        }
        assert_eq!("delta-c".parse::<WeightKind>().unwrap(), WeightKind::DeltaC);
        assert!("nope".parse::<WeightKind>().is_err());
    }

    #[test]
    fn singular_origin_is_rejected() {
        // odd resolution puts a cell center exactly on the origin
        let c = Polytope::cube(1.0).unwrap();
        let g = Grid::new(&c, 5).unwrap();
        assert!(matches!(weight_field(&g, &c, WeightKind::PointCc, Point::ORIGIN), Err(Error::SingularWeight(_))));
        let g = Grid::new(&c, 6).unwrap();
        let w = weight_field(&g, &c, WeightKind::PointCc, Point::ORIGIN).unwrap();
        assert!(w.values.iter().all(|v| v.is_finite()));
        let w = weight_field(&g, &c, WeightKind::DeltaC, Point::ORIGIN).unwrap();
        assert!(w.distance.is_some());
    }
}
