//! Built-in surfaces with the properties the analysis should find.

use serde::{Deserialize, Serialize};

use crate::geometry::{Grid, PointOptions};
use crate::surface_expr::{Domain, SurfaceDef};
use crate::twistor::{
    isotropy_report, lift_grid, Consensus, ConstantLift, TwistorError, ISOTROPY_TOL,
};

const TAU: f64 = std::f64::consts::TAU;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedFlags {
    pub isothermal: bool,
    pub minimal: bool,
    /// Only meaningful for minimal surfaces.
    pub isotropic: Option<bool>,
    pub constant_lift: ConstantLift,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub components: &'static str,
    pub domain: Domain,
    pub expected: ExpectedFlags,
    pub note: &'static str,
}

impl CatalogEntry {
    pub fn surface(&self) -> SurfaceDef {
        SurfaceDef::parse_with(self.components, self.name, self.domain)
            .expect("catalog entries parse")
    }
}

const SQUARE: Domain = Domain::UNIT_SQUARE;

pub const CATALOG: [CatalogEntry; 7] = [
    CatalogEntry {
        name: "plane",
        components: "u, v, 0, 0",
        domain: SQUARE,
        expected: ExpectedFlags {
            isothermal: true,
            minimal: true,
            isotropic: Some(true),
            constant_lift: ConstantLift::Both,
        },
        note: "totally geodesic; both lifts constant",
    },
    CatalogEntry {
        name: "holo_square",
        components: "u, v, u^2 - v^2, 2*u*v",
        domain: SQUARE,
        expected: ExpectedFlags {
            isothermal: true,
            minimal: true,
            isotropic: Some(true),
            constant_lift: ConstantLift::Plus,
        },
        note: "graph of w -> w^2, a complex curve",
    },
    CatalogEntry {
        name: "holo_cube",
        components: "u, v, u^3 - 3*u*v^2, 3*u^2*v - v^3",
        domain: SQUARE,
        expected: ExpectedFlags {
            isothermal: true,
            minimal: true,
            isotropic: Some(true),
            constant_lift: ConstantLift::Plus,
        },
        note: "graph of w -> w^3, a complex curve",
    },
    CatalogEntry {
        name: "clifford_torus",
        components: "cos(u)/sqrt(2), sin(u)/sqrt(2), cos(v)/sqrt(2), sin(v)/sqrt(2)",
        domain: Domain {
            u0: 0.0,
            u1: TAU,
            v0: 0.0,
            v1: TAU,
        },
        expected: ExpectedFlags {
            isothermal: true,
            minimal: false,
            isotropic: None,
            constant_lift: ConstantLift::None,
        },
        note: "flat torus in the 3-sphere of radius 1, |H| = 1",
    },
    CatalogEntry {
        name: "catenoid_E3",
        components: "cosh(v)*cos(u), cosh(v)*sin(u), v, 0",
        domain: SQUARE,
        expected: ExpectedFlags {
            isothermal: true,
            minimal: true,
            isotropic: Some(false),
            constant_lift: ConstantLift::None,
        },
        note: "catenoid in a hyperplane, minimal but not isotropic",
    },
    CatalogEntry {
        name: "round_sphere",
        components: "2*u/(u^2 + v^2 + 1), 2*v/(u^2 + v^2 + 1), (u^2 + v^2 - 1)/(u^2 + v^2 + 1), 0",
        domain: Domain {
            u0: -0.6,
            u1: 0.6,
            v0: -0.6,
            v1: 0.6,
        },
        expected: ExpectedFlags {
            isothermal: true,
            minimal: false,
            isotropic: None,
            constant_lift: ConstantLift::None,
        },
        note: "inverse stereographic patch of the unit 2-sphere, |H| = 1",
    },
    CatalogEntry {
        name: "nonisothermal_graph",
        components: "u, v, u^2, v^2",
        domain: SQUARE,
        expected: ExpectedFlags {
            isothermal: false,
            minimal: false,
            isotropic: None,
            constant_lift: ConstantLift::None,
        },
        note: "coordinates conformal only on the diagonals",
    },
];

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

/// Flags found by running the full pipeline on an `n × n` grid.
pub fn observe_flags(surface: &SurfaceDef, n: usize) -> Result<ExpectedFlags, TwistorError> {
    let grid = Grid::new(surface.domain, n)?;
    let tg = lift_grid(
        surface,
        &grid,
        &PointOptions {
            connection: None,
            ..Default::default()
        },
    )?;
    let isothermal = tg.data.all_isothermal();
    let minimal = tg.data.require_minimal_isothermal().is_ok();
    let (isotropic, constant_lift) = if minimal {
        let r = isotropy_report(&tg, ISOTROPY_TOL)?;
        let iso = match r.consensus {
            Consensus::Isotropic => Some(true),
            Consensus::NonIsotropic => Some(false),
            Consensus::Inconsistent => None,
        };
        (iso, r.constant_lift)
    } else {
        (None, ConstantLift::None)
    };
    Ok(ExpectedFlags {
        isothermal,
        minimal,
        isotropic,
        constant_lift,
    })
}
