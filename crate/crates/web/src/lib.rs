//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes a surface source (a catalog name or four comma-separated
//! expressions) and returns a JSON string. The `*_json` functions do the work
//! and are usable natively.

use serde::Serialize;
use surface4::catalog::{lookup, CATALOG};
use surface4::geometry::{Grid, PointOptions};
use surface4::report::{point_report, GridRow};
use surface4::surface_expr::{Domain, SurfaceDef};
use surface4::twistor::{isotropy_report, lift_grid, ISOTROPY_TOL};
use wasm_bindgen::prelude::*;

/// Largest grid the page may request.
pub const MAX_N: usize = 121;

fn resolve(source: &str) -> Result<SurfaceDef, String> {
    let source = source.trim();
    match lookup(source) {
        Some(e) => Ok(e.surface()),
        None => SurfaceDef::parse_with(source, "expr", Domain::UNIT_SQUARE).map_err(|e| e.to_string()),
    }
}

fn with_domain(mut s: SurfaceDef, domain: Option<[f64; 4]>) -> Result<SurfaceDef, String> {
    if let Some(d) = domain {
        let d = Domain::from(d);
        d.validate().map_err(|e| e.to_string())?;
        s.domain = d;
    }
    Ok(s)
}

fn grid_for(s: &SurfaceDef, n: usize) -> Result<Grid, String> {
    if n > MAX_N {
        return Err(format!("grid size {n} exceeds {MAX_N}"));
    }
    Grid::new(s.domain, n).map_err(|e| e.to_string())
}

fn encode(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("reports serialize")
}

fn no_connection() -> PointOptions {
    PointOptions {
        connection: None,
        ..Default::default()
    }
}

#[derive(Serialize)]
struct CatalogItem {
    name: &'static str,
    components: &'static str,
    domain: Domain,
}

pub fn catalog_json() -> String {
    let items: Vec<CatalogItem> = CATALOG
        .iter()
        .map(|e| CatalogItem {
            name: e.name,
            components: e.components,
            domain: e.domain,
        })
        .collect();
    encode(&items)
}

pub fn analyze_point_json(source: &str, u: f64, v: f64) -> Result<String, String> {
    let s = resolve(source)?;
    Ok(encode(
        &point_report(&s, u, v, &PointOptions::default()).map_err(|e| e.to_string())?,
    ))
}

#[derive(Serialize)]
struct Sample {
    name: String,
    domain: Domain,
    n: usize,
    /// Row-major, `u` fastest.
    rows: Vec<GridRow>,
}

pub fn sample_grid_json(source: &str, n: usize, domain: Option<[f64; 4]>) -> Result<String, String> {
    let s = with_domain(resolve(source)?, domain)?;
    let grid = grid_for(&s, n)?;
    let tg = lift_grid(&s, &grid, &no_connection()).map_err(|e| e.to_string())?;
    let rows = tg
        .data
        .points
        .iter()
        .zip(&tg.lifts)
        .map(|(p, l)| GridRow::new(p, l))
        .collect();
    Ok(encode(&Sample {
        name: s.name.clone(),
        domain: s.domain,
        n,
        rows,
    }))
}

pub fn isotropy_json(source: &str, n: usize) -> Result<String, String> {
    let s = resolve(source)?;
    let grid = grid_for(&s, n)?;
    let tg = lift_grid(&s, &grid, &no_connection()).map_err(|e| e.to_string())?;
    Ok(encode(
        &isotropy_report(&tg, ISOTROPY_TOL).map_err(|e| e.to_string())?,
    ))
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn catalog() -> String {
    catalog_json()
}

#[wasm_bindgen]
pub fn analyze_point(source: &str, u: f64, v: f64) -> Result<String, JsValue> {
    js(analyze_point_json(source, u, v))
}

/// `domain` is `[u0, u1, v0, v1]` or empty for the surface's own domain.
#[wasm_bindgen]
pub fn sample_grid(source: &str, n: usize, domain: Vec<f64>) -> Result<String, JsValue> {
    let d = match domain.as_slice() {
        [] => None,
        [a, b, c, d] => Some([*a, *b, *c, *d]),
        _ => return Err(JsValue::from_str("domain needs four numbers")),
    };
    js(sample_grid_json(source, n, d))
}

#[wasm_bindgen]
pub fn isotropy(source: &str, n: usize) -> Result<String, JsValue> {
    js(isotropy_json(source, n))
}
