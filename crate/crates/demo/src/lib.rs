//! WebAssembly bindings for the static page in `www/`.
//!
//! Each export returns JSON or matrix text; errors come back as a string.

use conelab::catalog::ConeId;
use conelab::harness::Lab;
use conelab::matrix::{transform_matrix, RowMap};
use conelab::zeroone::enumerate_01;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Larger cones take too long on the page.
pub const MAX_POINTS: usize = 5;

fn check_size(n: usize) -> Result<(), String> {
    if (3..=MAX_POINTS).contains(&n) {
        Ok(())
    } else {
        Err(format!("n must be between 3 and {MAX_POINTS}"))
    }
}

/// Ray, facet and orbit counts and both graph diameters.
pub fn summary_json(cone: &str, n: usize) -> Result<String, String> {
    check_size(n)?;
    let id = ConeId::parse(cone).map_err(|e| e.to_string())?;
    let c = Lab::global().get(id, n).map_err(|e| e.to_string())?;
    let ray_orbits = c.ray_orbits().map_err(|e| e.to_string())?.len();
    let facet_orbits = c.facet_orbits().map_err(|e| e.to_string())?.len();
    let diam = |g: &conelab::graphs::FaceGraph| g.diameter().ok();
    let v = json!({
        "cone": c.name(),
        "dim": c.model.dim(),
        "rays": c.rays().len(),
        "ray_orbits": ray_orbits,
        "facets": c.facets().len(),
        "facet_orbits": facet_orbits,
        "skeleton_diameter": diam(c.skeleton()),
        "ridge_diameter": diam(c.ridge()),
    });
    Ok(v.to_string())
}

/// Applies `P`, `Pinv`, `Q`, `lift` or `sym` to a matrix file.
pub fn transform_text(map: &str, text: &str) -> Result<String, String> {
    let map: RowMap = map.parse().map_err(|e: conelab::Error| e.to_string())?;
    transform_matrix(text, map).map_err(|e| e.to_string())
}

/// Counts of 0,1 points and of the extreme ones, with orbit counts.
pub fn zero_one_json(cone: &str, n: usize) -> Result<String, String> {
    check_size(n)?;
    let id = ConeId::parse(cone).map_err(|e| e.to_string())?;
    let model = conelab::catalog::build_id(id, n).map_err(|e| e.to_string())?;
    let r = enumerate_01(&model).map_err(|e| e.to_string())?;
    let extreme: Vec<Vec<String>> = r.extreme_points.iter().map(|p| p.0.iter().map(ToString::to_string).collect()).collect();
    Ok(json!({
        "cone": model.name(),
        "coords": model.space.labels(),
        "total": r.total,
        "extreme": r.extreme,
        "orbits_total": r.orbits_total,
        "orbits_extreme": r.orbits_extreme,
        "extreme_points": extreme,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn cone_summary(cone: &str, n: usize) -> Result<String, JsValue> {
    summary_json(cone, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn transform(map: &str, text: &str) -> Result<String, JsValue> {
    transform_text(map, text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn zero_one(cone: &str, n: usize) -> Result<String, JsValue> {
    zero_one_json(cone, n).map_err(|e| JsValue::from_str(&e))
}
