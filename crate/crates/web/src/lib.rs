//! Browser bindings: three operations returning JSON strings, so the page
//! needs no generated TypeScript types.

use bgsplit::bundle;
use bgsplit::cech::{h0_profile, splitting_type_from_profile};
use bgsplit::splitter::{grothendieck_split, verify_factorization};
use bgsplit::text::{format_bundle, format_matrix, parse_bundle};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest twist range the page may request; each point is an exact solve.
pub const MAX_PROFILE_POINTS: i64 = 41;

fn to_text(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

pub fn split_json(text: &str) -> Result<Value, String> {
    let e = parse_bundle(text).map_err(|e| e.to_string())?;
    let (ty, f) = grothendieck_split(&e).map_err(|e| e.to_string())?;
    Ok(json!({
        "rank": e.rank(),
        "deg": e.degree(),
        "type": ty.degrees(),
        "h0": ty.h0(),
        "h1": ty.h1(),
        "verified": verify_factorization(&e, &f),
        "factors": {
            "W": format_matrix(&f.w),
            "U": format_matrix(&f.u),
            "D": format_matrix(&f.d),
        },
    }))
}

pub fn profile_json(text: &str, from: i64, to: i64) -> Result<Value, String> {
    if to < from || to - from >= MAX_PROFILE_POINTS {
        return Err(format!(
            "twist range must hold 1 to {MAX_PROFILE_POINTS} points"
        ));
    }
    let e = parse_bundle(text).map_err(|e| e.to_string())?;
    let points = h0_profile(&e, from, to).map_err(|e| e.to_string())?;
    // Only determined when the range reaches h0 = 0 and full slope.
    let inferred = splitting_type_from_profile(e.rank(), &points).ok();
    Ok(json!({
        "rank": e.rank(),
        "points": points,
        "type": inferred,
    }))
}

pub fn random_bundle_text(degrees: &str, gauge_degree: u32, seed: u64) -> Result<String, String> {
    let degrees: Vec<i64> = degrees
        .split(',')
        .map(|d| {
            d.trim()
                .parse()
                .map_err(|_| format!("invalid degree '{}'", d.trim()))
        })
        .collect::<Result<_, _>>()?;
    if degrees.len() > 6 || degrees.iter().any(|d| d.abs() > 20) || gauge_degree > 4 {
        return Err("keep rank <= 6, |d| <= 20, gauge degree <= 4".into());
    }
    Ok(format_bundle(&bundle::random_bundle(
        &degrees,
        gauge_degree,
        seed,
    )))
}

/// Splitting type and certificate of a bundle in the text format.
#[wasm_bindgen]
pub fn split(text: &str) -> String {
    to_text(split_json(text))
}

/// `h0(E(m))` for `m` in `from..=to`.
#[wasm_bindgen]
pub fn profile(text: &str, from: i32, to: i32) -> String {
    to_text(profile_json(text, from.into(), to.into()))
}

/// Scrambled bundle of the given comma-separated type, as
/// `{"bundle": text}` or `{"error": message}`.
#[wasm_bindgen]
pub fn random_bundle(degrees: &str, gauge_degree: u32, seed: u32) -> String {
    to_text(random_bundle_text(degrees, gauge_degree, seed.into()).map(|b| json!({ "bundle": b })))
}
