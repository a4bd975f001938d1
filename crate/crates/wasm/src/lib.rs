//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes plain numbers or strings and returns a JSON string, so
//! the page needs no generated TypeScript types.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use wzd_core::graphcore::{build_structural_wzd, divisor_classes, export_graph};
use wzd_core::spectra::wzd_spectrum_closed_form;
use wzd_core::{ExportFormat, JoinInput, SpectrumMultiset};

/// Largest modulus the page will lay out as a drawing.
pub const MAX_DRAW_MODULUS: u32 = 400;

fn spectrum_text(n: u64) -> Result<String, String> {
    let s = wzd_spectrum_closed_form(n).map_err(|e| e.to_string())?;
    Ok(SpectrumMultiset::Exact(s).to_json(Some(n)))
}

pub fn spectrum_of(n: u32) -> Result<String, String> {
    if n < 2 {
        return Err(format!("n must be at least 2, got {n}"));
    }
    spectrum_text(n.into())
}

pub fn graph_of(n: u32) -> Result<String, String> {
    if !(2..=MAX_DRAW_MODULUS).contains(&n) {
        return Err(format!(
            "n must lie in 2..={MAX_DRAW_MODULUS} for drawing, got {n}"
        ));
    }
    let n = u64::from(n);
    let g = build_structural_wzd(n).map_err(|e| e.to_string())?;
    let graph: Value =
        serde_json::from_str(&export_graph(&g, ExportFormat::Json)).map_err(|e| e.to_string())?;
    let classes = divisor_classes(n).map_err(|e| e.to_string())?;
    Ok(json!({
        "graph": graph,
        "classes": classes.classes,
        "spectrum": serde_json::from_str::<Value>(&spectrum_text(n)?).map_err(|e| e.to_string())?,
    })
    .to_string())
}

pub fn join_of(input: &str) -> Result<String, String> {
    let input = JoinInput::parse(input).map_err(|e| e.to_string())?;
    let s = input.spectrum().map_err(|e| e.to_string())?;
    Ok(s.to_json(input.n))
}

pub fn upsilon_of(n: u32) -> Result<String, String> {
    JoinInput::upsilon(n.into())
        .map(|j| j.to_json())
        .map_err(|e| e.to_string())
}

/// Closed-form Laplacian spectrum of WΓ(Z_n) as spectrum JSON.
#[wasm_bindgen]
pub fn spectrum(n: u32) -> Result<String, JsError> {
    spectrum_of(n).map_err(|e| JsError::new(&e))
}

/// Graph, divisor classes and spectrum of WΓ(Z_n) in one document.
#[wasm_bindgen]
pub fn graph(n: u32) -> Result<String, JsError> {
    graph_of(n).map_err(|e| JsError::new(&e))
}

/// Spectrum of a generalized join given as join-input JSON.
#[wasm_bindgen]
pub fn join(input: &str) -> Result<String, JsError> {
    join_of(input).map_err(|e| JsError::new(&e))
}

/// Join input describing WΓ(Z_n), used to prefill the editor.
#[wasm_bindgen]
pub fn upsilon_template(n: u32) -> Result<String, JsError> {
    upsilon_of(n).map_err(|e| JsError::new(&e))
}
