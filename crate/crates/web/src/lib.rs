//! Browser bindings: analyze a document, load a catalog entry, check a theorem.
//! Each export is a thin wrapper over a plain function so the logic is
//! testable without a JavaScript host.

use wasm_bindgen::prelude::*;

use osculant::cli::document::{parse_parametrization, InputDocument};
use osculant::cli::report::run_report;
use osculant::{catalog_get, catalog_names, defects, Mode, Options, Theorem};

fn options(mode: &str, seed: u64) -> Result<Options, String> {
    let mode = match mode {
        "sampled" => Mode::Sampled,
        "symbolic" => Mode::Symbolic,
        other => return Err(format!("unknown mode `{other}`")),
    };
    Ok(Options::default().with_mode(mode).with_seed(seed))
}

pub fn analyze_document(doc: &str, max_order: u32, mode: &str, seed: u64) -> Result<String, String> {
    let p = parse_parametrization(doc).map_err(|e| e.to_string())?;
    let report = run_report(&p, max_order, &options(mode, seed)?).map_err(|e| e.to_string())?;
    Ok(report.to_text())
}

pub fn catalog_entry_document(name: &str) -> Result<String, String> {
    let p = catalog_get(name).map_err(|e| e.to_string())?.parametrization;
    InputDocument::from_parametrization(&p).map(|d| d.to_json()).ok_or_else(|| "entry has denominators".to_string())
}

pub fn check_document(doc: &str, theorem: &str, order: u32, seed: u64) -> Result<String, String> {
    let p = parse_parametrization(doc).map_err(|e| e.to_string())?;
    let theorem: Theorem = theorem.parse()?;
    let v = defects::check(&p, theorem, order, &options("sampled", seed)?).map_err(|e| e.to_string())?;
    let mut out = v.to_string();
    for (key, value) in &v.inputs {
        out.push_str(&format!("\n  {key} = {value}"));
    }
    for note in &v.notes {
        out.push_str(&format!("\n  note: {note}"));
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn analyze(doc: &str, max_order: u32, mode: &str, seed: u32) -> Result<String, JsValue> {
    analyze_document(doc, max_order, mode, u64::from(seed)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn catalog_document(name: &str) -> Result<String, JsValue> {
    catalog_entry_document(name).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn check_theorem(doc: &str, theorem: &str, order: u32, seed: u32) -> Result<String, JsValue> {
    check_document(doc, theorem, order, u64::from(seed)).map_err(|e| JsValue::from_str(&e))
}

/// Catalog names, newline separated.
#[wasm_bindgen]
pub fn catalog() -> String {
    catalog_names().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_documents_round_trip_through_analysis() {
        let doc = catalog_entry_document("cone_rnc4").unwrap();
        let text = analyze_document(&doc, 2, "symbolic", 0).unwrap();
        assert!(text.starts_with("cone_rnc4 (k = 2, N = 4)"));
        assert!(text.contains("theorem A at t = 2: pass"));
    }

    #[test]
    fn theorem_check() {
        let doc = catalog_entry_document("cone_veronese").unwrap();
        let out = check_document(&doc, "B", 1, 0).unwrap();
        assert!(out.starts_with("theorem B at t = 1: pass"), "{out}");
        assert!(out.contains("jacobian_rank = 2"));
    }

    #[test]
    fn errors_are_messages() {
        assert!(catalog_entry_document("nope").unwrap_err().contains("unknown variety"));
        assert!(analyze_document("{}", 2, "sampled", 0).is_err());
        let doc = catalog_entry_document("rnc(3)").unwrap();
        assert!(analyze_document(&doc, 2, "fast", 0).unwrap_err().contains("unknown mode"));
        assert!(check_document(&doc, "Q", 2, 0).is_err());
    }
}
