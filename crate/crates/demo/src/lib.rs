//! Browser bindings: every export takes DSL text and returns a JSON string,
//! either the result or `{"error": message}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use weil_core::syntax::{format_morphism, parse_morphism, parse_object};
use weil_core::{decompose, Graph, Morphism, Rig, WeilObject};

fn rig(name: &str) -> Result<Rig, String> {
    name.parse().map_err(|e| format!("{e}"))
}

fn graph_json(g: &Graph) -> Value {
    json!({
        "vertices": g.n(),
        "edges": g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
    })
}

fn morphism_json(name: &str, f: &Morphism) -> Value {
    let circles: Vec<Value> = f
        .circles()
        .iter()
        .map(|c| json!({ "generator": c.gen, "support": c.support.iter().collect::<Vec<_>>(), "coeff": c.coeff }))
        .collect();
    json!({
        "text": format_morphism(name, f),
        "source": f.source.cotree().to_string(),
        "target": f.target.cotree().to_string(),
        "sourceGenerators": f.source.n(),
        "targetGraph": graph_json(f.target.graph()),
        "circles": circles,
    })
}

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

pub fn object_info(text: &str) -> Result<Value, String> {
    let t = parse_object(text).map_err(|e| e.to_string())?;
    let a = WeilObject::new(t);
    Ok(json!({
        "cotree": a.cotree().to_string(),
        "algebra": a.presentation(),
        "graph": graph_json(a.graph()),
    }))
}

pub fn morphism_info(text: &str, rig_name: &str) -> Result<Value, String> {
    let (name, f) = parse_morphism(text, rig(rig_name)?).map_err(|e| e.to_string())?;
    let e = decompose(&f);
    let back = e.evaluate(f.rig).map_err(|e| e.to_string())?;
    let mut v = morphism_json(&name, &f);
    v["decomposition"] = json!(e.to_string());
    v["size"] = json!(e.size());
    v["roundTrip"] = json!(back == f);
    Ok(v)
}

pub fn composite_info(g: &str, f: &str, rig_name: &str) -> Result<Value, String> {
    let rig = rig(rig_name)?;
    let (gn, g) = parse_morphism(g, rig).map_err(|e| e.to_string())?;
    let (fname, f) = parse_morphism(f, rig).map_err(|e| e.to_string())?;
    let h = g.compose(&f).map_err(|e| e.to_string())?;
    Ok(morphism_json(&format!("{gn}_{fname}"), &h))
}

#[wasm_bindgen]
pub fn render_object(text: &str) -> String {
    respond(object_info(text))
}

#[wasm_bindgen]
pub fn analyze_morphism(text: &str, rig: &str) -> String {
    respond(morphism_info(text, rig))
}

#[wasm_bindgen]
pub fn compose(g: &str, f: &str, rig: &str) -> String {
    respond(composite_info(g, f, rig))
}
