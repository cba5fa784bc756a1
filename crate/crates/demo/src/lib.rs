//! Browser bindings. Every export takes JSON text and returns JSON text, so
//! the page needs no generated types. Failures come back as
//! `{"ok": false, "error": "..."}` rather than exceptions.

use kpotent::colfinite::{decompose14, FamilySpec};
use kpotent::decompose::decompose_theorem1;
use kpotent::io::{DecompositionJson, MatrixJson, TruncationJson};
use kpotent::scalars::Cyclotomic;
use kpotent::Result;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest truncation the page may request; keeps the tab responsive.
pub const MAX_TRUNCATION: usize = 48;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({"ok": false, "error": e.to_string()}).to_string(),
    }
}

/// Whether `A^(k+1) = A` for a matrix in the CLI's JSON format.
#[wasm_bindgen(js_name = checkPotent)]
pub fn check_potent(matrix: &str, k: u32) -> String {
    respond((|| {
        let mj = MatrixJson::parse(matrix)?;
        let a = mj.to_matrix(&Cyclotomic::new(mj.k)?)?;
        let potent = a.is_kpotent(u64::from(k) + 1)?;
        Ok(json!({"ok": true, "exponent": k + 1, "potent": potent, "rank": a.rank()}))
    })())
}

/// Minimal sum of `(k+1)`-potent matrices, `k` taken from the input.
#[wasm_bindgen]
pub fn decompose(matrix: &str) -> String {
    respond((|| {
        let mj = MatrixJson::parse(matrix)?;
        let a = mj.to_matrix(&Cyclotomic::new(mj.k)?)?;
        let d = decompose_theorem1(&a, mj.k, None)?;
        let j = DecompositionJson::from_decomposition(&d);
        let mut v = serde_json::to_value(&j).expect("decomposition JSON");
        v["ok"] = json!(j.verification.as_ref().is_some_and(|c| c.ok));
        Ok(v)
    })())
}

/// Leading `n x n` blocks of the 14-summand decomposition of a family.
#[wasm_bindgen(js_name = truncate14)]
pub fn truncate14(family: &str, n: usize) -> String {
    respond((|| {
        if n == 0 || n > MAX_TRUNCATION {
            return Err(kpotent::Error::InvalidParameter(format!("truncation must be in 1..={MAX_TRUNCATION}")));
        }
        let spec = FamilySpec::parse(family)?;
        let d = decompose14(&spec.build_exact()?, spec.k)?;
        let report = d.verify_truncated(n);
        Ok(serde_json::to_value(TruncationJson::build(&d, &report)).expect("truncation JSON"))
    })())
}
