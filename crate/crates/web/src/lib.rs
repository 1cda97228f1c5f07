//! Browser bindings: each call takes file contents as typed in the page and
//! returns the same text or JSON report the command line prints.

use finloc::commands::{self, MapSpec};
use finloc::report::Report;
use wasm_bindgen::prelude::*;

fn render(r: finloc::Result<Report>, json: bool) -> Result<String, JsError> {
    r.map(|r| if json { r.to_json() } else { r.to_text() }).map_err(|e| JsError::new(&e.to_string()))
}

/// W(A,R) membership of a square matrix under `map` into `target`.
#[wasm_bindgen]
pub fn wcheck(matrix: &str, map: &str, target: &str, json: bool) -> Result<String, JsError> {
    render(commands::wcheck(matrix, &MapSpec::new(map, target)), json)
}

/// Alexander polynomial and localized Alexander module of a presentation.
#[wasm_bindgen]
pub fn knot(presentation: &str, json: bool) -> Result<String, JsError> {
    render(commands::knot(presentation), json)
}

/// Homology over R, optionally with the localized homology.
#[wasm_bindgen(js_name = chainHomology)]
pub fn chain_homology(complex: &str, map: &str, target: &str, localized: bool, json: bool) -> Result<String, JsError> {
    render(commands::chain_homology(complex, &MapSpec::new(map, target), localized), json)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_match_the_library() {
        let text = wcheck("1 1\n2t - 1\n", "t=1", "Z", false).unwrap();
        assert!(text.starts_with("in W(A,R): true; det image = 1\n"));
        assert!(knot("gens x, y; rels x y x Y X Y", true).unwrap().contains("\"delta\": \"t^2 - t + 1\""));
        let h = chain_homology("ranks 1 1\nd1\n2t - 1\n", "t=1", "Q", true, false).unwrap();
        assert!(h.starts_with("H0 = 0; H1 = 0\n"));
    }
}
