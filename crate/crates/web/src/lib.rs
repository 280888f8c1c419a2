//! Browser bindings for the demo page in `www/`.

use wasm_bindgen::prelude::*;

use pinwheel::geometry::{iterate, to_svg, SvgOptions};
use pinwheel::ktheory::{KGroup, LimitElement};
use pinwheel::numerics::Rational;
use pinwheel::tower::{check_cover, simplicity_stage};

/// Largest level the page will draw.
pub const MAX_DEMO_LEVEL: usize = 6;

fn js(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// SVG markup for ω^N(p_root).
#[wasm_bindgen]
pub fn patch_svg(level: usize, root: u8, labels: bool) -> Result<String, JsValue> {
    if level > MAX_DEMO_LEVEL {
        return Err(js(format!("level {level} is above the demo limit of {MAX_DEMO_LEVEL}")));
    }
    if root > 1 {
        return Err(js("root must be 0 or 1"));
    }
    let p = iterate(root, level).map_err(js)?;
    Ok(to_svg(&p, &SvgOptions { labels: labels && level <= 2, ..SvgOptions::default() }))
}

/// Certificate JSON for an arc of `num/den` of the circle around the generator `e_0(p_0)`.
#[wasm_bindgen]
pub fn simplicity_json(num: i32, den: i32) -> Result<String, JsValue> {
    if den <= 0 {
        return Err(js("denominator must be positive"));
    }
    let g = pinwheel::algebra::Generator::parse(0, 0, "", "").map_err(js)?;
    let cert = simplicity_stage(&Rational::ZERO, &Rational::new(num as i64, den as i64), &g).map_err(js)?;
    if !check_cover(&cert) {
        return Err(js("certificate failed its cover check"));
    }
    Ok(cert.to_json())
}

/// `q=… r=…` for an element written `N:(v1,v2)`, with its least-stage form.
#[wasm_bindgen]
pub fn k_invariants(element: &str) -> Result<String, JsValue> {
    let x: LimitElement = element.parse().map_err(js)?;
    let g = KGroup::default();
    Ok(format!("{}; canonical {}", g.invariants(&x), g.canonical(&x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_work_natively() {
        assert_eq!(patch_svg(2, 0, true).unwrap().matches("<polygon").count(), 25);
        assert!(simplicity_json(1, 1).unwrap().contains("\"M\": 2"));
        assert_eq!(k_invariants("1:(2,3)").unwrap(), "q=1 r=1; canonical 0:(1,0)");
    }
}
