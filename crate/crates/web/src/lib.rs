//! Browser bindings for three decisions: the alcove walk to a canonical
//! parameter, the generalized Weyl algebra root criterion and the Cherednik
//! certificate. Every function returns a JSON string.

use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use morita_core::cherednik::cherednik_decide;
use morita_core::exact::{format_rational, parse_rational};
use morita_core::gwa::{apply_group_element, gwa_decide, GwaRoots};
use morita_core::weyl::{apply_word, canonical, WeylWord};
use morita_core::{GaussianRational, ParamVector, QuiverData};

fn point(z: &GaussianRational) -> Value {
    json!([
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN)
    ])
}

fn fail(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// The canonical form of `lambda` together with every intermediate parameter
/// of the word reaching it, in the order the letters act.
#[wasm_bindgen(js_name = canonicalPath)]
pub fn canonical_path(quiver: &str, lambda: &str) -> Result<String, String> {
    let q: QuiverData = quiver.parse().map_err(fail)?;
    let l = ParamVector::parse(lambda).map_err(fail)?;
    if l.len() != q.num_vertices() {
        return Err(format!("{quiver} needs {} entries", q.num_vertices()));
    }
    let (c, w) = canonical(&q, &l).map_err(fail)?;
    let letters = w.letters();
    let mut steps = vec![
        json!({ "letter": null, "lambda": l.to_string(), "point": l.0.iter().map(point).collect::<Vec<_>>() }),
    ];
    for k in (0..letters.len()).rev() {
        let prefix = WeylWord::new(&q, letters[k..].to_vec()).map_err(fail)?;
        let cur = apply_word(&q, &prefix, &l).map_err(fail)?;
        steps.push(json!({
            "letter": letters[k].to_string(),
            "lambda": cur.to_string(),
            "point": cur.0.iter().map(point).collect::<Vec<_>>(),
        }));
    }
    Ok(json!({
        "canonical": c.to_string(),
        "word": w.to_string(),
        "level": q.level(&l).to_string(),
        "steps": steps,
    })
    .to_string())
}

/// Decides the root criterion and returns both root lists as plane points.
#[wasm_bindgen(js_name = gwaDecide)]
pub fn gwa(t: &str, t_prime: &str) -> Result<String, String> {
    let a = GwaRoots::parse(t).map_err(fail)?;
    let b = GwaRoots::parse(t_prime).map_err(fail)?;
    let v = gwa_decide(&a.0, &b.0);
    let image = match &v.witness {
        Some(g) => {
            let moved = apply_group_element(g, &a).map_err(fail)?;
            if moved != b {
                return Err(format!("witness {g} failed to verify"));
            }
            Some(moved.0.iter().map(point).collect::<Vec<_>>())
        }
        None => None,
    };
    Ok(json!({
        "equivalent": v.equivalent,
        "witness": v.witness.map(|g| g.to_string()),
        "reason": v.reason,
        "t": a.0.iter().map(point).collect::<Vec<_>>(),
        "t_prime": b.0.iter().map(point).collect::<Vec<_>>(),
        "image": image,
    })
    .to_string())
}

/// The Cherednik decision with its certificate, if any.
#[wasm_bindgen(js_name = cherednik)]
pub fn cherednik(n: u32, c: &str, c_prime: &str) -> Result<String, String> {
    let a = parse_rational(c).map_err(fail)?;
    let b = parse_rational(c_prime).map_err(fail)?;
    let v = cherednik_decide(n, &a, &b).map_err(fail)?;
    let cert = match &v.certificate {
        Some(cert) => {
            if !cert.verify(n).map_err(fail)? {
                return Err("certificate failed to verify".into());
            }
            json!({
                "prime": cert.p,
                "reduced": [format_rational(&cert.c), format_rational(&cert.c_prime)],
                "images": [cert.x, cert.x_prime],
                "aspherical_images": cert.aspherical_images,
                "component": cert.component,
                "component_text": cert.component_string(),
                "bound": (cert.p - 1) as f64 / n as f64,
            })
        }
        None => Value::Null,
    };
    Ok(json!({
        "status": v.status.to_string(),
        "reason": v.reason,
        "certificate": cert,
    })
    .to_string())
}
