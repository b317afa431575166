//! Field-wise comparison of two reports: rational strings exactly, floats
//! within a relative tolerance.

use serde_json::Value;

use sasaki_core::algebra::parse_rat;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

fn close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn describe(v: &Value) -> String {
    match v {
        Value::String(s) => format!("{s:?}"),
        other => other.to_string(),
    }
}

fn walk(path: &str, a: &Value, b: &Value, tol: f64, out: &mut Vec<String>) {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for (k, va) in x {
                let p = format!("{path}.{k}");
                match y.get(k) {
                    Some(vb) => walk(&p, va, vb, tol, out),
                    None => out.push(format!("{p}: missing from the reference")),
                }
            }
            for k in y.keys().filter(|k| !x.contains_key(*k)) {
                out.push(format!("{path}.{k}: missing from the report"));
            }
        }
        (Value::Array(x), Value::Array(y)) => {
            if x.len() != y.len() {
                out.push(format!("{path}: length {} vs {}", x.len(), y.len()));
                return;
            }
            for (i, (va, vb)) in x.iter().zip(y).enumerate() {
                walk(&format!("{path}[{i}]"), va, vb, tol, out);
            }
        }
        (Value::Number(x), Value::Number(y)) => {
            let (fx, fy) = (x.as_f64().unwrap_or(f64::NAN), y.as_f64().unwrap_or(f64::NAN));
            if !close(fx, fy, tol) {
                out.push(format!("{path}: {x} vs {y}"));
            }
        }
        (Value::String(x), Value::String(y)) => {
            let same = match (parse_rat(x), parse_rat(y)) {
                (Ok(rx), Ok(ry)) => rx == ry,
                _ => x == y,
            };
            if !same {
                out.push(format!("{path}: {x:?} vs {y:?}"));
            }
        }
        _ if a == b => {}
        _ => out.push(format!("{path}: {} vs {}", describe(a), describe(b))),
    }
}

/// One line per differing field; empty when the reports agree.
pub fn compare_reports(report: &Value, reference: &Value, tol: f64) -> Vec<String> {
    let mut out = Vec::new();
    walk("$", report, reference, tol, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Value {
        json!({ "tasks": { "affine": [{ "c": "1/3", "A2": { "exact": "-2/7", "approx": -0.285714285714 } }] } })
    }

    #[test]
    fn self_comparison_is_empty() {
        assert!(compare_reports(&sample(), &sample(), DEFAULT_TOLERANCE).is_empty());
    }

    #[test]
    fn perturbed_rational_names_the_field() {
        let mut other = sample();
        other["tasks"]["affine"][0]["A2"]["exact"] = json!("-3/7");
        let d = compare_reports(&other, &sample(), DEFAULT_TOLERANCE);
        assert_eq!(d.len(), 1);
        assert!(d[0].starts_with("$.tasks.affine[0].A2.exact"), "{}", d[0]);
    }

    #[test]
    fn floats_within_tolerance_agree() {
        let mut other = sample();
        other["tasks"]["affine"][0]["A2"]["approx"] = json!(-0.2857142857145);
        assert!(compare_reports(&other, &sample(), DEFAULT_TOLERANCE).is_empty());
        other["tasks"]["affine"][0]["A2"]["approx"] = json!(-0.2858);
        assert_eq!(compare_reports(&other, &sample(), DEFAULT_TOLERANCE).len(), 1);
    }
}
