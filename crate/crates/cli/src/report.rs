use rayon::prelude::*;
use serde_json::{json, Map, Value};

use sasaki_core::algebra::scalar::rat_to_f64;
use sasaki_core::algebra::{format_rat, ratio, BigFloat, Interval, Real};
use sasaki_core::cone::{
    classify_cone, discriminant_scan, ehf, find_csc_rays, hs_derivative_formula, is_extremal, ConeOptions, ConeReport,
    CscRoot, EhfKind, ObstructionPoly, SetupFamily,
};
use sasaki_core::extremal::{
    build_extremal_poly, csc_constant, futaki_obstruction, integer_weight, scal_identity_check, solve_affine,
    system_determinant, verify_ode,
};
use sasaki_core::integrals::{alpha, beta, LogScalar};
use sasaki_core::{BiPoly, Rat, RatPoly};

use crate::error::CliResult;
use crate::scenario::{Scenario, Task};

/// Significant digits kept for floats in reports.
const FLOAT_DIGITS: usize = 12;

pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{:.*e}", FLOAT_DIGITS - 1, x).parse().unwrap_or(x);
    json!(rounded)
}

pub fn exact(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

/// Exact value with its float alongside.
pub fn number(r: &Rat) -> Value {
    json!({ "exact": format_rat(r), "approx": float(rat_to_f64(r)) })
}

pub fn poly(p: &RatPoly) -> Value {
    Value::Array(p.coeffs().iter().map(exact).collect())
}

pub fn bipoly(p: &BiPoly) -> Value {
    Value::Array(p.coeffs().iter().map(poly).collect())
}

pub fn interval(iv: &Interval) -> Value {
    json!({
        "lo": exact(&iv.lo),
        "hi": exact(&iv.hi),
        "lo_open": iv.lo_open,
        "hi_open": iv.hi_open,
        "approx": float(iv.mid_f64()),
    })
}

pub fn log_scalar(v: &LogScalar) -> Value {
    json!({
        "rational": exact(&v.rat_part),
        "log_coeff": exact(&v.log_coeff),
        "approx": float(v.to_f64()),
    })
}

fn kind_name<T: serde::Serialize>(kind: &T) -> Value {
    serde_json::to_value(kind).unwrap_or(Value::Null)
}

fn bigfloat(x: &BigFloat) -> Value {
    json!({ "digits": x.to_string(), "approx": float(x.to_f64()) })
}

fn csc_root(r: &CscRoot) -> Value {
    json!({
        "enclosure": interval(&r.enclosure),
        "is_extremal": r.is_extremal,
        "certified": r.certified,
        "value": bigfloat(&r.approx),
    })
}

fn obstruction(ob: &ObstructionPoly) -> Value {
    json!({
        "kind": kind_name(&ob.kind),
        "p": exact(&ob.p),
        "numerator": poly(&ob.numerator),
        "minus_exponent": ob.minus_exponent,
        "plus_exponent": ob.plus_exponent,
        "scale": exact(&ob.scale),
        "verified_degree": ob.verified_degree,
    })
}

pub fn cone_report(r: &ConeReport) -> Value {
    let set: Vec<Value> = r
        .extremal_set
        .iter()
        .map(|iv| json!({ "lower": interval(&iv.lower), "upper": interval(&iv.upper), "witness": exact(&iv.witness) }))
        .collect();
    json!({
        "p": exact(&r.p),
        "kind": kind_name(&r.kind),
        "extremal_set": set,
        "boundary_candidates": r.boundary_candidates.iter().map(interval).collect::<Vec<_>>(),
        "csc_roots": r.csc_roots.iter().map(csc_root).collect::<Vec<_>>(),
        "obstruction": obstruction(&r.obstruction),
        "reduced_numerator": bipoly(&r.reduced_numerator),
        "ehf_samples": r.ehf_samples.iter().map(|(c, h)| json!({ "c": exact(c), "value": number(h) })).collect::<Vec<_>>(),
        "hypotheses": { "nonneg_base": r.hypotheses.nonneg_base, "p_ok": r.hypotheses.p_ok },
        "gap_witnesses": r.witnesses.iter().map(|(c, v)| json!({ "c": exact(c), "extremal": v })).collect::<Vec<_>>(),
    })
}

fn validate(sc: &Scenario) -> Value {
    let s = &sc.setup;
    let h = s.theorem_hypotheses(&sc.p);
    json!({
        "m": s.m(),
        "d0": s.d0(),
        "dinf": s.dinf(),
        "m0": exact(&s.m0()),
        "minf": exact(&s.minf()),
        "moment_poly": poly(s.moment_poly()),
        "sum_term_poly": poly(s.sum_term_poly()),
        "curvature_poly": poly(&s.curvature_poly()),
        "default_weight": exact(&s.default_weight()),
        "hypotheses": { "nonneg_base": h.nonneg_base, "p_ok": h.p_ok },
    })
}

fn integrals(sc: &Scenario) -> CliResult<Value> {
    let s = &sc.setup;
    let p = integer_weight(&sc.p)?;
    let m = s.m() as i64;
    let mut ks = vec![-(1 + p), -p, 1 - p, 2 - p, -(m + 1), -m];
    ks.sort_unstable();
    ks.dedup();
    let mut out = Vec::new();
    for c in &sc.samples {
        let mut entries = Vec::new();
        for &k in &ks {
            for r in 0..=2u32 {
                entries.push(json!({ "which": "alpha", "r": r, "k": k, "value": log_scalar(&alpha(s, c, r, k)?) }));
                entries.push(json!({ "which": "beta", "r": r, "k": k, "value": log_scalar(&beta(s, c, r, k)?) }));
            }
        }
        out.push(json!({ "c": exact(c), "entries": entries }));
    }
    Ok(Value::Array(out))
}

fn affine(sc: &Scenario) -> CliResult<Value> {
    let s = &sc.setup;
    let p = integer_weight(&sc.p)?;
    let mut out = Vec::new();
    for c in &sc.samples {
        let a = solve_affine(s, c, &sc.p)?;
        scal_identity_check(s, &a)?;
        out.push(json!({
            "c": exact(c),
            "A1": number(&a.a1),
            "A2": number(&a.a2),
            "determinant": number(&system_determinant(s, c, p)?),
        }));
    }
    Ok(Value::Array(out))
}

fn futaki(sc: &Scenario) -> CliResult<Value> {
    let s = &sc.setup;
    let sasaki_weight = sc.p == s.default_weight();
    let mut out = Vec::new();
    for c in &sc.samples {
        let v = futaki_obstruction(s, c, &sc.p, sc.obstruction)?;
        let mut entry = json!({
            "c": exact(c),
            "kind": kind_name(&sc.obstruction),
            "value": log_scalar(&v.value),
            "normalized": v.normalized.as_ref().map(number),
        });
        if sasaki_weight {
            entry["csc_constant"] = number(&csc_constant(s, c)?);
        }
        out.push(entry);
    }
    Ok(Value::Array(out))
}

fn extremal_poly(sc: &Scenario) -> CliResult<Value> {
    let s = &sc.setup;
    let mut out = Vec::new();
    for c in &sc.samples {
        let ep = build_extremal_poly(s, c, &sc.p)?;
        verify_ode(s, &ep)?;
        out.push(json!({
            "c": exact(c),
            "F": poly(&ep.f),
            "A1": exact(&ep.affine.a1),
            "A2": exact(&ep.affine.a2),
            "extremal": is_extremal(s, c, &sc.p)?,
        }));
    }
    Ok(Value::Array(out))
}

fn ehf_task(sc: &Scenario) -> CliResult<Value> {
    let s = &sc.setup;
    let grid: Vec<Rat> = (-7..=7).map(|j| ratio(j, 8)).collect();
    let values = grid
        .iter()
        .map(|c| Ok(json!({ "c": exact(c), "value": number(&ehf(s, c, sc.ehf, &sc.p)?) })))
        .collect::<CliResult<Vec<_>>>()?;
    let derivative = if sc.ehf == EhfKind::Sasaki {
        sc.samples
            .iter()
            .map(|c| Ok(json!({ "c": exact(c), "value": number(&hs_derivative_formula(s, c)?) })))
            .collect::<CliResult<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(json!({ "kind": kind_name(&sc.ehf), "values": values, "derivative": derivative }))
}

fn csc_find(sc: &Scenario, opts: &ConeOptions) -> CliResult<Value> {
    let (ob, roots) = find_csc_rays(&sc.setup, &sc.p, sc.obstruction, opts)?;
    Ok(json!({ "obstruction": obstruction(&ob), "roots": roots.iter().map(csc_root).collect::<Vec<_>>() }))
}

fn scan(sc: &Scenario, opts: &ConeOptions) -> CliResult<Value> {
    let (factor, lo, hi) = sc.family.clone().expect("checked when parsing");
    let family = SetupFamily { template: sc.raw_setup.clone(), factor };
    let d = discriminant_scan(&family, &sc.p, sc.obstruction, (lo, hi), opts)?;
    let regions: Vec<Value> = d
        .regions
        .iter()
        .map(|r| {
            json!({
                "lower": interval(&r.lower),
                "upper": interval(&r.upper),
                "witness": exact(&r.witness),
                "discriminant_sign": r.discriminant_sign,
                "roots_in_unit": r.roots_in_unit,
            })
        })
        .collect();
    Ok(json!({
        "factor": factor,
        "kind": kind_name(&d.kind),
        "range": [exact(&d.range.0), exact(&d.range.1)],
        "numerator": bipoly(&d.numerator),
        "discriminant": poly(&d.discriminant),
        "discriminant_roots": d.discriminant_roots.iter().map(interval).collect::<Vec<_>>(),
        "critical": d.critical.iter().map(interval).collect::<Vec<_>>(),
        "regions": regions,
    }))
}

pub enum TaskOutput {
    Json(Value),
    Cone(Box<ConeReport>),
}

fn run_task(sc: &Scenario, task: Task, opts: &ConeOptions) -> CliResult<TaskOutput> {
    let v = match task {
        Task::Validate => validate(sc),
        Task::Integrals => integrals(sc)?,
        Task::Affine => affine(sc)?,
        Task::Futaki => futaki(sc)?,
        Task::ExtremalPoly => extremal_poly(sc)?,
        Task::Cone => return Ok(TaskOutput::Cone(Box::new(classify_cone(&sc.setup, &sc.p, sc.obstruction, opts)?))),
        Task::Ehf => ehf_task(sc)?,
        Task::CscFind => csc_find(sc, opts)?,
        Task::DiscriminantScan => scan(sc, opts)?,
    };
    Ok(TaskOutput::Json(v))
}

pub struct RunOutput {
    pub report: Value,
    pub cone: Option<ConeReport>,
}

/// Runs every task (in parallel) and assembles the report in task order.
pub fn run_scenario(sc: &Scenario, opts: &ConeOptions) -> CliResult<RunOutput> {
    let outputs: Vec<(Task, TaskOutput)> = sc
        .tasks
        .par_iter()
        .map(|&t| run_task(sc, t, opts).map(|o| (t, o)))
        .collect::<CliResult<_>>()?;
    let mut tasks = Map::new();
    let mut cone = None;
    for (t, out) in outputs {
        let v = match out {
            TaskOutput::Json(v) => v,
            TaskOutput::Cone(r) => {
                let v = cone_report(&r);
                cone = Some(*r);
                v
            }
        };
        tasks.insert(t.key().to_string(), v);
    }
    let report = json!({
        "scenario": sc.name,
        "setup": serde_json::to_value(&sc.raw_setup).unwrap_or(Value::Null),
        "m": sc.setup.m(),
        "p": exact(&sc.p),
        "obstruction": kind_name(&sc.obstruction),
        "options": {
            "precision": opts.precision,
            "refine_width": exact(&opts.refine_width),
            "degree_ceiling": opts.degree_ceiling,
        },
        "tasks": tasks,
    });
    Ok(RunOutput { report, cone })
}
