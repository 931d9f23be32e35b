//! One function per subcommand, each producing the inputs echo and either a
//! result payload with its certification or a typed error.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use tmahler::golden::FibSequence;
use tmahler::infimum::{vector_classes, FactorizationVector};
use tmahler::measures::{certified_min, FunctionSource};
use tmahler::real::DEFAULT_PRECISION_BITS;
use tmahler::{
    best_approximations, cf_expand, characteristic_transformation, classify,
    empirical_minimal_set, enumerate_vectors, eval_measure_function, find_golden_pair,
    golden_case, hull_vertices, m_t, mt_profile, oracle_m_t, precision_cap, theorem_main_audit,
    Breakpoint, CertifiedReal, Classification, Error, ExponentPair, GoldenCaseReport, LogRatio,
    Measure, MeasureFunction, MtMethod, MtProfile, PrimePowerRational, Segment, TParam,
};

use crate::output::{Cert, DISPLAY_DIGITS};
use crate::parse::parse_alpha;

/// What an invocation wants printed.
pub enum Run {
    Doc {
        command: &'static str,
        inputs: Value,
        outcome: Result<(Value, Cert), Error>,
    },
    /// Raw text (the curve CSV); flags still drive the exit code.
    Raw { text: String, flags: Vec<String> },
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum CurveFormat {
    Csv,
    Json,
}

pub fn cf(p: u64, q: u64, terms: usize) -> Run {
    let inputs = json!({ "p": p, "q": q, "terms": terms });
    let outcome = (|| {
        let xi = LogRatio::new(p, q)?;
        let mut cert = Cert::new();
        let expansion = match cf_expand(&xi, terms) {
            Ok(e) => e,
            Err(Error::CfUncertain { quotients, depth }) => {
                cert.flag(format!(
                    "expansion uncertain beyond depth {depth}; emitting the certified prefix"
                ));
                let certified_count = quotients.len();
                tmahler::CFExpansion { quotients, certified_count }
            }
            Err(e) => return Err(e),
        };
        let quotients: Vec<Value> =
            expansion.quotients.iter().map(biguint_json).collect();
        let result = json!({
            "xi": xi.to_string(),
            "quotients": quotients,
            "certified_count": expansion.certified_count,
        });
        Ok((result, cert))
    })();
    Run::Doc { command: "cf", inputs, outcome }
}

pub fn approx(p: u64, q: u64, max_a: u64, max_b: u64) -> Run {
    let inputs = json!({ "p": p, "q": q, "max_a": max_a, "max_b": max_b });
    let outcome = (|| {
        let xi = LogRatio::new(p, q)?;
        let pairs = best_approximations(&xi, max_a, max_b)?;
        let listed: Vec<Value> = pairs
            .iter()
            .map(|pair| {
                json!({
                    "a": pair.a,
                    "b": pair.b,
                    "classification": classification_json(&classify(*pair, &xi)),
                })
            })
            .collect();
        let result = json!({
            "xi": xi.to_string(),
            "count": pairs.len(),
            "pairs": listed,
        });
        Ok((result, Cert::new()))
    })();
    Run::Doc { command: "approx", inputs, outcome }
}

pub fn chartrans(alpha_raw: &str) -> Run {
    let mut inputs = json!({ "alpha": alpha_raw });
    let outcome = (|| {
        let alpha = parse_alpha(alpha_raw)?;
        inputs["parsed_alpha"] = alpha_json(&alpha);
        let transform = characteristic_transformation(&alpha)?;
        let result = json!({
            "alpha": alpha_json(transform.alpha()),
            "column_count": transform.column_count(),
            "columns": transform.columns().iter().map(pair_json).collect::<Vec<_>>(),
            "measures": transform.measures().iter().map(measure_json).collect::<Vec<_>>(),
        });
        Ok((result, Cert::new()))
    })();
    Run::Doc { command: "chartrans", inputs, outcome }
}

pub fn vectors(alpha_raw: &str) -> Run {
    let mut inputs = json!({ "alpha": alpha_raw });
    let outcome = (|| {
        let alpha = parse_alpha(alpha_raw)?;
        inputs["parsed_alpha"] = alpha_json(&alpha);
        let transform = characteristic_transformation(&alpha)?;
        let mut vectors = enumerate_vectors(&transform);
        vectors.sort();
        let listed = vectors
            .iter()
            .map(|v| {
                let terms: Vec<(u64, Measure)> = v
                    .entries()
                    .iter()
                    .zip(transform.measures())
                    .filter(|(x, _)| **x > 0)
                    .map(|(x, m)| (*x, m.clone()))
                    .collect();
                let f = MeasureFunction::from_weighted(
                    terms,
                    FunctionSource::Vector { entries: v.entries().to_vec() },
                )
                .expect("every factorization vector has a positive entry");
                json!({
                    "entries": v.entries(),
                    "measures": weighted_terms_json(&f),
                })
            })
            .collect::<Vec<_>>();
        let result = json!({
            "alpha": alpha_json(transform.alpha()),
            "count": vectors.len(),
            "vectors": listed,
        });
        Ok((result, Cert::new()))
    })();
    Run::Doc { command: "vectors", inputs, outcome }
}

pub fn mt(alpha_raw: &str, t_raw: &str, method: MtMethod) -> Run {
    let method_name = match method {
        MtMethod::CfInfimumSet => "cf-infimum-set",
        MtMethod::Oracle => "oracle",
    };
    let mut inputs = json!({ "alpha": alpha_raw, "t": t_raw, "method": method_name });
    let outcome = (|| {
        let alpha = parse_alpha(alpha_raw)?;
        inputs["parsed_alpha"] = alpha_json(&alpha);
        let t = TParam::parse(t_raw)?;
        let out = m_t(&alpha, &t, method)?;
        let mut cert = Cert::new();
        let result = json!({
            "value": cert.real(&out.value),
            "argmin": out.argmin.iter().map(function_json).collect::<Vec<_>>(),
            "method": method_name,
            "candidates": out.candidates,
        });
        Ok((result, cert))
    })();
    Run::Doc { command: "mt", inputs, outcome }
}

pub fn curve(
    alpha_raw: &str,
    t_min: f64,
    t_max: f64,
    samples: usize,
    format: CurveFormat,
) -> Run {
    let format_name = match format {
        CurveFormat::Csv => "csv",
        CurveFormat::Json => "json",
    };
    let mut inputs = json!({
        "alpha": alpha_raw,
        "t_min": t_min,
        "t_max": t_max,
        "samples": samples,
        "format": format_name,
    });
    let outcome = (|| {
        if !(t_min.is_finite() && t_max.is_finite() && t_min > 0.0 && t_min < t_max) {
            return Err(Error::Domain(
                "curve needs finite sample bounds with 0 < t_min < t_max".to_string(),
            ));
        }
        if samples < 2 {
            return Err(Error::Domain("curve needs at least 2 samples".to_string()));
        }
        let alpha = parse_alpha(alpha_raw)?;
        inputs["parsed_alpha"] = alpha_json(&alpha);
        let transform = characteristic_transformation(&alpha)?;
        let vectors = enumerate_vectors(&transform);
        let classes = vector_classes(&transform, &vectors);
        let mut cert = Cert::new();
        let mut rows: Vec<Vec<String>> = Vec::with_capacity(samples);
        for i in 0..samples {
            let frac = i as f64 / (samples - 1) as f64;
            let t = t_min + (t_max - t_min) * frac;
            let tp = TParam::from_f64(t)?;
            let t_text = CertifiedReal::from_f64(t, 64).decimal(DISPLAY_DIGITS);
            let series: Vec<CertifiedReal> = classes
                .iter()
                .map(|f| eval_measure_function(f, &tp, DEFAULT_PRECISION_BITS))
                .collect::<Result<_, _>>()?;
            let (envelope, active) = match certified_min(&classes, &tp, precision_cap()) {
                Ok(min) => {
                    cert.note_bits(min.bits_used);
                    (min.value, min.argmin[0] as i64)
                }
                Err(Error::UncertainOrdering { precision_bits, context }) => {
                    cert.flag(format!("active minimizer uncertain at t = {t_text}: {context}"));
                    cert.note_bits(precision_bits);
                    let hull = series[1..]
                        .iter()
                        .fold(series[0].clone(), |acc, x| acc.min_with(x));
                    (hull, -1)
                }
                Err(e) => return Err(e),
            };
            cert.observe(&envelope);
            let mut row = Vec::with_capacity(classes.len() + 4);
            row.push(t_text);
            row.push(envelope.decimal(DISPLAY_DIGITS));
            row.push(active.to_string());
            row.extend(series.iter().map(|v| v.decimal(DISPLAY_DIGITS)));
            row.push(envelope.width_decimal());
            rows.push(row);
        }
        let mut columns = vec![
            "t".to_string(),
            "envelope_value".to_string(),
            "active_id".to_string(),
        ];
        columns.extend((0..classes.len()).map(|i| format!("class_{i}")));
        columns.push("width".to_string());
        let result = json!({
            "alpha": alpha_json(transform.alpha()),
            "columns": columns,
            "rows": rows,
            "classes": classes
                .iter()
                .enumerate()
                .map(|(i, f)| json!({ "id": i, "function": function_json(f) }))
                .collect::<Vec<_>>(),
        });
        Ok((result, cert))
    })();

    match (format, outcome) {
        (CurveFormat::Csv, Ok((result, cert))) => {
            let mut text = String::new();
            let cell = |v: &Value| v.as_str().expect("cells are strings").to_string();
            let columns: Vec<String> =
                result["columns"].as_array().expect("columns").iter().map(cell).collect();
            text.push_str(&columns.join(","));
            text.push('\n');
            for row in result["rows"].as_array().expect("rows") {
                let cells: Vec<String> =
                    row.as_array().expect("row").iter().map(cell).collect();
                text.push_str(&cells.join(","));
                text.push('\n');
            }
            Run::Raw { text, flags: cert.flags().to_vec() }
        }
        (_, outcome) => Run::Doc { command: "curve", inputs, outcome },
    }
}

pub fn exceptional(alpha_raw: &str, t_max: f64, grid: usize) -> Run {
    let mut inputs = json!({ "alpha": alpha_raw, "t_max": t_max, "grid": grid });
    let outcome = (|| {
        let alpha = parse_alpha(alpha_raw)?;
        inputs["parsed_alpha"] = alpha_json(&alpha);
        let profile = mt_profile(&alpha, t_max, grid)?;
        let mut cert = Cert::new();
        flag_profile(&profile, &mut cert);
        Ok((profile_json(&profile), cert))
    })();
    Run::Doc { command: "exceptional", inputs, outcome }
}

pub fn vertices(alpha_raw: &str) -> Run {
    let mut inputs = json!({ "alpha": alpha_raw });
    let outcome = (|| {
        let alpha = parse_alpha(alpha_raw)?;
        inputs["parsed_alpha"] = alpha_json(&alpha);
        let transform = characteristic_transformation(&alpha)?;
        let vectors = enumerate_vectors(&transform);
        let kept = hull_vertices(&vectors);
        let mut vertices: Vec<&FactorizationVector> = kept.iter().collect();
        vertices.sort();
        let mut dropped: Vec<&FactorizationVector> =
            vectors.iter().filter(|v| !kept.contains(v)).collect();
        dropped.sort();
        let entries = |list: &[&FactorizationVector]| {
            list.iter().map(|v| json!(v.entries())).collect::<Vec<_>>()
        };
        let result = json!({
            "alpha": alpha_json(transform.alpha()),
            "total": vectors.len(),
            "count": vertices.len(),
            "vertices": entries(&vertices),
            "dropped": entries(&dropped),
        });
        Ok((result, Cert::new()))
    })();
    Run::Doc { command: "vertices", inputs, outcome }
}

pub fn minimal(alpha_raw: &str, t_max: f64) -> Run {
    let mut inputs = json!({ "alpha": alpha_raw, "t_max": t_max });
    let outcome = (|| {
        let alpha = parse_alpha(alpha_raw)?;
        inputs["parsed_alpha"] = alpha_json(&alpha);
        let set = empirical_minimal_set(&alpha, t_max)?;
        let mut cert = Cert::new();
        flag_profile(&set.profile, &mut cert);
        let members = set
            .members
            .iter()
            .zip(&set.class_ids)
            .map(|(v, id)| json!({ "vector": v.entries(), "class_id": id }))
            .collect::<Vec<_>>();
        let result = json!({
            "alpha": alpha_json(&set.alpha),
            "members": members,
            "empirical_minimality_index": set.members.len(),
            "profile": profile_json(&set.profile),
        });
        Ok((result, cert))
    })();
    Run::Doc { command: "minimal", inputs, outcome }
}

pub fn golden(n: u64, p_start: u64, run_pipeline: bool, t_max: f64) -> Run {
    let inputs = json!({ "n": n, "p_start": p_start, "run": run_pipeline, "t_max": t_max });
    let outcome = (|| {
        let pair = find_golden_pair(n, p_start)?;
        let fibs = FibSequence::up_to(n + 1)?;
        let alpha = pair.alpha()?;
        let mut cert = Cert::new();
        let mut result = json!({
            "pair": { "n": pair.n(), "p": pair.p(), "q": pair.q() },
            "window": {
                "lower": { "num": fibs.h(n), "den": fibs.h(n - 1) },
                "upper": { "num": fibs.h(n + 1), "den": fibs.h(n) },
            },
            "alpha": alpha_json(&alpha),
        });
        if run_pipeline {
            let case = golden_case(&pair, t_max)?;
            if case.observed_uncertain > 0 {
                cert.flag(format!(
                    "{} uncertain breakpoint bracket(s) in the pipeline run",
                    case.observed_uncertain
                ));
            }
            result["case"] = case_json(&case);
        }
        Ok((result, cert))
    })();
    Run::Doc { command: "golden", inputs, outcome }
}

pub fn audit(alpha_raw: &str, t_raw: &str) -> Run {
    let mut inputs = json!({ "alpha": alpha_raw, "t": t_raw });
    let outcome = (|| {
        let alpha = parse_alpha(alpha_raw)?;
        inputs["parsed_alpha"] = alpha_json(&alpha);
        let t = TParam::parse(t_raw)?;
        let report = theorem_main_audit(&alpha, &t)?;
        let mut cert = Cert::new();
        let factorizations = report
            .factorizations
            .iter()
            .map(|af| {
                json!({
                    "parts": af
                        .parts
                        .iter()
                        .map(|p| {
                            json!({
                                "a": p.pair.a,
                                "b": p.pair.b,
                                "classification": classification_json(&p.class),
                            })
                        })
                        .collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>();
        let result = json!({
            "alpha": alpha_json(&report.alpha),
            "t": t_raw,
            "value": cert.real(&report.value),
            "alpha_classification": classification_json(&report.alpha_class),
            "factorizations": factorizations,
            "violations": report.violations,
            "passed": report.passed,
        });
        Ok((result, cert))
    })();
    Run::Doc { command: "audit", inputs, outcome }
}

pub fn oracle(alpha_raw: &str, t_raw: &str, bound: u64) -> Run {
    let mut inputs = json!({ "alpha": alpha_raw, "t": t_raw, "oracle_bound": bound });
    let outcome = (|| {
        let alpha = parse_alpha(alpha_raw)?;
        inputs["parsed_alpha"] = alpha_json(&alpha);
        let t = TParam::parse(t_raw)?;
        let out = oracle_m_t(&alpha, &t, bound)?;
        let mut cert = Cert::new();
        let result = json!({
            "value": cert.real(&out.value),
            "argmin_classes": out.argmin_classes.iter().map(function_json).collect::<Vec<_>>(),
            "argmin_factorizations": out
                .argmin_factorizations
                .iter()
                .map(|f| json!({ "parts": f.parts().iter().map(pair_json).collect::<Vec<_>>() }))
                .collect::<Vec<_>>(),
            "class_count": out.class_count,
            "factorization_count": out.factorization_count,
        });
        Ok((result, cert))
    })();
    Run::Doc { command: "oracle", inputs, outcome }
}

fn flag_profile(profile: &MtProfile, cert: &mut Cert) {
    if profile.uncertain_count > 0 {
        cert.flag(format!(
            "{} breakpoint bracket(s) could not be certified at the precision cap",
            profile.uncertain_count
        ));
    }
    if !profile.stabilized {
        cert.flag(
            "the class active at the top of the range is not yet the asymptotic minimizer",
        );
    }
}

fn pair_json(pair: &ExponentPair) -> Value {
    json!({ "a": pair.a, "b": pair.b })
}

fn alpha_json(alpha: &PrimePowerRational) -> Value {
    json!({
        "p": alpha.p(),
        "q": alpha.q(),
        "a": alpha.a(),
        "b": alpha.b(),
        "display": alpha.to_string(),
    })
}

fn classification_json(c: &Classification) -> Value {
    json!({
        "in_upper": c.in_upper,
        "in_lower": c.in_lower,
        "in_u1": c.in_u1,
        "in_u2": c.in_u2,
        "in_l1": c.in_l1,
        "in_l2": c.in_l2,
        "coprime": c.coprime,
        "upper_best": c.upper_best,
        "lower_best": c.lower_best,
        "upper_boundary": c.upper_boundary,
        "lower_boundary": c.lower_boundary,
        "irreducible": c.irreducible,
    })
}

fn biguint_json(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn measure_json(m: &Measure) -> Value {
    json!({ "base": biguint_json(m.base()), "exp": m.exp() })
}

fn weighted_terms_json(f: &MeasureFunction) -> Vec<Value> {
    f.terms()
        .iter()
        .map(|(w, m)| json!({ "weight": w, "base": biguint_json(m.base()), "exp": m.exp() }))
        .collect()
}

fn function_json(f: &MeasureFunction) -> Value {
    let source = match f.source() {
        FunctionSource::Direct => json!("direct"),
        FunctionSource::Vector { entries } => json!({ "vector": entries }),
        FunctionSource::Parts { parts } => json!({
            "parts": parts.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        }),
    };
    json!({ "terms": weighted_terms_json(f), "source": source })
}

fn segment_json(s: &Segment) -> Value {
    let t_hi = if s.t_hi.is_finite() { json!(s.t_hi) } else { Value::Null };
    json!({ "t_lo": s.t_lo, "t_hi": t_hi, "class": s.class })
}

fn breakpoint_json(b: &Breakpoint) -> Value {
    json!({
        "t_lo": b.t_lo,
        "t_hi": b.t_hi,
        "width": b.t_hi - b.t_lo,
        "kind": b.kind.to_string(),
        "left_class": b.left_class,
        "right_class": b.right_class,
    })
}

fn profile_json(p: &MtProfile) -> Value {
    json!({
        "alpha": alpha_json(&p.alpha),
        "classes": p
            .classes
            .iter()
            .enumerate()
            .map(|(i, f)| json!({ "id": i, "function": function_json(f) }))
            .collect::<Vec<_>>(),
        "trivial_class": p.trivial_class,
        "segments": p.segments.iter().map(segment_json).collect::<Vec<_>>(),
        "breakpoints": p.breakpoints.iter().map(breakpoint_json).collect::<Vec<_>>(),
        "exceptional_count": p.exceptional_count,
        "uncertain_count": p.uncertain_count,
        "t_max_used": p.t_max_used,
        "stabilized": p.stabilized,
    })
}

fn case_json(case: &GoldenCaseReport) -> Value {
    let entries = |list: &[FactorizationVector]| {
        list.iter().map(|v| json!(v.entries())).collect::<Vec<_>>()
    };
    json!({
        "alpha": alpha_json(&case.alpha),
        "vector_count": case.vector_count,
        "log_count_bound": case.log_count_bound,
        "count_bound_ok": case.count_bound_ok,
        "conjectured": entries(&case.conjectured),
        "observed": entries(&case.observed),
        "members_match": case.members_match,
        "conjectured_exceptional": case.conjectured_exceptional,
        "observed_exceptional": case.observed_exceptional,
        "observed_uncertain": case.observed_uncertain,
        "supported": case.supported,
    })
}
