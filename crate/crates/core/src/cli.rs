//! Batch front end: parse task specs, run computations, emit deterministic
//! reports. JSON is the canonical format; text and LaTeX are formatting
//! passes over the same report value.

use serde_json::{json, Value};

use crate::classify;
use crate::error::{CrError, CrResult};
use crate::hypersurface::{enumerate_block_structures, HSModel};
use crate::jet::{jet_from_json, Jet};
use crate::levi;
use crate::ring::coeff::{rat_from_str, Rat};
use crate::ring::matrix::PolyMat;
use crate::ring::poly::{poly_to_json_rat, Poly};
use crate::symmetry;
use crate::symmetry::{CatalogName, SpanKind};

pub const COMMANDS: &[&str] = &[
    "levi",
    "kernel",
    "adjoint",
    "symbol",
    "check2nd",
    "symmetries",
    "tangency",
    "classify",
    "equivalent",
    "homogeneous",
    "enumerate",
    "table",
];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Fail => 1,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOpts {
    pub degree: Option<usize>,
    pub seed: u64,
}

fn model_of(spec: &Value) -> CrResult<HSModel> {
    let mv = spec
        .get("model")
        .ok_or_else(|| CrError::Schema("spec needs a \"model\" object".into()))?;
    HSModel::from_json(mv)
}

fn jet_of(spec: &Value, key: &str) -> CrResult<Jet> {
    let jv = spec
        .get(key)
        .ok_or_else(|| CrError::Schema(format!("spec needs \"{key}\"")))?;
    jet_from_json(jv)
}

fn poly_mat_json(mat: &PolyMat<Rat>) -> Value {
    Value::Array(
        mat.data
            .iter()
            .map(|row| Value::Array(row.iter().map(poly_to_json_rat).collect()))
            .collect(),
    )
}

fn poly_mat_display(mat: &PolyMat<Rat>) -> Value {
    Value::Array(
        mat.data
            .iter()
            .map(|row| Value::Array(row.iter().map(|p| Value::String(p.to_string())).collect()))
            .collect(),
    )
}

fn poly_vec_display(v: &[Poly<Rat>]) -> Value {
    Value::Array(v.iter().map(|p| Value::String(p.to_string())).collect())
}

fn parse_field_spec(v: &Value) -> CrResult<CatalogName> {
    let obj = v
        .as_object()
        .ok_or_else(|| CrError::Schema("field must be an object".into()))?;
    let name = obj
        .get("name")
        .and_then(|x| x.as_str())
        .ok_or_else(|| CrError::Schema("field needs a name".into()))?;
    let idx = |key: &str| -> CrResult<usize> {
        obj.get(key)
            .and_then(|x| x.as_u64())
            .map(|x| x as usize)
            .ok_or_else(|| CrError::Schema(format!("field {name} needs integer \"{key}\"")))
    };
    Ok(match name {
        "YTop" => CatalogName::YTop,
        "YPrime" => CatalogName::YPrime,
        "XPrime" => CatalogName::XPrime,
        "V2n" => CatalogName::V2n,
        "U0" => CatalogName::U0,
        "V0" => CatalogName::V0,
        "C5" => CatalogName::C5,
        "Y" => CatalogName::Y(idx("j")?),
        "X" => CatalogName::X(idx("j")?),
        "U0m" => CatalogName::U0m(idx("m")?),
        "XHat" => {
            let a = obj
                .get("a")
                .and_then(|x| x.as_str())
                .ok_or_else(|| CrError::Schema("XHat needs \"a\"".into()))?;
            CatalogName::XHat(rat_from_str(a)?)
        }
        "Vf" => {
            let fam = obj
                .get("family")
                .ok_or_else(|| CrError::Schema("Vf needs \"family\"".into()))?;
            let fam_name = fam
                .get("family")
                .and_then(|x| x.as_str())
                .ok_or_else(|| CrError::Schema("Vf family needs a name".into()))?;
            let tag = match fam_name {
                "TypeI" => crate::jet::FamilyTag::TypeI {
                    a: rat_from_str(
                        fam.get("a")
                            .and_then(|x| x.as_str())
                            .ok_or_else(|| CrError::Schema("TypeI needs \"a\"".into()))?,
                    )?,
                },
                "TypeII" => crate::jet::FamilyTag::TypeII,
                "TypeIII" => crate::jet::FamilyTag::TypeIII,
                "TypeIV" => crate::jet::FamilyTag::TypeIV,
                "TypeV" => crate::jet::FamilyTag::TypeV,
                "TypeVI" => crate::jet::FamilyTag::TypeVI,
                other => {
                    return Err(CrError::Schema(format!(
                        "family {other} has no extra field"
                    )))
                }
            };
            CatalogName::Vf(tag)
        }
        other => return Err(CrError::UnknownField(other.to_string())),
    })
}

/// Runs one command against a parsed spec value. The returned report is a
/// plain JSON value whose serialization is byte-deterministic for fixed
/// inputs and options.
pub fn run_command(command: &str, spec: &Value, opts: &RunOpts) -> CrResult<(Value, Verdict)> {
    match command {
        "levi" => {
            let m = model_of(spec)?;
            let h = levi::levi_form(&m);
            Ok((
                json!({
                    "command": "levi",
                    "model": m.to_json(),
                    "variables": m.table().names(),
                    "matrix": poly_mat_json(&h),
                    "display": poly_mat_display(&h),
                }),
                Verdict::Info,
            ))
        }
        "kernel" => {
            let m = model_of(spec)?;
            let h = levi::levi_form(&m);
            let v = levi::kernel_field(&m)?;
            let hv = h.mat_vec(&v)?;
            Ok((
                json!({
                    "command": "kernel",
                    "model": m.to_json(),
                    "variables": m.table().names(),
                    "kernel": v.iter().map(poly_to_json_rat).collect::<Vec<_>>(),
                    "display": poly_vec_display(&v),
                    "hv_zero": hv.iter().all(|p| p.is_zero()),
                }),
                Verdict::Info,
            ))
        }
        "adjoint" => {
            let m = model_of(spec)?;
            let a = levi::adjoint_operator(&m)?;
            Ok((
                json!({
                    "command": "adjoint",
                    "model": m.to_json(),
                    "variables": m.table().names(),
                    "matrix": poly_mat_json(&a),
                    "display": poly_mat_display(&a),
                }),
                Verdict::Info,
            ))
        }
        "symbol" => {
            let m = model_of(spec)?;
            let a = levi::adjoint_operator(&m)?;
            let (jt, constant) = levi::jordan_type_sampled(&a, &m, opts.seed, 5)?;
            Ok((
                json!({
                    "command": "symbol",
                    "model": m.to_json(),
                    "jordan_type": jt.partition,
                    "constant_across_sample": constant,
                    "seed": opts.seed,
                }),
                Verdict::Info,
            ))
        }
        "check2nd" => {
            let m = model_of(spec)?;
            let rep = levi::check_2nondegeneracy(&m)?;
            let verdict = if rep.passed() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            let mut v = rep.to_json();
            v["command"] = json!("check2nd");
            v["model"] = m.to_json();
            Ok((v, verdict))
        }
        "symmetries" => {
            let m = model_of(spec)?;
            let (fields, dim) = symmetry::hol_basis(&m)?;
            let list: Vec<Value> = fields
                .iter()
                .map(|(name, f)| {
                    Ok(json!({
                        "name": name,
                        "coefficients": f.to_json(&m),
                        "tangency": symmetry::tangency_check(f, &m, opts.degree)?.to_json(),
                    }))
                })
                .collect::<CrResult<Vec<_>>>()?;
            Ok((
                json!({
                    "command": "symmetries",
                    "model": m.to_json(),
                    "dimension": dim,
                    "fields": list,
                }),
                Verdict::Info,
            ))
        }
        "tangency" => {
            let m = model_of(spec)?;
            let field_spec = spec
                .get("field")
                .ok_or_else(|| CrError::Schema("tangency needs a \"field\"".into()))?;
            let name = parse_field_spec(field_spec)?;
            let f = symmetry::catalog_field(&m, &name)?;
            let verdict = symmetry::tangency_check(&f, &m, opts.degree)?;
            let pass = verdict.passed();
            Ok((
                json!({
                    "command": "tangency",
                    "model": m.to_json(),
                    "field": name.label(m.n()),
                    "result": verdict.to_json(),
                }),
                if pass { Verdict::Pass } else { Verdict::Fail },
            ))
        }
        "classify" => {
            let (f, n) = if spec.get("model").is_some() {
                let m = model_of(spec)?;
                if !m.is_single_block() {
                    return Err(CrError::InvalidParam(
                        "classification applies to single-block models".into(),
                    ));
                }
                (m.blocks()[0].jet.clone(), m.n())
            } else {
                let f = jet_of(spec, "f")?;
                let n = spec
                    .get("n")
                    .and_then(|x| x.as_u64())
                    .ok_or_else(|| CrError::Schema("classify needs \"n\"".into()))?
                    as usize;
                (f, n)
            };
            let mut rep = classify::classify_jet(&f, n)?;
            rep["command"] = json!("classify");
            rep["jet"] = f.to_json();
            rep["n"] = json!(n);
            Ok((rep, Verdict::Info))
        }
        "equivalent" => {
            let f = jet_of(spec, "f")?;
            let fstar = jet_of(spec, "fstar")?;
            let report = match (spec.get("x1"), spec.get("x1star")) {
                (Some(a), Some(b)) => {
                    let x1 =
                        rat_from_str(a.as_str().ok_or_else(|| {
                            CrError::Schema("x1 must be a rational string".into())
                        })?)?;
                    let x1star = rat_from_str(b.as_str().ok_or_else(|| {
                        CrError::Schema("x1star must be a rational string".into())
                    })?)?;
                    classify::equivalent_at_points(&f, &x1, &fstar, &x1star)?
                }
                (None, None) => classify::equivalent_at_origin(&f, &fstar)?,
                _ => {
                    return Err(CrError::Schema(
                        "equivalent needs both x1 and x1star, or neither".into(),
                    ))
                }
            };
            let verdict = if report.equivalent() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            let mut v = report.to_json();
            v["command"] = json!("equivalent");
            Ok((v, verdict))
        }
        "homogeneous" => {
            let f = if spec.get("model").is_some() {
                let m = model_of(spec)?;
                m.blocks()[0].jet.clone()
            } else {
                jet_of(spec, "f")?
            };
            let h = classify::classify_homogeneity(&f)?;
            let verdict = if h.homogeneous {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            let mut v = h.to_json();
            v["command"] = json!("homogeneous");
            Ok((v, verdict))
        }
        "enumerate" => {
            let n = spec
                .get("n")
                .and_then(|x| x.as_u64())
                .ok_or_else(|| CrError::Schema("enumerate needs \"n\"".into()))?
                as usize;
            let structures = enumerate_block_structures(n)?;
            let p = (n - 2).div_ceil(2);
            Ok((
                json!({
                    "command": "enumerate",
                    "n": n,
                    "structures": structures,
                    "count": structures.len(),
                    "expected_count": (1usize << p) - 1,
                }),
                Verdict::Info,
            ))
        }
        "table" => {
            let m = model_of(spec)?;
            let (fields, _) = symmetry::hol_basis(&m)?;
            let table = symmetry::structure_table(&m, &fields, SpanKind::Real)?;
            let mut v = table.to_json();
            v["command"] = json!("table");
            v["model"] = m.to_json();
            v["latex"] = json!(table.to_latex());
            Ok((v, Verdict::Info))
        }
        other => Err(CrError::Schema(format!("unknown command {other}"))),
    }
}

/// Renders a report value as indented text, walking keys in their canonical
/// (sorted) order.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_text_inner(v, 0, &mut out);
    out
}

fn render_text_inner(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text_inner(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_str(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text_inner(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar_str(item))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_str(other))),
    }
}

fn scalar_str(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// LaTeX rendering: a description list over the report, with embedded
/// tabulars where a command provides them.
pub fn render_latex(v: &Value) -> String {
    let mut out = String::new();
    out.push_str("\\begin{description}\n");
    if let Value::Object(map) = v {
        for (k, val) in map {
            if k == "latex" {
                continue;
            }
            out.push_str(&format!(
                "\\item[{}] \\verb|{}|\n",
                latex_escape(k),
                compact_json(val)
            ));
        }
    }
    out.push_str("\\end{description}\n");
    if let Some(Value::String(table)) = v.get("latex") {
        out.push_str(table);
    }
    out
}

fn latex_escape(s: &str) -> String {
    s.replace('_', "\\_")
}

fn compact_json(v: &Value) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

/// Serializes a report in the requested format; "json" is canonical.
pub fn render(v: &Value, format: &str) -> CrResult<String> {
    match format {
        "json" => Ok(format!("{}\n", serde_json::to_string_pretty(v)?)),
        "text" => Ok(render_text(v)),
        "latex" => Ok(render_latex(v)),
        other => Err(CrError::Schema(format!("unknown format {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model_spec(n: usize) -> Value {
        json!({"model": {"n": n, "blocks": [{"size": n - 1, "sign": 1, "jet": {"family": "Zero", "order": 4}}]}})
    }

    #[test]
    fn byte_reproducibility() {
        let spec = model_spec(5);
        let opts = RunOpts::default();
        for cmd in [
            "levi",
            "kernel",
            "adjoint",
            "symbol",
            "check2nd",
            "symmetries",
        ] {
            let (a, _) = run_command(cmd, &spec, &opts).unwrap();
            let (b, _) = run_command(cmd, &spec, &opts).unwrap();
            assert_eq!(
                render(&a, "json").unwrap(),
                render(&b, "json").unwrap(),
                "{cmd}"
            );
        }
    }

    #[test]
    fn enumerate_n5() {
        let (rep, verdict) =
            run_command("enumerate", &json!({"n": 5}), &RunOpts::default()).unwrap();
        assert_eq!(verdict, Verdict::Info);
        assert_eq!(rep["count"], json!(3));
        assert_eq!(rep["structures"], json!([[1, 2, 1], [2, 2], [4]]));
    }

    #[test]
    fn symbol_on_two_two() {
        let spec = json!({"model": {"n": 5, "blocks": [
            {"size": 2, "sign": 1, "jet": {"family": "Zero", "order": 4}},
            {"size": 2, "sign": -1, "jet": {"family": "Zero", "order": 4}}
        ]}});
        let (rep, _) = run_command("symbol", &spec, &RunOpts::default()).unwrap();
        assert_eq!(rep["jordan_type"], json!([2, 2]));
        assert_eq!(rep["constant_across_sample"], json!(true));
    }

    #[test]
    fn homogeneous_type_v() {
        let spec = json!({"f": {"family": "TypeV", "order": 12}});
        let (rep, verdict) = run_command("homogeneous", &spec, &RunOpts::default()).unwrap();
        assert_eq!(verdict, Verdict::Pass);
        assert_eq!(rep["homogeneous"], json!(true));
        assert_eq!(rep["c"], json!("3/2"));
    }

    #[test]
    fn classify_type_v_model() {
        let spec = json!({"model": {"n": 5, "blocks": [
            {"size": 4, "sign": 1, "jet": {"family": "TypeV", "order": 12}}
        ]}});
        let (rep, _) = run_command("classify", &spec, &RunOpts::default()).unwrap();
        assert_eq!(rep["homogeneous"], json!(true));
        assert_eq!(rep["c"], json!("3/2"));
        assert_eq!(rep["hol_dim"], json!(12));
        assert_eq!(rep["family"]["family"], json!("TypeV"));
    }

    #[test]
    fn model_round_trips_through_report() {
        let spec = json!({"model": {"n": 4, "blocks": [
            {"size": 2, "sign": 1, "jet": {"order": 5, "coeffs": ["0","0","1/2","0","-2","1/3"], "exact": true}},
            {"size": 1, "sign": -1, "jet": {"family": "Zero", "order": 4}}
        ]}});
        let (rep, _) = run_command("levi", &spec, &RunOpts::default()).unwrap();
        let back = HSModel::from_json(&rep["model"]).unwrap();
        assert_eq!(back.to_json(), rep["model"]);
    }

    #[test]
    fn schema_violations_are_errors() {
        // blocks summing to n, not n-1
        let bad =
            json!({"model": {"n": 4, "blocks": [{"size": 2, "sign": 1}, {"size": 2, "sign": 1}]}});
        assert!(run_command("levi", &bad, &RunOpts::default()).is_err());
        // non-canonical rational
        let bad =
            json!({"f": {"order": 6, "coeffs": ["0","0","2/4","0","0","0","0"], "exact": true}});
        assert!(run_command("homogeneous", &bad, &RunOpts::default()).is_err());
        // unknown command
        assert!(run_command("nope", &json!({}), &RunOpts::default()).is_err());
    }

    #[test]
    fn tangency_command() {
        let spec = json!({
            "model": {"n": 5, "blocks": [{"size": 4, "sign": 1, "jet": {"family": "Zero", "order": 4}}]},
            "field": {"name": "U0"},
        });
        let (rep, verdict) = run_command("tangency", &spec, &RunOpts::default()).unwrap();
        assert_eq!(verdict, Verdict::Pass);
        assert_eq!(rep["result"]["verdict"], json!("exact"));
        // a failing field exits with the fail verdict
        let spec = json!({
            "model": {"n": 5, "blocks": [{"size": 4, "sign": 1, "jet": {"family": "TypeII", "order": 16}}]},
            "field": {"name": "U0"},
        });
        let (_, verdict) = run_command("tangency", &spec, &RunOpts::default()).unwrap();
        assert_eq!(verdict, Verdict::Fail);
    }

    #[test]
    fn table_command_emits_brackets_and_latex() {
        let spec = model_spec(5);
        let (rep, _) = run_command("table", &spec, &RunOpts::default()).unwrap();
        assert_eq!(rep["dim"], json!(14));
        assert_eq!(rep["closed"], json!(true));
        assert!(rep["latex"].as_str().unwrap().contains("\\begin{tabular}"));
        assert!(!rep["brackets"].as_array().unwrap().is_empty());
    }

    #[test]
    fn tangency_with_vf_field_spec() {
        let spec = json!({
            "model": {"n": 5, "blocks": [{"size": 4, "sign": 1, "jet": {"family": "TypeIV", "order": 16}}]},
            "field": {"name": "Vf", "family": {"family": "TypeIV"}},
        });
        let (rep, verdict) = run_command("tangency", &spec, &RunOpts::default()).unwrap();
        assert_eq!(verdict, Verdict::Pass);
        assert_eq!(rep["result"]["verdict"], json!("verified_to_degree"));
    }

    #[test]
    fn formats_render() {
        let (rep, _) = run_command("enumerate", &json!({"n": 6}), &RunOpts::default()).unwrap();
        assert!(render(&rep, "json").unwrap().contains("structures"));
        assert!(render(&rep, "text").unwrap().contains("count"));
        assert!(render(&rep, "latex")
            .unwrap()
            .contains("\\begin{description}"));
        assert!(render(&rep, "html").is_err());
    }
}
