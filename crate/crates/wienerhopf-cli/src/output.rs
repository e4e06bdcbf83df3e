//! Machine-readable output: JSON solution documents and CSV tables.
//! Formatting is fixed-width scientific so identical configs produce
//! byte-identical files.

use crate::config::{Problem, RunConfig};
use serde::Serialize;
use std::path::PathBuf;
use wienerhopf::farfield::DirectivityCurve;
use wienerhopf::metrics::ConvergenceRecord;
use wienerhopf::rh::RHSolution;

#[derive(Serialize)]
struct ParamsDoc {
    k: f64,
    theta0: f64,
    #[serde(skip_serializing_if = "Option::is_none", rename = "S")]
    s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta2: Option<f64>,
    epsilon: f64,
}

#[derive(Serialize)]
struct ComponentDoc {
    name: String,
    coeffs_re: Vec<f64>,
    coeffs_im: Vec<f64>,
    values_re: Vec<f64>,
    values_im: Vec<f64>,
}

#[derive(Serialize)]
struct SolutionDoc {
    problem: String,
    mapping: String,
    n: usize,
    chi: f64,
    params: ParamsDoc,
    residual: f64,
    condition_estimate: f64,
    components: Vec<ComponentDoc>,
}

pub fn component_names(problem: Problem, _which: usize) -> Vec<String> {
    match problem {
        Problem::Sommerfeld => vec!["density".into()],
        Problem::SeniorMatrix | Problem::Hurd => vec!["density1".into(), "density2".into()],
        Problem::SeniorScalar => vec!["density".into()],
    }
}

pub fn solution_document(cfg: &RunConfig, sols: &[(&RHSolution, Vec<String>)]) -> String {
    let mut components = Vec::new();
    let mut residual = 0.0f64;
    let mut condition = 0.0f64;
    for (sol, names) in sols {
        residual = residual.max(sol.residual);
        condition = condition.max(sol.condition);
        for (i, name) in names.iter().enumerate() {
            components.push(ComponentDoc {
                name: name.clone(),
                coeffs_re: sol.series[i].coeffs.iter().map(|z| z.re).collect(),
                coeffs_im: sol.series[i].coeffs.iter().map(|z| z.im).collect(),
                values_re: sol.density[i].iter().map(|z| z.re).collect(),
                values_im: sol.density[i].iter().map(|z| z.im).collect(),
            });
        }
    }
    let doc = SolutionDoc {
        problem: cfg.problem.name().to_string(),
        mapping: match cfg.mapping {
            wienerhopf::MapKind::TwoToOne => "2to1".into(),
            wienerhopf::MapKind::FourToOne => "4to1".into(),
        },
        n: cfg.n,
        chi: cfg.chi,
        params: ParamsDoc {
            k: cfg.params.k,
            theta0: cfg.params.theta0,
            s: cfg.params.s,
            theta1: cfg.params.theta1,
            theta2: cfg.params.theta2,
            epsilon: cfg.params.epsilon,
        },
        residual,
        condition_estimate: condition,
        components,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    text
}

pub fn converge_csv(records: &[ConvergenceRecord]) -> String {
    let mut out = String::from("n,e2,einf,ealpha2,reference\n");
    for r in records {
        out.push_str(&format!(
            "{},{:.16e},{:.16e},{:.16e},{}\n",
            r.n, r.e2, r.einf, r.ealpha2, r.reference
        ));
    }
    out
}

pub fn directivity_csv(curve: &DirectivityCurve, exact_abs: Option<&[f64]>) -> String {
    let mut out = String::new();
    match exact_abs {
        None => out.push_str("theta,re_D,im_D,abs_D,flag\n"),
        Some(_) => out.push_str("theta,re_D,im_D,abs_D,flag,abs_D_exact,abs_err\n"),
    }
    for (i, &t) in curve.thetas.iter().enumerate() {
        let d = curve.values[i];
        let flag = u8::from(curve.flags[i]);
        match exact_abs {
            None => out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
                t,
                d.re,
                d.im,
                d.norm(),
                flag
            )),
            Some(ex) => out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{},{:.16e},{:.16e}\n",
                t,
                d.re,
                d.im,
                d.norm(),
                flag,
                ex[i],
                (d.norm() - ex[i]).abs()
            )),
        }
    }
    out
}

pub fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), std::io::Error> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
