//! Run configuration: CLI flags merged over an optional JSON config file,
//! with `pi`-expression angle parsing and per-problem validation.

use serde::Deserialize;
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Parse an angle given as a float or a `pi` expression:
/// `pi`, `pi/4`, `5pi/6`, `2*pi/3`, `-pi/2`, or a plain number.
pub fn parse_angle(s: &str) -> Result<f64, ConfigError> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let (sign, t) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, t),
    };
    if let Some(idx) = t.find("pi") {
        let (num_part, rest) = t.split_at(idx);
        let rest = &rest[2..];
        let coeff = match num_part.trim().trim_end_matches('*').trim() {
            "" => 1.0,
            c => c
                .parse::<f64>()
                .map_err(|_| ConfigError(format!("cannot parse angle '{s}'")))?,
        };
        let denom = match rest.trim() {
            "" => 1.0,
            d => {
                let d = d.trim();
                let d = d
                    .strip_prefix('/')
                    .ok_or_else(|| ConfigError(format!("cannot parse angle '{s}'")))?;
                d.trim()
                    .parse::<f64>()
                    .map_err(|_| ConfigError(format!("cannot parse angle '{s}'")))?
            }
        };
        if denom == 0.0 {
            return err(format!("zero denominator in angle '{s}'"));
        }
        Ok(sign * coeff * PI / denom)
    } else {
        err(format!("cannot parse angle '{s}'"))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AngleValue {
    Num(f64),
    Expr(String),
}

impl AngleValue {
    fn resolve(&self) -> Result<f64, ConfigError> {
        match self {
            AngleValue::Num(v) => Ok(*v),
            AngleValue::Expr(s) => parse_angle(s),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum NListValue {
    List(Vec<usize>),
    Text(String),
}

/// JSON config file contents; every field optional, flags override.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub problem: Option<String>,
    pub mapping: Option<String>,
    pub n: Option<usize>,
    pub chi: Option<AngleValue>,
    pub k: Option<f64>,
    pub theta0: Option<AngleValue>,
    #[serde(rename = "S")]
    pub s: Option<f64>,
    pub theta1: Option<AngleValue>,
    pub theta2: Option<AngleValue>,
    pub out: Option<String>,
    pub n_list: Option<NListValue>,
    pub reference: Option<String>,
    pub theta_min: Option<AngleValue>,
    pub theta_max: Option<AngleValue>,
    pub samples: Option<usize>,
    pub compare: Option<String>,
    pub epsilon: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &PathBuf) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| ConfigError(format!("cannot parse config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Sommerfeld,
    SeniorScalar,
    SeniorMatrix,
    Hurd,
}

impl Problem {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "sommerfeld" => Ok(Problem::Sommerfeld),
            "senior-scalar" => Ok(Problem::SeniorScalar),
            "senior-matrix" => Ok(Problem::SeniorMatrix),
            "hurd" => Ok(Problem::Hurd),
            other => err(format!(
                "unknown problem '{other}' (expected sommerfeld | senior-scalar | senior-matrix | hurd)"
            )),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Problem::Sommerfeld => "sommerfeld",
            Problem::SeniorScalar => "senior-scalar",
            Problem::SeniorMatrix => "senior-matrix",
            Problem::Hurd => "hurd",
        }
    }

    /// Reference-figure incidence angle, used when theta0 is not given.
    fn default_theta0(&self) -> f64 {
        match self {
            Problem::Sommerfeld => PI / 5.0,
            Problem::SeniorScalar | Problem::SeniorMatrix => 5.0 * PI / 6.0,
            Problem::Hurd => PI / 3.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub problem: Problem,
    pub mapping: wienerhopf::MapKind,
    pub n: usize,
    pub chi: f64,
    pub params: wienerhopf::PhysicalParams,
    pub out: Option<PathBuf>,
}

/// Resolved flag values (after merging the config file underneath).
pub struct Resolved {
    pub problem: Option<String>,
    pub mapping: Option<String>,
    pub n: Option<usize>,
    pub chi: Option<f64>,
    pub k: Option<f64>,
    pub theta0: Option<f64>,
    pub s: Option<f64>,
    pub theta1: Option<f64>,
    pub theta2: Option<f64>,
    pub out: Option<PathBuf>,
    pub epsilon: Option<f64>,
}

pub fn merge_angle(
    flag: &Option<String>,
    file: &Option<AngleValue>,
) -> Result<Option<f64>, ConfigError> {
    if let Some(s) = flag {
        return Ok(Some(parse_angle(s)?));
    }
    if let Some(v) = file {
        return Ok(Some(v.resolve()?));
    }
    Ok(None)
}

pub fn build_run_config(r: Resolved) -> Result<RunConfig, ConfigError> {
    let problem = match &r.problem {
        Some(p) => Problem::parse(p)?,
        None => return err("missing required parameter problem"),
    };
    let mapping = match r.mapping.as_deref() {
        None | Some("4to1") => wienerhopf::MapKind::FourToOne,
        Some("2to1") => wienerhopf::MapKind::TwoToOne,
        Some(other) => return err(format!("unknown mapping '{other}' (expected 2to1 | 4to1)")),
    };
    let n = r.n.unwrap_or(129);
    if n < 8 {
        return err(format!("n = {n} too small (need n >= 8)"));
    }
    let chi = r.chi.unwrap_or(PI / 4.0);
    let k = r.k.unwrap_or(1.0);
    let theta0 = r.theta0.unwrap_or_else(|| problem.default_theta0());

    match problem {
        Problem::SeniorScalar | Problem::SeniorMatrix => {
            if r.s.is_none() {
                return err("missing required parameter S (Senior impedance parameter)");
            }
        }
        Problem::Hurd => {
            if r.theta1.is_none() {
                return err("missing required parameter theta1 (Hurd impedance angle)");
            }
            if r.theta2.is_none() {
                return err("missing required parameter theta2 (Hurd impedance angle)");
            }
        }
        Problem::Sommerfeld => {}
    }

    let params = wienerhopf::PhysicalParams {
        k,
        theta0,
        s: r.s,
        theta1: r.theta1,
        theta2: r.theta2,
        epsilon: r.epsilon.unwrap_or(0.0),
    };
    Ok(RunConfig {
        problem,
        mapping,
        n,
        chi,
        params,
        out: r.out,
    })
}

pub fn parse_n_list(flag: &Option<String>, file: &Option<NListValue>) -> Result<Vec<usize>, ConfigError> {
    let from_text = |t: &str| -> Result<Vec<usize>, ConfigError> {
        t.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| ConfigError(format!("bad n-list entry '{p}'")))
            })
            .collect()
    };
    if let Some(t) = flag {
        return from_text(t);
    }
    match file {
        Some(NListValue::List(v)) => Ok(v.clone()),
        Some(NListValue::Text(t)) => from_text(t),
        None => Ok(vec![17, 33, 65, 129]),
    }
}

pub fn parse_reference(s: &str) -> Result<wienerhopf::Reference, ConfigError> {
    if s == "exact" {
        return Ok(wienerhopf::Reference::Exact);
    }
    if let Some(rest) = s.strip_prefix("self:") {
        let n = rest
            .parse::<usize>()
            .map_err(|_| ConfigError(format!("bad reference '{s}'")))?;
        return Ok(wienerhopf::Reference::SelfHighRes(n));
    }
    err(format!(
        "unknown reference '{s}' (expected exact | self:<n>)"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_expressions() {
        assert!((parse_angle("pi").unwrap() - PI).abs() < 1e-15);
        assert!((parse_angle("pi/4").unwrap() - PI / 4.0).abs() < 1e-15);
        assert!((parse_angle("5pi/6").unwrap() - 5.0 * PI / 6.0).abs() < 1e-15);
        assert!((parse_angle("2*pi/3").unwrap() - 2.0 * PI / 3.0).abs() < 1e-15);
        assert!((parse_angle("-pi/2").unwrap() + PI / 2.0).abs() < 1e-15);
        assert!((parse_angle("0.785").unwrap() - 0.785).abs() < 1e-15);
        assert!(parse_angle("tau/2").is_err());
    }

    #[test]
    fn n_list_parsing() {
        assert_eq!(
            parse_n_list(&Some("17, 33,65".into()), &None).unwrap(),
            vec![17, 33, 65]
        );
        assert_eq!(
            parse_n_list(&None, &Some(NListValue::List(vec![9, 17]))).unwrap(),
            vec![9, 17]
        );
    }

    #[test]
    fn missing_s_is_rejected() {
        let r = Resolved {
            problem: Some("senior-matrix".into()),
            mapping: None,
            n: None,
            chi: None,
            k: None,
            theta0: None,
            s: None,
            theta1: None,
            theta2: None,
            out: None,
            epsilon: None,
        };
        let e = build_run_config(r).unwrap_err();
        assert!(e.0.contains("S"), "{e}");
    }
}
