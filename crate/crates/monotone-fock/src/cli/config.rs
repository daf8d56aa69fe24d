//! Run configuration: a TOML document and/or command-line flags, with flags
//! taking precedence. Descriptor grammars:
//!
//! - functions: `const:c`, `ind:lo:hi`, `pc:b0,v0,b1,v1,…`, `poly:c0,c1,…`
//!   with complex values written `re`, `re+imi` or `re-imi`;
//! - intervals: `s:t`;
//! - order: `monotone` or `anti`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::discrete_fock::OrderFlag;
use crate::test_function::TestFunction;

use super::CliError;

/// Every parameter a command may need. Unused fields are ignored by the
/// command that runs; missing required fields are a config error.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Sign word, e.g. `--++` (read left to right in operator order).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    /// One descriptor per letter, or a single descriptor for all letters.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functions: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    /// `moment` only: `limit`, `finite` or `mc`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// Grid size for `moment --mode finite`; half-length for `enumerate`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    /// N grid for the convergence-style commands.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ns: Option<Vec<u32>>,
    /// One `s:t` interval per letter, or a single interval for all letters.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intervals: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    /// Required whenever Monte Carlo is requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Largest moment order for `arcsine`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_order: Option<u32>,
    /// `csv` (default) or `json`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    /// Output path; stdout when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("config file: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("RunConfig serializes")
    }

    /// Field-wise overlay: values present in `overrides` win.
    pub fn merged_with(&self, overrides: &RunConfig) -> RunConfig {
        macro_rules! pick {
            ($field:ident) => {
                overrides.$field.clone().or_else(|| self.$field.clone())
            };
        }
        RunConfig {
            word: pick!(word),
            functions: pick!(functions),
            order: pick!(order),
            mode: pick!(mode),
            n: pick!(n),
            ns: pick!(ns),
            intervals: pick!(intervals),
            samples: pick!(samples),
            seed: pick!(seed),
            max_order: pick!(max_order),
            format: pick!(format),
            out: pick!(out),
        }
    }
}

pub fn parse_order(s: Option<&str>) -> Result<OrderFlag, CliError> {
    match s.unwrap_or("monotone") {
        "monotone" => Ok(OrderFlag::Monotone),
        "anti" => Ok(OrderFlag::AntiMonotone),
        other => Err(CliError::Config(format!(
            "unknown order {other:?} (expected \"monotone\" or \"anti\")"
        ))),
    }
}

pub fn order_name(order: OrderFlag) -> &'static str {
    match order {
        OrderFlag::Monotone => "monotone",
        OrderFlag::AntiMonotone => "anti",
    }
}

/// Complex literals: `re`, `re+imi` or `re-imi` (exponents allowed, e.g.
/// `1.5e-2-2e-1i`).
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Config(format!("invalid complex value {s:?}"));
    let s = s.trim();
    if let Some(stripped) = s.strip_suffix('i') {
        // find the split between real and imaginary parts: the last +/- that
        // is neither leading nor an exponent sign
        let bytes = stripped.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let b = bytes[idx];
            if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        match split {
            Some(idx) => {
                let re: f64 = stripped[..idx].parse().map_err(|_| bad())?;
                let sign = if bytes[idx] == b'-' { -1.0 } else { 1.0 };
                let im_text = &stripped[idx + 1..];
                let im: f64 = if im_text.is_empty() {
                    1.0
                } else {
                    im_text.parse().map_err(|_| bad())?
                };
                Ok(Complex64::new(re, sign * im))
            }
            None => {
                let im: f64 = if stripped.is_empty() {
                    1.0
                } else if stripped == "-" {
                    -1.0
                } else {
                    stripped.parse().map_err(|_| bad())?
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = s.parse().map_err(|_| bad())?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// Test-function descriptors; see the module docs for the grammar.
pub fn parse_function(descriptor: &str) -> Result<TestFunction, CliError> {
    let (kind, rest) = descriptor
        .split_once(':')
        .ok_or_else(|| CliError::Config(format!("invalid function descriptor {descriptor:?}")))?;
    match kind {
        "const" => Ok(TestFunction::constant(parse_complex(rest)?)),
        "ind" => {
            let (lo, hi) = rest.split_once(':').ok_or_else(|| {
                CliError::Config(format!("indicator needs lo:hi, got {descriptor:?}"))
            })?;
            let lo: f64 = lo
                .parse()
                .map_err(|_| CliError::Config(format!("invalid indicator bound {lo:?}")))?;
            let hi: f64 = hi
                .parse()
                .map_err(|_| CliError::Config(format!("invalid indicator bound {hi:?}")))?;
            TestFunction::indicator(lo, hi).map_err(|e| CliError::Config(e.to_string()))
        }
        "pc" => {
            let items: Vec<&str> = rest.split(',').collect();
            if items.len() < 2 || !items.len().is_multiple_of(2) {
                return Err(CliError::Config(format!(
                    "piecewise-constant needs b0,v0,b1,v1,…: {descriptor:?}"
                )));
            }
            let mut breakpoints = Vec::with_capacity(items.len() / 2 + 1);
            let mut values = Vec::with_capacity(items.len() / 2);
            for pair in items.chunks(2) {
                let b: f64 = pair[0]
                    .parse()
                    .map_err(|_| CliError::Config(format!("invalid breakpoint {:?}", pair[0])))?;
                breakpoints.push(b);
                values.push(parse_complex(pair[1])?);
            }
            breakpoints.push(1.0);
            TestFunction::piecewise_constant(breakpoints, values)
                .map_err(|e| CliError::Config(e.to_string()))
        }
        "poly" => {
            let coeffs = rest
                .split(',')
                .map(parse_complex)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TestFunction::polynomial(coeffs))
        }
        other => Err(CliError::Config(format!(
            "unknown function kind {other:?} (expected const, ind, pc or poly)"
        ))),
    }
}

/// One function per letter; a single descriptor broadcasts to all letters,
/// and an absent list defaults to `const:1`.
pub fn resolve_functions(
    descriptors: Option<&[String]>,
    letters: usize,
) -> Result<(Vec<TestFunction>, Vec<String>), CliError> {
    let descriptors: Vec<String> = match descriptors {
        None | Some([]) => vec!["const:1".to_string()],
        Some(d) => d.to_vec(),
    };
    let expanded: Vec<String> = if descriptors.len() == 1 {
        vec![descriptors[0].clone(); letters]
    } else if descriptors.len() == letters {
        descriptors
    } else {
        return Err(CliError::Config(format!(
            "{} function descriptors for a {letters}-letter word (give one per letter or a single one)",
            descriptors.len()
        )));
    };
    let functions = expanded
        .iter()
        .map(|d| parse_function(d))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((functions, expanded))
}

/// Interval endpoints, one pair per letter.
pub type IntervalList = Vec<(f64, f64)>;

/// `s:t` interval descriptors with the same broadcast rule; absent lists
/// default to the full interval.
pub fn resolve_intervals(
    descriptors: Option<&[String]>,
    letters: usize,
) -> Result<(IntervalList, Vec<String>), CliError> {
    let descriptors: Vec<String> = match descriptors {
        None | Some([]) => vec!["0:1".to_string()],
        Some(d) => d.to_vec(),
    };
    let expanded: Vec<String> = if descriptors.len() == 1 {
        vec![descriptors[0].clone(); letters]
    } else if descriptors.len() == letters {
        descriptors
    } else {
        return Err(CliError::Config(format!(
            "{} intervals for a {letters}-letter word (give one per letter or a single one)",
            descriptors.len()
        )));
    };
    let intervals = expanded
        .iter()
        .map(|d| {
            let (s, t) = d
                .split_once(':')
                .ok_or_else(|| CliError::Config(format!("interval needs s:t, got {d:?}")))?;
            let s: f64 = s
                .parse()
                .map_err(|_| CliError::Config(format!("invalid interval bound {s:?}")))?;
            let t: f64 = t
                .parse()
                .map_err(|_| CliError::Config(format!("invalid interval bound {t:?}")))?;
            Ok((s, t))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok((intervals, expanded))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_complex("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert_eq!(parse_complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(parse_complex("1-2i").unwrap(), Complex64::new(1.0, -2.0));
        assert_eq!(parse_complex("3i").unwrap(), Complex64::new(0.0, 3.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(
            parse_complex("1.5e-2-2e-1i").unwrap(),
            Complex64::new(0.015, -0.2)
        );
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+2").is_err());
    }

    #[test]
    fn function_descriptors() {
        assert!(matches!(
            parse_function("const:1").unwrap(),
            TestFunction::Constant(_)
        ));
        assert!(matches!(
            parse_function("ind:0:0.5").unwrap(),
            TestFunction::Indicator { .. }
        ));
        let pc = parse_function("pc:0,1,0.5,2").unwrap();
        assert_eq!(pc.eval(0.25), Complex64::new(1.0, 0.0));
        assert_eq!(pc.eval(0.75), Complex64::new(2.0, 0.0));
        assert!(matches!(
            parse_function("poly:0,1").unwrap(),
            TestFunction::Polynomial(_)
        ));
        assert!(parse_function("ind:0.5:0.2").is_err());
        assert!(parse_function("pc:0.1,1").is_err());
        assert!(parse_function("magic:1").is_err());
        assert!(parse_function("const").is_err());
    }

    #[test]
    fn broadcast_rules() {
        let (fs, echoed) = resolve_functions(Some(&["const:2".to_string()]), 4).unwrap();
        assert_eq!(fs.len(), 4);
        assert_eq!(echoed.len(), 4);
        assert!(resolve_functions(Some(&vec!["const:2".to_string(); 3]), 4).is_err());
        let (is, _) = resolve_intervals(Some(&["0:0.5".to_string()]), 2).unwrap();
        assert_eq!(is, vec![(0.0, 0.5); 2]);
    }

    #[test]
    fn toml_round_trip_is_canonical() {
        let text = r#"
word = "--++"
functions = ["const:1"]
order = "monotone"
ns = [4, 16, 64]
"#;
        let parsed = RunConfig::from_toml(text).unwrap();
        let serialized = parsed.to_toml();
        let reparsed = RunConfig::from_toml(&serialized).unwrap();
        assert_eq!(parsed, reparsed);
        // canonical: serializing twice is a fixed point
        assert_eq!(serialized, reparsed.to_toml());
    }

    #[test]
    fn unknown_keys_are_config_errors() {
        assert!(RunConfig::from_toml("wird = \"--++\"").is_err());
    }

    #[test]
    fn merge_precedence() {
        let file = RunConfig {
            word: Some("--++".into()),
            ns: Some(vec![4, 8]),
            ..RunConfig::default()
        };
        let flags = RunConfig {
            ns: Some(vec![16]),
            ..RunConfig::default()
        };
        let merged = file.merged_with(&flags);
        assert_eq!(merged.word.as_deref(), Some("--++"));
        assert_eq!(merged.ns, Some(vec![16]));
    }
}
