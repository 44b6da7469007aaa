//! Serialization of command results as JSON, CSV or text.
//!
//! Numbers are decimal strings at the requested digit count, so repeated runs
//! produce byte-identical output.

use clap::ValueEnum;
use ezeta::expansion::LaurentExpansion;
use ezeta::jet::{lexicographic_indices, multi_index_key};
use ezeta::laurent::RestrictedExpansion;
use ezeta::limits::NearPoint;
use ezeta::verify::Report;
use ezeta::{Cdd, Jet};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub enum Output {
    Value { point: Vec<Cdd>, method: &'static str, value: Cdd, digits: u32 },
    Scalar { label: String, value: Cdd, digits: u32 },
    Table { depth: usize, order: usize, table: Jet, digits: u32 },
    Expansion(LaurentExpansion),
    Restricted(RestrictedExpansion, u32),
    Near(NearPoint, u32),
    Reports(Vec<Report>),
}

fn pair(v: Cdd, digits: u32) -> Value {
    json!([v.re.to_decimal(digits), v.im.to_decimal(digits)])
}

fn csv_row(index: &str, v: Cdd, digits: u32) -> String {
    format!("\"{index}\",{},{}\n", v.re.to_decimal(digits), v.im.to_decimal(digits))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

impl Output {
    /// False only for a verification run with a failing check.
    pub fn all_passed(&self) -> bool {
        match self {
            Output::Reports(rs) => rs.iter().all(Report::passed),
            _ => true,
        }
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => Ok(pretty(&self.to_json())),
            Format::Csv => self.to_csv(),
            Format::Text => Ok(self.to_text()),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Output::Value { point, method, value, digits } => json!({
                "point": point.iter().map(|p| pair(*p, *digits)).collect::<Vec<_>>(),
                "method": method,
                "value": pair(*value, *digits),
            }),
            Output::Scalar { label, value, digits } => json!({"constant": label, "value": pair(*value, *digits)}),
            Output::Table { depth, order, table, digits } => {
                let mut map = serde_json::Map::new();
                for m in lexicographic_indices(*depth, *order) {
                    map.insert(multi_index_key(&m), pair(table.coeff(&m), *digits));
                }
                json!({"depth": depth, "order": order, "constants": map})
            }
            Output::Expansion(e) => e.to_json(),
            Output::Restricted(r, digits) => r.to_json(*digits),
            Output::Near(NearPoint::Value(v), digits) => v.to_json(*digits),
            Output::Near(NearPoint::Indeterminate { center, reason }, _) => {
                json!({"center": center, "indeterminate": true, "reason": reason})
            }
            Output::Reports(rs) => {
                let all: Vec<Value> = rs.iter().map(Report::to_json).collect();
                if all.len() == 1 {
                    all.into_iter().next().expect("one report")
                } else {
                    json!({"passed": self.all_passed(), "suites": all})
                }
            }
        }
    }

    /// Coefficient tables only: `multi_index,re,im` (expansions add a leading `denominator`).
    fn to_csv(&self) -> Result<String, String> {
        match self {
            Output::Table { depth, order, table, digits } => {
                let mut out = String::from("multi_index,re,im\n");
                for m in lexicographic_indices(*depth, *order) {
                    out += &csv_row(&multi_index_key(&m), table.coeff(&m), *digits);
                }
                Ok(out)
            }
            Output::Restricted(r, digits) => {
                let mut out = String::from("multi_index,re,im\n");
                for (i, c) in r.coefficients.iter().enumerate() {
                    out += &csv_row(&(r.low + i as i32).to_string(), *c, *digits);
                }
                Ok(out)
            }
            Output::Expansion(e) => {
                let mut out = String::from("denominator,multi_index,re,im\n");
                for t in &e.terms {
                    let den: String = t.denominator.iter().map(ToString::to_string).collect();
                    for m in lexicographic_indices(e.nvars(), e.order) {
                        out += &format!("\"{den}\",");
                        out += &csv_row(&multi_index_key(&m), t.numerator.coeff(&m), e.digits);
                    }
                }
                Ok(out)
            }
            _ => Err("CSV output is available for coefficient tables (expand, restricted, stieltjes --depth/--order)".into()),
        }
    }

    fn to_text(&self) -> String {
        match self {
            Output::Value { value, digits, method, .. } => format!("{value:.prec$}  [{method}]\n", prec = *digits as usize),
            Output::Scalar { label, value, digits } => format!("{label} = {value:.prec$}\n", prec = *digits as usize),
            Output::Table { depth, order, table, digits } => lexicographic_indices(*depth, *order)
                .iter()
                .map(|m| format!("γ_({}) = {:.prec$}\n", multi_index_key(m), table.coeff(m), prec = *digits as usize))
                .collect(),
            Output::Expansion(e) => {
                let mut out = String::new();
                for t in &e.terms {
                    let den: String = t.denominator.iter().map(ToString::to_string).collect();
                    out += &format!("1/{}:\n", if den.is_empty() { "1".to_string() } else { den });
                    for m in lexicographic_indices(e.nvars(), e.order) {
                        let c = t.numerator.coeff(&m);
                        if !c.is_zero() {
                            out += &format!("  [{}] {:.prec$}\n", multi_index_key(&m), c, prec = e.digits as usize);
                        }
                    }
                }
                out
            }
            Output::Restricted(r, digits) => r
                .coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| format!("(s-1)^{}: {:.prec$}\n", r.low + i as i32, c, prec = *digits as usize))
                .collect(),
            Output::Near(NearPoint::Value(v), digits) => {
                let p = *digits as usize;
                let mut out = String::new();
                for t in &v.principal {
                    out += &format!("principal {}: {:.p$}\n", t.pole, t.value);
                }
                for (label, value) in &v.groups {
                    out += &format!("{label}: {value:.p$}\n");
                }
                out += &format!("finite part: {:.p$}\ntotal: {:.p$}\nerror: {}\n", v.finite_part, v.total(), v.error_order.join(" + "));
                out
            }
            Output::Near(NearPoint::Indeterminate { center, reason }, _) => format!("indeterminate at {center:?}: {reason}\n"),
            Output::Reports(rs) => rs.iter().map(Report::to_text).collect(),
        }
    }
}
