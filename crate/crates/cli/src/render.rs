//! Report types and their json, csv and text renderings.
//!
//! CSV columns by report:
//! - gen: `n`
//! - density: `quantity,kind,estimate_num,estimate_den,lo_num,lo_den,hi_num,hi_den,lo_certified,hi_certified`
//! - sumset: `m,source,attained,infinitely_attained,cofinitely_attained` (class counts; empty when unknown)
//! - analyze, classify: `field,value` with dotted paths into the JSON report
//! - verify: `criterion,suite,check,pass,detail`

use std::fmt::Write as _;

use buckdens::{DensityEstimate, KneserReport, Rational, StructureClass, SuiteReport, WindowDensities};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Serialize)]
pub struct GenReport {
    pub family: String,
    pub horizon: u64,
    pub count: usize,
    pub members: Vec<u64>,
}

#[derive(Serialize)]
pub struct DensityReport {
    pub mode: String,
    pub estimates: Vec<NamedEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<u64>,
}

#[derive(Serialize)]
pub struct NamedEstimate {
    pub quantity: String,
    #[serde(flatten)]
    pub estimate: DensityEstimate,
}

impl DensityReport {
    pub fn single(quantity: &str, estimate: DensityEstimate) -> Self {
        DensityReport { mode: quantity.replace('_', "-"), estimates: vec![NamedEstimate { quantity: quantity.into(), estimate }], window: None }
    }

    pub fn windows(w: WindowDensities) -> Self {
        let named = |q: &str, estimate| NamedEstimate { quantity: q.into(), estimate };
        DensityReport {
            mode: "windows".into(),
            window: Some(w.window),
            estimates: vec![
                named("d_lower", w.d_lower),
                named("d_upper", w.d_upper),
                named("banach_lower", w.banach_lower),
                named("banach_upper", w.banach_upper),
            ],
        }
    }
}

#[derive(Serialize)]
pub struct ProfileRow {
    pub m: u64,
    /// `exact` from the profile oracle, `sampled` from members up to the horizon.
    pub source: String,
    pub attained: Vec<u64>,
    pub infinitely_attained: Option<Vec<u64>>,
    pub cofinitely_attained: Option<Vec<u64>>,
}

#[derive(Serialize)]
pub struct SumsetReport {
    pub summands: Vec<String>,
    pub horizon: u64,
    pub members: Vec<u64>,
    pub profiles: Vec<ProfileRow>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

pub enum Report {
    Gen(GenReport),
    Density(DensityReport),
    Sumset(SumsetReport),
    Analyze(Box<KneserReport>),
    Classify(StructureClass),
    Verify(VerifyReport),
}

type RenderResult = Result<String, Box<dyn std::error::Error>>;

impl Report {
    pub fn render(&self, format: Format) -> RenderResult {
        match format {
            Format::Json => {
                let mut s = match self {
                    Report::Gen(r) => serde_json::to_string_pretty(r),
                    Report::Density(r) => serde_json::to_string_pretty(r),
                    Report::Sumset(r) => serde_json::to_string_pretty(r),
                    Report::Analyze(r) => serde_json::to_string_pretty(r),
                    Report::Classify(r) => serde_json::to_string_pretty(r),
                    Report::Verify(r) => serde_json::to_string_pretty(r),
                }?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn csv(&self) -> RenderResult {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        match self {
            Report::Gen(r) => {
                w.write_record(["n"])?;
                for n in &r.members {
                    w.write_record([n.to_string()])?;
                }
            }
            Report::Density(r) => {
                w.write_record(["quantity", "kind", "estimate_num", "estimate_den", "lo_num", "lo_den", "hi_num", "hi_den", "lo_certified", "hi_certified"])?;
                for e in &r.estimates {
                    let d = &e.estimate;
                    let mut row = vec![e.quantity.clone(), d.kind.name().to_string()];
                    for x in [&d.estimate, &d.lo, &d.hi] {
                        row.push(x.numer().to_string());
                        row.push(x.denom().to_string());
                    }
                    row.push(d.lo_certified.to_string());
                    row.push(d.hi_certified.to_string());
                    w.write_record(row)?;
                }
            }
            Report::Sumset(r) => {
                w.write_record(["m", "source", "attained", "infinitely_attained", "cofinitely_attained"])?;
                let count = |s: &Option<Vec<u64>>| s.as_ref().map(|v| v.len().to_string()).unwrap_or_default();
                for p in &r.profiles {
                    w.write_record([
                        p.m.to_string(),
                        p.source.clone(),
                        p.attained.len().to_string(),
                        count(&p.infinitely_attained),
                        count(&p.cofinitely_attained),
                    ])?;
                }
            }
            Report::Analyze(r) => key_values(&mut w, &serde_json::to_value(r)?)?,
            Report::Classify(r) => key_values(&mut w, &serde_json::to_value(r)?)?,
            Report::Verify(r) => {
                w.write_record(["criterion", "suite", "check", "pass", "detail"])?;
                for s in &r.suites {
                    for c in &s.checks {
                        w.write_record([s.criterion.to_string(), s.suite.name().to_string(), c.name.clone(), c.pass.to_string(), c.detail.clone()])?;
                    }
                }
            }
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn text(&self) -> RenderResult {
        let mut out = String::new();
        match self {
            Report::Gen(r) => {
                writeln!(out, "family: {}\nhorizon: {}\ncount: {}", r.family, r.horizon, r.count)?;
                let members: Vec<String> = r.members.iter().map(u64::to_string).collect();
                writeln!(out, "members: {}", members.join(" "))?;
            }
            Report::Density(r) => {
                writeln!(out, "mode: {}", r.mode)?;
                if let Some(w) = r.window {
                    writeln!(out, "window: {w}")?;
                }
                for e in &r.estimates {
                    let d = &e.estimate;
                    let mark = |c: bool| if c { "certified" } else { "estimated" };
                    writeln!(
                        out,
                        "{}: {} {} in [{}, {}] (lower {}, upper {})",
                        e.quantity,
                        d.kind.name(),
                        show(&d.estimate),
                        show(&d.lo),
                        show(&d.hi),
                        mark(d.lo_certified),
                        mark(d.hi_certified)
                    )?;
                    for warning in &d.warnings {
                        writeln!(out, "  warning: {warning}")?;
                    }
                }
            }
            Report::Sumset(r) => {
                writeln!(out, "summands: {}\nhorizon: {}", r.summands.join(" + "), r.horizon)?;
                let members: Vec<String> = r.members.iter().map(u64::to_string).collect();
                writeln!(out, "members: {}", members.join(" "))?;
                writeln!(out, "{:>6}  {:<8} {:>9} {:>9} {:>9}", "m", "source", "attained", "infinite", "cofinite")?;
                let count = |s: &Option<Vec<u64>>| s.as_ref().map(|v| v.len().to_string()).unwrap_or_else(|| "-".into());
                for p in &r.profiles {
                    writeln!(
                        out,
                        "{:>6}  {:<8} {:>9} {:>9} {:>9}",
                        p.m,
                        p.source,
                        p.attained.len(),
                        count(&p.infinitely_attained),
                        count(&p.cofinitely_attained)
                    )?;
                }
            }
            Report::Analyze(r) => flat_text(&mut out, &serde_json::to_value(r)?)?,
            Report::Classify(r) => flat_text(&mut out, &serde_json::to_value(r)?)?,
            Report::Verify(r) => {
                for s in &r.suites {
                    let tag = if s.pass { "PASS" } else { "FAIL" };
                    writeln!(out, "{tag} [{:>2}] {}: {}", s.criterion, s.suite.name(), s.title)?;
                    for c in &s.checks {
                        writeln!(out, "     {} {}: {}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.detail)?;
                    }
                    for n in &s.notes {
                        writeln!(out, "     note: {n}")?;
                    }
                }
                writeln!(out, "{}", if r.pass { "all suites passed" } else { "some suites failed" })?;
            }
        }
        Ok(out)
    }
}

fn show(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Leaves of a JSON report as `(dotted.path, value)`; `{num, den}` objects
/// print as fractions.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if m.len() == 2 && m.contains_key("num") && m.contains_key("den") => {
            let part = |k: &str| match &m[k] {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let den = part("den");
            out.push((prefix.into(), if den == "1" { part("num") } else { format!("{}/{}", part("num"), den) }));
        }
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| x.is_number()) => {
            out.push((prefix.into(), xs.iter().map(Value::to_string).collect::<Vec<_>>().join(" ")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.into(), s.clone())),
        Value::Null => out.push((prefix.into(), String::new())),
        other => out.push((prefix.into(), other.to_string())),
    }
}

fn key_values(w: &mut csv::Writer<Vec<u8>>, v: &Value) -> Result<(), csv::Error> {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    w.write_record(["field", "value"])?;
    for (k, x) in rows {
        w.write_record([k, x])?;
    }
    Ok(())
}

fn flat_text(out: &mut String, v: &Value) -> std::fmt::Result {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    for (k, x) in rows {
        writeln!(out, "{k}: {x}")?;
    }
    Ok(())
}
