//! On-disk rule files: CSV (nodes only) and JSON (metadata plus nodes).

use mincuba::squaremin::moller_bound;
use mincuba::{CubatureRule2D, Gamma, Weight1D, WeightSpec};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Biangle,
    SquareEven,
    SquareOdd,
    Composed,
}

impl Family {
    pub fn degree(self, param: usize, ell: usize) -> usize {
        match self {
            Family::Biangle => 2 * param - 1,
            Family::SquareEven => 4 * param - 1,
            Family::SquareOdd => 4 * param + 1,
            Family::Composed => 4 * ell * param - 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Meta {
    pub family: Family,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub ell: Option<usize>,
    pub param: usize,
}

impl Meta {
    pub fn degree(&self) -> usize {
        self.family.degree(self.param, self.ell.unwrap_or(1))
    }

    /// Rebuilds the rule object the library certifies.
    pub fn rule(&self, nodes: &[[f64; 3]]) -> Result<CubatureRule2D, String> {
        let w = Weight1D::jacobi(self.alpha, self.beta).map_err(|e| e.to_string())?;
        let g = Gamma::from_value(self.gamma).map_err(|e| e.to_string())?;
        let spec = match self.family {
            Family::Biangle => WeightSpec::biangle(w, g),
            Family::SquareEven | Family::SquareOdd => WeightSpec::square(w, g),
            Family::Composed => WeightSpec::composed(w, self.ell.unwrap_or(1)).map_err(|e| e.to_string())?,
        };
        let pts = nodes.iter().map(|r| [r[0], r[1]]).collect();
        let ws = nodes.iter().map(|r| r[2]).collect();
        Ok(CubatureRule2D::new(pts, ws, self.degree(), spec, self.param))
    }
}

/// JSON layout; field order is part of the format.
#[derive(Debug, Serialize, Deserialize)]
struct JsonRule {
    family: Family,
    alpha: f64,
    beta: f64,
    gamma: f64,
    ell: Option<usize>,
    param_n_or_m: usize,
    degree: usize,
    node_count: usize,
    moller_bound: usize,
    nodes: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct RuleFile {
    pub meta: Option<Meta>,
    pub nodes: Vec<[f64; 3]>,
}

impl RuleFile {
    pub fn from_rule(meta: Meta, rule: &CubatureRule2D) -> Self {
        let nodes = rule.nodes().iter().zip(rule.weights()).map(|(p, &w)| [p[0], p[1], w]).collect();
        Self { meta: Some(meta), nodes }
    }

    pub fn encode(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
                w.write_record(["x1", "x2", "weight"]).map_err(|e| e.to_string())?;
                for r in &self.nodes {
                    // `{:?}` prints the shortest decimal that round-trips
                    w.write_record(r.iter().map(|v| format!("{v:?}"))).map_err(|e| e.to_string())?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
            }
            Format::Json => {
                let m = self.meta.ok_or("JSON output needs rule metadata")?;
                let degree = m.degree();
                let doc = JsonRule {
                    family: m.family,
                    alpha: m.alpha,
                    beta: m.beta,
                    gamma: m.gamma,
                    ell: m.ell,
                    param_n_or_m: m.param,
                    degree,
                    node_count: self.nodes.len(),
                    moller_bound: moller_bound(degree.div_ceil(2)),
                    nodes: self.nodes.clone(),
                };
                let mut s = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
                s.push('\n');
                Ok(s)
            }
        }
    }

    pub fn read(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let file = if text.trim_start().starts_with('{') { Self::parse_json(&text)? } else { Self::parse_csv(&text)? };
        if file.nodes.is_empty() {
            return Err(format!("{}: no nodes", path.display()));
        }
        if let Some(bad) = file.nodes.iter().find(|r| r.iter().any(|v| !v.is_finite())) {
            return Err(format!("non-finite entry {bad:?}"));
        }
        Ok(file)
    }

    fn parse_json(text: &str) -> Result<Self, String> {
        let d: JsonRule = serde_json::from_str(text).map_err(|e| format!("invalid JSON rule: {e}"))?;
        if d.node_count != d.nodes.len() {
            return Err(format!("node_count {} but {} nodes listed", d.node_count, d.nodes.len()));
        }
        if d.param_n_or_m == 0 || d.family == Family::Composed && d.ell.unwrap_or(0) == 0 {
            return Err("invalid rule parameters".into());
        }
        let meta = Meta { family: d.family, alpha: d.alpha, beta: d.beta, gamma: d.gamma, ell: d.ell, param: d.param_n_or_m };
        if meta.degree() != d.degree || d.degree.is_multiple_of(2) {
            return Err(format!("degree {} does not match the family parameters", d.degree));
        }
        if moller_bound(d.degree.div_ceil(2)) != d.moller_bound {
            return Err(format!("moller_bound {} does not match degree {}", d.moller_bound, d.degree));
        }
        Ok(Self { meta: Some(meta), nodes: d.nodes })
    }

    fn parse_csv(text: &str) -> Result<Self, String> {
        let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let header = r.headers().map_err(|e| e.to_string())?;
        if header.iter().collect::<Vec<_>>() != ["x1", "x2", "weight"] {
            return Err("CSV header must be x1,x2,weight".into());
        }
        let mut nodes = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| e.to_string())?;
            let mut row = [0.0; 3];
            for (k, field) in rec.iter().enumerate() {
                if k >= 3 {
                    return Err(format!("too many fields on line {}", nodes.len() + 2));
                }
                row[k] = field.parse().map_err(|_| format!("bad number {field:?}"))?;
            }
            if rec.len() != 3 {
                return Err(format!("expected 3 fields on line {}", nodes.len() + 2));
            }
            nodes.push(row);
        }
        Ok(Self { meta: None, nodes })
    }
}
