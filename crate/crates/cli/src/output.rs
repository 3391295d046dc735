//! Table rendering: commented CSV or JSON.

use serde_json::{Map, Value};

use crate::config::{Format, RunConfig};

/// Rows of one command, each with the outcome of its assertion.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: String,
    pub rows: Vec<String>,
    pub checks: Vec<bool>,
}

impl Table {
    pub fn new(header: &str) -> Self {
        Self { header: header.to_string(), rows: Vec::new(), checks: Vec::new() }
    }

    pub fn push(&mut self, row: String, pass: bool) {
        self.rows.push(row);
        self.checks.push(pass);
    }

    /// Extra assertion with no row of its own.
    pub fn check(&mut self, pass: bool) {
        self.checks.push(pass);
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|&&c| c).count()
    }

    pub fn all_pass(&self) -> bool {
        self.passed() == self.checks.len()
    }

    pub fn render(&self, run: &RunConfig) -> String {
        match run.format {
            Format::Csv => self.render_csv(run),
            Format::Json => self.render_json(run),
        }
    }

    fn render_csv(&self, run: &RunConfig) -> String {
        let mut out = format!("# gl2twist {} seed={:#x} config={}\n{}\n", run.command, run.seed, run.echo(), self.header);
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        out
    }

    fn render_json(&self, run: &RunConfig) -> String {
        let keys: Vec<&str> = self.header.split(',').collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = keys.iter().zip(row.split(',')).map(|(k, v)| (k.to_string(), cell(v))).collect();
                Value::Object(map)
            })
            .collect();
        let doc = serde_json::json!({
            "command": run.command.name(),
            "seed": format!("{:#x}", run.seed),
            "config": serde_json::from_str::<Value>(&run.echo()).unwrap_or(Value::Null),
            "rows": rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).unwrap_or_default();
        text.push('\n');
        text
    }
}

fn cell(v: &str) -> Value {
    if let Ok(i) = v.parse::<i64>() {
        return Value::from(i);
    }
    match v {
        "true" => return Value::Bool(true),
        "false" => return Value::Bool(false),
        _ => {}
    }
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Value::from(x),
        _ => Value::String(v.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_cells_typed() {
        assert_eq!(cell("3"), Value::from(3));
        assert_eq!(cell("true"), Value::Bool(true));
        assert_eq!(cell("1.5e0"), Value::from(1.5));
        assert_eq!(cell("-inf"), Value::String("-inf".into()));
        assert_eq!(cell("p=3;r=2"), Value::String("p=3;r=2".into()));
    }

    #[test]
    fn counts() {
        let mut t = Table::new("a,b");
        t.push("1,2".into(), true);
        t.push("3,4".into(), false);
        t.check(true);
        assert_eq!(t.passed(), 2);
        assert!(!t.all_pass());
    }
}
