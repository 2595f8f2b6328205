use serde_json::{json, Map, Value};

/// A column name with its unit annotation (`hbar = m = 1` units unless noted).
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: &'static str,
    pub unit: &'static str,
}

pub const fn col(name: &'static str, unit: &'static str) -> Column {
    Column { name, unit }
}

/// Self-describing output: config echo, typed columns, rows and optional
/// residual summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub config: Map<String, Value>,
    pub notes: Vec<String>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
    pub residuals: Option<Value>,
}

/// JSON number, or a string for non-finite values.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::String(x.to_string()))
}

fn cell(v: &Value) -> String {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if text.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text
    }
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<Column>) -> Self {
        Table { command, config: Map::new(), notes: Vec::new(), columns, rows: Vec::new(), residuals: None }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.config.insert(key.to_string(), value.into());
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# nccoulomb {}\n# units: hbar = m = 1\n", self.command);
        for (k, v) in &self.config {
            out.push_str(&format!("# {k} = {}\n", cell(v).trim_matches('"')));
        }
        for note in &self.notes {
            out.push_str(&format!("# note: {note}\n"));
        }
        if let Some(r) = &self.residuals {
            out.push_str(&format!("# residuals: {r}\n"));
        }
        let header: Vec<String> = self
            .columns
            .iter()
            .map(|c| if c.unit.is_empty() { c.name.to_string() } else { cell(&Value::String(format!("{} [{}]", c.name, c.unit))) })
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(cell).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut config = self.config.clone();
        config.insert("command".into(), json!(self.command));
        if !self.notes.is_empty() {
            config.insert("notes".into(), json!(self.notes));
        }
        let mut top = Map::new();
        top.insert("config".into(), Value::Object(config));
        top.insert(
            "columns".into(),
            Value::Array(self.columns.iter().map(|c| json!({ "name": c.name, "unit": c.unit })).collect()),
        );
        top.insert("rows".into(), Value::Array(self.rows.iter().map(|r| Value::Array(r.clone())).collect()));
        if let Some(r) = &self.residuals {
            top.insert("residuals".into(), r.clone());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("tables serialize");
        s.push('\n');
        s
    }
}
