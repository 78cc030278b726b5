use serde_json::{Map, Value};

use super::format::{number, round_sig};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    /// A quantity that does not exist at this point (e.g. a divergence).
    Missing,
}

impl Cell {
    pub fn value(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            Cell::Missing => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => number(*x),
            Cell::Missing => "nan".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => serde_json::Number::from_f64(round_sig(*x))
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Num(x) if x.is_infinite() => Value::String(number(*x)),
            _ => Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub cells: Vec<Cell>,
    pub is_zero_temperature: bool,
}

/// A grid point whose evaluation failed.
#[derive(Debug, Clone, PartialEq)]
pub struct RowError {
    pub theta: f64,
    pub beta_inv: String,
    pub message: String,
}

/// Result of a driver command: ordered metadata, fixed columns, rows and
/// per-point failures.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
    pub errors: Vec<RowError>,
}

impl Table {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Every value of one column, `None` where missing.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let j = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r.cells[j].value()).collect())
    }

    pub fn value(&self, row: usize, name: &str) -> Option<f64> {
        let j = self.column_index(name)?;
        self.rows.get(row)?.cells[j].value()
    }

    pub fn metadata_value(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn has_errors(&self) -> bool {
        !self.errors.is_empty()
    }

    /// Metadata as `# key=value` lines, failures as `# error:` lines, then the
    /// header and one line per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}={v}\n"));
        }
        for e in &self.errors {
            out.push_str(&format!(
                "# error: theta_rad={} beta_inv={}: {}\n",
                number(e.theta),
                e.beta_inv,
                e.message
            ));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.cells.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        let metadata: Map<String, Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(&row.cells)
                    .map(|(c, cell)| (c.clone(), cell.json()))
                    .collect();
                obj.insert("is_zero_temperature".into(), Value::Bool(row.is_zero_temperature));
                Value::Object(obj)
            })
            .collect();
        let errors: Vec<Value> = self
            .errors
            .iter()
            .map(|e| {
                serde_json::json!({
                    "theta_rad": Cell::Num(e.theta).json(),
                    "beta_inv": e.beta_inv,
                    "message": e.message,
                })
            })
            .collect();
        serde_json::json!({
            "metadata": metadata,
            "columns": self.columns,
            "rows": rows,
            "errors": errors,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        Table {
            metadata: vec![("mode".into(), "ideal".into())],
            columns: vec!["theta_rad".into(), "beta_inv".into(), "delta_f".into()],
            rows: vec![
                Row {
                    cells: vec![Cell::Num(0.1), Cell::Num(0.0), Cell::Num(-0.0)],
                    is_zero_temperature: true,
                },
                Row {
                    cells: vec![Cell::Num(0.2), Cell::Num(f64::INFINITY), Cell::Missing],
                    is_zero_temperature: false,
                },
            ],
            errors: vec![],
        }
    }

    #[test]
    fn csv_layout() {
        assert_eq!(
            sample().to_csv(),
            "# mode=ideal\ntheta_rad,beta_inv,delta_f\n0.1,0,0\n0.2,inf,nan\n"
        );
    }

    #[test]
    fn json_layout() {
        let v = sample().to_json_value();
        assert_eq!(v["metadata"]["mode"], "ideal");
        assert_eq!(v["rows"][0]["is_zero_temperature"], true);
        assert_eq!(v["rows"][0]["delta_f"], 0.0);
        assert_eq!(v["rows"][1]["beta_inv"], "inf");
        assert!(v["rows"][1]["delta_f"].is_null());
        let keys: Vec<&String> = v["rows"][0].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["theta_rad", "beta_inv", "delta_f", "is_zero_temperature"]);
    }

    #[test]
    fn lookups() {
        let t = sample();
        assert_eq!(t.value(0, "theta_rad"), Some(0.1));
        assert_eq!(t.value(1, "delta_f"), None);
        assert_eq!(t.column("nope"), None);
    }
}
