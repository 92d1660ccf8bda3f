use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
}

/// Ordered key/value output of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    rows: Vec<(String, Value)>,
    /// A verification ran and something failed.
    pub failed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            rows: Vec::new(),
            failed: false,
        }
    }

    pub fn push(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.rows.push((key.to_string(), v.into()));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut m = Map::new();
                m.insert("command".into(), Value::String(self.command.clone()));
                for (k, v) in &self.rows {
                    m.insert(k.clone(), v.clone());
                }
                serde_json::to_string_pretty(&Value::Object(m)).expect("json") + "\n"
            }
            Format::Human => {
                let w = self
                    .rows
                    .iter()
                    .map(|(k, _)| k.chars().count())
                    .max()
                    .unwrap_or(0);
                let mut out = format!("# {}\n", self.command);
                for (k, v) in &self.rows {
                    let lines = human_lines(v);
                    if lines.is_empty() {
                        out += &format!("{k:<w$}  -\n");
                    }
                    for (i, line) in lines.iter().enumerate() {
                        let key = if i == 0 { k.as_str() } else { "" };
                        out += &format!("{key:<w$}  {line}\n");
                    }
                }
                out
            }
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn human_lines(v: &Value) -> Vec<String> {
    match v {
        Value::Array(xs)
            if xs.iter().all(|x| !x.is_array() && !x.is_object()) && xs.len() <= 16 =>
        {
            let parts: Vec<String> = xs.iter().map(scalar).collect();
            vec![format!("[{}]", parts.join(", "))]
        }
        Value::Array(xs) => xs.iter().map(scalar).collect(),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}: {}", scalar(v)))
            .collect(),
        other => vec![scalar(other)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_formats() {
        let mut r = Report::new("period");
        r.push("class", "(1)")
            .push("period", 2u64)
            .push("degrees", vec![2u64, 4]);
        assert_eq!(
            r.render(Format::Human),
            "# period\nclass    (1)\nperiod   2\ndegrees  [2, 4]\n"
        );
        let j: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(j["period"], 2);
        assert_eq!(j["command"], "period");
    }
}
