//! Command output: ordered `key: value` lines, or the same values as JSON.

use serde_json::{Map, Number, Value as Json};

use super::number::format_report;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Real(f64),
    Text(String),
    Ints(Vec<usize>),
    Reals(Vec<f64>),
}

impl Value {
    fn text(&self) -> String {
        match self {
            Value::Bool(b) => b.to_string(),
            Value::Int(i) => i.to_string(),
            Value::Real(x) => format_report(*x),
            Value::Text(s) => s.clone(),
            Value::Ints(v) => v.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
            Value::Reals(v) => v
                .iter()
                .map(|x| format_report(*x))
                .collect::<Vec<_>>()
                .join(" "),
        }
    }

    fn json(&self) -> Json {
        // reals go through the printed form so both outputs carry the same value
        let real = |x: f64| {
            let shown: f64 = format_report(x).parse().expect("formatted real parses");
            Json::Number(Number::from_f64(shown).expect("finite"))
        };
        match self {
            Value::Bool(b) => Json::Bool(*b),
            Value::Int(i) => Json::from(*i),
            Value::Real(x) => real(*x),
            Value::Text(s) => Json::String(s.clone()),
            Value::Ints(v) => Json::Array(v.iter().map(|&i| Json::from(i)).collect()),
            Value::Reals(v) => Json::Array(v.iter().map(|&x| real(x)).collect()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Self::default();
        r.text("command", command);
        r
    }

    pub fn push(&mut self, key: &str, value: Value) -> &mut Self {
        self.entries.push((key.to_string(), value));
        self
    }

    pub fn flag(&mut self, key: &str, b: bool) -> &mut Self {
        self.push(key, Value::Bool(b))
    }

    pub fn int(&mut self, key: &str, i: usize) -> &mut Self {
        self.push(key, Value::Int(i as i64))
    }

    pub fn real(&mut self, key: &str, x: f64) -> &mut Self {
        self.push(key, Value::Real(x))
    }

    pub fn text(&mut self, key: &str, s: &str) -> &mut Self {
        self.push(key, Value::Text(s.to_string()))
    }

    pub fn ints(&mut self, key: &str, v: Vec<usize>) -> &mut Self {
        self.push(key, Value::Ints(v))
    }

    pub fn entries(&self) -> &[(String, Value)] {
        &self.entries
    }

    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|(k, v)| format!("{k}: {}\n", v.text()))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let map: Map<String, Json> = self
            .entries
            .iter()
            .map(|(k, v)| (k.clone(), v.json()))
            .collect();
        let mut s = serde_json::to_string_pretty(&Json::Object(map)).expect("serializable");
        s.push('\n');
        s
    }
}
