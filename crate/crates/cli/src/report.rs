use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct Bounds {
    pub lower: Value,
    pub upper: Value,
}

/// One command's output. Fields left as None are omitted from JSON.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub germ: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub prime: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    /// Some(Null) when a closed form was looked up and none applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, prime: u64) -> Self {
        Report { command: command.to_string(), prime, ..Default::default() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let head = match &self.value {
            Some(v) => format!("{}: {}", self.command, plain(v)),
            None => self.command.clone(),
        };
        out.push_str(&head);
        out.push('\n');
        let mut line = |k: &str, v: String| out.push_str(&format!("  {k:<12} {v}\n"));
        if let Some(g) = &self.germ {
            line("germ", g.clone());
        }
        if let Some(m) = self.order {
            line("order", m.to_string());
        }
        if let Some(k) = &self.kind {
            line("kind", k.clone());
        }
        line("prime", self.prime.to_string());
        if let Some(t) = self.trials {
            line("trials", t.to_string());
        }
        if let Some(s) = self.seed {
            line("seed", s.to_string());
        }
        if let Some(a) = self.agreement {
            line("agreement", a.to_string());
        }
        if let Some(t) = self.truncation {
            line("truncation", t.to_string());
        }
        if let Some(s) = self.stable {
            line("stable", s.to_string());
        }
        if let Some(b) = &self.bounds {
            line("bounds", format!("[{}, {}]", plain(&b.lower), plain(&b.upper)));
        }
        if let Some(c) = &self.closed_form {
            line("closed form", plain(c));
        }
        if let Some(Value::Object(map)) = &self.details {
            for (k, v) in map {
                line(k, plain(v));
            }
        }
        if let Some(ms) = self.elapsed_ms {
            line("elapsed ms", ms.to_string());
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(v.to_string()),
    }
}

pub fn ratio(v: &BigRational) -> Value {
    if v.is_integer() {
        big(&v.to_integer())
    } else {
        Value::String(v.to_string())
    }
}
