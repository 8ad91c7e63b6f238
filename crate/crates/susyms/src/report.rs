//! Command reports and their JSON, text, LaTeX and Markdown renderings.

use serde_json::{Map, Number, Value};

pub const SCHEMA: u64 = 1;

/// A float as a JSON number with 17 significant digits; non-finite values
/// become strings.
pub fn num(v: f64) -> Value {
    if !v.is_finite() {
        return Value::String(format!("{v}"));
    }
    let s = format!("{v:.16e}");
    Value::Number(s.parse::<Number>().expect("formatted float parses"))
}

/// A float formatted with 17 significant digits for text output.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Latex,
    Markdown,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        Some(match s {
            "json" => Format::Json,
            "text" => Format::Text,
            "latex" => Format::Latex,
            "markdown" | "md" => Format::Markdown,
            _ => return None,
        })
    }
}

/// Outcome of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub fields: Map<String, Value>,
    pub text: String,
    pub latex: Option<String>,
    pub markdown: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { command: command.to_string(), passed: true, fields: Map::new(), text: String::new(), latex: None, markdown: None }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), v.into());
        self
    }

    pub fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self
    }

    /// Record a named check: failing checks fail the report.
    pub fn check(&mut self, name: &str, ok: bool) -> &mut Self {
        self.passed &= ok;
        self.line(format!("[{}] {name}", if ok { "PASS" } else { "FAIL" }))
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), SCHEMA.into());
        m.insert("command".into(), self.command.clone().into());
        m.insert("passed".into(), self.passed.into());
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }

    pub fn render(&self, f: Format) -> Option<String> {
        match f {
            Format::Json => Some(format!("{}\n", serde_json::to_string_pretty(&self.to_json()).unwrap())),
            Format::Text => Some(self.text.clone()),
            Format::Latex => self.latex.clone(),
            Format::Markdown => self.markdown.clone(),
        }
    }
}

/// Machine-readable failure document for errors.
pub fn failure_json(command: &str, kind: &str, message: &str) -> String {
    let v = serde_json::json!({
        "schema": SCHEMA,
        "command": command,
        "passed": false,
        "error": { "kind": kind, "message": message },
    });
    format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
}

/// A square table of cells as LaTeX, in the given row and column order.
pub fn latex_table(caption: &str, names: &[String], cells: &[Vec<String>]) -> String {
    let sub = |s: &str| latex_cell(s);
    let mut out = String::new();
    out.push_str("\\begin{table}[h]\n\\centering\n");
    out.push_str(&format!("\\begin{{tabular}}{{c|{}}}\n", "c".repeat(names.len())));
    let head: Vec<String> = names.iter().map(|n| format!("${}$", sub(n))).collect();
    out.push_str(&format!(" & {} \\\\\n\\hline\n", head.join(" & ")));
    for (n, row) in names.iter().zip(cells) {
        let r: Vec<String> = row.iter().map(|c| format!("${}$", sub(c))).collect();
        out.push_str(&format!("${}$ & {} \\\\\n", sub(n), r.join(" & ")));
    }
    out.push_str("\\end{tabular}\n");
    out.push_str(&format!("\\caption{{{caption}}}\n\\end{{table}}\n"));
    out
}

/// `P13` -> `P_{13}`, `e4` -> `e_{4}` inside a combination string.
fn latex_cell(s: &str) -> String {
    let mut out = String::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        out.push(c);
        if c.is_ascii_alphabetic() && i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i + 1..j].iter().collect();
            out.push_str(&format!("_{{{digits}}}"));
            i = j;
            continue;
        }
        i += 1;
    }
    out
}

pub fn markdown_table(names: &[String], cells: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&format!("| [X, Y] | {} |\n", names.join(" | ")));
    out.push_str(&format!("|---|{}\n", "---|".repeat(names.len())));
    for (n, row) in names.iter().zip(cells) {
        out.push_str(&format!("| {n} | {} |\n", row.join(" | ")));
    }
    out
}

/// Plain aligned text table.
pub fn text_table(names: &[String], cells: &[Vec<String>]) -> String {
    let width = cells.iter().flatten().chain(names.iter()).map(|c| c.len()).max().unwrap_or(1).max(6);
    let mut out = format!("{:width$}", "[X,Y]");
    for n in names {
        out.push_str(&format!(" {n:>width$}"));
    }
    out.push('\n');
    for (n, row) in names.iter().zip(cells) {
        out.push_str(&format!("{n:width$}"));
        for c in row {
            out.push_str(&format!(" {c:>width$}"));
        }
        out.push('\n');
    }
    out
}
