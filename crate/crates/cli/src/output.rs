use std::fmt::Write;
use std::io::IsTerminal;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Everything a subcommand produces; rendered once in the requested format.
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub result: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    pub success: bool,
}

impl Report {
    pub fn new(command: &str, params: Value, result: Value) -> Self {
        let params = match params {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        Self {
            command: command.to_string(),
            params,
            result,
            header: Vec::new(),
            rows: Vec::new(),
            text: String::new(),
            success: true,
        }
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|h| h.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn text(mut self, text: String) -> Self {
        self.text = text;
        self
    }

    pub fn render(&self, format: Format, elapsed_ms: u128) -> String {
        match format {
            Format::Json => {
                let envelope = json!({
                    "command": self.command,
                    "params": self.params,
                    "result": self.result,
                    "elapsed_ms": elapsed_ms as u64,
                });
                let mut s = serde_json::to_string(&envelope).expect("JSON values always serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::new();
                let _ = writeln!(s, "{}", csv_line(&self.header));
                for row in &self.rows {
                    let _ = writeln!(s, "{}", csv_line(row));
                }
                s
            }
            Format::Text => {
                let mut s = colorize(&self.text);
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn csv_line(cells: &[String]) -> String {
    cells
        .iter()
        .map(|c| {
            if c.contains([',', '"', '\n']) {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn colorize(text: &str) -> String {
    let enabled = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal();
    if !enabled {
        return text.to_string();
    }
    text.lines()
        .map(|line| {
            if let Some(rest) = line.strip_prefix("PASS") {
                format!("\x1b[32mPASS\x1b[0m{rest}")
            } else if let Some(rest) = line.strip_prefix("FAIL") {
                format!("\x1b[31mFAIL\x1b[0m{rest}")
            } else {
                line.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}
