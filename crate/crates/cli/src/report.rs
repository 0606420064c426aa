//! Tabular reports rendered as CSV or JSON.
//!
//! CSV layout: the main table (header row + data rows), then for each extra
//! table a blank line, its header and rows, then a blank line and a
//! `key,value` section holding the meta entries followed by the footer.
//!
//! JSON layout: `{"meta": {..}, "rows": [{column: value, ..}, ..], "footer": {..}}`
//! with extra tables as additional top-level arrays keyed by table name.
//!
//! Floats use the shortest representation that round-trips in both formats.

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_owned(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub meta: Vec<(String, Value)>,
    pub table: Table,
    pub extra: Vec<Table>,
    pub footer: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &str, table: Table) -> Self {
        Self {
            meta: vec![("command".into(), command.into())],
            table,
            extra: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) {
        self.meta.push((key.to_owned(), value.into()));
    }

    pub fn footer(&mut self, key: &str, value: impl Into<Value>) {
        self.footer.push((key.to_owned(), value.into()));
    }

    pub fn footer_value(&self, key: &str) -> Option<&Value> {
        self.footer.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        for (i, table) in std::iter::once(&self.table).chain(&self.extra).enumerate() {
            if i > 0 {
                out.push('\n');
            }
            write_csv_row(&mut out, table.columns.iter().map(|c| csv_field(c)));
            for row in &table.rows {
                write_csv_row(&mut out, row.iter().map(csv_value));
            }
        }
        out.push('\n');
        write_csv_row(&mut out, ["key".to_owned(), "value".to_owned()].into_iter());
        for (k, v) in self.meta.iter().chain(&self.footer) {
            write_csv_row(&mut out, [csv_field(k), csv_value(v)].into_iter());
        }
        out
    }

    fn to_json(&self) -> String {
        let mut root = Map::new();
        root.insert(
            "meta".into(),
            Value::Object(self.meta.iter().cloned().collect()),
        );
        root.insert("rows".into(), table_rows(&self.table));
        for table in &self.extra {
            root.insert(table.name.clone(), table_rows(table));
        }
        root.insert(
            "footer".into(),
            Value::Object(self.footer.iter().cloned().collect()),
        );
        let mut text = serde_json::to_string_pretty(&Value::Object(root))
            .expect("report values are always serializable");
        text.push('\n');
        text
    }
}

fn table_rows(table: &Table) -> Value {
    Value::Array(
        table
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    table
                        .columns
                        .iter()
                        .cloned()
                        .zip(row.iter().cloned())
                        .collect(),
                )
            })
            .collect(),
    )
}

fn write_csv_row(out: &mut String, fields: impl Iterator<Item = String>) {
    let line: Vec<String> = fields.collect();
    out.push_str(&line.join(","));
    out.push('\n');
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::String(s) => csv_field(s),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// JSON number for finite floats, `null` otherwise.
pub fn num(x: f64) -> Value {
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}
