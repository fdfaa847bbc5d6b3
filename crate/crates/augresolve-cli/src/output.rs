use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

/// A command result in both document and tabular form.
pub struct Report {
    pub document: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(document: Value, header: Vec<&'static str>) -> Self {
        Report { document, header, rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.document).expect("documents serialize");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let mut s = self.header.join("\t");
                s.push('\n');
                for row in &self.rows {
                    s.push_str(&row.join("\t"));
                    s.push('\n');
                }
                s
            }
            Format::Text => {
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|k| self.rows.iter().map(|r| r[k].chars().count()).chain([self.header[k].len()]).max().unwrap_or(0))
                    .collect();
                let mut s = String::new();
                for row in std::iter::once(self.header.iter().map(|h| h.to_string()).collect::<Vec<_>>()).chain(self.rows.iter().cloned()) {
                    let last = row.len() - 1;
                    for (k, cell) in row.iter().enumerate() {
                        if k == last {
                            let _ = write!(s, "{cell}");
                        } else {
                            let pad = widths[k] - cell.chars().count();
                            let _ = write!(s, "{cell}{}  ", " ".repeat(pad));
                        }
                    }
                    s.push('\n');
                }
                s
            }
        }
    }
}
