use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// A command result: the full structure for JSON and a flat view for CSV
/// and tables.
pub struct Output {
    pub json: serde_json::Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Lines printed before the table.
    pub preamble: Vec<String>,
    /// Lines printed after the table.
    pub notes: Vec<String>,
}

impl Output {
    pub fn new(value: &impl Serialize, headers: Vec<&'static str>) -> Result<Output, String> {
        Ok(Output {
            json: serde_json::to_value(value).map_err(|e| e.to_string())?,
            headers,
            rows: Vec::new(),
            preamble: Vec::new(),
            notes: Vec::new(),
        })
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| e.to_string())?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers).map_err(|e| e.to_string())?;
                for r in &self.rows {
                    w.write_record(r).map_err(|e| e.to_string())?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
            }
            Format::Table => {
                let mut out = String::new();
                for l in &self.preamble {
                    out.push_str(l);
                    out.push('\n');
                }
                let mut width: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (w, c) in width.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| {
                    let mut s = cells
                        .iter()
                        .zip(&width)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ");
                    s.truncate(s.trim_end().len());
                    s.push('\n');
                    s
                };
                out.push_str(&line(self.headers.clone()));
                for r in &self.rows {
                    out.push_str(&line(r.iter().map(String::as_str).collect()));
                }
                for l in &self.notes {
                    out.push_str(l);
                    out.push('\n');
                }
                Ok(out)
            }
        }
    }
}
