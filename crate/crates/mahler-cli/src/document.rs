//! Structured output documents: ordered key-value pairs with two renderings.
//!
//! The `document` format is one `key = value` line per field in a fixed
//! order, with no timestamps, so identical inputs give byte-identical output.
//! The `compact` format packs the same fields onto a single line.

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum OutputFormat {
    Document,
    Compact,
}

#[derive(Clone, Debug, Default)]
pub struct Doc {
    fields: Vec<(String, String)>,
}

impl Doc {
    pub fn new(command: &str) -> Doc {
        let mut d = Doc::default();
        d.push("command", command);
        d
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.fields.push((key.into(), value.into()));
    }

    /// Splices pre-rendered `key = value` lines (e.g. a certificate) into the
    /// document, preserving their order.
    pub fn push_block(&mut self, rendered: &str) {
        for line in rendered.lines() {
            if let Some((k, v)) = line.split_once(" = ") {
                self.push(k, v);
            }
        }
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Document => {
                let mut out = String::new();
                for (k, v) in &self.fields {
                    out.push_str(k);
                    out.push_str(" = ");
                    out.push_str(v);
                    out.push('\n');
                }
                out
            }
            OutputFormat::Compact => {
                let body = self
                    .fields
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join("; ");
                format!("{body}\n")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_are_stable_and_ordered() {
        let mut d = Doc::new("telescope");
        d.push("input.p", "2");
        d.push("outcome", "found");
        assert_eq!(
            d.render(OutputFormat::Document),
            "command = telescope\ninput.p = 2\noutcome = found\n"
        );
        assert_eq!(
            d.render(OutputFormat::Compact),
            "command=telescope; input.p=2; outcome=found\n"
        );
    }

    #[test]
    fn block_splicing_preserves_lines() {
        let mut d = Doc::new("certify");
        d.push_block("certificate.verdict = hypertranscendental\ncertificate.group-bounds = X\n");
        assert_eq!(d.get("certificate.verdict"), Some("hypertranscendental"));
        assert_eq!(d.get("certificate.group-bounds"), Some("X"));
    }
}
