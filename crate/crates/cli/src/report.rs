//! Ordered key/value reports rendered as text or JSON.

use serde_json::{Map, Value};

#[derive(Clone, Debug)]
enum Node {
    Text(String),
    List(Vec<String>),
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    entries: Vec<(String, Node)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries.push((key.to_string(), Node::Text(value.to_string())));
        self
    }

    pub fn flag(&mut self, key: &str, value: bool) -> &mut Self {
        self.text(key, if value { "yes" } else { "no" })
    }

    pub fn list<I, T>(&mut self, key: &str, items: I) -> &mut Self
    where
        I: IntoIterator<Item = T>,
        T: ToString,
    {
        self.entries.push((key.to_string(), Node::List(items.into_iter().map(|t| t.to_string()).collect())));
        self
    }

    /// `key: value` lines; lists as `key:` followed by `  - item` lines, or `key: none`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            match v {
                Node::Text(t) => out.push_str(&format!("{k}: {t}\n")),
                Node::List(items) if items.is_empty() => out.push_str(&format!("{k}: none\n")),
                Node::List(items) => {
                    out.push_str(&format!("{k}:\n"));
                    for t in items {
                        out.push_str(&format!("  - {t}\n"));
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.entries {
            let value = match v {
                Node::Text(t) => Value::String(t.clone()),
                Node::List(items) => Value::Array(items.iter().cloned().map(Value::String).collect()),
            };
            m.insert(k.clone(), value);
        }
        Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        let mut r = Report::new();
        r.text("name", "P").list("xs", ["u", "v"]).list("empty", Vec::<String>::new()).flag("ok", true);
        assert_eq!(r.render(), "name: P\nxs:\n  - u\n  - v\nempty: none\nok: yes\n");
        assert_eq!(r.to_json()["xs"][1], "v");
    }
}
