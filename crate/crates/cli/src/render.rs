//! Plain-text tables.

use std::fmt::Write;

/// Right-aligned grid of entries, indented by two spaces.
pub fn grid(entries: &[Vec<String>]) -> String {
    let width = entries.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    for row in entries {
        out.push_str("  [");
        for (j, e) in row.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            let _ = write!(out, "{e:>width$}");
        }
        out.push_str("]\n");
    }
    out
}

/// Two-column key/value lines.
pub fn fields(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

pub fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn banner(eps: f64) -> String {
    let line = "=".repeat(48);
    format!("{line}\n  approximate verification (ε={eps:e})\n{line}\n")
}
