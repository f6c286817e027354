//! Unified-diff model: parsing, rendering, and per-statement change classification.
//!
//! The parser keeps every input line verbatim (file headers, hunk headers,
//! trailing material) so that rendering a parsed patch reproduces the input
//! byte for byte.

mod classify;
mod lexicon;

pub use classify::{
    classify_changes, classify_patch, extract_identifiers, ApiFamily, ChangeCategory,
    StatementChange,
};
pub use lexicon::ApiLexicon;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors produced by [`parse_unified_diff`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiffError {
    /// Input was empty or contained no hunks.
    #[error("diff contains no hunks")]
    EmptyDiff,
    /// A `@@` header was malformed, appeared outside a file section, or its
    /// body did not match the declared line counts.
    #[error("bad hunk header or body at line {0}")]
    BadHunkHeader(usize),
}

/// Kind of a single line inside a hunk, determined by its diff prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineKind {
    Added,
    Removed,
    Context,
}

/// One line of a hunk body.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineChange {
    pub kind: LineKind,
    /// Line text without the leading diff prefix character.
    pub text: String,
    /// Verbatim `\ No newline at end of file` marker following this line, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_newline_marker: Option<String>,
}

/// One contiguous change region with `@@` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hunk {
    pub old_start: usize,
    pub old_len: usize,
    pub new_start: usize,
    pub new_len: usize,
    /// The verbatim `@@` header line, including any trailing section text.
    pub header: String,
    pub lines: Vec<LineChange>,
}

impl Hunk {
    /// Iterate over body lines of the given kind.
    pub fn lines_of(&self, kind: LineKind) -> impl Iterator<Item = &LineChange> {
        self.lines.iter().filter(move |l| l.kind == kind)
    }

    /// Old-file line number of the first removed or context line (falls back
    /// to `old_start` for pure insertions).
    pub fn first_old_line(&self) -> usize {
        self.old_start.max(1)
    }
}

/// All hunks touching one file, with the verbatim header lines that preceded
/// the first hunk (`diff --git`, `index`, `---`, `+++`, and any preamble).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDiff {
    pub old_path: String,
    pub new_path: String,
    pub header_lines: Vec<String>,
    pub hunks: Vec<Hunk>,
}

/// A parsed unified diff.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Patch {
    pub files: Vec<FileDiff>,
    /// Verbatim lines after the last hunk (e.g. `--` / version trailer from
    /// `git format-patch`).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trailing_lines: Vec<String>,
    /// Whether the input ended with a newline.
    #[serde(default = "default_true")]
    pub ends_with_newline: bool,
}

fn default_true() -> bool {
    true
}

impl Patch {
    /// Total number of hunks across all files.
    pub fn hunk_count(&self) -> usize {
        self.files.iter().map(|f| f.hunks.len()).sum()
    }

    /// Hunks paired with their flat index and owning file.
    pub fn indexed_hunks(&self) -> impl Iterator<Item = (usize, &FileDiff, &Hunk)> {
        self.files
            .iter()
            .flat_map(|f| f.hunks.iter().map(move |h| (f, h)))
            .enumerate()
            .map(|(i, (f, h))| (i, f, h))
    }
}

/// Parse a git-style unified diff.
///
/// Returns [`DiffError::EmptyDiff`] for input with no hunks and
/// [`DiffError::BadHunkHeader`] (with a 1-based line number) for malformed
/// headers or bodies that do not match their declared counts.
pub fn parse_unified_diff(text: &str) -> Result<Patch, DiffError> {
    if text.trim().is_empty() {
        return Err(DiffError::EmptyDiff);
    }
    let ends_with_newline = text.ends_with('\n');
    let mut lines: Vec<&str> = text.split('\n').collect();
    if ends_with_newline {
        lines.pop();
    }

    let mut files: Vec<FileDiff> = Vec::new();
    let mut pending: Vec<String> = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i];
        if !line.starts_with("@@") {
            pending.push(line.to_string());
            i += 1;
            continue;
        }
        let header_line_no = i + 1;
        let (old_start, old_len, new_start, new_len) =
            parse_hunk_header(line).ok_or(DiffError::BadHunkHeader(header_line_no))?;

        if pending.iter().any(|l| l.starts_with("+++")) {
            let old_path = pending
                .iter()
                .rev()
                .find_map(|l| marker_path(l, "---"))
                .ok_or(DiffError::BadHunkHeader(header_line_no))?;
            let new_path = pending
                .iter()
                .rev()
                .find_map(|l| marker_path(l, "+++"))
                .ok_or(DiffError::BadHunkHeader(header_line_no))?;
            files.push(FileDiff {
                old_path,
                new_path,
                header_lines: std::mem::take(&mut pending),
                hunks: Vec::new(),
            });
        } else if files.is_empty() || !pending.is_empty() {
            // Hunk outside a file section, or stray lines between hunks.
            return Err(DiffError::BadHunkHeader(header_line_no));
        }

        let mut body = Vec::new();
        let mut old_seen = 0usize;
        let mut new_seen = 0usize;
        i += 1;
        while old_seen < old_len || new_seen < new_len {
            let Some(&body_line) = lines.get(i) else {
                return Err(DiffError::BadHunkHeader(header_line_no));
            };
            let mut chars = body_line.chars();
            match chars.next() {
                Some(' ') if old_seen < old_len && new_seen < new_len => {
                    old_seen += 1;
                    new_seen += 1;
                    body.push(LineChange {
                        kind: LineKind::Context,
                        text: chars.as_str().to_string(),
                        no_newline_marker: None,
                    });
                }
                Some('-') if old_seen < old_len => {
                    old_seen += 1;
                    body.push(LineChange {
                        kind: LineKind::Removed,
                        text: chars.as_str().to_string(),
                        no_newline_marker: None,
                    });
                }
                Some('+') if new_seen < new_len => {
                    new_seen += 1;
                    body.push(LineChange {
                        kind: LineKind::Added,
                        text: chars.as_str().to_string(),
                        no_newline_marker: None,
                    });
                }
                Some('\\') => match body.last_mut() {
                    Some(prev) => prev.no_newline_marker = Some(body_line.to_string()),
                    None => return Err(DiffError::BadHunkHeader(header_line_no)),
                },
                _ => return Err(DiffError::BadHunkHeader(header_line_no)),
            }
            i += 1;
        }
        // A no-newline marker may follow the final body line.
        if let Some(&after) = lines.get(i) {
            if after.starts_with('\\') {
                if let Some(prev) = body.last_mut() {
                    prev.no_newline_marker = Some(after.to_string());
                    i += 1;
                }
            }
        }

        files
            .last_mut()
            .expect("file section exists before hunk")
            .hunks
            .push(Hunk {
                old_start,
                old_len,
                new_start,
                new_len,
                header: line.to_string(),
                lines: body,
            });
    }

    if files.is_empty() {
        return Err(DiffError::EmptyDiff);
    }
    Ok(Patch {
        files,
        trailing_lines: pending,
        ends_with_newline,
    })
}

/// Render a patch back to text. Inverse of [`parse_unified_diff`]: the output
/// is byte-identical to the parsed input.
pub fn render_patch(patch: &Patch) -> String {
    let mut out = String::new();
    for file in &patch.files {
        for line in &file.header_lines {
            out.push_str(line);
            out.push('\n');
        }
        for hunk in &file.hunks {
            out.push_str(&hunk.header);
            out.push('\n');
            for lc in &hunk.lines {
                out.push(match lc.kind {
                    LineKind::Added => '+',
                    LineKind::Removed => '-',
                    LineKind::Context => ' ',
                });
                out.push_str(&lc.text);
                out.push('\n');
                if let Some(marker) = &lc.no_newline_marker {
                    out.push_str(marker);
                    out.push('\n');
                }
            }
        }
    }
    for line in &patch.trailing_lines {
        out.push_str(line);
        out.push('\n');
    }
    if !patch.ends_with_newline && out.ends_with('\n') {
        out.pop();
    }
    out
}

/// Parse `@@ -a[,b] +c[,d] @@ ...` into (old_start, old_len, new_start, new_len).
fn parse_hunk_header(line: &str) -> Option<(usize, usize, usize, usize)> {
    let rest = line.strip_prefix("@@ -")?;
    let (old_part, rest) = rest.split_once(' ')?;
    let new_part_end = rest.find(" @@")?;
    if !rest[new_part_end..].starts_with(" @@") {
        return None;
    }
    let new_part = rest[..new_part_end].strip_prefix('+')?;
    let (old_start, old_len) = parse_range(old_part)?;
    let (new_start, new_len) = parse_range(new_part)?;
    Some((old_start, old_len, new_start, new_len))
}

fn parse_range(part: &str) -> Option<(usize, usize)> {
    match part.split_once(',') {
        Some((start, len)) => Some((start.parse().ok()?, len.parse().ok()?)),
        None => Some((part.parse().ok()?, 1)),
    }
}

/// Extract the path from a `--- ` / `+++ ` marker line, stripping the
/// customary `a/` or `b/` prefix and any timestamp after a tab.
fn marker_path(line: &str, marker: &str) -> Option<String> {
    let rest = line.strip_prefix(marker)?.strip_prefix(' ')?;
    let path = rest.split('\t').next().unwrap_or(rest);
    let path = path
        .strip_prefix("a/")
        .or_else(|| path.strip_prefix("b/"))
        .unwrap_or(path);
    Some(path.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "--- a/f.c\n+++ b/f.c\n@@ -10,3 +10,4 @@\n a\n b\n+new\n c\n";

    #[test]
    fn parses_minimal_diff() {
        let patch = parse_unified_diff(MINIMAL).unwrap();
        assert_eq!(patch.files.len(), 1);
        let file = &patch.files[0];
        assert_eq!(file.old_path, "f.c");
        assert_eq!(file.new_path, "f.c");
        let hunk = &file.hunks[0];
        assert_eq!(
            (hunk.old_start, hunk.old_len, hunk.new_start, hunk.new_len),
            (10, 3, 10, 4)
        );
        let added: Vec<_> = hunk.lines_of(LineKind::Added).collect();
        assert_eq!(added.len(), 1);
        assert_eq!(added[0].text, "new");
    }

    #[test]
    fn empty_input_is_empty_diff() {
        assert_eq!(parse_unified_diff(""), Err(DiffError::EmptyDiff));
        assert_eq!(parse_unified_diff("  \n \n"), Err(DiffError::EmptyDiff));
        assert_eq!(
            parse_unified_diff("just some text\nwithout hunks\n"),
            Err(DiffError::EmptyDiff)
        );
    }

    #[test]
    fn bad_header_reports_line_number() {
        let text = "--- a/f.c\n+++ b/f.c\n@@ -x,3 +10,4 @@\n";
        assert_eq!(parse_unified_diff(text), Err(DiffError::BadHunkHeader(3)));
    }

    #[test]
    fn short_body_is_rejected() {
        let text = "--- a/f.c\n+++ b/f.c\n@@ -1,2 +1,2 @@\n a\n";
        assert_eq!(parse_unified_diff(text), Err(DiffError::BadHunkHeader(3)));
    }

    #[test]
    fn wrong_prefix_in_body_is_rejected() {
        let text = "--- a/f.c\n+++ b/f.c\n@@ -1,1 +1,1 @@\n? what\n";
        assert_eq!(parse_unified_diff(text), Err(DiffError::BadHunkHeader(3)));
    }

    #[test]
    fn hunk_without_file_header_is_rejected() {
        let text = "@@ -1,1 +1,1 @@\n-a\n+b\n";
        assert_eq!(parse_unified_diff(text), Err(DiffError::BadHunkHeader(1)));
    }

    #[test]
    fn round_trips_byte_exactly() {
        let text = concat!(
            "diff --git a/drivers/usb/core.c b/drivers/usb/core.c\n",
            "index 1111111..2222222 100644\n",
            "--- a/drivers/usb/core.c\n",
            "+++ b/drivers/usb/core.c\n",
            "@@ -100,6 +100,7 @@ static int usb_probe(struct usb_device *dev)\n",
            " \tif (err) {\n",
            " \t\tdev_err(&dev->dev, \"probe failed\");\n",
            "+\t\tusb_put_dev(dev);\n",
            " \t\treturn err;\n",
            " \t}\n",
            " \treturn 0;\n",
            " }\n",
        );
        let patch = parse_unified_diff(text).unwrap();
        assert_eq!(render_patch(&patch), text);
    }

    #[test]
    fn round_trips_multi_file_and_headerless_lengths() {
        let text = concat!(
            "--- a/one.c\n",
            "+++ b/one.c\n",
            "@@ -1 +1,2 @@\n",
            "-old\n",
            "+new\n",
            "+more\n",
            "--- a/two.c\n",
            "+++ b/two.c\n",
            "@@ -5,2 +5,2 @@ int main(void)\n",
            " ctx\n",
            "-a\n",
            "+b\n",
        );
        let patch = parse_unified_diff(text).unwrap();
        assert_eq!(patch.files.len(), 2);
        assert_eq!(patch.files[0].hunks[0].old_len, 1);
        assert_eq!(render_patch(&patch), text);
    }

    #[test]
    fn round_trips_no_newline_marker() {
        let text = concat!(
            "--- a/f.txt\n",
            "+++ b/f.txt\n",
            "@@ -1 +1 @@\n",
            "-old\n",
            "\\ No newline at end of file\n",
            "+new\n",
            "\\ No newline at end of file\n",
        );
        let patch = parse_unified_diff(text).unwrap();
        assert_eq!(render_patch(&patch), text);
    }

    #[test]
    fn preserves_preamble_and_trailer() {
        let text = concat!(
            "From 0123abc Mon Sep 17 00:00:00 2001\n",
            "Subject: [PATCH] fix leak\n",
            "\n",
            "--- a/f.c\n",
            "+++ b/f.c\n",
            "@@ -1,1 +1,1 @@\n",
            "-a\n",
            "+b\n",
            "-- \n",
            "2.40.0\n",
        );
        let patch = parse_unified_diff(text).unwrap();
        assert_eq!(patch.files[0].header_lines.len(), 5);
        assert_eq!(patch.trailing_lines, vec!["-- ", "2.40.0"]);
        assert_eq!(render_patch(&patch), text);
    }

    #[test]
    fn dev_null_paths_are_kept() {
        let text = "--- /dev/null\n+++ b/new.c\n@@ -0,0 +1,1 @@\n+int x;\n";
        let patch = parse_unified_diff(text).unwrap();
        assert_eq!(patch.files[0].old_path, "/dev/null");
        assert_eq!(patch.files[0].new_path, "new.c");
        assert_eq!(render_patch(&patch), text);
    }
}
