//! Lexical classification of added/removed diff lines into fix-statement
//! categories.
//!
//! Classification is token scanning, not parsing: it is deterministic, total
//! over arbitrary line text, and tuned for C-family source. Categories are
//! deliberately coarse; the consistency checker consumes them as evidence.

use super::lexicon::{ApiFamily, ApiLexicon};
use super::{Hunk, LineKind, Patch};
use serde::{Deserialize, Serialize};

/// Category of one classified statement change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChangeCategory {
    AddedCheck,
    AddedCall,
    RemovedCall,
    ReplacedCall,
    AddedAssignment,
    AddedInitialization,
    AddedReturnPath,
    ModifiedCondition,
    ModifiedSizeExpr,
    Other,
}

impl std::fmt::Display for ChangeCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ChangeCategory::AddedCheck => "added-check",
            ChangeCategory::AddedCall => "added-call",
            ChangeCategory::RemovedCall => "removed-call",
            ChangeCategory::ReplacedCall => "replaced-call",
            ChangeCategory::AddedAssignment => "added-assignment",
            ChangeCategory::AddedInitialization => "added-initialization",
            ChangeCategory::AddedReturnPath => "added-return-path",
            ChangeCategory::ModifiedCondition => "modified-condition",
            ChangeCategory::ModifiedSizeExpr => "modified-size-expr",
            ChangeCategory::Other => "other",
        };
        f.write_str(s)
    }
}

/// One classified statement change within a hunk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementChange {
    pub category: ChangeCategory,
    /// Callee name for call-like categories. For [`ChangeCategory::ReplacedCall`]
    /// this is the new callee; the old one is in `old_callee`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub callee: Option<String>,
    /// Old callee of a replaced call.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub old_callee: Option<String>,
    /// Principal identifier (check subject, assignment target, ...).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    /// API families of `callee` per the lexicon used at classification time.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<ApiFamily>,
    /// True when the statement writes a zero/NULL value.
    #[serde(default)]
    pub assigns_zero: bool,
    /// Flat hunk index within the patch.
    pub hunk_index: usize,
}

impl StatementChange {
    fn new(category: ChangeCategory, hunk_index: usize) -> Self {
        StatementChange {
            category,
            callee: None,
            old_callee: None,
            subject: None,
            families: Vec::new(),
            assigns_zero: false,
            hunk_index,
        }
    }
}

impl std::fmt::Display for StatementChange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.category)?;
        match (&self.old_callee, &self.callee) {
            (Some(old), Some(new)) => write!(f, " {old}->{new}")?,
            (None, Some(c)) => write!(f, " {c}")?,
            _ => {
                if let Some(s) = &self.subject {
                    write!(f, " {s}")?;
                }
            }
        }
        if !self.families.is_empty() {
            let fams: Vec<String> = self.families.iter().map(|f| f.to_string()).collect();
            write!(f, " [{}]", fams.join(","))?;
        }
        Ok(())
    }
}

const C_KEYWORDS: &[&str] = &[
    "auto", "break", "case", "char", "const", "continue", "default", "do", "double", "else",
    "enum", "extern", "float", "for", "goto", "if", "inline", "int", "long", "register",
    "restrict", "return", "short", "signed", "sizeof", "static", "struct", "switch", "typedef",
    "union", "unsigned", "void", "volatile", "while", "_Bool", "bool", "true", "false",
];

fn is_keyword(tok: &str) -> bool {
    C_KEYWORDS.contains(&tok)
}

/// Identifier-like tokens of a source line, in order, excluding C keywords
/// and the contents of string/char literals and comments.
pub fn extract_identifiers(line: &str) -> Vec<String> {
    tokens(line)
        .into_iter()
        .filter_map(|t| match t {
            Token::Ident(s) if !is_keyword(&s) => Some(s),
            _ => None,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Punct(char),
    Number(String),
}

/// Tokenize a C-family source line, skipping string/char literal contents and
/// comments.
fn tokens(line: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let bytes: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            '"' | '\'' => {
                let quote = c;
                i += 1;
                while i < bytes.len() {
                    if bytes[i] == '\\' {
                        i += 2;
                        continue;
                    }
                    if bytes[i] == quote {
                        i += 1;
                        break;
                    }
                    i += 1;
                }
            }
            '/' if bytes.get(i + 1) == Some(&'/') => break,
            '/' if bytes.get(i + 1) == Some(&'*') => {
                i += 2;
                while i < bytes.len() {
                    if bytes[i] == '*' && bytes.get(i + 1) == Some(&'/') {
                        i += 2;
                        break;
                    }
                    i += 1;
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(bytes[start..i].iter().collect()));
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '.') {
                    i += 1;
                }
                out.push(Token::Number(bytes[start..i].iter().collect()));
            }
            c if c.is_whitespace() => i += 1,
            c => {
                out.push(Token::Punct(c));
                i += 1;
            }
        }
    }
    out
}

/// Lexical features of one (logical) statement line.
#[derive(Debug, Default)]
struct StatementInfo {
    /// Target identifier of an assignment, if any.
    assign_target: Option<String>,
    /// Callee names in order of appearance.
    callees: Vec<String>,
    /// First callee appearing on the right-hand side of the assignment.
    rhs_callee: Option<String>,
    /// `if`/`while`/`for` condition text, if the line opens one.
    condition: Option<String>,
    has_return_or_goto: bool,
    /// RHS is a literal zero/NULL/empty-braces value.
    assigns_zero_literal: bool,
    raw: String,
}

fn scan_statement(line: &str) -> StatementInfo {
    let toks = tokens(line);
    let mut info = StatementInfo {
        raw: line.trim().to_string(),
        ..Default::default()
    };

    // Condition opener: if / while / for / "else if" followed by '('.
    for (k, t) in toks.iter().enumerate() {
        if let Token::Ident(word) = t {
            if matches!(word.as_str(), "if" | "while" | "for")
                && matches!(toks.get(k + 1), Some(Token::Punct('(')))
            {
                info.condition = Some(condition_text(line, word));
                break;
            }
        }
    }

    info.has_return_or_goto = toks.iter().any(|t| {
        matches!(t, Token::Ident(w) if w == "return" || w == "goto")
    });

    // Callees: identifier directly followed by '(' that is neither a control
    // keyword nor preceded by a type-like token (declaration headers).
    for k in 0..toks.len() {
        let Token::Ident(name) = &toks[k] else {
            continue;
        };
        if is_keyword(name) {
            continue;
        }
        if !matches!(toks.get(k + 1), Some(Token::Punct('('))) {
            continue;
        }
        let decl_like = match k.checked_sub(1).map(|p| &toks[p]) {
            Some(Token::Ident(_)) => true,
            Some(Token::Punct('*')) if k >= 2 && matches!(toks[k - 2], Token::Ident(_)) => true,
            _ => false,
        };
        if !decl_like {
            info.callees.push(name.clone());
        }
    }

    // Assignment: '=' at paren depth >= 0 that is not a comparison. The
    // target is the last identifier before the operator.
    let chars: Vec<char> = line.chars().collect();
    let mut in_str: Option<char> = None;
    for i in 0..chars.len() {
        let c = chars[i];
        if let Some(q) = in_str {
            if c == q && chars.get(i.wrapping_sub(1)) != Some(&'\\') {
                in_str = None;
            }
            continue;
        }
        if c == '"' || c == '\'' {
            in_str = Some(c);
            continue;
        }
        if c != '=' {
            continue;
        }
        let prev = if i > 0 { chars[i - 1] } else { ' ' };
        let next = chars.get(i + 1).copied().unwrap_or(' ');
        if next == '=' || matches!(prev, '=' | '!' | '<' | '>') {
            continue;
        }
        let lhs: String = chars[..i].iter().collect();
        if let Some(target) = extract_identifiers(&lhs).into_iter().last() {
            info.assign_target = Some(target);
            let rhs: String = chars[i + 1..].iter().collect();
            let rhs_trim = rhs.trim().trim_end_matches(';').trim();
            info.assigns_zero_literal = matches!(
                rhs_trim,
                "NULL" | "0" | "{0}" | "{ 0 }" | "{}" | "false" | "nullptr"
            );
            let rhs_info_callees: Vec<String> = tokens(&rhs)
                .windows(2)
                .filter_map(|w| match (&w[0], &w[1]) {
                    (Token::Ident(n), Token::Punct('(')) if !is_keyword(n) => Some(n.clone()),
                    _ => None,
                })
                .collect();
            info.rhs_callee = rhs_info_callees.first().cloned();
        }
        break;
    }

    info
}

/// Text inside the balanced parens following the given control keyword.
fn condition_text(line: &str, keyword: &str) -> String {
    let Some(kw_pos) = line.find(keyword) else {
        return String::new();
    };
    let rest = &line[kw_pos + keyword.len()..];
    let Some(open) = rest.find('(') else {
        return String::new();
    };
    let mut depth = 0usize;
    let mut out = String::new();
    for c in rest[open..].chars() {
        match c {
            '(' => {
                depth += 1;
                if depth == 1 {
                    continue;
                }
            }
            ')' => {
                depth -= 1;
                if depth == 0 {
                    break;
                }
            }
            _ => {}
        }
        out.push(c);
    }
    out
}

/// A condition that guards against null/error values or enforces bounds.
fn is_check_condition(cond: &str) -> bool {
    let c = cond.trim();
    if c.is_empty() {
        return false;
    }
    if c.contains('!') && !c.contains("!=") {
        return true;
    }
    if c.contains("== NULL")
        || c.contains("!= NULL")
        || c.contains("NULL ==")
        || c.contains("NULL !=")
    {
        return true;
    }
    if c.contains("== 0") || c.contains("!= 0") || c.contains("!= NULL") {
        return true;
    }
    if c.contains("IS_ERR") || c.contains("unlikely") {
        return true;
    }
    // Bounds comparison, excluding shifts.
    let chars: Vec<char> = c.chars().collect();
    for i in 0..chars.len() {
        if (chars[i] == '<' || chars[i] == '>')
            && chars.get(i + 1) != Some(&chars[i])
            && chars.get(i.wrapping_sub(1)) != Some(&chars[i])
        {
            return true;
        }
    }
    false
}

fn first_condition_ident(cond: &str) -> Option<String> {
    extract_identifiers(cond)
        .into_iter()
        .find(|id| id != "NULL" && id != "IS_ERR" && id != "unlikely" && id != "likely")
}

/// Size-flavored identifier, used to spot size-expression rewrites.
fn mentions_size_token(text: &str) -> bool {
    extract_identifiers(text).iter().any(|id| {
        let l = id.to_lowercase();
        l == "sizeof"
            || l.contains("size")
            || l.contains("len")
            || l.contains("count")
            || l.contains("nmemb")
    }) || text.contains("sizeof")
}

/// Join line-spliced (`\` continuation) physical lines of the same kind into
/// logical lines. Returns (kind, logical text) pairs for added/removed lines.
fn logical_changes(hunk: &Hunk) -> Vec<(LineKind, String)> {
    let mut out: Vec<(LineKind, String)> = Vec::new();
    let mut pending_splice: Option<(LineKind, String)> = None;
    for lc in &hunk.lines {
        if lc.kind == LineKind::Context {
            if let Some(p) = pending_splice.take() {
                out.push(p);
            }
            continue;
        }
        let text = lc.text.clone();
        if let Some((kind, mut acc)) = pending_splice.take() {
            if kind == lc.kind {
                acc.push(' ');
                acc.push_str(text.trim());
                if acc.trim_end().ends_with('\\') {
                    let trimmed = acc.trim_end().trim_end_matches('\\').to_string();
                    pending_splice = Some((kind, trimmed));
                } else {
                    out.push((kind, acc));
                }
                continue;
            }
            out.push((kind, acc));
        }
        if text.trim_end().ends_with('\\') {
            let trimmed = text.trim_end().trim_end_matches('\\').to_string();
            pending_splice = Some((lc.kind, trimmed));
        } else {
            out.push((lc.kind, text));
        }
    }
    if let Some(p) = pending_splice.take() {
        out.push(p);
    }
    out
}

/// Classify every added/removed line of a hunk into statement changes.
///
/// Adjacent removed/added lines with the same assignment target but different
/// callees merge into a single [`ChangeCategory::ReplacedCall`]; paired
/// condition rewrites become [`ChangeCategory::ModifiedCondition`]; paired
/// same-callee calls with changed size-flavored arguments become
/// [`ChangeCategory::ModifiedSizeExpr`]. Every other added/removed line
/// yields at least one change (category `Other` as the fallback).
pub fn classify_changes(
    hunk: &Hunk,
    lexicon: &ApiLexicon,
    hunk_index: usize,
) -> Vec<StatementChange> {
    let logical = logical_changes(hunk);
    let mut out = Vec::new();
    let mut i = 0;
    while i < logical.len() {
        // Collect a run of removed lines followed by a run of added lines.
        let rm_start = i;
        while i < logical.len() && logical[i].0 == LineKind::Removed {
            i += 1;
        }
        let removed = &logical[rm_start..i];
        let add_start = i;
        while i < logical.len() && logical[i].0 == LineKind::Added {
            i += 1;
        }
        let added = &logical[add_start..i];
        if removed.is_empty() && added.is_empty() {
            i += 1;
            continue;
        }

        let pairs = removed.len().min(added.len());
        let mut removed_done = vec![false; removed.len()];
        let mut added_done = vec![false; added.len()];
        for k in 0..pairs {
            if let Some(change) =
                classify_pair(&removed[k].1, &added[k].1, lexicon, hunk_index)
            {
                out.push(change);
                removed_done[k] = true;
                added_done[k] = true;
            }
        }
        for (k, (_, text)) in removed.iter().enumerate() {
            if !removed_done[k] {
                out.extend(classify_removed(text, lexicon, hunk_index));
            }
        }
        for (k, (_, text)) in added.iter().enumerate() {
            if !added_done[k] {
                out.extend(classify_added(text, lexicon, hunk_index));
            }
        }
    }
    out
}

/// Classify all hunks of a patch, assigning flat hunk indexes.
pub fn classify_patch(patch: &Patch, lexicon: &ApiLexicon) -> Vec<StatementChange> {
    patch
        .indexed_hunks()
        .flat_map(|(idx, _, hunk)| classify_changes(hunk, lexicon, idx))
        .collect()
}

fn classify_pair(
    removed: &str,
    added: &str,
    lexicon: &ApiLexicon,
    hunk_index: usize,
) -> Option<StatementChange> {
    let old = scan_statement(removed);
    let new = scan_statement(added);

    // Same assignment target, different callees: a replaced call.
    if let (Some(old_target), Some(new_target)) = (&old.assign_target, &new.assign_target) {
        if old_target == new_target {
            if let (Some(old_callee), Some(new_callee)) = (&old.rhs_callee, &new.rhs_callee) {
                if old_callee != new_callee {
                    let mut change = StatementChange::new(ChangeCategory::ReplacedCall, hunk_index);
                    change.old_callee = Some(old_callee.clone());
                    change.callee = Some(new_callee.clone());
                    change.subject = Some(new_target.clone());
                    change.families = lexicon.families_of(new_callee);
                    return Some(change);
                }
            }
        }
    }

    // Both open a condition: the condition was modified.
    if let (Some(old_cond), Some(new_cond)) = (&old.condition, &new.condition) {
        if old_cond != new_cond {
            let mut change = StatementChange::new(ChangeCategory::ModifiedCondition, hunk_index);
            change.subject = first_condition_ident(new_cond);
            return Some(change);
        }
    }

    // Same callee, different size-flavored arguments: a size expression change.
    if let (Some(c_old), Some(c_new)) = (old.callees.first(), new.callees.first()) {
        if c_old == c_new
            && old.raw != new.raw
            && (mentions_size_token(removed) || mentions_size_token(added))
        {
            let mut change = StatementChange::new(ChangeCategory::ModifiedSizeExpr, hunk_index);
            change.callee = Some(c_new.clone());
            change.families = lexicon.families_of(c_new);
            return Some(change);
        }
    }

    // Same assignment target, size-flavored RHS rewrite without calls.
    if let (Some(old_target), Some(new_target)) = (&old.assign_target, &new.assign_target) {
        if old_target == new_target
            && old.rhs_callee.is_none()
            && new.rhs_callee.is_none()
            && (mentions_size_token(old_target) || mentions_size_token(added))
        {
            let mut change = StatementChange::new(ChangeCategory::ModifiedSizeExpr, hunk_index);
            change.subject = Some(new_target.clone());
            return Some(change);
        }
    }

    None
}

fn classify_added(text: &str, lexicon: &ApiLexicon, hunk_index: usize) -> Vec<StatementChange> {
    let info = scan_statement(text);
    let mut out = Vec::new();

    if let Some(cond) = &info.condition {
        if is_check_condition(cond) {
            let mut change = StatementChange::new(ChangeCategory::AddedCheck, hunk_index);
            change.subject = first_condition_ident(cond);
            out.push(change);
        }
    }

    if info.has_return_or_goto {
        out.push(StatementChange::new(
            ChangeCategory::AddedReturnPath,
            hunk_index,
        ));
    }

    if let Some(target) = &info.assign_target {
        if info.assigns_zero_literal {
            let mut change = StatementChange::new(ChangeCategory::AddedInitialization, hunk_index);
            change.subject = Some(target.clone());
            change.assigns_zero = true;
            out.push(change);
        } else {
            let mut change = StatementChange::new(ChangeCategory::AddedAssignment, hunk_index);
            change.subject = Some(target.clone());
            out.push(change);
        }
        if let Some(callee) = &info.rhs_callee {
            let families = lexicon.families_of(callee);
            if families.contains(&ApiFamily::ZeroAlloc) || is_zeroing_call(callee) {
                let mut change =
                    StatementChange::new(ChangeCategory::AddedInitialization, hunk_index);
                change.callee = Some(callee.clone());
                change.subject = Some(target.clone());
                change.families = families.clone();
                change.assigns_zero = true;
                out.push(change);
            }
            let mut change = StatementChange::new(ChangeCategory::AddedCall, hunk_index);
            change.callee = Some(callee.clone());
            change.subject = Some(target.clone());
            change.families = families;
            out.push(change);
        }
    } else if info.condition.is_none() {
        if let Some(callee) = info.callees.first() {
            if is_zeroing_call(callee) {
                let mut change =
                    StatementChange::new(ChangeCategory::AddedInitialization, hunk_index);
                change.callee = Some(callee.clone());
                change.assigns_zero = true;
                out.push(change);
            } else {
                let mut change = StatementChange::new(ChangeCategory::AddedCall, hunk_index);
                change.callee = Some(callee.clone());
                change.families = lexicon.families_of(callee);
                out.push(change);
            }
        }
    }

    if out.is_empty() {
        let mut change = StatementChange::new(ChangeCategory::Other, hunk_index);
        change.subject = extract_identifiers(text).into_iter().next();
        out.push(change);
    }
    out
}

fn classify_removed(text: &str, lexicon: &ApiLexicon, hunk_index: usize) -> Vec<StatementChange> {
    let info = scan_statement(text);
    let callee = info.rhs_callee.clone().or_else(|| info.callees.first().cloned());
    match callee {
        Some(callee) if info.condition.is_none() => {
            let mut change = StatementChange::new(ChangeCategory::RemovedCall, hunk_index);
            change.families = lexicon.families_of(&callee);
            change.callee = Some(callee);
            change.subject = info.assign_target.clone();
            vec![change]
        }
        _ => {
            let mut change = StatementChange::new(ChangeCategory::Other, hunk_index);
            change.subject = extract_identifiers(text).into_iter().next();
            vec![change]
        }
    }
}

fn is_zeroing_call(callee: &str) -> bool {
    matches!(callee, "memset" | "bzero" | "memzero_explicit")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patch::parse_unified_diff;

    fn hunk_from(body: &str) -> Hunk {
        // Wrap the body lines in a minimal synthetic diff.
        let old: usize = body
            .lines()
            .filter(|l| l.starts_with('-') || l.starts_with(' '))
            .count();
        let new: usize = body
            .lines()
            .filter(|l| l.starts_with('+') || l.starts_with(' '))
            .count();
        let text = format!(
            "--- a/t.c\n+++ b/t.c\n@@ -1,{old} +1,{new} @@\n{body}",
            old = old.max(1),
            new = new.max(1),
        );
        let mut patch = parse_unified_diff(&text).unwrap();
        patch.files.remove(0).hunks.remove(0)
    }

    fn classify(body: &str) -> Vec<StatementChange> {
        classify_changes(&hunk_from(body), &ApiLexicon::builtin(), 0)
    }

    #[test]
    fn added_check_and_return_path() {
        let changes = classify("+\tif (!dev)\n+\t\treturn -ENOMEM;\n ctx\n");
        assert_eq!(changes.len(), 2);
        assert_eq!(changes[0].category, ChangeCategory::AddedCheck);
        assert_eq!(changes[0].subject.as_deref(), Some("dev"));
        assert_eq!(changes[1].category, ChangeCategory::AddedReturnPath);
    }

    #[test]
    fn added_release_call_gets_family() {
        let changes = classify("+\tusb_put_dev(dev);\n ctx\n");
        assert_eq!(changes.len(), 1);
        assert_eq!(changes[0].category, ChangeCategory::AddedCall);
        assert_eq!(changes[0].callee.as_deref(), Some("usb_put_dev"));
        assert_eq!(changes[0].families, vec![ApiFamily::Release]);
    }

    #[test]
    fn replaced_call_merges_pair() {
        let changes = classify("-\tx = kmalloc(n, f);\n+\tx = kzalloc(n, f);\n");
        assert_eq!(changes.len(), 1);
        let c = &changes[0];
        assert_eq!(c.category, ChangeCategory::ReplacedCall);
        assert_eq!(c.old_callee.as_deref(), Some("kmalloc"));
        assert_eq!(c.callee.as_deref(), Some("kzalloc"));
        assert_eq!(c.subject.as_deref(), Some("x"));
        assert!(c.families.contains(&ApiFamily::ZeroAlloc));
    }

    #[test]
    fn modified_condition_merges_pair() {
        let changes = classify("-\tif (len > 16)\n+\tif (len > 16 && len < max)\n");
        assert_eq!(changes.len(), 1);
        assert_eq!(changes[0].category, ChangeCategory::ModifiedCondition);
        assert_eq!(changes[0].subject.as_deref(), Some("len"));
    }

    #[test]
    fn modified_size_expr_same_callee() {
        let changes = classify("-\tmemcpy(dst, src, len);\n+\tmemcpy(dst, src, len + 1);\n");
        assert_eq!(changes.len(), 1);
        assert_eq!(changes[0].category, ChangeCategory::ModifiedSizeExpr);
        assert_eq!(changes[0].callee.as_deref(), Some("memcpy"));
    }

    #[test]
    fn null_assignment_is_initialization() {
        let changes = classify("+\tptr = NULL;\n ctx\n");
        assert_eq!(changes.len(), 1);
        assert_eq!(changes[0].category, ChangeCategory::AddedInitialization);
        assert!(changes[0].assigns_zero);
        assert_eq!(changes[0].subject.as_deref(), Some("ptr"));
    }

    #[test]
    fn memset_is_initialization() {
        let changes = classify("+\tmemset(buf, 0, sizeof(buf));\n ctx\n");
        assert_eq!(changes.len(), 1);
        assert_eq!(changes[0].category, ChangeCategory::AddedInitialization);
        assert_eq!(changes[0].callee.as_deref(), Some("memset"));
    }

    #[test]
    fn removed_free_call() {
        let changes = classify("-\tkfree(obj);\n ctx\n");
        assert_eq!(changes.len(), 1);
        assert_eq!(changes[0].category, ChangeCategory::RemovedCall);
        assert_eq!(changes[0].callee.as_deref(), Some("kfree"));
        assert_eq!(changes[0].families, vec![ApiFamily::Release]);
    }

    #[test]
    fn unclassifiable_line_is_other() {
        let changes = classify("+\t}\n ctx\n");
        assert_eq!(changes.len(), 1);
        assert_eq!(changes[0].category, ChangeCategory::Other);
    }

    #[test]
    fn classification_is_total_on_junk() {
        for junk in ["+\0\0", "+∆∆∆ (", "+((((", "+\"unterminated", "+/* open"] {
            let body = format!("{junk}\n ctx\n");
            let changes = classify(&body);
            assert!(!changes.is_empty());
        }
    }

    #[test]
    fn spliced_lines_join_before_classification() {
        let changes = classify("+\tif (!dev || \\\n+\t    !dev->parent)\n+\t\treturn -EINVAL;\n");
        assert_eq!(changes[0].category, ChangeCategory::AddedCheck);
        assert_eq!(changes[0].subject.as_deref(), Some("dev"));
        assert_eq!(changes[1].category, ChangeCategory::AddedReturnPath);
    }

    #[test]
    fn call_assignment_yields_assignment_and_call() {
        let changes = classify("+\tbuf = g_strdup_printf(fmt, a);\n ctx\n");
        let cats: Vec<_> = changes.iter().map(|c| c.category).collect();
        assert!(cats.contains(&ChangeCategory::AddedAssignment));
        assert!(cats.contains(&ChangeCategory::AddedCall));
    }

    #[test]
    fn extract_identifiers_examples() {
        assert_eq!(
            extract_identifiers("if (!dev) return -ENOMEM;"),
            vec!["dev", "ENOMEM"]
        );
        assert_eq!(extract_identifiers(""), Vec::<String>::new());
        assert_eq!(
            extract_identifiers("x = foo(y, z);"),
            vec!["x", "foo", "y", "z"]
        );
        // String literals and comments do not contribute identifiers.
        assert_eq!(
            extract_identifiers("printf(\"err %d\", rc); // report rc"),
            vec!["printf", "rc"]
        );
    }
}
