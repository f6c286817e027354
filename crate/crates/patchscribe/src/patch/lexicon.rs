//! API-family lexicon used to tag call statements (allocation, release,
//! zero-initializing allocation).
//!
//! The built-in families cover the common C/kernel allocation and release
//! APIs. Users can override them with a config file: one `[family]` section
//! header per family, one name or suffix/prefix glob per line, `#` comments.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use thiserror::Error;

/// The API family a callee belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApiFamily {
    /// Memory/resource acquisition (`malloc`, `kmalloc`, ...).
    Alloc,
    /// Memory/resource release (`free`, `kfree`, `*_put`, ...).
    Release,
    /// Allocation that zeroes the returned memory (`kzalloc`, `calloc`, ...).
    ZeroAlloc,
}

impl ApiFamily {
    fn from_section(name: &str) -> Option<Self> {
        match name {
            "alloc" => Some(ApiFamily::Alloc),
            "release" => Some(ApiFamily::Release),
            "zero-alloc" | "zero_alloc" => Some(ApiFamily::ZeroAlloc),
            _ => None,
        }
    }
}

impl fmt::Display for ApiFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApiFamily::Alloc => write!(f, "alloc"),
            ApiFamily::Release => write!(f, "release"),
            ApiFamily::ZeroAlloc => write!(f, "zero-alloc"),
        }
    }
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("failed to read lexicon file: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {0}: entry appears before any [family] section")]
    EntryOutsideSection(usize),
    #[error("line {0}: unknown family section '{1}' (expected alloc, release, zero-alloc)")]
    UnknownFamily(usize, String),
}

/// Patterns for one family: exact names plus suffix/prefix globs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct FamilyPatterns {
    exact: Vec<String>,
    /// `*_free` stored as `_free`.
    suffixes: Vec<String>,
    /// `kmem_*` stored as `kmem_`.
    prefixes: Vec<String>,
}

impl FamilyPatterns {
    fn add(&mut self, pattern: &str) {
        if let Some(suffix) = pattern.strip_prefix('*') {
            self.suffixes.push(suffix.to_string());
        } else if let Some(prefix) = pattern.strip_suffix('*') {
            self.prefixes.push(prefix.to_string());
        } else {
            self.exact.push(pattern.to_string());
        }
    }

    fn matches(&self, name: &str) -> bool {
        self.exact.iter().any(|e| e == name)
            || self.suffixes.iter().any(|s| name.ends_with(s.as_str()))
            || self.prefixes.iter().any(|p| name.starts_with(p.as_str()))
    }
}

/// Maps callee names to API families, with glob support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiLexicon {
    families: BTreeMap<ApiFamily, FamilyPatterns>,
}

impl Default for ApiLexicon {
    fn default() -> Self {
        Self::builtin()
    }
}

impl ApiLexicon {
    /// The built-in family definitions.
    pub fn builtin() -> Self {
        let mut lex = ApiLexicon {
            families: BTreeMap::new(),
        };
        for name in [
            "malloc",
            "kmalloc",
            "kzalloc",
            "kcalloc",
            "calloc",
            "realloc",
            "krealloc",
            "vmalloc",
            "kvmalloc",
            "devm_kzalloc",
            "kmem_cache_alloc",
            "g_malloc",
            "g_malloc0",
            "g_strdup",
            "g_strdup_printf",
            "strdup",
            "kstrdup",
            "alloc_pages",
        ] {
            lex.add(ApiFamily::Alloc, name);
        }
        for name in [
            "free",
            "kfree",
            "kvfree",
            "vfree",
            "kfree_sensitive",
            "kmem_cache_free",
            "g_free",
            "fclose",
            "usb_put_dev",
            "kobject_put",
            "fput",
            "dput",
            "put_device",
            "*_free",
            "*_put",
            "*_release",
            "*_destroy",
        ] {
            lex.add(ApiFamily::Release, name);
        }
        for name in ["kzalloc", "kcalloc", "calloc", "devm_kzalloc", "g_malloc0"] {
            lex.add(ApiFamily::ZeroAlloc, name);
        }
        lex
    }

    /// An empty lexicon (no families match anything).
    pub fn empty() -> Self {
        ApiLexicon {
            families: BTreeMap::new(),
        }
    }

    /// Add a name or glob pattern to a family.
    pub fn add(&mut self, family: ApiFamily, pattern: &str) {
        self.families.entry(family).or_default().add(pattern);
    }

    /// All families the callee belongs to, in a fixed order.
    pub fn families_of(&self, callee: &str) -> Vec<ApiFamily> {
        self.families
            .iter()
            .filter(|(_, pats)| pats.matches(callee))
            .map(|(fam, _)| *fam)
            .collect()
    }

    /// Whether the callee is in the given family.
    pub fn is_in(&self, callee: &str, family: ApiFamily) -> bool {
        self.families
            .get(&family)
            .is_some_and(|pats| pats.matches(callee))
    }

    /// Parse a lexicon config file, replacing the built-in families.
    pub fn from_file(path: &Path) -> Result<Self, LexiconError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str_config(&text)
    }

    /// Parse the config format from a string.
    pub fn from_str_config(text: &str) -> Result<Self, LexiconError> {
        let mut lex = ApiLexicon::empty();
        let mut current: Option<ApiFamily> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(section) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                current = Some(
                    ApiFamily::from_section(section.trim())
                        .ok_or_else(|| LexiconError::UnknownFamily(line_no, section.into()))?,
                );
                continue;
            }
            let family = current.ok_or(LexiconError::EntryOutsideSection(line_no))?;
            lex.add(family, line);
        }
        Ok(lex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_families() {
        let lex = ApiLexicon::builtin();
        assert_eq!(lex.families_of("kmalloc"), vec![ApiFamily::Alloc]);
        assert_eq!(
            lex.families_of("kzalloc"),
            vec![ApiFamily::Alloc, ApiFamily::ZeroAlloc]
        );
        assert_eq!(lex.families_of("usb_put_dev"), vec![ApiFamily::Release]);
        assert!(lex.families_of("printk").is_empty());
    }

    #[test]
    fn suffix_globs_match() {
        let lex = ApiLexicon::builtin();
        assert!(lex.is_in("netdev_free", ApiFamily::Release));
        assert!(lex.is_in("dev_put", ApiFamily::Release));
        assert!(lex.is_in("blk_mq_destroy", ApiFamily::Release));
        assert!(!lex.is_in("put_user", ApiFamily::Release));
    }

    #[test]
    fn config_file_round_trip() {
        let cfg = "# custom lexicon\n[alloc]\nmy_alloc\nx_*\n\n[release]\n*_drop\n";
        let lex = ApiLexicon::from_str_config(cfg).unwrap();
        assert!(lex.is_in("my_alloc", ApiFamily::Alloc));
        assert!(lex.is_in("x_new", ApiFamily::Alloc));
        assert!(lex.is_in("ref_drop", ApiFamily::Release));
        assert!(!lex.is_in("kmalloc", ApiFamily::Alloc));
    }

    #[test]
    fn config_errors() {
        assert!(matches!(
            ApiLexicon::from_str_config("kmalloc\n"),
            Err(LexiconError::EntryOutsideSection(1))
        ));
        assert!(matches!(
            ApiLexicon::from_str_config("[mystery]\n"),
            Err(LexiconError::UnknownFamily(1, _))
        ));
    }
}
