use std::collections::HashSet;

/// Maps a type name to a table suffix: characters outside `[A-Za-z0-9_]` are
/// dropped, and when the result is empty or already taken the smallest
/// positive integer restoring uniqueness is appended.
///
/// `taken` is compared case-insensitively because SQLite table names are.
pub fn map_type_name(type_name: &str, taken: &HashSet<String>) -> String {
    let is_taken = |candidate: &str| taken.iter().any(|t| t.eq_ignore_ascii_case(candidate));
    let base: String = type_name
        .chars()
        .filter(|c| c.is_ascii_alphanumeric() || *c == '_')
        .collect();
    if !base.is_empty() && !is_taken(&base) {
        return base;
    }
    (1u64..)
        .map(|n| format!("{base}{n}"))
        .find(|candidate| !is_taken(candidate))
        .expect("unbounded suffix search")
}

/// Assigns table suffixes to a sequence of type names of one category.
///
/// Suffixes that would make a per-type table collide with one of the fixed
/// tables (`event_map_type`, `event_object`, `object_map_type`,
/// `object_object`) are reserved up front.
#[derive(Debug, Clone)]
pub struct TypeNameMapper {
    taken: HashSet<String>,
}

impl Default for TypeNameMapper {
    fn default() -> Self {
        Self {
            taken: ["map_type", "object"].into_iter().map(String::from).collect(),
        }
    }
}

impl TypeNameMapper {
    pub fn assign(&mut self, type_name: &str) -> String {
        let mapped = map_type_name(type_name, &self.taken);
        self.taken.insert(mapped.to_ascii_lowercase());
        mapped
    }
}

pub fn is_valid_mapped_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}
