//! Tokenization and string hashing shared by the text features.

use alloc::string::String;
use alloc::vec::Vec;

/// Lowercased alphanumeric tokens, split at any non-alphanumeric character.
/// Unicode-aware, so German umlauts stay inside tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_lowercase())
        .collect()
}

/// FNV-1a, the fixed 64-bit token hash used by simhash and the hashed
/// tf-idf block. Stable across runs and platforms.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn tokenize_splits_and_lowercases() {
        assert_eq!(tokenize("Wählt #AfD!"), vec!["wählt", "afd"]);
        assert_eq!(tokenize("  "), Vec::<String>::new());
    }

    #[test]
    fn fnv_known_value() {
        // Reference value for "a" from the FNV specification.
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
    }
}
