//! Compression-based redundancy measure: repetitive timelines compress
//! far below their original size.

use alloc::string::String;
use alloc::vec::Vec;
use miniz_oxide::deflate::compress_to_vec;

const DEFLATE_LEVEL: u8 = 6;

/// DEFLATE the newline-joined texts at level 6 and return
/// `compressed_bytes / original_bytes`.
///
/// May exceed 1.0 for tiny inputs (stream overhead). Empty input yields 1.0.
pub fn zip_ratio<S: AsRef<str>>(texts: &[S]) -> f64 {
    let joined: Vec<&str> = texts.iter().map(|s| s.as_ref()).collect();
    let original: String = joined.join("\n");
    if original.is_empty() {
        return 1.0;
    }
    let compressed = compress_to_vec(original.as_bytes(), DEFLATE_LEVEL);
    compressed.len() as f64 / original.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn repeated_lines_compress_hard() {
        let line = "abcdefghij".repeat(10); // 100 bytes
        let texts = vec![line; 100];
        assert!(zip_ratio(&texts) < 0.1);
    }

    #[test]
    fn high_entropy_barely_compresses() {
        let mut rng = crate::rng::seeded(99);
        let texts: Vec<String> = (0..50)
            .map(|_| {
                (0..64)
                    .map(|_| {
                        let b = crate::rng::gen_index(&mut rng, 16);
                        core::char::from_digit(b as u32, 16).unwrap()
                    })
                    .collect()
            })
            .collect();
        assert!(zip_ratio(&texts) > 0.5);
    }

    #[test]
    fn single_char_overhead_allowed() {
        let r = zip_ratio(&["a".to_string()]);
        assert!(r > 1.0);
    }
}
