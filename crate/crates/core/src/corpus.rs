//! Exhaustive braid-word families and the line-oriented corpus file format:
//! one braid word per line, `#` starts a comment, blank lines are skipped.

use crate::diagram::{parse_braid, BraidWord};
use crate::error::Result;

/// The corpus shipped with the crate: every braid word with at most 3
/// strands and at most 5 letters.
pub const BUNDLED: &str = include_str!("../data/corpus.txt");

/// Every braid word on `1..=max_strands` strands with at most `max_len`
/// letters, ordered by strands, then length, then letters lexicographically
/// in the order `1, -1, 2, -2, ...`.
pub fn all_braids(max_strands: usize, max_len: usize) -> Vec<BraidWord> {
    let mut out = Vec::new();
    for strands in 1..=max_strands {
        let alphabet: Vec<i32> = (1..strands as i32).flat_map(|g| [g, -g]).collect();
        let mut words: Vec<Vec<i32>> = vec![Vec::new()];
        for len in 0..=max_len {
            if len > 0 {
                if alphabet.is_empty() {
                    break;
                }
                words = words
                    .iter()
                    .flat_map(|w| {
                        alphabet.iter().map(move |&g| {
                            let mut v = w.clone();
                            v.push(g);
                            v
                        })
                    })
                    .collect();
            }
            out.extend(
                words
                    .iter()
                    .map(|w| BraidWord::new(strands, w.clone()).expect("letters in range")),
            );
        }
    }
    out
}

/// A non-comment line of a corpus file.
#[derive(Debug)]
pub struct CorpusLine {
    /// 1-based line number
    pub line: usize,
    pub text: String,
    pub braid: Result<BraidWord>,
}

pub fn parse_corpus(text: &str) -> Vec<CorpusLine> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let t = raw.split('#').next().unwrap_or("").trim();
            (!t.is_empty()).then(|| CorpusLine {
                line: i + 1,
                text: t.to_string(),
                braid: parse_braid(t),
            })
        })
        .collect()
}

pub fn render_corpus(braids: &[BraidWord]) -> String {
    let mut out = String::from("# every braid word with at most 3 strands and at most 5 letters\n");
    for b in braids {
        out.push_str(&b.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        // 1 + (2^6 - 1) + (4^6 - 1)/3
        assert_eq!(all_braids(3, 5).len(), 1 + 63 + 1365);
        assert_eq!(all_braids(1, 4).len(), 1);
        assert_eq!(all_braids(2, 2).len(), 1 + 7);
    }

    #[test]
    fn bundled_matches_generator() {
        let lines = parse_corpus(BUNDLED);
        let parsed: Vec<BraidWord> = lines.into_iter().map(|l| l.braid.unwrap()).collect();
        assert_eq!(parsed, all_braids(3, 5));
        assert_eq!(BUNDLED, render_corpus(&all_braids(3, 5)));
    }

    #[test]
    fn comments_and_errors() {
        let lines = parse_corpus("# header\n2: 1 1 # trailing\n\n2: 5\n");
        assert_eq!(lines.len(), 2);
        assert_eq!((lines[0].line, lines[0].text.as_str()), (2, "2: 1 1"));
        assert!(lines[0].braid.is_ok());
        assert_eq!(lines[1].line, 4);
        assert!(lines[1].braid.is_err());
    }
}
