//! Sentence segmentation and the tokenization pipeline.

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Token = String;

const STOPWORDS_EN: &str = include_str!("stopwords_en.txt");

/// Words followed by a period that never end a sentence.
const ABBREVIATIONS: &[&str] = &[
    "adm", "apr", "aug", "ave", "blvd", "bros", "capt", "cmdr", "co", "col", "corp", "dec", "dept",
    "det", "dr", "e.g", "feb", "fig", "ft", "gen", "gov", "i.e", "inc", "insp", "jan", "jr", "jul",
    "jun", "lt", "ltd", "maj", "mr", "mrs", "ms", "mt", "nov", "oct", "prof", "rep", "rev", "sen",
    "sep", "sept", "sgt", "sr", "st", "supt", "u.k", "u.n", "u.s", "vs",
];

fn stopwords() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| {
        STOPWORDS_EN
            .lines()
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .collect()
    })
}

/// Number of entries in the built-in English stopword list.
pub fn stopword_count() -> usize {
    stopwords().len()
}

pub fn is_stopword(word: &str) -> bool {
    let set = stopwords();
    set.contains(word) || set.contains(word.to_lowercase().as_str())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TokenizationConfig {
    pub lowercase: bool,
    pub remove_stopwords: bool,
    /// Porter suffix stripping.
    pub stem: bool,
    /// Sentences with fewer tokens stay in the cluster but cannot enter a summary.
    pub min_sentence_tokens: usize,
}

impl Default for TokenizationConfig {
    fn default() -> Self {
        Self {
            lowercase: true,
            remove_stopwords: true,
            stem: true,
            min_sentence_tokens: 3,
        }
    }
}

impl TokenizationConfig {
    /// Lowercased word tokens with nothing removed or stemmed.
    pub fn surface() -> Self {
        Self {
            lowercase: true,
            remove_stopwords: false,
            stem: false,
            min_sentence_tokens: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_sentence_tokens < 1 {
            return Err(Error::InvalidConfig(
                "min_sentence_tokens must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Maximal runs of alphanumeric characters.
pub(crate) fn word_runs(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
}

/// Splits `text` into word tokens, then lowercases, drops stopwords, and
/// stems, in that order, as enabled by `config`.
pub fn tokenize(text: &str, config: &TokenizationConfig) -> Vec<Token> {
    word_runs(text)
        .filter_map(|word| {
            let word = if config.lowercase {
                word.to_lowercase()
            } else {
                word.to_string()
            };
            if config.remove_stopwords && is_stopword(&word) {
                return None;
            }
            if config.stem {
                Some(porter_stemmer::stem(&word))
            } else {
                Some(word)
            }
        })
        .collect()
}

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '\u{2019}' | '\u{201D}')
}

fn is_opener(c: char) -> bool {
    matches!(c, '"' | '\'' | '(' | '[' | '\u{2018}' | '\u{201C}')
}

/// Whether the period at the end of `before` follows an abbreviation or an initial.
fn ends_with_abbreviation(before: &str) -> bool {
    let word: String = before
        .chars()
        .rev()
        .take_while(|c| c.is_alphanumeric() || *c == '.')
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    let word = word.trim_start_matches('.');
    if word.is_empty() {
        return false;
    }
    let mut chars = word.chars();
    let single = chars.next().map(char::is_uppercase).unwrap_or(false) && chars.next().is_none();
    single || ABBREVIATIONS.contains(&word.to_lowercase().as_str())
}

fn split_paragraph(paragraph: &str, out: &mut Vec<String>) {
    let chars: Vec<(usize, char)> = paragraph.char_indices().collect();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if !is_terminal(c) {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < chars.len() && (is_terminal(chars[j].1) || is_closer(chars[j].1)) {
            j += 1;
        }
        let end = chars.get(j).map_or(paragraph.len(), |&(p, _)| p);
        let at_end = j == chars.len();
        let boundary = at_end || {
            let followed_by_space = chars[j].1 == ' ';
            let mut k = j + 1;
            if k < chars.len() && is_opener(chars[k].1) {
                k += 1;
            }
            let capital = chars
                .get(k)
                .is_some_and(|&(_, n)| n.is_uppercase() || n.is_numeric());
            followed_by_space && capital
        };
        let guarded = c == '.' && j == i + 1 && ends_with_abbreviation(&paragraph[start..pos]);
        if boundary && !guarded {
            let segment = paragraph[start..end].trim();
            if !segment.is_empty() {
                out.push(segment.to_string());
            }
            start = end;
        }
        i = j;
    }
    let rest = paragraph[start..].trim();
    if !rest.is_empty() {
        out.push(rest.to_string());
    }
}

/// Rule-based sentence splitter.
///
/// A boundary is a run of `.`, `!` or `?` (plus closing quotes or brackets)
/// followed by a space and a capital letter or digit, or the end of a
/// paragraph. Blank lines always separate sentences. Whitespace inside a
/// segment is collapsed to single spaces.
pub fn segment_sentences(raw_text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut paragraph: Vec<&str> = Vec::new();
    let flush = |paragraph: &mut Vec<&str>, out: &mut Vec<String>| {
        if !paragraph.is_empty() {
            let joined = paragraph
                .iter()
                .flat_map(|line| line.split_whitespace())
                .collect::<Vec<_>>()
                .join(" ");
            split_paragraph(&joined, out);
            paragraph.clear();
        }
    };
    for line in raw_text.lines() {
        if line.trim().is_empty() {
            flush(&mut paragraph, &mut out);
        } else {
            paragraph.push(line);
        }
    }
    flush(&mut paragraph, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_on() -> TokenizationConfig {
        TokenizationConfig::default()
    }

    fn all_off() -> TokenizationConfig {
        TokenizationConfig {
            lowercase: false,
            remove_stopwords: false,
            stem: false,
            min_sentence_tokens: 1,
        }
    }

    #[test]
    fn splits_two_sentences() {
        assert_eq!(
            segment_sentences("A cat sat. A dog ran."),
            vec!["A cat sat.", "A dog ran."]
        );
    }

    #[test]
    fn abbreviation_is_not_a_boundary() {
        assert_eq!(
            segment_sentences("Dr. Smith arrived. He spoke."),
            vec!["Dr. Smith arrived.", "He spoke."]
        );
        assert_eq!(
            segment_sentences("Officials in the U.S. Senate voted. Nothing changed."),
            vec!["Officials in the U.S. Senate voted.", "Nothing changed."]
        );
        assert_eq!(
            segment_sentences("J. R. Smith won. Fans cheered."),
            vec!["J. R. Smith won.", "Fans cheered."]
        );
    }

    #[test]
    fn empty_input_has_no_segments() {
        assert!(segment_sentences("").is_empty());
        assert!(segment_sentences("  \n\t ").is_empty());
    }

    #[test]
    fn lowercase_continuation_is_not_a_boundary() {
        assert_eq!(segment_sentences("It cost 3.5 million. ok then."), vec![
            "It cost 3.5 million. ok then."
        ]);
    }

    #[test]
    fn quotes_and_blank_lines() {
        let text = "He said \"Stop!\" Then he left.\n\nHEADLINE WITHOUT PERIOD\nNext line.";
        assert_eq!(
            segment_sentences(text),
            vec![
                "He said \"Stop!\"",
                "Then he left.",
                "HEADLINE WITHOUT PERIOD Next line."
            ]
        );
    }

    #[test]
    fn segments_cover_all_non_whitespace() {
        let text = "First one!  Second?? \"Third.\" (Fourth) ends.\nFifth";
        let joined: String = segment_sentences(text).concat();
        let strip = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        assert_eq!(strip(&joined), strip(text));
    }

    #[test]
    fn tokenize_full_pipeline() {
        assert_eq!(tokenize("The cats sat", &all_on()), vec!["cat", "sat"]);
    }

    #[test]
    fn tokenize_identity_pipeline() {
        assert_eq!(tokenize("X y z", &all_off()), vec!["X", "y", "z"]);
    }

    #[test]
    fn tokenize_no_word_characters() {
        assert!(tokenize("...", &all_on()).is_empty());
        assert!(tokenize("...", &all_off()).is_empty());
    }

    #[test]
    fn stopwords_match_case_insensitively() {
        let cfg = TokenizationConfig {
            lowercase: false,
            remove_stopwords: true,
            stem: false,
            min_sentence_tokens: 1,
        };
        assert_eq!(tokenize("The Cat", &cfg), vec!["Cat"]);
    }

    #[test]
    fn stopword_list_size() {
        assert_eq!(stopword_count(), 155);
    }

    #[test]
    fn min_sentence_tokens_validated() {
        let cfg = TokenizationConfig {
            min_sentence_tokens: 0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }
}
