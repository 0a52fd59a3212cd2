//! Word tokenization and rule-based sentence segmentation.
//!
//! Words are maximal alphanumeric runs that may contain internal apostrophes
//! or hyphens. Sentences end at `.`, `!` or `?` when the terminator is followed
//! by whitespace and an uppercase letter or digit, unless the period closes a
//! known abbreviation.

use super::MetricsError;

/// Abbreviations whose trailing period never ends a sentence.
const ABBREVIATIONS: &[&str] = &[
    "dr.", "mr.", "mrs.", "ms.", "prof.", "fig.", "eq.", "e.g.", "i.e.", "vs.",
];

fn is_apostrophe(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}')
}

fn is_joiner(c: char) -> bool {
    is_apostrophe(c) || c == '-'
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '\u{201D}' | '\u{2019}' | '*' | '_')
}

fn is_opener(c: char) -> bool {
    matches!(c, '"' | '\'' | '(' | '[' | '\u{201C}' | '\u{2018}' | '*' | '_')
}

fn has_word_char(text: &str) -> bool {
    text.chars().any(char::is_alphanumeric)
}

/// Splits `text` into word tokens, borrowing from the input.
pub fn tokenize_words(text: &str) -> Result<Vec<&str>, MetricsError> {
    if !has_word_char(text) {
        return Err(MetricsError::EmptyText);
    }
    Ok(word_tokens(text))
}

/// Infallible tokenizer used internally; returns an empty list for blank input.
pub(crate) fn word_tokens(text: &str) -> Vec<&str> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].1.is_alphanumeric() {
            i += 1;
            continue;
        }
        let start = chars[i].0;
        let mut j = i + 1;
        while j < chars.len() {
            let c = chars[j].1;
            if c.is_alphanumeric() {
                j += 1;
            } else if is_joiner(c) && j + 1 < chars.len() && chars[j + 1].1.is_alphanumeric() {
                j += 2;
            } else {
                break;
            }
        }
        let end = chars.get(j).map_or(text.len(), |&(idx, _)| idx);
        tokens.push(&text[start..end]);
        i = j;
    }
    tokens
}

/// Splits `text` into sentences. Each returned sentence is trimmed and
/// contains at least one word character.
pub fn segment_sentences(text: &str) -> Result<Vec<&str>, MetricsError> {
    if !has_word_char(text) {
        return Err(MetricsError::EmptyText);
    }
    Ok(sentence_spans(text))
}

pub(crate) fn sentence_spans(text: &str) -> Vec<&str> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut boundaries = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !is_terminator(chars[i].1) {
            i += 1;
            continue;
        }
        let term_start = i;
        let mut j = i;
        while j < chars.len() && is_terminator(chars[j].1) {
            j += 1;
        }
        while j < chars.len() && is_closer(chars[j].1) {
            j += 1;
        }
        let end = chars.get(j).map_or(text.len(), |&(idx, _)| idx);
        let mut k = j;
        while k < chars.len() && chars[k].1.is_whitespace() {
            k += 1;
        }
        let followed_by_space = k > j;
        while k < chars.len() && is_opener(chars[k].1) {
            k += 1;
        }
        let starts_sentence = chars
            .get(k)
            .is_some_and(|&(_, c)| c.is_uppercase() || c.is_ascii_digit());
        let abbreviation = j - term_start == 1
            && chars[term_start].1 == '.'
            && ends_with_abbreviation(&text[..chars[term_start].0 + 1]);
        if followed_by_space && starts_sentence && !abbreviation {
            boundaries.push(end);
        }
        i = j.max(i + 1);
    }

    // Punctuation-only fragments are glued onto the following sentence, or
    // onto the previous one when they trail the text.
    let mut ranges: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for end in boundaries.into_iter().chain(std::iter::once(text.len())) {
        if has_word_char(&text[start..end]) {
            ranges.push((start, end));
            start = end;
        } else if end == text.len() {
            if let Some(last) = ranges.last_mut() {
                last.1 = end;
            }
        }
    }
    ranges.into_iter().map(|(a, b)| text[a..b].trim()).collect()
}

/// Whether `prefix` (which ends with a period) ends in a stop-listed abbreviation.
fn ends_with_abbreviation(prefix: &str) -> bool {
    let mut words = prefix.rsplit(char::is_whitespace);
    let last = words.next().unwrap_or("");
    let last = last
        .trim_start_matches(is_opener)
        .to_lowercase();
    if ABBREVIATIONS.contains(&last.as_str()) {
        return true;
    }
    if last == "al." {
        let prev = words.find(|w| !w.is_empty()).unwrap_or("");
        return prev.trim_start_matches(is_opener).eq_ignore_ascii_case("et");
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_on_plain_terminators() {
        let s = segment_sentences("Hello world. How are you?").unwrap();
        assert_eq!(s, vec!["Hello world.", "How are you?"]);
    }

    #[test]
    fn abbreviation_does_not_split() {
        let s = segment_sentences("Dr. Smith arrived. He left.").unwrap();
        assert_eq!(s, vec!["Dr. Smith arrived.", "He left."]);
    }

    #[test]
    fn every_listed_abbreviation_is_respected() {
        for abbr in ["Mr.", "Mrs.", "Ms.", "Prof.", "Fig.", "Eq.", "e.g.", "i.e.", "vs."] {
            let text = format!("See {abbr} Jones today. Then go.");
            assert_eq!(segment_sentences(&text).unwrap().len(), 2, "{abbr}");
        }
        let s = segment_sentences("Work by Li et al. Results hold. Done.").unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn lowercase_continuation_does_not_split() {
        assert_eq!(segment_sentences("It costs 3.5 dollars. ok then.").unwrap().len(), 1);
    }

    #[test]
    fn digit_starts_new_sentence() {
        assert_eq!(segment_sentences("We tested it. 98 cases passed.").unwrap().len(), 2);
    }

    #[test]
    fn no_terminator_is_one_sentence() {
        assert_eq!(segment_sentences("just some words").unwrap(), vec!["just some words"]);
    }

    #[test]
    fn closing_quote_after_terminator() {
        let s = segment_sentences("He said \"stop!\" Then he left.").unwrap();
        assert_eq!(s, vec!["He said \"stop!\"", "Then he left."]);
    }

    #[test]
    fn leading_punctuation_fragment_is_merged() {
        let s = segment_sentences("... Hello there. Bye.").unwrap();
        assert_eq!(s, vec!["... Hello there.", "Bye."]);
    }

    #[test]
    fn empty_text_is_rejected() {
        assert_eq!(segment_sentences(""), Err(MetricsError::EmptyText));
        assert_eq!(segment_sentences(" ?! "), Err(MetricsError::EmptyText));
        assert_eq!(tokenize_words(""), Err(MetricsError::EmptyText));
    }

    #[test]
    fn word_rule_examples() {
        assert_eq!(tokenize_words("The cat sat.").unwrap(), vec!["The", "cat", "sat"]);
        assert_eq!(
            tokenize_words("state-of-the-art model").unwrap(),
            vec!["state-of-the-art", "model"]
        );
        assert_eq!(tokenize_words("It's 98% done").unwrap(), vec!["It's", "98", "done"]);
    }

    #[test]
    fn trailing_joiners_are_stripped() {
        assert_eq!(
            tokenize_words("'quoted' well- -known").unwrap(),
            vec!["quoted", "well", "known"]
        );
        assert_eq!(tokenize_words("don\u{2019}t").unwrap(), vec!["don\u{2019}t"]);
    }
}
