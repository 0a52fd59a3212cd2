//! Vowel-group syllable heuristic.

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Estimates the syllable count of one word token. Always at least 1.
///
/// Hyphenated tokens are counted part by part. Digit-only tokens count as one
/// syllable.
pub fn count_syllables(word: &str) -> u32 {
    let total: u32 = word
        .split('-')
        .filter(|part| part.chars().any(char::is_alphabetic))
        .map(part_syllables)
        .sum();
    total.max(1)
}

fn part_syllables(part: &str) -> u32 {
    let letters: Vec<char> = part
        .chars()
        .filter(|c| c.is_alphabetic())
        .flat_map(char::to_lowercase)
        .collect();

    let mut groups = 0u32;
    let mut in_group = false;
    for &c in &letters {
        let v = is_vowel(c);
        if v && !in_group {
            groups += 1;
        }
        in_group = v;
    }

    let n = letters.len();
    if n >= 1 && letters[n - 1] == 'e' {
        let consonant_le = n >= 3 && letters[n - 2] == 'l' && !is_vowel(letters[n - 3]);
        if !consonant_le {
            groups = groups.saturating_sub(1);
        }
    }
    groups.max(1)
}
