use serde::{Deserialize, Serialize};

/// Versioned tokenizer behaviour. Recorded in corpus provenance so that a
/// change in splitting rules is visible in every downstream artifact.
#[derive(Clone, Copy, Debug, Default, Eq, PartialEq, Serialize, Deserialize)]
pub enum TokenizerRules {
    /// Split on non-alphanumeric characters, lowercase, drop all-digit
    /// tokens, keep hyphens and apostrophes that sit between two
    /// alphanumeric characters.
    #[default]
    V1,
}

impl TokenizerRules {
    pub fn label(self) -> &'static str {
        match self {
            TokenizerRules::V1 => "tokenizer-v1",
        }
    }
}

fn is_joiner(c: char) -> bool {
    matches!(c, '-' | '\'' | '\u{2019}')
}

/// Splits `text` into lowercase word forms.
pub fn tokenize(text: &str, rules: TokenizerRules) -> Vec<String> {
    match rules {
        TokenizerRules::V1 => tokenize_v1(text),
    }
}

fn tokenize_v1(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut words = Vec::new();
    let mut current = String::new();

    for (i, &c) in chars.iter().enumerate() {
        if c.is_alphanumeric() {
            current.extend(c.to_lowercase());
        } else if is_joiner(c)
            && !current.is_empty()
            && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric())
        {
            current.push(c);
        } else {
            flush(&mut current, &mut words);
        }
    }
    flush(&mut current, &mut words);
    words
}

fn flush(current: &mut String, words: &mut Vec<String>) {
    if current.is_empty() {
        return;
    }
    let token = std::mem::take(current);
    if !token.chars().all(char::is_numeric) {
        words.push(token);
    }
}
