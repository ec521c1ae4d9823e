use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::tokenize;

pub const UNKNOWN_TOKEN: &str = "[unk]";

/// Token to row index. Index 0 is always the unknown token.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<String>", into = "Vec<String>")]
pub struct Vocabulary {
    tokens: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    /// Builds from the tokens of `texts` in order of first appearance.
    pub fn from_texts<'a, I: IntoIterator<Item = &'a str>>(texts: I) -> Self {
        let mut vocab = Vocabulary::from(Vec::new());
        for text in texts {
            for tok in tokenize(text) {
                vocab.insert(tok);
            }
        }
        vocab
    }

    fn insert(&mut self, token: String) -> usize {
        if let Some(&i) = self.index.get(&token) {
            return i;
        }
        let i = self.tokens.len();
        self.index.insert(token.clone(), i);
        self.tokens.push(token);
        i
    }

    pub fn unknown(&self) -> usize {
        0
    }

    pub fn get(&self, token: &str) -> usize {
        self.index.get(token).copied().unwrap_or(0)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.index.contains_key(token) && token != UNKNOWN_TOKEN
    }

    pub fn encode(&self, text: &str) -> Vec<usize> {
        tokenize(text).iter().map(|t| self.get(t)).collect()
    }

    pub fn token(&self, i: usize) -> Option<&str> {
        self.tokens.get(i).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl From<Vec<String>> for Vocabulary {
    fn from(tokens: Vec<String>) -> Self {
        let mut vocab = Vocabulary {
            tokens: vec![UNKNOWN_TOKEN.to_string()],
            index: HashMap::from([(UNKNOWN_TOKEN.to_string(), 0)]),
        };
        for t in tokens {
            vocab.insert(t);
        }
        vocab
    }
}

impl From<Vocabulary> for Vec<String> {
    fn from(v: Vocabulary) -> Self {
        v.tokens
    }
}
