use crate::error::{Error, Result};
use std::fmt;

/// A symbolic substitution `letter -> nonempty word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSubstitution {
    alphabet: Vec<char>,
    /// `images[j]` lists letter indices of the image of `alphabet[j]`.
    images: Vec<Vec<usize>>,
}

impl WordSubstitution {
    pub fn new(alphabet: Vec<char>, images: Vec<Vec<usize>>) -> Result<Self> {
        if alphabet.is_empty() || images.len() != alphabet.len() {
            return Err(Error::input("alphabet and images must be nonempty and of equal length"));
        }
        for (j, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::input(format!("empty image for letter {}", alphabet[j])));
            }
            if img.iter().any(|&i| i >= alphabet.len()) {
                return Err(Error::input(format!("image of {} uses an unknown letter", alphabet[j])));
            }
        }
        Ok(WordSubstitution { alphabet, images })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    pub fn image(&self, letter: char) -> Option<String> {
        let j = self.alphabet.iter().position(|&c| c == letter)?;
        Some(self.images[j].iter().map(|&i| self.alphabet[i]).collect())
    }

    /// Applies the substitution to a word given as letter indices.
    pub fn apply(&self, word: &[usize]) -> Vec<usize> {
        word.iter().flat_map(|&j| self.images[j].iter().copied()).collect()
    }
}

impl fmt::Display for WordSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, img) in self.images.iter().enumerate() {
            let w: String = img.iter().map(|&i| self.alphabet[i]).collect();
            writeln!(f, "{} -> {w}", self.alphabet[j])?;
        }
        Ok(())
    }
}

/// Parses one rule per line, `letter -> word`. Blank lines and lines starting
/// with `#` are skipped. The alphabet is the set of rule heads in order of
/// appearance.
pub fn parse_word_substitution(text: &str) -> Result<WordSubstitution> {
    let mut alphabet = Vec::new();
    let mut raw_images: Vec<(usize, String)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let (head, body) = line.split_once("->").ok_or_else(|| err("expected `letter -> word`".into()))?;
        let head = head.trim();
        let mut chars = head.chars();
        let letter = match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_alphanumeric() => c,
            _ => return Err(err(format!("rule head {head:?} is not a single ASCII alphanumeric letter"))),
        };
        if alphabet.contains(&letter) {
            return Err(err(format!("duplicate rule for letter {letter}")));
        }
        let body = body.trim();
        if body.is_empty() {
            return Err(err(format!("empty image for letter {letter}")));
        }
        if let Some(bad) = body.chars().find(|c| !c.is_ascii_alphanumeric()) {
            return Err(err(format!("invalid character {bad:?} in image")));
        }
        alphabet.push(letter);
        raw_images.push((line_no, body.to_string()));
    }
    if alphabet.is_empty() {
        return Err(Error::Parse { line: 0, msg: "no rules".into() });
    }
    let mut images = Vec::with_capacity(alphabet.len());
    for (line, body) in raw_images {
        let img = body
            .chars()
            .map(|c| {
                alphabet.iter().position(|&a| a == c).ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("letter {c} not in alphabet"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        images.push(img);
    }
    WordSubstitution::new(alphabet, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fibonacci_squared() {
        let w = parse_word_substitution("a -> aab\nb -> ab").unwrap();
        assert_eq!(w.alphabet(), &['a', 'b']);
        assert_eq!(w.image('a').unwrap(), "aab");
        assert_eq!(w.image('b').unwrap(), "ab");
        assert_eq!(w.to_string(), "a -> aab\nb -> ab\n");
    }

    #[test]
    fn parses_with_comments_and_blank_lines() {
        let w = parse_word_substitution("# sigma\n\na -> ab\n  b->aab  \n").unwrap();
        assert_eq!(w.images(), &[vec![0, 1], vec![0, 0, 1]]);
        assert_eq!(w.apply(&[0, 1]), vec![0, 1, 0, 0, 1]);
    }

    #[test]
    fn rejects_unknown_letter() {
        let e = parse_word_substitution("a -> b\nb -> c").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, msg: "letter c not in alphabet".into() });
    }

    #[test]
    fn rejects_malformed_rules() {
        assert!(matches!(parse_word_substitution("a -> \nb -> a"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_word_substitution("a -> a\na -> aa"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_word_substitution("ab -> a"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_word_substitution("a = b"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_word_substitution("a -> a b"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_word_substitution("\n# nothing\n").is_err());
    }
}
