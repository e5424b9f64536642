//! Braid words in the Artin braid group and their closure bookkeeping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in `B_n`. Letter `k > 0` is `σ_k`, letter `k < 0` is `σ_{|k|}^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid", into = "RawBraid")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawBraid {
    strands: usize,
    word: Vec<i32>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = Error;

    fn try_from(raw: RawBraid) -> Result<Self> {
        BraidWord::new(raw.strands, raw.word)
    }
}

impl From<BraidWord> for RawBraid {
    fn from(b: BraidWord) -> Self {
        RawBraid { strands: b.strands, word: b.letters }
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::NoStrands);
        }
        for &l in &letters {
            check_letter(l, strands, || l.to_string())?;
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    /// Parses whitespace- or comma-separated signed generator indices.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        if strands == 0 {
            return Err(Error::NoStrands);
        }
        let mut letters = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            let l: i32 = token.parse().map_err(|_| Error::BadToken(token.to_string()))?;
            check_letter(l, strands, || token.to_string())?;
            letters.push(l);
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of crossing signs of the closure.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| i64::from(l.signum())).sum()
    }

    /// Reversed and negated word; its closure is the mirror image.
    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { strands: self.strands, letters })
    }

    /// Markov stabilization: adds a strand and appends `σ_n^{±1}` on it.
    pub fn stabilize(&self, positive: bool) -> Self {
        let mut letters = self.letters.clone();
        let g = self.strands as i32;
        letters.push(if positive { g } else { -g });
        Self { strands: self.strands + 1, letters }
    }

    pub fn closure_permutation(&self) -> Permutation {
        let mut perm = Permutation::identity(self.strands);
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            perm.swap_positions(i - 1, i);
        }
        perm
    }

    /// Number of link components of the closure.
    pub fn components(&self) -> usize {
        self.closure_permutation().cycle_count()
    }
}

fn check_letter(l: i32, strands: usize, token: impl Fn() -> String) -> Result<()> {
    if l == 0 {
        return Err(Error::ZeroLetter(token()));
    }
    if l.unsigned_abs() as usize > strands - 1 {
        return Err(Error::GeneratorOutOfRange { token: token(), strands });
    }
    Ok(())
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[", self.strands)?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("]")
    }
}

/// Permutation of strand positions induced by a braid; `image[p]` is where
/// the strand starting at top position `p` ends at the bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { image: (0..n).collect() }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &p)| i == p)
    }

    fn swap_positions(&mut self, a: usize, b: usize) {
        for p in self.image.iter_mut() {
            if *p == a {
                *p = b;
            } else if *p == b {
                *p = a;
            }
        }
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.image.len()];
        let mut cycles = 0;
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.image[p];
            }
        }
        cycles
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_words() {
        let b = BraidWord::parse("1 1 1", 2).unwrap();
        assert_eq!(b.letters(), &[1, 1, 1]);
        assert_eq!(b.strands(), 2);
        let b = BraidWord::parse("1,-2, 1", 3).unwrap();
        assert_eq!(b.letters(), &[1, -2, 1]);
        assert!(BraidWord::parse("", 1).unwrap().is_empty());
    }

    #[test]
    fn parse_errors_name_the_token() {
        let err = BraidWord::parse("2", 2).unwrap_err();
        assert!(err.to_string().contains("generator index 2 invalid for 2 strands"), "{err}");
        let err = BraidWord::parse("1 0", 3).unwrap_err();
        assert!(matches!(err, Error::ZeroLetter(ref t) if t == "0"));
        let err = BraidWord::parse("1 x2", 3).unwrap_err();
        assert!(matches!(err, Error::BadToken(ref t) if t == "x2"));
        let err = BraidWord::parse("-3", 3).unwrap_err();
        assert!(matches!(err, Error::GeneratorOutOfRange { .. }));
        assert!(BraidWord::parse("", 0).is_err());
        assert!(BraidWord::parse("1", 1).is_err());
    }

    #[test]
    fn writhe_values() {
        assert_eq!(BraidWord::parse("1 1 1", 2).unwrap().writhe(), 3);
        assert_eq!(BraidWord::identity(4).unwrap().writhe(), 0);
        assert_eq!(BraidWord::parse("1 -2 1", 3).unwrap().writhe(), 1);
    }

    #[test]
    fn inverse_words() {
        let b = BraidWord::parse("1 1 1", 2).unwrap();
        assert_eq!(b.inverse().letters(), &[-1, -1, -1]);
        assert!(BraidWord::identity(3).unwrap().inverse().is_empty());
        let b = BraidWord::parse("1 -2", 3).unwrap();
        assert_eq!(b.inverse().letters(), &[2, -1]);
    }

    #[test]
    fn closure_components() {
        let p = BraidWord::parse("1 1 1", 2).unwrap().closure_permutation();
        assert_eq!(p.image(), &[1, 0]);
        assert_eq!(p.cycle_count(), 1);
        let p = BraidWord::parse("1 1", 2).unwrap().closure_permutation();
        assert!(p.is_identity());
        assert_eq!(p.cycle_count(), 2);
        let p = BraidWord::identity(3).unwrap().closure_permutation();
        assert!(p.is_identity());
        assert_eq!(p.cycle_count(), 3);
        // Borromean rings: three components
        assert_eq!(BraidWord::parse("1 -2 1 -2 1 -2", 3).unwrap().components(), 3);
    }

    #[test]
    fn stabilization_adds_a_strand() {
        let b = BraidWord::identity(1).unwrap().stabilize(true);
        assert_eq!(b.strands(), 2);
        assert_eq!(b.letters(), &[1]);
        let b = BraidWord::parse("1 1 1", 2).unwrap().stabilize(false);
        assert_eq!(b.letters(), &[1, 1, 1, -2]);
        assert_eq!(b.components(), 1);
    }

    #[test]
    fn json_form() {
        let b = BraidWord::parse("1 -2 1", 3).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"strands":3,"word":[1,-2,1]}"#);
        let back: BraidWord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
        assert!(serde_json::from_str::<BraidWord>(r#"{"strands":2,"word":[2]}"#).is_err());
    }
}
