//! Combinatorics of singularity classes: validation, enumeration,
//! codimension, and sandwich-class projection of lujr words.
//!
//! A class code is a word j1.j2...jr over {1, ..., m+1} obeying the
//! "least upward jumps" rule: j1 = 1 and each letter exceeds the running
//! maximum by at most 1.

use std::fmt;

use crate::error::{Error, Result};

/// A validated lujr word naming a singularity class of width-`m` flags.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassCode {
    width: usize,
    letters: Vec<u8>,
}

impl ClassCode {
    pub fn new(letters: Vec<u8>, width: usize) -> Result<ClassCode> {
        let word = letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(".");
        if letters.is_empty() {
            return Err(Error::InvalidCode {
                word,
                reason: "empty word".into(),
            });
        }
        if letters[0] != 1 {
            return Err(Error::InvalidCode {
                word,
                reason: "first letter must be 1".into(),
            });
        }
        let mut max = 0u8;
        for (k, &j) in letters.iter().enumerate() {
            if j == 0 {
                return Err(Error::InvalidCode {
                    word,
                    reason: format!("letter {} at position {} is not positive", j, k + 1),
                });
            }
            if j as usize > width + 1 {
                return Err(Error::InvalidCode {
                    word,
                    reason: format!("letter {} exceeds m+1 = {}", j, width + 1),
                });
            }
            if j > max + 1 {
                return Err(Error::InvalidCode {
                    word,
                    reason: format!(
                        "letter {} at position {} exceeds 1 + running max {}",
                        j,
                        k + 1,
                        max
                    ),
                });
            }
            max = max.max(j);
        }
        Ok(ClassCode { width, letters })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn length(&self) -> usize {
        self.letters.len()
    }

    /// Stratum codimension: (sum of letters) - length.
    pub fn codimension(&self) -> usize {
        self.letters.iter().map(|&j| j as usize).sum::<usize>() - self.letters.len()
    }

    /// Remember only which letters are >= 2.
    pub fn sandwich_class(&self) -> SandwichCode {
        SandwichCode {
            positions: self.letters.iter().map(|&j| j >= 2).collect(),
        }
    }
}

impl fmt::Display for ClassCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self
            .letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(".");
        write!(f, "{word}")
    }
}

/// Coarser stratum code: per position, regular (letter 1) or singular
/// (letter >= 2).  Position 1 is always regular.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SandwichCode {
    positions: Vec<bool>,
}

impl SandwichCode {
    pub fn positions(&self) -> &[bool] {
        &self.positions
    }
}

impl fmt::Display for SandwichCode {
    /// Singular positions print as `S`: 1.2.3.1.2 -> "1.S.S.1.S".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self
            .positions
            .iter()
            .map(|&s| if s { "S" } else { "1" })
            .collect::<Vec<_>>()
            .join(".");
        write!(f, "{word}")
    }
}

/// Parse and validate a dotted word such as "1.2.3.1.2".
pub fn validate_code(word: &str, m: usize) -> Result<ClassCode> {
    let mut letters = Vec::new();
    for part in word.split('.') {
        let j: u8 = part.trim().parse().map_err(|_| Error::InvalidCode {
            word: word.to_string(),
            reason: format!("`{part}` is not a positive integer"),
        })?;
        letters.push(j);
    }
    ClassCode::new(letters, m)
}

/// All lujr words of length `r` and width `m`, in lexicographic order.
pub fn enumerate_codes(m: usize, r: usize) -> Vec<ClassCode> {
    assert!(m >= 2 && r >= 1, "enumeration needs m >= 2, r >= 1");
    let mut out = Vec::new();
    let mut word = vec![1u8];
    extend(&mut word, 1, m, r, &mut out);
    out
}

fn extend(word: &mut Vec<u8>, max: u8, m: usize, r: usize, out: &mut Vec<ClassCode>) {
    if word.len() == r {
        out.push(ClassCode {
            width: m,
            letters: word.clone(),
        });
        return;
    }
    let top = (max + 1).min(m as u8 + 1);
    for j in 1..=top {
        word.push(j);
        extend(word, max.max(j), m, r, out);
        word.pop();
    }
}

/// Number of lujr words of length `r` and width `m` without materializing
/// them.
pub fn count_codes(m: usize, r: usize) -> u128 {
    // counts by (running max) multiplicity
    let mut by_max = vec![0u128; m + 2];
    by_max[1] = 1;
    for _ in 1..r {
        let mut next = vec![0u128; m + 2];
        for (max, &n) in by_max.iter().enumerate().skip(1) {
            if n == 0 {
                continue;
            }
            let top = (max + 1).min(m + 1);
            // letters 1..=max keep the max, letter max+1 raises it
            next[max] += n * max as u128;
            if top > max {
                next[top] += n;
            }
        }
        by_max = next;
    }
    by_max.iter().sum()
}
