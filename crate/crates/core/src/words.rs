//! Exhaustive word enumeration, ordered by length and then lexicographically
//! by symbol index.

use crate::machine::Symbol;

/// Iterator over all words of length `0..=max_len` over `k` symbols.
pub struct WordsUpTo {
    k: usize,
    max_len: usize,
    len: usize,
    digits: Vec<usize>,
    started: bool,
    done: bool,
}

/// All words over a `k`-symbol alphabet of length at most `max_len`.
pub fn words_up_to(k: usize, max_len: usize) -> WordsUpTo {
    WordsUpTo {
        k,
        max_len,
        len: 0,
        digits: Vec::new(),
        started: false,
        done: k == 0 && max_len > 0,
    }
}

/// Number of words of length at most `max_len` over `k` symbols.
pub fn word_count(k: usize, max_len: usize) -> u128 {
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(k as u128);
    }
    total
}

impl Iterator for WordsUpTo {
    type Item = Vec<Symbol>;

    fn next(&mut self) -> Option<Vec<Symbol>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Vec::new()); // the empty word
        }
        // advance the odometer within the current length
        let mut i = self.len;
        loop {
            if i == 0 {
                // move to the next length
                self.len += 1;
                if self.len > self.max_len || self.k == 0 {
                    self.done = true;
                    return None;
                }
                self.digits = vec![0; self.len];
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.k {
                break;
            }
            self.digits[i] = 0;
        }
        Some(self.digits.iter().map(|&d| Symbol(d)).collect())
    }
}
