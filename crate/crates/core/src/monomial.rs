//! Exponent-vector monomials in `k[x_1, ..., x_n]`.
//!
//! Variables are 1-based everywhere in the public API (`x_1` is index 1),
//! matching how ideals are written down; the exponent vector itself is an
//! ordinary 0-based `Vec`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    /// The monomial 1 in `n` variables.
    pub fn one(n: usize) -> Self {
        Self {
            exponents: vec![0; n],
        }
    }

    /// `x_index^power` in `n` variables.
    pub fn var_power(n: usize, index: usize, power: u32) -> Result<Self> {
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        let mut exponents = vec![0; n];
        exponents[index - 1] = power;
        Ok(Self { exponents })
    }

    /// Builds `x_{w_1} x_{w_2} ... x_{w_e}` from a word of 1-based indices.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut exponents = vec![0; n];
        for &index in word {
            if index == 0 || index > n {
                return Err(Error::IndexOutOfRange { index, n });
            }
            exponents[index - 1] += 1;
        }
        Ok(Self { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    /// Exponent of `x_index` (1-based).
    pub fn exponent(&self, index: usize) -> u32 {
        self.exponents[index - 1]
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// 1-based indices of the variables dividing this monomial.
    pub fn support(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Largest index with a positive exponent; 0 for the monomial 1.
    pub fn nu(&self) -> usize {
        self.exponents
            .iter()
            .rposition(|&e| e > 0)
            .map_or(0, |i| i + 1)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    /// If this is a pure power `x_i^e` with `e > 0`, returns `(i, e)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let support = self.support();
        match support.as_slice() {
            [i] => Some((*i, self.exponents[i - 1])),
            _ => None,
        }
    }

    /// The nondecreasing index word `α_1 <= ... <= α_e` with `m = x_{α_1} ... x_{α_e}`.
    pub fn index_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.exponents.iter().enumerate() {
            word.extend(std::iter::repeat_n(i + 1, e as usize));
        }
        word
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a - b)
                .collect(),
        ))
    }

    /// Multiplies by `x_index` (1-based).
    pub fn times_var(&self, index: usize) -> Monomial {
        let mut exponents = self.exponents.clone();
        exponents[index - 1] += 1;
        Monomial::new(exponents)
    }

    /// Divides by `x_index` (1-based) if it divides.
    pub fn div_var(&self, index: usize) -> Option<Monomial> {
        if self.exponents[index - 1] == 0 {
            return None;
        }
        let mut exponents = self.exponents.clone();
        exponents[index - 1] -= 1;
        Some(Monomial::new(exponents))
    }

    /// `(x_to / x_from) * self`; `None` if `x_from` does not divide.
    pub fn shift(&self, from: usize, to: usize) -> Option<Monomial> {
        let mut m = self.div_var(from)?;
        m.exponents[to - 1] += 1;
        Some(m)
    }

    /// Reinterprets the monomial in `n` variables, padding with zeros or
    /// dropping trailing variables that do not occur.
    pub fn resized(&self, n: usize) -> Option<Monomial> {
        if self.nu() > n {
            return None;
        }
        let mut exponents = self.exponents.clone();
        exponents.resize(n, 0);
        Some(Monomial::new(exponents))
    }

    /// Writes the monomial with the given variable letter, e.g. `x1^2*x3`.
    pub fn display_with(&self, letter: char) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("{letter}{}", i + 1)),
                _ => parts.push(format!("{letter}{}^{e}", i + 1)),
            }
        }
        parts.join("*")
    }
}

/// Canonical order: by degree, then lexicographically with `x_1 > x_2 > ...`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exponents.cmp(&self.exponents))
            .then_with(|| self.exponents.len().cmp(&other.exponents.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('x'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_and_support() {
        let m = Monomial::new(vec![1, 0, 2]);
        assert_eq!(m.nu(), 3);
        assert_eq!(m.support(), vec![1, 3]);
        assert_eq!(m.degree(), 3);
        assert_eq!(Monomial::one(4).nu(), 0);
    }

    #[test]
    fn index_word_is_sorted() {
        let m = Monomial::new(vec![0, 1, 2]);
        assert_eq!(m.index_word(), vec![2, 3, 3]);
        assert_eq!(Monomial::from_word(3, &[3, 2, 3]).unwrap(), m);
    }

    #[test]
    fn canonical_order_matches_written_lists() {
        let mut v = [
            Monomial::new(vec![0, 1, 1]),
            Monomial::new(vec![2, 0, 0]),
            Monomial::new(vec![0, 2, 0]),
            Monomial::new(vec![1, 1, 0]),
            Monomial::new(vec![1, 0, 1]),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3"]);
    }

    #[test]
    fn shift_moves_one_degree() {
        let m = Monomial::new(vec![1, 0, 1]);
        assert_eq!(m.shift(3, 2), Some(Monomial::new(vec![1, 1, 0])));
        assert_eq!(m.shift(2, 1), None);
    }

    #[test]
    fn out_of_range_index() {
        assert_eq!(
            Monomial::var_power(2, 3, 1),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        );
        assert!(Monomial::from_word(2, &[0]).is_err());
    }
}
