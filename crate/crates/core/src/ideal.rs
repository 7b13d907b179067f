//! Monomial ideals given by their minimal generators.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A monomial ideal of `k[x_1, ..., x_n]`, stored as its minimal generating
/// set `G(I)` in canonical order. The zero ideal has no generators; the unit
/// ideal has the single generator 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

/// Reduces `gens` to a divisibility antichain generating the same ideal.
pub fn minimalize(gens: impl IntoIterator<Item = Monomial>, n: usize) -> Result<MonomialIdeal> {
    let mut sorted: BTreeSet<Monomial> = BTreeSet::new();
    for m in gens {
        if m.num_vars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.num_vars(),
            });
        }
        sorted.insert(m);
    }
    // Canonical order is degree-first, so a divisor is always seen before its multiples.
    let mut generators: Vec<Monomial> = Vec::with_capacity(sorted.len());
    for m in sorted {
        if !generators.iter().any(|g| g.divides(&m)) {
            generators.push(m);
        }
    }
    Ok(MonomialIdeal { n, generators })
}

/// The smallest strongly stable ideal containing `gens`.
pub fn borel_closure(gens: impl IntoIterator<Item = Monomial>, n: usize) -> Result<MonomialIdeal> {
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut stack = Vec::new();
    for m in gens {
        if m.num_vars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.num_vars(),
            });
        }
        if seen.insert(m.clone()) {
            stack.push(m);
        }
    }
    while let Some(m) = stack.pop() {
        for i in m.support() {
            for j in 1..i {
                let shifted = m.shift(i, j).expect("x_i divides m");
                if seen.insert(shifted.clone()) {
                    stack.push(shifted);
                }
            }
        }
    }
    minimalize(seen, n)
}

impl MonomialIdeal {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            generators: Vec::new(),
        }
    }

    pub fn unit(n: usize) -> Self {
        Self {
            n,
            generators: vec![Monomial::one(n)],
        }
    }

    pub fn from_exponents(n: usize, gens: &[&[u32]]) -> Result<Self> {
        minimalize(gens.iter().map(|e| Monomial::new(e.to_vec())), n)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(Monomial::is_squarefree)
    }

    pub fn max_degree(&self) -> u32 {
        self.generators
            .iter()
            .map(Monomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// `ν(I)`: the largest `ν(m)` over `m ∈ G(I)`.
    pub fn nu(&self) -> usize {
        self.generators.iter().map(Monomial::nu).max().unwrap_or(0)
    }

    fn check_dim(&self, m: &Monomial) -> Result<()> {
        if m.num_vars() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: m.num_vars(),
            });
        }
        Ok(())
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.n {
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        Ok(())
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        self.check_dim(m)?;
        Ok(self.contains_unchecked(m))
    }

    pub(crate) fn contains_unchecked(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Containment of ideals: every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        self.n == other.n && other.generators.iter().all(|m| self.contains_unchecked(m))
    }

    pub fn is_strongly_stable(&self) -> bool {
        self.generators.iter().all(|m| {
            m.support().into_iter().all(|i| {
                (1..i).all(|j| self.contains_unchecked(&m.shift(i, j).expect("x_i divides m")))
            })
        })
    }

    /// `I + (m)`.
    pub fn add_generator(&self, m: Monomial) -> Result<MonomialIdeal> {
        self.check_dim(&m)?;
        minimalize(self.generators.iter().cloned().chain(Some(m)), self.n)
    }

    /// `I ∩ J`, generated by pairwise least common multiples.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let lcms = self
            .generators
            .iter()
            .flat_map(|g| other.generators.iter().map(move |h| g.lcm(h)));
        minimalize(lcms, self.n)
    }

    /// `I : x_l`.
    pub fn colon_variable(&self, l: usize) -> Result<MonomialIdeal> {
        self.check_index(l)?;
        let gens = self
            .generators
            .iter()
            .map(|m| m.div_var(l).unwrap_or_else(|| m.clone()));
        minimalize(gens, self.n)
    }

    /// `I : x_l^∞`, the stable value of repeated colons by `x_l`.
    pub fn saturate_variable(&self, l: usize) -> Result<MonomialIdeal> {
        self.check_index(l)?;
        let gens = self.generators.iter().map(|m| {
            let mut e = m.exponents().to_vec();
            e[l - 1] = 0;
            Monomial::new(e)
        });
        minimalize(gens, self.n)
    }

    /// The ideal generated by the generators not divisible by `x_n`.
    pub fn restrict_away_last(&self) -> MonomialIdeal {
        let n = self.n;
        MonomialIdeal {
            n,
            generators: self
                .generators
                .iter()
                .filter(|m| n == 0 || m.exponent(n) == 0)
                .cloned()
                .collect(),
        }
    }

    /// Same generators, viewed in `n` variables. Fails if a generator uses a
    /// variable beyond `n`.
    pub fn with_num_vars(&self, n: usize) -> Result<MonomialIdeal> {
        let gens = self
            .generators
            .iter()
            .map(|m| {
                m.resized(n).ok_or(Error::DimensionMismatch {
                    expected: n,
                    found: m.nu(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        minimalize(gens, n)
    }

    /// Precondition shared by the analytics that assume `(0) ≠ I ⊊ S` strongly stable.
    pub fn require_strongly_stable_proper(&self) -> Result<()> {
        if self.is_zero() || self.is_unit() {
            return Err(Error::DegenerateIdeal);
        }
        if !self.is_strongly_stable() {
            return Err(Error::NotStronglyStable);
        }
        Ok(())
    }

    /// `ht(I) = max { i | x_i ∈ √I }` for strongly stable `I`.
    pub fn height(&self) -> Result<usize> {
        self.require_strongly_stable_proper()?;
        Ok(self
            .generators
            .iter()
            .filter_map(Monomial::as_pure_power)
            .map(|(i, _)| i)
            .max()
            .expect("a nonzero strongly stable ideal contains a power of x_1"))
    }

    /// `proj-dim_S(S/I) = ν(I)` for strongly stable `I`.
    pub fn proj_dim_quotient(&self) -> Result<usize> {
        self.require_strongly_stable_proper()?;
        Ok(self.nu())
    }

    pub fn is_cohen_macaulay(&self) -> Result<bool> {
        Ok(self.proj_dim_quotient()? == self.height()?)
    }

    pub fn display_with(&self, letter: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.generators
            .iter()
            .map(|m| m.display_with(letter))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('x'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, gens).unwrap()
    }

    fn running_example() -> MonomialIdeal {
        ideal(
            3,
            &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1]],
        )
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(ideal(1, &[&[1], &[2]]).to_string(), "x1");
        assert!(minimalize(Vec::new(), 2).unwrap().is_zero());
        assert_eq!(
            ideal(2, &[&[1, 1], &[0, 2], &[1, 2]]).to_string(),
            "x1*x2, x2^2"
        );
        assert_eq!(
            minimalize(vec![Monomial::new(vec![1])], 2),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn contains_examples() {
        let i = ideal(3, &[&[2, 0, 0], &[1, 1, 0]]);
        assert!(i.contains(&Monomial::new(vec![2, 0, 1])).unwrap());
        let j = ideal(2, &[&[1, 0]]);
        assert!(!j.contains(&Monomial::new(vec![0, 1])).unwrap());
        assert!(!MonomialIdeal::zero(2).contains(&Monomial::one(2)).unwrap());
        assert!(j.contains(&Monomial::one(3)).is_err());
    }

    #[test]
    fn strong_stability_examples() {
        assert!(running_example().is_strongly_stable());
        assert!(ideal(2, &[&[1, 0]]).is_strongly_stable());
        let j = ideal(
            3,
            &[&[3, 0, 0], &[2, 1, 0], &[1, 2, 0], &[0, 3, 0], &[1, 0, 1]],
        );
        assert!(!j.is_strongly_stable());
    }

    #[test]
    fn borel_closure_examples() {
        let c = |e: &[u32]| borel_closure(vec![Monomial::new(e.to_vec())], e.len()).unwrap();
        assert_eq!(c(&[1, 0]).to_string(), "x1");
        assert_eq!(c(&[0, 1]).to_string(), "x1, x2");
        let closed = c(&[1, 0, 1]);
        assert_eq!(closed.to_string(), "x1^2, x1*x2, x1*x3");
        assert!(closed.is_strongly_stable());
    }

    #[test]
    fn colon_examples() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(i.colon_variable(2).unwrap().to_string(), "x1");
        assert_eq!(
            ideal(2, &[&[1, 0]]).colon_variable(2).unwrap().to_string(),
            "x1"
        );
        let k = ideal(
            3,
            &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 2]],
        );
        let colon = k.colon_variable(3).unwrap();
        // x1*x3 is a generator, so x1 lies in the colon.
        assert_eq!(colon.to_string(), "x1, x2^2, x2*x3");
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let m = Monomial::new(vec![a, b, c]);
                    assert_eq!(
                        colon.contains(&m).unwrap(),
                        k.contains(&m.times_var(3)).unwrap()
                    );
                }
            }
        }
        assert_eq!(
            i.colon_variable(3),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        );
    }

    #[test]
    fn saturation_examples() {
        let i = ideal(
            3,
            &[&[3, 0, 0], &[2, 1, 0], &[1, 2, 0], &[1, 1, 2], &[2, 0, 2]],
        );
        let sat = i.saturate_variable(3).unwrap();
        assert_eq!(sat.to_string(), "x1^2, x1*x2");
        assert_eq!(sat.saturate_variable(2).unwrap().to_string(), "x1");
        let x1 = ideal(2, &[&[1, 0]]);
        assert_eq!(x1.saturate_variable(2).unwrap(), x1);
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(
            running_example().restrict_away_last().to_string(),
            "x1^2, x1*x2, x2^2"
        );
        assert!(ideal(3, &[&[0, 0, 1]]).restrict_away_last().is_zero());
        let x1 = ideal(1, &[&[1]]);
        assert_eq!(x1.restrict_away_last(), MonomialIdeal::zero(1));
        let x1_in_2 = ideal(2, &[&[1, 0]]);
        assert_eq!(x1_in_2.restrict_away_last(), x1_in_2);
    }

    #[test]
    fn height_and_depth_invariants() {
        let i = running_example();
        assert_eq!(i.height().unwrap(), 2);
        assert_eq!(i.proj_dim_quotient().unwrap(), 3);
        assert!(!i.is_cohen_macaulay().unwrap());

        let artinian = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(artinian.height().unwrap(), 2);
        assert_eq!(artinian.proj_dim_quotient().unwrap(), 2);
        assert!(artinian.is_cohen_macaulay().unwrap());

        let power = ideal(1, &[&[4]]);
        assert_eq!(power.height().unwrap(), 1);
        assert!(power.is_cohen_macaulay().unwrap());

        assert_eq!(MonomialIdeal::zero(2).height(), Err(Error::DegenerateIdeal));
        assert_eq!(MonomialIdeal::unit(2).height(), Err(Error::DegenerateIdeal));
        assert_eq!(ideal(2, &[&[0, 1]]).height(), Err(Error::NotStronglyStable));
    }

    #[test]
    fn intersection_of_primes() {
        let a = ideal(2, &[&[1, 0]]);
        let b = ideal(2, &[&[0, 1]]);
        assert_eq!(a.intersect(&b).unwrap().to_string(), "x1*x2");
    }
}
