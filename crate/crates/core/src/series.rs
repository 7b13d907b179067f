//! Rational functions `N(λ) / (1 - λ)^k` with a Laurent-polynomial numerator,
//! and the Hilbert series of `S/I`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Kept in canonical form: no zero coefficients, and when `denom_power > 0`
/// the numerator is not divisible by `1 - λ`. Structural equality is
/// therefore equality of rational functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    numerator: BTreeMap<i64, BigInt>,
    denom_power: u32,
}

fn mul_one_minus(num: &BTreeMap<i64, BigInt>) -> BTreeMap<i64, BigInt> {
    let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (&e, c) in num {
        *out.entry(e).or_default() += c;
        *out.entry(e + 1).or_default() -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl RationalSeries {
    pub fn new(numerator: BTreeMap<i64, BigInt>, denom_power: u32) -> Self {
        let mut s = Self {
            numerator,
            denom_power,
        };
        s.canonicalize();
        s
    }

    pub fn zero() -> Self {
        Self {
            numerator: BTreeMap::new(),
            denom_power: 0,
        }
    }

    pub fn one() -> Self {
        Self::term(1, 0, 0)
    }

    /// `coeff · λ^exp / (1 - λ)^denom_power`.
    pub fn term(coeff: i64, exp: i64, denom_power: u32) -> Self {
        Self::new(BTreeMap::from([(exp, BigInt::from(coeff))]), denom_power)
    }

    /// A Laurent polynomial from `(exponent, coefficient)` pairs.
    pub fn laurent(terms: &[(i64, i64)]) -> Self {
        let mut num: BTreeMap<i64, BigInt> = BTreeMap::new();
        for &(e, c) in terms {
            *num.entry(e).or_default() += c;
        }
        Self::new(num, 0)
    }

    pub fn numerator(&self) -> &BTreeMap<i64, BigInt> {
        &self.numerator
    }

    pub fn denom_power(&self) -> u32 {
        self.denom_power
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    fn canonicalize(&mut self) {
        self.numerator.retain(|_, c| !c.is_zero());
        if self.numerator.is_empty() {
            self.denom_power = 0;
            return;
        }
        while self.denom_power > 0 && self.numerator_at_one().is_zero() {
            // N = (1 - λ) Q with Q_e = Σ_{e' <= e} N_{e'}.
            let lo = *self.numerator.keys().next().expect("nonempty");
            let hi = *self.numerator.keys().next_back().expect("nonempty");
            let mut quotient = BTreeMap::new();
            let mut running = BigInt::zero();
            for e in lo..hi {
                if let Some(c) = self.numerator.get(&e) {
                    running += c;
                }
                if !running.is_zero() {
                    quotient.insert(e, running.clone());
                }
            }
            self.numerator = quotient;
            self.denom_power -= 1;
        }
    }

    /// Numerator evaluated at `λ = 1`.
    pub fn numerator_at_one(&self) -> BigInt {
        self.numerator.values().sum()
    }

    /// Krull dimension read off the canonical form (the pole order at 1).
    pub fn krull_dimension(&self) -> u32 {
        self.denom_power
    }

    /// Multiplicity read off the canonical form.
    pub fn multiplicity(&self) -> BigInt {
        self.numerator_at_one()
    }

    fn numerator_scaled_to(&self, denom_power: u32) -> BTreeMap<i64, BigInt> {
        let mut num = self.numerator.clone();
        for _ in self.denom_power..denom_power {
            num = mul_one_minus(&num);
        }
        num
    }

    pub fn add(&self, other: &RationalSeries) -> RationalSeries {
        let k = self.denom_power.max(other.denom_power);
        let mut num = self.numerator_scaled_to(k);
        for (e, c) in other.numerator_scaled_to(k) {
            *num.entry(e).or_default() += c;
        }
        RationalSeries::new(num, k)
    }

    pub fn neg(&self) -> RationalSeries {
        RationalSeries {
            numerator: self.numerator.iter().map(|(&e, c)| (e, -c)).collect(),
            denom_power: self.denom_power,
        }
    }

    pub fn sub(&self, other: &RationalSeries) -> RationalSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &BigInt) -> RationalSeries {
        RationalSeries::new(
            self.numerator
                .iter()
                .map(|(&e, c)| (e, c * factor))
                .collect(),
            self.denom_power,
        )
    }

    /// Multiplies by `λ^shift`.
    pub fn shift(&self, shift: i64) -> RationalSeries {
        RationalSeries {
            numerator: self
                .numerator
                .iter()
                .map(|(&e, c)| (e + shift, c.clone()))
                .collect(),
            denom_power: self.denom_power,
        }
    }

    /// Multiplies by `(1 - λ)^power`; negative powers divide.
    pub fn mul_one_minus_pow(&self, power: i64) -> RationalSeries {
        if power <= 0 {
            let extra = u32::try_from(-power).expect("power fits in u32");
            return RationalSeries::new(self.numerator.clone(), self.denom_power + extra);
        }
        let power = u32::try_from(power).expect("power fits in u32");
        if power <= self.denom_power {
            return RationalSeries::new(self.numerator.clone(), self.denom_power - power);
        }
        let mut num = self.numerator.clone();
        for _ in 0..power - self.denom_power {
            num = mul_one_minus(&num);
        }
        RationalSeries::new(num, 0)
    }

    /// Substitutes `λ ↦ λ^{-1}`:
    /// `N(λ^{-1}) / (1 - λ^{-1})^k = (-1)^k λ^k N(λ^{-1}) / (1 - λ)^k`.
    pub fn invert_variable(&self) -> RationalSeries {
        let k = i64::from(self.denom_power);
        let sign = if self.denom_power.is_multiple_of(2) {
            1
        } else {
            -1
        };
        RationalSeries::new(
            self.numerator
                .iter()
                .map(|(&e, c)| (k - e, c * sign))
                .collect(),
            self.denom_power,
        )
    }

    /// Coefficients of `λ^lo, ..., λ^hi` in the expansion as a Laurent series
    /// in `λ` (expanding `1/(1 - λ)^k` as a power series).
    pub fn expand(&self, lo: i64, hi: i64) -> Vec<BigInt> {
        let k = i64::from(self.denom_power);
        (lo..=hi)
            .map(|target| {
                self.numerator
                    .iter()
                    .filter(|(&e, _)| e <= target)
                    .map(|(&e, c)| c * multichoose(k, target - e))
                    .sum()
            })
            .collect()
    }

    fn numerator_string(&self) -> String {
        if self.numerator.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.numerator.iter().enumerate() {
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let power = match e {
                0 => String::new(),
                1 => "λ".to_string(),
                _ => format!("λ^{e}"),
            };
            if power.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{abs}{power}"));
            }
        }
        out
    }
}

/// Number of monomials of degree `d` in `k` variables, `C(d + k - 1, k - 1)`.
fn multichoose(k: i64, d: i64) -> BigInt {
    if k == 0 {
        return if d == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    binomial(d + k - 1, k - 1)
}

pub(crate) fn binomial(n: i64, r: i64) -> BigInt {
    if r < 0 || n < 0 || r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator_string();
        match self.denom_power {
            0 => f.write_str(&num),
            k => {
                let num = if self.numerator.len() > 1 {
                    format!("({num})")
                } else {
                    num
                };
                if k == 1 {
                    write!(f, "{num} / (1-λ)")
                } else {
                    write!(f, "{num} / (1-λ)^{k}")
                }
            }
        }
    }
}

/// Exact `H(S/I, λ)` by inclusion–exclusion over the lcms of generator
/// subsets: `Σ_F (-1)^{|F|} λ^{deg lcm F} / (1 - λ)^n`. Subsets with equal lcm
/// are merged as they are generated.
pub fn hilbert_series_quotient(ideal: &MonomialIdeal) -> RationalSeries {
    let n = ideal.num_vars();
    let mut lcms: HashMap<Monomial, i64> = HashMap::from([(Monomial::one(n), 1)]);
    for g in ideal.generators() {
        let mut next = lcms.clone();
        for (m, c) in &lcms {
            *next.entry(m.lcm(g)).or_insert(0) -= c;
        }
        next.retain(|_, c| *c != 0);
        lcms = next;
    }
    let mut num: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (m, c) in lcms {
        *num.entry(i64::from(m.degree())).or_default() += c;
    }
    RationalSeries::new(num, u32::try_from(n).expect("variable count fits in u32"))
}
