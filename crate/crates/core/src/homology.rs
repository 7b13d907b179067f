//! Betti tables, local cohomology Hilbert series, arithmetic degree and the
//! Cohen–Macaulay criteria.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

use crate::decompose::{decompose_strongly_stable, GridComponent, IrreducibleComponent};
use crate::duality::star_dual;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::polarize::{bpol_monomial, GridIdeal, GridMonomial};
use crate::series::{binomial, hilbert_series_quotient, RationalSeries};

/// Generator bound for [`betti_oracle`].
pub const ORACLE_LIMIT: usize = 12;

/// Graded Betti numbers `β_{i,j}` of an ideal, keyed by `(i, j)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, i: usize, j: usize, value: u64) {
        if value > 0 {
            *self.entries.entry((i, j)).or_default() += value;
        }
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Degrees `j` with `β_{0,j} ≠ 0`.
    pub fn generator_degrees(&self) -> BTreeSet<usize> {
        self.entries
            .keys()
            .filter(|(i, _)| *i == 0)
            .map(|&(_, j)| j)
            .collect()
    }

    /// Linear resolution: every nonzero `β_{i,j}` has the same `j - i`.
    pub fn is_linear(&self) -> bool {
        let strands: BTreeSet<usize> = self.entries.keys().map(|&(i, j)| j - i).collect();
        strands.len() <= 1
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self
            .entries
            .iter()
            .map(|((i, j), v)| format!("beta_{i},{j} = {v}"))
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

/// Betti numbers of a strongly stable ideal:
/// `β_{i,i+j} = Σ_{m ∈ G(I), deg m = j} C(ν(m) - 1, i)`.
pub fn ek_betti(ideal: &MonomialIdeal) -> Result<BettiTable> {
    if !ideal.is_strongly_stable() {
        return Err(Error::NotStronglyStable);
    }
    let mut table = BettiTable::new();
    for m in ideal.generators() {
        let j = m.degree() as usize;
        let nu = m.nu().max(1);
        for i in 0..nu {
            let count = binomial(nu as i64 - 1, i as i64);
            table.add(i, i + j, u64::try_from(count).expect("small binomial"));
        }
    }
    Ok(table)
}

/// Rank over the rationals by fraction-free elimination. `None` on overflow.
fn rank_exact<T>(mut rows: Vec<Vec<T>>) -> Option<usize>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub,
{
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let g = pivot[col].gcd(&row[col]);
            let a = pivot[col].clone() / g.clone();
            let b = row[col].clone() / g;
            let mut content = T::zero();
            for (x, y) in row.iter_mut().zip(&pivot).skip(col) {
                *x = x.checked_mul(&a)?.checked_sub(&y.checked_mul(&b)?)?;
                content = content.gcd(x);
            }
            if !content.is_zero() && !content.is_one() {
                for x in row.iter_mut().skip(col) {
                    *x = x.clone() / content.clone();
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

fn rank_of(rows: &[Vec<i8>]) -> usize {
    let small: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    rank_exact(small).unwrap_or_else(|| {
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        rank_exact(big).expect("bigint arithmetic does not overflow")
    })
}

/// Reduced Betti numbers of the crosscut complex on `atoms` below `top`:
/// faces are the atom sets whose lcm is not `top`. Entry `s` is
/// `dim H̃_{s-1}`.
fn crosscut_homology(atoms: &[&Monomial], top: &Monomial) -> Vec<u64> {
    let support = top.support();
    let words = support.len().div_ceil(64).max(1);
    let masks: Vec<Vec<u64>> = atoms
        .iter()
        .map(|g| {
            let mut mask = vec![0u64; words];
            for (bit, &v) in support.iter().enumerate() {
                if g.exponent(v) == top.exponent(v) {
                    mask[bit / 64] |= 1 << (bit % 64);
                }
            }
            mask
        })
        .collect();
    let mut full = vec![0u64; words];
    for bit in 0..support.len() {
        full[bit / 64] |= 1 << (bit % 64);
    }
    let k = atoms.len();
    let subsets = 1usize << k;
    let mut cover = vec![0u64; subsets * words];
    for s in 1..subsets {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        for w in 0..words {
            cover[s * words + w] = cover[rest * words + w] | masks[low][w];
        }
    }
    let is_face = |s: usize| cover[s * words..(s + 1) * words] != full[..];

    // A cone point makes the complex contractible.
    let cone = (0..k).any(|a| {
        (0..subsets)
            .filter(|s| s & (1 << a) == 0 && is_face(*s))
            .all(|s| is_face(s | (1 << a)))
    });
    if cone {
        return vec![0; k + 1];
    }

    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for s in (0..subsets).filter(|&s| is_face(s)) {
        by_size[s.count_ones() as usize].push(s);
    }
    // rank of the boundary map from faces of size s to faces of size s - 1
    let mut ranks = vec![0usize; k + 2];
    for s in 1..=k {
        if by_size[s].is_empty() || by_size[s - 1].is_empty() {
            continue;
        }
        let index: BTreeMap<usize, usize> = by_size[s - 1]
            .iter()
            .enumerate()
            .map(|(i, &f)| (f, i))
            .collect();
        let rows: Vec<Vec<i8>> = by_size[s]
            .iter()
            .map(|&face| {
                let mut row = vec![0i8; by_size[s - 1].len()];
                let mut sign = 1;
                for a in (0..k).filter(|a| face & (1 << a) != 0) {
                    row[index[&(face & !(1 << a))]] = sign;
                    sign = -sign;
                }
                row
            })
            .collect();
        ranks[s] = rank_of(&rows);
    }
    (0..=k)
        .map(|s| (by_size[s].len() - ranks[s] - ranks[s + 1]) as u64)
        .collect()
}

/// Betti numbers of any monomial ideal with at most [`ORACLE_LIMIT`]
/// generators, from reduced homology of open intervals in the lcm lattice.
pub fn betti_oracle(ideal: &MonomialIdeal) -> Result<BettiTable> {
    let gens = ideal.generators();
    if gens.len() > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge {
            generators: gens.len(),
            limit: ORACLE_LIMIT,
        });
    }
    let mut lattice: BTreeSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = lattice.iter().cloned().collect();
    while let Some(m) = frontier.pop() {
        for g in gens {
            let l = m.lcm(g);
            if lattice.insert(l.clone()) {
                frontier.push(l);
            }
        }
    }
    let mut table = BettiTable::new();
    for m in &lattice {
        let atoms: Vec<&Monomial> = gens.iter().filter(|g| g.divides(m)).collect();
        for (i, h) in crosscut_homology(&atoms, m).into_iter().enumerate() {
            table.add(i, m.degree() as usize, h);
        }
    }
    Ok(table)
}

pub fn betti_oracle_grid(grid: &GridIdeal) -> Result<BettiTable> {
    betti_oracle(grid.flat())
}

/// Entry `i` is `H(H_m^i(S/I), λ^{-1})`; zero entries are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LocalCohSeries {
    entries: BTreeMap<usize, RationalSeries>,
}

impl LocalCohSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_to(&mut self, i: usize, term: &RationalSeries) {
        let sum = self.entry(i).add(term);
        if sum.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, sum);
        }
    }

    pub fn entry(&self, i: usize) -> RationalSeries {
        self.entries
            .get(&i)
            .cloned()
            .unwrap_or_else(RationalSeries::zero)
    }

    pub fn entries(&self) -> &BTreeMap<usize, RationalSeries> {
        &self.entries
    }

    /// Indices with a nonzero entry.
    pub fn support(&self) -> Vec<usize> {
        self.entries.keys().copied().collect()
    }

    /// `Σ_i (-1)^i` entry `i`.
    pub fn euler_sum(&self) -> RationalSeries {
        self.entries
            .iter()
            .fold(RationalSeries::zero(), |acc, (i, s)| {
                if i % 2 == 0 {
                    acc.add(s)
                } else {
                    acc.sub(s)
                }
            })
    }
}

impl fmt::Display for LocalCohSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self
            .entries
            .iter()
            .map(|(i, s)| format!("i={i}: {s}"))
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

/// `Σ_j β_{i-j, n-j}(I*) λ^j / (1-λ)^j`, with `I* = star_dual(I, cols)`.
pub fn lc_series_via_dual(ideal: &MonomialIdeal, cols: usize) -> Result<LocalCohSeries> {
    let n = ideal.num_vars() as i64;
    let betti = ek_betti(&star_dual(ideal, cols)?)?;
    let mut out = LocalCohSeries::new();
    for (&(p, q), &beta) in betti.entries() {
        let j = n - q as i64;
        let i = p as i64 + j;
        if !(0..=n).contains(&i) {
            return Err(Error::CrossCheck(format!(
                "dual Betti number at ({p},{q}) lands at cohomological index {i}"
            )));
        }
        let term = RationalSeries::term(beta as i64, j, 0).mul_one_minus_pow(-j);
        out.add_to(i as usize, &term);
    }
    Ok(out)
}

/// `Σ_{t(a) = n-i} (λ^{w(a)} + ... + λ^{w(a)+e(a)-1}) / (1-λ)^i`.
pub fn lc_series_via_components(components: &[IrreducibleComponent], n: usize) -> LocalCohSeries {
    let mut out = LocalCohSeries::new();
    for a in components.iter().filter(|a| a.t() <= n) {
        let i = n - a.t();
        let w = a.w(n);
        let terms: Vec<(i64, i64)> = (0..i64::from(a.e())).map(|k| (w + k, 1)).collect();
        let num = RationalSeries::laurent(&terms);
        out.add_to(i, &num.mul_one_minus_pow(-(i as i64)));
    }
    out
}

/// `Σ_{t_s = n-i} λ^{i - γ_last + 1} / (1-λ)^i` over the grid components.
pub fn lc_series_via_gamma(grid_components: &[GridComponent], n: usize) -> LocalCohSeries {
    let mut out = LocalCohSeries::new();
    for b in grid_components.iter().filter(|b| b.t() <= n) {
        let i = n - b.t();
        let exp = i as i64 - b.last() as i64 + 1;
        out.add_to(i, &RationalSeries::term(1, exp, i as u32));
    }
    out
}

/// Arithmetic degree data of `S/I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithmeticDegree {
    /// `adeg_i` for each `i` with a nonzero value.
    pub strata: BTreeMap<usize, u64>,
    pub total: u64,
    pub degree: u64,
}

pub fn adeg(components: &[IrreducibleComponent], n: usize) -> ArithmeticDegree {
    let mut strata = BTreeMap::new();
    for a in components.iter().filter(|a| a.t() <= n) {
        *strata.entry(n - a.t()).or_default() += u64::from(a.e());
    }
    let total = strata.values().sum();
    let height = components.iter().map(IrreducibleComponent::t).min();
    let degree = height
        .and_then(|h| n.checked_sub(h))
        .and_then(|i| strata.get(&i).copied())
        .unwrap_or(0);
    ArithmeticDegree {
        strata,
        total,
        degree,
    }
}

/// `(n - ν(I), Σ_{ν(x^a) = ν(I)} a_{ν(I)})`, read directly off `G(I)`.
pub fn adeg_top_stratum(ideal: &MonomialIdeal) -> Result<(usize, u64)> {
    ideal.require_strongly_stable_proper()?;
    let l = ideal.nu();
    let sum = ideal
        .generators()
        .iter()
        .filter(|m| m.nu() == l)
        .map(|m| u64::from(m.exponent(l)))
        .sum();
    Ok((ideal.num_vars() - l, sum))
}

/// `deg(S/I)` from the Hilbert series.
pub fn degree_from_hilbert(ideal: &MonomialIdeal) -> BigInt {
    hilbert_series_quotient(ideal).multiplicity()
}

/// Linear resolution of a strongly stable ideal.
pub fn has_linear_resolution(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(ek_betti(ideal)?.is_linear())
}

/// Cohen–Macaulayness of `S/I` read off `I*`.
pub fn is_cm_via_dual(ideal: &MonomialIdeal, cols: usize) -> Result<bool> {
    has_linear_resolution(&star_dual(ideal, cols)?)
}

/// Generators `X̃ / μ(m)` for `m ∈ G(I)` with `ν(m) = ht(I)`, where
/// `μ(x^a) = (∏_{i<l} x_{i, b_i + 1}) · b-pol(x^a)` and `b_i = a_1 + ... + a_i`.
pub fn canonical_generators(ideal: &MonomialIdeal, cols: usize) -> Result<Vec<GridMonomial>> {
    ideal.require_strongly_stable_proper()?;
    if !ideal.is_cohen_macaulay()? {
        return Err(Error::NotCohenMacaulay);
    }
    let n = ideal.num_vars();
    let c = ideal.height()?;
    let mut out = BTreeSet::new();
    for m in ideal.generators().iter().filter(|m| m.nu() == c) {
        let mut cells = bpol_monomial(m, cols)?.cells().clone();
        let mut partial = 0usize;
        for i in 1..c {
            partial += m.exponent(i) as usize;
            cells.insert((i, partial + 1));
        }
        let complement = (1..=n)
            .flat_map(|i| (1..=cols).map(move |j| (i, j)))
            .filter(|cell| !cells.contains(cell));
        out.insert(GridMonomial::new(n, cols, complement)?);
    }
    Ok(out.into_iter().collect())
}

/// Local duality Euler check: `Σ (-1)^i H(H_m^i(S/I), λ^{-1}) = H(S/I, λ^{-1})`.
pub fn euler_consistency(ideal: &MonomialIdeal) -> Result<bool> {
    ideal.require_strongly_stable_proper()?;
    let components = decompose_strongly_stable(ideal)?;
    let lc = lc_series_via_components(&components, ideal.num_vars());
    Ok(lc.euler_sum() == hilbert_series_quotient(ideal).invert_variable())
}
