//! Irreducible decompositions.
//!
//! A strongly stable ideal `I ≠ 0` is an irredundant intersection of
//! initial-segment ideals `m^a = (x_1^{a_1}, ..., x_t^{a_t})`. The components
//! are found here by peeling off the top-height components read from the
//! generators of largest `ν`, then saturating. The general splitting oracle
//! handles arbitrary monomial ideals and is kept independent of that path.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{minimalize, MonomialIdeal};
use crate::monomial::Monomial;
use crate::polarize::GridIdeal;

/// `m^a = (x_1^{a_1}, ..., x_t^{a_t})`, all `a_i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IrreducibleComponent {
    a: Vec<u32>,
}

impl IrreducibleComponent {
    pub fn new(a: Vec<u32>) -> Result<Self> {
        if a.is_empty() || a.contains(&0) {
            return Err(Error::InvalidComponent(format!("{a:?}")));
        }
        Ok(Self { a })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.a
    }

    /// `t(a)`: number of variables, which is also the height of `m^a`.
    pub fn t(&self) -> usize {
        self.a.len()
    }

    /// `e(a) = a_t`.
    pub fn e(&self) -> u32 {
        *self.a.last().expect("nonempty")
    }

    /// `w(a) = n - Σ a_i`.
    pub fn w(&self, n: usize) -> i64 {
        n as i64 - self.a.iter().map(|&x| i64::from(x)).sum::<i64>()
    }

    /// `m^self ⊆ m^other`.
    pub fn is_contained_in(&self, other: &IrreducibleComponent) -> bool {
        self.t() <= other.t() && self.a.iter().zip(&other.a).all(|(s, o)| s >= o)
    }

    pub fn to_ideal(&self, n: usize) -> Result<MonomialIdeal> {
        if self.t() > n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.t(),
            });
        }
        let gens = self
            .a
            .iter()
            .enumerate()
            .map(|(i, &p)| Monomial::var_power(n, i + 1, p))
            .collect::<Result<Vec<_>>>()?;
        minimalize(gens, n)
    }
}

impl Ord for IrreducibleComponent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.t().cmp(&other.t()).then_with(|| self.a.cmp(&other.a))
    }
}

impl PartialOrd for IrreducibleComponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IrreducibleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.a.iter())
    }
}

fn write_tuple<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    let parts: Vec<String> = items.map(|x| x.to_string()).collect();
    write!(f, "({})", parts.join(","))
}

/// `(x_{1,b_1}, ..., x_{t,b_t})` in the grid ring, with `b` nondecreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridComponent {
    b: Vec<usize>,
}

impl GridComponent {
    pub fn new(b: Vec<usize>) -> Result<Self> {
        if b.is_empty() || b[0] == 0 || b.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotInitialSegment(format!("{b:?}")));
        }
        Ok(Self { b })
    }

    pub fn columns(&self) -> &[usize] {
        &self.b
    }

    pub fn t(&self) -> usize {
        self.b.len()
    }

    /// Column of the last row, `γ_{t}`.
    pub fn last(&self) -> usize {
        *self.b.last().expect("nonempty")
    }

    /// The cells `(i, b_i)`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.b.iter().enumerate().map(|(i, &c)| (i + 1, c))
    }
}

impl Ord for GridComponent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.t().cmp(&other.t()).then_with(|| self.b.cmp(&other.b))
    }
}

impl PartialOrd for GridComponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GridComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.b.iter())
    }
}

/// An irreducible monomial ideal `(x_i^{p_i} | i ∈ support)` with arbitrary
/// support.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralComponent {
    powers: BTreeMap<usize, u32>,
}

impl GeneralComponent {
    pub fn new(powers: BTreeMap<usize, u32>) -> Result<Self> {
        if powers.is_empty() || powers.iter().any(|(&i, &p)| i == 0 || p == 0) {
            return Err(Error::InvalidComponent(format!("{powers:?}")));
        }
        Ok(Self { powers })
    }

    /// A squarefree component `(x_i | i ∈ support)`.
    pub fn prime(support: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(support.into_iter().map(|i| (i, 1)).collect())
    }

    pub fn powers(&self) -> &BTreeMap<usize, u32> {
        &self.powers
    }

    pub fn support(&self) -> Vec<usize> {
        self.powers.keys().copied().collect()
    }

    pub fn height(&self) -> usize {
        self.powers.len()
    }

    pub fn is_contained_in(&self, other: &GeneralComponent) -> bool {
        self.powers
            .iter()
            .all(|(i, p)| other.powers.get(i).is_some_and(|q| q <= p))
    }

    pub fn to_ideal(&self, n: usize) -> Result<MonomialIdeal> {
        let gens = self
            .powers
            .iter()
            .map(|(&i, &p)| Monomial::var_power(n, i, p))
            .collect::<Result<Vec<_>>>()?;
        minimalize(gens, n)
    }

    /// Back to initial-segment form, when the support is `{1, ..., t}`.
    pub fn to_initial_segment(&self) -> Option<IrreducibleComponent> {
        let t = self.powers.len();
        if self.powers.keys().copied().eq(1..=t) {
            IrreducibleComponent::new(self.powers.values().copied().collect()).ok()
        } else {
            None
        }
    }
}

impl From<&IrreducibleComponent> for GeneralComponent {
    fn from(a: &IrreducibleComponent) -> Self {
        GeneralComponent {
            powers: a.a.iter().enumerate().map(|(i, &p)| (i + 1, p)).collect(),
        }
    }
}

impl Ord for GeneralComponent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |c: &GeneralComponent| c.powers.iter().map(|(&i, &p)| (i, p)).collect::<Vec<_>>();
        self.height()
            .cmp(&other.height())
            .then_with(|| key(self).cmp(&key(other)))
    }
}

impl PartialOrd for GeneralComponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneralComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .powers
            .iter()
            .map(|(&i, &p)| {
                if p == 1 {
                    format!("x{i}")
                } else {
                    format!("x{i}^{p}")
                }
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `Ψ(a)`: the `e(a)` grid components of `b-pol(I)` coming from the
/// component `m^a` of `I`.
pub fn psi(a: &IrreducibleComponent) -> Vec<GridComponent> {
    let t = a.t();
    let exps = a.exponents();
    // b_i = (a_1 + ... + a_i) - i + 1 for i < t
    let mut prefix: Vec<usize> = Vec::with_capacity(t);
    let mut sum = 0usize;
    for (i, &x) in exps.iter().take(t - 1).enumerate() {
        sum += x as usize;
        prefix.push(sum - i);
    }
    let (lo, hi) = match prefix.last() {
        Some(&b) => (b, b + a.e() as usize - 1),
        None => (1, a.e() as usize),
    };
    (lo..=hi)
        .map(|c| {
            let mut b = prefix.clone();
            b.push(c);
            GridComponent::new(b).expect("psi yields nondecreasing tuples")
        })
        .collect()
}

/// `Ψ(E)`, sorted.
pub fn bpol_decomposition(components: &[IrreducibleComponent]) -> Vec<GridComponent> {
    let mut out: Vec<GridComponent> = components.iter().flat_map(psi).collect();
    out.sort();
    out
}

/// `â = (a_1 + 1, ..., a_{l-1} + 1, a_l)` for each `x^a ∈ G(I)` with
/// `ν(x^a) = ν(I)`: exactly the components of height `ν(I)`.
pub fn top_components(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    ideal.require_strongly_stable_proper()?;
    Ok(top_components_unchecked(ideal))
}

fn top_components_unchecked(ideal: &MonomialIdeal) -> Vec<IrreducibleComponent> {
    let l = ideal.nu();
    let mut out: Vec<IrreducibleComponent> = ideal
        .generators()
        .iter()
        .filter(|m| m.nu() == l)
        .map(|m| {
            let mut a: Vec<u32> = m.exponents()[..l].to_vec();
            for x in a.iter_mut().take(l - 1) {
                *x += 1;
            }
            IrreducibleComponent::new(a).expect("a_l > 0 and shifted entries >= 1")
        })
        .collect();
    out.sort();
    out
}

fn irredundant<T: Clone + Ord>(mut comps: Vec<T>, contained: impl Fn(&T, &T) -> bool) -> Vec<T> {
    comps.sort();
    comps.dedup();
    let keep: Vec<T> = comps
        .iter()
        .filter(|c| !comps.iter().any(|o| o != *c && contained(o, c)))
        .cloned()
        .collect();
    keep
}

/// Irredundant irreducible decomposition of a strongly stable ideal.
pub fn decompose_strongly_stable(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    ideal.require_strongly_stable_proper()?;
    let mut current = ideal.clone();
    let mut found = Vec::new();
    while !current.is_zero() && !current.is_unit() {
        let l = current.nu();
        found.extend(top_components_unchecked(&current));
        current = current.saturate_variable(l)?;
    }
    Ok(irredundant(found, |a, b| a.is_contained_in(b)))
}

/// Irredundant irreducible decomposition of any monomial ideal by coprime
/// splitting: a generator `m = u·v` with `gcd(u, v) = 1` gives
/// `I = (I + (u)) ∩ (I + (v))`; ideals generated by pure powers are irreducible.
pub fn decompose_oracle(ideal: &MonomialIdeal) -> Result<Vec<GeneralComponent>> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::DegenerateIdeal);
    }
    let mut leaves = BTreeSet::new();
    split(ideal, &mut leaves)?;
    Ok(irredundant(leaves.into_iter().collect(), |a, b| {
        a.is_contained_in(b)
    }))
}

fn split(ideal: &MonomialIdeal, leaves: &mut BTreeSet<GeneralComponent>) -> Result<()> {
    let pivot = ideal.generators().iter().find(|m| m.support().len() >= 2);
    match pivot {
        None => {
            let powers = ideal
                .generators()
                .iter()
                .map(|m| m.as_pure_power().expect("all generators are pure powers"))
                .collect();
            leaves.insert(GeneralComponent::new(powers)?);
        }
        Some(m) => {
            let k = m.nu();
            let u = Monomial::var_power(m.num_vars(), k, m.exponent(k))?;
            let v = m.checked_div(&u).expect("u divides m");
            split(&ideal.add_generator(u)?, leaves)?;
            split(&ideal.add_generator(v)?, leaves)?;
        }
    }
    Ok(())
}

/// Right-shift test on a set of initial-segment components: for each
/// `a ∈ E`, `a_i > 1` and `i < j <= t(a)`, some `b ∈ E` has
/// `m^b ⊆ m^{a - e_i + e_j}`. For such `E` this holds exactly when
/// `⋂ m^a` is strongly stable.
pub fn right_shift_check(components: &[IrreducibleComponent], n: usize) -> bool {
    if components.iter().any(|a| a.t() > n) {
        return false;
    }
    components.iter().all(|a| {
        let t = a.t();
        (0..t).filter(|&i| a.a[i] > 1).all(|i| {
            (i + 1..t).all(|j| {
                let mut shifted = a.a.clone();
                shifted[i] -= 1;
                shifted[j] += 1;
                let shifted = IrreducibleComponent { a: shifted };
                components.iter().any(|b| b.is_contained_in(&shifted))
            })
        })
    })
}

/// `⋂ m^a` with minimal generators. The empty intersection is the unit ideal.
pub fn intersect_components(
    components: &[IrreducibleComponent],
    n: usize,
) -> Result<MonomialIdeal> {
    let general: Vec<GeneralComponent> = components.iter().map(GeneralComponent::from).collect();
    intersect_general(&general, n)
}

pub fn intersect_general(components: &[GeneralComponent], n: usize) -> Result<MonomialIdeal> {
    let mut acc = MonomialIdeal::unit(n);
    for c in components {
        acc = acc.intersect(&c.to_ideal(n)?)?;
    }
    Ok(acc)
}

/// Irreducible components of a grid ideal, required to be of the form
/// `(x_{1,γ_1}, ..., x_{t,γ_t})` with `γ` nondecreasing. Any other component
/// is reported as [`Error::NotInitialSegment`]; for `J = b-pol(I)` that
/// happens exactly when `I` is not strongly stable.
pub fn grid_components(grid: &GridIdeal) -> Result<Vec<GridComponent>> {
    let cols = grid.cols();
    let mut out = Vec::new();
    for comp in decompose_oracle(grid.flat())? {
        let cells: Vec<(usize, usize)> = comp
            .support()
            .into_iter()
            .map(|v| ((v - 1) / cols + 1, (v - 1) % cols + 1))
            .collect();
        let rows_ok = cells.iter().enumerate().all(|(k, &(i, _))| i == k + 1);
        let described = cells
            .iter()
            .map(|(i, j)| format!("x{i}_{j}"))
            .collect::<Vec<_>>()
            .join(", ");
        if !rows_ok {
            return Err(Error::NotInitialSegment(format!("({described})")));
        }
        let b: Vec<usize> = cells.iter().map(|&(_, j)| j).collect();
        out.push(
            GridComponent::new(b)
                .map_err(|_| Error::NotInitialSegment(format!("({described})")))?,
        );
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarize::bpol_ideal;

    fn comp(a: &[u32]) -> IrreducibleComponent {
        IrreducibleComponent::new(a.to_vec()).unwrap()
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, gens).unwrap()
    }

    fn shown<T: fmt::Display>(items: &[T]) -> String {
        items
            .iter()
            .map(T::to_string)
            .collect::<Vec<_>>()
            .join("; ")
    }

    fn saturation_example() -> MonomialIdeal {
        ideal(
            3,
            &[&[3, 0, 0], &[2, 1, 0], &[1, 2, 0], &[1, 1, 2], &[2, 0, 2]],
        )
    }

    fn mixed_height_example() -> MonomialIdeal {
        ideal(
            3,
            &[&[2, 0, 0], &[1, 1, 0], &[0, 3, 0], &[1, 0, 1], &[0, 2, 1]],
        )
    }

    #[test]
    fn component_accessors() {
        let a = comp(&[3, 2, 1, 2]);
        assert_eq!((a.t(), a.e(), a.w(4)), (4, 2, -4));
        assert!(IrreducibleComponent::new(vec![1, 0]).is_err());
        assert!(IrreducibleComponent::new(vec![]).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(shown(&psi(&comp(&[3, 2, 1, 2]))), "(3,4,4,4); (3,4,4,5)");
        assert_eq!(shown(&psi(&comp(&[1, 1]))), "(1,1)");
        assert_eq!(shown(&psi(&comp(&[2]))), "(1); (2)");
    }

    #[test]
    fn strongly_stable_decomposition_examples() {
        let e = decompose_strongly_stable(&saturation_example()).unwrap();
        assert_eq!(shown(&e), "(1); (2,1); (2,2,2); (3,1,2)");
        let e = decompose_strongly_stable(&mixed_height_example()).unwrap();
        assert_eq!(shown(&e), "(1,2); (1,3,1); (2,1,1)");
        let e = decompose_strongly_stable(&ideal(1, &[&[4]])).unwrap();
        assert_eq!(shown(&e), "(4)");
        assert_eq!(
            decompose_strongly_stable(&ideal(2, &[&[0, 1]])),
            Err(Error::NotStronglyStable)
        );
        assert_eq!(
            decompose_strongly_stable(&MonomialIdeal::unit(2)),
            Err(Error::DegenerateIdeal)
        );
    }

    #[test]
    fn top_component_examples() {
        assert_eq!(
            shown(&top_components(&saturation_example()).unwrap()),
            "(2,2,2); (3,1,2)"
        );
        assert_eq!(
            shown(&top_components(&ideal(2, &[&[2, 0], &[1, 1]])).unwrap()),
            "(2,1)"
        );
        assert_eq!(shown(&top_components(&ideal(1, &[&[3]])).unwrap()), "(3)");
    }

    #[test]
    fn bpol_decomposition_examples() {
        let e_perturbed = vec![comp(&[1, 1]), comp(&[2, 1, 1]), comp(&[1, 2, 2])];
        assert_eq!(
            shown(&bpol_decomposition(&e_perturbed)),
            "(1,1); (1,2,2); (1,2,3); (2,2,2)"
        );
        let e_running = vec![comp(&[1, 1]), comp(&[1, 2, 1]), comp(&[2, 1, 1])];
        assert_eq!(
            shown(&bpol_decomposition(&e_running)),
            "(1,1); (1,2,2); (2,2,2)"
        );
        assert_eq!(shown(&bpol_decomposition(&[comp(&[3])])), "(1); (2); (3)");
    }

    #[test]
    fn oracle_examples() {
        let e = decompose_oracle(&ideal(2, &[&[1, 1]])).unwrap();
        assert_eq!(shown(&e), "(x1); (x2)");
        let e = decompose_oracle(&mixed_height_example()).unwrap();
        assert_eq!(shown(&e), "(x1, x2^2); (x1, x2^3, x3); (x1^2, x2, x3)");
        let grid = bpol_ideal(
            &ideal(
                3,
                &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1]],
            ),
            2,
        )
        .unwrap();
        // flat indices: x_{i,j} -> 2(i-1) + j
        let e = decompose_oracle(grid.flat()).unwrap();
        assert_eq!(shown(&e), "(x1, x3); (x1, x4, x6); (x2, x4, x6)");
        assert_eq!(
            decompose_oracle(&MonomialIdeal::zero(2)),
            Err(Error::DegenerateIdeal)
        );
    }

    #[test]
    fn right_shift_examples() {
        let good = vec![comp(&[1, 2]), comp(&[2, 1, 1]), comp(&[1, 3, 1])];
        assert!(right_shift_check(&good, 3));
        let bad = vec![comp(&[1, 3]), comp(&[2, 2, 1]), comp(&[3, 1, 1])];
        assert!(!right_shift_check(&bad, 3));
        assert!(right_shift_check(&[comp(&[1])], 1));
    }

    #[test]
    fn intersection_examples() {
        let e = vec![comp(&[1, 2]), comp(&[2, 1, 1]), comp(&[1, 3, 1])];
        assert_eq!(intersect_components(&e, 3).unwrap(), mixed_height_example());
        assert_eq!(
            intersect_components(&[comp(&[3])], 1).unwrap().to_string(),
            "x1^3"
        );
        let e = vec![comp(&[1, 1]), comp(&[1, 2, 1]), comp(&[2, 1, 1])];
        assert_eq!(
            intersect_components(&e, 3).unwrap().to_string(),
            "x1^2, x1*x2, x1*x3, x2^2, x2*x3"
        );
    }

    #[test]
    fn grid_component_validation() {
        let i = ideal(
            3,
            &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1]],
        );
        let comps = grid_components(&bpol_ideal(&i, 2).unwrap()).unwrap();
        assert_eq!(shown(&comps), "(1,1); (1,2,2); (2,2,2)");
        // (x2) is not strongly stable; b-pol is (x_{2,1}) whose component skips row 1.
        let bad = bpol_ideal(&ideal(2, &[&[0, 1]]), 1).unwrap();
        assert!(matches!(
            grid_components(&bad),
            Err(Error::NotInitialSegment(_))
        ));
    }
}
