//! Alexander duality, the strongly stable dual `I*`, and the squarefree
//! operator `σ`.

use crate::decompose::{
    decompose_oracle, decompose_strongly_stable, psi, GeneralComponent, IrreducibleComponent,
};
use crate::error::{Error, Result};
use crate::ideal::{minimalize, MonomialIdeal};
use crate::monomial::Monomial;
use crate::polarize::{bpol_ideal, transpose, GridIdeal};

/// Alexander dual of a squarefree ideal: one generator `∏_{i∈F} x_i` per
/// irreducible component `(x_i | i ∈ F)`. By convention `(0)^∨ = (1)` and
/// `(1)^∨ = (0)`.
pub fn alexander_dual(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let n = ideal.num_vars();
    if ideal.is_zero() {
        return Ok(MonomialIdeal::unit(n));
    }
    if ideal.is_unit() {
        return Ok(MonomialIdeal::zero(n));
    }
    let gens = decompose_oracle(ideal)?
        .into_iter()
        .map(|c| Monomial::from_word(n, &c.support()))
        .collect::<Result<Vec<_>>>()?;
    minimalize(gens, n)
}

pub fn alexander_dual_grid(grid: &GridIdeal) -> Result<GridIdeal> {
    GridIdeal::from_flat(grid.rows(), grid.cols(), alexander_dual(grid.flat())?)
}

fn check_star_preconditions(ideal: &MonomialIdeal, cols: usize) -> Result<()> {
    ideal.require_strongly_stable_proper()?;
    let degree = ideal.max_degree();
    if degree as usize > cols {
        return Err(Error::DegreeExceedsGrid { degree, cols });
    }
    Ok(())
}

/// The strongly stable dual `I* ⊂ k[y_1, ..., y_d]`: each grid component
/// `(b_1, ..., b_t) ∈ Ψ(E)` of `b-pol(I)` contributes the generator
/// `y_{b_1} ... y_{b_t}`.
pub fn star_dual(ideal: &MonomialIdeal, cols: usize) -> Result<MonomialIdeal> {
    check_star_preconditions(ideal, cols)?;
    let mut gens = Vec::new();
    for a in decompose_strongly_stable(ideal)? {
        for b in psi(&a) {
            if b.last() > cols {
                return Err(Error::CrossCheck(format!(
                    "grid component {b} exceeds {cols} columns"
                )));
            }
            gens.push(Monomial::from_word(cols, b.columns())?);
        }
    }
    minimalize(gens, cols)
}

/// `(b-pol(I)^∨)^t` on the `d × n` grid, which should equal `b-pol(I*)`.
pub fn star_dual_witness(ideal: &MonomialIdeal, cols: usize) -> Result<GridIdeal> {
    check_star_preconditions(ideal, cols)?;
    Ok(transpose(&alexander_dual_grid(&bpol_ideal(ideal, cols)?)?))
}

/// `m^σ = x_{α_1} x_{α_2 + 1} ... x_{α_e + e - 1}` in `vars` variables.
pub fn sigma_monomial_in(m: &Monomial, vars: usize) -> Result<Monomial> {
    let word: Vec<usize> = m
        .index_word()
        .into_iter()
        .enumerate()
        .map(|(k, alpha)| alpha + k)
        .collect();
    Monomial::from_word(vars, &word)
}

/// `m^σ` in the smallest ring that holds it, `n + deg(m) - 1` variables.
pub fn sigma_monomial(m: &Monomial) -> Monomial {
    let vars = (m.num_vars() + m.degree() as usize)
        .saturating_sub(1)
        .max(m.num_vars());
    sigma_monomial_in(m, vars).expect("fits by construction")
}

/// `I^σ` in `n + d - 1` variables.
pub fn sigma_ideal(ideal: &MonomialIdeal, cols: usize) -> Result<MonomialIdeal> {
    if !ideal.is_strongly_stable() {
        return Err(Error::NotStronglyStable);
    }
    let degree = ideal.max_degree();
    if degree as usize > cols {
        return Err(Error::DegreeExceedsGrid { degree, cols });
    }
    let vars = ideal.num_vars() + cols - 1;
    let gens = ideal
        .generators()
        .iter()
        .map(|m| sigma_monomial_in(m, vars))
        .collect::<Result<Vec<_>>>()?;
    minimalize(gens, vars)
}

/// Components of `I^σ`: each `(b_1, ..., b_t) ∈ Ψ(E)` gives the prime
/// `(x_{b_i + i - 1} | 1 <= i <= t)`.
pub fn sigma_decomposition(components: &[IrreducibleComponent]) -> Vec<GeneralComponent> {
    let mut out: Vec<GeneralComponent> = components
        .iter()
        .flat_map(psi)
        .map(|b| {
            GeneralComponent::prime(b.cells().map(|(i, c)| c + i - 1)).expect("positive indices")
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Squarefree strong stability: for `m ∈ G(I)`, `x_i | m`, `j < i` and
/// `x_j ∤ m`, the shift `(x_j/x_i)·m` lies in `I`.
pub fn is_squarefree_strongly_stable(ideal: &MonomialIdeal) -> Result<bool> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(ideal.generators().iter().all(|m| {
        m.support().into_iter().all(|i| {
            (1..i)
                .filter(|&j| m.exponent(j) == 0)
                .all(|j| ideal.contains_unchecked(&m.shift(i, j).expect("x_i divides m")))
        })
    }))
}

/// `I ≡ J`: equal generator sets once both are viewed in the larger ring.
/// Variable names are irrelevant.
pub fn ideal_equiv(a: &MonomialIdeal, b: &MonomialIdeal) -> bool {
    let n = a.num_vars().max(b.num_vars());
    match (a.with_num_vars(n), b.with_num_vars(n)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}
