//! Polarizations into the grid ring `k[x_{i,j} | 1 <= i <= n, 1 <= j <= d]`.
//!
//! Grid ideals are squarefree and are stored as ordinary monomial ideals in
//! `n·d` variables, with `x_{i,j}` flattened to index `(i - 1)·d + j`. That
//! lets the generic machinery (Hilbert series, decomposition, Betti numbers)
//! work on them unchanged.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{minimalize, MonomialIdeal};
use crate::monomial::Monomial;
use crate::series::hilbert_series_quotient;

/// A squarefree monomial of the grid ring, as a set of `(row, column)` cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridMonomial {
    rows: usize,
    cols: usize,
    cells: BTreeSet<(usize, usize)>,
}

impl GridMonomial {
    pub fn new(
        rows: usize,
        cols: usize,
        cells: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let cells: BTreeSet<(usize, usize)> = cells.into_iter().collect();
        for &(i, j) in &cells {
            if i == 0 || i > rows {
                return Err(Error::IndexOutOfRange { index: i, n: rows });
            }
            if j == 0 || j > cols {
                return Err(Error::IndexOutOfRange { index: j, n: cols });
            }
        }
        Ok(Self { rows, cols, cells })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> &BTreeSet<(usize, usize)> {
        &self.cells
    }

    pub fn degree(&self) -> usize {
        self.cells.len()
    }

    pub fn to_flat(&self) -> Monomial {
        let mut e = vec![0; self.rows * self.cols];
        for &(i, j) in &self.cells {
            e[(i - 1) * self.cols + (j - 1)] = 1;
        }
        Monomial::new(e)
    }

    pub fn from_flat(rows: usize, cols: usize, m: &Monomial) -> Result<Self> {
        if m.num_vars() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: m.num_vars(),
            });
        }
        if !m.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let cells = m
            .support()
            .into_iter()
            .map(|v| ((v - 1) / cols + 1, (v - 1) % cols + 1));
        Self::new(rows, cols, cells)
    }

    pub fn display_with(&self, letter: char) -> String {
        if self.cells.is_empty() {
            return "1".to_string();
        }
        self.cells
            .iter()
            .map(|(i, j)| format!("{letter}{i}_{j}"))
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for GridMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('x'))
    }
}

/// A squarefree monomial ideal of the `rows × cols` grid ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridIdeal {
    rows: usize,
    cols: usize,
    flat: MonomialIdeal,
}

impl GridIdeal {
    pub fn new(
        rows: usize,
        cols: usize,
        gens: impl IntoIterator<Item = GridMonomial>,
    ) -> Result<Self> {
        let flat = gens
            .into_iter()
            .map(|g| {
                if g.rows != rows || g.cols != cols {
                    Err(Error::DimensionMismatch {
                        expected: rows * cols,
                        found: g.rows * g.cols,
                    })
                } else {
                    Ok(g.to_flat())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows,
            cols,
            flat: minimalize(flat, rows * cols)?,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            flat: MonomialIdeal::zero(rows * cols),
        }
    }

    pub fn from_flat(rows: usize, cols: usize, flat: MonomialIdeal) -> Result<Self> {
        if flat.num_vars() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: flat.num_vars(),
            });
        }
        if !flat.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Ok(Self { rows, cols, flat })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn flat(&self) -> &MonomialIdeal {
        &self.flat
    }

    pub fn len(&self) -> usize {
        self.flat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn generators(&self) -> Vec<GridMonomial> {
        self.flat
            .generators()
            .iter()
            .map(|m| GridMonomial::from_flat(self.rows, self.cols, m).expect("stored squarefree"))
            .collect()
    }

    pub fn contains(&self, m: &GridMonomial) -> Result<bool> {
        self.flat.contains(&m.to_flat())
    }

    pub fn display_with(&self, letter: char) -> String {
        if self.flat.is_zero() {
            return "0".to_string();
        }
        self.generators()
            .iter()
            .map(|g| g.display_with(letter))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for GridIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('x'))
    }
}

/// Number of grid columns used when the caller does not choose one: the
/// largest generator degree (at least 1).
pub fn default_cols(ideal: &MonomialIdeal) -> usize {
    (ideal.max_degree() as usize).max(1)
}

/// `b-pol(x_{α_1} ... x_{α_e}) = x_{α_1,1} x_{α_2,2} ... x_{α_e,e}`.
pub fn bpol_monomial(m: &Monomial, cols: usize) -> Result<GridMonomial> {
    let degree = m.degree();
    if degree as usize > cols {
        return Err(Error::DegreeExceedsGrid { degree, cols });
    }
    GridMonomial::new(
        m.num_vars(),
        cols,
        m.index_word()
            .into_iter()
            .enumerate()
            .map(|(k, alpha)| (alpha, k + 1)),
    )
}

pub fn bpol_ideal(ideal: &MonomialIdeal, cols: usize) -> Result<GridIdeal> {
    let gens = ideal
        .generators()
        .iter()
        .map(|m| bpol_monomial(m, cols))
        .collect::<Result<Vec<_>>>()?;
    let out = GridIdeal::new(ideal.num_vars(), cols, gens)?;
    debug_assert_eq!(out.len(), ideal.len());
    Ok(out)
}

/// Standard polarization `pol(x^a) = ∏_i x_{i,1} ... x_{i,a_i}`; needs every
/// single exponent (not the total degree) to be at most `cols`.
pub fn stdpol_monomial(m: &Monomial, cols: usize) -> Result<GridMonomial> {
    let mut cells = Vec::new();
    for (i, &a) in m.exponents().iter().enumerate() {
        if a as usize > cols {
            return Err(Error::DegreeExceedsGrid { degree: a, cols });
        }
        cells.extend((1..=a as usize).map(|j| (i + 1, j)));
    }
    GridMonomial::new(m.num_vars(), cols, cells)
}

pub fn stdpol_ideal(ideal: &MonomialIdeal, cols: usize) -> Result<GridIdeal> {
    let gens = ideal
        .generators()
        .iter()
        .map(|m| stdpol_monomial(m, cols))
        .collect::<Result<Vec<_>>>()?;
    GridIdeal::new(ideal.num_vars(), cols, gens)
}

/// Image under the collapse `x_{i,j} ↦ x_i`.
pub fn depolarize(grid: &GridIdeal) -> MonomialIdeal {
    let n = grid.rows();
    let gens = grid.generators().into_iter().map(|g| {
        let mut e = vec![0; n];
        for &(i, _) in g.cells() {
            e[i - 1] += 1;
        }
        Monomial::new(e)
    });
    minimalize(gens, n).expect("rows match")
}

/// `x_{i,j} ↦ y_{j,i}`: the same ideal on the `cols × rows` grid.
pub fn transpose(grid: &GridIdeal) -> GridIdeal {
    let gens = grid.generators().into_iter().map(|g| {
        GridMonomial::new(grid.cols, grid.rows, g.cells().iter().map(|&(i, j)| (j, i)))
            .expect("transposed cells stay in range")
    });
    GridIdeal::new(grid.cols, grid.rows, gens).expect("same shape")
}

/// Membership through the alternative polarization. For strongly stable
/// ideals this agrees with plain membership.
pub fn bpol_membership(ideal: &MonomialIdeal, m: &Monomial, cols: usize) -> Result<bool> {
    if !ideal.is_strongly_stable() {
        return Err(Error::NotStronglyStable);
    }
    if m.num_vars() != ideal.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: ideal.num_vars(),
            found: m.num_vars(),
        });
    }
    let grid = bpol_ideal(ideal, cols)?;
    grid.contains(&bpol_monomial(m, cols)?)
}

/// Checks that `grid` is a polarization of `ideal`: it collapses to `ideal`
/// and the `n(d - 1)` collapse forms are a regular sequence on the quotient,
/// tested through `H(S̃/J)·(1 - λ)^{n(d-1)} = H(S/I)`.
pub fn verify_polarization(ideal: &MonomialIdeal, grid: &GridIdeal) -> bool {
    if grid.rows() != ideal.num_vars() || depolarize(grid) != *ideal {
        return false;
    }
    let collapsed = ideal.num_vars() * (grid.cols() - 1);
    let lifted = hilbert_series_quotient(grid.flat())
        .mul_one_minus_pow(i64::try_from(collapsed).expect("small"));
    lifted == hilbert_series_quotient(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn running_example() -> MonomialIdeal {
        MonomialIdeal::from_exponents(
            3,
            &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn bpol_monomial_examples() {
        assert_eq!(
            bpol_monomial(&mono(&[1, 1]), 2).unwrap().to_string(),
            "x1_1*x2_2"
        );
        assert_eq!(
            bpol_monomial(&mono(&[2, 0]), 2).unwrap().to_string(),
            "x1_1*x1_2"
        );
        assert_eq!(
            bpol_monomial(&mono(&[0, 1, 2]), 3).unwrap().to_string(),
            "x2_1*x3_2*x3_3"
        );
        assert_eq!(
            bpol_monomial(&mono(&[0, 1, 2]), 2),
            Err(Error::DegreeExceedsGrid { degree: 3, cols: 2 })
        );
    }

    #[test]
    fn bpol_ideal_examples() {
        let b = bpol_ideal(&running_example(), 2).unwrap();
        assert_eq!(
            b.to_string(),
            "x1_1*x1_2, x1_1*x2_2, x1_1*x3_2, x2_1*x2_2, x2_1*x3_2"
        );
        assert!(bpol_ideal(&MonomialIdeal::zero(2), 1).unwrap().is_empty());
        let p = MonomialIdeal::from_exponents(1, &[&[3]]).unwrap();
        assert_eq!(bpol_ideal(&p, 3).unwrap().to_string(), "x1_1*x1_2*x1_3");
    }

    #[test]
    fn stdpol_examples() {
        assert_eq!(
            stdpol_monomial(&mono(&[1, 1]), 2).unwrap().to_string(),
            "x1_1*x2_1"
        );
        assert_eq!(
            stdpol_monomial(&mono(&[0, 2]), 2).unwrap().to_string(),
            "x2_1*x2_2"
        );
        assert_eq!(stdpol_monomial(&mono(&[0, 0]), 2).unwrap().to_string(), "1");
        assert_eq!(
            stdpol_ideal(&running_example(), 2).unwrap().to_string(),
            "x1_1*x1_2, x1_1*x2_1, x1_1*x3_1, x2_1*x2_2, x2_1*x3_1"
        );
        assert!(stdpol_monomial(&mono(&[3, 0]), 2).is_err());
        // Total degree 3 is fine for pol as long as each exponent fits.
        assert!(stdpol_monomial(&mono(&[2, 1]), 2).is_ok());
    }

    #[test]
    fn depolarize_examples() {
        let i = running_example();
        assert_eq!(depolarize(&bpol_ideal(&i, 2).unwrap()), i);
        assert_eq!(depolarize(&stdpol_ideal(&i, 2).unwrap()), i);
        let two_cells = GridIdeal::new(
            1,
            2,
            [
                GridMonomial::new(1, 2, [(1, 1)]).unwrap(),
                GridMonomial::new(1, 2, [(1, 2)]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(depolarize(&two_cells).to_string(), "x1");
    }

    #[test]
    fn transpose_examples() {
        let dual = GridIdeal::new(
            3,
            2,
            [
                GridMonomial::new(3, 2, [(1, 1), (2, 1)]).unwrap(),
                GridMonomial::new(3, 2, [(1, 1), (2, 2), (3, 2)]).unwrap(),
                GridMonomial::new(3, 2, [(1, 2), (2, 2), (3, 2)]).unwrap(),
            ],
        )
        .unwrap();
        let t = transpose(&dual);
        assert_eq!(t.rows(), 2);
        assert_eq!(t.cols(), 3);
        assert_eq!(
            t.display_with('y'),
            "y1_1*y1_2, y1_1*y2_2*y2_3, y2_1*y2_2*y2_3"
        );
        assert_eq!(transpose(&t), dual);
        assert_eq!(transpose(&GridIdeal::zero(3, 2)), GridIdeal::zero(2, 3));
    }

    #[test]
    fn membership_examples() {
        let i = running_example();
        assert!(bpol_membership(&i, &mono(&[1, 1, 0]), 2).unwrap());
        assert!(!bpol_membership(&i, &mono(&[0, 0, 2]), 2).unwrap());
        assert!(!bpol_membership(&i, &mono(&[0, 0, 0]), 2).unwrap());
        let unit = MonomialIdeal::unit(3);
        assert!(bpol_membership(&unit, &mono(&[0, 0, 0]), 1).unwrap());
        let not_stable = MonomialIdeal::from_exponents(2, &[&[0, 1]]).unwrap();
        assert_eq!(
            bpol_membership(&not_stable, &mono(&[0, 1]), 1),
            Err(Error::NotStronglyStable)
        );
    }

    #[test]
    fn polarization_verifier() {
        let i = running_example();
        assert!(verify_polarization(&i, &bpol_ideal(&i, 2).unwrap()));
        assert!(verify_polarization(&i, &stdpol_ideal(&i, 2).unwrap()));
        let sq = MonomialIdeal::from_exponents(1, &[&[2]]).unwrap();
        let bad = GridIdeal::new(1, 2, [GridMonomial::new(1, 2, [(1, 1)]).unwrap()]).unwrap();
        assert!(!verify_polarization(&sq, &bad));
    }

    #[test]
    fn verifier_rejects_non_regular_collapse() {
        // (x_{1,1}x_{2,2}, x_{1,2}x_{2,1}) collapses to (x1 x2) but is not a polarization.
        let i = MonomialIdeal::from_exponents(2, &[&[1, 1]]).unwrap();
        let j = GridIdeal::new(
            2,
            2,
            [
                GridMonomial::new(2, 2, [(1, 1), (2, 2)]).unwrap(),
                GridMonomial::new(2, 2, [(1, 2), (2, 1)]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(depolarize(&j), i);
        assert!(!verify_polarization(&i, &j));
    }
}
