//! Exact feasibility of `A x (= | ≥) b, x ≥ 0` over the rationals.
//!
//! Phase one of the simplex method with Bland's rule on a dense tableau. Artificial columns
//! are kept to the end so that an infeasible system yields its Farkas multipliers directly:
//! the multiplier of row `i` is one minus the final reduced cost of artificial `i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<BigRational>,
    pub kind: RowKind,
    pub rhs: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    /// Multipliers `y`, one per row, with `y ≥ 0` on `Ge` rows, `yᵀA ≤ 0` and `yᵀb > 0`.
    Infeasible(Vec<BigRational>),
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Checks a Farkas certificate against the rows it claims to refute.
pub fn refutes(rows: &[Row], n_vars: usize, y: &[BigRational]) -> bool {
    if y.len() != rows.len() {
        return false;
    }
    if rows
        .iter()
        .zip(y)
        .any(|(row, yi)| row.kind == RowKind::Ge && yi.is_negative())
    {
        return false;
    }
    for j in 0..n_vars {
        let col: BigRational = rows
            .iter()
            .zip(y)
            .map(|(row, yi)| &row.coeffs[j] * yi)
            .sum();
        if col.is_positive() {
            return false;
        }
    }
    let yb: BigRational = rows.iter().zip(y).map(|(row, yi)| &row.rhs * yi).sum();
    yb.is_positive()
}

pub fn satisfies(rows: &[Row], x: &[BigRational]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && rows.iter().all(|row| {
            let lhs: BigRational = row.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            match row.kind {
                RowKind::Eq => lhs == row.rhs,
                RowKind::Ge => lhs >= row.rhs,
            }
        })
}

pub fn solve(rows: &[Row], n_vars: usize) -> Feasibility {
    let m = rows.len();
    let n_surplus = rows.iter().filter(|r| r.kind == RowKind::Ge).count();
    let art0 = n_vars + n_surplus;
    let width = art0 + m + 1;
    let rhs_col = width - 1;

    // rows with negative right-hand side are negated so the artificial basis is feasible;
    // a negated Ge row has slack +1 instead of surplus -1
    let mut sign = vec![BigRational::one(); m];
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut surplus = n_vars;
    for (i, row) in rows.iter().enumerate() {
        debug_assert_eq!(row.coeffs.len(), n_vars);
        if row.rhs.is_negative() {
            sign[i] = -BigRational::one();
        }
        let mut t = vec![BigRational::zero(); width];
        for (j, a) in row.coeffs.iter().enumerate() {
            t[j] = a * &sign[i];
        }
        if row.kind == RowKind::Ge {
            t[surplus] = -sign[i].clone();
            surplus += 1;
        }
        t[art0 + i] = BigRational::one();
        t[rhs_col] = &row.rhs * &sign[i];
        tab.push(t);
    }
    let mut basis: Vec<usize> = (art0..art0 + m).collect();

    // reduced costs of the phase-one objective (sum of artificials); last entry is -w
    let mut obj = vec![BigRational::zero(); width];
    for j in 0..width {
        let col_sum: BigRational = tab.iter().map(|t| t[j].clone()).sum();
        let cost = if (art0..art0 + m).contains(&j) {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        obj[j] = if j == rhs_col {
            -col_sum
        } else {
            cost - col_sum
        };
    }

    while let Some(enter) = (0..rhs_col).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, t) in tab.iter().enumerate() {
            if t[enter].is_positive() {
                let ratio = &t[rhs_col] / &t[enter];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (p, _) = leave.expect("phase one is bounded below by zero");
        pivot(&mut tab, &mut obj, p, enter);
        basis[p] = enter;
    }

    if obj[rhs_col].is_zero() {
        let mut x = vec![BigRational::zero(); n_vars];
        for (i, &b) in basis.iter().enumerate() {
            if b < n_vars {
                x[b] = tab[i][rhs_col].clone();
            }
        }
        Feasibility::Feasible(x)
    } else {
        let y = (0..m)
            .map(|i| (BigRational::one() - &obj[art0 + i]) * &sign[i])
            .collect();
        Feasibility::Infeasible(y)
    }
}

fn pivot(tab: &mut [Vec<BigRational>], obj: &mut [BigRational], p: usize, enter: usize) {
    let pv = tab[p][enter].clone();
    for a in tab[p].iter_mut() {
        *a /= &pv;
    }
    let pivot_row = tab[p].clone();
    let eliminate = |row: &mut [BigRational]| {
        let factor = row[enter].clone();
        if !factor.is_zero() {
            for (a, b) in row.iter_mut().zip(&pivot_row) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
        }
    };
    for (i, row) in tab.iter_mut().enumerate() {
        if i != p {
            eliminate(row);
        }
    }
    eliminate(obj);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(coeffs: &[i64], kind: RowKind, rhs: i64) -> Row {
        Row {
            coeffs: coeffs.iter().map(|&c| int(c)).collect(),
            kind,
            rhs: int(rhs),
        }
    }

    #[test]
    fn feasible_solution_satisfies_rows() {
        let rows = vec![row(&[1, -1], RowKind::Eq, 0), row(&[1, 1], RowKind::Eq, 1)];
        match solve(&rows, 2) {
            Feasibility::Feasible(x) => {
                assert!(satisfies(&rows, &x));
                assert_eq!(x, vec![BigRational::new(1.into(), 2.into()); 2]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn doubling_loop_is_refuted() {
        // x = 2x, x = 1
        let rows = vec![row(&[-1], RowKind::Eq, 0), row(&[1], RowKind::Eq, 1)];
        match solve(&rows, 1) {
            Feasibility::Infeasible(y) => assert!(refutes(&rows, 1, &y)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inequality_conflict_is_refuted() {
        // x0 - x1 ≥ 1, x1 - x0 ≥ 0
        let rows = vec![row(&[1, -1], RowKind::Ge, 1), row(&[-1, 1], RowKind::Ge, 0)];
        match solve(&rows, 2) {
            Feasibility::Infeasible(y) => assert!(refutes(&rows, 2, &y)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_right_hand_sides_are_handled() {
        // -x ≥ -3, x ≥ 2
        let rows = vec![row(&[-1], RowKind::Ge, -3), row(&[1], RowKind::Ge, 2)];
        match solve(&rows, 1) {
            Feasibility::Feasible(x) => assert!(satisfies(&rows, &x)),
            other => panic!("{other:?}"),
        }
        let rows = vec![row(&[-1], RowKind::Ge, -1), row(&[1], RowKind::Ge, 2)];
        match solve(&rows, 1) {
            Feasibility::Infeasible(y) => assert!(refutes(&rows, 1, &y)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_redundant_rows() {
        let rows = vec![
            row(&[1, 1, 1], RowKind::Eq, 1),
            row(&[2, 2, 2], RowKind::Eq, 2),
            row(&[1, -1, 0], RowKind::Eq, 0),
            row(&[0, 1, -1], RowKind::Ge, 0),
        ];
        match solve(&rows, 3) {
            Feasibility::Feasible(x) => assert!(satisfies(&rows, &x)),
            other => panic!("{other:?}"),
        }
    }
}
