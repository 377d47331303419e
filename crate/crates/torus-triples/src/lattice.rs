//! Exact integer/rational linear algebra for torus computations.
//!
//! Everything here serves equations of the form `A x = b (mod Z^n)` with an
//! integer matrix `A` and rational right-hand side: fixed-point loci of
//! affine isometries, invariant frequency sublattices of translation groups,
//! and the multiplicative phase-gauge system for spinor lifts. The engine is
//! a Smith-style diagonalization `U A V = D` with unimodular `U`, `V`.

use num_bigint::BigInt;

use num_traits::{One, Signed, Zero};

use crate::scalar::{fract_mod1, Rational};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix_from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    m.swap(a, b);
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row[a] -= q * row[b]
fn row_op(m: &mut IntMatrix, a: usize, b: usize, q: &BigInt) {
    let cols = m[0].len();
    for j in 0..cols {
        let sub = q * &m[b][j];
        m[a][j] -= sub;
    }
}

/// col[a] -= q * col[b]
fn col_op(m: &mut IntMatrix, a: usize, b: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let sub = q * &row[b];
        row[a] -= sub;
    }
}

/// Diagonalization `U A V = D` over the integers (Smith-style, without the
/// divisibility chain, which no caller needs). Returns `(u, d, v)`.
pub fn integer_diagonalize(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // Find a pivot of minimal absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);

        let mut clean = true;
        for i in (t + 1)..rows {
            if !d[i][t].is_zero() {
                let q = div_round(&d[i][t], &d[t][t]);
                if !q.is_zero() {
                    row_op(&mut d, i, t, &q);
                    row_op(&mut u, i, t, &q);
                }
                if !d[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in (t + 1)..cols {
            if !d[t][j].is_zero() {
                let q = div_round(&d[t][j], &d[t][t]);
                if !q.is_zero() {
                    col_op(&mut d, j, t, &q);
                    col_op(&mut v, j, t, &q);
                }
                if !d[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if clean {
            if d[t][t].is_negative() {
                for j in 0..cols {
                    d[t][j] = -d[t][j].clone();
                }
                for j in 0..rows {
                    u[t][j] = -u[t][j].clone();
                }
            }
            t += 1;
        }
        // otherwise repeat at the same t with the smaller remainders
    }
    (u, d, v)
}

/// Rounded integer division, so remainders shrink in absolute value.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = (a / b, a % b);
    if r.abs() * &two > b.abs() {
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn mat_mul_rational(m: &IntMatrix, x: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .map(|(a, xi)| Rational::from_integer(a.clone()) * xi)
                .fold(Rational::zero(), |acc, t| acc + t)
        })
        .collect()
}

/// Solution set of `A x = b (mod Z^n)` on the torus: finitely many affine
/// subtori, each `base + span(directions) mod Z^n`.
#[derive(Debug, Clone)]
pub struct TorusSolutionSet {
    /// One rational base point per component, reduced mod 1.
    pub bases: Vec<Vec<Rational>>,
    /// Primitive integer direction vectors of the common tangent space
    /// (columns of V at the zero diagonal entries).
    pub directions: Vec<Vec<BigInt>>,
}

/// Solves `A x = b (mod Z^rows)` for `x` on the torus `R^cols / Z^cols`.
/// Returns `None` when there is no solution.
pub fn solve_mod1(a: &IntMatrix, b: &[Rational]) -> Option<TorusSolutionSet> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    assert_eq!(b.len(), rows);
    let (u, d, v) = integer_diagonalize(a);

    // D y = U b (mod Z), with x = V y; V unimodular identifies the tori.
    let ub = mat_mul_rational(&u, b);
    let rank = rows.min(cols);
    let mut torsion: Vec<(usize, BigInt)> = Vec::new();
    let mut free: Vec<usize> = Vec::new();
    for j in 0..cols {
        let dj = if j < rank { d[j][j].clone() } else { BigInt::zero() };
        if dj.is_zero() {
            free.push(j);
        } else {
            torsion.push((j, dj));
        }
    }
    // Zero rows of D demand integrality of (U b)_i.
    for (i, ubi) in ub.iter().enumerate().take(rows) {
        let di_zero = i >= cols || d[i][i].is_zero();
        if di_zero && !fract_mod1(ubi).is_zero() {
            return None;
        }
    }

    // Enumerate y_j = ((U b)_j + m) / d_j, m = 0 .. d_j - 1 per torsion slot.
    let mut combos: Vec<Vec<Rational>> = vec![vec![Rational::zero(); cols]];
    for (j, dj) in &torsion {
        let mut next = Vec::new();
        let dj_rat = Rational::from_integer(dj.clone());
        let base = &ub[*j] / &dj_rat;
        let mut m = BigInt::zero();
        while &m < dj {
            let shift = Rational::from_integer(m.clone()) / &dj_rat;
            for c in &combos {
                let mut y = c.clone();
                y[*j] = &base + &shift;
                next.push(y);
            }
            m += 1;
        }
        combos = next;
    }

    // x = V y, reduced mod 1 coordinatewise
    let bases = combos
        .into_iter()
        .map(|y| mat_mul_rational(&v, &y).iter().map(fract_mod1).collect())
        .collect();

    let directions = free
        .iter()
        .map(|&j| primitive_column(&v, j))
        .collect();

    Some(TorusSolutionSet { bases, directions })
}

fn primitive_column(v: &IntMatrix, j: usize) -> Vec<BigInt> {
    let mut col: Vec<BigInt> = v.iter().map(|row| row[j].clone()).collect();
    let mut g = BigInt::zero();
    for c in &col {
        g = num_integer::gcd(g, c.clone());
    }
    if !g.is_zero() && !g.is_one() {
        for c in &mut col {
            *c /= &g;
        }
    }
    // canonical sign: first nonzero entry positive
    if let Some(first) = col.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in &mut col {
                *c = -c.clone();
            }
        }
    }
    col
}

/// Integer basis of `{ k in Z^cols : A k = 0 }`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let (_, d, v) = integer_diagonalize(a);
    let rank = rows.min(cols);
    (0..cols)
        .filter(|&j| j >= rank || d[j][j].is_zero())
        .map(|j| primitive_column(&v, j))
        .collect()
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn rational_rank(m: &[Vec<Rational>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a = m.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].clone();
        for i in 0..rows {
            if i != rank && !a[i][col].is_zero() {
                let f = &a[i][col] / &inv;
                for j in col..cols {
                    let sub = &f * &a[rank][j];
                    a[i][j] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn check_uav(a: &IntMatrix) {
        let (u, d, v) = integer_diagonalize(a);
        // recompute U A V and compare to D
        let rows = a.len();
        let cols = a[0].len();
        let mut ua = vec![vec![BigInt::zero(); cols]; rows];
        for i in 0..rows {
            for j in 0..cols {
                for k in 0..rows {
                    ua[i][j] += &u[i][k] * &a[k][j];
                }
            }
        }
        let mut uav = vec![vec![BigInt::zero(); cols]; rows];
        for i in 0..rows {
            for j in 0..cols {
                for k in 0..cols {
                    uav[i][j] += &ua[i][k] * &v[k][j];
                }
            }
        }
        assert_eq!(uav, d);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    assert!(x.is_zero(), "off-diagonal {i},{j} = {x}");
                }
            }
        }
    }

    #[test]
    fn diagonalize_small_matrices() {
        check_uav(&int_matrix_from_i64(&[vec![2, 4], vec![6, 8]]));
        check_uav(&int_matrix_from_i64(&[vec![1, -1], vec![1, 1]]));
        check_uav(&int_matrix_from_i64(&[vec![0, 0], vec![0, 0]]));
        check_uav(&int_matrix_from_i64(&[vec![3, 1, 2], vec![0, 2, 2]]));
    }

    #[test]
    fn solve_rotation_fixed_points() {
        // (I - R_90) x = 0 mod Z^2 has exactly (0,0) and (1/2,1/2)
        let a = int_matrix_from_i64(&[vec![1, 1], vec![-1, 1]]);
        let b = vec![rat_int(0), rat_int(0)];
        let sol = solve_mod1(&a, &b).unwrap();
        assert!(sol.directions.is_empty());
        let mut bases = sol.bases.clone();
        bases.sort();
        assert_eq!(bases, vec![vec![rat_int(0), rat_int(0)], vec![rat(1, 2), rat(1, 2)]]);
    }

    #[test]
    fn solve_reflection_fixed_circles() {
        // (I - diag(1,-1)) x = 0: y ∈ {0, 1/2}, x free
        let a = int_matrix_from_i64(&[vec![0, 0], vec![0, 2]]);
        let b = vec![rat_int(0), rat_int(0)];
        let sol = solve_mod1(&a, &b).unwrap();
        assert_eq!(sol.directions.len(), 1);
        assert_eq!(sol.directions[0], vec![BigInt::from(1), BigInt::from(0)]);
        assert_eq!(sol.bases.len(), 2);
    }

    #[test]
    fn solve_no_solution_for_free_translation() {
        // 0 * x = 1/2 mod 1: none
        let a = int_matrix_from_i64(&[vec![0, 0], vec![0, 0]]);
        let b = vec![rat(1, 2), rat(1, 2)];
        assert!(solve_mod1(&a, &b).is_none());
    }

    #[test]
    fn kernel_and_rank() {
        let a = int_matrix_from_i64(&[vec![1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![BigInt::from(1), BigInt::from(-1)]);

        let m = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ];
        assert_eq!(rational_rank(&m), 1);
    }
}
