//! Exact integer linear algebra over small dense matrices: Smith normal
//! form (for the Jacobian) and a Hermite-style solver for `L*x = b` over
//! the integers (for linear equivalence). Arithmetic runs in `i128` so the
//! intermediate swell of the eliminations cannot wrap on the graph sizes
//! this crate targets.

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Diagonal of the Smith normal form of `m`, as a divisibility chain
/// `d1 | d2 | ...` padded with zeros up to `min(rows, cols)`.
pub(crate) fn smith_diagonal(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<i128>> =
        m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let dims = rows.min(cols);
    let mut diag = vec![0i128; dims];

    for t in 0..dims {
        'outer: loop {
            // Pivot: the entry of smallest nonzero magnitude in the
            // trailing submatrix.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0
                        && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // Trailing submatrix is zero; remaining diagonal stays 0.
                return finish(diag, t);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            if a[t][t] < 0 {
                for row in a.iter_mut() {
                    row[t] = -row[t];
                }
            }

            // Clear column t, then row t; restart if a remainder survives.
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    for i in t..rows {
                        a[i][j] -= q * a[i][t];
                    }
                }
                if a[t][j] != 0 {
                    continue 'outer;
                }
            }

            // Divisibility fixup: the pivot must divide every remaining
            // entry; fold an offending row in and redo.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if a[i][j] % a[t][t] != 0 {
                        for k in t..cols {
                            let add = a[i][k];
                            a[t][k] += add;
                        }
                        continue 'outer;
                    }
                }
            }
            diag[t] = a[t][t];
            break;
        }
    }
    finish(diag, dims)
}

fn finish(diag: Vec<i128>, _rank_hint: usize) -> Vec<i64> {
    diag.into_iter()
        .map(|d| i64::try_from(d).expect("invariant factor fits i64"))
        .collect()
}

/// Solves `m*x = b` over the integers, or returns `None` when no integral
/// solution exists. `m` need not have full rank; when the solution is only
/// unique modulo a kernel, an arbitrary representative comes back.
///
/// Column reduction: unimodular column operations bring `m` to a lower
/// echelon form `h = m*u`; forward substitution solves `h*y = b` with
/// exact divisions, and `x = u*y`.
pub(crate) fn solve_linear_system(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    assert_eq!(b.len(), rows, "right-hand side length must match row count");
    let mut h: Vec<Vec<i128>> =
        m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();

    let swap_cols = |h: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, a: usize, b: usize| {
        for row in h.iter_mut() {
            row.swap(a, b);
        }
        for row in u.iter_mut() {
            row.swap(a, b);
        }
    };
    // col_b -= q * col_a
    let add_col = |h: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, a: usize, b: usize, q: i128| {
        for row in h.iter_mut() {
            row[b] -= q * row[a];
        }
        for row in u.iter_mut() {
            row[b] -= q * row[a];
        }
    };

    let mut pivot_col_of_row: Vec<Option<usize>> = vec![None; rows];
    let mut next = 0usize; // next unused pivot column
    for r in 0..rows {
        if next == cols {
            break;
        }
        loop {
            let best = (next..cols)
                .filter(|&j| h[r][j] != 0)
                .min_by_key(|&j| h[r][j].abs());
            let Some(j) = best else { break };
            if j != next {
                swap_cols(&mut h, &mut u, next, j);
            }
            if h[r][next] < 0 {
                for row in h.iter_mut() {
                    row[next] = -row[next];
                }
                for row in u.iter_mut() {
                    row[next] = -row[next];
                }
            }
            let mut done = true;
            for j in next + 1..cols {
                let q = h[r][j].div_euclid(h[r][next]);
                if q != 0 {
                    add_col(&mut h, &mut u, next, j, q);
                }
                if h[r][j] != 0 {
                    done = false;
                }
            }
            if done {
                pivot_col_of_row[r] = Some(next);
                next += 1;
                break;
            }
        }
    }

    // Forward substitution on the echelon form.
    let mut y = vec![0i128; cols];
    for r in 0..rows {
        let known: i128 = match pivot_col_of_row[r] {
            Some(p) => (0..p).map(|j| h[r][j] * y[j]).sum(),
            None => (0..cols).map(|j| h[r][j] * y[j]).sum(),
        };
        let rhs = i128::from(b[r]) - known;
        match pivot_col_of_row[r] {
            Some(p) => {
                if rhs % h[r][p] != 0 {
                    return None;
                }
                y[p] = rhs / h[r][p];
            }
            None => {
                if rhs != 0 {
                    return None;
                }
            }
        }
    }

    let x: Vec<i128> = (0..cols).map(|i| (0..cols).map(|j| u[i][j] * y[j]).sum()).collect();
    debug_assert!((0..rows).all(|r| {
        (0..cols).map(|j| i128::from(m[r][j]) * x[j]).sum::<i128>() == i128::from(b[r])
    }));
    Some(x.into_iter().map(|v| i64::try_from(v).expect("solution fits i64")).collect())
}

#[allow(dead_code)]
pub(crate) fn gcd_many(values: impl IntoIterator<Item = i64>) -> i64 {
    values.into_iter().fold(0i128, |acc, v| gcd128(acc, v as i128)) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_diagonal_of_triangle_laplacian() {
        let l = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert_eq!(smith_diagonal(&l), vec![1, 3, 0]);
    }

    #[test]
    fn smith_diagonal_known_matrix() {
        // Classic example with invariant factors 1, 3, 21 and a zero.
        let m = vec![
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ];
        assert_eq!(smith_diagonal(&m), vec![1, 3, 21, 0]);
    }

    #[test]
    fn solve_exact_system() {
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(solve_linear_system(&m, &[4, 9]), Some(vec![2, 3]));
        assert_eq!(solve_linear_system(&m, &[1, 9]), None);
    }

    #[test]
    fn solve_rank_deficient_system() {
        // Rows sum to zero; consistent rhs has a solution, inconsistent
        // integral-looking rhs does not.
        let m = vec![vec![1, -1], vec![-1, 1]];
        let x = solve_linear_system(&m, &[3, -3]).unwrap();
        assert_eq!(x[0] - x[1], 3);
        assert_eq!(solve_linear_system(&m, &[3, 3]), None);
    }
}
