//! Brute-force LP oracle: enumerates every basic point of a bounded LP by
//! solving each square subsystem of constraint rows and bounds `x_j = 0`.
//! Shares nothing with the simplex implementation beyond the problem type.

use fairalloc::lp::{LpProblem, Relation};
use fairalloc::Rational;
use num_traits::{One, Signed, Zero};

/// Row of the full system: coefficients, relation, right-hand side.
type Row = (Vec<Rational>, Relation, Rational);

fn all_rows(problem: &LpProblem) -> Vec<Row> {
    let n = problem.num_vars();
    let mut rows: Vec<Row> =
        problem.constraints().iter().map(|c| (c.coefficients.clone(), c.relation, c.rhs.clone())).collect();
    for j in 0..n {
        let mut unit = vec![Rational::zero(); n];
        unit[j] = Rational::one();
        rows.push((unit, Relation::Ge, Rational::zero()));
    }
    rows
}

fn dot(a: &[Rational], x: &[Rational]) -> Rational {
    a.iter().zip(x).fold(Rational::zero(), |acc, (p, q)| acc + p * q)
}

fn satisfies(row: &Row, x: &[Rational]) -> bool {
    let lhs = dot(&row.0, x);
    match row.1 {
        Relation::Le => lhs <= row.2,
        Relation::Eq => lhs == row.2,
        Relation::Ge => lhs >= row.2,
    }
}

/// Solves a square system; `None` if singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let lead = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &lead;
            for c in col..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
            }
            let d = &f * &b[col];
            b[r] -= d;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, p);
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let f = &rows[k][c] / &rows[r][c];
                for j in 0..cols {
                    let d = &f * &rows[r][j];
                    rows[k][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn is_feasible(problem: &LpProblem, x: &[Rational]) -> bool {
    all_rows(problem).iter().all(|row| satisfies(row, x))
}

/// Rank of rows tight at `x` (including active bounds) equals the dimension.
pub fn is_vertex(problem: &LpProblem, x: &[Rational]) -> bool {
    let tight: Vec<Vec<Rational>> =
        all_rows(problem).into_iter().filter(|row| dot(&row.0, x) == row.2).map(|row| row.0).collect();
    is_feasible(problem, x) && rank(tight) == problem.num_vars()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Best objective value over all vertices, with the maximizing vertex;
/// `None` when the polytope has no vertex. Only meaningful for bounded
/// problems.
pub fn best_vertex(problem: &LpProblem) -> Option<(Rational, Vec<Rational>)> {
    let n = problem.num_vars();
    let rows = all_rows(problem);
    if n == 0 {
        return rows.iter().all(|r| satisfies(r, &[])).then(|| (Rational::zero(), Vec::new()));
    }
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for subset in subsets(rows.len(), n) {
        let a = subset.iter().map(|&k| rows[k].0.clone()).collect();
        let b = subset.iter().map(|&k| rows[k].2.clone()).collect();
        let Some(x) = solve_square(a, b) else { continue };
        if x.iter().any(Signed::is_negative) || !rows.iter().all(|r| satisfies(r, &x)) {
            continue;
        }
        let value = dot(problem.objective(), &x);
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, x));
        }
    }
    best
}
