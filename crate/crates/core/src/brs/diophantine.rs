//! Small integer linear systems: diagonalize with unimodular row/column
//! operations and read off a particular solution plus a kernel basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Solution set of `A n = b` over the integers: `particular + Z kernel`.
#[derive(Clone, Debug)]
pub struct IntegerSolutions {
    pub particular: Vec<BigInt>,
    pub kernel: Vec<Vec<BigInt>>,
}

/// Solve `A n = b` over Z. `None` when no integer solution exists.
pub fn solve_integer_system(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<IntegerSolutions> {
    let m = a.len();
    assert_eq!(m, b.len());
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    if n == 0 {
        return if b.iter().all(Zero::is_zero) {
            Some(IntegerSolutions {
                particular: vec![],
                kernel: vec![],
            })
        } else {
            None
        };
    }
    let mut s: Vec<Vec<BigInt>> = a.to_vec();
    // U tracks row ops applied to b; V tracks column ops mapping y back to n.
    let mut ub: Vec<BigInt> = b.to_vec();
    let mut v: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let mut rank = 0;
    for t in 0..n.min(m) {
        // pivot: smallest nonzero |entry| in the remaining submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !s[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| s[i][j].abs() < s[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        s.swap(t, pi);
        ub.swap(t, pi);
        for row in s.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }

        // eliminate row t and column t; restart when a reduction creates a
        // smaller remainder that must become the new pivot
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s[i][t].is_zero() {
                    continue;
                }
                let q = s[i][t].div_floor(&s[t][t]);
                for j in t..n {
                    let delta = &q * &s[t][j];
                    s[i][j] -= delta;
                }
                let delta = &q * &ub[t];
                ub[i] -= delta;
                if !s[i][t].is_zero() {
                    s.swap(t, i);
                    ub.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..n {
                if s[t][j].is_zero() {
                    continue;
                }
                let q = s[t][j].div_floor(&s[t][t]);
                for row in s.iter_mut() {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                for vi in v.iter_mut() {
                    let delta = &q * &vi[t];
                    vi[j] -= delta;
                }
                if !s[t][j].is_zero() {
                    for row in s.iter_mut() {
                        row.swap(t, j);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        rank = t + 1;
    }

    // rows beyond the diagonal must vanish on the rhs
    for i in rank..m {
        if !ub[i].is_zero() {
            return None;
        }
    }
    // y_i = ub_i / s_ii must be integral
    let mut y = vec![BigInt::zero(); n];
    for (i, yi) in y.iter_mut().enumerate().take(rank) {
        let (q, r) = ub[i].div_rem(&s[i][i]);
        if !r.is_zero() {
            return None;
        }
        *yi = q;
    }
    // n = V y; kernel = columns of V past the rank
    let particular = (0..n)
        .map(|i| (0..n).map(|j| &v[i][j] * &y[j]).sum())
        .collect();
    let kernel = (rank..n)
        .map(|j| (0..n).map(|i| v[i][j].clone()).collect())
        .collect();
    Some(IntegerSolutions { particular, kernel })
}
