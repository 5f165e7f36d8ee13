//! Integer lattice routines: row Hermite normal form, integer solving,
//! left kernels and Smith invariant factors.
//!
//! All matrices are lists of rows; lattices are spanned by their rows.

pub type IntMatrix = Vec<Vec<i64>>;

fn sub_row(h: &mut [Vec<i64>], target: usize, src: usize, q: i64) {
    if q == 0 {
        return;
    }
    let (a, b) = if target < src {
        let (lo, hi) = h.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = h.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x -= q * y;
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Row HNF together with a unimodular transform `u` such that `h = u·a`.
///
/// The nonzero rows of `h` come first, have strictly increasing pivot
/// columns, positive pivots, and entries above each pivot reduced into
/// `[0, pivot)`. This form is unique for the row lattice.
pub fn hnf_with_transform(a: &[Vec<i64>], ncols: usize) -> (IntMatrix, IntMatrix) {
    let m = a.len();
    let mut h: IntMatrix = a.to_vec();
    let mut u = identity(m);
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let Some(p) = (r..m)
                .filter(|&i| h[i][col] != 0)
                .min_by_key(|&i| h[i][col].abs())
            else {
                break;
            };
            h.swap(r, p);
            u.swap(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if h[i][col] != 0 {
                    let q = h[i][col] / h[r][col];
                    sub_row(&mut h, i, r, q);
                    sub_row(&mut u, i, r, q);
                    if h[i][col] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if h[r][col] == 0 {
            continue;
        }
        if h[r][col] < 0 {
            h[r].iter_mut().for_each(|x| *x = -*x);
            u[r].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..r {
            let q = h[i][col].div_euclid(h[r][col]);
            sub_row(&mut h, i, r, q);
            sub_row(&mut u, i, r, q);
        }
        r += 1;
    }
    (h, u)
}

/// Nonzero rows of the row Hermite normal form.
pub fn hnf(a: &[Vec<i64>], ncols: usize) -> IntMatrix {
    let (h, _) = hnf_with_transform(a, ncols);
    h.into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect()
}

pub fn rank(a: &[Vec<i64>], ncols: usize) -> usize {
    hnf(a, ncols).len()
}

/// Some integer vector `c` with `c·a = target`, if one exists.
pub fn solve(a: &[Vec<i64>], ncols: usize, target: &[i64]) -> Option<Vec<i64>> {
    let (h, u) = hnf_with_transform(a, ncols);
    let mut t = target.to_vec();
    let mut d = vec![0i64; a.len()];
    for (k, row) in h.iter().enumerate() {
        let Some(p) = row.iter().position(|&x| x != 0) else {
            break;
        };
        if t[..p].iter().any(|&x| x != 0) {
            return None;
        }
        if t[p] % row[p] != 0 {
            return None;
        }
        let q = t[p] / row[p];
        d[k] = q;
        for (x, y) in t.iter_mut().zip(row) {
            *x -= q * y;
        }
    }
    if t.iter().any(|&x| x != 0) {
        return None;
    }
    let mut c = vec![0i64; a.len()];
    for (k, dk) in d.iter().enumerate() {
        if *dk != 0 {
            for (ci, ui) in c.iter_mut().zip(&u[k]) {
                *ci += dk * ui;
            }
        }
    }
    Some(c)
}

pub fn contains(lattice: &[Vec<i64>], ncols: usize, v: &[i64]) -> bool {
    solve(lattice, ncols, v).is_some()
}

/// Basis (in HNF) of `{ c : c·a = 0 }`.
pub fn left_kernel(a: &[Vec<i64>], ncols: usize) -> IntMatrix {
    let (h, u) = hnf_with_transform(a, ncols);
    let kernel: IntMatrix = h
        .iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(|&x| x == 0))
        .map(|(_, urow)| urow)
        .collect();
    hnf(&kernel, a.len())
}

/// Nonzero Smith invariant factors `d_1 | d_2 | …` of the row module.
pub fn invariant_factors(a: &[Vec<i64>], ncols: usize) -> Vec<i64> {
    let mut m: IntMatrix = a.to_vec();
    let rows = m.len();
    let cols = ncols;
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                while m[i][t] != 0 {
                    let q = m[i][t] / m[t][t];
                    sub_row(&mut m, i, t, q);
                    if m[i][t] != 0 {
                        m.swap(i, t);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                while m[t][j] != 0 {
                    let q = m[t][j] / m[t][t];
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    if m[t][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            let piv = m[t][t];
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % piv != 0));
            match offender {
                Some(i) => {
                    let (lo, hi) = m.split_at_mut(i);
                    for (x, y) in lo[t].iter_mut().zip(hi[0].iter()) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}
