//! Exhaustive searches over integer boxes, shared by the oracle and the
//! cokernel class test.
//!
//! Both searches walk the box `[-B, B]^n` in lexicographic order (first
//! coordinate outermost, values ascending), maintaining the running image
//! `sum_w cols[w] * choice[w]` incrementally. Subtrees are skipped only when
//! interval arithmetic proves no completion can succeed, so the first hit is
//! the true lexicographic minimum and an empty result is a proof of absence
//! over the whole box.
//!
//! The search is generic over the scalar so the hot path can run on `i128`
//! (after a magnitude check guarantees no overflow) while pathological
//! inputs fall back to `BigInt`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::matrix::IntMatrix;

/// `suf[w][j] = radius * sum_{w' >= w} |cols[w'][j]|`: the largest absolute
/// contribution the coordinates from `w` on can still make to component `j`.
fn suffix_bounds<T>(cols: &[Vec<T>], m: usize, radius: &T) -> Vec<Vec<T>>
where
    T: Clone + Ord + Signed,
{
    let n = cols.len();
    let mut suf = vec![vec![T::zero(); m]; n + 1];
    for w in (0..n).rev() {
        for j in 0..m {
            suf[w][j] = suf[w + 1][j].clone() + cols[w][j].abs() * radius.clone();
        }
    }
    suf
}

/// First `choice` in lexicographic order with
/// `sum_w cols[w] * choice[w] = target`, all `|choice[w]| <= radius`.
pub(crate) fn solve_equality_in_box<T>(cols: &[Vec<T>], target: &[T], radius: &T) -> Option<Vec<T>>
where
    T: Clone + Ord + Signed,
{
    let m = target.len();
    let suf = suffix_bounds(cols, m, radius);
    let mut partial = vec![T::zero(); m];
    let mut choice = Vec::with_capacity(cols.len());
    if equality_dfs(cols, target, radius, &suf, 0, &mut partial, &mut choice) {
        Some(choice)
    } else {
        None
    }
}

fn equality_dfs<T>(
    cols: &[Vec<T>],
    target: &[T],
    radius: &T,
    suf: &[Vec<T>],
    w: usize,
    partial: &mut [T],
    choice: &mut Vec<T>,
) -> bool
where
    T: Clone + Ord + Signed,
{
    let m = target.len();
    if w == cols.len() {
        return (0..m).all(|j| partial[j] == target[j]);
    }
    let mut val = -radius.clone();
    for j in 0..m {
        partial[j] = partial[j].clone() + cols[w][j].clone() * val.clone();
    }
    let mut found = false;
    loop {
        let feasible =
            (0..m).all(|j| (target[j].clone() - partial[j].clone()).abs() <= suf[w + 1][j]);
        if feasible {
            choice.push(val.clone());
            if equality_dfs(cols, target, radius, suf, w + 1, partial, choice) {
                found = true;
                break;
            }
            choice.pop();
        }
        if val == *radius {
            break;
        }
        val = val + T::one();
        for j in 0..m {
            partial[j] = partial[j].clone() + cols[w][j].clone();
        }
    }
    if !found {
        // undo this coordinate's contribution (currently at `val`)
        for j in 0..m {
            partial[j] = partial[j].clone() - cols[w][j].clone() * val.clone();
        }
    }
    found
}

/// First `choice` in lexicographic order whose image
/// `c = sum_w cols[w] * choice[w]` is nonnegative and nonzero; returns the
/// choice and the image.
pub(crate) fn find_positive_image_in_box<T>(
    cols: &[Vec<T>],
    m: usize,
    radius: &T,
) -> Option<(Vec<T>, Vec<T>)>
where
    T: Clone + Ord + Signed,
{
    let suf = suffix_bounds(cols, m, radius);
    let mut partial = vec![T::zero(); m];
    let mut choice = Vec::with_capacity(cols.len());
    if positive_dfs(cols, radius, &suf, 0, &mut partial, &mut choice) {
        Some((choice, partial))
    } else {
        None
    }
}

fn positive_dfs<T>(
    cols: &[Vec<T>],
    radius: &T,
    suf: &[Vec<T>],
    w: usize,
    partial: &mut Vec<T>,
    choice: &mut Vec<T>,
) -> bool
where
    T: Clone + Ord + Signed,
{
    let m = partial.len();
    if w == cols.len() {
        return partial.iter().all(|p| !p.is_negative()) && partial.iter().any(|p| p.is_positive());
    }
    let mut val = -radius.clone();
    for j in 0..m {
        partial[j] = partial[j].clone() + cols[w][j].clone() * val.clone();
    }
    let mut found = false;
    loop {
        // Some component irrecoverably negative, or no component can ever
        // become positive: either way the subtree holds no witness.
        let mut any_positive_possible = false;
        let mut all_recoverable = true;
        for j in 0..m {
            let reach = partial[j].clone() + suf[w + 1][j].clone();
            if reach.is_negative() {
                all_recoverable = false;
                break;
            }
            if reach.is_positive() {
                any_positive_possible = true;
            }
        }
        if all_recoverable && any_positive_possible {
            choice.push(val.clone());
            if positive_dfs(cols, radius, suf, w + 1, partial, choice) {
                found = true;
                break;
            }
            choice.pop();
        }
        if val == *radius {
            break;
        }
        val = val + T::one();
        for j in 0..m {
            partial[j] = partial[j].clone() + cols[w][j].clone();
        }
    }
    if !found {
        for j in 0..m {
            partial[j] = partial[j].clone() - cols[w][j].clone() * val.clone();
        }
    }
    found
}

/// Columns of `m` as `i128` vectors, provided every entry and the worst-case
/// partial sum fit comfortably; `None` sends the caller to the `BigInt`
/// path.
pub(crate) fn columns_as_i128(
    mats: &[&IntMatrix],
    extra: &[BigInt],
    radius: u64,
) -> Option<(Vec<Vec<i128>>, Vec<i128>)> {
    let mut cols: Vec<Vec<i128>> = Vec::new();
    let mut max_abs: i128 = 1;
    for m in mats {
        for j in 0..m.cols() {
            let mut col = Vec::with_capacity(m.rows());
            for i in 0..m.rows() {
                let x = m[(i, j)].to_i128()?;
                max_abs = max_abs.max(x.checked_abs()?);
                col.push(x);
            }
            cols.push(col);
        }
    }
    let mut tail = Vec::with_capacity(extra.len());
    for x in extra {
        let v = x.to_i128()?;
        max_abs = max_abs.max(v.checked_abs()?);
        tail.push(v);
    }
    // worst partial sum: every coordinate maxed out, plus the target once;
    // the final factor leaves headroom for differences of two such sums
    let n = cols.len() as i128;
    let r = i128::from(radius);
    let _headroom = max_abs
        .checked_mul(r)?
        .checked_mul(n + 1)?
        .checked_add(max_abs)?
        .checked_mul(4)?;
    Some((cols, tail))
}

pub(crate) fn to_bigints(v: &[i128]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_search_finds_lex_least() {
        // 2x + 3y = 1 in [-2, 2]^2: candidates (-1, 1) and (2, -1); the
        // lexicographically first is (-1, 1).
        let cols = vec![vec![2i128], vec![3i128]];
        assert_eq!(
            solve_equality_in_box(&cols, &[1i128], &2),
            Some(vec![-1, 1])
        );
        assert_eq!(solve_equality_in_box(&cols, &[11i128], &2), None);
    }

    #[test]
    fn positive_search_matches_naive_enumeration() {
        // exhaustively compare against a naive scan on a small instance
        let cols = vec![vec![1i128, -1], vec![-1, 1], vec![0, 1]];
        let radius = 1i128;
        let fast = find_positive_image_in_box(&cols, 2, &radius);
        let mut naive = None;
        'outer: for a in -1..=1i128 {
            for b in -1..=1i128 {
                for c in -1..=1i128 {
                    let img = vec![
                        cols[0][0] * a + cols[1][0] * b + cols[2][0] * c,
                        cols[0][1] * a + cols[1][1] * b + cols[2][1] * c,
                    ];
                    if img.iter().all(|&x| x >= 0) && img.iter().any(|&x| x > 0) {
                        naive = Some((vec![a, b, c], img));
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(fast, naive);
    }

    #[test]
    fn bigint_path_agrees_with_i128_path() {
        let cols_b: Vec<Vec<BigInt>> = vec![
            vec![BigInt::from(2), BigInt::from(-1)],
            vec![BigInt::from(-3), BigInt::from(2)],
        ];
        let cols_i: Vec<Vec<i128>> = vec![vec![2, -1], vec![-3, 2]];
        let t_b = [BigInt::from(1), BigInt::from(0)];
        let t_i = [1i128, 0];
        let rb = solve_equality_in_box(&cols_b, &t_b, &BigInt::from(3));
        let ri = solve_equality_in_box(&cols_i, &t_i, &3i128);
        assert_eq!(
            rb.map(|v| v.iter().map(|x| x.to_i128().unwrap()).collect::<Vec<_>>()),
            ri
        );
    }
}
