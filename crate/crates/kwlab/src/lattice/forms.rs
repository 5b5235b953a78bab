//! Combinatorics of constant-coefficient differential forms on an oriented
//! orthonormal coframe `dx_0, ..., dx_{d-1}`.
//!
//! A `k`-form is stored as a list of coefficients indexed by the strictly
//! increasing index sets of size `k`, enumerated in lexicographic order. For
//! `d = 4, k = 2` the order is `01, 02, 03, 12, 13, 23`.

/// Binomial coefficient for small arguments.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// All strictly increasing `k`-subsets of `0..dim`, in lexicographic order.
pub fn basis(dim: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(dim, k));
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    rec(0, dim, k, &mut cur, &mut out);
    out
}

/// Position of a sorted subset in [`basis`].
pub fn index_of(dim: usize, subset: &[usize]) -> usize {
    basis(dim, subset.len())
        .iter()
        .position(|s| s.as_slice() == subset)
        .expect("subset must be sorted and within range")
}

/// Sign of the permutation that sorts `seq` (entries assumed distinct).
pub fn perm_sign(seq: &[usize]) -> f64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Complement of `subset` in `0..dim`, sorted.
pub fn complement(dim: usize, subset: &[usize]) -> Vec<usize> {
    (0..dim).filter(|i| !subset.contains(i)).collect()
}

/// Hodge star table: entry `I` gives `(J, σ)` with `⋆ e_I = σ e_J`, where
/// `e_I ∧ e_J = σ dx_0 ∧ ... ∧ dx_{d-1}`.
pub fn star_table(dim: usize, k: usize) -> Vec<(usize, f64)> {
    basis(dim, k)
        .iter()
        .map(|i| {
            let j = complement(dim, i);
            let mut seq = i.clone();
            seq.extend_from_slice(&j);
            (index_of(dim, &j), perm_sign(&seq))
        })
        .collect()
}

/// Exterior-derivative table: for each `(k+1)`-index `J`, the list of
/// `(axis, k-index, sign)` with `(dω)_J = Σ sign ∂_axis ω_{k-index}`.
pub fn d_table(dim: usize, k: usize) -> Vec<Vec<(usize, usize, f64)>> {
    basis(dim, k + 1)
        .iter()
        .map(|j| {
            j.iter()
                .enumerate()
                .map(|(pos, &axis)| {
                    let rest: Vec<usize> = j.iter().copied().filter(|&x| x != axis).collect();
                    let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                    (axis, index_of(dim, &rest), sign)
                })
                .collect()
        })
        .collect()
}

/// Wedge table for a `p`-form times a `q`-form: entries
/// `(p-index, q-index, (p+q)-index, sign)` over all disjoint pairs.
pub fn wedge_table(dim: usize, p: usize, q: usize) -> Vec<(usize, usize, usize, f64)> {
    let bp = basis(dim, p);
    let bq = basis(dim, q);
    let mut out = Vec::new();
    for (ia, a) in bp.iter().enumerate() {
        for (ib, b) in bq.iter().enumerate() {
            if a.iter().any(|x| b.contains(x)) {
                continue;
            }
            let mut seq = a.clone();
            seq.extend_from_slice(b);
            let sign = perm_sign(&seq);
            seq.sort_unstable();
            out.push((ia, ib, index_of(dim, &seq), sign));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_form_order() {
        assert_eq!(
            basis(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn star_of_dx1_in_four_dims() {
        let t = star_table(4, 1);
        assert_eq!(t[0], (index_of(4, &[1, 2, 3]), 1.0));
        let three = basis(4, 3);
        assert_eq!(three[t[0].0], vec![1, 2, 3]);
    }

    #[test]
    fn star_involution_signs() {
        for dim in 1..=4 {
            for k in 0..=dim {
                let s = star_table(dim, k);
                let back = star_table(dim, dim - k);
                let expect = if (k * (dim - k)) % 2 == 0 { 1.0 } else { -1.0 };
                for (i, &(j, sg)) in s.iter().enumerate() {
                    let (i2, sg2) = back[j];
                    assert_eq!(i2, i);
                    assert_eq!(sg * sg2, expect);
                }
            }
        }
    }
}
