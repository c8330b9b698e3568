//! Lexicographic k-subset enumeration over `0..n`.

/// Number of k-subsets of an n-set.
pub fn combination_count(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Call `f` on every k-subset of `0..n`, in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All k-subsets of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(combination_count(n, k));
    for_each_combination(n, k, |c| out.push(c.to_vec()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(combination_count(4, 2), 6);
        assert_eq!(combination_count(16, 8), 12870);
        assert_eq!(combination_count(5, 0), 1);
        assert_eq!(combination_count(3, 5), 0);
    }

    #[test]
    fn lexicographic_order_and_completeness() {
        let all = combinations(4, 2);
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let full = combinations(5, 5);
        assert_eq!(full, vec![vec![0, 1, 2, 3, 4]]);
        let singletons = combinations(3, 1);
        assert_eq!(singletons.len(), 3);
    }
}
