//! Small helpers for permutations written as image tables: `p[x]` is the
//! image of `x`. Everything in this crate indexes elements as `0..n`.

/// True iff `p` is a bijection of `0..p.len()`.
pub fn is_permutation(p: &[usize]) -> bool {
    let n = p.len();
    let mut seen = vec![false; n];
    for &v in p {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// The identity permutation on `n` points.
pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Composition `f ∘ g`: apply `g` first, then `f`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// Inverse permutation.
pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Multiplicative order of `p` under composition.
pub fn order(p: &[usize]) -> usize {
    let id = identity(p.len());
    let mut q = p.to_vec();
    let mut k = 1;
    while q != id {
        q = compose(p, &q);
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        // f = (0 1), g = (1 2) on three points
        let f = vec![1, 0, 2];
        let g = vec![0, 2, 1];
        // (f∘g)(1) = f(2) = 2
        assert_eq!(compose(&f, &g), vec![1, 2, 0]);
    }

    #[test]
    fn invert_round_trips() {
        let p = vec![2, 0, 3, 1];
        assert_eq!(compose(&p, &invert(&p)), identity(4));
        assert_eq!(compose(&invert(&p), &p), identity(4));
    }

    #[test]
    fn order_of_three_cycle() {
        assert_eq!(order(&[1, 2, 0]), 3);
        assert_eq!(order(&identity(5)), 1);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(!is_permutation(&[0, 0, 1]));
        assert!(!is_permutation(&[0, 3]));
        assert!(is_permutation(&[1, 0]));
    }
}
