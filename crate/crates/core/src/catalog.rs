//! A hardcoded catalog of all groups of order at most 15, one
//! representative per isomorphism class, plus the constructors it is
//! assembled from. Order 16 (14 classes) is deliberately out of range.

use crate::group::{FiniteGroup, GroupError};
use crate::perm;

/// The cyclic group Z/n with `a·b = a + b mod n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let mut table = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = (a + b) % n;
        }
    }
    FiniteGroup::from_flat_unchecked(n, table)
}

/// Direct product on pairs encoded as `(x, y) ↦ x + |G| · y`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (n, m) = (g.order(), h.order());
    let order = n * m;
    let mut table = vec![0usize; order * order];
    for x1 in 0..n {
        for y1 in 0..m {
            let e1 = x1 + n * y1;
            for x2 in 0..n {
                for y2 in 0..m {
                    let e2 = x2 + n * y2;
                    table[e1 * order + e2] = g.mul(x1, x2) + n * h.mul(y1, y2);
                }
            }
        }
    }
    FiniteGroup::from_flat_unchecked(order, table)
}

/// Dihedral group of order `2m` on elements `r^i s^j ↦ i + m·j`.
pub fn dihedral(m: usize) -> FiniteGroup {
    assert!(m >= 1);
    let order = 2 * m;
    let mut table = vec![0usize; order * order];
    for i1 in 0..m {
        for j1 in 0..2 {
            let e1 = i1 + m * j1;
            for i2 in 0..m {
                for j2 in 0..2 {
                    let e2 = i2 + m * j2;
                    let (i, j) = if j1 == 0 {
                        ((i1 + i2) % m, j2)
                    } else {
                        ((i1 + m - i2) % m, 1 - j2)
                    };
                    table[e1 * order + e2] = i + m * j;
                }
            }
        }
    }
    FiniteGroup::from_flat_unchecked(order, table)
}

/// The quaternion group of order 8: `a^4 = 1`, `b² = a²`, `bab⁻¹ = a⁻¹`,
/// elements `a^i b^j ↦ i + 4j`.
pub fn quaternion8() -> FiniteGroup {
    let mut table = vec![0usize; 64];
    for i1 in 0..4 {
        for j1 in 0..2 {
            let e1 = i1 + 4 * j1;
            for i2 in 0..4 {
                for j2 in 0..2 {
                    let e2 = i2 + 4 * j2;
                    let (i, j) = if j1 == 0 {
                        ((i1 + i2) % 4, j2)
                    } else if j2 == 0 {
                        ((i1 + 4 - i2) % 4, 1)
                    } else {
                        ((i1 + 4 - i2 + 2) % 4, 0)
                    };
                    table[e1 * 8 + e2] = i + 4 * j;
                }
            }
        }
    }
    FiniteGroup::from_flat_unchecked(8, table)
}

/// The dicyclic group of order 12: `a^6 = 1`, `b² = a³`, `bab⁻¹ = a⁻¹`.
pub fn dicyclic3() -> FiniteGroup {
    let mut table = vec![0usize; 144];
    for i1 in 0..6 {
        for j1 in 0..2 {
            let e1 = i1 + 6 * j1;
            for i2 in 0..6 {
                for j2 in 0..2 {
                    let e2 = i2 + 6 * j2;
                    let (i, j) = if j1 == 0 {
                        ((i1 + i2) % 6, j2)
                    } else if j2 == 0 {
                        ((i1 + 6 - i2) % 6, 1)
                    } else {
                        ((i1 + 6 - i2 + 3) % 6, 0)
                    };
                    table[e1 * 12 + e2] = i + 6 * j;
                }
            }
        }
    }
    FiniteGroup::from_flat_unchecked(12, table)
}

/// The alternating group on four points, with elements sorted so the
/// identity permutation comes first.
pub fn alternating4() -> FiniteGroup {
    let mut evens: Vec<Vec<usize>> = Vec::new();
    let mut items = vec![0, 1, 2, 3];
    permutations(&mut items, 0, &mut evens);
    evens.retain(|p| parity(p) == 0);
    evens.sort();
    let index_of = |p: &[usize]| evens.iter().position(|q| q == p).unwrap();
    let mut table = vec![0usize; 144];
    for (i, p) in evens.iter().enumerate() {
        for (j, q) in evens.iter().enumerate() {
            table[i * 12 + j] = index_of(&perm::compose(p, q));
        }
    }
    FiniteGroup::from_flat_unchecked(12, table)
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

fn parity(p: &[usize]) -> usize {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

/// One representative per isomorphism class of groups of order `n`,
/// for `1 ≤ n ≤ 15`, in a fixed deterministic order (cyclic first).
pub fn groups_of_order(n: usize) -> Result<Vec<FiniteGroup>, GroupError> {
    let groups = match n {
        1 | 2 | 3 | 5 | 7 | 11 | 13 | 15 => vec![cyclic(n)],
        4 => vec![cyclic(4), direct_product(&cyclic(2), &cyclic(2))],
        6 => vec![cyclic(6), dihedral(3)],
        8 => vec![
            cyclic(8),
            direct_product(&cyclic(4), &cyclic(2)),
            direct_product(&cyclic(2), &direct_product(&cyclic(2), &cyclic(2))),
            dihedral(4),
            quaternion8(),
        ],
        9 => vec![cyclic(9), direct_product(&cyclic(3), &cyclic(3))],
        10 => vec![cyclic(10), dihedral(5)],
        12 => vec![
            cyclic(12),
            direct_product(&cyclic(6), &cyclic(2)),
            dihedral(6),
            alternating4(),
            dicyclic3(),
        ],
        14 => vec![cyclic(14), dihedral(7)],
        _ => return Err(GroupError::OrderOutOfCatalog { n }),
    };
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::are_isomorphic;

    #[test]
    fn catalog_entries_pass_full_validation() {
        for n in 1..=15 {
            for g in groups_of_order(n).unwrap() {
                assert_eq!(g.order(), n);
                assert!(FiniteGroup::from_table(&g.rows()).is_ok(), "order {n}");
            }
        }
    }

    #[test]
    fn catalog_entries_are_pairwise_non_isomorphic() {
        for n in 1..=15 {
            let groups = groups_of_order(n).unwrap();
            for i in 0..groups.len() {
                for j in i + 1..groups.len() {
                    assert!(
                        !are_isomorphic(&groups[i], &groups[j]),
                        "order {n}: {i} vs {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn class_counts() {
        let expected = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(
                groups_of_order(i + 1).unwrap().len(),
                want,
                "order {}",
                i + 1
            );
        }
        assert!(groups_of_order(16).is_err());
        assert!(groups_of_order(0).is_err());
    }

    #[test]
    fn structural_spot_checks() {
        assert!(alternating4().is_soluble());
        assert!(!alternating4().is_nilpotent());
        assert_eq!(quaternion8().elem_order(4), 4); // b has order 4
        assert_eq!(dicyclic3().elem_order(6), 4); // b has order 4
        assert!(!dihedral(7).is_abelian());
        assert!(cyclic(15).is_cyclic());
    }
}
