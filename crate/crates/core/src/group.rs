//! Finite groups as Cayley tables.
//!
//! Elements are the indices `0..order` and index `0` is always the
//! identity; every constructor renumbers to enforce this. Tables are
//! stored row-major: `table[a * order + b]` is the product `a·b`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not square or has out-of-range entries at cell ({row}, {col})")]
    MalformedTable { row: usize, col: usize },
    #[error("row or column {index} is not a permutation (first bad cell ({row}, {col}))")]
    NotLatinSquare {
        index: usize,
        row: usize,
        col: usize,
    },
    #[error("index 0 is not a two-sided identity (fails at element {witness})")]
    NoIdentityAtZero { witness: usize },
    #[error("associativity fails at triple ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("{p} is not prime")]
    NotPrime { p: usize },
    #[error("no catalog of groups of order {n}; supported orders are 1..=15")]
    OrderOutOfCatalog { n: usize },
    #[error("subgroup is not normal")]
    NotNormal,
}

/// A finite group on the index set `0..order`, as a Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    elem_order: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table: index 0 must be a two-sided identity,
    /// every row and column must be a permutation, and associativity
    /// must hold for all triples. Errors name the first violation.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::MalformedTable {
                    row: r,
                    col: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::MalformedTable { row: r, col: c });
                }
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in rows {
            flat.extend_from_slice(row);
        }
        Self::from_flat(n, flat)
    }

    pub(crate) fn from_flat(n: usize, flat: Vec<usize>) -> Result<Self, GroupError> {
        assert_eq!(flat.len(), n * n);
        for b in 0..n {
            if flat[b] != b {
                return Err(GroupError::NoIdentityAtZero { witness: b });
            }
        }
        for a in 0..n {
            if flat[a * n] != a {
                return Err(GroupError::NoIdentityAtZero { witness: a });
            }
        }
        // Latin square: rows, then columns.
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let v = flat[a * n + b];
                if seen[v] == a {
                    return Err(GroupError::NotLatinSquare {
                        index: a,
                        row: a,
                        col: b,
                    });
                }
                seen[v] = a;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for b in 0..n {
            for a in 0..n {
                let v = flat[a * n + b];
                if seen[v] == b {
                    return Err(GroupError::NotLatinSquare {
                        index: b,
                        row: a,
                        col: b,
                    });
                }
                seen[v] = b;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(Self::from_flat_unchecked(n, flat))
    }

    /// For tables that are groups by construction (holomorphs, direct
    /// products of validated groups). Still computes the caches.
    pub(crate) fn from_flat_unchecked(n: usize, flat: Vec<usize>) -> Self {
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| flat[a * n + b] == 0)
                .expect("finite group has inverses");
        }
        let mut elem_order = vec![0; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = flat[x * n + a];
                k += 1;
            }
            elem_order[a] = k;
        }
        FiniteGroup {
            order: n,
            table: flat,
            inv,
            elem_order,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Order of the element `a`.
    pub fn elem_order(&self, a: usize) -> usize {
        self.elem_order[a]
    }

    /// The Cayley table as nested rows (the JSON wire shape).
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }

    pub(crate) fn flat(&self) -> &[usize] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        self.predicate(GroupPredicate::Abelian)
    }

    pub fn is_cyclic(&self) -> bool {
        self.predicate(GroupPredicate::Cyclic)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.predicate(GroupPredicate::Nilpotent)
    }

    pub fn is_soluble(&self) -> bool {
        self.predicate(GroupPredicate::Soluble)
    }

    /// Standard group-class predicates. Nilpotency is decided by the
    /// upper central series reaching the whole group, solubility by the
    /// derived series reaching the identity.
    pub fn predicate(&self, kind: GroupPredicate) -> bool {
        let n = self.order;
        match kind {
            GroupPredicate::Abelian => {
                (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
            }
            GroupPredicate::Cyclic => (0..n).any(|a| self.elem_order(a) == n),
            GroupPredicate::Nilpotent => {
                let mut z = vec![false; n];
                z[0] = true;
                loop {
                    // next term: elements whose commutator with everything
                    // lands in the current term
                    let next: Vec<bool> = (0..n)
                        .map(|x| {
                            (0..n).all(|g| {
                                let comm =
                                    self.mul(self.mul(self.mul(x, g), self.inv(x)), self.inv(g));
                                z[comm]
                            })
                        })
                        .collect();
                    if next.iter().all(|&b| b) {
                        return true;
                    }
                    if next == z {
                        return false;
                    }
                    z = next;
                }
            }
            GroupPredicate::Soluble => {
                let mut d: Vec<usize> = (0..n).collect();
                loop {
                    let comms: Vec<usize> = d
                        .iter()
                        .flat_map(|&x| {
                            d.iter().map(move |&y| {
                                self.mul(self.mul(self.mul(x, y), self.inv(x)), self.inv(y))
                            })
                        })
                        .collect();
                    let next = subgroup_generated(self, &comms).into_members();
                    if next.len() == 1 {
                        return true;
                    }
                    if next == d {
                        return false;
                    }
                    d = next;
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupPredicate {
    Abelian,
    Cyclic,
    Nilpotent,
    Soluble,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl Serialize for FiniteGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawGroup {
            order: self.order,
            table: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawGroup::deserialize(d)?;
        if raw.table.len() != raw.order {
            return Err(D::Error::custom("declared order does not match table size"));
        }
        FiniteGroup::from_table(&raw.table).map_err(D::Error::custom)
    }
}

/// A subgroup of a parent group, kept as a sorted list of element
/// indices (always containing 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubgroupSet {
    members: Vec<usize>,
}

impl SubgroupSet {
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(members.first(), Some(&0));
        SubgroupSet { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn into_members(self) -> Vec<usize> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// Smallest subgroup of `g` containing `seed`. The empty seed generates
/// the identity subgroup.
pub fn subgroup_generated(g: &FiniteGroup, seed: &[usize]) -> SubgroupSet {
    let n = g.order();
    let mut member = vec![false; n];
    member[0] = true;
    let mut elems = vec![0usize];
    let mut frontier: Vec<usize> = Vec::new();
    for &s in seed {
        assert!(s < n, "seed index out of range");
        if !member[s] {
            member[s] = true;
            elems.push(s);
            frontier.push(s);
        }
    }
    // closure under products; inverses come for free in a finite group
    while let Some(x) = frontier.pop() {
        for i in 0..elems.len() {
            let e = elems[i];
            for p in [g.mul(e, x), g.mul(x, e)] {
                if !member[p] {
                    member[p] = true;
                    elems.push(p);
                    frontier.push(p);
                }
            }
        }
    }
    elems.sort_unstable();
    SubgroupSet::from_sorted(elems)
}

/// Elements commuting with everything.
pub fn center(g: &FiniteGroup) -> SubgroupSet {
    let n = g.order();
    let members: Vec<usize> = (0..n)
        .filter(|&x| (0..n).all(|y| g.mul(x, y) == g.mul(y, x)))
        .collect();
    SubgroupSet::from_sorted(members)
}

/// Is `s` closed under product (and hence inverse)?
pub fn is_subgroup(g: &FiniteGroup, s: &[usize]) -> bool {
    if s.first() != Some(&0) {
        return false;
    }
    let sorted = s.windows(2).all(|w| w[0] < w[1]);
    debug_assert!(sorted);
    s.iter()
        .all(|&x| s.iter().all(|&y| s.binary_search(&g.mul(x, y)).is_ok()))
}

/// Is the subgroup `s` normal in `g`?
pub fn is_normal(g: &FiniteGroup, s: &[usize]) -> bool {
    let n = g.order();
    (0..n).all(|x| {
        s.iter().all(|&h| {
            let conj = g.mul(g.mul(x, h), g.inv(x));
            s.binary_search(&conj).is_ok()
        })
    })
}

/// A homomorphism between two groups, stored as the image table:
/// `image[x]` is the image of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupHom {
    image: Vec<usize>,
}

impl GroupHom {
    /// Checks `image[0] = 0` and `image[x·y] = image[x]·image[y]`.
    pub fn new(
        source: &FiniteGroup,
        target: &FiniteGroup,
        image: Vec<usize>,
    ) -> Result<Self, GroupError> {
        assert_eq!(image.len(), source.order());
        if image[0] != 0 {
            return Err(GroupError::NoIdentityAtZero { witness: image[0] });
        }
        for x in 0..source.order() {
            for y in 0..source.order() {
                if image[source.mul(x, y)] != target.mul(image[x], image[y]) {
                    return Err(GroupError::NotAssociative { a: x, b: y, c: 0 });
                }
            }
        }
        Ok(GroupHom { image })
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }
}

/// A greedily chosen irredundant generating sequence: repeatedly take
/// the smallest element outside the closure so far.
fn greedy_generators(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut closure = subgroup_generated(g, &[]);
    while closure.len() < g.order() {
        let next = (0..g.order()).find(|&x| !closure.contains(x)).unwrap();
        gens.push(next);
        closure = subgroup_generated(g, &gens);
    }
    gens
}

/// For each element, a derivation `x = parent · gens[gen]` discovered by
/// BFS from the identity. Lets a map on generators extend to all of `g`.
fn expression_tree(g: &FiniteGroup, gens: &[usize]) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    parent[0] = Some((0, usize::MAX));
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (gi, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            if parent[y].is_none() {
                parent[y] = Some((x, gi));
                queue.push_back(y);
            }
        }
    }
    parent
        .into_iter()
        .map(|p| p.expect("generators generate the group"))
        .collect()
}

fn extend_map(
    g: &FiniteGroup,
    h: &FiniteGroup,
    tree: &[(usize, usize)],
    bfs_order: &[usize],
    gen_images: &[usize],
) -> Option<Vec<usize>> {
    let n = g.order();
    let mut image = vec![usize::MAX; n];
    image[0] = 0;
    for &x in bfs_order {
        if x == 0 {
            continue;
        }
        let (p, gi) = tree[x];
        image[x] = h.mul(image[p], gen_images[gi]);
    }
    if !perm::is_permutation(&image) {
        return None;
    }
    for x in 0..n {
        for y in 0..n {
            if image[g.mul(x, y)] != h.mul(image[x], image[y]) {
                return None;
            }
        }
    }
    Some(image)
}

fn bfs_order_of(tree: &[(usize, usize)]) -> Vec<usize> {
    // topological order: parents before children
    let n = tree.len();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    order.push(0);
    placed[0] = true;
    while order.len() < n {
        for x in 0..n {
            if !placed[x] && placed[tree[x].0] {
                placed[x] = true;
                order.push(x);
            }
        }
    }
    order
}

/// Enumerates the bijective homomorphisms `g → h` by backtracking over
/// generator images (constrained by element orders), feeding each full
/// candidate to `accept`. Stops early when `accept` returns `true` and
/// `stop_at_first` is set.
fn search_isomorphisms(
    g: &FiniteGroup,
    h: &FiniteGroup,
    mut accept: impl FnMut(&[usize]) -> bool,
    stop_at_first: bool,
) {
    if g.order() != h.order() {
        return;
    }
    let gens = greedy_generators(g);
    if gens.is_empty() {
        accept(&[0]);
        return;
    }
    let tree = expression_tree(g, &gens);
    let bfs = bfs_order_of(&tree);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&gen| {
            (0..h.order())
                .filter(|&y| h.elem_order(y) == g.elem_order(gen))
                .collect()
        })
        .collect();
    let mut images = vec![0usize; gens.len()];
    let mut stack = vec![0usize]; // candidate cursor per level
    loop {
        let level = stack.len() - 1;
        let cursor = stack[level];
        if cursor >= candidates[level].len() {
            stack.pop();
            match stack.last_mut() {
                Some(c) => *c += 1,
                None => return,
            }
            continue;
        }
        images[level] = candidates[level][cursor];
        if level + 1 < gens.len() {
            stack.push(0);
            continue;
        }
        if let Some(full) = extend_map(g, h, &tree, &bfs, &images) {
            if accept(&full) && stop_at_first {
                return;
            }
        }
        *stack.last_mut().unwrap() += 1;
    }
}

/// All isomorphisms `g → h` as image tables, sorted lexicographically.
pub fn isomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    search_isomorphisms(
        g,
        h,
        |img| {
            found.push(img.to_vec());
            false
        },
        false,
    );
    found.sort();
    found
}

/// Group isomorphism test: order-multiset refinement first, then
/// generator-image backtracking.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    if g.order() != h.order() {
        return false;
    }
    let mut og: Vec<usize> = (0..g.order()).map(|x| g.elem_order(x)).collect();
    let mut oh: Vec<usize> = (0..h.order()).map(|x| h.elem_order(x)).collect();
    og.sort_unstable();
    oh.sort_unstable();
    if og != oh {
        return false;
    }
    let mut hit = false;
    search_isomorphisms(
        g,
        h,
        |_| {
            hit = true;
            true
        },
        true,
    );
    hit
}

/// First isomorphism `g → h` satisfying `extra`, if any.
pub(crate) fn find_isomorphism_where(
    g: &FiniteGroup,
    h: &FiniteGroup,
    mut extra: impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let mut found = None;
    search_isomorphisms(
        g,
        h,
        |img| {
            if extra(img) {
                found = Some(img.to_vec());
                true
            } else {
                false
            }
        },
        true,
    );
    found
}

/// All automorphisms of `g`, in lexicographic order of image tables
/// (the identity always comes first).
pub fn automorphisms(g: &FiniteGroup) -> Vec<GroupHom> {
    isomorphisms(g, g)
        .into_iter()
        .map(|image| GroupHom { image })
        .collect()
}

/// The holomorph `G ⋊ Aut(G)` together with the data needed to act on
/// the original carrier. Elements are encoded as `g + |G| · a` where `a`
/// indexes into `automorphisms`; the identity is `(0, id) = 0`.
#[derive(Debug, Clone)]
pub struct Holomorph {
    pub group: FiniteGroup,
    pub carrier_order: usize,
    pub automorphisms: Vec<Vec<usize>>,
}

impl Holomorph {
    pub fn encode(&self, g: usize, a: usize) -> usize {
        g + self.carrier_order * a
    }

    pub fn decode(&self, e: usize) -> (usize, usize) {
        (e % self.carrier_order, e / self.carrier_order)
    }

    /// Natural action on the carrier: `(g, α) · x = g · α(x)`.
    pub fn act(&self, e: usize, x: usize, carrier: &FiniteGroup) -> usize {
        let (g, a) = self.decode(e);
        carrier.mul(g, self.automorphisms[a][x])
    }

    /// The translation copy of the carrier: all `(g, id)`.
    pub fn translations(&self) -> Vec<usize> {
        (0..self.carrier_order).collect()
    }

    /// The point stabilizer of 0: all `(0, α)`.
    pub fn stabilizer(&self) -> Vec<usize> {
        (0..self.automorphisms.len())
            .map(|a| self.encode(0, a))
            .collect()
    }
}

/// Builds `Hol(G)` on pairs `(g, α)` with `(g, α)(h, β) = (g·α(h), αβ)`.
pub fn holomorph(g: &FiniteGroup) -> Holomorph {
    let n = g.order();
    let auts: Vec<Vec<usize>> = automorphisms(g)
        .into_iter()
        .map(|h| h.image.clone())
        .collect();
    let k = auts.len();
    debug_assert_eq!(auts[0], perm::identity(n));
    let index_of: std::collections::HashMap<&[usize], usize> = auts
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_slice(), i))
        .collect();
    let mut comp = vec![0usize; k * k];
    for i in 0..k {
        for j in 0..k {
            let c = perm::compose(&auts[i], &auts[j]);
            comp[i * k + j] = index_of[c.as_slice()];
        }
    }
    let m = n * k;
    let mut table = vec![0usize; m * m];
    for a1 in 0..k {
        for g1 in 0..n {
            let e1 = g1 + n * a1;
            for a2 in 0..k {
                for g2 in 0..n {
                    let e2 = g2 + n * a2;
                    let gp = g.mul(g1, auts[a1][g2]);
                    let ap = comp[a1 * k + a2];
                    table[e1 * m + e2] = gp + n * ap;
                }
            }
        }
    }
    Holomorph {
        group: FiniteGroup::from_flat_unchecked(m, table),
        carrier_order: n,
        automorphisms: auts,
    }
}

/// The unique Sylow p-subgroup of a nilpotent group: the set of
/// elements of p-power order.
pub fn sylow_subgroup(g: &FiniteGroup, p: usize) -> Result<SubgroupSet, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime { p });
    }
    if !g.is_nilpotent() {
        return Err(GroupError::NotNilpotent);
    }
    let members: Vec<usize> = (0..g.order())
        .filter(|&x| {
            let mut o = g.elem_order(x);
            while o % p == 0 {
                o /= p;
            }
            o == 1
        })
        .collect();
    Ok(SubgroupSet::from_sorted(members))
}

pub(crate) fn is_prime(p: usize) -> bool {
    crate::arith::is_prime(p as u64)
}

/// Quotient of `g` by a normal subgroup. Cosets are renumbered by their
/// minimal element, so the coset of 0 gets index 0. Returns the quotient
/// and the projection table.
pub fn quotient_group(
    g: &FiniteGroup,
    n_sub: &SubgroupSet,
) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
    if !is_subgroup(g, n_sub.members()) || !is_normal(g, n_sub.members()) {
        return Err(GroupError::NotNormal);
    }
    let n = g.order();
    let mut coset_min = vec![usize::MAX; n];
    for x in 0..n {
        let m = n_sub.members().iter().map(|&h| g.mul(x, h)).min().unwrap();
        coset_min[x] = m;
    }
    let mut reps: Vec<usize> = coset_min.clone();
    reps.sort_unstable();
    reps.dedup();
    let index_of = |m: usize| reps.binary_search(&m).unwrap();
    let proj: Vec<usize> = (0..n).map(|x| index_of(coset_min[x])).collect();
    let q = reps.len();
    let mut table = vec![0usize; q * q];
    for (i, &ri) in reps.iter().enumerate() {
        for (j, &rj) in reps.iter().enumerate() {
            table[i * q + j] = proj[g.mul(ri, rj)];
        }
    }
    let quotient = FiniteGroup::from_flat(q, table)?;
    Ok((quotient, proj))
}

/// All subgroups of `g`, each found exactly once via canonical-path
/// depth-first search over increasing irredundant generating sequences.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<SubgroupSet> {
    let n = g.order();
    let mut out: Vec<Vec<usize>> = vec![vec![0]];
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![0], 0)];
    while let Some((s, last)) = stack.pop() {
        for gen in (last + 1).max(1)..n {
            if s.binary_search(&gen).is_ok() {
                continue;
            }
            let mut seed = s.clone();
            seed.push(gen);
            let h = subgroup_generated(g, &seed).into_members();
            // canonical path: gen must be the smallest new element
            let min_new = h
                .iter()
                .find(|x| s.binary_search(x).is_err())
                .copied()
                .unwrap();
            if min_new != gen {
                continue;
            }
            out.push(h.clone());
            if h.len() < n {
                stack.push((h, gen));
            }
        }
    }
    out.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
    out.into_iter().map(SubgroupSet::from_sorted).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, dihedral, direct_product, groups_of_order, quaternion8};

    #[test]
    fn z3_is_a_valid_group() {
        let z3 = FiniteGroup::from_table(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        assert_eq!(z3.order(), 3);
        assert_eq!(z3.inv(1), 2);
    }

    #[test]
    fn repeated_entry_is_not_latin() {
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::NotLatinSquare { .. }));
    }

    #[test]
    fn identity_must_sit_at_zero() {
        // Z/2 with the identity renamed to 1
        let err = FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::NoIdentityAtZero { .. }));
    }

    #[test]
    fn associativity_violations_are_caught() {
        // a Latin square with identity row/column that is not a group
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        let err = FiniteGroup::from_table(&rows).unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative { .. }));
    }

    #[test]
    fn s3_from_generator_closure_is_a_group() {
        // oracle: close {a 3-cycle, a transposition} of Sym(3) under
        // composition, then check the axioms by brute force
        let perms = close_perms(vec![vec![1, 2, 0], vec![1, 0, 2]]);
        assert_eq!(perms.len(), 6);
        let index_of = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let rows: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index_of(&perm::compose(p, q)))
                    .collect()
            })
            .collect();
        let g = FiniteGroup::from_table(&rows).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    fn close_perms(seed: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let id = perm::identity(seed[0].len());
        let mut all = vec![id];
        loop {
            let mut grew = false;
            let snapshot = all.clone();
            for p in &snapshot {
                for s in &seed {
                    let c = perm::compose(p, s);
                    if !all.contains(&c) {
                        all.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        // identity first, deterministic order after
        all.sort();
        all
    }

    #[test]
    fn subgroup_generated_examples() {
        let z6 = cyclic(6);
        assert_eq!(subgroup_generated(&z6, &[2]).members(), &[0, 2, 4]);
        assert_eq!(subgroup_generated(&z6, &[]).members(), &[0]);
        let s3 = dihedral(3);
        // a transposition (index 3) and a 3-cycle (index 1) generate all
        assert_eq!(subgroup_generated(&s3, &[3, 1]).len(), 6);
    }

    #[test]
    fn subgroup_generated_idempotent_and_monotone() {
        for g in groups_of_order(8).unwrap() {
            let h = subgroup_generated(&g, &[1, 2]);
            let again = subgroup_generated(&g, h.members());
            assert_eq!(h, again);
            let smaller = subgroup_generated(&g, &[1]);
            assert!(smaller.members().iter().all(|&x| h.contains(x)));
        }
    }

    #[test]
    fn predicates_on_small_groups() {
        assert!(cyclic(4).is_cyclic());
        let s3 = dihedral(3);
        assert!(!s3.predicate(GroupPredicate::Nilpotent));
        assert!(s3.is_soluble());
        let q8 = quaternion8();
        assert!(q8.predicate(GroupPredicate::Nilpotent));
        assert!(!q8.is_abelian());
    }

    #[test]
    fn centers() {
        let z5 = cyclic(5);
        assert_eq!(center(&z5).len(), 5);
        assert_eq!(center(&dihedral(3)).members(), &[0]);
        assert_eq!(center(&quaternion8()).len(), 2);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&cyclic(4)).len(), 2);
        assert_eq!(automorphisms(&cyclic(1)).len(), 1);
        let e8 = direct_product(&cyclic(2), &direct_product(&cyclic(2), &cyclic(2)));
        // oracle: |GL(3,2)| by counting ordered bases of F_2^3
        assert_eq!(7 * 6 * 4, 168);
        assert_eq!(automorphisms(&e8).len(), 168);
    }

    #[test]
    fn automorphisms_form_a_group() {
        for g in [cyclic(6), dihedral(4), quaternion8()] {
            let auts: Vec<Vec<usize>> = automorphisms(&g)
                .into_iter()
                .map(|h| h.image().to_vec())
                .collect();
            assert_eq!(auts[0], perm::identity(g.order()));
            for a in &auts {
                assert!(auts.contains(&perm::invert(a)));
                for b in &auts {
                    assert!(auts.contains(&perm::compose(a, b)));
                }
            }
        }
    }

    #[test]
    fn holomorph_orders_and_identity() {
        let h3 = holomorph(&cyclic(3));
        assert_eq!(h3.group.order(), 6);
        assert_eq!(h3.decode(0), (0, 0));
        let klein = direct_product(&cyclic(2), &cyclic(2));
        assert_eq!(holomorph(&klein).group.order(), 24);
    }

    #[test]
    fn holomorph_stabilizer_fixes_the_base_point() {
        let g = dihedral(3);
        let hol = holomorph(&g);
        let stab = hol.stabilizer();
        assert_eq!(stab.len(), automorphisms(&g).len());
        for &e in &stab {
            assert_eq!(hol.act(e, 0, &g), 0);
        }
    }

    #[test]
    fn group_hom_constructor_validates() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        let hom = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(hom.apply(3), 1);
        assert!(GroupHom::new(&z4, &z2, vec![0, 1, 1, 0]).is_err());
        assert!(GroupHom::new(&z4, &z2, vec![1, 0, 1, 0]).is_err());
    }

    #[test]
    fn holomorph_translations_act_regularly() {
        let g = dihedral(3);
        let hol = holomorph(&g);
        for x in 0..6 {
            for y in 0..6 {
                let movers: Vec<usize> = hol
                    .translations()
                    .into_iter()
                    .filter(|&t| hol.act(t, x, &g) == y)
                    .collect();
                assert_eq!(movers.len(), 1);
            }
        }
    }

    #[test]
    fn holomorph_tables_are_groups() {
        // full axiom check stays cheap for carriers of order <= 6
        for n in 1..=6 {
            for g in groups_of_order(n).unwrap() {
                let hol = holomorph(&g);
                assert!(FiniteGroup::from_table(&hol.group.rows()).is_ok());
            }
        }
    }

    #[test]
    fn sylow_subgroups() {
        let z12 = cyclic(12);
        assert_eq!(sylow_subgroup(&z12, 2).unwrap().members(), &[0, 3, 6, 9]);
        assert_eq!(sylow_subgroup(&z12, 5).unwrap().members(), &[0]);
        assert_eq!(
            sylow_subgroup(&dihedral(3), 2),
            Err(GroupError::NotNilpotent)
        );
    }

    #[test]
    fn quotients() {
        let z6 = cyclic(6);
        let three = subgroup_generated(&z6, &[3]);
        let (q, proj) = quotient_group(&z6, &three).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(proj[3], 0);
        let s3 = dihedral(3);
        let refl = subgroup_generated(&s3, &[3]);
        assert!(quotient_group(&s3, &refl).is_err());
    }

    #[test]
    fn subgroup_lattice_of_s3() {
        let subs = all_subgroups(&dihedral(3));
        // {e}, three reflections, one rotation subgroup, S3 itself
        assert_eq!(subs.len(), 6);
        let sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 3);
    }

    #[test]
    fn isomorphism_testing() {
        let z4 = cyclic(4);
        let klein = direct_product(&cyclic(2), &cyclic(2));
        assert!(!are_isomorphic(&z4, &klein));
        assert!(are_isomorphic(&z4, &z4));
        // two presentations of S3
        let s3 = dihedral(3);
        let z6 = cyclic(6);
        assert!(!are_isomorphic(&s3, &z6));
        assert_eq!(isomorphisms(&z4, &z4).len(), 2);
    }

    #[test]
    fn group_json_round_trip() {
        let g = dihedral(4);
        let text = serde_json::to_string(&g).unwrap();
        let back: FiniteGroup = serde_json::from_str(&text).unwrap();
        assert_eq!(g, back);
        let bad = r#"{"order": 2, "table": [[0, 1], [1, 1]]}"#;
        assert!(serde_json::from_str::<FiniteGroup>(bad).is_err());
    }
}
