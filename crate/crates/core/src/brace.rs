//! Skew braces: one carrier set with two group operations sharing the
//! identity 0 and satisfying `a∘(b+c) = a∘b − a + a∘c`.
//!
//! The λ-map `λ_a(b) = −a + a∘b` is cached at validation time; every
//! predicate reads the cache.

use std::collections::HashMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::group::{
    self, all_subgroups, center, quotient_group, subgroup_generated, FiniteGroup, GroupError,
    SubgroupSet,
};
use crate::perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraceError {
    #[error("additive table is not a group: {0}")]
    BadAdditiveGroup(GroupError),
    #[error("multiplicative table is not a group: {0}")]
    BadMultiplicativeGroup(GroupError),
    #[error("tables have different orders ({add} vs {circle})")]
    OrderMismatch { add: usize, circle: usize },
    #[error("the two identities do not coincide")]
    IdentityMismatch,
    #[error("skew left distributivity fails at triple ({a}, {b}, {c})")]
    DistributivityFails { a: usize, b: usize, c: usize },
    #[error("the given subset is not an ideal")]
    NotAnIdeal,
    #[error("additive or multiplicative group is not nilpotent")]
    NotNilpotentType,
}

/// A finite skew brace: a shared carrier `0..order` with an addition
/// table, a circle table, and the cached λ-map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewBrace {
    add: FiniteGroup,
    circle: FiniteGroup,
    lambda: Vec<Vec<usize>>,
}

impl SkewBrace {
    /// Validates both tables as groups, checks the shared identity and
    /// skew left distributivity on all triples, then populates the λ
    /// cache and checks its invariants.
    pub fn new(add_rows: &[Vec<usize>], circle_rows: &[Vec<usize>]) -> Result<Self, BraceError> {
        let add = FiniteGroup::from_table(add_rows).map_err(BraceError::BadAdditiveGroup)?;
        let circle =
            FiniteGroup::from_table(circle_rows).map_err(BraceError::BadMultiplicativeGroup)?;
        Self::from_groups(add, circle)
    }

    /// As [`SkewBrace::new`], starting from already validated groups.
    pub fn from_groups(add: FiniteGroup, circle: FiniteGroup) -> Result<Self, BraceError> {
        if add.order() != circle.order() {
            return Err(BraceError::OrderMismatch {
                add: add.order(),
                circle: circle.order(),
            });
        }
        let n = add.order();
        // both groups put their identity at 0, but keep the check explicit
        for b in 0..n {
            if circle.mul(0, b) != b || circle.mul(b, 0) != b {
                return Err(BraceError::IdentityMismatch);
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = circle.mul(a, b);
                for c in 0..n {
                    let lhs = circle.mul(a, add.mul(b, c));
                    let rhs = add.mul(add.mul(ab, add.inv(a)), circle.mul(a, c));
                    if lhs != rhs {
                        return Err(BraceError::DistributivityFails { a, b, c });
                    }
                }
            }
        }
        let lambda: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| add.mul(add.inv(a), circle.mul(a, b)))
                    .collect()
            })
            .collect();
        let brace = SkewBrace {
            add,
            circle,
            lambda,
        };
        debug_assert!(brace.lambda_cache_is_sound());
        Ok(brace)
    }

    fn lambda_cache_is_sound(&self) -> bool {
        let n = self.order();
        for a in 0..n {
            if !perm::is_permutation(&self.lambda[a]) {
                return false;
            }
            // λ_a is an automorphism of (A,+)
            for x in 0..n {
                for y in 0..n {
                    if self.lambda[a][self.add.mul(x, y)]
                        != self.add.mul(self.lambda[a][x], self.lambda[a][y])
                    {
                        return false;
                    }
                }
            }
        }
        // a ↦ λ_a is a homomorphism from (A,∘)
        for a in 0..n {
            for b in 0..n {
                let composed = perm::compose(&self.lambda[a], &self.lambda[b]);
                if self.lambda[self.circle.mul(a, b)] != composed {
                    return false;
                }
            }
        }
        true
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn add(&self) -> &FiniteGroup {
        &self.add
    }

    pub fn circle(&self) -> &FiniteGroup {
        &self.circle
    }

    /// The cached automorphism `λ_a` as an image table.
    pub fn lambda_of(&self, a: usize) -> &[usize] {
        &self.lambda[a]
    }

    /// `a ∗ b = λ_a(b) − b`.
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.add.mul(self.lambda[a][b], self.add.inv(b))
    }

    /// The trivial skew brace on `g`: both operations agree.
    pub fn trivial(g: &FiniteGroup) -> SkewBrace {
        SkewBrace::from_groups(g.clone(), g.clone()).expect("trivial brace is always valid")
    }

    /// The almost trivial skew brace on `g`: `a∘b = b + a`.
    pub fn almost_trivial(g: &FiniteGroup) -> SkewBrace {
        let n = g.order();
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| g.mul(b, a)).collect())
            .collect();
        let circle = FiniteGroup::from_table(&rows).expect("opposite of a group is a group");
        SkewBrace::from_groups(g.clone(), circle).expect("almost trivial brace is always valid")
    }

    /// Kernel of the λ-map: always a sub-skew brace.
    pub fn lambda_kernel(&self) -> SubgroupSet {
        let n = self.order();
        let id = perm::identity(n);
        let members: Vec<usize> = (0..n).filter(|&a| self.lambda[a] == id).collect();
        SubgroupSet::from_sorted(members)
    }
}

#[derive(Serialize, Deserialize)]
struct RawBrace {
    order: usize,
    add: Vec<Vec<usize>>,
    circle: Vec<Vec<usize>>,
}

impl Serialize for SkewBrace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawBrace {
            order: self.order(),
            add: self.add.rows(),
            circle: self.circle.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkewBrace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawBrace::deserialize(d)?;
        if raw.add.len() != raw.order || raw.circle.len() != raw.order {
            return Err(D::Error::custom("declared order does not match table size"));
        }
        SkewBrace::new(&raw.add, &raw.circle).map_err(D::Error::custom)
    }
}

/// An ideal: a λ-invariant subgroup of `(A,+)` normal in both groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealSet {
    members: Vec<usize>,
}

impl IdealSet {
    pub fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        IdealSet { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
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

/// Additive subgroup generated by all `x ∗ y` with `x ∈ xs`, `y ∈ ys`.
pub fn star_closure(a: &SkewBrace, xs: &[usize], ys: &[usize]) -> SubgroupSet {
    let stars: Vec<usize> = xs
        .iter()
        .flat_map(|&x| ys.iter().map(move |&y| a.star(x, y)))
        .collect();
    subgroup_generated(a.add(), &stars)
}

/// The derived ideal `A² = A ∗ A`.
pub fn derived_ideal(a: &SkewBrace) -> SubgroupSet {
    let all: Vec<usize> = (0..a.order()).collect();
    star_closure(a, &all, &all)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetRole {
    NotClosed,
    SubSkewBrace,
    LeftIdeal,
    Ideal,
}

/// Strongest classification of a subset containing 0: sub-skew brace,
/// left-ideal (λ-invariant), or ideal (normal in both groups).
pub fn subset_role(a: &SkewBrace, s: &[usize]) -> SubsetRole {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    assert!(sorted.first() == Some(&0), "subset must contain 0");
    if !group::is_subgroup(a.add(), &sorted) || !group::is_subgroup(a.circle(), &sorted) {
        return SubsetRole::NotClosed;
    }
    let lambda_invariant = (0..a.order()).all(|x| {
        sorted
            .iter()
            .all(|&m| sorted.binary_search(&a.lambda_of(x)[m]).is_ok())
    });
    if !lambda_invariant {
        return SubsetRole::SubSkewBrace;
    }
    if group::is_normal(a.add(), &sorted) && group::is_normal(a.circle(), &sorted) {
        SubsetRole::Ideal
    } else {
        SubsetRole::LeftIdeal
    }
}

/// All ideals of `a`, found by filtering the λ-invariant normal
/// additive subgroups. Always contains `{0}` and `A`.
pub fn ideals(a: &SkewBrace) -> Vec<IdealSet> {
    all_subgroups(a.add())
        .into_iter()
        .filter(|s| subset_role(a, s.members()) == SubsetRole::Ideal)
        .map(|s| IdealSet::from_sorted(s.into_members()))
        .collect()
}

/// Quotient skew brace by an ideal, with the projection table. Cosets
/// are renumbered by minimal representative, so the coset of 0 is 0.
pub fn quotient(a: &SkewBrace, i: &IdealSet) -> Result<(SkewBrace, Vec<usize>), BraceError> {
    if subset_role(a, i.members()) != SubsetRole::Ideal {
        return Err(BraceError::NotAnIdeal);
    }
    let sub = SubgroupSet::from_sorted(i.members().to_vec());
    let (add_q, proj) = quotient_group(a.add(), &sub).map_err(BraceError::BadAdditiveGroup)?;
    // additive and circle cosets of an ideal coincide, so the same
    // projection works for both tables
    let q = add_q.order();
    let n = a.order();
    let mut reps = vec![usize::MAX; q];
    for x in (0..n).rev() {
        reps[proj[x]] = x; // minimal representative wins
    }
    let mut circle_rows = vec![vec![0usize; q]; q];
    for ci in 0..q {
        for cj in 0..q {
            circle_rows[ci][cj] = proj[a.circle().mul(reps[ci], reps[cj])];
        }
    }
    let circle_q =
        FiniteGroup::from_table(&circle_rows).map_err(BraceError::BadMultiplicativeGroup)?;
    let brace = SkewBrace::from_groups(add_q, circle_q)?;
    Ok((brace, proj))
}

/// `Soc(A) = Z(A,+) ∩ Ker(λ)`.
pub fn socle(a: &SkewBrace) -> IdealSet {
    let z = center(a.add());
    let k = a.lambda_kernel();
    let members: Vec<usize> = z
        .members()
        .iter()
        .copied()
        .filter(|&x| k.contains(x))
        .collect();
    IdealSet::from_sorted(members)
}

/// `Ann(A) = Z(A,∘) ∩ Soc(A)`.
pub fn annihilator(a: &SkewBrace) -> IdealSet {
    let zc = center(a.circle());
    let soc = socle(a);
    let members: Vec<usize> = soc
        .members()
        .iter()
        .copied()
        .filter(|&x| zc.contains(x))
        .collect();
    IdealSet::from_sorted(members)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Socle,
    Annihilator,
    Left,
    Right,
}

/// The four standard series, computed until stabilization.
///
/// The ascending socle/annihilator series lift quotient socles through
/// the projection; the descending left/right series iterate the star
/// closure. Iteration is capped at `|A|` steps.
pub fn series(a: &SkewBrace, kind: SeriesKind) -> Vec<Vec<usize>> {
    let n = a.order();
    let all: Vec<usize> = (0..n).collect();
    match kind {
        SeriesKind::Socle | SeriesKind::Annihilator => {
            let mut terms: Vec<Vec<usize>> = vec![vec![0]];
            for _ in 0..n {
                let current = terms.last().unwrap().clone();
                if current.len() == n {
                    break;
                }
                let ideal = IdealSet::from_sorted(current.clone());
                let (q, proj) = quotient(a, &ideal).expect("series terms are ideals");
                let target = match kind {
                    SeriesKind::Socle => socle(&q),
                    SeriesKind::Annihilator => annihilator(&q),
                    _ => unreachable!(),
                };
                let mut next: Vec<usize> = (0..n).filter(|&x| target.contains(proj[x])).collect();
                next.sort_unstable();
                if next == current {
                    break;
                }
                terms.push(next);
            }
            terms
        }
        SeriesKind::Left | SeriesKind::Right => {
            let mut terms: Vec<Vec<usize>> = vec![all.clone()];
            for _ in 0..n {
                let current = terms.last().unwrap().clone();
                if current.len() == 1 {
                    break;
                }
                let next = match kind {
                    SeriesKind::Left => star_closure(a, &all, &current),
                    SeriesKind::Right => star_closure(a, &current, &all),
                    _ => unreachable!(),
                }
                .into_members();
                if next == current {
                    break;
                }
                terms.push(next);
            }
            terms
        }
    }
}

/// Smallest `m` with `Soc_m(A) = A`, or `None` when the socle series
/// stabilizes below `A`.
pub fn multipermutation_level(a: &SkewBrace) -> Option<usize> {
    let terms = series(a, SeriesKind::Socle);
    let last = terms.last().unwrap();
    if last.len() == a.order() {
        Some(terms.len() - 1)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    Trivial,
    AlmostTrivial,
    IsBrace,
    TwoSided,
    BiSkew,
    LambdaHomomorphic,
    WeaklyTrivial,
    MetaTrivial,
    OneGenerator,
    LeftNilpotent,
    RightNilpotent,
    AnnihilatorNilpotent,
    FiniteMpLevel,
    Supersoluble,
    Soluble,
}

impl PropertyKind {
    pub const ALL: [PropertyKind; 15] = [
        PropertyKind::Trivial,
        PropertyKind::AlmostTrivial,
        PropertyKind::IsBrace,
        PropertyKind::TwoSided,
        PropertyKind::BiSkew,
        PropertyKind::LambdaHomomorphic,
        PropertyKind::WeaklyTrivial,
        PropertyKind::MetaTrivial,
        PropertyKind::OneGenerator,
        PropertyKind::LeftNilpotent,
        PropertyKind::RightNilpotent,
        PropertyKind::AnnihilatorNilpotent,
        PropertyKind::FiniteMpLevel,
        PropertyKind::Supersoluble,
        PropertyKind::Soluble,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PropertyKind::Trivial => "trivial",
            PropertyKind::AlmostTrivial => "almost_trivial",
            PropertyKind::IsBrace => "is_brace",
            PropertyKind::TwoSided => "two_sided",
            PropertyKind::BiSkew => "bi_skew",
            PropertyKind::LambdaHomomorphic => "lambda_homomorphic",
            PropertyKind::WeaklyTrivial => "weakly_trivial",
            PropertyKind::MetaTrivial => "meta_trivial",
            PropertyKind::OneGenerator => "one_generator",
            PropertyKind::LeftNilpotent => "left_nilpotent",
            PropertyKind::RightNilpotent => "right_nilpotent",
            PropertyKind::AnnihilatorNilpotent => "annihilator_nilpotent",
            PropertyKind::FiniteMpLevel => "finite_mp_level",
            PropertyKind::Supersoluble => "supersoluble",
            PropertyKind::Soluble => "soluble",
        }
    }
}

/// Definitional check of an algebraic property of the skew brace.
pub fn has_property(a: &SkewBrace, kind: PropertyKind) -> bool {
    let n = a.order();
    match kind {
        PropertyKind::Trivial => {
            (0..n).all(|x| (0..n).all(|y| a.circle().mul(x, y) == a.add().mul(x, y)))
        }
        PropertyKind::AlmostTrivial => {
            (0..n).all(|x| (0..n).all(|y| a.circle().mul(x, y) == a.add().mul(y, x)))
        }
        PropertyKind::IsBrace => a.add().is_abelian(),
        PropertyKind::TwoSided => {
            // (a+b)∘c = a∘c − c + b∘c
            (0..n).all(|x| {
                (0..n).all(|y| {
                    let xy = a.add().mul(x, y);
                    (0..n).all(|z| {
                        let lhs = a.circle().mul(xy, z);
                        let rhs = a.add().mul(
                            a.add().mul(a.circle().mul(x, z), a.add().inv(z)),
                            a.circle().mul(y, z),
                        );
                        lhs == rhs
                    })
                })
            })
        }
        PropertyKind::BiSkew => {
            // λ_{a+b} = λ_b λ_a and λ_{λ_a(b)} = λ_a λ_b λ_a⁻¹
            (0..n).all(|x| {
                (0..n).all(|y| {
                    let first = a.lambda_of(a.add().mul(x, y))
                        == perm::compose(a.lambda_of(y), a.lambda_of(x)).as_slice();
                    let conj = perm::compose(
                        a.lambda_of(x),
                        &perm::compose(a.lambda_of(y), &perm::invert(a.lambda_of(x))),
                    );
                    first && a.lambda_of(a.lambda_of(x)[y]) == conj.as_slice()
                })
            })
        }
        PropertyKind::LambdaHomomorphic => (0..n).all(|x| {
            (0..n).all(|y| {
                a.lambda_of(a.add().mul(x, y))
                    == perm::compose(a.lambda_of(x), a.lambda_of(y)).as_slice()
            })
        }),
        PropertyKind::WeaklyTrivial => {
            let d = derived_ideal(a);
            let d_op = derived_ideal(&opposite(a));
            d.members().iter().filter(|&&x| d_op.contains(x)).count() == 1
        }
        PropertyKind::MetaTrivial => {
            let d = derived_ideal(a);
            d.members().iter().all(|&x| {
                d.members()
                    .iter()
                    .all(|&y| a.circle().mul(x, y) == a.add().mul(x, y))
            })
        }
        PropertyKind::OneGenerator => (0..n).any(|g| sub_brace_closure(a, &[g]).len() == n),
        PropertyKind::LeftNilpotent => series(a, SeriesKind::Left).last().unwrap().len() == 1,
        PropertyKind::RightNilpotent => series(a, SeriesKind::Right).last().unwrap().len() == 1,
        PropertyKind::AnnihilatorNilpotent => {
            series(a, SeriesKind::Annihilator).last().unwrap().len() == n
        }
        PropertyKind::FiniteMpLevel => multipermutation_level(a).is_some(),
        PropertyKind::Supersoluble => {
            let mut memo = HashMap::new();
            soluble_kind_rec(a, FactorRequirement::PrimeOrder, &mut memo)
        }
        PropertyKind::Soluble => {
            let mut memo = HashMap::new();
            soluble_kind_rec(a, FactorRequirement::TrivialBrace, &mut memo)
        }
    }
}

/// Smallest sub-skew brace containing the seed: alternate additive and
/// multiplicative subgroup closure until a fixed point.
pub fn sub_brace_closure(a: &SkewBrace, seed: &[usize]) -> SubgroupSet {
    let mut current = subgroup_generated(a.add(), seed);
    loop {
        let circ = subgroup_generated(a.circle(), current.members());
        let next = subgroup_generated(a.add(), circ.members());
        if next == current {
            return current;
        }
        current = next;
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum FactorRequirement {
    PrimeOrder,
    TrivialBrace,
}

/// Backtracking recursion: the brace qualifies iff some nonzero ideal
/// with the required factor property has a qualifying quotient.
/// Memoized on the exact table pair.
fn soluble_kind_rec(
    a: &SkewBrace,
    req: FactorRequirement,
    memo: &mut HashMap<(Vec<usize>, Vec<usize>), bool>,
) -> bool {
    if a.order() == 1 {
        return true;
    }
    let key = (a.add().flat().to_vec(), a.circle().flat().to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut result = false;
    for ideal in ideals(a) {
        if ideal.len() == 1 {
            continue;
        }
        let qualifies = match req {
            FactorRequirement::PrimeOrder => group::is_prime(ideal.len()),
            FactorRequirement::TrivialBrace => ideal.members().iter().all(|&x| {
                ideal.members().iter().all(|&y| {
                    a.circle().mul(x, y) == a.add().mul(x, y)
                        && a.add().mul(x, y) == a.add().mul(y, x)
                })
            }),
        };
        if !qualifies {
            continue;
        }
        let (q, _) = quotient(a, &ideal).expect("ideals() returns ideals");
        if soluble_kind_rec(&q, req, memo) {
            result = true;
            break;
        }
    }
    memo.insert(key, result);
    result
}

/// The opposite skew brace: addition reversed, circle unchanged.
pub fn opposite(a: &SkewBrace) -> SkewBrace {
    let n = a.order();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| a.add().mul(y, x)).collect())
        .collect();
    let add_op = FiniteGroup::from_table(&rows).expect("opposite of a group is a group");
    SkewBrace::from_groups(add_op, a.circle().clone())
        .expect("the opposite of a skew brace is a skew brace")
}

/// For a skew brace of nilpotent type, the additive Sylow subgroups are
/// ideals and reconstruct `A` as a direct product with componentwise
/// operations; returns one ideal per prime divisor (ascending).
pub fn sylow_decomposition(a: &SkewBrace) -> Result<Vec<IdealSet>, BraceError> {
    if !a.add().is_nilpotent() || !a.circle().is_nilpotent() {
        return Err(BraceError::NotNilpotentType);
    }
    let n = a.order();
    let primes = crate::arith::factorize(n as u64);
    let mut parts = Vec::new();
    for &(p, _) in primes.factors() {
        let sylow =
            group::sylow_subgroup(a.add(), p as usize).map_err(BraceError::BadAdditiveGroup)?;
        if subset_role(a, sylow.members()) != SubsetRole::Ideal {
            return Err(BraceError::NotAnIdeal);
        }
        parts.push(IdealSet::from_sorted(sylow.into_members()));
    }
    // the sum map from the product of the parts must hit every element
    // exactly once, with both operations acting componentwise
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for part in &parts {
        let mut next = Vec::new();
        for t in &tuples {
            for &x in part.members() {
                let mut t2 = t.clone();
                t2.push(x);
                next.push(t2);
            }
        }
        tuples = next;
    }
    let sum = |t: &[usize]| t.iter().fold(0usize, |acc, &x| a.add().mul(acc, x));
    let mut seen = vec![false; n];
    for t in &tuples {
        let s = sum(t);
        if seen[s] {
            return Err(BraceError::NotAnIdeal);
        }
        seen[s] = true;
    }
    for t in &tuples {
        for u in &tuples {
            let pointwise_add: Vec<usize> =
                t.iter().zip(u).map(|(&x, &y)| a.add().mul(x, y)).collect();
            let pointwise_circ: Vec<usize> = t
                .iter()
                .zip(u)
                .map(|(&x, &y)| a.circle().mul(x, y))
                .collect();
            if a.add().mul(sum(t), sum(u)) != sum(&pointwise_add)
                || a.circle().mul(sum(t), sum(u)) != sum(&pointwise_circ)
            {
                return Err(BraceError::NotAnIdeal);
            }
        }
    }
    Ok(parts)
}

/// Cheap isomorphism-invariant fingerprint used for pruning: multiset
/// of (additive order, circle order) pairs, λ-orbit sizes, and the
/// sizes of socle, annihilator and derived ideal.
pub fn invariant_vector(a: &SkewBrace) -> Vec<usize> {
    let n = a.order();
    let mut pairs: Vec<usize> = (0..n)
        .map(|x| a.add().elem_order(x) * 64 + a.circle().elem_order(x))
        .collect();
    pairs.sort_unstable();
    let mut orbit_sizes = lambda_orbit_sizes(a);
    orbit_sizes.sort_unstable();
    let mut v = pairs;
    v.push(usize::MAX); // separator
    v.extend(orbit_sizes);
    v.push(usize::MAX);
    v.push(socle(a).len());
    v.push(annihilator(a).len());
    v.push(derived_ideal(a).len());
    v
}

fn lambda_orbit_sizes(a: &SkewBrace) -> Vec<usize> {
    let n = a.order();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut cursor = 0;
        while cursor < orbit.len() {
            let x = orbit[cursor];
            cursor += 1;
            for g in 0..n {
                let y = a.lambda_of(g)[x];
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        sizes.push(orbit.len());
    }
    sizes
}

/// Skew brace isomorphism: a bijection preserving both operations.
/// Prunes by the invariant vector, then backtracks over additive
/// isomorphisms that also respect the circle table.
pub fn isomorphic(a: &SkewBrace, b: &SkewBrace) -> bool {
    if a.order() != b.order() {
        return false;
    }
    if invariant_vector(a) != invariant_vector(b) {
        return false;
    }
    let n = a.order();
    group::find_isomorphism_where(a.add(), b.add(), |f| {
        (0..n).all(|x| (0..n).all(|y| f[a.circle().mul(x, y)] == b.circle().mul(f[x], f[y])))
    })
    .is_some()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::catalog::{cyclic, dihedral, direct_product};

    /// The brace on Z/4 with `a∘b = a + b + 2ab`.
    pub(crate) fn z4_brace() -> SkewBrace {
        let add = cyclic(4);
        let circle_rows: Vec<Vec<usize>> = (0..4)
            .map(|a| (0..4).map(|b| (a + b + 2 * a * b) % 4).collect())
            .collect();
        SkewBrace::new(&add.rows(), &circle_rows).unwrap()
    }

    #[test]
    fn trivial_brace_on_s3_is_valid() {
        let s3 = dihedral(3);
        let b = SkewBrace::trivial(&s3);
        assert_eq!(b.order(), 6);
        assert!(has_property(&b, PropertyKind::Trivial));
        assert!(!has_property(&b, PropertyKind::IsBrace));
    }

    #[test]
    fn z4_brace_is_valid_and_nontrivial() {
        let b = z4_brace();
        assert!(!has_property(&b, PropertyKind::Trivial));
        assert!(has_property(&b, PropertyKind::IsBrace));
        // λ_1 = multiplication by 1 + 2·1 = 3
        assert_eq!(b.lambda_of(1)[1], 3);
        assert_eq!(b.star(1, 1), 2);
    }

    #[test]
    fn tables_of_different_orders_are_rejected() {
        let err = SkewBrace::from_groups(cyclic(4), cyclic(2)).unwrap_err();
        assert!(matches!(err, BraceError::OrderMismatch { .. }));
    }

    #[test]
    fn mismatched_tables_fail_validation() {
        // Z/4 relabeled by swapping 1 and 2 stays a group with identity
        // 0, but against the standard Z/4 addition the λ-rows stop
        // being endomorphisms, so distributivity must fail
        let add = cyclic(4);
        let swap = |x: usize| [0, 2, 1, 3][x];
        let relabeled: Vec<Vec<usize>> = (0..4)
            .map(|a| (0..4).map(|b| swap((swap(a) + swap(b)) % 4)).collect())
            .collect();
        let err = SkewBrace::new(&add.rows(), &relabeled).unwrap_err();
        assert!(matches!(err, BraceError::DistributivityFails { .. }));
        // a circle table whose identity is not at 0 is rejected up front
        let shifted = vec![
            vec![1, 0, 3, 2],
            vec![0, 1, 2, 3],
            vec![3, 2, 1, 0],
            vec![2, 3, 0, 1],
        ];
        let err = SkewBrace::new(&add.rows(), &shifted).unwrap_err();
        assert!(matches!(err, BraceError::BadMultiplicativeGroup(_)));
    }

    #[test]
    fn standard_klein_circle_on_z4_is_the_nontrivial_brace() {
        // xor against addition mod 4 satisfies all the axioms; this is
        // the unique nontrivial skew brace structure on additive Z/4
        let add = cyclic(4);
        let klein = direct_product(&cyclic(2), &cyclic(2));
        let brace = SkewBrace::new(&add.rows(), &klein.rows()).unwrap();
        assert!(isomorphic(&brace, &z4_brace()));
    }

    #[test]
    fn star_vanishes_against_zero_and_in_trivial_braces() {
        let b = z4_brace();
        for a in 0..4 {
            assert_eq!(b.star(a, 0), 0);
        }
        let t = SkewBrace::trivial(&dihedral(3));
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(t.star(x, y), 0);
            }
        }
    }

    #[test]
    fn lambda_of_almost_trivial_is_conjugation() {
        let s3 = dihedral(3);
        let b = SkewBrace::almost_trivial(&s3);
        for x in 0..6 {
            for y in 0..6 {
                let expected = s3.mul(s3.mul(s3.inv(x), y), x);
                assert_eq!(b.lambda_of(x)[y], expected);
            }
        }
    }

    #[test]
    fn star_closures() {
        let b = z4_brace();
        let all: Vec<usize> = (0..4).collect();
        assert_eq!(star_closure(&b, &all, &all).members(), &[0, 2]);
        assert_eq!(star_closure(&b, &[], &all).members(), &[0]);
        let t = SkewBrace::trivial(&cyclic(5));
        let all5: Vec<usize> = (0..5).collect();
        assert_eq!(star_closure(&t, &all5, &all5).members(), &[0]);
    }

    #[test]
    fn subset_roles() {
        let b = z4_brace();
        assert_eq!(subset_role(&b, &[0]), SubsetRole::Ideal);
        assert_eq!(b.lambda_kernel().members(), &[0, 2]);
        assert_eq!(
            subset_role(&b, b.lambda_kernel().members()),
            SubsetRole::Ideal
        );
        let t = SkewBrace::trivial(&dihedral(3));
        // λ = id, so every subgroup is a left-ideal; reflections are
        // not normal, hence not ideals
        assert_eq!(subset_role(&t, &[0, 3]), SubsetRole::LeftIdeal);
        assert_eq!(subset_role(&t, &[0, 1]), SubsetRole::NotClosed);
        // under conjugation-λ a reflection subgroup is not λ-invariant
        let at = SkewBrace::almost_trivial(&dihedral(3));
        assert_eq!(subset_role(&at, &[0, 3]), SubsetRole::SubSkewBrace);
    }

    #[test]
    fn ideal_lattices() {
        let t = SkewBrace::trivial(&cyclic(6));
        let ids = ideals(&t);
        let sets: Vec<&[usize]> = ids.iter().map(|i| i.members()).collect();
        assert_eq!(
            sets,
            vec![
                &[0][..],
                &[0, 3][..],
                &[0, 2, 4][..],
                &[0, 1, 2, 3, 4, 5][..]
            ]
        );
        let one = SkewBrace::trivial(&cyclic(1));
        assert_eq!(ideals(&one).len(), 1);
    }

    #[test]
    fn quotients() {
        let b = z4_brace();
        let ker = IdealSet::from_sorted(vec![0, 2]);
        let (q, proj) = quotient(&b, &ker).unwrap();
        assert_eq!(q.order(), 2);
        assert!(has_property(&q, PropertyKind::Trivial));
        assert_eq!(proj, vec![0, 1, 0, 1]);
        let full = IdealSet::from_sorted((0..4).collect());
        let (one, _) = quotient(&b, &full).unwrap();
        assert_eq!(one.order(), 1);
        let zero = IdealSet::from_sorted(vec![0]);
        let (copy, _) = quotient(&b, &zero).unwrap();
        assert!(isomorphic(&copy, &b));
        let not_ideal = IdealSet::from_sorted(vec![0, 1]);
        assert!(quotient(&b, &not_ideal).is_err());
    }

    #[test]
    fn socle_and_annihilator() {
        let t = SkewBrace::trivial(&cyclic(5));
        assert_eq!(socle(&t).len(), 5);
        let b = z4_brace();
        assert_eq!(socle(&b).members(), &[0, 2]);
        assert_eq!(annihilator(&b).members(), &[0, 2]);
    }

    #[test]
    fn series_examples() {
        let b = z4_brace();
        let soc = series(&b, SeriesKind::Socle);
        assert_eq!(soc, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        let t = SkewBrace::trivial(&dihedral(3));
        let left = series(&t, SeriesKind::Left);
        assert_eq!(left.len(), 2);
        assert_eq!(left[1], vec![0]);
    }

    #[test]
    fn multipermutation_levels() {
        assert_eq!(
            multipermutation_level(&SkewBrace::trivial(&cyclic(1))),
            Some(0)
        );
        assert_eq!(
            multipermutation_level(&SkewBrace::trivial(&cyclic(5))),
            Some(1)
        );
        assert_eq!(multipermutation_level(&z4_brace()), Some(2));
    }

    #[test]
    fn property_checks() {
        let t_ab = SkewBrace::trivial(&cyclic(6));
        assert!(has_property(&t_ab, PropertyKind::TwoSided));
        assert!(has_property(&t_ab, PropertyKind::OneGenerator));
        let b = z4_brace();
        assert!(has_property(&b, PropertyKind::BiSkew));
        assert!(has_property(&b, PropertyKind::LambdaHomomorphic));
        assert!(has_property(&b, PropertyKind::Supersoluble));
        assert!(has_property(&b, PropertyKind::Soluble));
        let t_s3 = SkewBrace::trivial(&dihedral(3));
        assert!(!has_property(&t_s3, PropertyKind::OneGenerator));
        assert!(has_property(&t_s3, PropertyKind::Supersoluble));
        assert!(has_property(&t_s3, PropertyKind::WeaklyTrivial));
    }

    #[test]
    fn opposites() {
        let t = SkewBrace::trivial(&dihedral(3));
        let op = opposite(&t);
        assert!(has_property(&op, PropertyKind::AlmostTrivial));
        let back = opposite(&op);
        assert_eq!(back, t);
        let b = z4_brace();
        assert_eq!(opposite(&b), b);
    }

    #[test]
    fn sylow_decompositions() {
        let t = SkewBrace::trivial(&cyclic(6));
        let parts = sylow_decomposition(&t).unwrap();
        let sizes: Vec<usize> = parts.iter().map(|p| p.len()).collect();
        assert_eq!(sizes, vec![2, 3]);
        let b = z4_brace();
        assert_eq!(sylow_decomposition(&b).unwrap().len(), 1);
        let s3 = SkewBrace::trivial(&dihedral(3));
        assert_eq!(sylow_decomposition(&s3), Err(BraceError::NotNilpotentType));
    }

    #[test]
    fn isomorphism_checks() {
        let b = z4_brace();
        assert!(isomorphic(&b, &b));
        assert!(!isomorphic(&b, &SkewBrace::trivial(&cyclic(4))));
        let klein = direct_product(&cyclic(2), &cyclic(2));
        assert!(!isomorphic(
            &SkewBrace::trivial(&cyclic(4)),
            &SkewBrace::trivial(&klein)
        ));
    }

    #[test]
    fn star_identity_holds_everywhere() {
        // a∗(b+c) = a∗b + b + a∗c − b
        let braces = [
            z4_brace(),
            SkewBrace::trivial(&dihedral(3)),
            SkewBrace::almost_trivial(&dihedral(3)),
        ];
        for brace in &braces {
            let n = brace.order();
            let add = brace.add();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let lhs = brace.star(a, add.mul(b, c));
                        let rhs = add.mul(
                            add.mul(add.mul(brace.star(a, b), b), brace.star(a, c)),
                            add.inv(b),
                        );
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn two_sided_star_identity() {
        // (a+b)∗c = −b + a∗c + b + b∗c in two-sided skew braces
        let brace = z4_brace();
        assert!(has_property(&brace, PropertyKind::TwoSided));
        let n = brace.order();
        let add = brace.add();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = brace.star(add.mul(a, b), c);
                    let rhs = add.mul(
                        add.mul(add.mul(add.inv(b), brace.star(a, c)), b),
                        brace.star(b, c),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn bi_skew_agrees_with_swapped_validation() {
        let braces = [
            z4_brace(),
            SkewBrace::trivial(&cyclic(6)),
            SkewBrace::trivial(&dihedral(3)),
            SkewBrace::almost_trivial(&dihedral(3)),
        ];
        for brace in &braces {
            let swapped = SkewBrace::new(&brace.circle().rows(), &brace.add().rows());
            assert_eq!(has_property(brace, PropertyKind::BiSkew), swapped.is_ok());
        }
    }

    #[test]
    fn brace_json_round_trip() {
        let b = z4_brace();
        let text = serde_json::to_string(&b).unwrap();
        let back: SkewBrace = serde_json::from_str(&text).unwrap();
        assert_eq!(b, back);
        let bad = r#"{"order":2,"add":[[0,1],[1,0]],"circle":[[1,0],[0,1]]}"#;
        assert!(serde_json::from_str::<SkewBrace>(bad).is_err());
    }
}
