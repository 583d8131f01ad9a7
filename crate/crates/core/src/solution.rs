//! Finite non-degenerate set-theoretic solutions of the Yang–Baxter
//! equation: `r(x, y) = (λ_x(y), ρ_y(x))` with bijective component maps
//! and the braid relation `r₁₂ r₂₃ r₁₂ = r₂₃ r₁₂ r₂₃` on all triples.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::brace::{self, IdealSet, SkewBrace};
use crate::group::is_prime;
use crate::perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolutionError {
    #[error("{side} row {index} is not a permutation")]
    NotPermutation { side: &'static str, index: usize },
    #[error("r is not a bijection of the pair set (pair ({x}, {y}) hit twice)")]
    RNotBijective { x: usize, y: usize },
    #[error("braid relation fails at triple ({x}, {y}, {z})")]
    BraidFails { x: usize, y: usize, z: usize },
    #[error("induced map on retraction classes is ill-defined")]
    InducedMapIllDefined,
    #[error("the skew brace is not supersoluble")]
    NotSupersoluble,
}

/// A solution on the points `0..size`. Row `x` of `lambda` is the
/// permutation `λ_x`; row `y` of `rho` is `ρ_y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    size: usize,
    lambda: Vec<Vec<usize>>,
    rho: Vec<Vec<usize>>,
}

impl Solution {
    /// Exhaustively validates all invariants: component maps bijective,
    /// `r` a bijection of the pair set, braid relation on all triples.
    pub fn new(lambda: Vec<Vec<usize>>, rho: Vec<Vec<usize>>) -> Result<Self, SolutionError> {
        let size = lambda.len();
        assert_eq!(rho.len(), size, "tables must have equal size");
        for (i, row) in lambda.iter().enumerate() {
            if row.len() != size || !perm::is_permutation(row) {
                return Err(SolutionError::NotPermutation {
                    side: "lambda",
                    index: i,
                });
            }
        }
        for (i, row) in rho.iter().enumerate() {
            if row.len() != size || !perm::is_permutation(row) {
                return Err(SolutionError::NotPermutation {
                    side: "rho",
                    index: i,
                });
            }
        }
        let s = Solution { size, lambda, rho };
        let mut seen = vec![false; size * size];
        for x in 0..size {
            for y in 0..size {
                let (u, v) = s.r(x, y);
                if seen[u * size + v] {
                    return Err(SolutionError::RNotBijective { x: u, y: v });
                }
                seen[u * size + v] = true;
            }
        }
        for x in 0..size {
            for y in 0..size {
                for z in 0..size {
                    let lhs = r12(&s, r23(&s, r12(&s, (x, y, z))));
                    let rhs = r23(&s, r12(&s, r23(&s, (x, y, z))));
                    if lhs != rhs {
                        return Err(SolutionError::BraidFails { x, y, z });
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.lambda[x][y], self.rho[y][x])
    }

    pub fn lambda_row(&self, x: usize) -> &[usize] {
        &self.lambda[x]
    }

    pub fn rho_row(&self, y: usize) -> &[usize] {
        &self.rho[y]
    }
}

fn r12(s: &Solution, (x, y, z): (usize, usize, usize)) -> (usize, usize, usize) {
    let (u, v) = s.r(x, y);
    (u, v, z)
}

fn r23(s: &Solution, (x, y, z): (usize, usize, usize)) -> (usize, usize, usize) {
    let (u, v) = s.r(y, z);
    (x, u, v)
}

#[derive(Serialize, Deserialize)]
struct RawSolution {
    size: usize,
    lambda: Vec<Vec<usize>>,
    rho: Vec<Vec<usize>>,
}

impl Serialize for Solution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawSolution {
            size: self.size,
            lambda: self.lambda.clone(),
            rho: self.rho.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Solution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawSolution::deserialize(d)?;
        if raw.lambda.len() != raw.size || raw.rho.len() != raw.size {
            return Err(D::Error::custom("declared size does not match table size"));
        }
        Solution::new(raw.lambda, raw.rho).map_err(D::Error::custom)
    }
}

/// The flip solution `r(x, y) = (y, x)`.
pub fn flip(n: usize) -> Solution {
    assert!(n >= 1);
    let id = perm::identity(n);
    Solution {
        size: n,
        lambda: vec![id.clone(); n],
        rho: vec![id; n],
    }
}

/// Is this exactly the flip on its point set?
pub fn is_flip(s: &Solution) -> bool {
    let id = perm::identity(s.size());
    (0..s.size()).all(|x| s.lambda_row(x) == id && s.rho_row(x) == id)
}

/// The solution `r_A(a, b) = (λ_a(b), λ_a(b)⁻¹ ∘ a ∘ b)` attached to a
/// skew brace; the inverse is taken in `(A, ∘)`.
pub fn from_skew_brace(a: &SkewBrace) -> Solution {
    let n = a.order();
    let lambda: Vec<Vec<usize>> = (0..n).map(|x| a.lambda_of(x).to_vec()).collect();
    let mut rho = vec![vec![0usize; n]; n];
    for y in 0..n {
        for x in 0..n {
            let l = a.lambda_of(x)[y];
            rho[y][x] = a.circle().mul(a.circle().mul(a.circle().inv(l), x), y);
        }
    }
    Solution::new(lambda, rho).expect("a skew brace always induces a solution")
}

/// `r² = id` on all pairs.
pub fn is_involutive(s: &Solution) -> bool {
    (0..s.size()).all(|x| {
        (0..s.size()).all(|y| {
            let (u, v) = s.r(x, y);
            s.r(u, v) == (x, y)
        })
    })
}

/// The retraction: points with identical λ- and ρ-rows are merged.
/// Classes are numbered by minimal representative, ascending. Returns
/// the retracted solution and the projection table.
pub fn retraction(s: &Solution) -> Result<(Solution, Vec<usize>), SolutionError> {
    let n = s.size();
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        let found = reps
            .iter()
            .position(|&r| s.lambda_row(r) == s.lambda_row(x) && s.rho_row(r) == s.rho_row(x));
        class_of[x] = match found {
            Some(c) => c,
            None => {
                reps.push(x);
                reps.len() - 1
            }
        };
    }
    let m = reps.len();
    let mut lambda = vec![vec![usize::MAX; m]; m];
    let mut rho = vec![vec![usize::MAX; m]; m];
    // the induced maps must not depend on the choice of representatives
    for x in 0..n {
        for y in 0..n {
            let (u, v) = s.r(x, y);
            let (cu, cv) = (class_of[u], class_of[v]);
            let slot = &mut lambda[class_of[x]][class_of[y]];
            if *slot != usize::MAX && *slot != cu {
                return Err(SolutionError::InducedMapIllDefined);
            }
            *slot = cu;
            let slot = &mut rho[class_of[y]][class_of[x]];
            if *slot != usize::MAX && *slot != cv {
                return Err(SolutionError::InducedMapIllDefined);
            }
            *slot = cv;
        }
    }
    let retracted = Solution::new(lambda, rho)?;
    Ok((retracted, class_of))
}

/// Smallest `m` with `|Ret^m(S)| = 1`, or `None` when retraction
/// reaches a fixed point of size greater than 1. Retraction sizes are
/// non-increasing, so at most `size` iterations are needed.
pub fn mp_level(s: &Solution) -> Option<usize> {
    let mut current = s.clone();
    for m in 0..=s.size() {
        if current.size() == 1 {
            return Some(m);
        }
        let (next, _) = retraction(&current).expect("retraction of a valid solution is valid");
        if next.size() == current.size() {
            return None;
        }
        current = next;
    }
    None
}

/// A map between solutions, stored as the image table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionMap {
    image: Vec<usize>,
}

impl SolutionMap {
    pub fn new(image: Vec<usize>) -> Self {
        SolutionMap { image }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }
}

/// Does the homomorphism square commute: `(f×f) ∘ r = s ∘ (f×f)`?
pub fn check_solution_map(src: &Solution, dst: &Solution, f: &SolutionMap) -> bool {
    if f.image().len() != src.size() || f.image().iter().any(|&v| v >= dst.size()) {
        return false;
    }
    (0..src.size()).all(|x| {
        (0..src.size()).all(|y| {
            let (u, v) = src.r(x, y);
            dst.r(f.apply(x), f.apply(y)) == (f.apply(u), f.apply(v))
        })
    })
}

/// One level of a supersolubility witness: a target solution and the
/// morphism into it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessStage {
    pub target: Solution,
    pub map: SolutionMap,
}

/// Witness data for supersolubility of a solution at a base point: a
/// chain of subsets with one morphism per level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupersolubleWitness {
    pub base_point: usize,
    /// `X_0 ⊆ X_1 ⊆ … ⊆ X_m`, each a sorted subset of the point set.
    pub chain: Vec<Vec<usize>>,
    /// Stages `i = 0, …, m−1`.
    pub stages: Vec<WitnessStage>,
}

/// The condition of the supersolubility definition violated first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessViolation {
    MalformedChain,
    StageMapNotMorphism { level: usize },
    BaseClassMismatch { level: usize },
    UnequalClassSizes { level: usize },
    NotUnionOfClasses { level: usize },
    NotInvariant { level: usize },
    ImageNotPrimeFlip { level: usize },
}

impl std::fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WitnessViolation::MalformedChain => write!(f, "chain is not an ascending chain from the base point to the whole set"),
            WitnessViolation::StageMapNotMorphism { level } => write!(f, "stage map {level} is not a morphism of solutions"),
            WitnessViolation::BaseClassMismatch { level } => write!(f, "condition (1) fails at level {level}: X_i is not the class of the base point"),
            WitnessViolation::UnequalClassSizes { level } => write!(f, "condition (2) fails at level {level}: classes have unequal sizes"),
            WitnessViolation::NotUnionOfClasses { level } => write!(f, "condition (3) fails at level {level}: X_{{i+1}} is not a union of classes"),
            WitnessViolation::NotInvariant { level } => write!(f, "condition (4) fails at level {level}: X_{{i+1}} is not λ- and ρ-invariant"),
            WitnessViolation::ImageNotPrimeFlip { level } => write!(f, "condition (5) fails at level {level}: restricted image is not a flip of prime size"),
        }
    }
}

/// Checks the five witness conditions literally; `Ok(())` means the
/// witness certifies supersolubility of `s` at its base point.
pub fn check_witness(s: &Solution, w: &SupersolubleWitness) -> Result<(), WitnessViolation> {
    let n = s.size();
    let m = w
        .chain
        .len()
        .checked_sub(1)
        .ok_or(WitnessViolation::MalformedChain)?;
    if w.stages.len() != m {
        return Err(WitnessViolation::MalformedChain);
    }
    if w.chain[0] != vec![w.base_point] {
        return Err(WitnessViolation::MalformedChain);
    }
    if w.chain[m] != (0..n).collect::<Vec<_>>() {
        return Err(WitnessViolation::MalformedChain);
    }
    for i in 0..m {
        if !w.chain[i]
            .iter()
            .all(|x| w.chain[i + 1].binary_search(x).is_ok())
        {
            return Err(WitnessViolation::MalformedChain);
        }
    }
    for (i, stage) in w.stages.iter().enumerate() {
        let f = &stage.map;
        if !check_solution_map(s, &stage.target, f) {
            return Err(WitnessViolation::StageMapNotMorphism { level: i });
        }
        // (1) X_i is the equivalence class of the base point under ~_f
        let base_class: Vec<usize> = (0..n)
            .filter(|&x| f.apply(x) == f.apply(w.base_point))
            .collect();
        if base_class != w.chain[i] {
            return Err(WitnessViolation::BaseClassMismatch { level: i });
        }
        // (2) all classes have size |X_i|
        let mut fiber_sizes = vec![0usize; stage.target.size()];
        for x in 0..n {
            fiber_sizes[f.apply(x)] += 1;
        }
        if fiber_sizes.iter().any(|&c| c != 0 && c != w.chain[i].len()) {
            return Err(WitnessViolation::UnequalClassSizes { level: i });
        }
        // (3) X_{i+1} is a union of classes
        let next = &w.chain[i + 1];
        let in_next = |x: usize| next.binary_search(&x).is_ok();
        let images: Vec<usize> = next.iter().map(|&x| f.apply(x)).collect();
        let union_ok = (0..n).all(|x| in_next(x) == images.contains(&f.apply(x)));
        if !union_ok {
            return Err(WitnessViolation::NotUnionOfClasses { level: i });
        }
        // (4) λ_x(X_{i+1}) = X_{i+1} and ρ_x(X_{i+1}) = X_{i+1} for all x
        let invariant = (0..n).all(|x| {
            next.iter()
                .all(|&y| in_next(s.lambda_row(x)[y]) && in_next(s.rho_row(x)[y]))
        });
        if !invariant {
            return Err(WitnessViolation::NotInvariant { level: i });
        }
        // (5) the restricted image solution is a flip of prime size
        let mut image_set = images.clone();
        image_set.sort_unstable();
        image_set.dedup();
        if !is_prime(image_set.len()) {
            return Err(WitnessViolation::ImageNotPrimeFlip { level: i });
        }
        for &u in &image_set {
            for &v in &image_set {
                let (a, b) = stage.target.r(u, v);
                if a != v || b != u {
                    return Err(WitnessViolation::ImageNotPrimeFlip { level: i });
                }
            }
        }
    }
    Ok(())
}

/// Boolean wrapper around [`check_witness`].
pub fn verify_witness(s: &Solution, w: &SupersolubleWitness) -> bool {
    check_witness(s, w).is_ok()
}

/// For a supersoluble skew brace, produces the witness showing its
/// solution is supersoluble at 0: the chain of a prime-factor ideal
/// series, with the quotient solutions and canonical projections as
/// stages.
pub fn witness_from_supersoluble(a: &SkewBrace) -> Result<SupersolubleWitness, SolutionError> {
    let chain = prime_ideal_chain(a).ok_or(SolutionError::NotSupersoluble)?;
    let mut stages = Vec::new();
    for term in chain.iter().take(chain.len() - 1) {
        let ideal = IdealSet::from_sorted(term.clone());
        let (q, proj) = brace::quotient(a, &ideal).expect("chain terms are ideals");
        stages.push(WitnessStage {
            target: from_skew_brace(&q),
            map: SolutionMap::new(proj),
        });
    }
    Ok(SupersolubleWitness {
        base_point: 0,
        chain,
        stages,
    })
}

/// An ascending chain `{0} = I_0 ⊆ … ⊆ I_m = A` of ideals of `a` with
/// prime-order factors, or `None` when no such chain exists.
fn prime_ideal_chain(a: &SkewBrace) -> Option<Vec<Vec<usize>>> {
    if a.order() == 1 {
        return Some(vec![vec![0]]);
    }
    for ideal in brace::ideals(a) {
        if !is_prime(ideal.len()) {
            continue;
        }
        let (q, proj) = brace::quotient(a, &ideal).expect("ideals() returns ideals");
        if let Some(sub_chain) = prime_ideal_chain(&q) {
            let mut chain = vec![vec![0]];
            for term in sub_chain {
                let lifted: Vec<usize> = (0..a.order())
                    .filter(|&x| term.binary_search(&proj[x]).is_ok())
                    .collect();
                chain.push(lifted);
            }
            return Some(chain);
        }
    }
    None
}
