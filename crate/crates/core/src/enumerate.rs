//! Exhaustive enumeration of the skew braces of a given small order up
//! to isomorphism.
//!
//! Engine: the skew brace structures with additive group `(A,+)`
//! correspond to the regular subgroups of `Hol(A,+)`; those are found
//! by a canonical-path DFS over generator closures, pruning on order
//! divisibility and on fixed points (every non-identity element of a
//! regular subgroup is fixed-point-free). A brute-force λ-table oracle
//! covers orders up to 6 as an independent cross-check.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brace::{self, has_property, PropertyKind, SkewBrace};
use crate::catalog::groups_of_order;
use crate::group::{automorphisms, holomorph, FiniteGroup, GroupError, Holomorph, SubgroupSet};
use crate::perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("order {n} is above the supported bound {bound}")]
    OrderTooLarge { n: usize, bound: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("constructed circle table failed validation: {0}")]
    Brace(#[from] brace::BraceError),
}

/// Hard cap for the holomorph search (the group catalog ends here).
pub const HOLOMORPH_BOUND: usize = 15;
/// Default bound for full enumeration.
pub const ENUMERATION_BOUND: usize = 12;
/// Bound for the brute-force oracle.
pub const ORACLE_BOUND: usize = 6;

/// All subgroups of `Hol(G)` of order `|G|` acting regularly on the
/// carrier, sorted by element list.
pub fn regular_subgroups(g_add: &FiniteGroup) -> Result<Vec<SubgroupSet>, EnumError> {
    let n = g_add.order();
    if n > HOLOMORPH_BOUND {
        return Err(EnumError::OrderTooLarge {
            n,
            bound: HOLOMORPH_BOUND,
        });
    }
    let hol = holomorph(g_add);
    Ok(regular_subgroups_of(&hol, g_add))
}

/// The search itself, reusable when the holomorph is already at hand.
pub fn regular_subgroups_of(hol: &Holomorph, carrier: &FiniteGroup) -> Vec<SubgroupSet> {
    let n = hol.carrier_order;
    if n == 1 {
        return vec![SubgroupSet::from_sorted(vec![0])];
    }
    let m = hol.group.order();
    // fixed-point-free elements; a regular subgroup consists of these
    // (plus the identity), and element orders divide the subgroup order
    let fpf: Vec<bool> = (0..m)
        .map(|e| e != 0 && (0..n).all(|x| hol.act(e, x, carrier) != x))
        .collect();
    let candidates: Vec<usize> = (1..m)
        .filter(|&e| fpf[e] && n % hol.group.elem_order(e) == 0)
        .collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![0], 0)];
    while let Some((s, last)) = stack.pop() {
        for &gen in candidates.iter().filter(|&&g| g > last) {
            if s.binary_search(&gen).is_ok() {
                continue;
            }
            let Some(h) = closure_within(hol, &s, gen, n, &fpf) else {
                continue;
            };
            // canonical path: gen must be the smallest new element
            let min_new = h
                .iter()
                .find(|x| s.binary_search(x).is_err())
                .copied()
                .unwrap();
            if min_new != gen {
                continue;
            }
            if h.len() == n {
                found.push(h);
            } else {
                stack.push((h, gen));
            }
        }
    }
    found.sort();
    found.into_iter().map(SubgroupSet::from_sorted).collect()
}

/// Closure of `s ∪ {gen}` inside the holomorph, abandoned as soon as it
/// outgrows the target order, stops dividing it, or picks up an element
/// with a fixed point.
fn closure_within(
    hol: &Holomorph,
    s: &[usize],
    gen: usize,
    target: usize,
    fpf: &[bool],
) -> Option<Vec<usize>> {
    let mut elems: Vec<usize> = s.to_vec();
    elems.push(gen);
    let mut frontier = vec![gen];
    let mut member = vec![false; hol.group.order()];
    for &e in &elems {
        member[e] = true;
    }
    while let Some(x) = frontier.pop() {
        for i in 0..elems.len() {
            let e = elems[i];
            for p in [hol.group.mul(e, x), hol.group.mul(x, e)] {
                if !member[p] {
                    if p != 0 && !fpf[p] {
                        return None;
                    }
                    member[p] = true;
                    elems.push(p);
                    if elems.len() > target {
                        return None;
                    }
                    frontier.push(p);
                }
            }
        }
    }
    if target % elems.len() != 0 {
        return None;
    }
    elems.sort_unstable();
    Some(elems)
}

/// One skew brace per regular subgroup of `Hol(G)`: the circle product
/// transports the subgroup structure to the carrier through the regular
/// action (`a∘b` is the image of `b` under the element sending 0 to `a`).
pub fn skew_braces_on(g_add: &FiniteGroup) -> Result<Vec<SkewBrace>, EnumError> {
    let n = g_add.order();
    if n > HOLOMORPH_BOUND {
        return Err(EnumError::OrderTooLarge {
            n,
            bound: HOLOMORPH_BOUND,
        });
    }
    let hol = holomorph(g_add);
    let regs = regular_subgroups_of(&hol, g_add);
    let mut braces = Vec::with_capacity(regs.len());
    for r in &regs {
        let mut circle = vec![vec![usize::MAX; n]; n];
        for &e in r.members() {
            let (a, _) = hol.decode(e);
            debug_assert_eq!(
                circle[a][0],
                usize::MAX,
                "regular action: one element per point"
            );
            for b in 0..n {
                circle[a][b] = hol.act(e, b, g_add);
            }
        }
        let circle_group = FiniteGroup::from_table(&circle)?;
        braces.push(SkewBrace::from_groups(g_add.clone(), circle_group)?);
    }
    Ok(braces)
}

/// The 15 property verdicts of one brace, in [`PropertyKind::ALL`]
/// order. Serialized as a `name: bool` map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVector(Vec<bool>);

impl Serialize for PropertyVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (name, value) in self.named() {
            map.serialize_entry(name, &value)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for PropertyVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: std::collections::BTreeMap<String, bool> = Deserialize::deserialize(d)?;
        let values = PropertyKind::ALL
            .iter()
            .map(|k| {
                raw.get(k.name())
                    .copied()
                    .ok_or_else(|| D::Error::custom(format!("missing property {}", k.name())))
            })
            .collect::<Result<Vec<bool>, _>>()?;
        Ok(PropertyVector(values))
    }
}

impl PropertyVector {
    pub fn compute(b: &SkewBrace) -> Self {
        PropertyVector(
            PropertyKind::ALL
                .iter()
                .map(|&k| has_property(b, k))
                .collect(),
        )
    }

    pub fn get(&self, kind: PropertyKind) -> bool {
        let idx = PropertyKind::ALL.iter().position(|&k| k == kind).unwrap();
        self.0[idx]
    }

    pub fn named(&self) -> Vec<(&'static str, bool)> {
        PropertyKind::ALL
            .iter()
            .zip(&self.0)
            .map(|(k, &v)| (k.name(), v))
            .collect()
    }
}

/// One isomorphism class in an enumeration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BraceClass {
    /// Index of the additive group in `groups_of_order(n)`.
    pub add_group_index: usize,
    pub brace: SkewBrace,
    pub properties: PropertyVector,
}

/// All skew braces of one order up to isomorphism, with counts.
/// Serialization carries the counts explicitly; loading re-checks them
/// against the class list.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub order: usize,
    pub classes: Vec<BraceClass>,
}

#[derive(Serialize, Deserialize)]
struct RawEnumeration {
    order: usize,
    total: usize,
    brace_count: usize,
    non_brace_count: usize,
    classes: Vec<BraceClass>,
}

impl Serialize for EnumerationResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawEnumeration {
            order: self.order,
            total: self.total(),
            brace_count: self.brace_count(),
            non_brace_count: self.non_brace_count(),
            classes: self.classes.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EnumerationResult {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawEnumeration::deserialize(d)?;
        let result = EnumerationResult {
            order: raw.order,
            classes: raw.classes,
        };
        if raw.total != result.total()
            || raw.brace_count != result.brace_count()
            || raw.non_brace_count != result.non_brace_count()
        {
            return Err(D::Error::custom("counts do not match the class list"));
        }
        Ok(result)
    }
}

impl EnumerationResult {
    pub fn total(&self) -> usize {
        self.classes.len()
    }

    /// Classes whose additive group is abelian.
    pub fn brace_count(&self) -> usize {
        self.classes
            .iter()
            .filter(|c| c.properties.get(PropertyKind::IsBrace))
            .count()
    }

    pub fn non_brace_count(&self) -> usize {
        self.total() - self.brace_count()
    }

    /// Property vectors as a sorted multiset, for cross-checks.
    pub fn property_multiset(&self) -> Vec<Vec<bool>> {
        let mut v: Vec<Vec<bool>> = self
            .classes
            .iter()
            .map(|c| c.properties.0.clone())
            .collect();
        v.sort();
        v
    }
}

/// Classifies arbitrary candidates up to isomorphism with the
/// backtracking test (invariant-vector bucketing happens inside
/// [`brace::isomorphic`]). Order-insensitive up to which representative
/// survives per class.
pub fn classify_up_to_iso(candidates: Vec<SkewBrace>) -> Vec<SkewBrace> {
    let mut reps: Vec<SkewBrace> = Vec::new();
    for cand in candidates {
        if !reps.iter().any(|r| brace::isomorphic(r, &cand)) {
            reps.push(cand);
        }
    }
    reps
}

/// Classifies candidate braces (all sharing one additive table) up to
/// isomorphism. Buckets by invariant vector; within a bucket,
/// isomorphism over a shared additive table is exactly relabeling by an
/// additive automorphism.
fn classify_same_additive(candidates: Vec<SkewBrace>, auts: &[Vec<usize>]) -> Vec<SkewBrace> {
    let mut reps: Vec<(Vec<usize>, SkewBrace)> = Vec::new();
    'next: for cand in candidates {
        let inv = brace::invariant_vector(&cand);
        for (rinv, rep) in &reps {
            if *rinv == inv && same_additive_isomorphic(rep, &cand, auts) {
                continue 'next;
            }
        }
        reps.push((inv, cand));
    }
    reps.into_iter().map(|(_, b)| b).collect()
}

fn same_additive_isomorphic(a: &SkewBrace, b: &SkewBrace, auts: &[Vec<usize>]) -> bool {
    let n = a.order();
    auts.iter().any(|f| {
        (0..n).all(|x| (0..n).all(|y| f[a.circle().mul(x, y)] == b.circle().mul(f[x], f[y])))
    })
}

fn assemble(order: usize, per_group: Vec<Vec<SkewBrace>>) -> EnumerationResult {
    let mut classes = Vec::new();
    for (gi, braces) in per_group.into_iter().enumerate() {
        let mut sorted = braces;
        sorted.sort_by(|a, b| a.circle().rows().cmp(&b.circle().rows()));
        for brace in sorted {
            let properties = PropertyVector::compute(&brace);
            classes.push(BraceClass {
                add_group_index: gi,
                brace,
                properties,
            });
        }
    }
    EnumerationResult { order, classes }
}

/// Every skew brace of order `n` up to isomorphism, with property
/// vectors, via the holomorph engine.
pub fn enumerate_order(n: usize) -> Result<EnumerationResult, EnumError> {
    if n > ENUMERATION_BOUND {
        return Err(EnumError::OrderTooLarge {
            n,
            bound: ENUMERATION_BOUND,
        });
    }
    let groups = groups_of_order(n)?;
    let mut per_group = Vec::new();
    for g in &groups {
        let braces = skew_braces_on(g)?;
        let auts: Vec<Vec<usize>> = automorphisms(g)
            .into_iter()
            .map(|h| h.image().to_vec())
            .collect();
        per_group.push(classify_same_additive(braces, &auts));
    }
    Ok(assemble(n, per_group))
}

/// Brute-force oracle for `n ≤ 6`: enumerates circle tables compatible
/// with each additive group directly. Skew left distributivity forces
/// each row to be `b ↦ a + σ_a(b)` for an additive automorphism `σ_a`,
/// so all such tables are generated and filtered by the group axioms.
/// Shares no code with the holomorph engine.
pub fn direct_oracle(n: usize) -> Result<EnumerationResult, EnumError> {
    if n > ORACLE_BOUND {
        return Err(EnumError::OrderTooLarge {
            n,
            bound: ORACLE_BOUND,
        });
    }
    let groups = groups_of_order(n)?;
    let mut per_group = Vec::new();
    for g in &groups {
        let auts: Vec<Vec<usize>> = automorphisms(g)
            .into_iter()
            .map(|h| h.image().to_vec())
            .collect();
        let k = auts.len();
        let id_index = auts.iter().position(|a| *a == perm::identity(n)).unwrap();
        let mut braces = Vec::new();
        // one automorphism index per non-identity element; σ_0 = id
        let mut assignment = vec![0usize; n];
        loop {
            assignment[0] = id_index;
            let mut rows = vec![vec![0usize; n]; n];
            for a in 0..n {
                for b in 0..n {
                    rows[a][b] = g.mul(a, auts[assignment[a]][b]);
                }
            }
            if let Ok(circle) = FiniteGroup::from_table(&rows) {
                let brace = SkewBrace::from_groups(g.clone(), circle)
                    .expect("distributivity holds by construction");
                braces.push(brace);
            }
            // odometer over the n−1 free positions
            let mut pos = 1;
            loop {
                if pos == n {
                    break;
                }
                assignment[pos] += 1;
                if assignment[pos] < k {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
        per_group.push(classify_same_additive(braces, &auts));
    }
    Ok(assemble(n, per_group))
}
