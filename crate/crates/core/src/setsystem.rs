//! Ground sets, set-systems, matroid validation, and the elementary
//! matroid operations computed directly from the definitions.
//!
//! A [`SetSystem`] is a ground-set size `n` together with a duplicate-free
//! family of subsets of `{0, …, n−1}` called the independent sets. A
//! [`Matroid`] is a set-system that has been checked against the three
//! axioms: the empty set is independent, independence is closed under
//! subsets, and the exchange axiom holds.
//!
//! Everything in this module is a direct semantic construction; the logic
//! layer never feeds back into it, so these operations double as oracles
//! for the formula library.

use crate::bits::{all_subsets, elements, full_mask, subsets_of, MAX_GROUND};
use serde::{Deserialize, Serialize};
use std::cell::OnceCell;
use std::collections::{HashMap, HashSet};
use std::fmt;
use thiserror::Error;

/// A subset of a ground set `{0, …, n−1}`, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub fn from_mask(mask: u64) -> Self {
        ElementSet(mask)
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        ElementSet(1u64 << i)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut m = 0u64;
        for i in iter {
            m |= 1u64 << i;
        }
        ElementSet(m)
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 & (1u64 << i) != 0
    }

    #[inline]
    pub fn card(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersect(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    #[inline]
    pub fn subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn disjoint_from(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn insert(self, i: usize) -> Self {
        ElementSet(self.0 | (1u64 << i))
    }

    #[inline]
    pub fn remove(self, i: usize) -> Self {
        ElementSet(self.0 & !(1u64 << i))
    }

    pub fn complement_in(self, n: usize) -> Self {
        ElementSet(!self.0 & full_mask(n))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Error)]
pub enum SetSystemError {
    #[error("ground set size {0} exceeds the supported maximum {MAX_GROUND}")]
    GroundTooLarge(usize),
    #[error("set {0} is not contained in the ground set of size {1}")]
    ElementOutOfRange(ElementSet, usize),
    #[error("independent family contains duplicates")]
    DuplicateSets,
    #[error("not a matroid: {0}")]
    NotAMatroid(String),
    #[error("contract set {0} is not independent")]
    DependentContract(ElementSet),
    #[error("contract and keep sets overlap on {0}")]
    OverlappingMinorArgs(ElementSet),
    #[error("{0} is not a circuit-hyperplane")]
    NotCircuitHyperplane(ElementSet),
    #[error("truncation rank {0} out of range 0..={1}")]
    RankOutOfRange(usize, usize),
    #[error("invalid set-system file: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// A ground-set size together with a duplicate-free family of subsets.
#[derive(Clone)]
pub struct SetSystem {
    n: usize,
    /// Sorted by mask; duplicate-free.
    sets: Vec<u64>,
    index: HashSet<u64>,
}

impl PartialEq for SetSystem {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.sets == other.sets
    }
}
impl Eq for SetSystem {}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetSystem(n={}, indep=[", self.n)?;
        for (k, &s) in self.sets.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", ElementSet(s))?;
        }
        write!(f, "])")
    }
}

impl SetSystem {
    pub fn new(n: usize, indep: Vec<ElementSet>) -> Result<Self, SetSystemError> {
        if n > MAX_GROUND {
            return Err(SetSystemError::GroundTooLarge(n));
        }
        let full = full_mask(n);
        let mut sets: Vec<u64> = Vec::with_capacity(indep.len());
        for s in &indep {
            if s.mask() & !full != 0 {
                return Err(SetSystemError::ElementOutOfRange(*s, n));
            }
            sets.push(s.mask());
        }
        sets.sort_unstable();
        let before = sets.len();
        sets.dedup();
        if sets.len() != before {
            return Err(SetSystemError::DuplicateSets);
        }
        let index = sets.iter().copied().collect();
        Ok(SetSystem { n, sets, index })
    }

    /// Downward closure of the given family (used when loading by bases).
    pub fn from_downward_closure(n: usize, gens: &[ElementSet]) -> Result<Self, SetSystemError> {
        if n > MAX_GROUND {
            return Err(SetSystemError::GroundTooLarge(n));
        }
        let full = full_mask(n);
        let mut index = HashSet::new();
        for g in gens {
            if g.mask() & !full != 0 {
                return Err(SetSystemError::ElementOutOfRange(*g, n));
            }
            for s in subsets_of(g.mask()) {
                index.insert(s);
            }
        }
        let mut sets: Vec<u64> = index.iter().copied().collect();
        sets.sort_unstable();
        Ok(SetSystem { n, sets, index })
    }

    #[inline]
    pub fn ground_size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn ground_set(&self) -> ElementSet {
        ElementSet(full_mask(self.n))
    }

    #[inline]
    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.index.contains(&s.mask())
    }

    pub fn indep_count(&self) -> usize {
        self.sets.len()
    }

    pub fn indep_sets(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.sets.iter().map(|&m| ElementSet(m))
    }

    /// Checks the three matroid axioms.
    pub fn is_matroid(&self) -> bool {
        self.matroid_violation().is_none()
    }

    /// First violated matroid axiom, if any.
    pub fn matroid_violation(&self) -> Option<String> {
        if !self.index.contains(&0) {
            return Some("the empty set is not independent".to_string());
        }
        for &s in &self.sets {
            let mut rest = s;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                if !self.index.contains(&(s & !bit)) {
                    return Some(format!(
                        "not downward closed: {} independent but {} is not",
                        ElementSet(s),
                        ElementSet(s & !bit)
                    ));
                }
                rest &= rest - 1;
            }
        }
        for &a in &self.sets {
            for &b in &self.sets {
                if (a.count_ones() as usize) < (b.count_ones() as usize) {
                    let mut found = false;
                    let mut cand = b & !a;
                    while cand != 0 {
                        let bit = cand & cand.wrapping_neg();
                        if self.index.contains(&(a | bit)) {
                            found = true;
                            break;
                        }
                        cand &= cand - 1;
                    }
                    if !found {
                        return Some(format!(
                            "exchange fails for {} and {}",
                            ElementSet(a),
                            ElementSet(b)
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn into_matroid(self) -> Result<Matroid, SetSystemError> {
        match self.matroid_violation() {
            None => Ok(Matroid {
                sys: self,
                rank_table: OnceCell::new(),
            }),
            Some(v) => Err(SetSystemError::NotAMatroid(v)),
        }
    }
}

/// A validated matroid. Dereferences to the underlying [`SetSystem`].
#[derive(Clone)]
pub struct Matroid {
    sys: SetSystem,
    rank_table: OnceCell<Vec<u8>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.sys == other.sys
    }
}
impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(n={}, bases=[", self.sys.n)?;
        for (k, b) in self.bases().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", b)?;
        }
        write!(f, "])")
    }
}

impl std::ops::Deref for Matroid {
    type Target = SetSystem;
    fn deref(&self) -> &SetSystem {
        &self.sys
    }
}

impl Matroid {
    pub fn new(n: usize, indep: Vec<ElementSet>) -> Result<Self, SetSystemError> {
        SetSystem::new(n, indep)?.into_matroid()
    }

    pub fn from_bases(n: usize, bases: &[ElementSet]) -> Result<Self, SetSystemError> {
        SetSystem::from_downward_closure(n, bases)?.into_matroid()
    }

    /// The uniform matroid U_{r,n}.
    pub fn uniform(r: usize, n: usize) -> Matroid {
        let indep = all_subsets(n)
            .filter(|m| (m.count_ones() as usize) <= r)
            .map(ElementSet)
            .collect();
        Matroid::new(n, indep).expect("uniform matroids are matroids")
    }

    pub fn as_set_system(&self) -> &SetSystem {
        &self.sys
    }

    fn ranks(&self) -> &Vec<u8> {
        self.rank_table.get_or_init(|| {
            let n = self.sys.n;
            let mut table = vec![0u8; 1 << n];
            for &s in &self.sys.sets {
                let c = s.count_ones() as u8;
                // every superset of an independent set has rank ≥ |s|
                if table[s as usize] < c {
                    table[s as usize] = c;
                }
            }
            // propagate maxima upward: r(S) = max over subsets
            for i in 0..n {
                let bit = 1usize << i;
                for m in 0..(1usize << n) {
                    if m & bit != 0 {
                        let lower = table[m & !bit];
                        if table[m] < lower {
                            table[m] = lower;
                        }
                    }
                }
            }
            table
        })
    }

    #[inline]
    pub fn rank_of(&self, s: ElementSet) -> usize {
        self.ranks()[s.mask() as usize] as usize
    }

    pub fn rank(&self) -> usize {
        self.rank_of(self.ground_set())
    }

    pub fn is_spanning(&self, s: ElementSet) -> bool {
        self.rank_of(s) == self.rank()
    }

    pub fn closure(&self, s: ElementSet) -> ElementSet {
        let r = self.rank_of(s);
        let mut out = s;
        for e in s.complement_in(self.n).iter() {
            if self.rank_of(s.insert(e)) == r {
                out = out.insert(e);
            }
        }
        out
    }

    pub fn bases(&self) -> Vec<ElementSet> {
        let r = self.rank();
        self.sys
            .indep_sets()
            .filter(|s| s.card() == r)
            .collect()
    }

    /// Minimal dependent sets.
    pub fn circuits(&self) -> Vec<ElementSet> {
        let mut out = Vec::new();
        for m in all_subsets(self.n) {
            let s = ElementSet(m);
            if !self.is_independent(s) {
                let minimal = s
                    .iter()
                    .all(|e| self.is_independent(s.remove(e)));
                if minimal {
                    out.push(s);
                }
            }
        }
        out
    }

    pub fn nonspanning_circuits(&self) -> Vec<ElementSet> {
        self.circuits()
            .into_iter()
            .filter(|c| !self.is_spanning(*c))
            .collect()
    }

    /// Sets closed under rank: adding any element increases the rank.
    pub fn flats(&self) -> Vec<ElementSet> {
        all_subsets(self.n)
            .map(ElementSet)
            .filter(|&s| self.closure(s) == s)
            .collect()
    }

    /// Maximal non-spanning sets (equivalently flats of rank r−1).
    pub fn hyperplanes(&self) -> Vec<ElementSet> {
        let r = self.rank();
        if r == 0 {
            return Vec::new();
        }
        all_subsets(self.n)
            .map(ElementSet)
            .filter(|&s| self.rank_of(s) == r - 1 && self.closure(s) == s)
            .collect()
    }

    pub fn cocircuits(&self) -> Vec<ElementSet> {
        self.hyperplanes()
            .into_iter()
            .map(|h| h.complement_in(self.n))
            .collect()
    }

    /// Nonempty sets not crossed by any circuit.
    pub fn separators(&self) -> Vec<ElementSet> {
        let circuits = self.circuits();
        all_subsets(self.n)
            .map(ElementSet)
            .filter(|&s| {
                !s.is_empty()
                    && circuits
                        .iter()
                        .all(|&c| c.subset_of(s) || c.disjoint_from(s))
            })
            .collect()
    }

    pub fn loops(&self) -> ElementSet {
        let mut m = 0u64;
        for e in 0..self.n {
            if !self.is_independent(ElementSet::singleton(e)) {
                m |= 1 << e;
            }
        }
        ElementSet(m)
    }

    pub fn coloops(&self) -> ElementSet {
        let bases = self.bases();
        let mut m = full_mask(self.n);
        for b in bases {
            m &= b.mask();
        }
        ElementSet(m)
    }

    /// An element is free when it is not a coloop and every circuit through
    /// it is spanning.
    pub fn is_free_element(&self, e: usize) -> bool {
        if self.coloops().contains(e) || !self.is_independent(ElementSet::singleton(e)) {
            return false;
        }
        self.circuits()
            .iter()
            .all(|c| !c.contains(e) || self.is_spanning(*c))
    }

    /// A circuit meeting no other non-spanning circuit.
    pub fn is_freely_placed_circuit(&self, c: ElementSet) -> bool {
        let circuits = self.circuits();
        if !circuits.contains(&c) {
            return false;
        }
        circuits
            .iter()
            .all(|&d| d == c || d.disjoint_from(c) || self.is_spanning(d))
    }

    /// Independent sets of the dual: sets disjoint from some basis.
    pub fn dual(&self) -> Matroid {
        let bases: Vec<ElementSet> = self
            .bases()
            .into_iter()
            .map(|b| b.complement_in(self.n))
            .collect();
        Matroid::from_bases(self.n, &bases).expect("dual of a matroid is a matroid")
    }

    /// `(M/contract)|keep`, re-indexed over `keep` in ascending order.
    pub fn minor(&self, contract: ElementSet, keep: ElementSet) -> Result<Matroid, SetSystemError> {
        if !self.is_independent(contract) {
            return Err(SetSystemError::DependentContract(contract));
        }
        if !contract.disjoint_from(keep) {
            return Err(SetSystemError::OverlappingMinorArgs(contract.intersect(keep)));
        }
        let keep_elems: Vec<usize> = keep.iter().collect();
        let k = keep_elems.len();
        let mut indep = Vec::new();
        for m in all_subsets(k) {
            let mut back = contract;
            for (j, &e) in keep_elems.iter().enumerate() {
                if m & (1 << j) != 0 {
                    back = back.insert(e);
                }
            }
            if self.is_independent(back) {
                indep.push(ElementSet(m));
            }
        }
        Matroid::new(k, indep)
    }

    pub fn restriction(&self, keep: ElementSet) -> Matroid {
        self.minor(ElementSet::EMPTY, keep)
            .expect("restriction preconditions are trivial")
    }

    pub fn delete(&self, remove: ElementSet) -> Matroid {
        self.restriction(remove.complement_in(self.n))
    }

    pub fn contract(&self, c: ElementSet) -> Result<Matroid, SetSystemError> {
        self.minor(c, c.complement_in(self.n))
    }

    /// Parallel classes of the non-loop elements, sorted by least element.
    pub fn parallel_classes(&self) -> Vec<ElementSet> {
        let loops = self.loops();
        let mut classes: Vec<ElementSet> = Vec::new();
        for e in 0..self.n {
            if loops.contains(e) {
                continue;
            }
            let mut placed = false;
            for class in classes.iter_mut() {
                let rep = class.iter().next().unwrap();
                let pair = ElementSet::singleton(e).insert(rep);
                if !self.is_independent(pair) {
                    *class = class.insert(e);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(ElementSet::singleton(e));
            }
        }
        classes
    }

    /// Canonical simplification: one element per parallel class, loops
    /// dropped. Returns the simplified matroid together with the classes.
    pub fn simplify(&self) -> (Matroid, Vec<ElementSet>) {
        let classes = self.parallel_classes();
        let k = classes.len();
        let mut indep = Vec::new();
        for m in all_subsets(k) {
            let mut reps = ElementSet::EMPTY;
            for (j, class) in classes.iter().enumerate() {
                if m & (1 << j) != 0 {
                    reps = reps.insert(class.iter().next().unwrap());
                }
            }
            if self.is_independent(reps) {
                indep.push(ElementSet(m));
            }
        }
        let simple = Matroid::new(k, indep).expect("simplification of a matroid is a matroid");
        (simple, classes)
    }

    /// Partition of the ground set into connected components: classes of
    /// the transitive closure of "lie on a common circuit".
    pub fn components(&self) -> Vec<ElementSet> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for c in self.circuits() {
            let mut it = c.iter();
            if let Some(first) = it.next() {
                for e in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, e));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: HashMap<usize, ElementSet> = HashMap::new();
        for e in 0..self.n {
            let r = find(&mut parent, e);
            let entry = groups.entry(r).or_insert(ElementSet::EMPTY);
            *entry = entry.insert(e);
        }
        let mut out: Vec<ElementSet> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Declares a circuit-hyperplane to be a basis.
    pub fn relax(&self, h: ElementSet) -> Result<Matroid, SetSystemError> {
        let is_circuit = !self.is_independent(h) && h.iter().all(|e| self.is_independent(h.remove(e)));
        let is_hyperplane = self.rank() >= 1
            && self.rank_of(h) == self.rank() - 1
            && self.closure(h) == h;
        if !is_circuit || !is_hyperplane {
            return Err(SetSystemError::NotCircuitHyperplane(h));
        }
        let mut bases = self.bases();
        bases.push(h);
        Matroid::from_bases(self.n, &bases)
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, SetSystemError> {
        let n = self.n + other.n;
        if n > MAX_GROUND {
            return Err(SetSystemError::GroundTooLarge(n));
        }
        let mut indep = Vec::with_capacity(self.indep_count() * other.indep_count());
        for a in self.indep_sets() {
            for b in other.indep_sets() {
                indep.push(ElementSet(a.mask() | (b.mask() << self.n)));
            }
        }
        Matroid::new(n, indep)
    }

    /// Truncation to rank `r`: independent sets of size at most `r`.
    pub fn truncate(&self, r: usize) -> Result<Matroid, SetSystemError> {
        if r > self.rank() {
            return Err(SetSystemError::RankOutOfRange(r, self.rank()));
        }
        let indep = self.indep_sets().filter(|s| s.card() <= r).collect();
        Matroid::new(self.n, indep)
    }
}

/// Per-element invariant used to prune isomorphism search: for each subset
/// size, how many independent sets of that size contain the element.
fn element_profiles(s: &SetSystem) -> Vec<Vec<u32>> {
    let mut prof = vec![vec![0u32; s.ground_size() + 1]; s.ground_size()];
    for set in s.indep_sets() {
        let c = set.card();
        for e in set.iter() {
            prof[e][c] += 1;
        }
    }
    prof
}

/// Searches for a relabeling of `{0, …, n−1}` carrying the independent sets
/// of `a` onto those of `b`; returns the witness permutation if one exists.
pub fn isomorphism(a: &SetSystem, b: &SetSystem) -> Option<Vec<usize>> {
    if a.ground_size() != b.ground_size() || a.indep_count() != b.indep_count() {
        return None;
    }
    let n = a.ground_size();
    let mut size_a = vec![0u32; n + 1];
    let mut size_b = vec![0u32; n + 1];
    for s in a.indep_sets() {
        size_a[s.card()] += 1;
    }
    for s in b.indep_sets() {
        size_b[s.card()] += 1;
    }
    if size_a != size_b {
        return None;
    }
    let pa = element_profiles(a);
    let pb = element_profiles(b);
    // candidate images by matching profiles
    let mut cands: Vec<Vec<usize>> = Vec::with_capacity(n);
    for e in 0..n {
        let c: Vec<usize> = (0..n).filter(|&f| pa[e] == pb[f]).collect();
        if c.is_empty() {
            return None;
        }
        cands.push(c);
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn apply(perm: &[usize], mask: u64) -> u64 {
        let mut out = 0u64;
        for e in elements(mask) {
            out |= 1u64 << perm[e];
        }
        out
    }

    fn search(
        e: usize,
        n: usize,
        a: &SetSystem,
        b: &SetSystem,
        cands: &[Vec<usize>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if e == n {
            return a.indep_sets().all(|s| {
                b.is_independent(ElementSet::from_mask(apply(perm, s.mask())))
            });
        }
        'next: for &f in &cands[e] {
            if used[f] {
                continue;
            }
            perm[e] = f;
            used[f] = true;
            // partial consistency: sets fully mapped so far must agree
            let placed: u64 = (1u64 << (e + 1)) - 1;
            for s in a.indep_sets() {
                if s.mask() & !placed == 0 {
                    let img = apply(perm, s.mask());
                    if !b.is_independent(ElementSet::from_mask(img)) {
                        perm[e] = usize::MAX;
                        used[f] = false;
                        continue 'next;
                    }
                }
            }
            if search(e + 1, n, a, b, cands, perm, used) {
                return true;
            }
            perm[e] = usize::MAX;
            used[f] = false;
        }
        false
    }

    if search(0, n, a, b, &cands, &mut perm, &mut used) {
        Some(perm)
    } else {
        None
    }
}

pub fn is_isomorphic(a: &SetSystem, b: &SetSystem) -> bool {
    isomorphism(a, b).is_some()
}

// ---------------------------------------------------------------------------
// setsystem-v1 JSON format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SetSystemFile {
    format: String,
    elements: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    independent: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bases: Option<Vec<Vec<usize>>>,
}

fn sets_to_lists(sets: &[ElementSet]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.to_vec()).collect()
}

fn list_to_set(list: &[usize], n: usize) -> Result<ElementSet, SetSystemError> {
    let mut prev: Option<usize> = None;
    let mut out = ElementSet::EMPTY;
    for &i in list {
        if i >= n {
            return Err(SetSystemError::Format(format!(
                "index {} out of range for {} elements",
                i, n
            )));
        }
        if let Some(p) = prev {
            if i <= p {
                return Err(SetSystemError::Format(
                    "indices must be strictly ascending within each set".to_string(),
                ));
            }
        }
        prev = Some(i);
        out = out.insert(i);
    }
    Ok(out)
}

impl SetSystem {
    /// Serializes in the `setsystem-v1` format with the `independent` key.
    pub fn to_json(&self) -> String {
        let file = SetSystemFile {
            format: "setsystem-v1".to_string(),
            elements: self.n,
            independent: Some(sets_to_lists(
                &self.indep_sets().collect::<Vec<_>>(),
            )),
            bases: None,
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<SetSystem, SetSystemError> {
        let file: SetSystemFile = serde_json::from_str(text)?;
        if file.format != "setsystem-v1" {
            return Err(SetSystemError::Format(format!(
                "unknown format {:?}",
                file.format
            )));
        }
        match (&file.independent, &file.bases) {
            (Some(_), Some(_)) => Err(SetSystemError::Format(
                "\"independent\" and \"bases\" are mutually exclusive".to_string(),
            )),
            (Some(lists), None) => {
                let sets = lists
                    .iter()
                    .map(|l| list_to_set(l, file.elements))
                    .collect::<Result<Vec<_>, _>>()?;
                SetSystem::new(file.elements, sets)
            }
            (None, Some(lists)) => {
                let gens = lists
                    .iter()
                    .map(|l| list_to_set(l, file.elements))
                    .collect::<Result<Vec<_>, _>>()?;
                SetSystem::from_downward_closure(file.elements, &gens)
            }
            (None, None) => Err(SetSystemError::Format(
                "one of \"independent\" or \"bases\" is required".to_string(),
            )),
        }
    }
}

impl Matroid {
    /// Serializes by bases (compact; downward closure is recomputed on load).
    pub fn to_json_bases(&self) -> String {
        let file = SetSystemFile {
            format: "setsystem-v1".to_string(),
            elements: self.n,
            independent: None,
            bases: Some(sets_to_lists(&self.bases())),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(elems: &[usize]) -> ElementSet {
        ElementSet::from_elements(elems.iter().copied())
    }

    /// Truncation to rank n of the direct sum of two n-element circuits.
    fn pn(n: usize) -> Matroid {
        let c = Matroid::uniform(n - 1, n);
        c.direct_sum(&c).unwrap().truncate(n).unwrap()
    }

    #[test]
    fn matroid_axioms() {
        // U_{1,2}
        let u12 = SetSystem::new(2, vec![es(&[]), es(&[0]), es(&[1])]).unwrap();
        assert!(u12.is_matroid());
        // not downward closed
        let bad = SetSystem::new(2, vec![es(&[]), es(&[0, 1])]).unwrap();
        assert!(!bad.is_matroid());
        // exchange fails for {0} vs {1,2}: direct axiom check
        let ex = SetSystem::new(3, vec![es(&[]), es(&[0]), es(&[1]), es(&[2]), es(&[1, 2])])
            .unwrap();
        assert!(!ex.is_matroid());
        assert!(ex.matroid_violation().unwrap().contains("exchange"));
    }

    #[test]
    fn dual_examples() {
        let u13 = Matroid::uniform(1, 3);
        assert_eq!(u13.dual(), Matroid::uniform(2, 3));
        // P_3 is self-dual
        let p3 = pn(3);
        assert!(is_isomorphic(&p3, &p3.dual()));
        // single loop dualizes to a coloop
        let loop1 = Matroid::new(1, vec![es(&[])]).unwrap();
        let coloop1 = Matroid::new(1, vec![es(&[]), es(&[0])]).unwrap();
        assert_eq!(loop1.dual(), coloop1);
        assert_eq!(coloop1.dual(), loop1);
    }

    #[test]
    fn dual_is_involutive_on_small_uniforms() {
        for n in 0..=5 {
            for r in 0..=n {
                let m = Matroid::uniform(r, n);
                assert_eq!(m.dual().dual(), m);
            }
        }
    }

    #[test]
    fn minor_examples() {
        let u24 = Matroid::uniform(2, 4);
        let got = u24.minor(es(&[0]), es(&[1, 2, 3])).unwrap();
        assert_eq!(got, Matroid::uniform(1, 3));

        let m = pn(3);
        assert_eq!(m.minor(ElementSet::EMPTY, m.ground_set()).unwrap(), m);

        // restricting P_3 to one circuit-hyperplane gives U_{2,3}: check by
        // brute-force restriction of the independent sets
        let h = es(&[0, 1, 2]);
        let restricted = m.minor(ElementSet::EMPTY, h).unwrap();
        let expect: Vec<ElementSet> = m
            .indep_sets()
            .filter(|s| s.subset_of(h))
            .collect();
        let direct = Matroid::new(3, expect).unwrap();
        assert_eq!(restricted, direct);
        assert_eq!(restricted, Matroid::uniform(2, 3));

        assert!(m.minor(es(&[0, 1, 2]), es(&[3])).is_err()); // dependent contract
        assert!(m.minor(es(&[0]), es(&[0, 1])).is_err()); // overlap
    }

    #[test]
    fn simplify_examples() {
        let u13 = Matroid::uniform(1, 3);
        let (s, classes) = u13.simplify();
        assert_eq!(s, Matroid::uniform(1, 1));
        assert_eq!(classes, vec![es(&[0, 1, 2])]);

        let u23 = Matroid::uniform(2, 3);
        let (s, classes) = u23.simplify();
        assert_eq!(s, u23);
        assert_eq!(classes.len(), 3);

        // U_{1,2} ⊕ U_{1,2} with a loop appended: classes found by scanning
        // maximal parallel sets, loop dropped
        let p2 = pn(2);
        let with_loop = {
            let mut indep: Vec<ElementSet> = p2.indep_sets().collect();
            // add element 4 as a loop: independence unchanged
            Matroid::new(5, indep.drain(..).collect()).unwrap()
        };
        let (s, classes) = with_loop.simplify();
        assert_eq!(classes, vec![es(&[0, 1]), es(&[2, 3])]);
        assert_eq!(s, Matroid::uniform(2, 2));
        // no output circuits of size ≤ 2
        assert!(s.circuits().iter().all(|c| c.card() > 2));
    }

    #[test]
    fn components_examples() {
        let m = Matroid::uniform(1, 2)
            .direct_sum(&Matroid::uniform(1, 1))
            .unwrap();
        assert_eq!(m.components(), vec![es(&[0, 1]), es(&[2])]);
        let u23 = Matroid::uniform(2, 3);
        assert_eq!(u23.components(), vec![es(&[0, 1, 2])]);
        let p2 = pn(2);
        assert_eq!(p2.components(), vec![es(&[0, 1]), es(&[2, 3])]);
    }

    #[test]
    fn relax_examples() {
        let p2 = pn(2);
        assert_eq!(p2.bases().len(), 4);
        let relaxed = p2.relax(es(&[0, 1])).unwrap();
        assert_eq!(relaxed.bases().len(), 5);
        assert!(relaxed.is_matroid());
        // a spanning circuit is not a hyperplane
        let u23 = Matroid::uniform(2, 3);
        assert!(u23.relax(es(&[0, 1, 2])).is_err());
    }

    #[test]
    fn direct_sum_and_truncate() {
        let u12 = Matroid::uniform(1, 2);
        let p2 = u12.direct_sum(&u12).unwrap();
        assert_eq!(p2, pn(2));
        let empty = Matroid::new(0, vec![ElementSet::EMPTY]).unwrap();
        let m = Matroid::uniform(2, 3);
        assert_eq!(m.direct_sum(&empty).unwrap(), m);
        assert_eq!(
            Matroid::uniform(1, 3)
                .direct_sum(&Matroid::uniform(2, 3))
                .unwrap()
                .rank(),
            3
        );
        assert_eq!(Matroid::uniform(2, 3).truncate(1).unwrap(), Matroid::uniform(1, 3));
        assert_eq!(m.truncate(m.rank()).unwrap(), m);
        assert!(m.truncate(3).is_err());
    }

    #[test]
    fn derived_families() {
        let u23 = Matroid::uniform(2, 3);
        assert_eq!(u23.circuits(), vec![es(&[0, 1, 2])]);
        let u12 = Matroid::uniform(1, 2);
        assert_eq!(u12.hyperplanes(), vec![ElementSet::EMPTY]);
        let p2 = pn(2);
        assert_eq!(p2.circuits(), vec![es(&[0, 1]), es(&[2, 3])]);
        assert_eq!(
            p2.separators(),
            vec![es(&[0, 1]), es(&[2, 3]), es(&[0, 1, 2, 3])]
        );
    }

    #[test]
    fn isomorphism_examples() {
        let u12 = Matroid::uniform(1, 2);
        assert!(is_isomorphic(&u12, &u12));
        assert!(!is_isomorphic(&u12, &Matroid::uniform(2, 2)));
        // P_2 relabeled under the swap (0 2)(1 3)
        let p2 = pn(2);
        let relabeled = Matroid::new(
            4,
            p2.indep_sets()
                .map(|s| {
                    ElementSet::from_elements(s.iter().map(|e| match e {
                        0 => 2,
                        1 => 3,
                        2 => 0,
                        3 => 1,
                        _ => unreachable!(),
                    }))
                })
                .collect(),
        )
        .unwrap();
        let perm = isomorphism(&p2, &relabeled).unwrap();
        assert_eq!(perm.len(), 4);
        assert!(is_isomorphic(&p2, &relabeled));
    }

    #[test]
    fn components_reassemble() {
        for m in [
            pn(2),
            pn(3),
            Matroid::uniform(2, 4),
            Matroid::uniform(1, 2)
                .direct_sum(&Matroid::uniform(2, 3))
                .unwrap(),
        ] {
            let comps = m.components();
            let mut union = ElementSet::EMPTY;
            for c in &comps {
                assert!(!c.is_empty());
                assert!(union.disjoint_from(*c));
                union = union.union(*c);
            }
            assert_eq!(union, m.ground_set());
            let mut rebuilt = Matroid::new(0, vec![ElementSet::EMPTY]).unwrap();
            for c in &comps {
                rebuilt = rebuilt.direct_sum(&m.restriction(*c)).unwrap();
            }
            assert!(is_isomorphic(&rebuilt, &m));
        }
    }

    #[test]
    fn exhaustive_minors_are_matroids() {
        for m in [pn(2), Matroid::uniform(2, 5), Matroid::uniform(3, 5)] {
            for c in all_subsets(m.ground_size()).map(ElementSet) {
                if !m.is_independent(c) {
                    continue;
                }
                for k in all_subsets(m.ground_size()).map(ElementSet) {
                    if !c.disjoint_from(k) {
                        continue;
                    }
                    let minor = m.minor(c, k).unwrap();
                    assert!(minor.as_set_system().is_matroid());
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let p2 = pn(2);
        let text = p2.as_set_system().to_json();
        let back = SetSystem::from_json(&text).unwrap();
        assert_eq!(&back, p2.as_set_system());

        let by_bases = p2.to_json_bases();
        let back = SetSystem::from_json(&by_bases).unwrap();
        assert_eq!(&back, p2.as_set_system());

        assert!(SetSystem::from_json("{\"format\":\"setsystem-v1\",\"elements\":2}").is_err());
        assert!(SetSystem::from_json(
            "{\"format\":\"setsystem-v1\",\"elements\":2,\"independent\":[[1,0]]}"
        )
        .is_err());
        // empty set must be written as []
        let with_empty =
            SetSystem::from_json("{\"format\":\"setsystem-v1\",\"elements\":1,\"independent\":[[]]}")
                .unwrap();
        assert!(with_empty.is_independent(ElementSet::EMPTY));
    }
}
