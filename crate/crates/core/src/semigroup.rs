//! Affine semigroups in `N^r`.
//!
//! An [`AffineSemigroup`] is built from a minimal generating set and caches its
//! extremal rays. Membership is decided by a memoized depth-first search over
//! residual vectors; the memo table is shared between threads.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::{in_rational_cone, rank_integer};
use crate::Caps;

/// Lattice vector. Entries are bounded at construction so sums of a few
/// thousand generators cannot overflow.
pub type IntVec = Vec<i64>;

const ENTRY_BOUND: i64 = 1 << 31;

/// JSON form: `{"ambient_dim": r, "generators": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupDoc {
    pub ambient_dim: usize,
    pub generators: Vec<IntVec>,
}

#[derive(Debug)]
pub struct AffineSemigroup {
    dim: usize,
    gens: Vec<IntVec>,
    extremal: Vec<usize>,
    search_order: Vec<usize>,
    memo: RwLock<HashMap<IntVec, bool>>,
}

impl Clone for AffineSemigroup {
    fn clone(&self) -> Self {
        AffineSemigroup {
            dim: self.dim,
            gens: self.gens.clone(),
            extremal: self.extremal.clone(),
            search_order: self.search_order.clone(),
            memo: RwLock::new(self.memo.read().expect("memo lock").clone()),
        }
    }
}

impl PartialEq for AffineSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.gens == other.gens
    }
}

/// Apéry set with respect to a set of generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AperySet {
    /// Sorted lexicographically.
    pub elements: Vec<IntVec>,
    pub with_respect_to: Vec<usize>,
    /// Set when the elements come from a closed-form evaluator rather than
    /// from enumeration.
    #[serde(default)]
    pub closed_form: bool,
}

impl AperySet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(v)).is_ok()
    }

    pub fn as_set(&self) -> BTreeSet<IntVec> {
        self.elements.iter().cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QFReport {
    /// Sorted lexicographically; entries may be negative.
    pub qf_elements: Vec<IntVec>,
    pub type_count: usize,
}

fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

fn sub(a: &[i64], b: &[i64]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn proportional(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

impl AffineSemigroup {
    /// Validates the generating set (non-empty, equal lengths, non-negative,
    /// non-zero, minimal) and computes the extremal rays.
    pub fn new(gens: Vec<IntVec>) -> Result<Self> {
        let s = Self::unchecked(gens)?;
        for i in 0..s.gens.len() {
            let others: Vec<IntVec> = s
                .gens
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            if others.is_empty() {
                break;
            }
            let rest = Self::unchecked(others)?;
            if rest.contains(&s.gens[i]) {
                return Err(Error::NotMinimal {
                    index: i,
                    vector: s.gens[i].clone(),
                });
            }
        }
        Ok(s)
    }

    /// Semigroup generated by a possibly non-minimal list. Shape checks
    /// (non-empty, equal lengths, non-negative, non-zero) still apply.
    pub fn generated_by(gens: Vec<IntVec>) -> Result<Self> {
        Self::unchecked(gens)
    }

    /// Shape checks only; no minimality test.
    fn unchecked(gens: Vec<IntVec>) -> Result<Self> {
        let first = gens.first().ok_or(Error::Empty)?;
        let dim = first.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for (i, g) in gens.iter().enumerate() {
            if g.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.len() });
            }
            if g.iter().any(|&x| x < 0) {
                return Err(Error::NegativeEntry { index: i });
            }
            if g.iter().any(|&x| x >= ENTRY_BOUND) {
                return Err(Error::Overflow);
            }
            if is_zero(g) {
                return Err(Error::ZeroGenerator { index: i });
            }
        }
        let mut search_order: Vec<usize> = (0..gens.len()).collect();
        search_order.sort_by_key(|&i| (std::cmp::Reverse(gens[i].iter().sum::<i64>()), i));
        let mut s = AffineSemigroup {
            dim,
            gens,
            extremal: Vec::new(),
            search_order,
            memo: RwLock::new(HashMap::new()),
        };
        s.extremal = s.compute_extremal_rays();
        Ok(s)
    }

    pub fn from_doc(doc: &SemigroupDoc) -> Result<Self> {
        let s = Self::new(doc.generators.clone())?;
        if s.dim != doc.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: doc.ambient_dim,
                found: s.dim,
            });
        }
        Ok(s)
    }

    pub fn to_doc(&self) -> SemigroupDoc {
        SemigroupDoc {
            ambient_dim: self.dim,
            generators: self.gens.clone(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVec] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    /// Dimension of the rational span of the generators.
    pub fn dimension(&self) -> usize {
        rank_integer(&self.gens)
    }

    /// Indices of the extremal-ray generators, ascending.
    pub fn extremal_rays(&self) -> &[usize] {
        &self.extremal
    }

    pub fn non_extremal(&self) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|i| !self.extremal.contains(i))
            .collect()
    }

    fn compute_extremal_rays(&self) -> Vec<usize> {
        // Group generators lying on a common ray; a ray is extreme when its
        // direction is outside the rational cone of every other generator.
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.gens.len() {
            match classes
                .iter_mut()
                .find(|c| proportional(&self.gens[c[0]], &self.gens[i]))
            {
                Some(c) => c.push(i),
                None => classes.push(vec![i]),
            }
        }
        let mut out = Vec::new();
        for class in &classes {
            let others: Vec<IntVec> = (0..self.gens.len())
                .filter(|j| !class.contains(j))
                .map(|j| self.gens[j].clone())
                .collect();
            if !in_rational_cone(&others, &self.gens[class[0]]) {
                let smallest = *class
                    .iter()
                    .min_by_key(|&&i| (self.gens[i].iter().sum::<i64>(), i))
                    .expect("non-empty class");
                out.push(smallest);
            }
        }
        out.sort_unstable();
        out
    }

    /// Extremal rays span the rational span of all generators, are linearly
    /// independent, and their cone holds every generator.
    pub fn is_simplicial(&self) -> bool {
        let ext: Vec<IntVec> = self.extremal.iter().map(|&i| self.gens[i].clone()).collect();
        if ext.is_empty() {
            return false;
        }
        let r = rank_integer(&ext);
        if r != ext.len() || r != self.dimension() {
            return false;
        }
        self.gens.iter().all(|g| in_rational_cone(&ext, g))
    }

    /// Membership in the semigroup. Vectors with negative entries are never
    /// members.
    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        if is_zero(v) {
            return true;
        }
        if v.iter().any(|&x| x < 0) {
            return false;
        }
        if let Some(&hit) = self.memo.read().expect("memo lock").get(v) {
            return hit;
        }
        let mut local = HashMap::new();
        let result = self.search(v.to_vec(), &mut local);
        self.memo.write().expect("memo lock").extend(local);
        result
    }

    fn search(&self, v: IntVec, local: &mut HashMap<IntVec, bool>) -> bool {
        if is_zero(&v) {
            return true;
        }
        if let Some(&hit) = local.get(&v) {
            return hit;
        }
        if let Some(&hit) = self.memo.read().expect("memo lock").get(&v) {
            return hit;
        }
        let mut found = false;
        for &g in &self.search_order {
            let gen = &self.gens[g];
            if v.iter().zip(gen).all(|(a, b)| a >= b) && self.search(sub(&v, gen), local) {
                found = true;
                break;
            }
        }
        local.insert(v, found);
        found
    }

    /// A factorization `v = sum lambda_i a_i`, if `v` is a member.
    pub fn witness(&self, v: &[i64]) -> Option<Vec<u64>> {
        if !self.contains(v) {
            return None;
        }
        let mut lambda = vec![0u64; self.gens.len()];
        let mut rest = v.to_vec();
        while !is_zero(&rest) {
            let step = self
                .search_order
                .iter()
                .copied()
                .find(|&g| {
                    let r = sub(&rest, &self.gens[g]);
                    r.iter().all(|&x| x >= 0) && self.contains(&r)
                })
                .expect("member has a generator step");
            lambda[step] += 1;
            rest = sub(&rest, &self.gens[step]);
        }
        Some(lambda)
    }

    /// All factorizations of `v`, in lexicographic order of the coefficient
    /// vectors.
    pub fn factorizations(&self, v: &[i64]) -> Result<Vec<Vec<u64>>> {
        if !self.contains(v) {
            return Err(Error::NotAMember(v.to_vec()));
        }
        let mut out = Vec::new();
        let mut current = vec![0u64; self.gens.len()];
        self.enumerate_factorizations(0, v.to_vec(), &mut current, &mut out);
        out.sort();
        Ok(out)
    }

    fn enumerate_factorizations(
        &self,
        idx: usize,
        rest: IntVec,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if is_zero(&rest) {
            out.push(current.clone());
            return;
        }
        if idx == self.gens.len() {
            return;
        }
        let g = &self.gens[idx];
        let bound = g
            .iter()
            .zip(&rest)
            .filter(|(gc, _)| **gc > 0)
            .map(|(gc, rc)| rc / gc)
            .min()
            .unwrap_or(0)
            .max(0);
        let mut r = rest;
        for k in 0..=bound {
            if k > 0 {
                r = sub(&r, g);
            }
            current[idx] = k as u64;
            self.enumerate_factorizations(idx + 1, r.clone(), current, out);
        }
        current[idx] = 0;
    }

    /// Largest factorization length of `w`.
    pub fn ord(&self, w: &[i64]) -> Result<u64> {
        Ok(self
            .factorizations(w)?
            .iter()
            .map(|f| f.iter().sum::<u64>())
            .max()
            .unwrap_or(0))
    }

    /// Apéry set with respect to the generators indexed by `wrt`.
    ///
    /// Breadth-first over sums of the remaining generators. An element with
    /// `g - a_j` in the semigroup for some `j` in `wrt` is pruned together
    /// with everything above it, since the complement of the Apéry set is
    /// closed under adding semigroup elements.
    pub fn apery_set(&self, wrt: &[usize], caps: &Caps) -> Result<AperySet> {
        let mut wrt: Vec<usize> = wrt.to_vec();
        wrt.sort_unstable();
        wrt.dedup();
        if wrt.is_empty() || wrt.iter().any(|&i| i >= self.gens.len()) {
            return Err(Error::ParameterOutOfRange(
                "Apéry set needs a non-empty set of valid generator indices".into(),
            ));
        }
        let steps: Vec<usize> = (0..self.gens.len()).filter(|i| !wrt.contains(i)).collect();
        let zero = vec![0i64; self.dim];
        let mut visited: HashSet<IntVec> = HashSet::new();
        visited.insert(zero.clone());
        let mut elements = vec![zero.clone()];
        let mut frontier = vec![zero];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for b in &frontier {
                for &s in &steps {
                    let c = add(b, &self.gens[s]);
                    if !visited.insert(c.clone()) {
                        continue;
                    }
                    if visited.len() > caps.apery_nodes {
                        return Err(Error::AperyBoundExceeded { cap: caps.apery_nodes });
                    }
                    let outside = wrt.iter().any(|&j| self.contains(&sub(&c, &self.gens[j])));
                    if !outside {
                        elements.push(c.clone());
                        next.push(c);
                    }
                }
            }
            frontier = next;
        }
        elements.sort();
        Ok(AperySet {
            elements,
            with_respect_to: wrt,
            closed_form: false,
        })
    }

    /// Apéry set with respect to the extremal rays.
    pub fn apery_extremal(&self, caps: &Caps) -> Result<AperySet> {
        self.apery_set(&self.extremal, caps)
    }

    /// Elements of the Apéry set that are maximal for the semigroup order
    /// (`x <= y` iff `y - x` is in the semigroup).
    pub fn maximal_apery(&self, ap: &AperySet) -> Vec<IntVec> {
        ap.elements
            .iter()
            .filter(|b| {
                !ap.elements
                    .iter()
                    .any(|c| c != *b && self.contains(&sub(c, b)))
            })
            .cloned()
            .collect()
    }

    /// Quasi-Frobenius elements: maximal Apéry elements minus the sum of the
    /// extremal rays.
    pub fn quasi_frobenius(&self, caps: &Caps) -> Result<QFReport> {
        let ap = self.apery_extremal(caps)?;
        let shift = self
            .extremal
            .iter()
            .fold(vec![0i64; self.dim], |acc, &i| add(&acc, &self.gens[i]));
        let mut qf: Vec<IntVec> = self
            .maximal_apery(&ap)
            .iter()
            .map(|b| sub(b, &shift))
            .collect();
        qf.sort();
        Ok(QFReport {
            type_count: qf.len(),
            qf_elements: qf,
        })
    }

    /// The `-QF ⊆ Ap` test. This is a sufficient criterion for normality,
    /// not a decision procedure.
    pub fn normal_by_qf_criterion(&self, caps: &Caps) -> Result<bool> {
        let ap = self.apery_extremal(caps)?;
        let qf = self.quasi_frobenius(caps)?;
        Ok(qf
            .qf_elements
            .iter()
            .all(|q| ap.contains(&q.iter().map(|x| -x).collect::<Vec<_>>())))
    }

    /// Every Apéry element has factorizations of a single length.
    pub fn is_homogeneous(&self, caps: &Caps) -> Result<bool> {
        let ap = self.apery_extremal(caps)?;
        for b in &ap.elements {
            let lengths: BTreeSet<u64> = self
                .factorizations(b)?
                .iter()
                .map(|f| f.iter().sum())
                .collect();
            if lengths.len() > 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Places this semigroup's coordinates at `offset..offset+dim` inside
    /// `N^total`.
    pub fn block_embed(&self, offset: usize, total: usize) -> Result<AffineSemigroup> {
        if offset + self.dim > total {
            return Err(Error::DimensionMismatch {
                expected: offset + self.dim,
                found: total,
            });
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut v = vec![0i64; total];
                v[offset..offset + self.dim].copy_from_slice(g);
                v
            })
            .collect();
        AffineSemigroup::unchecked(gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gap_1221() -> AffineSemigroup {
        AffineSemigroup::new(vec![vec![1, 2], vec![3, 3], vec![5, 4], vec![7, 5]]).unwrap()
    }

    #[test]
    fn construction_errors() {
        let e = AffineSemigroup::new(vec![vec![1, 0], vec![2, 0]]).unwrap_err();
        assert_eq!(e.code(), "not-minimal");
        let e = AffineSemigroup::new(vec![vec![1, 2], vec![2, 4]]).unwrap_err();
        assert_eq!(e.code(), "not-minimal");
        let e = AffineSemigroup::new(vec![vec![1, 2], vec![0, 0]]).unwrap_err();
        assert_eq!(e.code(), "zero-generator");
        let e = AffineSemigroup::new(vec![vec![1, 2], vec![1]]).unwrap_err();
        assert_eq!(e.code(), "dimension-mismatch");
        let e = AffineSemigroup::new(vec![vec![1, 2], vec![1, 2]]).unwrap_err();
        assert_eq!(e.code(), "not-minimal");
        let e = AffineSemigroup::new(vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(e.code(), "not-minimal");
        assert!(AffineSemigroup::generated_by(vec![vec![1, 0], vec![0, 1], vec![1, 1]]).is_ok());
    }

    #[test]
    fn membership_and_witness() {
        let s = gap_1221();
        assert!(s.contains(&[4, 5]));
        assert_eq!(s.witness(&[4, 5]), Some(vec![1, 1, 0, 0]));
        assert!(!s.contains(&[2, 1]));
        assert!(s.contains(&[0, 0]));
        assert_eq!(s.witness(&[0, 0]), Some(vec![0, 0, 0, 0]));
        assert!(!s.contains(&[-1, 3]));
    }

    #[test]
    fn factorization_examples() {
        let s = gap_1221();
        assert_eq!(s.factorizations(&[3, 3]).unwrap(), vec![vec![0, 1, 0, 0]]);
        assert_eq!(s.factorizations(&[0, 0]).unwrap(), vec![vec![0, 0, 0, 0]]);
        let t = AffineSemigroup::generated_by(vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            t.factorizations(&[1, 1]).unwrap(),
            vec![vec![0, 0, 1], vec![1, 1, 0]]
        );
        assert_eq!(s.factorizations(&[2, 1]).unwrap_err().code(), "not-a-member");
    }

    #[test]
    fn extremal_and_simplicial() {
        let s = gap_1221();
        assert_eq!(s.extremal_rays(), &[0, 3]);
        assert!(s.is_simplicial());

        let t = AffineSemigroup::generated_by(vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(t.extremal_rays(), &[0, 1]);

        let square =
            AffineSemigroup::new(vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]])
                .unwrap();
        assert_eq!(square.extremal_rays(), &[0, 1, 2, 3]);
        assert!(!square.is_simplicial());

        let free = AffineSemigroup::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(free.is_simplicial());
    }

    #[test]
    fn numerical_semigroup_has_one_extremal_ray() {
        let s = AffineSemigroup::new(vec![vec![3], vec![5], vec![7]]).unwrap();
        assert_eq!(s.extremal_rays(), &[0]);
        assert!(s.is_simplicial());
        let ap = s.apery_extremal(&Caps::default()).unwrap();
        // Ap(<3,5,7>, 3) = {0, 5, 7}
        assert_eq!(ap.elements, vec![vec![0], vec![5], vec![7]]);
    }

    #[test]
    fn apery_examples() {
        let caps = Caps::default();
        let s = gap_1221();
        let ap = s.apery_extremal(&caps).unwrap();
        assert_eq!(ap.elements, vec![vec![0, 0], vec![3, 3], vec![5, 4]]);

        let free = AffineSemigroup::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(free.apery_extremal(&caps).unwrap().elements, vec![vec![0, 0]]);
    }

    #[test]
    fn apery_cap_is_enforced() {
        // With respect to a single non-simplicial direction the set is infinite.
        let s = AffineSemigroup::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let caps = Caps { apery_nodes: 50, ..Caps::default() };
        let e = s.apery_set(&[0], &caps).unwrap_err();
        assert_eq!(e.code(), "apery-bound-exceeded");
    }

    #[test]
    fn quasi_frobenius_examples() {
        let caps = Caps::default();
        let qf = gap_1221().quasi_frobenius(&caps).unwrap();
        assert_eq!(qf.qf_elements, vec![vec![-5, -4], vec![-3, -3]]);
        assert_eq!(qf.type_count, 2);

        let free = AffineSemigroup::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let qf = free.quasi_frobenius(&caps).unwrap();
        assert_eq!(qf.qf_elements, vec![vec![-1, -1]]);
        assert_eq!(qf.type_count, 1);
    }

    #[test]
    fn normality_criterion_and_homogeneity() {
        let caps = Caps::default();
        let s = gap_1221();
        assert!(s.normal_by_qf_criterion(&caps).unwrap());
        assert!(s.is_homogeneous(&caps).unwrap());
        let t = AffineSemigroup::generated_by(vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert!(t.is_homogeneous(&caps).unwrap());
    }

    #[test]
    fn ord_examples() {
        let s = gap_1221();
        assert_eq!(s.ord(&[5, 4]).unwrap(), 1);
        assert_eq!(s.ord(&[0, 0]).unwrap(), 0);
        // (1,2)+(1,2)+... : (2,4) = 2*(1,2)
        assert_eq!(s.ord(&[2, 4]).unwrap(), 2);
        assert_eq!(s.ord(&[2, 1]).unwrap_err().code(), "not-a-member");
    }

    #[test]
    fn membership_cache_is_shared_across_threads() {
        let s = gap_1221();
        std::thread::scope(|scope| {
            for k in 0..4 {
                let s = &s;
                scope.spawn(move || {
                    for x in 0..12 {
                        for y in 0..12 {
                            let v = [x + k, y];
                            let direct = s.witness(&v).is_some();
                            assert_eq!(s.contains(&v), direct);
                        }
                    }
                });
            }
        });
    }

    #[test]
    fn doc_round_trip() {
        let s = gap_1221();
        let json = serde_json::to_string(&s.to_doc()).unwrap();
        assert_eq!(json, r#"{"ambient_dim":2,"generators":[[1,2],[3,3],[5,4],[7,5]]}"#);
        let back: SemigroupDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(AffineSemigroup::from_doc(&back).unwrap(), s);
    }
}
