//! Exact rational linear algebra.
//!
//! Rank computations use fraction-free (Bareiss) elimination. Integer input
//! first runs on `i128` with checked arithmetic and falls back to big integers
//! on overflow. Cone membership is decided by an exact phase-one simplex.
//! Nothing in this module touches floating point.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = RatMat::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigRational::from_integer(BigInt::from(v)));
            }
        }
        m
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_i64_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = RatMat::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, BigRational::from_integer(BigInt::from(v)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Scales every row by the lcm of its denominators, giving an integer
    /// matrix with the same row space.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect()
    }
}

/// Rank over the rationals.
pub fn rank_rational(m: &RatMat) -> usize {
    bareiss_rank_big(m.integer_rows(), m.cols)
}

/// Rank over the rationals of an integer matrix given as rows.
pub fn rank_integer(rows: &[Vec<i64>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let narrow: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    match bareiss_rank_i128(narrow, cols) {
        Some(r) => r,
        None => bareiss_rank_big(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
            cols,
        ),
    }
}

#[allow(clippy::needless_range_loop)]
fn bareiss_rank_i128(mut m: Vec<Vec<i128>>, cols: usize) -> Option<usize> {
    let nrows = m.len();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col];
        for i in rank + 1..nrows {
            let lead = m[i][col];
            for j in col + 1..cols {
                let a = pivot.checked_mul(m[i][j])?;
                let b = lead.checked_mul(m[rank][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
            m[i][col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

#[allow(clippy::needless_range_loop)]
fn bareiss_rank_big(mut m: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let nrows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in rank + 1..nrows {
            let lead = m[i][col].clone();
            for j in col + 1..cols {
                let v = (&pivot * &m[i][j] - &lead * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Finds `x >= 0` with `A x = b`, or `None` when no such `x` exists.
///
/// Exact phase-one simplex with Bland's rule; the returned vector satisfies
/// the system exactly.
pub fn solve_nonneg(a: &RatMat, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows, b.len(), "right-hand side length mismatch");
    let m = a.rows;
    let n = a.cols;
    let width = n + m + 1;
    // Tableau rows: [A | I | b] with b made non-negative.
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row = Vec::with_capacity(width);
            for j in 0..n {
                let v = a.get(i, j).clone();
                row.push(if flip { -v } else { v });
            }
            for k in 0..m {
                row.push(if k == i {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            row.push(if flip { -b[i].clone() } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // Reduced cost of column j for the objective sum(artificials).
        let entering = (0..n + m).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let cost_j = if j >= n { BigRational::one() } else { BigRational::zero() };
            let mut reduced = cost_j;
            for (i, &bv) in basis.iter().enumerate() {
                if bv >= n {
                    reduced -= &t[i][j];
                }
            }
            reduced.is_negative()
        });
        let Some(col) = entering else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][col].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][col];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let (row, _) = leave.expect("phase-one simplex is bounded");
        let piv = t[row][col].clone();
        for v in t[row].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = t[row].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, p) in r.iter_mut().zip(pivot_row.iter()) {
                *v -= &f * p;
            }
        }
        basis[row] = col;
    }

    let infeasible = basis
        .iter()
        .enumerate()
        .any(|(i, &bv)| bv >= n && !t[i][width - 1].is_zero());
    if infeasible {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

/// Convenience wrapper for integer data: is `b` in the rational cone spanned
/// by `columns`?
pub fn in_rational_cone(columns: &[Vec<i64>], b: &[i64]) -> bool {
    let rows = b.len();
    let a = RatMat::from_i64_columns(rows, columns);
    let rhs: Vec<BigRational> = b
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect();
    solve_nonneg(&a, &rhs).is_some()
}

/// Reduced homology of an augmented chain complex, indexed from `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedHomology {
    ranks: Vec<usize>,
}

impl ReducedHomology {
    /// `dim H̃_i`; zero outside the computed range.
    pub fn get(&self, i: isize) -> usize {
        if i < -1 {
            return 0;
        }
        self.ranks.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// Ranks starting at `H̃_{-1}`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn is_acyclic(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }
}

/// Reduced homology ranks from the boundary maps of an augmented complex.
///
/// `boundaries[0]` is the augmentation `C_0 -> C_{-1}`, and `boundaries[k]`
/// maps `C_k -> C_{k-1}`. Consecutive maps must compose to zero.
pub fn reduced_homology_ranks(boundaries: &[RatMat]) -> Result<ReducedHomology> {
    if boundaries.is_empty() {
        return Ok(ReducedHomology { ranks: Vec::new() });
    }
    for k in 0..boundaries.len() - 1 {
        if boundaries[k].cols != boundaries[k + 1].rows {
            return Err(Error::BadShape(format!(
                "boundary {k} has {} columns but boundary {} has {} rows",
                boundaries[k].cols,
                k + 1,
                boundaries[k + 1].rows
            )));
        }
        if !boundaries[k].mul(&boundaries[k + 1]).is_zero() {
            return Err(Error::NotAComplex(k, k + 1));
        }
    }
    let mut dims = vec![boundaries[0].rows];
    dims.extend(boundaries.iter().map(|b| b.cols));
    let ranks: Vec<usize> = boundaries.iter().map(rank_rational).collect();
    Ok(ReducedHomology {
        ranks: homology_from_ranks(&dims, &ranks),
    })
}

/// `dims[k]` is the dimension of the k-th chain group, `ranks[k]` the rank of
/// the map from group k+1 into group k.
fn homology_from_ranks(dims: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..dims.len())
        .map(|k| {
            let outgoing = if k == 0 { 0 } else { ranks[k - 1] };
            let incoming = ranks.get(k).copied().unwrap_or(0);
            dims[k] - outgoing - incoming
        })
        .collect()
}

/// Finite abstract simplicial complex on vertices `0..n`, stored as the full
/// list of faces (the empty face included when the complex is non-void).
#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    faces: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds the complex from a downward-closed family of faces. Each face is
    /// sorted; duplicates are dropped.
    pub fn from_faces<I: IntoIterator<Item = Vec<usize>>>(faces: I) -> Self {
        let mut faces: Vec<Vec<usize>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        SimplicialComplex { faces }
    }

    /// Downward closure of the given facets.
    pub fn from_facets(facets: &[Vec<usize>]) -> Self {
        let mut all = Vec::new();
        for f in facets {
            let k = f.len();
            for mask in 0u64..(1u64 << k) {
                all.push((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect());
            }
        }
        Self::from_faces(all)
    }

    /// Cone with apex `apex` over this complex.
    pub fn cone(&self, apex: usize) -> Self {
        let mut all = self.faces.clone();
        for f in &self.faces {
            let mut g = f.clone();
            g.push(apex);
            all.push(g);
        }
        Self::from_faces(all)
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// A vertex whose join with every face is again a face. Cones are acyclic.
    pub fn cone_point(&self) -> Option<usize> {
        let set: HashSet<&[usize]> = self.faces.iter().map(Vec::as_slice).collect();
        let vertices: BTreeSet<usize> = self.faces.iter().flatten().copied().collect();
        vertices.into_iter().find(|&v| {
            self.faces.iter().all(|f| {
                if f.contains(&v) {
                    return true;
                }
                let mut g = f.clone();
                g.push(v);
                g.sort_unstable();
                set.contains(g.as_slice())
            })
        })
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Boundary matrices of the augmented chain complex, as integer rows.
    fn boundary_rows(&self) -> (Vec<usize>, Vec<Vec<Vec<i64>>>) {
        let top = self.faces.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_size: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); top + 1];
        for f in &self.faces {
            by_size[f.len()].push(f);
        }
        let index: Vec<HashMap<&Vec<usize>, usize>> = by_size
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)).collect())
            .collect();
        let dims: Vec<usize> = by_size.iter().map(Vec::len).collect();
        let mut mats = Vec::new();
        for size in 1..=top {
            let mut m = vec![vec![0i64; dims[size]]; dims[size - 1]];
            for (col, f) in by_size[size].iter().enumerate() {
                for drop in 0..f.len() {
                    let sub: Vec<usize> = f
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != drop)
                        .map(|(_, &v)| v)
                        .collect();
                    let row = index[size - 1][&sub];
                    m[row][col] = if drop % 2 == 0 { 1 } else { -1 };
                }
            }
            mats.push(m);
        }
        (dims, mats)
    }

    /// Reduced homology over the rationals (augmented complex, empty face in
    /// degree `-1`). The void complex has no homology at all.
    pub fn reduced_homology(&self) -> ReducedHomology {
        if self.is_void() {
            return ReducedHomology { ranks: Vec::new() };
        }
        let (dims, mats) = self.boundary_rows();
        let ranks: Vec<usize> = mats.iter().map(|m| rank_of_rows(m)).collect();
        ReducedHomology {
            ranks: homology_from_ranks(&dims, &ranks),
        }
    }

    /// The boundary maps as rational matrices, augmentation first.
    pub fn boundary_matrices(&self) -> Vec<RatMat> {
        let (_, mats) = self.boundary_rows();
        mats.iter().map(|m| RatMat::from_i64_rows(m)).collect()
    }
}

fn rank_of_rows(m: &[Vec<i64>]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    rank_integer(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn cone_points() {
        let tri = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(tri.cone_point(), None);
        let cone = tri.cone(3);
        assert_eq!(cone.cone_point(), Some(3));
        assert!(cone.reduced_homology().is_acyclic());
    }

    #[test]
    fn rank_examples() {
        let id = RatMat::from_i64_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(rank_rational(&id), 3);
        assert_eq!(rank_rational(&RatMat::from_i64_rows(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(rank_rational(&RatMat::from_i64_rows(&[vec![1, 2], vec![2, 1]])), 2);
        assert_eq!(rank_integer(&[vec![0, 0], vec![0, 0]]), 0);
    }

    #[test]
    fn rank_with_fractions() {
        let mut m = RatMat::zeros(2, 2);
        m.set(0, 0, BigRational::new(1.into(), 3.into()));
        m.set(0, 1, BigRational::new(2.into(), 3.into()));
        m.set(1, 0, q(1));
        m.set(1, 1, q(2));
        assert_eq!(rank_rational(&m), 1);
    }

    #[test]
    fn rank_falls_back_on_overflow() {
        let big = i64::MAX / 2;
        let rows = vec![vec![big, big - 1, 3], vec![big - 7, big, 5], vec![1, 2, big]];
        let as_rat = RatMat::from_i64_rows(&rows);
        assert_eq!(rank_integer(&rows), rank_rational(&as_rat));
        assert_eq!(rank_integer(&rows), 3);
    }

    #[test]
    fn cone_membership_examples() {
        let basis = RatMat::from_i64_columns(2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(solve_nonneg(&basis, &[q(2), q(3)]), Some(vec![q(2), q(3)]));

        let cols = vec![vec![1, 2], vec![7, 5]];
        assert!(!in_rational_cone(&cols, &[2, 1]));
        let a = RatMat::from_i64_columns(2, &cols);
        let x = solve_nonneg(&a, &[q(3), q(3)]).expect("inside the cone");
        // 3 = x0 + 7 x1, 3 = 2 x0 + 5 x1  =>  x0 = 2/3, x1 = 1/3
        assert_eq!(x, vec![BigRational::new(2.into(), 3.into()), BigRational::new(1.into(), 3.into())]);
    }

    #[test]
    fn cone_membership_negative_rhs_and_degenerate() {
        assert!(!in_rational_cone(&[vec![1, 0], vec![0, 1]], &[-1, 0]));
        assert!(in_rational_cone(&[vec![1, 0], vec![-1, 0]], &[-3, 0]));
        assert!(in_rational_cone(&[vec![1, 1]], &[0, 0]));
        assert!(!in_rational_cone(&[], &[1]));
        assert!(in_rational_cone(&[], &[0]));
    }

    #[test]
    fn homology_examples() {
        let point = SimplicialComplex::from_facets(&[vec![0]]);
        assert!(point.reduced_homology().is_acyclic());

        let two = SimplicialComplex::from_facets(&[vec![0], vec![1]]);
        let h = two.reduced_homology();
        assert_eq!(h.get(0), 1);
        assert_eq!(h.get(-1), 0);

        let circle = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
        let h = circle.reduced_homology();
        assert_eq!(h.get(1), 1);
        assert_eq!(h.get(0), 0);

        let empty_face_only = SimplicialComplex::from_faces(vec![vec![]]);
        assert_eq!(empty_face_only.reduced_homology().get(-1), 1);
    }

    #[test]
    fn boundary_route_matches_face_route() {
        let circle = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
        let via_mats = reduced_homology_ranks(&circle.boundary_matrices()).unwrap();
        assert_eq!(via_mats, circle.reduced_homology());
    }

    #[test]
    fn non_complex_is_rejected() {
        let d0 = RatMat::from_i64_rows(&[vec![1, 1]]);
        let d1 = RatMat::from_i64_rows(&[vec![1], vec![1]]);
        assert_eq!(reduced_homology_ranks(&[d0, d1]), Err(Error::NotAComplex(0, 1)));
    }

    #[test]
    fn cone_over_circle_is_acyclic() {
        let circle = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert!(circle.cone(3).reduced_homology().is_acyclic());
    }
}
