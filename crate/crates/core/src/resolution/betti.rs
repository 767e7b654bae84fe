//! Betti tables of semigroup rings and of monomial quotients.
//!
//! Semigroup rings use squarefree divisor complexes:
//! `β_{i,γ}(K[Γ]) = dim H̃_{i-1}(Δ_γ)` with
//! `Δ_γ = {F : γ - Σ_{i∈F} a_i ∈ Γ}`. Candidate degrees are the Γ-degrees of
//! the lcm lattice of an initial ideal, which bounds the support.
//!
//! Monomial quotients use upper Koszul simplicial complexes:
//! `β_{i,m}(A/M) = dim H̃_{i-2}(K^m)` with `K^m = {F ⊆ supp m : m/x^F ∈ M}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::binomial_ideal::{toric_ideal, MonomialOrder};
use crate::error::Result;
use crate::exactlinalg::SimplicialComplex;
use crate::poly::Monomial;
use crate::semigroup::{AffineSemigroup, IntVec};
use crate::Caps;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    /// `(i, degree) -> β_{i,degree}`, nonzero entries only.
    pub entries: BTreeMap<(usize, IntVec), usize>,
}

#[derive(Serialize)]
struct EntryDoc<'a> {
    i: usize,
    degree: &'a IntVec,
    rank: usize,
}

#[derive(Serialize)]
struct TableDoc<'a> {
    entries: Vec<EntryDoc<'a>>,
    totals: Vec<usize>,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableDoc {
            entries: self
                .entries
                .iter()
                .map(|((i, degree), &rank)| EntryDoc { i: *i, degree, rank })
                .collect(),
            totals: self.totals(),
        }
        .serialize(s)
    }
}

impl BettiTable {
    pub fn insert(&mut self, i: usize, degree: IntVec, rank: usize) {
        if rank > 0 {
            *self.entries.entry((i, degree)).or_insert(0) += rank;
        }
    }

    /// Total Betti numbers `β_0, ..., β_p` up to the last nonzero one.
    pub fn totals(&self) -> Vec<usize> {
        let len = self.entries.keys().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut out = vec![0; len];
        for ((i, _), r) in &self.entries {
            out[*i] += r;
        }
        out
    }

    pub fn projdim(&self) -> usize {
        self.totals().len().saturating_sub(1)
    }

    /// `max (|degree| - i)` where `|degree|` is the coordinate sum. For
    /// monomial tables this is the regularity of the quotient.
    pub fn regularity(&self) -> i64 {
        self.entries
            .keys()
            .map(|(i, d)| d.iter().sum::<i64>() - *i as i64)
            .max()
            .unwrap_or(0)
    }

    /// Totals row followed by one line `i degree rank` per nonzero entry.
    pub fn to_text(&self) -> String {
        let totals = self.totals();
        let width = 6;
        let mut out = String::new();
        let _ = write!(out, "{:>width$}", "");
        for i in 0..totals.len() {
            let _ = write!(out, "{i:>width$}");
        }
        out.push('\n');
        let _ = write!(out, "{:>width$}", "total:");
        for t in &totals {
            let _ = write!(out, "{t:>width$}");
        }
        out.push('\n');
        for ((i, d), r) in &self.entries {
            let degree: Vec<String> = d.iter().map(i64::to_string).collect();
            let _ = writeln!(out, "{i} [{}] {r}", degree.join(","));
        }
        out
    }
}

/// Lcm lattice of `gens` (all lcms of nonempty subsets).
pub fn lcm_lattice(gens: &[Monomial]) -> BTreeSet<Monomial> {
    let mut lattice: BTreeSet<Monomial> = BTreeSet::new();
    for g in gens {
        let mut next: BTreeSet<Monomial> = lattice.iter().map(|l| l.lcm(g)).collect();
        next.insert(g.clone());
        lattice.extend(next);
    }
    lattice
}

/// `Δ_γ` as a list of faces, empty face included; `None` when `γ ∉ Γ`.
pub fn squarefree_divisor_complex(gamma: &AffineSemigroup, g: &[i64]) -> Option<SimplicialComplex> {
    if !gamma.contains(g) {
        return None;
    }
    let gens = gamma.generators();
    let mut faces = Vec::new();
    fn go(
        start: usize,
        rest: &[i64],
        face: &mut Vec<usize>,
        gens: &[IntVec],
        gamma: &AffineSemigroup,
        faces: &mut Vec<Vec<usize>>,
    ) {
        faces.push(face.clone());
        for k in start..gens.len() {
            let next: Vec<i64> = rest.iter().zip(&gens[k]).map(|(a, b)| a - b).collect();
            if gamma.contains(&next) {
                face.push(k);
                go(k + 1, &next, face, gens, gamma, faces);
                face.pop();
            }
        }
    }
    go(0, g, &mut Vec::new(), gens, gamma, &mut faces);
    Some(SimplicialComplex::from_faces(faces))
}

/// Multigraded Betti table of `K[Γ]` as a module over the polynomial ring on
/// the generators.
pub fn betti_semigroup(gamma: &AffineSemigroup, caps: &Caps) -> Result<BettiTable> {
    let ideal = toric_ideal(gamma, None, caps)?;
    let order = MonomialOrder::degrevlex(gamma.num_generators());
    let initial = ideal.initial_ideal(&order, caps)?;
    let mut candidates: BTreeSet<IntVec> = lcm_lattice(&initial)
        .iter()
        .map(|m| m.weighted_degree(gamma.generators()))
        .collect();
    candidates.insert(vec![0; gamma.ambient_dim()]);
    let candidates: Vec<IntVec> = candidates.into_iter().collect();
    let results: Vec<(IntVec, Vec<usize>)> = candidates
        .par_iter()
        .filter_map(|g| {
            let delta = squarefree_divisor_complex(gamma, g)?;
            if delta.cone_point().is_some() {
                return Some((g.clone(), Vec::new()));
            }
            Some((g.clone(), delta.reduced_homology().ranks().to_vec()))
        })
        .collect();
    let mut table = BettiTable::default();
    for (g, ranks) in results {
        // ranks[k] = dim H̃_{k-1}; β_{i,γ} = dim H̃_{i-1}.
        for (i, &r) in ranks.iter().enumerate() {
            table.insert(i, g.clone(), r);
        }
    }
    Ok(table)
}

/// Multigraded Betti table of `A/M` for the monomial ideal generated by
/// `gens`, degrees given by exponent vectors.
pub fn betti_monomial(gens: &[Monomial], nvars: usize) -> BettiTable {
    let mut table = BettiTable::default();
    table.insert(0, vec![0; nvars], 1);
    let in_ideal = |m: &Monomial| gens.iter().any(|g| g.divides(m));
    let lattice: Vec<Monomial> = lcm_lattice(gens).into_iter().collect();
    let results: Vec<(IntVec, Vec<usize>)> = lattice
        .par_iter()
        .map(|m| {
            let support: Vec<usize> = m.support().collect();
            let mut faces = Vec::new();
            for mask in 0u64..(1u64 << support.len()) {
                let mut e = m.exps().to_vec();
                let mut face = Vec::new();
                for (k, &v) in support.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        e[v] -= 1;
                        face.push(v);
                    }
                }
                if in_ideal(&Monomial(e)) {
                    faces.push(face);
                }
            }
            let ranks = SimplicialComplex::from_faces(faces).reduced_homology().ranks().to_vec();
            (m.exps().iter().map(|&x| x as i64).collect(), ranks)
        })
        .collect();
    for (d, ranks) in results {
        // ranks[k] = dim H̃_{k-1}; β_{i,m}(A/M) = dim H̃_{i-2}.
        for (k, &r) in ranks.iter().enumerate() {
            table.insert(k + 1, d.clone(), r);
        }
    }
    table
}

/// Krull dimension of `A/M`: `nvars` minus the smallest set of variables
/// meeting every generator's support.
pub fn monomial_dimension(gens: &[Monomial], nvars: usize) -> usize {
    if gens.is_empty() {
        return nvars;
    }
    let supports: Vec<u64> = gens
        .iter()
        .map(|g| g.support().fold(0u64, |acc, v| acc | 1 << v))
        .collect();
    for size in 0..=nvars {
        let mut found = false;
        for_each_subset(nvars, size, &mut |mask| {
            if !found && supports.iter().all(|s| s & mask != 0) {
                found = true;
            }
        });
        if found {
            return nvars - size;
        }
    }
    0
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(u64)) {
    fn go(start: usize, n: usize, k: usize, mask: u64, f: &mut dyn FnMut(u64)) {
        if k == 0 {
            f(mask);
            return;
        }
        for v in start..n {
            go(v + 1, n, k - 1, mask | 1 << v, f);
        }
    }
    go(0, n, k, 0, f);
}
