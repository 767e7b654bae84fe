//! Graded free complexes with polynomial differentials.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::binomial_ideal::StructuredMatrix;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::semigroup::IntVec;

/// Sparse matrix with polynomial entries; `(row, col)` keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: BTreeMap<(usize, usize), Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn add(&mut self, r: usize, c: usize, p: &Poly) {
        let slot = self.entries.entry((r, c)).or_default();
        *slot = slot.add(p);
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut out = PolyMatrix::new(self.rows, other.cols);
        let mut by_row: HashMap<usize, Vec<(usize, &Poly)>> = HashMap::new();
        for (&(r, c), p) in &other.entries {
            by_row.entry(r).or_default().push((c, p));
        }
        for (&(r, k), p) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, q) in row {
                    out.add(r, c, &p.mul(q));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `F_0 <- F_1 <- ... <- F_p`. `differentials[i-1]` is `d_i : F_i -> F_{i-1}`,
/// a `rank(F_{i-1}) × rank(F_i)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeComplex {
    pub variables: Vec<String>,
    pub ranks: Vec<usize>,
    /// Per homological index, the degree of each basis element.
    pub degrees: Vec<Vec<IntVec>>,
    pub differentials: Vec<PolyMatrix>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn term_degree(m: &Monomial, degree_map: &[IntVec]) -> IntVec {
    if degree_map.is_empty() {
        vec![m.degree() as i64]
    } else {
        m.weighted_degree(degree_map)
    }
}

impl GradedFreeComplex {
    /// Builds a complex from ranks and differentials, deriving degree labels
    /// from the entries and checking homogeneity and `d∘d = 0`.
    pub fn from_differentials(
        variables: Vec<String>,
        degree_map: &[IntVec],
        ranks: Vec<usize>,
        differentials: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if ranks.is_empty() || differentials.len() + 1 != ranks.len() {
            return Err(Error::BadShape("need one differential per positive index".into()));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.rows != ranks[k] || d.cols != ranks[k + 1] {
                return Err(Error::BadShape(format!("differential {} has the wrong shape", k + 1)));
            }
        }
        let dim = if degree_map.is_empty() { 1 } else { degree_map[0].len() };
        let mut degrees = vec![vec![vec![0i64; dim]; ranks[0]]];
        for (k, d) in differentials.iter().enumerate() {
            let mut labels: Vec<Option<IntVec>> = vec![None; ranks[k + 1]];
            for (&(r, c), p) in &d.entries {
                for (m, _) in p.terms() {
                    let deg: IntVec = term_degree(m, degree_map)
                        .iter()
                        .zip(&degrees[k][r])
                        .map(|(a, b)| a + b)
                        .collect();
                    match &labels[c] {
                        None => labels[c] = Some(deg),
                        Some(existing) if *existing == deg => {}
                        Some(_) => {
                            return Err(Error::BadShape(format!(
                                "differential {} is not homogeneous in column {c}",
                                k + 1
                            )))
                        }
                    }
                }
            }
            let labels = labels
                .into_iter()
                .enumerate()
                .map(|(c, l)| {
                    l.ok_or_else(|| Error::BadShape(format!("column {c} of differential {} is zero", k + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            degrees.push(labels);
        }
        let c = GradedFreeComplex { variables, ranks, degrees, differentials };
        c.check_complex()?;
        Ok(c)
    }

    /// The rank-one complex `R`.
    pub fn trivial(variables: Vec<String>, degree_dim: usize) -> Self {
        GradedFreeComplex {
            variables,
            ranks: vec![1],
            degrees: vec![vec![vec![0; degree_dim]]],
            differentials: Vec::new(),
        }
    }

    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Every consecutive composition vanishes.
    pub fn check_complex(&self) -> Result<()> {
        for k in 1..self.differentials.len() {
            if !self.differentials[k - 1].mul(&self.differentials[k]).is_zero() {
                return Err(Error::NotAComplex(k, k + 1));
            }
        }
        Ok(())
    }

    /// No differential entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.differentials
            .iter()
            .all(|d| d.entries.values().all(|p| p.constant_term() == 0))
    }

    /// Eagon–Northcott complex of a single 2×n block.
    pub fn eagon_northcott(p: &StructuredMatrix) -> Result<Self> {
        p.validate()?;
        if p.blocks.len() != 1 {
            return Err(Error::BadShape("Eagon–Northcott needs exactly one 2×n block".into()));
        }
        let (top, bottom) = &p.blocks[0];
        let n = top.len();
        let rows = [top, bottom];
        // Basis of F_i (i ≥ 1): (p, J) with p + q = i - 1 and |J| = i + 1.
        let mut bases: Vec<Vec<(usize, Vec<usize>)>> = vec![vec![(0, Vec::new())]];
        for i in 1..n {
            let mut b = Vec::new();
            for pp in 0..i {
                for j in combinations(n, i + 1) {
                    b.push((pp, j));
                }
            }
            bases.push(b);
        }
        let index: Vec<HashMap<(usize, Vec<usize>), usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect())
            .collect();
        let ranks: Vec<usize> = bases.iter().map(Vec::len).collect();
        let mut differentials = Vec::new();
        let minor = |a: usize, b: usize| {
            let mut q = Poly::monomial(top[a].mul(&bottom[b]), 1);
            q.add_term(top[b].mul(&bottom[a]), -1);
            q
        };
        let mut d1 = PolyMatrix::new(1, ranks[1]);
        for (c, (_, j)) in bases[1].iter().enumerate() {
            d1.add(0, c, &minor(j[0], j[1]));
        }
        differentials.push(d1);
        for i in 2..n {
            let mut d = PolyMatrix::new(ranks[i - 1], ranks[i]);
            for (c, (pp, j)) in bases[i].iter().enumerate() {
                let q = i - 1 - pp;
                for (t, &jt) in j.iter().enumerate() {
                    let sign = if t % 2 == 0 { 1 } else { -1 };
                    let rest: Vec<usize> = j.iter().copied().filter(|&x| x != jt).collect();
                    // y^(p-1,q) with row 0, y^(p,q-1) with row 1.
                    for (row, target_p, ok) in [(0usize, pp.wrapping_sub(1), *pp > 0), (1, *pp, q > 0)] {
                        if !ok {
                            continue;
                        }
                        let r = index[i - 1][&(target_p, rest.clone())];
                        d.add(r, c, &Poly::monomial(rows[row][jt].clone(), sign));
                    }
                }
            }
            differentials.push(d);
        }
        Self::from_differentials(p.variables.clone(), &p.degree_map, ranks, differentials)
    }

    /// Total complex of `self ⊗ other`, with
    /// `d(a⊗b) = d(a)⊗b + (-1)^{|a|} a⊗d(b)`.
    pub fn tensor(&self, other: &GradedFreeComplex) -> Result<Self> {
        if let Some(v) = self.variables.iter().find(|v| other.variables.contains(v)) {
            return Err(Error::SharedVariables(v.clone()));
        }
        let n1 = self.variables.len();
        let nv = n1 + other.variables.len();
        let mut variables = self.variables.clone();
        variables.extend(other.variables.iter().cloned());
        let len = self.length() + other.length();
        // Basis of total degree k: (i, a, b) with i + j = k.
        let mut bases: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); len + 1];
        for (i, &ri) in self.ranks.iter().enumerate() {
            for (j, &rj) in other.ranks.iter().enumerate() {
                for a in 0..ri {
                    for b in 0..rj {
                        bases[i + j].push((i, a, b));
                    }
                }
            }
        }
        for b in &mut bases {
            b.sort();
        }
        let index: Vec<HashMap<(usize, usize, usize), usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(k, &v)| (v, k)).collect())
            .collect();
        let ranks: Vec<usize> = bases.iter().map(Vec::len).collect();
        let degrees: Vec<Vec<IntVec>> = bases
            .iter()
            .enumerate()
            .map(|(k, b)| {
                b.iter()
                    .map(|&(i, a, bb)| {
                        let mut d = self.degrees[i][a].clone();
                        d.extend(other.degrees[k - i][bb].iter());
                        d
                    })
                    .collect()
            })
            .collect();
        let mut differentials = Vec::new();
        for k in 1..=len {
            let mut d = PolyMatrix::new(ranks[k - 1], ranks[k]);
            for (c, &(i, a, b)) in bases[k].iter().enumerate() {
                let j = k - i;
                if i > 0 {
                    for (&(r, cc), p) in &self.differentials[i - 1].entries {
                        if cc == a {
                            let row = index[k - 1][&(i - 1, r, b)];
                            d.add(row, c, &p.embed(0, nv));
                        }
                    }
                }
                if j > 0 {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    for (&(r, cc), p) in &other.differentials[j - 1].entries {
                        if cc == b {
                            let row = index[k - 1][&(i, a, r)];
                            let q = p.embed(n1, nv);
                            d.add(row, c, &Poly::monomial(Monomial::one(nv), sign).mul(&q));
                        }
                    }
                }
            }
            differentials.push(d);
        }
        let out = GradedFreeComplex { variables, ranks, degrees, differentials };
        out.check_complex()?;
        Ok(out)
    }
}

/// JSON form of a complex.
#[derive(Serialize)]
pub struct ComplexDoc {
    pub variables: Vec<String>,
    pub ranks: Vec<usize>,
    pub degrees: Vec<Vec<IntVec>>,
    pub differentials: Vec<Vec<EntryDoc>>,
}

#[derive(Serialize)]
pub struct EntryDoc {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Serialize)]
pub struct TermDoc {
    pub coeff: i64,
    pub exponents: Vec<u32>,
}

impl GradedFreeComplex {
    pub fn to_doc(&self) -> ComplexDoc {
        ComplexDoc {
            variables: self.variables.clone(),
            ranks: self.ranks.clone(),
            degrees: self.degrees.clone(),
            differentials: self
                .differentials
                .iter()
                .map(|d| {
                    d.entries
                        .iter()
                        .map(|(&(row, col), p)| EntryDoc {
                            row,
                            col,
                            terms: p
                                .terms()
                                .map(|(m, c)| TermDoc { coeff: c, exponents: m.exps().to_vec() })
                                .collect(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}
