//! Named semigroup families and closed-form Apéry and quasi-Frobenius sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::rank_integer;
use crate::semigroup::{AffineSemigroup, AperySet, IntVec, QFReport, SemigroupDoc};

/// Parameters of `<a, ha+d, ha+2d, ..., ha+nd>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapSpec {
    pub a: IntVec,
    pub d: IntVec,
    pub h: u32,
    pub n: usize,
}

impl GapSpec {
    pub fn new(a: IntVec, d: IntVec, h: u32, n: usize) -> Self {
        GapSpec { a, d, h, n }
    }

    /// `h*a + i*d`.
    pub fn term(&self, i: usize) -> IntVec {
        self.a
            .iter()
            .zip(&self.d)
            .map(|(&x, &y)| self.h as i64 * x + i as i64 * y)
            .collect()
    }

    /// `a, ha+d, ..., ha+nd` in that order.
    pub fn generators(&self) -> Vec<IntVec> {
        let mut out = vec![self.a.clone()];
        out.extend((1..=self.n).map(|i| self.term(i)));
        out
    }

    fn check(&self) -> Result<()> {
        if self.a.len() != self.d.len() {
            return Err(Error::DimensionMismatch {
                expected: self.a.len(),
                found: self.d.len(),
            });
        }
        if self.h < 1 {
            return Err(Error::ParameterOutOfRange("h must be at least 1".into()));
        }
        if self.n < 2 {
            return Err(Error::ParameterOutOfRange("n must be at least 2".into()));
        }
        if rank_integer(&[self.a.clone(), self.d.clone()]) < 2 {
            return Err(Error::DependentAD);
        }
        Ok(())
    }
}

/// The generalized arithmetic progression semigroup. Generator `0` is `a`,
/// generator `i` is `ha+id`.
pub fn gap_semigroup(spec: &GapSpec) -> Result<AffineSemigroup> {
    spec.check()?;
    AffineSemigroup::new(spec.generators())
}

/// `{0, ha+d, ..., ha+(n-1)d}`, flagged as closed form.
pub fn gap_apery_closed_form(spec: &GapSpec) -> Result<AperySet> {
    spec.check()?;
    let mut elements = vec![vec![0; spec.a.len()]];
    elements.extend((1..spec.n).map(|i| spec.term(i)));
    elements.sort();
    Ok(AperySet {
        elements,
        with_respect_to: vec![0, spec.n],
        closed_form: true,
    })
}

/// `{-(ha+d), ..., -(ha+(n-1)d)}`.
pub fn gap_qf_closed_form(spec: &GapSpec) -> Result<QFReport> {
    spec.check()?;
    let mut qf: Vec<IntVec> = (1..spec.n)
        .map(|i| spec.term(i).iter().map(|x| -x).collect())
        .collect();
    qf.sort();
    Ok(QFReport {
        type_count: qf.len(),
        qf_elements: qf,
    })
}

/// Join of two semigroups living in the same ambient space: the semigroup
/// generated by the union of both generating sets. Requires the union of the
/// extremal rays to be linearly independent and the union to stay minimal.
pub fn join_in_place(left: &AffineSemigroup, right: &AffineSemigroup) -> Result<AffineSemigroup> {
    if left.ambient_dim() != right.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: left.ambient_dim(),
            found: right.ambient_dim(),
        });
    }
    let rays: Vec<IntVec> = left
        .extremal_rays()
        .iter()
        .map(|&i| left.generators()[i].clone())
        .chain(right.extremal_rays().iter().map(|&i| right.generators()[i].clone()))
        .collect();
    if rank_integer(&rays) < rays.len() {
        return Err(Error::DependentExtremalRays);
    }
    let mut gens = left.generators().to_vec();
    gens.extend(right.generators().iter().cloned());
    AffineSemigroup::new(gens)
}

/// Join realized by block embedding: `left` in the first `r1` coordinates,
/// `right` in the last `r2`. Generators keep their order, left block first.
pub fn join(left: &AffineSemigroup, right: &AffineSemigroup) -> Result<AffineSemigroup> {
    let total = left.ambient_dim() + right.ambient_dim();
    let l = left.block_embed(0, total)?;
    let r = right.block_embed(left.ambient_dim(), total)?;
    join_in_place(&l, &r)
}

/// `{λ(h a1 + i d1) + μ(h a2 + j d2)}` with `λ, μ ∈ {0,1}`, `1 ≤ i < n1`,
/// `1 ≤ j < n2`, in block coordinates. Both specs must share `h`.
pub fn join_apery_closed_form(left: &GapSpec, right: &GapSpec) -> Result<AperySet> {
    left.check()?;
    right.check()?;
    if left.h != right.h {
        return Err(Error::ParameterOutOfRange(
            "closed-form join Apéry set needs equal h in both blocks".into(),
        ));
    }
    let r1 = left.a.len();
    let r2 = right.a.len();
    let pad = |v: IntVec, offset: usize| {
        let mut out = vec![0i64; r1 + r2];
        out[offset..offset + v.len()].copy_from_slice(&v);
        out
    };
    let mut lefts = vec![vec![0i64; r1 + r2]];
    lefts.extend((1..left.n).map(|i| pad(left.term(i), 0)));
    let mut rights = vec![vec![0i64; r1 + r2]];
    rights.extend((1..right.n).map(|j| pad(right.term(j), r1)));
    let mut elements: Vec<IntVec> = lefts
        .iter()
        .flat_map(|x| rights.iter().map(move |y| x.iter().zip(y).map(|(p, q)| p + q).collect()))
        .collect();
    elements.sort();
    let n1 = left.n + 1;
    Ok(AperySet {
        elements,
        with_respect_to: vec![0, left.n, n1, n1 + right.n],
        closed_form: true,
    })
}

/// `s = r(3n+2)+3`.
pub fn backelin_s(n: u64, r: u64) -> u64 {
    r * (3 * n + 2) + 3
}

/// `<(0,s+3n+2), (s,3n+2), (s+3,3n-1), (s+3n+1,1), (s+3n+2,0)>` with
/// `s = r(3n+2)+3`, for `n ≥ 2` and `r ≥ 3n+2`.
pub fn backelin_generators(n: u64, r: u64) -> Result<Vec<IntVec>> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(format!("n = {n} must be at least 2")));
    }
    if r < 3 * n + 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "r = {r} must be at least 3n+2 = {}",
            3 * n + 2
        )));
    }
    let s = backelin_s(n, r) as i64;
    let n = n as i64;
    Ok(vec![
        vec![0, s + 3 * n + 2],
        vec![s, 3 * n + 2],
        vec![s + 3, 3 * n - 1],
        vec![s + 3 * n + 1, 1],
        vec![s + 3 * n + 2, 0],
    ])
}

pub fn backelin_projective(n: u64, r: u64) -> Result<AffineSemigroup> {
    AffineSemigroup::new(backelin_generators(n, r)?)
}

/// CLI-facing family description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    Gap(GapSpec),
    Join {
        left: Box<FamilySpec>,
        right: Box<FamilySpec>,
    },
    Backelin {
        n: u64,
        r: u64,
    },
    Explicit(SemigroupDoc),
}

impl FamilySpec {
    pub fn build(&self) -> Result<AffineSemigroup> {
        match self {
            FamilySpec::Gap(spec) => gap_semigroup(spec),
            FamilySpec::Join { left, right } => join(&left.build()?, &right.build()?),
            FamilySpec::Backelin { n, r } => backelin_projective(*n, *r),
            FamilySpec::Explicit(doc) => AffineSemigroup::from_doc(doc),
        }
    }
}
