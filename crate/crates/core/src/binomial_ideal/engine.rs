//! Division, S-polynomials and completion for ±1 binomials and monomials.
//!
//! Global orders use full division and Buchberger completion with the product
//! and chain criteria. The local order uses Mora's weak normal form with
//! écart-minimal reducer selection and completes to a minimal standard basis.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use super::order::MonomialOrder;
use super::Binomial;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::Caps;

/// `sign * (lead - tail)`, or `sign * lead` when there is no tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Element {
    pub sign: i64,
    pub lead: Monomial,
    pub tail: Option<Monomial>,
}

impl Element {
    /// Builds an element from at most two signed terms, merging equal
    /// monomials. Returns `None` for zero.
    pub fn from_terms(order: &MonomialOrder, terms: &[(Monomial, i64)]) -> Option<Element> {
        let mut merged: Vec<(Monomial, i64)> = Vec::with_capacity(2);
        for (m, c) in terms {
            match merged.iter_mut().find(|(k, _)| k == m) {
                Some(slot) => slot.1 += c,
                None => merged.push((m.clone(), *c)),
            }
        }
        merged.retain(|(_, c)| *c != 0);
        match merged.len() {
            0 => None,
            1 => {
                let (m, c) = merged.pop().expect("one term");
                debug_assert!(c == 1 || c == -1);
                Some(Element { sign: c, lead: m, tail: None })
            }
            2 => {
                let (b, cb) = merged.pop().expect("two terms");
                let (a, ca) = merged.pop().expect("two terms");
                debug_assert_eq!(ca, -cb);
                if order.compare(&a, &b) == Ordering::Greater {
                    Some(Element { sign: ca, lead: a, tail: Some(b) })
                } else {
                    Some(Element { sign: cb, lead: b, tail: Some(a) })
                }
            }
            _ => unreachable!("at most two terms"),
        }
    }

    pub fn from_binomial(b: &Binomial, order: &MonomialOrder) -> Option<Element> {
        Element::from_terms(order, &[(b.plus.clone(), 1), (b.minus.clone(), -1)])
    }

    pub fn monomial(m: Monomial) -> Element {
        Element { sign: 1, lead: m, tail: None }
    }

    pub fn terms(&self) -> Vec<(Monomial, i64)> {
        let mut out = vec![(self.lead.clone(), self.sign)];
        if let Some(t) = &self.tail {
            out.push((t.clone(), -self.sign));
        }
        out
    }

    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in self.terms() {
            p.add_term(m, c);
        }
        p
    }

    /// `lead - tail`, if there is a tail.
    pub fn to_binomial(&self) -> Option<Binomial> {
        self.tail
            .as_ref()
            .map(|t| Binomial::new(self.lead.clone(), t.clone()))
    }

    pub fn is_monomial(&self) -> bool {
        self.tail.is_none()
    }

    /// Highest total degree of a term minus the degree of the leading term.
    pub fn ecart(&self) -> u64 {
        let d = self.lead.degree();
        self.tail.as_ref().map_or(0, |t| t.degree().saturating_sub(d))
    }

    fn normalized(mut self) -> Element {
        self.sign = 1;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reducer {
    /// Index into the basis passed to the division.
    Basis(usize),
    /// An earlier intermediate value of the dividend (local orders only).
    Intermediate(usize),
}

/// One reduction: subtract `coeff * multiplier * reducer`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub reducer: Reducer,
    pub coeff: i64,
    pub multiplier: Monomial,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DivisionTrace {
    pub steps: Vec<Step>,
    /// `intermediate_at[j]` is the index of the step before which the
    /// dividend was recorded as intermediate reducer `j`.
    pub intermediate_at: Vec<usize>,
}

impl DivisionTrace {
    /// Recomputes the remainder from the dividend and the basis.
    pub fn replay(&self, f: &Poly, basis: &[Poly]) -> Poly {
        let mut h = f.clone();
        let mut saved: Vec<Poly> = Vec::new();
        for (k, step) in self.steps.iter().enumerate() {
            while saved.len() < self.intermediate_at.len() && self.intermediate_at[saved.len()] == k {
                saved.push(h.clone());
            }
            let r = match step.reducer {
                Reducer::Basis(i) => &basis[i],
                Reducer::Intermediate(j) => &saved[j],
            };
            h = h.sub(&r.scale_monomial(&step.multiplier, step.coeff));
        }
        h
    }
}

/// Reduces the term `t` (coefficient `ct`) of `h` by `g`; `other` is the
/// remaining term of `h`.
fn reduce_by(
    order: &MonomialOrder,
    t: &Monomial,
    ct: i64,
    other: Option<(Monomial, i64)>,
    g: &Element,
) -> (Option<Element>, i64, Monomial) {
    let m = t.div(&g.lead);
    let coeff = ct * g.sign;
    let mut terms: Vec<(Monomial, i64)> = other.into_iter().collect();
    if let Some(tg) = &g.tail {
        terms.push((m.mul(tg), ct));
    }
    (Element::from_terms(order, &terms), coeff, m)
}

fn reduce_lead(order: &MonomialOrder, h: &Element, g: &Element) -> (Option<Element>, i64, Monomial) {
    let other = h.tail.clone().map(|t| (t, -h.sign));
    reduce_by(order, &h.lead, h.sign, other, g)
}

fn reduce_tail(order: &MonomialOrder, h: &Element, g: &Element) -> (Option<Element>, i64, Monomial) {
    let t = h.tail.as_ref().expect("tail present");
    reduce_by(order, t, -h.sign, Some((h.lead.clone(), h.sign)), g)
}

fn find_divisor(basis: &[Element], m: &Monomial) -> Option<usize> {
    basis.iter().position(|g| g.lead.divides(m))
}

/// Normal form with a division trace. Global orders reduce every term; the
/// local order computes Mora's weak normal form.
pub fn normal_form(
    f: &Element,
    basis: &[Element],
    order: &MonomialOrder,
    caps: &Caps,
) -> Result<(Option<Element>, DivisionTrace)> {
    if order.is_local() {
        mora_normal_form(f, basis, order, caps)
    } else {
        full_normal_form(f, basis, order, caps, false)
    }
}

fn full_normal_form(
    f: &Element,
    basis: &[Element],
    order: &MonomialOrder,
    caps: &Caps,
    tail_only: bool,
) -> Result<(Option<Element>, DivisionTrace)> {
    let mut trace = DivisionTrace::default();
    let mut h = f.clone();
    loop {
        if trace.steps.len() >= caps.reduction_steps {
            return Err(Error::IterationCapExceeded { cap: caps.reduction_steps });
        }
        let lead_hit = if tail_only { None } else { find_divisor(basis, &h.lead) };
        let (next, coeff, m, i) = if let Some(i) = lead_hit {
            let (n, c, m) = reduce_lead(order, &h, &basis[i]);
            (n, c, m, i)
        } else if let Some(i) = h.tail.as_ref().and_then(|t| find_divisor(basis, t)) {
            let (n, c, m) = reduce_tail(order, &h, &basis[i]);
            (n, c, m, i)
        } else {
            return Ok((Some(h), trace));
        };
        trace.steps.push(Step { reducer: Reducer::Basis(i), coeff, multiplier: m });
        match next {
            None => return Ok((None, trace)),
            Some(n) => h = n,
        }
    }
}

fn mora_normal_form(
    f: &Element,
    basis: &[Element],
    order: &MonomialOrder,
    caps: &Caps,
) -> Result<(Option<Element>, DivisionTrace)> {
    let mut trace = DivisionTrace::default();
    let mut reducers: Vec<(Reducer, Element)> = basis
        .iter()
        .enumerate()
        .map(|(i, g)| (Reducer::Basis(i), g.clone()))
        .collect();
    let mut h = f.clone();
    loop {
        if trace.steps.len() >= caps.reduction_steps {
            return Err(Error::IterationCapExceeded { cap: caps.reduction_steps });
        }
        let choice = reducers
            .iter()
            .enumerate()
            .filter(|(_, (_, g))| g.lead.divides(&h.lead))
            .min_by_key(|(k, (_, g))| (g.ecart(), *k))
            .map(|(k, _)| k);
        let Some(k) = choice else {
            return Ok((Some(h), trace));
        };
        let (tag, g) = reducers[k].clone();
        if g.ecart() > h.ecart() {
            reducers.push((Reducer::Intermediate(trace.intermediate_at.len()), h.clone()));
            trace.intermediate_at.push(trace.steps.len());
        }
        let (next, coeff, m) = reduce_lead(order, &h, &g);
        trace.steps.push(Step { reducer: tag, coeff, multiplier: m });
        match next {
            None => return Ok((None, trace)),
            Some(n) => h = n,
        }
    }
}

/// `lcm/LM(f) * f - lcm/LM(g) * g` with both leading coefficients scaled to 1.
pub fn spoly(f: &Element, g: &Element, order: &MonomialOrder) -> Option<Element> {
    let l = f.lead.lcm(&g.lead);
    let mf = l.div(&f.lead);
    let mg = l.div(&g.lead);
    let mut terms = Vec::with_capacity(2);
    if let Some(tg) = &g.tail {
        terms.push((mg.mul(tg), 1));
    }
    if let Some(tf) = &f.tail {
        terms.push((mf.mul(tf), -1));
    }
    Element::from_terms(order, &terms)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn pick_pair(pairs: &mut Vec<Pair>, order: &MonomialOrder) -> Option<Pair> {
    let best = pairs
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            a.lcm
                .degree()
                .cmp(&b.lcm.degree())
                .then_with(|| order.compare(&a.lcm, &b.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
        })
        .map(|(k, _)| k)?;
    Some(pairs.swap_remove(best))
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

/// Reduced Gröbner basis for global orders, minimal standard basis for the
/// local order. Elements are returned with sign `+1`, sorted by decreasing
/// leading monomial.
pub fn groebner_basis(gens: &[Element], order: &MonomialOrder, caps: &Caps) -> Result<Vec<Element>> {
    let local = order.is_local();
    let mut basis: Vec<Element> = Vec::new();
    for g in gens {
        let g = g.clone().normalized();
        if !basis.contains(&g) {
            basis.push(g);
        }
    }
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(Pair { i, j, lcm: basis[i].lead.lcm(&basis[j].lead) });
            pending.insert((i, j));
        }
    }
    let mut processed = 0usize;
    while let Some(p) = pick_pair(&mut pairs, order) {
        pending.remove(&(p.i, p.j));
        processed += 1;
        if processed > caps.reduction_steps {
            return Err(Error::IterationCapExceeded { cap: caps.reduction_steps });
        }
        if !local {
            if basis[p.i].lead.coprime(&basis[p.j].lead) {
                continue;
            }
            let chain = (0..basis.len()).any(|k| {
                k != p.i
                    && k != p.j
                    && basis[k].lead.divides(&p.lcm)
                    && !pending.contains(&key(p.i, k))
                    && !pending.contains(&key(p.j, k))
            });
            if chain {
                continue;
            }
        }
        let Some(s) = spoly(&basis[p.i], &basis[p.j], order) else {
            continue;
        };
        let (r, _) = normal_form(&s, &basis, order, caps)?;
        if let Some(r) = r {
            let r = r.normalized();
            let n = basis.len();
            for (i, b) in basis.iter().enumerate() {
                pairs.push(Pair { i, j: n, lcm: b.lead.lcm(&r.lead) });
                pending.insert((i, n));
            }
            basis.push(r);
        }
    }
    let minimal = minimalize(basis, order);
    let mut out = if local {
        minimal
    } else {
        interreduce(minimal, order, caps)?
    };
    out.sort_by(|a, b| order.compare(&b.lead, &a.lead));
    Ok(out)
}

/// Drops every element whose leading monomial is divisible by the leading
/// monomial of another kept element.
fn minimalize(mut basis: Vec<Element>, order: &MonomialOrder) -> Vec<Element> {
    // Divisors come first: ascending for global orders, descending for the
    // local order.
    if order.is_local() {
        basis.sort_by(|a, b| order.compare(&b.lead, &a.lead));
    } else {
        basis.sort_by(|a, b| order.compare(&a.lead, &b.lead));
    }
    let mut kept: Vec<Element> = Vec::new();
    for g in basis {
        if !kept.iter().any(|k| k.lead.divides(&g.lead)) {
            kept.push(g);
        }
    }
    kept
}

fn interreduce(basis: Vec<Element>, order: &MonomialOrder, caps: &Caps) -> Result<Vec<Element>> {
    let mut out = Vec::with_capacity(basis.len());
    for (k, g) in basis.iter().enumerate() {
        let others: Vec<Element> = basis
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, e)| e.clone())
            .collect();
        let (r, _) = full_normal_form(g, &others, order, caps, true)?;
        out.push(r.expect("leading term survives tail reduction").normalized());
    }
    Ok(out)
}

/// Outcome of one S-pair in a basis check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub spoly: Option<Element>,
    pub remainder: Option<Element>,
    pub trace: DivisionTrace,
}

/// Buchberger-criterion certificate: every S-pair, without criteria.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroebnerCertificate {
    pub holds: bool,
    pub pairs: Vec<PairCheck>,
}

impl GroebnerCertificate {
    pub fn failing(&self) -> Vec<&PairCheck> {
        self.pairs.iter().filter(|p| p.remainder.is_some()).collect()
    }
}

pub fn is_groebner(basis: &[Element], order: &MonomialOrder, caps: &Caps) -> Result<GroebnerCertificate> {
    let mut pairs = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            let s = spoly(&basis[i], &basis[j], order);
            let (remainder, trace) = match &s {
                None => (None, DivisionTrace::default()),
                Some(s) => normal_form(s, basis, order, caps)?,
            };
            pairs.push(PairCheck { i, j, spoly: s, remainder, trace });
        }
    }
    Ok(GroebnerCertificate {
        holds: pairs.iter().all(|p| p.remainder.is_none()),
        pairs,
    })
}
