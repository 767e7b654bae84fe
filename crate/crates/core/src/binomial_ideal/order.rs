//! Monomial orders: lex, degrevlex, negative degrevlex (local) and block
//! elimination, each taken with respect to a variable permutation.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Monomial;

/// Order used inside one block of an elimination order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerKind {
    Lex,
    Degrevlex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    Degrevlex,
    /// Local order: lower total degree is larger, ties broken reverse
    /// lexicographically.
    NegDegrevlex,
    /// The first `boundary` positions of the permutation form a block that
    /// dominates the rest.
    BlockElim {
        boundary: usize,
        inner: (InnerKind, InnerKind),
    },
}

/// A monomial order. `permutation[k]` is the variable in position `k`, so
/// `permutation[0]` is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub permutation: Vec<usize>,
}

/// JSON form, with the permutation given by variable names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<(InnerKind, InnerKind)>,
}

fn lex_cmp(a: &[u32], b: &[u32], perm: &[usize]) -> Ordering {
    for &v in perm {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// The monomial whose last nonzero exponent difference is negative is larger.
fn revlex_tie(a: &[u32], b: &[u32], perm: &[usize]) -> Ordering {
    for &v in perm.iter().rev() {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

fn degree(a: &[u32], perm: &[usize]) -> u64 {
    perm.iter().map(|&v| a[v] as u64).sum()
}

fn inner_cmp(kind: InnerKind, a: &[u32], b: &[u32], perm: &[usize]) -> Ordering {
    match kind {
        InnerKind::Lex => lex_cmp(a, b, perm),
        InnerKind::Degrevlex => degree(a, perm)
            .cmp(&degree(b, perm))
            .then_with(|| revlex_tie(a, b, perm)),
    }
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, permutation: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; permutation.len()];
        for &v in &permutation {
            if v >= seen.len() || seen[v] {
                return Err(Error::BadShape(format!(
                    "permutation {permutation:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        if let OrderKind::BlockElim { boundary, .. } = kind {
            if boundary > permutation.len() {
                return Err(Error::BadShape(format!(
                    "block boundary {boundary} exceeds {} variables",
                    permutation.len()
                )));
            }
        }
        Ok(MonomialOrder { kind, permutation })
    }

    fn identity(nvars: usize) -> Vec<usize> {
        (0..nvars).collect()
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, permutation: Self::identity(nvars) }
    }

    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Degrevlex, permutation: Self::identity(nvars) }
    }

    pub fn neg_degrevlex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::NegDegrevlex, permutation: Self::identity(nvars) }
    }

    /// First `boundary` variables dominate; degrevlex inside both blocks.
    pub fn block_elim(nvars: usize, boundary: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::BlockElim {
                boundary,
                inner: (InnerKind::Degrevlex, InnerKind::Degrevlex),
            },
            permutation: Self::identity(nvars),
        }
    }

    pub fn nvars(&self) -> usize {
        self.permutation.len()
    }

    /// True for the local (negative degree) order.
    pub fn is_local(&self) -> bool {
        matches!(self.kind, OrderKind::NegDegrevlex)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b, p) = (a.exps(), b.exps(), self.permutation.as_slice());
        match &self.kind {
            OrderKind::Lex => lex_cmp(a, b, p),
            OrderKind::Degrevlex => inner_cmp(InnerKind::Degrevlex, a, b, p),
            OrderKind::NegDegrevlex => degree(a, p)
                .cmp(&degree(b, p))
                .reverse()
                .then_with(|| revlex_tie(a, b, p)),
            OrderKind::BlockElim { boundary, inner } => {
                let (first, second) = p.split_at(*boundary);
                inner_cmp(inner.0, a, b, first).then_with(|| inner_cmp(inner.1, a, b, second))
            }
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.compare(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }

    pub fn from_doc(doc: &OrderDoc, names: &[String]) -> Result<Self> {
        let permutation = match &doc.permutation {
            None => Self::identity(names.len()),
            Some(p) => {
                if p.len() != names.len() {
                    return Err(Error::ContextMismatch(format!(
                        "order lists {} variables, context has {}",
                        p.len(),
                        names.len()
                    )));
                }
                p.iter()
                    .map(|n| {
                        names.iter().position(|m| m == n).ok_or_else(|| {
                            Error::ContextMismatch(format!("unknown variable {n} in order"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        let kind = match doc.kind.as_str() {
            "lex" => OrderKind::Lex,
            "degrevlex" => OrderKind::Degrevlex,
            "neg_degrevlex" => OrderKind::NegDegrevlex,
            "block_elim" => OrderKind::BlockElim {
                boundary: doc.boundary.ok_or_else(|| {
                    Error::BadShape("block_elim order needs a boundary".into())
                })?,
                inner: doc.inner.unwrap_or((InnerKind::Degrevlex, InnerKind::Degrevlex)),
            },
            other => return Err(Error::BadShape(format!("unknown order kind {other}"))),
        };
        MonomialOrder::new(kind, permutation)
    }

    pub fn to_doc(&self, names: &[String]) -> OrderDoc {
        let (kind, boundary, inner) = match &self.kind {
            OrderKind::Lex => ("lex", None, None),
            OrderKind::Degrevlex => ("degrevlex", None, None),
            OrderKind::NegDegrevlex => ("neg_degrevlex", None, None),
            OrderKind::BlockElim { boundary, inner } => ("block_elim", Some(*boundary), Some(*inner)),
        };
        OrderDoc {
            kind: kind.to_string(),
            permutation: Some(self.permutation.iter().map(|&v| names[v].clone()).collect()),
            boundary,
            inner,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn neg_degrevlex_example() {
        // variables x1..x4 at indices 0..3; order x2 > x3 > x1 > x4
        let o = MonomialOrder::new(OrderKind::NegDegrevlex, vec![1, 2, 0, 3]).unwrap();
        assert_eq!(o.compare(&m(&[0, 2, 0, 0]), &m(&[1, 0, 1, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 0, 0]), &m(&[1, 0, 0, 0])), Ordering::Greater);
        assert!(o.is_local());
    }

    #[test]
    fn degrevlex_orientation() {
        // x1 > x2 > x3: x2^2 > x1*x3 because x3 appears in x1*x3.
        let o = MonomialOrder::degrevlex(3);
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_block() {
        let o = MonomialOrder::lex(2);
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        let b = MonomialOrder::block_elim(3, 1);
        assert_eq!(b.compare(&m(&[1, 0, 0]), &m(&[0, 4, 4])), Ordering::Greater);
        assert_eq!(b.compare(&m(&[0, 1, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn doc_round_trip() {
        let names: Vec<String> = ["x1", "x2", "x3", "x4"].iter().map(|s| s.to_string()).collect();
        let doc: OrderDoc =
            serde_json::from_str(r#"{"kind":"neg_degrevlex","permutation":["x2","x3","x1","x4"]}"#)
                .unwrap();
        let o = MonomialOrder::from_doc(&doc, &names).unwrap();
        assert_eq!(o.permutation, vec![1, 2, 0, 3]);
        assert_eq!(o.to_doc(&names), doc);
        let bad = OrderDoc { kind: "weird".into(), permutation: None, boundary: None, inner: None };
        assert_eq!(MonomialOrder::from_doc(&bad, &names).unwrap_err().code(), "bad-shape");
    }
}
