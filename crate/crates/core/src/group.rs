//! Finitely generated abelian groups written additively in coordinates.
//!
//! A group is a product of cyclic factors. A modulus of `0` is an infinite
//! cyclic factor, a modulus `m >= 2` is `Z/m`. The multiplicative notation of
//! the grading theory (`gh`, `g^-1`, `1`) maps onto componentwise addition,
//! negation and the zero vector.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("modulus 1 is not allowed (factor {0})")]
    ModulusOne(usize),
    #[error("element has {found} coordinates but the group has {expected} factors")]
    Arity { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct GroupSpec {
    moduli: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    moduli: Vec<u64>,
}

impl TryFrom<RawGroup> for GroupSpec {
    type Error = GroupError;

    fn try_from(raw: RawGroup) -> Result<Self, Self::Error> {
        GroupSpec::new(raw.moduli)
    }
}

impl From<GroupSpec> for RawGroup {
    fn from(g: GroupSpec) -> Self {
        RawGroup { moduli: g.moduli }
    }
}

/// Element of a [`GroupSpec`], stored as normalized coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElem(Vec<i64>);

impl GroupElem {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn reduce(c: i64, m: u64) -> i64 {
    if m == 0 {
        c
    } else {
        c.rem_euclid(m as i64)
    }
}

impl GroupSpec {
    pub fn new(moduli: Vec<u64>) -> Result<Self, GroupError> {
        if let Some(i) = moduli.iter().position(|&m| m == 1) {
            return Err(GroupError::ModulusOne(i));
        }
        Ok(GroupSpec { moduli })
    }

    pub fn trivial() -> Self {
        GroupSpec { moduli: Vec::new() }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Order of the group, `None` when some factor is infinite.
    pub fn order(&self) -> Option<u64> {
        self.moduli
            .iter()
            .try_fold(1u64, |acc, &m| if m == 0 { None } else { acc.checked_mul(m) })
    }

    /// Product group with `self` in the leading coordinates.
    pub fn product(&self, other: &GroupSpec) -> GroupSpec {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        GroupSpec { moduli }
    }

    fn check(&self, a: &GroupElem) -> Result<(), GroupError> {
        if a.0.len() != self.moduli.len() {
            return Err(GroupError::Arity {
                expected: self.moduli.len(),
                found: a.0.len(),
            });
        }
        Ok(())
    }

    /// Builds an element from raw coordinates, reducing them into range.
    pub fn elem(&self, coords: &[i64]) -> Result<GroupElem, GroupError> {
        if coords.len() != self.moduli.len() {
            return Err(GroupError::Arity {
                expected: self.moduli.len(),
                found: coords.len(),
            });
        }
        Ok(GroupElem(
            coords.iter().zip(&self.moduli).map(|(&c, &m)| reduce(c, m)).collect(),
        ))
    }

    pub fn normalize(&self, a: &GroupElem) -> Result<GroupElem, GroupError> {
        self.elem(&a.0)
    }

    /// True when the coordinates are already in normal form.
    pub fn conforms(&self, a: &GroupElem) -> bool {
        a.0.len() == self.moduli.len() && a.0.iter().zip(&self.moduli).all(|(&c, &m)| reduce(c, m) == c)
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem(vec![0; self.moduli.len()])
    }

    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.op(a, b))
    }

    pub fn inv(&self, a: &GroupElem) -> Result<GroupElem, GroupError> {
        self.check(a)?;
        Ok(self.neg(a))
    }

    pub fn is_identity(&self, a: &GroupElem) -> bool {
        a.0.iter().zip(&self.moduli).all(|(&c, &m)| reduce(c, m) == 0)
    }

    /// Group law on elements already known to conform.
    pub(crate) fn op(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        debug_assert_eq!(a.0.len(), self.moduli.len());
        debug_assert_eq!(b.0.len(), self.moduli.len());
        GroupElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| reduce(x + y, m))
                .collect(),
        )
    }

    pub(crate) fn neg(&self, a: &GroupElem) -> GroupElem {
        GroupElem(a.0.iter().zip(&self.moduli).map(|(&x, &m)| reduce(-x, m)).collect())
    }

    pub(crate) fn op3(&self, a: &GroupElem, b: &GroupElem, c: &GroupElem) -> GroupElem {
        self.op(&self.op(a, b), c)
    }

    /// Product of a sequence, identity for the empty sequence.
    pub fn product_of<'a, I>(&self, items: I) -> Result<GroupElem, GroupError>
    where
        I: IntoIterator<Item = &'a GroupElem>,
    {
        let mut acc = self.identity();
        for x in items {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// All elements of a finite group in lexicographic coordinate order.
    pub fn elements(&self) -> Option<Vec<GroupElem>> {
        self.order()?;
        let mut out = vec![Vec::new()];
        for &m in &self.moduli {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for prefix in &out {
                for c in 0..m as i64 {
                    let mut v = prefix.clone();
                    v.push(c);
                    next.push(v);
                }
            }
            out = next;
        }
        Some(out.into_iter().map(GroupElem).collect())
    }

    /// Embeds an element of a factor into `self = left x right`.
    pub(crate) fn embed(&self, elem: &GroupElem, offset: usize) -> GroupElem {
        let mut coords = vec![0; self.moduli.len()];
        coords[offset..offset + elem.0.len()].copy_from_slice(&elem.0);
        GroupElem(coords)
    }
}
